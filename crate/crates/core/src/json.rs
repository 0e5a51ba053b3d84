//! Shared helpers for the JSON file formats.

use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::bits::Event;
use crate::error::{Error, Result};
use crate::logic::Signature;

pub(crate) fn read<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| Error::format(path.display().to_string(), e.to_string()))?;
    parse(&text)
}

pub(crate) fn parse<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| {
        let field = match e.classify() {
            serde_json::error::Category::Data => "document",
            _ => "syntax",
        };
        Error::format(field, e.to_string())
    })
}

pub(crate) fn pretty<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("file types serialize");
    text.push('\n');
    text
}

pub(crate) fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::format(path.display().to_string(), e.to_string()))
}

pub(crate) fn signature(field: &str, atoms: &[String]) -> Result<Signature> {
    Signature::new(atoms.iter().map(String::as_str)).map_err(|e| Error::format(field, e.to_string()))
}

/// Reads a list of valuation indices; order and repeats are ignored.
pub(crate) fn event(field: &str, list: &[usize], sig: &Signature) -> Result<Event> {
    let w = sig.world_count();
    if let Some(v) = list.iter().find(|&&v| v >= w) {
        return Err(Error::format(field, format!("valuation {v} outside 0..{w}")));
    }
    Ok(Event::from_indices(w, list.iter().copied()))
}
