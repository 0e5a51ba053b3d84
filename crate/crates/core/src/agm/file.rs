//! JSON table files: `{"atoms": [...], "K": [worlds], "entries": [{"phi": [...], "result": [...]}]}`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::ContractionTable;
use crate::error::{Error, Result};
use crate::json;
use crate::logic::Theory;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTable {
    atoms: Vec<String>,
    #[serde(rename = "K")]
    k: Vec<usize>,
    entries: Vec<RawEntry>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEntry {
    phi: Vec<usize>,
    result: Vec<usize>,
}

fn from_raw(raw: RawTable) -> Result<ContractionTable> {
    let sig = json::signature("atoms", &raw.atoms)?;
    let k = Theory::from_worlds(json::event("K", &raw.k, &sig)?);
    let mut table = ContractionTable::new(sig, k).map_err(|e| Error::format("atoms", e.to_string()))?;
    for (i, entry) in raw.entries.iter().enumerate() {
        let sig = table.signature();
        let phi = json::event(&format!("entries[{i}].phi"), &entry.phi, sig)?;
        let result = json::event(&format!("entries[{i}].result"), &entry.result, sig)?;
        if table.get(&phi).is_some() {
            return Err(Error::format(format!("entries[{i}].phi"), format!("duplicate event {phi}")));
        }
        table.insert(&phi, Theory::from_worlds(result))?;
    }
    Ok(table)
}

fn to_raw(table: &ContractionTable) -> RawTable {
    RawTable {
        atoms: table.signature().atoms().to_vec(),
        k: table.k().worlds().to_vec(),
        entries: table.entries().map(|(phi, t)| RawEntry { phi: phi.to_vec(), result: t.worlds().to_vec() }).collect(),
    }
}

pub fn table_from_json(text: &str) -> Result<ContractionTable> {
    from_raw(json::parse(text)?)
}

pub fn table_to_json(table: &ContractionTable) -> String {
    json::pretty(&to_raw(table))
}

pub fn load_table(path: &Path) -> Result<ContractionTable> {
    from_raw(json::read(path)?)
}

pub fn save_table(table: &ContractionTable, path: &Path) -> Result<()> {
    json::write(path, &table_to_json(table))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::Event;
    use crate::logic::Signature;

    #[test]
    fn round_trip_and_errors() {
        let sig = Signature::new(["p", "q"]).unwrap();
        let k = Theory::from_worlds(Event::from_indices(4, [2, 3]));
        let table =
            ContractionTable::from_fn(sig, k.clone(), |e| Ok(Theory::from_worlds(k.worlds().union(e)))).unwrap();
        assert_eq!(table_from_json(&table_to_json(&table)).unwrap(), table);

        let err = table_from_json(r#"{"atoms": ["p"], "K": [1], "entries": [{"phi": [0], "result": [2]}]}"#)
            .unwrap_err()
            .to_string();
        assert!(err.starts_with("entries[0].result"), "{err}");
        let err = table_from_json(
            r#"{"atoms": ["p"], "K": [1], "entries": [{"phi": [0], "result": [1]}, {"phi": [0], "result": [1]}]}"#,
        )
        .unwrap_err()
        .to_string();
        assert!(err.starts_with("entries[1].phi"), "{err}");
    }
}
