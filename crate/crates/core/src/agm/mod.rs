//! Contraction functions given extensionally, and the eight AGM postulates.
//!
//! A [`ContractionTable`] maps the truth set of each contracted formula to
//! the resulting theory. Keying by truth set means equivalent formulas
//! cannot be treated differently, and theories are closed by construction,
//! so (K-1) and (K-6) are never searched. The other six are checked by
//! quantifying over events instead of formulas.

mod check;
mod file;
mod search;

pub use check::{check_postulates, check_postulates_with, CheckOptions, Counterexample, PostulateReport, Verdict};
pub use file::{load_table, save_table, table_from_json, table_to_json};
pub use search::{find_k7_counterexample, K7Hit};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bits::Event;
use crate::contraction::{contract_event, contract_partial_event};
use crate::error::{Error, Result};
use crate::frame::PointedModel;
use crate::logic::{Signature, Theory};

/// Tables enumerate every event over the valuation space, `2^(2^n)` of them.
pub const MAX_TABLE_ATOMS: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Postulate {
    #[serde(rename = "K-1")]
    K1,
    #[serde(rename = "K-2")]
    K2,
    #[serde(rename = "K-3")]
    K3,
    #[serde(rename = "K-4")]
    K4,
    #[serde(rename = "K-5")]
    K5,
    #[serde(rename = "K-6")]
    K6,
    #[serde(rename = "K-7")]
    K7,
    #[serde(rename = "K-8")]
    K8,
}

impl Postulate {
    pub const ALL: [Postulate; 8] = [
        Postulate::K1,
        Postulate::K2,
        Postulate::K3,
        Postulate::K4,
        Postulate::K5,
        Postulate::K6,
        Postulate::K7,
        Postulate::K8,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Postulate::K1 => "K-1",
            Postulate::K2 => "K-2",
            Postulate::K3 => "K-3",
            Postulate::K4 => "K-4",
            Postulate::K5 => "K-5",
            Postulate::K6 => "K-6",
            Postulate::K7 => "K-7",
            Postulate::K8 => "K-8",
        }
    }
}

impl fmt::Display for Postulate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// `K` together with `K ÷ φ` for some or all events `∥φ∥`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractionTable {
    sig: Signature,
    k: Theory,
    entries: Vec<Option<Theory>>,
}

impl ContractionTable {
    /// An empty (fully partial) table.
    pub fn new(sig: Signature, k: Theory) -> Result<Self> {
        if sig.len() > MAX_TABLE_ATOMS {
            return Err(Error::TooLarge { what: "contraction tables (atoms)", max: MAX_TABLE_ATOMS, got: sig.len() });
        }
        if k.worlds().universe() != sig.world_count() {
            return Err(Error::SignatureMismatch);
        }
        let entries = vec![None; 1 << sig.world_count()];
        Ok(Self { sig, k, entries })
    }

    /// A total table with `K ÷ φ = f(∥φ∥)`.
    pub fn from_fn(sig: Signature, k: Theory, mut f: impl FnMut(&Event) -> Result<Theory>) -> Result<Self> {
        let mut table = Self::new(sig, k)?;
        for i in 0..table.event_count() {
            let e = table.event(i);
            let result = f(&e)?;
            table.insert(&e, result)?;
        }
        Ok(table)
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn k(&self) -> &Theory {
        &self.k
    }

    pub fn event_count(&self) -> usize {
        self.entries.len()
    }

    /// The event whose mask is `index`.
    pub fn event(&self, index: usize) -> Event {
        Event::from_mask(self.sig.world_count(), index as u64)
    }

    pub fn insert(&mut self, phi: &Event, result: Theory) -> Result<()> {
        let w = self.sig.world_count();
        if phi.universe() != w || result.worlds().universe() != w {
            return Err(Error::SignatureMismatch);
        }
        self.entries[phi.to_mask() as usize] = Some(result);
        Ok(())
    }

    pub fn get(&self, phi: &Event) -> Option<&Theory> {
        self.entries.get(phi.to_mask() as usize)?.as_ref()
    }

    /// Like [`get`](Self::get) but a missing entry is an error.
    pub fn require(&self, phi: &Event) -> Result<&Theory> {
        self.get(phi).ok_or_else(|| Error::PartialTable(phi.to_string()))
    }

    pub fn is_total(&self) -> bool {
        self.entries.iter().all(Option::is_some)
    }

    pub fn domain(&self) -> Vec<Event> {
        (0..self.event_count()).filter(|&i| self.entries[i].is_some()).map(|i| self.event(i)).collect()
    }

    /// Defined entries in mask order.
    pub fn entries(&self) -> impl Iterator<Item = (Event, &Theory)> + '_ {
        self.entries.iter().enumerate().filter_map(|(i, t)| t.as_ref().map(|t| (self.event(i), t)))
    }
}

/// The full contraction of a model, one entry per event.
pub fn table_from_model(m: &PointedModel) -> Result<ContractionTable> {
    let k = crate::contraction::belief_set(m);
    ContractionTable::from_fn(m.signature().clone(), k, |e| contract_event(m, e))
}

/// Entries only where some state falsifies the contracted formula.
pub fn partial_table_from_model(m: &PointedModel) -> Result<ContractionTable> {
    let k = crate::contraction::belief_set(m);
    let mut table = ContractionTable::new(m.signature().clone(), k)?;
    for i in 0..table.event_count() {
        let e = table.event(i);
        match contract_partial_event(m, &e) {
            Ok(t) => table.insert(&e, t)?,
            Err(Error::OutsidePartialDomain) => {}
            Err(other) => return Err(other),
        }
    }
    Ok(table)
}

/// Whether `full` agrees with `partial` everywhere `partial` is defined.
/// Tables over different belief sets never extend one another.
pub fn is_extension(partial: &ContractionTable, full: &ContractionTable) -> Result<bool> {
    if partial.sig != full.sig {
        return Err(Error::SignatureMismatch);
    }
    if !full.is_total() {
        let missing = (0..full.event_count()).find(|&i| full.entries[i].is_none()).unwrap_or(0);
        return Err(Error::PartialTable(full.event(missing).to_string()));
    }
    if partial.k != full.k {
        return Ok(false);
    }
    Ok(partial.entries().all(|(e, t)| full.get(&e) == Some(t)))
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::bits::StateSet;
    use crate::frame::{ModelParts, Ranking, Selection};

    fn chain_model() -> PointedModel {
        PointedModel::new(ModelParts {
            sig: Signature::new(["p", "q"]).unwrap(),
            ids: (0..4).map(|i| format!("s{i}")).collect(),
            val: vec![0, 1, 2, 3],
            actual: 3,
            belief: vec![StateSet::from_indices(4, [3]); 4],
            selection: Selection::Shared(Ranking::from_tiers(4, &[vec![3], vec![2], vec![1], vec![0]]).unwrap()),
            bridge: BTreeMap::new(),
        })
        .unwrap()
    }

    fn ev(idx: &[usize]) -> Event {
        Event::from_indices(4, idx.iter().copied())
    }

    #[test]
    fn table_entries_from_model() {
        let table = table_from_model(&chain_model()).unwrap();
        assert!(table.is_total());
        assert_eq!(table.get(&ev(&[1, 3])).unwrap().worlds(), &ev(&[2, 3]));
        assert_eq!(table.get(&ev(&[0, 1, 2, 3])).unwrap(), table.k());
        // E = S: doxastic priority keeps the contradiction's contraction at K
        assert_eq!(table.get(&ev(&[])).unwrap(), table.k());
    }

    #[test]
    fn extension_checks() {
        let m = chain_model();
        let partial = partial_table_from_model(&m).unwrap();
        let full = table_from_model(&m).unwrap();
        assert_eq!(partial.domain().len(), 15);
        assert!(is_extension(&partial, &full).unwrap());

        let mut perturbed = full.clone();
        let e = ev(&[1, 3]);
        let mut worlds = perturbed.get(&e).unwrap().worlds().clone();
        worlds.insert(0);
        perturbed.insert(&e, Theory::from_worlds(worlds)).unwrap();
        assert!(!is_extension(&partial, &perturbed).unwrap());

        let empty = ContractionTable::new(full.signature().clone(), full.k().clone()).unwrap();
        assert!(is_extension(&empty, &full).unwrap());

        let other = ContractionTable::new(Signature::new(["a", "b"]).unwrap(), full.k().clone()).unwrap();
        assert!(matches!(is_extension(&other, &full), Err(Error::SignatureMismatch)));
        assert!(matches!(is_extension(&empty, &partial), Err(Error::PartialTable(_))));
    }

    #[test]
    fn table_size_is_capped() {
        let sig = Signature::numbered(4).unwrap();
        let k = Theory::tautologies(&sig);
        assert!(matches!(ContractionTable::new(sig, k), Err(Error::TooLarge { .. })));
    }
}
