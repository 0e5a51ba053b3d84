//! Epistemic entrenchment and contraction, each defined from the other.
//!
//! From a contraction: `φ ⩽ ψ` iff `φ ∉ K ÷ (φ ∧ ψ)` or `φ ∧ ψ` is a
//! tautology. Back to a contraction: `ψ ∈ K ÷ φ` iff `ψ ∈ K` and either `φ`
//! is a tautology or `φ < φ ∨ ψ`, where `<` is the strict part of `⩽`.
//! Both directions work on truth sets.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::agm::{check_postulates, ContractionTable, MAX_TABLE_ATOMS};
use crate::bits::Event;
use crate::error::{Error, Result};
use crate::json;
use crate::logic::{Signature, Theory};

/// `⩽` over events, stored as a dense square matrix indexed by event mask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntrenchmentRelation {
    sig: Signature,
    k: Theory,
    size: usize,
    le: Vec<bool>,
}

impl EntrenchmentRelation {
    /// The empty relation.
    pub fn new(sig: Signature, k: Theory) -> Result<Self> {
        if sig.len() > MAX_TABLE_ATOMS {
            return Err(Error::TooLarge {
                what: "entrenchment relations (atoms)",
                max: MAX_TABLE_ATOMS,
                got: sig.len(),
            });
        }
        let size = 1 << sig.world_count();
        Ok(Self { sig, k, size, le: vec![false; size * size] })
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn k(&self) -> &Theory {
        &self.k
    }

    pub fn set(&mut self, phi: &Event, psi: &Event, holds: bool) {
        let i = self.index(phi, psi);
        self.le[i] = holds;
    }

    fn index(&self, phi: &Event, psi: &Event) -> usize {
        phi.to_mask() as usize * self.size + psi.to_mask() as usize
    }

    /// `φ ⩽ ψ`.
    pub fn le(&self, phi: &Event, psi: &Event) -> bool {
        self.le[self.index(phi, psi)]
    }

    /// `φ < ψ`: `φ ⩽ ψ` and not `ψ ⩽ φ`.
    pub fn lt(&self, phi: &Event, psi: &Event) -> bool {
        self.le(phi, psi) && !self.le(psi, phi)
    }

    fn event(&self, mask: usize) -> Event {
        Event::from_mask(self.sig.world_count(), mask as u64)
    }

    /// All pairs in the relation, ordered by `(φ, ψ)` mask.
    pub fn pairs(&self) -> Vec<(Event, Event)> {
        (0..self.size * self.size)
            .filter(|&i| self.le[i])
            .map(|i| (self.event(i / self.size), self.event(i % self.size)))
            .collect()
    }
}

/// Entrenchment induced by an AGM table.
pub fn entrenchment_from_contraction(c: &ContractionTable) -> Result<EntrenchmentRelation> {
    let report = check_postulates(c)?;
    if let Some(cx) = report.counterexamples.first() {
        return Err(Error::PostulateViolation(cx.postulate));
    }
    let mut r = EntrenchmentRelation::new(c.signature().clone(), c.k().clone())?;
    for a in 0..r.size {
        let phi = r.event(a);
        for b in 0..r.size {
            let psi = r.event(b);
            let both = phi.intersection(&psi);
            let holds = both.is_full() || !c.require(&both)?.contains_event(&phi);
            r.set(&phi, &psi, holds);
        }
    }
    Ok(r)
}

/// Contraction induced by an entrenchment relation. For each `φ` the
/// qualifying `ψ` must be exactly the members of one theory; otherwise the
/// relation is rejected with a consequence of the qualifying set that was
/// left out.
pub fn contraction_from_entrenchment(r: &EntrenchmentRelation) -> Result<ContractionTable> {
    let sig = r.sig.clone();
    let w = sig.world_count();
    let k = r.k.worlds();
    let mut table = ContractionTable::new(sig.clone(), r.k.clone())?;
    for a in 0..r.size {
        let phi = r.event(a);
        let qualifies = |psi: &Event| k.is_subset(psi) && (phi.is_full() || r.lt(&phi, &phi.union(psi)));
        let members: Vec<Event> = (0..r.size).map(|b| r.event(b)).filter(|psi| qualifies(psi)).collect();
        let worlds = members.iter().fold(Event::full(w), |acc, psi| acc.intersection(psi));
        if let Some(b) = (0..r.size).find(|&b| {
            let psi = r.event(b);
            worlds.is_subset(&psi) && !qualifies(&psi)
        }) {
            return Err(Error::IllFormedRelation {
                phi: crate::logic::dnf_text(&phi, &sig),
                witness: crate::logic::dnf_text(&r.event(b), &sig),
            });
        }
        table.insert(&phi, Theory::from_worlds(worlds))?;
    }
    Ok(table)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRelation {
    atoms: Vec<String>,
    #[serde(rename = "K")]
    k: Vec<usize>,
    pairs: Vec<RawPair>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPair {
    le: [Vec<usize>; 2],
}

fn relation_from_raw(raw: RawRelation) -> Result<EntrenchmentRelation> {
    let sig = json::signature("atoms", &raw.atoms)?;
    let k = Theory::from_worlds(json::event("K", &raw.k, &sig)?);
    let mut r = EntrenchmentRelation::new(sig, k).map_err(|e| Error::format("atoms", e.to_string()))?;
    for (i, pair) in raw.pairs.iter().enumerate() {
        let phi = json::event(&format!("pairs[{i}].le[0]"), &pair.le[0], &r.sig)?;
        let psi = json::event(&format!("pairs[{i}].le[1]"), &pair.le[1], &r.sig)?;
        r.set(&phi, &psi, true);
    }
    Ok(r)
}

pub fn relation_from_json(text: &str) -> Result<EntrenchmentRelation> {
    relation_from_raw(json::parse(text)?)
}

pub fn load_relation(path: &Path) -> Result<EntrenchmentRelation> {
    relation_from_raw(json::read(path)?)
}

pub fn relation_to_json(r: &EntrenchmentRelation) -> String {
    json::pretty(&RawRelation {
        atoms: r.sig.atoms().to_vec(),
        k: r.k.worlds().to_vec(),
        pairs: r.pairs().into_iter().map(|(a, b)| RawPair { le: [a.to_vec(), b.to_vec()] }).collect(),
    })
}
