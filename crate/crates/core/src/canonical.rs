//! Sphere systems and the canonical model of an AGM contraction table.
//!
//! The canonical model has one state per valuation. The first state is the
//! actual one; it believes exactly the states of `K`, every other state
//! believes only itself, and the selection function is
//! `f(s, ∥φ∥) = ∥K ÷ ¬φ∥ ∩ ∥φ∥` for every believed state.

use std::collections::BTreeMap;
use std::path::Path;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::agm::{check_postulates, ContractionTable};
use crate::bits::{Event, StateSet};
use crate::contraction::{belief_set, contract_event};
use crate::error::{Error, Result};
use crate::frame::{validate_frame, ModelParts, PointedModel, Selection, ValidationReport};
use crate::json;
use crate::logic::{Signature, Theory};

/// A strictly increasing chain of events ending in the full valuation space.
/// The innermost sphere is `K`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SphereSystem {
    sig: Signature,
    spheres: Vec<Event>,
}

impl SphereSystem {
    pub fn new(sig: Signature, spheres: Vec<Event>) -> Result<Self> {
        let w = sig.world_count();
        let Some(first) = spheres.first() else {
            return Err(Error::format("spheres", "at least one sphere is required"));
        };
        if first.is_empty() {
            return Err(Error::format("spheres[0]", "the innermost sphere must be nonempty"));
        }
        for (i, s) in spheres.iter().enumerate() {
            if s.universe() != w {
                return Err(Error::SignatureMismatch);
            }
            if i > 0 && (!spheres[i - 1].is_subset(s) || spheres[i - 1] == *s) {
                return Err(Error::format(format!("spheres[{i}]"), "spheres must strictly increase"));
            }
        }
        if !spheres.last().expect("nonempty").is_full() {
            return Err(Error::format("spheres", "the outermost sphere must contain every valuation"));
        }
        Ok(Self { sig, spheres })
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn spheres(&self) -> &[Event] {
        &self.spheres
    }

    pub fn k(&self) -> Theory {
        Theory::from_worlds(self.spheres[0].clone())
    }

    /// `K ÷ φ = K ∪ (S_i ∩ ∥¬φ∥)` for the first sphere `S_i` meeting `∥¬φ∥`;
    /// `K` when `φ` is a tautology.
    pub fn contract(&self, phi: &Event) -> Theory {
        let neg = phi.complement();
        let k = &self.spheres[0];
        match self.spheres.iter().find(|s| s.intersects(&neg)) {
            Some(s) => Theory::from_worlds(k.union(&s.intersection(&neg))),
            None => Theory::from_worlds(k.clone()),
        }
    }

    pub fn to_table(&self) -> Result<ContractionTable> {
        ContractionTable::from_fn(self.sig.clone(), self.k(), |e| Ok(self.contract(e)))
    }
}

/// Every sphere system over `sig`: each nonempty `K` followed by each
/// ordered partition of the remaining valuations into layers.
pub fn all_sphere_systems(sig: &Signature) -> Result<Vec<SphereSystem>> {
    let w = sig.world_count();
    if w > 8 {
        return Err(Error::TooLarge { what: "sphere enumeration (atoms)", max: 3, got: sig.len() });
    }
    let full: u64 = (1 << w) - 1;
    let mut out = Vec::new();
    for k in 1..=full {
        let mut chain = vec![k];
        extend_chains(k, full, &mut chain, &mut |c| {
            let spheres = c.iter().map(|&m| Event::from_mask(w, m)).collect();
            out.push(SphereSystem { sig: sig.clone(), spheres });
        });
    }
    Ok(out)
}

fn extend_chains(current: u64, full: u64, chain: &mut Vec<u64>, emit: &mut impl FnMut(&[u64])) {
    if current == full {
        emit(chain);
        return;
    }
    let rest = full & !current;
    // nonempty subsets of `rest` in increasing order
    let mut layer = rest & rest.wrapping_neg();
    loop {
        chain.push(current | layer);
        extend_chains(current | layer, full, chain, emit);
        chain.pop();
        if layer == rest {
            break;
        }
        layer = (layer.wrapping_sub(rest)) & rest;
    }
}

/// A random sphere system: a random nonempty `K`, then every other valuation
/// assigned a random layer.
pub fn random_sphere_system(sig: &Signature, rng: &mut impl Rng) -> SphereSystem {
    let w = sig.world_count();
    let mut k = Event::from_indices(w, (0..w).filter(|_| rng.gen_bool(0.5)));
    if k.is_empty() {
        k.insert(rng.gen_range(0..w));
    }
    let rest: Vec<usize> = k.complement().iter().collect();
    let layers: Vec<usize> = rest.iter().map(|_| rng.gen_range(0..rest.len().max(1))).collect();
    let mut spheres = vec![k];
    let mut used: Vec<usize> = layers.clone();
    used.sort_unstable();
    used.dedup();
    for layer in used {
        let mut next = spheres.last().expect("nonempty").clone();
        for (&v, &l) in rest.iter().zip(&layers) {
            if l == layer {
                next.insert(v);
            }
        }
        spheres.push(next);
    }
    SphereSystem { sig: sig.clone(), spheres }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpheres {
    atoms: Vec<String>,
    spheres: Vec<Vec<usize>>,
}

pub fn spheres_from_json(text: &str) -> Result<SphereSystem> {
    spheres_from_raw(json::parse(text)?)
}

pub fn load_spheres(path: &Path) -> Result<SphereSystem> {
    spheres_from_raw(json::read(path)?)
}

fn spheres_from_raw(raw: RawSpheres) -> Result<SphereSystem> {
    let sig = json::signature("atoms", &raw.atoms)?;
    let spheres = raw
        .spheres
        .iter()
        .enumerate()
        .map(|(i, s)| json::event(&format!("spheres[{i}]"), s, &sig))
        .collect::<Result<Vec<_>>>()?;
    SphereSystem::new(sig, spheres)
}

pub fn spheres_to_json(s: &SphereSystem) -> String {
    json::pretty(&RawSpheres { atoms: s.sig.atoms().to_vec(), spheres: s.spheres.iter().map(Event::to_vec).collect() })
}

/// Builds the canonical model of an AGM table with a consistent `K`.
pub fn build_canonical(c: &ContractionTable) -> Result<PointedModel> {
    if !c.k().is_consistent() {
        return Err(Error::InconsistentBase);
    }
    let report = check_postulates(c)?;
    if let Some(cx) = report.counterexamples.first() {
        return Err(Error::PostulateViolation(cx.postulate));
    }
    let sig = c.signature().clone();
    let n = sig.world_count();
    let k_states = StateSet::from_indices(n, c.k().worlds().iter());
    let actual = 0;
    let belief: Vec<StateSet> =
        (0..n).map(|s| if s == actual { k_states.clone() } else { StateSet::from_indices(n, [s]) }).collect();

    let mut entries = BTreeMap::new();
    for mask in 1..(1u64 << n) {
        let e = Event::from_mask(n, mask);
        // e = ∥φ∥, so K ÷ ¬φ sits under the complement
        let contracted = c.require(&e.complement())?;
        let selected = StateSet::from_mask(n, contracted.worlds().intersection(&e).to_mask());
        for s in k_states.iter() {
            entries.insert((s, StateSet::from_mask(n, mask)), selected.clone());
        }
    }
    let bridge = PointedModel::default_bridge(&belief, actual);
    PointedModel::new(ModelParts {
        sig,
        ids: (0..n).map(|v| format!("w{v}")).collect(),
        val: (0..n).collect(),
        actual,
        belief,
        selection: Selection::Table(entries),
        bridge,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundtripReport {
    pub validation: ValidationReport,
    pub belief_set_matches: bool,
    /// Events `∥φ∥` where the model's contraction differs from the table.
    pub mismatches: Vec<Event>,
}

impl RoundtripReport {
    pub fn passed(&self) -> bool {
        self.validation.passed() && self.belief_set_matches && self.mismatches.is_empty()
    }
}

/// Checks that `m` is a valid frame with belief set `K` whose contraction
/// reproduces every entry of `c`.
pub fn verify_roundtrip(m: &PointedModel, c: &ContractionTable) -> Result<RoundtripReport> {
    if m.signature() != c.signature() {
        return Err(Error::SignatureMismatch);
    }
    let validation = validate_frame(m)?;
    let belief_set_matches = belief_set(m) == *c.k();
    let mut mismatches = Vec::new();
    for i in 0..c.event_count() {
        let e = c.event(i);
        if contract_event(m, &e)? != *c.require(&e)? {
            mismatches.push(e);
        }
    }
    Ok(RoundtripReport { validation, belief_set_matches, mismatches })
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;

    fn pq() -> Signature {
        Signature::new(["p", "q"]).unwrap()
    }

    fn ev(idx: &[usize]) -> Event {
        Event::from_indices(4, idx.iter().copied())
    }

    fn example() -> SphereSystem {
        SphereSystem::new(pq(), vec![ev(&[3]), ev(&[2, 3]), ev(&[0, 1, 2, 3])]).unwrap()
    }

    fn fubini(k: usize) -> usize {
        // ordered set partitions
        let mut a = vec![1usize; k + 1];
        for m in 1..=k {
            let mut binom = 1;
            a[m] = 0;
            for j in 1..=m {
                binom = binom * (m - j + 1) / j;
                a[m] += binom * a[m - j];
            }
        }
        a[k]
    }

    #[test]
    fn sphere_contraction() {
        let s = example();
        assert_eq!(s.contract(&ev(&[1, 3])).worlds(), &ev(&[2, 3]));
        assert_eq!(s.contract(&ev(&[2, 3])).worlds(), &ev(&[1, 3]).union(&ev(&[0, 3])));
        assert_eq!(s.contract(&ev(&[0, 1, 2, 3])), s.k());
    }

    #[test]
    fn sphere_validation() {
        assert!(SphereSystem::new(pq(), vec![ev(&[]), ev(&[0, 1, 2, 3])]).is_err());
        assert!(SphereSystem::new(pq(), vec![ev(&[3]), ev(&[3]), ev(&[0, 1, 2, 3])]).is_err());
        assert!(SphereSystem::new(pq(), vec![ev(&[3]), ev(&[2, 3])]).is_err());
        let text = spheres_to_json(&example());
        assert_eq!(spheres_from_json(&text).unwrap(), example());
    }

    #[test]
    fn enumeration_counts() {
        // each K of size j leaves 4 - j valuations to arrange in layers
        let expected: usize = (1..=4).map(|j| [0, 4, 6, 4, 1][j] * fubini(4 - j)).sum();
        let all = all_sphere_systems(&pq()).unwrap();
        assert_eq!(all.len(), expected);
        assert_eq!(all.len(), 75);
        let mut seen = all.clone();
        seen.dedup();
        assert_eq!(seen.len(), all.len());
    }

    #[test]
    fn canonical_selection_examples() {
        let table = example().to_table().unwrap();
        let m = build_canonical(&table).unwrap();
        let s = m.doxastic_states().first().unwrap();
        let not_p = StateSet::from_indices(4, [0, 2]);
        assert_eq!(m.select(s, &not_p).unwrap(), StateSet::from_indices(4, [2]));
        assert_eq!(m.select(s, &m.all_states()).unwrap(), StateSet::from_indices(4, [3]));

        // K = Cn(q): for φ with ¬φ ∉ K, f(s, ∥φ∥) = ∥K∥ ∩ ∥φ∥
        let cq = SphereSystem::new(pq(), vec![ev(&[2, 3]), ev(&[0, 2, 3]), ev(&[0, 1, 2, 3])]).unwrap();
        let m = build_canonical(&cq.to_table().unwrap()).unwrap();
        for s in m.doxastic_states().iter() {
            let phi = StateSet::from_indices(4, [1, 3]);
            assert_eq!(m.select(s, &phi).unwrap(), StateSet::from_indices(4, [3]));
        }
    }

    #[test]
    fn roundtrip_and_mutation() {
        let table = example().to_table().unwrap();
        let m = build_canonical(&table).unwrap();
        assert!(verify_roundtrip(&m, &table).unwrap().passed());

        let mut broken = m.clone();
        let s = m.doxastic_states().first().unwrap();
        let e = StateSet::from_indices(4, [0, 2]);
        broken.set_entry(s, e.clone(), StateSet::from_indices(4, [0, 2]));
        let report = verify_roundtrip(&broken, &table).unwrap();
        assert_eq!(report.mismatches, vec![ev(&[1, 3])]);
        assert!(!report.validation.passed());
    }

    #[test]
    fn refuses_non_agm_and_inconsistent() {
        let sig = pq();
        let k = Theory::from_worlds(ev(&[3]));
        let identity = ContractionTable::from_fn(sig.clone(), k.clone(), |_| Ok(k.clone())).unwrap();
        assert!(matches!(build_canonical(&identity), Err(Error::PostulateViolation(_))));
        let bottom = Theory::inconsistent(&sig);
        let t = ContractionTable::from_fn(sig, bottom.clone(), |_| Ok(bottom.clone())).unwrap();
        assert!(matches!(build_canonical(&t), Err(Error::InconsistentBase)));
    }

    #[test]
    fn random_systems_are_valid() {
        let sig = Signature::numbered(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let s = random_sphere_system(&sig, &mut rng);
            assert!(SphereSystem::new(sig.clone(), s.spheres().to_vec()).is_ok());
            assert!(check_postulates(&s.to_table().unwrap()).unwrap().passed());
        }
    }
}
