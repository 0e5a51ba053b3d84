use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{ContractionTable, Postulate};
use crate::bits::Event;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CheckOptions {
    /// Cap on `(φ, ψ)` pairs for (K-7) and (K-8). `None`, or a cap at least
    /// the number of pairs, checks every pair.
    pub max_pairs: Option<usize>,
    /// Seed for sampling pairs when the cap applies.
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    /// Cannot fail given how tables are represented.
    Structural,
}

impl Verdict {
    pub fn id(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Structural => "structural",
        }
    }
}

/// A failing instance. For the one-formula postulates `psi` is a formula
/// separating the two theories being compared (for (K-4), `φ` itself).
/// `world` is a valuation witnessing the failed inclusion, when there is one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub postulate: Postulate,
    pub phi: Event,
    pub psi: Event,
    pub world: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PostulateReport {
    pub verdicts: Vec<(Postulate, Verdict)>,
    /// The smallest counterexample per failing postulate, ordered by
    /// `(|φ|, |ψ|, φ, ψ)`.
    pub counterexamples: Vec<Counterexample>,
    pub pairs_checked: usize,
    pub exhaustive: bool,
}

impl PostulateReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }

    pub fn verdict(&self, p: Postulate) -> Verdict {
        self.verdicts.iter().find(|(q, _)| *q == p).map_or(Verdict::Pass, |(_, v)| *v)
    }

    pub fn counterexample(&self, p: Postulate) -> Option<&Counterexample> {
        self.counterexamples.iter().find(|c| c.postulate == p)
    }

    pub fn failed(&self) -> Vec<Postulate> {
        self.counterexamples.iter().map(|c| c.postulate).collect()
    }
}

pub fn check_postulates(c: &ContractionTable) -> Result<PostulateReport> {
    check_postulates_with(c, CheckOptions::default())
}

type Key = (u32, u32, u64, u64);

struct Best {
    slots: [Option<(Key, Option<usize>)>; 8],
}

impl Best {
    fn record(&mut self, p: Postulate, phi: u64, psi: u64, witness: u64) {
        let key = (phi.count_ones(), psi.count_ones(), phi, psi);
        let world = (witness != 0).then(|| witness.trailing_zeros() as usize);
        let slot = &mut self.slots[p as usize];
        if slot.is_none_or(|(old, _)| key < old) {
            *slot = Some((key, world));
        }
    }
}

pub fn check_postulates_with(c: &ContractionTable, opts: CheckOptions) -> Result<PostulateReport> {
    let w = c.signature().world_count();
    let n_events = c.event_count();
    let full: u64 = if w == 64 { u64::MAX } else { (1 << w) - 1 };
    let k = c.k().worlds().to_mask();
    let r: Vec<u64> = (0..n_events)
        .map(|i| {
            c.get(&c.event(i)).map(|t| t.worlds().to_mask()).ok_or_else(|| Error::PartialTable(c.event(i).to_string()))
        })
        .collect::<Result<_>>()?;

    let mut best = Best { slots: [None; 8] };
    for e in 0..n_events as u64 {
        let re = r[e as usize];
        if k & !re != 0 {
            best.record(Postulate::K2, e, re, k & !re);
        }
        if k & !e != 0 && re & !k != 0 {
            best.record(Postulate::K3, e, k, re & !k);
        }
        if e != full && re & !e == 0 {
            best.record(Postulate::K4, e, e, 0);
        }
        if k & !e == 0 && re & e & !k != 0 {
            best.record(Postulate::K5, e, k, re & e & !k);
        }
    }

    let mut pair = |a: u64, b: u64| {
        let (ra, rb, rab) = (r[a as usize], r[b as usize], r[(a & b) as usize]);
        if rab & !(ra | rb) != 0 {
            best.record(Postulate::K7, a, b, rab & !(ra | rb));
        }
        if rab & !a != 0 && ra & !rab != 0 {
            best.record(Postulate::K8, a, b, ra & !rab);
        }
    };
    let total = n_events * n_events;
    let (pairs_checked, exhaustive) = match opts.max_pairs {
        Some(cap) if cap < total => {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            for _ in 0..cap {
                let a = rng.gen_range(0..n_events as u64);
                let b = rng.gen_range(0..n_events as u64);
                pair(a, b);
            }
            (cap, false)
        }
        _ => {
            for a in 0..n_events as u64 {
                for b in 0..n_events as u64 {
                    pair(a, b);
                }
            }
            (total, true)
        }
    };

    let mut verdicts = Vec::with_capacity(8);
    let mut counterexamples = Vec::new();
    for p in Postulate::ALL {
        let verdict = match (p, best.slots[p as usize]) {
            (Postulate::K1 | Postulate::K6, _) => Verdict::Structural,
            (_, None) => Verdict::Pass,
            (_, Some(((_, _, phi, psi), world))) => {
                counterexamples.push(Counterexample {
                    postulate: p,
                    phi: Event::from_mask(w, phi),
                    psi: Event::from_mask(w, psi),
                    world,
                });
                Verdict::Fail
            }
        };
        verdicts.push((p, verdict));
    }
    Ok(PostulateReport { verdicts, counterexamples, pairs_checked, exhaustive })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{Signature, Theory};

    fn pq() -> Signature {
        Signature::new(["p", "q"]).unwrap()
    }

    #[test]
    fn identity_table_fails_success() {
        let sig = pq();
        let k = Theory::from_worlds(Event::from_indices(4, [3]));
        let table = ContractionTable::from_fn(sig, k.clone(), |_| Ok(k.clone())).unwrap();
        let report = check_postulates(&table).unwrap();
        assert_eq!(report.failed(), vec![Postulate::K4]);
        // smallest non-tautologous φ in K is p ∧ q itself
        let cx = report.counterexample(Postulate::K4).unwrap();
        assert_eq!(cx.phi, Event::from_indices(4, [3]));
        assert_eq!(report.verdict(Postulate::K1), Verdict::Structural);
        assert_eq!(report.verdict(Postulate::K6), Verdict::Structural);
    }

    #[test]
    fn full_meet_contraction_is_agm() {
        // K ÷ φ = K ∪ ∥¬φ∥ for φ ∈ K non-tautologous, K otherwise
        let sig = pq();
        let k = Event::from_indices(4, [3]);
        let table = ContractionTable::from_fn(sig, Theory::from_worlds(k.clone()), |e| {
            if k.is_subset(e) && !e.is_full() {
                Ok(Theory::from_worlds(k.union(&e.complement())))
            } else {
                Ok(Theory::from_worlds(k.clone()))
            }
        })
        .unwrap();
        let report = check_postulates(&table).unwrap();
        assert!(report.passed(), "{:?}", report.counterexamples);
        assert!(report.exhaustive);
        assert_eq!(report.pairs_checked, 256);
    }

    #[test]
    fn sampling_respects_cap() {
        let sig = Signature::numbered(3).unwrap();
        let k = Theory::tautologies(&sig);
        let table = ContractionTable::from_fn(sig, k.clone(), |_| Ok(k.clone())).unwrap();
        let opts = CheckOptions { max_pairs: Some(500), seed: 9 };
        let report = check_postulates_with(&table, opts).unwrap();
        assert_eq!(report.pairs_checked, 500);
        assert!(!report.exhaustive);
        assert_eq!(report, check_postulates_with(&table, opts).unwrap());
    }

    #[test]
    fn partial_table_is_rejected() {
        let sig = pq();
        let table = ContractionTable::new(sig.clone(), Theory::tautologies(&sig)).unwrap();
        assert!(matches!(check_postulates(&table), Err(Error::PartialTable(_))));
    }
}
