//! Checks seriality and the selection-function properties.
//!
//! Up to [`EXHAUSTIVE_STATE_LIMIT`] states every nonempty event `E` and every
//! `F` with `E ∩ F ≠ ∅` is enumerated; larger models are checked on a seeded
//! sample of triples.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::PointedModel;
use crate::bits::StateSet;
use crate::error::Result;

pub const EXHAUSTIVE_STATE_LIMIT: usize = 8;
pub const DEFAULT_SAMPLES: usize = 20_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Clause {
    #[serde(rename = "seriality")]
    Seriality,
    /// `f(s,E)` nonempty.
    #[serde(rename = "4a1")]
    A1,
    /// `f(s,E) ⊆ E`.
    #[serde(rename = "4a2")]
    A2,
    /// Weak centering.
    #[serde(rename = "4b")]
    B,
    /// `B(s_@) ∩ E ≠ ∅` implies `f(s,E) ⊆ B(s_@) ∩ E`.
    #[serde(rename = "4c")]
    C,
    /// `f(s,E) ∩ F ⊆ f(s,E∩F)`.
    #[serde(rename = "4d")]
    D,
    #[serde(rename = "4e1")]
    E1,
    #[serde(rename = "4e2")]
    E2,
}

impl Clause {
    pub const ALL: [Clause; 8] =
        [Clause::Seriality, Clause::A1, Clause::A2, Clause::B, Clause::C, Clause::D, Clause::E1, Clause::E2];

    pub fn id(self) -> &'static str {
        match self {
            Clause::Seriality => "seriality",
            Clause::A1 => "4a1",
            Clause::A2 => "4a2",
            Clause::B => "4b",
            Clause::C => "4c",
            Clause::D => "4d",
            Clause::E1 => "4e1",
            Clause::E2 => "4e2",
        }
    }

    pub fn from_id(id: &str) -> Option<Clause> {
        Clause::ALL.into_iter().find(|c| c.id() == id)
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub clause: Clause,
    pub state: usize,
    /// `E`, absent for seriality.
    pub event: Option<StateSet>,
    /// `F`, for the two-event clauses.
    pub other: Option<StateSet>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    /// At most one witness per clause, in clause order.
    pub violations: Vec<Violation>,
    pub exhaustive: bool,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn clauses(&self) -> Vec<Clause> {
        self.violations.iter().map(|v| v.clause).collect()
    }

    pub fn has(&self, clause: Clause) -> bool {
        self.violations.iter().any(|v| v.clause == clause)
    }
}

/// Keeps the first witness per clause under (state, E, F) order.
struct Witnesses {
    best: [Option<(usize, u64, u64)>; 8],
}

impl Witnesses {
    fn new() -> Self {
        Self { best: [None; 8] }
    }

    fn record(&mut self, clause: Clause, key: (usize, u64, u64)) {
        let slot = &mut self.best[clause as usize];
        if slot.is_none_or(|old| key < old) {
            *slot = Some(key);
        }
    }

    fn into_report(self, n: usize) -> ValidationReport {
        let violations = Clause::ALL
            .into_iter()
            .zip(self.best)
            .filter_map(|(clause, key)| {
                key.map(|(state, e, f)| Violation {
                    clause,
                    state,
                    event: (e != 0).then(|| StateSet::from_mask(n, e)),
                    other: (f != 0).then(|| StateSet::from_mask(n, f)),
                })
            })
            .collect();
        ValidationReport { violations, exhaustive: true }
    }
}

pub fn validate_frame(m: &PointedModel) -> Result<ValidationReport> {
    if m.state_count() <= EXHAUSTIVE_STATE_LIMIT {
        validate_exhaustive(m)
    } else {
        validate_sampled(m, DEFAULT_SAMPLES, 0)
    }
}

fn validate_exhaustive(m: &PointedModel) -> Result<ValidationReport> {
    let n = m.state_count();
    let full: u64 = (1 << n) - 1;
    let doxastic: Vec<usize> = m.doxastic_states().iter().collect();
    let b = m.doxastic_states().to_mask();
    let mut w = Witnesses::new();

    for s in 0..n {
        if m.belief(s).is_empty() {
            w.record(Clause::Seriality, (s, 0, 0));
        }
    }

    // table[i][e] = f(doxastic[i], e)
    let mut table = vec![vec![0u64; 1 << n]; doxastic.len()];
    for (i, &s) in doxastic.iter().enumerate() {
        for e in 1..=full {
            table[i][e as usize] = m.select(s, &StateSet::from_mask(n, e))?.to_mask();
        }
    }

    for (i, &s) in doxastic.iter().enumerate() {
        for e in 1..=full {
            let fe = table[i][e as usize];
            if fe == 0 {
                w.record(Clause::A1, (s, e, 0));
            }
            if fe & !e != 0 {
                w.record(Clause::A2, (s, e, 0));
            }
            if (e >> s) & 1 == 1 && (fe >> s) & 1 == 0 {
                w.record(Clause::B, (s, e, 0));
            }
            if b & e != 0 && fe & !(b & e) != 0 {
                w.record(Clause::C, (s, e, 0));
            }
        }
    }

    for e in 1..=full {
        for f in 1..=full {
            let ef = e & f;
            if ef == 0 {
                continue;
            }
            // positions i with f(s_i, E) ∩ F ≠ ∅
            let meets: Vec<bool> = table.iter().map(|row| row[e as usize] & f != 0).collect();
            let any_meets = meets.iter().any(|&x| x);
            for (i, &s) in doxastic.iter().enumerate() {
                let fe_f = table[i][e as usize] & f;
                let fef = table[i][ef as usize];
                if fe_f & !fef != 0 {
                    w.record(Clause::D, (s, e, f));
                }
                if !any_meets {
                    continue;
                }
                if meets[i] {
                    if fef & !fe_f != 0 {
                        w.record(Clause::E1, (s, e, f));
                    }
                } else {
                    let covered = (0..doxastic.len()).any(|j| meets[j] && fef & !table[j][ef as usize] == 0);
                    if !covered {
                        w.record(Clause::E2, (s, e, f));
                    }
                }
            }
        }
    }

    Ok(w.into_report(n))
}

/// Checks clauses on `samples` random `(E, F)` pairs, every state of the
/// actual belief set against each pair.
pub fn validate_sampled(m: &PointedModel, samples: usize, seed: u64) -> Result<ValidationReport> {
    let n = m.state_count();
    let doxastic: Vec<usize> = m.doxastic_states().iter().collect();
    let b = m.doxastic_states();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut found: Vec<Violation> = Vec::new();
    let mut note = |v: Violation| {
        if !found.iter().any(|x| x.clause == v.clause) {
            found.push(v);
        }
    };
    let random_event = |rng: &mut ChaCha8Rng| loop {
        let e = StateSet::from_indices(n, (0..n).filter(|_| rng.gen_bool(0.5)));
        if !e.is_empty() {
            return e;
        }
    };

    for s in 0..n {
        if m.belief(s).is_empty() {
            note(Violation { clause: Clause::Seriality, state: s, event: None, other: None });
            break;
        }
    }

    for _ in 0..samples {
        let e = random_event(&mut rng);
        let f = random_event(&mut rng);
        let ef = e.intersection(&f);
        let sel_e: Vec<StateSet> = doxastic.iter().map(|&s| m.select(s, &e)).collect::<Result<_>>()?;
        let single = |clause, s| Violation { clause, state: s, event: Some(e.clone()), other: None };
        for (i, &s) in doxastic.iter().enumerate() {
            let fe = &sel_e[i];
            if fe.is_empty() {
                note(single(Clause::A1, s));
            }
            if !fe.is_subset(&e) {
                note(single(Clause::A2, s));
            }
            if e.contains(s) && !fe.contains(s) {
                note(single(Clause::B, s));
            }
            let be = b.intersection(&e);
            if !be.is_empty() && !fe.is_subset(&be) {
                note(single(Clause::C, s));
            }
        }
        if ef.is_empty() {
            continue;
        }
        let sel_ef: Vec<StateSet> = doxastic.iter().map(|&s| m.select(s, &ef)).collect::<Result<_>>()?;
        let meets: Vec<bool> = sel_e.iter().map(|x| x.intersects(&f)).collect();
        let any_meets = meets.iter().any(|&x| x);
        for (i, &s) in doxastic.iter().enumerate() {
            let pair = |clause| Violation { clause, state: s, event: Some(e.clone()), other: Some(f.clone()) };
            let fe_f = sel_e[i].intersection(&f);
            if !fe_f.is_subset(&sel_ef[i]) {
                note(pair(Clause::D));
            }
            if !any_meets {
                continue;
            }
            if meets[i] {
                if !sel_ef[i].is_subset(&fe_f) {
                    note(pair(Clause::E1));
                }
            } else if !(0..doxastic.len()).any(|j| meets[j] && sel_ef[i].is_subset(&sel_ef[j])) {
                note(pair(Clause::E2));
            }
        }
    }
    found.sort_by_key(|v| v.clause);
    Ok(ValidationReport { violations: found, exhaustive: false })
}
