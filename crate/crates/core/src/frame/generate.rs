//! Seeded generation of pointed models.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::model::{ModelParts, PointedModel, Ranking, Selection};
use super::validate::{validate_frame, Clause, EXHAUSTIVE_STATE_LIMIT};
use crate::bits::StateSet;
use crate::error::{Error, Result};
use crate::logic::Signature;

/// Resampling bound for per-state orders.
pub const ORDER_RETRIES: usize = 64;
/// Perturbations tried when a clause is to be broken.
pub const DROP_ATTEMPTS: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameParams {
    pub n_atoms: usize,
    pub n_states: usize,
    pub duplicate_valuations: bool,
    pub per_state_orders: bool,
    pub drop_clause: Option<Clause>,
}

impl FrameParams {
    pub fn new(n_atoms: usize, n_states: usize) -> Self {
        Self { n_atoms, n_states, duplicate_valuations: false, per_state_orders: false, drop_clause: None }
    }
}

fn random_nonempty(rng: &mut impl Rng, n: usize) -> StateSet {
    let mut set = StateSet::from_indices(n, (0..n).filter(|_| rng.gen_bool(0.5)));
    if set.is_empty() {
        set.insert(rng.gen_range(0..n));
    }
    set
}

fn random_subset_of(rng: &mut impl Rng, of: &StateSet) -> StateSet {
    StateSet::from_indices(of.universe(), of.iter().filter(|_| rng.gen_bool(0.5)))
}

/// A random total preorder with `bottom` tied at rank 0 and every other
/// state strictly above it.
fn bottom_tied_ranking(rng: &mut impl Rng, n: usize, bottom: &StateSet) -> Ranking {
    let rest = n - bottom.count();
    let ranks = (0..n).map(|s| if bottom.contains(s) { 0 } else { rng.gen_range(1..=rest as u32) }).collect();
    Ranking::from_ranks(ranks)
}

/// Generates a model deterministically from `params` and `seed`.
///
/// Without `drop_clause` the result passes [`validate_frame`]. With it, the
/// selection is written out explicitly and perturbed until validation
/// reports that clause, preferring perturbations where it is the only one;
/// base frames on which the clause cannot be broken are resampled.
pub fn generate_frame(params: &FrameParams, seed: u64) -> Result<PointedModel> {
    let sig = Signature::numbered(params.n_atoms)?;
    let n = params.n_states;
    if n == 0 {
        return Err(Error::Model("a model needs at least one state".into()));
    }
    if !params.duplicate_valuations && n > sig.world_count() {
        return Err(Error::Model(format!("{n} states cannot carry distinct valuations over {} atoms", params.n_atoms)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let Some(clause) = params.drop_clause else {
        return sample_valid(params, &sig, &mut rng);
    };
    for _ in 0..ORDER_RETRIES {
        let base = sample_valid(params, &sig, &mut rng)?;
        match break_clause(base, clause, &mut rng) {
            Err(Error::GenerationExhausted(_)) => continue,
            other => return other,
        }
    }
    Err(Error::GenerationExhausted(ORDER_RETRIES * DROP_ATTEMPTS))
}

fn sample_valid(params: &FrameParams, sig: &Signature, rng: &mut ChaCha8Rng) -> Result<PointedModel> {
    let n = params.n_states;
    let w = sig.world_count();
    let mut val: Vec<usize> = if params.duplicate_valuations {
        (0..n).map(|_| rng.gen_range(0..w)).collect()
    } else {
        rand::seq::index::sample(rng, w, n).into_vec()
    };
    val.sort_unstable();
    let ids: Vec<String> = (0..n).map(|i| format!("s{i}")).collect();
    let actual = rng.gen_range(0..n);
    let belief: Vec<StateSet> = (0..n).map(|_| random_nonempty(rng, n)).collect();
    let doxastic = belief[actual].clone();
    let bridge = PointedModel::default_bridge(&belief, actual);

    let build = |selection: Selection| {
        PointedModel::new(ModelParts {
            sig: sig.clone(),
            ids: ids.clone(),
            val: val.clone(),
            actual,
            belief: belief.clone(),
            selection,
            bridge: bridge.clone(),
        })
    };

    if !params.per_state_orders {
        return build(Selection::Shared(bottom_tied_ranking(rng, n, &doxastic)));
    }
    for _ in 0..ORDER_RETRIES {
        let orders: BTreeMap<usize, Ranking> =
            doxastic.iter().map(|s| (s, bottom_tied_ranking(rng, n, &doxastic))).collect();
        let m = build(Selection::PerState(orders))?;
        if validate_frame(&m)?.passed() {
            return Ok(m);
        }
    }
    Err(Error::GenerationExhausted(ORDER_RETRIES))
}

fn break_clause(model: PointedModel, clause: Clause, rng: &mut ChaCha8Rng) -> Result<PointedModel> {
    let n = model.state_count();
    if n > EXHAUSTIVE_STATE_LIMIT {
        return Err(Error::TooLarge {
            what: "clause-dropping generation (states)",
            max: EXHAUSTIVE_STATE_LIMIT,
            got: n,
        });
    }
    let base = model.to_explicit()?;
    let doxastic: Vec<usize> = base.doxastic_states().iter().collect();
    let b = base.doxastic_states().clone();
    let mut fallback = None;

    for _ in 0..DROP_ATTEMPTS {
        let mut m = base.clone();
        let s = *doxastic.choose(rng).expect("actual belief set is nonempty");
        let e = random_nonempty(rng, n);
        let current = m.select(s, &e)?;
        let be = b.intersection(&e);
        let changed = match clause {
            Clause::Seriality => {
                let t = rng.gen_range(0..n);
                m.set_belief(t, StateSet::empty(n));
                true
            }
            Clause::A1 => {
                m.set_entry(s, e, StateSet::empty(n));
                true
            }
            Clause::A2 => {
                let outside: Vec<usize> = e.complement().iter().collect();
                match outside.choose(rng) {
                    Some(&x) => {
                        let mut sel = current;
                        sel.insert(x);
                        m.set_entry(s, e, sel);
                        true
                    }
                    None => false,
                }
            }
            Clause::B => {
                if !e.contains(s) || e.count() < 2 {
                    false
                } else {
                    let mut pool = if be.count() > 1 { be.clone() } else { e.clone() };
                    pool.remove(s);
                    let mut sel = random_subset_of(rng, &pool);
                    if sel.is_empty() {
                        sel.insert(pool.first().expect("pool nonempty"));
                    }
                    m.set_entry(s, e, sel);
                    true
                }
            }
            Clause::C => {
                let outside: Vec<usize> = e.difference(&b).iter().collect();
                match outside.choose(rng) {
                    Some(&x) if !be.is_empty() => {
                        let mut sel = current;
                        sel.insert(x);
                        m.set_entry(s, e, sel);
                        true
                    }
                    _ => false,
                }
            }
            Clause::D | Clause::E1 | Clause::E2 => {
                // keep 4a, 4b and 4c intact
                let pool = if be.is_empty() { e.clone() } else { be.clone() };
                let mut sel = random_subset_of(rng, &pool);
                if e.contains(s) {
                    sel.insert(s);
                }
                if sel.is_empty() {
                    sel.insert(*pool.to_vec().choose(rng).expect("pool nonempty"));
                }
                let changed = sel != current;
                m.set_entry(s, e, sel);
                changed
            }
        };
        if !changed {
            continue;
        }
        let report = validate_frame(&m)?;
        if report.has(clause) {
            if report.violations.len() == 1 {
                return Ok(m);
            }
            fallback.get_or_insert(m);
        }
    }
    fallback.ok_or(Error::GenerationExhausted(DROP_ATTEMPTS))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_model() {
        let p = FrameParams::new(2, 4);
        assert_eq!(generate_frame(&p, 42).unwrap(), generate_frame(&p, 42).unwrap());
    }

    #[test]
    fn all_valuations_present_without_duplicates() {
        let m = generate_frame(&FrameParams::new(2, 4), 7).unwrap();
        assert_eq!(m.valuations(), &[0, 1, 2, 3]);
    }

    #[test]
    fn generated_frames_validate() {
        for seed in 0..1000 {
            let n_atoms = 1 + (seed as usize % 3);
            let mut p = FrameParams::new(n_atoms, 1 + (seed as usize % 6));
            p.duplicate_valuations = true;
            p.per_state_orders = seed % 2 == 0;
            let m = generate_frame(&p, seed).unwrap();
            let report = validate_frame(&m).unwrap();
            assert!(report.passed(), "seed {seed}: {:?}", report.violations);
        }
    }

    #[test]
    fn dropped_clause_is_reported() {
        let clauses = [Clause::A1, Clause::A2, Clause::B, Clause::C, Clause::D, Clause::Seriality];
        for clause in clauses {
            for seed in 0..5 {
                let mut p = FrameParams::new(2, 4);
                p.drop_clause = Some(clause);
                let m = generate_frame(&p, seed).unwrap();
                assert!(validate_frame(&m).unwrap().has(clause), "{clause} seed {seed}");
            }
        }
    }

    #[test]
    fn too_many_distinct_states_rejected() {
        assert!(generate_frame(&FrameParams::new(1, 3), 0).is_err());
    }
}
