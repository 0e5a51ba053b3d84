use std::collections::BTreeMap;

use crate::bits::{Event, StateSet};
use crate::error::{Error, Result};
use crate::logic::{truth_set, Formula, Signature};

/// A total preorder on states, stored as a rank per state (0 = most plausible).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ranking {
    rank: Vec<u32>,
}

impl Ranking {
    /// Builds from ordered tiers, which must partition `0..n_states`.
    pub fn from_tiers(n_states: usize, tiers: &[Vec<usize>]) -> Result<Self> {
        let mut rank = vec![u32::MAX; n_states];
        for (r, tier) in tiers.iter().enumerate() {
            if tier.is_empty() {
                return Err(Error::Model(format!("preorder tier {r} is empty")));
            }
            for &s in tier {
                if s >= n_states {
                    return Err(Error::Model(format!("preorder mentions unknown state {s}")));
                }
                if rank[s] != u32::MAX {
                    return Err(Error::Model(format!("state {s} appears in two preorder tiers")));
                }
                rank[s] = r as u32;
            }
        }
        if let Some(s) = rank.iter().position(|&r| r == u32::MAX) {
            return Err(Error::Model(format!("state {s} missing from preorder tiers")));
        }
        Ok(Self { rank })
    }

    pub fn from_ranks(rank: Vec<u32>) -> Self {
        let mut distinct: Vec<u32> = rank.clone();
        distinct.sort_unstable();
        distinct.dedup();
        let rank = rank.iter().map(|r| distinct.binary_search(r).expect("rank present") as u32).collect();
        Self { rank }
    }

    pub fn rank(&self, s: usize) -> u32 {
        self.rank[s]
    }

    pub fn tiers(&self) -> Vec<Vec<usize>> {
        let top = self.rank.iter().copied().max().map_or(0, |r| r as usize + 1);
        let mut tiers = vec![Vec::new(); top];
        for (s, &r) in self.rank.iter().enumerate() {
            tiers[r as usize].push(s);
        }
        tiers
    }

    /// The most plausible members of `e`.
    pub fn minimal(&self, e: &StateSet) -> StateSet {
        let best = e.iter().map(|s| self.rank[s]).min();
        let mut out = StateSet::empty(e.universe());
        if let Some(best) = best {
            for s in e.iter().filter(|&s| self.rank[s] == best) {
                out.insert(s);
            }
        }
        out
    }
}

/// How the selection function is presented.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Selection {
    /// Explicit entries `(state, event) -> selected`.
    Table(BTreeMap<(usize, StateSet), StateSet>),
    /// One preorder for every state; `f(s, E)` is the minimal part of `E`.
    Shared(Ranking),
    /// A preorder per state of the actual belief set.
    PerState(BTreeMap<usize, Ranking>),
}

/// Everything needed to assemble a [`PointedModel`].
#[derive(Debug, Clone)]
pub struct ModelParts {
    pub sig: Signature,
    pub ids: Vec<String>,
    /// Valuation index of each state.
    pub val: Vec<usize>,
    pub actual: usize,
    pub belief: Vec<StateSet>,
    pub selection: Selection,
    /// Maps states outside the actual belief set to states inside it.
    pub bridge: BTreeMap<usize, usize>,
}

/// A pointed frame together with a valuation.
///
/// Construction checks only referential integrity. Seriality and the
/// selection-function properties are judged by
/// [`validate_frame`](super::validate_frame).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointedModel {
    sig: Signature,
    ids: Vec<String>,
    val: Vec<usize>,
    actual: usize,
    belief: Vec<StateSet>,
    selection: Selection,
    bridge: BTreeMap<usize, usize>,
}

impl PointedModel {
    pub fn new(parts: ModelParts) -> Result<Self> {
        let ModelParts { sig, ids, val, actual, belief, selection, bridge } = parts;
        let n = ids.len();
        if n == 0 {
            return Err(Error::Model("a model needs at least one state".into()));
        }
        for (i, id) in ids.iter().enumerate() {
            if ids[..i].contains(id) {
                return Err(Error::Model(format!("duplicate state id `{id}`")));
            }
        }
        if val.len() != n || belief.len() != n {
            return Err(Error::Model("state, valuation and belief counts differ".into()));
        }
        if let Some(v) = val.iter().find(|&&v| v >= sig.world_count()) {
            return Err(Error::Model(format!("valuation index {v} outside the signature")));
        }
        if actual >= n {
            return Err(Error::Model("actual state does not exist".into()));
        }
        if belief.iter().any(|b| b.universe() != n) {
            return Err(Error::Model("belief set width differs from the state count".into()));
        }
        match &selection {
            Selection::Table(entries) => {
                for ((s, e), sel) in entries {
                    if *s >= n || e.universe() != n || sel.universe() != n {
                        return Err(Error::Model("selection entry refers to unknown states".into()));
                    }
                }
            }
            Selection::Shared(r) => {
                if r.rank.len() != n {
                    return Err(Error::Model("preorder size differs from the state count".into()));
                }
            }
            Selection::PerState(map) => {
                for (s, r) in map {
                    if *s >= n || r.rank.len() != n {
                        return Err(Error::Model("per-state preorder refers to unknown states".into()));
                    }
                }
            }
        }
        let doxastic = &belief[actual];
        for (&from, &to) in &bridge {
            if from >= n || to >= n {
                return Err(Error::Model("bridge refers to unknown states".into()));
            }
            if doxastic.contains(from) || !doxastic.contains(to) {
                return Err(Error::Model(format!(
                    "bridge must map states outside the actual belief set into it (`{}` -> `{}`)",
                    ids[from], ids[to]
                )));
            }
        }
        Ok(Self { sig, ids, val, actual, belief, selection, bridge })
    }

    pub fn into_parts(self) -> ModelParts {
        ModelParts {
            sig: self.sig,
            ids: self.ids,
            val: self.val,
            actual: self.actual,
            belief: self.belief,
            selection: self.selection,
            bridge: self.bridge,
        }
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn state_count(&self) -> usize {
        self.ids.len()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, s: usize) -> &str {
        &self.ids[s]
    }

    pub fn state_index(&self, id: &str) -> Option<usize> {
        self.ids.iter().position(|x| x == id)
    }

    pub fn valuation(&self, s: usize) -> usize {
        self.val[s]
    }

    pub fn valuations(&self) -> &[usize] {
        &self.val
    }

    pub fn actual(&self) -> usize {
        self.actual
    }

    pub fn belief(&self, s: usize) -> &StateSet {
        &self.belief[s]
    }

    /// `B(s_@)`.
    pub fn doxastic_states(&self) -> &StateSet {
        &self.belief[self.actual]
    }

    pub fn selection(&self) -> &Selection {
        &self.selection
    }

    pub fn bridge(&self) -> &BTreeMap<usize, usize> {
        &self.bridge
    }

    pub fn empty_states(&self) -> StateSet {
        StateSet::empty(self.state_count())
    }

    pub fn all_states(&self) -> StateSet {
        StateSet::full(self.state_count())
    }

    /// Renders a state set as `{id,...}`.
    pub fn show_states(&self, set: &StateSet) -> String {
        let ids: Vec<&str> = set.iter().map(|s| self.id(s)).collect();
        format!("{{{}}}", ids.join(","))
    }

    /// `∥f∥` over the model's states.
    pub fn states_satisfying(&self, f: &Formula) -> StateSet {
        self.states_in(&truth_set(f, &self.sig))
    }

    /// States whose valuation lies in `e`.
    pub fn states_in(&self, e: &Event) -> StateSet {
        StateSet::from_indices(self.state_count(), (0..self.state_count()).filter(|&s| e.contains(self.val[s])))
    }

    /// Valuations realized by the states of `set`.
    pub fn image(&self, set: &StateSet) -> Event {
        Event::from_indices(self.sig.world_count(), set.iter().map(|s| self.val[s]))
    }

    /// `f(s, e)` for `s` in the actual belief set.
    pub fn select(&self, s: usize, e: &StateSet) -> Result<StateSet> {
        let undefined = || Error::Domain { state: self.ids[s].clone(), event: self.show_states(e) };
        match &self.selection {
            Selection::Table(entries) => entries.get(&(s, e.clone())).cloned().ok_or_else(undefined),
            Selection::Shared(r) => Ok(r.minimal(e)),
            Selection::PerState(map) => map.get(&s).map(|r| r.minimal(e)).ok_or_else(undefined),
        }
    }

    /// `f(s, e)` for any state, routing states outside the actual belief set
    /// through the bridge.
    pub fn select_extended(&self, s: usize, e: &StateSet) -> Result<StateSet> {
        if self.doxastic_states().contains(s) {
            self.select(s, e)
        } else {
            let target = self.bridge.get(&s).ok_or_else(|| Error::MissingBridge(self.ids[s].clone()))?;
            self.select(*target, e)
        }
    }

    /// Bridge sending every state outside the actual belief set to its
    /// lowest-indexed member.
    pub fn default_bridge(belief: &[StateSet], actual: usize) -> BTreeMap<usize, usize> {
        let doxastic = &belief[actual];
        let Some(target) = doxastic.first() else {
            return BTreeMap::new();
        };
        (0..belief.len()).filter(|s| !doxastic.contains(*s)).map(|s| (s, target)).collect()
    }

    /// Same model with the selection function written out entry by entry
    /// over the actual belief set and every nonempty event. Needs at most
    /// 16 states.
    pub fn to_explicit(&self) -> Result<Self> {
        let n = self.state_count();
        if n > 16 {
            return Err(Error::TooLarge { what: "explicit selection tables", max: 16, got: n });
        }
        let mut entries = BTreeMap::new();
        for s in self.doxastic_states().iter() {
            for mask in 1..(1u64 << n) {
                let e = StateSet::from_mask(n, mask);
                let sel = self.select(s, &e)?;
                entries.insert((s, e), sel);
            }
        }
        let mut out = self.clone();
        out.selection = Selection::Table(entries);
        Ok(out)
    }

    /// Overwrites one explicit entry. No-op for preorder-form selections.
    pub fn set_entry(&mut self, s: usize, e: StateSet, selected: StateSet) {
        if let Selection::Table(entries) = &mut self.selection {
            entries.insert((s, e), selected);
        }
    }

    pub fn set_belief(&mut self, s: usize, set: StateSet) {
        self.belief[s] = set;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranking_minimal_and_tiers() {
        let r = Ranking::from_tiers(4, &[vec![3], vec![2], vec![1, 0]]).unwrap();
        assert_eq!(r.minimal(&StateSet::from_indices(4, [0, 2])), StateSet::from_indices(4, [2]));
        assert_eq!(r.minimal(&StateSet::from_indices(4, [0, 1])), StateSet::from_indices(4, [0, 1]));
        assert_eq!(r.tiers(), vec![vec![3], vec![2], vec![0, 1]]);
        assert!(Ranking::from_tiers(3, &[vec![0], vec![1]]).is_err());
        assert!(Ranking::from_tiers(2, &[vec![0, 1], vec![1]]).is_err());
        assert_eq!(Ranking::from_ranks(vec![7, 3, 7, 10]).tiers(), vec![vec![1], vec![0, 2], vec![3]]);
    }

    #[test]
    fn bridge_must_point_into_belief_set() {
        let sig = Signature::new(["p"]).unwrap();
        let b = StateSet::from_indices(2, [1]);
        let parts = |bridge: BTreeMap<usize, usize>| ModelParts {
            sig: sig.clone(),
            ids: vec!["a".into(), "b".into()],
            val: vec![0, 1],
            actual: 1,
            belief: vec![b.clone(), b.clone()],
            selection: Selection::Shared(Ranking::from_tiers(2, &[vec![1], vec![0]]).unwrap()),
            bridge,
        };
        assert!(PointedModel::new(parts(BTreeMap::from([(0, 1)]))).is_ok());
        assert!(PointedModel::new(parts(BTreeMap::from([(1, 0)]))).is_err());
        let m = PointedModel::new(parts(BTreeMap::new())).unwrap();
        let e = StateSet::from_indices(2, [0]);
        assert!(matches!(m.select_extended(0, &e), Err(Error::MissingBridge(_))));
        assert_eq!(m.select_extended(1, &e).unwrap(), e);
    }
}
