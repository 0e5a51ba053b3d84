//! Belief set, contraction, revision and expansion read off a pointed model.
//!
//! Two kinds of truth set meet here. The selection function is applied to
//! events over the model's states, while the resulting theories are sets of
//! valuations over the full space. A model need not realize every
//! valuation, so the two must not be confused.

use crate::bits::{Event, StateSet};
use crate::error::{Error, Result};
use crate::frame::{eval_extended, ModalFormula, PointedModel};
use crate::logic::{truth_set, Formula, Theory};

/// `K`: the valuations realized by `B(s_@)`.
pub fn belief_set(m: &PointedModel) -> Theory {
    Theory::from_worlds(m.image(m.doxastic_states()))
}

/// `⋃ f(s, e)` over `s ∈ B(s_@)`.
fn selected_by_beliefs(m: &PointedModel, e: &StateSet) -> Result<StateSet> {
    let mut acc = m.empty_states();
    for s in m.doxastic_states().iter() {
        acc = acc.union(&m.select(s, e)?);
    }
    Ok(acc)
}

/// Contraction by the formula whose truth set over the valuation space is
/// `phi`, defined only when some state falsifies it.
pub fn contract_partial_event(m: &PointedModel, phi: &Event) -> Result<Theory> {
    let neg = m.states_in(&phi.complement());
    if neg.is_empty() {
        return Err(Error::OutsidePartialDomain);
    }
    let kept = m.doxastic_states().union(&selected_by_beliefs(m, &neg)?);
    Ok(Theory::from_worlds(m.image(&kept)))
}

/// Total contraction by truth set. When no state falsifies `phi` the result
/// is `K ∩ Cn(¬φ)`, computed over the valuation space.
pub fn contract_event(m: &PointedModel, phi: &Event) -> Result<Theory> {
    match contract_partial_event(m, phi) {
        Err(Error::OutsidePartialDomain) => {
            Ok(Theory::from_worlds(m.image(m.doxastic_states()).union(&phi.complement())))
        }
        other => other,
    }
}

pub fn contract_partial(m: &PointedModel, phi: &Formula) -> Result<Theory> {
    contract_partial_event(m, &truth_set(phi, m.signature()))
}

pub fn contract_full(m: &PointedModel, phi: &Formula) -> Result<Theory> {
    contract_event(m, &truth_set(phi, m.signature()))
}

/// Revision by truth set: the valuations of the closest `phi` states. No
/// `phi` state at all makes every conditional from `phi` vacuously true,
/// giving the inconsistent theory.
pub fn revise_event(m: &PointedModel, phi: &Event) -> Result<Theory> {
    let pos = m.states_in(phi);
    if pos.is_empty() {
        return Ok(Theory::inconsistent(m.signature()));
    }
    Ok(Theory::from_worlds(m.image(&selected_by_beliefs(m, &pos)?)))
}

pub fn revise(m: &PointedModel, phi: &Formula) -> Result<Theory> {
    revise_event(m, &truth_set(phi, m.signature()))
}

/// Result of the modal expansion `¬B¬φ ∧ B(φ → ψ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModalExpansion {
    Theory(Theory),
    /// `φ` is disbelieved, so no `ψ` passes the membership test. This is not
    /// the inconsistent theory, which contains every formula.
    AllFalse,
}

impl ModalExpansion {
    pub fn theory(&self) -> Option<&Theory> {
        match self {
            ModalExpansion::Theory(t) => Some(t),
            ModalExpansion::AllFalse => None,
        }
    }
}

pub fn expand_modal_event(m: &PointedModel, phi: &Event) -> ModalExpansion {
    let beliefs = m.image(m.doxastic_states());
    let kept = beliefs.intersection(phi);
    if kept.is_empty() {
        ModalExpansion::AllFalse
    } else {
        ModalExpansion::Theory(Theory::from_worlds(kept))
    }
}

pub fn expand_modal(m: &PointedModel, phi: &Formula) -> ModalExpansion {
    expand_modal_event(m, &truth_set(phi, m.signature()))
}

/// `s_@ ⊨ Bψ ∧ B(¬φ > ψ)`, evaluated through the modal semantics.
pub fn modal_contraction_member(m: &PointedModel, phi: &Formula, psi: &Formula) -> Result<bool> {
    let f = ModalFormula::and(
        ModalFormula::Believe(Box::new(ModalFormula::boolean(psi))),
        ModalFormula::Believe(Box::new(ModalFormula::cond(Formula::not(phi.clone()), psi.clone()))),
    );
    eval_extended(m, m.actual(), &f)
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::frame::{ModelParts, Ranking, Selection};
    use crate::logic::{cn_member, expand_theory, Signature};

    fn ev(idx: &[usize]) -> Event {
        Event::from_indices(4, idx.iter().copied())
    }

    /// Four states with `val(si) = i`, actual `s3`, preorder s3 < s2 < s1 < s0.
    fn chain_model(belief: &[usize], val: &[usize]) -> PointedModel {
        let n = val.len();
        let b = StateSet::from_indices(n, belief.iter().copied());
        let mut ranks: Vec<u32> = (0..n).map(|s| (n - 1 - s) as u32 + 1).collect();
        for &s in belief {
            ranks[s] = 0;
        }
        PointedModel::new(ModelParts {
            sig: Signature::new(["p", "q"]).unwrap(),
            ids: (0..n).map(|i| format!("s{i}")).collect(),
            val: val.to_vec(),
            actual: n - 1,
            belief: vec![b.clone(); n],
            selection: Selection::Shared(Ranking::from_ranks(ranks)),
            bridge: BTreeMap::new(),
        })
        .unwrap()
    }

    fn parse(m: &PointedModel, text: &str) -> Formula {
        m.signature().parse(text).unwrap()
    }

    #[test]
    fn belief_sets() {
        assert_eq!(belief_set(&chain_model(&[3], &[0, 1, 2, 3])).worlds(), &ev(&[3]));
        assert_eq!(belief_set(&chain_model(&[2, 3], &[0, 1, 2, 3])).worlds(), &ev(&[2, 3]));
    }

    #[test]
    fn contracting_p_keeps_q() {
        let m = chain_model(&[3], &[0, 1, 2, 3]);
        let k = contract_partial(&m, &parse(&m, "p")).unwrap();
        assert_eq!(k.worlds(), &ev(&[2, 3]));
        let sig = m.signature();
        assert!(cn_member(&k, &parse(&m, "q"), sig));
        assert!(!cn_member(&k, &parse(&m, "p"), sig));
        assert_eq!(
            contract_partial(&m, &parse(&m, "p & q & p")).unwrap(),
            contract_partial(&m, &parse(&m, "p & q")).unwrap()
        );
    }

    #[test]
    fn vacuous_contraction() {
        let m = chain_model(&[2, 3], &[0, 1, 2, 3]);
        assert_eq!(contract_partial(&m, &parse(&m, "p")).unwrap(), belief_set(&m));
    }

    #[test]
    fn full_contraction_outside_partial_domain() {
        let m = chain_model(&[3], &[0, 1, 2, 3]);
        let taut = parse(&m, "p | ~p");
        assert!(matches!(contract_partial(&m, &taut), Err(Error::OutsidePartialDomain)));
        assert_eq!(contract_full(&m, &taut).unwrap(), belief_set(&m));

        // only valuations 1 and 3 are realized, so no state falsifies p
        let m = chain_model(&[1], &[1, 3]);
        let p = parse(&m, "p");
        assert_eq!(belief_set(&m).worlds(), &ev(&[3]));
        assert!(matches!(contract_partial(&m, &p), Err(Error::OutsidePartialDomain)));
        assert_eq!(contract_full(&m, &p).unwrap().worlds(), &ev(&[0, 2, 3]));
    }

    #[test]
    fn revision() {
        let m = chain_model(&[3], &[0, 1, 2, 3]);
        assert_eq!(revise(&m, &parse(&m, "~p")).unwrap().worlds(), &ev(&[2]));
        assert_eq!(revise(&m, &parse(&m, "q")).unwrap().worlds(), &ev(&[3]));
        assert_eq!(revise(&m, &parse(&m, "p & ~p")).unwrap().worlds(), &ev(&[]));
    }

    #[test]
    fn modal_expansion() {
        let m = chain_model(&[2, 3], &[0, 1, 2, 3]);
        let p = parse(&m, "p");
        let expected = expand_theory(&belief_set(&m), &p, m.signature());
        assert_eq!(expand_modal(&m, &p), ModalExpansion::Theory(expected));
        assert_eq!(expand_modal(&m, &parse(&m, "q")), ModalExpansion::Theory(belief_set(&m)));

        let m = chain_model(&[3], &[0, 1, 2, 3]);
        let not_p = parse(&m, "~p");
        assert_eq!(expand_modal(&m, &not_p), ModalExpansion::AllFalse);
        assert!(!expand_theory(&belief_set(&m), &not_p, m.signature()).is_consistent());
    }

    #[test]
    fn modal_membership_matches() {
        let m = chain_model(&[3], &[0, 1, 2, 3]);
        let p = parse(&m, "p");
        assert!(modal_contraction_member(&m, &p, &parse(&m, "q")).unwrap());
        assert!(!modal_contraction_member(&m, &p, &p).unwrap());
    }
}
