//! Finite propositional core.
//!
//! A signature of `n` atoms fixes the valuation space `W` of `2^n`
//! valuations; valuation `v` makes atom `i` true iff bit `i` of `v` is set.
//! A deductively closed set of formulas is represented by the set of
//! valuations satisfying all of its members, which over a finite signature
//! determines the set exactly.

mod formula;
mod parse;

pub use formula::{Formula, FormulaDisplay};
pub use parse::{parse_formula, parse_modal};

use std::fmt;

use crate::bits::Event;
use crate::error::SignatureError;

pub const MAX_ATOMS: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Signature {
    atoms: Vec<String>,
}

fn valid_atom_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic()) && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Signature {
    pub fn new<I, S>(atoms: I) -> Result<Self, SignatureError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let atoms: Vec<String> = atoms.into_iter().map(Into::into).collect();
        if atoms.is_empty() || atoms.len() > MAX_ATOMS {
            return Err(SignatureError::Size(atoms.len()));
        }
        for (i, name) in atoms.iter().enumerate() {
            if !valid_atom_name(name) {
                return Err(SignatureError::BadName(name.clone()));
            }
            if atoms[..i].contains(name) {
                return Err(SignatureError::Duplicate(name.clone()));
            }
        }
        Ok(Self { atoms })
    }

    /// Atoms `p0 .. p{n-1}`.
    pub fn numbered(n: usize) -> Result<Self, SignatureError> {
        Self::new((0..n).map(|i| format!("p{i}")))
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn atom_name(&self, i: usize) -> &str {
        &self.atoms[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.atoms.iter().position(|a| a == name)
    }

    /// `|W| = 2^n`.
    pub fn world_count(&self) -> usize {
        1 << self.atoms.len()
    }

    pub fn empty_event(&self) -> Event {
        Event::empty(self.world_count())
    }

    pub fn full_event(&self) -> Event {
        Event::full(self.world_count())
    }

    /// Valuations that make atom `i` true.
    pub fn atom_event(&self, i: usize) -> Event {
        let w = self.world_count();
        Event::from_indices(w, (0..w).filter(|v| (v >> i) & 1 == 1))
    }

    pub fn parse(&self, text: &str) -> Result<Formula, crate::error::ParseError> {
        parse_formula(text, self)
    }
}

/// `∥f∥` over the full valuation space.
pub fn truth_set(f: &Formula, sig: &Signature) -> Event {
    match f {
        Formula::Atom(i) => sig.atom_event(*i),
        Formula::Not(a) => truth_set(a, sig).complement(),
        Formula::And(a, b) => truth_set(a, sig).intersection(&truth_set(b, sig)),
        Formula::Or(a, b) => truth_set(a, sig).union(&truth_set(b, sig)),
        Formula::Implies(a, b) => truth_set(a, sig).complement().union(&truth_set(b, sig)),
        Formula::Iff(a, b) => {
            let (a, b) = (truth_set(a, sig), truth_set(b, sig));
            a.intersection(&b).union(&a.complement().intersection(&b.complement()))
        }
    }
}

pub fn is_tautology(f: &Formula, sig: &Signature) -> bool {
    truth_set(f, sig).is_full()
}

/// A deductively closed set of Boolean formulas, held as its set of models.
///
/// `ψ` is a member iff `worlds ⊆ ∥ψ∥`. Empty `worlds` is the inconsistent
/// theory containing every formula.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Theory {
    worlds: Event,
}

impl Theory {
    pub fn from_worlds(worlds: Event) -> Self {
        Self { worlds }
    }

    /// `Cn(∅)`: the tautologies.
    pub fn tautologies(sig: &Signature) -> Self {
        Self::from_worlds(sig.full_event())
    }

    pub fn inconsistent(sig: &Signature) -> Self {
        Self::from_worlds(sig.empty_event())
    }

    /// `Cn({f})`.
    pub fn generated_by(f: &Formula, sig: &Signature) -> Self {
        Self::from_worlds(truth_set(f, sig))
    }

    pub fn worlds(&self) -> &Event {
        &self.worlds
    }

    pub fn into_worlds(self) -> Event {
        self.worlds
    }

    pub fn is_consistent(&self) -> bool {
        !self.worlds.is_empty()
    }

    pub fn contains_event(&self, e: &Event) -> bool {
        self.worlds.is_subset(e)
    }

    /// Set-theoretic intersection of the two formula sets.
    pub fn meet(&self, other: &Theory) -> Theory {
        Theory::from_worlds(self.worlds.union(&other.worlds))
    }

    /// Canonical DNF of the strongest member.
    pub fn dnf(&self, sig: &Signature) -> String {
        dnf_text(&self.worlds, sig)
    }
}

/// `f ∈ t`.
pub fn cn_member(t: &Theory, f: &Formula, sig: &Signature) -> bool {
    t.contains_event(&truth_set(f, sig))
}

/// `Cn(t ∪ {f})`.
pub fn expand_theory(t: &Theory, f: &Formula, sig: &Signature) -> Theory {
    Theory::from_worlds(t.worlds.intersection(&truth_set(f, sig)))
}

fn minterm(v: usize, sig: &Signature) -> Formula {
    (0..sig.len())
        .map(|i| if (v >> i) & 1 == 1 { Formula::atom(i) } else { Formula::not(Formula::atom(i)) })
        .reduce(Formula::and)
        .expect("signature has at least one atom")
}

/// Full disjunctive normal form with truth set `e`: one minterm per valuation
/// in ascending index order, literals in atom order. The empty event maps to
/// `p & ~p` for the first atom `p`.
pub fn synthesize_formula(e: &Event, sig: &Signature) -> Formula {
    e.iter()
        .map(|v| minterm(v, sig))
        .reduce(Formula::or)
        .unwrap_or_else(|| Formula::and(Formula::atom(0), Formula::not(Formula::atom(0))))
}

/// Text of [`synthesize_formula`], every multi-literal term parenthesized.
pub fn dnf_text(e: &Event, sig: &Signature) -> String {
    let term = |v: usize| {
        let lits: Vec<String> = (0..sig.len())
            .map(|i| {
                let name = sig.atom_name(i);
                if (v >> i) & 1 == 1 {
                    name.to_string()
                } else {
                    format!("~{name}")
                }
            })
            .collect();
        if lits.len() == 1 {
            lits.into_iter().next().unwrap()
        } else {
            format!("({})", lits.join(" & "))
        }
    };
    if e.is_empty() {
        let p = sig.atom_name(0);
        return format!("({p} & ~{p})");
    }
    e.iter().map(term).collect::<Vec<_>>().join(" | ")
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cn{}", self.worlds)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pq() -> Signature {
        Signature::new(["p", "q"]).unwrap()
    }

    fn ev(sig: &Signature, idx: &[usize]) -> Event {
        Event::from_indices(sig.world_count(), idx.iter().copied())
    }

    fn ts(text: &str, sig: &Signature) -> Event {
        truth_set(&sig.parse(text).unwrap(), sig)
    }

    #[test]
    fn signature_validation() {
        assert!(Signature::new(Vec::<String>::new()).is_err());
        assert!(Signature::new(["p", "p"]).is_err());
        assert!(Signature::new(["1p"]).is_err());
        assert!(Signature::new(["p_1", "Q2"]).is_ok());
        assert!(Signature::numbered(16).is_ok());
        assert!(Signature::numbered(17).is_err());
    }

    #[test]
    fn truth_set_examples() {
        let s = pq();
        assert_eq!(ts("p & q", &s), ev(&s, &[3]));
        assert_eq!(ts("p | ~p", &s), ev(&s, &[0, 1, 2, 3]));
        // 0: p=0,q=0 -> T; 1: p=1,q=0 -> F; 2: p=0,q=1 -> F; 3 -> T
        assert_eq!(ts("p <-> q", &s), ev(&s, &[0, 3]));
    }

    #[test]
    fn tautology_examples() {
        let s = pq();
        let taut = |t: &str| is_tautology(&s.parse(t).unwrap(), &s);
        assert!(taut("p | ~p"));
        assert!(!taut("p"));
        assert!(taut("((p -> q) & p) -> q"));
    }

    #[test]
    fn membership_examples() {
        let s = pq();
        let member = |w: &[usize], t: &str| cn_member(&Theory::from_worlds(ev(&s, w)), &s.parse(t).unwrap(), &s);
        assert!(member(&[3], "p | q"));
        assert!(member(&[], "p & ~p"));
        assert!(!member(&[2, 3], "p"));
    }

    #[test]
    fn expansion_examples() {
        let s = pq();
        let expand = |w: &[usize], t: &str| {
            expand_theory(&Theory::from_worlds(ev(&s, w)), &s.parse(t).unwrap(), &s).into_worlds()
        };
        assert_eq!(expand(&[2, 3], "p"), ev(&s, &[3]));
        assert_eq!(expand(&[3], "p & q"), ev(&s, &[3]));
        assert_eq!(expand(&[3], "~p"), ev(&s, &[]));
    }

    #[test]
    fn synthesis_examples() {
        let s = pq();
        assert_eq!(dnf_text(&ev(&s, &[3]), &s), "(p & q)");
        assert_eq!(dnf_text(&ev(&s, &[]), &s), "(p & ~p)");
        assert_eq!(dnf_text(&ev(&s, &[0, 3]), &s), "(~p & ~q) | (p & q)");
        // the text parses back to the synthesized tree
        for mask in 0..16u64 {
            let e = Event::from_mask(4, mask);
            let f = synthesize_formula(&e, &s);
            assert_eq!(truth_set(&s.parse(&dnf_text(&e, &s)).unwrap(), &s), e);
            assert_eq!(truth_set(&f, &s), e);
        }
    }

    #[test]
    fn synthesis_round_trip_exhaustive_small() {
        for n in 1..=3 {
            let s = Signature::numbered(n).unwrap();
            let w = s.world_count();
            for mask in 0..(1u64 << w) {
                let e = Event::from_mask(w, mask);
                assert_eq!(truth_set(&synthesize_formula(&e, &s), &s), e);
            }
        }
    }

    #[test]
    fn wide_signature_truth_sets() {
        let s = Signature::numbered(16).unwrap();
        let f = s.parse("p15 & ~p0").unwrap();
        let e = truth_set(&f, &s);
        assert_eq!(e.count(), 1 << 14);
        assert!(e.contains(1 << 15));
        assert!(!e.contains((1 << 15) | 1));
    }

    fn arb_formula(n: usize) -> impl Strategy<Value = Formula> {
        let leaf = (0..n).prop_map(Formula::Atom);
        leaf.prop_recursive(5, 32, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(Formula::not),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
                (inner.clone(), inner).prop_map(|(a, b)| Formula::iff(a, b)),
            ]
        })
    }

    proptest! {
        #[test]
        fn display_parses_back_to_same_tree(f in arb_formula(3)) {
            let s = Signature::numbered(3).unwrap();
            let text = f.display(&s).to_string();
            prop_assert_eq!(s.parse(&text).unwrap(), f);
        }

        #[test]
        fn primitive_form_is_equivalent(f in arb_formula(3)) {
            let s = Signature::numbered(3).unwrap();
            let p = f.to_primitive();
            prop_assert!(p.is_primitive());
            prop_assert_eq!(truth_set(&p, &s), truth_set(&f, &s));
        }

        #[test]
        fn truth_set_agrees_with_pointwise_eval(f in arb_formula(3)) {
            let s = Signature::numbered(3).unwrap();
            let e = truth_set(&f, &s);
            for v in 0..8 {
                prop_assert_eq!(e.contains(v), f.eval(v));
            }
        }

        #[test]
        fn tautology_iff_member_of_cn_empty(f in arb_formula(3)) {
            let s = Signature::numbered(3).unwrap();
            prop_assert_eq!(is_tautology(&f, &s), cn_member(&Theory::tautologies(&s), &f, &s));
        }

        #[test]
        fn membership_is_antitone_in_worlds(a in any::<u8>(), b in any::<u8>(), f in arb_formula(3)) {
            let s = Signature::numbered(3).unwrap();
            let small = Theory::from_worlds(Event::from_mask(8, (a & b) as u64));
            let large = Theory::from_worlds(Event::from_mask(8, a as u64));
            if cn_member(&large, &f, &s) {
                prop_assert!(cn_member(&small, &f, &s));
            }
        }

        #[test]
        fn equivalent_formulas_share_truth_sets(f in arb_formula(3)) {
            let s = Signature::numbered(3).unwrap();
            let double_neg = Formula::not(Formula::not(f.clone()));
            let idem = Formula::and(f.clone(), f.clone());
            prop_assert_eq!(truth_set(&double_neg, &s), truth_set(&f, &s));
            prop_assert_eq!(truth_set(&idem, &s), truth_set(&f, &s));
        }
    }
}
