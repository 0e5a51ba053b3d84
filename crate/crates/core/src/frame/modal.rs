//! The restricted modal language and its truth conditions.
//!
//! Formulas are Boolean combinations of atoms, conditionals `a > b` between
//! Boolean formulas, and belief `B x` where `x` itself contains no belief
//! operator.

use std::fmt;

use thiserror::Error;

use super::PointedModel;
use crate::error::Result;
use crate::logic::{Formula, Signature};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum NestingError {
    #[error("the antecedent of a conditional must be Boolean")]
    ConditionalAntecedent,
    #[error("the consequent of a conditional must be Boolean")]
    ConditionalConsequent,
    #[error("belief may not be nested inside belief")]
    NestedBelief,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModalFormula {
    Atom(usize),
    Not(Box<ModalFormula>),
    And(Box<ModalFormula>, Box<ModalFormula>),
    Or(Box<ModalFormula>, Box<ModalFormula>),
    Implies(Box<ModalFormula>, Box<ModalFormula>),
    Iff(Box<ModalFormula>, Box<ModalFormula>),
    Cond(Formula, Formula),
    Believe(Box<ModalFormula>),
}

impl ModalFormula {
    pub fn boolean(f: &Formula) -> Self {
        use ModalFormula as M;
        let b = |x: &Formula| Box::new(M::boolean(x));
        match f {
            Formula::Atom(i) => M::Atom(*i),
            Formula::Not(a) => M::Not(b(a)),
            Formula::And(x, y) => M::And(b(x), b(y)),
            Formula::Or(x, y) => M::Or(b(x), b(y)),
            Formula::Implies(x, y) => M::Implies(b(x), b(y)),
            Formula::Iff(x, y) => M::Iff(b(x), b(y)),
        }
    }

    pub fn cond(antecedent: Formula, consequent: Formula) -> Self {
        ModalFormula::Cond(antecedent, consequent)
    }

    pub fn believe(inner: ModalFormula) -> std::result::Result<Self, NestingError> {
        if inner.has_belief() {
            return Err(NestingError::NestedBelief);
        }
        Ok(ModalFormula::Believe(Box::new(inner)))
    }

    pub fn and(a: ModalFormula, b: ModalFormula) -> Self {
        ModalFormula::And(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: ModalFormula) -> Self {
        ModalFormula::Not(Box::new(a))
    }

    pub fn has_belief(&self) -> bool {
        use ModalFormula as M;
        match self {
            M::Atom(_) | M::Cond(..) => false,
            M::Believe(_) => true,
            M::Not(a) => a.has_belief(),
            M::And(a, b) | M::Or(a, b) | M::Implies(a, b) | M::Iff(a, b) => a.has_belief() || b.has_belief(),
        }
    }

    /// Checks membership in the restricted language. The enum is public, so
    /// a hand-built tree may nest belief.
    pub fn check_restricted(&self) -> std::result::Result<(), NestingError> {
        use ModalFormula as M;
        match self {
            M::Atom(_) | M::Cond(..) => Ok(()),
            M::Believe(a) if a.has_belief() => Err(NestingError::NestedBelief),
            M::Believe(a) | M::Not(a) => a.check_restricted(),
            M::And(a, b) | M::Or(a, b) | M::Implies(a, b) | M::Iff(a, b) => {
                a.check_restricted()?;
                b.check_restricted()
            }
        }
    }

    pub fn display<'a>(&'a self, sig: &'a Signature) -> impl fmt::Display + 'a {
        ModalDisplay { f: self, sig }
    }
}

struct ModalDisplay<'a> {
    f: &'a ModalFormula,
    sig: &'a Signature,
}

impl<'a> fmt::Display for ModalDisplay<'a> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ModalFormula as M;
        let sub = |x: &'a ModalFormula| ModalDisplay { f: x, sig: self.sig };
        match self.f {
            M::Atom(i) => out.write_str(self.sig.atom_name(*i)),
            M::Not(a) => write!(out, "~({})", sub(a)),
            M::And(a, b) => write!(out, "({}) & ({})", sub(a), sub(b)),
            M::Or(a, b) => write!(out, "({}) | ({})", sub(a), sub(b)),
            M::Implies(a, b) => write!(out, "({}) -> ({})", sub(a), sub(b)),
            M::Iff(a, b) => write!(out, "({}) <-> ({})", sub(a), sub(b)),
            M::Cond(a, b) => write!(out, "({}) > ({})", a.display(self.sig), b.display(self.sig)),
            M::Believe(a) => write!(out, "B({})", sub(a)),
        }
    }
}

/// Truth of `f` at state `s`.
///
/// `a > b` holds at `s` when `∥a∥` is empty or `f(s, ∥a∥) ⊆ ∥b∥`, truth sets
/// taken over the model's states; `B x` holds at `s` when `x` holds at every
/// state of `B(s)`.
pub fn eval_extended(m: &PointedModel, s: usize, f: &ModalFormula) -> Result<bool> {
    f.check_restricted()?;
    eval(m, s, f)
}

fn eval(m: &PointedModel, s: usize, f: &ModalFormula) -> Result<bool> {
    use ModalFormula as M;
    Ok(match f {
        M::Atom(i) => (m.valuation(s) >> i) & 1 == 1,
        M::Not(a) => !eval(m, s, a)?,
        M::And(a, b) => eval(m, s, a)? && eval(m, s, b)?,
        M::Or(a, b) => eval(m, s, a)? || eval(m, s, b)?,
        M::Implies(a, b) => !eval(m, s, a)? || eval(m, s, b)?,
        M::Iff(a, b) => eval(m, s, a)? == eval(m, s, b)?,
        M::Cond(a, b) => {
            let antecedent = m.states_satisfying(a);
            if antecedent.is_empty() {
                true
            } else {
                m.select_extended(s, &antecedent)?.is_subset(&m.states_satisfying(b))
            }
        }
        M::Believe(a) => {
            for t in m.belief(s).iter() {
                if !eval(m, t, a)? {
                    return Ok(false);
                }
            }
            true
        }
    })
}
