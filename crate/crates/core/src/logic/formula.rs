use std::fmt;

use super::Signature;

/// A Boolean formula over the atoms of a [`Signature`], atoms held by index.
///
/// `And`, `Implies` and `Iff` are kept as nodes so formulas print the way
/// they were written; [`Formula::to_primitive`] rewrites them into `~`/`|`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Atom(usize),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(i: usize) -> Self {
        Formula::Atom(i)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Self {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    /// Evaluates under valuation `v`, where atom `i` is bit `i` of `v`.
    pub fn eval(&self, v: usize) -> bool {
        match self {
            Formula::Atom(i) => (v >> i) & 1 == 1,
            Formula::Not(a) => !a.eval(v),
            Formula::And(a, b) => a.eval(v) && b.eval(v),
            Formula::Or(a, b) => a.eval(v) || b.eval(v),
            Formula::Implies(a, b) => !a.eval(v) || b.eval(v),
            Formula::Iff(a, b) => a.eval(v) == b.eval(v),
        }
    }

    /// Rewrites derived connectives in terms of negation and disjunction.
    pub fn to_primitive(&self) -> Formula {
        match self {
            Formula::Atom(i) => Formula::Atom(*i),
            Formula::Not(a) => Formula::not(a.to_primitive()),
            Formula::Or(a, b) => Formula::or(a.to_primitive(), b.to_primitive()),
            // a & b == ~(~a | ~b)
            Formula::And(a, b) => {
                Formula::not(Formula::or(Formula::not(a.to_primitive()), Formula::not(b.to_primitive())))
            }
            Formula::Implies(a, b) => Formula::or(Formula::not(a.to_primitive()), b.to_primitive()),
            // a <-> b == (a -> b) & (b -> a)
            Formula::Iff(a, b) => {
                let (a, b) = (a.to_primitive(), b.to_primitive());
                let ab = Formula::or(Formula::not(a.clone()), b.clone());
                let ba = Formula::or(Formula::not(b), a);
                Formula::not(Formula::or(Formula::not(ab), Formula::not(ba)))
            }
        }
    }

    pub fn is_primitive(&self) -> bool {
        match self {
            Formula::Atom(_) => true,
            Formula::Not(a) => a.is_primitive(),
            Formula::Or(a, b) => a.is_primitive() && b.is_primitive(),
            _ => false,
        }
    }

    pub fn max_atom(&self) -> Option<usize> {
        match self {
            Formula::Atom(i) => Some(*i),
            Formula::Not(a) => a.max_atom(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.max_atom().max(b.max_atom())
            }
        }
    }

    /// Renders with atom names taken from `sig`.
    pub fn display<'a>(&'a self, sig: &'a Signature) -> FormulaDisplay<'a> {
        FormulaDisplay { formula: self, sig }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub(crate) enum BinOp {
    And,
    Or,
    Implies,
    Iff,
}

impl BinOp {
    pub(crate) fn symbol(self) -> &'static str {
        match self {
            BinOp::And => "&",
            BinOp::Or => "|",
            BinOp::Implies => "->",
            BinOp::Iff => "<->",
        }
    }

    fn right_assoc(self) -> bool {
        matches!(self, BinOp::Implies)
    }
}

fn split(f: &Formula) -> Option<(BinOp, &Formula, &Formula)> {
    match f {
        Formula::And(a, b) => Some((BinOp::And, a, b)),
        Formula::Or(a, b) => Some((BinOp::Or, a, b)),
        Formula::Implies(a, b) => Some((BinOp::Implies, a, b)),
        Formula::Iff(a, b) => Some((BinOp::Iff, a, b)),
        _ => None,
    }
}

pub struct FormulaDisplay<'a> {
    formula: &'a Formula,
    sig: &'a Signature,
}

impl FormulaDisplay<'_> {
    // Binary children are parenthesized unless they continue a chain of
    // the same operator on its associative side.
    fn write_child(&self, f: &mut fmt::Formatter<'_>, child: &Formula, parent: BinOp, left: bool) -> fmt::Result {
        match split(child) {
            Some((op, _, _)) if !(op == parent && left != parent.right_assoc()) => {
                f.write_str("(")?;
                self.write(f, child)?;
                f.write_str(")")
            }
            _ => self.write(f, child),
        }
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, node: &Formula) -> fmt::Result {
        match node {
            Formula::Atom(i) => f.write_str(self.sig.atom_name(*i)),
            Formula::Not(a) => {
                f.write_str("~")?;
                if split(a).is_some() {
                    f.write_str("(")?;
                    self.write(f, a)?;
                    f.write_str(")")
                } else {
                    self.write(f, a)
                }
            }
            _ => {
                let (op, a, b) = split(node).expect("binary node");
                self.write_child(f, a, op, true)?;
                write!(f, " {} ", op.symbol())?;
                self.write_child(f, b, op, false)
            }
        }
    }
}

impl fmt::Display for FormulaDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, self.formula)
    }
}
