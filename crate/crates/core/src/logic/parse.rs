//! Recursive-descent parser for Boolean and restricted modal formulas.
//!
//! Precedence from tightest to loosest: `~`/`!` (and the belief operator `B`
//! in modal text), `&`, `|`, `->` (right-associative), `<->`, and in modal
//! text the conditional `>` (right-associative).

use super::formula::Formula;
use super::Signature;
use crate::error::ParseError;
use crate::frame::modal::{ModalFormula, NestingError};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Not,
    And,
    Or,
    Implies,
    Iff,
    Cond,
    LParen,
    RParen,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(name) => format!("`{name}`"),
            Tok::Not => "`~`".into(),
            Tok::And => "`&`".into(),
            Tok::Or => "`|`".into(),
            Tok::Implies => "`->`".into(),
            Tok::Iff => "`<->`".into(),
            Tok::Cond => "`>`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'~' | b'!' => Tok::Not,
            b'&' => Tok::And,
            b'|' => Tok::Or,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'>' => Tok::Cond,
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 1;
                Tok::Implies
            }
            b'<' if bytes.get(i + 1) == Some(&b'-') && bytes.get(i + 2) == Some(&b'>') => {
                i += 2;
                Tok::Iff
            }
            c if c.is_ascii_alphabetic() => {
                while i + 1 < bytes.len() && (bytes[i + 1].is_ascii_alphanumeric() || bytes[i + 1] == b'_') {
                    i += 1;
                }
                Tok::Ident(text[start..=i].to_string())
            }
            _ => {
                let found = text[start..].chars().next().map(|ch| format!("`{ch}`")).unwrap_or_default();
                return Err(ParseError::Syntax { offset: start, expected: "a formula token".into(), found });
            }
        };
        i += 1;
        out.push((start, tok));
    }
    Ok(out)
}

/// Intermediate tree covering both languages; narrowed after parsing.
#[derive(Debug, Clone)]
pub(crate) enum Expr {
    Atom(usize),
    Not(Box<Expr>),
    And(Box<Expr>, Box<Expr>),
    Or(Box<Expr>, Box<Expr>),
    Implies(Box<Expr>, Box<Expr>),
    Iff(Box<Expr>, Box<Expr>),
    Cond(Box<Expr>, Box<Expr>),
    Believe(Box<Expr>),
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    sig: &'a Signature,
    modal: bool,
}

const OPERAND: &str = "an atom, `~`, or `(`";

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(o, _)| *o).unwrap_or(self.end)
    }

    fn error(&self, expected: &str) -> ParseError {
        ParseError::Syntax {
            offset: self.offset(),
            expected: expected.into(),
            found: self.peek().map(Tok::describe).unwrap_or_else(|| "end of input".into()),
        }
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn top(&mut self) -> Result<Expr, ParseError> {
        if self.modal {
            self.cond()
        } else {
            self.iff()
        }
    }

    fn cond(&mut self) -> Result<Expr, ParseError> {
        let lhs = self.iff()?;
        if self.eat(&Tok::Cond) {
            let rhs = self.cond()?;
            return Ok(Expr::Cond(Box::new(lhs), Box::new(rhs)));
        }
        Ok(lhs)
    }

    fn iff(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.implies()?;
        while self.eat(&Tok::Iff) {
            let rhs = self.implies()?;
            lhs = Expr::Iff(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn implies(&mut self) -> Result<Expr, ParseError> {
        let lhs = self.or()?;
        if self.eat(&Tok::Implies) {
            let rhs = self.implies()?;
            return Ok(Expr::Implies(Box::new(lhs), Box::new(rhs)));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.and()?;
        while self.eat(&Tok::Or) {
            let rhs = self.and()?;
            lhs = Expr::Or(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        while self.eat(&Tok::And) {
            let rhs = self.unary()?;
            lhs = Expr::And(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some(Tok::Not) => {
                self.pos += 1;
                Ok(Expr::Not(Box::new(self.unary()?)))
            }
            Some(Tok::Ident(name)) if self.modal && name == "B" => {
                self.pos += 1;
                Ok(Expr::Believe(Box::new(self.unary()?)))
            }
            Some(Tok::Ident(name)) => {
                let name = name.clone();
                let offset = self.offset();
                let idx = self.sig.index_of(&name).ok_or(ParseError::UnknownAtom { name, offset })?;
                self.pos += 1;
                Ok(Expr::Atom(idx))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.top()?;
                if !self.eat(&Tok::RParen) {
                    return Err(self.error("`)`"));
                }
                Ok(inner)
            }
            _ => Err(self.error(OPERAND)),
        }
    }
}

fn parse_expr(text: &str, sig: &Signature, modal: bool) -> Result<Expr, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, end: text.len(), sig, modal };
    let expr = p.top()?;
    if p.pos < p.toks.len() {
        return Err(p.error("an operator or end of input"));
    }
    Ok(expr)
}

fn to_boolean(e: Expr) -> Result<Formula, Expr> {
    let bin =
        |a: Box<Expr>, b: Box<Expr>| -> Result<(Formula, Formula), Expr> { Ok((to_boolean(*a)?, to_boolean(*b)?)) };
    Ok(match e {
        Expr::Atom(i) => Formula::Atom(i),
        Expr::Not(a) => Formula::not(to_boolean(*a)?),
        Expr::And(a, b) => bin(a, b).map(|(a, b)| Formula::and(a, b))?,
        Expr::Or(a, b) => bin(a, b).map(|(a, b)| Formula::or(a, b))?,
        Expr::Implies(a, b) => bin(a, b).map(|(a, b)| Formula::implies(a, b))?,
        Expr::Iff(a, b) => bin(a, b).map(|(a, b)| Formula::iff(a, b))?,
        other => return Err(other),
    })
}

/// Parses a Boolean formula over `sig`.
pub fn parse_formula(text: &str, sig: &Signature) -> Result<Formula, ParseError> {
    let expr = parse_expr(text, sig, false)?;
    // the Boolean lexer never yields modal nodes
    Ok(to_boolean(expr).expect("boolean parse produced modal node"))
}

/// Parses a formula of the restricted modal language: conditionals only
/// between Boolean formulas, `B` only over formulas without `B`.
pub fn parse_modal(text: &str, sig: &Signature) -> Result<ModalFormula, crate::Error> {
    let expr = parse_expr(text, sig, true)?;
    Ok(narrow_modal(expr)?)
}

pub(crate) fn narrow_modal(e: Expr) -> Result<ModalFormula, NestingError> {
    use ModalFormula as M;
    let bin =
        |a: Box<Expr>, b: Box<Expr>| -> Result<(M, M), NestingError> { Ok((narrow_modal(*a)?, narrow_modal(*b)?)) };
    let f = match e {
        Expr::Atom(i) => M::Atom(i),
        Expr::Not(a) => M::Not(Box::new(narrow_modal(*a)?)),
        Expr::And(a, b) => bin(a, b).map(|(a, b)| M::And(Box::new(a), Box::new(b)))?,
        Expr::Or(a, b) => bin(a, b).map(|(a, b)| M::Or(Box::new(a), Box::new(b)))?,
        Expr::Implies(a, b) => bin(a, b).map(|(a, b)| M::Implies(Box::new(a), Box::new(b)))?,
        Expr::Iff(a, b) => bin(a, b).map(|(a, b)| M::Iff(Box::new(a), Box::new(b)))?,
        Expr::Cond(a, b) => {
            let a = to_boolean(*a).map_err(|_| NestingError::ConditionalAntecedent)?;
            let b = to_boolean(*b).map_err(|_| NestingError::ConditionalConsequent)?;
            M::Cond(a, b)
        }
        Expr::Believe(a) => {
            let inner = narrow_modal(*a)?;
            if inner.has_belief() {
                return Err(NestingError::NestedBelief);
            }
            M::Believe(Box::new(inner))
        }
    };
    Ok(f)
}
