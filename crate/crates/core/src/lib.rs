//! AGM belief contraction over finite propositional signatures.
//!
//! Beliefs live in a pointed model: a belief relation picks out the states
//! the agent considers possible, and a Stalnaker-Lewis selection function
//! picks the closest states satisfying a formula. Contracting by `φ` keeps
//! `ψ` exactly when `ψ` is believed and the closest `¬φ` states satisfy it.
//!
//! - [`logic`]: formulas, truth sets, theories as sets of valuations.
//! - [`frame`]: models, frame validation, modal truth, seeded generation.
//! - [`contraction`]: belief set, contraction, revision and expansion.
//! - [`agm`]: contraction tables and the postulate checker.
//! - [`canonical`]: sphere systems and the canonical model of a table.
//! - [`entrenchment`]: the bridges between entrenchment and contraction.
//! - [`cli`]: the `beliefc` command line.

pub mod agm;
pub mod bits;
pub mod canonical;
pub mod cli;
pub mod contraction;
pub mod entrenchment;
mod error;
pub mod frame;
mod json;
pub mod logic;

pub use error::{Error, ParseError, Result, SignatureError};
