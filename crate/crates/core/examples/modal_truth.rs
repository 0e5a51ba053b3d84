// Evaluates belief and conditional formulas at the actual state.

use std::path::Path;

use belief_contraction::frame::{eval_extended, load_model};
use belief_contraction::logic::parse_modal;

pub fn run_example() -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/pq.model");
    let m = load_model(&path).expect("fixture loads");
    let mut out = String::new();
    for text in ["B q", "B(~p > q)", "B(~p > p)", "q & (~q > p)", "(p > q) > p", "B B p"] {
        match parse_modal(text, m.signature()) {
            Ok(f) => {
                let value = eval_extended(&m, m.actual(), &f).expect("bridge present");
                out += &format!("{text:<14} {value}\n");
            }
            Err(e) => out += &format!("{text:<14} rejected: {e}\n"),
        }
    }
    out
}

fn main() {
    print!("{}", run_example());
}
