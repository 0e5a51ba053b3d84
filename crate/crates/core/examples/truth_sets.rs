// Parsing formulas, truth sets, closure membership and DNF synthesis.

use belief_contraction::bits::Event;
use belief_contraction::logic::{
    cn_member, expand_theory, is_tautology, synthesize_formula, truth_set, Signature, Theory,
};

pub fn run_example() -> String {
    let sig = Signature::new(["p", "q"]).expect("valid atoms");
    let mut out = String::new();
    for text in ["p & q", "p | ~p", "p <-> q", "((p -> q) & p) -> q"] {
        let f = sig.parse(text).expect("well-formed");
        out += &format!("{text:<22} worlds {:?} tautology {}\n", truth_set(&f, &sig).to_vec(), is_tautology(&f, &sig));
    }
    if let Err(e) = sig.parse("p && q") {
        out += &format!("p && q: {e}\n");
    }

    let k = Theory::from_worlds(Event::from_indices(4, [2, 3]));
    let p = sig.parse("p").expect("atom");
    out += &format!("p in Cn(q): {}\n", cn_member(&k, &p, &sig));
    out += &format!("Cn(q) + p: {:?}\n", expand_theory(&k, &p, &sig).worlds().to_vec());

    let e = Event::from_indices(4, [0, 3]);
    let f = synthesize_formula(&e, &sig);
    out += &format!("event {:?} -> {}\n", e.to_vec(), f.display(&sig));
    out
}

fn main() {
    print!("{}", run_example());
}
