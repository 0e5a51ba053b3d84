// Contraction, revision and both kinds of expansion on a four-state model.

use std::path::Path;

use belief_contraction::contraction::{
    belief_set, contract_full, contract_partial, expand_modal, revise, ModalExpansion,
};
use belief_contraction::frame::load_model;
use belief_contraction::logic::{expand_theory, Theory};
use belief_contraction::Error;

pub fn run_example() -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/pq.model");
    let m = load_model(&path).expect("fixture loads");
    let sig = m.signature();
    let show = |t: &Theory| format!("{:?} {}", t.worlds().to_vec(), t.dnf(sig));
    let f = |text: &str| sig.parse(text).expect("well-formed");

    let k = belief_set(&m);
    let mut out = format!("K          {}\n", show(&k));
    out += &format!("K - p      {}\n", show(&contract_full(&m, &f("p")).expect("total")));
    match contract_partial(&m, &f("p | ~p")) {
        Err(Error::OutsidePartialDomain) => out += "K - T      outside the partial domain\n",
        other => out += &format!("K - T      unexpected {other:?}\n"),
    }
    out += &format!("K - T      {} (full)\n", show(&contract_full(&m, &f("p | ~p")).expect("total")));
    out += &format!("K * ~p     {}\n", show(&revise(&m, &f("~p")).expect("total")));
    out += &format!("Cn(K + ~p) {}\n", show(&expand_theory(&k, &f("~p"), sig)));
    match expand_modal(&m, &f("~p")) {
        ModalExpansion::Theory(t) => out += &format!("modal + ~p {}\n", show(&t)),
        ModalExpansion::AllFalse => out += "modal + ~p no member\n",
    }
    out
}

fn main() {
    print!("{}", run_example());
}
