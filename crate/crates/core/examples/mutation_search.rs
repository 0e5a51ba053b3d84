// Searches 4d-perturbed frames for one whose contraction breaks (K-7).

use belief_contraction::agm::find_k7_counterexample;
use belief_contraction::frame::{model_to_json, validate_frame};

pub fn run_example() -> String {
    let hit = find_k7_counterexample(10_000).expect("search runs").expect("a (K-7) counterexample within 10^4 seeds");
    let report = validate_frame(&hit.model).expect("explicit table is total");
    let cx = &hit.counterexample;
    let mut out = format!(
        "seed {}: clauses {:?}, K-7 fails at phi {:?}, psi {:?}\n",
        hit.seed,
        report.clauses().iter().map(|c| c.id()).collect::<Vec<_>>(),
        cx.phi.to_vec(),
        cx.psi.to_vec()
    );
    out.push_str(&model_to_json(&hit.model));
    out
}

fn main() {
    print!("{}", run_example());
}
