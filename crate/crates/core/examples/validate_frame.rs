// Loads model files and validates the selection-function clauses.

use std::path::Path;

use belief_contraction::frame::{load_model, validate_frame};

pub fn run_example() -> String {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let mut out = String::new();
    for name in ["pq.model", "drop4b.model", "drop4c.model", "drop4c_only.model", "drop4d.model"] {
        let m = load_model(&dir.join(name)).expect("fixture loads");
        let report = validate_frame(&m).expect("tables are total");
        let clauses: Vec<&str> = report.clauses().iter().map(|c| c.id()).collect();
        out += &format!("{name:<18} {}\n", if clauses.is_empty() { "pass".into() } else { clauses.join(" ") });
        for v in &report.violations {
            if let Some(e) = &v.event {
                out += &format!("  {} at {} with E = {}\n", v.clause, m.id(v.state), m.show_states(e));
            }
        }
    }
    out
}

fn main() {
    print!("{}", run_example());
}
