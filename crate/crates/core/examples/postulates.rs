// Checks the eight postulates on a model's contraction and on bad tables.

use std::path::Path;

use belief_contraction::agm::{check_postulates, load_table, table_from_model, Postulate};
use belief_contraction::frame::load_model;

pub fn run_example() -> String {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let mut out = String::new();
    let tables = [
        ("pq.model", table_from_model(&load_model(&dir.join("pq.model")).expect("loads")).expect("n <= 3")),
        ("drop4c.model", table_from_model(&load_model(&dir.join("drop4c.model")).expect("loads")).expect("n <= 3")),
        ("identity.table", load_table(&dir.join("identity.table")).expect("loads")),
    ];
    for (name, table) in tables {
        let report = check_postulates(&table).expect("total");
        out += &format!("{name:<15}");
        for p in Postulate::ALL {
            out += &format!(" {p}:{}", report.verdict(p).id());
        }
        out += "\n";
        for cx in &report.counterexamples {
            out += &format!("  {} phi {:?} psi {:?}\n", cx.postulate, cx.phi.to_vec(), cx.psi.to_vec());
        }
    }
    out
}

fn main() {
    print!("{}", run_example());
}
