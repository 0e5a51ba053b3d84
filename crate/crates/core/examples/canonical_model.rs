// Builds the canonical model of every two-atom sphere system and checks
// that its contraction reproduces the table.

use belief_contraction::canonical::{all_sphere_systems, build_canonical, verify_roundtrip};
use belief_contraction::logic::Signature;

pub fn run_example() -> String {
    let sig = Signature::new(["p", "q"]).expect("valid atoms");
    let systems = all_sphere_systems(&sig).expect("two atoms");
    let mut passed = 0;
    for s in &systems {
        let table = s.to_table().expect("two atoms");
        let m = build_canonical(&table).expect("sphere tables are AGM");
        if verify_roundtrip(&m, &table).expect("same signature").passed() {
            passed += 1;
        }
    }
    format!("{passed}/{} sphere systems round-trip\n", systems.len())
}

fn main() {
    print!("{}", run_example());
}
