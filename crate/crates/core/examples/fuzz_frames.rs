// Generates seeded frames, with and without a dropped clause, and checks
// each one.

use belief_contraction::agm::{check_postulates, table_from_model};
use belief_contraction::frame::{generate_frame, validate_frame, Clause, FrameParams};

pub fn run_example() -> String {
    let mut out = String::new();
    for drop in [None, Some(Clause::C)] {
        let mut params = FrameParams::new(2, 4);
        params.drop_clause = drop;
        for seed in 0..5 {
            let m = generate_frame(&params, seed).expect("generation succeeds");
            let frame = validate_frame(&m).expect("total");
            let agm = check_postulates(&table_from_model(&m).expect("n <= 3")).expect("total");
            out += &format!(
                "drop {:<4} seed {seed}: clauses {:?}, failed postulates {:?}\n",
                drop.map_or("none", |c| c.id()),
                frame.clauses().iter().map(|c| c.id()).collect::<Vec<_>>(),
                agm.failed().iter().map(|p| p.id()).collect::<Vec<_>>()
            );
        }
    }
    out
}

fn main() {
    print!("{}", run_example());
}
