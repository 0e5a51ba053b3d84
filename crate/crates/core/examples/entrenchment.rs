// Derives entrenchment from a sphere contraction and recovers the table.

use belief_contraction::bits::Event;
use belief_contraction::canonical::SphereSystem;
use belief_contraction::entrenchment::{contraction_from_entrenchment, entrenchment_from_contraction};
use belief_contraction::logic::Signature;

pub fn run_example() -> String {
    let sig = Signature::new(["p", "q"]).expect("valid atoms");
    let ev = |v: &[usize]| Event::from_indices(4, v.iter().copied());
    let spheres = SphereSystem::new(sig, vec![ev(&[3]), ev(&[2, 3]), ev(&[0, 1, 2, 3])]).expect("chain");
    let table = spheres.to_table().expect("two atoms");
    let r = entrenchment_from_contraction(&table).expect("AGM table");
    let (p, q) = (ev(&[1, 3]), ev(&[2, 3]));
    let back = contraction_from_entrenchment(&r).expect("well formed");
    format!(
        "p <= q: {}\nq <= p: {}\np < q: {}\nround trip exact: {}\n",
        r.le(&p, &q),
        r.le(&q, &p),
        r.lt(&p, &q),
        back == table
    )
}

fn main() {
    print!("{}", run_example());
}
