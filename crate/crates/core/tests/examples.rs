//! Runs every shipped example and checks its key lines.

macro_rules! example {
    ($name:ident) => {
        #[allow(dead_code)]
        mod $name {
            include!(concat!("../examples/", stringify!($name), ".rs"));
        }
    };
}

example!(truth_sets);
example!(validate_frame);
example!(contraction);
example!(postulates);
example!(canonical_model);
example!(entrenchment);
example!(fuzz_frames);
example!(modal_truth);
example!(mutation_search);

#[test]
fn truth_sets_example() {
    let out = truth_sets::run_example();
    assert!(out.contains("p <-> q                worlds [0, 3] tautology false"));
    assert!(out.contains("p && q: syntax error at offset 3"));
    assert!(out.contains("event [0, 3] -> (~p & ~q) | (p & q)"));
}

#[test]
fn validate_frame_example() {
    let out = validate_frame::run_example();
    assert!(out.contains("pq.model           pass"));
    assert!(out.contains("drop4b.model       4b\n"));
    assert!(out.contains("drop4c_only.model  4c\n"));
    assert!(out.contains("drop4d.model       4d\n"));
}

#[test]
fn contraction_example() {
    let out = contraction::run_example();
    assert!(out.contains("K - p      [2, 3] (~p & q) | (p & q)"));
    assert!(out.contains("K * ~p     [2] (~p & q)"));
    assert!(out.contains("modal + ~p no member"));
}

#[test]
fn postulates_example() {
    let out = postulates::run_example();
    assert!(out.contains("K-3 phi [1, 3] psi [2, 3]"));
    assert!(out.contains("K-4 phi [3] psi [3]"));
}

#[test]
fn canonical_example() {
    assert_eq!(canonical_model::run_example(), "75/75 sphere systems round-trip\n");
}

#[test]
fn entrenchment_example() {
    let out = entrenchment::run_example();
    assert!(out.contains("p < q: true"));
    assert!(out.contains("round trip exact: true"));
}

#[test]
fn fuzz_example() {
    let out = fuzz_frames::run_example();
    assert_eq!(out.matches("clauses [], failed postulates []").count(), 5);
    assert_eq!(out.matches("\"K-3\"").count(), 5);
}

#[test]
fn modal_truth_example() {
    let out = modal_truth::run_example();
    assert!(out.contains("B(~p > q)      true"));
    assert!(out.contains("(p > q) > p    rejected"));
}

#[test]
fn mutation_search_example_matches_frozen_fixture() {
    let out = mutation_search::run_example();
    let (head, model) = out.split_once('\n').unwrap();
    assert!(head.starts_with("seed 2: clauses [\"4d\"]"), "{head}");
    let frozen = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/drop4d_k7.model")).unwrap();
    assert_eq!(model, frozen);
}
