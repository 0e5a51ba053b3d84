use belief_contraction::agm::{check_postulates, table_from_model, ContractionTable};
use belief_contraction::bits::{Event, StateSet};
use belief_contraction::canonical::{build_canonical, random_sphere_system};
use belief_contraction::contraction::{belief_set, contract_event, contract_partial_event, modal_contraction_member};
use belief_contraction::entrenchment::entrenchment_from_contraction;
use belief_contraction::frame::{
    eval_extended, generate_frame, validate_frame, validate_sampled, FrameParams, ModalFormula, PointedModel,
};
use belief_contraction::logic::{expand_theory, synthesize_formula, truth_set, Formula, Signature, Theory};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn frame_strategy() -> impl Strategy<Value = PointedModel> {
    (1usize..=3, 1usize..=6, any::<bool>(), any::<bool>(), any::<u64>()).prop_map(
        |(atoms, states, per_state, dup, seed)| {
            let mut p = FrameParams::new(atoms, states);
            p.duplicate_valuations = dup || states > (1 << atoms);
            p.per_state_orders = per_state;
            generate_frame(&p, seed).unwrap()
        },
    )
}

fn formula_strategy(n: usize) -> impl Strategy<Value = Formula> {
    let leaf = (0..n).prop_map(Formula::atom);
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Formula::iff(a, b)),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn serial_models_have_consistent_belief_sets(m in frame_strategy()) {
        prop_assert!(belief_set(&m).is_consistent());
    }

    #[test]
    fn generated_frames_satisfy_every_postulate(m in frame_strategy()) {
        prop_assert!(validate_frame(&m).unwrap().passed());
        let report = check_postulates(&table_from_model(&m).unwrap()).unwrap();
        prop_assert!(report.passed(), "{:?}", report.counterexamples);
    }

    #[test]
    fn sampled_validation_agrees_on_valid_frames(m in frame_strategy(), seed in any::<u64>()) {
        prop_assert!(validate_sampled(&m, 200, seed).unwrap().passed());
    }

    #[test]
    fn boolean_truth_at_states_matches_valuation(m in frame_strategy(), f in formula_strategy(1)) {
        let mf = ModalFormula::boolean(&f);
        for s in 0..m.state_count() {
            prop_assert_eq!(eval_extended(&m, s, &mf).unwrap(), f.eval(m.valuation(s)));
        }
    }

    #[test]
    fn weak_centering_and_priority_on_valid_frames(m in frame_strategy(), mask in 1u64..64) {
        let n = m.state_count();
        let e = StateSet::from_mask(n, mask & ((1 << n) - 1));
        prop_assume!(!e.is_empty());
        let b = m.doxastic_states();
        for s in b.iter() {
            let sel = m.select(s, &e).unwrap();
            if e.contains(s) {
                prop_assert!(sel.contains(s));
            }
            if b.intersects(&e) {
                prop_assert!(sel.is_subset(b));
            }
        }
    }

    #[test]
    fn contraction_is_inclusive_and_recovers(m in frame_strategy(), raw in any::<u64>()) {
        let w = m.signature().world_count();
        let phi = Event::from_mask(w, raw & ((1 << w) - 1));
        let k = belief_set(&m);
        let kc = contract_event(&m, &phi).unwrap();
        prop_assert!(k.worlds().is_subset(kc.worlds()));
        if k.worlds().is_subset(&phi) {
            prop_assert_eq!(&kc.worlds().intersection(&phi), k.worlds());
        }
        let neg = phi.complement();
        prop_assert_eq!(kc.worlds(), &k.worlds().union(&kc.worlds().intersection(&neg)));
    }

    #[test]
    fn modal_and_set_contraction_agree(m in frame_strategy(), a in any::<u64>(), b in any::<u64>()) {
        let sig = m.signature().clone();
        let w = sig.world_count();
        let full = (1u64 << w) - 1;
        let (phi, psi) = (Event::from_mask(w, a & full), Event::from_mask(w, b & full));
        if let Ok(t) = contract_partial_event(&m, &phi) {
            let member = modal_contraction_member(&m, &synthesize_formula(&phi, &sig), &synthesize_formula(&psi, &sig)).unwrap();
            prop_assert_eq!(member, t.contains_event(&psi));
        }
    }

    #[test]
    fn expansion_intersects(raw in any::<u64>(), f in formula_strategy(3)) {
        let sig = Signature::numbered(3).unwrap();
        let a = Theory::from_worlds(Event::from_mask(8, raw & 0xff));
        let expanded = expand_theory(&a, &f, &sig);
        prop_assert_eq!(expanded.worlds(), &a.worlds().intersection(&truth_set(&f, &sig)));
    }

    #[test]
    fn sphere_tables_are_agm_and_canonical_is_uniform(seed in any::<u64>()) {
        let sig = Signature::numbered(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let table: ContractionTable = random_sphere_system(&sig, &mut rng).to_table().unwrap();
        prop_assert!(check_postulates(&table).unwrap().passed());
        let m = build_canonical(&table).unwrap();
        let believed: Vec<usize> = m.doxastic_states().iter().collect();
        for mask in 1u64..256 {
            let e = StateSet::from_mask(8, mask);
            let first = m.select(believed[0], &e).unwrap();
            for &s in &believed[1..] {
                prop_assert_eq!(&m.select(s, &e).unwrap(), &first);
            }
        }
    }

    #[test]
    fn entrenchment_respects_entailment(seed in any::<u64>(), a in 0u64..16, b in 0u64..16) {
        let sig = Signature::numbered(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let table = random_sphere_system(&sig, &mut rng).to_table().unwrap();
        let r = entrenchment_from_contraction(&table).unwrap();
        let (phi, psi) = (Event::from_mask(4, a), Event::from_mask(4, a | b));
        prop_assert!(r.le(&phi, &psi));
    }
}
