use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use mcalc::matrix::equal_up_to_phase;
use mcalc::random::{circuit_pattern, circuit_unitary, random_gates, wild_pattern};
use mcalc::{dsl, rewrite, sim, OutcomeMap, Pattern, QubitId, Signal};

const TOL: f64 = 1e-9;

fn wild(seed: u64, n: usize) -> Pattern {
    wild_pattern(&mut ChaCha8Rng::seed_from_u64(seed), n)
}

fn circuit(seed: u64, wires: usize, gates: usize) -> (Pattern, mcalc::Matrix) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gates = random_gates(&mut rng, wires, gates);
    let inputs: Vec<QubitId> = (1..=wires as u32).map(QubitId::index).collect();
    (circuit_pattern(&inputs, 100, &gates), circuit_unitary(wires, &gates))
}

fn signal_strategy() -> impl Strategy<Value = Signal> {
    (any::<bool>(), prop::collection::btree_set(1u32..8, 0..5)).prop_map(|(c, qs)| Signal::sum(c, qs))
}

fn outcomes_strategy() -> impl Strategy<Value = OutcomeMap> {
    prop::collection::vec(any::<bool>(), 7).prop_map(|bits| {
        bits.into_iter()
            .enumerate()
            .map(|(k, b)| (QubitId::index(k as u32 + 1), b))
            .collect()
    })
}

fn dependencies(p: &Pattern) -> BTreeSet<QubitId> {
    p.commands()
        .iter()
        .flat_map(|c| c.dependencies().into_iter().cloned())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn signal_sum_is_a_group(a in signal_strategy(), b in signal_strategy(), c in signal_strategy()) {
        prop_assert_eq!(a.clone() + &b, b.clone() + &a);
        prop_assert_eq!((a.clone() + &b) + &c, a.clone() + &(b.clone() + &c));
        prop_assert!((a.clone() + &a).is_zero());
        prop_assert_eq!(a.clone() + &Signal::zero(), a);
    }

    #[test]
    fn signal_evaluation_is_additive(a in signal_strategy(), b in signal_strategy(), g in outcomes_strategy()) {
        let sum = (a.clone() + &b).eval(&g).unwrap();
        prop_assert_eq!(sum, a.eval(&g).unwrap() ^ b.eval(&g).unwrap());
    }

    #[test]
    fn substitution_adds_when_present(s in signal_strategy(), t in signal_strategy(), i in 1u32..8, g in outcomes_strategy()) {
        let q = QubitId::index(i);
        let sub = s.substitute(&q, &t);
        // evaluating after the substitution equals evaluating with s_i shifted by t
        let mut shifted = g.clone();
        let flip = t.eval(&g).unwrap();
        *shifted.get_mut(&q).unwrap() ^= flip;
        prop_assert_eq!(sub.eval(&g).unwrap(), s.eval(&shifted).unwrap());
        if !s.contains(&q) {
            prop_assert_eq!(sub, s);
        }
    }

    #[test]
    fn standardization_is_emc_idempotent_and_replays(seed in any::<u64>(), n in 1usize..60) {
        let p = wild(seed, n);
        let (s, trace) = rewrite::standardize(&p).unwrap();
        prop_assert!(s.is_emc());
        prop_assert!(s.validate().is_runnable());
        prop_assert!(rewrite::applicable_redexes(&s, rewrite::Mode::Core).is_empty());
        prop_assert_eq!(rewrite::replay(&p, &trace).unwrap(), s.clone());
        prop_assert!(trace.len() <= 4 * n * n);
        let (again, more) = rewrite::standardize(&s).unwrap();
        prop_assert_eq!(again, s);
        prop_assert!(more.is_empty());
    }

    #[test]
    fn every_step_keeps_the_pattern_runnable(seed in any::<u64>(), n in 1usize..30) {
        let p = wild(seed, n);
        let (_, trace) = rewrite::standardize(&p).unwrap();
        let mut current = p.clone();
        for step in &trace {
            current = rewrite::apply_rule(&current, step.rule, step.position).unwrap();
            prop_assert!(current.validate().is_runnable(), "after {}", step);
        }
    }

    #[test]
    fn weighted_measure_decreases(seed in any::<u64>(), n in 1usize..80) {
        let p = wild(seed, n);
        let (_, trace) = rewrite::standardize(&p).unwrap();
        let mut current = p.commands().to_vec();
        for step in &trace {
            let before = rewrite::weighted_measure(&current);
            current.splice(step.position..step.position + step.before.len(), step.after.iter().cloned());
            prop_assert!(rewrite::weighted_measure(&current) < before, "{}", step);
        }
    }

    #[test]
    fn any_redex_order_reaches_the_same_form(seed in any::<u64>(), n in 1usize..25, order in any::<u64>()) {
        let p = wild(seed, n);
        let (s, _) = rewrite::standardize(&p).unwrap();
        prop_assert_eq!(rewrite::random_order_standardize(&p, order).unwrap(), s);
    }

    #[test]
    fn standardization_adds_no_dependencies(seed in any::<u64>(), n in 1usize..60) {
        let p = wild(seed, n);
        let before = dependencies(&p);
        prop_assert!(dependencies(&rewrite::standardize(&p).unwrap().0).is_subset(&before));
        prop_assert!(dependencies(&rewrite::standardize_extended(&p).unwrap().0).is_subset(&before));
    }

    #[test]
    fn extended_form_has_plain_measurements_and_no_shifts(seed in any::<u64>(), n in 1usize..60) {
        let p = wild(seed, n);
        let (x, _) = rewrite::standardize_extended(&p).unwrap();
        prop_assert!(x.is_emc());
        for c in x.commands() {
            match c {
                mcalc::Command::M(m) => prop_assert!(m.t.is_zero()),
                mcalc::Command::S(..) => prop_assert!(false, "shift left in {}", mcalc::notation::sequence(x.commands())),
                _ => {}
            }
        }
    }

    #[test]
    fn documents_round_trip(seed in any::<u64>(), n in 1usize..60) {
        let p = wild(seed, n);
        let text = dsl::serialize("w", &p);
        prop_assert_eq!(dsl::parse(&text).unwrap(), p);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn standardization_preserves_the_unitary(seed in any::<u64>(), wires in 1usize..=2, gates in 1usize..=5) {
        let (p, u) = circuit(seed, wires, gates);
        let wild_u = sim::extract_unitary::<f64>(&p, TOL).unwrap();
        prop_assert!(equal_up_to_phase(&wild_u, &u, TOL));
        let (s, _) = rewrite::standardize(&p).unwrap();
        prop_assert!(equal_up_to_phase(&sim::extract_unitary::<f64>(&s, TOL).unwrap(), &u, TOL));
        let (x, _) = rewrite::standardize_extended(&p).unwrap();
        prop_assert!(equal_up_to_phase(&sim::extract_unitary::<f64>(&x, TOL).unwrap(), &u, TOL));
    }

    #[test]
    fn composition_is_associative(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let inputs: Vec<QubitId> = (1..=2).map(QubitId::index).collect();
        let p1 = circuit_pattern(&inputs, 10, &random_gates(&mut rng, 2, 2));
        let p2 = circuit_pattern(p1.outputs(), 20, &random_gates(&mut rng, 2, 2));
        let p3 = circuit_pattern(p2.outputs(), 30, &random_gates(&mut rng, 2, 2));
        let left = p3.compose(&p2).unwrap().compose(&p1).unwrap();
        let right = p3.compose(&p2.compose(&p1).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn renaming_keeps_the_unitary(seed in any::<u64>(), gates in 1usize..=4) {
        let (p, u) = circuit(seed, 2, gates);
        let map: BTreeMap<QubitId, QubitId> = p
            .space()
            .iter()
            .map(|q| (q.clone(), QubitId::named(format!("r{q}"))))
            .collect();
        let renamed = p.rename(&map).unwrap();
        prop_assert!(equal_up_to_phase(&sim::extract_unitary::<f64>(&renamed, TOL).unwrap(), &u, TOL));
    }

    #[test]
    fn branch_probabilities_sum_to_one(seed in any::<u64>(), gates in 1usize..=5) {
        let (p, _) = circuit(seed, 2, gates);
        for psi in sim::probe_states::<f64>(2) {
            let total: f64 = sim::run_all_branches(&p, &psi).unwrap().iter().map(|b| b.probability).sum();
            prop_assert!((total - 1.0).abs() < 1e-9);
        }
    }
}
