mod common;

use common::{assert_all_solvers, assert_bounds_admissible, assert_forced_sound, oracle};
use didp::benchmarks::{random, ProblemClass};
use didp::search::{SolverKind, SolverParams};
use proptest::prelude::*;

fn class() -> impl Strategy<Value = ProblemClass> {
    proptest::sample::select(ProblemClass::ALL.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn solvers_agree_with_oracle(class in class(), seed in any::<u64>()) {
        let model = random::tiny(class, seed).build().unwrap();
        assert_all_solvers(&model, oracle(&model));
    }

    #[test]
    fn dual_bounds_are_admissible(class in class(), seed in any::<u64>()) {
        let model = random::tiny(class, seed).build().unwrap();
        assert_bounds_admissible(&model, 2_000);
    }

    #[test]
    fn forced_transitions_are_sound(class in class(), seed in any::<u64>()) {
        let model = random::tiny(class, seed).build().unwrap();
        assert_forced_sound(&model);
    }

    #[test]
    fn dominance_is_sound(class in class(), seed in any::<u64>()) {
        let model = random::tiny(class, seed).build().unwrap();
        let params = SolverParams::default();
        let with = common::solve_with(&model, SolverKind::Caasdy, &params);
        let without = common::solve_with(&model.without_dominance(), SolverKind::Caasdy, &params);
        prop_assert_eq!(with.cost, without.cost);
    }

    #[test]
    fn random_paths_cost_what_the_fold_says(class in class(), seed in any::<u64>(), picks in proptest::collection::vec(any::<usize>(), 40)) {
        let model = random::tiny(class, seed).build().unwrap();
        // walk by arbitrary applicable transitions, folding weights right to left
        let mut state = model.target.clone();
        let mut path = Vec::new();
        let mut weights = Vec::new();
        for pick in picks {
            if model.base_cost(&state).unwrap().is_some() {
                break;
            }
            let applicable = model.applicable_transitions(&state).unwrap();
            if applicable.is_empty() {
                break;
            }
            let t = applicable[pick % applicable.len()];
            weights.push(model.weight(&model.transitions[t], &state).unwrap());
            state = model.successor(&model.transitions[t], &state).unwrap();
            path.push(t);
        }
        let expected = match model.base_cost(&state).unwrap() {
            Some(base) if model.check_constraints(&state).unwrap() => Some(
                weights.iter().rev().fold(base, |acc, &w| model.combine(w, acc).unwrap()),
            ),
            _ => None,
        };
        if let Some(cost) = expected {
            prop_assert_eq!(model.solution_cost(&path).unwrap(), Some(cost));
        }
    }
}
