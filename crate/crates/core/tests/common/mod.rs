#![allow(dead_code)]

use didp::model::{bellman_oracle, Oracle, OracleMode, ValidationContext};
use didp::search::{solve, SolverKind, SolverParams, Status};
use didp::{Model, Number, State};
use std::collections::{HashSet, VecDeque};

pub const DEPTH: usize = 10_000;

pub fn oracle(model: &Model) -> Option<Number> {
    bellman_oracle(model, DEPTH).unwrap().cost
}

pub fn assert_valid(model: &Model) {
    let errors = model.validation_errors(&ValidationContext::default());
    assert!(errors.is_empty(), "validation errors: {:?}", errors);
}

/// States reachable from the target through the transitions a solver expands,
/// excluding those violating a state constraint. At most `limit` states.
pub fn reachable(model: &Model, limit: usize) -> Vec<State> {
    let mut seen = HashSet::new();
    let mut queue = VecDeque::from([model.target.clone()]);
    let mut out = Vec::new();
    seen.insert(model.target.clone());
    while let Some(s) = queue.pop_front() {
        if !model.check_constraints(&s).unwrap() {
            continue;
        }
        out.push(s.clone());
        if out.len() >= limit {
            break;
        }
        if model.base_cost(&s).unwrap().is_some() {
            continue;
        }
        for t in model.applicable_transitions(&s).unwrap() {
            let next = model.successor(&model.transitions[t], &s).unwrap();
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    out
}

/// Every dual bound is admissible at every reachable state.
pub fn assert_bounds_admissible(model: &Model, limit: usize) {
    let mut oracle = Oracle::new(model, OracleMode::All, DEPTH);
    for state in reachable(model, limit) {
        let Some(v) = oracle.value(&state).unwrap() else {
            continue;
        };
        for bound in &model.dual_bounds {
            let h = bound.eval(&state, &model.tables).unwrap();
            // a bound may be better than the optimum, never worse
            assert!(
                !model.cost.is_better(v, h),
                "bound {:?} is worse than the optimum {:?} at {}",
                h,
                v,
                state
            );
        }
    }
}

/// Restricting to forced transitions does not change the optimum.
pub fn assert_forced_sound(model: &Model) {
    let all = oracle(model);
    let forced = Oracle::new(model, OracleMode::Forced, DEPTH)
        .value(&model.target)
        .unwrap();
    assert_eq!(all, forced);
}

pub fn solve_with(model: &Model, solver: SolverKind, params: &SolverParams) -> didp::search::Solution {
    solve(model, solver, params).unwrap_or_else(|e| panic!("{} failed: {}", solver.name(), e))
}

/// Every solver proves the same optimum as the oracle.
pub fn assert_all_solvers(model: &Model, expected: Option<Number>) {
    for solver in SolverKind::ALL {
        let s = solve_with(model, solver, &SolverParams::default());
        assert_eq!(s.cost, expected, "{} cost", solver.name());
        let status = if expected.is_some() {
            Status::Optimal
        } else {
            Status::Infeasible
        };
        assert_eq!(s.status, status, "{} status", solver.name());
        if let Some(cost) = s.cost {
            assert_eq!(model.solution_cost(&s.transitions).unwrap(), Some(cost));
        }
    }
}

/// Validation, oracle value, forced soundness and all solvers at once.
pub fn check(model: &Model, expected: Option<i64>) {
    let expected = expected.map(Number::Int);
    assert_valid(model);
    assert_eq!(oracle(model), expected, "oracle");
    assert_forced_sound(model);
    assert_all_solvers(model, expected);
}
