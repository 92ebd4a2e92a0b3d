//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion
//! (straight to stdout, so the lines survive output capture) and fails if any
//! criterion fails.

mod common;

use didp::benchmarks::{build_tsptw, random, Instance, ProblemClass, TsptwInstance};
use didp::metrics::{optimality_gap, primal_integral};
use didp::search::{
    beam_search, solve, solve_with_progress, BoundMode, Event, Solution, SolverKind, SolverParams,
    Status,
};
use didp::{yaml, Direction, Model, Number};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::io::Write;

/// Randomized instances per problem class.
const SUITE: u64 = 100;
/// Random walks required to end in a base state.
const WALKS: usize = 1000;
/// Share of instances where an ablation must expand at least as much.
const ABLATION_SHARE: f64 = 0.9;

struct Case {
    class: ProblemClass,
    seed: u64,
    model: Model,
    optimum: Option<Number>,
}

fn suite() -> Vec<Case> {
    std::thread::scope(|s| {
        let handles: Vec<_> = ProblemClass::ALL
            .iter()
            .map(|&class| {
                s.spawn(move || {
                    (0..SUITE)
                        .map(|seed| {
                            let model = random::tiny(class, seed).build().unwrap();
                            let optimum = common::oracle(&model);
                            Case {
                                class,
                                seed,
                                model,
                                optimum,
                            }
                        })
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().unwrap()).collect()
    })
}

/// Runs `f` over the cases on one thread per class.
fn par_map<T: Send>(cases: &[Case], f: impl Fn(&Case) -> T + Sync) -> Vec<T> {
    let f = &f;
    std::thread::scope(|s| {
        let handles: Vec<_> = cases
            .chunks(SUITE as usize)
            .map(|chunk| s.spawn(move || chunk.iter().map(f).collect::<Vec<_>>()))
            .collect();
        handles.into_iter().flat_map(|h| h.join().unwrap()).collect()
    })
}

struct Run {
    solution: Solution,
    events: Vec<Event>,
}

fn run(model: &Model, solver: SolverKind, params: &SolverParams) -> Run {
    let mut events = Vec::new();
    let solution = solve_with_progress(model, solver, params, &mut |e| events.push(e.clone()))
        .unwrap_or_else(|e| panic!("{} failed: {}", solver, e));
    Run { solution, events }
}

/// The outcome of one criterion: failures, with a summary either way.
struct Outcome {
    failures: Vec<String>,
    summary: String,
}

impl Outcome {
    fn new(failures: Vec<String>, summary: impl Into<String>) -> Outcome {
        Outcome {
            failures,
            summary: summary.into(),
        }
    }
}

fn label(case: &Case) -> String {
    format!("{} seed {}", case.class, case.seed)
}

fn oracle_equivalence(cases: &[Case], runs: &[Vec<Run>]) -> Outcome {
    let mut failures = Vec::new();
    for (case, runs) in cases.iter().zip(runs) {
        for (solver, r) in SolverKind::ALL.iter().zip(runs) {
            let expected_status = if case.optimum.is_some() {
                Status::Optimal
            } else {
                Status::Infeasible
            };
            if r.solution.cost != case.optimum || r.solution.status != expected_status {
                failures.push(format!(
                    "{} {}: {:?}/{} vs oracle {:?}",
                    label(case),
                    solver,
                    r.solution.cost,
                    r.solution.status,
                    case.optimum
                ));
            }
        }
    }
    Outcome::new(
        failures,
        format!("{} instances x {} solvers", cases.len(), SolverKind::ALL.len()),
    )
}

fn caasdy_first_solution(cases: &[Case], runs: &[Vec<Run>]) -> Outcome {
    let classes = [
        ProblemClass::BinPacking,
        ProblemClass::Salbp1,
        ProblemClass::Wt,
        ProblemClass::Talent,
        ProblemClass::Mosp,
        ProblemClass::GraphClear,
    ];
    let caasdy = SolverKind::ALL.iter().position(|&k| k == SolverKind::Caasdy).unwrap();
    let mut failures = Vec::new();
    let mut checked = 0;
    for (case, runs) in cases.iter().zip(runs) {
        if !classes.contains(&case.class) {
            continue;
        }
        checked += 1;
        let s = &runs[caasdy].solution;
        if s.first_solution_cost != case.optimum {
            failures.push(format!(
                "{}: first {:?}, optimum {:?}",
                label(case),
                s.first_solution_cost,
                case.optimum
            ));
        }
    }
    Outcome::new(failures, format!("{} instances", checked))
}

fn dual_bound_validity(cases: &[Case], runs: &[Vec<Run>]) -> Outcome {
    let mut failures = Vec::new();
    let mut events = 0;
    for (case, runs) in cases.iter().zip(runs) {
        let Some(opt) = case.optimum else { continue };
        let cost = &case.model.cost;
        for (solver, r) in SolverKind::ALL.iter().zip(runs) {
            for e in &r.events {
                events += 1;
                let ok = match e {
                    Event::Primal { cost: c, .. } => !cost.is_better(*c, opt),
                    Event::Dual { bound, .. } => !cost.is_better(opt, *bound),
                };
                if !ok {
                    failures.push(format!("{} {}: {:?} vs optimum {}", label(case), solver, e, opt));
                }
            }
        }
    }
    Outcome::new(failures, format!("{} progress events", events))
}

fn anytime_contract(cases: &[Case], runs: &[Vec<Run>]) -> Outcome {
    let mut failures = Vec::new();
    for (case, runs) in cases.iter().zip(runs) {
        let cost = &case.model.cost;
        for (solver, r) in SolverKind::ALL.iter().zip(runs) {
            let mut primal: Option<Number> = None;
            let mut dual: Option<Number> = None;
            for e in &r.events {
                match e {
                    Event::Primal { cost: c, .. } => {
                        if primal.is_some_and(|p| !cost.is_better(*c, p)) {
                            failures.push(format!("{} {}: primal {} after {:?}", label(case), solver, c, primal));
                        }
                        primal = Some(*c);
                    }
                    Event::Dual { bound, .. } => {
                        if dual.is_some_and(|d| cost.is_better(*bound, d)) {
                            failures.push(format!("{} {}: dual {} after {:?}", label(case), solver, bound, dual));
                        }
                        dual = Some(*bound);
                    }
                }
            }
            let s = &r.solution;
            if s.status == Status::Optimal {
                let gap = optimality_gap(s.cost.map(Number::as_f64), s.bound.map(Number::as_f64));
                if gap != 0.0 {
                    failures.push(format!("{} {}: gap {} at termination", label(case), solver, gap));
                }
            }
        }
    }
    Outcome::new(failures, "event logs of every run")
}

fn beam_completeness() -> Outcome {
    let instance = TsptwInstance::new(
        vec![vec![0, 2, 3], vec![2, 0, 1], vec![3, 1, 0]],
        vec![0; 3],
        vec![10; 3],
    )
    .unwrap();
    let model = build_tsptw(&instance).unwrap();
    let width = common::reachable(&model, usize::MAX).len();
    let params = SolverParams::default();
    let mut failures = Vec::new();
    let (s, complete) = beam_search(&model, width, None, &params).unwrap();
    if !complete || s.cost != Some(Number::Int(6)) {
        failures.push(format!("width {}: complete {} cost {:?}", width, complete, s.cost));
    }
    let (s, complete) = beam_search(&model, width, Some(Number::Int(6)), &params).unwrap();
    if !complete || s.cost.is_some() || s.status != Status::Infeasible {
        failures.push(format!(
            "with primal bound 6: complete {} cost {:?} status {}",
            complete, s.cost, s.status
        ));
    }
    Outcome::new(failures, format!("desk TSPTW, width {} = reachable states", width))
}

fn pruning_ablations(cases: &[Case]) -> Outcome {
    let rows = par_map(cases, |case| {
        let full = solve(&case.model, SolverKind::Cabs, &SolverParams::default()).unwrap();
        let trivial = SolverParams {
            // zero is a valid bound only when minimizing nonnegative costs
            bound: match case.model.cost.direction {
                Direction::Minimize => BoundMode::Zero,
                Direction::Maximize => BoundMode::None,
            },
            ..SolverParams::default()
        };
        let zero = solve(&case.model, SolverKind::Cabs, &trivial).unwrap();
        let undominated = SolverParams {
            dominance: false,
            ..SolverParams::default()
        };
        let plain = solve(&case.model, SolverKind::Cabs, &undominated).unwrap();
        (full, zero, plain)
    });
    let mut failures = Vec::new();
    let (mut zero_more, mut plain_more) = (0, 0);
    for (case, (full, zero, plain)) in cases.iter().zip(&rows) {
        for (name, s) in [("zero bound", zero), ("no dominance", plain)] {
            if s.cost != case.optimum {
                failures.push(format!("{} {}: {:?} vs {:?}", label(case), name, s.cost, case.optimum));
            }
        }
        zero_more += usize::from(zero.statistics.expanded >= full.statistics.expanded);
        plain_more += usize::from(plain.statistics.expanded >= full.statistics.expanded);
    }
    let n = cases.len() as f64;
    let (zero_share, plain_share) = (zero_more as f64 / n, plain_more as f64 / n);
    for (name, share) in [("zero bound", zero_share), ("no dominance", plain_share)] {
        if share < ABLATION_SHARE {
            failures.push(format!("{} expands at least as much in only {:.1}%", name, 100.0 * share));
        }
    }
    Outcome::new(
        failures,
        format!(
            "expansions >= full: zero bound {:.1}%, no dominance {:.1}%",
            100.0 * zero_share,
            100.0 * plain_share
        ),
    )
}

fn yaml_round_trip() -> Outcome {
    let domain = include_str!("fixtures/tsptw/domain.yaml");
    let problem = include_str!("fixtures/tsptw/problem.yaml");
    let mut failures = Vec::new();
    let model = match yaml::load(domain, problem) {
        Ok(m) => m,
        Err(e) => return Outcome::new(vec![e.to_string()], "fixtures"),
    };
    if model.transitions.len() != 3 {
        failures.push(format!("{} ground transitions", model.transitions.len()));
    }
    let built = Instance::Tsptw(
        TsptwInstance::new(
            vec![
                vec![0, 3, 4, 5],
                vec![3, 0, 5, 4],
                vec![4, 5, 0, 3],
                vec![5, 4, 3, 0],
            ],
            vec![0, 5, 0, 8],
            vec![100, 16, 10, 14],
        )
        .unwrap(),
    )
    .build()
    .unwrap();
    let params = SolverParams::default();
    let a = solve(&model, SolverKind::Cabs, &params).unwrap();
    let b = solve(&model, SolverKind::Cabs, &params).unwrap();
    let reference = solve(&built, SolverKind::Cabs, &params).unwrap();
    if a.cost != reference.cost || a.cost.is_none() {
        failures.push(format!("cost {:?} vs builder {:?}", a.cost, reference.cost));
    }
    if yaml::write_solution(&a) != yaml::write_solution(&b) {
        failures.push("solution files differ between runs".into());
    }
    Outcome::new(failures, format!("3 ground transitions, cost {}", a.cost.map_or_else(|| "none".into(), |c| c.to_string())))
}

fn metrics_examples() -> Outcome {
    let mut failures = Vec::new();
    let gap = optimality_gap(Some(10.0), Some(5.0));
    if gap != 0.5 {
        failures.push(format!("gap(10, 5) = {}", gap));
    }
    let integral = primal_integral(&[(2.0, 10.0), (6.0, 5.0)], Some(5.0), 10.0, None).unwrap();
    if integral != 4.0 {
        failures.push(format!("integral = {}", integral));
    }
    Outcome::new(failures, "gap(10, 5) = 0.5, integral = 4")
}

fn path_cost_property(cases: &[Case]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut failures = Vec::new();
    let (mut walks, mut attempts) = (0, 0);
    while walks < WALKS && attempts < 50 * WALKS {
        attempts += 1;
        let case = &cases[rng.gen_range(0..cases.len())];
        let model = &case.model;
        let mut state = model.target.clone();
        let mut path = Vec::new();
        let mut weights = Vec::new();
        let base = loop {
            if !model.check_constraints(&state).unwrap() {
                break None;
            }
            if let Some(base) = model.base_cost(&state).unwrap() {
                break Some(base);
            }
            let applicable = model.applicable_transitions(&state).unwrap();
            if applicable.is_empty() {
                break None;
            }
            let t = applicable[rng.gen_range(0..applicable.len())];
            weights.push(model.weight(&model.transitions[t], &state).unwrap());
            state = model.successor(&model.transitions[t], &state).unwrap();
            path.push(t);
        };
        let Some(base) = base else { continue };
        walks += 1;
        let folded = weights
            .iter()
            .rev()
            .try_fold(base, |acc, &w| model.combine(w, acc))
            .unwrap();
        let reported = model.solution_cost(&path).unwrap();
        if reported != Some(folded) {
            failures.push(format!("{}: {:?} vs fold {}", label(case), reported, folded));
        }
    }
    if walks < WALKS {
        failures.push(format!("only {} of {} walks reached a base state", walks, WALKS));
    }
    Outcome::new(failures, format!("{} random solutions", walks))
}

#[test]
fn acceptance_criteria() {
    let cases = suite();
    let runs = par_map(&cases, |case| {
        SolverKind::ALL
            .iter()
            .map(|&k| run(&case.model, k, &SolverParams::default()))
            .collect::<Vec<_>>()
    });
    let outcomes = [
        ("oracle equivalence", oracle_equivalence(&cases, &runs)),
        ("CAASDy first solution is optimal", caasdy_first_solution(&cases, &runs)),
        ("dual bound validity", dual_bound_validity(&cases, &runs)),
        ("anytime contract", anytime_contract(&cases, &runs)),
        ("beam search completeness", beam_completeness()),
        ("pruning ablations", pruning_ablations(&cases)),
        ("YAML round trip", yaml_round_trip()),
        ("metrics examples", metrics_examples()),
        ("path cost property", path_cost_property(&cases)),
    ];
    let mut out = std::io::stdout().lock();
    let mut failed = Vec::new();
    for (k, (name, outcome)) in outcomes.iter().enumerate() {
        let verdict = if outcome.failures.is_empty() { "PASS" } else { "FAIL" };
        writeln!(out, "acceptance {}: {} — {} ({})", k + 1, verdict, name, outcome.summary).unwrap();
        for f in outcome.failures.iter().take(5) {
            writeln!(out, "    {}", f).unwrap();
        }
        if !outcome.failures.is_empty() {
            failed.push(k + 1);
        }
    }
    assert!(failed.is_empty(), "failing criteria: {:?}", failed);
}
