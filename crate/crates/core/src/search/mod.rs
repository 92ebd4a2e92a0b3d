//! Anytime heuristic search over DyPDL models.
//!
//! [`solve`] runs one of the seven solvers. All of them report primal
//! improvements and dual-bound improvements as they happen, and stop either
//! when the search space is exhausted (proving optimality or infeasibility)
//! or when the time limit expires.

mod beam;
mod engine;
mod policy;

pub use beam::{beam_search, cabs};

use crate::expr::{EvalError, Number, NumericType};
use crate::model::{CostStructure, Diagnostic, Model, ValidationContext};
use crate::state::{State, Value};
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SolverKind {
    Caasdy,
    Dfbnb,
    Cbfs,
    Acps,
    Apps,
    Dbdfs,
    Cabs,
}

impl SolverKind {
    pub const ALL: [SolverKind; 7] = [
        SolverKind::Caasdy,
        SolverKind::Dfbnb,
        SolverKind::Cbfs,
        SolverKind::Acps,
        SolverKind::Apps,
        SolverKind::Dbdfs,
        SolverKind::Cabs,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SolverKind::Caasdy => "caasdy",
            SolverKind::Dfbnb => "dfbnb",
            SolverKind::Cbfs => "cbfs",
            SolverKind::Acps => "acps",
            SolverKind::Apps => "apps",
            SolverKind::Dbdfs => "dbdfs",
            SolverKind::Cabs => "cabs",
        }
    }
}

impl fmt::Display for SolverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SolverKind {
    type Err = SearchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SolverKind::ALL
            .iter()
            .copied()
            .find(|k| k.name() == s)
            .ok_or_else(|| SearchError::UnknownSolver(s.to_string()))
    }
}

/// Where the heuristic value `h` of a state comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BoundMode {
    /// The model's dual bound functions (none declared means no heuristic).
    #[default]
    Model,
    /// A constant zero. Only a valid bound for minimization with nonnegative costs.
    Zero,
    /// No heuristic: search is guided by `g` and nothing is pruned by bound.
    None,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverParams {
    /// Wall-clock limit in seconds.
    pub time_limit: Option<f64>,
    /// Only solutions strictly better than this are accepted.
    pub primal_bound: Option<Number>,
    pub initial_beam_width: usize,
    pub beam_growth: usize,
    pub acps_initial_width: usize,
    pub acps_width_step: usize,
    pub apps_initial_width: usize,
    pub apps_width_step: usize,
    pub apps_max_width: Option<usize>,
    pub dbdfs_discrepancy_step: usize,
    pub bound: BoundMode,
    pub dominance: bool,
}

impl Default for SolverParams {
    fn default() -> Self {
        SolverParams {
            time_limit: None,
            primal_bound: None,
            initial_beam_width: 1,
            beam_growth: 2,
            acps_initial_width: 1,
            acps_width_step: 1,
            apps_initial_width: 1,
            apps_width_step: 1,
            apps_max_width: None,
            dbdfs_discrepancy_step: 1,
            bound: BoundMode::Model,
            dominance: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Optimal,
    /// No solution exists, or none better than the given primal bound.
    Infeasible,
    FeasibleNotProved,
    NoSolutionFound,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Optimal => "optimal",
            Status::Infeasible => "infeasible",
            Status::FeasibleNotProved => "feasible",
            Status::NoSolutionFound => "unknown",
        }
    }

    pub fn is_proved(self) -> bool {
        matches!(self, Status::Optimal | Status::Infeasible)
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Statistics {
    pub expanded: usize,
    pub generated: usize,
    /// Seconds.
    pub elapsed: f64,
}

/// A progress notification.
#[derive(Debug, Clone, PartialEq)]
pub enum Event {
    Primal {
        time: f64,
        cost: Number,
        transitions: Vec<String>,
    },
    Dual {
        time: f64,
        bound: Number,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    /// Indices into the model's transitions.
    pub transitions: Vec<usize>,
    pub transition_names: Vec<String>,
    pub cost: Option<Number>,
    pub bound: Option<Number>,
    pub status: Status,
    pub statistics: Statistics,
    /// Cost of the first solution found.
    pub first_solution_cost: Option<Number>,
    /// `(time, cost)` for every primal improvement.
    pub primal_events: Vec<(f64, Number)>,
    /// `(time, bound)` for every dual improvement.
    pub dual_events: Vec<(f64, Number)>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SearchError {
    #[error("unknown solver `{0}`")]
    UnknownSolver(String),
    #[error("invalid model:\n{}", .0.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("\n"))]
    InvalidModel(Vec<Diagnostic>),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// Runs `solver` on `model`.
pub fn solve(model: &Model, solver: SolverKind, params: &SolverParams) -> Result<Solution, SearchError> {
    solve_with_progress(model, solver, params, &mut |_| {})
}

/// Like [`solve`], calling `callback` on the solver's thread for every event.
pub fn solve_with_progress(
    model: &Model,
    solver: SolverKind,
    params: &SolverParams,
    callback: &mut dyn FnMut(&Event),
) -> Result<Solution, SearchError> {
    let context = ValidationContext {
        beam_search: solver == SolverKind::Cabs,
        caasdy_first_solution_claim: false,
    };
    let errors = model.validation_errors(&context);
    if !errors.is_empty() {
        return Err(SearchError::InvalidModel(errors));
    }
    match solver {
        SolverKind::Cabs => beam::run_cabs(model, params, callback),
        SolverKind::Caasdy => engine::run(model, params, policy::BestFirst::new(), callback),
        SolverKind::Dfbnb => engine::run(model, params, policy::DepthFirst::new(), callback),
        SolverKind::Cbfs => engine::run(model, params, policy::Cyclic::new(), callback),
        SolverKind::Acps => engine::run(
            model,
            params,
            policy::Progressive::new(params.acps_initial_width, params.acps_width_step),
            callback,
        ),
        SolverKind::Apps => engine::run(
            model,
            params,
            policy::Pack::new(
                params.apps_initial_width,
                params.apps_width_step,
                params.apps_max_width,
            ),
            callback,
        ),
        SolverKind::Dbdfs => engine::run(
            model,
            params,
            policy::Discrepancy::new(params.dbdfs_discrepancy_step),
            callback,
        ),
    }
}

/// Open-list ordering: better `f`, then better `h`, then the later insertion.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Priority {
    pub f: Number,
    pub h: Number,
    pub id: usize,
    pub maximize: bool,
}

impl PartialEq for Priority {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Priority {}

impl PartialOrd for Priority {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Priority {
    /// Greater is better.
    fn cmp(&self, other: &Self) -> Ordering {
        let by_value = |a: Number, b: Number| {
            if self.maximize {
                a.cmp(&b)
            } else {
                b.cmp(&a)
            }
        };
        by_value(self.f, other.f)
            .then_with(|| by_value(self.h, other.h))
            .then_with(|| self.id.cmp(&other.id))
    }
}

/// Computes `h` and `f` for states.
pub(crate) struct Guide<'a> {
    model: &'a Model,
    mode: BoundMode,
}

impl<'a> Guide<'a> {
    pub fn new(model: &'a Model, params: &SolverParams) -> Guide<'a> {
        let mode = match params.bound {
            BoundMode::Model if !model.has_dual_bound() => BoundMode::None,
            mode => mode,
        };
        Guide { model, mode }
    }

    pub fn has_bound(&self) -> bool {
        self.mode != BoundMode::None
    }

    pub fn h(&self, state: &State) -> Result<Option<Number>, EvalError> {
        match self.mode {
            BoundMode::Model => self.model.eval_dual_bound(state),
            BoundMode::Zero => Ok(Some(match self.model.cost.cost_type {
                NumericType::Integer => Number::Int(0),
                NumericType::Continuous => Number::Real(0.0),
            })),
            BoundMode::None => Ok(None),
        }
    }

    /// `(f, h)` with `h` replaced by the identity when absent.
    pub fn f_h(&self, g: Number, h: Option<Number>) -> Result<(Number, Number), EvalError> {
        match h {
            Some(h) => Ok((self.model.combine(g, h)?, h)),
            None => Ok((g, self.model.cost.identity)),
        }
    }

    /// Whether a node with this `f` may still lead to a solution better than `primal`.
    pub fn may_improve(&self, f: Number, primal: Option<Number>) -> bool {
        let cost = &self.model.cost;
        if !self.has_bound() {
            return true;
        }
        cost.is_better(f, primal.unwrap_or_else(|| cost.worst()))
    }
}

/// Key identifying which states may be compared under dominance.
pub(crate) fn signature(model: &Model, state: &State, dominance: bool) -> Vec<Value> {
    if dominance {
        model.metadata.signature(state)
    } else {
        state.values().to_vec()
    }
}

/// Tracks the incumbent, the best dual bound, the clock, and event delivery.
pub(crate) struct Progress<'a> {
    start: Instant,
    time_limit: Option<f64>,
    cost: CostStructure,
    pub primal: Option<Number>,
    /// Whether `primal` was found by this search, not given as input.
    pub found: bool,
    pub dual: Option<Number>,
    pub best_transitions: Vec<usize>,
    pub first_solution_cost: Option<Number>,
    pub primal_events: Vec<(f64, Number)>,
    pub dual_events: Vec<(f64, Number)>,
    pub statistics: Statistics,
    callback: &'a mut dyn FnMut(&Event),
    names: Vec<String>,
}

impl<'a> Progress<'a> {
    pub fn new(model: &Model, params: &SolverParams, callback: &'a mut dyn FnMut(&Event)) -> Self {
        Progress {
            start: Instant::now(),
            time_limit: params.time_limit,
            cost: model.cost,
            primal: params.primal_bound,
            found: false,
            dual: None,
            best_transitions: Vec::new(),
            first_solution_cost: None,
            primal_events: Vec::new(),
            dual_events: Vec::new(),
            statistics: Statistics::default(),
            callback,
            names: model.transitions.iter().map(|t| t.name.clone()).collect(),
        }
    }

    pub fn elapsed(&self) -> f64 {
        self.start.elapsed().as_secs_f64()
    }

    pub fn timed_out(&self) -> bool {
        match self.time_limit {
            Some(limit) => self.elapsed() >= limit,
            None => false,
        }
    }

    /// Whether `cost` would improve the incumbent.
    pub fn improves(&self, cost: Number) -> bool {
        match self.primal {
            Some(p) => self.cost.is_better(cost, p),
            None => true,
        }
    }

    /// Records a new incumbent. The caller has checked [`Progress::improves`].
    pub fn new_solution(&mut self, cost: Number, transitions: Vec<usize>) {
        let time = self.elapsed();
        self.primal = Some(cost);
        self.found = true;
        if self.first_solution_cost.is_none() {
            self.first_solution_cost = Some(cost);
        }
        self.primal_events.push((time, cost));
        let names = transitions.iter().map(|&t| self.names[t].clone()).collect();
        self.best_transitions = transitions;
        (self.callback)(&Event::Primal {
            time,
            cost,
            transitions: names,
        });
        // a dual bound never exceeds the incumbent
        if let Some(d) = self.dual {
            if self.cost.is_better(cost, d) {
                self.dual = Some(cost);
                self.dual_events.push((time, cost));
                (self.callback)(&Event::Dual { time, bound: cost });
            }
        }
    }

    /// Offers a valid dual bound; it is kept if tighter than the current one.
    pub fn offer_dual(&mut self, bound: Number) {
        let bound = match self.primal {
            Some(p) => self.cost.best(bound, p),
            None => bound,
        };
        let improved = match self.dual {
            None => true,
            Some(d) => self.cost.is_better(d, bound),
        };
        if improved {
            let time = self.elapsed();
            self.dual = Some(bound);
            self.dual_events.push((time, bound));
            (self.callback)(&Event::Dual { time, bound });
        }
    }

    /// Builds the final solution. `exhausted` means the search space was fully explored.
    pub fn finish(mut self, exhausted: bool) -> Solution {
        let status = if exhausted {
            if self.found {
                let cost = self.primal.expect("incumbent");
                self.offer_dual(cost);
                Status::Optimal
            } else {
                if let Some(p) = self.primal {
                    self.offer_dual(p);
                }
                Status::Infeasible
            }
        } else if self.found {
            Status::FeasibleNotProved
        } else {
            Status::NoSolutionFound
        };
        self.statistics.elapsed = self.elapsed();
        let transition_names = if self.found {
            self.best_transitions
                .iter()
                .map(|&t| self.names[t].clone())
                .collect()
        } else {
            Vec::new()
        };
        Solution {
            transitions: if self.found {
                self.best_transitions
            } else {
                Vec::new()
            },
            transition_names,
            cost: if self.found { self.primal } else { None },
            bound: self.dual,
            status,
            statistics: self.statistics,
            first_solution_cost: self.first_solution_cost,
            primal_events: self.primal_events,
            dual_events: self.dual_events,
        }
    }
}

/// A generated state with its path information.
pub(crate) struct Node {
    pub state: State,
    pub g: Number,
    pub f: Number,
    pub h: Number,
    /// Parent node and the transition applied to it.
    pub parent: Option<(usize, usize)>,
    pub depth: usize,
    /// Waiting in the open list.
    pub open: bool,
    /// Evicted by a dominating state.
    pub dead: bool,
}

impl Node {
    pub fn priority(&self, id: usize, cost: &CostStructure) -> Priority {
        Priority {
            f: self.f,
            h: self.h,
            id,
            maximize: cost.direction == crate::model::Direction::Maximize,
        }
    }
}

/// Transition indices from the root to `id`.
pub(crate) fn path(nodes: &[Node], mut id: usize) -> Vec<usize> {
    let mut result = Vec::new();
    while let Some((parent, transition)) = nodes[id].parent {
        result.push(transition);
        id = parent;
    }
    result.reverse();
    result
}
