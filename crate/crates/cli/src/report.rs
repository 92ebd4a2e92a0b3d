use didp::metrics::{optimality_gap, primal_integral, MetricsError};
use didp::search::{BoundMode, Solution, SolverKind, SolverParams, Status};
use didp::Number;
use serde::Serialize;

/// Summary of one solver run, written as JSON.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub instance: String,
    pub solver: &'static str,
    pub params: ParamsEcho,
    pub status: &'static str,
    pub cost: Option<f64>,
    pub bound: Option<f64>,
    pub transitions: Vec<String>,
    pub expanded: usize,
    pub generated: usize,
    pub elapsed: f64,
    pub gap: f64,
    /// Present only when a reference cost was supplied.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub primal_integral: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub horizon: Option<f64>,
}

#[derive(Debug, Serialize)]
pub struct ParamsEcho {
    pub time_limit: Option<f64>,
    pub primal_bound: Option<f64>,
    pub initial_beam_width: usize,
    pub beam_growth: usize,
    pub acps_initial_width: usize,
    pub acps_width_step: usize,
    pub apps_initial_width: usize,
    pub apps_width_step: usize,
    pub apps_max_width: Option<usize>,
    pub dbdfs_discrepancy_step: usize,
    pub bound: &'static str,
    pub dominance: bool,
}

impl From<&SolverParams> for ParamsEcho {
    fn from(p: &SolverParams) -> Self {
        ParamsEcho {
            time_limit: p.time_limit,
            primal_bound: p.primal_bound.map(Number::as_f64),
            initial_beam_width: p.initial_beam_width,
            beam_growth: p.beam_growth,
            acps_initial_width: p.acps_initial_width,
            acps_width_step: p.acps_width_step,
            apps_initial_width: p.apps_initial_width,
            apps_width_step: p.apps_width_step,
            apps_max_width: p.apps_max_width,
            dbdfs_discrepancy_step: p.dbdfs_discrepancy_step,
            bound: match p.bound {
                BoundMode::Model => "model",
                BoundMode::Zero => "zero",
                BoundMode::None => "none",
            },
            dominance: p.dominance,
        }
    }
}

impl RunReport {
    pub fn new(
        instance: String,
        solver: SolverKind,
        params: ParamsEcho,
        solution: &Solution,
        reference: Option<f64>,
    ) -> Result<Self, MetricsError> {
        let cost = solution.cost.map(Number::as_f64);
        let bound = solution.bound.map(Number::as_f64);
        let elapsed = solution.statistics.elapsed;
        // The integral runs to the time limit when one was set, so runs with
        // the same limit are comparable.
        let horizon = params.time_limit.map_or(elapsed, |t| t.max(elapsed));
        let primal_integral = match reference {
            None => None,
            Some(r) => {
                let events: Vec<_> = solution
                    .primal_events
                    .iter()
                    .map(|&(t, c)| (t.min(horizon), c.as_f64()))
                    .collect();
                let infeasible_at = (solution.status == Status::Infeasible).then_some(elapsed);
                Some(primal_integral(&events, Some(r), horizon, infeasible_at)?)
            }
        };
        Ok(RunReport {
            instance,
            solver: solver.name(),
            params,
            status: solution.status.name(),
            cost,
            bound,
            transitions: solution.transition_names.clone(),
            expanded: solution.statistics.expanded,
            generated: solution.statistics.generated,
            elapsed,
            gap: optimality_gap(cost, bound),
            primal_integral,
            horizon: reference.map(|_| horizon),
        })
    }
}
