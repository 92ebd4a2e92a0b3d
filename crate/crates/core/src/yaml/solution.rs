//! Solver configuration files and the line-oriented solution format.

use super::{document_error, YamlError};
use crate::expr::{Number, NumericType};
use crate::search::{BoundMode, Solution, SolverKind, SolverParams};
use serde::Deserialize;
use std::fmt::Write;

/// A solver configuration file. Every key is optional; omitted keys take the
/// [`SolverParams`] defaults, and the solver defaults to `cabs`.
///
/// ```yaml
/// solver: cabs          # caasdy | dfbnb | cbfs | acps | apps | dbdfs | cabs
/// time_limit: 10        # seconds
/// primal_bound: 100     # only strictly better solutions are accepted
/// initial_beam_width: 1
/// beam_growth: 2
/// bound: model          # model | zero | none
/// dominance: true
/// ```
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverConfig {
    pub solver: Option<String>,
    pub time_limit: Option<f64>,
    pub primal_bound: Option<f64>,
    pub initial_beam_width: Option<usize>,
    pub beam_growth: Option<usize>,
    pub acps_initial_width: Option<usize>,
    pub acps_width_step: Option<usize>,
    pub apps_initial_width: Option<usize>,
    pub apps_width_step: Option<usize>,
    pub apps_max_width: Option<usize>,
    pub dbdfs_discrepancy_step: Option<usize>,
    pub bound: Option<BoundSetting>,
    pub dominance: Option<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundSetting {
    Model,
    Zero,
    None,
}

pub fn parse_solver_config(text: &str) -> Result<SolverConfig, YamlError> {
    let value: serde_yaml::Value = serde_yaml::from_str(text)?;
    if value.is_null() {
        return Ok(SolverConfig::default());
    }
    let config: SolverConfig = serde_yaml::from_value(value)?;
    config.solver()?;
    Ok(config)
}

impl SolverConfig {
    pub fn solver(&self) -> Result<SolverKind, YamlError> {
        match &self.solver {
            None => Ok(SolverKind::Cabs),
            Some(name) => name.parse().map_err(|_| {
                document_error(format!(
                    "solver: unknown solver `{}` (expected one of {})",
                    name,
                    SolverKind::ALL.map(|k| k.name()).join(", ")
                ))
            }),
        }
    }

    /// Parameters for a model whose costs are of type `cost_type`.
    pub fn params(&self, cost_type: NumericType) -> Result<SolverParams, YamlError> {
        let d = SolverParams::default();
        if let Some(t) = self.time_limit {
            if !(t >= 0.0) {
                return Err(document_error(format!("time_limit: must be nonnegative, got {}", t)));
            }
        }
        let primal_bound = match self.primal_bound {
            None => None,
            Some(p) => Some(match cost_type {
                NumericType::Integer if p.fract() == 0.0 => Number::Int(p as i64),
                NumericType::Integer => {
                    return Err(document_error(format!("primal_bound: {} is not an integer", p)))
                }
                NumericType::Continuous => Number::real(p)?,
            }),
        };
        Ok(SolverParams {
            time_limit: self.time_limit,
            primal_bound,
            initial_beam_width: self.initial_beam_width.unwrap_or(d.initial_beam_width),
            beam_growth: self.beam_growth.unwrap_or(d.beam_growth),
            acps_initial_width: self.acps_initial_width.unwrap_or(d.acps_initial_width),
            acps_width_step: self.acps_width_step.unwrap_or(d.acps_width_step),
            apps_initial_width: self.apps_initial_width.unwrap_or(d.apps_initial_width),
            apps_width_step: self.apps_width_step.unwrap_or(d.apps_width_step),
            apps_max_width: self.apps_max_width.or(d.apps_max_width),
            dbdfs_discrepancy_step: self.dbdfs_discrepancy_step.unwrap_or(d.dbdfs_discrepancy_step),
            bound: match self.bound {
                None => d.bound,
                Some(BoundSetting::Model) => BoundMode::Model,
                Some(BoundSetting::Zero) => BoundMode::Zero,
                Some(BoundSetting::None) => BoundMode::None,
            },
            dominance: self.dominance.unwrap_or(d.dominance),
        })
    }
}

/// The solution record: status, cost, bound, the number of transitions and
/// their names one per line, then statistics. Timing is left out so that
/// repeated runs produce identical files.
pub fn write_solution(solution: &Solution) -> String {
    let show = |n: Option<Number>| n.map_or_else(|| "none".to_string(), |n| n.to_string());
    let mut out = String::new();
    let _ = writeln!(out, "status: {}", solution.status);
    let _ = writeln!(out, "cost: {}", show(solution.cost));
    let _ = writeln!(out, "bound: {}", show(solution.bound));
    let _ = writeln!(out, "transitions: {}", solution.transition_names.len());
    for name in &solution.transition_names {
        let _ = writeln!(out, "{}", name);
    }
    let _ = writeln!(out, "expanded: {}", solution.statistics.expanded);
    let _ = writeln!(out, "generated: {}", solution.statistics.generated);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_examples() {
        let c = parse_solver_config("{solver: cabs, time_limit: 10}").unwrap();
        assert_eq!(c.solver().unwrap(), SolverKind::Cabs);
        assert_eq!(c.params(NumericType::Integer).unwrap().time_limit, Some(10.0));
        let e = parse_solver_config("{solver: nosuch}").unwrap_err().to_string();
        assert!(e.contains("nosuch"), "{}", e);
        assert!(parse_solver_config("{solvr: cabs}").unwrap_err().to_string().contains("solvr"));
        assert_eq!(parse_solver_config("").unwrap(), SolverConfig::default());
    }

    #[test]
    fn policy_constants() {
        let c = parse_solver_config("solver: acps\nacps_width_step: 3\nbound: zero\ndominance: false\nprimal_bound: 7\n").unwrap();
        let p = c.params(NumericType::Integer).unwrap();
        assert_eq!(p.acps_width_step, 3);
        assert_eq!(p.bound, BoundMode::Zero);
        assert!(!p.dominance);
        assert_eq!(p.primal_bound, Some(Number::Int(7)));
        assert!(c.params(NumericType::Continuous).unwrap().primal_bound == Some(Number::Real(7.0)));
        let c = parse_solver_config("primal_bound: 7.5").unwrap();
        assert!(c.params(NumericType::Integer).is_err());
    }
}
