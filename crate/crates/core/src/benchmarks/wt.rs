use super::{has_cycle, invalid, lookup, el, nonnegative, BenchmarkError, TableBuilder};
use crate::expr::{Condition, NumericExpression, NumericType, SetExpression};
use crate::model::{BaseCase, CostStructure, Direction, Model, StateMetadata, Transition};
use crate::state::{set_from, State, Value};

/// Single-machine total weighted tardiness.
#[derive(Debug, Clone, PartialEq)]
pub struct WtInstance {
    pub processing: Vec<i64>,
    pub due: Vec<i64>,
    pub weight: Vec<i64>,
    /// Jobs that must precede each job; empty when no precedence is known.
    pub predecessors: Vec<Vec<usize>>,
}

impl WtInstance {
    pub fn new(
        processing: Vec<i64>,
        due: Vec<i64>,
        weight: Vec<i64>,
        predecessors: Option<Vec<Vec<usize>>>,
    ) -> Result<Self, BenchmarkError> {
        let n = processing.len();
        if due.len() != n || weight.len() != n {
            return Err(invalid("processing times, due dates and weights differ in length"));
        }
        nonnegative("processing times", processing.iter().copied())?;
        nonnegative("weights", weight.iter().copied())?;
        let predecessors = predecessors.unwrap_or_else(|| vec![Vec::new(); n]);
        if predecessors.len() != n || predecessors.iter().flatten().any(|&p| p >= n) {
            return Err(invalid("predecessor lists must refer to jobs"));
        }
        if has_cycle(&predecessors) {
            return Err(invalid("the precedence relation is cyclic"));
        }
        Ok(WtInstance {
            processing,
            due,
            weight,
            predecessors,
        })
    }

    pub fn jobs(&self) -> usize {
        self.processing.len()
    }
}

pub fn build_wt(instance: &WtInstance) -> Result<Model, BenchmarkError> {
    let n = instance.jobs();
    let mut meta = StateMetadata::new();
    let job = meta.add_object("job", n)?;
    let f = meta.add_set_variable("F", job)?;

    let mut tables = TableBuilder::new(&meta);
    let p = tables.integer("p", &[job], instance.processing.clone());
    let d = tables.integer("d", &[job], instance.due.clone());
    let w = tables.integer("w", &[job], instance.weight.clone());
    let pred = tables.set(
        "P",
        &[job],
        job,
        instance
            .predecessors
            .iter()
            .map(|p| set_from(n, p.iter().copied()))
            .collect(),
    );
    let tables = tables.finish();

    let target = State::new(vec![Value::Set(set_from(n, []))]);
    let cost = CostStructure::additive(Direction::Minimize, NumericType::Integer);
    let mut model = Model::new(meta, tables, target, cost)?;
    let scheduled = || SetExpression::from(f);

    for i in 0..n {
        let completion = NumericExpression::sum(p, scheduled()) + lookup(p, vec![el(i)]);
        let tardiness = (completion - lookup(d, vec![el(i)])).max(0);
        model.add_transition(
            Transition::new(format!("schedule {}", i))
                .precondition(scheduled().contains(i).not())
                .precondition(Condition::IsSubset(
                    SetExpression::Table(pred, vec![el(i)]),
                    scheduled(),
                ))
                .set_effect(f, scheduled().add(i))
                .with_cost(lookup(w, vec![el(i)]) * tardiness),
        );
    }
    model.add_base_case(BaseCase::new(vec![scheduled().complement().is_empty()], 0));
    model.add_dual_bound(0);
    Ok(model)
}
