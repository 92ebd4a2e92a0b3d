use super::binpacking::PackingBounds;
use super::{cmp, el, has_cycle, invalid, BenchmarkError, TableBuilder};
use crate::expr::{ComparisonOperator::*, Condition, NumericExpression, NumericType, SetExpression};
use crate::model::{BaseCase, CostStructure, Direction, Model, Preference, StateMetadata, Transition};
use crate::state::{set_from, State, Value};
use crate::Number;

/// Simple assembly line balancing (minimize the number of stations for cycle time `cycle_time`).
#[derive(Debug, Clone, PartialEq)]
pub struct Salbp1Instance {
    pub cycle_time: i64,
    pub weight: Vec<i64>,
    /// Direct predecessors of each task.
    pub predecessors: Vec<Vec<usize>>,
}

impl Salbp1Instance {
    pub fn new(
        cycle_time: i64,
        weight: Vec<i64>,
        predecessors: Vec<Vec<usize>>,
    ) -> Result<Self, BenchmarkError> {
        let n = weight.len();
        if cycle_time <= 0 {
            return Err(invalid("the cycle time must be positive"));
        }
        if let Some(i) = weight.iter().position(|&w| w < 0 || w > cycle_time) {
            return Err(invalid(format!("task {} does not fit in a station", i)));
        }
        if predecessors.len() != n || predecessors.iter().flatten().any(|&p| p >= n) {
            return Err(invalid("predecessor lists must refer to tasks"));
        }
        if has_cycle(&predecessors) {
            return Err(invalid("the precedence graph is cyclic"));
        }
        Ok(Salbp1Instance {
            cycle_time,
            weight,
            predecessors,
        })
    }
}

pub fn build_salbp1(instance: &Salbp1Instance) -> Result<Model, BenchmarkError> {
    let n = instance.weight.len();
    let q = instance.cycle_time;
    let mut meta = StateMetadata::new();
    let task = meta.add_object("task", n)?;
    let u = meta.add_set_variable("U", task)?;
    let r = meta.add_integer_variable("r", Preference::Greater)?;

    let mut tables = TableBuilder::new(&meta);
    let bounds = PackingBounds::tables(&mut tables, task, &instance.weight, q);
    let pred = tables.set(
        "P",
        &[task],
        task,
        instance
            .predecessors
            .iter()
            .map(|p| set_from(n, p.iter().copied()))
            .collect(),
    );
    let tables = tables.finish();

    let target = State::new(vec![
        Value::Set(set_from(n, 0..n)),
        Value::Number(Number::Int(0)),
    ]);
    let cost = CostStructure::additive(Direction::Minimize, NumericType::Integer);
    let mut model = Model::new(meta, tables, target, cost)?;
    let remaining = || SetExpression::from(u);
    let schedulable = |i: usize| {
        Condition::And(vec![
            remaining().contains(i),
            cmp(Ge, r, bounds.weight(i)),
            SetExpression::Table(pred, vec![el(i)])
                .intersection(remaining())
                .is_empty(),
        ])
    };

    let mut none_fits: Vec<Condition> = vec![remaining().is_empty().not()];
    none_fits.extend((0..n).map(|i| schedulable(i).not()));
    model.add_transition(
        Transition::new("open-station")
            .precondition(Condition::And(none_fits))
            .numeric_effect(r, q)
            .with_cost(1)
            .forced(),
    );
    for i in 0..n {
        model.add_transition(
            Transition::new(format!("schedule {}", i))
                .precondition(schedulable(i))
                .set_effect(u, remaining().remove(i))
                .numeric_effect(r, NumericExpression::from(r) - bounds.weight(i)),
        );
    }
    model.add_base_case(BaseCase::new(vec![remaining().is_empty()], 0));
    bounds.add(&mut model, u, r, q);
    Ok(model)
}
