use super::{el, flatten, invalid, lookup, nonnegative, square, BenchmarkError, TableBuilder};
use crate::expr::{NumericExpression, NumericType, ReduceOperator, SetExpression};
use crate::model::{BaseCase, CostStructure, Direction, Model, StateMetadata, Transition};
use crate::state::{set_from, State, Value};

/// Graph-clear: node sweep costs `a` and edge block costs `b` (0 for non-edges).
#[derive(Debug, Clone, PartialEq)]
pub struct GraphClearInstance {
    pub a: Vec<i64>,
    pub b: Vec<Vec<i64>>,
}

impl GraphClearInstance {
    pub fn new(a: Vec<i64>, b: Vec<Vec<i64>>) -> Result<Self, BenchmarkError> {
        let n = a.len();
        square("edge weights", &b, n)?;
        nonnegative("node weights", a.iter().copied())?;
        nonnegative("edge weights", b.iter().flatten().copied())?;
        if (0..n).any(|i| (0..n).any(|j| b[i][j] != b[j][i])) {
            return Err(invalid("edge weights must be symmetric"));
        }
        Ok(GraphClearInstance { a, b })
    }

    pub fn nodes(&self) -> usize {
        self.a.len()
    }
}

pub fn build_graphclear(instance: &GraphClearInstance) -> Result<Model, BenchmarkError> {
    let n = instance.nodes();
    let mut meta = StateMetadata::new();
    let node = meta.add_object("node", n)?;
    let c = meta.add_set_variable("C", node)?;

    let mut tables = TableBuilder::new(&meta);
    let a = tables.integer("a", &[node], instance.a.clone());
    let b = tables.integer("b", &[node, node], flatten(&instance.b));
    let tables = tables.finish();

    let target = State::new(vec![Value::Set(set_from(n, []))]);
    let cost = CostStructure::nonnegative_maximum(Direction::Minimize, NumericType::Integer);
    let mut model = Model::new(meta, tables, target, cost)?;
    let swept = || SetExpression::from(c);

    for k in 0..n {
        let incident: i64 = instance.b[k].iter().sum();
        // edges between swept nodes and the other unswept ones stay blocked
        let blocked = NumericExpression::reduce(
            ReduceOperator::Sum,
            b,
            vec![swept().into(), swept().complement().remove(k).into()],
        );
        model.add_transition(
            Transition::new(format!("sweep {}", k))
                .precondition(swept().contains(k).not())
                .set_effect(c, swept().add(k))
                .with_cost(lookup(a, vec![el(k)]) + incident + blocked),
        );
    }
    model.add_base_case(BaseCase::new(vec![swept().complement().is_empty()], 0));
    model.add_dual_bound(0);
    Ok(model)
}
