use super::{invalid, BenchmarkError, TableBuilder, el};
use crate::expr::{NumericExpression, NumericType, SetExpression};
use crate::model::{BaseCase, CostStructure, Direction, Model, StateMetadata, Transition};
use crate::state::{set_from, State, Value};

/// Minimization of open stacks, solved by customer search.
#[derive(Debug, Clone, PartialEq)]
pub struct MospInstance {
    /// Products ordered by each customer.
    pub orders: Vec<Vec<usize>>,
    pub products: usize,
    /// Customers sharing a product with each customer, itself included.
    pub neighbors: Vec<Vec<usize>>,
}

impl MospInstance {
    pub fn new(orders: Vec<Vec<usize>>, products: usize) -> Result<Self, BenchmarkError> {
        if orders.iter().flatten().any(|&p| p >= products) {
            return Err(invalid("customer orders an unknown product"));
        }
        let neighbors = (0..orders.len())
            .map(|c| {
                (0..orders.len())
                    .filter(|&k| k == c || orders[c].iter().any(|p| orders[k].contains(p)))
                    .collect()
            })
            .collect();
        Ok(MospInstance {
            orders,
            products,
            neighbors,
        })
    }

    pub fn customers(&self) -> usize {
        self.orders.len()
    }
}

pub fn build_mosp(instance: &MospInstance) -> Result<Model, BenchmarkError> {
    let n = instance.customers();
    let mut meta = StateMetadata::new();
    let customer = meta.add_object("customer", n)?;
    let r = meta.add_set_variable("R", customer)?;
    let o = meta.add_set_variable("O", customer)?;

    let mut tables = TableBuilder::new(&meta);
    let neighbors = tables.set(
        "N",
        &[customer],
        customer,
        instance
            .neighbors
            .iter()
            .map(|s| set_from(n, s.iter().copied()))
            .collect(),
    );
    let tables = tables.finish();

    let target = State::new(vec![Value::Set(set_from(n, 0..n)), Value::Set(set_from(n, []))]);
    let cost = CostStructure::nonnegative_maximum(Direction::Minimize, NumericType::Integer);
    let mut model = Model::new(meta, tables, target, cost)?;
    let remaining = || SetExpression::from(r);
    let opened = || SetExpression::from(o);

    for c in 0..n {
        let nc = || SetExpression::Table(neighbors, vec![el(c)]);
        let stacks = opened()
            .intersection(remaining())
            .union(nc().difference(opened()));
        model.add_transition(
            Transition::new(format!("close {}", c))
                .precondition(remaining().contains(c))
                .set_effect(r, remaining().remove(c))
                .set_effect(o, opened().union(nc()))
                .with_cost(NumericExpression::cardinality(stacks)),
        );
    }
    model.add_base_case(BaseCase::new(vec![remaining().is_empty()], 0));
    model.add_dual_bound(0);
    Ok(model)
}
