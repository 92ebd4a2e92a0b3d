use super::{cmp, el, flatten, has_cycle, invalid, lookup, square, BenchmarkError, TableBuilder};
use crate::expr::{ComparisonOperator::*, Condition, NumericExpression, NumericType, SetExpression};
use crate::model::{BaseCase, CostStructure, Direction, Model, Preference, StateMetadata, Transition};
use crate::state::{set_from, Set, State, Value};
use crate::Number;

/// A commodity picked up at `pickup` and delivered to `delivery`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Commodity {
    pub pickup: usize,
    pub delivery: usize,
    pub weight: i64,
}

/// One-to-one multi-commodity pickup and delivery TSP: start at 0, end at `n-1`.
#[derive(Debug, Clone, PartialEq)]
pub struct MpdtspInstance {
    pub n: usize,
    pub capacity: i64,
    /// Travel times; `None` where there is no edge.
    pub c: Vec<Vec<Option<i64>>>,
    pub commodities: Vec<Commodity>,
    /// Net load change at each node.
    pub delta: Vec<i64>,
    /// Nodes that must be visited before each node.
    pub predecessors: Vec<Vec<usize>>,
    pub cin: Vec<i64>,
    pub cout: Vec<i64>,
}

impl MpdtspInstance {
    pub fn new(
        capacity: i64,
        c: Vec<Vec<Option<i64>>>,
        commodities: Vec<Commodity>,
    ) -> Result<Self, BenchmarkError> {
        let n = c.len();
        if n < 2 {
            return Err(invalid("a start and an end node are required"));
        }
        if c.iter().any(|row| row.len() != n) {
            return Err(invalid(format!("travel times must be a {}x{} matrix", n, n)));
        }
        if c.iter().flatten().flatten().any(|&v| v < 0) {
            return Err(invalid("travel times must be nonnegative"));
        }
        let mut delta = vec![0; n];
        let mut predecessors = vec![Vec::new(); n];
        for (k, com) in commodities.iter().enumerate() {
            if com.pickup >= n || com.delivery >= n || com.pickup == com.delivery {
                return Err(invalid(format!("commodity {} has bad endpoints", k)));
            }
            if com.weight < 0 {
                return Err(invalid(format!("commodity {} has a negative weight", k)));
            }
            delta[com.pickup] += com.weight;
            delta[com.delivery] -= com.weight;
            if !predecessors[com.delivery].contains(&com.pickup) {
                predecessors[com.delivery].push(com.pickup);
            }
        }
        if has_cycle(&predecessors) {
            return Err(invalid("commodity dependencies are cyclic"));
        }
        let cin = (0..n)
            .map(|j| (0..n).filter_map(|k| if k != j { c[k][j] } else { None }).min().unwrap_or(0))
            .collect();
        let cout = (0..n)
            .map(|j| (0..n).filter_map(|k| if k != j { c[j][k] } else { None }).min().unwrap_or(0))
            .collect();
        Ok(MpdtspInstance {
            n,
            capacity,
            c,
            commodities,
            delta,
            predecessors,
            cin,
            cout,
        })
    }
}

pub fn build_mpdtsp(instance: &MpdtspInstance) -> Result<Model, BenchmarkError> {
    let n = instance.n;
    let last = n - 1;
    let mut meta = StateMetadata::new();
    let customer = meta.add_object("customer", n)?;
    let u = meta.add_set_variable("U", customer)?;
    let i = meta.add_element_variable("i", customer, Preference::None)?;
    let l = meta.add_integer_variable("l", Preference::Less)?;

    let mut tables = TableBuilder::new(&meta);
    let edge: Vec<Vec<bool>> = instance.c.iter().map(|row| row.iter().map(Option::is_some).collect()).collect();
    let times: Vec<Vec<i64>> = instance.c.iter().map(|row| row.iter().map(|v| v.unwrap_or(0)).collect()).collect();
    square("travel times", &times, n)?;
    let a = tables.boolean("A", &[customer, customer], flatten(&edge));
    let c = tables.integer("c", &[customer, customer], flatten(&times));
    let delta = tables.integer("delta", &[customer], instance.delta.clone());
    let pred = tables.set(
        "P",
        &[customer],
        customer,
        instance.predecessors.iter().map(|p| set_from(n, p.iter().copied())).collect(),
    );
    let cin = tables.integer("cin", &[customer], instance.cin.clone());
    let cout = tables.integer("cout", &[customer], instance.cout.clone());
    let tables = tables.finish();

    let mut start = Set::with_capacity(n);
    start.insert_range(1..last);
    let target = State::new(vec![
        Value::Set(start),
        Value::Element(0),
        Value::Number(Number::Int(0)),
    ]);
    let cost = CostStructure::additive(Direction::Minimize, NumericType::Integer);
    let mut model = Model::new(meta, tables, target, cost)?;
    let unvisited = || SetExpression::from(u);

    for j in 1..last {
        let load = NumericExpression::from(l) + lookup(delta, vec![el(j)]);
        model.add_transition(
            Transition::new(format!("visit {}", j))
                .precondition(unvisited().contains(j))
                .precondition(Condition::Table(a, vec![i.into(), el(j)]))
                .precondition(cmp(Le, load.clone(), instance.capacity))
                .precondition(SetExpression::Table(pred, vec![el(j)]).intersection(unvisited()).is_empty())
                .set_effect(u, unvisited().remove(j))
                .element_effect(i, j)
                .numeric_effect(l, load)
                .with_cost(lookup(c, vec![i.into(), el(j)])),
        );
    }
    model.add_base_case(BaseCase::new(
        vec![unvisited().is_empty(), Condition::Table(a, vec![i.into(), el(last)])],
        lookup(c, vec![i.into(), el(last)]),
    ));
    model.add_dual_bound(NumericExpression::sum(cin, unvisited()) + lookup(cin, vec![el(last)]));
    model.add_dual_bound(NumericExpression::sum(cout, unvisited()) + lookup(cout, vec![i.into()]));
    Ok(model)
}
