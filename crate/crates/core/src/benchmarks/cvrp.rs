use super::{
    cmp, el, flatten, invalid, lookup, min_in, min_out, nonnegative, square, BenchmarkError,
    TableBuilder,
};
use crate::expr::{ComparisonOperator::*, NumericExpression, NumericType, SetExpression};
use crate::model::{BaseCase, CostStructure, Direction, Model, Preference, StateMetadata, Transition};
use crate::state::{set_from, State, Value};
use crate::Number;

/// Capacitated vehicle routing with `m` vehicles of capacity `q`; node 0 is the depot.
#[derive(Debug, Clone, PartialEq)]
pub struct CvrpInstance {
    pub n: usize,
    pub vehicles: i64,
    pub capacity: i64,
    pub demand: Vec<i64>,
    pub c: Vec<Vec<i64>>,
    pub cin: Vec<i64>,
    pub cout: Vec<i64>,
}

impl CvrpInstance {
    pub fn new(
        vehicles: i64,
        capacity: i64,
        demand: Vec<i64>,
        c: Vec<Vec<i64>>,
    ) -> Result<Self, BenchmarkError> {
        let n = c.len();
        if n == 0 {
            return Err(invalid("at least the depot is required"));
        }
        square("travel times", &c, n)?;
        nonnegative("travel times", c.iter().flatten().copied())?;
        nonnegative("demands", demand.iter().copied())?;
        if demand.len() != n {
            return Err(invalid("one demand per node is required"));
        }
        if vehicles < 1 {
            return Err(invalid("at least one vehicle is required"));
        }
        if let Some(j) = (1..n).find(|&j| demand[j] > capacity) {
            return Err(invalid(format!("demand of customer {} exceeds the capacity", j)));
        }
        Ok(CvrpInstance {
            n,
            vehicles,
            capacity,
            cin: min_in(&c),
            cout: min_out(&c),
            demand,
            c,
        })
    }
}

pub fn build_cvrp(instance: &CvrpInstance) -> Result<Model, BenchmarkError> {
    let n = instance.n;
    let (m, q) = (instance.vehicles, instance.capacity);
    let mut meta = StateMetadata::new();
    let customer = meta.add_object("customer", n)?;
    let u = meta.add_set_variable("U", customer)?;
    let i = meta.add_element_variable("i", customer, Preference::None)?;
    let l = meta.add_integer_variable("l", Preference::Less)?;
    let k = meta.add_integer_variable("k", Preference::Less)?;

    let mut tables = TableBuilder::new(&meta);
    let mut demand = instance.demand.clone();
    demand[0] = 0;
    let d = tables.integer("d", &[customer], demand);
    let c = tables.integer("c", &[customer, customer], flatten(&instance.c));
    let cin = tables.integer("cin", &[customer], instance.cin.clone());
    let cout = tables.integer("cout", &[customer], instance.cout.clone());
    let tables = tables.finish();

    let target = State::new(vec![
        Value::Set(set_from(n, 1..n)),
        Value::Element(0),
        Value::Number(Number::Int(0)),
        Value::Number(Number::Int(1)),
    ]);
    let cost = CostStructure::additive(Direction::Minimize, NumericType::Integer);
    let mut model = Model::new(meta, tables, target, cost)?;
    let unvisited = || SetExpression::from(u);

    for j in 1..n {
        let load = NumericExpression::from(l) + lookup(d, vec![el(j)]);
        model.add_transition(
            Transition::new(format!("visit {}", j))
                .precondition(unvisited().contains(j))
                .precondition(cmp(Le, load.clone(), q))
                .set_effect(u, unvisited().remove(j))
                .element_effect(i, j)
                .numeric_effect(l, load)
                .with_cost(lookup(c, vec![i.into(), el(j)])),
        );
    }
    for j in 1..n {
        model.add_transition(
            Transition::new(format!("visit-via-depot {}", j))
                .precondition(unvisited().contains(j))
                .precondition(cmp(Lt, k, m))
                .set_effect(u, unvisited().remove(j))
                .element_effect(i, j)
                .numeric_effect(l, lookup(d, vec![el(j)]))
                .numeric_effect(k, NumericExpression::from(k) + 1)
                .with_cost(lookup(c, vec![i.into(), el(0)]) + lookup(c, vec![el(0), el(j)])),
        );
    }
    model.add_base_case(BaseCase::new(
        vec![unvisited().is_empty()],
        lookup(c, vec![i.into(), el(0)]),
    ));
    // the remaining vehicles must be able to carry the remaining demand
    let remaining_capacity = (NumericExpression::constant(m) - k + 1) * q;
    model.add_constraint(cmp(
        Ge,
        remaining_capacity,
        NumericExpression::from(l) + NumericExpression::sum(d, unvisited()),
    ));
    model.add_dual_bound(NumericExpression::sum(cin, unvisited()) + lookup(cin, vec![el(0)]));
    model.add_dual_bound(NumericExpression::sum(cout, unvisited()) + lookup(cout, vec![i.into()]));
    Ok(model)
}
