use super::{
    cmp, el, flatten, lookup, min_in, min_out, nonnegative, shortest_paths, square,
    BenchmarkError, TableBuilder,
};
use crate::expr::{ComparisonOperator::*, Condition, NumericExpression, NumericType};
use crate::model::{BaseCase, CostStructure, Direction, Model, Preference, StateMetadata, Transition};
use crate::state::{set_from, State, Value};
use crate::Number;

/// Traveling salesperson with time windows; customer 0 is the depot.
#[derive(Debug, Clone, PartialEq)]
pub struct TsptwInstance {
    pub n: usize,
    pub c: Vec<Vec<i64>>,
    pub a: Vec<i64>,
    pub b: Vec<i64>,
    /// Shortest travel times.
    pub cstar: Vec<Vec<i64>>,
    pub cin: Vec<i64>,
    pub cout: Vec<i64>,
}

impl TsptwInstance {
    pub fn new(c: Vec<Vec<i64>>, a: Vec<i64>, b: Vec<i64>) -> Result<Self, BenchmarkError> {
        let n = c.len();
        if n == 0 {
            return Err(super::invalid("at least the depot is required"));
        }
        square("travel times", &c, n)?;
        nonnegative("travel times", c.iter().flatten().copied())?;
        if a.len() != n || b.len() != n {
            return Err(super::invalid("one time window per customer is required"));
        }
        Ok(TsptwInstance {
            n,
            cstar: shortest_paths(&c),
            cin: min_in(&c),
            cout: min_out(&c),
            c,
            a,
            b,
        })
    }
}

pub fn build_tsptw(instance: &TsptwInstance) -> Result<Model, BenchmarkError> {
    let n = instance.n;
    let mut meta = StateMetadata::new();
    let customer = meta.add_object("customer", n)?;
    let u = meta.add_set_variable("U", customer)?;
    let i = meta.add_element_variable("i", customer, Preference::None)?;
    let t = meta.add_integer_variable("t", Preference::Less)?;

    let mut tables = TableBuilder::new(&meta);
    let a = tables.integer("a", &[customer], instance.a.clone());
    let b = tables.integer("b", &[customer], instance.b.clone());
    let c = tables.integer("c", &[customer, customer], flatten(&instance.c));
    let cstar = tables.integer("cstar", &[customer, customer], flatten(&instance.cstar));
    let cin = tables.integer("cin", &[customer], instance.cin.clone());
    let cout = tables.integer("cout", &[customer], instance.cout.clone());
    let tables = tables.finish();

    let target = State::new(vec![
        Value::Set(set_from(n, 1..n)),
        Value::Element(0),
        Value::Number(Number::Int(0)),
    ]);
    let cost = CostStructure::additive(Direction::Minimize, NumericType::Integer);
    let mut model = Model::new(meta, tables, target, cost)?;

    for j in 1..n {
        let travel = lookup(c, vec![i.into(), el(j)]);
        let arrival = NumericExpression::from(t) + travel.clone();
        model.add_transition(
            Transition::new(format!("visit {}", j))
                .precondition(crate::SetExpression::from(u).contains(j))
                .precondition(cmp(Le, arrival.clone(), lookup(b, vec![el(j)])))
                .set_effect(u, crate::SetExpression::from(u).remove(j))
                .element_effect(i, j)
                .numeric_effect(t, arrival.max(lookup(a, vec![el(j)])))
                .with_cost(travel),
        );
    }
    model.add_base_case(BaseCase::new(
        vec![crate::SetExpression::from(u).is_empty()],
        lookup(c, vec![i.into(), el(0)]),
    ));
    for j in 1..n {
        let earliest = NumericExpression::from(t) + lookup(cstar, vec![i.into(), el(j)]);
        model.add_constraint(Condition::or(
            crate::SetExpression::from(u).contains(j).not(),
            cmp(Le, earliest, lookup(b, vec![el(j)])),
        ));
    }
    model.add_dual_bound(
        NumericExpression::sum(cin, u.into()) + lookup(cin, vec![el(0)]),
    );
    model.add_dual_bound(
        NumericExpression::sum(cout, u.into()) + lookup(cout, vec![i.into()]),
    );
    Ok(model)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn desk() -> TsptwInstance {
        TsptwInstance::new(
            vec![vec![0, 2, 3], vec![2, 0, 1], vec![3, 1, 0]],
            vec![0, 0, 0],
            vec![10, 10, 10],
        )
        .unwrap()
    }

    #[test]
    fn derived_tables() {
        let d = desk();
        assert_eq!(d.cstar[0][2], 3);
        assert_eq!(d.cin, vec![2, 1, 1]);
        assert_eq!(d.cout, vec![2, 1, 1]);
    }

    #[test]
    fn dual_bound_at_target() {
        let model = build_tsptw(&desk()).unwrap();
        assert_eq!(model.eval_dual_bound(&model.target), Ok(Some(Number::Int(4))));
        assert_eq!(model.transitions.len(), 2);
        assert_eq!(model.constraints.len(), 2);
    }
}
