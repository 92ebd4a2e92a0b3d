use super::{
    cmp, el, flatten, invalid, lookup, min_in, min_out, nonnegative, shortest_paths, square,
    BenchmarkError, TableBuilder, FLOOR_MARGIN,
};
use crate::expr::{ComparisonOperator::*, Condition, NumericExpression, NumericType, SetExpression};
use crate::model::{BaseCase, CostStructure, Direction, Model, Preference, StateMetadata, Transition};
use crate::state::{set_from, State, Value};
use crate::Number;

/// Orienteering with time windows; node 0 is the depot, which closes at `b[0]`.
/// Service times are assumed to be folded into the travel times.
///
/// The time-based dominance of the model is only sound when travel times
/// satisfy the triangle inequality.
#[derive(Debug, Clone, PartialEq)]
pub struct OptwInstance {
    pub n: usize,
    pub c: Vec<Vec<i64>>,
    pub a: Vec<i64>,
    pub b: Vec<i64>,
    pub profit: Vec<i64>,
    pub cstar: Vec<Vec<i64>>,
    pub cin: Vec<i64>,
    pub cout: Vec<i64>,
    /// `profit / cin`.
    pub efficiency_in: Vec<f64>,
    /// `profit / cout`.
    pub efficiency_out: Vec<f64>,
}

impl OptwInstance {
    pub fn new(
        c: Vec<Vec<i64>>,
        a: Vec<i64>,
        b: Vec<i64>,
        profit: Vec<i64>,
    ) -> Result<Self, BenchmarkError> {
        let n = c.len();
        if n == 0 {
            return Err(invalid("at least the depot is required"));
        }
        square("travel times", &c, n)?;
        if (0..n).any(|i| (0..n).any(|j| i != j && c[i][j] <= 0)) {
            return Err(invalid("travel times between distinct nodes must be positive"));
        }
        if a.len() != n || b.len() != n || profit.len() != n {
            return Err(invalid("windows and profits are required for every node"));
        }
        nonnegative("profits", profit.iter().copied())?;
        let cin = min_in(&c);
        let cout = min_out(&c);
        let ratio = |p: i64, d: i64| if d > 0 { p as f64 / d as f64 } else { 0.0 };
        let efficiency_in = (0..n).map(|j| ratio(profit[j], cin[j])).collect();
        let efficiency_out = (0..n).map(|j| ratio(profit[j], cout[j])).collect();
        Ok(OptwInstance {
            n,
            cstar: shortest_paths(&c),
            cin,
            cout,
            efficiency_in,
            efficiency_out,
            c,
            a,
            b,
            profit,
        })
    }
}

pub fn build_optw(instance: &OptwInstance) -> Result<Model, BenchmarkError> {
    let n = instance.n;
    let mut meta = StateMetadata::new();
    let customer = meta.add_object("customer", n)?;
    let u = meta.add_set_variable("U", customer)?;
    let i = meta.add_element_variable("i", customer, Preference::None)?;
    let t = meta.add_integer_variable("t", Preference::Less)?;

    let mut tables = TableBuilder::new(&meta);
    let a = tables.integer("a", &[customer], instance.a.clone());
    let b = tables.integer("b", &[customer], instance.b.clone());
    let p = tables.integer("p", &[customer], instance.profit.clone());
    let c = tables.integer("c", &[customer, customer], flatten(&instance.c));
    let cstar = tables.integer("cstar", &[customer, customer], flatten(&instance.cstar));
    let cin = tables.integer("cin", &[customer], instance.cin.clone());
    let cout = tables.integer("cout", &[customer], instance.cout.clone());
    let ein = tables.continuous("ein", &[customer], instance.efficiency_in.clone());
    let eout = tables.continuous("eout", &[customer], instance.efficiency_out.clone());
    let tables = tables.finish();

    let target = State::new(vec![
        Value::Set(set_from(n, 1..n)),
        Value::Element(0),
        Value::Number(Number::Int(0)),
    ]);
    let cost = CostStructure::additive(Direction::Maximize, NumericType::Integer);
    let mut model = Model::new(meta, tables, target, cost)?;
    let open = || SetExpression::from(u);
    let time = || NumericExpression::from(t);
    let deadline = |j: usize| lookup(b, vec![el(j)]);

    // leaving j for the depot after waiting for its window to open
    let departure = |arrival: NumericExpression, j: usize| arrival.max(lookup(a, vec![el(j)]));
    // j can no longer be visited, or the depot can no longer be reached after it
    let unreachable = |j: usize| {
        let arrival = time() + lookup(cstar, vec![i.into(), el(j)]);
        Condition::or(
            cmp(Gt, arrival.clone(), deadline(j)),
            cmp(Gt, departure(arrival, j) + lookup(cstar, vec![el(j), el(0)]), deadline(0)),
        )
    };
    // j can be visited directly and the depot reached afterwards
    let visitable = |j: usize| {
        let arrival = time() + lookup(c, vec![i.into(), el(j)]);
        Condition::And(vec![
            open().contains(j),
            cmp(Le, arrival.clone(), deadline(j)),
            cmp(Le, departure(arrival, j) + lookup(cstar, vec![el(j), el(0)]), deadline(0)),
        ])
    };

    for j in 1..n {
        model.add_transition(
            Transition::new(format!("remove {}", j))
                .precondition(open().contains(j))
                .precondition(unreachable(j))
                .set_effect(u, open().remove(j))
                .forced(),
        );
    }
    let nothing_visitable = Condition::And((1..n).map(|k| visitable(k).not()).collect());
    for j in 1..n {
        model.add_transition(
            Transition::new(format!("skip {}", j))
                .precondition(open().contains(j))
                .precondition(nothing_visitable.clone())
                .set_effect(u, open().remove(j))
                .forced(),
        );
    }
    for j in 1..n {
        let arrival = time() + lookup(c, vec![i.into(), el(j)]);
        model.add_transition(
            Transition::new(format!("visit {}", j))
                .precondition(open().contains(j))
                .precondition(cmp(Le, arrival.clone(), deadline(j)))
                .precondition(cmp(
                    Le,
                    departure(arrival.clone(), j) + lookup(cstar, vec![el(j), el(0)]),
                    deadline(0),
                ))
                .set_effect(u, open().remove(j))
                .element_effect(i, j)
                .numeric_effect(t, arrival.max(lookup(a, vec![el(j)])))
                .with_cost(lookup(p, vec![el(j)])),
        );
    }
    model.add_base_case(BaseCase::new(
        vec![
            open().is_empty(),
            cmp(Le, time() + lookup(c, vec![i.into(), el(0)]), deadline(0)),
        ],
        0,
    ));

    // sums and maxima over the customers that can still be visited, U \ Y
    let candidate = |j: usize| Condition::And(vec![open().contains(j), unreachable(j).not()]);
    let profit_bound = (1..n).fold(NumericExpression::constant(0), |acc, j| {
        acc + NumericExpression::if_then_else(candidate(j), lookup(p, vec![el(j)]), 0)
    });
    let best = |e| {
        (1..n).fold(NumericExpression::real(0.0), |acc, j| {
            acc.max(NumericExpression::if_then_else(
                candidate(j),
                lookup(e, vec![el(j)]),
                NumericExpression::real(0.0),
            ))
        })
    };
    let slack_in = deadline(0) - time() - lookup(cin, vec![el(0)]);
    let slack_out = deadline(0) - time() - lookup(cout, vec![i.into()]);
    model.add_dual_bound(profit_bound);
    model.add_dual_bound((slack_in * best(ein) + NumericExpression::real(FLOOR_MARGIN)).floor());
    model.add_dual_bound((slack_out * best(eout) + NumericExpression::real(FLOOR_MARGIN)).floor());
    Ok(model)
}
