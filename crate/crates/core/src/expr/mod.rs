//! Expressions over states: elements, sets, numbers and conditions, plus the
//! constant tables they index.

mod condition;
mod element;
mod number;
mod numeric;
mod set;
mod table;

pub use condition::{ComparisonOperator, Condition};
pub use element::{BinaryOperator, ElementExpression};
pub use number::{ceil_div, floor_div, Number, NumericType};
pub use numeric::{NumericExpression, ReduceOperator, UnaryOperator};
pub use set::{SetExpression, SetReduceOperator};
pub use table::{Table, TableData, TableId, TableKind, TableRegistry};

use crate::state::State;
use thiserror::Error;

/// Errors raised while evaluating an expression or building tables.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("result is not a number")]
    NotANumber,
    #[error("value {0} is not integral")]
    NotIntegral(f64),
    #[error("integer overflow")]
    Overflow,
    #[error("division by zero")]
    DivisionByZero,
    #[error("unknown state variable {0}")]
    UnknownVariable(usize),
    #[error("variable {variable} is {found}, expected {expected}")]
    KindMismatch {
        variable: usize,
        expected: &'static str,
        found: &'static str,
    },
    #[error("element expression evaluated to negative value {0}")]
    NegativeElement(i64),
    #[error("element {element} outside a universe of {size} objects")]
    ElementOutOfUniverse { element: usize, size: usize },
    #[error("table `{table}` takes {expected} arguments, got {found}")]
    TableArity {
        table: String,
        expected: usize,
        found: usize,
    },
    #[error("index {index} out of range for argument {position} of table `{table}` (size {size})")]
    TableIndexOutOfRange {
        table: String,
        position: usize,
        index: usize,
        size: usize,
    },
    #[error("table `{table}` is {found}, expected {expected}")]
    TableKindMismatch {
        table: String,
        expected: &'static str,
        found: &'static str,
    },
    #[error("duplicate table `{0}`")]
    DuplicateTable(String),
    #[error("table `{table}` expects {expected} entries, got {found}")]
    TableShape {
        table: String,
        expected: usize,
        found: usize,
    },
    #[error("unknown table {0}")]
    UnknownTable(usize),
    #[error("max/min reduction of table `{0}` over an empty set")]
    EmptyReduction(String),
    #[error("sets cannot be compared with `{0}`")]
    SetOrdering(&'static str),
    #[error("`cost` can only appear in a transition cost")]
    CostPlaceholder,
}

/// Argument of a table reduction: a single index or every member of a set.
#[derive(Debug, Clone, PartialEq)]
pub enum ArgumentExpression {
    Element(ElementExpression),
    Set(SetExpression),
}

impl From<ElementExpression> for ArgumentExpression {
    fn from(e: ElementExpression) -> Self {
        ArgumentExpression::Element(e)
    }
}

impl From<SetExpression> for ArgumentExpression {
    fn from(s: SetExpression) -> Self {
        ArgumentExpression::Set(s)
    }
}

/// Calls `f` on every tuple in the cartesian product of the evaluated arguments.
pub(crate) fn for_each_index_tuple<F>(
    args: &[ArgumentExpression],
    state: &State,
    tables: &TableRegistry,
    mut f: F,
) -> Result<(), EvalError>
where
    F: FnMut(&[usize]) -> Result<(), EvalError>,
{
    let mut domains = Vec::with_capacity(args.len());
    for arg in args {
        let values: Vec<usize> = match arg {
            ArgumentExpression::Element(e) => vec![e.eval(state, tables)?],
            ArgumentExpression::Set(s) => s.eval(state, tables)?.ones().collect(),
        };
        if values.is_empty() {
            return Ok(());
        }
        domains.push(values);
    }
    let mut cursor = vec![0; domains.len()];
    let mut tuple: Vec<usize> = domains.iter().map(|d| d[0]).collect();
    loop {
        f(&tuple)?;
        let mut position = domains.len();
        loop {
            if position == 0 {
                return Ok(());
            }
            position -= 1;
            cursor[position] += 1;
            if cursor[position] < domains[position].len() {
                tuple[position] = domains[position][cursor[position]];
                break;
            }
            cursor[position] = 0;
            tuple[position] = domains[position][0];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::{set_from, Value};
    use proptest::prelude::*;

    fn registry() -> (TableRegistry, TableId, TableId) {
        let mut tables = TableRegistry::new();
        let w = tables
            .add(Table {
                name: "w".into(),
                arg_objects: vec![0],
                arg_sizes: vec![4],
                value_object: None,
                data: TableData::Integer(vec![5, 4, 3, 3]),
            })
            .unwrap();
        let c = tables
            .add(Table {
                name: "c".into(),
                arg_objects: vec![0, 0],
                arg_sizes: vec![4, 4],
                value_object: None,
                data: TableData::Integer((0..16).collect()),
            })
            .unwrap();
        (tables, w, c)
    }

    fn state(members: &[usize], i: usize, t: i64) -> State {
        State::new(vec![
            Value::Set(set_from(4, members.iter().copied())),
            Value::Element(i),
            Value::Number(Number::Int(t)),
        ])
    }

    #[test]
    fn sum_over_set_and_empty_reductions() {
        let (tables, w, _) = registry();
        let s = state(&[0, 2, 3], 1, 0);
        let sum = NumericExpression::sum(w, SetExpression::Variable(0));
        assert_eq!(sum.eval(&s, &tables), Ok(Number::Int(11)));
        let empty = state(&[], 1, 0);
        assert_eq!(sum.eval(&empty, &tables), Ok(Number::Int(0)));
        let max = NumericExpression::reduce(
            ReduceOperator::Max,
            w,
            vec![SetExpression::Variable(0).into()],
        );
        assert!(matches!(
            max.eval(&empty, &tables),
            Err(EvalError::EmptyReduction(_))
        ));
    }

    #[test]
    fn two_dimensional_reduction() {
        let (tables, _, c) = registry();
        let s = state(&[1, 3], 2, 0);
        // sum over j in {1, 3} of c[i][j] with i = 2: 9 + 11
        let e = NumericExpression::reduce(
            ReduceOperator::Sum,
            c,
            vec![
                ElementExpression::Variable(1).into(),
                SetExpression::Variable(0).into(),
            ],
        );
        assert_eq!(e.eval(&s, &tables), Ok(Number::Int(20)));
    }

    #[test]
    fn division_is_continuous_unless_rounded() {
        let (tables, _, _) = registry();
        let s = state(&[], 0, 7);
        let t = NumericExpression::Variable(2);
        let div = t.clone() / 2;
        assert_eq!(div.eval(&s, &tables), Ok(Number::Real(3.5)));
        assert_eq!((t.clone() / 2).ceil().eval(&s, &tables), Ok(Number::Int(4)));
        let neg = NumericExpression::constant(-7) / 2;
        assert_eq!(neg.floor().eval(&s, &tables), Ok(Number::Int(-4)));
        let ty = |_: usize| NumericType::Integer;
        assert_eq!(div.numeric_type(&ty, &tables), NumericType::Continuous);
        assert_eq!(
            (t / 2).floor().numeric_type(&ty, &tables),
            NumericType::Integer
        );
    }

    #[test]
    fn conditions_short_circuit() {
        let (tables, w, _) = registry();
        let s = state(&[], 0, 0);
        let failing = Condition::numeric(
            ComparisonOperator::Lt,
            NumericExpression::table(w, vec![ElementExpression::Constant(9)]),
            0,
        );
        assert_eq!(
            Condition::And(vec![false.into(), failing.clone()]).eval(&s, &tables),
            Ok(false)
        );
        assert_eq!(
            Condition::Or(vec![true.into(), failing.clone()]).eval(&s, &tables),
            Ok(true)
        );
        assert!(failing.eval(&s, &tables).is_err());
    }

    #[test]
    fn set_operations() {
        let (tables, _, _) = registry();
        let s = state(&[0, 2], 1, 0);
        let u = SetExpression::Variable(0);
        let added = u.clone().add(ElementExpression::Variable(1));
        assert_eq!(added.eval(&s, &tables), Ok(set_from(4, [0, 1, 2])));
        assert_eq!(
            u.clone().complement().eval(&s, &tables),
            Ok(set_from(4, [1, 3]))
        );
        assert!(matches!(
            u.clone().add(7usize).eval(&s, &tables),
            Err(EvalError::ElementOutOfUniverse { element: 7, size: 4 })
        ));
        assert_eq!(
            Condition::IsSubset(u.clone(), added).eval(&s, &tables),
            Ok(true)
        );
        assert_eq!(u.contains(1usize).eval(&s, &tables), Ok(false));
    }

    #[test]
    fn cost_placeholder_does_not_evaluate() {
        let (tables, _, _) = registry();
        let s = state(&[], 0, 0);
        let e = NumericExpression::constant(1) + NumericExpression::Cost;
        assert!(e.contains_cost());
        assert_eq!(e.eval(&s, &tables), Err(EvalError::CostPlaceholder));
    }

    fn arb_int_expr() -> impl Strategy<Value = NumericExpression> {
        let leaf = prop_oneof![
            (-50i64..50).prop_map(NumericExpression::from),
            Just(NumericExpression::Variable(2)),
            Just(NumericExpression::cardinality(SetExpression::Variable(0))),
        ];
        leaf.prop_recursive(4, 24, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| a + b),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| a - b),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| a * b),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| a.max(b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| (a / b).floor()),
                inner.prop_map(|a| a.abs()),
            ]
        })
    }

    proptest! {
        #[test]
        fn integer_expressions_stay_integer_and_pure(
            e in arb_int_expr(),
            members in proptest::collection::vec(0usize..4, 0..4),
            t in -20i64..20,
        ) {
            let (tables, _, _) = registry();
            let s = state(&members, 0, t);
            let before = s.clone();
            let first = e.eval(&s, &tables);
            prop_assert_eq!(&s, &before);
            prop_assert_eq!(&first, &e.eval(&s, &tables));
            let ty = |_: usize| NumericType::Integer;
            if let Ok(v) = first {
                prop_assert_eq!(e.numeric_type(&ty, &tables), NumericType::Integer);
                prop_assert!(matches!(v, Number::Int(_)));
            }
        }

        #[test]
        fn index_tuples_match_nested_loops(
            a in proptest::collection::btree_set(0usize..4, 0..4),
            b in proptest::collection::btree_set(0usize..4, 0..4),
        ) {
            let (tables, _, _) = registry();
            let s = State::new(vec![
                Value::Set(set_from(4, a.iter().copied())),
                Value::Set(set_from(4, b.iter().copied())),
            ]);
            let mut seen = Vec::new();
            for_each_index_tuple(
                &[SetExpression::Variable(0).into(), SetExpression::Variable(1).into()],
                &s,
                &tables,
                |t| {
                    seen.push((t[0], t[1]));
                    Ok(())
                },
            )
            .unwrap();
            let mut expected = Vec::new();
            for &x in &a {
                for &y in &b {
                    expected.push((x, y));
                }
            }
            prop_assert_eq!(seen, expected);
        }
    }
}
