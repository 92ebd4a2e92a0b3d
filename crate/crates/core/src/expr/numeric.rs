use super::element::{eval_args, BinaryOperator};
use super::number::{ceil_div, floor_div};
use super::{
    ArgumentExpression, Condition, ElementExpression, EvalError, Number, NumericType,
    SetExpression, TableId, TableKind, TableRegistry,
};
use crate::state::State;
use std::ops;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UnaryOperator {
    Neg,
    Abs,
    Floor,
    Ceil,
}

impl UnaryOperator {
    pub fn symbol(self) -> &'static str {
        match self {
            UnaryOperator::Neg => "neg",
            UnaryOperator::Abs => "abs",
            UnaryOperator::Floor => "floor",
            UnaryOperator::Ceil => "ceil",
        }
    }
}

/// Reductions of a numeric table over index sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReduceOperator {
    Sum,
    Product,
    Max,
    Min,
}

impl ReduceOperator {
    pub fn symbol(self) -> &'static str {
        match self {
            ReduceOperator::Sum => "sum",
            ReduceOperator::Product => "product",
            ReduceOperator::Max => "max",
            ReduceOperator::Min => "min",
        }
    }
}

/// Expression evaluating to an integer or continuous number.
#[derive(Debug, Clone, PartialEq)]
pub enum NumericExpression {
    Constant(Number),
    Variable(usize),
    /// Promotion of an element expression.
    Element(Box<ElementExpression>),
    Table(TableId, Vec<ElementExpression>),
    Binary(BinaryOperator, Box<NumericExpression>, Box<NumericExpression>),
    Unary(UnaryOperator, Box<NumericExpression>),
    /// Reduction of a table over the cartesian product of its arguments.
    Reduce(ReduceOperator, TableId, Vec<ArgumentExpression>),
    Cardinality(Box<SetExpression>),
    If(Box<Condition>, Box<NumericExpression>, Box<NumericExpression>),
    /// Placeholder for the cost of the successor state. Only meaningful while
    /// parsing a transition cost; evaluating it is an error.
    Cost,
}

impl NumericExpression {
    pub fn constant(value: impl Into<Number>) -> NumericExpression {
        NumericExpression::Constant(value.into())
    }

    pub fn real(value: f64) -> NumericExpression {
        NumericExpression::Constant(Number::Real(value))
    }

    pub fn table(table: TableId, args: Vec<ElementExpression>) -> NumericExpression {
        NumericExpression::Table(table, args)
    }

    pub fn reduce(
        op: ReduceOperator,
        table: TableId,
        args: Vec<ArgumentExpression>,
    ) -> NumericExpression {
        NumericExpression::Reduce(op, table, args)
    }

    /// Sum of a one-dimensional table over a set.
    pub fn sum(table: TableId, over: SetExpression) -> NumericExpression {
        NumericExpression::Reduce(ReduceOperator::Sum, table, vec![over.into()])
    }

    pub fn cardinality(set: SetExpression) -> NumericExpression {
        NumericExpression::Cardinality(Box::new(set))
    }

    pub fn if_then_else(
        condition: Condition,
        then: impl Into<NumericExpression>,
        otherwise: impl Into<NumericExpression>,
    ) -> NumericExpression {
        NumericExpression::If(
            Box::new(condition),
            Box::new(then.into()),
            Box::new(otherwise.into()),
        )
    }

    pub fn max(self, other: impl Into<NumericExpression>) -> NumericExpression {
        NumericExpression::Binary(BinaryOperator::Max, Box::new(self), Box::new(other.into()))
    }

    pub fn min(self, other: impl Into<NumericExpression>) -> NumericExpression {
        NumericExpression::Binary(BinaryOperator::Min, Box::new(self), Box::new(other.into()))
    }

    pub fn floor(self) -> NumericExpression {
        NumericExpression::Unary(UnaryOperator::Floor, Box::new(self))
    }

    pub fn ceil(self) -> NumericExpression {
        NumericExpression::Unary(UnaryOperator::Ceil, Box::new(self))
    }

    pub fn abs(self) -> NumericExpression {
        NumericExpression::Unary(UnaryOperator::Abs, Box::new(self))
    }

    pub fn eval(&self, state: &State, tables: &TableRegistry) -> Result<Number, EvalError> {
        match self {
            NumericExpression::Constant(v) => Ok(*v),
            NumericExpression::Variable(index) => state.number(*index),
            NumericExpression::Element(e) => Ok(Number::Int(e.eval(state, tables)? as i64)),
            NumericExpression::Table(id, args) => {
                let args = eval_args(args, state, tables)?;
                tables.get(*id)?.number(&args)
            }
            NumericExpression::Binary(op, lhs, rhs) => {
                let a = lhs.eval(state, tables)?;
                let b = rhs.eval(state, tables)?;
                match op {
                    BinaryOperator::Add => a.checked_add(b),
                    BinaryOperator::Sub => a.checked_sub(b),
                    BinaryOperator::Mul => a.checked_mul(b),
                    BinaryOperator::Div => a.checked_div(b),
                    BinaryOperator::Mod => match (a, b) {
                        (Number::Int(_), Number::Int(0)) => Err(EvalError::DivisionByZero),
                        (Number::Int(x), Number::Int(y)) => Ok(Number::Int(x % y)),
                        _ if b.as_f64() == 0.0 => Err(EvalError::DivisionByZero),
                        _ => Number::real(a.as_f64() % b.as_f64()),
                    },
                    BinaryOperator::Max => Ok(a.max(b)),
                    BinaryOperator::Min => Ok(a.min(b)),
                }
            }
            NumericExpression::Unary(op, inner) => {
                if matches!(op, UnaryOperator::Floor | UnaryOperator::Ceil) {
                    // Integer quotients are rounded exactly.
                    if let NumericExpression::Binary(BinaryOperator::Div, lhs, rhs) = inner.as_ref()
                    {
                        let a = lhs.eval(state, tables)?;
                        let b = rhs.eval(state, tables)?;
                        if let (Number::Int(x), Number::Int(y)) = (a, b) {
                            let q = if *op == UnaryOperator::Floor {
                                floor_div(x, y)?
                            } else {
                                ceil_div(x, y)?
                            };
                            return Ok(Number::Int(q));
                        }
                        let q = a.checked_div(b)?;
                        return if *op == UnaryOperator::Floor {
                            q.floor()
                        } else {
                            q.ceil()
                        };
                    }
                }
                let v = inner.eval(state, tables)?;
                match op {
                    UnaryOperator::Neg => v.neg(),
                    UnaryOperator::Abs => v.abs(),
                    UnaryOperator::Floor => v.floor(),
                    UnaryOperator::Ceil => v.ceil(),
                }
            }
            NumericExpression::Reduce(op, id, args) => {
                let table = tables.get(*id)?;
                let mut acc: Option<Number> = None;
                super::for_each_index_tuple(args, state, tables, |tuple| {
                    let v = table.number(tuple)?;
                    acc = Some(match acc {
                        None => v,
                        Some(a) => match op {
                            ReduceOperator::Sum => a.checked_add(v)?,
                            ReduceOperator::Product => a.checked_mul(v)?,
                            ReduceOperator::Max => a.max(v),
                            ReduceOperator::Min => a.min(v),
                        },
                    });
                    Ok(())
                })?;
                match (acc, op) {
                    (Some(v), _) => Ok(v),
                    (None, ReduceOperator::Sum) => Ok(zero_like(table.kind())),
                    (None, ReduceOperator::Product) => Ok(one_like(table.kind())),
                    (None, _) => Err(EvalError::EmptyReduction(table.name.clone())),
                }
            }
            NumericExpression::Cardinality(set) => {
                Ok(Number::Int(set.eval(state, tables)?.count_ones(..) as i64))
            }
            NumericExpression::If(condition, then, otherwise) => {
                if condition.eval(state, tables)? {
                    then.eval(state, tables)
                } else {
                    otherwise.eval(state, tables)
                }
            }
            NumericExpression::Cost => Err(EvalError::CostPlaceholder),
        }
    }

    /// Static type of the expression given the types of the numeric variables.
    ///
    /// A bare division is continuous; wrapping it in `floor` or `ceil` yields an integer.
    pub fn numeric_type(
        &self,
        variable_type: &dyn Fn(usize) -> NumericType,
        tables: &TableRegistry,
    ) -> NumericType {
        let table_type = |id: &TableId| match tables.get(*id).map(|t| t.kind()) {
            Ok(TableKind::Continuous) => NumericType::Continuous,
            _ => NumericType::Integer,
        };
        match self {
            NumericExpression::Constant(v) => v.numeric_type(),
            NumericExpression::Variable(index) => variable_type(*index),
            NumericExpression::Element(_) | NumericExpression::Cardinality(_) => {
                NumericType::Integer
            }
            NumericExpression::Table(id, _) | NumericExpression::Reduce(_, id, _) => table_type(id),
            NumericExpression::Binary(BinaryOperator::Div, ..) => NumericType::Continuous,
            NumericExpression::Binary(_, a, b) => a
                .numeric_type(variable_type, tables)
                .join(b.numeric_type(variable_type, tables)),
            NumericExpression::Unary(UnaryOperator::Floor | UnaryOperator::Ceil, _) => {
                NumericType::Integer
            }
            NumericExpression::Unary(_, a) => a.numeric_type(variable_type, tables),
            NumericExpression::If(_, a, b) => a
                .numeric_type(variable_type, tables)
                .join(b.numeric_type(variable_type, tables)),
            NumericExpression::Cost => NumericType::Integer,
        }
    }

    /// Whether the successor-cost placeholder occurs anywhere in the tree.
    pub fn contains_cost(&self) -> bool {
        match self {
            NumericExpression::Cost => true,
            NumericExpression::Binary(_, a, b) => a.contains_cost() || b.contains_cost(),
            NumericExpression::Unary(_, a) => a.contains_cost(),
            NumericExpression::If(_, a, b) => a.contains_cost() || b.contains_cost(),
            _ => false,
        }
    }
}

fn zero_like(kind: TableKind) -> Number {
    match kind {
        TableKind::Continuous => Number::Real(0.0),
        _ => Number::Int(0),
    }
}

fn one_like(kind: TableKind) -> Number {
    match kind {
        TableKind::Continuous => Number::Real(1.0),
        _ => Number::Int(1),
    }
}

impl From<i64> for NumericExpression {
    fn from(v: i64) -> Self {
        NumericExpression::Constant(Number::Int(v))
    }
}

impl From<Number> for NumericExpression {
    fn from(v: Number) -> Self {
        NumericExpression::Constant(v)
    }
}

impl From<ElementExpression> for NumericExpression {
    fn from(e: ElementExpression) -> Self {
        NumericExpression::Element(Box::new(e))
    }
}

macro_rules! numeric_op {
    ($trait:ident, $method:ident, $op:expr) => {
        impl<T: Into<NumericExpression>> ops::$trait<T> for NumericExpression {
            type Output = NumericExpression;

            fn $method(self, rhs: T) -> NumericExpression {
                NumericExpression::Binary($op, Box::new(self), Box::new(rhs.into()))
            }
        }
    };
}

numeric_op!(Add, add, BinaryOperator::Add);
numeric_op!(Sub, sub, BinaryOperator::Sub);
numeric_op!(Mul, mul, BinaryOperator::Mul);
numeric_op!(Div, div, BinaryOperator::Div);
