use super::{Condition, EvalError, TableId, TableRegistry};
use crate::state::State;
use std::ops;

/// Arithmetic operators shared by element and numeric expressions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinaryOperator {
    Add,
    Sub,
    Mul,
    Div,
    Mod,
    Max,
    Min,
}

impl BinaryOperator {
    pub fn symbol(self) -> &'static str {
        match self {
            BinaryOperator::Add => "+",
            BinaryOperator::Sub => "-",
            BinaryOperator::Mul => "*",
            BinaryOperator::Div => "/",
            BinaryOperator::Mod => "%",
            BinaryOperator::Max => "max",
            BinaryOperator::Min => "min",
        }
    }
}

/// Expression evaluating to a nonnegative integer (an object index or a count).
#[derive(Debug, Clone, PartialEq)]
pub enum ElementExpression {
    Constant(usize),
    Variable(usize),
    Table(TableId, Vec<ElementExpression>),
    Binary(BinaryOperator, Box<ElementExpression>, Box<ElementExpression>),
    If(Box<Condition>, Box<ElementExpression>, Box<ElementExpression>),
}

impl ElementExpression {
    pub fn table(table: TableId, args: Vec<ElementExpression>) -> ElementExpression {
        ElementExpression::Table(table, args)
    }

    pub fn if_then_else(
        condition: Condition,
        then: ElementExpression,
        otherwise: ElementExpression,
    ) -> ElementExpression {
        ElementExpression::If(Box::new(condition), Box::new(then), Box::new(otherwise))
    }

    pub fn eval(&self, state: &State, tables: &TableRegistry) -> Result<usize, EvalError> {
        let value = self.eval_signed(state, tables)?;
        usize::try_from(value).map_err(|_| EvalError::NegativeElement(value))
    }

    fn eval_signed(&self, state: &State, tables: &TableRegistry) -> Result<i64, EvalError> {
        match self {
            ElementExpression::Constant(v) => Ok(*v as i64),
            ElementExpression::Variable(index) => Ok(state.element(*index)? as i64),
            ElementExpression::Table(id, args) => {
                let args = eval_args(args, state, tables)?;
                Ok(tables.get(*id)?.element(&args)? as i64)
            }
            ElementExpression::Binary(op, lhs, rhs) => {
                let a = lhs.eval_signed(state, tables)?;
                let b = rhs.eval_signed(state, tables)?;
                let value = match op {
                    BinaryOperator::Add => a.checked_add(b).ok_or(EvalError::Overflow)?,
                    BinaryOperator::Sub => a.checked_sub(b).ok_or(EvalError::Overflow)?,
                    BinaryOperator::Mul => a.checked_mul(b).ok_or(EvalError::Overflow)?,
                    BinaryOperator::Div => {
                        if b == 0 {
                            return Err(EvalError::DivisionByZero);
                        }
                        a / b
                    }
                    BinaryOperator::Mod => {
                        if b == 0 {
                            return Err(EvalError::DivisionByZero);
                        }
                        a % b
                    }
                    BinaryOperator::Max => a.max(b),
                    BinaryOperator::Min => a.min(b),
                };
                if value < 0 {
                    Err(EvalError::NegativeElement(value))
                } else {
                    Ok(value)
                }
            }
            ElementExpression::If(condition, then, otherwise) => {
                if condition.eval(state, tables)? {
                    then.eval_signed(state, tables)
                } else {
                    otherwise.eval_signed(state, tables)
                }
            }
        }
    }
}

pub(crate) fn eval_args(
    args: &[ElementExpression],
    state: &State,
    tables: &TableRegistry,
) -> Result<Vec<usize>, EvalError> {
    args.iter().map(|a| a.eval(state, tables)).collect()
}

impl From<usize> for ElementExpression {
    fn from(v: usize) -> Self {
        ElementExpression::Constant(v)
    }
}

macro_rules! element_op {
    ($trait:ident, $method:ident, $op:expr) => {
        impl<T: Into<ElementExpression>> ops::$trait<T> for ElementExpression {
            type Output = ElementExpression;

            fn $method(self, rhs: T) -> ElementExpression {
                ElementExpression::Binary($op, Box::new(self), Box::new(rhs.into()))
            }
        }
    };
}

element_op!(Add, add, BinaryOperator::Add);
element_op!(Sub, sub, BinaryOperator::Sub);
element_op!(Mul, mul, BinaryOperator::Mul);
element_op!(Div, div, BinaryOperator::Div);
element_op!(Rem, rem, BinaryOperator::Mod);
