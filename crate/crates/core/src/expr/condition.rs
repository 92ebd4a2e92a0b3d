use super::element::eval_args;
use super::{ElementExpression, EvalError, NumericExpression, SetExpression, TableId, TableRegistry};
use crate::state::State;
use std::cmp::Ordering;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ComparisonOperator {
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
}

impl ComparisonOperator {
    pub fn symbol(self) -> &'static str {
        match self {
            ComparisonOperator::Eq => "=",
            ComparisonOperator::Ne => "!=",
            ComparisonOperator::Lt => "<",
            ComparisonOperator::Le => "<=",
            ComparisonOperator::Gt => ">",
            ComparisonOperator::Ge => ">=",
        }
    }

    pub fn holds(self, ordering: Ordering) -> bool {
        match self {
            ComparisonOperator::Eq => ordering == Ordering::Equal,
            ComparisonOperator::Ne => ordering != Ordering::Equal,
            ComparisonOperator::Lt => ordering == Ordering::Less,
            ComparisonOperator::Le => ordering != Ordering::Greater,
            ComparisonOperator::Gt => ordering == Ordering::Greater,
            ComparisonOperator::Ge => ordering != Ordering::Less,
        }
    }
}

/// Boolean expression over a state.
#[derive(Debug, Clone, PartialEq)]
pub enum Condition {
    Constant(bool),
    Not(Box<Condition>),
    /// Conjunction; empty is true.
    And(Vec<Condition>),
    /// Disjunction; empty is false.
    Or(Vec<Condition>),
    ElementCmp(ComparisonOperator, ElementExpression, ElementExpression),
    NumericCmp(ComparisonOperator, NumericExpression, NumericExpression),
    /// Set equality (`Eq`) or inequality (`Ne`); other operators are rejected.
    SetCmp(ComparisonOperator, SetExpression, SetExpression),
    IsIn(ElementExpression, SetExpression),
    IsSubset(SetExpression, SetExpression),
    IsEmpty(SetExpression),
    Table(TableId, Vec<ElementExpression>),
}

impl Condition {
    pub fn and(self, other: Condition) -> Condition {
        match self {
            Condition::And(mut conditions) => {
                conditions.push(other);
                Condition::And(conditions)
            }
            c => Condition::And(vec![c, other]),
        }
    }

    pub fn or(self, other: Condition) -> Condition {
        Condition::Or(vec![self, other])
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Condition {
        Condition::Not(Box::new(self))
    }

    pub fn numeric(
        op: ComparisonOperator,
        lhs: impl Into<NumericExpression>,
        rhs: impl Into<NumericExpression>,
    ) -> Condition {
        Condition::NumericCmp(op, lhs.into(), rhs.into())
    }

    pub fn element(
        op: ComparisonOperator,
        lhs: impl Into<ElementExpression>,
        rhs: impl Into<ElementExpression>,
    ) -> Condition {
        Condition::ElementCmp(op, lhs.into(), rhs.into())
    }

    pub fn eval(&self, state: &State, tables: &TableRegistry) -> Result<bool, EvalError> {
        match self {
            Condition::Constant(b) => Ok(*b),
            Condition::Not(c) => Ok(!c.eval(state, tables)?),
            Condition::And(conditions) => {
                for c in conditions {
                    if !c.eval(state, tables)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            Condition::Or(conditions) => {
                for c in conditions {
                    if c.eval(state, tables)? {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
            Condition::ElementCmp(op, a, b) => {
                let a = a.eval(state, tables)?;
                let b = b.eval(state, tables)?;
                Ok(op.holds(a.cmp(&b)))
            }
            Condition::NumericCmp(op, a, b) => {
                let a = a.eval(state, tables)?;
                let b = b.eval(state, tables)?;
                Ok(op.holds(a.cmp(&b)))
            }
            Condition::SetCmp(op, a, b) => {
                let a = a.eval(state, tables)?;
                let b = b.eval(state, tables)?;
                let equal = a.ones().eq(b.ones());
                match op {
                    ComparisonOperator::Eq => Ok(equal),
                    ComparisonOperator::Ne => Ok(!equal),
                    _ => Err(EvalError::SetOrdering(op.symbol())),
                }
            }
            Condition::IsIn(e, s) => {
                let e = e.eval(state, tables)?;
                Ok(s.eval(state, tables)?.contains(e))
            }
            Condition::IsSubset(a, b) => {
                let a = a.eval(state, tables)?;
                let b = b.eval(state, tables)?;
                Ok(a.ones().all(|e| b.contains(e)))
            }
            Condition::IsEmpty(s) => Ok(s.eval(state, tables)?.is_clear()),
            Condition::Table(id, args) => {
                let args = eval_args(args, state, tables)?;
                tables.get(*id)?.boolean(&args)
            }
        }
    }
}

impl From<bool> for Condition {
    fn from(b: bool) -> Self {
        Condition::Constant(b)
    }
}
