use super::element::eval_args;
use super::{ArgumentExpression, Condition, ElementExpression, EvalError, TableId, TableRegistry};
use crate::state::{Set, State};

/// Reductions of a set-valued table over index sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SetReduceOperator {
    Union,
    Intersection,
}

/// Expression evaluating to a subset of an object universe.
#[derive(Debug, Clone, PartialEq)]
pub enum SetExpression {
    Constant(Set),
    Variable(usize),
    Table(TableId, Vec<ElementExpression>),
    Add(ElementExpression, Box<SetExpression>),
    Remove(ElementExpression, Box<SetExpression>),
    Union(Box<SetExpression>, Box<SetExpression>),
    Intersection(Box<SetExpression>, Box<SetExpression>),
    Difference(Box<SetExpression>, Box<SetExpression>),
    /// Complement with respect to the operand's universe.
    Complement(Box<SetExpression>),
    Reduce(SetReduceOperator, TableId, Vec<ArgumentExpression>),
    If(Box<Condition>, Box<SetExpression>, Box<SetExpression>),
}

impl SetExpression {
    pub fn add(self, element: impl Into<ElementExpression>) -> SetExpression {
        SetExpression::Add(element.into(), Box::new(self))
    }

    pub fn remove(self, element: impl Into<ElementExpression>) -> SetExpression {
        SetExpression::Remove(element.into(), Box::new(self))
    }

    pub fn union(self, other: SetExpression) -> SetExpression {
        SetExpression::Union(Box::new(self), Box::new(other))
    }

    pub fn intersection(self, other: SetExpression) -> SetExpression {
        SetExpression::Intersection(Box::new(self), Box::new(other))
    }

    pub fn difference(self, other: SetExpression) -> SetExpression {
        SetExpression::Difference(Box::new(self), Box::new(other))
    }

    pub fn complement(self) -> SetExpression {
        SetExpression::Complement(Box::new(self))
    }

    pub fn contains(self, element: impl Into<ElementExpression>) -> Condition {
        Condition::IsIn(element.into(), self)
    }

    pub fn is_empty(self) -> Condition {
        Condition::IsEmpty(self)
    }

    pub fn eval(&self, state: &State, tables: &TableRegistry) -> Result<Set, EvalError> {
        match self {
            SetExpression::Constant(set) => Ok(set.clone()),
            SetExpression::Variable(index) => Ok(state.set(*index)?.clone()),
            SetExpression::Table(id, args) => {
                let args = eval_args(args, state, tables)?;
                Ok(tables.get(*id)?.set(&args)?.clone())
            }
            SetExpression::Add(element, set) => {
                let mut set = set.eval(state, tables)?;
                let element = element.eval(state, tables)?;
                if element >= set.len() {
                    return Err(EvalError::ElementOutOfUniverse {
                        element,
                        size: set.len(),
                    });
                }
                set.insert(element);
                Ok(set)
            }
            SetExpression::Remove(element, set) => {
                let mut set = set.eval(state, tables)?;
                let element = element.eval(state, tables)?;
                if element < set.len() {
                    set.set(element, false);
                }
                Ok(set)
            }
            SetExpression::Union(a, b) => {
                let mut a = a.eval(state, tables)?;
                a.union_with(&b.eval(state, tables)?);
                Ok(a)
            }
            SetExpression::Intersection(a, b) => {
                let mut a = a.eval(state, tables)?;
                a.intersect_with(&b.eval(state, tables)?);
                Ok(a)
            }
            SetExpression::Difference(a, b) => {
                let mut a = a.eval(state, tables)?;
                a.difference_with(&b.eval(state, tables)?);
                Ok(a)
            }
            SetExpression::Complement(a) => {
                let mut a = a.eval(state, tables)?;
                a.toggle_range(..);
                Ok(a)
            }
            SetExpression::Reduce(op, id, args) => {
                let table = tables.get(*id)?;
                let capacity = table.set_capacity().ok_or_else(|| EvalError::TableKindMismatch {
                    table: table.name.clone(),
                    expected: "set",
                    found: table.kind().name(),
                })?;
                let mut result = Set::with_capacity(capacity);
                if *op == SetReduceOperator::Intersection {
                    result.insert_range(..);
                }
                super::for_each_index_tuple(args, state, tables, |tuple| {
                    let value = table.set(tuple)?;
                    match op {
                        SetReduceOperator::Union => result.union_with(value),
                        SetReduceOperator::Intersection => result.intersect_with(value),
                    }
                    Ok(())
                })?;
                Ok(result)
            }
            SetExpression::If(condition, then, otherwise) => {
                if condition.eval(state, tables)? {
                    then.eval(state, tables)
                } else {
                    otherwise.eval(state, tables)
                }
            }
        }
    }
}
