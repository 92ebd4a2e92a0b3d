use crate::expr::{EvalError, Number};
use fixedbitset::FixedBitSet;
use std::fmt;

/// A set of object indices stored as a fixed-length bit vector.
/// The length of the bit vector is the size of the object universe.
pub type Set = FixedBitSet;

/// Builds a set over a universe of `capacity` objects.
pub fn set_from(capacity: usize, elements: impl IntoIterator<Item = usize>) -> Set {
    let mut set = FixedBitSet::with_capacity(capacity);
    for e in elements {
        set.insert(e);
    }
    set
}

/// The value of a single state variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Value {
    Element(usize),
    Set(Set),
    Number(Number),
}

impl Value {
    fn kind_name(&self) -> &'static str {
        match self {
            Value::Element(_) => "element",
            Value::Set(_) => "set",
            Value::Number(_) => "numeric",
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Element(e) => write!(f, "{}", e),
            Value::Set(s) => {
                write!(f, "{{")?;
                for (k, e) in s.ones().enumerate() {
                    if k > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{}", e)?;
                }
                write!(f, "}}")
            }
            Value::Number(n) => write!(f, "{}", n),
        }
    }
}

/// A complete assignment of values to state variables, in declaration order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct State {
    values: Vec<Value>,
}

impl State {
    pub fn new(values: Vec<Value>) -> State {
        State { values }
    }

    pub fn values(&self) -> &[Value] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn value(&self, index: usize) -> Result<&Value, EvalError> {
        self.values
            .get(index)
            .ok_or(EvalError::UnknownVariable(index))
    }

    pub fn element(&self, index: usize) -> Result<usize, EvalError> {
        match self.value(index)? {
            Value::Element(e) => Ok(*e),
            other => Err(EvalError::KindMismatch {
                variable: index,
                expected: "element",
                found: other.kind_name(),
            }),
        }
    }

    pub fn set(&self, index: usize) -> Result<&Set, EvalError> {
        match self.value(index)? {
            Value::Set(s) => Ok(s),
            other => Err(EvalError::KindMismatch {
                variable: index,
                expected: "set",
                found: other.kind_name(),
            }),
        }
    }

    pub fn number(&self, index: usize) -> Result<Number, EvalError> {
        match self.value(index)? {
            Value::Number(n) => Ok(*n),
            other => Err(EvalError::KindMismatch {
                variable: index,
                expected: "numeric",
                found: other.kind_name(),
            }),
        }
    }

    pub(crate) fn set_value(&mut self, index: usize, value: Value) {
        self.values[index] = value;
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, v) in self.values.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", v)?;
        }
        write!(f, ")")
    }
}
