use crate::expr::{EvalError, Number, NumericType};
use std::cmp::Ordering;

/// The binary operator that accumulates transition weights along a path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CostOperator {
    Add,
    Max,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Minimize,
    Maximize,
}

/// Cost algebra of a model: operator, identity, optimization direction and value type.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostStructure {
    pub operator: CostOperator,
    pub identity: Number,
    pub direction: Direction,
    pub cost_type: NumericType,
}

impl CostStructure {
    /// `+` with identity 0.
    pub fn additive(direction: Direction, cost_type: NumericType) -> CostStructure {
        let identity = match cost_type {
            NumericType::Integer => Number::Int(0),
            NumericType::Continuous => Number::Real(0.0),
        };
        CostStructure {
            operator: CostOperator::Add,
            identity,
            direction,
            cost_type,
        }
    }

    /// `max` with the minimum representable value as identity.
    pub fn maximum(direction: Direction, cost_type: NumericType) -> CostStructure {
        let identity = match cost_type {
            NumericType::Integer => Number::Int(i64::MIN),
            NumericType::Continuous => Number::Real(f64::NEG_INFINITY),
        };
        CostStructure {
            operator: CostOperator::Max,
            identity,
            direction,
            cost_type,
        }
    }

    /// `max` over nonnegative costs, with identity 0.
    pub fn nonnegative_maximum(direction: Direction, cost_type: NumericType) -> CostStructure {
        CostStructure {
            identity: CostStructure::additive(direction, cost_type).identity,
            ..CostStructure::maximum(direction, cost_type)
        }
    }

    /// `w ⊕ x`. Infinite values absorb finite ones.
    pub fn combine(&self, w: Number, x: Number) -> Result<Number, EvalError> {
        match self.operator {
            CostOperator::Max => Ok(w.max(x)),
            CostOperator::Add => {
                if w.is_infinite() || x.is_infinite() {
                    Number::real(w.as_f64() + x.as_f64())
                } else {
                    w.checked_add(x)
                }
            }
        }
    }

    /// Whether `a` is strictly better than `b` in the model's direction.
    pub fn is_better(&self, a: Number, b: Number) -> bool {
        match self.direction {
            Direction::Minimize => a < b,
            Direction::Maximize => a > b,
        }
    }

    /// Orders values from best to worst.
    pub fn compare(&self, a: Number, b: Number) -> Ordering {
        match self.direction {
            Direction::Minimize => a.cmp(&b),
            Direction::Maximize => b.cmp(&a),
        }
    }

    /// The better of two values.
    pub fn best(&self, a: Number, b: Number) -> Number {
        if self.is_better(b, a) {
            b
        } else {
            a
        }
    }

    /// Value representing "no solution": +∞ for minimization, −∞ for maximization.
    pub fn worst(&self) -> Number {
        match self.direction {
            Direction::Minimize => Number::Real(f64::INFINITY),
            Direction::Maximize => Number::Real(f64::NEG_INFINITY),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn combine_examples() {
        let add = CostStructure::additive(Direction::Minimize, NumericType::Integer);
        let max = CostStructure::nonnegative_maximum(Direction::Minimize, NumericType::Integer);
        assert_eq!(add.combine(Number::Int(2), Number::Int(3)), Ok(Number::Int(5)));
        assert_eq!(add.combine(Number::Int(7), add.identity), Ok(Number::Int(7)));
        assert_eq!(max.combine(Number::Int(4), Number::Int(2)), Ok(Number::Int(4)));
        assert_eq!(
            add.combine(Number::Int(i64::MAX), Number::Int(1)),
            Err(EvalError::Overflow)
        );
        assert_eq!(
            add.combine(Number::Int(3), Number::Real(f64::INFINITY)),
            Ok(Number::Real(f64::INFINITY))
        );
    }

    proptest! {
        #[test]
        fn identity_and_isotonicity(w in -1000i64..1000, x in -1000i64..1000, y in -1000i64..1000) {
            let (x, y) = (x.min(y), x.max(y));
            for cost in [
                CostStructure::additive(Direction::Minimize, NumericType::Integer),
                CostStructure::maximum(Direction::Minimize, NumericType::Integer),
            ] {
                let w = Number::Int(w);
                prop_assert_eq!(cost.combine(w, cost.identity).unwrap(), w);
                let a = cost.combine(w, Number::Int(x)).unwrap();
                let b = cost.combine(w, Number::Int(y)).unwrap();
                prop_assert!(a <= b);
            }
        }
    }
}
