use super::EvalError;
use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

/// Whether a numeric quantity is computed in exact integers or floating point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NumericType {
    Integer,
    Continuous,
}

impl NumericType {
    /// The common type of two operands.
    pub fn join(self, other: Self) -> Self {
        if self == NumericType::Integer && other == NumericType::Integer {
            NumericType::Integer
        } else {
            NumericType::Continuous
        }
    }
}

/// A numeric value: an exact 64-bit integer or a non-NaN float.
///
/// Values compare numerically across variants, so `Int(1) == Real(1.0)`.
/// Floats are never NaN; every constructor that could produce NaN returns an error instead.
#[derive(Debug, Clone, Copy)]
pub enum Number {
    Int(i64),
    Real(f64),
}

impl Number {
    pub const ZERO: Number = Number::Int(0);

    pub fn real(value: f64) -> Result<Number, EvalError> {
        if value.is_nan() {
            Err(EvalError::NotANumber)
        } else {
            Ok(Number::Real(value))
        }
    }

    pub fn as_f64(self) -> f64 {
        match self {
            Number::Int(v) => v as f64,
            Number::Real(v) => v,
        }
    }

    pub fn numeric_type(self) -> NumericType {
        match self {
            Number::Int(_) => NumericType::Integer,
            Number::Real(_) => NumericType::Continuous,
        }
    }

    /// Exact integer value, if this number is integral and fits in `i64`.
    pub fn as_int(self) -> Option<i64> {
        match self {
            Number::Int(v) => Some(v),
            Number::Real(v) if v.fract() == 0.0 && v.abs() < 9.0e18 => Some(v as i64),
            Number::Real(_) => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Number::Real(v) if v.is_infinite())
    }

    /// Converts to the given type; continuous to integer requires an integral value.
    pub fn cast(self, ty: NumericType) -> Result<Number, EvalError> {
        match (self, ty) {
            (Number::Int(v), NumericType::Continuous) => Ok(Number::Real(v as f64)),
            (Number::Real(v), NumericType::Integer) => match self.as_int() {
                Some(i) => Ok(Number::Int(i)),
                None => Err(EvalError::NotIntegral(v)),
            },
            _ => Ok(self),
        }
    }

    pub fn checked_add(self, other: Number) -> Result<Number, EvalError> {
        match (self, other) {
            (Number::Int(a), Number::Int(b)) => {
                a.checked_add(b).map(Number::Int).ok_or(EvalError::Overflow)
            }
            _ => Number::real(self.as_f64() + other.as_f64()),
        }
    }

    pub fn checked_sub(self, other: Number) -> Result<Number, EvalError> {
        match (self, other) {
            (Number::Int(a), Number::Int(b)) => {
                a.checked_sub(b).map(Number::Int).ok_or(EvalError::Overflow)
            }
            _ => Number::real(self.as_f64() - other.as_f64()),
        }
    }

    pub fn checked_mul(self, other: Number) -> Result<Number, EvalError> {
        match (self, other) {
            (Number::Int(a), Number::Int(b)) => {
                a.checked_mul(b).map(Number::Int).ok_or(EvalError::Overflow)
            }
            _ => Number::real(self.as_f64() * other.as_f64()),
        }
    }

    /// Floating division; integer operands are promoted.
    pub fn checked_div(self, other: Number) -> Result<Number, EvalError> {
        if other.as_f64() == 0.0 {
            return Err(EvalError::DivisionByZero);
        }
        Number::real(self.as_f64() / other.as_f64())
    }

    pub fn neg(self) -> Result<Number, EvalError> {
        match self {
            Number::Int(a) => a.checked_neg().map(Number::Int).ok_or(EvalError::Overflow),
            Number::Real(a) => Ok(Number::Real(-a)),
        }
    }

    pub fn abs(self) -> Result<Number, EvalError> {
        match self {
            Number::Int(a) => a.checked_abs().map(Number::Int).ok_or(EvalError::Overflow),
            Number::Real(a) => Ok(Number::Real(a.abs())),
        }
    }

    pub fn floor(self) -> Result<Number, EvalError> {
        match self {
            Number::Int(_) => Ok(self),
            Number::Real(v) => real_to_int(v.floor()),
        }
    }

    pub fn ceil(self) -> Result<Number, EvalError> {
        match self {
            Number::Int(_) => Ok(self),
            Number::Real(v) => real_to_int(v.ceil()),
        }
    }

    pub fn min(self, other: Number) -> Number {
        if other < self {
            other
        } else {
            self
        }
    }

    pub fn max(self, other: Number) -> Number {
        if other > self {
            other
        } else {
            self
        }
    }
}

fn real_to_int(v: f64) -> Result<Number, EvalError> {
    if v.is_finite() && v.abs() < 9.0e18 {
        Ok(Number::Int(v as i64))
    } else {
        Err(EvalError::Overflow)
    }
}

/// Exact `floor(a / b)` on integers.
pub fn floor_div(a: i64, b: i64) -> Result<i64, EvalError> {
    if b == 0 {
        return Err(EvalError::DivisionByZero);
    }
    let q = a.checked_div(b).ok_or(EvalError::Overflow)?;
    if (a % b != 0) && ((a < 0) != (b < 0)) {
        Ok(q - 1)
    } else {
        Ok(q)
    }
}

/// Exact `ceil(a / b)` on integers.
pub fn ceil_div(a: i64, b: i64) -> Result<i64, EvalError> {
    if b == 0 {
        return Err(EvalError::DivisionByZero);
    }
    let q = a.checked_div(b).ok_or(EvalError::Overflow)?;
    if (a % b != 0) && ((a < 0) == (b < 0)) {
        Ok(q + 1)
    } else {
        Ok(q)
    }
}

impl PartialEq for Number {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Number {}

impl PartialOrd for Number {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Number {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Number::Int(a), Number::Int(b)) => a.cmp(b),
            _ => self.as_f64().total_cmp(&other.as_f64()),
        }
    }
}

impl Hash for Number {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self.as_int() {
            Some(i) => i.hash(state),
            None => match self {
                Number::Real(v) => v.to_bits().hash(state),
                Number::Int(_) => unreachable!(),
            },
        }
    }
}

impl fmt::Display for Number {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Number::Int(v) => write!(f, "{}", v),
            Number::Real(v) => write!(f, "{:?}", v),
        }
    }
}

impl From<i64> for Number {
    fn from(v: i64) -> Self {
        Number::Int(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cross_variant_comparison() {
        assert_eq!(Number::Int(3), Number::Real(3.0));
        assert!(Number::Int(2) < Number::Real(2.5));
        assert!(Number::Real(f64::NEG_INFINITY) < Number::Int(i64::MIN));
    }

    #[test]
    fn integer_overflow_is_an_error() {
        assert_eq!(
            Number::Int(i64::MAX).checked_add(Number::Int(1)),
            Err(EvalError::Overflow)
        );
    }

    #[test]
    fn nan_rejected() {
        assert!(Number::real(f64::NAN).is_err());
        let inf = Number::Real(f64::INFINITY);
        assert!(inf.checked_add(Number::Real(f64::NEG_INFINITY)).is_err());
    }

    #[test]
    fn exact_floor_and_ceil_division() {
        assert_eq!(ceil_div(15, 8), Ok(2));
        assert_eq!(floor_div(15, 8), Ok(1));
        assert_eq!(ceil_div(-2, 8), Ok(0));
        assert_eq!(floor_div(-2, 8), Ok(-1));
        assert_eq!(ceil_div(-8, 8), Ok(-1));
        assert_eq!(floor_div(7, -2), Ok(-4));
        assert_eq!(ceil_div(7, -2), Ok(-3));
        assert_eq!(ceil_div(1, 0), Err(EvalError::DivisionByZero));
    }
}
