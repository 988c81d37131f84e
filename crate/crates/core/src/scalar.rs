//! Scalar backends: exact rationals for golden values, `f64` where square
//! roots are unavoidable (coframes, developments, Newton solving).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Absolute tolerance used whenever a float residual is compared to zero.
pub const FLOAT_TOL: f64 = 1e-9;

/// Arithmetic required by every module. Implemented by [`Rat`] (exact) and
/// `f64` (float backend).
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    fn is_zero(&self) -> bool;
    /// Zero test for residuals: exact equality on the rational backend,
    /// `|x| <= FLOAT_TOL` on the float backend.
    fn is_negligible(&self) -> bool;
    fn is_positive(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn to_f64(&self) -> f64;
    /// `true` for the exact backend; selects pivoting and signature paths.
    fn is_exact() -> bool;
    /// Square root when representable in the backend (exact squares only
    /// for rationals).
    fn sqrt_checked(&self) -> Option<Self>;
    /// Canonical serialization: reduced `p/q` (or plain `p`) for rationals,
    /// JSON number for floats.
    fn to_json(&self) -> serde_json::Value;
    fn from_json(v: &serde_json::Value) -> Result<Self, String>;
}

/// Exact rational scalar (arbitrary precision).
pub type Rat = BigRational;

pub fn rat(num: i64, den: i64) -> Rat {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

/// Renders a rational as `p` (denominator one) or `p/q` with `q > 0`.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p`, `p/q`, or a JSON-number-shaped decimal string.
pub fn rat_from_str(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let num: BigInt = p.trim().parse().map_err(|_| format!("bad numerator in {s:?}"))?;
        let den: BigInt = q.trim().parse().map_err(|_| format!("bad denominator in {s:?}"))?;
        if den.is_zero() {
            return Err(format!("zero denominator in {s:?}"));
        }
        Ok(BigRational::new(num, den))
    } else if let Ok(n) = s.parse::<BigInt>() {
        Ok(BigRational::from_integer(n))
    } else {
        Err(format!("cannot parse rational from {s:?}"))
    }
}

impl Scalar for Rat {
    fn zero() -> Self {
        <BigRational as Zero>::zero()
    }
    fn one() -> Self {
        <BigRational as One>::one()
    }
    fn from_i64(n: i64) -> Self {
        rat_int(n)
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        rat(num, den)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negligible(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_positive(&self) -> bool {
        Signed::is_positive(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn to_f64(&self) -> f64 {
        self.numer().to_f64().unwrap_or(f64::NAN) / self.denom().to_f64().unwrap_or(f64::NAN)
    }
    fn is_exact() -> bool {
        true
    }
    fn sqrt_checked(&self) -> Option<Self> {
        if Signed::is_negative(self) {
            return None;
        }
        let n = self.numer().sqrt();
        let d = self.denom().sqrt();
        if &(&n * &n) == self.numer() && &(&d * &d) == self.denom() {
            Some(BigRational::new(n, d))
        } else {
            None
        }
    }
    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::String(rat_to_string(self))
    }
    fn from_json(v: &serde_json::Value) -> Result<Self, String> {
        match v {
            serde_json::Value::String(s) => rat_from_str(s),
            serde_json::Value::Number(n) => {
                if let Some(i) = n.as_i64() {
                    Ok(rat_int(i))
                } else {
                    Err(format!("non-integer number {n} not accepted on the exact backend"))
                }
            }
            other => Err(format!("expected rational, got {other}")),
        }
    }
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(n: i64) -> Self {
        n as f64
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn is_negligible(&self) -> bool {
        self.abs() <= FLOAT_TOL
    }
    fn is_positive(&self) -> bool {
        *self > 0.0
    }
    fn is_negative(&self) -> bool {
        *self < 0.0
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn is_exact() -> bool {
        false
    }
    fn sqrt_checked(&self) -> Option<Self> {
        if *self < 0.0 {
            None
        } else {
            Some(self.sqrt())
        }
    }
    fn to_json(&self) -> serde_json::Value {
        serde_json::json!(self)
    }
    fn from_json(v: &serde_json::Value) -> Result<Self, String> {
        match v {
            serde_json::Value::Number(n) => n.as_f64().ok_or_else(|| format!("bad number {n}")),
            serde_json::Value::String(s) => rat_from_str(s).map(|r| Scalar::to_f64(&r)),
            other => Err(format!("expected number, got {other}")),
        }
    }
}
