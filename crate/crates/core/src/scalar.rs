//! Scalar types for coordinates and areas.
//!
//! Everything geometric is generic over [`Scalar`]. Exact rationals
//! ([`Rational`]) give exact hulls, areas and clip partitions; `f64`/`f32`
//! are used where trigonometry or speed is needed. Mixing the two in one
//! computation is a type error, conversions are explicit.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Float, FloatConst, FromPrimitive, Num, One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Arbitrary precision rational.
pub type Rational = BigRational;

/// Which arithmetic a computation ran in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

impl Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Mode::Exact => f.write_str("exact"),
            Mode::Float => f.write_str("float"),
        }
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact" => Ok(Mode::Exact),
            "float" => Ok(Mode::Float),
            other => Err(Error::Parse(format!("unknown mode {other:?}"))),
        }
    }
}

/// Ordered field used for planar coordinates.
pub trait Scalar:
    Num + Signed + Clone + PartialOrd + Debug + Display + Send + Sync + 'static
{
    /// Arithmetic mode of this type.
    const MODE: Mode;

    /// Relative epsilon for collinearity tests; zero for exact types.
    fn collinear_eps() -> f64;

    /// Absolute slack for closed containment tests; zero for exact types.
    fn containment_slack() -> f64;

    fn from_ratio(num: i64, den: i64) -> Self;

    fn of_usize(v: usize) -> Self {
        Self::from_ratio(v as i64, 1)
    }

    /// Exact conversion from a finite double. `None` for NaN/inf.
    fn from_double(v: f64) -> Option<Self>;

    fn from_rational(v: &Rational) -> Self;

    fn to_double(&self) -> f64;

    /// Exact conversion to a rational. `None` for non-finite values.
    fn to_rational(&self) -> Option<Rational>;

    fn is_finite_value(&self) -> bool;

    /// `true` when `self` is zero up to `collinear_eps() * scale`.
    fn is_negligible(&self, scale: &Self) -> bool {
        if self.is_zero() {
            return true;
        }
        let eps = Self::collinear_eps();
        eps > 0.0 && self.abs().to_double() <= eps * scale.abs().to_double()
    }

    /// Serialization form: rationals as `"p/q"` strings, floats as numbers.
    fn to_json(&self) -> serde_json::Value;

    fn min_of(a: Self, b: Self) -> Self {
        if b < a {
            b
        } else {
            a
        }
    }

    fn max_of(a: Self, b: Self) -> Self {
        if b > a {
            b
        } else {
            a
        }
    }
}

/// Floating point scalar: needed by the halving line, extraction and search.
pub trait FloatScalar: Scalar + Float + FloatConst + FromPrimitive + Copy {}

impl<T: Scalar + Float + FloatConst + FromPrimitive + Copy> FloatScalar for T {}

macro_rules! impl_float_scalar {
    ($f:ty) => {
        impl Scalar for $f {
            const MODE: Mode = Mode::Float;

            fn collinear_eps() -> f64 {
                1e-12
            }

            fn containment_slack() -> f64 {
                1e-12
            }

            fn from_ratio(num: i64, den: i64) -> Self {
                (num as f64 / den as f64) as $f
            }

            fn from_double(v: f64) -> Option<Self> {
                v.is_finite().then_some(v as $f)
            }

            fn from_rational(v: &Rational) -> Self {
                v.to_f64().unwrap_or(f64::NAN) as $f
            }

            fn to_double(&self) -> f64 {
                *self as f64
            }

            fn to_rational(&self) -> Option<Rational> {
                Rational::from_float(*self)
            }

            fn is_finite_value(&self) -> bool {
                <$f>::is_finite(*self)
            }

            fn to_json(&self) -> serde_json::Value {
                serde_json::Value::from(*self as f64)
            }
        }
    };
}

impl_float_scalar!(f32);
impl_float_scalar!(f64);

impl Scalar for Rational {
    const MODE: Mode = Mode::Exact;

    fn collinear_eps() -> f64 {
        0.0
    }

    fn containment_slack() -> f64 {
        0.0
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Rational::new(BigInt::from(num), BigInt::from(den))
    }

    fn from_double(v: f64) -> Option<Self> {
        Rational::from_float(v)
    }

    fn from_rational(v: &Rational) -> Self {
        v.clone()
    }

    fn to_double(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }

    fn is_finite_value(&self) -> bool {
        true
    }

    fn is_negligible(&self, _scale: &Self) -> bool {
        self.is_zero()
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::String(format_rational(self))
    }
}

/// `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(v: &Rational) -> String {
    if v.denom().is_one() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

/// Parses `"p/q"`, an integer, or a plain decimal such as `"0.125"`.
pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
        let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
        if q.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int.starts_with('-');
        let digits = format!("{}{}", int.trim_start_matches(['-', '+']), frac);
        let mut num = BigInt::from_str(&digits).map_err(|_| bad())?;
        if negative {
            num = -num;
        }
        let den = num_traits::pow(BigInt::from(10), frac.len());
        return Ok(Rational::new(num, den));
    }
    BigInt::from_str(s).map(Rational::from_integer).map_err(|_| bad())
}

/// Nearest rational with denominator `den` (round half away from zero).
pub fn rationalize(v: f64, den: i64) -> Option<Rational> {
    if !v.is_finite() {
        return None;
    }
    let scaled = (v * den as f64).round();
    let num = BigInt::from_f64(scaled)?;
    Some(Rational::new(num, BigInt::from(den)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("1/4").unwrap(), Rational::from_ratio(1, 4));
        assert_eq!(parse_rational(" -6/8 ").unwrap(), Rational::from_ratio(-3, 4));
        assert_eq!(parse_rational("3").unwrap(), Rational::from_ratio(3, 1));
        assert_eq!(parse_rational("0.125").unwrap(), Rational::from_ratio(1, 8));
        assert_eq!(parse_rational("-1.5").unwrap(), Rational::from_ratio(-3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1.").is_err());
    }

    #[test]
    fn lowest_terms_and_positive_denominator() {
        let r = Rational::from_ratio(4, -6);
        assert_eq!(r.numer(), &BigInt::from(-2));
        assert_eq!(r.denom(), &BigInt::from(3));
        assert_eq!(format_rational(&r), "-2/3");
        assert_eq!(format_rational(&Rational::from_ratio(2, 1)), "2");
    }

    #[test]
    fn float_to_rational_is_exact() {
        let r = <Rational as Scalar>::from_double(0.1).unwrap();
        assert_eq!(r.to_double(), 0.1);
        assert!(<Rational as Scalar>::from_double(f64::NAN).is_none());
    }

    #[test]
    fn negligible_respects_mode() {
        assert!(1e-14f64.is_negligible(&1.0));
        assert!(!1e-10f64.is_negligible(&1.0));
        let tiny = Rational::from_ratio(1, 1_000_000_000_000_000);
        assert!(!tiny.is_negligible(&Rational::one()));
    }

    #[test]
    fn rationalize_bounded_denominator() {
        let r = rationalize(0.3333334, 1_000_000).unwrap();
        assert_eq!(r, Rational::from_ratio(333_333, 1_000_000));
        assert!(r.denom() <= &BigInt::from(1_000_000));
    }
}
