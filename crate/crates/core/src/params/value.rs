//! Exact and approximate parameter values.

use std::cmp::Ordering;
use std::fmt;

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use serde_json::json;

use crate::error::{Error, Result};
use crate::types::parse_rational;

/// Slack used when a comparison involves a float value.
pub const COMPARE_SLACK: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub enum ParamValue {
    Rational(BigRational),
    /// `coef · √radicand` with `radicand > 1` squarefree and `coef ≠ 0`.
    Surd { coef: BigRational, radicand: u64 },
    Float { value: f64, tol: f64 },
}

fn squarefree_split(mut b: u64) -> (u64, u64) {
    // b = s² r with r squarefree
    let mut s = 1;
    let mut r = 1;
    let mut d = 2;
    while d * d <= b {
        while b % (d * d) == 0 {
            b /= d * d;
            s *= d;
        }
        if b % d == 0 {
            b /= d;
            r *= d;
        }
        d += 1;
    }
    (s, r * b)
}

impl ParamValue {
    pub fn integer(n: i64) -> Self {
        ParamValue::Rational(BigRational::from_integer(n.into()))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        ParamValue::Rational(BigRational::new(n.into(), d.into()))
    }

    pub fn float(value: f64, tol: f64) -> Self {
        ParamValue::Float { value, tol }
    }

    /// `coef · √radicand`, normalized.
    pub fn surd(coef: BigRational, radicand: u64) -> Self {
        if radicand == 0 || coef.is_zero() {
            return ParamValue::Rational(BigRational::zero());
        }
        let (s, r) = squarefree_split(radicand);
        let coef = coef * BigRational::from_integer(s.into());
        if r == 1 {
            ParamValue::Rational(coef)
        } else {
            ParamValue::Surd { coef, radicand: r }
        }
    }

    /// Exact square root of a nonnegative rational `p/q = √(pq)/q`.
    pub fn sqrt_rational(r: &BigRational) -> Result<Self> {
        if r.is_negative() {
            return Err(Error::Domain(format!("square root of {r}")));
        }
        let prod = (r.numer() * r.denom())
            .to_u64()
            .ok_or_else(|| Error::Domain(format!("radicand of √({r}) too large")))?;
        let (s, rad) = squarefree_split(prod);
        let coef = BigRational::new(BigInt::from(s), r.denom().clone());
        Ok(Self::surd(coef, rad))
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, ParamValue::Float { .. })
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            ParamValue::Rational(r) => Some(r),
            _ => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ParamValue::Rational(r) => r.to_f64().unwrap_or(f64::NAN),
            ParamValue::Surd { coef, radicand } => {
                coef.to_f64().unwrap_or(f64::NAN) * (*radicand as f64).sqrt()
            }
            ParamValue::Float { value, .. } => *value,
        }
    }

    pub fn tolerance(&self) -> f64 {
        match self {
            ParamValue::Float { tol, .. } => *tol,
            _ => 0.0,
        }
    }

    /// `coef² · radicand` with the sign of the value: an exact proxy that is
    /// monotone in the value.
    fn signed_square(&self) -> Option<BigRational> {
        match self {
            ParamValue::Rational(r) => Some(r * r * BigRational::from_integer(r.signum().to_integer())),
            ParamValue::Surd { coef, radicand } => {
                let sq = coef * coef * BigRational::from_integer((*radicand).into());
                Some(if coef.is_negative() { -sq } else { sq })
            }
            ParamValue::Float { .. } => None,
        }
    }

    /// Exact comparison for exact values; for floats, `None` when the
    /// tolerance intervals overlap.
    pub fn compare(&self, other: &ParamValue) -> Option<Ordering> {
        match (self.signed_square(), other.signed_square()) {
            (Some(a), Some(b)) => Some(a.cmp(&b)),
            _ => {
                let slack = self.tolerance() + other.tolerance() + COMPARE_SLACK;
                let d = self.to_f64() - other.to_f64();
                if d.abs() <= slack {
                    None
                } else {
                    d.partial_cmp(&0.0)
                }
            }
        }
    }

    /// Equality up to `tol` plus the carried tolerances.
    pub fn approx_eq(&self, other: &ParamValue, tol: f64) -> bool {
        match (self.is_exact() && other.is_exact(), tol == 0.0) {
            (true, true) => self.compare(other) == Some(Ordering::Equal),
            _ => (self.to_f64() - other.to_f64()).abs() <= tol + self.tolerance() + other.tolerance(),
        }
    }

    pub fn mul(&self, other: &ParamValue) -> ParamValue {
        use ParamValue::*;
        match (self, other) {
            (Rational(a), Rational(b)) => Rational(a * b),
            (Rational(a), Surd { coef, radicand }) | (Surd { coef, radicand }, Rational(a)) => {
                Self::surd(a * coef, *radicand)
            }
            (
                Surd {
                    coef: a,
                    radicand: r,
                },
                Surd {
                    coef: b,
                    radicand: s,
                },
            ) => Self::surd(a * b, r * s),
            _ => {
                let (x, y) = (self.to_f64(), other.to_f64());
                let (tx, ty) = (self.tolerance(), other.tolerance());
                float_with(x * y, x.abs() * ty + y.abs() * tx + tx * ty)
            }
        }
    }

    pub fn pow(&self, e: u32) -> ParamValue {
        (0..e).fold(ParamValue::integer(1), |acc, _| acc.mul(self))
    }

    pub fn add(&self, other: &ParamValue) -> ParamValue {
        use ParamValue::*;
        match (self, other) {
            (Rational(a), Rational(b)) => Rational(a + b),
            (
                Surd {
                    coef: a,
                    radicand: r,
                },
                Surd {
                    coef: b,
                    radicand: s,
                },
            ) if r == s => Self::surd(a + b, *r),
            _ => float_with(
                self.to_f64() + other.to_f64(),
                self.tolerance() + other.tolerance(),
            ),
        }
    }

    /// The larger value; ties and overlapping intervals keep `self`.
    pub fn max(&self, other: &ParamValue) -> ParamValue {
        match self.compare(other) {
            Some(Ordering::Less) => other.clone(),
            _ => self.clone(),
        }
    }

    /// `√(self · other)`, exact when both are rational.
    pub fn geometric_mean(&self, other: &ParamValue) -> Result<ParamValue> {
        match self.mul(other) {
            ParamValue::Rational(r) => Self::sqrt_rational(&r),
            p => {
                let v = p.to_f64();
                if v < 0.0 {
                    return Err(Error::Domain("geometric mean of a negative product".into()));
                }
                let s = v.sqrt();
                let tol = if s > 0.0 { p.tolerance() / (2.0 * s) } else { p.tolerance().sqrt() };
                Ok(ParamValue::Float {
                    value: s,
                    tol: tol + COMPARE_SLACK,
                })
            }
        }
    }

    /// `self^(1/n)` as a float, exact for rational results of perfect powers
    /// and square roots.
    pub fn root(&self, n: u32) -> Result<ParamValue> {
        if n == 0 {
            return Err(Error::Domain("zeroth root".into()));
        }
        if let ParamValue::Rational(r) = self {
            if n == 1 {
                return Ok(self.clone());
            }
            if n == 2 {
                return Self::sqrt_rational(r);
            }
            if let (Some(a), Some(b)) = (int_root(r.numer(), n), int_root(r.denom(), n)) {
                return Ok(ParamValue::Rational(BigRational::new(a, b)));
            }
        }
        let v = self.to_f64();
        let s = v.powf(1.0 / n as f64);
        Ok(ParamValue::Float {
            value: s,
            tol: self.tolerance() + COMPARE_SLACK * s.max(1.0),
        })
    }

    /// Base-2 logarithm as a float.
    pub fn log2(&self) -> f64 {
        self.to_f64().log2()
    }

    pub fn parse(text: &str) -> Result<ParamValue> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if let Some(start) = t.find("sqrt(") {
            let close = t[start..]
                .find(')')
                .map(|i| i + start)
                .ok_or_else(|| Error::Parse(format!("unbalanced surd {text:?}")))?;
            let radicand: u64 = t[start + 5..close]
                .parse()
                .map_err(|_| Error::Parse(format!("bad radicand in {text:?}")))?;
            let before = &t[..start];
            let after = &t[close + 1..];
            let mut coef = match before {
                "" => BigRational::one(),
                "-" => -BigRational::one(),
                s => parse_rational(
                    s.strip_suffix('*')
                        .ok_or_else(|| Error::Parse(format!("expected '*' in {text:?}")))?,
                )?,
            };
            if !after.is_empty() {
                let d = after
                    .strip_prefix('/')
                    .ok_or_else(|| Error::Parse(format!("unexpected {after:?} in {text:?}")))?;
                let d = parse_rational(d)?;
                if d.is_zero() {
                    return Err(Error::Parse(format!("division by zero in {text:?}")));
                }
                coef /= d;
            }
            return Ok(Self::surd(coef, radicand));
        }
        Ok(ParamValue::Rational(parse_rational(&t)?))
    }

    /// `{"kind": ..., "text": ..., "approx": ..., "tol": ...}`.
    pub fn to_json(&self) -> serde_json::Value {
        let kind = match self {
            ParamValue::Rational(_) => "rational",
            ParamValue::Surd { .. } => "surd",
            ParamValue::Float { .. } => "float",
        };
        json!({
            "kind": kind,
            "text": self.to_string(),
            "approx": self.to_f64(),
            "tol": self.tolerance(),
        })
    }
}

/// A float carrying `tol` plus a relative rounding allowance.
fn float_with(value: f64, tol: f64) -> ParamValue {
    ParamValue::Float {
        value,
        tol: tol + COMPARE_SLACK * value.abs().max(1.0),
    }
}

fn int_root(x: &BigInt, n: u32) -> Option<BigInt> {
    if x.is_negative() {
        return None;
    }
    let r = x.nth_root(n);
    (num::pow(r.clone(), n as usize) == *x).then_some(r)
}

impl fmt::Display for ParamValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamValue::Rational(r) => write!(f, "{r}"),
            ParamValue::Surd { coef, radicand } => {
                let n = coef.numer();
                let d = coef.denom();
                if n.is_one() {
                    write!(f, "sqrt({radicand})")?;
                } else if (-n).is_one() {
                    write!(f, "-sqrt({radicand})")?;
                } else {
                    write!(f, "{n}*sqrt({radicand})")?;
                }
                if !d.is_one() {
                    write!(f, "/{d}")?;
                }
                Ok(())
            }
            ParamValue::Float { value, .. } => write!(f, "{value}"),
        }
    }
}

impl From<i64> for ParamValue {
    fn from(n: i64) -> Self {
        ParamValue::integer(n)
    }
}

impl From<BigRational> for ParamValue {
    fn from(r: BigRational) -> Self {
        ParamValue::Rational(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn surd_normalization_and_display() {
        assert_eq!(ParamValue::surd(q(1, 1), 20).to_string(), "2*sqrt(5)");
        assert_eq!(ParamValue::surd(q(3, 1), 4), ParamValue::integer(6));
        assert_eq!(ParamValue::surd(q(625, 8), 5).to_string(), "625*sqrt(5)/8");
        assert_eq!(ParamValue::surd(q(-1, 2), 5).to_string(), "-sqrt(5)/2");
        let root5 = ParamValue::parse("sqrt(5)").unwrap();
        assert_eq!(root5.pow(6), ParamValue::integer(125));
        assert_eq!(root5.pow(2), ParamValue::integer(5));
    }

    #[test]
    fn parse_round_trip() {
        for s in ["625*sqrt(5)/8", "sqrt(5)", "-sqrt(7)/3", "260/11", "12", "-3*sqrt(2)"] {
            assert_eq!(ParamValue::parse(s).unwrap().to_string(), s);
        }
        assert!(ParamValue::parse("sqrt(5").is_err());
        assert!(ParamValue::parse("2sqrt(5)").is_err());
    }

    #[test]
    fn exact_comparisons() {
        let bound = ParamValue::parse("625*sqrt(5)/8").unwrap();
        assert_eq!(bound.compare(&ParamValue::integer(175)), Some(Ordering::Less));
        assert_eq!(bound.compare(&ParamValue::integer(174)), Some(Ordering::Greater));
        assert_eq!(
            ParamValue::ratio(2600, 11).compare(&ParamValue::integer(236)),
            Some(Ordering::Greater)
        );
        let f = ParamValue::float(2.2360679, 1e-6);
        assert_eq!(f.compare(&ParamValue::parse("sqrt(5)").unwrap()), None);
        assert!(f.approx_eq(&ParamValue::parse("sqrt(5)").unwrap(), 1e-6));
        assert_eq!(f.compare(&ParamValue::integer(2)), Some(Ordering::Greater));
    }

    #[test]
    fn geometric_means_and_roots() {
        let g = ParamValue::integer(125)
            .geometric_mean(&ParamValue::ratio(15625, 64))
            .unwrap();
        assert_eq!(g.to_string(), "625*sqrt(5)/8");
        assert_eq!(ParamValue::integer(5).root(2).unwrap().to_string(), "sqrt(5)");
        assert_eq!(ParamValue::ratio(27, 8).root(3).unwrap(), ParamValue::ratio(3, 2));
        assert!(!ParamValue::integer(5).root(3).unwrap().is_exact());
        let e = ParamValue::integer(7);
        assert_eq!(e.geometric_mean(&e).unwrap(), e);
    }

    #[test]
    fn mixed_arithmetic_goes_float() {
        let s = ParamValue::integer(2).add(&ParamValue::float(0.5, 1e-9));
        assert!(!s.is_exact());
        assert!((s.to_f64() - 2.5).abs() < 1e-12);
        assert!(s.tolerance() >= 1e-9);
        assert_eq!(ParamValue::ratio(1, 2).add(&ParamValue::ratio(1, 3)), ParamValue::ratio(5, 6));
    }
}
