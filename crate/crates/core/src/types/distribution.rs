use std::fmt::Debug;
use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::entropy::entropy_bits;
use crate::error::{Error, Result};
use crate::graph::Label;

/// Probability weight: exact rationals for type arithmetic, floats for
/// optimizer-facing values.
pub trait Weight: Clone + Debug + PartialOrd {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn to_f64(&self) -> f64;
    /// Whether a vector of weights sums to one in this representation.
    fn sums_to_one(weights: &[Self]) -> bool;
}

impl Weight for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn sums_to_one(weights: &[Self]) -> bool {
        weights.iter().fold(<BigRational as Zero>::zero(), |a, w| a + w).is_one()
    }
}

impl Weight for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn sums_to_one(weights: &[Self]) -> bool {
        (weights.iter().sum::<f64>() - 1.0).abs() <= 1e-12
    }
}

/// Probability distribution on an ordered, labeled finite set.
#[derive(Clone, Debug, PartialEq)]
pub struct Distribution<W: Weight> {
    labels: Vec<Label>,
    weights: Vec<W>,
}

pub type ExactDist = Distribution<BigRational>;
pub type FloatDist = Distribution<f64>;

impl<W: Weight> Distribution<W> {
    pub fn new(labels: Vec<Label>, weights: Vec<W>) -> Result<Self> {
        if labels.len() != weights.len() {
            return Err(Error::Shape(format!(
                "{} labels for {} weights",
                labels.len(),
                weights.len()
            )));
        }
        if let Some(w) = weights.iter().find(|w| **w < W::zero() || **w > W::one()) {
            return Err(Error::InvalidDistribution(format!("weight {w:?} outside [0,1]")));
        }
        if !W::sums_to_one(&weights) {
            return Err(Error::InvalidDistribution("weights do not sum to 1".into()));
        }
        Ok(Distribution { labels, weights })
    }

    /// Weights on `0..n`.
    pub fn indexed(weights: Vec<W>) -> Result<Self> {
        Self::new((0..weights.len()).map(Label::Index).collect(), weights)
    }

    pub fn uniform(labels: Vec<Label>) -> Result<Self>
    where
        W: FromCount,
    {
        let n = labels.len();
        if n == 0 {
            return Err(Error::InvalidDistribution("uniform on empty set".into()));
        }
        let w = W::ratio(1, n as u64);
        Self::new(labels, vec![w; n])
    }

    /// Point mass on vertex `v` of `0..n`.
    pub fn point_mass(n: usize, v: usize) -> Result<Self> {
        let weights = (0..n).map(|i| if i == v { W::one() } else { W::zero() }).collect();
        Self::indexed(weights)
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn weights(&self) -> &[W] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.weights[i] > W::zero()).collect()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.weights.iter().map(Weight::to_f64).collect()
    }

    pub fn to_float(&self) -> FloatDist {
        Distribution {
            labels: self.labels.clone(),
            weights: self.to_f64(),
        }
    }

    pub fn entropy(&self) -> f64 {
        entropy_bits(&self.to_f64())
    }

    /// Marginals of a distribution on `X × Y` indexed row-major as `x·|Y| + y`.
    pub fn marginals(&self, nx: usize, ny: usize) -> Result<(Self, Self)> {
        if nx * ny != self.len() {
            return Err(Error::Shape(format!(
                "{} weights is not a {nx}×{ny} grid",
                self.len()
            )));
        }
        let mut px = vec![W::zero(); nx];
        let mut py = vec![W::zero(); ny];
        for x in 0..nx {
            for y in 0..ny {
                let w = &self.weights[x * ny + y];
                px[x] = px[x].add(w);
                py[y] = py[y].add(w);
            }
        }
        let (lx, ly) = self.factor_labels(nx, ny);
        Ok((
            Distribution { labels: lx, weights: px },
            Distribution { labels: ly, weights: py },
        ))
    }

    fn factor_labels(&self, nx: usize, ny: usize) -> (Vec<Label>, Vec<Label>) {
        let pair = |i: usize| match &self.labels[i] {
            Label::Pair(a, b) => Some(((**a).clone(), (**b).clone())),
            _ => None,
        };
        let lx: Option<Vec<Label>> = (0..nx).map(|x| pair(x * ny).map(|p| p.0)).collect();
        let ly: Option<Vec<Label>> = (0..ny).map(|y| pair(y).map(|p| p.1)).collect();
        (
            lx.unwrap_or_else(|| (0..nx).map(Label::Index).collect()),
            ly.unwrap_or_else(|| (0..ny).map(Label::Index).collect()),
        )
    }

    /// `I(X:Y) = H(P_X) + H(P_Y) - H(P)` in bits.
    pub fn mutual_information(&self, nx: usize, ny: usize) -> Result<f64> {
        let (px, py) = self.marginals(nx, ny)?;
        Ok(px.entropy() + py.entropy() - self.entropy())
    }

    /// `P ⊗ Q` on `X × Y`, row-major, labels paired.
    pub fn product(&self, other: &Self) -> Self {
        let mut labels = Vec::with_capacity(self.len() * other.len());
        let mut weights = Vec::with_capacity(self.len() * other.len());
        for (a, wa) in self.labels.iter().zip(&self.weights) {
            for (b, wb) in other.labels.iter().zip(&other.weights) {
                labels.push(Label::pair(a.clone(), b.clone()));
                weights.push(wa.mul(wb));
            }
        }
        Distribution { labels, weights }
    }

    /// `pP ⊕ (1-p)Q` on `X ⊔ Y`.
    pub fn mixture(p: &W, first: &Self, second: &Self) -> Result<Self> {
        if *p < W::zero() || *p > W::one() {
            return Err(Error::Domain(format!("mixture weight {p:?} outside [0,1]")));
        }
        let q = W::one().sub(p);
        let labels = first
            .labels
            .iter()
            .cloned()
            .map(Label::left)
            .chain(second.labels.iter().cloned().map(Label::right))
            .collect();
        let weights = first
            .weights
            .iter()
            .map(|w| p.mul(w))
            .chain(second.weights.iter().map(|w| q.mul(w)))
            .collect();
        Ok(Distribution { labels, weights })
    }

    /// `f_*(P)(y) = Σ_{f(x)=y} P(x)`.
    pub fn pushforward(&self, map: &[usize], target: Vec<Label>) -> Result<Self> {
        if map.len() != self.len() {
            return Err(Error::Shape(format!(
                "map of length {} for distribution of length {}",
                map.len(),
                self.len()
            )));
        }
        let mut weights = vec![W::zero(); target.len()];
        for (x, &y) in map.iter().enumerate() {
            let slot = weights.get_mut(y).ok_or(Error::VertexOutOfRange {
                vertex: y,
                order: target.len(),
            })?;
            *slot = slot.add(&self.weights[x]);
        }
        Ok(Distribution { labels: target, weights })
    }

    /// `‖P - Q‖₁`.
    pub fn l1_distance(&self, other: &Self) -> Result<W> {
        if self.len() != other.len() {
            return Err(Error::Shape("distributions on different sets".into()));
        }
        Ok(self
            .weights
            .iter()
            .zip(&other.weights)
            .fold(W::zero(), |acc, (a, b)| {
                let d = if a > b { a.sub(b) } else { b.sub(a) };
                acc.add(&d)
            }))
    }
}

/// Construction of simple ratios in either weight representation.
pub trait FromCount: Weight {
    fn ratio(num: u64, den: u64) -> Self;
}

impl FromCount for BigRational {
    fn ratio(num: u64, den: u64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
}

impl FromCount for f64 {
    fn ratio(num: u64, den: u64) -> Self {
        num as f64 / den as f64
    }
}

/// Parses `"3/4"`, `"-2"`, `"0.125"` or `"1e-3"` as an exact rational.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let t = text.trim();
    let err = || Error::Parse(format!("not a rational number: {text:?}"));
    if let Some((n, d)) = t.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| err())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(BigRational::new(n, d));
    }
    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().map_err(|_| err())?),
        None => (t, 0),
    };
    let negative = mantissa.starts_with('-');
    let digits = mantissa.trim_start_matches(['-', '+']);
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(err());
    }
    let all: String = format!("{int_part}{frac_part}");
    let n = BigInt::from_str(if all.is_empty() { "0" } else { &all }).map_err(|_| err())?;
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10u32);
    let mut value = if scale >= 0 {
        BigRational::from_integer(n * num::pow(ten, scale as usize))
    } else {
        BigRational::new(n, num::pow(ten, (-scale) as usize))
    };
    if negative {
        value = -value;
    }
    Ok(value)
}

/// `{"labels": [...], "weights": ["1/3", "2/3"]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DistributionJson {
    pub labels: Vec<Label>,
    pub weights: Vec<String>,
}

impl From<&ExactDist> for DistributionJson {
    fn from(d: &ExactDist) -> Self {
        DistributionJson {
            labels: d.labels.clone(),
            weights: d.weights.iter().map(|w| w.to_string()).collect(),
        }
    }
}

impl TryFrom<DistributionJson> for ExactDist {
    type Error = Error;

    fn try_from(j: DistributionJson) -> Result<Self> {
        let weights = j
            .weights
            .iter()
            .map(|w| parse_rational(w))
            .collect::<Result<Vec<_>>>()?;
        if weights.iter().any(Signed::is_negative) {
            return Err(Error::InvalidDistribution("negative weight".into()));
        }
        Distribution::new(j.labels, weights)
    }
}

impl ExactDist {
    pub fn from_json(text: &str) -> Result<Self> {
        let j: DistributionJson = serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("distribution JSON: {e}")))?;
        j.try_into()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&DistributionJson::from(self)).expect("distribution serializes")
    }

    /// Total-variation distance `½‖P - Q‖₁`.
    pub fn total_variation(&self, other: &Self) -> Result<BigRational> {
        Ok(self.l1_distance(other)? / BigRational::from_integer(2.into()))
    }
}
