use num::{BigInt, BigRational, BigUint, One, ToPrimitive, Zero};

use super::distribution::ExactDist;
use super::entropy::entropy_bits;
use crate::error::{Error, Result};
use crate::graph::Label;

/// An `n`-type: a distribution whose weights are `counts[x] / n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NType {
    labels: Vec<Label>,
    counts: Vec<u64>,
    n: u64,
}

impl NType {
    pub fn new(labels: Vec<Label>, counts: Vec<u64>) -> Result<Self> {
        if labels.len() != counts.len() {
            return Err(Error::Shape(format!(
                "{} labels for {} counts",
                labels.len(),
                counts.len()
            )));
        }
        let n: u64 = counts.iter().sum();
        if n == 0 {
            return Err(Error::InvalidDistribution("type with denominator 0".into()));
        }
        Ok(NType { labels, counts, n })
    }

    /// Counts on `0..counts.len()`.
    pub fn indexed(counts: Vec<u64>) -> Result<Self> {
        Self::new((0..counts.len()).map(Label::Index).collect(), counts)
    }

    /// The distribution as an `n`-type, if `n·P(x)` is integral everywhere.
    pub fn from_distribution(p: &ExactDist, n: u64) -> Result<Self> {
        let scale = BigRational::from_integer(BigInt::from(n));
        let counts = p
            .weights()
            .iter()
            .map(|w| {
                let c = w * &scale;
                if c.is_integer() {
                    c.to_integer().to_u64().ok_or_else(|| Error::Domain("count overflow".into()))
                } else {
                    Err(Error::InvalidDistribution(format!("{p:?} is not a {n}-type")))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(p.labels().to_vec(), counts)
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn alphabet_size(&self) -> usize {
        self.counts.len()
    }

    /// The same type with every count multiplied by `k` (an `kn`-type).
    pub fn scaled(&self, k: u64) -> Self {
        NType {
            labels: self.labels.clone(),
            counts: self.counts.iter().map(|c| c * k).collect(),
            n: self.n * k,
        }
    }

    pub fn to_distribution(&self) -> ExactDist {
        let weights = self
            .counts
            .iter()
            .map(|&c| BigRational::new(c.into(), self.n.into()))
            .collect();
        ExactDist::new(self.labels.clone(), weights).expect("counts sum to n")
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.counts.iter().map(|&c| c as f64 / self.n as f64).collect()
    }

    pub fn entropy(&self) -> f64 {
        entropy_bits(&self.probabilities())
    }
}

/// All `n`-types on `labels`, in lexicographically decreasing count order.
pub fn enumerate_ntypes(labels: &[Label], n: u64) -> Vec<NType> {
    let mut out = Vec::new();
    if labels.is_empty() {
        return out;
    }
    let mut counts = vec![0u64; labels.len()];
    compositions(&mut counts, 0, n, &mut |c| {
        out.push(NType {
            labels: labels.to_vec(),
            counts: c.to_vec(),
            n,
        })
    });
    out
}

fn compositions(counts: &mut [u64], i: usize, left: u64, emit: &mut impl FnMut(&[u64])) {
    if i + 1 == counts.len() {
        counts[i] = left;
        emit(counts);
        return;
    }
    for c in (0..=left).rev() {
        counts[i] = c;
        compositions(counts, i + 1, left - c, emit);
    }
}

/// Empirical type of a sequence over the alphabet `0..alphabet`.
pub fn type_of(sequence: &[u32], alphabet: usize) -> Result<NType> {
    let mut counts = vec![0u64; alphabet];
    for &s in sequence {
        *counts.get_mut(s as usize).ok_or(Error::VertexOutOfRange {
            vertex: s as usize,
            order: alphabet,
        })? += 1;
    }
    NType::indexed(counts)
}

fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// `|T^n_P| = n! / ∏ (nP(x))!`.
pub fn type_class_size(p: &NType) -> BigUint {
    p.counts
        .iter()
        .fold(factorial(p.n), |acc, &c| acc / factorial(c))
}

/// Checks `(n+1)^{-|X|} 2^{nH(P)} ≤ |T^n_P| ≤ 2^{nH(P)}` exactly, using
/// `2^{nH(P)} = n^n / ∏ k_x^{k_x}` (with `0^0 = 1`).
pub fn type_class_bounds_hold(p: &NType) -> bool {
    let pow = |b: u64, e: u64| num::pow(BigUint::from(b), e as usize);
    let size = type_class_size(p);
    let prod = p
        .counts
        .iter()
        .fold(BigUint::one(), |acc, &k| acc * pow(k, k));
    let nn = pow(p.n, p.n);
    let lhs = &size * &prod;
    debug_assert!(!lhs.is_zero());
    lhs <= nn && nn <= pow(p.n + 1, p.counts.len() as u64) * lhs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two() -> Vec<Label> {
        vec![Label::Name("a".into()), Label::Name("b".into())]
    }

    #[test]
    fn enumerate_binary_2_types() {
        let types = enumerate_ntypes(&two(), 2);
        let counts: Vec<_> = types.iter().map(|t| t.counts().to_vec()).collect();
        assert_eq!(counts, vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
    }

    #[test]
    fn class_sizes() {
        assert_eq!(type_class_size(&NType::new(two(), vec![1, 1]).unwrap()), 2u32.into());
        let u3 = NType::indexed(vec![1, 1, 1]).unwrap();
        assert_eq!(type_class_size(&u3), 6u32.into());
        assert!(type_class_bounds_hold(&u3));
        let h = u3.entropy();
        assert!(2f64.powf(3.0 * h) / 64.0 <= 6.0 && 6.0 <= 2f64.powf(3.0 * h) + 1e-9);
    }

    #[test]
    fn type_classes_partition_sequence_space() {
        let labels: Vec<Label> = (0..3).map(Label::Index).collect();
        let total = enumerate_ntypes(&labels, 6)
            .iter()
            .fold(BigUint::zero(), |acc, t| acc + type_class_size(t));
        assert_eq!(total, 729u32.into());
        assert_eq!(enumerate_ntypes(&labels, 6).len(), 28);
    }

    #[test]
    fn type_of_and_conversion() {
        let t = type_of(&[0, 2, 2, 1], 3).unwrap();
        assert_eq!(t.counts(), &[1, 1, 2]);
        assert!(type_of(&[3], 3).is_err());
        let d = t.to_distribution();
        assert_eq!(NType::from_distribution(&d, 4).unwrap(), t);
        assert_eq!(NType::from_distribution(&d, 8).unwrap(), t.scaled(2));
        assert!(NType::from_distribution(&d, 6).is_err());
    }
}
