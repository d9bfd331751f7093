/// Base-2 logarithm.
#[inline]
pub fn log2(x: f64) -> f64 {
    x.log2()
}

/// Shannon entropy in bits, with `0 log 0 = 0`.
pub fn entropy_bits(p: &[f64]) -> f64 {
    -p.iter().filter(|&&x| x > 0.0).map(|&x| x * x.log2()).sum::<f64>()
}

/// `h(p) = -p log p - (1-p) log(1-p)`.
pub fn binary_entropy(p: f64) -> f64 {
    entropy_bits(&[p, 1.0 - p])
}

/// `d(p‖q)` between Bernoulli distributions, `+∞` when `p` puts mass where
/// `q` has none.
pub fn binary_relative_entropy(p: f64, q: f64) -> f64 {
    let term = |a: f64, b: f64| {
        if a <= 0.0 {
            0.0
        } else if b <= 0.0 {
            f64::INFINITY
        } else {
            a * (a / b).log2()
        }
    };
    (term(p, q) + term(1.0 - p, 1.0 - q)).max(0.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entropy_values() {
        assert_eq!(entropy_bits(&[0.25; 4]), 2.0);
        assert_eq!(binary_entropy(0.5), 1.0);
        assert_eq!(binary_entropy(0.0), 0.0);
        assert_eq!(binary_relative_entropy(0.3, 0.3), 0.0);
        let expected = 0.5 * 2f64.log2() + 0.5 * (2.0f64 / 3.0).log2();
        assert!((binary_relative_entropy(0.5, 0.25) - expected).abs() < 1e-15);
        assert!((binary_relative_entropy(0.5, 0.25) - 0.2075).abs() < 1e-4);
        assert_eq!(binary_relative_entropy(0.5, 0.0), f64::INFINITY);
        assert_eq!(binary_relative_entropy(0.0, 0.0), 0.0);
        assert_eq!(binary_relative_entropy(1.0, 1.0), 0.0);
    }
}
