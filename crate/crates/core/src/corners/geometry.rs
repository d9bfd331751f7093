//! Membership, support functions and distances between corners.

use num::{BigRational, ToPrimitive, Zero};

use super::{ConvexCorner, Representation};
use crate::error::{Error, Result};
use crate::numeric::maximize;

const PRIMES: [u32; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];

/// `max_{a ∈ A} ⟨w, a⟩` for `w ≥ 0`, with a maximizer.
pub fn support(corner: &ConvexCorner, w: &[f64]) -> Result<(f64, Vec<f64>)> {
    if w.len() != corner.dim() {
        return Err(Error::Shape("direction of wrong dimension".into()));
    }
    match corner.representation() {
        Representation::Generators(_) => {
            let gens = corner.generators_f64().expect("generator corner");
            let value = |g: &Vec<f64>| g.iter().zip(w).map(|(a, b)| a * b).sum::<f64>();
            let best = gens
                .iter()
                .max_by(|a, b| value(a).total_cmp(&value(b)))
                .expect("corners have generators");
            Ok((value(best), best.clone()))
        }
        Representation::Oracle(o) => o.support(w),
    }
}

/// Gauge of `x ≥ 0` with respect to a generator corner:
/// `max ⟨x, y⟩ s.t. ⟨g, y⟩ ≤ 1 for every generator, y ≥ 0`.
pub fn gauge_exact(corner: &ConvexCorner, x: &[BigRational]) -> Result<BigRational> {
    let gens = corner
        .generators()
        .ok_or_else(|| Error::Unsupported("exact gauge needs generators".into()))?;
    if x.len() != corner.dim() {
        return Err(Error::Shape("point of wrong dimension".into()));
    }
    let ones = vec![BigRational::from_integer(1.into()); gens.len()];
    Ok(maximize(x, gens, &ones)?.value)
}

/// Exact membership in a generator corner.
pub fn contains_exact(corner: &ConvexCorner, x: &[BigRational]) -> Result<bool> {
    if x.iter().any(|v| v < &BigRational::zero()) {
        return Ok(false);
    }
    Ok(gauge_exact(corner, x)? <= BigRational::from_integer(1.into()))
}

/// Membership up to `tol` (relative to the gauge for generator corners).
pub fn contains(corner: &ConvexCorner, x: &[f64], tol: f64) -> Result<bool> {
    if x.len() != corner.dim() {
        return Err(Error::Shape("point of wrong dimension".into()));
    }
    if x.iter().any(|v| !v.is_finite()) {
        return Err(Error::Domain("point must be finite".into()));
    }
    if x.iter().any(|&v| v < -tol) {
        return Ok(false);
    }
    match corner.representation() {
        Representation::Generators(_) => {
            let exact: Vec<BigRational> = x
                .iter()
                .map(|&v| BigRational::from_float(v.max(0.0)).expect("finite"))
                .collect();
            let g = gauge_exact(corner, &exact)?.to_f64().unwrap_or(f64::INFINITY);
            Ok(g <= 1.0 + tol)
        }
        Representation::Oracle(o) => o.contains(x, tol),
    }
}

fn radical_inverse(mut i: u64, base: u32) -> f64 {
    let b = base as f64;
    let mut f = 1.0 / b;
    let mut r = 0.0;
    while i > 0 {
        r += f * (i % base as u64) as f64;
        i /= base as u64;
        f /= b;
    }
    r
}

/// The coordinate unit vectors followed by normalized Halton points, `count`
/// directions in total, all in the nonnegative orthant.
pub fn halton_directions(d: usize, count: usize) -> Vec<Vec<f64>> {
    assert!(d <= PRIMES.len(), "Halton directions supported up to dimension {}", PRIMES.len());
    let mut out: Vec<Vec<f64>> = (0..d.min(count))
        .map(|i| (0..d).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    let mut i = 1u64;
    while out.len() < count {
        let v: Vec<f64> = PRIMES[..d].iter().map(|&p| radical_inverse(i, p)).collect();
        i += 1;
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-9 {
            out.push(v.iter().map(|x| x / norm).collect());
        }
    }
    out
}

/// Hausdorff distance estimated from the support functions on `samples`
/// fixed nonnegative directions. For down-closed sets the nonnegative
/// directions realize the distance, so this is a lower estimate that becomes
/// exact as the samples get dense.
pub fn hausdorff_distance(a: &ConvexCorner, b: &ConvexCorner, samples: usize) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::Shape("corners of different dimension".into()));
    }
    let mut worst: f64 = 0.0;
    for u in halton_directions(a.dim(), samples) {
        let ha = support(a, &u)?.0;
        let hb = support(b, &u)?.0;
        worst = worst.max((ha - hb).abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corners::vertex_packing;
    use crate::graph::Graph;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn membership_in_cycle_packing() {
        let vp = vertex_packing(&Graph::cycle(5)).unwrap();
        // the odd-cycle inequality Σ a ≤ 2 cuts off the all-halves point
        assert!(contains_exact(&vp, &vec![q(2, 5); 5]).unwrap());
        assert!(!contains_exact(&vp, &vec![q(1, 2); 5]).unwrap());
        assert_eq!(gauge_exact(&vp, &vec![q(1, 1); 5]).unwrap(), q(5, 2));
        assert!(contains(&vp, &[1.0, 0.0, 1.0, 0.0, 0.0], 0.0).unwrap());
        assert!(!contains(&vp, &[1.0, 1.0, 0.0, 0.0, 0.0], 1e-6).unwrap());
    }

    #[test]
    fn directions_are_unit_and_nonnegative() {
        let dirs = halton_directions(3, 50);
        assert_eq!(dirs.len(), 50);
        for u in dirs {
            assert!(u.iter().all(|&x| x >= 0.0));
            assert!((u.iter().map(|x| x * x).sum::<f64>() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn hausdorff_of_simplex_and_cube() {
        let s = ConvexCorner::unit_corner(2);
        let c = ConvexCorner::unit_cube(2);
        let d = hausdorff_distance(&s, &c, 1000).unwrap();
        // attained in direction (1,1)/√2: √2 − 1/√2
        assert!((d - 0.5f64.sqrt()).abs() < 1e-3, "{d}");
        assert_eq!(hausdorff_distance(&s, &s, 100).unwrap(), 0.0);
    }
}
