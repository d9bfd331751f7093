//! Dense tableau simplex over exact rationals with Bland's anti-cycling rule.

use num::{BigRational, Signed, Zero};

use crate::error::{Error, Result};

/// Optimal solution of `max cᵀx s.t. Ax ≤ b, x ≥ 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution {
    pub value: BigRational,
    pub primal: Vec<BigRational>,
    /// Optimal multipliers of the rows of `A` (a solution of the dual
    /// `min bᵀy s.t. Aᵀy ≥ c, y ≥ 0`).
    pub dual: Vec<BigRational>,
    pub pivots: usize,
}

/// Solves `max cᵀx s.t. Ax ≤ b, x ≥ 0` for `b ≥ 0`, starting from the slack
/// basis. Returns [`Error::Unbounded`] when the objective is unbounded.
pub fn maximize(c: &[BigRational], a: &[Vec<BigRational>], b: &[BigRational]) -> Result<LpSolution> {
    let m = a.len();
    let n = c.len();
    if b.len() != m || a.iter().any(|row| row.len() != n) {
        return Err(Error::Shape(format!("LP with {m} rows, {} right-hand sides, {n} columns", b.len())));
    }
    if b.iter().any(Signed::is_negative) {
        return Err(Error::Domain("slack basis needs b ≥ 0".into()));
    }
    let width = n + m + 1;
    // rows 0..m are constraints, row m is the reduced-cost row (z_j - c_j)
    let mut t: Vec<Vec<BigRational>> = Vec::with_capacity(m + 1);
    for (i, row) in a.iter().enumerate() {
        let mut r = vec![BigRational::zero(); width];
        r[..n].clone_from_slice(row);
        r[n + i] = BigRational::from_integer(1.into());
        r[width - 1] = b[i].clone();
        t.push(r);
    }
    let mut obj = vec![BigRational::zero(); width];
    for j in 0..n {
        obj[j] = -c[j].clone();
    }
    t.push(obj);
    let mut basis: Vec<usize> = (n..n + m).collect();
    let mut pivots = 0;
    loop {
        let Some(enter) = (0..n + m).find(|&j| t[m][j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, BigRational)> = None;
        for i in 0..m {
            if t[i][enter].is_positive() {
                let ratio = &t[i][width - 1] / &t[i][enter];
                let better = match &leave {
                    None => true,
                    Some((l, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*l]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((row, _)) = leave else {
            return Err(Error::Unbounded);
        };
        pivot(&mut t, row, enter);
        basis[row] = enter;
        pivots += 1;
    }
    let mut primal = vec![BigRational::zero(); n];
    for (i, &v) in basis.iter().enumerate() {
        if v < n {
            primal[v] = t[i][width - 1].clone();
        }
    }
    Ok(LpSolution {
        value: t[m][width - 1].clone(),
        primal,
        dual: t[m][n..n + m].to_vec(),
        pivots,
    })
}

fn pivot(t: &mut [Vec<BigRational>], row: usize, col: usize) {
    let p = t[row][col].clone();
    for x in t[row].iter_mut() {
        if !x.is_zero() {
            *x = &*x / &p;
        }
    }
    let pivot_row = t[row].clone();
    for (i, r) in t.iter_mut().enumerate() {
        if i == row || r[col].is_zero() {
            continue;
        }
        let f = r[col].clone();
        for (x, pv) in r.iter_mut().zip(&pivot_row) {
            if !pv.is_zero() {
                *x = &*x - &f * pv;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn rows(a: &[&[i64]]) -> Vec<Vec<BigRational>> {
        a.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
    }

    #[test]
    fn textbook_problem() {
        // max 3x + 5y, x ≤ 4, 2y ≤ 12, 3x + 2y ≤ 18 → 36 at (2, 6)
        let s = maximize(&[q(3), q(5)], &rows(&[&[1, 0], &[0, 2], &[3, 2]]), &[q(4), q(12), q(18)])
            .unwrap();
        assert_eq!(s.value, q(36));
        assert_eq!(s.primal, vec![q(2), q(6)]);
        // strong duality with the returned multipliers
        let dual_value: BigRational = s.dual.iter().zip([4, 12, 18]).map(|(y, b)| y * q(b)).sum();
        assert_eq!(dual_value, q(36));
    }

    #[test]
    fn five_cycle_edge_packing() {
        // max Σx s.t. x_i + x_{i+1} ≤ 1: value 5/2
        let a: Vec<Vec<BigRational>> = (0..5)
            .map(|i| (0..5).map(|j| q((j == i || j == (i + 1) % 5) as i64)).collect())
            .collect();
        let s = maximize(&vec![q(1); 5], &a, &vec![q(1); 5]).unwrap();
        assert_eq!(s.value, BigRational::new(5.into(), 2.into()));
    }

    #[test]
    fn unbounded_and_degenerate() {
        assert_eq!(maximize(&[q(1), q(1)], &rows(&[&[1, -1]]), &[q(1)]), Err(Error::Unbounded));
        // degenerate vertex at the origin
        let s = maximize(&[q(1), q(1)], &rows(&[&[1, -1], &[-1, 1], &[1, 1]]), &[q(0), q(0), q(2)])
            .unwrap();
        assert_eq!(s.value, q(2));
        assert!(maximize(&[q(1)], &rows(&[&[1]]), &[q(-1)]).is_err());
    }
}
