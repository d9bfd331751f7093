//! Matrices over prime fields.

use crate::error::{Error, Result};

/// Dense matrix over `GF(p)`, row-major, entries in `0..p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GFMatrix {
    p: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

impl GFMatrix {
    /// Entries are reduced mod `p` (negative values wrap).
    pub fn new(p: u64, rows: usize, cols: usize, entries: &[i64]) -> Result<Self> {
        if !is_prime(p) || p > u32::MAX as u64 {
            return Err(Error::Domain(format!("{p} is not a supported prime field order")));
        }
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}×{cols} matrix",
                entries.len()
            )));
        }
        let data = entries.iter().map(|&e| e.rem_euclid(p as i64) as u64).collect();
        Ok(GFMatrix { p, rows, cols, data })
    }

    pub fn from_rows(p: u64, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged matrix rows".into()));
        }
        let flat: Vec<i64> = rows.concat();
        Self::new(p, rows.len(), cols, &flat)
    }

    pub fn identity(p: u64, n: usize) -> Result<Self> {
        let e: Vec<i64> = (0..n * n).map(|k| (k / n == k % n) as i64).collect();
        Self::new(p, n, n, &e)
    }

    pub fn order(&self) -> u64 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    /// Rank by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let p = self.p;
        let mut a = self.data.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0;
        for col in 0..cols {
            let Some(pivot) = (rank..rows).find(|&r| a[r * cols + col] != 0) else {
                continue;
            };
            for j in 0..cols {
                a.swap(pivot * cols + j, rank * cols + j);
            }
            let inv = pow_mod(a[rank * cols + col], p - 2, p);
            for j in col..cols {
                a[rank * cols + j] = a[rank * cols + j] * inv % p;
            }
            for r in 0..rows {
                let f = a[r * cols + col];
                if r != rank && f != 0 {
                    for j in col..cols {
                        let sub = f * a[rank * cols + j] % p;
                        a[r * cols + j] = (a[r * cols + j] + p - sub) % p;
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranks() {
        assert_eq!(GFMatrix::identity(2, 5).unwrap().rank(), 5);
        assert_eq!(GFMatrix::new(2, 3, 3, &[1; 9]).unwrap().rank(), 1);
        // determinant 2: singular over GF(2) only
        let m = [1, 1, 0, 0, 1, 1, 1, 0, 1];
        assert_eq!(GFMatrix::new(2, 3, 3, &m).unwrap().rank(), 2);
        assert_eq!(GFMatrix::new(3, 3, 3, &m).unwrap().rank(), 3);
        assert_eq!(GFMatrix::new(5, 2, 3, &[1, 2, 3, -4, -8, -12]).unwrap().rank(), 1);
        assert_eq!(GFMatrix::new(7, 0, 0, &[]).unwrap().rank(), 0);
    }

    #[test]
    fn rejects_composite_order() {
        assert!(GFMatrix::identity(4, 2).is_err());
        assert!(GFMatrix::identity(1, 2).is_err());
        assert!(GFMatrix::new(2, 2, 2, &[1, 0, 1]).is_err());
    }
}
