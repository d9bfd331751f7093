//! Primal-dual interior-point method for small dense semidefinite programs
//! with sparse constraint matrices, using Nesterov–Todd scaling.
//!
//! Standard form: `min ⟨C,X⟩ s.t. ⟨A_k,X⟩ = b_k, X ⪰ 0` with dual
//! `max bᵀy s.t. Σ y_k A_k + Z = C, Z ⪰ 0`.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{Error, Result};

/// Symmetric matrix stored as a full list of `(row, col, value)` entries
/// (both triangles).
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SparseSym {
    entries: Vec<(usize, usize, f64)>,
}

impl SparseSym {
    pub fn identity(n: usize) -> Self {
        SparseSym {
            entries: (0..n).map(|i| (i, i, 1.0)).collect(),
        }
    }

    /// `v·(E_ij + E_ji)`, or `v·E_ii` on the diagonal.
    pub fn symmetric_unit(i: usize, j: usize, v: f64) -> Self {
        let mut s = SparseSym::default();
        s.add(i, j, v);
        s
    }

    /// Adds `v` at `(i,j)` and `(j,i)` (once on the diagonal).
    pub fn add(&mut self, i: usize, j: usize, v: f64) {
        self.entries.push((i, j, v));
        if i != j {
            self.entries.push((j, i, v));
        }
    }

    pub fn entries(&self) -> &[(usize, usize, f64)] {
        &self.entries
    }

    /// `⟨self, M⟩ = Σ self_ij M_ij`.
    pub fn dot(&self, m: &DMatrix<f64>) -> f64 {
        self.entries.iter().map(|&(i, j, v)| v * m[(i, j)]).sum()
    }

    fn axpy_into(&self, alpha: f64, m: &mut DMatrix<f64>) {
        for &(i, j, v) in &self.entries {
            m[(i, j)] += alpha * v;
        }
    }

    /// `⟨self, W B W⟩` for symmetric `W`.
    pub fn congruence_dot(&self, w: &DMatrix<f64>, other: &SparseSym) -> f64 {
        let mut s = 0.0;
        for &(a, b, u) in &self.entries {
            for &(c, d, v) in &other.entries {
                s += u * v * w[(a, c)] * w[(d, b)];
            }
        }
        s
    }
}

#[derive(Clone, Debug)]
pub struct SdpProblem {
    pub c: DMatrix<f64>,
    pub constraints: Vec<SparseSym>,
    pub b: DVector<f64>,
}

#[derive(Clone, Debug)]
pub struct SdpSolution {
    pub x: DMatrix<f64>,
    pub y: DVector<f64>,
    pub z: DMatrix<f64>,
    pub primal: f64,
    pub dual: f64,
    pub iterations: usize,
}

#[derive(Clone, Copy, Debug)]
pub struct SdpSettings {
    pub gap_tol: f64,
    pub feas_tol: f64,
    pub max_iter: usize,
    pub step: f64,
}

impl Default for SdpSettings {
    fn default() -> Self {
        SdpSettings {
            gap_tol: 1e-8,
            feas_tol: 1e-8,
            max_iter: 200,
            step: 0.98,
        }
    }
}

impl SdpProblem {
    fn n(&self) -> usize {
        self.c.nrows()
    }

    fn apply(&self, x: &DMatrix<f64>) -> DVector<f64> {
        DVector::from_iterator(self.constraints.len(), self.constraints.iter().map(|a| a.dot(x)))
    }

    fn adjoint(&self, y: &DVector<f64>) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.n(), self.n());
        for (a, &yk) in self.constraints.iter().zip(y.iter()) {
            a.axpy_into(yk, &mut m);
        }
        m
    }

    /// Runs the interior-point method from `(x0, y0)`; `Z₀ = C - Aᵀy₀` is used
    /// when positive definite, otherwise a multiple of the identity.
    pub fn solve(
        &self,
        x0: DMatrix<f64>,
        y0: DVector<f64>,
        settings: &SdpSettings,
    ) -> Result<SdpSolution> {
        let n = self.n();
        let (mut x, mut y) = (x0, y0);
        let mut z = &self.c - self.adjoint(&y);
        if min_eig(&z) <= 0.0 {
            let scale = self.c.norm().max(1.0);
            z = DMatrix::identity(n, n) * scale;
        }
        let b_norm = 1.0 + self.b.norm();
        let c_norm = 1.0 + self.c.norm();
        let mut best = (f64::NAN, f64::NAN);
        for iter in 0..settings.max_iter {
            let primal = self.c.dot(&x);
            let dual = self.b.dot(&y);
            best = (primal, dual);
            let rp = &self.b - self.apply(&x);
            let rd = &self.c - &z - self.adjoint(&y);
            let gap = (primal - dual).abs() / (1.0 + primal.abs() + dual.abs());
            let mu = x.dot(&z) / n as f64;
            if gap <= settings.gap_tol
                && rp.norm() / b_norm <= settings.feas_tol
                && rd.norm() / c_norm <= settings.feas_tol
                && mu <= settings.gap_tol * (1.0 + primal.abs())
            {
                return Ok(SdpSolution {
                    x,
                    y,
                    z,
                    primal,
                    dual,
                    iterations: iter,
                });
            }
            // near the optimum the scaling becomes ill-conditioned; a
            // numerical failure there still leaves an accurate iterate
            let nearly = gap <= 1e3 * settings.gap_tol
                && rp.norm() / b_norm <= 1e3 * settings.feas_tol
                && rd.norm() / c_norm <= 1e3 * settings.feas_tol;
            match self.step(&x, &y, &z, &rp, &rd, mu, settings) {
                Ok((nx, ny, nz)) => {
                    x = nx;
                    y = ny;
                    z = nz;
                }
                Err(_) if nearly => {
                    return Ok(SdpSolution {
                        x,
                        y,
                        z,
                        primal,
                        dual,
                        iterations: iter,
                    })
                }
                Err(e) => return Err(e),
            }
        }
        Err(Error::NotConverged {
            iterations: settings.max_iter,
            primal: best.0,
            dual: best.1,
        })
    }

    #[allow(clippy::too_many_arguments)]
    fn step(
        &self,
        x: &DMatrix<f64>,
        y: &DVector<f64>,
        z: &DMatrix<f64>,
        rp: &DVector<f64>,
        rd: &DMatrix<f64>,
        mu: f64,
        settings: &SdpSettings,
    ) -> Result<(DMatrix<f64>, DVector<f64>, DMatrix<f64>)> {
        let m = self.constraints.len();
        let w = nt_scaling(x, z)?;
        let mut schur = DMatrix::zeros(m, m);
        for k in 0..m {
            for l in k..m {
                let v = self.constraints[k].congruence_dot(&w, &self.constraints[l]);
                schur[(k, l)] = v;
                schur[(l, k)] = v;
            }
        }
        let chol = schur
            .cholesky()
            .ok_or_else(|| Error::Numerical("Schur complement not positive definite".into()))?;
        let wrdw = &w * rd * &w;
        let direction = |rc: &DMatrix<f64>| {
            let rhs = rp - self.apply(&(rc - &wrdw));
            let dy = chol.solve(&rhs);
            let dz = rd - self.adjoint(&dy);
            let dx = symmetrize(&(rc - &w * &dz * &w));
            (dx, dy, dz)
        };
        // predictor
        let (dx, _, dz) = direction(&(-x));
        let ap = max_step(x, &dx)?.min(1.0);
        let ad = max_step(z, &dz)?.min(1.0);
        let next = (x + &dx * ap).dot(&(z + &dz * ad));
        let sigma = (next / x.dot(z)).clamp(0.0, 1.0).powi(3);
        // corrector
        let z_inv = sym_inverse(z)?;
        let rc = &z_inv * (sigma * mu) - x;
        let (dx, dy, dz) = direction(&rc);
        let ap = (settings.step * max_step(x, &dx)?).min(1.0);
        let ad = (settings.step * max_step(z, &dz)?).min(1.0);
        Ok((
            symmetrize(&(x + &dx * ap)),
            y + &dy * ad,
            symmetrize(&(z + &dz * ad)),
        ))
    }
}

fn symmetrize(m: &DMatrix<f64>) -> DMatrix<f64> {
    (m + m.transpose()) * 0.5
}

fn min_eig(m: &DMatrix<f64>) -> f64 {
    SymmetricEigen::new(m.clone())
        .eigenvalues
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min)
}

/// `M^{p}` for symmetric positive definite `M`.
fn sym_power(m: &DMatrix<f64>, p: f64) -> Result<DMatrix<f64>> {
    let eig = SymmetricEigen::new(m.clone());
    if eig.eigenvalues.iter().any(|&l| l <= 0.0 || !l.is_finite()) {
        return Err(Error::Numerical("iterate lost positive definiteness".into()));
    }
    let d = DMatrix::from_diagonal(&eig.eigenvalues.map(|l| l.powf(p)));
    Ok(&eig.eigenvectors * d * eig.eigenvectors.transpose())
}

fn sym_inverse(m: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    sym_power(m, -1.0)
}

/// `W = X^{1/2} (X^{1/2} Z X^{1/2})^{-1/2} X^{1/2}`, the unique symmetric
/// positive definite matrix with `W Z W = X`.
fn nt_scaling(x: &DMatrix<f64>, z: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let xh = sym_power(x, 0.5)?;
    let inner = symmetrize(&(&xh * z * &xh));
    Ok(symmetrize(&(&xh * sym_power(&inner, -0.5)? * &xh)))
}

/// Largest `α` with `M + α D ⪰ 0` (infinite when `D ⪰ 0`).
fn max_step(m: &DMatrix<f64>, d: &DMatrix<f64>) -> Result<f64> {
    let mh = sym_power(m, -0.5)?;
    let lam = min_eig(&symmetrize(&(&mh * d * &mh)));
    Ok(if lam < 0.0 { -1.0 / lam } else { f64::INFINITY })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_eigenvalue_as_sdp() {
        // min ⟨C,X⟩ s.t. tr X = 1 is λ_min(C)
        let c = DMatrix::from_row_slice(2, 2, &[2.0, 1.0, 1.0, 2.0]);
        let p = SdpProblem {
            c,
            constraints: vec![SparseSym::identity(2)],
            b: DVector::from_element(1, 1.0),
        };
        let s = p
            .solve(DMatrix::identity(2, 2) * 0.5, DVector::zeros(1), &SdpSettings::default())
            .unwrap();
        assert!((s.primal - 1.0).abs() < 1e-7, "{}", s.primal);
        assert!((s.dual - 1.0).abs() < 1e-7);
    }

    #[test]
    fn infeasible_start_converges() {
        // min X_00 + X_11 s.t. X_01 = 1 → 2 at X = J
        let mut c = DMatrix::identity(2, 2);
        c[(0, 1)] = 0.0;
        let p = SdpProblem {
            c,
            constraints: vec![SparseSym::symmetric_unit(0, 1, 0.5)],
            b: DVector::from_element(1, 1.0),
        };
        let s = p
            .solve(DMatrix::identity(2, 2), DVector::zeros(1), &SdpSettings::default())
            .unwrap();
        assert!((s.primal - 2.0).abs() < 1e-6, "{}", s.primal);
    }
}
