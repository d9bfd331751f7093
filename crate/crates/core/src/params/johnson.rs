//! The graphs `J^p_n` on `(p+1)`-subsets of `[n]`, adjacent when `p` does not
//! divide the size of the intersection, and their theta numbers computed
//! exactly inside the Johnson scheme.

use num::{BigInt, BigRational, One, Zero};

use crate::error::{Error, Result};
use crate::graph::{Graph, Label};
use crate::numeric::maximize;
use crate::types::materialization_cap;

fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn subsets(n: u32, k: usize) -> Vec<Vec<u32>> {
    fn go(start: u32, n: u32, k: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            cur.push(x);
            go(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// `J^p_n`, vertices labeled by their subsets in lexicographic order.
pub fn johnson_type_graph(n: u32, p: u32) -> Result<Graph> {
    if p == 0 {
        return Err(Error::Domain("J^p_n needs p ≥ 1".into()));
    }
    let k = (p + 1) as usize;
    let count = binomial(n as u64, k as u64);
    let cap = materialization_cap();
    if count > cap as u128 {
        return Err(Error::CapExceeded { requested: count, cap });
    }
    let sets = subsets(n, k);
    let adjacent = |a: &[u32], b: &[u32]| {
        let common = a.iter().filter(|x| b.contains(x)).count() as u32;
        common % p != 0
    };
    let labels = sets.iter().cloned().map(Label::Seq).collect();
    Ok(Graph::from_fn(labels, |i, j| adjacent(&sets[i], &sets[j])))
}

/// Eigenvalue of the distance-`d` relation of the Johnson scheme `J(n,k)` on
/// its `j`-th eigenspace (Eberlein polynomial).
fn eberlein(n: i64, k: i64, d: i64, j: i64) -> BigInt {
    let c = |a: i64, b: i64| -> BigInt {
        if a < 0 || b < 0 || b > a {
            BigInt::zero()
        } else {
            BigInt::from(binomial(a as u64, b as u64))
        }
    };
    (0..=d)
        .map(|h| {
            let term = c(j, h) * c(k - j, d - h) * c(n - k - j, d - h);
            if h % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .sum()
}

/// `ϑ(J^p_n)` exactly. Averaging an optimal `B` over the symmetric group puts
/// it in the Bose–Mesner algebra of `J(n, p+1)`, where positive
/// semidefiniteness is a finite set of linear inequalities on the
/// eigenvalues; the resulting LP is solved over the rationals.
pub fn theta_johnson_scheme(n: u32, p: u32) -> Result<BigRational> {
    if p == 0 {
        return Err(Error::Domain("J^p_n needs p ≥ 1".into()));
    }
    let k = (p + 1) as i64;
    let n = n as i64;
    if 2 * k > n {
        return Err(Error::Unsupported(format!(
            "scheme formula needs n ≥ 2(p+1), got n={n}, p={p}"
        )));
    }
    // free variables: relations with intersection size i < k and p | i
    let free: Vec<i64> = (0..k).filter(|i| i % p as i64 == 0).collect();
    let value_of = |d: i64, j: i64| BigRational::from_integer(eberlein(n, k, d, j));
    // each free variable x_i = u_i - v_i
    let mut c = Vec::new();
    for &i in &free {
        let kd = value_of(k - i, 0);
        c.push(kd.clone());
        c.push(-kd);
    }
    let rows: Vec<Vec<BigRational>> = (1..=k)
        .map(|j| {
            free.iter()
                .flat_map(|&i| {
                    let e = value_of(k - i, j);
                    [-e.clone(), e]
                })
                .collect()
        })
        .collect();
    let sol = maximize(&c, &rows, &vec![BigRational::one(); rows.len()])?;
    Ok(sol.value + BigRational::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::theta::lovasz_theta;
    use num::ToPrimitive;

    #[test]
    fn small_johnson_graphs() {
        // p = 1 divides every intersection size: no edges
        let j13 = johnson_type_graph(3, 1).unwrap();
        assert_eq!(j13.order(), 3);
        assert_eq!(j13.edge_count(), 0);
        let j2_12 = johnson_type_graph(12, 2).unwrap();
        assert_eq!(j2_12.order(), 220);
        // adjacency is |X ∩ Y| = 1: 3·C(9,2) = 108 neighbors
        assert_eq!(j2_12.degree(0), 108);
        assert!(johnson_type_graph(5, 0).is_err());
    }

    #[test]
    fn scheme_theta_matches_fixture_value() {
        assert_eq!(theta_johnson_scheme(12, 2).unwrap(), BigRational::new(260.into(), 11.into()));
    }

    #[test]
    fn scheme_theta_matches_sdp_on_small_instances() {
        for (n, p) in [(6, 2), (7, 2), (8, 3), (6, 1)] {
            let exact = theta_johnson_scheme(n, p).unwrap().to_f64().unwrap();
            let g = johnson_type_graph(n, p).unwrap();
            let sdp = lovasz_theta(&g, None).unwrap().to_f64();
            assert!((exact - sdp).abs() < 1e-5, "J^{p}_{n}: {exact} vs {sdp}");
        }
    }

    #[test]
    fn permutations_act_as_automorphisms() {
        let g = johnson_type_graph(7, 2).unwrap();
        let sigma = [3u32, 0, 6, 1, 2, 5, 4];
        let perm: Vec<usize> = g
            .labels()
            .iter()
            .map(|l| {
                let mut image: Vec<u32> = l.as_seq().unwrap().iter().map(|&x| sigma[x as usize]).collect();
                image.sort_unstable();
                g.index_of(&Label::Seq(image)).unwrap()
            })
            .collect();
        assert!(g.is_automorphism(&perm));
    }
}
