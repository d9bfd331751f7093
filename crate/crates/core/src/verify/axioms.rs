//! The four spectral-point axioms on all pairs of small corpus graphs.

use std::cmp::Ordering;

use serde_json::json;

use super::{check, each, expect, Check, Corpus, Entry};
use crate::error::Result;
use crate::graph::{disjoint_union, exists_cohomomorphism, strong_product, Graph, VertexMap};
use crate::params::{FractionalCliqueCover, IndependenceNumber, ParamValue, SpectralPoint, Theta};

fn close(a: &ParamValue, b: &ParamValue, tol: f64) -> bool {
    if a.is_exact() && b.is_exact() {
        a.compare(b) == Some(Ordering::Equal)
    } else {
        (a.to_f64() - b.to_f64()).abs() <= tol
    }
}

fn at_most(a: &ParamValue, b: &ParamValue, tol: f64) -> bool {
    if a.is_exact() && b.is_exact() {
        a.compare(b) != Some(Ordering::Greater)
    } else {
        a.to_f64() <= b.to_f64() + tol
    }
}

fn text(v: &ParamValue) -> String {
    if v.is_exact() {
        v.to_string()
    } else {
        format!("{:.9}", v.to_f64())
    }
}

/// S1–S4 for `f` on the small corpus: S1 and S2 on unordered pairs, S3 on
/// ordered pairs related by a cohomomorphism, S4 on `K1` and the empty graph.
/// A parameter that is not spectral gets its failing axiom marked as a
/// negative control.
pub fn run_axiom_suite(f: &dyn SpectralPoint, corpus: &Corpus) -> Vec<Check> {
    let graphs: &[Entry] = &corpus.small;
    let tol = f.tolerance();
    let singles: Vec<Result<ParamValue>> = {
        use rayon::prelude::*;
        graphs.par_iter().map(|e| f.evaluate(&e.graph)).collect()
    };
    let value = |i: usize| singles[i].clone();
    let pairs: Vec<(usize, usize)> = (0..graphs.len())
        .flat_map(|i| (i..graphs.len()).map(move |j| (i, j)))
        .collect();
    let name = f.name();

    let s1 = each(&pairs, |_, &(i, j)| {
        let (a, b) = (value(i)?, value(j)?);
        let u = f.evaluate(&disjoint_union(&graphs[i].graph, &graphs[j].graph))?;
        let sum = a.add(&b);
        Ok(expect(close(&u, &sum, tol), || {
            json!({"G": graphs[i].id, "H": graphs[j].id, "f(G⊔H)": text(&u), "f(G)+f(H)": text(&sum)})
        }))
    });

    let s2 = each(&pairs, |_, &(i, j)| {
        let (a, b) = (value(i)?, value(j)?);
        let p = f.evaluate(&strong_product(&graphs[i].graph, &graphs[j].graph))?;
        let prod = a.mul(&b);
        Ok(expect(close(&p, &prod, tol), || {
            json!({"G": graphs[i].id, "H": graphs[j].id, "f(G⊠H)": text(&p), "f(G)f(H)": text(&prod)})
        }))
    });

    let ordered: Vec<(usize, usize)> = (0..graphs.len())
        .flat_map(|i| (0..graphs.len()).map(move |j| (i, j)))
        .collect();
    let related: Vec<(usize, usize, VertexMap)> = {
        use rayon::prelude::*;
        ordered
            .par_iter()
            .filter_map(|&(h, g)| {
                exists_cohomomorphism(&graphs[h].graph, &graphs[g].graph)
                    .ok()
                    .flatten()
                    .map(|phi| (h, g, phi))
            })
            .collect()
    };
    let s3 = each(&related, |_, (h, g, phi)| {
        let (a, b) = (value(*h)?, value(*g)?);
        Ok(expect(at_most(&a, &b, tol), || {
            json!({"H": graphs[*h].id, "G": graphs[*g].id, "map": phi.as_slice(), "f(H)": text(&a), "f(G)": text(&b)})
        }))
    });

    let s4 = each(&[Graph::complete(1), Graph::empty(0)], |i, g| {
        let v = f.evaluate(g)?;
        let want = ParamValue::integer(if i == 0 { 1 } else { 0 });
        Ok(expect(close(&v, &want, tol), || json!({"graph": if i == 0 { "K1" } else { "empty" }, "value": text(&v)})))
    });

    let mut checks = vec![
        check(&format!("axiom.S1.{name}"), "S1", tol, s1),
        check(&format!("axiom.S2.{name}"), "S2", tol, s2),
        check(&format!("axiom.S3.{name}"), "S3", tol, s3),
        check(&format!("axiom.S4.{name}"), "S4", tol, s4),
    ];
    if !f.is_spectral() {
        // α is only supermultiplicative.
        checks[1].negative_control = true;
    }
    checks
}

pub(super) fn all_axiom_checks(corpus: &Corpus) -> Vec<Check> {
    let points: [&dyn SpectralPoint; 3] = [&FractionalCliqueCover, &Theta, &IndependenceNumber];
    points.iter().flat_map(|f| run_axiom_suite(*f, corpus)).collect()
}
