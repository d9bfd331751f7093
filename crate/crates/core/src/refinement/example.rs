//! Exact arithmetic on graph expressions built from named graphs with bundled
//! parameter values, and the two-parameter example it supports.

use std::cmp::Ordering;
use std::fmt;

use num::{BigRational, One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::{fixture, named_graph, spectral_point, ParamValue};

/// Where a reported value comes from.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "detail")]
pub enum Provenance {
    /// A bundled literature value, with its source.
    Fixture(String),
    /// Exact arithmetic from other values through the named rules.
    Derived(String),
    /// Evaluated by a solver in this library.
    Computed(String),
}

/// A graph built from named graphs by the operations under which spectral
/// points behave predictably.
#[derive(Clone, Debug, PartialEq)]
pub enum GraphExpr {
    /// A named graph (see [`named_graph`]), evaluated from fixtures first.
    Named(String),
    /// The edgeless graph on `n` vertices.
    Edgeless(u64),
    /// The complete graph on `n ≥ 1` vertices.
    Complete(u64),
    StrongProduct(Box<GraphExpr>, Box<GraphExpr>),
    StrongPower(Box<GraphExpr>, u32),
    DisjointUnion(Vec<GraphExpr>),
    Join(Vec<GraphExpr>),
}

impl GraphExpr {
    pub fn named(id: &str) -> Self {
        GraphExpr::Named(id.to_string())
    }

    pub fn strong(self, other: GraphExpr) -> Self {
        GraphExpr::StrongProduct(Box::new(self), Box::new(other))
    }

    pub fn power(self, n: u32) -> Self {
        GraphExpr::StrongPower(Box::new(self), n)
    }

    /// `f(self)` from fixtures (or a solver for small named graphs) and the
    /// axioms: `f(G ⊔ H) = f(G) + f(H)`, `f(G ⊠ H) = f(G) f(H)`,
    /// `f(K̄_n) = n`, `f(K_n) = 1`, and `f(G + H) = max(f(G), f(H))`.
    pub fn evaluate(&self, param: &str) -> Result<(ParamValue, Provenance)> {
        use GraphExpr::*;
        Ok(match self {
            Named(id) => match fixture(param, id) {
                Ok(f) => (f.value.clone(), Provenance::Fixture(f.source.clone())),
                Err(missing) => {
                    let f = spectral_point(param)?;
                    let g = named_graph(id)?;
                    let v = f.evaluate(&g).map_err(|e| match e {
                        Error::Unsupported(_) => missing,
                        other => other,
                    })?;
                    (v, Provenance::Computed(format!("{param} solver on {id}")))
                }
            },
            Edgeless(n) => (
                ParamValue::Rational(BigRational::from_integer((*n).into())),
                Provenance::Derived("additivity and normalization".into()),
            ),
            Complete(n) => {
                if *n == 0 {
                    return Err(Error::Domain("K_0 is the empty graph; use Edgeless(0)".into()));
                }
                (ParamValue::integer(1), Provenance::Derived("join of copies of K_1".into()))
            }
            StrongProduct(a, b) => (
                a.evaluate(param)?.0.mul(&b.evaluate(param)?.0),
                Provenance::Derived("multiplicativity".into()),
            ),
            StrongPower(a, n) => (
                a.evaluate(param)?.0.pow(*n),
                Provenance::Derived("multiplicativity".into()),
            ),
            DisjointUnion(parts) => {
                let mut total = ParamValue::integer(0);
                for p in parts {
                    total = total.add(&p.evaluate(param)?.0);
                }
                (total, Provenance::Derived("additivity".into()))
            }
            Join(parts) => {
                let mut best = ParamValue::integer(0);
                for p in parts {
                    best = best.max(&p.evaluate(param)?.0);
                }
                (best, Provenance::Derived("join rule".into()))
            }
        })
    }
}

impl fmt::Display for GraphExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use GraphExpr::*;
        let list = |f: &mut fmt::Formatter<'_>, parts: &[GraphExpr], sep: &str| -> fmt::Result {
            write!(f, "(")?;
            for (i, p) in parts.iter().enumerate() {
                if i > 0 {
                    write!(f, " {sep} ")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")
        };
        match self {
            Named(id) => write!(f, "{id}"),
            Edgeless(n) => write!(f, "Kbar{n}"),
            Complete(n) => write!(f, "K{n}"),
            StrongProduct(a, b) => write!(f, "({a} ⊠ {b})"),
            StrongPower(a, n) => write!(f, "{a}^⊠{n}"),
            DisjointUnion(parts) => list(f, parts, "⊔"),
            Join(parts) => list(f, parts, "+"),
        }
    }
}

/// `f0(G)^{1-λ} f1(G)^λ`, an upper bound on `f_λ(G)`. For a join the bound
/// is taken part by part, since `f_λ(G + H) = max(f_λ(G), f_λ(H))`. Exact for
/// `λ ∈ {0, 1/2, 1}` with exact inputs.
pub fn combined_upper_bound(expr: &GraphExpr, f0: &str, f1: &str, lambda: &BigRational) -> Result<ParamValue> {
    if lambda < &BigRational::zero() || lambda > &BigRational::one() {
        return Err(Error::Domain(format!("λ = {lambda} outside [0, 1]")));
    }
    if let GraphExpr::Join(parts) = expr {
        let mut best = ParamValue::integer(0);
        for p in parts {
            best = best.max(&combined_upper_bound(p, f0, f1, lambda)?);
        }
        return Ok(best);
    }
    let a = expr.evaluate(f0)?.0;
    let b = expr.evaluate(f1)?.0;
    let half = BigRational::new(1.into(), 2.into());
    if lambda.is_zero() {
        Ok(a)
    } else if lambda.is_one() {
        Ok(b)
    } else if *lambda == half {
        a.geometric_mean(&b)
    } else {
        let l: f64 = num::ToPrimitive::to_f64(lambda).unwrap_or(f64::NAN);
        let v = a.to_f64().powf(1.0 - l) * b.to_f64().powf(l);
        let tol = v * ((1.0 - l) * a.tolerance() / a.to_f64().max(1e-300) + l * b.tolerance() / b.to_f64().max(1e-300));
        Ok(ParamValue::float(v, tol + 1e-12 * v.max(1.0)))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExampleValue {
    pub name: String,
    #[serde(serialize_with = "value_json")]
    pub value: ParamValue,
    pub provenance: Provenance,
}

fn value_json<S: serde::Serializer>(v: &ParamValue, s: S) -> std::result::Result<S::Ok, S::Error> {
    serde::Serialize::serialize(&v.to_json(), s)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExampleCheck {
    pub name: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExampleReport {
    pub graph: String,
    pub values: Vec<ExampleValue>,
    pub checks: Vec<ExampleCheck>,
}

impl ExampleReport {
    pub fn value(&self, name: &str) -> Option<&ParamValue> {
        self.values.iter().find(|v| v.name == name).map(|v| &v.value)
    }

    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

/// Two spectral points that are incomparable on a single graph, together
/// with a combination that beats both: `G = G_0' + G_1'` with
/// `G_0' = J^2_{12} ⊠ K̄_10` and `G_1' = C_5^{⊠6}`, for `ϑ` and the
/// fractional Haemers bound over `GF(2)`.
pub fn reproduce_incomparable_example() -> Result<ExampleReport> {
    let g0 = GraphExpr::named("J2_12").strong(GraphExpr::Edgeless(10));
    let g1 = GraphExpr::named("C5").power(6);
    let g = GraphExpr::Join(vec![g0.clone(), g1.clone()]);
    let mut values = Vec::new();
    let mut push = |name: &str, (value, provenance): (ParamValue, Provenance)| {
        values.push(ExampleValue {
            name: name.to_string(),
            value: value.clone(),
            provenance,
        });
        value
    };
    push("theta(J2_12)", GraphExpr::named("J2_12").evaluate("theta")?);
    push("haemersF2(J2_12)", GraphExpr::named("J2_12").evaluate("haemersF2")?);
    push("theta(C5)", GraphExpr::named("C5").evaluate("theta")?);
    push("haemersF2(C5)", GraphExpr::named("C5").evaluate("haemersF2")?);
    let t0 = push("theta(G0')", g0.evaluate("theta")?);
    let t1 = push("theta(G1')", g1.evaluate("theta")?);
    let h0 = push("haemersF2(G0')", g0.evaluate("haemersF2")?);
    let h1 = push("haemersF2(G1')", g1.evaluate("haemersF2")?);
    let t = push("theta(G)", g.evaluate("theta")?);
    let h = push("haemersF2(G)", g.evaluate("haemersF2")?);
    let half = BigRational::new(1.into(), 2.into());
    let bound = push(
        "f_1/2(G) upper bound",
        (
            combined_upper_bound(&g, "theta", "haemersF2", &half)?,
            Provenance::Derived("geometric mean per join part".into()),
        ),
    );
    let lt = |a: &ParamValue, b: &ParamValue| a.compare(b) == Some(Ordering::Less);
    let checks = vec![
        ExampleCheck {
            name: "theta(G) > 236".into(),
            holds: lt(&ParamValue::integer(236), &t),
        },
        ExampleCheck {
            name: "haemersF2(G) > 244".into(),
            holds: lt(&ParamValue::integer(244), &h),
        },
        ExampleCheck {
            name: "f_1/2(G) bound < 175".into(),
            holds: lt(&bound, &ParamValue::integer(175)),
        },
        ExampleCheck {
            name: "f_1/2(G) bound < min(theta(G), haemersF2(G))".into(),
            holds: lt(&bound, &t) && lt(&bound, &h),
        },
        ExampleCheck {
            name: "theta and haemersF2 are incomparable on the parts".into(),
            holds: lt(&t1, &t0) && lt(&h0, &h1),
        },
    ];
    Ok(ExampleReport {
        graph: g.to_string(),
        values,
        checks,
    })
}
