//! The two-parameter example and the bundled values it rests on.

use num::BigRational;
use serde_json::json;

use super::{check, each, expect, Check};
use crate::error::Result;
use crate::graph::Graph;
use crate::params::{fixture, fractional_clique_cover, independence_number, lovasz_theta, theta_johnson_scheme, ParamValue};
use crate::refinement::reproduce_incomparable_example;

pub fn run_example_suite() -> Vec<Check> {
    let report = reproduce_incomparable_example();
    let expected = [
        ("theta(G0')", "2600/11"),
        ("theta(G1')", "125"),
        ("haemersF2(G0')", "120"),
        ("haemersF2(G1')", "15625/64"),
        ("theta(G)", "2600/11"),
        ("haemersF2(G)", "15625/64"),
        ("f_1/2(G) upper bound", "625*sqrt(5)/8"),
    ];
    let values = each(&expected, |_, &(name, want)| {
        let r = report.as_ref().map_err(Clone::clone)?;
        let got = r.value(name).map(|v| (v.is_exact(), v.to_string()));
        Ok(expect(got == Some((true, want.to_string())), || json!({"value": name, "expected": want, "got": got})))
    });
    let inequalities = match &report {
        Ok(r) => r
            .checks
            .iter()
            .map(|c| Ok(expect(c.holds, || json!({"inequality": c.name}))))
            .collect(),
        Err(e) => vec![Err(e.clone())],
    };

    let sources = ["theta/J2_12", "theta/C5", "haemersF2/C5"];
    let fixtures = each(&sources, |_, &key| -> Result<_> {
        let (param, graph) = key.split_once('/').expect("param/graph");
        let value = &fixture(param, graph)?.value;
        let (ok, computed) = match key {
            "theta/J2_12" => {
                let exact = ParamValue::Rational(theta_johnson_scheme(12, 2)?);
                (value == &exact, exact.to_string())
            }
            "theta/C5" => {
                let sdp = lovasz_theta(&Graph::cycle(5), None)?;
                (value.approx_eq(&sdp, 1e-4), format!("{:.9}", sdp.to_f64()))
            }
            _ => {
                // α ≤ the fractional Haemers bound ≤ χ̄_f
                let c5 = Graph::cycle(5);
                let alpha = BigRational::from_integer((independence_number(&c5)? as i64).into());
                let upper = fractional_clique_cover(&c5)?;
                let v = value.as_rational().cloned();
                let ok = v.as_ref().is_some_and(|v| &alpha <= v && Some(v) <= upper.as_rational());
                (ok, format!("[{alpha}, {upper}]"))
            }
        };
        Ok(expect(ok, || json!({"fixture": key, "bundled": value.to_string(), "computed": computed})))
    });

    vec![
        check("example.values", "example-values", 0.0, values),
        check("example.inequalities", "example-inequalities", 0.0, inequalities),
        check("example.fixtures", "fixtures", 1e-4, fixtures),
    ]
}
