//! `spectrum`: graph parameters, products, refinements, corners and the
//! property suites from the command line.

mod input;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use spectrum_core::corners::{antiblocker, contains, entropy, ConvexCorner, Representation};
use spectrum_core::graph::{
    costrong_product, disjoint_union, join, lexicographic_product, strong_power, strong_product, to_graph6, to_json,
    Graph,
};
use spectrum_core::params::{
    chromatic_number, clique_cover_number, clique_number, spectral_point, ParamValue, SpectralPoint,
};
use spectrum_core::refinement::{
    combine_lambda, complementary_refinement, corner_estimate, fekete_estimate, reproduce_incomparable_example,
    GraphExpr, Provenance,
};
use spectrum_core::types::{entropy_bits, materialization_cap, NType};
use spectrum_core::verify::{run_suite, Suite, DEFAULT_SEED};

use output::{envelope, render, tagged, Format};

#[derive(Parser, Debug)]
#[command(name = "spectrum", version, about = "Spectral points of graphs, refinements and convex corners")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Seed for restarts and sampled instances.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,

    /// Maximum number of sequences a type graph may materialize.
    #[arg(long, global = true, env = "SPECTRUM_CAP")]
    cap: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a graph parameter.
    Param {
        /// `g6:<code>`, a name (`C5`, `Kbar4`, `K3,3`, `Petersen`, `J2_12`),
        /// or a file holding a JSON edge list or a graph6 line.
        #[arg(long)]
        graph: String,
        /// alpha, theta, chibar_f, haemersF2, omega, chi or chibar.
        #[arg(long)]
        param: String,
    },
    /// Build a graph from one or two graphs.
    Product {
        #[arg(long)]
        graph: String,
        /// Second operand (defaults to the first).
        #[arg(long)]
        with: Option<String>,
        #[arg(long, value_enum, default_value = "strong")]
        op: ProductOp,
        /// Exponent for `--op power`.
        #[arg(long, default_value_t = 2)]
        power: usize,
    },
    /// Probabilistic refinement F(G, P): corner value, type-graph estimates,
    /// or a λ-combination of two parameters.
    Refine {
        #[arg(long)]
        graph: String,
        /// `uniform`, inline JSON, or a JSON file with labels and weights.
        #[arg(long)]
        dist: Option<String>,
        /// Parameter; give two with `--lambda`.
        #[arg(long, required = true)]
        param: Vec<String>,
        /// Largest multiplier for the type-graph estimates.
        #[arg(long)]
        k_max: Option<u64>,
        /// Weight of the second parameter in the combination.
        #[arg(long)]
        lambda: Option<f64>,
    },
    /// Corner operations on C_f(G) or on a corner read from JSON.
    Corner {
        #[arg(long, conflicts_with = "corner", required_unless_present = "corner")]
        graph: Option<String>,
        /// JSON file with ground set and generators.
        #[arg(long)]
        corner: Option<String>,
        /// chibar_f (VP of the complement) or theta (TH of the complement).
        #[arg(long, default_value = "chibar_f")]
        param: String,
        #[arg(long, value_enum, default_value = "export")]
        op: CornerOp,
        #[arg(long)]
        dist: Option<String>,
        /// Comma-separated point for `--op contains`.
        #[arg(long)]
        point: Option<String>,
    },
    /// Run property suites and write a ledger.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// Reproduce the two-parameter example with exact values.
    ReproExample,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ProductOp {
    Strong,
    Costrong,
    Lexicographic,
    DisjointUnion,
    Join,
    Power,
    Complement,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CornerOp {
    Export,
    Antiblocker,
    Entropy,
    Contains,
}

enum Failure {
    /// Bad input: exit code 2.
    Usage(String),
    /// A computation failed: exit code 1.
    Runtime(String),
}

impl From<spectrum_core::Error> for Failure {
    fn from(e: spectrum_core::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

type Outcome = Result<(Value, bool), Failure>;

fn usage<T>(r: Result<T, String>) -> Result<T, Failure> {
    r.map_err(Failure::Usage)
}

fn value_json(v: &ParamValue) -> Value {
    v.to_json()
}

fn graph_summary(g: &Graph) -> Value {
    json!({"graph6": to_graph6(g), "order": g.order(), "edges": g.edge_count()})
}

fn param(graph: &str, name: &str) -> Outcome {
    let input = usage(input::graph(graph))?;
    let g = &input.graph;
    let (value, provenance) = match name {
        "omega" | "chi" | "chibar" => {
            let v = match name {
                "omega" => clique_number(g)?,
                "chi" => chromatic_number(g)?,
                _ => clique_cover_number(g)?,
            };
            (
                ParamValue::integer(v as i64),
                Provenance::Computed(format!("exact {name} by branch and bound")),
            )
        }
        _ => {
            let f = spectral_point(name).map_err(|e| Failure::Usage(e.to_string()))?;
            match &input.name {
                Some(id) => GraphExpr::named(id).evaluate(name)?,
                None => (f.evaluate(g)?, Provenance::Computed(format!("{name} solver"))),
            }
        }
    };
    let result = json!({
        "graph": graph_summary(g),
        "param": name,
        "value": tagged(value_json(&value), kind(&provenance), detail(&provenance)),
        "approx": value.to_f64(),
    });
    Ok((result, true))
}

fn kind(p: &Provenance) -> &'static str {
    match p {
        Provenance::Fixture(_) => "fixture",
        Provenance::Derived(_) => "derived",
        Provenance::Computed(_) => "computed",
    }
}

fn detail(p: &Provenance) -> String {
    match p {
        Provenance::Fixture(s) | Provenance::Derived(s) | Provenance::Computed(s) => s.clone(),
    }
}

fn product(graph: &str, with: Option<&str>, op: ProductOp, power: usize) -> Outcome {
    let a = usage(input::graph(graph))?.graph;
    let b = match with {
        Some(w) => usage(input::graph(w))?.graph,
        None => a.clone(),
    };
    let g = match op {
        ProductOp::Strong => strong_product(&a, &b),
        ProductOp::Costrong => costrong_product(&a, &b),
        ProductOp::Lexicographic => lexicographic_product(&a, &b),
        ProductOp::DisjointUnion => disjoint_union(&a, &b),
        ProductOp::Join => join(&a, &b),
        ProductOp::Power => strong_power(&a, power),
        ProductOp::Complement => a.complement(),
    };
    let result = json!({
        "op": format!("{op:?}").to_lowercase(),
        "graph": serde_json::from_str::<Value>(&to_json(&g)).expect("graph JSON parses"),
        "graph6": to_graph6(&g),
        "order": g.order(),
        "edges": g.edge_count(),
    });
    Ok((result, true))
}

fn point_for(name: &str) -> Result<Box<dyn SpectralPoint>, Failure> {
    spectral_point(name).map_err(|e| Failure::Usage(e.to_string()))
}

fn refine(graph: &str, dist: Option<&str>, params: &[String], k_max: Option<u64>, lambda: Option<f64>, seed: u64) -> Outcome {
    let g = usage(input::graph(graph))?.graph;
    let (p, exact) = usage(input::distribution(dist, &g))?;
    let h = entropy_bits(&p);
    if let Some(l) = lambda {
        if params.len() != 2 {
            return Err(Failure::Usage("--lambda needs exactly two --param values".into()));
        }
        if !(0.0..=1.0).contains(&l) {
            return Err(Failure::Usage(format!("--lambda {l} outside [0, 1]")));
        }
        let (f0, f1) = (point_for(&params[0])?, point_for(&params[1])?);
        let e0 = corner_estimate(f0.as_ref(), &g, &p)?;
        let e1 = corner_estimate(f1.as_ref(), &g, &p)?;
        let (value, max) = combine_lambda(f0.as_ref(), f1.as_ref(), l, &g, seed)?;
        let result = json!({
            "graph": graph_summary(&g),
            "distribution": p,
            "entropy_bits": h,
            "lambda": l,
            "params": params,
            "F_lambda_bits": tagged(json!((1.0 - l) * e0.bits + l * e1.bits), "computed", "convex combination of corner entropies"),
            "f_lambda": tagged(value_json(&value), "computed", "maximum over distributions with a supergradient certificate"),
            "maximum": max,
        });
        return Ok((result, true));
    }
    if params.len() != 1 {
        return Err(Failure::Usage("give one --param, or two with --lambda".into()));
    }
    let f = point_for(&params[0])?;
    let corner = match f.corner(&g) {
        Some(_) => Some(corner_estimate(f.as_ref(), &g, &p)?),
        None => None,
    };
    let complementary = match f.corner(&g) {
        Some(_) => Some(complementary_refinement(f.as_ref(), &g, &p)?),
        None => None,
    };
    let fekete = match k_max {
        Some(k) => {
            let denominators = exact.weights().iter().map(|w| w.denom().clone());
            let n = denominators.fold(num::BigInt::from(1), |a, d| num::integer::lcm(a, d));
            let n: u64 = num::ToPrimitive::to_u64(&n)
                .ok_or_else(|| Failure::Usage("distribution denominators too large".into()))?;
            let t = NType::from_distribution(&exact, n)?;
            Some(fekete_estimate(f.as_ref(), &g, &t, k)?)
        }
        None => None,
    };
    let below = match (&fekete, &corner) {
        (Some(fk), Some(c)) => Some(fk.bits <= c.bits + 1e-4),
        _ => None,
    };
    let result = json!({
        "graph": graph_summary(&g),
        "param": params[0],
        "distribution": p,
        "entropy_bits": tagged(json!(h), "computed", "Shannon entropy"),
        "corner": corner.as_ref().map(|c| json!({
            "bits": tagged(json!(c.bits), "computed", "entropy of the corner"),
            "direction": c.direction,
        })),
        "complementary_bits": complementary.map(|v| tagged(json!(v), "computed", "H(P) minus the refinement of the complement")),
        "fekete": fekete.as_ref().map(|e| json!({
            "bits": tagged(json!(e.bits), "computed", "best type-graph estimate"),
            "direction": e.direction,
            "trace": e.trace,
        })),
        "fekete_below_corner": below,
    });
    Ok((result, below != Some(false)))
}

fn corner_json(c: &ConvexCorner) -> Value {
    match c.to_json() {
        Ok(text) => serde_json::from_str(&text).expect("corner JSON parses"),
        Err(_) => json!({
            "ground": c.ground(),
            "oracle": c.oracle().map(|o| o.describe()),
        }),
    }
}

#[allow(clippy::too_many_arguments)]
fn corner(
    graph: Option<&str>,
    file: Option<&str>,
    name: &str,
    op: CornerOp,
    dist: Option<&str>,
    point: Option<&str>,
) -> Outcome {
    let (c, source) = match (graph, file) {
        (_, Some(path)) => (usage(input::corner(path))?, json!({"file": path})),
        (Some(spec), None) => {
            let g = usage(input::graph(spec))?.graph;
            let f = point_for(name)?;
            let c = f
                .corner(&g)
                .ok_or_else(|| Failure::Usage(format!("{name} has no corner construction")))??;
            (c, json!({"graph": graph_summary(&g), "param": name}))
        }
        (None, None) => return Err(Failure::Usage("give --graph or --corner".into())),
    };
    let kind = match c.representation() {
        Representation::Generators(_) => "generators",
        Representation::Oracle(_) => "oracle",
    };
    let body = match op {
        CornerOp::Export => corner_json(&c),
        CornerOp::Antiblocker => corner_json(&antiblocker(&c)?),
        CornerOp::Entropy => {
            let g = Graph::with_labels(c.ground().to_vec());
            let (p, _) = usage(input::distribution(dist, &g))?;
            let r = entropy(&c, &p)?;
            json!({
                "distribution": p,
                "bits": tagged(json!(r.bits), "computed", "minimum log-loss over the corner"),
                "lower_bits": r.lower_bits,
                "point": r.point,
                "iterations": r.iterations,
            })
        }
        CornerOp::Contains => {
            let text = point.ok_or_else(|| Failure::Usage("--op contains needs --point".into()))?;
            let x = text
                .split(',')
                .map(|s| s.trim().parse::<f64>().map_err(|e| Failure::Usage(format!("--point {s:?}: {e}"))))
                .collect::<Result<Vec<_>, _>>()?;
            json!({"point": x, "contained": contains(&c, &x, 1e-9)?})
        }
    };
    let result = json!({
        "source": source,
        "representation": kind,
        "op": format!("{op:?}").to_lowercase(),
        "output": body,
    });
    Ok((result, true))
}

fn verify(suite: &str, seed: u64) -> Outcome {
    let suite: Suite = suite.parse().map_err(|e: spectrum_core::Error| Failure::Usage(e.to_string()))?;
    let ledger = run_suite(suite, seed)?;
    let ok = ledger.ok();
    let mut result = serde_json::to_value(&ledger).expect("ledger serializes");
    result["ok"] = json!(ok);
    result["unexpected"] = json!(ledger.unexpected().map(|c| c.id.clone()).collect::<Vec<_>>());
    Ok((result, ok))
}

fn repro_example() -> Outcome {
    let report = reproduce_incomparable_example()?;
    let ok = report.all_hold();
    let mut result = serde_json::to_value(&report).expect("report serializes");
    result["ok"] = json!(ok);
    Ok((result, ok))
}

/// On Ctrl-C, writes a report marked as interrupted and exits with 130.
/// Library computations have no cancellation points, so nothing partial of
/// the result itself survives.
fn on_interrupt(argv: &[String], cli: &Cli) {
    let (argv, seed, format, out) = (argv[1..].to_vec(), cli.seed, cli.format, cli.out.clone());
    let installed = ctrlc::set_handler(move || {
        let result = json!({"status": "interrupted"});
        let report = envelope(&argv, seed, materialization_cap(), result);
        let _ = output::emit(&render(&report, format), out.as_deref());
        std::process::exit(130);
    });
    if let Err(e) = installed {
        eprintln!("warning: no interrupt handler: {e}");
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = Cli::parse_from(&argv);
    if let Some(cap) = cli.cap {
        std::env::set_var("SPECTRUM_CAP", cap.to_string());
    }
    on_interrupt(&argv, &cli);
    let outcome = match &cli.command {
        Command::Param { graph, param: name } => param(graph, name),
        Command::Product { graph, with, op, power } => product(graph, with.as_deref(), *op, *power),
        Command::Refine {
            graph,
            dist,
            param,
            k_max,
            lambda,
        } => refine(graph, dist.as_deref(), param, *k_max, *lambda, cli.seed),
        Command::Corner {
            graph,
            corner: file,
            param,
            op,
            dist,
            point,
        } => corner(graph.as_deref(), file.as_deref(), param, *op, dist.as_deref(), point.as_deref()),
        Command::Verify { suite } => verify(suite, cli.seed),
        Command::ReproExample => repro_example(),
    };
    match outcome {
        Ok((result, ok)) => {
            let report = envelope(&argv[1..], cli.seed, materialization_cap(), result);
            if let Err(e) = output::emit(&render(&report, cli.format), cli.out.as_deref()) {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
