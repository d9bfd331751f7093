//! Executable property checks over a fixed graph corpus, collected into a
//! pass/fail ledger.
//!
//! Every check carries an anchor from [`PROPERTIES`], the registry of
//! properties the library is expected to satisfy; [`run_all`] covers every
//! anchor. Checks are evaluated in parallel but assembled in a fixed order,
//! so a ledger depends only on the seed.

mod axioms;
mod corner_suite;
mod corpus;
mod example_suite;
mod refinement_suite;

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

pub use axioms::run_axiom_suite;
pub use corner_suite::run_corner_suite;
pub use corpus::{small_graphs, Corpus, Entry};
pub use example_suite::run_example_suite;
pub use refinement_suite::run_refinement_suite;

use crate::error::{Error, Result};

/// Seed for all sampled distributions and instances unless overridden.
pub const DEFAULT_SEED: u64 = 0x5EED;

/// Anchor registry: short anchor, statement.
pub const PROPERTIES: &[(&str, &str)] = &[
    ("S1", "additive under disjoint union"),
    ("S2", "multiplicative under the strong product"),
    ("S3", "monotone under cohomomorphisms"),
    ("S4", "normalized: f(K1) = 1 and f(empty) = 0"),
    ("P1", "P -> F(G,P) and P -> H(P) - F(G,P) are concave"),
    ("P2", "F(G⊠H,P) <= F(G,P_G) + F(H,P_H) <= F(G⊠H,P) + I(G:H)_P"),
    ("P3", "disjoint union adds h(p); join does not"),
    ("P4", "F(H,P) <= F(G,φ_*P) for a cohomomorphism φ: H -> G"),
    ("range", "0 <= F(G,P) <= H(P)"),
    ("continuity", "|F(G,P) - F(G,Q)| bounded by the continuity estimate"),
    ("subadditivity", "F(G∩H,P) <= F(G,P) + F(H,P) and H(P) <= F(G,P) + F(Ḡ,P)"),
    ("complementary", "F*(G,P) = H(P) - F(Ḡ,P) <= F(G,P)"),
    ("marton", "log ϑ(G,P) + log ϑ(Ḡ,P) = H(P)"),
    ("fekete", "type-graph estimates are superadditive and below the corner value"),
    ("maximum", "max_P F(G,P) = log f(G)"),
    ("capacity-within-type", "type-graph independence bound below the corner value"),
    ("transitive-cover", "vertex-transitive H is covered by N copies of H[S]"),
    ("type-class-size", "(n+1)^-|X| 2^nH(P) <= |T_P| <= 2^nH(P)"),
    ("C1", "C_f(K1) = [0,1]"),
    ("C2", "C_f(G) ⊗ C_f(H) ⊆ C_f(G⊠H) ⊆ (C_f(G)* ⊗ C_f(H)*)*"),
    ("C3", "C_f(G⊔H) = C_f(G) ⊕ C_f(H)"),
    ("C4", "φ*(C_f(G)) ⊆ C_f(H) for a cohomomorphism φ: H -> G"),
    ("duality", "H(P) = H_A(P) + H_A*(P)"),
    ("involution", "A** = A"),
    ("subcorner", "A ⊆ B implies H_A >= H_B"),
    ("corner-product", "H_A⊗B(P) <= H_A(P_X) + H_B(P_Y) <= H_A⊗B(P) + I(X:Y)"),
    ("corner-sum", "H_A⊕B(pP ⊕ (1-p)Q) = pH_A(P) + (1-p)H_B(Q) + h(p)"),
    ("corner-pullback", "H_f*B(P) = H_B(f_*P)"),
    ("corner-concavity", "P -> H_A(P) is concave"),
    ("perfect", "TH(G) = VP(G) and VP(G)* = VP(Ḡ) for perfect G"),
    ("reconstruction", "a corner is recovered from its entropy function"),
    ("example-values", "intermediate values of the two-parameter example"),
    ("example-inequalities", "strict inequalities of the two-parameter example"),
    ("fixtures", "bundled values agree with independent computations"),
];

pub fn property(anchor: &str) -> Option<&'static str> {
    PROPERTIES.iter().find(|(a, _)| *a == anchor).map(|(_, s)| *s)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Axioms,
    Refinement,
    Corners,
    Example,
    All,
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "axioms" => Suite::Axioms,
            "refinement" => Suite::Refinement,
            "corners" => Suite::Corners,
            "example" => Suite::Example,
            "all" => Suite::All,
            other => return Err(Error::Domain(format!("unknown suite {other:?}"))),
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Suite::Axioms => "axioms",
            Suite::Refinement => "refinement",
            Suite::Corners => "corners",
            Suite::Example => "example",
            Suite::All => "all",
        };
        f.write_str(s)
    }
}

/// One executed property check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub id: String,
    pub anchor: String,
    pub property: String,
    pub tolerance: f64,
    /// Number of instances examined.
    pub cases: usize,
    pub passed: bool,
    /// Expected to fail: guards against checks that pass vacuously.
    pub negative_control: bool,
    /// The first failing instance, in corpus order (smallest graphs first).
    pub witness: Option<Value>,
}

impl Check {
    /// Whether the outcome is the expected one.
    pub fn ok(&self) -> bool {
        self.passed != self.negative_control
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Ledger {
    pub suite: Suite,
    pub seed: u64,
    pub checks: Vec<Check>,
}

impl Ledger {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(Check::ok)
    }

    pub fn get(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn unexpected(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.ok())
    }
}

/// Outcome of one instance: `None` on success, a witness on failure.
pub(crate) type Outcome = Option<Value>;

/// Builds a check from per-instance outcomes. Errors count as failures and
/// are reported in the witness.
pub(crate) fn check(id: &str, anchor: &str, tolerance: f64, outcomes: Vec<Result<Outcome>>) -> Check {
    let cases = outcomes.len();
    let witness = outcomes.into_iter().find_map(|o| match o {
        Ok(None) => None,
        Ok(Some(w)) => Some(w),
        Err(e) => Some(json!({ "error": e.to_string() })),
    });
    Check {
        id: id.to_string(),
        anchor: anchor.to_string(),
        property: property(anchor).unwrap_or("unregistered").to_string(),
        tolerance,
        cases,
        passed: witness.is_none() && cases > 0,
        negative_control: false,
        witness,
    }
}

/// Runs `f` on every item in parallel, keeping the input order.
pub(crate) fn each<T: Sync, F>(items: &[T], f: F) -> Vec<Result<Outcome>>
where
    F: Fn(usize, &T) -> Result<Outcome> + Sync + Send,
{
    items.par_iter().enumerate().map(|(i, t)| f(i, t)).collect()
}

/// An independent generator for instance `i` of the check `salt`.
pub(crate) fn rng_for(seed: u64, salt: &str, i: usize) -> ChaCha8Rng {
    let mut h = seed ^ 0x9E37_79B9_7F4A_7C15;
    for b in salt.bytes().chain((i as u64).to_le_bytes()) {
        h = (h ^ b as u64).wrapping_mul(0x0100_0000_01B3);
    }
    ChaCha8Rng::seed_from_u64(h)
}

/// A distribution drawn uniformly from the simplex.
pub(crate) fn random_distribution<R: rand::Rng>(rng: &mut R, d: usize) -> Vec<f64> {
    let e: Vec<f64> = (0..d).map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
    let s: f64 = e.iter().sum();
    e.iter().map(|x| x / s).collect()
}

/// `None` when `ok`, otherwise the witness.
pub(crate) fn expect(ok: bool, witness: impl FnOnce() -> Value) -> Outcome {
    if ok {
        None
    } else {
        Some(witness())
    }
}

pub fn run_suite(suite: Suite, seed: u64) -> Result<Ledger> {
    let corpus = Corpus::standard();
    let checks = match suite {
        Suite::Axioms => axioms::all_axiom_checks(&corpus),
        Suite::Refinement => run_refinement_suite(&corpus, seed),
        Suite::Corners => run_corner_suite(&corpus, seed),
        Suite::Example => run_example_suite(),
        Suite::All => {
            let mut all = axioms::all_axiom_checks(&corpus);
            all.extend(run_refinement_suite(&corpus, seed));
            all.extend(run_corner_suite(&corpus, seed));
            all.extend(run_example_suite());
            all
        }
    };
    Ok(Ledger { suite, seed, checks })
}

pub fn run_all(seed: u64) -> Result<Ledger> {
    run_suite(Suite::All, seed)
}

/// Anchors in the registry without a check in `ledger`.
pub fn uncovered(ledger: &Ledger) -> Vec<&'static str> {
    PROPERTIES
        .iter()
        .map(|(a, _)| *a)
        .filter(|a| !ledger.checks.iter().any(|c| c.anchor == *a))
        .collect()
}
