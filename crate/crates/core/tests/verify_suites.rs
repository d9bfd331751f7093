use std::time::Instant;

use spectrum_core::graph::{from_graph6, is_isomorphic, Graph};
use spectrum_core::verify::{run_all, run_suite, uncovered, Suite, DEFAULT_SEED, PROPERTIES};

#[test]
fn every_suite_passes_and_covers_the_registry() {
    let start = Instant::now();
    let ledger = run_all(DEFAULT_SEED).unwrap();
    for c in &ledger.checks {
        println!(
            "{:<40} {:>5} cases  {}{}",
            c.id,
            c.cases,
            if c.ok() { "ok" } else { "UNEXPECTED" },
            c.witness.as_ref().map(|w| format!("  {w}")).unwrap_or_default()
        );
    }
    println!("all suites: {:.1}s", start.elapsed().as_secs_f64());
    assert!(ledger.ok());
    assert!(uncovered(&ledger).is_empty(), "{:?}", uncovered(&ledger));
    assert!(ledger.checks.iter().all(|c| PROPERTIES.iter().any(|(a, _)| *a == c.anchor)));
    let mut ids: Vec<&str> = ledger.checks.iter().map(|c| c.id.as_str()).collect();
    ids.sort();
    ids.dedup();
    assert_eq!(ids.len(), ledger.checks.len(), "check ids are unique");

    // α is supermultiplicative only: C5 ⊠ C5 has independence number 5.
    let control = ledger.get("axiom.S2.alpha").unwrap();
    assert!(control.negative_control && !control.passed);
    let w = control.witness.as_ref().unwrap();
    for side in ["G", "H"] {
        let g = from_graph6(w[side].as_str().unwrap().trim_start_matches("g6:")).unwrap();
        assert!(is_isomorphic(&g, &Graph::cycle(5)).unwrap());
    }
    assert_eq!(w["f(G⊠H)"], "5");
    assert_eq!(w["f(G)f(H)"], "4");
    assert!(ledger.checks.iter().filter(|c| c.negative_control).count() == 1);
}

#[test]
fn ledgers_are_deterministic() {
    let a = serde_json::to_string(&run_suite(Suite::Corners, 7).unwrap()).unwrap();
    let b = serde_json::to_string(&run_suite(Suite::Corners, 7).unwrap()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn single_suites_cover_only_their_part() {
    let ledger = run_suite(Suite::Example, DEFAULT_SEED).unwrap();
    assert!(ledger.ok());
    assert_eq!(ledger.checks.len(), 3);
    assert!(uncovered(&ledger).contains(&"S1"));
    assert!("bogus".parse::<Suite>().is_err());
    assert_eq!("corners".parse::<Suite>().unwrap(), Suite::Corners);
}
