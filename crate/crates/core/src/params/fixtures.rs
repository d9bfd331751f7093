//! Literature values that are not computed here.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::value::ParamValue;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FixtureRecord {
    pub param: String,
    pub graph: String,
    pub value: String,
    pub source: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Fixture {
    pub param: String,
    pub graph: String,
    pub value: ParamValue,
    pub source: String,
}

fn registry() -> &'static [Fixture] {
    static REGISTRY: OnceLock<Vec<Fixture>> = OnceLock::new();
    REGISTRY.get_or_init(|| {
        let records: Vec<FixtureRecord> =
            serde_json::from_str(include_str!("fixtures.json")).expect("bundled fixtures parse");
        records
            .into_iter()
            .map(|r| Fixture {
                value: ParamValue::parse(&r.value).expect("bundled fixture value parses"),
                param: r.param,
                graph: r.graph,
                source: r.source,
            })
            .collect()
    })
}

pub fn fixtures() -> &'static [Fixture] {
    registry()
}

pub fn fixture(param: &str, graph: &str) -> Result<&'static Fixture> {
    registry()
        .iter()
        .find(|f| f.param == param && f.graph == graph)
        .ok_or_else(|| Error::UnknownFixture {
            param: param.to_string(),
            graph: graph.to_string(),
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_values() {
        assert_eq!(fixture("theta", "J2_12").unwrap().value, ParamValue::ratio(260, 11));
        assert_eq!(fixture("haemersF2", "J2_12").unwrap().value, ParamValue::integer(12));
        assert_eq!(fixture("haemersF2", "C5").unwrap().value, ParamValue::ratio(5, 2));
        assert_eq!(fixture("theta", "C5").unwrap().value.to_string(), "sqrt(5)");
        assert!(fixture("theta", "Petersen").is_err());
    }
}
