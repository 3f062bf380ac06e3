//! Standard examples, run end to end and compared with recorded expectations.
//!
//! Each runner returns a flat map of observed facts. Expectations live in
//! `data/scenarios.json`; every entry records its value and an `origin` that
//! says whether the value is asserted by the theory being reproduced
//! (`"theory"`) or was derived by an independent hand or oracle computation
//! (`"oracle"`).

mod runners;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::DualityError;

pub use runners::{
    covering, doubling, example_5_2, kunneth_fixture_list, kunneth_fixtures, theorem_a, theorem_a_pair,
    wall_conjecture, KunnethFixture,
};

/// Registered scenario names.
pub const SCENARIOS: [&str; 6] = [
    "theorem-a",
    "wall-conjecture",
    "doubling",
    "covering",
    "kunneth",
    "example-5-2",
];

/// A scenario name with its parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScenarioSpec {
    pub name: String,
    /// Sphere dimension parameter for `theorem-a`.
    pub n: Option<usize>,
}

impl ScenarioSpec {
    pub fn new(name: &str, n: Option<usize>, large: bool) -> Result<Self, DualityError> {
        if !SCENARIOS.contains(&name) {
            return Err(DualityError::Invalid(format!(
                "unknown scenario '{name}'; expected one of {}",
                SCENARIOS.join(", ")
            )));
        }
        let n = match name {
            "theorem-a" => Some(n.unwrap_or(if large { 2 } else { 1 })),
            _ if n.is_some() => return Err(DualityError::Invalid(format!("scenario '{name}' takes no n"))),
            _ => None,
        };
        if let Some(k) = n {
            if !(1..=2).contains(&k) {
                return Err(DualityError::Invalid(format!(
                    "theorem-a supports n = 1 or n = 2, got {k}"
                )));
            }
        }
        Ok(ScenarioSpec { name: name.into(), n })
    }

    /// Key into the expectations file.
    pub fn key(&self) -> String {
        match self.n {
            Some(n) => format!("{}/n={n}", self.name),
            None => self.name.clone(),
        }
    }
}

/// Observed facts in insertion-independent order.
pub type Facts = BTreeMap<String, Value>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expectation {
    pub value: Value,
    pub origin: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Mismatch {
    pub key: String,
    pub expected: Value,
    pub observed: Option<Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScenarioReport {
    pub scenario: ScenarioSpec,
    pub facts: Facts,
    pub mismatches: Vec<Mismatch>,
    pub ok: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

impl ScenarioReport {
    pub fn summary(&self) -> String {
        let mut s = format!(
            "scenario {}: {}",
            self.scenario.key(),
            if self.ok { "matches" } else { "MISMATCH" }
        );
        for (k, v) in &self.facts {
            s.push_str(&format!("\n  {k:<48} {v}"));
        }
        for m in &self.mismatches {
            let got = m.observed.as_ref().map_or("<missing>".to_string(), Value::to_string);
            s.push_str(&format!("\n  expected {} = {}, observed {}", m.key, m.expected, got));
        }
        s
    }
}

/// All recorded expectations, keyed by [`ScenarioSpec::key`].
pub fn expectations() -> BTreeMap<String, BTreeMap<String, Expectation>> {
    serde_json::from_str(include_str!("../../data/scenarios.json")).expect("embedded expectations parse")
}

pub fn compare(facts: &Facts, expected: &BTreeMap<String, Expectation>) -> Vec<Mismatch> {
    expected
        .iter()
        .filter(|(k, e)| facts.get(*k) != Some(&e.value))
        .map(|(k, e)| Mismatch {
            key: k.clone(),
            expected: e.value.clone(),
            observed: facts.get(k).cloned(),
        })
        .collect()
}

/// Runs a scenario and compares it with the recorded expectations.
pub fn run_scenario(spec: &ScenarioSpec, timed: bool) -> Result<ScenarioReport, DualityError> {
    let start = Instant::now();
    let facts = match spec.name.as_str() {
        "theorem-a" => theorem_a(spec.n.unwrap_or(1))?,
        "wall-conjecture" => wall_conjecture()?,
        "doubling" => doubling()?,
        "covering" => covering()?,
        "kunneth" => kunneth_fixtures()?,
        "example-5-2" => example_5_2()?,
        other => return Err(DualityError::Invalid(format!("unknown scenario '{other}'"))),
    };
    let elapsed: Duration = start.elapsed();
    let expected = expectations().remove(&spec.key()).unwrap_or_default();
    let mismatches = compare(&facts, &expected);
    Ok(ScenarioReport {
        scenario: spec.clone(),
        ok: mismatches.is_empty() && !expected.is_empty(),
        facts,
        mismatches,
        elapsed_ms: timed.then(|| elapsed.as_millis()),
    })
}
