//! Bundled golden corpus: curves with frozen stability and degeneration
//! verdicts, and weight systems with frozen chamber decompositions. The
//! data files live under `corpus/` and are embedded at compile time.

use curve_model::CurveGraph;
use serde::Deserialize;
use serde_json::Value;
use vgit_core::WeightSystem;

/// Frozen stability verdicts of a curve at its corpus k, one per variant.
#[derive(Clone, Copy, Debug, Deserialize, PartialEq, Eq)]
pub struct StabilityTriple {
    pub minus: bool,
    pub plain: bool,
    pub plus: bool,
}

/// One corpus curve. `crosscheck` marks the maximally degenerate entries
/// whose deformation chart must agree with the feasibility kernel;
/// `degenerate_case` is the decomposition case of the maximal degeneration,
/// absent when the curve is not plain-stable at its k.
#[derive(Clone, Debug)]
pub struct CurveEntry {
    pub name: String,
    pub description: String,
    pub k: u8,
    pub crosscheck: bool,
    pub stability: StabilityTriple,
    pub degenerate_case: Option<String>,
    pub curve: CurveGraph,
}

/// One corpus weight system with its frozen chamber strata as label sets.
#[derive(Clone, Debug)]
pub struct SystemEntry {
    pub name: String,
    pub description: String,
    pub system: WeightSystem,
    pub minus: Vec<Vec<String>>,
    pub plus: Vec<Vec<String>>,
}

const CURVE_SOURCES: &[&str] = &[
    include_str!("../corpus/curves/ramphoid-tail-limit.json"),
    include_str!("../corpus/curves/marked-ramphoid.json"),
    include_str!("../corpus/curves/bicuspidal-tails.json"),
    include_str!("../corpus/curves/cuspidal-pair.json"),
    include_str!("../corpus/curves/marked-cuspidal.json"),
    include_str!("../corpus/curves/core-with-two-links.json"),
    include_str!("../corpus/curves/marked-two-bridge-link.json"),
    include_str!("../corpus/curves/three-bridge-link.json"),
    include_str!("../corpus/curves/four-bridge-link.json"),
    include_str!("../corpus/curves/degenerated-two-bridge-chain.json"),
    include_str!("../corpus/curves/marked-tacnodal-pair.json"),
    include_str!("../corpus/curves/marked-chain-of-two.json"),
    include_str!("../corpus/curves/self-closing-bridge.json"),
    include_str!("../corpus/curves/cyclic-two-bridges.json"),
    include_str!("../corpus/curves/two-bridge-chain.json"),
    include_str!("../corpus/curves/nodal-elliptic-tail.json"),
    include_str!("../corpus/curves/tacnodal-elliptic-tail.json"),
    include_str!("../corpus/curves/nodal-elliptic-bridge.json"),
    include_str!("../corpus/curves/declared-weierstrass-tail.json"),
    include_str!("../corpus/curves/cusp-attached-elliptic-tail.json"),
    include_str!("../corpus/curves/smooth-one-pointed.json"),
    include_str!("../corpus/curves/nodal-one-pointed.json"),
    include_str!("../corpus/curves/smooth-genus-two.json"),
];

const SYSTEM_SOURCES: &[&str] = &[
    include_str!("../corpus/systems/ramphoid-versal.json"),
    include_str!("../corpus/systems/monomial-even-1.json"),
    include_str!("../corpus/systems/monomial-even-2.json"),
    include_str!("../corpus/systems/monomial-even-3.json"),
    include_str!("../corpus/systems/chain-1-1.json"),
    include_str!("../corpus/systems/chain-2-1.json"),
    include_str!("../corpus/systems/chain-3-1.json"),
    include_str!("../corpus/systems/chain-5-2.json"),
    include_str!("../corpus/systems/cuspidal-pair-chart.json"),
    include_str!("../corpus/systems/cyclic-two-bridges-chart.json"),
];

fn parse_curve_entry(src: &str) -> CurveEntry {
    let v: Value = serde_json::from_str(src).expect("bundled curve entry is valid JSON");
    let obj = v.as_object().expect("curve entry is an object");
    let field = |key: &str| obj.get(key).unwrap_or_else(|| panic!("curve entry has `{key}`"));
    CurveEntry {
        name: field("name").as_str().expect("name is a string").to_string(),
        description: field("description")
            .as_str()
            .expect("description is a string")
            .to_string(),
        k: u8::try_from(field("k").as_u64().expect("k is an integer")).expect("k fits in u8"),
        crosscheck: field("crosscheck").as_bool().expect("crosscheck is a bool"),
        stability: serde_json::from_value(field("stability").clone())
            .expect("stability triple parses"),
        degenerate_case: match field("degenerate_case") {
            Value::Null => None,
            Value::String(s) => Some(s.clone()),
            other => panic!("degenerate_case is a string or null, got {other}"),
        },
        curve: CurveGraph::from_json_value(field("curve")).expect("bundled curve parses"),
    }
}

fn parse_system_entry(src: &str) -> SystemEntry {
    #[derive(Deserialize)]
    struct Raw {
        name: String,
        description: String,
        system: WeightSystem,
        minus: Vec<Vec<String>>,
        plus: Vec<Vec<String>>,
    }
    let raw: Raw = serde_json::from_str(src).expect("bundled system entry parses");
    SystemEntry {
        name: raw.name,
        description: raw.description,
        system: raw.system,
        minus: raw.minus,
        plus: raw.plus,
    }
}

pub fn curve_entries() -> Vec<CurveEntry> {
    CURVE_SOURCES.iter().map(|s| parse_curve_entry(s)).collect()
}

pub fn system_entries() -> Vec<SystemEntry> {
    SYSTEM_SOURCES.iter().map(|s| parse_system_entry(s)).collect()
}

pub fn find_curve(name: &str) -> Option<CurveEntry> {
    curve_entries().into_iter().find(|e| e.name == name)
}

pub fn find_system(name: &str) -> Option<SystemEntry> {
    system_entries().into_iter().find(|e| e.name == name)
}

/// Raw sources, for round-trip checks.
pub fn raw_sources() -> impl Iterator<Item = &'static str> {
    CURVE_SOURCES.iter().chain(SYSTEM_SOURCES.iter()).copied()
}
