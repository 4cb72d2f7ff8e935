//! Chamber crosscheck of computed minus/plus loci against the expected loci.

use std::collections::BTreeSet;

use curve_model::CurveGraph;
use serde_json::{json, Value};
use vgit_core::{StratumUnion, WeightSystem, DEFAULT_COORD_CAP};

use crate::chart::{build_weight_system, LocalChart};
use crate::ChartError;

/// Outcome of one chamber crosscheck; the diffs list the strata present in
/// exactly one of the computed and expected loci.
#[derive(Clone, Debug)]
pub struct CrosscheckReport {
    pub pass: bool,
    pub case: String,
    pub minus_diff: Vec<Vec<String>>,
    pub plus_diff: Vec<Vec<String>>,
}

impl CrosscheckReport {
    pub fn to_json_value(&self) -> Value {
        json!({
            "pass": self.pass,
            "case": self.case,
            "strata_diff": { "minus": self.minus_diff, "plus": self.plus_diff },
        })
    }
}

fn symmetric_diff(ws: &WeightSystem, a: &StratumUnion, b: &StratumUnion) -> Vec<Vec<String>> {
    let a: BTreeSet<Vec<String>> = a.to_label_sets(ws).into_iter().collect();
    let b: BTreeSet<Vec<String>> = b.to_label_sets(ws).into_iter().collect();
    a.symmetric_difference(&b).cloned().collect()
}

/// Compare the kernel's chambers with the expected loci. The cap defaults to
/// the larger of the kernel cap and the coordinate count, so every corpus
/// chart is accepted.
pub fn crosscheck_system(
    ws: &WeightSystem,
    case: &str,
    expected_s: &StratumUnion,
    expected_h: &StratumUnion,
    cap: Option<usize>,
) -> Result<CrosscheckReport, ChartError> {
    let cap = cap.unwrap_or_else(|| DEFAULT_COORD_CAP.max(ws.len()));
    let minus = vgit_core::minus_locus_with_cap(ws, cap)?;
    let plus = vgit_core::plus_locus_with_cap(ws, cap)?;
    let minus_diff = symmetric_diff(ws, &minus, expected_s);
    let plus_diff = symmetric_diff(ws, &plus, expected_h);
    Ok(CrosscheckReport {
        pass: minus_diff.is_empty() && plus_diff.is_empty(),
        case: case.to_string(),
        minus_diff,
        plus_diff,
    })
}

/// Crosscheck an already-built chart.
pub fn crosscheck_chart(
    chart: &LocalChart,
    cap: Option<usize>,
) -> Result<CrosscheckReport, ChartError> {
    crosscheck_system(
        &chart.system,
        &chart.case.to_string(),
        &chart.expected_s,
        &chart.expected_h,
        cap,
    )
}

/// The machine check on one curve: build its chart and compare both chambers.
pub fn crosscheck_local_vgit(c: &CurveGraph, k: u8) -> Result<CrosscheckReport, ChartError> {
    crosscheck_chart(&build_weight_system(c, k)?, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use curve_model::CurveBuilder;

    fn ramphoid_tail_limit() -> curve_model::CurveGraph {
        CurveBuilder::new()
            .component("g", 2, &["n"])
            .component("t", 0, &["x", "n"])
            .ramphoid(("t", "x"), "0")
            .node(("g", "n"), ("t", "n"))
            .build()
            .unwrap()
    }

    #[test]
    fn the_ramphoid_tail_chart_passes_its_own_crosscheck() {
        let report = crosscheck_local_vgit(&ramphoid_tail_limit(), 4).unwrap();
        assert!(report.pass, "diffs: {:?} {:?}", report.minus_diff, report.plus_diff);
        assert_eq!(report.case, "I");
        assert!(report.minus_diff.is_empty() && report.plus_diff.is_empty());
    }

    #[test]
    fn flipping_one_node_weight_is_caught() {
        let chart = build_weight_system(&ramphoid_tail_limit(), 4).unwrap();
        let bad = chart.perturbed_system();
        let report =
            crosscheck_system(&bad, "I", &chart.expected_s, &chart.expected_h, None).unwrap();
        assert!(!report.pass);
        assert!(!report.minus_diff.is_empty() || !report.plus_diff.is_empty());
    }
}
