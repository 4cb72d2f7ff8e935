//! The torus action on a maximally degenerate curve's first-order
//! deformation space, with the loci its chambers must reproduce.

use std::fmt;

use curve_model::{
    canonical_decomposition, is_maximally_degenerate, AppendEnd, CurveGraph, Decomposition,
    DecompositionCase, ThreeValued,
};
use serde_json::{json, Value};
use vgit_core::{Coordinate, StratumUnion, WeightSystem};

use crate::chain::j_strata;
use crate::ChartError;

/// Semantic tag of one chart coordinate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoordRole {
    /// Weight-zero deformation of the core.
    Kore,
    /// Crimping direction of a tail singularity.
    Crimping,
    /// Coefficient of a singularity's local equation.
    Singularity,
    /// Smoothing direction of a node.
    Node,
}

impl fmt::Display for CoordRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CoordRole::Kore => "kore",
            CoordRole::Crimping => "crimping",
            CoordRole::Singularity => "singularity",
            CoordRole::Node => "node",
        })
    }
}

/// A labeled weight system on the deformation space of a maximally
/// degenerate curve, together with the loci its chambers must equal.
#[derive(Clone, Debug)]
pub struct LocalChart {
    pub system: WeightSystem,
    pub case: DecompositionCase,
    /// Role of each coordinate, parallel to the system's coordinate order.
    pub roles: Vec<CoordRole>,
    pub expected_s: StratumUnion,
    pub expected_h: StratumUnion,
}

impl LocalChart {
    /// JSON form: the weight system with a role side table, the case tag,
    /// and both expected loci.
    pub fn to_json_value(&self) -> Value {
        let labels: Vec<Value> = self
            .system
            .coords()
            .iter()
            .zip(&self.roles)
            .map(|(c, r)| json!({ "label": c.label, "role": r.to_string() }))
            .collect();
        json!({
            "case": self.case.to_string(),
            "system": serde_json::to_value(&self.system).expect("weight systems serialize"),
            "labels": labels,
            "expected_s": self.expected_s.to_json_value(&self.system),
            "expected_h": self.expected_h.to_json_value(&self.system),
        })
    }

    /// The same system with the first node weight vector negated (the first
    /// singularity vector when no node coordinate exists): a falsifiability
    /// control whose chambers must fail the crosscheck.
    pub fn perturbed_system(&self) -> WeightSystem {
        let mut coords: Vec<Coordinate> = self.system.coords().to_vec();
        let at = self
            .roles
            .iter()
            .position(|r| *r == CoordRole::Node)
            .or_else(|| self.roles.iter().position(|r| *r == CoordRole::Singularity))
            .expect("every chart carries a singularity block");
        for w in &mut coords[at].weights {
            *w = -*w;
        }
        WeightSystem::new(self.system.rank(), self.system.character().to_vec(), coords)
            .expect("negating one weight vector preserves the system shape")
    }
}

fn unit(rank: usize, at: usize, value: i64) -> Vec<i64> {
    let mut w = vec![0; rank];
    w[at] = value;
    w
}

struct Blocks {
    rank: usize,
    coords: Vec<Coordinate>,
    roles: Vec<CoordRole>,
    s_sets: Vec<Vec<String>>,
    h_sets: Vec<Vec<String>>,
}

/// Tail blocks. Each tail owns one torus factor; the Case I′ node is shared
/// between the two factors and the Case I″ tail has no node coordinate.
fn even_blocks(d: &Decomposition, m: usize) -> Blocks {
    let rank = d.appendages.len();
    let mut blocks = Blocks {
        rank,
        coords: Vec::new(),
        roles: Vec::new(),
        s_sets: Vec::new(),
        h_sets: Vec::new(),
    };
    for idx in 0..rank {
        let i = idx + 1;
        let mut s_block = Vec::new();
        for l in 0..2 * m {
            let label = format!("s{i}.{l}");
            let weight = 2 * l as i64 - 4 * m as i64 - 2;
            blocks.coords.push(Coordinate { label: label.clone(), weights: unit(rank, idx, weight) });
            blocks.roles.push(CoordRole::Singularity);
            s_block.push(label);
        }
        let mut h_gens = Vec::new();
        for l in 1..m {
            let label = format!("c{i}.{l}");
            blocks
                .coords
                .push(Coordinate { label: label.clone(), weights: unit(rank, idx, 2 * l as i64 - 1) });
            blocks.roles.push(CoordRole::Crimping);
            h_gens.push(label);
        }
        match d.case {
            DecompositionCase::I => {
                let label = format!("n{i}");
                blocks.coords.push(Coordinate { label: label.clone(), weights: unit(rank, idx, 1) });
                blocks.roles.push(CoordRole::Node);
                h_gens.push(label);
            }
            DecompositionCase::IPrime => h_gens.push("n".to_string()),
            _ => {}
        }
        blocks.s_sets.push(s_block);
        blocks.h_sets.push(h_gens);
    }
    if matches!(d.case, DecompositionCase::IPrime) {
        let mut w = vec![0i64; rank];
        w[0] = 1;
        w[1] = 1;
        blocks.coords.push(Coordinate { label: "n".to_string(), weights: w });
        blocks.roles.push(CoordRole::Node);
    }
    blocks
}

/// Link blocks. Bridge j of link i owns torus factor base+j−1; marked link
/// ends contribute no node coordinate, cyclic links wrap the last node onto
/// the first factor.
fn odd_blocks(d: &Decomposition, m: usize) -> Blocks {
    let rank: usize = d.appendages.iter().map(|a| a.length).sum();
    let multi = matches!(d.case, DecompositionCase::II);
    let mut blocks = Blocks {
        rank,
        coords: Vec::new(),
        roles: Vec::new(),
        s_sets: Vec::new(),
        h_sets: Vec::new(),
    };
    let mut base = 0;
    for (li, app) in d.appendages.iter().enumerate() {
        let link = li + 1;
        let len = app.length;
        let s_label = |j: usize, l: usize| {
            if multi {
                format!("s{link}.{j}.{l}")
            } else {
                format!("s{j}.{l}")
            }
        };
        let n_label =
            |j: usize| if multi { format!("n{link}.{j}") } else { format!("n{j}") };
        for j in 1..=len {
            let mut block = Vec::new();
            for l in 0..=2 * m {
                let label = s_label(j, l);
                let weight = l as i64 - 2 * m as i64 - 2;
                blocks
                    .coords
                    .push(Coordinate { label: label.clone(), weights: unit(rank, base + j - 1, weight) });
                blocks.roles.push(CoordRole::Singularity);
                block.push(label);
            }
            blocks.s_sets.push(block);
        }
        let cyclic = matches!(app.ends.first(), Some(AppendEnd::Cyclic));
        let node_exists = |p: usize| -> bool {
            if p == 0 {
                matches!(app.ends[0], AppendEnd::CoreQ(_))
            } else if p == len {
                matches!(app.ends[1], AppendEnd::CoreQ(_))
            } else {
                true
            }
        };
        if cyclic {
            for j in 1..=len {
                let mut w = vec![0i64; rank];
                w[base + j - 1] += 1;
                w[base + (j % len)] += 1;
                blocks.coords.push(Coordinate { label: n_label(j), weights: w });
                blocks.roles.push(CoordRole::Node);
            }
        } else {
            for p in 0..=len {
                if !node_exists(p) {
                    continue;
                }
                let mut w = vec![0i64; rank];
                if p == 0 {
                    w[base] = 1;
                } else if p == len {
                    w[base + len - 1] = 1;
                } else {
                    w[base + p - 1] = 1;
                    w[base + p] = 1;
                }
                blocks.coords.push(Coordinate { label: n_label(p), weights: w });
                blocks.roles.push(CoordRole::Node);
            }
        }
        let sets = j_strata(
            len,
            cyclic,
            |p| {
                if cyclic || node_exists(p) {
                    Some(n_label(p))
                } else {
                    None
                }
            },
            |j| (0..=2 * m).map(|l| s_label(j, l)).collect(),
        );
        blocks.h_sets.extend(sets.into_iter().map(|s| s.into_iter().collect::<Vec<_>>()));
        base += len;
    }
    blocks
}

fn default_core_block(d: &Decomposition) -> usize {
    match &d.core {
        Some(core) => {
            let g = core.arithmetic_genus();
            let n = core.marks().len() as i64;
            (3 * g - 3 + n).max(0) as usize
        }
        None => 0,
    }
}

/// Build the deformation chart of a maximally degenerate curve.
/// `core_block` overrides the number of weight-zero kore coordinates; the
/// default is 3·g(core) − 3 + #marks-on-core, clamped at zero.
pub fn build_chart(
    c: &CurveGraph,
    k: u8,
    core_block: Option<usize>,
) -> Result<LocalChart, ChartError> {
    let report = is_maximally_degenerate(c, k)?;
    if matches!(report.verdict, ThreeValued::No) {
        return Err(ChartError::NotMaximallyDegenerate(report.reasons));
    }
    let d = canonical_decomposition(c, k)?;
    if d.appendages.is_empty() {
        return Err(ChartError::TrivialTorus);
    }
    let m = usize::from(k / 2);
    let mut blocks = if k.is_multiple_of(2) { even_blocks(&d, m) } else { odd_blocks(&d, m) };
    for t in 1..=core_block.unwrap_or_else(|| default_core_block(&d)) {
        blocks.coords.push(Coordinate { label: format!("k{t}"), weights: vec![0; blocks.rank] });
        blocks.roles.push(CoordRole::Kore);
    }
    let system = WeightSystem::new(blocks.rank, vec![1; blocks.rank], blocks.coords)?;
    let expected_s = StratumUnion::from_label_sets(&system, &blocks.s_sets)?;
    let expected_h = StratumUnion::from_label_sets(&system, &blocks.h_sets)?;
    Ok(LocalChart { system, case: d.case, roles: blocks.roles, expected_s, expected_h })
}

/// Chart with the default kore block.
pub fn build_weight_system(c: &CurveGraph, k: u8) -> Result<LocalChart, ChartError> {
    build_chart(c, k, None)
}

/// The locus of first-order deformations smoothing every tail or bridge
/// singularity: one stratum per singularity block.
pub fn expected_s_locus(c: &CurveGraph, k: u8) -> Result<StratumUnion, ChartError> {
    Ok(build_chart(c, k, None)?.expected_s)
}

/// The locus of deformations preserving the tail or chain structure: crimping
/// and node generators per tail (even case) or window ideals (odd case).
pub fn expected_h_locus(c: &CurveGraph, k: u8) -> Result<StratumUnion, ChartError> {
    Ok(build_chart(c, k, None)?.expected_h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use curve_model::CurveBuilder;

    fn ramphoid_tail_limit() -> CurveGraph {
        CurveBuilder::new()
            .component("g", 2, &["n"])
            .component("t", 0, &["x", "n"])
            .ramphoid(("t", "x"), "0")
            .node(("g", "n"), ("t", "n"))
            .build()
            .unwrap()
    }

    fn cuspidal_pair() -> CurveGraph {
        CurveBuilder::new()
            .component("u", 0, &["x", "n"])
            .component("v", 0, &["x", "n"])
            .cusp(("u", "x"))
            .cusp(("v", "x"))
            .node(("u", "n"), ("v", "n"))
            .build()
            .unwrap()
    }

    fn self_closing_bridge() -> CurveGraph {
        CurveBuilder::new()
            .component("u", 0, &["t", "n"])
            .component("v", 0, &["t", "n"])
            .tacnode(("u", "t"), ("v", "t"))
            .node(("u", "n"), ("v", "n"))
            .build()
            .unwrap()
    }

    fn labels(chart: &LocalChart) -> Vec<String> {
        chart.system.coords().iter().map(|c| c.label.clone()).collect()
    }

    #[test]
    fn the_ramphoid_tail_chart_matches_the_known_weight_table() {
        let chart = build_weight_system(&ramphoid_tail_limit(), 4).unwrap();
        assert_eq!(chart.case, DecompositionCase::I);
        assert_eq!(chart.system.rank(), 1);
        assert_eq!(
            labels(&chart),
            vec!["s1.0", "s1.1", "s1.2", "s1.3", "c1.1", "n1", "k1", "k2", "k3", "k4"]
        );
        let weights: Vec<i64> = chart.system.coords().iter().map(|c| c.weights[0]).collect();
        assert_eq!(weights, vec![-10, -8, -6, -4, 1, 1, 0, 0, 0, 0]);
        assert_eq!(
            chart.expected_s.to_label_sets(&chart.system),
            vec![vec!["s1.0", "s1.1", "s1.2", "s1.3"]]
        );
        assert_eq!(chart.expected_h.to_label_sets(&chart.system), vec![vec!["c1.1", "n1"]]);
        assert_eq!(
            chart.roles,
            vec![
                CoordRole::Singularity,
                CoordRole::Singularity,
                CoordRole::Singularity,
                CoordRole::Singularity,
                CoordRole::Crimping,
                CoordRole::Node,
                CoordRole::Kore,
                CoordRole::Kore,
                CoordRole::Kore,
                CoordRole::Kore,
            ]
        );
    }

    #[test]
    fn the_cuspidal_pair_shares_one_node_coordinate_across_two_factors() {
        let chart = build_weight_system(&cuspidal_pair(), 2).unwrap();
        assert_eq!(chart.case, DecompositionCase::IPrime);
        assert_eq!(chart.system.rank(), 2);
        assert_eq!(labels(&chart), vec!["s1.0", "s1.1", "s2.0", "s2.1", "n"]);
        let n = &chart.system.coords()[4];
        assert_eq!(n.weights, vec![1, 1]);
        assert_eq!(chart.system.coords()[0].weights, vec![-6, 0]);
        assert_eq!(chart.system.coords()[3].weights, vec![0, -4]);
        assert_eq!(chart.expected_h.to_label_sets(&chart.system), vec![vec!["n"]]);
    }

    #[test]
    fn the_cyclic_bridge_doubles_its_node_weight() {
        let chart = build_weight_system(&self_closing_bridge(), 3).unwrap();
        assert_eq!(chart.case, DecompositionCase::IIDoublePrime);
        assert_eq!(chart.system.rank(), 1);
        assert_eq!(labels(&chart), vec!["s1.0", "s1.1", "s1.2", "n1"]);
        assert_eq!(chart.system.coords()[3].weights, vec![2]);
        assert_eq!(
            chart.expected_s.to_label_sets(&chart.system),
            vec![vec!["s1.0", "s1.1", "s1.2"]]
        );
        assert_eq!(chart.expected_h.to_label_sets(&chart.system), vec![vec!["n1"]]);
    }

    #[test]
    fn the_kore_block_is_configurable_and_defaults_from_the_core() {
        let c = ramphoid_tail_limit();
        let d = build_chart(&c, 4, None).unwrap();
        assert_eq!(d.roles.iter().filter(|r| **r == CoordRole::Kore).count(), 4);
        let none = build_chart(&c, 4, Some(0)).unwrap();
        assert_eq!(none.roles.iter().filter(|r| **r == CoordRole::Kore).count(), 0);
        let seven = build_chart(&c, 4, Some(7)).unwrap();
        assert_eq!(seven.roles.iter().filter(|r| **r == CoordRole::Kore).count(), 7);
        assert_eq!(seven.system.len(), none.system.len() + 7);
    }

    #[test]
    fn curves_away_from_the_deepest_stratum_are_refused() {
        let smooth_with_cusp =
            CurveBuilder::new().component("e", 1, &["x"]).cusp(("e", "x")).build().unwrap();
        let err = build_chart(&smooth_with_cusp, 2, None).unwrap_err();
        assert!(matches!(err, ChartError::NotMaximallyDegenerate(_)));
    }

    #[test]
    fn curves_with_no_appendages_have_a_trivial_torus() {
        let smooth = CurveBuilder::new().component("g", 2, &[]).build().unwrap();
        let err = build_chart(&smooth, 3, None).unwrap_err();
        assert!(matches!(err, ChartError::TrivialTorus));
    }
}
