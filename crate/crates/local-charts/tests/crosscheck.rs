//! Chamber crosschecks across a catalog of maximally degenerate curves.

use std::collections::BTreeSet;

use curve_model::{canonical_decomposition, maximal_degeneration, CurveBuilder, CurveGraph};
use local_charts::{
    build_chart, build_weight_system, chain_chamber_formula, chain_system, crosscheck_local_vgit,
    crosscheck_system, expected_h_locus, expected_s_locus, CoordRole,
};
use vgit_core::{minus_locus_with_cap, plus_locus_with_cap, StratumUnion, WeightSystem};

fn ramphoid_tail_limit() -> CurveGraph {
    CurveBuilder::new()
        .component("g", 2, &["n"])
        .component("t", 0, &["x", "n"])
        .ramphoid(("t", "x"), "0")
        .node(("g", "n"), ("t", "n"))
        .build()
        .unwrap()
}

fn marked_ramphoid() -> CurveGraph {
    CurveBuilder::new()
        .component("c", 0, &["x", "p"])
        .ramphoid(("c", "x"), "0")
        .mark("c", "p")
        .build()
        .unwrap()
}

fn bicuspidal_tails_on_core() -> CurveGraph {
    CurveBuilder::new()
        .component("g", 2, &["a", "b"])
        .component("t1", 0, &["x", "n"])
        .component("t2", 0, &["x", "n"])
        .cusp(("t1", "x"))
        .cusp(("t2", "x"))
        .node(("g", "a"), ("t1", "n"))
        .node(("g", "b"), ("t2", "n"))
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

fn marked_cuspidal() -> CurveGraph {
    CurveBuilder::new()
        .component("c", 0, &["x", "p"])
        .cusp(("c", "x"))
        .mark("c", "p")
        .build()
        .unwrap()
}

fn core_with_two_links() -> CurveGraph {
    CurveBuilder::new()
        .component("g", 2, &["a", "b", "c"])
        .component("u1", 0, &["t", "n"])
        .component("v1", 0, &["t", "n"])
        .tacnode(("u1", "t"), ("v1", "t"))
        .node(("g", "a"), ("u1", "n"))
        .node(("v1", "n"), ("g", "b"))
        .component("u2", 0, &["t", "n"])
        .component("v2", 0, &["t", "p"])
        .tacnode(("u2", "t"), ("v2", "t"))
        .node(("g", "c"), ("u2", "n"))
        .mark("v2", "p")
        .build()
        .unwrap()
}

fn marked_two_bridge_link() -> CurveGraph {
    CurveBuilder::new()
        .component("g", 2, &["a"])
        .component("u1", 0, &["t", "n"])
        .component("v1", 0, &["t", "n"])
        .component("u2", 0, &["t", "n"])
        .component("v2", 0, &["t", "p"])
        .tacnode(("u1", "t"), ("v1", "t"))
        .tacnode(("u2", "t"), ("v2", "t"))
        .node(("g", "a"), ("u1", "n"))
        .node(("v1", "n"), ("u2", "n"))
        .mark("v2", "p")
        .build()
        .unwrap()
}

fn three_bridge_link() -> CurveGraph {
    CurveBuilder::new()
        .component("g", 2, &["a", "b"])
        .component("u1", 0, &["t", "n"])
        .component("v1", 0, &["t", "n"])
        .component("u2", 0, &["t", "n"])
        .component("v2", 0, &["t", "n"])
        .component("u3", 0, &["t", "n"])
        .component("v3", 0, &["t", "n"])
        .tacnode(("u1", "t"), ("v1", "t"))
        .tacnode(("u2", "t"), ("v2", "t"))
        .tacnode(("u3", "t"), ("v3", "t"))
        .node(("g", "a"), ("u1", "n"))
        .node(("v1", "n"), ("u2", "n"))
        .node(("v2", "n"), ("u3", "n"))
        .node(("v3", "n"), ("g", "b"))
        .build()
        .unwrap()
}

fn marked_tacnodal_pair() -> CurveGraph {
    CurveBuilder::new()
        .component("u", 0, &["t", "p"])
        .component("v", 0, &["t", "p"])
        .tacnode(("u", "t"), ("v", "t"))
        .mark("u", "p")
        .mark("v", "p")
        .build()
        .unwrap()
}

fn marked_chain_of_two() -> CurveGraph {
    CurveBuilder::new()
        .component("u1", 0, &["t", "p"])
        .component("v1", 0, &["t", "n"])
        .component("u2", 0, &["t", "n"])
        .component("v2", 0, &["t", "p"])
        .tacnode(("u1", "t"), ("v1", "t"))
        .tacnode(("u2", "t"), ("v2", "t"))
        .node(("v1", "n"), ("u2", "n"))
        .mark("u1", "p")
        .mark("v2", "p")
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

fn cyclic_two_bridges() -> CurveGraph {
    CurveBuilder::new()
        .component("u1", 0, &["t", "a"])
        .component("v1", 0, &["t", "b"])
        .component("u2", 0, &["t", "a"])
        .component("v2", 0, &["t", "b"])
        .tacnode(("u1", "t"), ("v1", "t"))
        .tacnode(("u2", "t"), ("v2", "t"))
        .node(("v1", "b"), ("u2", "a"))
        .node(("v2", "b"), ("u1", "a"))
        .build()
        .unwrap()
}

fn degenerated_two_bridge_chain() -> CurveGraph {
    let chain = CurveBuilder::new()
        .component("k", 2, &["a", "b"])
        .component("e1", 1, &["n", "t"])
        .component("e2", 1, &["t", "n"])
        .node(("k", "a"), ("e1", "n"))
        .tacnode(("e1", "t"), ("e2", "t"))
        .node(("e2", "n"), ("k", "b"))
        .build()
        .unwrap();
    maximal_degeneration(&chain, 3).unwrap()
}

fn catalog() -> Vec<(&'static str, CurveGraph, u8)> {
    vec![
        ("ramphoid tail", ramphoid_tail_limit(), 4),
        ("marked ramphoid", marked_ramphoid(), 4),
        ("bicuspidal tails", bicuspidal_tails_on_core(), 2),
        ("cuspidal pair", cuspidal_pair(), 2),
        ("marked cuspidal", marked_cuspidal(), 2),
        ("two links", core_with_two_links(), 3),
        ("marked two-bridge link", marked_two_bridge_link(), 3),
        ("three-bridge link", three_bridge_link(), 3),
        ("degenerated two-bridge chain", degenerated_two_bridge_chain(), 3),
        ("marked tacnodal pair", marked_tacnodal_pair(), 3),
        ("marked chain of two", marked_chain_of_two(), 3),
        ("self-closing bridge", self_closing_bridge(), 3),
        ("cyclic two bridges", cyclic_two_bridges(), 3),
    ]
}

fn label_sets(ws: &WeightSystem, u: &StratumUnion) -> BTreeSet<BTreeSet<String>> {
    u.to_label_sets(ws).into_iter().map(|s| s.into_iter().collect()).collect()
}

#[test]
fn every_catalog_curve_passes_the_crosscheck() {
    let mut cases = BTreeSet::new();
    for (name, c, k) in &catalog() {
        let report = crosscheck_local_vgit(c, *k).unwrap();
        assert!(
            report.pass,
            "{name}: minus diff {:?}, plus diff {:?}",
            report.minus_diff, report.plus_diff
        );
        cases.insert(report.case.clone());
    }
    let want: BTreeSet<String> =
        ["I", "I'", "I''", "II", "II'", "II''"].iter().map(|s| s.to_string()).collect();
    assert_eq!(cases, want);
}

#[test]
fn torus_rank_counts_the_monomial_units() {
    for (name, c, k) in &catalog() {
        let chart = build_weight_system(c, *k).unwrap();
        let d = canonical_decomposition(c, *k).unwrap();
        let units: usize = d.appendages.iter().map(|a| a.length).sum();
        assert_eq!(chart.system.rank(), units, "{name}");
    }
}

#[test]
fn kore_padding_never_changes_the_chambers() {
    for c in [ramphoid_tail_limit(), cuspidal_pair(), marked_two_bridge_link()] {
        let k = if c.singularities().iter().any(|s| s.k() == 4) { 4 } else { 3 };
        let k = if c.singularities().iter().all(|s| s.k() <= 2) { 2 } else { k };
        let bare = build_chart(&c, k, Some(0)).unwrap();
        let padded = build_chart(&c, k, Some(5)).unwrap();
        let cap = padded.system.len();
        assert_eq!(
            minus_locus_with_cap(&bare.system, cap).unwrap(),
            minus_locus_with_cap(&padded.system, cap).unwrap()
        );
        assert_eq!(
            plus_locus_with_cap(&bare.system, cap).unwrap(),
            plus_locus_with_cap(&padded.system, cap).unwrap()
        );
        assert_eq!(bare.expected_s, padded.expected_s);
        assert_eq!(bare.expected_h, padded.expected_h);
    }
}

#[test]
fn perturbed_systems_are_negative_controls() {
    for (c, k) in [(ramphoid_tail_limit(), 4), (cyclic_two_bridges(), 3)] {
        let chart = build_weight_system(&c, k).unwrap();
        let bad = chart.perturbed_system();
        let report =
            crosscheck_system(&bad, &chart.case.to_string(), &chart.expected_s, &chart.expected_h, None)
                .unwrap();
        assert!(!report.pass);
        assert!(!report.minus_diff.is_empty() || !report.plus_diff.is_empty());
    }
}

#[test]
fn the_window_formula_agrees_with_the_feasibility_kernel() {
    for r in 1..=4usize {
        for m in 1..=2u32 {
            let ws = chain_system(r, m).unwrap();
            let cap = ws.len();
            let plus = plus_locus_with_cap(&ws, cap).unwrap();
            assert_eq!(plus, chain_chamber_formula(r, m).unwrap(), "plus chamber r={r} m={m}");
            let s_blocks: Vec<Vec<String>> = (1..=r)
                .map(|j| (0..=2 * m).map(|l| format!("s{j}.{l}")).collect())
                .collect();
            let minus = minus_locus_with_cap(&ws, cap).unwrap();
            assert_eq!(
                minus,
                StratumUnion::from_label_sets(&ws, &s_blocks).unwrap(),
                "minus chamber r={r} m={m}"
            );
        }
    }
}

#[test]
fn marked_link_ends_drop_their_node_generators() {
    let chart = build_weight_system(&marked_two_bridge_link(), 3).unwrap();
    let nodes: Vec<&str> = chart
        .system
        .coords()
        .iter()
        .zip(&chart.roles)
        .filter(|(_, r)| **r == CoordRole::Node)
        .map(|(c, _)| c.label.as_str())
        .collect();
    assert_eq!(nodes.len(), 2);
    assert!(nodes.contains(&"n1.1"));
    assert_eq!(
        label_sets(&chart.system, &chart.expected_h),
        BTreeSet::from([BTreeSet::from(["n1.1".to_string()])])
    );
}

#[test]
fn the_three_bridge_link_realizes_the_window_ideals() {
    let chart = build_weight_system(&three_bridge_link(), 3).unwrap();
    assert_eq!(chart.system.rank(), 3);
    for (label, want) in [
        ("n1.0", vec![1, 0, 0]),
        ("n1.1", vec![1, 1, 0]),
        ("n1.2", vec![0, 1, 1]),
        ("n1.3", vec![0, 0, 1]),
    ] {
        let at = chart.system.index_of_label(label).unwrap();
        assert_eq!(chart.system.coords()[at].weights, want, "{label}");
    }
    let want: BTreeSet<BTreeSet<String>> = [
        vec!["n1.0", "n1.1"],
        vec!["n1.1", "n1.2"],
        vec!["n1.2", "n1.3"],
        vec!["n1.0", "s1.2.0", "s1.2.1", "s1.2.2", "n1.3"],
    ]
    .into_iter()
    .map(|s| s.into_iter().map(str::to_string).collect())
    .collect();
    assert_eq!(label_sets(&chart.system, &chart.expected_h), want);
}

#[test]
fn the_locus_wrappers_match_the_chart() {
    let c = ramphoid_tail_limit();
    let chart = build_weight_system(&c, 4).unwrap();
    assert_eq!(expected_s_locus(&c, 4).unwrap(), chart.expected_s);
    assert_eq!(expected_h_locus(&c, 4).unwrap(), chart.expected_h);
}
