//! Maximal degeneration surgery and closed-limit classification.

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::decompose::{canonical_decomposition, DecompositionCase};
use crate::graph::{
    crimping_len, make_component, make_declaration, make_graph, make_singularity, Component,
    CurveGraph, PointRef,
};
use crate::hcurves::{find_h_bridges, find_h_tails, find_s_tails};
use crate::iso::curves_isomorphic;
use crate::stability::{stability, Variant};
use crate::subcurve::{Attaching, Subcurve};
use crate::{CurveError, Rational};

/// Closedness of the orbit corresponding to a curve: for tacnodal cores at
/// the ramphoid parameter the question is left open.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThreeValued {
    Yes,
    No,
    Unknown,
}

#[derive(Clone, Debug)]
pub struct DegeneracyReport {
    pub verdict: ThreeValued,
    pub reasons: Vec<String>,
}

/// Isomorphism data of the unique closed limit: the maximally degenerate
/// curve with its decomposition shape and sorted appendage lengths.
#[derive(Clone, Debug)]
pub struct ClosedLimitClass {
    pub degeneration: CurveGraph,
    pub case: DecompositionCase,
    pub link_lengths: Vec<usize>,
}

/// Mutable mirror of a curve graph for surgery passes.
struct Parts {
    components: Vec<Component>,
    marks: Vec<PointRef>,
    sings: Vec<(u8, Vec<PointRef>, Vec<Rational>)>,
    decls: Vec<(Vec<PointRef>, u32, u8)>,
    ids: BTreeSet<String>,
}

impl Parts {
    fn from(c: &CurveGraph) -> Parts {
        Parts {
            components: c.components().to_vec(),
            marks: c.marks().to_vec(),
            sings: c
                .singularities()
                .iter()
                .map(|s| (s.k(), s.branches().to_vec(), s.crimping().to_vec()))
                .collect(),
            decls: c
                .h_declarations()
                .iter()
                .map(|d| (d.points().to_vec(), d.m(), d.pointed()))
                .collect(),
            ids: c.components().iter().map(|x| x.id().to_string()).collect(),
        }
    }

    fn fresh_id(&mut self, prefix: &str) -> String {
        let mut i = 0usize;
        loop {
            let id = format!("{prefix}{i}");
            if self.ids.insert(id.clone()) {
                return id;
            }
            i += 1;
        }
    }

    fn push_component(&mut self, prefix: &str, points: &[&str]) -> usize {
        let id = self.fresh_id(prefix);
        self.components.push(make_component(
            id,
            0,
            points.iter().map(|p| p.to_string()).collect(),
            BTreeSet::new(),
        ));
        self.components.len() - 1
    }

    fn build(self) -> CurveGraph {
        make_graph(
            self.components,
            self.marks,
            self.sings
                .into_iter()
                .map(|(k, b, cr)| make_singularity(k, b, cr))
                .collect(),
            self.decls
                .into_iter()
                .map(|(p, m, d)| make_declaration(p, m, d))
                .collect(),
        )
    }
}

fn zeros(k: u8) -> Vec<Rational> {
    vec![Rational::zero(); crimping_len(k)]
}

/// Nodally attached one- or two-boundary units that can carry or absorb a
/// top singularity: H-tails and rational A_{2m}-tails for even k, H-bridges
/// for odd k.
fn nodal_units(c: &CurveGraph, k: u8) -> Result<Vec<Subcurve>, CurveError> {
    let m = u32::from(k) / 2;
    let mut units: Vec<Subcurve> = Vec::new();
    if k.is_multiple_of(2) {
        for t in find_h_tails(c, m)?.into_iter().chain(find_s_tails(c, m)?) {
            if t.is_nodally_attached(c) && !units.contains(&t.sub) {
                units.push(t.sub);
            }
        }
    } else {
        for b in find_h_bridges(c, m)? {
            if b.is_nodally_attached(c) && !units.contains(&b.sub) {
                units.push(b.sub);
            }
        }
    }
    Ok(units)
}

fn unit_is_monomial(c: &CurveGraph, sub: &Subcurve, k: u8) -> bool {
    let m = u32::from(k) / 2;
    if k.is_multiple_of(2) {
        crate::hcurves::is_monomial_tail(c, sub, m)
    } else {
        crate::hcurves::is_monomial_bridge(c, sub, m)
    }
}

/// Bubble a top singularity off its component onto fresh rational curves
/// joined back by nodes. Crimping travels with the singularity.
fn sprout(c: &CurveGraph, targets: &[usize], k: u8) -> CurveGraph {
    let mut parts = Parts::from(c);
    for &si in targets {
        let (_, branches, _) = parts.sings[si].clone();
        if k.is_multiple_of(2) {
            let t = parts.push_component("d", &["x", "q"]);
            parts.sings[si].1 = vec![(t, 0)];
            parts.sings.push((1, vec![branches[0], (t, 1)], vec![]));
        } else {
            let u = parts.push_component("d", &["s", "q"]);
            let v = parts.push_component("d", &["s", "q"]);
            parts.sings[si].1 = vec![(u, 0), (v, 0)];
            parts.sings.push((1, vec![branches[0], (u, 1)], vec![]));
            parts.sings.push((1, vec![branches[1], (v, 1)], vec![]));
        }
    }
    parts.build()
}

/// Remove one semistable rational component: genus zero, unmarked, carrying
/// exactly two node branches of distinct nodes; the nodes merge into one.
fn contract_once(c: &CurveGraph) -> Option<CurveGraph> {
    'search: for r in 0..c.components().len() {
        if c.components()[r].genus() != 0
            || c.marks().iter().any(|p| p.0 == r)
            || c.h_declarations().iter().any(|d| d.points().iter().any(|p| p.0 == r))
        {
            continue;
        }
        let mut touching = Vec::new();
        for (si, s) in c.singularities().iter().enumerate() {
            for (bi, b) in s.branches().iter().enumerate() {
                if b.0 == r {
                    touching.push((si, bi));
                }
            }
        }
        if touching.len() != 2 || touching[0].0 == touching[1].0 {
            continue 'search;
        }
        let (sa, sb) = (touching[0].0, touching[1].0);
        if c.singularities()[sa].k() != 1 || c.singularities()[sb].k() != 1 {
            continue;
        }
        let far = |si: usize| {
            let s = &c.singularities()[si];
            *s.branches().iter().find(|b| b.0 != r).unwrap()
        };
        let (x, y) = (far(sa), far(sb));
        let remap = |p: PointRef| if p.0 > r { (p.0 - 1, p.1) } else { p };
        let mut parts = Parts::from(c);
        parts.components.remove(r);
        parts.marks = parts.marks.into_iter().map(remap).collect();
        let mut sings: Vec<(u8, Vec<PointRef>, Vec<Rational>)> = Vec::new();
        for (si, (k, branches, cr)) in parts.sings.into_iter().enumerate() {
            if si == sa || si == sb {
                continue;
            }
            sings.push((k, branches.into_iter().map(remap).collect(), cr));
        }
        sings.push((1, vec![remap(x), remap(y)], vec![]));
        parts.sings = sings;
        parts.decls = parts
            .decls
            .into_iter()
            .map(|(pts, m, d)| (pts.into_iter().map(remap).collect(), m, d))
            .collect();
        return Some(parts.build());
    }
    None
}

/// Swap a nodally attached unit for the monomial curve of the same shape.
/// Node ends are rewired; mark ends keep their global index.
fn replace_unit(c: &CurveGraph, sub: &Subcurve, k: u8) -> Result<CurveGraph, CurveError> {
    let keep: Vec<usize> =
        (0..c.components().len()).filter(|i| !sub.comps().contains(i)).collect();
    let remap = |p: PointRef| -> PointRef {
        (keep.iter().position(|&x| x == p.0).unwrap(), p.1)
    };
    let mut parts = Parts {
        components: keep.iter().map(|&i| c.components()[i].clone()).collect(),
        marks: Vec::new(),
        sings: Vec::new(),
        decls: Vec::new(),
        ids: keep.iter().map(|&i| c.components()[i].id().to_string()).collect(),
    };
    let new_points: Vec<PointRef> = if k.is_multiple_of(2) {
        let t = parts.push_component("d", &["x", "q"]);
        parts.sings.push((k, vec![(t, 0)], zeros(k)));
        vec![(t, 1)]
    } else {
        let u = parts.push_component("d", &["s", "q"]);
        let v = parts.push_component("d", &["s", "q"]);
        parts.sings.push((k, vec![(u, 0), (v, 0)], zeros(k)));
        vec![(u, 1), (v, 1)]
    };
    if sub.boundary().len() != new_points.len() {
        return Err(CurveError::Structure(
            "replacement unit has the wrong boundary count".to_string(),
        ));
    }
    for (si, s) in c.singularities().iter().enumerate() {
        let mut branches = Vec::new();
        let mut dying = false;
        for (bi, &b) in s.branches().iter().enumerate() {
            let end = sub.boundary().iter().position(
                |bp| bp.attach == Attaching::SingBranch { sing: si, branch: bi },
            );
            if let Some(t) = end {
                branches.push(new_points[t]);
            } else if sub.comps().contains(&b.0) {
                dying = true;
            } else {
                branches.push(remap(b));
            }
        }
        match (dying, branches.is_empty()) {
            (true, true) => {}
            (true, false) => {
                return Err(CurveError::Structure(
                    "a singularity straddles the replaced unit".to_string(),
                ))
            }
            (false, _) => parts.sings.push((s.k(), branches, s.crimping().to_vec())),
        }
    }
    for (mi, &p) in c.marks().iter().enumerate() {
        if sub.comps().contains(&p.0) {
            let end = sub
                .boundary()
                .iter()
                .position(|bp| bp.attach == Attaching::Mark(mi))
                .ok_or_else(|| {
                    CurveError::Structure("a mark is interior to a replaced unit".to_string())
                })?;
            parts.marks.push(new_points[end]);
        } else {
            parts.marks.push(remap(p));
        }
    }
    for d in c.h_declarations() {
        if d.points().iter().all(|p| !sub.comps().contains(&p.0)) {
            parts.decls.push((
                d.points().iter().map(|&p| remap(p)).collect(),
                d.m(),
                d.pointed(),
            ));
        }
    }
    Ok(parts.build())
}

fn require_stable(c: &CurveGraph, k: u8) -> Result<(), CurveError> {
    if !(2..=4).contains(&k) {
        return Err(CurveError::UnsupportedK(k));
    }
    let verdict = stability(c, k, Variant::Plain)?;
    if !verdict.pass {
        return Err(CurveError::NotStable {
            k,
            variant: Variant::Plain,
            detail: verdict
                .violations
                .iter()
                .map(|v| v.witness.clone())
                .collect::<Vec<_>>()
                .join("; "),
        });
    }
    Ok(())
}

/// Degenerate a stable curve onto the closed limit of its stratum: every top
/// singularity ends up interior to a nodally attached monomial tail or
/// bridge, and crimping is pushed to zero.
pub fn maximal_degeneration(c: &CurveGraph, k: u8) -> Result<CurveGraph, CurveError> {
    require_stable(c, k)?;
    let before = (c.arithmetic_genus(), c.marks().len());
    let mut g = c.clone();
    let units = nodal_units(&g, k)?;
    let targets: Vec<usize> = g
        .singularities()
        .iter()
        .enumerate()
        .filter(|(si, s)| {
            s.k() == k && !units.iter().any(|u| u.interior_sings(&g).contains(si))
        })
        .map(|(si, _)| si)
        .collect();
    if !targets.is_empty() {
        g = sprout(&g, &targets, k);
    }
    let mut fuel = 4 * (g.components().len() + g.singularities().len()) + 64;
    loop {
        while let Some(next) = contract_once(&g) {
            g = next;
        }
        let unit = nodal_units(&g, k)?
            .into_iter()
            .find(|u| !unit_is_monomial(&g, u, k));
        match unit {
            Some(u) => g = replace_unit(&g, &u, k)?,
            None => break,
        }
        fuel -= 1;
        if fuel == 0 {
            return Err(CurveError::Structure(
                "degeneration failed to reach a fixed point".to_string(),
            ));
        }
    }
    if (g.arithmetic_genus(), g.marks().len()) != before {
        return Err(CurveError::Structure(
            "degeneration broke genus or mark bookkeeping".to_string(),
        ));
    }
    let report = g.validate();
    if !report.is_empty() {
        return Err(CurveError::InvalidCurve(report));
    }
    Ok(g)
}

/// Decide whether a stable curve already is the closed limit of its stratum.
/// Requires every top singularity inside a nodally attached unit, every such
/// unit monomial, and a core whose own closedness is understood.
pub fn is_maximally_degenerate(c: &CurveGraph, k: u8) -> Result<DegeneracyReport, CurveError> {
    require_stable(c, k)?;
    let units = nodal_units(c, k)?;
    let mut reasons = Vec::new();
    for (si, s) in c.singularities().iter().enumerate() {
        if s.k() == k && !units.iter().any(|u| u.interior_sings(c).contains(&si)) {
            reasons.push(format!(
                "{} is not interior to any nodally attached H-curve",
                c.describe_singularity(si)
            ));
        }
    }
    for u in &units {
        if !unit_is_monomial(c, u, k) {
            reasons.push(format!(
                "nodally attached unit with boundary at {} is not monomial",
                c.point_label(u.boundary()[0].point)
            ));
        }
    }
    if !reasons.is_empty() {
        return Ok(DegeneracyReport { verdict: ThreeValued::No, reasons });
    }
    let d = canonical_decomposition(c, k)?;
    if k == 4 {
        if let Some(core) = &d.core {
            if core.singularities().iter().any(|s| s.k() == 3) {
                return Ok(DegeneracyReport {
                    verdict: ThreeValued::Unknown,
                    reasons: vec![
                        "the core carries tacnodes; closedness below the top stratum is undetermined"
                            .to_string(),
                    ],
                });
            }
        }
    }
    Ok(DegeneracyReport { verdict: ThreeValued::Yes, reasons: Vec::new() })
}

/// The maximal degeneration together with its decomposition invariants.
pub fn closed_limit_class(c: &CurveGraph, k: u8) -> Result<ClosedLimitClass, CurveError> {
    let degeneration = maximal_degeneration(c, k)?;
    let d = canonical_decomposition(&degeneration, k)?;
    let mut link_lengths: Vec<usize> = d.appendages.iter().map(|a| a.length).collect();
    link_lengths.sort_unstable();
    Ok(ClosedLimitClass { degeneration, case: d.case, link_lengths })
}

/// Two curves share a closed limit exactly when the decomposition shapes,
/// appendage lengths, and degenerate curves all agree.
pub fn closed_classes_equal(
    a: &ClosedLimitClass,
    b: &ClosedLimitClass,
) -> Result<bool, CurveError> {
    Ok(a.case == b.case
        && a.link_lengths == b.link_lengths
        && curves_isomorphic(&a.degeneration, &b.degeneration)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::CurveBuilder;

    fn marked_cuspidal() -> CurveGraph {
        CurveBuilder::new()
            .component("c0", 0, &["x", "p"])
            .cusp(("c0", "x"))
            .mark("c0", "p")
            .build()
            .unwrap()
    }

    #[test]
    fn the_one_one_family_degenerates_to_the_cuspidal_curve() {
        let smooth = CurveBuilder::new()
            .component("e", 1, &["p"])
            .mark("e", "p")
            .build()
            .unwrap();
        let nodal = CurveBuilder::new()
            .component("c", 0, &["a", "b", "p"])
            .node(("c", "a"), ("c", "b"))
            .mark("c", "p")
            .build()
            .unwrap();
        let cuspidal = marked_cuspidal();
        for c in [&smooth, &nodal] {
            let report = is_maximally_degenerate(c, 2).unwrap();
            assert_eq!(report.verdict, ThreeValued::No);
            let limit = maximal_degeneration(c, 2).unwrap();
            assert!(curves_isomorphic(&limit, &cuspidal).unwrap());
        }
        let report = is_maximally_degenerate(&cuspidal, 2).unwrap();
        assert_eq!(report.verdict, ThreeValued::Yes);
        let again = maximal_degeneration(&cuspidal, 2).unwrap();
        assert_eq!(again, cuspidal);
    }

    #[test]
    fn an_interior_cusp_sprouts_onto_a_fresh_tail() {
        let c = CurveBuilder::new()
            .component("e", 1, &["x"])
            .cusp(("e", "x"))
            .build()
            .unwrap();
        assert_eq!(is_maximally_degenerate(&c, 2).unwrap().verdict, ThreeValued::No);
        let limit = maximal_degeneration(&c, 2).unwrap();
        let bicuspidal = CurveBuilder::new()
            .component("a", 0, &["x", "n"])
            .component("b", 0, &["x", "n"])
            .cusp(("a", "x"))
            .cusp(("b", "x"))
            .node(("a", "n"), ("b", "n"))
            .build()
            .unwrap();
        assert!(curves_isomorphic(&limit, &bicuspidal).unwrap());
        assert_eq!(is_maximally_degenerate(&bicuspidal, 2).unwrap().verdict, ThreeValued::Yes);
    }

    #[test]
    fn crimping_is_pushed_to_zero() {
        let crimped = CurveBuilder::new()
            .component("c0", 0, &["x", "p"])
            .ramphoid(("c0", "x"), "5/3")
            .mark("c0", "p")
            .build()
            .unwrap();
        assert_eq!(is_maximally_degenerate(&crimped, 4).unwrap().verdict, ThreeValued::No);
        let limit = maximal_degeneration(&crimped, 4).unwrap();
        assert_eq!(limit.singularities().len(), 1);
        assert!(limit.singularities()[0].has_zero_crimping());
        assert_eq!(limit.arithmetic_genus(), 2);
        assert_eq!(is_maximally_degenerate(&limit, 4).unwrap().verdict, ThreeValued::Yes);
    }

    #[test]
    fn odd_degeneration_contracts_interposed_rational_pieces() {
        let c = CurveBuilder::new()
            .component("g", 2, &["t"])
            .component("r", 0, &["t", "n"])
            .component("k", 1, &["n", "p"])
            .tacnode(("g", "t"), ("r", "t"))
            .node(("r", "n"), ("k", "n"))
            .mark("k", "p")
            .build()
            .unwrap();
        let limit = maximal_degeneration(&c, 3).unwrap();
        assert_eq!(limit.arithmetic_genus(), c.arithmetic_genus());
        assert!(limit.components().iter().all(|x| x.genus() == 0 || x.id() == "g"));
        let bridges = find_h_bridges(&limit, 1).unwrap();
        assert!(bridges
            .iter()
            .any(|b| b.is_nodally_attached(&limit) && b.is_monomial(&limit)));
        let verdict = is_maximally_degenerate(&limit, 3).unwrap().verdict;
        assert_eq!(verdict, ThreeValued::Yes);
    }

    #[test]
    fn tacnodal_cores_at_the_ramphoid_parameter_stay_open() {
        let c = CurveBuilder::new()
            .component("g1", 2, &["t"])
            .component("g2", 2, &["t"])
            .tacnode(("g1", "t"), ("g2", "t"))
            .build()
            .unwrap();
        let report = is_maximally_degenerate(&c, 4).unwrap();
        assert_eq!(report.verdict, ThreeValued::Unknown);
        assert!(report.reasons[0].contains("tacnode"));
        assert_eq!(is_maximally_degenerate(&c, 3).unwrap().verdict, ThreeValued::No);
    }

    #[test]
    fn closed_limits_classify_the_one_one_family() {
        let smooth = CurveBuilder::new()
            .component("e", 1, &["p"])
            .mark("e", "p")
            .build()
            .unwrap();
        let cuspidal = marked_cuspidal();
        let a = closed_limit_class(&smooth, 2).unwrap();
        let b = closed_limit_class(&cuspidal, 2).unwrap();
        assert!(closed_classes_equal(&a, &b).unwrap());
        assert_eq!(a.case, DecompositionCase::IDoublePrime);
        assert_eq!(a.link_lengths, vec![1]);
    }
}
