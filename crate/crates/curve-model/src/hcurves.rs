//! Recognition of H-curve tails, bridges, chains, and links inside a curve.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use crate::graph::{CurveGraph, PointRef};
use crate::subcurve::{gluing_subcurves, Attaching, AttachingType, BoundaryPoint, Subcurve};
use crate::CurveError;

/// A one-boundary H-subcurve of genus m.
#[derive(Clone, Debug)]
pub struct HTail {
    pub sub: Subcurve,
    pub m: u32,
}

impl HTail {
    pub fn q(&self) -> &BoundaryPoint {
        &self.sub.boundary()[0]
    }

    pub fn attaching(&self, c: &CurveGraph) -> AttachingType {
        self.sub.attaching_type(c, self.q())
    }

    pub fn is_nodally_attached(&self, c: &CurveGraph) -> bool {
        attaching_is_nodal(c, self.q())
    }

    pub fn is_monomial(&self, c: &CurveGraph) -> bool {
        is_monomial_tail(c, &self.sub, self.m)
    }
}

/// A two-boundary H-subcurve of genus m.
#[derive(Clone, Debug)]
pub struct HBridge {
    pub sub: Subcurve,
    pub m: u32,
}

impl HBridge {
    pub fn ends(&self) -> [&BoundaryPoint; 2] {
        [&self.sub.boundary()[0], &self.sub.boundary()[1]]
    }

    pub fn is_nodally_attached(&self, c: &CurveGraph) -> bool {
        self.ends().iter().all(|bp| attaching_is_nodal(c, bp))
    }

    pub fn is_monomial(&self, c: &CurveGraph) -> bool {
        is_monomial_bridge(c, &self.sub, self.m)
    }
}

/// Bridges concatenated at A_{2m+1}-singularities joining their end points.
#[derive(Clone, Debug)]
pub struct HChain {
    pub bridges: Vec<HBridge>,
    pub ends: [BoundaryPoint; 2],
}

impl HChain {
    pub fn length(&self) -> usize {
        self.bridges.len()
    }

    pub fn comps(&self) -> BTreeSet<usize> {
        self.bridges.iter().flat_map(|b| b.sub.comps().iter().copied()).collect()
    }

    fn reversed(&self) -> HChain {
        let mut bridges = self.bridges.clone();
        bridges.reverse();
        HChain { bridges, ends: [self.ends[1], self.ends[0]] }
    }
}

/// A maximal family of destabilizing chains concatenated at nodes.
#[derive(Clone, Debug)]
pub struct HLink {
    pub chains: Vec<HChain>,
    /// Outer end points for a path; the two branches of the chosen closing
    /// node for a cycle.
    pub ends: Vec<BoundaryPoint>,
    pub cyclic: bool,
}

impl HLink {
    /// Number of bridge units across all constituent chains.
    pub fn length(&self) -> usize {
        self.chains.iter().map(|ch| ch.length()).sum()
    }

    pub fn comps(&self) -> BTreeSet<usize> {
        self.chains.iter().flat_map(|ch| ch.comps()).collect()
    }
}

/// Whether a boundary point hangs on a node or a marked point.
pub fn attaching_is_nodal(c: &CurveGraph, bp: &BoundaryPoint) -> bool {
    match bp.attach {
        Attaching::Mark(_) => true,
        Attaching::SingBranch { sing, .. } => c.singularities()[sing].k() == 1,
    }
}

/// Tail attachings that destabilize: marks, nodes, and A_l with l >= 2m+1.
pub fn tail_attaching_destabilizes(c: &CurveGraph, tail: &HTail) -> bool {
    match tail.attaching(c) {
        AttachingType::Marked => true,
        AttachingType::Sing(1) => true,
        AttachingType::Sing(l) => u32::from(l) > 2 * tail.m,
    }
}

/// Chain attachings that destabilize: marks, nodes, and A_l with l >= 2m+2,
/// required at both ends.
pub fn chain_attaching_destabilizes(c: &CurveGraph, chain: &HChain) -> bool {
    let m = chain.bridges[0].m;
    chain.ends.iter().all(|bp| match bp.attach {
        Attaching::Mark(_) => true,
        Attaching::SingBranch { sing, .. } => {
            let l = c.singularities()[sing].k();
            l == 1 || u32::from(l) >= 2 * m + 2
        }
    })
}

/// The monomial H_{m,1}-shape: one rational component whose only interior
/// singularity is an A_{2m} with zero crimping.
pub fn is_monomial_tail(c: &CurveGraph, sub: &Subcurve, m: u32) -> bool {
    if sub.comps().len() != 1 || sub.boundary().len() != 1 {
        return false;
    }
    let comp = *sub.comps().iter().next().unwrap();
    if c.components()[comp].genus() != 0 {
        return false;
    }
    if c.marks().iter().any(|&p| p.0 == comp && sub.boundary()[0].point != p) {
        return false;
    }
    let interior = sub.interior_sings(c);
    interior.len() == 1 && {
        let s = &c.singularities()[interior[0]];
        u32::from(s.k()) == 2 * m && s.crimping().iter().all(|x| x.is_zero())
    }
}

/// The monomial H_{m,2}-shape: two rational components joined by a single
/// interior zero-crimping A_{2m+1}, one boundary point on each.
pub fn is_monomial_bridge(c: &CurveGraph, sub: &Subcurve, m: u32) -> bool {
    if sub.comps().len() != 2 || sub.boundary().len() != 2 {
        return false;
    }
    if sub.comps().iter().any(|&i| c.components()[i].genus() != 0) {
        return false;
    }
    if c.marks().iter().any(|&p| {
        sub.comps().contains(&p.0) && !sub.boundary().iter().any(|bp| bp.point == p)
    }) {
        return false;
    }
    let per_comp_boundary = sub
        .comps()
        .iter()
        .all(|&i| sub.boundary().iter().filter(|bp| bp.point.0 == i).count() == 1);
    let interior = sub.interior_sings(c);
    per_comp_boundary
        && interior.len() == 1
        && {
            let s = &c.singularities()[interior[0]];
            u32::from(s.k()) == 2 * m + 1
                && s.crimping().iter().all(|x| x.is_zero())
                && s.branches()[0].0 != s.branches()[1].0
        }
}

fn declaration_matches(c: &CurveGraph, sub: &Subcurve, m: u32, pointed: u8) -> bool {
    let hit = c.h_declarations().iter().any(|d| {
        if d.m() != m || d.pointed() != pointed {
            return false;
        }
        match pointed {
            1 => {
                sub.comps().len() == 1
                    && sub.comps().contains(&d.points()[0].0)
                    && sub.boundary().len() == 1
                    && sub.boundary()[0].point == d.points()[0]
            }
            2 => {
                let declared: BTreeSet<PointRef> = d.points().iter().copied().collect();
                let boundary: BTreeSet<PointRef> =
                    sub.boundary().iter().map(|bp| bp.point).collect();
                let comps: BTreeSet<usize> = d.points().iter().map(|p| p.0).collect();
                declared == boundary && *sub.comps() == comps
            }
            _ => false,
        }
    });
    hit && sub.arithmetic_genus(c) == i64::from(m) && sub.is_ample(c)
}

fn qualifies_as_tail(c: &CurveGraph, sub: &Subcurve, m: u32) -> bool {
    if !sub.is_ample(c) {
        return declaration_matches(c, sub, m, 1);
    }
    let shape = match m {
        1 => sub.arithmetic_genus(c) == 1,
        2 => {
            let weierstrass_route = sub.comps().len() == 1
                && sub.arithmetic_genus(c) == 2
                && {
                    let (ci, pi) = sub.boundary()[0].point;
                    c.components()[ci].is_weierstrass(pi)
                };
            weierstrass_route || is_monomial_tail(c, sub, 2)
        }
        _ => is_monomial_tail(c, sub, m),
    };
    shape || declaration_matches(c, sub, m, 1)
}

fn qualifies_as_bridge(c: &CurveGraph, sub: &Subcurve, m: u32) -> bool {
    if !sub.is_ample(c) {
        return declaration_matches(c, sub, m, 2);
    }
    let shape = match m {
        1 => {
            sub.arithmetic_genus(c) == 1
                && sub
                    .comps()
                    .iter()
                    .all(|&i| sub.boundary().iter().any(|bp| bp.point.0 == i))
        }
        _ => is_monomial_bridge(c, sub, m),
    };
    shape || declaration_matches(c, sub, m, 2)
}

/// All H_{m,1}-subcurves with one boundary point.
pub fn find_h_tails(c: &CurveGraph, m: u32) -> Result<Vec<HTail>, CurveError> {
    Ok(gluing_subcurves(c, 1)?
        .into_iter()
        .filter(|sub| qualifies_as_tail(c, sub, m))
        .map(|sub| HTail { sub, m })
        .collect())
}

/// One-boundary rational subcurves carrying a single interior A_{2m} with
/// arbitrary crimping. Zero crimping recovers the monomial tail.
pub fn find_s_tails(c: &CurveGraph, m: u32) -> Result<Vec<HTail>, CurveError> {
    Ok(gluing_subcurves(c, 1)?
        .into_iter()
        .filter(|sub| {
            sub.is_ample(c) && sub.comps().len() == 1 && {
                let comp = *sub.comps().iter().next().unwrap();
                let clean = c.components()[comp].genus() == 0
                    && !c
                        .marks()
                        .iter()
                        .any(|&p| p.0 == comp && sub.boundary()[0].point != p);
                let interior = sub.interior_sings(c);
                clean
                    && interior.len() == 1
                    && u32::from(c.singularities()[interior[0]].k()) == 2 * m
            }
        })
        .map(|sub| HTail { sub, m })
        .collect())
}

/// All H_{m,2}-subcurves with two boundary points.
pub fn find_h_bridges(c: &CurveGraph, m: u32) -> Result<Vec<HBridge>, CurveError> {
    Ok(gluing_subcurves(c, 2)?
        .into_iter()
        .filter(|sub| qualifies_as_bridge(c, sub, m))
        .map(|sub| HBridge { sub, m })
        .collect())
}

const CHAIN_CAP: usize = 4096;

fn glue_sing(c: &CurveGraph, bp: &BoundaryPoint, m: u32) -> Option<(usize, usize)> {
    match bp.attach {
        Attaching::SingBranch { sing, branch }
            if u32::from(c.singularities()[sing].k()) == 2 * m + 1 =>
        {
            Some((sing, branch))
        }
        _ => None,
    }
}

/// All chains of bridges concatenated at A_{2m+1}-singularities, up to
/// reversal.
pub fn find_h_chains(c: &CurveGraph, m: u32) -> Result<Vec<HChain>, CurveError> {
    let bridges = find_h_bridges(c, m)?;
    let mut out: Vec<HChain> = Vec::new();
    let mut seen: BTreeSet<(Vec<usize>, Vec<PointRef>)> = BTreeSet::new();
    let mut push = |chain: HChain, out: &mut Vec<HChain>| -> Result<(), CurveError> {
        let mut comps: Vec<usize> = chain.comps().iter().copied().collect();
        comps.sort_unstable();
        let mut ends = vec![chain.ends[0].point, chain.ends[1].point];
        ends.sort_unstable();
        if seen.insert((comps, ends)) {
            out.push(chain);
            if out.len() > CHAIN_CAP {
                return Err(CurveError::Structure(
                    "chain enumeration exceeded its cap".to_string(),
                ));
            }
        }
        Ok(())
    };
    // Grow simple paths to the right; reversal duplicates collapse in `seen`.
    let mut stack: Vec<HChain> = Vec::new();
    for b in &bridges {
        let [e0, e1] = b.ends();
        stack.push(HChain { bridges: vec![b.clone()], ends: [*e0, *e1] });
        stack.push(HChain { bridges: vec![b.clone()], ends: [*e1, *e0] });
    }
    while let Some(chain) = stack.pop() {
        push(chain.clone(), &mut out)?;
        let Some((sing, branch)) = glue_sing(c, &chain.ends[1], m) else {
            continue;
        };
        let used = chain.comps();
        for b in &bridges {
            if b.sub.comps().iter().any(|x| used.contains(x)) {
                continue;
            }
            let [e0, e1] = b.ends();
            for (enter, exit) in [(e0, e1), (e1, e0)] {
                if glue_sing(c, enter, m) == Some((sing, 1 - branch)) {
                    let mut bridges2 = chain.bridges.clone();
                    bridges2.push(b.clone());
                    stack.push(HChain { bridges: bridges2, ends: [chain.ends[0], *exit] });
                }
            }
        }
    }
    Ok(out)
}

/// Maximal links: destabilizing chains grouped along shared end nodes into
/// paths and cycles.
pub fn find_h_links(c: &CurveGraph, m: u32) -> Result<Vec<HLink>, CurveError> {
    let chains: Vec<HChain> = find_h_chains(c, m)?
        .into_iter()
        .filter(|ch| chain_attaching_destabilizes(c, ch))
        .collect();
    for i in 0..chains.len() {
        for j in i + 1..chains.len() {
            if chains[i].comps().intersection(&chains[j].comps()).next().is_some() {
                return Err(CurveError::Structure(
                    "destabilizing chains overlap; the link grouping is undefined".to_string(),
                ));
            }
        }
    }
    // Chain ends meeting at the two branches of one node are adjacent.
    let mut at_node: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
    for (ci, ch) in chains.iter().enumerate() {
        for (ei, end) in ch.ends.iter().enumerate() {
            if let Attaching::SingBranch { sing, .. } = end.attach {
                if c.singularities()[sing].k() == 1 {
                    at_node.entry(sing).or_default().push((ci, ei));
                }
            }
        }
    }
    let partner = |ci: usize, ei: usize| -> Option<(usize, usize, usize)> {
        if let Attaching::SingBranch { sing, .. } = chains[ci].ends[ei].attach {
            if let Some(v) = at_node.get(&sing) {
                if v.len() == 2 {
                    let other = if v[0] == (ci, ei) { v[1] } else { v[0] };
                    return Some((other.0, other.1, sing));
                }
            }
        }
        None
    };
    let mut visited = vec![false; chains.len()];
    let mut links = Vec::new();
    for start in 0..chains.len() {
        if visited[start] {
            continue;
        }
        // Walk upstream to a free end if one exists; returning to the start
        // chain instead means the link is a cycle.
        let (mut ci, mut e) = (start, 0usize);
        let mut cyclic = false;
        let mut steps = 0;
        while let Some((pc, pe, _)) = partner(ci, e) {
            if pc == start || steps > chains.len() {
                cyclic = true;
                break;
            }
            ci = pc;
            e = 1 - pe;
            steps += 1;
        }
        let (first, first_entry) = if cyclic { (start, 0) } else { (ci, e) };
        let mut ordered = Vec::new();
        let mut cycle_sings = Vec::new();
        let (mut ci, mut entry) = (first, first_entry);
        loop {
            visited[ci] = true;
            let oriented = if entry == 0 { chains[ci].clone() } else { chains[ci].reversed() };
            ordered.push(oriented);
            match partner(ci, 1 - entry) {
                None => break,
                Some((pc, pe, sing)) => {
                    cycle_sings.push(sing);
                    if (pc, pe) == (first, first_entry) {
                        break;
                    }
                    ci = pc;
                    entry = pe;
                }
            }
        }
        let ends = if cyclic {
            let &closing = cycle_sings.iter().min().unwrap();
            let s = &c.singularities()[closing];
            (0..2)
                .map(|bi| BoundaryPoint {
                    point: s.branches()[bi],
                    attach: Attaching::SingBranch { sing: closing, branch: bi },
                })
                .collect()
        } else {
            vec![ordered[0].ends[0], ordered[ordered.len() - 1].ends[1]]
        };
        links.push(HLink { chains: ordered, ends, cyclic });
    }
    Ok(links)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::CurveBuilder;

    #[test]
    fn tails_of_the_bicuspidal_curve() {
        let c = CurveBuilder::new()
            .component("a", 0, &["x", "n"])
            .component("b", 0, &["x", "n"])
            .cusp(("a", "x"))
            .cusp(("b", "x"))
            .node(("a", "n"), ("b", "n"))
            .build()
            .unwrap();
        let tails = find_h_tails(&c, 1).unwrap();
        assert_eq!(tails.len(), 2);
        for t in &tails {
            assert!(t.is_nodally_attached(&c));
            assert!(t.is_monomial(&c));
            assert!(tail_attaching_destabilizes(&c, t));
        }
    }

    #[test]
    fn the_marked_cuspidal_curve_is_its_own_tail() {
        let c = CurveBuilder::new()
            .component("c0", 0, &["x", "p"])
            .cusp(("c0", "x"))
            .mark("c0", "p")
            .build()
            .unwrap();
        let tails = find_h_tails(&c, 1).unwrap();
        assert_eq!(tails.len(), 1);
        assert!(tails[0].sub.is_whole_curve(&c));
        assert!(matches!(tails[0].attaching(&c), AttachingType::Marked));
        assert!(tails[0].is_monomial(&c));

        let elliptic = CurveBuilder::new()
            .component("e", 1, &["p"])
            .mark("e", "p")
            .build()
            .unwrap();
        let tails = find_h_tails(&elliptic, 1).unwrap();
        assert_eq!(tails.len(), 1);
        assert!(!tails[0].is_monomial(&elliptic));
    }

    #[test]
    fn the_marked_tacnodal_pair_is_a_monomial_bridge() {
        let c = CurveBuilder::new()
            .component("u", 0, &["t", "p"])
            .component("v", 0, &["t", "p"])
            .tacnode(("u", "t"), ("v", "t"))
            .mark("u", "p")
            .mark("v", "p")
            .build()
            .unwrap();
        let bridges = find_h_bridges(&c, 1).unwrap();
        assert_eq!(bridges.len(), 1);
        assert!(bridges[0].sub.is_whole_curve(&c));
        assert!(bridges[0].is_monomial(&c));
        assert!(bridges[0].is_nodally_attached(&c));
    }

    #[test]
    fn elliptic_bridges_concatenate_into_a_destabilizing_chain() {
        let c = CurveBuilder::new()
            .component("k", 2, &["a", "b"])
            .component("e1", 1, &["n", "t"])
            .component("e2", 1, &["t", "n"])
            .node(("k", "a"), ("e1", "n"))
            .tacnode(("e1", "t"), ("e2", "t"))
            .node(("e2", "n"), ("k", "b"))
            .build()
            .unwrap();
        let bridges = find_h_bridges(&c, 1).unwrap();
        assert_eq!(bridges.len(), 2);
        let chains = find_h_chains(&c, 1).unwrap();
        assert_eq!(chains.len(), 3);
        let destab: Vec<_> =
            chains.iter().filter(|ch| chain_attaching_destabilizes(&c, ch)).collect();
        assert_eq!(destab.len(), 1);
        assert_eq!(destab[0].length(), 2);
        let links = find_h_links(&c, 1).unwrap();
        assert_eq!(links.len(), 1);
        assert_eq!(links[0].length(), 2);
        assert!(!links[0].cyclic);
    }

    #[test]
    fn a_self_closing_bridge_forms_a_cyclic_link() {
        let c = CurveBuilder::new()
            .component("u", 0, &["t", "n"])
            .component("v", 0, &["t", "n"])
            .tacnode(("u", "t"), ("v", "t"))
            .node(("u", "n"), ("v", "n"))
            .build()
            .unwrap();
        let links = find_h_links(&c, 1).unwrap();
        assert_eq!(links.len(), 1);
        assert!(links[0].cyclic);
        assert_eq!(links[0].length(), 1);
        assert_eq!(links[0].ends.len(), 2);
    }

    #[test]
    fn weierstrass_and_declared_tails_for_genus_two() {
        let c = CurveBuilder::new()
            .component("k", 1, &["p", "q"])
            .component("t", 2, &["w", "n"])
            .weierstrass("t", "n")
            .node(("k", "q"), ("t", "n"))
            .mark("k", "p")
            .build()
            .unwrap();
        let tails = find_h_tails(&c, 2).unwrap();
        assert_eq!(tails.len(), 1);
        assert!(!tails[0].is_monomial(&c));
        assert!(tails[0].is_nodally_attached(&c));

        let undeclared = CurveBuilder::new()
            .component("k", 1, &["p", "q"])
            .component("t", 2, &["w", "n"])
            .node(("k", "q"), ("t", "n"))
            .mark("k", "p")
            .build()
            .unwrap();
        assert_eq!(find_h_tails(&undeclared, 2).unwrap().len(), 0);
        let declared = CurveBuilder::new()
            .component("k", 1, &["p", "q"])
            .component("t", 2, &["w", "n"])
            .node(("k", "q"), ("t", "n"))
            .mark("k", "p")
            .h_declaration(&[("t", "n")], 2, 1)
            .build()
            .unwrap();
        assert_eq!(find_h_tails(&declared, 2).unwrap().len(), 1);
    }

    #[test]
    fn crimped_ramphoid_tails_are_s_shaped_but_not_monomial() {
        let c = CurveBuilder::new()
            .component("k", 1, &["p", "q"])
            .component("t", 0, &["x", "n"])
            .ramphoid(("t", "x"), "5/3")
            .node(("k", "q"), ("t", "n"))
            .mark("k", "p")
            .build()
            .unwrap();
        assert_eq!(find_h_tails(&c, 2).unwrap().len(), 0);
        let s = find_s_tails(&c, 2).unwrap();
        assert_eq!(s.len(), 1);
        assert!(!s[0].is_monomial(&c));
        assert!(s[0].is_nodally_attached(&c));
    }
}
