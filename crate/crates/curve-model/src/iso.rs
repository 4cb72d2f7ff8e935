//! Isomorphism testing for curve graphs.

use std::collections::BTreeMap;

use crimping::{crimping_equivalent, CrimpingVector, Parity};

use crate::graph::{CurveGraph, PointRef, Singularity};
use crate::CurveError;

const COMPONENT_CAP: usize = 12;

/// Per-component invariants preserved by any isomorphism. Total point count
/// is deliberately absent: unreferenced unflagged points carry no geometry.
type Signature = (u32, usize, usize, Vec<u8>, usize);

fn signature(c: &CurveGraph, i: usize) -> Signature {
    let comp = &c.components()[i];
    let mut ks: Vec<u8> = Vec::new();
    for s in c.singularities() {
        for b in s.branches() {
            if b.0 == i {
                ks.push(s.k());
            }
        }
    }
    ks.sort_unstable();
    let marks = c.marks().iter().filter(|p| p.0 == i).count();
    let decls = c
        .h_declarations()
        .iter()
        .flat_map(|d| d.points())
        .filter(|p| p.0 == i)
        .count();
    (comp.genus(), comp.weierstrass_points().count(), marks, ks, decls)
}

fn crimpings_equivalent(a: &Singularity, b: &Singularity) -> bool {
    if a.k() != b.k() {
        return false;
    }
    if a.crimping().is_empty() {
        return b.crimping().is_empty();
    }
    let m = usize::from(a.k() / 2);
    let parity = if a.k().is_multiple_of(2) { Parity::Even } else { Parity::Odd };
    let make = |s: &Singularity| CrimpingVector::new(parity, m, s.crimping().to_vec());
    match (make(a), make(b)) {
        (Ok(va), Ok(vb)) => matches!(crimping_equivalent(&va, &vb), Ok(Some(_))),
        _ => false,
    }
}

struct Matcher<'a> {
    a: &'a CurveGraph,
    b: &'a CurveGraph,
    sig_a: Vec<Signature>,
    sig_b: Vec<Signature>,
    forced: BTreeMap<usize, usize>,
    forced_rev: BTreeMap<usize, usize>,
}

type PointMap = (BTreeMap<PointRef, PointRef>, BTreeMap<PointRef, PointRef>);

fn bind(a: &CurveGraph, b: &CurveGraph, map: &mut PointMap, p: PointRef, q: PointRef) -> bool {
    if a.components()[p.0].is_weierstrass(p.1) != b.components()[q.0].is_weierstrass(q.1) {
        return false;
    }
    match (map.0.get(&p), map.1.get(&q)) {
        (Some(&q2), _) if q2 != q => false,
        (_, Some(&p2)) if p2 != p => false,
        _ => {
            map.0.insert(p, q);
            map.1.insert(q, p);
            true
        }
    }
}

fn branch_orders(n: usize) -> Vec<Vec<usize>> {
    if n == 1 {
        vec![vec![0]]
    } else {
        vec![vec![0, 1], vec![1, 0]]
    }
}

impl<'a> Matcher<'a> {
    fn assign(&self, sigma: &mut Vec<Option<usize>>, used: &mut Vec<bool>, i: usize) -> bool {
        let n = self.a.components().len();
        if i == n {
            let sigma: Vec<usize> = sigma.iter().map(|x| x.unwrap()).collect();
            let mut map: PointMap = (BTreeMap::new(), BTreeMap::new());
            for t in 0..self.a.marks().len() {
                let (p, q) = (self.a.marks()[t], self.b.marks()[t]);
                if sigma[p.0] != q.0 || !bind(self.a, self.b, &mut map, p, q) {
                    return false;
                }
            }
            let mut used_s = vec![false; self.a.singularities().len()];
            return self.match_sings(&sigma, &mut used_s, &map, 0);
        }
        for j in 0..n {
            if used[j] || self.sig_a[i] != self.sig_b[j] {
                continue;
            }
            if self.forced.get(&i).is_some_and(|&f| f != j) {
                continue;
            }
            if self.forced_rev.get(&j).is_some_and(|&f| f != i) {
                continue;
            }
            sigma[i] = Some(j);
            used[j] = true;
            if self.assign(sigma, used, i + 1) {
                return true;
            }
            sigma[i] = None;
            used[j] = false;
        }
        false
    }

    fn match_sings(
        &self,
        sigma: &[usize],
        used: &mut Vec<bool>,
        map: &PointMap,
        i: usize,
    ) -> bool {
        if i == self.a.singularities().len() {
            let mut used_d = vec![false; self.a.h_declarations().len()];
            return self.match_decls(sigma, &mut used_d, map, 0);
        }
        let sa = &self.a.singularities()[i];
        for j in 0..self.b.singularities().len() {
            if used[j] {
                continue;
            }
            let sb = &self.b.singularities()[j];
            if !crimpings_equivalent(sa, sb) || sa.branches().len() != sb.branches().len() {
                continue;
            }
            'order: for order in branch_orders(sa.branches().len()) {
                let mut trial = map.clone();
                for (t, &bt) in order.iter().enumerate() {
                    let (p, q) = (sa.branches()[t], sb.branches()[bt]);
                    if sigma[p.0] != q.0 || !bind(self.a, self.b, &mut trial, p, q) {
                        continue 'order;
                    }
                }
                used[j] = true;
                if self.match_sings(sigma, used, &trial, i + 1) {
                    return true;
                }
                used[j] = false;
            }
        }
        false
    }

    fn match_decls(
        &self,
        sigma: &[usize],
        used: &mut Vec<bool>,
        map: &PointMap,
        i: usize,
    ) -> bool {
        if i == self.a.h_declarations().len() {
            return true;
        }
        let da = &self.a.h_declarations()[i];
        for j in 0..self.b.h_declarations().len() {
            if used[j] {
                continue;
            }
            let db = &self.b.h_declarations()[j];
            if da.m() != db.m()
                || da.pointed() != db.pointed()
                || da.points().len() != db.points().len()
            {
                continue;
            }
            'order: for order in branch_orders(da.points().len()) {
                let mut trial = map.clone();
                for (t, &bt) in order.iter().enumerate() {
                    let (p, q) = (da.points()[t], db.points()[bt]);
                    if sigma[p.0] != q.0 || !bind(self.a, self.b, &mut trial, p, q) {
                        continue 'order;
                    }
                }
                used[j] = true;
                if self.match_decls(sigma, used, &trial, i + 1) {
                    return true;
                }
                used[j] = false;
            }
        }
        false
    }
}

/// Whether two curve graphs differ only by relabeling. Marks correspond by
/// index, crimping by orbit equivalence; unreferenced unflagged points are
/// invisible.
pub fn curves_isomorphic(a: &CurveGraph, b: &CurveGraph) -> Result<bool, CurveError> {
    for c in [a, b] {
        if c.components().len() > COMPONENT_CAP {
            return Err(CurveError::TooManyComponents(c.components().len(), COMPONENT_CAP));
        }
    }
    if a.components().len() != b.components().len()
        || a.marks().len() != b.marks().len()
        || a.singularities().len() != b.singularities().len()
        || a.h_declarations().len() != b.h_declarations().len()
        || a.arithmetic_genus() != b.arithmetic_genus()
    {
        return Ok(false);
    }
    let sig_a: Vec<Signature> = (0..a.components().len()).map(|i| signature(a, i)).collect();
    let sig_b: Vec<Signature> = (0..b.components().len()).map(|i| signature(b, i)).collect();
    let mut sorted_a = sig_a.clone();
    let mut sorted_b = sig_b.clone();
    sorted_a.sort();
    sorted_b.sort();
    if sorted_a != sorted_b {
        return Ok(false);
    }
    let mut forced = BTreeMap::new();
    let mut forced_rev = BTreeMap::new();
    for t in 0..a.marks().len() {
        let (ca, cb) = (a.marks()[t].0, b.marks()[t].0);
        if *forced.entry(ca).or_insert(cb) != cb || *forced_rev.entry(cb).or_insert(ca) != ca {
            return Ok(false);
        }
    }
    let matcher = Matcher { a, b, sig_a, sig_b, forced, forced_rev };
    let mut sigma = vec![None; a.components().len()];
    let mut used = vec![false; a.components().len()];
    Ok(matcher.assign(&mut sigma, &mut used, 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::CurveBuilder;

    #[test]
    fn relabeling_preserves_isomorphism() {
        let a = CurveBuilder::new()
            .component("a", 0, &["x", "n"])
            .component("b", 0, &["x", "n"])
            .cusp(("a", "x"))
            .cusp(("b", "x"))
            .node(("a", "n"), ("b", "n"))
            .build()
            .unwrap();
        let b = CurveBuilder::new()
            .component("left", 0, &["glue", "pt"])
            .component("right", 0, &["pt", "glue"])
            .node(("right", "glue"), ("left", "glue"))
            .cusp(("left", "pt"))
            .cusp(("right", "pt"))
            .build()
            .unwrap();
        assert!(curves_isomorphic(&a, &b).unwrap());
        let c = CurveBuilder::new()
            .component("a", 0, &["x", "n"])
            .component("b", 1, &["n"])
            .cusp(("a", "x"))
            .node(("a", "n"), ("b", "n"))
            .build()
            .unwrap();
        assert!(!curves_isomorphic(&a, &c).unwrap());
    }

    #[test]
    fn marks_correspond_by_index() {
        let curve = |first: &str, second: &str| {
            CurveBuilder::new()
                .component("g", 2, &["w", "p"])
                .weierstrass("g", "w")
                .mark("g", first)
                .mark("g", second)
                .build()
                .unwrap()
        };
        let a = curve("w", "p");
        let b = curve("p", "w");
        assert!(curves_isomorphic(&a, &a.clone()).unwrap());
        assert!(!curves_isomorphic(&a, &b).unwrap());
    }

    #[test]
    fn crimping_orbits_separate_ramphoid_curves() {
        let ramphoid = |crimp: &str| {
            CurveBuilder::new()
                .component("c", 0, &["x", "p"])
                .ramphoid(("c", "x"), crimp)
                .mark("c", "p")
                .build()
                .unwrap()
        };
        assert!(!curves_isomorphic(&ramphoid("0"), &ramphoid("5/3")).unwrap());
        assert!(curves_isomorphic(&ramphoid("5/3"), &ramphoid("5/3")).unwrap());
        let a = ramphoid("5/3");
        let b = ramphoid("7/3");
        let va = CrimpingVector::new(
            Parity::Even,
            2,
            a.singularities()[0].crimping().to_vec(),
        )
        .unwrap();
        let vb = CrimpingVector::new(
            Parity::Even,
            2,
            b.singularities()[0].crimping().to_vec(),
        )
        .unwrap();
        let expect = matches!(crimping_equivalent(&va, &vb), Ok(Some(_)));
        assert_eq!(curves_isomorphic(&a, &b).unwrap(), expect);
    }

    #[test]
    fn unreferenced_points_are_invisible_but_flags_count() {
        let a = CurveBuilder::new()
            .component("e", 1, &["p"])
            .mark("e", "p")
            .build()
            .unwrap();
        let padded = CurveBuilder::new()
            .component("e", 1, &["p", "spare", "extra"])
            .mark("e", "p")
            .build()
            .unwrap();
        assert!(curves_isomorphic(&a, &padded).unwrap());
        let flagged = CurveBuilder::new()
            .component("e", 1, &["p", "w"])
            .weierstrass("e", "w")
            .mark("e", "p")
            .build()
            .unwrap();
        assert!(!curves_isomorphic(&a, &flagged).unwrap());
    }
}
