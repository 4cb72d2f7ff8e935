//! Gluing subcurves: component subsets with a chosen boundary.

use std::collections::BTreeSet;

use crate::graph::{conductor, CurveGraph, PointRef};
use crate::CurveError;

/// Component count above which subcurve enumeration refuses to run.
pub const COMPONENT_CAP: usize = 16;

/// How a boundary point of a subcurve arises in the ambient curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Attaching {
    /// A global mark, by mark index.
    Mark(usize),
    /// One branch of a singularity, by singularity and branch index.
    SingBranch { sing: usize, branch: usize },
}

/// A boundary point together with its ambient role.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundaryPoint {
    pub point: PointRef,
    pub attach: Attaching,
}

/// The ambient structure a subcurve hangs on at one boundary point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AttachingType {
    Marked,
    Sing(u8),
}

/// A subcurve: components, boundary points, and fully interior singularities
/// that were unpinched into boundary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subcurve {
    comps: BTreeSet<usize>,
    boundary: Vec<BoundaryPoint>,
    unpinched: BTreeSet<usize>,
}

impl Subcurve {
    pub fn new(
        comps: BTreeSet<usize>,
        boundary: Vec<BoundaryPoint>,
        unpinched: BTreeSet<usize>,
    ) -> Self {
        Subcurve { comps, boundary, unpinched }
    }

    pub fn comps(&self) -> &BTreeSet<usize> {
        &self.comps
    }

    pub fn boundary(&self) -> &[BoundaryPoint] {
        &self.boundary
    }

    pub fn unpinched(&self) -> &BTreeSet<usize> {
        &self.unpinched
    }

    pub fn contains_comp(&self, comp: usize) -> bool {
        self.comps.contains(&comp)
    }

    pub fn is_whole_curve(&self, c: &CurveGraph) -> bool {
        self.comps.len() == c.components().len()
    }

    /// Singularities with every branch inside and not unpinched.
    pub fn interior_sings(&self, c: &CurveGraph) -> Vec<usize> {
        c.singularities()
            .iter()
            .enumerate()
            .filter(|(si, s)| {
                !self.unpinched.contains(si)
                    && s.branches().iter().all(|b| self.comps.contains(&b.0))
            })
            .map(|(si, _)| si)
            .collect()
    }

    pub fn attaching_type(&self, c: &CurveGraph, bp: &BoundaryPoint) -> AttachingType {
        match bp.attach {
            Attaching::Mark(_) => AttachingType::Marked,
            Attaching::SingBranch { sing, .. } => AttachingType::Sing(c.singularities()[sing].k()),
        }
    }

    /// Arithmetic genus of the glued subcurve; only interior singularities count.
    pub fn arithmetic_genus(&self, c: &CurveGraph) -> i64 {
        let g: i64 = self.comps.iter().map(|&i| i64::from(c.components()[i].genus())).sum();
        let d: i64 = self
            .interior_sings(c)
            .iter()
            .map(|&si| crate::graph::delta(c.singularities()[si].k()))
            .sum();
        g + d - self.comps.len() as i64 + 1
    }

    /// Degree of omega(boundary + surviving marks) on one component.
    pub fn omega_degree(&self, c: &CurveGraph, comp: usize) -> i64 {
        let mut deg = 2 * i64::from(c.components()[comp].genus()) - 2;
        for &si in &self.interior_sings(c) {
            let s = &c.singularities()[si];
            for &(ci, _) in s.branches() {
                if ci == comp {
                    deg += conductor(s.k());
                }
            }
        }
        deg += self.boundary.iter().filter(|bp| bp.point.0 == comp).count() as i64;
        deg += c
            .marks()
            .iter()
            .filter(|&&p| p.0 == comp && !self.boundary.iter().any(|bp| bp.point == p))
            .count() as i64;
        deg
    }

    pub fn is_ample(&self, c: &CurveGraph) -> bool {
        self.comps.iter().all(|&i| self.omega_degree(c, i) > 0)
    }

    /// Connectivity through interior two-branch singularities.
    pub fn is_connected(&self, c: &CurveGraph) -> bool {
        if self.comps.is_empty() {
            return false;
        }
        let order: Vec<usize> = self.comps.iter().copied().collect();
        let pos = |comp: usize| order.iter().position(|&x| x == comp).unwrap();
        let mut label: Vec<usize> = (0..order.len()).collect();
        fn root(label: &mut [usize], mut i: usize) -> usize {
            while label[i] != i {
                label[i] = label[label[i]];
                i = label[i];
            }
            i
        }
        for &si in &self.interior_sings(c) {
            let s = &c.singularities()[si];
            if s.branches().len() == 2 {
                let a = root(&mut label, pos(s.branches()[0].0));
                let b = root(&mut label, pos(s.branches()[1].0));
                label[a] = b;
            }
        }
        let r0 = root(&mut label, 0);
        (0..order.len()).all(|i| root(&mut label, i) == r0)
    }

    /// The glued subcurve as a curve of its own. Surviving global marks keep
    /// their relative order; boundary points follow as trailing marks.
    pub fn extract(&self, c: &CurveGraph) -> CurveGraph {
        let keep: Vec<usize> = self.comps.iter().copied().collect();
        let index = |comp: usize| keep.iter().position(|&x| x == comp).unwrap();
        let remap = |p: PointRef| (index(p.0), p.1);
        let components = keep.iter().map(|&i| c.components()[i].clone()).collect();
        let mut marks: Vec<PointRef> = c
            .marks()
            .iter()
            .filter(|&&p| {
                self.comps.contains(&p.0) && !self.boundary.iter().any(|bp| bp.point == p)
            })
            .map(|&p| remap(p))
            .collect();
        marks.extend(self.boundary.iter().map(|bp| remap(bp.point)));
        let singularities = self
            .interior_sings(c)
            .iter()
            .map(|&si| {
                let s = &c.singularities()[si];
                crate::graph::make_singularity(
                    s.k(),
                    s.branches().iter().map(|&b| remap(b)).collect(),
                    s.crimping().to_vec(),
                )
            })
            .collect();
        let h_declarations = c
            .h_declarations()
            .iter()
            .filter(|d| d.points().iter().all(|p| self.comps.contains(&p.0)))
            .map(|d| {
                crate::graph::make_declaration(
                    d.points().iter().map(|&p| remap(p)).collect(),
                    d.m(),
                    d.pointed(),
                )
            })
            .collect();
        crate::graph::make_graph(components, marks, singularities, h_declarations)
    }
}

/// All connected subcurves with exactly the requested number of boundary
/// points. Branches of crossing singularities and all global marks on the
/// subset are forced into the boundary; fully interior singularities may be
/// unpinched to supply the rest.
pub fn gluing_subcurves(c: &CurveGraph, nboundary: usize) -> Result<Vec<Subcurve>, CurveError> {
    let n = c.components().len();
    if n > COMPONENT_CAP {
        return Err(CurveError::TooManyComponents(n, COMPONENT_CAP));
    }
    let mut out = Vec::new();
    for mask in 1u32..(1u32 << n) {
        let in_set = |comp: usize| mask & (1 << comp) != 0;
        let mut forced: Vec<BoundaryPoint> = Vec::new();
        for (mi, &p) in c.marks().iter().enumerate() {
            if in_set(p.0) {
                forced.push(BoundaryPoint { point: p, attach: Attaching::Mark(mi) });
            }
        }
        let mut fully_inside: Vec<usize> = Vec::new();
        let mut overflow = false;
        for (si, s) in c.singularities().iter().enumerate() {
            let inside: Vec<usize> = (0..s.branches().len())
                .filter(|&bi| in_set(s.branches()[bi].0))
                .collect();
            if inside.is_empty() {
                continue;
            }
            if inside.len() == s.branches().len() {
                fully_inside.push(si);
            } else {
                for bi in inside {
                    forced.push(BoundaryPoint {
                        point: s.branches()[bi],
                        attach: Attaching::SingBranch { sing: si, branch: bi },
                    });
                    if forced.len() > nboundary {
                        overflow = true;
                    }
                }
            }
        }
        if overflow || forced.len() > nboundary {
            continue;
        }
        let budget = nboundary - forced.len();
        for unpinch in unpinch_choices(c, &fully_inside, budget) {
            let comps: BTreeSet<usize> = (0..n).filter(|&i| in_set(i)).collect();
            let mut boundary = forced.clone();
            for &si in &unpinch {
                let s = &c.singularities()[si];
                for (bi, &b) in s.branches().iter().enumerate() {
                    boundary.push(BoundaryPoint {
                        point: b,
                        attach: Attaching::SingBranch { sing: si, branch: bi },
                    });
                }
            }
            let sub = Subcurve::new(comps, boundary, unpinch.iter().copied().collect());
            if sub.is_connected(c) {
                out.push(sub);
            }
        }
    }
    Ok(out)
}

/// Subsets of fully interior singularities whose branch counts sum to the
/// exact remaining boundary budget.
fn unpinch_choices(c: &CurveGraph, fully_inside: &[usize], budget: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn go(
        c: &CurveGraph,
        pool: &[usize],
        from: usize,
        left: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if left == 0 {
            out.push(current.clone());
            return;
        }
        for i in from..pool.len() {
            let cost = c.singularities()[pool[i]].branches().len();
            if cost <= left {
                current.push(pool[i]);
                go(c, pool, i + 1, left - cost, current, out);
                current.pop();
            }
        }
    }
    go(c, fully_inside, 0, budget, &mut current, &mut out);
    out
}
