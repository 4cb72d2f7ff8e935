//! Curve graphs: components, marked points, singularities, and their invariants.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use crate::{CurveError, Rational};

/// Number of analytic branches of an A_k-singularity.
pub fn branch_count(k: u8) -> usize {
    if k % 2 == 1 {
        2
    } else {
        1
    }
}

/// Delta invariant of an A_k-singularity.
pub fn delta(k: u8) -> i64 {
    (i64::from(k) + 1) / 2
}

/// Conductor degree one branch of an A_k-singularity imposes on its component.
pub fn conductor(k: u8) -> i64 {
    if k.is_multiple_of(2) {
        i64::from(k)
    } else {
        (i64::from(k) + 1) / 2
    }
}

/// Crimping length of an A_k-singularity: m-1 entries for both A_{2m} and A_{2m+1}.
pub fn crimping_len(k: u8) -> usize {
    (usize::from(k) / 2).saturating_sub(1)
}

/// The m-parameter of an A_k-singularity: k = 2m or k = 2m+1.
pub fn m_of(k: u8) -> u32 {
    u32::from(k) / 2
}

/// A point on a component: (component index, point index).
pub type PointRef = (usize, usize);

/// One irreducible component, carrying named points on its normalization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    id: String,
    genus: u32,
    points: Vec<String>,
    weierstrass: BTreeSet<usize>,
}

impl Component {
    pub fn id(&self) -> &str {
        &self.id
    }

    /// Geometric genus of the normalization.
    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn point_index(&self, id: &str) -> Option<usize> {
        self.points.iter().position(|p| p == id)
    }

    /// Whether the point carries a Weierstrass declaration.
    pub fn is_weierstrass(&self, point: usize) -> bool {
        self.weierstrass.contains(&point)
    }

    pub fn weierstrass_points(&self) -> impl Iterator<Item = usize> + '_ {
        self.weierstrass.iter().copied()
    }
}

/// An A_k-singularity with one branch per sheet and an optional crimping vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Singularity {
    k: u8,
    branches: Vec<PointRef>,
    crimping: Vec<Rational>,
}

impl Singularity {
    pub fn k(&self) -> u8 {
        self.k
    }

    pub fn branches(&self) -> &[PointRef] {
        &self.branches
    }

    pub fn crimping(&self) -> &[Rational] {
        &self.crimping
    }

    pub fn has_zero_crimping(&self) -> bool {
        self.crimping.iter().all(|c| c.is_zero())
    }
}

/// A declared H-structure: the boundary point tuple of an H_{m,1}- or H_{m,2}-curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HDeclaration {
    points: Vec<PointRef>,
    m: u32,
    pointed: u8,
}

impl HDeclaration {
    pub fn points(&self) -> &[PointRef] {
        &self.points
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// 1 for H_{m,1}, 2 for H_{m,2}.
    pub fn pointed(&self) -> u8 {
        self.pointed
    }
}

/// An n-pointed curve with A_k-singularities, as a decorated graph.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CurveGraph {
    components: Vec<Component>,
    marks: Vec<PointRef>,
    singularities: Vec<Singularity>,
    h_declarations: Vec<HDeclaration>,
}

impl CurveGraph {
    pub fn components(&self) -> &[Component] {
        &self.components
    }

    /// Global marked points, in marking order.
    pub fn marks(&self) -> &[PointRef] {
        &self.marks
    }

    pub fn singularities(&self) -> &[Singularity] {
        &self.singularities
    }

    pub fn h_declarations(&self) -> &[HDeclaration] {
        &self.h_declarations
    }

    pub fn find_component(&self, id: &str) -> Option<usize> {
        self.components.iter().position(|c| c.id() == id)
    }

    pub fn point_ref(&self, comp: &str, point: &str) -> Option<PointRef> {
        let ci = self.find_component(comp)?;
        let pi = self.components[ci].point_index(point)?;
        Some((ci, pi))
    }

    pub fn point_label(&self, p: PointRef) -> String {
        format!("{}.{}", self.components[p.0].id(), self.components[p.0].points()[p.1])
    }

    /// The singularity branch occupying a point, if any.
    pub fn branch_at(&self, p: PointRef) -> Option<(usize, usize)> {
        for (si, s) in self.singularities.iter().enumerate() {
            if let Some(bi) = s.branches.iter().position(|&b| b == p) {
                return Some((si, bi));
            }
        }
        None
    }

    /// The global mark index sitting at a point, if any.
    pub fn mark_at(&self, p: PointRef) -> Option<usize> {
        self.marks.iter().position(|&q| q == p)
    }

    pub fn describe_singularity(&self, si: usize) -> String {
        let s = &self.singularities[si];
        let pts: Vec<String> = s.branches.iter().map(|&b| self.point_label(b)).collect();
        format!("A_{} at ({})", s.k, pts.join(", "))
    }

    /// Arithmetic genus: sum of geometric genera and delta invariants, minus
    /// components, plus one.
    pub fn arithmetic_genus(&self) -> i64 {
        let g: i64 = self.components.iter().map(|c| i64::from(c.genus())).sum();
        let d: i64 = self.singularities.iter().map(|s| delta(s.k())).sum();
        g + d - self.components.len() as i64 + 1
    }

    /// Degree of omega(sum of marks) on the normalization of one component.
    pub fn omega_degree(&self, comp: usize) -> i64 {
        let c = &self.components[comp];
        let mut deg = 2 * i64::from(c.genus()) - 2;
        for s in &self.singularities {
            for &(ci, _) in s.branches() {
                if ci == comp {
                    deg += conductor(s.k());
                }
            }
        }
        deg += self.marks.iter().filter(|&&(ci, _)| ci == comp).count() as i64;
        deg
    }

    /// Ampleness of omega(sum of marks): positive degree on every component.
    pub fn is_ample(&self) -> bool {
        (0..self.components.len()).all(|i| self.omega_degree(i) > 0)
    }

    /// Connectivity through two-branch singularities; single components are
    /// trivially connected, the empty curve is not.
    pub fn is_connected(&self) -> bool {
        if self.components.is_empty() {
            return false;
        }
        let parts = self.component_partition();
        parts.iter().all(|&p| p == parts[0])
    }

    /// Partition label per component under the two-branch adjacency relation.
    fn component_partition(&self) -> Vec<usize> {
        let n = self.components.len();
        let mut label: Vec<usize> = (0..n).collect();
        fn root(label: &mut [usize], mut i: usize) -> usize {
            while label[i] != i {
                label[i] = label[label[i]];
                i = label[i];
            }
            i
        }
        for s in &self.singularities {
            if s.branches().len() == 2 {
                let a = root(&mut label, s.branches()[0].0);
                let b = root(&mut label, s.branches()[1].0);
                label[a] = b;
            }
        }
        (0..n).map(|i| root(&mut label, i)).collect()
    }

    /// Split a possibly disconnected curve into its connected components.
    /// Marks keep their relative order; declarations follow their points.
    pub fn connected_components(&self) -> Vec<CurveGraph> {
        let parts = self.component_partition();
        let mut roots: Vec<usize> = parts.clone();
        roots.sort_unstable();
        roots.dedup();
        roots
            .into_iter()
            .map(|r| {
                let keep: Vec<usize> =
                    (0..self.components.len()).filter(|&i| parts[i] == r).collect();
                self.restrict_to(&keep)
            })
            .collect()
    }

    /// The subgraph on a component subset, keeping only fully contained
    /// singularities, marks, and declarations.
    pub(crate) fn restrict_to(&self, keep: &[usize]) -> CurveGraph {
        let mut index = BTreeMap::new();
        for (new, &old) in keep.iter().enumerate() {
            index.insert(old, new);
        }
        let remap = |p: PointRef| index.get(&p.0).map(|&ci| (ci, p.1));
        CurveGraph {
            components: keep.iter().map(|&i| self.components[i].clone()).collect(),
            marks: self.marks.iter().filter_map(|&p| remap(p)).collect(),
            singularities: self
                .singularities
                .iter()
                .filter(|s| s.branches().iter().all(|b| index.contains_key(&b.0)))
                .map(|s| Singularity {
                    k: s.k,
                    branches: s.branches.iter().map(|&b| remap(b).unwrap()).collect(),
                    crimping: s.crimping.clone(),
                })
                .collect(),
            h_declarations: self
                .h_declarations
                .iter()
                .filter(|d| d.points.iter().all(|p| index.contains_key(&p.0)))
                .map(|d| HDeclaration {
                    points: d.points.iter().map(|&p| remap(p).unwrap()).collect(),
                    m: d.m,
                    pointed: d.pointed,
                })
                .collect(),
        }
    }

    /// Structural invariant report; an empty list means the curve is valid.
    pub fn validate(&self) -> Vec<String> {
        let mut bad = Vec::new();
        if self.components.is_empty() {
            bad.push("curve has no components".to_string());
            return bad;
        }
        let mut ids = BTreeSet::new();
        for c in &self.components {
            if !ids.insert(c.id().to_string()) {
                bad.push(format!("duplicate component id {}", c.id()));
            }
            let mut pts = BTreeSet::new();
            for p in c.points() {
                if !pts.insert(p.clone()) {
                    bad.push(format!("duplicate point id {} on component {}", p, c.id()));
                }
            }
        }
        let mut seen_branch: BTreeMap<PointRef, usize> = BTreeMap::new();
        for (si, s) in self.singularities.iter().enumerate() {
            if !(1..=4).contains(&s.k()) {
                bad.push(format!("singularity #{si} has unsupported type A_{}", s.k()));
                continue;
            }
            if s.branches().len() != branch_count(s.k()) {
                bad.push(format!(
                    "singularity #{si} (A_{}) has {} branches, expected {}",
                    s.k(),
                    s.branches().len(),
                    branch_count(s.k())
                ));
            }
            if s.crimping().len() != crimping_len(s.k()) {
                bad.push(format!(
                    "singularity #{si} (A_{}) has {} crimping entries, expected {}",
                    s.k(),
                    s.crimping().len(),
                    crimping_len(s.k())
                ));
            }
            for &b in s.branches() {
                if let Some(&other) = seen_branch.get(&b) {
                    bad.push(format!(
                        "point {} lies on singularities #{other} and #{si}",
                        self.point_label(b)
                    ));
                } else {
                    seen_branch.insert(b, si);
                }
            }
        }
        let mut seen_marks = BTreeSet::new();
        for (mi, &p) in self.marks.iter().enumerate() {
            if seen_branch.contains_key(&p) {
                bad.push(format!(
                    "mark {} sits on a singular branch point {}",
                    mi + 1,
                    self.point_label(p)
                ));
            }
            if !seen_marks.insert(p) {
                bad.push(format!("marks collide at {}", self.point_label(p)));
            }
        }
        for d in &self.h_declarations {
            if !(d.pointed == 1 || d.pointed == 2) {
                bad.push("H-declaration must be 1- or 2-pointed".to_string());
            }
            if d.m == 0 {
                bad.push("H-declaration with m = 0".to_string());
            }
            if d.points.len() != usize::from(d.pointed) {
                bad.push("H-declaration point tuple does not match its type".to_string());
            }
        }
        if !self.is_connected() {
            bad.push("curve is disconnected".to_string());
        }
        if self.arithmetic_genus() < 0 {
            bad.push(format!("negative arithmetic genus {}", self.arithmetic_genus()));
        }
        bad
    }
}

/// Raw (string-addressed) ingredients awaiting resolution at build time.
type PendingSingularity = (u8, Vec<(String, String)>, Vec<String>);
type PendingDeclaration = (Vec<(String, String)>, u32, u8);

#[derive(Default)]
pub struct CurveBuilder {
    components: Vec<(String, u32, Vec<String>)>,
    weierstrass: Vec<(String, String)>,
    marks: Vec<(String, String)>,
    singularities: Vec<PendingSingularity>,
    h_declarations: Vec<PendingDeclaration>,
}

impl CurveBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn component(mut self, id: &str, genus: u32, points: &[&str]) -> Self {
        self.components.push((
            id.to_string(),
            genus,
            points.iter().map(|p| p.to_string()).collect(),
        ));
        self
    }

    pub fn weierstrass(mut self, comp: &str, point: &str) -> Self {
        self.weierstrass.push((comp.to_string(), point.to_string()));
        self
    }

    pub fn mark(mut self, comp: &str, point: &str) -> Self {
        self.marks.push((comp.to_string(), point.to_string()));
        self
    }

    pub fn sing(mut self, k: u8, branches: &[(&str, &str)], crimping: &[&str]) -> Self {
        self.singularities.push((
            k,
            branches.iter().map(|(c, p)| (c.to_string(), p.to_string())).collect(),
            crimping.iter().map(|s| s.to_string()).collect(),
        ));
        self
    }

    pub fn node(self, a: (&str, &str), b: (&str, &str)) -> Self {
        self.sing(1, &[a, b], &[])
    }

    pub fn cusp(self, at: (&str, &str)) -> Self {
        self.sing(2, &[at], &[])
    }

    pub fn tacnode(self, a: (&str, &str), b: (&str, &str)) -> Self {
        self.sing(3, &[a, b], &[])
    }

    pub fn ramphoid(self, at: (&str, &str), crimp: &str) -> Self {
        self.sing(4, &[at], &[crimp])
    }

    pub fn h_declaration(mut self, points: &[(&str, &str)], m: u32, pointed: u8) -> Self {
        self.h_declarations.push((
            points.iter().map(|(c, p)| (c.to_string(), p.to_string())).collect(),
            m,
            pointed,
        ));
        self
    }

    fn assemble(self) -> Result<CurveGraph, CurveError> {
        let mut g = CurveGraph::default();
        for (id, genus, points) in self.components {
            g.components.push(Component {
                id,
                genus,
                points,
                weierstrass: BTreeSet::new(),
            });
        }
        let resolve = |g: &CurveGraph, c: &str, p: &str| -> Result<PointRef, CurveError> {
            g.point_ref(c, p)
                .ok_or_else(|| CurveError::Structure(format!("unknown point {c}.{p}")))
        };
        for (c, p) in self.weierstrass {
            let (ci, pi) = resolve(&g, &c, &p)?;
            g.components[ci].weierstrass.insert(pi);
        }
        for (c, p) in self.marks {
            let r = resolve(&g, &c, &p)?;
            g.marks.push(r);
        }
        for (k, branches, crimping) in self.singularities {
            let mut brs = Vec::new();
            for (c, p) in &branches {
                brs.push(resolve(&g, c, p)?);
            }
            let mut cr = Vec::new();
            for s in &crimping {
                cr.push(parse_rational(&s.clone())?);
            }
            g.singularities.push(Singularity { k, branches: brs, crimping: cr });
        }
        for (points, m, pointed) in self.h_declarations {
            let mut pts = Vec::new();
            for (c, p) in &points {
                pts.push(resolve(&g, c, p)?);
            }
            g.h_declarations.push(HDeclaration { points: pts, m, pointed });
        }
        Ok(g)
    }

    /// Resolve references and insist on structural validity.
    pub fn build(self) -> Result<CurveGraph, CurveError> {
        let g = self.assemble()?;
        let report = g.validate();
        if report.is_empty() {
            Ok(g)
        } else {
            Err(CurveError::InvalidCurve(report))
        }
    }

    /// Resolve references but skip the validity report, for negative tests.
    pub fn build_unchecked(self) -> CurveGraph {
        self.assemble().expect("builder references must resolve")
    }
}

pub(crate) fn parse_rational(s: &str) -> Result<Rational, CurveError> {
    s.parse::<Rational>()
        .map_err(|e| CurveError::BadJson(format!("bad rational {s:?}: {e}")))
}

pub(crate) fn make_graph(
    components: Vec<Component>,
    marks: Vec<PointRef>,
    singularities: Vec<Singularity>,
    h_declarations: Vec<HDeclaration>,
) -> CurveGraph {
    CurveGraph { components, marks, singularities, h_declarations }
}

pub(crate) fn make_component(
    id: String,
    genus: u32,
    points: Vec<String>,
    weierstrass: BTreeSet<usize>,
) -> Component {
    Component { id, genus, points, weierstrass }
}

pub(crate) fn make_singularity(k: u8, branches: Vec<PointRef>, crimping: Vec<Rational>) -> Singularity {
    Singularity { k, branches, crimping }
}

pub(crate) fn make_declaration(points: Vec<PointRef>, m: u32, pointed: u8) -> HDeclaration {
    HDeclaration { points, m, pointed }
}
