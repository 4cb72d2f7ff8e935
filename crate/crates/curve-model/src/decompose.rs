//! Canonical decomposition of a stable curve into a core and H-appendages.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::graph::{make_graph, make_singularity, CurveGraph, PointRef};
use crate::hcurves::{find_h_links, find_h_tails, tail_attaching_destabilizes, HTail};
use crate::stability::{stability, Variant};
use crate::subcurve::{Attaching, BoundaryPoint, Subcurve};
use crate::CurveError;

/// The six decomposition shapes: tails off a core, two tails at a node, one
/// marked tail; links off a core, one marked link, one cyclic link.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DecompositionCase {
    I,
    IPrime,
    IDoublePrime,
    II,
    IIPrime,
    IIDoublePrime,
}

impl fmt::Display for DecompositionCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            DecompositionCase::I => "I",
            DecompositionCase::IPrime => "I'",
            DecompositionCase::IDoublePrime => "I''",
            DecompositionCase::II => "II",
            DecompositionCase::IIPrime => "II'",
            DecompositionCase::IIDoublePrime => "II''",
        };
        write!(f, "{s}")
    }
}

/// Where one end of an appendage lands when the curve is put back together.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AppendEnd {
    /// Glued by a node to the core's q-mark with this index.
    CoreQ(usize),
    /// Becomes the global mark with this index.
    Mark(usize),
    /// Glued by a node to the other cyclic end.
    Cyclic,
}

/// One peeled tail or link, as a curve whose trailing marks are its ends.
#[derive(Clone, Debug)]
pub struct Appendage {
    pub graph: CurveGraph,
    /// Bridge units for links; always 1 for tails.
    pub length: usize,
    pub ends: Vec<AppendEnd>,
}

/// A stable curve split into core and appendages. The core's marks list its
/// surviving original marks first, then one q-mark per CoreQ end.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub case: DecompositionCase,
    pub core: Option<CurveGraph>,
    /// Original indices of the marks that stayed on the core, in core order.
    pub core_original_marks: Vec<usize>,
    pub appendages: Vec<Appendage>,
}

fn other_branch(c: &CurveGraph, sing: usize, branch: usize) -> BoundaryPoint {
    let s = &c.singularities()[sing];
    BoundaryPoint {
        point: s.branches()[1 - branch],
        attach: Attaching::SingBranch { sing, branch: 1 - branch },
    }
}

fn structure(msg: impl Into<String>) -> CurveError {
    CurveError::Structure(msg.into())
}

/// Split a curve along its destabilizing H-structures: tails for even k,
/// links of chains for odd k.
pub fn canonical_decomposition(c: &CurveGraph, k: u8) -> Result<Decomposition, CurveError> {
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
    let d = if k.is_multiple_of(2) { even_cases(c, u32::from(k) / 2)? } else { odd_cases(c, u32::from(k) / 2)? };
    check_core(c, k, &d)?;
    Ok(d)
}

fn even_cases(c: &CurveGraph, m: u32) -> Result<Decomposition, CurveError> {
    let tails: Vec<HTail> = find_h_tails(c, m)?
        .into_iter()
        .filter(|t| tail_attaching_destabilizes(c, t))
        .collect();
    if let Some(whole) = tails.iter().find(|t| t.sub.is_whole_curve(c)) {
        if !matches!(whole.q().attach, Attaching::Mark(_)) || c.marks().len() != 1 {
            return Err(structure("a whole-curve tail must hang on a single mark"));
        }
        return Ok(Decomposition {
            case: DecompositionCase::IDoublePrime,
            core: None,
            core_original_marks: Vec::new(),
            appendages: vec![Appendage {
                graph: whole.sub.extract(c),
                length: 1,
                ends: vec![AppendEnd::Mark(0)],
            }],
        });
    }
    let mut tails = tails;
    tails.sort_by_key(|t| *t.sub.comps().iter().next().unwrap());
    let mut covered: BTreeSet<usize> = BTreeSet::new();
    for t in &tails {
        for &i in t.sub.comps() {
            if !covered.insert(i) {
                return Err(structure("destabilizing tails overlap"));
            }
        }
    }
    if covered.len() == c.components().len() {
        if tails.len() != 2 {
            return Err(structure("a covering tail family must consist of two tails"));
        }
        let sings: Vec<usize> = tails
            .iter()
            .filter_map(|t| match t.q().attach {
                Attaching::SingBranch { sing, .. } => Some(sing),
                Attaching::Mark(_) => None,
            })
            .collect();
        if sings.len() != 2 || sings[0] != sings[1] || c.singularities()[sings[0]].k() != 1 {
            return Err(structure("the two covering tails must share one node"));
        }
        if !c.marks().is_empty() {
            return Err(structure("a two-tail decomposition admits no marks"));
        }
        return Ok(Decomposition {
            case: DecompositionCase::IPrime,
            core: None,
            core_original_marks: Vec::new(),
            appendages: tails
                .iter()
                .map(|t| Appendage {
                    graph: t.sub.extract(c),
                    length: 1,
                    ends: vec![AppendEnd::Cyclic],
                })
                .collect(),
        });
    }
    let mut q_points = Vec::new();
    for t in &tails {
        match t.q().attach {
            Attaching::SingBranch { sing, branch } if c.singularities()[sing].k() == 1 => {
                q_points.push(other_branch(c, sing, branch));
            }
            _ => return Err(structure("a proper destabilizing tail must hang on a node")),
        }
    }
    let core_comps: BTreeSet<usize> =
        (0..c.components().len()).filter(|i| !covered.contains(i)).collect();
    if c.marks().iter().any(|p| covered.contains(&p.0)) {
        return Err(structure("marks must stay on the core when tails are peeled"));
    }
    let core_sub = Subcurve::new(core_comps, q_points, BTreeSet::new());
    Ok(Decomposition {
        case: DecompositionCase::I,
        core: Some(core_sub.extract(c)),
        core_original_marks: (0..c.marks().len()).collect(),
        appendages: tails
            .iter()
            .enumerate()
            .map(|(i, t)| Appendage {
                graph: t.sub.extract(c),
                length: 1,
                ends: vec![AppendEnd::CoreQ(i)],
            })
            .collect(),
    })
}

/// Mark index at an end, when the end is a mark attaching.
fn end_mark(bp: &BoundaryPoint) -> Option<usize> {
    match bp.attach {
        Attaching::Mark(j) => Some(j),
        Attaching::SingBranch { .. } => None,
    }
}

fn end_node(c: &CurveGraph, bp: &BoundaryPoint) -> Option<(usize, usize)> {
    match bp.attach {
        Attaching::SingBranch { sing, branch } if c.singularities()[sing].k() == 1 => {
            Some((sing, branch))
        }
        _ => None,
    }
}

fn odd_cases(c: &CurveGraph, m: u32) -> Result<Decomposition, CurveError> {
    let links = find_h_links(c, m)?;
    if links.is_empty() {
        return Ok(Decomposition {
            case: DecompositionCase::II,
            core: Some(c.clone()),
            core_original_marks: (0..c.marks().len()).collect(),
            appendages: Vec::new(),
        });
    }
    let covered: BTreeSet<usize> = links.iter().flat_map(|l| l.comps()).collect();
    let total: usize = links.iter().map(|l| l.comps().len()).sum();
    if total != covered.len() {
        return Err(structure("links overlap"));
    }
    if covered.len() == c.components().len() {
        if links.len() != 1 {
            return Err(structure("a covering link family must be a single link"));
        }
        let link = &links[0];
        if link.cyclic {
            if !c.marks().is_empty() {
                return Err(structure("a cyclic link admits no marks"));
            }
            let closing = match link.ends[0].attach {
                Attaching::SingBranch { sing, .. } => sing,
                Attaching::Mark(_) => return Err(structure("cyclic ends must sit on a node")),
            };
            let sub = Subcurve::new(
                link.comps(),
                link.ends.clone(),
                [closing].into_iter().collect(),
            );
            return Ok(Decomposition {
                case: DecompositionCase::IIDoublePrime,
                core: None,
                core_original_marks: Vec::new(),
                appendages: vec![Appendage {
                    graph: sub.extract(c),
                    length: link.length(),
                    ends: vec![AppendEnd::Cyclic, AppendEnd::Cyclic],
                }],
            });
        }
        let (Some(j0), Some(j1)) = (end_mark(&link.ends[0]), end_mark(&link.ends[1])) else {
            return Err(structure("a covering path link must end in two marks"));
        };
        if c.marks().len() != 2 {
            return Err(structure("a two-marked link decomposition needs exactly two marks"));
        }
        let ends = if j0 <= j1 {
            vec![link.ends[0], link.ends[1]]
        } else {
            vec![link.ends[1], link.ends[0]]
        };
        let sub = Subcurve::new(link.comps(), ends, BTreeSet::new());
        return Ok(Decomposition {
            case: DecompositionCase::IIPrime,
            core: None,
            core_original_marks: Vec::new(),
            appendages: vec![Appendage {
                graph: sub.extract(c),
                length: link.length(),
                ends: vec![AppendEnd::Mark(j0.min(j1)), AppendEnd::Mark(j0.max(j1))],
            }],
        });
    }
    // Case II: orient each link deterministically, two-node links first.
    struct Planned {
        comps: BTreeSet<usize>,
        ends: Vec<BoundaryPoint>,
        length: usize,
        marked: bool,
    }
    let mut planned = Vec::new();
    for link in &links {
        if link.cyclic {
            return Err(structure("a cyclic link cannot attach to a core"));
        }
        let n0 = end_node(c, &link.ends[0]);
        let n1 = end_node(c, &link.ends[1]);
        let m0 = end_mark(&link.ends[0]);
        let m1 = end_mark(&link.ends[1]);
        let (ends, marked) = match (n0, n1, m0, m1) {
            (Some(a), Some(b), _, _) => {
                let qa = other_branch(c, a.0, a.1).point;
                let qb = other_branch(c, b.0, b.1).point;
                if qa <= qb {
                    (vec![link.ends[0], link.ends[1]], false)
                } else {
                    (vec![link.ends[1], link.ends[0]], false)
                }
            }
            (Some(_), None, _, Some(_)) => (vec![link.ends[0], link.ends[1]], true),
            (None, Some(_), Some(_), _) => (vec![link.ends[1], link.ends[0]], true),
            _ => return Err(structure("a core-attached link must end on nodes or marks")),
        };
        planned.push(Planned { comps: link.comps(), ends, length: link.length(), marked });
    }
    planned.sort_by_key(|p| (p.marked, *p.comps.iter().next().unwrap()));
    let mut q_points = Vec::new();
    let mut appendage_plan = Vec::new();
    for p in &planned {
        let mut ends = Vec::new();
        for bp in &p.ends {
            if let Some((sing, branch)) = end_node(c, bp) {
                ends.push(AppendEnd::CoreQ(q_points.len()));
                q_points.push(other_branch(c, sing, branch));
            } else {
                ends.push(AppendEnd::Mark(end_mark(bp).unwrap()));
            }
        }
        appendage_plan.push(ends);
    }
    let core_comps: BTreeSet<usize> =
        (0..c.components().len()).filter(|i| !covered.contains(i)).collect();
    let core_sub = Subcurve::new(core_comps.clone(), q_points, BTreeSet::new());
    let core = core_sub.extract(c);
    let core_original_marks: Vec<usize> = c
        .marks()
        .iter()
        .enumerate()
        .filter(|(_, p)| core_comps.contains(&p.0))
        .map(|(i, _)| i)
        .collect();
    let consumed: BTreeSet<usize> = appendage_plan
        .iter()
        .flatten()
        .filter_map(|e| match e {
            AppendEnd::Mark(j) => Some(*j),
            _ => None,
        })
        .collect();
    if core_original_marks.len() + consumed.len() != c.marks().len() {
        return Err(structure("every mark must sit on the core or end a link"));
    }
    let appendages = planned
        .iter()
        .zip(appendage_plan)
        .map(|(p, ends)| {
            let sub = Subcurve::new(p.comps.clone(), p.ends.clone(), BTreeSet::new());
            Appendage { graph: sub.extract(c), length: p.length, ends }
        })
        .collect();
    Ok(Decomposition {
        case: DecompositionCase::II,
        core: Some(core),
        core_original_marks,
        appendages,
    })
}

/// Every connected core part must itself be stable, and for odd k free of
/// destabilizing chains; link maximality guarantees this for genuine inputs.
fn check_core(c: &CurveGraph, k: u8, d: &Decomposition) -> Result<(), CurveError> {
    let Some(core) = &d.core else { return Ok(()) };
    for part in core.connected_components() {
        let verdict = stability(&part, k, Variant::Plain)?;
        if !verdict.pass {
            return Err(structure(format!(
                "core component fails stability: {}",
                verdict
                    .violations
                    .iter()
                    .map(|v| v.witness.clone())
                    .collect::<Vec<_>>()
                    .join("; ")
            )));
        }
        if k % 2 == 1 && !find_h_links(&part, u32::from(k) / 2)?.is_empty() {
            return Err(structure("core retains a destabilizing chain"));
        }
    }
    let _ = c;
    Ok(())
}

/// Rebuild the curve from a decomposition: appendage ends become nodes at
/// core q-marks, global marks, or one closing node for the cyclic pair.
pub fn reassemble(d: &Decomposition) -> Result<CurveGraph, CurveError> {
    let mut parts: Vec<&CurveGraph> = Vec::new();
    if let Some(core) = &d.core {
        parts.push(core);
    }
    for a in &d.appendages {
        if a.graph.marks().len() != a.ends.len() {
            return Err(structure("appendage marks must match its ends"));
        }
        parts.push(&a.graph);
    }
    let mut ids = BTreeSet::new();
    for p in &parts {
        for comp in p.components() {
            if !ids.insert(comp.id().to_string()) {
                return Err(structure(format!("component id {} appears twice", comp.id())));
            }
        }
    }
    let mut offsets = Vec::new();
    let mut components = Vec::new();
    let mut singularities = Vec::new();
    let mut h_declarations = Vec::new();
    for p in &parts {
        offsets.push(components.len());
        let off = components.len();
        components.extend(p.components().iter().cloned());
        singularities.extend(p.singularities().iter().map(|s| {
            make_singularity(
                s.k(),
                s.branches().iter().map(|&(ci, pi)| (ci + off, pi)).collect(),
                s.crimping().to_vec(),
            )
        }));
        h_declarations.extend(p.h_declarations().iter().map(|hd| {
            crate::graph::make_declaration(
                hd.points().iter().map(|&(ci, pi)| (ci + off, pi)).collect(),
                hd.m(),
                hd.pointed(),
            )
        }));
    }
    let core_part = d.core.as_ref().map(|core| (core, offsets[0]));
    let n_surv = d.core_original_marks.len();
    let mut final_marks: BTreeMap<usize, PointRef> = BTreeMap::new();
    if let Some((core, off)) = core_part {
        for (t, &orig) in d.core_original_marks.iter().enumerate() {
            let (ci, pi) = core.marks()[t];
            if final_marks.insert(orig, (ci + off, pi)).is_some() {
                return Err(structure("duplicate mark assignment"));
            }
        }
    }
    let mut used_q = 0usize;
    let mut cyclic_points = Vec::new();
    let appendage_offset = if d.core.is_some() { 1 } else { 0 };
    for (ai, a) in d.appendages.iter().enumerate() {
        let off = offsets[appendage_offset + ai];
        for (t, end) in a.ends.iter().enumerate() {
            let (ci, pi) = a.graph.marks()[t];
            let ap = (ci + off, pi);
            match end {
                AppendEnd::CoreQ(i) => {
                    let Some((core, core_off)) = core_part else {
                        return Err(structure("CoreQ end without a core"));
                    };
                    let Some(&(qc, qp)) = core.marks().get(n_surv + i) else {
                        return Err(structure("CoreQ index out of range"));
                    };
                    singularities.push(make_singularity(1, vec![(qc + core_off, qp), ap], vec![]));
                    used_q += 1;
                }
                AppendEnd::Mark(j) => {
                    if final_marks.insert(*j, ap).is_some() {
                        return Err(structure("duplicate mark assignment"));
                    }
                }
                AppendEnd::Cyclic => cyclic_points.push(ap),
            }
        }
    }
    if let Some((core, _)) = core_part {
        if n_surv + used_q != core.marks().len() {
            return Err(structure("unused core q-marks"));
        }
    }
    match cyclic_points.len() {
        0 => {}
        2 => singularities.push(make_singularity(1, cyclic_points, vec![])),
        _ => return Err(structure("cyclic ends must come in one pair")),
    }
    let marks: Vec<PointRef> = final_marks.values().copied().collect();
    if final_marks.keys().copied().ne(0..marks.len()) {
        return Err(structure("mark indices must be dense"));
    }
    let g = make_graph(components, marks, singularities, h_declarations);
    let report = g.validate();
    if !report.is_empty() {
        return Err(CurveError::InvalidCurve(report));
    }
    Ok(g)
}
