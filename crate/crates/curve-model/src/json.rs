//! JSON serialization of curve graphs with exact rational crimping entries.

use serde::{Deserialize, Serialize};

use crate::graph::{
    make_component, make_declaration, make_graph, make_singularity, parse_rational, CurveGraph,
    PointRef,
};
use crate::CurveError;

#[derive(Serialize, Deserialize)]
struct RawComponent {
    id: String,
    genus: u32,
    points: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    weierstrass: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct RawSingularity {
    k: u8,
    branches: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    crimping: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct RawDeclaration {
    points: Vec<(String, String)>,
    #[serde(rename = "type")]
    shape: String,
}

#[derive(Serialize, Deserialize)]
struct RawCurve {
    components: Vec<RawComponent>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    marks: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    singularities: Vec<RawSingularity>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    h_declarations: Vec<RawDeclaration>,
}

fn shape_name(m: u32, pointed: u8) -> String {
    format!("H_{{{m},{pointed}}}")
}

fn parse_shape(s: &str) -> Result<(u32, u8), CurveError> {
    let bad = || CurveError::BadJson(format!("bad H-declaration type {s:?}"));
    let inner = s
        .strip_prefix("H_{")
        .and_then(|t| t.strip_suffix('}'))
        .ok_or_else(bad)?;
    let (m, p) = inner.split_once(',').ok_or_else(bad)?;
    let m: u32 = m.trim().parse().map_err(|_| bad())?;
    let p: u8 = p.trim().parse().map_err(|_| bad())?;
    Ok((m, p))
}

impl CurveGraph {
    pub fn to_json_value(&self) -> serde_json::Value {
        let name = |p: PointRef| -> (String, String) {
            (
                self.components()[p.0].id().to_string(),
                self.components()[p.0].points()[p.1].clone(),
            )
        };
        let raw = RawCurve {
            components: self
                .components()
                .iter()
                .map(|c| RawComponent {
                    id: c.id().to_string(),
                    genus: c.genus(),
                    points: c.points().to_vec(),
                    weierstrass: c
                        .weierstrass_points()
                        .map(|i| c.points()[i].clone())
                        .collect(),
                })
                .collect(),
            marks: self.marks().iter().map(|&p| name(p)).collect(),
            singularities: self
                .singularities()
                .iter()
                .map(|s| RawSingularity {
                    k: s.k(),
                    branches: s.branches().iter().map(|&b| name(b)).collect(),
                    crimping: s.crimping().iter().map(|c| c.to_string()).collect(),
                })
                .collect(),
            h_declarations: self
                .h_declarations()
                .iter()
                .map(|d| RawDeclaration {
                    points: d.points().iter().map(|&p| name(p)).collect(),
                    shape: shape_name(d.m(), d.pointed()),
                })
                .collect(),
        };
        serde_json::to_value(raw).expect("curve serialization cannot fail")
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("serialization cannot fail")
    }

    pub fn from_json_value(v: &serde_json::Value) -> Result<CurveGraph, CurveError> {
        let raw: RawCurve = serde_json::from_value(v.clone())
            .map_err(|e| CurveError::BadJson(e.to_string()))?;
        let mut components = Vec::new();
        for rc in &raw.components {
            let mut wp = std::collections::BTreeSet::new();
            for w in &rc.weierstrass {
                let i = rc.points.iter().position(|p| p == w).ok_or_else(|| {
                    CurveError::BadJson(format!(
                        "weierstrass point {w:?} not on component {}",
                        rc.id
                    ))
                })?;
                wp.insert(i);
            }
            components.push(make_component(rc.id.clone(), rc.genus, rc.points.clone(), wp));
        }
        let scratch = make_graph(components.clone(), Vec::new(), Vec::new(), Vec::new());
        let resolve = |c: &str, p: &str| -> Result<PointRef, CurveError> {
            scratch
                .point_ref(c, p)
                .ok_or_else(|| CurveError::BadJson(format!("unknown point {c}.{p}")))
        };
        let mut marks = Vec::new();
        for (c, p) in &raw.marks {
            marks.push(resolve(c, p)?);
        }
        let mut singularities = Vec::new();
        for rs in &raw.singularities {
            let mut branches = Vec::new();
            for (c, p) in &rs.branches {
                branches.push(resolve(c, p)?);
            }
            let mut crimping = Vec::new();
            for s in &rs.crimping {
                crimping.push(parse_rational(s)?);
            }
            singularities.push(make_singularity(rs.k, branches, crimping));
        }
        let mut h_declarations = Vec::new();
        for rd in &raw.h_declarations {
            let (m, pointed) = parse_shape(&rd.shape)?;
            let mut points = Vec::new();
            for (c, p) in &rd.points {
                points.push(resolve(c, p)?);
            }
            h_declarations.push(make_declaration(points, m, pointed));
        }
        Ok(make_graph(components, marks, singularities, h_declarations))
    }

    pub fn from_json_str(s: &str) -> Result<CurveGraph, CurveError> {
        let v: serde_json::Value =
            serde_json::from_str(s).map_err(|e| CurveError::BadJson(e.to_string()))?;
        Self::from_json_value(&v)
    }
}
