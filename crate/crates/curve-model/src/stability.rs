//! Stability of pointed curves at a singularity parameter k.

use std::fmt;

use crate::graph::CurveGraph;
use crate::hcurves::{
    chain_attaching_destabilizes, find_h_chains, find_h_tails, tail_attaching_destabilizes,
};
use crate::CurveError;

/// The three stability flavors at a fixed k: the open minus chamber, the
/// wall itself, and the plus chamber.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Variant {
    Minus,
    Plain,
    Plus,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variant::Minus => write!(f, "minus"),
            Variant::Plain => write!(f, "plain"),
            Variant::Plus => write!(f, "plus"),
        }
    }
}

/// One failed stability condition with a human-readable witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub rule: &'static str,
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityVerdict {
    pub pass: bool,
    pub violations: Vec<Violation>,
}

/// Largest l whose A_l-singularities the variant admits.
fn singularity_bound(k: u8, variant: Variant) -> u8 {
    match variant {
        Variant::Minus => k - 1,
        Variant::Plain | Variant::Plus => k,
    }
}

/// Largest l whose destabilizing H_l-structures the variant forbids.
fn forbidden_bound(k: u8, variant: Variant) -> u8 {
    match variant {
        Variant::Minus | Variant::Plain => k - 1,
        Variant::Plus => k,
    }
}

/// Check ampleness, the singularity bound, and the absence of destabilizing
/// H-tails and H-chains up to the variant's threshold.
pub fn stability(c: &CurveGraph, k: u8, variant: Variant) -> Result<StabilityVerdict, CurveError> {
    if !(2..=4).contains(&k) {
        return Err(CurveError::UnsupportedK(k));
    }
    let report = c.validate();
    if !report.is_empty() {
        return Err(CurveError::InvalidCurve(report));
    }
    let mut violations = Vec::new();
    for (i, comp) in c.components().iter().enumerate() {
        let deg = c.omega_degree(i);
        if deg <= 0 {
            violations.push(Violation {
                rule: "ample",
                witness: format!("omega degree {deg} on component {}", comp.id()),
            });
        }
    }
    let sing_bound = singularity_bound(k, variant);
    for (si, s) in c.singularities().iter().enumerate() {
        if s.k() > sing_bound {
            violations.push(Violation {
                rule: "singularity-bound",
                witness: format!("{} exceeds A_{sing_bound}", c.describe_singularity(si)),
            });
        }
    }
    for l in 2..=forbidden_bound(k, variant) {
        if l % 2 == 0 {
            let m = u32::from(l) / 2;
            for tail in find_h_tails(c, m)? {
                if tail_attaching_destabilizes(c, &tail) {
                    violations.push(Violation {
                        rule: "destabilizing-tail",
                        witness: format!(
                            "H_{{{m},1}}-tail with boundary {}",
                            c.point_label(tail.q().point)
                        ),
                    });
                }
            }
        } else {
            let m = (u32::from(l) - 1) / 2;
            for chain in find_h_chains(c, m)? {
                if chain_attaching_destabilizes(c, &chain) {
                    violations.push(Violation {
                        rule: "destabilizing-chain",
                        witness: format!(
                            "H_{{{m},2}}-chain of length {} with ends {}, {}",
                            chain.length(),
                            c.point_label(chain.ends[0].point),
                            c.point_label(chain.ends[1].point)
                        ),
                    });
                }
            }
        }
    }
    violations.sort_by(|a, b| (a.rule, &a.witness).cmp(&(b.rule, &b.witness)));
    violations.dedup();
    Ok(StabilityVerdict { pass: violations.is_empty(), violations })
}
