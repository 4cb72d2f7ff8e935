//! Closed-form plus and minus chamber computation.
//!
//! A support is outside the minus chamber exactly when the negated character
//! lies in the cone spanned by its weights. The minimal such supports are
//! products of ray classes, so the chamber is assembled from minimal
//! transversals computed on rays, never by walking all supports.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_traits::{Signed, Zero};

use crate::{Rational, StratumUnion, VgitError, WeightSystem};

/// Largest coordinate count the default entry points accept.
pub const DEFAULT_COORD_CAP: usize = 24;

pub fn minus_locus(ws: &WeightSystem) -> Result<StratumUnion, VgitError> {
    minus_locus_with_cap(ws, DEFAULT_COORD_CAP)
}

pub fn plus_locus(ws: &WeightSystem) -> Result<StratumUnion, VgitError> {
    plus_locus_with_cap(ws, DEFAULT_COORD_CAP)
}

pub fn plus_locus_with_cap(ws: &WeightSystem, cap: usize) -> Result<StratumUnion, VgitError> {
    minus_locus_with_cap(&ws.negate_character(), cap)
}

/// The minus chamber as an irredundant union of coordinate subspaces.
///
/// A point flows to the origin with positive character pairing iff its
/// vanishing set hits every minimal infeasible support, so the chamber is
/// the union of V(T) over minimal transversals T. A zero character leaves
/// both chambers empty; a system with no infeasible support at all yields
/// the whole space.
pub fn minus_locus_with_cap(ws: &WeightSystem, cap: usize) -> Result<StratumUnion, VgitError> {
    if ws.len() > cap {
        return Err(VgitError::EnumerationTooLarge {
            coords: ws.len(),
            cap,
        });
    }
    if ws.has_zero_character() {
        return Ok(StratumUnion::empty());
    }
    let classes = ws.ray_classes();
    let target: Vec<i64> = ws.character().iter().map(|&c| -c).collect();
    let ray_edges = minimal_infeasible_ray_sets(ws.rank(), &classes, &target);
    let trans = minimal_transversals(&ray_edges);
    Ok(StratumUnion::from_index_sets(trans.into_iter().map(|t| {
        t.into_iter()
            .flat_map(|r| classes[r].1.iter().copied())
            .collect::<BTreeSet<usize>>()
    })))
}

/// Ray subsets R such that the target has a representation as a strictly
/// positive combination of the rays of R, necessarily unique. These are
/// exactly the inclusion-minimal ray sets whose cone contains the target,
/// and minimality bounds their size by the rank.
fn minimal_infeasible_ray_sets(
    rank: usize,
    classes: &[(Vec<i64>, Vec<usize>)],
    target: &[i64],
) -> Vec<BTreeSet<usize>> {
    let nrays = classes.len();
    let mut edges = Vec::new();
    for size in 1..=rank.min(nrays) {
        for combo in (0..nrays).combinations(size) {
            let dirs: Vec<&[i64]> = combo.iter().map(|&r| classes[r].0.as_slice()).collect();
            if has_unique_positive_solution(rank, &dirs, target) {
                edges.push(combo.into_iter().collect());
            }
        }
    }
    edges
}

/// Exact test: does `sum y_i dirs_i = target` have a unique solution with
/// every entry strictly positive?
#[allow(clippy::needless_range_loop)]
fn has_unique_positive_solution(rank: usize, dirs: &[&[i64]], target: &[i64]) -> bool {
    let k = dirs.len();
    let q = |x: i64| Rational::from_integer(x.into());
    let mut m: Vec<Vec<Rational>> = (0..rank)
        .map(|i| {
            dirs.iter()
                .map(|d| q(d[i]))
                .chain(std::iter::once(q(target[i])))
                .collect()
        })
        .collect();

    let mut pivot_row_of_col: Vec<Option<usize>> = vec![None; k];
    let mut row = 0;
    for col in 0..k {
        if row == rank {
            break;
        }
        let Some(pr) = (row..rank).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, pr);
        let inv = m[row][col].clone();
        for c in col..=k {
            m[row][c] /= &inv;
        }
        for r in 0..rank {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..=k {
                    let sub = &f * &m[row][c];
                    m[r][c] -= sub;
                }
            }
        }
        pivot_row_of_col[col] = Some(row);
        row += 1;
    }
    if pivot_row_of_col.iter().any(|p| p.is_none()) {
        return false;
    }
    for r in row..rank {
        if !m[r][k].is_zero() {
            return false;
        }
    }
    pivot_row_of_col
        .iter()
        .all(|p| m[p.unwrap()][k].is_positive())
}

/// Minimal hitting sets of a hypergraph on ray indices, built edge by edge.
fn minimal_transversals(edges: &[BTreeSet<usize>]) -> Vec<BTreeSet<usize>> {
    let mut trans: Vec<BTreeSet<usize>> = vec![BTreeSet::new()];
    for e in edges {
        let mut next: Vec<BTreeSet<usize>> = Vec::new();
        for t in &trans {
            if e.iter().any(|r| t.contains(r)) {
                next.push(t.clone());
            } else {
                for &r in e {
                    let mut extended = t.clone();
                    extended.insert(r);
                    next.push(extended);
                }
            }
        }
        next.sort_by_key(|t| t.len());
        let mut minimal: Vec<BTreeSet<usize>> = Vec::new();
        for t in next {
            if !minimal.iter().any(|kept| kept.is_subset(&t)) {
                minimal.push(t);
            }
        }
        trans = minimal;
    }
    trans
}
