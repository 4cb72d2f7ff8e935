//! Chain-shaped weight systems and the closed-form plus-chamber generator.

use std::collections::BTreeSet;

use vgit_core::{Coordinate, StratumUnion, WeightSystem};

use crate::ChartError;

/// Vanishing sets V(n_ν, s_{ν+2}, …, s_{ν+2μ−2}, n_{ν+2μ−1}) over all window
/// sizes μ and offsets ν. Node positions run 0..=length; `node_label` returns
/// None at positions whose node coordinate is absent (marked ends), which
/// simply drops the generator. Cyclic links wrap positions modulo the length.
pub(crate) fn j_strata(
    length: usize,
    cyclic: bool,
    node_label: impl Fn(usize) -> Option<String>,
    s_block: impl Fn(usize) -> Vec<String>,
) -> Vec<BTreeSet<String>> {
    let wrap_node = |p: usize| if cyclic { ((p + length - 1) % length) + 1 } else { p };
    let wrap_block = |q: usize| if cyclic { ((q - 1) % length) + 1 } else { q };
    let mut out = Vec::new();
    for mu in 1..=length.div_ceil(2) {
        let offsets: Vec<usize> =
            if cyclic { (0..length).collect() } else { (0..=length + 1 - 2 * mu).collect() };
        for nu in offsets {
            let mut gens = BTreeSet::new();
            if let Some(n) = node_label(wrap_node(nu)) {
                gens.insert(n);
            }
            for step in 1..mu {
                gens.extend(s_block(wrap_block(nu + 2 * step)));
            }
            if let Some(n) = node_label(wrap_node(nu + 2 * mu - 1)) {
                gens.insert(n);
            }
            out.push(gens);
        }
    }
    out
}

/// The rank-r chain action: nodes n_0..n_r with endpoint weights t_1 and
/// t_r, interior weights t_j t_{j+1}, and a (2m+1)-coordinate singularity
/// block of weights l − 2m − 2 on each factor.
pub fn chain_system(r: usize, m: u32) -> Result<WeightSystem, ChartError> {
    if r == 0 || m == 0 {
        return Err(ChartError::InvalidParameter(
            "chain systems need at least one bridge and m at least 1".to_string(),
        ));
    }
    let mut coords = Vec::new();
    for j in 0..=r {
        let mut w = vec![0i64; r];
        if j == 0 {
            w[0] = 1;
        } else if j == r {
            w[r - 1] = 1;
        } else {
            w[j - 1] = 1;
            w[j] = 1;
        }
        coords.push(Coordinate { label: format!("n{j}"), weights: w });
    }
    for j in 1..=r {
        for l in 0..=2 * i64::from(m) {
            let mut w = vec![0i64; r];
            w[j - 1] = l - 2 * i64::from(m) - 2;
            coords.push(Coordinate { label: format!("s{j}.{l}"), weights: w });
        }
    }
    Ok(WeightSystem::new(r, vec![1; r], coords)?)
}

/// The plus chamber of `chain_system(r, m)` generated directly from the
/// window index formula, bypassing the feasibility kernel.
pub fn chain_chamber_formula(r: usize, m: u32) -> Result<StratumUnion, ChartError> {
    let ws = chain_system(r, m)?;
    let sets = j_strata(
        r,
        false,
        |p| Some(format!("n{p}")),
        |j| (0..=2 * m).map(|l| format!("s{j}.{l}")).collect(),
    );
    let sets: Vec<Vec<String>> = sets.into_iter().map(|s| s.into_iter().collect()).collect();
    Ok(StratumUnion::from_label_sets(&ws, &sets)?)
}
