//! Exact feasibility for the subgroup conditions cutting out the chambers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::{OneParamSubgroup, SupportPattern, VgitError, WeightSystem};

/// Arbitrary-precision rational scalar used by the feasibility kernel.
pub type Rational = num_rational::BigRational;

/// Candidate-subgroup budget shared by the brute-force oracles.
const BRUTE_BUDGET: u128 = 400_000_000;

/// A linear inequality `coeffs . x >= bound` with integer data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<i64>,
    pub bound: i64,
}

impl Constraint {
    pub fn new(coeffs: Vec<i64>, bound: i64) -> Self {
        Constraint { coeffs, bound }
    }
}

/// Which of the two chambers a membership test refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChamberSign {
    Minus,
    Plus,
}

type Row = (Vec<Rational>, Rational);

/// Decide whether `coeffs . x >= bound` has a solution over the rationals,
/// by variable elimination. Returns a solution when one exists.
///
/// Each elimination stage records the rows it consumed; back-substitution
/// walks the stages in reverse, so the reported point satisfies every input
/// constraint exactly.
pub fn lp_feasible(
    dim: usize,
    constraints: &[Constraint],
) -> Result<Option<Vec<Rational>>, VgitError> {
    for c in constraints {
        if c.coeffs.len() != dim {
            return Err(VgitError::DimensionMismatch {
                expected: dim,
                got: c.coeffs.len(),
            });
        }
    }
    let mut rows: Vec<Row> = constraints
        .iter()
        .map(|c| {
            (
                c.coeffs
                    .iter()
                    .map(|&x| Rational::from_integer(x.into()))
                    .collect(),
                Rational::from_integer(c.bound.into()),
            )
        })
        .collect();
    canonicalize(&mut rows);

    // stages[v] holds the rows live just before variable v is eliminated;
    // those rows involve variables 0..=v only.
    let mut stages: Vec<Vec<Row>> = vec![Vec::new(); dim];
    for v in (0..dim).rev() {
        stages[v] = rows.clone();
        rows = eliminate(rows, v);
    }
    if rows.iter().any(|(_, bound)| bound.is_positive()) {
        return Ok(None);
    }

    let mut point = vec![Rational::zero(); dim];
    for v in 0..dim {
        let mut lower: Option<Rational> = None;
        let mut upper: Option<Rational> = None;
        for (coeffs, bound) in &stages[v] {
            let a = &coeffs[v];
            if a.is_zero() {
                continue;
            }
            let mut residual = bound.clone();
            for (c, x) in coeffs[..v].iter().zip(&point) {
                residual -= c * x;
            }
            let cand = residual / a;
            if a.is_positive() {
                lower = Some(match lower {
                    Some(l) if l >= cand => l,
                    _ => cand,
                });
            } else {
                upper = Some(match upper {
                    Some(u) if u <= cand => u,
                    _ => cand,
                });
            }
        }
        point[v] = lower.or(upper).unwrap_or_else(Rational::zero);
    }
    debug_assert!(satisfies(constraints, &point));
    Ok(Some(point))
}

/// Combine every positive row with every negative row on variable `v`.
/// The multipliers are positive, so the implied inequalities are valid.
fn eliminate(rows: Vec<Row>, v: usize) -> Vec<Row> {
    let mut out = Vec::new();
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    for r in rows {
        if r.0[v].is_positive() {
            pos.push(r);
        } else if r.0[v].is_negative() {
            neg.push(r);
        } else {
            out.push(r);
        }
    }
    for (pc, pb) in &pos {
        for (nc, nb) in &neg {
            let s = -&nc[v];
            let t = pc[v].clone();
            let coeffs: Vec<Rational> = pc
                .iter()
                .zip(nc)
                .map(|(a, b)| &s * a + &t * b)
                .collect();
            let bound = &s * pb + &t * nb;
            out.push((coeffs, bound));
        }
    }
    canonicalize(&mut out);
    out
}

/// Scale each row so its first nonzero entry has absolute value one, drop
/// tautologies, sort and deduplicate. Keeps the row sets from compounding
/// across elimination stages.
fn canonicalize(rows: &mut Vec<Row>) {
    rows.retain(|(coeffs, bound)| coeffs.iter().any(|c| !c.is_zero()) || bound.is_positive());
    for (coeffs, bound) in rows.iter_mut() {
        let scale = coeffs
            .iter()
            .chain(std::iter::once(&*bound))
            .find(|x| !x.is_zero())
            .map(|x| x.abs());
        if let Some(s) = scale {
            for c in coeffs.iter_mut() {
                *c /= &s;
            }
            *bound /= &s;
        }
    }
    rows.sort();
    rows.dedup();
}

fn satisfies(constraints: &[Constraint], point: &[Rational]) -> bool {
    constraints.iter().all(|c| {
        let mut acc = Rational::zero();
        for (a, x) in c.coeffs.iter().zip(point) {
            acc += Rational::from_integer((*a).into()) * x;
        }
        acc >= Rational::from_integer(c.bound.into())
    })
}

/// Does the one-parameter limit of a point with the given support exist?
/// True iff every supported coordinate has nonnegative pairing.
pub fn limit_exists(
    ws: &WeightSystem,
    s: &SupportPattern,
    lam: &OneParamSubgroup,
) -> Result<bool, VgitError> {
    s.validate_against(ws)?;
    if lam.0.len() != ws.rank() {
        return Err(VgitError::DimensionMismatch {
            expected: ws.rank(),
            got: lam.0.len(),
        });
    }
    Ok(s.indices().all(|j| lam.pairing(&ws.coords()[j].weights) >= 0))
}

/// Membership of the stratum with support `s` in the minus chamber: is there
/// a subgroup with nonnegative pairing on every supported coordinate and
/// character pairing at least one? Returns an integer witness when so.
pub fn in_minus(
    ws: &WeightSystem,
    s: &SupportPattern,
) -> Result<Option<OneParamSubgroup>, VgitError> {
    s.validate_against(ws)?;
    let mut cons = Vec::with_capacity(s.len() + 1);
    cons.push(Constraint::new(ws.character().to_vec(), 1));
    for j in s.indices() {
        cons.push(Constraint::new(ws.coords()[j].weights.clone(), 0));
    }
    let Some(point) = lp_feasible(ws.rank(), &cons)? else {
        return Ok(None);
    };
    let lam = OneParamSubgroup(integer_witness(&point)?);
    debug_assert!(lam.pairing(ws.character()) >= 1);
    debug_assert!(matches!(limit_exists(ws, s, &lam), Ok(true)));
    Ok(Some(lam))
}

/// Plus-chamber membership: the minus condition for the negated character.
pub fn in_plus(
    ws: &WeightSystem,
    s: &SupportPattern,
) -> Result<Option<OneParamSubgroup>, VgitError> {
    in_minus(&ws.negate_character(), s)
}

/// Clear denominators. The feasible set is closed under scaling by any
/// factor of at least one, so the scaled point is still a witness.
fn integer_witness(point: &[Rational]) -> Result<Vec<i64>, VgitError> {
    let lcm = point
        .iter()
        .fold(BigInt::from(1), |l, x| l.lcm(x.denom()));
    point
        .iter()
        .map(|x| {
            (x.numer() * &lcm / x.denom())
                .to_i64()
                .ok_or(VgitError::WitnessOverflow)
        })
        .collect()
}

/// Search the integer box [-bound, bound]^rank for a subgroup certifying the
/// minus condition. Independent of the elimination kernel.
pub fn brute_force_in_minus(
    ws: &WeightSystem,
    s: &SupportPattern,
    bound: i64,
) -> Result<bool, VgitError> {
    s.validate_against(ws)?;
    let bound = bound.max(0);
    let r = ws.rank();
    let required = box_cost(bound, r, r as u128)?;
    if required > BRUTE_BUDGET {
        return Err(VgitError::BudgetExceeded {
            required,
            budget: BRUTE_BUDGET,
        });
    }
    let rows: Vec<&[i64]> = s.indices().map(|j| ws.coords()[j].weights.as_slice()).collect();
    let chi = ws.character();
    let mut lam = vec![-bound; r];
    loop {
        if dot(chi, &lam) >= 1 && rows.iter().all(|w| dot(w, &lam) >= 0) {
            return Ok(true);
        }
        let mut i = 0;
        loop {
            if i == r {
                return Ok(false);
            }
            lam[i] += 1;
            if lam[i] <= bound {
                break;
            }
            lam[i] = -bound;
            i += 1;
        }
    }
}

pub fn brute_force_in_plus(
    ws: &WeightSystem,
    s: &SupportPattern,
    bound: i64,
) -> Result<bool, VgitError> {
    brute_force_in_minus(&ws.negate_character(), s, bound)
}

/// Box radius for the brute-force oracles.
///
/// Completeness: for rank at most 2 the box always contains a witness when
/// one exists. For rank 3 it does whenever no weight or character entry
/// exceeds 6 in absolute value: a feasible cone contains an integer extremal
/// generator with positive character pairing, those generators are cross
/// products of two constraint normals, and their entries are bounded by
/// twice the product of the two largest entry magnitudes.
pub fn certified_box_bound(ws: &WeightSystem) -> i64 {
    let m = ws
        .character()
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or(0)
        .max(ws.max_abs_weight());
    (4 * ws.rank() as i64 * m).max(1)
}

/// Sweep the box once and report the maximal sets of coordinates that admit
/// a limit under a common subgroup with the requested character sign. A
/// support lies in the chamber (as seen by the box) iff it is contained in
/// one of the returned masks, so a single sweep answers every support.
pub fn maximal_limit_masks(
    ws: &WeightSystem,
    sign: ChamberSign,
    bound: i64,
) -> Result<Vec<u64>, VgitError> {
    let n = ws.len();
    if n > 64 {
        return Err(VgitError::TooManyCoordsForMask { coords: n });
    }
    let bound = bound.max(0);
    let r = ws.rank();
    let required = box_cost(bound, r, n as u128 + 1)?;
    if required > BRUTE_BUDGET {
        return Err(VgitError::BudgetExceeded {
            required,
            budget: BRUTE_BUDGET,
        });
    }
    let chi: Vec<i64> = match sign {
        ChamberSign::Minus => ws.character().to_vec(),
        ChamberSign::Plus => ws.character().iter().map(|&x| -x).collect(),
    };
    let rows: Vec<&[i64]> = ws.coords().iter().map(|c| c.weights.as_slice()).collect();

    let mut masks: Vec<u64> = Vec::new();
    let last = r - 1;
    let mut outer = vec![-bound; last];
    'outer: loop {
        // Pairings at (outer, -bound); the inner loop steps the last entry.
        let mut pc = dot(&chi[..last], &outer) + chi[last] * (-bound);
        let mut p: Vec<i64> = rows
            .iter()
            .map(|w| dot(&w[..last], &outer) + w[last] * (-bound))
            .collect();
        for step in 0..=(2 * bound) {
            if pc >= 1 {
                let mut mask = 0u64;
                for (j, v) in p.iter().enumerate() {
                    if *v >= 0 {
                        mask |= 1 << j;
                    }
                }
                insert_maximal(&mut masks, mask);
            }
            if step < 2 * bound {
                pc += chi[last];
                for (v, w) in p.iter_mut().zip(&rows) {
                    *v += w[last];
                }
            }
        }
        let mut i = 0;
        loop {
            if i == last {
                break 'outer;
            }
            outer[i] += 1;
            if outer[i] <= bound {
                break;
            }
            outer[i] = -bound;
            i += 1;
        }
    }
    masks.sort_unstable();
    Ok(masks)
}

fn box_cost(bound: i64, rank: usize, per_point: u128) -> Result<u128, VgitError> {
    let side = 2 * bound as u128 + 1;
    side.checked_pow(rank as u32)
        .and_then(|p| p.checked_mul(per_point))
        .ok_or(VgitError::BudgetExceeded {
            required: u128::MAX,
            budget: BRUTE_BUDGET,
        })
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn insert_maximal(masks: &mut Vec<u64>, mask: u64) {
    if masks.iter().any(|&m| m & mask == mask) {
        return;
    }
    masks.retain(|&m| m & mask != m);
    masks.push(mask);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Coordinate;

    fn ws(rank: usize, character: Vec<i64>, weights: Vec<Vec<i64>>) -> WeightSystem {
        let coords = weights
            .into_iter()
            .enumerate()
            .map(|(i, w)| Coordinate {
                label: format!("x{i}"),
                weights: w,
            })
            .collect();
        WeightSystem::new(rank, character, coords).unwrap()
    }

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn single_lower_bound_is_tight() {
        let got = lp_feasible(1, &[Constraint::new(vec![1], 1)]).unwrap();
        assert_eq!(got, Some(vec![q(1)]));
    }

    #[test]
    fn contradictory_bounds_are_infeasible() {
        let cons = [Constraint::new(vec![1], 1), Constraint::new(vec![-1], 0)];
        assert_eq!(lp_feasible(1, &cons).unwrap(), None);
    }

    #[test]
    fn positive_orthant_cannot_reach_negative_character() {
        let cons = [
            Constraint::new(vec![1, 1], 1),
            Constraint::new(vec![-4, 0], 0),
            Constraint::new(vec![0, -4], 0),
        ];
        assert_eq!(lp_feasible(2, &cons).unwrap(), None);
    }

    #[test]
    fn witness_satisfies_every_constraint() {
        let cons = [
            Constraint::new(vec![2, -3, 1], 5),
            Constraint::new(vec![0, 1, 0], -2),
            Constraint::new(vec![-1, -1, -1], -40),
            Constraint::new(vec![0, 0, 7], 3),
        ];
        let point = lp_feasible(3, &cons).unwrap().expect("feasible");
        assert!(satisfies(&cons, &point));
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let err = lp_feasible(2, &[Constraint::new(vec![1], 0)]).unwrap_err();
        assert!(matches!(err, VgitError::DimensionMismatch { expected: 2, got: 1 }));
    }

    #[test]
    fn minus_membership_matches_brute_force_on_a_mixed_system() {
        let sys = ws(
            2,
            vec![1, -1],
            vec![vec![1, 0], vec![-1, 2], vec![0, -1], vec![3, 1]],
        );
        let b = certified_box_bound(&sys);
        for bits in 0u32..16 {
            let s = SupportPattern::new((0..4).filter(|j| bits & (1 << j) != 0));
            let lp = in_minus(&sys, &s).unwrap().is_some();
            let brute = brute_force_in_minus(&sys, &s, b).unwrap();
            assert_eq!(lp, brute, "support {s:?}");
        }
    }

    #[test]
    fn witness_certifies_membership() {
        let sys = ws(2, vec![2, 1], vec![vec![1, -1], vec![0, 1]]);
        let s = SupportPattern::full(2);
        let lam = in_minus(&sys, &s).unwrap().expect("in minus");
        assert!(lam.pairing(sys.character()) >= 1);
        assert!(limit_exists(&sys, &s, &lam).unwrap());
    }

    #[test]
    fn budget_is_enforced() {
        let sys = ws(4, vec![1, 1, 1, 1], vec![vec![1, 0, 0, 0]]);
        let err = brute_force_in_minus(&sys, &SupportPattern::full(1), 100).unwrap_err();
        assert!(matches!(err, VgitError::BudgetExceeded { .. }));
    }

    #[test]
    fn masks_answer_all_supports() {
        let sys = ws(
            2,
            vec![1, 1],
            vec![vec![2, -1], vec![-1, 0], vec![0, 1], vec![1, 1]],
        );
        let b = certified_box_bound(&sys);
        for sign in [ChamberSign::Minus, ChamberSign::Plus] {
            let masks = maximal_limit_masks(&sys, sign, b).unwrap();
            for bits in 0u64..16 {
                let s = SupportPattern::new((0..4).filter(|j| bits & (1 << j) != 0));
                let direct = match sign {
                    ChamberSign::Minus => brute_force_in_minus(&sys, &s, b).unwrap(),
                    ChamberSign::Plus => brute_force_in_plus(&sys, &s, b).unwrap(),
                };
                let via_mask = masks.iter().any(|&m| bits & !m == 0);
                assert_eq!(direct, via_mask, "sign {sign:?} support {bits:b}");
            }
        }
    }

    #[test]
    fn empty_support_membership_depends_on_character_alone() {
        let zero = ws(1, vec![0], vec![vec![3]]);
        assert!(in_minus(&zero, &SupportPattern::empty()).unwrap().is_none());
        let nonzero = ws(1, vec![-2], vec![vec![3]]);
        assert!(in_minus(&nonzero, &SupportPattern::empty()).unwrap().is_some());
    }
}
