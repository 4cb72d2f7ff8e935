//! Truncated series and exact membership in crimping subalgebras.

use num_traits::{One, Zero};

use crate::{CrimpError, CrimpingVector, Parity, Rational};

/// A polynomial in one variable modulo s^trunc, coefficients indexed by
/// exponent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    trunc: usize,
    coeffs: Vec<Rational>,
}

/// One series per branch of a two-branch singularity. Multiplication is
/// componentwise; the identity is (1, 1).
pub type SeriesPair = (TruncatedSeries, TruncatedSeries);

impl TruncatedSeries {
    pub fn zero(trunc: usize) -> Self {
        TruncatedSeries {
            trunc,
            coeffs: vec![Rational::zero(); trunc],
        }
    }

    pub fn one(trunc: usize) -> Self {
        Self::monomial(trunc, 0, Rational::one())
    }

    pub fn monomial(trunc: usize, exp: usize, coeff: Rational) -> Self {
        let mut s = Self::zero(trunc);
        if exp < trunc {
            s.coeffs[exp] = coeff;
        }
        s
    }

    pub fn from_coeffs(trunc: usize, coeffs: Vec<Rational>) -> Self {
        let mut s = Self::zero(trunc);
        for (e, c) in coeffs.into_iter().enumerate().take(trunc) {
            s.coeffs[e] = c;
        }
        s
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, exp: usize) -> Rational {
        self.coeffs.get(exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &TruncatedSeries) -> TruncatedSeries {
        debug_assert_eq!(self.trunc, other.trunc);
        TruncatedSeries {
            trunc: self.trunc,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn mul(&self, other: &TruncatedSeries) -> TruncatedSeries {
        debug_assert_eq!(self.trunc, other.trunc);
        let mut out = Self::zero(self.trunc);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= self.trunc {
                    break;
                }
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        out
    }

    /// Substitute s by lambda s: the exponent-e coefficient picks up
    /// lambda^e.
    pub fn rescale(&self, lambda: &Rational) -> TruncatedSeries {
        let mut power = Rational::one();
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                let scaled = c * &power;
                power *= lambda;
                scaled
            })
            .collect();
        TruncatedSeries {
            trunc: self.trunc,
            coeffs,
        }
    }
}

/// Generators of the unibranch crimping subalgebra modulo s^trunc: the
/// square of s + c_1 s^2 + c_2 s^4 + ... + c_{m-1} s^{2m-2}, followed by
/// the monomials s^{2m} through s^{4m-1}.
pub fn subalgebra_generators(
    c: &CrimpingVector,
    trunc: usize,
) -> Result<Vec<TruncatedSeries>, CrimpError> {
    if c.parity() != Parity::Even {
        return Err(CrimpError::WrongParity {
            expected: Parity::Even,
        });
    }
    let m = c.m();
    let needed = 4 * m;
    if trunc < needed {
        return Err(CrimpError::TruncationTooSmall {
            needed,
            got: trunc,
        });
    }
    let mut inner = TruncatedSeries::monomial(trunc, 1, Rational::one());
    for (l, cl) in c.entries().iter().enumerate() {
        inner = inner.add(&TruncatedSeries::monomial(trunc, 2 * (l + 1), cl.clone()));
    }
    let mut gens = vec![inner.mul(&inner)];
    for e in (2 * m)..(4 * m) {
        gens.push(TruncatedSeries::monomial(trunc, e, Rational::one()));
    }
    Ok(gens)
}

/// Generators of the two-branch crimping subalgebra inside the product of
/// two truncated series rings: s_1 + c_1 s_1^2 + ... + c_{m-1} s_1^m paired
/// with s_2, then the one-sided monomials of exponents m+1 through 2m+1 on
/// each branch.
pub fn subalgebra_generators_split(
    c: &CrimpingVector,
    trunc: usize,
) -> Result<Vec<SeriesPair>, CrimpError> {
    if c.parity() != Parity::Odd {
        return Err(CrimpError::WrongParity {
            expected: Parity::Odd,
        });
    }
    let m = c.m();
    let needed = 2 * m + 2;
    if trunc < needed {
        return Err(CrimpError::TruncationTooSmall {
            needed,
            got: trunc,
        });
    }
    let mut inner = TruncatedSeries::monomial(trunc, 1, Rational::one());
    for (l, cl) in c.entries().iter().enumerate() {
        inner = inner.add(&TruncatedSeries::monomial(trunc, l + 2, cl.clone()));
    }
    let mut gens = vec![(inner, TruncatedSeries::monomial(trunc, 1, Rational::one()))];
    for e in (m + 1)..=(2 * m + 1) {
        gens.push((
            TruncatedSeries::monomial(trunc, e, Rational::one()),
            TruncatedSeries::zero(trunc),
        ));
    }
    for e in (m + 1)..=(2 * m + 1) {
        gens.push((
            TruncatedSeries::zero(trunc),
            TruncatedSeries::monomial(trunc, e, Rational::one()),
        ));
    }
    Ok(gens)
}

/// Does f lie in the subalgebra generated by gens (with 1), modulo the
/// shared truncation? Decided by exact row reduction over the span of all
/// products of generators that survive truncation.
pub fn subalgebra_contains(
    gens: &[TruncatedSeries],
    f: &TruncatedSeries,
) -> Result<bool, CrimpError> {
    let trunc = f.trunc();
    for g in gens {
        if g.trunc() != trunc {
            return Err(CrimpError::TruncationMismatch(g.trunc(), trunc));
        }
    }
    let mut span = Basis::new(trunc);
    let mut stack = vec![TruncatedSeries::one(trunc)];
    while let Some(p) = stack.pop() {
        if !span.insert(p.coeffs().to_vec()) {
            continue;
        }
        for g in gens {
            let next = p.mul(g);
            if !next.is_zero() {
                stack.push(next);
            }
        }
    }
    Ok(span.contains(f.coeffs().to_vec()))
}

/// Componentwise analogue of subalgebra membership for two-branch data.
pub fn subalgebra_contains_split(
    gens: &[SeriesPair],
    f: &SeriesPair,
) -> Result<bool, CrimpError> {
    let trunc = f.0.trunc();
    if f.1.trunc() != trunc {
        return Err(CrimpError::TruncationMismatch(f.1.trunc(), trunc));
    }
    for (a, b) in gens {
        if a.trunc() != trunc || b.trunc() != trunc {
            return Err(CrimpError::TruncationMismatch(a.trunc(), trunc));
        }
    }
    let flat = |p: &SeriesPair| {
        let mut v = p.0.coeffs().to_vec();
        v.extend_from_slice(p.1.coeffs());
        v
    };
    let mut span = Basis::new(2 * trunc);
    let mut stack = vec![(TruncatedSeries::one(trunc), TruncatedSeries::one(trunc))];
    while let Some(p) = stack.pop() {
        if !span.insert(flat(&p)) {
            continue;
        }
        for (ga, gb) in gens {
            let next = (p.0.mul(ga), p.1.mul(gb));
            if !(next.0.is_zero() && next.1.is_zero()) {
                stack.push(next);
            }
        }
    }
    Ok(span.contains(flat(f)))
}

/// Row-echelon basis with exact rational pivots. Insertion reduces the
/// vector first, so the traversal of generator products terminates as soon
/// as the span stops growing.
struct Basis {
    dim: usize,
    rows: Vec<(usize, Vec<Rational>)>,
}

impl Basis {
    fn new(dim: usize) -> Self {
        Basis {
            dim,
            rows: Vec::new(),
        }
    }

    fn reduce(&self, v: &mut [Rational]) {
        for (pivot, row) in &self.rows {
            if !v[*pivot].is_zero() {
                let f = v[*pivot].clone();
                for i in *pivot..self.dim {
                    let sub = &f * &row[i];
                    v[i] -= sub;
                }
            }
        }
    }

    /// Returns true when the vector enlarged the span.
    fn insert(&mut self, mut v: Vec<Rational>) -> bool {
        self.reduce(&mut v);
        let Some(pivot) = v.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let inv = v[pivot].clone();
        for c in v.iter_mut() {
            *c /= &inv;
        }
        self.rows.push((pivot, v));
        self.rows.sort_by_key(|(p, _)| *p);
        true
    }

    fn contains(&self, mut v: Vec<Rational>) -> bool {
        self.reduce(&mut v);
        v.iter().all(|c| c.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn even(m: usize, entries: Vec<Rational>) -> CrimpingVector {
        CrimpingVector::new(Parity::Even, m, entries).unwrap()
    }

    #[test]
    fn monomial_generators_for_m_two() {
        let gens = subalgebra_generators(&even(2, vec![q(0)]), 8).unwrap();
        let expect: Vec<TruncatedSeries> = [2usize, 4, 5, 6, 7]
            .iter()
            .map(|&e| TruncatedSeries::monomial(8, e, q(1)))
            .collect();
        assert_eq!(gens, expect);
    }

    #[test]
    fn crimped_square_expands_exactly() {
        let gens = subalgebra_generators(&even(2, vec![q(1)]), 8).unwrap();
        let mut sq = TruncatedSeries::zero(8);
        sq = sq.add(&TruncatedSeries::monomial(8, 2, q(1)));
        sq = sq.add(&TruncatedSeries::monomial(8, 3, q(2)));
        sq = sq.add(&TruncatedSeries::monomial(8, 4, q(1)));
        assert_eq!(gens[0], sq);
    }

    #[test]
    fn generator_count_is_one_plus_two_m() {
        for m in 1..=4 {
            let gens = subalgebra_generators(&even(m, vec![q(0); m - 1]), 4 * m).unwrap();
            assert_eq!(gens.len(), 1 + 2 * m);
        }
    }

    #[test]
    fn truncation_bound_is_enforced() {
        let err = subalgebra_generators(&even(2, vec![q(1)]), 7).unwrap_err();
        assert_eq!(err, CrimpError::TruncationTooSmall { needed: 8, got: 7 });
    }

    #[test]
    fn reduction_terminates_and_membership_is_exact() {
        let gens = subalgebra_generators(&even(2, vec![q(1)]), 8).unwrap();
        let s2 = TruncatedSeries::monomial(8, 2, q(1));
        let s3 = TruncatedSeries::monomial(8, 3, q(1));
        assert!(!subalgebra_contains(&gens, &s2).unwrap());
        assert!(!subalgebra_contains(&gens, &s3).unwrap());
        assert!(subalgebra_contains(&gens, &gens[0]).unwrap());
        assert!(subalgebra_contains(&gens, &TruncatedSeries::zero(8)).unwrap());
        assert!(subalgebra_contains(&gens, &TruncatedSeries::one(8)).unwrap());
    }

    #[test]
    fn uncrimped_membership_includes_even_monomials() {
        let gens = subalgebra_generators(&even(2, vec![q(0)]), 8).unwrap();
        assert!(subalgebra_contains(&gens, &TruncatedSeries::monomial(8, 2, q(1))).unwrap());
        assert!(!subalgebra_contains(&gens, &TruncatedSeries::monomial(8, 3, q(1))).unwrap());
        assert!(subalgebra_contains(&gens, &TruncatedSeries::monomial(8, 6, q(1))).unwrap());
    }

    #[test]
    fn split_generators_shape() {
        let c = CrimpingVector::new(Parity::Odd, 2, vec![q(1)]).unwrap();
        let gens = subalgebra_generators_split(&c, 6).unwrap();
        assert_eq!(gens.len(), 1 + 2 * 3);
        let mut inner = TruncatedSeries::monomial(6, 1, q(1));
        inner = inner.add(&TruncatedSeries::monomial(6, 2, q(1)));
        assert_eq!(gens[0].0, inner);
        assert_eq!(gens[0].1, TruncatedSeries::monomial(6, 1, q(1)));
    }
}
