//! Membership in crimped coordinate subalgebras and its scaling invariance.

use crimping::{
    subalgebra_contains, subalgebra_contains_split, subalgebra_generators,
    subalgebra_generators_split, CrimpingVector, Parity, Rational, SeriesPair, TruncatedSeries,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn qr(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn random_series(rng: &mut ChaCha8Rng, trunc: usize) -> TruncatedSeries {
    TruncatedSeries::from_coeffs(
        trunc,
        (0..trunc)
            .map(|_| {
                if rng.gen_bool(0.4) {
                    q(0)
                } else {
                    qr(rng.gen_range(-4..=4i64).max(1), rng.gen_range(1..=3))
                }
            })
            .collect(),
    )
}

#[test]
fn odd_branch_diagonal_and_one_sided_membership() {
    let c = CrimpingVector::new(Parity::Odd, 2, vec![q(1)]).unwrap();
    let gens = subalgebra_generators_split(&c, 6).unwrap();

    let diag_sq = (gens[0].0.mul(&gens[0].0), gens[0].1.mul(&gens[0].1));
    assert!(subalgebra_contains_split(&gens, &diag_sq).unwrap());

    let one_sided_sq = (
        TruncatedSeries::zero(6),
        TruncatedSeries::monomial(6, 2, q(1)),
    );
    assert!(!subalgebra_contains_split(&gens, &one_sided_sq).unwrap());

    let one_sided_cube = (
        TruncatedSeries::zero(6),
        TruncatedSeries::monomial(6, 3, q(1)),
    );
    assert!(subalgebra_contains_split(&gens, &one_sided_cube).unwrap());

    let constants = (TruncatedSeries::one(6), TruncatedSeries::one(6));
    assert!(subalgebra_contains_split(&gens, &constants).unwrap());
    let split_constant = (TruncatedSeries::one(6), TruncatedSeries::zero(6));
    assert!(!subalgebra_contains_split(&gens, &split_constant).unwrap());
}

#[test]
fn nodal_subalgebra_is_the_diagonal_plus_the_ideals() {
    let c = CrimpingVector::new(Parity::Odd, 1, vec![]).unwrap();
    let gens = subalgebra_generators_split(&c, 4).unwrap();
    let diag = (
        TruncatedSeries::monomial(4, 1, q(1)),
        TruncatedSeries::monomial(4, 1, q(1)),
    );
    assert!(subalgebra_contains_split(&gens, &diag).unwrap());
    let off = (
        TruncatedSeries::monomial(4, 1, q(1)),
        TruncatedSeries::zero(4),
    );
    assert!(!subalgebra_contains_split(&gens, &off).unwrap());
    let off_sq = (
        TruncatedSeries::monomial(4, 2, q(1)),
        TruncatedSeries::zero(4),
    );
    assert!(subalgebra_contains_split(&gens, &off_sq).unwrap());
}

#[test]
fn crimped_ramphoid_subalgebra_separates_crimping_values() {
    let trunc = 8;
    let zero = subalgebra_generators(
        &CrimpingVector::new(Parity::Even, 2, vec![q(0)]).unwrap(),
        trunc,
    )
    .unwrap();
    let one = subalgebra_generators(
        &CrimpingVector::new(Parity::Even, 2, vec![q(1)]).unwrap(),
        trunc,
    )
    .unwrap();
    // The crimped square lies in its own subalgebra but not in the monomial
    // one, and conversely for s^2.
    assert!(subalgebra_contains(&one, &one[0]).unwrap());
    assert!(!subalgebra_contains(&zero, &one[0]).unwrap());
    let s2 = TruncatedSeries::monomial(trunc, 2, q(1));
    assert!(subalgebra_contains(&zero, &s2).unwrap());
    assert!(!subalgebra_contains(&one, &s2).unwrap());
}

#[test]
fn membership_is_invariant_under_simultaneous_rescaling() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5ca1e);
    for round in 0..40 {
        let m = rng.gen_range(2..=3);
        let trunc = 4 * m;
        let c = CrimpingVector::new(
            Parity::Even,
            m,
            (1..m).map(|_| qr(rng.gen_range(-3..=3), 1)).collect(),
        )
        .unwrap();
        let lam = qr(rng.gen_range(1..=3), rng.gen_range(1..=2))
            * if rng.gen_bool(0.5) { q(1) } else { q(-1) };
        let gens = subalgebra_generators(&c, trunc).unwrap();
        let gens_scaled = subalgebra_generators(&c.rescale(&lam), trunc).unwrap();
        let f = random_series(&mut rng, trunc);
        let before = subalgebra_contains(&gens, &f).unwrap();
        let after = subalgebra_contains(&gens_scaled, &f.rescale(&lam)).unwrap();
        assert_eq!(before, after, "round {round} disagrees");
    }
}

#[test]
fn split_membership_is_invariant_under_simultaneous_rescaling() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xba1a2);
    for round in 0..40 {
        let m = rng.gen_range(1..=3);
        let trunc = 2 * m + 2;
        let c = CrimpingVector::new(
            Parity::Odd,
            m,
            (1..m).map(|_| qr(rng.gen_range(-3..=3), 1)).collect(),
        )
        .unwrap();
        let lam = qr(rng.gen_range(1..=3), 1);
        let gens = subalgebra_generators_split(&c, trunc).unwrap();
        let gens_scaled = subalgebra_generators_split(&c.rescale(&lam), trunc).unwrap();
        let f: SeriesPair = (random_series(&mut rng, trunc), random_series(&mut rng, trunc));
        let f_scaled = (f.0.rescale(&lam), f.1.rescale(&lam));
        let before = subalgebra_contains_split(&gens, &f).unwrap();
        let after = subalgebra_contains_split(&gens_scaled, &f_scaled).unwrap();
        assert_eq!(before, after, "round {round} disagrees");
    }
}

#[test]
fn products_and_sums_of_members_stay_inside() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0dd5);
    let c = CrimpingVector::new(Parity::Even, 3, vec![q(2), qr(1, 2)]).unwrap();
    let trunc = 12;
    let gens = subalgebra_generators(&c, trunc).unwrap();
    for _ in 0..20 {
        let i = rng.gen_range(0..gens.len());
        let j = rng.gen_range(0..gens.len());
        let prod = gens[i].mul(&gens[j]);
        let sum = gens[i].add(&gens[j]);
        assert!(subalgebra_contains(&gens, &prod).unwrap());
        assert!(subalgebra_contains(&gens, &sum).unwrap());
    }
    // The uniformizer itself never lies in the subalgebra of a genuine
    // singularity.
    let s = TruncatedSeries::monomial(trunc, 1, q(1));
    assert!(!subalgebra_contains(&gens, &s).unwrap());
}

#[test]
fn truncation_mismatches_are_rejected() {
    let c = CrimpingVector::new(Parity::Even, 2, vec![q(1)]).unwrap();
    let gens = subalgebra_generators(&c, 9).unwrap();
    assert!(subalgebra_contains(&gens, &TruncatedSeries::zero(8)).is_err());

    let c = CrimpingVector::new(Parity::Odd, 1, vec![]).unwrap();
    let gens = subalgebra_generators_split(&c, 4).unwrap();
    let f = (TruncatedSeries::zero(4), TruncatedSeries::zero(5));
    assert!(subalgebra_contains_split(&gens, &f).is_err());
}

#[test]
fn parity_is_checked_by_both_generator_builders() {
    let even = CrimpingVector::new(Parity::Even, 2, vec![q(1)]).unwrap();
    let odd = CrimpingVector::new(Parity::Odd, 2, vec![q(1)]).unwrap();
    assert!(subalgebra_generators(&odd, 8).is_err());
    assert!(subalgebra_generators_split(&even, 8).is_err());
}
