//! Seeded pseudo-random inputs for the property suites. Everything funnels
//! through one ChaCha stream per suite so runs are reproducible.

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crimping::{CrimpingVector, Parity, ValuedCrimping, ValuedEntry};
use vgit_core::{Coordinate, WeightSystem};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A small weight system: rank <= 3, at most 8 coordinates, all entries in
/// [-6, 6]. The character is forced nonzero so the chambers are not both
/// empty for a trivial reason most of the time.
pub fn random_system(rng: &mut ChaCha8Rng) -> WeightSystem {
    let rank = rng.gen_range(1..=3usize);
    let n = rng.gen_range(1..=8usize);
    let mut character = vec![0i64; rank];
    while character.iter().all(|&c| c == 0) {
        for c in character.iter_mut() {
            *c = rng.gen_range(-6..=6);
        }
    }
    let coords = (0..n)
        .map(|j| Coordinate {
            label: format!("x{j}"),
            weights: (0..rank).map(|_| rng.gen_range(-6..=6)).collect(),
        })
        .collect();
    WeightSystem::new(rank, character, coords).expect("random system data is well formed")
}

fn random_rational(rng: &mut ChaCha8Rng, nonzero: bool) -> BigRational {
    loop {
        let p = rng.gen_range(-5i64..=5);
        if nonzero && p == 0 {
            continue;
        }
        let q = rng.gen_range(1i64..=5);
        return BigRational::new(p.into(), q.into());
    }
}

/// A valued crimping vector with entries either zero or of valuation in
/// [-12, 12] with a nonzero leading coefficient.
pub fn random_valued(rng: &mut ChaCha8Rng) -> ValuedCrimping {
    let parity = if rng.gen_bool(0.5) {
        Parity::Even
    } else {
        Parity::Odd
    };
    let m = rng.gen_range(1..=4usize);
    let entries = (0..m.saturating_sub(1))
        .map(|_| {
            if rng.gen_bool(0.25) {
                ValuedEntry::Zero
            } else {
                ValuedEntry::Finite {
                    val: rng.gen_range(-12i64..=12),
                    lead: random_rational(rng, true),
                }
            }
        })
        .collect();
    ValuedCrimping::new(parity, m, entries).expect("entry count matches m")
}

/// A plain crimping vector, possibly with zero entries.
pub fn random_vector(rng: &mut ChaCha8Rng) -> CrimpingVector {
    let parity = if rng.gen_bool(0.5) {
        Parity::Even
    } else {
        Parity::Odd
    };
    let m = rng.gen_range(2..=4usize);
    let entries = (0..m - 1)
        .map(|_| {
            if rng.gen_bool(0.25) {
                BigRational::zero()
            } else {
                random_rational(rng, true)
            }
        })
        .collect();
    CrimpingVector::new(parity, m, entries).expect("entry count matches m")
}

/// A nonzero scaling factor for orbit generation.
pub fn random_scale(rng: &mut ChaCha8Rng) -> BigRational {
    let r = random_rational(rng, true);
    if r.is_one() {
        BigRational::new(2.into(), 1.into())
    } else {
        r
    }
}
