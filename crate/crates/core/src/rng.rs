//! Seeded source of random linear forms for hyperplane slicing.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::FieldSpec;
use crate::poly::{Monomial, Polynomial, Ring};

/// Default bound `B` for coefficients drawn from `[-B, B]` over the rationals.
pub const DEFAULT_COEFFICIENT_BOUND: i64 = 9;

#[derive(Clone, Debug)]
pub struct SliceRng {
    seed: u64,
    bound: i64,
    field: FieldSpec,
    rng: ChaCha8Rng,
}

impl SliceRng {
    pub fn new(seed: u64, field: FieldSpec) -> Self {
        Self::with_bound(seed, field, DEFAULT_COEFFICIENT_BOUND)
    }

    pub fn with_bound(seed: u64, field: FieldSpec, bound: i64) -> Self {
        assert!(bound > 0);
        SliceRng { seed, bound, field, rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// Independent stream keyed by `(seed, key)`, used so that each
    /// inclusion-exclusion term draws the same forms however the terms are
    /// scheduled.
    pub fn derive(seed: u64, key: u64, field: FieldSpec) -> Self {
        Self::new(splitmix64(seed ^ splitmix64(key)), field)
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn bound(&self) -> i64 {
        self.bound
    }

    fn coefficient(&mut self) -> i64 {
        match self.field {
            FieldSpec::Rationals => self.rng.gen_range(-self.bound..=self.bound),
            FieldSpec::PrimeField(p) => self.rng.gen_range(0..p as i64),
        }
    }

    /// A nonzero linear form in the variables `vars` of `ring`.
    pub fn linear_form(&mut self, ring: &Ring, vars: &[usize]) -> Polynomial {
        assert!(!vars.is_empty());
        loop {
            let terms: Vec<_> = vars
                .iter()
                .map(|&i| {
                    let mut e = vec![0; ring.nvars()];
                    e[i] = 1;
                    (Monomial(e), ring.field().from_i64(self.coefficient()))
                })
                .collect();
            let form = Polynomial::from_terms(ring, terms);
            if !form.is_zero() {
                return form;
            }
        }
    }
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}
