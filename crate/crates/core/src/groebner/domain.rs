//! Coefficient domains used inside the Buchberger engine.
//!
//! Over the rationals the engine works fraction-free on primitive integer
//! polynomials; over `GF(p)` it works with monic polynomials.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub(crate) trait Domain: Sync {
    type C: Clone + Debug + Send + Sync + PartialEq;

    fn one(&self) -> Self::C;
    fn is_zero(&self, a: &Self::C) -> bool;
    fn is_one(&self, a: &Self::C) -> bool;
    fn add(&self, a: &Self::C, b: &Self::C) -> Self::C;
    fn mul(&self, a: &Self::C, b: &Self::C) -> Self::C;
    fn neg(&self, a: &Self::C) -> Self::C;

    /// Multipliers `(a, b)` with `a*x == b*y`, used to cancel the coefficient
    /// `x` of a term against a reducer with leading coefficient `y`.
    fn cancel(&self, x: &Self::C, y: &Self::C) -> (Self::C, Self::C);

    /// Whether dividing out a common content is meaningful (over Z).
    const CONTENT: bool;

    /// Positive gcd of the given coefficients (1 when they are all zero).
    fn content<'a>(&self, coeffs: impl Iterator<Item = &'a Self::C>) -> Self::C
    where
        Self::C: 'a;

    fn div_exact(&self, a: &Self::C, g: &Self::C) -> Self::C;

    /// Rescale in place to the canonical associate (primitive with positive
    /// leading coefficient over Z, monic over GF(p)).
    fn normalize(&self, coeffs: &mut [Self::C]);
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Integers;

impl Domain for Integers {
    type C = BigInt;
    const CONTENT: bool = true;

    fn content<'a>(&self, coeffs: impl Iterator<Item = &'a BigInt>) -> BigInt {
        let mut g = BigInt::zero();
        for c in coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        if g.is_zero() {
            BigInt::one()
        } else {
            g
        }
    }

    fn div_exact(&self, a: &BigInt, g: &BigInt) -> BigInt {
        a / g
    }

    fn one(&self) -> BigInt {
        BigInt::one()
    }

    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }

    fn is_one(&self, a: &BigInt) -> bool {
        a.is_one()
    }

    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }

    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }

    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }

    fn cancel(&self, x: &BigInt, y: &BigInt) -> (BigInt, BigInt) {
        let g = x.gcd(y);
        let (mut a, mut b) = (y / &g, x / &g);
        if a.is_negative() {
            a = -a;
            b = -b;
        }
        (a, b)
    }

    fn normalize(&self, coeffs: &mut [BigInt]) {
        let Some(first) = coeffs.first() else { return };
        let mut g = first.abs();
        for c in coeffs.iter().skip(1) {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if first.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for c in coeffs.iter_mut() {
                *c = &*c / &g;
            }
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Modular {
    pub p: u32,
}

impl Modular {
    fn inv(&self, a: u32) -> u32 {
        crate::field::inv_mod(a, self.p)
    }
}

impl Domain for Modular {
    type C = u32;
    const CONTENT: bool = false;

    fn content<'a>(&self, _coeffs: impl Iterator<Item = &'a u32>) -> u32 {
        1
    }

    fn div_exact(&self, a: &u32, g: &u32) -> u32 {
        self.mul(a, &self.inv(*g))
    }

    fn one(&self) -> u32 {
        1
    }

    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }

    fn is_one(&self, a: &u32) -> bool {
        *a == 1
    }

    fn add(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 + *b as u64) % self.p as u64) as u32
    }

    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }

    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn cancel(&self, x: &u32, y: &u32) -> (u32, u32) {
        (1, self.mul(x, &self.inv(*y)))
    }

    fn normalize(&self, coeffs: &mut [u32]) {
        let Some(&first) = coeffs.first() else { return };
        if first != 1 {
            let inv = self.inv(first);
            for c in coeffs.iter_mut() {
                *c = self.mul(c, &inv);
            }
        }
    }
}
