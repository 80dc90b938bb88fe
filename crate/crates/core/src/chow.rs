//! The Chow ring `A_*(ℙⁿ) = ℤ[H]/(H^{n+1})`.
//!
//! Entries are rational so that series inverses can be formed in
//! intermediate steps; [`ChowClass::integer_coefficients`] checks that a
//! final result is integral.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChowClass {
    n: usize,
    coeffs: Vec<BigRational>,
}

fn q(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

impl ChowClass {
    /// `a_0 + a_1 H + …`, truncated or zero-padded to length `n + 1`.
    pub fn new(n: usize, coeffs: impl IntoIterator<Item = BigRational>) -> Self {
        let mut c: Vec<BigRational> = coeffs.into_iter().take(n + 1).collect();
        c.resize(n + 1, BigRational::zero());
        ChowClass { n, coeffs: c }
    }

    pub fn from_ints(n: usize, coeffs: &[i64]) -> Self {
        Self::new(n, coeffs.iter().map(|&v| q(v)))
    }

    pub fn zero(n: usize) -> Self {
        Self::new(n, [])
    }

    pub fn one(n: usize) -> Self {
        Self::new(n, [BigRational::one()])
    }

    pub fn hyperplane_power(n: usize, k: usize) -> Self {
        let mut c = vec![BigRational::zero(); k + 1];
        c[k] = BigRational::one();
        Self::new(n, c)
    }

    /// `1 + mH`, the total Chern class of `O(m)`.
    pub fn chern_line(n: usize, m: i64) -> Self {
        Self::new(n, [BigRational::one(), q(m)])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coefficient(&self, j: usize) -> &BigRational {
        &self.coeffs[j]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(BigRational::is_integer)
    }

    pub fn integer_coefficients(&self) -> Result<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| if c.is_integer() { Ok(c.to_integer()) } else { Err(Error::NonIntegerClass) })
            .collect()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(self.n, other.n))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self::new(self.n, self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self::new(self.n, self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = vec![BigRational::zero(); self.n + 1];
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in other.coeffs[..=self.n - i].iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Ok(ChowClass { n: self.n, coeffs: out })
    }

    pub fn neg(&self) -> Self {
        Self::new(self.n, self.coeffs.iter().map(|a| -a))
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::new(self.n, self.coeffs.iter().map(|a| a * k))
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(self.n), |acc, _| acc.mul(self).unwrap())
    }

    /// Multiplicative inverse as a truncated power series; requires a unit
    /// constant term (any nonzero rational).
    pub fn inverse(&self) -> Option<Self> {
        let a0 = self.coeffs[0].clone();
        if a0.is_zero() {
            return None;
        }
        let mut b = vec![BigRational::zero(); self.n + 1];
        b[0] = a0.recip();
        for k in 1..=self.n {
            let s: BigRational = (1..=k).map(|i| &self.coeffs[i] * &b[k - i]).sum();
            b[k] = -s / &a0;
        }
        Some(ChowClass { n: self.n, coeffs: b })
    }

    /// `Σ (-1)^j a_j H^j`.
    pub fn dual(&self) -> Self {
        Self::new(self.n, self.coeffs.iter().enumerate().map(|(j, a)| if j % 2 == 1 { -a } else { a.clone() }))
    }

    /// `Σ a_j H^j / (1 + mH)^j`.
    pub fn tensor_line(&self, m: i64) -> Self {
        let inv = Self::chern_line(self.n, m).inverse().unwrap();
        let mut acc = Self::zero(self.n);
        let mut factor = Self::one(self.n);
        for (j, a) in self.coeffs.iter().enumerate() {
            if !a.is_zero() {
                let hj = Self::hyperplane_power(self.n, j);
                acc = acc.add(&hj.mul(&factor).unwrap().scale(a)).unwrap();
            }
            factor = factor.mul(&inv).unwrap();
        }
        acc
    }

    /// `a · (1 + mH)^{-1}`.
    pub fn inv_chern_line(&self, m: i64) -> Self {
        self.mul(&Self::chern_line(self.n, m).inverse().unwrap()).unwrap()
    }

    /// Degree of the zero-dimensional part, the coefficient of `H^n`.
    pub fn integral(&self) -> Result<BigInt> {
        let top = &self.coeffs[self.n];
        if top.is_integer() {
            Ok(top.to_integer())
        } else {
            Err(Error::NonIntegerClass)
        }
    }
}

/// `3*H^2 - 10*H^3`; unit coefficients are omitted and the zero class is `0`.
impl fmt::Display for ChowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            let coeff = if mag.is_integer() { mag.to_integer().to_string() } else { format!("({mag})") };
            match j {
                0 => write!(f, "{coeff}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{coeff}*")?;
                    }
                    if j == 1 {
                        write!(f, "H")?;
                    } else {
                        write!(f, "H^{j}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(n: usize, v: &[i64]) -> ChowClass {
        ChowClass::from_ints(n, v)
    }

    #[test]
    fn arithmetic_examples() {
        let hplus = c(3, &[1, 1]);
        assert_eq!(hplus.pow(4), c(3, &[1, 4, 6, 4]));
        let a = c(3, &[2, -1, 0, 5]);
        assert_eq!(a.mul(&ChowClass::one(3)).unwrap(), a);
        let h = ChowClass::hyperplane_power(3, 1);
        assert!(h.mul(&ChowClass::hyperplane_power(3, 3)).unwrap().is_zero());
        assert_eq!(a.add(&c(2, &[1])), Err(Error::DimensionMismatch(3, 2)));
    }

    #[test]
    fn dual_examples() {
        assert_eq!(c(2, &[1, 2, 1]).dual(), c(2, &[1, -2, 1]));
        let a = c(4, &[3, 1, 4, 1, 5]);
        assert_eq!(a.dual().dual(), a);
        assert_eq!(ChowClass::hyperplane_power(3, 3).dual(), c(3, &[0, 0, 0, -1]));
    }

    #[test]
    fn tensor_line_examples() {
        let a = c(3, &[1, 2, 1, 0]);
        assert_eq!(a.tensor_line(0), a);
        // 2H/(1+2H) = 2H - 4H^2 + 8H^3 and H^2/(1+2H)^2 = H^2 - 4H^3
        assert_eq!(a.tensor_line(2), c(3, &[1, 2, -3, 4]));
        assert_eq!(c(3, &[7]).tensor_line(5), c(3, &[7]));
    }

    #[test]
    fn inv_chern_line_examples() {
        let a = c(3, &[2, 0, 1, 3]);
        assert_eq!(a.inv_chern_line(0), a);
        assert_eq!(ChowClass::one(3).inv_chern_line(1), c(3, &[1, -1, 1, -1]));
        let b = ChowClass::chern_line(3, 4).mul(&a).unwrap();
        assert_eq!(b.inv_chern_line(4), a);
    }

    #[test]
    fn integral_examples() {
        assert_eq!(c(4, &[0, 5, 0, 50, -200]).integral().unwrap(), BigInt::from(-200));
        assert_eq!(ChowClass::one(2).integral().unwrap(), BigInt::zero());
        assert_eq!(ChowClass::hyperplane_power(5, 5).integral().unwrap(), BigInt::one());
        let half = ChowClass::new(1, [q(0), BigRational::new(1.into(), 2.into())]);
        assert_eq!(half.integral(), Err(Error::NonIntegerClass));
        assert_eq!(half.integer_coefficients(), Err(Error::NonIntegerClass));
    }

    #[test]
    fn rendering() {
        assert_eq!(c(3, &[0, 0, 3, -10]).to_string(), "3*H^2 - 10*H^3");
        assert_eq!(c(4, &[0, 5, 0, 50, -200]).to_string(), "5*H + 50*H^3 - 200*H^4");
        assert_eq!(c(3, &[1, -1, 1, -1]).to_string(), "1 - H + H^2 - H^3");
        assert_eq!(ChowClass::zero(3).to_string(), "0");
        assert_eq!(c(2, &[-4, 0, -1]).to_string(), "-4 - H^2");
    }

    fn arb_class(n: usize) -> impl Strategy<Value = ChowClass> {
        proptest::collection::vec(-20i64..20, n + 1).prop_map(move |v| ChowClass::from_ints(n, &v))
    }

    fn untruncated_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    }

    proptest! {
        #[test]
        fn tensor_composition(a in arb_class(5), m1 in -5i64..6, m2 in -5i64..6) {
            prop_assert_eq!(a.tensor_line(m1 + m2), a.tensor_line(m1).tensor_line(m2));
        }

        #[test]
        fn dual_involution(a in arb_class(6)) {
            prop_assert_eq!(a.dual().dual(), a);
        }

        #[test]
        fn ring_laws(a in arb_class(4), b in arb_class(4), d in arb_class(4)) {
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            prop_assert_eq!(a.mul(&b).unwrap().mul(&d).unwrap(), a.mul(&b.mul(&d).unwrap()).unwrap());
            prop_assert_eq!(a.add(&b).unwrap().mul(&d).unwrap(), a.mul(&d).unwrap().add(&b.mul(&d).unwrap()).unwrap());
        }

        #[test]
        fn truncation_is_a_homomorphism(a in proptest::collection::vec(-9i64..10, 1..8), b in proptest::collection::vec(-9i64..10, 1..8), n in 0usize..6) {
            let full = untruncated_mul(&a, &b);
            prop_assert_eq!(ChowClass::from_ints(n, &a).mul(&ChowClass::from_ints(n, &b)).unwrap(), ChowClass::from_ints(n, &full));
        }

        #[test]
        fn inverse_is_inverse(a in arb_class(5), m in -6i64..7) {
            let unit = ChowClass::chern_line(5, m);
            prop_assert_eq!(unit.mul(&a).unwrap().inv_chern_line(m), a.clone());
            if !a.coefficient(0).is_zero() {
                prop_assert_eq!(a.mul(&a.inverse().unwrap()).unwrap(), ChowClass::one(5));
            }
        }
    }
}
