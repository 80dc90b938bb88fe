//! Gröbner bases: Buchberger's algorithm, normal forms, S-polynomials and
//! leading-term ideals.
//!
//! Public polynomials are converted into a flat engine representation for
//! the computation. Over the rationals the engine runs fraction-free on
//! primitive integer polynomials; the reduced basis is returned monic.

mod domain;
mod engine;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::order::MonomialOrder;
use crate::poly::{same_ring, Monomial, Polynomial, Ring};
use domain::{Domain, Integers, Modular};
use engine::{Ctx, Exp, Poly};

/// Reduced Gröbner basis of an ideal for a fixed monomial order. Elements are
/// monic and sorted by increasing leading monomial.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Ring,
    order: MonomialOrder,
    elements: Vec<Polynomial>,
}

impl GroebnerBasis {
    /// Wrap elements already known to form a reduced basis for `order`.
    pub(crate) fn from_reduced(ring: &Ring, order: MonomialOrder, mut elements: Vec<Polynomial>) -> Self {
        elements.sort_by(|a, b| {
            let (ma, mb) = (a.leading_monomial(&order).unwrap(), b.leading_monomial(&order).unwrap());
            order.cmp(&ma.0, &mb.0)
        });
        GroebnerBasis { ring: ring.clone(), order, elements }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn into_elements(self) -> Vec<Polynomial> {
        self.elements
    }

    pub fn is_unit(&self) -> bool {
        self.elements.iter().any(Polynomial::is_unit)
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements
            .iter()
            .map(|p| p.leading_monomial(&self.order).expect("nonzero basis element"))
            .collect()
    }

    /// Minimal monomial generators of the initial ideal. For a reduced basis
    /// these are exactly the leading monomials.
    pub fn leading_term_ideal(&self) -> Vec<Monomial> {
        self.leading_monomials()
    }

    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial> {
        normal_form(p, &self.elements, &self.order)
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(p)?.is_zero())
    }

    /// Verify the Buchberger criterion and that each of `gens` reduces to zero.
    pub fn certify(&self, gens: &[Polynomial]) -> Result<()> {
        let weights = vec![1; self.ring.nvars()];
        let msg = match self.ring.field() {
            FieldSpec::Rationals => {
                let ctx = Ctx { dom: &Integers, nv: self.ring.nvars(), order: &self.order, weights: &weights };
                let gb = self.elements.iter().map(|p| to_int(&ctx, p).0).collect::<Vec<_>>();
                let gs = gens.iter().map(|p| to_int(&ctx, p).0).collect::<Vec<_>>();
                engine::certify(&ctx, &gb, &gs)
            }
            FieldSpec::PrimeField(p) => {
                let dom = Modular { p };
                let ctx = Ctx { dom: &dom, nv: self.ring.nvars(), order: &self.order, weights: &weights };
                let gb = self.elements.iter().map(|q| to_mod(&ctx, q)).collect::<Vec<_>>();
                let gs = gens.iter().map(|q| to_mod(&ctx, q)).collect::<Vec<_>>();
                engine::certify(&ctx, &gb, &gs)
            }
        };
        msg.map_err(Error::CertificateFailure)
    }
}

impl PartialEq for GroebnerBasis {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.order == other.order && self.elements == other.elements
    }
}

fn exps_of(m: &Monomial) -> Vec<Exp> {
    m.0.iter()
        .map(|&e| Exp::try_from(e).expect("exponent exceeds engine range"))
        .collect()
}

fn check_rings(ring: &Ring, gens: &[Polynomial]) -> Result<()> {
    if gens.iter().all(|g| same_ring(g.ring(), ring)) {
        Ok(())
    } else {
        Err(Error::RingMismatch)
    }
}

/// Integer multiple of `p` with coprime entries, plus the scale `D` with
/// `result = D * p`.
fn to_int(ctx: &Ctx<'_, Integers>, p: &Polynomial) -> (Poly<BigInt>, BigRational) {
    let mut den = BigInt::one();
    for (_, c) in p.terms() {
        if let FieldElement::Rational(q) = c {
            den = den.lcm(q.denom());
        }
    }
    let terms = p
        .terms()
        .iter()
        .map(|(m, c)| match c {
            FieldElement::Rational(q) => (exps_of(m), q.numer() * (&den / q.denom())),
            _ => unreachable!("rational ring"),
        })
        .collect();
    (ctx.from_terms(terms), BigRational::from_integer(den))
}

fn to_mod(ctx: &Ctx<'_, Modular>, p: &Polynomial) -> Poly<u32> {
    let terms = p
        .terms()
        .iter()
        .map(|(m, c)| match c {
            FieldElement::Modular { value, .. } => (exps_of(m), *value),
            _ => unreachable!("prime field ring"),
        })
        .collect();
    ctx.from_terms(terms)
}

fn from_engine<C>(ring: &Ring, nv: usize, p: &Poly<C>, coeff: impl Fn(&C) -> FieldElement) -> Polynomial {
    let terms = (0..p.len())
        .map(|k| {
            let m = Monomial(p.mono(nv, k).iter().map(|&e| e as u32).collect());
            (m, coeff(&p.coeffs[k]))
        })
        .collect::<Vec<_>>();
    Polynomial::from_terms(ring, terms)
}

fn rational_from_int(p: &Poly<BigInt>, ring: &Ring, nv: usize, scale: &BigRational) -> Polynomial {
    from_engine(ring, nv, p, |c| FieldElement::Rational(BigRational::from_integer(c.clone()) / scale))
}

fn monic_rational(p: &Poly<BigInt>, ring: &Ring, nv: usize) -> Polynomial {
    let lc = BigRational::from_integer(p.coeffs[0].clone());
    rational_from_int(p, ring, nv, &lc)
}

/// Reduced Gröbner basis of the ideal generated by `gens` in `ring`.
pub fn buchberger(ring: &Ring, gens: &[Polynomial], order: &MonomialOrder) -> Result<GroebnerBasis> {
    groebner_weighted(ring, gens, order, &vec![1; ring.nvars()])
}

/// As [`buchberger`], with per-variable weights used for sugar degrees
/// (pair selection only; the result does not depend on them).
pub fn groebner_weighted(ring: &Ring, gens: &[Polynomial], order: &MonomialOrder, weights: &[u32]) -> Result<GroebnerBasis> {
    check_rings(ring, gens)?;
    assert_eq!(weights.len(), ring.nvars());
    let nv = ring.nvars();
    let elements = match ring.field() {
        FieldSpec::Rationals => {
            let ctx = Ctx { dom: &Integers, nv, order, weights };
            let input = gens.iter().filter(|g| !g.is_zero()).map(|g| {
                let (mut p, _) = to_int(&ctx, g);
                Integers.normalize(&mut p.coeffs);
                p
            });
            let gb = engine::buchberger(&ctx, input.collect());
            gb.iter().map(|p| monic_rational(p, ring, nv)).collect()
        }
        FieldSpec::PrimeField(p) => {
            let dom = Modular { p };
            let ctx = Ctx { dom: &dom, nv, order, weights };
            let input = gens.iter().filter(|g| !g.is_zero()).map(|g| {
                let mut q = to_mod(&ctx, g);
                dom.normalize(&mut q.coeffs);
                q
            });
            let gb = engine::buchberger(&ctx, input.collect());
            gb.iter()
                .map(|q| from_engine(ring, nv, q, |&c| FieldElement::Modular { value: c, modulus: p }))
                .collect()
        }
    };
    Ok(GroebnerBasis { ring: ring.clone(), order: order.clone(), elements })
}

/// Remainder of `p` on division by `basis`: no term of the result is
/// divisible by a leading monomial of `basis`, and `p - r` lies in the ideal.
pub fn normal_form(p: &Polynomial, basis: &[Polynomial], order: &MonomialOrder) -> Result<Polynomial> {
    let ring = p.ring();
    check_rings(ring, basis)?;
    if p.is_zero() {
        return Ok(p.clone());
    }
    let nv = ring.nvars();
    let weights = vec![1; nv];
    Ok(match ring.field() {
        FieldSpec::Rationals => {
            let ctx = Ctx { dom: &Integers, nv, order, weights: &weights };
            let bs: Vec<Poly<BigInt>> = basis.iter().map(|b| to_int(&ctx, b).0).collect();
            let reds = engine::reducers(nv, bs.iter());
            let (pi, scale) = to_int(&ctx, p);
            let (r, mult, _) = ctx.reduce(pi, 0, &reds, 0, true, true);
            rational_from_int(&r, ring, nv, &(scale * BigRational::from_integer(mult)))
        }
        FieldSpec::PrimeField(q) => {
            let dom = Modular { p: q };
            let ctx = Ctx { dom: &dom, nv, order, weights: &weights };
            let bs: Vec<Poly<u32>> = basis.iter().map(|b| to_mod(&ctx, b)).collect();
            let reds = engine::reducers(nv, bs.iter());
            let (r, mult, _) = ctx.reduce(to_mod(&ctx, p), 0, &reds, 0, true, true);
            let inv = crate::field::inv_mod(mult, q);
            from_engine(ring, nv, &r, |&c| FieldElement::Modular { value: dom.mul(&c, &inv), modulus: q })
        }
    })
}

/// `(l / lt f) f - (l / lt g) g` with `l = lcm(lm f, lm g)`.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial, order: &MonomialOrder) -> Result<Polynomial> {
    if !same_ring(f.ring(), g.ring()) {
        return Err(Error::RingMismatch);
    }
    let (mf, cf) = f.leading_term(order)?;
    let (mg, cg) = g.leading_term(order)?;
    let l = mf.lcm(&mg);
    let a = f.mul_monomial(&l.div(&mf).unwrap()).scale(&cf.inv().unwrap());
    let b = g.mul_monomial(&l.div(&mg).unwrap()).scale(&cg.inv().unwrap());
    a.checked_sub(&b)
}
