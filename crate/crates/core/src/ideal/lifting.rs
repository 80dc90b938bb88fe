//! Graph ideals over ℚ computed modulo word-sized primes and lifted back.
//!
//! A lifted candidate `G ⊂ ℚ[t, z]` is accepted only if
//! * every `g ∈ G` vanishes after substituting `t_i ↦ f_i`, so `(G) ⊆ Γ`,
//! * `G` passes the S-pair certificate over ℚ, and
//! * its leading monomials equal those of the reduced basis of `Γ_p`.
//!
//! The kernel of a map defined over `ℤ_(p)` reduces into the kernel of the
//! reduced map without losing rank, so `dim Γ_d ≤ dim (Γ_p)_d` in every degree.
//! Together with the three checks this squeezes `dim (G)_d = dim Γ_d` for all
//! `d`, hence `(G) = Γ` exactly.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{graph_ideal_direct, Context, GraphIdeal, Ideal};
use crate::error::Result;
use crate::field::{is_prime, FieldElement, FieldSpec};
use crate::groebner::GroebnerBasis;
use crate::hilbert::{dimension_from_leading, Dimension};
use crate::order::MonomialOrder;
use crate::poly::{Monomial, Polynomial, PolynomialRing, Ring};

/// Primes tried before giving up and computing over ℚ directly.
const PRIME_LIMIT: usize = 24;

/// Residues of one basis element, keyed by monomial.
type Residues = BTreeMap<Monomial, BigInt>;

pub(super) fn graph_ideal_lifted(ctx: &Context, f: &[Polynomial], base: &Ring, tz: &Ring) -> Result<Option<(GraphIdeal, Dimension)>> {
    let mut primes = Primes::new();
    let mut leads: Option<BTreeSet<Monomial>> = None;
    let mut acc: BTreeMap<Monomial, Residues> = BTreeMap::new();
    let mut modulus = BigInt::one();
    let mut previous: Option<Vec<Polynomial>> = None;
    let mut used = 0;
    while used < PRIME_LIMIT {
        let Some((p, fp)) = primes.next_good(f, base) else { return Ok(None) };
        used += 1;
        let (gp, _) = graph_ideal_direct(&Context::new(false), &fp)?;
        let order = MonomialOrder::Grevlex;
        let mut elements: BTreeMap<Monomial, Residues> = BTreeMap::new();
        for g in gp.ideal.generators() {
            let lm = g.leading_monomial(&order)?;
            let res = g.terms().iter().map(|(m, c)| (m.clone(), BigInt::from(modular_value(c)))).collect();
            elements.insert(lm, res);
        }
        let these: BTreeSet<Monomial> = elements.keys().cloned().collect();
        if leads.as_ref() != Some(&these) {
            if leads.is_some() {
                log::debug!("leading monomials changed at prime {p}; restarting the lift");
            }
            leads = Some(these);
            acc = elements;
            modulus = BigInt::from(p);
            previous = None;
            continue;
        }
        let pb = BigInt::from(p);
        for (lm, res) in &mut acc {
            combine(res, &elements[lm], &modulus, &pb);
        }
        modulus *= &pb;
        let Some(candidate) = reconstruct(tz, &acc, &modulus) else { continue };
        if previous.as_ref() != Some(&candidate) {
            previous = Some(candidate);
            continue;
        }
        if !vanishes_on_map(&candidate, f, base) {
            previous = Some(candidate);
            continue;
        }
        let basis = GroebnerBasis::from_reduced(tz, MonomialOrder::Grevlex, candidate.clone());
        ctx.note_basis();
        if basis.certify(&candidate).is_err() {
            previous = Some(candidate);
            continue;
        }
        let dim = dimension_from_leading(&basis.leading_monomials(), tz.nvars());
        let n1 = f.len();
        return Ok(Some((GraphIdeal { ideal: Ideal::try_new(tz, candidate)?, targets: n1, base: base.clone() }, dim)));
    }
    Ok(None)
}

fn modular_value(c: &FieldElement) -> u32 {
    match c {
        FieldElement::Modular { value, .. } => *value,
        FieldElement::Rational(_) => unreachable!("prime field basis"),
    }
}

/// Descending primes below `2^31` at which every coefficient of the map is a
/// nonzero unit.
struct Primes {
    next: u64,
}

impl Primes {
    fn new() -> Self {
        Primes { next: (1 << 31) - 1 }
    }

    fn next_good(&mut self, f: &[Polynomial], base: &Ring) -> Option<(u32, Vec<Polynomial>)> {
        while self.next > 1 << 30 {
            let p = self.next;
            self.next -= 1;
            if !is_prime(p) {
                continue;
            }
            let field = FieldSpec::PrimeField(p as u32);
            if let Some(fp) = reduce_map(f, base, field) {
                return Some((p as u32, fp));
            }
        }
        None
    }
}

fn reduce_map(f: &[Polynomial], base: &Ring, field: FieldSpec) -> Option<Vec<Polynomial>> {
    let ring = PolynomialRing::new(base.variables().iter().cloned(), field).ok()?;
    f.iter()
        .map(|fi| {
            let mut terms = Vec::with_capacity(fi.terms().len());
            for (m, c) in fi.terms() {
                let FieldElement::Rational(q) = c else { return None };
                let r = field.from_rational(q)?;
                if r.is_zero() {
                    return None;
                }
                terms.push((m.clone(), r));
            }
            Some(Polynomial::from_terms(&ring, terms))
        })
        .collect()
}

/// Chinese remaindering of `acc (mod m)` with `next (mod p)`, in place.
fn combine(acc: &mut Residues, next: &Residues, m: &BigInt, p: &BigInt) {
    let inv = mod_inverse(&m.mod_floor(p), p).expect("distinct primes");
    let zero = BigInt::zero();
    let keys: BTreeSet<Monomial> = acc.keys().chain(next.keys()).cloned().collect();
    for k in keys {
        let a = acc.get(&k).unwrap_or(&zero).clone();
        let b = next.get(&k).unwrap_or(&zero);
        let t = ((b - &a) * &inv).mod_floor(p);
        acc.insert(k, a + m * t);
    }
}

fn mod_inverse(a: &BigInt, p: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(p);
    e.gcd.is_one().then(|| e.x.mod_floor(p))
}

/// `r / s ≡ a (mod m)` with `|r|, |s| ≤ sqrt(m / 2)`, if one exists.
pub(crate) fn rational_reconstruction(a: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m / 2u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let s2 = &s0 - &q * &s1;
        r0 = std::mem::replace(&mut r1, r2);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if s1.is_zero() || s1.abs() > bound || !r1.gcd(&s1).is_one() {
        return None;
    }
    Some(BigRational::new(r1, s1))
}

fn reconstruct(tz: &Ring, acc: &BTreeMap<Monomial, Residues>, m: &BigInt) -> Option<Vec<Polynomial>> {
    acc.values()
        .map(|res| {
            let mut terms = Vec::with_capacity(res.len());
            for (mono, a) in res {
                if a.is_zero() {
                    continue;
                }
                terms.push((mono.clone(), FieldElement::Rational(rational_reconstruction(a, m)?)));
            }
            Some(Polynomial::from_terms(tz, terms))
        })
        .collect()
}

/// Whether every `g(t, z)` becomes zero under `t_i ↦ f_i(z)`.
fn vanishes_on_map(gs: &[Polynomial], f: &[Polynomial], base: &Ring) -> bool {
    let n1 = f.len();
    let nz = base.nvars();
    let mut products: HashMap<Vec<u32>, Polynomial> = HashMap::new();
    products.insert(vec![0; n1], Polynomial::one(base));
    gs.iter().all(|g| {
        let mut sum = Polynomial::zero(base);
        for (m, c) in g.terms() {
            let t = m.0[..n1].to_vec();
            let image = product_of_powers(&mut products, &t, f);
            let mut z = vec![0; nz];
            z.copy_from_slice(&m.0[n1..]);
            let term = Polynomial::from_terms(base, [(Monomial(z), c.clone())]);
            sum = &sum + &(&term * &image);
        }
        sum.is_zero()
    })
}

fn product_of_powers(cache: &mut HashMap<Vec<u32>, Polynomial>, t: &[u32], f: &[Polynomial]) -> Polynomial {
    if let Some(p) = cache.get(t) {
        return p.clone();
    }
    let i = t.iter().position(|&e| e > 0).expect("constant exponent is cached");
    let mut smaller = t.to_vec();
    smaller[i] -= 1;
    let p = &product_of_powers(cache, &smaller, f) * &f[i];
    cache.insert(t.to_vec(), p.clone());
    p
}
