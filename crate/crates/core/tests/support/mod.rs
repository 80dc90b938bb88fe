//! Independent linear-algebra oracles over GF(p) for homogeneous ideals.
//!
//! For a homogeneous ideal `I` the degree-`d` piece `I_d` is spanned by the
//! products `m*g` with `g` a generator and `m` a monomial of complementary
//! degree. Everything here works on those graded pieces by Gaussian
//! elimination, never touching a Gröbner basis.

#![allow(dead_code)]

use std::collections::HashMap;

use ccs_core::ideal::monomials_of_degree;
use ccs_core::{FieldElement, Ideal, Monomial, Polynomial};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn modulus(p: &Polynomial) -> u64 {
    p.ring().field().characteristic() as u64
}

fn value(c: &FieldElement) -> u64 {
    match c {
        FieldElement::Modular { value, .. } => *value as u64,
        FieldElement::Rational(_) => panic!("oracles run over prime fields"),
    }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Row-echelon accumulator over GF(p), indexed by monomial position.
pub struct Span {
    p: u64,
    pivots: HashMap<usize, Vec<u64>>,
}

impl Span {
    pub fn new(p: u64) -> Self {
        Span { p, pivots: HashMap::new() }
    }

    /// Inserts a row, returning whether it enlarged the span.
    pub fn insert(&mut self, mut row: Vec<u64>) -> bool {
        let p = self.p;
        for i in 0..row.len() {
            if row[i] == 0 {
                continue;
            }
            if let Some(piv) = self.pivots.get(&i) {
                let f = row[i];
                for (r, q) in row.iter_mut().zip(piv) {
                    *r = (*r + p - f * q % p) % p;
                }
            } else {
                let inv = pow_mod(row[i], p - 2, p);
                for r in row.iter_mut() {
                    *r = *r * inv % p;
                }
                self.pivots.insert(i, row);
                return true;
            }
        }
        false
    }

    pub fn contains(&self, row: &[u64]) -> bool {
        let mut probe = Span { p: self.p, pivots: self.pivots.clone() };
        !probe.insert(row.to_vec())
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Coordinates of homogeneous polynomials of one degree.
pub struct Graded {
    pub degree: u32,
    index: HashMap<Vec<u32>, usize>,
    pub monomials: Vec<Monomial>,
}

impl Graded {
    pub fn new(nvars: usize, degree: u32) -> Self {
        let monomials = monomials_of_degree(nvars, degree);
        let index = monomials.iter().enumerate().map(|(i, m)| (m.exponents().to_vec(), i)).collect();
        Graded { degree, index, monomials }
    }

    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn vector(&self, f: &Polynomial) -> Vec<u64> {
        let mut v = vec![0; self.dim()];
        for (m, c) in f.terms() {
            v[self.index[m.exponents()]] = value(c);
        }
        v
    }
}

/// `deg(f)` of a nonzero homogeneous polynomial.
fn deg(f: &Polynomial) -> u32 {
    f.total_degree().expect("nonzero generator")
}

/// Spanning set of `I_d`.
pub fn piece(ideal: &Ideal, d: u32) -> Vec<Polynomial> {
    let nv = ideal.ring().nvars();
    let mut out = Vec::new();
    for g in ideal.generators().iter().filter(|g| !g.is_zero()) {
        if deg(g) <= d {
            for m in monomials_of_degree(nv, d - deg(g)) {
                out.push(g.mul_monomial(&m));
            }
        }
    }
    out
}

pub fn span_of(polys: &[Polynomial], grade: &Graded, p: u64) -> Span {
    let mut s = Span::new(p);
    for f in polys {
        s.insert(grade.vector(f));
    }
    s
}

/// `dim_k I_d`.
pub fn piece_dim(ideal: &Ideal, d: u32) -> usize {
    let grade = Graded::new(ideal.ring().nvars(), d);
    let p = ideal.ring().field().characteristic() as u64;
    span_of(&piece(ideal, d), &grade, p).rank()
}

/// Whether homogeneous `f` lies in `I`, decided in degree `deg f`.
pub fn member(ideal: &Ideal, f: &Polynomial) -> bool {
    if f.is_zero() {
        return true;
    }
    let d = deg(f);
    let grade = Graded::new(ideal.ring().nvars(), d);
    span_of(&piece(ideal, d), &grade, modulus(f)).contains(&grade.vector(f))
}

/// `dim_k (I_d ∩ J_d)`.
pub fn intersection_dim(a: &Ideal, b: &Ideal, d: u32) -> usize {
    let grade = Graded::new(a.ring().nvars(), d);
    let p = a.ring().field().characteristic() as u64;
    let ra = span_of(&piece(a, d), &grade, p).rank();
    let rb = span_of(&piece(b, d), &grade, p).rank();
    let mut both = piece(a, d);
    both.extend(piece(b, d));
    ra + rb - span_of(&both, &grade, p).rank()
}

/// `dim_k {f ∈ R_d : f*h ∈ I for every h in hs}`, all `hs` homogeneous.
pub fn colon_dim(ideal: &Ideal, hs: &[Polynomial], d: u32) -> usize {
    let nv = ideal.ring().nvars();
    let p = ideal.ring().field().characteristic() as u64;
    let source = Graded::new(nv, d);
    // Stack the maps R_d -> R_{d+e_h} / I_{d+e_h} and count the kernel.
    let targets: Vec<(Graded, Span)> = hs
        .iter()
        .map(|h| {
            let g = Graded::new(nv, d + deg(h));
            let s = span_of(&piece(ideal, d + deg(h)), &g, p);
            (g, s)
        })
        .collect();
    let reduce = |span: &Span, mut row: Vec<u64>| -> Vec<u64> {
        for i in 0..row.len() {
            if row[i] != 0 {
                if let Some(piv) = span.pivots.get(&i) {
                    let f = row[i];
                    for (r, q) in row.iter_mut().zip(piv) {
                        *r = (*r + p - f * q % p) % p;
                    }
                }
            }
        }
        row
    };
    let mut image = Span::new(p);
    for m in &source.monomials {
        let mono = Polynomial::from_terms(ideal.ring(), [(m.clone(), ideal.ring().field().one())]);
        let mut row = Vec::new();
        for (h, (g, s)) in hs.iter().zip(&targets) {
            row.extend(reduce(s, g.vector(&mono.checked_mul(h).unwrap())));
        }
        image.insert(row);
    }
    source.dim() - image.rank()
}

/// Generators of `J^k`.
pub fn power_generators(j: &Ideal, k: u32) -> Vec<Polynomial> {
    let mut acc = vec![Polynomial::one(j.ring())];
    for _ in 0..k {
        let mut next = Vec::new();
        for a in &acc {
            for g in j.generators() {
                next.push(a.checked_mul(g).unwrap());
            }
        }
        acc = next;
    }
    acc
}

/// Points of `V(I)` in `GF(p)^n`, by exhaustive search.
pub fn affine_points(ideal: &Ideal) -> Vec<Vec<u32>> {
    let nv = ideal.ring().nvars();
    let p = ideal.ring().field().characteristic();
    let total = (p as u64).pow(nv as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut pt = Vec::with_capacity(nv);
        let mut c = code;
        for _ in 0..nv {
            pt.push((c % p as u64) as u32);
            c /= p as u64;
        }
        if ideal.generators().iter().all(|g| evaluate(g, &pt) == 0) {
            out.push(pt);
        }
    }
    out
}

pub fn evaluate(f: &Polynomial, pt: &[u32]) -> u64 {
    let p = modulus(f);
    f.terms().iter().fold(0, |acc, (m, c)| {
        let t = m.exponents().iter().zip(pt).fold(value(c), |t, (&e, &x)| t * pow_mod(x as u64, e as u64, p) % p);
        (acc + t) % p
    })
}

/// A random homogeneous polynomial of degree `d` with about `terms` terms.
pub fn random_form(ideal_ring: &ccs_core::Ring, d: u32, terms: usize, rng: &mut ChaCha8Rng) -> Polynomial {
    let monos = monomials_of_degree(ideal_ring.nvars(), d);
    let field = ideal_ring.field();
    let picks = (0..terms).map(|_| {
        let m = monos[rng.gen_range(0..monos.len())].clone();
        (m, field.from_i64(rng.gen_range(1..i64::from(field.characteristic()))))
    });
    Polynomial::from_terms(ideal_ring, picks)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Number of degree-`d` monomials outside the monomial ideal `(lts)`.
pub fn standard_monomials(lts: &[Monomial], nvars: usize, d: u32) -> usize {
    monomials_of_degree(nvars, d).iter().filter(|m| !lts.iter().any(|l| l.divides(m))).count()
}

/// Coefficient of `t^d` in `numerator / (1-t)^arity`.
pub fn series_coefficient(numerator: &[i64], arity: usize, d: usize) -> i64 {
    let binom = |n: i64, k: i64| -> i64 {
        if k < 0 || n < k {
            return 0;
        }
        (0..k).fold(1i64, |acc, i| acc * (n - i) / (i + 1))
    };
    numerator
        .iter()
        .enumerate()
        .filter(|(i, _)| *i <= d)
        .map(|(i, c)| {
            let k = (d - i) as i64;
            if arity == 0 {
                if k == 0 { *c } else { 0 }
            } else {
                c * binom(k + arity as i64 - 1, arity as i64 - 1)
            }
        })
        .sum()
}

pub mod checks {
    //! Each check draws a small random homogeneous instance from `seed` over
    //! GF(31) and compares the library against the graded oracles above.

    use super::*;
    use ccs_core::hilbert::hilbert_numerator;
    use ccs_core::ideal::{eliminate, intersect, quotient, quotient_ideal, saturate};
    use ccs_core::{FieldSpec, MonomialOrder, PolynomialRing, Ring};

    const DEGREES: u32 = 5;

    fn ring(vars: &[&str]) -> Ring {
        PolynomialRing::new(vars.iter().copied(), FieldSpec::prime_field(31).unwrap()).unwrap()
    }

    fn random_ideal(r: &Ring, count: usize, rng: &mut ChaCha8Rng) -> Ideal {
        let gens = (0..count).map(|_| random_form(r, rng.gen_range(1..=2), rng.gen_range(1..=3), rng)).filter(|g| !g.is_zero()).collect();
        Ideal::new(r, gens)
    }

    fn compare(what: &str, d: u32, lib: usize, oracle: usize) -> Result<(), String> {
        if lib == oracle {
            Ok(())
        } else {
            Err(format!("{what}: degree {d} piece has dimension {lib}, oracle says {oracle}"))
        }
    }

    pub fn intersection(seed: u64) -> Result<(), String> {
        let mut g = rng(seed);
        let r = ring(&["x", "y", "z"]);
        let (a, b) = (random_ideal(&r, 2, &mut g), random_ideal(&r, 2, &mut g));
        let meet = intersect(&a, &b).map_err(|e| e.to_string())?;
        for d in 0..=DEGREES {
            compare("intersection", d, piece_dim(&meet, d), intersection_dim(&a, &b, d))?;
        }
        Ok(())
    }

    pub fn quotients(seed: u64) -> Result<(), String> {
        let mut g = rng(seed);
        let r = ring(&["x", "y", "z"]);
        let i = random_ideal(&r, 3, &mut g);
        let h = random_form(&r, g.gen_range(1..=2), 2, &mut g);
        if h.is_zero() {
            return Ok(());
        }
        let by_form = quotient(&i, &h).map_err(|e| e.to_string())?;
        let j = random_ideal(&r, 2, &mut g);
        let by_ideal = quotient_ideal(&i, &j).map_err(|e| e.to_string())?;
        for d in 0..=DEGREES {
            compare("quotient by a form", d, piece_dim(&by_form, d), colon_dim(&i, std::slice::from_ref(&h), d))?;
            compare("quotient by an ideal", d, piece_dim(&by_ideal, d), colon_dim(&i, j.generators(), d))?;
        }
        Ok(())
    }

    /// `I : J^∞` agrees with `I : J^k` for every `k` past the stabilization
    /// point; the oracle takes `k` well beyond it for these small degrees.
    pub fn saturation(seed: u64) -> Result<(), String> {
        let mut g = rng(seed);
        let r = ring(&["x", "y", "z"]);
        let i = random_ideal(&r, 2, &mut g).product(&Ideal::new(&r, vec![Polynomial::var(&r, "x").unwrap(), Polynomial::var(&r, "y").unwrap()])).map_err(|e| e.to_string())?;
        let j = Ideal::new(&r, vec![Polynomial::var(&r, "x").unwrap(), Polynomial::var(&r, "y").unwrap()]);
        let sat = saturate(&i, &j).map_err(|e| e.to_string())?;
        let deep = power_generators(&j, 6);
        for d in 0..=3 {
            compare("saturation", d, piece_dim(&sat, d), colon_dim(&i, &deep, d))?;
        }
        Ok(())
    }

    /// Eliminating `t` from a homogeneous ideal: the degree-`d` piece of the
    /// result is `I_d ∩ k[x, y, z]_d`, and each generator vanishes on the
    /// projection of every affine solution.
    pub fn elimination(seed: u64) -> Result<(), String> {
        let mut g = rng(seed);
        let r = ring(&["t", "x", "y", "z"]);
        let i = random_ideal(&r, 2, &mut g);
        let e = eliminate(&i, &["t"]).map_err(|e| e.to_string())?;
        for d in 0..=4 {
            let grade = Graded::new(4, d);
            let p = 31;
            let full = span_of(&piece(&i, d), &grade, p);
            let mut free = Span::new(p);
            let mut joint = Span { p, pivots: full.pivots.clone() };
            for m in &grade.monomials {
                if m.exponents()[0] == 0 {
                    let v = grade.vector(&Polynomial::from_terms(&r, [(m.clone(), r.field().one())]));
                    free.insert(v.clone());
                    joint.insert(v);
                }
            }
            let meet = full.rank() + free.rank() - joint.rank();
            compare("elimination", d, piece_dim(&e, d), meet)?;
        }
        for pt in affine_points(&i) {
            for gen in e.generators() {
                if evaluate(gen, &pt[1..]) != 0 {
                    return Err(format!("eliminant {gen} does not vanish at the projection of {pt:?}"));
                }
            }
        }
        Ok(())
    }

    /// Hilbert numerator of a random monomial ideal against direct counting.
    pub fn hilbert(seed: u64) -> Result<(), String> {
        let mut g = rng(seed);
        let nv = g.gen_range(1..=4);
        let lts: Vec<Monomial> = (0..g.gen_range(0..=4))
            .map(|_| Monomial((0..nv).map(|_| g.gen_range(0..=3)).collect()))
            .filter(|m: &Monomial| m.degree() > 0)
            .collect();
        let series = hilbert_numerator(&lts, nv);
        for d in 0..=10u32 {
            let counted = standard_monomials(&lts, nv, d) as i64;
            let predicted = series_coefficient(series.numerator(), series.arity(), d as usize);
            if counted != predicted {
                return Err(format!("monomials {lts:?}: H({d}) counted {counted}, series gives {predicted}"));
            }
        }
        Ok(())
    }

    /// Membership by the library agrees with graded linear algebra.
    pub fn membership(seed: u64) -> Result<(), String> {
        let mut g = rng(seed);
        let r = ring(&["x", "y", "z"]);
        let i = random_ideal(&r, 3, &mut g);
        let gb = i.groebner(&MonomialOrder::Grevlex).map_err(|e| e.to_string())?;
        for _ in 0..6 {
            let f = random_form(&r, g.gen_range(1..=4), 3, &mut g);
            let lib = gb.contains(&f).map_err(|e| e.to_string())?;
            if lib != member(&i, &f) {
                return Err(format!("membership of {f} disagrees"));
            }
        }
        Ok(())
    }
}
