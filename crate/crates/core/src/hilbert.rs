//! Hilbert series numerators of monomial ideals, and the dimension and
//! degree of the schemes they describe.

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::order::MonomialOrder;
use crate::poly::Monomial;

/// `N(T) / (1 - T)^arity`, the Hilbert series of `k[x_1..x_arity] / I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertSeries {
    numerator: Vec<i64>,
    arity: usize,
}

/// Krull dimension with a bottom element for the zero ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dimension {
    /// Dimension of the zero ring (unit ideal).
    NegInfinity,
    Finite(usize),
}

impl Dimension {
    /// One less, saturating at the bottom element.
    pub fn pred(self) -> Dimension {
        match self {
            Dimension::Finite(d) if d > 0 => Dimension::Finite(d - 1),
            _ => Dimension::NegInfinity,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SchemeMetrics {
    /// `-1` for the empty scheme.
    pub projective_dimension: i64,
    pub degree: u64,
}

impl SchemeMetrics {
    pub fn is_empty(&self) -> bool {
        self.projective_dimension < 0
    }
}

impl HilbertSeries {
    pub fn numerator(&self) -> &[i64] {
        &self.numerator
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// `(Q, k)` with `N(T) = (1 - T)^k Q(T)` and `Q(1) != 0`; `None` when `N = 0`.
    pub fn reduced(&self) -> Option<(Vec<i64>, usize)> {
        if self.numerator.iter().all(|&c| c == 0) {
            return None;
        }
        let mut q = self.numerator.clone();
        let mut k = 0;
        while q.iter().sum::<i64>() == 0 {
            q = divide_by_one_minus_t(&q);
            k += 1;
        }
        Some((q, k))
    }

    /// Order of the pole at `T = 1`, i.e. the Krull dimension of the quotient.
    pub fn krull_dimension(&self) -> Dimension {
        match self.reduced() {
            None => Dimension::NegInfinity,
            Some((_, k)) => Dimension::Finite(self.arity - k),
        }
    }

    pub fn metrics(&self) -> SchemeMetrics {
        match self.reduced() {
            Some((q, k)) if self.arity > k => SchemeMetrics {
                projective_dimension: (self.arity - k) as i64 - 1,
                degree: q.iter().sum::<i64>() as u64,
            },
            _ => SchemeMetrics { projective_dimension: -1, degree: 0 },
        }
    }
}

fn divide_by_one_minus_t(p: &[i64]) -> Vec<i64> {
    // p = (1 - T) q  =>  q_k = p_0 + ... + p_k
    let mut q = Vec::with_capacity(p.len().saturating_sub(1));
    let mut acc = 0;
    for &c in &p[..p.len().saturating_sub(1)] {
        acc += c;
        q.push(acc);
    }
    debug_assert_eq!(acc + p.last().copied().unwrap_or(0), 0);
    trim(q)
}

fn trim(mut p: Vec<i64>) -> Vec<i64> {
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
    if p.is_empty() {
        p.push(0);
    }
    p
}

fn poly_add(a: &[i64], b: &[i64]) -> Vec<i64> {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| a.get(i).unwrap_or(&0) + b.get(i).unwrap_or(&0)).collect())
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn minimalize(mut gens: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    gens.sort_by_key(|m| m.iter().sum::<u32>());
    gens.dedup();
    let mut out: Vec<Vec<u32>> = Vec::with_capacity(gens.len());
    for m in gens {
        if !out.iter().any(|o| o.iter().zip(&m).all(|(a, b)| a <= b)) {
            out.push(m);
        }
    }
    out
}

fn numerator(gens: Vec<Vec<u32>>, nv: usize) -> Vec<i64> {
    let gens = minimalize(gens);
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|m| m.iter().all(|&e| e == 0)) {
        return vec![0];
    }
    let mut counts = vec![0usize; nv];
    for m in &gens {
        for (c, &e) in counts.iter_mut().zip(m) {
            if e > 0 {
                *c += 1;
            }
        }
    }
    let (pivot, &best) = counts.iter().enumerate().max_by_key(|(i, &c)| (c, std::cmp::Reverse(*i))).unwrap();
    if best <= 1 {
        // pairwise coprime: product of (1 - T^deg)
        return gens.iter().fold(vec![1], |acc, m| {
            let d = m.iter().sum::<u32>() as usize;
            let mut f = vec![0; d + 1];
            f[0] = 1;
            f[d] -= 1;
            poly_mul(&acc, &f)
        });
    }
    // N(I) = N(I + (x)) + T * N(I : x)
    let mut with_x: Vec<Vec<u32>> = gens.iter().filter(|m| m[pivot] == 0).cloned().collect();
    let mut x = vec![0; nv];
    x[pivot] = 1;
    with_x.push(x);
    let colon: Vec<Vec<u32>> = gens
        .iter()
        .map(|m| {
            let mut m = m.clone();
            if m[pivot] > 0 {
                m[pivot] -= 1;
            }
            m
        })
        .collect();
    let a = numerator(with_x, nv);
    let mut b = vec![0];
    b.extend(numerator(colon, nv));
    poly_add(&a, &b)
}

/// Numerator of the Hilbert series of `k[x_1..x_arity] / (lt_gens)`.
pub fn hilbert_numerator(lt_gens: &[Monomial], arity: usize) -> HilbertSeries {
    let gens: Vec<Vec<u32>> = lt_gens
        .iter()
        .map(|m| {
            assert_eq!(m.0.len(), arity, "monomial arity");
            m.0.clone()
        })
        .collect();
    HilbertSeries { numerator: numerator(gens, arity), arity }
}

/// Krull dimension of `R / I` for an ideal with the given leading monomials
/// under any monomial order.
pub fn dimension_from_leading(lt: &[Monomial], arity: usize) -> Dimension {
    hilbert_numerator(lt, arity).krull_dimension()
}

/// Projective dimension and degree of the scheme of a homogeneous ideal.
pub fn dim_and_degree(ideal: &Ideal) -> Result<SchemeMetrics> {
    if !ideal.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let gb = ideal.groebner(&MonomialOrder::Grevlex)?;
    Ok(hilbert_numerator(&gb.leading_term_ideal(), ideal.ring().nvars()).metrics())
}

/// Krull dimension of `R / I` for a homogeneous ideal (the affine cone).
pub fn affine_dimension(ideal: &Ideal) -> Result<Dimension> {
    if !ideal.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let gb = ideal.groebner(&MonomialOrder::Grevlex)?;
    Ok(dimension_from_leading(&gb.leading_term_ideal(), ideal.ring().nvars()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::parse::parse_ideal;

    fn m(e: &[u32]) -> Monomial {
        Monomial(e.to_vec())
    }

    /// Brute-force count of standard monomials of each degree.
    fn graded_counts(gens: &[Monomial], nv: usize, max_deg: u32) -> Vec<i64> {
        let mut counts = vec![0i64; max_deg as usize + 1];
        let mut stack = vec![(vec![], 0u32)];
        while let Some((e, d)) = stack.pop() {
            if e.len() == nv {
                let mono = Monomial(e);
                if !gens.iter().any(|g| g.divides(&mono)) {
                    counts[d as usize] += 1;
                }
                continue;
            }
            for k in 0..=(max_deg - d) {
                let mut e2: Vec<u32> = e.clone();
                e2.push(k);
                stack.push((e2, d + k));
            }
        }
        counts
    }

    /// Expand N(T)/(1-T)^m as a power series up to `max_deg`.
    fn series(h: &HilbertSeries, max_deg: usize) -> Vec<i64> {
        let mut s: Vec<i64> = (0..=max_deg).map(|i| h.numerator().get(i).copied().unwrap_or(0)).collect();
        for _ in 0..h.arity() {
            for i in 1..=max_deg {
                s[i] += s[i - 1];
            }
        }
        s
    }

    #[test]
    fn basic_numerators() {
        assert_eq!(hilbert_numerator(&[], 3).numerator(), &[1]);
        assert_eq!(hilbert_numerator(&[m(&[1, 0])], 2).numerator(), &[1, -1]);
    }

    #[test]
    fn twisted_cubic_initial_ideal() {
        // xz, yw, xw in k[x,y,z,w]
        let gens = [m(&[1, 0, 1, 0]), m(&[0, 1, 0, 1]), m(&[1, 0, 0, 1])];
        let h = hilbert_numerator(&gens, 4);
        let counts = graded_counts(&gens, 4, 6);
        // Hilbert polynomial 3t + 1 from degree 1 on
        for t in 1..=6 {
            assert_eq!(counts[t], 3 * t as i64 + 1);
        }
        assert_eq!(series(&h, 6), counts);
        let (q, k) = h.reduced().unwrap();
        assert_eq!(k, 2);
        assert_eq!(q.iter().sum::<i64>(), 3);
        assert_eq!(h.metrics(), SchemeMetrics { projective_dimension: 1, degree: 3 });
    }

    #[test]
    fn randomized_against_counting() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..60 {
            let nv = rng.gen_range(1..=4);
            let ngens = rng.gen_range(0..=5);
            let gens: Vec<Monomial> = (0..ngens)
                .map(|_| Monomial((0..nv).map(|_| rng.gen_range(0..=3)).collect()))
                .collect();
            let h = hilbert_numerator(&gens, nv);
            assert_eq!(series(&h, 8), graded_counts(&gens, nv, 8), "{gens:?}");
        }
    }

    #[test]
    fn scheme_metrics() {
        let q = FieldSpec::Rationals;
        let conic = parse_ideal("x^2+y^2+z^2", None, q).unwrap();
        assert_eq!(dim_and_degree(&conic).unwrap(), SchemeMetrics { projective_dimension: 1, degree: 2 });
        let cubic = parse_ideal("x*z-y^2, y*w-z^2, x*w-y*z", None, q).unwrap();
        assert_eq!(dim_and_degree(&cubic).unwrap(), SchemeMetrics { projective_dimension: 1, degree: 3 });
        let irrelevant = parse_ideal("x, y, z", None, q).unwrap();
        assert_eq!(dim_and_degree(&irrelevant).unwrap(), SchemeMetrics { projective_dimension: -1, degree: 0 });
        let vars: Vec<String> = ["x", "y", "z", "w"].iter().map(|s| s.to_string()).collect();
        let zero = parse_ideal("0", Some(&vars), q).unwrap();
        assert_eq!(dim_and_degree(&zero).unwrap(), SchemeMetrics { projective_dimension: 3, degree: 1 });
        let unit = parse_ideal("1", Some(&vars), q).unwrap();
        assert_eq!(dim_and_degree(&unit).unwrap(), SchemeMetrics { projective_dimension: -1, degree: 0 });
        assert_eq!(affine_dimension(&unit).unwrap(), Dimension::NegInfinity);
        assert!(matches!(dim_and_degree(&parse_ideal("x+1", None, q).unwrap()), Err(Error::NotHomogeneous)));
    }

    #[test]
    fn hypersurface_degree_is_its_degree() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let q = FieldSpec::Rationals;
        for nv in [3usize, 4] {
            let ring = crate::poly::PolynomialRing::new((0..nv).map(|i| format!("x{i}")), q).unwrap();
            for d in 1..=4u32 {
                let terms: Vec<_> = (0..4)
                    .map(|_| {
                        let mut e = vec![0u32; nv];
                        for _ in 0..d {
                            e[rng.gen_range(0..nv)] += 1;
                        }
                        (Monomial(e), q.from_i64(rng.gen_range(1..20)))
                    })
                    .collect();
                let f = crate::poly::Polynomial::from_terms(&ring, terms);
                let ideal = Ideal::new(&ring, vec![f]);
                let mt = dim_and_degree(&ideal).unwrap();
                assert_eq!(mt, SchemeMetrics { projective_dimension: nv as i64 - 2, degree: d as u64 });
            }
        }
    }
}
