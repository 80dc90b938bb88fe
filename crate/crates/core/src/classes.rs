//! Characteristic classes of subschemes of `ℙⁿ`.
//!
//! Everything is computed from the projective degrees `g_0..g_n` of the
//! rational map given by the generators of an ideal: each `g_i` is the
//! degree of the image in `ℙⁿ` of the graph of the map cut by `i` general
//! hyperplanes of the target.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::chow::ChowClass;
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::hilbert::hilbert_numerator;
use crate::ideal::{
    graph_ideal_in, jacobian_ideal, normalize_same_degree, project_in, slice_once_in, trim_generators_in, Context,
    Ideal,
};
use crate::order::MonomialOrder;
use crate::poly::{Polynomial, PolynomialRing};
use crate::rng::SliceRng;

/// Seed used when the caller does not choose one.
pub const DEFAULT_SEED: u64 = 0x5EED_C5A1_2002;

/// `g_0, …, g_n` together with the common degree `r` of the map components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectiveDegrees {
    pub g: Vec<u64>,
    pub map_degree: u32,
}

impl ProjectiveDegrees {
    pub fn ambient_dimension(&self) -> usize {
        self.g.len() - 1
    }

    /// `G = Σ g_i H^i`.
    pub fn shadow(&self) -> ChowClass {
        ChowClass::new(self.ambient_dimension(), self.g.iter().map(|&v| BigRational::from_integer(v.into())))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClassReport {
    pub segre: Option<ChowClass>,
    pub fulton: Option<ChowClass>,
    pub csm: Option<ChowClass>,
    pub milnor: Option<ChowClass>,
    pub euler: Option<BigInt>,
}

/// How [`Pipeline::euler_affine`] subtracts the part at infinity.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum AffineMethod {
    /// `χ(closure) - χ(limit scheme in the hyperplane at infinity)`.
    #[default]
    Limit,
    /// `χ(closure ∪ hyperplane at infinity) - n`.
    Union,
}

#[derive(Clone, Debug)]
pub struct ClassOptions {
    pub seed: u64,
    /// Verify every Gröbner basis computed along the way.
    pub certify: bool,
    /// Drop redundant generators before running the pipeline.
    pub simplify: bool,
}

impl Default for ClassOptions {
    fn default() -> Self {
        ClassOptions { seed: DEFAULT_SEED, certify: false, simplify: false }
    }
}

/// Class computations sharing one set of options and one Gröbner context.
#[derive(Debug, Default)]
pub struct Pipeline {
    options: ClassOptions,
    ctx: Context,
}

fn integral_class(c: ChowClass) -> Result<ChowClass> {
    c.integer_coefficients()?;
    Ok(c)
}

/// `(1 + H)^{n+1}`, the Chern class of the tangent bundle of `ℙⁿ`.
pub fn tangent_class(n: usize) -> ChowClass {
    ChowClass::chern_line(n, 1).pow(n as u32 + 1)
}

/// `1 - (1 + rH)^{-1} (G ⊗ O(rH))`, the Segre class from projective degrees.
pub fn segre_from_degrees(d: &ProjectiveDegrees) -> ChowClass {
    let n = d.ambient_dimension();
    let r = d.map_degree as i64;
    ChowClass::one(n).sub(&d.shadow().tensor_line(r).inv_chern_line(r)).unwrap()
}

/// `(1+H)^{n+1} - Σ g_d (-H)^d (1+H)^{n-d}` for the projective degrees of the
/// gradient map of a hypersurface.
pub fn csm_from_gradient_degrees(d: &ProjectiveDegrees) -> ChowClass {
    let n = d.ambient_dimension();
    let mut complement = ChowClass::zero(n);
    let one_plus_h = ChowClass::chern_line(n, 1);
    for (k, &g) in d.g.iter().enumerate() {
        if g == 0 {
            continue;
        }
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let term = ChowClass::hyperplane_power(n, k)
            .mul(&one_plus_h.pow((n - k) as u32))
            .unwrap()
            .scale(&BigRational::from_integer((sign * g as i64).into()));
        complement = complement.add(&term).unwrap();
    }
    tangent_class(n).sub(&complement).unwrap()
}

/// `dⁿ - ∫ (1 + dH)ⁿ · s`: the number of intersection points of `n` general
/// degree-`d` divisors through a base scheme with Segre class `s`, outside
/// that scheme.
pub fn excess_count(s: &ChowClass, d: i64) -> Result<BigInt> {
    let n = s.n();
    let bezout = BigInt::from(d).pow(n as u32);
    let correction = ChowClass::chern_line(n, d).pow(n as u32).mul(s)?.integral()?;
    Ok(bezout - correction)
}

impl Pipeline {
    pub fn new(options: ClassOptions) -> Self {
        Pipeline { ctx: Context::new(options.certify), options }
    }

    pub fn options(&self) -> &ClassOptions {
        &self.options
    }

    /// Number of Gröbner bases computed so far.
    pub fn bases_computed(&self) -> usize {
        self.ctx.bases_computed()
    }

    fn prepare(&self, ideal: &Ideal) -> Result<Ideal> {
        if !ideal.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
        if self.options.simplify {
            trim_generators_in(&self.ctx, ideal)
        } else {
            Ok(ideal.clone())
        }
    }

    pub fn projective_degrees(&self, ideal: &Ideal) -> Result<ProjectiveDegrees> {
        let mut rng = SliceRng::new(self.options.seed, ideal.ring().field());
        self.projective_degrees_with(&self.prepare(ideal)?, &mut rng)
    }

    fn projective_degrees_with(&self, ideal: &Ideal, rng: &mut SliceRng) -> Result<ProjectiveDegrees> {
        if ideal.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        if !ideal.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
        let n = ideal.ring().nvars() - 1;
        let mut g = vec![0u64; n + 1];
        g[0] = 1;
        // A homogeneous ideal is the unit ideal exactly when it has a constant generator.
        if ideal.generators().iter().any(Polynomial::is_constant) {
            return Ok(ProjectiveDegrees { g, map_degree: 0 });
        }
        let normalized = normalize_same_degree(ideal)?;
        let r = normalized.generators()[0].total_degree().unwrap();
        let (mut graph, mut dim) = graph_ideal_in(&self.ctx, normalized.generators())?;
        for i in 1..=n {
            let slice = slice_once_in(&self.ctx, &graph, dim, rng)?;
            graph = slice.graph;
            dim = slice.dimension;
            if graph.ideal().generators().iter().any(Polynomial::is_constant) {
                break;
            }
            let image = project_in(&self.ctx, &graph)?;
            let metrics = hilbert_numerator(&image.basis.leading_monomials(), n + 1).metrics();
            let expected = (n - i) as i64;
            if metrics.is_empty() {
                continue;
            }
            if metrics.projective_dimension != expected {
                return Err(Error::UnexpectedImageDimension { slice: i, expected, found: metrics.projective_dimension });
            }
            g[i] = metrics.degree;
            log::debug!("g_{i} = {}", g[i]);
        }
        Ok(ProjectiveDegrees { g, map_degree: r })
    }

    pub fn segre(&self, ideal: &Ideal) -> Result<ChowClass> {
        let ideal = self.prepare(ideal)?;
        if ideal.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        let n = ideal.ring().nvars() - 1;
        if ideal.generators().iter().any(Polynomial::is_constant) {
            return Ok(ChowClass::zero(n));
        }
        let mut rng = SliceRng::new(self.options.seed, ideal.ring().field());
        integral_class(segre_from_degrees(&self.projective_degrees_with(&ideal, &mut rng)?))
    }

    pub fn fulton(&self, ideal: &Ideal) -> Result<ChowClass> {
        let s = self.segre(ideal)?;
        integral_class(tangent_class(s.n()).mul(&s)?)
    }

    pub fn csm_hypersurface(&self, f: &Polynomial) -> Result<ChowClass> {
        let mut rng = SliceRng::new(self.options.seed, f.ring().field());
        self.csm_hypersurface_with(f, &mut rng)
    }

    fn csm_hypersurface_with(&self, f: &Polynomial, rng: &mut SliceRng) -> Result<ChowClass> {
        let n = f.ring().nvars() - 1;
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if f.is_constant() {
            return Ok(ChowClass::zero(n));
        }
        let jac = jacobian_ideal(f)?;
        if jac.is_zero() {
            return Err(Error::VanishingJacobian);
        }
        let degrees = self.projective_degrees_with(&jac, rng)?;
        integral_class(csm_from_gradient_degrees(&degrees))
    }

    /// CSM class of the support of `V(I)` by inclusion-exclusion over the
    /// hypersurfaces defined by products of generators.
    pub fn csm(&self, ideal: &Ideal) -> Result<ChowClass> {
        let n = ideal.ring().nvars() - 1;
        if ideal.is_zero() {
            return Ok(tangent_class(n));
        }
        if let FieldSpec::PrimeField(p) = ideal.ring().field() {
            log::warn!("CSM classes over GF({p}) have no established meaning; computing anyway");
        }
        let ideal = self.prepare(ideal)?;
        if ideal.generators().iter().any(Polynomial::is_constant) {
            return Ok(ChowClass::zero(n));
        }
        let gens = ideal.generators();
        let r = gens.len();
        assert!(r < 32, "too many generators for inclusion-exclusion");
        // products cached by bitmask: prod[m] = prod[m without its lowest bit] * F_lowest
        let mut products: Vec<Polynomial> = Vec::with_capacity(1 << r);
        products.push(Polynomial::one(ideal.ring()));
        for mask in 1usize..(1 << r) {
            let low = mask.trailing_zeros() as usize;
            let p = &products[mask & (mask - 1)] * &gens[low];
            products.push(p);
        }
        let seed = self.options.seed;
        let field = ideal.ring().field();
        let term = |mask: usize| -> Result<ChowClass> {
            let mut rng = SliceRng::derive(seed, mask as u64, field);
            let c = self.csm_hypersurface_with(&products[mask], &mut rng)?;
            Ok(if mask.count_ones() % 2 == 1 { c } else { c.neg() })
        };
        let masks: Vec<usize> = (1..(1 << r)).collect();
        #[cfg(feature = "parallel")]
        let terms: Vec<ChowClass> = {
            use rayon::prelude::*;
            masks.par_iter().map(|&m| term(m)).collect::<Result<_>>()?
        };
        #[cfg(not(feature = "parallel"))]
        let terms: Vec<ChowClass> = masks.iter().map(|&m| term(m)).collect::<Result<_>>()?;
        let total = terms.iter().try_fold(ChowClass::zero(n), |acc, c| acc.add(c))?;
        integral_class(total)
    }

    /// Fulton, CSM and Milnor classes together, with the Segre class and Euler
    /// characteristic.
    pub fn milnor(&self, ideal: &Ideal) -> Result<ClassReport> {
        let segre = self.segre(ideal)?;
        let fulton = integral_class(tangent_class(segre.n()).mul(&segre)?)?;
        let csm = self.csm(ideal)?;
        let milnor = csm.sub(&fulton)?;
        let euler = csm.integral()?;
        Ok(ClassReport { segre: Some(segre), fulton: Some(fulton), csm: Some(csm), milnor: Some(milnor), euler: Some(euler) })
    }

    /// Topological Euler characteristic of the support of `V(I) ⊂ ℙⁿ`.
    pub fn euler(&self, ideal: &Ideal) -> Result<BigInt> {
        self.csm(ideal)?.integral()
    }

    /// Euler characteristic of `V(I) ⊂ 𝔸ⁿ` for a possibly inhomogeneous ideal.
    pub fn euler_affine(&self, ideal: &Ideal, method: AffineMethod) -> Result<BigInt> {
        let ring = ideal.ring();
        let n = ring.nvars();
        if ideal.is_zero() {
            return Ok(BigInt::one());
        }
        let z0 = ring.fresh_name("z0");
        let proj = ring.prepend(&[z0])?;
        // homogenizing a degree-compatible basis gives the ideal of the closure
        let basis = self.ctx.groebner(ring, ideal.generators(), &MonomialOrder::Grevlex)?;
        if basis.is_unit() {
            return Ok(BigInt::zero());
        }
        let closure_gens: Vec<Polynomial> = basis.elements().iter().map(|g| g.homogenize_into(&proj, 0)).collect();
        let closure = Ideal::try_new(&proj, closure_gens)?;
        match method {
            AffineMethod::Limit => {
                let to_affine: Vec<Option<usize>> = std::iter::once(None).chain((0..n).map(Some)).collect();
                let zero = proj.field().zero();
                let limit_gens = closure
                    .generators()
                    .iter()
                    .map(|g| g.evaluate_at(0, &zero).map_into(ring, &to_affine))
                    .collect::<Result<Vec<_>>>()?;
                let limit = Ideal::try_new(ring, limit_gens)?;
                let at_infinity = if self.is_empty_scheme(&limit)? { BigInt::zero() } else { self.euler(&limit)? };
                Ok(self.euler(&closure)? - at_infinity)
            }
            AffineMethod::Union => {
                let h = Polynomial::var_at(&proj, 0);
                let union = Ideal::try_new(&proj, closure.generators().iter().map(|g| &h * g).collect())?;
                Ok(self.euler(&union)? - BigInt::from(n))
            }
        }
    }

    fn is_empty_scheme(&self, ideal: &Ideal) -> Result<bool> {
        if ideal.is_zero() {
            return Ok(false);
        }
        let basis = self.ctx.groebner(ideal.ring(), ideal.generators(), &MonomialOrder::Grevlex)?;
        Ok(hilbert_numerator(&basis.leading_monomials(), ideal.ring().nvars()).metrics().is_empty())
    }
}

pub fn projective_degrees(ideal: &Ideal) -> Result<ProjectiveDegrees> {
    Pipeline::default().projective_degrees(ideal)
}

pub fn segre(ideal: &Ideal) -> Result<ChowClass> {
    Pipeline::default().segre(ideal)
}

pub fn fulton(ideal: &Ideal) -> Result<ChowClass> {
    Pipeline::default().fulton(ideal)
}

pub fn csm_hypersurface(f: &Polynomial) -> Result<ChowClass> {
    Pipeline::default().csm_hypersurface(f)
}

pub fn csm(ideal: &Ideal) -> Result<ChowClass> {
    Pipeline::default().csm(ideal)
}

pub fn milnor(ideal: &Ideal) -> Result<ClassReport> {
    Pipeline::default().milnor(ideal)
}

pub fn euler(ideal: &Ideal) -> Result<BigInt> {
    Pipeline::default().euler(ideal)
}

pub fn euler_affine(ideal: &Ideal) -> Result<BigInt> {
    Pipeline::default().euler_affine(ideal, AffineMethod::Limit)
}

/// The ring `k[z_0..z_n]` with variables named `z0..zn`.
pub fn projective_space(n: usize, field: FieldSpec) -> crate::poly::Ring {
    PolynomialRing::new((0..=n).map(|i| format!("z{i}")), field).expect("distinct names")
}

#[cfg(test)]
mod tests;
