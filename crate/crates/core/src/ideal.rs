//! Ideals and the operations the class computations are built from:
//! elimination, intersection, colon ideals, saturation, graph ideals of
//! rational maps, hyperplane slicing and projection to the base.

use std::sync::atomic::{AtomicUsize, Ordering};

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::groebner::{groebner_weighted, GroebnerBasis};
use crate::hilbert::{dimension_from_leading, Dimension};
use crate::order::MonomialOrder;
use crate::poly::{same_ring, Monomial, Polynomial, PolynomialRing, Ring};
use crate::rng::SliceRng;

/// Retries allowed before slicing gives up on finding a generic hyperplane.
pub const SLICE_RETRY_BUDGET: usize = 25;

/// Gröbner basis provider shared by one computation. Counts the bases it
/// computes and optionally certifies each of them.
#[derive(Debug, Default)]
pub struct Context {
    certify: bool,
    computed: AtomicUsize,
}

impl Context {
    pub fn new(certify: bool) -> Self {
        Context { certify, computed: AtomicUsize::new(0) }
    }

    pub fn certifying(&self) -> bool {
        self.certify
    }

    pub fn bases_computed(&self) -> usize {
        self.computed.load(Ordering::Relaxed)
    }

    pub fn groebner(&self, ring: &Ring, gens: &[Polynomial], order: &MonomialOrder) -> Result<GroebnerBasis> {
        self.groebner_weighted(ring, gens, order, &vec![1; ring.nvars()])
    }

    pub fn groebner_weighted(
        &self,
        ring: &Ring,
        gens: &[Polynomial],
        order: &MonomialOrder,
        weights: &[u32],
    ) -> Result<GroebnerBasis> {
        let gb = groebner_weighted(ring, gens, order, weights)?;
        self.computed.fetch_add(1, Ordering::Relaxed);
        if self.certify {
            gb.certify(gens)?;
        }
        Ok(gb)
    }

    fn note_basis(&self) {
        self.computed.fetch_add(1, Ordering::Relaxed);
    }
}

#[derive(Clone, Debug)]
pub struct Ideal {
    ring: Ring,
    gens: Vec<Polynomial>,
}

impl Ideal {
    /// Panics if a generator lives in another ring; see [`Ideal::try_new`].
    pub fn new(ring: &Ring, gens: Vec<Polynomial>) -> Self {
        Self::try_new(ring, gens).expect("generator from a different ring")
    }

    pub fn try_new(ring: &Ring, gens: Vec<Polynomial>) -> Result<Self> {
        if gens.iter().any(|g| !same_ring(g.ring(), ring)) {
            return Err(Error::RingMismatch);
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Ideal { ring: ring.clone(), gens })
    }

    pub fn zero(ring: &Ring) -> Self {
        Ideal { ring: ring.clone(), gens: vec![] }
    }

    pub fn unit(ring: &Ring) -> Self {
        Ideal { ring: ring.clone(), gens: vec![Polynomial::one(ring)] }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(Polynomial::is_homogeneous)
    }

    pub fn groebner(&self, order: &MonomialOrder) -> Result<GroebnerBasis> {
        Context::default().groebner(&self.ring, &self.gens, order)
    }

    pub fn is_unit(&self) -> Result<bool> {
        if self.gens.iter().any(Polynomial::is_constant) {
            return Ok(true);
        }
        Ok(self.groebner(&MonomialOrder::Grevlex)?.is_unit())
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        self.groebner(&MonomialOrder::Grevlex)?.contains(p)
    }

    /// `other ⊆ self`.
    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        let gb = self.groebner(&MonomialOrder::Grevlex)?;
        for g in &other.gens {
            if !gb.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality as ideals (same reduced Gröbner basis).
    pub fn same_ideal(&self, other: &Ideal) -> Result<bool> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        Ok(self.groebner(&MonomialOrder::Grevlex)? == other.groebner(&MonomialOrder::Grevlex)?)
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        Ok(Ideal { ring: self.ring.clone(), gens: self.gens.iter().chain(&other.gens).cloned().collect() })
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.checked_mul(b)?);
            }
        }
        Ideal::try_new(&self.ring, gens)
    }

    pub fn with_generator(&self, p: Polynomial) -> Result<Ideal> {
        let mut gens = self.gens.clone();
        gens.push(p);
        Ideal::try_new(&self.ring, gens)
    }
}

/// Result of eliminating a block of variables.
pub(crate) struct Elimination {
    pub ideal: Ideal,
    /// Reduced grevlex basis of `ideal` in the smaller ring.
    pub basis: GroebnerBasis,
}

pub(crate) fn eliminate_indices(
    ctx: &Context,
    ideal: &Ideal,
    elim: &[usize],
    small: Option<&Ring>,
    weights: Option<&[u32]>,
) -> Result<Elimination> {
    let ring = ideal.ring();
    let nv = ring.nvars();
    let keep: Vec<usize> = (0..nv).filter(|i| !elim.contains(i)).collect();
    let perm: Vec<usize> = elim.iter().chain(&keep).copied().collect();
    let big = PolynomialRing::new(perm.iter().map(|&i| ring.variables()[i].clone()), ring.field())?;
    let small = match small {
        Some(s) => s.clone(),
        None => PolynomialRing::new(keep.iter().map(|&i| ring.variables()[i].clone()), ring.field())?,
    };
    assert_eq!(small.nvars(), keep.len());
    let mut to_big = vec![None; nv];
    for (pos, &i) in perm.iter().enumerate() {
        to_big[i] = Some(pos);
    }
    let gens = ideal.generators().iter().map(|g| g.map_into(&big, &to_big)).collect::<Result<Vec<_>>>()?;
    let w: Vec<u32> = match weights {
        Some(w) => perm.iter().map(|&i| w[i]).collect(),
        None => vec![1; nv],
    };
    let e = elim.len();
    let order = if e == 0 { MonomialOrder::Grevlex } else { MonomialOrder::elimination(e) };
    let gb = ctx.groebner_weighted(&big, &gens, &order, &w)?;
    let to_small: Vec<Option<usize>> = (0..nv).map(|j| j.checked_sub(e)).collect();
    let kept = gb
        .elements()
        .iter()
        .filter(|p| p.terms().iter().all(|(m, _)| m.0[..e].iter().all(|&x| x == 0)))
        .map(|p| p.map_into(&small, &to_small))
        .collect::<Result<Vec<_>>>()?;
    let basis = GroebnerBasis::from_reduced(&small, MonomialOrder::Grevlex, kept.clone());
    Ok(Elimination { ideal: Ideal::try_new(&small, kept)?, basis })
}

fn indices_of(ring: &Ring, vars: &[&str]) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for v in vars {
        let i = ring.var_index(v)?;
        if !out.contains(&i) {
            out.push(i);
        }
    }
    Ok(out)
}

/// `I ∩ k[remaining variables]`, living in the ring of the remaining variables.
pub fn eliminate(ideal: &Ideal, vars: &[&str]) -> Result<Ideal> {
    let elim = indices_of(ideal.ring(), vars)?;
    Ok(eliminate_indices(&Context::default(), ideal, &elim, None, None)?.ideal)
}

pub(crate) fn intersect_in(ctx: &Context, a: &Ideal, b: &Ideal) -> Result<Ideal> {
    if !same_ring(a.ring(), b.ring()) {
        return Err(Error::RingMismatch);
    }
    let ring = a.ring();
    if a.is_zero() || b.is_zero() {
        return Ok(Ideal::zero(ring));
    }
    let t = ring.fresh_name("t");
    let ext = ring.prepend(&[t])?;
    let shift: Vec<Option<usize>> = (1..=ring.nvars()).map(Some).collect();
    let tv = Polynomial::var_at(&ext, 0);
    let one_minus_t = &Polynomial::one(&ext) - &tv;
    let mut gens = Vec::with_capacity(a.gens.len() + b.gens.len());
    for g in &a.gens {
        gens.push(&tv * &g.map_into(&ext, &shift)?);
    }
    for g in &b.gens {
        gens.push(&one_minus_t * &g.map_into(&ext, &shift)?);
    }
    let ext_ideal = Ideal::try_new(&ext, gens)?;
    Ok(eliminate_indices(ctx, &ext_ideal, &[0], Some(ring), None)?.ideal)
}

pub fn intersect(a: &Ideal, b: &Ideal) -> Result<Ideal> {
    intersect_in(&Context::default(), a, b)
}

pub(crate) fn quotient_in(ctx: &Context, ideal: &Ideal, g: &Polynomial) -> Result<Ideal> {
    if !same_ring(ideal.ring(), g.ring()) {
        return Err(Error::RingMismatch);
    }
    if g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if g.is_constant() {
        return Ok(ideal.clone());
    }
    let principal = Ideal::new(ideal.ring(), vec![g.clone()]);
    let meet = intersect_in(ctx, ideal, &principal)?;
    let gens = meet
        .gens
        .iter()
        .map(|h| h.div_exact(g)?.ok_or_else(|| Error::CertificateFailure("intersection element not divisible".into())))
        .collect::<Result<Vec<_>>>()?;
    Ideal::try_new(ideal.ring(), gens)
}

/// `I : g`.
pub fn quotient(ideal: &Ideal, g: &Polynomial) -> Result<Ideal> {
    quotient_in(&Context::default(), ideal, g)
}

pub(crate) fn quotient_ideal_in(ctx: &Context, ideal: &Ideal, by: &Ideal) -> Result<Ideal> {
    if !same_ring(ideal.ring(), by.ring()) {
        return Err(Error::RingMismatch);
    }
    let mut acc: Option<Ideal> = None;
    for g in &by.gens {
        let q = quotient_in(ctx, ideal, g)?;
        acc = Some(match acc {
            None => q,
            Some(a) => intersect_in(ctx, &a, &q)?,
        });
    }
    Ok(acc.unwrap_or_else(|| Ideal::unit(ideal.ring())))
}

/// `I : J`, the intersection of `I : g` over the generators `g` of `J`.
pub fn quotient_ideal(ideal: &Ideal, by: &Ideal) -> Result<Ideal> {
    quotient_ideal_in(&Context::default(), ideal, by)
}

pub(crate) fn saturate_in(ctx: &Context, ideal: &Ideal, by: &Ideal) -> Result<Ideal> {
    if by.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    let mut current = ideal.clone();
    let mut basis = ctx.groebner(current.ring(), &current.gens, &MonomialOrder::Grevlex)?;
    loop {
        if basis.is_unit() {
            return Ok(Ideal::unit(ideal.ring()));
        }
        let next = quotient_ideal_in(ctx, &current, by)?;
        let next_basis = ctx.groebner(next.ring(), &next.gens, &MonomialOrder::Grevlex)?;
        if next_basis == basis {
            return Ok(Ideal::try_new(ideal.ring(), basis.into_elements())?);
        }
        current = next;
        basis = next_basis;
    }
}

/// `I : J^∞` by iterated colon ideals until the reduced basis stabilizes.
pub fn saturate(ideal: &Ideal, by: &Ideal) -> Result<Ideal> {
    saturate_in(&Context::default(), ideal, by)
}

/// `I : h^∞` for a single polynomial, by the extra-variable method: compute a
/// grevlex basis of `I + (y - h)` with `y` smallest, strip the largest power
/// of `y` from each element, then substitute `y := h`. Requires `I` and `h`
/// homogeneous. Also returns the Krull dimension of `I`.
pub(crate) fn saturate_by_form(ctx: &Context, ideal: &Ideal, h: &Polynomial) -> Result<(Ideal, Dimension)> {
    let ring = ideal.ring();
    let y = ring.fresh_name("y");
    let ext = ring.append(&[y])?;
    let nv = ring.nvars();
    let id: Vec<Option<usize>> = (0..nv).map(Some).collect();
    let h_ext = h.map_into(&ext, &id)?;
    let mut gens = ideal.gens.iter().map(|g| g.map_into(&ext, &id)).collect::<Result<Vec<_>>>()?;
    gens.push(&Polynomial::var_at(&ext, nv) - &h_ext);
    let gb = ctx.groebner(&ext, &gens, &MonomialOrder::Grevlex)?;
    let dim = dimension_from_leading(&gb.leading_monomials(), nv + 1);
    if gb.is_unit() {
        return Ok((Ideal::unit(ring), dim));
    }
    let mut drop_y = id.clone();
    drop_y.push(None);
    let mut out = Vec::with_capacity(gb.elements().len());
    for g in gb.elements() {
        let k = g.terms().iter().map(|(m, _)| m.0[nv]).min().unwrap_or(0);
        let stripped = Polynomial::from_terms(
            &ext,
            g.terms().iter().map(|(m, c)| {
                let mut e = m.clone();
                e.0[nv] -= k;
                (e, c.clone())
            }),
        );
        out.push(stripped.substitute(nv, &h_ext).map_into(ring, &drop_y)?);
    }
    Ok((Ideal::try_new(ring, out)?, dim))
}

/// Ideal of the graph of a rational map `ℙⁿ --> ℙᴺ` in `k[t_0..t_N, z_0..z_n]`.
#[derive(Clone, Debug)]
pub struct GraphIdeal {
    ideal: Ideal,
    targets: usize,
    base: Ring,
}

impl GraphIdeal {
    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    /// Number of target variables `t_0..t_N`; they come first in the ring.
    pub fn targets(&self) -> usize {
        self.targets
    }

    pub fn base(&self) -> &Ring {
        &self.base
    }

    pub fn target_indices(&self) -> Vec<usize> {
        (0..self.targets).collect()
    }

    fn with_ideal(&self, ideal: Ideal) -> GraphIdeal {
        GraphIdeal { ideal, targets: self.targets, base: self.base.clone() }
    }
}

fn target_names(base: &Ring, count: usize) -> Vec<String> {
    let mut prefix = String::from("t");
    loop {
        let names: Vec<String> = (0..count).map(|i| format!("{prefix}{i}")).collect();
        if names.iter().all(|n| base.var_index(n).is_err()) {
            return names;
        }
        prefix.push('_');
    }
}

/// Homogeneous, equal-degree map components; returns their common degree.
fn check_map(f: &[Polynomial]) -> Result<(Ring, u32)> {
    let first = f.first().ok_or(Error::ZeroMap)?;
    let ring = first.ring().clone();
    if f.iter().any(|p| !same_ring(p.ring(), &ring)) {
        return Err(Error::RingMismatch);
    }
    let mut degree = None;
    for p in f.iter().filter(|p| !p.is_zero()) {
        if !p.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
        let d = p.total_degree().unwrap();
        if *degree.get_or_insert(d) != d {
            return Err(Error::DegreeMismatch);
        }
    }
    degree.map(|d| (ring, d)).ok_or(Error::ZeroMap)
}

pub(crate) fn graph_ideal_in(ctx: &Context, f: &[Polynomial]) -> Result<(GraphIdeal, Dimension)> {
    let (base, _) = check_map(f)?;
    if base.field() == FieldSpec::Rationals {
        let tz = base.prepend(&target_names(&base, f.len()))?;
        if let Some(lifted) = lifting::graph_ideal_lifted(ctx, f, &base, &tz)? {
            return Ok(lifted);
        }
        log::debug!("modular lift did not settle; computing the graph over QQ");
    }
    graph_ideal_direct(ctx, f)
}

fn graph_ideal_direct(ctx: &Context, f: &[Polynomial]) -> Result<(GraphIdeal, Dimension)> {
    let (base, r) = check_map(f)?;
    let n1 = f.len();
    let tz = base.prepend(&target_names(&base, n1))?;
    let u = tz.fresh_name("u");
    let utz = tz.prepend(&[u])?;
    let z_map: Vec<Option<usize>> = (0..base.nvars()).map(|i| Some(i + 1 + n1)).collect();
    let uv = Polynomial::var_at(&utz, 0);
    let gens = f
        .iter()
        .enumerate()
        .map(|(i, fi)| Ok(&Polynomial::var_at(&utz, 1 + i) - &(&uv * &fi.map_into(&utz, &z_map)?)))
        .collect::<Result<Vec<_>>>()?;
    // u, t, z get weights 1, r + 1, 1 so the generators are weighted-homogeneous.
    let weights: Vec<u32> = std::iter::once(1).chain(std::iter::repeat(r + 1).take(n1)).chain(std::iter::repeat(1).take(base.nvars())).collect();
    let elim = eliminate_indices(ctx, &Ideal::try_new(&utz, gens)?, &[0], Some(&tz), Some(&weights))?;
    let dim = dimension_from_leading(&elim.basis.leading_monomials(), tz.nvars());
    Ok((GraphIdeal { ideal: elim.ideal, targets: n1, base }, dim))
}

/// Graph of `z ↦ (f_0(z) : … : f_N(z))`: eliminate `u` from `(t_i - u f_i)`.
pub fn graph_ideal(f: &[Polynomial]) -> Result<GraphIdeal> {
    Ok(graph_ideal_in(&Context::default(), f)?.0)
}

/// One accepted hyperplane slice.
pub(crate) struct Slice {
    pub graph: GraphIdeal,
    pub form: Polynomial,
    pub dimension: Dimension,
}

pub(crate) fn slice_once_in(ctx: &Context, prev: &GraphIdeal, prev_dim: Dimension, rng: &mut SliceRng) -> Result<Slice> {
    let ring = prev.ideal.ring().clone();
    let ts = prev.target_indices();
    let target = prev_dim.pred();
    for attempt in 0..SLICE_RETRY_BUDGET {
        let form = rng.linear_form(&ring, &ts);
        if prev_dim <= Dimension::Finite(1) {
            // only the vertex t = 0 can remain, which saturation removes
            return Ok(Slice { graph: prev.with_ideal(Ideal::unit(&ring)), form, dimension: target });
        }
        let h = rng.linear_form(&ring, &ts);
        let sliced = prev.ideal.with_generator(form.clone())?;
        let (saturated, dim) = saturate_by_form(ctx, &sliced, &h)?;
        if dim == target {
            return Ok(Slice { graph: prev.with_ideal(saturated), form, dimension: dim });
        }
        log::debug!("slice attempt {attempt}: dimension {dim:?}, wanted {target:?}");
    }
    Err(Error::GenericityFailure { attempts: SLICE_RETRY_BUDGET })
}

/// `saturate(J + (ℓ), (t))` for a random `ℓ` in the target variables, retried
/// until the dimension drops by exactly one.
pub fn slice_once(prev: &GraphIdeal, rng: &mut SliceRng) -> Result<(GraphIdeal, Polynomial)> {
    let ctx = Context::default();
    let basis = prev.ideal.groebner(&MonomialOrder::Grevlex)?;
    let dim = dimension_from_leading(&basis.leading_monomials(), prev.ideal.ring().nvars());
    let s = slice_once_in(&ctx, prev, dim, rng)?;
    Ok((s.graph, s.form))
}

/// `saturate(J + (form), (t))` for a chosen form, by iterated colon ideals.
pub fn slice_with_form(prev: &GraphIdeal, form: &Polynomial) -> Result<GraphIdeal> {
    let ring = prev.ideal.ring();
    let irrelevant = Ideal::try_new(ring, prev.target_indices().into_iter().map(|i| Polynomial::var_at(ring, i)).collect())?;
    let sat = saturate(&prev.ideal.with_generator(form.clone())?, &irrelevant)?;
    Ok(prev.with_ideal(sat))
}

pub(crate) fn project_in(ctx: &Context, g: &GraphIdeal) -> Result<Elimination> {
    eliminate_indices(ctx, &g.ideal, &g.target_indices(), Some(&g.base), None)
}

/// `J ∩ k[z]`: the homogeneous ideal of the image in the base.
pub fn project_to_base(g: &GraphIdeal) -> Result<Ideal> {
    Ok(project_in(&Context::default(), g)?.ideal)
}

/// Every monomial of total degree `d` in `nv` variables.
pub fn monomials_of_degree(nv: usize, d: u32) -> Vec<Monomial> {
    fn rec(nv: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == nv {
            prefix.push(d);
            out.push(Monomial(prefix.clone()));
            prefix.pop();
            return;
        }
        for k in (0..=d).rev() {
            prefix.push(k);
            rec(nv, d - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nv == 0 {
        if d == 0 {
            out.push(Monomial(vec![]));
        }
        return out;
    }
    rec(nv, d, &mut Vec::new(), &mut out);
    out
}

/// Replace each generator of degree `d < r` by its products with all
/// monomials of degree `r - d`. Requires `r ≥` every generator degree.
pub fn normalize_to_degree(ideal: &Ideal, r: u32) -> Result<Ideal> {
    if !ideal.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let nv = ideal.ring().nvars();
    let mut gens = Vec::new();
    for g in &ideal.gens {
        let d = g.total_degree().unwrap();
        if d > r {
            return Err(Error::DegreeMismatch);
        }
        if d == r {
            gens.push(g.clone());
        } else {
            gens.extend(monomials_of_degree(nv, r - d).iter().map(|m| g.mul_monomial(m)));
        }
    }
    Ideal::try_new(ideal.ring(), gens)
}

/// [`normalize_to_degree`] with `r` the largest generator degree.
pub fn normalize_same_degree(ideal: &Ideal) -> Result<Ideal> {
    let r = ideal.gens.iter().filter_map(Polynomial::total_degree).max().unwrap_or(0);
    normalize_to_degree(ideal, r)
}

/// `(∂F/∂z_0, …, ∂F/∂z_n)` with zero partials dropped.
pub fn jacobian_ideal(f: &Polynomial) -> Result<Ideal> {
    if !f.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let ring = f.ring();
    Ideal::try_new(ring, (0..ring.nvars()).map(|i| f.partial_derivative_at(i)).collect())
}

pub(crate) fn trim_generators_in(ctx: &Context, ideal: &Ideal) -> Result<Ideal> {
    let mut gens = ideal.gens.clone();
    let mut i = 0;
    while i < gens.len() {
        let others: Vec<Polynomial> = gens.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, g)| g.clone()).collect();
        if !others.is_empty() && ctx.groebner(ideal.ring(), &others, &MonomialOrder::Grevlex)?.contains(&gens[i])? {
            gens.remove(i);
        } else {
            i += 1;
        }
    }
    Ideal::try_new(ideal.ring(), gens)
}

/// Drop generators that lie in the ideal of the remaining ones.
pub fn trim_generators(ideal: &Ideal) -> Result<Ideal> {
    trim_generators_in(&Context::default(), ideal)
}

mod lifting;
