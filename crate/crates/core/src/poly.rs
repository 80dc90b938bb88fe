//! Polynomial rings and exact multivariate polynomials.
//!
//! Terms are stored sorted by lexicographic order on the ring's reference
//! variable list, so two equal polynomials always have identical term lists.
//! Monomial orders are applied where they matter (leading terms, Gröbner
//! bases), never baked into storage.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::order::MonomialOrder;

#[derive(Debug, PartialEq, Eq, Hash)]
pub struct PolynomialRing {
    vars: Vec<String>,
    field: FieldSpec,
}

pub type Ring = Arc<PolynomialRing>;

impl PolynomialRing {
    pub fn new<S: Into<String>>(vars: impl IntoIterator<Item = S>, field: FieldSpec) -> Result<Ring> {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(Error::DuplicateVariable(v.clone()));
            }
        }
        Ok(Arc::new(PolynomialRing { vars, field }))
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn variables(&self) -> &[String] {
        &self.vars
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    /// Ring with `names` placed before the existing variables.
    pub fn prepend(&self, names: &[String]) -> Result<Ring> {
        for n in names {
            if self.vars.contains(n) {
                return Err(Error::NameCollision(n.clone()));
            }
        }
        PolynomialRing::new(names.iter().cloned().chain(self.vars.iter().cloned()), self.field)
    }

    pub fn append(&self, names: &[String]) -> Result<Ring> {
        for n in names {
            if self.vars.contains(n) {
                return Err(Error::NameCollision(n.clone()));
            }
        }
        PolynomialRing::new(self.vars.iter().cloned().chain(names.iter().cloned()), self.field)
    }

    /// Name not yet used in this ring, derived from `base`.
    pub fn fresh_name(&self, base: &str) -> String {
        if !self.vars.iter().any(|v| v == base) {
            return base.to_string();
        }
        (0..)
            .map(|i| format!("{base}{i}"))
            .find(|c| !self.vars.contains(c))
            .unwrap()
    }
}

pub fn same_ring(a: &Ring, b: &Ring) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    /// `self / other`, if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        other.divides(self).then(|| Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }
}

#[derive(Clone, Debug)]
pub struct Polynomial {
    ring: Ring,
    // descending lex order, nonzero coefficients
    terms: Vec<(Monomial, FieldElement)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Ring, c: FieldElement) -> Self {
        Self::from_terms(ring, vec![(Monomial::one(ring.nvars()), c)])
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, ring.field().one())
    }

    pub fn var(ring: &Ring, name: &str) -> Result<Self> {
        let i = ring.var_index(name)?;
        Ok(Self::var_at(ring, i))
    }

    pub fn var_at(ring: &Ring, i: usize) -> Self {
        let mut e = vec![0; ring.nvars()];
        e[i] = 1;
        Polynomial {
            ring: ring.clone(),
            terms: vec![(Monomial(e), ring.field().one())],
        }
    }

    /// Build from arbitrary terms: merges duplicates and drops zeros.
    pub fn from_terms(ring: &Ring, terms: impl IntoIterator<Item = (Monomial, FieldElement)>) -> Self {
        let field = ring.field();
        let mut acc: BTreeMap<Monomial, FieldElement> = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.0.len(), ring.nvars(), "monomial arity");
            assert!(field.contains(&c), "coefficient outside {field}");
            match acc.get_mut(&m) {
                Some(v) => *v = v.add(&c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let terms = acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect();
        Polynomial { ring: ring.clone(), terms }
    }

    /// Trusts that `terms` are already canonical.
    pub(crate) fn from_sorted_terms(ring: &Ring, terms: Vec<(Monomial, FieldElement)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, FieldElement)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.degree() == 0)
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        !self.is_zero() && self.is_constant()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => {
                let d = m.degree();
                self.terms.iter().all(|(m, _)| m.degree() == d)
            }
        }
    }

    /// Degree in a subset of the variables (given by index).
    pub fn is_homogeneous_in(&self, vars: &[usize]) -> bool {
        let deg = |m: &Monomial| vars.iter().map(|&i| m.0[i]).sum::<u32>();
        match self.terms.first() {
            None => true,
            Some((m, _)) => {
                let d = deg(m);
                self.terms.iter().all(|(m, _)| deg(m) == d)
            }
        }
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.0[var]).max().unwrap_or(0)
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.0[var] > 0)
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = a[i].1.add(&b[j].1);
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Ok(Self::from_sorted_terms(&self.ring, out))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut acc: BTreeMap<Monomial, FieldElement> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca.mul(cb);
                match acc.get_mut(&m) {
                    Some(v) => *v = v.add(&c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        let terms = acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect();
        Ok(Self::from_sorted_terms(&self.ring, terms))
    }

    pub fn neg(&self) -> Self {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a.mul(c))).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(a, c)| (a.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Monic rescaling; zero stays zero.
    pub fn monic(&self, order: &MonomialOrder) -> Self {
        match self.leading_term(order) {
            Ok((_, c)) => self.scale(&c.inv().expect("nonzero")),
            Err(_) => self.clone(),
        }
    }

    pub fn partial_derivative(&self, var: &str) -> Result<Self> {
        let i = self.ring.var_index(var)?;
        Ok(self.partial_derivative_at(i))
    }

    pub fn partial_derivative_at(&self, i: usize) -> Self {
        let terms = self.terms.iter().filter(|(m, _)| m.0[i] > 0).map(|(m, c)| {
            let mut e = m.clone();
            let k = e.0[i];
            e.0[i] -= 1;
            (e, c.scale(k as i64))
        });
        // Lowering one exponent preserves lex order among the survivors, but
        // char-p cancellation can create zeros, so go through from_terms.
        Self::from_terms(&self.ring, terms.collect::<Vec<_>>())
    }

    pub fn leading_term(&self, order: &MonomialOrder) -> Result<(Monomial, FieldElement)> {
        self.terms
            .iter()
            .max_by(|a, b| order.cmp(&a.0 .0, &b.0 .0))
            .cloned()
            .ok_or(Error::ZeroPolynomial)
    }

    pub fn leading_monomial(&self, order: &MonomialOrder) -> Result<Monomial> {
        self.leading_term(order).map(|t| t.0)
    }

    /// Homogenize with a fresh variable appended to the ring.
    pub fn homogenize(&self, new_var: &str) -> Result<Self> {
        let ring = self.ring.append(&[new_var.to_string()])?;
        Ok(self.homogenize_into(&ring, ring.nvars() - 1))
    }

    /// Homogenize into `ring`, which extends this polynomial's ring by the
    /// variable at `slot` (all other variables keep their relative order).
    pub fn homogenize_into(&self, ring: &Ring, slot: usize) -> Self {
        assert_eq!(ring.nvars(), self.ring.nvars() + 1);
        let d = self.total_degree().unwrap_or(0);
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = m.0.clone();
            e.insert(slot, d - m.degree());
            (Monomial(e), c.clone())
        });
        Self::from_terms(ring, terms.collect::<Vec<_>>())
    }

    /// Substitute `var := value` for a constant value; the result stays in the same ring.
    pub fn dehomogenize(&self, var: &str, value: &FieldElement) -> Result<Self> {
        let i = self.ring.var_index(var)?;
        Ok(self.evaluate_at(i, value))
    }

    pub fn evaluate_at(&self, i: usize, value: &FieldElement) -> Self {
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = m.clone();
            let k = e.0[i];
            e.0[i] = 0;
            let mut coeff = c.clone();
            for _ in 0..k {
                coeff = coeff.mul(value);
            }
            (e, coeff)
        });
        Self::from_terms(&self.ring, terms.collect::<Vec<_>>())
    }

    /// Substitute `var_i := q` (q in the same ring).
    pub fn substitute(&self, i: usize, q: &Polynomial) -> Self {
        let maxe = self.degree_in(i);
        let mut powers = vec![Polynomial::one(&self.ring)];
        for k in 1..=maxe as usize {
            let next = &powers[k - 1] * q;
            powers.push(next);
        }
        let mut acc: BTreeMap<Monomial, FieldElement> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut rest = m.clone();
            let k = rest.0[i] as usize;
            rest.0[i] = 0;
            for (pm, pc) in &powers[k].terms {
                let mm = rest.mul(pm);
                let cc = c.mul(pc);
                match acc.get_mut(&mm) {
                    Some(v) => *v = v.add(&cc),
                    None => {
                        acc.insert(mm, cc);
                    }
                }
            }
        }
        let terms = acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect();
        Self::from_sorted_terms(&self.ring, terms)
    }

    /// Move into `target`, sending source variable `i` to target variable
    /// `map[i]`. Fails if a used variable maps to `None`.
    pub fn map_into(&self, target: &Ring, map: &[Option<usize>]) -> Result<Self> {
        assert_eq!(map.len(), self.ring.nvars());
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut e = vec![0; target.nvars()];
            for (i, &k) in m.0.iter().enumerate() {
                if k > 0 {
                    let j = map[i].ok_or_else(|| Error::UnknownVariable(self.ring.vars[i].clone()))?;
                    e[j] += k;
                }
            }
            terms.push((Monomial(e), c.clone()));
        }
        Ok(Self::from_terms(target, terms))
    }

    /// Move into `target` matching variables by name.
    pub fn to_ring(&self, target: &Ring) -> Result<Self> {
        if same_ring(&self.ring, target) {
            return Ok(self.clone());
        }
        if self.ring.field != target.field {
            return Err(Error::RingMismatch);
        }
        let map: Vec<Option<usize>> = self.ring.vars.iter().map(|v| target.var_index(v).ok()).collect();
        self.map_into(target, &map)
    }

    /// Exact division by `g`, if `g` divides `self`.
    pub fn div_exact(&self, g: &Polynomial) -> Result<Option<Self>> {
        self.check_ring(g)?;
        if g.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let lex = MonomialOrder::Lex;
        let (gm, gc) = g.leading_term(&lex)?;
        let ginv = gc.inv().expect("nonzero");
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.terms.first().cloned() {
            let Some(q) = m.div(&gm) else { return Ok(None) };
            let qc = c.mul(&ginv);
            let step = g.mul_monomial(&q).scale(&qc);
            rem = rem.checked_sub(&step)?;
            quot.push((q, qc));
        }
        Ok(Some(Self::from_terms(&self.ring, quot)))
    }
}

macro_rules! forward_op {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl std::ops::$tr<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            /// Panics on ring mismatch; use the `checked_*` form to get an error.
            fn $m(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).expect("ring mismatch")
            }
        }
    };
}
forward_op!(Add, add, checked_add);
forward_op!(Sub, sub, checked_sub);
forward_op!(Mul, mul, checked_mul);

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::neg(self)
    }
}

/// Parseable source form, e.g. `3*x^2*y - x*z^2`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { c.neg() } else { c.clone() };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mut factors = Vec::new();
            if !abs.is_one() || m.degree() == 0 {
                factors.push(match &abs {
                    FieldElement::Rational(q) if !q.is_integer() => format!("({q})"),
                    _ => abs.to_string(),
                });
            }
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.ring.vars[i].clone()),
                    _ => factors.push(format!("{}^{}", self.ring.vars[i], e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}
