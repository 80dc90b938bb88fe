//! Buchberger's algorithm on a flat term representation.
//!
//! Polynomials keep their terms sorted in decreasing order for the active
//! monomial order; exponent vectors are stored contiguously. Pairs are
//! pruned with the Gebauer-Möller update (coprime and chain criteria) and
//! selected by minimal sugar.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use super::domain::Domain;
use crate::order::MonomialOrder;

pub(crate) type Exp = u16;

#[derive(Clone, Debug)]
pub(crate) struct Poly<C> {
    pub exps: Vec<Exp>,
    pub coeffs: Vec<C>,
}

impl<C> Poly<C> {
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn mono(&self, nv: usize, k: usize) -> &[Exp] {
        &self.exps[k * nv..(k + 1) * nv]
    }
}

pub(crate) struct Ctx<'a, D: Domain> {
    pub dom: &'a D,
    pub nv: usize,
    pub order: &'a MonomialOrder,
    pub weights: &'a [u32],
}

/// Divisibility signature: each variable gets `64 / nv` bits (at least one),
/// bit `j` set when its exponent exceeds `j`. If `a` divides `b` then
/// `mask(a) & !mask(b) == 0`.
fn mask(m: &[Exp]) -> u64 {
    let per = (64 / m.len().max(1)).max(1);
    let mut bits = 0u64;
    for (i, &e) in m.iter().enumerate() {
        let base = (i * per) % 64;
        for j in 0..per.min(e as usize) {
            bits |= 1 << ((base + j) % 64);
        }
    }
    bits
}

fn divides(a: &[Exp], b: &[Exp]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[Exp], b: &[Exp]) -> Vec<Exp> {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn coprime(a: &[Exp], b: &[Exp]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

impl<'a, D: Domain> Ctx<'a, D> {
    pub fn wdeg(&self, m: &[Exp]) -> u32 {
        m.iter().zip(self.weights).map(|(&e, &w)| e as u32 * w).sum()
    }

    fn cmp(&self, a: &[Exp], b: &[Exp]) -> Ordering {
        self.order.cmp(a, b)
    }

    /// Sort and merge raw terms into a canonical engine polynomial.
    pub fn from_terms(&self, mut terms: Vec<(Vec<Exp>, D::C)>) -> Poly<D::C> {
        terms.sort_by(|a, b| self.cmp(&b.0, &a.0));
        let mut exps = Vec::with_capacity(terms.len() * self.nv);
        let mut coeffs: Vec<D::C> = Vec::with_capacity(terms.len());
        let mut last: Option<Vec<Exp>> = None;
        for (m, c) in terms {
            if last.as_ref() == Some(&m) {
                let k = coeffs.len() - 1;
                coeffs[k] = self.dom.add(&coeffs[k], &c);
                continue;
            }
            exps.extend_from_slice(&m);
            coeffs.push(c);
            last = Some(m);
        }
        // drop zeros
        let mut out = Poly { exps: Vec::with_capacity(exps.len()), coeffs: Vec::with_capacity(coeffs.len()) };
        for (k, c) in coeffs.into_iter().enumerate() {
            if !self.dom.is_zero(&c) {
                out.exps.extend_from_slice(&exps[k * self.nv..(k + 1) * self.nv]);
                out.coeffs.push(c);
            }
        }
        out
    }

    pub fn sugar(&self, p: &Poly<D::C>) -> u32 {
        (0..p.len()).map(|k| self.wdeg(p.mono(self.nv, k))).max().unwrap_or(0)
    }

    /// `a*p - b*shift*g`, where the term of `p` at `pos` cancels against the
    /// leading term of `shift*g`.
    fn reduce_step(&self, p: &Poly<D::C>, pos: usize, a: &D::C, b: &D::C, shift: &[Exp], g: &Poly<D::C>) -> Poly<D::C> {
        let nv = self.nv;
        let dom = self.dom;
        let scale_p = !dom.is_one(a);
        let nb = dom.neg(b);
        let mut out = Poly {
            exps: Vec::with_capacity(p.exps.len() + g.exps.len()),
            coeffs: Vec::with_capacity(p.len() + g.len()),
        };
        for k in 0..pos {
            out.exps.extend_from_slice(p.mono(nv, k));
            out.coeffs.push(if scale_p { dom.mul(&p.coeffs[k], a) } else { p.coeffs[k].clone() });
        }
        let mut i = pos + 1;
        let mut j = 1;
        let mut buf: Vec<Exp> = vec![0; nv];
        let shifted = |j: usize, buf: &mut Vec<Exp>| {
            for (t, (x, y)) in buf.iter_mut().zip(g.mono(nv, j).iter().zip(shift)) {
                *t = x + y;
            }
        };
        if j < g.len() {
            shifted(j, &mut buf);
        }
        while i < p.len() && j < g.len() {
            let pm = p.mono(nv, i);
            match self.cmp(pm, &buf) {
                Ordering::Greater => {
                    out.exps.extend_from_slice(pm);
                    out.coeffs.push(if scale_p { dom.mul(&p.coeffs[i], a) } else { p.coeffs[i].clone() });
                    i += 1;
                }
                Ordering::Less => {
                    out.exps.extend_from_slice(&buf);
                    out.coeffs.push(dom.mul(&g.coeffs[j], &nb));
                    j += 1;
                    if j < g.len() {
                        shifted(j, &mut buf);
                    }
                }
                Ordering::Equal => {
                    let lhs = if scale_p { dom.mul(&p.coeffs[i], a) } else { p.coeffs[i].clone() };
                    let c = dom.add(&lhs, &dom.mul(&g.coeffs[j], &nb));
                    if !dom.is_zero(&c) {
                        out.exps.extend_from_slice(pm);
                        out.coeffs.push(c);
                    }
                    i += 1;
                    j += 1;
                    if j < g.len() {
                        shifted(j, &mut buf);
                    }
                }
            }
        }
        while i < p.len() {
            out.exps.extend_from_slice(p.mono(nv, i));
            out.coeffs.push(if scale_p { dom.mul(&p.coeffs[i], a) } else { p.coeffs[i].clone() });
            i += 1;
        }
        while j < g.len() {
            shifted(j, &mut buf);
            out.exps.extend_from_slice(&buf);
            out.coeffs.push(dom.mul(&g.coeffs[j], &nb));
            j += 1;
        }
        out
    }

    /// Reduce `p` by `reducers`, starting at term `start`. With `full`, every
    /// later term is reduced; otherwise only the term at `start`. Returns the
    /// remainder, the scalar multiplier applied to `p` (exact only when
    /// `exact` is set; otherwise content is divided out along the way), and
    /// the sugar of the result.
    pub fn reduce(
        &self,
        p: Poly<D::C>,
        mut sugar: u32,
        reducers: &[Reducer<'_, D::C>],
        start: usize,
        full: bool,
        exact: bool,
    ) -> (Poly<D::C>, D::C, u32) {
        let nv = self.nv;
        let dom = self.dom;
        let mut mult = dom.one();
        // Terms already known to be final, kept in decreasing order and
        // carrying a pending scalar `out_scale`.
        let mut out = Poly { exps: p.exps[..start * nv].to_vec(), coeffs: p.coeffs[..start].to_vec() };
        let mut out_scale = dom.one();
        let mut rest = Geobucket::new();
        rest.add(self, reversed(nv, &p, start));
        let mut shift = vec![0 as Exp; nv];
        let mut steps = 0usize;
        while let Some((t, c)) = rest.pop_leading(self) {
            let tm = mask(&t);
            let Some(r) = reducers.iter().find(|r| r.mask & !tm == 0 && divides(r.lm, &t)) else {
                if !dom.is_one(&out_scale) {
                    scale_in_place(dom, &mut out.coeffs, &out_scale);
                    out_scale = dom.one();
                }
                out.exps.extend_from_slice(&t);
                out.coeffs.push(c);
                if !full {
                    break;
                }
                continue;
            };
            for (s, (x, y)) in shift.iter_mut().zip(t.iter().zip(r.lm)) {
                *s = x - y;
            }
            let (a, b) = dom.cancel(&c, &r.poly.coeffs[0]);
            sugar = sugar.max(self.wdeg(&shift) + r.sugar);
            if !dom.is_one(&a) {
                rest.scale(dom, &a);
                out_scale = dom.mul(&out_scale, &a);
                if exact {
                    mult = dom.mul(&mult, &a);
                }
            }
            let nb = dom.neg(&b);
            let g = r.poly;
            let mut tail = Poly { exps: Vec::with_capacity(g.exps.len() - nv), coeffs: Vec::with_capacity(g.len() - 1) };
            for k in (1..g.len()).rev() {
                tail.exps.extend(g.mono(nv, k).iter().zip(&shift).map(|(x, y)| x + y));
                tail.coeffs.push(dom.mul(&g.coeffs[k], &nb));
            }
            rest.add(self, tail);
            steps += 1;
            if !exact && steps % 32 == 0 && D::CONTENT {
                rest.flatten(self);
                if !dom.is_one(&out_scale) {
                    scale_in_place(dom, &mut out.coeffs, &out_scale);
                    out_scale = dom.one();
                }
                let g = dom.content(out.coeffs.iter().chain(rest.coefficients()));
                if !dom.is_one(&g) {
                    for c in out.coeffs.iter_mut() {
                        *c = dom.div_exact(c, &g);
                    }
                    rest.divide(dom, &g);
                }
            }
        }
        if !dom.is_one(&out_scale) {
            scale_in_place(dom, &mut out.coeffs, &out_scale);
        }
        // Whatever is left in the buckets follows the emitted terms.
        let tail = rest.into_poly(self);
        for k in (0..tail.len()).rev() {
            out.exps.extend_from_slice(tail.mono(nv, k));
            out.coeffs.push(tail.coeffs[k].clone());
        }
        (out, mult, sugar)
    }

    /// Sum of two polynomials stored in increasing order.
    fn merge_ascending(&self, a: Poly<D::C>, b: Poly<D::C>) -> Poly<D::C> {
        let nv = self.nv;
        if a.is_empty() {
            return b;
        }
        if b.is_empty() {
            return a;
        }
        let mut out = Poly { exps: Vec::with_capacity(a.exps.len() + b.exps.len()), coeffs: Vec::with_capacity(a.len() + b.len()) };
        let (mut i, mut j) = (0, 0);
        let mut ac = a.coeffs.into_iter();
        let mut bc = b.coeffs.into_iter();
        while i < a.exps.len() / nv && j < b.exps.len() / nv {
            let (am, bm) = (&a.exps[i * nv..(i + 1) * nv], &b.exps[j * nv..(j + 1) * nv]);
            match self.cmp(am, bm) {
                Ordering::Less => {
                    out.exps.extend_from_slice(am);
                    out.coeffs.push(ac.next().unwrap());
                    i += 1;
                }
                Ordering::Greater => {
                    out.exps.extend_from_slice(bm);
                    out.coeffs.push(bc.next().unwrap());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = self.dom.add(&ac.next().unwrap(), &bc.next().unwrap());
                    if !self.dom.is_zero(&c) {
                        out.exps.extend_from_slice(am);
                        out.coeffs.push(c);
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.exps.extend_from_slice(&a.exps[i * nv..]);
        out.coeffs.extend(ac);
        out.exps.extend_from_slice(&b.exps[j * nv..]);
        out.coeffs.extend(bc);
        out
    }

    fn spoly(&self, f: &Poly<D::C>, g: &Poly<D::C>, l: &[Exp]) -> Poly<D::C> {
        let nv = self.nv;
        let (a, b) = self.dom.cancel(&f.coeffs[0], &g.coeffs[0]);
        // a*(l/lm f)*f - b*(l/lm g)*g
        let sf: Vec<Exp> = l.iter().zip(f.mono(nv, 0)).map(|(x, y)| x - y).collect();
        let sg: Vec<Exp> = l.iter().zip(g.mono(nv, 0)).map(|(x, y)| x - y).collect();
        let ff = self.shift_scale(f, &sf, &a);
        // Treat ff's leading term as the one cancelled by sg*g.
        self.reduce_step(&ff, 0, &self.dom.one(), &b, &sg, g)
    }

    fn shift_scale(&self, f: &Poly<D::C>, shift: &[Exp], a: &D::C) -> Poly<D::C> {
        let nv = self.nv;
        let mut out = Poly { exps: Vec::with_capacity(f.exps.len()), coeffs: Vec::with_capacity(f.len()) };
        let one = self.dom.is_one(a);
        for k in 0..f.len() {
            out.exps.extend(f.mono(nv, k).iter().zip(shift).map(|(x, y)| x + y));
            out.coeffs.push(if one { f.coeffs[k].clone() } else { self.dom.mul(&f.coeffs[k], a) });
        }
        out
    }

    pub fn normalize(&self, p: &mut Poly<D::C>) {
        self.dom.normalize(&mut p.coeffs);
    }
}

pub(crate) struct Reducer<'p, C> {
    pub lm: &'p [Exp],
    pub mask: u64,
    pub sugar: u32,
    pub poly: &'p Poly<C>,
}

pub(crate) fn reducers<'p, C>(nv: usize, polys: impl IntoIterator<Item = &'p Poly<C>>) -> Vec<Reducer<'p, C>> {
    polys
        .into_iter()
        .filter(|p| !p.is_empty())
        .map(|p| {
            let lm = p.mono(nv, 0);
            Reducer { lm, mask: mask(lm), sugar: 0, poly: p }
        })
        .collect()
}

struct Elem<C> {
    poly: Poly<C>,
    sugar: u32,
    active: bool,
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Vec<Exp>,
    sugar: u32,
}

/// Reduced Gröbner basis of `gens`, sorted by increasing leading monomial.
pub(crate) fn buchberger<D: Domain>(ctx: &Ctx<'_, D>, gens: Vec<Poly<D::C>>) -> Vec<Poly<D::C>> {
    let nv = ctx.nv;
    let mut basis: Vec<Elem<D::C>> = Vec::new();
    let mut pairs: Vec<Option<Pair>> = Vec::new();
    let mut heap: BinaryHeap<Reverse<(u32, u32, usize)>> = BinaryHeap::new();

    // Seed with the input, reduced against what came before, lowest first.
    let mut input: Vec<(Poly<D::C>, u32)> = gens
        .into_iter()
        .filter(|p| !p.is_empty())
        .map(|p| {
            let s = ctx.sugar(&p);
            (p, s)
        })
        .collect();
    input.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| ctx.cmp(a.0.mono(nv, 0), b.0.mono(nv, 0))));

    let mut pending: Vec<(Poly<D::C>, u32)> = input;
    pending.reverse();

    loop {
        // Take the next polynomial: an input generator or the S-polynomial of
        // the cheapest pair, whichever has the smaller sugar.
        let next_pair_sugar = loop {
            match heap.peek() {
                Some(Reverse((s, _, idx))) => {
                    if pairs[*idx].is_none() {
                        heap.pop();
                        continue;
                    }
                    break Some(*s);
                }
                None => break None,
            }
        };
        let candidate = match (pending.last(), next_pair_sugar) {
            (None, None) => break,
            (Some((_, s)), Some(ps)) if ps < *s => None,
            (Some(_), _) => pending.pop(),
            (None, Some(_)) => None,
        };
        let (p, sugar) = match candidate {
            Some(x) => x,
            None => {
                let Reverse((_, _, idx)) = heap.pop().unwrap();
                let pair = pairs[idx].take().unwrap();
                let (f, g) = (&basis[pair.i], &basis[pair.j]);
                let sp = ctx.spoly(&f.poly, &g.poly, &pair.lcm);
                (sp, pair.sugar)
            }
        };
        let reds = {
            let mut r = reducers(nv, basis.iter().filter(|e| e.active).map(|e| &e.poly));
            let sugars: Vec<u32> = basis.iter().filter(|e| e.active && !e.poly.is_empty()).map(|e| e.sugar).collect();
            for (red, s) in r.iter_mut().zip(sugars) {
                red.sugar = s;
            }
            r
        };
        let (h, _, hsugar) = ctx.reduce(p, sugar, &reds, 0, false, false);
        if h.is_empty() {
            continue;
        }
        if h.mono(nv, 0).iter().all(|&e| e == 0) {
            // unit ideal
            let mut one = Poly { exps: vec![0; nv], coeffs: vec![ctx.dom.one()] };
            ctx.normalize(&mut one);
            return vec![one];
        }
        // tail-reduce so later reductions stay short
        let (mut h, _, _) = ctx.reduce(h, 0, &reds, 1, true, false);
        ctx.normalize(&mut h);

        let hidx = basis.len();
        let hlm = h.mono(nv, 0).to_vec();
        basis.push(Elem { poly: h, sugar: hsugar, active: true });
        update(ctx, &mut basis, &mut pairs, &mut heap, hidx, &hlm);
    }

    // Minimal basis: active elements.
    let active: Vec<usize> = (0..basis.len()).filter(|&i| basis[i].active).collect();
    let mut out: Vec<Poly<D::C>> = Vec::with_capacity(active.len());
    for &i in &active {
        let others = reducers(nv, active.iter().filter(|&&j| j != i).map(|&j| &basis[j].poly));
        let (mut q, _, _) = ctx.reduce(basis[i].poly.clone(), 0, &others, 1, true, false);
        ctx.normalize(&mut q);
        out.push(q);
    }
    out.sort_by(|a, b| ctx.cmp(a.mono(nv, 0), b.mono(nv, 0)));
    out
}

fn update<D: Domain>(
    ctx: &Ctx<'_, D>,
    basis: &mut [Elem<D::C>],
    pairs: &mut Vec<Option<Pair>>,
    heap: &mut BinaryHeap<Reverse<(u32, u32, usize)>>,
    h: usize,
    hlm: &[Exp],
) {
    let nv = ctx.nv;
    let hsugar = basis[h].sugar;
    let hw = ctx.wdeg(hlm);
    // candidate pairs (g, h)
    let mut cands: Vec<(usize, Vec<Exp>, bool)> = (0..h)
        .filter(|&g| basis[g].active)
        .map(|g| {
            let glm = basis[g].poly.mono(nv, 0);
            (g, lcm(glm, hlm), coprime(glm, hlm))
        })
        .collect();
    // Gebauer-Möller: keep (h,g1) if coprime or no other remaining/kept pair's
    // lcm divides its lcm.
    let mut kept: Vec<(usize, Vec<Exp>, bool)> = Vec::new();
    while let Some(c) = cands.pop() {
        let dominated = !c.2
            && (cands.iter().any(|o| divides(&o.1, &c.1)) || kept.iter().any(|o| divides(&o.1, &c.1)));
        if !dominated {
            kept.push(c);
        }
    }
    // old pairs: chain criterion
    for slot in pairs.iter_mut() {
        let Some(p) = slot else { continue };
        if divides(hlm, &p.lcm) {
            let li = lcm(basis[p.i].poly.mono(nv, 0), hlm);
            let lj = lcm(basis[p.j].poly.mono(nv, 0), hlm);
            if li != p.lcm && lj != p.lcm {
                *slot = None;
            }
        }
    }
    for (g, l, cop) in kept {
        if cop {
            continue;
        }
        let lw = ctx.wdeg(&l);
        let glm = basis[g].poly.mono(nv, 0);
        let sugar = (basis[g].sugar + lw - ctx.wdeg(glm)).max(hsugar + lw - hw);
        let deg: u32 = l.iter().map(|&e| e as u32).sum();
        let idx = pairs.len();
        pairs.push(Some(Pair { i: g, j: h, lcm: l, sugar }));
        heap.push(Reverse((sugar, deg, idx)));
    }
    for g in 0..h {
        if basis[g].active && divides(hlm, basis[g].poly.mono(nv, 0)) {
            basis[g].active = false;
        }
    }
}

/// Check the Buchberger criterion on `gb` (coprime pairs skipped) and that
/// every element of `gens` reduces to zero. Returns a message on failure.
pub(crate) fn certify<D: Domain>(ctx: &Ctx<'_, D>, gb: &[Poly<D::C>], gens: &[Poly<D::C>]) -> Result<(), String> {
    let nv = ctx.nv;
    let reds = reducers(nv, gb.iter());
    for (k, g) in gens.iter().enumerate() {
        if g.is_empty() {
            continue;
        }
        let (r, _, _) = ctx.reduce(g.clone(), 0, &reds, 0, true, false);
        if !r.is_empty() {
            return Err(format!("input generator {k} does not reduce to zero"));
        }
    }
    for i in 0..gb.len() {
        for j in i + 1..gb.len() {
            let (a, b) = (gb[i].mono(nv, 0), gb[j].mono(nv, 0));
            if coprime(a, b) {
                continue;
            }
            let l = lcm(a, b);
            let s = ctx.spoly(&gb[i], &gb[j], &l);
            let (r, _, _) = ctx.reduce(s, 0, &reds, 0, true, false);
            if !r.is_empty() {
                return Err(format!("S-polynomial of elements {i} and {j} does not reduce to zero"));
            }
        }
    }
    Ok(())
}


fn reversed<C: Clone>(nv: usize, p: &Poly<C>, start: usize) -> Poly<C> {
    let mut out = Poly { exps: Vec::with_capacity(p.exps.len()), coeffs: Vec::with_capacity(p.len()) };
    for k in (start..p.len()).rev() {
        out.exps.extend_from_slice(p.mono(nv, k));
        out.coeffs.push(p.coeffs[k].clone());
    }
    out
}

fn scale_in_place<D: Domain>(dom: &D, coeffs: &mut [D::C], a: &D::C) {
    for c in coeffs.iter_mut() {
        *c = dom.mul(c, a);
    }
}

/// Geometric buckets holding a polynomial as a sum of pieces of growing
/// length, so that adding a short multiple of a reducer does not touch the
/// long tail. Each piece is stored in increasing order (its leading term
/// last) and carries a lazy scalar factor.
struct Geobucket<C> {
    pieces: Vec<(Poly<C>, Option<C>)>,
}

const BUCKET_BASE: usize = 8;

impl<C: Clone> Geobucket<C> {
    fn new() -> Self {
        Geobucket { pieces: Vec::new() }
    }

    fn capacity(k: usize) -> usize {
        BUCKET_BASE << (2 * k)
    }

    fn materialize<D: Domain<C = C>>(dom: &D, piece: &mut (Poly<C>, Option<C>)) {
        if let Some(s) = piece.1.take() {
            scale_in_place(dom, &mut piece.0.coeffs, &s);
        }
    }

    fn add<D: Domain<C = C>>(&mut self, ctx: &Ctx<'_, D>, q: Poly<C>) {
        if q.is_empty() {
            return;
        }
        let mut k = 0;
        while Self::capacity(k) < q.len() {
            k += 1;
        }
        let mut acc = q;
        loop {
            if self.pieces.len() <= k {
                self.pieces.resize_with(k + 1, || (Poly { exps: Vec::new(), coeffs: Vec::new() }, None));
            }
            let mut piece = std::mem::replace(&mut self.pieces[k], (Poly { exps: Vec::new(), coeffs: Vec::new() }, None));
            Self::materialize(ctx.dom, &mut piece);
            acc = ctx.merge_ascending(piece.0, acc);
            if acc.len() <= Self::capacity(k) {
                self.pieces[k] = (acc, None);
                return;
            }
            k += 1;
        }
    }

    fn scale<D: Domain<C = C>>(&mut self, dom: &D, a: &C) {
        for piece in self.pieces.iter_mut().filter(|p| !p.0.is_empty()) {
            piece.1 = Some(match piece.1.take() {
                Some(s) => dom.mul(&s, a),
                None => a.clone(),
            });
        }
    }

    /// Remove and return the leading term, skipping cancelled ones.
    fn pop_leading<D: Domain<C = C>>(&mut self, ctx: &Ctx<'_, D>) -> Option<(Vec<Exp>, C)> {
        let nv = ctx.nv;
        loop {
            let mut best: Option<usize> = None;
            for (k, piece) in self.pieces.iter().enumerate() {
                if piece.0.is_empty() {
                    continue;
                }
                let top = last_mono(nv, &piece.0);
                best = match best {
                    Some(b) if ctx.cmp(last_mono(nv, &self.pieces[b].0), top) != Ordering::Less => Some(b),
                    _ => Some(k),
                };
            }
            let b = best?;
            let lead: Vec<Exp> = last_mono(nv, &self.pieces[b].0).to_vec();
            let mut coeff: Option<C> = None;
            for piece in self.pieces.iter_mut() {
                if piece.0.is_empty() || last_mono(nv, &piece.0) != lead.as_slice() {
                    continue;
                }
                let len = piece.0.len();
                piece.0.exps.truncate((len - 1) * nv);
                let mut c = piece.0.coeffs.pop().unwrap();
                if let Some(s) = &piece.1 {
                    c = ctx.dom.mul(&c, s);
                }
                coeff = Some(match coeff {
                    Some(acc) => ctx.dom.add(&acc, &c),
                    None => c,
                });
            }
            let c = coeff.unwrap();
            if !ctx.dom.is_zero(&c) {
                return Some((lead, c));
            }
        }
    }

    fn flatten<D: Domain<C = C>>(&mut self, ctx: &Ctx<'_, D>) {
        let all = std::mem::take(&mut self.pieces);
        for mut piece in all {
            Self::materialize(ctx.dom, &mut piece);
            self.add(ctx, piece.0);
        }
    }

    fn coefficients(&self) -> impl Iterator<Item = &C> {
        self.pieces.iter().flat_map(|p| p.0.coeffs.iter())
    }

    /// Divide every coefficient by `g`; call only after `flatten`.
    fn divide<D: Domain<C = C>>(&mut self, dom: &D, g: &C) {
        for piece in self.pieces.iter_mut() {
            debug_assert!(piece.1.is_none());
            for c in piece.0.coeffs.iter_mut() {
                *c = dom.div_exact(c, g);
            }
        }
    }

    fn into_poly<D: Domain<C = C>>(self, ctx: &Ctx<'_, D>) -> Poly<C> {
        let mut acc = Poly { exps: Vec::new(), coeffs: Vec::new() };
        for mut piece in self.pieces {
            Self::materialize(ctx.dom, &mut piece);
            acc = ctx.merge_ascending(acc, piece.0);
        }
        acc
    }
}

fn last_mono<C>(nv: usize, p: &Poly<C>) -> &[Exp] {
    &p.exps[p.exps.len() - nv..]
}
