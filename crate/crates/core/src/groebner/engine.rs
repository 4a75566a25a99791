//! Buchberger's algorithm over free modules `R^rank`, `R = Q[x1..xn]`.
//!
//! Ideals are the rank-one case. Elements are sparse lists of
//! `(position, monomial, coefficient)` sorted descending in a module order.
//! Optional cofactor tracking records every basis element as a combination
//! of the original inputs.

use std::cmp::Ordering;
use std::collections::HashSet;

use num_traits::{One, Zero};

use crate::poly::{Monomial, MonomialOrder, Polynomial, Rational};

/// How positions interact with the term order on `R^rank`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModuleOrderKind {
    /// Compare positions first (lower index is larger), then terms.
    PositionOverTerm,
    /// Compare terms first, then positions.
    TermOverPosition,
    /// Positions `< head` dominate everything and are compared
    /// position-over-term; the remaining positions are term-over-position.
    /// An element whose leading position is `>= head` has zero head block.
    Elimination { head: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModuleOrder {
    pub term: MonomialOrder,
    pub kind: ModuleOrderKind,
}

impl Default for ModuleOrder {
    fn default() -> Self {
        ModuleOrder { term: MonomialOrder::Grevlex, kind: ModuleOrderKind::PositionOverTerm }
    }
}

impl ModuleOrder {
    pub fn ideal(term: MonomialOrder) -> Self {
        ModuleOrder { term, kind: ModuleOrderKind::PositionOverTerm }
    }

    pub fn cmp(&self, (pa, ma): (usize, &Monomial), (pb, mb): (usize, &Monomial)) -> Ordering {
        let pot = || pb.cmp(&pa).then_with(|| self.term.cmp(ma, mb));
        let top = || self.term.cmp(ma, mb).then_with(|| pb.cmp(&pa));
        match self.kind {
            ModuleOrderKind::PositionOverTerm => pot(),
            ModuleOrderKind::TermOverPosition => top(),
            ModuleOrderKind::Elimination { head } => match (pa < head, pb < head) {
                (true, true) => pot(),
                (true, false) => Ordering::Greater,
                (false, true) => Ordering::Less,
                (false, false) => top(),
            },
        }
    }
}

pub(crate) type Term = (usize, Monomial, Rational);

/// Module element with terms sorted descending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct MVec {
    pub terms: Vec<Term>,
}

impl MVec {
    pub fn from_components(comps: &[Polynomial], order: &ModuleOrder) -> Self {
        let mut terms: Vec<Term> = comps
            .iter()
            .enumerate()
            .flat_map(|(pos, p)| p.terms().map(move |(m, c)| (pos, m.clone(), c.clone())))
            .collect();
        terms.sort_by(|a, b| order.cmp((b.0, &b.1), (a.0, &a.1)));
        MVec { terms }
    }

    pub fn to_components(&self, rank: usize, nvars: usize) -> Vec<Polynomial> {
        let mut buckets: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); rank];
        for (pos, m, c) in &self.terms {
            buckets[*pos].push((m.clone(), c.clone()));
        }
        buckets.into_iter().map(|b| Polynomial::from_terms(nvars, b)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&Term> {
        self.terms.first()
    }
}

/// `a - c * m * b`, both sorted descending.
fn sub_scaled(a: &[Term], c: &Rational, m: &Monomial, b: &[Term], order: &ModuleOrder) -> Vec<Term> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let mut bi = b.iter().map(|(p, bm, bc)| (*p, bm.mul(m), bc * c)).peekable();
    while i < a.len() {
        let Some(next) = bi.peek() else { break };
        match order.cmp((a[i].0, &a[i].1), (next.0, &next.1)) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                let (p, bm, bc) = bi.next().expect("peeked");
                out.push((p, bm, -bc));
            }
            Ordering::Equal => {
                let (_, _, bc) = bi.next().expect("peeked");
                let v = &a[i].2 - bc;
                if !v.is_zero() {
                    out.push((a[i].0, a[i].1.clone(), v));
                }
                i += 1;
            }
        }
    }
    out.extend(a[i..].iter().cloned());
    out.extend(bi.map(|(p, bm, bc)| (p, bm, -bc)));
    out
}

fn scale_terms(v: &[Term], c: &Rational) -> Vec<Term> {
    v.iter().map(|(p, m, d)| (*p, m.clone(), d * c)).collect()
}

/// Basis element with an optional expression in the original inputs.
#[derive(Debug, Clone)]
pub(crate) struct Element {
    pub vec: MVec,
    pub cofactors: Option<Vec<Polynomial>>,
}

#[derive(Clone, Copy)]
pub(crate) struct Engine {
    pub nvars: usize,
    pub order: ModuleOrder,
    pub track: bool,
    pub ninputs: usize,
}

/// Result of a full reduction.
pub(crate) struct Reduction {
    pub remainder: MVec,
    /// `h - remainder` as a combination of the original inputs.
    pub cofactors: Option<Vec<Polynomial>>,
}

impl Engine {
    fn zero_cofactors(&self) -> Vec<Polynomial> {
        vec![Polynomial::zero(self.nvars); self.ninputs]
    }

    fn axpy(&self, acc: &mut [Polynomial], c: &Rational, m: &Monomial, cof: &[Polynomial]) {
        for (a, q) in acc.iter_mut().zip(cof) {
            if !q.is_zero() {
                *a += &q.mul_term(m, c);
            }
        }
    }

    /// Fully reduces `h` by `basis` (all elements monic).
    pub fn reduce(&self, h: MVec, basis: &[Element], skip: Option<usize>) -> Reduction {
        let mut h = h.terms;
        let mut start = 0;
        let mut rem: Vec<Term> = Vec::new();
        let mut cof = if self.track { Some(self.zero_cofactors()) } else { None };
        while start < h.len() {
            let (pos, lm, lc) = &h[start];
            let divisor = basis.iter().enumerate().find(|(k, g)| {
                Some(*k) != skip
                    && g.vec.lead().is_some_and(|(gp, gm, _)| gp == pos && gm.divides(lm))
            });
            match divisor {
                Some((_, g)) => {
                    let gl = g.vec.lead().expect("nonzero basis element");
                    let m = gl.1.quotient_of(lm);
                    let c = lc.clone();
                    if let (Some(acc), Some(gc)) = (cof.as_mut(), g.cofactors.as_ref()) {
                        self.axpy(acc, &c, &m, gc);
                    }
                    h = sub_scaled(&h[start + 1..], &c, &m, &g.vec.terms[1..], &self.order);
                    start = 0;
                }
                None => {
                    rem.push(h[start].clone());
                    start += 1;
                }
            }
        }
        Reduction { remainder: MVec { terms: rem }, cofactors: cof }
    }

    /// Scales so the leading coefficient is one.
    fn make_monic(&self, e: &mut Element) {
        let Some((_, _, lc)) = e.vec.lead() else { return };
        if lc.is_one() {
            return;
        }
        let inv = lc.recip();
        e.vec.terms = scale_terms(&e.vec.terms, &inv);
        if let Some(c) = e.cofactors.as_mut() {
            for q in c.iter_mut() {
                *q = q.scale(&inv);
            }
        }
    }

    fn s_vector(&self, a: &Element, b: &Element) -> Element {
        let (pa, ma, _) = a.vec.lead().expect("nonzero");
        let (_, mb, _) = b.vec.lead().expect("nonzero");
        debug_assert_eq!(pa, &b.vec.lead().expect("nonzero").0);
        let l = ma.lcm(mb);
        let ua = ma.quotient_of(&l);
        let ub = mb.quotient_of(&l);
        let one = Rational::one();
        let left: Vec<Term> = a.vec.terms[1..].iter().map(|(p, m, c)| (*p, m.mul(&ua), c.clone())).collect();
        let terms = sub_scaled(&left, &one, &ub, &b.vec.terms[1..], &self.order);
        let cofactors = match (&a.cofactors, &b.cofactors) {
            (Some(ca), Some(cb)) => Some(
                ca.iter().zip(cb).map(|(qa, qb)| &qa.mul_term(&ua, &one) - &qb.mul_term(&ub, &one)).collect(),
            ),
            _ => None,
        };
        Element { vec: MVec { terms }, cofactors }
    }

    /// Reduced Gröbner basis of the submodule generated by `inputs`.
    pub fn groebner(&self, inputs: Vec<MVec>, rank: usize) -> Vec<Element> {
        let mut basis: Vec<Element> = Vec::new();
        let mut pending: HashSet<(usize, usize)> = HashSet::new();
        let mut queue: Vec<(usize, usize, Monomial)> = Vec::new();

        let seeds: Vec<Element> = inputs
            .into_iter()
            .enumerate()
            .map(|(k, v)| {
                let cofactors = self.track.then(|| {
                    let mut c = self.zero_cofactors();
                    c[k] = Polynomial::one(self.nvars);
                    c
                });
                Element { vec: v, cofactors }
            })
            .collect();

        for seed in seeds {
            self.insert(seed, &mut basis, &mut pending, &mut queue);
        }

        while let Some(idx) = self.select(&queue) {
            let (i, j, lcm) = queue.swap_remove(idx);
            pending.remove(&(i, j));
            if rank == 1 {
                let li = &basis[i].vec.lead().expect("nonzero").1;
                let lj = &basis[j].vec.lead().expect("nonzero").1;
                if li.is_coprime(lj) {
                    continue;
                }
            }
            if self.chain_criterion(i, j, &lcm, &basis, &pending) {
                continue;
            }
            let s = self.s_vector(&basis[i], &basis[j]);
            self.insert(s, &mut basis, &mut pending, &mut queue);
        }
        self.interreduce(basis)
    }

    fn insert(
        &self,
        e: Element,
        basis: &mut Vec<Element>,
        pending: &mut HashSet<(usize, usize)>,
        queue: &mut Vec<(usize, usize, Monomial)>,
    ) {
        let red = self.reduce(e.vec, basis, None);
        if red.remainder.is_zero() {
            return;
        }
        let cofactors = match (e.cofactors, red.cofactors) {
            (Some(mut c), Some(sub)) => {
                for (a, b) in c.iter_mut().zip(&sub) {
                    *a -= b;
                }
                Some(c)
            }
            _ => None,
        };
        let mut new = Element { vec: red.remainder, cofactors };
        self.make_monic(&mut new);
        let (np, nm, _) = new.vec.lead().expect("nonzero").clone();
        let k = basis.len();
        for (i, g) in basis.iter().enumerate() {
            let (gp, gm, _) = g.vec.lead().expect("nonzero");
            if *gp == np {
                pending.insert((i, k));
                queue.push((i, k, gm.lcm(&nm)));
            }
        }
        basis.push(new);
    }

    /// Normal strategy: smallest lcm first, ties broken by indices.
    fn select(&self, queue: &[(usize, usize, Monomial)]) -> Option<usize> {
        queue
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                a.2.degree()
                    .cmp(&b.2.degree())
                    .then_with(|| self.order.term.cmp(&a.2, &b.2))
                    .then_with(|| (a.1, a.0).cmp(&(b.1, b.0)))
            })
            .map(|(k, _)| k)
    }

    fn chain_criterion(
        &self,
        i: usize,
        j: usize,
        lcm: &Monomial,
        basis: &[Element],
        pending: &HashSet<(usize, usize)>,
    ) -> bool {
        let pos = basis[i].vec.lead().expect("nonzero").0;
        let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
        basis.iter().enumerate().any(|(k, g)| {
            if k == i || k == j {
                return false;
            }
            let (gp, gm, _) = g.vec.lead().expect("nonzero");
            *gp == pos
                && gm.divides(lcm)
                && !pending.contains(&key(i, k))
                && !pending.contains(&key(j, k))
        })
    }

    fn interreduce(&self, basis: Vec<Element>) -> Vec<Element> {
        // drop elements whose leading term is divisible by another's
        let leads: Vec<(usize, Monomial)> =
            basis.iter().map(|g| {
                let (p, m, _) = g.vec.lead().expect("nonzero");
                (*p, m.clone())
            }).collect();
        let mut keep = Vec::new();
        for (i, (pi, mi)) in leads.iter().enumerate() {
            let redundant = leads.iter().enumerate().any(|(j, (pj, mj))| {
                j != i && pj == pi && mj.divides(mi) && (mj != mi || j < i)
            });
            if !redundant {
                keep.push(i);
            }
        }
        let mut minimal: Vec<Element> = keep.into_iter().map(|i| basis[i].clone()).collect();
        for k in 0..minimal.len() {
            let e = minimal[k].clone();
            let (lead, tail) = e.vec.terms.split_first().expect("nonzero");
            let red = self.reduce(MVec { terms: tail.to_vec() }, &minimal, Some(k));
            let mut terms = vec![lead.clone()];
            terms.extend(red.remainder.terms);
            let cofactors = match (e.cofactors, red.cofactors) {
                (Some(mut c), Some(sub)) => {
                    for (a, b) in c.iter_mut().zip(&sub) {
                        *a -= b;
                    }
                    Some(c)
                }
                _ => None,
            };
            minimal[k] = Element { vec: MVec { terms }, cofactors };
        }
        minimal.sort_by(|a, b| {
            let (pa, ma, _) = a.vec.lead().expect("nonzero");
            let (pb, mb, _) = b.vec.lead().expect("nonzero");
            self.order.cmp((*pa, ma), (*pb, mb))
        });
        minimal
    }

    /// True if every S-vector of `basis` reduces to zero modulo `basis`.
    pub fn s_vectors_reduce_to_zero(&self, basis: &[Element]) -> bool {
        let plain: Vec<Element> = basis.iter().map(|e| Element { vec: e.vec.clone(), cofactors: None }).collect();
        let quiet = Engine { track: false, ..*self };
        for i in 0..plain.len() {
            for j in i + 1..plain.len() {
                if plain[i].vec.lead().map(|t| t.0) != plain[j].vec.lead().map(|t| t.0) {
                    continue;
                }
                let s = quiet.s_vector(&plain[i], &plain[j]);
                if !quiet.reduce(s.vec, &plain, None).remainder.is_zero() {
                    return false;
                }
            }
        }
        true
    }
}
