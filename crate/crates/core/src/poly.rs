//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! A [`Polynomial`] knows only how many variables it lives in; variable names
//! belong to the parser and to variety descriptors. Terms are kept sorted in
//! descending graded reverse lexicographic order with `x1 > x2 > ... > xn`,
//! which makes equality structural and addition a linear merge.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact rational number; always stored in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// Shorthand for an integer-valued [`Rational`].
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `num / den`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("ambient mismatch: {left} vs {right} variables")]
    AmbientMismatch { left: usize, right: usize },
    #[error("variable index {index} out of range for {nvars} variables")]
    IndexOutOfRange { index: usize, nvars: usize },
    #[error("point has {got} coordinates, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("leading term of the zero polynomial")]
    ZeroPolynomial,
}

/// Exponent vector of a monomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn from_exponents(e: Vec<u32>) -> Self {
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

/// Term order on monomials of equal length.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    Lex,
    #[default]
    Grevlex,
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.0.cmp(&b.0),
            MonomialOrder::Grevlex => grevlex(a, b),
        }
    }
}

fn grevlex(a: &Monomial, b: &Monomial) -> Ordering {
    match a.degree().cmp(&b.degree()) {
        Ordering::Equal => {}
        o => return o,
    }
    for (x, y) in a.0.iter().zip(&b.0).rev() {
        match x.cmp(y) {
            Ordering::Equal => continue,
            // smaller exponent in the last differing variable wins
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}

/// Multivariate polynomial over the rationals in a fixed number of variables.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    // descending grevlex, no zero coefficients
    terms: Vec<(Monomial, Rational)>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: Vec::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(Monomial::one(nvars), c)
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let nvars = m.nvars();
        if c.is_zero() {
            Self::zero(nvars)
        } else {
            Polynomial { nvars, terms: vec![(m, c)] }
        }
    }

    /// The coordinate function `x_i` (zero-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        Self::monomial(Monomial::var(nvars, i), Rational::one())
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut v: Vec<(Monomial, Rational)> = terms.into_iter().collect();
        debug_assert!(v.iter().all(|(m, _)| m.nvars() == nvars));
        v.sort_by(|a, b| grevlex(&b.0, &a.0));
        let mut out: Vec<(Monomial, Rational)> = Vec::with_capacity(v.len());
        for (m, c) in v {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += c,
                _ => {
                    if let Some((_, lc)) = out.last() {
                        if lc.is_zero() {
                            out.pop();
                        }
                    }
                    out.push((m, c));
                }
            }
        }
        if let Some((_, lc)) = out.last() {
            if lc.is_zero() {
                out.pop();
            }
        }
        Polynomial { nvars, terms: out }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// Constant value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending grevlex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().map(|(m, c)| (m, c))
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms
            .iter()
            .find(|(tm, _)| tm == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.0[i]).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.iter().map(|(m, _)| m.degree());
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn homogeneous_part(&self, d: u32) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(m, _)| m.degree() == d).cloned().collect(),
        }
    }

    pub fn leading_term(&self, order: MonomialOrder) -> Result<(Monomial, Rational), PolyError> {
        let t = match order {
            MonomialOrder::Grevlex => self.terms.first(),
            MonomialOrder::Lex => self.terms.iter().max_by(|a, b| order.cmp(&a.0, &b.0)),
        };
        t.cloned().ok_or(PolyError::ZeroPolynomial)
    }

    fn check_ambient(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(PolyError::AmbientMismatch { left: self.nvars, right: other.nvars })
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ambient(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ambient(other)?;
        Ok(self.product(other))
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match grevlex(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), if negate { -c } else { c.clone() })));
        Polynomial { nvars: self.nvars, terms: out }
    }

    fn product(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                terms.push((m1.mul(m2), c1 * c2));
            }
        }
        Polynomial::from_terms(self.nvars, terms)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect(),
        }
    }

    /// Multiplies by `c * m`; the order is preserved so no re-sort is needed.
    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(tm, d)| (tm.mul(m), d * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one(self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Divides by the leading (grevlex) coefficient.
    pub fn monic(&self) -> Polynomial {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    /// Formal partial derivative in variable `i`; panics if out of range.
    pub fn diff(&self, i: usize) -> Polynomial {
        assert!(i < self.nvars, "variable index {i} out of range");
        let terms = self.terms.iter().filter(|(m, _)| m.0[i] > 0).map(|(m, c)| {
            let mut e = m.0.clone();
            let k = e[i];
            e[i] -= 1;
            (Monomial(e), c * rat(k as i64))
        });
        Polynomial::from_terms(self.nvars, terms)
    }

    pub fn partial_derivative(&self, i: usize) -> Result<Polynomial, PolyError> {
        if i >= self.nvars {
            return Err(PolyError::IndexOutOfRange { index: i, nvars: self.nvars });
        }
        Ok(self.diff(i))
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational, PolyError> {
        if point.len() != self.nvars {
            return Err(PolyError::DimensionMismatch { expected: self.nvars, got: point.len() });
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Substitutes `images[i]` for `x_i`; all images share one ambient.
    pub fn substitute(&self, images: &[Polynomial]) -> Polynomial {
        assert_eq!(images.len(), self.nvars);
        let target = images.first().map(|p| p.nvars).unwrap_or(0);
        let maxdeg: Vec<u32> = (0..self.nvars).map(|i| self.degree_in(i).unwrap_or(0)).collect();
        let powers: Vec<Vec<Polynomial>> = images
            .iter()
            .zip(&maxdeg)
            .map(|(p, &d)| {
                let mut v = vec![Polynomial::one(target)];
                for k in 1..=d as usize {
                    let next = &v[k - 1] * p;
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = &t * &powers[i][e as usize];
                }
            }
            acc += &t;
        }
        acc
    }

    /// Re-embeds into `nvars` variables, mapping old variable `i` to `map[i]`.
    pub fn remap(&self, nvars: usize, map: &[usize]) -> Polynomial {
        assert_eq!(map.len(), self.nvars);
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = vec![0; nvars];
            for (i, &k) in m.0.iter().enumerate() {
                e[map[i]] += k;
            }
            (Monomial(e), c.clone())
        });
        Polynomial::from_terms(nvars, terms)
    }

    /// Appends `extra` fresh variables after the existing ones.
    pub fn extend_vars(&self, extra: usize) -> Polynomial {
        let map: Vec<usize> = (0..self.nvars).collect();
        self.remap(self.nvars + extra, &map)
    }

    /// Exact quotient by `d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Polynomial) -> Option<Polynomial> {
        assert!(!d.is_zero(), "division by zero polynomial");
        let (dm, dc) = d.terms[0].clone();
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.terms.first().cloned() {
            if !dm.divides(&m) {
                return None;
            }
            let qm = dm.quotient_of(&m);
            let qc = &c / &dc;
            rem -= &d.mul_term(&qm, &qc);
            quot.push((qm, qc));
        }
        Some(Polynomial::from_terms(self.nvars, quot))
    }

    /// Coefficient of `x_i^k` viewed as a polynomial in the other variables.
    pub fn coefficient_in(&self, i: usize, k: u32) -> Polynomial {
        let terms = self.terms.iter().filter(|(m, _)| m.0[i] == k).map(|(m, c)| {
            let mut e = m.0.clone();
            e[i] = 0;
            (Monomial(e), c.clone())
        });
        Polynomial::from_terms(self.nvars, terms)
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            for (i, e) in m.0.iter().enumerate() {
                if *e > 0 {
                    write!(f, "*x{}^{}", i + 1, e)?;
                }
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("polynomial addition")
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.check_ambient(rhs).expect("polynomial subtraction");
        self.merge(rhs, true)
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("polynomial multiplication")
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        *self = &*self - rhs;
    }
}

/// Smallest positive integer multiple that clears denominators, divided by
/// the gcd of numerators, with positive leading coefficient. Used to present
/// generators without spurious rational factors.
pub fn primitive_part(p: &Polynomial) -> Polynomial {
    use num_integer::Integer;
    if p.is_zero() {
        return p.clone();
    }
    let mut l = BigInt::one();
    let mut g = BigInt::zero();
    for (_, c) in p.terms() {
        l = l.lcm(c.denom());
        g = g.gcd(c.numer());
    }
    let mut s = Rational::new(l, g);
    if p.terms[0].1.is_negative() {
        s = -s;
    }
    p.scale(&s)
}
