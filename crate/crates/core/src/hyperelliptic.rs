//! Curves `y^2 = 2 h(x)` with `h` monic of odd degree `2m + 1`.
//!
//! Elements of the coordinate ring are kept as pairs `p(x) + y q(x)` of dense
//! univariate polynomials. In the smooth case every vector field is `g τ`
//! with `τ = y ∂x + h'(x) ∂y`, so fields are stored by their coefficient `g`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::linalg::Matrix;
use crate::parser::{format_polynomial, parse_polynomial, ParseError};
use crate::poly::{Polynomial, Rational};
use crate::variety::{VarietyDescriptor, VarietyError};
use crate::vecfield::VectorField;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("h must have odd degree at least 3, got degree {0}")]
    Degree(usize),
    #[error("h must be monic")]
    NotMonic,
    #[error("curve is singular: gcd(h, h') = {0}")]
    Singular(String),
    #[error("the zero field has no such structure")]
    ZeroField,
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Variety(#[from] VarietyError),
}

/// Dense univariate polynomial, coefficients from degree 0 upward, no
/// trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly(Vec<Rational>);

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly(coeffs)
    }

    pub fn zero() -> Self {
        UniPoly(Vec::new())
    }

    pub fn constant(c: Rational) -> Self {
        UniPoly::new(vec![c])
    }

    pub fn monomial(k: usize, c: Rational) -> Self {
        let mut v = vec![Rational::zero(); k + 1];
        v[k] = c;
        UniPoly::new(v)
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        UniPoly::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.0.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.0.last().cloned().unwrap_or_default()
    }

    pub fn add(&self, o: &UniPoly) -> UniPoly {
        let n = self.0.len().max(o.0.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }

    pub fn sub(&self, o: &UniPoly) -> UniPoly {
        self.add(&o.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> UniPoly {
        UniPoly::new(self.0.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        let mut v = vec![Rational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        UniPoly::new(v)
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(self.0.iter().enumerate().skip(1).map(|(k, c)| c * Rational::from_integer(BigInt::from(k))).collect())
    }

    pub fn evaluate(&self, t: &Rational) -> Rational {
        self.0.iter().rev().fold(Rational::zero(), |acc, c| acc * t + c)
    }

    /// Quotient and remainder; `d` must be nonzero.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("nonzero divisor");
        let lead = d.leading();
        let mut r = self.clone();
        let mut q = vec![Rational::zero(); self.0.len().saturating_sub(dd).max(1)];
        while let Some(rd) = r.degree().filter(|&k| k >= dd) {
            let c = r.leading() / &lead;
            q[rd - dd] = c.clone();
            r = r.sub(&UniPoly::monomial(rd - dd, c).mul(d));
        }
        (UniPoly::new(q), r)
    }

    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&(Rational::one() / self.leading()))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// As a polynomial in variable `i` of an `n`-variable ring.
    pub fn to_polynomial(&self, n: usize, i: usize) -> Polynomial {
        let x = Polynomial::var(n, i);
        self.0.iter().enumerate().fold(Polynomial::zero(n), |acc, (k, c)| &acc + &x.pow(k as u32).scale(c))
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_polynomial(&self.to_polynomial(1, 0), &["x".to_string()]))
    }
}

/// `p(x) + y q(x)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct HEElement {
    pub p: UniPoly,
    pub q: UniPoly,
}

impl HEElement {
    pub fn new(p: UniPoly, q: UniPoly) -> Self {
        HEElement { p, q }
    }

    pub fn zero() -> Self {
        HEElement::default()
    }

    pub fn one() -> Self {
        HEElement::new(UniPoly::constant(Rational::one()), UniPoly::zero())
    }

    pub fn x() -> Self {
        HEElement::new(UniPoly::from_i64(&[0, 1]), UniPoly::zero())
    }

    pub fn y() -> Self {
        HEElement::new(UniPoly::zero(), UniPoly::from_i64(&[1]))
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    pub fn add(&self, o: &HEElement) -> HEElement {
        HEElement::new(self.p.add(&o.p), self.q.add(&o.q))
    }

    pub fn sub(&self, o: &HEElement) -> HEElement {
        HEElement::new(self.p.sub(&o.p), self.q.sub(&o.q))
    }

    pub fn scale(&self, c: &Rational) -> HEElement {
        HEElement::new(self.p.scale(c), self.q.scale(c))
    }

    /// Whether `other = c · self` for some rational `c`.
    pub fn is_proportional(&self, other: &HEElement) -> bool {
        let lead = |u: &HEElement| u.q.coeffs().last().or(u.p.coeffs().last()).cloned();
        match (lead(self), lead(other)) {
            (None, None) => true,
            (Some(a), Some(b)) => self.scale(&(b / a)) == *other,
            _ => false,
        }
    }

    /// In the variables `(x, y)`.
    pub fn to_polynomial(&self) -> Polynomial {
        let y = Polynomial::var(2, 1);
        &self.p.to_polynomial(2, 0) + &(&y * &self.q.to_polynomial(2, 0))
    }
}

/// A term `c t^e` of `k[t]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedTerm {
    pub coefficient: Rational,
    pub exponent: u32,
}

impl GradedTerm {
    pub fn mul(&self, o: &GradedTerm) -> GradedTerm {
        GradedTerm { coefficient: &self.coefficient * &o.coefficient, exponent: self.exponent + o.exponent }
    }

    /// Whether the exponent lies in the semigroup generated by 2 and `2m + 1`.
    pub fn in_semigroup(&self, m: u32) -> bool {
        self.exponent.is_multiple_of(2) || self.exponent > 2 * m
    }
}

/// Report from the bounded non-image and non-nilpotency checks.
#[derive(Debug, Clone)]
pub struct ImageReport {
    /// Every nonzero bracket with a basis field has degree above `deg η`.
    pub degree_raised: bool,
    /// No `ν` in the window solves `[η, ν] = η`.
    pub not_in_image: bool,
    /// No `ν` in the window solves `[ν, η] = λ η` with `λ != 0`.
    pub no_eigen_relation: bool,
    /// `ad(η)^K ν != 0` for every basis `ν` not proportional to `η`.
    pub not_nilpotent: bool,
}

impl ImageReport {
    pub fn passes(&self) -> bool {
        self.degree_raised && self.not_in_image && self.no_eigen_relation && self.not_nilpotent
    }
}

#[derive(Debug, Clone)]
pub struct HyperellipticCurve {
    h: UniPoly,
    m: u32,
}

impl HyperellipticCurve {
    pub fn new(h: UniPoly) -> Result<Self, CurveError> {
        let d = h.degree().unwrap_or(0);
        if d < 3 || d.is_multiple_of(2) {
            return Err(CurveError::Degree(d));
        }
        if !h.leading().is_one() {
            return Err(CurveError::NotMonic);
        }
        Ok(HyperellipticCurve { m: (d as u32 - 1) / 2, h })
    }

    /// Parses `h` as a polynomial in `x`.
    pub fn parse(text: &str) -> Result<Self, CurveError> {
        let p = parse_polynomial(text, &["x".to_string()])?;
        let mut c = vec![Rational::zero(); p.degree().unwrap_or(0) as usize + 1];
        for (mon, v) in p.terms() {
            c[mon.exponents()[0] as usize] = v.clone();
        }
        HyperellipticCurve::new(UniPoly::new(c))
    }

    pub fn h(&self) -> &UniPoly {
        &self.h
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn multiply(&self, u: &HEElement, v: &HEElement) -> HEElement {
        let yy = u.q.mul(&v.q).mul(&self.h).scale(&Rational::from_integer(2.into()));
        HEElement::new(u.p.mul(&v.p).add(&yy), u.p.mul(&v.q).add(&u.q.mul(&v.p)))
    }

    pub fn smoothness_gcd(&self) -> UniPoly {
        self.h.gcd(&self.h.derivative())
    }

    pub fn is_smooth(&self) -> bool {
        self.smoothness_gcd().degree() == Some(0)
    }

    /// `(r, s)` components of `τ`, followed by `µ` when the curve is singular.
    pub fn module_generators(&self) -> Vec<(HEElement, HEElement)> {
        let dh = self.h.derivative();
        let tau = (HEElement::y(), HEElement::new(dh.clone(), UniPoly::zero()));
        let d = self.smoothness_gcd();
        if d.degree() == Some(0) {
            return vec![tau];
        }
        let h_d = self.h.div_rem(&d).0.scale(&Rational::from_integer(2.into()));
        let dh_d = dh.div_rem(&d).0;
        vec![tau, (HEElement::new(h_d, UniPoly::zero()), HEElement::new(UniPoly::zero(), dh_d))]
    }

    /// `r ∂x(F) + s ∂y(F)` for `F = y^2 - 2h`, which vanishes exactly for
    /// tangent fields.
    pub fn tangency_defect(&self, field: &(HEElement, HEElement)) -> HEElement {
        let two = Rational::from_integer(2.into());
        let fx = HEElement::new(self.h.derivative().scale(&-two.clone()), UniPoly::zero());
        let fy = HEElement::y().scale(&two);
        self.multiply(&field.0, &fx).add(&self.multiply(&field.1, &fy))
    }

    /// `y τ - d µ` componentwise; zero on every singular curve.
    pub fn relation_defect(&self) -> Option<(HEElement, HEElement)> {
        let gens = self.module_generators();
        let (tau, mu) = (gens.first()?, gens.get(1)?);
        let d = HEElement::new(self.smoothness_gcd(), UniPoly::zero());
        let y = HEElement::y();
        Some((
            self.multiply(&y, &tau.0).sub(&self.multiply(&d, &mu.0)),
            self.multiply(&y, &tau.1).sub(&self.multiply(&d, &mu.1)),
        ))
    }

    /// Filtration degree; `None` for zero.
    pub fn degree(&self, u: &HEElement) -> Option<u32> {
        let dp = u.p.degree().map(|k| 2 * k as u32);
        let dq = u.q.degree().map(|k| 2 * k as u32 + 2 * self.m + 1);
        dp.max(dq)
    }

    pub fn leading_term(&self, u: &HEElement) -> Option<GradedTerm> {
        let d = self.degree(u)?;
        let two = Rational::from_integer(2.into());
        let pow2 = |k: u32| (0..k).fold(Rational::one(), |acc, _| acc * &two);
        Some(if d % 2 == 0 {
            let k = d / 2;
            GradedTerm { coefficient: u.p.coeff(k as usize) * pow2(k), exponent: d }
        } else {
            let k = (d - 2 * self.m - 1) / 2;
            GradedTerm { coefficient: u.q.coeff(k as usize) * pow2(k + self.m + 1), exponent: d }
        })
    }

    /// `τ(p + y q) = (2 h q' + h' q) + y p'`.
    pub fn tau_apply(&self, u: &HEElement) -> HEElement {
        let two = Rational::from_integer(2.into());
        let p = self.h.mul(&u.q.derivative()).scale(&two).add(&self.h.derivative().mul(&u.q));
        HEElement::new(p, u.p.derivative())
    }

    /// Coefficient of `[f τ, g τ] = (f τ(g) - g τ(f)) τ`.
    pub fn bracket(&self, f: &HEElement, g: &HEElement) -> HEElement {
        self.multiply(f, &self.tau_apply(g)).sub(&self.multiply(g, &self.tau_apply(f)))
    }

    /// Degree of the field `g τ`.
    pub fn field_degree(&self, g: &HEElement) -> Option<u32> {
        self.degree(g).map(|d| d + 2 * self.m - 1)
    }

    /// Monomials `x^k`, `x^k y` of degree at most `d`.
    pub fn monomial_basis(&self, d: i64) -> Vec<HEElement> {
        let mut out = Vec::new();
        if d < 0 {
            return out;
        }
        for k in 0..=(d as usize / 2) {
            out.push(HEElement::new(UniPoly::monomial(k, Rational::one()), UniPoly::zero()));
        }
        let shift = 2 * self.m as i64 + 1;
        if d >= shift {
            for k in 0..=((d - shift) as usize / 2) {
                out.push(HEElement::new(UniPoly::zero(), UniPoly::monomial(k, Rational::one())));
            }
        }
        out
    }

    /// Coefficients `g` of the fields `g τ` of degree at most `bound`.
    pub fn field_basis(&self, bound: u32) -> Vec<HEElement> {
        self.monomial_basis(bound as i64 - (2 * self.m as i64 - 1))
    }

    fn coordinates(u: &HEElement, len_p: usize, len_q: usize) -> Vec<Rational> {
        (0..len_p).map(|k| u.p.coeff(k)).chain((0..len_q).map(|k| u.q.coeff(k))).collect()
    }

    fn columns(&self, images: &[HEElement]) -> (usize, usize) {
        let lp = images.iter().map(|u| u.p.coeffs().len()).max().unwrap_or(0);
        let lq = images.iter().map(|u| u.q.coeffs().len()).max().unwrap_or(0);
        (lp, lq)
    }

    fn require_smooth(&self) -> Result<(), CurveError> {
        if self.is_smooth() {
            Ok(())
        } else {
            Err(CurveError::Singular(self.smoothness_gcd().to_string()))
        }
    }

    /// Basis (as coefficients `g`) of the fields `ν = g τ` of degree at
    /// most `bound` commuting with `η = f τ`.
    pub fn kernel_ad_bounded(&self, f: &HEElement, bound: u32) -> Result<Vec<HEElement>, CurveError> {
        self.require_smooth()?;
        if f.is_zero() {
            return Err(CurveError::ZeroField);
        }
        let basis = self.field_basis(bound);
        let images: Vec<HEElement> = basis.iter().map(|g| self.bracket(f, g)).collect();
        let (lp, lq) = self.columns(&images);
        let cols: Vec<Vec<Rational>> = images.iter().map(|u| Self::coordinates(u, lp, lq)).collect();
        let kernel = Matrix::from_rows(cols).transpose().kernel();
        Ok(kernel
            .into_iter()
            .map(|v| basis.iter().zip(&v).fold(HEElement::zero(), |acc, (g, c)| acc.add(&g.scale(c))))
            .collect())
    }

    /// Whether `target` lies in the span of `images`.
    fn in_span(images: &[HEElement], target: &HEElement) -> bool {
        let mut all = images.to_vec();
        all.push(target.clone());
        let (lp, lq) = (
            all.iter().map(|u| u.p.coeffs().len()).max().unwrap_or(0),
            all.iter().map(|u| u.q.coeffs().len()).max().unwrap_or(0),
        );
        let rows: Vec<Vec<Rational>> = images.iter().map(|u| Self::coordinates(u, lp, lq)).collect();
        let base = crate::linalg::rank_of(&rows);
        let mut with = rows;
        with.push(Self::coordinates(target, lp, lq));
        crate::linalg::rank_of(&with) == base
    }

    /// The bounded kernel is `span{f}` when `f τ` fits in the window and
    /// empty otherwise.
    pub fn kernel_is_span(&self, f: &HEElement, bound: u32) -> Result<bool, CurveError> {
        let k = self.kernel_ad_bounded(f, bound)?;
        Ok(if self.field_degree(f).is_some_and(|d| d <= bound) { k.len() == 1 && k[0].is_proportional(f) } else { k.is_empty() })
    }

    pub fn not_in_image_check(&self, f: &HEElement, bound: u32, nilpotency_power: u32) -> Result<ImageReport, CurveError> {
        self.require_smooth()?;
        let deg_eta = self.field_degree(f).ok_or(CurveError::ZeroField)?;
        let basis = self.field_basis(bound);
        let images: Vec<HEElement> = basis.iter().map(|g| self.bracket(f, g)).collect();
        let degree_raised = images.iter().all(|b| self.field_degree(b).is_none_or(|d| d > deg_eta));
        let not_in_image = !Self::in_span(&images, f);
        let negated: Vec<HEElement> = images.iter().map(|b| b.scale(&-Rational::one())).collect();
        let no_eigen_relation = !Self::in_span(&negated, f);
        let not_nilpotent = basis.iter().filter(|g| !Self::in_span(std::slice::from_ref(f), g)).all(|g| {
            let mut v = g.clone();
            for _ in 0..nilpotency_power {
                v = self.bracket(f, &v);
            }
            !v.is_zero()
        });
        Ok(ImageReport { degree_raised, not_in_image, no_eigen_relation, not_nilpotent })
    }

    /// The same curve as a general variety in `(x, y)`.
    pub fn variety(&self) -> Result<VarietyDescriptor, CurveError> {
        let y = Polynomial::var(2, 1);
        let rel = &y.pow(2) - &self.h.to_polynomial(2, 0).scale(&Rational::from_integer(2.into()));
        Ok(VarietyDescriptor::new(vec!["x".into(), "y".into()], vec![rel])?)
    }

    pub fn to_field(&self, x: &VarietyDescriptor, field: &(HEElement, HEElement)) -> VectorField {
        VectorField::new(x, &[field.0.to_polynomial(), field.1.to_polynomial()]).expect("curve fields are tangent")
    }
}

/// `[t^a ∂t, t^b ∂t] = (b - a) t^{a+b-1} ∂t`, returned as `(coefficient, exponent)`.
pub fn graded_bracket(a: u32, b: u32) -> (Rational, u32) {
    let ta = UniPoly::monomial(a as usize, Rational::one());
    let tb = UniPoly::monomial(b as usize, Rational::one());
    let r = ta.mul(&tb.derivative()).sub(&tb.mul(&ta.derivative()));
    (r.leading(), r.degree().unwrap_or(0) as u32)
}

/// Among `t^a ∂t`, `t^b ∂t` with exponents up to `max`, commuting pairs are
/// exactly the equal ones.
pub fn graded_commuting_check(max: u32) -> bool {
    (0..=max).all(|a| (0..=max).all(|b| graded_bracket(a, b).0.is_zero() == (a == b)))
}

/// `LT(τ u) = 2^{m-1} t^{2m} ∂t LT(u)` for a nonconstant monomial `u`.
pub fn graded_symbol_holds(c: &HyperellipticCurve, u: &HEElement) -> bool {
    let (Some(lu), Some(ltu)) = (c.leading_term(u), c.leading_term(&c.tau_apply(u))) else {
        return false;
    };
    let e = lu.exponent;
    let factor = (0..c.m().saturating_sub(1)).fold(Rational::one(), |acc, _| acc * Rational::from_integer(2.into()));
    let expected = GradedTerm { coefficient: lu.coefficient * Rational::from_integer(e.into()) * factor, exponent: e + 2 * c.m() - 1 };
    ltu == expected
}
