//! Affine varieties `X = V(f_1, ..., f_m)` over the rationals, arithmetic in
//! the coordinate ring `A = Q[x]/I`, the Jacobian criterion, local charts and
//! truncated power-series expansions at nonsingular points.
//!
//! The ideal is assumed prime. That assumption is recorded on the descriptor
//! and never checked.

mod chart;
mod jet;

pub use chart::LocalChart;
pub use jet::{JetSeries, LocalExpansion};

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_traits::Zero;
use thiserror::Error;

use crate::groebner::{expand_combination, ideal_membership, GroebnerBasis};
use crate::linalg::Matrix;
use crate::parser::{format_polynomial, parse_polynomial, validate_variables, ParseError};
use crate::poly::{MonomialOrder, Polynomial, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VarietyError {
    #[error("the ideal contains 1, so the variety is empty")]
    Empty,
    #[error("generator {0} is the zero polynomial")]
    ZeroGenerator(usize),
    #[error("expected {expected} variables, got {got}")]
    AmbientMismatch { expected: usize, got: usize },
    #[error("invalid variable list: {0}")]
    Variables(String),
    #[error("point {0} does not lie on the variety")]
    PointOffVariety(String),
    #[error("point {0} is singular")]
    SingularPoint(String),
    #[error("point has {got} coordinates, expected {expected}")]
    PointDimension { expected: usize, got: usize },
    #[error(transparent)]
    Parse(#[from] ParseError),
}

struct Inner {
    vars: Vec<String>,
    generators: Vec<Polynomial>,
    assume_irreducible: bool,
    gb: GroebnerBasis,
    rank: OnceLock<usize>,
    singular: OnceLock<Vec<QuotientElement>>,
}

/// Affine variety together with lazily computed invariants. Cloning is cheap
/// and clones share caches.
#[derive(Clone)]
pub struct VarietyDescriptor {
    inner: Arc<Inner>,
}

impl fmt::Debug for VarietyDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.inner.generators.iter().map(|g| self.format(g)).collect();
        f.debug_struct("VarietyDescriptor").field("vars", &self.inner.vars).field("generators", &gens).finish()
    }
}

/// Canonical representative of a class in `A`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuotientElement(Polynomial);

impl QuotientElement {
    pub fn rep(&self) -> &Polynomial {
        &self.0
    }

    pub fn into_rep(self) -> Polynomial {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Wraps a polynomial already known to be in normal form, such as a sum
    /// or rational multiple of normal forms.
    pub(crate) fn from_normal(p: Polynomial) -> Self {
        QuotientElement(p)
    }
}

/// Outcome of the Jacobian smoothness test.
#[derive(Debug, Clone)]
pub struct SmoothnessCertificate {
    pub smooth: bool,
    /// Ideal generators followed by the reduced maximal minors.
    pub ideal: Vec<Polynomial>,
    /// `1 = sum cofactors[i] * ideal[i]` when smooth.
    pub cofactors: Option<Vec<Polynomial>>,
}

impl SmoothnessCertificate {
    /// The cofactors expand to exactly one.
    pub fn verify(&self, nvars: usize) -> bool {
        match &self.cofactors {
            Some(c) => expand_combination(c, &self.ideal, nvars) == Polynomial::one(nvars),
            None => false,
        }
    }
}

impl VarietyDescriptor {
    pub fn new(vars: Vec<String>, generators: Vec<Polynomial>) -> Result<Self, VarietyError> {
        validate_variables(&vars).map_err(VarietyError::Variables)?;
        let n = vars.len();
        for (i, g) in generators.iter().enumerate() {
            if g.nvars() != n {
                return Err(VarietyError::AmbientMismatch { expected: n, got: g.nvars() });
            }
            if g.is_zero() {
                return Err(VarietyError::ZeroGenerator(i));
            }
        }
        let gb = GroebnerBasis::new(n, &generators, MonomialOrder::Grevlex);
        if gb.is_unit() {
            return Err(VarietyError::Empty);
        }
        Ok(VarietyDescriptor {
            inner: Arc::new(Inner {
                vars,
                generators,
                assume_irreducible: true,
                gb,
                rank: OnceLock::new(),
                singular: OnceLock::new(),
            }),
        })
    }

    /// Builds a variety from whitespace-separated names and generator texts.
    pub fn parse(vars: &str, generators: &[&str]) -> Result<Self, VarietyError> {
        let names = crate::parser::names(vars);
        validate_variables(&names).map_err(VarietyError::Variables)?;
        let gens = generators.iter().map(|g| parse_polynomial(g, &names)).collect::<Result<Vec<_>, _>>()?;
        Self::new(names, gens)
    }

    pub fn nvars(&self) -> usize {
        self.inner.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.inner.vars
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.inner.generators
    }

    pub fn groebner(&self) -> &GroebnerBasis {
        &self.inner.gb
    }

    /// Irreducibility is taken on trust from the caller.
    pub fn assumes_irreducible(&self) -> bool {
        self.inner.assume_irreducible
    }

    pub fn format(&self, p: &Polynomial) -> String {
        format_polynomial(p, &self.inner.vars)
    }

    pub fn parse_element(&self, text: &str) -> Result<QuotientElement, ParseError> {
        Ok(self.reduce(&parse_polynomial(text, &self.inner.vars)?))
    }

    // ---- quotient ring ------------------------------------------------

    pub fn reduce(&self, p: &Polynomial) -> QuotientElement {
        QuotientElement(self.inner.gb.normal_form(p))
    }

    pub fn zero(&self) -> QuotientElement {
        QuotientElement(Polynomial::zero(self.nvars()))
    }

    pub fn one(&self) -> QuotientElement {
        self.reduce(&Polynomial::one(self.nvars()))
    }

    pub fn constant(&self, c: Rational) -> QuotientElement {
        self.reduce(&Polynomial::constant(self.nvars(), c))
    }

    pub fn coordinate(&self, i: usize) -> QuotientElement {
        self.reduce(&Polynomial::var(self.nvars(), i))
    }

    pub fn add(&self, a: &QuotientElement, b: &QuotientElement) -> QuotientElement {
        QuotientElement(&a.0 + &b.0)
    }

    pub fn sub(&self, a: &QuotientElement, b: &QuotientElement) -> QuotientElement {
        QuotientElement(&a.0 - &b.0)
    }

    pub fn neg(&self, a: &QuotientElement) -> QuotientElement {
        QuotientElement(-&a.0)
    }

    pub fn mul(&self, a: &QuotientElement, b: &QuotientElement) -> QuotientElement {
        self.reduce(&(&a.0 * &b.0))
    }

    pub fn scale(&self, a: &QuotientElement, c: &Rational) -> QuotientElement {
        QuotientElement(a.0.scale(c))
    }

    pub fn pow(&self, a: &QuotientElement, e: u32) -> QuotientElement {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    pub fn is_member(&self, p: &Polynomial) -> bool {
        self.inner.gb.contains(p)
    }

    /// Value at a point of `X`; independent of the representative.
    pub fn value(&self, a: &QuotientElement, point: &[Rational]) -> Result<Rational, VarietyError> {
        self.check_point(point)?;
        Ok(a.0.evaluate(point).expect("checked dimension"))
    }

    // ---- points --------------------------------------------------------

    pub fn contains_point(&self, point: &[Rational]) -> bool {
        point.len() == self.nvars()
            && self.inner.generators.iter().all(|f| f.evaluate(point).expect("dimension").is_zero())
    }

    pub(crate) fn check_point(&self, point: &[Rational]) -> Result<(), VarietyError> {
        if point.len() != self.nvars() {
            return Err(VarietyError::PointDimension { expected: self.nvars(), got: point.len() });
        }
        if !self.contains_point(point) {
            return Err(VarietyError::PointOffVariety(format_point(point)));
        }
        Ok(())
    }

    /// Rational points of `X` with coordinates `p/q`, `|p| <= height`,
    /// `1 <= q <= height`, in a fixed enumeration order, at most `cap` of them.
    pub fn small_points(&self, height: i64, cap: usize) -> Vec<Vec<Rational>> {
        let mut values: Vec<Rational> = Vec::new();
        for q in 1..=height {
            for p in -height..=height {
                let v = Rational::new(p.into(), q.into());
                if !values.contains(&v) {
                    values.push(v);
                }
            }
        }
        values.sort_by(|a, b| (a.numer().magnitude() + a.denom().magnitude()).cmp(&(b.numer().magnitude() + b.denom().magnitude())).then(a.cmp(b)));
        let n = self.nvars();
        let mut out = Vec::new();
        let mut idx = vec![0usize; n];
        if n == 0 {
            return out;
        }
        loop {
            let pt: Vec<Rational> = idx.iter().map(|&i| values[i].clone()).collect();
            if self.contains_point(&pt) {
                out.push(pt);
                if out.len() >= cap {
                    return out;
                }
            }
            let mut k = 0;
            loop {
                idx[k] += 1;
                if idx[k] < values.len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
                if k == n {
                    return out;
                }
            }
        }
    }

    // ---- Jacobian ------------------------------------------------------

    /// `m x n` matrix of partial derivatives.
    pub fn jacobian(&self) -> Vec<Vec<Polynomial>> {
        self.inner.generators.iter().map(|f| (0..self.nvars()).map(|j| f.diff(j)).collect()).collect()
    }

    /// Generic rank of the Jacobian over the fraction field of `A`.
    pub fn jacobian_rank(&self) -> usize {
        *self.inner.rank.get_or_init(|| self.compute_rank())
    }

    fn compute_rank(&self) -> usize {
        let jac = self.jacobian();
        let m = jac.len();
        let n = self.nvars();
        let mut mat: Vec<Vec<Polynomial>> =
            jac.iter().map(|row| row.iter().map(|p| self.reduce(p).0).collect()).collect();
        let mut rows: Vec<usize> = (0..m).collect();
        let mut pivot_cols = Vec::new();
        let mut r = 0;
        for c in 0..n {
            if r == m {
                break;
            }
            let Some(p) = (r..m).find(|&i| !mat[i][c].is_zero()) else { continue };
            mat.swap(r, p);
            rows.swap(r, p);
            for i in r + 1..m {
                if mat[i][c].is_zero() {
                    continue;
                }
                let a = mat[r][c].clone();
                let b = mat[i][c].clone();
                for j in c..n {
                    let v = &(&a * &mat[i][j]) - &(&b * &mat[r][j]);
                    mat[i][j] = self.reduce(&v).0;
                }
            }
            pivot_cols.push(c);
            r += 1;
        }
        let certified = r == 0 || {
            let sub: Vec<Vec<Polynomial>> =
                rows[..r].iter().map(|&i| pivot_cols.iter().map(|&j| jac[i][j].clone()).collect()).collect();
            !self.reduce(&determinant(&sub)).is_zero()
        };
        if certified {
            return r;
        }
        (1..=m.min(n)).rev().find(|&k| !self.minors(&jac, k).is_empty()).unwrap_or(0)
    }

    /// Nonzero reduced `k x k` minors, deduplicated, in enumeration order.
    fn minors(&self, jac: &[Vec<Polynomial>], k: usize) -> Vec<QuotientElement> {
        let m = jac.len();
        let n = self.nvars();
        if k == 0 {
            return vec![self.one()];
        }
        let mut out: Vec<QuotientElement> = Vec::new();
        for rs in combinations(m, k) {
            for cs in combinations(n, k) {
                let sub: Vec<Vec<Polynomial>> =
                    rs.iter().map(|&i| cs.iter().map(|&j| jac[i][j].clone()).collect()).collect();
                let d = self.reduce(&determinant(&sub));
                if !d.is_zero() && !out.contains(&d) {
                    out.push(d);
                }
            }
        }
        out
    }

    /// `s = n - r`.
    pub fn dimension(&self) -> usize {
        self.nvars() - self.jacobian_rank()
    }

    /// Reduced `r x r` minors of the Jacobian, which generate `I_sing` modulo `I`.
    pub fn singular_ideal(&self) -> &[QuotientElement] {
        self.inner.singular.get_or_init(|| self.minors(&self.jacobian(), self.jacobian_rank()))
    }

    /// Decides `1 in I + I_sing`, with a verified certificate when it holds.
    pub fn smoothness_certificate(&self) -> SmoothnessCertificate {
        let n = self.nvars();
        let mut ideal = self.inner.generators.clone();
        ideal.extend(self.singular_ideal().iter().map(|q| q.0.clone()));
        let m = ideal_membership(&Polynomial::one(n), &ideal, true);
        SmoothnessCertificate { smooth: m.member, ideal, cofactors: m.cofactors }
    }

    pub fn is_smooth(&self) -> bool {
        self.smoothness_certificate().smooth
    }

    /// Rank of the Jacobian evaluated at `point`.
    pub fn rank_at(&self, point: &[Rational]) -> Result<usize, VarietyError> {
        self.check_point(point)?;
        let jac = self.jacobian();
        if jac.is_empty() {
            return Ok(0);
        }
        let rows: Vec<Vec<Rational>> =
            jac.iter().map(|row| row.iter().map(|p| p.evaluate(point).expect("checked")).collect()).collect();
        Ok(Matrix::from_rows(rows).rank())
    }

    pub fn is_singular_point(&self, point: &[Rational]) -> Result<bool, VarietyError> {
        Ok(self.rank_at(point)? < self.jacobian_rank())
    }

    /// Tangency test for a raw coefficient vector: `sum_j g_j df_i/dx_j in I`.
    pub fn is_tangent(&self, components: &[Polynomial]) -> bool {
        assert_eq!(components.len(), self.nvars(), "one component per variable");
        self.inner.generators.iter().all(|f| {
            let v = components.iter().enumerate().fold(Polynomial::zero(self.nvars()), |acc, (j, g)| &acc + &(g * &f.diff(j)));
            self.is_member(&v)
        })
    }

    pub fn local_chart(&self, point: &[Rational]) -> Result<LocalChart, VarietyError> {
        chart::build(self, point)
    }
}

pub fn format_point(point: &[Rational]) -> String {
    let parts: Vec<String> = point.iter().map(|c| c.to_string()).collect();
    format!("({})", parts.join(", "))
}

/// Laplace expansion along the first row.
pub fn determinant(m: &[Vec<Polynomial>]) -> Polynomial {
    let k = m.len();
    if k == 0 {
        return Polynomial::one(0);
    }
    let nvars = m[0][0].nvars();
    if k == 1 {
        return m[0][0].clone();
    }
    let mut acc = Polynomial::zero(nvars);
    for c in 0..k {
        if m[0][c].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Polynomial>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, p)| p.clone()).collect()).collect();
        let term = &m[0][c] * &determinant(&minor);
        if c % 2 == 0 {
            acc += &term;
        } else {
            acc -= &term;
        }
    }
    acc
}

/// `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}
