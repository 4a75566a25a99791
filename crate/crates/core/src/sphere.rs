//! The sphere `x_1^2 + ... + x_N^2 = 1`: rotation fields, the projective
//! action of `sl_N`, harmonic polynomials, and bounded-degree checks of how
//! `sl_N` moves between harmonic components.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::linalg::{rank_of, Matrix};
use crate::parser::format_polynomial;
use crate::poly::{Monomial, MonomialOrder, Polynomial, Rational};
use crate::variety::{VarietyDescriptor, VarietyError};
use crate::vecfield::{FieldError, VectorField};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SphereError {
    #[error("sphere dimension parameter must be at least {min}, got {got}")]
    TooSmall { min: usize, got: usize },
    #[error("index pair ({0}, {1}) must be distinct and below N")]
    BadIndices(usize, usize),
    #[error("input is not homogeneous")]
    NotHomogeneous,
    #[error("degree {degree} has no component {direction}")]
    NoTarget { degree: u32, direction: &'static str },
    #[error("matrix is not {0} x {0} with zero trace")]
    NotTraceless(usize),
    #[error(transparent)]
    Variety(#[from] VarietyError),
}

/// Basis elements of `sl_N`, zero-indexed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlElement {
    /// Matrix unit `E_ab`, `a != b`.
    Unit { a: usize, b: usize },
    /// `E_aa - E_bb`.
    DiagonalDifference { a: usize, b: usize },
}

impl SlElement {
    pub fn matrix(&self, n: usize) -> Vec<Vec<Rational>> {
        let mut m = vec![vec![Rational::zero(); n]; n];
        match *self {
            SlElement::Unit { a, b } => m[a][b] = Rational::one(),
            SlElement::DiagonalDifference { a, b } => {
                m[a][a] = Rational::one();
                m[b][b] = -Rational::one();
            }
        }
        m
    }

    pub fn label(&self) -> String {
        match *self {
            SlElement::Unit { a, b } => format!("E{}{}", a + 1, b + 1),
            SlElement::DiagonalDifference { a, b } => format!("E{}{}-E{}{}", a + 1, a + 1, b + 1, b + 1),
        }
    }
}

/// The standard basis: all `E_ab` with `a != b`, then `E_aa - E_{a+1,a+1}`.
pub fn sl_basis(n: usize) -> Vec<SlElement> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a != b {
                out.push(SlElement::Unit { a, b });
            }
        }
    }
    for a in 0..n.saturating_sub(1) {
        out.push(SlElement::DiagonalDifference { a, b: a + 1 });
    }
    out
}

pub fn matrix_commutator(x: &[Vec<Rational>], y: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = x.len();
    let mul = |p: &[Vec<Rational>], q: &[Vec<Rational>]| -> Vec<Vec<Rational>> {
        (0..n).map(|i| (0..n).map(|j| (0..n).fold(Rational::zero(), |acc, k| acc + &p[i][k] * &q[k][j])).collect()).collect()
    };
    let xy = mul(x, y);
    let yx = mul(y, x);
    xy.iter().zip(&yx).map(|(r, s)| r.iter().zip(s).map(|(a, b)| a - b).collect()).collect()
}

/// `r^2 = x_1^2 + ... + x_N^2`.
pub fn r_squared(n: usize) -> Polynomial {
    (0..n).fold(Polynomial::zero(n), |acc, i| &acc + &Polynomial::var(n, i).pow(2))
}

/// Sum of the pure second partials.
pub fn laplacian(f: &Polynomial) -> Polynomial {
    (0..f.nvars()).fold(Polynomial::zero(f.nvars()), |acc, i| &acc + &f.diff(i).diff(i))
}

fn double_factorial(n: i64) -> BigInt {
    let mut acc = BigInt::one();
    let mut k = n;
    while k > 1 {
        acc *= k;
        k -= 2;
    }
    acc
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Projection of a degree-`l` form onto the harmonic forms of degree `l`.
pub fn harmonic_project(f: &Polynomial) -> Result<Polynomial, SphereError> {
    let n = f.nvars();
    if n < 3 {
        return Err(SphereError::TooSmall { min: 3, got: n });
    }
    if !f.is_homogeneous() {
        return Err(SphereError::NotHomogeneous);
    }
    let Some(l) = f.degree() else { return Ok(f.clone()) };
    let (nn, ll) = (n as i64, l as i64);
    let r2 = r_squared(n);
    let mut acc = Polynomial::zero(n);
    let mut lap = f.clone();
    let mut rpow = Polynomial::one(n);
    for k in 0..=(l / 2) {
        let kk = k as i64;
        let sign = if k % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        let num = sign * double_factorial(nn + 2 * ll - 2 * kk - 4);
        let den = BigInt::from(2).pow(k) * factorial(k as u64) * double_factorial(nn + 2 * ll - 4);
        let c = Rational::new(num, den);
        acc += &(&rpow * &lap).scale(&c);
        lap = laplacian(&lap);
        rpow = &rpow * &r2;
        if lap.is_zero() {
            break;
        }
    }
    Ok(acc)
}

/// `f = sum_k r^{2k} h_{l-2k}` with each `h` harmonic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HarmonicDecomposition {
    pub degree: u32,
    /// `(level, h_level)` from the top level down, zeros included.
    pub components: Vec<(u32, Polynomial)>,
}

impl HarmonicDecomposition {
    pub fn component(&self, level: u32) -> Option<&Polynomial> {
        self.components.iter().find(|(l, _)| *l == level).map(|(_, h)| h)
    }

    pub fn reassemble(&self, n: usize) -> Polynomial {
        let r2 = r_squared(n);
        self.components.iter().fold(Polynomial::zero(n), |acc, (l, h)| &acc + &(&r2.pow((self.degree - l) / 2) * h))
    }

    pub fn to_json(&self, vars: &[String]) -> Value {
        json!({
            "degree": self.degree,
            "components": self.components.iter().map(|(l, h)| json!({"level": l, "polynomial": format_polynomial(h, vars)})).collect::<Vec<_>>(),
        })
    }
}

/// Peels harmonic components off a degree-`degree` form.
pub fn harmonic_decompose(f: &Polynomial, degree: u32) -> Result<HarmonicDecomposition, SphereError> {
    let n = f.nvars();
    if !f.is_homogeneous() || f.degree().is_some_and(|d| d != degree) {
        return Err(SphereError::NotHomogeneous);
    }
    let r2 = r_squared(n);
    let mut components = Vec::new();
    let mut rest = f.clone();
    let mut level = degree as i64;
    while level >= 0 {
        let h = harmonic_project(&rest)?;
        let diff = &rest - &h;
        components.push((level as u32, h));
        rest = if diff.is_zero() { diff } else { diff.div_exact(&r2).expect("remainder is divisible by r^2") };
        level -= 2;
    }
    Ok(HarmonicDecomposition { degree, components })
}

/// Degree-`degree` form equal to `p` on the sphere, by padding lower-degree
/// terms with powers of `r^2`.
pub fn homogenize_on_sphere(p: &Polynomial, degree: u32) -> Result<Polynomial, SphereError> {
    let n = p.nvars();
    let r2 = r_squared(n);
    let mut acc = Polynomial::zero(n);
    for (m, c) in p.terms() {
        let d = m.degree();
        if d > degree || !(degree - d).is_multiple_of(2) {
            return Err(SphereError::NotHomogeneous);
        }
        acc += &(&Polynomial::monomial(m.clone(), c.clone()) * &r2.pow((degree - d) / 2));
    }
    Ok(acc)
}

pub(crate) fn monomials(n: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    fn go(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(Monomial::from_exponents(cur.clone()));
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            go(i + 1, left - e, cur, out);
        }
    }
    if n > 0 {
        go(0, d, &mut vec![0; n], &mut out);
    }
    out.sort_by(|a, b| MonomialOrder::Grevlex.cmp(b, a));
    out
}

fn binomial(n: u64, k: u64) -> BigInt {
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// `dim H_l = (N + 2l - 2) (N + l - 3)! / (l! (N - 2)!)`.
pub fn harmonic_dimension_formula(n: usize, l: u32) -> BigInt {
    let (nn, ll) = (n as u64, l as u64);
    BigInt::from(nn + 2 * ll - 2) * factorial(nn + ll - 3) / (factorial(ll) * factorial(nn - 2))
}

/// Dimension of the kernel of the Laplacian on degree-`l` forms.
pub fn harmonic_dimension_by_kernel(n: usize, l: u32) -> usize {
    let src = monomials(n, l);
    if l < 2 {
        return src.len();
    }
    let dst = monomials(n, l - 2);
    let mut rows = vec![vec![Rational::zero(); src.len()]; dst.len()];
    for (j, m) in src.iter().enumerate() {
        let img = laplacian(&Polynomial::monomial(m.clone(), Rational::one()));
        for (mm, c) in img.terms() {
            let i = dst.iter().position(|d| d == mm).expect("degree l-2 monomial");
            rows[i][j] = c.clone();
        }
    }
    let rank = Matrix::from_rows(rows).rank();
    debug_assert_eq!(BigInt::from(src.len()), binomial(n as u64 + l as u64 - 1, l as u64));
    src.len() - rank
}

/// Coordinates of a degree-`d` form in the monomial basis.
fn coordinates(p: &Polynomial, basis: &[Monomial]) -> Vec<Rational> {
    basis.iter().map(|m| p.coefficient(m)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Up,
    Down,
}

/// Result of a spread computation for one harmonic and one `sl_N` element.
#[derive(Debug, Clone)]
pub struct SpreadReport {
    /// `X h` as a form of degree `l + 2`.
    pub g: Polynomial,
    pub decomposition: HarmonicDecomposition,
    pub laplacian_cubed_vanishes: bool,
    /// Components at levels `l - 4` and below are zero.
    pub lower_levels_vanish: bool,
}

#[derive(Debug, Clone)]
pub struct GenerationReport {
    pub degree: u32,
    pub direction: Direction,
    pub rank: usize,
    pub target_dimension: usize,
    pub spans: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BracketEntry {
    pub left: SlElement,
    pub right: SlElement,
    pub homomorphic: bool,
    pub antihomomorphic: bool,
}

/// The sphere `S^{N-1}` with its coordinate ring.
#[derive(Debug, Clone)]
pub struct SphereContext {
    n: usize,
    x: VarietyDescriptor,
}

impl SphereContext {
    pub fn new(n: usize) -> Result<Self, SphereError> {
        if n < 2 {
            return Err(SphereError::TooSmall { min: 2, got: n });
        }
        let vars: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
        let x = VarietyDescriptor::new(vars, vec![&r_squared(n) - &Polynomial::one(n)])?;
        Ok(SphereContext { n, x })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn variety(&self) -> &VarietyDescriptor {
        &self.x
    }

    fn check_pair(&self, a: usize, b: usize) -> Result<(), SphereError> {
        if a == b || a >= self.n || b >= self.n {
            return Err(SphereError::BadIndices(a, b));
        }
        Ok(())
    }

    /// Raw components of `x_b d/dx_a - x_a d/dx_b`; zero when `a = b`.
    fn delta_raw(&self, a: usize, b: usize) -> Vec<Polynomial> {
        let n = self.n;
        let mut c = vec![Polynomial::zero(n); n];
        if a != b {
            c[a] = Polynomial::var(n, b);
            c[b] = -Polynomial::var(n, a);
        }
        c
    }

    pub fn delta_field(&self, a: usize, b: usize) -> Result<VectorField, SphereError> {
        self.check_pair(a, b)?;
        Ok(self.field(&self.delta_raw(a, b)))
    }

    fn field(&self, raw: &[Polynomial]) -> VectorField {
        match VectorField::new(&self.x, raw) {
            Ok(f) => f,
            Err(FieldError::NotTangent) => unreachable!("sphere fields are tangent"),
            Err(e) => panic!("{e}"),
        }
    }

    /// Raw components of the image of `E_ab`: `sum_p x_b x_p Delta_ap`.
    fn unit_raw(&self, a: usize, b: usize) -> Vec<Polynomial> {
        let n = self.n;
        let mut acc = vec![Polynomial::zero(n); n];
        for p in 0..n {
            let coef = &Polynomial::var(n, b) * &Polynomial::var(n, p);
            for (slot, d) in acc.iter_mut().zip(self.delta_raw(a, p)) {
                *slot += &(&coef * &d);
            }
        }
        acc
    }

    /// Raw components of the image of a traceless matrix, extended linearly
    /// from the matrix units.
    pub fn embedding_raw(&self, m: &[Vec<Rational>]) -> Result<Vec<Polynomial>, SphereError> {
        let n = self.n;
        if m.len() != n || m.iter().any(|r| r.len() != n) || !(0..n).fold(Rational::zero(), |acc, i| acc + &m[i][i]).is_zero() {
            return Err(SphereError::NotTraceless(n));
        }
        let mut acc = vec![Polynomial::zero(n); n];
        for (a, row) in m.iter().enumerate() {
            for (b, c) in row.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (slot, u) in acc.iter_mut().zip(self.unit_raw(a, b)) {
                    *slot += &u.scale(c);
                }
            }
        }
        Ok(acc)
    }

    pub fn sl_embedding(&self, e: &SlElement) -> Result<VectorField, SphereError> {
        match *e {
            SlElement::Unit { a, b } | SlElement::DiagonalDifference { a, b } => self.check_pair(a, b)?,
        }
        Ok(self.field(&self.embedding_raw(&e.matrix(self.n))?))
    }

    pub fn sl_matrix_embedding(&self, m: &[Vec<Rational>]) -> Result<VectorField, SphereError> {
        Ok(self.field(&self.embedding_raw(m)?))
    }

    /// `X ↦ τ(Xᵀ)`, which carries matrix commutators to field brackets.
    pub fn sl_embedding_opposite(&self, m: &[Vec<Rational>]) -> Result<VectorField, SphereError> {
        let n = self.n;
        let t: Vec<Vec<Rational>> = (0..n).map(|i| (0..n).map(|j| m.get(j).and_then(|r| r.get(i)).cloned().unwrap_or_default()).collect()).collect();
        if m.len() != n || m.iter().any(|r| r.len() != n) {
            return Err(SphereError::NotTraceless(n));
        }
        self.sl_matrix_embedding(&t)
    }

    /// For every ordered pair of basis elements, whether
    /// `[τX, τY] = τ[X, Y]` and whether `[τX, τY] = -τ[X, Y]`.
    pub fn bracket_table(&self) -> Vec<BracketEntry> {
        let basis = sl_basis(self.n);
        let images: Vec<VectorField> = basis.iter().map(|e| self.sl_embedding(e).expect("basis element")).collect();
        let mut out = Vec::new();
        for (i, x) in basis.iter().enumerate() {
            for (j, y) in basis.iter().enumerate() {
                let lhs = crate::vecfield::bracket(&self.x, &images[i], &images[j]);
                let comm = matrix_commutator(&x.matrix(self.n), &y.matrix(self.n));
                let rhs = self.sl_matrix_embedding(&comm).expect("commutators are traceless");
                out.push(BracketEntry {
                    left: *x,
                    right: *y,
                    homomorphic: lhs == rhs,
                    antihomomorphic: lhs == rhs.scale(&-Rational::one()),
                });
            }
        }
        out
    }

    /// Applies the image of `e` to the harmonic form `h` without reducing,
    /// which yields a form of degree `l + 2`.
    fn act_raw(&self, e: &SlElement, h: &Polynomial) -> Result<Polynomial, SphereError> {
        let raw = self.embedding_raw(&e.matrix(self.n))?;
        Ok(raw.iter().enumerate().fold(Polynomial::zero(self.n), |acc, (j, g)| &acc + &(g * &h.diff(j))))
    }

    /// Decomposes `g = X h` for a harmonic `h` of degree `l`.
    pub fn spread_check(&self, h: &Polynomial, e: &SlElement) -> Result<SpreadReport, SphereError> {
        if self.n < 3 {
            return Err(SphereError::TooSmall { min: 3, got: self.n });
        }
        if !h.is_homogeneous() {
            return Err(SphereError::NotHomogeneous);
        }
        let l = h.degree().unwrap_or(0);
        let field = self.sl_embedding(e)?;
        let reduced = field.apply(&self.x, &self.x.reduce(h));
        let g = homogenize_on_sphere(reduced.rep(), l + 2)?;
        debug_assert_eq!(g, self.act_raw(e, h)?);
        let decomposition = harmonic_decompose(&g, l + 2)?;
        let lower_levels_vanish =
            decomposition.components.iter().filter(|(lev, _)| *lev + 2 < l).all(|(_, c)| c.is_zero());
        let laplacian_cubed_vanishes = laplacian(&laplacian(&laplacian(&g))).is_zero();
        Ok(SpreadReport { g, decomposition, laplacian_cubed_vanishes, lower_levels_vanish })
    }

    /// Spanning set of `H_l`: projections of all degree-`l` monomials.
    pub fn harmonic_spanning_set(&self, l: u32) -> Result<Vec<Polynomial>, SphereError> {
        monomials(self.n, l)
            .into_iter()
            .map(|m| harmonic_project(&Polynomial::monomial(m, Rational::one())))
            .filter(|r| r.as_ref().map_or(true, |p| !p.is_zero()))
            .collect()
    }

    /// Whether the `sl_N`-images of `H_l` project onto all of `H_{l+2}` or
    /// `H_{l-2}`.
    pub fn generation_check(&self, l: u32, direction: Direction) -> Result<GenerationReport, SphereError> {
        if self.n < 3 {
            return Err(SphereError::TooSmall { min: 3, got: self.n });
        }
        let target = match direction {
            Direction::Up => l + 2,
            Direction::Down => {
                if l < 2 {
                    return Err(SphereError::NoTarget { degree: l, direction: "below" });
                }
                l - 2
            }
        };
        let basis = monomials(self.n, target);
        let mut vectors = Vec::new();
        for h in self.harmonic_spanning_set(l)? {
            for e in sl_basis(self.n) {
                let g = self.act_raw(&e, &h)?;
                if g.is_zero() {
                    continue;
                }
                let dec = harmonic_decompose(&g, l + 2)?;
                let comp = dec.component(target).cloned().unwrap_or_else(|| Polynomial::zero(self.n));
                vectors.push(coordinates(&comp, &basis));
            }
        }
        let rank = rank_of(&vectors);
        let target_dimension = harmonic_dimension_by_kernel(self.n, target);
        Ok(GenerationReport { degree: l, direction, rank, target_dimension, spans: rank == target_dimension && rank > 0 })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::{names, parse_polynomial};
    use crate::poly::rat;
    use crate::vecfield::bracket;

    fn p3(s: &str) -> Polynomial {
        parse_polynomial(s, &names("x1 x2 x3")).unwrap()
    }

    #[test]
    fn deltas() {
        let s2 = SphereContext::new(2).unwrap();
        assert_eq!(s2.delta_field(0, 1).unwrap().format(s2.variety()), "x2, -x1");
        let s = SphereContext::new(3).unwrap();
        let d = |a, b| s.delta_field(a, b).unwrap();
        assert!(d(0, 1).add(&d(1, 0)).is_zero());
        let x = s.variety();
        let rel = d(0, 1)
            .multiply(x, &x.coordinate(2))
            .add(&d(1, 2).multiply(x, &x.coordinate(0)))
            .add(&d(2, 0).multiply(x, &x.coordinate(1)));
        assert!(rel.is_zero());
        assert!(s.delta_field(1, 1).is_err());
    }

    #[test]
    fn embedding_of_e12_on_the_circle() {
        let s2 = SphereContext::new(2).unwrap();
        let raw = s2.embedding_raw(&SlElement::Unit { a: 0, b: 1 }.matrix(2)).unwrap();
        let text: Vec<String> = raw.iter().map(|p| format_polynomial(p, s2.variety().vars())).collect();
        assert_eq!(text, ["x2^3", "-x1*x2^2"]);
    }

    #[test]
    fn rotations_from_the_embedding() {
        let s = SphereContext::new(3).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                if a == b {
                    continue;
                }
                let lhs = s.sl_embedding(&SlElement::Unit { a, b }).unwrap().sub(&s.sl_embedding(&SlElement::Unit { a: b, b: a }).unwrap());
                assert_eq!(lhs, s.delta_field(a, b).unwrap());
            }
        }
    }

    #[test]
    fn bracket_of_unit_images_changes_sign() {
        let s = SphereContext::new(3).unwrap();
        let x = s.variety();
        let e12 = s.sl_embedding(&SlElement::Unit { a: 0, b: 1 }).unwrap();
        let e21 = s.sl_embedding(&SlElement::Unit { a: 1, b: 0 }).unwrap();
        let h = s.sl_embedding(&SlElement::DiagonalDifference { a: 0, b: 1 }).unwrap();
        assert_eq!(bracket(x, &e12, &e21), h.scale(&rat(-1)));
        let table = s.bracket_table();
        assert_eq!(table.len(), 64);
        assert!(table.iter().all(|e| e.antihomomorphic));
        assert!(table.iter().any(|e| !e.homomorphic));
    }

    #[test]
    fn opposite_embedding_is_homomorphic() {
        let s = SphereContext::new(3).unwrap();
        let x = s.variety();
        let basis = sl_basis(3);
        for a in &basis {
            for b in &basis {
                let (ma, mb) = (a.matrix(3), b.matrix(3));
                let lhs = bracket(x, &s.sl_embedding_opposite(&ma).unwrap(), &s.sl_embedding_opposite(&mb).unwrap());
                assert_eq!(lhs, s.sl_embedding_opposite(&matrix_commutator(&ma, &mb)).unwrap());
            }
        }
        let rot = s.sl_embedding_opposite(&SlElement::Unit { a: 0, b: 1 }.matrix(3)).unwrap()
            .sub(&s.sl_embedding_opposite(&SlElement::Unit { a: 1, b: 0 }.matrix(3)).unwrap());
        assert_eq!(rot, s.delta_field(1, 0).unwrap());
    }

    #[test]
    fn laplacians() {
        assert_eq!(laplacian(&p3("x1^2")), Polynomial::constant(3, rat(2)));
        assert!(laplacian(&p3("x1*x2")).is_zero());
        assert_eq!(laplacian(&r_squared(3)), Polynomial::constant(3, rat(6)));
    }

    #[test]
    fn projections() {
        assert_eq!(harmonic_project(&p3("x1^2")).unwrap(), p3("x1^2 - 1/3*x1^2 - 1/3*x2^2 - 1/3*x3^2"));
        assert_eq!(harmonic_project(&p3("x1*x2")).unwrap(), p3("x1*x2"));
        assert!(harmonic_project(&p3("x1^2 + x2")).is_err());
        let d = harmonic_decompose(&p3("x1^2"), 2).unwrap();
        assert_eq!(d.component(0).unwrap(), &Polynomial::constant(3, Rational::new(1.into(), 3.into())));
        let r = harmonic_decompose(&r_squared(3), 2).unwrap();
        assert!(r.component(2).unwrap().is_zero());
        assert_eq!(r.component(0).unwrap(), &Polynomial::one(3));
        assert_eq!(d.reassemble(3), p3("x1^2"));
    }

    #[test]
    fn dimensions() {
        for n in 3..=4 {
            for l in 0..=6 {
                assert_eq!(BigInt::from(harmonic_dimension_by_kernel(n, l)), harmonic_dimension_formula(n, l));
            }
        }
        assert_eq!(harmonic_dimension_by_kernel(3, 3), 7);
    }

    #[test]
    fn spread_and_generation() {
        let s = SphereContext::new(3).unwrap();
        let rep = s.spread_check(&p3("x1*x2"), &SlElement::Unit { a: 0, b: 1 }).unwrap();
        assert!(rep.laplacian_cubed_vanishes && rep.lower_levels_vanish);
        let one = s.spread_check(&Polynomial::one(3), &SlElement::Unit { a: 0, b: 1 }).unwrap();
        assert!(one.g.is_zero());
        let up = s.generation_check(1, Direction::Up).unwrap();
        assert!(up.spans);
        assert_eq!(up.target_dimension, 7);
        assert!(s.generation_check(2, Direction::Down).unwrap().spans);
        assert!(!s.generation_check(0, Direction::Up).unwrap().spans);
        assert!(s.generation_check(1, Direction::Down).is_err());
    }
}
