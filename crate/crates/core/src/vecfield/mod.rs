//! Vector fields on `X` as derivations of `A`: application, brackets, the
//! module of all tangent fields, ampleness, and constructive witnesses for
//! the Lie ideals these fields generate.

mod functions;
mod singular;
mod witness;

pub use functions::{function_module_witness, FunctionWitness, Letter};
pub use singular::{filtration_membership, singular_ideal_power, singular_invariance_check};
pub use witness::{
    ample_witness, global_one_certificate, nonzero_second_derivative, simplicity_witness, AmpleWitness,
    BracketWitness, CertificateFailure, CertificateOptions, GlobalCertificate, IdealChain, PointContribution,
};

use num_traits::One;
use thiserror::Error;

use crate::groebner::{module_groebner, syzygies, FreeModuleVector, ModuleBasis, ModuleOrder};
use crate::linalg::rank_of;
use crate::parser::{format_vector_field, parse_vector_field, ParseError};
use crate::poly::{MonomialOrder, Polynomial, Rational};
use crate::variety::{QuotientElement, VarietyDescriptor, VarietyError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("vector field is not tangent to the variety")]
    NotTangent,
    #[error("expected {expected} components, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("the vector field is zero")]
    ZeroField,
    #[error("no witness found up to jet order {order}")]
    WitnessNotFound { order: u32 },
    #[error("no word of length at most {bound} reaches a function nonvanishing at the point")]
    SearchExhausted { bound: usize },
    #[error(transparent)]
    Variety(#[from] VarietyError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Tangent vector field `sum g_j d/dx_j` with components in normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VectorField {
    components: Vec<QuotientElement>,
}

impl VectorField {
    /// Reduces and checks tangency.
    pub fn new(x: &VarietyDescriptor, components: &[Polynomial]) -> Result<Self, FieldError> {
        if components.len() != x.nvars() {
            return Err(FieldError::Arity { expected: x.nvars(), got: components.len() });
        }
        if !x.is_tangent(components) {
            return Err(FieldError::NotTangent);
        }
        Ok(VectorField { components: components.iter().map(|c| x.reduce(c)).collect() })
    }

    pub fn parse(x: &VarietyDescriptor, text: &str) -> Result<Self, FieldError> {
        let comps = parse_vector_field(text, x.vars())?;
        Self::new(x, &comps)
    }

    pub(crate) fn from_reduced(components: Vec<QuotientElement>) -> Self {
        VectorField { components }
    }

    pub fn zero(x: &VarietyDescriptor) -> Self {
        VectorField { components: vec![x.zero(); x.nvars()] }
    }

    pub fn components(&self) -> &[QuotientElement] {
        &self.components
    }

    pub fn raw(&self) -> Vec<Polynomial> {
        self.components.iter().map(|c| c.rep().clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(QuotientElement::is_zero)
    }

    pub fn format(&self, x: &VarietyDescriptor) -> String {
        format_vector_field(&self.raw(), x.vars())
    }

    /// `eta(f) = sum g_j df/dx_j` reduced modulo `I`.
    pub fn apply(&self, x: &VarietyDescriptor, f: &QuotientElement) -> QuotientElement {
        x.reduce(&self.apply_raw(f.rep()))
    }

    /// Unreduced `sum g_j df/dx_j`.
    pub fn apply_raw(&self, f: &Polynomial) -> Polynomial {
        self.components.iter().enumerate().fold(Polynomial::zero(f.nvars()), |acc, (j, g)| {
            let d = f.diff(j);
            if d.is_zero() {
                acc
            } else {
                &acc + &(g.rep() * &d)
            }
        })
    }

    pub fn add(&self, other: &VectorField) -> VectorField {
        VectorField { components: self.components.iter().zip(&other.components).map(|(a, b)| QuotientElement::from_normal(a.rep() + b.rep())).collect() }
    }

    pub fn sub(&self, other: &VectorField) -> VectorField {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> VectorField {
        VectorField { components: self.components.iter().map(|a| QuotientElement::from_normal(a.rep().scale(c))).collect() }
    }

    /// The field `f * eta`.
    pub fn multiply(&self, x: &VarietyDescriptor, f: &QuotientElement) -> VectorField {
        VectorField { components: self.components.iter().map(|g| x.mul(f, g)).collect() }
    }

    /// Values of the components at a point of `X`.
    pub fn evaluate(&self, x: &VarietyDescriptor, point: &[Rational]) -> Result<Vec<Rational>, VarietyError> {
        self.components.iter().map(|g| x.value(g, point)).collect()
    }
}

/// `[eta, mu]_j = eta(mu_j) - mu(eta_j)`.
pub fn bracket(x: &VarietyDescriptor, eta: &VectorField, mu: &VectorField) -> VectorField {
    let comps = eta
        .components
        .iter()
        .zip(&mu.components)
        .map(|(e, m)| x.reduce(&(&eta.apply_raw(m.rep()) - &mu.apply_raw(e.rep()))))
        .collect();
    VectorField { components: comps }
}

/// Tangency of a raw coefficient vector.
pub fn is_tangent(x: &VarietyDescriptor, components: &[Polynomial]) -> bool {
    components.len() == x.nvars() && x.is_tangent(components)
}

pub fn tangent_evaluation(x: &VarietyDescriptor, eta: &VectorField, point: &[Rational]) -> Result<Vec<Rational>, VarietyError> {
    eta.evaluate(x, point)
}

/// The values of `fields` at `point` span the tangent space there.
pub fn ampleness_check(x: &VarietyDescriptor, point: &[Rational], fields: &[VectorField]) -> Result<bool, VarietyError> {
    if x.is_singular_point(point)? {
        return Err(VarietyError::SingularPoint(crate::variety::format_point(point)));
    }
    let values = fields.iter().map(|f| f.evaluate(x, point)).collect::<Result<Vec<_>, _>>()?;
    Ok(rank_of(&values) == x.dimension())
}

/// Generators of the `A`-module of tangent fields, with relations among them.
#[derive(Debug, Clone)]
pub struct DerivationModuleGens {
    pub generators: Vec<VectorField>,
    /// Coefficient vectors `c` with `sum c_i generators[i] = 0` in `A^n`.
    pub relations: Vec<Vec<QuotientElement>>,
}

fn padding(x: &VarietyDescriptor, rank: usize) -> Vec<FreeModuleVector> {
    let n = x.nvars();
    let mut out = Vec::new();
    for f in x.generators() {
        for i in 0..rank {
            out.push(FreeModuleVector::basis_multiple(rank, i, f.clone()));
        }
    }
    if out.is_empty() {
        out.push(FreeModuleVector::zero(rank, n));
    }
    out
}

/// Submodule of `R^n` spanned by the fields together with `I * R^n`.
pub fn field_span(x: &VarietyDescriptor, fields: &[VectorField]) -> ModuleBasis {
    let mut vs: Vec<FreeModuleVector> = fields.iter().map(|f| FreeModuleVector::new(f.raw())).collect();
    vs.extend(padding(x, x.nvars()));
    module_groebner(&vs, ModuleOrder::default()).expect("nonempty input")
}

/// `eta` lies in the `A`-span of `fields`.
pub fn span_contains(x: &VarietyDescriptor, fields: &[VectorField], eta: &VectorField) -> bool {
    field_span(x, fields).contains(&FreeModuleVector::new(eta.raw()))
}

/// The `A`-spans of `a` and `b` coincide.
pub fn same_span(x: &VarietyDescriptor, a: &[VectorField], b: &[VectorField]) -> bool {
    let sa = field_span(x, a);
    let sb = field_span(x, b);
    b.iter().all(|f| sa.contains(&FreeModuleVector::new(f.raw())))
        && a.iter().all(|f| sb.contains(&FreeModuleVector::new(f.raw())))
}

/// Relations `c in A^p` with `sum c_i fields[i] = 0`, from the syzygies of
/// the lifted family `fields ∪ {f_k e_j}`.
pub fn field_relations(x: &VarietyDescriptor, fields: &[VectorField]) -> Vec<Vec<QuotientElement>> {
    let n = x.nvars();
    let p = fields.len();
    if p == 0 {
        return Vec::new();
    }
    let mut vs: Vec<FreeModuleVector> = fields.iter().map(|f| FreeModuleVector::new(f.raw())).collect();
    if !x.generators().is_empty() {
        vs.extend(padding(x, n));
    }
    let syz = syzygies(&vs, n).expect("consistent ranks");
    let mut out: Vec<Vec<QuotientElement>> = Vec::new();
    for r in syz.relations {
        let c: Vec<QuotientElement> = r.components[..p].iter().map(|q| x.reduce(q)).collect();
        if c.iter().any(|q| !q.is_zero()) && !out.contains(&c) {
            out.push(c);
        }
    }
    out
}

/// `c` lies in the `A`-span of `relations` inside `A^p`.
pub fn relation_in_span(x: &VarietyDescriptor, relations: &[Vec<QuotientElement>], c: &[QuotientElement]) -> bool {
    let p = c.len();
    let mut vs: Vec<FreeModuleVector> =
        relations.iter().map(|r| FreeModuleVector::new(r.iter().map(|q| q.rep().clone()).collect())).collect();
    vs.extend(padding(x, p));
    let basis = module_groebner(&vs, ModuleOrder::default()).expect("nonempty input");
    basis.contains(&FreeModuleVector::new(c.iter().map(|q| q.rep().clone()).collect()))
}

/// Generators of the module of tangent fields, obtained from the syzygies of
/// the Jacobian columns together with `f_k e_i`.
pub fn derivation_module_generators(x: &VarietyDescriptor) -> DerivationModuleGens {
    let n = x.nvars();
    let m = x.generators().len();
    let candidates: Vec<Vec<Polynomial>> = if m == 0 {
        (0..n).map(|j| (0..n).map(|k| if j == k { Polynomial::one(n) } else { Polynomial::zero(n) }).collect()).collect()
    } else {
        let jac = x.jacobian();
        let mut vs: Vec<FreeModuleVector> =
            (0..n).map(|j| FreeModuleVector::new((0..m).map(|i| jac[i][j].clone()).collect())).collect();
        vs.extend(padding(x, m));
        let syz = syzygies(&vs, n).expect("consistent ranks");
        syz.relations.into_iter().map(|r| r.components[..n].to_vec()).collect()
    };
    let mut fields: Vec<VectorField> = Vec::new();
    for c in candidates {
        let reduced: Vec<QuotientElement> = c.iter().map(|p| x.reduce(p)).collect();
        let f = normalize(VectorField { components: reduced });
        if !f.is_zero() && !fields.contains(&f) {
            assert!(x.is_tangent(&f.raw()), "syzygy projection is not tangent");
            fields.push(f);
        }
    }
    let mut k = 0;
    while k < fields.len() {
        let others: Vec<VectorField> =
            fields.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, f)| f.clone()).collect();
        if span_contains(x, &others, &fields[k]) {
            fields.remove(k);
        } else {
            k += 1;
        }
    }
    let relations = field_relations(x, &fields);
    DerivationModuleGens { generators: fields, relations }
}

/// Scales so the first nonzero component has leading coefficient one.
fn normalize(f: VectorField) -> VectorField {
    let lead = f
        .components
        .iter()
        .find(|c| !c.is_zero())
        .map(|c| c.rep().leading_term(MonomialOrder::Grevlex).expect("nonzero").1);
    match lead {
        Some(c) if !c.is_one() => f.scale(&c.recip()),
        _ => f,
    }
}

/// Checks `[f eta, g mu] = f g [eta, mu] + f eta(g) mu - g mu(f) eta`.
pub fn bracket_expansion_holds(
    x: &VarietyDescriptor,
    f: &QuotientElement,
    g: &QuotientElement,
    eta: &VectorField,
    mu: &VectorField,
) -> bool {
    let lhs = bracket(x, &eta.multiply(x, f), &mu.multiply(x, g));
    let rhs = bracket(x, eta, mu)
        .multiply(x, &x.mul(f, g))
        .add(&mu.multiply(x, &x.mul(f, &eta.apply(x, g))))
        .sub(&eta.multiply(x, &x.mul(g, &mu.apply(x, f))));
    lhs == rhs
}

/// Checks `[mu, f eta] - [f mu, eta] = eta(f) mu + mu(f) eta`.
pub fn switch_identity_holds(x: &VarietyDescriptor, f: &QuotientElement, eta: &VectorField, mu: &VectorField) -> bool {
    let lhs = bracket(x, mu, &eta.multiply(x, f)).sub(&bracket(x, &mu.multiply(x, f), eta));
    let rhs = mu.multiply(x, &eta.apply(x, f)).add(&eta.multiply(x, &mu.apply(x, f)));
    lhs == rhs
}

/// Checks `[mu, f h mu] - [f mu, h mu] = 2 h mu(f) mu`.
pub fn self_identity_holds(x: &VarietyDescriptor, f: &QuotientElement, h: &QuotientElement, mu: &VectorField) -> bool {
    let lhs = bracket(x, mu, &mu.multiply(x, &x.mul(f, h))).sub(&bracket(x, &mu.multiply(x, f), &mu.multiply(x, h)));
    let rhs = mu.multiply(x, &x.mul(h, &mu.apply(x, f))).scale(&Rational::from_integer(2.into()));
    lhs == rhs
}

/// Jacobi identity for three fields.
pub fn jacobi_holds(x: &VarietyDescriptor, a: &VectorField, b: &VectorField, c: &VectorField) -> bool {
    let t1 = bracket(x, a, &bracket(x, b, c));
    let t2 = bracket(x, b, &bracket(x, c, a));
    let t3 = bracket(x, c, &bracket(x, a, b));
    t1.add(&t2).add(&t3).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle() -> VarietyDescriptor {
        VarietyDescriptor::parse("x1 x2", &["x1^2 + x2^2 - 1"]).unwrap()
    }

    fn sphere() -> VarietyDescriptor {
        VarietyDescriptor::parse("x1 x2 x3", &["x1^2 + x2^2 + x3^2 - 1"]).unwrap()
    }

    #[test]
    fn tangency() {
        let c = circle();
        assert!(VectorField::parse(&c, "x2, -x1").is_ok());
        assert_eq!(VectorField::parse(&c, "1, 0").unwrap_err(), FieldError::NotTangent);
        assert!(VectorField::parse(&c, "0, 0").unwrap().is_zero());
        assert!(matches!(VectorField::parse(&c, "0"), Err(FieldError::Parse(_))));
    }

    #[test]
    fn application() {
        let c = circle();
        let d = VectorField::parse(&c, "x2, -x1").unwrap();
        assert_eq!(d.apply(&c, &c.coordinate(0)), c.coordinate(1));
        assert!(d.apply(&c, &c.one()).is_zero());
        let h = VarietyDescriptor::parse("x y", &["y^2 - 2*(x^3 + 1)"]).unwrap();
        let tau = VectorField::parse(&h, "y, 3*x^2").unwrap();
        assert_eq!(tau.apply(&h, &h.coordinate(0)), h.coordinate(1));
    }

    #[test]
    fn brackets() {
        let w = VarietyDescriptor::parse("x", &[]).unwrap();
        let dx = VectorField::parse(&w, "1").unwrap();
        let xdx = VectorField::parse(&w, "x").unwrap();
        assert_eq!(bracket(&w, &dx, &xdx), dx);
        let s = sphere();
        let d12 = VectorField::parse(&s, "x2, -x1, 0").unwrap();
        let d13 = VectorField::parse(&s, "x3, 0, -x1").unwrap();
        let d23 = VectorField::parse(&s, "0, x3, -x2").unwrap();
        assert_eq!(bracket(&s, &d12, &d13), d23);
        assert!(jacobi_holds(&s, &d12, &d13, &d23));
    }

    #[test]
    fn circle_generators() {
        let c = circle();
        let gens = derivation_module_generators(&c);
        let text: Vec<String> = gens.generators.iter().map(|g| g.format(&c)).collect();
        assert_eq!(text, ["x2, -x1"]);
        assert!(gens.relations.is_empty());
    }

    #[test]
    fn curve_generators() {
        let h = VarietyDescriptor::parse("x y", &["y^2 - 2*x^3 - 2"]).unwrap();
        let gens = derivation_module_generators(&h);
        let text: Vec<String> = gens.generators.iter().map(|g| g.format(&h)).collect();
        assert_eq!(text, ["y, 3*x^2"]);
    }

    #[test]
    fn affine_space_has_coordinate_fields() {
        let w = VarietyDescriptor::parse("x y", &[]).unwrap();
        let gens = derivation_module_generators(&w);
        let text: Vec<String> = gens.generators.iter().map(|g| g.format(&w)).collect();
        assert_eq!(text, ["1, 0", "0, 1"]);
    }

    #[test]
    fn ampleness() {
        let c = circle();
        let d = VectorField::parse(&c, "x2, -x1").unwrap();
        let p = [crate::poly::rat(0), crate::poly::rat(1)];
        assert!(ampleness_check(&c, &p, std::slice::from_ref(&d)).unwrap());
        assert!(!ampleness_check(&c, &p, &[d.multiply(&c, &c.coordinate(0))]).unwrap());
        let s = sphere();
        let q = [crate::poly::rat(0), crate::poly::rat(0), crate::poly::rat(1)];
        let f13 = VectorField::parse(&s, "x3, 0, -x1").unwrap();
        let f23 = VectorField::parse(&s, "0, x3, -x2").unwrap();
        assert!(ampleness_check(&s, &q, &[f13, f23]).unwrap());
    }
}
