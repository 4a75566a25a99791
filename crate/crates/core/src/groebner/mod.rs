//! Gröbner bases of ideals and submodules, normal forms, membership
//! certificates, radical membership and syzygies.

mod engine;
mod module;

pub use engine::{ModuleOrder, ModuleOrderKind};
pub use module::{module_groebner, syzygies, FreeModuleVector, ModuleBasis, ModuleError, SyzygyBasis};

use engine::{Element, Engine, MVec};

use crate::poly::{MonomialOrder, Polynomial};

/// Reduced, monic Gröbner basis of an ideal.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    nvars: usize,
    order: MonomialOrder,
    ninputs: usize,
    elements: Vec<Element>,
    generators: Vec<Polynomial>,
}

impl GroebnerBasis {
    /// Reduced basis of `<gens>` without cofactor tracking.
    pub fn new(nvars: usize, gens: &[Polynomial], order: MonomialOrder) -> Self {
        Self::compute(nvars, gens, order, false)
    }

    /// Reduced basis that remembers how each element is built from `gens`.
    pub fn with_cofactors(nvars: usize, gens: &[Polynomial], order: MonomialOrder) -> Self {
        Self::compute(nvars, gens, order, true)
    }

    fn compute(nvars: usize, gens: &[Polynomial], order: MonomialOrder, track: bool) -> Self {
        assert!(gens.iter().all(|g| g.nvars() == nvars), "generators must share the ambient");
        let morder = ModuleOrder::ideal(order);
        let engine = Engine { nvars, order: morder, track, ninputs: gens.len() };
        let inputs = gens.iter().map(|g| MVec::from_components(std::slice::from_ref(g), &morder)).collect();
        let elements = engine.groebner(inputs, 1);
        let generators = elements.iter().map(|e| e.vec.to_components(1, nvars).remove(0)).collect();
        GroebnerBasis { nvars, order, ninputs: gens.len(), elements, generators }
    }

    fn engine(&self, track: bool) -> Engine {
        Engine { nvars: self.nvars, order: ModuleOrder::ideal(self.order), track, ninputs: self.ninputs }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn tracks_cofactors(&self) -> bool {
        self.elements.iter().all(|e| e.cofactors.is_some())
    }

    /// Cofactor matrix: row `k` expresses generator `k` in the inputs.
    pub fn cofactors(&self) -> Option<Vec<Vec<Polynomial>>> {
        self.elements.iter().map(|e| e.cofactors.clone()).collect()
    }

    pub fn is_unit(&self) -> bool {
        self.generators.len() == 1 && self.generators[0].as_constant().is_some_and(|c| c != num_traits::Zero::zero())
    }

    pub fn normal_form(&self, p: &Polynomial) -> Polynomial {
        let o = ModuleOrder::ideal(self.order);
        let red = self.engine(false).reduce(MVec::from_components(std::slice::from_ref(p), &o), &self.elements, None);
        red.remainder.to_components(1, self.nvars).remove(0)
    }

    pub fn contains(&self, p: &Polynomial) -> bool {
        self.normal_form(p).is_zero()
    }

    /// Remainder and, for members, the cofactors `q` with `p = sum q_i gens_i`.
    pub fn reduce_with_cofactors(&self, p: &Polynomial) -> (Polynomial, Option<Vec<Polynomial>>) {
        let o = ModuleOrder::ideal(self.order);
        let track = self.tracks_cofactors();
        let red = self.engine(track).reduce(MVec::from_components(std::slice::from_ref(p), &o), &self.elements, None);
        (red.remainder.to_components(1, self.nvars).remove(0), red.cofactors)
    }

    /// Every S-polynomial reduces to zero.
    pub fn s_polynomials_reduce_to_zero(&self) -> bool {
        self.engine(false).s_vectors_reduce_to_zero(&self.elements)
    }

    /// Inter-reduced with unit leading coefficients.
    pub fn is_reduced(&self) -> bool {
        for (i, g) in self.generators.iter().enumerate() {
            let Ok((lm, lc)) = g.leading_term(self.order) else { return false };
            if lc != num_traits::One::one() {
                return false;
            }
            for (j, h) in self.generators.iter().enumerate() {
                if i == j {
                    continue;
                }
                let hl = h.leading_term(self.order).expect("nonzero").0;
                if g.terms().any(|(m, _)| hl.divides(m)) {
                    return false;
                }
            }
            let _ = lm;
        }
        true
    }
}

/// Reduced Gröbner basis of `<gens>`.
pub fn buchberger(nvars: usize, gens: &[Polynomial], order: MonomialOrder) -> GroebnerBasis {
    GroebnerBasis::new(nvars, gens, order)
}

pub fn normal_form(p: &Polynomial, basis: &GroebnerBasis) -> Polynomial {
    basis.normal_form(p)
}

/// Outcome of a membership test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Membership {
    pub member: bool,
    /// `p = sum cofactors[i] * gens[i]`, verified by expansion.
    pub cofactors: Option<Vec<Polynomial>>,
}

/// `sum q_i g_i`.
pub fn expand_combination(cofactors: &[Polynomial], gens: &[Polynomial], nvars: usize) -> Polynomial {
    cofactors.iter().zip(gens).fold(Polynomial::zero(nvars), |acc, (q, g)| &acc + &(q * g))
}

/// Decides `p in <gens>`; with `certify`, also returns a verified certificate.
pub fn ideal_membership(p: &Polynomial, gens: &[Polynomial], certify: bool) -> Membership {
    let nvars = p.nvars();
    if !certify {
        return Membership { member: GroebnerBasis::new(nvars, gens, MonomialOrder::Grevlex).contains(p), cofactors: None };
    }
    let gb = GroebnerBasis::with_cofactors(nvars, gens, MonomialOrder::Grevlex);
    let (rem, cof) = gb.reduce_with_cofactors(p);
    if !rem.is_zero() {
        return Membership { member: false, cofactors: None };
    }
    let cof = cof.expect("tracking enabled");
    assert_eq!(expand_combination(&cof, gens, nvars), *p, "membership certificate failed to expand");
    Membership { member: true, cofactors: Some(cof) }
}

/// `p` vanishes on `V(gens)` over the algebraic closure: Rabinowitsch's
/// trick, `1 in <gens, 1 - z p>` with one fresh variable `z`.
pub fn radical_membership(p: &Polynomial, gens: &[Polynomial]) -> bool {
    let n = p.nvars();
    let z = Polynomial::var(n + 1, n);
    let mut ext: Vec<Polynomial> = gens.iter().map(|g| g.extend_vars(1)).collect();
    ext.push(&Polynomial::one(n + 1) - &(&z * &p.extend_vars(1)));
    GroebnerBasis::new(n + 1, &ext, MonomialOrder::Grevlex).is_unit()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::{names, parse_polynomial};
    use crate::poly::rat;

    fn polys(vars: &str, src: &[&str]) -> Vec<Polynomial> {
        let v = names(vars);
        src.iter().map(|s| parse_polynomial(s, &v).unwrap()).collect()
    }

    #[test]
    fn principal_ideals_are_already_reduced() {
        let g = polys("x", &["x"]);
        assert_eq!(buchberger(1, &g, MonomialOrder::Grevlex).generators(), g.as_slice());
        let c = polys("x1 x2", &["x1^2 + x2^2 - 1"]);
        assert_eq!(buchberger(2, &c, MonomialOrder::Grevlex).generators(), c.as_slice());
    }

    #[test]
    fn unit_ideal_with_cofactors() {
        let g = polys("x1 x2", &["x1^2 + x2^2 - 1", "x1", "x2"]);
        let gb = GroebnerBasis::with_cofactors(2, &g, MonomialOrder::Grevlex);
        assert!(gb.is_unit());
        let cof = &gb.cofactors().unwrap()[0];
        assert_eq!(expand_combination(cof, &g, 2), Polynomial::one(2));
    }

    #[test]
    fn normal_forms() {
        let c = polys("x1 x2", &["x1^2 + x2^2 - 1", "x1^2 + x2^2"]);
        let gb = buchberger(2, &c[..1], MonomialOrder::Grevlex);
        assert_eq!(gb.normal_form(&c[1]), Polynomial::one(2));
        assert!(gb.normal_form(&Polynomial::zero(2)).is_zero());
        let h = polys("x y", &["y^2 - 2*x^3 - 2", "x^3", "1/2*y^2 - 1"]);
        let gb = buchberger(2, &h[..1], MonomialOrder::Grevlex);
        assert_eq!(gb.normal_form(&h[1]), h[2]);
        assert_eq!(gb.normal_form(&gb.normal_form(&h[1])), gb.normal_form(&h[1]));
    }

    #[test]
    fn membership_examples() {
        let g = polys("x1 x2", &["x1^2 + x2^2 - 1", "1", "x1^2 + x2^2"]);
        let m = ideal_membership(&g[2], &g[..2], true);
        assert!(m.member);
        assert_eq!(expand_combination(m.cofactors.as_ref().unwrap(), &g[..2], 2), g[2]);
        let s = polys("x1 x2", &["x1^2", "x1"]);
        assert!(!ideal_membership(&s[1], &s[..1], true).member);
        // Delta_12 applied to the circle equation: 2 x1 x2 - 2 x2 x1
        let zero = polys("x1 x2", &["2*x1*x2 - 2*x2*x1"]);
        assert!(zero[0].is_zero());
        assert!(ideal_membership(&zero[0], &s[..1], true).member);
    }

    #[test]
    fn radical_examples() {
        let g = polys("x", &["x^2", "x"]);
        assert!(radical_membership(&g[1], &g[..1]));
        let c = polys("x1 x2", &["x1^2 + x2^2 - 1", "x2"]);
        assert!(!radical_membership(&c[1], &c[..1]));
        assert!(!radical_membership(&Polynomial::one(1), &[Polynomial::zero(1)]));
        assert!(!radical_membership(&Polynomial::one(1), &[]));
    }

    #[test]
    fn empty_and_zero_inputs() {
        let gb = buchberger(2, &[], MonomialOrder::Grevlex);
        assert!(gb.generators().is_empty());
        assert_eq!(gb.normal_form(&Polynomial::var(2, 0)), Polynomial::var(2, 0));
        let gb = buchberger(2, &[Polynomial::zero(2)], MonomialOrder::Grevlex);
        assert!(gb.generators().is_empty());
    }

    #[test]
    fn lex_basis_of_twisted_cubic() {
        let g = polys("x y z", &["y - x^2", "z - x^3"]);
        let gb = buchberger(3, &g, MonomialOrder::Lex);
        assert!(gb.s_polynomials_reduce_to_zero());
        assert!(gb.is_reduced());
        let yz = polys("x y z", &["y^3 - z^2"]);
        assert!(gb.contains(&yz[0]));
        let gr = buchberger(3, &g, MonomialOrder::Grevlex);
        assert!(gr.s_polynomials_reduce_to_zero());
        assert!(gr.contains(&yz[0]));
        assert!(!gr.contains(&Polynomial::var(3, 0)));
    }

    #[test]
    fn cyclic_three_with_cofactors() {
        let g = polys("a b c", &["a + b + c", "a*b + b*c + c*a", "a*b*c - 1"]);
        let gb = GroebnerBasis::with_cofactors(3, &g, MonomialOrder::Grevlex);
        assert!(gb.s_polynomials_reduce_to_zero());
        assert!(gb.is_reduced());
        for (gen, cof) in gb.generators().iter().zip(gb.cofactors().unwrap()) {
            assert_eq!(&expand_combination(&cof, &g, 3), gen);
        }
        let probe = polys("a b c", &["c^3 - 1"]);
        let m = ideal_membership(&probe[0], &g, true);
        assert!(m.member);
        let _ = rat(0);
    }
}
