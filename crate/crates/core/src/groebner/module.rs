//! Submodules of free modules `R^rank`: bases, normal forms and syzygies.

use thiserror::Error;

use super::engine::{Element, Engine, MVec, ModuleOrder, ModuleOrderKind};
use crate::poly::{MonomialOrder, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuleError {
    #[error("no generators supplied")]
    EmptyInput,
    #[error("vector has {got} components, expected {expected}")]
    RankMismatch { expected: usize, got: usize },
    #[error("component lives in {got} variables, expected {expected}")]
    AmbientMismatch { expected: usize, got: usize },
}

/// Element of `R^rank`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FreeModuleVector {
    pub components: Vec<Polynomial>,
}

impl FreeModuleVector {
    pub fn new(components: Vec<Polynomial>) -> Self {
        FreeModuleVector { components }
    }

    pub fn zero(rank: usize, nvars: usize) -> Self {
        FreeModuleVector { components: vec![Polynomial::zero(nvars); rank] }
    }

    /// `c * e_i`.
    pub fn basis_multiple(rank: usize, i: usize, c: Polynomial) -> Self {
        let nvars = c.nvars();
        let mut v = Self::zero(rank, nvars);
        v.components[i] = c;
        v
    }

    pub fn rank(&self) -> usize {
        self.components.len()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Polynomial::is_zero)
    }

    pub fn scale(&self, c: &Polynomial) -> Self {
        FreeModuleVector { components: self.components.iter().map(|p| p * c).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.rank(), other.rank());
        FreeModuleVector { components: self.components.iter().zip(&other.components).map(|(a, b)| a + b).collect() }
    }

    /// `sum coeffs[i] * vs[i]`.
    pub fn combination(coeffs: &[Polynomial], vs: &[FreeModuleVector], rank: usize, nvars: usize) -> Self {
        coeffs.iter().zip(vs).fold(Self::zero(rank, nvars), |acc, (c, v)| acc.add(&v.scale(c)))
    }
}

fn check(vs: &[FreeModuleVector], rank: usize, nvars: usize) -> Result<(), ModuleError> {
    for v in vs {
        if v.rank() != rank {
            return Err(ModuleError::RankMismatch { expected: rank, got: v.rank() });
        }
        if let Some(p) = v.components.iter().find(|p| p.nvars() != nvars) {
            return Err(ModuleError::AmbientMismatch { expected: nvars, got: p.nvars() });
        }
    }
    Ok(())
}

/// Reduced Gröbner basis of a submodule of `R^rank`.
#[derive(Debug, Clone)]
pub struct ModuleBasis {
    rank: usize,
    nvars: usize,
    order: ModuleOrder,
    elements: Vec<Element>,
}

impl ModuleBasis {
    pub fn compute(
        rank: usize,
        nvars: usize,
        vs: &[FreeModuleVector],
        order: ModuleOrder,
    ) -> Result<Self, ModuleError> {
        check(vs, rank, nvars)?;
        let engine = Engine { nvars, order, track: false, ninputs: vs.len() };
        let inputs = vs.iter().map(|v| MVec::from_components(&v.components, &order)).collect();
        let elements = engine.groebner(inputs, rank);
        Ok(ModuleBasis { rank, nvars, order, elements })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generators(&self) -> Vec<FreeModuleVector> {
        self.elements.iter().map(|e| FreeModuleVector::new(e.vec.to_components(self.rank, self.nvars))).collect()
    }

    pub fn normal_form(&self, v: &FreeModuleVector) -> FreeModuleVector {
        assert_eq!(v.rank(), self.rank, "rank mismatch");
        let engine = Engine { nvars: self.nvars, order: self.order, track: false, ninputs: 0 };
        let red = engine.reduce(MVec::from_components(&v.components, &self.order), &self.elements, None);
        FreeModuleVector::new(red.remainder.to_components(self.rank, self.nvars))
    }

    pub fn contains(&self, v: &FreeModuleVector) -> bool {
        self.normal_form(v).is_zero()
    }

    pub fn s_vectors_reduce_to_zero(&self) -> bool {
        let engine = Engine { nvars: self.nvars, order: self.order, track: false, ninputs: 0 };
        engine.s_vectors_reduce_to_zero(&self.elements)
    }
}

/// Gröbner basis of the span of `vs` in position-over-term grevlex.
pub fn module_groebner(vs: &[FreeModuleVector], order: ModuleOrder) -> Result<ModuleBasis, ModuleError> {
    let first = vs.first().ok_or(ModuleError::EmptyInput)?;
    let nvars = first.components.first().map_or(0, Polynomial::nvars);
    ModuleBasis::compute(first.rank(), nvars, vs, order)
}

/// Generators of the relation module `{s : sum s_i v_i = 0}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyzygyBasis {
    pub relations: Vec<FreeModuleVector>,
}

impl SyzygyBasis {
    pub fn len(&self) -> usize {
        self.relations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }
}

/// Syzygies of `vs` (all of rank `l` over `nvars` variables).
///
/// Each `v_i` is augmented to `(v_i | e_i)` and a basis is computed in an
/// order where the first `l` positions dominate; the elements that vanish on
/// those positions span the relations. Each relation is checked exactly.
pub fn syzygies(vs: &[FreeModuleVector], nvars: usize) -> Result<SyzygyBasis, ModuleError> {
    let first = vs.first().ok_or(ModuleError::EmptyInput)?;
    let l = first.rank();
    check(vs, l, nvars)?;
    let k = vs.len();
    let order = ModuleOrder { term: MonomialOrder::Grevlex, kind: ModuleOrderKind::Elimination { head: l } };
    let augmented: Vec<FreeModuleVector> = vs
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let mut comps = v.components.clone();
            comps.extend((0..k).map(|j| if i == j { Polynomial::one(nvars) } else { Polynomial::zero(nvars) }));
            FreeModuleVector::new(comps)
        })
        .collect();
    let basis = ModuleBasis::compute(l + k, nvars, &augmented, order)?;
    let relations: Vec<FreeModuleVector> = basis
        .elements
        .iter()
        .filter(|e| e.vec.lead().is_some_and(|t| t.0 >= l))
        .map(|e| {
            let comps = e.vec.to_components(l + k, nvars);
            debug_assert!(comps[..l].iter().all(Polynomial::is_zero));
            FreeModuleVector::new(comps[l..].to_vec())
        })
        .collect();
    for s in &relations {
        assert!(
            FreeModuleVector::combination(&s.components, vs, l, nvars).is_zero(),
            "computed relation does not vanish"
        );
    }
    Ok(SyzygyBasis { relations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::{names, parse_polynomial};

    fn vecs(vars: &str, rows: &[&[&str]]) -> Vec<FreeModuleVector> {
        let v = names(vars);
        rows.iter()
            .map(|r| FreeModuleVector::new(r.iter().map(|s| parse_polynomial(s, &v).unwrap()).collect()))
            .collect()
    }

    #[test]
    fn koszul_relation() {
        let vs = vecs("x y", &[&["x"], &["y"]]);
        let syz = syzygies(&vs, 2).unwrap();
        assert_eq!(syz.len(), 1);
        let r = &syz.relations[0];
        let expected = vecs("x y", &[&["y", "-x"], &["-y", "x"]]);
        assert!(r == &expected[0] || r == &expected[1]);
    }

    #[test]
    fn syzygies_of_three_linear_forms() {
        let vs = vecs("x y z", &[&["x"], &["y"], &["z"]]);
        let syz = syzygies(&vs, 3).unwrap();
        assert_eq!(syz.len(), 3);
        let span = module_groebner(&syz.relations, ModuleOrder::default()).unwrap();
        for probe in vecs("x y z", &[&["y", "-x", "0"], &["z", "0", "-x"], &["0", "z", "-y"]]) {
            assert!(span.contains(&probe));
        }
    }

    #[test]
    fn module_membership() {
        let vs = vecs("x y", &[&["x", "y"], &["y", "0"]]);
        let b = module_groebner(&vs, ModuleOrder::default()).unwrap();
        assert!(b.s_vectors_reduce_to_zero());
        let probe = vecs("x y", &[&["x^2 + y^2", "x*y"], &["1", "0"]]);
        assert!(b.contains(&probe[0]));
        assert!(!b.contains(&probe[1]));
        let top = module_groebner(&vs, ModuleOrder { term: MonomialOrder::Grevlex, kind: ModuleOrderKind::TermOverPosition })
            .unwrap();
        assert!(top.contains(&probe[0]));
        assert!(!top.contains(&probe[1]));
    }

    #[test]
    fn errors() {
        assert_eq!(syzygies(&[], 2).unwrap_err(), ModuleError::EmptyInput);
        let mut vs = vecs("x y", &[&["x", "y"], &["y", "0"]]);
        vs[1].components.pop();
        assert!(matches!(syzygies(&vs, 2), Err(ModuleError::RankMismatch { .. })));
    }
}
