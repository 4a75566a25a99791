//! The singular-locus ideal as an invariant of every tangent field, and the
//! filtration of fields by how deeply they map into its powers.

use super::{derivation_module_generators, VectorField};
use crate::groebner::ideal_membership;
use crate::poly::Polynomial;
use crate::variety::{QuotientElement, VarietyDescriptor};

/// Every computed generator maps every maximal minor back into `I_sing + I`.
pub fn singular_invariance_check(x: &VarietyDescriptor) -> bool {
    let sing: Vec<Polynomial> = x.singular_ideal().iter().map(|q| q.rep().clone()).collect();
    let mut ideal = sing.clone();
    ideal.extend(x.generators().iter().cloned());
    let gens = derivation_module_generators(x).generators;
    gens.iter().all(|eta| {
        x.singular_ideal().iter().all(|d| ideal_membership(eta.apply(x, d).rep(), &ideal, false).member)
    })
}

/// Generators of `I_sing^i` modulo `I`, as products of `i` minors.
pub fn singular_ideal_power(x: &VarietyDescriptor, i: u32) -> Vec<QuotientElement> {
    let mut acc = vec![x.one()];
    for _ in 0..i {
        let mut next: Vec<QuotientElement> = Vec::new();
        for a in &acc {
            for d in x.singular_ideal() {
                let p = x.mul(a, d);
                if !p.is_zero() && !next.contains(&p) {
                    next.push(p);
                }
            }
        }
        acc = next;
    }
    acc
}

/// `eta(A) ⊂ I_sing^i`, tested on the coordinate functions.
pub fn filtration_membership(x: &VarietyDescriptor, eta: &VectorField, i: u32) -> bool {
    let mut ideal: Vec<Polynomial> = singular_ideal_power(x, i).into_iter().map(QuotientElement::into_rep).collect();
    ideal.extend(x.generators().iter().cloned());
    (0..x.nvars()).all(|j| ideal_membership(eta.apply(x, &x.coordinate(j)).rep(), &ideal, false).member)
}
