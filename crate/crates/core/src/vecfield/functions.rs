//! Breadth-first search in the module of functions generated by one function
//! under the action of tangent fields.

use std::collections::HashSet;

use num_traits::Zero;

use super::{derivation_module_generators, FieldError, VectorField};
use crate::poly::Rational;
use crate::variety::{QuotientElement, VarietyDescriptor};

/// One step of a word: apply `coefficient * generator`, where the
/// coefficient is `1` or a coordinate function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Letter {
    pub generator: usize,
    /// `None` for the generator itself, `Some(i)` for `x_i` times it.
    pub coordinate: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct FunctionWitness {
    pub f: QuotientElement,
    /// Letters in application order: the first letter acts on `g` first.
    pub word: Vec<Letter>,
    pub value: Rational,
    pub generators: Vec<VectorField>,
}

/// Finds `f = eta_k ... eta_1 g` with `f(P) != 0`, over words of length at
/// most `bound`.
pub fn function_module_witness(
    x: &VarietyDescriptor,
    g: &QuotientElement,
    point: &[Rational],
    bound: usize,
) -> Result<FunctionWitness, FieldError> {
    x.check_point(point)?;
    let generators = derivation_module_generators(x).generators;
    let mut alphabet: Vec<(Letter, VectorField)> = Vec::new();
    for (k, eta) in generators.iter().enumerate() {
        alphabet.push((Letter { generator: k, coordinate: None }, eta.clone()));
    }
    for (k, eta) in generators.iter().enumerate() {
        for i in 0..x.nvars() {
            alphabet.push((Letter { generator: k, coordinate: Some(i) }, eta.multiply(x, &x.coordinate(i))));
        }
    }
    let mut seen: HashSet<QuotientElement> = HashSet::new();
    let mut level: Vec<(QuotientElement, Vec<Letter>)> = vec![(g.clone(), Vec::new())];
    seen.insert(g.clone());
    for depth in 0..=bound {
        for (f, word) in &level {
            let v = x.value(f, point)?;
            if !v.is_zero() {
                return Ok(FunctionWitness { f: f.clone(), word: word.clone(), value: v, generators });
            }
        }
        if depth == bound {
            break;
        }
        let mut next = Vec::new();
        for (f, word) in &level {
            for (letter, eta) in &alphabet {
                let h = eta.apply(x, f);
                if h.is_zero() || !seen.insert(h.clone()) {
                    continue;
                }
                let mut w = word.clone();
                w.push(letter.clone());
                next.push((h, w));
            }
        }
        level = next;
    }
    Err(FieldError::SearchExhausted { bound })
}
