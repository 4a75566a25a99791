//! Random instances for property checks. Everything takes an explicit RNG so
//! runs are reproducible from a seed.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::poly::{Monomial, Polynomial, Rational};
use crate::variety::{QuotientElement, VarietyDescriptor};
use crate::vecfield::VectorField;

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `p/q` with `|p| <= bound` and `1 <= q <= denominators`.
pub fn rational<R: Rng>(rng: &mut R, bound: i64, denominators: i64) -> Rational {
    Rational::new(rng.gen_range(-bound..=bound).into(), rng.gen_range(1..=denominators.max(1)).into())
}

/// Up to `terms` terms of total degree at most `degree`, integer
/// coefficients in `[-bound, bound]`.
pub fn polynomial<R: Rng>(rng: &mut R, nvars: usize, degree: u32, terms: usize, bound: i64) -> Polynomial {
    let mut acc = Polynomial::zero(nvars);
    for _ in 0..terms {
        let total = rng.gen_range(0..=degree);
        let mut exps = vec![0u32; nvars];
        for _ in 0..total {
            if nvars > 0 {
                exps[rng.gen_range(0..nvars)] += 1;
            }
        }
        let c = Rational::from_integer(rng.gen_range(-bound..=bound).into());
        acc += &Polynomial::monomial(Monomial::from_exponents(exps), c);
    }
    acc
}

pub fn element<R: Rng>(rng: &mut R, x: &VarietyDescriptor, degree: u32, terms: usize) -> QuotientElement {
    x.reduce(&polynomial(rng, x.nvars(), degree, terms, 4))
}

/// `Σ c_k g_k` over the given generators with random low-degree
/// coefficients.
pub fn field<R: Rng>(rng: &mut R, x: &VarietyDescriptor, generators: &[VectorField], degree: u32) -> VectorField {
    generators.iter().fold(VectorField::zero(x), |acc, g| {
        let c = element(rng, x, degree, 2);
        acc.add(&g.multiply(x, &c))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible() {
        let a = polynomial(&mut seeded(7), 3, 4, 5, 9);
        let b = polynomial(&mut seeded(7), 3, 4, 5, 9);
        assert_eq!(a, b);
        assert!(a.degree().unwrap_or(0) <= 4);
    }
}
