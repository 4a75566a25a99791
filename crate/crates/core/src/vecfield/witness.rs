//! Constructive witnesses: fields in the Lie ideal generated by a seed that
//! do not vanish at a point, second derivatives, the bracket identity that
//! moves function multiples into an ideal, and the global certificate that
//! the ideal generated by a seed is everything.

use num_traits::Zero;
use serde_json::{json, Value};
use thiserror::Error;

use super::{bracket, FieldError, VectorField};
use crate::groebner::{expand_combination, ideal_membership, radical_membership, GroebnerBasis};
use crate::poly::{Monomial, MonomialOrder, Polynomial, Rational};
use crate::variety::{format_point, LocalExpansion, QuotientElement, VarietyDescriptor};

/// Expression for an element of the Lie ideal generated by a seed field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdealChain {
    Seed,
    /// `[with, inner]`.
    Bracket { with: VectorField, inner: Box<IdealChain> },
    /// `by * inner`.
    Scale { by: QuotientElement, inner: Box<IdealChain> },
}

impl IdealChain {
    pub fn bracket(with: VectorField, inner: IdealChain) -> Self {
        IdealChain::Bracket { with, inner: Box::new(inner) }
    }

    /// Replays the chain on `seed`.
    pub fn evaluate(&self, x: &VarietyDescriptor, seed: &VectorField) -> VectorField {
        match self {
            IdealChain::Seed => seed.clone(),
            IdealChain::Bracket { with, inner } => bracket(x, with, &inner.evaluate(x, seed)),
            IdealChain::Scale { by, inner } => inner.evaluate(x, seed).multiply(x, by),
        }
    }

    /// Number of brackets in the chain.
    pub fn brackets(&self) -> usize {
        match self {
            IdealChain::Seed => 0,
            IdealChain::Bracket { inner, .. } => 1 + inner.brackets(),
            IdealChain::Scale { inner, .. } => inner.brackets(),
        }
    }

    pub fn to_json(&self, x: &VarietyDescriptor) -> Value {
        match self {
            IdealChain::Seed => json!({ "op": "seed" }),
            IdealChain::Bracket { with, inner } => {
                json!({ "op": "bracket", "with": with.format(x), "arg": inner.to_json(x) })
            }
            IdealChain::Scale { by, inner } => json!({ "op": "scale", "by": x.format(by.rep()), "arg": inner.to_json(x) }),
        }
    }
}

/// A field `mu` in the ideal generated by the seed, and a local parameter
/// `f` with `mu(f)(P) != 0`.
#[derive(Debug, Clone)]
pub struct AmpleWitness {
    pub mu: VectorField,
    pub chain: IdealChain,
    /// Index of the chosen local parameter among the chart's free coordinates.
    pub parameter: usize,
    pub f: QuotientElement,
    pub value: Rational,
    /// Exponents of the differentiated monomial.
    pub exponents: Vec<u32>,
    /// Jet order at which the lowest-order part was read.
    pub jet_order: u32,
}

/// Finds `mu = ad(tau_1)^k1 ... ad(tau_s)^ks eta` with `mu(t_j0)(P) != 0`.
///
/// The jets of `eta(t_j)` are computed to `jet_order`; when all vanish the
/// order is doubled, up to `jet_cap`.
pub fn ample_witness(
    x: &VarietyDescriptor,
    point: &[Rational],
    eta: &VectorField,
    jet_order: u32,
    jet_cap: u32,
) -> Result<AmpleWitness, FieldError> {
    if eta.is_zero() {
        return Err(FieldError::ZeroField);
    }
    let chart = x.local_chart(point)?;
    let taus: Vec<VectorField> = chart.fields.iter().map(|c| VectorField::from_reduced(c.clone())).collect();
    let mut order = jet_order.max(1);
    loop {
        let exp = LocalExpansion::compute(x, &chart, order);
        let jets: Vec<_> = chart.free.iter().map(|&fj| exp.jet(eta.components()[fj].rep())).collect();
        let lowest = jets.iter().filter_map(|j| j.series().terms().map(|(m, _)| m.degree()).min()).min();
        let Some(d) = lowest else {
            if order >= jet_cap {
                return Err(FieldError::WitnessNotFound { order });
            }
            order = (order * 2).min(jet_cap);
            continue;
        };
        let j0 = jets
            .iter()
            .position(|j| j.series().terms().any(|(m, _)| m.degree() == d))
            .expect("some component attains the lowest degree");
        let part = jets[j0].series().homogeneous_part(d);
        let mono: Monomial = part.leading_term(MonomialOrder::Lex).expect("nonzero").0;
        let exponents = mono.exponents().to_vec();
        let mut mu = eta.clone();
        let mut chain = IdealChain::Seed;
        for j in (0..taus.len()).rev() {
            for _ in 0..exponents[j] {
                mu = bracket(x, &taus[j], &mu);
                chain = IdealChain::bracket(taus[j].clone(), chain);
            }
        }
        let f = chart.parameter(x, j0);
        let value = x.value(&mu.apply(x, &f), point)?;
        if value.is_zero() {
            return Err(FieldError::WitnessNotFound { order });
        }
        return Ok(AmpleWitness { mu, chain, parameter: j0, f, value, exponents, jet_order: order });
    }
}

/// Some `g` with `mu(mu(g)) != 0`: the first monomial `f` in degree order
/// with `mu(f) != 0`, or its square when `mu(mu(f)) = 0`.
pub fn nonzero_second_derivative(x: &VarietyDescriptor, mu: &VectorField) -> Result<QuotientElement, FieldError> {
    if mu.is_zero() {
        return Err(FieldError::ZeroField);
    }
    let n = x.nvars();
    for d in 1..=4u32 {
        let mut monos: Vec<Monomial> = monomials_of_degree(n, d);
        monos.sort_by(|a, b| MonomialOrder::Grevlex.cmp(b, a));
        for m in monos {
            let f = x.reduce(&Polynomial::monomial(m, Rational::from_integer(1.into())));
            let mf = mu.apply(x, &f);
            if mf.is_zero() {
                continue;
            }
            if !mu.apply(x, &mf).is_zero() {
                return Ok(f);
            }
            return Ok(x.mul(&f, &f));
        }
    }
    unreachable!("a nonzero field moves some coordinate")
}

pub(crate) fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
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
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    go(0, d, &mut vec![0; n], &mut out);
    out
}

/// The three brackets whose combination equals `q tau` with
/// `q = p mu(f) mu(mu(g))`.
#[derive(Debug, Clone)]
pub struct BracketWitness {
    /// `[F mu, f tau]` with `F = p mu(mu(g))`.
    pub first: VectorField,
    /// `[f F mu, tau]`.
    pub second: VectorField,
    /// `tau(f) F mu`.
    pub third: VectorField,
    pub q: QuotientElement,
    /// `q tau`.
    pub product: VectorField,
}

/// Evaluates both sides of `first - second - third = q tau`; an error here
/// means an arithmetic bug, since the identity always holds.
pub fn simplicity_witness(
    x: &VarietyDescriptor,
    mu: &VectorField,
    tau: &VectorField,
    f: &QuotientElement,
    g: &QuotientElement,
    p: &QuotientElement,
) -> BracketWitness {
    let mmg = mu.apply(x, &mu.apply(x, g));
    let big_f = x.mul(p, &mmg);
    let fmu = mu.multiply(x, &big_f);
    let first = bracket(x, &fmu, &tau.multiply(x, f));
    let second = bracket(x, &fmu.multiply(x, f), tau);
    let third = fmu.multiply(x, &tau.apply(x, f));
    let q = x.mul(&x.mul(p, &mu.apply(x, f)), &mmg);
    let product = tau.multiply(x, &q);
    let lhs = first.sub(&second).sub(&third);
    assert_eq!(lhs, product, "bracket identity failed");
    BracketWitness { first, second, third, q, product }
}

/// Tuning for [`global_one_certificate`].
#[derive(Debug, Clone)]
pub struct CertificateOptions {
    pub jet_order: u32,
    pub jet_cap: u32,
    /// Height bound for automatically sampled rational points.
    pub fallback_height: i64,
    /// Maximum number of automatically sampled points.
    pub fallback_points: usize,
}

impl Default for CertificateOptions {
    fn default() -> Self {
        CertificateOptions { jet_order: 6, jet_cap: 48, fallback_height: 3, fallback_points: 24 }
    }
}

/// Functions one sample point contributes to `I_0`.
#[derive(Debug, Clone)]
pub struct PointContribution {
    pub point: Vec<Rational>,
    pub witness: AmpleWitness,
    /// `(g, q)` with `q = mu(f) mu(mu(g))` for `g` in `{f, f^2}`, zeros dropped.
    pub products: Vec<(QuotientElement, QuotientElement)>,
    pub automatic: bool,
}

/// Verified expansion of `1` in `I_0 + I`.
#[derive(Debug, Clone)]
pub struct GlobalCertificate {
    pub contributions: Vec<PointContribution>,
    pub skipped_singular: Vec<Vec<Rational>>,
    /// The products from every contribution followed by the generators of `I`.
    pub ideal: Vec<Polynomial>,
    pub cofactors: Vec<Polynomial>,
}

impl GlobalCertificate {
    pub fn verify(&self, x: &VarietyDescriptor) -> bool {
        expand_combination(&self.cofactors, &self.ideal, x.nvars()) == Polynomial::one(x.nvars())
    }

    pub fn to_json(&self, x: &VarietyDescriptor) -> Value {
        let contributions: Vec<Value> = self
            .contributions
            .iter()
            .map(|c| {
                json!({
                    "point": format_point(&c.point),
                    "automatic": c.automatic,
                    "mu": c.witness.mu.format(x),
                    "chain": c.witness.chain.to_json(x),
                    "f": x.format(c.witness.f.rep()),
                    "products": c.products.iter().map(|(g, q)| json!({"g": x.format(g.rep()), "q": x.format(q.rep())})).collect::<Vec<_>>(),
                })
            })
            .collect();
        json!({
            "contributions": contributions,
            "skipped_singular": self.skipped_singular.iter().map(|p| format_point(p)).collect::<Vec<_>>(),
            "ideal": self.ideal.iter().map(|p| x.format(p)).collect::<Vec<_>>(),
            "cofactors": self.cofactors.iter().map(|p| x.format(p)).collect::<Vec<_>>(),
        })
    }
}

/// Why no certificate was found: the reduced basis of `I_0 + I` and the
/// coordinates that vanish on its zero locus.
#[derive(Debug, Clone, Error)]
#[error("1 is not in the ideal generated by the sampled products; uncovered locus has basis [{}]", basis.join(", "))]
pub struct CertificateFailure {
    pub contributions: Vec<PointContribution>,
    pub skipped_singular: Vec<Vec<Rational>>,
    pub basis: Vec<String>,
    /// Names of coordinates lying in the radical of `I_0 + I`.
    pub vanishing_coordinates: Vec<String>,
    pub cause: Option<FieldError>,
}

/// Builds `I_0` from sample points (then automatically sampled points) and
/// certifies `1 in I_0 + I`.
pub fn global_one_certificate(
    x: &VarietyDescriptor,
    seed: &VectorField,
    samples: &[Vec<Rational>],
    opts: &CertificateOptions,
) -> Result<GlobalCertificate, CertificateFailure> {
    let mut contributions: Vec<PointContribution> = Vec::new();
    let mut skipped: Vec<Vec<Rational>> = Vec::new();
    let mut cause = None;
    let attempt = |contributions: &[PointContribution]| -> Option<(Vec<Polynomial>, Vec<Polynomial>)> {
        let mut ideal: Vec<Polynomial> =
            contributions.iter().flat_map(|c| c.products.iter().map(|(_, q)| q.rep().clone())).collect();
        if ideal.is_empty() {
            return None;
        }
        ideal.extend(x.generators().iter().cloned());
        let m = ideal_membership(&Polynomial::one(x.nvars()), &ideal, true);
        m.cofactors.map(|c| (ideal, c))
    };

    let mut process = |p: &[Rational], automatic: bool, contributions: &mut Vec<PointContribution>| -> Result<(), FieldError> {
        if x.is_singular_point(p)? {
            skipped.push(p.to_vec());
            return Ok(());
        }
        let w = ample_witness(x, p, seed, opts.jet_order, opts.jet_cap)?;
        let mf = w.mu.apply(x, &w.f);
        let mut products = Vec::new();
        for g in [w.f.clone(), x.mul(&w.f, &w.f)] {
            let q = x.mul(&mf, &w.mu.apply(x, &w.mu.apply(x, &g)));
            if !q.is_zero() && !contributions.iter().flat_map(|c| &c.products).any(|(_, e)| e == &q) {
                products.push((g, q));
            }
        }
        contributions.push(PointContribution { point: p.to_vec(), witness: w, products, automatic });
        Ok(())
    };

    for p in samples {
        if let Err(e) = process(p, false, &mut contributions) {
            cause = Some(e);
        }
    }
    let mut found = attempt(&contributions);
    if found.is_none() {
        for p in x.small_points(opts.fallback_height, opts.fallback_points) {
            if samples.contains(&p) {
                continue;
            }
            if let Err(e) = process(&p, true, &mut contributions) {
                cause = Some(e);
                continue;
            }
            if contributions.last().is_some_and(|c| c.point == p && !c.products.is_empty()) {
                found = attempt(&contributions);
                if found.is_some() {
                    break;
                }
            }
        }
    }
    match found {
        Some((ideal, cofactors)) => {
            let cert = GlobalCertificate { contributions, skipped_singular: skipped, ideal, cofactors };
            assert!(cert.verify(x), "certificate failed to expand");
            Ok(cert)
        }
        None => {
            let mut ideal: Vec<Polynomial> =
                contributions.iter().flat_map(|c| c.products.iter().map(|(_, q)| q.rep().clone())).collect();
            ideal.extend(x.generators().iter().cloned());
            let gb = GroebnerBasis::new(x.nvars(), &ideal, MonomialOrder::Grevlex);
            let basis = gb.generators().iter().map(|g| x.format(g)).collect();
            let vanishing_coordinates = (0..x.nvars())
                .filter(|&i| radical_membership(&Polynomial::var(x.nvars(), i), &ideal))
                .map(|i| x.vars()[i].clone())
                .collect();
            Err(CertificateFailure { contributions, skipped_singular: skipped, basis, vanishing_coordinates, cause })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn circle() -> VarietyDescriptor {
        VarietyDescriptor::parse("x1 x2", &["x1^2 + x2^2 - 1"]).unwrap()
    }

    #[test]
    fn circle_ample_witnesses() {
        let c = circle();
        let d = VectorField::parse(&c, "x2, -x1").unwrap();
        let p = [rat(0), rat(1)];
        let w = ample_witness(&c, &p, &d, 6, 48).unwrap();
        assert_eq!(w.chain, IdealChain::Seed);
        assert_eq!(w.value, rat(1));
        assert_eq!(w.f, c.coordinate(0));
        let eta = d.multiply(&c, &c.coordinate(0));
        let w = ample_witness(&c, &p, &eta, 6, 48).unwrap();
        assert_eq!(w.chain.brackets(), 1);
        assert_eq!(w.value, rat(2));
        assert_eq!(w.mu, d.multiply(&c, &c.coordinate(1)).scale(&rat(2)));
        assert_eq!(w.chain.evaluate(&c, &eta), w.mu);
        assert!(ample_witness(&c, &p, &VectorField::zero(&c), 6, 48).is_err());
    }

    #[test]
    fn second_derivatives() {
        let w = VarietyDescriptor::parse("x", &[]).unwrap();
        let dx = VectorField::parse(&w, "1").unwrap();
        assert_eq!(w.format(nonzero_second_derivative(&w, &dx).unwrap().rep()), "x^2");
        let e = VectorField::parse(&w, "x").unwrap();
        assert_eq!(w.format(nonzero_second_derivative(&w, &e).unwrap().rep()), "x");
        let c = circle();
        let d = VectorField::parse(&c, "x2, -x1").unwrap();
        assert_eq!(nonzero_second_derivative(&c, &d).unwrap(), c.coordinate(0));
    }

    #[test]
    fn bracket_witness_on_the_line() {
        let w = VarietyDescriptor::parse("x", &[]).unwrap();
        let mu = VectorField::parse(&w, "1").unwrap();
        let tau = VectorField::parse(&w, "x^2").unwrap();
        let bw = simplicity_witness(&w, &mu, &tau, &w.coordinate(0), &w.parse_element("x^2").unwrap(), &w.one());
        assert_eq!(bw.product.format(&w), "2*x^2");
        assert_eq!(bw.q, w.constant(rat(2)));
        let z = simplicity_witness(&w, &mu, &tau, &w.coordinate(0), &w.coordinate(0), &w.zero());
        assert!(z.product.is_zero() && z.first.is_zero());
    }

    #[test]
    fn circle_certificate_from_three_points() {
        let c = circle();
        let d = VectorField::parse(&c, "x2, -x1").unwrap();
        let samples = vec![vec![rat(0), rat(1)], vec![rat(1), rat(0)], vec![rat(0), rat(-1)]];
        let cert = global_one_certificate(&c, &d, &samples, &CertificateOptions::default()).unwrap();
        assert!(cert.verify(&c));
        assert!(cert.contributions.iter().all(|k| !k.automatic));
    }

    #[test]
    fn monomial_enumeration() {
        let m = monomials_of_degree(2, 2);
        assert_eq!(m.len(), 3);
        assert_eq!(monomials_of_degree(3, 3).len(), 10);
    }
}
