use serde_json::json;

use liefields::hyperelliptic::{HEElement, HyperellipticCurve, UniPoly};
use liefields::parser::{format_polynomial, parse_polynomial};
use liefields::poly::Polynomial;
use liefields::sample::{self, seeded};
use liefields::sphere::harmonic_project;
use liefields::variety::VarietyDescriptor;
use liefields::vecfield::{
    bracket, bracket_expansion_holds, derivation_module_generators, jacobi_holds, self_identity_holds, switch_identity_holds,
};

use crate::Outcome;

type Check = (&'static str, Box<dyn Fn(u64) -> bool>);

fn checks() -> Vec<Check> {
    let circle = VarietyDescriptor::parse("x1 x2", &["x1^2 + x2^2 - 1"]).expect("circle");
    let curve = VarietyDescriptor::parse("x y", &["y^2 - 2*x^3 - 2"]).expect("curve");
    let c2 = circle.clone();
    let c3 = circle.clone();
    let c4 = circle.clone();
    vec![
        (
            "quotient ring axioms",
            Box::new(move |s| {
                let mut r = seeded(s);
                let (a, b, c) = (sample::element(&mut r, &c2, 3, 4), sample::element(&mut r, &c2, 3, 4), sample::element(&mut r, &c2, 3, 4));
                c2.mul(&c2.add(&a, &b), &c) == c2.add(&c2.mul(&a, &c), &c2.mul(&b, &c)) && c2.mul(&a, &b) == c2.mul(&b, &a)
            }),
        ),
        (
            "normal form idempotence",
            Box::new(move |s| {
                let p = sample::polynomial(&mut seeded(s), 2, 5, 6, 9);
                let once = c3.reduce(&p);
                c3.reduce(once.rep()) == once
            }),
        ),
        (
            "parse/format round trip",
            Box::new(|s| {
                let vars = vec!["x".to_string(), "y".to_string(), "z".to_string()];
                let p = sample::polynomial(&mut seeded(s), 3, 4, 6, 20);
                parse_polynomial(&format_polynomial(&p, &vars), &vars).is_ok_and(|q| q == p)
            }),
        ),
        (
            "bracket expansion and Jacobi",
            Box::new(move |s| {
                let mut r = seeded(s);
                let gens = derivation_module_generators(&curve).generators;
                let (e, m, n) = (sample::field(&mut r, &curve, &gens, 2), sample::field(&mut r, &curve, &gens, 2), sample::field(&mut r, &curve, &gens, 1));
                let (f, g) = (sample::element(&mut r, &curve, 2, 3), sample::element(&mut r, &curve, 2, 3));
                bracket_expansion_holds(&curve, &f, &g, &e, &m)
                    && jacobi_holds(&curve, &e, &m, &n)
                    && bracket(&curve, &e, &m).add(&bracket(&curve, &m, &e)).is_zero()
            }),
        ),
        (
            "switch and self identities",
            Box::new(move |s| {
                let mut r = seeded(s);
                let gens = derivation_module_generators(&c4).generators;
                let (e, m) = (sample::field(&mut r, &c4, &gens, 2), sample::field(&mut r, &c4, &gens, 2));
                let (f, h) = (sample::element(&mut r, &c4, 2, 3), sample::element(&mut r, &c4, 2, 3));
                switch_identity_holds(&c4, &f, &e, &m) && self_identity_holds(&c4, &f, &h, &m)
            }),
        ),
        (
            "harmonic projection idempotence",
            Box::new(|s| {
                let mut r = seeded(s);
                let d = (s % 5) as u32;
                let p: Polynomial = sample::polynomial(&mut r, 3, d, 5, 6);
                let form = p.homogeneous_part(d);
                match harmonic_project(&form) {
                    Ok(h) => harmonic_project(&h).is_ok_and(|hh| hh == h),
                    Err(_) => false,
                }
            }),
        ),
        (
            "leading-term multiplicativity",
            Box::new(|s| {
                let mut r = seeded(s);
                let c = HyperellipticCurve::new(UniPoly::from_i64(&[1, 0, 0, 1])).expect("curve");
                let mut draw = || {
                    let p = sample::polynomial(&mut r, 1, 4, 3, 5);
                    let q = sample::polynomial(&mut r, 1, 3, 2, 5);
                    let uni = |p: &Polynomial| {
                        let mut v = vec![Default::default(); 6];
                        for (m, c) in p.terms() {
                            v[m.exponents()[0] as usize] = c.clone();
                        }
                        UniPoly::new(v)
                    };
                    HEElement::new(uni(&p), uni(&q))
                };
                let (u, v) = (draw(), draw());
                if u.is_zero() || v.is_zero() {
                    return true;
                }
                let uv = c.multiply(&u, &v);
                c.leading_term(&uv) == Some(c.leading_term(&u).expect("nonzero").mul(&c.leading_term(&v).expect("nonzero")))
                    && c.degree(&uv) == Some(c.degree(&u).expect("nonzero") + c.degree(&v).expect("nonzero"))
            }),
        ),
        (
            "circle smoothness certificate",
            Box::new(move |_| {
                let cert = circle.smoothness_certificate();
                cert.verify(circle.nvars())
            }),
        ),
    ]
}

pub fn run(seed: u64, cases: usize) -> Outcome {
    let mut text = String::new();
    let mut results = Vec::new();
    let mut ok = true;
    for (name, check) in checks() {
        let failures: Vec<u64> = (0..cases as u64).map(|k| seed.wrapping_mul(1_000_003).wrapping_add(k)).filter(|&s| !check(s)).collect();
        let pass = failures.is_empty();
        ok &= pass;
        text.push_str(&format!("{} {name} ({cases} cases)\n", if pass { "PASS" } else { "FAIL" }));
        results.push(json!({"check": name, "pass": pass, "cases": cases, "failing_seeds": failures}));
    }
    Outcome { ok, text, json: json!({"schema": 1, "command": "selftest", "seed": seed, "results": results}) }
}
