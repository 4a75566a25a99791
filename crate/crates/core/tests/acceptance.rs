//! Acceptance gate. Runs every criterion, prints one line per criterion and
//! exits nonzero if any fails. Arithmetic is exact, so every comparison is an
//! equality; the only tolerances are the wall-clock limits below.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;

use liefields::alggroup::GroupContext;
use liefields::groebner::{
    ideal_membership, module_groebner, radical_membership, syzygies, FreeModuleVector, GroebnerBasis, ModuleOrder,
};
use liefields::hyperelliptic::{HEElement, HyperellipticCurve, UniPoly};
use liefields::parser::{names, parse_polynomial};
use liefields::poly::{rat, MonomialOrder, Polynomial, Rational};
use liefields::sample::{self, seeded};
use liefields::sphere::{
    harmonic_dimension_by_kernel, harmonic_dimension_formula, harmonic_project, sl_basis, Direction, SlElement, SphereContext,
};
use liefields::variety::VarietyDescriptor;
use liefields::vecfield::{
    ample_witness, bracket_expansion_holds, derivation_module_generators, field_relations, filtration_membership,
    global_one_certificate, nonzero_second_derivative, relation_in_span, same_span, self_identity_holds,
    simplicity_witness, singular_invariance_check, switch_identity_holds, CertificateOptions, VectorField,
};

const LIMIT_CIRCLE: Duration = Duration::from_secs(1);
const LIMIT_SPHERE_MODULE: Duration = Duration::from_secs(10);
const LIMIT_CURVE_EACH: Duration = Duration::from_secs(5);
const LIMIT_PIPELINE: Duration = Duration::from_secs(30);
const LIMIT_HARMONICS: Duration = Duration::from_secs(60);
const LIMIT_GROUP: Duration = Duration::from_secs(30);
const LIMIT_NONE: Duration = Duration::from_secs(600);

const IDENTITY_INSTANCES: u64 = 200;
const LT_PAIRS: u64 = 200;
const SPREAD_SAMPLES: u64 = 50;
const RADICAL_CASES: usize = 30;
const RADICAL_MAX_POWER: u32 = 4;
const SEED_BASE: u64 = 0x5eed;

type Outcome = Result<String, String>;

fn ensure(cond: bool, what: &str) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.to_string())
    }
}

fn variety(vars: &str, gens: &[&str]) -> VarietyDescriptor {
    VarietyDescriptor::parse(vars, gens).expect("valid variety")
}

fn field(x: &VarietyDescriptor, text: &str) -> VectorField {
    VectorField::parse(x, text).expect("tangent field")
}

fn circle() -> Outcome {
    let x = variety("x1 x2", &["x1^2 + x2^2 - 1"]);
    let gens = derivation_module_generators(&x).generators;
    ensure(same_span(&x, &gens, &[field(&x, "x2, -x1")]), "span differs from <Δ12>")?;
    let cert = x.smoothness_certificate();
    ensure(cert.smooth && cert.verify(x.nvars()), "smoothness certificate does not expand to 1")?;
    Ok(format!("{} generator(s), certificate verified", gens.len()))
}

fn sphere_module() -> Outcome {
    let s = SphereContext::new(3).expect("N = 3");
    let x = s.variety();
    let computed = derivation_module_generators(x);
    let d = |a, b| s.delta_field(a, b).expect("distinct indices");
    let deltas = [d(0, 1), d(0, 2), d(1, 2)];
    ensure(same_span(x, &computed.generators, &deltas), "span differs from <Δ12, Δ13, Δ23>")?;
    let ordered = [d(0, 1), d(1, 2), d(2, 0)];
    let relations = field_relations(x, &ordered);
    let target = [x.coordinate(2), x.coordinate(0), x.coordinate(1)];
    ensure(relation_in_span(x, &relations, &target), "x3Δ12 + x1Δ23 + x2Δ31 not among the relations")?;
    let combo = ordered.iter().zip(&target).fold(VectorField::zero(x), |acc, (f, c)| acc.add(&f.multiply(x, c)));
    ensure(combo.is_zero(), "relation does not vanish")?;
    Ok(format!("{} generators, {} relations", computed.generators.len(), relations.len()))
}

fn curves() -> Outcome {
    let mut notes = Vec::new();
    for (h, expect_gens) in [("x^3 + 1", 1usize), ("x^3", 2), ("x^3 + x^2", 2)] {
        let start = Instant::now();
        let c = HyperellipticCurve::parse(h).expect("curve");
        let x = c.variety().expect("variety");
        let gens = c.module_generators();
        ensure(gens.len() == expect_gens, &format!("h = {h}: wrong generator count"))?;
        let fields: Vec<VectorField> = gens.iter().map(|g| c.to_field(&x, g)).collect();
        let generic = derivation_module_generators(&x).generators;
        ensure(same_span(&x, &fields, &generic), &format!("h = {h}: span differs from the general computation"))?;
        if expect_gens == 1 {
            ensure(fields[0] == field(&x, "y, 3*x^2"), "h = x^3 + 1: generator is not y∂x + 3x^2∂y")?;
        } else {
            let (r, s) = c.relation_defect().expect("singular curve");
            ensure(r.is_zero() && s.is_zero(), &format!("h = {h}: y·τ != d·µ"))?;
            let y = x.coordinate(1);
            let d = x.reduce(&c.smoothness_gcd().to_polynomial(2, 0));
            ensure(fields[0].multiply(&x, &y) == fields[1].multiply(&x, &d), &format!("h = {h}: relation fails in A"))?;
        }
        if h == "x^3" {
            ensure(fields[1] == field(&x, "2*x, 3*y"), "h = x^3: µ is not (2x, 3y)")?;
        }
        let t = start.elapsed();
        ensure(t <= LIMIT_CURVE_EACH, &format!("h = {h}: {t:?} exceeds {LIMIT_CURVE_EACH:?}"))?;
        notes.push(format!("{h}: {:.0?}", t));
    }
    Ok(notes.join(", "))
}

fn identities() -> Outcome {
    let xs = [variety("x1 x2", &["x1^2 + x2^2 - 1"]), variety("x y", &["y^2 - 2*x^3 - 2"])];
    let gens: Vec<Vec<VectorField>> = xs.iter().map(|x| derivation_module_generators(x).generators).collect();
    let mut counts = [0u64; 4];
    for k in 0..IDENTITY_INSTANCES {
        let mut r = seeded(SEED_BASE + k);
        let i = (k % 2) as usize;
        let x = &xs[i];
        let eta = sample::field(&mut r, x, &gens[i], 2);
        let mu = sample::field(&mut r, x, &gens[i], 2);
        let f = sample::element(&mut r, x, 2, 3);
        let g = sample::element(&mut r, x, 2, 3);
        let p = sample::element(&mut r, x, 1, 2);
        ensure(bracket_expansion_holds(x, &f, &g, &eta, &mu), &format!("bracket expansion, instance {k}"))?;
        counts[0] += 1;
        ensure(switch_identity_holds(x, &f, &eta, &mu), &format!("switch identity, instance {k}"))?;
        counts[1] += 1;
        ensure(self_identity_holds(x, &f, &g, &mu), &format!("self identity, instance {k}"))?;
        counts[2] += 1;
        let held = catch_unwind(AssertUnwindSafe(|| {
            let w = simplicity_witness(x, &mu, &eta, &f, &g, &p);
            w.first.sub(&w.second).sub(&w.third) == w.product
        }));
        ensure(held.unwrap_or(false), &format!("witness identity, instance {k}"))?;
        counts[3] += 1;
    }
    Ok(format!("{} / {} / {} / {} instances", counts[0], counts[1], counts[2], counts[3]))
}

fn pipeline() -> Outcome {
    let x = variety("x1 x2", &["x1^2 + x2^2 - 1"]);
    let seed = field(&x, "x1*x2, -x1^2");
    let samples = vec![vec![rat(0), rat(1)], vec![rat(1), rat(0)], vec![rat(0), rat(-1)]];
    for p in &samples {
        let w = ample_witness(&x, p, &seed, 6, 48).map_err(|e| format!("ample witness at {p:?}: {e}"))?;
        ensure(!w.value.is_zero(), "witness value is zero")?;
        let g = nonzero_second_derivative(&x, &w.mu).map_err(|e| e.to_string())?;
        ensure(!w.mu.apply(&x, &w.mu.apply(&x, &g)).is_zero(), "second derivative vanishes")?;
    }
    let cert = global_one_certificate(&x, &seed, &samples, &CertificateOptions::default()).map_err(|e| e.to_string())?;
    ensure(cert.verify(&x), "circle certificate does not expand to 1")?;

    let cusp = variety("x y", &["y^2 - 2*x^3"]);
    let euler = field(&cusp, "2*x, 3*y");
    let fail = match global_one_certificate(&cusp, &euler, &[vec![rat(2), rat(4)]], &CertificateOptions::default()) {
        Ok(_) => return Err("cusp produced a certificate".into()),
        Err(f) => f,
    };
    ensure(fail.vanishing_coordinates == ["x", "y"], "uncovered locus is not the cusp point")?;
    let deep = euler.multiply(&cusp, &cusp.parse_element("x^2").expect("element"));
    ensure(!deep.is_zero() && filtration_membership(&cusp, &deep, 1), "no nonzero element of J_1")?;
    ensure(!filtration_membership(&cusp, &euler, 2), "Euler field lies in J_2")?;
    Ok(format!(
        "circle: {} points, {} ideal generators; cusp uncovered at x = y = 0",
        cert.contributions.len(),
        cert.ideal.len()
    ))
}

fn singular_invariance() -> Outcome {
    for (name, g) in [("cusp", "y^2 - 2*x^3"), ("node", "y^2 - 2*(x^3 + x^2)")] {
        ensure(singular_invariance_check(&variety("x y", &[g])), &format!("{name} fails"))?;
    }
    Ok("cusp, node".into())
}

fn harmonics() -> Outcome {
    let n = 3;
    let v = names("x1 x2 x3");
    let p = |s: &str| parse_polynomial(s, &v).expect("polynomial");
    ensure(harmonic_project(&p("x1^2")).ok() == Some(p("2/3*x1^2 - 1/3*x2^2 - 1/3*x3^2")), "P(x1^2) != x1^2 - r^2/3")?;
    let mut r = seeded(SEED_BASE);
    for l in 0..=6u32 {
        ensure(
            harmonic_dimension_formula(n, l) == BigInt::from(harmonic_dimension_by_kernel(n, l)),
            &format!("dim H_{l} disagrees with the closed form"),
        )?;
        for _ in 0..3 {
            let f = sample::polynomial(&mut r, n, l, 6, 5).homogeneous_part(l);
            let pf = harmonic_project(&f).map_err(|e| e.to_string())?;
            ensure(harmonic_project(&pf).ok() == Some(pf.clone()), &format!("P not idempotent in degree {l}"))?;
            ensure(liefields::sphere::laplacian(&pf).is_zero(), &format!("P(f) not harmonic in degree {l}"))?;
        }
    }
    let s = SphereContext::new(n).expect("N = 3");
    let basis = sl_basis(n);
    for k in 0..SPREAD_SAMPLES {
        let mut r = seeded(SEED_BASE + 1000 + k);
        let l = r.gen_range(0..=6u32);
        let span = s.harmonic_spanning_set(l).map_err(|e| e.to_string())?;
        let h = span.iter().fold(Polynomial::zero(n), |acc, b| &acc + &b.scale(&sample::rational(&mut r, 3, 1)));
        let e: SlElement = basis[r.gen_range(0..basis.len())];
        let rep = s.spread_check(&h, &e).map_err(|e| e.to_string())?;
        ensure(rep.laplacian_cubed_vanishes && rep.lower_levels_vanish, &format!("spread check fails, sample {k}"))?;
    }
    for l in 1..=4 {
        ensure(s.generation_check(l, Direction::Up).map_err(|e| e.to_string())?.spans, &format!("up from H_{l} does not span"))?;
    }
    for l in 2..=4 {
        ensure(s.generation_check(l, Direction::Down).map_err(|e| e.to_string())?.spans, &format!("down from H_{l} does not span"))?;
    }
    ensure(!s.generation_check(0, Direction::Up).map_err(|e| e.to_string())?.spans, "constants generate H_2")?;
    Ok(format!("dims l <= 6, {SPREAD_SAMPLES} spreads, generation up 1..4 / down 2..4, fails from l = 0"))
}

fn sl3_table() -> Outcome {
    let s = SphereContext::new(3).expect("N = 3");
    for a in 0..3 {
        for b in 0..3 {
            if a != b {
                let lhs = s
                    .sl_embedding(&SlElement::Unit { a, b })
                    .and_then(|f| Ok(f.sub(&s.sl_embedding(&SlElement::Unit { a: b, b: a })?)))
                    .map_err(|e| e.to_string())?;
                ensure(lhs == s.delta_field(a, b).map_err(|e| e.to_string())?, "so_N consistency fails")?;
            }
        }
    }
    let table = s.bracket_table();
    let hom = table.iter().filter(|e| e.homomorphic).count();
    let anti = table.iter().filter(|e| e.antihomomorphic).count();
    if hom == table.len() {
        Ok(format!("{hom}/{} pairs; so_N consistent", table.len()))
    } else {
        let first = table.iter().find(|e| !e.homomorphic).expect("some failure");
        Err(format!(
            "[τX, τY] = τ[X, Y] on {hom}/{n} pairs (first failure X = {}, Y = {}); [τX, τY] = -τ[X, Y] on {anti}/{n}; so_N consistent",
            first.left.label(),
            first.right.label(),
            n = table.len()
        ))
    }
}

fn curve_window() -> Outcome {
    let c = HyperellipticCurve::new(UniPoly::from_i64(&[1, 0, 0, 1])).expect("x^3 + 1");
    let bound = 12;
    for (name, f) in [("1", HEElement::one()), ("x", HEElement::x()), ("y", HEElement::y())] {
        ensure(c.kernel_is_span(&f, bound).map_err(|e| e.to_string())?, &format!("kernel of ad({name}τ) is not span{{{name}τ}}"))?;
        ensure(c.not_in_image_check(&f, bound, 3).map_err(|e| e.to_string())?.passes(), &format!("image check fails for {name}τ"))?;
    }
    let mut checked = 0;
    for k in 0..LT_PAIRS {
        let mut r = seeded(SEED_BASE + 5000 + k);
        let mut draw = || {
            let coeffs = |r: &mut rand_chacha::ChaCha8Rng, len: usize| {
                UniPoly::new((0..len).map(|_| Rational::from_integer(r.gen_range(-4..=4i64).into())).collect())
            };
            let (lp, lq) = (r.gen_range(1..=5), r.gen_range(0..=4));
            HEElement::new(coeffs(&mut r, lp), coeffs(&mut r, lq))
        };
        let (u, v) = (draw(), draw());
        if u.is_zero() || v.is_zero() {
            continue;
        }
        let uv = c.multiply(&u, &v);
        let (lu, lv) = (c.leading_term(&u).expect("nonzero"), c.leading_term(&v).expect("nonzero"));
        ensure(c.leading_term(&uv) == Some(lu.mul(&lv)), &format!("LT not multiplicative, pair {k}"))?;
        ensure(c.degree(&uv) == Some(c.degree(&u).expect("nonzero") + c.degree(&v).expect("nonzero")), &format!("deg not additive, pair {k}"))?;
        checked += 1;
    }
    ensure(checked >= LT_PAIRS as usize * 9 / 10, "too few nonzero random pairs")?;
    Ok(format!("kernels and image checks for 1, x, y at B = {bound}; {checked} LT pairs"))
}

fn group() -> Outcome {
    let g = GroupContext::new(2, false).map_err(|e| e.to_string())?;
    let x = g.variety();
    ensure(g.commutation_check().map_err(|e| e.to_string())?, "left and right fields do not commute")?;
    ensure(g.left_structure_check().map_err(|e| e.to_string())?, "θ_L does not match sl_2 structure constants")?;
    for (j, phi) in g.tangent_basis().iter().enumerate() {
        let l = g.left_invariant_field(phi).map_err(|e| e.to_string())?;
        for (i, f) in g.cotangent_basis().iter().enumerate() {
            let want = if i == j { x.one() } else { x.zero() };
            ensure(g.gamma(&l, f).map_err(|e| e.to_string())? == want, "Γ is not the Kronecker pairing")?;
        }
    }
    let gens = derivation_module_generators(x).generators;
    for eta in &gens {
        let back = g.untrivialize(&g.trivialize(eta).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        ensure(&back == eta, "ε(δ(η)) != η")?;
    }
    Ok(format!("3x3 commutation grid, Kronecker, structure constants, {} round trips", gens.len()))
}

fn groebner_engine() -> Outcome {
    let systems: Vec<(usize, Vec<&str>, &str)> = vec![
        (2, vec!["x1^2 + x2^2 - 1"], "x1 x2"),
        (3, vec!["x1^2 + x2^2 + x3^2 - 1"], "x1 x2 x3"),
        (2, vec!["y^2 - 2*x^3 - 2", "3*x^2", "y"], "x y"),
        (2, vec!["y^2 - 2*x^3", "6*x^2", "2*y"], "x y"),
        (4, vec!["a*d - b*c - 1"], "a b c d"),
        (3, vec!["x*y - z", "y*z - x", "z*x - y"], "x y z"),
        (3, vec!["x^2 + y + z - 1", "x + y^2 + z - 1", "x + y + z^2 - 1"], "x y z"),
    ];
    let mut bases = 0;
    for (n, gens, vars) in &systems {
        let v = names(vars);
        let ps: Vec<Polynomial> = gens.iter().map(|g| parse_polynomial(g, &v).expect("polynomial")).collect();
        for order in [MonomialOrder::Grevlex, MonomialOrder::Lex] {
            let gb = GroebnerBasis::with_cofactors(*n, &ps, order);
            ensure(gb.s_polynomials_reduce_to_zero() && gb.is_reduced(), &format!("basis of {gens:?} not a reduced GB"))?;
            bases += 1;
        }
        let gb = GroebnerBasis::new(*n, &ps, MonomialOrder::Grevlex);
        let mut r = seeded(SEED_BASE + bases as u64);
        for _ in 0..5 {
            let combo = ps.iter().fold(Polynomial::zero(*n), |acc, p| &acc + &(p * &sample::polynomial(&mut r, *n, 2, 3, 4)));
            let m = ideal_membership(&combo, &ps, true);
            let cof = m.cofactors.ok_or("member without certificate")?;
            ensure(liefields::groebner::expand_combination(&cof, &ps, *n) == combo, "certificate does not expand")?;
            ensure(gb.contains(&combo), "combination not a member")?;
        }
    }
    let rank2 = {
        let v = names("x y z");
        let q = |s: &str| parse_polynomial(s, &v).expect("polynomial");
        vec![
            FreeModuleVector::new(vec![q("x"), q("y")]),
            FreeModuleVector::new(vec![q("y^2"), q("z")]),
            FreeModuleVector::new(vec![q("x*z"), q("x + z")]),
        ]
    };
    for order in [ModuleOrder::default(), ModuleOrder { kind: liefields::groebner::ModuleOrderKind::TermOverPosition, ..ModuleOrder::default() }] {
        let mb = module_groebner(&rank2, order).map_err(|e| e.to_string())?;
        ensure(mb.s_vectors_reduce_to_zero(), "module basis fails the S-vector test")?;
        bases += 1;
    }
    let syz = syzygies(&rank2, 3).map_err(|e| e.to_string())?;
    ensure(!syz.is_empty(), "three vectors in rank two have no relation")?;
    for rel in &syz.relations {
        ensure(FreeModuleVector::combination(&rel.components, &rank2, 2, 3).is_zero(), "relation does not vanish")?;
    }

    let cases = radical_cases();
    ensure(cases.len() == RADICAL_CASES, "wrong number of radical cases")?;
    for (k, (vars, gens, p)) in cases.iter().enumerate() {
        let v = names(vars);
        let ps: Vec<Polynomial> = gens.iter().map(|g| parse_polynomial(g, &v).expect("polynomial")).collect();
        let f = parse_polynomial(p, &v).expect("polynomial");
        let direct = (1..=RADICAL_MAX_POWER).any(|e| ideal_membership(&f.pow(e), &ps, false).member);
        ensure(radical_membership(&f, &ps) == direct, &format!("radical case {k}: {p} in rad{gens:?}"))?;
    }
    Ok(format!("{bases} bases, certificates exact, {RADICAL_CASES} radical cases"))
}

type RadicalCase = (&'static str, Vec<&'static str>, &'static str);

fn radical_cases() -> Vec<RadicalCase> {
    vec![
        ("x", vec!["x^2"], "x"),
        ("x", vec!["x^3"], "x + 1"),
        ("x", vec!["x^2 - 2*x + 1"], "x - 1"),
        ("x y", vec!["x^2", "y^3"], "x + y"),
        ("x y", vec!["x^2", "y^3"], "x*y + 1"),
        ("x y", vec!["x*y"], "x + y"),
        ("x y", vec!["x*y"], "x*y^2"),
        ("x y", vec!["x^2*y", "x*y^2"], "x*y"),
        ("x y", vec!["x^2*y", "x*y^2"], "x"),
        ("x y", vec!["y^2 - 2*x^3"], "y"),
        ("x y", vec!["y^2 - 2*x^3", "6*x^2", "2*y"], "x"),
        ("x y", vec!["y^2 - 2*x^3", "6*x^2", "2*y"], "y"),
        ("x y", vec!["y^2 - 2*x^3", "6*x^2", "2*y"], "x - 1"),
        ("x y", vec!["x^2 + y^2 - 1", "x", "y"], "1"),
        ("x y", vec!["(x - y)^2"], "x - y"),
        ("x y", vec!["(x - y)^2"], "x"),
        ("x y", vec!["x^2 - y", "y^2"], "x"),
        ("x y", vec!["x^2 - y", "y^2"], "y"),
        ("x y", vec!["x^2 - y", "y^2"], "x + y + 1"),
        ("x y z", vec!["x^2", "y^2", "z^2"], "x + y + z"),
        ("x y z", vec!["x^2", "y^2", "z^2"], "x*y*z + 1"),
        ("x y z", vec!["x*y", "y*z", "z*x"], "x + y"),
        ("x y z", vec!["x*y", "y*z", "z*x"], "x*y + y*z"),
        ("x y z", vec!["(x + y + z)^3"], "x + y + z"),
        ("x y z", vec!["(x + y + z)^3"], "x"),
        ("x y z", vec!["x^2 - y*z", "y^2 - x*z", "z^2 - x*y"], "x - y"),
        ("x y z", vec!["x^2", "x*y", "y^3"], "y"),
        ("x y z", vec!["x^2", "x*y", "y^3"], "z"),
        ("x y z", vec!["x*y - 1", "z"], "z"),
        ("x y z", vec!["x*y - 1", "z"], "x"),
    ]
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { id: 1, name: "circle module and smoothness certificate", limit: LIMIT_CIRCLE, run: circle },
        Criterion { id: 2, name: "sphere N=3 module and three-term relation", limit: LIMIT_SPHERE_MODULE, run: sphere_module },
        Criterion { id: 3, name: "hyperelliptic generators and y·τ = d·µ", limit: LIMIT_CURVE_EACH * 3, run: curves },
        Criterion { id: 4, name: "bracket, switch, self and witness identities", limit: LIMIT_NONE, run: identities },
        Criterion { id: 5, name: "ampleness and simplicity pipeline", limit: LIMIT_PIPELINE, run: pipeline },
        Criterion { id: 6, name: "singular ideal invariance", limit: LIMIT_NONE, run: singular_invariance },
        Criterion { id: 7, name: "sphere harmonics", limit: LIMIT_HARMONICS, run: harmonics },
        Criterion { id: 8, name: "sl_3 multiplication table", limit: LIMIT_NONE, run: sl3_table },
        Criterion { id: 9, name: "hyperelliptic bounded window", limit: LIMIT_NONE, run: curve_window },
        Criterion { id: 10, name: "SL_2 invariant fields and trivialization", limit: LIMIT_GROUP, run: group },
        Criterion { id: 11, name: "Groebner engine", limit: LIMIT_NONE, run: groebner_engine },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let result = catch_unwind(c.run).unwrap_or_else(|_| Err("panicked".into()));
        let t = start.elapsed();
        let result = match result {
            Ok(_) if t > c.limit => Err(format!("took {t:?}, limit {:?}", c.limit)),
            other => other,
        };
        match result {
            Ok(detail) => println!("PASS [{:>2}] {} ({t:.2?}): {detail}", c.id, c.name),
            Err(detail) => {
                failed += 1;
                println!("FAIL [{:>2}] {} ({t:.2?}): {detail}", c.id, c.name);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
