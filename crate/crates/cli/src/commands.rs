use std::str::FromStr;

use serde_json::{json, Value};

use liefields::alggroup::GroupContext;
use liefields::hyperelliptic::{HEElement, HyperellipticCurve};
use liefields::parser::{format_polynomial, parse_polynomial, parse_variety_file, parse_vector_field};
use liefields::poly::{Polynomial, Rational};
use liefields::sphere::{harmonic_decompose, harmonic_dimension_by_kernel, harmonic_dimension_formula, Direction, SphereContext};
use liefields::variety::VarietyDescriptor;
use liefields::vecfield::{
    ample_witness, bracket, derivation_module_generators, filtration_membership, global_one_certificate,
    singular_invariance_check, CertificateOptions, VectorField,
};

use crate::{selftest, Cli, CliError, Command, Outcome, VarietyArgs};

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Smooth(v) => smooth(&load(v)?),
        Command::Generators(v) => generators(&load(v)?),
        Command::Bracket { variety, eta, mu } => {
            let x = load(variety)?;
            let (a, b) = (field(&x, eta)?, field(&x, mu)?);
            let r = bracket(&x, &a, &b);
            Ok(Outcome {
                ok: true,
                text: format!("bracket: {}\n", r.format(&x)),
                json: json!({"schema": 1, "command": "bracket", "result": r.format(&x)}),
            })
        }
        Command::Witness { variety, field: text, point, jet_cap } => {
            let x = load(variety)?;
            witness(&x, &field(&x, text)?, &parse_point(point)?, cli.jet_order, *jet_cap)
        }
        Command::Simplicity { variety, field: text, points, bound } => {
            let x = load(variety)?;
            let seed = field(&x, text)?;
            let samples = points.iter().map(|p| parse_point(p)).collect::<Result<Vec<_>, _>>()?;
            let opts = CertificateOptions { jet_order: cli.jet_order, fallback_height: *bound, ..CertificateOptions::default() };
            simplicity(&x, &seed, &samples, &opts)
        }
        Command::Filtration { variety, field: text, level } => {
            let x = load(variety)?;
            let eta = text.as_deref().map(|t| field(&x, t)).transpose()?;
            filtration(&x, eta.as_ref(), *level)
        }
        Command::Sphere { n, degree, decompose } => sphere(*n, *degree, decompose.as_deref()),
        Command::Curve { h, bound } => curve(h, *bound),
        Command::Group { n, slow } => group(*n, *slow),
        Command::Selftest { cases } => Ok(selftest::run(cli.seed, *cases)),
    }
}

fn load(v: &VarietyArgs) -> Result<VarietyDescriptor, CliError> {
    let (vars, gens) = if let Some(path) = &v.file {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        let f = parse_variety_file(&text).map_err(|e| format!("{}: {e}", path.display()))?;
        (f.vars, f.generators)
    } else {
        let vars: Vec<String> = v.vars.as_deref().ok_or_else(|| CliError::Usage("--vars or --file is required".into()))?.split_whitespace().map(String::from).collect();
        if v.ideal.is_empty() {
            return Err(CliError::Usage("at least one --ideal is required".into()));
        }
        let gens = v
            .ideal
            .iter()
            .map(|t| parse_polynomial(t, &vars).map_err(|e| e.render(t)))
            .collect::<Result<Vec<_>, _>>()?;
        (vars, gens)
    };
    VarietyDescriptor::new(vars, gens).map_err(|e| CliError::Usage(e.to_string()))
}

fn field(x: &VarietyDescriptor, text: &str) -> Result<VectorField, CliError> {
    let comps = parse_vector_field(text, x.vars()).map_err(|e| e.render(text))?;
    VectorField::new(x, &comps).map_err(|e| CliError::Usage(format!("{text}: {e}")))
}

fn parse_point(text: &str) -> Result<Vec<Rational>, CliError> {
    text.split(',')
        .map(|s| Rational::from_str(s.trim()).map_err(|_| CliError::Usage(format!("bad coordinate '{}' in point '{text}'", s.trim()))))
        .collect()
}

fn fmt_all(x: &VarietyDescriptor, ps: &[Polynomial]) -> Vec<String> {
    ps.iter().map(|p| x.format(p)).collect()
}

fn smooth(x: &VarietyDescriptor) -> Result<Outcome, CliError> {
    let cert = x.smoothness_certificate();
    let verified = cert.smooth && cert.verify(x.nvars());
    let mut text = format!("smooth: {}\ndimension: {}\n", cert.smooth, x.dimension());
    if let Some(c) = &cert.cofactors {
        let terms: Vec<String> =
            c.iter().zip(&cert.ideal).filter(|(g, _)| !g.is_zero()).map(|(g, f)| format!("({})*({})", x.format(g), x.format(f))).collect();
        text.push_str(&format!("certificate: 1 = {}", terms.join(" + ")));
        text.push_str(&format!("\ncertificate verified: {verified}\n"));
    } else {
        let sing: Vec<String> = x.singular_ideal().iter().map(|q| x.format(q.rep())).collect();
        text.push_str(&format!("singular ideal: {}\n", sing.join(", ")));
    }
    Ok(Outcome {
        ok: !cert.smooth || verified,
        text,
        json: json!({
            "schema": 1,
            "command": "smooth",
            "smooth": cert.smooth,
            "dimension": x.dimension(),
            "ideal": fmt_all(x, &cert.ideal),
            "cofactors": cert.cofactors.as_ref().map(|c| fmt_all(x, c)),
            "verified": verified,
        }),
    })
}

fn generators(x: &VarietyDescriptor) -> Result<Outcome, CliError> {
    let g = derivation_module_generators(x);
    let fields: Vec<String> = g.generators.iter().map(|f| f.format(x)).collect();
    let relations: Vec<Vec<String>> = g.relations.iter().map(|r| r.iter().map(|q| x.format(q.rep())).collect()).collect();
    let mut text = format!("generators: {}\n", fields.len());
    for f in &fields {
        text.push_str(&format!("  {f}\n"));
    }
    text.push_str(&format!("relations: {}\n", relations.len()));
    for r in &relations {
        text.push_str(&format!("  [{}]\n", r.join(", ")));
    }
    Ok(Outcome { ok: true, text, json: json!({"schema": 1, "command": "generators", "generators": fields, "relations": relations}) })
}

fn witness(x: &VarietyDescriptor, eta: &VectorField, point: &[Rational], jet_order: u32, jet_cap: u32) -> Result<Outcome, CliError> {
    match ample_witness(x, point, eta, jet_order, jet_cap) {
        Ok(w) => Ok(Outcome {
            ok: true,
            text: format!(
                "mu: {}\nbrackets: {}\nparameter: {}\nmu(f)(P): {}\njet order: {}\n",
                w.mu.format(x),
                w.chain.brackets(),
                x.format(w.f.rep()),
                w.value,
                w.jet_order
            ),
            json: json!({
                "schema": 1,
                "command": "witness",
                "mu": w.mu.format(x),
                "chain": w.chain.to_json(x),
                "parameter": x.format(w.f.rep()),
                "value": w.value.to_string(),
                "exponents": w.exponents,
                "jet_order": w.jet_order,
            }),
        }),
        Err(e) => Ok(Outcome {
            ok: false,
            text: format!("witness: none\nreason: {e}\n"),
            json: json!({"schema": 1, "command": "witness", "error": e.to_string()}),
        }),
    }
}

fn simplicity(x: &VarietyDescriptor, seed: &VectorField, samples: &[Vec<Rational>], opts: &CertificateOptions) -> Result<Outcome, CliError> {
    match global_one_certificate(x, seed, samples, opts) {
        Ok(cert) => {
            let verified = cert.verify(x);
            let mut json = cert.to_json(x);
            json["schema"] = json!(1);
            json["command"] = json!("simplicity");
            json["verified"] = json!(verified);
            let text = format!(
                "certificate: 1 in I_0 + I\npoints used: {}\nproducts: {}\nverified: {verified}\n",
                cert.contributions.len(),
                cert.contributions.iter().map(|c| c.products.len()).sum::<usize>()
            );
            Ok(Outcome { ok: verified, text, json })
        }
        Err(fail) => {
            let text = format!(
                "certificate: none\nuncovered locus basis: {}\nvanishing coordinates: {}\nskipped singular points: {}\n",
                fail.basis.join(", "),
                fail.vanishing_coordinates.join(", "),
                fail.skipped_singular.len()
            );
            Ok(Outcome {
                ok: false,
                text,
                json: json!({
                    "schema": 1,
                    "command": "simplicity",
                    "verified": false,
                    "basis": fail.basis,
                    "vanishing_coordinates": fail.vanishing_coordinates,
                    "skipped_singular": fail.skipped_singular.len(),
                    "cause": fail.cause.map(|c| c.to_string()),
                }),
            })
        }
    }
}

fn filtration(x: &VarietyDescriptor, eta: Option<&VectorField>, level: u32) -> Result<Outcome, CliError> {
    let invariant = singular_invariance_check(x);
    let member = eta.map(|e| filtration_membership(x, e, level));
    let mut text = format!("singular ideal invariant: {invariant}\n");
    if let Some(m) = member {
        text.push_str(&format!("in J_{level}: {m}\n"));
    }
    Ok(Outcome {
        ok: invariant,
        text,
        json: json!({"schema": 1, "command": "filtration", "invariant": invariant, "level": level, "member": member}),
    })
}

fn sphere(n: usize, degree: u32, decompose: Option<&str>) -> Result<Outcome, CliError> {
    let ctx = SphereContext::new(n).map_err(|e| CliError::Usage(e.to_string()))?;
    if n < 3 {
        return Err(CliError::Usage("harmonic analysis needs N >= 3".into()));
    }
    let by_kernel = harmonic_dimension_by_kernel(n, degree);
    let closed = harmonic_dimension_formula(n, degree);
    let dims_agree = closed == by_kernel.into();
    let up = ctx.generation_check(degree, Direction::Up).map_err(|e| CliError::Usage(e.to_string()))?;
    let down = if degree >= 2 { Some(ctx.generation_check(degree, Direction::Down).map_err(|e| CliError::Usage(e.to_string()))?) } else { None };
    let table = ctx.bracket_table();
    let hom = table.iter().filter(|e| e.homomorphic).count();
    let anti = table.iter().filter(|e| e.antihomomorphic).count();
    let mut text = format!(
        "dim H_{degree}: {by_kernel} (closed form {closed})\nup to H_{}: rank {} of {}, spans: {}\n",
        degree + 2,
        up.rank,
        up.target_dimension,
        up.spans
    );
    if let Some(d) = &down {
        text.push_str(&format!("down to H_{}: rank {} of {}, spans: {}\n", degree - 2, d.rank, d.target_dimension, d.spans));
    }
    text.push_str(&format!("sl_{n} brackets: [τX, τY] = τ[X, Y] on {hom}/{} pairs, = -τ[X, Y] on {anti}/{}\n", table.len(), table.len()));
    let mut decomposition = Value::Null;
    if let Some(src) = decompose {
        let vars: Vec<String> = ctx.variety().vars().to_vec();
        let f = parse_polynomial(src, &vars).map_err(|e| e.render(src))?;
        let d = f.degree().unwrap_or(0);
        let dec = harmonic_decompose(&f, d).map_err(|e| CliError::Usage(e.to_string()))?;
        for (l, h) in &dec.components {
            text.push_str(&format!("  h_{l}: {}\n", format_polynomial(h, &vars)));
        }
        decomposition = dec.to_json(&vars);
    }
    let ok = dims_agree && (degree == 0 || up.spans) && down.as_ref().is_none_or(|d| d.spans);
    Ok(Outcome {
        ok,
        text,
        json: json!({
            "schema": 1,
            "command": "sphere",
            "n": n,
            "degree": degree,
            "dimension": by_kernel,
            "dimension_closed_form": closed.to_string(),
            "up": {"rank": up.rank, "target": up.target_dimension, "spans": up.spans},
            "down": down.map(|d| json!({"rank": d.rank, "target": d.target_dimension, "spans": d.spans})),
            "brackets": {"pairs": table.len(), "homomorphic": hom, "antihomomorphic": anti},
            "decomposition": decomposition,
        }),
    })
}

fn curve(h: &str, bound: u32) -> Result<Outcome, CliError> {
    let c = HyperellipticCurve::parse(h).map_err(|e| match e {
        liefields::hyperelliptic::CurveError::Parse(p) => CliError::Usage(p.render(h)),
        other => CliError::Usage(other.to_string()),
    })?;
    let d = c.smoothness_gcd();
    let smooth = c.is_smooth();
    let x = c.variety().map_err(|e| CliError::Usage(e.to_string()))?;
    let gens: Vec<String> = c.module_generators().iter().map(|g| c.to_field(&x, g).format(&x)).collect();
    let mut text = format!("h: {}\nm: {}\ngcd(h, h'): {d}\nsmooth: {smooth}\n", c.h(), c.m());
    for g in &gens {
        text.push_str(&format!("generator: {g}\n"));
    }
    let mut ok = true;
    let mut checks = Vec::new();
    if smooth {
        for (name, f) in [("1", HEElement::one()), ("x", HEElement::x()), ("y", HEElement::y())] {
            let kernel = c.kernel_ad_bounded(&f, bound).map_err(|e| CliError::Usage(e.to_string()))?;
            let report = c.not_in_image_check(&f, bound, 3).map_err(|e| CliError::Usage(e.to_string()))?;
            let kernel_ok = c.kernel_is_span(&f, bound).map_err(|e| CliError::Usage(e.to_string()))?;
            ok &= kernel_ok && report.passes();
            text.push_str(&format!("eta = {name}·τ: kernel dim {}, image check {}\n", kernel.len(), report.passes()));
            checks.push(json!({"f": name, "kernel_dimension": kernel.len(), "kernel_is_span_f": kernel_ok, "image_check": report.passes()}));
        }
    } else if let Some((r, s)) = c.relation_defect() {
        let holds = r.is_zero() && s.is_zero();
        ok &= holds;
        text.push_str(&format!("relation y·τ = d·µ: {holds}\n"));
        checks.push(json!({"relation": holds}));
    }
    Ok(Outcome {
        ok,
        text,
        json: json!({"schema": 1, "command": "curve", "h": c.h().to_string(), "gcd": d.to_string(), "smooth": smooth, "generators": gens, "checks": checks}),
    })
}

fn group(n: usize, slow: bool) -> Result<Outcome, CliError> {
    let g = GroupContext::new(n, slow).map_err(|e| CliError::Usage(e.to_string()))?;
    let x = g.variety();
    let err = |e: liefields::alggroup::GroupError| CliError::Usage(e.to_string());
    let commute = g.commutation_check().map_err(err)?;
    let structure = g.left_structure_check().map_err(err)?;
    let mut kronecker = true;
    for (j, phi) in g.tangent_basis().iter().enumerate() {
        let l = g.left_invariant_field(phi).map_err(err)?;
        for (i, f) in g.cotangent_basis().iter().enumerate() {
            let want = if i == j { x.one() } else { x.zero() };
            kronecker &= g.gamma(&l, f).map_err(err)? == want;
        }
    }
    let mut round_trip = true;
    for eta in derivation_module_generators(x).generators {
        round_trip &= g.untrivialize(&g.trivialize(&eta).map_err(err)?).map_err(err)? == eta;
    }
    let lefts: Vec<String> =
        g.tangent_basis().iter().map(|p| g.left_invariant_field(p).map(|f| f.format(x))).collect::<Result<_, _>>().map_err(err)?;
    let mut text = format!("SL_{n}\n");
    for l in &lefts {
        text.push_str(&format!("left-invariant: {l}\n"));
    }
    text.push_str(&format!(
        "left/right commute: {commute}\nstructure constants: {structure}\nkronecker: {kronecker}\nround trip: {round_trip}\n"
    ));
    Ok(Outcome {
        ok: commute && structure && kronecker && round_trip,
        text,
        json: json!({
            "schema": 1,
            "command": "group",
            "n": n,
            "left_invariant": lefts,
            "commute": commute,
            "structure_constants": structure,
            "kronecker": kronecker,
            "round_trip": round_trip,
        }),
    })
}
