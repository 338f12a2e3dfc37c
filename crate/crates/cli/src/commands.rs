//! Command implementations. Each returns a JSON report (or DOT text) and
//! whether every verification in it passed.

use saw_core::algebra::{
    build_algebra, det_as_i64, predicted_projective_dim, AlgebraKind, AlgebraTable, BasisElement,
    WeightedPresentation,
};
use saw_core::bimodule::verify_bimodule_periodicity;
use saw_core::modules::{
    is_iso_certificate, simple_module, simple_period_check, uniserial_period_check, verify_simple_resolution,
    IsoOutcome, SimpleResolutionReport,
};
use saw_core::quiver::{is_tetrahedral, tetrahedral_conditions, validate, TetrahedralWitness, TriangulationQuiver};
use saw_core::reptype::{
    bipartite_walk, classify_growth, string_star_involution, GrowthVerdict, GrowthWitness, Primitivity, StringIdeal,
    Walk,
};
use saw_core::surface::surface_from_quiver;
use saw_core::{Field, PrimeField, Rationals, Result, SawError};
use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::dot::export_dot;
use crate::input::{FieldDoc, InputDocument, QuiverDoc, SurfaceDoc};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Validate,
    Orbits,
    Border,
    Tetrahedral,
    FromSurface,
    ToSurface,
    Build,
    Dims,
    Cartan,
    Form,
    ResolveSimple,
    VerifySimplePeriodicity,
    VerifyBimodulePeriodicity,
    UniserialCheck,
    Walks,
    Classify,
    Dot,
}

#[derive(Clone, Debug, Default)]
pub struct Options {
    pub seed: u64,
    pub max_dim: usize,
    pub vertex: Option<String>,
    pub arrow: Option<String>,
    pub highlight: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Body {
    Json(Value),
    Text(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub body: Body,
    /// False when a mathematical verification failed.
    pub passed: bool,
    pub warnings: Vec<String>,
}

impl Outcome {
    fn json(v: Value, passed: bool) -> Self {
        Outcome {
            body: Body::Json(v),
            passed,
            warnings: Vec::new(),
        }
    }
}

pub fn run(cmd: Command, doc: &InputDocument, opts: &Options) -> Result<Outcome> {
    match cmd {
        Command::Validate => return validate_cmd(doc),
        Command::FromSurface => {
            let s = doc
                .surface
                .as_ref()
                .ok_or_else(|| SawError::Input("from-surface needs a \"surface\" object".into()))?;
            let raw = saw_core::surface::raw_quiver_from_surface(&s.triangulation())?;
            validate(&raw)?;
            return Ok(Outcome::json(json!({ "quiver": QuiverDoc::from_raw(&raw) }), true));
        }
        Command::ToSurface => {
            let q = doc.quiver()?;
            let s = surface_from_quiver(&q);
            return Ok(Outcome::json(json!({ "surface": SurfaceDoc::from_triangulation(&s) }), true));
        }
        Command::Dot => {
            let q = doc.quiver()?;
            return Ok(Outcome {
                body: Body::Text(export_dot(&q, opts.highlight)),
                passed: true,
                warnings: Vec::new(),
            });
        }
        _ => {}
    }
    match doc.field {
        FieldDoc::Q => run_over(cmd, doc, opts, Rationals),
        FieldDoc::Fp(p) => run_over(cmd, doc, opts, PrimeField::new(p)?),
    }
}

fn validate_cmd(doc: &InputDocument) -> Result<Outcome> {
    let raw = doc.raw_quiver()?;
    match validate(&raw) {
        Ok(q) => Ok(Outcome::json(
            json!({
                "valid": true,
                "vertices": q.num_vertices(),
                "arrows": q.num_arrows(),
                "violations": Vec::<String>::new(),
            }),
            true,
        )),
        Err(SawError::Axioms(v)) => Ok(Outcome::json(
            json!({
                "valid": false,
                "vertices": raw.vertices.len(),
                "arrows": raw.arrows.len(),
                "violations": v.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            }),
            false,
        )),
        Err(e) => Err(e),
    }
}

fn run_over<F: Field>(cmd: Command, doc: &InputDocument, opts: &Options, field: F) -> Result<Outcome> {
    let (pres, warnings) = doc.presentation(field)?;
    let mut out = match cmd {
        Command::Orbits => orbits(&pres),
        Command::Border => border(&pres),
        Command::Tetrahedral => tetrahedral(&pres),
        Command::Walks => walks(&pres, opts),
        Command::Classify => classify(&pres),
        _ => {
            let t = build_algebra(pres)?;
            match cmd {
                Command::Build => Ok(build(&t)),
                Command::Dims => Ok(dims(&t)),
                Command::Cartan => Ok(cartan(&t)),
                Command::Form => form(&t),
                Command::ResolveSimple => resolve_simple(&t, opts),
                Command::VerifySimplePeriodicity => simple_periodicity(&t, opts),
                Command::VerifyBimodulePeriodicity => bimodule(&t, opts),
                Command::UniserialCheck => uniserial(&t, opts),
                _ => unreachable!("handled above"),
            }
        }
    }?;
    out.warnings = warnings;
    Ok(out)
}

fn arrow_names(q: &TriangulationQuiver, arrows: &[usize]) -> Vec<String> {
    arrows.iter().map(|&a| q.arrow_name(a).to_string()).collect()
}

fn orbits<F: Field>(p: &WeightedPresentation<F>) -> Result<Outcome> {
    let q = &p.quiver;
    let g: Vec<Value> = q
        .g_structure()
        .orbits
        .iter()
        .map(|o| {
            json!({
                "representative": q.arrow_name(o.rep),
                "arrows": arrow_names(q, &o.arrows),
                "length": o.len(),
                "weight": p.m(o.rep),
                "parameter": p.c(o.rep).to_string(),
            })
        })
        .collect();
    let f: Vec<Value> = q
        .f_orbits()
        .iter()
        .map(|o| json!({ "arrows": arrow_names(q, &o.arrows), "length": o.len() }))
        .collect();
    Ok(Outcome::json(json!({ "g_orbits": g, "f_orbits": f }), true))
}

fn border<F: Field>(p: &WeightedPresentation<F>) -> Result<Outcome> {
    let q = &p.quiver;
    let b = q.border();
    let list: Vec<Value> = b
        .loops
        .iter()
        .map(|(&v, &a)| {
            json!({
                "vertex": q.vertex_name(v),
                "loop": q.arrow_name(a),
                "value": p.b(v).to_string(),
            })
        })
        .collect();
    Ok(Outcome::json(json!({ "empty": b.is_empty(), "border": list }), true))
}

fn tetrahedral<F: Field>(p: &WeightedPresentation<F>) -> Result<Outcome> {
    let q = &p.quiver;
    let [c1, c2, c3, c4] = tetrahedral_conditions(q);
    let reference = saw_core::quiver::tetrahedral_reference();
    let (is_tet, iso, reason) = match is_tetrahedral(q) {
        TetrahedralWitness::Tetrahedral(iso) => {
            let map: serde_json::Map<String, Value> = (0..q.num_arrows())
                .map(|a| (q.arrow_name(a).to_string(), json!(reference.arrow_name(iso.arrows[a]))))
                .collect();
            (true, Value::Object(map), Value::Null)
        }
        TetrahedralWitness::NotTetrahedral { arrow, orbit_length } => (
            false,
            Value::Null,
            json!({ "arrow": q.arrow_name(arrow), "orbit_length": orbit_length }),
        ),
    };
    let params = match p.tetrahedral_parameters() {
        Some(tp) => {
            let k = &p.field;
            let prod = k.mul(&k.mul(&tp.a, &tp.b), &k.mul(&tp.c, &tp.d));
            json!({
                "a": tp.a.to_string(),
                "b": tp.b.to_string(),
                "c": tp.c.to_string(),
                "d": tp.d.to_string(),
                "product": prod.to_string(),
                "singular": tp.singular,
            })
        }
        None => Value::Null,
    };
    Ok(Outcome::json(
        json!({
            "tetrahedral": is_tet,
            "conditions": {
                "g_cubed_is_identity": c1,
                "all_g_orbits_have_length_3": c2,
                "local_orbit_condition": c3,
                "isomorphic_to_reference": c4,
            },
            "conditions_agree": c1 == c2 && c2 == c3 && c3 == c4,
            "isomorphism": iso,
            "obstruction": reason,
            "parameters": params,
        }),
        c1 == c2 && c2 == c3 && c3 == c4,
    ))
}

fn basis_name<F: Field>(t: &AlgebraTable<F>, i: usize) -> String {
    let q = t.quiver();
    match t.basis()[i] {
        BasisElement::Idempotent(v) => format!("e_{}", q.vertex_name(v)),
        BasisElement::PathWord { .. } => arrow_names(q, &t.basis_word(i).1).join("."),
        BasisElement::Socle(v) => format!("soc_{}", q.vertex_name(v)),
    }
}

fn predicted_total<F: Field>(p: &WeightedPresentation<F>) -> usize {
    (0..p.quiver.num_vertices()).map(|v| predicted_projective_dim(p, v)).sum()
}

fn build<F: Field>(t: &AlgebraTable<F>) -> Outcome {
    let failing: Vec<String> = t
        .defining_relations()
        .into_iter()
        .filter(|(_, v)| !v.is_empty())
        .map(|(l, _)| l)
        .collect();
    let predicted = predicted_total(t.presentation());
    let ok = failing.is_empty() && predicted == t.dim();
    Outcome::json(
        json!({
            "kind": t.kind().as_str(),
            "field": t.field().name(),
            "dim": t.dim(),
            "predicted_dim": predicted,
            "relations_vanish": failing.is_empty(),
            "failing_relations": failing,
            "basis": (0..t.dim()).map(|i| basis_name(t, i)).collect::<Vec<_>>(),
        }),
        ok,
    )
}

fn dims<F: Field>(t: &AlgebraTable<F>) -> Outcome {
    let q = t.quiver();
    let p = t.presentation();
    let mut ok = true;
    let per: Vec<Value> = (0..q.num_vertices())
        .map(|v| {
            let d = t.basis_from(v).len();
            let want = predicted_projective_dim(p, v);
            ok &= d == want;
            json!({ "vertex": q.vertex_name(v), "dim": d, "predicted": want })
        })
        .collect();
    let predicted = predicted_total(p);
    ok &= predicted == t.dim();
    Outcome::json(
        json!({ "dim": t.dim(), "predicted_dim": predicted, "projectives": per }),
        ok,
    )
}

fn big_to_json(d: &BigInt) -> Value {
    match det_as_i64(d) {
        Some(n) => json!(n),
        None => json!(d.to_string()),
    }
}

fn cartan<F: Field>(t: &AlgebraTable<F>) -> Outcome {
    let q = t.quiver();
    let c = t.cartan_matrix();
    Outcome::json(
        json!({
            "vertices": q.vertex_names(),
            "matrix": c.matrix,
            "determinant": big_to_json(&c.determinant),
            "singular": c.determinant.is_zero(),
        }),
        true,
    )
}

fn form<F: Field>(t: &AlgebraTable<F>) -> Result<Outcome> {
    let r = t.symmetry_report()?;
    let pair = r
        .asymmetric_pair
        .map(|(x, y)| json!([basis_name(t, x), basis_name(t, y)]))
        .unwrap_or(Value::Null);
    Ok(Outcome::json(
        json!({
            "dim": r.dim,
            "symmetric": r.symmetric,
            "asymmetric_pair": pair,
            "gram_rank": r.gram_rank,
            "nondegenerate": r.gram_rank == r.dim,
        }),
        r.passed(),
    ))
}

fn vertex_arg<F: Field>(t: &AlgebraTable<F>, opts: &Options) -> Result<usize> {
    let name = opts
        .vertex
        .as_deref()
        .ok_or_else(|| SawError::Input("--vertex is required".into()))?;
    t.quiver()
        .vertex_by_name(name)
        .ok_or_else(|| SawError::Input(format!("unknown vertex {name}")))
}

fn resolution_json(q: &TriangulationQuiver, r: &SimpleResolutionReport) -> Value {
    json!({
        "vertex": q.vertex_name(r.vertex),
        "term_dims": r.dims,
        "image_pi1_is_radical": r.image_pi1_is_radical,
        "kernel_pi1_is_image_pi2": r.kernel_pi1_is_image_pi2,
        "kernel_pi2_is_image_pi3": r.kernel_pi2_is_image_pi3,
        "kernel_pi3_is_socle": r.kernel_pi3_is_socle,
        "omega2_dim": r.omega2_dim,
        "omega2_predicted": r.omega2_predicted,
        "intersection_dim": r.intersection_dim,
        "deformed_maps": r.deformed_maps,
        "exact": r.exact(),
        "failure": r.failure,
    })
}

fn resolve_simple<F: Field>(t: &AlgebraTable<F>, opts: &Options) -> Result<Outcome> {
    let v = vertex_arg(t, opts)?;
    let r = verify_simple_resolution(t, v)?;
    let ok = r.exact() && r.omega2_dim == r.omega2_predicted;
    Ok(Outcome::json(resolution_json(t.quiver(), &r), ok))
}

fn simple_periodicity<F: Field>(t: &AlgebraTable<F>, opts: &Options) -> Result<Outcome> {
    let q = t.quiver();
    let mut all = true;
    let mut per = Vec::new();
    for v in 0..q.num_vertices() {
        let res = verify_simple_resolution(t, v)?;
        let period = simple_period_check(t, v, opts.seed)?;
        let s = simple_module(t, v);
        let certificate = match &period.comparisons[3] {
            IsoOutcome::Isomorphic(x) => {
                let omega4 = saw_core::modules::syzygies(t, &s, 4)?.pop().expect("four syzygies");
                is_iso_certificate(t, &omega4, &s, x)
            }
            _ => false,
        };
        let ok = res.exact() && res.omega2_dim == res.omega2_predicted && period.period_four() && certificate;
        all &= ok;
        per.push(json!({
            "vertex": q.vertex_name(v),
            "resolution": resolution_json(q, &res),
            "omega_dims": period.omega_dims,
            "comparisons_with_simple": period.comparisons.iter().map(|c| c.label()).collect::<Vec<_>>(),
            "omega4_certificate_checked": certificate,
            "period_four": ok,
        }));
    }
    Ok(Outcome::json(
        json!({ "verdict": if all { "PERIOD_4" } else { "NOT_VERIFIED" }, "simples": per }),
        all,
    ))
}

fn bimodule<F: Field>(t: &AlgebraTable<F>, opts: &Options) -> Result<Outcome> {
    let r = verify_bimodule_periodicity(t, opts.max_dim)?;
    let q = t.quiver();
    let stages: Vec<Value> = r
        .stages
        .iter()
        .map(|s| {
            json!({
                "map": s.map,
                "source_dim": s.source_dim,
                "target_dim": s.target_dim,
                "rank": s.rank,
                "composition_zero": s.composition_zero,
                "image_is_kernel": s.image_is_kernel,
            })
        })
        .collect();
    let by_vertex = |flags: &[bool]| -> Value {
        flags
            .iter()
            .enumerate()
            .map(|(v, &b)| (q.vertex_name(v).to_string(), json!(b)))
            .collect::<serde_json::Map<_, _>>()
            .into()
    };
    let passed = r.verdict == saw_core::bimodule::BimoduleVerdict::PeriodicPeriod4;
    Ok(Outcome::json(
        json!({
            "verdict": r.verdict.as_str(),
            "failing_stage": r.failing_stage,
            "dim_algebra": r.dim_algebra,
            "term_dims": r.term_dims,
            "stages": stages,
            "r_kills_psi": by_vertex(&r.psi_in_kernel_of_r),
            "s_kills_xi": by_vertex(&r.s_kills_xi),
            "theta_injective": r.theta_injective,
            "xi_commutes_with_algebra": r.xi_central,
            "alternating_sum_ok": r.alternating_sum_ok,
        }),
        passed,
    ))
}

fn uniserial<F: Field>(t: &AlgebraTable<F>, opts: &Options) -> Result<Outcome> {
    let q = t.quiver();
    let mut all = true;
    let mut per = Vec::new();
    for a in 0..q.num_arrows() {
        let r = uniserial_period_check(t, a, opts.seed)?;
        all &= r.passed();
        per.push(json!({
            "arrow": q.arrow_name(a),
            "partner": q.arrow_name(r.partner),
            "partner_differs": r.partner_differs,
            "partner_returns": r.partner_returns,
            "omega2_is_partner_uniserial": r.omega2_matches_partner,
            "omega4_returns": r.omega4_returns,
        }));
    }
    Ok(Outcome::json(json!({ "all_passed": all, "arrows": per }), all))
}

fn walk_json(q: &TriangulationQuiver, w: &Walk, c: &Primitivity) -> Value {
    json!({
        "letters": w.display(q),
        "length": w.len(),
        "is_walk": c.walk,
        "closed": c.closed,
        "square_is_walk": c.square_is_walk,
        "proper_power": c.proper_power,
        "primitive": c.primitive(),
    })
}

fn walks<F: Field>(p: &WeightedPresentation<F>, opts: &Options) -> Result<Outcome> {
    let q = &p.quiver;
    let name = opts
        .arrow
        .as_deref()
        .ok_or_else(|| SawError::Input("--arrow is required".into()))?;
    let a = q
        .arrow_by_name(name)
        .ok_or_else(|| SawError::Input(format!("unknown arrow {name}")))?;
    let ideal = StringIdeal::from_presentation(p);
    let (star, h) = string_star_involution(q);
    let mut orbit = vec![a];
    while h[*orbit.last().unwrap()] != a {
        orbit.push(h[*orbit.last().unwrap()]);
    }
    let w = bipartite_walk(q, a);
    let c = ideal.primitivity(&w);
    Ok(Outcome::json(
        json!({
            "arrow": name,
            "star": q.arrow_name(star[a]),
            "h_orbit": arrow_names(q, &orbit),
            "bipartite_walk": walk_json(q, &w, &c),
        }),
        c.primitive(),
    ))
}

fn witness_json(q: &TriangulationQuiver, w: &GrowthWitness) -> Value {
    json!({
        "arrow": q.arrow_name(w.arrow),
        "orbit_length": q.n(w.arrow),
        "v": walk_json(q, &w.v, &w.v_check),
        "w": walk_json(q, &w.w, &w.w_check),
    })
}

fn classify<F: Field>(p: &WeightedPresentation<F>) -> Result<Outcome> {
    if p.kind != AlgebraKind::Weighted {
        return Err(SawError::Unsupported(format!(
            "classify applies to the weighted kind, not {}",
            p.kind
        )));
    }
    let v = classify_growth(p)?;
    let evidence = match &v {
        GrowthVerdict::PolynomialGrowthNonSingularTetrahedral { a, b, c, d }
        | GrowthVerdict::NotPeriodicSingularTetrahedral { a, b, c, d } => json!({
            "a": a.to_string(), "b": b.to_string(), "c": c.to_string(), "d": d.to_string(),
        }),
        GrowthVerdict::NonPolynomialGrowthTame(w) => witness_json(&p.quiver, w),
    };
    Ok(Outcome::json(json!({ "verdict": v.as_str(), "evidence": evidence }), true))
}
