//! Numeric oracles: `verify` and `entropy`.

use std::fmt::Write;
use std::path::PathBuf;

use clap::Args;
use lci_core::ci::{ci_deviation, complement_projector, gaussian_ci_report, hibi_relation_deviation, max_abs};
use lci_core::export::information_dot;
use lci_core::info::{edge_increments, valuation_deviation, EdgeIncrement};
use lci_core::json::{exact_joint_to_json, gaussian_from_json, joint_from_json, joint_to_json, valuation_to_json, LoadedJoint};
use lci_core::tdag::lattice_of_tdag_capped;
use lci_core::*;
use nalgebra::DMatrix;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{CliError, CliResult};
use crate::input::{load_model, read_file, vertex_sets, Model, ModelArgs};
use crate::render::{pretty, require_format, Format};
use crate::Global;

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Sample a discrete joint that factorizes along the TDAG (default source)
    #[arg(long, group = "source")]
    pub sample_tdag: bool,
    /// Discrete joint JSON file; string probabilities are read exactly
    #[arg(long, group = "source", value_name = "FILE")]
    pub joint: Option<PathBuf>,
    /// Gaussian model X = AZ with A supported on the TDAG
    #[arg(long, group = "source")]
    pub gaussian: bool,
    /// Gaussian factor A as JSON, instead of sampling one
    #[arg(long, value_name = "FILE", requires = "gaussian")]
    pub factor: Option<PathBuf>,
    /// State counts for sampled joints: one number, or one per vertex
    #[arg(long, default_value = "2")]
    pub cards: String,
    /// Sample with exact rational probabilities and require exact equality
    #[arg(long)]
    pub exact: bool,
    /// Add this mass to the first cell of the sampled joint, then renormalize
    #[arg(long, value_name = "EPS")]
    pub perturb: Option<f64>,
    /// Write the joint that was checked to this file
    #[arg(long, value_name = "FILE")]
    pub save_joint: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct EntropyArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Discrete joint JSON file; without it a joint is sampled along the TDAG
    #[arg(long, value_name = "FILE")]
    pub joint: Option<PathBuf>,
    #[arg(long, default_value = "2")]
    pub cards: String,
    /// Logarithm base for display; values are computed in nats
    #[arg(long)]
    pub base: Option<f64>,
}

struct Check {
    kind: &'static str,
    name: String,
    deviation: f64,
    pass: bool,
    skipped: Option<String>,
    detail: Option<Value>,
}

impl Check {
    fn new(kind: &'static str, name: String, deviation: f64, pass: bool) -> Self {
        Check { kind, name, deviation, pass, skipped: None, detail: None }
    }

    fn skipped(kind: &'static str, name: &str, why: &str) -> Self {
        Check { kind, name: name.into(), deviation: 0.0, pass: true, skipped: Some(why.into()), detail: None }
    }
}

fn parse_cards(text: &str, n: usize) -> CliResult<Vec<usize>> {
    let parts: Vec<usize> = text
        .split(',')
        .map(|p| p.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::usage(format!("bad --cards '{text}'")))?;
    match parts.len() {
        1 => Ok(vec![parts[0]; n]),
        k if k == n => Ok(parts),
        k => Err(CliError::usage(format!("--cards lists {k} values for {n} variables"))),
    }
}

/// The TDAG of the model and its lattice of ancestral sets, with the
/// generators moved onto the vertices.
fn sampled_side(model: &Model, cap: usize) -> CliResult<(Tdag, DistributiveLattice, Option<Vec<IndexSet>>)> {
    let t = tdag_of_lattice(&model.lattice);
    let lv = lattice_of_tdag_capped(&t, cap)?;
    let gens = model.generators.as_ref().map(|g| vertex_sets(&model.lattice, g));
    Ok((t, lv, gens))
}

fn same_ground(a: &GroundSet, b: &GroundSet, what: &str) -> CliResult<()> {
    if a.labels() == b.labels() {
        Ok(())
    } else {
        Err(CliError::usage(format!(
            "{what} ground {} does not match the lattice ground {}",
            a.labels().join(","),
            b.labels().join(",")
        )))
    }
}

fn f64_of<T: Scalar>(x: &T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

fn discrete_checks<T: Scalar>(d: &DiscreteJoint<T>, l: &DistributiveLattice, tol: &T, out: &mut Vec<Check>) -> CliResult<()> {
    let g = l.ground();
    for b in hibi_generators(l) {
        let dev = hibi_relation_deviation(d, &b.i, &b.j)?;
        out.push(Check::new("hibi", b.render(g), f64_of(&dev), dev <= *tol));
    }
    for s in ci_statements(l) {
        let dev = ci_deviation(d, &s)?;
        out.push(Check::new("ci", s.render(g), f64_of(&dev), dev <= *tol));
    }
    Ok(())
}

fn information_checks(d: &Joint, l: &DistributiveLattice, gens: Option<&[IndexSet]>, tol: f64, out: &mut Vec<Check>) -> CliResult<()> {
    if !d.is_positive() {
        out.push(Check::skipped("valuation", "valuation identity", "joint has zero cells"));
        return Ok(());
    }
    let v = Valuation::from_joint(d, l)?;
    let dev = valuation_deviation(&v, l)?;
    out.push(Check::new("valuation", "valuation identity".into(), dev, dev <= tol));
    match gens {
        Some(gens) if !gens.is_empty() => {
            let g = l.ground();
            let name = format!("rota {}", gens.iter().map(|s| g.render(s)).collect::<Vec<_>>().join(","));
            if running_intersection_check(gens) {
                let union = gens.iter().fold(IndexSet::new(), |a, s| a.union(s));
                let dev = (rota_inclusion_exclusion(&v, gens)? - v.get(&union)?).abs();
                out.push(Check::new("rota", name, dev, dev <= tol));
            } else {
                out.push(Check::skipped("rota", &name, "generators lack the running intersection property"));
            }
        }
        _ => out.push(Check::skipped("rota", "rota", "no generator list")),
    }
    Ok(())
}

fn gaussian_checks(m: &Gaussian, l: &DistributiveLattice, tol: f64, out: &mut Vec<Check>) -> CliResult<()> {
    let g = l.ground();
    let ps: Vec<DMatrix<f64>> = l.elements().iter().map(|e| projector(m, e)).collect::<Result<_>>()?;
    let (mut worst, mut at) = (0.0f64, (0, 0));
    for a in 0..l.len() {
        for b in (a + 1)..l.len() {
            let k = &ps[l.meet(a, b)];
            let dev = max_abs(&(&ps[a] * &ps[b] - k)).max(max_abs(&(&ps[b] * &ps[a] - k)));
            if dev > worst {
                worst = dev;
                at = (a, b);
            }
        }
    }
    let name = format!(
        "P_I P_J = P_J P_I = P_(I meet J), worst at I={}, J={}",
        g.render(l.element(at.0)),
        g.render(l.element(at.1))
    );
    out.push(Check::new("projector", name, worst, worst < tol));
    let full = g.full();
    for s in ci_statements(l) {
        let r = gaussian_ci_report(m, &s)?;
        let verdict = check_gaussian_ci(m, &s, tol)?;
        let mut c = Check::new("gaussian-ci", s.render(g), r.max(), verdict);
        c.detail = Some(json!({ "schur": r.schur, "commutator": r.commutator, "residual": r.residual }));
        out.push(c);
        if s.a.union(&s.b).union(&s.c) == full {
            let qa = complement_projector(m, &s.a)?;
            let qb = complement_projector(m, &s.b)?;
            let dev = max_abs(&(qa * qb));
            out.push(Check::new("q-product", format!("Q_{{{}}} Q_{{{}}}", g.render(&s.a), g.render(&s.b)), dev, dev < tol));
        }
    }
    Ok(())
}

fn write_joint(path: &PathBuf, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|e| CliError::usage(format!("cannot write {}: {e}", path.display())))
}

pub fn verify(args: &VerifyArgs, gl: &Global) -> CliResult<(String, Option<CliError>)> {
    let format = gl.format(Format::Json);
    require_format(format, &[Format::Text, Format::Json], "verify")?;
    let model = load_model(&args.model, gl.cap)?;
    let mut checks = Vec::new();
    let source;
    let tol;
    let mut exact = args.exact;
    if args.gaussian {
        source = "gaussian";
        tol = gl.tol.unwrap_or(1e-9);
        if args.exact || args.perturb.is_some() || args.save_joint.is_some() {
            return Err(CliError::usage("--exact, --perturb and --save-joint apply to discrete joints"));
        }
        match &args.factor {
            Some(path) => {
                let m = gaussian_from_json(&read_file(path)?)?;
                same_ground(m.ground(), model.lattice.ground(), "factor")?;
                gaussian_checks(&m, &model.lattice, tol, &mut checks)?;
            }
            None => {
                let (t, lv, _) = sampled_side(&model, gl.cap)?;
                let m: Gaussian = gaussian_from_tdag(&t, gl.seed)?;
                gaussian_checks(&m, &lv, tol, &mut checks)?;
            }
        }
    } else if let Some(path) = &args.joint {
        source = "joint";
        tol = gl.tol.unwrap_or(1e-10);
        if args.exact || args.perturb.is_some() {
            return Err(CliError::usage("--exact and --perturb apply to sampled joints"));
        }
        let loaded = joint_from_json(&read_file(path)?)?;
        same_ground(loaded.ground(), model.lattice.ground(), "joint")?;
        match &loaded {
            LoadedJoint::Exact(d) => {
                exact = true;
                discrete_checks(d, &model.lattice, &Exact::zero(), &mut checks)?
            }
            LoadedJoint::Float(d) => discrete_checks(d, &model.lattice, &tol, &mut checks)?,
        }
        information_checks(&loaded.to_float(), &model.lattice, model.generators.as_deref(), tol, &mut checks)?;
        if let Some(out) = &args.save_joint {
            write_joint(out, &read_file(path)?)?;
        }
    } else {
        source = "sample-tdag";
        tol = gl.tol.unwrap_or(1e-10);
        let (t, lv, gens) = sampled_side(&model, gl.cap)?;
        let cards = parse_cards(&args.cards, t.vertices().len())?;
        let src = ConditionalSource::Random(gl.seed);
        let float = if args.exact {
            let mut d: ExactJoint = joint_from_tdag(&t, &cards, src)?;
            if let Some(eps) = args.perturb {
                let eps = lci_core::scalar::parse_rational(&eps.to_string())
                    .ok_or_else(|| CliError::usage("bad --perturb"))?;
                d = d.perturbed(0, eps)?;
            }
            discrete_checks(&d, &lv, &Exact::zero(), &mut checks)?;
            if let Some(out) = &args.save_joint {
                write_joint(out, &exact_joint_to_json(&d))?;
            }
            d.map(f64_of)
        } else {
            let mut d: Joint = joint_from_tdag(&t, &cards, src)?;
            if let Some(eps) = args.perturb {
                d = d.perturbed(0, eps)?;
            }
            discrete_checks(&d, &lv, &tol, &mut checks)?;
            if let Some(out) = &args.save_joint {
                write_joint(out, &joint_to_json(&d))?;
            }
            d
        };
        information_checks(&float, &lv, gens.as_deref(), tol, &mut checks)?;
    }

    let failed: Vec<&Check> = checks.iter().filter(|c| !c.pass).collect();
    let max_dev = checks
        .iter()
        .filter(|c| c.skipped.is_none())
        .map(|c| c.deviation)
        .fold(0.0f64, f64::max);
    let text = match format {
        Format::Json => pretty(&json!({
            "source": source,
            "seed": gl.seed,
            "tolerance": if exact { 0.0 } else { tol },
            "exact": exact,
            "checks": checks.iter().map(|c| {
                let mut v = json!({ "kind": c.kind, "name": c.name, "max_deviation": c.deviation, "pass": c.pass });
                if let Some(why) = &c.skipped {
                    v["skipped"] = json!(why);
                }
                if let Some(d) = &c.detail {
                    v["detail"] = d.clone();
                }
                v
            }).collect::<Vec<_>>(),
            "max_deviation": max_dev,
            "failed": failed.iter().map(|c| format!("{} {}", c.kind, c.name)).collect::<Vec<_>>(),
            "pass": failed.is_empty(),
        })),
        _ => {
            let mut out = String::new();
            for c in &checks {
                let verdict = match (&c.skipped, c.pass) {
                    (Some(_), _) => "SKIP",
                    (None, true) => "PASS",
                    (None, false) => "FAIL",
                };
                writeln!(out, "{verdict} {} {}  {:.3e}", c.kind, c.name, c.deviation).unwrap();
            }
            writeln!(out, "source: {source}  checks: {}  failed: {}  max deviation: {max_dev:.3e}", checks.len(), failed.len()).unwrap();
            out
        }
    };
    let err = (!failed.is_empty()).then(|| {
        let names: Vec<String> = failed.iter().take(3).map(|c| format!("{} {}", c.kind, c.name)).collect();
        let more = if failed.len() > 3 { format!(" and {} more", failed.len() - 3) } else { String::new() };
        CliError::Check(format!("{}{more}", names.join("; ")))
    });
    Ok((text, err))
}

fn scaled(incs: Vec<EdgeIncrement<f64>>, v: Valuation<f64>, k: f64) -> CliResult<(Vec<EdgeIncrement<f64>>, Valuation<f64>)> {
    let values = v.values().iter().map(|(s, x)| (s.clone(), x / k)).collect();
    let v = Valuation::new(v.ground().clone(), values)?;
    let incs = incs.into_iter().map(|e| EdgeIncrement { value: e.value / k, ..e }).collect();
    Ok((incs, v))
}

pub fn entropy(args: &EntropyArgs, gl: &Global) -> CliResult<String> {
    let model = load_model(&args.model, gl.cap)?;
    let (d, l) = match &args.joint {
        Some(path) => {
            let loaded = joint_from_json(&read_file(path)?)?;
            same_ground(loaded.ground(), model.lattice.ground(), "joint")?;
            (loaded.to_float(), model.lattice)
        }
        None => {
            let (t, lv, _) = sampled_side(&model, gl.cap)?;
            let cards = parse_cards(&args.cards, t.vertices().len())?;
            (joint_from_tdag(&t, &cards, ConditionalSource::Random(gl.seed))?, lv)
        }
    };
    let v = Valuation::from_joint(&d, &l)?;
    let incs = edge_increments(&v, &l)?;
    let (incs, v) = match args.base {
        Some(b) if b > 0.0 && b != 1.0 && b.is_finite() => scaled(incs, v, b.ln())?,
        Some(b) => return Err(CliError::usage(format!("bad logarithm base {b}"))),
        None => (incs, v),
    };
    let g = l.ground();
    Ok(match gl.format(Format::Dot) {
        Format::Dot => information_dot(&l, &v, &incs)?,
        Format::Json => pretty(&json!({
            "values": crate::render::value_of(&valuation_to_json(&v)),
            "increments": incs.iter().map(|e| json!({
                "lower": g.render(&e.lower), "upper": g.render(&e.upper), "value": e.value,
            })).collect::<Vec<_>>(),
        })),
        Format::Text => {
            let mut out = String::new();
            for e in l.elements() {
                writeln!(out, "H({}) = {:.12}", g.render(e), v.get(e)?).unwrap();
            }
            for e in &incs {
                writeln!(out, "{} -> {}: {:+.12}", g.render(&e.lower), g.render(&e.upper), e.value).unwrap();
            }
            out
        }
    })
}
