//! Structural subcommands: lattice, hibi, ideal, dual, tdag, ci,
//! timeseries and pipeline.

use std::fmt::Write;

use clap::{Args, ValueEnum};
use lci_core::alexander::{alexander_dual_hitting_capped, alexander_dual_intersect_capped, edge_ideal};
use lci_core::export::{hasse_dot, tdag_dot};
use lci_core::hibi::render_binomial_list;
use lci_core::json::{ideal_from_json, ideal_to_json, lattice_to_json, tdag_to_json};
use lci_core::tdag::{join_irreducible_increments, label_poset, lattice_of_tdag_capped};
use lci_core::timeseries::{innovation_history, timeseries_lattice_capped};
use lci_core::*;
use serde_json::{json, Value};

use crate::error::{CliError, CliResult};
use crate::input::{load_model, read_file, ModelArgs};
use crate::render::{labels, lattice_text, pretty, require_format, tdag_text, value_of, Format};
use crate::Global;

pub fn lattice(model: &ModelArgs, g: &Global) -> CliResult<String> {
    let l = load_model(model, g.cap)?.lattice;
    Ok(match g.format(Format::Text) {
        Format::Text => lattice_text(&l),
        Format::Dot => hasse_dot(&l),
        Format::Json => {
            let mut v = value_of(&lattice_to_json(&l));
            let ji: Vec<Value> = l
                .join_irreducible_positions()
                .into_iter()
                .map(|k| labels(l.ground(), l.element(k)))
                .collect();
            v["join_irreducibles"] = json!(ji);
            pretty(&v)
        }
    })
}

pub fn hibi(model: &ModelArgs, g: &Global) -> CliResult<String> {
    let format = g.format(Format::Text);
    require_format(format, &[Format::Text, Format::Json], "hibi")?;
    let l = load_model(model, g.cap)?.lattice;
    let gr = l.ground();
    let bs = hibi_generators(&l);
    let mut params = Vec::new();
    for e in l.elements() {
        params.push((e, monomial_u(&l, e)?, monomial_u_prime(&l, e)?));
    }
    Ok(match format {
        Format::Json => pretty(&json!({
            "binomials": bs.iter().map(|b| {
                let (m, u) = b.rhs();
                json!({
                    "i": labels(gr, &b.i), "j": labels(gr, &b.j),
                    "meet": labels(gr, &m), "join": labels(gr, &u),
                    "text": b.render(gr),
                })
            }).collect::<Vec<_>>(),
            "parametrization": params.iter().map(|(e, u, up)| json!({
                "set": labels(gr, e), "u": u.render(gr), "u_prime": up.render(gr),
            })).collect::<Vec<_>>(),
        })),
        _ => {
            let mut out = String::new();
            writeln!(out, "binomials ({}):", bs.len()).unwrap();
            for b in &bs {
                writeln!(out, "  {}", b.render(gr)).unwrap();
            }
            writeln!(out, "ideal: {}", render_binomial_list(gr, &bs)).unwrap();
            writeln!(out, "parametrization:").unwrap();
            for (e, u, up) in &params {
                writeln!(out, "  {}\tu = {}\tu' = {}", gr.render(e), u.render(gr), up.render(gr)).unwrap();
            }
            out
        }
    })
}

fn m_q(model: &ModelArgs, g: &Global) -> CliResult<alexander::MonomialIdeal> {
    let l = load_model(model, g.cap)?.lattice;
    Ok(ideal_m_q(&label_poset(&l)))
}

fn ideal_output(m: &alexander::MonomialIdeal, format: Format, cmd: &str) -> CliResult<String> {
    require_format(format, &[Format::Text, Format::Json], cmd)?;
    Ok(match format {
        Format::Json => {
            let mut v = value_of(&ideal_to_json(m));
            v["monomials"] = json!(m.generators().iter().map(|s| m.render_monomial(s)).collect::<Vec<_>>());
            pretty(&v)
        }
        _ => m.render_text(),
    })
}

pub fn ideal(model: &ModelArgs, g: &Global) -> CliResult<String> {
    ideal_output(&m_q(model, g)?, g.format(Format::Text), "ideal")
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum DualAlgorithm {
    Intersect,
    Hitting,
    Both,
}

#[derive(Args, Debug, Clone)]
pub struct DualArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Squarefree monomial ideal JSON file, instead of the ideal of a lattice
    #[arg(long, value_name = "FILE")]
    pub ideal: Option<std::path::PathBuf>,
    #[arg(long, value_enum, default_value_t = DualAlgorithm::Both)]
    pub algorithm: DualAlgorithm,
}

pub fn compute_dual(m: &alexander::MonomialIdeal, algorithm: DualAlgorithm, cap: usize) -> CliResult<alexander::MonomialIdeal> {
    Ok(match algorithm {
        DualAlgorithm::Intersect => alexander_dual_intersect_capped(m, cap)?,
        DualAlgorithm::Hitting => alexander_dual_hitting_capped(m, cap)?,
        DualAlgorithm::Both => {
            let a = alexander_dual_hitting_capped(m, cap)?;
            let b = alexander_dual_intersect_capped(m, cap)?;
            if a != b {
                return Err(LciError::ContractViolation("dual algorithms disagree".into()).into());
            }
            a
        }
    })
}

pub fn dual(args: &DualArgs, g: &Global) -> CliResult<String> {
    let m = match &args.ideal {
        Some(path) => {
            if args.model.given() {
                return Err(CliError::usage("give either --ideal or a lattice model, not both"));
            }
            ideal_from_json(&read_file(path)?)?
        }
        None => m_q(&args.model, g)?,
    };
    ideal_output(&compute_dual(&m, args.algorithm, g.cap)?, g.format(Format::Text), "dual")
}

#[derive(Args, Debug, Clone)]
pub struct TdagArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Keep only covering edges in the output
    #[arg(long)]
    pub reduced: bool,
    /// Reverse every edge
    #[arg(long)]
    pub reverse: bool,
    /// Recover the TDAG through the Alexander dual and check it against the
    /// direct construction
    #[arg(long)]
    pub via_dual: bool,
    /// Read the TDAG off a dual ideal (JSON) in paired z_/y_ variables
    #[arg(long, value_name = "FILE", conflicts_with = "via_dual")]
    pub dual: Option<std::path::PathBuf>,
}

pub fn tdag_output(t: &Tdag, format: Format, reduced: bool) -> String {
    match format {
        Format::Text => tdag_text(t, reduced),
        Format::Dot => tdag_dot(t, reduced),
        Format::Json => tdag_to_json(t),
    }
}

pub fn tdag(args: &TdagArgs, g: &Global) -> CliResult<String> {
    if let Some(path) = &args.dual {
        if args.model.given() {
            return Err(CliError::usage("give either --dual or a lattice model, not both"));
        }
        let mut t = tdag_from_dual(&ideal_from_json(&read_file(path)?)?)?;
        if args.reverse {
            t = reverse_tdag(&t);
        }
        return Ok(tdag_output(&t, g.format(Format::Text), args.reduced));
    }
    let l = load_model(&args.model, g.cap)?.lattice;
    let mut t = tdag_of_lattice(&l);
    if args.via_dual {
        let dual = alexander_dual_hitting_capped(&ideal_m_q(&label_poset(&l)), g.cap)?;
        let recovered = tdag_from_dual(&dual)?;
        if recovered != t {
            return Err(LciError::ContractViolation("TDAG recovered from the dual differs".into()).into());
        }
        t = recovered;
    }
    if args.reverse {
        t = reverse_tdag(&t);
    }
    Ok(tdag_output(&t, g.format(Format::Text), args.reduced))
}

pub fn ci(model: &ModelArgs, g: &Global) -> CliResult<String> {
    let format = g.format(Format::Text);
    require_format(format, &[Format::Text, Format::Json], "ci")?;
    let l = load_model(model, g.cap)?.lattice;
    let gr = l.ground();
    let stmts = ci_statements(&l);
    Ok(match format {
        Format::Json => pretty(&json!(stmts
            .iter()
            .map(|s| json!({
                "statement": s.render(gr),
                "a": labels(gr, &s.a), "b": labels(gr, &s.b), "c": labels(gr, &s.c),
            }))
            .collect::<Vec<_>>())),
        _ => stmts.iter().map(|s| s.render(gr) + "\n").collect(),
    })
}

#[derive(Args, Debug, Clone)]
pub struct SeriesArgs {
    #[arg(long, default_value_t = 3)]
    pub series: usize,
    #[arg(long, default_value_t = 3)]
    pub horizon: usize,
    #[arg(long, default_value_t = 2)]
    pub hub: usize,
    /// Also report the one-step advance to horizon + 1
    #[arg(long)]
    pub advance: bool,
    /// Draw only covering edges in DOT output
    #[arg(long)]
    pub reduced: bool,
}

fn z_product(gr: &GroundSet, s: &IndexSet) -> String {
    gr.labels_of(s).iter().map(|l| format!("z_{l}")).collect::<Vec<_>>().join("*")
}

pub fn timeseries(args: &SeriesArgs, g: &Global) -> CliResult<String> {
    let spec = SeriesSpec::new(args.series, args.horizon, args.hub)?;
    let t = timeseries_tdag(&spec)?;
    let l = timeseries_lattice_capped(&spec, g.cap)?;
    let gr = l.ground();
    let tops = spec.top_generators();
    let steps = if args.advance { Some(advance_time(&spec)?) } else { None };
    let next = spec.advanced();
    let next_ground = next.ground();
    let history = innovation_history(if args.advance { &next } else { &spec })?;
    let hist_ground = if args.advance { &next_ground } else { gr };
    Ok(match g.format(Format::Text) {
        Format::Dot => tdag_dot(&t, args.reduced),
        Format::Json => {
            let mut v = json!({
                "series": spec.series, "horizon": spec.horizon, "hub": spec.hub,
                "ground": gr.labels(),
                "elements": l.len(),
                "join_irreducibles": l.join_irreducible_positions().len(),
                "tdag_edges": t.edges().len(),
                "top_generators": tops.iter().map(|s| labels(gr, s)).collect::<Vec<_>>(),
                "tdag": value_of(&tdag_to_json(&t)),
            });
            if let Some(steps) = &steps {
                v["advance"] = json!(steps.iter().map(|u| json!({
                    "series": u.series,
                    "old_top": labels(&next_ground, &u.old_top),
                    "new_top": labels(&next_ground, &u.new_top),
                    "innovation": labels(&next_ground, &u.innovation),
                })).collect::<Vec<_>>());
            }
            v["innovation_history"] = json!(history
                .iter()
                .map(|h| h.iter().map(|s| labels(hist_ground, s)).collect::<Vec<_>>())
                .collect::<Vec<_>>());
            pretty(&v)
        }
        Format::Text => {
            let mut out = String::new();
            writeln!(out, "series: {}  horizon: {}  hub: {}", spec.series, spec.horizon, spec.hub).unwrap();
            writeln!(out, "ground: {}", gr.labels().join(" ")).unwrap();
            writeln!(out, "lattice elements: {}", l.len()).unwrap();
            writeln!(out, "join-irreducibles: {}", l.join_irreducible_positions().len()).unwrap();
            writeln!(out, "tdag edges: {}", t.edges().len()).unwrap();
            writeln!(out, "top generators:").unwrap();
            for (i, s) in tops.iter().enumerate() {
                writeln!(out, "  series {}: {{{}}}", i + 1, gr.render(s)).unwrap();
            }
            if let Some(steps) = &steps {
                writeln!(out, "advance to horizon {}:", next.horizon).unwrap();
                for u in steps {
                    writeln!(
                        out,
                        "  series {}: {{{}}} -> {{{}}}  innovation {{{}}}  u = {}",
                        u.series,
                        next_ground.render(&u.old_top),
                        next_ground.render(&u.new_top),
                        next_ground.render(&u.innovation),
                        z_product(&next_ground, &u.innovation)
                    )
                    .unwrap();
                }
            }
            writeln!(out, "log-product reconstruction:").unwrap();
            for (i, h) in history.iter().enumerate() {
                let terms: Vec<String> = h.iter().map(|s| format!("log({})", z_product(hist_ground, s))).collect();
                writeln!(out, "  log g_{},{} = {}", i + 1, h.len(), terms.join(" + ")).unwrap();
            }
            out.push_str(&tdag_dot(&t, args.reduced));
            out
        }
    })
}

/// Lattice of the recovered TDAG, mapped back to the ground of `l`.
fn round_trip_lattice(l: &DistributiveLattice, t: &Tdag, cap: usize) -> CliResult<Vec<IndexSet>> {
    let incs = join_irreducible_increments(l);
    let back = lattice_of_tdag_capped(t, cap)?;
    let mut sets: Vec<IndexSet> = back
        .elements()
        .iter()
        .map(|vs| vs.iter().fold(IndexSet::new(), |acc, v| acc.union(&incs[v].1)))
        .collect();
    sets.sort();
    Ok(sets)
}

pub fn pipeline(model: &ModelArgs, g: &Global) -> CliResult<(String, Option<CliError>)> {
    let format = g.format(Format::Text);
    require_format(format, &[Format::Text, Format::Json], "pipeline")?;
    let l = load_model(model, g.cap)?.lattice;
    let gr = l.ground();
    let bs = hibi_generators(&l);
    let m = ideal_m_q(&label_poset(&l));
    let dual = alexander_dual_hitting_capped(&m, g.cap)?;
    let recovered = tdag_from_dual(&dual)?;
    let direct = tdag_of_lattice(&l);
    let stmts = ci_statements(&l);

    let mut problems = Vec::new();
    if recovered != direct {
        problems.push("recovered TDAG differs from the join-irreducible order".to_string());
    }
    let n = direct.vertices().len();
    let edges = edge_ideal(&(&direct).into())?;
    let mut expected = edges.generators().to_vec();
    expected.extend((0..n).map(|i| [i, n + i].into_iter().collect::<IndexSet>()));
    expected.sort();
    let mut got = dual.generators().to_vec();
    got.sort();
    if edges.variables() != dual.variables() || expected != got {
        problems.push("dual differs from the edge ideal of the TDAG plus loops".to_string());
    }
    let mut elements = l.elements().to_vec();
    elements.sort();
    if round_trip_lattice(&l, &recovered, g.cap)? != elements {
        problems.push("lattice of the recovered TDAG differs from the input".to_string());
    }
    let pass = problems.is_empty();

    let text = match format {
        Format::Json => pretty(&json!({
            "lattice": { "elements": l.len(), "join_irreducibles": l.join_irreducible_positions().len() },
            "hibi_binomials": bs.iter().map(|b| b.render(gr)).collect::<Vec<_>>(),
            "m_q": m.generators().iter().map(|s| m.render_monomial(s)).collect::<Vec<_>>(),
            "dual": dual.generators().iter().map(|s| dual.render_monomial(s)).collect::<Vec<_>>(),
            "tdag": value_of(&tdag_to_json(&recovered)),
            "ci_statements": stmts.iter().map(|s| s.render(gr)).collect::<Vec<_>>(),
            "round_trip": if pass { "PASS" } else { "FAIL" },
            "problems": problems,
        })),
        _ => {
            let mut out = String::new();
            writeln!(out, "lattice: {} elements, {} join-irreducibles", l.len(), l.join_irreducible_positions().len()).unwrap();
            writeln!(out, "hibi binomials ({}):", bs.len()).unwrap();
            for b in &bs {
                writeln!(out, "  {}", b.render(gr)).unwrap();
            }
            writeln!(out, "M_Q ({} generators):", m.len()).unwrap();
            for s in m.generators() {
                writeln!(out, "  {}", m.render_monomial(s)).unwrap();
            }
            writeln!(out, "M_Q* ({} generators):", dual.len()).unwrap();
            for s in dual.generators() {
                writeln!(out, "  {}", dual.render_monomial(s)).unwrap();
            }
            writeln!(out, "recovered TDAG ({} edges):", recovered.edges().len()).unwrap();
            let v = recovered.vertices();
            for &(a, b) in recovered.edges() {
                writeln!(out, "  {} -> {}", v[a], v[b]).unwrap();
            }
            writeln!(out, "CI statements ({}):", stmts.len()).unwrap();
            for s in &stmts {
                writeln!(out, "  {}", s.render(gr)).unwrap();
            }
            for p in &problems {
                writeln!(out, "problem: {p}").unwrap();
            }
            writeln!(out, "round trip: {}", if pass { "PASS" } else { "FAIL" }).unwrap();
            out
        }
    };
    let err = (!pass).then(|| LciError::ContractViolation(problems.join("; ")).into());
    Ok((text, err))
}
