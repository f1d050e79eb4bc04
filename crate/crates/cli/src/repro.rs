//! Regeneration of the reference figures and examples, diffed against the
//! vendored golden files.

use std::fmt::Write;

use clap::{Args, ValueEnum};
use lci_core::tdag::label_poset;
use lci_core::*;
use similar::TextDiff;

use crate::error::{CliError, CliResult};
use crate::input::read_file;
use crate::render::set_poset_dot;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
    ExDual,
    ExTimeseries,
}

impl Target {
    pub fn name(self) -> &'static str {
        match self {
            Target::Fig1 => "fig1",
            Target::Fig2 => "fig2",
            Target::Fig3 => "fig3",
            Target::Fig4 => "fig4",
            Target::ExDual => "ex-dual",
            Target::ExTimeseries => "ex-timeseries",
        }
    }

    pub fn golden(self) -> &'static str {
        match self {
            Target::Fig1 => include_str!("../golden/fig1.txt"),
            Target::Fig2 => include_str!("../golden/fig2.dot"),
            Target::Fig3 => include_str!("../golden/fig3.dot"),
            Target::Fig4 => include_str!("../golden/fig4.dot"),
            Target::ExDual => include_str!("../golden/ex-dual.txt"),
            Target::ExTimeseries => include_str!("../golden/ex-timeseries.txt"),
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct ReproArgs {
    #[arg(value_enum)]
    pub target: Target,
    /// Print the regenerated artifact instead of diffing it
    #[arg(long)]
    pub print: bool,
    /// Compare against this file instead of the vendored golden copy
    #[arg(long, value_name = "FILE")]
    pub golden: Option<std::path::PathBuf>,
}

fn running_example() -> CliResult<DistributiveLattice> {
    let g = GroundSet::numbered(5);
    let gens: Vec<IndexSet> = ["123", "234", "345"].iter().map(|s| g.parse_set(s)).collect::<Result<_>>()?;
    Ok(lattice_from_generators(&g, &gens)?)
}

fn tdag_with_poset(t: &Tdag, l: &DistributiveLattice) -> String {
    let mut out = export::tdag_dot(t, false);
    out.push_str(&set_poset_dot("join_irreducibles", l.ground(), &join_irreducibles(l)));
    out
}

pub fn generate(target: Target) -> CliResult<String> {
    Ok(match target {
        Target::Fig1 => {
            let l = running_example()?;
            let g = l.ground();
            let ji = l.join_irreducible_positions();
            let mut out = String::new();
            writeln!(out, "elements: {}", l.len()).unwrap();
            for (k, e) in l.elements().iter().enumerate() {
                let u = monomial_u(&l, e)?.render(g);
                let mark = if ji.contains(&k) { "\tjoin-irreducible" } else { "" };
                writeln!(out, "{}\t{u}{mark}", g.render(e)).unwrap();
            }
            out
        }
        Target::Fig2 => {
            let l = running_example()?;
            tdag_with_poset(&tdag_of_lattice(&l), &l)
        }
        Target::Fig3 | Target::Fig4 => {
            let horizon = if target == Target::Fig3 { 3 } else { 4 };
            let spec = SeriesSpec::new(3, horizon, 2)?;
            tdag_with_poset(&timeseries_tdag(&spec)?, &timeseries_lattice(&spec)?)
        }
        Target::ExDual => {
            let l = running_example()?;
            alexander_dual_hitting(&ideal_m_q(&label_poset(&l)))?.render_text()
        }
        Target::ExTimeseries => {
            let l = timeseries_lattice(&SeriesSpec::new(3, 3, 2)?)?;
            l.elements().iter().map(|e| format!("{{{}}}\n", l.ground().render_bare(e))).collect()
        }
    })
}

pub fn repro(args: &ReproArgs) -> CliResult<(String, Option<CliError>)> {
    let fresh = generate(args.target)?;
    if args.print {
        return Ok((fresh, None));
    }
    let golden = match &args.golden {
        Some(p) => read_file(p)?,
        None => args.target.golden().to_string(),
    };
    if golden == fresh {
        return Ok((format!("{}: identical to golden\n", args.target.name()), None));
    }
    let diff = TextDiff::from_lines(&golden, &fresh)
        .unified_diff()
        .header(&format!("golden/{}", args.target.name()), &format!("generated/{}", args.target.name()))
        .to_string();
    Ok((diff, Some(CliError::Check(format!("{} differs from golden", args.target.name())))))
}
