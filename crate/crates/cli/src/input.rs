//! Model sources shared by the subcommands.

use std::path::{Path, PathBuf};

use clap::Args;
use lci_core::export::parse_tdag_dot;
use lci_core::json::{lattice_from_json, tdag_from_json};
use lci_core::lattice::lattice_from_generators_capped;
use lci_core::tdag::{join_irreducible_increments, lattice_of_tdag_capped};
use lci_core::timeseries::timeseries_lattice_capped;
use lci_core::{complementary_lattice, DistributiveLattice, GroundSet, IndexSet, SeriesSpec, Tdag};

use crate::error::{CliError, CliResult};

#[derive(Args, Debug, Clone, Default)]
pub struct ModelArgs {
    /// Lattice generators: `123,234,345`, or `11,21;12,22` for multi-character labels
    #[arg(long, value_name = "GENS")]
    pub gens: Option<String>,
    /// Ground-set order for --gens, comma separated
    #[arg(long, value_name = "LABELS")]
    pub ground: Option<String>,
    /// Lattice JSON file
    #[arg(long, value_name = "FILE")]
    pub lattice: Option<PathBuf>,
    /// TDAG as JSON or DOT; the edge set is transitively closed on load
    #[arg(long, value_name = "FILE")]
    pub tdag: Option<PathBuf>,
    /// Hub time-series model
    #[arg(long, value_name = "M,T,HUB")]
    pub timeseries: Option<String>,
    /// Use the complementary lattice
    #[arg(long)]
    pub complement: bool,
}

impl ModelArgs {
    pub fn given(&self) -> bool {
        self.gens.is_some() || self.lattice.is_some() || self.tdag.is_some() || self.timeseries.is_some()
    }
}

/// A lattice together with the generators it came from, when known.
pub struct Model {
    pub lattice: DistributiveLattice,
    pub generators: Option<Vec<IndexSet>>,
}

pub fn read_file(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))
}

fn split_labels(text: &str) -> Vec<String> {
    let t = text.trim();
    let t = t.strip_prefix('{').and_then(|x| x.strip_suffix('}')).unwrap_or(t);
    t.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(String::from)
        .collect()
}

/// Parse `--gens`. Without `;` each comma-separated generator is a string of
/// single-character labels; with `;` generators are separated by `;` and
/// labels by commas or spaces.
pub fn parse_generators(text: &str, ground: Option<&str>) -> CliResult<(GroundSet, Vec<IndexSet>)> {
    let text = text.trim();
    let labelled: Vec<Vec<String>> = if text.is_empty() {
        Vec::new()
    } else if text.contains(';') {
        text.split(';').map(split_labels).collect()
    } else {
        text.split(',')
            .map(|g| {
                let g = g.trim();
                let g = g.strip_prefix('{').and_then(|x| x.strip_suffix('}')).unwrap_or(g);
                g.chars().filter(|c| !c.is_whitespace()).map(|c| c.to_string()).collect()
            })
            .collect()
    };
    let ground = match ground {
        Some(g) => GroundSet::new(split_labels(g))?,
        None => {
            let mut labels: Vec<String> = labelled.iter().flatten().cloned().collect();
            labels.sort_by(|a, b| match (a.parse::<u64>(), b.parse::<u64>()) {
                (Ok(x), Ok(y)) => x.cmp(&y).then_with(|| a.cmp(b)),
                _ => a.cmp(b),
            });
            labels.dedup();
            GroundSet::new(labels)?
        }
    };
    let gens = labelled.iter().map(|g| ground.set(g)).collect::<lci_core::Result<Vec<_>>>()?;
    Ok((ground, gens))
}

pub fn parse_series(text: &str) -> CliResult<SeriesSpec> {
    let parts: Vec<usize> = text
        .split(',')
        .map(|p| p.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::usage(format!("--timeseries expects M,T,HUB, got '{text}'")))?;
    match parts.as_slice() {
        [m, t, hub] => Ok(SeriesSpec::new(*m, *t, *hub)?),
        _ => Err(CliError::usage(format!("--timeseries expects M,T,HUB, got '{text}'"))),
    }
}

pub fn load_tdag(path: &Path) -> CliResult<Tdag> {
    let text = read_file(path)?;
    if text.trim_start().starts_with('{') {
        Ok(tdag_from_json(&text, true)?)
    } else {
        Ok(parse_tdag_dot(&text)?)
    }
}

pub fn load_model(args: &ModelArgs, cap: usize) -> CliResult<Model> {
    let sources = [args.gens.is_some(), args.lattice.is_some(), args.tdag.is_some(), args.timeseries.is_some()];
    match sources.iter().filter(|&&b| b).count() {
        0 => return Err(CliError::usage("no model given; use --gens, --lattice, --tdag or --timeseries")),
        1 => {}
        _ => return Err(CliError::usage("give exactly one of --gens, --lattice, --tdag, --timeseries")),
    }
    if args.ground.is_some() && args.gens.is_none() {
        return Err(CliError::usage("--ground only applies to --gens"));
    }
    let mut model = if let Some(text) = &args.gens {
        let (ground, gens) = parse_generators(text, args.ground.as_deref())?;
        let lattice = lattice_from_generators_capped(&ground, &gens, cap)?;
        Model { lattice, generators: Some(gens) }
    } else if let Some(path) = &args.lattice {
        let lattice = lattice_from_json(&read_file(path)?)?;
        if lattice.len() > cap {
            return Err(lci_core::LciError::Resource { what: "lattice elements".into(), limit: cap }.into());
        }
        Model { lattice, generators: None }
    } else if let Some(path) = &args.tdag {
        let lattice = lattice_of_tdag_capped(&load_tdag(path)?, cap)?;
        Model { lattice, generators: None }
    } else {
        let spec = parse_series(args.timeseries.as_deref().unwrap_or_default())?;
        let lattice = timeseries_lattice_capped(&spec, cap)?;
        Model { lattice, generators: Some(spec.top_generators()) }
    };
    if args.complement {
        model = Model { lattice: complementary_lattice(&model.lattice), generators: None };
    }
    Ok(model)
}

/// Re-express sets of the lattice ground as sets of TDAG vertices, one
/// vertex per join-irreducible.
pub fn vertex_sets(l: &DistributiveLattice, sets: &[IndexSet]) -> Vec<IndexSet> {
    let incs = join_irreducible_increments(l);
    sets.iter()
        .map(|s| (0..incs.len()).filter(|&v| incs[v].1.is_subset(s)).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compact_generators() {
        let (g, gens) = parse_generators("123,234,345", None).unwrap();
        assert_eq!(g.labels(), ["1", "2", "3", "4", "5"]);
        assert_eq!(gens.len(), 3);
        assert_eq!(g.render(&gens[1]), "234");
    }

    #[test]
    fn empty_generators() {
        let (g, gens) = parse_generators("", None).unwrap();
        assert!(g.is_empty() && gens.is_empty());
    }

    #[test]
    fn labelled_generators_sort_numerically() {
        let (g, gens) = parse_generators("11,21;2,11", None).unwrap();
        assert_eq!(g.labels(), ["2", "11", "21"]);
        assert_eq!(g.render(&gens[0]), "11,21");
    }

    #[test]
    fn explicit_ground_orders_and_validates() {
        let (g, _) = parse_generators("ab,bc", Some("c,b,a")).unwrap();
        assert_eq!(g.labels(), ["c", "b", "a"]);
        assert!(parse_generators("ab,bd", Some("a,b,c")).is_err());
    }

    #[test]
    fn series_triples() {
        assert_eq!(parse_series("3,3,2").unwrap(), SeriesSpec::new(3, 3, 2).unwrap());
        assert!(parse_series("3,3").is_err());
        assert!(parse_series("3,3,4").is_err());
    }
}
