//! Input loading shared by the subcommands: edge-list files, synthetic spec
//! strings, sign assignment, and id-map files.

use std::collections::HashMap;
use std::path::{Path, PathBuf};

use butterfly_core::graph::SignedBipartiteGraph;
use butterfly_core::ingest::{
    generate_random_bipartite, parse_edge_list, EdgeListFormat, SyntheticSpec,
};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum FormatArg {
    SignedTsv,
    UnsignedTsv,
    Konect,
}

impl From<FormatArg> for EdgeListFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::SignedTsv => EdgeListFormat::SignedTsv,
            FormatArg::UnsignedTsv => EdgeListFormat::UnsignedTsv,
            FormatArg::Konect => EdgeListFormat::KonectWeighted,
        }
    }
}

/// Where the graph comes from and how unsigned edges get signs.
#[derive(clap::Args, Debug)]
pub struct InputArgs {
    /// Edge-list file to read.
    #[arg(long, conflicts_with = "synthetic")]
    pub input: Option<PathBuf>,

    /// Synthetic graph instead of a file, e.g.
    /// "random:left=30,right=30,ep=0.5,pp=0.5,seed=3" or
    /// "skewed:left=10,right=1000,density=0.5,pp=0.5,seed=1".
    #[arg(long)]
    pub synthetic: Option<String>,

    /// Input file format.
    #[arg(long, value_enum, default_value_t = FormatArg::SignedTsv)]
    pub format: FormatArg,

    /// Probability that an edge is signed positive; required for unsigned
    /// input, overrides file signs elsewhere.
    #[arg(long)]
    pub sign_prob: Option<f64>,

    /// Seed for random sign assignment.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

pub struct LoadedGraph {
    pub graph: SignedBipartiteGraph,
    /// Path or synthetic spec string, for report labels.
    pub label: String,
}

fn parse_synthetic(spec: &str) -> Result<SyntheticSpec, CliError> {
    let bad = |msg: &str| CliError::Usage(format!("bad synthetic spec {spec:?}: {msg}"));
    let (kind, rest) = spec
        .split_once(':')
        .ok_or_else(|| bad("expected \"random:...\" or \"skewed:...\""))?;
    if kind != "random" && kind != "skewed" {
        return Err(bad("kind must be \"random\" or \"skewed\""));
    }
    let mut fields: HashMap<&str, &str> = HashMap::new();
    for pair in rest.split(',') {
        let (k, v) = pair
            .split_once('=')
            .ok_or_else(|| bad("fields must be key=value"))?;
        fields.insert(k.trim(), v.trim());
    }
    let take = |keys: &[&str]| -> Option<&str> { keys.iter().find_map(|k| fields.get(k).copied()) };
    let num = |name: &str, raw: Option<&str>| -> Result<f64, CliError> {
        raw.ok_or_else(|| bad(&format!("missing {name}")))?
            .parse()
            .map_err(|_| bad(&format!("{name} is not a number")))
    };
    Ok(SyntheticSpec {
        left_count: num("left", take(&["left", "l"]))? as usize,
        right_count: num("right", take(&["right", "r"]))? as usize,
        edge_probability: num("ep/density", take(&["ep", "density", "d"]))?,
        positive_probability: num("pp", take(&["pp"]))?,
        seed: num("seed", take(&["seed"]))? as u64,
    })
}

fn check_probability(name: &str, p: f64) -> Result<(), CliError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(CliError::Usage(format!(
            "{name} must be in [0, 1], got {p}"
        )));
    }
    Ok(())
}

pub fn load(args: &InputArgs) -> Result<LoadedGraph, CliError> {
    if let Some(p) = args.sign_prob {
        check_probability("--sign-prob", p)?;
    }
    match (&args.input, &args.synthetic) {
        (Some(path), None) => load_file(path, args),
        (None, Some(spec)) => {
            let parsed = parse_synthetic(spec)?;
            check_probability("edge probability", parsed.edge_probability)?;
            check_probability("positive probability", parsed.positive_probability)?;
            Ok(LoadedGraph {
                graph: generate_random_bipartite(&parsed),
                label: spec.clone(),
            })
        }
        _ => Err(CliError::Usage(
            "exactly one of --input or --synthetic is required".into(),
        )),
    }
}

fn load_file(path: &Path, args: &InputArgs) -> Result<LoadedGraph, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let edge_list = parse_edge_list(&text, args.format.into())?;

    if args.format == FormatArg::UnsignedTsv && args.sign_prob.is_none() {
        return Err(CliError::Usage(
            "--sign-prob is required for unsigned input".into(),
        ));
    }
    let graph = match args.sign_prob {
        Some(p) => edge_list.with_random_signs(p, args.seed).to_graph()?,
        None => edge_list.to_graph()?,
    };
    Ok(LoadedGraph {
        graph,
        label: path.display().to_string(),
    })
}

/// Reads an id-map file: `<global_id>\t<label>` or the three-column
/// `<global_id>\t<partition>\t<label>` form written by `convert`.
pub fn load_id_map(path: &Path) -> Result<HashMap<u32, String>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let mut map = HashMap::new();
    for (idx, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        let (id_tok, label) = match fields.len() {
            2 => (fields[0], fields[1]),
            3 => (fields[0], fields[2]),
            _ => {
                return Err(CliError::Usage(format!(
                    "id-map line {} is malformed",
                    idx + 1
                )))
            }
        };
        let id: u32 = id_tok
            .parse()
            .map_err(|_| CliError::Usage(format!("id-map line {} has a bad id", idx + 1)))?;
        map.insert(id, label.to_string());
    }
    Ok(map)
}
