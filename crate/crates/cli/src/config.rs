//! Command-line flags, the optional TOML config file, and their merge into a
//! fully resolved [`RunConfig`]. Flags win over the file; the file wins over
//! built-in defaults.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use chiralqw::baselines::{BaselineKind, BaselineSpec};
use chiralqw::distance::DistanceKind;
use chiralqw::evaluation::MethodSpec;
use chiralqw::graph::{Delimiter, ParseOptions};
use chiralqw::walk::{SamplerKind, SamplerSpec};
use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const DEFAULT_TIME: f64 = 1.0;
pub const DEFAULT_WALKERS: usize = 10;
pub const DEFAULT_K: usize = 100;
pub const DEFAULT_REMOVAL: f64 = 0.1;

#[derive(Debug, Parser)]
#[command(name = "chiralqw", version, about = "Link prediction with swarms of chiral quantum walks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CommandKind,
    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CommandKind {
    /// Graph statistics and radar-normalized values for one or more inputs.
    Stats,
    /// Top-k predicted links for a single graph.
    Predict,
    /// k-fold cross-validation of one or more methods at one time.
    Crossval,
    /// Cross-validation over a grid of times.
    SweepTime,
    /// Cross-validation over swarm sizes, with and without the non-chiral walker.
    SweepSwarm,
    /// AP@k of predictions on an old graph against links of a newer version.
    CompareVersions,
    /// Quantum-classical and walker-walker distance distributions.
    Distances,
}

impl CommandKind {
    pub fn name(&self) -> &'static str {
        match self {
            CommandKind::Stats => "stats",
            CommandKind::Predict => "predict",
            CommandKind::Crossval => "crossval",
            CommandKind::SweepTime => "sweep-time",
            CommandKind::SweepSwarm => "sweep-swarm",
            CommandKind::CompareVersions => "compare-versions",
            CommandKind::Distances => "distances",
        }
    }
}

/// Flags shared by every command. All are optional so that a config file can
/// supply them.
#[derive(Debug, Clone, Default, Args)]
pub struct Flags {
    /// TOML file with any of the settings below (snake_case keys).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Edge-list file; repeat for several graphs (stats).
    #[arg(long, global = true)]
    pub input: Vec<PathBuf>,
    /// Newer edge list for compare-versions.
    #[arg(long, global = true)]
    pub input_new: Option<PathBuf>,
    /// nc, swarm, swarm:<sampler>, cn, aa, pa, l3 or spm; repeat or
    /// comma-separate for several.
    #[arg(long, global = true, value_delimiter = ',')]
    pub method: Vec<String>,
    /// Phase sampler for bare `swarm`: uniform, pi2 or pi8.
    #[arg(long, global = true)]
    pub sampler: Option<String>,
    /// Chiral walkers per swarm.
    #[arg(long, global = true)]
    pub walkers: Option<usize>,
    /// Swarm sizes for sweep-swarm.
    #[arg(long, global = true, value_delimiter = ',')]
    pub walkers_list: Vec<usize>,
    /// Add the non-chiral walker to swarms (true/false).
    #[arg(long, global = true)]
    pub include_nc: Option<bool>,
    #[arg(long, global = true)]
    pub time: Option<f64>,
    #[arg(long, global = true, value_delimiter = ',')]
    pub times: Vec<f64>,
    /// Fraction of edges removed per fold: 0.1, 0.2 or 0.5.
    #[arg(long, global = true)]
    pub removal: Option<f64>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads; does not affect results.
    #[arg(long, global = true, env = "CHIRALQW_THREADS")]
    pub threads: Option<usize>,
    /// Base directory for run folders.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Predictions to list (predict) or AP@k cut (compare-versions).
    #[arg(long, global = true)]
    pub k: Option<usize>,
    /// Distance kinds: qc, pairwise.
    #[arg(long, global = true, value_delimiter = ',')]
    pub kind: Vec<String>,
    /// Use this fold's observed graph for distances (needs --removal).
    #[arg(long, global = true)]
    pub fold: Option<usize>,
    #[arg(long, global = true)]
    pub spm_p_h: Option<f64>,
    #[arg(long, global = true)]
    pub spm_runs: Option<usize>,
    /// Also write the full score table (predict).
    #[arg(long, global = true)]
    pub save_scores: Option<bool>,
    /// Column separator: whitespace, tab, or a single character.
    #[arg(long, global = true)]
    pub delimiter: Option<String>,
    /// Zero-based label columns, e.g. 0,1.
    #[arg(long, global = true, value_delimiter = ',')]
    pub columns: Vec<usize>,
    /// Skip the first non-comment line.
    #[arg(long, global = true)]
    pub header: Option<bool>,
}

/// The same settings read from a file.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub input: Option<Vec<PathBuf>>,
    pub input_new: Option<PathBuf>,
    pub method: Option<Vec<String>>,
    pub sampler: Option<String>,
    pub walkers: Option<usize>,
    pub walkers_list: Option<Vec<usize>>,
    pub include_nc: Option<bool>,
    pub time: Option<f64>,
    pub times: Option<Vec<f64>>,
    pub removal: Option<f64>,
    pub seed: Option<u64>,
    pub threads: Option<usize>,
    pub out: Option<PathBuf>,
    pub k: Option<usize>,
    pub kind: Option<Vec<String>>,
    pub fold: Option<usize>,
    pub spm_p_h: Option<f64>,
    pub spm_runs: Option<usize>,
    pub save_scores: Option<bool>,
    pub delimiter: Option<String>,
    pub columns: Option<Vec<usize>>,
    pub header: Option<bool>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<FileConfig> {
        let text = fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParseEcho {
    pub delimiter: String,
    pub columns: (usize, usize),
    pub header: bool,
}

impl ParseEcho {
    pub fn options(&self) -> ParseOptions {
        let delimiter = match self.delimiter.as_str() {
            "whitespace" => Delimiter::Whitespace,
            "tab" => Delimiter::Char('\t'),
            s => Delimiter::Char(s.chars().next().expect("validated non-empty")),
        };
        ParseOptions { delimiter, columns: self.columns, header: self.header, ..ParseOptions::default() }
    }
}

/// Everything that determines a run's primary outputs. Thread width and the
/// output directory are deliberately absent.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: CommandKind,
    pub input: Vec<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input_new: Option<PathBuf>,
    pub parse: ParseEcho,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub methods: Vec<MethodSpec>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub times: Vec<f64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub walkers_list: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub removal: Option<f64>,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub kinds: Vec<DistanceKind>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fold: Option<usize>,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub save_scores: bool,
}

/// Settings that do not enter the config hash.
#[derive(Debug, Clone)]
pub struct Runtime {
    pub threads: usize,
    pub out: PathBuf,
}

impl RunConfig {
    /// First 12 hex digits of SHA-256 over the JSON form.
    pub fn hash(&self) -> String {
        let json = serde_json::to_vec(self).expect("config serializes");
        let digest = Sha256::digest(&json);
        digest.iter().take(6).map(|b| format!("{b:02x}")).collect()
    }
}

fn pick<T>(flag: Option<T>, file: Option<T>) -> Option<T> {
    flag.or(file)
}

fn pick_vec<T>(flag: Vec<T>, file: Option<Vec<T>>) -> Vec<T> {
    if flag.is_empty() {
        file.unwrap_or_default()
    } else {
        flag
    }
}

pub fn parse_sampler(s: &str) -> Result<SamplerKind> {
    Ok(s.parse::<SamplerKind>()?)
}

struct MethodDefaults {
    sampler: SamplerKind,
    walkers: usize,
    include_nc: bool,
    seed: u64,
    spm_p_h: Option<f64>,
    spm_runs: Option<usize>,
}

fn parse_method(token: &str, d: &MethodDefaults) -> Result<MethodSpec> {
    let token = token.trim().to_ascii_lowercase();
    let swarm = |sampler| MethodSpec::Swarm {
        sampler: SamplerSpec::new(sampler, d.seed),
        walkers: d.walkers,
        include_nonchiral: d.include_nc,
    };
    match token.as_str() {
        "nc" | "qw:nc" => Ok(MethodSpec::NonChiral),
        "swarm" => Ok(swarm(d.sampler)),
        t if t.starts_with("swarm:") => Ok(swarm(parse_sampler(&t["swarm:".len()..])?)),
        t => {
            let kind: BaselineKind = t.parse().with_context(|| format!("unknown method '{t}'"))?;
            let mut spec = BaselineSpec::new(kind).with_seed(d.seed);
            if let Some(p) = d.spm_p_h {
                spec.spm_p_h = p;
            }
            if let Some(r) = d.spm_runs {
                spec.spm_runs = r;
            }
            spec.validate()?;
            Ok(MethodSpec::Baseline(spec))
        }
    }
}

fn check_delimiter(s: &str) -> Result<String> {
    match s {
        "whitespace" | "tab" => Ok(s.to_string()),
        "\\t" => Ok("tab".to_string()),
        _ if s.chars().count() == 1 => Ok(s.to_string()),
        _ => bail!("delimiter must be 'whitespace', 'tab' or a single character, got '{s}'"),
    }
}

/// Merges flags over the config file and applies defaults, validating what
/// `command` needs.
pub fn resolve(command: CommandKind, flags: Flags) -> Result<(RunConfig, Runtime)> {
    let file = match &flags.config {
        Some(p) => FileConfig::load(p)?,
        None => FileConfig::default(),
    };

    let input = pick_vec(flags.input, file.input);
    if input.is_empty() {
        bail!("--input is required");
    }
    if command != CommandKind::Stats && input.len() > 1 {
        bail!("{} takes a single --input", command.name());
    }
    let input_new = pick(flags.input_new, file.input_new);
    if command == CommandKind::CompareVersions && input_new.is_none() {
        bail!("compare-versions needs --input-new");
    }

    let columns = pick_vec(flags.columns, file.columns);
    let columns = match columns.as_slice() {
        [] => (0, 1),
        [a, b] if a != b => (*a, *b),
        _ => bail!("--columns needs two distinct column indices"),
    };
    let parse = ParseEcho {
        delimiter: check_delimiter(&pick(flags.delimiter, file.delimiter).unwrap_or_else(|| "whitespace".into()))?,
        columns,
        header: pick(flags.header, file.header).unwrap_or(false),
    };

    let seed = pick(flags.seed, file.seed).unwrap_or(0);
    let sampler = match pick(flags.sampler, file.sampler) {
        Some(s) => parse_sampler(&s)?,
        None => SamplerKind::QuarterPiBalanced,
    };
    let walkers = pick(flags.walkers, file.walkers).unwrap_or(DEFAULT_WALKERS);
    let defaults = MethodDefaults {
        sampler,
        walkers,
        include_nc: pick(flags.include_nc, file.include_nc).unwrap_or(true),
        seed,
        spm_p_h: pick(flags.spm_p_h, file.spm_p_h),
        spm_runs: pick(flags.spm_runs, file.spm_runs),
    };
    let tokens = pick_vec(flags.method, file.method);
    let tokens = if tokens.is_empty() { vec!["swarm".to_string()] } else { tokens };

    let time = pick(flags.time, file.time);
    let times = pick_vec(flags.times, file.times);
    let removal = pick(flags.removal, file.removal);
    let k = pick(flags.k, file.k);

    let mut cfg = RunConfig {
        command,
        input,
        input_new: None,
        parse,
        methods: Vec::new(),
        times: Vec::new(),
        walkers_list: Vec::new(),
        removal: None,
        seed,
        k: None,
        kinds: Vec::new(),
        fold: None,
        save_scores: false,
    };

    let methods = || tokens.iter().map(|t| parse_method(t, &defaults)).collect::<Result<Vec<_>>>();
    let single_time = || -> Result<Vec<f64>> {
        if !times.is_empty() {
            bail!("{} takes --time, not --times", command.name());
        }
        Ok(vec![time.unwrap_or(DEFAULT_TIME)])
    };

    match command {
        CommandKind::Stats => {}
        CommandKind::Predict => {
            cfg.methods = methods()?;
            if cfg.methods.len() != 1 {
                bail!("predict takes exactly one method");
            }
            cfg.times = single_time()?;
            cfg.k = Some(k.unwrap_or(DEFAULT_K));
            cfg.save_scores = pick(flags.save_scores, file.save_scores).unwrap_or(false);
        }
        CommandKind::Crossval => {
            cfg.methods = methods()?;
            cfg.times = single_time()?;
            cfg.removal = Some(removal.unwrap_or(DEFAULT_REMOVAL));
        }
        CommandKind::SweepTime => {
            cfg.methods = methods()?;
            cfg.times = if times.is_empty() { time.into_iter().collect() } else { times };
            if cfg.times.is_empty() {
                bail!("sweep-time needs --times");
            }
            cfg.removal = Some(removal.unwrap_or(DEFAULT_REMOVAL));
        }
        CommandKind::SweepSwarm => {
            cfg.methods = methods()?;
            if !cfg.methods.iter().all(|m| matches!(m, MethodSpec::Swarm { .. })) {
                bail!("sweep-swarm only accepts swarm methods");
            }
            cfg.times = single_time()?;
            cfg.walkers_list = pick_vec(flags.walkers_list, file.walkers_list);
            if cfg.walkers_list.is_empty() {
                bail!("sweep-swarm needs --walkers-list");
            }
            if cfg.walkers_list.contains(&0) {
                bail!("swarm sizes must be at least 1");
            }
            cfg.removal = Some(removal.unwrap_or(DEFAULT_REMOVAL));
        }
        CommandKind::CompareVersions => {
            cfg.input_new = input_new;
            cfg.methods = methods()?;
            if cfg.methods.len() != 1 {
                bail!("compare-versions takes exactly one method");
            }
            cfg.times = single_time()?;
            cfg.k = Some(k.unwrap_or(DEFAULT_K));
        }
        CommandKind::Distances => {
            cfg.methods = methods()?;
            if !cfg.methods.iter().all(|m| matches!(m, MethodSpec::Swarm { .. })) {
                bail!("distances only accepts swarm methods");
            }
            cfg.times = single_time()?;
            let kinds = pick_vec(flags.kind, file.kind);
            cfg.kinds = if kinds.is_empty() {
                vec![DistanceKind::Qc, DistanceKind::Pairwise]
            } else {
                kinds.iter().map(|k| k.parse::<DistanceKind>()).collect::<Result<_, _>>()?
            };
            cfg.fold = pick(flags.fold, file.fold);
            cfg.removal = removal;
            if cfg.fold.is_some() != cfg.removal.is_some() {
                bail!("--fold and --removal go together for distances");
            }
        }
    }
    if cfg.times.iter().any(|t| !t.is_finite() || *t < 0.0) {
        bail!("times must be finite and non-negative");
    }

    let threads = pick(flags.threads, file.threads)
        .unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1));
    if threads == 0 {
        bail!("--threads must be at least 1");
    }
    let out = pick(flags.out, file.out).unwrap_or_else(|| PathBuf::from("out"));
    Ok((cfg, Runtime { threads, out }))
}
