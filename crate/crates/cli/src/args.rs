use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mickelsson::cartan::Series;
use mickelsson::generators::Side;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const CACHE_ENV: &str = "MICKELSSON_CACHE_DIR";

#[derive(Debug, Parser)]
#[command(name = "mickelsson", version, about = "Step-algebra generators for reductive pairs via Hasse-diagram routes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Root data and quasi-root classes of the pair.
    Describe(JobArgs),
    /// Hasse diagrams of the complement classes.
    Hasse(JobArgs),
    /// Compute and serialize the generators.
    Generators(JobArgs),
    /// Check invariance and the chain suites; `--oracle` adds the projector.
    Verify(JobArgs),
    /// Chain identities in both scalar modes on random integral weights.
    Qcheck(JobArgs),
}

impl Command {
    pub fn job(&self) -> &JobArgs {
        match self {
            Command::Describe(a) | Command::Hasse(a) | Command::Generators(a) | Command::Verify(a) | Command::Qcheck(a) => a,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Command::Describe(_) => "describe",
            Command::Hasse(_) => "hasse",
            Command::Generators(_) => "generators",
            Command::Verify(_) => "verify",
            Command::Qcheck(_) => "qcheck",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Latex,
    Text,
    Graph,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum SideChoice {
    Plus,
    Minus,
    Both,
}

impl SideChoice {
    pub fn sides(self) -> Vec<Side> {
        match self {
            SideChoice::Plus => vec![Side::Plus],
            SideChoice::Minus => vec![Side::Minus],
            SideChoice::Both => vec![Side::Plus, Side::Minus],
        }
    }
}

/// Every flag is optional so that a config file can fill the gaps.
#[derive(Debug, Clone, Default, Args)]
pub struct JobArgs {
    /// Root system series (only A).
    #[arg(long)]
    pub series: Option<String>,
    #[arg(long)]
    pub rank: Option<usize>,
    /// 1-based simple roots of g, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub levi: Option<Vec<usize>>,
    #[arg(long, value_enum)]
    pub side: Option<SideChoice>,
    /// 1-based quasi-root class; all classes when absent.
    #[arg(long)]
    pub class: Option<usize>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Also compare against the extremal projector (g of rank ≤ 2).
    #[arg(long)]
    pub oracle: bool,
    /// Random instances for `qcheck`.
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, env = CACHE_ENV)]
    pub cache_dir: Option<PathBuf>,
    /// Flat `key = value` file mirroring the flags; flags win.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

/// Validated job description. Its JSON form, minus output-only fields, is
/// the cache key.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JobSpec {
    pub series: String,
    pub rank: usize,
    /// 1-based, sorted, deduplicated.
    pub levi: Vec<usize>,
    pub side: SideChoice,
    pub class: Option<usize>,
    pub format: Format,
    pub oracle: bool,
    pub samples: usize,
    pub seed: u64,
    #[serde(skip)]
    pub cache_dir: Option<PathBuf>,
}

impl JobSpec {
    pub fn sides(&self) -> Vec<Side> {
        self.side.sides()
    }

    /// 0-based simple-root indices.
    pub fn levi_zero_based(&self) -> Vec<usize> {
        self.levi.iter().map(|k| k - 1).collect()
    }

    /// Fields that determine a computed result.
    pub fn cache_key(&self, command: &str) -> String {
        let canonical = serde_json::json!({
            "command": command,
            "series": self.series,
            "rank": self.rank,
            "levi": self.levi,
            "side": self.side,
            "class": self.class,
            "oracle": self.oracle,
        });
        canonical.to_string()
    }
}

impl fmt::Display for JobSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{} with g = {:?}", self.series, self.rank, self.levi)
    }
}

fn parse_config(path: &Path) -> Result<BTreeMap<String, String>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
    let mut out = BTreeMap::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("{}:{}: expected key = value", path.display(), n + 1)))?;
        out.insert(k.trim().replace('_', "-"), v.trim().to_string());
    }
    Ok(out)
}

fn parse_value<T: FromStr>(key: &str, v: &str) -> Result<T, CliError> {
    v.parse().map_err(|_| CliError::Usage(format!("invalid value `{v}` for `{key}`")))
}

fn parse_enum<T: ValueEnum>(key: &str, v: &str) -> Result<T, CliError> {
    T::from_str(v, true).map_err(|_| CliError::Usage(format!("invalid value `{v}` for `{key}`")))
}

fn parse_levi(v: &str) -> Result<Vec<usize>, CliError> {
    v.split(',').filter(|s| !s.trim().is_empty()).map(|s| parse_value("levi", s.trim())).collect()
}

impl JobArgs {
    /// Merge with the config file and validate.
    pub fn resolve(&self, default_format: Format) -> Result<JobSpec, CliError> {
        let mut merged = self.clone();
        if let Some(path) = &self.config {
            for (key, v) in parse_config(path)? {
                match key.as_str() {
                    "series" => merged.series = merged.series.or(Some(v)),
                    "rank" => merged.rank = merged.rank.or(Some(parse_value(&key, &v)?)),
                    "levi" => merged.levi = merged.levi.or(Some(parse_levi(&v)?)),
                    "side" => merged.side = merged.side.or(Some(parse_enum(&key, &v)?)),
                    "class" => merged.class = merged.class.or(Some(parse_value(&key, &v)?)),
                    "format" => merged.format = merged.format.or(Some(parse_enum(&key, &v)?)),
                    "oracle" => merged.oracle = merged.oracle || parse_value::<bool>(&key, &v)?,
                    "samples" => merged.samples = merged.samples.or(Some(parse_value(&key, &v)?)),
                    "seed" => merged.seed = merged.seed.or(Some(parse_value(&key, &v)?)),
                    "cache-dir" => merged.cache_dir = merged.cache_dir.or(Some(PathBuf::from(v))),
                    _ => return Err(CliError::Usage(format!("unknown config key `{key}`"))),
                }
            }
        }

        let series = Series::from_str(merged.series.as_deref().unwrap_or("A")).map_err(|e| CliError::Usage(e.to_string()))?;
        if series != Series::A {
            return Err(CliError::Usage(format!("series {series} is not supported (only A)")));
        }
        let series = series.to_string();
        let rank = merged.rank.ok_or_else(|| CliError::Usage("--rank is required".into()))?;
        if rank == 0 {
            return Err(CliError::Usage("rank must be at least 1".into()));
        }
        let mut levi = merged.levi.unwrap_or_default();
        levi.sort_unstable();
        levi.dedup();
        if let Some(&bad) = levi.iter().find(|&&k| k == 0 || k > rank) {
            return Err(CliError::Usage(format!("simple root {bad} out of range 1..={rank}")));
        }
        if merged.class == Some(0) {
            return Err(CliError::Usage("classes are numbered from 1".into()));
        }
        Ok(JobSpec {
            series,
            rank,
            levi,
            side: merged.side.unwrap_or(SideChoice::Plus),
            class: merged.class,
            format: merged.format.unwrap_or(default_format),
            oracle: merged.oracle,
            samples: merged.samples.unwrap_or(200),
            seed: merged.seed.unwrap_or(0),
            cache_dir: merged.cache_dir,
        })
    }
}
