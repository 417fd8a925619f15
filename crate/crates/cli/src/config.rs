//! Settings from flags, an optional `key = value` file, and the
//! environment. Flags win over the file, the file over `TEXTCAT_CORPUS`.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, ValueEnum};
use textcat::training::{Algorithm, TrainingParams};
use textcat::RunConfig;

/// A problem with how the program was invoked. Exit status 1.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlgorithmArg {
    Rocchio,
    WidrowHoff,
}

impl From<AlgorithmArg> for Algorithm {
    fn from(a: AlgorithmArg) -> Self {
        match a {
            AlgorithmArg::Rocchio => Algorithm::Rocchio,
            AlgorithmArg::WidrowHoff => Algorithm::WidrowHoff,
        }
    }
}

#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// Key-value configuration file; flags override its entries
    #[arg(long, value_name = "FILE", global = true)]
    pub config: Option<PathBuf>,
    /// Directory with the Reuters-21578 .sgm files [env: TEXTCAT_CORPUS]
    #[arg(long, value_name = "DIR", global = true)]
    pub corpus: Option<PathBuf>,
    /// Stoplist file, one word per line (default: built-in SMART list)
    #[arg(long, value_name = "FILE", global = true)]
    pub stoplist: Option<PathBuf>,
    /// Category expansion file (category, expression, word index, synonym)
    #[arg(long, value_name = "FILE", global = true)]
    pub expansion: Option<PathBuf>,
    #[arg(long, value_enum, global = true)]
    pub algorithm: Option<AlgorithmArg>,
    /// Seed category vectors from the expansion file
    #[arg(long, global = true)]
    pub use_lexdb: bool,
    /// Terms selected per category
    #[arg(long, value_name = "N", global = true)]
    pub k_terms: Option<usize>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub beta: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub gamma: Option<f64>,
    /// Widrow-Hoff learning rate (default: 1 / (4 X^2), X the largest document norm)
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub eta: Option<f64>,
    /// Training-frequency split point for the breakdown table
    #[arg(long, value_name = "N", global = true)]
    pub threshold: Option<usize>,
    /// Write results into this directory instead of standard output
    #[arg(long, value_name = "DIR", global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,
}

/// Fully resolved settings.
#[derive(Debug, Clone)]
pub struct Settings {
    pub run: RunConfig,
    pub out: Option<PathBuf>,
    pub format: Format,
}

const KEYS: &[&str] = &[
    "corpus",
    "stoplist",
    "expansion",
    "algorithm",
    "use-lexdb",
    "k-terms",
    "alpha",
    "beta",
    "gamma",
    "eta",
    "threshold",
    "out",
    "format",
];

/// Parses `key = value` lines; `#` starts a comment line. Keys are the long
/// flag names, with `_` accepted for `-`.
pub fn parse_config_file(text: &str, origin: &Path) -> anyhow::Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return Err(usage(format!("{}:{}: expected key = value", origin.display(), i + 1)));
        };
        let key = k.trim().replace('_', "-");
        if !KEYS.contains(&key.as_str()) {
            return Err(usage(format!("{}:{}: unknown key {key:?}", origin.display(), i + 1)));
        }
        map.insert(key, v.trim().to_string());
    }
    Ok(map)
}

fn from_file<T: FromStr>(file: &BTreeMap<String, String>, key: &str) -> anyhow::Result<Option<T>> {
    file.get(key)
        .map(|v| {
            v.parse::<T>()
                .map_err(|_| usage(format!("config key {key}: invalid value {v:?}")))
        })
        .transpose()
}

fn enum_from_file<T: ValueEnum>(file: &BTreeMap<String, String>, key: &str) -> anyhow::Result<Option<T>> {
    file.get(key)
        .map(|v| T::from_str(v, true).map_err(|_| usage(format!("config key {key}: invalid value {v:?}"))))
        .transpose()
}

impl CommonArgs {
    pub fn resolve(&self) -> anyhow::Result<Settings> {
        let file = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| usage(format!("cannot read config file {}: {e}", path.display())))?;
                parse_config_file(&text, path)?
            }
            None => BTreeMap::new(),
        };
        let corpus = self
            .corpus
            .clone()
            .or(from_file(&file, "corpus")?)
            .or_else(|| std::env::var_os("TEXTCAT_CORPUS").map(PathBuf::from))
            .ok_or_else(|| usage("no corpus directory: pass --corpus or set TEXTCAT_CORPUS"))?;
        let defaults = TrainingParams::default();
        let mut run = RunConfig::new(corpus);
        run.stoplist_path = self.stoplist.clone().or(from_file(&file, "stoplist")?);
        run.expansion_path = self.expansion.clone().or(from_file(&file, "expansion")?);
        run.algorithm = self
            .algorithm
            .or(enum_from_file(&file, "algorithm")?)
            .map_or(Algorithm::Rocchio, Algorithm::from);
        run.use_lexdb = self.use_lexdb || from_file(&file, "use-lexdb")?.unwrap_or(false);
        run.k_terms = self.k_terms.or(from_file(&file, "k-terms")?).unwrap_or(run.k_terms);
        run.params = TrainingParams {
            alpha: self.alpha.or(from_file(&file, "alpha")?).unwrap_or(defaults.alpha),
            beta: self.beta.or(from_file(&file, "beta")?).unwrap_or(defaults.beta),
            gamma: self.gamma.or(from_file(&file, "gamma")?).unwrap_or(defaults.gamma),
            eta: self.eta.or(from_file(&file, "eta")?),
        };
        run.threshold = self
            .threshold
            .or(from_file(&file, "threshold")?)
            .unwrap_or(run.threshold);
        let out = self.out.clone().or(from_file(&file, "out")?);
        let format = self.format.or(enum_from_file(&file, "format")?).unwrap_or(Format::Text);
        run.validate().map_err(|e| usage(e.to_string()))?;
        Ok(Settings { run, out, format })
    }
}
