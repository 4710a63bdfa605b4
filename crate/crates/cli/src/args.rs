use std::path::Path;

use clap::{Args, Parser, Subcommand, ValueEnum};

use bforest_core::{ConnectionSpec, Family, DEFAULT_MAX_ORDER};

#[derive(Parser, Debug)]
#[command(name = "bforest", version, about = "Spanning-tree counts of bicirculant graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone, PartialEq, Eq)]
pub enum Command {
    /// Check a spec: ranges, family, connectivity, spectral polynomials
    Validate(Options),
    /// Closed-form τ over the n-range
    Count(Options),
    /// Matrix-Tree τ over the n-range
    Oracle(Options),
    /// Closed form against the Matrix-Tree oracle
    Compare(Options),
    /// Square-structure witnesses of τ
    Arithmetic(Options),
    /// Mahler-measure growth base and convergence table
    Asymptotics(Options),
    /// Linear recurrence, rational generating function and its symmetry
    Genfun(Options),
    /// All of the above in one JSON document
    Report(Options),
}

impl Command {
    pub fn options(&self) -> &Options {
        match self {
            Command::Validate(o)
            | Command::Count(o)
            | Command::Oracle(o)
            | Command::Compare(o)
            | Command::Arithmetic(o)
            | Command::Asymptotics(o)
            | Command::Genfun(o)
            | Command::Report(o) => o,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Command::Validate(_) => "validate",
            Command::Count(_) => "count",
            Command::Oracle(_) => "oracle",
            Command::Compare(_) => "compare",
            Command::Arithmetic(_) => "arithmetic",
            Command::Asymptotics(_) => "asymptotics",
            Command::Genfun(_) => "genfun",
            Command::Report(_) => "report",
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args, Debug, Clone, PartialEq, Eq)]
pub struct Options {
    /// JSON spec, inline (starting with '{') or a file path
    #[arg(long, value_name = "FILE|JSON")]
    pub spec: SpecSource,
    /// First n of the range [default: the spec's n]
    #[arg(long)]
    pub n_start: Option<u64>,
    /// Last n of the range [default: n-start]
    #[arg(long)]
    pub n_end: Option<u64>,
    /// Step through the range [default: 1 for family 1, 2 otherwise]
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub step: Option<u64>,
    /// Decimal digits for floating computations
    #[arg(long, env = "BFOREST_PRECISION", default_value_t = 64, value_parser = clap::value_parser!(u32).range(32..))]
    pub precision: u32,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads across n-values [default: all cores]
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Largest recurrence order searched by genfun
    #[arg(long, default_value_t = DEFAULT_MAX_ORDER, value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(1..=4096))]
    pub max_order: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecSource(String);

impl std::str::FromStr for SpecSource {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Ok(SpecSource(s.to_owned()))
    }
}

impl SpecSource {
    pub fn load(&self) -> Result<ConnectionSpec, String> {
        let text = if self.0.trim_start().starts_with('{') {
            self.0.clone()
        } else {
            std::fs::read_to_string(Path::new(&self.0)).map_err(|e| format!("cannot read {}: {e}", self.0))?
        };
        ConnectionSpec::from_json(&text).map_err(|e| e.to_string())
    }
}

impl Options {
    /// The n-values to evaluate, in increasing order.
    pub fn range(&self, spec: &ConnectionSpec) -> Result<Vec<u64>, String> {
        let start = self.n_start.unwrap_or(spec.n());
        let end = self.n_end.unwrap_or(start);
        if start == 0 || start > end {
            return Err(format!("empty n-range {start}..={end}"));
        }
        let step = self.step.unwrap_or(if spec.family() == Family::One { 1 } else { 2 });
        Ok((start..=end).step_by(step as usize).collect())
    }
}
