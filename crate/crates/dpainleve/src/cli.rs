//! Command-line surface of `dp1`.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use dpainleve_core::{Branch, SolutionKind};

/// Environment variable holding the default working precision in bits.
pub const PRECISION_ENV: &str = "DP1_PRECISION";

#[derive(Debug, Parser)]
#[command(name = "dp1", version, about = "Exponential asymptotics of the first discrete Painleve equation")]
pub struct Cli {
    /// Working precision in bits.
    #[arg(long, global = true, env = PRECISION_ENV, default_value_t = 512)]
    pub precision: usize,
    /// Output file; written atomically. Standard output when absent.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// Significant digits for computed values (default: enough to round-trip).
    #[arg(long, global = true)]
    pub digits: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

/// `alpha n + beta` over `w[n]`, plus `gamma`. Values are decimal strings,
/// `re` or `re,im`, parsed at the working precision.
#[derive(Debug, Clone, Args)]
pub struct ParamArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: String,
    #[arg(long, allow_hyphen_values = true, default_value = "0")]
    pub beta: String,
    #[arg(long, allow_hyphen_values = true, default_value = "0")]
    pub gamma: String,
}

#[derive(Debug, Clone, Args)]
pub struct FamilyArgs {
    /// Leading-order family.
    #[arg(long = "type", value_parser = parse_kind)]
    pub kind: SolutionKind,
    #[arg(long, value_parser = parse_branch, default_value = "plus", allow_hyphen_values = true)]
    pub sign: Branch,
}

/// Multiplier state for Type B maps and remainders. Type A has none.
#[derive(Debug, Clone, Args)]
pub struct MultiplierArgs {
    /// Real-axis multiplier of chi1 (Type B), `re` or `re,im`.
    #[arg(long, allow_hyphen_values = true)]
    pub f1: Option<String>,
    /// Real-axis multiplier of chi4 (Type B).
    #[arg(long, allow_hyphen_values = true)]
    pub f4: Option<String>,
    /// Type B with both real-axis multipliers zero.
    #[arg(long, conflicts_with_all = ["f1", "f4"])]
    pub special: bool,
}

#[derive(Debug, Clone, Args)]
pub struct SeedArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub w0: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub w1: Option<String>,
    /// Seed from the truncated series at the top of the range and iterate
    /// backward instead (needs --type).
    #[arg(long, conflicts_with_all = ["w0", "w1"])]
    pub series_seed: bool,
    #[arg(long = "type", value_parser = parse_kind)]
    pub kind: Option<SolutionKind>,
    #[arg(long, value_parser = parse_branch, default_value = "plus", allow_hyphen_values = true)]
    pub sign: Branch,
    /// Truncation order of the seeding series.
    #[arg(long, default_value_t = 20)]
    pub seed_order: usize,
    /// Complex lattice offset: sites are `shift + n`.
    #[arg(long, allow_hyphen_values = true)]
    pub shift: Option<String>,
    /// Absolute pole threshold (default scales with sqrt|alpha n|).
    #[arg(long)]
    pub threshold: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantOutput {
    Coeffs,
    Singulants,
    K,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Series coefficients u_m, v_m as CSV.
    Coeffs {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        max_order: usize,
    },
    /// Late-order constants as JSON.
    Lambda {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        family: FamilyArgs,
        /// Highest order used (Type A: even, at least 40).
        #[arg(long)]
        max_order: Option<usize>,
        /// First order of the Type B fit window.
        #[arg(long)]
        m_start: Option<usize>,
    },
    /// Fit late-order constants from a coefficient CSV produced by `coeffs`.
    #[command(name = "lambda-from")]
    LambdaFrom {
        input: PathBuf,
        #[arg(long)]
        max_order: Option<usize>,
        #[arg(long)]
        m_start: Option<usize>,
    },
    /// Sign and activity classification on a grid of s, as CSV.
    StokesMap {
        #[arg(long = "type", value_parser = parse_kind)]
        kind: SolutionKind,
        /// `re_min,re_max,im_min,im_max`.
        #[arg(long, allow_hyphen_values = true, default_value = "-3,3,-3,3")]
        window: String,
        #[arg(long, default_value_t = 101)]
        res: usize,
        #[command(flatten)]
        multipliers: MultiplierArgs,
    },
    /// Truncated series, optionally with the exponential remainder, at a batch of points.
    Evaluate {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        family: FamilyArgs,
        /// Point `re` or `re,im`; repeatable.
        #[arg(long = "n", allow_hyphen_values = true)]
        points: Vec<String>,
        /// Integer range `from:to`, inclusive.
        #[arg(long)]
        range: Option<String>,
        /// `optimal` or a fixed order M.
        #[arg(long, default_value = "optimal")]
        truncation: String,
        /// Add the exponentially small remainder.
        #[arg(long)]
        remainder: bool,
        /// Late-order model JSON; fitted on the fly when absent.
        #[arg(long)]
        model: Option<PathBuf>,
        #[command(flatten)]
        multipliers: MultiplierArgs,
    },
    /// Iterate the recurrence; orbit CSV. Exits 5 if a pole was flagged.
    Iterate {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        seeds: SeedArgs,
        /// Last site.
        #[arg(long)]
        n: i64,
    },
    /// Iterate and compare with the truncated series; orbit CSV with residuals.
    Compare {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        seeds: SeedArgs,
        #[arg(long)]
        n: i64,
        /// Truncation order of the prediction.
        #[arg(long, default_value_t = 4)]
        order: usize,
        /// First site compared.
        #[arg(long, default_value_t = 1)]
        from: i64,
    },
    /// The non-integrable variant (gamma multiplies w[n]).
    Variant {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 40)]
        max_order: usize,
        #[arg(long, value_enum, default_value_t = VariantOutput::Coeffs)]
        what: VariantOutput,
    },
    /// Parameters of the P-IV Backlund recurrence as dP1 parameters.
    MapP4 {
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        /// Also list the P-IV parameters of members 0..N.
        #[arg(long)]
        hierarchy: Option<i64>,
    },
    /// Freud-weight recurrence coefficients as dP1 parameters.
    MapFreud {
        #[arg(long, allow_hyphen_values = true)]
        kappa: String,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
    },
}

fn parse_kind(s: &str) -> Result<SolutionKind, String> {
    s.parse().map_err(|e: dpainleve_core::Error| e.to_string())
}

fn parse_branch(s: &str) -> Result<Branch, String> {
    s.parse().map_err(|e: dpainleve_core::Error| e.to_string())
}
