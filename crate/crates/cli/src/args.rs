use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use deltashell::numerics::linspace;
use deltashell::{EquationVariant, ShellPotential};

/// Uniform grid `lo:hi:n`, endpoints included.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Range {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl Range {
    pub fn points(&self) -> Vec<f64> {
        linspace(self.lo, self.hi, self.n)
    }
}

impl FromStr for Range {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [lo, hi, n] = parts[..] else {
            return Err(format!("expected lo:hi:n, got {s:?}"));
        };
        let num = |t: &str| t.trim().parse::<f64>().map_err(|_| format!("bad number {t:?} in range {s:?}"));
        let (lo, hi) = (num(lo)?, num(hi)?);
        let n: usize = n.trim().parse().map_err(|_| format!("bad point count {n:?} in range {s:?}"))?;
        if !(lo.is_finite() && hi.is_finite()) {
            return Err(format!("range {s:?} must have finite endpoints"));
        }
        match n {
            0 => Err(format!("range {s:?} needs at least one point")),
            1 if lo != hi => Err(format!("range {s:?} with one point needs lo = hi")),
            1 => Ok(Range { lo, hi, n }),
            _ if hi <= lo => Err(format!("range {s:?} needs lo < hi")),
            _ => Ok(Range { lo, hi, n }),
        }
    }
}

/// `all`, a single index, or a comma-separated list of indices.
#[derive(Clone, Debug, PartialEq)]
pub struct VariantSet(pub Vec<EquationVariant>);

impl FromStr for VariantSet {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s.trim() == "all" {
            return Ok(VariantSet(EquationVariant::ALL.to_vec()));
        }
        let mut set = Vec::new();
        for part in s.split(',') {
            let j: EquationVariant = part.parse().map_err(|e: deltashell::Error| e.to_string())?;
            if !set.contains(&j) {
                set.push(j);
            }
        }
        set.sort();
        Ok(VariantSet(set))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MassList(pub Vec<f64>);

impl FromStr for MassList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        s.split(',')
            .map(|t| t.trim().parse::<f64>().map_err(|_| format!("bad mass {t:?}")))
            .collect::<Result<Vec<_>, _>>()
            .map(MassList)
    }
}

#[derive(Parser, Debug)]
#[command(name = "deltashell", version, about = "Delta-shell solutions of relativistic quasipotential equations")]
pub struct RunSpec {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Partial Green functions on either branch.
    Greens(GreensArgs),
    /// Amplitude, S-matrix, cross section and phase over a rapidity sweep.
    Scatter(ScatterArgs),
    /// Bound levels or quantization curves.
    Bound(BoundArgs),
    /// Zero locus of the two-shell amplitude in the (a2, chi) plane.
    Zeros(ZerosArgs),
    /// Deviations from the Schrödinger limit over a mass list.
    Nrlimit(NrLimitArgs),
    /// Run the oracle suites and print a pass/fail table.
    Verify(VerifyArgs),
}

#[derive(Args, Debug, Clone)]
pub struct PotentialArgs {
    /// Single-shell radius.
    #[arg(long, allow_negative_numbers = true)]
    pub a: Option<f64>,
    /// Single-shell strength.
    #[arg(long, allow_negative_numbers = true)]
    pub v0: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub a1: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub v1: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub a2: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub v2: Option<f64>,
}

impl PotentialArgs {
    /// Single shell from `--a/--v0`, or two shells from `--a1/--v1/--a2/--v2`.
    pub fn potential(&self) -> Result<ShellPotential, String> {
        let pot = match (self.a, self.v0) {
            (Some(a), Some(v0)) => ShellPotential::single(v0, a),
            (Some(_), None) => return Err("--a given without --v0".into()),
            (None, Some(_)) => return Err("--v0 given without --a".into()),
            (None, None) => {
                let need = |x: Option<f64>, flag: &str| x.ok_or_else(|| format!("missing {flag} (or use --a/--v0)"));
                ShellPotential::double(need(self.v1, "--v1")?, need(self.a1, "--a1")?, need(self.v2, "--v2")?, need(self.a2, "--a2")?)
            }
        };
        pot.map_err(|e| e.to_string())
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum BranchKind {
    Scattering,
    Bound,
}

#[derive(Args, Debug)]
pub struct GreensArgs {
    #[arg(long, default_value = "all")]
    pub j: VariantSet,
    #[arg(long, default_value_t = 1.0)]
    pub m: f64,
    #[arg(long, value_enum, default_value_t = BranchKind::Scattering)]
    pub branch: BranchKind,
    /// Rapidity grid (scattering branch).
    #[arg(long)]
    pub chi: Option<Range>,
    /// Bound rapidity grid (bound branch).
    #[arg(long)]
    pub w: Option<Range>,
    #[arg(long)]
    pub r: Range,
    #[arg(long)]
    pub rp: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ScatterArgs {
    #[arg(long, default_value = "all")]
    pub j: VariantSet,
    #[arg(long, default_value_t = 1.0)]
    pub m: f64,
    #[command(flatten)]
    pub potential: PotentialArgs,
    #[arg(long)]
    pub chi: Range,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum CurveKind {
    /// `V0(w)` for one shell (`--a`).
    V0,
    /// `V2(w)` for fixed `--a1 --a2 --v1`.
    V2,
    /// `V1±(w)` with `V2 = alpha·V1` (`--a1 --a2 --alpha`).
    V1pm,
    /// Two-shell determinant (`--a1 --v1 --a2 --v2`).
    Det,
}

#[derive(Args, Debug)]
pub struct BoundArgs {
    #[arg(long, default_value = "all")]
    pub j: VariantSet,
    #[arg(long, default_value_t = 1.0)]
    pub m: f64,
    #[command(flatten)]
    pub potential: PotentialArgs,
    /// Emit a quantization curve instead of solving for levels.
    #[arg(long, value_enum)]
    pub curve: Option<CurveKind>,
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    /// Points on a curve grid.
    #[arg(long, default_value_t = 2000)]
    pub points: usize,
    /// Scan points for the level solver.
    #[arg(long, default_value_t = 2000)]
    pub scan: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ZerosArgs {
    #[arg(long, default_value = "all")]
    pub j: VariantSet,
    #[arg(long, default_value_t = 1.0)]
    pub m: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub a1: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub v1: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub v2: f64,
    /// Outer radius grid (x axis).
    #[arg(long)]
    pub a2: Range,
    /// Rapidity grid (y axis).
    #[arg(long)]
    pub chi: Range,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ObservableKind {
    Amplitude,
    Green,
    Quantization,
    All,
}

#[derive(Args, Debug)]
pub struct NrLimitArgs {
    #[arg(long, default_value = "all")]
    pub j: VariantSet,
    #[arg(long, value_enum, default_value_t = ObservableKind::All)]
    pub observable: ObservableKind,
    #[arg(long, default_value = "10,100,1000")]
    pub masses: MassList,
    /// Momentum for amplitude (default 0.6) and Green function (default 0.5).
    #[arg(long)]
    pub q: Option<f64>,
    /// Shell radius for amplitude (default 5) and quantization (default 1).
    #[arg(long)]
    pub a: Option<f64>,
    #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
    pub v0: f64,
    #[arg(long, default_value_t = 1.2)]
    pub r: f64,
    #[arg(long, default_value_t = 0.4)]
    pub rp: f64,
    #[arg(long, default_value_t = 0.5)]
    pub kappa: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Group {
    TwoPath,
    Spectral,
    Unitarity,
    Limits,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Restrict the run to one suite.
    #[arg(long, value_enum)]
    pub group: Option<Group>,
    /// Shift V0 by this amount in the explicit path of the two-path suite.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub perturb_v0: f64,
    #[arg(long, default_value_t = 20240601)]
    pub seed: u64,
}

pub fn parse_args<I, T>(argv: I) -> Result<RunSpec, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    RunSpec::try_parse_from(argv)
}
