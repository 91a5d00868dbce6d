//! Command-line grammar and its validated form.

use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use distance_energy::geometry::PointSet;
use distance_energy::BinaryForm;

use crate::error::CliError;
use crate::input::{parse_count, parse_form, parse_pair, read_points, FormSpec};

#[derive(Debug, Parser)]
#[command(
    name = "denergy",
    version,
    about = "Distance energies, representation sums and Epstein zeta values"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: CommandArgs,

    /// Emit one JSON document instead of CSV.
    #[arg(long, global = true)]
    pub json: bool,

    /// Write to this file instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,

    /// Worker threads; 0 uses one per core.
    #[arg(long, global = true, default_value_t = 0)]
    pub workers: usize,

    /// Directory for cached sieve tables.
    #[arg(long, global = true, env = "DENERGY_CACHE_DIR", value_name = "DIR")]
    pub cache_dir: Option<PathBuf>,

    /// Seed for random point sets.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Direct,
    Cs,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScanKind {
    /// `E_k` of `{1..side}^m` over its predicted growth.
    Energy,
    /// `d(P) E_2(P) / N^4` for grids in three or more dimensions.
    Optimality,
}

#[derive(Debug, Subcommand)]
pub enum CommandArgs {
    /// Distance energies and Hölder bounds of a grid or point set.
    Energy(EnergyArgs),
    /// Partial sums S_k(x) of r(n)^k at geometric sample points.
    Sums(SumsArgs),
    /// Fit S_k(x)/x by a polynomial in log x.
    Fit(FitArgs),
    /// Epstein zeta values and higher moments of a binary form.
    Zeta(ZetaArgs),
    /// Rank imaginary quadratic lattices by pointwise energy.
    LatticeCompare(LatticeArgs),
    /// Compare forms at covolume one against the hexagonal form.
    Probe(ProbeArgs),
    /// Grid energy ratios over increasing sides.
    Scan(ScanArgs),
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("source").required(true).args(["grid", "points", "random"])))]
pub struct EnergyArgs {
    /// Grid {1..S}^M written MxS.
    #[arg(long, value_name = "MxS")]
    pub grid: Option<String>,
    /// Point file: one point per line, integers separated by spaces.
    #[arg(long, value_name = "FILE")]
    pub points: Option<PathBuf>,
    /// M-dimensional random set of N points, written MxN.
    #[arg(long, value_name = "MxN")]
    pub random: Option<String>,
    /// Coordinates of random points lie in [-BOX, BOX].
    #[arg(long = "box", default_value_t = 1000)]
    pub box_half: i64,
    /// Energy orders, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "2")]
    pub k: Vec<u32>,
}

#[derive(Debug, Args)]
pub struct SumsArgs {
    /// D, a,b,c or squares:m.
    #[arg(long, default_value = "squares:2", allow_hyphen_values = true)]
    pub form: String,
    #[arg(long, default_value_t = 1)]
    pub k: u32,
    #[arg(long, value_parser = parse_count)]
    pub xmax: u64,
    #[arg(long, value_parser = parse_count, default_value = "1")]
    pub xmin: u64,
    /// Sample points per doubling of x.
    #[arg(long, default_value_t = 4)]
    pub per_doubling: u32,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    #[arg(long, default_value = "squares:2", allow_hyphen_values = true)]
    pub form: String,
    #[arg(long, default_value_t = 2)]
    pub k: u32,
    #[arg(long, value_parser = parse_count, default_value = "1000")]
    pub xmin: u64,
    #[arg(long, value_parser = parse_count)]
    pub xmax: u64,
    /// Polynomial degree; defaults to 2^(k-1) - 1.
    #[arg(long)]
    pub degree: Option<usize>,
    #[arg(long, default_value_t = 4)]
    pub per_doubling: u32,
}

#[derive(Debug, Args)]
pub struct ZetaArgs {
    /// D or a,b,c.
    #[arg(long, allow_hyphen_values = true)]
    pub form: String,
    /// Evaluation points, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub s: Vec<f64>,
    /// Moment order; k >= 2 is only available through the direct sum.
    #[arg(long, default_value_t = 1)]
    pub k: u32,
    #[arg(long, value_enum, default_value = "both")]
    pub method: MethodArg,
    /// Table length for the direct sum.
    #[arg(long, value_parser = parse_count, default_value = "1000000")]
    pub cutoff: u64,
}

#[derive(Debug, Args)]
pub struct LatticeArgs {
    /// Discriminants, comma separated.
    #[arg(
        long = "D",
        value_delimiter = ',',
        allow_hyphen_values = true,
        required = true
    )]
    pub d: Vec<i64>,
    #[arg(long, default_value_t = 2)]
    pub k: u32,
    #[arg(long = "N", value_parser = parse_count)]
    pub n: u64,
}

#[derive(Debug, Args)]
pub struct ProbeArgs {
    /// Form as D or a,b,c; repeatable.
    #[arg(long = "form", allow_hyphen_values = true)]
    pub forms: Vec<String>,
    /// Norm forms by discriminant, comma separated.
    #[arg(long = "D", value_delimiter = ',', allow_hyphen_values = true)]
    pub d: Vec<i64>,
    #[arg(long, default_value_t = 1)]
    pub k: u32,
    #[arg(long, value_delimiter = ',', required = true)]
    pub s: Vec<f64>,
    #[arg(long, value_parser = parse_count, default_value = "1000000")]
    pub cutoff: u64,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long, value_enum, default_value = "energy")]
    pub kind: ScanKind,
    #[arg(long, default_value_t = 2)]
    pub k: u32,
    #[arg(long)]
    pub m: usize,
    /// Grid sides, comma separated and increasing.
    #[arg(long, value_delimiter = ',', value_parser = parse_count, required = true)]
    pub sides: Vec<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug)]
pub enum EnergySource {
    Grid { m: usize, side: u64 },
    Points(PointSet),
}

/// A fully validated request.
#[derive(Debug)]
pub enum Command {
    Energy {
        source: EnergySource,
        ks: Vec<u32>,
    },
    Sums {
        form: FormSpec,
        k: u32,
        xs: Vec<u64>,
    },
    Fit {
        form: FormSpec,
        k: u32,
        degree: usize,
        xs: Vec<u64>,
    },
    Zeta {
        form: BinaryForm,
        s: Vec<f64>,
        k: u32,
        method: MethodArg,
        cutoff: u64,
    },
    LatticeCompare {
        ds: Vec<i64>,
        k: u32,
        n: u64,
    },
    Probe {
        forms: Vec<BinaryForm>,
        k: u32,
        s: Vec<f64>,
        cutoff: u64,
    },
    Scan {
        kind: ScanKind,
        k: u32,
        m: usize,
        sides: Vec<u64>,
    },
}

#[derive(Debug)]
pub struct RunConfig {
    pub command: Command,
    pub format: OutputFormat,
    pub output: Option<PathBuf>,
    pub workers: usize,
    pub cache_dir: Option<PathBuf>,
    pub seed: u64,
}

fn sample_points(xmin: u64, xmax: u64, per_doubling: u32) -> Result<Vec<u64>, CliError> {
    if xmin == 0 || xmin > xmax {
        return Err(CliError::usage(format!(
            "need 1 <= xmin <= xmax, got {xmin} and {xmax}"
        )));
    }
    if per_doubling == 0 {
        return Err(CliError::usage("per-doubling must be positive"));
    }
    Ok(distance_energy::analysis::geometric_points(
        xmin,
        xmax,
        per_doubling,
    ))
}

fn check_s(s: &[f64]) -> Result<(), CliError> {
    match s.iter().find(|x| !x.is_finite()) {
        Some(x) => Err(CliError::usage(format!("s must be finite, got {x}"))),
        None => Ok(()),
    }
}

impl RunConfig {
    /// Checks every argument and loads input files; nothing is computed yet.
    pub fn from_cli(cli: Cli) -> Result<Self, CliError> {
        let command = match cli.command {
            CommandArgs::Energy(a) => {
                if a.k.is_empty() {
                    return Err(CliError::usage("--k needs at least one order"));
                }
                let source = if let Some(g) = &a.grid {
                    let (m, side) = parse_pair(g, "--grid")?;
                    EnergySource::Grid { m, side }
                } else if let Some(p) = &a.points {
                    EnergySource::Points(read_points(p)?)
                } else {
                    let r = a.random.as_deref().unwrap_or_default();
                    let (m, n) = parse_pair(r, "--random")?;
                    if a.box_half <= 0 {
                        return Err(CliError::usage("--box must be positive"));
                    }
                    let n = usize::try_from(n).map_err(|_| CliError::usage("too many points"))?;
                    let set = distance_energy::geometry::random_point_set(
                        m,
                        n,
                        -a.box_half,
                        a.box_half,
                        cli.seed,
                    )
                    .map_err(|e| CliError::usage(e.to_string()))?;
                    EnergySource::Points(set)
                };
                Command::Energy { source, ks: a.k }
            }
            CommandArgs::Sums(a) => Command::Sums {
                form: parse_form(&a.form)?,
                k: a.k,
                xs: sample_points(a.xmin, a.xmax, a.per_doubling)?,
            },
            CommandArgs::Fit(a) => {
                if a.k == 0 || a.k > 8 {
                    return Err(CliError::usage(format!(
                        "--k must be in 1..=8, got {}",
                        a.k
                    )));
                }
                Command::Fit {
                    form: parse_form(&a.form)?,
                    k: a.k,
                    degree: a.degree.unwrap_or((1usize << (a.k - 1)) - 1),
                    xs: sample_points(a.xmin, a.xmax, a.per_doubling)?,
                }
            }
            CommandArgs::Zeta(a) => {
                check_s(&a.s)?;
                if a.k >= 2 && a.method != MethodArg::Direct {
                    return Err(CliError::usage(
                        "moments with k >= 2 have no closed expansion; use --method direct",
                    ));
                }
                Command::Zeta {
                    form: parse_form(&a.form)?.binary()?,
                    s: a.s,
                    k: a.k,
                    method: a.method,
                    cutoff: a.cutoff,
                }
            }
            CommandArgs::LatticeCompare(a) => {
                for &d in &a.d {
                    distance_energy::lattice::norm_form(d)
                        .map_err(|e| CliError::usage(e.to_string()))?;
                }
                Command::LatticeCompare {
                    ds: a.d,
                    k: a.k,
                    n: a.n,
                }
            }
            CommandArgs::Probe(a) => {
                check_s(&a.s)?;
                let mut forms = a
                    .forms
                    .iter()
                    .map(|f| parse_form(f)?.binary())
                    .collect::<Result<Vec<_>, _>>()?;
                for d in a.d {
                    forms.push(parse_form(&d.to_string())?.binary()?);
                }
                if forms.is_empty() {
                    return Err(CliError::usage("probe needs at least one --form or --D"));
                }
                Command::Probe {
                    forms,
                    k: a.k,
                    s: a.s,
                    cutoff: a.cutoff,
                }
            }
            CommandArgs::Scan(a) => Command::Scan {
                kind: a.kind,
                k: a.k,
                m: a.m,
                sides: a.sides,
            },
        };
        Ok(Self {
            command,
            format: if cli.json {
                OutputFormat::Json
            } else {
                OutputFormat::Csv
            },
            output: cli.output,
            workers: cli.workers,
            cache_dir: cli.cache_dir,
            seed: cli.seed,
        })
    }
}
