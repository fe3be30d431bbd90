//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 modelling-assumption
//! violation, 3 I/O, parse or schema error.

mod format;
mod graph;
mod report;

use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use format::{
    parse_model, parse_model_str, write_model, CoeffEntry, LoadedModel, Model, ModelFile,
};
pub use graph::{Edge, Network, Node, NodeKind};
pub use report::{render_extract, render_minreal, render_verify, VerifyReport};

use crate::dsf::{consistency_check, structure_limits};
use crate::error::Error;
use crate::minreal::{
    minimal_order, minreal_pipeline, EdgeRule, MinrealOptions, ShiftMode, DEFAULT_FREE_VALUE,
};
use crate::tol::Tolerances;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_ASSUMPTION: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Debug)]
pub enum CliError {
    Io {
        path: PathBuf,
        message: String,
    },
    Parse {
        path: Option<PathBuf>,
        message: String,
    },
    Schema {
        path: Option<PathBuf>,
        message: String,
    },
    Model(Error),
}

impl CliError {
    pub(crate) fn io(path: &Path, err: std::io::Error) -> Self {
        CliError::Io {
            path: path.to_path_buf(),
            message: err.to_string(),
        }
    }

    pub(crate) fn parse(err: serde_json::Error) -> Self {
        CliError::Parse {
            path: None,
            message: format!("line {}, column {}: {err}", err.line(), err.column()),
        }
    }

    pub(crate) fn schema(message: impl Into<String>) -> Self {
        CliError::Schema {
            path: None,
            message: message.into(),
        }
    }

    pub(crate) fn in_file(self, file: &Path) -> Self {
        match self {
            CliError::Parse { message, .. } => CliError::Parse {
                path: Some(file.to_path_buf()),
                message,
            },
            CliError::Schema { message, .. } => CliError::Schema {
                path: Some(file.to_path_buf()),
                message,
            },
            other => other,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Model(e) if e.is_assumption_violation() => EXIT_ASSUMPTION,
            _ => EXIT_INPUT,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = |p: &Option<PathBuf>| {
            p.as_ref()
                .map(|p| format!("{}: ", p.display()))
                .unwrap_or_default()
        };
        match self {
            CliError::Io { path, message } => write!(f, "I/O error: {}: {message}", path.display()),
            CliError::Parse { path, message } => {
                write!(f, "parse error: {}{message}", prefix(path))
            }
            CliError::Schema { path, message } => {
                write!(f, "schema error: {}{message}", prefix(path))
            }
            CliError::Model(e) if e.is_assumption_violation() => {
                write!(f, "assumption violated: {e}")
            }
            CliError::Model(e) => write!(f, "invalid model: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Model(e)
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "dsf-minreal",
    version,
    about = "Dynamical structure functions and their minimal realizations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute [Q, P] of a state-space model and print the structure limits.
    Extract {
        model: PathBuf,
        /// Write the structure function as a dsf_coeff file.
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Find the minimal order and the minimal realizations of [Q, P].
    Minreal {
        model: PathBuf,
        #[command(flatten)]
        opts: MinrealArgs,
        /// Directory receiving one state_space file per realization.
        #[arg(long)]
        out_dir: Option<PathBuf>,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Print the network topology of a model.
    Graph {
        model: PathBuf,
        #[arg(long, value_enum, default_value_t = GraphFormat::Dot)]
        format: GraphFormat,
        /// Add input nodes and their edges.
        #[arg(long)]
        inputs: bool,
        /// Draw the measured layer of [Q, P] even for state-space models.
        #[arg(long)]
        dsf_level: bool,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Check that a realization is consistent with a model's [Q, P].
    Verify {
        model: PathBuf,
        realization: PathBuf,
        #[command(flatten)]
        opts: MinrealArgs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GraphFormat {
    Dot,
    Json,
}

/// Tolerance overrides. Precedence: flag, then the model file, then defaults.
#[derive(Debug, Clone, Default, Args)]
pub struct TolArgs {
    #[arg(long)]
    pub tol_pole: Option<f64>,
    #[arg(long)]
    pub tol_rank: Option<f64>,
    #[arg(long)]
    pub tol_orth: Option<f64>,
    #[arg(long)]
    pub tol_eval: Option<f64>,
    #[arg(long)]
    pub tol_struct: Option<f64>,
}

impl TolArgs {
    pub fn apply(&self, base: Tolerances) -> Tolerances {
        Tolerances {
            tol_pole: self.tol_pole.unwrap_or(base.tol_pole),
            tol_rank: self.tol_rank.unwrap_or(base.tol_rank),
            tol_orth: self.tol_orth.unwrap_or(base.tol_orth),
            tol_eval: self.tol_eval.unwrap_or(base.tol_eval),
            tol_struct: self.tol_struct.unwrap_or(base.tol_struct),
            ..base
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct MinrealArgs {
    #[command(flatten)]
    pub tol: TolArgs,
    #[arg(long, default_value = "support-disjoint")]
    pub edge_rule: EdgeRule,
    /// Value of unconstrained R* entries.
    #[arg(long, default_value_t = DEFAULT_FREE_VALUE, allow_hyphen_values = true)]
    pub free_value: f64,
    /// Report every maximum clique instead of the first.
    #[arg(long)]
    pub enumerate_all: bool,
    /// Replace s by (s - a) before taking residues: a number, or "auto".
    #[arg(long, default_value = "auto", value_parser = parse_shift, allow_hyphen_values = true)]
    pub shift: ShiftMode,
}

impl Default for MinrealArgs {
    fn default() -> Self {
        Self {
            tol: TolArgs::default(),
            edge_rule: EdgeRule::default(),
            free_value: DEFAULT_FREE_VALUE,
            enumerate_all: false,
            shift: ShiftMode::Auto,
        }
    }
}

impl MinrealArgs {
    pub fn options(&self, base: Tolerances) -> MinrealOptions {
        MinrealOptions {
            rule: self.edge_rule,
            free_value: self.free_value,
            enumerate_all: self.enumerate_all,
            shift: self.shift,
            tol: self.tol.apply(base),
        }
    }
}

fn parse_shift(s: &str) -> Result<ShiftMode, String> {
    if s == "auto" {
        return Ok(ShiftMode::Auto);
    }
    s.parse::<f64>()
        .map(ShiftMode::Fixed)
        .map_err(|_| format!("expected a number or \"auto\", got '{s}'"))
}

/// Loads a model, resolving tolerances from the file and the flags.
fn load(path: &Path, tol: &TolArgs) -> Result<(Model, Tolerances), CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let file: ModelFile =
        serde_json::from_str(&text).map_err(|e| CliError::parse(e).in_file(path))?;
    let resolved = tol.apply(file.tolerances().unwrap_or_default());
    let model = file.into_model(&resolved).map_err(|e| e.in_file(path))?;
    Ok((model, resolved))
}

/// Runs one command, writing its output to `out`. Returns the exit code.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    match &cli.command {
        Command::Extract { model, output, tol } => {
            let (model, tol) = load(model, tol)?;
            let part = match model {
                Model::Realization(part) => part,
                Model::Dsf(_) => {
                    return Err(CliError::schema("extract expects a state_space model"))
                }
            };
            let d = crate::dsf::compute_dsf(&part, tol.tol_root)?;
            let limits = structure_limits(&d, tol.tol_root)?;
            write_out(out, &render_extract(&d, &limits))?;
            if let Some(path) = output {
                write_model(path, &ModelFile::from_dsf(&d))?;
            }
            Ok(EXIT_OK)
        }
        Command::Minreal {
            model,
            opts,
            out_dir,
            json,
        } => {
            let (model, tol) = load(model, &opts.tol)?;
            let options = opts.options(tol);
            let d = model.to_dsf(&options.tol)?;
            let result = minreal_pipeline(&d, &options)?;
            if *json {
                let mut text =
                    serde_json::to_string_pretty(&result.report).expect("reports always serialize");
                text.push('\n');
                write_out(out, &text)?;
            } else {
                write_out(out, &render_minreal(&result.report))?;
            }
            if let Some(dir) = out_dir {
                std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
                for (k, part) in result.realizations.iter().enumerate() {
                    write_model(
                        &dir.join(format!("realization_{}.json", k + 1)),
                        &ModelFile::from_realization(part),
                    )?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Graph {
            model,
            format,
            inputs,
            dsf_level,
            tol,
        } => {
            let (model, tol) = load(model, tol)?;
            let network = match &model {
                Model::Realization(part) if !dsf_level => {
                    Network::from_realization(part, tol.tol_struct, *inputs)
                }
                _ => Network::from_dsf(&model.to_dsf(&tol)?, tol.tol_struct, *inputs),
            };
            let text = match format {
                GraphFormat::Dot => network.to_dot(),
                GraphFormat::Json => network.to_json(),
            };
            write_out(out, &text)?;
            Ok(EXIT_OK)
        }
        Command::Verify {
            model,
            realization,
            opts,
        } => {
            let (model, tol) = load(model, &opts.tol)?;
            let options = opts.options(tol);
            let d = model.to_dsf(&options.tol)?;
            let part = match parse_model(realization, &options.tol)?.model {
                Model::Realization(part) => part,
                Model::Dsf(_) => {
                    return Err(CliError::schema(
                        "the realization must be a state_space file",
                    ))
                }
            };
            let consistent =
                match consistency_check(&part, &d, options.tol.tol_eval, options.tol.tol_root) {
                    Ok(c) => c,
                    Err(Error::ShapeMismatch { .. }) => false,
                    Err(e) => return Err(e.into()),
                };
            let minimal = minimal_order(&d, options.rule, options.shift, &options.tol).ok();
            let report = VerifyReport {
                consistent,
                order: part.order(),
                minimal_order: minimal.map(|m| m.order),
            };
            write_out(out, &render_verify(&report))?;
            Ok(if consistent {
                EXIT_OK
            } else {
                EXIT_VERIFY_FAILED
            })
        }
    }
}

fn write_out(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes()).map_err(|e| CliError::Io {
        path: PathBuf::from("<stdout>"),
        message: e.to_string(),
    })
}
