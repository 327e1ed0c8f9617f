use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gk_core::models::ModelOptions;
use gk_core::HistorySegment;

use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "gk",
    version,
    about = "Galerkin-Koornwinder reduction of scalar delay differential equations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print derivative-expansion coefficient rows a_1..a_n.
    Coeffs(CoeffsArgs),
    /// Write the reduced matrices A, P, Q and the vector nu.
    Assemble(AssembleArgs),
    /// Integrate the reduced system and/or the original DDE.
    Simulate(SimulateArgs),
    /// Write the reconstructed history field u_N(t, theta) in long format.
    Field(FieldArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Engine {
    Reduced,
    Reference,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Variable {
    /// x = T - T+ (the variable the model is reduced in)
    Perturbed,
    /// T = x + T+ (suarez-schopf only)
    Original,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Fixture {
    #[value(name = "suarez-schopf-6d")]
    SuarezSchopf6d,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Significant digits in numeric output (default: shortest round-trip form).
    #[arg(long)]
    pub digits: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct CoeffsArgs {
    /// Highest degree n (rows a_1..a_n are printed).
    #[arg(long = "n")]
    pub n: i64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write to a file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    /// Built-in model name, or custom-from-json together with --model-file.
    #[arg(long, default_value = "suarez-schopf")]
    pub model: String,
    /// JSON model file; implies --model custom-from-json.
    #[arg(long)]
    pub model_file: Option<PathBuf>,
    /// Delay. Required for built-in models; overrides the file value for JSON models.
    #[arg(long, allow_negative_numbers = true)]
    pub tau: Option<f64>,
    /// Suarez-Schopf coupling alpha in (0, 1).
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    /// Coefficient of x(t) for the linear models.
    #[arg(long, allow_negative_numbers = true)]
    pub a: Option<f64>,
    /// Coefficient of x(t - tau) for the linear models.
    #[arg(long, allow_negative_numbers = true)]
    pub b: Option<f64>,
    /// Coefficient of the distributed delay term for the linear models.
    #[arg(long, allow_negative_numbers = true)]
    pub c: Option<f64>,
}

impl ModelArgs {
    pub fn model_name(&self) -> &str {
        if self.model_file.is_some() {
            "custom-from-json"
        } else {
            &self.model
        }
    }

    pub fn options(&self) -> ModelOptions {
        ModelOptions {
            alpha: self.alpha,
            a: self.a,
            b: self.b,
            c: self.c,
            json_path: self.model_file.clone(),
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.model_name() != "custom-from-json" && self.tau.is_none() {
            return Err(CliError::Config(format!(
                "--tau is required for model `{}`",
                self.model_name()
            )));
        }
        if let Some(tau) = self.tau {
            if !(tau > 0.0 && tau.is_finite()) {
                return Err(CliError::Config(format!(
                    "--tau must be positive, got {tau}"
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Args)]
pub struct AssembleArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Dimension N of the reduced system.
    #[arg(long = "n")]
    pub n: i64,
    /// Compare against a published fixture and report max deviations.
    #[arg(long, value_enum)]
    pub fixture: Option<Fixture>,
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Dimension N of the reduced system (optional with --sweep).
    #[arg(long = "n")]
    pub n: Option<i64>,
    /// Time step.
    #[arg(long, allow_negative_numbers = true)]
    pub h: f64,
    /// Final integration time.
    #[arg(long, allow_negative_numbers = true)]
    pub t_end: f64,
    /// History segment: a number, `const:<v>`, or `poly:<c0>,<c1>,...` in theta.
    #[arg(long, allow_hyphen_values = true)]
    pub history: String,
    #[arg(long, value_enum, default_value_t = Variable::Perturbed)]
    pub variable: Variable,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub run: RunArgs,
    #[arg(long, value_enum, default_value_t = Engine::Reduced)]
    pub engine: Engine,
    /// Comma-separated list of N values to run against a single reference.
    #[arg(long, value_delimiter = ',')]
    pub sweep: Option<Vec<i64>>,
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct FieldArgs {
    #[command(flatten)]
    pub run: RunArgs,
    /// Number of equally spaced theta samples on [-tau, 0].
    #[arg(long, default_value_t = 21)]
    pub theta_points: usize,
    /// Explicit comma-separated theta samples (overrides --theta-points).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub theta: Option<Vec<f64>>,
    /// Emit every k-th time step.
    #[arg(long, default_value_t = 1)]
    pub every: usize,
    #[arg(long, default_value = "field.csv")]
    pub out: PathBuf,
}

pub fn parse_dimension(n: i64, what: &str) -> Result<usize, CliError> {
    if n < 1 {
        return Err(CliError::Config(format!(
            "{what} must be at least 1, got {n}"
        )));
    }
    let n = n as usize;
    if n > gk_core::basis::DEFAULT_MAX_DEGREE + 1 {
        return Err(CliError::Config(format!(
            "{what} = {n} exceeds the supported maximum {}",
            gk_core::basis::DEFAULT_MAX_DEGREE + 1
        )));
    }
    Ok(n)
}

pub fn parse_history(text: &str) -> Result<HistorySegment, CliError> {
    let bad = || CliError::Config(format!("cannot parse history `{text}`"));
    let parse_num = |s: &str| -> Result<f64, CliError> {
        let v: f64 = s.trim().parse().map_err(|_| bad())?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(bad())
        }
    };
    if let Some(rest) = text.strip_prefix("const:") {
        return Ok(HistorySegment::Constant(parse_num(rest)?));
    }
    if let Some(rest) = text.strip_prefix("poly:") {
        let coeffs = rest
            .split(',')
            .map(parse_num)
            .collect::<Result<Vec<_>, _>>()?;
        return Ok(HistorySegment::Polynomial(coeffs));
    }
    Ok(HistorySegment::Constant(parse_num(text)?))
}

pub fn check_positive(name: &str, v: f64) -> Result<(), CliError> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(CliError::Config(format!(
            "{name} must be positive, got {v}"
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn history_forms() {
        assert!(matches!(parse_history("0.1").unwrap(), HistorySegment::Constant(v) if v == 0.1));
        assert!(
            matches!(parse_history("const:-2").unwrap(), HistorySegment::Constant(v) if v == -2.0)
        );
        match parse_history("poly:1, 0.5,-3").unwrap() {
            HistorySegment::Polynomial(c) => assert_eq!(c, vec![1.0, 0.5, -3.0]),
            other => panic!("{other:?}"),
        }
        assert!(parse_history("poly:").is_err());
        assert!(parse_history("abc").is_err());
        assert!(parse_history("nan").is_err());
    }

    #[test]
    fn dimensions() {
        assert_eq!(parse_dimension(6, "N").unwrap(), 6);
        assert!(parse_dimension(0, "N").is_err());
        assert!(parse_dimension(-3, "N").is_err());
        assert!(parse_dimension(500, "N").is_err());
    }
}
