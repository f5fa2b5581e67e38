//! `spe apply` and `spe analyze`.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use log::info;
use spe_core::analysis::{analysis_report, DEFAULT_BINS};
use spe_core::{Backend, CgOptions, GradientTerm, SolverConfig};

use crate::error::exit;
use crate::io::{load_image, save_image};
use crate::pipeline::photorealize;
use crate::report::{write_csv, write_json, AnalysisJson, ApplyReport};
use crate::SpeError;

#[derive(Debug, Parser)]
#[command(name = "spe", version, about = "Screened Poisson photorealism for stylized images")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Make a stylized image photorealistic using the content photograph's gradients.
    Apply(ApplyArgs),
    /// Compare gradient histograms of content, stylized and output images.
    Analyze(AnalyzeArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SolverChoice {
    /// DCT-II spectral solve.
    Fft,
    /// Conjugate gradient.
    Cg,
    /// Dense Cholesky (at most 4096 pixels).
    Dense,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GradientTermChoice {
    Original,
    Abs,
    Square,
    Histmatch,
}

#[derive(Debug, Args)]
pub struct ApplyArgs {
    /// Original content photograph.
    #[arg(long)]
    pub content: PathBuf,
    /// Stylized image produced by an external style-transfer method.
    #[arg(long)]
    pub stylized: PathBuf,
    /// Style image; required by `--gradient-term histmatch`.
    #[arg(long)]
    pub style: Option<PathBuf>,
    /// Output PNG.
    #[arg(long = "out")]
    pub out: PathBuf,
    #[arg(long, default_value_t = 5.0)]
    pub lambda_l: f64,
    #[arg(long, default_value_t = 1.0)]
    pub lambda_ab: f64,
    #[arg(long, value_enum, default_value_t = SolverChoice::Fft)]
    pub solver: SolverChoice,
    #[arg(long, value_enum, default_value_t = GradientTermChoice::Original)]
    pub gradient_term: GradientTermChoice,
    /// Write the JSON solver report here instead of standard error.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Histogram bins for the KL values in the report (odd, at least 3).
    #[arg(long, default_value_t = DEFAULT_BINS)]
    pub bins: usize,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[arg(long)]
    pub content: PathBuf,
    #[arg(long)]
    pub stylized: PathBuf,
    /// Output image of a previous `apply` run.
    #[arg(long = "out")]
    pub out: PathBuf,
    /// JSON report path; the CSV is written next to it with a `.csv`
    /// extension. Defaults to `<out>.analysis.json`.
    #[arg(long)]
    pub report: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_BINS)]
    pub bins: usize,
}

impl SolverChoice {
    pub fn backend(self) -> Backend {
        match self {
            SolverChoice::Fft => Backend::Spectral,
            SolverChoice::Cg => Backend::ConjugateGradient(CgOptions::default()),
            SolverChoice::Dense => Backend::DenseOracle,
        }
    }

    fn name(self) -> &'static str {
        match self {
            SolverChoice::Fft => "fft",
            SolverChoice::Cg => "cg",
            SolverChoice::Dense => "dense",
        }
    }
}

fn check_lambda(name: &str, v: f64) -> Result<(), SpeError> {
    if !(v.is_finite() && v >= 0.0) {
        return Err(SpeError::Usage(format!(
            "{name} must be a non-negative number, got {v}"
        )));
    }
    Ok(())
}

impl ApplyArgs {
    /// Validates flags and loads the style image when the variant needs it.
    pub fn solver_config(&self) -> Result<SolverConfig, SpeError> {
        check_lambda("--lambda-l", self.lambda_l)?;
        check_lambda("--lambda-ab", self.lambda_ab)?;
        let variant = match self.gradient_term {
            GradientTermChoice::Original => GradientTerm::Original,
            GradientTermChoice::Abs => GradientTerm::Absolute,
            GradientTermChoice::Square => GradientTerm::Squared,
            GradientTermChoice::Histmatch => {
                let path = self
                    .style
                    .as_ref()
                    .ok_or_else(|| SpeError::Usage("--gradient-term histmatch requires --style".into()))?;
                GradientTerm::HistogramMatched {
                    style: load_image(path)?,
                }
            }
        };
        Ok(SolverConfig {
            lambda_l: self.lambda_l,
            lambda_ab: self.lambda_ab,
            backend: self.solver.backend(),
            variant,
        })
    }
}

pub fn run_apply(args: &ApplyArgs) -> Result<ApplyReport, SpeError> {
    let config = args.solver_config()?;
    let content = load_image(&args.content)?;
    let stylized = load_image(&args.stylized)?;

    let timed = photorealize(&content, &stylized, &config)?;
    save_image(&timed.result.image, &args.out)?;

    let analysis = analysis_report(&content, &timed.stylized, &timed.result.image, args.bins)?;
    let mut report = ApplyReport {
        solver: args.solver.name().into(),
        gradient_term: config.variant.name().into(),
        lambda_l: config.lambda_l,
        lambda_ab: config.lambda_ab,
        height: content.height(),
        width: content.width(),
        residual_l: 0.0,
        residual_a: 0.0,
        residual_b: 0.0,
        iterations_l: 0,
        iterations_a: 0,
        iterations_b: 0,
        converged_l: true,
        converged_a: true,
        converged_b: true,
        solve_time_l: 0.0,
        solve_time_a: 0.0,
        solve_time_b: 0.0,
        wall_time_seconds: timed.wall_time_seconds,
        kl_stylized_vs_content: analysis.kl_stylized_vs_content,
        kl_output_vs_content: analysis.kl_output_vs_content,
    };
    report.set_channels(&timed.result.reports);

    match &args.report {
        Some(path) => write_json(&report, path)?,
        None => eprintln!("{}", serde_json::to_string_pretty(&report).expect("report serializes")),
    }

    for (channel, r) in ['L', 'a', 'b'].into_iter().zip(&timed.result.reports) {
        if !r.converged {
            return Err(SpeError::NotConverged {
                channel,
                residual: r.residual_norm,
                iterations: r.iterations,
            });
        }
    }
    info!("wrote {} in {:.3}s", args.out.display(), timed.wall_time_seconds);
    Ok(report)
}

fn default_analysis_path(out: &Path) -> PathBuf {
    let mut name = out.file_stem().unwrap_or_default().to_os_string();
    name.push(".analysis.json");
    out.with_file_name(name)
}

pub fn run_analyze(args: &AnalyzeArgs) -> Result<AnalysisJson, SpeError> {
    let content = load_image(&args.content)?;
    let stylized = load_image(&args.stylized)?;
    let output = load_image(&args.out)?;
    let analysis = analysis_report(&content, &stylized, &output, args.bins)?;

    let json_path = args.report.clone().unwrap_or_else(|| default_analysis_path(&args.out));
    let csv_path = json_path.with_extension("csv");
    let json = AnalysisJson::from(&analysis);
    write_json(&json, &json_path)?;
    write_csv(&analysis, &csv_path)?;

    println!("kl_stylized_vs_content {:.9e}", analysis.kl_stylized_vs_content);
    println!("kl_output_vs_content {:.9e}", analysis.kl_output_vs_content);
    Ok(json)
}

/// Parses `args` and runs the selected command, returning the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::USAGE } else { exit::SUCCESS };
            let _ = e.print();
            return code;
        }
    };
    let result = match &cli.command {
        Command::Apply(a) => run_apply(a).map(|_| ()),
        Command::Analyze(a) => run_analyze(a).map(|_| ()),
    };
    match result {
        Ok(()) => exit::SUCCESS,
        Err(e) => {
            eprintln!("spe: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_follow_the_reference_protocol() {
        let cli = Cli::try_parse_from([
            "spe",
            "apply",
            "--content",
            "c.png",
            "--stylized",
            "s.png",
            "--out",
            "o.png",
        ])
        .unwrap();
        let Command::Apply(a) = cli.command else { panic!() };
        assert_eq!(a.lambda_l, 5.0);
        assert_eq!(a.lambda_ab, 1.0);
        assert_eq!(a.solver, SolverChoice::Fft);
        assert_eq!(a.gradient_term, GradientTermChoice::Original);
        assert_eq!(a.bins, 101);
        let config = a.solver_config().unwrap();
        assert_eq!(config, SolverConfig::default());
    }

    #[test]
    fn histmatch_without_style_is_a_usage_error() {
        let cli = Cli::try_parse_from([
            "spe",
            "apply",
            "--content",
            "c.png",
            "--stylized",
            "s.png",
            "--out",
            "o.png",
            "--gradient-term",
            "histmatch",
        ])
        .unwrap();
        let Command::Apply(a) = cli.command else { panic!() };
        let err = a.solver_config().unwrap_err();
        assert_eq!(err.exit_code(), exit::USAGE);
    }

    #[test]
    fn negative_lambda_is_a_usage_error() {
        let cli = Cli::try_parse_from([
            "spe",
            "apply",
            "--content",
            "c.png",
            "--stylized",
            "s.png",
            "--out",
            "o.png",
            "--lambda-l=-1",
        ])
        .unwrap();
        let Command::Apply(a) = cli.command else { panic!() };
        assert_eq!(a.solver_config().unwrap_err().exit_code(), exit::USAGE);
    }

    #[test]
    fn unknown_flags_exit_with_usage_code() {
        assert_eq!(run(["spe", "apply", "--bogus"]), exit::USAGE);
        assert_eq!(run(["spe", "--help"]), exit::SUCCESS);
    }

    #[test]
    fn default_analysis_path_sits_next_to_output() {
        assert_eq!(
            default_analysis_path(Path::new("/tmp/x/o.png")),
            PathBuf::from("/tmp/x/o.analysis.json")
        );
    }
}
