//! Command-line driver: `inpaint` restores a damaged image, `metrics`
//! scores two images, `verify` runs the validation studies, and `sweep`
//! scans the fractional power. Exit code 0 means the requested work
//! finished (converged or hit the iteration cap), 1 is an input or I/O
//! error, 2 means a run diverged or a verification study failed.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use fms_inpaint::io::{
    execute_job, load_image, load_mask, save_study_report, save_sweep_csv, JobConfig,
};
use fms_inpaint::verify::{run_all_studies, sweep_rows};
use fms_inpaint::{Error, MetricsReport, Model, ModelParams, Result, StopReason};

#[derive(Parser)]
#[command(
    name = "fms-inpaint",
    version,
    about = "Grayscale image inpainting with a fractional Mumford-Shah-type model and TV baselines"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Restore the damaged region of an image.
    Inpaint(InpaintArgs),
    /// Print PSNR/SNR/SSIM of a test image against a reference.
    Metrics {
        reference: PathBuf,
        test: PathBuf,
    },
    /// Run the verification studies and write one CSV + text report each.
    Verify {
        /// Directory receiving the per-study reports.
        #[arg(long, default_value = "verify-reports")]
        out_dir: PathBuf,
    },
    /// Run the fractional model over several alpha values, score each
    /// against a reference, and write a CSV table.
    Sweep(SweepArgs),
}

#[derive(Args)]
struct ParamArgs {
    /// Fractional power in (0, 2].
    #[arg(long, default_value_t = 1.6)]
    alpha: f64,
    /// Smoothness weight.
    #[arg(long, default_value_t = 0.9)]
    mu: f64,
    /// Fidelity weight outside the damaged region.
    #[arg(long, default_value_t = 250.0)]
    lambda0: f64,
    /// Time step.
    #[arg(long, default_value_t = 1.0)]
    dt: f64,
    /// TV regularization in sqrt(|grad u|^2 + delta^2).
    #[arg(long, default_value_t = 0.01)]
    delta: f64,
    /// Splitting constant for the TV term [default: 1/delta].
    #[arg(long)]
    c1: Option<f64>,
    /// Splitting constant for the fidelity term [default: 50, or 300
    /// with --strict-theorem].
    #[arg(long)]
    c2: Option<f64>,
    /// Iteration cap.
    #[arg(long, default_value_t = 2000)]
    max_iter: usize,
    /// Relative-increment stopping tolerance (0 disables early stopping).
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    /// Enforce the boundedness-theorem hypothesis c1 >= 1/delta and
    /// c2 > lambda0 (raises the default c2 to 300).
    #[arg(long)]
    strict_theorem: bool,
}

impl ParamArgs {
    fn params(&self) -> Result<ModelParams> {
        let p = ModelParams {
            dt: self.dt,
            delta: self.delta,
            mu: self.mu,
            lambda0: self.lambda0,
            c1: self.c1.unwrap_or(1.0 / self.delta),
            c2: self
                .c2
                .unwrap_or(if self.strict_theorem { 300.0 } else { 50.0 }),
            alpha: self.alpha,
            max_iter: self.max_iter,
            rel_tol: self.tol,
        };
        p.validate()?;
        if self.strict_theorem && !p.satisfies_theorem_hypothesis() {
            return Err(Error::InvalidParameter(format!(
                "--strict-theorem requires c1 >= 1/delta and c2 > lambda0, \
                 got c1 = {}, delta = {}, c2 = {}, lambda0 = {}",
                p.c1, p.delta, p.c2, p.lambda0
            )));
        }
        Ok(p)
    }
}

#[derive(Args)]
struct InpaintArgs {
    /// Model: fms, cvms, tvl2 or tvh1.
    #[arg(long, default_value = "fms")]
    model: String,
    #[command(flatten)]
    params: ParamArgs,
    /// Write the per-iteration CSV log here.
    #[arg(long)]
    log: Option<PathBuf>,
    /// Undamaged reference; adds PSNR/SNR/SSIM columns to the log and a
    /// score line to the summary.
    #[arg(long)]
    ground_truth: Option<PathBuf>,
    /// Damaged input image (PNG or PGM).
    input: PathBuf,
    /// Mask image; pixels brighter than 0.5 mark the damage.
    mask: PathBuf,
    /// Restored output image.
    output: PathBuf,
}

#[derive(Args)]
struct SweepArgs {
    /// Comma-separated fractional powers to try.
    #[arg(long, value_delimiter = ',', default_value = "1,1.2,1.4,1.6,1.8,2")]
    alphas: Vec<f64>,
    #[command(flatten)]
    params: ParamArgs,
    /// Undamaged reference image each run is scored against.
    #[arg(long)]
    ground_truth: PathBuf,
    /// Damaged input image.
    input: PathBuf,
    /// Mask image.
    mask: PathBuf,
    /// Output CSV (alpha,psnr,snr,ssim,iterations).
    out_csv: PathBuf,
}

fn run_inpaint(args: &InpaintArgs) -> Result<ExitCode> {
    let model: Model = args.model.parse()?;
    let cfg = JobConfig {
        model,
        input_path: args.input.clone(),
        mask_path: args.mask.clone(),
        output_path: args.output.clone(),
        ground_truth_path: args.ground_truth.clone(),
        log_path: args.log.clone(),
        params: args.params.params()?,
    };
    let summary = execute_job(&cfg)?;
    println!(
        "model={model} alpha={} iterations={} stop={} rel_increment={} energy={}",
        cfg.params.alpha,
        summary.iterations,
        summary.stop_reason,
        summary.final_rel_increment,
        summary.final_energy
    );
    if let Some(m) = &summary.metrics {
        println!("{m}");
    }
    if summary.stop_reason == StopReason::Diverged {
        eprintln!(
            "error: the iteration diverged; wrote the last finite iterate to {}",
            cfg.output_path.display()
        );
        return Ok(ExitCode::from(2));
    }
    Ok(ExitCode::SUCCESS)
}

fn run_metrics(reference: &PathBuf, test: &PathBuf) -> Result<ExitCode> {
    let a = load_image(reference)?;
    let b = load_image(test)?;
    let report = MetricsReport::compare(&a, &b, 0, 0.0)?;
    println!("psnr = {} dB", report.psnr);
    println!("snr = {} dB", report.snr);
    println!("ssim = {}", report.ssim);
    Ok(ExitCode::SUCCESS)
}

fn run_verify(out_dir: &PathBuf) -> Result<ExitCode> {
    let reports = run_all_studies()?;
    let mut failed = 0;
    for report in &reports {
        let (csv, txt) = save_study_report(out_dir, report)?;
        println!("{report}");
        println!("  wrote {} and {}", csv.display(), txt.display());
        println!();
        if !report.pass() {
            failed += 1;
        }
    }
    println!("{} studies, {} failed", reports.len(), failed);
    Ok(if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}

fn run_sweep(args: &SweepArgs) -> Result<ExitCode> {
    if args.alphas.is_empty() {
        return Err(Error::InvalidParameter(
            "--alphas needs at least one value".to_string(),
        ));
    }
    let base = args.params.params()?;
    let f = load_image(&args.input)?;
    let mask = load_mask(&args.mask, f.shape().dims())?;
    let reference = load_image(&args.ground_truth)?;
    f.shape().check_dims(reference.values().dim())?;
    let rows = sweep_rows(&f, &mask, &reference, &base, &args.alphas)?;
    save_sweep_csv(&args.out_csv, &rows)?;
    println!("alpha    psnr       snr        ssim      iterations  stop");
    let mut any_diverged = false;
    for r in &rows {
        println!(
            "{:<8} {:<10.4} {:<10.4} {:<9.6} {:<11} {}",
            r.alpha, r.psnr, r.snr, r.ssim, r.iterations, r.stop_reason
        );
        any_diverged |= r.stop_reason == StopReason::Diverged;
    }
    println!("wrote {}", args.out_csv.display());
    Ok(if any_diverged {
        eprintln!("error: at least one alpha diverged");
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Inpaint(args) => run_inpaint(args),
        Command::Metrics { reference, test } => run_metrics(reference, test),
        Command::Verify { out_dir } => run_verify(out_dir),
        Command::Sweep(args) => run_sweep(args),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
