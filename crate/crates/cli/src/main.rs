//! Command-line front end: every library operation as a reproducible
//! experiment emitting CSV or JSON, with a run manifest alongside any
//! file output. Identical invocations produce byte-identical output.

mod emit;
mod resolve;

use std::f64::consts::FRAC_PI_8;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};
use phaserep::noise::{perturb, sweep, trial_rng, NoiseConfig};
use phaserep::pffa::{estimate_phase, objective_scan, EstimationConfig};
use phaserep::phase_rep::{metric_report, PhaseDistribution};
use phaserep::rotation::interferometer_probs;
use phaserep::states::{build_state, StateSpec};

use emit::{fmt_f64, Emitter};
use resolve::Ctx;

#[derive(Parser)]
#[command(
    name = "phaserep",
    version,
    about = "Phase-representation PDFs, Heisenberg-limit metrics, and template-fit phase estimation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample the phase density P(phi) on [-pi, pi) as phi,pdf rows
    Pdf(PdfArgs),
    /// Numerical metrics (peak, visibility, HWHM, bin variance, drop
    /// probability) next to their closed forms
    Metrics(MetricsArgs),
    /// One simulate -> perturb -> fit run
    Estimate(EstimateArgs),
    /// Error statistics of the fit across noise powers
    NoiseSweep(SweepArgs),
    /// Run the library's invariant suite and exit nonzero on failure
    Validate(ValidateArgs),
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Kind {
    Noon,
    Substate,
    Noonvac,
    General,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct CommonArgs {
    /// State family
    #[arg(long = "spec-kind", value_enum)]
    spec_kind: Option<Kind>,
    /// Largest component carries 2*jmax photons
    #[arg(long)]
    jmax: Option<u32>,
    /// Sub-harmonic weight (substate, general)
    #[arg(long)]
    r1: Option<f64>,
    /// Path-state weight (general)
    #[arg(long)]
    r2: Option<f64>,
    /// Vacuum weight parameter, r2 = 1/sqrt(2n) (noonvac)
    #[arg(long)]
    n: Option<f64>,
    /// Master seed for anything stochastic
    #[arg(long)]
    seed: Option<u64>,
    /// Write data here instead of stdout; a .manifest.json sibling records the run
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format where both make sense
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Cap worker threads for trial parallelism
    #[arg(long)]
    threads: Option<usize>,
    /// JSON file whose keys mirror the long flags; flags win on conflict.
    /// A run manifest is accepted directly.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct PdfArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Grid points over [-pi, pi)
    #[arg(long)]
    samples: Option<usize>,
}

#[derive(Args)]
struct MetricsArgs {
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct EstimateArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// True arm phase the statistics are simulated at
    #[arg(long)]
    phi: Option<f64>,
    /// AWGN power added to each probability before the fit
    #[arg(long)]
    sigma2: Option<f64>,
    /// Search window, defaults to [0, pi/4]
    #[arg(long = "domain-min")]
    domain_min: Option<f64>,
    #[arg(long = "domain-max")]
    domain_max: Option<f64>,
    #[arg(long = "coarse-grid")]
    coarse_grid: Option<usize>,
    #[arg(long = "refine-tol")]
    refine_tol: Option<f64>,
    /// Also write the objective ambiguity scan (x,objective CSV) here
    #[arg(long)]
    scan: Option<PathBuf>,
    #[arg(long = "scan-points")]
    scan_points: Option<usize>,
    /// Upper end of the scan range (starts at 0)
    #[arg(long = "scan-max")]
    scan_max: Option<f64>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    common: CommonArgs,
    #[arg(long)]
    phi: Option<f64>,
    /// Comma-separated noise powers
    #[arg(long = "sigma2-list")]
    sigma2_list: Option<String>,
    /// Trials behind each signed mean error
    #[arg(long)]
    trials: Option<u64>,
    /// Trials behind each mean absolute error
    #[arg(long = "trials-abs")]
    trials_abs: Option<u64>,
    /// Clamp perturbed probabilities into [0, 1]
    #[arg(long, action = ArgAction::SetTrue)]
    clamp: bool,
    #[arg(long = "domain-min")]
    domain_min: Option<f64>,
    #[arg(long = "domain-max")]
    domain_max: Option<f64>,
    #[arg(long = "coarse-grid")]
    coarse_grid: Option<usize>,
    #[arg(long = "refine-tol")]
    refine_tol: Option<f64>,
}

#[derive(Args)]
struct ValidateArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Machine-readable report
    #[arg(long, action = ArgAction::SetTrue)]
    json: bool,
    /// Scale every tolerance (test hook; <1 tightens until failure)
    #[arg(long, hide = true)]
    tamper: Option<f64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Pdf(args) => cmd_pdf(args),
        Command::Metrics(args) => cmd_metrics(args),
        Command::Estimate(args) => cmd_estimate(args),
        Command::NoiseSweep(args) => cmd_noise_sweep(args),
        Command::Validate(args) => cmd_validate(args),
    }
}

fn init_threads(threads: Option<usize>) {
    if let Some(t) = threads {
        // Failure means a pool already exists; determinism does not
        // depend on the worker count, so that is fine.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global();
    }
}

/// Builds the state spec and seed from resolved flag/config values.
fn resolve_spec(ctx: &Ctx, common: &CommonArgs) -> anyhow::Result<(StateSpec, u64)> {
    let kind = ctx.kind(common.spec_kind, "spec-kind", Kind::Noon)?;
    let jmax = ctx.u32(common.jmax, "jmax", 2)?;
    let r1 = ctx.f64(common.r1, "r1", 1.0)?;
    let r2 = ctx.f64(common.r2, "r2", std::f64::consts::FRAC_1_SQRT_2)?;
    let n = ctx.f64(common.n, "n", 8.0)?;
    let seed = ctx.u64(common.seed, "seed", 0)?;
    let spec = match kind {
        Kind::Noon => StateSpec::Noon { j_max: jmax },
        Kind::Substate => StateSpec::SubState { j_max: jmax, r1 },
        Kind::Noonvac => StateSpec::NoonVac { j_max: jmax, n },
        Kind::General => StateSpec::General {
            j_max: jmax,
            r1,
            r2,
        },
    };
    Ok((spec, seed))
}

fn spec_params(emitter: &mut Emitter, spec: &StateSpec, seed: u64) {
    emitter.param("spec-kind", spec.kind_name());
    emitter.param("jmax", spec.j_max());
    match *spec {
        StateSpec::SubState { r1, .. } => emitter.param("r1", r1),
        StateSpec::NoonVac { n, .. } => emitter.param("n", n),
        StateSpec::General { r1, r2, .. } => {
            emitter.param("r1", r1);
            emitter.param("r2", r2);
        }
        StateSpec::Noon { .. } => {}
    }
    emitter.param("seed", seed);
}

fn estimation_config(
    ctx: &Ctx,
    domain_min: Option<f64>,
    domain_max: Option<f64>,
    coarse_grid: Option<usize>,
    refine_tol: Option<f64>,
) -> anyhow::Result<EstimationConfig> {
    let default = EstimationConfig::default();
    Ok(EstimationConfig {
        domain: (
            ctx.f64(domain_min, "domain-min", default.domain.0)?,
            ctx.f64(domain_max, "domain-max", default.domain.1)?,
        ),
        coarse_grid: ctx.usize(coarse_grid, "coarse-grid", default.coarse_grid)?,
        refine_tol: ctx.f64(refine_tol, "refine-tol", default.refine_tol)?,
    })
}

fn format_name(f: Format) -> &'static str {
    match f {
        Format::Csv => "csv",
        Format::Json => "json",
    }
}

fn cmd_pdf(args: PdfArgs) -> anyhow::Result<ExitCode> {
    let ctx = Ctx::load(args.common.config.as_deref())?;
    init_threads(args.common.threads);
    let (spec, seed) = resolve_spec(&ctx, &args.common)?;
    let samples = ctx.usize(args.samples, "samples", 1024)?;
    anyhow::ensure!(samples >= 2, "samples must be at least 2");
    let format = ctx.format(args.common.format, Format::Csv)?;

    let state = build_state(&spec)?;
    let dist = PhaseDistribution::new(&state)?;
    let step = std::f64::consts::TAU / samples as f64;
    let points: Vec<(f64, f64)> = (0..samples)
        .map(|k| {
            let phi = -std::f64::consts::PI + k as f64 * step;
            (phi, dist.pdf(phi))
        })
        .collect();

    let data = match format {
        Format::Csv => {
            let mut s = String::from("phi,pdf\n");
            for (phi, p) in &points {
                s.push_str(&format!("{},{}\n", fmt_f64(*phi), fmt_f64(*p)));
            }
            s
        }
        Format::Json => {
            let phi: Vec<f64> = points.iter().map(|p| p.0).collect();
            let pdf: Vec<f64> = points.iter().map(|p| p.1).collect();
            serde_json::to_string_pretty(&serde_json::json!({
                "spec": spec, "phi": phi, "pdf": pdf
            }))? + "\n"
        }
    };

    let mut emitter = Emitter::new("pdf");
    spec_params(&mut emitter, &spec, seed);
    emitter.param("samples", samples);
    emitter.param("format", format_name(format));
    emitter.finish(args.common.out.as_deref(), &data)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_metrics(args: MetricsArgs) -> anyhow::Result<ExitCode> {
    let ctx = Ctx::load(args.common.config.as_deref())?;
    init_threads(args.common.threads);
    let (spec, seed) = resolve_spec(&ctx, &args.common)?;
    let format = ctx.format(args.common.format, Format::Json)?;

    let report = metric_report(&spec)?;
    let data = match format {
        Format::Json => serde_json::to_string_pretty(&report)? + "\n",
        Format::Csv => {
            let mut s = String::from("metric,numerical,closed_form,agrees\n");
            let mut row = |name: &str, pair: &phaserep::phase_rep::MetricPair| {
                s.push_str(&format!(
                    "{name},{},{},{}\n",
                    pair.numerical.map(fmt_f64).unwrap_or_default(),
                    pair.closed_form.map(fmt_f64).unwrap_or_default(),
                    pair.agrees.map(|b| b.to_string()).unwrap_or_default()
                ));
            };
            row("peak_height", &report.peak_height);
            row("visibility", &report.visibility);
            row("hwhm", &report.hwhm);
            row("bin_variance", &report.bin_variance);
            if let Some(p) = &report.p_drop {
                row("p_drop", p);
            }
            s
        }
    };

    let mut emitter = Emitter::new("metrics");
    spec_params(&mut emitter, &spec, seed);
    emitter.param("format", format_name(format));
    emitter.finish(args.common.out.as_deref(), &data)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_estimate(args: EstimateArgs) -> anyhow::Result<ExitCode> {
    let ctx = Ctx::load(args.common.config.as_deref())?;
    init_threads(args.common.threads);
    let (spec, seed) = resolve_spec(&ctx, &args.common)?;
    let phi = ctx.f64(args.phi, "phi", 0.1)?;
    let sigma2 = ctx.f64(args.sigma2, "sigma2", 0.0)?;
    let est = estimation_config(
        &ctx,
        args.domain_min,
        args.domain_max,
        args.coarse_grid,
        args.refine_tol,
    )?;
    anyhow::ensure!(
        phi >= est.domain.0 && phi <= est.domain.1,
        "phi {phi} lies outside the estimation domain [{}, {}]",
        est.domain.0,
        est.domain.1
    );

    let state = build_state(&spec)?;
    let clean = interferometer_probs(&state, phi);
    let measured = if sigma2 > 0.0 {
        // Stream 0 of the seed: the same draw a sweep's first trial uses.
        perturb(&clean, sigma2, &mut trial_rng(seed, 0))
    } else {
        clean
    };

    let result = estimate_phase(&measured, &spec, &est)?;
    let data = serde_json::to_string_pretty(&result)? + "\n";

    if let Some(scan_path) = &args.scan {
        let points = ctx.usize(args.scan_points, "scan-points", 2048)?;
        let hi = ctx.f64(args.scan_max, "scan-max", std::f64::consts::TAU)?;
        let scan = objective_scan(&measured, &spec, points, 0.0, hi)?;
        let mut s = String::from("x,objective\n");
        for (x, f) in scan {
            s.push_str(&format!("{},{}\n", fmt_f64(x), fmt_f64(f)));
        }
        std::fs::write(scan_path, s)?;
    }

    let mut emitter = Emitter::new("estimate");
    spec_params(&mut emitter, &spec, seed);
    emitter.param("phi", phi);
    emitter.param("sigma2", sigma2);
    emitter.param("domain-min", est.domain.0);
    emitter.param("domain-max", est.domain.1);
    emitter.param("coarse-grid", est.coarse_grid);
    emitter.param("refine-tol", est.refine_tol);
    emitter.finish(args.common.out.as_deref(), &data)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_noise_sweep(args: SweepArgs) -> anyhow::Result<ExitCode> {
    let ctx = Ctx::load(args.common.config.as_deref())?;
    init_threads(args.common.threads);
    let (spec, seed) = resolve_spec(&ctx, &args.common)?;
    let phi = ctx.f64(args.phi, "phi", FRAC_PI_8)?;
    let sigma2_list = ctx.f64_list(
        args.sigma2_list.as_deref(),
        "sigma2-list",
        "1e-8,1e-7,1e-6,1e-5,1e-4,1e-3,1e-2",
    )?;
    let trials = ctx.u64(args.trials, "trials", 40_000)?;
    let trials_abs = ctx.u64(args.trials_abs, "trials-abs", 2_000)?;
    let clamp = ctx.bool(args.clamp, "clamp")?;
    let est = estimation_config(
        &ctx,
        args.domain_min,
        args.domain_max,
        args.coarse_grid,
        args.refine_tol,
    )?;
    let format = ctx.format(args.common.format, Format::Csv)?;
    anyhow::ensure!(
        phi >= est.domain.0 && phi <= est.domain.1,
        "phi {phi} lies outside the estimation domain"
    );

    let base = NoiseConfig {
        sigma2: 0.0,
        trials_mean: trials,
        trials_abs,
        phi_true: phi,
        seed,
        clamp,
    };
    let rows = sweep(&spec, &sigma2_list, &base, &est)?;

    let data = match format {
        Format::Csv => {
            let mut s = String::from("sigma2,mean_error,mean_abs_error,std_error,trials\n");
            for r in &rows {
                s.push_str(&format!(
                    "{},{},{},{},{}\n",
                    fmt_f64(r.sigma2),
                    fmt_f64(r.mean_error),
                    fmt_f64(r.mean_abs_error),
                    fmt_f64(r.std_error),
                    r.trials
                ));
            }
            s
        }
        Format::Json => serde_json::to_string_pretty(&rows)? + "\n",
    };

    let mut emitter = Emitter::new("noise-sweep");
    spec_params(&mut emitter, &spec, seed);
    emitter.param("phi", phi);
    emitter.param(
        "sigma2-list",
        sigma2_list
            .iter()
            .map(|s| s.to_string())
            .collect::<Vec<_>>()
            .join(","),
    );
    emitter.param("trials", trials);
    emitter.param("trials-abs", trials_abs);
    emitter.param("clamp", clamp);
    emitter.param("domain-min", est.domain.0);
    emitter.param("domain-max", est.domain.1);
    emitter.param("coarse-grid", est.coarse_grid);
    emitter.param("refine-tol", est.refine_tol);
    emitter.param("format", format_name(format));
    emitter.finish(args.common.out.as_deref(), &data)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_validate(args: ValidateArgs) -> anyhow::Result<ExitCode> {
    let _ctx = Ctx::load(args.common.config.as_deref())?;
    init_threads(args.common.threads);
    let scale = args.tamper.unwrap_or(1.0);
    let results = phaserep::validate::run_invariant_suite(scale);
    let all_passed = results.iter().all(|r| r.passed);

    let data = if args.json {
        serde_json::to_string_pretty(&results)? + "\n"
    } else {
        let mut s = String::new();
        for r in &results {
            s.push_str(&format!(
                "{} {:<28} {}\n",
                if r.passed { "PASS" } else { "FAIL" },
                r.name,
                r.detail
            ));
        }
        s.push_str(&format!(
            "{}: {}/{} invariants hold\n",
            if all_passed { "ok" } else { "FAILED" },
            results.iter().filter(|r| r.passed).count(),
            results.len()
        ));
        s
    };

    let mut emitter = Emitter::new("validate");
    emitter.param("json", args.json);
    emitter.finish(args.common.out.as_deref(), &data)?;

    if all_passed {
        Ok(ExitCode::SUCCESS)
    } else {
        let first = results.iter().find(|r| !r.passed).expect("some failure");
        eprintln!("invariant failed: {}", first.name);
        Ok(ExitCode::from(1))
    }
}
