use anyhow::{bail, Context, Result};
use clap::Parser;

use squeezelab_cli::args::{Cli, Command, SweepArgs, VerifyArgs};
use squeezelab_cli::output::emit;
use squeezelab_cli::spec::{
    Fixed, GridSpec, Grids, OutputFormat, ParityArg, PortArg, Quantity, SweepSpec,
};
use squeezelab_cli::sweep::run_sweep;
use squeezelab_cli::verify::{run_verify, VerifyOptions, CHECK_NAMES};

fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e:#}");
        std::process::exit(2);
    }
}

fn run() -> Result<()> {
    init_thread_pool()?;
    let cli = Cli::parse();
    match cli.command {
        Command::Variances(args) => sweep(Quantity::Variances, args),
        Command::Transition(args) => sweep(Quantity::Transition, args),
        Command::PhotonDist(args) => sweep(Quantity::PhotonDist, args),
        Command::Mandel(args) => sweep(Quantity::Mandel, args),
        Command::Verify(args) => verify(args),
    }
}

/// SQUEEZELAB_THREADS caps the rayon pool.
fn init_thread_pool() -> Result<()> {
    if let Ok(value) = std::env::var("SQUEEZELAB_THREADS") {
        let threads: usize = value
            .parse()
            .context("SQUEEZELAB_THREADS must be a positive integer")?;
        if threads == 0 {
            bail!("SQUEEZELAB_THREADS must be positive");
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .context("installing the thread pool")?;
    }
    Ok(())
}

fn sweep(quantity: Quantity, args: SweepArgs) -> Result<()> {
    let spec = build_spec(quantity, &args)?;
    let table = run_sweep(&spec)?;
    emit(&spec, &table, &args.output)
}

fn build_spec(quantity: Quantity, args: &SweepArgs) -> Result<SweepSpec> {
    if let Some(path) = &args.config {
        let flag_given = args.alpha.is_some()
            || args.tau_abs.is_some()
            || args.tau_phase.is_some()
            || args.tau.is_some()
            || args.theta.is_some()
            || args.x.is_some()
            || args.n.is_some()
            || args.z.is_some()
            || args.phi.is_some()
            || args.port.is_some()
            || args.parity.is_some()
            || args.oracle_check.is_some();
        if flag_given {
            bail!("--config excludes grid and parameter flags");
        }
        return SweepSpec::from_config_file(path, quantity);
    }

    let spec = SweepSpec {
        quantity,
        grids: Grids {
            alpha: args.alpha.clone().map(GridSpec::Expr),
            tau_abs: args.tau_abs.clone().map(GridSpec::Expr),
            theta: args.theta.clone().map(GridSpec::Expr),
            x: args.x.clone().map(GridSpec::Expr),
            n: args.n.clone().map(GridSpec::Expr),
        },
        fixed: Fixed {
            z: args.z.clone(),
            phi: args.phi.clone(),
            tau_phase: args.tau_phase.clone(),
            tau: args.tau.clone(),
            port: match args.port.as_deref() {
                None => None,
                Some("a-prime") => Some(PortArg::APrime),
                Some("b-prime") => Some(PortArg::BPrime),
                Some(other) => bail!("unknown port {other:?}"),
            },
            parity: match args.parity.as_deref() {
                None => None,
                Some("even") => Some(ParityArg::Even),
                Some("odd") => Some(ParityArg::Odd),
                Some("mixed") => Some(ParityArg::Mixed),
                Some(other) => bail!("unknown parity {other:?}"),
            },
            theta: match quantity {
                // photon-dist mixed takes theta as a fixed scalar
                Quantity::PhotonDist => args.theta.clone(),
                _ => None,
            },
        },
        output_format: match args.format.as_str() {
            "csv" => OutputFormat::Csv,
            "json" => OutputFormat::Json,
            other => bail!("unknown format {other:?}"),
        },
        oracle_check: args.oracle_check,
        seed: args.seed,
        max_points: args.max_points,
    };
    spec.validate()?;
    Ok(spec)
}

fn verify(args: VerifyArgs) -> Result<()> {
    if args.list {
        for name in CHECK_NAMES {
            println!("{name}");
        }
        return Ok(());
    }
    let mut overrides = std::collections::BTreeMap::new();
    for entry in &args.tolerances {
        let Some((name, value)) = entry.split_once('=') else {
            bail!("tolerance override {entry:?} must be NAME=VALUE");
        };
        if !CHECK_NAMES.contains(&name) {
            bail!("unknown check {name:?} (see --list)");
        }
        overrides.insert(
            name.to_string(),
            value
                .parse::<f64>()
                .with_context(|| format!("bad tolerance value in {entry:?}"))?,
        );
    }
    for name in &args.only {
        if !CHECK_NAMES.contains(&name.as_str()) {
            bail!("unknown check {name:?} (see --list)");
        }
    }

    let options = VerifyOptions {
        seed: args.seed,
        points: args.points.max(1),
        tolerance_overrides: overrides,
        only: args.only.clone(),
    };
    println!("# squeezelab verify seed={} points={}", options.seed, options.points);
    let results = run_verify(&options)?;
    let mut failures = 0usize;
    for r in &results {
        let status = if r.passed() { "PASS" } else { "FAIL" };
        println!(
            "{status} {name} worst={worst:.3e} tol={tol:.3e} points={points}",
            name = r.name,
            worst = r.worst,
            tol = r.tolerance,
            points = r.points,
        );
        if !r.passed() {
            failures += 1;
        }
    }
    println!(
        "# {} checks, {} failed",
        results.len(),
        failures
    );
    if failures > 0 {
        std::process::exit(1);
    }
    Ok(())
}
