//! Command-line front end: single simulations, parameter sweeps, landscape
//! reports, and initialization checks, all driven by one TOML
//! configuration.

use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{CommandFactory, Parser, Subcommand};
use log::info;

use dgwf_core::harness::config::ExperimentConfig;
use dgwf_core::harness::{io, plot, run_connectivity_sweep, run_receiver_sweep};
use dgwf_core::harness::{init_report, simulate, theory_report};

#[derive(Parser)]
#[command(
    name = "dgwf",
    version,
    about = "Distributed interferometric imaging experiments",
    subcommand_required = false,
    arg_required_else_help = false
)]
struct Cli {
    /// TOML experiment configuration; built-in defaults apply when omitted.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Master seed; overrides the seed in the configuration.
    #[arg(long, global = true, value_name = "N")]
    seed: Option<u64>,

    /// Artifact directory; overrides the one in the configuration.
    #[arg(long, global = true, value_name = "DIR")]
    out_dir: Option<PathBuf>,

    /// Only report errors.
    #[arg(long, global = true)]
    quiet: bool,

    /// Print the built-in default configuration as TOML and exit.
    #[arg(long)]
    print_default_config: bool,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Run both solvers once and write traces and reconstructions.
    Simulate,
    /// Iterations to a target error across graph rewiring probabilities.
    SweepConnectivity,
    /// Final error within a fixed budget across network sizes.
    SweepReceivers,
    /// Verify the landscape constants on a downscaled instance.
    Theory,
    /// Score the spectral initialization without running a solver.
    InitOnly,
}

fn load_config(cli: &Cli) -> Result<ExperimentConfig> {
    match &cli.config {
        Some(path) => ExperimentConfig::from_path(path).with_context(|| {
            format!(
                "cannot load configuration {}\n{}",
                path.display(),
                Cli::command().render_usage()
            )
        }),
        None => Ok(ExperimentConfig::default()),
    }
}

/// Best-effort figure emission; failures are logged and swallowed.
fn try_plot(dir: &Path, name: &str, spec: &plot::PlotSpec, series: &[plot::Series]) {
    match plot::line_plot_svg(spec, series) {
        Some(svg) => match io::write_artifact(dir, name, &svg) {
            Ok(path) => info!("wrote {}", path.display()),
            Err(e) => log::warn!("could not write figure {name}: {e}"),
        },
        None => log::warn!("figure {name} skipped: no plottable points"),
    }
}

fn cmd_simulate(config: &ExperimentConfig, seed: u64, dir: &Path) -> Result<()> {
    let started = Instant::now();
    let artifacts = simulate(config, seed)?;
    info!("both solver runs finished in {:.1}s", started.elapsed().as_secs_f64());

    io::write_artifact(dir, "dgwf_trace.csv", &io::trace_csv(&artifacts.dgwf.trace))?;
    io::write_artifact(dir, "gwf_trace.csv", &io::trace_csv(&artifacts.gwf.trace))?;
    io::write_artifact(
        dir,
        "reconstruction.csv",
        &io::image_csv(&artifacts.reconstruction_image()?),
    )?;
    io::write_artifact(dir, "truth.csv", &io::image_csv(&artifacts.assembled.truth_image))?;
    io::write_artifact(
        dir,
        "graph_edges.txt",
        &io::edge_list_text(artifacts.assembled.problem.graph()),
    )?;

    let dgwf_last = artifacts.dgwf.trace.final_row().expect("trace has rows");
    let gwf_last = artifacts.gwf.trace.final_row().expect("trace has rows");
    let summary = format!(
        "simulation summary\n\
         seed: {seed}\n\
         agents: {}\n\
         voxels: {}\n\
         iterations: {}\n\
         distributed final mse: {}\n\
         distributed final consensus error: {}\n\
         centralized final mse: {}\n",
        artifacts.assembled.num_agents(),
        artifacts.assembled.truth.len(),
        artifacts.dgwf.iterations,
        dgwf_last.mse,
        dgwf_last.consensus_error,
        gwf_last.mse,
    );
    io::write_artifact(dir, "run_summary.txt", &summary)?;
    print!("{summary}");

    let spec = plot::PlotSpec {
        title: "reconstruction error over iterations".into(),
        x_label: "iteration".into(),
        y_label: "aligned mse".into(),
        log_x: false,
        log_y: true,
    };
    let series = vec![
        plot::Series {
            label: "distributed".into(),
            points: artifacts
                .dgwf
                .trace
                .mse_series()
                .map(|(t, m)| (t as f64, m))
                .collect(),
        },
        plot::Series {
            label: "centralized".into(),
            points: artifacts.gwf.trace.mse_series().map(|(t, m)| (t as f64, m)).collect(),
        },
    ];
    try_plot(dir, "fig_convergence.svg", &spec, &series);
    Ok(())
}

fn cmd_sweep_connectivity(config: &ExperimentConfig, seed: u64, dir: &Path) -> Result<()> {
    let started = Instant::now();
    let sweep = run_connectivity_sweep(config, seed)?;
    info!("connectivity sweep finished in {:.1}s", started.elapsed().as_secs_f64());

    io::write_artifact(dir, "connectivity_runs.csv", &io::connectivity_runs_csv(&sweep))?;
    let summary = io::connectivity_summary_csv(&sweep);
    io::write_artifact(dir, "connectivity_summary.csv", &summary)?;
    print!("{summary}");

    let spec = plot::PlotSpec {
        title: "iterations to threshold vs rewiring probability".into(),
        x_label: "rewiring probability".into(),
        y_label: format!("iterations to mse {}", sweep.threshold),
        log_x: false,
        log_y: true,
    };
    let dgwf_points: Vec<(f64, f64)> = sweep
        .points
        .iter()
        .filter_map(|pt| pt.dgwf_median_iterations.map(|m| (pt.rewire_probability, m)))
        .collect();
    let base_points: Vec<(f64, f64)> = sweep
        .points
        .iter()
        .filter_map(|pt| pt.gwf_complete_median_iterations.map(|m| (pt.rewire_probability, m)))
        .collect();
    let series = vec![
        plot::Series { label: "distributed".into(), points: dgwf_points },
        plot::Series { label: "centralized, complete".into(), points: base_points },
    ];
    try_plot(dir, "fig_connectivity.svg", &spec, &series);
    Ok(())
}

fn cmd_sweep_receivers(config: &ExperimentConfig, seed: u64, dir: &Path) -> Result<()> {
    let started = Instant::now();
    let sweep = run_receiver_sweep(config, seed)?;
    info!("receiver sweep finished in {:.1}s", started.elapsed().as_secs_f64());

    io::write_artifact(dir, "receiver_runs.csv", &io::receiver_runs_csv(&sweep))?;
    let summary = io::receiver_summary_csv(&sweep);
    io::write_artifact(dir, "receiver_summary.csv", &summary)?;
    print!("{summary}");

    let spec = plot::PlotSpec {
        title: format!("final error after {} iterations vs receivers", sweep.t_max),
        x_label: "number of receivers".into(),
        y_label: "aligned mse".into(),
        log_x: false,
        log_y: true,
    };
    let dgwf_points: Vec<(f64, f64)> = sweep
        .points
        .iter()
        .filter_map(|pt| pt.dgwf_median_mse.map(|m| (pt.num_agents as f64, m)))
        .collect();
    let gwf_points: Vec<(f64, f64)> = sweep
        .points
        .iter()
        .filter_map(|pt| pt.gwf_median_mse.map(|m| (pt.num_agents as f64, m)))
        .collect();
    let series = vec![
        plot::Series { label: "distributed".into(), points: dgwf_points },
        plot::Series { label: "centralized".into(), points: gwf_points },
    ];
    try_plot(dir, "fig_receivers.svg", &spec, &series);
    Ok(())
}

fn cmd_theory(config: &ExperimentConfig, seed: u64, dir: &Path) -> Result<()> {
    let started = Instant::now();
    let report = theory_report(config, seed)?;
    info!("landscape report finished in {:.1}s", started.elapsed().as_secs_f64());
    let text = report.to_text();
    io::write_artifact(dir, "theory_report.txt", &text)?;
    print!("{text}");
    Ok(())
}

fn cmd_init_only(config: &ExperimentConfig, seed: u64, dir: &Path) -> Result<()> {
    let report = init_report(config, seed)?;
    let text = report.to_text();
    io::write_artifact(dir, "init_report.txt", &text)?;
    let (rows, cols) = report.assembled.geometry.grid_shape();
    let image =
        dgwf_core::scene::ReflectivityImage::from_values(rows, cols, report.init.x0.clone())?;
    io::write_artifact(dir, "init_estimate.csv", &io::image_csv(&image))?;
    print!("{text}");
    Ok(())
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    let level = if cli.quiet { "error" } else { "info" };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level))
        .format_timestamp(None)
        .init();

    if cli.print_default_config {
        print!("{}", ExperimentConfig::default().to_toml_string()?);
        return Ok(());
    }

    let Some(command) = &cli.command else {
        Cli::command().print_help()?;
        std::process::exit(2);
    };

    let config = load_config(&cli)?;
    let seed = cli.seed.unwrap_or(config.seed);
    let dir = cli
        .out_dir
        .clone()
        .unwrap_or_else(|| PathBuf::from(&config.output.out_dir));
    io::ensure_dir(&dir)?;

    match command {
        Command::Simulate => cmd_simulate(&config, seed, &dir),
        Command::SweepConnectivity => cmd_sweep_connectivity(&config, seed, &dir),
        Command::SweepReceivers => cmd_sweep_receivers(&config, seed, &dir),
        Command::Theory => cmd_theory(&config, seed, &dir),
        Command::InitOnly => cmd_init_only(&config, seed, &dir),
    }
}
