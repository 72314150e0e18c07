//! Scratch probe: paper-scale convergence trajectory under config overrides.
//!
//! Usage: probe [extra-toml]
//! Runs GWF then DGWF on the noiseless paper-scale instance with stop
//! thresholds (mse 1e-5, consensus 1e-6) and prints milestone MSE values.

use dgwf_core::harness::{assemble, ExperimentConfig};
use dgwf_core::solver::{run_dgwf, run_gwf, RunOptions};

fn main() {
    let extra = std::env::args().nth(1).unwrap_or_default();
    let toml = format!(
        "[noise]\nsnr_db = \"none\"\n[solver]\nt_max = 100000\n{extra}\n"
    );
    let config = ExperimentConfig::from_toml_str(&toml, "probe").expect("config");
    eprintln!("bandwidth {} Hz", config.waveform.bandwidth_hz);
    let instance = assemble(&config, 7).expect("assemble");
    let solver = config.solver.to_solver_config();

    let t0 = std::time::Instant::now();
    let gwf = run_gwf(
        &instance.problem,
        &solver,
        &instance.truth,
        &RunOptions {
            record_stride: 2000,
            stop_mse: Some(1e-5),
            ..RunOptions::default()
        },
    )
    .expect("gwf");
    println!(
        "gwf done in {:.0}s, iterations={}",
        t0.elapsed().as_secs_f64(),
        gwf.iterations
    );
    for row in &gwf.trace.rows {
        println!("gwf t={} mse={:.6e}", row.t, row.mse);
    }

    let t0 = std::time::Instant::now();
    let dgwf = run_dgwf(
        &instance.problem,
        &solver,
        &instance.truth,
        &RunOptions {
            record_stride: 2000,
            stop_mse: Some(1e-5),
            stop_consensus: Some(1e-6),
            ..RunOptions::default()
        },
    )
    .expect("dgwf");
    println!(
        "dgwf done in {:.0}s, iterations={}",
        t0.elapsed().as_secs_f64(),
        dgwf.iterations
    );
    for row in &dgwf.trace.rows {
        println!(
            "dgwf t={} mse={:.6e} consensus={:.6e}",
            row.t, row.mse, row.consensus_error
        );
    }
}
