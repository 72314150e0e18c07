//! Scratch probe: dump raw sweep data for the trend experiments.

use dgwf_core::harness::{run_connectivity_sweep, run_receiver_sweep, ExperimentConfig};

fn main() {
    let which = std::env::args().nth(1).unwrap_or_else(|| "both".into());

    if which == "c" || which == "both" {
        let config = ExperimentConfig::from_toml_str(
            "[waveform]\nbandwidth_hz = 3.0e8\n\
             [graph]\nbase_degree = 6\n\
             [noise]\nsnr_db = \"none\"\n",
            "probe",
        )
        .expect("config");
        let t0 = std::time::Instant::now();
        let sweep = run_connectivity_sweep(&config, 11).expect("connectivity sweep");
        eprintln!("connectivity sweep took {:.0}s", t0.elapsed().as_secs_f64());
        for r in &sweep.baseline {
            println!(
                "c baseline seed={} iters={:?} mse={:.3e}",
                r.seed_index, r.iterations_to_threshold, r.final_mse
            );
        }
        for r in &sweep.runs {
            println!(
                "c p={:.1} seed={} iters={:?} mse={:.3e} cons={:.3e}",
                r.rewire_probability, r.seed_index, r.iterations_to_threshold, r.final_mse,
                r.final_consensus
            );
        }
        for pt in &sweep.points {
            println!(
                "c point p={:.1} dgwf_median={:?} baseline_median={:?}",
                pt.rewire_probability, pt.dgwf_median_iterations, pt.gwf_complete_median_iterations
            );
        }
    }

    if which == "r" || which == "both" {
        let config = ExperimentConfig::from_toml_str(
            "[waveform]\nbandwidth_hz = 3.0e8\ntx_gain_db = 106.0206\nrx_gain_db = 106.0206\n\
             [scene]\nscatterers = [\
             { row = 2, col = 3, re = 0.0625, im = 0.0 }, \
             { row = 3, col = 8, re = 0.05, im = 0.01875 }, \
             { row = 6, col = 5, re = 0.05625, im = -0.03125 }, \
             { row = 8, col = 2, re = 0.0, im = 0.05625 }, \
             { row = 9, col = 9, re = 0.04375, im = 0.025 } ]\n\
             [sweep]\nparameter = \"receivers\"\nvalues = [5, 10, 15, 20, 25, 30, 35, 40]\n",
            "probe",
        )
        .expect("config");
        let t0 = std::time::Instant::now();
        let sweep = run_receiver_sweep(&config, 13).expect("receiver sweep");
        eprintln!("receiver sweep took {:.0}s", t0.elapsed().as_secs_f64());
        for r in &sweep.runs {
            println!(
                "r n={} seed={} solver={} mse={:.3e} cons={:.3e}",
                r.num_agents,
                r.seed_index,
                r.solver.label(),
                r.final_mse,
                r.final_consensus
            );
        }
        for pt in &sweep.points {
            println!(
                "r point n={} dgwf_median={:?} gwf_median={:?}",
                pt.num_agents, pt.dgwf_median_mse, pt.gwf_median_mse
            );
        }
    }
}
