//! On-disk artifacts. All numeric output uses the default shortest
//! round-trip float formatting, so identical runs produce byte-identical
//! files. Wall-clock timings never enter these files for the same reason.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::error::Result;
use crate::graph::AgentGraph;
use crate::scene::ReflectivityImage;
use crate::solver::Trace;

use super::sweeps::{ConnectivityRun, ConnectivitySweep, ReceiverSweep};

pub fn ensure_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    Ok(())
}

pub fn write_text(path: &Path, content: &str) -> Result<()> {
    std::fs::write(path, content)?;
    Ok(())
}

/// `t,mse,consensus_error,eta` per recorded solver iteration.
pub fn trace_csv(trace: &Trace) -> String {
    let mut out = String::from("t,mse,consensus_error,eta\n");
    for row in &trace.rows {
        let _ = writeln!(out, "{},{},{},{}", row.t, row.mse, row.consensus_error, row.eta);
    }
    out
}

/// `row,col,re,im` per voxel, row-major.
pub fn image_csv(image: &ReflectivityImage) -> String {
    let mut out = String::from("row,col,re,im\n");
    for r in 0..image.rows() {
        for c in 0..image.cols() {
            let z = image.get(r, c);
            let _ = writeln!(out, "{},{},{},{}", r, c, z.re, z.im);
        }
    }
    out
}

/// One `i j` pair per line, endpoints ascending.
pub fn edge_list_text(graph: &AgentGraph) -> String {
    graph.edge_list_string()
}

fn push_connectivity_run(out: &mut String, run: &ConnectivityRun) {
    let iters = run
        .iterations_to_threshold
        .map_or(String::new(), |v| v.to_string());
    let p = if run.rewire_probability.is_nan() {
        String::new()
    } else {
        run.rewire_probability.to_string()
    };
    let _ = writeln!(
        out,
        "{},{},{},{},{},{}",
        p,
        run.seed_index,
        run.solver.label(),
        iters,
        run.final_mse,
        run.final_consensus
    );
}

/// Per-run rows of a connectivity sweep; the complete-graph baseline rows
/// carry an empty probability column.
pub fn connectivity_runs_csv(sweep: &ConnectivitySweep) -> String {
    let mut out = String::from(
        "rewire_probability,seed_index,solver,iterations_to_threshold,final_mse,final_consensus\n",
    );
    for run in &sweep.runs {
        push_connectivity_run(&mut out, run);
    }
    for run in &sweep.baseline {
        push_connectivity_run(&mut out, run);
    }
    out
}

/// Median summary of a connectivity sweep, one row per probability.
pub fn connectivity_summary_csv(sweep: &ConnectivitySweep) -> String {
    let mut out = String::from(
        "rewire_probability,dgwf_median_iterations,gwf_complete_median_iterations\n",
    );
    for pt in &sweep.points {
        let dgwf = pt.dgwf_median_iterations.map_or(String::new(), |v| v.to_string());
        let base = pt.gwf_complete_median_iterations.map_or(String::new(), |v| v.to_string());
        let _ = writeln!(out, "{},{},{}", pt.rewire_probability, dgwf, base);
    }
    out
}

/// Per-run rows of a network-size sweep.
pub fn receiver_runs_csv(sweep: &ReceiverSweep) -> String {
    let mut out = String::from("num_agents,seed_index,solver,final_mse,final_consensus\n");
    for run in &sweep.runs {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            run.num_agents,
            run.seed_index,
            run.solver.label(),
            run.final_mse,
            run.final_consensus
        );
    }
    out
}

/// Median summary of a network-size sweep, one row per size.
pub fn receiver_summary_csv(sweep: &ReceiverSweep) -> String {
    let mut out = String::from("num_agents,dgwf_median_final_mse,gwf_median_final_mse\n");
    for pt in &sweep.points {
        let dgwf = pt.dgwf_median_mse.map_or(String::new(), |v| v.to_string());
        let gwf = pt.gwf_median_mse.map_or(String::new(), |v| v.to_string());
        let _ = writeln!(out, "{},{},{}", pt.num_agents, dgwf, gwf);
    }
    out
}

/// Writes `content` under `dir` and returns the full path.
pub fn write_artifact(dir: &Path, name: &str, content: &str) -> Result<PathBuf> {
    ensure_dir(dir)?;
    let path = dir.join(name);
    write_text(&path, content)?;
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::TraceRow;
    use num_complex::Complex64;

    #[test]
    fn trace_csv_has_pinned_header_and_plain_floats() {
        let trace = Trace {
            rows: vec![
                TraceRow { t: 0, mse: 1.0, consensus_error: 0.0, eta: 0.0, objective: None },
                TraceRow {
                    t: 10,
                    mse: 0.125,
                    consensus_error: 1e-9,
                    eta: 0.01,
                    objective: Some(3.0),
                },
            ],
        };
        let text = trace_csv(&trace);
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("t,mse,consensus_error,eta"));
        assert_eq!(lines.next(), Some("0,1,0,0"));
        // The objective column stays out of the artifact even when recorded.
        assert_eq!(lines.next(), Some("10,0.125,0.000000001,0.01"));
        assert_eq!(lines.next(), None);
    }

    #[test]
    fn image_csv_walks_row_major() {
        let img = ReflectivityImage::from_values(
            2,
            2,
            vec![
                Complex64::new(1.0, 0.0),
                Complex64::new(0.0, -2.0),
                Complex64::new(0.5, 0.5),
                Complex64::new(0.0, 0.0),
            ],
        )
        .unwrap();
        let text = image_csv(&img);
        assert_eq!(
            text,
            "row,col,re,im\n0,0,1,0\n0,1,0,-2\n1,0,0.5,0.5\n1,1,0,0\n"
        );
    }

    #[test]
    fn artifacts_land_in_the_requested_directory() {
        let dir = std::env::temp_dir().join("dgwf-io-test");
        let _ = std::fs::remove_dir_all(&dir);
        let path = write_artifact(&dir, "probe.txt", "content\n").unwrap();
        assert_eq!(std::fs::read_to_string(path).unwrap(), "content\n");
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
