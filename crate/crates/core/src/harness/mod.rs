//! Experiment harness: configuration, instance assembly, single runs,
//! parameter sweeps, landscape reports, and on-disk artifacts.

pub mod config;
pub mod instance;
pub mod io;
pub mod plot;
pub mod run;
pub mod sweeps;
pub mod theory;

pub use config::{ExperimentConfig, SnrField, SweepParameter};
pub use instance::{assemble, assemble_with, Assembled, SubSeeds, Topology};
pub use run::{init_report, simulate, InitReport, SimulationArtifacts};
pub use sweeps::{
    run_connectivity_sweep, run_receiver_sweep, ConnectivitySweep, ReceiverSweep, SolverKind,
};
pub use theory::{theory_instance, theory_report, TheoryInstance, TheoryReport};
