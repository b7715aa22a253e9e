//! Two-qubit XY spin chain in an inhomogeneous magnetic field: closed-form
//! spectrum, level-crossing loci, Gibbs-state fidelities, Yangian transition
//! fidelities, and a dense-matrix oracle to check them against.

pub mod contour;
pub mod error;
pub mod grid;
pub mod heatmap;
pub mod linalg;
pub mod model;
pub mod oracle;
pub mod spectrum;
pub mod thermal;
pub mod verify;
pub mod yangian;

pub use error::{Error, Result};
pub use grid::{run_sweep, AxisName, AxisSpec, Grid2D, OutputFormat, PointParams, Quantity, SweepConfig};
pub use linalg::{Matrix4, StateVector4};
pub use model::{build_hamiltonian, Params};
pub use spectrum::{analytic_eigensystem, energy_gap, EigenSystem};
pub use thermal::{thermal_fidelity, ThermalState};
pub use yangian::{transition_fidelity, Transition, TransitionFidelity, YangianParams};
