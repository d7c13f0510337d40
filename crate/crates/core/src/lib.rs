//! Time-evolved quantum-selected configuration interaction (TE-QSCI) on a
//! statevector simulator, with exact CASCI references and two-layer ONIOM
//! energy reports.
//!
//! Qubit `2p` is spatial orbital `p` with spin alpha and qubit `2p + 1` the
//! same orbital with spin beta. Bit `q` of a [`Determinant`] is qubit `q`,
//! and bitstrings print qubit 0 first.

pub mod det;
pub mod eigen;
pub mod error;
pub mod fermion_qubit;
pub mod hamio;
pub mod model;
pub mod oniom;
pub mod oracle;
pub mod pipeline;
pub mod qsci;
pub mod selection;
pub mod simulator;

pub use det::{Determinant, Sector};
pub use error::{Error, Result};
pub use fermion_qubit::{jordan_wigner, PauliString, PauliSum};
pub use hamio::{parse_fcidump, restrict_active_space, write_fcidump, ActiveSpaceSpec, IntegralTable};
pub use oniom::{oniom_energy, relative_profile, LayerEnergies, HARTREE_TO_EV};
pub use oracle::{casci, fidelity, s_squared, slater_condon, CasciSolution, CiState};
pub use pipeline::{run, validate, RunConfig};
pub use qsci::{qsci_energies, SubspaceResult};
pub use selection::{merge, postselect, spin_augment, ConfigurationSet};
pub use simulator::{build_trotter_plan, evolve, prepare_initial_state, ShotBatch, Statevector, TrotterPlan};
