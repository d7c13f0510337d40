//! Second-quantized Hamiltonians on qubits.

mod jw;
mod pauli;

pub use jw::{annihilation, creation, jordan_wigner, number_operator, sz_operator};
pub use pauli::{embed_operator, subtract, PauliString, PauliSum, PRUNE_TOL};
pub(crate) use pauli::check_placement;
