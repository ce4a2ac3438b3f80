//! Dressed-qubit transformations.
//!
//! An error-bearing ("actual") Hamiltonian that is unitarily equivalent to an
//! idealized one can be used for computation directly, provided states are
//! prepared and read out in the rotated ("dressed") basis. This crate builds
//! the actual and ideal Hamiltonians for the physical models below, constructs
//! their dressing transformations, and checks every dressed/ideal equivalence
//! numerically on small Hilbert spaces:
//!
//! - [`su2`]: the conjugation identity for operator triples satisfying two of
//!   the three su(2) relations.
//! - [`leakage`]: a qubit embedded in an N-level system with off-resonant
//!   leakage couplings.
//! - [`exchange`]: Heisenberg exchange with a Dzyaloshinskii-Moriya
//!   anisotropy.
//! - [`encoded`]: three-spin encoded qubits driven by anisotropic exchange.
//! - [`nonseparable`]: a ring where a single-qubit drive carries a weak
//!   two-qubit error, removed to second order by a non-local dressing.
//! - [`harness`]: seeded verification suites and JSON reports, driven by the
//!   `verify` binary.

pub mod dressing;
pub mod encoded;
pub mod error;
pub mod exchange;
pub mod harness;
pub mod leakage;
pub mod nonseparable;
pub mod sampling;
pub mod spin;
pub mod su2;
pub mod tensor;

pub use error::{Error, Result};
pub use tensor::{
    embed, ground_state, hermitian_eigensystem, kron, op_distance, unitary_from_generator,
    Operator, Register, StateVector,
};
