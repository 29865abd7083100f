//! Variational quantum eigensolver for the hydrogen molecule, from
//! integrals to optimized energies with no quantum-chemistry dependencies.
//!
//! The pipeline: analytic STO-3G integrals over two hydrogen atoms →
//! restricted Hartree-Fock → spin-orbital tensors → fermion-to-qubit
//! mapping (Jordan-Wigner, parity, Bravyi-Kitaev, optional two-qubit
//! reduction) → parameterized ansatz circuits → statevector simulation with
//! exact or shot-sampled expectation values → classical optimization →
//! energies checked against an in-repo exact diagonalization.

pub mod ansatz;
pub mod backend;
pub mod chem;
pub mod driver;
pub mod error;
pub mod exact;
pub mod mapping;
pub mod optimize;
pub mod par;
pub mod pauli;
pub mod rng;

pub use error::{Result, VqeError};
