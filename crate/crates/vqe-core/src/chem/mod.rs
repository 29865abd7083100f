//! Electronic-structure front end: geometry, STO-3G basis, analytic
//! integrals over s-type Gaussians, restricted Hartree-Fock, and the
//! transformation to spin-orbital tensors.

mod basis;
mod integrals;
mod scf;

pub use basis::{
    ContractedOrbital, GaussianPrimitive, MoleculeGeometry, angstrom_to_bohr, ANGSTROM_PER_BOHR,
    STO3G_HYDROGEN_CONTRACTIONS, STO3G_HYDROGEN_EXPONENTS,
};
pub use integrals::{ao_integrals, boys_f0, nuclear_repulsion, AoIntegrals};
pub use scf::{rhf_scf, spin_orbital_integrals, RhfSolution, SpinOrbitalIntegrals};
