//! Initial-state circuits and parameterized variational forms.
//!
//! Initial states are parameter-free X-gate layers; the variational forms
//! append rotations and entanglers on top of a caller-supplied initial
//! circuit. Entanglement is always "full": one entangler per ordered pair
//! `i < j`, ascending, for determinism.

mod circuit;
mod hardware;
mod uccsd;

pub use circuit::{Angle, Circuit, Gate, GateKind};
pub use hardware::{efficient_su2, excitation_preserving, real_amplitudes, two_local_ry_rz_cz};
pub use uccsd::uccsd;

use crate::error::{Result, VqeError};
use crate::mapping::{encode_occupation, MappingKind};
use rand::Rng;

/// Empty circuit preparing the all-zeros state.
pub fn zero_state(n_qubits: usize) -> Circuit {
    Circuit::new(n_qubits, 0)
}

/// Closed-shell reference occupation: the lowest `n_particles / 2` modes
/// of each spin block, spin-up block stored first.
fn reference_occupation(n_spin_orbitals: usize, n_particles: usize) -> Result<Vec<usize>> {
    if n_spin_orbitals % 2 != 0 || n_particles % 2 != 0 || n_particles > n_spin_orbitals {
        return Err(VqeError::Configuration(format!(
            "closed-shell filling needs even counts with particles <= orbitals, \
             got {n_particles} particles in {n_spin_orbitals} spin orbitals"
        )));
    }
    let half = n_spin_orbitals / 2;
    let per_spin = n_particles / 2;
    let mut occ: Vec<usize> = (0..per_spin).collect();
    occ.extend((0..per_spin).map(|i| half + i));
    Ok(occ)
}

/// X gates preparing the encoded Hartree-Fock reference state.
///
/// The occupation vector is pushed through the encoding's GF(2) transform;
/// with `reduced` the two parity-symmetry qubits are dropped from the
/// result (parity encoding only).
pub fn hartree_fock_circuit(
    n_spin_orbitals: usize,
    n_particles: usize,
    mapping: MappingKind,
    reduced: bool,
) -> Result<Circuit> {
    if reduced && mapping != MappingKind::Parity {
        return Err(VqeError::Configuration(format!(
            "symmetry reduction requires the parity mapping, got {mapping}"
        )));
    }
    let occ = reference_occupation(n_spin_orbitals, n_particles)?;
    let encoded = encode_occupation(n_spin_orbitals, &occ, mapping)?;
    let (state, n_qubits) = if reduced {
        let q_up = n_spin_orbitals / 2 - 1;
        let q_total = n_spin_orbitals - 1;
        let mut state = 0u64;
        let mut new_q = 0;
        for q in 0..n_spin_orbitals {
            if q == q_up || q == q_total {
                continue;
            }
            state |= ((encoded >> q) & 1) << new_q;
            new_q += 1;
        }
        (state, n_spin_orbitals - 2)
    } else {
        (encoded, n_spin_orbitals)
    };
    let mut c = Circuit::new(n_qubits, 0);
    for q in 0..n_qubits {
        if (state >> q) & 1 == 1 {
            c.push_x(q)?;
        }
    }
    Ok(c)
}

/// Uniform random parameter vector over a closed interval.
///
/// The interval slice follows the loose convention `[lo, hi]`; a single
/// value means `[0, value]`; empty is rejected.
pub fn random_initial_point(
    n_parameters: usize,
    interval: &[f64],
    rng: &mut impl Rng,
) -> Result<Vec<f64>> {
    let (lo, hi) = match interval {
        [] => {
            return Err(VqeError::Configuration(
                "initial-point interval must not be empty".into(),
            ))
        }
        [hi] => (0.0, *hi),
        [lo, hi, ..] => (*lo, *hi),
    };
    if !(lo <= hi) {
        return Err(VqeError::Configuration(format!(
            "initial-point interval [{lo}, {hi}] is inverted"
        )));
    }
    Ok((0..n_parameters)
        .map(|_| lo + (hi - lo) * rng.gen::<f64>())
        .collect())
}

/// Same-spin single and spin-conserving double excitations out of the
/// closed-shell reference.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExcitationList {
    /// (occupied, virtual), same spin.
    pub singles: Vec<(usize, usize)>,
    /// (occupied i < j, virtual a < b), spin multiset conserved.
    pub doubles: Vec<(usize, usize, usize, usize)>,
}

impl ExcitationList {
    pub fn len(&self) -> usize {
        self.singles.len() + self.doubles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.singles.is_empty() && self.doubles.is_empty()
    }
}

/// Enumerate excitations for the closed-shell reference determinant.
pub fn excitations(n_spin_orbitals: usize, n_particles: usize) -> Result<ExcitationList> {
    let occ = reference_occupation(n_spin_orbitals, n_particles)?;
    let virt: Vec<usize> = (0..n_spin_orbitals).filter(|m| !occ.contains(m)).collect();
    let spin = |m: usize| m / (n_spin_orbitals / 2);

    let mut singles = Vec::new();
    for &i in &occ {
        for &a in &virt {
            if spin(i) == spin(a) {
                singles.push((i, a));
            }
        }
    }
    let mut doubles = Vec::new();
    for (x, &i) in occ.iter().enumerate() {
        for &j in &occ[x + 1..] {
            for (y, &a) in virt.iter().enumerate() {
                for &b in &virt[y + 1..] {
                    let occ_spins = (spin(i).min(spin(j)), spin(i).max(spin(j)));
                    let virt_spins = (spin(a).min(spin(b)), spin(a).max(spin(b)));
                    if occ_spins == virt_spins {
                        doubles.push((i, j, a, b));
                    }
                }
            }
        }
    }
    Ok(ExcitationList { singles, doubles })
}
