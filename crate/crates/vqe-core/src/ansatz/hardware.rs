//! Hardware-efficient variational forms: alternating rotation layers and
//! full-connectivity entangling layers, `depth + 1` rotation layers in
//! total so the circuit ends on rotations.

use super::circuit::{Angle, Circuit, GateKind};
use crate::error::{Result, VqeError};

fn check_depth(depth: usize) -> Result<()> {
    if depth < 1 {
        return Err(VqeError::Configuration(format!(
            "variational form depth must be at least 1, got {depth}"
        )));
    }
    Ok(())
}

fn pair_entangler(c: &mut Circuit, kind: GateKind) -> Result<()> {
    for i in 0..c.n_qubits() {
        for j in (i + 1)..c.n_qubits() {
            match kind {
                GateKind::Cx => c.push_cx(i, j)?,
                GateKind::Cz => c.push_cz(i, j)?,
                _ => unreachable!("entangler kinds are CX and CZ"),
            }
        }
    }
    Ok(())
}

fn param(slot: &mut usize) -> Angle {
    let angle = Angle::Param {
        slot: *slot,
        scale: 1.0,
    };
    *slot += 1;
    angle
}

/// RY rotation layers with CX entanglement; (depth+1) * n parameters.
/// All gate matrices are real, so so are the produced amplitudes.
pub fn real_amplitudes(n_qubits: usize, depth: usize, initial: &Circuit) -> Result<Circuit> {
    check_depth(depth)?;
    let mut c = Circuit::new(n_qubits, (depth + 1) * n_qubits);
    c.append_prepared(initial)?;
    let mut slot = 0;
    for layer in 0..=depth {
        for q in 0..n_qubits {
            c.push_ry(q, param(&mut slot))?;
        }
        if layer < depth {
            pair_entangler(&mut c, GateKind::Cx)?;
        }
    }
    Ok(c)
}

/// RY+RZ rotation layers with CX entanglement; 2 * (depth+1) * n parameters.
pub fn efficient_su2(n_qubits: usize, depth: usize, initial: &Circuit) -> Result<Circuit> {
    check_depth(depth)?;
    let mut c = Circuit::new(n_qubits, 2 * (depth + 1) * n_qubits);
    c.append_prepared(initial)?;
    let mut slot = 0;
    for layer in 0..=depth {
        for q in 0..n_qubits {
            c.push_ry(q, param(&mut slot))?;
        }
        for q in 0..n_qubits {
            c.push_rz(q, param(&mut slot))?;
        }
        if layer < depth {
            pair_entangler(&mut c, GateKind::Cx)?;
        }
    }
    Ok(c)
}

/// RY+RZ rotation layers with CZ entanglement; 2 * (depth+1) * n parameters.
pub fn two_local_ry_rz_cz(n_qubits: usize, depth: usize, initial: &Circuit) -> Result<Circuit> {
    check_depth(depth)?;
    let mut c = Circuit::new(n_qubits, 2 * (depth + 1) * n_qubits);
    c.append_prepared(initial)?;
    let mut slot = 0;
    for layer in 0..=depth {
        for q in 0..n_qubits {
            c.push_ry(q, param(&mut slot))?;
        }
        for q in 0..n_qubits {
            c.push_rz(q, param(&mut slot))?;
        }
        if layer < depth {
            pair_entangler(&mut c, GateKind::Cz)?;
        }
    }
    Ok(c)
}

/// RZ rotation layers with parameterized pairwise XX+YY entanglers.
///
/// Every gate commutes with the total Z weight, so the circuit preserves
/// the Hamming-weight sector of its input. Parameters:
/// (depth+1) * n + depth * n * (n-1) / 2.
pub fn excitation_preserving(n_qubits: usize, depth: usize, initial: &Circuit) -> Result<Circuit> {
    check_depth(depth)?;
    let n_rotation = (depth + 1) * n_qubits;
    let n_entangle = depth * n_qubits * n_qubits.saturating_sub(1) / 2;
    let mut c = Circuit::new(n_qubits, n_rotation + n_entangle);
    c.append_prepared(initial)?;
    let mut slot = 0;
    for layer in 0..=depth {
        for q in 0..n_qubits {
            c.push_rz(q, param(&mut slot))?;
        }
        if layer < depth {
            for i in 0..n_qubits {
                for j in (i + 1)..n_qubits {
                    c.push_xx_plus_yy(i, j, param(&mut slot))?;
                }
            }
        }
    }
    Ok(c)
}
