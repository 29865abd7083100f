//! Coupled-cluster variational form with unitary single and double
//! excitations.
//!
//! Each excitation contributes one anti-Hermitian generator `g - adj(g)`
//! with one shared amplitude. Generators are mapped to Pauli sums (pure
//! imaginary coefficients), and every string is exponentiated in
//! first-order Trotter form: diagonalize the string with per-qubit basis
//! rotations, accumulate its parity along a CX staircase, rotate with RZ,
//! and uncompute. Repetitions reuse the same amplitudes.

use super::circuit::{Angle, Circuit};
use super::excitations;
use crate::error::{Result, VqeError};
use crate::mapping::{lowering_operator, raising_operator, two_qubit_reduction, MappingKind};
use crate::pauli::{PauliString, PauliSum};

/// Largest tolerated real leakage in a mapped generator coefficient.
const GENERATOR_REAL_TOL: f64 = 1e-10;

fn anti_hermitian_generator(
    n_modes: usize,
    mapping: MappingKind,
    creators: &[usize],
    annihilators: &[usize],
) -> Result<PauliSum> {
    let mut op = PauliSum::identity(n_modes, 1.0.into());
    for &a in creators {
        op = op.multiply(&raising_operator(n_modes, a, mapping)?)?;
    }
    for &i in annihilators {
        op = op.multiply(&lowering_operator(n_modes, i, mapping)?)?;
    }
    Ok(op.add(&op.adjoint().scaled((-1.0).into()))?.simplify(0.0))
}

/// Append exp(i * theta * coefficient * string) acting through slot `slot`.
fn append_string_exponential(
    c: &mut Circuit,
    string: &PauliString,
    coefficient: f64,
    slot: usize,
) -> Result<()> {
    let support: Vec<usize> = (0..string.n_qubits())
        .filter(|&q| (string.support() >> q) & 1 == 1)
        .collect();
    debug_assert!(!support.is_empty());
    for &q in &support {
        match string.letter(q).to_char() {
            'X' => c.push_h(q)?,
            'Y' => {
                c.push_sdg(q)?;
                c.push_h(q)?;
            }
            _ => {}
        }
    }
    for pair in support.windows(2) {
        c.push_cx(pair[0], pair[1])?;
    }
    let target = *support.last().expect("non-empty support");
    c.push_rz(
        target,
        Angle::Param {
            slot,
            scale: -2.0 * coefficient,
        },
    )?;
    for pair in support.windows(2).rev() {
        c.push_cx(pair[0], pair[1])?;
    }
    for &q in support.iter().rev() {
        match string.letter(q).to_char() {
            'X' => c.push_h(q)?,
            'Y' => {
                c.push_h(q)?;
                c.push_s(q)?;
            }
            _ => {}
        }
    }
    Ok(())
}

/// Unitary coupled-cluster circuit over the encoded register.
///
/// One parameter per excitation, shared across that excitation's Pauli
/// strings and across all `depth` repetitions. With every amplitude at
/// zero the circuit is the exact identity on the initial state.
pub fn uccsd(
    n_spin_orbitals: usize,
    n_particles: usize,
    mapping: MappingKind,
    reduced: bool,
    depth: usize,
    initial: &Circuit,
) -> Result<Circuit> {
    if depth < 1 {
        return Err(VqeError::Configuration(format!(
            "variational form depth must be at least 1, got {depth}"
        )));
    }
    if reduced && mapping != MappingKind::Parity {
        return Err(VqeError::Configuration(format!(
            "symmetry reduction requires the parity mapping, got {mapping}"
        )));
    }
    let ex = excitations(n_spin_orbitals, n_particles)?;
    if ex.is_empty() {
        return Err(VqeError::EmptyVariationalForm {
            particles: n_particles,
            orbitals: n_spin_orbitals,
        });
    }

    let mut generators: Vec<PauliSum> = Vec::with_capacity(ex.len());
    for &(i, a) in &ex.singles {
        generators.push(anti_hermitian_generator(n_spin_orbitals, mapping, &[a], &[i])?);
    }
    for &(i, j, a, b) in &ex.doubles {
        generators.push(anti_hermitian_generator(
            n_spin_orbitals,
            mapping,
            &[a, b],
            &[j, i],
        )?);
    }
    if reduced {
        for g in &mut generators {
            *g = two_qubit_reduction(g, n_particles)?;
        }
    }

    let n_qubits = if reduced {
        n_spin_orbitals - 2
    } else {
        n_spin_orbitals
    };
    let mut c = Circuit::new(n_qubits, generators.len());
    c.append_prepared(initial)?;
    for _rep in 0..depth {
        for (slot, g) in generators.iter().enumerate() {
            for term in g.terms() {
                if term.string.is_identity() {
                    // Pure global phase; energies are phase-invariant.
                    continue;
                }
                if term.coefficient.re.abs() > GENERATOR_REAL_TOL {
                    return Err(VqeError::Configuration(format!(
                        "excitation generator term {} has non-imaginary weight {}",
                        term.string, term.coefficient
                    )));
                }
                append_string_exponential(&mut c, &term.string, term.coefficient.im, slot)?;
            }
        }
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::super::{hartree_fock_circuit, zero_state};
    use super::*;
    use crate::ansatz::GateKind;

    #[test]
    fn two_electrons_in_four_orbitals_give_three_parameters() {
        for mapping in [
            MappingKind::JordanWigner,
            MappingKind::Parity,
            MappingKind::BravyiKitaev,
        ] {
            let c = uccsd(4, 2, mapping, false, 1, &zero_state(4)).unwrap();
            assert_eq!(c.n_parameters(), 3);
            assert!(c.references_all_parameters());
        }
        let r = uccsd(4, 2, MappingKind::Parity, true, 1, &zero_state(2)).unwrap();
        assert_eq!(r.n_parameters(), 3);
        assert_eq!(r.n_qubits(), 2);
        assert!(r.references_all_parameters());
    }

    #[test]
    fn repetitions_share_amplitudes_and_stack_gates() {
        let prep = hartree_fock_circuit(4, 2, MappingKind::Parity, false).unwrap();
        let once = uccsd(4, 2, MappingKind::Parity, false, 1, &prep).unwrap();
        let twice = uccsd(4, 2, MappingKind::Parity, false, 2, &prep).unwrap();
        assert_eq!(once.n_parameters(), twice.n_parameters());
        assert_eq!(twice.len() - prep.len(), 2 * (once.len() - prep.len()));
    }

    #[test]
    fn gate_alphabet_is_the_staircase_set() {
        let c = uccsd(4, 2, MappingKind::JordanWigner, false, 1, &zero_state(4)).unwrap();
        for g in c.gates() {
            assert!(
                matches!(
                    g.kind,
                    GateKind::H | GateKind::S | GateKind::Sdg | GateKind::Cx | GateKind::Rz
                ),
                "unexpected {:?}",
                g.kind
            );
        }
        // Every RZ angle references a slot with the -2 * coefficient scale.
        for g in c.gates() {
            if g.kind == GateKind::Rz {
                match g.angle {
                    Some(Angle::Param { scale, .. }) => assert!(scale != 0.0),
                    other => panic!("RZ angle {other:?}"),
                }
            }
        }
    }

    #[test]
    fn depth_zero_and_full_filling_are_rejected() {
        assert!(matches!(
            uccsd(4, 2, MappingKind::Parity, false, 0, &zero_state(4)),
            Err(VqeError::Configuration(_))
        ));
        assert!(matches!(
            uccsd(4, 4, MappingKind::Parity, false, 1, &zero_state(4)),
            Err(VqeError::EmptyVariationalForm { particles: 4, orbitals: 4 })
        ));
    }

    #[test]
    fn reduction_demands_parity_and_matching_width() {
        assert!(uccsd(4, 2, MappingKind::BravyiKitaev, true, 1, &zero_state(2)).is_err());
        // Initial circuit width must match the reduced register.
        assert!(matches!(
            uccsd(4, 2, MappingKind::Parity, true, 1, &zero_state(4)),
            Err(VqeError::QubitCountMismatch(4, 2))
        ));
    }
}
