//! Fermion-to-qubit encodings.
//!
//! Three encodings share one construction. Each assigns every mode `j`
//! three qubit index sets:
//!
//! - an update set `U(j)`: qubits whose stored value flips when the
//!   occupation of mode `j` flips,
//! - a parity set `P(j)`: qubits whose product of Z eigenvalues gives the
//!   occupation parity of the modes below `j`,
//! - a remainder set `R(j)`: the parity qubits not already flipped by the
//!   update action.
//!
//! With those sets the ladder operators are
//!
//! ```text
//! raise(j) = 1/2 X_{U(j)} (X_j Z_{P(j)} - i Y_j Z_{R(j)})
//! lower(j) = 1/2 X_{U(j)} (X_j Z_{P(j)} + i Y_j Z_{R(j)})
//! ```
//!
//! The occupation-number encoding stores each mode on its own qubit
//! (`U` empty, `P = R` = all lower modes). The parity encoding stores
//! cumulative sums (`U` = all higher qubits, `P` = the qubit below, `R`
//! empty). The binary-tree encoding stores partial sums over binary
//! indexed tree nodes, giving logarithmic-weight strings; its sets follow
//! the classic tree traversals (ancestors, prefix chain, children).

use crate::chem::SpinOrbitalIntegrals;
use crate::error::{Result, VqeError};
use crate::pauli::{PauliString, PauliSum, PauliTerm, COEFF_THRESHOLD};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Mapped operators are diagonalized densely downstream, so the mode
/// count shares the dense-matrix cap.
pub const MAX_FERMION_MODES: usize = crate::pauli::MAX_DENSE_QUBITS;

/// Fermion-to-qubit encoding choice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MappingKind {
    JordanWigner,
    Parity,
    BravyiKitaev,
}

impl MappingKind {
    pub fn as_str(self) -> &'static str {
        match self {
            MappingKind::JordanWigner => "jordan-wigner",
            MappingKind::Parity => "parity",
            MappingKind::BravyiKitaev => "bravyi-kitaev",
        }
    }
}

impl fmt::Display for MappingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MappingKind {
    type Err = VqeError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "jordan-wigner" | "jw" => Ok(MappingKind::JordanWigner),
            "parity" => Ok(MappingKind::Parity),
            "bravyi-kitaev" | "bk" => Ok(MappingKind::BravyiKitaev),
            other => Err(VqeError::Configuration(format!(
                "unknown mapping '{other}' (expected jordan-wigner, parity, or bravyi-kitaev)"
            ))),
        }
    }
}

fn low_bit(i: usize) -> usize {
    i & i.wrapping_neg()
}

/// Ancestor chain of node `j+1` in a binary indexed tree over `n` nodes.
fn bk_update_mask(n_modes: usize, mode: usize) -> u64 {
    let mut mask = 0u64;
    let mut i = mode + 1;
    loop {
        i += low_bit(i);
        if i > n_modes {
            return mask;
        }
        mask |= 1 << (i - 1);
    }
}

/// Prefix-sum chain covering modes `0..mode`.
fn bk_parity_mask(mode: usize) -> u64 {
    let mut mask = 0u64;
    let mut i = mode;
    while i > 0 {
        mask |= 1 << (i - 1);
        i -= low_bit(i);
    }
    mask
}

/// Children of node `mode+1`: the qubits summed into this one.
fn bk_flip_mask(mode: usize) -> u64 {
    let i = mode + 1;
    let mut mask = 0u64;
    for k in 0..i.trailing_zeros() {
        mask |= 1 << (i - (1usize << k) - 1);
    }
    mask
}

pub(crate) fn update_mask(mapping: MappingKind, n_modes: usize, mode: usize) -> u64 {
    match mapping {
        MappingKind::JordanWigner => 0,
        MappingKind::Parity => (((1u64 << n_modes) - 1) >> (mode + 1)) << (mode + 1),
        MappingKind::BravyiKitaev => bk_update_mask(n_modes, mode),
    }
}

pub(crate) fn parity_mask(mapping: MappingKind, mode: usize) -> u64 {
    match mapping {
        MappingKind::JordanWigner => (1u64 << mode) - 1,
        MappingKind::Parity => {
            if mode == 0 {
                0
            } else {
                1 << (mode - 1)
            }
        }
        MappingKind::BravyiKitaev => bk_parity_mask(mode),
    }
}

pub(crate) fn remainder_mask(mapping: MappingKind, mode: usize) -> u64 {
    match mapping {
        MappingKind::JordanWigner => parity_mask(mapping, mode),
        MappingKind::Parity => 0,
        MappingKind::BravyiKitaev => bk_parity_mask(mode) & !bk_flip_mask(mode),
    }
}

fn check_mode(n_modes: usize, mode: usize) -> Result<()> {
    if n_modes > MAX_FERMION_MODES {
        return Err(VqeError::ResourceCap(n_modes, MAX_FERMION_MODES));
    }
    if mode >= n_modes {
        return Err(VqeError::ModeOutOfRange { mode, n_modes });
    }
    Ok(())
}

/// `sign` picks the adjoint: -1 raises, +1 lowers.
fn ladder_operator(n_modes: usize, mode: usize, mapping: MappingKind, sign: f64) -> Result<PauliSum> {
    check_mode(n_modes, mode)?;
    let jbit = 1u64 << mode;
    let update = update_mask(mapping, n_modes, mode);
    let flip_part = PauliString::from_masks(n_modes, update | jbit, parity_mask(mapping, mode))?;
    let phase_part = PauliString::from_masks(
        n_modes,
        update | jbit,
        remainder_mask(mapping, mode) | jbit,
    )?;
    PauliSum::from_terms(
        n_modes,
        vec![
            PauliTerm::new(Complex64::new(0.5, 0.0), flip_part),
            PauliTerm::new(Complex64::new(0.0, 0.5 * sign), phase_part),
        ],
    )
}

/// Creation operator for one mode under the chosen encoding.
pub fn raising_operator(n_modes: usize, mode: usize, mapping: MappingKind) -> Result<PauliSum> {
    ladder_operator(n_modes, mode, mapping, -1.0)
}

/// Annihilation operator for one mode under the chosen encoding.
pub fn lowering_operator(n_modes: usize, mode: usize, mapping: MappingKind) -> Result<PauliSum> {
    ladder_operator(n_modes, mode, mapping, 1.0)
}

/// Computational basis state encoding the given occupied modes.
///
/// Bit `q` of the result is the parity of the occupied modes inside
/// qubit `q`'s stored set.
pub fn encode_occupation(n_modes: usize, occupied: &[usize], mapping: MappingKind) -> Result<u64> {
    if n_modes > MAX_FERMION_MODES {
        return Err(VqeError::ResourceCap(n_modes, MAX_FERMION_MODES));
    }
    let mut occ = 0u64;
    for &mode in occupied {
        if mode >= n_modes {
            return Err(VqeError::ModeOutOfRange { mode, n_modes });
        }
        if occ & (1 << mode) != 0 {
            return Err(VqeError::Configuration(format!(
                "mode {mode} listed as occupied twice"
            )));
        }
        occ |= 1 << mode;
    }
    let mut state = 0u64;
    for q in 0..n_modes {
        let stored = match mapping {
            MappingKind::JordanWigner => 1u64 << q,
            MappingKind::Parity => (1u64 << (q + 1)) - 1,
            MappingKind::BravyiKitaev => {
                // Stored range [q+1 - 2^v(q+1), q] in mode indices.
                let i = q + 1;
                let low = i - low_bit(i);
                ((1u64 << i) - 1) & !((1u64 << low) - 1)
            }
        };
        if (occ & stored).count_ones() % 2 == 1 {
            state |= 1 << q;
        }
    }
    Ok(state)
}

/// Second-quantized operator with real coefficients: a one-body tensor
/// `t[p][q]` multiplying `raise(p) lower(q)` and a two-body tensor
/// `v[p][q][r][s]` multiplying `1/2 raise(p) raise(q) lower(s) lower(r)`.
#[derive(Clone, Debug)]
pub struct FermionicOperator {
    n_modes: usize,
    one_body: Vec<f64>,
    two_body: Vec<f64>,
}

impl FermionicOperator {
    pub fn new(n_modes: usize) -> Result<Self> {
        if n_modes > MAX_FERMION_MODES {
            return Err(VqeError::ResourceCap(n_modes, MAX_FERMION_MODES));
        }
        Ok(FermionicOperator {
            n_modes,
            one_body: vec![0.0; n_modes * n_modes],
            two_body: vec![0.0; n_modes * n_modes * n_modes * n_modes],
        })
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    fn idx2(&self, p: usize, q: usize) -> usize {
        p * self.n_modes + q
    }

    fn idx4(&self, p: usize, q: usize, r: usize, s: usize) -> usize {
        ((p * self.n_modes + q) * self.n_modes + r) * self.n_modes + s
    }

    pub fn one_body(&self, p: usize, q: usize) -> f64 {
        self.one_body[self.idx2(p, q)]
    }

    pub fn two_body(&self, p: usize, q: usize, r: usize, s: usize) -> f64 {
        self.two_body[self.idx4(p, q, r, s)]
    }

    pub fn set_one_body(&mut self, p: usize, q: usize, value: f64) -> Result<()> {
        check_mode(self.n_modes, p)?;
        check_mode(self.n_modes, q)?;
        let i = self.idx2(p, q);
        self.one_body[i] = value;
        Ok(())
    }

    pub fn set_two_body(&mut self, p: usize, q: usize, r: usize, s: usize, value: f64) -> Result<()> {
        check_mode(self.n_modes, p)?;
        check_mode(self.n_modes, q)?;
        check_mode(self.n_modes, r)?;
        check_mode(self.n_modes, s)?;
        let i = self.idx4(p, q, r, s);
        self.two_body[i] = value;
        Ok(())
    }

    /// Electronic part of a molecular Hamiltonian. The nuclear repulsion
    /// stays outside as a classical shift.
    pub fn from_spin_orbital_integrals(ints: &SpinOrbitalIntegrals) -> Result<Self> {
        ints.validate()?;
        let n = ints.n_spin_orbitals;
        let mut op = FermionicOperator::new(n)?;
        for p in 0..n {
            for q in 0..n {
                op.set_one_body(p, q, ints.h1[p][q])?;
                for r in 0..n {
                    for s in 0..n {
                        op.set_two_body(p, q, r, s, ints.h2[p][q][r][s])?;
                    }
                }
            }
        }
        Ok(op)
    }
}

/// Map a fermionic operator to a qubit operator under the chosen encoding.
pub fn map_fermionic(op: &FermionicOperator, mapping: MappingKind) -> Result<PauliSum> {
    let n = op.n_modes;
    let raise: Vec<PauliSum> = (0..n)
        .map(|j| raising_operator(n, j, mapping))
        .collect::<Result<_>>()?;
    let lower: Vec<PauliSum> = (0..n)
        .map(|j| lowering_operator(n, j, mapping))
        .collect::<Result<_>>()?;

    let mut terms: Vec<PauliTerm> = Vec::new();
    for p in 0..n {
        for q in 0..n {
            let c = op.one_body(p, q);
            if c == 0.0 {
                continue;
            }
            let prod = raise[p].multiply(&lower[q])?;
            terms.extend(prod.scaled(Complex64::new(c, 0.0)).terms().iter().cloned());
        }
    }
    for p in 0..n {
        for q in 0..n {
            let pq = raise[p].multiply(&raise[q])?;
            for r in 0..n {
                for s in 0..n {
                    let c = op.two_body(p, q, r, s);
                    if c == 0.0 {
                        continue;
                    }
                    let sr = lower[s].multiply(&lower[r])?;
                    let prod = pq.multiply(&sr)?;
                    terms.extend(
                        prod.scaled(Complex64::new(0.5 * c, 0.0)).terms().iter().cloned(),
                    );
                }
            }
        }
    }
    Ok(PauliSum::from_terms(n, terms)?.simplify(COEFF_THRESHOLD))
}

/// Total particle-number operator under the chosen encoding.
pub fn number_operator(n_modes: usize, mapping: MappingKind) -> Result<PauliSum> {
    let mut terms: Vec<PauliTerm> = Vec::new();
    for j in 0..n_modes {
        let nj = raising_operator(n_modes, j, mapping)?
            .multiply(&lowering_operator(n_modes, j, mapping)?)?;
        terms.extend(nj.terms().iter().cloned());
    }
    Ok(PauliSum::from_terms(n_modes, terms)?.simplify(0.0))
}

/// Drop the two parity-symmetry qubits of a parity-encoded operator.
///
/// With the spin-up modes stored first, qubit `n/2 - 1` carries the
/// spin-up occupation parity and qubit `n - 1` the total parity. Both are
/// conserved, so on a fixed-particle-number sector each Z collapses to
/// its eigenvalue and the qubits can be removed. Requires every term to
/// act as I or Z on the two symmetry qubits, and an equal spin split of
/// `n_particles`.
pub fn two_qubit_reduction(h: &PauliSum, n_particles: usize) -> Result<PauliSum> {
    let n = h.n_qubits();
    if n < 4 || n % 2 != 0 {
        return Err(VqeError::Configuration(format!(
            "tapering needs an even register of at least 4 qubits, got {n}"
        )));
    }
    if n_particles % 2 != 0 {
        return Err(VqeError::Configuration(format!(
            "tapering assumes an equal spin split, got {n_particles} particles"
        )));
    }
    let q_up = n / 2 - 1;
    let q_total = n - 1;
    let n_up = n_particles / 2;
    let sign_up = if n_up % 2 == 0 { 1.0 } else { -1.0 };
    // Total parity is even for an even particle count.
    let sign_total = 1.0;

    let mut terms: Vec<PauliTerm> = Vec::with_capacity(h.len());
    for t in h.terms() {
        let mut coefficient = t.coefficient;
        let mut new_x = 0u64;
        let mut new_z = 0u64;
        let mut new_q = 0u64;
        for q in 0..n {
            let xb = (t.string.x_mask() >> q) & 1;
            let zb = (t.string.z_mask() >> q) & 1;
            if q == q_up || q == q_total {
                if xb != 0 {
                    return Err(VqeError::ReductionSymmetry {
                        qubit: q,
                        letter: t.string.letter(q).to_char(),
                    });
                }
                if zb != 0 {
                    coefficient *= if q == q_up { sign_up } else { sign_total };
                }
            } else {
                new_x |= xb << new_q;
                new_z |= zb << new_q;
                new_q += 1;
            }
        }
        terms.push(PauliTerm::new(
            coefficient,
            PauliString::from_masks(n - 2, new_x, new_z)?,
        ));
    }
    Ok(PauliSum::from_terms(n - 2, terms)?.simplify(COEFF_THRESHOLD))
}

/// Qubit-space molecular Hamiltonian with its classical bookkeeping.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "QubitHamiltonianRepr", into = "QubitHamiltonianRepr")]
pub struct QubitHamiltonian {
    pub pauli_sum: PauliSum,
    pub n_qubits: usize,
    pub n_particles: usize,
    /// Constant energy offset (nuclear repulsion) added back after
    /// measuring the qubit operator.
    pub shift: f64,
    pub mapping: MappingKind,
    pub reduced: bool,
}

#[derive(Serialize, Deserialize)]
struct QubitHamiltonianRepr {
    n_qubits: usize,
    n_particles: usize,
    shift: f64,
    mapping: MappingKind,
    reduced: bool,
    /// One term per entry, `"{re} {im} {letters}"`.
    terms: Vec<String>,
}

impl From<QubitHamiltonian> for QubitHamiltonianRepr {
    fn from(h: QubitHamiltonian) -> Self {
        QubitHamiltonianRepr {
            n_qubits: h.n_qubits,
            n_particles: h.n_particles,
            shift: h.shift,
            mapping: h.mapping,
            reduced: h.reduced,
            terms: h.pauli_sum.to_text().lines().map(String::from).collect(),
        }
    }
}

impl TryFrom<QubitHamiltonianRepr> for QubitHamiltonian {
    type Error = VqeError;

    fn try_from(r: QubitHamiltonianRepr) -> Result<Self> {
        let pauli_sum = if r.terms.is_empty() {
            PauliSum::zero(r.n_qubits)
        } else {
            PauliSum::from_text(&r.terms.join("\n"))?
        };
        if pauli_sum.n_qubits() != r.n_qubits {
            return Err(VqeError::Configuration(format!(
                "terms act on {} qubits but the header says {}",
                pauli_sum.n_qubits(),
                r.n_qubits
            )));
        }
        Ok(QubitHamiltonian {
            pauli_sum,
            n_qubits: r.n_qubits,
            n_particles: r.n_particles,
            shift: r.shift,
            mapping: r.mapping,
            reduced: r.reduced,
        })
    }
}

/// Encode molecular integrals as a qubit Hamiltonian.
///
/// `reduce` applies the two-qubit parity tapering and is only valid with
/// the parity encoding.
pub fn qubit_hamiltonian(
    ints: &SpinOrbitalIntegrals,
    mapping: MappingKind,
    reduce: bool,
) -> Result<QubitHamiltonian> {
    if reduce && mapping != MappingKind::Parity {
        return Err(VqeError::Configuration(format!(
            "two-qubit reduction requires the parity mapping, got {mapping}"
        )));
    }
    let op = FermionicOperator::from_spin_orbital_integrals(ints)?;
    let mapped = map_fermionic(&op, mapping)?;
    let pauli_sum = if reduce {
        two_qubit_reduction(&mapped, ints.n_particles)?
    } else {
        mapped
    };
    if !pauli_sum.is_hermitian(1e-8) {
        return Err(VqeError::NotHermitian(1e-8));
    }
    Ok(QubitHamiltonian {
        n_qubits: pauli_sum.n_qubits(),
        n_particles: ints.n_particles,
        shift: ints.nuclear_repulsion,
        mapping,
        reduced: reduce,
        pauli_sum,
    })
}
