//! Dense statevector simulation and the two expectation estimators:
//! exact term-by-term evaluation, and shot-sampled averaging where each
//! Pauli term is rotated to the computational basis, measured with fresh
//! shots, and combined with its coefficient.

use crate::ansatz::{Circuit, Gate, GateKind};
use crate::error::{Result, VqeError};
use crate::par;
use crate::pauli::{PauliString, PauliSum};
use crate::rng::{derive_seed, rng_from_seed};
use num_complex::Complex64;
use rand::Rng;
use std::collections::BTreeMap;

/// Amplitude vectors are dense; 2^20 complex entries (16 MiB) is the
/// allocation guard.
pub const MAX_STATE_QUBITS: usize = 20;

const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// Dense amplitude vector. Bit `q` of a basis index is qubit `q`
/// (qubit 0 least significant).
#[derive(Clone, Debug)]
pub struct StateVector {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    pub fn zero_state(n_qubits: usize) -> Result<StateVector> {
        StateVector::from_basis_state(n_qubits, 0)
    }

    pub fn from_basis_state(n_qubits: usize, index: u64) -> Result<StateVector> {
        if n_qubits > MAX_STATE_QUBITS {
            return Err(VqeError::ResourceCap(n_qubits, MAX_STATE_QUBITS));
        }
        let dim = 1usize << n_qubits;
        if index as usize >= dim {
            return Err(VqeError::Configuration(format!(
                "basis index {index} outside a {n_qubits}-qubit register"
            )));
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[index as usize] = Complex64::new(1.0, 0.0);
        Ok(StateVector {
            n_qubits,
            amplitudes,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Apply a 2x2 unitary to the amplitude pairs split by qubit `q`.
    fn apply_1q(&mut self, q: usize, m: [[Complex64; 2]; 2]) {
        let bit = 1usize << q;
        let low = bit - 1;
        for i in 0..self.amplitudes.len() / 2 {
            let i0 = ((i & !low) << 1) | (i & low);
            let i1 = i0 | bit;
            let a0 = self.amplitudes[i0];
            let a1 = self.amplitudes[i1];
            self.amplitudes[i0] = m[0][0] * a0 + m[0][1] * a1;
            self.amplitudes[i1] = m[1][0] * a0 + m[1][1] * a1;
        }
    }

    fn apply_h(&mut self, q: usize) {
        let c = Complex64::new(FRAC_1_SQRT_2, 0.0);
        self.apply_1q(q, [[c, c], [c, -c]]);
    }

    fn apply_phase(&mut self, q: usize, phase: Complex64) {
        let bit = 1usize << q;
        for (i, a) in self.amplitudes.iter_mut().enumerate() {
            if i & bit != 0 {
                *a *= phase;
            }
        }
    }
}

fn rotation_matrix(kind: GateKind, theta: f64) -> [[Complex64; 2]; 2] {
    let c = Complex64::new((theta / 2.0).cos(), 0.0);
    match kind {
        GateKind::Rx => {
            let ms = Complex64::new(0.0, -(theta / 2.0).sin());
            [[c, ms], [ms, c]]
        }
        GateKind::Ry => {
            let s = Complex64::new((theta / 2.0).sin(), 0.0);
            [[c, -s], [s, c]]
        }
        _ => unreachable!("only RX/RY build dense rotation blocks"),
    }
}

fn apply_gate(state: &mut StateVector, gate: &Gate, bindings: &[f64]) {
    let theta = gate.angle.as_ref().map(|a| a.resolve(bindings));
    match gate.kind {
        GateKind::X => {
            let zero = Complex64::new(0.0, 0.0);
            let one = Complex64::new(1.0, 0.0);
            state.apply_1q(gate.qubit, [[zero, one], [one, zero]]);
        }
        GateKind::H => state.apply_h(gate.qubit),
        GateKind::S => state.apply_phase(gate.qubit, Complex64::new(0.0, 1.0)),
        GateKind::Sdg => state.apply_phase(gate.qubit, Complex64::new(0.0, -1.0)),
        GateKind::Rx | GateKind::Ry => {
            let m = rotation_matrix(gate.kind, theta.expect("rotation angle present"));
            state.apply_1q(gate.qubit, m);
        }
        GateKind::Rz => {
            let t = theta.expect("rotation angle present");
            let bit = 1usize << gate.qubit;
            let minus = Complex64::from_polar(1.0, -t / 2.0);
            let plus = Complex64::from_polar(1.0, t / 2.0);
            for (i, a) in state.amplitudes.iter_mut().enumerate() {
                *a *= if i & bit == 0 { minus } else { plus };
            }
        }
        GateKind::Cx => {
            let cbit = 1usize << gate.qubit;
            let tbit = 1usize << gate.qubit2.expect("two-qubit gate");
            for i in 0..state.amplitudes.len() {
                if i & cbit != 0 && i & tbit == 0 {
                    state.amplitudes.swap(i, i | tbit);
                }
            }
        }
        GateKind::Cz => {
            let abit = 1usize << gate.qubit;
            let bbit = 1usize << gate.qubit2.expect("two-qubit gate");
            for (i, a) in state.amplitudes.iter_mut().enumerate() {
                if i & abit != 0 && i & bbit != 0 {
                    *a = -*a;
                }
            }
        }
        GateKind::XxPlusYy => {
            // exp(-i theta (XX+YY)/2): a rotation inside the odd-parity
            // pair {|01>, |10>}; the even-parity states are untouched.
            let t = theta.expect("rotation angle present");
            let c = Complex64::new(t.cos(), 0.0);
            let ms = Complex64::new(0.0, -t.sin());
            let abit = 1usize << gate.qubit;
            let bbit = 1usize << gate.qubit2.expect("two-qubit gate");
            for i in 0..state.amplitudes.len() {
                if i & abit != 0 && i & bbit == 0 {
                    let j = (i & !abit) | bbit;
                    let ai = state.amplitudes[i];
                    let aj = state.amplitudes[j];
                    state.amplitudes[i] = c * ai + ms * aj;
                    state.amplitudes[j] = ms * ai + c * aj;
                }
            }
        }
    }
}

/// Run a circuit from |0...0> with the given parameter bindings.
pub fn simulate(circuit: &Circuit, bindings: &[f64]) -> Result<StateVector> {
    if bindings.len() != circuit.n_parameters() {
        return Err(VqeError::BindingLength {
            expected: circuit.n_parameters(),
            got: bindings.len(),
        });
    }
    let mut state = StateVector::zero_state(circuit.n_qubits())?;
    for gate in circuit.gates() {
        apply_gate(&mut state, gate, bindings);
    }
    Ok(state)
}

/// Energy estimate with its statistical uncertainty.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExpectationEstimate {
    pub value: f64,
    pub stddev: f64,
    /// Total measurement shots behind the estimate; 0 for exact.
    pub shots_used: u64,
}

/// Re<psi|H|psi> evaluated term by term; never materializes the dense
/// matrix.
pub fn expectation_exact(state: &StateVector, h: &PauliSum) -> Result<ExpectationEstimate> {
    if state.n_qubits != h.n_qubits() {
        return Err(VqeError::QubitCountMismatch(h.n_qubits(), state.n_qubits));
    }
    let mut total = Complex64::new(0.0, 0.0);
    for term in h.terms() {
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, amp) in state.amplitudes.iter().enumerate() {
            let (row, phase) = term.string.basis_action(k as u64);
            acc += state.amplitudes[row as usize].conj() * phase * amp;
        }
        total += term.coefficient * acc;
    }
    Ok(ExpectationEstimate {
        value: total.re,
        stddev: 0.0,
        shots_used: 0,
    })
}

fn cumulative_probabilities(state: &StateVector) -> Vec<f64> {
    let mut cdf = Vec::with_capacity(state.amplitudes.len());
    let mut acc = 0.0;
    for a in &state.amplitudes {
        acc += a.norm_sqr();
        cdf.push(acc);
    }
    cdf
}

fn draw_index(cdf: &[f64], r: f64) -> usize {
    cdf.partition_point(|&c| c <= r).min(cdf.len() - 1)
}

/// Measure every qubit `shots` times; keys are bitstrings with qubit 0
/// rightmost.
pub fn sample_counts(
    state: &StateVector,
    shots: u64,
    seed: u64,
) -> Result<BTreeMap<String, u64>> {
    if shots == 0 {
        return Err(VqeError::ZeroShots);
    }
    let cdf = cumulative_probabilities(state);
    let mut rng = rng_from_seed(seed);
    let mut counts: BTreeMap<String, u64> = BTreeMap::new();
    for _ in 0..shots {
        let idx = draw_index(&cdf, rng.gen::<f64>());
        let key = format!("{:0width$b}", idx, width = state.n_qubits.max(1));
        *counts.entry(key).or_insert(0) += 1;
    }
    Ok(counts)
}

/// Mean and population variance of the +-1 parity outcomes for one
/// basis-rotated term.
fn sampled_term_moments(
    base: &StateVector,
    string: &PauliString,
    shots: u64,
    seed: u64,
) -> (f64, f64) {
    let mut state = base.clone();
    for q in 0..string.n_qubits() {
        match string.letter(q).to_char() {
            'X' => state.apply_h(q),
            'Y' => {
                state.apply_phase(q, Complex64::new(0.0, -1.0));
                state.apply_h(q);
            }
            _ => {}
        }
    }
    let cdf = cumulative_probabilities(&state);
    let support = string.support() as usize;
    let mut rng = rng_from_seed(seed);
    let mut sum = 0i64;
    for _ in 0..shots {
        let idx = draw_index(&cdf, rng.gen::<f64>());
        sum += if (idx & support).count_ones() % 2 == 0 {
            1
        } else {
            -1
        };
    }
    let mean = sum as f64 / shots as f64;
    let variance = (1.0 - mean * mean).max(0.0);
    (mean, variance)
}

/// Hamiltonian averaging: per-term basis rotation, fresh shots per term,
/// coefficient-weighted combination. The identity component enters
/// exactly.
pub fn expectation_sampled(
    circuit: &Circuit,
    bindings: &[f64],
    h: &PauliSum,
    shots: u64,
    seed: u64,
) -> Result<ExpectationEstimate> {
    if shots == 0 {
        return Err(VqeError::ZeroShots);
    }
    if h.n_qubits() != circuit.n_qubits() {
        return Err(VqeError::QubitCountMismatch(h.n_qubits(), circuit.n_qubits()));
    }
    if !h.is_hermitian(1e-8) {
        return Err(VqeError::NotHermitian(1e-8));
    }
    let merged = h.simplify(0.0);
    let base = simulate(circuit, bindings)?;

    let mut value = 0.0;
    let mut sampled: Vec<(f64, &PauliString)> = Vec::new();
    for term in merged.terms() {
        if term.string.is_identity() {
            value += term.coefficient.re;
        } else {
            sampled.push((term.coefficient.re, &term.string));
        }
    }

    let moments = par::map_range(sampled.len(), |t| {
        let (_, string) = sampled[t];
        sampled_term_moments(&base, string, shots, derive_seed(seed, "term", t as u64))
    });
    let mut variance_acc = 0.0;
    for (t, (mean, variance)) in moments.iter().enumerate() {
        let (coeff, _) = sampled[t];
        value += coeff * mean;
        variance_acc += coeff * coeff * variance / shots as f64;
    }
    Ok(ExpectationEstimate {
        value,
        stddev: variance_acc.sqrt(),
        shots_used: shots * sampled.len() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ansatz::{Angle, Circuit};
    use crate::pauli::PauliTerm;
    use rand::Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn x_on_qubit_zero_flips_the_low_bit() {
        let mut circ = Circuit::new(2, 0);
        circ.push_x(0).unwrap();
        let s = simulate(&circ, &[]).unwrap();
        let a = s.amplitudes();
        assert!((a[1] - c(1.0, 0.0)).norm() < 1e-15);
        assert!(a[0].norm() + a[2].norm() + a[3].norm() < 1e-15);
    }

    #[test]
    fn hadamard_builds_the_even_superposition() {
        let mut circ = Circuit::new(1, 0);
        circ.push_h(0).unwrap();
        let s = simulate(&circ, &[]).unwrap();
        assert!((s.amplitudes()[0].re - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((s.amplitudes()[1].re - FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn binding_length_is_checked() {
        let mut circ = Circuit::new(1, 2);
        circ.push_ry(0, Angle::Param { slot: 0, scale: 1.0 }).unwrap();
        circ.push_rz(0, Angle::Param { slot: 1, scale: 1.0 }).unwrap();
        assert!(matches!(
            simulate(&circ, &[0.1]),
            Err(VqeError::BindingLength { expected: 2, got: 1 })
        ));
    }

    /// Independent dense-matrix oracle: embed each gate as a full 2^n
    /// unitary and multiply onto the basis vector.
    fn dense_oracle(circ: &Circuit, bindings: &[f64]) -> Vec<Complex64> {
        let n = circ.n_qubits();
        let dim = 1usize << n;
        let mut psi = vec![c(0.0, 0.0); dim];
        psi[0] = c(1.0, 0.0);
        for g in circ.gates() {
            let theta = g.angle.as_ref().map(|a| a.resolve(bindings));
            let mut next = vec![c(0.0, 0.0); dim];
            match g.kind {
                GateKind::Cx | GateKind::Cz | GateKind::XxPlusYy => {
                    let (qa, qb) = (g.qubit, g.qubit2.unwrap());
                    // 4x4 block on (bit_a, bit_b) sub-index 2*b_a + b_b.
                    let m: [[Complex64; 4]; 4] = match g.kind {
                        GateKind::Cx => {
                            let mut m = [[c(0.0, 0.0); 4]; 4];
                            // control = qa: |00>->|00>, |01>->|01>, |10>->|11>, |11>->|10>
                            m[0][0] = c(1.0, 0.0);
                            m[1][1] = c(1.0, 0.0);
                            m[3][2] = c(1.0, 0.0);
                            m[2][3] = c(1.0, 0.0);
                            m
                        }
                        GateKind::Cz => {
                            let mut m = [[c(0.0, 0.0); 4]; 4];
                            m[0][0] = c(1.0, 0.0);
                            m[1][1] = c(1.0, 0.0);
                            m[2][2] = c(1.0, 0.0);
                            m[3][3] = c(-1.0, 0.0);
                            m
                        }
                        _ => {
                            let t = theta.unwrap();
                            let co = c(t.cos(), 0.0);
                            let ms = c(0.0, -t.sin());
                            let mut m = [[c(0.0, 0.0); 4]; 4];
                            m[0][0] = c(1.0, 0.0);
                            m[3][3] = c(1.0, 0.0);
                            m[1][1] = co;
                            m[2][2] = co;
                            m[1][2] = ms;
                            m[2][1] = ms;
                            m
                        }
                    };
                    for (i, amp) in psi.iter().enumerate() {
                        if amp.norm_sqr() == 0.0 {
                            continue;
                        }
                        let sub_i = (((i >> qa) & 1) << 1) | ((i >> qb) & 1);
                        for sub_j in 0..4 {
                            let mut j = i & !(1 << qa) & !(1 << qb);
                            if sub_j & 0b10 != 0 {
                                j |= 1 << qa;
                            }
                            if sub_j & 0b01 != 0 {
                                j |= 1 << qb;
                            }
                            next[j] += m[sub_j][sub_i] * amp;
                        }
                    }
                }
                _ => {
                    let m: [[Complex64; 2]; 2] = match g.kind {
                        GateKind::X => [[c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]],
                        GateKind::H => [
                            [c(FRAC_1_SQRT_2, 0.0), c(FRAC_1_SQRT_2, 0.0)],
                            [c(FRAC_1_SQRT_2, 0.0), c(-FRAC_1_SQRT_2, 0.0)],
                        ],
                        GateKind::S => [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(0.0, 1.0)]],
                        GateKind::Sdg => {
                            [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(0.0, -1.0)]]
                        }
                        GateKind::Rx => {
                            let t = theta.unwrap();
                            [
                                [c((t / 2.0).cos(), 0.0), c(0.0, -(t / 2.0).sin())],
                                [c(0.0, -(t / 2.0).sin()), c((t / 2.0).cos(), 0.0)],
                            ]
                        }
                        GateKind::Ry => {
                            let t = theta.unwrap();
                            [
                                [c((t / 2.0).cos(), 0.0), c(-(t / 2.0).sin(), 0.0)],
                                [c((t / 2.0).sin(), 0.0), c((t / 2.0).cos(), 0.0)],
                            ]
                        }
                        GateKind::Rz => {
                            let t = theta.unwrap();
                            [
                                [Complex64::from_polar(1.0, -t / 2.0), c(0.0, 0.0)],
                                [c(0.0, 0.0), Complex64::from_polar(1.0, t / 2.0)],
                            ]
                        }
                        _ => unreachable!(),
                    };
                    let q = g.qubit;
                    for (i, amp) in psi.iter().enumerate() {
                        if amp.norm_sqr() == 0.0 {
                            continue;
                        }
                        let sub_i = (i >> q) & 1;
                        for sub_j in 0..2 {
                            let j = (i & !(1 << q)) | (sub_j << q);
                            next[j] += m[sub_j][sub_i] * amp;
                        }
                    }
                }
            }
            psi = next;
        }
        psi
    }

    fn random_circuit(n: usize, n_gates: usize, rng: &mut impl Rng) -> (Circuit, Vec<f64>) {
        let n_params = 3;
        let mut circ = Circuit::new(n, n_params);
        for _ in 0..n_gates {
            let q = rng.gen_range(0..n);
            let q2 = loop {
                let x = rng.gen_range(0..n);
                if x != q {
                    break x;
                }
            };
            let angle = if rng.gen_bool(0.5) {
                Angle::Fixed(rng.gen_range(-3.0..3.0))
            } else {
                Angle::Param {
                    slot: rng.gen_range(0..n_params),
                    scale: rng.gen_range(-2.0..2.0),
                }
            };
            match rng.gen_range(0..10) {
                0 => circ.push_x(q).unwrap(),
                1 => circ.push_h(q).unwrap(),
                2 => circ.push_s(q).unwrap(),
                3 => circ.push_sdg(q).unwrap(),
                4 => circ.push_rx(q, angle).unwrap(),
                5 => circ.push_ry(q, angle).unwrap(),
                6 => circ.push_rz(q, angle).unwrap(),
                7 => circ.push_cx(q, q2).unwrap(),
                8 => circ.push_cz(q, q2).unwrap(),
                _ => circ.push_xx_plus_yy(q, q2, angle).unwrap(),
            }
        }
        let bindings: Vec<f64> = (0..n_params).map(|_| rng.gen_range(-2.0..2.0)).collect();
        (circ, bindings)
    }

    #[test]
    fn random_circuits_match_the_dense_matrix_oracle() {
        let mut rng = crate::rng::rng_from_seed(101);
        for _ in 0..40 {
            let n = rng.gen_range(2..=3);
            let (circ, bindings) = random_circuit(n, 12, &mut rng);
            let fast = simulate(&circ, &bindings).unwrap();
            let slow = dense_oracle(&circ, &bindings);
            for (a, b) in fast.amplitudes().iter().zip(&slow) {
                assert!((a - b).norm() < 1e-12, "\n{}", circ.dump());
            }
        }
    }

    #[test]
    fn every_gate_preserves_the_norm() {
        let mut rng = crate::rng::rng_from_seed(103);
        for _ in 0..20 {
            let (circ, bindings) = random_circuit(3, 25, &mut rng);
            let mut state = StateVector::zero_state(3).unwrap();
            for gate in circ.gates() {
                apply_gate(&mut state, gate, &bindings);
                assert!((state.norm() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn exact_expectations_of_stabilizer_states() {
        let z = PauliSum::from_term(PauliTerm::new(c(1.0, 0.0), PauliString::from_letters("Z").unwrap()));
        let x = PauliSum::from_term(PauliTerm::new(c(1.0, 0.0), PauliString::from_letters("X").unwrap()));
        let zero = simulate(&Circuit::new(1, 0), &[]).unwrap();
        assert!((expectation_exact(&zero, &z).unwrap().value - 1.0).abs() < 1e-14);
        let mut hc = Circuit::new(1, 0);
        hc.push_h(0).unwrap();
        let plus = simulate(&hc, &[]).unwrap();
        assert!((expectation_exact(&plus, &x).unwrap().value - 1.0).abs() < 1e-14);
        assert!(expectation_exact(&plus, &z).unwrap().value.abs() < 1e-14);
        let est = expectation_exact(&zero, &z).unwrap();
        assert_eq!(est.stddev, 0.0);
        assert_eq!(est.shots_used, 0);
    }

    #[test]
    fn exact_expectation_matches_the_dense_quadratic_form() {
        let mut rng = crate::rng::rng_from_seed(107);
        for n in [2usize, 3, 4] {
            let (circ, bindings) = random_circuit(n, 15, &mut rng);
            let state = simulate(&circ, &bindings).unwrap();
            let mut h = PauliSum::zero(n);
            for _ in 0..6 {
                let mask = (1u64 << n) - 1;
                let s = PauliString::from_masks(n, rng.gen::<u64>() & mask, rng.gen::<u64>() & mask)
                    .unwrap();
                h.push(PauliTerm::new(c(rng.gen::<f64>() - 0.5, 0.0), s)).unwrap();
            }
            let fast = expectation_exact(&state, &h).unwrap().value;
            let m = h.to_matrix().unwrap();
            let dim = 1 << n;
            let mut slow = c(0.0, 0.0);
            for i in 0..dim {
                for j in 0..dim {
                    slow += state.amplitudes()[i].conj() * m[i * dim + j] * state.amplitudes()[j];
                }
            }
            assert!((fast - slow.re).abs() < 1e-10);
        }
    }

    #[test]
    fn expectation_checks_register_width() {
        let state = StateVector::zero_state(2).unwrap();
        let z = PauliSum::from_term(PauliTerm::new(c(1.0, 0.0), PauliString::from_letters("Z").unwrap()));
        assert!(matches!(
            expectation_exact(&state, &z),
            Err(VqeError::QubitCountMismatch(1, 2))
        ));
    }

    #[test]
    fn deterministic_distribution_samples_one_outcome() {
        let mut circ = Circuit::new(1, 0);
        circ.push_x(0).unwrap();
        let s = simulate(&circ, &[]).unwrap();
        let counts = sample_counts(&s, 100, 7).unwrap();
        assert_eq!(counts.len(), 1);
        assert_eq!(counts["1"], 100);
    }

    #[test]
    fn fair_coin_counts_stay_within_five_sigma() {
        let mut circ = Circuit::new(1, 0);
        circ.push_h(0).unwrap();
        let s = simulate(&circ, &[]).unwrap();
        let shots = 1_000_000u64;
        let counts = sample_counts(&s, shots, 11).unwrap();
        let sigma = (0.25 * shots as f64).sqrt();
        for key in ["0", "1"] {
            let n = counts[key] as f64;
            assert!((n - 0.5 * shots as f64).abs() < 5.0 * sigma, "{key}: {n}");
        }
    }

    #[test]
    fn sampling_is_seed_deterministic_and_rejects_zero_shots() {
        let mut circ = Circuit::new(2, 0);
        circ.push_h(0).unwrap();
        circ.push_cx(0, 1).unwrap();
        let s = simulate(&circ, &[]).unwrap();
        let a = sample_counts(&s, 5000, 13).unwrap();
        let b = sample_counts(&s, 5000, 13).unwrap();
        assert_eq!(a, b);
        let d = sample_counts(&s, 5000, 14).unwrap();
        assert_ne!(a, d);
        assert!(matches!(sample_counts(&s, 0, 13), Err(VqeError::ZeroShots)));
        // Bell state: only the correlated outcomes appear.
        assert!(a.keys().all(|k| k == "00" || k == "11"));
    }

    #[test]
    fn identity_only_hamiltonian_is_exact_under_sampling() {
        let circ = Circuit::new(2, 0);
        let h = PauliSum::identity(2, c(-0.75, 0.0));
        let est = expectation_sampled(&circ, &[], &h, 64, 3).unwrap();
        assert_eq!(est.value, -0.75);
        assert_eq!(est.stddev, 0.0);
        assert_eq!(est.shots_used, 0);
    }

    #[test]
    fn degenerate_distributions_have_zero_spread() {
        let mut circ = Circuit::new(1, 0);
        circ.push_x(0).unwrap();
        let z = PauliSum::from_term(PauliTerm::new(c(1.0, 0.0), PauliString::from_letters("Z").unwrap()));
        let est = expectation_sampled(&circ, &[], &z, 200, 5).unwrap();
        assert_eq!(est.value, -1.0);
        assert_eq!(est.stddev, 0.0);
        assert_eq!(est.shots_used, 200);
    }

    #[test]
    fn basis_rotations_measure_pauli_eigenstates_exactly() {
        let x = PauliSum::from_term(PauliTerm::new(c(1.0, 0.0), PauliString::from_letters("X").unwrap()));
        let y = PauliSum::from_term(PauliTerm::new(c(1.0, 0.0), PauliString::from_letters("Y").unwrap()));

        let mut plus = Circuit::new(1, 0);
        plus.push_h(0).unwrap();
        assert_eq!(expectation_sampled(&plus, &[], &x, 50, 1).unwrap().value, 1.0);

        let mut minus = Circuit::new(1, 0);
        minus.push_x(0).unwrap();
        minus.push_h(0).unwrap();
        assert_eq!(expectation_sampled(&minus, &[], &x, 50, 1).unwrap().value, -1.0);

        let mut plus_i = Circuit::new(1, 0);
        plus_i.push_h(0).unwrap();
        plus_i.push_s(0).unwrap();
        assert_eq!(expectation_sampled(&plus_i, &[], &y, 50, 1).unwrap().value, 1.0);

        let mut minus_i = Circuit::new(1, 0);
        minus_i.push_h(0).unwrap();
        minus_i.push_sdg(0).unwrap();
        assert_eq!(expectation_sampled(&minus_i, &[], &y, 50, 1).unwrap().value, -1.0);
    }

    #[test]
    fn sampled_estimator_rejects_non_hermitian_input() {
        let circ = Circuit::new(1, 0);
        let h = PauliSum::from_term(PauliTerm::new(c(0.0, 1.0), PauliString::from_letters("X").unwrap()));
        assert!(matches!(
            expectation_sampled(&circ, &[], &h, 10, 0),
            Err(VqeError::NotHermitian(_))
        ));
    }

    #[test]
    fn shot_quadrupling_shrinks_the_error_on_a_fixed_ladder() {
        // Seeded fixture: the absolute error must fall at each 4x step.
        let mut circ = Circuit::new(2, 0);
        circ.push_ry(0, Angle::Fixed(0.7)).unwrap();
        circ.push_cx(0, 1).unwrap();
        circ.push_ry(1, Angle::Fixed(-0.4)).unwrap();
        let mut h = PauliSum::zero(2);
        h.push(PauliTerm::new(c(0.6, 0.0), PauliString::from_letters("ZZ").unwrap())).unwrap();
        h.push(PauliTerm::new(c(-0.8, 0.0), PauliString::from_letters("XI").unwrap())).unwrap();
        h.push(PauliTerm::new(c(0.3, 0.0), PauliString::from_letters("IX").unwrap())).unwrap();
        let exact = expectation_exact(&simulate(&circ, &[]).unwrap(), &h).unwrap().value;
        let errs: Vec<f64> = [512u64, 2048, 8192]
            .iter()
            .map(|&shots| {
                (expectation_sampled(&circ, &[], &h, shots, 1).unwrap().value - exact).abs()
            })
            .collect();
        assert!(errs[0] > errs[1] && errs[1] > errs[2], "{errs:?}");
    }

    #[test]
    fn xx_plus_yy_rotates_only_the_odd_parity_pair() {
        let theta = 0.9f64;
        let mut circ = Circuit::new(2, 1);
        circ.push_x(0).unwrap();
        circ.push_xx_plus_yy(0, 1, Angle::Param { slot: 0, scale: 1.0 }).unwrap();
        let s = simulate(&circ, &[theta]).unwrap();
        let a = s.amplitudes();
        assert!((a[0b01] - c(theta.cos(), 0.0)).norm() < 1e-14);
        assert!((a[0b10] - c(0.0, -theta.sin())).norm() < 1e-14);
        // Even-parity states pass through.
        let mut even = Circuit::new(2, 1);
        even.push_x(0).unwrap();
        even.push_x(1).unwrap();
        even.push_xx_plus_yy(0, 1, Angle::Param { slot: 0, scale: 1.0 }).unwrap();
        let e = simulate(&even, &[theta]).unwrap();
        assert!((e.amplitudes()[0b11] - c(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn basis_state_constructor_validates_the_index() {
        assert!(StateVector::from_basis_state(2, 4).is_err());
        let s = StateVector::from_basis_state(2, 2).unwrap();
        assert!((s.amplitudes()[2] - c(1.0, 0.0)).norm() < 1e-15);
        assert!(StateVector::zero_state(MAX_STATE_QUBITS + 1).is_err());
    }
}
