//! Restricted Hartree-Fock for two electrons in two orbitals, and the
//! transformation of converged integrals to the spin-orbital basis.

use super::integrals::AoIntegrals;
use crate::error::{Result, VqeError};

const SCF_ENERGY_TOL: f64 = 1e-10;
const SCF_MAX_ITER: usize = 200;

/// Converged restricted Hartree-Fock state.
///
/// `mo_coefficients[mu][i]` is the weight of AO `mu` in MO `i`; columns are
/// S-orthonormal and ordered by orbital energy.
#[derive(Clone, Debug)]
pub struct RhfSolution {
    pub mo_coefficients: [[f64; 2]; 2],
    pub orbital_energies: [f64; 2],
    pub electronic_energy: f64,
    pub total_energy: f64,
    pub iterations: usize,
    /// Total energy after each SCF cycle, for convergence diagnostics.
    pub energy_history: Vec<f64>,
}

/// Eigenpairs of a symmetric 2x2 matrix, ascending. Columns of the returned
/// matrix are the eigenvectors.
fn sym_eig_2x2(m: [[f64; 2]; 2]) -> ([f64; 2], [[f64; 2]; 2]) {
    let a = m[0][0];
    let b = 0.5 * (m[0][1] + m[1][0]);
    let c = m[1][1];
    if b.abs() < 1e-300 {
        if a <= c {
            return ([a, c], [[1.0, 0.0], [0.0, 1.0]]);
        }
        return ([c, a], [[0.0, 1.0], [1.0, 0.0]]);
    }
    let half_diff = 0.5 * (a - c);
    let radius = (half_diff * half_diff + b * b).sqrt();
    let mid = 0.5 * (a + c);
    let lo = mid - radius;
    let hi = mid + radius;
    // Eigenvector for an eigenvalue lambda: (b, lambda - a), or the partner
    // branch when that one degenerates.
    let vec_for = |lambda: f64| -> [f64; 2] {
        let v = if (lambda - a).abs() > (lambda - c).abs() {
            [b, lambda - a]
        } else {
            [lambda - c, b]
        };
        let norm = (v[0] * v[0] + v[1] * v[1]).sqrt();
        let mut v = [v[0] / norm, v[1] / norm];
        // Deterministic sign: largest component positive.
        let lead = if v[0].abs() >= v[1].abs() { v[0] } else { v[1] };
        if lead < 0.0 {
            v = [-v[0], -v[1]];
        }
        v
    };
    let vlo = vec_for(lo);
    let vhi = vec_for(hi);
    ([lo, hi], [[vlo[0], vhi[0]], [vlo[1], vhi[1]]])
}

fn matmul2(a: [[f64; 2]; 2], b: [[f64; 2]; 2]) -> [[f64; 2]; 2] {
    let mut out = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

fn transpose2(a: [[f64; 2]; 2]) -> [[f64; 2]; 2] {
    [[a[0][0], a[1][0]], [a[0][1], a[1][1]]]
}

/// Restricted Hartree-Fock with a core-Hamiltonian guess; converges when
/// the total energy moves by less than 1e-10 Ha between cycles.
pub fn rhf_scf(ao: &AoIntegrals, nuclear_repulsion: f64) -> Result<RhfSolution> {
    let mut h_core = [[0.0; 2]; 2];
    for m in 0..2 {
        for n in 0..2 {
            h_core[m][n] = ao.kinetic[m][n] + ao.nuclear_attraction[m][n];
        }
    }
    // Symmetric orthogonalization X = S^(-1/2).
    let (s_vals, s_vecs) = sym_eig_2x2(ao.overlap);
    if s_vals[0] <= 1e-10 {
        return Err(VqeError::OverlapNotPositive(s_vals[0]));
    }
    let inv_sqrt = [[1.0 / s_vals[0].sqrt(), 0.0], [0.0, 1.0 / s_vals[1].sqrt()]];
    let x = matmul2(matmul2(s_vecs, inv_sqrt), transpose2(s_vecs));

    let mut density = [[0.0; 2]; 2];
    let mut last_energy = f64::INFINITY;
    let mut history = Vec::new();

    for iteration in 1..=SCF_MAX_ITER {
        // Fock matrix from the current density.
        let mut fock = h_core;
        for m in 0..2 {
            for n in 0..2 {
                let mut g = 0.0;
                for l in 0..2 {
                    for s in 0..2 {
                        g += density[l][s] * (ao.eri[m][n][s][l] - 0.5 * ao.eri[m][l][s][n]);
                    }
                }
                fock[m][n] += g;
            }
        }
        let f_prime = matmul2(matmul2(transpose2(x), fock), x);
        let (orbital_energies, c_prime) = sym_eig_2x2(f_prime);
        let coeffs = matmul2(x, c_prime);
        // Closed shell: both electrons in the lowest MO.
        for m in 0..2 {
            for n in 0..2 {
                density[m][n] = 2.0 * coeffs[m][0] * coeffs[n][0];
            }
        }
        // Electronic energy of the *current* density with the Fock matrix
        // that produced it requires one more Fock build; use the standard
        // expression with the pre-diagonalization Fock instead, evaluated on
        // the updated density at the next pass. Track the energy of the
        // density that was just formed:
        let mut fock_new = h_core;
        for m in 0..2 {
            for n in 0..2 {
                let mut g = 0.0;
                for l in 0..2 {
                    for s in 0..2 {
                        g += density[l][s] * (ao.eri[m][n][s][l] - 0.5 * ao.eri[m][l][s][n]);
                    }
                }
                fock_new[m][n] += g;
            }
        }
        let mut electronic = 0.0;
        for m in 0..2 {
            for n in 0..2 {
                electronic += 0.5 * density[m][n] * (h_core[m][n] + fock_new[m][n]);
            }
        }
        let total = electronic + nuclear_repulsion;
        history.push(total);
        if (total - last_energy).abs() < SCF_ENERGY_TOL {
            return Ok(RhfSolution {
                mo_coefficients: coeffs,
                orbital_energies,
                electronic_energy: electronic,
                total_energy: total,
                iterations: iteration,
                energy_history: history,
            });
        }
        last_energy = total;
    }
    Err(VqeError::ScfNotConverged {
        iterations: SCF_MAX_ITER,
        last_energy,
    })
}

/// One- and two-electron integrals in the spin-orbital basis, plus the
/// scalar data needed to assemble a second-quantized Hamiltonian.
///
/// Spin orbitals are blocked as (alpha0, alpha1, beta0, beta1). `h2` uses
/// physicist notation `h2[p][q][r][s] = <pq|rs>`, so the electronic
/// Hamiltonian is `sum h1[p][q] a+_p a_q + 1/2 sum h2[p][q][r][s] a+_p a+_q a_s a_r`.
#[derive(Clone, Debug)]
pub struct SpinOrbitalIntegrals {
    pub n_spin_orbitals: usize,
    pub n_particles: usize,
    pub h1: [[f64; 4]; 4],
    pub h2: [[[[f64; 4]; 4]; 4]; 4],
    pub nuclear_repulsion: f64,
}

/// Index helpers for the (alpha0, alpha1, beta0, beta1) block order.
fn spatial(p: usize) -> usize {
    p % 2
}

fn spin(p: usize) -> usize {
    p / 2
}

/// Transform converged AO integrals into spin-orbital tensors.
pub fn spin_orbital_integrals(
    ao: &AoIntegrals,
    scf: &RhfSolution,
    nuclear_repulsion: f64,
) -> Result<SpinOrbitalIntegrals> {
    let c = scf.mo_coefficients;
    // Core Hamiltonian in the MO basis.
    let mut h_core = [[0.0; 2]; 2];
    for m in 0..2 {
        for n in 0..2 {
            h_core[m][n] = ao.kinetic[m][n] + ao.nuclear_attraction[m][n];
        }
    }
    let mut h_mo = [[0.0; 2]; 2];
    for p in 0..2 {
        for q in 0..2 {
            let mut acc = 0.0;
            for m in 0..2 {
                for n in 0..2 {
                    acc += c[m][p] * h_core[m][n] * c[n][q];
                }
            }
            h_mo[p][q] = acc;
        }
    }
    // Chemist-notation MO two-electron integrals (pq|rs).
    let mut eri_mo = [[[[0.0; 2]; 2]; 2]; 2];
    for p in 0..2 {
        for q in 0..2 {
            for r in 0..2 {
                for s in 0..2 {
                    let mut acc = 0.0;
                    for m in 0..2 {
                        for n in 0..2 {
                            for l in 0..2 {
                                for t in 0..2 {
                                    acc += c[m][p] * c[n][q] * c[l][r] * c[t][s]
                                        * ao.eri[m][n][l][t];
                                }
                            }
                        }
                    }
                    eri_mo[p][q][r][s] = acc;
                }
            }
        }
    }
    // Spin blocks: h1 diagonal in spin; <PQ|RS> = (pr|qs) when the spins of
    // P,R and of Q,S match, zero otherwise.
    let mut h1 = [[0.0; 4]; 4];
    let mut h2 = [[[[0.0; 4]; 4]; 4]; 4];
    for p in 0..4 {
        for q in 0..4 {
            if spin(p) == spin(q) {
                h1[p][q] = h_mo[spatial(p)][spatial(q)];
            }
        }
    }
    for p in 0..4 {
        for q in 0..4 {
            for r in 0..4 {
                for s in 0..4 {
                    if spin(p) == spin(r) && spin(q) == spin(s) {
                        h2[p][q][r][s] = eri_mo[spatial(p)][spatial(r)][spatial(q)][spatial(s)];
                    }
                }
            }
        }
    }
    let out = SpinOrbitalIntegrals {
        n_spin_orbitals: 4,
        n_particles: 2,
        h1,
        h2,
        nuclear_repulsion,
    };
    out.validate()?;
    Ok(out)
}

impl SpinOrbitalIntegrals {
    /// Check the symmetries inherited from real orbitals:
    /// `h1` symmetric, `<pq|rs> = <qp|sr> = <rs|pq> = <rq|ps>`.
    pub fn validate(&self) -> Result<()> {
        let mut worst = 0.0f64;
        for p in 0..4 {
            for q in 0..4 {
                worst = worst.max((self.h1[p][q] - self.h1[q][p]).abs());
            }
        }
        for p in 0..4 {
            for q in 0..4 {
                for r in 0..4 {
                    for s in 0..4 {
                        let v = self.h2[p][q][r][s];
                        worst = worst.max((v - self.h2[q][p][s][r]).abs());
                        worst = worst.max((v - self.h2[r][s][p][q]).abs());
                        worst = worst.max((v - self.h2[r][q][p][s]).abs());
                    }
                }
            }
        }
        if worst > 1e-10 {
            return Err(VqeError::SymmetryViolation(worst));
        }
        Ok(())
    }
}
