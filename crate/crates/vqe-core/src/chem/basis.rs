//! Molecular geometry and the STO-3G hydrogen basis.
//!
//! All lengths inside the crate are atomic units (Bohr); the public driver
//! accepts Angstrom and converts on entry.

use crate::error::{Result, VqeError};

/// CODATA Bohr radius in Angstrom.
pub const ANGSTROM_PER_BOHR: f64 = 0.529177210903;

/// Convert a length in Angstrom to Bohr.
pub fn angstrom_to_bohr(distance: f64) -> f64 {
    distance / ANGSTROM_PER_BOHR
}

/// STO-3G exponents for hydrogen 1s (already scaled for H).
pub const STO3G_HYDROGEN_EXPONENTS: [f64; 3] = [3.42525091, 0.62391373, 0.16885540];

/// Matching contraction coefficients.
pub const STO3G_HYDROGEN_CONTRACTIONS: [f64; 3] = [0.15432897, 0.53532814, 0.44463454];

/// One primitive s-Gaussian `exp(-exponent * |r - center|^2)`.
#[derive(Clone, Copy, Debug)]
pub struct GaussianPrimitive {
    pub exponent: f64,
    pub contraction_coefficient: f64,
}

/// Contracted s orbital: fixed linear combination of primitives on one
/// center. `normalization[i]` multiplies primitive `i` so that the
/// contracted self-overlap is exactly 1.
#[derive(Clone, Debug)]
pub struct ContractedOrbital {
    pub center: [f64; 3],
    pub primitives: Vec<GaussianPrimitive>,
    pub normalization: Vec<f64>,
}

impl ContractedOrbital {
    /// Build a normalized contraction at `center` (Bohr).
    pub fn new(center: [f64; 3], primitives: Vec<GaussianPrimitive>) -> Self {
        // Per-primitive norm of an s-Gaussian, then a global rescale so the
        // contracted self-overlap is exactly one.
        let mut normalization: Vec<f64> = primitives
            .iter()
            .map(|p| (2.0 * p.exponent / std::f64::consts::PI).powf(0.75))
            .collect();
        let mut self_overlap = 0.0;
        for (i, pi) in primitives.iter().enumerate() {
            for (j, pj) in primitives.iter().enumerate() {
                let p = pi.exponent + pj.exponent;
                let s = (std::f64::consts::PI / p).powf(1.5);
                self_overlap += pi.contraction_coefficient
                    * pj.contraction_coefficient
                    * normalization[i]
                    * normalization[j]
                    * s;
            }
        }
        let scale = 1.0 / self_overlap.sqrt();
        for n in &mut normalization {
            *n *= scale;
        }
        ContractedOrbital {
            center,
            primitives,
            normalization,
        }
    }

    /// STO-3G 1s orbital for hydrogen at `center` (Bohr).
    pub fn sto3g_hydrogen(center: [f64; 3]) -> Self {
        let primitives = STO3G_HYDROGEN_EXPONENTS
            .iter()
            .zip(&STO3G_HYDROGEN_CONTRACTIONS)
            .map(|(&exponent, &contraction_coefficient)| GaussianPrimitive {
                exponent,
                contraction_coefficient,
            })
            .collect();
        ContractedOrbital::new(center, primitives)
    }

    /// Effective coefficient of primitive `i` (contraction x normalization).
    pub fn coefficient(&self, i: usize) -> f64 {
        self.primitives[i].contraction_coefficient * self.normalization[i]
    }

    /// Value of the orbital at a point, for quadrature cross-checks.
    pub fn value_at(&self, r: [f64; 3]) -> f64 {
        let d2 = dist2(r, self.center);
        self.primitives
            .iter()
            .enumerate()
            .map(|(i, p)| self.coefficient(i) * (-p.exponent * d2).exp())
            .sum()
    }
}

pub(crate) fn dist2(a: [f64; 3], b: [f64; 3]) -> f64 {
    let dx = a[0] - b[0];
    let dy = a[1] - b[1];
    let dz = a[2] - b[2];
    dx * dx + dy * dy + dz * dz
}

/// Nuclear frame: atomic numbers and positions in Bohr.
#[derive(Clone, Debug)]
pub struct MoleculeGeometry {
    pub atoms: Vec<(u32, [f64; 3])>,
}

impl MoleculeGeometry {
    /// H2 on the z axis with the given bond length in Angstrom.
    pub fn h2(distance_angstrom: f64) -> Self {
        let d = angstrom_to_bohr(distance_angstrom);
        MoleculeGeometry {
            atoms: vec![(1, [0.0, 0.0, 0.0]), (1, [0.0, 0.0, d])],
        }
    }

    /// Reject non-hydrogen atoms and (near-)coincident nuclei.
    pub fn validate(&self) -> Result<()> {
        for &(z, _) in &self.atoms {
            if z != 1 {
                return Err(VqeError::UnsupportedElement(z));
            }
        }
        for i in 0..self.atoms.len() {
            for j in (i + 1)..self.atoms.len() {
                if dist2(self.atoms[i].1, self.atoms[j].1) < 1e-12 {
                    return Err(VqeError::CoincidentNuclei(i, j));
                }
            }
        }
        Ok(())
    }

    /// One STO-3G 1s orbital per atom.
    pub fn sto3g_basis(&self) -> Result<Vec<ContractedOrbital>> {
        self.validate()?;
        Ok(self
            .atoms
            .iter()
            .map(|&(_, center)| ContractedOrbital::sto3g_hydrogen(center))
            .collect())
    }
}
