//! Analytic one- and two-electron integrals over contracted s-Gaussians.
//!
//! Closed forms follow from the Gaussian product theorem. For two
//! primitives with exponents `a` at `A` and `b` at `B`, write
//! `p = a + b`, `P = (aA + bB)/p`, `K = exp(-ab/p |A-B|^2)`:
//!
//! - overlap:   `(pi/p)^(3/2) K`
//! - kinetic:   `ab/p (3 - 2ab/p |A-B|^2) (pi/p)^(3/2) K`
//! - attraction to charge Z at C: `-2 pi Z / p * K * F0(p |P-C|^2)`
//! - repulsion `(ab|cd)`: `2 pi^(5/2) / (pq sqrt(p+q)) K_ab K_cd F0(pq/(p+q) |P-Q|^2)`
//!
//! where `F0` is the zeroth Boys function. Two-electron integrals are stored
//! in chemist convention: `eri[p][q][r][s] = (pq|rs)`, orbitals `p,q` on
//! electron 1.

use super::basis::{dist2, ContractedOrbital, MoleculeGeometry};
use crate::error::{Result, VqeError};
use std::f64::consts::PI;

/// Below this argument the Boys function uses its Taylor series; the two
/// branches agree to ~1e-15 at the switch.
const BOYS_SERIES_THRESHOLD: f64 = 1e-4;

/// Zeroth Boys function `F0(t) = integral of exp(-t u^2) over [0, 1]`.
///
/// Closed form `(1/2) sqrt(pi/t) erf(sqrt(t))` away from zero; the series
/// `1 - t/3 + t^2/10 - t^3/42` below [`BOYS_SERIES_THRESHOLD`].
pub fn boys_f0(t: f64) -> Result<f64> {
    if t < 0.0 || t.is_nan() {
        return Err(VqeError::NegativeBoysArgument(t));
    }
    if t <= BOYS_SERIES_THRESHOLD {
        Ok(1.0 - t / 3.0 + t * t / 10.0 - t * t * t / 42.0)
    } else {
        let st = t.sqrt();
        Ok(0.5 * (PI / t).sqrt() * libm::erf(st))
    }
}

/// AO-basis integral tensors for the two-orbital H2 problem.
///
/// `eri` uses chemist notation `(pq|rs)`.
#[derive(Clone, Debug)]
pub struct AoIntegrals {
    pub overlap: [[f64; 2]; 2],
    pub kinetic: [[f64; 2]; 2],
    pub nuclear_attraction: [[f64; 2]; 2],
    pub eri: [[[[f64; 2]; 2]; 2]; 2],
}

fn primitive_overlap(a: f64, center_a: [f64; 3], b: f64, center_b: [f64; 3]) -> f64 {
    let p = a + b;
    let k = (-(a * b / p) * dist2(center_a, center_b)).exp();
    (PI / p).powf(1.5) * k
}

fn primitive_kinetic(a: f64, center_a: [f64; 3], b: f64, center_b: [f64; 3]) -> f64 {
    let p = a + b;
    let ab2 = dist2(center_a, center_b);
    let mu = a * b / p;
    mu * (3.0 - 2.0 * mu * ab2) * primitive_overlap(a, center_a, b, center_b)
}

fn gaussian_product_center(a: f64, center_a: [f64; 3], b: f64, center_b: [f64; 3]) -> [f64; 3] {
    let p = a + b;
    [
        (a * center_a[0] + b * center_b[0]) / p,
        (a * center_a[1] + b * center_b[1]) / p,
        (a * center_a[2] + b * center_b[2]) / p,
    ]
}

fn primitive_attraction(
    a: f64,
    center_a: [f64; 3],
    b: f64,
    center_b: [f64; 3],
    nucleus: [f64; 3],
    charge: f64,
) -> Result<f64> {
    let p = a + b;
    let k = (-(a * b / p) * dist2(center_a, center_b)).exp();
    let pc = dist2(gaussian_product_center(a, center_a, b, center_b), nucleus);
    Ok(-2.0 * PI * charge / p * k * boys_f0(p * pc)?)
}

#[allow(clippy::too_many_arguments)]
fn primitive_repulsion(
    a: f64,
    center_a: [f64; 3],
    b: f64,
    center_b: [f64; 3],
    c: f64,
    center_c: [f64; 3],
    d: f64,
    center_d: [f64; 3],
) -> Result<f64> {
    let p = a + b;
    let q = c + d;
    let k_ab = (-(a * b / p) * dist2(center_a, center_b)).exp();
    let k_cd = (-(c * d / q) * dist2(center_c, center_d)).exp();
    let pp = gaussian_product_center(a, center_a, b, center_b);
    let qq = gaussian_product_center(c, center_c, d, center_d);
    let t = p * q / (p + q) * dist2(pp, qq);
    Ok(2.0 * PI.powf(2.5) / (p * q * (p + q).sqrt()) * k_ab * k_cd * boys_f0(t)?)
}

fn contracted_one_electron<F>(oa: &ContractedOrbital, ob: &ContractedOrbital, f: F) -> Result<f64>
where
    F: Fn(f64, [f64; 3], f64, [f64; 3]) -> Result<f64>,
{
    let mut total = 0.0;
    for (i, pi) in oa.primitives.iter().enumerate() {
        for (j, pj) in ob.primitives.iter().enumerate() {
            total += oa.coefficient(i)
                * ob.coefficient(j)
                * f(pi.exponent, oa.center, pj.exponent, ob.center)?;
        }
    }
    Ok(total)
}

/// All AO integral tensors for a two-hydrogen geometry.
pub fn ao_integrals(basis: &[ContractedOrbital], geometry: &MoleculeGeometry) -> Result<AoIntegrals> {
    geometry.validate()?;
    if basis.len() != 2 {
        return Err(VqeError::Configuration(format!(
            "expected 2 basis orbitals, got {}",
            basis.len()
        )));
    }
    let mut overlap = [[0.0; 2]; 2];
    let mut kinetic = [[0.0; 2]; 2];
    let mut nuclear_attraction = [[0.0; 2]; 2];
    for m in 0..2 {
        for n in 0..2 {
            overlap[m][n] = contracted_one_electron(&basis[m], &basis[n], |a, ca, b, cb| {
                Ok(primitive_overlap(a, ca, b, cb))
            })?;
            kinetic[m][n] = contracted_one_electron(&basis[m], &basis[n], |a, ca, b, cb| {
                Ok(primitive_kinetic(a, ca, b, cb))
            })?;
            let mut v = 0.0;
            for &(z, nucleus) in &geometry.atoms {
                v += contracted_one_electron(&basis[m], &basis[n], |a, ca, b, cb| {
                    primitive_attraction(a, ca, b, cb, nucleus, f64::from(z))
                })?;
            }
            nuclear_attraction[m][n] = v;
        }
    }
    let mut eri = [[[[0.0; 2]; 2]; 2]; 2];
    for m in 0..2 {
        for n in 0..2 {
            for l in 0..2 {
                for s in 0..2 {
                    let mut total = 0.0;
                    for (i, pi) in basis[m].primitives.iter().enumerate() {
                        for (j, pj) in basis[n].primitives.iter().enumerate() {
                            for (k, pk) in basis[l].primitives.iter().enumerate() {
                                for (t, pt) in basis[s].primitives.iter().enumerate() {
                                    total += basis[m].coefficient(i)
                                        * basis[n].coefficient(j)
                                        * basis[l].coefficient(k)
                                        * basis[s].coefficient(t)
                                        * primitive_repulsion(
                                            pi.exponent,
                                            basis[m].center,
                                            pj.exponent,
                                            basis[n].center,
                                            pk.exponent,
                                            basis[l].center,
                                            pt.exponent,
                                            basis[s].center,
                                        )?;
                                }
                            }
                        }
                    }
                    eri[m][n][l][s] = total;
                }
            }
        }
    }
    Ok(AoIntegrals {
        overlap,
        kinetic,
        nuclear_attraction,
        eri,
    })
}

/// Classical Coulomb repulsion between the nuclei, in Hartree.
pub fn nuclear_repulsion(geometry: &MoleculeGeometry) -> Result<f64> {
    geometry.validate()?;
    let mut e = 0.0;
    for i in 0..geometry.atoms.len() {
        for j in (i + 1)..geometry.atoms.len() {
            let (zi, ri) = geometry.atoms[i];
            let (zj, rj) = geometry.atoms[j];
            e += f64::from(zi) * f64::from(zj) / dist2(ri, rj).sqrt();
        }
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chem::basis::angstrom_to_bohr;

    /// Midpoint-rule oracle for the Boys integrand on [0, 1].
    fn boys_midpoint(t: f64, n: usize) -> f64 {
        let h = 1.0 / n as f64;
        (0..n)
            .map(|i| {
                let u = (i as f64 + 0.5) * h;
                (-t * u * u).exp() * h
            })
            .sum()
    }

    #[test]
    fn boys_at_zero_is_one() {
        assert!((boys_f0(0.0).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn boys_rejects_negative_argument() {
        assert!(matches!(
            boys_f0(-1.0),
            Err(VqeError::NegativeBoysArgument(_))
        ));
    }

    #[test]
    fn boys_matches_midpoint_quadrature() {
        // Oracle first: evaluate the defining integral directly, then check
        // the closed form over both branches.
        for &t in &[1e-9, 1e-6, 9e-5, 2e-4, 1e-3, 0.05, 0.5, 1.0, 3.0, 10.0, 30.0] {
            let oracle = boys_midpoint(t, 4_000_000);
            let got = boys_f0(t).unwrap();
            assert!(
                (got - oracle).abs() < 1e-10,
                "t={t}: got {got}, oracle {oracle}"
            );
        }
    }

    #[test]
    fn boys_is_continuous_at_the_branch_switch() {
        let below = boys_f0(BOYS_SERIES_THRESHOLD).unwrap();
        let above = boys_f0(BOYS_SERIES_THRESHOLD * (1.0 + 1e-12)).unwrap();
        assert!((below - above).abs() < 1e-14);
    }

    #[test]
    fn boys_is_monotone_decreasing_and_bounded() {
        let mut prev = boys_f0(0.0).unwrap();
        assert!(prev <= 1.0);
        for i in 1..=300 {
            let t = i as f64 * 0.1;
            let v = boys_f0(t).unwrap();
            assert!(v < prev, "not decreasing at t={t}");
            assert!(v > 0.0 && v <= 1.0);
            prev = v;
        }
    }

    #[test]
    fn coincident_orbitals_give_unit_overlap() {
        let geometry = MoleculeGeometry::h2(0.74);
        let basis = geometry.sto3g_basis().unwrap();
        let ints = ao_integrals(&basis, &geometry).unwrap();
        assert!((ints.overlap[0][0] - 1.0).abs() < 1e-12);
        assert!((ints.overlap[1][1] - 1.0).abs() < 1e-12);
        assert!((ints.overlap[0][1] - ints.overlap[1][0]).abs() < 1e-14);
        assert!(ints.overlap[0][1] > 0.0 && ints.overlap[0][1] < 1.0);
    }

    #[test]
    fn overlap_decays_with_distance() {
        let near = {
            let g = MoleculeGeometry::h2(0.5);
            ao_integrals(&g.sto3g_basis().unwrap(), &g).unwrap().overlap[0][1]
        };
        let far = {
            let g = MoleculeGeometry::h2(3.0);
            ao_integrals(&g.sto3g_basis().unwrap(), &g).unwrap().overlap[0][1]
        };
        assert!(far < near);
        assert!(far < 0.1);
    }

    #[test]
    fn tensors_have_the_required_symmetries() {
        let geometry = MoleculeGeometry::h2(0.74);
        let basis = geometry.sto3g_basis().unwrap();
        let ints = ao_integrals(&basis, &geometry).unwrap();
        for m in 0..2 {
            for n in 0..2 {
                assert!((ints.overlap[m][n] - ints.overlap[n][m]).abs() < 1e-12);
                assert!((ints.kinetic[m][n] - ints.kinetic[n][m]).abs() < 1e-12);
                assert!(
                    (ints.nuclear_attraction[m][n] - ints.nuclear_attraction[n][m]).abs() < 1e-12
                );
            }
        }
        for p in 0..2 {
            for q in 0..2 {
                for r in 0..2 {
                    for s in 0..2 {
                        let v = ints.eri[p][q][r][s];
                        assert!((v - ints.eri[q][p][r][s]).abs() < 1e-12);
                        assert!((v - ints.eri[p][q][s][r]).abs() < 1e-12);
                        assert!((v - ints.eri[r][s][p][q]).abs() < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn translation_leaves_integrals_invariant() {
        let d = angstrom_to_bohr(0.74);
        let base = MoleculeGeometry::h2(0.74);
        let shifted = MoleculeGeometry {
            atoms: vec![
                (1, [0.3, -1.2, 0.7]),
                (1, [0.3, -1.2, 0.7 + d]),
            ],
        };
        let a = ao_integrals(&base.sto3g_basis().unwrap(), &base).unwrap();
        let b = ao_integrals(&shifted.sto3g_basis().unwrap(), &shifted).unwrap();
        for m in 0..2 {
            for n in 0..2 {
                assert!((a.overlap[m][n] - b.overlap[m][n]).abs() < 1e-11);
                assert!((a.kinetic[m][n] - b.kinetic[m][n]).abs() < 1e-11);
                assert!((a.nuclear_attraction[m][n] - b.nuclear_attraction[m][n]).abs() < 1e-11);
            }
        }
        for p in 0..2 {
            for q in 0..2 {
                for r in 0..2 {
                    for s in 0..2 {
                        assert!((a.eri[p][q][r][s] - b.eri[p][q][r][s]).abs() < 1e-11);
                    }
                }
            }
        }
    }

    #[test]
    fn nuclear_repulsion_at_074_angstrom() {
        let e = nuclear_repulsion(&MoleculeGeometry::h2(0.74)).unwrap();
        assert!((e - 0.715_104_339_081).abs() < 1e-6);
    }

    #[test]
    fn nuclear_repulsion_scales_as_inverse_distance() {
        let e1 = nuclear_repulsion(&MoleculeGeometry::h2(0.5)).unwrap();
        let e2 = nuclear_repulsion(&MoleculeGeometry::h2(1.0)).unwrap();
        assert!((e1 - 2.0 * e2).abs() < 1e-12);
    }

    #[test]
    fn nuclear_repulsion_rejects_coincident_nuclei() {
        let g = MoleculeGeometry {
            atoms: vec![(1, [0.0; 3]), (1, [0.0; 3])],
        };
        assert!(nuclear_repulsion(&g).is_err());
    }
}
