//! Run orchestration: a validated configuration drives the full pipeline
//! from geometry to optimized energy, producing a serializable result with
//! its convergence trace, plus multi-distance scans and file emitters.
//!
//! Reported energies satisfy `total_energy = electronic_energy + shift`
//! exactly on the stored values; every float field is rounded to 12
//! significant digits before the result leaves this module, so emitted
//! JSON is bit-reproducible for a fixed configuration and seed.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use crate::ansatz::{
    efficient_su2, excitation_preserving, hartree_fock_circuit, random_initial_point,
    real_amplitudes, two_local_ry_rz_cz, uccsd, zero_state, Circuit,
};
use crate::backend::{expectation_exact, expectation_sampled, simulate};
use crate::chem::{
    ao_integrals, nuclear_repulsion, rhf_scf, spin_orbital_integrals, MoleculeGeometry,
};
use crate::error::{Result, VqeError};
use crate::exact::lowest_eigenvalue;
use crate::mapping::{qubit_hamiltonian, MappingKind, QubitHamiltonian};
use crate::optimize::{bfgs_fd, nelder_mead, spsa, IterationRecord, Objective, OptResult};
use crate::par;
use crate::rng::{derive_seed, rng_from_seed};

/// Spin orbitals in the minimal hydrogen-pair problem.
const N_SPIN_ORBITALS: usize = 4;
/// Electrons in the neutral molecule.
const N_PARTICLES: usize = 2;
/// Shot multiplier for the closing measurement at the best parameters.
const FINAL_MEASURE_FACTOR: u64 = 10;

const BFGS_GTOL: f64 = 1e-8;
const BFGS_FD_STEP_EXACT: f64 = 1e-6;
const BFGS_FD_STEP_SAMPLED: f64 = 0.1;
const NM_XTOL: f64 = 1e-6;
const NM_FTOL: f64 = 1e-9;
const SPSA_C: f64 = 0.1;
const SPSA_ALPHA: f64 = 0.602;
const SPSA_GAMMA: f64 = 0.101;
const SPSA_SAVE_STEPS: usize = 100;

macro_rules! config_enum {
    ($(#[$meta:meta])* $name:ident { $($variant:ident => $text:literal),+ $(,)? }) => {
        $(#[$meta])*
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
        #[serde(rename_all = "kebab-case")]
        pub enum $name {
            $($variant,)+
        }

        impl $name {
            pub fn as_str(self) -> &'static str {
                match self {
                    $($name::$variant => $text,)+
                }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.as_str())
            }
        }

        impl FromStr for $name {
            type Err = VqeError;

            fn from_str(s: &str) -> Result<Self> {
                let canon = s.trim().to_ascii_lowercase().replace('_', "-");
                match canon.as_str() {
                    $($text => Ok($name::$variant),)+
                    _ => Err(VqeError::Configuration(format!(
                        "unknown {}: {s}",
                        stringify!($name)
                    ))),
                }
            }
        }
    };
}

config_enum!(
    /// Orbital basis for the electronic-structure front end.
    BasisKind { Sto3g => "sto3g" }
);
config_enum!(
    /// Reference-state preparation placed before the variational form.
    InitialStateKind { Zero => "zero", HartreeFock => "hartree-fock" }
);
config_enum!(
    /// Variational circuit family.
    VarFormKind {
        Uccsd => "uccsd",
        RealAmplitudes => "real-amplitudes",
        EfficientSu2 => "efficient-su2",
        TwoLocal => "two-local",
        ExcitationPreserving => "excitation-preserving",
    }
);
config_enum!(
    /// Classical minimizer choice.
    OptimizerKind { Spsa => "spsa", NelderMead => "nelder-mead", Bfgs => "bfgs" }
);
config_enum!(
    /// Expectation evaluation strategy.
    BackendKind { Statevector => "statevector", Sampled => "sampled" }
);

/// Starting parameters for the optimizer.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InitialPointSpec {
    Zeros,
    /// Uniform draw per parameter over the closed interval.
    Random(f64, f64),
    Explicit(Vec<f64>),
}

/// Complete description of one energy calculation.
///
/// `tqr` is tri-state: `None` resolves to "reduce exactly when the mapping
/// is parity"; an explicit `Some(true)` demands the parity mapping.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct VqeConfig {
    pub distance: f64,
    pub basis: BasisKind,
    pub mapping: MappingKind,
    pub tqr: Option<bool>,
    pub initial_state: InitialStateKind,
    pub var_form: VarFormKind,
    pub depth: usize,
    pub optimizer: OptimizerKind,
    pub backend: BackendKind,
    pub shots: u64,
    pub max_iter: usize,
    pub seed: u64,
    pub initial_point: InitialPointSpec,
}

impl Default for VqeConfig {
    fn default() -> Self {
        VqeConfig {
            distance: 0.74,
            basis: BasisKind::Sto3g,
            mapping: MappingKind::Parity,
            tqr: None,
            initial_state: InitialStateKind::HartreeFock,
            var_form: VarFormKind::Uccsd,
            depth: 1,
            optimizer: OptimizerKind::Bfgs,
            backend: BackendKind::Statevector,
            shots: 8192,
            max_iter: 500,
            seed: 0,
            initial_point: InitialPointSpec::Random(0.0, 1.0),
        }
    }
}

impl VqeConfig {
    /// Whether the two-qubit reduction applies after resolution.
    pub fn reduction_active(&self) -> bool {
        self.tqr.unwrap_or(self.mapping == MappingKind::Parity)
    }

    /// Copy with `tqr` resolved to a concrete value.
    pub fn resolved(&self) -> VqeConfig {
        VqeConfig {
            tqr: Some(self.reduction_active()),
            ..self.clone()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.distance.is_finite() || self.distance <= 0.0 {
            return Err(VqeError::Configuration(format!(
                "distance must be positive and finite, got {}",
                self.distance
            )));
        }
        if self.depth < 1 {
            return Err(VqeError::Configuration(
                "circuit depth must be at least 1".into(),
            ));
        }
        if self.backend == BackendKind::Sampled && self.shots == 0 {
            return Err(VqeError::Configuration(
                "sampled backend needs at least one shot".into(),
            ));
        }
        if self.tqr == Some(true) && self.mapping != MappingKind::Parity {
            return Err(VqeError::Configuration(format!(
                "two-qubit reduction requires the parity mapping, got {}",
                self.mapping
            )));
        }
        match &self.initial_point {
            InitialPointSpec::Zeros => {}
            InitialPointSpec::Random(lo, hi) => {
                if !lo.is_finite() || !hi.is_finite() || lo > hi {
                    return Err(VqeError::Configuration(format!(
                        "random initial interval [{lo}, {hi}] is not ordered and finite"
                    )));
                }
            }
            InitialPointSpec::Explicit(v) => {
                if v.iter().any(|x| !x.is_finite()) {
                    return Err(VqeError::Configuration(
                        "explicit initial point has a non-finite entry".into(),
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Optimized energy with its provenance: shift bookkeeping, exact
/// reference, convergence trace, and the resolved configuration echo.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VqeResult {
    pub electronic_energy: f64,
    pub shift: f64,
    pub total_energy: f64,
    pub reference_total_energy: f64,
    pub optimal_parameters: Vec<f64>,
    pub n_evaluations: u64,
    pub trace: Vec<IterationRecord>,
    pub config: VqeConfig,
}

/// Summary row of one scan distance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanPoint {
    pub distance: f64,
    pub vqe_total_energy: f64,
    pub reference_total_energy: f64,
    pub n_evaluations: u64,
}

impl ScanPoint {
    pub fn from_result(r: &VqeResult) -> ScanPoint {
        ScanPoint {
            distance: r.config.distance,
            vqe_total_energy: r.total_energy,
            reference_total_energy: r.reference_total_energy,
            n_evaluations: r.n_evaluations,
        }
    }
}

/// A distance whose calculation failed, with the rendered error.
#[derive(Clone, Debug)]
pub struct ScanFailure {
    pub distance: f64,
    pub message: String,
}

/// Scan results plus any per-point failures; the scan itself keeps going.
#[derive(Clone, Debug, Default)]
pub struct ScanOutcome {
    pub points: Vec<ScanPoint>,
    pub failures: Vec<ScanFailure>,
}

/// Round to 12 significant digits.
fn sig12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

/// Display form of a float in the emitted files: 12 significant digits in
/// the shortest notation that round-trips.
fn fmt12(x: f64) -> String {
    format!("{}", sig12(x))
}

fn round_result(mut r: VqeResult) -> VqeResult {
    r.electronic_energy = sig12(r.electronic_energy);
    r.shift = sig12(r.shift);
    // The exact-sum invariant binds on the stored values, so the total is
    // reassembled after rounding rather than rounded itself.
    r.total_energy = r.electronic_energy + r.shift;
    r.reference_total_energy = sig12(r.reference_total_energy);
    for p in &mut r.optimal_parameters {
        *p = sig12(*p);
    }
    for row in &mut r.trace {
        row.energy = sig12(row.energy);
        row.stddev = sig12(row.stddev);
        for p in &mut row.parameters {
            *p = sig12(*p);
        }
    }
    r
}

struct Problem {
    hamiltonian: QubitHamiltonian,
    circuit: Circuit,
    scf_total_energy: f64,
}

/// Everything up to the optimizer: integrals, mean field, mapping, circuit.
fn build_problem(cfg: &VqeConfig) -> Result<Problem> {
    let reduce = cfg.reduction_active();
    let geometry = MoleculeGeometry::h2(cfg.distance);
    let basis = geometry
        .sto3g_basis()
        .map_err(|e| e.at_stage("integrals"))?;
    let ao = ao_integrals(&basis, &geometry).map_err(|e| e.at_stage("integrals"))?;
    let enuc = nuclear_repulsion(&geometry).map_err(|e| e.at_stage("integrals"))?;
    let scf = rhf_scf(&ao, enuc).map_err(|e| e.at_stage("scf"))?;
    let so = spin_orbital_integrals(&ao, &scf, enuc).map_err(|e| e.at_stage("spin-orbitals"))?;
    let hamiltonian =
        qubit_hamiltonian(&so, cfg.mapping, reduce).map_err(|e| e.at_stage("mapping"))?;

    let initial = match cfg.initial_state {
        InitialStateKind::Zero => zero_state(hamiltonian.n_qubits),
        InitialStateKind::HartreeFock => {
            hartree_fock_circuit(N_SPIN_ORBITALS, N_PARTICLES, cfg.mapping, reduce)
                .map_err(|e| e.at_stage("initial-state"))?
        }
    };
    let n = hamiltonian.n_qubits;
    let circuit = match cfg.var_form {
        VarFormKind::Uccsd => uccsd(
            N_SPIN_ORBITALS,
            N_PARTICLES,
            cfg.mapping,
            reduce,
            cfg.depth,
            &initial,
        ),
        VarFormKind::RealAmplitudes => real_amplitudes(n, cfg.depth, &initial),
        VarFormKind::EfficientSu2 => efficient_su2(n, cfg.depth, &initial),
        VarFormKind::TwoLocal => two_local_ry_rz_cz(n, cfg.depth, &initial),
        VarFormKind::ExcitationPreserving => excitation_preserving(n, cfg.depth, &initial),
    }
    .map_err(|e| e.at_stage("variational-form"))?;

    Ok(Problem {
        hamiltonian,
        circuit,
        scf_total_energy: scf.total_energy,
    })
}

fn starting_point(cfg: &VqeConfig, n_parameters: usize) -> Result<Vec<f64>> {
    let x0 = match &cfg.initial_point {
        InitialPointSpec::Zeros => vec![0.0; n_parameters],
        InitialPointSpec::Random(lo, hi) => {
            let mut rng = rng_from_seed(derive_seed(cfg.seed, "initial-point", 0));
            random_initial_point(n_parameters, &[*lo, *hi], &mut rng)?
        }
        InitialPointSpec::Explicit(v) => {
            if v.len() != n_parameters {
                return Err(VqeError::ArityMismatch {
                    expected: n_parameters,
                    got: v.len(),
                });
            }
            v.clone()
        }
    };
    Ok(x0)
}

fn minimize(cfg: &VqeConfig, problem: &Problem, x0: &[f64]) -> Result<OptResult> {
    let h = &problem.hamiltonian.pauli_sum;
    let circuit = &problem.circuit;
    let seed = cfg.seed;
    let shots = cfg.shots;
    let objective = match cfg.backend {
        BackendKind::Statevector => Objective::new(circuit.n_parameters(), move |x: &[f64], _| {
            let s = simulate(circuit, x)?;
            expectation_exact(&s, h)
        })?,
        BackendKind::Sampled => Objective::new(circuit.n_parameters(), move |x: &[f64], idx| {
            expectation_sampled(circuit, x, h, shots, derive_seed(seed, "eval", idx))
        })?,
    };
    match cfg.optimizer {
        OptimizerKind::Bfgs => {
            let fd = match cfg.backend {
                BackendKind::Statevector => BFGS_FD_STEP_EXACT,
                BackendKind::Sampled => BFGS_FD_STEP_SAMPLED,
            };
            bfgs_fd(objective, x0, cfg.max_iter, BFGS_GTOL, fd)
        }
        OptimizerKind::NelderMead => nelder_mead(objective, x0, cfg.max_iter, NM_XTOL, NM_FTOL),
        OptimizerKind::Spsa => spsa(
            objective,
            x0,
            cfg.max_iter,
            None,
            SPSA_C,
            SPSA_ALPHA,
            SPSA_GAMMA,
            None,
            SPSA_SAVE_STEPS,
            derive_seed(cfg.seed, "spsa", 0),
        ),
    }
}

/// Closing measurement of the optimized parameters.
///
/// The exact backend re-evaluates directly; the sampled backend takes a
/// final reading at ten times the configured shots.
fn final_measure(cfg: &VqeConfig, problem: &Problem, best: &[f64]) -> Result<f64> {
    match cfg.backend {
        BackendKind::Statevector => {
            let s = simulate(&problem.circuit, best)?;
            Ok(expectation_exact(&s, &problem.hamiltonian.pauli_sum)?.value)
        }
        BackendKind::Sampled => Ok(expectation_sampled(
            &problem.circuit,
            best,
            &problem.hamiltonian.pauli_sum,
            cfg.shots.saturating_mul(FINAL_MEASURE_FACTOR),
            derive_seed(cfg.seed, "final-measure", 0),
        )?
        .value),
    }
}

/// One full energy calculation at the configured distance.
pub fn run_point(config: &VqeConfig) -> Result<VqeResult> {
    config.validate()?;
    let cfg = config.resolved();
    let problem = build_problem(&cfg)?;
    let x0 = starting_point(&cfg, problem.circuit.n_parameters())
        .map_err(|e| e.at_stage("initial-point"))?;
    let opt = minimize(&cfg, &problem, &x0).map_err(|e| e.at_stage("optimize"))?;
    let electronic =
        final_measure(&cfg, &problem, &opt.best_parameters).map_err(|e| e.at_stage("final-measure"))?;
    let reference = lowest_eigenvalue(&problem.hamiltonian.pauli_sum)
        .map_err(|e| e.at_stage("reference"))?
        .ground_energy
        + problem.hamiltonian.shift;

    Ok(round_result(VqeResult {
        electronic_energy: electronic,
        shift: problem.hamiltonian.shift,
        total_energy: electronic + problem.hamiltonian.shift,
        reference_total_energy: reference,
        optimal_parameters: opt.best_parameters,
        n_evaluations: opt.n_evaluations,
        trace: opt.trace,
        config: cfg,
    }))
}

/// Mean-field total energy for the configured distance, used by callers
/// comparing against the uncorrelated baseline.
pub fn scf_total_energy(config: &VqeConfig) -> Result<f64> {
    config.validate()?;
    Ok(build_problem(&config.resolved())?.scf_total_energy)
}

fn scan_point_config(base: &VqeConfig, index: usize, distance: f64) -> VqeConfig {
    VqeConfig {
        distance,
        seed: derive_seed(base.seed, "point", index as u64),
        ..base.clone()
    }
}

fn check_distances(distances: &[f64]) -> Result<()> {
    if distances.is_empty() {
        return Err(VqeError::Configuration(
            "scan needs at least one distance".into(),
        ));
    }
    for &d in distances {
        if !d.is_finite() || d <= 0.0 {
            return Err(VqeError::Configuration(format!(
                "scan distances must be positive and finite, got {d}"
            )));
        }
    }
    for pair in distances.windows(2) {
        if pair[1] <= pair[0] {
            return Err(VqeError::Configuration(format!(
                "scan distances must be strictly increasing, got {} after {}",
                pair[1], pair[0]
            )));
        }
    }
    Ok(())
}

/// Energy curve over a list of distances.
///
/// Each distance runs the full point pipeline with a seed derived from
/// the master seed and the point index. Failures are collected, not
/// fatal. With `warm_start` the points run in order and each start is the
/// previous optimum; otherwise points are independent and may run in
/// parallel.
pub fn run_scan(config: &VqeConfig, distances: &[f64], warm_start: bool) -> Result<ScanOutcome> {
    config.validate()?;
    check_distances(distances)?;
    let base = config.resolved();

    let results: Vec<(f64, Result<VqeResult>)> = if warm_start {
        let mut acc = Vec::with_capacity(distances.len());
        let mut carry: Option<Vec<f64>> = None;
        for (i, &d) in distances.iter().enumerate() {
            let mut cfg = scan_point_config(&base, i, d);
            if let Some(previous) = carry.take() {
                cfg.initial_point = InitialPointSpec::Explicit(previous);
            }
            let outcome = run_point(&cfg);
            if let Ok(r) = &outcome {
                carry = Some(r.optimal_parameters.clone());
            }
            acc.push((d, outcome));
        }
        acc
    } else {
        par::map_range(distances.len(), |i| {
            let d = distances[i];
            (d, run_point(&scan_point_config(&base, i, d)))
        })
    };

    let mut outcome = ScanOutcome::default();
    for (distance, r) in results {
        match r {
            Ok(result) => outcome.points.push(ScanPoint::from_result(&result)),
            Err(e) => outcome.failures.push(ScanFailure {
                distance,
                message: e.to_string(),
            }),
        }
    }
    Ok(outcome)
}

/// Serialized result document.
pub fn result_json(result: &VqeResult) -> String {
    let mut s = serde_json::to_string_pretty(result).expect("result serializes");
    s.push('\n');
    s
}

/// Convergence-trace table: `nfev,energy,stddev,p0,p1,...`.
pub fn trace_csv(result: &VqeResult) -> String {
    let n_params = result.optimal_parameters.len();
    let mut out = String::from("nfev,energy,stddev");
    for i in 0..n_params {
        out.push_str(&format!(",p{i}"));
    }
    out.push('\n');
    for row in &result.trace {
        out.push_str(&format!("{}", row.nfev));
        out.push_str(&format!(",{}", fmt12(row.energy)));
        out.push_str(&format!(",{}", fmt12(row.stddev)));
        for p in &row.parameters {
            out.push_str(&format!(",{}", fmt12(*p)));
        }
        out.push('\n');
    }
    out
}

/// Scan-curve table: `distance_angstrom,vqe_total_ha,reference_total_ha,nfev`.
pub fn scan_csv(points: &[ScanPoint]) -> String {
    let mut out = String::from("distance_angstrom,vqe_total_ha,reference_total_ha,nfev\n");
    for p in points {
        out.push_str(&format!(
            "{},{},{},{}\n",
            fmt12(p.distance),
            fmt12(p.vqe_total_energy),
            fmt12(p.reference_total_energy),
            p.n_evaluations
        ));
    }
    out
}

/// Write a text file, reporting failures with the path attached.
pub fn write_text_file(path: &str, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|source| VqeError::Io {
        path: path.to_string(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_match_the_reference_setup() {
        let c = VqeConfig::default();
        assert_eq!(c.distance, 0.74);
        assert_eq!(c.basis, BasisKind::Sto3g);
        assert_eq!(c.mapping, MappingKind::Parity);
        assert_eq!(c.tqr, None);
        assert_eq!(c.initial_state, InitialStateKind::HartreeFock);
        assert_eq!(c.var_form, VarFormKind::Uccsd);
        assert_eq!(c.depth, 1);
        assert_eq!(c.optimizer, OptimizerKind::Bfgs);
        assert_eq!(c.backend, BackendKind::Statevector);
        assert_eq!(c.shots, 8192);
        assert_eq!(c.max_iter, 500);
        assert_eq!(c.initial_point, InitialPointSpec::Random(0.0, 1.0));
        assert!(c.validate().is_ok());
    }

    #[test]
    fn reduction_resolves_from_the_mapping() {
        let c = VqeConfig::default();
        assert!(c.reduction_active());
        assert_eq!(c.resolved().tqr, Some(true));

        let jw = VqeConfig {
            mapping: MappingKind::JordanWigner,
            ..VqeConfig::default()
        };
        assert!(!jw.reduction_active());
        assert_eq!(jw.resolved().tqr, Some(false));
    }

    #[test]
    fn invalid_configurations_are_rejected_up_front() {
        let bad = |f: fn(&mut VqeConfig)| {
            let mut c = VqeConfig::default();
            f(&mut c);
            c.validate().unwrap_err()
        };
        let e = bad(|c| {
            c.tqr = Some(true);
            c.mapping = MappingKind::JordanWigner;
        });
        assert_eq!(e.exit_code(), 1);
        assert!(matches!(bad(|c| c.distance = 0.0), VqeError::Configuration(_)));
        assert!(matches!(bad(|c| c.distance = f64::NAN), VqeError::Configuration(_)));
        assert!(matches!(bad(|c| c.depth = 0), VqeError::Configuration(_)));
        assert!(matches!(
            bad(|c| {
                c.backend = BackendKind::Sampled;
                c.shots = 0;
            }),
            VqeError::Configuration(_)
        ));
        assert!(matches!(
            bad(|c| c.initial_point = InitialPointSpec::Random(1.0, 0.0)),
            VqeError::Configuration(_)
        ));
        assert!(matches!(
            bad(|c| c.initial_point = InitialPointSpec::Explicit(vec![f64::INFINITY])),
            VqeError::Configuration(_)
        ));
    }

    #[test]
    fn enum_text_forms_accept_underscores_and_hyphens() {
        assert_eq!("nelder_mead".parse::<OptimizerKind>().unwrap(), OptimizerKind::NelderMead);
        assert_eq!("nelder-mead".parse::<OptimizerKind>().unwrap(), OptimizerKind::NelderMead);
        assert_eq!("efficient_su2".parse::<VarFormKind>().unwrap(), VarFormKind::EfficientSu2);
        assert_eq!(
            "excitation_preserving".parse::<VarFormKind>().unwrap(),
            VarFormKind::ExcitationPreserving
        );
        assert_eq!("hartree_fock".parse::<InitialStateKind>().unwrap(), InitialStateKind::HartreeFock);
        assert_eq!("SPSA".parse::<OptimizerKind>().unwrap(), OptimizerKind::Spsa);
        assert!("cobyla".parse::<OptimizerKind>().is_err());
        assert_eq!(VarFormKind::EfficientSu2.to_string(), "efficient-su2");
    }

    #[test]
    fn twelve_digit_rounding_is_idempotent() {
        let x = -1.1372838344883185;
        let r = sig12(x);
        assert_eq!(sig12(r), r);
        assert!((r - x).abs() < 1e-11);
        assert_eq!(sig12(0.0), 0.0);
        assert_eq!(fmt12(0.74), "0.74");
        assert_eq!(sig12(f64::INFINITY), f64::INFINITY);
    }

    #[test]
    fn distance_lists_are_validated() {
        assert!(check_distances(&[]).is_err());
        assert!(check_distances(&[0.3, 0.3]).is_err());
        assert!(check_distances(&[0.5, 0.4]).is_err());
        assert!(check_distances(&[-0.1, 0.4]).is_err());
        assert!(check_distances(&[0.3, 0.4, 2.5]).is_ok());
    }

    #[test]
    fn csv_emitters_follow_the_declared_schemas() {
        let result = VqeResult {
            electronic_energy: -1.25,
            shift: 0.5,
            total_energy: -0.75,
            reference_total_energy: -0.7500001,
            optimal_parameters: vec![0.1, -0.2],
            n_evaluations: 7,
            trace: vec![
                IterationRecord {
                    nfev: 3,
                    parameters: vec![0.0, 0.0],
                    energy: -1.0,
                    stddev: 0.0,
                },
                IterationRecord {
                    nfev: 7,
                    parameters: vec![0.1, -0.2],
                    energy: -1.25,
                    stddev: 0.0,
                },
            ],
            config: VqeConfig::default().resolved(),
        };
        let csv = trace_csv(&result);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "nfev,energy,stddev,p0,p1");
        assert_eq!(lines.len(), 1 + result.trace.len());
        assert_eq!(lines[2], "7,-1.25,0,0.1,-0.2");

        let points = vec![ScanPoint::from_result(&result)];
        let scan = scan_csv(&points);
        let lines: Vec<&str> = scan.lines().collect();
        assert_eq!(
            lines[0],
            "distance_angstrom,vqe_total_ha,reference_total_ha,nfev"
        );
        assert_eq!(lines[1], "0.74,-0.75,-0.7500001,7");
    }

    #[test]
    fn config_serde_round_trips_with_kebab_names() {
        let c = VqeConfig {
            mapping: MappingKind::BravyiKitaev,
            tqr: Some(false),
            var_form: VarFormKind::ExcitationPreserving,
            optimizer: OptimizerKind::NelderMead,
            initial_point: InitialPointSpec::Explicit(vec![0.25, -1.5]),
            ..VqeConfig::default()
        };
        let text = serde_json::to_string(&c).unwrap();
        assert!(text.contains("\"bravyi-kitaev\""));
        assert!(text.contains("\"excitation-preserving\""));
        assert!(text.contains("\"nelder-mead\""));
        let back: VqeConfig = serde_json::from_str(&text).unwrap();
        assert_eq!(back, c);

        // Omitted fields fall back to defaults.
        let sparse: VqeConfig = serde_json::from_str("{\"distance\": 1.2}").unwrap();
        assert_eq!(sparse.distance, 1.2);
        assert_eq!(sparse.mapping, MappingKind::Parity);
    }
}
