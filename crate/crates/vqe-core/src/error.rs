use thiserror::Error;

/// Unified error type for the whole engine.
///
/// Variants are grouped roughly by pipeline stage; `exit_code` maps them onto
/// the process exit conventions used by the command line front end.
#[derive(Debug, Error)]
pub enum VqeError {
    #[error("Boys function argument must be non-negative, got {0}")]
    NegativeBoysArgument(f64),

    #[error("unsupported element Z={0}; only hydrogen is available in this basis")]
    UnsupportedElement(u32),

    #[error("nuclei {0} and {1} are closer than the supported minimum separation")]
    CoincidentNuclei(usize, usize),

    #[error("SCF did not converge within {iterations} iterations (last energy {last_energy} Ha)")]
    ScfNotConverged { iterations: usize, last_energy: f64 },

    #[error("overlap matrix is not positive definite (smallest eigenvalue {0})")]
    OverlapNotPositive(f64),

    #[error("integral tensor violates a required symmetry by {0:e}")]
    SymmetryViolation(f64),

    #[error("qubit counts differ: {0} vs {1}")]
    QubitCountMismatch(usize, usize),

    #[error("{0} qubits exceeds the dense-representation cap of {1}")]
    ResourceCap(usize, usize),

    #[error("operator is not Hermitian within {0:e}")]
    NotHermitian(f64),

    #[error("invalid Pauli text input: {0}")]
    PauliParse(String),

    #[error("mode index {mode} out of range for {n_modes} modes")]
    ModeOutOfRange { mode: usize, n_modes: usize },

    #[error("two-qubit reduction needs I or Z on qubit {qubit}, found {letter}")]
    ReductionSymmetry { qubit: usize, letter: char },

    #[error("qubit {qubit} out of range for a {n_qubits}-qubit circuit")]
    QubitOutOfRange { qubit: usize, n_qubits: usize },

    #[error("parameter slot {slot} out of range for {n_parameters} parameters")]
    ParameterOutOfRange { slot: usize, n_parameters: usize },

    #[error("binding vector has length {got}, circuit declares {expected} parameters")]
    BindingLength { expected: usize, got: usize },

    #[error("no excitations available for {particles} particles in {orbitals} spin orbitals")]
    EmptyVariationalForm { particles: usize, orbitals: usize },

    #[error("objective arity is {expected}, got a point of length {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("sampling requires at least one shot")]
    ZeroShots,

    #[error("configuration error: {0}")]
    Configuration(String),

    #[error("eigensolver failed to converge after {0} sweeps")]
    EigenNotConverged(usize),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("{stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<VqeError>,
    },
}

impl VqeError {
    /// Attach a pipeline stage tag, preserving the original error as the source.
    pub fn at_stage(self, stage: &'static str) -> VqeError {
        VqeError::Stage {
            stage,
            source: Box::new(self),
        }
    }

    /// Process exit code: 1 for configuration problems, 2 for numerical or
    /// runtime failures. Scan drivers map partial failures to 3 themselves.
    pub fn exit_code(&self) -> i32 {
        match self {
            VqeError::Configuration(_) => 1,
            VqeError::Stage { source, .. } => source.exit_code(),
            _ => 2,
        }
    }
}

/// Convenience alias used across the crate.
pub type Result<T> = std::result::Result<T, VqeError>;
