//! Gate-level circuits with named parameter slots.
//!
//! Circuits are built through validating append methods and are immutable
//! once handed out. Angles either carry a fixed value or reference a
//! parameter slot with a scale factor, so one bound vector drives every
//! rotation that shares an amplitude.

use crate::error::{Result, VqeError};
use std::fmt;

/// Gate alphabet. One- and two-qubit only.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GateKind {
    X,
    H,
    S,
    Sdg,
    Rx,
    Ry,
    Rz,
    Cx,
    Cz,
    XxPlusYy,
}

impl GateKind {
    pub fn name(self) -> &'static str {
        match self {
            GateKind::X => "x",
            GateKind::H => "h",
            GateKind::S => "s",
            GateKind::Sdg => "sdg",
            GateKind::Rx => "rx",
            GateKind::Ry => "ry",
            GateKind::Rz => "rz",
            GateKind::Cx => "cx",
            GateKind::Cz => "cz",
            GateKind::XxPlusYy => "xxplusyy",
        }
    }
}

/// Rotation angle: a literal value or `scale * parameters[slot]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Angle {
    Fixed(f64),
    Param { slot: usize, scale: f64 },
}

impl Angle {
    pub fn resolve(&self, bindings: &[f64]) -> f64 {
        match *self {
            Angle::Fixed(v) => v,
            Angle::Param { slot, scale } => scale * bindings[slot],
        }
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Angle::Fixed(v) => write!(f, "{v}"),
            Angle::Param { slot, scale } => {
                if scale == 1.0 {
                    write!(f, "p[{slot}]")
                } else if scale == -1.0 {
                    write!(f, "-p[{slot}]")
                } else {
                    write!(f, "{scale}*p[{slot}]")
                }
            }
        }
    }
}

/// One gate. `qubit2` is set exactly for the two-qubit kinds, `angle`
/// exactly for the rotation kinds.
#[derive(Clone, Copy, Debug)]
pub struct Gate {
    pub kind: GateKind,
    pub qubit: usize,
    pub qubit2: Option<usize>,
    pub angle: Option<Angle>,
}

/// Ordered gate list on a fixed register with a fixed parameter count.
#[derive(Clone, Debug)]
pub struct Circuit {
    n_qubits: usize,
    n_parameters: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(n_qubits: usize, n_parameters: usize) -> Circuit {
        Circuit {
            n_qubits,
            n_parameters,
            gates: Vec::new(),
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn n_parameters(&self) -> usize {
        self.n_parameters
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    fn check_qubit(&self, qubit: usize) -> Result<()> {
        if qubit >= self.n_qubits {
            return Err(VqeError::QubitOutOfRange {
                qubit,
                n_qubits: self.n_qubits,
            });
        }
        Ok(())
    }

    fn check_angle(&self, angle: &Angle) -> Result<()> {
        if let Angle::Param { slot, .. } = *angle {
            if slot >= self.n_parameters {
                return Err(VqeError::ParameterOutOfRange {
                    slot,
                    n_parameters: self.n_parameters,
                });
            }
        }
        Ok(())
    }

    fn push_single(&mut self, kind: GateKind, qubit: usize) -> Result<()> {
        self.check_qubit(qubit)?;
        self.gates.push(Gate {
            kind,
            qubit,
            qubit2: None,
            angle: None,
        });
        Ok(())
    }

    fn push_rotation(&mut self, kind: GateKind, qubit: usize, angle: Angle) -> Result<()> {
        self.check_qubit(qubit)?;
        self.check_angle(&angle)?;
        self.gates.push(Gate {
            kind,
            qubit,
            qubit2: None,
            angle: Some(angle),
        });
        Ok(())
    }

    fn push_pair(
        &mut self,
        kind: GateKind,
        qubit: usize,
        qubit2: usize,
        angle: Option<Angle>,
    ) -> Result<()> {
        self.check_qubit(qubit)?;
        self.check_qubit(qubit2)?;
        if qubit == qubit2 {
            return Err(VqeError::Configuration(format!(
                "two-qubit gate needs distinct qubits, got {qubit} twice"
            )));
        }
        if let Some(a) = &angle {
            self.check_angle(a)?;
        }
        self.gates.push(Gate {
            kind,
            qubit,
            qubit2: Some(qubit2),
            angle,
        });
        Ok(())
    }

    pub fn push_x(&mut self, qubit: usize) -> Result<()> {
        self.push_single(GateKind::X, qubit)
    }

    pub fn push_h(&mut self, qubit: usize) -> Result<()> {
        self.push_single(GateKind::H, qubit)
    }

    pub fn push_s(&mut self, qubit: usize) -> Result<()> {
        self.push_single(GateKind::S, qubit)
    }

    pub fn push_sdg(&mut self, qubit: usize) -> Result<()> {
        self.push_single(GateKind::Sdg, qubit)
    }

    pub fn push_rx(&mut self, qubit: usize, angle: Angle) -> Result<()> {
        self.push_rotation(GateKind::Rx, qubit, angle)
    }

    pub fn push_ry(&mut self, qubit: usize, angle: Angle) -> Result<()> {
        self.push_rotation(GateKind::Ry, qubit, angle)
    }

    pub fn push_rz(&mut self, qubit: usize, angle: Angle) -> Result<()> {
        self.push_rotation(GateKind::Rz, qubit, angle)
    }

    pub fn push_cx(&mut self, control: usize, target: usize) -> Result<()> {
        self.push_pair(GateKind::Cx, control, target, None)
    }

    pub fn push_cz(&mut self, qubit: usize, qubit2: usize) -> Result<()> {
        self.push_pair(GateKind::Cz, qubit, qubit2, None)
    }

    pub fn push_xx_plus_yy(&mut self, qubit: usize, qubit2: usize, angle: Angle) -> Result<()> {
        self.push_pair(GateKind::XxPlusYy, qubit, qubit2, Some(angle))
    }

    /// Append a parameter-free circuit on the same register (state
    /// preparation in front of a variational form).
    pub fn append_prepared(&mut self, prep: &Circuit) -> Result<()> {
        if prep.n_qubits != self.n_qubits {
            return Err(VqeError::QubitCountMismatch(prep.n_qubits, self.n_qubits));
        }
        if prep.n_parameters != 0 {
            return Err(VqeError::Configuration(
                "state-preparation circuit must be parameter-free".into(),
            ));
        }
        self.gates.extend(prep.gates.iter().copied());
        Ok(())
    }

    /// True when every slot below `n_parameters` appears in some angle.
    pub fn references_all_parameters(&self) -> bool {
        let mut seen = vec![false; self.n_parameters];
        for g in &self.gates {
            if let Some(Angle::Param { slot, .. }) = g.angle {
                seen[slot] = true;
            }
        }
        seen.iter().all(|&s| s)
    }

    /// Stable text dump, one gate per line.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for g in &self.gates {
            out.push_str(g.kind.name());
            out.push(' ');
            out.push_str(&g.qubit.to_string());
            if let Some(q2) = g.qubit2 {
                out.push(' ');
                out.push_str(&q2.to_string());
            }
            if let Some(a) = &g.angle {
                out.push(' ');
                out.push_str(&a.to_string());
            }
            out.push('\n');
        }
        out
    }
}
