use serde::{Deserialize, Serialize};

use crate::tensor::ComplexMatrix;
use crate::weyl::{check_dim, fourier, fourier_dagger, reduce_power, swap_gate, x_power, z_power};
use crate::{Error, Result, C64, DEFAULT_TOL};

/// What a gate does to its target wires, before any control is applied.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "params", rename_all = "snake_case")]
pub enum GateKind {
    XPower {
        power: usize,
    },
    ZPower {
        power: usize,
    },
    Fourier,
    FourierDagger,
    /// `diag(e^{iφ_0}, ..., e^{iφ_{d-1}})`.
    DiagonalPhase {
        phases: Vec<f64>,
    },
    Swap,
    /// `e^{iφ}` on zero target wires; with level controls it becomes a
    /// conditional phase.
    ScalarPhase {
        phase: f64,
    },
    /// Dense unitary on the targets, first target most significant.
    Unitary {
        label: String,
        matrix: ComplexMatrix,
    },
}

impl GateKind {
    fn target_count(&self, d: usize) -> Result<usize> {
        Ok(match self {
            Self::XPower { .. } | Self::ZPower { .. } | Self::Fourier | Self::FourierDagger => 1,
            Self::DiagonalPhase { .. } => 1,
            Self::Swap => 2,
            Self::ScalarPhase { .. } => 0,
            Self::Unitary { matrix, .. } => {
                let mut wires = 0;
                let mut dim = 1;
                while dim < matrix.dim() {
                    dim *= d;
                    wires += 1;
                }
                if dim != matrix.dim() {
                    return Err(Error::Structure(format!(
                        "unitary of dimension {} is not a power of {d}",
                        matrix.dim()
                    )));
                }
                wires
            }
        })
    }

    fn target_matrix(&self, d: usize) -> Result<ComplexMatrix> {
        match self {
            Self::XPower { power } => x_power(d, *power as i64),
            Self::ZPower { power } => z_power(d, *power as i64),
            Self::Fourier => fourier(d),
            Self::FourierDagger => fourier_dagger(d),
            Self::DiagonalPhase { phases } => {
                Ok(ComplexMatrix::diagonal(&phases.iter().map(|&p| C64::from_polar(1.0, p)).collect::<Vec<_>>()))
            }
            Self::Swap => swap_gate(d),
            Self::ScalarPhase { phase } => Ok(ComplexMatrix::diagonal(&[C64::from_polar(1.0, *phase)])),
            Self::Unitary { matrix, .. } => Ok(matrix.clone()),
        }
    }

    fn dagger(&self, d: usize) -> Self {
        match self {
            Self::XPower { power } => Self::XPower { power: (d - power % d) % d },
            Self::ZPower { power } => Self::ZPower { power: (d - power % d) % d },
            Self::Fourier => Self::FourierDagger,
            Self::FourierDagger => Self::Fourier,
            Self::DiagonalPhase { phases } => Self::DiagonalPhase { phases: phases.iter().map(|p| -p).collect() },
            Self::Swap => Self::Swap,
            Self::ScalarPhase { phase } => Self::ScalarPhase { phase: -phase },
            Self::Unitary { label, matrix } => Self::Unitary { label: format!("{label}†"), matrix: matrix.adjoint() },
        }
    }
}

/// One gate of a circuit.
///
/// Controls come in two flavours. With `control_levels` empty, a single
/// control `j` applies the target operation `j` times (`C(U)|j⟩|k⟩ =
/// |j⟩U^j|k⟩`). With one level per control, the target operation is applied
/// once when every control sits at its level and not at all otherwise.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GateOp {
    #[serde(flatten)]
    pub kind: GateKind,
    pub targets: Vec<String>,
    pub controls: Vec<String>,
    pub control_levels: Vec<usize>,
}

fn strings<S: Into<String>>(wires: impl IntoIterator<Item = S>) -> Vec<String> {
    wires.into_iter().map(Into::into).collect()
}

impl GateOp {
    pub fn single(kind: GateKind, target: impl Into<String>) -> Self {
        Self { kind, targets: vec![target.into()], controls: vec![], control_levels: vec![] }
    }

    pub fn x_power(d: usize, power: i64, target: impl Into<String>) -> Self {
        Self::single(GateKind::XPower { power: reduce_power(d, power) }, target)
    }

    pub fn z_power(d: usize, power: i64, target: impl Into<String>) -> Self {
        Self::single(GateKind::ZPower { power: reduce_power(d, power) }, target)
    }

    pub fn fourier(target: impl Into<String>) -> Self {
        Self::single(GateKind::Fourier, target)
    }

    pub fn fourier_dagger(target: impl Into<String>) -> Self {
        Self::single(GateKind::FourierDagger, target)
    }

    pub fn diagonal_phase(phases: Vec<f64>, target: impl Into<String>) -> Self {
        Self::single(GateKind::DiagonalPhase { phases }, target)
    }

    pub fn swap(a: impl Into<String>, b: impl Into<String>) -> Self {
        Self { kind: GateKind::Swap, targets: vec![a.into(), b.into()], controls: vec![], control_levels: vec![] }
    }

    pub fn scalar_phase(phase: f64) -> Self {
        Self { kind: GateKind::ScalarPhase { phase }, targets: vec![], controls: vec![], control_levels: vec![] }
    }

    pub fn unitary<S: Into<String>>(
        label: impl Into<String>,
        matrix: ComplexMatrix,
        targets: impl IntoIterator<Item = S>,
    ) -> Self {
        Self {
            kind: GateKind::Unitary { label: label.into(), matrix },
            targets: strings(targets),
            controls: vec![],
            control_levels: vec![],
        }
    }

    /// Power control: `|j⟩_control` applies the operation `j` times.
    pub fn power_controlled(mut self, control: impl Into<String>) -> Self {
        self.controls = vec![control.into()];
        self.control_levels.clear();
        self
    }

    /// Level controls: the operation fires only when each control is at its
    /// level.
    pub fn level_controlled<S: Into<String>>(mut self, controls: impl IntoIterator<Item = (S, usize)>) -> Self {
        let (c, l): (Vec<_>, Vec<_>) = controls.into_iter().map(|(w, lvl)| (w.into(), lvl)).unzip();
        self.controls = c;
        self.control_levels = l;
        self
    }

    pub fn is_power_controlled(&self) -> bool {
        !self.controls.is_empty() && self.control_levels.is_empty()
    }

    /// Controls first, then targets: the wire order of [`GateOp::matrix`].
    pub fn wires(&self) -> Vec<&str> {
        self.controls.iter().chain(&self.targets).map(String::as_str).collect()
    }

    pub fn arity(&self) -> usize {
        self.controls.len() + self.targets.len()
    }

    /// Checks wire distinctness, target count, power/level ranges, finite
    /// phases and unitarity of dense payloads.
    pub fn validate(&self, d: usize) -> Result<()> {
        check_dim(d)?;
        let wires = self.wires();
        for (i, w) in wires.iter().enumerate() {
            if wires[..i].contains(w) {
                return Err(Error::DuplicateWire(w.to_string()));
            }
        }
        let expected = self.kind.target_count(d)?;
        if self.targets.len() != expected {
            return Err(Error::Structure(format!("gate expects {expected} targets, got {}", self.targets.len())));
        }
        match &self.kind {
            GateKind::XPower { power } | GateKind::ZPower { power } if *power >= d => {
                return Err(Error::InvalidParameter(format!("power {power} not reduced mod {d}")));
            }
            GateKind::DiagonalPhase { phases } if phases.len() != d || phases.iter().any(|p| !p.is_finite()) => {
                return Err(Error::InvalidParameter("diagonal phase needs d finite phases".into()));
            }
            GateKind::ScalarPhase { phase } if !phase.is_finite() => {
                return Err(Error::InvalidParameter("scalar phase is not finite".into()));
            }
            GateKind::Unitary { matrix, .. } => {
                let report = matrix.is_unitary(DEFAULT_TOL);
                if !report.unitary {
                    return Err(Error::NotUnitary(report.max_deviation));
                }
            }
            _ => {}
        }
        if self.is_power_controlled() && self.controls.len() != 1 {
            return Err(Error::Structure("power control takes exactly one control wire".into()));
        }
        if !self.control_levels.is_empty() {
            if self.control_levels.len() != self.controls.len() {
                return Err(Error::Structure("one level per control wire".into()));
            }
            if let Some(&l) = self.control_levels.iter().find(|&&l| l >= d) {
                return Err(Error::InvalidParameter(format!("control level {l} out of range for d = {d}")));
            }
        }
        Ok(())
    }

    /// Dense matrix on [`GateOp::wires`].
    pub fn matrix(&self, d: usize) -> Result<ComplexMatrix> {
        self.validate(d)?;
        let u = self.kind.target_matrix(d)?;
        if self.controls.is_empty() {
            return Ok(u);
        }
        let t = u.dim();
        let blocks = d.pow(self.controls.len() as u32);
        let fired = if self.is_power_controlled() {
            None
        } else {
            Some(self.control_levels.iter().fold(0, |acc, &l| acc * d + l))
        };
        let mut m = ComplexMatrix::zeros(blocks * t);
        let id = ComplexMatrix::identity(t);
        for b in 0..blocks {
            let block = match fired {
                None => u.pow(b as u32),
                Some(f) if f == b => u.clone(),
                Some(_) => id.clone(),
            };
            for r in 0..t {
                for c in 0..t {
                    m[(b * t + r, b * t + c)] = block[(r, c)];
                }
            }
        }
        Ok(m)
    }

    /// The inverse gate on the same wires.
    pub fn dagger(&self, d: usize) -> Self {
        Self { kind: self.kind.dagger(d), ..self.clone() }
    }
}
