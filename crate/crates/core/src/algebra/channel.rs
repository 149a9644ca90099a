//! Quantum channels in Kraus form.

use serde::{Deserialize, Serialize};

use super::density::{check_density, DensityMatrix};
use super::matrix::{rotation_unitary, ComplexMatrix};
use crate::error::{QorwError, Result};
use crate::tolerance::TOL;

/// Serializable description of a channel, as it appears in model documents.
///
/// Unitary and mixing channels take either a rotation angle `theta`
/// (meaning `exp(iθσ₂)`) or an explicit `matrix`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ChannelSpec {
    Unitary {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        theta: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        matrix: Option<ComplexMatrix>,
    },
    AmplitudeDamping {
        decay: f64,
    },
    Mixing {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        theta: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        matrix: Option<ComplexMatrix>,
        p: f64,
    },
    KrausList {
        kraus: Vec<ComplexMatrix>,
    },
}

impl ChannelSpec {
    pub fn build(&self) -> Result<KrausChannel> {
        fn pick(theta: Option<f64>, matrix: &Option<ComplexMatrix>) -> Result<ComplexMatrix> {
            match (theta, matrix) {
                (Some(t), None) => Ok(rotation_unitary(t)),
                (None, Some(m)) => Ok(m.clone()),
                _ => Err(QorwError::Parse(
                    "exactly one of `theta` or `matrix` must be given".into(),
                )),
            }
        }
        match self {
            ChannelSpec::Unitary { theta, matrix } => {
                let mut ch = KrausChannel::unitary(pick(*theta, matrix)?)?;
                ch.spec = self.clone();
                Ok(ch)
            }
            ChannelSpec::AmplitudeDamping { decay } => KrausChannel::amplitude_damping(*decay),
            ChannelSpec::Mixing { theta, matrix, p } => {
                let mut ch = KrausChannel::mixing(&pick(*theta, matrix)?, *p)?;
                ch.spec = self.clone();
                Ok(ch)
            }
            ChannelSpec::KrausList { kraus } => KrausChannel::new(kraus.clone(), "kraus_list"),
        }
    }
}

/// Outcome of a completeness check `Σ K†K = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CptpReport {
    pub pass: bool,
    pub deviation: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct KrausChannel {
    kraus: Vec<ComplexMatrix>,
    label: String,
    spec: ChannelSpec,
}

impl KrausChannel {
    /// A channel from an explicit Kraus list. Only structure is checked here;
    /// call [`KrausChannel::validate`] for completeness.
    pub fn new(kraus: Vec<ComplexMatrix>, label: impl Into<String>) -> Result<Self> {
        let Some(first) = kraus.first() else {
            return Err(QorwError::Structural("channel needs at least one Kraus matrix".into()));
        };
        let dim = first.dim();
        if let Some(bad) = kraus.iter().find(|k| k.dim() != dim) {
            return Err(QorwError::Structural(format!(
                "Kraus matrices mix dimensions {dim} and {}",
                bad.dim()
            )));
        }
        if kraus.iter().any(|k| !k.is_finite()) {
            return Err(QorwError::Numeric("Kraus matrix has non-finite entries".into()));
        }
        Ok(Self {
            spec: ChannelSpec::KrausList {
                kraus: kraus.clone(),
            },
            kraus,
            label: label.into(),
        })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            kraus: vec![ComplexMatrix::identity(dim)],
            label: "identity".into(),
            spec: ChannelSpec::Unitary {
                theta: None,
                matrix: Some(ComplexMatrix::identity(dim)),
            },
        }
    }

    /// Conjugation by a single unitary.
    pub fn unitary(u: ComplexMatrix) -> Result<Self> {
        let dev = u.unitarity_deviation();
        if dev > TOL.unitary {
            return Err(QorwError::Parameter(format!(
                "matrix is not unitary (deviation {dev:.3e})"
            )));
        }
        Ok(Self {
            spec: ChannelSpec::Unitary {
                theta: None,
                matrix: Some(u.clone()),
            },
            kraus: vec![u],
            label: "unitary".into(),
        })
    }

    /// Conjugation by the coin rotation `exp(iθσ₂)`.
    pub fn rotation(theta: f64) -> Self {
        Self {
            kraus: vec![rotation_unitary(theta)],
            label: format!("rotation({theta})"),
            spec: ChannelSpec::Unitary {
                theta: Some(theta),
                matrix: None,
            },
        }
    }

    /// Spontaneous decay of the upper coin level `|+⟩` with probability `decay`:
    /// `S₀ = diag(√(1−decay), 1)`, `S₁ = √decay |−⟩⟨+|`.
    pub fn amplitude_damping(decay: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&decay) {
            return Err(QorwError::Parameter(format!("decay {decay} outside [0, 1]")));
        }
        let s0 = ComplexMatrix::from_real_rows(&[[(1.0 - decay).sqrt(), 0.0], [0.0, 1.0]]);
        let s1 = ComplexMatrix::from_real_rows(&[[0.0, 0.0], [decay.sqrt(), 0.0]]);
        Ok(Self {
            kraus: vec![s0, s1],
            label: format!("amplitude_damping({decay})"),
            spec: ChannelSpec::AmplitudeDamping { decay },
        })
    }

    /// Amplitude damping after time `t` at rate `rate`, with surviving upper
    /// population `e^{−2·rate·t}`. Composes additively in `t`.
    pub fn amplitude_damping_from_rate(rate: f64, t: f64) -> Result<Self> {
        if !(rate >= 0.0 && t >= 0.0 && (rate * t).is_finite()) {
            return Err(QorwError::Parameter(format!(
                "rate {rate} and time {t} must be finite and non-negative"
            )));
        }
        Self::amplitude_damping(1.0 - (-2.0 * rate * t).exp())
    }

    /// `{√(1−p)·1, √p·u}`: apply `u` with probability `p`.
    pub fn mixing(u: &ComplexMatrix, p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(QorwError::Parameter(format!("mixing probability {p} outside [0, 1]")));
        }
        let dev = u.unitarity_deviation();
        if dev > TOL.unitary {
            return Err(QorwError::Parameter(format!(
                "mixing matrix is not unitary (deviation {dev:.3e})"
            )));
        }
        Ok(Self {
            kraus: vec![
                ComplexMatrix::identity(u.dim()).scale_real((1.0 - p).sqrt()),
                u.scale_real(p.sqrt()),
            ],
            label: format!("mixing(p={p})"),
            spec: ChannelSpec::Mixing {
                theta: None,
                matrix: Some(u.clone()),
                p,
            },
        })
    }

    pub fn kraus(&self) -> &[ComplexMatrix] {
        &self.kraus
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn spec(&self) -> &ChannelSpec {
        &self.spec
    }

    pub fn dim(&self) -> usize {
        self.kraus[0].dim()
    }

    /// The unitary when the channel is a single unitary Kraus matrix.
    pub fn as_unitary(&self) -> Option<&ComplexMatrix> {
        match self.kraus.as_slice() {
            [u] if u.unitarity_deviation() <= TOL.unitary => Some(u),
            _ => None,
        }
    }

    /// Completeness check `Σ K†K = 1`.
    pub fn validate(&self) -> CptpReport {
        let n = self.dim();
        let mut sum = ComplexMatrix::zeros(n);
        for k in &self.kraus {
            sum = &sum + &(&k.adjoint() * k);
        }
        let deviation = sum.max_abs_diff(&ComplexMatrix::identity(n));
        CptpReport {
            pass: deviation <= TOL.completeness,
            deviation,
        }
    }

    /// `Σ K X K†` for any operator `X`, density matrix or not.
    pub fn apply_to(&self, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        if x.dim() != self.dim() {
            return Err(QorwError::Structural(format!(
                "channel acts on dimension {}, operand has {}",
                self.dim(),
                x.dim()
            )));
        }
        let mut out = ComplexMatrix::zeros(x.dim());
        for k in &self.kraus {
            out = &out + &x.conjugate_by(k);
        }
        Ok(out)
    }

    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        let out = self.apply_to(rho.matrix())?;
        check_density(&out)?;
        Ok(DensityMatrix::new_unchecked(out))
    }

    /// `self ∘ other`: Kraus set `{A_i B_j}`.
    pub fn compose(&self, other: &KrausChannel) -> Result<KrausChannel> {
        if self.dim() != other.dim() {
            return Err(QorwError::Structural(format!(
                "cannot compose channels on dimensions {} and {}",
                self.dim(),
                other.dim()
            )));
        }
        let kraus: Vec<ComplexMatrix> = self
            .kraus
            .iter()
            .flat_map(|a| other.kraus.iter().map(move |b| a * b))
            .collect();
        KrausChannel::new(kraus, format!("{}∘{}", self.label, other.label))
    }
}

/// Free-function form of [`KrausChannel::validate`] that also rejects
/// structurally broken Kraus lists.
pub fn validate_cptp(kraus: &[ComplexMatrix]) -> Result<CptpReport> {
    Ok(KrausChannel::new(kraus.to_vec(), "kraus_list")?.validate())
}
