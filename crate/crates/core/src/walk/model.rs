//! Walk models and their document form.

use std::f64::consts::FRAC_PI_4;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::{ChannelSpec, ComplexMatrix, DensityMatrix, KrausChannel};
use crate::error::{QorwError, Result};
use crate::tolerance::TOL;

/// A `V^k` walk: each step applies `k` rounds of (coin channel, conditional
/// shift) to a fresh coin, optionally preceded by an entry channel, and then
/// discards the coin.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkModel {
    label: String,
    quantizers: Vec<KrausChannel>,
    entry_channel: Option<KrausChannel>,
    coin_init: DensityMatrix,
}

impl WalkModel {
    pub fn new(
        label: impl Into<String>,
        quantizers: Vec<KrausChannel>,
        entry_channel: Option<KrausChannel>,
        coin_init: DensityMatrix,
    ) -> Result<Self> {
        if quantizers.is_empty() {
            return Err(QorwError::Parameter("a walk needs k ≥ 1 sub-steps".into()));
        }
        if coin_init.dim() != 2 {
            return Err(QorwError::Structural("coin state must be 2×2".into()));
        }
        for (idx, ch) in quantizers.iter().chain(entry_channel.iter()).enumerate() {
            if ch.dim() != 2 {
                return Err(QorwError::Structural(format!(
                    "channel #{idx} ({}) acts on dimension {}, not the coin",
                    ch.label(),
                    ch.dim()
                )));
            }
            let report = ch.validate();
            if !report.pass {
                return Err(QorwError::Parameter(format!(
                    "channel {} is not trace preserving (deviation {:.3e})",
                    ch.label(),
                    report.deviation
                )));
            }
        }
        Ok(Self {
            label: label.into(),
            quantizers,
            entry_channel,
            coin_init,
        })
    }

    /// A U-quantized model: the same unitary reshuffle before each of `k` shifts.
    pub fn u_quantized(
        label: impl Into<String>,
        k: usize,
        reshuffle: KrausChannel,
        coin_init: DensityMatrix,
    ) -> Result<Self> {
        if reshuffle.as_unitary().is_none() {
            return Err(QorwError::Parameter("reshuffle channel must be a single unitary".into()));
        }
        Self::new(label, vec![reshuffle; k], None, coin_init)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Number of coin/shift rounds per walk step.
    pub fn k(&self) -> usize {
        self.quantizers.len()
    }

    pub fn quantizers(&self) -> &[KrausChannel] {
        &self.quantizers
    }

    pub fn entry_channel(&self) -> Option<&KrausChannel> {
        self.entry_channel.as_ref()
    }

    pub fn coin_init(&self) -> &DensityMatrix {
        &self.coin_init
    }

    /// The coin as it meets the first shift: the entry channel applied to `ρ_c`.
    pub fn entering_coin(&self) -> DensityMatrix {
        match &self.entry_channel {
            Some(ch) => ch
                .apply(&self.coin_init)
                .expect("entry channel was validated at construction"),
            None => self.coin_init.clone(),
        }
    }

    /// True when every quantizer is a single unitary.
    pub fn is_u_quantized(&self) -> bool {
        self.quantizers.iter().all(|q| q.as_unitary().is_some())
    }

    pub fn to_document(&self) -> ModelDocument {
        ModelDocument {
            label: self.label.clone(),
            k: self.k(),
            coin_init: self.coin_init.matrix().clone(),
            entry_channel: self.entry_channel.as_ref().map(|c| c.spec().clone()),
            quantizers: self.quantizers.iter().map(|c| c.spec().clone()).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("model document serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: ModelDocument =
            serde_json::from_str(text).map_err(|e| QorwError::Parse(e.to_string()))?;
        doc.build()
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}

/// Structured text form of a [`WalkModel`]:
///
/// ```json
/// {
///   "label": "example_iv",
///   "k": 2,
///   "coin_init": {"dim": 2, "re": [[0, 0], [0, 1]], "im": [[0, 0], [0, 0]]},
///   "quantizers": [
///     {"type": "mixing", "theta": 0.7853981633974483, "p": 0.5},
///     {"type": "mixing", "theta": 0.7853981633974483, "p": 0.5}
///   ]
/// }
/// ```
///
/// `entry_channel` is optional. Channel `type`s are `unitary`,
/// `amplitude_damping`, `mixing` and `kraus_list`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelDocument {
    pub label: String,
    pub k: usize,
    pub coin_init: ComplexMatrix,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub entry_channel: Option<ChannelSpec>,
    pub quantizers: Vec<ChannelSpec>,
}

impl ModelDocument {
    pub fn build(&self) -> Result<WalkModel> {
        if self.k != self.quantizers.len() {
            return Err(QorwError::Parse(format!(
                "k = {} but {} quantizers are listed",
                self.k,
                self.quantizers.len()
            )));
        }
        let quantizers = self
            .quantizers
            .iter()
            .map(ChannelSpec::build)
            .collect::<Result<Vec<_>>>()?;
        let entry = self.entry_channel.as_ref().map(ChannelSpec::build).transpose()?;
        let coin = DensityMatrix::new(self.coin_init.clone())?;
        WalkModel::new(self.label.clone(), quantizers, entry, coin)
    }
}

/// The reference models.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Builtin {
    /// `k = 1`, no reshuffle, coin `diag(q, 1−q)`.
    ExampleI { q: f64 },
    /// `k = 2`, reshuffle `U_{π/4}`, coin `|+⟩⟨+|`.
    ExampleII,
    /// Cavity walk: amplitude damping `decay_t` on entry, identity before the
    /// first shift, amplitude damping `decay_tau` before the second.
    ExampleIII { decay_t: f64, decay_tau: f64, q: f64 },
    /// `k = 2`, both quantizers mix `U_{π/4}` with the identity at `p = ½`.
    ExampleIV { q: f64 },
    /// `k = 3`, reshuffle `U_{π/4}`, coin `|+⟩⟨+|`.
    V3,
}

impl Builtin {
    pub fn build(self) -> Result<WalkModel> {
        let rot = || ChannelSpec::Unitary {
            theta: Some(FRAC_PI_4),
            matrix: None,
        };
        match self {
            Builtin::ExampleI { q } => WalkModel::new(
                "example_i",
                vec![KrausChannel::identity(2)],
                None,
                DensityMatrix::coin_diagonal(q)?,
            ),
            Builtin::ExampleII => WalkModel::new(
                "example_ii",
                vec![rot().build()?, rot().build()?],
                None,
                DensityMatrix::plus(),
            ),
            Builtin::ExampleIII {
                decay_t,
                decay_tau,
                q,
            } => WalkModel::new(
                "example_iii",
                vec![
                    KrausChannel::identity(2),
                    KrausChannel::amplitude_damping(decay_tau)?,
                ],
                Some(KrausChannel::amplitude_damping(decay_t)?),
                DensityMatrix::coin_diagonal(q)?,
            ),
            Builtin::ExampleIV { q } => {
                let mix = ChannelSpec::Mixing {
                    theta: Some(FRAC_PI_4),
                    matrix: None,
                    p: 0.5,
                };
                WalkModel::new(
                    "example_iv",
                    vec![mix.build()?, mix.build()?],
                    None,
                    DensityMatrix::coin_diagonal(q)?,
                )
            }
            Builtin::V3 => WalkModel::new(
                "v3",
                vec![rot().build()?, rot().build()?, rot().build()?],
                None,
                DensityMatrix::plus(),
            ),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Builtin::ExampleI { .. } => "example_i",
            Builtin::ExampleII => "example_ii",
            Builtin::ExampleIII { .. } => "example_iii",
            Builtin::ExampleIV { .. } => "example_iv",
            Builtin::V3 => "v3",
        }
    }

    /// Every built-in at representative parameters.
    pub fn catalogue() -> Vec<Builtin> {
        vec![
            Builtin::ExampleI { q: 0.5 },
            Builtin::ExampleII,
            Builtin::ExampleIII {
                decay_t: 0.3,
                decay_tau: 0.5,
                q: 0.7,
            },
            Builtin::ExampleIV { q: 0.0 },
            Builtin::ExampleIV { q: 0.3 },
            Builtin::ExampleIV { q: 0.5 },
            Builtin::V3,
        ]
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Parses a bare built-in name with default parameters
/// (`q = ½` for i, `q = 0` for iv, `(0.3, 0.5, 0.7)` for iii).
impl FromStr for Builtin {
    type Err = QorwError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "example_i" => Ok(Builtin::ExampleI { q: 0.5 }),
            "example_ii" => Ok(Builtin::ExampleII),
            "example_iii" => Ok(Builtin::ExampleIII {
                decay_t: 0.3,
                decay_tau: 0.5,
                q: 0.7,
            }),
            "example_iv" => Ok(Builtin::ExampleIV { q: 0.0 }),
            "v3" => Ok(Builtin::V3),
            other => Err(QorwError::Parse(format!("unknown built-in model `{other}`"))),
        }
    }
}

/// Largest deviation of `Σ K†K` from identity over all model channels.
pub fn completeness_residual(model: &WalkModel) -> f64 {
    model
        .quantizers()
        .iter()
        .chain(model.entry_channel())
        .map(|c| c.validate().deviation)
        .fold(0.0, f64::max)
}

/// The reshuffle matrix when all quantizers share one unitary.
pub fn shared_reshuffle(model: &WalkModel) -> Option<&ComplexMatrix> {
    let first = model.quantizers()[0].as_unitary()?;
    model
        .quantizers()
        .iter()
        .all(|q| q.as_unitary().is_some_and(|u| u.max_abs_diff(first) <= TOL.unitary))
        .then_some(first)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rotation_unitary;

    #[test]
    fn builtin_shapes() {
        let ii = Builtin::ExampleII.build().unwrap();
        assert_eq!(ii.k(), 2);
        assert!(ii.is_u_quantized());
        let u = rotation_unitary(FRAC_PI_4);
        assert!(shared_reshuffle(&ii).unwrap().max_abs_diff(&u) < 1e-15);
        assert_eq!(ii.coin_init(), &DensityMatrix::plus());

        let iii = Builtin::ExampleIII { decay_t: 0.2, decay_tau: 0.6, q: 0.4 }.build().unwrap();
        assert_eq!(iii.k(), 2);
        assert!(!iii.is_u_quantized());
        assert_eq!(
            iii.entry_channel().unwrap().spec(),
            &ChannelSpec::AmplitudeDamping { decay: 0.2 }
        );
        assert_eq!(iii.quantizers()[1].spec(), &ChannelSpec::AmplitudeDamping { decay: 0.6 });
        assert!(iii.quantizers()[0].as_unitary().is_some());

        let iv = Builtin::ExampleIV { q: 0.25 }.build().unwrap();
        assert_eq!(iv.quantizers().len(), 2);
        assert_eq!(iv.quantizers()[0].kraus().len(), 2);
        assert!(shared_reshuffle(&iv).is_none());
        assert_eq!(Builtin::V3.build().unwrap().k(), 3);
    }

    #[test]
    fn out_of_range_parameters_rejected() {
        assert!(Builtin::ExampleIV { q: 1.2 }.build().is_err());
        assert!(Builtin::ExampleIII { decay_t: -0.1, decay_tau: 0.5, q: 0.5 }.build().is_err());
        assert!(Builtin::ExampleI { q: -0.5 }.build().is_err());
    }

    #[test]
    fn zero_substeps_rejected() {
        let err = WalkModel::new("empty", vec![], None, DensityMatrix::plus());
        assert!(matches!(err, Err(QorwError::Parameter(_))));
    }

    #[test]
    fn non_trace_preserving_channel_rejected() {
        let proj = KrausChannel::new(vec![crate::algebra::pauli::proj_plus()], "proj").unwrap();
        assert!(WalkModel::new("bad", vec![proj], None, DensityMatrix::plus()).is_err());
    }

    #[test]
    fn document_round_trip() {
        for b in Builtin::catalogue() {
            let model = b.build().unwrap();
            let text = model.to_json();
            let back = WalkModel::from_json(&text).unwrap();
            assert_eq!(back.to_document(), model.to_document());
        }
    }

    #[test]
    fn document_field_names() {
        let text = r#"{
            "label": "custom",
            "k": 2,
            "coin_init": {"dim": 2, "re": [[0.5, 0], [0, 0.5]], "im": [[0, 0], [0, 0]]},
            "entry_channel": {"type": "amplitude_damping", "decay": 0.1},
            "quantizers": [
                {"type": "unitary", "theta": 0.3},
                {"type": "kraus_list", "kraus": [{"dim": 2, "re": [[1, 0], [0, 1]], "im": [[0, 0], [0, 0]]}]}
            ]
        }"#;
        let m = WalkModel::from_json(text).unwrap();
        assert_eq!(m.label(), "custom");
        assert_eq!(m.k(), 2);
        assert!(m.entry_channel().is_some());

        let wrong_k = text.replace("\"k\": 2", "\"k\": 3");
        assert!(matches!(WalkModel::from_json(&wrong_k), Err(QorwError::Parse(_))));
        let unknown = text.replace("\"label\"", "\"name\"");
        assert!(WalkModel::from_json(&unknown).is_err());
    }

    #[test]
    fn builtin_names_parse() {
        for b in Builtin::catalogue() {
            let parsed: Builtin = b.name().parse().unwrap();
            assert_eq!(parsed.name(), b.name());
        }
        assert!("example_v".parse::<Builtin>().is_err());
    }
}
