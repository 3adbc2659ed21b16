use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::seq::SequenceSpec;
use crate::summability::{ShiftSet, SummabilityMatrix};

use super::pmap::{PMapKind, PMapSpec};
use super::rainwater::RainwaterMethod;

fn cesaro() -> SummabilityMatrix {
    SummabilityMatrix::cesaro()
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ShiftJson {
    Named(String),
    List(Vec<u64>),
}

fn shifts_to_json(s: &ShiftSet) -> ShiftJson {
    match s {
        ShiftSet::Exhaustive => ShiftJson::Named("exhaustive".into()),
        ShiftSet::Explicit(ls) => ShiftJson::List(ls.clone()),
    }
}

fn shifts_from_json<E: serde::de::Error>(s: Option<ShiftJson>) -> Result<ShiftSet, E> {
    match s {
        None => Ok(ShiftSet::Exhaustive),
        Some(ShiftJson::Named(name)) if name == "exhaustive" => Ok(ShiftSet::Exhaustive),
        Some(ShiftJson::Named(name)) => Err(E::custom(format!("unknown shift policy `{name}`"))),
        Some(ShiftJson::List(ls)) if ls.is_empty() => Err(E::custom("shift list must be nonempty")),
        Some(ShiftJson::List(ls)) => Ok(ShiftSet::Explicit(ls)),
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum PMapJson {
    Identity {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        declared_m: Option<f64>,
    },
    Zero {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        declared_m: Option<f64>,
    },
    PreCauchyMean {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        declared_m: Option<f64>,
    },
    StrongMatrix {
        #[serde(default = "cesaro")]
        matrix: SummabilityMatrix,
        p: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        declared_m: Option<f64>,
    },
    StrongMatrixRoot {
        #[serde(default = "cesaro")]
        matrix: SummabilityMatrix,
        p: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        declared_m: Option<f64>,
    },
    Maddox {
        #[serde(default = "cesaro")]
        matrix: SummabilityMatrix,
        exponents: SequenceSpec,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        declared_m: Option<f64>,
    },
    FaShiftSup {
        #[serde(default = "cesaro")]
        matrix: SummabilityMatrix,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        shifts: Option<ShiftJson>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        declared_m: Option<f64>,
    },
}

impl Serialize for PMapSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let declared_m = self.declared_m();
        match self.kind() {
            PMapKind::Identity => PMapJson::Identity { declared_m },
            PMapKind::Zero => PMapJson::Zero { declared_m },
            PMapKind::PreCauchyMean => PMapJson::PreCauchyMean { declared_m },
            PMapKind::StrongMatrix { matrix, p } => PMapJson::StrongMatrix {
                matrix: matrix.clone(),
                p: *p,
                declared_m,
            },
            PMapKind::StrongMatrixRoot { matrix, p } => PMapJson::StrongMatrixRoot {
                matrix: matrix.clone(),
                p: *p,
                declared_m,
            },
            PMapKind::Maddox { matrix, exponents } => PMapJson::Maddox {
                matrix: matrix.clone(),
                exponents: exponents.clone(),
                declared_m,
            },
            PMapKind::FaShiftSup { matrix, shifts } => PMapJson::FaShiftSup {
                matrix: matrix.clone(),
                shifts: Some(shifts_to_json(shifts)),
                declared_m,
            },
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PMapSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let (spec, declared_m) = match PMapJson::deserialize(deserializer)? {
            PMapJson::Identity { declared_m } => (Ok(PMapSpec::identity()), declared_m),
            PMapJson::Zero { declared_m } => (Ok(PMapSpec::zero()), declared_m),
            PMapJson::PreCauchyMean { declared_m } => (Ok(PMapSpec::pre_cauchy_mean()), declared_m),
            PMapJson::StrongMatrix {
                matrix,
                p,
                declared_m,
            } => (PMapSpec::strong(matrix, p), declared_m),
            PMapJson::StrongMatrixRoot {
                matrix,
                p,
                declared_m,
            } => (PMapSpec::strong_root(matrix, p), declared_m),
            PMapJson::Maddox {
                matrix,
                exponents,
                declared_m,
            } => (PMapSpec::maddox(matrix, exponents), declared_m),
            PMapJson::FaShiftSup {
                matrix,
                shifts,
                declared_m,
            } => (
                Ok(PMapSpec::fa_shift_sup(matrix, shifts_from_json(shifts)?)),
                declared_m,
            ),
        };
        let spec = spec.map_err(D::Error::custom)?;
        Ok(match declared_m {
            Some(m) if !(m.is_finite() && m >= 0.0) => {
                return Err(D::Error::custom("declared_m must be >= 0"))
            }
            Some(m) => spec.with_declared_m(m),
            None => spec,
        })
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum MethodJson {
    Strong {
        #[serde(default = "cesaro")]
        matrix: SummabilityMatrix,
        p: f64,
    },
    Maddox {
        #[serde(default = "cesaro")]
        matrix: SummabilityMatrix,
        exponents: SequenceSpec,
    },
    Statistical {
        #[serde(default = "cesaro")]
        matrix: SummabilityMatrix,
    },
    PreCauchy,
    Fa {
        #[serde(default = "cesaro")]
        matrix: SummabilityMatrix,
    },
}

impl Serialize for RainwaterMethod {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self.clone() {
            RainwaterMethod::Strong { matrix, p } => MethodJson::Strong { matrix, p },
            RainwaterMethod::Maddox { matrix, exponents } => {
                MethodJson::Maddox { matrix, exponents }
            }
            RainwaterMethod::Statistical { matrix } => MethodJson::Statistical { matrix },
            RainwaterMethod::PreCauchy => MethodJson::PreCauchy,
            RainwaterMethod::Fa { matrix } => MethodJson::Fa { matrix },
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RainwaterMethod {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        Ok(match MethodJson::deserialize(deserializer)? {
            MethodJson::Strong { matrix, p } => {
                if !(p > 0.0 && p.is_finite()) {
                    return Err(D::Error::custom(format!("p must be positive, got {p}")));
                }
                RainwaterMethod::Strong { matrix, p }
            }
            MethodJson::Maddox { matrix, exponents } => {
                RainwaterMethod::Maddox { matrix, exponents }
            }
            MethodJson::Statistical { matrix } => RainwaterMethod::Statistical { matrix },
            MethodJson::PreCauchy => RainwaterMethod::PreCauchy,
            MethodJson::Fa { matrix } => RainwaterMethod::Fa { matrix },
        })
    }
}
