use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{IntegerSet, Periodic, SequenceSpec, VectorSequence};

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum SequenceJson {
    EventuallyPeriodic {
        #[serde(default)]
        preperiod: Vec<f64>,
        period: Vec<f64>,
    },
    SparseIndicator {
        support: String,
        on: f64,
        off: f64,
    },
    Combo {
        coeffs: Vec<f64>,
        parts: Vec<SequenceJson>,
    },
}

impl TryFrom<&SequenceSpec> for SequenceJson {
    type Error = String;

    fn try_from(spec: &SequenceSpec) -> Result<Self, String> {
        Ok(match spec {
            SequenceSpec::EventuallyPeriodic(p) => SequenceJson::EventuallyPeriodic {
                preperiod: p.preperiod.clone(),
                period: p.period.clone(),
            },
            SequenceSpec::SparseIndicator {
                support,
                on_value,
                off_value,
            } => {
                if !support.is_builtin() {
                    return Err(format!(
                        "custom integer set `{}` is not serializable",
                        support.name()
                    ));
                }
                SequenceJson::SparseIndicator {
                    support: support.name().to_string(),
                    on: *on_value,
                    off: *off_value,
                }
            }
            SequenceSpec::LinearCombo {
                coefficients,
                parts,
            } => SequenceJson::Combo {
                coeffs: coefficients.clone(),
                parts: parts
                    .iter()
                    .map(SequenceJson::try_from)
                    .collect::<Result<_, _>>()?,
            },
        })
    }
}

impl TryFrom<SequenceJson> for SequenceSpec {
    type Error = String;

    fn try_from(json: SequenceJson) -> Result<Self, String> {
        match json {
            SequenceJson::EventuallyPeriodic { preperiod, period } => {
                Periodic::new(preperiod, period)
                    .map(SequenceSpec::EventuallyPeriodic)
                    .map_err(|e| e.to_string())
            }
            SequenceJson::SparseIndicator { support, on, off } => {
                let support = IntegerSet::from_name(&support).ok_or_else(|| {
                    format!("unknown support `{support}` (expected `squares` or `powers_of_two`)")
                })?;
                Ok(SequenceSpec::indicator(support, on, off))
            }
            SequenceJson::Combo { coeffs, parts } => {
                let parts = parts
                    .into_iter()
                    .map(SequenceSpec::try_from)
                    .collect::<Result<Vec<_>, _>>()?;
                SequenceSpec::combo(coeffs, parts).map_err(|e| e.to_string())
            }
        }
    }
}

impl Serialize for SequenceSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        SequenceJson::try_from(self)
            .map_err(serde::ser::Error::custom)?
            .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SequenceSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let json = SequenceJson::deserialize(deserializer)?;
        SequenceSpec::try_from(json).map_err(serde::de::Error::custom)
    }
}

impl Serialize for VectorSequence {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.coords.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for VectorSequence {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let coords = Vec::<SequenceSpec>::deserialize(deserializer)?;
        VectorSequence::new(coords).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seq::CustomSet;
    use proptest::prelude::*;

    #[test]
    fn decodes_documented_forms() {
        let s: SequenceSpec = serde_json::from_str(
            r#"{"kind":"eventually_periodic","preperiod":[5],"period":[1,0]}"#,
        )
        .unwrap();
        assert_eq!(s.value_at(1), 5.0);
        let s: SequenceSpec = serde_json::from_str(
            r#"{"kind":"sparse_indicator","support":"squares","on":1,"off":0}"#,
        )
        .unwrap();
        assert_eq!(s.value_at(16), 1.0);
        let s: SequenceSpec = serde_json::from_str(
            r#"{"kind":"combo","coeffs":[2,-1],"parts":[
                {"kind":"eventually_periodic","period":[1]},
                {"kind":"sparse_indicator","support":"powers_of_two","on":1,"off":0}]}"#,
        )
        .unwrap();
        assert_eq!(s.value_at(8), 1.0);
        assert_eq!(s.value_at(7), 2.0);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(serde_json::from_str::<SequenceSpec>(
            r#"{"kind":"eventually_periodic","period":[]}"#
        )
        .is_err());
        assert!(serde_json::from_str::<SequenceSpec>(
            r#"{"kind":"sparse_indicator","support":"primes","on":1,"off":0}"#
        )
        .is_err());
        assert!(serde_json::from_str::<SequenceSpec>(
            r#"{"kind":"combo","coeffs":[1],"parts":[]}"#
        )
        .is_err());
    }

    #[test]
    fn custom_sets_do_not_serialize() {
        let s = SequenceSpec::indicator(
            IntegerSet::Custom(CustomSet::new("odd", |k| k % 2 == 1)),
            1.0,
            0.0,
        );
        assert!(serde_json::to_string(&s).is_err());
    }

    fn leaf() -> impl Strategy<Value = SequenceSpec> {
        prop_oneof![
            (
                prop::collection::vec(any::<f64>().prop_filter("finite", |v| v.is_finite()), 0..4),
                prop::collection::vec(any::<f64>().prop_filter("finite", |v| v.is_finite()), 1..5)
            )
                .prop_map(|(a, b)| SequenceSpec::periodic(a, b).unwrap()),
            (any::<bool>(), -1e6..1e6f64, -1e6..1e6f64).prop_map(|(sq, on, off)| {
                SequenceSpec::indicator(
                    if sq {
                        IntegerSet::Squares
                    } else {
                        IntegerSet::PowersOfTwo
                    },
                    on,
                    off,
                )
            }),
        ]
    }

    fn spec() -> impl Strategy<Value = SequenceSpec> {
        leaf().prop_recursive(2, 8, 3, |inner| {
            prop::collection::vec((-10.0..10.0f64, inner), 1..4).prop_map(|terms| {
                let (c, p): (Vec<f64>, Vec<SequenceSpec>) = terms.into_iter().unzip();
                SequenceSpec::combo(c, p).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn json_round_trip_is_bit_exact(s in spec()) {
            let text = serde_json::to_string(&s).unwrap();
            let back: SequenceSpec = serde_json::from_str(&text).unwrap();
            prop_assert_eq!(&back, &s);
            prop_assert_eq!(serde_json::to_string(&back).unwrap(), text);
        }
    }
}
