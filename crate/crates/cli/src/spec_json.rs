//! JSON schemas for distributions and families.
//!
//! Rationals may be written either as plain JSON numbers (promoted to exact
//! rationals verbatim) or as strings like `"1/3"` or `"0.25"`, which parse
//! exactly. Serialization always emits string rationals, so a parse →
//! serialize → parse round trip is the identity on values.

use serde::{Deserialize, Serialize};
use stochord::dist::{ClosedFormDist, DiscreteDist};
use stochord::families::{BuiltinFamily, FamilySpec};
use stochord::rational::{format_ratio, parse_ratio, q_from_f64, Q};

use crate::CliError;

/// A rational in the wire format: number or exact string.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum RatJson {
    Num(f64),
    Str(String),
}

impl RatJson {
    pub fn to_q(&self) -> Result<Q, CliError> {
        match self {
            RatJson::Num(v) => {
                if !v.is_finite() {
                    return Err(CliError::Input("numeric values must be finite".into()));
                }
                Ok(q_from_f64(*v))
            }
            RatJson::Str(s) => {
                parse_ratio(s).map_err(|e| CliError::Input(format!("invalid rational: {e}")))
            }
        }
    }

    pub fn exact(q: &Q) -> Self {
        RatJson::Str(format_ratio(q))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct AtomJson {
    pub x: RatJson,
    pub p: RatJson,
}

/// `{"type":"discrete","atoms":[...]}` or
/// `{"type":"builtin-dist","name":"exp_inv_u"|"u_inv_pow","r":rational}`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "type", deny_unknown_fields)]
pub enum DistSpecJson {
    #[serde(rename = "discrete")]
    Discrete { atoms: Vec<AtomJson> },
    #[serde(rename = "builtin-dist")]
    BuiltinDist {
        name: String,
        #[serde(skip_serializing_if = "Option::is_none")]
        r: Option<RatJson>,
    },
}

/// A parsed distribution argument.
pub enum DistArg {
    Discrete(DiscreteDist),
    ClosedForm(ClosedFormDist),
}

impl DistSpecJson {
    pub fn parse_str(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text)
            .map_err(|e| CliError::Input(format!("malformed distribution spec: {e}")))
    }

    pub fn to_arg(&self) -> Result<DistArg, CliError> {
        match self {
            DistSpecJson::Discrete { atoms } => {
                let pairs = atoms
                    .iter()
                    .map(|a| Ok((a.x.to_q()?, a.p.to_q()?)))
                    .collect::<Result<Vec<_>, CliError>>()?;
                let d = DiscreteDist::new(pairs)
                    .map_err(|e| CliError::Input(e.to_string()))?;
                Ok(DistArg::Discrete(d))
            }
            DistSpecJson::BuiltinDist { name, r } => match name.as_str() {
                "exp_inv_u" => Ok(DistArg::ClosedForm(ClosedFormDist::ExpInvU)),
                "u_inv_pow" => {
                    let r = r
                        .as_ref()
                        .ok_or_else(|| {
                            CliError::Input("u_inv_pow requires an exponent r".into())
                        })?
                        .to_q()?;
                    if r <= Q::from_integer(0.into()) {
                        return Err(CliError::Input(
                            "u_inv_pow exponent r must be positive".into(),
                        ));
                    }
                    Ok(DistArg::ClosedForm(ClosedFormDist::UInvPow { r }))
                }
                other => Err(CliError::Input(format!(
                    "unknown builtin distribution `{other}` (expected exp_inv_u or u_inv_pow)"
                ))),
            },
        }
    }

    pub fn to_discrete(&self) -> Result<DiscreteDist, CliError> {
        match self.to_arg()? {
            DistArg::Discrete(d) => Ok(d),
            DistArg::ClosedForm(_) => Err(CliError::Input(
                "this operation requires a discrete distribution".into(),
            )),
        }
    }

    pub fn from_discrete(d: &DiscreteDist) -> Self {
        DistSpecJson::Discrete {
            atoms: d
                .atoms()
                .iter()
                .map(|(x, p)| AtomJson {
                    x: RatJson::exact(x),
                    p: RatJson::exact(p),
                })
                .collect(),
        }
    }
}

/// `{"type":"finite","members":[...]}` or
/// `{"type":"builtin","name":...,"r":...,"N":...}`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "type", deny_unknown_fields)]
pub enum FamilySpecJson {
    #[serde(rename = "finite")]
    Finite { members: Vec<DistSpecJson> },
    #[serde(rename = "builtin")]
    Builtin {
        name: String,
        #[serde(skip_serializing_if = "Option::is_none")]
        r: Option<RatJson>,
        #[serde(rename = "N", skip_serializing_if = "Option::is_none")]
        n: Option<u32>,
    },
}

impl FamilySpecJson {
    pub fn parse_str(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text)
            .map_err(|e| CliError::Input(format!("malformed family spec: {e}")))
    }

    pub fn to_family(&self, default_n: u32) -> Result<FamilySpec, CliError> {
        match self {
            FamilySpecJson::Finite { members } => {
                if members.is_empty() {
                    return Err(CliError::Input("finite family needs members".into()));
                }
                let dists = members
                    .iter()
                    .map(|m| m.to_discrete())
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(FamilySpec::Finite(dists))
            }
            FamilySpecJson::Builtin { name, r, n } => {
                let n_max = n.unwrap_or(default_n);
                if n_max < 2 {
                    return Err(CliError::Input(
                        "indexed builtin families need N ≥ 2".into(),
                    ));
                }
                let exponent = match r {
                    Some(r) => Some(r.to_q()?),
                    None => None,
                };
                let fam = match name.as_str() {
                    "phi" => BuiltinFamily::phi(n_max),
                    "psi" => BuiltinFamily::psi(n_max),
                    "phi_pow" => BuiltinFamily::phi_pow(
                        exponent.ok_or_else(|| {
                            CliError::Input("phi_pow requires an exponent r".into())
                        })?,
                        n_max,
                    ),
                    "psi_pow" => BuiltinFamily::psi_pow(
                        exponent.ok_or_else(|| {
                            CliError::Input("psi_pow requires an exponent r".into())
                        })?,
                        n_max,
                    ),
                    "exp_inv_u" => BuiltinFamily::exp_inv_u(),
                    "u_inv_pow" => BuiltinFamily::u_inv_pow(exponent.ok_or_else(|| {
                        CliError::Input("u_inv_pow requires an exponent r".into())
                    })?),
                    other => {
                        return Err(CliError::Input(format!(
                            "unknown builtin family `{other}`"
                        )))
                    }
                };
                Ok(FamilySpec::Builtin(fam))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use stochord::rational::q;

    #[test]
    fn string_rationals_parse_exactly() {
        let spec = DistSpecJson::parse_str(
            r#"{"type":"discrete","atoms":[{"x":0,"p":"1/3"},{"x":"3/2","p":"2/3"}]}"#,
        )
        .unwrap();
        let d = spec.to_discrete().unwrap();
        assert_eq!(d.atoms()[0].1, q(1, 3));
        assert_eq!(d.atoms()[1].0, q(3, 2));
    }

    #[test]
    fn round_trip_is_identity() {
        let text = r#"{"type":"discrete","atoms":[{"x":"1/8","p":"1/4"},{"x":"2","p":"3/4"}]}"#;
        let spec = DistSpecJson::parse_str(text).unwrap();
        let d = spec.to_discrete().unwrap();
        let emitted = serde_json::to_string(&DistSpecJson::from_discrete(&d)).unwrap();
        let reparsed = DistSpecJson::parse_str(&emitted).unwrap().to_discrete().unwrap();
        assert_eq!(d, reparsed);
    }

    #[test]
    fn validation_error_names_the_invariant() {
        let spec = DistSpecJson::parse_str(
            r#"{"type":"discrete","atoms":[{"x":0,"p":"9/10"}]}"#,
        )
        .unwrap();
        let err = spec.to_discrete().unwrap_err();
        assert_eq!(err.to_string(), "probabilities sum to 9/10 ≠ 1");
    }

    #[test]
    fn family_round_trip_is_identity() {
        let text = r#"{"type":"finite","members":[
            {"type":"discrete","atoms":[{"x":"0","p":"1/2"},{"x":"2","p":"1/2"}]},
            {"type":"discrete","atoms":[{"x":"1/8","p":"1"}]}
        ]}"#;
        let spec = FamilySpecJson::parse_str(text).unwrap();
        let emitted = serde_json::to_string(&spec).unwrap();
        let reparsed = FamilySpecJson::parse_str(&emitted).unwrap();
        assert_eq!(
            spec.to_family(100).unwrap(),
            reparsed.to_family(100).unwrap()
        );
        let builtin = r#"{"type":"builtin","name":"psi_pow","r":"1/2","N":50}"#;
        let spec = FamilySpecJson::parse_str(builtin).unwrap();
        let emitted = serde_json::to_string(&spec).unwrap();
        let reparsed = FamilySpecJson::parse_str(&emitted).unwrap();
        assert_eq!(spec, reparsed);
    }

    #[test]
    fn family_specs() {
        let fam = FamilySpecJson::parse_str(r#"{"type":"builtin","name":"phi","N":100}"#)
            .unwrap()
            .to_family(10_000)
            .unwrap();
        assert_eq!(fam.description(), "builtin phi (exponent 1, N = 100)");
        let fam = FamilySpecJson::parse_str(r#"{"type":"builtin","name":"u_inv_pow","r":"1/2"}"#)
            .unwrap()
            .to_family(10_000)
            .unwrap();
        assert_eq!(fam.description(), "builtin u_inv_pow (r = 1/2)");
        assert!(FamilySpecJson::parse_str(r#"{"type":"builtin","name":"zeta"}"#)
            .unwrap()
            .to_family(100)
            .is_err());
    }
}
