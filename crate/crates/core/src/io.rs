//! JSON file formats for group specs.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Rational, RationalMatrix};
use crate::shearlet::{make_standard_group, make_toeplitz_group, GroupKind, ShearletGroupSpec};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupFile {
    pub d: usize,
    pub kind: GroupKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambdas: Option<Vec<Rational>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<Vec<Vec<Rational>>>>,
}

impl GroupFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn into_spec(self) -> Result<ShearletGroupSpec> {
        let missing =
            |field: &str| Error::Parse(format!("kind {:?} requires `{field}`", self.kind));
        let spec = match self.kind {
            GroupKind::Standard => {
                let lambdas = self.lambdas.as_ref().ok_or_else(|| missing("lambdas"))?;
                make_standard_group(lambdas)
            }
            GroupKind::Toeplitz => {
                let delta = self.delta.as_ref().ok_or_else(|| missing("delta"))?;
                make_toeplitz_group(delta, self.d)?
            }
            GroupKind::Custom => {
                let lambdas = self.lambdas.clone().ok_or_else(|| missing("lambdas"))?;
                let basis = self.basis.clone().ok_or_else(|| missing("basis"))?;
                let canonical_basis = basis
                    .into_iter()
                    .map(RationalMatrix::from_rows)
                    .collect::<Result<Vec<_>>>()?;
                ShearletGroupSpec {
                    d: self.d,
                    kind: GroupKind::Custom,
                    canonical_basis,
                    scaling_exponents: lambdas,
                    delta: None,
                }
            }
        };
        if spec.d != self.d {
            return Err(Error::Parse(format!(
                "d = {} but the lambdas describe dimension {}",
                self.d, spec.d
            )));
        }
        Ok(spec)
    }

    pub fn from_spec(spec: &ShearletGroupSpec) -> Self {
        GroupFile {
            d: spec.d,
            kind: spec.kind,
            lambdas: (spec.kind != GroupKind::Toeplitz).then(|| spec.scaling_exponents.clone()),
            delta: spec.delta.clone(),
            basis: (spec.kind == GroupKind::Custom).then(|| {
                spec.canonical_basis
                    .iter()
                    .map(RationalMatrix::to_rows)
                    .collect()
            }),
        }
    }
}

pub fn parse_group(text: &str) -> Result<ShearletGroupSpec> {
    GroupFile::from_json(text)?.into_spec()
}

pub fn parse_matrix(text: &str) -> Result<RationalMatrix> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;
    use crate::shearlet::validate_spec;

    #[test]
    fn standard_file() {
        let spec = parse_group(r#"{"d": 2, "kind": "standard", "lambdas": ["1/2"]}"#).unwrap();
        assert_eq!(spec, make_standard_group(&[q(1, 2)]));
    }

    #[test]
    fn toeplitz_file() {
        let spec = parse_group(r#"{"d": 4, "kind": "toeplitz", "delta": "1/3"}"#).unwrap();
        assert_eq!(spec, make_toeplitz_group(&q(1, 3), 4).unwrap());
    }

    #[test]
    fn custom_file_round_trip() {
        let text = r#"{"d": 3, "kind": "custom", "lambdas": ["1/2", "0"],
            "basis": [[["0","1","0"],["0","0","1"],["0","0","0"]],
                      [["0","0","1"],["0","0","0"],["0","0","0"]]]}"#;
        let spec = parse_group(text).unwrap();
        assert!(validate_spec(&spec).valid);
        let again = GroupFile::from_spec(&spec);
        let json = serde_json::to_string(&again).unwrap();
        assert_eq!(parse_group(&json).unwrap(), spec);
    }

    #[test]
    fn missing_lambdas_is_parse_error() {
        let err = parse_group(r#"{"d": 2, "kind": "standard"}"#).unwrap_err();
        assert!(matches!(err, Error::Parse(_)));
        assert!(!err.is_math_domain());
    }

    #[test]
    fn inconsistent_dimension() {
        assert!(parse_group(r#"{"d": 3, "kind": "standard", "lambdas": ["1"]}"#).is_err());
    }

    #[test]
    fn matrix_file() {
        let m =
            parse_matrix(r#"{"rows": 2, "cols": 2, "entries": [["2","5"],["0","3"]]}"#).unwrap();
        assert_eq!(m, RationalMatrix::from_i64(&[&[2, 5], &[0, 3]]));
    }
}
