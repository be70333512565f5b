//! The algebra file format: JSON with `dim`, optional `basis` names, and the
//! nonzero brackets as `{left, right, value}` records. Basis indices are
//! zero-based; coefficients are integers or `"p/q"` strings.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use leibrack::leibniz::{default_names, LeibnizAlgebra};
use leibrack::linalg::rational::{format_rational, parse_rational, Rational};
use leibrack::Error;

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpecFile {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<String>>,
    #[serde(default)]
    pub brackets: Vec<BracketRecord>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketRecord {
    pub left: usize,
    pub right: usize,
    /// Basis index (as a string key) to coefficient.
    pub value: BTreeMap<String, Value>,
}

fn coefficient(v: &Value) -> Result<Rational, CliError> {
    match v {
        Value::String(s) => Ok(parse_rational(s)?),
        Value::Number(n) if n.is_i64() || n.is_u64() => Ok(parse_rational(&n.to_string())?),
        other => Err(CliError::Parse(format!(
            "coefficient must be an integer or a \"p/q\" string, got {other}"
        ))),
    }
}

impl AlgebraSpecFile {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    /// Builds the algebra, checking the Leibniz identity on every basis triple.
    pub fn to_algebra(&self) -> Result<LeibnizAlgebra, CliError> {
        let n = self.dim;
        let names = match &self.basis {
            Some(b) if b.len() != n => {
                return Err(CliError::Parse(format!(
                    "basis has {} names but dim is {n}",
                    b.len()
                )));
            }
            Some(b) => b.clone(),
            None => default_names(n),
        };
        let mut seen = std::collections::BTreeSet::new();
        let mut brackets = Vec::with_capacity(self.brackets.len());
        for rec in &self.brackets {
            if rec.left >= n || rec.right >= n {
                return Err(CliError::Parse(format!(
                    "bracket ({}, {}) has an index out of range for dim {n}",
                    rec.left, rec.right
                )));
            }
            if !seen.insert((rec.left, rec.right)) {
                return Err(CliError::Parse(format!(
                    "bracket ({}, {}) is given twice",
                    rec.left, rec.right
                )));
            }
            let mut v = vec![Rational::from_integer(0.into()); n];
            for (k, c) in &rec.value {
                let idx: usize = k.trim().parse().map_err(|_| {
                    CliError::Parse(format!("value key {k:?} is not a basis index"))
                })?;
                if idx >= n {
                    return Err(CliError::Parse(format!(
                        "value index {idx} out of range for dim {n}"
                    )));
                }
                v[idx] = coefficient(c)?;
            }
            brackets.push((rec.left, rec.right, v));
        }
        LeibnizAlgebra::from_brackets(names.clone(), &brackets).map_err(|e| match e {
            Error::LeibnizIdentity {
                triple: (i, j, k),
                defect,
            } => CliError::Validation {
                triple: (names[i].clone(), names[j].clone(), names[k].clone()),
                defect,
            },
            other => CliError::Core(other),
        })
    }

    /// The file describing `alg`, listing nonzero brackets only.
    pub fn from_algebra(alg: &LeibnizAlgebra) -> Self {
        let n = alg.dim();
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let value: BTreeMap<String, Value> = alg
                    .structure(i, j)
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !is_zero(c))
                    .map(|(k, c)| (k.to_string(), Value::String(format_rational(c))))
                    .collect();
                if !value.is_empty() {
                    brackets.push(BracketRecord {
                        left: i,
                        right: j,
                        value,
                    });
                }
            }
        }
        let basis =
            (alg.basis_names() != default_names(n).as_slice()).then(|| alg.basis_names().to_vec());
        AlgebraSpecFile {
            dim: n,
            basis,
            brackets,
        }
    }
}

fn is_zero(c: &Rational) -> bool {
    *c.numer() == 0.into()
}

pub fn parse_algebra_file(path: &Path) -> Result<LeibnizAlgebra, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    AlgebraSpecFile::from_json(&text)?.to_algebra()
}
