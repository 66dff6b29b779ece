//! On-disk document format: JSON with sorted keys and a fixed layout.
//!
//! Scalars are `[re, im]` pairs whose parts are either exact rationals written
//! as strings (`"3"`, `"-1/2"`) or JSON numbers. Tensors of rank two or more
//! are sparse lists of `[[indices...], [re, im]]` entries, always indexed
//! "image of basis element `i` first":
//!
//! | field                | entry                 | meaning                               |
//! |----------------------|-----------------------|---------------------------------------|
//! | `algebra.mult`       | `[i, j, k]`           | coefficient of `e_k` in `e_i e_j`     |
//! | `algebra.star`       | `[i, j]`              | coefficient of `e_j` in `e_i*`        |
//! | `hopf.coproduct`     | `[i, p, q]`           | coefficient of `f_p⊗f_q` in `Δ(f_i)`  |
//! | `hopf.antipode`      | `[i, j]`              | coefficient of `f_j` in `κ(f_i)`      |
//! | `coaction.alpha`     | `[i, j, q]`           | coefficient of `e_j⊗f_q` in `α(e_i)`  |
//! | `calculus.left`      | `[f, j, l]`           | coefficient of `ω_l` in `e_f·ω_j`     |
//! | `calculus.right`     | `[j, f, l]`           | coefficient of `ω_l` in `ω_j·e_f`     |
//! | `calculus.diff`      | `[i, j]`              | coefficient of `ω_j` in `d e_i`       |
//! | `calculus.gamma`     | `[j, l, q]`           | coefficient of `ω_l⊗f_q` in `Γ(ω_j)`  |
//! | `metric.gram`        | `[i, j, p]`           | coefficient of `e_p` in `⟨⟨ω_i, ω_j⟩⟩` |

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{CliError, CliResult};

pub const VERSION: &str = "1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Rational,
    Float,
}

/// One real part of a scalar.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Part {
    Exact(String),
    Float(f64),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalarDoc(pub Part, pub Part);

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Entry(pub Vec<usize>, pub ScalarDoc);

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDoc {
    pub dim: usize,
    pub labels: Vec<String>,
    pub mult: Vec<Entry>,
    pub unit: Vec<ScalarDoc>,
    pub star: Vec<Entry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HopfDoc {
    /// Algebra of the quantum group; the top-level algebra when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<AlgebraDoc>,
    pub coproduct: Vec<Entry>,
    pub counit: Vec<ScalarDoc>,
    pub antipode: Vec<Entry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub haar: Option<Vec<ScalarDoc>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoactionDoc {
    pub alpha: Vec<Entry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CalculusDoc {
    /// Only `"universal"` is recognized.
    Named(String),
    Explicit(ExplicitCalculus),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExplicitCalculus {
    pub dim: usize,
    pub left: Vec<Entry>,
    pub right: Vec<Entry>,
    pub diff: Vec<Entry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<Vec<Entry>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetricDoc {
    pub gram: Vec<Entry>,
}

/// How `coaction.alpha` relates to the action table.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    /// `α(δ_x) = Σ_g δ_{g·x} ⊗ δ_g`.
    #[default]
    Forward,
    /// `α(δ_x) = Σ_g δ_{g⁻¹·x} ⊗ δ_g`; read as the forward convention for the
    /// opposite group.
    Inverse,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDoc {
    pub labels: Vec<String>,
    /// `table[g][h]` is the index of `g·h`.
    pub table: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProvenanceDoc {
    pub group: GroupDoc,
    pub points: Vec<String>,
    /// `action[g][x]` is the index of `g·x`.
    pub action: Vec<Vec<usize>>,
    #[serde(default)]
    pub convention: Convention,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub scalar_backend: Backend,
    pub tolerance: f64,
    pub algebra: AlgebraDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hopf: Option<HopfDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coaction: Option<CoactionDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub calculus: Option<CalculusDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metric: Option<MetricDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group_provenance: Option<ProvenanceDoc>,
}

impl Document {
    pub fn parse(text: &str) -> CliResult<Self> {
        let doc: Document = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
        if doc.version != VERSION {
            return Err(CliError::Parse(format!("unsupported version {:?}", doc.version)));
        }
        if !(doc.tolerance.is_finite() && doc.tolerance >= 0.0) {
            return Err(CliError::Parse(format!(
                "tolerance must be a non-negative number, got {}",
                doc.tolerance
            )));
        }
        if let Some(CalculusDoc::Named(name)) = &doc.calculus {
            if name != "universal" {
                return Err(CliError::Parse(format!("unknown calculus {name:?}")));
            }
        }
        Ok(doc)
    }

    /// Canonical text: sorted keys, two-space indentation, arrays nested at
    /// most two deep on one line, trailing newline.
    pub fn to_canonical_string(&self) -> String {
        let value = serde_json::to_value(self).expect("documents serialize to JSON");
        let mut out = String::new();
        write_value(&value, 0, &mut out);
        out.push('\n');
        out
    }
}

fn depth(v: &Value) -> usize {
    match v {
        Value::Array(items) => 1 + items.iter().map(depth).max().unwrap_or(0),
        Value::Object(_) => usize::MAX,
        _ => 0,
    }
}

fn write_value(v: &Value, indent: usize, out: &mut String) {
    match v {
        Value::Object(map) if !map.is_empty() => {
            out.push_str("{\n");
            for (i, (key, value)) in map.iter().enumerate() {
                pad(indent + 1, out);
                out.push_str(&Value::String(key.clone()).to_string());
                out.push_str(": ");
                write_value(value, indent + 1, out);
                if i + 1 < map.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            pad(indent, out);
            out.push('}');
        }
        Value::Array(items) if !items.is_empty() && depth(v) > 2 => {
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                pad(indent + 1, out);
                write_value(item, indent + 1, out);
                if i + 1 < items.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            pad(indent, out);
            out.push(']');
        }
        _ => write_inline(v, out),
    }
}

fn write_inline(v: &Value, out: &mut String) {
    match v {
        Value::Array(items) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_inline(item, out);
            }
            out.push(']');
        }
        other => {
            let _ = write!(out, "{other}");
        }
    }
}

fn pad(indent: usize, out: &mut String) {
    for _ in 0..indent {
        out.push_str("  ");
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inline_layout_of_entries() {
        let entries = vec![
            Entry(
                vec![0, 1],
                ScalarDoc(Part::Exact("1/2".into()), Part::Exact("0".into())),
            ),
            Entry(vec![1, 0], ScalarDoc(Part::Float(0.25), Part::Float(-1.0))),
        ];
        let v = serde_json::to_value(&entries).unwrap();
        let mut out = String::new();
        write_value(&v, 0, &mut out);
        assert_eq!(out, "[\n  [[0, 1], [\"1/2\", \"0\"]],\n  [[1, 0], [0.25, -1.0]]\n]");
    }

    #[test]
    fn rejects_unknown_version_and_calculus() {
        let base = r#"{"version":"2","scalar_backend":"rational","tolerance":0,
            "algebra":{"dim":1,"labels":["1"],"mult":[[[0,0,0],["1","0"]]],"unit":[["1","0"]],"star":[[[0,0],["1","0"]]]}}"#;
        assert!(matches!(Document::parse(base), Err(CliError::Parse(_))));
        let named = base
            .replace("\"2\"", "\"1\"")
            .replace("\"tolerance\":0", "\"tolerance\":0,\"calculus\":\"de Rham\"");
        assert!(matches!(Document::parse(&named), Err(CliError::Parse(_))));
        assert!(Document::parse(&base.replace("\"2\"", "\"1\"")).is_ok());
    }
}
