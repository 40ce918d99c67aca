//! JSON and CSV encodings.
//!
//! Scalars are always strings in the exact grammar understood by
//! [`GaussianRational`]'s `FromStr` (`"3/5"`, `"-4/5i"`, `"1+8i"`). JSON keys
//! are written in the field order of the structs below, so output is
//! byte-stable.

use kgsys_core::{Check, ExactMatrix, GaussianRational, Matrix, Rational, Report};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),

    #[error("{0}")]
    Shape(String),

    #[error("{location}: {source}")]
    Scalar {
        location: String,
        source: kgsys_core::Error,
    },

    #[error("{location}: {value} is not a positive rational")]
    NotPositive { location: String, value: String },

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

pub fn parse_scalar(text: &str, location: impl FnOnce() -> String) -> Result<GaussianRational, FormatError> {
    text.parse().map_err(|source| FormatError::Scalar {
        location: location(),
        source,
    })
}

pub fn parse_vector(items: &[String], what: &str) -> Result<Vec<GaussianRational>, FormatError> {
    items
        .iter()
        .enumerate()
        .map(|(i, s)| parse_scalar(s, || format!("{what}[{i}]")))
        .collect()
}

pub fn parse_positive(items: &[String], what: &str) -> Result<Vec<Rational>, FormatError> {
    parse_vector(items, what)?
        .into_iter()
        .enumerate()
        .map(|(i, x)| {
            if x.is_positive_real() {
                Ok(x.re)
            } else {
                Err(FormatError::NotPositive {
                    location: format!("{what}[{i}]"),
                    value: x.to_string(),
                })
            }
        })
        .collect()
}

/// Accepts either a JSON list of strings or a comma separated list.
pub fn split_list(text: &str) -> Result<Vec<String>, FormatError> {
    let trimmed = text.trim();
    if trimmed.starts_with('[') {
        return Ok(serde_json::from_str(trimmed)?);
    }
    Ok(trimmed.split(',').map(|s| s.trim().to_string()).collect())
}

pub fn encode_vector(xs: &[GaussianRational]) -> Vec<String> {
    xs.iter().map(ToString::to_string).collect()
}

/// `{"rows", "cols", "degree"?, "dim"?, "entries"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    pub entries: Vec<Vec<String>>,
}

impl MatrixJson {
    pub fn encode(m: &ExactMatrix) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            degree: None,
            dim: None,
            entries: m.row_vecs().iter().map(|r| encode_vector(r)).collect(),
        }
    }

    /// An induced matrix of degree `degree` over `dim + 1` variables.
    pub fn induced(m: &ExactMatrix, degree: u32, dim: usize) -> Self {
        Self {
            degree: Some(degree),
            dim: Some(dim),
            ..Self::encode(m)
        }
    }

    pub fn decode(&self, what: &str) -> Result<ExactMatrix, FormatError> {
        if self.entries.len() != self.rows {
            return Err(FormatError::Shape(format!(
                "{what}: rows is {} but entries has {} rows",
                self.rows,
                self.entries.len()
            )));
        }
        let mut rows = Vec::with_capacity(self.rows);
        for (r, row) in self.entries.iter().enumerate() {
            if row.len() != self.cols {
                return Err(FormatError::Shape(format!(
                    "{what}: cols is {} but row {r} has {} entries",
                    self.cols,
                    row.len()
                )));
            }
            let parsed = row
                .iter()
                .enumerate()
                .map(|(c, s)| parse_scalar(s, || format!("{what} entry ({r},{c})")))
                .collect::<Result<Vec<_>, _>>()?;
            rows.push(parsed);
        }
        if self.rows == 0 || self.cols == 0 {
            return Err(FormatError::Shape(format!("{what}: empty matrix")));
        }
        Matrix::from_rows(rows).map_err(|e| FormatError::Shape(format!("{what}: {e}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReflectJson {
    pub v: Vec<String>,
    pub s: Vec<String>,
}

/// `{"A", "p"?, "D"?, "reflect"?}`. Missing weights are inferred from `A`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemJson {
    #[serde(rename = "A")]
    pub a: MatrixJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<Vec<String>>,
    #[serde(rename = "D", default, skip_serializing_if = "Option::is_none")]
    pub d: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reflect: Option<ReflectJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrderPairJson {
    pub variable: usize,
    pub order: usize,
    #[serde(rename = "Rec")]
    pub rec: MatrixJson,
    #[serde(rename = "Spec")]
    pub spec: MatrixJson,
}

/// Output of `build`: the system and everything derived from it at one
/// degree. `Rec[j]`, `Spec[j]` are the first-order pair of variable `j`;
/// `higher` holds orders `2..=degree`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BundleJson {
    pub system: SystemJson,
    pub degree: u32,
    #[serde(rename = "Phi")]
    pub phi: MatrixJson,
    #[serde(rename = "B")]
    pub b: MatrixJson,
    pub pbar: MatrixJson,
    #[serde(rename = "Dbar")]
    pub dbar: MatrixJson,
    #[serde(rename = "Rec")]
    pub rec: Vec<MatrixJson>,
    #[serde(rename = "Spec")]
    pub spec: Vec<MatrixJson>,
    #[serde(default)]
    pub higher: Vec<OrderPairJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckJson {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportJson {
    pub checks: Vec<CheckJson>,
}

impl From<&Report> for ReportJson {
    fn from(report: &Report) -> Self {
        Self {
            checks: report
                .checks
                .iter()
                .map(|Check { name, pass, detail }| CheckJson {
                    name: name.clone(),
                    pass: *pass,
                    detail: detail.clone(),
                })
                .collect(),
        }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("serializing plain data cannot fail");
    text.push('\n');
    text
}

pub fn matrix_csv(m: &ExactMatrix) -> Result<String, FormatError> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    for row in m.row_vecs() {
        w.write_record(row.iter().map(ToString::to_string))?;
    }
    Ok(into_string(w))
}

pub fn report_csv(report: &Report) -> Result<String, FormatError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["name", "pass", "detail"])?;
    for c in &report.checks {
        w.write_record([
            c.name.as_str(),
            if c.pass { "true" } else { "false" },
            c.detail.as_str(),
        ])?;
    }
    Ok(into_string(w))
}

fn into_string(w: csv::Writer<Vec<u8>>) -> String {
    let bytes = w.into_inner().expect("writing to memory cannot fail");
    String::from_utf8(bytes).expect("csv of UTF-8 fields is UTF-8")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_round_trip() {
        let m = Matrix::from_rows(vec![
            vec!["1".parse().unwrap(), "8i".parse().unwrap()],
            vec!["1".parse().unwrap(), "-9/2i".parse().unwrap()],
        ])
        .unwrap();
        let json = to_json(&MatrixJson::encode(&m));
        assert_eq!(
            json,
            "{\n  \"rows\": 2,\n  \"cols\": 2,\n  \"entries\": [\n    [\n      \"1\",\n      \"8i\"\n    ],\n    [\n      \"1\",\n      \"-9/2i\"\n    ]\n  ]\n}\n"
        );
        let back: MatrixJson = serde_json::from_str(&json).unwrap();
        assert_eq!(back.decode("A").unwrap(), m);
        assert_eq!(matrix_csv(&m).unwrap(), "1,8i\n1,-9/2i\n");
    }

    #[test]
    fn decode_errors_name_the_location() {
        let bad = MatrixJson {
            rows: 1,
            cols: 2,
            degree: None,
            dim: None,
            entries: vec![vec!["1".into(), "0.5".into()]],
        };
        assert!(bad.decode("A").unwrap_err().to_string().starts_with("A entry (0,1)"));
        let ragged = MatrixJson {
            entries: vec![vec!["1".into()]],
            ..bad
        };
        assert!(matches!(ragged.decode("A"), Err(FormatError::Shape(_))));
    }

    #[test]
    fn lists_and_scales() {
        assert_eq!(split_list("1, 2i").unwrap(), vec!["1", "2i"]);
        assert_eq!(split_list("[\"1\",\"2i\"]").unwrap(), vec!["1", "2i"]);
        assert!(parse_positive(&["1".into(), "-6".into()], "s").is_err());
        assert!(parse_positive(&["1".into(), "i".into()], "s").is_err());
        assert_eq!(
            parse_positive(&["3/2".into()], "s").unwrap()[0],
            Rational::new(3.into(), 2.into())
        );
    }

    #[test]
    fn report_csv_quotes_details() {
        let mut r = Report::new();
        r.push(Check::fail("phi", "entry (0,1): left 1, right 2"));
        assert_eq!(
            report_csv(&r).unwrap(),
            "name,pass,detail\nphi,false,\"entry (0,1): left 1, right 2\"\n"
        );
    }
}
