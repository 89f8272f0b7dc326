//! Flat report records and their CSV/JSON writers.
//!
//! Big integers are always written as decimal strings, in JSON as well as
//! CSV, so no consumer ever truncates them to a double.

use std::io::Write;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::polycore::{IntPolynomial, ProductSpec};
use crate::progression::RecursionStep;
use crate::spectral::SupNormEstimate;
use crate::theorems::VerificationRow;

pub(crate) fn as_decimal<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub(crate) fn as_decimal_opt<S: Serializer>(
    v: &Option<BigInt>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.serialize_some(&v.to_string()),
        None => s.serialize_none(),
    }
}

pub(crate) fn as_ratio<S: Serializer>(v: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{}/{}", v.numer(), v.denom()))
}

/// One row of the verification table:
/// `p,s,n,b,m_direct,m_charsum,main_num,main_den,bound_ok,sign_ok`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationRecord {
    pub p: u32,
    pub s: u32,
    pub n: u32,
    pub b: u64,
    pub m_direct: String,
    pub m_charsum: Option<String>,
    pub main_num: String,
    pub main_den: String,
    pub bound_ok: bool,
    /// Empty where no sign claim applies.
    pub sign_ok: Option<bool>,
}

impl From<&VerificationRow> for VerificationRecord {
    fn from(row: &VerificationRow) -> Self {
        VerificationRecord {
            p: row.p,
            s: row.s,
            n: row.n,
            b: row.b,
            m_direct: row.m_value.to_string(),
            m_charsum: row.m_charsum.as_ref().map(ToString::to_string),
            main_num: row.main_term.numer().to_string(),
            main_den: row.main_term.denom().to_string(),
            bound_ok: row.within_bound,
            sign_ok: row.sign_ok(),
        }
    }
}

/// One progression sum: `p,s,n,b,m_direct,m_charsum,modulus`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MsumRecord {
    pub p: u32,
    pub s: u32,
    pub n: u32,
    pub b: u64,
    pub m_direct: Option<String>,
    pub m_charsum: Option<String>,
    pub modulus: u64,
}

/// One coefficient of an expansion: `i,coeff`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoefficientRecord {
    pub i: usize,
    pub coeff: String,
}

impl CoefficientRecord {
    pub fn rows(poly: &IntPolynomial) -> Vec<CoefficientRecord> {
        poly.coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| CoefficientRecord {
                i,
                coeff: c.to_string(),
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SupNormRecord {
    pub p: u32,
    pub s: u32,
    pub n: u32,
    pub degree: u64,
    pub value: f64,
    pub log_value: f64,
    pub theta: f64,
    pub samples: u64,
    pub refined: bool,
}

impl SupNormRecord {
    pub fn new(spec: &ProductSpec, est: &SupNormEstimate) -> Self {
        SupNormRecord {
            p: spec.p(),
            s: spec.s(),
            n: spec.n(),
            degree: spec.degree(),
            value: est.value,
            log_value: est.log_value,
            theta: est.theta,
            samples: est.samples,
            refined: est.refined,
        }
    }
}

/// One step of the recursion check, flattened for CSV.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RecursionRecord {
    pub n: u32,
    pub passed: bool,
    pub which: Option<&'static str>,
    pub index: Option<usize>,
    pub expected: Option<String>,
    pub found: Option<String>,
}

impl From<&RecursionStep> for RecursionRecord {
    fn from(step: &RecursionStep) -> Self {
        let m = step.mismatch.as_ref();
        RecursionRecord {
            n: step.n,
            passed: step.passed,
            which: m.map(|m| m.which),
            index: m.map(|m| m.index),
            expected: m.map(|m| m.expected.clone()),
            found: m.map(|m| m.found.clone()),
        }
    }
}

pub fn write_csv<T: Serialize, W: Write>(rows: &[T], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row).map_err(io_err)?;
    }
    w.flush().map_err(io_err)
}

/// Pretty-printed JSON array followed by a newline.
pub fn write_json<T: Serialize + ?Sized, W: Write>(value: &T, mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, value).map_err(io_err)?;
    out.write_all(b"\n").map_err(io_err)
}

fn io_err(e: impl std::fmt::Display) -> Error {
    Error::Unsupported(format!("write failed: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::Budget;
    use crate::theorems::verify_spec;

    #[test]
    fn verification_csv_header_and_row() {
        let spec = ProductSpec::new(3, 1, 1).unwrap();
        let rows: Vec<VerificationRecord> = verify_spec(&spec, Budget::default())
            .unwrap()
            .iter()
            .map(Into::into)
            .collect();
        let mut buf = Vec::new();
        write_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "p,s,n,b,m_direct,m_charsum,main_num,main_den,bound_ok,sign_ok"
        );
        assert_eq!(lines.next().unwrap(), "3,1,1,0,4,4,3,1,true,true");
        assert_eq!(lines.next().unwrap(), "3,1,1,1,-1,-1,-3,2,true,true");
    }

    #[test]
    fn json_keeps_big_integers_as_strings() {
        let spec = ProductSpec::new(3, 2, 6).unwrap();
        let rows = verify_spec(&spec, Budget::default()).unwrap();
        let mut buf = Vec::new();
        write_json(&rows[..1], &mut buf).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        assert!(v[0]["m_value"].is_string());
        assert!(v[0]["main_term"].as_str().unwrap().contains('/'));
    }

    #[test]
    fn recursion_records_flatten() {
        let report = crate::progression::check_andrews_recursions(2, Budget::default()).unwrap();
        let rows: Vec<RecursionRecord> = report.steps.iter().map(Into::into).collect();
        let mut buf = Vec::new();
        write_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "n,passed,which,index,expected,found\n1,true,,,,\n2,true,,,,\n");
    }

    #[test]
    fn coefficient_rows() {
        let rows = CoefficientRecord::rows(&IntPolynomial::from_i64(&[1, -1]));
        let mut buf = Vec::new();
        write_csv(&rows, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "i,coeff\n0,1\n1,-1\n");
    }
}
