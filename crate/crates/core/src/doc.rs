//! JSON documents for matrices, decompositions, canonical forms, search
//! reports and sweep summaries.
//!
//! Entries over `Z/m` and `GF(p)` are JSON integers; entries over the other
//! rings are polynomial strings in the ring variable. Integer input may be
//! negative and strings are accepted everywhere.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::canonical::PrimaryRcf;
use crate::decompose::{Guarantee, PotentDecomposition};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::oracle::{SearchReport, SweepSummary};
use crate::parse::{parse_element, parse_ring};
use crate::rings::Ring;

pub type Rows = Vec<Vec<Value>>;

fn json_error(src: &str, e: serde_json::Error) -> Error {
    // serde_json reports 1-based line and column; turn them into a byte offset.
    let offset: usize = src
        .split_inclusive('\n')
        .take(e.line().saturating_sub(1))
        .map(str::len)
        .sum();
    Error::parse(offset + e.column().saturating_sub(1), e.to_string())
}

pub fn rows_of(m: &Matrix) -> Rows {
    let ring = m.ring();
    m.rows()
        .iter()
        .map(|row| {
            row.iter()
                .map(|e| {
                    if ring.degree() == 1 {
                        Value::from(e.coeffs()[0])
                    } else {
                        Value::from(ring.format_elem(e))
                    }
                })
                .collect()
        })
        .collect()
}

pub fn matrix_from_rows(ring: &Ring, rows: &Rows) -> Result<Matrix> {
    let n = rows.len();
    let mut out = Vec::with_capacity(n);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(Error::ShapeMismatch(format!(
                "row {i} has {} entries, expected {n}",
                row.len()
            )));
        }
        let parsed = row
            .iter()
            .map(|v| match v {
                Value::Number(num) => num
                    .as_i64()
                    .map(|x| ring.from_i64(x))
                    .ok_or_else(|| Error::parse(0, format!("entry {num} is not an integer"))),
                Value::String(s) => parse_element(ring, s),
                other => Err(Error::parse(0, format!("entry {other} is not a ring element"))),
            })
            .collect::<Result<Vec<_>>>()?;
        out.push(parsed);
    }
    Matrix::from_rows(ring, out)
}

#[derive(Serialize, Deserialize)]
struct MatrixDoc {
    ring: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    rows: Rows,
}

/// `{ring, n, rows}`.
pub fn matrix_to_json(m: &Matrix) -> String {
    let doc = MatrixDoc {
        ring: m.ring().to_string(),
        n: Some(m.dim()),
        rows: rows_of(m),
    };
    serde_json::to_string_pretty(&doc).expect("serializable")
}

/// Reads `{ring, rows}`; `n`, when present, must match the row count.
pub fn matrix_from_json(src: &str) -> Result<Matrix> {
    let doc: MatrixDoc = serde_json::from_str(src).map_err(|e| json_error(src, e))?;
    let ring = parse_ring(&doc.ring)?;
    let m = matrix_from_rows(&ring, &doc.rows)?;
    if let Some(n) = doc.n {
        if n != m.dim() {
            return Err(Error::ShapeMismatch(format!("n = {n} but {} rows given", m.dim())));
        }
    }
    Ok(m)
}

#[derive(Serialize, Deserialize)]
pub struct DecompositionDoc {
    pub ring: String,
    #[serde(rename = "A")]
    pub a: Rows,
    #[serde(rename = "P")]
    pub p: Rows,
    #[serde(rename = "N")]
    pub n: Rows,
    pub exponent: String,
    pub guarantee: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ideal_generator: Option<u64>,
    #[serde(default)]
    pub certificate: BTreeMap<String, bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub minimal_exponent: Option<u64>,
}

/// A decomposition read back from a document.
#[derive(Clone, Debug)]
pub struct ClaimedDecomposition {
    pub a: Matrix,
    pub p: Matrix,
    pub n: Matrix,
    pub exponent: BigUint,
    pub guarantee: Guarantee,
}

pub fn decomposition_to_json(d: &PotentDecomposition) -> String {
    let ideal_generator = match d.guarantee {
        Guarantee::SquareZero => None,
        Guarantee::SquareInIdeal { generator } => Some(generator),
    };
    let doc = DecompositionDoc {
        ring: d.matrix.ring().to_string(),
        a: rows_of(&d.matrix),
        p: rows_of(&d.potent),
        n: rows_of(&d.nilpotent),
        exponent: d.exponent.to_string(),
        guarantee: d.guarantee.to_string(),
        ideal_generator,
        certificate: d.certificate.checks.clone(),
        minimal_exponent: d.certificate.minimal_exponent,
    };
    serde_json::to_string_pretty(&doc).expect("serializable")
}

pub fn decomposition_from_json(src: &str) -> Result<ClaimedDecomposition> {
    let doc: DecompositionDoc = serde_json::from_str(src).map_err(|e| json_error(src, e))?;
    let ring = parse_ring(&doc.ring)?;
    let exponent: BigUint = doc
        .exponent
        .parse()
        .map_err(|_| Error::parse(0, format!("exponent {:?} is not a decimal integer", doc.exponent)))?;
    let guarantee = match (doc.guarantee.as_str(), doc.ideal_generator) {
        ("square-zero", _) => Guarantee::SquareZero,
        ("square-in-p2", Some(generator)) => Guarantee::SquareInIdeal { generator },
        ("square-in-p2", None) => {
            let m = ring.characteristic();
            let p = crate::rings::factor_integer(m)
                .first()
                .map(|f| f.0)
                .unwrap_or(m);
            Guarantee::SquareInIdeal { generator: p * p }
        }
        (other, _) => return Err(Error::parse(0, format!("unknown guarantee {other:?}"))),
    };
    Ok(ClaimedDecomposition {
        a: matrix_from_rows(&ring, &doc.a)?,
        p: matrix_from_rows(&ring, &doc.p)?,
        n: matrix_from_rows(&ring, &doc.n)?,
        exponent,
        guarantee,
    })
}

#[derive(Serialize)]
struct RcfDoc {
    ring: String,
    #[serde(rename = "Q")]
    q: Rows,
    blocks: Vec<Rows>,
    divisors: Vec<String>,
}

pub fn rcf_to_json(r: &PrimaryRcf) -> String {
    let doc = RcfDoc {
        ring: r.q.ring().to_string(),
        q: rows_of(&r.q),
        blocks: r.blocks.iter().map(rows_of).collect(),
        divisors: r.divisors.iter().map(|d| d.to_string()).collect(),
    };
    serde_json::to_string_pretty(&doc).expect("serializable")
}

#[derive(Serialize)]
struct FoundDoc {
    #[serde(rename = "P")]
    p: Rows,
    #[serde(rename = "N")]
    n: Rows,
}

#[derive(Serialize)]
struct SearchDoc {
    ring: String,
    #[serde(rename = "A")]
    a: Rows,
    max_nil_index: u32,
    found: Option<FoundDoc>,
    search_size: u64,
}

pub fn search_to_json(r: &SearchReport) -> String {
    let doc = SearchDoc {
        ring: r.ring.to_string(),
        a: rows_of(&r.a),
        max_nil_index: r.max_nil_index,
        found: r.found.as_ref().map(|(p, n)| FoundDoc {
            p: rows_of(p),
            n: rows_of(n),
        }),
        search_size: r.search_size,
    };
    serde_json::to_string_pretty(&doc).expect("serializable")
}

#[derive(Serialize)]
struct SweepDoc {
    ring: String,
    n: usize,
    total: u64,
    decomposed: u64,
    certificate_failures: u64,
}

pub fn sweep_to_json(s: &SweepSummary) -> String {
    let doc = SweepDoc {
        ring: s.ring.to_string(),
        n: s.n,
        total: s.total,
        decomposed: s.decomposed,
        certificate_failures: s.certificate_failures,
    };
    serde_json::to_string_pretty(&doc).expect("serializable")
}
