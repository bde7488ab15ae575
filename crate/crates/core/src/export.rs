//! Exact serialization: matrices as sorted `[row, col, "p/q"]` triplets,
//! polynomials as exponent-tuple maps, and CSV with rational strings.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::complex::PolyMap;
use crate::error::{Error, Result};
use crate::linalg::{format_rational, parse_rational, SparseMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(usize, usize, String)>,
}

impl From<&SparseMatrix> for MatrixJson {
    fn from(m: &SparseMatrix) -> Self {
        MatrixJson {
            rows: m.rows(),
            cols: m.cols(),
            entries: m.entries().map(|(r, c, v)| (r, c, format_rational(v))).collect(),
        }
    }
}

impl MatrixJson {
    pub fn to_matrix(&self) -> Result<SparseMatrix> {
        let mut trip = Vec::with_capacity(self.entries.len());
        for (r, c, v) in &self.entries {
            if *r >= self.rows || *c >= self.cols {
                return Err(Error::Parse(format!("entry ({r}, {c}) outside {}x{}", self.rows, self.cols)));
            }
            trip.push((*r, *c, parse_rational(v)?));
        }
        Ok(SparseMatrix::from_triplets(self.rows, self.cols, trip))
    }

    pub fn parse(text: &str) -> Result<SparseMatrix> {
        let m: MatrixJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        m.to_matrix()
    }
}

/// A polynomial matrix as sorted `[row, col, {exponents: coeff}]` triplets.
#[derive(Clone, Debug, Serialize)]
pub struct PolyMatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(usize, usize, BTreeMap<String, String>)>,
}

impl From<&PolyMap> for PolyMatrixJson {
    fn from(m: &PolyMap) -> Self {
        let (rows, cols) = m.shape();
        let mut entries: Vec<_> = m.entries().map(|(r, c, p)| (r, c, p.to_string_map())).collect();
        entries.sort_by_key(|(r, c, _)| (*r, *c));
        PolyMatrixJson { rows, cols, entries }
    }
}

/// Dense CSV with exact entries, one matrix row per line.
pub fn matrix_csv(m: &SparseMatrix) -> String {
    let mut out = String::new();
    for row in m.to_dense() {
        let cells: Vec<String> = row.iter().map(format_rational).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}
