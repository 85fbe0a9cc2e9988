//! Text exchange format for matrices: a JSON object
//! `{"n": 2, "re": [[..], [..]], "im": [[..], [..]]}` with 17 significant digits.

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{CMatrix, HermitianMatrix};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExchangeMatrix {
    pub n: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl ExchangeMatrix {
    pub fn from_matrix(m: &CMatrix) -> Self {
        let n = m.nrows();
        Self {
            n,
            re: (0..n).map(|i| (0..n).map(|j| m[(i, j)].re).collect()).collect(),
            im: (0..n).map(|i| (0..n).map(|j| m[(i, j)].im).collect()).collect(),
        }
    }

    pub fn to_matrix(&self) -> Result<CMatrix> {
        let n = self.n;
        let shape_ok = |rows: &Vec<Vec<f64>>| rows.len() == n && rows.iter().all(|r| r.len() == n);
        if n == 0 || !shape_ok(&self.re) || !shape_ok(&self.im) {
            return Err(Error::Config(format!("exchange matrix arrays do not match n = {n}")));
        }
        Ok(CMatrix::from_fn(n, n, |i, j| Complex64::new(self.re[i][j], self.im[i][j])))
    }

    pub fn to_hermitian(&self) -> Result<HermitianMatrix> {
        HermitianMatrix::new(self.to_matrix()?)
    }

    /// Serializes with every value at 17 significant digits.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let rows = |out: &mut String, rows: &[Vec<f64>]| {
            out.push('[');
            for (i, row) in rows.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                out.push('[');
                for (j, v) in row.iter().enumerate() {
                    if j > 0 {
                        out.push_str(", ");
                    }
                    write!(out, "{v:.16e}").unwrap();
                }
                out.push(']');
            }
            out.push(']');
        };
        write!(out, "{{\"n\": {}, \"re\": ", self.n).unwrap();
        rows(&mut out, &self.re);
        out.push_str(", \"im\": ");
        rows(&mut out, &self.im);
        out.push_str("}\n");
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(format!("bad exchange matrix: {e}")))
    }
}

pub fn write_matrix(path: &Path, m: &CMatrix) -> Result<()> {
    std::fs::write(path, ExchangeMatrix::from_matrix(m).to_text())
        .map_err(|e| Error::Config(format!("cannot write {}: {e}", path.display())))
}

pub fn read_matrix(path: &Path) -> Result<CMatrix> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
    ExchangeMatrix::from_text(&text)?.to_matrix()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_keeps_seventeen_digits() {
        let m = CMatrix::from_row_slice(
            2,
            2,
            &[
                Complex64::new(0.1, 0.0),
                Complex64::new(1.0 / 3.0, -2.0 / 7.0),
                Complex64::new(1.0 / 3.0, 2.0 / 7.0),
                Complex64::new(-1e-300, 0.0),
            ],
        );
        let text = ExchangeMatrix::from_matrix(&m).to_text();
        assert!(text.contains("3.3333333333333331e-1"));
        let back = ExchangeMatrix::from_text(&text).unwrap().to_matrix().unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn shape_mismatch_is_rejected() {
        let bad = ExchangeMatrix {
            n: 2,
            re: vec![vec![1.0, 0.0]],
            im: vec![vec![0.0, 0.0], vec![0.0, 0.0]],
        };
        assert!(bad.to_matrix().is_err());
    }
}
