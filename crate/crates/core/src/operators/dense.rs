use std::fmt;

use num_traits::{One, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::arith::Scalar;
use crate::error::{Error, Result};

/// Finite exact matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseMat {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl DenseMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { Scalar::one() } else { Scalar::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self { rows, cols, entries }
    }

    /// Builds from integer rows; all rows must have equal length.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self::from_fn(rows.len(), cols, |i, j| Scalar::integer(rows[i][j]))
    }

    /// Block-diagonal matrix with `copies` repetitions of `block`.
    pub fn direct_sum(block: &DenseMat, copies: usize) -> Self {
        let (br, bc) = (block.rows, block.cols);
        Self::from_fn(br * copies, bc * copies, |i, j| {
            if i / br == j / bc {
                block.get(i % br, j % bc).clone()
            } else {
                Scalar::zero()
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Scalar) {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &DenseMat) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::InvalidArgument(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols)
                .filter(|&k| !self.get(i, k).is_zero())
                .map(|k| self.get(i, k) * other.get(k, j))
                .sum()
        }))
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::InvalidArgument(format!("vector length {} != {} columns", v.len(), self.cols)));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(self.rows)
    }

    /// Exact Gauss-Jordan inverse; `None` when singular or non-square.
    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a.get(r, col).is_zero())?;
            if pivot != col {
                for j in 0..n {
                    a.entries.swap(pivot * n + j, col * n + j);
                    inv.entries.swap(pivot * n + j, col * n + j);
                }
            }
            let p = a.get(col, col).inverse();
            for j in 0..n {
                let x = a.get(col, j) * &p;
                a.set(col, j, x);
                let y = inv.get(col, j) * &p;
                inv.set(col, j, y);
            }
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let factor = a.get(r, col).clone();
                for j in 0..n {
                    let x = a.get(r, j) - &factor * a.get(col, j);
                    a.set(r, j, x);
                    let y = inv.get(r, j) - &factor * inv.get(col, j);
                    inv.set(r, j, y);
                }
            }
        }
        Some(inv)
    }

    /// One line per row, entries as `num/den` (quadratic values in their
    /// display form).
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(csv_cell).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }
}

pub(crate) fn csv_cell(x: &Scalar) -> String {
    match x {
        Scalar::Rational(r) => format!("{}/{}", r.numer(), r.denom()),
        Scalar::Quad(_) => x.to_string(),
    }
}

impl Serialize for DenseMat {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.rows))?;
        for i in 0..self.rows {
            seq.serialize_element(self.row(i))?;
        }
        seq.end()
    }
}

impl fmt::Display for DenseMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.entries.iter().map(ToString::to_string).collect();
        let width = cells.iter().map(|c| c.chars().count()).max().unwrap_or(1);
        for i in 0..self.rows {
            let line: Vec<String> = (0..self.cols)
                .map(|j| format!("{:>width$}", cells[i * self.cols + j]))
                .collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}
