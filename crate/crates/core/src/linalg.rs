// SPDX-License-Identifier: Apache-2.0

//! Dense matrices over a [`Field`].
//!
//! Pivoting is deterministic (columns left to right, first nonzero row from the
//! top), so reduced forms are reproducible byte for byte.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Elem, Field, FieldDescriptor, Tower};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix {}x{} over {:?}", self.rows, self.cols, self.field)?;
        f.write_str(&self.to_text())
    }
}

/// Result of [`Matrix::rref`].
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

#[derive(Serialize)]
struct MatrixJson<'a> {
    field: FieldDescriptor,
    rows: Vec<&'a [u32]>,
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field: field.clone(), rows, cols, data: vec![Elem::ZERO; rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Elem::ONE);
        }
        m
    }

    pub fn from_rows(field: &Field, rows: Vec<Vec<Elem>>) -> Result<Matrix> {
        let cols = rows.first().map_or(0, Vec::len);
        Matrix::from_rows_with_cols(field, rows, cols)
    }

    /// Like [`Matrix::from_rows`] but keeps the column count when `rows` is empty.
    pub fn from_rows_with_cols(field: &Field, rows: Vec<Vec<Elem>>, cols: usize) -> Result<Matrix> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!("ragged rows: {} vs {}", row.len(), cols)));
            }
            if let Some(bad) = row.iter().find(|x| x.enc() >= field.order()) {
                return Err(Error::InvalidElement { enc: bad.enc() as u64, order: field.order() as u64 });
            }
            data.extend(row);
        }
        Ok(Matrix { field: field.clone(), rows: n, cols, data })
    }

    /// Builds from canonical encodings.
    pub fn from_encodings(field: &Field, rows: &[Vec<u32>]) -> Result<Matrix> {
        let rows = rows.iter().map(|r| r.iter().map(|&x| Elem::from_enc(x)).collect()).collect();
        Matrix::from_rows(field, rows)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: Elem) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.same_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let cur = out.get(i, j);
                    out.set(i, j, f.add(cur, f.mul(a, other.get(k, j))));
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Elem]) -> Result<Vec<Elem>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!("vector of length {} for {} columns", v.len(), self.cols)));
        }
        let f = &self.field;
        Ok((0..self.rows).map(|i| f.sum(self.row(i).iter().zip(v).map(|(&a, &b)| f.mul(a, b)))).collect())
    }

    pub fn select_columns(&self, cols: &[usize]) -> Result<Matrix> {
        if let Some(&bad) = cols.iter().find(|&&c| c >= self.cols) {
            return Err(Error::DimensionMismatch(format!("column {bad} out of {}", self.cols)));
        }
        let mut out = Matrix::zeros(&self.field, self.rows, cols.len());
        for i in 0..self.rows {
            for (jj, &j) in cols.iter().enumerate() {
                out.set(i, jj, self.get(i, j));
            }
        }
        Ok(out)
    }

    pub fn stack(&self, other: &Matrix) -> Result<Matrix> {
        self.same_field(other)?;
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch("column counts differ".into()));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix { field: self.field.clone(), rows: self.rows + other.rows, cols: self.cols, data })
    }

    fn same_field(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    /// Reduced row echelon form.
    pub fn rref(&self) -> Rref {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
            for j in c..m.cols {
                let x = m.get(r, j);
                m.set(r, j, f.mul(x, inv));
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c);
                if factor.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let x = m.get(i, j);
                    let y = m.get(r, j);
                    m.set(i, j, f.sub(x, f.mul(factor, y)));
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, rank: r, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Nonzero rows of the RREF: the canonical basis of the row space.
    pub fn row_basis(&self) -> Matrix {
        let Rref { matrix, rank, .. } = self.rref();
        Matrix {
            field: self.field.clone(),
            rows: rank,
            cols: self.cols,
            data: matrix.data[..rank * self.cols].to_vec(),
        }
    }

    /// Basis of the right kernel, one vector per row: `self * kernel^T = 0`.
    pub fn kernel(&self) -> Matrix {
        let f = &self.field;
        let Rref { matrix, rank, pivots } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut out = Matrix::zeros(f, free.len(), self.cols);
        for (k, &fc) in free.iter().enumerate() {
            out.set(k, fc, Elem::ONE);
            for (i, &pc) in pivots.iter().enumerate().take(rank) {
                out.set(k, pc, f.neg(matrix.get(i, fc)));
            }
        }
        out
    }

    /// Inverse of a square matrix.
    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(&self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, Elem::ONE);
        }
        let Rref { matrix, rank, pivots } = aug.rref();
        if rank < n || pivots[n - 1] >= n {
            return Err(Error::DivisionByZero);
        }
        let mut inv = Matrix::zeros(&self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, matrix.get(i, n + j));
            }
        }
        Ok(inv)
    }

    /// True iff both matrices span the same row space.
    pub fn row_space_equal(&self, other: &Matrix) -> Result<bool> {
        self.same_field(other)?;
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!("{} vs {} columns", self.cols, other.cols)));
        }
        Ok(self.row_basis() == other.row_basis())
    }

    /// Whether `v` lies in the row space.
    pub fn spans(&self, v: &[Elem]) -> Result<bool> {
        let single = Matrix::from_rows_with_cols(&self.field, vec![v.to_vec()], self.cols)?;
        Ok(self.stack(&single)?.rank() == self.rank())
    }

    /// Kronecker product: block `(i, j)` is `self[i, j] * other`.
    pub fn kronecker(&self, other: &Matrix) -> Result<Matrix> {
        self.same_field(other)?;
        let f = &self.field;
        let (ra, ca, rb, cb) = (self.rows, self.cols, other.rows, other.cols);
        let mut out = Matrix::zeros(f, ra * rb, ca * cb);
        for i in 0..ra {
            for j in 0..ca {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..rb {
                    for l in 0..cb {
                        out.set(i * rb + k, j * cb + l, f.mul(a, other.get(k, l)));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Entries as canonical encodings, row-major.
    pub fn encodings(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|x| x.enc()).collect()).collect()
    }

    /// One row per line, encodings separated by single spaces.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(|x| x.enc().to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let enc = self.encodings();
        serde_json::to_value(MatrixJson {
            field: self.field.descriptor(),
            rows: enc.iter().map(Vec::as_slice).collect(),
        })
        .expect("serializable")
    }
}

/// Generator matrix over F_q of the subfield subcode of the row space of `gen`
/// (a matrix over F_{q^d}).
///
/// Every parity check `h` of the big code expands over an F_q-basis of F_{q^d}
/// into `d` parity checks over F_q; the subcode is their common kernel.
pub fn subfield_subcode(gen: &Matrix, tower: &Tower) -> Result<Matrix> {
    if gen.field() != tower.big() {
        return Err(Error::NotSubfield("generator is not over the tower's big field".into()));
    }
    let small = tower.small();
    let d = tower.degree() as usize;
    let n = gen.cols();
    let parity = gen.kernel();
    if parity.rows() == 0 {
        return Ok(Matrix::identity(small, n));
    }
    let basis = tower.extension_basis(Default::default())?;
    let coords = tower.coordinates(&basis)?;
    let mut expanded = vec![vec![Elem::ZERO; n]; parity.rows() * d];
    for i in 0..parity.rows() {
        for (j, &x) in parity.row(i).iter().enumerate() {
            for (t, c) in coords.of(x).enumerate() {
                expanded[i * d + t][j] = c;
            }
        }
    }
    Ok(Matrix::from_rows_with_cols(small, expanded, n)?.kernel())
}
