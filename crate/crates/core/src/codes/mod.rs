// SPDX-License-Identifier: Apache-2.0

//! Linear codes with labelled columns.

mod families;

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Elem, Field, FieldDescriptor, Tower};
use crate::geometry::ProjectivePoint;
use crate::linalg::{subfield_subcode, Matrix};

pub use families::{
    bch_b, bch_b_ext, bch_exponents, bidegree_code, elliptic_code, evaluation_code, extended_rs, hyperbolic_code,
    segre_code, tensor_code, twisted_code,
};

/// A column tag: point coordinates as canonical encodings, or any other tuple.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Label(pub Vec<u32>);

impl From<&ProjectivePoint> for Label {
    fn from(p: &ProjectivePoint) -> Label {
        Label(p.encodings())
    }
}

/// Cyclic structure: column `k` is `α^k`, and row generators are `(α^{rk})_k` for `r ∈ exponents`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cyclic {
    pub length: u64,
    pub exponents: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub family: String,
    pub q: Option<u64>,
    pub d: Option<u32>,
    pub s: Option<u32>,
    pub a: Option<u32>,
    pub b: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cyclic: Option<Cyclic>,
}

impl Provenance {
    pub fn new(family: &str) -> Provenance {
        Provenance { family: family.into(), q: None, d: None, s: None, a: None, b: None, cyclic: None }
    }

    pub fn with(mut self, q: u64, d: u32, s: u32) -> Provenance {
        self.q = Some(q);
        self.d = Some(d);
        self.s = Some(s);
        self
    }
}

#[derive(Clone, Debug)]
pub struct LinearCode {
    field: Field,
    generator: Matrix,
    dimension: usize,
    labels: Vec<Label>,
    provenance: Provenance,
}

#[derive(Serialize)]
struct CodeJson<'a> {
    provenance: &'a Provenance,
    field: FieldDescriptor,
    n: usize,
    k: usize,
    generator: Vec<Vec<u32>>,
    labels: &'a [Label],
}

impl LinearCode {
    pub fn new(generator: Matrix, labels: Vec<Label>, provenance: Provenance) -> Result<LinearCode> {
        if labels.len() != generator.cols() {
            return Err(Error::DimensionMismatch(format!("{} labels for {} columns", labels.len(), generator.cols())));
        }
        let distinct: HashSet<&Label> = labels.iter().collect();
        if distinct.len() != labels.len() {
            return Err(Error::Invalid("column labels must be distinct".into()));
        }
        let dimension = generator.rank();
        Ok(LinearCode { field: generator.field().clone(), generator, dimension, labels, provenance })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn length(&self) -> usize {
        self.generator.cols()
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn generator(&self) -> &Matrix {
        &self.generator
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> LinearCode {
        self.provenance = provenance;
        self
    }

    /// Canonical basis: the nonzero rows of the RREF.
    pub fn basis(&self) -> Matrix {
        self.generator.row_basis()
    }

    pub fn position(&self, label: &Label) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Deletes the given columns.
    pub fn puncture(&self, positions: &[usize]) -> Result<LinearCode> {
        let n = self.length();
        if let Some(&bad) = positions.iter().find(|&&p| p >= n) {
            return Err(Error::OutOfRange(format!("position {bad} in a code of length {n}")));
        }
        let drop: HashSet<usize> = positions.iter().copied().collect();
        let keep: Vec<usize> = (0..n).filter(|c| !drop.contains(c)).collect();
        self.select(&keep)
    }

    pub fn puncture_labels(&self, labels: &[Label]) -> Result<LinearCode> {
        let positions = labels
            .iter()
            .map(|l| self.position(l).ok_or_else(|| Error::Invalid(format!("no column labelled {l:?}"))))
            .collect::<Result<Vec<_>>>()?;
        self.puncture(&positions)
    }

    fn select(&self, cols: &[usize]) -> Result<LinearCode> {
        let generator = self.generator.select_columns(cols)?;
        let labels = cols.iter().map(|&c| self.labels[c].clone()).collect();
        LinearCode::new(generator, labels, self.provenance.clone())
    }

    /// New column `j` is old column `perm[j]`.
    pub fn permute(&self, perm: &[usize]) -> Result<LinearCode> {
        check_permutation(perm, self.length())?;
        self.select(perm)
    }

    /// Reorders columns so that the labels read `order`.
    pub fn align_to(&self, order: &[Label]) -> Result<LinearCode> {
        let index: HashMap<&Label, usize> = self.labels.iter().enumerate().map(|(i, l)| (l, i)).collect();
        if order.len() != self.length() {
            return Err(Error::InvalidPermutation(format!("{} labels for length {}", order.len(), self.length())));
        }
        let perm = order
            .iter()
            .map(|l| index.get(l).copied().ok_or_else(|| Error::InvalidPermutation(format!("unknown label {l:?}"))))
            .collect::<Result<Vec<_>>>()?;
        self.permute(&perm)
    }

    /// Columns sorted by label.
    pub fn sorted(&self) -> Result<LinearCode> {
        let mut order = self.labels.clone();
        order.sort();
        self.align_to(&order)
    }

    pub fn relabel(&self, labels: Vec<Label>) -> Result<LinearCode> {
        LinearCode::new(self.generator.clone(), labels, self.provenance.clone())
    }

    /// Row-space equality, column for column.
    pub fn same_code(&self, other: &LinearCode) -> Result<bool> {
        self.generator.row_space_equal(&other.generator)
    }

    /// Row-space equality after aligning `other` to this code's labels.
    pub fn same_code_by_labels(&self, other: &LinearCode) -> Result<bool> {
        self.same_code(&other.align_to(&self.labels)?)
    }

    /// The subcode of words with every entry in F_q.
    pub fn subfield_subcode(&self, tower: &Tower, family: &str) -> Result<LinearCode> {
        let generator = subfield_subcode(&self.generator, tower)?;
        let mut provenance = self.provenance.clone();
        provenance.family = family.into();
        LinearCode::new(generator, self.labels.clone(), provenance)
    }

    /// Codeword of a message against the canonical basis.
    pub fn encode(&self, message: &[Elem]) -> Result<Vec<Elem>> {
        let basis = self.basis();
        if message.len() != basis.rows() {
            return Err(Error::DimensionMismatch(format!(
                "message of length {} for k = {}",
                message.len(),
                basis.rows()
            )));
        }
        basis.transpose().mul_vec(message)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(CodeJson {
            provenance: &self.provenance,
            field: self.field.descriptor(),
            n: self.length(),
            k: self.dimension,
            generator: self.basis().encodings(),
            labels: &self.labels,
        })
        .expect("plain data")
    }
}

pub(crate) fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    if perm.len() != n {
        return Err(Error::InvalidPermutation(format!("length {} for {} columns", perm.len(), n)));
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || std::mem::replace(&mut seen[p], true) {
            return Err(Error::InvalidPermutation(format!("{perm:?} is not a permutation")));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_code() -> LinearCode {
        let f = Field::of_order(3).unwrap();
        let g = Matrix::from_encodings(&f, &[vec![1, 0, 1, 2], vec![0, 1, 1, 1], vec![1, 1, 2, 0]]).unwrap();
        let labels = (0..4).map(|i| Label(vec![i])).collect();
        LinearCode::new(g, labels, Provenance::new("test")).unwrap()
    }

    #[test]
    fn dimension_is_rank() {
        let c = small_code();
        assert_eq!((c.length(), c.dimension()), (4, 2));
        assert_eq!(c.basis().rows(), 2);
    }

    #[test]
    fn puncturing() {
        let c = small_code();
        assert!(c.puncture(&[]).unwrap().same_code(&c).unwrap());
        let p = c.puncture(&[1]).unwrap();
        assert_eq!(p.length(), 3);
        assert_eq!(p.labels(), &[Label(vec![0]), Label(vec![2]), Label(vec![3])]);
        assert!(c.puncture(&[4]).is_err());
    }

    #[test]
    fn permutation_and_alignment() {
        let c = small_code();
        let p = c.permute(&[3, 2, 1, 0]).unwrap();
        assert_eq!(p.labels()[0], Label(vec![3]));
        assert!(!p.same_code(&c).unwrap());
        assert!(p.same_code_by_labels(&c).unwrap());
        assert!(p.sorted().unwrap().same_code(&c).unwrap());
        assert!(c.permute(&[0, 0, 1, 2]).is_err());
    }

    #[test]
    fn json_shape() {
        let v = small_code().to_json();
        assert_eq!(v["n"], 4);
        assert_eq!(v["k"], 2);
        assert_eq!(v["labels"][2], serde_json::json!([2]));
        assert_eq!(v["provenance"]["family"], "test");
    }

    #[test]
    fn duplicate_labels_rejected() {
        let f = Field::of_order(2).unwrap();
        let g = Matrix::identity(&f, 2);
        assert!(LinearCode::new(g, vec![Label(vec![0]), Label(vec![0])], Provenance::new("x")).is_err());
    }
}
