// SPDX-License-Identifier: Apache-2.0

//! The tower F_q ⊂ F_{q^d}.
//!
//! F_{q^d} is its own GF(p^{ed}) with its own modulus; F_q is embedded by
//! sending the class of `t` to the least-encoding root of F_q's modulus in the
//! big field.

use std::sync::Arc;

use super::{Elem, Field};
use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// Which F_q-basis of F_{q^d} to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisStyle {
    /// `1, g, ..., g^{d-1}`; the generator defaults to the primitive element of
    /// the big field.
    Polynomial { generator: Option<Elem> },
    /// `b, b^q, ..., b^{q^{d-1}}` for the least-encoding `b` that works.
    Normal,
}

impl Default for BasisStyle {
    fn default() -> Self {
        BasisStyle::Polynomial { generator: None }
    }
}

struct Inner {
    small: Field,
    big: Field,
    degree: u32,
    embed: Vec<Elem>,
    project: Vec<u32>,
}

#[derive(Clone)]
pub struct Tower(Arc<Inner>);

impl std::fmt::Debug for Tower {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Tower({:?} ⊂ {:?})", self.0.small, self.0.big)
    }
}

const NOT_IN_SUBFIELD: u32 = u32::MAX;

impl Tower {
    /// F_q ⊂ F_{q^d} with the default modulus for the big field.
    pub fn new(small: &Field, d: u32) -> Result<Tower> {
        if d == 0 {
            return Err(Error::NotSubfield("extension degree must be positive".into()));
        }
        let big = Field::new(small.characteristic() as u64, small.degree() * d)?;
        Tower::with_big(small, &big)
    }

    pub fn with_big(small: &Field, big: &Field) -> Result<Tower> {
        if small.characteristic() != big.characteristic() || !big.degree().is_multiple_of(small.degree()) {
            return Err(Error::NotSubfield(format!("{small:?} does not embed in {big:?}")));
        }
        let d = big.degree() / small.degree();
        let root = big
            .elements()
            .find(|&r| {
                let value = small
                    .modulus()
                    .iter()
                    .rev()
                    .fold(Elem::ZERO, |acc, &c| big.add(big.mul(acc, r), big.from_int(c as i64)));
                value.is_zero()
            })
            .expect("an irreducible polynomial of degree e splits in GF(p^{ed})");

        let mut embed = Vec::with_capacity(small.order() as usize);
        let mut project = vec![NOT_IN_SUBFIELD; big.order() as usize];
        for a in small.elements() {
            let img = small
                .digits(a)
                .iter()
                .rev()
                .fold(Elem::ZERO, |acc, &c| big.add(big.mul(acc, root), big.from_int(c as i64)));
            project[img.enc() as usize] = a.enc();
            embed.push(img);
        }
        Ok(Tower(Arc::new(Inner { small: small.clone(), big: big.clone(), degree: d, embed, project })))
    }

    pub fn small(&self) -> &Field {
        &self.0.small
    }

    pub fn big(&self) -> &Field {
        &self.0.big
    }

    /// `[F_{q^d} : F_q]`.
    pub fn degree(&self) -> u32 {
        self.0.degree
    }

    /// Order of the small field.
    pub fn q(&self) -> u64 {
        self.0.small.order() as u64
    }

    #[inline]
    pub fn embed(&self, a: Elem) -> Elem {
        self.0.embed[a.enc() as usize]
    }

    #[inline]
    pub fn project(&self, x: Elem) -> Result<Elem> {
        match self.0.project[x.enc() as usize] {
            NOT_IN_SUBFIELD => Err(Error::NotSubfield(format!("element {x} of the big field is not in F_q"))),
            a => Ok(Elem::from_enc(a)),
        }
    }

    /// Membership by Frobenius fixedness, independent of the embedding table.
    pub fn is_in_subfield(&self, x: Elem) -> bool {
        self.frobenius_q(x, 1) == x
    }

    /// `x ↦ x^(q^k)`.
    pub fn frobenius_q(&self, x: Elem, k: u32) -> Elem {
        self.0.big.frobenius(x, k * self.0.small.degree())
    }

    /// `N(x) = x^((q^d - 1)/(q - 1))`, still in the big field.
    pub fn norm_big(&self, x: Elem) -> Elem {
        let q = self.q();
        let big_order = self.0.big.order() as u64;
        self.0.big.pow(x, (big_order - 1) / (q - 1))
    }

    /// `Tr(x) = x + x^q + ... + x^(q^(d-1))`, still in the big field.
    pub fn trace_big(&self, x: Elem) -> Elem {
        let big = &self.0.big;
        big.sum((0..self.0.degree).map(|k| self.frobenius_q(x, k)))
    }

    pub fn norm(&self, x: Elem) -> Result<Elem> {
        self.project(self.norm_big(x))
    }

    pub fn trace(&self, x: Elem) -> Result<Elem> {
        self.project(self.trace_big(x))
    }

    /// F_q-linear independence via the Moore matrix `(b_i^(q^j))`, which is
    /// invertible exactly when the `b_i` are independent over F_q.
    pub fn is_independent(&self, elems: &[Elem]) -> bool {
        let rows: Vec<Vec<Elem>> =
            elems.iter().map(|&b| (0..self.0.degree).map(|j| self.frobenius_q(b, j)).collect()).collect();
        if rows.is_empty() {
            return true;
        }
        Matrix::from_rows(&self.0.big, rows).expect("rectangular").rank() == elems.len()
    }

    /// A basis of F_{q^d} over F_q.
    pub fn extension_basis(&self, style: BasisStyle) -> Result<Vec<Elem>> {
        let d = self.0.degree;
        let big = &self.0.big;
        let basis = match style {
            BasisStyle::Polynomial { generator } => {
                let g = generator.unwrap_or_else(|| big.primitive_element());
                (0..d as u64).map(|k| big.pow(g, k)).collect::<Vec<_>>()
            }
            BasisStyle::Normal => big
                .elements()
                .skip(1)
                .map(|b| (0..d).map(|k| self.frobenius_q(b, k)).collect::<Vec<_>>())
                .find(|cand| self.is_independent(cand))
                .expect("every finite extension has a normal basis"),
        };
        if !self.is_independent(&basis) {
            return Err(Error::NotSubfield(format!("{basis:?} is not an F_q-basis of F_q^{d}")));
        }
        Ok(basis)
    }

    /// The trace-dual basis: `Tr(dual_i * basis_j) = δ_ij`.
    pub fn dual_basis(&self, basis: &[Elem]) -> Result<Vec<Elem>> {
        let big = &self.0.big;
        let d = basis.len();
        let gram: Vec<Vec<Elem>> =
            basis.iter().map(|&a| basis.iter().map(|&b| self.trace_big(big.mul(a, b))).collect()).collect();
        let inv = Matrix::from_rows(big, gram)?.inverse()?;
        Ok((0..d).map(|i| big.sum((0..d).map(|k| big.mul(inv.get(i, k), basis[k])))).collect())
    }

    /// Coordinates over F_q of every big-field element in the given basis.
    pub fn coordinates(&self, basis: &[Elem]) -> Result<BasisCoordinates> {
        let d = self.0.degree as usize;
        if basis.len() != d || !self.is_independent(basis) {
            return Err(Error::NotSubfield("not an F_q-basis".into()));
        }
        let big = &self.0.big;
        let small = &self.0.small;
        let q = small.order() as usize;
        let mut table = vec![0u32; big.order() as usize * d];
        let mut coeffs = vec![0usize; d];
        let total = q.pow(d as u32);
        for _ in 0..total {
            let value =
                big.sum(coeffs.iter().zip(basis).map(|(&c, &b)| big.mul(self.embed(Elem::from_enc(c as u32)), b)));
            let slot = value.enc() as usize * d;
            for (t, &c) in coeffs.iter().enumerate() {
                table[slot + t] = c as u32;
            }
            for c in coeffs.iter_mut() {
                *c += 1;
                if *c < q {
                    break;
                }
                *c = 0;
            }
        }
        Ok(BasisCoordinates { d, table })
    }
}

/// Lookup table from big-field elements to F_q coordinates.
pub struct BasisCoordinates {
    d: usize,
    table: Vec<u32>,
}

impl BasisCoordinates {
    pub fn of(&self, x: Elem) -> impl Iterator<Item = Elem> + '_ {
        let slot = x.enc() as usize * self.d;
        self.table[slot..slot + self.d].iter().map(|&c| Elem::from_enc(c))
    }
}
