// SPDX-License-Identifier: Apache-2.0

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::linalg::Matrix;

/// A point of P^r in normal form: the first nonzero coordinate from the left is 1.
///
/// Coordinates are relative to the field of whatever container holds the point.
/// The derived ordering is lexicographic on canonical encodings, which is the
/// global column order for every code in the crate.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ProjectivePoint(Vec<Elem>);

impl ProjectivePoint {
    pub fn normalize(field: &Field, coords: &[Elem]) -> Result<ProjectivePoint> {
        let lead = coords.iter().position(|x| !x.is_zero()).ok_or(Error::ZeroPoint)?;
        let inv = field.inv(coords[lead])?;
        Ok(ProjectivePoint(coords.iter().map(|&x| field.mul(x, inv)).collect()))
    }

    /// Wraps coordinates the caller knows to be normalized.
    pub(crate) fn from_normalized(coords: Vec<Elem>) -> ProjectivePoint {
        debug_assert_eq!(coords.iter().find(|x| !x.is_zero()), Some(&Elem::ONE));
        ProjectivePoint(coords)
    }

    pub fn coords(&self) -> &[Elem] {
        &self.0
    }

    /// `r` for a point of P^r.
    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn encodings(&self) -> Vec<u32> {
        self.0.iter().map(|x| x.enc()).collect()
    }

    /// Image under the linear map `P ↦ M P`, renormalized.
    pub fn transform(&self, field: &Field, m: &Matrix) -> Result<ProjectivePoint> {
        ProjectivePoint::normalize(field, &m.mul_vec(&self.0)?)
    }
}

/// Every point of P^r(F), in ascending lexicographic order of encodings.
pub fn enumerate_projective_points(field: &Field, r: usize) -> Vec<ProjectivePoint> {
    let q = field.order() as u64;
    let mut out = Vec::with_capacity(((q.pow(r as u32 + 1) - 1) / (q - 1)) as usize);
    for lead in (0..=r).rev() {
        let free = r - lead;
        let mut tail = vec![0u32; free];
        loop {
            let mut coords = vec![Elem::ZERO; r + 1];
            coords[lead] = Elem::ONE;
            for (k, &t) in tail.iter().enumerate() {
                coords[lead + 1 + k] = Elem::from_enc(t);
            }
            out.push(ProjectivePoint(coords));
            // odometer with the last coordinate fastest
            let mut k = free;
            loop {
                if k == 0 {
                    break;
                }
                k -= 1;
                tail[k] += 1;
                if (tail[k] as u64) < q {
                    break;
                }
                tail[k] = 0;
                if k == 0 {
                    k = usize::MAX;
                    break;
                }
            }
            if free == 0 || k == usize::MAX {
                break;
            }
        }
    }
    out
}
