// SPDX-License-Identifier: Apache-2.0

//! The Segre embedding (P^1)^d → P^(2^d - 1).
//!
//! The coordinate at index `b` is `∏_j (u_j if bit j of b is 0 else v_j)` for
//! factor points `(u_j : v_j)`. For d = 2 this is `(u0u1 : v0u1 : u0v1 : v0v1)`;
//! for d = 3 with factors `(t:x), (t:y), (t:z)` it is
//! `(t³ : t²x : t²y : txy : t²z : txz : tyz : xyz)`.

use std::collections::HashMap;

use super::point::{enumerate_projective_points, ProjectivePoint};
use crate::error::{Error, Result};
use crate::field::{Elem, Field};

pub fn segre(field: &Field, factors: &[ProjectivePoint]) -> Result<ProjectivePoint> {
    if factors.is_empty() {
        return Err(Error::DimensionMismatch("Segre embedding of zero factors".into()));
    }
    if let Some(bad) = factors.iter().find(|p| p.dim() != 1) {
        return Err(Error::DimensionMismatch(format!("{bad:?} is not a point of P^1")));
    }
    let d = factors.len();
    let coords: Vec<Elem> = (0..1usize << d)
        .map(|b| field.product(factors.iter().enumerate().map(|(j, p)| p.coords()[(b >> j) & 1])))
        .collect();
    ProjectivePoint::normalize(field, &coords)
}

/// Recovers the factor points from a point of the Segre variety.
pub fn segre_factors(field: &Field, point: &ProjectivePoint, d: usize) -> Result<Vec<ProjectivePoint>> {
    let c = point.coords();
    if c.len() != 1 << d {
        return Err(Error::DimensionMismatch(format!("point of P^{} is not in P^{}", c.len() - 1, (1 << d) - 1)));
    }
    let b0 = c.iter().position(|x| !x.is_zero()).ok_or(Error::ZeroPoint)?;
    let factors: Vec<ProjectivePoint> = (0..d)
        .map(|j| {
            let lo = b0 & !(1 << j);
            let hi = b0 | (1 << j);
            ProjectivePoint::normalize(field, &[c[lo], c[hi]])
        })
        .collect::<Result<_>>()?;
    if &segre(field, &factors)? != point {
        return Err(Error::Invalid(format!("{point:?} is not on the Segre variety")));
    }
    Ok(factors)
}

/// Rational points of the Segre variety, in global order, with their factor tuples.
pub fn segre_variety(field: &Field, d: usize) -> Vec<(ProjectivePoint, Vec<ProjectivePoint>)> {
    let line = enumerate_projective_points(field, 1);
    let n = line.len();
    let total = n.pow(d as u32);
    let mut out = Vec::with_capacity(total);
    for idx in 0..total {
        let mut rest = idx;
        let factors: Vec<ProjectivePoint> = (0..d)
            .map(|_| {
                let p = line[rest % n].clone();
                rest /= n;
                p
            })
            .collect();
        out.push((segre(field, &factors).expect("points of P^1"), factors));
    }
    out.sort();
    out
}

/// Index of each point of a sorted point list.
pub fn index_of(points: &[ProjectivePoint]) -> HashMap<&ProjectivePoint, usize> {
    points.iter().enumerate().map(|(i, p)| (p, i)).collect()
}

/// The binomial quadrics `x_a x_b = x_{a∧b} x_{a∨b}` cutting out the Segre variety.
pub fn satisfies_segre_relations(field: &Field, point: &ProjectivePoint) -> bool {
    let c = point.coords();
    let n = c.len();
    (0..n).all(|a| (0..n).all(|b| field.mul(c[a], c[b]) == field.mul(c[a & b], c[a | b])))
}
