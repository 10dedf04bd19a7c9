// SPDX-License-Identifier: Apache-2.0

//! The quadratic twist of the hyperbolic quadric and the maps around it.

use std::collections::HashMap;

use super::point::ProjectivePoint;
use super::quadric::BinaryQuadratic;
use crate::error::{Error, Result};
use crate::field::{Elem, Field, Tower};
use crate::linalg::Matrix;

/// `ψ(x:y)` over F_{q^d}: the Segre image of `((x:y), (x^q:y^q), ..., (x^{q^{d-1}}:y^{q^{d-1}}))`.
///
/// Coordinate `b` is `∏_j (x^{q^j} if bit j of b is set else y^{q^j})`, so for
/// d = 2 the image is `(y^{q+1} : x y^q : x^q y : x^{q+1})`. The result is the
/// raw coordinate vector of the given representative `(x, y)`, not normalized.
pub fn psi(tower: &Tower, rep: &[Elem]) -> Result<Vec<Elem>> {
    let &[x, y] = rep else {
        return Err(Error::DimensionMismatch(format!("{rep:?} is not a point of P^1")));
    };
    let big = tower.big();
    let d = tower.degree();
    let xs: Vec<Elem> = (0..d).map(|j| tower.frobenius_q(x, j)).collect();
    let ys: Vec<Elem> = (0..d).map(|j| tower.frobenius_q(y, j)).collect();
    Ok((0..1usize << d)
        .map(|b| big.product((0..d as usize).map(|j| if (b >> j) & 1 == 1 { xs[j] } else { ys[j] })))
        .collect())
}

/// The matrix of `μ_tw` for d = 2: rows `(1,0,0,0), (0,1,w,0), (0,1,w^q,0), (0,0,0,1)` over F_{q^2}.
pub fn twist_matrix_d2(tower: &Tower, w: Elem) -> Result<Matrix> {
    if tower.degree() != 2 {
        return Err(Error::NotSubfield("the quadratic twist needs d = 2".into()));
    }
    if tower.is_in_subfield(w) {
        return Err(Error::OutOfRange(format!("w = {w} lies in F_q")));
    }
    let big = tower.big();
    let wq = tower.frobenius_q(w, 1);
    let rows = vec![
        vec![Elem::ONE, Elem::ZERO, Elem::ZERO, Elem::ZERO],
        vec![Elem::ZERO, Elem::ONE, w, Elem::ZERO],
        vec![Elem::ZERO, Elem::ONE, wq, Elem::ZERO],
        vec![Elem::ZERO, Elem::ZERO, Elem::ZERO, Elem::ONE],
    ];
    Matrix::from_rows(big, rows)
}

/// `(1 : u : v : Q(u,v))` on the elliptic quadric `x0 x3 = Q(x1, x2)`.
pub fn elliptic_param(quadratic: &BinaryQuadratic, u: Elem, v: Elem) -> ProjectivePoint {
    ProjectivePoint::from_normalized(vec![Elem::ONE, u, v, quadratic.eval(u, v)])
}

/// `(0 : 0 : 0 : 1)`, the one rational point of the quadric off the affine chart.
pub fn elliptic_infinity() -> ProjectivePoint {
    ProjectivePoint::from_normalized(vec![Elem::ZERO, Elem::ZERO, Elem::ZERO, Elem::ONE])
}

/// All `q^2 + 1` outputs of the parametrisation, sorted.
pub fn elliptic_param_points(quadratic: &BinaryQuadratic) -> Vec<ProjectivePoint> {
    let f = quadratic.tower().small();
    let mut out: Vec<ProjectivePoint> = f
        .elements()
        .flat_map(|u| f.elements().map(move |v| (u, v)))
        .map(|(u, v)| elliptic_param(quadratic, u, v))
        .collect();
    out.push(elliptic_infinity());
    out.sort();
    out
}

/// The F_q-linear automorphism of the elliptic quadric induced by `x ↦ w x` on
/// F_{q^2} = F_q ⊕ w F_q, acting on column vectors:
///
/// ```text
/// 1  0   0   0
/// 0  0  -N   0
/// 0  1  Tr   0
/// 0  0   0   N
/// ```
///
/// Fails unless `w` is primitive, in which case the quadric's points split as
/// two fixed points and one `(q^2 - 1)`-cycle.
pub fn cyclic_automorphism(quadratic: &BinaryQuadratic) -> Result<Matrix> {
    let tower = quadratic.tower();
    let w = quadratic.w();
    if !tower.big().is_primitive(w) {
        return Err(Error::NotPrimitive(format!("w = {w} does not generate F_q^2*")));
    }
    let f = tower.small();
    let n = tower.norm(w)?;
    let tr = tower.trace(w)?;
    let (o, z) = (Elem::ONE, Elem::ZERO);
    Matrix::from_rows(f, vec![vec![o, z, z, z], vec![z, z, f.neg(n), z], vec![z, o, tr, z], vec![z, z, z, n]])
}

/// The permutation `i ↦ index of M·points[i]`, failing if `M` leaves the set.
pub fn induced_permutation(field: &Field, points: &[ProjectivePoint], m: &Matrix) -> Result<Vec<usize>> {
    let index: HashMap<&ProjectivePoint, usize> = points.iter().enumerate().map(|(i, p)| (p, i)).collect();
    points
        .iter()
        .map(|p| {
            let image = p.transform(field, m)?;
            index
                .get(&image)
                .copied()
                .ok_or_else(|| Error::Invalid(format!("{p:?} maps to {image:?}, off the point set")))
        })
        .collect()
}

/// Cycle lengths of a permutation, sorted ascending.
pub fn cycle_type(perm: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; perm.len()];
    let mut lengths = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        lengths.push(len);
    }
    lengths.sort_unstable();
    lengths
}
