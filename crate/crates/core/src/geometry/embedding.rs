// SPDX-License-Identifier: Apache-2.0

//! Twisted Segre embeddings `φ' : P^d ⇢ P^(2^d - 1)` over F_q.
//!
//! With `λ(x'_0 : ... : x'_d) = (x'_0 : L_0 : ... : L_{d-1})`,
//! `L_j = Σ_i α_i^{q^j} x'_i`, the Segre coordinate `b` of `φ∘λ` is
//! `F_b = x'_0^{d-|S|} ∏_{j∈S} L_j` for `S` the set bits of `b`. Frobenius on
//! coefficients sends `F_b` to `F_{rot(b)}`, `rot` being a cyclic left bit
//! rotation, so each rotation orbit spans an F_{q^d}-space with an F_q-rational
//! basis. Those bases are the coordinates of `φ'` and the change of basis is `μ_tw`.

use std::collections::HashSet;

use super::form::Form;
use super::point::{enumerate_projective_points, ProjectivePoint};
use super::twist::psi;
use crate::error::{Error, Result};
use crate::field::{BasisStyle, Elem, Field, Tower};
use crate::linalg::Matrix;

/// How the F_q-coordinates of each non-trivial orbit are chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum OrbitCoordinates {
    /// Traces `Tr(α*_k F_b)` against the dual basis.
    #[default]
    Trace,
    /// For d = 3: `x'_0 ∂R/∂x'_i` on the orbit of degree-2 products, `R` the norm form.
    Derivative,
}

/// Largest `q^d` for which the factorization is checked pointwise.
const CHECK_LIMIT: u64 = 4096;

#[derive(Clone, Debug)]
pub struct EmbeddingSpec {
    tower: Tower,
    basis: Vec<Elem>,
    forms: Vec<Form>,
    mu: Matrix,
    mu_inv: Matrix,
    points: Vec<ProjectivePoint>,
}

fn rotate(b: usize, d: usize) -> usize {
    ((b << 1) | (b >> (d - 1))) & ((1 << d) - 1)
}

/// Rotation orbits of `0..2^d`, each in ascending order, listed by least member.
fn orbits(d: usize) -> Vec<Vec<usize>> {
    let mut seen = vec![false; 1 << d];
    let mut out = Vec::new();
    for b in 0..1usize << d {
        if seen[b] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut c = b;
        while !seen[c] {
            seen[c] = true;
            orbit.push(c);
            c = rotate(c, d);
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

/// Coefficient vectors of forms over a common monomial list.
fn coefficient_matrix(field: &Field, forms: &[&Form], monos: &[Vec<u32>]) -> Result<Matrix> {
    let rows = forms.iter().map(|f| monos.iter().map(|m| f.coeff(m)).collect()).collect();
    Matrix::from_rows_with_cols(field, rows, monos.len())
}

impl EmbeddingSpec {
    pub fn new(tower: &Tower, style: BasisStyle) -> Result<EmbeddingSpec> {
        let basis = tower.extension_basis(style)?;
        EmbeddingSpec::with_basis(tower, &basis, OrbitCoordinates::Trace)
    }

    pub fn with_basis(tower: &Tower, basis: &[Elem], choice: OrbitCoordinates) -> Result<EmbeddingSpec> {
        let d = tower.degree() as usize;
        if d < 2 {
            return Err(Error::OutOfRange("a twisted embedding needs d >= 2".into()));
        }
        if basis.len() != d || !tower.is_independent(basis) {
            return Err(Error::NotSubfield(format!("{basis:?} is not an F_q-basis of F_q^{d}")));
        }
        if choice == OrbitCoordinates::Derivative && d != 3 {
            return Err(Error::OutOfRange("derivative coordinates are defined for d = 3 only".into()));
        }
        let big = tower.big();
        let small = tower.small();
        let nvars = d + 1;
        let dual = tower.dual_basis(basis)?;

        let lin: Vec<Form> = (0..d as u32)
            .map(|j| {
                let terms = (0..d)
                    .map(|i| {
                        let mut e = vec![0; nvars];
                        e[i + 1] = 1;
                        (e, tower.frobenius_q(basis[i], j))
                    })
                    .collect();
                Form::from_terms(big, nvars, 1, terms)
            })
            .collect::<Result<_>>()?;
        let segre_forms: Vec<Form> = (0..1usize << d)
            .map(|b| {
                let ones = b.count_ones();
                let mut f = Form::monomial(big, vec![0; nvars], Elem::ONE).times_var_power(0, d as u32 - ones);
                for (j, l) in lin.iter().enumerate() {
                    if (b >> j) & 1 == 1 {
                        f = f.mul(l)?;
                    }
                }
                Ok(f)
            })
            .collect::<Result<_>>()?;

        let monos = super::form::monomials(nvars, d as u32);
        let project = |f: &Form| f.map_coeffs(small, |c| tower.project(c));
        let mut forms: Vec<Option<Form>> = vec![None; 1 << d];
        let mut mu = Matrix::zeros(big, 1 << d, 1 << d);

        for orbit in orbits(d) {
            let rep = &segre_forms[orbit[0]];
            let candidates: Vec<Form> = match (orbit.len(), choice) {
                (1, _) => vec![project(rep)?],
                (_, OrbitCoordinates::Derivative) if orbit.len() == 3 && orbit[0] == 3 => {
                    let norm = project(&segre_forms[(1 << d) - 1])?;
                    (1..=d).map(|i| norm.partial(i).times_var_power(0, 1)).collect()
                }
                _ => dual
                    .iter()
                    .map(|&a| rep.map_coeffs(small, |c| tower.trace(big.mul(a, c))))
                    .collect::<Result<_>>()?,
            };
            let cand_refs: Vec<&Form> = candidates.iter().collect();
            let cand_small = coefficient_matrix(small, &cand_refs, &monos)?;
            let rref = cand_small.transpose().rref();
            let chosen: Vec<&Form> = rref.pivots.iter().map(|&k| &candidates[k]).collect();
            if chosen.len() != orbit.len() {
                return Err(Error::Invalid(format!(
                    "orbit {orbit:?} has {} independent rational coordinates, expected {}",
                    chosen.len(),
                    orbit.len()
                )));
            }
            // μ block: F_member = Σ_c μ[member][slot_c] G_c over F_{q^d}
            let g_big = coefficient_matrix(small, &chosen, &monos)?;
            let g_big = Matrix::from_rows(
                big,
                g_big.row_vecs().into_iter().map(|r| r.into_iter().map(|c| tower.embed(c)).collect()).collect(),
            )?;
            let cols = g_big.rref().pivots;
            let square = g_big.select_columns(&cols)?;
            let square_inv = square.inverse()?;
            for &member in &orbit {
                let target = coefficient_matrix(big, &[&segre_forms[member]], &monos)?;
                let coeffs = target.select_columns(&cols)?.mul(&square_inv)?;
                if coeffs.mul(&g_big)? != target {
                    return Err(Error::Invalid(format!("Segre coordinate {member} is not in the span of its orbit")));
                }
                for (c, &slot) in orbit.iter().enumerate() {
                    mu.set(member, slot, coeffs.get(0, c));
                }
            }
            for (g, &slot) in chosen.into_iter().zip(&orbit) {
                forms[slot] = Some(g.clone());
            }
        }
        let forms: Vec<Form> = forms.into_iter().map(|f| f.expect("every slot lies in an orbit")).collect();
        let mu_inv = mu.inverse()?;

        let mut spec =
            EmbeddingSpec { tower: tower.clone(), basis: basis.to_vec(), forms, mu, mu_inv, points: Vec::new() };
        spec.points = spec.image_points()?;
        if tower.big().order() as u64 <= CHECK_LIMIT {
            spec.check_factorization(&segre_forms)?;
        }
        Ok(spec)
    }

    fn image_points(&self) -> Result<Vec<ProjectivePoint>> {
        let small = self.tower.small();
        let d = self.dimension();
        let mut points: Vec<ProjectivePoint> = enumerate_projective_points(small, d)
            .into_iter()
            .filter(|p| p.coords()[0] == Elem::ONE)
            .map(|p| self.phi_prime(p.coords()))
            .collect::<Result<_>>()?;
        let mut inf = vec![Elem::ZERO; 1 << d];
        inf[(1 << d) - 1] = Elem::ONE;
        points.push(ProjectivePoint::from_normalized(inf));
        points.sort();
        let distinct: HashSet<&ProjectivePoint> = points.iter().collect();
        if distinct.len() != points.len() {
            return Err(Error::Invalid("twisted embedding is not injective on rational points".into()));
        }
        Ok(points)
    }

    /// `μ φ'(1 : x') = φ(λ(1 : x'))` on every rational affine point.
    fn check_factorization(&self, segre_forms: &[Form]) -> Result<()> {
        let small = self.tower.small();
        for p in enumerate_projective_points(small, self.dimension()) {
            if p.coords()[0] != Elem::ONE {
                continue;
            }
            let lifted: Vec<Elem> = p.coords().iter().map(|&c| self.tower.embed(c)).collect();
            let rational: Vec<Elem> = self
                .forms
                .iter()
                .map(|f| f.evaluate(p.coords()).map(|v| self.tower.embed(v)))
                .collect::<Result<_>>()?;
            let lhs = self.mu.mul_vec(&rational)?;
            let rhs: Vec<Elem> = segre_forms.iter().map(|f| f.evaluate(&lifted)).collect::<Result<_>>()?;
            if lhs != rhs {
                return Err(Error::Invalid(format!("factorization fails at {p:?}")));
            }
        }
        Ok(())
    }

    pub fn tower(&self) -> &Tower {
        &self.tower
    }

    /// `d`, the number of copies of P^1.
    pub fn dimension(&self) -> usize {
        self.tower.degree() as usize
    }

    pub fn basis(&self) -> &[Elem] {
        &self.basis
    }

    /// Coordinate forms of `φ'` over F_q, degree d in `x'_0, ..., x'_d`.
    pub fn forms(&self) -> &[Form] {
        &self.forms
    }

    /// `μ_tw` over F_{q^d}.
    pub fn mu(&self) -> &Matrix {
        &self.mu
    }

    /// The `q^d + 1` rational points of the twisted variety, in global order.
    pub fn points(&self) -> &[ProjectivePoint] {
        &self.points
    }

    /// `φ'(x')` for a rational point of the affine chart or beyond.
    pub fn phi_prime(&self, coords: &[Elem]) -> Result<ProjectivePoint> {
        let small = self.tower.small();
        let values: Vec<Elem> = self.forms.iter().map(|f| f.evaluate(coords)).collect::<Result<_>>()?;
        ProjectivePoint::normalize(small, &values)
    }

    /// `ψ_tw = μ^{-1} ∘ ψ` on a representative of a point of P^1(F_{q^d}),
    /// returned as a normalized point over F_q.
    pub fn psi_tw(&self, rep: &[Elem]) -> Result<ProjectivePoint> {
        let big = self.tower.big();
        let raw = self.mu_inv.mul_vec(&psi(&self.tower, rep)?)?;
        let normalized = ProjectivePoint::normalize(big, &raw)?;
        let coords: Vec<Elem> = normalized.coords().iter().map(|&c| self.tower.project(c)).collect::<Result<_>>()?;
        Ok(ProjectivePoint::from_normalized(coords))
    }

    /// `(P, ψ_tw(P))` for every point of P^1(F_{q^d}) in global order.
    pub fn point_map(&self) -> Result<Vec<(ProjectivePoint, ProjectivePoint)>> {
        enumerate_projective_points(self.tower.big(), 1)
            .into_iter()
            .map(|p| {
                let image = self.psi_tw(p.coords())?;
                Ok((p, image))
            })
            .collect()
    }
}
