// SPDX-License-Identifier: Apache-2.0

//! Sections of varieties by hypersurfaces of degree `s`: exhaustive maxima,
//! ruling decompositions on the hyperbolic quadric and product witnesses.

use std::collections::HashMap;

use serde::Serialize;

use super::mindist::scan_min_weight;
use crate::codes::{evaluation_code, Provenance};
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::geometry::{monomials, segre_factors, Form, ProjectivePoint};
use crate::linalg::Matrix;

#[derive(Clone, Debug, Serialize)]
pub struct Section {
    pub form: String,
    pub zeros: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct SectionSearch {
    pub n: usize,
    pub k: usize,
    pub max_points: usize,
    pub maximizers: Vec<Form>,
    pub zero_sets: Vec<Vec<usize>>,
    pub truncated: bool,
}

/// Evaluation rows of the degree-`s` monomials together with an independent subset.
fn independent_monomials(field: &Field, points: &[ProjectivePoint], s: u32) -> Result<(Vec<Vec<u32>>, Matrix)> {
    let code = evaluation_code(field, points, s, Provenance::new("sections"))?;
    let monos = monomials(points[0].dim() + 1, s);
    let pivots = code.generator().transpose().rref().pivots;
    let chosen: Vec<Vec<u32>> = pivots.iter().map(|&i| monos[i].clone()).collect();
    let rows = pivots.iter().map(|&i| code.generator().row(i).to_vec()).collect();
    Ok((chosen, Matrix::from_rows_with_cols(field, rows, points.len())?))
}

fn zeros_of(word: &[Elem]) -> Vec<usize> {
    word.iter().enumerate().filter(|(_, x)| x.is_zero()).map(|(i, _)| i).collect()
}

/// Largest number of points of `points` on which a degree-`s` form not
/// vanishing on all of them can vanish, with every maximizer up to scalars.
///
/// Forms are enumerated modulo those vanishing on the points, through a set of
/// monomials whose evaluations form a basis of the evaluation code.
pub fn max_section_points(field: &Field, points: &[ProjectivePoint], s: u32, budget: u128) -> Result<SectionSearch> {
    if points.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let (monos, gen) = independent_monomials(field, points, s)?;
    let nvars = points[0].dim() + 1;
    let scan = scan_min_weight(&gen, true, budget)?;
    let n = points.len();
    let mut maximizers = Vec::with_capacity(scan.minimizers.len());
    let mut zero_sets = Vec::with_capacity(scan.minimizers.len());
    for message in &scan.minimizers {
        let terms = monos.iter().cloned().zip(message.iter().copied()).collect();
        maximizers.push(Form::from_terms(field, nvars, s, terms)?);
        zero_sets.push(zeros_of(&gen.transpose().mul_vec(message)?));
    }
    Ok(SectionSearch {
        n,
        k: gen.rows(),
        max_points: n - scan.min_weight,
        maximizers,
        zero_sets,
        truncated: scan.truncated,
    })
}

/// `2s(q+1) - s^2`.
pub fn hyperbolic_section_bound(q: u64, s: u64) -> u64 {
    2 * s * (q + 1) - s * s
}

/// `s(q+1)`.
pub fn elliptic_section_bound(q: u64, s: u64) -> u64 {
    s * (q + 1)
}

/// Whether a zero set on the hyperbolic quadric is the union of `s` lines of
/// each ruling, read through the Segre factors of its points.
pub fn is_union_of_ruling_fibers(field: &Field, points: &[ProjectivePoint], zeros: &[usize], s: usize) -> Result<bool> {
    let line_size = field.order() as usize + 1;
    let mut first: HashMap<ProjectivePoint, usize> = HashMap::new();
    let mut second: HashMap<ProjectivePoint, usize> = HashMap::new();
    let mut factors = Vec::with_capacity(zeros.len());
    for &i in zeros {
        let fs = segre_factors(field, &points[i], 2)?;
        *first.entry(fs[0].clone()).or_default() += 1;
        *second.entry(fs[1].clone()).or_default() += 1;
        factors.push(fs);
    }
    let full_first: Vec<&ProjectivePoint> = first.iter().filter(|(_, &c)| c == line_size).map(|(p, _)| p).collect();
    let full_second: Vec<&ProjectivePoint> = second.iter().filter(|(_, &c)| c == line_size).map(|(p, _)| p).collect();
    if full_first.len() != s || full_second.len() != s {
        return Ok(false);
    }
    Ok(factors.iter().all(|fs| full_first.contains(&&fs[0]) || full_second.contains(&&fs[1])))
}

#[derive(Clone, Debug)]
pub struct ProductWitness {
    pub factors: Vec<Form>,
    pub form: Form,
    pub zeros: Vec<usize>,
    pub weight: usize,
}

/// A product of `s` maximal hyperplane sections with pairwise disjoint zero
/// sets, found by depth-first search over the maximizing hyperplanes in order.
///
/// On the elliptic quadric a maximal plane section is a non-tangent one, and two
/// are disjoint exactly when their common line misses the quadric.
pub fn hyperplane_product_witness(
    field: &Field,
    points: &[ProjectivePoint],
    s: usize,
    budget: u128,
) -> Result<Option<ProductWitness>> {
    let search = max_section_points(field, points, 1, budget)?;
    let sets: Vec<Vec<bool>> = search
        .zero_sets
        .iter()
        .map(|z| {
            let mut mask = vec![false; points.len()];
            for &i in z {
                mask[i] = true;
            }
            mask
        })
        .collect();
    fn extend(sets: &[Vec<bool>], chosen: &mut Vec<usize>, start: usize, s: usize) -> bool {
        if chosen.len() == s {
            return true;
        }
        for c in start..sets.len() {
            let disjoint = chosen.iter().all(|&o| !sets[o].iter().zip(&sets[c]).any(|(a, b)| *a && *b));
            if disjoint {
                chosen.push(c);
                if extend(sets, chosen, c + 1, s) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let mut chosen = Vec::new();
    if !extend(&sets, &mut chosen, 0, s) {
        return Ok(None);
    }
    let factors: Vec<Form> = chosen.iter().map(|&c| search.maximizers[c].clone()).collect();
    let nvars = points[0].dim() + 1;
    let mut form = Form::monomial(field, vec![0; nvars], Elem::ONE);
    for f in &factors {
        form = form.mul(f)?;
    }
    let values: Vec<Elem> = points.iter().map(|p| form.evaluate(p.coords())).collect::<Result<_>>()?;
    let zeros = zeros_of(&values);
    let weight = points.len() - zeros.len();
    Ok(Some(ProductWitness { factors, form, zeros, weight }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Tower;
    use crate::geometry::{BinaryQuadratic, QuadricSpec};

    const BUDGET: u128 = 1 << 24;

    #[test]
    fn hyperbolic_maxima_are_ruling_unions() {
        let f = Field::of_order(3).unwrap();
        let h = QuadricSpec::hyperbolic(&f);
        for s in [1u32, 2] {
            let r = max_section_points(&f, h.points(), s, BUDGET).unwrap();
            assert_eq!(r.max_points as u64, hyperbolic_section_bound(3, s as u64));
            assert!(!r.maximizers.is_empty());
            for (form, z) in r.maximizers.iter().zip(&r.zero_sets) {
                assert_eq!(h.curve_point_count(form).unwrap(), r.max_points);
                assert!(is_union_of_ruling_fibers(&f, h.points(), z, s as usize).unwrap());
            }
        }
    }

    #[test]
    fn elliptic_maxima() {
        let f = Field::of_order(3).unwrap();
        let t = Tower::new(&f, 2).unwrap();
        let e = QuadricSpec::elliptic(&BinaryQuadratic::new(&t, None).unwrap());
        assert_eq!(max_section_points(&f, e.points(), 1, BUDGET).unwrap().max_points, 4);
        assert_eq!(max_section_points(&f, e.points(), 0, BUDGET).unwrap().max_points, 0);
        let x0 = Form::parse(&f, Some(4), "x0").unwrap();
        assert_eq!(e.curve_point_count(&x0).unwrap(), 1);
    }

    #[test]
    fn two_admissible_planes() {
        let f = Field::of_order(4).unwrap();
        let t = Tower::new(&f, 2).unwrap();
        let e = QuadricSpec::elliptic(&BinaryQuadratic::new(&t, None).unwrap());
        let w = hyperplane_product_witness(&f, e.points(), 2, BUDGET).unwrap().unwrap();
        assert_eq!(w.zeros.len(), 10);
        assert_eq!(e.curve_point_count(&w.form).unwrap(), 10);
        assert_eq!(w.weight, 17 - 10);
    }

    #[test]
    fn ruling_check_rejects_other_sets() {
        let f = Field::of_order(3).unwrap();
        let h = QuadricSpec::hyperbolic(&f);
        assert!(!is_union_of_ruling_fibers(&f, h.points(), &[0, 1, 2], 1).unwrap());
    }
}
