// SPDX-License-Identifier: Apache-2.0

//! Permutation and monomial equivalence under explicit column maps.

use std::collections::{HashMap, HashSet};

use rand::{Rng, RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::codes::{check_permutation, Label, LinearCode};
use crate::error::{Error, Result};
use crate::field::{Elem, Field, Tower};
use crate::geometry::{EmbeddingSpec, ProjectivePoint};
use crate::linalg::Matrix;

/// Pairs `(label in the source code, label in the target code)`.
pub type PointMap = Vec<(Label, Label)>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceOutcome {
    pub equivalent: bool,
    /// A basis row of one code outside the other, as encodings.
    pub witness_row: Option<Vec<u32>>,
}

fn first_unspanned(a: &Matrix, b: &Matrix) -> Result<Option<Vec<u32>>> {
    for row in a.row_vecs() {
        if !b.spans(&row)? {
            return Ok(Some(row.iter().map(|x| x.enc()).collect()));
        }
    }
    Ok(None)
}

/// Compares two codes on the same columns.
pub fn compare_row_spaces(a: &LinearCode, b: &LinearCode) -> Result<EquivalenceOutcome> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch);
    }
    let (ba, bb) = (a.basis(), b.basis());
    let witness = match first_unspanned(&ba, &bb)? {
        Some(w) => Some(w),
        None => first_unspanned(&bb, &ba)?,
    };
    Ok(EquivalenceOutcome { equivalent: witness.is_none(), witness_row: witness })
}

/// Reorders `source` so that its column mapped to `target`'s label `t` sits where `t` does.
pub fn transport(target: &LinearCode, source: &LinearCode, map: &[(Label, Label)]) -> Result<LinearCode> {
    let n = target.length();
    if source.length() != n || map.len() != n {
        return Err(Error::InvalidPermutation(format!(
            "map of size {} between codes of lengths {} and {}",
            map.len(),
            source.length(),
            n
        )));
    }
    let sources: HashSet<&Label> = source.labels().iter().collect();
    let mut preimage: HashMap<&Label, &Label> = HashMap::with_capacity(n);
    let mut used: HashSet<&Label> = HashSet::with_capacity(n);
    for (s, t) in map {
        if !sources.contains(s) || !used.insert(s) {
            return Err(Error::InvalidPermutation(format!("{s:?} is not a distinct source label")));
        }
        if preimage.insert(t, s).is_some() {
            return Err(Error::InvalidPermutation(format!("{t:?} has two preimages")));
        }
    }
    let order = target
        .labels()
        .iter()
        .map(|t| {
            preimage.get(t).map(|&s| s.clone()).ok_or_else(|| Error::InvalidPermutation(format!("{t:?} is not hit")))
        })
        .collect::<Result<Vec<_>>>()?;
    source.align_to(&order)?.relabel(target.labels().to_vec())
}

/// Whether `c_e` equals `c_b` after moving each column of `c_b` to the image of its label.
pub fn equivalence_via_map(c_e: &LinearCode, c_b: &LinearCode, map: &[(Label, Label)]) -> Result<EquivalenceOutcome> {
    compare_row_spaces(c_e, &transport(c_e, c_b, map)?)
}

/// First transposition `(i, j)` of the images of `map` that breaks equivalence.
pub fn perturbation_search(
    c_e: &LinearCode,
    c_b: &LinearCode,
    map: &[(Label, Label)],
) -> Result<Option<(usize, usize, EquivalenceOutcome)>> {
    for i in 0..map.len() {
        for j in i + 1..map.len() {
            let mut perturbed = map.to_vec();
            let ti = perturbed[i].1.clone();
            perturbed[i].1 = std::mem::replace(&mut perturbed[j].1, ti);
            let outcome = equivalence_via_map(c_e, c_b, &perturbed)?;
            if !outcome.equivalent {
                return Ok(Some((i, j, outcome)));
            }
        }
    }
    Ok(None)
}

/// Nonzero column scalars `D` with `rowspace(b) · D = rowspace(a)`, if any.
///
/// `D` solves `Σ_j b_ij h_lj D_j = 0` for every row `b_i` of `b` and parity
/// check `h_l` of `a`. When the solution space has dimension above one, seeded
/// random combinations are tried.
pub fn monomial_scalars(a: &LinearCode, b: &LinearCode) -> Result<Option<Vec<Elem>>> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch);
    }
    let f = a.field();
    let n = a.length();
    if b.length() != n {
        return Err(Error::DimensionMismatch(format!("lengths {} and {}", n, b.length())));
    }
    if a.dimension() != b.dimension() {
        return Ok(None);
    }
    let gb = b.basis();
    let ha = a.generator().kernel();
    let mut rows = Vec::with_capacity(gb.rows() * ha.rows());
    for i in 0..gb.rows() {
        for l in 0..ha.rows() {
            rows.push((0..n).map(|j| f.mul(gb.get(i, j), ha.get(l, j))).collect::<Vec<_>>());
        }
    }
    let system = Matrix::from_rows_with_cols(f, rows, n)?;
    let solutions = system.kernel();
    let all_nonzero = |v: &[Elem]| v.iter().all(|x| !x.is_zero());
    for r in 0..solutions.rows() {
        if all_nonzero(solutions.row(r)) {
            return Ok(Some(solutions.row(r).to_vec()));
        }
    }
    if solutions.rows() > 1 {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5ca1e);
        for _ in 0..256 {
            let coeffs: Vec<Elem> =
                (0..solutions.rows()).map(|_| Elem::from_enc(rng.random_range(0..f.order()))).collect();
            let v = solutions.transpose().mul_vec(&coeffs)?;
            if all_nonzero(&v) {
                return Ok(Some(v));
            }
        }
    }
    Ok(None)
}

/// Column scalars making `c_e` and the transported `c_b` equal, if any.
pub fn monomial_equivalence_via_map(
    c_e: &LinearCode,
    c_b: &LinearCode,
    map: &[(Label, Label)],
) -> Result<Option<Vec<Elem>>> {
    monomial_scalars(c_e, &transport(c_e, c_b, map)?)
}

/// Whether the column permutation (new column `j` is old `perm[j]`) preserves the code.
pub fn automorphism_check(code: &LinearCode, perm: &[usize]) -> Result<bool> {
    check_permutation(perm, code.length())?;
    code.permute(perm)?.same_code(code)
}

/// Whether permuting and then scaling column `j` by `scalars[j]` preserves the code.
pub fn monomial_automorphism_check(code: &LinearCode, perm: &[usize], scalars: &[Elem]) -> Result<bool> {
    check_permutation(perm, code.length())?;
    if scalars.len() != code.length() || scalars.iter().any(|x| x.is_zero()) {
        return Err(Error::DimensionMismatch("need one nonzero scalar per column".into()));
    }
    let f = code.field();
    let permuted = code.permute(perm)?;
    let g = permuted.generator();
    let rows = (0..g.rows()).map(|i| (0..g.cols()).map(|j| f.mul(g.get(i, j), scalars[j])).collect()).collect();
    Matrix::from_rows_with_cols(f, rows, g.cols())?.row_space_equal(code.generator())
}

/// `P ↦ ψ_tw(P)` from P^1(F_{q^d}) onto the twisted variety.
pub fn plain_point_map(spec: &EmbeddingSpec) -> Result<PointMap> {
    Ok(spec.point_map()?.iter().map(|(p, e)| (Label::from(p), Label::from(e))).collect())
}

/// `(x : y) ↦ ψ_tw(y : x)`, which carries the column of `B^ext` to the point of
/// the twisted variety whose normalized coordinates give the same values.
pub fn twisted_point_map(spec: &EmbeddingSpec) -> Result<PointMap> {
    spec.point_map()?
        .iter()
        .map(|(p, _)| {
            let swapped = [p.coords()[1], p.coords()[0]];
            Ok((Label::from(p), Label::from(&spec.psi_tw(&swapped)?)))
        })
        .collect()
}

/// A random element of SL(2, F) as `[a, b, c, d]`.
pub fn random_sl2<R: Rng>(field: &Field, rng: &mut R) -> [Elem; 4] {
    let q = field.order();
    let mut pick = |lo: u32| Elem::from_enc(rng.random_range(lo..q));
    let a = pick(0);
    if a.is_zero() {
        let b = pick(1);
        let c = field.neg(field.inv(b).expect("nonzero"));
        let d = pick(0);
        [a, b, c, d]
    } else {
        let b = pick(0);
        let c = pick(0);
        let d = field.div(field.add(Elem::ONE, field.mul(b, c)), a).expect("nonzero");
        [a, b, c, d]
    }
}

/// Action of `g = [a, b, c, d]` on points of P^1: `perm[j]` indexes the
/// normalized image of `points[j]`, and `lambda[j]` is the factor removed by normalizing.
pub fn mobius_action(field: &Field, points: &[ProjectivePoint], g: [Elem; 4]) -> Result<(Vec<usize>, Vec<Elem>)> {
    let index: HashMap<&ProjectivePoint, usize> = points.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let [a, b, c, d] = g;
    let mut perm = Vec::with_capacity(points.len());
    let mut lambda = Vec::with_capacity(points.len());
    for p in points {
        let (x, y) = (p.coords()[0], p.coords()[1]);
        let raw = [field.add(field.mul(a, x), field.mul(b, y)), field.add(field.mul(c, x), field.mul(d, y))];
        let lead = *raw.iter().find(|v| !v.is_zero()).ok_or(Error::ZeroPoint)?;
        let image = ProjectivePoint::normalize(field, &raw)?;
        perm.push(*index.get(&image).ok_or_else(|| Error::Invalid(format!("{image:?} is not a listed point")))?);
        lambda.push(lead);
    }
    Ok((perm, lambda))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Psl2Outcome {
    pub samples: usize,
    pub literal: usize,
    pub monomial: usize,
}

/// Tests seeded random elements of SL(2, F_{q^d}) on a code whose columns are
/// P^1(F_{q^d}) in global order and whose forms have degree `m`.
///
/// Each sample is checked as a plain permutation and as the monomial map with
/// column scalars `λ^m`, projected to the code's field.
pub fn psl2_check(code: &LinearCode, tower: &Tower, m: u64, samples: usize, seed: u64) -> Result<Psl2Outcome> {
    let big = tower.big();
    let points: Vec<ProjectivePoint> = crate::geometry::enumerate_projective_points(big, 1);
    let expected: Vec<Label> = points.iter().map(Label::from).collect();
    if code.labels() != expected.as_slice() {
        return Err(Error::Invalid("columns must be P^1(F_q^d) in global order".into()));
    }
    let on_big = code.field() == big;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Psl2Outcome { samples, literal: 0, monomial: 0 };
    for _ in 0..samples {
        let g = random_sl2(big, &mut rng);
        let (perm, lambda) = mobius_action(big, &points, g)?;
        if automorphism_check(code, &perm)? {
            out.literal += 1;
        }
        let scalars = lambda
            .iter()
            .map(|&l| {
                let s = big.pow(l, m);
                if on_big {
                    Ok(s)
                } else {
                    tower.project(s)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        if monomial_automorphism_check(code, &perm, &scalars)? {
            out.monomial += 1;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{bch_b, bch_b_ext, elliptic_code, extended_rs, twisted_code};
    use crate::field::BasisStyle;
    use crate::geometry::BinaryQuadratic;

    fn setup(q: u64) -> (Tower, EmbeddingSpec) {
        let t = Tower::new(&Field::of_order(q).unwrap(), 2).unwrap();
        let spec = EmbeddingSpec::new(&t, BasisStyle::default()).unwrap();
        (t, spec)
    }

    #[test]
    fn elliptic_code_is_the_extended_bch_code() {
        for (q, s) in [(3u64, 1u32), (4, 1), (4, 2), (5, 1)] {
            let (t, spec) = setup(q);
            let c_e = twisted_code(&spec, s).unwrap();
            let quad = BinaryQuadratic::new(&t, None).unwrap();
            assert!(c_e.same_code(&elliptic_code(&quad, s).unwrap()).unwrap());
            let b0 = bch_b_ext(&t, s).unwrap().subfield_subcode(&t, "B0ext").unwrap();
            let map = twisted_point_map(&spec).unwrap();
            let outcome = equivalence_via_map(&c_e, &b0, &map).unwrap();
            assert!(outcome.equivalent, "q = {q}, s = {s}");
            let (_, _, bad) = perturbation_search(&c_e, &b0, &map).unwrap().unwrap();
            assert!(!bad.equivalent && bad.witness_row.is_some());
            // without the swap the map is only monomial
            let plain = plain_point_map(&spec).unwrap();
            assert!(monomial_equivalence_via_map(&c_e, &b0, &plain).unwrap().is_some());
        }
    }

    #[test]
    fn map_must_be_a_bijection() {
        let (t, spec) = setup(3);
        let c_e = twisted_code(&spec, 1).unwrap();
        let b0 = bch_b_ext(&t, 1).unwrap().subfield_subcode(&t, "B0ext").unwrap();
        let mut map = twisted_point_map(&spec).unwrap();
        map[1].1 = map[0].1.clone();
        assert!(matches!(equivalence_via_map(&c_e, &b0, &map), Err(Error::InvalidPermutation(_))));
        map.pop();
        assert!(equivalence_via_map(&c_e, &b0, &map).is_err());
    }

    #[test]
    fn cyclic_shift_preserves_b0() {
        let (t, _) = setup(3);
        let b0 = bch_b(&t, 1).unwrap().subfield_subcode(&t, "B0").unwrap();
        let n = b0.length();
        let shift: Vec<usize> = (0..n).map(|j| (j + 1) % n).collect();
        assert!(automorphism_check(&b0, &shift).unwrap());
        assert!(automorphism_check(&b0, &(0..n).collect::<Vec<_>>()).unwrap());
        assert!(automorphism_check(&b0, &[0]).is_err());
    }

    #[test]
    fn sl2_acts_monomially() {
        let (t, _) = setup(3);
        let ext = bch_b_ext(&t, 1).unwrap();
        let b0 = ext.subfield_subcode(&t, "B0ext").unwrap();
        let out = psl2_check(&b0, &t, 4, 10, 1).unwrap();
        assert_eq!(out.monomial, 10);
        let out = psl2_check(&ext, &t, 4, 10, 1).unwrap();
        assert_eq!(out.monomial, 10);
    }

    #[test]
    fn sampled_matrices_have_determinant_one() {
        let f = Field::of_order(9).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let [a, b, c, d] = random_sl2(&f, &mut rng);
            assert_eq!(f.sub(f.mul(a, d), f.mul(b, c)), Elem::ONE);
        }
    }

    #[test]
    fn monomial_scalars_recover_a_rescaling() {
        let f = Field::of_order(5).unwrap();
        let c = extended_rs(&f, 2).unwrap();
        let scalars: Vec<Elem> = [1, 2, 3, 4, 1, 2].iter().map(|&x| Elem::from_enc(x)).collect();
        let g = c.generator();
        let rows = (0..g.rows()).map(|i| (0..g.cols()).map(|j| f.mul(g.get(i, j), scalars[j])).collect()).collect();
        let scaled = LinearCode::new(
            Matrix::from_rows_with_cols(&f, rows, 6).unwrap(),
            c.labels().to_vec(),
            c.provenance().clone(),
        )
        .unwrap();
        let d = monomial_scalars(&scaled, &c).unwrap().unwrap();
        assert!(monomial_automorphism_check(&c, &(0..6).collect::<Vec<_>>(), &[Elem::ONE; 6]).unwrap());
        let g2 = c.generator();
        let rows = (0..g2.rows()).map(|i| (0..6).map(|j| f.mul(g2.get(i, j), d[j])).collect()).collect();
        assert!(Matrix::from_rows_with_cols(&f, rows, 6).unwrap().row_space_equal(scaled.generator()).unwrap());
    }
}
