// SPDX-License-Identifier: Apache-2.0

use rayon::prelude::*;

use super::{Cyclic, Label, LinearCode, Provenance};
use crate::error::{Error, Result};
use crate::field::{Elem, Field, Tower};
use crate::geometry::{
    enumerate_projective_points, monomials, segre, segre_variety, BinaryQuadratic, EmbeddingSpec, ProjectivePoint,
    QuadricSpec,
};
use crate::linalg::Matrix;

/// Evaluations of every degree-`s` monomial (graded lex, `x0` first) at the points.
pub fn evaluation_code(
    field: &Field,
    points: &[ProjectivePoint],
    s: u32,
    provenance: Provenance,
) -> Result<LinearCode> {
    let first = points.first().ok_or(Error::EmptyPointSet)?;
    let nvars = first.dim() + 1;
    if let Some(bad) = points.iter().find(|p| p.dim() + 1 != nvars) {
        return Err(Error::DimensionMismatch(format!("{bad:?} is not in P^{}", nvars - 1)));
    }
    // powers[p][v][e] = x_v(P_p)^e
    let powers: Vec<Vec<Vec<Elem>>> = points
        .iter()
        .map(|p| p.coords().iter().map(|&x| (0..=s as u64).map(|e| field.pow(x, e)).collect()).collect())
        .collect();
    let rows: Vec<Vec<Elem>> = monomials(nvars, s)
        .par_iter()
        .map(|mono| {
            powers.iter().map(|pw| field.product(mono.iter().enumerate().map(|(v, &e)| pw[v][e as usize]))).collect()
        })
        .collect();
    let generator = Matrix::from_rows_with_cols(field, rows, points.len())?;
    LinearCode::new(generator, points.iter().map(Label::from).collect(), provenance)
}

fn require(ok: bool, message: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::OutOfRange(message()))
    }
}

/// `C_{P^1}(s)`: `x^i y^{s-i}` at the `q + 1` points of the line.
pub fn extended_rs(field: &Field, s: u32) -> Result<LinearCode> {
    let q = field.order() as u64;
    require((s as u64) < q, || format!("extended Reed-Solomon codes require s < q (s = {s}, q = {q})"))?;
    let points = enumerate_projective_points(field, 1);
    evaluation_code(field, &points, s, Provenance::new("extended-rs").with(q, 1, s))
}

/// Kronecker product; column `(i, j)` sits at `i * n_b + j` with label `a_i ++ b_j`.
pub fn tensor_code(a: &LinearCode, b: &LinearCode) -> Result<LinearCode> {
    let generator = a.generator().kronecker(b.generator())?;
    let labels = a
        .labels()
        .iter()
        .flat_map(|la| b.labels().iter().map(move |lb| Label([la.0.as_slice(), lb.0.as_slice()].concat())))
        .collect();
    let mut provenance = Provenance::new("tensor");
    provenance.q = a.provenance().q;
    LinearCode::new(generator, labels, provenance)
}

/// Forms of bidegree `(a, b)` on `P^1 × P^1`, columns relabelled by Segre images and sorted.
pub fn bidegree_code(field: &Field, a: u32, b: u32) -> Result<LinearCode> {
    let q = field.order() as u64;
    require((a as u64) < q && (b as u64) < q, || {
        format!("bidegree codes require a, b < q (a = {a}, b = {b}, q = {q})")
    })?;
    let ra = extended_rs(field, a)?;
    let rb = extended_rs(field, b)?;
    let line = enumerate_projective_points(field, 1);
    let tensor = tensor_code(&ra, &rb)?;
    let labels = line
        .iter()
        .flat_map(|p| line.iter().map(move |r| (p, r)))
        .map(|(p, r)| segre(field, &[p.clone(), r.clone()]).map(|x| Label::from(&x)))
        .collect::<Result<Vec<_>>>()?;
    let mut provenance = Provenance::new("bidegree");
    provenance.q = Some(q);
    provenance.a = Some(a);
    provenance.b = Some(b);
    tensor.relabel(labels)?.sorted().map(|c| c.with_provenance(provenance))
}

/// `C_H(s)` on `x0 x3 = x1 x2`.
pub fn hyperbolic_code(field: &Field, s: u32) -> Result<LinearCode> {
    let q = field.order() as u64;
    require((s as u64) < q, || format!("hyperbolic quadric codes require s < q (s = {s}, q = {q})"))?;
    let spec = QuadricSpec::hyperbolic(field);
    evaluation_code(field, spec.points(), s, Provenance::new("hyperbolic").with(q, 2, s))
}

/// `C_H(s)` on the Segre image of `d` copies of P^1.
pub fn segre_code(field: &Field, d: u32, s: u32) -> Result<LinearCode> {
    let q = field.order() as u64;
    require((s as u64) < q, || format!("Segre variety codes require s < q (s = {s}, q = {q})"))?;
    require(d >= 1, || "Segre variety codes require d >= 1".into())?;
    let points: Vec<ProjectivePoint> = segre_variety(field, d as usize).into_iter().map(|(p, _)| p).collect();
    evaluation_code(field, &points, s, Provenance::new("segre").with(q, d, s))
}

/// `C_E(s)` on `x0 x3 = Q(x1, x2)`.
pub fn elliptic_code(quadratic: &BinaryQuadratic, s: u32) -> Result<LinearCode> {
    let field = quadratic.tower().small();
    let q = field.order() as u64;
    require((s as u64) + 1 < q, || format!("elliptic quadric codes require s < q-1 (s = {s}, q = {q})"))?;
    let spec = QuadricSpec::elliptic(quadratic);
    evaluation_code(field, spec.points(), s, Provenance::new("elliptic").with(q, 2, s))
}

/// `C_E(s)` on a twisted Segre variety.
pub fn twisted_code(spec: &EmbeddingSpec, s: u32) -> Result<LinearCode> {
    let field = spec.tower().small();
    let q = field.order() as u64;
    require((s as u64) + 1 < q, || format!("twisted Segre codes require s < q-1 (s = {s}, q = {q})"))?;
    evaluation_code(field, spec.points(), s, Provenance::new("twisted").with(q, spec.dimension() as u32, s))
}

/// `{Σ i_t q^t : 0 <= i_t <= s}`, ascending.
pub fn bch_exponents(q: u64, d: u32, s: u32) -> Vec<u64> {
    let mut out = vec![0u64];
    for t in 0..d {
        let place = q.pow(t);
        out = out.iter().flat_map(|&e| (0..=s as u64).map(move |i| e + i * place)).collect();
    }
    out.sort_unstable();
    out
}

/// `B(s)` over F_{q^d}: rows `(ζ^r)_ζ` for `r` in the exponent set, column `k`
/// holding `ζ = α^k` for the primitive element `α`. Column `k` is labelled by
/// the point `(1 : α^k)` of P^1.
pub fn bch_b(tower: &Tower, s: u32) -> Result<LinearCode> {
    let q = tower.q();
    let d = tower.degree();
    require((s as u64) < q, || format!("BCH codes B(s) require s < q (s = {s}, q = {q})"))?;
    let big = tower.big();
    let n = big.order() as u64 - 1;
    let exponents = bch_exponents(q, d, s);
    let rows: Vec<Vec<Elem>> = exponents.iter().map(|&r| (0..n).map(|k| big.exp(r * k % n)).collect()).collect();
    let generator = Matrix::from_rows_with_cols(big, rows, n as usize)?;
    let labels = (0..n).map(|k| Label(vec![1, big.exp(k).enc()])).collect();
    let mut provenance = Provenance::new("B").with(q, d, s);
    provenance.cyclic = Some(Cyclic { length: n, exponents });
    LinearCode::new(generator, labels, provenance)
}

/// `B^ext(s)` over F_{q^d}: `x^i y^{m-i}` for `i` in the exponent set,
/// `m = s (q^d - 1)/(q - 1)`, at every point of P^1(F_{q^d}).
pub fn bch_b_ext(tower: &Tower, s: u32) -> Result<LinearCode> {
    let q = tower.q();
    let d = tower.degree();
    require((s as u64) < q, || format!("extended BCH codes require s <= q-1 (s = {s}, q = {q})"))?;
    let big = tower.big();
    let m = s as u64 * (q.pow(d) - 1) / (q - 1);
    let points = enumerate_projective_points(big, 1);
    let rows: Vec<Vec<Elem>> = bch_exponents(q, d, s)
        .iter()
        .map(|&i| points.iter().map(|p| big.mul(big.pow(p.coords()[0], i), big.pow(p.coords()[1], m - i))).collect())
        .collect();
    let generator = Matrix::from_rows_with_cols(big, rows, points.len())?;
    LinearCode::new(generator, points.iter().map(Label::from).collect(), Provenance::new("Bext").with(q, d, s))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u64) -> Field {
        Field::of_order(q).unwrap()
    }

    #[test]
    fn repetition_code_at_degree_zero() {
        let f = gf(3);
        let c = hyperbolic_code(&f, 0).unwrap();
        assert_eq!((c.length(), c.dimension()), (16, 1));
        assert!(c.generator().row(0).iter().all(|&x| x == Elem::ONE));
    }

    #[test]
    fn small_parameters() {
        let f3 = gf(3);
        assert_eq!(hyperbolic_code(&f3, 1).unwrap().dimension(), 4);
        let rs = extended_rs(&f3, 1).unwrap();
        assert_eq!((rs.length(), rs.dimension()), (4, 2));
        assert!(extended_rs(&f3, 3).is_err());
        assert!(hyperbolic_code(&f3, 3).is_err());
        let f4 = gf(4);
        let t = Tower::new(&f4, 2).unwrap();
        let quad = BinaryQuadratic::new(&t, None).unwrap();
        let e = elliptic_code(&quad, 2).unwrap();
        assert_eq!((e.length(), e.dimension()), (17, 9));
        assert!(elliptic_code(&quad, 3).is_err());
        let seg = segre_code(&f3, 3, 1).unwrap();
        assert_eq!((seg.length(), seg.dimension()), (64, 8));
    }

    #[test]
    fn tensor_and_bidegree() {
        let f = gf(3);
        let rs = extended_rs(&f, 1).unwrap();
        let t = tensor_code(&rs, &rs).unwrap();
        assert_eq!((t.length(), t.dimension()), (16, 4));
        let one = extended_rs(&f, 0).unwrap().puncture(&[1, 2, 3]).unwrap();
        let c = tensor_code(&rs, &one).unwrap();
        assert!(c.same_code(&rs).unwrap());
        for s in 0..3 {
            let h = hyperbolic_code(&f, s).unwrap();
            let b = bidegree_code(&f, s, s).unwrap();
            assert_eq!(h.labels(), b.labels());
            assert!(h.same_code(&b).unwrap(), "s = {s}");
        }
        let b = bidegree_code(&f, 1, 2).unwrap();
        assert_eq!(b.dimension(), 6);
    }

    #[test]
    fn exponent_sets() {
        assert_eq!(bch_exponents(3, 2, 1), vec![0, 1, 3, 4]);
        assert_eq!(bch_exponents(4, 2, 2), vec![0, 1, 2, 4, 5, 6, 8, 9, 10]);
        assert_eq!(bch_exponents(5, 3, 0), vec![0]);
        assert_eq!(bch_exponents(3, 3, 1).len(), 8);
    }

    #[test]
    fn bch_families() {
        let t = Tower::new(&gf(3), 2).unwrap();
        let b = bch_b(&t, 1).unwrap();
        assert_eq!((b.length(), b.dimension()), (8, 4));
        let b0 = b.subfield_subcode(&t, "B0").unwrap();
        assert_eq!((b0.length(), b0.dimension()), (8, 4));
        let ext = bch_b_ext(&t, 1).unwrap();
        assert_eq!((ext.length(), ext.dimension()), (10, 4));
        let ext0 = ext.subfield_subcode(&t, "B0ext").unwrap();
        assert_eq!(ext0.dimension(), 4);
        // puncturing at (0:1) and (1:0) leaves the cyclic code
        let punctured = ext0.puncture_labels(&[Label(vec![0, 1]), Label(vec![1, 0])]).unwrap();
        assert!(b0.same_code_by_labels(&punctured).unwrap());
        let rep = bch_b(&t, 0).unwrap();
        assert_eq!(rep.dimension(), 1);
    }
}
