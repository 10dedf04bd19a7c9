// SPDX-License-Identifier: Apache-2.0

use serde::Serialize;

use super::form::Form;
use super::point::{enumerate_projective_points, ProjectivePoint};
use crate::error::{Error, Result};
use crate::field::{Elem, Field, Tower};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum QuadricKind {
    Hyperbolic,
    Elliptic,
    Other,
}

/// A quadric surface in P^3, its rational points (global order) and the
/// classification read off the point count.
#[derive(Clone, Debug)]
pub struct QuadricSpec {
    form: Form,
    kind: QuadricKind,
    points: Vec<ProjectivePoint>,
}

/// Rational zeros of a form in P^r, in global enumeration order.
pub fn zero_locus(form: &Form) -> Vec<ProjectivePoint> {
    enumerate_projective_points(form.field(), form.nvars() - 1)
        .into_iter()
        .filter(|p| form.evaluate(p.coords()).is_ok_and(|v| v.is_zero()))
        .collect()
}

impl QuadricSpec {
    pub fn new(form: Form) -> Result<QuadricSpec> {
        if form.nvars() != 4 || form.degree() != 2 {
            return Err(Error::DimensionMismatch("a quadric surface needs a degree-2 form in 4 variables".into()));
        }
        let points = zero_locus(&form);
        let q = form.field().order() as usize;
        let kind = match points.len() {
            n if n == (q + 1) * (q + 1) => QuadricKind::Hyperbolic,
            n if n == q * q + 1 => QuadricKind::Elliptic,
            _ => QuadricKind::Other,
        };
        Ok(QuadricSpec { form, kind, points })
    }

    /// Like [`QuadricSpec::new`], but rejects point counts of singular quadrics.
    pub fn smooth(form: Form) -> Result<QuadricSpec> {
        let spec = QuadricSpec::new(form)?;
        if spec.kind == QuadricKind::Other {
            let q = spec.form.field().order();
            return Err(Error::Invalid(format!(
                "quadric has {} rational points, neither (q+1)^2 = {} nor q^2+1 = {}",
                spec.points.len(),
                (q + 1) * (q + 1),
                q * q + 1
            )));
        }
        Ok(spec)
    }

    /// `x0 x3 - x1 x2`.
    pub fn hyperbolic(field: &Field) -> QuadricSpec {
        let form = Form::parse(field, Some(4), "x0*x3 - x1*x2").expect("valid form");
        QuadricSpec::new(form).expect("degree-2 form in 4 variables")
    }

    /// `x0 x3 - Q(x1, x2)`.
    pub fn elliptic(quadratic: &BinaryQuadratic) -> QuadricSpec {
        let f = quadratic.form.field();
        let mut form = Form::parse(f, Some(4), "x0*x3").expect("valid form");
        for (e, c) in quadratic.form.terms() {
            form = form.add(&Form::monomial(f, vec![0, e[0], e[1], 0], f.neg(c))).expect("same field and degree");
        }
        QuadricSpec::new(form).expect("degree-2 form in 4 variables")
    }

    pub fn form(&self) -> &Form {
        &self.form
    }

    pub fn field(&self) -> &Field {
        self.form.field()
    }

    pub fn kind(&self) -> QuadricKind {
        self.kind
    }

    pub fn points(&self) -> &[ProjectivePoint] {
        &self.points
    }

    /// Rational points of the quadric on which `f` also vanishes.
    pub fn curve_point_count(&self, f: &Form) -> Result<usize> {
        if f.field() != self.field() {
            return Err(Error::FieldMismatch);
        }
        let mut n = 0;
        for p in &self.points {
            if f.evaluate(p.coords())?.is_zero() {
                n += 1;
            }
        }
        Ok(n)
    }
}

/// `Q(x, y) = (x + w y)(x + w^q y) = x^2 + Tr(w) x y + N(w) y^2` over F_q, with
/// the `w ∈ F_{q^2} \ F_q` it was built from.
#[derive(Clone, Debug)]
pub struct BinaryQuadratic {
    tower: Tower,
    w: Elem,
    form: Form,
}

impl BinaryQuadratic {
    /// Builds `Q` from `w`, defaulting to the primitive element of F_{q^2}.
    pub fn new(tower: &Tower, w: Option<Elem>) -> Result<BinaryQuadratic> {
        if tower.degree() != 2 {
            return Err(Error::NotSubfield("an irreducible binary quadratic needs the tower F_q ⊂ F_q^2".into()));
        }
        let w = w.unwrap_or_else(|| tower.big().primitive_element());
        if w.enc() >= tower.big().order() || tower.is_in_subfield(w) {
            return Err(Error::OutOfRange(format!("w = {w} must lie in F_q^2 \\ F_q")));
        }
        let small = tower.small();
        let tr = tower.trace(w)?;
        let n = tower.norm(w)?;
        let form = Form::from_terms(small, 2, 2, vec![(vec![2, 0], Elem::ONE), (vec![1, 1], tr), (vec![0, 2], n)])?;
        Ok(BinaryQuadratic { tower: tower.clone(), w, form })
    }

    pub fn tower(&self) -> &Tower {
        &self.tower
    }

    pub fn w(&self) -> Elem {
        self.w
    }

    pub fn form(&self) -> &Form {
        &self.form
    }

    pub fn eval(&self, u: Elem, v: Elem) -> Elem {
        self.form.evaluate(&[u, v]).expect("two variables")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hyperbolic_and_elliptic_counts() {
        let f3 = Field::of_order(3).unwrap();
        let h = QuadricSpec::hyperbolic(&f3);
        assert_eq!(h.points().len(), 16);
        assert_eq!(h.kind(), QuadricKind::Hyperbolic);

        let t = Tower::new(&f3, 2).unwrap();
        let q = BinaryQuadratic::new(&t, None).unwrap();
        let e = QuadricSpec::elliptic(&q);
        assert_eq!(e.points().len(), 10);
        assert_eq!(e.kind(), QuadricKind::Elliptic);
    }

    #[test]
    fn cone_is_not_smooth() {
        let f3 = Field::of_order(3).unwrap();
        let cone = Form::parse(&f3, Some(4), "x0*x1 - x2^2").unwrap();
        assert_eq!(QuadricSpec::new(cone.clone()).unwrap().kind(), QuadricKind::Other);
        assert!(QuadricSpec::smooth(cone).is_err());
        assert!(QuadricSpec::new(Form::parse(&f3, Some(4), "x0").unwrap()).is_err());
    }

    #[test]
    fn binary_quadratic_has_no_rational_root() {
        for q in [2u64, 3, 4, 5, 7, 9] {
            let f = Field::of_order(q).unwrap();
            let t = Tower::new(&f, 2).unwrap();
            let quad = BinaryQuadratic::new(&t, None).unwrap();
            let roots = enumerate_projective_points(&f, 1)
                .iter()
                .filter(|p| quad.eval(p.coords()[0], p.coords()[1]).is_zero())
                .count();
            assert_eq!(roots, 0, "q = {q}");
            assert_eq!(quad.eval(Elem::ONE, Elem::ZERO), Elem::ONE);
        }
    }

    #[test]
    fn binary_quadratic_splits_over_gf25() {
        let f5 = Field::of_order(5).unwrap();
        let t = Tower::new(&f5, 2).unwrap();
        let quad = BinaryQuadratic::new(&t, None).unwrap();
        let big = t.big();
        // roots of Q(x, 1) in GF(25) by exhaustion
        let lifted: Vec<(Vec<u32>, Elem)> = quad.form().terms().map(|(e, c)| (e.to_vec(), t.embed(c))).collect();
        let roots: Vec<Elem> = big
            .elements()
            .filter(|&x| big.sum(lifted.iter().map(|(e, c)| big.mul(*c, big.pow(x, e[0] as u64)))).is_zero())
            .collect();
        assert_eq!(roots.len(), 2);
        assert_eq!(roots[1], t.frobenius_q(roots[0], 1));
        let w = quad.w();
        assert!(roots.contains(&big.neg(w)));
        assert!(BinaryQuadratic::new(&t, Some(t.embed(Elem::ONE))).is_err());
    }
}
