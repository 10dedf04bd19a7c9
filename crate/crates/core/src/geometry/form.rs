// SPDX-License-Identifier: Apache-2.0

//! Homogeneous forms and their text grammar.
//!
//! Text form: terms `c*x0^a*x1^b...` joined by `+` (a leading `-` negates a
//! term). Coefficients are canonical encodings and default to 1; `*` between
//! factors is optional; `x`, `y`, `z`, `t` are accepted as aliases of `x0..x3`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};

#[derive(Clone, PartialEq, Eq)]
pub struct Form {
    field: Field,
    nvars: usize,
    degree: u32,
    terms: BTreeMap<Vec<u32>, Elem>,
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Form[{self}]")
    }
}

/// Exponent vectors of all monomials of degree `degree` in `nvars` variables,
/// graded-lexicographic with `x0` most significant, descending.
pub fn monomials(nvars: usize, degree: u32) -> Vec<Vec<u32>> {
    fn rec(nvars: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == nvars {
            prefix.push(left);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for a in (0..=left).rev() {
            prefix.push(a);
            rec(nvars, left - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        return out;
    }
    rec(nvars, degree, &mut Vec::with_capacity(nvars), &mut out);
    out
}

impl Form {
    pub fn zero(field: &Field, nvars: usize, degree: u32) -> Form {
        Form { field: field.clone(), nvars, degree, terms: BTreeMap::new() }
    }

    pub fn monomial(field: &Field, exponents: Vec<u32>, coeff: Elem) -> Form {
        let mut f = Form::zero(field, exponents.len(), exponents.iter().sum());
        if !coeff.is_zero() {
            f.terms.insert(exponents, coeff);
        }
        f
    }

    /// The variable `x_i` as a degree-one form.
    pub fn var(field: &Field, nvars: usize, i: usize) -> Form {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Form::monomial(field, e, Elem::ONE)
    }

    pub fn from_terms(field: &Field, nvars: usize, degree: u32, terms: Vec<(Vec<u32>, Elem)>) -> Result<Form> {
        let mut f = Form::zero(field, nvars, degree);
        for (e, c) in terms {
            if e.len() != nvars || e.iter().sum::<u32>() != degree {
                return Err(Error::DimensionMismatch(format!(
                    "exponent {e:?} in a degree-{degree} form in {nvars} variables"
                )));
            }
            f.add_term(e, c);
        }
        Ok(f)
    }

    fn add_term(&mut self, e: Vec<u32>, c: Elem) {
        let sum = self.field.add(self.coeff(&e), c);
        if sum.is_zero() {
            self.terms.remove(&e);
        } else {
            self.terms.insert(e, sum);
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], Elem)> {
        self.terms.iter().map(|(e, &c)| (e.as_slice(), c))
    }

    pub fn coeff(&self, exponents: &[u32]) -> Elem {
        self.terms.get(exponents).copied().unwrap_or(Elem::ZERO)
    }

    pub fn evaluate(&self, point: &[Elem]) -> Result<Elem> {
        if point.len() != self.nvars {
            return Err(Error::DimensionMismatch(format!(
                "point with {} coordinates for a form in {} variables",
                point.len(),
                self.nvars
            )));
        }
        let f = &self.field;
        Ok(f.sum(
            self.terms
                .iter()
                .map(|(e, &c)| e.iter().zip(point).fold(c, |acc, (&k, &x)| f.mul(acc, f.pow(x, k as u64)))),
        ))
    }

    fn compatible(&self, other: &Form) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch("forms in different numbers of variables".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Form) -> Result<Form> {
        self.compatible(other)?;
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.degree != other.degree {
            return Err(Error::DimensionMismatch("sum of forms of different degrees".into()));
        }
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: Elem) -> Form {
        let mut out = Form::zero(&self.field, self.nvars, self.degree);
        if c.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(e, &x)| (e.clone(), self.field.mul(x, c))).collect();
        out
    }

    pub fn mul(&self, other: &Form) -> Result<Form> {
        self.compatible(other)?;
        let mut out = Form::zero(&self.field, self.nvars, self.degree + other.degree);
        for (ea, &ca) in &self.terms {
            for (eb, &cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, self.field.mul(ca, cb));
            }
        }
        Ok(out)
    }

    /// Coefficient-wise image under a map into another field.
    pub fn map_coeffs(&self, target: &Field, f: impl Fn(Elem) -> Result<Elem>) -> Result<Form> {
        let mut out = Form::zero(target, self.nvars, self.degree);
        for (e, &c) in &self.terms {
            out.add_term(e.clone(), f(c)?);
        }
        Ok(out)
    }

    /// Formal partial derivative with respect to `x_i`.
    pub fn partial(&self, i: usize) -> Form {
        let f = &self.field;
        let mut out = Form::zero(f, self.nvars, self.degree.saturating_sub(1));
        for (e, &c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut de = e.clone();
            de[i] -= 1;
            out.add_term(de, f.mul(c, f.from_int(e[i] as i64)));
        }
        out
    }

    /// Multiplies by `x_i^k` to raise the degree.
    pub fn times_var_power(&self, i: usize, k: u32) -> Form {
        let mut out = Form::zero(&self.field, self.nvars, self.degree + k);
        for (e, &c) in &self.terms {
            let mut e = e.clone();
            e[i] += k;
            out.terms.insert(e, c);
        }
        out
    }

    /// Parses the text grammar. `nvars` fixes the number of variables; when
    /// `None` it is one more than the largest variable index that appears.
    pub fn parse(field: &Field, nvars: Option<usize>, text: &str) -> Result<Form> {
        let raw = parse_terms(text)?;
        let max_var = raw.iter().flat_map(|(_, _, fs)| fs.iter().map(|&(v, _)| v)).max();
        let n = match (nvars, max_var) {
            (Some(n), Some(m)) if m >= n => {
                return Err(Error::Parse(format!("variable x{m} in a form in {n} variables")));
            }
            (Some(n), _) => n,
            (None, Some(m)) => m + 1,
            (None, None) => 1,
        };
        let mut degree = None;
        let mut terms = Vec::with_capacity(raw.len());
        for (neg, coeff, factors) in raw {
            let mut e = vec![0u32; n];
            for (v, k) in factors {
                e[v] += k;
            }
            let d: u32 = e.iter().sum();
            match degree {
                None => degree = Some(d),
                Some(d0) if d0 != d => {
                    return Err(Error::Parse(format!("form is not homogeneous: degrees {d0} and {d}")));
                }
                _ => {}
            }
            let c =
                field.elem(coeff).map_err(|_| Error::Parse(format!("coefficient {coeff} is not a field element")))?;
            let c = if neg { field.neg(c) } else { c };
            terms.push((e, c));
        }
        Form::from_terms(field, n, degree.unwrap_or(0), terms)
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "{}", c.enc())?;
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, "*x{i}")?,
                    _ => write!(f, "*x{i}^{k}")?,
                }
            }
        }
        Ok(())
    }
}

type RawTerm = (bool, u64, Vec<(usize, u32)>);

fn parse_terms(text: &str) -> Result<Vec<RawTerm>> {
    let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut pos = 0;
    let mut out = Vec::new();
    if chars.is_empty() {
        return Err(Error::Parse("empty form".into()));
    }
    if chars == ['0'] {
        return Ok(out);
    }
    let number = |pos: &mut usize| -> Option<u64> {
        let start = *pos;
        while *pos < chars.len() && chars[*pos].is_ascii_digit() {
            *pos += 1;
        }
        (*pos > start).then(|| chars[start..*pos].iter().collect::<String>().parse().ok()).flatten()
    };
    loop {
        let mut neg = false;
        while pos < chars.len() && (chars[pos] == '-' || chars[pos] == '+') {
            if chars[pos] == '-' {
                neg = !neg;
            }
            pos += 1;
        }
        let coeff = number(&mut pos).unwrap_or(1);
        let mut factors = Vec::new();
        loop {
            if pos < chars.len() && chars[pos] == '*' {
                pos += 1;
            }
            let Some(&c) = chars.get(pos) else { break };
            let var = match c {
                'x' => {
                    pos += 1;
                    match number(&mut pos) {
                        Some(i) => i as usize,
                        None => 0,
                    }
                }
                'y' => {
                    pos += 1;
                    1
                }
                'z' => {
                    pos += 1;
                    2
                }
                't' => {
                    pos += 1;
                    3
                }
                '+' | '-' => break,
                other => return Err(Error::Parse(format!("unexpected `{other}` at position {pos}"))),
            };
            let mut k = 1u32;
            if pos < chars.len() && chars[pos] == '^' {
                pos += 1;
                k = number(&mut pos).ok_or_else(|| Error::Parse(format!("missing exponent at position {pos}")))? as u32;
            }
            factors.push((var, k));
        }
        out.push((neg, coeff, factors));
        if pos >= chars.len() {
            break;
        }
    }
    Ok(out)
}
