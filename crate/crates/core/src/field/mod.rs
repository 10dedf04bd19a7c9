// SPDX-License-Identifier: Apache-2.0

//! Exact arithmetic in GF(p^e).
//!
//! Elements are stored by their canonical integer encoding
//! `c_0 + c_1 p + ... + c_{e-1} p^{e-1}`, where `c_i` are the coefficients of the
//! element as a polynomial in the class of `t` modulo the field modulus. Ascending
//! encoding is the canonical element order used for every enumeration in the crate.
//!
//! Multiplication goes through exp/log tables built on the primitive element of
//! least encoding. Addition is digit-wise modulo `p`, tabulated for small fields.

mod poly;
mod tower;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use tower::{BasisStyle, Tower};

/// Fields with more elements than this are rejected.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

const ADD_TABLE_MAX_ORDER: u32 = 256;

/// A field element, identified by its canonical integer encoding.
///
/// The owning [`Field`] is carried by the containers (matrices, forms, codes);
/// [`FieldElement`] pairs the two when mismatches must be caught at runtime.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Elem(u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub const fn enc(self) -> u32 {
        self.0
    }

    #[inline]
    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Unchecked constructor; use [`Field::elem`] for validated input.
    #[inline]
    pub(crate) const fn from_enc(enc: u32) -> Elem {
        Elem(enc)
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct Inner {
    p: u32,
    e: u32,
    order: u32,
    modulus: Vec<u32>,
    generator: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    add: Option<Vec<u32>>,
}

/// GF(p^e) with an explicit monic irreducible modulus. Cheap to clone.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.e == other.0.e && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}; modulus {:?})", self.0.p, self.0.e, self.0.modulus)
    }
}

/// JSON form of a field: `{"p": int, "e": int, "modulus": [int, ...]}`, constant
/// term first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u64,
    pub e: u32,
    pub modulus: Vec<u32>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q = p^e` into `(p, e)`.
pub fn prime_power(q: u64) -> Result<(u64, u32)> {
    if q < 2 {
        return Err(Error::NotPrimePower(q));
    }
    let mut p = 2u64;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let mut rest = q;
    let mut e = 0u32;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    if rest != 1 {
        return Err(Error::NotPrimePower(q));
    }
    Ok((p, e))
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn check_size(p: u64, e: u32) -> Result<()> {
    if e == 0 {
        return Err(Error::InvalidModulus("extension degree must be positive".into()));
    }
    match p.checked_pow(e) {
        Some(order) if order <= MAX_FIELD_ORDER => Ok(()),
        _ => Err(Error::FieldTooLarge { p, e }),
    }
}

impl Field {
    /// GF(p^e) with the monic irreducible modulus of least canonical encoding.
    pub fn new(p: u64, e: u32) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        check_size(p, e)?;
        let p32 = p as u32;
        let count = p.pow(e);
        let modulus = (0..count)
            .map(|idx| poly::monic_from_index(idx, e as usize, p32))
            .find(|m| poly::is_irreducible(m, p32))
            .expect("an irreducible polynomial of every degree exists");
        Ok(Field::build(p32, e, modulus))
    }

    /// Monic irreducible polynomials of degree `e` over GF(p), little-endian, in
    /// ascending order of encoding.
    pub fn irreducible_moduli(p: u64, e: u32) -> Result<impl Iterator<Item = Vec<u32>>> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        check_size(p, e)?;
        let p32 = p as u32;
        Ok((0..p.pow(e))
            .map(move |idx| poly::monic_from_index(idx, e as usize, p32))
            .filter(move |m| poly::is_irreducible(m, p32)))
    }

    /// GF(p^e) with a caller-supplied modulus (little-endian, monic, degree `e`).
    pub fn with_modulus(p: u64, e: u32, modulus: &[u32]) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        check_size(p, e)?;
        let p32 = p as u32;
        if modulus.iter().any(|&c| c >= p32) {
            return Err(Error::InvalidModulus(format!("coefficients must be below {p}")));
        }
        let mut m = modulus.to_vec();
        poly::trim(&mut m);
        if poly::degree(&m) != Some(e as usize) {
            return Err(Error::InvalidModulus(format!("expected degree {e}, got {:?}", poly::degree(&m))));
        }
        if m[e as usize] != 1 {
            return Err(Error::InvalidModulus("modulus is not monic".into()));
        }
        if !poly::is_irreducible(&m, p32) {
            return Err(Error::InvalidModulus(format!("{m:?} is reducible over GF({p})")));
        }
        Ok(Field::build(p32, e, m))
    }

    /// GF(q) for a prime power `q`, default modulus.
    pub fn of_order(q: u64) -> Result<Field> {
        let (p, e) = prime_power(q)?;
        Field::new(p, e)
    }

    pub fn from_descriptor(desc: &FieldDescriptor) -> Result<Field> {
        Field::with_modulus(desc.p, desc.e, &desc.modulus)
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor { p: self.0.p as u64, e: self.0.e, modulus: self.0.modulus.clone() }
    }

    fn build(p: u32, e: u32, modulus: Vec<u32>) -> Field {
        let order = p.pow(e);
        let slow = SlowArith { p, e, modulus: &modulus };
        let generator = slow.least_generator(order);

        let n = (order - 1) as usize;
        let mut exp = vec![0u32; 2 * n.max(1)];
        let mut log = vec![0u32; order as usize];
        let mut x = 1u32;
        for (i, slot) in exp.iter_mut().enumerate().take(n) {
            *slot = x;
            log[x as usize] = i as u32;
            x = slow.mul(x, generator);
        }
        for i in n..2 * n {
            exp[i] = exp[i - n];
        }

        let mut inner = Inner { p, e, order, modulus, generator, exp, log, add: None };
        if order <= ADD_TABLE_MAX_ORDER && e > 1 {
            let mut table = vec![0u32; (order * order) as usize];
            for a in 0..order {
                for b in 0..order {
                    table[(a * order + b) as usize] = digit_add(p, e, a, b);
                }
            }
            inner.add = Some(table);
        }
        Field(Arc::new(inner))
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    /// Extension degree over the prime field.
    #[inline]
    pub fn degree(&self) -> u32 {
        self.0.e
    }

    /// Number of elements.
    #[inline]
    pub fn order(&self) -> u32 {
        self.0.order
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn elem(&self, enc: u64) -> Result<Elem> {
        if enc >= self.0.order as u64 {
            return Err(Error::InvalidElement { enc, order: self.0.order as u64 });
        }
        Ok(Elem(enc as u32))
    }

    pub fn element(&self, enc: u64) -> Result<FieldElement> {
        Ok(FieldElement { field: self.clone(), value: self.elem(enc)? })
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.0.order).map(Elem)
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Elem {
        Elem(n.rem_euclid(self.0.p as i64) as u32)
    }

    /// Coefficients over GF(p), constant term first.
    pub fn digits(&self, a: Elem) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.0.e as usize);
        let mut rest = a.0;
        for _ in 0..self.0.e {
            out.push(rest % self.0.p);
            rest /= self.0.p;
        }
        out
    }

    pub fn from_digits(&self, digits: &[u32]) -> Result<Elem> {
        if digits.len() != self.0.e as usize || digits.iter().any(|&d| d >= self.0.p) {
            return Err(Error::Invalid(format!("{digits:?} is not a digit vector of GF({}^{})", self.0.p, self.0.e)));
        }
        Ok(Elem(digits.iter().rev().fold(0u32, |acc, &d| acc * self.0.p + d)))
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let inner = &*self.0;
        if inner.p == 2 {
            return Elem(a.0 ^ b.0);
        }
        if inner.e == 1 {
            let s = a.0 + b.0;
            return Elem(if s >= inner.p { s - inner.p } else { s });
        }
        match &inner.add {
            Some(t) => Elem(t[(a.0 * inner.order + b.0) as usize]),
            None => Elem(digit_add(inner.p, inner.e, a.0, b.0)),
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        let inner = &*self.0;
        if inner.p == 2 || a.0 == 0 {
            return a;
        }
        if inner.e == 1 {
            return Elem(inner.p - a.0);
        }
        let mut out = 0u32;
        let mut place = 1u32;
        let mut rest = a.0;
        for _ in 0..inner.e {
            let d = rest % inner.p;
            rest /= inner.p;
            out += ((inner.p - d) % inner.p) * place;
            place *= inner.p;
        }
        Elem(out)
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        let inner = &*self.0;
        Elem(inner.exp[(inner.log[a.0 as usize] + inner.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let inner = &*self.0;
        let n = inner.order - 1;
        Ok(Elem(inner.exp[((n - inner.log[a.0 as usize]) % n.max(1)) as usize]))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Elem, n: u64) -> Elem {
        if n == 0 {
            return Elem::ONE;
        }
        if a.0 == 0 {
            return Elem::ZERO;
        }
        let inner = &*self.0;
        let m = (inner.order - 1) as u64;
        let k = (inner.log[a.0 as usize] as u64 * (n % m)) % m;
        Elem(inner.exp[k as usize])
    }

    /// `x ↦ x^(p^k)`.
    pub fn frobenius(&self, a: Elem, k: u32) -> Elem {
        let k = k % self.0.e;
        self.pow(a, (self.0.p as u64).pow(k))
    }

    /// Discrete logarithm to the base of [`Field::primitive_element`].
    pub fn log(&self, a: Elem) -> Result<u32> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.0.log[a.0 as usize])
    }

    /// `primitive^k`.
    pub fn exp(&self, k: u64) -> Elem {
        let n = (self.0.order - 1) as u64;
        Elem(self.0.exp[(k % n) as usize])
    }

    /// The multiplicative generator of least encoding.
    pub fn primitive_element(&self) -> Elem {
        Elem(self.0.generator)
    }

    pub fn multiplicative_order(&self, a: Elem) -> Result<u64> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let n = (self.0.order - 1) as u64;
        let l = self.0.log[a.0 as usize] as u64;
        Ok(n / gcd(n, l))
    }

    pub fn is_primitive(&self, a: Elem) -> bool {
        self.multiplicative_order(a).is_ok_and(|o| o == (self.0.order - 1) as u64)
    }

    pub fn sum<I: IntoIterator<Item = Elem>>(&self, it: I) -> Elem {
        it.into_iter().fold(Elem::ZERO, |acc, x| self.add(acc, x))
    }

    pub fn product<I: IntoIterator<Item = Elem>>(&self, it: I) -> Elem {
        it.into_iter().fold(Elem::ONE, |acc, x| self.mul(acc, x))
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn digit_add(p: u32, e: u32, mut a: u32, mut b: u32) -> u32 {
    let mut out = 0u32;
    let mut place = 1u32;
    for _ in 0..e {
        let s = (a % p + b % p) % p;
        out += s * place;
        place *= p;
        a /= p;
        b /= p;
    }
    out
}

/// Table-free arithmetic used only while building the tables.
struct SlowArith<'a> {
    p: u32,
    e: u32,
    modulus: &'a [u32],
}

impl SlowArith<'_> {
    fn to_poly(&self, a: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.e as usize);
        let mut rest = a;
        for _ in 0..self.e {
            out.push(rest % self.p);
            rest /= self.p;
        }
        poly::trim(&mut out);
        out
    }

    fn poly_to_enc(&self, c: &[u32]) -> u32 {
        c.iter().rev().fold(0u32, |acc, &d| acc * self.p + d)
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        let prod = poly::mul(&self.to_poly(a), &self.to_poly(b), self.p);
        self.poly_to_enc(&poly::rem(&prod, self.modulus, self.p))
    }

    fn pow(&self, a: u32, mut n: u64) -> u32 {
        let mut acc = 1u32;
        let mut base = a;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    fn least_generator(&self, order: u32) -> u32 {
        let n = (order - 1) as u64;
        let factors = prime_factors(n);
        (1..order)
            .find(|&g| factors.iter().all(|&r| self.pow(g, n / r) != 1))
            .expect("the multiplicative group of a finite field is cyclic")
    }
}

/// An element bundled with its field, for API surfaces that must reject
/// operands from different fields.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: Field,
    value: Elem,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@GF({}^{})", self.value.0, self.field.characteristic(), self.field.degree())
    }
}

impl FieldElement {
    pub fn new(field: &Field, value: Elem) -> Result<FieldElement> {
        field.elem(value.enc() as u64)?;
        Ok(FieldElement { field: field.clone(), value })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn value(&self) -> Elem {
        self.value
    }

    pub fn enc(&self) -> u32 {
        self.value.0
    }

    fn same_field(&self, other: &FieldElement) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    fn wrap(&self, value: Elem) -> FieldElement {
        FieldElement { field: self.field.clone(), value }
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        Ok(self.wrap(self.field.add(self.value, other.value)))
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        Ok(self.wrap(self.field.sub(self.value, other.value)))
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        Ok(self.wrap(self.field.mul(self.value, other.value)))
    }

    pub fn div(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        Ok(self.wrap(self.field.div(self.value, other.value)?))
    }

    pub fn inv(&self) -> Result<FieldElement> {
        Ok(self.wrap(self.field.inv(self.value)?))
    }

    pub fn pow(&self, n: u64) -> FieldElement {
        self.wrap(self.field.pow(self.value, n))
    }

    pub fn frobenius(&self, k: u32) -> FieldElement {
        self.wrap(self.field.frobenius(self.value, k))
    }
}
