// SPDX-License-Identifier: Apache-2.0

//! Exponent-set identities behind the pullbacks of degree-`s` forms.

use std::collections::BTreeSet;

use crate::codes::bch_exponents;

/// `{(i+k, j+k) : i, j, k >= 0, i+j+k <= s}`.
pub fn set_u(s: u32) -> BTreeSet<(u32, u32)> {
    let mut out = BTreeSet::new();
    for k in 0..=s {
        for i in 0..=s - k {
            for j in 0..=s - k - i {
                out.insert((i + k, j + k));
            }
        }
    }
    out
}

/// `{(i, j) : 0 <= i, j <= s}`.
pub fn set_v(s: u32) -> BTreeSet<(u32, u32)> {
    (0..=s).flat_map(|i| (0..=s).map(move |j| (i, j))).collect()
}

/// `U = V` and `|V| = (s+1)^2`.
pub fn lemma_uv_check(s: u32) -> bool {
    let v = set_v(s);
    set_u(s) == v && v.len() == ((s + 1) * (s + 1)) as usize
}

/// Exponents of `x` in products of `s` affine monomials `∏_{t∈S} x^{q^t}`, `S ⊆ {0..d-1}`.
pub fn product_exponents(q: u64, d: u32, s: u32) -> BTreeSet<u64> {
    let factors: Vec<u64> =
        (0..1u64 << d).map(|mask| (0..d).filter(|t| (mask >> t) & 1 == 1).map(|t| q.pow(t)).sum()).collect();
    let mut current: BTreeSet<u64> = BTreeSet::from([0]);
    for _ in 0..s {
        current = current.iter().flat_map(|&e| factors.iter().map(move |&f| e + f)).collect();
    }
    current
}

/// Digit vectors of the same products: sums of `s` vectors in `{0,1}^d`.
pub fn product_digit_vectors(d: u32, s: u32) -> BTreeSet<Vec<u32>> {
    let mut current: BTreeSet<Vec<u32>> = BTreeSet::from([vec![0; d as usize]]);
    for _ in 0..s {
        current = current
            .iter()
            .flat_map(|v| {
                (0..1u32 << d).map(move |mask| v.iter().enumerate().map(|(t, &x)| x + ((mask >> t) & 1)).collect())
            })
            .collect();
    }
    current
}

/// Both forms of the identity: the digit vectors are `{0..s}^d`, and for `q > s`
/// the exponents agree with the extended BCH exponent set.
pub fn product_identity_check(q: u64, d: u32, s: u32) -> bool {
    let box_vectors: BTreeSet<Vec<u32>> = (0..(s + 1).pow(d))
        .map(|mut idx| {
            (0..d)
                .map(|_| {
                    let x = idx % (s + 1);
                    idx /= s + 1;
                    x
                })
                .collect()
        })
        .collect();
    let digits_ok = product_digit_vectors(d, s) == box_vectors;
    let exponents_ok = (s as u64) >= q || product_exponents(q, d, s) == bch_exponents(q, d, s).into_iter().collect();
    digits_ok && exponents_ok
}
