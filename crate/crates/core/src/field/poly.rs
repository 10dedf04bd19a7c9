// SPDX-License-Identifier: Apache-2.0

//! Dense polynomials over a prime field GF(p), little-endian coefficient vectors.
//!
//! Only what field construction needs: reduction, multiplication, division
//! remainder and irreducibility by trial division.

pub(crate) fn trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub(crate) fn degree(a: &[u32]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

pub(crate) fn pow_mod(base: u32, mut exp: u32, p: u32) -> u32 {
    let p64 = p as u64;
    let mut acc = 1u64;
    let mut b = (base % p) as u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % p64;
        }
        b = b * b % p64;
        exp >>= 1;
    }
    acc as u32
}

pub(crate) fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let p64 = p as u64;
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p64;
        }
    }
    let mut out: Vec<u32> = out.into_iter().map(|c| c as u32).collect();
    trim(&mut out);
    out
}

/// Remainder of `a` modulo a nonzero `m`.
pub(crate) fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let dm = degree(m).expect("division by the zero polynomial");
    let lead_inv = inv_mod(m[dm], p) as u64;
    let p64 = p as u64;
    let mut r: Vec<u64> = a.iter().map(|&c| c as u64).collect();
    while let Some(dr) = r.iter().rposition(|&c| c != 0) {
        if dr < dm {
            break;
        }
        let factor = r[dr] * lead_inv % p64;
        let shift = dr - dm;
        for (j, &mc) in m[..=dm].iter().enumerate() {
            let sub = factor * mc as u64 % p64;
            r[shift + j] = (r[shift + j] + p64 - sub) % p64;
        }
    }
    let mut out: Vec<u32> = r.into_iter().map(|c| c as u32).collect();
    trim(&mut out);
    out
}

/// Monic polynomial of degree `deg` whose lower coefficients are the base-`p`
/// digits of `index`.
pub(crate) fn monic_from_index(index: u64, deg: usize, p: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(deg + 1);
    let mut rest = index;
    for _ in 0..deg {
        out.push((rest % p as u64) as u32);
        rest /= p as u64;
    }
    out.push(1);
    out
}

/// Irreducibility of a polynomial of degree ≥ 1 by trial division against every
/// monic polynomial of degree 1..=deg/2.
pub(crate) fn is_irreducible(f: &[u32], p: u32) -> bool {
    let Some(deg) = degree(f) else {
        return false;
    };
    if deg == 0 {
        return false;
    }
    for dd in 1..=deg / 2 {
        let count = (p as u64).pow(dd as u32);
        for idx in 0..count {
            let g = monic_from_index(idx, dd, p);
            if rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}
