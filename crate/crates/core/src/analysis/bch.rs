// SPDX-License-Identifier: Apache-2.0

//! Designed distance of cyclic codes carrying an exponent set.
//!
//! A word of `B(s)` is `c_k = Σ_{r∈R} m_r α^{rk}`, so as a polynomial
//! `c(X) = Σ c_k X^k` it vanishes at `α^{-j}` exactly when `m_j = 0` or `j ∉ R`.
//! The roots common to the whole code are therefore `α^{-j}` for `j ∉ R`, and a
//! run of `ℓ` consecutive such `j` gives `ℓ` consecutive roots.

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::codes::LinearCode;
use crate::error::{Error, Result};
use crate::field::Elem;

/// `ℓ + 1` for `ℓ` the longest cyclic run of residues mod `n` outside `exponents`.
pub fn bch_bound(n: u64, exponents: &[u64]) -> u64 {
    if n == 0 {
        return 1;
    }
    let mut inside = vec![false; n as usize];
    for &r in exponents {
        inside[(r % n) as usize] = true;
    }
    if inside.iter().all(|&x| !x) {
        return n + 1;
    }
    // start right after a member so no run wraps past the scan's end
    let start = inside.iter().position(|&x| x).expect("nonempty");
    let mut best = 0;
    let mut run = 0;
    for i in 1..=n as usize {
        if inside[(start + i) % n as usize] {
            run = 0;
        } else {
            run += 1;
            best = best.max(run);
        }
    }
    best as u64 + 1
}

/// BCH bound of a code with cyclic provenance.
pub fn designed_distance(code: &LinearCode) -> Result<u64> {
    let cyclic = code.provenance().cyclic.as_ref().ok_or(Error::MissingCyclicProvenance)?;
    Ok(bch_bound(cyclic.length, &cyclic.exponents))
}

/// Residues `j` with `c(α^{-j}) = 0` for every sampled codeword `c`.
///
/// Evaluates `samples` seeded random codewords of `code` (over the field of its
/// cyclic columns) at every `α^{-j}`. With enough samples this is the common root set.
pub fn observed_root_residues(code: &LinearCode, samples: usize, seed: u64) -> Result<Vec<u64>> {
    let cyclic = code.provenance().cyclic.as_ref().ok_or(Error::MissingCyclicProvenance)?;
    let f = code.field();
    let n = cyclic.length;
    if f.order() as u64 - 1 != n {
        return Err(Error::Invalid(format!("cyclic length {n} is not the order of the multiplicative group")));
    }
    let basis = code.basis();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = f.order();
    let words: Vec<Vec<Elem>> = (0..samples)
        .map(|_| {
            let message: Vec<Elem> = (0..basis.rows()).map(|_| Elem::from_enc(rng.random_range(0..q))).collect();
            basis.transpose().mul_vec(&message)
        })
        .collect::<Result<_>>()?;
    Ok((0..n)
        .filter(|&j| {
            let x = f.exp((n - j % n) % n);
            words.iter().all(|c| {
                let mut acc = Elem::ZERO;
                for &ck in c.iter().rev() {
                    acc = f.add(f.mul(acc, x), ck);
                }
                acc.is_zero()
            })
        })
        .collect())
}

/// Checks that the observed roots are exactly `α^{-j}` for `j ∉ R`.
pub fn root_convention_holds(code: &LinearCode, samples: usize, seed: u64) -> Result<bool> {
    let cyclic = code.provenance().cyclic.as_ref().ok_or(Error::MissingCyclicProvenance)?;
    let n = cyclic.length;
    let expected: Vec<u64> = (0..n).filter(|j| !cyclic.exponents.iter().any(|r| r % n == *j)).collect();
    Ok(observed_root_residues(code, samples, seed)? == expected)
}
