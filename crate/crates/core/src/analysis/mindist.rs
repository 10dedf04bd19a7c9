// SPDX-License-Identifier: Apache-2.0

//! Exhaustive minimum-weight search over one message per scalar class.
//!
//! Messages with first nonzero coordinate 1 are split into tasks by the lead
//! position and the value of the next coordinate. Inside a task the remaining
//! coordinates run through a base-p odometer over their F_p-digits: bumping
//! digit `t` of coordinate `c` adds `b_t g_c` to the codeword, and so does the
//! wrap from `p - 1` back to 0, so every step is one vector addition per digit touched.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::codes::LinearCode;
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::linalg::Matrix;

/// Default cap on scalar classes visited.
pub const DEFAULT_BUDGET: u128 = 50_000_000;

/// Cap on the number of minimizers kept when they are requested.
const MAX_MINIMIZERS: usize = 1 << 20;

/// Number of messages with first nonzero coordinate 1: `(q^k - 1)/(q - 1)`.
pub fn scalar_classes(q: u64, k: usize) -> u128 {
    let q = q as u128;
    let mut total: u128 = 0;
    let mut power: u128 = 1;
    for _ in 0..k {
        total = total.saturating_add(power);
        power = power.saturating_mul(q);
    }
    total
}

#[derive(Clone, Debug)]
pub struct ScanOutcome {
    pub min_weight: usize,
    pub witness_message: Vec<Elem>,
    pub witness: Vec<Elem>,
    /// Messages reaching the minimum, in deterministic order; empty unless requested.
    pub minimizers: Vec<Vec<Elem>>,
    pub truncated: bool,
    pub classes: u128,
}

struct TaskResult {
    min_weight: usize,
    witness_message: Vec<Elem>,
    witness: Vec<Elem>,
    minimizers: Vec<Vec<Elem>>,
}

fn add_into(field: &Field, acc: &mut [Elem], v: &[Elem]) {
    for (a, &b) in acc.iter_mut().zip(v) {
        *a = field.add(*a, b);
    }
}

fn weight(v: &[Elem]) -> usize {
    v.iter().filter(|x| !x.is_zero()).count()
}

/// Minimum weight of the nonzero words of the row space of a full-rank `gen`.
pub fn scan_min_weight(gen: &Matrix, collect: bool, budget: u128) -> Result<ScanOutcome> {
    let field = gen.field().clone();
    let k = gen.rows();
    let n = gen.cols();
    if k == 0 {
        return Err(Error::ZeroDimension);
    }
    if gen.rank() != k {
        return Err(Error::DimensionMismatch("scan needs a generator of full row rank".into()));
    }
    let q = field.order() as u64;
    let classes = scalar_classes(q, k);
    if classes > budget {
        return Err(Error::BudgetExceeded { required: classes, budget });
    }
    let p = field.characteristic();
    let e = field.degree() as usize;
    let rows: Vec<Vec<Elem>> = gen.row_vecs();
    // steps[c][t] = p^t-element times row c
    let digit_units: Vec<Elem> = (0..e).map(|t| Elem::from_enc(p.pow(t as u32))).collect();
    let steps: Vec<Vec<Vec<Elem>>> = rows
        .iter()
        .map(|r| digit_units.iter().map(|&b| r.iter().map(|&x| field.mul(b, x)).collect()).collect())
        .collect();

    let mut tasks: Vec<(usize, Option<Elem>)> = Vec::new();
    for lead in 0..k {
        if lead + 1 < k {
            tasks.extend(field.elements().map(|v| (lead, Some(v))));
        } else {
            tasks.push((lead, None));
        }
    }

    let results: Vec<TaskResult> = tasks
        .par_iter()
        .map(|&(lead, next)| {
            let mut message = vec![Elem::ZERO; k];
            message[lead] = Elem::ONE;
            let mut cw = rows[lead].clone();
            let free_start = match next {
                Some(v) => {
                    message[lead + 1] = v;
                    let scaled: Vec<Elem> = rows[lead + 1].iter().map(|&x| field.mul(v, x)).collect();
                    add_into(&field, &mut cw, &scaled);
                    lead + 2
                }
                None => lead + 1,
            };
            let ndigits = (k - free_start) * e;
            let mut digits = vec![0u32; ndigits];
            let mut best = TaskResult {
                min_weight: usize::MAX,
                witness_message: Vec::new(),
                witness: Vec::new(),
                minimizers: Vec::new(),
            };
            let current_message = |digits: &[u32], message: &[Elem]| -> Vec<Elem> {
                let mut m = message.to_vec();
                for (c, slot) in m.iter_mut().enumerate().take(k).skip(free_start) {
                    let base = (c - free_start) * e;
                    let enc: u32 = (0..e).map(|t| digits[base + t] * p.pow(t as u32)).sum();
                    *slot = Elem::from_enc(enc);
                }
                m
            };
            loop {
                let w = weight(&cw);
                if w < best.min_weight {
                    best.min_weight = w;
                    best.witness_message = current_message(&digits, &message);
                    best.witness = cw.clone();
                    best.minimizers.clear();
                }
                if collect && w == best.min_weight && best.minimizers.len() < MAX_MINIMIZERS + 1 {
                    best.minimizers.push(current_message(&digits, &message));
                }
                let mut pos = 0;
                loop {
                    if pos == ndigits {
                        return best;
                    }
                    let c = free_start + pos / e;
                    add_into(&field, &mut cw, &steps[c][pos % e]);
                    digits[pos] += 1;
                    if digits[pos] < p {
                        break;
                    }
                    digits[pos] = 0;
                    pos += 1;
                }
            }
        })
        .collect();

    let min_weight = results.iter().map(|r| r.min_weight).min().expect("at least one task");
    let mut outcome = ScanOutcome {
        min_weight,
        witness_message: Vec::new(),
        witness: Vec::new(),
        minimizers: Vec::new(),
        truncated: false,
        classes,
    };
    for r in results.into_iter().filter(|r| r.min_weight == min_weight) {
        if outcome.witness.is_empty() {
            outcome.witness_message = r.witness_message;
            outcome.witness = r.witness;
        }
        outcome.minimizers.extend(r.minimizers);
    }
    if outcome.minimizers.len() > MAX_MINIMIZERS {
        outcome.minimizers.truncate(MAX_MINIMIZERS);
        outcome.truncated = true;
    }
    debug_assert!(n == 0 || outcome.witness.len() == n);
    Ok(outcome)
}

/// Parameters of a code, with whichever distance information was established.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParamReport {
    pub n: usize,
    pub k: usize,
    pub d_exact: Option<usize>,
    pub d_lower: Option<usize>,
    pub d_upper: Option<usize>,
    pub method: Vec<String>,
    pub witness: Option<Vec<u32>>,
    pub elapsed_ms: Option<u64>,
}

impl ParamReport {
    pub fn new(code: &LinearCode) -> ParamReport {
        ParamReport {
            n: code.length(),
            k: code.dimension(),
            d_exact: None,
            d_lower: None,
            d_upper: None,
            method: Vec::new(),
            witness: None,
            elapsed_ms: None,
        }
    }

    /// `d_lower <= d_exact <= d_upper` wherever present, and `d_lower <= d_upper`.
    pub fn is_consistent(&self) -> bool {
        let le = |a: Option<usize>, b: Option<usize>| match (a, b) {
            (Some(a), Some(b)) => a <= b,
            _ => true,
        };
        le(self.d_lower, self.d_exact) && le(self.d_exact, self.d_upper) && le(self.d_lower, self.d_upper)
    }
}

/// Exact minimum distance by scanning every scalar class of messages.
pub fn min_distance_exhaustive(code: &LinearCode, budget: u128) -> Result<ParamReport> {
    let start = Instant::now();
    let basis = code.basis();
    let outcome = scan_min_weight(&basis, false, budget)?;
    let mut report = ParamReport::new(code);
    report.d_exact = Some(outcome.min_weight);
    report.d_upper = Some(outcome.min_weight);
    report.method.push("exhaustive-messages".into());
    report.witness = Some(outcome.witness.iter().map(|x| x.enc()).collect());
    report.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    Ok(report)
}

/// Number of `t`-subsets of an `n`-set, saturating.
fn binomial(n: usize, t: usize) -> u128 {
    let mut acc: u128 = 1;
    for i in 0..t.min(n) as u128 {
        acc = acc.saturating_mul(n as u128 - i) / (i + 1);
    }
    if t > n {
        0
    } else {
        acc
    }
}

/// Advances `c` to the next `t`-subset of `lo..n` in lexicographic order.
fn next_combination(c: &mut [usize], n: usize) -> bool {
    let t = c.len();
    for i in (0..t).rev() {
        if c[i] < n - t + i {
            c[i] += 1;
            for j in i + 1..t {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Exact minimum distance as the least `t` for which some `t` columns of a
/// parity-check matrix are dependent, visiting column subsets by size.
///
/// The budget caps the number of subsets examined.
pub fn min_distance_by_supports(code: &LinearCode, budget: u128) -> Result<ParamReport> {
    let start = Instant::now();
    let k = code.dimension();
    if k == 0 {
        return Err(Error::ZeroDimension);
    }
    let n = code.length();
    let h = code.generator().kernel();
    let mut report = ParamReport::new(code);
    report.method.push("exhaustive-supports".into());
    let mut visited: u128 = 0;
    for t in 1..=n {
        let required = visited.saturating_add(binomial(n, t));
        if required > budget {
            return Err(Error::BudgetExceeded { required, budget });
        }
        visited = required;
        // first dependent subset in lexicographic order, searched per leading column
        let found: Option<Vec<usize>> = (0..=n - t)
            .into_par_iter()
            .map(|lead| {
                let mut rest: Vec<usize> = (lead + 1..lead + t).collect();
                if t > 1 && rest.last().is_some_and(|&x| x >= n) {
                    return None;
                }
                loop {
                    let cols: Vec<usize> = std::iter::once(lead).chain(rest.iter().copied()).collect();
                    let sub = h.select_columns(&cols).expect("columns in range");
                    if sub.rank() < t {
                        return Some(cols);
                    }
                    if rest.is_empty() || !next_combination_from(&mut rest, lead + 1, n) {
                        return None;
                    }
                }
            })
            .find_first(|c| c.is_some())
            .flatten();
        if let Some(cols) = found {
            let sub = h.select_columns(&cols)?;
            let kernel = sub.kernel();
            let mut word = vec![Elem::ZERO; n];
            for (i, &c) in cols.iter().enumerate() {
                word[c] = kernel.get(0, i);
            }
            report.d_exact = Some(t);
            report.d_upper = Some(t);
            report.witness = Some(word.iter().map(|x| x.enc()).collect());
            report.elapsed_ms = Some(start.elapsed().as_millis() as u64);
            return Ok(report);
        }
    }
    Err(Error::Invalid("no dependent column set; the code is zero".into()))
}

/// Lexicographic successor of a subset of `lo..n`, shifted to start at `lo`.
fn next_combination_from(c: &mut [usize], lo: usize, n: usize) -> bool {
    for x in c.iter_mut() {
        *x -= lo;
    }
    let more = next_combination(c, n - lo);
    for x in c.iter_mut() {
        *x += lo;
    }
    more
}

/// Message classes above which the support search is tried first.
const SUPPORT_SWITCH: u128 = 1 << 24;

/// Exact minimum distance, by message classes or by column supports,
/// whichever is expected to be cheaper.
pub fn min_distance_exact(code: &LinearCode, budget: u128) -> Result<ParamReport> {
    let classes = scalar_classes(code.field().order() as u64, code.dimension());
    if classes <= budget.min(SUPPORT_SWITCH) {
        return min_distance_exhaustive(code, budget);
    }
    match min_distance_by_supports(code, budget) {
        Err(Error::BudgetExceeded { .. }) if classes <= budget => min_distance_exhaustive(code, budget),
        Err(Error::BudgetExceeded { .. }) => Err(Error::BudgetExceeded { required: classes, budget }),
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{extended_rs, hyperbolic_code, Label, Provenance};

    /// Independent oracle: every message, not only one per class.
    fn brute_force_min(gen: &Matrix) -> usize {
        let f = gen.field();
        let k = gen.rows();
        let q = f.order() as usize;
        let mut best = usize::MAX;
        for idx in 1..q.pow(k as u32) {
            let mut rest = idx;
            let msg: Vec<Elem> = (0..k)
                .map(|_| {
                    let v = Elem::from_enc((rest % q) as u32);
                    rest /= q;
                    v
                })
                .collect();
            let cw = gen.transpose().mul_vec(&msg).unwrap();
            best = best.min(weight(&cw));
        }
        best
    }

    #[test]
    fn class_counts() {
        assert_eq!(scalar_classes(3, 4), 40);
        assert_eq!(scalar_classes(2, 16), 65535);
        assert_eq!(scalar_classes(5, 9), 488_281);
        assert_eq!(scalar_classes(4, 1), 1);
    }

    #[test]
    fn repetition_code() {
        let f = Field::of_order(4).unwrap();
        let c = hyperbolic_code(&f, 0).unwrap();
        let r = min_distance_exhaustive(&c, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.d_exact, Some(25));
    }

    #[test]
    fn agrees_with_brute_force() {
        for q in [2u64, 3, 4, 5, 8, 9] {
            let f = Field::of_order(q).unwrap();
            for s in 0..q.min(4) as u32 {
                let c = extended_rs(&f, s).unwrap();
                let scan = scan_min_weight(&c.basis(), false, DEFAULT_BUDGET).unwrap();
                assert_eq!(scan.min_weight, brute_force_min(&c.basis()), "q = {q}, s = {s}");
                assert_eq!(scan.min_weight, q as usize - s as usize + 1);
                assert_eq!(weight(&scan.witness), scan.min_weight);
                let check = c.basis().transpose().mul_vec(&scan.witness_message).unwrap();
                assert_eq!(check, scan.witness);
            }
        }
        let f = Field::of_order(3).unwrap();
        let h = hyperbolic_code(&f, 1).unwrap();
        assert_eq!(min_distance_exhaustive(&h, DEFAULT_BUDGET).unwrap().d_exact, Some(9));
        assert_eq!(brute_force_min(&h.basis()), 9);
    }

    #[test]
    fn supports_agree_with_messages() {
        let mut compared = 0;
        for q in [2u64, 3, 4, 5] {
            let f = Field::of_order(q).unwrap();
            for s in 0..q as u32 {
                let c = hyperbolic_code(&f, s).unwrap();
                if scalar_classes(q, c.dimension()) > 1 << 20 {
                    continue;
                }
                let b = match min_distance_by_supports(&c, 1 << 18) {
                    Err(Error::BudgetExceeded { .. }) => continue,
                    other => other.unwrap(),
                };
                let a = min_distance_exhaustive(&c, DEFAULT_BUDGET).unwrap();
                assert_eq!(a.d_exact, b.d_exact, "q = {q}, s = {s}");
                let w: Vec<Elem> = b.witness.unwrap().iter().map(|&x| Elem::from_enc(x)).collect();
                assert_eq!(weight(&w), b.d_exact.unwrap());
                assert!(c.generator().spans(&w).unwrap());
                compared += 1;
            }
        }
        assert!(compared >= 5, "{compared}");
    }

    #[test]
    fn combinations_in_order() {
        let mut c = vec![0, 1];
        let mut seen = vec![c.clone()];
        while next_combination(&mut c, 4) {
            seen.push(c.clone());
        }
        assert_eq!(seen, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(binomial(25, 4), 12650);
        assert_eq!(binomial(3, 5), 0);
    }

    #[test]
    fn collects_all_minimizers() {
        // [4,2,3] extended RS over F_3: 4 classes of weight-3 words, each vanishing at one point
        let f = Field::of_order(3).unwrap();
        let c = extended_rs(&f, 1).unwrap();
        let scan = scan_min_weight(&c.basis(), true, DEFAULT_BUDGET).unwrap();
        assert_eq!(scan.minimizers.len(), 4);
        assert!(!scan.truncated);
    }

    #[test]
    fn budget_and_rank_errors() {
        let f = Field::of_order(3).unwrap();
        let h = hyperbolic_code(&f, 2).unwrap();
        assert_eq!(
            min_distance_exhaustive(&h, 100),
            Err(Error::BudgetExceeded { required: scalar_classes(3, 9), budget: 100 })
        );
        let g = Matrix::from_encodings(&f, &[vec![1, 1], vec![2, 2]]).unwrap();
        assert!(scan_min_weight(&g, false, 10).is_err());
        let z = LinearCode::new(Matrix::zeros(&f, 1, 2), vec![Label(vec![0]), Label(vec![1])], Provenance::new("z"))
            .unwrap();
        assert_eq!(min_distance_exhaustive(&z, 10), Err(Error::ZeroDimension));
    }
}
