// SPDX-License-Identifier: Apache-2.0

//! Acceptance run: one line per criterion, nonzero exit if any fails.
//!
//! Expected values are written out here from closed formulas and compared
//! with the suite reports by exact equality.

mod common;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use quadricode::analysis::{run_suite, CheckReport, Choice, Context, Selection, SUITES};
use serde_json::{json, Value};

struct Verdict {
    ok: bool,
    detail: String,
}

impl Verdict {
    fn new() -> Verdict {
        Verdict { ok: true, detail: String::new() }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.ok = false;
            if !self.detail.is_empty() {
                self.detail.push_str("; ");
            }
            self.detail.push_str(&what.into());
        }
    }
}

fn reports(suite: &str, ctx: &Context, sel: &Selection) -> Vec<CheckReport> {
    run_suite(suite, ctx, sel).unwrap_or_else(|e| panic!("suite {suite} errored: {e}"))
}

fn by_instance(rs: Vec<CheckReport>) -> BTreeMap<String, CheckReport> {
    rs.into_iter().map(|r| (r.instance.clone(), r)).collect()
}

/// Compares observed `n`, `k`, `d` with the given values and requires an exhaustive `d`.
fn check_nkd(v: &mut Verdict, map: &BTreeMap<String, CheckReport>, key: &str, n: u64, k: u64, d: u64) {
    let Some(r) = map.get(key) else {
        v.check(false, format!("{key} missing"));
        return;
    };
    let want = json!({"n": n, "k": k, "d": d});
    v.check(r.observed == want, format!("{key}: observed {} want {want}", r.observed));
    v.check(r.passed(), format!("{key}: report failed {:?}", r.notes));
    let exhaustive = r
        .params
        .as_ref()
        .is_some_and(|p| p.d_exact == Some(d as usize) && p.method.iter().any(|m| m.starts_with("exhaustive")));
    v.check(exhaustive, format!("{key}: d not from exhaustive search"));
}

fn same_keys(v: &mut Verdict, map: &BTreeMap<String, CheckReport>, keys: &[String]) {
    let got: Vec<&String> = map.keys().collect();
    let mut want: Vec<&String> = keys.iter().collect();
    want.sort();
    v.check(got == want, format!("instances {got:?} want {want:?}"));
}

fn inst(q: u64, d: u32, s: u32) -> String {
    format!("q={q} d={d} s={s}")
}

fn c1(ctx: &Context) -> Verdict {
    let mut v = Verdict::new();
    let cases = [(3, 1), (3, 2), (4, 1), (4, 2), (4, 3), (5, 1), (5, 2)];
    let map = by_instance(reports("hyperbolic", ctx, &Selection::default()));
    same_keys(&mut v, &map, &cases.map(|(q, s)| inst(q, 2, s)));
    for (q, s) in cases {
        let s64 = s as u64;
        check_nkd(&mut v, &map, &inst(q, 2, s), (q + 1).pow(2), (s64 + 1).pow(2), (q - s64 + 1).pow(2));
    }
    v
}

fn c2(ctx: &Context) -> Verdict {
    let mut v = Verdict::new();
    let map = by_instance(reports("bidegree", ctx, &Selection::default()));
    let mut keys = Vec::new();
    for q in [3u64, 4] {
        for a in 0..q {
            for b in 0..q {
                if (a + 1) * (b + 1) <= 9 {
                    let key = format!("q={q} a={a} b={b}");
                    check_nkd(&mut v, &map, &key, (q + 1).pow(2), (a + 1) * (b + 1), (q - a + 1) * (q - b + 1));
                    keys.push(key);
                }
            }
        }
    }
    same_keys(&mut v, &map, &keys);
    v
}

const ELLIPTIC: [(u64, u32); 6] = [(3, 1), (4, 1), (4, 2), (5, 1), (5, 2), (7, 1)];

fn c3(ctx: &Context) -> Verdict {
    let mut v = Verdict::new();
    let map = by_instance(reports("elliptic", ctx, &Selection::default()));
    same_keys(&mut v, &map, &ELLIPTIC.map(|(q, s)| inst(q, 2, s)));
    for (q, s) in ELLIPTIC {
        let s64 = s as u64;
        check_nkd(&mut v, &map, &inst(q, 2, s), q * q + 1, (s64 + 1).pow(2), q * q + 1 - s64 * (q + 1));
    }
    v
}

fn equivalence_holds(v: &mut Verdict, map: &BTreeMap<String, CheckReport>, key: &str) {
    let want = json!({"equivalent": true, "perturbed_equivalent": false});
    match map.get(key) {
        Some(r) => v.check(r.observed == want && r.passed(), format!("{key}: observed {}", r.observed)),
        None => v.check(false, format!("{key} missing")),
    }
}

fn c4(ctx: &Context) -> Verdict {
    let mut v = Verdict::new();
    let map = by_instance(reports("equivalence", ctx, &Selection::default()));
    for (q, s) in ELLIPTIC {
        equivalence_holds(&mut v, &map, &inst(q, 2, s));
    }
    v
}

fn c5(ctx: &Context) -> Verdict {
    let mut v = Verdict::new();
    let cases = [(3u64, 1u64), (4, 1), (4, 2)];
    let map = by_instance(reports("bch", ctx, &Selection::default()));
    same_keys(&mut v, &map, &cases.map(|(q, s)| inst(q, 2, s as u32)));
    for (q, s) in cases {
        let key = inst(q, 2, s as u32);
        let Some(r) = map.get(&key) else { continue };
        let d = q * q - 1 - s * (q + 1);
        let want = json!({"n": q * q - 1, "k": (s + 1).pow(2), "d": d, "shift_invariant": true, "designed": d});
        v.check(r.observed == want && r.passed(), format!("{key}: observed {}", r.observed));
        let exhaustive = r
            .params
            .as_ref()
            .is_some_and(|p| p.d_exact == Some(d as usize) && p.method.iter().any(|m| m.starts_with("exhaustive")));
        v.check(exhaustive, format!("{key}: d not exhaustive"));
    }
    v
}

fn c6(ctx: &Context) -> Verdict {
    let mut v = Verdict::new();
    let map = by_instance(reports("cyclic", ctx, &Selection::default()));
    for q in [3u64, 4, 5] {
        let key = format!("q={q}");
        let Some(r) = map.get(&key) else {
            v.check(false, format!("{key} missing"));
            continue;
        };
        let fixed = json!([[0, 0, 0, 1], [1, 0, 0, 0]]);
        let cycles = json!([1, 1, q * q - 1]);
        v.check(r.observed["fixed"] == fixed, format!("{key}: fixed {}", r.observed["fixed"]));
        v.check(r.observed["cycle_type"] == cycles, format!("{key}: cycles {}", r.observed["cycle_type"]));
    }
    v
}

fn c7(ctx: &Context) -> Verdict {
    let mut v = Verdict::new();
    let segre = by_instance(reports("segre", ctx, &Selection::default()));
    check_nkd(&mut v, &segre, &inst(3, 3, 1), 64, 8, 27);
    // (q - s + 1)^d with q = 2, d = 4, s = 1.
    check_nkd(&mut v, &segre, &inst(2, 4, 1), 81, 16, 16);
    let twisted = by_instance(reports("twisted", ctx, &Selection::default()));
    check_nkd(&mut v, &twisted, &inst(3, 3, 1), 28, 8, 15);
    check_nkd(&mut v, &twisted, &inst(4, 3, 1), 65, 8, 44);
    let sel = Selection { q: Some(3), d: Some(3), s: Some(1), bidegree: None };
    let eq = by_instance(reports("equivalence", ctx, &sel));
    equivalence_holds(&mut v, &eq, &inst(3, 3, 1));
    v
}

fn c8(ctx: &Context) -> Verdict {
    let mut v = Verdict::new();
    let map = by_instance(reports("bounds", ctx, &Selection::default()));
    let key = inst(4, 3, 2);
    let Some(r) = map.get(&key) else {
        v.check(false, format!("{key} missing"));
        return v;
    };
    let target = 65 - 2 * 21;
    let Some(p) = &r.params else {
        v.check(false, "no parameter report");
        return v;
    };
    v.check(p.k == 27, format!("k = {}", p.k));
    v.check(p.d_exact.is_none(), "d_exact claimed");
    v.check(p.method.iter().any(|m| m == "designed"), "d_lower not from the designed distance");
    match (p.d_lower, p.d_upper) {
        (Some(lo), Some(hi)) => v.check(lo <= target && target <= hi, format!("bracket [{lo}, {hi}] misses {target}")),
        other => v.check(false, format!("bounds missing: {other:?}")),
    }
    match &p.witness {
        Some(w) => v.check(w.iter().filter(|&&x| x != 0).count() == p.d_upper.unwrap_or(0), "witness weight"),
        None => v.check(false, "no witness"),
    }
    v.check(r.passed(), "report failed");
    v
}

fn c9(ctx: &Context) -> Verdict {
    let mut v = Verdict::new();
    let map = by_instance(reports("corollaries", ctx, &Selection::default()));
    let mut cases = Vec::new();
    for s in [1u64, 2] {
        cases.push((format!("hyperbolic q=3 s={s}"), 2 * s * 4 - s * s, true));
    }
    for (q, s) in [(3u64, 1u64), (4, 1), (4, 2)] {
        cases.push((format!("elliptic q={q} s={s}"), s * (q + 1), false));
    }
    for (key, max, rulings) in cases {
        let Some(r) = map.get(&key) else {
            v.check(false, format!("{key} missing"));
            continue;
        };
        v.check(r.observed["max"] == json!(max), format!("{key}: max {}", r.observed["max"]));
        let cross = r.params.as_ref().and_then(|p| p.d_exact.map(|d| p.n - d));
        v.check(cross == Some(max as usize), format!("{key}: n - d_exact = {cross:?}"));
        if rulings {
            v.check(r.observed["maximizers_are_ruling_unions"] == json!(true), format!("{key}: maximizers"));
        }
    }
    v
}

fn c10(ctx: &Context) -> Verdict {
    let mut v = Verdict::new();
    let rs = reports("example-q5", ctx, &Selection::default());
    let want = json!({"quadric_points": 26, "kind": "elliptic", "curve_points": 3 * (5 + 1)});
    v.check(rs.len() == 1 && rs[0].observed == want, format!("observed {:?}", rs.first().map(|r| &r.observed)));
    v
}

fn c11(ctx: &Context) -> Verdict {
    let mut v = Verdict::new();
    let map = by_instance(reports("lemma-uv", ctx, &Selection::default()));
    for s in 0..=10u64 {
        let key = format!("s={s}");
        let want = json!({"equal": true, "size": (s + 1).pow(2)});
        match map.get(&key) {
            Some(r) => v.check(r.observed == want, format!("{key}: observed {}", r.observed)),
            None => v.check(false, format!("{key} missing")),
        }
    }
    v
}

/// Module invariants and every suite under two choices of moduli and `w`,
/// with suite outcomes equal across choices, plus a third modulus of F_9.
fn c12() -> Verdict {
    let mut v = Verdict::new();
    let base = Context::default();
    let alt = Context::with_choice(Choice::Alternate);
    let third = Context { modulus: Some(vec![2, 2, 1]), ..Context::default() };
    let mut invariants = 0;
    for (ctx, orders) in [(&base, common::ORDERS), (&alt, common::ORDERS), (&third, &[9][..])] {
        let log = common::all(ctx, orders);
        invariants += log.0.len();
        for name in log.failures() {
            v.check(false, format!("invariant failed ({:?}, modulus {:?}): {name}", ctx.choice, ctx.modulus));
        }
    }
    v.check(invariants > 200, format!("only {invariants} invariants ran"));
    for suite in SUITES {
        let a = reports(suite, &base, &Selection::default());
        let b = reports(suite, &alt, &Selection::default());
        for r in &b {
            v.check(r.passed(), format!("{suite} {} fails under the alternate choice", r.instance));
        }
        let key = |rs: &[CheckReport]| rs.iter().map(|r| (r.instance.clone(), r.observed.clone())).collect::<Vec<_>>();
        v.check(key(&a) == key(&b), format!("{suite}: outcomes depend on the choice"));
    }
    let nine = Selection { q: Some(9), d: None, s: Some(1), bidegree: None };
    for suite in ["hyperbolic", "elliptic", "equivalence", "bch"] {
        let runs: Vec<Vec<Value>> = [&base, &alt, &third]
            .iter()
            .map(|ctx| {
                let rs = reports(suite, ctx, &nine);
                for r in &rs {
                    v.check(r.passed(), format!("{suite} {} fails over F_9: {}", r.instance, r.to_text()));
                }
                rs.into_iter().map(|r| r.observed).collect()
            })
            .collect();
        v.check(runs[0] == runs[1] && runs[1] == runs[2], format!("{suite} q=9: outcomes depend on the modulus"));
    }
    v
}

/// Number, time limit and check.
type Criterion<'a> = (u32, Duration, Box<dyn Fn() -> Verdict + 'a>);

fn main() -> ExitCode {
    let ctx = Context::default();
    let criteria: Vec<Criterion> = vec![
        (1, Duration::from_secs(10), Box::new(|| c1(&ctx))),
        (2, Duration::from_secs(30), Box::new(|| c2(&ctx))),
        (3, Duration::from_secs(60), Box::new(|| c3(&ctx))),
        (4, Duration::from_secs(5), Box::new(|| c4(&ctx))),
        (5, Duration::from_secs(10), Box::new(|| c5(&ctx))),
        (6, Duration::from_secs(1), Box::new(|| c6(&ctx))),
        (7, Duration::from_secs(60), Box::new(|| c7(&ctx))),
        (8, Duration::from_secs(30), Box::new(|| c8(&ctx))),
        (9, Duration::from_secs(60), Box::new(|| c9(&ctx))),
        (10, Duration::from_secs(1), Box::new(|| c10(&ctx))),
        (11, Duration::from_secs(1), Box::new(|| c11(&ctx))),
        (12, Duration::from_secs(300), Box::new(c12)),
    ];
    let mut failed = 0;
    for (n, limit, run) in criteria {
        let start = Instant::now();
        let mut verdict = run();
        let elapsed = start.elapsed();
        verdict.check(elapsed <= limit, format!("took {elapsed:?}, limit {limit:?}"));
        let status = if verdict.ok { "pass" } else { "FAIL" };
        println!(
            "criterion {n}: {status} ({} ms){}",
            elapsed.as_millis(),
            if verdict.ok { String::new() } else { format!(" {}", verdict.detail) }
        );
        failed += usize::from(!verdict.ok);
    }
    if failed == 0 {
        println!("acceptance: 12 of 12 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criteria fail");
        ExitCode::FAILURE
    }
}
