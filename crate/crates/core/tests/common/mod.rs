// SPDX-License-Identifier: Apache-2.0

//! Module invariants, evaluated under a given field presentation.

#![allow(dead_code)]

use quadricode::analysis::combinatorics::product_identity_check;
use quadricode::analysis::equivalence::{perturbation_search, twisted_point_map};
use quadricode::analysis::sections::hyperplane_product_witness;
use quadricode::analysis::{
    designed_distance, equivalence_via_map, lemma_uv_check, max_section_points, min_distance_exact, Choice, Context,
    DEFAULT_BUDGET,
};
use std::collections::HashMap;

use quadricode::codes::{
    bch_b, bch_b_ext, elliptic_code, evaluation_code, extended_rs, hyperbolic_code, segre_code, tensor_code,
    twisted_code, Label, Provenance,
};
use quadricode::field::{BasisStyle, Elem, Field};
use quadricode::geometry::{
    cyclic_automorphism, enumerate_projective_points, induced_permutation, satisfies_segre_relations, segre,
    segre_variety, EmbeddingSpec, Form, OrbitCoordinates, ProjectivePoint, QuadricKind, QuadricSpec,
};
use quadricode::linalg::{subfield_subcode, Matrix};
use quadricode::Result;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A named invariant and whether it held.
pub struct Outcome {
    pub name: String,
    pub ok: bool,
}

#[derive(Default)]
pub struct Log(pub Vec<Outcome>);

impl Log {
    fn check(&mut self, name: impl Into<String>, r: Result<bool>) {
        let name = name.into();
        let ok = match r {
            Ok(b) => b,
            Err(e) => {
                eprintln!("{name}: {e}");
                false
            }
        };
        self.0.push(Outcome { name, ok });
    }

    pub fn failures(&self) -> Vec<&str> {
        self.0.iter().filter(|o| !o.ok).map(|o| o.name.as_str()).collect()
    }
}

fn rng(ctx: &Context, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(ctx.seed ^ salt ^ if ctx.choice == Choice::Alternate { 0x5a5a } else { 0 })
}

fn random_matrix(f: &Field, rows: usize, cols: usize, r: &mut ChaCha8Rng) -> Matrix {
    let data = (0..rows).map(|_| (0..cols).map(|_| r.random_range(0..f.order())).collect()).collect::<Vec<Vec<u32>>>();
    Matrix::from_encodings(f, &data).expect("encodings in range")
}

pub fn field(log: &mut Log, ctx: &Context, q: u64) {
    let mut fields = vec![ctx.small(q).expect("field")];
    if q * q <= 81 {
        fields.push(ctx.tower(q, 2).expect("tower").big().clone());
    }
    for f in fields {
        let tag = format!("GF({}) {:?}", f.order(), f.modulus());
        let nonzero: Vec<Elem> = f.elements().skip(1).collect();
        log.check(format!("{tag}: product of units is -1"), Ok(f.product(nonzero.iter().copied()) == f.from_int(-1)));
        if f.order() > 2 {
            log.check(format!("{tag}: elements sum to 0"), Ok(f.sum(f.elements()).is_zero()));
        }
        let p = f.characteristic() as u64;
        let additive =
            f.elements().all(|x| f.elements().all(|y| f.pow(f.add(x, y), p) == f.add(f.pow(x, p), f.pow(y, p))));
        log.check(format!("{tag}: frobenius is additive"), Ok(additive));
        let round = f.elements().all(|x| f.elem(x.enc() as u64) == Ok(x) && f.from_digits(&f.digits(x)) == Ok(x));
        log.check(format!("{tag}: encodings round-trip"), Ok(round));
        log.check(format!("{tag}: descriptor round-trips"), Field::from_descriptor(&f.descriptor()).map(|g| g == f));
    }
    for d in [2, 3] {
        if q.pow(d) > 4096 {
            continue;
        }
        let t = ctx.tower(q, d).expect("tower");
        let ok = t.big().elements().all(|x| {
            t.is_in_subfield(t.norm_big(x))
                && t.is_in_subfield(t.trace_big(x))
                && t.norm(x).is_ok()
                && t.trace(x).is_ok()
        });
        log.check(format!("q={q} d={d}: norm and trace land in F_q"), Ok(ok));
    }
}

pub fn linalg(log: &mut Log, ctx: &Context, q: u64) {
    let f = ctx.small(q).expect("field");
    let mut r = rng(ctx, q);
    for trial in 0..20 {
        let (rows, cols) = (r.random_range(1..6usize), r.random_range(1..8usize));
        let m = random_matrix(&f, rows, cols, &mut r);
        let once = m.rref().matrix;
        log.check(format!("q={q} #{trial}: rref is idempotent"), Ok(once.rref().matrix == once));
        let kernel = m.kernel();
        let nullity = kernel.rows();
        let annihilates =
            m.mul(&kernel.transpose()).map(|p| (0..p.rows()).all(|i| p.row(i).iter().all(|x| x.is_zero())));
        log.check(format!("q={q} #{trial}: rank-nullity"), Ok(m.rank() + nullity == cols));
        log.check(format!("q={q} #{trial}: kernel is annihilated"), annihilates);
    }
    for trial in 0..10 {
        let a = random_matrix(&f, r.random_range(1..5), r.random_range(1..5), &mut r);
        let b = random_matrix(&f, r.random_range(1..5), r.random_range(1..5), &mut r);
        log.check(
            format!("q={q} #{trial}: rank of kronecker product"),
            a.kronecker(&b).map(|k| k.rank() == a.rank() * b.rank()),
        );
    }
    if q * q <= 81 {
        let t = ctx.tower(q, 2).expect("tower");
        for trial in 0..5 {
            let g = random_matrix(t.big(), r.random_range(1..4), r.random_range(2..7), &mut r);
            log.check(
                format!("q={q} #{trial}: subfield subcode is no larger"),
                subfield_subcode(&g, &t).map(|h| h.rank() <= g.rank()),
            );
        }
        for s in 0..q as u32 {
            let kept = bch_b(&t, s).and_then(|b| Ok(b.subfield_subcode(&t, "B0")?.dimension() == b.dimension()));
            log.check(format!("q={q} s={s}: B(s) keeps its dimension over F_q"), kept);
        }
    }
}

fn scaled(f: &Field, p: &ProjectivePoint, c: Elem) -> Vec<Elem> {
    p.coords().iter().map(|&x| f.mul(c, x)).collect()
}

pub fn geometry(log: &mut Log, ctx: &Context, q: u64) {
    let f = ctx.small(q).expect("field");
    let mut r = rng(ctx, 7 * q);
    let points = enumerate_projective_points(&f, 3);
    let renormal = points.iter().all(|p| {
        let c = f.elem(r.random_range(1..f.order()) as u64).expect("unit");
        ProjectivePoint::normalize(&f, p.coords()).as_ref() == Ok(p)
            && ProjectivePoint::normalize(&f, &scaled(&f, p, c)).as_ref() == Ok(p)
    });
    log.check(format!("q={q}: normalized points are fixed"), Ok(renormal));
    for d in [2usize, 3] {
        if (q + 1).pow(d as u32) > 4096 {
            continue;
        }
        let v = segre_variety(&f, d);
        let ok = v.len() == (q as usize + 1).pow(d as u32) && v.iter().all(|(p, _)| satisfies_segre_relations(&f, p));
        log.check(format!("q={q} d={d}: Segre image size and relations"), Ok(ok));
    }
    let hyp = QuadricSpec::hyperbolic(&f);
    log.check(format!("q={q}: hyperbolic quadric"), Ok(hyp.kind() == QuadricKind::Hyperbolic));
    let quad = ctx.quadratic(q).expect("quadratic");
    let ell = QuadricSpec::elliptic(&quad);
    log.check(format!("q={q}: elliptic quadric"), Ok(ell.kind() == QuadricKind::Elliptic));
    let closed = cyclic_automorphism(&quad).and_then(|m| induced_permutation(&f, ell.points(), &m));
    log.check(format!("q={q}: cyclic automorphism preserves E"), Ok(closed.is_ok()));
    if q <= 5 {
        for trial in 0..6 {
            let terms = quadricode::geometry::monomials(4, 2)
                .into_iter()
                .map(|m| (m, f.elem(r.random_range(0..f.order()) as u64).expect("in range")))
                .collect();
            let form = Form::from_terms(&f, 4, 2, terms).expect("form");
            if let Ok(spec) = QuadricSpec::smooth(form) {
                let n = spec.points().len() as u64;
                log.check(
                    format!("q={q} #{trial}: smooth quadric point count"),
                    Ok(n == (q + 1) * (q + 1) || n == q * q + 1),
                );
            }
        }
    }
    for d in [2u32, 3] {
        if q.pow(d) > 4096 {
            continue;
        }
        log.check(format!("q={q} d={d}: embedding factorization"), ctx.embedding(q, d).map(|_| true));
    }
    if q.pow(3) <= 125 {
        let t = ctx.tower(q, 3).expect("tower");
        let basis = t.extension_basis(BasisStyle::Polynomial { generator: Some(ctx.w(&t)) }).expect("basis");
        let s = 1.min(q as u32 - 2);
        let same = EmbeddingSpec::with_basis(&t, &basis, OrbitCoordinates::Trace).and_then(|a| {
            let b = EmbeddingSpec::with_basis(&t, &basis, OrbitCoordinates::Derivative)?;
            let (ca, cb) = (twisted_code(&a, s)?, twisted_code(&b, s)?);
            // columns correspond through the common source point of P^1(F_q^d)
            let to_a: HashMap<_, _> = a.point_map()?.into_iter().collect();
            let relabel: HashMap<Label, Label> =
                b.point_map()?.into_iter().map(|(src, img)| (Label::from(&img), Label::from(&to_a[&src]))).collect();
            let cb = cb.relabel(cb.labels().iter().map(|l| relabel[l].clone()).collect())?;
            ca.same_code_by_labels(&cb)
        });
        log.check(format!("q={q} d=3: derivative coordinates give the same code"), same);
    }
}

pub fn codes(log: &mut Log, ctx: &Context, q: u64) {
    let f = ctx.small(q).expect("field");
    if (3..=5).contains(&q) {
        let line = enumerate_projective_points(&f, 1);
        for s in 0..q as u32 {
            let eq = hyperbolic_code(&f, s).and_then(|h| {
                let rs = extended_rs(&f, s)?;
                let t = tensor_code(&rs, &rs)?;
                let labels = line
                    .iter()
                    .flat_map(|a| line.iter().map(move |b| (a, b)))
                    .map(|(a, b)| segre(&f, &[a.clone(), b.clone()]).map(|x| Label::from(&x)))
                    .collect::<Result<Vec<_>>>()?;
                h.same_code_by_labels(&t.relabel(labels)?)
            });
            log.check(format!("q={q} s={s}: hyperbolic code is the tensor code"), eq);
        }
        for s in 0..q as u32 - 1 {
            let eq = ctx.embedding(q, 2).and_then(|spec| {
                let t = spec.tower().clone();
                let c = elliptic_code(&ctx.quadratic(q)?, s)?;
                let b = bch_b_ext(&t, s)?.subfield_subcode(&t, "B0ext")?;
                Ok(equivalence_via_map(&c, &b, &twisted_point_map(&spec)?)?.equivalent)
            });
            log.check(format!("q={q} s={s}: elliptic code matches B0ext"), eq);
        }
    }
    let hyp = QuadricSpec::hyperbolic(&f);
    let ell = QuadricSpec::elliptic(&ctx.quadratic(q).expect("quadratic"));
    for s in 0..q as u32 {
        let k = (s as usize + 1).pow(2);
        for (kind, spec) in [("hyperbolic", &hyp), ("elliptic", &ell)] {
            log.check(
                format!("q={q} s={s}: {kind} dimension"),
                evaluation_code(&f, spec.points(), s, Provenance::new(kind)).map(|c| c.dimension() == k),
            );
        }
    }
    if q.pow(3) <= 125 {
        for s in 0..q as u32 - 1 {
            let k = (s as usize + 1).pow(3);
            log.check(format!("q={q} s={s}: Segre d=3 dimension"), segre_code(&f, 3, s).map(|c| c.dimension() == k));
            let tw = ctx.embedding(q, 3).and_then(|e| twisted_code(&e, s));
            log.check(format!("q={q} s={s}: twisted d=3 dimension"), tw.map(|c| c.dimension() == k));
        }
    }
}

pub fn combinatorics(log: &mut Log) {
    for s in 0..=10 {
        log.check(format!("s={s}: U = V"), Ok(lemma_uv_check(s)));
    }
    for s in 0..=3 {
        log.check(format!("s={s}: d=3 product identity"), Ok(product_identity_check(5, 3, s)));
    }
}

pub fn analysis(log: &mut Log, ctx: &Context, q: u64) {
    if !(3..=5).contains(&q) {
        return;
    }
    let f = ctx.small(q).expect("field");
    let t = ctx.tower(q, 2).expect("tower");
    for s in 1..q as u32 - 1 {
        let ok = bch_b(&t, s).and_then(|b| {
            let b0 = b.subfield_subcode(&t, "B0")?;
            let d = min_distance_exact(&b0, DEFAULT_BUDGET)?.d_exact.unwrap_or(0) as u64;
            Ok(designed_distance(&b0)? <= d)
        });
        log.check(format!("q={q} s={s}: designed distance is a lower bound"), ok);
        let eq = ctx.embedding(q, 2).and_then(|spec| {
            let c = twisted_code(&spec, s)?;
            let b = bch_b_ext(&t, s)?.subfield_subcode(&t, "B0ext")?;
            let map = twisted_point_map(&spec)?;
            let perturbed = perturbation_search(&c, &b, &map)?;
            Ok(equivalence_via_map(&c, &b, &map)?.equivalent && perturbed.is_some_and(|p| !p.2.equivalent))
        });
        log.check(format!("q={q} s={s}: equivalence and a breaking transposition"), eq);
    }
    let quad = ctx.quadratic(q).expect("quadratic");
    let ell = QuadricSpec::elliptic(&quad);
    let hyp = QuadricSpec::hyperbolic(&f);
    let mut cases = vec![(ell.points().to_vec(), 1u32)];
    if q <= 4 {
        cases.push((hyp.points().to_vec(), 1));
    }
    if q == 4 {
        cases.push((ell.points().to_vec(), 2));
    }
    for (points, s) in cases {
        let ok = max_section_points(&f, &points, s, DEFAULT_BUDGET).and_then(|m| {
            let code = evaluation_code(&f, &points, s, Provenance::new("x"))?;
            let d = min_distance_exact(&code, DEFAULT_BUDGET)?.d_exact;
            Ok(d.map(|d| m.max_points == m.n - d).unwrap_or(false))
        });
        log.check(format!("q={q} n={} s={s}: max section = n - d", points.len()), ok);
    }
    let n = q * q + 1;
    for s in 1..q as usize - 1 {
        let ok = hyperplane_product_witness(&f, ell.points(), s, DEFAULT_BUDGET)
            .map(|w| w.is_some_and(|w| w.weight as u64 == n - s as u64 * (q + 1)));
        log.check(format!("q={q} s={s}: plane-section witness weight"), ok);
    }
}

pub fn cli(log: &mut Log, ctx: &Context) {
    let mut args: Vec<String> = ["quadricode", "verify", "psl2", "--seed", "11"].map(String::from).to_vec();
    if ctx.choice == Choice::Alternate {
        args.push("--alternate".into());
    }
    let a = quadricode::cli::run_args(args.clone());
    let b = quadricode::cli::run_args(args);
    log.check("cli: identical runs give identical output", Ok(a == b));
    for suite in ["cyclic", "bch", "lemma-uv"] {
        let mut args: Vec<String> = ["quadricode", "verify", suite].map(String::from).to_vec();
        if ctx.choice == Choice::Alternate {
            args.push("--alternate".into());
        }
        let out = quadricode::cli::run_args(args);
        let all_pass = out.stdout.lines().all(|l| l.contains("\"status\":\"pass\""));
        log.check(format!("cli {suite}: exit 0 exactly when every report passes"), Ok((out.code == 0) == all_pass));
    }
}

/// Every invariant for the given field orders.
pub fn all(ctx: &Context, qs: &[u64]) -> Log {
    let mut log = Log::default();
    for &q in qs {
        field(&mut log, ctx, q);
        linalg(&mut log, ctx, q);
        geometry(&mut log, ctx, q);
        codes(&mut log, ctx, q);
        analysis(&mut log, ctx, q);
    }
    combinatorics(&mut log);
    if ctx.modulus.is_none() {
        cli(&mut log, ctx);
    }
    log
}

/// Field orders exercised under the two global choices.
pub const ORDERS: &[u64] = &[2, 3, 4, 5, 7, 8, 9];
