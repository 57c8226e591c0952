//! The self-test: every acceptance criterion as a named, timed check.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::brace::{validate_brace, Ideal, SkewBrace};
use crate::builder::parse_brace;
use crate::cohomology::{
    delta_kernels, group_schur_multiplier, h2b, hochschild_serre_check, schur_multiplier, BraceFactorSet,
};
use crate::corpus::corpus;
use crate::covers::{cover_count_bound, enumerate_covers, is_schur_cover};
use crate::extension::{build_extension, extension_from_ideal, AnnihilatorExtension};
use crate::group::GroupTable;
use crate::iso::find_isomorphism;
use crate::isoclinism::isoclinism_test;
use crate::linalg::FinAbGroup;
use crate::twisted::{brace_alg_relation_check, lifting_property_check, TwistedAlgebra};

type Check<T> = std::result::Result<T, String>;

pub struct Criterion {
    pub id: u8,
    pub name: &'static str,
    pub tags: &'static [&'static str],
    pub limit: Duration,
    run: fn(&Ctx) -> Check<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Outcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: u128,
    pub limit_ms: u128,
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "[{}] {:>2} {:<28} {:>8} ms (limit {} ms)  {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed_ms,
            self.limit_ms,
            self.detail
        )
    }
}

#[derive(Clone, Debug, Default)]
pub struct Options {
    /// Runs only criteria whose name contains, or which carry a tag equal to,
    /// this string.
    pub filter: Option<String>,
    /// Damages every fixture table before validation.
    pub corrupt: bool,
}

struct Ctx {
    corrupt: bool,
}

impl Ctx {
    /// Builds a fixture, routing its tables through validation.
    fn load(&self, spec: &str) -> Check<SkewBrace> {
        let q = parse_brace(spec).map_err(|e| format!("fixture {spec}: {e}"))?;
        let add = q.add_rows();
        let mut circ = q.circ_rows();
        if self.corrupt && q.order() > 1 {
            let n = q.order();
            circ[1][1] = (circ[1][1] + 1) % n;
        }
        validate_brace(&add, &circ).map_err(|e| format!("fixture {spec} rejected: {e}"))
    }
}

/// Runs `f`, failing if it takes longer than `limit`.
fn timed<T>(label: &str, limit: Duration, f: impl FnOnce() -> Check<T>) -> Check<T> {
    let start = Instant::now();
    let out = f()?;
    let took = start.elapsed();
    if took > limit {
        return Err(format!("{label} took {took:?}, over the {limit:?} limit"));
    }
    Ok(out)
}

fn expect_eq<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Check<()> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, expected {want:?}"))
    }
}

fn s(e: crate::error::Error) -> String {
    e.to_string()
}

fn multiplier_of(q: &SkewBrace) -> Check<Vec<u64>> {
    Ok(schur_multiplier(q).map_err(s)?.group().invariants().to_vec())
}

const SEC: Duration = Duration::from_secs(1);

fn bicyclic(ctx: &Ctx) -> Check<String> {
    for (n, d) in [(3u64, 3u64), (9, 3), (4, 4), (8, 4)] {
        let spec = format!("c:{n},{d}");
        let q = ctx.load(&spec)?;
        let m = timed(&spec, 30 * SEC, || multiplier_of(&q))?;
        expect_eq(&format!("M_b({spec})"), m, vec![d])?;
    }
    Ok("M_b(C_(n,d)) = [d] for all four".into())
}

fn non_bicyclic(ctx: &Ctx) -> Check<String> {
    for spec in ["c:4,2", "c:8,2"] {
        let q = ctx.load(spec)?;
        let m = timed(spec, 60 * SEC, || multiplier_of(&q))?;
        expect_eq(&format!("M_b({spec})"), m, vec![2, 2])?;
    }
    Ok("[2,2] for C_(4,2) and C_(8,2)".into())
}

fn bp(ctx: &Ctx) -> Check<String> {
    let q = ctx.load("bp:3")?;
    let m = timed("bp:3", 60 * SEC, || multiplier_of(&q))?;
    expect_eq("M_b(B_3)", m, vec![3, 3, 3])?;
    Ok("[3,3,3]".into())
}

fn trivial_formula(q: &SkewBrace) -> Check<(Vec<u64>, Vec<u64>)> {
    let g = q.add_group();
    let mg = group_schur_multiplier(g).map_err(s)?.group().clone();
    let ab = q.abelianization().map_err(s)?.group;
    let want = mg.direct_sum(&ab.tensor(&ab)).invariants().to_vec();
    Ok((multiplier_of(q)?, want))
}

fn trivial_braces(ctx: &Ctx) -> Check<String> {
    let mut notes = Vec::new();
    for g in ["cyclic:2", "cyclic:4", "klein:4", "s3", "quaternion:8"] {
        let q = ctx.load(&format!("trivial:{g}"))?;
        let (got, want) = timed(g, 300 * SEC, || trivial_formula(&q))?;
        expect_eq(&format!("M_b(trivial {g})"), &got, &want)?;
        notes.push(format!("{g}:{got:?}"));
        let fixed: Option<Vec<u64>> = match g {
            "klein:4" => Some(vec![2; 5]),
            "quaternion:8" => Some(vec![2; 4]),
            _ => None,
        };
        if let Some(f) = fixed {
            expect_eq(&format!("M_b(trivial {g})"), got, f)?;
        }
    }
    Ok(notes.join(" "))
}

fn opposite(ctx: &Ctx) -> Check<String> {
    for g in ["s3", "quaternion:8"] {
        let t = ctx.load(&format!("trivial:{g}"))?;
        let a = ctx.load(&format!("almosttrivial:{g}"))?;
        let o = ctx.load(&format!("trivial:opposite:{g}"))?;
        let (mt, ma, mo) = timed(g, 300 * SEC, || Ok((multiplier_of(&t)?, multiplier_of(&a)?, multiplier_of(&o)?)))?;
        expect_eq(&format!("almost trivial {g}"), &ma, &mt)?;
        expect_eq(&format!("trivial on opposite {g}"), &mo, &mt)?;
    }
    Ok("both readings agree for S3 and Q8".into())
}

fn products(ctx: &Ctx) -> Check<String> {
    for (spec, want) in [("prod:c:3,3|c:3,3", vec![3u64; 5]), ("prod:c:3,3|c:4,2", vec![2, 6])] {
        let q = ctx.load(spec)?;
        let m = timed(spec, 600 * SEC, || multiplier_of(&q))?;
        expect_eq(&format!("M_b({spec})"), m, want)?;
    }
    Ok("[3,3,3,3,3] and [2,6]".into())
}

fn covers_of_cyclic(ctx: &Ctx) -> Check<Vec<Vec<AnnihilatorExtension>>> {
    let mut out = Vec::new();
    for p in [2usize, 3] {
        let q = ctx.load(&format!("trivial:cyclic:{p}"))?;
        let covers = timed(&format!("covers of Z/{p}"), 120 * SEC, || enumerate_covers(&q).map_err(s))?;
        expect_eq(&format!("number of covers of Z/{p}"), covers.len(), 2)?;
        let bound = cover_count_bound(&q).map_err(s)?;
        if covers.len() as u128 > bound {
            return Err(format!("{} covers exceed the bound {bound}", covers.len()));
        }
        for want in [SkewBrace::c_nd(p * p, p).map_err(s)?, SkewBrace::b_p(p).map_err(s)?] {
            let hits = covers.iter().filter(|c| find_isomorphism(c.brace(), &want).is_some()).count();
            expect_eq(&format!("covers of Z/{p} isomorphic to a named cover"), hits, 1)?;
        }
        out.push(covers);
    }
    Ok(out)
}

fn covers(ctx: &Ctx) -> Check<String> {
    covers_of_cyclic(ctx)?;
    Ok("Z/2: {C_(4,2), B_2}; Z/3: {C_(9,3), B_3}".into())
}

fn canonical_extension(ctx: &Ctx, n: usize, d: usize) -> Check<AnnihilatorExtension> {
    let e = ctx.load(&format!("c:{},{d}", n * d))?;
    let ideal = Ideal::new(&e, (0..n * d).step_by(n).collect()).map_err(s)?;
    let ext = extension_from_ideal(&e, &ideal, None).map_err(s)?;
    if ext.base() != &SkewBrace::c_nd(n, d).map_err(s)? {
        return Err(format!("quotient of C_({},{d}) is not C_({n},{d})", n * d));
    }
    Ok(ext)
}

fn cover_verification(ctx: &Ctx) -> Check<String> {
    timed("cover verification", 120 * SEC, || {
        for (n, d) in [(3, 3), (9, 3)] {
            let ext = canonical_extension(ctx, n, d)?;
            let cert = is_schur_cover(&ext).map_err(s)?;
            if !cert.is_cover() {
                return Err(format!("C_({},{d}) over C_({n},{d}): {cert:?}", n * d));
            }
        }
        Ok("C_(9,3) and C_(27,3) are Schur covers".into())
    })
}

fn isoclinism(ctx: &Ctx) -> Check<String> {
    let all = covers_of_cyclic(ctx)?;
    timed("isoclinism", 60 * SEC, || {
        let mut pairs = 0;
        for covers in &all {
            for (i, a) in covers.iter().enumerate() {
                for b in &covers[i + 1..] {
                    if isoclinism_test(a.brace(), b.brace()).map_err(s)?.is_none() {
                        return Err("two covers of one brace are not isoclinic".into());
                    }
                    pairs += 1;
                }
            }
        }
        let z4 = ctx.load("trivial:cyclic:4")?;
        let c42 = ctx.load("c:4,2")?;
        if isoclinism_test(&z4, &c42).map_err(s)?.is_some() {
            return Err("trivial Z/4 reported isoclinic to C_(4,2)".into());
        }
        Ok(format!("{pairs} cover pairs isoclinic; Z/4 vs C_(4,2) rejected"))
    })
}

fn hochschild_serre(ctx: &Ctx) -> Check<String> {
    timed("exactness", 120 * SEC, || {
        let c93 = canonical_extension(ctx, 3, 3)?;
        let b3 = ctx.load("bp:3")?;
        let ann = b3.annihilator().map_err(s)?;
        let b3_ext = extension_from_ideal(&b3, &ann, None).map_err(s)?;
        let mut orders = Vec::new();
        for (label, ext, m) in [("C_(9,3), A=Z/3", &c93, 3), ("C_(9,3), A=Z/9", &c93, 9), ("B_3, A=Z/3", &b3_ext, 3)] {
            let rep = hochschild_serre_check(ext, m).map_err(s)?;
            if let Some(p) = rep.positions.iter().find(|p| !p.exact) {
                return Err(format!("{label}: not exact at {}", p.position));
            }
            orders.push(rep.positions.iter().map(|p| p.kernel_order).collect::<Vec<_>>());
        }
        Ok(format!("exact everywhere, kernel orders {orders:?}"))
    })
}

fn exponent_bound(ctx: &Ctx) -> Check<String> {
    timed("exponent bound", 600 * SEC, || {
        let list = corpus(9);
        for (spec, _) in &list {
            let q = ctx.load(spec)?;
            let n = q.order() as u64;
            let e = schur_multiplier(&q).map_err(s)?.group().exponent();
            if !(n * n).is_multiple_of(e) {
                return Err(format!("exp M_b({spec}) = {e} does not divide {}", n * n));
            }
        }
        Ok(format!("{} braces", list.len()))
    })
}

fn universal_coefficients(ctx: &Ctx) -> Check<String> {
    timed("universal coefficients", 300 * SEC, || {
        for spec in ["trivial:cyclic:2", "c:4,2", "c:9,3"] {
            let q = ctx.load(spec)?;
            let ab = q.abelianization().map_err(s)?.group;
            let mb = schur_multiplier(&q).map_err(s)?.group().clone();
            for m in [2u64, 3, 4, 9] {
                let got = h2b(&q, m).group().order();
                let want = ab.tensor_cyclic(m).order() * mb.tensor_cyclic(m).order();
                expect_eq(&format!("|H²_b({spec}, Z/{m})|"), got, want)?;
            }
        }
        Ok("12 pairs".into())
    })
}

/// All labelled group tables of order `n` with identity 0.
fn all_group_tables(n: usize) -> Vec<Vec<Vec<usize>>> {
    let cells = (n - 1) * (n - 1);
    let mut out = Vec::new();
    let total = n.pow(cells as u32);
    for code in 0..total {
        let mut t: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| if i == 0 { j } else if j == 0 { i } else { 0 }).collect()).collect();
        let mut c = code;
        for row in t.iter_mut().skip(1) {
            for cell in row.iter_mut().skip(1) {
                *cell = c % n;
                c /= n;
            }
        }
        if GroupTable::from_rows(&t, crate::error::Operation::Add).is_ok() {
            out.push(t);
        }
    }
    out
}

/// `(|Z/B|, #{classes killed by k} for k = 1..=m)` by exhaustive enumeration.
fn enumerate_h2b(q: &SkewBrace, m: u64) -> (u128, Vec<u128>) {
    let n = q.order();
    let dim = 2 * n.saturating_sub(1).pow(2);
    let mut cob = std::collections::HashSet::new();
    let hdim = n.saturating_sub(1);
    for code in 0..m.pow(hdim as u32) {
        let mut h = vec![0u64; n];
        let mut c = code;
        for v in h.iter_mut().skip(1) {
            *v = c % m;
            c /= m;
        }
        cob.insert(BraceFactorSet::coboundary(q, m, &h).to_vector());
    }
    let mut cocycles = Vec::new();
    for code in 0..m.pow(dim as u32) {
        let mut v = vec![0u64; dim];
        let mut c = code;
        for x in v.iter_mut() {
            *x = c % m;
            c /= m;
        }
        if BraceFactorSet::from_vector(n, m, &v).is_valid(q) {
            cocycles.push(v);
        }
    }
    let b = cob.len() as u128;
    let killed = (1..=m)
        .map(|k| {
            let hits = cocycles.iter().filter(|z| cob.contains(&z.iter().map(|&x| x * k % m).collect::<Vec<_>>())).count();
            hits as u128 / b
        })
        .collect();
    (cocycles.len() as u128 / b, killed)
}

fn oracle(ctx: &Ctx) -> Check<String> {
    timed("oracle", 60 * SEC, || {
        let mut braces = vec![ctx.load("point")?];
        for n in 2..=4 {
            let tables = all_group_tables(n);
            for a in &tables {
                for c in &tables {
                    if let Ok(q) = validate_brace(a, c) {
                        braces.push(q);
                    }
                }
            }
        }
        if ctx.corrupt {
            braces.push(ctx.load("trivial:cyclic:3")?);
        }
        let mut checked = 0;
        for q in &braces {
            let top = if q.order() <= 3 { 4 } else { 2 };
            for m in 1..=top {
                let h = h2b(q, m);
                let (order, killed) = enumerate_h2b(q, m);
                expect_eq("order of H²_b", h.group().order(), order)?;
                let want: Vec<u128> = (1..=m).map(|k| h.group().killed_by(k)).collect();
                expect_eq("k-torsion counts", want, killed)?;
                checked += 1;
            }
        }
        Ok(format!("{} braces, {checked} (brace, m) pairs", braces.len()))
    })
}

fn twisted(ctx: &Ctx) -> Check<String> {
    timed("twisted algebra", 60 * SEC, || {
        let mut gens = 0;
        for spec in ["c:3,3", "c:9,3", "c:4,4", "c:8,4", "c:4,2", "c:8,2", "bp:3"] {
            let q = ctx.load(spec)?;
            for g in schur_multiplier(&q).map_err(s)?.representatives() {
                let alg = TwistedAlgebra::new(&q, g.clone()).map_err(s)?;
                if !brace_alg_relation_check(&alg).holds {
                    return Err(format!("relation fails for a generator over {spec}"));
                }
                let mut bad = g.clone();
                bad.set_mu(1, 1, (g.mu(1, 1) + 1) % g.modulus());
                let report = brace_alg_relation_check(&TwistedAlgebra::unchecked(&q, bad).map_err(s)?);
                if report.holds || report.witness.is_none() {
                    return Err(format!("perturbed tables over {spec} pass the relation"));
                }
                gens += 1;
            }
        }
        let mut covers: Vec<AnnihilatorExtension> = covers_of_cyclic(ctx)?.into_iter().flatten().collect();
        covers.push(canonical_extension(ctx, 3, 3)?);
        covers.push(canonical_extension(ctx, 9, 3)?);
        for c in &covers {
            if !lifting_property_check(c).map_err(s)? {
                return Err(format!("a cover of order {} lacks the lifting property", c.brace().order()));
            }
        }
        let mut splits = 0;
        for spec in ["trivial:cyclic:2", "trivial:cyclic:3", "c:3,3", "c:4,2", "c:9,3"] {
            let q = ctx.load(spec)?;
            let k: FinAbGroup = schur_multiplier(&q).map_err(s)?.group().clone();
            let zero: Vec<BraceFactorSet> = k.invariants().iter().map(|&d| BraceFactorSet::zero(q.order(), d)).collect();
            let split = build_extension(&k, &zero, &q).map_err(s)?;
            if lifting_property_check(&split).map_err(s)? {
                return Err(format!("split extension over {spec} has the lifting property"));
            }
            splits += 1;
        }
        Ok(format!("{gens} generators, {} covers, {splits} split extensions", covers.len()))
    })
}

fn s_groups(ctx: &Ctx) -> Check<String> {
    timed("S-groups", 120 * SEC, || {
        let k = delta_kernels(&ctx.load("c:9,3")?).map_err(s)?;
        expect_eq("S(C_(9,3))", k.s.invariants(), &[3][..])?;
        let k = delta_kernels(&ctx.load("bp:3")?).map_err(s)?;
        expect_eq("S₊(B_3)", k.s_add.invariants(), &[3, 3][..])?;
        Ok("S(C_(9,3)) = [3], S₊(B_3) = [3,3]".into())
    })
}

static CRITERIA: [Criterion; 15] = [
    Criterion { id: 1, name: "bicyclic-multipliers", tags: &["multiplier"], limit: Duration::from_secs(120), run: bicyclic },
    Criterion { id: 2, name: "cyclic-non-bicyclic", tags: &["multiplier"], limit: Duration::from_secs(120), run: non_bicyclic },
    Criterion { id: 3, name: "bp-multiplier", tags: &["multiplier"], limit: Duration::from_secs(60), run: bp },
    Criterion { id: 4, name: "trivial-braces", tags: &["multiplier"], limit: Duration::from_secs(1500), run: trivial_braces },
    Criterion { id: 5, name: "opposite-invariance", tags: &["multiplier"], limit: Duration::from_secs(600), run: opposite },
    Criterion { id: 6, name: "direct-products", tags: &["multiplier"], limit: Duration::from_secs(1200), run: products },
    Criterion { id: 7, name: "covers-of-zp", tags: &["covers"], limit: Duration::from_secs(240), run: covers },
    Criterion { id: 8, name: "cover-verification", tags: &["covers"], limit: Duration::from_secs(120), run: cover_verification },
    Criterion { id: 9, name: "isoclinism", tags: &["covers"], limit: Duration::from_secs(300), run: isoclinism },
    Criterion { id: 10, name: "hochschild-serre", tags: &["cohomology"], limit: Duration::from_secs(120), run: hochschild_serre },
    Criterion { id: 11, name: "exponent-bound", tags: &["multiplier", "property"], limit: Duration::from_secs(600), run: exponent_bound },
    Criterion { id: 12, name: "universal-coefficients", tags: &["cohomology"], limit: Duration::from_secs(300), run: universal_coefficients },
    Criterion { id: 13, name: "brute-force-oracle", tags: &["cohomology", "oracle"], limit: Duration::from_secs(60), run: oracle },
    Criterion { id: 14, name: "twisted-algebra", tags: &["twisted"], limit: Duration::from_secs(60), run: twisted },
    Criterion { id: 15, name: "s-groups", tags: &["cohomology"], limit: Duration::from_secs(120), run: s_groups },
];

pub fn criteria() -> &'static [Criterion] {
    &CRITERIA
}

impl Criterion {
    pub fn matches(&self, filter: &str) -> bool {
        self.name.contains(filter) || self.tags.contains(&filter) || self.id.to_string() == filter
    }
}

pub fn run_criterion(c: &Criterion, corrupt: bool) -> Outcome {
    let start = Instant::now();
    let result = (c.run)(&Ctx { corrupt });
    let elapsed = start.elapsed();
    let (passed, detail) = match result {
        Ok(d) if elapsed <= c.limit => (true, d),
        Ok(d) => (false, format!("{d}; exceeded the time limit")),
        Err(e) => (false, e),
    };
    Outcome {
        id: c.id,
        name: c.name,
        passed,
        detail,
        elapsed_ms: elapsed.as_millis(),
        limit_ms: c.limit.as_millis(),
    }
}

pub fn run(opts: &Options) -> Vec<Outcome> {
    criteria()
        .iter()
        .filter(|c| opts.filter.as_deref().is_none_or(|f| c.matches(f)))
        .map(|c| run_criterion(c, opts.corrupt))
        .collect()
}
