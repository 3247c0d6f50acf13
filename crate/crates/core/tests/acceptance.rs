//! The acceptance suite: one line per criterion, nonzero exit if any fails.
//! Pass a substring to run only matching criteria.

use std::panic::{self, AssertUnwindSafe};
use std::sync::Arc;
use std::time::Instant;

use ffcount::exact_arith::{BigInt, BigRational, SymRat};
use ffcount::ff::{enumeration_budget, FieldCtx, FqElem, UniPoly};
use ffcount::mv_counts::{
    alpha_mv, approx, beta_mv, exact_symbolic, irr_exact, powerful_exact, within_relative, Class, CountQuery,
    FieldSpec, IrrRoute, PowerfulRoute, Quantity,
};
use ffcount::oracle::{decomposition_table, oracle_count, oracle_decomp_census, oracle_mv_decomp};
use ffcount::uv_counts::{d_n_bracket, d_n_exact, d_p2_exact, tame_intersection, wild_intersection_bounds};
use ffcount::uv_families::{
    frobenius_family, m_family, ritt_family_first, ritt_family_second, s_family, t_set, P2Classifier,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Default)]
struct Checks {
    failures: Vec<String>,
    count: usize,
}

impl Checks {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.count += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn eq<T: PartialEq + std::fmt::Display>(&mut self, label: &str, got: T, want: T) {
        let ok = got == want;
        self.check(ok, || format!("{label}: expected {want}, got {got}"));
    }
}

fn field(q: u32) -> Arc<FieldCtx> {
    let (p, d) = match q {
        4 => (2, 2),
        8 => (2, 3),
        9 => (3, 2),
        16 => (2, 4),
        25 => (5, 2),
        _ => (q, 1),
    };
    FieldCtx::new(p, d).unwrap()
}

fn formula(class: Class, r: u32, n: u32, s: Option<u32>, q: u64) -> BigInt {
    let query = CountQuery::new(class, r, n, s, FieldSpec::Symbolic).unwrap();
    exact_symbolic(&query).unwrap().eval_integer(&BigInt::from(q)).unwrap()
}

fn rat(x: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(x.into())
}

fn moebius(n: u64) -> i64 {
    let (mut m, mut k, mut sign) = (n, 2, 1);
    while k * k <= m {
        if m % k == 0 {
            m /= k;
            if m % k == 0 {
                return 0;
            }
            sign = -sign;
        }
        k += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    sign
}

fn gauss_exact(criterion: &mut Checks) {
    for q in [2i128, 3, 4, 5, 7, 8, 9] {
        for n in 1..=10u32 {
            let sum: i128 = (1..=n as u64)
                .filter(|d| (n as u64).is_multiple_of(*d))
                .map(|d| moebius(d) as i128 * q.pow(n / d as u32))
                .sum();
            let want = BigInt::from(sum / n as i128);
            let got = irr_exact(1, n, IrrRoute::SeriesLog).eval_integer(&BigInt::from(q as i64)).unwrap();
            criterion.eq(&format!("irreducible(1,{n}) at q={q}"), got, want);
        }
    }
}

fn route_equivalence(c: &mut Checks) {
    for r in 1..=3 {
        for n in 0..=8 {
            let a = irr_exact(r, n, IrrRoute::CompositionSum);
            let b = irr_exact(r, n, IrrRoute::SeriesLog);
            c.check(a == b, || format!("irreducible({r},{n}): {a} vs {b}"));
            for s in [2, 3] {
                let a = powerful_exact(r, n, s, PowerfulRoute::CompositionSum);
                let b = powerful_exact(r, n, s, PowerfulRoute::SeriesRelation);
                c.check(a == b, || format!("powerful({r},{n},{s}): {a} vs {b}"));
            }
        }
    }
}

fn oracle_multivariate(c: &mut Checks) {
    let f2 = field(2);
    let budget = enumeration_budget();
    let oracle = |class, r: u32, n, s| oracle_count(class, r as usize, n, &f2, s, budget).unwrap();
    let cases: [(Class, u32, u32, Option<u32>, Option<i64>); 8] = [
        (Class::Reducible, 2, 2, None, Some(21)),
        (Class::Reducible, 2, 3, None, Some(406)),
        (Class::Reducible, 2, 4, None, None),
        (Class::Powerful, 2, 2, Some(2), Some(6)),
        (Class::Powerful, 2, 4, Some(2), Some(356)),
        (Class::RelIrreducible, 2, 2, None, Some(7)),
        (Class::AbsIrreducible, 2, 2, None, Some(28)),
        (Class::RelIrreducible, 2, 4, None, None),
    ];
    for (class, r, n, s, literal) in cases {
        let label = format!("{class}({r},{n}{}) over F_2", s.map(|s| format!(",{s}")).unwrap_or_default());
        let got = oracle(class, r, n, s);
        let want = formula(class, r, n, s, 2);
        c.eq(&format!("{label} oracle vs formula"), got.clone(), want);
        if let Some(v) = literal {
            c.eq(&format!("{label} oracle vs stated value"), got, BigInt::from(v));
        }
    }
}

fn symbolic_report(class: Class, r: u32, n: u32, s: Option<u32>) -> (SymRat, SymRat, Option<i64>) {
    let rep = approx(&CountQuery::new(class, r, n, s, FieldSpec::Symbolic).unwrap()).unwrap();
    let sym = |x: Option<Quantity>| match x {
        Some(Quantity::Symbolic(v)) => v,
        other => panic!("expected a symbolic quantity, got {other:?}"),
    };
    (sym(rep.exact), sym(rep.main_term), rep.gap_exponent)
}

fn error_degree(c: &mut Checks) {
    let rel_degree = |exact: &SymRat, main: &SymRat| (exact - main).checked_div(main).unwrap().qdegree().unwrap();
    for n in [5, 6, 7] {
        let (e, m, gap) = symbolic_report(Class::Reducible, 2, n, None);
        let d = rel_degree(&e, &m);
        c.check(Some(-d) == gap, || format!("reducible(2,{n}): degree {d}, gap {gap:?}"));
    }
    for (n, s) in [(6, 3), (8, 2)] {
        let (e, m, gap) = symbolic_report(Class::Powerful, 2, n, Some(s));
        let d = rel_degree(&e, &m);
        c.check(Some(-d) == gap, || format!("powerful(2,{n},{s}): degree {d}, gap {gap:?}"));
    }
    for n in [4, 6, 8, 9] {
        let (e, m, gap) = symbolic_report(Class::RelIrreducible, 2, n, None);
        let d = rel_degree(&e, &m);
        let k = gap.unwrap();
        c.check(d <= -k, || format!("rel_irreducible(2,{n}): degree {d} above -{k}"));
    }
}

fn explicit_inequalities(c: &mut Checks) {
    for r in [2, 3] {
        for q in [2u64, 3, 4, 5, 8, 9] {
            let mut queries = Vec::new();
            for n in 4..=8 {
                queries.push((Class::Reducible, n, None));
            }
            for s in [2, 3] {
                for n in 3 * s..=8 {
                    queries.push((Class::Powerful, n, Some(s)));
                }
            }
            for n in [4, 6, 8] {
                queries.push((Class::RelIrreducible, n, None));
            }
            for (class, n, s) in queries {
                let rep = approx(&CountQuery::new(class, r, n, s, FieldSpec::Size(q)).unwrap()).unwrap();
                c.check(rep.within_bound == Some(true), || {
                    format!("{class}({r},{n},{s:?}) at q={q}: within_bound = {:?}", rep.within_bound)
                });
            }
        }
    }
}

fn quartic_counts(c: &mut Checks) {
    for q in [2u32, 4, 8, 3, 5, 7] {
        let census = oracle_decomp_census(4, &field(q), enumeration_budget()).unwrap();
        let qi = q as u64;
        let want = if q % 2 == 0 { (2 * qi * qi + 1) / 3 } else { qi * qi };
        c.eq(&format!("#D_4 over F_{q} (census)"), census.total, want);
        let formula = d_n_exact(4, qi).unwrap().unwrap();
        c.eq(&format!("#D_4 over F_{q} (formula)"), formula, BigInt::from(want));
    }
}

fn degree_p_squared(c: &mut Checks) {
    for (p, d, want) in [(2u64, 1u32, 3i64), (2, 2, 11), (3, 1, 69), (5, 1, 389905)] {
        let q = p.pow(d);
        let got = d_p2_exact(p, d).unwrap();
        c.eq(&format!("d_p2_exact over F_{q}"), got.clone(), BigInt::from(want));
        let census = oracle_decomp_census((p * p) as u32, &field(q as u32), enumeration_budget()).unwrap();
        c.eq(&format!("census #D_{} over F_{q}", p * p), BigInt::from(census.total), got);
    }
}

fn tame_intersections(c: &mut Checks) {
    for (ell, m, q, want) in [(2u64, 3u64, 5u64, 25i64), (2, 4, 3, 27), (3, 4, 5, 45)] {
        let got = tame_intersection(ell, m, q).unwrap();
        c.eq(&format!("tame_intersection({ell},{m},{q})"), got.clone(), BigInt::from(want));
        let census = oracle_decomp_census((ell * m) as u32, &field(q as u32), enumeration_budget()).unwrap();
        let oracle = census.intersection(ell as u32, m as u32).unwrap().count;
        c.eq(&format!("oracle intersection({ell},{m},{q})"), BigInt::from(oracle), got);
    }
}

fn inclusion_exclusion(c: &mut Checks) {
    let census = oracle_decomp_census(6, &field(5), enumeration_budget()).unwrap();
    let sum = census.split(2).unwrap().distinct + census.split(3).unwrap().distinct;
    let both = census.intersection(2, 3).unwrap().count;
    c.eq("#D_{6,2} + #D_{6,3} - intersection", sum - both, 225);
    c.eq("census total", census.total, 225);
    c.eq("census inclusion-exclusion", census.inclusion_exclusion, 225);
    c.eq("formula", d_n_exact(6, 5).unwrap().unwrap(), BigInt::from(225));
    let bracket = d_n_bracket(6, 5).unwrap();
    c.check(bracket.contains(&rat(225)), || format!("225 outside {bracket}"));
}

const FIELDS: [u32; 14] = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25];

fn random_elem(rng: &mut ChaCha8Rng, ctx: &FieldCtx) -> FqElem {
    ctx.elem(rng.gen_range(0..ctx.size())).unwrap()
}

fn random_nonzero(rng: &mut ChaCha8Rng, ctx: &FieldCtx) -> FqElem {
    ctx.elem(rng.gen_range(1..ctx.size())).unwrap()
}

fn random_monic(rng: &mut ChaCha8Rng, ctx: &Arc<FieldCtx>, deg: usize, original: bool) -> UniPoly {
    let mut coeffs: Vec<FqElem> = (0..deg).map(|_| random_elem(rng, ctx)).collect();
    if original && deg > 0 {
        coeffs[0] = FqElem::ZERO;
    }
    coeffs.push(FqElem::ONE);
    UniPoly::new(ctx, coeffs)
}

fn family_identities(c: &mut Checks) {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let fields: Vec<Arc<FieldCtx>> = FIELDS.iter().map(|&q| field(q)).collect();
    let target = 100;
    let mut built = [0usize; 5];
    let names = ["ritt1", "ritt2", "frobenius", "S", "M"];
    let mut attempts = 0;
    while built.iter().any(|&b| b < target) && attempts < 200_000 {
        attempts += 1;
        let ctx = &fields[rng.gen_range(0..fields.len())];
        let p = ctx.characteristic();
        let kind = rng.gen_range(0..5);
        if built[kind] >= target {
            continue;
        }
        let fam = match kind {
            0 => {
                let ell = rng.gen_range(2..6);
                let k = rng.gen_range(1..ell);
                let deg = rng.gen_range(0..4);
                let w = random_monic(&mut rng, ctx, deg, false);
                ritt_family_first(ell, k, &w, random_elem(&mut rng, ctx))
            }
            1 => {
                let ell = rng.gen_range(2..5);
                let m = rng.gen_range(ell + 1..9);
                ritt_family_second(ctx, ell, m, random_nonzero(&mut rng, ctx), random_elem(&mut rng, ctx))
            }
            2 => {
                let deg = rng.gen_range(2..7);
                let h = random_monic(&mut rng, ctx, deg, true);
                frobenius_family(&h)
            }
            3 => {
                let powers: Vec<u32> = (1..4).map(|j| p.pow(j)).filter(|&r| r <= 27).collect();
                let r = powers[rng.gen_range(0..powers.len())];
                let ms: Vec<u32> = (1..r).filter(|m| (r - 1).is_multiple_of(*m)).collect();
                let m = ms[rng.gen_range(0..ms.len())];
                let (u, s, eps) = (random_nonzero(&mut rng, ctx), random_nonzero(&mut rng, ctx), rng.gen_bool(0.5));
                let fam = s_family(ctx, u, s, eps, m, r);
                if let Ok(f) = &fam {
                    let t = t_set(ctx, u, eps, r).len();
                    c.eq("S-family decomposition count vs #T", f.decompositions.len(), t);
                }
                fam
            }
            _ => {
                let powers: Vec<u32> = (1..4).map(|j| p.pow(j)).filter(|&r| r <= 27).collect();
                let r = powers[rng.gen_range(0..powers.len())];
                let ms: Vec<u32> = (2..r.saturating_sub(1)).filter(|m| m % p != 0).collect();
                if ms.is_empty() {
                    continue;
                }
                let m = ms[rng.gen_range(0..ms.len())];
                let (a, b) = (random_nonzero(&mut rng, ctx), random_nonzero(&mut rng, ctx));
                let fam = m_family(ctx, a, b, m, r);
                if let Ok(f) = &fam {
                    let a_star = ctx.sub(ctx.pow(b, r as u64), a);
                    match m_family(ctx, a_star, b, r - m, r) {
                        Ok(dual) => c.check(dual.f == f.f, || format!("M-family involution moves {}", f.f)),
                        Err(e) => c.check(false, || format!("M-family dual failed: {e}")),
                    }
                }
                fam
            }
        };
        let Ok(fam) = fam else { continue };
        match fam.verify() {
            Ok(()) => {}
            Err(e) => c.check(false, || format!("{} over {ctx}: {e}", names[kind])),
        }
        c.check(true, String::new);
        built[kind] += 1;
    }
    for (name, &b) in names.iter().zip(&built) {
        c.check(b >= target, || format!("only {b} {name} parameter sets built"));
    }
}

fn classification(c: &mut Checks) {
    for q in [2u32, 3, 4] {
        let ctx = field(q);
        let p = ctx.characteristic();
        let classifier = P2Classifier::new(&ctx).unwrap();
        for (f, k) in decomposition_table(p * p, &ctx, enumeration_budget()).unwrap() {
            if k < 2 {
                continue;
            }
            let cl = classifier.classify(&f).unwrap();
            c.check(cl.is_exclusive(), || format!("{f} over F_{q}: labels {:?}", cl.matches));
            c.eq(&format!("{f} over F_{q}: decompositions found"), cl.decompositions, k as usize);
            if let Some(w) = cl.witness() {
                c.eq(&format!("{f} over F_{q}: predicted multiplicity"), w.predicted_count(), k as usize);
            }
        }
    }
    for (p, q) in [(2u32, 2u32), (2, 4), (3, 3)] {
        let census = oracle_decomp_census(p * p, &field(q), enumeration_budget()).unwrap();
        let want = (q as u64).pow(p - 1) - 1;
        c.eq(&format!("Frobenius collisions in D_{} over F_{q}", p * p), census.frobenius_collisions, want);
    }
}

fn census_support(c: &mut Checks) {
    let census = oracle_decomp_census(25, &field(5), enumeration_budget()).unwrap();
    for (&k, &count) in &census.histogram {
        c.check(matches!(k, 1 | 2 | 6) || count == 0, || format!("c_{k} = {count}"));
    }
}

fn multivariate_decomposable(c: &mut Checks) {
    let got = oracle_mv_decomp(2, 4, &field(23), enumeration_budget()).unwrap();
    let alpha = alpha_mv(2, 4).eval(&BigInt::from(23)).unwrap();
    let beta = beta_mv(2, 4).at(23);
    let value = BigRational::from_integer(got.clone());
    c.check(within_relative(&value, &alpha, &beta), || format!("{got} outside {alpha}(1 ± {beta})"));
    c.check((beta.to_f64() - 0.436).abs() < 5e-4, || format!("beta = {}", beta.to_f64()));
}

fn wild_bounds(c: &mut Checks) {
    for (ell, m, q) in [(2u64, 4u64, 2u64), (2, 6, 2)] {
        let census = oracle_decomp_census((ell * m) as u32, &field(q as u32), enumeration_budget()).unwrap();
        let count = census.intersection(ell as u32, m as u32).unwrap().non_frobenius;
        let bracket = wild_intersection_bounds(ell, m, q).unwrap();
        c.check(bracket.contains(&rat(count)), || format!("({ell},{m},{q}): {count} outside {bracket}"));
    }
}

fn modulus_independence(c: &mut Checks) {
    let a = FieldCtx::with_modulus(2, &[1, 1, 0, 1]).unwrap();
    let b = FieldCtx::with_modulus(2, &[1, 0, 1, 1]).unwrap();
    let budget = enumeration_budget();
    let classes = [
        (Class::Reducible, 2, 2, None),
        (Class::Irreducible, 2, 2, None),
        (Class::Powerful, 2, 2, Some(2)),
        (Class::Powerfree, 2, 2, Some(2)),
        (Class::RelIrreducible, 2, 2, None),
        (Class::AbsIrreducible, 2, 2, None),
        (Class::Reducible, 1, 4, None),
        (Class::RelIrreducible, 1, 4, None),
        (Class::DecomposableMv, 2, 2, None),
    ];
    for (class, r, n, s) in classes {
        let x = oracle_count(class, r as usize, n, &a, s, budget).unwrap();
        let y = oracle_count(class, r as usize, n, &b, s, budget).unwrap();
        c.eq(&format!("{class}({r},{n}) under both moduli"), x.clone(), y);
        if class != Class::DecomposableMv {
            c.eq(&format!("{class}({r},{n}) vs formula"), x, formula(class, r, n, s, 8));
        }
    }
    for n in [4, 6] {
        let x = oracle_decomp_census(n, &a, budget).unwrap();
        let y = oracle_decomp_census(n, &b, budget).unwrap();
        c.check(x.field != y.field, || "moduli should differ".into());
        let strip = |mut r: ffcount::oracle::CensusReport| {
            r.field.clear();
            r
        };
        c.check(strip(x) == strip(y), || format!("census of degree {n} differs between moduli"));
    }
}

type Criterion = (u32, &'static str, fn(&mut Checks));

const CRITERIA: [Criterion; 15] = [
    (1, "univariate irreducible counts match Gauss's formula", gauss_exact),
    (2, "composition-sum and series routes agree", route_equivalence),
    (3, "multivariate oracle equivalence over F_2", oracle_multivariate),
    (4, "relative error degree equals the gap exponent", error_degree),
    (5, "explicit relative error bounds hold", explicit_inequalities),
    (6, "quartic decomposable counts", quartic_counts),
    (7, "degree p^2 decomposable counts", degree_p_squared),
    (8, "tame intersections", tame_intersections),
    (9, "inclusion-exclusion for sextics over F_5", inclusion_exclusion),
    (10, "collision family identities", family_identities),
    (11, "degree p^2 collision classification", classification),
    (12, "collision multiplicities in degree 25 over F_5", census_support),
    (13, "bivariate quartic decomposables within the bracket", multivariate_decomposable),
    (14, "wild intersection bounds", wild_bounds),
    (15, "F_8 counts are independent of the modulus", modulus_independence),
];

fn main() {
    let filters: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    let mut ran = 0;
    for (id, title, run) in CRITERIA {
        let name = format!("criterion {id:>2}: {title}");
        if !filters.is_empty() && !filters.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        ran += 1;
        let start = Instant::now();
        let mut checks = Checks::default();
        let outcome = panic::catch_unwind(AssertUnwindSafe(|| run(&mut checks)));
        let secs = start.elapsed().as_secs_f64();
        let detail = match outcome {
            Err(e) => {
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                Some(format!("panicked: {msg}"))
            }
            Ok(()) if !checks.failures.is_empty() => Some(format!(
                "{} of {} checks failed; first: {}",
                checks.failures.len(),
                checks.count,
                checks.failures[0]
            )),
            Ok(()) => None,
        };
        match detail {
            None => println!("PASS  {name} ({} checks, {secs:.1}s)", checks.count),
            Some(d) => {
                failed += 1;
                println!("FAIL  {name} ({secs:.1}s): {d}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", ran - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

