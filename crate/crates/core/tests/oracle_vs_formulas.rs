use std::sync::Arc;

use ffcount::exact_arith::BigInt;
use ffcount::ff::{FieldCtx, FqElem, UniPoly};
use ffcount::mv_counts::{exact_symbolic, Class, CountQuery, FieldSpec};
use ffcount::oracle::{decomposition_table, oracle_count, oracle_decomp_census, oracle_mv_decomp, OracleError};
use ffcount::uv_counts::{d_n_bracket, d_n_exact, wild_intersection_bounds};
use ffcount::uv_families::find_decompositions;
use num_bigint::BigInt as Int;
use num_rational::BigRational;

const BUDGET: u64 = 1 << 24;

fn field(p: u32, d: u32) -> Arc<FieldCtx> {
    FieldCtx::new(p, d).unwrap()
}

fn formula(class: Class, r: u32, n: u32, s: Option<u32>, q: u64) -> BigInt {
    let query = CountQuery::new(class, r, n, s, FieldSpec::Symbolic).unwrap();
    exact_symbolic(&query).unwrap().eval_integer(&BigInt::from(q)).unwrap()
}

#[test]
fn every_class_matches_on_small_grids() {
    let classes = [
        (Class::Reducible, None),
        (Class::Irreducible, None),
        (Class::Powerful, Some(2)),
        (Class::Powerfree, Some(2)),
        (Class::Powerful, Some(3)),
        (Class::RelIrreducible, None),
        (Class::AbsIrreducible, None),
    ];
    let grid: [(u32, u32, u32, u32); 8] =
        [(1, 5, 2, 1), (1, 4, 3, 1), (1, 4, 2, 2), (2, 3, 2, 1), (2, 2, 3, 1), (2, 2, 2, 2), (3, 2, 2, 1), (2, 4, 2, 1)];
    for (r, max_n, p, d) in grid {
        let ctx = field(p, d);
        let q = ctx.size() as u64;
        for n in 0..=max_n {
            for (class, s) in classes {
                let got = oracle_count(class, r as usize, n, &ctx, s, BUDGET).unwrap();
                assert_eq!(got, formula(class, r, n, s, q), "{class} r={r} n={n} s={s:?} q={q}");
            }
        }
    }
}

#[test]
fn budget_errors_name_the_size() {
    let err = oracle_count(Class::Reducible, 3, 4, &field(3, 1), None, 1000).unwrap_err();
    match err {
        OracleError::Field(e) => assert!(e.to_string().contains("1000"), "{e}"),
        other => panic!("{other:?}"),
    }
    assert!(oracle_decomp_census(16, &field(5, 1), 1000).is_err());
    assert!(oracle_mv_decomp(3, 4, &field(5, 1), 1000).is_err());
}

#[test]
fn prime_degree_multivariate_decomposables_are_the_linear_splits() {
    // univariate with deg h = 1: h = x, so every monic original polynomial
    for (p, n) in [(2u32, 3u32), (3, 3), (2, 5), (5, 2)] {
        let ctx = field(p, 1);
        let got = oracle_mv_decomp(1, n, &ctx, BUDGET).unwrap();
        assert_eq!(got, Int::from(p).pow(n - 1));
    }
}

#[test]
fn census_invariants() {
    for (p, d, n) in [(2, 1, 4), (2, 1, 6), (2, 1, 8), (2, 1, 12), (3, 1, 6), (3, 1, 9), (3, 1, 12), (2, 2, 8), (5, 1, 8), (7, 1, 6)] {
        let ctx = field(p, d);
        let c = oracle_decomp_census(n, &ctx, BUDGET).unwrap();
        let summed: u64 = c.histogram.values().sum();
        assert_eq!(summed, c.total, "n={n} {ctx}");
        assert_eq!(c.inclusion_exclusion, c.total as i64, "n={n} {ctx}");
        assert!(c.splits.iter().all(|s| s.distinct <= c.total && s.distinct <= s.pairs));
        if n % p != 0 {
            assert!(c.splits.iter().all(|s| s.max_multiplicity == 1), "tame injectivity n={n} {ctx}");
        }
    }
}

#[test]
fn census_matches_the_exact_counts_and_brackets() {
    for (p, d) in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)] {
        let ctx = field(p, d);
        let q = ctx.size() as u64;
        for n in [4u32, 6, 8, 9, 10, 12, 14, 15] {
            let Ok(c) = oracle_decomp_census(n, &ctx, BUDGET) else { continue };
            if let Some(exact) = d_n_exact(n as u64, q).unwrap() {
                assert_eq!(exact, BigInt::from(c.total), "n={n} q={q}");
            }
            let bracket = d_n_bracket(n as u64, q).unwrap();
            let total = BigRational::from_integer(c.total.into());
            assert!(bracket.contains(&total), "n={n} q={q}: {} outside {bracket}", c.total);
        }
    }
}

#[test]
fn wild_intersections_respect_their_bounds() {
    for (ell, m, p, d) in [(2u32, 4u32, 2u32, 1u32), (2, 6, 2, 1), (2, 3, 2, 1), (2, 3, 3, 1), (3, 4, 3, 1), (2, 6, 3, 1), (2, 6, 2, 2), (3, 6, 3, 1)] {
        let ctx = field(p, d);
        let q = ctx.size() as u64;
        let c = oracle_decomp_census(ell * m, &ctx, BUDGET).unwrap();
        let count = c.intersection(ell, m).unwrap().non_frobenius;
        let b = wild_intersection_bounds(ell as u64, m as u64, q).unwrap();
        assert!(b.contains(&BigRational::from_integer(count.into())), "({ell},{m},{q}): {count} outside {b}");
    }
}

#[test]
fn decomposition_search_agrees_with_the_census() {
    for (p, d, n) in [(2, 1, 8), (3, 1, 9), (2, 2, 4), (3, 1, 6), (2, 1, 12)] {
        let ctx = field(p, d);
        for (f, k) in decomposition_table(n, &ctx, BUDGET).unwrap() {
            let found = find_decompositions(&f, BUDGET).unwrap();
            assert_eq!(found.len(), k as usize, "{f} over {ctx}");
            assert!(found.iter().all(|dec| dec.compose() == f));
        }
    }
}

#[test]
fn shifts_preserve_decomposition_counts() {
    let ctx = field(3, 1);
    for (f, k) in decomposition_table(9, &ctx, BUDGET).unwrap() {
        for a in ctx.elements() {
            let g = f.original_shift(a);
            assert_eq!(find_decompositions(&g, BUDGET).unwrap().len(), k as usize, "{f} shifted by {a:?}");
        }
    }
    let x4 = UniPoly::monomial(&ctx, FqElem::ONE, 4);
    assert!(find_decompositions(&x4, BUDGET).unwrap().len() == 1);
}
