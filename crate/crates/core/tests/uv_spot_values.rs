use ffcount::exact_arith::{BigInt, BigRational};
use ffcount::ff::FieldCtx;
use ffcount::oracle::oracle_decomp_census;
use ffcount::uv_counts::{alpha_bounds_hold, alpha_n, d_n_bracket, d_p2_exact, nu, nu_from, UvError};
use proptest::prelude::*;

fn r(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[test]
fn nu_for_quartics() {
    for q in [3u64, 5, 7, 9, 11] {
        assert_eq!(nu(4, q).unwrap(), r(1, 1));
    }
    for q in [2i64, 4, 8, 16] {
        assert_eq!(nu(4, q as u64).unwrap(), r(2 * q * q + 1, 3 * q * q));
    }
}

#[test]
fn nu_for_p_squared_tends_to_one() {
    let mut last = None;
    for d in 1..6 {
        let v = nu(4, 2u64.pow(d)).unwrap();
        if let Some(prev) = last {
            assert!(v < prev);
        }
        assert!(v > r(2, 3));
        last = Some(v);
    }
    let v = nu_from(&d_p2_exact(3, 1).unwrap(), 9, 3).unwrap();
    assert_eq!(v, r(69, 81));
}

#[test]
fn prime_degrees_are_rejected() {
    assert_eq!(alpha_n(7, 2).unwrap_err(), UvError::NoDecomposables(7));
    assert!(d_n_bracket(13, 3).is_err());
}

#[test]
fn brackets_are_ordered_and_contain_small_censuses() {
    for (p, d) in [(2, 1), (3, 1), (5, 1)] {
        let ctx = FieldCtx::new(p, d).unwrap();
        let q = ctx.size() as u64;
        for n in [4u32, 6, 8, 9, 10] {
            let b = d_n_bracket(n as u64, q).unwrap();
            assert!(b.is_ordered(), "{b}");
            if let Ok(c) = oracle_decomp_census(n, &ctx, 1 << 22) {
                assert!(b.contains(&BigRational::from_integer(BigInt::from(c.total))), "n={n} q={q}: {b}");
            }
        }
    }
}

proptest! {
    #[test]
    fn alpha_bounds(n in 4u64..200, qi in 0usize..6) {
        let q = [2u64, 3, 4, 5, 7, 9][qi];
        match alpha_bounds_hold(n, q) {
            Ok(ok) => prop_assert!(ok, "n={} q={}", n, q),
            Err(UvError::NoDecomposables(_)) => {}
            Err(e) => prop_assert!(false, "{}", e),
        }
    }
}
