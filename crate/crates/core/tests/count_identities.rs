use ffcount::exact_arith::{BigInt, BigRational, QPoly, SymRat};
use ffcount::mv_counts::{
    absirr_exact, irr_exact, irr_series, p_count, p_series, powerful_exact, powerful_series, powerfree_exact,
    red_exact, relirr_exact, IrrRoute, PowerfulRoute,
};
use ffcount::series::TruncSeries;
use num_traits::Zero;
use proptest::prelude::*;

const FIELD_SIZES: [i64; 9] = [2, 3, 4, 5, 7, 8, 9, 11, 16];

fn at(p: &QPoly, q: i64) -> BigInt {
    p.eval_integer(&BigInt::from(q)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn partitions_of_the_monic_polynomials(r in 1u32..4, n in 0u32..8, s in 2u32..4) {
        let p = p_count(r, n);
        let irr = irr_exact(r, n, IrrRoute::SeriesLog);
        prop_assert_eq!(&(&irr + &red_exact(r, n)), &p);
        prop_assert_eq!(&(&powerful_exact(r, n, s, PowerfulRoute::SeriesRelation) + &powerfree_exact(r, n, s)), &p);
        prop_assert_eq!(&(&relirr_exact(r, n) + &absirr_exact(r, n)), &irr);
    }

    #[test]
    fn routes_agree(r in 1u32..4, n in 0u32..8, s in 2u32..4) {
        prop_assert_eq!(irr_exact(r, n, IrrRoute::CompositionSum), irr_exact(r, n, IrrRoute::SeriesLog));
        prop_assert_eq!(
            powerful_exact(r, n, s, PowerfulRoute::CompositionSum),
            powerful_exact(r, n, s, PowerfulRoute::SeriesRelation)
        );
    }

    #[test]
    fn counts_are_nonnegative_integers(r in 1u32..4, n in 0u32..8, s in 2u32..4, qi in 0usize..FIELD_SIZES.len()) {
        let q = FIELD_SIZES[qi];
        for poly in [
            irr_exact(r, n, IrrRoute::SeriesLog),
            red_exact(r, n),
            powerful_exact(r, n, s, PowerfulRoute::SeriesRelation),
            powerfree_exact(r, n, s),
            relirr_exact(r, n),
            absirr_exact(r, n),
        ] {
            let v = at(&poly, q);
            prop_assert!(v >= BigInt::zero(), "{} at q={} is {}", poly, q, v);
        }
    }

    #[test]
    fn symrat_field_laws(a in prop::collection::vec(-4i64..5, 1..4), b in prop::collection::vec(-4i64..5, 1..4), e in -3i64..4) {
        let mk = |c: &[i64]| QPoly::from_integer_coeffs(c.iter().map(|&x| BigInt::from(x)).collect()).to_symrat();
        let x = &mk(&a) * &SymRat::q_pow(e);
        let y = &mk(&b) + &SymRat::one();
        prop_assume!(!y.is_zero());
        prop_assert_eq!(&(&(&x + &y) - &y), &x);
        prop_assert_eq!(&(&(&x * &y) / &y), &x);
        for q0 in [2i64, 3, 5] {
            let q0 = BigInt::from(q0);
            if let (Ok(xv), Ok(yv)) = (x.eval(&q0), y.eval(&q0)) {
                prop_assert_eq!((&x * &y).eval(&q0).unwrap(), &xv * &yv);
                prop_assert_eq!((&x + &y).eval(&q0).unwrap(), xv + yv);
            }
        }
    }
}

#[test]
fn exp_inverts_log() {
    let p = p_series(2, 6);
    assert_eq!(p.log().unwrap().exp().unwrap(), p);
}

#[test]
fn euler_product_recovers_the_monic_counts() {
    // prod_k (1 - z^k)^{-I_k} = P as series
    let order = 6;
    let irr = irr_series(2, order);
    let mut log = TruncSeries::zero(order);
    for (k, ik) in irr.iter().enumerate().skip(1) {
        // -I_k log(1 - z^k) = I_k sum_j z^{jk}/j
        let mut coeffs = vec![SymRat::zero(); order + 1];
        let mut j = 1;
        while j * k <= order {
            let c = ik.scale(&BigRational::new(1.into(), (j as i64).into()));
            coeffs[j * k] = c.to_symrat();
            j += 1;
        }
        log = log.add(&TruncSeries::from_coeffs(coeffs, order)).unwrap();
    }
    assert_eq!(log.exp().unwrap(), p_series(2, order));
}

#[test]
fn squarefree_series_relation() {
    let order = 7;
    let p = p_series(3, order);
    let q = powerful_series(3, order, 2);
    let free = TruncSeries::from_fn(order, |n| (&p_count(3, n as u32) - &q[n]).to_symrat());
    assert_eq!(free.mul(&p.substitute_power(2)).unwrap(), p);
}

#[test]
fn univariate_counts_match_the_classics() {
    for q in FIELD_SIZES {
        // squarefree monic univariate: q^n - q^{n-1} for n >= 2
        for n in 2..7 {
            let v = at(&powerfree_exact(1, n, 2), q);
            assert_eq!(v, BigInt::from(q.pow(n) - q.pow(n - 1)));
        }
        // every univariate irreducible of degree >= 2 splits over an extension
        for n in 2..7 {
            assert_eq!(relirr_exact(1, n), irr_exact(1, n, IrrRoute::SeriesLog));
            assert!(absirr_exact(1, n).is_zero());
        }
    }
}
