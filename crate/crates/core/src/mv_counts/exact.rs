//! Exact symbolic counts of monic `r`-variate polynomials of total degree `n`,
//! as polynomials in the field size `q`.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::exact_arith::{binomial, QPoly, SymRat};
use crate::series::{compositions, divisors, moebius, Composition, TruncSeries};

/// How to compute the irreducible count.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IrrRoute {
    /// Signed sum of products over integer compositions.
    CompositionSum,
    /// `sum_k mu(k)/k log P(z^k)` in truncated power series.
    SeriesLog,
}

/// How to compute the s-powerful count.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PowerfulRoute {
    /// Signed sum of products over integer compositions.
    CompositionSum,
    /// `Q = P - P / P(z^s)` in truncated power series.
    SeriesRelation,
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Number of monic polynomials of total degree `n` in `r` variables:
/// `q^{B-C} (q^C - 1)/(q - 1)` with `B = binom(r+n, r)`, `C = binom(r+n-1, r-1)`.
pub fn p_count(r: u32, n: u32) -> QPoly {
    assert!(r >= 1, "at least one variable");
    let b = binomial(r as i64 + n as i64, r as i64) as usize;
    let c = binomial(r as i64 + n as i64 - 1, r as i64 - 1) as usize;
    let mut coeffs = vec![BigInt::from(0); b];
    for x in &mut coeffs[b - c..] {
        *x = BigInt::from(1);
    }
    QPoly::from_integer_coeffs(coeffs)
}

/// `P_{r,0} .. P_{r,n}` as a truncated series.
pub fn p_series(r: u32, order: usize) -> TruncSeries {
    TruncSeries::from_fn(order, |k| p_count(r, k as u32).into())
}

fn composition_product(r: u32, c: &Composition, cache: &mut Vec<Option<QPoly>>) -> QPoly {
    let mut acc = QPoly::one();
    for &j in c.parts() {
        if cache[j].is_none() {
            cache[j] = Some(p_count(r, j as u32));
        }
        acc = &acc * cache[j].as_ref().unwrap();
    }
    acc
}

/// Number of irreducible monic polynomials; `I_{r,0} = 0`.
pub fn irr_exact(r: u32, n: u32, route: IrrRoute) -> QPoly {
    if n == 0 {
        return QPoly::zero();
    }
    match route {
        IrrRoute::CompositionSum => {
            let mut cache = vec![None; n as usize + 1];
            let mut total = QPoly::zero();
            for k in divisors(n as u64) {
                let mu = moebius(k);
                if mu == 0 {
                    continue;
                }
                let mut inner = QPoly::zero();
                for c in compositions((n as u64 / k) as usize) {
                    let len = c.len() as i64;
                    let sign = if len % 2 == 0 { 1 } else { -1 };
                    let term = composition_product(r, &c, &mut cache).scale(&rat(sign, len));
                    inner = &inner + &term;
                }
                total = &total - &inner.scale(&rat(mu as i64, k as i64));
            }
            total
        }
        IrrRoute::SeriesLog => irr_series(r, n as usize).remove(n as usize),
    }
}

/// `I_{r,0} .. I_{r,order}` via the series logarithm.
pub fn irr_series(r: u32, order: usize) -> Vec<QPoly> {
    let log_p = p_series(r, order).log().expect("P has constant term 1");
    let mut total = TruncSeries::zero(order);
    for k in 1..=order.max(1) {
        let mu = moebius(k as u64);
        if mu == 0 {
            continue;
        }
        let term = log_p
            .substitute_power(k)
            .scale(&SymRat::rational(rat(mu as i64, k as i64)));
        total = total.add(&term).expect("same order");
    }
    total
        .coeffs()
        .iter()
        .map(|c| c.to_qpoly().expect("irreducible counts are polynomials in q"))
        .collect()
}

/// Number of reducible monic polynomials; `R_{r,0} = 1`.
pub fn red_exact(r: u32, n: u32) -> QPoly {
    &p_count(r, n) - &irr_exact(r, n, IrrRoute::SeriesLog)
}

/// Number of s-powerful monic polynomials (divisible by the `s`-th power of
/// a nonconstant polynomial).
pub fn powerful_exact(r: u32, n: u32, s: u32, route: PowerfulRoute) -> QPoly {
    assert!(s >= 2, "power exponent must be at least 2");
    if n < s {
        return QPoly::zero();
    }
    match route {
        PowerfulRoute::CompositionSum => {
            let mut cache = vec![None; n as usize + 1];
            let mut total = QPoly::zero();
            for i in 1..=(n / s) {
                let tail = p_count(r, n - i * s);
                for c in compositions(i as usize) {
                    let sign = if c.len() % 2 == 0 { -1 } else { 1 };
                    let term = &composition_product(r, &c, &mut cache) * &tail;
                    total = &total + &term.scale(&rat(sign, 1));
                }
            }
            total
        }
        PowerfulRoute::SeriesRelation => powerful_series(r, n as usize, s as usize).remove(n as usize),
    }
}

/// `Q_{r,0,s} .. Q_{r,order,s}` from `P = S * P(z^s)`.
pub fn powerful_series(r: u32, order: usize, s: usize) -> Vec<QPoly> {
    let p = p_series(r, order);
    let free = p.div(&p.substitute_power(s)).expect("P has constant term 1");
    p.sub(&free)
        .expect("same order")
        .coeffs()
        .iter()
        .map(|c| c.to_qpoly().expect("powerful counts are polynomials in q"))
        .collect()
}

/// Number of s-powerfree monic polynomials.
pub fn powerfree_exact(r: u32, n: u32, s: u32) -> QPoly {
    &p_count(r, n) - &powerful_exact(r, n, s, PowerfulRoute::SeriesRelation)
}

/// Number of relatively irreducible monic polynomials (irreducible over
/// `F_q`, reducible over an extension):
/// `-sum_{1<k|n} 1/k sum_{s|k} mu(s) I_{r,n/k}(q^s)`.
pub fn relirr_exact(r: u32, n: u32) -> QPoly {
    if n <= 1 {
        return QPoly::zero();
    }
    let irr = irr_series(r, n as usize);
    let mut total = QPoly::zero();
    for k in divisors(n as u64).into_iter().filter(|&k| k > 1) {
        let base = &irr[(n as u64 / k) as usize];
        for s in divisors(k) {
            let mu = moebius(s);
            if mu == 0 {
                continue;
            }
            let term = base.subs_pow(s as usize).scale(&rat(mu as i64, k as i64));
            total = &total - &term;
        }
    }
    total
}

/// Number of absolutely irreducible monic polynomials.
pub fn absirr_exact(r: u32, n: u32) -> QPoly {
    &irr_exact(r, n, IrrRoute::SeriesLog) - &relirr_exact(r, n)
}
