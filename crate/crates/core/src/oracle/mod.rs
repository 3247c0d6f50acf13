//! Brute-force ground truth by exhaustive enumeration over small fields,
//! independent of the formula layer.

mod census;
mod keys;

use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use rayon::prelude::*;
use thiserror::Error;

use crate::ff::{
    check_budget, enumerate_dense, enumeration_count, field_embed, Constraints, FfError, FieldCtx, FqElem,
    MonomialBasis,
};
use crate::mv_counts::Class;
use crate::series::{divisors, is_prime};
use keys::Keys;

pub use census::{decomposition_table, oracle_decomp_census, CensusReport, Intersection, SplitCount};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error(transparent)]
    Field(#[from] FfError),
    #[error("invalid oracle query: {0}")]
    Invalid(String),
}

fn dense_list(
    ctx: &FieldCtx,
    basis: &MonomialBasis,
    k: u32,
    c: Constraints,
    budget: u64,
) -> Result<Vec<Vec<FqElem>>, FfError> {
    let mut it = enumerate_dense(ctx, basis, k, c, budget)?;
    let mut out = Vec::new();
    while let Some(v) = it.next_ref() {
        out.push(v.iter().map(|&i| FqElem(i)).collect());
    }
    Ok(out)
}

fn count(q: u32, r: usize, k: u32, c: Constraints) -> BigUint {
    enumeration_count(q as u64, r, k, c)
}

/// Monic polynomials of degree `1..n` in the basis, indexed by degree.
struct Lists {
    by_degree: Vec<Option<Vec<Vec<FqElem>>>>,
}

impl Lists {
    fn new(n: u32) -> Self {
        Lists { by_degree: vec![None; n as usize + 1] }
    }

    fn get(&mut self, ctx: &FieldCtx, basis: &MonomialBasis, k: u32, budget: u64) -> Result<&[Vec<FqElem>], FfError> {
        let slot = &mut self.by_degree[k as usize];
        if slot.is_none() {
            *slot = Some(dense_list(ctx, basis, k, Constraints::MONIC, budget)?);
        }
        Ok(slot.as_ref().unwrap())
    }
}

/// Keys of all products `a * b` of monic polynomials with
/// `1 <= deg a <= deg b`, `deg a + deg b = n`.
fn reducible_keys(ctx: &FieldCtx, basis: &MonomialBasis, r: usize, n: u32, budget: u64) -> Result<Keys, FfError> {
    let q = ctx.size();
    let mut required = BigUint::from(0u32);
    for k in 1..=n / 2 {
        required += count(q, r, k, Constraints::MONIC) * count(q, r, n - k, Constraints::MONIC);
    }
    check_budget(&required, budget)?;
    let mut lists = Lists::new(n);
    let mut keys = Keys::new(q, basis.len());
    let mut out = vec![FqElem::ZERO; basis.len()];
    for k in 1..=n / 2 {
        let a_list = lists.get(ctx, basis, k, budget)?.to_vec();
        let b_list = lists.get(ctx, basis, n - k, budget)?;
        for (i, a) in a_list.iter().enumerate() {
            let start = if 2 * k == n { i } else { 0 };
            for b in &b_list[start..] {
                basis.mul_dense(ctx, a, b, &mut out);
                keys.push(&out);
            }
        }
    }
    keys.finish();
    Ok(keys)
}

/// Keys of all `g^s * h` with `g` monic of degree `k >= 1`, `ks <= n`, and
/// `h` monic of degree `n - ks`.
fn powerful_keys(
    ctx: &FieldCtx,
    basis: &MonomialBasis,
    r: usize,
    n: u32,
    s: u32,
    budget: u64,
) -> Result<Keys, FfError> {
    let q = ctx.size();
    let mut required = BigUint::from(0u32);
    for k in 1..=n / s {
        required += count(q, r, k, Constraints::MONIC) * count(q, r, n - k * s, Constraints::MONIC);
    }
    check_budget(&required, budget)?;
    let mut lists = Lists::new(n);
    let mut keys = Keys::new(q, basis.len());
    let mut one = vec![FqElem::ZERO; basis.len()];
    one[0] = FqElem::ONE;
    let mut tmp = vec![FqElem::ZERO; basis.len()];
    let mut out = vec![FqElem::ZERO; basis.len()];
    for k in 1..=n / s {
        let g_list = lists.get(ctx, basis, k, budget)?.to_vec();
        let rest = n - k * s;
        let h_list: Vec<Vec<FqElem>> = if rest == 0 { vec![one.clone()] } else { lists.get(ctx, basis, rest, budget)?.to_vec() };
        for g in &g_list {
            let mut gs = g.clone();
            for _ in 1..s {
                basis.mul_dense(ctx, &gs, g, &mut tmp);
                std::mem::swap(&mut gs, &mut tmp);
            }
            for h in &h_list {
                basis.mul_dense(ctx, &gs, h, &mut out);
                keys.push(&out);
            }
        }
    }
    keys.finish();
    Ok(keys)
}

/// Keys of the polynomials of degree `n` over `F_q` that are irreducible
/// over `F_q` and split over `F_{q^t}` for some prime `t | n`: the norms
/// `g σ(g) ... σ^{t-1}(g)` of monic `g` of degree `n/t` over `F_{q^t}`
/// that are irreducible over `F_q`.
fn relirr_keys(
    ctx: &Arc<FieldCtx>,
    basis: &MonomialBasis,
    reducible: &Keys,
    r: usize,
    n: u32,
    budget: u64,
) -> Result<Keys, FfError> {
    let q = ctx.size();
    let primes: Vec<u32> = divisors(n as u64).into_iter().filter(|&t| is_prime(t)).map(|t| t as u32).collect();
    let mut required = BigUint::from(0u32);
    for &t in &primes {
        required += count(q.pow(t), r, n / t, Constraints::MONIC);
    }
    check_budget(&required, budget)?;
    let mut keys = Keys::new(q, basis.len());
    for &t in &primes {
        let emb = field_embed(ctx, t)?;
        let big = emb.target().clone();
        let conj = |v: &[FqElem]| -> Vec<FqElem> { v.iter().map(|&a| big.pow(a, q as u64)).collect() };
        let mut norm = vec![FqElem::ZERO; basis.len()];
        let mut tmp = vec![FqElem::ZERO; basis.len()];
        let mut down = vec![FqElem::ZERO; basis.len()];
        for g in dense_list(&big, basis, n / t, Constraints::MONIC, budget)? {
            norm.copy_from_slice(&g);
            let mut sigma = g.clone();
            for _ in 1..t {
                sigma = conj(&sigma);
                basis.mul_dense(&big, &norm, &sigma, &mut tmp);
                std::mem::swap(&mut norm, &mut tmp);
            }
            for (d, &c) in down.iter_mut().zip(&norm) {
                *d = emb.preimage(c).expect("a norm has coefficients in the base field");
            }
            if !reducible.contains(&down) {
                keys.push(&down);
            }
        }
    }
    keys.finish();
    Ok(keys)
}

/// Exact count of monic `r`-variate polynomials of total degree `n` over
/// `ctx` in the given class, by exhaustive enumeration.
pub fn oracle_count(
    class: Class,
    r: usize,
    n: u32,
    ctx: &Arc<FieldCtx>,
    s: Option<u32>,
    budget: u64,
) -> Result<BigInt, OracleError> {
    if r == 0 {
        return Err(OracleError::Invalid("need at least one variable".into()));
    }
    let q = ctx.size();
    let total = BigInt::from(count(q, r, n, Constraints::MONIC));
    let power = || match s {
        Some(s) if s >= 2 => Ok(s),
        _ => Err(OracleError::Invalid(format!("class {class} needs s >= 2"))),
    };
    let basis = || MonomialBasis::new(r, n);
    let reducible = |basis: &MonomialBasis| -> Result<BigInt, OracleError> {
        Ok(match n {
            0 => BigInt::from(1),
            1 => BigInt::from(0),
            _ => BigInt::from(reducible_keys(ctx, basis, r, n, budget)?.len()),
        })
    };
    Ok(match class {
        Class::Reducible => reducible(&basis())?,
        Class::Irreducible => {
            if n == 0 {
                BigInt::from(0)
            } else {
                total - reducible(&basis())?
            }
        }
        Class::Powerful => {
            let s = power()?;
            BigInt::from(powerful_keys(ctx, &basis(), r, n, s, budget)?.len())
        }
        Class::Powerfree => {
            let s = power()?;
            total - BigInt::from(powerful_keys(ctx, &basis(), r, n, s, budget)?.len())
        }
        Class::RelIrreducible | Class::AbsIrreducible => {
            let (rel, irr) = if n <= 1 {
                (BigInt::from(0), if n == 1 { total } else { BigInt::from(0) })
            } else {
                let b = basis();
                let red = reducible_keys(ctx, &b, r, n, budget)?;
                let rel = relirr_keys(ctx, &b, &red, r, n, budget)?;
                (BigInt::from(rel.len()), total - BigInt::from(red.len()))
            };
            if class == Class::RelIrreducible {
                rel
            } else {
                irr - rel
            }
        }
        Class::DecomposableMv => oracle_mv_decomp(r, n, ctx, budget)?,
    })
}

/// Number of distinct `g ∘ h` with `g` monic original univariate of degree
/// at least 2 and `h` monic original in `r` variables of degree at least 1,
/// `deg g * deg h = n`.
pub fn oracle_mv_decomp(r: usize, n: u32, ctx: &Arc<FieldCtx>, budget: u64) -> Result<BigInt, OracleError> {
    if r == 0 || n < 2 {
        return Err(OracleError::Invalid("need r >= 1 and n >= 2".into()));
    }
    let q = ctx.size();
    let splits: Vec<u32> = divisors(n as u64).into_iter().map(|e| e as u32).filter(|&e| e >= 2).collect();
    let mut required = BigUint::from(0u32);
    for &e in &splits {
        required += BigUint::from(q).pow(e - 1) * count(q, r, n / e, Constraints::MONIC_ORIGINAL);
    }
    check_budget(&required, budget)?;
    let basis = MonomialBasis::new(r, n);
    let len = basis.len();
    let mut keys = Keys::new(q, len);
    for &e in &splits {
        let hs = dense_list(ctx, &basis, n / e, Constraints::MONIC_ORIGINAL, budget)?;
        let part = hs
            .par_iter()
            .fold(
                || Keys::new(q, len),
                |mut keys, h| {
                    compositions_with(ctx, &basis, e, h, &mut keys);
                    keys
                },
            )
            .reduce(|| Keys::new(q, len), Keys::append);
        keys = keys.append(part);
    }
    keys.finish();
    Ok(BigInt::from(keys.len()))
}

/// Pushes `g(h)` for every monic original `g` of degree `e`.
fn compositions_with(ctx: &FieldCtx, basis: &MonomialBasis, e: u32, h: &[FqElem], keys: &mut Keys) {
    let len = basis.len();
    let q = ctx.size();
    let mut powers = vec![vec![FqElem::ZERO; len]; e as usize + 1];
    powers[1].copy_from_slice(h);
    for i in 2..=e as usize {
        let (lo, hi) = powers.split_at_mut(i);
        basis.mul_dense(ctx, &lo[i - 1], h, &mut hi[0]);
    }
    let mut f = vec![FqElem::ZERO; len];
    let mut g = vec![0u32; e as usize - 1];
    loop {
        f.copy_from_slice(&powers[e as usize]);
        for (i, &gi) in g.iter().enumerate() {
            if gi == 0 {
                continue;
            }
            let c = FqElem(gi);
            for (x, &y) in f.iter_mut().zip(&powers[i + 1]) {
                if !y.is_zero() {
                    *x = ctx.add(*x, ctx.mul(c, y));
                }
            }
        }
        keys.push(&f);
        if !odometer(&mut g, q) {
            break;
        }
    }
}

/// Advances a base-`q` counter; `false` after the last value.
pub(crate) fn odometer(digits: &mut [u32], q: u32) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < q {
            return true;
        }
        *d = 0;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32, d: u32) -> Arc<FieldCtx> {
        FieldCtx::new(p, d).unwrap()
    }

    #[test]
    fn small_counts() {
        let f2 = f(2, 1);
        let b = 1 << 22;
        assert_eq!(oracle_count(Class::Reducible, 2, 2, &f2, None, b).unwrap(), 21.into());
        assert_eq!(oracle_count(Class::Reducible, 2, 3, &f2, None, b).unwrap(), 266.into());
        assert_eq!(oracle_count(Class::Irreducible, 2, 2, &f2, None, b).unwrap(), 35.into());
        assert_eq!(oracle_count(Class::Powerful, 2, 2, &f2, Some(2), b).unwrap(), 6.into());
        assert_eq!(oracle_count(Class::RelIrreducible, 2, 2, &f2, None, b).unwrap(), 7.into());
        assert_eq!(oracle_count(Class::AbsIrreducible, 2, 2, &f2, None, b).unwrap(), 28.into());
        assert_eq!(oracle_count(Class::Irreducible, 1, 2, &f2, None, b).unwrap(), 1.into());
        assert_eq!(oracle_count(Class::RelIrreducible, 1, 3, &f2, None, b).unwrap(), 2.into());
        assert_eq!(oracle_count(Class::Reducible, 3, 0, &f2, None, b).unwrap(), 1.into());
    }

    #[test]
    fn budget_is_loud() {
        let f3 = f(3, 1);
        match oracle_count(Class::Reducible, 2, 4, &f3, None, 100) {
            Err(OracleError::Field(FfError::Budget { budget, .. })) => assert_eq!(budget, 100),
            other => panic!("expected a budget error, got {other:?}"),
        }
    }

    #[test]
    fn mv_decomp_small() {
        let f2 = f(2, 1);
        // univariate: g ∘ h with both degree 2, plus g of degree 4 after x
        let v = oracle_mv_decomp(1, 4, &f2, 1 << 20).unwrap();
        assert_eq!(v, 8.into());
        let v = oracle_mv_decomp(2, 3, &f2, 1 << 20).unwrap();
        assert_eq!(v, BigInt::from(4 * 3));
    }
}
