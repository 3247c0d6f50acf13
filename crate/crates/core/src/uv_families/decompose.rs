use num_bigint::BigUint;

use super::{Decomposition, FamilyError};
use crate::ff::{check_budget, enumerate_uni, Constraints, FqElem, UniPoly};
use crate::series::divisors;

/// The left component `g` with `f = g ∘ h`, if it exists, from the
/// `h`-adic expansion of `f`.
pub fn left_component(f: &UniPoly, h: &UniPoly) -> Result<Option<UniPoly>, FamilyError> {
    let d = h.degree().unwrap_or(0);
    if d == 0 {
        return Ok(None);
    }
    let n = f.degree().unwrap_or(0);
    if !n.is_multiple_of(d) {
        return Ok(None);
    }
    let mut coeffs = Vec::with_capacity(n / d + 1);
    let mut rest = f.clone();
    while !rest.is_zero() {
        let (quot, rem) = rest.divrem(h)?;
        if rem.degree().unwrap_or(0) > 0 {
            return Ok(None);
        }
        coeffs.push(rem.coeff(0));
        rest = quot;
    }
    Ok(Some(UniPoly::new(f.ctx(), coeffs)))
}

/// For `p ∤ e`, the unique monic original `h` of degree `n/e` that can be a
/// right component of `f` with a left component of degree `e`: the leading
/// coefficients of `h^e` must agree with those of `f`.
pub fn tame_right_component(f: &UniPoly, e: usize) -> Option<UniPoly> {
    let ctx = f.ctx();
    let n = f.degree()?;
    if e == 0 || n % e != 0 || (e as u32).is_multiple_of(ctx.characteristic()) {
        return None;
    }
    let d = n / e;
    let e_inv = ctx.inv(ctx.from_int(e as i64)).ok()?;
    let mut coeffs = vec![FqElem::ZERO; d + 1];
    coeffs[d] = FqElem::ONE;
    for i in 1..d {
        let cur = UniPoly::new(ctx, coeffs.clone()).pow(e as u32);
        let diff = ctx.sub(f.coeff(n - i), cur.coeff(n - i));
        coeffs[d - i] = ctx.mul(diff, e_inv);
    }
    Some(UniPoly::new(ctx, coeffs))
}

/// All decompositions of a monic original `f` into monic original
/// components of degrees at least 2, ordered by the degree of `g`. Wild
/// left degrees are searched exhaustively over right components, subject
/// to `budget`.
pub fn find_decompositions(f: &UniPoly, budget: u64) -> Result<Vec<Decomposition>, FamilyError> {
    if !(f.is_monic() && f.is_original()) {
        return Err(FamilyError::NotMonicOriginal);
    }
    let ctx = f.ctx();
    let n = f.degree().unwrap();
    let p = ctx.characteristic() as usize;
    let mut out = Vec::new();
    for e in divisors(n as u64).into_iter().map(|e| e as usize) {
        if e < 2 || e == n {
            continue;
        }
        let d = n / e;
        if e % p != 0 {
            if let Some(h) = tame_right_component(f, e) {
                if let Some(g) = left_component(f, &h)? {
                    out.push(Decomposition::new(g, h));
                }
            }
            continue;
        }
        check_budget(&BigUint::from(ctx.size()).pow(d as u32 - 1), budget)?;
        for h in enumerate_uni(ctx, d as u32, Constraints::MONIC_ORIGINAL, budget)? {
            if let Some(g) = left_component(f, &h)? {
                out.push(Decomposition::new(g, h));
            }
        }
    }
    Ok(out)
}
