//! Dense integer polynomials in `q`, stored as coefficient vectors indexed by
//! exponent. These are the workhorse behind [`QPoly`](super::QPoly) and
//! [`SymRat`](super::SymRat); nothing here is public outside the module.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub(crate) fn trim(a: &mut Vec<BigInt>) {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
}

pub(crate) fn degree(a: &[BigInt]) -> Option<usize> {
    if a.is_empty() {
        None
    } else {
        Some(a.len() - 1)
    }
}

pub(crate) fn add(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, s) in out.iter_mut().zip(short) {
        *o += s;
    }
    trim(&mut out);
    out
}

pub(crate) fn neg(a: &[BigInt]) -> Vec<BigInt> {
    a.iter().map(|c| -c).collect()
}

pub(crate) fn mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    trim(&mut out);
    out
}

pub(crate) fn scale(a: &[BigInt], c: &BigInt) -> Vec<BigInt> {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|x| x * c).collect()
}

pub(crate) fn div_scalar_exact(a: &[BigInt], c: &BigInt) -> Vec<BigInt> {
    a.iter()
        .map(|x| {
            debug_assert!((x % c).is_zero());
            x / c
        })
        .collect()
}

/// Nonnegative gcd of all coefficients; zero for the zero polynomial.
pub(crate) fn content(a: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in a {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Primitive part with positive leading coefficient.
pub(crate) fn primitive(a: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() {
        return Vec::new();
    }
    let mut c = content(a);
    if a.last().unwrap().is_negative() {
        c = -c;
    }
    div_scalar_exact(a, &c)
}

/// Multiplicity of `q` as a factor (index of the lowest nonzero coefficient).
pub(crate) fn q_valuation(a: &[BigInt]) -> usize {
    a.iter().position(|c| !c.is_zero()).unwrap_or(0)
}

pub(crate) fn shift_down(a: &[BigInt], k: usize) -> Vec<BigInt> {
    a[k.min(a.len())..].to_vec()
}

pub(crate) fn shift_up(a: &[BigInt], k: usize) -> Vec<BigInt> {
    if a.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); k];
    out.extend_from_slice(a);
    out
}

/// Pseudo-remainder of `a` by nonzero `b`: `lc(b)^(deg a - deg b + 1) a mod b`.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        if lb.is_one() {
            for (i, bi) in b.iter().enumerate() {
                r[i + shift] -= &lr * bi;
            }
        } else {
            for c in r.iter_mut() {
                *c *= lb;
            }
            for (i, bi) in b.iter().enumerate() {
                r[i + shift] -= &lr * bi;
            }
        }
        trim(&mut r);
        let g = content(&r);
        if !g.is_zero() && !g.is_one() {
            r = div_scalar_exact(&r, &g);
        }
    }
    r
}

/// Primitive gcd (positive leading coefficient) of two integer polynomials
/// over `Q[q]`, via the primitive remainder sequence. The gcd of two zero
/// polynomials is zero.
pub(crate) fn gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() {
        return primitive(b);
    }
    if b.is_empty() {
        return primitive(a);
    }
    let va = q_valuation(a);
    let vb = q_valuation(b);
    let v = va.min(vb);
    let mut x = primitive(&shift_down(a, va));
    let mut y = primitive(&shift_down(b, vb));
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        if y.len() == 1 {
            x = vec![BigInt::one()];
            break;
        }
        let r = pseudo_rem(&x, &y);
        x = y;
        y = primitive(&r);
    }
    shift_up(&primitive(&x), v)
}

/// Exact quotient `a / b` over `Z[q]` where `b` divides `a` and `b` is
/// primitive, so the quotient has integer coefficients.
pub(crate) fn div_exact(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    assert!(!b.is_empty(), "division by the zero polynomial");
    if a.is_empty() {
        return Vec::new();
    }
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    let mut quot = vec![BigInt::zero(); a.len().saturating_sub(db)];
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let (c, rem) = r[dr].div_rem(lb);
        debug_assert!(rem.is_zero(), "inexact polynomial division");
        let shift = dr - db;
        for (i, bi) in b.iter().enumerate() {
            r[i + shift] -= &c * bi;
        }
        quot[shift] = c;
        trim(&mut r);
    }
    debug_assert!(r.is_empty(), "inexact polynomial division");
    trim(&mut quot);
    quot
}

pub(crate) fn eval(a: &[BigInt], x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in a.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// `a(q^s)`.
pub(crate) fn subs_pow(a: &[BigInt], s: usize) -> Vec<BigInt> {
    assert!(s >= 1);
    if a.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); (a.len() - 1) * s + 1];
    for (i, c) in a.iter().enumerate() {
        out[i * s] = c.clone();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn gcd_of_products() {
        // (q-1)(q+2) and (q-1)^2 q
        let a = mul(&z(&[-1, 1]), &z(&[2, 1]));
        let b = mul(&mul(&z(&[-1, 1]), &z(&[-1, 1])), &z(&[0, 1]));
        assert_eq!(gcd(&a, &b), z(&[-1, 1]));
        assert_eq!(gcd(&z(&[0, 0, 6]), &z(&[0, 4])), z(&[0, 1]));
        assert_eq!(gcd(&z(&[3]), &z(&[0, 1])), z(&[1]));
    }

    #[test]
    fn exact_division() {
        let a = mul(&z(&[1, 2, 3]), &z(&[-5, 0, 2]));
        assert_eq!(div_exact(&a, &z(&[-5, 0, 2])), z(&[1, 2, 3]));
    }
}
