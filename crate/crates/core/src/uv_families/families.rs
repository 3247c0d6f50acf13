use std::sync::Arc;

use num_integer::Integer;

use super::{CollisionFamily, Decomposition, FamilyError, FamilyLabel, FamilyParams};
use crate::ff::{FieldCtx, FqElem, UniPoly};

fn x_pow(ctx: &Arc<FieldCtx>, k: usize) -> UniPoly {
    UniPoly::monomial(ctx, FqElem::ONE, k)
}

/// `x - c`.
fn x_minus(ctx: &Arc<FieldCtx>, c: FqElem) -> UniPoly {
    UniPoly::new(ctx, vec![ctx.neg(c), FqElem::ONE])
}

fn is_power_of(r: u32, p: u32) -> bool {
    let mut x = r;
    while x > 1 && x.is_multiple_of(p) {
        x /= p;
    }
    x == 1 && r >= p
}

/// Dickson polynomial of the first kind: `T_0 = 2`, `T_1 = x`,
/// `T_j = x T_{j-1} - z T_{j-2}`.
pub fn dickson(ctx: &Arc<FieldCtx>, m: u32, z: FqElem) -> UniPoly {
    let x = UniPoly::x(ctx);
    let mut prev = UniPoly::constant(ctx, ctx.from_int(2));
    if m == 0 {
        return prev;
    }
    let mut cur = x.clone();
    for _ in 1..m {
        let next = &(&x * &cur) - &prev.scale(z);
        prev = cur;
        cur = next;
    }
    cur
}

/// Ritt's first case: `f = (x^{kl} w^l(x^l))^{[a]}` with decompositions
/// `(x^k w^l, x^l)^{[a]}` and `(x^l, x^k w(x^l))^{[a]}`.
pub fn ritt_family_first(ell: u32, k: u32, w: &UniPoly, a: FqElem) -> Result<CollisionFamily, FamilyError> {
    let ctx = w.ctx();
    let p = ctx.characteristic();
    if !w.is_monic() {
        return Err(FamilyError::Invalid("w must be monic".into()));
    }
    if !(1 <= k && k < ell) {
        return Err(FamilyError::Invalid(format!("need 1 <= k < l, got k={k}, l={ell}")));
    }
    let s = w.degree().unwrap() as u32;
    let m = s * ell + k;
    if ell.gcd(&m) != 1 {
        return Err(FamilyError::Invalid(format!("gcd(l, m) = gcd({ell}, {m}) must be 1")));
    }
    if m < 2 {
        return Err(FamilyError::Invalid("both components need degree at least 2".into()));
    }
    if ell.is_multiple_of(p) {
        return Err(FamilyError::Wild { p, what: format!("l = {ell}") });
    }
    let x = UniPoly::x(ctx);
    let cond = &w.scale(ctx.from_int(k as i64)) + &(&x * &w.derivative()).scale(ctx.from_int(ell as i64));
    if cond.is_zero() {
        return Err(FamilyError::Degenerate);
    }
    let xl = x_pow(ctx, ell as usize);
    let w_xl = w.compose(&xl)?;
    let base = &x_pow(ctx, (k * ell) as usize) * &w_xl.pow(ell);
    let first = Decomposition::new(&x_pow(ctx, k as usize) * &w.pow(ell), xl.clone());
    let second = Decomposition::new(xl, &x_pow(ctx, k as usize) * &w_xl);
    Ok(CollisionFamily {
        f: base.original_shift(a),
        decompositions: vec![first.shift(a), second.shift(a)],
        label: FamilyLabel::Ritt1,
        params: FamilyParams::Ritt1 { ell, k, w: w.clone(), a },
    })
}

/// Ritt's second case: `f = T_n(x, z)^{[a]}` with `n = lm` and
/// decompositions `(T_m(x, z^l), T_l(x, z))^{[a]}`, `(T_l(x, z^m), T_m(x, z))^{[a]}`.
pub fn ritt_family_second(
    ctx: &Arc<FieldCtx>,
    ell: u32,
    m: u32,
    z: FqElem,
    a: FqElem,
) -> Result<CollisionFamily, FamilyError> {
    let p = ctx.characteristic();
    if !(m > ell && ell >= 2) {
        return Err(FamilyError::Invalid(format!("need m > l >= 2, got l={ell}, m={m}")));
    }
    if ell.gcd(&m) != 1 {
        return Err(FamilyError::Invalid(format!("gcd({ell}, {m}) must be 1")));
    }
    if z.is_zero() {
        return Err(FamilyError::Invalid("z must be nonzero".into()));
    }
    let n = ell * m;
    if n.is_multiple_of(p) {
        return Err(FamilyError::Wild { p, what: format!("n = {n}") });
    }
    let first = Decomposition::new(
        dickson(ctx, m, ctx.pow(z, ell as u64)),
        dickson(ctx, ell, z),
    );
    let second = Decomposition::new(
        dickson(ctx, ell, ctx.pow(z, m as u64)),
        dickson(ctx, m, z),
    );
    Ok(CollisionFamily {
        f: dickson(ctx, n, z).original_shift(a),
        decompositions: vec![first.shift(a), second.shift(a)],
        label: FamilyLabel::Ritt2,
        params: FamilyParams::Ritt2 { ell, m, z, a },
    })
}

/// The Frobenius collision `x^p ∘ h = φ(h) ∘ x^p`.
pub fn frobenius_family(h: &UniPoly) -> Result<CollisionFamily, FamilyError> {
    let ctx = h.ctx();
    let p = ctx.characteristic() as usize;
    if !(h.is_monic() && h.is_original()) {
        return Err(FamilyError::NotMonicOriginal);
    }
    let d = h.degree().unwrap();
    if d < 2 {
        return Err(FamilyError::Invalid("h needs degree at least 2".into()));
    }
    let xp = x_pow(ctx, p);
    if *h == xp {
        return Err(FamilyError::NotCollision(format!("x^{p} ∘ x^{p} has a single decomposition")));
    }
    let first = Decomposition::new(xp.clone(), h.clone());
    Ok(CollisionFamily {
        f: first.compose(),
        decompositions: vec![first, Decomposition::new(h.frobenius_coeffs(), xp)],
        label: FamilyLabel::Frobenius,
        params: FamilyParams::Frobenius { h: h.clone() },
    })
}

/// Roots in the field of `t^{r+1} - eps*u*t + u`.
pub fn t_set(ctx: &Arc<FieldCtx>, u: FqElem, eps: bool, r: u32) -> Vec<FqElem> {
    let eu = if eps { u } else { FqElem::ZERO };
    ctx.elements()
        .filter(|&t| {
            let v = ctx.sub(ctx.pow(t, r as u64 + 1), ctx.mul(eu, t));
            ctx.add(v, u).is_zero()
        })
        .collect()
}

/// The simply original family
/// `S(u, s, eps, m) = x (x^{l(r+1)} - eps u s^r x^l + u s^{r+1})^m`
/// with one decomposition per root `t` of `t^{r+1} - eps u t + u`.
pub fn s_family(
    ctx: &Arc<FieldCtx>,
    u: FqElem,
    s: FqElem,
    eps: bool,
    m: u32,
    r: u32,
) -> Result<CollisionFamily, FamilyError> {
    let p = ctx.characteristic();
    if !is_power_of(r, p) {
        return Err(FamilyError::Invalid(format!("r = {r} is not a power of {p}")));
    }
    if m == 0 || !(r - 1).is_multiple_of(m) {
        return Err(FamilyError::Invalid(format!("m = {m} must divide r - 1 = {}", r - 1)));
    }
    if u.is_zero() || s.is_zero() {
        return Err(FamilyError::Invalid("u and s must be nonzero".into()));
    }
    let ell = ((r - 1) / m) as usize;
    let r1 = r as usize + 1;
    let sr = ctx.pow(s, r as u64);
    let usr = ctx.mul(u, sr);
    let mut inner = vec![FqElem::ZERO; ell * r1 + 1];
    inner[ell * r1] = FqElem::ONE;
    if eps {
        inner[ell] = ctx.add(inner[ell], ctx.neg(usr));
    }
    inner[0] = ctx.add(inner[0], ctx.mul(usr, s));
    let x = UniPoly::x(ctx);
    let f = &x * &UniPoly::new(ctx, inner).pow(m);
    let t = t_set(ctx, u, eps, r);
    let mut decompositions = Vec::with_capacity(t.len());
    for &ti in &t {
        let c = ctx.div(usr, ti)?;
        let g = &x * &x_minus(ctx, c).compose(&x_pow(ctx, ell))?.pow(m);
        let h = &x * &x_minus(ctx, ctx.mul(s, ti)).compose(&x_pow(ctx, ell))?.pow(m);
        decompositions.push(Decomposition::new(g, h));
    }
    Ok(CollisionFamily {
        f,
        decompositions,
        label: FamilyLabel::S,
        params: FamilyParams::S { u, s, eps, m, r, t },
    })
}

/// The multiply original family `M(a, b, m)` with its two decompositions.
pub fn m_family(
    ctx: &Arc<FieldCtx>,
    a: FqElem,
    b: FqElem,
    m: u32,
    r: u32,
) -> Result<CollisionFamily, FamilyError> {
    let p = ctx.characteristic();
    if !is_power_of(r, p) {
        return Err(FamilyError::Invalid(format!("r = {r} is not a power of {p}")));
    }
    if !(1 < m && m + 1 < r) || m.is_multiple_of(p) {
        return Err(FamilyError::Invalid(format!(
            "need 1 < m < r - 1 and p not dividing m, got m={m}, r={r}"
        )));
    }
    if b.is_zero() {
        return Err(FamilyError::Invalid("b must be nonzero".into()));
    }
    let br = ctx.pow(b, r as u64);
    if a.is_zero() || a == br {
        return Err(FamilyError::Invalid("a must avoid 0 and b^r".into()));
    }
    let a_star = ctx.sub(br, a);
    let m_star = r - m;
    let b_inv_r = ctx.inv(br)?;
    let (ca, ca_star) = (ctx.mul(a, b_inv_r), ctx.mul(a_star, b_inv_r));
    let (mu, msu, ru) = (m as usize, m_star as usize, r as usize);
    let xb = x_minus(ctx, b);
    let xr = x_pow(ctx, ru);

    let factor = |e: usize, c: FqElem| &x_pow(ctx, e) + &(&xb.pow(e as u32) - &x_pow(ctx, e)).scale(c);
    let f = &(&(&x_pow(ctx, mu * msu) * &xb.pow(m * m_star)) * &factor(mu, ca_star).pow(m))
        * &factor(msu, ca).pow(m_star);
    let g = &x_pow(ctx, mu) * &x_minus(ctx, a).pow(m_star);
    let h = &xr + &(&(&x_pow(ctx, msu) * &xb.pow(m)) - &xr).scale(ca_star);
    let g_star = &x_pow(ctx, msu) * &x_minus(ctx, a_star).pow(m);
    let h_star = &xr + &(&(&x_pow(ctx, mu) * &xb.pow(m_star)) - &xr).scale(ca);
    Ok(CollisionFamily {
        f,
        decompositions: vec![Decomposition::new(g, h), Decomposition::new(g_star, h_star)],
        label: FamilyLabel::M,
        params: FamilyParams::M { a, b, m, r, a_star, m_star },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(ctx: &Arc<FieldCtx>, s: &str) -> UniPoly {
        UniPoly::parse(ctx, s).unwrap()
    }

    #[test]
    fn dickson_examples() {
        let f7 = FieldCtx::new(7, 1).unwrap();
        let z = FqElem::ONE;
        assert_eq!(dickson(&f7, 1, z), UniPoly::x(&f7));
        assert_eq!(dickson(&f7, 2, z), poly(&f7, "x^2-2"));
        let t3 = dickson(&f7, 3, z);
        let t2 = dickson(&f7, 2, z);
        let want = poly(&f7, "x^6-6*x^4+9*x^2-2");
        assert_eq!(t3.compose(&t2).unwrap(), want);
        assert_eq!(t2.compose(&t3).unwrap(), want);
        assert_eq!(dickson(&f7, 6, z), want);
    }

    #[test]
    fn first_case_example() {
        let f5 = FieldCtx::new(5, 1).unwrap();
        let fam = ritt_family_first(2, 1, &poly(&f5, "x+1"), FqElem::ZERO).unwrap();
        assert_eq!(fam.f, poly(&f5, "x^2").try_mul(&poly(&f5, "x^2+1").pow(2)).unwrap());
        assert_eq!(fam.decompositions[0], Decomposition::new(poly(&f5, "x^3+2*x^2+x"), poly(&f5, "x^2")));
        assert_eq!(fam.decompositions[1], Decomposition::new(poly(&f5, "x^2"), poly(&f5, "x^3+x")));
        fam.verify().unwrap();
        let shifted = ritt_family_first(2, 1, &poly(&f5, "x+1"), f5.from_int(3)).unwrap();
        shifted.verify().unwrap();
    }

    #[test]
    fn first_case_errors() {
        let f2 = FieldCtx::new(2, 1).unwrap();
        assert!(matches!(
            ritt_family_first(2, 1, &poly(&f2, "x+1"), FqElem::ZERO),
            Err(FamilyError::Wild { .. })
        ));
        let f3 = FieldCtx::new(3, 1).unwrap();
        // k w + l x w' = x + 2x = 0 over F_3 for w = x
        assert_eq!(
            ritt_family_first(2, 1, &poly(&f3, "x"), FqElem::ZERO),
            Err(FamilyError::Degenerate)
        );
    }

    #[test]
    fn second_case_example() {
        let f7 = FieldCtx::new(7, 1).unwrap();
        let fam = ritt_family_second(&f7, 2, 3, FqElem::ONE, FqElem::ZERO).unwrap();
        assert_eq!(fam.f, poly(&f7, "x^6-6*x^4+9*x^2"));
        fam.verify().unwrap();
        let f3 = FieldCtx::new(3, 1).unwrap();
        assert!(ritt_family_second(&f3, 2, 3, FqElem::ONE, FqElem::ZERO).is_err());
    }

    #[test]
    fn frobenius_examples() {
        let f2 = FieldCtx::new(2, 1).unwrap();
        let fam = frobenius_family(&poly(&f2, "x^2+x")).unwrap();
        assert_eq!(fam.f, poly(&f2, "x^4+x^2"));
        assert_eq!(fam.decompositions[1], Decomposition::new(poly(&f2, "x^2+x"), poly(&f2, "x^2")));
        fam.verify().unwrap();
        assert!(frobenius_family(&poly(&f2, "x^2")).is_err());
    }

    #[test]
    fn s_family_examples() {
        let f4 = FieldCtx::new(2, 2).unwrap();
        let fam = s_family(&f4, FqElem::ONE, FqElem::ONE, false, 1, 2).unwrap();
        assert_eq!(fam.f, poly(&f4, "x^4+x"));
        assert_eq!(fam.decompositions.len(), 3);
        fam.verify().unwrap();
        let f2 = FieldCtx::new(2, 1).unwrap();
        let fam = s_family(&f2, FqElem::ONE, FqElem::ONE, false, 1, 2).unwrap();
        assert_eq!(fam.decompositions, vec![Decomposition::new(poly(&f2, "x^2+x"), poly(&f2, "x^2+x"))]);
    }

    #[test]
    fn m_family_example() {
        let f5 = FieldCtx::new(5, 1).unwrap();
        let two = f5.from_int(2);
        let fam = m_family(&f5, two, FqElem::ONE, 2, 5).unwrap();
        assert_eq!(fam.decompositions[0].g, poly(&f5, "x^2").try_mul(&poly(&f5, "x-2").pow(3)).unwrap());
        fam.verify().unwrap();
        match &fam.params {
            FamilyParams::M { a_star, m_star, .. } => {
                assert_eq!(*a_star, f5.from_int(4));
                assert_eq!(*m_star, 3);
            }
            _ => unreachable!(),
        }
        let dual = m_family(&f5, f5.from_int(4), FqElem::ONE, 3, 5).unwrap();
        assert_eq!(dual.f, fam.f);
        assert_eq!(dual.decompositions[0], fam.decompositions[1]);
        let f4 = FieldCtx::new(2, 2).unwrap();
        assert!(m_family(&f4, FqElem::ONE, f4.generator().unwrap(), 2, 4).is_err());
    }
}
