use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::field::{FieldCtx, FqElem};
use super::text;
use super::FfError;

/// An exponent vector, ordered degree-lexicographically with
/// `x1 > x2 > ... > xr`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(r: usize) -> Self {
        Monomial(vec![0; r])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    fn quotient_into(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in `x1..xr` over a [`FieldCtx`], stored as a sparse map
/// without zero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct MvPoly {
    ctx: Arc<FieldCtx>,
    nvars: usize,
    terms: BTreeMap<Monomial, FqElem>,
}

fn var_names(r: usize) -> Vec<String> {
    (1..=r).map(|i| format!("x{i}")).collect()
}

impl MvPoly {
    pub fn zero(ctx: &Arc<FieldCtx>, nvars: usize) -> Self {
        MvPoly {
            ctx: ctx.clone(),
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(
        ctx: &Arc<FieldCtx>,
        nvars: usize,
        terms: impl IntoIterator<Item = (Monomial, FqElem)>,
    ) -> Result<Self, FfError> {
        let mut p = Self::zero(ctx, nvars);
        for (m, c) in terms {
            if m.0.len() != nvars {
                return Err(FfError::ArityMismatch {
                    left: nvars,
                    right: m.0.len(),
                });
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    pub fn constant(ctx: &Arc<FieldCtx>, nvars: usize, c: FqElem) -> Self {
        Self::from_terms(ctx, nvars, [(Monomial::one(nvars), c)]).expect("arity matches")
    }

    /// The variable `x_{i+1}`.
    pub fn var(ctx: &Arc<FieldCtx>, nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::from_terms(ctx, nvars, [(Monomial(e), FqElem::ONE)]).expect("arity matches")
    }

    pub fn parse(ctx: &Arc<FieldCtx>, nvars: usize, s: &str) -> Result<Self, FfError> {
        let terms = text::parse_terms(ctx, s, &var_names(nvars))?;
        Self::from_terms(ctx, nvars, terms.into_iter().map(|(c, e)| (Monomial(e), c)))
    }

    fn add_term(&mut self, m: Monomial, c: FqElem) {
        if c.is_zero() {
            return;
        }
        let f = self.ctx.clone();
        match self.terms.get_mut(&m) {
            Some(old) => {
                *old = f.add(*old, c);
                if old.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, FqElem)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn coeff(&self, m: &Monomial) -> FqElem {
        self.terms.get(m).copied().unwrap_or(FqElem::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.keys().next_back()
    }

    pub fn leading_coeff(&self) -> FqElem {
        self.terms.values().next_back().copied().unwrap_or(FqElem::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff() == FqElem::ONE
    }

    /// Zero constant term.
    pub fn is_original(&self) -> bool {
        self.coeff(&Monomial::one(self.nvars)).is_zero()
    }

    fn compatible(&self, other: &Self) -> Result<(), FfError> {
        if !(Arc::ptr_eq(&self.ctx, &other.ctx) || *self.ctx == *other.ctx) {
            return Err(FfError::FieldMismatch);
        }
        if self.nvars != other.nvars {
            return Err(FfError::ArityMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, FfError> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, FfError> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(self.ctx.neg(FqElem::ONE))
    }

    pub fn scale(&self, c: FqElem) -> Self {
        let mut out = Self::zero(&self.ctx, self.nvars);
        for (m, &a) in &self.terms {
            out.add_term(m.clone(), self.ctx.mul(a, c));
        }
        out
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, FfError> {
        self.compatible(other)?;
        let mut out = Self::zero(&self.ctx, self.nvars);
        for (m1, &a) in &self.terms {
            for (m2, &b) in &other.terms {
                out.add_term(m1.mul(m2), self.ctx.mul(a, b));
            }
        }
        Ok(out)
    }

    /// Division by a single divisor in deg-lex order: returns the quotient
    /// and remainder with no remainder term divisible by the divisor's
    /// leading monomial.
    pub fn divrem(&self, divisor: &Self) -> Result<(Self, Self), FfError> {
        self.compatible(divisor)?;
        let lm = divisor.leading_monomial().ok_or(FfError::ZeroDivisor)?.clone();
        let lc_inv = self.ctx.inv(divisor.leading_coeff())?;
        let mut quot = Self::zero(&self.ctx, self.nvars);
        let mut rem = Self::zero(&self.ctx, self.nvars);
        let mut work = self.clone();
        while let Some((m, c)) = work.terms.iter().next_back().map(|(m, &c)| (m.clone(), c)) {
            if lm.divides(&m) {
                let t = lm.quotient_into(&m);
                let k = self.ctx.mul(c, lc_inv);
                quot.add_term(t.clone(), k);
                let mono = Self::from_terms(&self.ctx, self.nvars, [(t, k)])?;
                work = work.try_sub(&mono.try_mul(divisor)?)?;
            } else {
                work.terms.remove(&m);
                rem.add_term(m, c);
            }
        }
        Ok((quot, rem))
    }

    /// Whether `self` divides `other` exactly.
    pub fn divides(&self, other: &Self) -> Result<bool, FfError> {
        Ok(other.divrem(self)?.1.is_zero())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(&self.ctx, self.nvars, FqElem::ONE);
        for _ in 0..e {
            acc = acc.try_mul(self).expect("compatible");
        }
        acc
    }
}

impl fmt::Display for MvPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let names = var_names(self.nvars);
        let mut terms = Vec::new();
        for (m, &c) in self.terms.iter().rev() {
            let mono: Vec<String> = m
                .0
                .iter()
                .zip(&names)
                .filter(|(e, _)| **e > 0)
                .map(|(&e, n)| text::format_power(n, e))
                .collect();
            terms.push(text::format_term(&self.ctx, c, &mono.join("*")));
        }
        write!(f, "{}", terms.join("+"))
    }
}

impl fmt::Debug for MvPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {:?}", self, self.ctx)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deg_lex_leading_monomial() {
        let f = FieldCtx::new(3, 1).unwrap();
        let p = MvPoly::parse(&f, 2, "x2+x1*x2+x1^2").unwrap();
        assert_eq!(p.leading_monomial(), Some(&Monomial::new(vec![2, 0])));
        assert_eq!(p.to_string(), "x1^2+x1*x2+x2");
        assert!(p.is_monic());
        let q = MvPoly::parse(&f, 2, "2*x1^2+x2").unwrap();
        assert!(!q.is_monic());
    }

    #[test]
    fn frobenius_square() {
        let f = FieldCtx::new(2, 1).unwrap();
        let s = MvPoly::parse(&f, 2, "x1+x2").unwrap();
        assert_eq!(s.try_mul(&s).unwrap().to_string(), "x1^2+x2^2");
    }

    #[test]
    fn division_test() {
        let f = FieldCtx::new(5, 1).unwrap();
        let a = MvPoly::parse(&f, 2, "x1+2*x2+1").unwrap();
        let b = MvPoly::parse(&f, 2, "x1*x2+x2^2+3").unwrap();
        let prod = a.try_mul(&b).unwrap();
        assert!(a.divides(&prod).unwrap());
        assert!(b.divides(&prod).unwrap());
        let c = prod.try_add(&MvPoly::var(&f, 2, 1)).unwrap();
        assert!(!a.divides(&c).unwrap());
        let (q, r) = c.divrem(&a).unwrap();
        assert_eq!(q.try_mul(&a).unwrap().try_add(&r).unwrap(), c);
    }

    #[test]
    fn arity_checked() {
        let f = FieldCtx::new(2, 1).unwrap();
        let a = MvPoly::var(&f, 2, 0);
        let b = MvPoly::var(&f, 3, 0);
        assert_eq!(a.try_add(&b).unwrap_err(), FfError::ArityMismatch { left: 2, right: 3 });
    }
}
