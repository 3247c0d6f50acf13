use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::field::{FieldCtx, FqElem};
use super::text;
use super::FfError;

/// A univariate polynomial over a [`FieldCtx`], coefficients indexed by
/// exponent with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    ctx: Arc<FieldCtx>,
    coeffs: Vec<FqElem>,
}

impl UniPoly {
    pub fn new(ctx: &Arc<FieldCtx>, mut coeffs: Vec<FqElem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly {
            ctx: ctx.clone(),
            coeffs,
        }
    }

    pub fn zero(ctx: &Arc<FieldCtx>) -> Self {
        Self::new(ctx, Vec::new())
    }

    pub fn constant(ctx: &Arc<FieldCtx>, c: FqElem) -> Self {
        Self::new(ctx, vec![c])
    }

    pub fn one(ctx: &Arc<FieldCtx>) -> Self {
        Self::constant(ctx, FqElem::ONE)
    }

    /// `c * x^k`.
    pub fn monomial(ctx: &Arc<FieldCtx>, c: FqElem, k: usize) -> Self {
        let mut v = vec![FqElem::ZERO; k + 1];
        v[k] = c;
        Self::new(ctx, v)
    }

    pub fn x(ctx: &Arc<FieldCtx>) -> Self {
        Self::monomial(ctx, FqElem::ONE, 1)
    }

    /// Builds from small integer coefficients (low first), reduced into the
    /// prime subfield.
    pub fn from_ints(ctx: &Arc<FieldCtx>, coeffs: &[i64]) -> Self {
        Self::new(ctx, coeffs.iter().map(|&c| ctx.from_int(c)).collect())
    }

    pub fn parse(ctx: &Arc<FieldCtx>, s: &str) -> Result<Self, FfError> {
        let terms = text::parse_terms(ctx, s, &["x".to_string()])?;
        let mut coeffs = Vec::new();
        for (c, e) in terms {
            let k = e[0] as usize;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, FqElem::ZERO);
            }
            coeffs[k] = ctx.add(coeffs[k], c);
        }
        Ok(Self::new(ctx, coeffs))
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[FqElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FqElem {
        self.coeffs.get(i).copied().unwrap_or(FqElem::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> FqElem {
        self.coeffs.last().copied().unwrap_or(FqElem::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff() == FqElem::ONE
    }

    /// `f(0) = 0`.
    pub fn is_original(&self) -> bool {
        self.coeff(0).is_zero()
    }

    fn same_field(&self, other: &Self) -> Result<(), FfError> {
        if Arc::ptr_eq(&self.ctx, &other.ctx) || *self.ctx == *other.ctx {
            Ok(())
        } else {
            Err(FfError::FieldMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, FfError> {
        self.same_field(other)?;
        let f = &self.ctx;
        let n = self.coeffs.len().max(other.coeffs.len());
        Ok(Self::new(f, (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect()))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, FfError> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, FfError> {
        self.same_field(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.ctx));
        }
        Ok(Self::new(&self.ctx, mul_slices(&self.ctx, &self.coeffs, &other.coeffs)))
    }

    pub fn scale(&self, c: FqElem) -> Self {
        Self::new(&self.ctx, self.coeffs.iter().map(|&a| self.ctx.mul(a, c)).collect())
    }

    /// Scales to leading coefficient 1; zero stays zero.
    pub fn to_monic(&self) -> Self {
        match self.ctx.inv(self.leading_coeff()) {
            Ok(i) => self.scale(i),
            Err(_) => self.clone(),
        }
    }

    pub fn divrem(&self, divisor: &Self) -> Result<(Self, Self), FfError> {
        self.same_field(divisor)?;
        let f = &self.ctx;
        let db = divisor.degree().ok_or(FfError::ZeroDivisor)?;
        let lead_inv = f.inv(divisor.leading_coeff())?;
        let mut r = self.coeffs.clone();
        if r.len() <= db {
            return Ok((Self::zero(f), self.clone()));
        }
        let mut quot = vec![FqElem::ZERO; r.len() - db];
        for k in (db..r.len()).rev() {
            let c = f.mul(r[k], lead_inv);
            if c.is_zero() {
                continue;
            }
            quot[k - db] = c;
            for (i, &b) in divisor.coeffs.iter().enumerate() {
                r[k - db + i] = f.sub(r[k - db + i], f.mul(c, b));
            }
        }
        r.truncate(db);
        Ok((Self::new(f, quot), Self::new(f, r)))
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Result<Self, FfError> {
        self.same_field(other)?;
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.to_monic())
    }

    pub fn derivative(&self) -> Self {
        let f = &self.ctx;
        Self::new(
            f,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| f.mul(f.from_int(i as i64), c))
                .collect(),
        )
    }

    pub fn eval(&self, a: FqElem) -> FqElem {
        let f = &self.ctx;
        self.coeffs.iter().rev().fold(FqElem::ZERO, |acc, &c| f.add(f.mul(acc, a), c))
    }

    /// `self(inner)`, by Horner's rule.
    pub fn compose(&self, inner: &Self) -> Result<Self, FfError> {
        self.same_field(inner)?;
        let mut acc = Self::zero(&self.ctx);
        for &c in self.coeffs.iter().rev() {
            acc = acc.try_mul(inner)?.try_add(&Self::constant(&self.ctx, c))?;
        }
        Ok(acc)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.ctx);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// The original shift `f(x + a) - f(a)`.
    pub fn original_shift(&self, a: FqElem) -> Self {
        let lin = Self::new(&self.ctx, vec![a, FqElem::ONE]);
        let shifted = self.compose(&lin).expect("same field");
        &shifted - &Self::constant(&self.ctx, self.eval(a))
    }

    /// Applies `c -> c^p` to every coefficient.
    pub fn frobenius_coeffs(&self) -> Self {
        Self::new(&self.ctx, self.coeffs.iter().map(|&c| self.ctx.frobenius(c)).collect())
    }

    /// Whether every exponent with a nonzero coefficient is a multiple of `k`.
    pub fn in_powers_of(&self, k: usize) -> bool {
        self.coeffs.iter().enumerate().all(|(i, c)| c.is_zero() || i % k == 0)
    }

    /// Coefficients of `x^0 .. x^{deg-1}` read as a base-`q` integer with the
    /// constant term least significant; a canonical key for monic polynomials.
    pub fn key(&self) -> u128 {
        let q = self.ctx.size() as u128;
        let n = self.coeffs.len().saturating_sub(1);
        self.coeffs[..n].iter().rev().fold(0u128, |acc, c| acc * q + c.index() as u128)
    }
}

pub(crate) fn mul_slices(f: &FieldCtx, a: &[FqElem], b: &[FqElem]) -> Vec<FqElem> {
    let mut out = vec![FqElem::ZERO; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    out
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        self.try_add(rhs).expect("field mismatch")
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        self.try_sub(rhs).expect("field mismatch")
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        self.try_mul(rhs).expect("field mismatch")
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(&self.ctx, self.coeffs.iter().map(|&c| self.ctx.neg(c)).collect())
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if !c.is_zero() {
                terms.push(text::format_term(&self.ctx, c, &text::format_power("x", i as u32)));
            }
        }
        write!(f, "{}", terms.join("+"))
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {:?}", self, self.ctx)
    }
}
