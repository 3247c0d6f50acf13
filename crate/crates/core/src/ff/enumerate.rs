//! Exhaustive enumeration of polynomials of a fixed total degree, over a
//! dense monomial basis.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigUint;

use super::field::{FieldCtx, FqElem};
use super::mvpoly::{Monomial, MvPoly};
use super::unipoly::UniPoly;
use super::FfError;
use crate::exact_arith::binomial;

pub const DEFAULT_BUDGET: u64 = 1 << 26;
pub const BUDGET_ENV: &str = "FFCOUNT_BUDGET";

/// The enumeration budget: `FFCOUNT_BUDGET` if set to an integer, else
/// `2^26`.
pub fn enumeration_budget() -> u64 {
    std::env::var(BUDGET_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

pub(crate) fn check_budget(required: &BigUint, budget: u64) -> Result<(), FfError> {
    if *required > BigUint::from(budget) {
        return Err(FfError::Budget {
            required: required.to_string(),
            budget,
        });
    }
    Ok(())
}

/// All monomials in `r` variables of total degree at most `n`, in increasing
/// deg-lex order, with a product table.
#[derive(Clone, Debug)]
pub struct MonomialBasis {
    r: usize,
    n: u32,
    monomials: Vec<Monomial>,
    index: HashMap<Vec<u32>, usize>,
    products: Vec<u32>,
}

const NO_PRODUCT: u32 = u32::MAX;

impl MonomialBasis {
    pub fn new(r: usize, n: u32) -> Self {
        assert!(r >= 1, "at least one variable");
        let mut monomials = Vec::new();
        for deg in 0..=n {
            let mut level = Vec::new();
            exps_of_degree(r, deg, &mut vec![0; r], 0, &mut level);
            level.sort();
            monomials.extend(level.into_iter().map(Monomial::new));
        }
        let index: HashMap<Vec<u32>, usize> = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.exponents().to_vec(), i))
            .collect();
        let b = monomials.len();
        let mut products = vec![NO_PRODUCT; b * b];
        for i in 0..b {
            for j in 0..b {
                let m = monomials[i].mul(&monomials[j]);
                if let Some(&k) = index.get(m.exponents()) {
                    products[i * b + j] = k as u32;
                }
            }
        }
        MonomialBasis {
            r,
            n,
            monomials,
            index,
            products,
        }
    }

    pub fn nvars(&self) -> usize {
        self.r
    }

    pub fn max_degree(&self) -> u32 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomial(&self, i: usize) -> &Monomial {
        &self.monomials[i]
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m.exponents()).copied()
    }

    /// Number of monomials of degree at most `d`.
    pub fn count_up_to(&self, d: u32) -> usize {
        binomial(self.r as i64 + d as i64, self.r as i64) as usize
    }

    /// Index of `m_i * m_j` if it still has degree at most `n`.
    #[inline]
    pub fn product(&self, i: usize, j: usize) -> Option<usize> {
        let k = self.products[i * self.monomials.len() + j];
        (k != NO_PRODUCT).then_some(k as usize)
    }

    /// Dense product, truncated: panics if a product monomial leaves the basis.
    pub fn mul_dense(&self, ctx: &FieldCtx, a: &[FqElem], b: &[FqElem], out: &mut [FqElem]) {
        out.fill(FqElem::ZERO);
        for (i, &x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let k = self.product(i, j).expect("product degree exceeds the basis");
                out[k] = ctx.add(out[k], ctx.mul(x, y));
            }
        }
    }

    pub fn to_mvpoly(&self, ctx: &Arc<FieldCtx>, dense: &[FqElem]) -> MvPoly {
        MvPoly::from_terms(
            ctx,
            self.r,
            dense
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, &c)| (self.monomials[i].clone(), c)),
        )
        .expect("arity matches")
    }

    pub fn from_mvpoly(&self, f: &MvPoly) -> Option<Vec<FqElem>> {
        let mut out = vec![FqElem::ZERO; self.len()];
        for (m, c) in f.terms() {
            out[self.index_of(m)?] = c;
        }
        Some(out)
    }
}

fn exps_of_degree(r: usize, deg: u32, cur: &mut Vec<u32>, pos: usize, out: &mut Vec<Vec<u32>>) {
    if pos == r - 1 {
        cur[pos] = deg;
        out.push(cur.clone());
        return;
    }
    for e in 0..=deg {
        cur[pos] = e;
        exps_of_degree(r, deg - e, cur, pos + 1, out);
    }
    cur[pos] = 0;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Constraints {
    pub monic: bool,
    pub original: bool,
}

impl Constraints {
    pub const MONIC: Constraints = Constraints {
        monic: true,
        original: false,
    };
    pub const MONIC_ORIGINAL: Constraints = Constraints {
        monic: true,
        original: true,
    };
}

/// Number of polynomials of total degree exactly `n` in `r` variables over
/// `F_q` satisfying the constraints.
pub fn enumeration_count(q: u64, r: usize, n: u32, c: Constraints) -> BigUint {
    let b = binomial(r as i64 + n as i64, r as i64) as u32;
    let cn = binomial(r as i64 + n as i64 - 1, r as i64 - 1) as u32;
    let start = if c.original && n > 0 { 1 } else { 0 };
    let qb = BigUint::from(q);
    let mut total = BigUint::from(0u32);
    for k in 0..cn {
        // leading monomial is the (k+1)-th smallest of degree n
        let free = b - cn + k - start;
        total += qb.pow(free);
    }
    if !c.monic {
        total *= BigUint::from(q - 1);
    }
    if n == 0 && c.original {
        return BigUint::from(0u32);
    }
    total
}

/// Iterator over dense coefficient vectors (indexed by a [`MonomialBasis`]
/// of degree `n`) of all polynomials of total degree exactly `n`.
pub struct DenseEnum {
    q: u32,
    len: usize,
    lead_lo: usize,
    start: usize,
    monic: bool,
    lead: usize,
    current: Vec<u32>,
    done: bool,
}

impl DenseEnum {
    /// Advances and exposes the next coefficient vector without allocating.
    pub fn next_ref(&mut self) -> Option<&[u32]> {
        if self.done {
            return None;
        }
        if !self.advance_started() {
            self.done = true;
            return None;
        }
        Some(&self.current)
    }

    fn advance_started(&mut self) -> bool {
        if self.lead == usize::MAX {
            self.lead = self.lead_lo;
            self.reset_for_lead();
            return true;
        }
        for i in self.start..self.lead {
            self.current[i] += 1;
            if self.current[i] < self.q {
                return true;
            }
            self.current[i] = 0;
        }
        if !self.monic && self.current[self.lead] + 1 < self.q {
            self.current[self.lead] += 1;
            return true;
        }
        self.lead += 1;
        if self.lead >= self.len {
            return false;
        }
        self.reset_for_lead();
        true
    }

    fn reset_for_lead(&mut self) {
        self.current.fill(0);
        self.current[self.lead] = 1;
    }
}

impl Iterator for DenseEnum {
    type Item = Vec<FqElem>;

    fn next(&mut self) -> Option<Vec<FqElem>> {
        self.next_ref().map(|c| c.iter().map(|&i| FqElem(i)).collect())
    }
}

/// Enumerates all polynomials of total degree exactly `n` in `basis.nvars()`
/// variables; errors if their number exceeds `budget`.
pub fn enumerate_dense(
    ctx: &FieldCtx,
    basis: &MonomialBasis,
    n: u32,
    c: Constraints,
    budget: u64,
) -> Result<DenseEnum, FfError> {
    assert!(basis.max_degree() >= n);
    let count = enumeration_count(ctx.size() as u64, basis.nvars(), n, c);
    check_budget(&count, budget)?;
    let len = basis.count_up_to(n);
    let lead_lo = if n == 0 { 0 } else { basis.count_up_to(n - 1) };
    let start = if c.original { 1 } else { 0 };
    Ok(DenseEnum {
        q: ctx.size(),
        len,
        lead_lo,
        start,
        monic: c.monic,
        lead: usize::MAX,
        current: vec![0; basis.len()],
        done: n == 0 && c.original,
    })
}

/// All qualifying multivariate polynomials, as [`MvPoly`].
pub fn enumerate(
    ctx: &Arc<FieldCtx>,
    r: usize,
    n: u32,
    c: Constraints,
    budget: u64,
) -> Result<impl Iterator<Item = MvPoly>, FfError> {
    let basis = MonomialBasis::new(r, n);
    let it = enumerate_dense(ctx, &basis, n, c, budget)?;
    let ctx = ctx.clone();
    Ok(it.map(move |d| basis.to_mvpoly(&ctx, &d)))
}

/// All qualifying univariate polynomials of degree exactly `n`.
pub fn enumerate_uni(
    ctx: &Arc<FieldCtx>,
    n: u32,
    c: Constraints,
    budget: u64,
) -> Result<impl Iterator<Item = UniPoly>, FfError> {
    let basis = MonomialBasis::new(1, n);
    let it = enumerate_dense(ctx, &basis, n, c, budget)?;
    let ctx = ctx.clone();
    Ok(it.map(move |d| UniPoly::new(&ctx, d)))
}
