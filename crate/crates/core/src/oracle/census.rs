use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::BigUint;
use rayon::prelude::*;

use super::{odometer, OracleError};
use crate::ff::{check_budget, FieldCtx, FqElem, UniPoly};
use crate::series::divisors;

/// Compositions with left degree `left_degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitCount {
    pub left_degree: u32,
    pub right_degree: u32,
    /// Pairs `(g, h)` enumerated.
    pub pairs: u64,
    /// `#D_{n,e}`.
    pub distinct: u64,
    /// Largest number of decompositions of one `f` with this left degree.
    pub max_multiplicity: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Intersection {
    pub left_degrees: (u32, u32),
    pub count: u64,
    /// Members of the intersection outside `F[x^p]`.
    pub non_frobenius: u64,
}

/// Census of the decomposable monic original univariate polynomials of
/// degree `n` over one field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusReport {
    pub n: u32,
    pub q: u32,
    pub field: String,
    pub total: u64,
    pub splits: Vec<SplitCount>,
    pub intersections: Vec<Intersection>,
    /// `k -> c_k`, the number of `f` with exactly `k` decompositions.
    pub histogram: BTreeMap<u32, u64>,
    /// Polynomials in `F[x^p]` with at least two decompositions.
    pub frobenius_collisions: u64,
    /// Signed sum of the intersection sizes over all nonempty sets of splits.
    pub inclusion_exclusion: i64,
}

impl CensusReport {
    pub fn collisions(&self, k: u32) -> u64 {
        self.histogram.get(&k).copied().unwrap_or(0)
    }

    pub fn split(&self, left_degree: u32) -> Option<&SplitCount> {
        self.splits.iter().find(|s| s.left_degree == left_degree)
    }

    pub fn intersection(&self, a: u32, b: u32) -> Option<&Intersection> {
        let key = (a.min(b), a.max(b));
        self.intersections.iter().find(|i| i.left_degrees == key)
    }
}

struct Table {
    splits: Vec<u32>,
    pairs: Vec<u64>,
    /// Key of `f` (middle coefficients) -> decompositions per split.
    entries: HashMap<u128, Vec<u32>>,
}

fn key_of(coeffs: &[FqElem], q: u128) -> u128 {
    coeffs.iter().rev().fold(0u128, |acc, c| acc * q + c.index() as u128)
}

fn poly_from_key(ctx: &Arc<FieldCtx>, n: u32, mut key: u128) -> UniPoly {
    let q = ctx.size() as u128;
    let mut coeffs = vec![FqElem::ZERO; n as usize + 1];
    for c in coeffs.iter_mut().take(n as usize).skip(1) {
        *c = FqElem((key % q) as u32);
        key /= q;
    }
    coeffs[n as usize] = FqElem::ONE;
    UniPoly::new(ctx, coeffs)
}

fn mul_trunc(ctx: &FieldCtx, a: &[FqElem], b: &[FqElem], out: &mut [FqElem]) {
    out.fill(FqElem::ZERO);
    for (i, &x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(out.len() - i) {
            if !y.is_zero() {
                out[i + j] = ctx.add(out[i + j], ctx.mul(x, y));
            }
        }
    }
}

/// Middle-coefficient keys of `g(h)` over all monic original `g` of degree `e`.
fn compose_all(ctx: &FieldCtx, n: u32, e: u32, h: &[FqElem]) -> Vec<u128> {
    let q = ctx.size();
    let len = n as usize + 1;
    let mut powers = vec![vec![FqElem::ZERO; len]; e as usize + 1];
    powers[1][..h.len()].copy_from_slice(h);
    let base = powers[1].clone();
    for i in 2..=e as usize {
        let (lo, hi) = powers.split_at_mut(i);
        mul_trunc(ctx, &lo[i - 1], &base, &mut hi[0]);
    }
    let mut out = Vec::with_capacity((q as usize).pow(e - 1));
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
        out.push(key_of(&f[1..n as usize], q as u128));
        if !odometer(&mut g, q) {
            break;
        }
    }
    out
}

fn build_table(n: u32, ctx: &FieldCtx, budget: u64) -> Result<Table, OracleError> {
    let q = ctx.size();
    if n < 4 {
        return Err(OracleError::Invalid(format!("degree {n} has no decomposables")));
    }
    if BigUint::from(q).pow(n - 1).bits() > 127 {
        return Err(OracleError::Invalid(format!("degree {n} over F_{q} is too large for a census")));
    }
    let splits: Vec<u32> = divisors(n as u64)
        .into_iter()
        .map(|e| e as u32)
        .filter(|&e| e >= 2 && n / e >= 2)
        .collect();
    let qb = BigUint::from(q);
    let required: BigUint = splits.iter().map(|&e| qb.pow(e - 1) * qb.pow(n / e - 1)).sum();
    check_budget(&required, budget)?;
    let mut entries: HashMap<u128, Vec<u32>> = HashMap::new();
    let mut pairs = Vec::new();
    for (idx, &e) in splits.iter().enumerate() {
        let d = n / e;
        let mut hs = Vec::new();
        let mut tail = vec![0u32; d as usize - 1];
        loop {
            let mut h = vec![FqElem::ZERO; d as usize + 1];
            for (c, &t) in h[1..].iter_mut().zip(&tail) {
                *c = FqElem(t);
            }
            h[d as usize] = FqElem::ONE;
            hs.push(h);
            if !odometer(&mut tail, q) {
                break;
            }
        }
        let mut keys: Vec<u128> = hs.par_iter().flat_map_iter(|h| compose_all(ctx, n, e, h)).collect();
        pairs.push(keys.len() as u64);
        keys.par_sort_unstable();
        for run in keys.chunk_by(|a, b| a == b) {
            let slot = entries.entry(run[0]).or_insert_with(|| vec![0; splits.len()]);
            slot[idx] = run.len() as u32;
        }
    }
    Ok(Table { splits, pairs, entries })
}

fn in_frobenius_image(key: u128, n: u32, q: u32, p: u32) -> bool {
    let mut k = key;
    for i in 1..n {
        let c = k % q as u128;
        k /= q as u128;
        if c != 0 && i % p != 0 {
            return false;
        }
    }
    true
}

/// Composes every monic original pair `(g, h)` with `deg g * deg h = n`
/// and both degrees at least 2, and tallies the images.
pub fn oracle_decomp_census(n: u32, ctx: &Arc<FieldCtx>, budget: u64) -> Result<CensusReport, OracleError> {
    let t = build_table(n, ctx, budget)?;
    let (q, p) = (ctx.size(), ctx.characteristic());
    let s = t.splits.len();
    let mut histogram = BTreeMap::new();
    let mut frobenius_collisions = 0;
    let mut pair_counts = vec![vec![(0u64, 0u64); s]; s];
    let mut by_mask: HashMap<u32, u64> = HashMap::new();
    let mut max_mult = vec![0u32; s];
    for (&key, counts) in &t.entries {
        let k: u32 = counts.iter().sum();
        *histogram.entry(k).or_insert(0) += 1;
        let frob = in_frobenius_image(key, n, q, p);
        if frob && k >= 2 {
            frobenius_collisions += 1;
        }
        let mut mask = 0u32;
        for i in 0..s {
            max_mult[i] = max_mult[i].max(counts[i]);
            if counts[i] == 0 {
                continue;
            }
            mask |= 1 << i;
            for j in i + 1..s {
                if counts[j] > 0 {
                    pair_counts[i][j].0 += 1;
                    if !frob {
                        pair_counts[i][j].1 += 1;
                    }
                }
            }
        }
        *by_mask.entry(mask).or_insert(0) += 1;
    }
    let mut inclusion_exclusion = 0i64;
    for subset in 1u32..(1 << s) {
        let inside: u64 = by_mask.iter().filter(|(&m, _)| m & subset == subset).map(|(_, &c)| c).sum();
        let sign = if subset.count_ones() % 2 == 1 { 1 } else { -1 };
        inclusion_exclusion += sign * inside as i64;
    }
    let splits = t
        .splits
        .iter()
        .enumerate()
        .map(|(i, &e)| SplitCount {
            left_degree: e,
            right_degree: n / e,
            pairs: t.pairs[i],
            distinct: t.entries.values().filter(|c| c[i] > 0).count() as u64,
            max_multiplicity: max_mult[i],
        })
        .collect();
    let mut intersections = Vec::new();
    for i in 0..s {
        for j in i + 1..s {
            intersections.push(Intersection {
                left_degrees: (t.splits[i], t.splits[j]),
                count: pair_counts[i][j].0,
                non_frobenius: pair_counts[i][j].1,
            });
        }
    }
    Ok(CensusReport {
        n,
        q,
        field: ctx.to_string(),
        total: t.entries.len() as u64,
        splits,
        intersections,
        histogram,
        frobenius_collisions,
        inclusion_exclusion,
    })
}

/// Every decomposable `f` of degree `n` with its number of decompositions,
/// sorted by coefficient key.
pub fn decomposition_table(n: u32, ctx: &Arc<FieldCtx>, budget: u64) -> Result<Vec<(UniPoly, u32)>, OracleError> {
    let t = build_table(n, ctx, budget)?;
    let mut rows: Vec<(u128, u32)> = t.entries.iter().map(|(&k, c)| (k, c.iter().sum())).collect();
    rows.sort_unstable();
    Ok(rows.into_iter().map(|(k, c)| (poly_from_key(ctx, n, k), c)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quartics_over_f2() {
        let f2 = FieldCtx::new(2, 1).unwrap();
        let c = oracle_decomp_census(4, &f2, 1 << 20).unwrap();
        assert_eq!(c.total, 3);
        assert_eq!(c.collisions(1), 2);
        assert_eq!(c.collisions(2), 1);
        assert_eq!(c.frobenius_collisions, 1);
        assert_eq!(c.inclusion_exclusion, 3);
        let table = decomposition_table(4, &f2, 1 << 20).unwrap();
        let shown: Vec<String> = table.iter().map(|(f, k)| format!("{f}:{k}")).collect();
        assert_eq!(shown, vec!["x^4:1", "x^4+x:1", "x^4+x^2:2"]);
    }

    #[test]
    fn sextics_over_f5() {
        let f5 = FieldCtx::new(5, 1).unwrap();
        let c = oracle_decomp_census(6, &f5, 1 << 20).unwrap();
        assert_eq!(c.split(2).unwrap().distinct, 125);
        assert_eq!(c.split(3).unwrap().distinct, 125);
        assert_eq!(c.intersection(2, 3).unwrap().count, 25);
        assert_eq!(c.total, 225);
        assert!(c.splits.iter().all(|s| s.max_multiplicity == 1));
    }
}
