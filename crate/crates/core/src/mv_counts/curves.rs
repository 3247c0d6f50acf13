//! Bound constants for reducible and exceptional space curves. These are
//! the only floating-point values in the crate; the large constants are
//! kept as natural logarithms.

use std::f64::consts::E;

use super::CountError;
use crate::series::smallest_prime_divisor;

fn binom_f(a: u64, k: u64) -> f64 {
    if k > a {
        return 0.0;
    }
    let k = k.min(a - k);
    (0..k).fold(1.0, |acc, i| acc * (a - i) as f64 / (i + 1) as f64)
}

/// `g_{r,n} = binom(r+n-2, n)^2 (r+n-1) / ((r-1)(n+1))`.
pub fn curve_genus_bound(r: u32, n: u32) -> f64 {
    let (r, n) = (r as u64, n as u64);
    binom_f(r + n - 2, n).powi(2) * (r + n - 1) as f64 / ((r - 1) * (n + 1)) as f64
}

/// Lower and upper bounds on the count of exceptional cycles in one regime.
#[derive(Clone, Debug, PartialEq)]
pub struct ExceptionalBracket {
    pub regime: &'static str,
    /// `None` when the lower bound is not positive.
    pub ln_lower: Option<f64>,
    pub ln_upper: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CurveBounds {
    pub r: u32,
    pub n: u32,
    pub ell: Option<u32>,
    pub g: f64,
    pub ln_c: f64,
    pub b: f64,
    /// `b_{r,n/l}`, which appears in the exceptional bounds.
    pub b_reduced: Option<f64>,
    pub ln_d: Option<f64>,
}

/// Constants for curves of degree `n >= 1` in projective `r`-space.
pub fn curve_bounds(r: u32, n: u32) -> Result<CurveBounds, CountError> {
    if r < 3 {
        return Err(CountError::Invalid(format!("curve bounds need r >= 3, got {r}")));
    }
    if n < 1 {
        return Err(CountError::Invalid("curve bounds need n >= 1".into()));
    }
    let (rf, nf) = (r as f64, n as f64);
    let g = curve_genus_bound(r, n);
    let ln_c = (rf * (rf + 1.0) * (nf * nf + 1.0) + 4.0 * rf * g) * (2.0 * E * nf).ln();
    let b_of = |m: f64| 3.0 * (rf - 2.0) + m * (m + 3.0) / 2.0;
    let ell = (n >= 2).then(|| smallest_prime_divisor(n as u64) as u32);
    let (b_reduced, ln_d) = match ell {
        Some(l) => {
            let m = n / l;
            let mf = m as f64;
            let gm = curve_genus_bound(r, m);
            let ln_d = (rf * (rf + 1.0) * (mf * mf + 1.0) + 4.0 * rf * gm) * (E * mf).ln();
            (Some(b_of(mf)), Some(ln_d))
        }
        None => (None, None),
    };
    Ok(CurveBounds { r, n, ell, g, ln_c, b: b_of(nf), b_reduced, ln_d })
}

impl CurveBounds {
    /// Natural logs of the lower and upper bounds on the fraction of
    /// reducible cycles, when `n >= min(4r-7, 7)` or `n = 4r-8`.
    pub fn reducible_bracket(&self, q: u64) -> Option<(f64, f64)> {
        let (r, n) = (self.r as i64, self.n as i64);
        let lq = (q as f64).ln();
        if n >= (4 * r - 7).min(7) {
            let e = -(n - 2 * r + 3) as f64 * lq;
            Some((e - (4.0f64).ln() - self.ln_c, e + self.ln_c))
        } else if n == 4 * r - 8 {
            let e = -(r - 2) as f64 * lq;
            let ln_fact: f64 = (2..=n).map(|k| (k as f64).ln()).sum();
            Some((e - (2.0f64).ln() - ln_fact - self.ln_c, e + self.ln_c))
        } else {
            None
        }
    }

    /// Natural logs of bounds on the number of exceptional cycles, for
    /// `n >= 4r-8` and composite-or-prime `n >= 2`; both regimes may apply.
    pub fn exceptional_brackets(&self, q: u64) -> Vec<ExceptionalBracket> {
        let (r, n) = (self.r as i64, self.n as i64);
        let (Some(l), Some(ln_d), Some(bm)) = (self.ell, self.ln_d, self.b_reduced) else {
            return Vec::new();
        };
        if n < 4 * r - 8 {
            return Vec::new();
        }
        let lq = (q as f64).ln();
        let l = l as i64;
        let m = n / l;
        let ln_lower = |main: f64, k: f64, e: i64| {
            let x = k * (e as f64 * lq).exp();
            (x < 1.0).then(|| main + (-x).ln_1p())
        };
        let mut out = Vec::new();
        if m <= 4 * r - 7 {
            let main = (2 * n * (r - 1)) as f64 * lq;
            out.push(ExceptionalBracket {
                regime: "small-quotient",
                ln_lower: ln_lower(main, 4.0, 2 * (1 - n) * (r - 1)),
                ln_upper: (2.0f64).ln() + ln_d + main,
            });
        }
        if m >= 4 * r - 8 {
            let main = l as f64 * bm * lq;
            out.push(ExceptionalBracket {
                regime: "large-quotient",
                ln_lower: ln_lower(main, 16.0, l - n),
                ln_upper: (3.0f64).ln() + ln_d + main,
            });
        }
        out
    }
}
