use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// An exact real number of the shape `offset + scale * base^exponent` with
/// integer `base > 1` and rational `exponent`.
///
/// Bounds such as `a(1 + q^{-n/12})` or `2q / (q-1) * q^{-3/2}` have
/// irrational values; comparisons against rationals are decided exactly by
/// raising both sides to the exponent's denominator.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PowerTerm {
    pub offset: BigRational,
    pub scale: BigRational,
    pub base: BigInt,
    pub exponent: BigRational,
}

impl PowerTerm {
    pub fn rational(x: BigRational) -> Self {
        PowerTerm {
            offset: x,
            scale: BigRational::zero(),
            base: BigInt::from(2),
            exponent: BigRational::zero(),
        }
    }

    pub fn new(offset: BigRational, scale: BigRational, base: BigInt, exponent: BigRational) -> Self {
        assert!(base > BigInt::one(), "power base must exceed 1");
        let t = PowerTerm {
            offset,
            scale,
            base,
            exponent,
        };
        t.simplified()
    }

    /// Folds an integral power into the rational part.
    fn simplified(self) -> Self {
        if self.scale.is_zero() {
            return PowerTerm::rational(self.offset);
        }
        if self.exponent.is_integer() {
            let v = &self.scale * rational_pow(&self.base, &self.exponent.to_integer());
            return PowerTerm::rational(&self.offset + v);
        }
        self
    }

    /// Rational value, when there is no irrational part.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.scale.is_zero() {
            Some(&self.offset)
        } else {
            None
        }
    }

    /// `k * self`.
    pub fn scaled(&self, k: &BigRational) -> Self {
        PowerTerm {
            offset: &self.offset * k,
            scale: &self.scale * k,
            base: self.base.clone(),
            exponent: self.exponent.clone(),
        }
        .simplified()
    }

    /// Exact ordering of `self` against a rational.
    pub fn cmp_rational(&self, x: &BigRational) -> Ordering {
        let rest = x - &self.offset;
        if self.scale.is_zero() {
            return BigRational::zero().cmp(&rest);
        }
        let ord = cmp_power(&self.base, &self.exponent, &(rest.clone() / self.scale.abs()));
        if self.scale.is_positive() {
            ord
        } else {
            // scale * t vs rest  <=>  reverse of |scale| * t vs -rest
            cmp_power(&self.base, &self.exponent, &(-rest / self.scale.abs())).reverse()
        }
    }

    /// Exact ordering where one side is rational or both share base and
    /// exponent; `None` for two unrelated irrational terms.
    pub fn partial_cmp_term(&self, other: &PowerTerm) -> Option<Ordering> {
        if let Some(x) = other.as_rational() {
            return Some(self.cmp_rational(x));
        }
        if let Some(x) = self.as_rational() {
            return Some(other.cmp_rational(x).reverse());
        }
        if self.base == other.base && self.exponent == other.exponent {
            let diff = PowerTerm {
                offset: &self.offset - &other.offset,
                scale: &self.scale - &other.scale,
                base: self.base.clone(),
                exponent: self.exponent.clone(),
            }
            .simplified();
            return Some(diff.cmp_rational(&BigRational::zero()));
        }
        None
    }

    pub fn to_f64(&self) -> f64 {
        let off = self.offset.to_f64().unwrap_or(f64::NAN);
        if self.scale.is_zero() {
            return off;
        }
        let b = self.base.to_f64().unwrap_or(f64::NAN);
        off + self.scale.to_f64().unwrap_or(f64::NAN) * b.powf(self.exponent.to_f64().unwrap_or(f64::NAN))
    }
}

/// Orders `base^exponent` (which is positive) against `z`.
fn cmp_power(base: &BigInt, exponent: &BigRational, z: &BigRational) -> Ordering {
    if !z.is_positive() {
        return Ordering::Greater;
    }
    let u = exponent.numer();
    let v = exponent.denom().to_u32().expect("exponent denominator too large");
    // base^(u/v) vs z  <=>  base^u vs z^v
    let lhs = rational_pow(base, u);
    let rhs = num_traits::pow(z.clone(), v as usize);
    lhs.cmp(&rhs)
}

fn rational_pow(base: &BigInt, e: &BigInt) -> BigRational {
    let k = e.abs().to_usize().expect("exponent too large");
    let p = BigRational::from_integer(num_traits::pow(base.clone(), k));
    if e.is_negative() {
        p.recip()
    } else {
        p
    }
}

impl fmt::Display for PowerTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.scale.is_zero() {
            return write!(f, "{}", self.offset);
        }
        if self.offset.is_zero() {
            return write!(f, "{}*{}^({})", self.scale, self.base, self.exponent);
        }
        let sign = if self.scale.is_negative() { '-' } else { '+' };
        write!(f, "{}{sign}{}*{}^({})", self.offset, self.scale.abs(), self.base, self.exponent)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn inverse_square_root_bracket() {
        // 250 (1 - 5^{-1/2}) ~ 138.2 and 250 (1 + 5^{-1/2}) ~ 361.8
        let lo = PowerTerm::new(r(250, 1), r(-250, 1), 5.into(), r(-1, 2));
        let hi = PowerTerm::new(r(250, 1), r(250, 1), 5.into(), r(-1, 2));
        assert_eq!(lo.cmp_rational(&r(138, 1)), Ordering::Greater);
        assert_eq!(lo.cmp_rational(&r(139, 1)), Ordering::Less);
        assert_eq!(hi.cmp_rational(&r(361, 1)), Ordering::Greater);
        assert_eq!(hi.cmp_rational(&r(362, 1)), Ordering::Less);
        assert_eq!(lo.partial_cmp_term(&hi), Some(Ordering::Less));
        assert!((hi.to_f64() - 361.803398875).abs() < 1e-6);
        assert_eq!(lo.to_string(), "250-250*5^(-1/2)");
        assert_eq!(hi.to_string(), "250+250*5^(-1/2)");
    }

    #[test]
    fn integral_exponent_collapses() {
        let t = PowerTerm::new(r(1, 1), r(3, 1), 2.into(), r(-2, 1));
        assert_eq!(t.as_rational(), Some(&r(7, 4)));
    }

    #[test]
    fn exact_equality_on_perfect_powers() {
        // 4^{1/2} = 2
        let t = PowerTerm::new(r(0, 1), r(1, 1), 4.into(), r(1, 2));
        assert_eq!(t.cmp_rational(&r(2, 1)), Ordering::Equal);
    }
}
