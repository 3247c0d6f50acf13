use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::SeriesError;
use crate::exact_arith::SymRat;

/// A power series in `z` with [`SymRat`] coefficients, truncated after `z^N`.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncSeries {
    coeffs: Vec<SymRat>,
}

impl TruncSeries {
    pub fn zero(order: usize) -> Self {
        TruncSeries {
            coeffs: vec![SymRat::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = SymRat::one();
        s
    }

    /// Pads with zeros or truncates to exactly `order + 1` coefficients.
    pub fn from_coeffs(mut coeffs: Vec<SymRat>, order: usize) -> Self {
        coeffs.resize(order + 1, SymRat::zero());
        TruncSeries { coeffs }
    }

    /// Builds a series from a coefficient function `n -> [z^n]`.
    pub fn from_fn(order: usize, f: impl FnMut(usize) -> SymRat) -> Self {
        TruncSeries {
            coeffs: (0..=order).map(f).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &SymRat {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[SymRat] {
        &self.coeffs
    }

    fn check_order(&self, other: &Self) -> Result<(), SeriesError> {
        if self.order() != other.order() {
            return Err(SeriesError::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_order(other)?;
        Ok(TruncSeries {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_order(other)?;
        Ok(TruncSeries {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_order(other)?;
        let n = self.order();
        let mut out = vec![SymRat::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        Ok(TruncSeries { coeffs: out })
    }

    pub fn div(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_order(other)?;
        let b0 = &other.coeffs[0];
        if b0.is_zero() {
            return Err(SeriesError::NotInvertible);
        }
        let b0_inv = b0.inv().map_err(|_| SeriesError::NotInvertible)?;
        let n = self.order();
        let mut c: Vec<SymRat> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = self.coeffs[k].clone();
            for j in 1..=k {
                let bj = &other.coeffs[j];
                if !bj.is_zero() {
                    acc = &acc - &(bj * &c[k - j]);
                }
            }
            c.push(&acc * &b0_inv);
        }
        Ok(TruncSeries { coeffs: c })
    }

    pub fn scale(&self, c: &SymRat) -> Self {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Formal logarithm of a series with constant term 1, from
    /// `a * (log a)' = a'`.
    pub fn log(&self) -> Result<Self, SeriesError> {
        if self.coeffs[0] != SymRat::one() {
            return Err(SeriesError::ConstantTermNotOne);
        }
        let n = self.order();
        let mut b = vec![SymRat::zero(); n + 1];
        for m in 1..=n {
            // m b_m = m a_m - sum_{k=1}^{m-1} k b_k a_{m-k}
            let mut acc = &self.coeffs[m] * &int(m);
            for k in 1..m {
                let a = &self.coeffs[m - k];
                if !a.is_zero() && !b[k].is_zero() {
                    acc = &acc - &(&(&b[k] * a) * &int(k));
                }
            }
            b[m] = &acc * &recip(m);
        }
        Ok(TruncSeries { coeffs: b })
    }

    /// Formal exponential of a series with zero constant term.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::ConstantTermNotZero);
        }
        let n = self.order();
        let mut b = vec![SymRat::zero(); n + 1];
        b[0] = SymRat::one();
        for m in 1..=n {
            // m b_m = sum_{k=1}^{m} k a_k b_{m-k}
            let mut acc = SymRat::zero();
            for k in 1..=m {
                let a = &self.coeffs[k];
                if !a.is_zero() && !b[m - k].is_zero() {
                    acc = &acc + &(&(a * &b[m - k]) * &int(k));
                }
            }
            b[m] = &acc * &recip(m);
        }
        Ok(TruncSeries { coeffs: b })
    }

    /// `a(z^k)`, truncated at the same order.
    pub fn substitute_power(&self, k: usize) -> Self {
        assert!(k >= 1, "substitution power must be positive");
        let n = self.order();
        let mut out = vec![SymRat::zero(); n + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            if i * k > n {
                break;
            }
            out[i * k] = c.clone();
        }
        TruncSeries { coeffs: out }
    }

    /// Applies `c -> c(q^s)` to every coefficient.
    pub fn subs_q_power(&self, s: usize) -> Self {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|c| c.subs_pow(s)).collect(),
        }
    }
}

fn int(k: usize) -> SymRat {
    SymRat::constant(BigInt::from(k))
}

fn recip(k: usize) -> SymRat {
    SymRat::rational(BigRational::new(1.into(), BigInt::from(k)))
}

impl fmt::Debug for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncSeries[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::QPoly;

    fn s(v: &[i64], order: usize) -> TruncSeries {
        TruncSeries::from_coeffs(v.iter().map(|&c| SymRat::constant(c)).collect(), order)
    }

    fn rat(n: i64, d: i64) -> SymRat {
        SymRat::rational(BigRational::new(n.into(), d.into()))
    }

    /// `sum_n q^n z^n`
    fn p1(order: usize) -> TruncSeries {
        TruncSeries::from_fn(order, |n| SymRat::q_pow(n as i64))
    }

    #[test]
    fn product_of_binomials() {
        let a = s(&[1, 1], 2);
        let b = s(&[1, -1], 2);
        assert_eq!(a.mul(&b).unwrap(), s(&[1, 0, -1], 2));
    }

    #[test]
    fn mixed_orders_rejected() {
        let err = s(&[1], 2).add(&s(&[1], 3)).unwrap_err();
        assert_eq!(err, SeriesError::OrderMismatch { left: 2, right: 3 });
    }

    #[test]
    fn division_needs_unit() {
        assert_eq!(s(&[1], 2).div(&s(&[0, 1], 2)).unwrap_err(), SeriesError::NotInvertible);
        let a = s(&[3, 1, 4, 1], 3);
        assert_eq!(a.div(&a).unwrap(), TruncSeries::one(3));
    }

    #[test]
    fn log_of_geometric_series() {
        let g = s(&[1, 1, 1, 1, 1], 4);
        let want = TruncSeries::from_coeffs(
            vec![SymRat::zero(), rat(1, 1), rat(1, 2), rat(1, 3), rat(1, 4)],
            4,
        );
        assert_eq!(g.log().unwrap(), want);
        let l = s(&[1, 1], 2).log().unwrap();
        assert_eq!(l, TruncSeries::from_coeffs(vec![SymRat::zero(), rat(1, 1), rat(-1, 2)], 2));
        assert_eq!(s(&[2, 1], 2).log().unwrap_err(), SeriesError::ConstantTermNotOne);
    }

    #[test]
    fn exp_inverts_log() {
        let a = TruncSeries::from_coeffs(
            vec![SymRat::one(), "(q)/(q-1)".parse().unwrap(), rat(-3, 5), SymRat::q_pow(2)],
            3,
        );
        assert_eq!(a.log().unwrap().exp().unwrap(), a);
    }

    #[test]
    fn substitution() {
        assert_eq!(s(&[1, 1], 3).substitute_power(2), s(&[1, 0, 1], 3));
        let a = s(&[1, 2, 3, 4], 3);
        assert_eq!(a.substitute_power(1), a);
        let got = p1(3).substitute_power(3);
        assert_eq!(got.coeff(3), &SymRat::q_pow(1));
        assert!(got.coeff(1).is_zero() && got.coeff(2).is_zero());
    }

    #[test]
    fn moebius_sum_of_logs_counts_irreducibles() {
        // sum_k mu(k)/k log P_1(q, z^k), coefficient of z^2
        let n = 2;
        let mut acc = TruncSeries::zero(n);
        for k in 1..=n {
            let mu = super::super::moebius(k as u64);
            if mu == 0 {
                continue;
            }
            let term = p1(n).substitute_power(k).log().unwrap();
            acc = acc.add(&term.scale(&rat(mu as i64, k as i64))).unwrap();
        }
        let want: SymRat = QPoly::from_coeffs(&[
            BigRational::from_integer(0.into()),
            BigRational::new((-1).into(), 2.into()),
            BigRational::new(1.into(), 2.into()),
        ])
        .into();
        assert_eq!(acc.coeff(2), &want);
    }
}
