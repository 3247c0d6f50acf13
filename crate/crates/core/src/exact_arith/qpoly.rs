use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{text, zpoly, ArithError, SymRat};

/// A polynomial in the field-size variable `q` with rational coefficients.
///
/// Stored as an integer coefficient vector over a common positive
/// denominator, kept in lowest terms, so equality is structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QPoly {
    num: Vec<BigInt>,
    den: BigInt,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly {
            num: Vec::new(),
            den: BigInt::one(),
        }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::from_integer_coeffs(vec![c.into()])
    }

    pub fn rational_constant(c: BigRational) -> Self {
        Self::from_parts(vec![c.numer().clone()], c.denom().clone())
    }

    /// `q^k`.
    pub fn q_pow(k: usize) -> Self {
        let mut v = vec![BigInt::zero(); k];
        v.push(BigInt::one());
        Self::from_integer_coeffs(v)
    }

    pub fn from_integer_coeffs(coeffs: Vec<BigInt>) -> Self {
        Self::from_parts(coeffs, BigInt::one())
    }

    pub fn from_coeffs(coeffs: &[BigRational]) -> Self {
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        Self::from_parts(num, den)
    }

    pub(crate) fn from_parts(mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        zpoly::trim(&mut num);
        if num.is_empty() {
            return Self::zero();
        }
        if den.is_negative() {
            den = -den;
            num = zpoly::neg(&num);
        }
        let g = zpoly::content(&num).gcd(&den);
        if !g.is_one() {
            num = zpoly::div_scalar_exact(&num, &g);
            den /= &g;
        }
        QPoly { num, den }
    }

    pub(crate) fn numer_coeffs(&self) -> &[BigInt] {
        &self.num
    }

    pub(crate) fn common_denom(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    /// Degree in `q`; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        zpoly::degree(&self.num)
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        match self.num.get(i) {
            Some(c) => BigRational::new(c.clone(), self.den.clone()),
            None => BigRational::zero(),
        }
    }

    pub fn coeffs(&self) -> Vec<BigRational> {
        (0..self.num.len()).map(|i| self.coeff(i)).collect()
    }

    pub fn leading_coeff(&self) -> BigRational {
        match self.degree() {
            Some(d) => self.coeff(d),
            None => BigRational::zero(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::from_parts(zpoly::scale(&self.num, c.numer()), &self.den * c.denom())
    }

    /// Exact value at `q = x`.
    pub fn eval(&self, x: &BigInt) -> BigRational {
        BigRational::new(zpoly::eval(&self.num, x), self.den.clone())
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.num.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc / BigRational::from_integer(self.den.clone())
    }

    /// Value at `q = x` when it is known to be an integer.
    pub fn eval_integer(&self, x: &BigInt) -> Result<BigInt, ArithError> {
        let v = self.eval(x);
        if v.is_integer() {
            Ok(v.to_integer())
        } else {
            Err(ArithError::NotIntegral(v.to_string()))
        }
    }

    /// The substitution `q -> q^s`, used to pass from `F_q` to `F_{q^s}`.
    pub fn subs_pow(&self, s: usize) -> Self {
        QPoly {
            num: zpoly::subs_pow(&self.num, s),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn to_symrat(&self) -> SymRat {
        SymRat::from(self.clone())
    }
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        if self.den == rhs.den {
            return QPoly::from_parts(zpoly::add(&self.num, &rhs.num), self.den.clone());
        }
        let l = self.den.lcm(&rhs.den);
        let a = zpoly::scale(&self.num, &(&l / &self.den));
        let b = zpoly::scale(&rhs.num, &(&l / &rhs.den));
        QPoly::from_parts(zpoly::add(&a, &b), l)
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        self + &(-rhs)
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly {
            num: zpoly::neg(&self.num),
            den: self.den.clone(),
        }
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        QPoly::from_parts(zpoly::mul(&self.num, &rhs.num), &self.den * &rhs.den)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for QPoly {
            type Output = QPoly;
            fn $m(self, rhs: QPoly) -> QPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPoly({self})")
    }
}

/// Same `(<numerator>)/(<denominator>)` form as [`SymRat`], e.g. `(q^2-q)/(2)`.
impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({})/({})",
            text::format_zpoly(&self.num),
            text::format_zpoly(std::slice::from_ref(&self.den))
        )
    }
}

impl FromStr for QPoly {
    type Err = ArithError;
    fn from_str(s: &str) -> Result<Self, ArithError> {
        let r: SymRat = s.parse()?;
        r.to_qpoly()
            .ok_or_else(|| ArithError::Parse(format!("not a polynomial: {s}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn normalizes_common_denominator() {
        let p = QPoly::from_coeffs(&[rat(0, 1), rat(-1, 2), rat(1, 2)]);
        assert_eq!(p.to_string(), "(q^2-q)/(2)");
        assert_eq!(p.eval(&BigInt::from(2)), rat(1, 1));
        let twice = &p + &p;
        assert!(twice.is_integral());
        assert_eq!(twice.to_string(), "(q^2-q)/(1)");
    }

    #[test]
    fn subs_pow_moves_to_extension() {
        // q^2 + q at q^2 is q^4 + q^2
        let p = QPoly::from_integer_coeffs(vec![0.into(), 1.into(), 1.into()]);
        assert_eq!(p.subs_pow(2).eval(&BigInt::from(2)), rat(20, 1));
    }

    #[test]
    fn parse_roundtrip() {
        let p: QPoly = "(3*q^3-q+7)/(4)".parse().unwrap();
        assert_eq!(p.to_string(), "(3*q^3-q+7)/(4)");
        assert!("(q)/(q-1)".parse::<QPoly>().is_err());
    }
}
