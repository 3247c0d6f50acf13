use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{text, zpoly, ArithError, QPoly};

/// An exact rational function in the formal field size `q`.
///
/// Canonical form: `num / den` with `gcd(num, den) = 1`, `den` a primitive
/// integer polynomial with positive leading coefficient, and all rational
/// content carried by `num`. Structural equality is therefore value equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SymRat {
    num: QPoly,
    den: QPoly,
}

impl SymRat {
    pub fn zero() -> Self {
        QPoly::zero().into()
    }

    pub fn one() -> Self {
        QPoly::one().into()
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        QPoly::constant(c).into()
    }

    pub fn rational(c: BigRational) -> Self {
        QPoly::rational_constant(c).into()
    }

    /// `q^e` for any integer `e`; negative powers are cleared into the
    /// denominator.
    pub fn q_pow(e: i64) -> Self {
        if e >= 0 {
            QPoly::q_pow(e as usize).into()
        } else {
            SymRat {
                num: QPoly::one(),
                den: QPoly::q_pow((-e) as usize),
            }
        }
    }

    /// `1 - q^{-e}`, the factor that appears throughout the counting formulas.
    pub fn one_minus_q_inv(e: i64) -> Self {
        &Self::one() - &Self::q_pow(-e)
    }

    pub fn new(num: QPoly, den: QPoly) -> Result<Self, ArithError> {
        if den.is_zero() {
            return Err(ArithError::ZeroDivisor);
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: QPoly, den: QPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        // num/den = (a / da) / (b / db) = (db / da) * a / b with a, b integral.
        let a = num.numer_coeffs();
        let b = den.numer_coeffs();
        let mut scalar = BigRational::new(den.common_denom().clone(), num.common_denom().clone());
        let (a, b) = if b.len() == 1 {
            (a.to_vec(), b.to_vec())
        } else {
            let g = zpoly::gcd(a, b);
            if g.len() == 1 {
                (a.to_vec(), b.to_vec())
            } else {
                (zpoly::div_exact(a, &g), zpoly::div_exact(b, &g))
            }
        };
        let mut c = zpoly::content(&b);
        if b.last().unwrap().is_negative() {
            c = -c;
        }
        let b = zpoly::div_scalar_exact(&b, &c);
        scalar /= BigRational::from_integer(c);
        SymRat {
            num: QPoly::from_integer_coeffs(a).scale(&scalar),
            den: QPoly::from_integer_coeffs(b),
        }
    }

    pub fn numer(&self) -> &QPoly {
        &self.num
    }

    pub fn denom(&self) -> &QPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    /// The polynomial this function equals, if it is one.
    pub fn to_qpoly(&self) -> Option<QPoly> {
        if self.is_polynomial() {
            Some(self.num.clone())
        } else {
            None
        }
    }

    /// `deg num - deg den`.
    pub fn qdegree(&self) -> Result<i64, ArithError> {
        match self.num.degree() {
            None => Err(ArithError::DegreeOfZero),
            Some(d) => Ok(d as i64 - self.den.degree().unwrap() as i64),
        }
    }

    pub fn eval(&self, q0: &BigInt) -> Result<BigRational, ArithError> {
        let d = self.den.eval(q0);
        if d.is_zero() {
            return Err(ArithError::Pole(q0.to_string()));
        }
        Ok(self.num.eval(q0) / d)
    }

    pub fn eval_rational(&self, q0: &BigRational) -> Result<BigRational, ArithError> {
        let d = self.den.eval_rational(q0);
        if d.is_zero() {
            return Err(ArithError::Pole(q0.to_string()));
        }
        Ok(self.num.eval_rational(q0) / d)
    }

    pub fn inv(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::ZeroDivisor);
        }
        Ok(Self::normalize(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &SymRat) -> Result<Self, ArithError> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, e: i32) -> Result<Self, ArithError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// `f(q^s)`.
    pub fn subs_pow(&self, s: usize) -> Self {
        Self::normalize(self.num.subs_pow(s), self.den.subs_pow(s))
    }

    /// Numerator and denominator as integer polynomials, in lowest terms
    /// with a positive leading denominator coefficient.
    fn integer_form(&self) -> (Vec<BigInt>, Vec<BigInt>) {
        let n = self.num.numer_coeffs().to_vec();
        let d = zpoly::scale(self.den.numer_coeffs(), self.num.common_denom());
        (n, d)
    }
}

impl From<QPoly> for SymRat {
    fn from(p: QPoly) -> Self {
        SymRat {
            num: p,
            den: QPoly::one(),
        }
    }
}

impl Add for &SymRat {
    type Output = SymRat;
    fn add(self, rhs: &SymRat) -> SymRat {
        if self.is_polynomial() && rhs.is_polynomial() {
            return (&self.num + &rhs.num).into();
        }
        if self.den == rhs.den {
            return SymRat::normalize(&self.num + &rhs.num, self.den.clone());
        }
        let a = self.den.numer_coeffs();
        let b = rhs.den.numer_coeffs();
        let g = zpoly::gcd(a, b);
        let a_red = QPoly::from_integer_coeffs(zpoly::div_exact(a, &g));
        let b_red = QPoly::from_integer_coeffs(zpoly::div_exact(b, &g));
        let num = &(&self.num * &b_red) + &(&rhs.num * &a_red);
        SymRat::normalize(num, &self.den * &b_red)
    }
}

impl Sub for &SymRat {
    type Output = SymRat;
    fn sub(self, rhs: &SymRat) -> SymRat {
        self + &(-rhs)
    }
}

impl Neg for &SymRat {
    type Output = SymRat;
    fn neg(self) -> SymRat {
        SymRat {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &SymRat {
    type Output = SymRat;
    fn mul(self, rhs: &SymRat) -> SymRat {
        if self.is_polynomial() && rhs.is_polynomial() {
            return (&self.num * &rhs.num).into();
        }
        if self.is_zero() || rhs.is_zero() {
            return SymRat::zero();
        }
        // Cross-cancel before multiplying so the final gcd stays small.
        let (an, ad) = split(&self.num);
        let (bn, bd) = split(&rhs.num);
        let g1 = zpoly::gcd(&an, rhs.den.numer_coeffs());
        let g2 = zpoly::gcd(&bn, self.den.numer_coeffs());
        let n1 = zpoly::div_exact(&an, &g1);
        let d2 = zpoly::div_exact(rhs.den.numer_coeffs(), &g1);
        let n2 = zpoly::div_exact(&bn, &g2);
        let d1 = zpoly::div_exact(self.den.numer_coeffs(), &g2);
        let num = QPoly::from_parts(zpoly::mul(&n1, &n2), ad * bd);
        let den = QPoly::from_integer_coeffs(zpoly::mul(&d1, &d2));
        SymRat::normalize(num, den)
    }
}

fn split(p: &QPoly) -> (Vec<BigInt>, BigInt) {
    (p.numer_coeffs().to_vec(), p.common_denom().clone())
}

/// Panics on a zero divisor; use [`SymRat::checked_div`] to get an error.
impl Div for &SymRat {
    type Output = SymRat;
    fn div(self, rhs: &SymRat) -> SymRat {
        self.checked_div(rhs).expect("zero divisor")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for SymRat {
            type Output = SymRat;
            fn $m(self, rhs: SymRat) -> SymRat {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl fmt::Debug for SymRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymRat({self})")
    }
}

/// `(<numerator>)/(<denominator>)` with integer coefficients in decreasing
/// exponent, e.g. `(q^5+q^4)/(q-1)`.
impl fmt::Display for SymRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, d) = self.integer_form();
        write!(
            f,
            "({})/({})",
            text::format_zpoly(&n),
            text::format_zpoly(&d)
        )
    }
}

impl FromStr for SymRat {
    type Err = ArithError;
    fn from_str(s: &str) -> Result<Self, ArithError> {
        let s = s.trim();
        let (n, d) = match split_fraction(s) {
            Some((n, d)) => (n, d),
            None => (s, "1"),
        };
        let num = QPoly::from_integer_coeffs(text::parse_zpoly(n)?);
        let den = QPoly::from_integer_coeffs(text::parse_zpoly(d)?);
        SymRat::new(num, den)
    }
}

fn split_fraction(s: &str) -> Option<(&str, &str)> {
    let rest = s.strip_prefix('(')?;
    let close = rest.find(')')?;
    let num = &rest[..close];
    let tail = rest[close + 1..].trim_start().strip_prefix('/')?.trim();
    let den = tail.strip_prefix('(')?.strip_suffix(')')?;
    Some((num, den))
}

impl Zero for SymRat {
    fn zero() -> Self {
        SymRat::zero()
    }
    fn is_zero(&self) -> bool {
        SymRat::is_zero(self)
    }
}

impl One for SymRat {
    fn one() -> Self {
        SymRat::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> SymRat {
        x.parse().unwrap()
    }

    #[test]
    fn telescoping_quotient() {
        let a = SymRat::one_minus_q_inv(2)
            .checked_div(&SymRat::one_minus_q_inv(1))
            .unwrap();
        let b = a.checked_div(&SymRat::one()).unwrap();
        assert_eq!(b, s("(q+1)/(q)"));
        assert_eq!(b.to_string(), "(q+1)/(q)");
    }

    #[test]
    fn rho_two_two() {
        let rho = &(&SymRat::q_pow(4) * &SymRat::one_minus_q_inv(2))
            * &SymRat::one_minus_q_inv(1).pow(-2).unwrap();
        assert_eq!(rho.to_string(), "(q^5+q^4)/(q-1)");
        assert_eq!(rho.eval(&BigInt::from(2)).unwrap(), BigRational::from_integer(48.into()));
    }

    #[test]
    fn self_subtraction_is_canonical_zero() {
        let x = s("(q^3+2)/(3*q-1)");
        let z = &x - &x;
        assert_eq!(z, SymRat::zero());
        assert_eq!(z.to_string(), "(0)/(1)");
    }

    #[test]
    fn zero_divisor_and_pole_errors() {
        assert_eq!(SymRat::one().checked_div(&SymRat::zero()), Err(ArithError::ZeroDivisor));
        assert!(matches!(
            s("(1)/(q-2)").eval(&BigInt::from(2)),
            Err(ArithError::Pole(_))
        ));
        assert_eq!(SymRat::zero().qdegree(), Err(ArithError::DegreeOfZero));
    }

    #[test]
    fn qdegree_after_canonicalization() {
        let f = &(&SymRat::q_pow(5) * &SymRat::one_minus_q_inv(3))
            / &SymRat::one_minus_q_inv(1);
        assert_eq!(f.qdegree().unwrap(), 5);
        assert_eq!(SymRat::constant(7).qdegree().unwrap(), 0);
    }

    #[test]
    fn rational_content_lives_in_numerator() {
        let half = SymRat::rational(BigRational::new(1.into(), 2.into()));
        assert_eq!(half.to_string(), "(1)/(2)");
        let x = s("(2*q)/(4*q-2)");
        assert_eq!(x.to_string(), "(q)/(2*q-1)");
        assert_eq!(s(&x.to_string()), x);
    }
}
