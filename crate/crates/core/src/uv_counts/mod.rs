//! Counting decomposable monic original univariate polynomials over `F_q`:
//! main terms, brackets, intersections of decomposition classes, and the
//! exact count at degree `p^2`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exact_arith::PowerTerm;
use crate::series::{divisors, is_prime, multiplicity, prime_power, smallest_prime_divisor};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum UvError {
    #[error("no decomposables: {0} is prime")]
    NoDecomposables(u64),
    #[error("invalid parameters: {0}")]
    Invalid(String),
    #[error("wild case (characteristic {p} divides {n}); use wild_intersection_bounds")]
    Wild { p: u64, n: u64 },
    #[error("no exact count available for n={n}, q={q}")]
    Unavailable { n: u64, q: u64 },
}

/// Degree `n` and field size `q`, with `n` composite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UvQuery {
    pub n: u64,
    pub q: u64,
    pub p: u64,
    pub d: u32,
    pub ell: u64,
}

impl UvQuery {
    pub fn new(n: u64, q: u64) -> Result<Self, UvError> {
        let (p, d) = prime_power(q).ok_or_else(|| UvError::Invalid(format!("{q} is not a prime power")))?;
        if n < 4 {
            return Err(UvError::Invalid(format!("degree {n} has no decomposables")));
        }
        if is_prime(n) {
            return Err(UvError::NoDecomposables(n));
        }
        Ok(UvQuery { n, q, p, d, ell: smallest_prime_divisor(n) })
    }
}

/// Lower and upper bounds on a count, each of the form
/// `offset + scale * q^exponent`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bracket {
    pub lower: PowerTerm,
    pub upper: PowerTerm,
    pub exact: Option<BigInt>,
    pub case_label: String,
}

impl Bracket {
    pub fn contains(&self, x: &BigRational) -> bool {
        self.lower.cmp_rational(x) != Ordering::Greater && self.upper.cmp_rational(x) != Ordering::Less
    }

    pub fn is_ordered(&self) -> bool {
        self.lower.partial_cmp_term(&self.upper) != Some(Ordering::Greater)
    }
}

impl fmt::Display for Bracket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}] ({})", self.lower, self.upper, self.case_label)?;
        if let Some(e) = &self.exact {
            write!(f, " exact {e}")?;
        }
        Ok(())
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn int(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

/// `q^e` for an integer exponent of either sign.
fn qpow(q: u64, e: i64) -> BigRational {
    BigRational::from_integer(q.into()).pow(e as i32)
}

fn exact_term(x: BigRational) -> PowerTerm {
    PowerTerm::rational(x)
}

fn check_composite(n: u64) -> Result<(), UvError> {
    if n < 4 || is_prime(n) {
        return Err(UvError::NoDecomposables(n));
    }
    Ok(())
}

/// `2 q^{l + n/l - 2}`, or `q^{2l-2}` when `n = l^2`.
pub fn alpha_n(n: u64, q: u64) -> Result<BigRational, UvError> {
    check_composite(n)?;
    let l = smallest_prime_divisor(n);
    Ok(if n == l * l {
        qpow(q, 2 * l as i64 - 2)
    } else {
        int(2) * qpow(q, (l + n / l) as i64 - 2)
    })
}

/// Checks `q^{2 sqrt(n) - 2} <= alpha_n <= 2 q^{n/2}` by integer comparisons
/// of squared exponents.
pub fn alpha_bounds_hold(n: u64, q: u64) -> Result<bool, UvError> {
    check_composite(n)?;
    let l = smallest_prime_divisor(n);
    let (c, k) = if n == l * l { (1u32, 2 * l - 2) } else { (2, l + n / l - 2) };
    // q^{2 sqrt n - 2} <= q^k  iff  4n <= (k+2)^2; the factor c >= 1 only helps
    let lower = 4 * n <= (k + 2) * (k + 2);
    // c^2 q^{2k} <= 4 q^n
    let upper = BigInt::from(c * c) * BigInt::from(q).pow(2 * k as u32) <= BigInt::from(4) * BigInt::from(q).pow(n as u32);
    Ok(lower && upper)
}

fn kronecker(a: u64, b: u64) -> i64 {
    (a == b) as i64
}

/// Number of monic original polynomials of degree `n = l m` having left
/// components of degrees `l` and `m`, in the tame case `p ∤ n`.
pub fn tame_intersection(ell: u64, m: u64, q: u64) -> Result<BigInt, UvError> {
    let (p, _) = prime_power(q).ok_or_else(|| UvError::Invalid(format!("{q} is not a prime power")))?;
    if !(m > ell && ell >= 2) {
        return Err(UvError::Invalid(format!("need m > l >= 2, got l={ell}, m={m}")));
    }
    let n = ell * m;
    if n.is_multiple_of(p) {
        return Err(UvError::Wild { p, n });
    }
    let s = (m / ell) as i64;
    let i = ell.gcd(&m) as i64;
    let l = ell as i64;
    let v = if m.is_multiple_of(ell) {
        qpow(q, 2 * l + s - 3)
    } else {
        qpow(q, 2 * i) * (qpow(q, s - 1) + int(1 - kronecker(ell, 2)) * (int(1) - qpow(q, -1)))
    };
    Ok(v.to_integer())
}

/// `true` if every divisor `d` of `k` with `1 < d < k` exceeds `p`.
fn nontrivial_divisors_exceed(k: u64, p: u64) -> bool {
    divisors(k).into_iter().filter(|&d| d > 1 && d < k).all(|d| d > p)
}

/// Bounds on the number of non-Frobenius polynomials of degree `n = l m`
/// with left components of degrees `l` and `m`, when `p | n`.
pub fn wild_intersection_bounds(ell: u64, m: u64, q: u64) -> Result<Bracket, UvError> {
    let (p, _) = prime_power(q).ok_or_else(|| UvError::Invalid(format!("{q} is not a prime power")))?;
    if ell < 2 || m < 2 {
        return Err(UvError::Invalid(format!("need l, m >= 2, got l={ell}, m={m}")));
    }
    if !(ell * m).is_multiple_of(p) {
        return Err(UvError::Invalid(format!("tame case: {p} does not divide {}", ell * m)));
    }
    let (li, mi) = (ell as i64, m as i64);
    let ceil = |a: i64, b: i64| (a + b - 1).div_euclid(b);
    let mut labels = Vec::new();
    let upper = if !ell.is_multiple_of(p) {
        labels.push("upper: tame left degree");
        Some(qpow(q, mi + ceil(li, p as i64) - 2))
    } else if ell < m {
        labels.push("upper: wild left degree");
        let b = ceil(mi - li + 1, li);
        Some(qpow(q, mi + li - b + ceil(b, p as i64) - 2))
    } else {
        None
    };

    let mut lower = None;
    if is_prime(ell) && m.is_multiple_of(ell) && m > ell {
        let one = int(1);
        let qi = qpow(q, -1);
        if p == ell {
            if nontrivial_divisors_exceed(m / p, p) {
                labels.push("lower: characteristic equals l");
                let pi = p as i64;
                lower = Some(qpow(q, 2 * pi + mi / pi - 3) * (&one - &qi) * (&one - qpow(q, 1 - pi)));
            }
        } else if m.is_multiple_of(p) {
            labels.push("lower: characteristic differs from l");
            let d = multiplicity(p, m);
            let pd1 = p.pow(d) - 1;
            let pi = p as i64;
            let inner = &one - &qi * (&one + qpow(q, 2 - pi) * (&one - &qi) * (&one - &qi) / (&one - qpow(q, -pi)));
            let main = qpow(q, 2 * li + mi / li - 3);
            let tail = &one - qpow(q, -(mi / li));
            lower = Some(if pd1 % ell != 0 {
                main * inner * tail
            } else {
                let mu = pd1.gcd(&ell) as i64;
                let r = (pd1 / mu as u64) as i64;
                let corr = qpow(q, -(mi / li) - r + 2) * (&one - &qi) * (&one - &qi) * (&one - qpow(q, -r * (mu - 1)))
                    / (&one - qpow(q, -r))
                    * (&one + qpow(q, -r * (pi - 2)));
                main * (inner * tail - corr)
            });
        }
    }
    if upper.is_none() && lower.is_none() {
        return Ok(Bracket {
            lower: exact_term(BigRational::zero()),
            upper: exact_term(qpow(q, li + mi - 2)),
            exact: None,
            case_label: "no clause applies".into(),
        });
    }
    Ok(Bracket {
        lower: exact_term(lower.unwrap_or_else(BigRational::zero)),
        upper: exact_term(upper.unwrap_or_else(|| qpow(q, li + mi - 2))),
        exact: None,
        case_label: labels.join("; "),
    })
}

/// Exact number of decomposable monic original polynomials of degree `p^2`
/// over `F_{p^d}`.
pub fn d_p2_exact(p: u64, d: u32) -> Result<BigInt, UvError> {
    if !is_prime(p) || d == 0 {
        return Err(UvError::Invalid(format!("need a prime p and d >= 1, got p={p}, d={d}")));
    }
    let q = BigInt::from(p).pow(d);
    let pb = BigInt::from(p);
    let tau = BigInt::from(divisors(p - 1).len());
    let one = BigInt::one();
    let main = q.pow(2 * p as u32 - 2) - q.pow(p as u32 - 1) + &one;
    let s_term = BigRational::new(
        (&tau * &q - &q + &one) * (&q - &one) * (&q * &pb - &pb - 2),
        BigInt::from(2 * (p + 1)),
    );
    let m_term = if p == 2 {
        BigRational::zero()
    } else {
        BigRational::new(&q * (&q - &one) * (&q - 2) * (&pb - 3), BigInt::from(4))
    };
    let v = BigRational::from_integer(main) - s_term - m_term;
    debug_assert!(v.is_integer());
    Ok(v.to_integer())
}

/// `#D_n(F_q)` where a closed form is known: `n = p^2`, `n = l^2` with
/// `p != l`, or `n = l m` for distinct primes with `p ∤ n`.
pub fn d_n_exact(n: u64, q: u64) -> Result<Option<BigInt>, UvError> {
    let query = UvQuery::new(n, q)?;
    let (p, l) = (query.p, query.ell);
    if n == p * p {
        return d_p2_exact(p, query.d).map(Some);
    }
    let qb = BigInt::from(q);
    if n == l * l {
        return Ok(Some(qb.pow(2 * l as u32 - 2)));
    }
    let m = n / l;
    if is_prime(m) && m != l && !n.is_multiple_of(p) {
        let single = qb.pow((l + m - 2) as u32);
        return Ok(Some(BigInt::from(2) * single - tame_intersection(l, m, q)?));
    }
    Ok(None)
}

struct Candidate {
    label: &'static str,
    term: PowerTerm,
}

fn pick_max(cands: Vec<Candidate>) -> Candidate {
    cands
        .into_iter()
        .reduce(|a, b| {
            if b.term.partial_cmp_term(&a.term) == Some(Ordering::Greater) {
                b
            } else {
                a
            }
        })
        .expect("at least one bound applies")
}

/// Brackets `#D_n(F_q)` around `alpha_n`: the two-sided tame bound when
/// `p ∤ n`, otherwise the largest applicable lower bound. `exact` is filled
/// where a closed form is known.
pub fn d_n_bracket(n: u64, q: u64) -> Result<Bracket, UvError> {
    let query = UvQuery::new(n, q)?;
    let (p, l) = (query.p, query.ell);
    let alpha = alpha_n(n, q)?;
    let e = BigRational::new(BigInt::from(-(n as i64)), BigInt::from(3 * l * l));
    let qb = BigInt::from(q);
    let around = |sign: i64| PowerTerm::new(alpha.clone(), &alpha * int(sign), qb.clone(), e.clone());

    let tame = !n.is_multiple_of(p);
    let lower = if tame {
        Candidate { label: "tame", term: around(-1) }
    } else {
        let mut lowers = vec![Candidate { label: "general", term: exact_term(&alpha / int(2)) }];
        if n != p * p && q > 5 {
            lowers.push(Candidate { label: "large-field", term: exact_term(&alpha * (int(3) - rat(2, q as i64)) / int(4)) });
        }
        if p != l {
            lowers.push(Candidate { label: "first-order", term: exact_term(&alpha * (int(1) - rat(2, q as i64))) });
        }
        pick_max(lowers)
    };
    let upper_label = if tame { "tame" } else { "general" };
    let case_label = if lower.label == upper_label {
        upper_label.to_string()
    } else {
        format!("lower {}, upper {}", lower.label, upper_label)
    };
    Ok(Bracket {
        lower: lower.term,
        upper: around(1),
        exact: d_n_exact(n, q)?,
        case_label,
    })
}

/// `nu_{q,n} = #D_n(F_q) / alpha_n` from a known count.
pub fn nu_from(count: &BigInt, n: u64, q: u64) -> Result<BigRational, UvError> {
    Ok(BigRational::from_integer(count.clone()) / alpha_n(n, q)?)
}

/// `nu_{q,n}` where `#D_n(F_q)` has a closed form.
pub fn nu(n: u64, q: u64) -> Result<BigRational, UvError> {
    let count = d_n_exact(n, q)?.ok_or(UvError::Unavailable { n, q })?;
    nu_from(&count, n, q)
}
