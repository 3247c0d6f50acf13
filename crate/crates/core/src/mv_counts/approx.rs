//! Main terms, gap exponents and relative error bounds.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::exact::{absirr_exact, irr_exact, powerfree_exact, powerful_exact, red_exact, relirr_exact};
use super::exact::{IrrRoute, PowerfulRoute};
use super::CountError;
use crate::exact_arith::{binomial, PowerTerm, QPoly, SymRat};
use crate::series::{is_prime, prime_power, smallest_prime_divisor};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Class {
    Reducible,
    Irreducible,
    Powerful,
    Powerfree,
    RelIrreducible,
    AbsIrreducible,
    DecomposableMv,
}

impl Class {
    pub const ALL: [Class; 7] = [
        Class::Reducible,
        Class::Irreducible,
        Class::Powerful,
        Class::Powerfree,
        Class::RelIrreducible,
        Class::AbsIrreducible,
        Class::DecomposableMv,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Class::Reducible => "reducible",
            Class::Irreducible => "irreducible",
            Class::Powerful => "powerful",
            Class::Powerfree => "powerfree",
            Class::RelIrreducible => "rel_irreducible",
            Class::AbsIrreducible => "abs_irreducible",
            Class::DecomposableMv => "decomposable_mv",
        }
    }

    pub fn needs_power(self) -> bool {
        matches!(self, Class::Powerful | Class::Powerfree)
    }
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Class {
    type Err = CountError;
    fn from_str(s: &str) -> Result<Self, CountError> {
        Class::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| CountError::Invalid(format!("unknown class '{s}'")))
    }
}

/// Either the formal variable `q` or a concrete prime power.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Symbolic,
    Size(u64),
}

impl FieldSpec {
    pub fn size(q: u64) -> Result<Self, CountError> {
        if prime_power(q).is_none() {
            return Err(CountError::Invalid(format!("{q} is not a prime power")));
        }
        Ok(FieldSpec::Size(q))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountQuery {
    pub class: Class,
    pub r: u32,
    pub n: u32,
    pub s: Option<u32>,
    pub field: FieldSpec,
}

impl CountQuery {
    pub fn new(class: Class, r: u32, n: u32, s: Option<u32>, field: FieldSpec) -> Result<Self, CountError> {
        if r == 0 {
            return Err(CountError::Invalid("need at least one variable".into()));
        }
        match (class.needs_power(), s) {
            (true, None) => return Err(CountError::Invalid(format!("class {class} needs --s"))),
            (true, Some(s)) if s < 2 => return Err(CountError::Invalid("s must be at least 2".into())),
            (false, Some(_)) => return Err(CountError::Invalid(format!("class {class} takes no s"))),
            _ => {}
        }
        if let FieldSpec::Size(q) = field {
            FieldSpec::size(q)?;
        }
        Ok(CountQuery { class, r, n, s, field })
    }

    /// Smallest prime divisor of `n`, for `n >= 2`.
    pub fn ell(&self) -> Option<u32> {
        (self.n >= 2).then(|| smallest_prime_divisor(self.n as u64) as u32)
    }
}

/// `factor(q) * q^exponent` with a rational exponent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledPower {
    pub factor: SymRat,
    pub exponent: BigRational,
}

impl ScaledPower {
    pub fn new(factor: SymRat, exponent: BigRational) -> Self {
        ScaledPower { factor, exponent }
    }

    pub fn integral(factor: SymRat, exponent: i64) -> Self {
        Self::new(factor, BigRational::from_integer(exponent.into()))
    }

    pub fn at(&self, q: u64) -> PowerTerm {
        let f = self.factor.eval(&BigInt::from(q)).expect("bound factor has no pole at q >= 2");
        PowerTerm::new(BigRational::zero(), f, BigInt::from(q), self.exponent.clone())
    }
}

impl fmt::Display for ScaledPower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*q^({})", self.factor, self.exponent)
    }
}

/// A value in a report: symbolic in `q`, or evaluated at a concrete field size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Quantity {
    Symbolic(SymRat),
    SymbolicPower(ScaledPower),
    Rational(BigRational),
    Power(PowerTerm),
}

impl Quantity {
    pub fn as_rational(&self) -> Option<BigRational> {
        match self {
            Quantity::Rational(x) => Some(x.clone()),
            Quantity::Power(t) => t.as_rational().cloned(),
            _ => None,
        }
    }

    pub fn as_symrat(&self) -> Option<&SymRat> {
        match self {
            Quantity::Symbolic(s) => Some(s),
            _ => None,
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantity::Symbolic(s) => write!(f, "{s}"),
            Quantity::SymbolicPower(p) => write!(f, "{p}"),
            Quantity::Rational(x) => write!(f, "{x}"),
            Quantity::Power(t) => write!(f, "{t}"),
        }
    }
}

/// One counting query's results.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountReport {
    pub query: CountQuery,
    /// Which approximation regime applies, e.g. `"general"`.
    pub case: &'static str,
    pub exact: Option<Quantity>,
    pub main_term: Option<Quantity>,
    /// An exact closed form in terms of the main term, where one is known.
    pub closed_form: Option<Quantity>,
    pub gap_exponent: Option<i64>,
    pub rel_error_bound: Option<Quantity>,
    /// At a concrete field size: whether `|exact - main| <= main * bound`.
    pub within_bound: Option<bool>,
    pub oracle: Option<BigInt>,
}

fn qp(e: i64) -> SymRat {
    SymRat::q_pow(e)
}

fn one_minus(e: i64) -> SymRat {
    SymRat::one_minus_q_inv(e)
}

fn b(a: i64, k: i64) -> i64 {
    binomial(a, k)
}

fn constant(n: i64, d: i64) -> SymRat {
    SymRat::rational(BigRational::new(n.into(), d.into()))
}

/// `rho_{r,n} = q^{binom(r+n-1,r)+r-1} (1-q^{-r}) / (1-q^{-1})^2`.
pub fn rho(r: u32, n: u32) -> SymRat {
    let (r, n) = (r as i64, n as i64);
    let den = &one_minus(1) * &one_minus(1);
    &(&qp(b(r + n - 1, r) + r - 1) * &one_minus(r)) / &den
}

/// `eta_{r,n,s} = q^{binom(r+n-s,r)+r-1} (1-q^{-r})(1-q^{-binom(r+n-s-1,r-1)}) / (1-q^{-1})^2`.
pub fn eta(r: u32, n: u32, s: u32) -> SymRat {
    let (r, n, s) = (r as i64, n as i64, s as i64);
    let num = &(&qp(b(r + n - s, r) + r - 1) * &one_minus(r)) * &one_minus(b(r + n - s - 1, r - 1));
    &num / &(&one_minus(1) * &one_minus(1))
}

/// `delta = binom(r+n-s,r) - binom(r+n-2s,r) - r(r+1)/2`.
pub fn delta(r: u32, n: u32, s: u32) -> i64 {
    let (r, n, s) = (r as i64, n as i64, s as i64);
    b(r + n - s, r) - b(r + n - 2 * s, r) - r * (r + 1) / 2
}

/// `epsilon_{r,n} = q^{l (binom(r+n/l,r) - 1)} / (l (1 - q^{-l}))`.
pub fn epsilon(r: u32, n: u32) -> SymRat {
    let l = smallest_prime_divisor(n as u64) as i64;
    let (r, m) = (r as i64, n as i64 / l);
    &qp(l * (b(r + m, r) - 1)) / &(&constant(l, 1) * &one_minus(l))
}

/// `kappa = (l-1)(binom(r-1+n/l, r-1) - r) + 1`.
pub fn kappa(r: u32, n: u32) -> i64 {
    let l = smallest_prime_divisor(n as u64) as i64;
    let (r, m) = (r as i64, n as i64 / l);
    (l - 1) * (b(r - 1 + m, r - 1) - r) + 1
}

/// The degree `m` of the outer component counted by the main term: `n` if
/// `r = 2`, `n/l` is prime and `n/l <= 2l - 5`; otherwise `l`.
pub fn mv_decomp_m(r: u32, n: u32) -> u32 {
    let l = smallest_prime_divisor(n as u64) as u32;
    let k = n / l;
    if r == 2 && is_prime(k as u64) && (k as i64) <= 2 * l as i64 - 5 {
        n
    } else {
        l
    }
}

/// `alpha_{r,n} = q^{binom(r+n/m,r)+m-3} (1-q^{-binom(r-1+n/m,r-1)}) / (1-q^{-1})`.
pub fn alpha_mv(r: u32, n: u32) -> SymRat {
    let m = mv_decomp_m(r, n) as i64;
    let (r, k) = (r as i64, n as i64 / m);
    &(&qp(b(r + k, r) + m - 3) * &one_minus(b(r - 1 + k, r - 1))) / &one_minus(1)
}

/// `beta_{r,n} = 2 q^{-binom(r-1+n/l,r-1)/2 + 1} / (1-q^{-1})`.
pub fn beta_mv(r: u32, n: u32) -> ScaledPower {
    let l = smallest_prime_divisor(n as u64) as i64;
    let c = b(r as i64 - 1 + n as i64 / l, r as i64 - 1);
    ScaledPower::new(
        &constant(2, 1) / &one_minus(1),
        BigRational::new(BigInt::from(2 - c), BigInt::from(2)),
    )
}

fn check_decomposable(n: u32) -> Result<(), CountError> {
    if n < 2 || is_prime(n as u64) {
        return Err(CountError::Invalid(format!(
            "decomposable counts need composite n, got {n}"
        )));
    }
    Ok(())
}

/// Exact count as a polynomial in `q`; decomposable multivariate
/// polynomials have no closed form.
pub fn exact_symbolic(query: &CountQuery) -> Result<QPoly, CountError> {
    let (r, n) = (query.r, query.n);
    Ok(match query.class {
        Class::Reducible => red_exact(r, n),
        Class::Irreducible => irr_exact(r, n, IrrRoute::SeriesLog),
        Class::Powerful => powerful_exact(r, n, query.s.unwrap(), PowerfulRoute::SeriesRelation),
        Class::Powerfree => powerfree_exact(r, n, query.s.unwrap()),
        Class::RelIrreducible => relirr_exact(r, n),
        Class::AbsIrreducible => absirr_exact(r, n),
        Class::DecomposableMv => {
            return Err(CountError::NoExactFormula(
                "decomposable multivariate counts have no closed form; use the oracle".into(),
            ))
        }
    })
}

/// The exact count, symbolic or evaluated.
pub fn count_exact(query: &CountQuery) -> Result<Quantity, CountError> {
    let p = exact_symbolic(query)?;
    Ok(match query.field {
        FieldSpec::Symbolic => Quantity::Symbolic(p.into()),
        FieldSpec::Size(q) => Quantity::Rational(p.eval(&BigInt::from(q))),
    })
}

/// Symbolic pieces of a report before evaluation.
struct Parts {
    case: &'static str,
    main: Option<SymRat>,
    closed: Option<SymRat>,
    gap: Option<i64>,
    bound: Option<ScaledPower>,
}

fn reducible_parts(r: u32, n: u32) -> Result<Parts, CountError> {
    if r < 2 {
        return Err(CountError::Invalid("the symbolic approximation needs r >= 2".into()));
    }
    let ri = r as i64;
    let rh = rho(r, n);
    Ok(match n {
        0 => Parts { case: "trivial", main: Some(SymRat::one()), closed: Some(SymRat::one()), gap: None, bound: None },
        1 => Parts { case: "trivial", main: Some(SymRat::zero()), closed: Some(SymRat::zero()), gap: None, bound: None },
        2 => Parts {
            case: "quadratic",
            closed: Some(&(&rh * &constant(1, 2)) * &one_minus(ri + 1)),
            main: Some(rh),
            gap: Some(0),
            bound: None,
        },
        3 => {
            let inner_num = &(&(&SymRat::one() - &(&constant(2, 1) * &qp(-ri))) + &(&constant(2, 1) * &qp(-2 * ri - 1)))
                - &qp(-2 * ri - 2);
            let inner = &(&qp(-ri * (ri - 1) / 2) * &inner_num) / &(&constant(3, 1) * &one_minus(1));
            let factor = &(&SymRat::one() - &qp(-ri * (ri + 1) / 2)) - &inner;
            let g = ri * (ri - 1) / 2;
            Parts {
                case: "cubic",
                closed: Some(&rh * &factor),
                main: Some(rh),
                gap: Some(g),
                bound: Some(ScaledPower::integral(SymRat::one(), -g)),
            }
        }
        _ => {
            let g = b(ri + n as i64 - 2, ri - 1) - ri * (ri + 1) / 2;
            Parts {
                case: if n == 4 { "quartic" } else { "general" },
                main: Some(rh),
                closed: None,
                gap: Some(g),
                bound: Some(ScaledPower::integral(
                    &SymRat::one() / &(&one_minus(1) * &one_minus(ri)),
                    -g,
                )),
            }
        }
    })
}

fn powerful_parts(r: u32, n: u32, s: u32) -> Result<Parts, CountError> {
    if r < 2 {
        return Err(CountError::Invalid("the symbolic approximation needs r >= 2".into()));
    }
    let (ri, ni, si) = (r as i64, n as i64, s as i64);
    if n < s {
        return Ok(Parts { case: "empty", main: Some(SymRat::zero()), closed: Some(SymRat::zero()), gap: None, bound: None });
    }
    let et = eta(r, n, s);
    if n < 2 * s {
        return Ok(Parts { case: "first-order", closed: Some(et.clone()), main: Some(et), gap: None, bound: None });
    }
    let d = delta(r, n, s);
    if n < 3 * s {
        let ratio = &one_minus(b(ni + ri - 2 * si - 1, ri - 1)) / &one_minus(b(ni + ri - si - 1, ri - 1));
        let bracket = &(&one_minus(ri * (ri + 1) / 2) / &one_minus(ri))
            - &(&(&qp(-ri * (ri - 1) / 2) * &one_minus(ri)) / &one_minus(1));
        let corr = &(&qp(-d) * &ratio) * &bracket;
        return Ok(Parts {
            case: "second-order",
            closed: Some(&et * &(&SymRat::one() + &corr)),
            main: Some(et),
            gap: Some(d),
            bound: None,
        });
    }
    if (n, s) == (6, 2) {
        let g = d - (ri - 2) * (ri - 1) * (ri + 3) / 6;
        return Ok(Parts {
            case: "exceptional",
            main: Some(et),
            closed: None,
            gap: Some(g),
            bound: Some(ScaledPower::integral(constant(2, 1), -g)),
        });
    }
    Ok(Parts {
        case: "general",
        main: Some(et),
        closed: None,
        gap: Some(d),
        bound: Some(ScaledPower::integral(constant(6, 1), -d)),
    })
}

fn relirr_parts(r: u32, n: u32) -> Result<Parts, CountError> {
    if r < 2 || n < 2 {
        return Err(CountError::Invalid("the symbolic approximation needs r, n >= 2".into()));
    }
    let (ri, ni) = (r as i64, n as i64);
    let ep = epsilon(r, n);
    if is_prime(n as u64) {
        let ratio = &(&one_minus(ri) * &one_minus(ni)) / &(&one_minus(1) * &one_minus(ni * ri));
        let factor = &one_minus(ni * ri) * &(&SymRat::one() - &(&qp(-ri * (ni - 1)) * &ratio));
        return Ok(Parts {
            case: "prime",
            closed: Some(&ep * &factor),
            main: Some(ep),
            gap: Some(ri * (ni - 1)),
            bound: None,
        });
    }
    let k = kappa(r, n);
    Ok(Parts {
        case: "composite",
        main: Some(ep),
        closed: None,
        gap: Some(k),
        bound: Some(ScaledPower::integral(constant(3, 1), -k)),
    })
}

fn decomposable_parts(r: u32, n: u32) -> Result<Parts, CountError> {
    if r < 2 {
        return Err(CountError::Invalid("the multivariate decomposable bound needs r >= 2".into()));
    }
    check_decomposable(n)?;
    let m = mv_decomp_m(r, n);
    Ok(Parts {
        case: if m == n { "full-degree" } else { "smallest-prime" },
        main: Some(alpha_mv(r, n)),
        closed: None,
        gap: None,
        bound: Some(beta_mv(r, n)),
    })
}

/// Main term, exact value and bound for one query.
pub fn approx(query: &CountQuery) -> Result<CountReport, CountError> {
    let (r, n) = (query.r, query.n);
    let parts = match query.class {
        Class::Reducible => reducible_parts(r, n)?,
        Class::Powerful => powerful_parts(r, n, query.s.unwrap())?,
        Class::RelIrreducible => relirr_parts(r, n)?,
        Class::DecomposableMv => decomposable_parts(r, n)?,
        Class::Irreducible | Class::Powerfree | Class::AbsIrreducible => Parts {
            case: "exact-only",
            main: None,
            closed: None,
            gap: None,
            bound: None,
        },
    };
    let exact = match exact_symbolic(query) {
        Ok(p) => Some(p),
        Err(CountError::NoExactFormula(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(match query.field {
        FieldSpec::Symbolic => CountReport {
            query: query.clone(),
            case: parts.case,
            exact: exact.map(|p| Quantity::Symbolic(p.into())),
            main_term: parts.main.map(Quantity::Symbolic),
            closed_form: parts.closed.map(Quantity::Symbolic),
            gap_exponent: parts.gap,
            rel_error_bound: parts.bound.map(Quantity::SymbolicPower),
            within_bound: None,
            oracle: None,
        },
        FieldSpec::Size(q) => {
            let qi = BigInt::from(q);
            let ev = |s: &SymRat| s.eval(&qi).expect("no pole at a field size");
            let exact_v = exact.map(|p| p.eval(&qi));
            let main_v = parts.main.as_ref().map(ev);
            let bound_v = parts.bound.as_ref().map(|b| b.at(q));
            let within = match (&exact_v, &main_v, &bound_v) {
                (Some(e), Some(m), Some(bd)) => Some(within_relative(e, m, bd)),
                _ => None,
            };
            CountReport {
                query: query.clone(),
                case: parts.case,
                exact: exact_v.map(Quantity::Rational),
                main_term: main_v.map(Quantity::Rational),
                closed_form: parts.closed.as_ref().map(|c| Quantity::Rational(ev(c))),
                gap_exponent: parts.gap,
                rel_error_bound: bound_v.map(Quantity::Power),
                within_bound: within,
                oracle: None,
            }
        }
    })
}

/// `|value - main| <= main * bound`, exactly.
pub fn within_relative(value: &BigRational, main: &BigRational, bound: &PowerTerm) -> bool {
    if main.is_zero() {
        return value.is_zero();
    }
    let rel = (value - main).abs() / main.abs();
    bound.cmp_rational(&rel) != Ordering::Less
}
