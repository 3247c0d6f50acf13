//! Small number-theoretic helpers: Möbius function, divisors, primality and
//! integer compositions.

/// The Möbius function; `k` must be at least 1.
pub fn moebius(k: u64) -> i32 {
    assert!(k >= 1, "moebius is defined for k >= 1");
    let mut n = k;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Positive divisors in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n >= 1);
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Smallest prime divisor of `n >= 2`.
pub fn smallest_prime_divisor(n: u64) -> u64 {
    assert!(n >= 2);
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return d;
        }
        d += 1;
    }
    n
}

/// Distinct prime divisors in increasing order.
pub fn prime_divisors(n: u64) -> Vec<u64> {
    divisors(n).into_iter().filter(|&d| is_prime(d)).collect()
}

/// Returns `(p, e)` with `n = p^e` for prime `p`, if `n` is a prime power.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let p = smallest_prime_divisor(n);
    let mut m = n;
    let mut e = 0;
    while m.is_multiple_of(p) {
        m /= p;
        e += 1;
    }
    (m == 1).then_some((p, e))
}

/// Number of times `p` divides `n`.
pub fn multiplicity(p: u64, mut n: u64) -> u32 {
    assert!(p >= 2 && n >= 1);
    let mut e = 0;
    while n.is_multiple_of(p) {
        n /= p;
        e += 1;
    }
    e
}

/// An ordered sequence of positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn sum(&self) -> usize {
        self.parts.iter().sum()
    }
}

/// All `2^{n-1}` compositions of `n >= 1`, lexicographic with larger leading
/// parts first: `(3), (2,1), (1,2), (1,1,1)`.
pub fn compositions(n: usize) -> Compositions {
    assert!(n >= 1, "compositions are defined for n >= 1");
    Compositions {
        next: Some(vec![n]),
    }
}

pub struct Compositions {
    next: Option<Vec<usize>>,
}

impl Iterator for Compositions {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        let current = self.next.take()?;
        if let Some(i) = current.iter().rposition(|&p| p > 1) {
            let mut succ = current[..=i].to_vec();
            succ[i] -= 1;
            let rest: usize = 1 + current[i + 1..].iter().sum::<usize>();
            succ.push(rest);
            self.next = Some(succ);
        }
        Some(Composition { parts: current })
    }
}
