//! Text form of integer polynomials in `q`: terms in decreasing exponent,
//! e.g. `3*q^4-q+2`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::ArithError;

pub(crate) fn format_zpoly(a: &[BigInt]) -> String {
    let mut out = String::new();
    for (e, c) in a.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if neg {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        let unit = mag.is_one();
        match e {
            0 => out.push_str(&mag.to_string()),
            _ => {
                if !unit {
                    out.push_str(&mag.to_string());
                    out.push('*');
                }
                out.push('q');
                if e > 1 {
                    out.push('^');
                    out.push_str(&e.to_string());
                }
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Inverse of [`format_zpoly`]; also accepts spaces, a leading `+`, and
/// repeated exponents (which are summed).
pub(crate) fn parse_zpoly(s: &str) -> Result<Vec<BigInt>, ArithError> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(ArithError::Parse("empty polynomial".into()));
    }
    let bad = || ArithError::Parse(format!("malformed polynomial term in {s:?}"));
    let mut out: Vec<BigInt> = Vec::new();
    let bytes = s.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let mut sign = BigInt::one();
        if bytes[i] == b'+' || bytes[i] == b'-' {
            if bytes[i] == b'-' {
                sign = -sign;
            }
            i += 1;
        }
        let start = i;
        while i < bytes.len() && bytes[i] != b'+' && bytes[i] != b'-' {
            i += 1;
        }
        let term = &s[start..i];
        if term.is_empty() {
            return Err(bad());
        }
        let (coeff, exp) = match term.find('q') {
            None => (term.parse::<BigInt>().map_err(|_| bad())?, 0usize),
            Some(pos) => {
                let coeff = match &term[..pos] {
                    "" => BigInt::one(),
                    c => c
                        .strip_suffix('*')
                        .ok_or_else(bad)?
                        .parse::<BigInt>()
                        .map_err(|_| bad())?,
                };
                let exp = match &term[pos + 1..] {
                    "" => 1,
                    e => e
                        .strip_prefix('^')
                        .ok_or_else(bad)?
                        .parse::<usize>()
                        .map_err(|_| bad())?,
                };
                (coeff, exp)
            }
        };
        if out.len() <= exp {
            out.resize(exp + 1, BigInt::zero());
        }
        out[exp] += sign * coeff;
    }
    super::zpoly::trim(&mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_and_parse_agree() {
        let p: Vec<BigInt> = [7, -1, 0, 3].iter().map(|&c| BigInt::from(c)).collect();
        let s = format_zpoly(&p);
        assert_eq!(s, "3*q^3-q+7");
        assert_eq!(parse_zpoly(&s).unwrap(), p);
        assert_eq!(parse_zpoly("- q^2 + q^2").unwrap(), Vec::<BigInt>::new());
        assert!(parse_zpoly("q^").is_err());
        assert!(parse_zpoly("2q").is_err());
    }
}
