//! Text form of polynomials: `x^4+x^2+2*x+1`, `(1,1)*x^2+x`,
//! `x1^2*x2+x2+1`.

use super::field::{FieldCtx, FqElem};
use super::FfError;

/// Renders `coef * mono`, where `mono` is the already formatted monomial
/// (empty for the constant term).
pub(crate) fn format_term(ctx: &FieldCtx, coef: FqElem, mono: &str) -> String {
    if mono.is_empty() {
        return ctx.format_elem(coef);
    }
    if coef == FqElem::ONE {
        mono.to_string()
    } else {
        format!("{}*{}", ctx.format_elem(coef), mono)
    }
}

pub(crate) fn format_power(var: &str, e: u32) -> String {
    match e {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{e}"),
    }
}

/// Parses a sum of terms. `vars` lists the accepted variable names; each
/// term becomes `(coefficient, exponent vector)`.
pub(crate) fn parse_terms(
    ctx: &FieldCtx,
    text: &str,
    vars: &[String],
) -> Result<Vec<(FqElem, Vec<u32>)>, FfError> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(FfError::Parse("empty polynomial".into()));
    }
    let mut terms = Vec::new();
    let mut depth = 0;
    let mut start = 0;
    let bytes = s.as_bytes();
    let mut negate = false;
    for i in 0..=bytes.len() {
        let at_end = i == bytes.len();
        let c = if at_end { b'+' } else { bytes[i] };
        match c {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'+' | b'-' if depth == 0 => {
                let piece = &s[start..i];
                if piece.is_empty() {
                    if !(i == 0 || at_end) {
                        return Err(FfError::Parse(format!("empty term in '{text}'")));
                    }
                } else {
                    let (coef, exps) = parse_term(ctx, piece, vars)?;
                    let coef = if negate { ctx.neg(coef) } else { coef };
                    terms.push((coef, exps));
                }
                if at_end && piece.is_empty() && i != 0 {
                    return Err(FfError::Parse(format!("dangling sign in '{text}'")));
                }
                negate = c == b'-';
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(FfError::Parse(format!("unbalanced parentheses in '{text}'")));
    }
    Ok(terms)
}

fn parse_term(ctx: &FieldCtx, piece: &str, vars: &[String]) -> Result<(FqElem, Vec<u32>), FfError> {
    let mut coef = FqElem::ONE;
    let mut exps = vec![0u32; vars.len()];
    for factor in piece.split('*') {
        if factor.is_empty() {
            return Err(FfError::Parse(format!("empty factor in '{piece}'")));
        }
        if factor.starts_with('(') {
            let inner = factor
                .strip_prefix('(')
                .and_then(|f| f.strip_suffix(')'))
                .ok_or_else(|| FfError::Parse(format!("bad coefficient '{factor}'")))?;
            let coords = inner
                .split(',')
                .map(|c| c.parse::<u32>().map_err(|_| FfError::Parse(format!("bad coordinate '{c}'"))))
                .collect::<Result<Vec<_>, _>>()?;
            coef = ctx.mul(coef, ctx.from_coords(&coords)?);
        } else if factor.as_bytes()[0].is_ascii_digit() {
            let n: i64 = factor
                .parse()
                .map_err(|_| FfError::Parse(format!("bad integer '{factor}'")))?;
            coef = ctx.mul(coef, ctx.from_int(n));
        } else {
            let (name, e) = match factor.split_once('^') {
                Some((n, e)) => (
                    n,
                    e.parse::<u32>().map_err(|_| FfError::Parse(format!("bad exponent in '{factor}'")))?,
                ),
                None => (factor, 1),
            };
            let idx = vars
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| FfError::Parse(format!("unknown variable '{name}'")))?;
            exps[idx] += e;
        }
    }
    Ok((coef, exps))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_terms() {
        let f = FieldCtx::new(3, 1).unwrap();
        let vars = vec!["x".to_string()];
        let t = parse_terms(&f, "x^4 + 2*x - 1", &vars).unwrap();
        assert_eq!(t, vec![(FqElem(1), vec![4]), (FqElem(2), vec![1]), (FqElem(2), vec![0])]);
        assert!(parse_terms(&f, "y", &vars).is_err());
        assert!(parse_terms(&f, "x+", &vars).is_err());
        assert!(parse_terms(&f, "", &vars).is_err());
    }

    #[test]
    fn parses_tuples() {
        let f = FieldCtx::new(2, 2).unwrap();
        let vars = vec!["x1".to_string(), "x2".to_string()];
        let t = parse_terms(&f, "(0,1)*x1^2*x2+x2", &vars).unwrap();
        assert_eq!(t, vec![(FqElem(2), vec![2, 1]), (FqElem(1), vec![0, 1])]);
    }
}
