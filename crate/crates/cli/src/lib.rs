//! The `ffcount` command line: exact counts, approximations, series,
//! decomposition bounds, collision families and exhaustive checks.

pub mod args;
pub mod output;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::sync::Arc;

use clap::error::ErrorKind;
use clap::{Parser, ValueEnum};
use num_bigint::BigInt;
use thiserror::Error;

use ffcount::exact_arith::QPoly;
use ffcount::ff::{enumeration_budget, FfError, FieldCtx, FqElem, UniPoly};
use ffcount::mv_counts::{
    absirr_exact, approx, count_exact, exact_symbolic, irr_series, powerful_series, p_count, red_exact,
    relirr_exact, Class, CountError, CountQuery, FieldSpec,
};
use ffcount::oracle::{oracle_count, oracle_decomp_census, oracle_mv_decomp, OracleError};
use ffcount::series::{prime_power, smallest_prime_divisor};
use ffcount::uv_counts::{alpha_n, d_n_bracket, tame_intersection, wild_intersection_bounds, UvError};
use ffcount::uv_families::{
    frobenius_family, m_family, ritt_family_first, ritt_family_second, s_family, CollisionFamily, FamilyError,
};

use args::{Cli, Command, CountArgs, DecompArgs, FamilyArgs, FamilyName, OeisArgs, SeriesArgs, VerifyArgs};
use output::{
    CensusRecord, CountRow, DecompRecord, FamilyRecord, IntersectionBound, OeisRow, OutputRecord, Results, SeriesRow,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Budget(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Budget(_) => EXIT_BUDGET,
        }
    }
}

impl From<FfError> for CliError {
    fn from(e: FfError) -> Self {
        match e {
            FfError::Budget { .. } => CliError::Budget(e.to_string()),
            e => CliError::Usage(e.to_string()),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::Field(f) => f.into(),
            e => CliError::Usage(e.to_string()),
        }
    }
}

impl From<FamilyError> for CliError {
    fn from(e: FamilyError) -> Self {
        match e {
            FamilyError::Field(f) => f.into(),
            e => CliError::Usage(e.to_string()),
        }
    }
}

impl From<CountError> for CliError {
    fn from(e: CountError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<UvError> for CliError {
    fn from(e: UvError) -> Self {
        CliError::Usage(e.to_string())
    }
}

/// A finished command: the record and the exit code it implies.
struct Outcome {
    record: OutputRecord,
    code: i32,
}

impl From<OutputRecord> for Outcome {
    fn from(record: OutputRecord) -> Self {
        Outcome { record, code: EXIT_OK }
    }
}

/// Parses `argv` (including the program name), runs the command and writes
/// its output; returns the process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_USAGE
                }
            }
        }
    };
    match dispatch(&cli.command) {
        Ok(outcome) => {
            let _ = write!(out, "{}", outcome.record.render(cli.format));
            outcome.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.code()
        }
    }
}

fn dispatch(cmd: &Command) -> Result<Outcome, CliError> {
    match cmd {
        Command::Count(a) => count(a).map(Outcome::from),
        Command::Approx(a) => approximate(a).map(Outcome::from),
        Command::Series(a) => series(a).map(Outcome::from),
        Command::Decomp(a) => decomp(a).map(Outcome::from),
        Command::Families(a) => families(a).map(Outcome::from),
        Command::Census(a) => census(a).map(Outcome::from),
        Command::Verify(a) => verify(a),
        Command::OeisCheck(a) => oeis_check(a),
    }
}

fn query_map(pairs: &[(&str, Option<String>)]) -> BTreeMap<String, String> {
    pairs.iter().filter_map(|(k, v)| v.clone().map(|v| (k.to_string(), v))).collect()
}

fn parse_class(s: &str) -> Result<Class, CliError> {
    s.parse::<Class>().map_err(|e| {
        let names: Vec<&str> = Class::ALL.iter().map(|c| c.name()).collect();
        CliError::Usage(format!("{e}; expected one of {}", names.join(", ")))
    })
}

fn field_of(q: u64) -> Result<Arc<FieldCtx>, CliError> {
    let (p, d) = prime_power(q).ok_or_else(|| CliError::Usage(format!("{q} is not a prime power")))?;
    Ok(FieldCtx::new(p as u32, d)?)
}

fn count_query(a: &CountArgs) -> Result<CountQuery, CliError> {
    let field = match a.q {
        Some(q) => FieldSpec::Size(q),
        None => FieldSpec::Symbolic,
    };
    Ok(CountQuery::new(parse_class(&a.class)?, a.r, a.n, a.s, field)?)
}

fn base_row(q: &CountQuery) -> CountRow {
    CountRow {
        r: q.r.to_string(),
        n: q.n.to_string(),
        q: match q.field {
            FieldSpec::Size(v) => v.to_string(),
            FieldSpec::Symbolic => "q".into(),
        },
        s: q.s.map(|s| s.to_string()).unwrap_or_default(),
        class: q.class.name().into(),
        ..CountRow::default()
    }
}

fn count_args_map(a: &CountArgs) -> BTreeMap<String, String> {
    query_map(&[
        ("class", Some(a.class.clone())),
        ("r", Some(a.r.to_string())),
        ("n", Some(a.n.to_string())),
        ("s", a.s.map(|s| s.to_string())),
        ("q", Some(a.q.map(|q| q.to_string()).unwrap_or_else(|| "symbolic".into()))),
    ])
}

fn count(a: &CountArgs) -> Result<OutputRecord, CliError> {
    let query = count_query(a)?;
    let mut row = base_row(&query);
    match (query.class, query.field) {
        (Class::DecomposableMv, FieldSpec::Size(q)) => {
            let v = oracle_mv_decomp(query.r as usize, query.n, &field_of(q)?, enumeration_budget())?;
            row.exact = v.to_string();
            row.oracle = v.to_string();
        }
        _ => row.exact = count_exact(&query)?.to_string(),
    }
    Ok(OutputRecord::new("count", count_args_map(a), Results::Counts { rows: vec![row] }))
}

fn approximate(a: &CountArgs) -> Result<OutputRecord, CliError> {
    let query = count_query(a)?;
    let rep = approx(&query)?;
    let show = |x: &Option<ffcount::mv_counts::Quantity>| x.as_ref().map(|v| v.to_string()).unwrap_or_default();
    let row = CountRow {
        exact: show(&rep.exact),
        main_term: show(&rep.main_term),
        bound: show(&rep.rel_error_bound),
        case: Some(rep.case.into()),
        closed_form: rep.closed_form.as_ref().map(|v| v.to_string()),
        gap_exponent: rep.gap_exponent.map(|g| g.to_string()),
        within_bound: rep.within_bound.map(|b| b.to_string()),
        ..base_row(&query)
    };
    Ok(OutputRecord::new("approx", count_args_map(a), Results::Counts { rows: vec![row] }))
}

fn series(a: &SeriesArgs) -> Result<OutputRecord, CliError> {
    let class = parse_class(&a.class)?;
    CountQuery::new(class, a.r, 0, a.s, a.q.map(FieldSpec::Size).unwrap_or(FieldSpec::Symbolic))?;
    let (r, order) = (a.r, a.max_n as usize);
    let coeffs: Vec<QPoly> = match class {
        Class::Irreducible => irr_series(r, order),
        Class::Reducible => (0..=a.max_n).map(|n| red_exact(r, n)).collect(),
        Class::Powerful => powerful_series(r, order, a.s.unwrap() as usize),
        Class::Powerfree => powerful_series(r, order, a.s.unwrap() as usize)
            .iter()
            .enumerate()
            .map(|(n, qn)| &p_count(r, n as u32) - qn)
            .collect(),
        Class::RelIrreducible => (0..=a.max_n).map(|n| relirr_exact(r, n)).collect(),
        Class::AbsIrreducible => (0..=a.max_n).map(|n| absirr_exact(r, n)).collect(),
        Class::DecomposableMv => {
            return Err(CliError::Usage("decomposable_mv has no generating series".into()));
        }
    };
    let coefficients = coeffs
        .iter()
        .enumerate()
        .map(|(n, c)| SeriesRow {
            n: n.to_string(),
            value: match a.q {
                Some(q) => c.eval(&BigInt::from(q)).to_string(),
                None => c.to_string(),
            },
        })
        .collect();
    let query = query_map(&[
        ("class", Some(a.class.clone())),
        ("r", Some(a.r.to_string())),
        ("max_n", Some(a.max_n.to_string())),
        ("s", a.s.map(|s| s.to_string())),
        ("q", Some(a.q.map(|q| q.to_string()).unwrap_or_else(|| "symbolic".into()))),
    ]);
    Ok(OutputRecord::new("series", query, Results::Series { coefficients }))
}

fn decomp_map(a: &DecompArgs) -> BTreeMap<String, String> {
    query_map(&[("n", Some(a.n.to_string())), ("q", Some(a.q.to_string()))])
}

fn decomp(a: &DecompArgs) -> Result<OutputRecord, CliError> {
    let (n, q) = (a.n as u64, a.q);
    let bracket = d_n_bracket(n, q)?;
    let (p, _) = prime_power(q).expect("checked by the bracket");
    let ell = smallest_prime_divisor(n);
    let m = n / ell;
    let mut intersections = Vec::new();
    if m != ell {
        let left_degrees = [ell.to_string(), m.to_string()];
        if n % p != 0 {
            intersections.push(IntersectionBound {
                left_degrees,
                exact: Some(tame_intersection(ell, m, q)?.to_string()),
                lower: None,
                upper: None,
                case: "tame".into(),
            });
        } else {
            let b = wild_intersection_bounds(ell, m, q)?;
            intersections.push(IntersectionBound {
                left_degrees,
                exact: None,
                lower: Some(b.lower.to_string()),
                upper: Some(b.upper.to_string()),
                case: b.case_label.clone(),
            });
        }
    }
    let record = DecompRecord {
        n: n.to_string(),
        q: q.to_string(),
        alpha: alpha_n(n, q)?.to_string(),
        exact: bracket.exact.as_ref().map(|e| e.to_string()),
        lower: bracket.lower.to_string(),
        upper: bracket.upper.to_string(),
        case: bracket.case_label.clone(),
        intersections,
    };
    Ok(OutputRecord::new("decomp", decomp_map(a), Results::Decomp(record)))
}

fn census(a: &DecompArgs) -> Result<OutputRecord, CliError> {
    let c = oracle_decomp_census(a.n, &field_of(a.q)?, enumeration_budget())?;
    let map = |pairs: Vec<(&str, String)>| pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect();
    let record = CensusRecord {
        n: c.n.to_string(),
        q: c.q.to_string(),
        field: c.field.clone(),
        total: c.total.to_string(),
        splits: c
            .splits
            .iter()
            .map(|s| {
                map(vec![
                    ("left_degree", s.left_degree.to_string()),
                    ("right_degree", s.right_degree.to_string()),
                    ("pairs", s.pairs.to_string()),
                    ("distinct", s.distinct.to_string()),
                    ("max_multiplicity", s.max_multiplicity.to_string()),
                ])
            })
            .collect(),
        intersections: c
            .intersections
            .iter()
            .map(|i| {
                map(vec![
                    ("left_degrees", format!("{}x{}", i.left_degrees.0, i.left_degrees.1)),
                    ("count", i.count.to_string()),
                    ("non_frobenius", i.non_frobenius.to_string()),
                ])
            })
            .collect(),
        histogram: c.histogram.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect(),
        frobenius_collisions: c.frobenius_collisions.to_string(),
        inclusion_exclusion: c.inclusion_exclusion.to_string(),
    };
    Ok(OutputRecord::new("census", decomp_map(a), Results::Census(record)))
}

struct Params<'a> {
    ctx: &'a Arc<FieldCtx>,
    map: BTreeMap<String, String>,
}

impl Params<'_> {
    fn raw(&self, key: &str) -> Result<&str, CliError> {
        self.map
            .get(key)
            .map(String::as_str)
            .ok_or_else(|| CliError::Usage(format!("missing parameter '{key}'")))
    }

    fn int(&self, key: &str) -> Result<u32, CliError> {
        let v = self.raw(key)?;
        v.parse().map_err(|_| CliError::Usage(format!("parameter '{key}' must be a nonnegative integer, got '{v}'")))
    }

    fn poly(&self, key: &str) -> Result<UniPoly, CliError> {
        Ok(UniPoly::parse(self.ctx, self.raw(key)?)?)
    }

    fn elem(&self, key: &str) -> Result<FqElem, CliError> {
        let p = self.poly(key)?;
        if p.degree().unwrap_or(0) > 0 {
            return Err(CliError::Usage(format!("parameter '{key}' must be a field element")));
        }
        Ok(p.coeff(0))
    }

    fn flag(&self, key: &str) -> Result<bool, CliError> {
        match self.raw(key)? {
            "1" | "true" => Ok(true),
            "0" | "false" => Ok(false),
            v => Err(CliError::Usage(format!("parameter '{key}' must be 0 or 1, got '{v}'"))),
        }
    }
}

/// Splits on commas outside parentheses.
fn split_top_level(text: &str) -> Vec<&str> {
    let (mut out, mut depth, mut start) = (Vec::new(), 0i32, 0);
    for (i, ch) in text.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&text[start..]);
    out
}

fn parse_params<'a>(ctx: &'a Arc<FieldCtx>, text: &str, allowed: &[&str]) -> Result<Params<'a>, CliError> {
    let mut map = BTreeMap::new();
    for item in split_top_level(text).into_iter().map(str::trim).filter(|s| !s.is_empty()) {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("parameter '{item}' is not key=value")))?;
        if !allowed.contains(&k) {
            return Err(CliError::Usage(format!("unknown parameter '{k}'; expected {}", allowed.join(", "))));
        }
        map.insert(k.to_string(), v.to_string());
    }
    Ok(Params { ctx, map })
}

fn families(a: &FamilyArgs) -> Result<OutputRecord, CliError> {
    let ctx = field_of(a.q)?;
    let fam: CollisionFamily = match a.family {
        FamilyName::Ritt1 => {
            let p = parse_params(&ctx, &a.params, &["l", "k", "w", "a"])?;
            ritt_family_first(p.int("l")?, p.int("k")?, &p.poly("w")?, p.elem("a")?)?
        }
        FamilyName::Ritt2 => {
            let p = parse_params(&ctx, &a.params, &["l", "m", "z", "a"])?;
            ritt_family_second(&ctx, p.int("l")?, p.int("m")?, p.elem("z")?, p.elem("a")?)?
        }
        FamilyName::Frobenius => {
            let p = parse_params(&ctx, &a.params, &["h"])?;
            frobenius_family(&p.poly("h")?)?
        }
        FamilyName::S => {
            let p = parse_params(&ctx, &a.params, &["u", "s", "eps", "m", "r"])?;
            s_family(&ctx, p.elem("u")?, p.elem("s")?, p.flag("eps")?, p.int("m")?, p.int("r")?)?
        }
        FamilyName::M => {
            let p = parse_params(&ctx, &a.params, &["a", "b", "m", "r"])?;
            m_family(&ctx, p.elem("a")?, p.elem("b")?, p.int("m")?, p.int("r")?)?
        }
    };
    let verified = match fam.verify() {
        Ok(()) => "true".to_string(),
        Err(e) => format!("false: {e}"),
    };
    let record = FamilyRecord {
        family: fam.label.to_string(),
        field: ctx.to_string(),
        f: fam.f.to_string(),
        decompositions: fam.decompositions.iter().map(|d| [d.g.to_string(), d.h.to_string()]).collect(),
        verified,
    };
    let query = query_map(&[
        ("family", a.family.to_possible_value().map(|v| v.get_name().to_string())),
        ("q", Some(a.q.to_string())),
        ("params", Some(a.params.clone())),
    ]);
    Ok(OutputRecord::new("families", query, Results::Family(record)))
}

fn verify(a: &VerifyArgs) -> Result<Outcome, CliError> {
    let query = CountQuery::new(parse_class(&a.class)?, a.r, a.n, a.s, FieldSpec::Size(a.q))?;
    let formula = exact_symbolic(&query)?
        .eval_integer(&BigInt::from(a.q))
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let oracle = oracle_count(query.class, a.r as usize, a.n, &field_of(a.q)?, a.s, enumeration_budget())?;
    let equal = formula == oracle;
    let row = CountRow {
        exact: formula.to_string(),
        oracle: oracle.to_string(),
        status: Some(if equal { "equal" } else { "mismatch" }.into()),
        ..base_row(&query)
    };
    let map = query_map(&[
        ("class", Some(a.class.clone())),
        ("r", Some(a.r.to_string())),
        ("n", Some(a.n.to_string())),
        ("s", a.s.map(|s| s.to_string())),
        ("q", Some(a.q.to_string())),
    ]);
    Ok(Outcome {
        record: OutputRecord::new("verify", map, Results::Counts { rows: vec![row] }),
        code: if equal { EXIT_OK } else { EXIT_MISMATCH },
    })
}

/// Reads `n value` pairs, one per line; blank lines and `#` comments are skipped.
fn read_table(text: &str) -> Result<Vec<(u32, BigInt)>, CliError> {
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        let parsed = match (parts.next(), parts.next(), parts.next()) {
            (Some(n), Some(v), None) => n.parse::<u32>().ok().zip(v.parse::<BigInt>().ok()),
            _ => None,
        };
        let (n, v) = parsed.ok_or_else(|| CliError::Usage(format!("line {}: expected 'n value', got '{line}'", i + 1)))?;
        rows.push((n, v));
    }
    Ok(rows)
}

fn oeis_check(a: &OeisArgs) -> Result<Outcome, CliError> {
    field_of(a.q)?;
    let text = std::fs::read_to_string(&a.file)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", a.file.display())))?;
    let table = read_table(&text)?;
    let irr = irr_series(a.r, a.max_n as usize);
    let q = BigInt::from(a.q);
    let mut rows = Vec::new();
    let mut mismatch = false;
    for (n, expected) in table.into_iter().filter(|(n, _)| *n <= a.max_n) {
        let computed = irr[n as usize].eval_integer(&q).map_err(|e| CliError::Usage(e.to_string()))?;
        let ok = computed == expected;
        mismatch |= !ok;
        rows.push(OeisRow {
            n: n.to_string(),
            expected: expected.to_string(),
            computed: computed.to_string(),
            status: if ok { "ok" } else { "mismatch" }.into(),
        });
    }
    if rows.is_empty() {
        return Err(CliError::Usage(format!("{} has no entries with n <= {}", a.file.display(), a.max_n)));
    }
    let map = query_map(&[
        ("file", Some(a.file.display().to_string())),
        ("r", Some(a.r.to_string())),
        ("q", Some(a.q.to_string())),
        ("max_n", Some(a.max_n.to_string())),
    ]);
    Ok(Outcome {
        record: OutputRecord::new("oeis-check", map, Results::Oeis { rows }),
        code: if mismatch { EXIT_MISMATCH } else { EXIT_OK },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splits_outside_parentheses() {
        assert_eq!(split_top_level("a=(0,1),b=2"), vec!["a=(0,1)", "b=2"]);
        assert_eq!(split_top_level(""), vec![""]);
        assert_eq!(split_top_level("h=x^2+(1,1)*x"), vec!["h=x^2+(1,1)*x"]);
    }

    #[test]
    fn table_lines() {
        let rows = read_table("# header\n\n1 6\n2 35\n").unwrap();
        assert_eq!(rows, vec![(1, BigInt::from(6)), (2, BigInt::from(35))]);
        assert!(read_table("1 x\n").is_err());
    }
}
