use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::args::Format;

pub const SCHEMA_VERSION: &str = "1";

/// One command's result, ready to print.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct OutputRecord {
    pub schema_version: String,
    pub command: String,
    pub query: BTreeMap<String, String>,
    pub results: Results,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Results {
    Counts { rows: Vec<CountRow> },
    Series { coefficients: Vec<SeriesRow> },
    Decomp(DecompRecord),
    Family(FamilyRecord),
    Census(CensusRecord),
    Oeis { rows: Vec<OeisRow> },
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq, Default)]
pub struct CountRow {
    pub r: String,
    pub n: String,
    pub q: String,
    pub s: String,
    pub class: String,
    pub exact: String,
    pub main_term: String,
    pub bound: String,
    pub oracle: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub case: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closed_form: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gap_exponent: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub within_bound: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub status: Option<String>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct SeriesRow {
    pub n: String,
    pub value: String,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct DecompRecord {
    pub n: String,
    pub q: String,
    pub alpha: String,
    pub exact: Option<String>,
    pub lower: String,
    pub upper: String,
    pub case: String,
    pub intersections: Vec<IntersectionBound>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct IntersectionBound {
    pub left_degrees: [String; 2],
    pub exact: Option<String>,
    pub lower: Option<String>,
    pub upper: Option<String>,
    pub case: String,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct FamilyRecord {
    pub family: String,
    pub field: String,
    pub f: String,
    pub decompositions: Vec<[String; 2]>,
    pub verified: String,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct CensusRecord {
    pub n: String,
    pub q: String,
    pub field: String,
    pub total: String,
    pub splits: Vec<BTreeMap<String, String>>,
    pub intersections: Vec<BTreeMap<String, String>>,
    pub histogram: BTreeMap<String, String>,
    pub frobenius_collisions: String,
    pub inclusion_exclusion: String,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct OeisRow {
    pub n: String,
    pub expected: String,
    pub computed: String,
    pub status: String,
}

const COUNT_COLUMNS: [&str; 9] = ["r", "n", "q", "s", "class", "exact", "main_term", "bound", "oracle"];

impl CountRow {
    fn cells(&self) -> [&str; 9] {
        [&self.r, &self.n, &self.q, &self.s, &self.class, &self.exact, &self.main_term, &self.bound, &self.oracle]
    }
}

fn csv_cell(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv_line(out: &mut String, cells: &[&str]) {
    let line: Vec<String> = cells.iter().map(|c| csv_cell(c)).collect();
    let _ = writeln!(out, "{}", line.join(","));
}

fn opt(s: &Option<String>) -> &str {
    s.as_deref().unwrap_or("")
}

impl OutputRecord {
    pub fn new(command: &str, query: BTreeMap<String, String>, results: Results) -> Self {
        OutputRecord { schema_version: SCHEMA_VERSION.into(), command: command.into(), query, results }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("records serialize") + "\n",
            Format::Csv => self.csv(),
            Format::Plain => self.plain(),
        }
    }

    fn csv(&self) -> String {
        let mut out = String::new();
        match &self.results {
            Results::Counts { rows } => {
                csv_line(&mut out, &COUNT_COLUMNS);
                for row in rows {
                    csv_line(&mut out, &row.cells());
                }
            }
            Results::Series { coefficients } => {
                csv_line(&mut out, &["n", "value"]);
                for c in coefficients {
                    csv_line(&mut out, &[&c.n, &c.value]);
                }
            }
            Results::Decomp(d) => {
                csv_line(&mut out, &["n", "q", "alpha", "exact", "lower", "upper", "case"]);
                csv_line(&mut out, &[&d.n, &d.q, &d.alpha, opt(&d.exact), &d.lower, &d.upper, &d.case]);
            }
            Results::Family(f) => {
                csv_line(&mut out, &["family", "field", "f", "g", "h", "verified"]);
                for [g, h] in &f.decompositions {
                    csv_line(&mut out, &[&f.family, &f.field, &f.f, g, h, &f.verified]);
                }
            }
            Results::Census(c) => {
                csv_line(&mut out, &["n", "q", "k", "c_k"]);
                for (k, v) in &c.histogram {
                    csv_line(&mut out, &[&c.n, &c.q, k, v]);
                }
            }
            Results::Oeis { rows } => {
                csv_line(&mut out, &["n", "expected", "computed", "status"]);
                for r in rows {
                    csv_line(&mut out, &[&r.n, &r.expected, &r.computed, &r.status]);
                }
            }
        }
        out
    }

    fn plain(&self) -> String {
        let mut out = String::new();
        match &self.results {
            Results::Counts { rows } if self.command == "count" => {
                for row in rows {
                    let _ = writeln!(out, "{}", row.exact);
                }
            }
            Results::Counts { rows } => {
                for row in rows {
                    for (k, v) in COUNT_COLUMNS.iter().zip(row.cells()) {
                        if !v.is_empty() {
                            let _ = writeln!(out, "{k}: {v}");
                        }
                    }
                    for (k, v) in [
                        ("case", &row.case),
                        ("closed_form", &row.closed_form),
                        ("gap_exponent", &row.gap_exponent),
                        ("within_bound", &row.within_bound),
                        ("status", &row.status),
                    ] {
                        if let Some(v) = v {
                            let _ = writeln!(out, "{k}: {v}");
                        }
                    }
                }
            }
            Results::Series { coefficients } => {
                for c in coefficients {
                    let _ = writeln!(out, "{} {}", c.n, c.value);
                }
            }
            Results::Decomp(d) => {
                let _ = writeln!(out, "n: {}\nq: {}\nalpha: {}", d.n, d.q, d.alpha);
                if let Some(e) = &d.exact {
                    let _ = writeln!(out, "exact: {e}");
                }
                let _ = writeln!(out, "bracket: [{}, {}] ({})", d.lower, d.upper, d.case);
                for i in &d.intersections {
                    let _ = write!(out, "intersection {}x{}:", i.left_degrees[0], i.left_degrees[1]);
                    if let Some(e) = &i.exact {
                        let _ = write!(out, " exact {e}");
                    }
                    if i.lower.is_some() || i.upper.is_some() {
                        let _ = write!(out, " [{}, {}]", opt(&i.lower), opt(&i.upper));
                    }
                    let _ = writeln!(out, " ({})", i.case);
                }
            }
            Results::Family(f) => {
                let _ = writeln!(out, "family: {}\nfield: {}\nf = {}", f.family, f.field, f.f);
                for [g, h] in &f.decompositions {
                    let _ = writeln!(out, "  ({g}) o ({h})");
                }
                let _ = writeln!(out, "verified: {}", f.verified);
            }
            Results::Census(c) => {
                let _ = writeln!(out, "n: {}\nfield: {}\ntotal: {}", c.n, c.field, c.total);
                for s in &c.splits {
                    let _ = writeln!(
                        out,
                        "split {}x{}: {} distinct of {} pairs",
                        s["left_degree"], s["right_degree"], s["distinct"], s["pairs"]
                    );
                }
                for i in &c.intersections {
                    let _ = writeln!(
                        out,
                        "intersection {}: {} ({} outside F[x^p])",
                        i["left_degrees"], i["count"], i["non_frobenius"]
                    );
                }
                for (k, v) in &c.histogram {
                    let _ = writeln!(out, "c_{k}: {v}");
                }
                let _ = writeln!(out, "frobenius collisions: {}", c.frobenius_collisions);
                let _ = writeln!(out, "inclusion-exclusion: {}", c.inclusion_exclusion);
            }
            Results::Oeis { rows } => {
                for r in rows {
                    let _ = writeln!(out, "{} {} {} {}", r.n, r.expected, r.computed, r.status);
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_quotes_cells_with_commas() {
        assert_eq!(csv_cell("plain"), "plain");
        assert_eq!(csv_cell("(q^2-q)/(2),x"), "\"(q^2-q)/(2),x\"");
        assert_eq!(csv_cell("say \"hi\""), "\"say \"\"hi\"\"\"");
    }

    #[test]
    fn count_header_matches_columns() {
        let mut out = String::new();
        csv_line(&mut out, &COUNT_COLUMNS);
        assert_eq!(out, "r,n,q,s,class,exact,main_term,bound,oracle\n");
    }
}
