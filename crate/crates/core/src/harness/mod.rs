//! Replay of the published class-group tables.
//!
//! Each fixture row names the primes of a radicand, the claimed type of
//! `C_{k,5}` and, for two ideals, the coordinate vectors printed for the ideal
//! and for its fifth power. Vectors are opaque: only "zero" and "nonzero" are
//! interpreted. Rows are checked for the congruences of their case, for the
//! order-5 vector logic, for the case the classifier assigns, and for the
//! non-residue hypotheses. An oracle, when configured, is asked for the class
//! group itself.

pub mod oracle;

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::classifier::{
    self, predicted_structure, CheckStatus, ClassData, DataSource, RadicandCase,
};
use crate::error::{Error, Result};
use oracle::{OracleAnswer, OracleClient, OracleOutcome, OracleRequest};

pub const FIXTURE_HEADER: [&str; 12] = [
    "table",
    "p",
    "q",
    "l",
    "e",
    "e_assumed",
    "type",
    "col_names",
    "vec1",
    "vec2",
    "vec1_pow5",
    "vec2_pow5",
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub table: u8,
    /// 1-based line in the fixture file.
    pub line: u64,
    pub p: u64,
    pub q: Option<u64>,
    pub l: Option<u64>,
    pub e: u32,
    /// The exponent was not printed and `e = 1` is assumed.
    pub e_assumed: bool,
    pub claimed_type: String,
    pub col_names: Vec<String>,
    pub ideal_columns: Vec<Vec<i64>>,
    pub fifth_power_columns: Vec<Vec<i64>>,
}

impl TableRow {
    /// `5^e·p`, `p^e·q` or `p^e` for tables 1, 2, 3.
    pub fn radicand(&self) -> Option<u64> {
        let pe = self.p.checked_pow(self.e)?;
        match self.table {
            1 => 5u64.checked_pow(self.e)?.checked_mul(self.p),
            2 => pe.checked_mul(self.q?),
            _ => Some(pe),
        }
    }

    pub fn expected_case(&self) -> u8 {
        self.table
    }

    /// Elementary divisors of the claimed type, e.g. `(5,5)` → `[5, 5]`.
    pub fn claimed_divisors(&self) -> Option<Vec<u64>> {
        let inner = self
            .claimed_type
            .trim()
            .strip_prefix('(')?
            .strip_suffix(')')?;
        inner.split(',').map(|t| t.trim().parse().ok()).collect()
    }
}

fn parse_vector(cell: &str) -> std::result::Result<Vec<i64>, String> {
    let inner = cell
        .trim()
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| format!("vector `{cell}` must be bracketed"))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(';')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| format!("bad vector entry `{t}`"))
        })
        .collect()
}

fn parse_opt(cell: &str, name: &str) -> std::result::Result<Option<u64>, String> {
    let c = cell.trim();
    if c.is_empty() {
        return Ok(None);
    }
    c.parse()
        .map(Some)
        .map_err(|_| format!("{name} `{c}` is not a nonnegative integer"))
}

fn parse_record(rec: &csv::StringRecord, line: u64) -> std::result::Result<TableRow, String> {
    if rec.len() != FIXTURE_HEADER.len() {
        return Err(format!(
            "expected {} fields, found {}",
            FIXTURE_HEADER.len(),
            rec.len()
        ));
    }
    let table = match rec[0].trim() {
        "1" => 1,
        "2" => 2,
        "3" => 3,
        t => return Err(format!("table `{t}` must be 1, 2 or 3")),
    };
    let p = parse_opt(&rec[1], "p")?.ok_or("p is required")?;
    let q = parse_opt(&rec[2], "q")?;
    let l = parse_opt(&rec[3], "l")?;
    if table == 2 && q.is_none() {
        return Err("table 2 rows need q".into());
    }
    if table != 3 && l.is_none() {
        return Err(format!("table {table} rows need l"));
    }
    let e = parse_opt(&rec[4], "e")?.unwrap_or(1);
    if !(1..=4).contains(&e) {
        return Err(format!("exponent e = {e} must be in 1..=4"));
    }
    let e_assumed = match rec[5].trim() {
        "true" => true,
        "false" | "" => false,
        t => return Err(format!("e_assumed `{t}` must be true or false")),
    };
    let col_names: Vec<String> = rec[7].split(';').map(|s| s.trim().to_string()).collect();
    if col_names.len() != 2 {
        return Err("col_names must name two ideals".into());
    }
    Ok(TableRow {
        table,
        line,
        p,
        q,
        l,
        e: e as u32,
        e_assumed,
        claimed_type: rec[6].trim().to_string(),
        col_names,
        ideal_columns: vec![parse_vector(&rec[8])?, parse_vector(&rec[9])?],
        fifth_power_columns: vec![parse_vector(&rec[10])?, parse_vector(&rec[11])?],
    })
}

/// Read a fixture CSV. Malformed rows are errors naming their line.
pub fn load_table(path: impl AsRef<Path>) -> Result<Vec<TableRow>> {
    let path = path.as_ref();
    let shown = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Fixture {
        path: shown.clone(),
        line: 0,
        message: e.to_string(),
    })?;
    let fail = |line: u64, message: String| Error::Fixture {
        path: shown.clone(),
        line,
        message,
    };
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut rdr = csv::ReaderBuilder::new()
        .flexible(true)
        .from_reader(text.as_bytes());
    let header = rdr.headers().map_err(|e| fail(1, e.to_string()))?.clone();
    if header.iter().map(str::trim).ne(FIXTURE_HEADER) {
        return Err(fail(
            1,
            format!("header must be `{}`", FIXTURE_HEADER.join(",")),
        ));
    }
    let mut rows = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            fail(line, e.to_string())
        })?;
        let line = rec.position().map_or(0, |p| p.line());
        if rec.iter().all(|c| c.trim().is_empty()) {
            continue;
        }
        rows.push(parse_record(&rec, line).map_err(|m| fail(line, m))?);
    }
    Ok(rows)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Flag,
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Flag => "FLAG",
            Status::Skip => "SKIP",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

impl Check {
    fn new(name: &str, ok: bool, detail: String) -> Self {
        Check {
            name: name.to_string(),
            status: if ok { Status::Pass } else { Status::Fail },
            detail,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowReport {
    pub table: u8,
    pub line: u64,
    pub p: u64,
    pub q: Option<u64>,
    pub l: Option<u64>,
    pub radicand: Option<u64>,
    /// Echoed from the fixture; it is ground truth, not checked here.
    pub claimed_type: String,
    pub checks: Vec<Check>,
    /// Raw payload of a malformed oracle reply, if any.
    pub oracle_protocol_error: Option<String>,
}

impl RowReport {
    pub fn status(&self) -> Status {
        let has = |s| self.checks.iter().any(|c| c.status == s);
        if has(Status::Fail) {
            Status::Fail
        } else if has(Status::Flag) {
            Status::Flag
        } else {
            Status::Pass
        }
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Checks whose name starts with `prefix`.
    pub fn checks_named<'a>(&'a self, prefix: &'a str) -> impl Iterator<Item = &'a Check> + 'a {
        self.checks
            .iter()
            .filter(move |c| c.name.starts_with(prefix))
    }
}

fn congruence_check(row: &TableRow) -> Check {
    let p = row.p;
    let mut fails = Vec::new();
    let mut facts = vec![format!("p ≡ {} (mod 25)", p % 25)];
    if row.table != 3 {
        if p % 5 != 4 {
            fails.push(format!("p = {p} is not ≡ -1 (mod 5)"));
        }
        if p % 25 == 24 {
            fails.push(format!("p = {p} ≡ -1 (mod 25)"));
        }
    } else if p % 25 != 24 {
        fails.push(format!("p = {p} is not ≡ -1 (mod 25)"));
    }
    if row.table == 2 {
        let q = row.q.unwrap_or(0);
        facts.push(format!("q ≡ {} (mod 25)", q % 25));
        if !matches!(q % 5, 2 | 3) {
            fails.push(format!("q = {q} is not ≡ ±2 (mod 5)"));
        }
        if matches!(q % 25, 7 | 18) {
            fails.push(format!("q = {q} ≡ ±7 (mod 25)"));
        }
        let n25 = (crate::nt::pow_mod(p, row.e as u64, 25) * (q % 25)) % 25;
        facts.push(format!("p^e·q ≡ {n25} (mod 25)"));
        if !crate::splitting::is_second_kind_residue(n25) {
            fails.push(format!("p^e·q ≡ {n25} (mod 25) is not ±1, ±7"));
        }
    }
    let ok = fails.is_empty();
    Check::new(
        "congruence",
        ok,
        if ok {
            facts.join(", ")
        } else {
            fails.join("; ")
        },
    )
}

fn vector_checks(row: &TableRow) -> [Check; 2] {
    let mut shape_fails = Vec::new();
    let mut order_fails = Vec::new();
    for (i, (v, v5)) in row
        .ideal_columns
        .iter()
        .zip(&row.fifth_power_columns)
        .enumerate()
    {
        let name = row.col_names.get(i).map_or("?", String::as_str);
        if v.len() != v5.len() {
            shape_fails.push(format!(
                "{name}: {} coordinates but {name}^5 has {}",
                v.len(),
                v5.len()
            ));
        }
        if v.iter().all(|&x| x == 0) {
            order_fails.push(format!("{name} has the zero vector (principal)"));
        }
        if v5.iter().any(|&x| x != 0) {
            order_fails.push(format!("{name}^5 has a nonzero vector"));
        }
    }
    let shape_ok = shape_fails.is_empty();
    let order_ok = order_fails.is_empty();
    [
        Check::new(
            "vector-shape",
            shape_ok,
            if shape_ok {
                "ideal and fifth-power vectors agree in length".into()
            } else {
                shape_fails.join("; ")
            },
        ),
        Check::new(
            "order-5",
            order_ok,
            if order_ok {
                "both classes nontrivial with trivial fifth power".into()
            } else {
                order_fails.join("; ")
            },
        ),
    ]
}

fn roles_match(row: &TableRow, case: &RadicandCase) -> bool {
    match (row.table, case) {
        (1, RadicandCase::Case1 { p, .. }) => *p == row.p,
        (2, RadicandCase::Case2 { p, q, .. }) => *p == row.p && Some(*q) == row.q,
        (3, RadicandCase::Case3 { p, .. }) => *p == row.p,
        _ => false,
    }
}

fn oracle_checks(row: &TableRow, n: u64, client: &mut OracleClient, out: &mut RowReport) {
    let skip = |name: &str, why: String| Check {
        name: name.into(),
        status: Status::Skip,
        detail: why,
    };
    let mut ask = |req: OracleRequest, out: &mut RowReport| -> Option<OracleAnswer> {
        match client.query(&req) {
            Ok(OracleOutcome::Answer(a)) => Some(a),
            Ok(OracleOutcome::Unavailable(why)) => {
                out.checks
                    .push(skip(&format!("oracle {}", req.kind.name()), why));
                None
            }
            Err(e) => {
                out.oracle_protocol_error = Some(e.to_string());
                out.checks.push(Check::new(
                    &format!("oracle {}", req.kind.name()),
                    false,
                    e.to_string(),
                ));
                None
            }
        }
    };
    if let Some(a) = ask(OracleRequest::class_group5(n), out) {
        let check = match (a, row.claimed_divisors()) {
            (OracleAnswer::ClassGroup { divisors }, Some(claimed)) => {
                let mut got = divisors.clone();
                let mut want = claimed;
                got.sort_unstable();
                want.sort_unstable();
                Check::new(
                    "oracle CLASSGROUP5",
                    got == want,
                    format!("oracle {divisors:?}, claimed {}", row.claimed_type),
                )
            }
            (OracleAnswer::Refused { message }, _) => {
                skip("oracle CLASSGROUP5", format!("oracle refused: {message}"))
            }
            (_, None) => skip(
                "oracle CLASSGROUP5",
                format!("unparsable claimed type `{}`", row.claimed_type),
            ),
            (other, _) => Check::new(
                "oracle CLASSGROUP5",
                false,
                format!("unexpected answer {other:?}"),
            ),
        };
        out.checks.push(check);
    }
    let h = ask(OracleRequest::h_gamma(n), out);
    let u = ask(OracleRequest::u_index(n), out);
    if let (Some(OracleAnswer::Integer { value: h }), Some(OracleAnswer::Integer { value: u })) =
        (h, u)
    {
        let claimed_55 = row.claimed_divisors() == Some(vec![5, 5]);
        let data = ClassData {
            u_value: u,
            h_gamma: h,
            source: DataSource::Oracle,
        };
        out.checks.push(match predicted_structure(&data) {
            Ok(v) => Check::new(
                "oracle structure",
                v.type_5_5 == claimed_55,
                format!(
                    "u = {u}, h_Γ = {h}: v5(u) = {}, v5(h_Γ) = {}, type (5,5) possible: {}",
                    v.v5_u, v.v5_h_gamma, v.type_5_5
                ),
            ),
            Err(e) => Check::new("oracle structure", false, e.to_string()),
        });
    }
}

/// Verify one row. Never errors: every outcome is a check entry.
pub fn verify_row(row: &TableRow, oracle: Option<&mut OracleClient>) -> RowReport {
    let radicand = row.radicand();
    let mut out = RowReport {
        table: row.table,
        line: row.line,
        p: row.p,
        q: row.q,
        l: row.l,
        radicand,
        claimed_type: row.claimed_type.clone(),
        checks: Vec::new(),
        oracle_protocol_error: None,
    };
    out.checks.push(congruence_check(row));
    out.checks.extend(vector_checks(row));

    let Some(n) = radicand else {
        out.checks
            .push(Check::new("case", false, "radicand overflows u64".into()));
        return out;
    };
    let report = match classifier::classify(n) {
        Ok(r) => r,
        Err(e) => {
            out.checks.push(Check::new(
                "case",
                false,
                format!("classify({n}) failed: {e}"),
            ));
            return out;
        }
    };
    let case_ok = roles_match(row, &report.case);
    out.checks.push(Check::new(
        "case",
        case_ok,
        format!(
            "classify({n}) = {}; expected case {}",
            report.case,
            row.expected_case()
        ),
    ));

    if case_ok {
        match classifier::hypothesis_check(&report, if row.table == 3 { None } else { row.l }) {
            Ok(r) => {
                for h in r.hypotheses {
                    out.checks.push(Check {
                        name: format!("symbol: {}", h.name),
                        status: match h.status {
                            CheckStatus::Pass => Status::Pass,
                            CheckStatus::Flag => Status::Flag,
                        },
                        detail: format!(
                            "computed {} (per prime: {}), asserted {}",
                            h.computed,
                            h.per_prime
                                .iter()
                                .map(|s| s.to_string())
                                .collect::<Vec<_>>()
                                .join(", "),
                            h.asserted
                        ),
                    });
                }
            }
            Err(e) => out.checks.push(Check::new("symbol", false, e.to_string())),
        }
    } else {
        out.checks.push(Check {
            name: "symbol".into(),
            status: Status::Skip,
            detail: "row does not fall in its table's case".into(),
        });
    }

    if let Some(client) = oracle {
        oracle_checks(row, n, client, &mut out);
    }
    out
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub rows: usize,
    pub pass: usize,
    pub fail: usize,
    pub flag: usize,
    pub skip: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub rows: Vec<RowReport>,
    /// Counts of individual checks by status, and `rows`.
    pub summary: Summary,
}

impl VerificationReport {
    pub fn new(rows: Vec<RowReport>) -> Self {
        let mut summary = Summary {
            rows: rows.len(),
            ..Summary::default()
        };
        for c in rows.iter().flat_map(|r| &r.checks) {
            match c.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::Flag => summary.flag += 1,
                Status::Skip => summary.skip += 1,
            }
        }
        VerificationReport { rows, summary }
    }

    pub fn has_failures(&self) -> bool {
        self.summary.fail > 0
    }

    pub fn has_protocol_error(&self) -> bool {
        self.rows.iter().any(|r| r.oracle_protocol_error.is_some())
    }
}

/// Verify rows; without an oracle the rows are spread over worker threads.
pub fn verify_rows(rows: &[TableRow], oracle: Option<&mut OracleClient>) -> VerificationReport {
    let reports = match oracle {
        Some(client) => rows.iter().map(|r| verify_row(r, Some(client))).collect(),
        None => {
            let workers = std::thread::available_parallelism()
                .map_or(1, |n| n.get())
                .min(8);
            let chunk = rows.len().div_ceil(workers).max(1);
            std::thread::scope(|s| {
                let handles: Vec<_> = rows
                    .chunks(chunk)
                    .map(|c| {
                        s.spawn(move || c.iter().map(|r| verify_row(r, None)).collect::<Vec<_>>())
                    })
                    .collect();
                handles
                    .into_iter()
                    .flat_map(|h| h.join().expect("row worker panicked"))
                    .collect()
            })
        }
    };
    VerificationReport::new(reports)
}

impl fmt::Display for RowReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "table {} line {}: p = {}", self.table, self.line, self.p)?;
        if let Some(q) = self.q {
            write!(f, ", q = {q}")?;
        }
        if let Some(l) = self.l {
            write!(f, ", l = {l}")?;
        }
        if let Some(n) = self.radicand {
            write!(f, ", n = {n}")?;
        }
        writeln!(f, ", claimed {} => {}", self.claimed_type, self.status())?;
        for c in &self.checks {
            writeln!(f, "  [{}] {}: {}", c.status, c.name, c.detail)?;
        }
        Ok(())
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            write!(f, "{r}")?;
        }
        let s = &self.summary;
        writeln!(
            f,
            "{} rows; checks: {} pass, {} fail, {} flag, {} skip",
            s.rows, s.pass, s.fail, s.flag, s.skip
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(line: &str) -> TableRow {
        let text = format!("{}\n{line}\n", FIXTURE_HEADER.join(","));
        let mut rdr = csv::ReaderBuilder::new().from_reader(text.as_bytes());
        let rec = rdr.records().next().unwrap().unwrap();
        parse_record(&rec, 2).unwrap()
    }

    #[test]
    fn parses_table1_first_row() {
        let r = row(r#"1,19,,2,1,true,"(5,5)",P;L,[4;0],[1;0],[0;0],[0;0]"#);
        assert_eq!(
            (r.p, r.q, r.l, r.e, r.e_assumed),
            (19, None, Some(2), 1, true)
        );
        assert_eq!(r.ideal_columns, vec![vec![4, 0], vec![1, 0]]);
        assert_eq!(r.claimed_divisors(), Some(vec![5, 5]));
        assert_eq!(r.radicand(), Some(95));
    }

    #[test]
    fn verifies_spec_rows() {
        let r = verify_row(
            &row(r#"1,19,,2,1,true,"(5,5)",P;L,[4;0],[1;0],[0;0],[0;0]"#),
            None,
        );
        assert_eq!(r.check("congruence").unwrap().status, Status::Pass);
        assert_eq!(r.check("order-5").unwrap().status, Status::Pass);
        assert_eq!(r.check("case").unwrap().status, Status::Pass);
        assert_eq!(r.checks_named("symbol").count(), 2);
        assert!(r.checks_named("symbol").all(|c| c.status == Status::Flag));
        assert_eq!(r.status(), Status::Flag);

        let r = verify_row(
            &row(r#"2,29,17,157,1,true,"(5,5)",P1;P2,[28;14;0;0],[14;7;0;0],[0;0;0;0],[0;0;0;0]"#),
            None,
        );
        assert_eq!(r.radicand, Some(493));
        assert_eq!(r.check("congruence").unwrap().status, Status::Pass);
        assert_eq!(r.check("case").unwrap().status, Status::Pass);

        let r = verify_row(
            &row(r#"3,199,,,1,false,"(5,5)",B1;B2,[6;0;0;0],[6;0;0;0],[0;0;0;0],[0;0;0;0]"#),
            None,
        );
        assert_eq!(r.check("congruence").unwrap().status, Status::Pass);
        assert_eq!(r.checks_named("symbol").count(), 1);
    }

    #[test]
    fn structural_violations_fail() {
        let r = verify_row(
            &row(r#"1,19,,2,1,true,"(5,5)",P;L,[0;0],[1;0],[0;0],[0;1]"#),
            None,
        );
        assert_eq!(r.check("order-5").unwrap().status, Status::Fail);
        let r = verify_row(
            &row(r#"1,299,,83,1,true,"(5,5)",P;L,[8;12;0;0],[12;8;0;0],[0;0],[0;0]"#),
            None,
        );
        assert_eq!(r.check("congruence").unwrap().status, Status::Fail);
        assert_eq!(r.check("vector-shape").unwrap().status, Status::Fail);
        assert_eq!(r.check("case").unwrap().status, Status::Fail);
        assert_eq!(r.check("symbol").unwrap().status, Status::Skip);
    }
}
