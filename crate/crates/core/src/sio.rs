// SPDX-License-Identifier: MIT OR Apache-2.0

//! Text formats.
//!
//! Scheme files:
//!
//! ```text
//! # optional comments
//! 3 2
//! 0 1 2
//! 2 0 1
//! 1 2 0
//! ```
//!
//! The header is exactly `n d` (no sign, no leading zeros, one space).
//! Hadamard files are `n` lines of `n` signs (`+`/`-`); permutation files
//! are a line `n` followed by one line of images. Eigen and verification
//! reports are JSON. Every serializer emits LF line endings, a trailing
//! newline and no trailing whitespace.

use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};
use serde_json::Number;

use crate::construct::SkewHadamardMatrix;
use crate::error::{Error, Result};
use crate::exactnum::{QuadraticNumber, Rational};
use crate::linalg::QuadMatrix;
use crate::scheme::{check_permutation, IntersectionTensor, RelationMatrix, Scheme};
use crate::spectra::EigenData;

/// Content lines with 1-based line numbers; `#` comment lines and blank
/// lines are skipped, carriage returns rejected.
fn content_lines(text: &str) -> Result<Vec<(usize, &str)>> {
    let mut out = Vec::new();
    for (idx, line) in text.split('\n').enumerate() {
        let lineno = idx + 1;
        if let Some(col) = line.find('\r') {
            return Err(Error::parse(lineno, col + 1, "carriage return (use LF line endings)"));
        }
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        out.push((lineno, line));
    }
    Ok(out)
}

/// Single-space separated tokens with their 1-based columns.
fn tokens(lineno: usize, line: &str) -> Result<Vec<(usize, &str)>> {
    let mut out = Vec::new();
    let mut col = 1;
    for tok in line.split(' ') {
        if tok.is_empty() {
            return Err(Error::parse(lineno, col, "expected a single space between fields"));
        }
        out.push((col, tok));
        col += tok.len() + 1;
    }
    Ok(out)
}

fn parse_count(lineno: usize, col: usize, tok: &str, positive: bool) -> Result<usize> {
    let canonical = tok.bytes().all(|b| b.is_ascii_digit())
        && !tok.is_empty()
        && (tok == "0" || !tok.starts_with('0'));
    if !canonical {
        return Err(Error::parse(lineno, col, format!("expected a decimal integer, found {tok:?}")));
    }
    let v: usize = tok
        .parse()
        .map_err(|_| Error::parse(lineno, col, format!("integer {tok} out of range")))?;
    if positive && v == 0 {
        return Err(Error::parse(lineno, col, "expected a positive integer"));
    }
    Ok(v)
}

/// Parses a scheme file into a validated relation matrix.
pub fn parse_scheme(text: &str) -> Result<RelationMatrix> {
    let lines = content_lines(text)?;
    let Some(&(hline, header)) = lines.first() else {
        return Err(Error::parse(1, 1, "missing header \"n d\""));
    };
    let htoks = tokens(hline, header)?;
    if htoks.len() != 2 {
        return Err(Error::parse(hline, 1, "header must be \"n d\""));
    }
    let n = parse_count(hline, htoks[0].0, htoks[0].1, true)?;
    let d = parse_count(hline, htoks[1].0, htoks[1].1, false)?;
    let body = &lines[1..];
    if body.len() != n {
        let (line, col) = body.get(n).map_or((hline, 1), |&(l, _)| (l, 1));
        return Err(Error::parse(line, col, format!("expected {n} rows, found {}", body.len())));
    }
    let mut cells = Vec::with_capacity(n.saturating_mul(n));
    for (x, &(lineno, line)) in body.iter().enumerate() {
        let toks = tokens(lineno, line)?;
        if toks.len() != n {
            return Err(Error::parse(
                lineno,
                toks.get(n).map_or(line.len() + 1, |t| t.0),
                format!("expected {n} entries, found {}", toks.len()),
            ));
        }
        for (y, &(col, tok)) in toks.iter().enumerate() {
            let v = parse_count(lineno, col, tok, false)?;
            if v > d {
                return Err(Error::parse(lineno, col, format!("relation index {v} exceeds d = {d}")));
            }
            if (x == y) != (v == 0) {
                let msg = if x == y {
                    "diagonal entry must be 0"
                } else {
                    "off-diagonal entry must be nonzero"
                };
                return Err(Error::parse(lineno, col, msg));
            }
            cells.push(v);
        }
    }
    RelationMatrix::new(n, d, cells)
}

pub fn serialize_relation_matrix(r: &RelationMatrix) -> String {
    let mut out = format!("{} {}\n", r.n(), r.d());
    for x in 0..r.n() {
        let row: Vec<String> = r.row(x).iter().map(ToString::to_string).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn serialize_scheme(s: &Scheme) -> String {
    serialize_relation_matrix(s.relation())
}

pub fn serialize_hadamard(h: &SkewHadamardMatrix) -> String {
    let n = h.order();
    let mut out = String::with_capacity(2 * n * n);
    for r in 0..n {
        let row: Vec<&str> = (0..n).map(|c| if h.get(r, c) > 0 { "+" } else { "-" }).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Parses sign text and re-validates the skew-Hadamard identities.
pub fn parse_hadamard(text: &str) -> Result<SkewHadamardMatrix> {
    let lines = content_lines(text)?;
    let n = lines.len();
    let mut entries = Vec::with_capacity(n * n);
    for &(lineno, line) in &lines {
        let toks = tokens(lineno, line)?;
        if toks.len() != n {
            return Err(Error::parse(lineno, 1, format!("expected {n} signs, found {}", toks.len())));
        }
        for (col, tok) in toks {
            entries.push(match tok {
                "+" => 1,
                "-" => -1,
                other => return Err(Error::parse(lineno, col, format!("expected + or -, found {other:?}"))),
            });
        }
    }
    if n == 0 {
        return Err(Error::parse(1, 1, "empty matrix"));
    }
    SkewHadamardMatrix::new(n, entries)
}

pub fn serialize_permutation(sigma: &[usize]) -> String {
    let images: Vec<String> = sigma.iter().map(ToString::to_string).collect();
    format!("{}\n{}\n", sigma.len(), images.join(" "))
}

pub fn parse_permutation(text: &str) -> Result<Vec<usize>> {
    let lines = content_lines(text)?;
    let Some(&(hline, header)) = lines.first() else {
        return Err(Error::parse(1, 1, "missing length line"));
    };
    let n = parse_count(hline, 1, header, true)?;
    if lines.len() != 2 {
        return Err(Error::parse(hline, 1, "expected one line of images after the length"));
    }
    let (lineno, line) = lines[1];
    let toks = tokens(lineno, line)?;
    if toks.len() != n {
        return Err(Error::parse(lineno, 1, format!("expected {n} images, found {}", toks.len())));
    }
    let sigma = toks
        .into_iter()
        .map(|(col, t)| parse_count(lineno, col, t, false))
        .collect::<Result<Vec<_>>>()?;
    check_permutation(&sigma, n)?;
    Ok(sigma)
}

/// JSON encoding of `a + b·ω`, `ω² = disc`, with exact integer fields.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalarJson {
    pub a_num: Number,
    pub a_den: Number,
    pub b_num: Number,
    pub b_den: Number,
    pub disc: i64,
}

fn big_number(v: &BigInt) -> Number {
    Number::from_str(&v.to_string()).expect("integer literal is valid JSON")
}

fn number_big(v: &Number) -> Result<BigInt> {
    BigInt::from_str(&v.to_string()).map_err(|_| Error::Json(format!("{v} is not an integer")))
}

impl From<&QuadraticNumber> for ScalarJson {
    fn from(x: &QuadraticNumber) -> Self {
        ScalarJson {
            a_num: big_number(x.a().numer()),
            a_den: big_number(x.a().denom()),
            b_num: big_number(x.b().numer()),
            b_den: big_number(x.b().denom()),
            disc: x.disc(),
        }
    }
}

impl TryFrom<&ScalarJson> for QuadraticNumber {
    type Error = Error;
    fn try_from(s: &ScalarJson) -> Result<Self> {
        let frac = |num: &Number, den: &Number| -> Result<Rational> {
            let den = number_big(den)?;
            if !den.is_positive() {
                return Err(Error::Json(format!("denominator {den} must be positive")));
            }
            Ok(Rational::new(number_big(num)?, den))
        };
        Ok(QuadraticNumber::new(
            frac(&s.a_num, &s.a_den)?,
            frac(&s.b_num, &s.b_den)?,
            s.disc,
        ))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenReport {
    pub n: usize,
    pub disc: i64,
    pub valencies: Vec<u64>,
    pub multiplicities: Vec<u64>,
    #[serde(rename = "P")]
    pub p: Vec<Vec<ScalarJson>>,
    #[serde(rename = "Q")]
    pub q: Vec<Vec<ScalarJson>>,
}

fn matrix_json(m: &QuadMatrix) -> Vec<Vec<ScalarJson>> {
    (0..m.rows())
        .map(|r| m.row(r).iter().map(ScalarJson::from).collect())
        .collect()
}

fn matrix_from_json(rows: &[Vec<ScalarJson>], disc: i64) -> Result<QuadMatrix> {
    let w = rows.len();
    let mut data = Vec::with_capacity(w * w);
    for row in rows {
        if row.len() != w {
            return Err(Error::Json("eigenmatrix is not square".into()));
        }
        for s in row {
            data.push(QuadraticNumber::try_from(s)?);
        }
    }
    QuadMatrix::new(w, w, disc, data)
}

impl From<&EigenData> for EigenReport {
    fn from(e: &EigenData) -> Self {
        EigenReport {
            n: e.n(),
            disc: e.disc(),
            valencies: e.valencies().to_vec(),
            multiplicities: e.multiplicities().to_vec(),
            p: matrix_json(e.p()),
            q: matrix_json(e.q()),
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut out = serde_json::to_string_pretty(v).expect("report types serialize");
    out.push('\n');
    out
}

pub fn serialize_eigenreport(e: &EigenData) -> String {
    to_json(&EigenReport::from(e))
}

/// Parses an eigen-report and re-derives `Q` and the multiplicities from
/// `P`; the stored values must agree.
pub fn parse_eigenreport(text: &str) -> Result<EigenData> {
    let report: EigenReport = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
    let p = matrix_from_json(&report.p, report.disc)?;
    let q = matrix_from_json(&report.q, report.disc)?;
    let e = EigenData::from_p(p, report.n)?;
    if e.q() != &q
        || e.valencies() != report.valencies.as_slice()
        || e.multiplicities() != report.multiplicities.as_slice()
    {
        return Err(Error::InconsistentEigenData(
            "stored Q, valencies or multiplicities disagree with P".into(),
        ));
    }
    Ok(e)
}

/// Certification summary of a scheme.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub n: usize,
    pub class: usize,
    pub symmetric: bool,
    pub commutative: bool,
    pub valencies: Vec<usize>,
    pub pairing: Vec<usize>,
    /// `intersection_numbers[i][j][l] = p_{i,j}^l`.
    pub intersection_numbers: Vec<Vec<Vec<u64>>>,
}

impl VerifyReport {
    pub fn new(s: &Scheme, t: &IntersectionTensor) -> Self {
        let w = t.d() + 1;
        VerifyReport {
            n: s.n(),
            class: s.d(),
            symmetric: s.is_symmetric(),
            commutative: t.is_commutative(),
            valencies: s.valencies().to_vec(),
            pairing: s.pairings().to_vec(),
            intersection_numbers: (0..w)
                .map(|i| (0..w).map(|j| (0..w).map(|l| t.get(i, j, l)).collect()).collect())
                .collect(),
        }
    }

    pub fn tensor(&self) -> Result<IntersectionTensor> {
        let w = self.class + 1;
        let mut values = Vec::with_capacity(w * w * w);
        for plane in &self.intersection_numbers {
            if plane.len() != w || plane.iter().any(|r| r.len() != w) {
                return Err(Error::Json("intersection_numbers has the wrong shape".into()));
            }
            values.extend(plane.iter().flatten().copied());
        }
        if values.len() != w * w * w {
            return Err(Error::Json("intersection_numbers has the wrong shape".into()));
        }
        Ok(IntersectionTensor::new(self.class, values))
    }

    /// Human-readable form used by `verify` without `--json`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let kind = match (self.symmetric, self.commutative) {
            (true, _) => "symmetric",
            (false, true) => "non-symmetric, commutative",
            (false, false) => "non-commutative",
        };
        let _ = writeln!(out, "points: {}", self.n);
        let _ = writeln!(out, "class: {}", self.class);
        let _ = writeln!(out, "type: {kind}");
        let _ = writeln!(out, "valencies: {:?}", self.valencies);
        let _ = writeln!(out, "pairing: {:?}", self.pairing);
        for (i, plane) in self.intersection_numbers.iter().enumerate() {
            let _ = writeln!(out, "B_{i}:");
            for l in 0..plane.len() {
                // (B_i)_{j,l} = p_{i,j}^l
                let row: Vec<String> = plane.iter().map(|r| r[l].to_string()).collect();
                let _ = writeln!(out, "  {}", row.join(" "));
            }
        }
        out
    }
}

pub fn serialize_verify_report(r: &VerifyReport) -> String {
    to_json(r)
}

pub fn parse_verify_report(text: &str) -> Result<VerifyReport> {
    serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{
        extended_double_cover, paley_tournament, skew_hadamard_from_tournament,
    };
    use crate::spectra::{closed_form_p, Family};

    #[test]
    fn parses_three_cycle() {
        let r = parse_scheme("3 2\n0 1 2\n2 0 1\n1 2 0").unwrap();
        assert_eq!(&r, paley_tournament(3).unwrap().relation());
    }

    #[test]
    fn trivial_scheme() {
        let r = parse_scheme("1 0\n0").unwrap();
        assert_eq!((r.n(), r.d()), (1, 0));
        assert_eq!(serialize_relation_matrix(&r), "1 0\n0\n");
    }

    #[test]
    fn index_out_of_range() {
        assert_eq!(
            parse_scheme("2 1\n0 3\n3 0"),
            Err(Error::parse(2, 3, "relation index 3 exceeds d = 1"))
        );
    }

    #[test]
    fn diagnostics_carry_positions() {
        let err = |t: &str| match parse_scheme(t) {
            Err(Error::Parse { line, col, .. }) => (line, col),
            other => panic!("{other:?}"),
        };
        assert_eq!(err("3 2\n0 1 2\n2 1 1\n1 2 0\n"), (3, 3));
        assert_eq!(err("3 2\n0 1 2\n2 0\n1 2 0\n"), (3, 4));
        assert_eq!(err("# c\n3 2\n0 1 2\n2 0 1\n1 2 x\n"), (5, 5));
        assert_eq!(err("03 2\n"), (1, 1));
        assert_eq!(err("3 2\r\n"), (1, 4));
        assert_eq!(err(""), (1, 1));
    }

    #[test]
    fn comments_and_canonical_output() {
        let text = "# tournament\n3 2\n# body\n0 1 2\n2 0 1\n1 2 0\n";
        let r = parse_scheme(text).unwrap();
        assert_eq!(serialize_relation_matrix(&r), "3 2\n0 1 2\n2 0 1\n1 2 0\n");
    }

    #[test]
    fn header_corruptions_are_rejected() {
        let good = serialize_scheme(&extended_double_cover(&paley_tournament(3).unwrap()).unwrap());
        let header_len = good.find('\n').unwrap();
        let printable: Vec<char> = (0x20u8..0x7f).map(char::from).chain(['\n', '\t']).collect();
        for pos in 0..header_len {
            for &c in &printable {
                if good.as_bytes()[pos] == c as u8 {
                    continue;
                }
                let mut bad = good.clone();
                bad.replace_range(pos..pos + 1, &c.to_string());
                assert!(parse_scheme(&bad).is_err(), "accepted {:?}", &bad[..header_len + 1]);
            }
            let mut deleted = good.clone();
            deleted.remove(pos);
            assert!(parse_scheme(&deleted).is_err());
        }
    }

    #[test]
    fn hadamard_order_four() {
        let h = skew_hadamard_from_tournament(&paley_tournament(3).unwrap()).unwrap();
        let text = serialize_hadamard(&h);
        assert_eq!(text.lines().count(), 4);
        assert_eq!(text.lines().next(), Some("+ + + +"));
        assert_eq!(parse_hadamard(&text).unwrap(), h);
        assert!(parse_hadamard(&text.replacen('+', "-", 1)).is_err());
        assert!(parse_hadamard("+ x\n- +\n").is_err());
    }

    #[test]
    fn permutation_round_trip() {
        let sigma = vec![2, 0, 3, 1];
        let text = serialize_permutation(&sigma);
        assert_eq!(text, "4\n2 0 3 1\n");
        assert_eq!(parse_permutation(&text).unwrap(), sigma);
        assert!(parse_permutation("3\n0 0 1\n").is_err());
        assert!(parse_permutation("3\n0 1\n").is_err());
    }

    #[test]
    fn eigenreport_scalar_encoding() {
        let e = closed_form_p(Family::Edc, 3).unwrap();
        let text = serialize_eigenreport(&e);
        let report: EigenReport = serde_json::from_str(&text).unwrap();
        assert_eq!(
            serde_json::to_string(&report.p[1][1]).unwrap(),
            r#"{"a_num":0,"a_den":1,"b_num":1,"b_den":1,"disc":-3}"#
        );
        assert_eq!(parse_eigenreport(&text).unwrap(), e);
    }

    #[test]
    fn eigenreport_rejects_tampering() {
        let e = closed_form_p(Family::Class2Nonsym, 7).unwrap();
        let text = serialize_eigenreport(&e);
        let tampered = text.replacen("\"multiplicities\": [\n    1,\n    3", "\"multiplicities\": [\n    1,\n    4", 1);
        assert_ne!(tampered, text);
        assert!(parse_eigenreport(&tampered).is_err());
        assert!(parse_eigenreport("{").is_err());
    }

    #[test]
    fn large_scalars_survive_json() {
        let big: BigInt = BigInt::from(10).pow(40u32) + 7;
        let x = QuadraticNumber::new(Rational::new(big.clone(), BigInt::from(3)), Rational::from(big), -5);
        let json = serde_json::to_string(&ScalarJson::from(&x)).unwrap();
        let back: ScalarJson = serde_json::from_str(&json).unwrap();
        assert_eq!(QuadraticNumber::try_from(&back).unwrap(), x);
    }

    #[test]
    fn verify_report_round_trip() {
        let s = extended_double_cover(&paley_tournament(7).unwrap()).unwrap();
        let t = s.certify().unwrap();
        let r = VerifyReport::new(&s, &t);
        let back = parse_verify_report(&serialize_verify_report(&r)).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.tensor().unwrap(), t);
        assert!(r.to_text().contains("type: non-symmetric, commutative"));
    }
}
