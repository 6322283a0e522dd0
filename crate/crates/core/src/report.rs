//! Serialization of classification reports: pretty JSON (byte-identical
//! round trip), flat CSV rows for surveys, and a plain-text table.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::rootdata::CartanType;
use crate::schubert::{ClassificationReport, Status};

#[derive(thiserror::Error, Debug)]
pub enum ReportError {
    #[error("malformed report JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("CSV output failed: {0}")]
    Csv(#[from] csv::Error),
    #[error("report is inconsistent: {0}")]
    Inconsistent(String),
}

type Result<T> = std::result::Result<T, ReportError>;

/// Pretty JSON with a trailing newline. Field order is fixed by the struct
/// and map keys are sorted, so the output is canonical.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

/// Parses a report and checks its internal bookkeeping.
pub fn report_from_json(s: &str) -> Result<ClassificationReport> {
    let r: ClassificationReport = serde_json::from_str(s)?;
    validate(&r)?;
    Ok(r)
}

/// Cheap structural checks on a parsed report.
pub fn validate(r: &ClassificationReport) -> Result<()> {
    let bad = |m: String| Err(ReportError::Inconsistent(m));
    if r.b2 != r.support_p.len() {
        return bad(format!("b2 = {} but |support_p| = {}", r.b2, r.support_p.len()));
    }
    if r.b_top != r.cover_p.len() {
        return bad(format!("b_top = {} but |cover_p| = {}", r.b_top, r.cover_p.len()));
    }
    if r.q_factorial != (r.b2 == r.b_top) {
        return bad("q_factorial disagrees with b2 = b_top".into());
    }
    if r.factorial && !r.q_factorial {
        return bad("factorial without q_factorial".into());
    }
    if r.gorenstein == Status::Yes && !r.c1.as_ref().is_some_and(|c| c.is_integral()) {
        return bad("gorenstein without an integral c1".into());
    }
    if r.length != r.word.len() {
        return bad("length differs from the word length".into());
    }
    let n = r.cartan_type.rank();
    if r.word.check_range(n).is_err() || r.support_b.iter().any(|&i| i == 0 || i > n) {
        return bad("index out of range".into());
    }
    let m = &r.picard_matrix;
    if m.entries.len() != m.rows.len() || m.entries.iter().any(|row| row.len() != m.cols.len()) {
        return bad("picard_matrix shape disagrees with its labels".into());
    }
    Ok(())
}

/// One survey line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveyRow {
    #[serde(rename = "type")]
    pub cartan_type: CartanType,
    /// `I_P`, space separated
    pub parabolic: String,
    /// space separated, empty for the identity
    pub word: String,
    pub length: usize,
    pub b2: usize,
    pub b_top: usize,
    pub q_factorial: bool,
    pub factorial: bool,
    pub gorenstein: Status,
    pub q_gorenstein: Status,
    pub fano: Status,
    pub q_gorenstein_fano: Status,
    pub nef_anticanonical: Option<bool>,
    /// `hat_n` as `k:value` pairs, space separated
    pub hat_n: String,
    pub c1: String,
}

impl From<&ClassificationReport> for SurveyRow {
    fn from(r: &ClassificationReport) -> Self {
        SurveyRow {
            cartan_type: r.cartan_type,
            parabolic: join(&r.parabolic),
            word: r.word.to_string(),
            length: r.length,
            b2: r.b2,
            b_top: r.b_top,
            q_factorial: r.q_factorial,
            factorial: r.factorial,
            gorenstein: r.gorenstein,
            q_gorenstein: r.q_gorenstein,
            fano: r.fano,
            q_gorenstein_fano: r.q_gorenstein_fano,
            nef_anticanonical: r.nef_anticanonical,
            hat_n: r.hat_n.as_ref().map_or(String::new(), |h| {
                h.labels
                    .iter()
                    .zip(&h.values)
                    .map(|(k, v)| format!("{k}:{v}"))
                    .collect::<Vec<_>>()
                    .join(" ")
            }),
            c1: r.c1.as_ref().map_or(String::new(), |c| c.pretty()),
        }
    }
}

fn join(v: &[usize]) -> String {
    v.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" ")
}

/// CSV with a header line.
pub fn rows_to_csv(rows: &[SurveyRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    if rows.is_empty() {
        w.write_record([
            "type",
            "parabolic",
            "word",
            "length",
            "b2",
            "b_top",
            "q_factorial",
            "factorial",
            "gorenstein",
            "q_gorenstein",
            "fano",
            "q_gorenstein_fano",
            "nef_anticanonical",
            "hat_n",
            "c1",
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| csv::Error::from(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv writes utf-8"))
}

pub fn rows_from_csv(s: &str) -> Result<Vec<SurveyRow>> {
    let mut r = csv::Reader::from_reader(s.as_bytes());
    Ok(r.deserialize().collect::<std::result::Result<_, _>>()?)
}

/// Fixed-width text table.
pub fn rows_to_table(rows: &[SurveyRow]) -> String {
    let header = [
        "word", "len", "b2", "b_top", "Qfact", "fact", "Gor", "QGor", "Fano", "QGorFano", "nef",
        "c1",
    ];
    let body: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                if r.word.is_empty() { "e".into() } else { r.word.clone() },
                r.length.to_string(),
                r.b2.to_string(),
                r.b_top.to_string(),
                yn(r.q_factorial).into(),
                yn(r.factorial).into(),
                r.gorenstein.as_str().into(),
                r.q_gorenstein.as_str().into(),
                r.fano.as_str().into(),
                r.q_gorenstein_fano.as_str().into(),
                r.nef_anticanonical.map_or("-", yn).into(),
                if r.c1.is_empty() { "-".into() } else { r.c1.clone() },
            ]
        })
        .collect();
    let mut width: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in &body {
        for (w, c) in width.iter_mut().zip(row) {
            *w = (*w).max(c.len());
        }
    }
    let mut out = String::new();
    let line = |cells: Vec<&str>, out: &mut String| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&width)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        let _ = writeln!(out, "{}", padded.join("  ").trim_end());
    };
    line(header.to_vec(), &mut out);
    for row in &body {
        line(row.iter().map(String::as_str).collect(), &mut out);
    }
    out
}

fn yn(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Multi-line human summary of one report.
pub fn report_to_table(r: &ClassificationReport) -> String {
    let mut s = String::new();
    let word = if r.word.is_empty() { "e".to_string() } else { r.word.to_string() };
    let _ = writeln!(s, "type            {}", r.cartan_type);
    let _ = writeln!(s, "I_P             {{{}}}   I^P {{{}}}", join(&r.parabolic), join(&r.parabolic_complement));
    let _ = writeln!(s, "word            {word}   (length {})", r.length);
    let _ = writeln!(s, "regime          {:?}", r.regime);
    let _ = writeln!(s, "b2 / b_top      {} / {}", r.b2, r.b_top);
    let coroots = |v: &[crate::rootdata::CorootVec]| {
        v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")
    };
    let _ = writeln!(s, "inversions      {}", coroots(&r.inversion_sequence));
    let _ = writeln!(s, "R+_(w,B)        {}", coroots(&r.cover_b));
    let _ = writeln!(s, "R+_(w,P)        {}", coroots(&r.cover_p));
    if let Some(b) = &r.basis {
        let items: Vec<String> = b
            .entries
            .iter()
            .map(|e| format!("{}:{}", e.k, e.coroot))
            .collect();
        let _ = writeln!(s, "basis           {}", items.join(" "));
    }
    let _ = writeln!(
        s,
        "q_factorial     {}   factorial {}   det {}   SNF {:?}",
        yn(r.q_factorial),
        yn(r.factorial),
        r.factorial_evidence
            .determinant
            .map_or("-".to_string(), |d| d.to_string()),
        r.factorial_evidence.invariant_factors
    );
    if let Some(h) = &r.hat_n {
        let items: Vec<String> = h
            .labels
            .iter()
            .zip(&h.values)
            .map(|(k, v)| format!("{k}:{v}"))
            .collect();
        let _ = writeln!(s, "hat_n           {}", items.join(" "));
    }
    let _ = writeln!(
        s,
        "gorenstein      {}   q_gorenstein {}",
        r.gorenstein.as_str(),
        r.q_gorenstein.as_str()
    );
    let _ = writeln!(
        s,
        "fano            {}   q_gorenstein_fano {}   nef {}",
        r.fano.as_str(),
        r.q_gorenstein_fano.as_str(),
        r.nef_anticanonical.map_or("-", yn)
    );
    if let Some(c) = &r.c1 {
        let _ = writeln!(s, "c1              {}", c.pretty());
    }
    if !r.gorenstein_failures.is_empty() {
        let _ = writeln!(s, "failures        {}", coroots(&r.gorenstein_failures));
    }
    s
}
