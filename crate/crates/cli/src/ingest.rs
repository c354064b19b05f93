//! Knot-table ingestion: JSON and CSV (KnotInfo-style bracketed matrices).
//!
//! Both formats tolerate arbitrary whitespace and accept the Unicode minus
//! sign U+2212 alongside the ASCII hyphen. Parse failures carry the line or
//! record location.

use crate::error::CliError;
use serde::Deserialize;
use std::fs;
use std::path::Path;

/// The bundled sample corpus (3_1, 4_1 and 10_99).
pub const BUNDLED_KNOTS: &str = include_str!("../samples/knots.json");

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnotRecord {
    pub name: String,
    pub seifert: Vec<Vec<i64>>,
    /// Regression expectation: factor string -> exponent multiset.
    pub expected: Option<Vec<(String, Vec<u32>)>>,
}

#[derive(Deserialize)]
struct JsonKnot {
    name: String,
    seifert: Vec<Vec<i64>>,
    #[serde(default)]
    expected: Option<Vec<JsonExpected>>,
}

#[derive(Deserialize)]
struct JsonExpected {
    factor: String,
    exponents: Vec<u32>,
}

fn normalize_minus(text: &str) -> String {
    text.replace('\u{2212}', "-")
}

fn check_rect(records: &[KnotRecord]) -> Result<(), CliError> {
    for (idx, r) in records.iter().enumerate() {
        let width = r.seifert.first().map_or(0, Vec::len);
        if r.seifert.iter().any(|row| row.len() != width) {
            return Err(CliError::Parse(format!(
                "record {idx} ({}): ragged matrix rows",
                r.name
            )));
        }
    }
    Ok(())
}

pub fn parse_json(text: &str) -> Result<Vec<KnotRecord>, CliError> {
    let text = normalize_minus(text);
    let raw: Vec<JsonKnot> = serde_json::from_str(&text)
        .map_err(|e| CliError::Parse(format!("invalid knot JSON: {e}")))?;
    let records = raw
        .into_iter()
        .map(|k| KnotRecord {
            name: k.name,
            seifert: k.seifert,
            expected: k
                .expected
                .map(|es| es.into_iter().map(|e| (e.factor, e.exponents)).collect()),
        })
        .collect::<Vec<_>>();
    check_rect(&records)?;
    Ok(records)
}

/// CSV lines of the form `name,[[a,b],[c,d]]`; the matrix column may be
/// double-quoted; a non-matrix first line is skipped as a header.
pub fn parse_csv(text: &str) -> Result<Vec<KnotRecord>, CliError> {
    let text = normalize_minus(text);
    let mut records = Vec::new();
    let mut saw_data = false;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((name, rest)) = line.split_once(',') else {
            return Err(CliError::Parse(format!(
                "line {}: expected `name,matrix`",
                lineno + 1
            )));
        };
        let name = name.trim().trim_matches('"').to_string();
        let mut matrix_text = rest.trim();
        if matrix_text.starts_with('"') && matrix_text.ends_with('"') && matrix_text.len() >= 2 {
            matrix_text = &matrix_text[1..matrix_text.len() - 1];
        }
        let matrix_text = matrix_text.trim();
        if !matrix_text.starts_with('[') {
            if !saw_data {
                continue; // header row
            }
            return Err(CliError::Parse(format!(
                "line {}: matrix column must be a bracketed list",
                lineno + 1
            )));
        }
        saw_data = true;
        let seifert = parse_bracketed_matrix(matrix_text)
            .map_err(|e| CliError::Parse(format!("line {}: {e}", lineno + 1)))?;
        records.push(KnotRecord {
            name,
            seifert,
            expected: None,
        });
    }
    check_rect(&records)?;
    Ok(records)
}

fn parse_bracketed_matrix(text: &str) -> Result<Vec<Vec<i64>>, String> {
    let mut rows: Vec<Vec<i64>> = Vec::new();
    let mut current: Option<Vec<i64>> = None;
    let mut number = String::new();
    let mut depth = 0u32;

    let flush = |number: &mut String, current: &mut Option<Vec<i64>>| -> Result<(), String> {
        if number.is_empty() {
            return Ok(());
        }
        let value: i64 = number
            .parse()
            .map_err(|_| format!("non-integer entry `{number}`"))?;
        current
            .as_mut()
            .ok_or_else(|| "entry outside a row".to_string())?
            .push(value);
        number.clear();
        Ok(())
    };

    for ch in text.chars() {
        match ch {
            '[' => {
                depth += 1;
                if depth == 2 {
                    current = Some(Vec::new());
                } else if depth > 2 {
                    return Err("matrix nested too deeply".to_string());
                }
            }
            ']' => {
                flush(&mut number, &mut current)?;
                if depth == 0 {
                    return Err("unbalanced brackets".to_string());
                }
                if depth == 2 {
                    rows.push(current.take().unwrap());
                }
                depth -= 1;
            }
            ',' | ';' => flush(&mut number, &mut current)?,
            c if c.is_whitespace() => flush(&mut number, &mut current)?,
            c if c.is_ascii_digit() || c == '-' || c == '+' => number.push(c),
            c => return Err(format!("unexpected character `{c}` in matrix")),
        }
    }
    if depth != 0 {
        return Err("unbalanced brackets".to_string());
    }
    Ok(rows)
}

/// Load a knot table, deciding the format from the extension and falling back
/// to content sniffing.
pub fn parse_knot_file(path: &Path) -> Result<Vec<KnotRecord>, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))?;
    let looks_json = match path.extension().and_then(|e| e.to_str()) {
        Some("json") => true,
        Some("csv") => false,
        _ => text.trim_start().starts_with('['),
    };
    if looks_json {
        parse_json(&text)
    } else {
        parse_csv(&text)
    }
}

/// The bundled corpus, parsed.
pub fn bundled_records() -> Vec<KnotRecord> {
    parse_json(BUNDLED_KNOTS).expect("bundled corpus is well formed")
}
