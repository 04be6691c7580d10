//! Text and JSON tables of ranked records.

use std::fmt::Write;

use serde::Serialize;

use crate::record::ExtremalRecord;

#[derive(Serialize)]
struct Row<'a> {
    m: usize,
    rank: usize,
    graph6: &'a str,
    rho: f64,
    margin: Option<f64>,
    method: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    verdict: Option<&'a str>,
}

/// One JSON array of rows.
pub fn json_table(records: &[ExtremalRecord]) -> String {
    let rows: Vec<Row<'_>> = records
        .iter()
        .map(|r| Row {
            m: r.m,
            rank: r.rank,
            graph6: &r.graph6,
            rho: r.rho,
            margin: r.margin,
            method: r.method.as_str(),
            verdict: r.verdict.map(|v| v.as_str()),
        })
        .collect();
    serde_json::to_string_pretty(&rows).expect("rows serialize")
}

/// Aligned plain-text table; `~` marks margins at or below the comparison margin.
pub fn text_table(records: &[ExtremalRecord]) -> String {
    let g6w = records.iter().map(|r| r.graph6.len()).max().unwrap_or(0).max(6);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:>5} {:>4}  {:<g6w$}  {:>18}  {:>12}  method",
        "m", "rank", "graph6", "rho", "margin"
    );
    for r in records {
        let margin = match r.margin {
            Some(g) => format!("{}{g:.3e}", if r.indistinguishable { "~" } else { "" }),
            None => "-".into(),
        };
        let _ = write!(
            out,
            "{:>5} {:>4}  {:<g6w$}  {:>18.12}  {:>12}  {}",
            r.m, r.rank, r.graph6, r.rho, margin, r.method
        );
        if let Some(v) = r.verdict {
            let _ = write!(out, "  {v}");
        }
        out.push('\n');
    }
    out
}
