//! Tables of the resonances available for a parameter set.

use std::fmt::Write as _;

use dce_core::regimes::{resonance_catalog, Catalog};
use dce_core::ModelParams;

use crate::run::fmt_float;

pub fn list_resonances(params: &ModelParams) -> Catalog {
    resonance_catalog(params)
}

fn horizon(h: Option<f64>) -> String {
    h.map_or_else(|| "-".into(), |h| format!("{h:.4e}"))
}

/// Aligned text table followed by the omitted regimes.
pub fn resonance_table(cat: &Catalog) -> String {
    let rows: Vec<[String; 6]> = cat
        .entries
        .iter()
        .map(|e| {
            [
                e.kind.to_string(),
                format!("{:+.6e}", e.x),
                format!("{:.4e}", e.rate),
                e.behavior.to_string(),
                e.verdict().to_string(),
                horizon(e.horizon),
            ]
        })
        .collect();
    let head = ["regime", "x", "rate", "behavior", "validity", "horizon"];
    let mut widths = head.map(str::len);
    for r in &rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.len());
        }
    }
    let mut out = String::new();
    let line = |cells: &[&str], out: &mut String| {
        let padded: Vec<String> = cells
            .iter()
            .zip(widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        writeln!(out, "{}", padded.join("  ").trim_end()).unwrap();
    };
    line(&head, &mut out);
    for r in &rows {
        line(&r.each_ref().map(String::as_str), &mut out);
    }
    for e in cat.entries.iter().filter(|e| !e.checks.is_empty()) {
        let checks: Vec<String> = e.checks.iter().map(|c| c.to_string()).collect();
        writeln!(out, "  {}: {}", e.kind, checks.join("; ")).unwrap();
    }
    if !cat.omitted.is_empty() {
        writeln!(out, "omitted:").unwrap();
        for o in &cat.omitted {
            writeln!(out, "  {}: {}", o.regime, o.reason).unwrap();
        }
    }
    out
}

pub fn resonance_csv(cat: &Catalog) -> String {
    let mut out = String::from("regime,x,rate,behavior,validity,horizon\n");
    for e in &cat.entries {
        writeln!(
            out,
            "\"{}\",{},{},{},{},{}",
            e.kind,
            fmt_float(e.x),
            fmt_float(e.rate),
            e.behavior,
            e.verdict(),
            e.horizon.map_or_else(|| "nan".into(), fmt_float)
        )
        .unwrap();
    }
    out
}
