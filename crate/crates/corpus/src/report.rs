use std::fmt::Write;

use crate::corpus::{AccountStats, CorpusStats};
use crate::estimate::{AccountErrors, ErrorEstimate};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Csv,
}

const NONE: &str = "-";

fn ratio(v: Option<f64>) -> String {
    v.map_or_else(|| NONE.to_string(), |v| format!("{v:.1}"))
}

fn percent(v: Option<f64>) -> String {
    v.map_or_else(|| NONE.to_string(), |v| format!("{:.1}%", v * 100.0))
}

const HEADER: [&str; 9] = ["Account", "L", "R", "F", "L/R", "R/F", "Syntax", "RoboJS", "Revisions"];

fn cells(s: &AccountStats, e: &AccountErrors) -> [String; 9] {
    [
        s.account.clone(),
        s.lines.to_string(),
        s.revisions.to_string(),
        s.files.to_string(),
        ratio(s.lines_per_revision()),
        ratio(s.revisions_per_file()),
        e.syntax.to_string(),
        e.robojs.to_string(),
        e.revisions.to_string(),
    ]
}

fn rows(stats: &CorpusStats, est: &ErrorEstimate) -> Vec<[String; 9]> {
    let blank = AccountErrors::default();
    let mut out: Vec<[String; 9]> = stats
        .accounts
        .iter()
        .map(|s| cells(s, est.accounts.iter().find(|e| e.account == s.account).unwrap_or(&blank)))
        .collect();
    out.push(cells(&stats.total, &est.total));
    out
}

/// Per-account rows, a totals row and the two headline percentages.
pub fn report(stats: &CorpusStats, est: &ErrorEstimate, format: Format) -> String {
    match format {
        Format::Csv => csv(stats, est),
        Format::Table => table(stats, est),
    }
}

fn csv(stats: &CorpusStats, est: &ErrorEstimate) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(HEADER.iter().map(|h| h.to_lowercase())).unwrap();
    for row in rows(stats, est) {
        w.write_record(&row).unwrap();
    }
    String::from_utf8(w.into_inner().unwrap()).unwrap()
}

fn table(stats: &CorpusStats, est: &ErrorEstimate) -> String {
    let rows = rows(stats, est);
    let mut widths = HEADER.map(|h| h.chars().count());
    for row in &rows {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: &[String]| {
        let mut s = String::new();
        for (i, (c, w)) in cells.iter().zip(widths).enumerate() {
            let pad = w - c.chars().count();
            if i == 0 {
                s.push_str(c);
                s.push_str(&" ".repeat(pad));
            } else {
                s.push_str("  ");
                s.push_str(&" ".repeat(pad));
                s.push_str(c);
            }
        }
        s.push('\n');
        s
    };
    let mut out = line(&HEADER.map(String::from));
    let rule: usize = widths.iter().sum::<usize>() + 2 * (widths.len() - 1);
    out.push_str(&"-".repeat(rule));
    out.push('\n');
    for (i, row) in rows.iter().enumerate() {
        if i == rows.len() - 1 {
            out.push_str(&"-".repeat(rule));
            out.push('\n');
        }
        out.push_str(&line(row));
    }
    let t = &est.total;
    writeln!(out).unwrap();
    writeln!(out, "Syntax errors: {} of {} revisions ({})", t.syntax, t.revisions, percent(est.syntax_share())).unwrap();
    writeln!(out, "RoboJS errors: {} of {} revisions ({}), estimated", t.robojs, t.revisions, percent(est.robojs_share()))
        .unwrap();
    writeln!(out).unwrap();
    writeln!(out, "RoboJS errors by category (revisions):").unwrap();
    let name_width = est.categories.keys().map(|c| c.name().len()).max().unwrap_or(0);
    for (c, n) in &est.categories {
        writeln!(out, "  {:<name_width$}  {n}", c.name()).unwrap();
    }
    out
}
