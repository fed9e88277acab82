//! Plain-text and CSV renderings of the result tables: the per-cell
//! metric summary, the FP%/FN% grid with class-balance movement flags,
//! the ablation deltas and the token statistics.

use std::fmt::Write as _;

use smsfraud_core::corpus::DatasetStats;
use smsfraud_core::eval::EvaluationReport;

use crate::runner::{AblationResults, CellOutcome, MatrixResults};

fn pad(s: &str, width: usize) -> String {
    format!("{s:<width$}")
}

fn render_aligned(rows: &[Vec<String>]) -> String {
    let columns = rows.iter().map(Vec::len).max().unwrap_or(0);
    let mut widths = vec![0usize; columns];
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let mut out = String::new();
    for row in rows {
        let line: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(i, cell)| pad(cell, widths[i]))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn csv_line(cells: &[String]) -> String {
    cells
        .iter()
        .map(|c| {
            if c.contains(',') || c.contains('"') {
                format!("\"{}\"", c.replace('"', "\"\""))
            } else {
                c.clone()
            }
        })
        .collect::<Vec<_>>()
        .join(",")
}

const SUMMARY_HEADER: [&str; 15] = [
    "Dataset", "Model", "Accuracy", "F-Prec", "F-Recall", "F-F1", "N-Prec", "N-Recall", "N-F1",
    "AUC-ROC", "Incorrect", "FN", "FP", "FP%", "FN%",
];

fn summary_row(cell: &CellOutcome) -> Vec<String> {
    match &cell.report {
        Ok(r) => vec![
            cell.dataset_tag.clone(),
            cell.spec.column_label(),
            format!("{:.2}", r.metrics.accuracy),
            format!("{:.2}", r.metrics.fraud.precision),
            format!("{:.2}", r.metrics.fraud.recall),
            format!("{:.2}", r.metrics.fraud.f1),
            format!("{:.2}", r.metrics.normal.precision),
            format!("{:.2}", r.metrics.normal.recall),
            format!("{:.2}", r.metrics.normal.f1),
            format!("{:.2}", r.auc_roc),
            r.confusion.incorrect().to_string(),
            r.confusion.fn_.to_string(),
            r.confusion.fp.to_string(),
            format!("{:.1}", r.fp_pct),
            format!("{:.1}", r.fn_pct),
        ],
        Err(e) => {
            let mut row = vec![
                cell.dataset_tag.clone(),
                cell.spec.column_label(),
                format!("FAILED: {e}"),
            ];
            row.resize(SUMMARY_HEADER.len(), String::new());
            row
        }
    }
}

/// Per-cell metric summary shaped like the accuracy table.
pub fn summary_text(results: &MatrixResults) -> String {
    let mut rows = vec![SUMMARY_HEADER.iter().map(|s| s.to_string()).collect::<Vec<_>>()];
    rows.extend(results.cells.iter().map(summary_row));
    render_aligned(&rows)
}

pub fn summary_csv(results: &MatrixResults) -> String {
    let mut out = csv_line(&SUMMARY_HEADER.iter().map(|s| s.to_string()).collect::<Vec<_>>());
    out.push('\n');
    for cell in &results.cells {
        out.push_str(&csv_line(&summary_row(cell)));
        out.push('\n');
    }
    out
}

fn cell_rate(results: &MatrixResults, tag: &str, label: &str) -> Option<(f64, f64)> {
    results
        .cells
        .iter()
        .find(|c| c.dataset_tag == tag && c.spec.column_label() == label)
        .and_then(|c| c.report.as_ref().ok())
        .map(|r| (r.fp_pct, r.fn_pct))
}

fn column_labels(results: &MatrixResults) -> Vec<String> {
    let mut labels = Vec::new();
    for cell in &results.cells {
        let label = cell.spec.column_label();
        if !labels.contains(&label) {
            labels.push(label);
        }
    }
    labels
}

fn dataset_tags(results: &MatrixResults) -> Vec<String> {
    let mut tags = Vec::new();
    for cell in &results.cells {
        if !tags.contains(&cell.dataset_tag) {
            tags.push(cell.dataset_tag.clone());
        }
    }
    tags
}

/// FP%/FN% grid: one dataset per row pair, one model variant per column.
pub fn rates_text(results: &MatrixResults) -> String {
    let labels = column_labels(results);
    let mut rows = Vec::new();
    let mut header = vec!["Dataset".to_string(), "Rate".to_string()];
    header.extend(labels.clone());
    rows.push(header);
    for tag in dataset_tags(results) {
        for (rate_name, pick) in [("FP, %", 0usize), ("FN, %", 1usize)] {
            let mut row = vec![tag.clone(), rate_name.to_string()];
            for label in &labels {
                row.push(match cell_rate(results, &tag, label) {
                    Some(rates) => {
                        format!("{:.1}", if pick == 0 { rates.0 } else { rates.1 })
                    }
                    None => "-".to_string(),
                });
            }
            rows.push(row);
        }
    }
    render_aligned(&rows)
}

pub fn rates_csv(results: &MatrixResults) -> String {
    let labels = column_labels(results);
    let mut header = vec!["Dataset".to_string(), "Rate".to_string()];
    header.extend(labels.clone());
    let mut out = csv_line(&header);
    out.push('\n');
    for tag in dataset_tags(results) {
        for (rate_name, pick) in [("FP%", 0usize), ("FN%", 1usize)] {
            let mut row = vec![tag.clone(), rate_name.to_string()];
            for label in &labels {
                row.push(match cell_rate(results, &tag, label) {
                    Some(rates) => {
                        format!("{}", if pick == 0 { rates.0 } else { rates.1 })
                    }
                    None => String::new(),
                });
            }
            out.push_str(&csv_line(&row));
            out.push('\n');
        }
    }
    out
}

fn direction(delta: f64) -> &'static str {
    if delta < -1e-9 {
        "improved"
    } else if delta > 1e-9 {
        "worsened"
    } else {
        "unchanged"
    }
}

/// For every (tag, tag + "e") pair present, reports how FP% and FN% moved
/// when the extended dataset was used.
pub fn class_balance_movements(results: &MatrixResults) -> String {
    let tags = dataset_tags(results);
    let labels = column_labels(results);
    let mut out = String::new();
    for base in &tags {
        let extended = format!("{base}e");
        if !tags.contains(&extended) {
            continue;
        }
        let _ = writeln!(out, "{extended} vs {base} (positive delta = higher rate):");
        for label in &labels {
            let (Some(b), Some(e)) = (
                cell_rate(results, base, label),
                cell_rate(results, &extended, label),
            ) else {
                continue;
            };
            let fp_delta = e.0 - b.0;
            let fn_delta = e.1 - b.1;
            let _ = writeln!(
                out,
                "  {label}: FP% {:.1} -> {:.1} ({}, {:+.1}); FN% {:.1} -> {:.1} ({}, {:+.1})",
                b.0,
                e.0,
                direction(fp_delta),
                fp_delta,
                b.1,
                e.1,
                direction(fn_delta),
                fn_delta,
            );
        }
    }
    if out.is_empty() {
        out.push_str("no base/extended dataset pairs in this run\n");
    }
    out
}

fn accuracy_of(outcome: &CellOutcome) -> Option<f64> {
    outcome.report.as_ref().ok().map(|r| r.metrics.accuracy)
}

/// Raw-vs-Full tokenization comparison with per-cell accuracy deltas.
pub fn ablation_text(results: &AblationResults) -> String {
    let mut rows = vec![vec![
        "Dataset".to_string(),
        "Model".to_string(),
        "Raw acc".to_string(),
        "Full acc".to_string(),
        "Delta (full-raw)".to_string(),
        "Direction".to_string(),
    ]];
    let mut negative_or_zero = 0usize;
    let mut counted = 0usize;
    for raw_cell in &results.raw.cells {
        let full_cell = results
            .full
            .find(&raw_cell.dataset_tag, raw_cell.spec.model, raw_cell.spec.tuned);
        let raw_acc = accuracy_of(raw_cell);
        let full_acc = full_cell.and_then(accuracy_of);
        let row = match (raw_acc, full_acc) {
            (Some(r), Some(f)) => {
                let delta = f - r;
                counted += 1;
                if delta <= 1e-12 {
                    negative_or_zero += 1;
                }
                vec![
                    raw_cell.dataset_tag.clone(),
                    raw_cell.spec.column_label(),
                    format!("{r:.3}"),
                    format!("{f:.3}"),
                    format!("{delta:+.3}"),
                    if delta < -1e-12 {
                        "full worse".to_string()
                    } else if delta > 1e-12 {
                        "full better".to_string()
                    } else {
                        "equal".to_string()
                    },
                ]
            }
            _ => vec![
                raw_cell.dataset_tag.clone(),
                raw_cell.spec.column_label(),
                raw_acc.map_or("N/A".into(), |r| format!("{r:.3}")),
                full_acc.map_or("N/A".into(), |f| format!("{f:.3}")),
                "N/A".to_string(),
                "N/A".to_string(),
            ],
        };
        rows.push(row);
    }
    let mut out = render_aligned(&rows);
    if counted > 0 {
        let _ = writeln!(
            out,
            "\nfull <= raw in {negative_or_zero} of {counted} cells \
             (punctuation/stop-word removal helped in {})",
            counted - negative_or_zero
        );
    }
    out
}

/// Token statistics table shaped like the corpus overview.
pub fn stats_text(stats: &[DatasetStats]) -> String {
    let mut rows = vec![vec![
        "Dataset".to_string(),
        "Records".to_string(),
        "Fraud".to_string(),
        "Normal".to_string(),
        "Tokens".to_string(),
        "Tokens(F)".to_string(),
        "Tokens(N)".to_string(),
        "Avg".to_string(),
        "Avg(F)".to_string(),
        "Avg(N)".to_string(),
        "Unique".to_string(),
    ]];
    for s in stats {
        rows.push(vec![
            s.tag.clone(),
            s.n_total.to_string(),
            s.n_fraud.to_string(),
            s.n_normal.to_string(),
            s.tokens_total.to_string(),
            s.tokens_fraud.to_string(),
            s.tokens_normal.to_string(),
            format!("{:.1}", s.avg_tokens_any),
            format!("{:.1}", s.avg_tokens_fraud),
            format!("{:.1}", s.avg_tokens_normal),
            s.unique_tokens.to_string(),
        ]);
    }
    render_aligned(&rows)
}

pub fn stats_csv(stats: &[DatasetStats]) -> String {
    let header = [
        "dataset",
        "records",
        "fraud",
        "normal",
        "tokens_total",
        "tokens_fraud",
        "tokens_normal",
        "avg_tokens",
        "avg_tokens_fraud",
        "avg_tokens_normal",
        "unique_tokens",
    ];
    let mut out = header.join(",");
    out.push('\n');
    for s in stats {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{}",
            s.tag,
            s.n_total,
            s.n_fraud,
            s.n_normal,
            s.tokens_total,
            s.tokens_fraud,
            s.tokens_normal,
            s.avg_tokens_any,
            s.avg_tokens_fraud,
            s.avg_tokens_normal,
            s.unique_tokens
        );
    }
    out
}

/// Equality check that ignores the sidecar log: used by rerun-determinism
/// tests and by the partial-failure summaries.
pub fn report_of(cell: &CellOutcome) -> Option<&EvaluationReport> {
    cell.report.as_ref().ok()
}
