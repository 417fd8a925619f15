//! Text, JSON and CSV renderings of evaluation results.

use serde::Serialize;

use crate::corpus::CorpusStats;
use crate::eval::{Breakdown, PrecisionCurve, RECALL_LEVELS};
use crate::pipeline::RunResult;
use crate::training::TrainingParams;

fn fmt_cell(p: Option<f64>) -> String {
    p.map_or_else(|| "-".to_string(), |p| format!("{p:.3}"))
}

/// Precision at each recall level plus the average, one column per run.
pub fn precision_table(columns: &[(&str, Option<&PrecisionCurve>)]) -> String {
    let width = columns.iter().map(|(l, _)| l.len()).max().unwrap_or(0).max(7) + 2;
    let mut out = format!("{:<8}", "Recall");
    for (label, _) in columns {
        out.push_str(&format!("{label:>width$}"));
    }
    out.push('\n');
    for (level, r) in RECALL_LEVELS.iter().enumerate() {
        out.push_str(&format!("{r:<8.1}"));
        for (_, curve) in columns {
            out.push_str(&format!("{:>width$}", fmt_cell(curve.map(|c| c.precision[level]))));
        }
        out.push('\n');
    }
    out.push_str(&format!("{:<8}", "Avg."));
    for (_, curve) in columns {
        out.push_str(&format!("{:>width$}", fmt_cell(curve.map(|c| c.average))));
    }
    out.push('\n');
    out
}

/// Average precision for rare, frequent, and all categories, one row per
/// run. Absent groups print as `-`.
pub fn breakdown_table(rows: &[(&str, &Breakdown)]) -> String {
    let label_w = rows.iter().map(|(l, _)| l.len()).max().unwrap_or(0).max(6) + 2;
    let threshold = rows.first().map_or(10, |(_, b)| b.threshold);
    let low = format!("<{threshold}");
    let high = format!(">={threshold}");
    let mut out = format!("{:<label_w$}{low:>8}{high:>8}{:>8}\n", "", "Total");
    for (label, b) in rows {
        out.push_str(&format!(
            "{label:<label_w$}{:>8}{:>8}{:>8}\n",
            fmt_cell(b.low.map(|c| c.average)),
            fmt_cell(b.high.map(|c| c.average)),
            fmt_cell(b.total.map(|c| c.average)),
        ));
    }
    if let Some((_, b)) = rows.first() {
        out.push_str(&format!(
            "({} categories with fewer than {threshold} training documents, {} with {threshold} or more)\n",
            b.low_count, b.high_count
        ));
    }
    out
}

/// Average precision of every evaluated category, one column per run.
pub fn category_table(runs: &[RunResult]) -> String {
    let Some(first) = runs.first() else {
        return String::new();
    };
    let width = runs.iter().map(|r| r.label.len()).max().unwrap_or(0).max(7) + 2;
    let mut out = format!("{:<16}{:>6}{:>6}", "Category", "Train", "Test");
    for r in runs {
        out.push_str(&format!("{:>width$}", r.label));
    }
    out.push('\n');
    for (cat, n_k) in &first.evaluation.n_k {
        out.push_str(&format!("{cat:<16}{n_k:>6}{:>6}", first.evaluation.n_test[cat]));
        for r in runs {
            out.push_str(&format!(
                "{:>width$}",
                fmt_cell(r.evaluation.curves.get(cat).map(|c| c.average))
            ));
        }
        out.push('\n');
    }
    out
}

/// The full text report for a set of runs sharing one collection.
pub fn text_report(runs: &[RunResult]) -> String {
    let columns: Vec<(&str, Option<&PrecisionCurve>)> = runs
        .iter()
        .map(|r| (r.label.as_str(), r.evaluation.macro_curve.as_ref()))
        .collect();
    let rows: Vec<(&str, &Breakdown)> = runs
        .iter()
        .map(|r| (r.label.as_str(), &r.evaluation.breakdown))
        .collect();
    let evaluated = runs.first().map_or(0, |r| r.evaluation.curves.len());
    let mut out = format!("Macro-averaged interpolated precision over {evaluated} categories\n\n");
    out.push_str(&precision_table(&columns));
    out.push_str("\nAverage precision by training frequency\n\n");
    out.push_str(&breakdown_table(&rows));
    out.push_str("\nPer-category average precision\n\n");
    out.push_str(&category_table(runs));
    out
}

/// Collection statistics followed by the text report.
pub fn full_report(stats: &CorpusStats, runs: &[RunResult]) -> String {
    let mut out = String::from("Collection statistics\n\n");
    out.push_str(&stats.to_table());
    out.push('\n');
    out.push_str(&text_report(runs));
    out
}

#[derive(Serialize)]
struct JsonCategory<'a> {
    category: &'a str,
    n_train: usize,
    n_test: usize,
    precision: &'a [f64; 11],
    average: f64,
}

#[derive(Serialize)]
struct JsonRun<'a> {
    label: &'a str,
    algorithm: &'a str,
    use_lexdb: bool,
    k_terms: usize,
    params: &'a TrainingParams,
    max_doc_norm: f64,
    representation_terms: usize,
    macro_average: Option<&'a PrecisionCurve>,
    breakdown: &'a Breakdown,
    categories: Vec<JsonCategory<'a>>,
}

/// Machine-readable results with per-category curves.
pub fn results_json(runs: &[RunResult]) -> String {
    let runs: Vec<JsonRun<'_>> = runs
        .iter()
        .map(|r| JsonRun {
            label: &r.label,
            algorithm: r.model.algorithm.as_str(),
            use_lexdb: r.model.use_lexdb,
            k_terms: r.model.k_terms,
            params: &r.model.params,
            max_doc_norm: r.model.max_norm,
            representation_terms: r.model.terms.len(),
            macro_average: r.evaluation.macro_curve.as_ref(),
            breakdown: &r.evaluation.breakdown,
            categories: r
                .evaluation
                .curves
                .iter()
                .map(|(c, curve)| JsonCategory {
                    category: c,
                    n_train: r.evaluation.n_k[c],
                    n_test: r.evaluation.n_test[c],
                    precision: &curve.precision,
                    average: curve.average,
                })
                .collect(),
        })
        .collect();
    let mut s = serde_json::to_string_pretty(&serde_json::json!({ "runs": runs })).expect("serializable");
    s.push('\n');
    s
}

/// One CSV row per (run, category) with the 11 precision values.
pub fn results_csv(runs: &[RunResult]) -> String {
    let mut out = String::from("run,category,n_train,n_test");
    for r in RECALL_LEVELS {
        out.push_str(&format!(",p{r:.1}"));
    }
    out.push_str(",average\n");
    for r in runs {
        for (c, curve) in &r.evaluation.curves {
            out.push_str(&format!(
                "{},{c},{},{}",
                r.label, r.evaluation.n_k[c], r.evaluation.n_test[c]
            ));
            for p in curve.precision {
                out.push_str(&format!(",{p}"));
            }
            out.push_str(&format!(",{}\n", curve.average));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precision_table_layout() {
        let a = PrecisionCurve::new([0.5; 11]);
        let t = precision_table(&[("Rocchio", Some(&a)), ("Widrow-Hoff", None)]);
        let lines: Vec<&str> = t.lines().collect();
        assert_eq!(lines.len(), 13);
        assert!(lines[1].starts_with("0.0"));
        assert!(lines[1].contains("0.500"));
        assert!(lines[12].starts_with("Avg."));
        assert!(lines[12].trim_end().ends_with('-'));
    }

    #[test]
    fn breakdown_marks_absent_groups() {
        let c = PrecisionCurve::new([0.25; 11]);
        let b = Breakdown {
            threshold: 10,
            low: None,
            high: Some(c),
            total: Some(c),
            low_count: 0,
            high_count: 1,
        };
        let t = breakdown_table(&[("Rocchio", &b)]);
        assert!(t.contains("<10"));
        let row = t.lines().nth(1).unwrap();
        assert_eq!(
            row.split_whitespace().collect::<Vec<_>>(),
            ["Rocchio", "-", "0.250", "0.250"]
        );
    }
}
