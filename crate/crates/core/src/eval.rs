//! Retrieval effectiveness: average precision, 11-point interpolated
//! precision and F, MAP, and paired model comparison.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::significance::{fisher_randomization, PermutationMode, RandomizationReport};
use crate::trec::{Qrels, Run};
use crate::Result;

/// Recall levels 0.0, 0.1, …, 1.0.
pub const RECALL_LEVELS: usize = 11;

/// AP comparisons closer than this count as ties.
pub const TIE_TOLERANCE: f64 = 1e-9;

fn require_relevant(relevant: &BTreeSet<String>) -> Result<()> {
    if relevant.is_empty() {
        return Err(Error::InvalidArgument("relevant set is empty".into()));
    }
    Ok(())
}

/// Mean over relevant documents of precision at the rank where each is
/// retrieved; unretrieved relevant documents contribute zero.
pub fn average_precision<S: AsRef<str>>(ranking: &[S], relevant: &BTreeSet<String>) -> Result<f64> {
    require_relevant(relevant)?;
    let mut hits = 0usize;
    let mut sum = 0.0;
    for (i, doc) in ranking.iter().enumerate() {
        if relevant.contains(doc.as_ref()) {
            hits += 1;
            sum += hits as f64 / (i + 1) as f64;
        }
    }
    Ok(sum / relevant.len() as f64)
}

/// Max-interpolated precision at the 11 standard recall levels: the best
/// precision at any cutoff whose recall reaches the level, else zero.
pub fn interpolated_precision_curve<S: AsRef<str>>(
    ranking: &[S],
    relevant: &BTreeSet<String>,
) -> Result<[f64; RECALL_LEVELS]> {
    require_relevant(relevant)?;
    let total = relevant.len();
    let mut curve = [0.0; RECALL_LEVELS];
    let mut hits = 0usize;
    for (i, doc) in ranking.iter().enumerate() {
        if !relevant.contains(doc.as_ref()) {
            // precision only drops at a miss; the max is reached at hits
            continue;
        }
        hits += 1;
        let precision = hits as f64 / (i + 1) as f64;
        // recall = hits / total reaches level j/10 iff 10·hits ≥ j·total
        for (j, slot) in curve.iter_mut().enumerate() {
            if 10 * hits >= j * total && precision > *slot {
                *slot = precision;
            }
        }
    }
    Ok(curve)
}

/// Balanced harmonic mean; zero when both inputs are zero.
pub fn f_measure(precision: f64, recall: f64) -> f64 {
    if precision + recall == 0.0 {
        0.0
    } else {
        2.0 * precision * recall / (precision + recall)
    }
}

pub fn recall_level(j: usize) -> f64 {
    j as f64 / 10.0
}

pub fn mean_average_precision(aps: &[f64]) -> Result<f64> {
    if aps.is_empty() {
        return Err(Error::InvalidArgument("no evaluated queries".into()));
    }
    Ok(aps.iter().sum::<f64>() / aps.len() as f64)
}

/// `(a − b) / b`
pub fn relative_improvement(a: f64, b: f64) -> f64 {
    (a - b) / b
}

/// One decimal percentage, as in `26.5%`.
pub fn format_percent(ratio: f64) -> String {
    format!("{:.1}%", ratio * 100.0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QueryEval {
    pub query: String,
    pub ap: f64,
    pub precision: [f64; RECALL_LEVELS],
    /// F(P_interp(r), r) at each level.
    pub f: [f64; RECALL_LEVELS],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub run: String,
    pub queries: Vec<QueryEval>,
    /// Judged queries without relevant documents; left out of averages.
    pub excluded: Vec<String>,
    /// Evaluated queries the run has no ranking for (scored as empty).
    pub missing_from_run: Vec<String>,
    pub map: f64,
    pub mean_precision: [f64; RECALL_LEVELS],
    /// Mean of per-query F at each level.
    pub mean_f: [f64; RECALL_LEVELS],
    /// F of the mean precision at each level.
    pub f_of_mean_precision: [f64; RECALL_LEVELS],
}

impl EvalReport {
    pub fn ap(&self, query: &str) -> Option<f64> {
        self.queries.iter().find(|q| q.query == query).map(|q| q.ap)
    }
}

pub fn evaluate(run: &Run, qrels: &Qrels) -> Result<EvalReport> {
    let run_queries: BTreeSet<&str> = run.queries().collect();
    if !qrels.queries().any(|(q, _)| run_queries.contains(q)) {
        return Err(Error::InvalidArgument(format!(
            "run `{}` shares no query ids with the qrels",
            run.tag
        )));
    }
    let mut queries = Vec::new();
    let mut excluded = Vec::new();
    let mut missing = Vec::new();
    for (q, relevant) in qrels.queries() {
        if relevant.is_empty() {
            excluded.push(q.to_string());
            continue;
        }
        let ranking = run.ranking(q).unwrap_or_else(|| {
            missing.push(q.to_string());
            Vec::new()
        });
        let ap = average_precision(&ranking, relevant)?;
        let precision = interpolated_precision_curve(&ranking, relevant)?;
        let f = std::array::from_fn(|j| f_measure(precision[j], recall_level(j)));
        queries.push(QueryEval {
            query: q.to_string(),
            ap,
            precision,
            f,
        });
    }
    let aps: Vec<f64> = queries.iter().map(|q| q.ap).collect();
    let map = mean_average_precision(&aps)?;
    let n = queries.len() as f64;
    let mean_precision: [f64; RECALL_LEVELS] =
        std::array::from_fn(|j| queries.iter().map(|q| q.precision[j]).sum::<f64>() / n);
    let mean_f = std::array::from_fn(|j| queries.iter().map(|q| q.f[j]).sum::<f64>() / n);
    let f_of_mean_precision = std::array::from_fn(|j| f_measure(mean_precision[j], recall_level(j)));
    Ok(EvalReport {
        run: run.tag.clone(),
        queries,
        excluded,
        missing_from_run: missing,
        map,
        mean_precision,
        mean_f,
        f_of_mean_precision,
    })
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WinTieLoss {
    pub wins: usize,
    pub ties: usize,
    pub losses: usize,
}

/// Per-query AP comparison of `a` against `b` over their shared queries.
pub fn win_tie_loss(a: &EvalReport, b: &EvalReport) -> WinTieLoss {
    let mut out = WinTieLoss::default();
    for qa in &a.queries {
        if let Some(bp) = b.ap(&qa.query) {
            let d = qa.ap - bp;
            if d.abs() <= TIE_TOLERANCE {
                out.ties += 1;
            } else if d > 0.0 {
                out.wins += 1;
            } else {
                out.losses += 1;
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub a: EvalReport,
    pub b: EvalReport,
    /// (MAP(a) − MAP(b)) / MAP(b)
    pub improvement: f64,
    pub record: WinTieLoss,
    pub randomization: RandomizationReport,
}

pub fn compare(
    run_a: &Run,
    run_b: &Run,
    qrels: &Qrels,
    mode: PermutationMode,
    permutations: u64,
    seed: u64,
) -> Result<Comparison> {
    let a = evaluate(run_a, qrels)?;
    let b = evaluate(run_b, qrels)?;
    // Both cover exactly the judged queries with relevant documents.
    let ap_a: Vec<f64> = a.queries.iter().map(|q| q.ap).collect();
    let ap_b: Vec<f64> = b.queries.iter().map(|q| q.ap).collect();
    let randomization = fisher_randomization(&ap_a, &ap_b, mode, permutations, seed)?;
    Ok(Comparison {
        improvement: relative_improvement(a.map, b.map),
        record: win_tie_loss(&a, &b),
        randomization,
        a,
        b,
    })
}

fn row(out: &mut String, label: &str, values: &[f64; RECALL_LEVELS]) {
    let _ = write!(out, "{label:<26}");
    for v in values {
        let _ = write!(out, "{:>7.1}", v * 100.0);
    }
    out.push('\n');
}

/// Precision and F at the 11 recall levels, one row per run, in percent.
pub fn format_curve_table(reports: &[&EvalReport]) -> String {
    let mut out = String::new();
    let _ = write!(out, "{:<26}", "measure / run  recall(%)");
    for j in 0..RECALL_LEVELS {
        let _ = write!(out, "{:>7}", j * 10);
    }
    out.push('\n');
    for r in reports {
        row(&mut out, &format!("P     {}", r.run), &r.mean_precision);
    }
    for r in reports {
        row(&mut out, &format!("F     {}", r.run), &r.mean_f);
    }
    for r in reports {
        row(&mut out, &format!("F(P)  {}", r.run), &r.f_of_mean_precision);
    }
    out
}

pub fn format_report(report: &EvalReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "run: {}", report.run);
    let _ = writeln!(out, "evaluated queries: {}", report.queries.len());
    if !report.excluded.is_empty() {
        let _ = writeln!(
            out,
            "excluded (no relevant documents): {}",
            report.excluded.join(", ")
        );
    }
    if !report.missing_from_run.is_empty() {
        let _ = writeln!(out, "missing from run: {}", report.missing_from_run.join(", "));
    }
    for q in &report.queries {
        let _ = writeln!(out, "AP {:<12} {:.4}", q.query, q.ap);
    }
    let _ = writeln!(out, "MAP {:.4}", report.map);
    out.push('\n');
    out.push_str(&format_curve_table(&[report]));
    out
}

pub fn format_comparison(c: &Comparison) -> String {
    let mut out = String::new();
    out.push_str(&format_curve_table(&[&c.a, &c.b]));
    out.push('\n');
    let _ = writeln!(out, "{:<12}{:>10}{:>10}", "model", c.a.run, c.b.run);
    let _ = writeln!(out, "{:<12}{:>10.4}{:>10.4}", "MAP", c.a.map, c.b.map);
    let _ = writeln!(
        out,
        "{:<12}{:>10}{:>10}",
        "improvement",
        "",
        format_percent(c.improvement)
    );
    let _ = writeln!(
        out,
        "{} vs {}: better {}, equal {}, worse {}",
        c.a.run, c.b.run, c.record.wins, c.record.ties, c.record.losses
    );
    out.push('\n');
    let r = &c.randomization;
    let _ = writeln!(
        out,
        "{:<10}{:<10}{:>14}{:>10}{:>10}{:>12}",
        "A", "B", "|MAP(A)-MAP(B)|", "N-", "N+", "p"
    );
    let _ = writeln!(
        out,
        "{:<10}{:<10}{:>14.4}{:>10}{:>10}{:>12.5}",
        c.a.run,
        c.b.run,
        r.observed_diff.abs(),
        r.n_minus,
        r.n_plus,
        r.p_two_sided
    );
    let _ = writeln!(
        out,
        "({} permutations, {}, seed {})",
        r.permutations,
        match r.mode {
            PermutationMode::Sampled => "sampled",
            PermutationMode::Exhaustive => "exhaustive",
        },
        r.rng_seed
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(ids: &[&str]) -> BTreeSet<String> {
        ids.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn ap_examples() {
        let ap = average_precision(&["d1", "d2", "d3"], &rel(&["d1", "d3"])).unwrap();
        assert!((ap - (1.0 + 2.0 / 3.0) / 2.0).abs() < 1e-15);
        assert_eq!(
            average_precision(&["a", "b", "x"], &rel(&["a", "b"])).unwrap(),
            1.0
        );
        assert_eq!(average_precision(&["x", "y"], &rel(&["a"])).unwrap(), 0.0);
        assert!(average_precision(&["x"], &rel(&[])).is_err());
    }

    #[test]
    fn curve_examples() {
        let c = interpolated_precision_curve(&["r1", "n1", "r2", "n2"], &rel(&["r1", "r2"])).unwrap();
        for (j, v) in c.iter().enumerate() {
            let want = if j <= 5 { 1.0 } else { 2.0 / 3.0 };
            assert!((v - want).abs() < 1e-15, "level {j}: {v}");
        }
        let c = interpolated_precision_curve(&["a", "b"], &rel(&["a", "b"])).unwrap();
        assert_eq!(c, [1.0; RECALL_LEVELS]);
        let c = interpolated_precision_curve(&["x"], &rel(&["a"])).unwrap();
        assert_eq!(c, [0.0; RECALL_LEVELS]);
    }

    #[test]
    fn f_examples() {
        assert_eq!(f_measure(0.5, 0.5), 0.5);
        assert_eq!(f_measure(0.7, 0.0), 0.0);
        assert_eq!(f_measure(0.0, 0.0), 0.0);
        assert!((f_measure(0.372, 1.0) - 0.5423).abs() < 5e-5);
    }

    #[test]
    fn map_and_improvement() {
        assert_eq!(mean_average_precision(&[0.5, 1.0]).unwrap(), 0.75);
        assert!(mean_average_precision(&[]).is_err());
        assert_eq!(format_percent(relative_improvement(0.6451, 0.5099)), "26.5%");
        assert_eq!(format_percent(relative_improvement(0.6451, 0.5474)), "17.8%");
    }

    fn run(tag: &str, lists: &[(&str, &[&str])]) -> Run {
        let mut text = String::new();
        for (q, docs) in lists {
            for (i, d) in docs.iter().enumerate() {
                text.push_str(&format!("{q} Q0 {d} {} {} {tag}\n", i + 1, 1.0 / (i + 1) as f64));
            }
        }
        Run::parse("run", &text).unwrap()
    }

    #[test]
    fn evaluate_excludes_and_tracks_missing() {
        let qrels = Qrels::parse("q", "q1 0 a 1\nq2 0 b 1\nq3 0 c 0\n").unwrap();
        let r = run("x", &[("q1", &["a", "z"])]);
        let rep = evaluate(&r, &qrels).unwrap();
        assert_eq!(rep.excluded, ["q3"]);
        assert_eq!(rep.missing_from_run, ["q2"]);
        assert_eq!(rep.queries.len(), 2);
        assert_eq!(rep.map, 0.5);

        let disjoint = run("y", &[("q9", &["a"])]);
        assert!(evaluate(&disjoint, &qrels).is_err());
    }

    #[test]
    fn compare_identical_runs() {
        let qrels = Qrels::parse("q", "q1 0 a 1\nq2 0 b 1\n").unwrap();
        let r = run("x", &[("q1", &["z", "a"]), ("q2", &["b"])]);
        let c = compare(&r, &r, &qrels, PermutationMode::Exhaustive, 0, 0).unwrap();
        assert_eq!(c.randomization.observed_diff, 0.0);
        assert_eq!(c.randomization.p_two_sided, 1.0);
        assert_eq!(
            c.record,
            WinTieLoss {
                wins: 0,
                ties: 2,
                losses: 0
            }
        );
        let json = serde_json::to_string(&c).unwrap();
        let back: Comparison = serde_json::from_str(&json).unwrap();
        back.randomization.verify().unwrap();
        assert!(format_comparison(&c).contains("1.00000"));
    }
}
