use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{conflict_graph, is_k_colorable, Budget, Verdict};
use crate::drawings::{BookDrawing, CircularLayout};
use crate::enumeration::enumerate_classes;
use crate::error::{Error, Result};

/// Outcome of one layout's colorability check, in the per-layout log format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayoutLog {
    pub canonical_string: String,
    /// `not_colorable`, `colorable` or `budget_exceeded`.
    pub verdict: String,
    pub nodes: u64,
    pub millis: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coloring: Option<Vec<usize>>,
}

impl LayoutLog {
    fn is_final(&self) -> bool {
        self.verdict == "not_colorable" || (self.verdict == "colorable" && self.coloring.is_some())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum PipelineVerdict {
    /// No layout's conflict graph is `k`-colorable: every `k`-page drawing
    /// has a crossing.
    Proven,
    /// The layout's conflict graph has a proper `k`-coloring, i.e. a
    /// crossing-free `k`-page drawing.
    Refuted {
        layout: String,
        coloring: Vec<usize>,
    },
    Inconclusive {
        unfinished: Vec<String>,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub m: usize,
    pub n: usize,
    pub k: usize,
    #[serde(flatten)]
    pub verdict: PipelineVerdict,
    pub layouts: Vec<LayoutLog>,
}

impl VerifyReport {
    /// The crossing-free drawing behind a `Refuted` verdict, pages = colours.
    pub fn witness_drawing(&self) -> Option<BookDrawing> {
        match &self.verdict {
            PipelineVerdict::Refuted { layout, coloring } => {
                let layout = CircularLayout::from_bitstring(layout).ok()?;
                BookDrawing::new(layout, self.k, coloring.clone()).ok()
            }
            _ => None,
        }
    }
}

pub type LogSink = Arc<dyn Fn(&LayoutLog) + Send + Sync>;

#[derive(Clone, Default)]
pub struct VerifyOptions {
    pub budget: Budget,
    /// Worker threads; `None` uses rayon's default pool.
    pub jobs: Option<usize>,
    /// Earlier results; final verdicts here are reused instead of recomputed.
    pub resume: Vec<LayoutLog>,
    /// Called once per freshly computed layout, in completion order.
    pub on_result: Option<LogSink>,
}

/// Runs the colorability check over every canonical layout of `K_{m,n}`.
pub fn verify_positive_crossing(m: usize, n: usize, k: usize, opts: &VerifyOptions) -> Result<VerifyReport> {
    let layouts: Vec<String> = enumerate_classes(m, n)?.map(|c| c.canonical).collect();
    let mut report = verify_layouts(&layouts, k, opts)?;
    report.m = m;
    report.n = n;
    Ok(report)
}

/// Same as [`verify_positive_crossing`] over an explicit list of layouts.
pub fn verify_layouts(layouts: &[String], k: usize, opts: &VerifyOptions) -> Result<VerifyReport> {
    let parsed = layouts.iter().map(|s| CircularLayout::from_bitstring(s)).collect::<Result<Vec<_>>>()?;
    let (m, n) = parsed.first().map_or((0, 0), |l| (l.m(), l.n()));
    let previous: HashMap<&str, &LayoutLog> =
        opts.resume.iter().filter(|log| log.is_final()).map(|log| (log.canonical_string.as_str(), log)).collect();

    let check = |layout: &CircularLayout| -> Result<LayoutLog> {
        let key = layout.bitstring();
        if let Some(&log) = previous.get(key.as_str()) {
            return Ok(log.clone());
        }
        let graph = conflict_graph(layout);
        let result = is_k_colorable(&graph, k, opts.budget)?;
        let (verdict, coloring) = match result.verdict {
            Verdict::Colorable(c) => ("colorable", Some(c)),
            Verdict::NotColorable => ("not_colorable", None),
            Verdict::BudgetExceeded => ("budget_exceeded", None),
        };
        let log = LayoutLog {
            canonical_string: key,
            verdict: verdict.to_string(),
            nodes: result.nodes,
            millis: result.elapsed.as_millis() as u64,
            coloring,
        };
        if let Some(sink) = &opts.on_result {
            sink(&log);
        }
        Ok(log)
    };

    let run = || parsed.par_iter().map(check).collect::<Result<Vec<_>>>();
    let mut logs = match opts.jobs {
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build()
            .map_err(|e| Error::InvalidInput(e.to_string()))?
            .install(run)?,
        None => run()?,
    };
    logs.sort_by(|a, b| a.canonical_string.cmp(&b.canonical_string));

    let verdict = if let Some(log) = logs.iter().find(|l| l.verdict == "colorable") {
        PipelineVerdict::Refuted {
            layout: log.canonical_string.clone(),
            coloring: log.coloring.clone().expect("colorable logs carry a coloring"),
        }
    } else {
        let unfinished: Vec<String> =
            logs.iter().filter(|l| l.verdict != "not_colorable").map(|l| l.canonical_string.clone()).collect();
        if unfinished.is_empty() {
            PipelineVerdict::Proven
        } else {
            PipelineVerdict::Inconclusive { unfinished }
        }
    };
    Ok(VerifyReport { m, n, k, verdict, layouts: logs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drawings::count_crossings;

    #[test]
    fn k44_three_pages_is_refuted_with_embedding() {
        let report = verify_positive_crossing(4, 4, 3, &VerifyOptions::default()).unwrap();
        assert!(matches!(report.verdict, PipelineVerdict::Refuted { .. }));
        let d = report.witness_drawing().unwrap();
        assert_eq!(count_crossings(&d).unwrap().total, 0);
    }

    #[test]
    fn k33_two_pages_is_proven() {
        let report = verify_positive_crossing(3, 3, 2, &VerifyOptions::default()).unwrap();
        assert_eq!(report.verdict, PipelineVerdict::Proven);
        assert_eq!(report.layouts.len(), 3);
    }

    #[test]
    fn tiny_budget_is_inconclusive() {
        let opts = VerifyOptions { budget: Budget::nodes(0), ..Default::default() };
        let report = verify_positive_crossing(4, 5, 3, &opts).unwrap();
        let PipelineVerdict::Inconclusive { unfinished } = report.verdict else {
            panic!("expected inconclusive, got {:?}", report.verdict)
        };
        assert!(!unfinished.is_empty());
    }

    #[test]
    fn resume_reuses_final_verdicts() {
        let first = verify_positive_crossing(3, 3, 2, &VerifyOptions::default()).unwrap();
        let opts = VerifyOptions { budget: Budget::nodes(0), resume: first.layouts.clone(), ..Default::default() };
        let second = verify_positive_crossing(3, 3, 2, &opts).unwrap();
        assert_eq!(second.verdict, PipelineVerdict::Proven);
        assert_eq!(second.layouts, first.layouts);
    }

    #[test]
    fn verdict_independent_of_jobs() {
        let one = verify_positive_crossing(4, 5, 3, &VerifyOptions { jobs: Some(1), ..Default::default() }).unwrap();
        let four = verify_positive_crossing(4, 5, 3, &VerifyOptions { jobs: Some(4), ..Default::default() }).unwrap();
        assert_eq!(one.verdict, four.verdict);
        let verdicts = |r: &VerifyReport| r.layouts.iter().map(|l| l.verdict.clone()).collect::<Vec<_>>();
        assert_eq!(verdicts(&one), verdicts(&four));
    }
}
