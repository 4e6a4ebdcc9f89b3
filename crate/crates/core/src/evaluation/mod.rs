//! Cross-validation, threshold-sweep metrics and version comparison.

mod crossval;
mod folds;
mod metrics;
mod versions;

pub use crossval::{
    evaluate_ranking, run_crossval, score_tables, sweep_swarm_size, sweep_swarm_size_paired, sweep_time, Aggregate,
    EvaluationReport, MeanStd, MethodSpec, Provenance, TrialReport,
};
pub use folds::{make_folds, FoldPlan, Trial};
pub use metrics::{
    average_precision_at_k, average_precision_of_relevance, descending_order, ranking_metrics, Curves, RankingMetrics,
    MAX_CURVE_POINTS,
};
pub use versions::{compare_versions, new_links, VersionReport};
