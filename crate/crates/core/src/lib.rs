//! Explainable 5-year composite-outcome risk modeling for hypertrophic
//! cardiomyopathy cohorts.
//!
//! The crate covers the full modeling loop on tabular echo/clinical/medication
//! data: cohort ingestion and endpoint labeling, leakage-safe preprocessing,
//! four native classifier families (RF, GB, LR, linear SVM) behind one
//! probabilistic contract, floating feature selection inside nested stratified
//! cross-validation, probability-mean ensembling, Shapley explanations,
//! Kaplan–Meier / log-rank survival comparison, longitudinal risk slopes, the
//! ESC Risk-SCD closed-form baseline, and a synthetic cohort generator with
//! known ground-truth separability for end-to-end verification.

pub mod cohort;
pub mod escscore;
pub mod explain;
pub mod longitudinal;
pub mod metrics;
pub mod models;
pub mod pipeline;
pub mod preprocess;
pub mod survival;
pub mod svg;
pub mod synth;

pub(crate) mod rng;
