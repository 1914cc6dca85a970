//! Model-free feature screening with the fused mean-variance filter.
//!
//! A continuous response is sliced at several sample-quantile resolutions; for each slicing the
//! weighted Cramér-von Mises distance between every slice-conditional ECDF of a predictor and
//! its marginal ECDF is computed, and the results are summed over slicings. Predictors are
//! ranked by this fused score and the top `d_n` are kept.
//!
//! Alongside the filter the crate carries three reference screeners ([`baselines`]), seeded
//! simulation designs ([`simgen`]) and a replicated minimum-model-size harness ([`bench`]).

pub mod baselines;
pub mod bench;
pub mod data;
pub mod ecdf;
pub mod error;
pub mod fused;
pub mod mv;
pub mod screen;
pub mod simgen;
pub mod slicing;

pub use baselines::{fks_score, kendall_score, pearson_score, BaselineKind, MarginalScore};
pub use bench::{emit_table, mms, run_replications, MmsSummary, Report, Screener};
pub use data::{Dataset, ResponseKind};
pub use ecdf::{ecdf_at_samples, empirical_quantile, EcdfTable};
pub use error::{Result, ScreenError};
pub use fused::{default_schemes, fmv_hat, FmvScore, SlicePlan};
pub use mv::{mv_hat, mv_hat_bruteforce};
pub use screen::{default_dn, screen, ScreeningResult};
pub use simgen::{gen_experiment, sample_mvn, ExperimentId, ExperimentSpec, GeneratedInstance};
pub use slicing::{
    build_categorical_slices, build_discrete_slices, build_quantile_slices, SliceLabels, SliceScheme,
};
