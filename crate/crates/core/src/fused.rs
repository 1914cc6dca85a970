//! Fusion of sliced mean-variance statistics over several slice counts.

use crate::data::ResponseKind;
use crate::ecdf::argsort;
use crate::error::{check_finite, Result, ScreenError};
use crate::mv::mv_sorted;
use crate::slicing::{
    build_categorical_slices, build_discrete_slices, build_quantile_slices, SliceLabels,
};

/// Slice counts `3..=ceil(n^(1/3))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefaultSchemes {
    pub counts: Vec<usize>,
    /// Set when `n < 27`; the list is then just `{3}`.
    pub undersized: bool,
}

/// Smallest `m` with `m^3 >= n`.
pub fn cube_root_ceil(n: usize) -> usize {
    let mut m = (n as f64).cbrt().round() as usize;
    while m * m * m < n {
        m += 1;
    }
    while m > 0 && (m - 1) * (m - 1) * (m - 1) >= n {
        m -= 1;
    }
    m
}

pub fn default_schemes(n: usize) -> DefaultSchemes {
    if n < 27 {
        return DefaultSchemes {
            counts: vec![3],
            undersized: true,
        };
    }
    DefaultSchemes {
        counts: (3..=cube_root_ceil(n)).collect(),
        undersized: false,
    }
}

/// Per-scheme statistics for one predictor and their sum.
#[derive(Debug, Clone, PartialEq)]
pub struct FmvScore {
    pub per_scheme: Vec<f64>,
    pub fused: f64,
    /// No scheme produced two or more slices; `fused` is 0.
    pub degenerate: bool,
}

/// Response slicings for every scheme, computed once and shared by all predictor columns.
#[derive(Debug, Clone)]
pub struct SlicePlan {
    schemes: Vec<usize>,
    /// `None` where the slicing was degenerate.
    labels: Vec<Option<SliceLabels>>,
}

impl SlicePlan {
    /// Slices `y` once per scheme. Categorical responses ignore `schemes` and use their label
    /// partition once.
    pub fn new(y: &[f64], kind: ResponseKind, schemes: &[usize]) -> Result<Self> {
        if schemes.is_empty() {
            return Err(ScreenError::invalid("at least one slice scheme is required"));
        }
        check_finite(y, "response")?;
        let keep = |r: Result<SliceLabels>| match r {
            Ok(l) if l.is_degenerate() => Ok(None),
            Ok(l) => Ok(Some(l)),
            Err(ScreenError::Degenerate(_)) => Ok(None),
            Err(e) => Err(e),
        };
        let (schemes, labels) = match kind {
            ResponseKind::Categorical => {
                let labels = keep(build_categorical_slices(y))?;
                let levels = labels.as_ref().map_or(1, SliceLabels::n_slices);
                (vec![levels], vec![labels])
            }
            ResponseKind::Count => {
                let labels = schemes
                    .iter()
                    .map(|&s| keep(build_discrete_slices(y, s)))
                    .collect::<Result<Vec<_>>>()?;
                (schemes.to_vec(), labels)
            }
            ResponseKind::Continuous => {
                let labels = schemes
                    .iter()
                    .map(|&s| keep(build_quantile_slices(y, s).map(|(_, l)| l)))
                    .collect::<Result<Vec<_>>>()?;
                (schemes.to_vec(), labels)
            }
        };
        Ok(SlicePlan { schemes, labels })
    }

    pub fn schemes(&self) -> &[usize] {
        &self.schemes
    }

    pub fn labels(&self) -> &[Option<SliceLabels>] {
        &self.labels
    }

    pub fn n(&self) -> Option<usize> {
        self.labels.iter().flatten().map(SliceLabels::n).next()
    }

    pub fn is_degenerate(&self) -> bool {
        self.labels.iter().all(Option::is_none)
    }

    pub(crate) fn check_column(&self, x: &[f64]) -> Result<()> {
        if let Some(n) = self.n() {
            if x.len() != n {
                return Err(ScreenError::invalid(format!(
                    "predictor has {} rows, response has {n}",
                    x.len()
                )));
            }
        }
        check_finite(x, "predictor")
    }
}

/// Fused score of one column under a precomputed plan. The column is sorted once and reused
/// for every scheme.
pub fn fmv_with_plan(x: &[f64], plan: &SlicePlan) -> Result<FmvScore> {
    plan.check_column(x)?;
    let order = argsort(x);
    let per_scheme: Vec<f64> = plan
        .labels
        .iter()
        .map(|l| l.as_ref().map_or(0.0, |l| mv_sorted(x, &order, l)))
        .collect();
    Ok(FmvScore {
        fused: per_scheme.iter().sum(),
        per_scheme,
        degenerate: plan.is_degenerate(),
    })
}

pub fn fmv_hat(x: &[f64], y: &[f64], kind: ResponseKind, schemes: &[usize]) -> Result<FmvScore> {
    if x.len() != y.len() {
        return Err(ScreenError::invalid(format!(
            "predictor has {} rows, response has {}",
            x.len(),
            y.len()
        )));
    }
    fmv_with_plan(x, &SlicePlan::new(y, kind, schemes)?)
}
