//! Partitioning the response into slices.
//!
//! A continuous response is cut at its empirical `g/S` quantiles. Slices are right-closed,
//! `(a_g, a_{g+1}]`, with the first slice open to `-inf` and the last to `+inf`, so every
//! observation gets a label and every quantile cut point belongs to the slice it closes.
//! Repeated cut points (heavy ties) are merged, which is why the effective slice count can
//! be smaller than the requested one.

use crate::error::{check_finite, Result, ScreenError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SliceMode {
    QuantileContinuous,
    DiscreteCapped,
    CategoricalIdentity,
}

/// Boundaries of a continuous partition, sentinels included.
#[derive(Debug, Clone, PartialEq)]
pub struct SliceScheme {
    requested: usize,
    boundaries: Vec<f64>,
    mode: SliceMode,
}

impl SliceScheme {
    pub fn requested(&self) -> usize {
        self.requested
    }

    /// `-inf = a_1 < a_2 < ... < a_{S_eff + 1} = +inf`.
    pub fn boundaries(&self) -> &[f64] {
        &self.boundaries
    }

    /// Interior cut points.
    pub fn cuts(&self) -> &[f64] {
        &self.boundaries[1..self.boundaries.len() - 1]
    }

    pub fn effective(&self) -> usize {
        self.boundaries.len() - 1
    }

    pub fn mode(&self) -> SliceMode {
        self.mode
    }

    /// Zero-based slice containing `v`.
    pub fn locate(&self, v: f64) -> usize {
        self.cuts().partition_point(|&c| c < v)
    }
}

/// Per-observation slice assignment with its counts.
///
/// Groups are stored zero-based and always consecutive: every slice in `0..n_slices()` is
/// nonempty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SliceLabels {
    groups: Vec<usize>,
    counts: Vec<usize>,
}

impl SliceLabels {
    /// Builds labels from arbitrary group ids, relabelling them consecutively in ascending id
    /// order so that no slice is empty.
    pub fn from_groups(raw: &[usize]) -> Result<Self> {
        if raw.is_empty() {
            return Err(ScreenError::invalid("slice labels over zero observations"));
        }
        let max = *raw.iter().max().unwrap();
        let mut occupied = vec![false; max + 1];
        for &g in raw {
            occupied[g] = true;
        }
        let mut remap = vec![usize::MAX; max + 1];
        let mut next = 0;
        for (g, &used) in occupied.iter().enumerate() {
            if used {
                remap[g] = next;
                next += 1;
            }
        }
        let groups: Vec<usize> = raw.iter().map(|&g| remap[g]).collect();
        let mut counts = vec![0usize; next];
        for &g in &groups {
            counts[g] += 1;
        }
        Ok(SliceLabels { groups, counts })
    }

    pub fn n(&self) -> usize {
        self.groups.len()
    }

    pub fn n_slices(&self) -> usize {
        self.counts.len()
    }

    pub fn groups(&self) -> &[usize] {
        &self.groups
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    /// `counts_g / n`.
    pub fn props(&self) -> Vec<f64> {
        let n = self.n() as f64;
        self.counts.iter().map(|&c| c as f64 / n).collect()
    }

    /// Labels in `1..=S_eff`.
    pub fn one_based(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g + 1).collect()
    }

    pub fn is_degenerate(&self) -> bool {
        self.counts.len() < 2
    }
}

/// Slices `y` at the given strictly increasing cut points, dropping cuts that would leave a
/// slice empty.
///
/// This is also the hook for slicing at known population quantiles instead of sample ones.
pub fn slices_from_cuts(y: &[f64], cuts: &[f64]) -> Result<(SliceScheme, SliceLabels)> {
    check_finite(y, "response")?;
    if y.is_empty() {
        return Err(ScreenError::invalid("cannot slice an empty response"));
    }
    if cuts.iter().any(|c| c.is_nan()) || cuts.windows(2).any(|w| w[0] >= w[1]) {
        return Err(ScreenError::invalid("cut points must be strictly increasing"));
    }
    let mut counts = vec![0usize; cuts.len() + 1];
    for &v in y {
        counts[cuts.partition_point(|&c| c < v)] += 1;
    }
    let nonempty: Vec<usize> = (0..counts.len()).filter(|&g| counts[g] > 0).collect();
    // Each surviving slice keeps its own upper cut; the last one extends to +inf.
    let kept: Vec<f64> = nonempty[..nonempty.len() - 1].iter().map(|&g| cuts[g]).collect();

    let mut boundaries = Vec::with_capacity(kept.len() + 2);
    boundaries.push(f64::NEG_INFINITY);
    boundaries.extend_from_slice(&kept);
    boundaries.push(f64::INFINITY);
    let scheme = SliceScheme {
        requested: cuts.len() + 1,
        boundaries,
        mode: SliceMode::QuantileContinuous,
    };
    let raw: Vec<usize> = y.iter().map(|&v| scheme.locate(v)).collect();
    let labels = SliceLabels::from_groups(&raw)?;
    debug_assert_eq!(labels.n_slices(), scheme.effective());
    Ok((scheme, labels))
}

/// Slices a continuous response at its empirical `g/S` quantiles, `g = 1..S-1`.
pub fn build_quantile_slices(y: &[f64], s: usize) -> Result<(SliceScheme, SliceLabels)> {
    let n = y.len();
    if s == 0 {
        return Err(ScreenError::invalid("slice count must be positive"));
    }
    if s > n {
        return Err(ScreenError::invalid(format!(
            "cannot cut {n} observations into {s} slices"
        )));
    }
    check_finite(y, "response")?;
    let mut sorted = y.to_vec();
    sorted.sort_by(f64::total_cmp);
    let (min, max) = (sorted[0], sorted[n - 1]);
    if s >= 2 && min == max {
        return Err(ScreenError::Degenerate(
            "response is constant, no two-slice partition exists".into(),
        ));
    }

    // Smallest 1-based position k with k/n >= g/S, i.e. k = ceil(g n / S).
    let mut cuts: Vec<f64> = (1..s).map(|g| sorted[(g * n).div_ceil(s) - 1]).collect();
    cuts.dedup();
    let (mut scheme, mut labels) = slices_from_cuts(y, &cuts)?;

    if s >= 2 && labels.is_degenerate() {
        // Every quantile landed on the tied maximum; split just below it instead.
        let below = sorted[..sorted.partition_point(|&v| v < max)]
            .last()
            .copied()
            .expect("non-constant response has a value below its maximum");
        (scheme, labels) = slices_from_cuts(y, &[below])?;
    }
    scheme.requested = s;
    Ok((scheme, labels))
}

/// Capped map for counts: `G = Y + 1` if `Y < S - 1`, else `G = S`, then compacted.
pub fn build_discrete_slices(y: &[f64], s: usize) -> Result<SliceLabels> {
    if s == 0 {
        return Err(ScreenError::invalid("slice count must be positive"));
    }
    let cap = (s - 1) as f64;
    let mut raw = Vec::with_capacity(y.len());
    for (i, &v) in y.iter().enumerate() {
        if !v.is_finite() || v < 0.0 || v.fract() != 0.0 {
            return Err(ScreenError::invalid(format!(
                "count response must be a nonnegative integer, got {v} at row {i}"
            )));
        }
        // zero-based: Y when Y < S - 1, else S - 1
        raw.push(if v < cap { v as usize } else { s - 1 });
    }
    SliceLabels::from_groups(&raw)
}

/// One slice per distinct label, in ascending label order.
pub fn build_categorical_slices(y: &[f64]) -> Result<SliceLabels> {
    check_finite(y, "response")?;
    let mut levels = y.to_vec();
    levels.sort_by(f64::total_cmp);
    levels.dedup();
    if levels.len() < 2 {
        return Err(ScreenError::Degenerate(
            "categorical response has a single label".into(),
        ));
    }
    let raw: Vec<usize> = y
        .iter()
        .map(|v| levels.binary_search_by(|l| l.total_cmp(v)).unwrap())
        .collect();
    SliceLabels::from_groups(&raw)
}
