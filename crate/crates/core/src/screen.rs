//! Ranking every predictor by its fused score and keeping the top `d_n`.

use rayon::prelude::*;

use crate::data::Dataset;
use crate::error::{Result, ScreenError};
use crate::fused::{fmv_with_plan, FmvScore, SlicePlan};

/// Fused scores for every column together with their descending ranking.
#[derive(Debug, Clone, PartialEq)]
pub struct ScreeningResult {
    pub scores: Vec<f64>,
    pub details: Vec<FmvScore>,
    /// Column indices sorted by score, descending, ties by ascending index.
    pub order: Vec<usize>,
    pub selected: Vec<usize>,
    pub d_n: usize,
    pub schemes: Vec<usize>,
}

impl ScreeningResult {
    pub fn degenerate(&self) -> bool {
        self.details.iter().any(|d| d.degenerate)
    }
}

/// `ceil(n / ln n)`, the usual screening size.
pub fn default_dn(n: usize) -> usize {
    if n < 3 {
        return n.max(1);
    }
    (n as f64 / (n as f64).ln()).ceil() as usize
}

/// Indices sorted by score descending; equal scores keep ascending index order.
pub fn rank_descending(scores: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]).then(a.cmp(&b)));
    order
}

/// Scores every column of `dataset` and selects the `d_n` largest.
pub fn screen(dataset: &Dataset, schemes: &[usize], d_n: usize) -> Result<ScreeningResult> {
    if d_n == 0 {
        return Err(ScreenError::invalid("selection size d_n must be at least 1"));
    }
    let plan = SlicePlan::new(dataset.y(), dataset.kind(), schemes)?;
    let details = score_columns(dataset, &plan)?;
    let scores: Vec<f64> = details.iter().map(|d| d.fused).collect();
    let order = rank_descending(&scores);
    let selected = order[..d_n.min(order.len())].to_vec();
    Ok(ScreeningResult {
        scores,
        details,
        order,
        selected,
        d_n,
        schemes: plan.schemes().to_vec(),
    })
}

/// Column-parallel scoring; results land in column order regardless of thread count.
pub fn score_columns(dataset: &Dataset, plan: &SlicePlan) -> Result<Vec<FmvScore>> {
    dataset
        .columns()
        .par_iter()
        .enumerate()
        .map(|(j, col)| fmv_with_plan(col, plan).map_err(|e| e.in_column(j)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::ResponseKind;

    #[test]
    fn ranking_breaks_ties_by_index() {
        assert_eq!(rank_descending(&[0.1, 0.5, 0.1, 0.5, 0.0]), vec![1, 3, 0, 2, 4]);
    }

    #[test]
    fn default_dn_values() {
        assert_eq!(default_dn(200), 38);
        assert_eq!(default_dn(400), 67);
    }

    #[test]
    fn zero_dn_rejected() {
        let ds = Dataset::new(vec![1., 2., 3.], vec![vec![1., 2., 3.]], ResponseKind::Continuous)
            .unwrap();
        assert!(screen(&ds, &[2], 0).is_err());
        let r = screen(&ds, &[2], 5).unwrap();
        assert_eq!(r.selected, vec![0]);
    }
}
