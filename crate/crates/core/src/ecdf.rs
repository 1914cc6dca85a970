//! Empirical distribution functions and their generalized inverse.

use crate::error::{check_finite, Result, ScreenError};

/// Sorted copy of a sample, evaluated as `F(t) = #{k : x_k <= t} / n`.
#[derive(Debug, Clone, PartialEq)]
pub struct EcdfTable {
    values: Vec<f64>,
}

impl EcdfTable {
    pub fn new(x: &[f64]) -> Result<Self> {
        if x.is_empty() {
            return Err(ScreenError::invalid("empirical CDF of an empty sample"));
        }
        check_finite(x, "sample")?;
        let mut values = x.to_vec();
        values.sort_by(f64::total_cmp);
        Ok(EcdfTable { values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Number of sample points `<= t`.
    pub fn count_le(&self, t: f64) -> usize {
        self.values.partition_point(|&v| v <= t)
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.count_le(t) as f64 / self.values.len() as f64
    }

    /// Smallest sample value `t` with `F(t) >= q`; `q = 0` gives the minimum.
    pub fn quantile(&self, q: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&q) {
            return Err(ScreenError::invalid(format!("quantile level {q} outside [0, 1]")));
        }
        let n = self.values.len() as f64;
        // F(values[k]) >= (k + 1) / n, with equality at the last copy of each tie
        let k = (1..=self.values.len())
            .find(|&k| k as f64 / n >= q)
            .unwrap_or(self.values.len());
        Ok(self.values[k.max(1) - 1])
    }
}

/// Stable ascending argsort under `total_cmp`.
pub(crate) fn argsort(x: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..x.len()).collect();
    order.sort_by(|&a, &b| x[a].total_cmp(&x[b]));
    order
}

/// Visits maximal runs of equal values in `order` (ascending), passing the run as a slice of
/// row indices.
pub(crate) fn for_each_tie_run(x: &[f64], order: &[usize], mut f: impl FnMut(&[usize])) {
    let mut start = 0;
    while start < order.len() {
        let v = x[order[start]];
        let mut end = start + 1;
        while end < order.len() && x[order[end]] == v {
            end += 1;
        }
        f(&order[start..end]);
        start = end;
    }
}

/// `F(x_i)` for every sample point, counting ties as `<=`. Runs in `O(n log n)`.
pub fn ecdf_at_samples(x: &[f64]) -> Result<Vec<f64>> {
    if x.is_empty() {
        return Err(ScreenError::invalid("empirical CDF of an empty sample"));
    }
    check_finite(x, "sample")?;
    let n = x.len() as f64;
    let order = argsort(x);
    let mut out = vec![0.0; x.len()];
    let mut seen = 0usize;
    for_each_tie_run(x, &order, |run| {
        seen += run.len();
        let f = seen as f64 / n;
        for &i in run {
            out[i] = f;
        }
    });
    Ok(out)
}

/// Generalized inverse of the empirical CDF: `inf { t in sample : F(t) >= q }`.
pub fn empirical_quantile(y: &[f64], q: f64) -> Result<f64> {
    EcdfTable::new(y)?.quantile(q)
}
