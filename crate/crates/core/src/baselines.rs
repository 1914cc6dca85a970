//! Reference screeners: Pearson correlation, Kendall's tau-b and the fused Kolmogorov filter.

use std::fmt;
use std::str::FromStr;

use crate::data::ResponseKind;
use crate::ecdf::{argsort, for_each_tie_run};
use crate::error::{check_finite, Result, ScreenError};
use crate::fused::SlicePlan;
use crate::slicing::SliceLabels;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BaselineKind {
    PearsonSis,
    KendallRcs,
    FusedKolmogorov,
}

impl BaselineKind {
    pub const ALL: [BaselineKind; 3] = [
        BaselineKind::PearsonSis,
        BaselineKind::KendallRcs,
        BaselineKind::FusedKolmogorov,
    ];

    pub fn short_name(&self) -> &'static str {
        match self {
            BaselineKind::PearsonSis => "sis",
            BaselineKind::KendallRcs => "rcs",
            BaselineKind::FusedKolmogorov => "fks",
        }
    }

    /// Score of one column. `plan` is only consulted by the fused Kolmogorov filter.
    pub fn score(&self, x: &[f64], y: &[f64], plan: &SlicePlan) -> Result<MarginalScore> {
        match self {
            BaselineKind::PearsonSis => pearson_score(x, y),
            BaselineKind::KendallRcs => kendall_score(x, y),
            BaselineKind::FusedKolmogorov => fks_with_plan(x, plan),
        }
    }
}

impl fmt::Display for BaselineKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for BaselineKind {
    type Err = ScreenError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "sis" | "pearson" => Ok(BaselineKind::PearsonSis),
            "rcs" | "kendall" => Ok(BaselineKind::KendallRcs),
            "fks" => Ok(BaselineKind::FusedKolmogorov),
            other => Err(ScreenError::invalid(format!("unknown baseline `{other}`"))),
        }
    }
}

/// A marginal utility with a flag for inputs where it is undefined (reported as 0).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MarginalScore {
    pub value: f64,
    pub degenerate: bool,
}

impl MarginalScore {
    fn ok(value: f64) -> Self {
        MarginalScore {
            value,
            degenerate: false,
        }
    }

    fn flagged() -> Self {
        MarginalScore {
            value: 0.0,
            degenerate: true,
        }
    }
}

fn check_pair(x: &[f64], y: &[f64]) -> Result<()> {
    if x.len() != y.len() {
        return Err(ScreenError::invalid(format!(
            "predictor has {} rows, response has {}",
            x.len(),
            y.len()
        )));
    }
    if x.len() < 2 {
        return Err(ScreenError::invalid("need at least 2 observations"));
    }
    check_finite(x, "predictor")?;
    check_finite(y, "response")
}

/// `|corr(x, y)|`.
pub fn pearson_score(x: &[f64], y: &[f64]) -> Result<MarginalScore> {
    check_pair(x, y)?;
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (&a, &b) in x.iter().zip(y) {
        let (dx, dy) = (a - mx, b - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if syy == 0.0 {
        return Err(ScreenError::invalid("response has zero variance"));
    }
    if sxx == 0.0 {
        return Ok(MarginalScore::flagged());
    }
    Ok(MarginalScore::ok((sxy / (sxx * syy).sqrt()).abs().min(1.0)))
}

/// Pair counts behind tau-b.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KendallCounts {
    pub pairs: u64,
    pub tied_x: u64,
    pub tied_y: u64,
    pub tied_xy: u64,
    /// Pairs ordered oppositely by `x` and `y`.
    pub discordant: u64,
}

impl KendallCounts {
    pub fn concordant(&self) -> u64 {
        self.pairs + self.tied_xy - self.tied_x - self.tied_y - self.discordant
    }

    /// `None` when either variable is entirely tied.
    pub fn tau_b(&self) -> Option<f64> {
        let nx = self.pairs - self.tied_x;
        let ny = self.pairs - self.tied_y;
        if nx == 0 || ny == 0 {
            return None;
        }
        let num = self.concordant() as f64 - self.discordant as f64;
        Some(num / ((nx as f64).sqrt() * (ny as f64).sqrt()))
    }
}

fn tie_pairs(run: u64) -> u64 {
    run * (run - 1) / 2
}

/// Pair counts in `O(n log n)`: sort by `(x, y)`, then count inversions of `y` with a
/// bottom-up merge sort.
pub fn kendall_counts(x: &[f64], y: &[f64]) -> KendallCounts {
    let n = x.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| x[a].total_cmp(&x[b]).then(y[a].total_cmp(&y[b])));

    let mut tied_x = 0;
    let mut tied_xy = 0;
    let mut run_x = 1u64;
    let mut run_xy = 1u64;
    for w in order.windows(2) {
        let (a, b) = (w[0], w[1]);
        if x[a] == x[b] {
            run_x += 1;
            if y[a] == y[b] {
                run_xy += 1;
            } else {
                tied_xy += tie_pairs(run_xy);
                run_xy = 1;
            }
        } else {
            tied_x += tie_pairs(run_x);
            tied_xy += tie_pairs(run_xy);
            run_x = 1;
            run_xy = 1;
        }
    }
    tied_x += tie_pairs(run_x);
    tied_xy += tie_pairs(run_xy);

    let mut ys: Vec<f64> = order.iter().map(|&i| y[i]).collect();
    let mut buf = vec![0.0; n];
    let mut swaps = 0u64;
    let mut width = 1;
    while width < n {
        let mut lo = 0;
        while lo < n {
            let mid = (lo + width).min(n);
            let hi = (lo + 2 * width).min(n);
            let (mut i, mut j, mut k) = (lo, mid, lo);
            while i < mid && j < hi {
                if ys[i] <= ys[j] {
                    buf[k] = ys[i];
                    i += 1;
                } else {
                    buf[k] = ys[j];
                    j += 1;
                    swaps += (mid - i) as u64;
                }
                k += 1;
            }
            buf[k..k + mid - i].copy_from_slice(&ys[i..mid]);
            k += mid - i;
            buf[k..k + hi - j].copy_from_slice(&ys[j..hi]);
            lo = hi;
        }
        std::mem::swap(&mut ys, &mut buf);
        width *= 2;
    }

    let mut tied_y = 0;
    let mut run_y = 1u64;
    for w in ys.windows(2) {
        if w[0] == w[1] {
            run_y += 1;
        } else {
            tied_y += tie_pairs(run_y);
            run_y = 1;
        }
    }
    tied_y += tie_pairs(run_y);

    KendallCounts {
        pairs: tie_pairs(n as u64),
        tied_x,
        tied_y,
        tied_xy,
        discordant: swaps,
    }
}

/// Direct `O(n^2)` pair enumeration; the reference for [`kendall_counts`].
pub fn kendall_counts_pairwise(x: &[f64], y: &[f64]) -> KendallCounts {
    let n = x.len();
    let mut c = KendallCounts {
        pairs: tie_pairs(n as u64),
        tied_x: 0,
        tied_y: 0,
        tied_xy: 0,
        discordant: 0,
    };
    for i in 0..n {
        for j in i + 1..n {
            let tx = x[i] == x[j];
            let ty = y[i] == y[j];
            c.tied_x += tx as u64;
            c.tied_y += ty as u64;
            c.tied_xy += (tx && ty) as u64;
            if !tx && !ty && (x[i] < x[j]) != (y[i] < y[j]) {
                c.discordant += 1;
            }
        }
    }
    c
}

/// `|tau_b(x, y)|`.
pub fn kendall_score(x: &[f64], y: &[f64]) -> Result<MarginalScore> {
    check_pair(x, y)?;
    Ok(match kendall_counts(x, y).tau_b() {
        Some(t) => MarginalScore::ok(t.abs().min(1.0)),
        None => MarginalScore::flagged(),
    })
}

/// Largest gap between any two slice-conditional ECDFs of `x`, over the sample points.
pub fn kolmogorov_sliced(x: &[f64], labels: &SliceLabels) -> Result<f64> {
    if x.len() != labels.n() {
        return Err(ScreenError::invalid(format!(
            "predictor has {} rows but labels cover {}",
            x.len(),
            labels.n()
        )));
    }
    check_finite(x, "predictor")?;
    Ok(kolmogorov_sorted(x, &argsort(x), labels))
}

fn kolmogorov_sorted(x: &[f64], order: &[usize], labels: &SliceLabels) -> f64 {
    let groups = labels.groups();
    let counts = labels.counts();
    let mut cum = vec![0usize; counts.len()];
    let mut best = 0.0f64;
    for_each_tie_run(x, order, |run| {
        for &i in run {
            cum[groups[i]] += 1;
        }
        // the widest pair is always (max, min) over slices
        let (lo, hi) = cum.iter().zip(counts).fold((f64::INFINITY, 0.0f64), |(lo, hi), (&c, &s)| {
            let f = c as f64 / s as f64;
            (lo.min(f), hi.max(f))
        });
        best = best.max(hi - lo);
    });
    best
}

/// Sum over schemes of [`kolmogorov_sliced`]; degenerate schemes contribute 0.
pub fn fks_with_plan(x: &[f64], plan: &SlicePlan) -> Result<MarginalScore> {
    plan.check_column(x)?;
    let order = argsort(x);
    let value = plan
        .labels()
        .iter()
        .map(|l| l.as_ref().map_or(0.0, |l| kolmogorov_sorted(x, &order, l)))
        .sum();
    Ok(MarginalScore {
        value,
        degenerate: plan.is_degenerate(),
    })
}

pub fn fks_score(x: &[f64], y: &[f64], kind: ResponseKind, schemes: &[usize]) -> Result<MarginalScore> {
    if x.len() != y.len() {
        return Err(ScreenError::invalid(format!(
            "predictor has {} rows, response has {}",
            x.len(),
            y.len()
        )));
    }
    fks_with_plan(x, &SlicePlan::new(y, kind, schemes)?)
}
