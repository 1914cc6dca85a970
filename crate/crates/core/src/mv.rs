//! Sliced mean-variance statistic.
//!
//! For a predictor column `x` and slice labels `G`,
//!
//! ```text
//! MV = (1/n) sum_i sum_g p_g (F_g(x_i) - F(x_i))^2
//! ```
//!
//! where `F` is the ECDF of `x`, `F_g` the ECDF of `x` restricted to slice `g`, and
//! `p_g` the slice proportion.

use crate::ecdf::{argsort, for_each_tie_run};
use crate::error::{check_finite, Result, ScreenError};
use crate::slicing::SliceLabels;

fn check_inputs(x: &[f64], labels: &SliceLabels) -> Result<()> {
    if x.len() != labels.n() {
        return Err(ScreenError::invalid(format!(
            "predictor has {} rows but labels cover {}",
            x.len(),
            labels.n()
        )));
    }
    check_finite(x, "predictor")
}

/// Sliced mean-variance estimate in `O(n (log n + S))`.
pub fn mv_hat(x: &[f64], labels: &SliceLabels) -> Result<f64> {
    check_inputs(x, labels)?;
    let order = argsort(x);
    Ok(mv_sorted(x, &order, labels))
}

/// Single pass over `x` in ascending order, keeping per-slice cumulative counts. Every member
/// of a tie run sees the counts after the whole run is absorbed, matching `<=` in the ECDF.
pub(crate) fn mv_sorted(x: &[f64], order: &[usize], labels: &SliceLabels) -> f64 {
    let n = labels.n() as f64;
    let groups = labels.groups();
    let counts = labels.counts();
    let props = labels.props();
    let mut cum = vec![0usize; counts.len()];
    let mut seen = 0usize;
    let mut total = 0.0;
    for_each_tie_run(x, order, |run| {
        for &i in run {
            cum[groups[i]] += 1;
        }
        seen += run.len();
        let f = seen as f64 / n;
        let inner: f64 = cum
            .iter()
            .zip(counts)
            .zip(&props)
            .map(|((&c, &size), &p)| {
                let d = c as f64 / size as f64 - f;
                p * d * d
            })
            .sum();
        total += run.len() as f64 * inner;
    });
    total / n
}

/// Literal `O(n^2 S)` evaluation of the same sum, kept as an oracle for [`mv_hat`].
pub fn mv_hat_bruteforce(x: &[f64], labels: &SliceLabels) -> Result<f64> {
    check_inputs(x, labels)?;
    let n = x.len();
    let nf = n as f64;
    let groups = labels.groups();
    let mut total = 0.0;
    for i in 0..n {
        let f_all = (0..n).filter(|&k| x[k] <= x[i]).count() as f64 / nf;
        for g in 0..labels.n_slices() {
            let p_g = (0..n).filter(|&k| groups[k] == g).count() as f64 / nf;
            let joint = (0..n).filter(|&k| x[k] <= x[i] && groups[k] == g).count() as f64 / nf;
            let f_g = joint / p_g;
            total += p_g * (f_g - f_all) * (f_g - f_all);
        }
    }
    Ok(total / nf)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn labels(g: &[usize]) -> SliceLabels {
        SliceLabels::from_groups(g).unwrap()
    }

    #[test]
    fn median_split_hand_value() {
        let x = [1.0, 2.0, 3.0, 4.0];
        let l = labels(&[0, 0, 1, 1]);
        assert_eq!(mv_hat_bruteforce(&x, &l).unwrap(), 0.09375);
        assert_eq!(mv_hat(&x, &l).unwrap(), 0.09375);
    }

    #[test]
    fn two_point_hand_value() {
        let x = [1.0, 2.0];
        let l = labels(&[0, 1]);
        assert_eq!(mv_hat_bruteforce(&x, &l).unwrap(), 0.125);
        assert_eq!(mv_hat(&x, &l).unwrap(), 0.125);
    }

    #[test]
    fn constant_predictor_scores_zero() {
        let x = [3.0; 4];
        let l = labels(&[0, 1, 0, 1]);
        assert_eq!(mv_hat(&x, &l).unwrap(), 0.0);
        assert_eq!(mv_hat_bruteforce(&x, &l).unwrap(), 0.0);
    }

    #[test]
    fn single_slice_scores_zero() {
        let x = [0.3, -1.0, 2.5, 0.7, 0.7];
        let l = labels(&[0; 5]);
        assert_eq!(mv_hat(&x, &l).unwrap(), 0.0);
        assert_eq!(mv_hat_bruteforce(&x, &l).unwrap(), 0.0);
    }

    #[test]
    fn length_mismatch_is_an_error() {
        let l = labels(&[0, 1, 1]);
        assert!(mv_hat(&[1.0, 2.0], &l).is_err());
        assert!(mv_hat_bruteforce(&[1.0, 2.0], &l).is_err());
        assert!(mv_hat(&[1.0, f64::NAN, 2.0], &l).is_err());
    }

    fn instance() -> impl Strategy<Value = (Vec<f64>, Vec<usize>)> {
        (2usize..60, 1usize..8).prop_flat_map(|(n, s)| {
            (
                // few distinct values so ties are common
                prop::collection::vec((-5i32..5).prop_map(|v| v as f64 * 0.5), n),
                prop::collection::vec(0..s, n),
            )
        })
    }

    proptest! {
        #[test]
        fn fast_path_matches_oracle((x, g) in instance()) {
            let l = labels(&g);
            let fast = mv_hat(&x, &l).unwrap();
            let slow = mv_hat_bruteforce(&x, &l).unwrap();
            prop_assert!((fast - slow).abs() <= 1e-12, "{fast} vs {slow}");
            prop_assert!((0.0..=1.0).contains(&fast));
        }

        #[test]
        fn row_permutation_leaves_score_unchanged((x, g) in instance(), seed in any::<u64>()) {
            let n = x.len();
            let mut perm: Vec<usize> = (0..n).collect();
            // Fisher-Yates with a tiny LCG, enough for shuffling
            let mut state = seed | 1;
            for i in (1..n).rev() {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                perm.swap(i, (state >> 33) as usize % (i + 1));
            }
            let xp: Vec<f64> = perm.iter().map(|&i| x[i]).collect();
            let gp: Vec<usize> = perm.iter().map(|&i| g[i]).collect();
            let a = mv_hat(&x, &labels(&g)).unwrap();
            let b = mv_hat(&xp, &labels(&gp)).unwrap();
            prop_assert_eq!(a, b);
        }
    }
}
