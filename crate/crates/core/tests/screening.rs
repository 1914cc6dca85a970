use fmv_core::fused::fmv_with_plan;
use fmv_core::slicing::slices_from_cuts;
use fmv_core::{
    build_quantile_slices, default_schemes, fmv_hat, mv_hat, screen, Dataset, ExperimentId,
    ExperimentSpec, ResponseKind, SliceLabels, SlicePlan,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use statrs::distribution::{ContinuousCDF, Normal};

fn normals(n: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    (0..n).map(|_| rng.sample(StandardNormal)).collect()
}

#[test]
fn copy_beats_noise_and_constant_is_last() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let y = normals(200, &mut rng);
    let noise = normals(200, &mut rng);
    let ds = Dataset::new(y.clone(), vec![y, noise, vec![4.0; 200]], ResponseKind::Continuous).unwrap();
    let r = screen(&ds, &default_schemes(200).counts, 2).unwrap();
    assert!(r.selected.contains(&0));
    assert_eq!(r.order[2], 2);
    assert_eq!(r.scores[2], 0.0);
    assert_eq!(r.details[0].per_scheme.len(), 4);
}

#[test]
fn oversized_dn_selects_everything() {
    let mut rng = ChaCha8Rng::seed_from_u64(18);
    let y = normals(40, &mut rng);
    let cols = (0..5).map(|_| normals(40, &mut rng)).collect();
    let ds = Dataset::new(y, cols, ResponseKind::Continuous).unwrap();
    let r = screen(&ds, &[3, 4], 50).unwrap();
    assert_eq!(r.selected.len(), 5);
    let mut sel = r.selected.clone();
    sel.sort_unstable();
    assert_eq!(sel, vec![0, 1, 2, 3, 4]);
}

#[test]
fn column_permutation_maps_scores() {
    let inst = ExperimentSpec::new(ExperimentId::E3, 4).with_size(120, 25).generate().unwrap();
    let ds = &inst.dataset;
    let perm: Vec<usize> = (0..25).map(|j| (j * 7 + 3) % 25).collect();
    let cols = perm.iter().map(|&j| ds.column(j).to_vec()).collect();
    let permuted = Dataset::new(ds.y().to_vec(), cols, ResponseKind::Continuous).unwrap();
    let a = screen(ds, &[3, 4], 5).unwrap();
    let b = screen(&permuted, &[3, 4], 5).unwrap();
    for (k, &j) in perm.iter().enumerate() {
        assert_eq!(b.scores[k], a.scores[j]);
    }
}

#[test]
fn repeated_screens_are_bit_identical() {
    let inst = ExperimentSpec::new(ExperimentId::E4, 2).with_size(100, 60).generate().unwrap();
    let a = screen(&inst.dataset, &[3, 4], 10).unwrap();
    let b = screen(&inst.dataset, &[3, 4], 10).unwrap();
    assert_eq!(a, b);
}

#[test]
fn identical_conditional_distributions_score_zero() {
    // each slice holds the same multiset of x values
    let x = [1.0, 2.0, 3.0, 1.0, 2.0, 3.0, 1.0, 2.0, 3.0];
    let labels = SliceLabels::from_groups(&[0, 0, 0, 1, 1, 1, 2, 2, 2]).unwrap();
    assert_eq!(mv_hat(&x, &labels).unwrap(), 0.0);
    // and any deviation is detected
    let labels = SliceLabels::from_groups(&[0, 1, 2, 0, 1, 2, 0, 1, 2]).unwrap();
    assert!(mv_hat(&x, &labels).unwrap() > 0.0);
}

#[test]
fn population_quantile_slicing_agrees_with_sample_slicing() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let n = 3000;
    let y = normals(n, &mut rng);
    let x: Vec<f64> = y.iter().map(|v| v + rng.sample::<f64, _>(StandardNormal)).collect();
    let std_normal = Normal::new(0.0, 1.0).unwrap();
    let schemes = [3usize, 4, 5, 6];
    let mut oracle = 0.0;
    let mut sample = 0.0;
    for &s in &schemes {
        let cuts: Vec<f64> = (1..s).map(|g| std_normal.inverse_cdf(g as f64 / s as f64)).collect();
        let (scheme, labels) = slices_from_cuts(&y, &cuts).unwrap();
        assert_eq!(scheme.effective(), s);
        oracle += mv_hat(&x, &labels).unwrap();
        let (_, labels) = build_quantile_slices(&y, s).unwrap();
        sample += mv_hat(&x, &labels).unwrap();
    }
    assert!(sample > 0.1);
    assert!((oracle - sample).abs() < 0.01, "{oracle} vs {sample}");
}

#[test]
fn count_design_screens_with_capped_slices() {
    let inst = ExperimentSpec::new(ExperimentId::E6, 8).with_size(200, 200).generate().unwrap();
    let r = screen(&inst.dataset, &ExperimentId::E6.schemes(200), 10).unwrap();
    assert_eq!(r.schemes, vec![3]);
    assert!(r.selected.contains(&0) && r.selected.contains(&1));
    assert!(!r.degenerate());
}

#[test]
fn invalid_schemes_surface_as_errors() {
    let ds = Dataset::new(vec![1., 2., 3.], vec![vec![3., 1., 2.]], ResponseKind::Continuous).unwrap();
    assert!(screen(&ds, &[5], 1).is_err());
    assert!(screen(&ds, &[], 1).is_err());
}

#[test]
fn degenerate_response_gives_flagged_zero_scores() {
    let ds = Dataset::new(vec![0.0; 6], vec![vec![1., 2., 3., 4., 5., 6.]], ResponseKind::Count).unwrap();
    let r = screen(&ds, &[3], 1).unwrap();
    assert!(r.degenerate());
    assert_eq!(r.scores, vec![0.0]);
}

fn column_and_response() -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
    (8usize..80).prop_flat_map(|n| {
        (
            prop::collection::vec(-50i32..50, n).prop_map(|v| v.into_iter().map(|k| k as f64 / 10.0).collect()),
            prop::collection::vec(-1000i32..1000, n).prop_map(|v| v.into_iter().map(|k| k as f64 / 100.0).collect()),
        )
    })
}

proptest! {
    #[test]
    fn predictor_monotone_transform_invariance((x, y) in column_and_response()) {
        prop_assume!(y.iter().any(|&v| v != y[0]));
        let schemes = [2usize, 3];
        let base = fmv_hat(&x, &y, ResponseKind::Continuous, &schemes).unwrap();
        for f in [|v: f64| v.exp(), |v: f64| v * v * v + v, |v: f64| 3.0 * v - 7.0] {
            let tx: Vec<f64> = x.iter().map(|&v| f(v)).collect();
            let t = fmv_hat(&tx, &y, ResponseKind::Continuous, &schemes).unwrap();
            prop_assert!((t.fused - base.fused).abs() <= 1e-12);
        }
    }

    #[test]
    fn response_monotone_transform_is_bit_identical((x, y) in column_and_response()) {
        prop_assume!(y.iter().any(|&v| v != y[0]));
        let schemes = [2usize, 3, 4];
        let ty: Vec<f64> = y.iter().map(|v| (v / 3.0).exp() - 2.0).collect();
        let a = SlicePlan::new(&y, ResponseKind::Continuous, &schemes).unwrap();
        let b = SlicePlan::new(&ty, ResponseKind::Continuous, &schemes).unwrap();
        prop_assert_eq!(a.labels(), b.labels());
        prop_assert_eq!(fmv_with_plan(&x, &a).unwrap(), fmv_with_plan(&x, &b).unwrap());
    }

    #[test]
    fn scores_stay_in_range((x, y) in column_and_response()) {
        prop_assume!(y.iter().any(|&v| v != y[0]));
        let schemes = [2usize, 3, 5];
        let s = fmv_hat(&x, &y, ResponseKind::Continuous, &schemes).unwrap();
        prop_assert!(s.per_scheme.iter().all(|v| (0.0..=1.0).contains(v)));
        prop_assert!(s.fused >= 0.0 && s.fused <= schemes.len() as f64);
        prop_assert_eq!(s.fused, s.per_scheme.iter().sum::<f64>());
    }

    #[test]
    fn slice_labels_cover_the_sample((_, y) in column_and_response(), s in 2usize..8) {
        prop_assume!(y.iter().any(|&v| v != y[0]) && s <= y.len());
        let (scheme, labels) = build_quantile_slices(&y, s).unwrap();
        prop_assert_eq!(labels.counts().iter().sum::<usize>(), y.len());
        prop_assert!(labels.counts().iter().all(|&c| c >= 1));
        prop_assert!(labels.n_slices() >= 2 && labels.n_slices() <= s);
        prop_assert!(scheme.boundaries().windows(2).all(|w| w[0] < w[1]));
        prop_assert!((labels.props().iter().sum::<f64>() - 1.0).abs() <= 1e-12);
        for (i, &v) in y.iter().enumerate() {
            let b = scheme.boundaries();
            let g = labels.groups()[i];
            prop_assert!(b[g] < v && v <= b[g + 1]);
        }
    }
}
