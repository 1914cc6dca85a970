//! Replicated Monte-Carlo evaluation by minimum model size.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use rayon::prelude::*;

use crate::baselines::BaselineKind;
use crate::data::Dataset;
use crate::error::{Result, ScreenError};
use crate::fused::SlicePlan;
use crate::screen::{rank_descending, score_columns};
use crate::simgen::{derive_seed, ExperimentId, ExperimentSpec, GeneratedInstance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Screener {
    Fmv,
    Baseline(BaselineKind),
}

impl Screener {
    pub const ALL: [Screener; 4] = [
        Screener::Fmv,
        Screener::Baseline(BaselineKind::PearsonSis),
        Screener::Baseline(BaselineKind::KendallRcs),
        Screener::Baseline(BaselineKind::FusedKolmogorov),
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Screener::Fmv => "fmv",
            Screener::Baseline(b) => b.short_name(),
        }
    }

    /// Scores every column; the flag is set when any column (or the slicing) was degenerate.
    pub fn score(&self, dataset: &Dataset, plan: &SlicePlan) -> Result<(Vec<f64>, bool)> {
        match self {
            Screener::Fmv => {
                let details = score_columns(dataset, plan)?;
                let flagged = details.iter().any(|d| d.degenerate);
                Ok((details.into_iter().map(|d| d.fused).collect(), flagged))
            }
            Screener::Baseline(kind) => {
                let scores = dataset
                    .columns()
                    .par_iter()
                    .enumerate()
                    .map(|(j, col)| kind.score(col, dataset.y(), plan).map_err(|e| e.in_column(j)))
                    .collect::<Result<Vec<_>>>()?;
                let flagged = scores.iter().any(|s| s.degenerate);
                Ok((scores.into_iter().map(|s| s.value).collect(), flagged))
            }
        }
    }
}

impl fmt::Display for Screener {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Screener {
    type Err = ScreenError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "fmv" => Ok(Screener::Fmv),
            other => other
                .parse::<BaselineKind>()
                .map(Screener::Baseline)
                .map_err(|_| ScreenError::invalid(format!("unknown screener `{other}`"))),
        }
    }
}

/// Smallest ranking prefix that contains every active predictor: the worst 1-based rank among
/// `active` under a descending, index-tie-broken ranking of `scores`.
pub fn mms(scores: &[f64], active: &[usize]) -> Result<usize> {
    if active.is_empty() {
        return Err(ScreenError::invalid("active set is empty"));
    }
    if let Some(&j) = active.iter().find(|&&j| j >= scores.len()) {
        return Err(ScreenError::invalid(format!(
            "active index {j} out of range for {} predictors",
            scores.len()
        )));
    }
    let order = rank_descending(scores);
    let mut rank = vec![0usize; scores.len()];
    for (pos, &j) in order.iter().enumerate() {
        rank[j] = pos + 1;
    }
    Ok(active.iter().map(|&j| rank[j]).max().unwrap())
}

/// Median with the midpoint convention for an even count.
pub fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    if v.len().is_multiple_of(2) {
        (v[m - 1] + v[m]) / 2.0
    } else {
        v[m]
    }
}

fn sample_sd(values: &[f64]) -> f64 {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    (values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0)).sqrt()
}

#[derive(Debug, Clone, PartialEq)]
pub struct MmsSummary {
    pub experiment: ExperimentId,
    pub screener: Screener,
    pub n_active: usize,
    pub base_seed: u64,
    /// One entry per replication, in replication order.
    pub mms: Vec<usize>,
    pub degenerate: Vec<bool>,
    pub median: f64,
    pub sd: f64,
    pub se: f64,
    /// Set for a single replication, where `sd` and `se` are reported as 0.
    pub se_undefined: bool,
}

impl MmsSummary {
    pub fn from_mms(
        experiment: ExperimentId,
        screener: Screener,
        n_active: usize,
        base_seed: u64,
        mms: Vec<usize>,
        degenerate: Vec<bool>,
    ) -> Self {
        let values: Vec<f64> = mms.iter().map(|&m| m as f64).collect();
        let (sd, se, se_undefined) = if values.len() < 2 {
            (0.0, 0.0, true)
        } else {
            let sd = sample_sd(&values);
            (sd, sd / (values.len() as f64).sqrt(), false)
        };
        MmsSummary {
            experiment,
            screener,
            n_active,
            base_seed,
            median: median(&values),
            sd,
            se,
            se_undefined,
            mms,
            degenerate,
        }
    }

    pub fn replications(&self) -> usize {
        self.mms.len()
    }

    pub fn degenerate_count(&self) -> usize {
        self.degenerate.iter().filter(|&&d| d).count()
    }

    pub fn row(&self) -> TableRow {
        TableRow {
            experiment: self.experiment,
            screener: self.screener,
            n_active: self.n_active,
            replications: self.replications(),
            median: self.median,
            sd: self.sd,
            se: self.se,
            degenerate: self.degenerate_count(),
        }
    }

    /// Per-replication CSV: `replication,seed,mms,degenerate`.
    pub fn replication_csv(&self) -> String {
        let mut out = String::from("replication,seed,mms,degenerate\n");
        for (r, (m, d)) in self.mms.iter().zip(&self.degenerate).enumerate() {
            let seed = derive_seed(self.base_seed, r as u64);
            writeln!(out, "{},{seed},{m},{}", r + 1, *d as u8).unwrap();
        }
        out
    }

    /// `<experiment>_<screener>.csv`.
    pub fn file_name(&self) -> String {
        format!("{}_{}.csv", self.experiment, self.screener)
    }
}

/// Runs `f` on `reps` independently seeded instances of `spec`, in parallel, returning results
/// in replication order.
pub fn replicate<T, F>(spec: &ExperimentSpec, reps: usize, base_seed: u64, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize, &GeneratedInstance) -> Result<T> + Sync,
{
    if reps == 0 {
        return Err(ScreenError::invalid("at least one replication is required"));
    }
    spec.validate()?;
    (0..reps)
        .into_par_iter()
        .map(|r| {
            let instance = spec.with_seed(derive_seed(base_seed, r as u64)).generate()?;
            f(r, &instance)
        })
        .collect()
}

pub fn run_replications(
    spec: &ExperimentSpec,
    screeners: &[Screener],
    reps: usize,
    base_seed: u64,
) -> Result<Vec<MmsSummary>> {
    run_replications_with_schemes(spec, screeners, reps, base_seed, None)
}

/// As [`run_replications`], with an explicit slice-count list instead of the design default.
pub fn run_replications_with_schemes(
    spec: &ExperimentSpec,
    screeners: &[Screener],
    reps: usize,
    base_seed: u64,
    schemes: Option<&[usize]>,
) -> Result<Vec<MmsSummary>> {
    if screeners.is_empty() {
        return Err(ScreenError::invalid("no screeners requested"));
    }
    let default = spec.id.schemes(spec.n);
    let schemes = schemes.unwrap_or(&default);
    // per replication: (mms, degenerate) for each screener
    let per_rep = replicate(spec, reps, base_seed, |_, inst| {
        let ds = &inst.dataset;
        let plan = SlicePlan::new(ds.y(), ds.kind(), schemes)?;
        screeners
            .iter()
            .map(|s| match s.score(ds, &plan) {
                Ok((scores, flagged)) => Ok((mms(&scores, &inst.active)?, flagged)),
                // a failing screener counts as the worst possible ranking
                Err(_) => Ok((ds.p(), true)),
            })
            .collect::<Result<Vec<_>>>()
    })?;

    Ok(screeners
        .iter()
        .enumerate()
        .map(|(k, &screener)| {
            let (mms, degenerate) = per_rep.iter().map(|rep| rep[k]).unzip();
            MmsSummary::from_mms(spec.id, screener, spec.id.active().len(), base_seed, mms, degenerate)
        })
        .collect())
}

/// One line of the combined table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TableRow {
    pub experiment: ExperimentId,
    pub screener: Screener,
    pub n_active: usize,
    pub replications: usize,
    pub median: f64,
    pub sd: f64,
    pub se: f64,
    pub degenerate: usize,
}

pub const TABLE_HEADER: &str = "experiment,screener,n_active,replications,median,sd,se,degenerate";

/// CSV and aligned-text renderings of a set of summaries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub csv: String,
    pub text: String,
}

fn sorted_rows(summaries: &[MmsSummary]) -> Vec<TableRow> {
    let mut rows: Vec<TableRow> = summaries.iter().map(MmsSummary::row).collect();
    rows.sort_by_key(|r| (r.experiment, r.screener));
    rows
}

/// Renders summaries keyed by `(experiment, screener)` in sorted order, so input order does not
/// matter.
pub fn emit_table(summaries: &[MmsSummary]) -> Report {
    let rows = sorted_rows(summaries);
    let mut csv = format!("{TABLE_HEADER}\n");
    for r in &rows {
        writeln!(
            csv,
            "{},{},{},{},{},{},{},{}",
            r.experiment, r.screener, r.n_active, r.replications, r.median, r.sd, r.se, r.degenerate
        )
        .unwrap();
    }

    let mut text = format!(
        "{:<6} {:<8} {:>4} {:>6} {:>10} {:>10} {:>10} {:>6}\n",
        "exp", "screener", "N#", "reps", "median", "sd", "se", "degen"
    );
    for r in &rows {
        writeln!(
            text,
            "{:<6} {:<8} {:>4} {:>6} {:>10.1} {:>10.2} {:>10.2} {:>6}",
            r.experiment.as_str(),
            r.screener.name(),
            r.n_active,
            r.replications,
            r.median,
            r.sd,
            r.se,
            r.degenerate
        )
        .unwrap();
    }
    Report { csv, text }
}

/// Parses the combined CSV produced by [`emit_table`].
pub fn parse_table_csv(csv: &str) -> Result<Vec<TableRow>> {
    let mut lines = csv.lines();
    if lines.next() != Some(TABLE_HEADER) {
        return Err(ScreenError::invalid("table header mismatch"));
    }
    let bad = |line: &str| ScreenError::invalid(format!("malformed table row `{line}`"));
    lines
        .filter(|l| !l.is_empty())
        .map(|line| {
            let f: Vec<&str> = line.split(',').collect();
            if f.len() != 8 {
                return Err(bad(line));
            }
            let num = |s: &str| s.parse::<f64>().map_err(|_| bad(line));
            let int = |s: &str| s.parse::<usize>().map_err(|_| bad(line));
            Ok(TableRow {
                experiment: f[0].parse()?,
                screener: f[1].parse()?,
                n_active: int(f[2])?,
                replications: int(f[3])?,
                median: num(f[4])?,
                sd: num(f[5])?,
                se: num(f[6])?,
                degenerate: int(f[7])?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mms_examples() {
        let mut scores = vec![0.0; 20];
        for (j, s) in scores.iter_mut().enumerate().take(8) {
            *s = 10.0 - j as f64;
        }
        assert_eq!(mms(&scores, &(0..8).collect::<Vec<_>>()).unwrap(), 8);

        let scores = [9.0, 8.0, 1.0, 1.0, 5.0, 0.5];
        // ranks: 0->1, 1->2, 4->3, 2->4, 3->5, 5->6
        assert_eq!(mms(&scores, &[0, 1, 3]).unwrap(), 5);
        assert_eq!(mms(&scores, &[0, 1, 2, 3, 4, 5]).unwrap(), 6);
        assert!(mms(&scores, &[]).is_err());
        assert!(mms(&scores, &[6]).is_err());
    }

    #[test]
    fn median_conventions() {
        assert_eq!(median(&[3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&[4.0, 1.0, 2.0, 3.0]), 2.5);
    }

    #[test]
    fn single_replication_summary() {
        let s = MmsSummary::from_mms(ExperimentId::E1a, Screener::Fmv, 8, 0, vec![9], vec![false]);
        assert_eq!(s.median, 9.0);
        assert_eq!((s.sd, s.se), (0.0, 0.0));
        assert!(s.se_undefined);
    }

    #[test]
    fn summary_statistics() {
        let s = MmsSummary::from_mms(
            ExperimentId::E1c,
            Screener::Fmv,
            2,
            0,
            vec![2, 2, 4, 8],
            vec![false; 4],
        );
        assert_eq!(s.median, 3.0);
        let sd = (((2.0f64 - 4.0).powi(2) * 2.0 + 0.0 + 16.0) / 3.0).sqrt();
        assert!((s.sd - sd).abs() < 1e-12);
        assert!((s.se - sd / 2.0).abs() < 1e-12);
    }

    fn summaries() -> Vec<MmsSummary> {
        vec![
            MmsSummary::from_mms(ExperimentId::E1d, Screener::Fmv, 2, 1, vec![2, 3, 2], vec![false; 3]),
            MmsSummary::from_mms(
                ExperimentId::E1c,
                Screener::Baseline(BaselineKind::PearsonSis),
                2,
                1,
                vec![2, 7],
                vec![false, true],
            ),
            MmsSummary::from_mms(ExperimentId::E1c, Screener::Fmv, 2, 1, vec![2], vec![false]),
        ]
    }

    #[test]
    fn one_summary_one_row() {
        let report = emit_table(&summaries()[..1]);
        assert_eq!(report.csv.lines().count(), 2);
        assert_eq!(report.text.lines().count(), 2);
    }

    #[test]
    fn emission_is_order_insensitive() {
        let s = summaries();
        let mut reversed = s.clone();
        reversed.reverse();
        assert_eq!(emit_table(&s), emit_table(&reversed));
        let csv = emit_table(&s).csv;
        let lines: Vec<&str> = csv.lines().skip(1).map(|l| &l[..6]).collect();
        assert_eq!(lines, vec!["1c,fmv", "1c,sis", "1d,fmv"]);
    }

    #[test]
    fn csv_parses_back() {
        let s = summaries();
        let parsed = parse_table_csv(&emit_table(&s).csv).unwrap();
        assert_eq!(parsed, sorted_rows(&s));
        assert!(parse_table_csv("nope\n").is_err());
    }

    #[test]
    fn replication_file() {
        let s = &summaries()[1];
        let csv = s.replication_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[2], format!("2,{},7,1", derive_seed(1, 1)));
        assert_eq!(s.file_name(), "1c_sis.csv");
    }

    #[test]
    fn screener_names() {
        for s in Screener::ALL {
            assert_eq!(s.name().parse::<Screener>().unwrap(), s);
        }
        assert!("nis".parse::<Screener>().is_err());
    }
}
