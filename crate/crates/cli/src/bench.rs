use std::fs;

use anyhow::{bail, Context, Result};
use fmv_core::bench::{emit_table, run_replications_with_schemes, Screener};
use fmv_core::{ExperimentId, ExperimentSpec};

use crate::{parse_schemes, BenchArgs};

fn parse_list<T>(spec: &str, all: &[T]) -> Result<Vec<T>>
where
    T: std::str::FromStr<Err = fmv_core::ScreenError> + Clone,
{
    if spec.trim().eq_ignore_ascii_case("all") {
        return Ok(all.to_vec());
    }
    let items = spec
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.parse::<T>().map_err(anyhow::Error::from))
        .collect::<Result<Vec<_>>>()?;
    if items.is_empty() {
        bail!("empty list `{spec}`");
    }
    Ok(items)
}

pub fn run(args: &BenchArgs) -> Result<()> {
    let cases: Vec<ExperimentId> = parse_list(&args.cases, &ExperimentId::ALL)?;
    let screeners: Vec<Screener> = parse_list(&args.screeners, &Screener::ALL)?;
    let schemes = parse_schemes(&args.schemes)?;

    fs::create_dir_all(&args.out).with_context(|| format!("creating {}", args.out.display()))?;
    let mut summaries = vec![];
    for id in cases {
        let mut spec = ExperimentSpec::new(id, args.seed);
        spec = spec.with_size(args.n.unwrap_or(spec.n), args.p.unwrap_or(spec.p));
        let out = run_replications_with_schemes(&spec, &screeners, args.reps, args.seed, schemes.as_deref())?;
        for s in &out {
            let path = args.out.join(s.file_name());
            fs::write(&path, s.replication_csv()).with_context(|| format!("writing {}", path.display()))?;
        }
        summaries.extend(out);
    }

    let report = emit_table(&summaries);
    let path = args.out.join("table1.csv");
    fs::write(&path, &report.csv).with_context(|| format!("writing {}", path.display()))?;
    print!("{}", report.text);
    Ok(())
}
