use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use fmv_core::{ExperimentId, ExperimentSpec};

use crate::SimulateArgs;

/// `data.csv` -> `data.active.txt`.
pub fn sidecar_path(out: &Path) -> PathBuf {
    out.with_extension("active.txt")
}

pub fn run(args: &SimulateArgs) -> Result<()> {
    let id: ExperimentId = args.case.parse()?;
    let mut spec = ExperimentSpec::new(id, args.seed);
    let (n, p) = (args.n.unwrap_or(spec.n), args.p.unwrap_or(spec.p));
    spec = spec.with_size(n, p);
    let inst = spec.generate()?;
    let ds = &inst.dataset;

    let mut csv = String::from("y");
    if inst.censor_mask.is_some() {
        csv.push_str(",censored");
    }
    for j in 0..ds.p() {
        write!(csv, ",{}", ds.name(j)).unwrap();
    }
    csv.push('\n');
    for i in 0..ds.n() {
        write!(csv, "{}", ds.y()[i]).unwrap();
        if let Some(mask) = &inst.censor_mask {
            write!(csv, ",{}", mask[i] as u8).unwrap();
        }
        for col in ds.columns() {
            write!(csv, ",{}", col[i]).unwrap();
        }
        csv.push('\n');
    }
    fs::write(&args.out, csv).with_context(|| format!("writing {}", args.out.display()))?;

    let sidecar = sidecar_path(&args.out);
    let active: String = inst.active.iter().map(|&j| format!("{}\n", ds.name(j))).collect();
    fs::write(&sidecar, active).with_context(|| format!("writing {}", sidecar.display()))?;
    eprintln!(
        "design {id}: {} rows x {} predictors -> {}, active set -> {}",
        ds.n(),
        ds.p(),
        args.out.display(),
        sidecar.display()
    );
    if let Some(rate) = inst.censoring_rate() {
        eprintln!("censoring proportion {rate:.3}");
    }
    Ok(())
}
