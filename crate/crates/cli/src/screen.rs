use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs;

use anyhow::{bail, Context, Result};
use fmv_core::bench::mms;
use fmv_core::simgen::sample_cauchy;
use fmv_core::{default_dn, default_schemes, screen, Dataset, ResponseKind};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::table::{is_missing, parse_number, RawTable};
use crate::{parse_schemes, ScreenArgs};

struct Ingested {
    y: Vec<f64>,
    columns: Vec<Vec<f64>>,
    names: Vec<String>,
    dropped: usize,
}

fn ingest(table: &RawTable, args: &ScreenArgs, kind: ResponseKind) -> Result<Ingested> {
    let response = table.locate(&args.response)?;
    let mut skip: BTreeSet<usize> = BTreeSet::from([response]);
    for name in args.ignore.iter().filter(|s| !s.is_empty()) {
        skip.insert(table.locate(name)?);
    }
    let predictors: Vec<usize> = (0..table.headers.len()).filter(|i| !skip.contains(i)).collect();
    if predictors.is_empty() {
        bail!("no predictor columns left after removing the response");
    }

    let mut y_raw = vec![];
    let mut columns = vec![vec![]; predictors.len()];
    let mut dropped = 0;
    for row in &table.rows {
        if is_missing(&row[response]) || predictors.iter().any(|&c| is_missing(&row[c])) {
            dropped += 1;
            continue;
        }
        for (k, &c) in predictors.iter().enumerate() {
            match parse_number(&row[c]) {
                Some(v) => columns[k].push(v),
                None => bail!("predictor column `{}` is not numeric (`{}`)", table.headers[c], row[c]),
            }
        }
        y_raw.push(row[response].as_str());
    }

    let y = match kind {
        ResponseKind::Categorical if y_raw.iter().any(|c| parse_number(c).is_none()) => {
            // text labels: code them in ascending label order
            let levels: BTreeSet<&str> = y_raw.iter().copied().collect();
            let levels: Vec<&str> = levels.into_iter().collect();
            y_raw
                .iter()
                .map(|c| levels.binary_search(c).unwrap() as f64)
                .collect()
        }
        _ => y_raw
            .iter()
            .map(|c| {
                parse_number(c).with_context(|| {
                    format!("response column `{}` is not numeric (`{c}`)", table.headers[response])
                })
            })
            .collect::<Result<Vec<_>>>()?,
    };
    let names = predictors.iter().map(|&c| table.headers[c].clone()).collect();
    Ok(Ingested {
        y,
        columns,
        names,
        dropped,
    })
}

/// Appends `x_j * x_k` for every pair `j < k` of the chosen raw columns.
fn add_interactions(data: &mut Ingested, spec: &str) -> Result<usize> {
    let chosen: Vec<usize> = if spec.trim().eq_ignore_ascii_case("all") {
        (0..data.names.len()).collect()
    } else {
        spec.split(',')
            .map(|s| {
                let s = s.trim();
                data.names
                    .iter()
                    .position(|n| n == s)
                    .with_context(|| format!("interaction column `{s}` not found"))
            })
            .collect::<Result<_>>()?
    };
    let mut added = 0;
    for (a, &j) in chosen.iter().enumerate() {
        for &k in &chosen[a + 1..] {
            let col = data.columns[j].iter().zip(&data.columns[k]).map(|(u, v)| u * v).collect();
            data.columns.push(col);
            data.names.push(format!("{}*{}", data.names[j], data.names[k]));
            added += 1;
        }
    }
    Ok(added)
}

fn add_noise(data: &mut Ingested, m: usize, seed: u64) {
    let n = data.y.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..m {
        data.columns.push((0..n).map(|_| sample_cauchy(&mut rng)).collect());
        data.names.push(format!("noise{}", k + 1));
    }
}

pub fn run(args: &ScreenArgs) -> Result<()> {
    let kind: ResponseKind = args.kind.parse()?;
    let table = RawTable::read(&args.input)?;
    let mut data = ingest(&table, args, kind)?;
    if data.dropped > 0 {
        eprintln!("dropped {} rows with missing values", data.dropped);
    }
    if let Some(spec) = &args.interactions {
        add_interactions(&mut data, spec)?;
    }
    add_noise(&mut data, args.noise, args.seed);

    let n = data.y.len();
    let names = data.names.clone();
    let dataset = Dataset::new(data.y, data.columns, kind)?.with_names(data.names)?;
    let schemes = match parse_schemes(&args.schemes)? {
        Some(s) => s,
        None => {
            let d = default_schemes(n);
            if d.undersized {
                eprintln!("warning: n = {n} is below 27, using a single 3-slice scheme");
            }
            d.counts
        }
    };
    let d_n = args.dn.unwrap_or_else(|| default_dn(n));
    let result = screen(&dataset, &schemes, d_n)?;

    let mut out = String::from("rank,column_name,fused_score");
    for s in &result.schemes {
        write!(out, ",mv_s{s}").unwrap();
    }
    out.push('\n');
    for (rank, &j) in result.selected.iter().enumerate() {
        write!(out, "{},{},{}", rank + 1, names[j], result.scores[j]).unwrap();
        for v in &result.details[j].per_scheme {
            write!(out, ",{v}").unwrap();
        }
        out.push('\n');
    }
    match &args.out {
        Some(path) => fs::write(path, &out).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{out}"),
    }
    eprintln!(
        "screened {} predictors over {n} rows, schemes {:?}, reported {}",
        dataset.p(),
        result.schemes,
        result.selected.len()
    );

    if let Some(path) = &args.active {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let active = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(|l| names.iter().position(|n| n == l).with_context(|| format!("active column `{l}` not found")))
            .collect::<Result<Vec<_>>>()?;
        println!("mms,{}", mms(&result.scores, &active)?);
    }
    Ok(())
}
