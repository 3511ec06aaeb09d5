//! Implementations of the `sample`, `fit`, `em`, `kde`, and `hist`
//! subcommands. Each takes its parsed arguments plus the global options and
//! writes one primary artifact (stdout or `--out`), with `em` optionally
//! writing trace/responsibility side files.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use distkit::fit::{
    fit_mle_partial, fit_product_gradient_ascent, loglikelihood, loglikelihood_weighted,
    FixedParam, GradientAscentConfig, MarginalKind,
};
use distkit::nonparam::{histogram_fit, kde, kde2d, BinSpec, Closed, Kde2dConfig, KdeConfig};
use distkit::{
    em_fit, fit_mle, fit_mle_weighted, fit_mvnormal, reconstruct, sample_many,
    DistributionDescriptor, EmConfig, Family, MvNormal, RngState, Univariate, UnivariateDist,
};
use nalgebra::DMatrix;

use crate::data::Dataset;
use crate::error::CliError;
use crate::report::{
    EmReport, HistReport, Kde2dReport, KdeReport, MvNormalFitReport, MvNormalJson,
    ProductFitReport, SampleReport, UnivariateFitReport,
};
use crate::{EmArgs, FitArgs, Format, Globals, HistArgs, KdeArgs, SampleArgs};

// ---------------------------------------------------------------------------
// Shared plumbing
// ---------------------------------------------------------------------------

/// Write the primary output to `--out` or stdout.
pub fn emit(out: &Option<PathBuf>, content: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, content)?,
        None => print!("{content}"),
    }
    Ok(())
}

pub fn to_json_line<T: serde::Serialize>(value: &T) -> Result<String, CliError> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn parse_f64_list(s: &str, what: &str) -> Result<Vec<f64>, CliError> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<f64>()
                .map_err(|_| CliError::Usage(format!("{what}: cannot parse {t:?} as a number")))
        })
        .collect()
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

// ---------------------------------------------------------------------------
// sample
// ---------------------------------------------------------------------------

pub fn sample(args: &SampleArgs, g: &Globals) -> Result<(), CliError> {
    let params = parse_f64_list(&args.params, "--params")?;
    let mut dist = reconstruct(&DistributionDescriptor {
        family: args.dist.clone(),
        params,
    })?;
    let mut rng = RngState::new(g.seed);
    let samples = sample_many(&mut dist, &mut rng, args.n);

    match g.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut csv = String::from("value\n");
            for v in &samples {
                writeln!(csv, "{v}").unwrap();
            }
            emit(&g.out, &csv)
        }
        Format::Json => {
            let desc = dist.descriptor();
            let report = SampleReport {
                family: desc.family,
                params: desc.params,
                seed: g.seed,
                samples,
            };
            emit(&g.out, &to_json_line(&report)?)
        }
    }
}

// ---------------------------------------------------------------------------
// fit
// ---------------------------------------------------------------------------

pub fn fit(args: &FitArgs, g: &Globals) -> Result<(), CliError> {
    if g.format == Some(Format::Csv) {
        return Err(usage("fit emits a JSON model; --format csv is not supported"));
    }
    let ds = Dataset::load(&args.input)?;
    match args.dist.to_ascii_lowercase().as_str() {
        "mvnormal" => fit_mvnormal_cmd(args, g, &ds),
        "product" => fit_product_cmd(args, g, &ds),
        _ => fit_univariate_cmd(args, g, &ds),
    }
}

fn optional_weights(ds: &Dataset, weight_col: &Option<String>) -> Result<Option<Vec<f64>>, CliError> {
    match weight_col {
        Some(sel) => Ok(Some(ds.column(sel)?.to_vec())),
        None => Ok(None),
    }
}

fn fit_univariate_cmd(args: &FitArgs, g: &Globals, ds: &Dataset) -> Result<(), CliError> {
    let family: Family = args.dist.parse()?;
    let col = args
        .col
        .as_deref()
        .ok_or_else(|| usage("--col is required for univariate fits"))?;
    if args.cols.is_some() || args.marginals.is_some() || args.init.is_some() {
        return Err(usage(
            "--cols/--marginals/--init apply to MvNormal and Product fits; use --col here",
        ));
    }

    let mut data = ds.column(col)?.to_vec();
    if let Some(shift) = args.shift {
        for v in &mut data {
            *v -= shift;
        }
    }
    let weights = optional_weights(ds, &args.weight_col)?;

    let fitted: UnivariateDist = match (&args.fix, &weights) {
        (Some(_), Some(_)) => {
            return Err(usage("--fix cannot be combined with --weight-col"));
        }
        (Some(spec), None) => {
            if family != Family::Normal {
                return Err(usage("--fix supports Normal only (mu=<v> or sigma=<v>)"));
            }
            fit_mle_partial(&data, parse_fix(spec)?)?.into()
        }
        (None, Some(w)) => fit_mle_weighted(family, &data, w)?,
        (None, None) => fit_mle(family, &data)?,
    };

    let ll = match &weights {
        Some(w) => loglikelihood_weighted(&fitted, &data, w)?,
        None => loglikelihood(&fitted, &data),
    };
    let desc = fitted.descriptor();
    let report = UnivariateFitReport {
        family: desc.family,
        params: desc.params,
        loglikelihood: ll,
        n: data.len(),
        iterations: None,
    };
    emit(&g.out, &to_json_line(&report)?)
}

fn parse_fix(spec: &str) -> Result<FixedParam, CliError> {
    let (name, value) = spec
        .split_once('=')
        .ok_or_else(|| usage(format!("--fix expects mu=<v> or sigma=<v>, got {spec:?}")))?;
    let value: f64 = value
        .trim()
        .parse()
        .map_err(|_| usage(format!("--fix: cannot parse {value:?} as a number")))?;
    match name.trim().to_ascii_lowercase().as_str() {
        "mu" => Ok(FixedParam::Mu(value)),
        "sigma" => Ok(FixedParam::Sigma(value)),
        other => Err(usage(format!("--fix: unknown parameter {other:?}"))),
    }
}

fn fit_mvnormal_cmd(args: &FitArgs, g: &Globals, ds: &Dataset) -> Result<(), CliError> {
    if args.col.is_some() || args.fix.is_some() || args.shift.is_some() {
        return Err(usage(
            "MvNormal fits take --cols (and optionally --weight-col); --col/--fix/--shift do not apply",
        ));
    }
    if args.marginals.is_some() || args.init.is_some() {
        return Err(usage("--marginals/--init apply to --dist Product"));
    }
    let idx = ds.resolve_cols(args.cols.as_deref())?;
    let x = ds.matrix(&idx);
    let weights = optional_weights(ds, &args.weight_col)?;
    let mvn = fit_mvnormal(&x, weights.as_deref())?;
    let ll = match &weights {
        Some(w) => weighted_mv_loglike(&mvn, &x, w)?,
        None => mvn.loglikelihood(&x)?,
    };
    let report = MvNormalFitReport {
        family: "MvNormal",
        mu: mvn.mu().to_vec(),
        sigma: mvn.sigma_rows(),
        loglikelihood: ll,
        n: x.nrows(),
        iterations: None,
    };
    emit(&g.out, &to_json_line(&report)?)
}

fn weighted_mv_loglike(mvn: &MvNormal, x: &DMatrix<f64>, w: &[f64]) -> Result<f64, CliError> {
    let mut total = 0.0;
    for (i, &wi) in w.iter().enumerate() {
        if wi == 0.0 {
            continue;
        }
        let row: Vec<f64> = x.row(i).iter().copied().collect();
        total += wi * mvn.logpdf(&row)?;
    }
    Ok(total)
}

fn fit_product_cmd(args: &FitArgs, g: &Globals, ds: &Dataset) -> Result<(), CliError> {
    if args.col.is_some() || args.fix.is_some() || args.shift.is_some() || args.weight_col.is_some()
    {
        return Err(usage(
            "Product fits take --marginals and --cols; --col/--fix/--shift/--weight-col do not apply",
        ));
    }
    let marginals = args
        .marginals
        .as_deref()
        .ok_or_else(|| usage("--marginals is required for --dist Product (e.g. Normal,LogNormal)"))?;
    let mut kinds = Vec::new();
    for name in marginals.split(',') {
        let family: Family = name.trim().parse()?;
        kinds.push(MarginalKind::try_from(family)?);
    }

    let idx = ds.resolve_cols(args.cols.as_deref())?;
    if idx.len() != kinds.len() {
        return Err(usage(format!(
            "--marginals lists {} families but {} columns are selected",
            kinds.len(),
            idx.len()
        )));
    }
    let x = ds.matrix(&idx);
    let init = args
        .init
        .as_deref()
        .map(|s| parse_f64_list(s, "--init"))
        .transpose()?;

    let mut cfg = GradientAscentConfig::default();
    if let Some(m) = args.max_iter {
        cfg.max_iter = m;
    }
    let mut rng = RngState::new(g.seed);
    let fit = fit_product_gradient_ascent(&kinds, &x, init.as_deref(), &cfg, &mut rng)?;
    let report = ProductFitReport::from_fit(
        &fit.distribution,
        fit.loglikelihood,
        x.nrows(),
        fit.iterations as u64,
    );
    emit(&g.out, &to_json_line(&report)?)
}

// ---------------------------------------------------------------------------
// em
// ---------------------------------------------------------------------------

pub fn em(args: &EmArgs, g: &Globals) -> Result<(), CliError> {
    if g.format == Some(Format::Csv) {
        return Err(usage(
            "em emits a JSON mixture (use --trace for the loglike CSV); --format csv is not supported",
        ));
    }
    let ds = Dataset::load(&args.input)?;
    let idx = ds.resolve_cols(args.cols.as_deref())?;
    let mut x = ds.matrix(&idx);

    if let Some(log_list) = &args.log_cols {
        for sel in log_list.split(',') {
            let di = ds.col_index(sel.trim())?;
            let pos = idx.iter().position(|&i| i == di).ok_or_else(|| {
                usage(format!(
                    "--log-cols column {:?} is not among the selected columns",
                    sel.trim()
                ))
            })?;
            for r in 0..x.nrows() {
                let v = x[(r, pos)];
                if v <= 0.0 {
                    return Err(distkit::Error::NonPositive(format!(
                        "column {} contains {v}; logarithms need positive data",
                        ds.name(di)
                    ))
                    .into());
                }
                x[(r, pos)] = v.ln();
            }
        }
    }

    let mut cfg = EmConfig::new(args.k);
    if let Some(mi) = args.max_iter {
        cfg.max_iter = mi;
    }
    if let Some(tol) = args.tol {
        cfg.loglike_diff = tol;
    }
    let fit = em_fit(&x, &cfg)?;

    if let Some(path) = &args.trace {
        // Row 0 is the log-likelihood right after initialization; row k the
        // value after the k-th EM iteration.
        let mut csv = String::from("iteration,loglike\n");
        for (i, ll) in fit.trace.iter().enumerate() {
            writeln!(csv, "{i},{ll}").unwrap();
        }
        fs::write(path, csv)?;
    }
    if let Some(path) = &args.responsibilities {
        let z = &fit.responsibilities;
        let header: Vec<String> = (1..=z.ncols()).map(|k| format!("z{k}")).collect();
        let mut csv = header.join(",") + "\n";
        for i in 0..z.nrows() {
            let row: Vec<String> = (0..z.ncols()).map(|k| z[(i, k)].to_string()).collect();
            csv.push_str(&row.join(","));
            csv.push('\n');
        }
        fs::write(path, csv)?;
    }

    let report = EmReport {
        family: "Mixture",
        weights: fit.mixture.probs().to_vec(),
        components: fit
            .mixture
            .components()
            .iter()
            .map(MvNormalJson::from_dist)
            .collect(),
        loglike: fit.loglike,
        iterations: fit.iterations,
        trace: fit.trace.clone(),
        responsibilities_file: args
            .responsibilities
            .as_ref()
            .map(|p| p.display().to_string()),
    };
    emit(&g.out, &to_json_line(&report)?)
}

// ---------------------------------------------------------------------------
// kde
// ---------------------------------------------------------------------------

pub fn kde_cmd(args: &KdeArgs, g: &Globals) -> Result<(), CliError> {
    let ds = Dataset::load(&args.input)?;
    let xs = ds.column(&args.col)?;
    let bandwidths = args
        .bandwidth
        .as_deref()
        .map(|s| parse_f64_list(s, "--bandwidth"))
        .transpose()?;

    match &args.col2 {
        None => {
            let bandwidth = match bandwidths.as_deref() {
                None => None,
                Some([h]) => Some(*h),
                Some(_) => return Err(usage("one-dimensional kde takes a single --bandwidth")),
            };
            let kernel = match (&args.kernel, &args.kparams) {
                (None, None) => None,
                (Some(family), Some(kparams)) => Some(reconstruct(&DistributionDescriptor {
                    family: family.clone(),
                    params: parse_f64_list(kparams, "--kparams")?,
                })?),
                (Some(_), None) => return Err(usage("--kernel needs --kparams")),
                (None, Some(_)) => return Err(usage("--kparams needs --kernel")),
            };
            let mut cfg = KdeConfig {
                bandwidth,
                kernel,
                ..KdeConfig::default()
            };
            if let Some(gs) = args.gridsize {
                cfg.gridsize = gs;
            }
            let est = kde(xs, &cfg)?;

            match g.format.unwrap_or(Format::Csv) {
                Format::Csv => {
                    let mut csv = String::from("x,density\n");
                    for (x, d) in est.x().iter().zip(est.density()) {
                        writeln!(csv, "{x},{d}").unwrap();
                    }
                    emit(&g.out, &csv)
                }
                Format::Json => {
                    let report = KdeReport {
                        bandwidth: est.bandwidth(),
                        x: est.x().to_vec(),
                        density: est.density().to_vec(),
                    };
                    emit(&g.out, &to_json_line(&report)?)
                }
            }
        }
        Some(col2) => {
            if args.kernel.is_some() || args.kparams.is_some() {
                return Err(usage(
                    "custom kernels apply to one-dimensional estimates only",
                ));
            }
            let ys = ds.column(col2)?;
            let bw_pair = match bandwidths.as_deref() {
                None => None,
                Some([h]) => Some((*h, *h)),
                Some([hx, hy]) => Some((*hx, *hy)),
                Some(_) => {
                    return Err(usage(
                        "two-dimensional kde takes --bandwidth <h> or <hx>,<hy>",
                    ))
                }
            };
            let mut cfg = Kde2dConfig {
                bandwidths: bw_pair,
                ..Kde2dConfig::default()
            };
            if let Some(gs) = args.gridsize {
                cfg.gridsize = gs;
            }
            let est = kde2d(xs, ys, &cfg)?;

            match g.format.unwrap_or(Format::Csv) {
                Format::Csv => {
                    let mut csv = String::from("x,y,density\n");
                    for (i, x) in est.x().iter().enumerate() {
                        for (j, y) in est.y().iter().enumerate() {
                            writeln!(csv, "{x},{y},{}", est.density()[i][j]).unwrap();
                        }
                    }
                    emit(&g.out, &csv)
                }
                Format::Json => {
                    let (hx, hy) = est.bandwidths();
                    let report = Kde2dReport {
                        bandwidths: [hx, hy],
                        x: est.x().to_vec(),
                        y: est.y().to_vec(),
                        density: est.density().to_vec(),
                    };
                    emit(&g.out, &to_json_line(&report)?)
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// hist
// ---------------------------------------------------------------------------

pub fn hist(args: &HistArgs, g: &Globals) -> Result<(), CliError> {
    let ds = Dataset::load(&args.input)?;
    let data = ds.column(&args.col)?;
    let weights = optional_weights(&ds, &args.weight_col)?;

    let spec = match (&args.bins, &args.edges) {
        (Some(_), Some(_)) => return Err(usage("--bins and --edges are mutually exclusive")),
        (None, Some(edges)) => BinSpec::Edges(parse_f64_list(edges, "--edges")?),
        (Some(n), None) => BinSpec::Count(*n),
        (None, None) => BinSpec::Count(10),
    };
    let closed = match args.closed {
        crate::ClosedArg::Left => Closed::Left,
        crate::ClosedArg::Right => Closed::Right,
    };
    let h = histogram_fit(data, spec, closed, weights.as_deref())?;

    match g.format.unwrap_or(Format::Json) {
        Format::Json => {
            let report = HistReport {
                edges: h.edges().to_vec(),
                counts: h.counts().to_vec(),
                closed: match h.closed() {
                    Closed::Left => "left",
                    Closed::Right => "right",
                },
                total: h.total(),
            };
            emit(&g.out, &to_json_line(&report)?)
        }
        Format::Csv => {
            let mut csv = String::from("lo,hi,count\n");
            for (i, count) in h.counts().iter().enumerate() {
                writeln!(csv, "{},{},{count}", h.edges()[i], h.edges()[i + 1]).unwrap();
            }
            emit(&g.out, &csv)
        }
    }
}
