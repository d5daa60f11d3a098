use std::collections::BTreeSet;
use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use ordmoment::bounds::{
    chebyshev_sweep, check_beta_ratio_lower, check_beta_ratio_upper, check_central_chain, check_edge_cases,
    holder_i1_check, stirling_check,
};
use ordmoment::{
    abs_moment_numeric, by_name, moment_discrete_oracle, moment_monte_carlo, moment_quadrature, monte_carlo_all_ranks,
    proof_case, theorem1_bound, BoundParams, Distribution64, Error, FiniteDiscrete, InequalityReport64,
    MomentEstimate64, MomentParams, MonteCarloTable, OrderStatSpec,
};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::args::{BoundArgs, Format, GlobalOpts, MethodArg, MomentArgs, ProofStepsArgs, VerifyArgs};
use crate::config::{parse_n_list, parse_names, parse_pairs, parse_reals, SweepConfig, DEFAULT_RHO, DEFAULT_SEED};
use crate::error::{CliError, Exit};
use crate::report::{fmt_real, write_cells_csv, write_json, write_steps_csv, CellRecord, StepRow, Verdict};

/// Levels at which the Chebyshev quantile inequality is sampled in `verify`.
pub const CHEBYSHEV_LEVELS: usize = 999;

/// A zoo name, or else a path to a `value probability` file.
pub fn resolve_dist(name: &str) -> Result<Distribution64, CliError> {
    if let Some(d) = by_name::<f64>(name) {
        return Ok(d);
    }
    let path = Path::new(name);
    if path.is_file() {
        let text = fs::read_to_string(path)?;
        let law = FiniteDiscrete::parse(&text).map_err(|e| CliError::Usage(format!("{name}: {e}")))?;
        return Ok(Distribution64::finite(name, law));
    }
    Err(CliError::Usage(format!(
        "unknown distribution `{name}` (not a zoo name or readable file)"
    )))
}

/// `E|X|^δ`, `+∞` when divergent.
pub fn abs_moment(d: &Distribution64, delta: f64) -> Result<f64, CliError> {
    match d.abs_moment_closed_form(delta) {
        Some(m) => Ok(m),
        None => Ok(abs_moment_numeric(d, delta)?.value),
    }
}

fn spec(n: usize, i: usize) -> Result<OrderStatSpec, CliError> {
    OrderStatSpec::new(n, i).map_err(|e| CliError::Usage(e.to_string()))
}

fn usage(e: Error) -> CliError {
    match e {
        Error::Tolerance { .. } => CliError::Core(e),
        other => CliError::Usage(other.to_string()),
    }
}

/// Destination of a report: a file, or standard output.
pub struct Sink<'a> {
    pub out: Option<PathBuf>,
    pub stdout: &'a mut dyn Write,
}

impl Sink<'_> {
    fn main(&mut self) -> Result<Box<dyn Write + '_>, CliError> {
        Ok(match &self.out {
            Some(p) => Box::new(BufWriter::new(File::create(p)?)),
            None => Box::new(&mut *self.stdout),
        })
    }

    /// `report.csv` → `report.csv.steps.csv`.
    fn steps_path(&self) -> Option<PathBuf> {
        self.out.as_ref().map(|p| {
            let mut s = p.clone().into_os_string();
            s.push(".steps.csv");
            PathBuf::from(s)
        })
    }
}

pub fn cmd_moment(a: &MomentArgs, g: &GlobalOpts, sink: &mut Sink) -> Result<Exit, CliError> {
    let d = resolve_dist(&a.dist)?;
    let s = spec(a.n, a.i)?;
    let est: MomentEstimate64 = match a.method {
        MethodArg::Quadrature => moment_quadrature(&d, s, a.k).map_err(usage)?,
        MethodArg::Oracle => {
            let f = d
                .as_finite()
                .ok_or_else(|| CliError::Usage(format!("oracle needs a finite-support law, `{}` is not", a.dist)))?;
            moment_discrete_oracle(f, s, a.k).map_err(usage)?
        }
        MethodArg::Mc => {
            let seed = g.seed.unwrap_or(DEFAULT_SEED);
            moment_monte_carlo(&d, s, a.k, a.reps, seed).map_err(usage)?
        }
    };
    let format = g.format.unwrap_or(Format::Csv);
    let mut w = sink.main()?;
    match format {
        Format::Csv => {
            let mut out = csv::Writer::from_writer(&mut w);
            out.write_record(["dist", "n", "i", "k", "method", "value", "error_bound", "diverged"])?;
            out.write_record([
                d.name().to_string(),
                a.n.to_string(),
                a.i.to_string(),
                fmt_real(a.k),
                est.method.as_str().to_string(),
                fmt_real(est.value),
                fmt_real(est.error_bound),
                est.diverged.to_string(),
            ])?;
            out.flush()?;
        }
        Format::Json => {
            let doc = json!({
                "metadata": metadata("moment", g.seed.unwrap_or(DEFAULT_SEED), json!({
                    "dist": a.dist, "n": a.n, "i": a.i, "k": a.k,
                    "method": est.method.as_str(), "reps": a.reps,
                })),
                "result": {
                    "value": jnum(est.value),
                    "error_bound": jnum(est.error_bound),
                    "method": est.method.as_str(),
                    "diverged": est.diverged,
                },
            });
            serde_json::to_writer_pretty(&mut w, &doc)?;
            writeln!(w)?;
        }
    }
    w.flush()?;
    Ok(Exit::Ok)
}

fn jnum(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::String(fmt_real(x))
    }
}

fn metadata(command: &str, seed: u64, config: Value) -> Value {
    json!({
        "tool": "ordmoment",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "seed": seed,
        "config": config,
    })
}

pub fn cmd_bound(a: &BoundArgs, g: &GlobalOpts, sink: &mut Sink) -> Result<Exit, CliError> {
    let d = resolve_dist(&a.dist)?;
    let s = spec(a.n, a.i)?;
    let p = MomentParams::new(a.k, a.delta).map_err(usage)?;
    let m = abs_moment(&d, a.delta)?;
    let b = BoundParams::new(p, s, m).map_err(usage)?;
    let case = proof_case(s, p.rho);
    let (bound, failed) = match b.check_applicable() {
        Ok(()) => (Some(theorem1_bound(&b)?), None),
        Err(why) => (None, Some(why.to_string())),
    };
    let mut w = sink.main()?;
    match g.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut out = csv::Writer::from_writer(&mut w);
            out.write_record([
                "dist",
                "n",
                "i",
                "k",
                "delta",
                "rho",
                "case",
                "abs_moment",
                "applicable",
                "bound",
                "failed_constraint",
            ])?;
            out.write_record([
                d.name().to_string(),
                a.n.to_string(),
                a.i.to_string(),
                fmt_real(a.k),
                fmt_real(a.delta),
                fmt_real(p.rho),
                case.to_string(),
                fmt_real(m),
                bound.is_some().to_string(),
                bound.map(fmt_real).unwrap_or_default(),
                failed.clone().unwrap_or_default(),
            ])?;
            out.flush()?;
        }
        Format::Json => {
            let doc = json!({
                "metadata": metadata("bound", g.seed.unwrap_or(DEFAULT_SEED), json!({
                    "dist": a.dist, "n": a.n, "i": a.i, "k": a.k, "delta": a.delta,
                })),
                "result": {
                    "rho": p.rho,
                    "case": case.as_str(),
                    "abs_moment": jnum(m),
                    "applicable": bound.is_some(),
                    "bound": bound.map(jnum).unwrap_or(Value::Null),
                    "failed_constraint": failed,
                },
            });
            serde_json::to_writer_pretty(&mut w, &doc)?;
            writeln!(w)?;
        }
    }
    w.flush()?;
    Ok(Exit::Ok)
}

/// Builds the sweep configuration: defaults, then the config file, then flags.
pub fn verify_config(a: &VerifyArgs, g: &GlobalOpts) -> Result<SweepConfig, CliError> {
    let mut c = SweepConfig::default();
    if let Some(path) = &a.config {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        c.apply_file(&text)?;
    }
    if let Some(v) = &a.dist {
        c.distributions = parse_names(v);
    }
    if let Some(v) = &a.n_values {
        c.n_values = parse_n_list(v)?;
    }
    if let Some(v) = &a.pairs {
        c.exponent_pairs = parse_pairs(v)?;
    }
    if let Some(v) = a.mc_reps {
        c.mc_reps = v;
    }
    if let Some(v) = a.c_scale {
        c.c_scale = v;
    }
    if let Some(v) = g.seed {
        c.seed = v;
    }
    if let Some(v) = &g.out {
        c.output_path = Some(v.clone());
    }
    if let Some(v) = g.format {
        c.format = v;
    }
    c.validate()?;
    Ok(c)
}

/// Everything a `verify` run produces.
#[derive(Debug, Clone)]
pub struct SweepResult {
    pub cells: Vec<CellRecord>,
    pub steps: Vec<StepRow>,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Summary {
    pub cells: usize,
    pub vacuous: usize,
    pub violations: usize,
    pub tolerance_failures: usize,
    pub step_checks: usize,
    pub step_violations: usize,
    pub min_margin_ratio: Option<f64>,
}

impl SweepResult {
    pub fn summary(&self) -> Summary {
        let mut s = Summary {
            cells: self.cells.len(),
            step_checks: self.steps.len(),
            ..Summary::default()
        };
        for c in &self.cells {
            match c.holds {
                Verdict::Violated => s.violations += 1,
                Verdict::Error => s.tolerance_failures += 1,
                Verdict::Holds => {}
            }
            if c.bound.is_infinite() {
                s.vacuous += 1;
            } else if let Some(r) = c.margin_ratio.filter(|r| r.is_finite()) {
                s.min_margin_ratio = Some(s.min_margin_ratio.map_or(r, |m: f64| m.min(r)));
            }
        }
        s.step_violations = self.steps.iter().filter(|r| !r.report.holds).count();
        s
    }

    pub fn exit(&self) -> Exit {
        let s = self.summary();
        if s.violations > 0 || s.step_violations > 0 {
            Exit::Violation
        } else if s.tolerance_failures > 0 {
            Exit::Tolerance
        } else {
            Exit::Ok
        }
    }
}

/// Integer ranks `i` with `ρ ≤ i ≤ n − ρ + 1`.
pub fn rank_range(n: usize, rho: f64) -> impl Iterator<Item = usize> {
    let lo = rho.ceil().max(1.0) as usize;
    let hi = (n as f64 - rho + 1.0).floor();
    let hi = if hi < 1.0 { 0 } else { hi as usize };
    lo..=hi.min(n)
}

fn mc_seed(seed: u64, dist: usize, n: usize) -> u64 {
    // splitmix64 finalizer over the cell coordinates
    let mut z = seed ^ ((dist as u64) << 32 | n as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

struct Job {
    dist: usize,
    n: usize,
    pair: usize,
    i: usize,
}

pub fn run_sweep(c: &SweepConfig) -> Result<SweepResult, CliError> {
    let dists = c
        .distributions
        .iter()
        .map(|n| resolve_dist(n))
        .collect::<Result<Vec<_>, _>>()?;
    let params = c
        .exponent_pairs
        .iter()
        .map(|&(k, d)| MomentParams::new(k, d).map_err(usage))
        .collect::<Result<Vec<_>, _>>()?;
    let ks: Vec<f64> = {
        let mut ks = Vec::new();
        for p in &params {
            if !ks.contains(&p.k) {
                ks.push(p.k);
            }
        }
        ks
    };
    let deltas: Vec<f64> = {
        let mut ds = Vec::new();
        for p in &params {
            if !ds.contains(&p.delta) {
                ds.push(p.delta);
            }
        }
        ds
    };
    let moments: Vec<Vec<f64>> = dists
        .iter()
        .map(|d| deltas.iter().map(|&delta| abs_moment(d, delta)).collect())
        .collect::<Result<_, _>>()?;

    let mut jobs = Vec::new();
    for dist in 0..dists.len() {
        for &n in &c.n_values {
            for (pair, p) in params.iter().enumerate() {
                if (n as f64) < 2.0 * p.rho + 1.0 {
                    continue;
                }
                for i in rank_range(n, p.rho) {
                    jobs.push(Job { dist, n, pair, i });
                }
            }
        }
    }

    let mc: Vec<Option<MonteCarloTable<f64>>> = if c.mc_reps > 0 {
        let keys: Vec<(usize, usize)> = (0..dists.len())
            .flat_map(|d| c.n_values.iter().map(move |&n| (d, n)))
            .collect();
        keys.par_iter()
            .map(|&(d, n)| {
                monte_carlo_all_ranks(&dists[d], n, &ks, c.mc_reps, mc_seed(c.seed, d, n))
                    .map(Some)
                    .map_err(usage)
            })
            .collect::<Result<_, _>>()?
    } else {
        Vec::new()
    };
    let mc_table = |d: usize, n: usize| -> Option<&MonteCarloTable<f64>> {
        let idx = d * c.n_values.len() + c.n_values.iter().position(|&m| m == n)?;
        mc.get(idx)?.as_ref()
    };

    let cells = jobs
        .par_iter()
        .map(|job| {
            let d = &dists[job.dist];
            let p = params[job.pair];
            let s = spec(job.n, job.i)?;
            let m = moments[job.dist][deltas.iter().position(|&x| x == p.delta).unwrap_or(0)];
            let bound = theorem1_bound(&BoundParams::new(p, s, m)?)? * c.c_scale;
            let (mc_value, mc_se) = match mc_table(job.dist, job.n) {
                Some(t) => {
                    let e = t.get(job.i, ks.iter().position(|&k| k == p.k).unwrap_or(0));
                    (e.map(|e| e.value), e.map(|e| e.error_bound))
                }
                None => (None, None),
            };
            let (exact, err, holds) = match moment_quadrature(d, s, p.k) {
                Ok(e) => {
                    let holds = if bound.is_infinite() {
                        Verdict::Holds
                    } else if e.diverged {
                        Verdict::Violated
                    } else if (m > 0.0 && e.value < bound) || (m == 0.0 && e.value <= bound) {
                        Verdict::Holds
                    } else {
                        Verdict::Violated
                    };
                    (Some(e.value), Some(e.error_bound), holds)
                }
                Err(Error::Tolerance { .. }) => (None, None, Verdict::Error),
                Err(other) => return Err(CliError::Core(other)),
            };
            let margin_ratio = match exact {
                Some(x) if x > 0.0 => Some(bound / x).filter(|r| !r.is_nan()),
                Some(_) if bound > 0.0 => Some(f64::INFINITY),
                _ => None,
            };
            Ok(CellRecord {
                dist: d.name().to_string(),
                n: job.n,
                i: job.i,
                k: p.k,
                delta: p.delta,
                rho: p.rho,
                case: proof_case(s, p.rho),
                moment_exact: exact,
                moment_err: err,
                moment_mc: mc_value,
                mc_se,
                bound,
                margin_ratio,
                holds,
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;

    let mut rhos: Vec<f64> = Vec::new();
    for p in &params {
        if !rhos.contains(&p.rho) {
            rhos.push(p.rho);
        }
    }
    let mut grid = Vec::new();
    for &rho in &rhos {
        let mut seen = BTreeSet::new();
        for &n in &c.n_values {
            if (n as f64) >= 2.0 * rho + 1.0 && seen.insert(n) {
                grid.push((rho, n));
            }
        }
    }
    let mut steps = proof_step_rows(&grid)?;

    let levels: Vec<f64> = (1..=CHEBYSHEV_LEVELS)
        .map(|j| j as f64 / (CHEBYSHEV_LEVELS + 1) as f64)
        .collect();
    for d in &dists {
        for &delta in &deltas {
            if let Some(reports) = chebyshev_sweep(d, delta, &levels)? {
                steps.extend(reports.into_iter().map(|report| StepRow {
                    dist: Some(d.name().to_string()),
                    report,
                }));
            }
        }
    }
    Ok(SweepResult { cells, steps })
}

/// All proof-step reports at one `(ρ, n)` with `n ≥ 2ρ + 1`.
pub fn proof_steps_at(rho: f64, n: usize) -> Result<Vec<InequalityReport64>, CliError> {
    let nf = n as f64;
    let mut out = Vec::new();
    let mut xs = vec![rho, nf - rho, nf];
    xs.dedup();
    for x in xs {
        out.extend(stirling_check(x)?);
    }
    out.extend(check_edge_cases(n, rho)?);
    if rho <= 1.0 {
        out.push(holder_i1_check(n, rho)?);
    }
    let fractional = rho + 1.0;
    if fractional.fract() != 0.0 && fractional <= nf {
        out.push(check_beta_ratio_lower(fractional, n, rho)?);
    }
    for i in 1..=n {
        let fi = i as f64;
        if fi >= rho + 1.0 {
            out.push(check_beta_ratio_lower(fi, n, rho)?);
        }
        if fi <= nf - rho {
            out.extend(check_beta_ratio_upper(fi, n, rho)?);
        }
        if fi >= rho + 2.0 && fi <= nf - rho {
            out.extend(check_central_chain(i, n, rho)?);
        }
    }
    Ok(out)
}

fn proof_step_rows(grid: &[(f64, usize)]) -> Result<Vec<StepRow>, CliError> {
    let blocks = grid
        .par_iter()
        .map(|&(rho, n)| proof_steps_at(rho, n))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(blocks.into_iter().flatten().map(StepRow::bare).collect())
}

/// `⌈2ρ+1⌉..=50`, then roughly 15 % steps up to 200.
pub fn default_n_grid(rho: f64) -> Vec<usize> {
    let start = (2.0 * rho + 1.0).ceil() as usize;
    let mut ns: Vec<usize> = (start..=50).collect();
    let mut x = 50.0_f64;
    while x < 200.0 {
        x *= 1.15;
        let n = (x.round() as usize).min(200);
        if ns.last() != Some(&n) {
            ns.push(n);
        }
    }
    ns
}

pub fn proof_steps_grid(a: &ProofStepsArgs) -> Result<(Vec<(f64, usize)>, usize), CliError> {
    let rhos = match &a.rho {
        Some(v) => parse_reals(v, "rho")?,
        None => DEFAULT_RHO.to_vec(),
    };
    let ns = a.n_values.as_deref().map(parse_n_list).transpose()?;
    let mut grid = Vec::new();
    let mut skipped = 0;
    for &rho in &rhos {
        match &ns {
            Some(ns) => {
                for &n in ns {
                    if (n as f64) >= 2.0 * rho + 1.0 {
                        grid.push((rho, n));
                    } else {
                        skipped += 1;
                    }
                }
            }
            None => grid.extend(default_n_grid(rho).into_iter().map(|n| (rho, n))),
        }
    }
    if grid.is_empty() {
        return Err(CliError::Usage("no (ρ, n) cell satisfies n ≥ 2ρ+1".into()));
    }
    Ok((grid, skipped))
}

pub fn cmd_proof_steps(
    a: &ProofStepsArgs,
    g: &GlobalOpts,
    sink: &mut Sink,
    err: &mut dyn Write,
) -> Result<Exit, CliError> {
    let (grid, skipped) = proof_steps_grid(a)?;
    let steps = proof_step_rows(&grid)?;
    let violations = steps.iter().filter(|s| !s.report.holds).count();
    let format = g.format.unwrap_or(Format::Csv);
    {
        let mut w = sink.main()?;
        match format {
            Format::Csv => write_steps_csv(&mut w, &steps)?,
            Format::Json => {
                let config = json!({
                    "cells": grid.iter().map(|&(r, n)| json!([r, n])).collect::<Vec<_>>(),
                    "skipped_cells": skipped,
                });
                let mut meta = metadata("proof-steps", g.seed.unwrap_or(DEFAULT_SEED), config);
                meta["summary"] = json!({ "step_checks": steps.len(), "step_violations": violations });
                write_json(&mut w, meta, &[], &steps)?;
            }
        }
        w.flush()?;
    }
    writeln!(
        err,
        "proof-steps: {} cells ({} skipped with n < 2ρ+1), {} checks, {} violations",
        grid.len(),
        skipped,
        steps.len(),
        violations
    )?;
    for s in steps.iter().filter(|s| !s.report.holds).take(50) {
        writeln!(err, "violation: {:?}", s.report)?;
    }
    Ok(if violations > 0 { Exit::Violation } else { Exit::Ok })
}

pub const CONSEQUENCE_NOTE: &str =
    "C(alpha,beta,rho) = C(rho) * min(g(alpha/2), g(beta))^(-rho); n*alpha < i < n*beta implies alpha/2 < i/(n+1) < beta";

pub fn cmd_verify(a: &VerifyArgs, g: &GlobalOpts, sink: &mut Sink, err: &mut dyn Write) -> Result<Exit, CliError> {
    let c = verify_config(a, g)?;
    let result = run_sweep(&c)?;
    let s = result.summary();
    let out = c.output_path.clone();
    let mut sink = Sink {
        out: out.clone(),
        stdout: &mut *sink.stdout,
    };
    match c.format {
        Format::Csv => {
            {
                let mut w = sink.main()?;
                write_cells_csv(&mut w, &result.cells)?;
                w.flush()?;
            }
            if let Some(p) = sink.steps_path() {
                let mut w = BufWriter::new(File::create(p)?);
                write_steps_csv(&mut w, &result.steps)?;
                w.flush()?;
            }
        }
        Format::Json => {
            let mut meta = metadata("verify", c.seed, serde_json::to_value(&c)?);
            meta["consequence_constant"] = json!(CONSEQUENCE_NOTE);
            meta["summary"] = json!({
                "cells": s.cells,
                "vacuous": s.vacuous,
                "violations": s.violations,
                "tolerance_failures": s.tolerance_failures,
                "step_checks": s.step_checks,
                "step_violations": s.step_violations,
                "min_margin_ratio": s.min_margin_ratio.map(jnum),
            });
            let mut w = sink.main()?;
            write_json(&mut w, meta, &result.cells, &result.steps)?;
            w.flush()?;
        }
    }
    writeln!(
        err,
        "verify: {} cells ({} vacuous), {} violations, {} tolerance failures; {} proof-step checks, {} violations",
        s.cells, s.vacuous, s.violations, s.tolerance_failures, s.step_checks, s.step_violations
    )?;
    for cell in result.cells.iter().filter(|c| c.holds != Verdict::Holds).take(50) {
        writeln!(
            err,
            "{}: dist={} n={} i={} k={} delta={} moment={} bound={}",
            if cell.holds == Verdict::Error {
                "tolerance"
            } else {
                "violation"
            },
            cell.dist,
            cell.n,
            cell.i,
            cell.k,
            cell.delta,
            cell.moment_exact.map(fmt_real).unwrap_or_default(),
            fmt_real(cell.bound)
        )?;
    }
    for st in result.steps.iter().filter(|s| !s.report.holds).take(50) {
        writeln!(err, "violation: {:?}", st.report)?;
    }
    Ok(result.exit())
}
