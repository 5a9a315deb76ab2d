//! The subcommands. Each writes its tables under the output directory and
//! reports whether it passed.
//!
//! CSV schemas (every file starts with `#` metadata lines and a header):
//!
//! | file | columns | footer |
//! |------|---------|--------|
//! | `planewave.csv` | `beta, polar_1 … polar_{n−2}, phi, s, re_psi, im_psi` | none |
//! | `wavepacket.csv` | `beta, s, re_f, im_f, abs_f, error_estimate, dropped` | decay status, exponents, windows |
//! | `wavepacket_flat.csv` | `r, deviation` | fitted slope |
//! | `contract.csv` | `n, r, residual` | per-`n` slope and status |
//! | `appendix_d.csv` | `n, j, k, rho, oracle, closed_form, rel_error, tanh_form, rel_error_tanh, extrapolation_change` | none |
//! | `verify_<suite>.csv` | `criterion, title, metric, value, limit, pass` | none |

use std::path::{Path, PathBuf};

use rayon::prelude::*;

use super::config::{RunConfig, WaveMode};
use super::output::{log_log_svg, num, CsvTable};
use super::suites::{run_suite, Suite};
use crate::error::Error;
use crate::fd::loglog_slope;
use crate::geometry::{absolute_covector, from_hyper, sphere_angles, HyperChart, SpacetimeConfig};
use crate::limits::appendix::appendix_d_oracle;
use crate::limits::decay::linspace;
use crate::limits::{fit_decay, flat_limit_deviation, DecayOptions, DecaySample, DecayStatus, MinkowskiCovector, MinkowskiPoint};
use crate::lorentz::poincare_residual;
use crate::planewave::{principal_mass, psi_ambient, psi_hyper, AmbientWave, HyperWave, PrincipalMass};
use crate::specfun::{d_abs, d_abs_derived, HarmonicIndex};
use crate::transform::{wavepacket_ambient_checked, AbsoluteProfile, QuadratureGrid, WavepacketSpec};

/// Failure classes with their exit codes.
#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    /// Bad configuration or arguments: exit 2.
    Config(String),
    /// A numerical evaluation failed: exit 1.
    Eval(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Eval(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "configuration error: {m}"),
            CliError::Eval(m) => write!(f, "evaluation error: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Eval(e.to_string())
    }
}

fn io_err(path: &Path, e: std::io::Error) -> CliError {
    CliError::Eval(format!("{}: {e}", path.display()))
}

fn config_err(e: Error) -> CliError {
    CliError::Config(e.to_string())
}

/// Where and how a command writes.
#[derive(Debug, Clone)]
pub struct Context {
    pub cfg: RunConfig,
    pub out: PathBuf,
    pub command: String,
}

impl Context {
    fn table(&self, header: &[&str], extra: &[String]) -> CsvTable {
        let mut t = CsvTable::new(header);
        t.meta.push(format!("dsh {}", env!("CARGO_PKG_VERSION")));
        t.meta.push(format!("command: {}", self.command));
        t.meta.extend(extra.iter().cloned());
        t.meta.extend(self.cfg.echo().into_iter().map(|l| format!("config: {l}")));
        t
    }

    fn write(&self, name: &str, table: &CsvTable) -> Result<(), CliError> {
        let path = self.out.join(name);
        table.write(&path).map_err(|e| io_err(&path, e))?;
        println!("wrote {}", path.display());
        Ok(())
    }

    fn write_svg(&self, name: &str, body: &str) -> Result<(), CliError> {
        let path = self.out.join(name);
        std::fs::write(&path, body).map_err(|e| io_err(&path, e))?;
        println!("wrote {}", path.display());
        Ok(())
    }

    fn spacetime(&self) -> Result<SpacetimeConfig, CliError> {
        SpacetimeConfig::new(self.cfg.n, self.cfg.radius).map_err(config_err)
    }

    /// The mass from `mu` when given, otherwise from `rho`.
    fn mass(&self) -> Result<PrincipalMass, CliError> {
        let st = self.spacetime()?;
        match self.cfg.mu {
            Some(mu) => principal_mass(&st, mu),
            None => PrincipalMass::from_rho(&st, self.cfg.rho),
        }
        .map_err(config_err)
    }
}

fn is_singular(e: &Error) -> bool {
    matches!(e, Error::SingularSurface | Error::ChartSingular(_))
}

fn unit(v: &[f64]) -> Result<Vec<f64>, CliError> {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if !(norm > 0.0 && norm.is_finite()) {
        return Err(CliError::Config("direction vectors must be nonzero".into()));
    }
    Ok(v.iter().map(|x| x / norm).collect())
}

pub fn planewave(ctx: &Context) -> Result<bool, CliError> {
    let cfg = &ctx.cfg;
    let n = cfg.n;
    let st = ctx.spacetime()?;
    let mass = ctx.mass()?;
    let betas = linspace(cfg.beta_min, cfg.beta_max, cfg.beta_nodes);
    let charts: Vec<HyperChart> = betas.iter().map(|&b| HyperChart::new(b, cfg.polar.clone(), cfg.phi)).collect();
    let values: Vec<Result<_, Error>> = match cfg.mode {
        WaveMode::Hyper => {
            let idx = HarmonicIndex::new(n, cfg.m, cfg.degrees.clone()).map_err(config_err)?;
            let wave = HyperWave::new(cfg.alpha, mass.mu_prime(), idx).map_err(config_err)?;
            charts.par_iter().map(|c| psi_hyper(&wave, c)).collect()
        }
        WaveMode::Ambient => {
            let xi = absolute_covector(&unit(&cfg.direction)?).map_err(config_err)?;
            let wave = AmbientWave::new(xi, mass).map_err(config_err)?;
            charts.par_iter().map(|c| psi_ambient(&wave, &from_hyper(&st, c)?)).collect()
        }
    };
    let mut header: Vec<String> = vec!["beta".into()];
    header.extend((1..n - 1).map(|k| format!("polar_{k}")));
    header.extend(["phi", "s", "re_psi", "im_psi"].map(String::from));
    let mut dropped = 0usize;
    let mut rows = Vec::new();
    let mut plot = Vec::new();
    for (c, v) in charts.iter().zip(values) {
        let psi = match v {
            Ok(z) => z,
            Err(e) if is_singular(&e) => {
                dropped += 1;
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        let s = from_hyper(&st, c)?.size();
        let mut row = vec![num(c.beta)];
        row.extend(c.polar.iter().map(|&p| num(p)));
        row.extend([num(c.phi), num(s), num(psi.re), num(psi.im)]);
        rows.push(row);
        plot.push((s, psi.norm()));
    }
    if dropped > 0 {
        eprintln!("dropped {dropped} singular grid nodes");
    }
    let header_refs: Vec<&str> = header.iter().map(String::as_str).collect();
    let mut table = ctx.table(
        &header_refs,
        &[
            format!("mode = {:?}", cfg.mode).to_lowercase(),
            format!("mu = {}, rho = {}", num(mass.mu()), num(mass.mu_prime())),
            format!("dropped_singular_nodes = {dropped}"),
        ],
    );
    table.rows = rows;
    ctx.write("planewave.csv", &table)?;
    if cfg.svg {
        ctx.write_svg("planewave.svg", &log_log_svg("plane wave", "log10 s", "log10 |psi|", &[("|psi|", plot)]))?;
    }
    println!("{} rows, {dropped} dropped", table.rows.len());
    Ok(true)
}

pub fn wavepacket(ctx: &Context) -> Result<bool, CliError> {
    let cfg = &ctx.cfg;
    let st = ctx.spacetime()?;
    let mass = ctx.mass()?;
    let profile = AbsoluteProfile::new(cfg.profile_center.clone(), cfg.profile_delta, cfg.profile_shape)
        .map_err(config_err)?
        .scaled(cfg.profile_amplitude);
    let grid = QuadratureGrid { theta: cfg.grid_theta, polar: cfg.grid_polar, phi: cfg.grid_phi };
    let spec = WavepacketSpec::new(profile, mass, grid).map_err(config_err)?;
    let (polar, phi) = sphere_angles(&unit(&cfg.path_direction)?);
    let betas = linspace(cfg.path_beta_min, cfg.path_beta_max, cfg.path_nodes);
    let samples = betas
        .par_iter()
        .map(|&b| {
            let x = from_hyper(&st, &HyperChart::new(b, polar.clone(), phi))?;
            Ok((b, x.size(), wavepacket_ambient_checked(&spec, &x, 0.0)?))
        })
        .collect::<Result<Vec<_>, Error>>()?;

    let mut table = ctx.table(&["beta", "s", "re_f", "im_f", "abs_f", "error_estimate", "dropped"], &[]);
    for (b, s, c) in &samples {
        let v = c.synthesis.value;
        table.push(vec![num(*b), num(*s), num(v.re), num(v.im), num(v.norm()), num(c.error_estimate), c.synthesis.dropped.to_string()]);
    }
    let opts = DecayOptions { blocks: cfg.decay_blocks, blocks_per_window: cfg.decay_window, ..Default::default() };
    let decay: Vec<DecaySample> = samples
        .iter()
        .map(|(_, s, c)| DecaySample { s: *s, amplitude: c.synthesis.value.norm(), noise: c.error_estimate })
        .collect();
    let fit = fit_decay(&decay, &opts).map_err(|e| CliError::Config(e.to_string()))?;
    table.footer.push(format!("decay_status = {:?}", fit.status));
    table.footer.push(format!("noise_floor = {}", num(fit.noise_floor)));
    if let Some(e) = fit.overall_exponent() {
        table.footer.push(format!("overall_exponent = {}", num(e)));
    }
    for w in &fit.windows {
        table.footer.push(format!("window s = [{}, {}] exponent = {} residual = {}", num(w.s_min), num(w.s_max), num(w.exponent), num(w.residual)));
    }
    ctx.write("wavepacket.csv", &table)?;
    match fit.status {
        DecayStatus::NoiseLimited => eprintln!("warning: decay fit reached the quadrature noise floor after {} windows", fit.windows.len()),
        DecayStatus::Zero => eprintln!("note: the field vanishes on the path"),
        DecayStatus::Resolved => {}
    }
    if let Some(e) = fit.overall_exponent() {
        println!("decay exponent {e:.4} ({:?})", fit.status);
    }

    let flat_mu = cfg.mu.unwrap_or(1.0);
    let xi = MinkowskiCovector::on_shell(flat_mu, &cfg.flat_momentum).map_err(config_err)?;
    let y = MinkowskiPoint::new(cfg.flat_point[0], cfg.flat_point[1..].to_vec());
    let scan = flat_limit_deviation(flat_mu, &xi, &y, &cfg.flat_radii).map_err(|e| match e {
        Error::ComplementarySeries { .. } => config_err(e),
        other => other.into(),
    })?;
    let mut flat = ctx.table(&["r", "deviation"], &[format!("flat_mu = {}", num(flat_mu))]);
    for (r, d) in &scan.rows {
        flat.push(vec![num(*r), num(*d)]);
    }
    flat.footer.push(match scan.slope {
        Some(s) => format!("slope = {}", num(s)),
        None => "slope = none".into(),
    });
    ctx.write("wavepacket_flat.csv", &flat)?;

    if cfg.svg {
        let field: Vec<(f64, f64)> = samples.iter().map(|(_, s, c)| (*s, c.synthesis.value.norm())).collect();
        let noise: Vec<(f64, f64)> = samples.iter().map(|(_, s, c)| (*s, c.error_estimate)).collect();
        ctx.write_svg(
            "wavepacket.svg",
            &log_log_svg("wavepacket along the path", "log10 s", "log10 |f|", &[("|f|", field), ("error estimate", noise), ("block peaks", fit.peaks.clone())]),
        )?;
        ctx.write_svg("wavepacket_flat.svg", &log_log_svg("flat limit", "log10 R", "log10 deviation", &[("deviation", scan.rows.clone())]))?;
    }
    Ok(true)
}

pub fn contract(ctx: &Context) -> Result<bool, CliError> {
    let radii = &ctx.cfg.contract_radii;
    let mut table = ctx.table(&["n", "r", "residual"], &[]);
    let mut ok = true;
    for n in 2..=ctx.cfg.n.max(2) {
        let res = radii
            .par_iter()
            .map(|&r| poincare_residual(&SpacetimeConfig::new(n, r)?, r))
            .collect::<Result<Vec<_>, Error>>()?;
        for (r, v) in radii.iter().zip(&res) {
            table.push(vec![n.to_string(), num(*r), num(*v)]);
        }
        let slope = loglog_slope(radii, &res);
        let status = if (slope + 1.0).abs() <= 0.05 { "ok" } else { "off" };
        ok &= status == "ok";
        table.footer.push(format!("n = {n} slope = {} status = {status}", num(slope)));
        println!("n = {n}: residual slope {slope:.4} ({status})");
    }
    ctx.write("contract.csv", &table)?;
    Ok(ok)
}

pub fn appendix_d(ctx: &Context) -> Result<bool, CliError> {
    let cfg = &ctx.cfg;
    let n = cfg.n;
    let cases: Vec<(u32, u32, f64)> =
        (0..2).flat_map(|j| (0..2).flat_map(move |k| cfg.appendix_rho.iter().map(move |&r| (j, k, r)))).collect();
    let rows = cases
        .par_iter()
        .map(|&(j, k, rho)| {
            let report = appendix_d_oracle(n, j, k, rho, &cfg.appendix_eps)?;
            let printed = d_abs(n, j as i64, k as i64, rho)?;
            let derived = d_abs_derived(n, j as i64, k as i64, rho)?;
            Ok((j, k, rho, report.d_abs, printed, derived, report.integral.change))
        })
        .collect::<Result<Vec<_>, Error>>()
        .map_err(|e| match e {
            Error::InvalidArgument(_) => config_err(e),
            other => other.into(),
        })?;
    let mut table = ctx.table(
        &["n", "j", "k", "rho", "oracle", "closed_form", "rel_error", "tanh_form", "rel_error_tanh", "extrapolation_change"],
        &[],
    );
    let mut worst: f64 = 0.0;
    for (j, k, rho, oracle, printed, derived, change) in rows {
        let e1 = (oracle - printed).abs() / printed;
        let e2 = (oracle - derived).abs() / derived;
        worst = worst.max(e1);
        table.push(vec![
            n.to_string(),
            j.to_string(),
            k.to_string(),
            num(rho),
            num(oracle),
            num(printed),
            num(e1),
            num(derived),
            num(e2),
            num(change),
        ]);
    }
    ctx.write("appendix_d.csv", &table)?;
    println!("n = {n}: max relative error against the closed form {worst:.3e}");
    Ok(true)
}

pub fn verify(ctx: &Context, suite: Suite) -> Result<bool, CliError> {
    let results = run_suite(suite, &ctx.cfg);
    let mut table = ctx.table(&["criterion", "title", "metric", "value", "limit", "pass"], &[]);
    for c in &results {
        println!("{}", c.summary());
        if let Some(e) = &c.error {
            table.push(vec![c.id.to_string(), c.title.into(), "error".into(), "nan".into(), csv_field(e), "false".into()]);
        }
        // Runtimes differ between runs and stay out of the file.
        for k in c.checks.iter().filter(|k| k.metric != "runtime_s") {
            table.push(vec![
                c.id.to_string(),
                csv_field(c.title),
                csv_field(&k.metric),
                num(k.value),
                csv_field(&k.limit_text()),
                k.pass.to_string(),
            ]);
        }
    }
    let name = format!("verify_{}.csv", format!("{suite:?}").to_lowercase());
    ctx.write(&name, &table)?;
    let passed = results.iter().all(|c| c.passed());
    println!("{}", if passed { "PASS" } else { "FAIL" });
    Ok(passed)
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
