//! The five CLI commands and their CSV outputs.

use num_complex::Complex64;
use rayon::prelude::*;
use std::io::Write;

use super::config::RunConfig;
use crate::error::{Error, Result};
use crate::orbits::{orbits, LengthSpectra};
use crate::transfer::lparts_capped;
use crate::zeros::{find_resonances, SearchOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Validate,
    ZetaGrid,
    Resonances,
    Lengths,
    Compare,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::ZetaGrid => "zeta-grid",
            Command::Resonances => "resonances",
            Command::Lengths => "lengths",
            Command::Compare => "compare",
        }
    }
}

/// 17 significant digits, enough to reproduce the f64 bit pattern.
fn fmt_f(x: f64) -> String {
    format!("{x:.16e}")
}

fn write_csv(
    path: &str,
    command: Command,
    cfg: &RunConfig,
    header: &str,
    rows: &[String],
) -> Result<()> {
    let mut out = String::new();
    out.push_str(&format!(
        "# schottky-resonances {}\n# command = {}\n",
        env!("CARGO_PKG_VERSION"),
        command.name()
    ));
    for (k, v) in cfg.echo() {
        out.push_str(&format!("# {k} = {v}\n"));
    }
    out.push_str(header);
    out.push('\n');
    for r in rows {
        out.push_str(r);
        out.push('\n');
    }
    let mut f = std::fs::File::create(path)?;
    f.write_all(out.as_bytes())?;
    Ok(())
}

/// Runs one command; the returned value is the process exit code
/// (0 success, 1 invalid data, 3 comparison failure). Hard computation
/// errors surface as `Err` and map to exit code 2.
pub fn run(command: Command, cfg: &RunConfig) -> Result<i32> {
    match command {
        Command::Validate => validate(cfg),
        Command::ZetaGrid => zeta_grid(cfg),
        Command::Resonances => resonances(cfg),
        Command::Lengths => lengths(cfg),
        Command::Compare => compare(cfg),
    }
}

fn validate(cfg: &RunConfig) -> Result<i32> {
    match cfg.surface.build() {
        Ok(data) => {
            println!("Schottky data '{}' is valid", data.label());
            println!("  q = {}, Euler characteristic = {}", data.q(), data.euler_characteristic());
            for k in data.ig() {
                let iv = data.interval(k);
                println!(
                    "  I_{k}: center = {}, radius = {}",
                    fmt_f(iv.center()),
                    fmt_f(iv.radius())
                );
            }
            Ok(0)
        }
        Err(Error::OverlappingDisks { report, .. }) => {
            println!("Schottky data is INVALID ({} violations):", report.len());
            for v in &report {
                println!("  {v}");
            }
            Ok(1)
        }
        Err(e) => Err(e),
    }
}

fn zeta_grid(cfg: &RunConfig) -> Result<i32> {
    let data = cfg.surface.build()?;
    let parts = lparts_capped(&data, cfg.n_cheb, cfg.refinement, cfg.dim_cap)?;
    let (nr, ni) = (cfg.grid_re_steps, cfg.grid_im_steps);
    let points: Vec<(f64, f64)> = (0..nr)
        .flat_map(|i| {
            let re = cfg.re_min + (cfg.re_max - cfg.re_min) * i as f64 / (nr - 1) as f64;
            (0..ni).map(move |j| {
                let im = cfg.im_min + (cfg.im_max - cfg.im_min) * j as f64 / (ni - 1) as f64;
                (re, im)
            })
        })
        .collect();
    let rows: Vec<String> = points
        .par_iter()
        .map(|&(re, im)| {
            let z = parts.zeta(Complex64::new(re, im))?;
            Ok(format!(
                "{},{},{},{}",
                fmt_f(re),
                fmt_f(im),
                fmt_f(z.log_modulus),
                fmt_f(z.phase)
            ))
        })
        .collect::<Result<_>>()?;
    write_csv(&cfg.output_path, Command::ZetaGrid, cfg, "re_s,im_s,log_abs_Z,arg_Z", &rows)?;
    println!("wrote {} grid points to {}", rows.len(), cfg.output_path);
    Ok(0)
}

fn resonances(cfg: &RunConfig) -> Result<i32> {
    let data = cfg.surface.build()?;
    let parts = lparts_capped(&data, cfg.n_cheb, cfg.refinement, cfg.dim_cap)?;
    let mut opts = SearchOptions::new(cfg.window()?);
    opts.seed_re = cfg.seed_re;
    opts.spacing = cfg.seed_spacing;
    opts.newton.step_tol = cfg.newton_tol;
    opts.newton.zero_tol = cfg.newton_zero_tol;
    opts.newton.max_iter = cfg.newton_max_iter;
    opts.newton.fd_step = cfg.newton_fd_step;
    opts.newton.margin = cfg.newton_margin;
    opts.dedup_tol = cfg.dedup_tol;
    opts.multiplicity = cfg.multiplicity;
    opts.contour_points = cfg.contour_points;
    opts.radius_cap = cfg.radius_cap;
    let set = find_resonances(&parts, &opts)?;
    let rows: Vec<String> = set
        .resonances
        .iter()
        .map(|r| {
            format!(
                "{},{},{},{},{},{},{}",
                fmt_f(r.s.re),
                fmt_f(r.s.im),
                fmt_f(r.residual),
                r.multiplicity.unwrap_or(0),
                r.topological as u8,
                fmt_f(r.seed.re),
                fmt_f(r.seed.im)
            )
        })
        .collect();
    write_csv(
        &cfg.output_path,
        Command::Resonances,
        cfg,
        "re_s,im_s,residual,multiplicity,topological,seed_re,seed_im",
        &rows,
    )?;
    println!("found {} resonances; wrote {}", rows.len(), cfg.output_path);
    Ok(0)
}

fn lengths(cfg: &RunConfig) -> Result<i32> {
    let data = cfg.surface.build()?;
    let mut rows = Vec::new();
    for k in 1..=cfg.lengths_k_max {
        for o in orbits(&data, k)? {
            let word: Vec<String> = o.word.iter().map(|c| c.to_string()).collect();
            rows.push(format!(
                "{},{},{},{}",
                k,
                word.join(" "),
                fmt_f(o.length),
                fmt_f(o.trace)
            ));
        }
    }
    write_csv(&cfg.output_path, Command::Lengths, cfg, "k,word,length,trace", &rows)?;
    println!("wrote {} orbit words to {}", rows.len(), cfg.output_path);
    Ok(0)
}

fn compare(cfg: &RunConfig) -> Result<i32> {
    let data = cfg.surface.build()?;
    let parts = lparts_capped(&data, cfg.n_cheb, cfg.refinement, cfg.dim_cap)?;
    let spectra = LengthSpectra::new(&data, cfg.oracle_truncation)?;
    let mut rows = Vec::new();
    let mut all_pass = true;
    println!(
        "{:>26} {:>26} {:>14} {:>8}",
        "s", "|Z_lc - Z_poe|", "log|Z_lc|", "status"
    );
    for &s in &cfg.compare_points {
        let z_lc = parts.zeta(s)?;
        let z_poe = spectra.zeta(s, cfg.oracle_truncation);
        let diff = (z_lc.to_complex() - z_poe).norm();
        let pass = diff < cfg.compare_tol;
        all_pass &= pass;
        println!(
            "{:>26} {:>26} {:>14.6} {:>8}",
            format!("{:.6}{:+.6}i", s.re, s.im),
            format!("{diff:.3e}"),
            z_lc.log_modulus,
            if pass { "pass" } else { "FAIL" }
        );
        rows.push(format!(
            "{},{},{},{},{}",
            fmt_f(s.re),
            fmt_f(s.im),
            fmt_f(diff),
            fmt_f(z_lc.log_modulus),
            fmt_f(z_poe.norm().ln())
        ));
    }
    write_csv(
        &cfg.output_path,
        Command::Compare,
        cfg,
        "re_s,im_s,abs_diff,log_abs_Z_lc,log_abs_Z_poe",
        &rows,
    )?;
    Ok(if all_pass { 0 } else { 3 })
}
