//! Flat `key = value` run configuration.
//!
//! Dotted keys, `#` comments, lists comma-separated. Every key has a default
//! so minimal files stay minimal; `--set key=value` overrides apply last.

use num_complex::Complex64;
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::schottky::{
    funneled_torus_rotated, hyperbolic_cylinder, n_funnel, three_funnel, SchottkyData,
};
use crate::zeros::Window;

#[derive(Debug, Clone, PartialEq)]
pub enum SurfaceSpec {
    Cylinder { l: f64 },
    ThreeFunnel { l1: f64, l2: f64, l3: f64 },
    NFunnel { widths: Vec<f64>, inner: Option<Vec<f64>> },
    FunneledTorus { l1: f64, l2: f64, phi: f64, psi: f64 },
    /// Explicit generator matrices, row-major `a,b,c,d` per generator.
    Custom { matrices: Vec<[f64; 4]> },
}

impl SurfaceSpec {
    pub fn build(&self) -> Result<SchottkyData> {
        match self {
            SurfaceSpec::Cylinder { l } => hyperbolic_cylinder(*l),
            SurfaceSpec::ThreeFunnel { l1, l2, l3 } => three_funnel(*l1, *l2, *l3),
            SurfaceSpec::NFunnel { widths, inner } => n_funnel(widths, inner.as_deref()),
            SurfaceSpec::FunneledTorus { l1, l2, phi, psi } => {
                funneled_torus_rotated(*l1, *l2, *phi, *psi)
            }
            SurfaceSpec::Custom { matrices } => {
                let gens = matrices
                    .iter()
                    .map(|m| crate::geometry::MoebiusTransform::new(m[0], m[1], m[2], m[3]))
                    .collect::<Result<Vec<_>>>()?;
                SchottkyData::from_generators(gens, "custom")
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub surface: SurfaceSpec,
    pub n_cheb: usize,
    pub refinement: usize,
    pub dim_cap: usize,
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
    pub seed_re: Option<f64>,
    pub seed_spacing: f64,
    pub newton_tol: f64,
    pub newton_zero_tol: f64,
    pub newton_max_iter: usize,
    pub newton_fd_step: f64,
    pub newton_margin: f64,
    pub dedup_tol: f64,
    pub oracle_truncation: usize,
    pub output_path: String,
    pub grid_re_steps: usize,
    pub grid_im_steps: usize,
    pub lengths_k_max: usize,
    pub compare_points: Vec<Complex64>,
    pub compare_tol: f64,
    pub multiplicity: bool,
    pub contour_points: usize,
    pub radius_cap: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            surface: SurfaceSpec::Cylinder { l: 4.0 },
            n_cheb: 24,
            refinement: 0,
            dim_cap: crate::transfer::DEFAULT_DIM_CAP,
            re_min: -1.0,
            re_max: 1.0,
            im_min: -2.0,
            im_max: 2.0,
            seed_re: None,
            seed_spacing: 0.05,
            newton_tol: 1e-10,
            newton_zero_tol: 1e-9,
            newton_max_iter: 60,
            newton_fd_step: 1e-6,
            newton_margin: 1.0,
            dedup_tol: 1e-6,
            oracle_truncation: 12,
            output_path: "out.csv".to_string(),
            grid_re_steps: 41,
            grid_im_steps: 41,
            lengths_k_max: 6,
            compare_points: vec![Complex64::new(0.3, 0.0)],
            compare_tol: 1e-6,
            multiplicity: false,
            contour_points: 64,
            radius_cap: 0.02,
        }
    }
}

fn conf_err(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}

fn parse_f64(key: &str, v: &str) -> Result<f64> {
    v.trim().parse().map_err(|_| conf_err(format!("{key}: not a number: '{v}'")))
}

fn parse_usize(key: &str, v: &str) -> Result<usize> {
    v.trim().parse().map_err(|_| conf_err(format!("{key}: not a nonnegative integer: '{v}'")))
}

fn parse_bool(key: &str, v: &str) -> Result<bool> {
    match v.trim() {
        "true" | "1" | "yes" => Ok(true),
        "false" | "0" | "no" => Ok(false),
        _ => Err(conf_err(format!("{key}: not a boolean: '{v}'"))),
    }
}

fn parse_list(key: &str, v: &str) -> Result<Vec<f64>> {
    v.split(',')
        .map(|p| parse_f64(key, p))
        .collect()
}

/// Accepts `a`, `bi`, `a+bi`, `a-bi` (also with `j`).
pub fn parse_complex(text: &str) -> Result<Complex64> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(conf_err("empty complex literal"));
    }
    let t = t.replace('j', "i");
    if !t.ends_with('i') {
        return Ok(Complex64::new(
            t.parse().map_err(|_| conf_err(format!("bad complex literal '{text}'")))?,
            0.0,
        ));
    }
    let body = &t[..t.len() - 1];
    // split at the last +/- that is not an exponent sign or leading sign
    let bytes = body.as_bytes();
    let mut split = None;
    for i in (1..bytes.len()).rev() {
        let c = bytes[i] as char;
        if (c == '+' || c == '-') && !matches!(bytes[i - 1] as char, 'e' | 'E') {
            split = Some(i);
            break;
        }
    }
    let (re, im) = match split {
        Some(i) => (&body[..i], &body[i..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => "1".to_string(),
        "-" => "-1".to_string(),
        other => other.to_string(),
    };
    Ok(Complex64::new(
        if re.is_empty() { 0.0 } else { re.parse().map_err(|_| conf_err(format!("bad complex literal '{text}'")))? },
        im.parse().map_err(|_| conf_err(format!("bad complex literal '{text}'")))?,
    ))
}

/// Raw key-value view used for parsing and for the CSV metadata echo.
#[derive(Debug, Clone, Default)]
pub struct RawConfig {
    entries: BTreeMap<String, String>,
}

impl RawConfig {
    pub fn parse(text: &str) -> Result<RawConfig> {
        let mut entries = BTreeMap::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| conf_err(format!("line {}: expected key = value", lineno + 1)))?;
            entries.insert(key.trim().to_string(), value.trim().to_string());
        }
        Ok(RawConfig { entries })
    }

    pub fn set(&mut self, key: &str, value: &str) {
        self.entries.insert(key.trim().to_string(), value.trim().to_string());
    }

    /// Applies `key=value` override strings.
    pub fn apply_overrides(&mut self, overrides: &[String]) -> Result<()> {
        for o in overrides {
            let (k, v) = o
                .split_once('=')
                .ok_or_else(|| conf_err(format!("override '{o}' is not key=value")))?;
            self.set(k, v);
        }
        Ok(())
    }

    fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(|s| s.as_str())
    }

    pub fn into_config(self) -> Result<RunConfig> {
        let mut cfg = RunConfig::default();
        let mut recognized: Vec<&str> = vec![
            "surface.type",
            "surface.lengths",
            "surface.inner_lengths",
            "surface.angle",
            "surface.rotation",
            "surface.matrices",
            "disc.N",
            "disc.refinement",
            "disc.dim_cap",
            "search.re_min",
            "search.re_max",
            "search.im_min",
            "search.im_max",
            "search.seed_re",
            "search.seed_spacing",
            "newton.tol",
            "newton.zero_tol",
            "newton.max_iter",
            "newton.fd_step",
            "newton.margin",
            "dedup.tol",
            "oracle.truncation",
            "output.path",
            "grid.re_steps",
            "grid.im_steps",
            "lengths.k_max",
            "compare.points",
            "compare.tol",
            "resonances.multiplicity",
            "resonances.contour_points",
            "resonances.radius_cap",
        ];
        recognized.sort();
        for key in self.entries.keys() {
            if recognized.binary_search(&key.as_str()).is_err() {
                return Err(conf_err(format!("unknown key '{key}'")));
            }
        }

        cfg.surface = self.parse_surface()?;
        if let Some(v) = self.get("disc.N") {
            cfg.n_cheb = parse_usize("disc.N", v)?;
        }
        if let Some(v) = self.get("disc.refinement") {
            cfg.refinement = parse_usize("disc.refinement", v)?;
        }
        if let Some(v) = self.get("disc.dim_cap") {
            cfg.dim_cap = parse_usize("disc.dim_cap", v)?;
        }
        if let Some(v) = self.get("search.re_min") {
            cfg.re_min = parse_f64("search.re_min", v)?;
        }
        if let Some(v) = self.get("search.re_max") {
            cfg.re_max = parse_f64("search.re_max", v)?;
        }
        if let Some(v) = self.get("search.im_min") {
            cfg.im_min = parse_f64("search.im_min", v)?;
        }
        if let Some(v) = self.get("search.im_max") {
            cfg.im_max = parse_f64("search.im_max", v)?;
        }
        if let Some(v) = self.get("search.seed_re") {
            cfg.seed_re =
                if v == "auto" { None } else { Some(parse_f64("search.seed_re", v)?) };
        }
        if let Some(v) = self.get("search.seed_spacing") {
            cfg.seed_spacing = parse_f64("search.seed_spacing", v)?;
        }
        if let Some(v) = self.get("newton.tol") {
            cfg.newton_tol = parse_f64("newton.tol", v)?;
        }
        if let Some(v) = self.get("newton.zero_tol") {
            cfg.newton_zero_tol = parse_f64("newton.zero_tol", v)?;
        }
        if let Some(v) = self.get("newton.max_iter") {
            cfg.newton_max_iter = parse_usize("newton.max_iter", v)?;
        }
        if let Some(v) = self.get("newton.fd_step") {
            cfg.newton_fd_step = parse_f64("newton.fd_step", v)?;
        }
        if let Some(v) = self.get("newton.margin") {
            cfg.newton_margin = parse_f64("newton.margin", v)?;
        }
        if let Some(v) = self.get("dedup.tol") {
            cfg.dedup_tol = parse_f64("dedup.tol", v)?;
        }
        if let Some(v) = self.get("oracle.truncation") {
            cfg.oracle_truncation = parse_usize("oracle.truncation", v)?;
        }
        if let Some(v) = self.get("output.path") {
            cfg.output_path = v.to_string();
        }
        if let Some(v) = self.get("grid.re_steps") {
            cfg.grid_re_steps = parse_usize("grid.re_steps", v)?;
        }
        if let Some(v) = self.get("grid.im_steps") {
            cfg.grid_im_steps = parse_usize("grid.im_steps", v)?;
        }
        if let Some(v) = self.get("lengths.k_max") {
            cfg.lengths_k_max = parse_usize("lengths.k_max", v)?;
        }
        if let Some(v) = self.get("compare.points") {
            cfg.compare_points =
                v.split(',').map(parse_complex).collect::<Result<Vec<_>>>()?;
        }
        if let Some(v) = self.get("compare.tol") {
            cfg.compare_tol = parse_f64("compare.tol", v)?;
        }
        if let Some(v) = self.get("resonances.multiplicity") {
            cfg.multiplicity = parse_bool("resonances.multiplicity", v)?;
        }
        if let Some(v) = self.get("resonances.contour_points") {
            cfg.contour_points = parse_usize("resonances.contour_points", v)?;
        }
        if let Some(v) = self.get("resonances.radius_cap") {
            cfg.radius_cap = parse_f64("resonances.radius_cap", v)?;
        }
        cfg.check()?;
        Ok(cfg)
    }

    fn parse_surface(&self) -> Result<SurfaceSpec> {
        let ty = self.get("surface.type").unwrap_or("cylinder");
        let lengths = match self.get("surface.lengths") {
            Some(v) => parse_list("surface.lengths", v)?,
            None => vec![4.0],
        };
        match ty {
            "cylinder" => {
                if lengths.len() != 1 {
                    return Err(conf_err("cylinder needs exactly one length"));
                }
                Ok(SurfaceSpec::Cylinder { l: lengths[0] })
            }
            "three_funnel" => {
                if lengths.len() != 3 {
                    return Err(conf_err("three_funnel needs three lengths"));
                }
                Ok(SurfaceSpec::ThreeFunnel { l1: lengths[0], l2: lengths[1], l3: lengths[2] })
            }
            "n_funnel" => {
                let inner = match self.get("surface.inner_lengths") {
                    Some(v) if !v.trim().is_empty() => {
                        Some(parse_list("surface.inner_lengths", v)?)
                    }
                    _ => None,
                };
                Ok(SurfaceSpec::NFunnel { widths: lengths, inner })
            }
            "funneled_torus" => {
                if lengths.len() != 2 {
                    return Err(conf_err("funneled_torus needs two lengths"));
                }
                let phi = match self.get("surface.angle") {
                    Some(v) => parse_f64("surface.angle", v)?,
                    None => std::f64::consts::FRAC_PI_2,
                };
                let psi = match self.get("surface.rotation") {
                    Some(v) => parse_f64("surface.rotation", v)?,
                    None => std::f64::consts::FRAC_PI_8,
                };
                Ok(SurfaceSpec::FunneledTorus { l1: lengths[0], l2: lengths[1], phi, psi })
            }
            "custom" => {
                let text = self
                    .get("surface.matrices")
                    .ok_or_else(|| conf_err("custom surface needs surface.matrices"))?;
                let mut matrices = Vec::new();
                for part in text.split(';') {
                    let vals = parse_list("surface.matrices", part)?;
                    if vals.len() != 4 {
                        return Err(conf_err("each matrix needs four entries a,b,c,d"));
                    }
                    matrices.push([vals[0], vals[1], vals[2], vals[3]]);
                }
                Ok(SurfaceSpec::Custom { matrices })
            }
            other => Err(conf_err(format!("unknown surface.type '{other}'"))),
        }
    }
}

impl RunConfig {
    pub fn check(&self) -> Result<()> {
        if self.n_cheb < 2 {
            return Err(conf_err("disc.N must be at least 2"));
        }
        if !(self.re_min < self.re_max && self.im_min < self.im_max) {
            return Err(conf_err("search window is empty"));
        }
        for (name, v) in [
            ("search.seed_spacing", self.seed_spacing),
            ("newton.tol", self.newton_tol),
            ("newton.zero_tol", self.newton_zero_tol),
            ("newton.fd_step", self.newton_fd_step),
            ("newton.margin", self.newton_margin),
            ("dedup.tol", self.dedup_tol),
            ("compare.tol", self.compare_tol),
            ("resonances.radius_cap", self.radius_cap),
        ] {
            if !(v > 0.0) {
                return Err(conf_err(format!("{name} must be positive, got {v}")));
            }
        }
        if self.grid_re_steps < 2 || self.grid_im_steps < 2 {
            return Err(conf_err("grid needs at least 2 steps per axis"));
        }
        if self.oracle_truncation < 1 || self.lengths_k_max < 1 {
            return Err(conf_err("truncation orders must be at least 1"));
        }
        if self.contour_points < 8 {
            return Err(conf_err("resonances.contour_points must be at least 8"));
        }
        if self.compare_points.is_empty() {
            return Err(conf_err("compare.points must not be empty"));
        }
        Ok(())
    }

    pub fn window(&self) -> Result<Window> {
        Window::new(self.re_min, self.re_max, self.im_min, self.im_max)
    }

    /// Canonical `key = value` echo of the effective configuration, sorted by
    /// key, for the CSV metadata block.
    pub fn echo(&self) -> Vec<(String, String)> {
        let f = |x: f64| format!("{x}");
        let mut out: Vec<(String, String)> = Vec::new();
        match &self.surface {
            SurfaceSpec::Cylinder { l } => {
                out.push(("surface.type".into(), "cylinder".into()));
                out.push(("surface.lengths".into(), f(*l)));
            }
            SurfaceSpec::ThreeFunnel { l1, l2, l3 } => {
                out.push(("surface.type".into(), "three_funnel".into()));
                out.push(("surface.lengths".into(), format!("{},{},{}", l1, l2, l3)));
            }
            SurfaceSpec::NFunnel { widths, inner } => {
                out.push(("surface.type".into(), "n_funnel".into()));
                out.push((
                    "surface.lengths".into(),
                    widths.iter().map(|w| f(*w)).collect::<Vec<_>>().join(","),
                ));
                if let Some(inner) = inner {
                    out.push((
                        "surface.inner_lengths".into(),
                        inner.iter().map(|w| f(*w)).collect::<Vec<_>>().join(","),
                    ));
                }
            }
            SurfaceSpec::FunneledTorus { l1, l2, phi, psi } => {
                out.push(("surface.type".into(), "funneled_torus".into()));
                out.push(("surface.lengths".into(), format!("{},{}", l1, l2)));
                out.push(("surface.angle".into(), f(*phi)));
                out.push(("surface.rotation".into(), f(*psi)));
            }
            SurfaceSpec::Custom { matrices } => {
                out.push(("surface.type".into(), "custom".into()));
                out.push((
                    "surface.matrices".into(),
                    matrices
                        .iter()
                        .map(|m| m.iter().map(|v| f(*v)).collect::<Vec<_>>().join(","))
                        .collect::<Vec<_>>()
                        .join(";"),
                ));
            }
        }
        out.push(("disc.N".into(), self.n_cheb.to_string()));
        out.push(("disc.refinement".into(), self.refinement.to_string()));
        out.push(("disc.dim_cap".into(), self.dim_cap.to_string()));
        out.push(("search.re_min".into(), f(self.re_min)));
        out.push(("search.re_max".into(), f(self.re_max)));
        out.push(("search.im_min".into(), f(self.im_min)));
        out.push(("search.im_max".into(), f(self.im_max)));
        out.push((
            "search.seed_re".into(),
            self.seed_re.map_or("auto".to_string(), f),
        ));
        out.push(("search.seed_spacing".into(), f(self.seed_spacing)));
        out.push(("newton.tol".into(), f(self.newton_tol)));
        out.push(("newton.zero_tol".into(), f(self.newton_zero_tol)));
        out.push(("newton.max_iter".into(), self.newton_max_iter.to_string()));
        out.push(("newton.fd_step".into(), f(self.newton_fd_step)));
        out.push(("newton.margin".into(), f(self.newton_margin)));
        out.push(("dedup.tol".into(), f(self.dedup_tol)));
        out.push(("oracle.truncation".into(), self.oracle_truncation.to_string()));
        out.push(("output.path".into(), self.output_path.clone()));
        out.push(("grid.re_steps".into(), self.grid_re_steps.to_string()));
        out.push(("grid.im_steps".into(), self.grid_im_steps.to_string()));
        out.push(("lengths.k_max".into(), self.lengths_k_max.to_string()));
        out.push((
            "compare.points".into(),
            self.compare_points
                .iter()
                .map(|z| {
                    if z.im == 0.0 {
                        format!("{}", z.re)
                    } else if z.im >= 0.0 {
                        format!("{}+{}i", z.re, z.im)
                    } else {
                        format!("{}{}i", z.re, z.im)
                    }
                })
                .collect::<Vec<_>>()
                .join(","),
        ));
        out.push(("compare.tol".into(), f(self.compare_tol)));
        out.push(("resonances.multiplicity".into(), self.multiplicity.to_string()));
        out.push(("resonances.contour_points".into(), self.contour_points.to_string()));
        out.push(("resonances.radius_cap".into(), f(self.radius_cap)));
        out.sort();
        out
    }
}
