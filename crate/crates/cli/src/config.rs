//! Run configuration: defaults, the flat key = value config file, and
//! command-line overrides (flags win over the file, the file wins over
//! built-in defaults).

use std::f64::consts::PI;
use std::path::PathBuf;

use ptbox::{BoundaryProfile, PTParams, QuadratureSpec, Sector};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl std::fmt::Display for Format {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Format::Csv => write!(f, "csv"),
            Format::Json => write!(f, "json"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProfileKind {
    Sinusoidal,
    InverseSqrt,
    Fixed,
}

/// Options gathered from the config file and the command line before
/// defaults are applied. `None` means "not set anywhere".
#[derive(Debug, Clone, Default)]
pub struct RawConfig {
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub profile: Option<ProfileKind>,
    pub a1: Option<f64>,
    pub b1: Option<f64>,
    pub omega: Option<f64>,
    pub l0: Option<f64>,
    pub levels: Option<Vec<u32>>,
    pub sectors: Option<Vec<Sector>>,
    pub t_min: Option<f64>,
    pub t_max: Option<f64>,
    pub t_steps: Option<usize>,
    pub x_steps: Option<usize>,
    pub base_order: Option<usize>,
    pub rel_tol: Option<f64>,
    pub max_doublings: Option<u32>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
}

impl RawConfig {
    /// Later sources win field by field.
    pub fn overlay(mut self, over: RawConfig) -> RawConfig {
        macro_rules! take {
            ($($f:ident),*) => { $( if over.$f.is_some() { self.$f = over.$f; } )* };
        }
        take!(
            a, b, profile, a1, b1, omega, l0, levels, sectors, t_min, t_max, t_steps, x_steps,
            base_order, rel_tol, max_doublings, format, out
        );
        self
    }

    pub fn parse_file(text: &str) -> Result<RawConfig, String> {
        let mut raw = RawConfig::default();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("line {}: expected `key = value`", lineno + 1))?;
            let (key, value) = (key.trim(), value.trim());
            raw.set(key, value)
                .map_err(|e| format!("line {}: {e}", lineno + 1))?;
        }
        Ok(raw)
    }

    fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        fn num(v: &str) -> Result<f64, String> {
            v.parse().map_err(|_| format!("`{v}` is not a number"))
        }
        match key {
            "A" | "a" => self.a = Some(num(value)?),
            "B" | "b" => self.b = Some(num(value)?),
            "profile" => self.profile = Some(parse_profile(value)?),
            "A1" | "a1" => self.a1 = Some(num(value)?),
            "B1" | "b1" => self.b1 = Some(num(value)?),
            "omega" => self.omega = Some(num(value)?),
            "L0" | "l0" => self.l0 = Some(num(value)?),
            "levels" => self.levels = Some(parse_levels(value)?),
            "sectors" => self.sectors = Some(parse_sectors(value)?),
            "t_min" => self.t_min = Some(num(value)?),
            "t_max" => self.t_max = Some(num(value)?),
            "t_steps" => {
                self.t_steps = Some(value.parse().map_err(|_| "t_steps must be an integer")?)
            }
            "x_steps" => {
                self.x_steps = Some(value.parse().map_err(|_| "x_steps must be an integer")?)
            }
            "base_order" => {
                self.base_order = Some(value.parse().map_err(|_| "base_order must be an integer")?)
            }
            "rel_tol" => self.rel_tol = Some(num(value)?),
            "max_doublings" => {
                self.max_doublings =
                    Some(value.parse().map_err(|_| "max_doublings must be an integer")?)
            }
            "format" => self.format = Some(parse_format(value)?),
            "out" => self.out = Some(PathBuf::from(value)),
            other => return Err(format!("unknown config key `{other}`")),
        }
        Ok(())
    }
}

pub fn parse_profile(v: &str) -> Result<ProfileKind, String> {
    match v {
        "sinusoidal" => Ok(ProfileKind::Sinusoidal),
        "invsqrt" => Ok(ProfileKind::InverseSqrt),
        "fixed" => Ok(ProfileKind::Fixed),
        other => Err(format!(
            "unknown profile `{other}` (expected sinusoidal, invsqrt, or fixed)"
        )),
    }
}

pub fn parse_format(v: &str) -> Result<Format, String> {
    match v {
        "csv" => Ok(Format::Csv),
        "json" => Ok(Format::Json),
        other => Err(format!("unknown format `{other}` (expected csv or json)")),
    }
}

pub fn parse_levels(v: &str) -> Result<Vec<u32>, String> {
    let levels: Result<Vec<u32>, _> = v.split(',').map(|s| s.trim().parse::<u32>()).collect();
    let levels = levels.map_err(|_| format!("levels must be comma-separated integers, got `{v}`"))?;
    if levels.is_empty() {
        return Err("levels must be nonempty".into());
    }
    Ok(levels)
}

pub fn parse_sectors(v: &str) -> Result<Vec<Sector>, String> {
    let sectors: Result<Vec<Sector>, String> = v
        .split(',')
        .map(|s| match s.trim() {
            "minus" | "-" => Ok(Sector::Minus),
            "plus" | "+" => Ok(Sector::Plus),
            other => Err(format!("unknown sector `{other}` (expected minus or plus)")),
        })
        .collect();
    let sectors = sectors?;
    if sectors.is_empty() {
        return Err("sectors must be nonempty".into());
    }
    Ok(sectors)
}

/// Fully resolved configuration with every invariant revalidated.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub params: PTParams,
    pub profile: BoundaryProfile,
    pub profile_explicit: bool,
    pub levels: Vec<u32>,
    pub sectors: Vec<Sector>,
    pub t_min: f64,
    pub t_max: f64,
    pub t_steps: usize,
    pub x_steps: usize,
    pub quadrature: QuadratureSpec,
    pub format: Format,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    /// Resolve raw options against the given parameter defaults.
    /// (A, B) defaults vary by command: density plots use the weakly
    /// coupled set, observable plots the strongly coupled one.
    pub fn resolve(raw: &RawConfig, default_a: f64, default_b: f64) -> Result<RunConfig, String> {
        let a = raw.a.unwrap_or(default_a);
        let b = raw.b.unwrap_or(default_b);
        let params = PTParams::new(a, b).map_err(|e| e.to_string())?;

        let kind = raw.profile.unwrap_or(ProfileKind::Sinusoidal);
        let profile = match kind {
            ProfileKind::Sinusoidal => BoundaryProfile::Sinusoidal,
            ProfileKind::InverseSqrt => BoundaryProfile::InverseSqrtCosine {
                a1: raw.a1.unwrap_or(1.0),
                b1: raw.b1.unwrap_or(0.5),
                omega: raw.omega.unwrap_or(1.0),
            },
            ProfileKind::Fixed => BoundaryProfile::Fixed {
                l0: raw.l0.unwrap_or(PI),
            },
        };
        profile.validate().map_err(|e| e.to_string())?;

        let t_min = raw.t_min.unwrap_or(0.0);
        let t_max = raw.t_max.unwrap_or(4.0 * PI);
        let t_steps = raw.t_steps.unwrap_or(200);
        if !(t_min < t_max) {
            return Err(format!("t_min = {t_min} must be below t_max = {t_max}"));
        }
        if t_steps < 2 {
            return Err("t_steps must be at least 2".into());
        }
        if t_min < 0.0 {
            return Err("t_min must be nonnegative".into());
        }
        let x_steps = raw.x_steps.unwrap_or(200);
        if x_steps == 0 {
            return Err("x_steps must be positive".into());
        }

        let quadrature = QuadratureSpec::new(
            raw.base_order.unwrap_or(64),
            raw.rel_tol.unwrap_or(1e-11),
            raw.max_doublings.unwrap_or(6),
        )
        .map_err(|e| e.to_string())?;

        Ok(RunConfig {
            params,
            profile,
            profile_explicit: raw.profile.is_some(),
            levels: raw.levels.clone().unwrap_or_else(|| vec![0, 1, 2]),
            sectors: raw
                .sectors
                .clone()
                .unwrap_or_else(|| vec![Sector::Minus, Sector::Plus]),
            t_min,
            t_max,
            t_steps,
            x_steps,
            quadrature,
            format: raw.format.unwrap_or(Format::Csv),
            out: raw.out.clone(),
        })
    }

    pub fn t_grid(&self) -> Vec<f64> {
        let n = self.t_steps;
        (0..n)
            .map(|i| self.t_min + (self.t_max - self.t_min) * i as f64 / (n - 1) as f64)
            .collect()
    }

    /// The oscillating panels a figure shows: the explicitly requested
    /// profile, or the two caption profiles when none was requested.
    pub fn figure_panels(&self) -> Vec<(&'static str, BoundaryProfile)> {
        if self.profile_explicit {
            vec![(profile_tag(&self.profile), self.profile)]
        } else {
            vec![
                ("sinusoidal", BoundaryProfile::Sinusoidal),
                (
                    "invsqrt",
                    BoundaryProfile::InverseSqrtCosine {
                        a1: 1.0,
                        b1: 0.5,
                        omega: 1.0,
                    },
                ),
            ]
        }
    }

    pub fn describe(&self) -> Vec<String> {
        let mut lines = vec![
            format!("A = {}", self.params.a()),
            format!("B = {}", self.params.b()),
            format!("profile = {}", profile_desc(&self.profile)),
            format!("levels = {:?}", self.levels),
            format!(
                "sectors = {}",
                self.sectors
                    .iter()
                    .map(|s| s.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            ),
            format!(
                "t_grid = [{}, {}] with {} steps",
                self.t_min, self.t_max, self.t_steps
            ),
            format!("x_steps = {}", self.x_steps),
            format!(
                "quadrature = base_order {}, rel_tol {}, max_doublings {}",
                self.quadrature.base_order, self.quadrature.rel_tol, self.quadrature.max_doublings
            ),
        ];
        lines.push(format!("format = {}", self.format));
        lines
    }
}

pub fn profile_tag(profile: &BoundaryProfile) -> &'static str {
    match profile {
        BoundaryProfile::Sinusoidal => "sinusoidal",
        BoundaryProfile::InverseSqrtCosine { .. } => "invsqrt",
        BoundaryProfile::Fixed { .. } => "fixed",
    }
}

pub fn profile_desc(profile: &BoundaryProfile) -> String {
    match profile {
        BoundaryProfile::Sinusoidal => "sinusoidal L(t) = pi(2 + sin t)".into(),
        BoundaryProfile::InverseSqrtCosine { a1, b1, omega } => format!(
            "invsqrt L(t) = {a1} pi / sqrt(1 + {b1} cos({omega} t))"
        ),
        BoundaryProfile::Fixed { l0 } => format!("fixed L = {l0}"),
    }
}
