//! Run description: config file parsing, flag overrides and validation.
//!
//! Config files are flat `key = value` lines; `#` starts a comment. Keys are
//! the physical parameters (`m`, `hbar`, `sigma`, `omega`, `z0`, `beta`,
//! `t_i`, `t_e`, `t`, `b0`) plus `dt`, `grid`, `oracle` and `strict_eq12`.

use std::path::{Path, PathBuf};

use spin_eraser::{GridSpec, PhysParams};

use crate::error::{CliError, Result};

/// Experiment configuration selected on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScenarioKind {
    NoEraser,
    Eraser,
    WhichWay,
    Delayed,
}

impl ScenarioKind {
    pub fn name(self) -> &'static str {
        match self {
            ScenarioKind::NoEraser => "no-eraser",
            ScenarioKind::Eraser => "eraser",
            ScenarioKind::WhichWay => "whichway",
            ScenarioKind::Delayed => "delayed",
        }
    }

    /// Whether a magnet acts during the run.
    pub fn magnet_active(self) -> bool {
        self != ScenarioKind::NoEraser
    }
}

/// Optional settings from one source (file or flags).
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub m: Option<f64>,
    pub hbar: Option<f64>,
    pub sigma: Option<f64>,
    pub omega: Option<f64>,
    pub z0: Option<f64>,
    pub beta: Option<f64>,
    pub t_i: Option<f64>,
    pub t_e: Option<f64>,
    pub t: Option<f64>,
    pub b0: Option<f64>,
    pub dt: Option<f64>,
    pub grid: Option<GridArg>,
    pub oracle: Option<bool>,
    pub strict_eq12: Option<bool>,
}

/// Grid given as `NX,NZ,XMIN,XMAX,ZMIN,ZMAX`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridArg {
    pub nx: usize,
    pub nz: usize,
    pub x_min: f64,
    pub x_max: f64,
    pub z_min: f64,
    pub z_max: f64,
}

impl std::str::FromStr for GridArg {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 6 {
            return Err(format!("expected NX,NZ,XMIN,XMAX,ZMIN,ZMAX, got {s:?}"));
        }
        let count = |v: &str| v.parse::<usize>().map_err(|e| format!("{v:?}: {e}"));
        let real = |v: &str| v.parse::<f64>().map_err(|e| format!("{v:?}: {e}"));
        Ok(GridArg {
            nx: count(parts[0])?,
            nz: count(parts[1])?,
            x_min: real(parts[2])?,
            x_max: real(parts[3])?,
            z_min: real(parts[4])?,
            z_max: real(parts[5])?,
        })
    }
}

impl GridArg {
    pub fn to_spec(self) -> spin_eraser::Result<GridSpec> {
        GridSpec::new(self.x_min, self.x_max, self.nx, self.z_min, self.z_max, self.nz)
    }
}

fn parse_bool(v: &str) -> std::result::Result<bool, String> {
    match v {
        "true" | "yes" | "on" | "1" => Ok(true),
        "false" | "no" | "off" | "0" => Ok(false),
        _ => Err(format!("expected a boolean, got {v:?}")),
    }
}

impl Overrides {
    /// Parses config text. Errors carry the 1-based line number.
    pub fn parse(text: &str) -> Result<Self> {
        let mut o = Overrides::default();
        for (n, raw) in text.lines().enumerate() {
            let line = n + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let err = |msg: String| CliError::Parse { line, msg };
            let (key, value) = content
                .split_once('=')
                .ok_or_else(|| err(format!("expected `key = value`, got {content:?}")))?;
            let (key, value) = (key.trim(), value.trim());
            let real = || value.parse::<f64>().map_err(|e| err(format!("{key}: {e}")));
            match key {
                "m" => o.m = Some(real()?),
                "hbar" => o.hbar = Some(real()?),
                "sigma" => o.sigma = Some(real()?),
                "omega" => o.omega = Some(real()?),
                "z0" => o.z0 = Some(real()?),
                "beta" => o.beta = Some(real()?),
                "t_i" => o.t_i = Some(real()?),
                "t_e" => o.t_e = Some(real()?),
                "t" => o.t = Some(real()?),
                "b0" => o.b0 = Some(real()?),
                "dt" => o.dt = Some(real()?),
                "grid" => o.grid = Some(value.parse().map_err(err)?),
                "oracle" => o.oracle = Some(parse_bool(value).map_err(err)?),
                "strict_eq12" => o.strict_eq12 = Some(parse_bool(value).map_err(err)?),
                _ => return Err(err(format!("unknown key {key:?}"))),
            }
        }
        Ok(o)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io { path: path.to_owned(), source: e })?;
        Self::parse(&text)
    }

    /// Fields set in `top` replace those in `self`.
    pub fn layered(self, top: Overrides) -> Overrides {
        Overrides {
            m: top.m.or(self.m),
            hbar: top.hbar.or(self.hbar),
            sigma: top.sigma.or(self.sigma),
            omega: top.omega.or(self.omega),
            z0: top.z0.or(self.z0),
            beta: top.beta.or(self.beta),
            t_i: top.t_i.or(self.t_i),
            t_e: top.t_e.or(self.t_e),
            t: top.t.or(self.t),
            b0: top.b0.or(self.b0),
            dt: top.dt.or(self.dt),
            grid: top.grid.or(self.grid),
            oracle: top.oracle.or(self.oracle),
            strict_eq12: top.strict_eq12.or(self.strict_eq12),
        }
    }

    pub fn params(&self) -> PhysParams {
        let d = PhysParams::default();
        PhysParams {
            m: self.m.unwrap_or(d.m),
            hbar: self.hbar.unwrap_or(d.hbar),
            sigma: self.sigma.unwrap_or(d.sigma),
            omega: self.omega.unwrap_or(d.omega),
            z0: self.z0.unwrap_or(d.z0),
            beta: self.beta.unwrap_or(d.beta),
            t_i: self.t_i.unwrap_or(d.t_i),
            t_e: self.t_e.unwrap_or(d.t_e),
            t: self.t.unwrap_or(d.t),
            b0: self.b0.unwrap_or(d.b0),
        }
    }
}

pub const DEFAULT_DT: f64 = 0.005;

/// Fully validated description of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub scenario: ScenarioKind,
    pub params: PhysParams,
    /// Explicit grid; `None` picks one per snapshot.
    pub grid: Option<GridSpec>,
    pub oracle: bool,
    pub dt: f64,
    pub strict_eq12: bool,
    pub out: PathBuf,
}

impl RunConfig {
    pub fn resolve(scenario: ScenarioKind, settings: &Overrides, out: PathBuf) -> Result<Self> {
        let params = settings.params().validate(scenario.magnet_active())?;
        let grid = settings.grid.map(GridArg::to_spec).transpose()?;
        let dt = settings.dt.unwrap_or(DEFAULT_DT);
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(spin_eraser::Error::InvalidParams("dt must be positive".into()).into());
        }
        Ok(RunConfig {
            scenario,
            params,
            grid,
            oracle: settings.oracle.unwrap_or(false),
            dt,
            strict_eq12: settings.strict_eq12.unwrap_or(false),
            out,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_config_gives_defaults() {
        let o = Overrides::parse("").unwrap();
        assert_eq!(o, Overrides::default());
        let c = RunConfig::resolve(ScenarioKind::Eraser, &o, PathBuf::from("out")).unwrap();
        assert_eq!(c.params, PhysParams::default());
        assert_eq!(c.dt, DEFAULT_DT);
        assert!(c.grid.is_none());
    }

    #[test]
    fn comments_and_blank_lines() {
        let o = Overrides::parse("# desk run\n\nbeta = 0.75  # stronger magnet\n  t=30\noracle = true\n").unwrap();
        assert_eq!(o.beta, Some(0.75));
        assert_eq!(o.t, Some(30.0));
        assert_eq!(o.oracle, Some(true));
    }

    #[test]
    fn errors_report_line_numbers() {
        match Overrides::parse("beta = 1\n\nsigma = abc\n") {
            Err(CliError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        match Overrides::parse("beta 1\n") {
            Err(CliError::Parse { line, .. }) => assert_eq!(line, 1),
            other => panic!("{other:?}"),
        }
        assert!(matches!(Overrides::parse("\nspeed = 3\n"), Err(CliError::Parse { line: 2, .. })));
    }

    #[test]
    fn negative_sigma_is_rejected() {
        let o = Overrides::parse("sigma = -1").unwrap();
        let err = RunConfig::resolve(ScenarioKind::NoEraser, &o, PathBuf::new()).unwrap_err();
        assert!(err.to_string().contains("sigma"), "{err}");
    }

    #[test]
    fn top_layer_wins() {
        let file = Overrides::parse("beta = 1.0\nt = 30").unwrap();
        let flags = Overrides { beta: Some(2.0), ..Default::default() };
        let merged = file.layered(flags);
        assert_eq!(merged.beta, Some(2.0));
        assert_eq!(merged.t, Some(30.0));
    }

    #[test]
    fn grid_argument() {
        let g: GridArg = "64, 32, -5, 5, -2, 2".parse().unwrap();
        assert_eq!((g.nx, g.nz, g.x_min, g.z_max), (64, 32, -5.0, 2.0));
        assert!("64,32,-5".parse::<GridArg>().is_err());
        let bad = GridArg { x_max: -6.0, ..g };
        assert!(bad.to_spec().is_err());
    }
}
