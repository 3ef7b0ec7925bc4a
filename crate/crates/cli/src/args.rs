//! Command-line interface.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::config::{GridArg, Overrides, RunConfig, ScenarioKind};
use crate::error::Result;

#[derive(Debug, Parser)]
#[command(name = "spin-eraser", version, about = "Stern-Gerlach quantum eraser screen densities")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Opts,
}

#[derive(Debug, Clone, Copy, Subcommand)]
pub enum Command {
    /// Free flight to the screen, no magnet.
    NoEraser,
    /// Eraser magnet sorting the S_x branches along x.
    Eraser,
    /// Which-way magnet sorting the S_z branches along x.
    Whichway,
    /// Intermediate snapshot at the magnet entrance plus the final eraser screen.
    Delayed,
}

impl From<Command> for ScenarioKind {
    fn from(c: Command) -> Self {
        match c {
            Command::NoEraser => ScenarioKind::NoEraser,
            Command::Eraser => ScenarioKind::Eraser,
            Command::Whichway => ScenarioKind::WhichWay,
            Command::Delayed => ScenarioKind::Delayed,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct Opts {
    /// Config file of `key = value` lines; flags take precedence.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true, value_name = "DIR", default_value = "out")]
    pub out: PathBuf,
    /// Explicit grid.
    #[arg(long, global = true, value_name = "NX,NZ,XMIN,XMAX,ZMIN,ZMAX")]
    pub grid: Option<GridArg>,
    /// Also propagate on the grid and report the residual.
    #[arg(long, global = true)]
    pub oracle: bool,
    /// Time step inside the magnet for the grid propagation.
    #[arg(long, global = true, value_name = "VALUE")]
    pub dt: Option<f64>,
    /// Place the lobes at the magnet-exit shift only, without the later drift.
    #[arg(long, global = true)]
    pub strict_eq12: bool,
    /// Particle mass.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub m: Option<f64>,
    /// Reduced Planck constant.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub hbar: Option<f64>,
    /// Initial z-width of each slit packet.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub sigma: Option<f64>,
    /// Initial x-width of the packets.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub omega: Option<f64>,
    /// Half slit separation.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub z0: Option<f64>,
    /// Eraser magnet gradient.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub beta: Option<f64>,
    /// Time of entry into the magnet.
    #[arg(long = "t-i", global = true, allow_hyphen_values = true)]
    pub t_i: Option<f64>,
    /// Time spent inside the magnet.
    #[arg(long = "t-e", global = true, allow_hyphen_values = true)]
    pub t_e: Option<f64>,
    /// Time of arrival at the screen.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub t: Option<f64>,
    /// Which-way magnet gradient.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub b0: Option<f64>,
}

impl Opts {
    pub fn overrides(&self) -> Overrides {
        Overrides {
            m: self.m,
            hbar: self.hbar,
            sigma: self.sigma,
            omega: self.omega,
            z0: self.z0,
            beta: self.beta,
            t_i: self.t_i,
            t_e: self.t_e,
            t: self.t,
            b0: self.b0,
            dt: self.dt,
            grid: self.grid,
            oracle: self.oracle.then_some(true),
            strict_eq12: self.strict_eq12.then_some(true),
        }
    }
}

impl Cli {
    /// Merges defaults, the config file and the flags, then validates.
    pub fn run_config(&self) -> Result<RunConfig> {
        let file = match &self.opts.config {
            Some(path) => Overrides::from_file(path)?,
            None => Overrides::default(),
        };
        let settings = file.layered(self.opts.overrides());
        RunConfig::resolve(self.command.into(), &settings, self.opts.out.clone())
    }
}
