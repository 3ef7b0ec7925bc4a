//! Scenario execution: closed-form densities, optional grid propagation,
//! fringe analysis and output files.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use spin_eraser::analytic::{density_eraser, density_no_eraser, whichway_evolve};
use spin_eraser::fringes::analyze;
use spin_eraser::oracle::{compare_l2, run_schedule, ScheduleRun};
use spin_eraser::{DensityField, EraserOptions, FringeReport, GridSpec, Interval, PhysParams, Scenario};

use crate::config::{RunConfig, ScenarioKind};
use crate::error::{CliError, Result};
use crate::output::{pgm_bytes, write_file, DensityTable, GridSummary, OracleSummary, ParamsSummary, SnapshotSummary, Summary};

/// Screen density of one snapshot with everything needed to report it.
#[derive(Debug, Clone)]
pub struct Snapshot {
    pub name: &'static str,
    pub params: PhysParams,
    pub scenario: Scenario,
    pub density: DensityField,
    /// No-eraser density on the same grid, for the complementarity checks.
    pub reference: Option<DensityField>,
    pub window: Interval,
    pub report: FringeReport,
    pub oracle: Option<OracleSummary>,
}

/// Files written by [`run_scenario`].
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub snapshots: Vec<Snapshot>,
    pub summary: Summary,
    pub files: Vec<PathBuf>,
}

/// Analysis grid for a snapshot when none is configured: 512 x 512 nodes,
/// eight widths past the outermost packet.
pub fn auto_grid(p: &PhysParams, scenario: Scenario) -> Result<GridSpec> {
    let center = match scenario {
        Scenario::NoEraser => 0.0,
        Scenario::Eraser => p.lobe_center(p.beta, true),
        Scenario::WhichWay => p.lobe_center(p.b0, true),
    };
    Ok(GridSpec::covering(p, center, 8.0, 512, 512)?)
}

fn analytic_density(p: &PhysParams, scenario: Scenario, g: &GridSpec, opts: EraserOptions) -> Result<DensityField> {
    Ok(match scenario {
        Scenario::NoEraser => density_no_eraser(p, g)?,
        Scenario::Eraser => density_eraser(p, g, opts)?,
        Scenario::WhichWay => whichway_evolve(p, g)?,
    })
}

fn oracle_summary(run: &ScheduleRun<f64>, exact: &DensityField, dt: f64) -> Result<OracleSummary> {
    Ok(OracleSummary {
        dt,
        residual: compare_l2(exact, &run.state.density())?,
        norm_drift: run.norm_drift,
        renormalization: run.renormalization,
        magnet_steps: run.magnet_steps,
    })
}

/// Computes one snapshot; with `oracle` set the grid propagation runs on a
/// second thread next to the closed-form evaluation.
pub fn snapshot(
    name: &'static str,
    p: &PhysParams,
    scenario: Scenario,
    grid: Option<GridSpec>,
    cfg: &RunConfig,
) -> Result<Snapshot> {
    let g = match grid {
        Some(g) => g,
        None => auto_grid(p, scenario)?,
    };
    let opts = EraserOptions { strict_eq12: cfg.strict_eq12 };
    let (analytic, oracle_run) = std::thread::scope(|s| {
        let worker = cfg.oracle.then(|| s.spawn(|| run_schedule(p, scenario, &g, cfg.dt)));
        let analytic = analytic_density(p, scenario, &g, opts);
        (analytic, worker.map(|w| w.join().expect("oracle thread panicked")))
    });
    let density = analytic?;
    let oracle = match oracle_run {
        Some(run) => Some(oracle_summary(&run?, &density, cfg.dt)?),
        None => None,
    };
    let reference = match scenario {
        Scenario::NoEraser => None,
        _ => Some(density_no_eraser(p, &g)?),
    };
    let window = Interval::around(0.0, p.z_spread());
    let report = analyze(&density, reference.as_ref(), window)?;
    Ok(Snapshot { name, params: *p, scenario, density, reference, window, report, oracle })
}

/// Computes every snapshot of the configured scenario without touching the
/// file system.
pub fn compute(cfg: &RunConfig) -> Result<Vec<Snapshot>> {
    let p = &cfg.params;
    Ok(match cfg.scenario {
        ScenarioKind::NoEraser => vec![snapshot("screen", p, Scenario::NoEraser, cfg.grid, cfg)?],
        ScenarioKind::Eraser => vec![snapshot("screen", p, Scenario::Eraser, cfg.grid, cfg)?],
        ScenarioKind::WhichWay => vec![snapshot("screen", p, Scenario::WhichWay, cfg.grid, cfg)?],
        ScenarioKind::Delayed => {
            // The intermediate plane sits at the magnet entrance; nothing
            // has acted on the spin yet.
            let early = p.at_time(p.t_i);
            vec![
                snapshot("intermediate", &early, Scenario::NoEraser, cfg.grid, cfg)?,
                snapshot("final", p, Scenario::Eraser, cfg.grid, cfg)?,
            ]
        }
    })
}

fn snapshot_summary(s: &Snapshot, csv: &Path, pgm: &Path) -> SnapshotSummary {
    let r = &s.report;
    let file = |p: &Path| p.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    SnapshotSummary {
        time: s.params.t,
        csv: file(csv),
        pgm: file(pgm),
        grid: GridSummary::from(&s.density.grid),
        lobe_centers: r.lobe_centers.clone(),
        visibility_window: [s.window.lo, s.window.hi],
        visibility_per_lobe: r.visibility_per_lobe.clone(),
        single_lobe: r.single_lobe,
        fringe_period: r.fringe_period,
        complementarity: r.complementarity,
        complementarity_deviation: r.complementarity_deviation,
        antiphase_offset_cells: r.antiphase.map(|a| a.max_offset_cells),
        distinguishability: r.distinguishability,
        oracle: s.oracle.clone(),
    }
}

/// Runs the scenario and writes `<name>.csv`, `<name>.pgm` per snapshot and
/// `summary.txt` into the output directory.
pub fn run_scenario(cfg: &RunConfig) -> Result<RunOutcome> {
    let snapshots = compute(cfg)?;
    std::fs::create_dir_all(&cfg.out).map_err(|e| CliError::Io { path: cfg.out.clone(), source: e })?;
    let mut files = Vec::new();
    let mut entries = BTreeMap::new();
    for s in &snapshots {
        let csv = cfg.out.join(format!("{}.csv", s.name));
        let pgm = cfg.out.join(format!("{}.pgm", s.name));
        write_file(&csv, DensityTable::from(&s.density).to_csv().as_bytes())?;
        write_file(&pgm, &pgm_bytes(&s.density)?)?;
        entries.insert(s.name.to_owned(), snapshot_summary(s, &csv, &pgm));
        files.push(csv);
        files.push(pgm);
    }
    let summary = Summary {
        scenario: cfg.scenario.name().to_owned(),
        image_normalization: "per-file maximum".to_owned(),
        strict_eq12: cfg.strict_eq12,
        params: ParamsSummary::new(&cfg.params, cfg.scenario.magnet_active()),
        snapshots: entries,
    };
    let path = cfg.out.join("summary.txt");
    write_file(&path, summary.to_toml()?.as_bytes())?;
    files.push(path);
    Ok(RunOutcome { snapshots, summary, files })
}
