//! Command-line front end. [`run`] parses arguments, executes one
//! subcommand and returns the process exit code:
//! 0 success, 2 usage, 3 solver failure, 4 audit failure.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{a_posteriori, evaluate, sweep_row, write_sweep_csv, BoundReport, SweepInput};
use crate::config::{Mode, RunConfig};
use crate::error::WaveError;
use crate::formulation::PhysicalParams;
use crate::solver::io::{read_jsonl, write_comment_block, write_jsonl, write_summary_csv};
use crate::solver::{continue_branch, laminar_state, newton_solve, BranchPoint, Constraint, FreeParams};
use crate::spectral::{Grid, KernelTable};
use crate::verify::{
    audit_crest_trough, audit_kernel, audit_section_three, synthetic_batch, write_batch_csv, AuditReport,
    SyntheticConfig,
};

#[derive(Debug, Parser)]
#[command(name = "wavebound", version, about = "Periodic water waves with constant vorticity")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// key = value configuration file; flags override it.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Conformal depth d.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub depth: Option<f64>,
    /// Vorticity γ (negative is favorable).
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub gamma: Option<f64>,
    /// Gravitational acceleration g.
    #[arg(long, global = true)]
    pub gravity: Option<f64>,
    /// Mass flux m (negative).
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub flux: Option<f64>,
    /// Grid nodes for solving.
    #[arg(long, global = true)]
    pub grid: Option<usize>,
    /// Output directory.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Seed of the synthetic profile generator.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads.
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// ε of the quartic route.
    #[arg(long, global = true)]
    pub eps: Option<f64>,
    /// Bounds from parameters alone or from a solved branch.
    #[arg(long, global = true, value_enum)]
    pub mode: Option<ModeArg>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Apriori,
    Aposteriori,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RouteArg {
    Auto,
    Favorable,
    Adverse,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate the kernel β and β′.
    Kernel {
        #[arg(long)]
        from: Option<f64>,
        #[arg(long)]
        to: Option<f64>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Solve for the wave of a given amplitude on the primary branch.
    Solve {
        #[arg(long)]
        amplitude: Option<f64>,
    },
    /// Continue the primary branch from the laminar bifurcation.
    Branch,
    /// Evaluate amplitude bounds from parameters or a branch file.
    Bounds {
        /// Branch file for a-posteriori evaluation.
        #[arg(long)]
        branch: Option<PathBuf>,
        /// Slope cap N for a-priori evaluation.
        #[arg(long)]
        slope: Option<f64>,
        /// Convexity cap M for a-priori evaluation.
        #[arg(long)]
        convexity: Option<f64>,
        /// Require a route; a mismatch with the sign of γ is a usage error.
        #[arg(long, value_enum, default_value = "auto")]
        route: RouteArg,
    },
    /// Audit lemma inequalities and identities.
    Verify {
        /// Branch file whose points are audited.
        #[arg(long)]
        branch: Option<PathBuf>,
        /// Number of random admissible profiles.
        #[arg(long)]
        synthetic: Option<usize>,
    },
    /// Condition margins and bounds over a γ grid.
    Sweep {
        #[arg(long, allow_hyphen_values = true)]
        gamma_from: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        gamma_to: Option<f64>,
        #[arg(long)]
        count: Option<usize>,
        #[arg(long)]
        slope: Option<f64>,
        #[arg(long)]
        convexity: Option<f64>,
    },
}

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Solver(String),
    Audit(String),
}

impl Failure {
    pub fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Solver(_) => 3,
            Failure::Audit(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Solver(m) | Failure::Audit(m) => m,
        }
    }
}

impl From<WaveError> for Failure {
    fn from(e: WaveError) -> Self {
        let msg = e.to_string();
        match e {
            WaveError::BifurcationNotFound { .. } | WaveError::Divergence { .. } | WaveError::Degeneracy(_) => {
                Failure::Solver(msg)
            }
            _ => Failure::Usage(msg),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

/// Parse `args` (including the program name), run, and return the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(lines) => {
            for l in lines {
                println!("{l}");
            }
            0
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            f.code()
        }
    }
}

/// Resolve the configuration: defaults, then the file, then flags.
pub fn resolve(cli: &Cli) -> CliResult<RunConfig> {
    let mut cfg = match &cli.config {
        Some(p) => RunConfig::from_file(p)?,
        None => RunConfig::default(),
    };
    let p = &mut cfg.physics;
    if let Some(v) = cli.depth {
        p.depth = v;
    }
    if let Some(v) = cli.gamma {
        p.gamma = v;
    }
    if let Some(v) = cli.gravity {
        p.gravity = v;
    }
    if let Some(v) = cli.flux {
        p.flux = Some(v);
    }
    if let Some(v) = cli.grid {
        cfg.continuation.n_points = v;
    }
    if let Some(v) = &cli.out {
        cfg.out = v.clone();
    }
    if let Some(v) = cli.seed {
        cfg.seed = v;
    }
    if let Some(v) = cli.workers {
        cfg.workers = v;
    }
    if let Some(v) = cli.eps {
        cfg.bounds.eps = v;
    }
    if let Some(m) = cli.mode {
        cfg.bounds.mode = match m {
            ModeArg::Apriori => Mode::Apriori,
            ModeArg::Aposteriori => Mode::Aposteriori,
        };
    }
    match &cli.command {
        Command::Kernel { from, to, samples, tol } => {
            set(&mut cfg.kernel.from, *from);
            set(&mut cfg.kernel.to, *to);
            set(&mut cfg.kernel.samples, *samples);
            set(&mut cfg.kernel.tol, *tol);
        }
        Command::Solve { amplitude } => set(&mut cfg.amplitude, *amplitude),
        Command::Bounds { slope, convexity, .. } | Command::Sweep { slope, convexity, .. } => {
            set(&mut cfg.bounds.slope, *slope);
            set(&mut cfg.bounds.convexity, *convexity);
        }
        Command::Verify { synthetic, .. } => set(&mut cfg.verify.synthetic, *synthetic),
        Command::Branch => {}
    }
    if let Command::Sweep {
        gamma_from,
        gamma_to,
        count,
        ..
    } = &cli.command
    {
        set(&mut cfg.sweep.gamma_from, *gamma_from);
        set(&mut cfg.sweep.gamma_to, *gamma_to);
        set(&mut cfg.sweep.count, *count);
    }
    if cfg.workers == 0 {
        return Err(Failure::Usage("workers must be at least 1".into()));
    }
    Ok(cfg)
}

fn set<T>(slot: &mut T, v: Option<T>) {
    if let Some(v) = v {
        *slot = v;
    }
}

/// Run the parsed command and return the lines to print.
pub fn execute(cli: &Cli) -> CliResult<Vec<String>> {
    let cfg = resolve(cli)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Failure::Usage(e.to_string()))?;
    std::fs::create_dir_all(&cfg.out)?;
    pool.install(|| match &cli.command {
        Command::Kernel { .. } => cmd_kernel(&cfg),
        Command::Solve { .. } => cmd_solve(&cfg),
        Command::Branch => cmd_branch(&cfg),
        Command::Bounds { branch, route, .. } => cmd_bounds(&cfg, branch.as_deref(), *route),
        Command::Verify { branch, .. } => cmd_verify(&cfg, branch.as_deref()),
        Command::Sweep { .. } => cmd_sweep(&cfg),
    })
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    version: &'static str,
    config: &'a serde_json::Value,
    #[serde(flatten)]
    body: T,
}

fn write_json<T: Serialize>(path: &Path, cfg: &RunConfig, body: T) -> CliResult<()> {
    let echo = cfg.echo();
    let env = Envelope {
        version: crate::VERSION,
        config: &echo,
        body,
    };
    let mut w = BufWriter::new(File::create(path)?);
    serde_json::to_writer_pretty(&mut w, &env).map_err(WaveError::from)?;
    writeln!(w)?;
    Ok(())
}

fn create(path: &Path) -> CliResult<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path)?))
}

fn cmd_kernel(cfg: &RunConfig) -> CliResult<Vec<String>> {
    let k = &cfg.kernel;
    let table = KernelTable::build(cfg.physics.depth, k.from, k.to, k.samples, k.tol)?;
    let path = cfg.out.join("kernel.csv");
    let mut w = create(&path)?;
    write_comment_block(&mut w, &cfg.echo())?;
    table.write_csv(&mut w)?;
    w.flush()?;
    Ok(vec![format!(
        "wrote {} rows to {} (max tail bound {:e})",
        table.samples.len(),
        path.display(),
        table.tail_bound()
    )])
}

fn scan_log(cfg: &RunConfig, e: &WaveError) -> CliResult<()> {
    if let WaveError::BifurcationNotFound { scan, .. } = e {
        let mut w = create(&cfg.out.join("scan.csv"))?;
        write_comment_block(&mut w, &cfg.echo())?;
        writeln!(w, "m,tracked_singular_value")?;
        for (m, v) in scan {
            writeln!(w, "{},{}", crate::io::fmt17(*m), crate::io::fmt17(*v))?;
        }
        w.flush()?;
    }
    Ok(())
}

fn branch_or_log(cfg: &RunConfig) -> CliResult<crate::solver::Branch> {
    let p = &cfg.physics;
    continue_branch(p.gravity, p.depth, p.gamma, &cfg.continuation).map_err(|e| {
        if let Err(f) = scan_log(cfg, &e) {
            return f;
        }
        Failure::from(e)
    })
}

fn cmd_branch(cfg: &RunConfig) -> CliResult<Vec<String>> {
    let branch = branch_or_log(cfg)?;
    let echo = cfg.echo();
    let jsonl = cfg.out.join("branch.jsonl");
    let mut w = create(&jsonl)?;
    write_jsonl(
        &mut w,
        &echo,
        Some(&branch.bifurcation),
        &branch.points,
        Some(&branch.stop),
    )?;
    w.flush()?;
    let csv = cfg.out.join("branch_summary.csv");
    let mut w = create(&csv)?;
    write_summary_csv(&mut w, &echo, &branch.points)?;
    w.flush()?;
    Ok(vec![
        format!(
            "bifurcation at m = {:.12}, Q = {:.12}",
            branch.bifurcation.m, branch.bifurcation.q
        ),
        format!(
            "{} points, max amplitude {:.6}, stop: {} ({:e})",
            branch.points.len(),
            branch.max_amplitude(),
            branch.stop.kind.as_str(),
            branch.stop.evidence
        ),
        format!("wrote {} and {}", jsonl.display(), csv.display()),
    ])
}

#[derive(Serialize)]
struct SolveBody<'a> {
    target_amplitude: f64,
    point: &'a BranchPoint,
    bounds: Vec<BoundReport>,
}

fn cmd_solve(cfg: &RunConfig) -> CliResult<Vec<String>> {
    let target = cfg.amplitude;
    if !(target > 0.0) {
        return Err(Failure::Usage(format!(
            "target amplitude must be positive, got {target}"
        )));
    }
    let branch = branch_or_log(cfg)?;
    let below = branch
        .points
        .iter()
        .take_while(|p| p.amplitude < target)
        .last()
        .ok_or_else(|| Failure::Solver("branch has no points".into()))?;
    if branch.max_amplitude() < target {
        return Err(Failure::Solver(format!(
            "target amplitude {target} is beyond the branch reach {:.6} ({})",
            branch.max_amplitude(),
            branch.stop.kind.as_str()
        )));
    }
    let free = FreeParams::Both(Constraint::Amplitude(target));
    let point = newton_solve(below, &free, &cfg.continuation)?;
    let bounds = a_posteriori(&point, cfg.bounds.eps)?;
    let path = cfg.out.join("solve.json");
    write_json(
        &path,
        cfg,
        SolveBody {
            target_amplitude: target,
            point: &point,
            bounds,
        },
    )?;
    Ok(vec![
        format!(
            "A = {:.12}, m = {:.12}, Q = {:.12}, residual {:e}",
            point.amplitude,
            point.params.m,
            point.params.q,
            point.residual()
        ),
        format!("wrote {}", path.display()),
    ])
}

/// Parameters for a-priori evaluation: `m` from the flux, `Q` given or
/// laminar.
fn apriori_params(cfg: &RunConfig, gamma: f64) -> CliResult<PhysicalParams> {
    let p = &cfg.physics;
    let m = p
        .flux
        .ok_or_else(|| Failure::Usage("a-priori evaluation needs --flux or physics.flux".into()))?;
    Ok(match p.q {
        Some(q) => PhysicalParams::new(p.gravity, p.depth, gamma, m, q)?,
        None => laminar_state(p.gravity, p.depth, gamma, m)?,
    })
}

fn check_route(route: RouteArg, gamma: f64) -> CliResult<()> {
    match route {
        RouteArg::Adverse if gamma <= 0.0 => Err(Failure::Usage(format!(
            "adverse route requested with gamma = {gamma} <= 0"
        ))),
        RouteArg::Favorable if gamma > 0.0 => Err(Failure::Usage(format!(
            "favorable route requested with gamma = {gamma} > 0"
        ))),
        _ => Ok(()),
    }
}

#[derive(Serialize)]
struct PointBounds {
    index: usize,
    arclength_s: f64,
    amplitude: f64,
    reports: Vec<BoundReport>,
    /// `(bound − A)/bound` per applicable report, in report order.
    margins: Vec<Option<f64>>,
}

fn cmd_bounds(cfg: &RunConfig, branch: Option<&Path>, route: RouteArg) -> CliResult<Vec<String>> {
    let path = cfg.out.join("bounds.json");
    let eps = cfg.bounds.eps;
    match cfg.bounds.mode {
        Mode::Apriori => {
            let params = apriori_params(cfg, cfg.physics.gamma)?;
            check_route(route, params.gamma)?;
            let reports = evaluate(&params, 0.0, cfg.bounds.slope, cfg.bounds.convexity, eps)?;
            let mut lines: Vec<String> = reports.iter().map(describe).collect();
            write_json(
                &path,
                cfg,
                serde_json::json!({ "mode": "apriori", "params": params, "reports": reports }),
            )?;
            lines.push(format!("wrote {}", path.display()));
            Ok(lines)
        }
        Mode::Aposteriori => {
            let file = branch.ok_or_else(|| Failure::Usage("a-posteriori mode needs --branch".into()))?;
            let data = read_jsonl(BufReader::new(File::open(file)?))?;
            let mut rows = Vec::with_capacity(data.points.len());
            let mut violations = 0;
            for (index, p) in data.points.iter().enumerate() {
                check_route(route, p.params.gamma)?;
                let reports = a_posteriori(p, eps)?;
                let margins: Vec<Option<f64>> = reports
                    .iter()
                    .map(|r| r.bound_value.map(|b| (b - p.amplitude) / b))
                    .collect();
                violations += margins.iter().flatten().filter(|m| **m <= 0.0).count();
                rows.push(PointBounds {
                    index,
                    arclength_s: p.arclength_s,
                    amplitude: p.amplitude,
                    reports,
                    margins,
                });
            }
            let n = rows.len();
            write_json(&path, cfg, serde_json::json!({ "mode": "aposteriori", "points": rows }))?;
            Ok(vec![
                format!("{n} points, {violations} applicable bounds not exceeding the amplitude"),
                format!("wrote {}", path.display()),
            ])
        }
    }
}

fn describe(r: &BoundReport) -> String {
    let route = r.route.as_str();
    match r.bound_value {
        Some(b) => format!("{route}: A < {b:.12}"),
        None => {
            let failed: Vec<&str> = r
                .conditions
                .iter()
                .filter(|c| !c.satisfied)
                .map(|c| c.name.as_str())
                .collect();
            format!("{route}: not applicable ({})", failed.join(", "))
        }
    }
}

fn cmd_verify(cfg: &RunConfig, branch: Option<&Path>) -> CliResult<Vec<String>> {
    let mut reports = vec![audit_kernel(cfg.physics.depth, cfg.verify.kernel_samples)?];
    if let Some(file) = branch {
        let file = File::open(file).map_err(|e| Failure::Audit(format!("{}: {e}", file.display())))?;
        let data = read_jsonl(BufReader::new(file)).map_err(|e| Failure::Audit(e.to_string()))?;
        if data.points.is_empty() {
            return Err(Failure::Audit("branch file has no points".into()));
        }
        let per: Vec<crate::Result<Vec<AuditReport>>> = data
            .points
            .par_iter()
            .enumerate()
            .map(|(i, p)| {
                let mut a = audit_section_three(&p.params, p)?;
                a.subject = format!("point-{i}-section_three");
                let mut b = audit_crest_trough(&p.params, p)?;
                b.subject = format!("point-{i}-crest_trough");
                Ok(vec![a, b])
            })
            .collect();
        for r in per {
            reports.extend(r.map_err(|e| Failure::Audit(e.to_string()))?);
        }
    }
    if cfg.verify.synthetic > 0 {
        let p = &cfg.physics;
        let params = laminar_state(p.gravity, p.depth, p.gamma, p.flux.unwrap_or(-1.0))?;
        let syn = SyntheticConfig {
            count: cfg.verify.synthetic,
            seed: cfg.seed,
            depths: vec![0.25, 1.0, 4.0],
            grid: Grid::new(cfg.verify.synthetic_grid)?,
            params,
        };
        reports.extend(synthetic_batch(&syn)?);
    }
    let echo = cfg.echo();
    let json = cfg.out.join("verify.json");
    write_json(&json, cfg, serde_json::json!({ "reports": reports }))?;
    let csv = cfg.out.join("verify.csv");
    let mut w = create(&csv)?;
    write_batch_csv(&mut w, &echo, &reports)?;
    w.flush()?;

    let failed: Vec<String> = reports
        .iter()
        .flat_map(|r| {
            r.failures()
                .map(move |c| format!("{}: {} ({})", r.subject, c.name, c.status.as_str()))
        })
        .collect();
    let checks: usize = reports.iter().map(|r| r.checks.len()).sum();
    if !failed.is_empty() {
        return Err(Failure::Audit(format!(
            "{} of {checks} checks failed:\n  {}",
            failed.len(),
            failed.join("\n  ")
        )));
    }
    Ok(vec![
        format!("{} reports, {checks} checks, all passed", reports.len()),
        format!("wrote {} and {}", json.display(), csv.display()),
    ])
}

fn cmd_sweep(cfg: &RunConfig) -> CliResult<Vec<String>> {
    let s = &cfg.sweep;
    if s.count == 0 {
        return Err(Failure::Usage("sweep count must be positive".into()));
    }
    let gammas: Vec<f64> = (0..s.count)
        .map(|i| {
            if s.count == 1 {
                s.gamma_from
            } else {
                s.gamma_from + (s.gamma_to - s.gamma_from) * i as f64 / (s.count - 1) as f64
            }
        })
        .collect();
    let inputs = gammas
        .iter()
        .map(|&gamma| {
            Ok(SweepInput {
                params: apriori_params(cfg, gamma)?,
                slope_n: cfg.bounds.slope,
                convexity_m: cfg.bounds.convexity,
                f2_avg: 0.0,
                eps: cfg.bounds.eps,
            })
        })
        .collect::<CliResult<Vec<_>>>()?;
    let rows = inputs.par_iter().map(sweep_row).collect::<crate::Result<Vec<_>>>()?;
    let path = cfg.out.join("sweep.csv");
    let mut w = create(&path)?;
    write_sweep_csv(&mut w, &cfg.echo(), &rows)?;
    w.flush()?;
    Ok(vec![format!("wrote {} rows to {}", rows.len(), path.display())])
}
