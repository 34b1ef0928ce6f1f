//! Command-line front end for the `ffmm` binary.
//!
//! Exit codes: 0 success, 1 infeasible or unbounded program (or a failed
//! reproduction check), 2 unreadable or invalid input, 3 internal error.

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::ccflp::{
    best_open_set_by_enumeration, build_crisp_model, build_fuzzy_model, check_instance, extract_network,
    random_instance, CcflpError, CcflpInstance, Variant,
};
use crate::fuzzy::{Component, OrderRelation, Tfn};
use crate::milp::{solve_milp, BranchAndBound, MilpError, Status};
use crate::pareto::{
    audit_theta, epsilon_constraint_enumerate, lexicographic, parse_order, weighted_sum, ParetoError, ParetoPoint,
    ParetoSet,
};
use crate::reformulate::TriObjectiveMilp;

/// θ* triples reported for the four fuzzy solutions of the bundled example;
/// the first two belong to different decisions with the same θ*.
pub const REPORTED_TRIPLES: [[f64; 3]; 4] = [
    [1399.70, 2629.27, 3463.01],
    [1399.70, 2629.27, 3463.01],
    [804.08, 2734.90, 3580.96],
    [1403.01, 2575.95, 3542.52],
];

/// Open facilities (1-based) of the reported crisp solution of the bundled example.
pub const REPORTED_OPEN: [usize; 3] = [3, 5, 6];

/// Cross-flows `(customer, facility, amount)` of the reported crisp solution.
pub const REPORTED_FLOWS: [(usize, usize, f64); 6] = [
    (1, 6, 23.0),
    (2, 3, 28.18),
    (2, 6, 4.81),
    (4, 3, 0.06),
    (4, 5, 14.15),
    (4, 6, 5.68),
];

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Infeasible(String),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Infeasible(_) => 1,
            CliError::Input(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

impl From<MilpError> for CliError {
    fn from(e: MilpError) -> Self {
        CliError::Internal(e.to_string())
    }
}

impl From<CcflpError> for CliError {
    fn from(e: CcflpError) -> Self {
        match e {
            CcflpError::Reformulate(r) => CliError::Internal(r.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<ParetoError> for CliError {
    fn from(e: ParetoError) -> Self {
        match e {
            ParetoError::Infeasible | ParetoError::Unbounded => CliError::Infeasible(e.to_string()),
            ParetoError::NonpositiveWeight { .. } | ParetoError::InvalidOrder | ParetoError::InvalidGrid => {
                CliError::Input(e.to_string())
            }
            ParetoError::Solver(s) => s.into(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Internal(format!("write failed: {e}"))
    }
}

#[derive(Debug, Parser)]
#[command(name = "ffmm", version, about = "Fuzzy minimax facility location")]
pub struct Cli {
    /// More logging (-v info, -vv debug, -vvv trace).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    pub verbose: u8,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Weighted,
    Lex,
    Eps,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check an instance file and report its dimensions and problems.
    Validate { instance: PathBuf },
    /// Solve the crisp model on one component of the data.
    SolveCrisp {
        instance: PathBuf,
        #[arg(long, default_value = "mid")]
        selector: Component,
        /// Write the network as DOT to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the three-objective crisp program in LP format.
    Reformulate {
        instance: PathBuf,
        #[arg(long, default_value = "derived")]
        variant: Variant,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute efficient θ triples of the fuzzy model.
    Pareto {
        instance: PathBuf,
        #[arg(long, default_value = "derived")]
        variant: Variant,
        #[arg(long, value_enum, default_value = "eps")]
        method: Method,
        /// Weights for `weighted`, as `a,b,c`.
        #[arg(long, default_value = "1,1,1", value_parser = parse_weights)]
        weights: [f64; 3],
        /// Objective order for `lex`, as a permutation of `lo,mid,hi`.
        #[arg(long, default_value = "lo,mid,hi")]
        order: String,
        /// Grid for `eps`, as `n2,n3`.
        #[arg(long, default_value = "8,8", value_parser = parse_grid)]
        grid: (usize, usize),
        /// Feasibility tolerance for re-checking returned points.
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        /// Directory for `pareto.csv` and one DOT file per point.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reproduce the worked example and report pass/fail per check.
    CheckPaper {
        /// Instance file; defaults to the bundled example.
        #[arg(long)]
        instance: Option<PathBuf>,
        /// Skip the 8x8 frontier sweep.
        #[arg(long)]
        quick: bool,
        #[arg(long, default_value_t = 1e-2)]
        tol: f64,
    },
    /// Write a seeded random instance.
    GenRandom {
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 4)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Degenerate (crisp) data only.
        #[arg(long)]
        crisp: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_list<const N: usize, T: std::str::FromStr>(text: &str) -> Result<[T; N], String> {
    let parts: Vec<T> = text
        .split(',')
        .map(|p| p.trim().parse::<T>().map_err(|_| format!("cannot parse `{p}`")))
        .collect::<Result<_, _>>()?;
    parts.try_into().map_err(|_| format!("expected {N} comma-separated values"))
}

fn parse_weights(text: &str) -> Result<[f64; 3], String> {
    parse_list::<3, f64>(text)
}

fn parse_grid(text: &str) -> Result<(usize, usize), String> {
    let [a, b] = parse_list::<2, usize>(text)?;
    Ok((a, b))
}

pub fn bundled_instance_path() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join("example1.json")
}

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

fn load_instance(path: &Path) -> Result<CcflpInstance, CliError> {
    CcflpInstance::from_json(&read_file(path)?)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Internal(format!("cannot write {}: {e}", path.display())))
}

fn tfn2(t: &Tfn) -> String {
    format!("{t:.2}")
}

fn nodes(list: &[usize]) -> String {
    list.iter().map(|j| (j + 1).to_string()).collect::<Vec<_>>().join(" ")
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Validate { instance } => cmd_validate(&instance, out),
        Command::SolveCrisp { instance, selector, out: dot } => cmd_solve_crisp(&instance, selector, dot.as_deref(), out),
        Command::Reformulate { instance, variant, out: file } => cmd_reformulate(&instance, variant, file.as_deref(), out),
        Command::Pareto {
            instance,
            variant,
            method,
            weights,
            order,
            grid,
            tol,
            out: dir,
        } => {
            let config = ParetoConfig {
                variant,
                method,
                weights,
                order,
                grid,
                tol,
            };
            cmd_pareto(&instance, &config, dir.as_deref(), out)
        }
        Command::CheckPaper { instance, quick, tol } => {
            let path = instance.unwrap_or_else(bundled_instance_path);
            cmd_check_paper(&path, quick, tol, out)
        }
        Command::GenRandom { n, m, seed, crisp, out: file } => {
            if n == 0 || m == 0 {
                return Err(CliError::Input("n and m must be positive".into()));
            }
            let text = random_instance(n, m, seed, crisp).to_json() + "\n";
            match file {
                Some(p) => write_file(&p, &text),
                None => Ok(out.write_all(text.as_bytes())?),
            }
        }
    }
}

pub fn cmd_validate(path: &Path, out: &mut dyn Write) -> Result<(), CliError> {
    let text = read_file(path)?;
    let report = check_instance(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    writeln!(out, "n = {}, m = {}", report.n, report.m)?;
    if report.is_valid() {
        writeln!(out, "valid")?;
        Ok(())
    } else {
        for issue in &report.issues {
            writeln!(out, "  {issue}")?;
        }
        Err(CliError::Input(format!("{} problem(s) in {}", report.issues.len(), path.display())))
    }
}

pub fn cmd_solve_crisp(
    path: &Path,
    selector: Component,
    dot: Option<&Path>,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let instance = load_instance(path)?;
    let model = build_crisp_model(&instance, selector);
    let sol = solve_milp(&model.lp, &model.binaries)?;
    writeln!(out, "selector: {selector}")?;
    match sol.status {
        Status::Optimal => {}
        Status::Infeasible => return Err(CliError::Infeasible("crisp model is infeasible".into())),
        Status::Unbounded => return Err(CliError::Infeasible("crisp model is unbounded".into())),
    }
    let net = model.network(&sol.point);
    writeln!(out, "objective: {:.2}", sol.objective)?;
    writeln!(out, "open facilities: {}", nodes(&net.open))?;
    writeln!(out, "flows:")?;
    for f in &net.flows {
        writeln!(out, "  {} -> {}: {:.2}", f.customer + 1, f.facility + 1, f.amount.mid())?;
    }
    if let Some(p) = dot {
        write_file(p, &net.to_dot(&format!("crisp solution ({selector}), objective {:.2}", sol.objective)))?;
    }
    Ok(())
}

pub fn cmd_reformulate(path: &Path, variant: Variant, file: Option<&Path>, out: &mut dyn Write) -> Result<(), CliError> {
    let instance = load_instance(path)?;
    let milp = build_fuzzy_model(&instance, variant).reformulate()?;
    let text = milp
        .lp_file()
        .write(Some(&format!("three-objective reformulation, {variant} capacity rows")));
    match file {
        Some(p) => write_file(p, &text),
        None => Ok(out.write_all(text.as_bytes())?),
    }
}

pub struct ParetoConfig {
    pub variant: Variant,
    pub method: Method,
    pub weights: [f64; 3],
    pub order: String,
    pub grid: (usize, usize),
    pub tol: f64,
}

fn run_method(milp: &TriObjectiveMilp, config: &ParetoConfig) -> Result<ParetoSet, CliError> {
    let backend = BranchAndBound::default();
    let single = |p: ParetoPoint| ParetoSet { points: vec![p] };
    Ok(match config.method {
        Method::Weighted => single(weighted_sum(milp, config.weights, &backend)?),
        Method::Lex => single(lexicographic(milp, parse_order(&config.order)?, &backend)?),
        Method::Eps => epsilon_constraint_enumerate(milp, config.grid, &backend)?,
    })
}

pub fn cmd_pareto(path: &Path, config: &ParetoConfig, dir: Option<&Path>, out: &mut dyn Write) -> Result<(), CliError> {
    let instance = load_instance(path)?;
    let fuzzy = build_fuzzy_model(&instance, config.variant);
    let milp = fuzzy.reformulate()?;
    let set = run_method(&milp, config)?;
    writeln!(out, "variant: {}", config.variant)?;
    writeln!(out, "points: {}", set.len())?;
    let mut networks = Vec::new();
    for p in &set.points {
        milp.check_point(&p.decision, config.tol)
            .map_err(|e| CliError::Internal(format!("{}: {e}", p.method)))?;
        let net = extract_network(&fuzzy, &milp, &p.decision, config.tol)?;
        writeln!(out, "{}: theta = {}  open: {}", p.method, tfn2(&net.theta), nodes(&net.open))?;
        networks.push(net);
    }
    if let Some(dir) = dir {
        fs::create_dir_all(dir).map_err(|e| CliError::Internal(format!("cannot create {}: {e}", dir.display())))?;
        let names: Vec<String> = milp.variables().iter().map(|v| v.name.clone()).collect();
        let csv = set.to_csv(&names).map_err(|e| CliError::Internal(e.to_string()))?;
        write_file(&dir.join("pareto.csv"), &csv)?;
        for (k, (p, net)) in set.points.iter().zip(&networks).enumerate() {
            let title = format!("{} theta = {}", p.method, tfn2(&net.theta));
            write_file(&dir.join(format!("point_{}.dot", k + 1)), &net.to_dot(&title))?;
        }
    }
    Ok(())
}

/// One line of the reproduction report.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckLine {
    pub name: String,
    /// `None` for informational lines.
    pub passed: Option<bool>,
    pub detail: String,
}

impl CheckLine {
    fn new(name: &str, passed: bool, detail: String) -> Self {
        CheckLine {
            name: name.into(),
            passed: Some(passed),
            detail,
        }
    }

    fn info(name: &str, detail: String) -> Self {
        CheckLine {
            name: name.into(),
            passed: None,
            detail,
        }
    }

    pub fn render(&self) -> String {
        let tag = match self.passed {
            Some(true) => "PASS",
            Some(false) => "FAIL",
            None => "INFO",
        };
        format!("[{tag}] {}: {}", self.name, self.detail)
    }
}

/// Runs the worked-example checks against `instance`.
pub fn example_checks(instance: &CcflpInstance, quick: bool, window: f64) -> Result<Vec<CheckLine>, CliError> {
    let mut lines = Vec::new();
    let backend = BranchAndBound::default();

    let tfns: Vec<Tfn> = REPORTED_TRIPLES
        .iter()
        .map(|&[a, b, c]| Tfn::new(a, b, c).expect("sorted"))
        .collect();
    let distinct = [tfns[0], tfns[2], tfns[3]];
    let mut pairwise = true;
    for a in 0..3 {
        for b in 0..3 {
            if a != b {
                pairwise &= distinct[a].compare(&distinct[b]) == OrderRelation::Incomparable;
            }
        }
    }
    lines.push(CheckLine::new(
        "reported triples pairwise incomparable",
        pairwise,
        distinct.iter().map(tfn2).collect::<Vec<_>>().join(", "),
    ));
    let same = tfns[0].compare(&tfns[1]) == OrderRelation::Equal;
    lines.push(CheckLine::new("reported triples 1 and 2 equal", same, tfn2(&tfns[0])));

    let t = Instant::now();
    let crisp = build_crisp_model(instance, Component::Mid);
    let sol = solve_milp(&crisp.lp, &crisp.binaries)?;
    if sol.is_optimal() {
        let net = crisp.network(&sol.point);
        let oracle = best_open_set_by_enumeration(instance, Component::Mid)?;
        let (obj_ok, detail) = match &oracle {
            Some((z, set)) => (
                (z - sol.objective).abs() <= 1e-6,
                format!("branch-and-bound {:.6}, subset enumeration {:.6} (open {})", sol.objective, z, nodes(set)),
            ),
            None => (false, "subset enumeration found no feasible subset".into()),
        };
        lines.push(CheckLine::new("crisp objective matches enumeration", obj_ok, detail));
        let open: Vec<usize> = net.open.iter().map(|j| j + 1).collect();
        lines.push(CheckLine::new(
            "crisp open set is {3, 5, 6}",
            open == REPORTED_OPEN,
            format!("opened {{{}}}, objective {:.2}", nodes(&net.open).replace(' ', ", "), sol.objective),
        ));
        let mut flow_detail = Vec::new();
        let mut flows_ok = true;
        for (i, j, v) in REPORTED_FLOWS {
            let got = net.flow(i - 1, j - 1).map_or(0.0, |f| f.mid());
            flows_ok &= (got - v).abs() <= window;
            flow_detail.push(format!("{i}->{j} {got:.2}/{v:.2}"));
        }
        lines.push(CheckLine::info(
            "crisp cross-flows vs drawing",
            format!("{} ({})", if flows_ok { "match" } else { "differ" }, flow_detail.join(", ")),
        ));
        lines.push(CheckLine::info("crisp runtime", format!("{:.2?}", t.elapsed())));
    } else {
        lines.push(CheckLine::new("crisp model solves", false, format!("{:?}", sol.status)));
    }

    let variants = [Variant::Derived, Variant::Literal];
    let milps = variants
        .iter()
        .map(|&v| build_fuzzy_model(instance, v).reformulate())
        .collect::<Result<Vec<_>, _>>()?;
    for (k, target) in [REPORTED_TRIPLES[0], REPORTED_TRIPLES[2], REPORTED_TRIPLES[3]].into_iter().enumerate() {
        let mut admitted = Vec::new();
        let mut notes = Vec::new();
        for (v, milp) in variants.iter().zip(&milps) {
            let audit = audit_theta(milp, target, window, &backend)?;
            if audit.feasible {
                admitted.push(v.name());
            }
            notes.push(format!("{v}: min excess {:.4}", audit.min_excess));
        }
        let mut detail = String::new();
        write!(
            detail,
            "theta {} admitted by [{}]; {}",
            tfn2(&Tfn::new(target[0], target[1], target[2]).expect("sorted")),
            admitted.join(", "),
            notes.join(", ")
        )
        .unwrap();
        lines.push(CheckLine::new(&format!("reported triple {} feasible", k + 1), !admitted.is_empty(), detail));
    }

    if !quick {
        let t = Instant::now();
        let set = epsilon_constraint_enumerate(&milps[0], (8, 8), &backend)?;
        let mut sound = set.len() >= 3;
        for p in &set.points {
            sound &= milps[0].check_point(&p.decision, 1e-6).is_ok();
            sound &= milps[0].lift(&p.decision, 1e-6).is_ok();
        }
        lines.push(CheckLine::new(
            "derived 8x8 frontier has >= 3 feasible nondominated points",
            sound,
            format!(
                "{} points in {:.1?}: {}",
                set.len(),
                t.elapsed(),
                set.points
                    .iter()
                    .map(|p| format!("({:.2}, {:.2}, {:.2})", p.theta[0], p.theta[1], p.theta[2]))
                    .collect::<Vec<_>>()
                    .join(", ")
            ),
        ));
    }
    Ok(lines)
}

pub fn cmd_check_paper(path: &Path, quick: bool, window: f64, out: &mut dyn Write) -> Result<(), CliError> {
    if !path.exists() {
        return Err(CliError::Input(format!("instance file {} not found", path.display())));
    }
    let instance = load_instance(path)?;
    writeln!(out, "instance: {} (n = {}, m = {})", path.display(), instance.n, instance.m)?;
    let lines = example_checks(&instance, quick, window)?;
    for line in &lines {
        writeln!(out, "{}", line.render())?;
    }
    let failed = lines.iter().filter(|l| l.passed == Some(false)).count();
    if failed > 0 {
        return Err(CliError::Infeasible(format!("{failed} check(s) failed")));
    }
    Ok(())
}

fn init_logging(verbose: u8) {
    let level = match verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        2 => log::LevelFilter::Debug,
        _ => log::LevelFilter::Trace,
    };
    let _ = env_logger::Builder::new().filter_level(level).try_init();
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    init_logging(cli.verbose);
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match run(cli, &mut lock) {
        Ok(()) => 0,
        Err(e) => {
            let _ = lock.flush();
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
