use std::fmt::Write as _;
use std::path::Path;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand};
use deficitlab::format::sig12;
use deficitlab::report::DEFAULT_SEED;
use deficitlab::{run_reproduce, ReproduceSettings, StateFile, StateFileError};
use deficitlab_core::states::{
    entanglement_report, mixedness, von_neumann_entropy, CATALOG_HELP,
};
use deficitlab_core::{
    catalog_members, catalog_state, deficit_curve, four_state_povm, local_unitary_invariance_check,
    one_way_deficit_projective, ordering_scan, povm_deficit, CatalogName, DeficitResult,
    DensityOperator, Error, Mixedness, OptimizerSettings,
};
use serde::Serialize;
use thiserror::Error;

const EXIT_USAGE: u8 = 2;
const EXIT_VALIDATION: u8 = 3;
const EXIT_NUMERIC: u8 = 4;

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Numeric(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Validation(_) => EXIT_VALIDATION,
            CliError::Numeric(_) => EXIT_NUMERIC,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Usage(_) => CliError::Usage(e.to_string()),
            e if e.is_numeric() => CliError::Numeric(e.to_string()),
            e => CliError::Validation(e.to_string()),
        }
    }
}

impl From<StateFileError> for CliError {
    fn from(e: StateFileError) -> Self {
        match e {
            StateFileError::State(inner) => inner.into(),
            other => CliError::Validation(other.to_string()),
        }
    }
}

/// `TxP` grid, e.g. `64x128`.
#[derive(Debug, Clone, Copy)]
struct Grid(usize, usize);

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (t, p) = s
            .split_once(['x', 'X'])
            .ok_or_else(|| format!("grid `{s}` is not of the form TxP"))?;
        let parse = |v: &str| {
            v.trim()
                .parse::<usize>()
                .ok()
                .filter(|&n| n > 0)
                .ok_or_else(|| format!("grid component `{v}` is not a positive integer"))
        };
        Ok(Grid(parse(t)?, parse(p)?))
    }
}

fn positive_real(s: &str) -> Result<f64, String> {
    s.parse::<f64>()
        .ok()
        .filter(|x| x.is_finite() && *x > 0.0)
        .ok_or_else(|| format!("`{s}` is not a positive real"))
}

#[derive(Debug, clap::Args)]
struct OptimizerArgs {
    /// Grid over (theta, phi) before refinement.
    #[arg(long, default_value = "64x128")]
    grid: Grid,
    /// Refinement tolerance on the post-measurement entropy (bits).
    #[arg(long, default_value_t = 1e-10, value_parser = positive_real)]
    tol: f64,
}

impl OptimizerArgs {
    fn settings(&self) -> Result<OptimizerSettings, CliError> {
        let s = OptimizerSettings {
            n_theta: self.grid.0,
            n_phi: self.grid.1,
            tolerance: self.tol,
            ..OptimizerSettings::default()
        };
        s.validate()?;
        Ok(s)
    }
}

#[derive(Debug, Parser)]
#[command(name = "deficitlab", version, about = "One-way work deficit workbench (all quantities in bits)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List or print catalog states.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Optimized one-way deficit over Alice's projective bases.
    Deficit {
        /// State file path or `catalog:<name>`.
        state: String,
        #[command(flatten)]
        opt: OptimizerArgs,
        #[arg(long)]
        json: bool,
    },
    /// CSV sweep of the post-measurement entropy over theta at fixed phi.
    ScanBasis {
        state: String,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        phi: f64,
        #[arg(long, default_value_t = 129)]
        steps: usize,
    },
    /// Deficit of a fixed POVM on Alice's side.
    Povm {
        state: String,
        /// Use the four-outcome POVM on |0>, |1>, |+>, |->.
        #[arg(long)]
        four_state: bool,
        #[arg(long)]
        json: bool,
    },
    /// CSV comparison of entanglement, deficit and mixedness between two families.
    Ordering {
        /// States of family A (repeatable or comma separated).
        #[arg(long = "family-a", required = true, value_delimiter = ',')]
        family_a: Vec<String>,
        #[arg(long = "family-b", required = true, value_delimiter = ',')]
        family_b: Vec<String>,
        /// von-neumann or linear.
        #[arg(long, default_value = "von-neumann")]
        mixedness: String,
        #[command(flatten)]
        opt: OptimizerArgs,
    },
    /// Recompute every published number and adjudicate it.
    Reproduce {
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        opt: OptimizerArgs,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        trials: usize,
    },
    /// Worst deficit change under seeded Haar-random local unitaries.
    Invariance {
        state: String,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[command(flatten)]
        opt: OptimizerArgs,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Subcommand)]
enum CatalogAction {
    List,
    Show {
        name: String,
        /// Emit state-file JSON.
        #[arg(long)]
        json: bool,
    },
}

fn load_state(spec: &str) -> Result<(String, DensityOperator), CliError> {
    if let Some(name) = spec.strip_prefix("catalog:") {
        let name: CatalogName = name.parse()?;
        return Ok((spec.to_string(), catalog_state(&name)?));
    }
    let path = Path::new(spec);
    let bytes = std::fs::read(path)
        .map_err(|e| CliError::Usage(format!("cannot read state file `{spec}`: {e}")))?;
    let file = StateFile::parse(&bytes)?;
    let label = file.name.clone().unwrap_or_else(|| spec.to_string());
    Ok((label, file.to_density()?))
}

#[derive(Serialize)]
struct DeficitView<'a> {
    state: &'a str,
    dims: [usize; 2],
    units: &'static str,
    entropy_before: f64,
    entropy_after: f64,
    total_work: f64,
    local_work: f64,
    delta: f64,
    measurement: String,
    theta: Option<f64>,
    phi: Option<f64>,
    evaluations: usize,
    final_step: f64,
    converged: bool,
}

impl<'a> DeficitView<'a> {
    fn new(state: &'a str, rho: &DensityOperator, r: &DeficitResult) -> Self {
        let (theta, phi) = match &r.argmin {
            deficitlab_core::Measurement::Projective(b) => (Some(b.theta()), Some(b.phi())),
            deficitlab_core::Measurement::Povm { .. } => (None, None),
        };
        DeficitView {
            state,
            dims: [rho.dims().0, rho.dims().1],
            units: "bits",
            entropy_before: r.entropy_before,
            entropy_after: r.entropy_after,
            total_work: r.total_work_bits,
            local_work: r.local_work_bits,
            delta: r.delta_bits,
            measurement: r.argmin.to_string(),
            theta,
            phi,
            evaluations: r.trace.evaluations,
            final_step: r.trace.final_step,
            converged: r.trace.converged,
        }
    }

    fn table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "state: {} (dims {}x{})", self.state, self.dims[0], self.dims[1]);
        let _ = writeln!(out, "{:<10} {:>20}", "quantity", "value (bits)");
        for (k, v) in [
            ("S(rho)", self.entropy_before),
            ("S(rho')", self.entropy_after),
            ("W_t", self.total_work),
            ("W_l", self.local_work),
            ("delta", self.delta),
        ] {
            let _ = writeln!(out, "{k:<10} {:>20}", sig12(v));
        }
        let _ = writeln!(out, "measurement: {}", self.measurement);
        let _ = writeln!(
            out,
            "optimizer: {} evaluations, final step {:.3e}, converged {}",
            self.evaluations, self.final_step, self.converged
        );
        out
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("plain data serializes")
}

fn show_state(label: &str, rho: &DensityOperator) -> String {
    let mut out = String::new();
    let m = rho.matrix();
    let _ = writeln!(out, "{label} (dims {}x{})", rho.dims().0, rho.dims().1);
    for i in 0..m.rows() {
        let row: Vec<String> = (0..m.cols())
            .map(|j| format!("{:>9.6}{:+.6}i", m[(i, j)].re, m[(i, j)].im))
            .collect();
        let _ = writeln!(out, "  {}", row.join("  "));
    }
    let _ = writeln!(out, "{:<22} {:>20}", "quantity", "value (bits)");
    let _ = writeln!(out, "{:<22} {:>20}", "S", sig12(von_neumann_entropy(rho)));
    let _ = writeln!(out, "{:<22} {:>20}", "linear entropy", sig12(mixedness(rho, Mixedness::Linear)));
    if rho.dims() == (2, 2) {
        if let Ok(e) = entanglement_report(rho) {
            let _ = writeln!(out, "{:<22} {:>20}", "concurrence", sig12(e.concurrence));
            let _ = writeln!(out, "{:<22} {:>20}", "EoF", sig12(e.eof));
            let _ = writeln!(out, "{:<22} {:>20}", "PPT min eigenvalue", sig12(e.ppt_min_eigenvalue));
            let _ = writeln!(out, "separable: {}", e.separable_2x2);
        }
    }
    out
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Catalog { action: CatalogAction::List } => {
            let mut out = String::new();
            for (name, what) in CATALOG_HELP {
                let _ = writeln!(out, "{name:<18} {what}");
            }
            Ok(out)
        }
        Command::Catalog { action: CatalogAction::Show { name, json } } => {
            let parsed: CatalogName = name.parse()?;
            let members = catalog_members(&parsed)?;
            let label = parsed.to_string();
            if json {
                let files: Vec<StateFile> = members
                    .iter()
                    .map(|m| StateFile::from_state(Some(&label), m))
                    .collect();
                Ok(if files.len() == 1 {
                    files[0].to_json() + "\n"
                } else {
                    to_json(&files) + "\n"
                })
            } else {
                Ok(members
                    .iter()
                    .enumerate()
                    .map(|(k, m)| {
                        let l = if members.len() > 1 { format!("{label}[{k}]") } else { label.clone() };
                        show_state(&l, m)
                    })
                    .collect::<Vec<_>>()
                    .join("\n"))
            }
        }
        Command::Deficit { state, opt, json } => {
            let settings = opt.settings()?;
            let (label, rho) = load_state(&state)?;
            let r = one_way_deficit_projective(&rho, &settings)?;
            let view = DeficitView::new(&label, &rho, &r);
            Ok(if json { to_json(&view) + "\n" } else { view.table() })
        }
        Command::ScanBasis { state, phi, steps } => {
            let (_, rho) = load_state(&state)?;
            let curve = deficit_curve(&rho, phi, steps)?;
            let mut out = String::from("theta,phi,entropy_after,local_work,delta\n");
            for p in curve {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{}",
                    sig12(p.theta),
                    sig12(p.phi),
                    sig12(p.entropy_after),
                    sig12(p.local_work),
                    sig12(p.delta)
                );
            }
            Ok(out)
        }
        Command::Povm { state, four_state, json } => {
            if !four_state {
                return Err(CliError::Usage("choose an instrument: --four-state".into()));
            }
            let (label, rho) = load_state(&state)?;
            let r = povm_deficit(&rho, &four_state_povm())?;
            let view = DeficitView::new(&label, &rho, &r);
            Ok(if json { to_json(&view) + "\n" } else { view.table() })
        }
        Command::Ordering { family_a, family_b, mixedness, opt } => {
            let settings = opt.settings()?;
            let kind: Mixedness = mixedness.parse()?;
            let load_all = |specs: &[String]| {
                specs
                    .iter()
                    .filter(|s| !s.trim().is_empty())
                    .map(|s| load_state(s.trim()))
                    .collect::<Result<Vec<_>, _>>()
            };
            let a = load_all(&family_a)?;
            let b = load_all(&family_b)?;
            let records = ordering_scan(&a, &b, kind, &settings)?;
            let mut out = String::from("state_a,state_b,mixedness,e_a,e_b,delta_a,delta_b,s_a,s_b,flags\n");
            for r in records {
                let flags: Vec<&str> = r.flags.iter().map(|f| f.label()).collect();
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{},{}",
                    r.state_a,
                    r.state_b,
                    r.mixedness,
                    sig12(r.e_a),
                    sig12(r.e_b),
                    sig12(r.d_a),
                    sig12(r.d_b),
                    sig12(r.s_a),
                    sig12(r.s_b),
                    flags.join(";")
                );
            }
            Ok(out)
        }
        Command::Reproduce { json, opt, seed, trials } => {
            if trials == 0 {
                return Err(CliError::Usage("--trials must be at least 1".into()));
            }
            let settings = ReproduceSettings {
                optimizer: opt.settings()?,
                seed,
                invariance_trials: trials,
                ..ReproduceSettings::default()
            };
            match run_reproduce(&settings) {
                Ok(report) => Ok(if json { report.to_json() + "\n" } else { report.to_table() }),
                Err(e) => {
                    let partial = if json { e.partial.to_json() } else { e.partial.to_table() };
                    println!("{partial}");
                    Err(e.source.into())
                }
            }
        }
        Command::Invariance { state, trials, seed, opt, json } => {
            let settings = opt.settings()?;
            let (label, rho) = load_state(&state)?;
            let dev = local_unitary_invariance_check(&rho, trials, seed, &settings)?;
            Ok(if json {
                to_json(&serde_json::json!({
                    "state": label,
                    "trials": trials,
                    "seed": seed,
                    "units": "bits",
                    "maxDeviation": dev,
                })) + "\n"
            } else {
                format!(
                    "state: {label}\ntrials: {trials}, seed: {seed}\nmax |delta change| (bits): {}\n",
                    sig12(dev)
                )
            })
        }
    }
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("DEFICITLAB_THREADS") else {
        return Ok(());
    };
    let n = raw
        .trim()
        .parse::<usize>()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Usage(format!("DEFICITLAB_THREADS=`{raw}` is not a positive integer")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(format!("cannot configure thread pool: {e}")))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|()| run(cli));
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
