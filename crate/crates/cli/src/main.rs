use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use omreal_cli::{parse_chirotope_line, parse_chirotope_lines, parse_witness, run_classify, witness_text, Store};
use omreal_core::covectors::{is_acyclic, is_matroid_polytope};
use omreal_core::enumerate::{enumerate_with, EnumerationOptions};
use omreal_core::geometry::{census, CensusSummary};
use omreal_core::reduce::{build_system, select_frame};
use omreal_core::solve::{class_seed, realize, Budget, SolveOutcome};
use omreal_core::{Chirotope, Error as CoreError};

#[derive(Parser)]
#[command(name = "omreal", version, about = "Enumerate, realize and census small oriented matroids")]
struct Cli {
    /// Worker threads (0: all cores).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct BudgetArgs {
    /// Largest log2 branch count explored.
    #[arg(long, default_value_t = Budget::default().max_cost_limit)]
    budget_cost: u32,
    /// Random trials per search leaf.
    #[arg(long, default_value_t = Budget::default().random_trials)]
    budget_trials: u32,
    #[arg(long, env = "OMREAL_SEED", default_value_t = 0)]
    seed: u64,
    /// Also branch on vanishing coefficients.
    #[arg(long)]
    full_branching: bool,
}

impl BudgetArgs {
    fn budget(&self) -> Budget {
        Budget {
            max_cost_limit: self.budget_cost,
            random_trials: self.budget_trials,
            seed: self.seed,
            full_branching: self.full_branching,
            ..Budget::default()
        }
    }
}

#[derive(Args)]
struct Input {
    /// File of `n r signs` lines; `-` or absent reads stdin.
    input: Option<PathBuf>,
    /// Reject sign maps that violate the exchange axiom.
    #[arg(long)]
    validate_input: bool,
}

impl Input {
    fn read(&self) -> Result<Vec<Chirotope>> {
        let text = match &self.input {
            Some(p) if p != Path::new("-") => fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?,
            _ => {
                let mut s = String::new();
                io::stdin().read_to_string(&mut s)?;
                s
            }
        };
        parse_chirotope_lines(&text, self.validate_input)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Reorientation classes of simple rank-r chirotopes on n elements.
    Enumerate {
        n: usize,
        r: usize,
        #[arg(long)]
        uniform_only: bool,
        #[arg(long)]
        node_limit: Option<u64>,
    },
    /// Axiom check and basic properties of each input line.
    Check(Input),
    /// Frame, reduced system and polynomial system of each input line.
    Reduce(Input),
    /// Search for a realization of each input line.
    Realize {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Directory for witness files.
        #[arg(long)]
        witness_dir: Option<PathBuf>,
    },
    /// Realize classes into a resumable store.
    Classify {
        #[arg(long)]
        store: PathBuf,
        /// Enumerate the cell `N R` in process instead of reading lines.
        #[arg(long, num_args = 2, value_names = ["N", "R"])]
        cell: Option<Vec<usize>>,
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Classes realized between store appends.
        #[arg(long, default_value_t = 16)]
        batch: usize,
    },
    /// Polytope census of a cell as a TSV row.
    Census {
        n: usize,
        r: usize,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Also print one line per acyclic relabeling class.
        #[arg(long)]
        records: bool,
    },
    /// Re-check witness files exactly.
    VerifyWitness {
        /// Witness file, checked against `--chirotope`.
        witness: Option<PathBuf>,
        #[arg(long)]
        chirotope: Option<String>,
        /// Check every witness of a store instead.
        #[arg(long, conflicts_with_all = ["witness", "chirotope"])]
        store: Option<PathBuf>,
    },
}

fn flags(chi: &Chirotope) -> String {
    let mut out = Vec::new();
    if chi.is_uniform() {
        out.push("uniform");
    }
    if chi.is_simple() {
        out.push("simple");
    }
    if is_acyclic(chi) {
        out.push("acyclic");
    }
    if is_matroid_polytope(chi) {
        out.push("matroid-polytope");
    }
    out.join(",")
}

/// Exit status 1: a witness failed verification.
struct Rejected;

fn run(cli: Cli) -> Result<Option<Rejected>> {
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    match cli.command {
        Command::Enumerate {
            n,
            r,
            uniform_only,
            node_limit,
        } => {
            let opts = EnumerationOptions {
                uniform_only,
                node_limit,
                ..EnumerationOptions::default()
            };
            let report = enumerate_with(n, r, &opts)?;
            for chi in report.chirotopes() {
                writeln!(out, "{chi}")?;
            }
            eprintln!(
                "OM({r},{n}) = {}({}) from {} search nodes",
                report.class_count, report.uniform_class_count, report.nodes
            );
        }
        Command::Check(input) => {
            for chi in input.read()? {
                let check = chi.check_axioms();
                if check.is_valid() {
                    writeln!(out, "{chi}\tchirotope\t{}", flags(&chi))?;
                } else {
                    writeln!(out, "{chi}\tnot a chirotope: {check}")?;
                }
            }
        }
        Command::Reduce(input) => {
            for chi in input.read()? {
                let frame = select_frame(&chi)?;
                let (sys, _) = build_system(&chi, &frame)?;
                let space = chi.space();
                let tuples: Vec<String> = frame.reduced.tuples.iter().map(|&i| space.tuple(i).to_string()).collect();
                writeln!(out, "# {chi}")?;
                writeln!(
                    out,
                    "# basis {}{} row {} column {}",
                    frame.basis.tuple,
                    if frame.basis.negated { " (negated)" } else { "" },
                    frame.row + 1,
                    frame.column.map_or("none".to_string(), |c| (c + 1).to_string())
                )?;
                writeln!(out, "# reduced system ({}): {}", tuples.len(), tuples.join(" "))?;
                write!(out, "{sys}")?;
            }
        }
        Command::Realize {
            input,
            budget,
            witness_dir,
        } => {
            let base = budget.budget();
            if let Some(d) = &witness_dir {
                fs::create_dir_all(d)?;
            }
            for chi in input.read()? {
                let b = Budget {
                    seed: class_seed(&chi.sign_string(), base.seed),
                    ..base.clone()
                };
                match realize(&chi, &b)? {
                    SolveOutcome::Feasible { realization, .. } => {
                        let v = realization.expect("realize attaches the matrix");
                        writeln!(out, "{chi}\trealizable")?;
                        write!(out, "{}", witness_text(&v))?;
                        if let Some(d) = &witness_dir {
                            let path = d.join(omreal_cli::format::witness_name(&chi.to_string()));
                            fs::write(&path, witness_text(&v))?;
                        }
                    }
                    SolveOutcome::Unknown(reason) => writeln!(out, "{chi}\tunknown ({reason})")?,
                }
            }
        }
        Command::Classify {
            store,
            cell,
            input,
            budget,
            batch,
        } => {
            let classes = match cell {
                Some(c) => enumerate_with(c[0], c[1], &EnumerationOptions::default())?
                    .chirotopes()
                    .collect(),
                None => input.read()?,
            };
            let mut store = Store::open(&store)?;
            let s = run_classify(&mut store, &classes, &budget.budget(), batch)?;
            writeln!(
                out,
                "classes {}\tskipped {}\tadded {}\trealizable {}\tunknown {}",
                s.classes, s.skipped, s.added, s.realizable, s.unknown
            )?;
        }
        Command::Census {
            n,
            r,
            budget,
            records,
        } => {
            let report = enumerate_with(n, r, &EnumerationOptions::default())?;
            let c = census(&report, &budget.budget())?;
            writeln!(out, "{}", CensusSummary::HEADER)?;
            writeln!(out, "{}", c.summary.tsv_row())?;
            if records {
                for rec in &c.records {
                    writeln!(
                        out,
                        "{} {} {}\t{}\t{}",
                        n,
                        r,
                        rec.canonical,
                        rec.status,
                        census_flags(rec)
                    )?;
                }
            }
        }
        Command::VerifyWitness {
            witness,
            chirotope,
            store,
        } => {
            let mut pairs = Vec::new();
            if let Some(dir) = store {
                let store = Store::open(&dir)?;
                for rec in store.records() {
                    if let Some(rel) = &rec.witness {
                        pairs.push((rec.key.clone(), store.read_witness(rel)?, rel.clone()));
                    }
                }
            } else {
                let (Some(w), Some(c)) = (witness, chirotope) else {
                    bail!("give a witness file and --chirotope, or --store");
                };
                let text = fs::read_to_string(&w).with_context(|| format!("reading {}", w.display()))?;
                pairs.push((c, parse_witness(&text)?, w.display().to_string()));
            }
            let mut rejected = false;
            for (line, v, name) in pairs {
                let chi = parse_chirotope_line(&line, false)?;
                match v.first_mismatch(&chi)? {
                    None => writeln!(out, "{name}\tok")?,
                    Some(m) => {
                        rejected = true;
                        writeln!(out, "{name}\tmismatch at {m}")?;
                    }
                }
            }
            out.flush()?;
            return Ok(rejected.then_some(Rejected));
        }
    }
    out.flush()?;
    Ok(None)
}

fn census_flags(rec: &omreal_core::geometry::CensusRecord) -> String {
    let mut f = vec!["acyclic"];
    if rec.matroid_polytope {
        f.push("matroid-polytope");
    }
    if rec.uniform {
        f.push("uniform");
    }
    if rec.simplicial {
        f.push("simplicial");
    }
    if rec.neighborly {
        f.push("neighborly");
    }
    f.join(",")
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    if cli.jobs > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(Rejected)) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            // only an internal soundness failure gets its own status
            if matches!(e.downcast_ref::<CoreError>(), Some(CoreError::Soundness(_))) {
                ExitCode::from(3)
            } else {
                ExitCode::from(2)
            }
        }
    }
}
