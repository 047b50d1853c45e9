//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when a checked property fails, 2 on bad input.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};

use mukai_braid::orbit::{orbit_bfs, same_orbit, BasisPoint, OrbitBudget};
use mukai_braid::verify::{run_invariant_suite, DEFAULT_SEED};
use mukai_braid::{
    gram_pn, psi_map, relation_search, text, verify_transitivity_certificate, BraidWord, Check,
    Error, GramForm, IntMatrix, SOBasis,
};

#[derive(Parser)]
#[command(name = "mukai", version, about = "Braid group actions on semiorthonormal bases of Mukai lattices")]
struct Cli {
    /// Report search progress on standard error.
    #[arg(short, long, global = true)]
    verbose: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Mode {
    /// Skip re-validating mutated bases.
    #[arg(long)]
    fast: bool,
}

impl Mode {
    fn check(&self) -> Check {
        if self.fast {
            Check::Fast
        } else {
            Check::Validate
        }
    }
}

#[derive(Args)]
struct Budgets {
    #[arg(long, default_value_t = 10_000)]
    max_elements: usize,
    #[arg(long, default_value_t = 8)]
    max_depth: usize,
    /// Compare bases exactly instead of up to vector signs.
    #[arg(long)]
    no_sign_quotient: bool,
}

impl Budgets {
    fn budget(&self) -> Result<OrbitBudget, Failure> {
        Ok(OrbitBudget::new(self.max_elements, self.max_depth)?)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the Gram form of K_0(P^n).
    GramPn {
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
    },
    /// Print the reflection tuple of a basis (the seed basis by default).
    Reflect {
        #[arg(long)]
        lattice: PathBuf,
        #[arg(long)]
        basis: Option<PathBuf>,
    },
    /// Apply a braid word such as "1 -2 3" to a basis.
    Mutate {
        #[arg(long)]
        lattice: PathBuf,
        #[arg(long)]
        basis: PathBuf,
        #[arg(long, allow_hyphen_values = true, default_value = "")]
        word: String,
        #[command(flatten)]
        mode: Mode,
    },
    /// Breadth-first orbit enumeration of a basis.
    Orbit {
        #[arg(long)]
        lattice: PathBuf,
        #[arg(long)]
        basis: PathBuf,
        #[command(flatten)]
        budgets: Budgets,
        #[command(flatten)]
        mode: Mode,
    },
    /// Decide (within budget) whether two bases lie in one braid orbit.
    SameOrbit {
        #[arg(long)]
        lattice: PathBuf,
        #[arg(long)]
        basis1: PathBuf,
        #[arg(long)]
        basis2: PathBuf,
        /// Search on the reflection tuples instead of the bases.
        #[arg(long)]
        reflect_side: bool,
        #[command(flatten)]
        budgets: Budgets,
        #[command(flatten)]
        mode: Mode,
    },
    /// Enumerate reduced words in the reflections and report relations.
    Relations {
        /// Use the reflections of this lattice's seed basis.
        #[arg(long, conflicts_with = "generators", required_unless_present = "generators")]
        lattice: Option<PathBuf>,
        /// Use the involutions in this matrix tuple file.
        #[arg(long)]
        generators: Option<PathBuf>,
        #[arg(long, default_value_t = 6)]
        max_length: usize,
    },
    /// Relation search on the seed reflections, reported as a transitivity check.
    Certify {
        #[arg(long)]
        lattice: PathBuf,
        #[arg(long, default_value_t = 6)]
        max_length: usize,
    },
    /// Solve a free Coxeter Hurwitz instance back to the seed tuple.
    SolveCoxeter {
        #[arg(long)]
        tuple: PathBuf,
    },
    /// Run the randomized invariant suite.
    Verify {
        #[arg(long)]
        lattice: PathBuf,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Re-check every node and edge of an orbit report.
    Replay {
        #[arg(long)]
        lattice: PathBuf,
        #[arg(long)]
        basis: PathBuf,
        #[arg(long)]
        report: PathBuf,
        #[arg(long)]
        no_sign_quotient: bool,
    },
}

enum Failure {
    Input(String),
    Property(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn in_file<T>(path: &Path, r: Result<T, Error>) -> Result<T, Failure> {
    r.map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_lattice(path: &Path) -> Result<Arc<GramForm>, Failure> {
    let text = read(path)?;
    in_file(path, text::parse_lattice(&text)).map(Arc::new)
}

fn load_basis(form: &Arc<GramForm>, path: &Path) -> Result<SOBasis, Failure> {
    let text = read(path)?;
    in_file(path, text::parse_basis(Arc::clone(form), &text))
}

fn run(cli: Cli) -> Result<String, Failure> {
    match cli.command {
        Command::GramPn { n } => Ok(text::format_lattice(&gram_pn(n)?)),
        Command::Reflect { lattice, basis } => {
            let form = load_lattice(&lattice)?;
            let b = match basis {
                Some(p) => load_basis(&form, &p)?,
                None => form.seed_basis(),
            };
            Ok(psi_map(&b)?.to_string())
        }
        Command::Mutate {
            lattice,
            basis,
            word,
            mode,
        } => {
            let form = load_lattice(&lattice)?;
            let b = load_basis(&form, &basis)?;
            let w: BraidWord = word.parse()?;
            Ok(text::format_basis(&b.apply_braid_with(&w, mode.check())?))
        }
        Command::Orbit {
            lattice,
            basis,
            budgets,
            mode,
        } => {
            let form = load_lattice(&lattice)?;
            let start = BasisPoint::new(load_basis(&form, &basis)?)
                .with_check(mode.check())
                .with_sign_quotient(!budgets.no_sign_quotient);
            let r = orbit_bfs(&start, budgets.budget()?)?;
            Ok(text::format_orbit_report(&r))
        }
        Command::SameOrbit {
            lattice,
            basis1,
            basis2,
            reflect_side,
            budgets,
            mode,
        } => {
            let form = load_lattice(&lattice)?;
            let b1 = load_basis(&form, &basis1)?;
            let b2 = load_basis(&form, &basis2)?;
            let budget = budgets.budget()?;
            let answer = if reflect_side {
                let t1 = psi_map(&b1)?.to_group_tuple();
                let t2 = psi_map(&b2)?.to_group_tuple();
                same_orbit(&t1, &t2, budget)?
            } else {
                let p = |b| {
                    BasisPoint::new(b)
                        .with_check(mode.check())
                        .with_sign_quotient(!budgets.no_sign_quotient)
                };
                same_orbit(&p(b1), &p(b2), budget)?
            };
            Ok(text::format_answer(&answer))
        }
        Command::Relations {
            lattice,
            generators,
            max_length,
        } => {
            let gens: Vec<IntMatrix> = match (lattice, generators) {
                (Some(l), _) => {
                    let form = load_lattice(&l)?;
                    psi_map(&form.seed_basis())?
                        .matrices()
                        .iter()
                        .map(|r| r.matrix().clone())
                        .collect()
                }
                (None, Some(g)) => {
                    let text = read(&g)?;
                    in_file(&g, text::parse_matrix_tuple(&text))?
                }
                (None, None) => return Err(Failure::Input("need --lattice or --generators".into())),
            };
            Ok(text::format_relation_report(&relation_search(&gens, max_length)?))
        }
        Command::Certify {
            lattice,
            max_length,
        } => {
            let form = load_lattice(&lattice)?;
            Ok(text::format_transitivity_report(&verify_transitivity_certificate(
                &form, max_length,
            )?))
        }
        Command::SolveCoxeter { tuple } => {
            let text_in = read(&tuple)?;
            let t = in_file(&tuple, text::parse_coxeter_tuple(&text_in))?;
            match t.solve_hurwitz() {
                Ok(sol) => Ok(text::format_solution(&sol)),
                Err(Error::NoReducingMutation { total_length }) => Err(Failure::Property(format!(
                    "no length-reducing mutation at total length {total_length}"
                ))),
                Err(e) => Err(Failure::Input(format!("{}: {e}", tuple.display()))),
            }
        }
        Command::Verify {
            lattice,
            trials,
            seed,
        } => {
            let form = load_lattice(&lattice)?;
            let outcomes = run_invariant_suite(&form, trials, seed)?;
            let mut out = format!("seed\t{seed}\ttrials\t{trials}\n");
            let mut failed = false;
            for o in &outcomes {
                match &o.failure {
                    None => out.push_str(&format!("PASS\t{}\n", o.name)),
                    Some(msg) => {
                        failed = true;
                        out.push_str(&format!("FAIL\t{}\t{}\n", o.name, msg));
                    }
                }
            }
            if failed {
                Err(Failure::Property(out))
            } else {
                Ok(out)
            }
        }
        Command::Replay {
            lattice,
            basis,
            report,
            no_sign_quotient,
        } => {
            let form = load_lattice(&lattice)?;
            let start = BasisPoint::new(load_basis(&form, &basis)?).with_sign_quotient(!no_sign_quotient);
            let report_text = read(&report)?;
            let t = in_file(&report, text::parse_orbit_report(&report_text))?;
            let mismatches = text::replay_transcript(&start, &t)?;
            if mismatches.is_empty() {
                Ok(format!("replay\tok\tnodes\t{}\tedges\t{}\n", t.nodes.len(), t.edges.len()))
            } else {
                Err(Failure::Property(mismatches.join("\n") + "\n"))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = if cli.verbose { "info" } else { "warn" };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Property(msg)) => {
            print!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
