//! quiverlab command line: parse quiver and morphism files, run the
//! decision procedures, and emit certificates.
//!
//! Exit codes: 0 affirmative verdict, 1 negative verdict (certificate on
//! stdout), 2 usage or input error, 3 search budget exceeded.

mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use quiverlab::io::morph::{parse_morphism, resolve_morphism};
use quiverlab::io::text::{parse_quiver, print_quiver};
use quiverlab::{Budget, Quiver, QuiverError, QuiverMorphism, RawQuiver, DEFAULT_BUDGET};

use output::Rendered;

#[derive(Parser)]
#[command(name = "quiverlab", version, about = "Analyze finite quivers", max_term_width = 100)]
struct Cli {
    /// Output format for verdicts and certificates.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct BudgetArg {
    /// Node budget for backtracking searches. Defaults to QUIVERLAB_BUDGET
    /// or a built-in limit.
    #[arg(long)]
    budget: Option<u64>,
}

impl BudgetArg {
    fn budget(&self) -> Budget {
        let limit = self
            .budget
            .or_else(|| {
                std::env::var("QUIVERLAB_BUDGET")
                    .ok()
                    .and_then(|s| s.parse().ok())
            })
            .unwrap_or(DEFAULT_BUDGET);
        Budget::new(limit)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check a quiver file against the data-model invariants.
    Validate { file: PathBuf },

    /// Check that a morphism file defines a homomorphism.
    HomCheck { file: PathBuf },

    /// Check that a morphism file defines a monomorphism.
    MonicCheck { file: PathBuf },

    /// Count homomorphisms from one quiver into another.
    HomsCount {
        g: PathBuf,
        h: PathBuf,
        /// Stop counting after this many.
        #[arg(long)]
        limit: Option<usize>,
        #[command(flatten)]
        budget: BudgetArg,
    },

    /// Decide injectivity by enumerating morphisms and extending each one.
    InjectBrute {
        j: PathBuf,
        /// Test against the path-into-cycle embedding of this order.
        #[arg(long, conflicts_with = "phi")]
        n: Option<usize>,
        /// Test against an arbitrary monic morphism file.
        #[arg(long)]
        phi: Option<PathBuf>,
        #[command(flatten)]
        budget: BudgetArg,
    },

    /// Decide injectivity for the path-into-cycle embedding via the walk
    /// criterion.
    InjectPhin {
        j: PathBuf,
        #[arg(long)]
        n: usize,
    },

    /// Classify each weak component of an injective quiver structurally.
    Classify {
        j: PathBuf,
        #[arg(long)]
        n: usize,
    },

    /// Construct a blow-up from a JSON spec.
    BlowupMake {
        spec: PathBuf,
        /// Also write the blown quiver as a text-format file.
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Decide whether a quiver is a blow-up of a base quiver.
    BlowupRecognize {
        h: PathBuf,
        #[arg(long)]
        base: PathBuf,
        #[command(flatten)]
        budget: BudgetArg,
    },

    /// Find a left inverse for a morphism, proving it is a section.
    RetractFind {
        file: PathBuf,
        #[command(flatten)]
        budget: BudgetArg,
    },

    /// Find a right inverse for a morphism, proving it is a retraction.
    SectionFind {
        file: PathBuf,
        #[command(flatten)]
        budget: BudgetArg,
    },

    /// Render a quiver as DOT, optionally clustered by its classification.
    ExportDot {
        j: PathBuf,
        /// Overlay the structural classification for this embedding order.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum CliError {
    Input(String),
    Budget(u64),
}

impl From<QuiverError> for CliError {
    fn from(e: QuiverError) -> Self {
        match e {
            QuiverError::Budget(nodes) => CliError::Budget(nodes),
            other => CliError::Input(other.to_string()),
        }
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

fn load_raw_quiver(path: &Path) -> Result<RawQuiver, CliError> {
    let content = read_file(path)?;
    if path.extension().is_some_and(|ext| ext == "json") {
        serde_json::from_str(&content)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
    } else {
        parse_quiver(&content).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
    }
}

fn load_quiver(path: &Path) -> Result<Arc<Quiver>, CliError> {
    let raw = load_raw_quiver(path)?;
    Quiver::validate(&raw)
        .map(Arc::new)
        .map_err(|report| CliError::Input(format!("{}: {report}", path.display())))
}

/// Morphism files name their quiver files relative to their own directory.
fn load_morphism(path: &Path) -> Result<QuiverMorphism, CliError> {
    let content = read_file(path)?;
    let raw = parse_morphism(&content)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let dir = path.parent().unwrap_or(Path::new("."));
    let domain = load_quiver(&dir.join(&raw.domain))?;
    let codomain = load_quiver(&dir.join(&raw.codomain))?;
    resolve_morphism(&raw, domain, codomain)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn write_out(path: &Path, content: &str) -> Result<(), CliError> {
    std::fs::write(path, content)
        .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(rendered) => {
            print!("{}", rendered.body(cli.format));
            if rendered.affirmative() {
                ExitCode::from(0)
            } else {
                ExitCode::from(1)
            }
        }
        Err(CliError::Input(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
        Err(CliError::Budget(nodes)) => {
            eprintln!("error: search budget exhausted after {nodes} nodes");
            ExitCode::from(3)
        }
    }
}

fn run(cli: &Cli) -> Result<Rendered, CliError> {
    match &cli.command {
        Command::Validate { file } => {
            let raw = load_raw_quiver(file)?;
            Ok(output::validate(&raw, Quiver::validate(&raw)))
        }

        Command::HomCheck { file } => {
            let m = load_morphism(file)?;
            Ok(output::hom_check(&m))
        }

        Command::MonicCheck { file } => {
            let m = load_morphism(file)?;
            if m.check().is_err() {
                return Err(CliError::Input(
                    "not a homomorphism; run hom-check for the violation".into(),
                ));
            }
            Ok(output::monic_check(&m))
        }

        Command::HomsCount {
            g,
            h,
            limit,
            budget,
        } => {
            let g = load_quiver(g)?;
            let h = load_quiver(h)?;
            let mut meter = budget.budget();
            let mut iter = quiverlab::enumerate_homs(&g, &h);
            let mut count = 0usize;
            let mut truncated = false;
            while let Some(_m) = iter.next_budgeted(&mut meter)? {
                count += 1;
                if limit.is_some_and(|l| count >= l) {
                    truncated = true;
                    break;
                }
            }
            Ok(output::homs_count(count, *limit, truncated))
        }

        Command::InjectBrute {
            j,
            n,
            phi,
            budget,
        } => {
            let j = load_quiver(j)?;
            let phi = match (n, phi) {
                (Some(n), None) => quiverlab::phi_n(*n)?,
                (None, Some(path)) => load_morphism(path)?,
                _ => {
                    return Err(CliError::Input(
                        "inject-brute needs exactly one of --n or --phi".into(),
                    ))
                }
            };
            let mut meter = budget.budget();
            let verdict = quiverlab::is_phi_injective_brute(&j, &phi, &mut meter)?;
            Ok(output::injectivity(&j, &verdict, *n))
        }

        Command::InjectPhin { j, n } => {
            let j = load_quiver(j)?;
            let verdict = quiverlab::is_phin_injective(&j, *n)?;
            Ok(output::injectivity(&j, &verdict, Some(*n)))
        }

        Command::Classify { j, n } => {
            let j = load_quiver(j)?;
            let classification = quiverlab::classify(&j, *n)?;
            Ok(output::classification(&j, &classification))
        }

        Command::BlowupMake { spec, out } => {
            let spec = load_blowup_spec(spec)?;
            let witness = quiverlab::construct_blowup(&spec)?;
            if let Some(path) = out {
                write_out(path, &print_quiver(&witness.blown))?;
            }
            Ok(output::blowup_make(&witness))
        }

        Command::BlowupRecognize { h, base, budget } => {
            let base = load_quiver(base)?;
            let h = load_quiver(h)?;
            let mut meter = budget.budget();
            let witness = quiverlab::recognize_blowup(&base, &h, &mut meter)?;
            Ok(output::blowup_recognize(witness.as_ref()))
        }

        Command::RetractFind { file, budget } => {
            let j = load_morphism(file)?;
            let mut meter = budget.budget();
            let found = quiverlab::find_retraction(&j, &mut meter)?;
            Ok(output::retract_find(&j, found.as_ref()))
        }

        Command::SectionFind { file, budget } => {
            let q = load_morphism(file)?;
            let mut meter = budget.budget();
            let found = quiverlab::find_section(&q, &mut meter)?;
            Ok(output::section_find(&q, found.as_ref()))
        }

        Command::ExportDot { j, n, out } => {
            let j = load_quiver(j)?;
            let classification = match n {
                Some(n) => Some(quiverlab::classify(&j, *n)?),
                None => None,
            };
            let dot = quiverlab::io::dot::export_dot(&j, classification.as_ref());
            if let Some(path) = out {
                write_out(path, &dot)?;
            }
            Ok(Rendered::dot(dot))
        }
    }
}

#[derive(serde::Deserialize)]
struct BlowupSpecFile {
    base: String,
    #[serde(default)]
    sizes: std::collections::BTreeMap<String, usize>,
    #[serde(default)]
    multiplicity: Option<MultiplicityFile>,
}

#[derive(serde::Deserialize)]
#[serde(untagged)]
enum MultiplicityFile {
    Uniform(usize),
    PerEdge(std::collections::BTreeMap<String, usize>),
}

/// Spec JSON: `{"base": <file>, "sizes": {vertex: size, ...},
/// "multiplicity": int | {edge: int, ...}}`. Sizes and multiplicities
/// default to one; the base path is relative to the spec file.
fn load_blowup_spec(path: &Path) -> Result<quiverlab::BlowupSpec, CliError> {
    let content = read_file(path)?;
    let file: BlowupSpecFile = serde_json::from_str(&content)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let dir = path.parent().unwrap_or(Path::new("."));
    let base = load_quiver(&dir.join(&file.base))?;

    let mut vertex_sizes = vec![1usize; base.vertex_count()];
    for (name, size) in &file.sizes {
        let v = base
            .vertex_by_name(name)
            .ok_or_else(|| CliError::Input(format!("unknown vertex `{name}` in sizes")))?;
        vertex_sizes[usize::from(v)] = *size;
    }
    let multiplicity = match file.multiplicity {
        None => quiverlab::Multiplicity::Uniform(1),
        Some(MultiplicityFile::Uniform(m)) => quiverlab::Multiplicity::Uniform(m),
        Some(MultiplicityFile::PerEdge(map)) => {
            let mut per_edge = vec![1usize; base.edge_count()];
            for (name, m) in &map {
                let e = base.edge_by_name(name).ok_or_else(|| {
                    CliError::Input(format!("unknown edge `{name}` in multiplicity"))
                })?;
                per_edge[usize::from(e)] = *m;
            }
            quiverlab::Multiplicity::PerEdge(per_edge)
        }
    };
    Ok(quiverlab::BlowupSpec {
        base,
        vertex_sizes,
        multiplicity,
    })
}
