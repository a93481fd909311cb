use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ospfield_claims::{corpus, json_report, parse, run, Context, ScriptReport};
use ospfield_core::centralizer::{center_dimensions, centralizer_basis, CentralizerQuery, Mode};
use ospfield_core::confluence::check_confluence;
use ospfield_core::expr::{normal_form, parse_expr};
use ospfield_core::{builtins, reference, Element, Error, Presentation};

// stdout may be a closed pipe; output errors are ignored
macro_rules! out {
    ($($t:tt)*) => {{
        let _ = write!(std::io::stdout(), $($t)*);
    }};
}

macro_rules! outln {
    ($($t:tt)*) => {{
        let _ = writeln!(std::io::stdout(), $($t)*);
    }};
}

#[derive(Parser)]
#[command(name = "ospfield", version, about = "Exact certificates for enveloping algebras of osp(1,2n)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run claim scripts.
    Verify {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Print the normal form of an expression.
    Nf {
        #[arg(short, long)]
        algebra: String,
        expr: String,
    },
    /// Print the bracket table of a Lie superalgebra.
    Table {
        #[arg(short, long)]
        algebra: String,
    },
    /// Dimensions and basis of the degree-bounded center.
    Center {
        #[arg(short, long)]
        algebra: String,
        #[arg(short = 'd', long = "max-degree", default_value_t = 4)]
        degree: u32,
        /// Use supercommutators.
        #[arg(long = "super")]
        supercommute: bool,
        #[arg(long)]
        json: bool,
    },
    /// Write the relation graph in DOT format.
    Graph {
        #[arg(short, long)]
        algebra: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check overlap ambiguities up to a degree.
    Overlaps {
        #[arg(short, long)]
        algebra: String,
        #[arg(short = 'd', long = "max-degree", default_value_t = 3)]
        degree: usize,
    },
    /// List builtin algebras.
    List,
}

enum Failure {
    Verify,
    Usage(String),
    Engine(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e.to_string())
    }
}

fn budget() -> Result<Option<u64>, Failure> {
    match std::env::var("OSPFIELD_BUDGET") {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Failure::Usage(format!("OSPFIELD_BUDGET: not a number: `{v}`"))),
        Err(_) => Ok(None),
    }
}

fn algebra(name: &str, center: bool) -> Result<Presentation, Failure> {
    let mut p = if center {
        builtins::center_presentation(name)
    } else {
        builtins::presentation(name)
    }
    .map_err(|e| match e {
        Error::InvalidParameters(m) => Failure::Usage(m),
        e => e.into(),
    })?;
    if let Some(b) = budget()? {
        p.set_budget(b);
    }
    Ok(p)
}

fn tables_beside(file: &Path) -> impl Fn(&str) -> Option<String> + Sync {
    let dir = file.parent().map(|d| d.join("tables")).unwrap_or_else(|| PathBuf::from("tables"));
    move |name: &str| {
        fs::read_to_string(dir.join(format!("{name}.table")))
            .ok()
            .or_else(|| corpus::table(name))
    }
}

fn verify_one(file: &Path) -> Result<ScriptReport, Failure> {
    let text = fs::read_to_string(file).map_err(|e| Failure::Usage(format!("{}: {e}", file.display())))?;
    let script = parse(&text).map_err(|e| Failure::Usage(format!("{}: {e}", file.display())))?;
    let tables = tables_beside(file);
    let ctx = Context {
        tables: Some(&tables),
        budget: budget()?,
        ..Default::default()
    };
    let name = file.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    Ok(run(&name, &script, &ctx))
}

fn verify(files: &[PathBuf], json: bool) -> Result<(), Failure> {
    let results: Vec<Result<ScriptReport, Failure>> = std::thread::scope(|s| {
        let handles: Vec<_> = files.iter().map(|f| s.spawn(move || verify_one(f))).collect();
        handles.into_iter().map(|h| h.join().expect("verifier thread")).collect()
    });
    let mut reports = Vec::new();
    for r in results {
        reports.push(r?);
    }
    if json {
        outln!("{}", serde_json::to_string_pretty(&json_report(&reports)).expect("serializable"));
    } else {
        for r in &reports {
            out!("{}", r.render());
        }
    }
    if reports.iter().all(ScriptReport::passed) {
        Ok(())
    } else {
        Err(Failure::Verify)
    }
}

fn center(name: &str, degree: u32, mode: Mode, json: bool) -> Result<(), Failure> {
    let p = algebra(name, true)?;
    let dims = center_dimensions(&p, degree, mode)?;
    let basis = centralizer_basis(&CentralizerQuery {
        presentation: &p,
        constraints: (0..p.len()).map(|i| Element::generator(p.len(), i)).collect(),
        degree,
        mode,
    })?;
    let rendered: Vec<String> = basis.iter().map(|b| p.render(b)).collect();
    if json {
        let v = serde_json::json!({
            "schema_version": 1,
            "algebra": p.name(),
            "dimensions": dims.iter().map(|(d, n)| serde_json::json!({"degree": d, "dim": n})).collect::<Vec<_>>(),
            "basis": rendered,
        });
        outln!("{}", serde_json::to_string_pretty(&v).expect("serializable"));
        return Ok(());
    }
    outln!("algebra {}", p.name());
    outln!("degree dim");
    for (d, n) in &dims {
        outln!("{d} {n}");
    }
    outln!("basis (degree <= {degree}):");
    for b in rendered {
        outln!("  {b}");
    }
    Ok(())
}

fn execute(cmd: Command) -> Result<(), Failure> {
    match cmd {
        Command::Verify { files, json } => verify(&files, json),
        Command::Nf { algebra: a, expr } => {
            let p = algebra(&a, false)?;
            let e = parse_expr(&expr).map_err(|e| Failure::Usage(e.to_string()))?;
            outln!("{}", p.render(&normal_form(&p, &e)?));
            Ok(())
        }
        Command::Table { algebra: a } => {
            let l = builtins::lie(&a).map_err(|e| Failure::Usage(e.to_string()))?;
            out!("{}", l.render_table());
            Ok(())
        }
        Command::Center { algebra: a, degree, supercommute, json } => {
            let mode = if supercommute { Mode::Supercommute } else { Mode::Commute };
            center(&a, degree, mode, json)
        }
        Command::Graph { algebra: a, output } => {
            let dot = reference::graph(&algebra(&a, false)?)?.to_dot();
            match output {
                Some(path) => fs::write(&path, dot).map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
                None => {
                    out!("{dot}");
                    Ok(())
                }
            }
        }
        Command::Overlaps { algebra: a, degree } => {
            let p = algebra(&a, false)?;
            let r = check_confluence(&p, degree)?;
            out!("{}", r.render(&p));
            if r.passed() {
                Ok(())
            } else {
                Err(Failure::Engine(format!("{} overlap mismatches", r.mismatches.len())))
            }
        }
        Command::List => {
            for b in builtins::list() {
                let aliases = if b.aliases.is_empty() {
                    String::new()
                } else {
                    format!(" ({})", b.aliases.join(", "))
                };
                outln!("{}{aliases}: {}", b.name, b.description);
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verify) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Engine(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}
