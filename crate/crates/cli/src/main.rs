//! `convspace`: inspect finite convergence spaces from the command line.
//!
//! Every command prints `key=value` lines. Exit status 0 means success, 1 a
//! failed property or equality, 2 bad input.

use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use convspace::covers::completeness_number;
use convspace::dual::regularity_predicates;
use convspace::harness::duality::duality_check;
use convspace::harness::format::{parse_map, parse_space, parse_space_unchecked, serialize_space, SpaceFile};
use convspace::harness::suite::{run_suite, SuiteParams};
use convspace::{graph_of, paving_number, Convergence, DualSpace, Error, FilterCollection, PavingKind, Strength};

/// Environment variable overriding the number of worker threads.
const THREADS_VAR: &str = "CONVSPACE_THREADS";

#[derive(Parser)]
#[command(
    name = "convspace",
    version,
    about = "Finite convergence spaces, their duals and pavings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a space file against the convergence axioms.
    Validate { file: PathBuf },
    /// Closed sets, reflections, regularity and the induced graph.
    Info { file: PathBuf },
    /// The dual on the closed sets.
    Dual {
        file: PathBuf,
        /// Write the tabulated dual as a space file.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Paving numbers at a point.
    Paving {
        file: PathBuf,
        #[arg(long)]
        at: String,
        #[arg(long, default_value = "pavement")]
        kind: PavingKind,
    },
    /// Completeness number relative to a closed set.
    Complete {
        file: PathBuf,
        /// A closed set, e.g. `{b,c}`.
        #[arg(long)]
        target: String,
        #[arg(long)]
        ultra: bool,
    },
    /// Completeness numbers against dual paving numbers, one row per closed set.
    Duality { file: PathBuf },
    /// Continuity and quotient class of a map between two spaces.
    Map {
        map: PathBuf,
        source: PathBuf,
        target: PathBuf,
    },
    /// Run the property suite.
    Suite {
        /// Carrier sizes, e.g. `1..4`.
        #[arg(long, default_value = "1..5")]
        n: String,
        #[arg(long, default_value_t = 250)]
        trials: usize,
        #[arg(long, default_value_t = SuiteParams::default().seed)]
        seed: u64,
        /// Comma-separated property names.
        #[arg(long, value_delimiter = ',')]
        props: Option<Vec<String>>,
    },
}

enum Failure {
    Property,
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn emit(key: impl Display, value: impl Display) {
    println!("{key}={value}");
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<SpaceFile, Failure> {
    let text = read(path)?;
    parse_space(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn point(c: &Convergence, label: &str) -> Result<usize, Failure> {
    Ok(c.carrier().index_of(label)?)
}

fn validate(file: &Path) -> Outcome {
    let text = read(file)?;
    let parsed = parse_space_unchecked(&text).map_err(|e| Failure::Input(format!("{}: {e}", file.display())))?;
    let c = &parsed.convergence;
    let violations = c.validate();
    emit("space", &parsed.name);
    emit("points", c.carrier().size());
    emit("valid", violations.is_empty());
    for (i, v) in violations.iter().enumerate() {
        emit(format!("violation[{i}]"), v.describe(c.carrier()));
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(Failure::Property)
    }
}

fn info(file: &Path) -> Outcome {
    let parsed = load(file)?;
    let c = &parsed.convergence;
    let x = c.carrier();
    let g = graph_of(c);
    let reg = regularity_predicates(c);
    emit("space", &parsed.name);
    emit("points", x.labels().join(" "));
    let closed = c.closed_sets();
    emit("closed_sets", closed.len());
    for (i, s) in closed.members().enumerate() {
        emit(format!("closed[{i}]"), x.format(*s));
    }
    emit("topological", c.is_topological());
    emit("pseudotopology", c.is_pseudotopology());
    emit("star_regular", reg.star_regular);
    emit("bullet_regular", reg.bullet_regular);
    emit("reciprocal", reg.reciprocal);
    emit("roots", x.format(g.roots()));
    emit("ends", x.format(g.ends()));
    emit("grounded", g.is_grounded());
    Ok(())
}

fn dual(file: &Path, out: Option<&Path>) -> Outcome {
    let parsed = load(file)?;
    let d = DualSpace::new(&parsed.convergence)?;
    let dx = d.carrier();
    emit("dual.points", dx.size());
    for i in 0..dx.size() {
        emit(
            format!("dual.point[{i}]"),
            format!(
                "{} = {}",
                dx.label(i),
                parsed.convergence.carrier().format(d.closed_set(i))
            ),
        );
    }
    for i in 0..dx.size() {
        emit(
            format!("dual.lim[{}]", dx.label(i)),
            dx.format(d.convergence().point_limit(i)),
        );
    }
    if let Some(path) = out {
        let table = d.tabulate()?;
        let name = if parsed.name.is_empty() {
            "dual".to_string()
        } else {
            format!("dual-{}", parsed.name)
        };
        fs::write(path, serialize_space(&name, &table))
            .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        emit("dual.emitted", path.display());
    }
    Ok(())
}

fn paving(file: &Path, at: &str, kind: PavingKind) -> Outcome {
    let parsed = load(file)?;
    let c = &parsed.convergence;
    let x = point(c, at)?;
    let r = paving_number(c, x, kind)?;
    emit("kind", kind.name());
    emit("at", at);
    emit("value", r.value);
    print_collection("witness", c, &r.witness);
    Ok(())
}

fn print_collection(key: &str, c: &Convergence, d: &FilterCollection) {
    for (i, f) in d.members().iter().enumerate() {
        emit(format!("{key}[{i}]"), c.carrier().format(f.kernel));
    }
}

fn complete(file: &Path, target: &str, ultra: bool) -> Outcome {
    let parsed = load(file)?;
    let c = &parsed.convergence;
    let a = c.carrier().parse_subset(target)?;
    let strength = if ultra { Strength::Ultra } else { Strength::Plain };
    let r = completeness_number(c, a, strength)?;
    emit("target", c.carrier().format(a));
    emit("strength", if ultra { "ultra" } else { "plain" });
    emit("value", r.value);
    emit("value_with_empty", r.value_with_empty);
    print_collection("witness", c, &r.witness);
    Ok(())
}

fn duality(file: &Path) -> Outcome {
    let parsed = load(file)?;
    let c = &parsed.convergence;
    let rows = duality_check(c)?;
    let mut ok = true;
    for (i, r) in rows.iter().enumerate() {
        let key = format!("row[{i}]");
        emit(format!("{key}.target"), c.carrier().format(r.target));
        emit(format!("{key}.ucompl"), r.ucompl);
        emit(format!("{key}.pave"), r.pave);
        emit(format!("{key}.equal_ultra"), r.equal_ultra);
        emit(format!("{key}.compl"), r.compl);
        emit(format!("{key}.pave_dagger"), r.pave_dagger);
        emit(format!("{key}.equal_plain"), r.equal_plain);
        if r.convention_gap() {
            emit(
                format!("{key}.with_empty"),
                format!("compl={} ucompl={}", r.compl_with_empty, r.ucompl_with_empty),
            );
        }
        ok &= r.equal_ultra && r.equal_plain;
    }
    emit("duality.status", if ok { "equal" } else { "unequal" });
    if ok {
        Ok(())
    } else {
        Err(Failure::Property)
    }
}

fn map(map: &Path, source: &Path, target: &Path) -> Outcome {
    let src = load(source)?;
    let dst = load(target)?;
    let m = parse_map(&read(map)?, &src.convergence, &dst.convergence)
        .map_err(|e| Failure::Input(format!("{}: {e}", map.display())))?;
    emit("onto", m.is_onto());
    let continuous = m.is_continuous();
    emit("continuous", continuous.holds());
    if let Some(w) = continuous.witness() {
        emit("discontinuity", w.describe(src.convergence.carrier()));
    }
    if continuous.holds() && m.is_onto() {
        let class = m.map_class()?;
        emit("almost_open", class.almost_open);
        emit("biquotient", class.biquotient);
        emit("quotient", class.quotient);
    }
    Ok(())
}

fn parse_range(text: &str) -> Result<(usize, usize), Failure> {
    let bad = || Failure::Input(format!("expected a size range like `1..4`, got `{text}`"));
    match text.split_once("..") {
        Some((a, b)) => Ok((
            a.trim().parse().map_err(|_| bad())?,
            b.trim().parse().map_err(|_| bad())?,
        )),
        None => {
            let n = text.trim().parse().map_err(|_| bad())?;
            Ok((n, n))
        }
    }
}

fn suite(n: &str, trials: usize, seed: u64, props: Option<Vec<String>>) -> Outcome {
    let (n_min, n_max) = parse_range(n)?;
    let params = SuiteParams {
        n_min,
        n_max,
        trials,
        seed,
        props,
    };
    let report = run_suite(&params)?;
    print!("{}", report.render());
    eprintln!("suite.wall_ms={}", report.wall_time.as_millis());
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Property)
    }
}

fn configure_threads() -> Result<(), Failure> {
    if let Ok(v) = std::env::var(THREADS_VAR) {
        let threads: usize = v
            .parse()
            .map_err(|_| Failure::Input(format!("{THREADS_VAR} must be a number, got `{v}`")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| Failure::Input(e.to_string()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let outcome = configure_threads().and_then(|()| match cli.command {
        Command::Validate { file } => validate(&file),
        Command::Info { file } => info(&file),
        Command::Dual { file, emit } => dual(&file, emit.as_deref()),
        Command::Paving { file, at, kind } => paving(&file, &at, kind),
        Command::Complete { file, target, ultra } => complete(&file, &target, ultra),
        Command::Duality { file } => duality(&file),
        Command::Map { map: m, source, target } => map(&m, &source, &target),
        Command::Suite { n, trials, seed, props } => suite(&n, trials, seed, props),
    });
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Property) => ExitCode::from(1),
        Err(Failure::Input(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
