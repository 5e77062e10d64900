//! Command-line interface.
//!
//! `run_cli` is the whole program behind `main`: it parses arguments,
//! runs one subcommand, writes reports to the given streams, and returns
//! the process exit code. Keeping it a function over `Write` streams
//! makes every code path testable in-process.
//!
//! Exit codes: 0 success (and true predicates), 1 a checked predicate is
//! false, 2 bad input (unreadable, unparsable, or invalid), 3 search
//! budget exceeded, 4 internal assertion failure.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::degree::FaceSet;
use crate::dot::lattice_to_dot;
use crate::extend::{build_extended, receiving_pattern_check, ExtendError};
use crate::family::{
    invariant_to_t, is_invariant_family, is_o_family, is_t_family, t_to_invariant, FamilyError,
    FamilyKind, SubsetFamily,
};
use crate::format::{
    parse_family, parse_family_lenient, parse_graph, parse_graph_lenient, serialize_family,
    serialize_graph, FamilyDoc, FamilyTag,
};
use crate::graph::{validate, KGraph, VertexSet};
use crate::lattice::{brute_force_families, enumerate_families, hasse, LatticeError, SearchLimits};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Parser)]
#[command(
    name = "kgraph-ideals",
    version,
    about = "Inspect finite higher-rank graphs: validate presentations, compute the \
             vertex-set calculus, enumerate family lattices, and build extended graphs."
)]
struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Human)]
    format: OutputFormat,
    /// Accept unknown fields in input files, with a warning.
    #[arg(long, global = true)]
    lenient: bool,
    /// Worker threads for enumeration; 0 means all available cores.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Human,
    Json,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum KindArg {
    T,
    O,
    Invariant,
}

impl KindArg {
    fn kind(self) -> FamilyKind {
        match self {
            KindArg::T => FamilyKind::T,
            KindArg::O => FamilyKind::O,
            KindArg::Invariant => FamilyKind::Invariant,
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum ConvertTarget {
    Invariant,
    T,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a graph file presents a valid higher-rank graph.
    Validate { graph: PathBuf },
    /// Print the receiver set and tracing set of every color subset.
    Tracing { graph: PathBuf },
    /// Check whether a vertex set is hereditary, saturated, and invariant.
    CheckSet {
        graph: PathBuf,
        /// Comma-separated vertex names, for example `u,v` or `{}`.
        #[arg(long)]
        set: String,
    },
    /// Check whether a family file satisfies a family kind.
    CheckFamily {
        graph: PathBuf,
        family: PathBuf,
        #[arg(long, value_enum)]
        kind: KindArg,
    },
    /// Convert a family between its relative (t) and invariant forms.
    ConvertFamily {
        graph: PathBuf,
        family: PathBuf,
        #[arg(long, value_enum)]
        to: ConvertTarget,
        /// Write the converted family here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// List every family of a kind on the graph.
    Enumerate {
        graph: PathBuf,
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Use the exhaustive reference search instead of the fast one.
        #[arg(long)]
        oracle: bool,
        /// Abort after this many candidate checks.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Enumerate a family lattice and emit its order diagram as DOT.
    Lattice {
        graph: PathBuf,
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Write the DOT text here instead of stdout.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Use the exhaustive reference search instead of the fast one.
        #[arg(long)]
        oracle: bool,
        /// Abort after this many candidate checks.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Build the extended graph of an invariant family.
    Extend {
        graph: PathBuf,
        family: PathBuf,
        /// Write the extended graph here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build the quotient-presenting extended graph of a t family.
    Quotient {
        graph: PathBuf,
        family: PathBuf,
        /// Write the graph here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Validate { .. } => "validate",
            Command::Tracing { .. } => "tracing",
            Command::CheckSet { .. } => "check-set",
            Command::CheckFamily { .. } => "check-family",
            Command::ConvertFamily { .. } => "convert-family",
            Command::Enumerate { .. } => "enumerate",
            Command::Lattice { .. } => "lattice",
            Command::Extend { .. } => "extend",
            Command::Quotient { .. } => "quotient",
        }
    }
}

enum Failure {
    Input(String),
    Predicate(String),
    Budget(String),
    Internal(String),
}

impl Failure {
    fn exit(&self) -> i32 {
        match self {
            Failure::Input(_) => EXIT_INPUT,
            Failure::Predicate(_) => EXIT_FALSE,
            Failure::Budget(_) => EXIT_BUDGET,
            Failure::Internal(_) => EXIT_INTERNAL,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Predicate(m) | Failure::Budget(m) | Failure::Internal(m) => m,
        }
    }
}

enum Payload {
    /// A report, rendered either as text or as its JSON mirror.
    Report { human: String, json: Value },
    /// A complete output document, identical in both formats.
    Doc(String),
}

struct Output {
    exit: i32,
    payload: Payload,
}

fn report(exit: i32, human: String, json: Value) -> Output {
    Output {
        exit,
        payload: Payload::Report { human, json },
    }
}

/// Run the CLI against explicit argument and output streams. Returns the
/// process exit code.
pub fn run_cli<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{rendered}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{rendered}");
                    EXIT_INPUT
                }
            };
        }
    };
    let name = cli.command.name();
    match dispatch(&cli, stderr) {
        Ok(out) => {
            match out.payload {
                Payload::Report { human, json } => match cli.format {
                    OutputFormat::Human => {
                        let _ = writeln!(stdout, "{human}");
                    }
                    OutputFormat::Json => {
                        let _ = writeln!(stdout, "{}", pretty(&json));
                    }
                },
                Payload::Doc(text) => {
                    let _ = write!(stdout, "{text}");
                }
            }
            out.exit
        }
        Err(failure) => {
            let _ = writeln!(stderr, "error: {}", failure.message());
            if cli.format == OutputFormat::Json {
                let j = json!({"command": name, "ok": false, "error": failure.message()});
                let _ = writeln!(stdout, "{}", pretty(&j));
            }
            failure.exit()
        }
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("reports serialize")
}

fn dispatch(cli: &Cli, stderr: &mut dyn Write) -> Result<Output, Failure> {
    match &cli.command {
        Command::Validate { graph } => {
            let g = load_graph(graph, cli.lenient, stderr)?;
            Ok(cmd_validate(&g))
        }
        Command::Tracing { graph } => {
            let g = load_graph(graph, cli.lenient, stderr)?;
            Ok(cmd_tracing(&g))
        }
        Command::CheckSet { graph, set } => {
            let g = load_graph(graph, cli.lenient, stderr)?;
            let v_set = parse_set_arg(&g, set)?;
            Ok(cmd_check_set(&g, v_set))
        }
        Command::CheckFamily {
            graph,
            family,
            kind,
        } => {
            let g = load_graph(graph, cli.lenient, stderr)?;
            let doc = load_family(family, &g, cli.lenient, stderr)?;
            Ok(cmd_check_family(&g, &doc.family, kind.kind()))
        }
        Command::ConvertFamily {
            graph,
            family,
            to,
            output,
        } => {
            let g = load_graph(graph, cli.lenient, stderr)?;
            let doc = load_family(family, &g, cli.lenient, stderr)?;
            cmd_convert(&g, &doc.family, *to, output.as_deref())
        }
        Command::Enumerate {
            graph,
            kind,
            oracle,
            budget,
        } => {
            let g = load_graph(graph, cli.lenient, stderr)?;
            let lat = run_search(&g, kind.kind(), *oracle, *budget, cli.threads)?;
            Ok(cmd_enumerate_report(&g, kind.kind(), *oracle, &lat))
        }
        Command::Lattice {
            graph,
            kind,
            dot,
            oracle,
            budget,
        } => {
            let g = load_graph(graph, cli.lenient, stderr)?;
            let lat = run_search(&g, kind.kind(), *oracle, *budget, cli.threads)?;
            cmd_lattice(&g, kind.kind(), &lat, dot.as_deref())
        }
        Command::Extend {
            graph,
            family,
            output,
        } => {
            let g = load_graph(graph, cli.lenient, stderr)?;
            let doc = load_family(family, &g, cli.lenient, stderr)?;
            let ext = checked_extension(&g, &doc.family)?;
            emit_graph_doc("extend", "extended graph", &ext, output.as_deref())
        }
        Command::Quotient {
            graph,
            family,
            output,
        } => {
            let g = load_graph(graph, cli.lenient, stderr)?;
            let doc = load_family(family, &g, cli.lenient, stderr)?;
            let w = t_to_invariant(&g, &doc.family).map_err(family_failure)?;
            let ext = checked_extension(&g, &w)?;
            emit_graph_doc("quotient", "quotient graph", &ext, output.as_deref())
        }
    }
}

fn load_graph(path: &Path, lenient: bool, stderr: &mut dyn Write) -> Result<KGraph, Failure> {
    let fail = |e: &dyn std::fmt::Display| Failure::Input(format!("{}: {e}", path.display()));
    let text = fs::read_to_string(path).map_err(|e| fail(&e))?;
    let spec = if lenient {
        let (spec, warnings) = parse_graph_lenient(&text).map_err(|e| fail(&e))?;
        for w in warnings {
            let _ = writeln!(stderr, "warning: {}: {w}", path.display());
        }
        spec
    } else {
        parse_graph(&text).map_err(|e| fail(&e))?
    };
    validate(&spec).map_err(|e| fail(&e))
}

fn load_family(
    path: &Path,
    g: &KGraph,
    lenient: bool,
    stderr: &mut dyn Write,
) -> Result<FamilyDoc, Failure> {
    let fail = |e: &dyn std::fmt::Display| Failure::Input(format!("{}: {e}", path.display()));
    let text = fs::read_to_string(path).map_err(|e| fail(&e))?;
    if lenient {
        let (doc, warnings) = parse_family_lenient(&text, g).map_err(|e| fail(&e))?;
        for w in warnings {
            let _ = writeln!(stderr, "warning: {}: {w}", path.display());
        }
        Ok(doc)
    } else {
        parse_family(&text, g).map_err(|e| fail(&e))
    }
}

fn parse_set_arg(g: &KGraph, text: &str) -> Result<VertexSet, Failure> {
    let trimmed = text.trim();
    let inner = trimmed
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .unwrap_or(trimmed);
    let mut set = VertexSet::EMPTY;
    if inner.trim().is_empty() {
        return Ok(set);
    }
    for part in inner.split(',') {
        let name = part.trim();
        if name.is_empty() {
            return Err(Failure::Input(format!("empty vertex name in {text:?}")));
        }
        let v = g
            .vertex(name)
            .ok_or_else(|| Failure::Input(format!("unknown vertex {name:?}")))?;
        set.insert(v);
    }
    Ok(set)
}

fn set_names(g: &KGraph, set: VertexSet) -> Vec<String> {
    let mut names: Vec<String> = set.iter().map(|v| g.vertex_name(v).to_string()).collect();
    names.sort_unstable();
    names
}

fn family_json(g: &KGraph, fam: &SubsetFamily) -> Value {
    let mut map = serde_json::Map::new();
    for (face, set) in fam.components() {
        map.insert(face.to_string(), json!(set_names(g, set)));
    }
    Value::Object(map)
}

fn cmd_validate(g: &KGraph) -> Output {
    let human = format!(
        "valid k-graph: rank {}, vertices {}, edges {}, squares {}",
        g.rank(),
        g.vertex_count(),
        g.edge_count(),
        g.square_count(),
    );
    let json = json!({
        "command": "validate",
        "ok": true,
        "rank": g.rank(),
        "vertices": g.vertex_count(),
        "edges": g.edge_count(),
        "squares": g.square_count(),
    });
    report(EXIT_OK, human, json)
}

fn cmd_tracing(g: &KGraph) -> Output {
    let mut rows = Vec::new();
    let mut faces = Vec::new();
    for face in FaceSet::all_subsets(g.rank()) {
        let w = g.w_set(face);
        let u = g.u_set(face);
        rows.push((face.to_string(), g.render_set(w), g.render_set(u)));
        faces.push(json!({
            "face": face.to_string(),
            "receivers": set_names(g, w),
            "tracing": set_names(g, u),
        }));
    }
    let face_w = rows.iter().map(|r| r.0.len()).max().unwrap_or(0).max(4);
    let recv_w = rows.iter().map(|r| r.1.len()).max().unwrap_or(0).max(9);
    let mut human = format!("{:face_w$}  {:recv_w$}  {}", "face", "receivers", "tracing");
    for (f, w, u) in &rows {
        human.push('\n');
        human.push_str(&format!("{f:face_w$}  {w:recv_w$}  {u}"));
    }
    let json = json!({"command": "tracing", "rank": g.rank(), "faces": faces});
    report(EXIT_OK, human, json)
}

fn cmd_check_set(g: &KGraph, set: VertexSet) -> Output {
    let hereditary = g.is_hereditary(set);
    let saturated = g.is_f_saturated(set);
    let invariant = hereditary && saturated;
    let human = format!(
        "set: {}\nhereditary: {hereditary}\nsaturated: {saturated}\ninvariant: {invariant}",
        g.render_set(set),
    );
    let json = json!({
        "command": "check-set",
        "set": set_names(g, set),
        "hereditary": hereditary,
        "saturated": saturated,
        "invariant": invariant,
    });
    report(if invariant { EXIT_OK } else { EXIT_FALSE }, human, json)
}

fn cmd_check_family(g: &KGraph, fam: &SubsetFamily, kind: FamilyKind) -> Output {
    let holds = match kind {
        FamilyKind::T => is_t_family(g, fam),
        FamilyKind::O => is_o_family(g, fam),
        FamilyKind::Invariant => is_invariant_family(g, fam),
    };
    let human = format!("{kind} family: {holds}");
    let json = json!({"command": "check-family", "kind": kind.to_string(), "holds": holds});
    report(if holds { EXIT_OK } else { EXIT_FALSE }, human, json)
}

fn cmd_convert(
    g: &KGraph,
    fam: &SubsetFamily,
    to: ConvertTarget,
    output: Option<&Path>,
) -> Result<Output, Failure> {
    let (converted, tag) = match to {
        ConvertTarget::Invariant => (
            t_to_invariant(g, fam).map_err(family_failure)?,
            FamilyTag::Kind(FamilyKind::Invariant),
        ),
        ConvertTarget::T => (
            invariant_to_t(g, fam).map_err(family_failure)?,
            FamilyTag::Kind(FamilyKind::T),
        ),
    };
    let text = serialize_family(g, tag, &converted);
    match output {
        Some(path) => {
            write_file(path, &text)?;
            let human = format!("converted to {} family; wrote {}", tag.as_str(), path.display());
            let json = json!({
                "command": "convert-family",
                "to": tag.as_str(),
                "family": family_json(g, &converted),
                "output": path.display().to_string(),
            });
            Ok(report(EXIT_OK, human, json))
        }
        None => Ok(Output {
            exit: EXIT_OK,
            payload: Payload::Doc(text),
        }),
    }
}

fn run_search(
    g: &KGraph,
    kind: FamilyKind,
    oracle: bool,
    budget: Option<u64>,
    threads: usize,
) -> Result<crate::lattice::FamilyLattice, Failure> {
    let mut limits = SearchLimits::default();
    limits.threads = threads;
    if let Some(b) = budget {
        limits.max_candidates = b;
    }
    let result = if oracle {
        brute_force_families(g, kind, &limits)
    } else {
        enumerate_families(g, kind, &limits)
    };
    result.map_err(|e| match e {
        LatticeError::BudgetExceeded { .. } => Failure::Budget(e.to_string()),
        other => Failure::Internal(other.to_string()),
    })
}

fn cmd_enumerate_report(
    g: &KGraph,
    kind: FamilyKind,
    oracle: bool,
    lat: &crate::lattice::FamilyLattice,
) -> Output {
    let mode = if oracle { "oracle" } else { "search" };
    let mut human = format!("{} {kind} families", lat.len());
    for fam in lat.elements() {
        human.push('\n');
        human.push_str(&fam.render(g));
    }
    let json = json!({
        "command": "enumerate",
        "kind": kind.to_string(),
        "mode": mode,
        "count": lat.len(),
        "families": lat.elements().iter().map(|f| family_json(g, f)).collect::<Vec<_>>(),
    });
    report(EXIT_OK, human, json)
}

fn cmd_lattice(
    g: &KGraph,
    kind: FamilyKind,
    lat: &crate::lattice::FamilyLattice,
    dot_path: Option<&Path>,
) -> Result<Output, Failure> {
    let text = lattice_to_dot(g, lat);
    let covers = hasse(lat).len();
    match dot_path {
        Some(path) => {
            write_file(path, &text)?;
            let human = format!(
                "{kind} lattice: {} families, {covers} covers; wrote {}",
                lat.len(),
                path.display(),
            );
            let json = json!({
                "command": "lattice",
                "kind": kind.to_string(),
                "count": lat.len(),
                "covers": covers,
                "output": path.display().to_string(),
            });
            Ok(report(EXIT_OK, human, json))
        }
        None => Ok(Output {
            exit: EXIT_OK,
            payload: Payload::Doc(text),
        }),
    }
}

fn checked_extension(g: &KGraph, w: &SubsetFamily) -> Result<KGraph, Failure> {
    let ext = build_extended(g, w).map_err(|e| match e {
        ExtendError::NotAnInvariantFamily => {
            Failure::Predicate("the family is not an invariant family".into())
        }
        ExtendError::NotATFamily => Failure::Predicate("the family is not a t family".into()),
        ExtendError::Internal(v) => {
            Failure::Internal(format!("extended graph failed validation: {v}"))
        }
    })?;
    if !receiving_pattern_check(g, w, &ext) {
        return Err(Failure::Internal(
            "extended graph failed its receiving-pattern check".into(),
        ));
    }
    Ok(ext)
}

fn emit_graph_doc(
    command: &str,
    label: &str,
    ext: &KGraph,
    output: Option<&Path>,
) -> Result<Output, Failure> {
    let text = serialize_graph(&ext.to_spec());
    match output {
        Some(path) => {
            write_file(path, &text)?;
            let human = format!(
                "{label}: rank {}, vertices {}, edges {}, squares {}; wrote {}",
                ext.rank(),
                ext.vertex_count(),
                ext.edge_count(),
                ext.square_count(),
                path.display(),
            );
            let json = json!({
                "command": command,
                "rank": ext.rank(),
                "vertices": ext.vertex_count(),
                "edges": ext.edge_count(),
                "squares": ext.square_count(),
                "output": path.display().to_string(),
            });
            Ok(report(EXIT_OK, human, json))
        }
        None => Ok(Output {
            exit: EXIT_OK,
            payload: Payload::Doc(text),
        }),
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

/// Precondition failures on family arguments are false predicates, not
/// input errors: the file was well-formed, the family just lacks the
/// property the command needs.
fn family_failure(e: FamilyError) -> Failure {
    match e {
        FamilyError::NotATFamily | FamilyError::NotAnInvariantFamily => {
            Failure::Predicate(e.to_string())
        }
        other => Failure::Internal(other.to_string()),
    }
}
