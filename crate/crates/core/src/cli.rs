//! Command-line front end. Exit codes: 0 on success, 1 when the answer is
//! negative (no realization, check failed, ...), 2 on bad usage or input.

use std::fmt::Write as _;
use std::io::Read;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::chip_firing::{dhar_reduce, rank_with, rr_report, Divisor, MultiGraph, RankLimits};
use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::matroid::{by_name, enumerate_rank3_simple, fano, non_fano, u2ext, u34, Matroid, MatroidData};
use crate::matroid_divisor::{
    build_harmonic_modification, central_fiber, check_harmonic, classify, genus, levi_graph, matroid_divisor,
    rho_matroid, rr_threshold, two_flat_rho, Classification,
};
use crate::mnev::{bound_check, characteristic_pair, compile, witness_random, witness_with, WitnessOptions};
use crate::monic_slp::{compile_algebra, zinvp_rep, zmodp_rep, MonicRep, PresentedAlgebra};
use crate::projective::{
    collinearity_matroid, frobenius_closed, lifting_verdict, realization_search, AnyConfig, SearchBudget,
    SearchOutcome, VerdictRequest,
};
use crate::with_field;

#[derive(Debug, Parser)]
#[command(name = "matroid-divisors", version, about = "Matroid divisors, realizations and Mnev matroids")]
pub struct Cli {
    #[command(subcommand)]
    command: Option<Command>,
    /// Print a fixed table instead of running a command.
    #[arg(long, value_enum, global = true)]
    table: Option<Table>,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    /// Work limit: search nodes, rank states or witness redraws.
    #[arg(long, global = true)]
    budget: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Table {
    /// Element, flat and flag counts with lifting thresholds.
    Counts,
    /// Element counts of the characteristic-p matroids for 439 <= p <= 1009.
    Bounds,
}

#[derive(Debug, Subcommand)]
enum Command {
    #[command(subcommand)]
    Matroid(MatroidCmd),
    #[command(subcommand)]
    Divisor(DivisorCmd),
    #[command(subcommand)]
    Realize(RealizeCmd),
    #[command(subcommand)]
    Slp(SlpCmd),
    #[command(subcommand)]
    Mnev(MnevCmd),
}

#[derive(Debug, Args)]
struct MatroidSource {
    /// Named matroid: fano, non_fano, u34, u2ext:N, uniform:N, five_point,
    /// two_flat:A,B, four_lines, pg2:Q.
    #[arg(long, short)]
    matroid: Option<String>,
    /// Matroid JSON file, `-` for stdin.
    #[arg(long, short)]
    input: Option<String>,
}

#[derive(Debug, Subcommand)]
enum MatroidCmd {
    /// Counts, genus and Brill-Noether data.
    Info(MatroidSource),
    /// Checks a matroid JSON file and lists every violation.
    Validate {
        #[arg(long, short)]
        input: String,
    },
    /// All simple rank-3 matroids on n elements up to isomorphism.
    Enumerate {
        #[arg(long, short)]
        n: usize,
    },
}

#[derive(Debug, Args)]
struct DivisorSource {
    #[command(flatten)]
    matroid: MatroidSource,
    /// Graph JSON file instead of a matroid's Levi graph.
    #[arg(long)]
    graph: Option<String>,
    /// Divisor JSON file; defaults to D_M for a matroid.
    #[arg(long)]
    divisor: Option<String>,
}

#[derive(Debug, Subcommand)]
enum DivisorCmd {
    /// Baker-Norine rank.
    Rank(DivisorSource),
    /// The q-reduced representative.
    Reduce {
        #[command(flatten)]
        source: DivisorSource,
        #[arg(long)]
        q: String,
        /// Comma-separated vertices to subtract one chip from; flats are
        /// written `[a,b,c]` and may be separated by `;`.
        #[arg(long)]
        minus: Option<String>,
    },
    /// Genus, degree, rho and the lifting threshold of (Γ_M, D_M).
    Rho(MatroidSource),
    /// Position in the list of matroids with nonnegative rho.
    Classify(MatroidSource),
    /// The harmonic modification at one element.
    Harmonic {
        #[command(flatten)]
        source: MatroidSource,
        #[arg(long, short)]
        element: String,
    },
    /// Both sides of Riemann-Roch.
    Rr(DivisorSource),
}

#[derive(Debug, Subcommand)]
enum RealizeCmd {
    /// Backtracking search for a realization over one field.
    Search {
        #[command(flatten)]
        source: MatroidSource,
        #[arg(long, short)]
        field: String,
        /// Coordinate height over Q.
        #[arg(long, default_value_t = 3)]
        height: u32,
    },
    /// Compares a point configuration with a matroid.
    Check {
        #[command(flatten)]
        source: MatroidSource,
        #[arg(long, short)]
        config: String,
        /// Also test closure under the p-power Frobenius.
        #[arg(long)]
        frobenius: Option<u64>,
    },
    /// What bounded search says about lifting in characteristic p.
    Verdict {
        #[command(flatten)]
        source: MatroidSource,
        #[arg(long, short)]
        prime: u32,
        /// Search F_{p^j} for j up to this bound.
        #[arg(long, default_value_t = 2)]
        extensions: u32,
        /// Try F_{p^k} first.
        #[arg(long)]
        degree: Option<u32>,
    },
}

#[derive(Debug, Args)]
struct RepSource {
    /// Representation JSON file, `-` for stdin.
    #[arg(long, short)]
    input: Option<String>,
    /// Built-in representation: zmodp:P or zinvp:P.
    #[arg(long, short)]
    template: Option<String>,
}

#[derive(Debug, Subcommand)]
enum SlpCmd {
    /// Presentation JSON to a monic representation.
    Compile {
        #[command(flatten)]
        source: RepSource,
    },
    /// Symbolic checks of a representation.
    Validate {
        #[command(flatten)]
        source: RepSource,
    },
    /// Values and degeneracy flags at a point.
    Eval {
        #[command(flatten)]
        source: RepSource,
        #[arg(long, short)]
        field: String,
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        /// Comma-separated values of y_1..y_n.
        #[arg(long, allow_hyphen_values = true)]
        y: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
enum MnevCmd {
    /// The matroid of a representation with its count certificate.
    Compile {
        #[command(flatten)]
        source: RepSource,
    },
    /// An exact realization at a point of the algebra.
    Witness {
        #[command(flatten)]
        source: RepSource,
        #[arg(long, short)]
        field: String,
        /// Value of t; drawn at random when absent.
        #[arg(long, allow_hyphen_values = true)]
        t: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        y: Option<String>,
    },
    /// Element counts against p.
    Bounds {
        #[arg(long, short)]
        prime: Option<u32>,
        /// Check every prime in FROM..=TO.
        #[arg(long, num_args = 2, value_names = ["FROM", "TO"])]
        range: Option<Vec<u32>>,
    },
    /// The matroids for Z/p and Z[1/p] side by side.
    Pair {
        #[arg(long, short)]
        prime: u32,
    },
}

/// Result of a command: text for stdout and whether the answer was positive.
struct Outcome {
    text: String,
    positive: bool,
}

impl Outcome {
    fn ok(text: String) -> Outcome {
        Outcome { text, positive: true }
    }

    fn verdict(text: String, positive: bool) -> Outcome {
        Outcome { text, positive }
    }
}

/// Runs the CLI on `args` (program name first), writing to stdout/stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            if !out.text.ends_with('\n') && !out.text.is_empty() {
                println!();
            }
            if out.positive {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Argument(_) | Error::Format(_) => 2,
                _ => 1,
            }
        }
    }
}

fn execute(cli: &Cli) -> Result<Outcome> {
    if let Some(t) = cli.table {
        return Ok(Outcome::ok(match t {
            Table::Counts => count_table(),
            Table::Bounds => bound_table(439, 1009)?,
        }));
    }
    let Some(cmd) = &cli.command else {
        return Err(Error::Argument("a subcommand or --table is required; see --help".into()));
    };
    match cmd {
        Command::Matroid(c) => matroid_cmd(cli, c),
        Command::Divisor(c) => divisor_cmd(cli, c),
        Command::Realize(c) => realize_cmd(cli, c),
        Command::Slp(c) => slp_cmd(cli, c),
        Command::Mnev(c) => mnev_cmd(cli, c),
    }
}

/// Fixed numerology of the named matroids.
pub fn count_table() -> String {
    let mut s = String::new();
    for (name, m) in [("fano", fano()), ("non_fano", non_fano())] {
        let c = m.counts();
        writeln!(s, "{name}: counts ({},{},{}) threshold {}", c.n, c.l, c.m, rr_threshold(&m)).unwrap();
    }
    let m = u34();
    writeln!(s, "u34: (g,d,rho) = ({},{},{})", genus(&m), m.len(), rho_matroid(&m)).unwrap();
    for n in 4..=10 {
        writeln!(s, "rho_matroid(u2ext({n})) = {}", rho_matroid(&u2ext(n))).unwrap();
    }
    for (a, b) in [(2, 2), (2, 3)] {
        writeln!(s, "two_flat_rho({a},{b}) = {}", two_flat_rho(a, b)).unwrap();
    }
    s
}

pub fn bound_table(from: u32, to: u32) -> Result<String> {
    let mut s = String::new();
    for p in crate::field::primes_up_to(to as u64).into_iter().filter(|&p| p >= from as u64) {
        writeln!(s, "{}", bound_check(p as u32)?).unwrap();
    }
    Ok(s)
}

fn read_input(path: &str) -> Result<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Error::Argument(format!("stdin: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| Error::Argument(format!("{path}: {e}")))
}

fn read_json(path: &str) -> Result<Value> {
    serde_json::from_str(&read_input(path)?).map_err(|e| Error::Format(format!("{path}: {e}")))
}

fn load_matroid(src: &MatroidSource) -> Result<Matroid> {
    match (&src.matroid, &src.input) {
        (Some(name), None) => by_name(name),
        (None, Some(path)) => Matroid::from_json(&read_json(path)?),
        _ => Err(Error::Argument("give exactly one of --matroid and --input".into())),
    }
}

fn load_rep(src: &RepSource) -> Result<MonicRep> {
    match (&src.input, &src.template) {
        (Some(path), None) => MonicRep::from_json(&read_json(path)?),
        (None, Some(t)) => {
            let (kind, p) = t
                .split_once(':')
                .ok_or_else(|| Error::Argument(format!("--template expects zmodp:P or zinvp:P, got `{t}`")))?;
            let p: u32 = p.trim().parse().map_err(|_| Error::Argument(format!("bad prime in `{t}`")))?;
            match kind {
                "zmodp" => zmodp_rep(p),
                "zinvp" => zinvp_rep(p),
                _ => Err(Error::Argument(format!("unknown template `{kind}`"))),
            }
        }
        _ => Err(Error::Argument("give exactly one of --input and --template".into())),
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize")
}

fn parse_elem<F: Field>(f: &F, s: &str) -> Result<F::Elem> {
    let v = serde_json::from_str(s.trim()).unwrap_or_else(|_| Value::String(s.trim().to_string()));
    f.elem_from_json(&v).map_err(|e| Error::Argument(e.to_string()))
}

fn parse_elems<F: Field>(f: &F, s: Option<&str>) -> Result<Vec<F::Elem>> {
    match s {
        None => Ok(Vec::new()),
        Some(s) => s.split(',').filter(|x| !x.trim().is_empty()).map(|x| parse_elem(f, x)).collect(),
    }
}

fn limits(cli: &Cli) -> RankLimits {
    let mut l = RankLimits::default();
    if let Some(b) = cli.budget {
        l.max_states = b as usize;
    }
    l
}

fn matroid_cmd(cli: &Cli, cmd: &MatroidCmd) -> Result<Outcome> {
    match cmd {
        MatroidCmd::Info(src) => {
            let m = load_matroid(src)?;
            let c = m.counts();
            Ok(Outcome::ok(match cli.format {
                Format::Json => pretty(&json!({
                    "matroid": m.to_json(),
                    "counts": c,
                    "genus": genus(&m),
                    "rho": rho_matroid(&m),
                    "threshold": rr_threshold(&m),
                })),
                Format::Dot => levi_graph(&m).graph.to_dot(Some(&matroid_divisor(&m))),
                Format::Text => {
                    let mut s = format!(
                        "elements {}\nflats {}\nflags {}\ngenus {}\nrho {}\nthreshold {}\n",
                        c.n,
                        c.l,
                        c.m,
                        genus(&m),
                        rho_matroid(&m),
                        rr_threshold(&m)
                    );
                    for f in 0..m.flats().len() {
                        if m.flats()[f].len() >= 3 {
                            writeln!(s, "line {}", m.flat_names(f).join(" ")).unwrap();
                        }
                    }
                    s
                }
            }))
        }
        MatroidCmd::Validate { input } => {
            let data: MatroidData =
                serde_json::from_value(read_json(input)?).map_err(|e| Error::Format(e.to_string()))?;
            let violations = crate::matroid::validate(&data);
            let text = match cli.format {
                Format::Json => pretty(&json!({
                    "valid": violations.is_empty(),
                    "violations": violations.iter().map(ToString::to_string).collect::<Vec<_>>(),
                })),
                _ if violations.is_empty() => "valid".into(),
                _ => violations.iter().map(|v| format!("{v}\n")).collect(),
            };
            Ok(Outcome::verdict(text, violations.is_empty()))
        }
        MatroidCmd::Enumerate { n } => {
            let ms = enumerate_rank3_simple(*n)?;
            Ok(Outcome::ok(match cli.format {
                Format::Json => pretty(&Value::Array(ms.iter().map(Matroid::to_json).collect())),
                _ => {
                    let mut s = format!("{} matroids on {n} elements\n", ms.len());
                    for m in &ms {
                        let lines: Vec<String> = (0..m.flats().len())
                            .filter(|&f| m.flats()[f].len() >= 3)
                            .map(|f| m.flat_names(f).join(""))
                            .collect();
                        writeln!(s, "rho {:>3}  {}", rho_matroid(m), lines.join(" ")).unwrap();
                    }
                    s
                }
            }))
        }
    }
}

/// Graph and divisor named by the flags; the Levi graph and `D_M` of a
/// matroid unless overridden.
fn load_divisor(src: &DivisorSource) -> Result<(MultiGraph, Divisor)> {
    let graph = match &src.graph {
        Some(path) => {
            if src.matroid.matroid.is_some() || src.matroid.input.is_some() {
                return Err(Error::Argument("--graph excludes --matroid and --input".into()));
            }
            MultiGraph::from_json(&read_json(path)?)?
        }
        None => levi_graph(&load_matroid(&src.matroid)?).graph,
    };
    let d = match &src.divisor {
        Some(path) => Divisor::from_json(&graph, &read_json(path)?)?,
        None if src.graph.is_none() => {
            let m = load_matroid(&src.matroid)?;
            matroid_divisor(&m)
        }
        None => return Err(Error::Argument("--graph needs --divisor".into())),
    };
    Ok((graph, d))
}

fn divisor_text(g: &MultiGraph, d: &Divisor, format: Format) -> String {
    match format {
        Format::Json => pretty(&d.to_json(g)),
        Format::Dot => g.to_dot(Some(d)),
        Format::Text => d.display(g),
    }
}

fn divisor_cmd(cli: &Cli, cmd: &DivisorCmd) -> Result<Outcome> {
    match cmd {
        DivisorCmd::Rank(src) => {
            let (g, d) = load_divisor(src)?;
            let r = rank_with(&g, &d, limits(cli))?;
            Ok(Outcome::ok(match cli.format {
                Format::Json => pretty(&json!({"rank": r, "degree": d.degree(), "genus": g.genus()})),
                _ => r.to_string(),
            }))
        }
        DivisorCmd::Reduce { source, q, minus } => {
            let (g, mut d) = load_divisor(source)?;
            for v in split_vertices(minus.as_deref().unwrap_or("")) {
                d.add_point(g.vertex_index(&v)?, -1);
            }
            let red = dhar_reduce(&g, &d, g.vertex_index(q)?);
            Ok(Outcome::ok(divisor_text(&g, &red.divisor, cli.format)))
        }
        DivisorCmd::Rho(src) => {
            let m = load_matroid(src)?;
            let (g, d, rho) = (genus(&m), m.len(), rho_matroid(&m));
            let t = rr_threshold(&m);
            Ok(Outcome::ok(match cli.format {
                Format::Json => pretty(&json!({"genus": g, "degree": d, "rho": rho, "threshold": t})),
                _ => format!("g {g}\nd {d}\nrho {rho}\nthreshold {t}\n"),
            }))
        }
        DivisorCmd::Classify(src) => {
            let m = load_matroid(src)?;
            let c = classify(&m);
            let text = match cli.format {
                Format::Json => pretty(&json!({"class": c, "case": c.case(), "rho": rho_matroid(&m)})),
                _ => c.describe(),
            };
            Ok(Outcome::verdict(text, c != Classification::NotInList))
        }
        DivisorCmd::Harmonic { source, element } => {
            let m = load_matroid(source)?;
            let e = m.index_of(element)?;
            let h = build_harmonic_modification(&m, e)?;
            let check = check_harmonic(&h);
            let text = match cli.format {
                Format::Dot => h.to_dot(),
                Format::Json => pretty(&json!({
                    "harmonic": check.is_ok(),
                    "error": check.as_ref().err().map(ToString::to_string),
                    "central_fiber": central_fiber(&h).to_json(&h.levi.graph),
                    "local_degree": h.levi.graph.vertices().iter().cloned()
                        .zip(h.local_degree.iter().map(|&d| json!(d)))
                        .collect::<serde_json::Map<String, Value>>(),
                })),
                Format::Text => {
                    let mut s = match &check {
                        Ok(()) => "harmonic\n".to_string(),
                        Err(e) => format!("not harmonic: {e}\n"),
                    };
                    writeln!(s, "central fiber {}", central_fiber(&h).display(&h.levi.graph)).unwrap();
                    writeln!(s, "local degree at {element}: {}", h.local_degree[h.levi.element_vertex(e)]).unwrap();
                    s
                }
            };
            Ok(Outcome::verdict(text, check.is_ok()))
        }
        DivisorCmd::Rr(src) => {
            let (g, d) = load_divisor(src)?;
            let r = rr_report(&g, &d)?;
            let text = match cli.format {
                Format::Json => pretty(&serde_json::to_value(&r).expect("serializable")),
                _ => format!(
                    "r(D) = {}, r(K-D) = {}, deg(D) + 1 - g = {}: {}",
                    r.rank,
                    r.dual_rank,
                    r.degree + 1 - r.genus,
                    if r.holds { "holds" } else { "fails" }
                ),
            };
            Ok(Outcome::verdict(text, r.holds))
        }
    }
}

/// Splits `a,b,[c,d,e]` at commas outside brackets; `;` always separates.
fn split_vertices(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut depth = 0;
    for ch in s.chars() {
        match ch {
            '[' => {
                depth += 1;
                cur.push(ch);
            }
            ']' => {
                depth -= 1;
                cur.push(ch);
            }
            ',' if depth == 0 => out.push(std::mem::take(&mut cur)),
            ';' => out.push(std::mem::take(&mut cur)),
            _ => cur.push(ch),
        }
    }
    out.push(cur);
    out.into_iter().map(|v| v.trim().to_string()).filter(|v| !v.is_empty()).collect()
}

fn realize_cmd(cli: &Cli, cmd: &RealizeCmd) -> Result<Outcome> {
    let mut budget = SearchBudget::default();
    if let Some(b) = cli.budget {
        budget.max_nodes = b;
    }
    match cmd {
        RealizeCmd::Search { source, field, height } => {
            let m = load_matroid(source)?;
            budget.height = *height;
            let f = FieldSpec::parse(field)?.build()?;
            with_field!(f, f => {
                let out = realization_search(&m, &f, budget);
                let text = match (&out, cli.format) {
                    (SearchOutcome::Found(c), Format::Json) => pretty(&c.to_json()),
                    (SearchOutcome::Found(c), _) => {
                        let mut s = format!("found over {}\n", f.spec());
                        for i in 0..c.len() {
                            let coords: Vec<String> = c.points[i].coords().iter().map(|x| f.elem_to_string(x)).collect();
                            writeln!(s, "{} ({})", m.element(i), coords.join(":")).unwrap();
                        }
                        s
                    }
                    (_, Format::Json) => pretty(&json!({"result": out.label()})),
                    _ => out.label().to_string(),
                };
                Ok(Outcome::verdict(text, out.found().is_some()))
            })
        }
        RealizeCmd::Check { source, config, frobenius } => {
            let m = load_matroid(source)?;
            let cfg = AnyConfig::from_json(&read_json(config)?)?;
            let got = cfg.collinearity_matroid()?;
            let same = got.len() == m.len() && got.relabeled(m.elements().to_vec())? == m;
            let closed = match (frobenius, &cfg) {
                (None, _) => None,
                (Some(p), AnyConfig::F(c)) => Some(frobenius_closed(c, *p)?),
                (Some(_), AnyConfig::Q(_)) => Some(true),
            };
            let positive = same && closed != Some(false);
            let text = match cli.format {
                Format::Json => pretty(&json!({"matches": same, "frobenius_closed": closed})),
                _ => {
                    let mut s = if same { "match".to_string() } else { "mismatch".to_string() };
                    if let Some(c) = closed {
                        s += if c { "\nfrobenius closed" } else { "\nnot frobenius closed" };
                    }
                    s
                }
            };
            Ok(Outcome::verdict(text, positive))
        }
        RealizeCmd::Verdict { source, prime, extensions, degree } => {
            let m = load_matroid(source)?;
            let req = VerdictRequest { characteristic: *prime, extension_bound: *extensions, field_degree: *degree, budget };
            let v = lifting_verdict(&m, req)?;
            let text = match cli.format {
                Format::Json => pretty(&v.to_json()),
                _ => v.label(),
            };
            Ok(Outcome::verdict(text, matches!(v, crate::projective::LiftingVerdict::Lifts { .. })))
        }
    }
}

fn slp_cmd(cli: &Cli, cmd: &SlpCmd) -> Result<Outcome> {
    match cmd {
        SlpCmd::Compile { source } => {
            let rep = match (&source.input, &source.template) {
                (Some(path), None) => compile_algebra(&PresentedAlgebra::from_json(&read_json(path)?)?)?,
                _ => load_rep(source)?,
            };
            Ok(Outcome::ok(match cli.format {
                Format::Json => pretty(&rep.to_json()),
                _ => rep.to_text(),
            }))
        }
        SlpCmd::Validate { source } => {
            let rep = load_rep(source)?;
            let violations = rep.validate();
            let diffs = if violations.is_empty() { rep.equality_differences()? } else { Vec::new() };
            let c = rep.counts();
            let text = match cli.format {
                Format::Json => pretty(&json!({
                    "valid": violations.is_empty(),
                    "violations": violations.iter().map(ToString::to_string).collect::<Vec<_>>(),
                    "counts": c,
                    "equality_differences": diffs.iter().map(ToString::to_string).collect::<Vec<_>>(),
                })),
                _ => {
                    let mut s = if violations.is_empty() { "valid\n".to_string() } else { String::new() };
                    for v in &violations {
                        writeln!(s, "{v}").unwrap();
                    }
                    writeln!(s, "n {} a {} m {} o {} e {} i {}", c.n, c.a, c.m, c.o, c.e, c.i).unwrap();
                    for (&(i, j), d) in rep.eq.iter().zip(&diffs) {
                        writeln!(s, "x{i} - x{j} = {d}").unwrap();
                    }
                    s
                }
            };
            Ok(Outcome::verdict(text, violations.is_empty()))
        }
        SlpCmd::Eval { source, field, t, y } => {
            let rep = load_rep(source)?;
            let f = FieldSpec::parse(field)?.build()?;
            with_field!(f, f => {
                let t = parse_elem(&f, t)?;
                let y = parse_elems(&f, y.as_deref())?;
                let ev = rep.eval_at(&f, &y, &t)?;
                let text = match cli.format {
                    Format::Json => pretty(&json!({
                        "values": ev.values.iter().map(|v| f.elem_to_json(v)).collect::<Vec<_>>(),
                        "flags": ev.flags,
                    })),
                    _ => {
                        let mut s = String::new();
                        for (i, v) in ev.values.iter().enumerate() {
                            writeln!(s, "x{i} = {}", f.elem_to_string(v)).unwrap();
                        }
                        for flag in &ev.flags {
                            writeln!(s, "flag {}", serde_json::to_string(flag).expect("serializable")).unwrap();
                        }
                        s
                    }
                };
                Ok(Outcome::verdict(text, ev.is_clean()))
            })
        }
    }
}

fn mnev_cmd(cli: &Cli, cmd: &MnevCmd) -> Result<Outcome> {
    match cmd {
        MnevCmd::Compile { source } => {
            let c = compile(&load_rep(source)?)?;
            Ok(Outcome::ok(match cli.format {
                Format::Json => pretty(&c.to_json()),
                Format::Dot => levi_graph(&c.matroid).graph.to_dot(Some(&matroid_divisor(&c.matroid))),
                Format::Text => {
                    let mut s = format!("{}\n", c.certificate);
                    writeln!(s, "lines {}", c.lines.len()).unwrap();
                    for l in &c.forced {
                        let names: Vec<&str> = l.iter().map(|&e| c.matroid.element(e)).collect();
                        writeln!(s, "forced line {}", names.join(" ")).unwrap();
                    }
                    s
                }
            }))
        }
        MnevCmd::Witness { source, field, t, y } => {
            let c = compile(&load_rep(source)?)?;
            let f = FieldSpec::parse(field)?.build()?;
            let mut opts = WitnessOptions::default();
            if let Some(b) = cli.budget {
                opts.max_redraws = b as usize;
            }
            with_field!(f, f => {
                let w = match t {
                    Some(t) => {
                        let t = parse_elem(&f, t)?;
                        let y = parse_elems(&f, y.as_deref())?;
                        witness_with(&c, &f, &y, &t, cli.seed, opts)
                    }
                    None => witness_random(&c, &f, cli.seed, opts),
                };
                let w = match w {
                    Ok(w) => w,
                    Err(e @ (Error::Argument(_) | Error::Format(_) | Error::InvalidRep(_))) => return Err(e),
                    Err(e) => return Ok(Outcome::verdict(format!("no witness: {e}"), false)),
                };
                let round_trip = collinearity_matroid(&w.config)? == c.matroid;
                let text = match cli.format {
                    Format::Json => pretty(&w.config.to_json()),
                    _ => format!(
                        "witness over {}: {} points, t = {}, {} redraws, round trip {}",
                        f.spec(),
                        w.config.len(),
                        f.elem_to_string(&w.values[0]),
                        w.redraws,
                        if round_trip { "ok" } else { "FAILED" }
                    ),
                };
                Ok(Outcome::verdict(text, round_trip))
            })
        }
        MnevCmd::Bounds { prime, range } => {
            let primes: Vec<u32> = match (prime, range) {
                (Some(p), None) => vec![*p],
                (None, Some(r)) => crate::field::primes_up_to(r[1] as u64)
                    .into_iter()
                    .filter(|&p| p >= r[0] as u64)
                    .map(|p| p as u32)
                    .collect(),
                _ => return Err(Error::Argument("give exactly one of --prime and --range".into())),
            };
            let reports = primes.iter().map(|&p| bound_check(p)).collect::<Result<Vec<_>>>()?;
            let all = reports.iter().all(|r| r.pass);
            let text = match cli.format {
                Format::Json => pretty(&serde_json::to_value(&reports).expect("serializable")),
                _ => reports.iter().map(|r| format!("{r}\n")).collect(),
            };
            Ok(Outcome::verdict(text, all))
        }
        MnevCmd::Pair { prime } => {
            let pair = characteristic_pair(*prime)?;
            let text = match cli.format {
                Format::Json => pretty(&json!({
                    "zmodp": pair.zmodp.to_json(),
                    "zinvp": pair.zinvp.to_json(),
                    "degrees": [pair.divisors.0.degree(), pair.divisors.1.degree()],
                })),
                _ => format!(
                    "Z/{p}: {} elements, deg D = {}\n  {}\nZ[1/{p}]: {} elements, deg D' = {}\n  {}\n",
                    pair.zmodp.matroid.len(),
                    pair.divisors.0.degree(),
                    pair.zmodp.certificate,
                    pair.zinvp.matroid.len(),
                    pair.divisors.1.degree(),
                    pair.zinvp.certificate,
                    p = prime
                ),
            };
            Ok(Outcome::ok(text))
        }
    }
}
