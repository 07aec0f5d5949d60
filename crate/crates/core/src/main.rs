use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use flowvol::closed::Family;
use flowvol::ct::{evaluate, evaluate_series_certified, evaluate_series_oracle, CtExpression};
use flowvol::cyclic::{enumerate_ew, enumerate_prefix_ew};
use flowvol::dyck::{
    count_dld, count_ld, count_prefixes, enumerate_dld, enumerate_ld, enumerate_prefixes,
    label_counts, LabelFilter,
};
use flowvol::kostant::kpf;
use flowvol::lidskii::{ehrhart_fit, ehrhart_like, volume};
use flowvol::model::{parse_flow, parse_graph_spec};
use flowvol::verify::{ehrhart_paths, run_suite, Bounds, Suite};
use flowvol::{Error, Result};

/// Exact flow-polytope volumes, Kostant partition functions and the
/// labeled-path identities around them.
#[derive(Parser)]
#[command(name = "flowvol", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Kostant partition function K_G(a).
    Kpf {
        /// `ps:<N>`, `car:<N>`, `aug:<k>:<graph>` or `<N>:i-j,...`
        #[arg(long)]
        graph: String,
        /// Comma-separated net flow; the sink entry may be omitted.
        #[arg(long, allow_hyphen_values = true)]
        flow: String,
    },
    /// Normalized volume of the flow polytope F_G(a).
    Volume {
        #[arg(long)]
        graph: String,
        #[arg(long, allow_hyphen_values = true)]
        flow: String,
    },
    /// Ehrhart-like value E_G(k) for a graph or a family member.
    Ehrhart {
        #[arg(long, conflicts_with_all = ["family", "n"], required_unless_present = "family")]
        graph: Option<String>,
        #[arg(long, value_enum, requires = "n")]
        family: Option<FamilyArg>,
        /// Family index: the graph is PS_{n+1} or Car_{n+1}.
        #[arg(long)]
        n: Option<u64>,
        #[arg(long, required_unless_present = "fit")]
        k: Option<u64>,
        #[arg(long, value_enum, default_value_t = Method::Kpf)]
        method: Method,
        /// Interpolate the polynomial through k = 1..=K_MAX instead.
        #[arg(long, value_name = "K_MAX", conflicts_with = "k")]
        fit: Option<usize>,
    },
    /// Count or list labeled words.
    Enumerate {
        #[arg(value_enum)]
        kind: WordKind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: u32,
        /// Only words with exactly this many 0-labeled down steps (ld).
        #[arg(long, conflicts_with = "comp")]
        zeros: Option<usize>,
        /// Label counts a_0,...,a_k (ld, ew; required for prefix).
        #[arg(long, value_delimiter = ',')]
        comp: Option<Vec<usize>>,
        /// Final height (prefix).
        #[arg(long)]
        i: Option<usize>,
        #[arg(long, conflicts_with = "list", required_unless_present = "list")]
        count: bool,
        #[arg(long)]
        list: bool,
    },
    /// Run a verification suite and emit a report.
    Verify {
        #[arg(long, value_parser = parse_suite)]
        suite: Suite,
        #[arg(long)]
        max_n: Option<u64>,
        #[arg(long)]
        max_k: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Write the report here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Constant term of a Laurent expression `m:..; p:i^k,..; d:i-j,..`.
    Ct {
        #[arg(long, allow_hyphen_values = true)]
        expr: String,
        #[arg(long, value_enum, default_value_t = CtMethod::Constraint)]
        method: CtMethod,
        /// Truncation cap for the series evaluator; certified doubling when absent.
        #[arg(long)]
        cap: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Ps,
    Car,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Kpf,
    Ct,
    Enum,
    Closed,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum WordKind {
    Ld,
    Dld,
    Prefix,
    Ew,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CtMethod {
    Constraint,
    Series,
    Both,
}

fn parse_suite(s: &str) -> std::result::Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// How a successful command wants the process to exit.
enum Outcome {
    Ok,
    Failed,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(cli.command, &mut out);
    let flushed = out.flush();
    match (result, flushed) {
        (Ok(Outcome::Ok), Ok(())) => ExitCode::SUCCESS,
        (Ok(Outcome::Failed), Ok(())) => ExitCode::from(1),
        (Err(e), _) => {
            eprintln!("flowvol: {e}");
            ExitCode::from(2)
        }
        (_, Err(e)) => {
            eprintln!("flowvol: {e}");
            ExitCode::from(2)
        }
    }
}

fn io_err(e: io::Error) -> Error {
    Error::domain(format!("i/o: {e}"))
}

fn workers() -> Result<Option<usize>> {
    match std::env::var("FLOWVOL_WORKERS") {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(w) if w > 0 => Ok(Some(w)),
            _ => Err(Error::parse(
                "FLOWVOL_WORKERS",
                format!("expected a positive integer, got {v:?}"),
            )),
        },
    }
}

fn run(command: Command, out: &mut impl Write) -> Result<Outcome> {
    match command {
        Command::Kpf { graph, flow } => {
            let g = parse_graph_spec(&graph)?;
            let a = parse_flow(&flow, g.vertex_count())?;
            writeln!(out, "{}", kpf(&g, &a)?).map_err(io_err)?;
        }
        Command::Volume { graph, flow } => {
            let g = parse_graph_spec(&graph)?;
            let a = parse_flow(&flow, g.vertex_count())?;
            writeln!(out, "{}", volume(&g, &a)?).map_err(io_err)?;
        }
        Command::Ehrhart {
            graph,
            family,
            n,
            k,
            method,
            fit,
        } => return ehrhart(graph, family.zip(n), k, method, fit, out),
        Command::Enumerate {
            kind,
            n,
            k,
            zeros,
            comp,
            i,
            count,
            list: _,
        } => enumerate(kind, n, k, zeros, comp, i, count, out)?,
        Command::Verify {
            suite,
            max_n,
            max_k,
            format,
            out: path,
        } => {
            let report = run_suite(suite, Bounds { max_n, max_k }, workers()?)?;
            match path {
                Some(p) => {
                    let mut f = BufWriter::new(File::create(&p).map_err(io_err)?);
                    write_report(&report, format, &mut f)?;
                    f.flush().map_err(io_err)?;
                }
                None => write_report(&report, format, out)?,
            }
            if report.has_failures() {
                return Ok(Outcome::Failed);
            }
        }
        Command::Ct { expr, method, cap } => {
            let e: CtExpression = expr.parse()?;
            let series = || match cap {
                Some(c) => evaluate_series_oracle(&e, c),
                None => evaluate_series_certified(&e, 8).map(|(v, _)| v),
            };
            match method {
                CtMethod::Constraint => writeln!(out, "{}", evaluate(&e)).map_err(io_err)?,
                CtMethod::Series => writeln!(out, "{}", series()?).map_err(io_err)?,
                CtMethod::Both => {
                    let exact = evaluate(&e);
                    let approx = series()?;
                    let verdict = if exact == approx { "AGREE" } else { "DISAGREE" };
                    writeln!(out, "constraint={exact}\nseries={approx}\n{verdict}")
                        .map_err(io_err)?;
                    if exact != approx {
                        return Ok(Outcome::Failed);
                    }
                }
            }
        }
    }
    Ok(Outcome::Ok)
}

fn write_report(
    report: &flowvol::verify::VerificationReport,
    format: Format,
    out: &mut impl Write,
) -> Result<()> {
    match format {
        Format::Text => report.write_text(out).map_err(io_err),
        Format::Json => report
            .write_json(out)
            .map_err(|e| Error::domain(format!("json: {e}"))),
        Format::Csv => report
            .write_csv(out)
            .map_err(|e| Error::domain(format!("csv: {e}"))),
    }
}

fn ehrhart(
    graph: Option<String>,
    family: Option<(FamilyArg, u64)>,
    k: Option<u64>,
    method: Method,
    fit: Option<usize>,
    out: &mut impl Write,
) -> Result<Outcome> {
    if let Some(k_max) = fit {
        if method != Method::Kpf {
            return Err(Error::domain("--fit only uses the kpf path"));
        }
        let g = match (&graph, family) {
            (Some(spec), _) => parse_graph_spec(spec)?,
            (None, Some((FamilyArg::Ps, n))) => flowvol::model::build_ps(n as usize)?,
            (None, Some((FamilyArg::Car, n))) => flowvol::model::build_car(n as usize)?,
            (None, None) => unreachable!("clap requires a graph or family"),
        };
        for (deg, c) in ehrhart_fit(&g, k_max)?.iter().enumerate() {
            writeln!(out, "k^{deg}: {c}").map_err(io_err)?;
        }
        return Ok(Outcome::Ok);
    }
    let k = k.expect("clap requires --k without --fit");
    if let Some(spec) = graph {
        if method != Method::Kpf {
            return Err(Error::domain(
                "explicit graphs only support --method kpf; use --family for the other paths",
            ));
        }
        let g = parse_graph_spec(&spec)?;
        writeln!(out, "{}", ehrhart_like(&g, k as usize)?).map_err(io_err)?;
        return Ok(Outcome::Ok);
    }
    let (fam, n) = family.expect("clap requires a graph or family");
    let fam = match fam {
        FamilyArg::Ps => Family::Ps,
        FamilyArg::Car => Family::Car,
    };
    let paths = ehrhart_paths(fam, n, k)?;
    let pick = |name: &str| {
        let value = &paths
            .iter()
            .find(|(p, _)| *p == name)
            .expect("known path")
            .1;
        match value.strip_prefix("error: ") {
            Some(msg) => Err(Error::domain(msg.to_string())),
            None => Ok(value.clone()),
        }
    };
    let single = match method {
        Method::Kpf => "kpf",
        Method::Ct => "ct",
        Method::Enum => "enum",
        Method::Closed => "closed",
        Method::All => {
            for (name, value) in &paths {
                writeln!(out, "{name}={value}").map_err(io_err)?;
            }
            let agree = paths.windows(2).all(|w| w[0].1 == w[1].1);
            writeln!(out, "{}", if agree { "AGREE" } else { "DISAGREE" }).map_err(io_err)?;
            return Ok(if agree { Outcome::Ok } else { Outcome::Failed });
        }
    };
    writeln!(out, "{}", pick(single)?).map_err(io_err)?;
    Ok(Outcome::Ok)
}

#[allow(clippy::too_many_arguments)]
fn enumerate(
    kind: WordKind,
    n: usize,
    k: u32,
    zeros: Option<usize>,
    comp: Option<Vec<usize>>,
    i: Option<usize>,
    count: bool,
    out: &mut impl Write,
) -> Result<()> {
    let reject =
        |flag: &str, what: &str| Err(Error::domain(format!("--{flag} does not apply to {what}")));
    if let Some(c) = &comp {
        if c.len() != k as usize + 1 {
            return Err(Error::domain(format!(
                "--comp needs k+1 = {} entries, got {}",
                k + 1,
                c.len()
            )));
        }
    }
    let lines: Vec<String> = match kind {
        WordKind::Ld => {
            if i.is_some() {
                return reject("i", "ld");
            }
            let filter = match (zeros, comp) {
                (Some(d), _) => LabelFilter::Zeros(d),
                (None, Some(c)) => LabelFilter::Composition(c),
                (None, None) => LabelFilter::None,
            };
            if count {
                vec![count_ld(n, k, &filter)?.to_string()]
            } else {
                to_lines(enumerate_ld(n, k, &filter)?)
            }
        }
        WordKind::Dld => {
            if zeros.is_some() {
                return reject("zeros", "dld");
            }
            if comp.is_some() {
                return reject("comp", "dld");
            }
            if i.is_some() {
                return reject("i", "dld");
            }
            if count {
                vec![count_dld(n, k)?.to_string()]
            } else {
                to_lines(enumerate_dld(n, k)?)
            }
        }
        WordKind::Prefix => {
            if zeros.is_some() {
                return reject("zeros", "prefix");
            }
            let i = i.ok_or_else(|| Error::domain("prefix needs --i"))?;
            let c = comp.ok_or_else(|| Error::domain("prefix needs --comp"))?;
            if count {
                vec![count_prefixes(n, i, k, &c)?.to_string()]
            } else {
                to_lines(enumerate_prefixes(n, i, k, &c)?)
            }
        }
        WordKind::Ew => {
            if zeros.is_some() {
                return reject("zeros", "ew");
            }
            let words: Vec<String> = match i {
                Some(i) => enumerate_prefix_ew(n, i, k)?
                    .into_iter()
                    .filter(|w| {
                        comp.as_ref()
                            .is_none_or(|c| &label_counts(w.steps(), k) == c)
                    })
                    .map(|w| w.to_string())
                    .collect(),
                None => enumerate_ew(n, k)
                    .into_iter()
                    .filter(|w| comp.as_ref().is_none_or(|c| &w.label_counts() == c))
                    .map(|w| w.to_string())
                    .collect(),
            };
            if count {
                vec![words.len().to_string()]
            } else {
                words
            }
        }
    };
    for line in lines {
        writeln!(out, "{line}").map_err(io_err)?;
    }
    Ok(())
}

fn to_lines<T: ToString>(items: Vec<T>) -> Vec<String> {
    items.iter().map(ToString::to_string).collect()
}
