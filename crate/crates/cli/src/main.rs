use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use semiderive::count::{right_identity_order, simplex_size};
use semiderive::jordan::{claimed_closed_set, leibniz_check, leibniz_scan, type_jordan_table, type_mult_table, TypeTable};
use semiderive::simplex::all_types;
use semiderive::toeplitz::{
    jordan_leibniz_scan, ordinary_leibniz_scan, ordinary_leibniz_witness, ScanReport, SemiringVisitor,
};
use semiderive::verifier::{
    claim_ids, full_report, run_corollary, run_example, run_lemma, run_lift, run_proposition, run_theorem_commute,
    ClaimResult, ClaimVerdict, Report, ReportConfig,
};
use semiderive::{ChainEndo, IdempotentSemiring, JordanMap, SemiringSelector, SimplexSpec};
use serde_json::{json, Value};

const OUT_ENV: &str = "SEMIDERIVE_OUT";

#[derive(Parser, Debug)]
#[command(name = "semiderive", version, about = "Jordan derivations on endomorphism semirings of finite chains")]
struct Cli {
    /// Output format; reports default to json, everything else to text.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for the parallel scans.
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    parallel: Option<u16>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Arithmetic on single endomorphisms of a chain.
    #[command(subcommand)]
    Endo(EndoCommand),
    /// Elements, faces and counts of a simplex.
    #[command(subcommand)]
    Simplex(SimplexCommand),
    /// Jordan multiplication maps.
    #[command(subcommand)]
    Jordan(JordanCommand),
    /// Multiplication or Jordan table of the triangle types.
    Table(TableArgs),
    /// Verify a single claim.
    #[command(subcommand)]
    Check(CheckCommand),
    /// Upper-triangular Toeplitz matrices over a coefficient semiring.
    #[command(subcommand)]
    Toeplitz(ToeplitzCommand),
    /// Full verification report.
    #[command(subcommand)]
    Report(ReportCommand),
}

#[derive(Args, Debug)]
struct ChainArgs {
    /// Chain size.
    #[arg(long)]
    n: usize,
    /// Run-length form, e.g. "1_5 5_2".
    #[arg(long)]
    alpha: String,
}

#[derive(Subcommand, Debug)]
enum EndoCommand {
    /// Value of alpha at a point.
    Eval {
        #[command(flatten)]
        chain: ChainArgs,
        #[arg(long)]
        x: usize,
    },
    /// Pointwise maximum.
    Add {
        #[command(flatten)]
        chain: ChainArgs,
        #[arg(long)]
        beta: String,
    },
    /// Product: alpha first, then beta.
    Mul {
        #[command(flatten)]
        chain: ChainArgs,
        #[arg(long)]
        beta: String,
    },
}

#[derive(Args, Debug)]
struct SimplexArg {
    /// Simplex spec, e.g. "n=7;A=1,3,5".
    #[arg(long, value_parser = parse_simplex)]
    simplex: SimplexSpec,
}

#[derive(Subcommand, Debug)]
enum SimplexCommand {
    /// Every element with its type.
    List(SimplexArg),
    /// Every face, by dimension.
    Faces(SimplexArg),
    /// Size, right identities and type-class sizes against their formulas.
    Census(SimplexArg),
}

#[derive(Subcommand, Debug)]
enum JordanCommand {
    /// One value of the Jordan map of alpha.
    Apply {
        #[command(flatten)]
        simplex: SimplexArg,
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
    },
    /// Values of one or more Jordan maps over the listed (default: all) elements.
    Table {
        #[command(flatten)]
        simplex: SimplexArg,
        #[arg(long, required = true)]
        alpha: Vec<String>,
        #[arg(long)]
        beta: Vec<String>,
    },
    /// Leibniz rule for one pair, or over the claimed closed set (or the whole simplex).
    Check {
        #[command(flatten)]
        simplex: SimplexArg,
        #[arg(long)]
        alpha: String,
        #[arg(long, requires = "gamma")]
        beta: Option<String>,
        #[arg(long, requires = "beta")]
        gamma: Option<String>,
        /// Scan the whole simplex instead of the claimed closed set.
        #[arg(long, conflicts_with = "beta")]
        whole: bool,
    },
}

#[derive(Args, Debug)]
struct TableArgs {
    #[arg(long, value_enum)]
    kind: TableChoice,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableChoice {
    Mult,
    Jordan,
}

#[derive(Subcommand, Debug)]
enum CheckCommand {
    /// Propositions 1-14.
    Prop {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=14))]
        id: u8,
        #[command(flatten)]
        simplex: SimplexArg,
    },
    /// Theorems 1-3.
    Theorem {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        id: u8,
        #[arg(long, value_parser = parse_simplex)]
        simplex: Option<SimplexSpec>,
    },
    /// Lemmas 1-2.
    Lemma {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        id: u8,
        #[arg(long, value_parser = parse_simplex)]
        simplex: Option<SimplexSpec>,
    },
    /// Worked examples 1-2 against their printed tables.
    Example {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        id: u8,
    },
    /// The upper types form a Jordan ideal.
    Corollary,
}

#[derive(Subcommand, Debug)]
enum ToeplitzCommand {
    /// Scan every triple (or a seeded sample) for a Leibniz-type identity.
    Check {
        #[arg(long, value_parser = parse_semiring)]
        semiring: SemiringSelector,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Identity::Jordan)]
        identity: Identity,
    },
    /// First triple breaking the ordinary Leibniz rule.
    Witness {
        #[arg(long, value_parser = parse_semiring)]
        semiring: SemiringSelector,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Identity {
    Jordan,
    Ordinary,
}

#[derive(Subcommand, Debug)]
enum ReportCommand {
    /// Every claim on the default simplices.
    Full {
        /// Keep only these claim ids.
        #[arg(long)]
        id: Vec<String>,
        /// Replace the default simplices.
        #[arg(long, value_parser = parse_simplex)]
        simplex: Vec<SimplexSpec>,
        /// Leave out the Toeplitz checks.
        #[arg(long)]
        no_toeplitz: bool,
    },
}

fn parse_simplex(text: &str) -> Result<SimplexSpec, String> {
    text.parse().map_err(|e: semiderive::Error| e.to_string())
}

fn parse_semiring(text: &str) -> Result<SemiringSelector, String> {
    text.parse().map_err(|e: semiderive::Error| e.to_string())
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Io(String),
}

impl From<semiderive::Error> for Failure {
    fn from(e: semiderive::Error) -> Self {
        Self::Usage(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Self::Io(e.to_string())
    }
}

/// Rendered output plus whether the requested check held.
struct Outcome {
    body: String,
    holds: bool,
}

impl Outcome {
    fn ok(body: String) -> Self {
        Self { body, holds: true }
    }
}

type CmdResult = Result<Outcome, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.parallel {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads.into()).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(outcome) => {
            if let Err(Failure::Io(msg) | Failure::Usage(msg)) = emit(&cli, &outcome.body) {
                eprintln!("error: {msg}");
                return ExitCode::from(2);
            }
            ExitCode::from(if outcome.holds { 0 } else { 1 })
        }
        Err(Failure::Usage(msg)) | Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn emit(cli: &Cli, body: &str) -> Result<(), Failure> {
    let path = match (&cli.out, &cli.command) {
        (Some(path), _) => Some(path.clone()),
        (None, Command::Report(_)) => std::env::var_os(OUT_ENV).map(|dir| {
            let ext = match cli.format.unwrap_or(Format::Json) {
                Format::Json => "json",
                Format::Text => "txt",
                Format::Csv => "csv",
            };
            PathBuf::from(dir).join(format!("report.{ext}"))
        }),
        (None, _) => None,
    };
    match path {
        Some(path) => {
            if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                fs::create_dir_all(parent).map_err(|e| Failure::Io(format!("{}: {e}", parent.display())))?;
            }
            fs::write(&path, body).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
            eprintln!("wrote {}", path.display());
        }
        None => print!("{body}"),
    }
    Ok(())
}

fn run(cli: &Cli) -> CmdResult {
    let format = cli.format.unwrap_or(Format::Text);
    match &cli.command {
        Command::Endo(cmd) => endo(cmd, format),
        Command::Simplex(cmd) => simplex(cmd, format),
        Command::Jordan(cmd) => jordan(cmd, format),
        Command::Table(args) => table(args.kind, format),
        Command::Check(cmd) => check(cmd, format),
        Command::Toeplitz(cmd) => toeplitz(cmd, format),
        Command::Report(ReportCommand::Full { id, simplex, no_toeplitz }) => {
            report(id, simplex, *no_toeplitz, cli.format.unwrap_or(Format::Json))
        }
    }
}

fn line(text: impl AsRef<str>) -> String {
    format!("{}\n", text.as_ref())
}

fn json_body(value: &Value) -> String {
    line(serde_json::to_string_pretty(value).expect("plain JSON"))
}

fn csv_body(header: &[String], rows: &[Vec<String>]) -> Result<String, Failure> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(header)?;
    for row in rows {
        writer.write_record(row)?;
    }
    let bytes = writer.into_inner().map_err(|e| Failure::Io(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv of UTF-8 fields"))
}

fn single(value: String, format: Format) -> CmdResult {
    Ok(Outcome::ok(match format {
        Format::Json => json_body(&json!(value)),
        Format::Text | Format::Csv => line(value),
    }))
}

fn endo(cmd: &EndoCommand, format: Format) -> CmdResult {
    match cmd {
        EndoCommand::Eval { chain, x } => {
            let alpha = ChainEndo::parse_rle(&chain.alpha, chain.n)?;
            if *x >= chain.n {
                return Err(Failure::Usage(format!("point {x} is outside the chain 0..{}", chain.n)));
            }
            single(alpha.eval(*x).to_string(), format)
        }
        EndoCommand::Add { chain, beta } | EndoCommand::Mul { chain, beta } => {
            let alpha = ChainEndo::parse_rle(&chain.alpha, chain.n)?;
            let beta = ChainEndo::parse_rle(beta, chain.n)?;
            let value = match cmd {
                EndoCommand::Add { .. } => alpha.add(&beta)?,
                _ => alpha.mul(&beta)?,
            };
            single(value.format_rle(), format)
        }
    }
}

fn simplex(cmd: &SimplexCommand, format: Format) -> CmdResult {
    match cmd {
        SimplexCommand::List(SimplexArg { simplex }) => {
            let rows: Vec<Vec<String>> = simplex
                .enumerate()
                .iter()
                .map(|f| Ok(vec![f.format_rle(), simplex.type_of(f)?.to_type_string()]))
                .collect::<Result<_, semiderive::Error>>()?;
            Ok(Outcome::ok(match format {
                Format::Json => json_body(&json!(rows
                    .iter()
                    .map(|r| json!({ "element": r[0], "type": r[1] }))
                    .collect::<Vec<_>>())),
                Format::Csv => csv_body(&["element".into(), "type".into()], &rows)?,
                Format::Text => rows.iter().map(|r| line(format!("{}\t{}", r[0], r[1]))).collect(),
            }))
        }
        SimplexCommand::Faces(SimplexArg { simplex }) => {
            let rows: Vec<Vec<String>> = simplex
                .faces()
                .iter()
                .map(|f| {
                    vec![
                        f.spec.to_string(),
                        f.spec.k().to_string(),
                        f.spec.enumerate().len().to_string(),
                        if f.proper { "proper" } else { "whole" }.to_string(),
                    ]
                })
                .collect();
            let header: Vec<String> = ["face", "vertices", "size", "kind"].map(String::from).to_vec();
            Ok(Outcome::ok(match format {
                Format::Json => json_body(&json!(rows
                    .iter()
                    .map(|r| json!({ "face": r[0], "vertices": r[1].parse::<usize>().unwrap(), "size": r[2].parse::<usize>().unwrap(), "proper": r[3] == "proper" }))
                    .collect::<Vec<_>>())),
                Format::Csv => csv_body(&header, &rows)?,
                Format::Text => rows.iter().map(|r| line(r.join("\t"))).collect(),
            }))
        }
        SimplexCommand::Census(SimplexArg { simplex }) => simplex_census(simplex, format),
    }
}

fn simplex_census(spec: &SimplexSpec, format: Format) -> CmdResult {
    let size = spec.enumerate().len() as u64;
    let formula = simplex_size(spec.n(), spec.k());
    let identities = spec.right_identities().count() as u64;
    let gaps = right_identity_order(spec.vertices());
    let classes: Vec<(String, usize)> = all_types(spec.k())
        .iter()
        .map(|t| Ok((t.to_type_string(), spec.type_class(t)?.len())))
        .collect::<Result<_, semiderive::Error>>()?;
    let holds = size == formula && identities == gaps;
    let body = match format {
        Format::Json => json_body(&json!({
            "simplex": spec.to_string(),
            "size": size,
            "size_formula": formula,
            "right_identities": identities,
            "right_identity_formula": gaps,
            "type_classes": classes.iter().map(|(t, c)| json!({ "type": t, "size": c })).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut rows = vec![
                vec!["size".to_string(), size.to_string(), formula.to_string()],
                vec!["right_identities".to_string(), identities.to_string(), gaps.to_string()],
            ];
            rows.extend(classes.iter().map(|(t, c)| vec![format!("type {t}"), c.to_string(), String::new()]));
            csv_body(&["quantity".into(), "count".into(), "formula".into()], &rows)?
        }
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "simplex           {spec}");
            let _ = writeln!(out, "size              {size} (formula {formula})");
            let _ = writeln!(out, "right identities  {identities} (gap product {gaps})");
            for (t, c) in &classes {
                let _ = writeln!(out, "type {t:<12} {c}");
            }
            out
        }
    };
    Ok(Outcome { body, holds })
}

fn jordan(cmd: &JordanCommand, format: Format) -> CmdResult {
    match cmd {
        JordanCommand::Apply { simplex: SimplexArg { simplex }, alpha, beta } => {
            let d = JordanMap::new(simplex, ChainEndo::parse_rle(alpha, simplex.n())?)?;
            let value = d.apply(&ChainEndo::parse_rle(beta, simplex.n())?)?;
            single(value.format_rle(), format)
        }
        JordanCommand::Table { simplex: SimplexArg { simplex }, alpha, beta } => {
            let n = simplex.n();
            let columns: Vec<ChainEndo> = if beta.is_empty() {
                simplex.enumerate()
            } else {
                beta.iter().map(|b| ChainEndo::parse_rle(b, n)).collect::<Result<_, _>>()?
            };
            let mut rows = Vec::new();
            for a in alpha {
                let d = JordanMap::new(simplex, ChainEndo::parse_rle(a, n)?)?;
                let mut row = vec![d.alpha().format_rle()];
                for c in &columns {
                    row.push(d.apply(c)?.format_rle());
                }
                rows.push(row);
            }
            let mut header = vec!["alpha".to_string()];
            header.extend(columns.iter().map(ChainEndo::format_rle));
            Ok(Outcome::ok(match format {
                Format::Json => json_body(&json!({
                    "simplex": simplex.to_string(),
                    "columns": header[1..],
                    "rows": rows.iter().map(|r| json!({ "alpha": r[0], "values": r[1..] })).collect::<Vec<_>>(),
                })),
                Format::Csv => csv_body(&header, &rows)?,
                Format::Text => aligned(&header, &rows),
            }))
        }
        JordanCommand::Check { simplex: SimplexArg { simplex }, alpha, beta, gamma, whole } => {
            let n = simplex.n();
            let d = JordanMap::new(simplex, ChainEndo::parse_rle(alpha, n)?)?;
            let (report, scope, pairs) = match (beta, gamma) {
                (Some(b), Some(g)) => {
                    let r = leibniz_check(&d, &ChainEndo::parse_rle(b, n)?, &ChainEndo::parse_rle(g, n)?)?;
                    (r, "pair".to_string(), 1)
                }
                _ => {
                    let (domain, scope) = if *whole {
                        (simplex.enumerate(), "whole simplex".to_string())
                    } else {
                        let claimed = claimed_closed_set(simplex, &simplex.type_of(d.alpha())?)?;
                        let excluded: Vec<String> = claimed.excluded_types.iter().map(|t| t.to_type_string()).collect();
                        let scope = if excluded.is_empty() {
                            "whole simplex".to_string()
                        } else {
                            format!("claimed set without {}", excluded.join(" "))
                        };
                        (claimed.members, scope)
                    };
                    let pairs = domain.len() * domain.len();
                    (leibniz_scan(&d, &domain)?, scope, pairs)
                }
            };
            let holds = report.passed();
            let body = match format {
                Format::Json => json_body(&json!({
                    "alpha": d.alpha(),
                    "scope": scope,
                    "pairs": pairs,
                    "holds": holds,
                    "witnesses": report.witnesses,
                })),
                Format::Text | Format::Csv => {
                    let mut out = line(format!(
                        "{}: Leibniz {} on {pairs} pair(s), {scope}",
                        d.alpha(),
                        if holds { "holds" } else { "fails" }
                    ));
                    for w in &report.witnesses {
                        out += &line(format!("beta={} gamma={} lhs={} rhs={}", w.beta, w.gamma, w.lhs, w.rhs));
                    }
                    out
                }
            };
            Ok(Outcome { body, holds })
        }
    }
}

fn aligned(header: &[String], rows: &[Vec<String>]) -> String {
    let widths: Vec<usize> = (0..header.len())
        .map(|i| {
            rows.iter()
                .map(|r| r[i].chars().count())
                .chain([header[i].chars().count()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let render = |cells: &[String]| {
        let parts: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        line(parts.join(" | ").trim_end())
    };
    let mut out = render(header);
    for r in rows {
        out += &render(r);
    }
    out
}

fn table(kind: TableChoice, format: Format) -> CmdResult {
    let t: TypeTable = match kind {
        TableChoice::Mult => type_mult_table(3),
        TableChoice::Jordan => type_jordan_table(3),
    };
    let names: Vec<String> = t.types.iter().map(|ty| ty.to_type_string()).collect();
    Ok(Outcome::ok(match format {
        Format::Json => json_body(&json!({
            "kind": t.kind,
            "types": names,
            "rows": t.to_json(),
        })),
        Format::Csv => {
            let mut header = vec![t.symbol().to_string()];
            header.extend(names.iter().cloned());
            let rows: Vec<Vec<String>> = names
                .iter()
                .zip(&t.entries)
                .map(|(name, row)| {
                    let mut cells = vec![name.clone()];
                    cells.extend(row.iter().map(|c| c.to_type_string()));
                    cells
                })
                .collect();
            csv_body(&header, &rows)?
        }
        Format::Text => t.to_text_grid(),
    }))
}

fn claim_body(claim: &ClaimResult, format: Format) -> Result<String, Failure> {
    Ok(match format {
        Format::Json => json_body(&serde_json::to_value(claim).expect("plain JSON")),
        Format::Csv => csv_body(
            &["id", "scope", "verdict", "summary"].map(String::from),
            &[vec![claim.id.clone(), claim.scope.clone(), claim.verdict.as_str().into(), claim.summary().into()]],
        )?,
        Format::Text => {
            let mut out = line(format!("{} {} {}: {}", claim.id, claim.scope, claim.verdict.as_str(), claim.summary()));
            for w in &claim.witnesses {
                out += &line(format!("  witness {w}"));
            }
            out
        }
    })
}

fn check(cmd: &CheckCommand, format: Format) -> CmdResult {
    let default = |k: usize| -> SimplexSpec {
        if k == 3 { "n=7;A=1,3,5" } else { "n=8;A=1,3,5,7" }.parse().expect("static spec")
    };
    let claim = match cmd {
        CheckCommand::Prop { id, simplex: SimplexArg { simplex } } => run_proposition(*id, simplex)?,
        CheckCommand::Theorem { id, simplex } => {
            let spec = simplex.clone().unwrap_or_else(|| default(if *id == 3 { 4 } else { 3 }));
            match id {
                2 => run_lift(&spec)?,
                _ => run_theorem_commute(&spec)?,
            }
        }
        CheckCommand::Lemma { id, simplex } => {
            let spec = simplex.clone().unwrap_or_else(|| default(if *id == 1 { 3 } else { 4 }));
            run_lemma(&spec)?
        }
        CheckCommand::Example { id } => run_example(*id)?,
        CheckCommand::Corollary => run_corollary()?,
    };
    Ok(Outcome {
        body: claim_body(&claim, format)?,
        holds: claim.verdict != ClaimVerdict::Fail,
    })
}

struct ScanVisitor {
    n: usize,
    identity: Identity,
    format: Format,
}

impl SemiringVisitor for ScanVisitor {
    type Output = CmdResult;

    fn visit<S: IdempotentSemiring>(self, semiring: S) -> CmdResult {
        let scan: ScanReport<S> = match self.identity {
            Identity::Jordan => jordan_leibniz_scan(&semiring, self.n)?,
            Identity::Ordinary => ordinary_leibniz_scan(&semiring, self.n)?,
        };
        let holds = scan.failures == 0;
        let body = match self.format {
            Format::Json => json_body(&serde_json::to_value(&scan).expect("plain JSON")),
            Format::Text | Format::Csv => {
                let mut out = line(format!(
                    "{} n={}: {} of {} triples fail; lhs <= rhs everywhere: {}",
                    scan.semiring, scan.n, scan.failures, scan.triples_checked, scan.lhs_below_rhs
                ));
                for w in &scan.witnesses {
                    out += &line(format!(
                        "X={} A={} B={} lhs={} rhs={}",
                        w.x.format(),
                        w.a.format(),
                        w.b.format(),
                        w.lhs.format(),
                        w.rhs.format()
                    ));
                }
                out
            }
        };
        Ok(Outcome { body, holds })
    }
}

struct WitnessVisitor {
    n: usize,
    format: Format,
}

impl SemiringVisitor for WitnessVisitor {
    type Output = CmdResult;

    fn visit<S: IdempotentSemiring>(self, semiring: S) -> CmdResult {
        let found = ordinary_leibniz_witness(&semiring, self.n)?;
        let body = match (&found, self.format) {
            (_, Format::Json) => json_body(&json!({
                "semiring": semiring.selector(),
                "n": self.n,
                "witness": found,
            })),
            (Some(w), _) => [
                format!("X   = {}", w.x.format()),
                format!("A   = {}", w.a.format()),
                format!("B   = {}", w.b.format()),
                format!("lhs = {}", w.lhs.format()),
                format!("rhs = {}", w.rhs.format()),
            ]
            .iter()
            .map(line)
            .collect(),
            (None, _) => line(format!("no witness over {} at n={}", semiring.selector(), self.n)),
        };
        Ok(Outcome {
            body,
            holds: found.is_none(),
        })
    }
}

fn toeplitz(cmd: &ToeplitzCommand, format: Format) -> CmdResult {
    match cmd {
        ToeplitzCommand::Check { semiring, n, identity } => semiring.dispatch(ScanVisitor {
            n: *n,
            identity: *identity,
            format,
        }),
        ToeplitzCommand::Witness { semiring, n } => semiring.dispatch(WitnessVisitor { n: *n, format }),
    }
}

fn report(ids: &[String], simplices: &[SimplexSpec], no_toeplitz: bool, format: Format) -> CmdResult {
    let mut config = ReportConfig::default();
    if !ids.is_empty() {
        let known: BTreeSet<String> = claim_ids().into_iter().collect();
        if let Some(bad) = ids.iter().find(|id| !known.contains(*id)) {
            return Err(Failure::Usage(format!("unknown claim id `{bad}`")));
        }
        config.only = Some(ids.iter().cloned().collect());
    }
    if !simplices.is_empty() {
        config.simplices = simplices.to_vec();
    }
    config.toeplitz = !no_toeplitz;
    let report: Report = full_report(&config)?;
    let body = match format {
        Format::Json => line(report.to_json()),
        Format::Text => report.to_text(),
        Format::Csv => {
            let rows: Vec<Vec<String>> = report
                .claims
                .iter()
                .map(|c| vec![c.id.clone(), c.scope.clone(), c.verdict.as_str().into(), c.summary().into()])
                .collect();
            csv_body(&["id", "scope", "verdict", "summary"].map(String::from), &rows)?
        }
    };
    Ok(Outcome {
        body,
        holds: report.all_hold(),
    })
}
