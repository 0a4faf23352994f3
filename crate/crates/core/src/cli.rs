//! The `hypconst` command line.
//!
//! Every subcommand produces a list of records. `--format json` writes one
//! JSON object per line, `csv` a header and one quoted row per record, `md`
//! a Markdown table, and `text` a short human-readable summary. Exact values
//! appear as `p/q`, enclosures as `[lo,hi]`.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value as Json};

use crate::ball::{bakker_tsimerman_alpha, ball_c, ball_min_general_type_dim};
use crate::bounds::{beta_level, check_condition_I, AlphaBound, BoundKind, IsotropyData};
use crate::error::{Error, Result};
use crate::exactmath::{parse_rational, Precision, Value};
use crate::oracle::{verify_exact, verify_numeric, OracleReport, NUMERIC_GRID_TOLERANCE};
use crate::siegel::{dimension, siegel_d, table_c, triangular_split, verify_table, TableReport};
use crate::thresholds::{
    ag_kobayashi_level, ag_max_general_type_codim, ag_uniform_level, mg_level, volume_factor,
    LevelReport, Relation,
};
use crate::Rational;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_COMPUTATION: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;

/// Fractional digits of enclosures in text output.
const TEXT_DIGITS: u32 = 12;

#[derive(Parser, Debug)]
#[command(
    name = "hypconst",
    version,
    about = "Curvature constants of bounded symmetric domains and certified level thresholds"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Target enclosure width 2^-PREC for non-rational results.
    #[arg(long, env = "HYPCONST_PREC", default_value_t = 128, global = true)]
    pub prec: u32,
    /// Worker threads for parallel enumeration.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
    Md,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// A single constant C_p.
    #[command(subcommand)]
    Cp(CpCommand),
    /// All C_p for one genus, with the closed-form table.
    #[command(subcommand)]
    Table(TableCommand),
    /// Check the Siegel minimization against an oracle.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Level thresholds.
    #[command(subcommand)]
    Level(LevelCommand),
    /// Codimension thresholds.
    #[command(subcommand)]
    Codim(CodimCommand),
    /// Lower bounds for the effectivity coefficient.
    Alpha(AlphaArgs),
    /// Volume coefficient ((C_p - lambda/alpha)/(2π))^q.
    VolumeFactor {
        #[arg(long, value_parser = rational_arg)]
        cp: Rational,
        #[arg(long, value_parser = rational_arg)]
        lambda: Rational,
        #[arg(long, value_parser = rational_arg)]
        alpha: Rational,
        #[arg(long)]
        q: u32,
    },
    /// Tightest beta for one isotropy datum.
    Beta {
        #[command(flatten)]
        data: IsotropyArgs,
        #[arg(long)]
        p: u32,
    },
    /// Condition (I_{x,d}) for one isotropy datum.
    ConditionI {
        #[command(flatten)]
        data: IsotropyArgs,
        #[arg(long)]
        d: u32,
    },
}

#[derive(Subcommand, Debug)]
pub enum CpCommand {
    Siegel {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        p: u32,
    },
    Ball {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        p: u32,
    },
}

#[derive(Subcommand, Debug)]
pub enum TableCommand {
    Siegel {
        #[arg(long)]
        g: u32,
    },
}

#[derive(Subcommand, Debug)]
pub enum VerifyCommand {
    Siegel {
        #[arg(long)]
        gmax: u32,
        #[arg(long, value_enum, default_value_t = OracleName::Exact)]
        oracle: OracleName,
        /// Grid resolution of the numeric oracle.
        #[arg(long, default_value_t = 40)]
        grid_steps: u32,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OracleName {
    Exact,
    Numeric,
    Table,
}

#[derive(Subcommand, Debug)]
pub enum LevelCommand {
    /// Kobayashi hyperbolicity of A_g(l) from Weissauer's bound.
    Ag {
        #[arg(long)]
        g: u32,
    },
    /// The genus-independent level from Grushevsky's bound.
    AgUniform,
    /// General type of moduli of curves with level structure.
    Mg {
        #[arg(long)]
        g: u32,
    },
    /// Smallest dimension of general type for ball quotients at level l.
    Ball {
        #[arg(long)]
        l: u32,
    },
}

#[derive(Subcommand, Debug)]
pub enum CodimCommand {
    Ag {
        #[arg(long)]
        g: u32,
    },
}

#[derive(Args, Debug)]
#[command(args_conflicts_with_subcommands = true, subcommand_negates_reqs = true)]
pub struct AlphaArgs {
    #[command(subcommand)]
    pub ball: Option<AlphaBall>,
    #[arg(long, required = true)]
    pub g: Option<u32>,
    #[arg(long, value_enum, required = true)]
    pub bound: Option<BoundName>,
}

#[derive(Subcommand, Debug)]
pub enum AlphaBall {
    /// Bakker–Tsimerman bound for ball quotients.
    Ball {
        #[arg(long)]
        n: u32,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BoundName {
    Weissauer,
    Grushevsky,
    Ht06,
}

#[derive(Args, Debug)]
pub struct IsotropyArgs {
    /// Rotation exponents, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub a: Vec<u32>,
    /// Order of the cyclic action.
    #[arg(long)]
    pub r: u32,
}

fn rational_arg(s: &str) -> std::result::Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

/// Records plus their human-readable rendering.
struct Report {
    records: Vec<Json>,
    text: String,
    /// Replaces the generic Markdown table.
    markdown: Option<String>,
    mismatch: bool,
}

impl Report {
    fn new(records: Vec<Json>, text: String) -> Self {
        Self {
            records,
            text,
            markdown: None,
            mismatch: false,
        }
    }

    fn single(record: impl Serialize, text: String) -> Result<Self> {
        Ok(Self::new(vec![to_json(&record)?], text))
    }
}

fn to_json(x: &impl Serialize) -> Result<Json> {
    serde_json::to_value(x).map_err(|e| Error::Parse(e.to_string()))
}

fn show(v: &Value) -> String {
    match v {
        Value::Exact(q) => q.to_string(),
        Value::Enclosed(iv) => iv.to_decimal(TEXT_DIGITS),
    }
}

/// Parses `args` (including the program name) and runs the command, with
/// results on `out` and diagnostics on `err`. Returns the exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };
    let prec = match Precision::new(cli.prec) {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let report = match cli.jobs {
        Some(0) => {
            let _ = writeln!(err, "error: --jobs must be positive");
            return EXIT_USAGE;
        }
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Precondition(e.to_string()))
            .and_then(|pool| pool.install(|| execute(&cli.command, prec))),
        None => execute(&cli.command, prec),
    };
    let report = match report {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_COMPUTATION;
        }
    };
    if let Err(e) = render(&report, cli.format, out) {
        let _ = writeln!(err, "error: {e}");
        return EXIT_COMPUTATION;
    }
    if report.mismatch {
        EXIT_MISMATCH
    } else {
        EXIT_OK
    }
}

/// [`run_with`] on the process's standard streams.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

fn render(report: &Report, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
    match format {
        Format::Text => write!(out, "{}", report.text),
        Format::Json => {
            for r in &report.records {
                writeln!(out, "{r}")?;
            }
            Ok(())
        }
        Format::Csv => {
            let mut w = csv::WriterBuilder::new()
                .quote_style(csv::QuoteStyle::Always)
                .from_writer(out);
            if let Some(first) = report.records.first().and_then(Json::as_object) {
                w.write_record(first.keys())?;
            }
            for r in &report.records {
                if let Some(obj) = r.as_object() {
                    w.write_record(obj.values().map(cell))?;
                }
            }
            w.flush()
        }
        Format::Md => match &report.markdown {
            Some(md) => write!(out, "{md}"),
            None => write!(out, "{}", markdown_table(&report.records)),
        },
    }
}

fn cell(v: &Json) -> String {
    match v {
        Json::String(s) => s.clone(),
        Json::Null => String::new(),
        other => other.to_string(),
    }
}

fn markdown_table(records: &[Json]) -> String {
    let rows: Vec<&Map<String, Json>> = records.iter().filter_map(Json::as_object).collect();
    let Some(first) = rows.first() else {
        return String::new();
    };
    let mut s = String::new();
    let keys: Vec<&String> = first.keys().collect();
    let _ = writeln!(
        s,
        "| {} |",
        keys.iter()
            .map(|k| k.as_str())
            .collect::<Vec<_>>()
            .join(" | ")
    );
    let _ = writeln!(s, "|{}", "---|".repeat(keys.len()));
    for row in rows {
        let cells: Vec<String> = row.values().map(|v| cell(v).replace('|', "\\|")).collect();
        let _ = writeln!(s, "| {} |", cells.join(" | "));
    }
    s
}

fn execute(command: &Command, prec: Precision) -> Result<Report> {
    match command {
        Command::Cp(CpCommand::Siegel { g, p }) => {
            let c = siegel_d(*g, *p)?;
            let text = format!(
                "g={} p={}: D = {}, C = {} (minimizing shape {})\n",
                c.g, c.p, c.d, c.c, c.witness
            );
            Report::single(&c, text)
        }
        Command::Cp(CpCommand::Ball { n, p }) => {
            let c = ball_c(*n, *p)?;
            let text = format!("n={n} p={p}: C = {c}\n");
            Report::single(json!({"n": n, "p": p, "C": c.to_string()}), text)
        }
        Command::Table(TableCommand::Siegel { g }) => siegel_table(*g),
        Command::Verify(VerifyCommand::Siegel {
            gmax,
            oracle,
            grid_steps,
        }) => verify(*gmax, *oracle, *grid_steps),
        Command::Level(cmd) => level(cmd, prec),
        Command::Codim(CodimCommand::Ag { g }) => {
            let c = ag_max_general_type_codim(*g)?;
            let text = format!("g={g}: subvarieties of codimension <= {c} are of general type\n");
            Report::single(json!({"g": g, "max_codim": c}), text)
        }
        Command::Alpha(args) => alpha(args, prec),
        Command::VolumeFactor {
            cp,
            lambda,
            alpha,
            q,
        } => {
            let v = volume_factor(cp, lambda, alpha, *q, prec)?;
            let text = format!("volume factor in {}\n", v.to_decimal(TEXT_DIGITS));
            Report::single(
                json!({
                    "cp": cp.to_string(),
                    "lambda": lambda.to_string(),
                    "alpha": alpha.to_string(),
                    "q": q,
                    "value": v.to_string(),
                }),
                text,
            )
        }
        Command::Beta { data, p } => {
            let iso = IsotropyData::new(data.a.clone(), data.r)?;
            let beta = beta_level(&iso, *p)?;
            let text = format!("beta = {beta}\n");
            Report::single(
                json!({"a": data.a, "r": data.r, "p": p, "beta": beta.to_string()}),
                text,
            )
        }
        Command::ConditionI { data, d } => {
            let iso = IsotropyData::new(data.a.clone(), data.r)?;
            let holds = check_condition_I(&iso, *d)?;
            let verdict = if holds { "holds" } else { "fails" };
            let text = format!("condition I with d={d} {verdict}\n");
            Report::single(
                json!({"a": data.a, "r": data.r, "d": d, "holds": holds}),
                text,
            )
        }
    }
}

/// Per-p records plus the grid layout: rows `r`, columns `g - k`, cells
/// `(g+1)·C_p`.
fn siegel_table(g: u32) -> Result<Report> {
    crate::error::check_range("g", g as u64, 2, 1 << 16)?;
    let n = dimension(g);
    let mut records = Vec::with_capacity(n as usize);
    let mut mismatches = vec![];
    let mut grid = std::collections::BTreeMap::new();
    for p in 1..=n {
        let c = siegel_d(g, p)?;
        let closed = table_c(g, p)?;
        let (k, r) = triangular_split(p);
        let matches = c.c == closed;
        if !matches {
            mismatches.push(p);
        }
        let scaled = &c.c * Rational::from_integer((g + 1).into());
        grid.insert((r, g - k), (scaled, matches));
        records.push(json!({
            "g": g,
            "p": p,
            "k": k,
            "r": r,
            "D": c.d.to_string(),
            "C": c.c.to_string(),
            "table_C": closed.to_string(),
            "match": matches,
        }));
    }
    let max_r = grid.keys().map(|(r, _)| *r).max().unwrap_or(0);
    let cell_text = |r: u32, w: u32| -> String {
        match grid.get(&(r, w)) {
            Some((v, true)) => v.to_string(),
            Some((v, false)) => format!("{v}*"),
            None => String::new(),
        }
    };
    let headers: Vec<String> = (1..=g).map(|w| format!("g-k={w}")).collect();
    let rows: Vec<Vec<String>> = (0..=max_r)
        .map(|r| (1..=g).map(|w| cell_text(r, w)).collect())
        .collect();
    let width = headers
        .iter()
        .chain(rows.iter().flatten())
        .map(|s| s.chars().count())
        .max()
        .unwrap_or(1);
    let mut text = format!("(g+1)·C_p for g={g}\n{:>6}", "");
    for h in &headers {
        let _ = write!(text, " {h:>width$}");
    }
    text.push('\n');
    for (r, row) in rows.iter().enumerate() {
        let _ = write!(text, "{:>6}", format!("r={r}"));
        for c in row {
            let _ = write!(text, " {c:>width$}");
        }
        text.push('\n');
    }
    let mut md = format!(
        "| (g+1)·C_p | {} |\n|---|{}\n",
        headers.join(" | "),
        "---|".repeat(g as usize)
    );
    for (r, row) in rows.iter().enumerate() {
        let _ = writeln!(md, "| r={r} | {} |", row.join(" | "));
    }
    let summary = if mismatches.is_empty() {
        format!("all {n} entries match the closed form\n")
    } else {
        format!("mismatch (marked *) at p = {mismatches:?}\n")
    };
    text.push_str(&summary);
    Ok(Report {
        records,
        text,
        markdown: Some(md),
        mismatch: !mismatches.is_empty(),
    })
}

fn verify(gmax: u32, oracle: OracleName, grid_steps: u32) -> Result<Report> {
    let (record, checked, lines, name) = match oracle {
        OracleName::Exact | OracleName::Numeric => {
            let r: OracleReport = match oracle {
                OracleName::Exact => verify_exact(gmax)?,
                _ => verify_numeric(gmax, grid_steps, NUMERIC_GRID_TOLERANCE)?,
            };
            let lines: Vec<String> = r
                .mismatches
                .iter()
                .map(|m| {
                    format!(
                        "g={} p={}: siegel {}, oracle {}",
                        m.g, m.p, m.siegel, m.oracle
                    )
                })
                .collect();
            (to_json(&r)?, r.checked, lines, r.oracle)
        }
        OracleName::Table => {
            let r: TableReport = verify_table(gmax)?;
            let lines: Vec<String> = r
                .mismatches
                .iter()
                .map(|m| {
                    format!(
                        "g={} p={}: siegel {}, table {}",
                        m.g, m.p, m.computed, m.table
                    )
                })
                .collect();
            let mut record = to_json(&r)?;
            if let Some(obj) = record.as_object_mut() {
                // same leading field as the oracle reports
                let mut with_name = Map::new();
                with_name.insert("oracle".into(), Json::from("table"));
                with_name.extend(std::mem::take(obj));
                *obj = with_name;
            }
            (record, r.checked, lines, "table")
        }
    };
    let mut text = format!(
        "{name} check for 2 <= g <= {gmax}: {checked} pairs, {} mismatches\n",
        lines.len()
    );
    for l in &lines {
        let _ = writeln!(text, "{l}");
    }
    let mut report = Report::new(vec![record], text);
    report.mismatch = !lines.is_empty();
    Ok(report)
}

fn level_text(r: &LevelReport) -> String {
    let mut s = String::new();
    if let Some(g) = r.g {
        let _ = write!(s, "g={g}: ");
    }
    let _ = write!(
        s,
        "threshold {}, smallest level {}",
        show(&r.quantity),
        r.certified_level
    );
    if let (Some(p), Some(offset)) = (r.published, r.offset) {
        let op = match p.relation {
            Relation::Strict => ">",
            Relation::NonStrict => ">=",
        };
        let verdict = if offset == 0 {
            "agrees".to_string()
        } else {
            format!("differs by {offset:+}")
        };
        let _ = write!(s, "; published l {op} {} ({verdict})", p.value);
    }
    s.push('\n');
    s
}

fn level(cmd: &LevelCommand, prec: Precision) -> Result<Report> {
    match cmd {
        LevelCommand::Ag { g } => {
            let r = ag_kobayashi_level(*g)?;
            Report::single(&r, level_text(&r))
        }
        LevelCommand::Mg { g } => {
            let r = mg_level(*g)?;
            Report::single(&r, level_text(&r))
        }
        LevelCommand::AgUniform => {
            let u = ag_uniform_level(prec)?;
            let mut text = level_text(&u.report);
            for e in &u.per_genus {
                let _ = writeln!(
                    text,
                    "  g={}: 1/(alpha_eff·gamma) in {}",
                    e.g,
                    e.quantity.to_decimal(TEXT_DIGITS)
                );
            }
            Report::single(&u, text)
        }
        LevelCommand::Ball { l } => {
            let d = ball_min_general_type_dim(*l, prec)?;
            let text = format!("l={l}: subvarieties of dimension >= {d} are of general type\n");
            Report::single(json!({"l": l, "dimension": d}), text)
        }
    }
}

fn alpha(args: &AlphaArgs, prec: Precision) -> Result<Report> {
    let bound = match (&args.ball, args.g, args.bound) {
        (Some(AlphaBall::Ball { n }), _, _) => AlphaBound {
            kind: BoundKind::BakkerTsimerman,
            param: *n,
            value: Value::Enclosed(bakker_tsimerman_alpha(*n, prec)?),
            applicability: BoundKind::BakkerTsimerman.applicability(),
        },
        (None, Some(g), Some(name)) => {
            let (kind, param) = match name {
                BoundName::Weissauer => (BoundKind::WeissauerBase, g),
                BoundName::Grushevsky => (BoundKind::GrushevskyEff, g),
                BoundName::Ht06 => {
                    crate::error::check_range("g", g as u64, 1, 1 << 16)?;
                    (BoundKind::Ht06Base, dimension(g))
                }
            };
            AlphaBound::evaluate(kind, param, prec)?
        }
        _ => {
            return Err(Error::Precondition(
                "alpha needs --g and --bound, or ball --n".into(),
            ))
        }
    };
    let text = format!("{} ({}): {}\n", bound.kind, bound.param, show(&bound.value));
    Report::single(&bound, text)
}
