//! Command-line front end: list orbits, compute L(O), tabulate, verify.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use orbit_lmap::{
    all_orbits, compute_l, compute_table, diagram_of, load_table, table_name, verify, CartanType,
    Error, Family, LMapConfig, OrbitLabel, RootSystem, RowStatus, Strategy, TableEntry,
    WeightedDynkinDiagram, DEFAULT_TERM_CAP,
};

pub const CAP_ENV: &str = "ORBIT_LMAP_CAP";

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_SKIPPED: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "orbit-lmap", version, about = "Leading weights L(O) of nilpotent orbits")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List orbits with their weighted Dynkin diagrams.
    Orbits(Common),
    /// Compute L(O) for one orbit.
    Lmap(LmapArgs),
    /// Compute L(O) for every orbit.
    Table(Common),
    /// Compute and compare against the embedded table.
    Verify(Common),
}

#[derive(Debug, Args)]
pub struct Common {
    /// Family letter A..G.
    #[arg(long = "type", value_name = "FAMILY")]
    pub family: char,
    #[arg(long)]
    pub rank: usize,
    #[arg(long, value_enum)]
    pub strategy: Option<StrategyArg>,
    /// Term cap per orbit; falls back to ORBIT_LMAP_CAP, then 10^8.
    #[arg(long)]
    pub cap: Option<u64>,
    #[arg(long)]
    pub threads: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Report wall time per row; output is no longer reproducible.
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Args)]
pub struct LmapArgs {
    #[command(flatten)]
    pub common: Common,
    /// Partition with optional `_1`/`_2` suffix, e.g. `4^2_1`.
    #[arg(long, conflicts_with = "diagram")]
    pub orbit: Option<String>,
    /// Digits, or comma-separated labels.
    #[arg(long)]
    pub diagram: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Full,
    Hybrid,
    Richardson,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Full => Strategy::FullProduct,
            StrategyArg::Hybrid => Strategy::HybridLevi,
            StrategyArg::Richardson => Strategy::Richardson,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub orbit: String,
    pub tag: Option<String>,
    pub diagram: Vec<u8>,
    pub weight: Option<Vec<i32>>,
    pub norm_sq: Option<i64>,
    pub sign: Option<i8>,
    pub status: String,
    pub strategy: String,
    pub terms_peak: u64,
    pub ms: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub agree: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub group: String,
    pub table: String,
    pub rows: Vec<Row>,
}

/// Rendered output and the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub output: String,
}

fn usage(message: impl Into<String>) -> Outcome {
    Outcome {
        code: EXIT_USAGE,
        output: format!("error: {}\n", message.into()),
    }
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::ResourceLimit { .. } => EXIT_SKIPPED,
        Error::NoLeadingTerm { .. } | Error::EmptySum | Error::ArithmeticOverflow | Error::Fixture { .. } => {
            EXIT_MISMATCH
        }
        _ => EXIT_USAGE,
    }
}

fn resolve_cap(flag: Option<u64>) -> Result<u64, String> {
    if let Some(c) = flag {
        return Ok(c);
    }
    match std::env::var(CAP_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| format!("{CAP_ENV} is not an integer: {v:?}")),
        Err(_) => Ok(DEFAULT_TERM_CAP),
    }
}

struct Context {
    ty: CartanType,
    config: LMapConfig,
    format: Format,
    timing: bool,
    pool: rayon::ThreadPool,
}

fn context(c: &Common) -> Result<Context, Outcome> {
    let family: Family = c
        .family
        .to_string()
        .parse()
        .map_err(|e: Error| usage(e.to_string()))?;
    let ty = CartanType::new(family, c.rank).map_err(|e| usage(e.to_string()))?;
    let cap = resolve_cap(c.cap).map_err(usage)?;
    let mut config = LMapConfig {
        cap,
        ..LMapConfig::default()
    };
    if let Some(s) = c.strategy {
        config.strategy = s.into();
    }
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = c.threads {
        if n == 0 {
            return Err(usage("--threads must be positive"));
        }
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(|e| usage(e.to_string()))?;
    Ok(Context {
        ty,
        config,
        format: c.format,
        timing: c.timing,
        pool,
    })
}

pub fn run(cli: &Cli) -> Outcome {
    let (common, outcome) = match &cli.command {
        Command::Orbits(c) => (c, context(c).map(|ctx| orbits_cmd(&ctx))),
        Command::Lmap(a) => (&a.common, context(&a.common).map(|ctx| lmap_cmd(&ctx, a))),
        Command::Table(c) => (c, context(c).map(|ctx| table_cmd(&ctx))),
        Command::Verify(c) => (c, context(c).map(|ctx| verify_cmd(&ctx))),
    };
    let outcome = outcome.unwrap_or_else(|o| o);
    match &common.out {
        Some(path) if outcome.code != EXIT_USAGE => match std::fs::write(path, &outcome.output) {
            Ok(()) => Outcome {
                code: outcome.code,
                output: String::new(),
            },
            Err(e) => usage(format!("cannot write {}: {e}", path.display())),
        },
        _ => outcome,
    }
}

fn split_label(label: &OrbitLabel) -> (String, Option<String>) {
    (label.base_name(), label.tag().map(|t| t.name().to_string()))
}

fn full_label(orbit: &str, tag: Option<&str>) -> String {
    match tag {
        Some("I") => format!("{orbit}_1"),
        Some("II") => format!("{orbit}_2"),
        _ => orbit.to_string(),
    }
}

fn compact(v: &[i32]) -> String {
    if v.iter().all(|c| (0..=9).contains(c)) {
        v.iter().map(|c| c.to_string()).collect()
    } else {
        v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
    }
}

fn diagram_str(d: &[u8]) -> String {
    d.iter().map(|c| c.to_string()).collect()
}

fn entry_row(e: &TableEntry, timing: bool) -> Row {
    let (orbit, tag) = split_label(&e.orbit);
    let diagram = e.diagram.labels().to_vec();
    match &e.outcome {
        Ok(r) => Row {
            orbit,
            tag,
            diagram,
            weight: Some(r.weight.coords().to_vec()),
            norm_sq: Some(r.norm_sq.to_integer()),
            sign: Some(r.leading_sign),
            status: "computed".into(),
            strategy: r.strategy.name().into(),
            terms_peak: r.stats.terms_peak,
            ms: if timing { r.stats.elapsed.as_millis() as u64 } else { 0 },
            agree: None,
            reason: None,
        },
        Err(err) => Row {
            orbit,
            tag,
            diagram,
            weight: None,
            norm_sq: None,
            sign: None,
            status: "skipped".into(),
            strategy: String::new(),
            terms_peak: 0,
            ms: 0,
            agree: None,
            reason: Some(err.to_string()),
        },
    }
}

fn document(ty: CartanType, rows: Vec<Row>) -> Document {
    Document {
        group: ty.to_string(),
        table: table_name(ty),
        rows,
    }
}

pub fn render_json(doc: &Document) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("serializable");
    s.push('\n');
    s
}

pub fn render_csv(doc: &Document) -> String {
    let mut s = String::from("group;row;status;orbit;diagram;weight;norm_sq\n");
    for (i, r) in doc.rows.iter().enumerate() {
        let _ = writeln!(
            s,
            "{};{};{};{};{};{};{}",
            doc.group,
            i + 1,
            r.status,
            full_label(&r.orbit, r.tag.as_deref()),
            diagram_str(&r.diagram),
            r.weight.as_deref().map(compact).unwrap_or_else(|| "-".into()),
            r.norm_sq.map(|n| n.to_string()).unwrap_or_else(|| "-".into()),
        );
    }
    s
}

pub fn render_text(doc: &Document) -> String {
    let cells: Vec<[String; 6]> = doc
        .rows
        .iter()
        .map(|r| {
            let mut status = r.status.clone();
            if let Some(a) = r.agree {
                status.push_str(if a { " (agrees)" } else { " (differs)" });
            }
            [
                full_label(&r.orbit, r.tag.as_deref()),
                diagram_str(&r.diagram),
                r.weight.as_deref().map(compact).unwrap_or_else(|| "-".into()),
                r.norm_sq.map(|n| n.to_string()).unwrap_or_else(|| "-".into()),
                status,
                r.reason.clone().unwrap_or_default(),
            ]
        })
        .collect();
    let header = ["orbit", "diagram", "weight", "norm_sq", "status", ""];
    let mut widths = header.map(str::len);
    for c in &cells {
        for (w, x) in widths.iter_mut().zip(c) {
            *w = (*w).max(x.len());
        }
    }
    let mut s = format!("{} ({})\n", doc.group, doc.table);
    let line = |s: &mut String, c: &[&str]| {
        let mut l = String::new();
        for (i, x) in c.iter().enumerate() {
            let _ = write!(l, "{:<w$}  ", x, w = widths[i]);
        }
        s.push_str(l.trim_end());
        s.push('\n');
    };
    line(&mut s, &header);
    for c in &cells {
        line(&mut s, &c.each_ref().map(String::as_str));
    }
    s
}

fn render(format: Format, doc: &Document) -> String {
    match format {
        Format::Text => render_text(doc),
        Format::Json => render_json(doc),
        Format::Csv => render_csv(doc),
    }
}

fn orbits_cmd(ctx: &Context) -> Outcome {
    let orbits = match all_orbits(ctx.ty) {
        Ok(o) => o,
        Err(e) => return usage(e.to_string()),
    };
    let rows = orbits
        .iter()
        .map(|(label, d)| {
            let (orbit, tag) = split_label(label);
            Row {
                orbit,
                tag,
                diagram: d.labels().to_vec(),
                weight: None,
                norm_sq: None,
                sign: None,
                status: if d.is_even() { "even" } else { "odd" }.into(),
                strategy: String::new(),
                terms_peak: 0,
                ms: 0,
                agree: None,
                reason: None,
            }
        })
        .collect();
    Outcome {
        code: EXIT_OK,
        output: render(ctx.format, &document(ctx.ty, rows)),
    }
}

fn lmap_cmd(ctx: &Context, a: &LmapArgs) -> Outcome {
    let ty = ctx.ty;
    let known = all_orbits(ty).unwrap_or_default();
    let (label, diagram) = match (&a.orbit, &a.diagram) {
        (Some(o), None) => {
            if !ty.family().is_classical() {
                return usage("--orbit takes a partition; use --diagram for exceptional types");
            }
            let mut label = match OrbitLabel::parse_classical(o) {
                Ok(l) => l,
                Err(e) => return usage(e.to_string()),
            };
            if let OrbitLabel::Classical { partition, tag: None } = &label {
                if ty.family() == Family::D && partition.is_very_even() {
                    return usage(format!("{partition} is very even; add _1 or _2"));
                }
            }
            if let OrbitLabel::Classical { tag: Some(_), partition } = &label {
                if !(ty.family() == Family::D && partition.is_very_even()) {
                    label = OrbitLabel::classical(partition.clone(), None);
                }
            }
            match diagram_of(&label, ty) {
                Ok(d) => (label, d),
                Err(e) => return usage(e.to_string()),
            }
        }
        (None, Some(d)) => {
            let d: WeightedDynkinDiagram = match d.parse() {
                Ok(d) => d,
                Err(e) => return usage(e.to_string()),
            };
            if d.rank() != ty.rank() {
                return usage(format!("diagram {d} has rank {}, expected {}", d.rank(), ty.rank()));
            }
            let label = known
                .iter()
                .find(|(_, k)| *k == d)
                .map(|(l, _)| l.clone())
                .unwrap_or_else(|| OrbitLabel::Exceptional {
                    index: usize::MAX,
                    diagram: d.clone(),
                });
            (label, d)
        }
        _ => return usage("lmap needs exactly one of --orbit or --diagram"),
    };
    let rs = RootSystem::new(ty);
    let outcome = ctx.pool.install(|| compute_l(&rs, &diagram, &ctx.config));
    let code = match &outcome {
        Ok(_) => EXIT_OK,
        Err(e) => error_code(e),
    };
    if code == EXIT_USAGE {
        return usage(outcome.unwrap_err().to_string());
    }
    let entry = TableEntry {
        orbit: label,
        diagram,
        outcome,
    };
    let doc = document(ty, vec![entry_row(&entry, ctx.timing)]);
    let output = match ctx.format {
        Format::Text => {
            let r = &doc.rows[0];
            let mut s = String::new();
            let _ = writeln!(s, "type      {}", doc.group);
            let _ = writeln!(s, "orbit     {}", full_label(&r.orbit, r.tag.as_deref()));
            let _ = writeln!(s, "diagram   {}", diagram_str(&r.diagram));
            match (&r.weight, r.norm_sq, r.sign) {
                (Some(w), Some(n), Some(sign)) => {
                    let _ = writeln!(s, "weight    {}", compact(w));
                    let _ = writeln!(s, "norm_sq   {n}");
                    let _ = writeln!(s, "sign      {}", if sign > 0 { "+1" } else { "-1" });
                    let _ = writeln!(s, "strategy  {}", r.strategy);
                    let _ = writeln!(s, "terms     {}", r.terms_peak);
                    if ctx.timing {
                        let _ = writeln!(s, "ms        {}", r.ms);
                    }
                }
                _ => {
                    let _ = writeln!(s, "status    skipped: {}", r.reason.as_deref().unwrap_or(""));
                }
            }
            s
        }
        f => render(f, &doc),
    };
    Outcome { code, output }
}

fn computed_orbits(ty: CartanType) -> Result<Vec<(OrbitLabel, WeightedDynkinDiagram)>, Outcome> {
    let enumerated = all_orbits(ty).map_err(|e| usage(e.to_string()))?;
    let Ok(table) = load_table(ty) else {
        return Ok(enumerated);
    };
    let mut out: Vec<_> = table
        .rows
        .iter()
        .map(|r| (r.orbit.clone(), r.diagram.clone()))
        .collect();
    for o in enumerated {
        if !out.iter().any(|(_, d)| *d == o.1) {
            out.push(o);
        }
    }
    Ok(out)
}

fn table_cmd(ctx: &Context) -> Outcome {
    let orbits = match computed_orbits(ctx.ty) {
        Ok(o) => o,
        Err(o) => return o,
    };
    let rs = RootSystem::new(ctx.ty);
    let entries = ctx.pool.install(|| compute_table(&rs, &orbits, &ctx.config));
    let code = if entries.iter().any(|e| e.outcome.is_err()) {
        EXIT_SKIPPED
    } else {
        EXIT_OK
    };
    let rows = entries.iter().map(|e| entry_row(e, ctx.timing)).collect();
    Outcome {
        code,
        output: render(ctx.format, &document(ctx.ty, rows)),
    }
}

fn verify_cmd(ctx: &Context) -> Outcome {
    let table = match load_table(ctx.ty) {
        Ok(t) => t,
        Err(e) => return usage(e.to_string()),
    };
    let orbits: Vec<_> = table
        .rows
        .iter()
        .map(|r| (r.orbit.clone(), r.diagram.clone()))
        .collect();
    let rs = RootSystem::new(ctx.ty);
    let entries = ctx.pool.install(|| compute_table(&rs, &orbits, &ctx.config));
    let report = verify(ctx.ty, &entries, &table.rows);
    let rows: Vec<Row> = report
        .rows
        .iter()
        .zip(&entries)
        .map(|(rep, entry)| {
            let mut row = entry_row(entry, ctx.timing);
            let (orbit, tag) = split_label(&rep.orbit);
            row.orbit = orbit;
            row.tag = tag;
            row.status = rep.status.name().into();
            if let RowStatus::QuestionResolved { agree, .. } = rep.status {
                row.agree = Some(agree);
            }
            if let RowStatus::Mismatch { .. } = rep.status {
                row.reason = Some(format!(
                    "table has {} ({})",
                    rep.fixture_weight.as_ref().map(|w| w.compact()).unwrap_or_default(),
                    rep.fixture_norm.map(|n| n.to_string()).unwrap_or_default()
                ));
            }
            row
        })
        .collect();
    let s = report.summary;
    let code = if s.mismatched > 0 {
        EXIT_MISMATCH
    } else if s.skipped > 0 {
        EXIT_SKIPPED
    } else {
        EXIT_OK
    };
    let doc = document(ctx.ty, rows);
    let mut output = render(ctx.format, &doc);
    if ctx.format == Format::Text {
        let _ = writeln!(
            output,
            "{}/{} match, {} mismatch, {} gap filled, {} question resolved ({} agree), {} skipped",
            s.matched,
            s.total,
            s.mismatched,
            s.gaps_filled,
            s.questions_agreed + s.questions_disagreed,
            s.questions_agreed,
            s.skipped
        );
    }
    Outcome { code, output }
}

/// Parses arguments; clap errors map to the usage exit code, help and version to 0.
pub fn parse_args<I, T>(args: I) -> Result<Cli, Outcome>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    Cli::try_parse_from(args).map_err(|e| {
        let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        Outcome {
            code,
            output: e.render().to_string(),
        }
    })
}
