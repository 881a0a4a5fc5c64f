use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::{json, Value};

use wreath_distortion::baumslag::{self, BaumslagElement};
use wreath_distortion::embedding::{self, DistortionRecord};
use wreath_distortion::oracle::{
    self, BaumslagGroup, CayleyGroup, Distance, ThompsonGroup, WreathGroup,
};
use wreath_distortion::thompson::{
    classify_carets, fordham_weight, tree_pair_to_normal_form, FWord, TreePair,
};
use wreath_distortion::wreath::{Variant, WreathElement};
use wreath_distortion::{Error, Result};

#[derive(Parser)]
#[command(
    name = "wdist",
    version,
    about = "Word metrics and distortion in Z wr Z, Thompson's group F and Baumslag's group"
)]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// BFS radius.
    #[arg(long, global = true)]
    radius: Option<usize>,
    /// Largest Z wr Z word length in the distortion report.
    #[arg(long, global = true)]
    max_len: Option<usize>,
    /// Largest n in the Baumslag table.
    #[arg(long, global = true)]
    max_n: Option<u32>,
    /// Cap on the number of stored ball elements.
    #[arg(long, global = true, default_value_t = oracle::DEFAULT_LIMIT)]
    limit: usize,
    /// Worker threads for ball searches (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupName {
    Zz,
    F,
    Bg,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Rf,
    Lf,
}

#[derive(Subcommand)]
enum Command {
    /// Z wr Z over {a, t}.
    #[command(subcommand)]
    Zz(ZzCommand),
    /// Thompson's group F.
    #[command(subcommand)]
    F(FCommand),
    /// The embedding of Z wr Z into F.
    #[command(subcommand)]
    Embed(EmbedCommand),
    /// Baumslag's group over {a, s, t}.
    #[command(subcommand)]
    Bg(BgCommand),
    /// Breadth-first Cayley balls.
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Subcommand)]
enum ZzCommand {
    /// Word length of the element.
    Len { word: String },
    /// Normal form of the element.
    Nf {
        word: String,
        #[arg(long, value_enum, default_value_t = VariantArg::Rf)]
        variant: VariantArg,
    },
    /// A geodesic word for the element.
    Geodesic { word: String },
    /// Product of two elements.
    Mult { left: String, right: String },
}

#[derive(Subcommand)]
enum FCommand {
    /// Product of two words in the x_i.
    Mult { left: String, right: String },
    /// Normal form and reduced tree pair.
    Nf { word: String },
    /// Caret count and caret-pair types.
    Carets { word: String },
    /// Sum of the caret-pair weights.
    Weight { word: String },
    /// Word length over {x0, x1} by BFS.
    Len { word: String },
}

#[derive(Subcommand)]
enum EmbedCommand {
    /// Image of a Z wr Z word.
    Phi { word: String },
    /// Lengths, caret counts and the sandwich check for every short element.
    Report {
        /// Predict caret counts for one-sided elements as well.
        #[arg(long)]
        extended: bool,
    },
}

#[derive(Subcommand)]
enum BgCommand {
    /// Conjugate a Z wr Z element by s^k.
    ConjS {
        word: String,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        k: i64,
    },
    /// Lengths of a^(s^n) in G and in Z wr Z.
    Table,
    /// Evaluate a word over {a, s, t}.
    Eval { word: String },
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Every element of the ball with its distance.
    Ball { group: GroupName },
    /// Distance of one element from the identity.
    Distance { group: GroupName, word: String },
    /// Compare the Z wr Z length formula with BFS, or audit a ball's consistency.
    Verify { group: GroupName },
}

/// CSV or JSON output, written row by row.
struct Table<W: Write> {
    format: Format,
    header: Vec<&'static str>,
    csv: Option<csv::Writer<W>>,
    raw: Option<W>,
    rows: usize,
}

impl<W: Write> Table<W> {
    fn new(format: Format, header: &[&'static str], out: W) -> Result<Self> {
        let mut t = Table {
            format,
            header: header.to_vec(),
            csv: None,
            raw: None,
            rows: 0,
        };
        match format {
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(header).map_err(io_error)?;
                t.csv = Some(w);
            }
            Format::Json => t.raw = Some(out),
        }
        Ok(t)
    }

    fn row(&mut self, values: Vec<Value>) -> Result<()> {
        match self.format {
            Format::Csv => {
                let w = self.csv.as_mut().expect("csv writer");
                w.write_record(values.iter().map(csv_cell))
                    .map_err(io_error)?;
                w.flush().map_err(io_error)?;
            }
            Format::Json => {
                let obj: serde_json::Map<String, Value> = self
                    .header
                    .iter()
                    .map(|h| h.to_string())
                    .zip(values)
                    .collect();
                let w = self.raw.as_mut().expect("json writer");
                let sep = if self.rows == 0 { "[\n  " } else { ",\n  " };
                write!(w, "{sep}{}", Value::Object(obj)).map_err(io_error)?;
            }
        }
        self.rows += 1;
        Ok(())
    }

    fn finish(mut self) -> Result<()> {
        if let Some(w) = self.raw.as_mut() {
            let tail = if self.rows == 0 { "[]\n" } else { "\n]\n" };
            w.write_all(tail.as_bytes()).map_err(io_error)?;
            w.flush().map_err(io_error)?;
        }
        if let Some(w) = self.csv.as_mut() {
            w.flush().map_err(io_error)?;
        }
        Ok(())
    }
}

fn io_error(e: impl Into<io::Error>) -> Error {
    Error::Io(e.into())
}

fn csv_cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn number(n: impl ToString) -> Value {
    serde_json::from_str(&n.to_string()).expect("integer text is valid JSON")
}

/// One record: a bare value when it has a single field, else a header and a
/// row. JSON prints an object either way.
fn record(format: Format, fields: Vec<(&'static str, Value)>) -> Result<()> {
    let mut out = io::stdout().lock();
    match format {
        Format::Json => {
            let obj: serde_json::Map<String, Value> = fields
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect();
            writeln!(out, "{}", Value::Object(obj)).map_err(io_error)
        }
        Format::Csv if fields.len() == 1 => {
            writeln!(out, "{}", csv_cell(&fields[0].1)).map_err(io_error)
        }
        Format::Csv => {
            let header: Vec<&'static str> = fields.iter().map(|f| f.0).collect();
            let mut t = Table::new(format, &header, out)?;
            t.row(fields.into_iter().map(|f| f.1).collect())?;
            t.finish()
        }
    }
}

fn f_word(input: &str) -> Result<TreePair> {
    Ok(FWord::parse(input)?.evaluate())
}

fn pair_fields(p: &TreePair) -> Vec<(&'static str, Value)> {
    vec![
        ("normal_form", json!(nf_text(p))),
        ("neg", json!(p.neg().to_paren_string())),
        ("pos", json!(p.pos().to_paren_string())),
        ("carets", json!(p.caret_count())),
    ]
}

fn nf_text(p: &TreePair) -> String {
    let s = tree_pair_to_normal_form(p).to_string();
    if s.is_empty() {
        "1".to_string()
    } else {
        s
    }
}

fn radius_or(cli: &Cli, default: usize) -> usize {
    cli.radius.unwrap_or(default)
}

fn run(cli: &Cli) -> Result<bool> {
    let fmt = cli.format;
    match &cli.command {
        Command::Zz(cmd) => match cmd {
            ZzCommand::Len { word } => {
                let w = WreathElement::evaluate_word(word)?;
                record(fmt, vec![("length", number(w.word_length()))])?;
            }
            ZzCommand::Nf { word, variant } => {
                let w = WreathElement::evaluate_word(word)?;
                let v = match variant {
                    VariantArg::Rf => Variant::RightFirst,
                    VariantArg::Lf => Variant::LeftFirst,
                };
                record(
                    fmt,
                    vec![("normal_form", json!(w.normal_form(v).to_string()))],
                )?;
            }
            ZzCommand::Geodesic { word } => {
                let w = WreathElement::evaluate_word(word)?;
                record(
                    fmt,
                    vec![("geodesic", json!(w.geodesic_word().to_string()))],
                )?;
            }
            ZzCommand::Mult { left, right } => {
                let p = WreathElement::evaluate_word(left)?
                    .multiply(&WreathElement::evaluate_word(right)?);
                record(
                    fmt,
                    vec![
                        ("element", json!(p.serialize())),
                        (
                            "normal_form",
                            json!(p.normal_form(Variant::RightFirst).to_string()),
                        ),
                    ],
                )?;
            }
        },
        Command::F(cmd) => match cmd {
            FCommand::Mult { left, right } => {
                let p = f_word(left)?.multiply(&f_word(right)?);
                record(fmt, pair_fields(&p))?;
            }
            FCommand::Nf { word } => record(fmt, pair_fields(&f_word(word)?))?,
            FCommand::Carets { word } => {
                let p = f_word(word)?;
                let pairs: Vec<String> = classify_carets(&p)
                    .iter()
                    .map(|(a, b)| format!("({},{})", a.name(), b.name()))
                    .collect();
                record(
                    fmt,
                    vec![
                        ("carets", json!(p.caret_count())),
                        ("pairs", json!(pairs.join(" "))),
                    ],
                )?;
            }
            FCommand::Weight { word } => {
                let w = fordham_weight(&f_word(word)?)?;
                record(fmt, vec![("weight", json!(w))])?;
            }
            FCommand::Len { word } => {
                let p = f_word(word)?;
                let d = oracle::distance(&ThompsonGroup, &p, radius_or(cli, 12), cli.limit)?;
                record(fmt, vec![("length", distance_value(d))])?;
            }
        },
        Command::Embed(cmd) => match cmd {
            EmbedCommand::Phi { word } => {
                let w = WreathElement::evaluate_word(word)?;
                let mut fields = vec![(
                    "element",
                    json!(w.normal_form(Variant::RightFirst).to_string()),
                )];
                fields.extend(pair_fields(&embedding::phi(&w)));
                record(fmt, fields)?;
            }
            EmbedCommand::Report { extended } => {
                let max_len = cli.max_len.unwrap_or(3);
                let radius = radius_or(cli, 4 * max_len);
                let (records, partial) =
                    match embedding::distortion_report(max_len, radius, cli.limit, *extended) {
                        Ok(r) => (r, None),
                        Err(Error::PartialReport {
                            completed_radius,
                            records,
                        }) => (records, Some(completed_radius)),
                        Err(e) => return Err(e),
                    };
                let header: Vec<&'static str> = DistortionRecord::CSV_HEADER.split(',').collect();
                let mut t = Table::new(fmt, &header, io::stdout().lock())?;
                let mut all_ok = true;
                for r in &records {
                    all_ok &= r.sandwich_ok;
                    let v = r.to_json();
                    t.row(header.iter().map(|h| v[*h].clone()).collect())?;
                }
                t.finish()?;
                if let Some(c) = partial {
                    eprintln!(
                        "warning: F ball stopped at radius {c}; longer images are reported as >{c}"
                    );
                }
                return Ok(all_ok);
            }
        },
        Command::Bg(cmd) => match cmd {
            BgCommand::ConjS { word, k } => {
                let w = baumslag::s_conjugate(&WreathElement::evaluate_word(word)?, *k)?;
                record(
                    fmt,
                    vec![
                        ("element", json!(w.serialize())),
                        (
                            "normal_form",
                            json!(w.normal_form(Variant::RightFirst).to_string()),
                        ),
                        ("length", number(w.word_length())),
                    ],
                )?;
            }
            BgCommand::Table => {
                let max_n = cli.max_n.unwrap_or(10);
                let mut t = Table::new(
                    fmt,
                    &["n", "len_G_witness", "len_H", "ratio"],
                    io::stdout().lock(),
                )?;
                for n in 0..=max_n {
                    let row = baumslag::distortion_row(n);
                    t.row(vec![
                        json!(row.n),
                        json!(row.len_g_witness),
                        number(&row.len_h),
                        json!(row.ratio()),
                    ])?;
                }
                t.finish()?;
            }
            BgCommand::Eval { word } => {
                let g = BaumslagElement::evaluate_word(word)?;
                record(
                    fmt,
                    vec![
                        ("element", json!(g.serialize())),
                        ("in_h", json!(g.in_subgroup_h())),
                    ],
                )?;
            }
        },
        Command::Oracle(cmd) => return run_oracle(cli, cmd),
    }
    Ok(true)
}

fn distance_value(d: Distance) -> Value {
    match d {
        Distance::Exact(n) => json!(n),
        Distance::Unknown(_) => json!(d.to_string()),
    }
}

fn run_oracle(cli: &Cli, cmd: &OracleCommand) -> Result<bool> {
    let fmt = cli.format;
    let radius = cli.radius;
    match cmd {
        OracleCommand::Ball { group } => match group {
            GroupName::Zz => print_ball(cli, &WreathGroup, radius.unwrap_or(4)),
            GroupName::F => print_ball(cli, &ThompsonGroup, radius.unwrap_or(4)),
            GroupName::Bg => print_ball(cli, &BaumslagGroup, radius.unwrap_or(3)),
        },
        OracleCommand::Distance { group, word } => {
            let r = radius.unwrap_or(12);
            let d = match group {
                GroupName::Zz => oracle::distance(
                    &WreathGroup,
                    &WreathElement::evaluate_word(word)?,
                    r,
                    cli.limit,
                )?,
                GroupName::F => oracle::distance(&ThompsonGroup, &f_word(word)?, r, cli.limit)?,
                GroupName::Bg => oracle::distance(
                    &BaumslagGroup,
                    &BaumslagElement::evaluate_word(word)?,
                    r,
                    cli.limit,
                )?,
            };
            record(fmt, vec![("distance", distance_value(d))])?;
            Ok(true)
        }
        OracleCommand::Verify { group } => {
            let r = radius.unwrap_or(6);
            let (ok, n, what) = match group {
                GroupName::Zz => {
                    let ball = oracle::ball(&WreathGroup, r, cli.limit)?;
                    let bad = ball
                        .distances
                        .iter()
                        .filter(|(w, &d)| w.word_length() != BigUint::from(d))
                        .count();
                    (bad == 0, ball.len(), "formula = BFS")
                }
                GroupName::F => audit(&ThompsonGroup, r, cli.limit)?,
                GroupName::Bg => audit(&BaumslagGroup, r, cli.limit)?,
            };
            let verdict = if ok { "OK" } else { "FAIL" };
            println!("{verdict}: {what} on {n} elements");
            Ok(ok)
        }
    }
}

fn audit<G: CayleyGroup>(
    group: &G,
    radius: usize,
    limit: usize,
) -> Result<(bool, usize, &'static str)> {
    let ball = oracle::ball(group, radius, limit)?;
    let mut elements = vec![group.identity()];
    let mut seen = std::collections::HashSet::new();
    seen.insert(group.key(&elements[0]));
    let mut i = 0;
    while i < elements.len() {
        let e = elements[i].clone();
        i += 1;
        for g in 0..group.generator_labels().len() {
            let n = group.apply(&e, g);
            let k = group.key(&n);
            if ball.distance_of(&k).is_some() && seen.insert(k) {
                elements.push(n);
            }
        }
    }
    Ok((
        oracle::audit(group, &ball, &elements),
        ball.len(),
        "ball distances consistent",
    ))
}

fn print_ball<G: CayleyGroup>(cli: &Cli, group: &G, radius: usize) -> Result<bool> {
    let ball = oracle::ball(group, radius, cli.limit)?;
    let mut t = Table::new(cli.format, &["element", "distance"], io::stdout().lock())?;
    for (text, d) in ball.rows(group) {
        t.row(vec![json!(text), json!(d)])?;
    }
    t.finish()?;
    for (r, size) in ball.sphere_sizes.iter().enumerate() {
        eprintln!("radius {r}: {size}");
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
