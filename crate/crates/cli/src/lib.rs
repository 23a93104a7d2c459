//! Command-line front end: each subcommand builds one report and renders it
//! as JSON, DOT or plain text.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or invalid input,
//! 3 resource cap exceeded.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use picmon::automata::{compile, Alphabet, Nfa, NfaJson};
use picmon::mso::{
    self, builtin, evaluate_with, models_of, Assignment, Bounds, Formula, PictureModel,
};
use picmon::picture::{
    embed_bn, shipped_toys, topin, verify_semexists, witness_l, AttributeSet, ColumnAlphabet,
    FragmentJson, FragmentLang, LengthFunction, Repairs,
};
use picmon::semigroup::{is_aperiodic, maximal_groups, syntactic_monoid, MonoidView};
use picmon::verify::{self, SuiteReport, VerifyConfig};

pub const TOOL: &str = "picmon";

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] picmon::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: invalid JSON: {source}")]
    Json {
        path: String,
        #[source]
        source: serde_json::Error,
    },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_cap() => 3,
            _ => 2,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(
    name = "picmon",
    version,
    about = "Syntactic monoids of picture-language fragments"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = picmon::automata::DEFAULT_STATE_CAP, value_parser = positive)]
    pub cap_states: usize,
    #[arg(long, default_value_t = picmon::semigroup::DEFAULT_MONOID_CAP, value_parser = positive)]
    pub cap_monoid: usize,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Minimal DFA and syntactic monoid of a word language.
    Synmon(SynmonArgs),
    /// Boolean-matrix product language: compositional build, oracle, and the
    /// embedding of B_n into its syntactic monoid.
    Witness(WitnessArgs),
    /// Block-product recognizer for erasing one attribute.
    Blockprod(BlockprodArgs),
    /// Evaluate a formula on a picture or enumerate its small models.
    Mso(MsoArgs),
    /// Run named verification suites.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct SynmonArgs {
    /// Automaton in the JSON interchange format.
    pub automaton: Option<PathBuf>,
    /// Regular expression instead of an automaton file.
    #[arg(long, conflicts_with = "automaton")]
    pub regex: Option<String>,
    /// Comma-separated letters for --regex; defaults to the letters it uses.
    #[arg(long)]
    pub letters: Option<String>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct WitnessArgs {
    /// Matrix dimension, used at every height up to --m.
    #[arg(long, default_value_t = 1, value_parser = positive)]
    pub n: usize,
    /// Fragment height.
    #[arg(long, default_value_t = 1, value_parser = positive)]
    pub m: usize,
    /// Length function as `height=length,...`; overrides --n.
    #[arg(long)]
    pub f_table: Option<String>,
    /// Build from the unrepaired equations.
    #[arg(long)]
    pub literal: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct BlockprodArgs {
    /// A shipped toy language by name; `list` prints the names.
    #[arg(long, conflicts_with_all = ["lang", "topin"])]
    pub toy: Option<String>,
    /// Fragment language in the JSON interchange format.
    #[arg(long)]
    pub lang: Option<PathBuf>,
    /// Top-row expression over {0,1} for attribute --mu.
    #[arg(long, conflicts_with = "lang")]
    pub topin: Option<String>,
    /// Attribute to erase.
    #[arg(long, default_value = "mu")]
    pub mu: String,
    /// Attributes for --topin, comma-separated.
    #[arg(long, default_value = "mu")]
    pub attrs: String,
    /// Height for --topin.
    #[arg(long, default_value_t = 1, value_parser = positive)]
    pub m: usize,
    #[arg(long, default_value_t = 6)]
    pub max_len: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct MsoArgs {
    /// Formula text (s-expression).
    #[arg(long, conflicts_with_all = ["formula_file", "builtin"])]
    pub formula: Option<String>,
    #[arg(long, conflicts_with = "builtin")]
    pub formula_file: Option<PathBuf>,
    /// A library formula by name.
    #[arg(long)]
    pub builtin: Option<String>,
    /// Picture in the JSON model format.
    #[arg(long, conflicts_with = "blank")]
    pub picture: Option<PathBuf>,
    /// Blank picture `MxN` over the attributes.
    #[arg(long)]
    pub blank: Option<String>,
    /// Position assignment `x=i,j` (1-based), repeatable.
    #[arg(long = "assign")]
    pub assign: Vec<String>,
    /// Attributes, comma-separated.
    #[arg(long, default_value = "")]
    pub attrs: String,
    /// Attributes read as positions, comma-separated.
    #[arg(long, default_value = "")]
    pub k: String,
    #[arg(long, default_value_t = 2)]
    pub max_rows: usize,
    #[arg(long, default_value_t = 2)]
    pub max_cols: usize,
    #[arg(long)]
    pub max_cells: Option<usize>,
    /// Cross-check the relativization of the formula on all pictures in the bounds.
    #[arg(long)]
    pub relativize: bool,
    #[arg(long, default_value_t = mso::DEFAULT_SET_CAP)]
    pub set_cap: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Suite name or `all`.
    pub suite: String,
    #[arg(long, default_value_t = VerifyConfig::default().seed)]
    pub seed: u64,
    #[arg(long, default_value_t = VerifyConfig::default().max_len)]
    pub max_len: usize,
    /// Restrict grid suites to one matrix dimension (with --m).
    #[arg(long, requires = "m")]
    pub n: Option<usize>,
    #[arg(long, requires = "n")]
    pub m: Option<usize>,
    #[command(flatten)]
    pub common: Common,
}

/// A finished command: the rendered report and the exit code.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub rendered: String,
}

#[derive(Debug, Serialize)]
struct Header {
    tool: &'static str,
    version: &'static str,
    timestamp: String,
}

fn header() -> Header {
    Header {
        tool: TOOL,
        version: picmon::VERSION,
        timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
    }
}

/// JSON with the run header as its own first line, so that reports of two
/// runs differ only there.
fn render_json(command: &str, body: &impl Serialize) -> String {
    let head = serde_json::to_string(&header()).expect("header serializes");
    let body = serde_json::to_string_pretty(body).expect("report serializes");
    format!("{{\"header\": {head},\n\"command\": \"{command}\",\n\"report\": {body}\n}}\n")
}

fn text_header() -> String {
    let h = header();
    format!("# {} {} {}\n", h.tool, h.version, h.timestamp)
}

pub fn run(cli: Cli) -> CliResult<Outcome> {
    match cli.command {
        Command::Synmon(a) => synmon(a),
        Command::Witness(a) => witness(a),
        Command::Blockprod(a) => blockprod(a),
        Command::Mso(a) => mso_cmd(a),
        Command::Verify(a) => verify_cmd(a),
    }
}

/// Writes the outcome to `--out` or returns it for standard output.
pub fn emit(out: Option<&Path>, o: &Outcome) -> CliResult<()> {
    match out {
        Some(p) => std::fs::write(p, &o.rendered).map_err(|source| CliError::Io {
            path: p.display().to_string(),
            source,
        }),
        None => {
            print!("{}", o.rendered);
            Ok(())
        }
    }
}

impl Command {
    pub fn out(&self) -> Option<&Path> {
        let c = match self {
            Command::Synmon(a) => &a.common,
            Command::Witness(a) => &a.common,
            Command::Blockprod(a) => &a.common,
            Command::Mso(a) => &a.common,
            Command::Verify(a) => &a.common,
        };
        c.out.as_deref()
    }
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> CliResult<T> {
    serde_json::from_str(&read(path)?).map_err(|source| CliError::Json {
        path: path.display().to_string(),
        source,
    })
}

fn no_dot(what: &str) -> CliError {
    CliError::Usage(format!("--format dot is not available for {what}"))
}

fn split_list(s: &str) -> Vec<String> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(String::from)
        .collect()
}

// ---------------------------------------------------------------- synmon

#[derive(Debug, Serialize)]
struct SynmonReport {
    source: String,
    alphabet: Vec<String>,
    minimal_dfa_states: usize,
    size: usize,
    identity: u32,
    aperiodic: bool,
    idempotents: usize,
    group_orders: Vec<usize>,
    accepting: Vec<u32>,
    representatives: Vec<String>,
}

fn synmon(a: SynmonArgs) -> CliResult<Outcome> {
    let (source, nfa) = match (&a.automaton, &a.regex) {
        (Some(p), _) => {
            let j: NfaJson = read_json(p)?;
            (p.display().to_string(), Nfa::from_json(&j)?)
        }
        (None, Some(re)) => {
            let letters = match &a.letters {
                Some(l) => split_list(l),
                None => re
                    .chars()
                    .filter(|c| c.is_alphanumeric())
                    .map(String::from)
                    .collect::<BTreeSet<_>>()
                    .into_iter()
                    .collect(),
            };
            if letters.is_empty() {
                return Err(CliError::Usage(
                    "--letters is required when the expression uses no letters".into(),
                ));
            }
            let alphabet = Alphabet::with_labels(letters)?;
            (re.clone(), compile(re, &alphabet)?)
        }
        (None, None) => return Err(CliError::Usage("give an automaton file or --regex".into())),
    };
    let dfa = nfa.minimal_dfa(a.common.cap_states)?;
    let m = syntactic_monoid(&dfa, a.common.cap_monoid)?;
    let groups = maximal_groups(&m);
    let alphabet = dfa.alphabet().clone();
    let rep = SynmonReport {
        source,
        alphabet: (0..alphabet.size() as u32)
            .map(|x| alphabet.label(x))
            .collect(),
        minimal_dfa_states: dfa.states(),
        size: m.size(),
        identity: m.identity(),
        aperiodic: is_aperiodic(&m),
        idempotents: groups.len(),
        group_orders: groups.iter().map(|g| g.order()).collect(),
        accepting: m
            .accept()
            .map(|acc| (0..m.size() as u32).filter(|&x| acc[x as usize]).collect())
            .unwrap_or_default(),
        representatives: (0..m.size() as u32)
            .map(|x| {
                let w = m.rep(x).unwrap_or_default();
                if w.is_empty() {
                    "ε".to_string()
                } else {
                    alphabet.format_word(&w)
                }
            })
            .collect(),
    };
    let rendered = match a.common.format {
        Format::Json => render_json("synmon", &rep),
        Format::Dot => m.cayley_dot(true),
        Format::Text => {
            let mut s = text_header();
            let _ = writeln!(s, "language {}", rep.source);
            let _ = writeln!(s, "minimal dfa states {}", rep.minimal_dfa_states);
            let _ = writeln!(s, "monoid size {}", rep.size);
            let _ = writeln!(s, "aperiodic {}", rep.aperiodic);
            let _ = writeln!(s, "maximal group orders {:?}", rep.group_orders);
            let _ = writeln!(s, "elements {}", rep.representatives.join(" "));
            s
        }
    };
    Ok(Outcome { code: 0, rendered })
}

// ---------------------------------------------------------------- witness

#[derive(Debug, Serialize)]
struct WitnessReport {
    n: usize,
    m: usize,
    length_function: LengthFunction,
    repaired: bool,
    attributes: Vec<String>,
    compositional_states: usize,
    oracle_states: usize,
    equivalent: bool,
    counterexample: Option<String>,
    embedding: Option<picmon::picture::EmbedReport>,
    passed: bool,
}

fn witness(a: WitnessArgs) -> CliResult<Outcome> {
    let f = match &a.f_table {
        Some(t) => LengthFunction::parse_table(t)?,
        None => LengthFunction::constant(a.n, 1..=a.m),
    };
    let n = f.eval(a.m)?;
    let repairs = if a.literal {
        Repairs::none()
    } else {
        Repairs::all()
    };
    let cap = a.common.cap_states;
    let w = witness_l(&f, a.m, repairs, cap)?;
    let cex = w.counterexample(cap)?;
    // the embedding is about the language itself, so it runs on the oracle
    let embedding = Some(embed_bn(&f, a.m, cap, a.common.cap_monoid)?);
    let passed = cex.is_none() && embedding.as_ref().is_some_and(|e| e.is_embedding());
    let rep = WitnessReport {
        n,
        m: a.m,
        length_function: f,
        repaired: !a.literal,
        attributes: w.col.attrs().names().to_vec(),
        compositional_states: w.compositional.nfa().states(),
        oracle_states: w.oracle.states(),
        equivalent: cex.is_none(),
        counterexample: cex.map(|x| w.col.format_word(&x)),
        embedding,
        passed,
    };
    let rendered = match a.common.format {
        Format::Json => render_json("witness", &rep),
        Format::Dot => w.oracle.to_dot(),
        Format::Text => {
            let mut s = text_header();
            let _ = writeln!(s, "n {} m {} repaired {}", rep.n, rep.m, rep.repaired);
            let _ = writeln!(
                s,
                "compositional states {} oracle states {}",
                rep.compositional_states, rep.oracle_states
            );
            let _ = writeln!(s, "equivalent {}", rep.equivalent);
            if let Some(c) = &rep.counterexample {
                let _ = writeln!(s, "counterexample {c}");
            }
            if let Some(e) = &rep.embedding {
                let _ = writeln!(
                    s,
                    "embedding image {} of {} multiplicative {} injective {}",
                    e.image_size, e.bn_size, e.multiplicative, e.injective
                );
            }
            let _ = writeln!(s, "{}", if rep.passed { "PASS" } else { "FAIL" });
            s
        }
    };
    Ok(Outcome {
        code: if passed { 0 } else { 1 },
        rendered,
    })
}

// ---------------------------------------------------------------- blockprod

fn blockprod(a: BlockprodArgs) -> CliResult<Outcome> {
    if a.common.format == Format::Dot {
        return Err(no_dot("blockprod"));
    }
    let toys = shipped_toys()?;
    let mut langs: Vec<(String, String, FragmentLang)> = Vec::new();
    match (&a.toy, &a.lang, &a.topin) {
        (Some(t), _, _) if t == "list" => {
            let names: Vec<&str> = toys.iter().map(|t| t.name).collect();
            return Ok(Outcome {
                code: 0,
                rendered: format!("{}\n", names.join("\n")),
            });
        }
        (Some(t), _, _) => {
            let toy = toys
                .into_iter()
                .find(|x| x.name == t)
                .ok_or_else(|| CliError::Usage(format!("unknown toy `{t}` (try --toy list)")))?;
            langs.push((toy.name.to_string(), toy.mu.to_string(), toy.lang));
        }
        (None, Some(p), _) => {
            let j: FragmentJson = read_json(p)?;
            langs.push((
                p.display().to_string(),
                a.mu.clone(),
                FragmentLang::from_json(&j)?,
            ));
        }
        (None, None, Some(re)) => {
            let col = ColumnAlphabet::new(AttributeSet::new(split_list(&a.attrs))?, a.m)?;
            langs.push((
                format!("topin({}, {re})", a.mu),
                a.mu.clone(),
                topin(&a.mu, re, &col)?,
            ));
        }
        (None, None, None) => {
            for t in toys {
                langs.push((t.name.to_string(), t.mu.to_string(), t.lang));
            }
        }
    }
    let mut reports = Vec::new();
    for (name, mu, lang) in &langs {
        let r = verify_semexists(
            mu,
            lang,
            a.max_len,
            a.common.cap_states,
            a.common.cap_monoid,
            1 << 24,
        )?;
        reports.push(json!({"language": name, "passed": r.passed(), "result": r}));
    }
    let passed = reports.iter().all(|r| r["passed"] == Value::Bool(true));
    let rendered = match a.common.format {
        Format::Json => render_json(
            "blockprod",
            &json!({"max_len": a.max_len, "passed": passed, "languages": reports}),
        ),
        _ => {
            let mut s = text_header();
            for r in &reports {
                let _ = writeln!(
                    s,
                    "{} {} words {} monoid {}",
                    if r["passed"] == Value::Bool(true) {
                        "PASS"
                    } else {
                        "FAIL"
                    },
                    r["language"].as_str().unwrap_or(""),
                    r["result"]["words_checked"],
                    r["result"]["monoid_size"],
                );
            }
            s
        }
    };
    Ok(Outcome {
        code: if passed { 0 } else { 1 },
        rendered,
    })
}

// ---------------------------------------------------------------- mso

fn parse_assign(s: &str) -> CliResult<(String, usize, usize)> {
    let bad = || {
        CliError::Usage(format!(
            "bad assignment `{s}`, expected x=i,j with 1-based i, j"
        ))
    };
    let (name, pos) = s.split_once('=').ok_or_else(bad)?;
    let (i, j) = pos.split_once(',').ok_or_else(bad)?;
    let i: usize = i.trim().parse().map_err(|_| bad())?;
    let j: usize = j.trim().parse().map_err(|_| bad())?;
    if i == 0 || j == 0 {
        return Err(bad());
    }
    Ok((name.trim().to_string(), i - 1, j - 1))
}

fn parse_size(s: &str) -> CliResult<(usize, usize)> {
    let bad = || CliError::Usage(format!("bad size `{s}`, expected MxN"));
    let (m, n) = s.split_once('x').ok_or_else(bad)?;
    Ok((
        m.trim().parse().map_err(|_| bad())?,
        n.trim().parse().map_err(|_| bad())?,
    ))
}

fn mso_cmd(a: MsoArgs) -> CliResult<Outcome> {
    if a.common.format == Format::Dot {
        return Err(no_dot("mso"));
    }
    let phi = match (&a.formula, &a.formula_file, &a.builtin) {
        (Some(t), _, _) => Formula::parse(t)?,
        (None, Some(p), _) => Formula::parse(&read(p)?)?,
        (None, None, Some(b)) => builtin(b)?,
        _ => {
            return Err(CliError::Usage(
                "give --formula, --formula-file or --builtin".into(),
            ))
        }
    };
    let attrs = AttributeSet::new(split_list(&a.attrs))?;
    let k = split_list(&a.k);
    let krefs: Vec<&str> = k.iter().map(String::as_str).collect();
    let bounds = Bounds {
        max_rows: a.max_rows,
        max_cols: a.max_cols,
        max_cells: a.max_cells.unwrap_or(a.max_rows * a.max_cols),
    };
    let body = if let Some(p) = single_picture(&a, &attrs)? {
        evaluate_picture(&phi, &p, &a)?
    } else if a.relativize {
        let rel = mso::check_relativization(&phi, &attrs, bounds, a.set_cap)?;
        let interval = mso::check_interval(&phi, &attrs, bounds, a.set_cap)?;
        json!({"formula": phi.to_string(), "relativization": rel, "interval": interval, "passed": rel.passed() && interval.passed()})
    } else {
        let models = models_of(&phi, &attrs, &krefs, bounds, a.set_cap)?;
        let total = mso::pictures(&attrs, &krefs, bounds)?.len();
        json!({
            "formula": phi.to_string(),
            "attributes": attrs.names(),
            "positions": k,
            "bounds": {"max_rows": bounds.max_rows, "max_cols": bounds.max_cols, "max_cells": bounds.max_cells},
            "pictures": total,
            "models": models.len(),
            "listing": models.iter().map(|p| json!({"size": [p.height(), p.width()], "rows": p.render()})).collect::<Vec<_>>(),
        })
    };
    let passed = body.get("passed").and_then(Value::as_bool).unwrap_or(true);
    let rendered = match a.common.format {
        Format::Json => render_json("mso", &body),
        _ => {
            let mut s = text_header();
            let _ = writeln!(s, "formula {}", phi);
            if let Some(rows) = body.get("truth_table").and_then(Value::as_array) {
                for r in rows {
                    let _ = writeln!(s, "{} {}", r["assignment"], r["value"]);
                }
            } else if let Some(v) = body.get("value") {
                let _ = writeln!(s, "value {v}");
            } else if let Some(list) = body.get("listing").and_then(Value::as_array) {
                let _ = writeln!(s, "models {} of {}", body["models"], body["pictures"]);
                for p in list {
                    let _ = writeln!(s, "{}", p["rows"].as_str().unwrap_or(""));
                }
            } else {
                let _ = writeln!(s, "{}", if passed { "PASS" } else { "FAIL" });
            }
            s
        }
    };
    Ok(Outcome {
        code: if passed { 0 } else { 1 },
        rendered,
    })
}

fn single_picture(a: &MsoArgs, attrs: &AttributeSet) -> CliResult<Option<PictureModel>> {
    if let Some(p) = &a.picture {
        return Ok(Some(read_json(p)?));
    }
    if let Some(b) = &a.blank {
        let (m, n) = parse_size(b)?;
        return Ok(Some(PictureModel::blank(attrs.clone(), m, n)?));
    }
    Ok(None)
}

/// One verdict, or a truth table over the free position variables that are
/// neither assigned nor read from the picture.
fn evaluate_picture(phi: &Formula, p: &PictureModel, a: &MsoArgs) -> CliResult<Value> {
    let mut base = Assignment::new();
    for s in &a.assign {
        let (x, i, j) = parse_assign(s)?;
        base = base.with(&x, i, j);
    }
    let open: Vec<String> = phi
        .free_fo()
        .into_iter()
        .filter(|x| !base.fo.contains_key(x) && !p.attrs.contains(x))
        .collect();
    let cells: Vec<(usize, usize)> = (0..p.height())
        .flat_map(|i| (0..p.width()).map(move |j| (i, j)))
        .collect();
    if open.is_empty() {
        let v = evaluate_with(phi, p, &base, a.set_cap)?;
        return Ok(json!({"formula": phi.to_string(), "picture": p.render(), "value": v}));
    }
    let combos = cells
        .len()
        .checked_pow(open.len() as u32)
        .filter(|&c| c <= 1 << 16)
        .ok_or_else(|| {
            CliError::Usage(format!(
                "{} free variables over {} positions is too many assignments",
                open.len(),
                cells.len()
            ))
        })?;
    let mut rows = Vec::with_capacity(combos);
    for code in 0..combos {
        let mut c = code;
        let mut asg = base.clone();
        let mut shown = serde_json::Map::new();
        for x in &open {
            let (i, j) = cells[c % cells.len()];
            c /= cells.len();
            asg = asg.with(x, i, j);
            shown.insert(x.clone(), json!([i + 1, j + 1]));
        }
        let v = evaluate_with(phi, p, &asg, a.set_cap)?;
        rows.push(json!({"assignment": shown, "value": v}));
    }
    Ok(
        json!({"formula": phi.to_string(), "picture": p.render(), "variables": open, "truth_table": rows}),
    )
}

// ---------------------------------------------------------------- verify

#[derive(Debug, Serialize)]
struct VerifyReport<'a> {
    config: &'a VerifyConfig,
    passed: bool,
    suites: &'a [SuiteReport],
}

pub fn verify_config(a: &VerifyArgs) -> VerifyConfig {
    let mut cfg = VerifyConfig {
        seed: a.seed,
        max_len: a.max_len,
        state_cap: a.common.cap_states,
        monoid_cap: a.common.cap_monoid,
        ..VerifyConfig::default()
    };
    if let (Some(n), Some(m)) = (a.n, a.m) {
        cfg.cells = vec![(n, m)];
    }
    cfg
}

fn verify_cmd(a: VerifyArgs) -> CliResult<Outcome> {
    if a.common.format == Format::Dot {
        return Err(no_dot("verify"));
    }
    let names: Vec<&str> = if a.suite == "all" {
        verify::SUITES.to_vec()
    } else if verify::SUITES.contains(&a.suite.as_str()) {
        vec![a.suite.as_str()]
    } else {
        return Err(CliError::Usage(format!(
            "unknown suite `{}` (expected all or one of {})",
            a.suite,
            verify::SUITES.join(", ")
        )));
    };
    let cfg = verify_config(&a);
    let mut suites = Vec::new();
    for name in names {
        let start = std::time::Instant::now();
        let r = verify::run_suite(name, &cfg)?;
        eprintln!(
            "{name}: {} ({:.1}s)",
            if r.passed { "pass" } else { "FAIL" },
            start.elapsed().as_secs_f64()
        );
        suites.push(r);
    }
    let passed = suites.iter().all(|s| s.passed);
    let rendered = match a.common.format {
        Format::Json => render_json(
            "verify",
            &VerifyReport {
                config: &cfg,
                passed,
                suites: &suites,
            },
        ),
        _ => {
            let mut s = text_header();
            for suite in &suites {
                for c in &suite.checks {
                    let _ = writeln!(
                        s,
                        "{} {} / {}",
                        if c.passed { "PASS" } else { "FAIL" },
                        suite.suite,
                        c.name
                    );
                }
            }
            let _ = writeln!(s, "{}", if passed { "ALL PASS" } else { "FAILURES" });
            s
        }
    };
    Ok(Outcome {
        code: if passed { 0 } else { 1 },
        rendered,
    })
}
