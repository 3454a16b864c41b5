//! Command-line front end: request parsing, dispatch and rendering.

use std::ffi::OsString;
use std::path::Path;

use clap::{ArgAction, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use edr_core::completion::{complete_row, verify_completion, CompletionResult};
use edr_core::element::{element_from_json, element_to_json, format_element, parse_element, parse_json};
use edr_core::matred::{diagonal_reduce, reduce_2x2, reduction_defect, ReductionResult, Side};
use edr_core::registry::{make_ring, shipped_kinds, RingRegistryEntry};
use edr_core::ring::ideal_generator;
use edr_core::stability::{check_property, Property, SearchBounds};
use edr_core::{DynElem, DynRing, Error, Matrix};

/// Overrides the `y` window of bounded verdicts.
pub const MAX_SEARCH_ENV: &str = "EDR_MAX_SEARCH";

#[derive(Debug, Parser)]
#[command(name = "edr", version, about = "Diagonal reduction, row completion and stability checks over Bézout rings")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputMode::Json, global = true)]
    pub output: OutputMode,

    /// Re-check certificates before reporting success.
    #[arg(long, default_value_t = true, action = ArgAction::Set, global = true)]
    pub verify: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputMode {
    Json,
    Pretty,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Diagonal reduction P·A·Q = D.
    Snf {
        #[arg(long)]
        ring: Option<String>,
        /// Matrix as JSON, a whitespace grid, or a file holding either.
        #[arg(long)]
        input: String,
    },
    /// Elementary reduction of [[a, 0], [b, c]] to diag(1, δ).
    #[command(name = "reduce2x2")]
    Reduce2x2 {
        #[arg(long)]
        ring: Option<String>,
        #[arg(long)]
        input: String,
    },
    /// Complete a row to a square matrix with determinant d.
    Complete {
        #[arg(long)]
        ring: Option<String>,
        /// Comma-separated elements, or a JSON array.
        #[arg(long, allow_hyphen_values = true)]
        row: Option<String>,
        /// Target determinant; defaults to the generator of the row ideal.
        #[arg(long, allow_hyphen_values = true)]
        d: Option<String>,
        /// JSON payload {"ring", "row", "d"} instead of the flags.
        #[arg(long)]
        input: Option<String>,
    },
    /// Check a ring property.
    Check {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        property: String,
        /// Sampled pairs for verdicts over infinite rings.
        #[arg(long)]
        bound: Option<u64>,
    },
    /// List the shipped ring kinds and their capabilities.
    Rings,
}

/// Exit status with the text destined for each stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, msg: impl std::fmt::Display) -> Self {
        let line = msg.to_string().replace('\n', " ");
        Outcome {
            code,
            stdout: String::new(),
            stderr: format!("edr: {line}\n"),
        }
    }
}

/// 2 for malformed input, 1 for everything the mathematics rejects.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::Descriptor { .. } | Error::DescriptorMismatch { .. } => 2,
        _ => 1,
    }
}

fn syntax(reason: impl Into<String>) -> Error {
    Error::Parse {
        position: 0,
        reason: reason.into(),
    }
}

/// Parses arguments and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => dispatch(&cli),
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome::ok(text)
            }
        }
    }
}

pub fn dispatch(cli: &Cli) -> Outcome {
    let result = match &cli.command {
        Command::Snf { ring, input } => snf(cli, ring.as_deref(), input),
        Command::Reduce2x2 { ring, input } => reduce2x2(cli, ring.as_deref(), input),
        Command::Complete { ring, row, d, input } => {
            complete(cli, ring.as_deref(), row.as_deref(), d.as_deref(), input.as_deref())
        }
        Command::Check {
            ring,
            property,
            bound,
        } => check(cli, ring, property, *bound),
        Command::Rings => Ok(Ok(rings(cli))),
    };
    match result {
        Ok(Ok(text)) => Outcome::ok(text),
        Ok(Err(failed_verification)) => Outcome::fail(1, failed_verification),
        Err(e) => Outcome::fail(exit_code(&e), e),
    }
}

/// Command output, or the message of a certificate that did not verify.
type Rendered = std::result::Result<String, String>;

fn load(input: &str) -> Result<String, Error> {
    if input == "-" {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s)
            .map_err(|e| syntax(format!("reading stdin: {e}")))?;
        return Ok(s);
    }
    let t = input.trim_start();
    if !t.starts_with('{') && !t.starts_with('[') && !input.contains('\n') && Path::new(input).is_file() {
        return std::fs::read_to_string(input).map_err(|e| syntax(format!("reading {input}: {e}")));
    }
    Ok(input.to_string())
}

/// The ring named by the flag, the payload, or both when they agree.
fn resolve_ring(flag: Option<&str>, payload: Option<&Value>) -> Result<RingRegistryEntry, Error> {
    let payload = match payload {
        Some(Value::String(s)) => Some(s.as_str()),
        Some(other) => return Err(syntax(format!("\"ring\" must be a descriptor string, found {other}"))),
        None => None,
    };
    match (flag, payload) {
        (Some(f), Some(p)) => {
            let (ef, ep) = (make_ring(f)?, make_ring(p)?);
            if ef.descriptor != ep.descriptor {
                return Err(Error::DescriptorMismatch {
                    left: format!("--ring {}", ef.descriptor),
                    right: format!("payload ring {}", ep.descriptor),
                });
            }
            Ok(ef)
        }
        (Some(e), None) | (None, Some(e)) => make_ring(e),
        (None, None) => Err(syntax("no ring given: pass --ring or a \"ring\" field")),
    }
}

fn rows_from_json(ring: &DynRing, v: &Value) -> Result<Matrix<DynElem>, Error> {
    let rows = v
        .as_array()
        .ok_or_else(|| syntax(format!("\"rows\" must be an array of rows, found {v}")))?;
    let mut out = Vec::with_capacity(rows.len());
    for (i, r) in rows.iter().enumerate() {
        let items = r
            .as_array()
            .ok_or_else(|| syntax(format!("row {} is not an array", i + 1)))?;
        out.push(items.iter().map(|x| element_from_json(ring, x)).collect::<Result<Vec<_>, _>>()?);
    }
    build_matrix(out)
}

fn build_matrix(rows: Vec<Vec<DynElem>>) -> Result<Matrix<DynElem>, Error> {
    let Some(first) = rows.first() else {
        return Err(syntax("matrix has no rows"));
    };
    if first.is_empty() {
        return Err(syntax("matrix has no columns"));
    }
    if let Some(i) = rows.iter().position(|r| r.len() != first.len()) {
        return Err(syntax(format!(
            "ragged matrix: row {} has {} entries, row 1 has {}",
            i + 1,
            rows[i].len(),
            first.len()
        )));
    }
    Matrix::from_rows(rows)
}

/// Reads a matrix given as `{"ring": ..., "rows": [...]}`, a bare JSON
/// array of rows, or a whitespace grid of element texts (one row per
/// line). `input` may also name a file holding any of these.
pub fn read_matrix(input: &str, ring: Option<&str>) -> Result<(RingRegistryEntry, Matrix<DynElem>), Error> {
    let text = load(input)?;
    let t = text.trim();
    if t.starts_with('{') {
        let v = parse_json(t)?;
        let obj = v.as_object().expect("object");
        if let Some(k) = obj.keys().find(|k| *k != "ring" && *k != "rows") {
            return Err(syntax(format!("unknown matrix field {k:?}")));
        }
        let entry = resolve_ring(ring, obj.get("ring"))?;
        let rows = obj.get("rows").ok_or_else(|| syntax("matrix JSON needs a \"rows\" field"))?;
        let m = rows_from_json(&entry.ring, rows)?;
        return Ok((entry, m));
    }
    let entry = resolve_ring(ring, None)?;
    // A grid may start with a compound element such as `[1,2]`.
    if t.starts_with('[') {
        if let Ok(v) = parse_json(t) {
            let m = rows_from_json(&entry.ring, &v)?;
            return Ok((entry, m));
        }
    }
    let rows = t
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(|l| l.split_whitespace().map(|tok| parse_element(&entry.ring, tok)).collect())
        .collect::<Result<Vec<Vec<_>>, _>>()?;
    let m = build_matrix(rows)?;
    Ok((entry, m))
}

/// Right-aligned grid, one line per row.
pub fn pretty_matrix(m: &Matrix<DynElem>) -> String {
    let cells: Vec<Vec<String>> = m.to_rows().iter().map(|r| r.iter().map(format_element).collect()).collect();
    let widths: Vec<usize> = (0..m.cols())
        .map(|j| cells.iter().map(|r| r[j].chars().count()).max().unwrap_or(0))
        .collect();
    cells
        .iter()
        .map(|r| {
            r.iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:>w$}"))
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("serializable");
    s.push('\n');
    s
}

fn pretty_blocks(blocks: &[(&str, &Matrix<DynElem>)]) -> String {
    let mut out = String::new();
    for (name, m) in blocks {
        out.push_str(&format!("{name} =\n{}\n", pretty_matrix(m)));
    }
    out
}

fn reduction_json(entry: &RingRegistryEntry, r: &ReductionResult<DynElem>, verified: bool) -> Map<String, Value> {
    let Value::Object(mut obj) = r.to_json(element_to_json) else {
        unreachable!("reduction JSON is an object")
    };
    obj.insert("ring".into(), json!(entry.descriptor.to_string()));
    obj.insert("verified".into(), json!(verified));
    obj
}

fn certify(cli: &Cli, entry: &RingRegistryEntry, a: &Matrix<DynElem>, r: &ReductionResult<DynElem>) -> Option<String> {
    if !cli.verify {
        return None;
    }
    reduction_defect(entry.ring.as_ref(), a, r).map(|d| format!("certificate check failed: {d}"))
}

fn snf(cli: &Cli, ring: Option<&str>, input: &str) -> Result<Rendered, Error> {
    let (entry, a) = read_matrix(input, ring)?;
    let r = diagonal_reduce(entry.ring.as_ref(), &a)?;
    if let Some(msg) = certify(cli, &entry, &a, &r) {
        return Ok(Err(msg));
    }
    Ok(Ok(match cli.output {
        OutputMode::Json => json_text(&Value::Object(reduction_json(&entry, &r, cli.verify))),
        OutputMode::Pretty => pretty_blocks(&[("D", &r.d), ("P", &r.p), ("Q", &r.q)]),
    }))
}

fn m2_json(m: &[[DynElem; 2]; 2]) -> Value {
    Value::Array(m.iter().map(|r| Value::Array(r.iter().map(element_to_json).collect())).collect())
}

fn reduce2x2(cli: &Cli, ring: Option<&str>, input: &str) -> Result<Rendered, Error> {
    let (entry, a) = read_matrix(input, ring)?;
    let red = reduce_2x2(entry.ring.as_ref(), &a)?;
    if let Some(msg) = certify(cli, &entry, &a, &red.result) {
        return Ok(Err(msg));
    }
    Ok(Ok(match cli.output {
        OutputMode::Json => {
            let mut obj = reduction_json(&entry, &red.result, cli.verify);
            let factors = red
                .factors
                .iter()
                .map(|f| {
                    json!({
                        "name": f.name,
                        "side": if f.side == Side::Left { "left" } else { "right" },
                        "matrix": m2_json(&f.matrix),
                        "inverse": m2_json(&f.inverse),
                    })
                })
                .collect();
            obj.insert("factors".into(), Value::Array(factors));
            let trace = red
                .trace
                .iter()
                .map(|(n, v)| json!({"name": n, "value": element_to_json(v)}))
                .collect();
            obj.insert("trace".into(), Value::Array(trace));
            json_text(&Value::Object(obj))
        }
        OutputMode::Pretty => pretty_blocks(&[("D", &red.result.d), ("P", &red.result.p), ("Q", &red.result.q)]),
    }))
}

fn row_from_text(ring: &DynRing, text: &str) -> Result<Vec<DynElem>, Error> {
    let t = text.trim();
    if t.starts_with('[') {
        let v = parse_json(t)?;
        return v
            .as_array()
            .ok_or_else(|| syntax("row must be an array"))?
            .iter()
            .map(|x| element_from_json(ring, x))
            .collect();
    }
    t.split(',').map(|tok| parse_element(ring, tok.trim())).collect()
}

fn complete(
    cli: &Cli,
    ring: Option<&str>,
    row: Option<&str>,
    d: Option<&str>,
    input: Option<&str>,
) -> Result<Rendered, Error> {
    let (entry, a, d) = match input {
        Some(input) => {
            if row.is_some() || d.is_some() {
                return Err(syntax("--input replaces --row and --d"));
            }
            let v = parse_json(load(input)?.trim())?;
            let obj = v.as_object().ok_or_else(|| syntax("completion payload must be a JSON object"))?;
            if let Some(k) = obj.keys().find(|k| !matches!(k.as_str(), "ring" | "row" | "d")) {
                return Err(syntax(format!("unknown completion field {k:?}")));
            }
            let entry = resolve_ring(ring, obj.get("ring"))?;
            let items = obj
                .get("row")
                .and_then(Value::as_array)
                .ok_or_else(|| syntax("completion payload needs a \"row\" array"))?;
            let a = items
                .iter()
                .map(|x| element_from_json(&entry.ring, x))
                .collect::<Result<Vec<_>, _>>()?;
            let d = obj.get("d").map(|x| element_from_json(&entry.ring, x)).transpose()?;
            (entry, a, d)
        }
        None => {
            let entry = resolve_ring(ring, None)?;
            let row = row.ok_or_else(|| syntax("complete needs --row or --input"))?;
            let a = row_from_text(&entry.ring, row)?;
            let d = d.map(|t| parse_element(&entry.ring, t)).transpose()?;
            (entry, a, d)
        }
    };
    let r = entry.ring.as_ref();
    let d = match d {
        Some(d) => d,
        None => ideal_generator(r, &a)?,
    };
    let res = complete_row(r, &a, &d)?;
    if cli.verify && !verify_completion(r, &a, &res) {
        return Ok(Err("certificate check failed: determinant or first row differs".into()));
    }
    Ok(Ok(render_completion(cli, &entry, &res)))
}

fn render_completion(cli: &Cli, entry: &RingRegistryEntry, res: &CompletionResult<DynElem>) -> String {
    match cli.output {
        OutputMode::Json => {
            let mut v = res.to_json(element_to_json);
            v["ring"] = json!(entry.descriptor.to_string());
            v["verified"] = json!(cli.verify);
            json_text(&v)
        }
        OutputMode::Pretty => format!("det = {}\n{}\n", format_element(&res.d), pretty_matrix(&res.matrix)),
    }
}

/// Search bounds from `--bound` and `EDR_MAX_SEARCH`.
pub fn search_bounds(bound: Option<u64>, window_env: Option<&str>) -> Result<SearchBounds, Error> {
    let mut b = SearchBounds::default();
    if let Some(p) = bound {
        b.pairs = p;
    }
    if let Some(w) = window_env {
        b.window = w
            .trim()
            .parse()
            .map_err(|_| syntax(format!("{MAX_SEARCH_ENV}={w:?} is not a non-negative integer")))?;
    }
    Ok(b)
}

fn check(cli: &Cli, ring: &str, property: &str, bound: Option<u64>) -> Result<Rendered, Error> {
    let entry = make_ring(ring)?;
    let property: Property = property.parse()?;
    let env = std::env::var(MAX_SEARCH_ENV).ok();
    let bounds = search_bounds(bound, env.as_deref())?;
    let verdict = check_property(entry.ring.as_ref(), property, bounds)?;
    Ok(Ok(match cli.output {
        OutputMode::Json => {
            let mut v = verdict.to_json(element_to_json);
            v["ring"] = json!(entry.descriptor.to_string());
            json_text(&v)
        }
        OutputMode::Pretty => {
            let mut s = format!("{} {}: {}", entry.descriptor, property, if verdict.holds { "holds" } else { "fails" });
            if let Some(w) = &verdict.witness {
                let w: Vec<String> = w.iter().map(format_element).collect();
                s.push_str(&format!(" (witness {})", w.join(", ")));
            }
            if let (Some(p), Some(w)) = (verdict.search_bound, verdict.search_window) {
                s.push_str(&format!(" [bounded: {p} pairs, window ±{w}]"));
            }
            s.push('\n');
            s
        }
    }))
}

fn rings(cli: &Cli) -> String {
    let kinds = shipped_kinds();
    match cli.output {
        OutputMode::Json => {
            let list: Vec<Value> = kinds
                .iter()
                .map(|(kind, e)| {
                    let mut v = e.to_json();
                    v["kind"] = json!(kind);
                    v
                })
                .collect();
            json_text(&Value::Array(list))
        }
        OutputMode::Pretty => kinds.iter().map(|(kind, e)| format!("{kind}: {e}\n")).collect(),
    }
}
