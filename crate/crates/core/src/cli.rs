//! Subcommand dispatch behind the `circmatch` binary.
//!
//! [`run`] is pure apart from reading the input file, so the binary only
//! parses flags and copies the outcome to the process streams.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::Value;

use crate::embed::{grid_embed, EmbeddingReport};
use crate::error::{Error, Result};
use crate::graph::{compute_bipartition, PlanarGraph};
use crate::grid::GridFile;
use crate::io::GraphFile;
use crate::kasteleyn::{count_perfect_matchings, weighted_determinant};
use crate::matcher::{
    find_perfect_matching_with, isolating_weighting, min_weight_perfect_matching_with, upm_status, Method,
};
use crate::oracle::{self, Limits};
use crate::outerplanar::{pm_parity, pm_parity_via_spanning_trees, upm_outerplanar};
use crate::weighting::{EdgeWeighting, Matching};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO_MATCHING: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Command {
    Match,
    MinWeight,
    Upm,
    Count,
    Weight,
    Embed,
    OpParity,
    OpUpm,
    Verify,
}

impl Command {
    pub const ALL: [Command; 9] = [
        Command::Match,
        Command::MinWeight,
        Command::Upm,
        Command::Count,
        Command::Weight,
        Command::Embed,
        Command::OpParity,
        Command::OpUpm,
        Command::Verify,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Match => "match",
            Command::MinWeight => "minweight",
            Command::Upm => "upm",
            Command::Count => "count",
            Command::Weight => "weight",
            Command::Embed => "embed",
            Command::OpParity => "op-parity",
            Command::OpUpm => "op-upm",
            Command::Verify => "verify",
        }
    }
}

impl FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Command> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown subcommand {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Format {
    #[default]
    Json,
    Text,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Format> {
        match s {
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            other => Err(Error::InvalidInput(format!("unknown format {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    /// `-` reads standard input in the binary; [`run`] treats it as a path.
    pub input: PathBuf,
    pub method: Method,
    pub format: Format,
    /// Oracle size guard; `None` falls back to the environment, then defaults.
    pub max_oracle_size: Option<usize>,
    pub quiet: bool,
}

impl RunConfig {
    pub fn new(command: Command, input: impl Into<PathBuf>) -> RunConfig {
        RunConfig {
            command,
            input: input.into(),
            method: Method::default(),
            format: Format::default(),
            max_oracle_size: None,
            quiet: false,
        }
    }

    fn limits(&self) -> Limits {
        self.max_oracle_size.map(Limits::uniform).unwrap_or_else(Limits::from_env)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidInput(_)
        | Error::NonPlanar
        | Error::InvalidRotation(_)
        | Error::Disconnected
        | Error::OddCycle { .. }
        | Error::NotBipartite
        | Error::Crossing(..)
        | Error::TooLarge { .. }
        | Error::WeightOverflow => EXIT_INPUT,
        _ => EXIT_INTERNAL,
    }
}

/// Reads `config.input` and runs the subcommand on it.
pub fn run(config: &RunConfig) -> Outcome {
    match std::fs::read_to_string(&config.input) {
        Ok(text) => run_on_text(config, &text),
        Err(e) => failure(config, EXIT_INPUT, &format!("cannot read {}: {e}", config.input.display())),
    }
}

pub fn run_on_text(config: &RunConfig, text: &str) -> Outcome {
    match dispatch(config, text) {
        Ok(Reply { status, payload, note }) => {
            let mut out = Outcome { status, stdout: render(&payload, config.format), stderr: String::new() };
            if let (Some(note), false) = (note, config.quiet) {
                out.stderr = format!("{note}\n");
            }
            out
        }
        Err(e) => failure(config, exit_code(&e), &format!("error: {e}")),
    }
}

fn failure(config: &RunConfig, status: i32, message: &str) -> Outcome {
    let stderr = if config.quiet { String::new() } else { format!("{message}\n") };
    Outcome { status, stdout: String::new(), stderr }
}

struct Reply {
    status: i32,
    payload: Value,
    note: Option<String>,
}

impl Reply {
    fn ok(payload: impl Serialize) -> Result<Reply> {
        Ok(Reply { status: EXIT_OK, payload: to_value(payload)?, note: None })
    }
}

fn to_value(payload: impl Serialize) -> Result<Value> {
    serde_json::to_value(payload).map_err(|e| Error::Internal(format!("serializing output: {e}")))
}

fn render(payload: &Value, format: Format) -> String {
    match format {
        Format::Json => format!("{payload}\n"),
        Format::Text => {
            let mut out = String::new();
            if let Value::Object(map) = payload {
                for (k, v) in map {
                    match v {
                        Value::String(s) => writeln!(out, "{k}: {s}"),
                        other => writeln!(out, "{k}: {other}"),
                    }
                    .expect("writing to a string");
                }
            } else {
                writeln!(out, "{payload}").expect("writing to a string");
            }
            out
        }
    }
}

#[derive(Serialize)]
struct MatchPayload {
    matching: Option<Vec<[usize; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    weight: Option<i64>,
    method: Method,
}

#[derive(Serialize)]
struct WeightPayload<'a> {
    method: Method,
    weights: &'a [i64],
    offset: i64,
    max_abs: i64,
}

#[derive(Serialize)]
struct EmbedPayload {
    grid: GridFile,
    map: EmbeddingReport,
}

#[derive(Serialize)]
struct ParityPayload {
    parity: u8,
    parity_via_spanning_trees: u8,
}

#[derive(Serialize)]
struct Check {
    name: &'static str,
    status: &'static str,
}

#[derive(Serialize)]
struct VerifyPayload {
    vertices: usize,
    edges: usize,
    bipartite: bool,
    method: Method,
    perfect_matchings: u128,
    #[serde(skip_serializing_if = "Option::is_none")]
    max_abs_weight: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    even_cycles: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    min_abs_circulation: Option<i64>,
    checks: Vec<Check>,
}

fn dispatch(config: &RunConfig, text: &str) -> Result<Reply> {
    let file = GraphFile::parse(text)?;
    let input_weights = file.weighting()?;
    match config.command {
        Command::OpParity => {
            let g = file.outerplanar()?;
            let payload =
                ParityPayload { parity: pm_parity(&g), parity_via_spanning_trees: pm_parity_via_spanning_trees(&g) };
            if payload.parity != payload.parity_via_spanning_trees {
                return Err(Error::Internal("parity routes disagree".into()));
            }
            return Reply::ok(payload);
        }
        Command::OpUpm => {
            let g = file.outerplanar()?;
            return Reply::ok(serde_json::json!({ "unique": upm_outerplanar(&g) }));
        }
        _ => {}
    }
    let g = file.planar_graph()?;
    match config.command {
        Command::Match => {
            let m = find_perfect_matching_with(&g, config.method)?;
            matching_reply(&g, m, input_weights.as_ref(), config.method)
        }
        Command::MinWeight => {
            let w = input_weights.ok_or_else(|| Error::InvalidInput("minweight needs \"weights\"".into()))?;
            let m = min_weight_perfect_matching_with(&g, &w, config.method)?;
            matching_reply(&g, m, Some(&w), config.method)
        }
        Command::Upm => Reply::ok(upm_status(&g, config.method)?),
        Command::Count => {
            let c = count_perfect_matchings(&g)?;
            match c.to_u64() {
                Some(c) => Reply::ok(serde_json::json!({ "count": c })),
                None => Reply::ok(serde_json::json!({ "count": c.to_string() })),
            }
        }
        Command::Weight => {
            let w = isolating_weighting(&g, config.method)?;
            Reply::ok(WeightPayload {
                method: config.method,
                weights: &w.weights,
                offset: w.offset,
                max_abs: w.max_abs(),
            })
        }
        Command::Embed => {
            let b = compute_bipartition(&g)?;
            let (grid, map) = grid_embed(&g, &b)?;
            Reply::ok(EmbedPayload { grid: grid.to_file(), map: map.report(&grid) })
        }
        Command::Verify => verify(&g, input_weights.as_ref(), config.method, config.limits()),
        Command::OpParity | Command::OpUpm => unreachable!("handled above"),
    }
}

fn matching_reply(g: &PlanarGraph, m: Option<Matching>, w: Option<&EdgeWeighting>, method: Method) -> Result<Reply> {
    let Some(m) = m else {
        return Ok(Reply {
            status: EXIT_NO_MATCHING,
            payload: to_value(MatchPayload { matching: None, weight: None, method })?,
            note: Some("no perfect matching".into()),
        });
    };
    let checked = Matching::new(g.vertex_count(), g.edges(), m.edges().to_vec())?;
    if !checked.is_perfect() {
        return Err(Error::Internal("emitted matching does not cover every vertex".into()));
    }
    let pairs = checked.pairs(g.edges()).into_iter().map(|(u, v)| [u, v]).collect();
    Reply::ok(MatchPayload { matching: Some(pairs), weight: w.map(|w| w.total(checked.edges())), method })
}

fn verify(g: &PlanarGraph, input_weights: Option<&EdgeWeighting>, method: Method, limits: Limits) -> Result<Reply> {
    let n = g.vertex_count();
    let all = oracle::enumerate_perfect_matchings(n, g.edges(), limits.matching_vertices)?;
    let mut checks = Vec::new();
    let mut record = |name: &'static str, ok: bool| {
        checks.push(Check { name, status: if ok { "pass" } else { "fail" } });
    };
    let counted = count_perfect_matchings(g)?;
    record("count", counted == num_bigint::BigUint::from(all.len()));

    let bipartite = compute_bipartition(g).is_ok();
    let mut payload = VerifyPayload {
        vertices: n,
        edges: g.edge_count(),
        bipartite,
        method,
        perfect_matchings: all.len() as u128,
        max_abs_weight: None,
        even_cycles: None,
        min_abs_circulation: None,
        checks: Vec::new(),
    };
    if bipartite {
        let w = isolating_weighting(g, method)?;
        payload.max_abs_weight = Some(w.max_abs());
        if n <= limits.cycle_vertices {
            let report = oracle::verify_nonvanishing(n, g.edges(), &w, limits.cycle_vertices)?;
            payload.even_cycles = Some(report.even_cycles);
            payload.min_abs_circulation = report.min_abs_circulation;
            record("nonvanishing", report.holds());
        }
        let hist = oracle::weight_histogram(n, g.edges(), &w, limits.matching_vertices)?;
        if n.is_multiple_of(2) {
            record("spectrum", weighted_determinant(g, &w)? == oracle::squared_spectrum(&hist));
        }
        let argmin = oracle::minimum_weight_matchings(n, g.edges(), &w, limits.matching_vertices)?;
        record("isolation", argmin.len() <= 1);
        let found = find_perfect_matching_with(g, method)?;
        record("extraction", found.as_ref().map(|m| m.edges().to_vec()) == argmin.first().cloned());
        if let Some(w_in) = input_weights {
            let best = all.iter().map(|m| w_in.total(m)).min();
            let got = min_weight_perfect_matching_with(g, w_in, method)?.map(|m| w_in.total(m.edges()));
            record("minweight", best == got);
        }
    }
    payload.checks = checks;
    let failed: Vec<_> = payload.checks.iter().filter(|c| c.status == "fail").map(|c| c.name).collect();
    let (status, note) = if failed.is_empty() {
        (EXIT_OK, None)
    } else {
        (EXIT_INTERNAL, Some(format!("failed checks: {}", failed.join(", "))))
    };
    Ok(Reply { status, payload: to_value(payload)?, note })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(command: Command) -> RunConfig {
        RunConfig::new(command, "-")
    }

    const C4: &str = r#"{"n": 4, "edges": [[0, 1], [1, 2], [2, 3], [3, 0]]}"#;
    const C6: &str = r#"{"n": 6, "edges": [[0, 1], [1, 2], [2, 3], [3, 4], [4, 5], [5, 0]]}"#;
    const TRIANGLE: &str = r#"{"n": 3, "edges": [[0, 1], [1, 2], [2, 0]]}"#;

    #[test]
    fn match_on_four_cycle() {
        let out = run_on_text(&cfg(Command::Match), C4);
        assert_eq!(out.status, 0, "{}", out.stderr);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["matching"].as_array().unwrap().len(), 2);
        assert_eq!(v["method"], "grid");
        assert!(v.get("weight").is_none());
    }

    #[test]
    fn triangle_is_an_input_error() {
        let out = run_on_text(&cfg(Command::Match), TRIANGLE);
        assert_eq!(out.status, EXIT_INPUT);
        assert!(out.stderr.contains("not bipartite"));
        assert!(out.stdout.is_empty());
    }

    #[test]
    fn count_on_six_cycle() {
        let out = run_on_text(&cfg(Command::Count), C6);
        assert_eq!((out.status, out.stdout.as_str()), (0, "{\"count\":2}\n"));
    }

    #[test]
    fn no_matching_exit() {
        let path = r#"{"n": 4, "edges": [[0, 1], [0, 2], [0, 3]]}"#;
        let out = run_on_text(&cfg(Command::Match), path);
        assert_eq!(out.status, EXIT_NO_MATCHING);
        assert!(out.stdout.contains("\"matching\":null"));
        let quiet = RunConfig { quiet: true, ..cfg(Command::Match) };
        assert!(run_on_text(&quiet, path).stderr.is_empty());
    }

    #[test]
    fn parse_and_planarity_errors() {
        assert_eq!(run_on_text(&cfg(Command::Count), "not json").status, EXIT_INPUT);
        let mut k33 = Vec::new();
        for a in 0..3 {
            for b in 3..6 {
                k33.push([a, b]);
            }
        }
        let text = serde_json::json!({"n": 6, "edges": k33}).to_string();
        assert_eq!(run_on_text(&cfg(Command::Count), &text).status, EXIT_INPUT);
        assert_eq!(run_on_text(&cfg(Command::MinWeight), C4).status, EXIT_INPUT);
    }

    #[test]
    fn minweight_reports_input_weight() {
        let text = r#"{"n": 4, "edges": [[0, 1], [1, 2], [2, 3], [3, 0]], "weights": [5, 1, 5, 1]}"#;
        for method in [Method::Grid, Method::Direct] {
            let out = run_on_text(&RunConfig { method, ..cfg(Command::MinWeight) }, text);
            assert_eq!(out.status, 0);
            let v: Value = serde_json::from_str(&out.stdout).unwrap();
            assert_eq!(v["weight"], 2);
            assert_eq!(v["matching"], serde_json::json!([[1, 2], [3, 0]]));
        }
    }

    #[test]
    fn other_subcommands() {
        let upm: Value = serde_json::from_str(&run_on_text(&cfg(Command::Upm), C4).stdout).unwrap();
        assert_eq!(upm, serde_json::json!({"has_perfect_matching": true, "unique": false}));
        let w: Value = serde_json::from_str(&run_on_text(&cfg(Command::Weight), C6).stdout).unwrap();
        assert_eq!(w["weights"].as_array().unwrap().len(), 6);
        let e = run_on_text(&cfg(Command::Embed), C4);
        assert_eq!(e.status, 0, "{}", e.stderr);
        let v = run_on_text(&cfg(Command::Verify), C6);
        assert_eq!(v.status, 0, "{}{}", v.stdout, v.stderr);
        assert!(!v.stdout.contains("fail"));
        let spine = r#"{"n": 4, "edges": [[0, 1], [1, 2], [2, 3]], "spine": true}"#;
        assert_eq!(run_on_text(&cfg(Command::OpUpm), spine).stdout, "{\"unique\":true}\n");
        let p = run_on_text(&cfg(Command::OpParity), spine);
        assert_eq!(p.stdout, "{\"parity\":1,\"parity_via_spanning_trees\":1}\n");
    }

    #[test]
    fn text_format() {
        let out = run_on_text(&RunConfig { format: Format::Text, ..cfg(Command::Count) }, C6);
        assert_eq!(out.stdout, "count: 2\n");
    }

    #[test]
    fn verify_respects_guard() {
        let out = run_on_text(&RunConfig { max_oracle_size: Some(4), ..cfg(Command::Verify) }, C6);
        assert_eq!(out.status, EXIT_INPUT);
    }
}
