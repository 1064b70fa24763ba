//! The `torifan` command line.
//!
//! Every command produces a [`CommandResult`]. With `--json` the payload is
//! written to stdout as compact JSON; otherwise a plain-text rendering is
//! printed and diagnostics go to stderr. Predicates report `false` in the
//! payload and still exit 0.

use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::catalog;
use crate::classify::{self, DEFAULT_TWIST_BOUND};
use crate::contraction;
use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::isomorphism;
use crate::polytope;
use crate::primitive::{self, extremal_flags};

pub const TWIST_BOUND_ENV: &str = "TORIFAN_TWIST_BOUND";

#[derive(Parser, Debug)]
#[command(name = "torifan", version, about = "Smooth complete toric fans: validation, primitive relations, Fano predicates, classification")]
struct Cli {
    /// Print the payload as JSON on stdout.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that a fan is smooth and complete.
    Validate { fan: String },
    /// List primitive relations with degrees and extremality.
    Analyze { fan: String },
    /// Anticanonical degree (-K)^d of a weak Fano fan.
    Degree { fan: String },
    IsFano { fan: String },
    IsWeakFano { fan: String },
    /// Weakened Fano test for 3-folds, with the crepant contraction table.
    IsWeakenedFano { fan: String },
    /// Decide isomorphism and print a witness matrix.
    Isomorphic { first: String, second: String },
    /// Dump a named fan, or list all names.
    Catalog {
        #[arg(long)]
        list: bool,
        name: Option<String>,
    },
    ClassifySurfaces,
    #[command(name = "classify-3folds")]
    ClassifyThreefolds {
        #[arg(long)]
        twist_bound: Option<i64>,
    },
    /// Run both classifications and check them against the catalog.
    Verify {
        #[arg(long)]
        twist_bound: Option<i64>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    Error,
}

#[derive(Clone, Debug, Serialize)]
pub struct CommandResult {
    pub status: Status,
    pub payload: Value,
    pub diagnostics: Vec<String>,
    /// Plain-text rendering used without `--json`.
    #[serde(skip)]
    pub text: String,
    #[serde(skip)]
    pub json: bool,
}

impl CommandResult {
    fn ok(payload: Value, text: String) -> Self {
        CommandResult {
            status: Status::Ok,
            payload,
            diagnostics: Vec::new(),
            text,
            json: false,
        }
    }

    fn error(diagnostics: Vec<String>) -> Self {
        CommandResult {
            status: Status::Error,
            payload: Value::Null,
            diagnostics,
            text: String::new(),
            json: false,
        }
    }

    pub fn is_ok(&self) -> bool {
        self.status == Status::Ok
    }

    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Ok => 0,
            Status::Error => 1,
        }
    }

    /// What the binary writes to stdout.
    pub fn stdout(&self) -> String {
        if self.json {
            let v = if self.payload.is_null() {
                json!({"status": self.status, "diagnostics": self.diagnostics})
            } else {
                self.payload.clone()
            };
            format!("{v}\n")
        } else {
            self.text.clone()
        }
    }
}

/// Resolves `catalog:NAME` or reads a fan JSON file.
pub fn load_fan(arg: &str) -> Result<Fan> {
    match arg.strip_prefix("catalog:") {
        Some(name) => Ok(catalog::lookup(name)?.fan),
        None => {
            let text = std::fs::read_to_string(arg).map_err(|e| Error::Usage(format!("{arg}: {e}")))?;
            Fan::from_json(&text)
        }
    }
}

fn load_valid(arg: &str) -> Result<Fan> {
    let f = load_fan(arg)?;
    f.ensure_smooth_complete()?;
    Ok(f)
}

fn twist_bound(flag: Option<i64>) -> Result<i64> {
    let bound = match flag {
        Some(b) => b,
        None => match std::env::var(TWIST_BOUND_ENV) {
            Ok(s) => s
                .trim()
                .parse()
                .map_err(|_| Error::Usage(format!("{TWIST_BOUND_ENV}={s} is not an integer")))?,
            Err(_) => DEFAULT_TWIST_BOUND,
        },
    };
    if bound < DEFAULT_TWIST_BOUND {
        return Err(Error::Usage(format!(
            "twist bound {bound} is below the minimum {DEFAULT_TWIST_BOUND}"
        )));
    }
    Ok(bound)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn validate(arg: &str) -> Result<CommandResult> {
    let f = load_fan(arg)?;
    let report = f.validate();
    let payload = serde_json::to_value(&report)?;
    if report.is_valid() {
        return Ok(CommandResult::ok(payload, "valid: smooth complete fan\n".into()));
    }
    let mut r = CommandResult::error(
        report
            .offending
            .iter()
            .map(|o| format!("{} (cones {:?}, rays {:?})", o.reason.describe(), o.cones, o.rays))
            .collect(),
    );
    r.payload = payload;
    r.text = format!("invalid: {}\n", report.summary());
    Ok(r)
}

fn analyze(arg: &str) -> Result<CommandResult> {
    let f = load_valid(arg)?;
    let rels = primitive::primitive_collections(&f)?;
    let flags = extremal_flags(&rels);
    let mut text = format!("{} rays, Picard number {}\n", f.num_rays(), f.picard_number());
    let mut list = Vec::new();
    for (r, extremal) in rels.iter().zip(&flags) {
        text.push_str(&format!("{r}{}\n", if *extremal { "  extremal" } else { "" }));
        list.push(json!({
            "collection": r.collection,
            "sigma": r.sigma,
            "coeffs": r.coeffs,
            "degree": r.degree,
            "extremal": extremal,
            "class": r.cls,
        }));
    }
    let is_weak_fano = rels.iter().all(|r| r.degree >= 0);
    let is_fano = rels.iter().all(|r| r.degree > 0);
    text.push_str(&format!("Fano: {}, weak Fano: {}\n", yes_no(is_fano), yes_no(is_weak_fano)));
    let payload = json!({
        "dim": f.dim(),
        "num_rays": f.num_rays(),
        "picard_number": f.picard_number(),
        "relations": list,
        "is_fano": is_fano,
        "is_weak_fano": is_weak_fano,
    });
    Ok(CommandResult::ok(payload, text))
}

fn degree(arg: &str) -> Result<CommandResult> {
    let d = polytope::anticanonical_degree(&load_valid(arg)?)?;
    Ok(CommandResult::ok(json!({"anticanonical_degree": d}), format!("(-K)^d = {d}\n")))
}

fn predicate(arg: &str, key: &str, test: fn(&Fan) -> Result<bool>) -> Result<CommandResult> {
    let b = test(&load_valid(arg)?)?;
    Ok(CommandResult::ok(json!({ key: b }), format!("{key}: {b}\n")))
}

fn weakened(arg: &str) -> Result<CommandResult> {
    let f = load_valid(arg)?;
    let v = contraction::is_weakened_fano(&f)?;
    let mut text = format!(
        "weak Fano: {}, Fano: {}, weakened: {}\n",
        yes_no(v.is_weak_fano),
        yes_no(v.is_fano),
        yes_no(v.is_weakened)
    );
    for c in &v.crepant_contractions {
        let kind = match c.kind {
            contraction::ContractionKind::ZeroTwo { a, exceptional_ray } => {
                format!("(0,2)-type, E = D_{exceptional_ray} ~ F_{a}")
            }
            contraction::ContractionKind::DivisorToPoint => "divisor to point".into(),
            contraction::ContractionKind::Small => "small".into(),
            contraction::ContractionKind::Other => "other".into(),
        };
        text.push_str(&format!("  {}  {kind}\n", c.relation));
    }
    Ok(CommandResult::ok(serde_json::to_value(&v)?, text))
}

fn isomorphic(a: &str, b: &str) -> Result<CommandResult> {
    let (f, g) = (load_valid(a)?, load_valid(b)?);
    Ok(match isomorphism::find_isomorphism(&f, &g) {
        Some(iso) => {
            let m = iso.matrix.matrix();
            let rows: Vec<Vec<i128>> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
            let text = format!("isomorphic\nmatrix {rows:?}\nrays {:?}\n", iso.ray_permutation);
            CommandResult::ok(
                json!({"isomorphic": true, "matrix": rows, "ray_permutation": iso.ray_permutation}),
                text,
            )
        }
        None => CommandResult::ok(
            json!({"isomorphic": false, "matrix": null, "ray_permutation": null}),
            "not isomorphic\n".into(),
        ),
    })
}

fn catalog_cmd(list: bool, name: Option<String>) -> Result<CommandResult> {
    match (list, name) {
        (false, Some(name)) => {
            let n = catalog::lookup(&name)?;
            let text = serde_json::to_string_pretty(&n.fan.to_json_value())? + "\n";
            Ok(CommandResult::ok(n.fan.to_json_value(), text))
        }
        (_, None) | (true, _) => {
            let all = catalog::all();
            let mut text = String::new();
            let mut entries = Vec::new();
            for n in &all {
                let e = &n.expected;
                text.push_str(&format!(
                    "{:<10} rays {:>2}  rho {:>2}  (-K)^d {:>3}  fano {:<3}  fiber {}\n",
                    n.name,
                    e.num_rays,
                    e.picard_number,
                    e.anticanonical_degree.map_or("-".into(), |d| d.to_string()),
                    yes_no(e.is_fano),
                    e.bundle_fiber.unwrap_or("-"),
                ));
                entries.push(json!({"name": n.name, "dim": n.fan.dim(), "expected": e}));
            }
            Ok(CommandResult::ok(Value::Array(entries), text))
        }
    }
}

fn classification(report: classify::ClassificationReport, started: Instant) -> Result<CommandResult> {
    let mut r = CommandResult::ok(serde_json::to_value(&report)?, report.table());
    r.diagnostics.push(format!("scope: {}", report.scope));
    r.diagnostics.push(format!("elapsed {:.2?}", started.elapsed()));
    Ok(r)
}

fn verify(bound: i64) -> Result<CommandResult> {
    let started = Instant::now();
    let v = classify::verify_classification(bound);
    let mut text = String::new();
    for a in &v.assertions {
        let mark = if a.passed { "PASS" } else { "FAIL" };
        if a.detail.is_empty() {
            text.push_str(&format!("{mark} {}\n", a.name));
        } else {
            text.push_str(&format!("{mark} {} ({})\n", a.name, a.detail));
        }
    }
    let payload = serde_json::to_value(&v)?;
    if v.all_passed {
        let mut r = CommandResult::ok(payload, text);
        r.diagnostics.push(format!("elapsed {:.2?}", started.elapsed()));
        return Ok(r);
    }
    let mut r = CommandResult::error(v.failures().iter().map(|a| format!("failed: {}", a.name)).collect());
    r.payload = payload;
    r.text = text;
    Ok(r)
}

fn dispatch(cmd: Command) -> Result<CommandResult> {
    match cmd {
        Command::Validate { fan } => validate(&fan),
        Command::Analyze { fan } => analyze(&fan),
        Command::Degree { fan } => degree(&fan),
        Command::IsFano { fan } => predicate(&fan, "is_fano", primitive::is_fano),
        Command::IsWeakFano { fan } => predicate(&fan, "is_weak_fano", primitive::is_weak_fano),
        Command::IsWeakenedFano { fan } => weakened(&fan),
        Command::Isomorphic { first, second } => isomorphic(&first, &second),
        Command::Catalog { list, name } => catalog_cmd(list, name),
        Command::ClassifySurfaces => {
            let started = Instant::now();
            classification(classify::enumerate_weak_del_pezzo(), started)
        }
        Command::ClassifyThreefolds { twist_bound: b } => {
            let bound = twist_bound(b)?;
            let started = Instant::now();
            classification(classify::enumerate_weakened_threefolds(bound), started)
        }
        Command::Verify { twist_bound: b } => verify(twist_bound(b)?),
    }
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<S: AsRef<str>>(argv: &[S]) -> CommandResult {
    let args: Vec<&str> = argv.iter().map(AsRef::as_ref).collect();
    let json = args.contains(&"--json");
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return CommandResult::ok(Value::Null, e.to_string());
            }
            let mut r = CommandResult::error(vec![e.to_string().trim_end().to_string()]);
            r.json = json;
            return r;
        }
    };
    let mut r = dispatch(cli.command).unwrap_or_else(|e| CommandResult::error(vec![e.to_string()]));
    r.json = cli.json;
    if r.json {
        // keep JSON output byte-stable
        r.diagnostics.retain(|d| !d.starts_with("elapsed"));
    }
    r
}

/// Entry point of the binary; returns the process exit code.
pub fn main_with_args(args: &[String]) -> i32 {
    let r = run(args);
    print!("{}", r.stdout());
    // in JSON mode diagnostics already sit in stdout unless a payload took their place
    if !r.json || !r.payload.is_null() {
        for d in &r.diagnostics {
            eprintln!("{d}");
        }
    }
    r.exit_code()
}
