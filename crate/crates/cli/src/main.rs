//! `sahl`: classify modal formulas, compute and verify their local
//! first-order correspondents, and check the order-theoretic conditions
//! behind the computation.

mod tptp;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use sahl_core::classify::classify;
use sahl_core::correspond::correspond;
use sahl_core::orderprops::{validate_conditions, validate_on_frames};
use sahl_core::semantics::{
    check_local_correspondence_with, enumerate_frames_capped, Frame, OracleConfig, Verdict, DEFAULT_MAX_FRAME_N,
    DEFAULT_SEED,
};
use sahl_core::translate::{second_order_translation, standard_translation};
use sahl_core::{parse_fo, parse_modal, Error, FoFormula, IndVar, ParseError};

const EXIT_PARSE: u8 = 2;
const EXIT_UNSUPPORTED: u8 = 3;
const EXIT_COUNTEREXAMPLE: u8 = 4;
const EXIT_RESOURCE: u8 = 5;
const EXIT_OTHER: u8 = 1;

#[derive(Parser)]
#[command(name = "sahl", version, about = "Local first-order correspondents of modal formulas")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Tptp,
}

#[derive(Subcommand)]
enum Command {
    /// Print the syntactic classification report.
    Classify {
        formula: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Compute the local first-order correspondent.
    Correspond {
        formula: String,
        /// Print the correspondent before simplification.
        #[arg(long)]
        raw: bool,
        /// Skip simplification in every output format.
        #[arg(long)]
        no_simplify: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Print the per-conjunct schemes, valuation definitions and forms.
        #[arg(long)]
        trace: bool,
    },
    /// Print the standard and second-order translations.
    Translate { formula: String },
    /// Check a claimed local correspondent on small frames.
    Verify {
        formula: String,
        /// First-order formula in the free variable `x`.
        fo: Option<String>,
        /// Check against the computed correspondent instead.
        #[arg(long)]
        against_generated: bool,
        #[arg(long, default_value_t = 3)]
        max_n: usize,
        /// Number of seeded frames on four worlds.
        #[arg(long, default_value_t = 0)]
        sample4: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Check the order-theoretic conditions on one frame or on all frames of a size.
    Props {
        formula: String,
        /// Frame literal `n;i->j,...`.
        #[arg(long, conflicts_with = "all_frames", required_unless_present = "all_frames")]
        frame: Option<String>,
        #[arg(long)]
        all_frames: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Parse(_) | Error::FrameLiteral(_) => EXIT_PARSE,
            Error::Unsupported(_)
            | Error::NotInClass(_)
            | Error::NotUniform
            | Error::NotRegularAntecedent
            | Error::CyclicDigraph
            | Error::SharedLetters(_) => EXIT_UNSUPPORTED,
            Error::ResourceCap { .. } | Error::ConjunctCap { .. } => EXIT_RESOURCE,
            _ => EXIT_OTHER,
        };
        let mut message = e.to_string();
        if let Error::Unsupported(report) = &e {
            message.push('\n');
            message.push_str(&report.to_string());
        }
        Failure { code, message }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Error::from(e).into()
    }
}

type Outcome = Result<(String, u8), Failure>;

fn frame_cap() -> usize {
    std::env::var("SAHL_MAX_FRAME_N").ok().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_MAX_FRAME_N)
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values always serialize")
}

fn document(input: &str, class: Value, conjuncts: Value, combined: Value, verdicts: Value, extra: Option<(&str, Value)>) -> String {
    let mut doc = json!({
        "input": input,
        "class": class,
        "conjuncts": conjuncts,
        "combined": combined,
        "verdicts": verdicts,
    });
    if let Some((k, v)) = extra {
        doc[k] = v;
    }
    pretty(&doc)
}

fn to_value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("core types serialize")
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Classify { formula, format } => {
            let f = parse_modal(&formula)?;
            let r = classify(&f);
            let out = match format {
                Format::Json => document(&f.to_string(), to_value(&r.class), json!([]), Value::Null, json!([]), Some(("report", to_value(&r)))),
                _ => r.to_string().trim_end().to_string(),
            };
            Ok((out, 0))
        }
        Command::Correspond { formula, raw, no_simplify, format, trace } => {
            let f = parse_modal(&formula)?;
            let res = correspond(&f)?;
            let chosen = if raw || no_simplify { &res.combined_raw } else { &res.combined };
            let out = match format {
                Format::Json => {
                    let conjuncts: Vec<Value> = res
                        .conjuncts
                        .iter()
                        .map(|c| {
                            json!({
                                "implication": c.implication.to_string(),
                                "class": to_value(&c.class),
                                "scheme": c.scheme.to_string(),
                                "alphas": c.alphas.iter().map(|a| json!({"letter": a.letter.to_string(), "free": a.free.to_string(), "body": a.body.to_string()})).collect::<Vec<_>>(),
                                "raw": c.raw.to_string(),
                                "simplified": if no_simplify { Value::Null } else { Value::String(c.simplified.to_string()) },
                            })
                        })
                        .collect();
                    document(
                        &f.to_string(),
                        to_value(&res.class_used),
                        Value::Array(conjuncts),
                        Value::String(chosen.to_string()),
                        json!([]),
                        None,
                    )
                }
                Format::Tptp => tptp::fof_unit(chosen, &res.free_var),
                Format::Text if trace => res.trace().trim_end().to_string(),
                Format::Text => chosen.to_string(),
            };
            Ok((out, 0))
        }
        Command::Translate { formula } => {
            let f = parse_modal(&formula)?;
            Ok((format!("st: {}\nso: {}", standard_translation(&IndVar::source(), &f), second_order_translation(&f)), 0))
        }
        Command::Verify { formula, fo, against_generated, max_n, sample4, seed, format } => {
            let f = parse_modal(&formula)?;
            let (alpha, class, conjuncts): (FoFormula, Value, Value) = match (fo, against_generated) {
                (Some(text), false) => (parse_fo(&text)?, to_value(&classify(&f).class), json!([])),
                (None, true) => {
                    let res = correspond(&f)?;
                    let cs = res.conjuncts.iter().map(|c| json!({"implication": c.implication.to_string(), "simplified": c.simplified.to_string()})).collect();
                    (res.combined, to_value(&res.class_used), Value::Array(cs))
                }
                _ => {
                    return Err(Failure {
                        code: EXIT_OTHER,
                        message: "give either a first-order formula or --against-generated".into(),
                    })
                }
            };
            let cfg = OracleConfig { max_n, sample4, seed, frame_cap: frame_cap() };
            let verdict = check_local_correspondence_with(&f, &alpha, &cfg)?;
            let code = if verdict.is_pass() { 0 } else { EXIT_COUNTEREXAMPLE };
            let out = match format {
                Format::Json => {
                    let v = match &verdict {
                        Verdict::Pass { frames } => json!({"against": alpha.to_string(), "result": "pass", "frames": frames}),
                        Verdict::Counterexample { frame, world, direction } => json!({
                            "against": alpha.to_string(),
                            "result": "counterexample",
                            "frame": frame.to_string(),
                            "world": world,
                            "direction": to_value(direction),
                        }),
                    };
                    document(&f.to_string(), class, conjuncts, Value::String(alpha.to_string()), json!([v]), None)
                }
                _ => match &verdict {
                    Verdict::Pass { .. } => format!("against: {alpha}\n{verdict}"),
                    Verdict::Counterexample { frame, .. } => format!("against: {alpha}\n{verdict}\nframe: {frame}"),
                },
            };
            Ok((out, code))
        }
        Command::Props { formula, frame, all_frames, format } => {
            let f = parse_modal(&formula)?;
            let report = classify(&f);
            let out = match (frame, all_frames) {
                (Some(lit), _) => {
                    let frame: Frame = lit.parse()?;
                    let c = validate_conditions(&f, &report, &frame)?;
                    match format {
                        Format::Json => document(&f.to_string(), to_value(&report.class), json!([]), Value::Null, to_value(&c.items), None),
                        _ => format!("class: {}\n{}", report.class, c.to_string().trim_end()),
                    }
                }
                (None, Some(n)) => {
                    let cap = frame_cap();
                    let frames: Vec<Frame> = (1..=n).map(|k| enumerate_frames_capped(k, cap)).collect::<Result<Vec<_>, _>>()?.into_iter().flatten().collect();
                    let sweep = validate_on_frames(&f, &report, frames)?;
                    match format {
                        Format::Json => document(&f.to_string(), to_value(&report.class), json!([]), Value::Null, to_value(&sweep), None),
                        _ => {
                            let lines: Vec<String> = sweep.iter().map(|s| s.to_string()).collect();
                            format!("class: {}\nframes: all with 1..={n} worlds\n{}", report.class, lines.join("\n"))
                        }
                    }
                }
                (None, None) => unreachable!("clap requires one of --frame and --all-frames"),
            };
            Ok((out, 0))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok((out, code)) => {
            println!("{out}");
            ExitCode::from(code)
        }
        Err(Failure { code, message }) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}
