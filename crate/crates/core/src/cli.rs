//! Command-line front end. Every subcommand prints one JSON object:
//! `{schema, command, inputs, citations, ...outputs}`.
//!
//! Exit codes: 0 on success, 2 on a library error (with `{"error": ...}` on
//! stdout), 1 on a usage error (message on stderr).

use std::ffi::OsString;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::charmod::{gauss_sum, PadicCharacter, UnitCharacter};
use crate::error::{Error, Result};
use crate::replocal::{classify_conductor_one, is_level_invariant, LocalRep};
use crate::{global, monomial, oracle, rational, similarity};

pub const SCHEMA: &str = "gl2twist/1";

#[derive(Debug, Parser)]
#[command(name = "gl2twist", version, about = "Quadratic twists of local GL(2) representations and their global densities")]
struct Cli {
    /// Indent the JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Density of newforms of level q whose twist by ε_{Quad(q')} has level q.
    Density {
        #[arg(long)]
        q: u64,
        #[arg(long = "qprime")]
        qprime: u64,
    },
    /// Multiplicity lower bound 2^{s(q)} and the density attaining it.
    Multiplicity {
        #[arg(long)]
        q: u64,
    },
    /// Conjectured n₀(q) for odd q.
    N0 {
        #[arg(long)]
        q: u64,
    },
    /// Multiplicity bound for newforms of Γ₁(p^m).
    Gamma1 {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        m: u32,
    },
    /// Twist a local representation (JSON) by a character (JSON).
    Twist {
        #[arg(long)]
        rep: String,
        #[arg(long)]
        omega: String,
    },
    /// Representations of conductor exponent 1 with trivial central character.
    Classify {
        #[arg(long)]
        p: u64,
    },
    /// Similarity classes of conductor exponent c with trivial central character.
    Classes {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        c: u32,
    },
    /// Leading Weyl-law constant for newforms of odd cube-free level q.
    Weyl {
        #[arg(long)]
        q: u64,
    },
    /// Gauss sum of a primitive character modulo p^m.
    GaussSum {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        k: u64,
    },
    /// Fundamental unit of ℚ(√D) and the spacing of monomial spectral parameters.
    Monomial {
        #[arg(long = "D")]
        d: u64,
        #[arg(long = "T")]
        t: Option<f64>,
        #[arg(long, default_value_t = 1)]
        cosets: u64,
    },
    /// Brute-force audit of the quadratic-twist conductor formulas.
    Audit {
        #[arg(long)]
        p: u64,
        #[arg(long = "mmax")]
        mmax: u32,
    },
}

/// Outcome of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Round to 12 significant digits.
pub fn round_sig(x: f64) -> f64 {
    format!("{x:.11e}").parse().expect("formatted float parses")
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("output types serialize")
}

struct Response {
    command: &'static str,
    inputs: Value,
    outputs: Value,
    citations: &'static [&'static str],
}

fn parse_json<T: serde::de::DeserializeOwned>(what: &str, s: &str) -> Result<T> {
    serde_json::from_str(s).map_err(|e| Error::Domain(format!("cannot parse --{what}: {e}")))
}

fn execute(cmd: &Command) -> Result<Response> {
    Ok(match *cmd {
        Command::Density { q, qprime } => Response {
            command: "density",
            inputs: json!({ "q": q, "qprime": qprime }),
            outputs: to_value(&global::density(q, qprime)?),
            citations: &["density of nonmonomial newforms paired with their quadratic twists", "local class sums q^2-q-1 and q^2-2q-1"],
        },
        Command::Multiplicity { q } => Response {
            command: "multiplicity",
            inputs: json!({ "q": q }),
            outputs: to_value(&global::multiplicity_bound(q)?),
            citations: &["multiplicity lower bound 2^s(q)"],
        },
        Command::N0 { q } => Response {
            command: "n0",
            inputs: json!({ "q": q }),
            outputs: to_value(&global::n0_prediction(q)?),
            citations: &["stability conjecture for Maass newforms"],
        },
        Command::Gamma1 { p, m } => {
            let bound = global::gamma1_multiplicity(p, m)?;
            let count = global::primitive_character_count(p, m / 2)?;
            Response {
                command: "gamma1",
                inputs: json!({ "p": p, "m": m }),
                outputs: json!({ "bound": bound, "primitive_characters": count }),
                citations: &["multiplicities for Gamma_1(p^m) from conductor-invariant twists"],
            }
        }
        Command::Twist { ref rep, ref omega } => {
            let rep: LocalRep = parse_json("rep", rep)?;
            let omega: PadicCharacter = parse_json("omega", omega)?;
            let out = rep.twist(&omega)?;
            let mut outputs = to_value(&out);
            outputs["input_conductor"] = json!(rep.conductor_exponent());
            Response {
                command: "twist",
                inputs: json!({ "rep": rep, "omega": omega }),
                outputs,
                citations: &["conductor of twists of principal series, special and supercuspidal representations", "Atkin-Li conductor bound"],
            }
        }
        Command::Classify { p } => {
            let reps = classify_conductor_one(p)?;
            let invariant: Vec<bool> = reps.iter().map(is_level_invariant).collect::<Result<_>>()?;
            Response {
                command: "classify",
                inputs: json!({ "p": p }),
                outputs: json!({ "conductor_exponent": 1, "representations": reps, "level_invariant": invariant }),
                citations: &["classification of representations of conductor p"],
            }
        }
        Command::Classes { p, c } => {
            let inv = similarity::enumerate_classes(p, c)?;
            let mut outputs = to_value(&inv);
            if c == 2 {
                outputs["class_sums"] = to_value(&similarity::class_sums(p)?);
            }
            Response {
                command: "classes",
                inputs: json!({ "p": p, "c": c }),
                outputs,
                citations: &["similarity classes and local Weyl-law constants"],
            }
        }
        Command::Weyl { q } => Response {
            command: "weyl",
            inputs: json!({ "q": q }),
            outputs: json!({ "constant": rational::to_wire(&similarity::newform_weyl_constant(q)?) }),
            citations: &["Weyl law for newforms as a product of local constants"],
        },
        Command::GaussSum { p, m, k } => {
            let chi = UnitCharacter::new(p, m, k)?;
            let tau = gauss_sum(&chi)?;
            let expected = crate::arith::checked_pow(p, chi.conductor_exponent())?;
            Response {
                command: "gauss-sum",
                inputs: json!({ "p": p, "m": m, "k": k }),
                outputs: json!({
                    "re": round_sig(tau.re),
                    "im": round_sig(tau.im),
                    "modulus_squared": round_sig(tau.norm_sqr()),
                    "expected_modulus_squared": expected,
                }),
                citations: &["Gauss sum in the proof of the Atkin-Li bound"],
            }
        }
        Command::Monomial { d, t, cosets } => {
            let r = monomial::monomial_spacing(d)?;
            let mut outputs = json!({
                "D": d,
                "disc": r.field.disc,
                "fundamental_unit": { "a": r.field.a.to_string(), "b": r.field.b.to_string() },
                "unit_norm": r.field.unit_norm,
                "regulator": round_sig(r.field.regulator),
                "phi_epsilon0": round_sig(r.phi_epsilon0),
                "spacing": round_sig(r.spacing),
                "lattice_rank": r.lattice_rank,
            });
            if let Some(t) = t {
                outputs["count_bound"] = json!(r.count_bound(t, cosets)?);
            }
            Response {
                command: "monomial",
                inputs: json!({ "D": d, "T": t, "cosets": cosets }),
                outputs,
                citations: &["unit lattice of a real quadratic field", "monomial forms have density zero"],
            }
        }
        Command::Audit { p, mmax } => Response {
            command: "audit",
            inputs: json!({ "p": p, "mmax": mmax }),
            outputs: to_value(&oracle::exhaustive_twist_audit(p, mmax)?),
            citations: &["twists of principal series by the quadratic character", "twists of special representations", "Atkin-Li conductor bound"],
        },
    })
}

fn render(v: &Value, pretty: bool) -> String {
    let mut s = if pretty { serde_json::to_string_pretty(v) } else { serde_json::to_string(v) }.expect("json");
    s.push('\n');
    s
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Domain(_) => "domain",
        Error::Unsupported(_) => "unsupported",
        Error::SearchExhausted(_) => "search_exhausted",
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 1, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    match execute(&cli.command) {
        Ok(r) => {
            let mut obj = Map::new();
            obj.insert("schema".into(), json!(SCHEMA));
            obj.insert("command".into(), json!(r.command));
            obj.insert("inputs".into(), r.inputs);
            if let Value::Object(out) = r.outputs {
                for (k, v) in out {
                    obj.entry(k).or_insert(v);
                }
            }
            obj.insert("citations".into(), json!(r.citations));
            Outcome { code: 0, stdout: render(&Value::Object(obj), cli.pretty), stderr: String::new() }
        }
        Err(e) => {
            let body = json!({ "error": e.to_string(), "kind": error_kind(&e) });
            Outcome { code: 2, stdout: render(&body, cli.pretty), stderr: String::new() }
        }
    }
}
