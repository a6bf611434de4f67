//! The `protori` command line.
//!
//! Every input is an inline literal, `@path` to read a file, or `-` for
//! stdin. Inputs starting with `{` are read as JSON, anything else as the text
//! notation of [`crate::dsl`]. Exit status is 0 on success, 1 on domain
//! errors and 2 on malformed input.

use std::io::{Read, Write};

use clap::{Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

use crate::decomposable::CdGroupDescriptor;
use crate::dsl::{self, ParseError, ParseErrorKind, SourceSpan};
use crate::lattice::LatticeElement;
use crate::prime_map::PrimeMap;
use crate::profinite::FgProfiniteGroup;
use crate::protorus::ProtorusDescriptor;
use crate::selftest;
use crate::supernatural::SupernaturalNumber;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "protori", version, about = "Profinite groups, protori and their duals")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t, global = true)]
    pub output: OutputFormat,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Standard form of a profinite group.
    Normalize { group: String },
    /// Non-Archimedean width and dimension.
    Invariants { group: String },
    /// D / kD.
    Quotient {
        #[arg(long)]
        k: u64,
        group: String,
    },
    /// kD.
    Scale {
        #[arg(long)]
        k: u64,
        group: String,
    },
    /// Whether two profinite groups are isogenous.
    Isogeny { a: String, b: String },
    /// Whether two supernatural numbers have the same type.
    Typeq { a: String, b: String },
    /// Kernel of the canonical surjection from Ẑ^m.
    Kernel { group: String },
    /// Checks K ↣ Ẑ^m ↠ D against the standard form.
    VerifyExact { group: String },
    /// Operations in the lattice of profinite subgroups with torus quotient.
    #[command(subcommand)]
    Lattice(LatticeCommand),
    /// Embeds a profinite group in a protorus with torus quotient.
    BuildProtorus { group: String },
    /// K ≅ K_ℚ × K_𝕋 × G.
    Decompose { protorus: String },
    /// Dimension of a protorus.
    Dim { protorus: String },
    /// Non-Archimedean dimension of a protorus.
    DimNa { protorus: String },
    /// p-adic and p-torsion ranks of the union of L(G).
    TildeDelta { protorus: String },
    /// Torsion ranks c_p of the dual of a torus-free protorus.
    Torsion { protorus: String },
    /// Projective resolution K ↣ Ẑ^r ↠ Δ.
    Resolve { protorus: String },
    /// Pontryagin dual of a completely decomposable group.
    Dual { cd: String },
    /// Completely decomposable group dual to a protorus.
    Undual { protorus: String },
    /// Whether two completely decomposable groups are quasi-isomorphic.
    QuasiIso { a: String, b: String },
    /// Completely decomposable group quasi-isomorphic to the dual.
    AcdWitness { protorus: String },
    /// Randomized self-check of the whole library.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 500)]
        cases: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum LatticeCommand {
    Meet { x: String, y: String },
    Join { x: String, y: String },
    /// Whether x ⊆ y.
    Leq { x: String, y: String },
    /// [y : x] for x ⊆ y.
    Index { x: String, y: String },
    /// Least k with k·x ⊆ y.
    Conductor { x: String, y: String },
    Scale {
        #[arg(long)]
        k: u64,
        x: String,
    },
    /// μ_n^{-1}(x).
    Preimage {
        #[arg(long)]
        n: u64,
        x: String,
    },
}

enum Failure {
    Domain(String),
    Parse(String),
}

impl From<crate::Error> for Failure {
    fn from(e: crate::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

struct Output {
    text: String,
    json: Value,
    ok: bool,
}

impl Output {
    fn new(text: impl Into<String>, json: Value) -> Self {
        Output { text: text.into(), json, ok: true }
    }

    fn value<T: Serialize>(text: impl Into<String>, v: &T) -> Self {
        Self::new(text, serde_json::to_value(v).expect("descriptors serialize"))
    }

    fn boolean(b: bool) -> Self {
        Self::new(b.to_string(), Value::Bool(b))
    }

    fn count(n: u128) -> Self {
        let json = u64::try_from(n).map_or_else(|_| Value::String(n.to_string()), Value::from);
        Self::new(n.to_string(), json)
    }
}

struct Session<'a> {
    stdin: &'a mut dyn Read,
    stdin_used: bool,
    color: bool,
}

impl Session<'_> {
    fn source(&mut self, arg: &str) -> Result<(String, String), Failure> {
        if arg == "-" {
            if self.stdin_used {
                return Err(Failure::Domain("stdin can only be read once".into()));
            }
            self.stdin_used = true;
            let mut s = String::new();
            self.stdin
                .read_to_string(&mut s)
                .map_err(|e| Failure::Domain(format!("reading stdin: {e}")))?;
            Ok((s, "<stdin>".into()))
        } else if let Some(path) = arg.strip_prefix('@') {
            let s = std::fs::read_to_string(path).map_err(|e| Failure::Domain(format!("reading {path}: {e}")))?;
            Ok((s, path.to_string()))
        } else {
            Ok((arg.to_string(), "<argument>".into()))
        }
    }

    fn load<T: DeserializeOwned>(
        &mut self,
        arg: &str,
        text: fn(&str) -> Result<T, ParseError>,
    ) -> Result<T, Failure> {
        let (src, origin) = self.source(arg)?;
        let parsed = if src.trim_start().starts_with('{') {
            serde_json::from_str(&src).map_err(|e| json_error(&src, &e))
        } else {
            text(src.trim_end())
        };
        parsed.map_err(|e| Failure::Parse(format!("{origin}:\n{}", e.render(&src, self.color))))
    }

    fn group(&mut self, arg: &str) -> Result<FgProfiniteGroup, Failure> {
        self.load(arg, dsl::parse_group)
    }

    fn sn(&mut self, arg: &str) -> Result<SupernaturalNumber, Failure> {
        self.load(arg, dsl::parse_sn)
    }

    fn protorus(&mut self, arg: &str) -> Result<ProtorusDescriptor, Failure> {
        self.load(arg, dsl::parse_protorus)
    }

    fn cd(&mut self, arg: &str) -> Result<CdGroupDescriptor, Failure> {
        self.load(arg, dsl::parse_cd)
    }

    fn lattice(&mut self, arg: &str) -> Result<LatticeElement, Failure> {
        self.load(arg, dsl::parse_lattice)
    }
}

fn json_error(src: &str, e: &serde_json::Error) -> ParseError {
    let line_start: usize = src.split_inclusive('\n').take(e.line().saturating_sub(1)).map(str::len).sum();
    let start = (line_start + e.column().saturating_sub(1)).min(src.len());
    let start = (0..=start).rev().find(|&i| src.is_char_boundary(i)).unwrap_or(0);
    let end = (start + 1..=src.len()).find(|&i| src.is_char_boundary(i)).unwrap_or(start);
    let kind = match e.classify() {
        serde_json::error::Category::Data => ParseErrorKind::InvalidValue,
        _ => ParseErrorKind::UnexpectedToken,
    };
    let message = e.to_string();
    let message = message.split(" at line ").next().unwrap_or(&message).to_string();
    ParseError { span: SourceSpan { start, end }, kind, message }
}

fn prime_lines<V: Clone + Eq>(map: &PrimeMap<V>, show: impl Fn(&V) -> String) -> String {
    let mut out: Vec<String> = map.exceptions().iter().map(|(p, v)| format!("{p}: {}", show(v))).collect();
    out.push(format!("rest: {}", show(map.default_value())));
    out.join("\n")
}

fn prime_json<V: Clone + Eq>(map: &PrimeMap<V>, show: impl Fn(&V) -> Value) -> Value {
    let exceptions: serde_json::Map<String, Value> =
        map.exceptions().iter().map(|(p, v)| (p.to_string(), show(v))).collect();
    json!({ "default": show(map.default_value()), "exceptions": exceptions })
}

fn execute(command: &Command, s: &mut Session) -> Result<Output, Failure> {
    use Command::*;
    let group_out = |g: FgProfiniteGroup| {
        let g = g.standardize();
        Output::value(dsl::format_group(&g), &g)
    };
    Ok(match command {
        Normalize { group } => group_out(s.group(group)?),
        Invariants { group } => {
            let inv = s.group(group)?.na_invariants();
            Output::value(format!("width {}\ndimension {}", inv.width, inv.dimension), &inv)
        }
        Quotient { k, group } => group_out(s.group(group)?.quotient_mod_k(*k)?),
        Scale { k, group } => group_out(s.group(group)?.scalar_mul(*k)?),
        Isogeny { a, b } => Output::boolean(s.group(a)?.isogenous(&s.group(b)?)),
        Typeq { a, b } => Output::boolean(s.sn(a)?.type_equivalent(&s.sn(b)?)),
        Kernel { group } => {
            let k = s.group(group)?.kernel_descriptor();
            Output::value(dsl::format_kernel(&k), &k)
        }
        VerifyExact { group } => Output::boolean(s.group(group)?.standardize().verify_exactness()),
        Lattice(op) => return lattice(op, s),
        BuildProtorus { group } => {
            let e = ProtorusDescriptor::from_profinite(&s.group(group)?);
            let subgroups: Vec<String> = e.torus_subgroups.iter().map(dsl::format_sn).collect();
            let text = format!(
                "protorus: {}\nlattice: {}\ntorus subgroups: [{}]",
                e.protorus,
                e.lattice,
                subgroups.join(", ")
            );
            Output::value(text, &e)
        }
        Decompose { protorus } => {
            let d = s.protorus(protorus)?.decompose();
            let text = format!(
                "divisible: {}\ntorus: {}\ntorus-free: {}",
                d.divisible_rank, d.torus_rank, d.torus_free_part
            );
            Output::value(text, &d)
        }
        Dim { protorus } => Output::count(s.protorus(protorus)?.dim() as u128),
        DimNa { protorus } => Output::count(s.protorus(protorus)?.dim_na() as u128),
        TildeDelta { protorus } => {
            let t = s.protorus(protorus)?.tilde_delta()?;
            let text = format!(
                "dim_na: {}\n{}",
                t.dim_na(),
                prime_lines(t.ranks(), |r| format!("padic {}, torsion {}", r.padic_rank, r.torsion_rank))
            );
            let mut json = prime_json(t.ranks(), |r| serde_json::to_value(r).expect("plain struct"));
            json["dim_na"] = Value::from(t.dim_na());
            Output::new(text, json)
        }
        Torsion { protorus } => {
            let t = s.protorus(protorus)?.torsion_structure()?;
            Output::new(prime_lines(&t, usize::to_string), prime_json(&t, |c| Value::from(*c)))
        }
        Resolve { protorus } => {
            let r = s.protorus(protorus)?.projective_resolution()?;
            let text = format!("kernel: {}\nfree rank: {}", dsl::format_kernel(&r.kernel), r.free_rank);
            Output::value(text, &r)
        }
        Dual { cd } => {
            let k = s.cd(cd)?.dual();
            Output::value(k.to_string(), &k)
        }
        Undual { protorus } => {
            let a = CdGroupDescriptor::from_dual(&s.protorus(protorus)?);
            Output::value(a.to_string(), &a)
        }
        QuasiIso { a, b } => Output::boolean(s.cd(a)?.quasi_isomorphic(&s.cd(b)?)),
        AcdWitness { protorus } => {
            let a = CdGroupDescriptor::acd_witness(&s.protorus(protorus)?)?;
            Output::value(a.to_string(), &a)
        }
        Selftest { seed, cases } => {
            let r = selftest::run(*seed, *cases);
            let checks: Vec<Value> = r
                .checks
                .iter()
                .map(|c| json!({ "name": c.name, "cases": c.cases, "failure": c.failure }))
                .collect();
            let json = json!({ "seed": r.seed, "passed": r.passed(), "checks": checks });
            Output { text: r.to_string().trim_end().to_string(), json, ok: r.passed() }
        }
    })
}

fn lattice(op: &LatticeCommand, s: &mut Session) -> Result<Output, Failure> {
    use LatticeCommand::*;
    let element = |x: LatticeElement| Output::value(x.to_string(), &x);
    Ok(match op {
        Meet { x, y } => element(s.lattice(x)?.meet(&s.lattice(y)?)?),
        Join { x, y } => element(s.lattice(x)?.join(&s.lattice(y)?)?),
        Leq { x, y } => Output::boolean(s.lattice(x)?.leq(&s.lattice(y)?)?),
        Index { x, y } => Output::count(s.lattice(x)?.index(&s.lattice(y)?)?),
        Conductor { x, y } => Output::count(s.lattice(x)?.find_conductor(&s.lattice(y)?)?),
        Scale { k, x } => element(s.lattice(x)?.scale(*k)?),
        Preimage { n, x } => element(s.lattice(x)?.preimage_mu(*n)?),
    })
}

/// Runs one invocation; `args` includes the program name. Returns the exit
/// status.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write, color: bool) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = if color { e.render().ansi().to_string() } else { e.render().to_string() };
            let _ = if e.use_stderr() { write!(stderr, "{rendered}") } else { write!(stdout, "{rendered}") };
            return code;
        }
    };
    let mut session = Session { stdin, stdin_used: false, color };
    let (label_on, label_off) = if color { ("\x1b[1;31m", "\x1b[0m") } else { ("", "") };
    match execute(&cli.command, &mut session) {
        Ok(out) => {
            let body = match cli.output {
                OutputFormat::Text => out.text,
                OutputFormat::Json => out.json.to_string(),
            };
            let _ = writeln!(stdout, "{body}");
            if out.ok {
                0
            } else {
                1
            }
        }
        Err(Failure::Domain(msg)) => {
            let _ = writeln!(stderr, "{label_on}error{label_off}: {msg}");
            1
        }
        Err(Failure::Parse(msg)) => {
            let _ = write!(stderr, "{msg}");
            2
        }
    }
}
