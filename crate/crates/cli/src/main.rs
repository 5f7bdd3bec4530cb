//! `sepreg`: decide separability of regular languages from the command
//! line.
//!
//! Exit codes: 0 when a verdict or result was produced, 2 on usage errors,
//! 3 on regex or automaton-file errors, 4 when a cap or timeout made the
//! outcome inconclusive.

mod report;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use sepreg_core::oracles::{self, PtOracle, Side};
use sepreg_core::pt::{build_synch_graph, synch_to_dot};
use sepreg_core::{format, regex, Error, Family, Limits, Nfa, Stats, SymbolSet, Word};

const CAPS_ENV: &str = "SEPREG_DEFAULT_CAPS";

#[derive(Parser)]
#[command(name = "sepreg", version, about = "Separability of regular languages")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide separability for one family
    Decide {
        #[command(flatten)]
        io: Inputs,
        /// pt, subseq-single, subseq-union, suffix-single, suffix-union,
        /// suffix-bc, prefix-single, prefix-union or prefix-bc
        #[arg(long)]
        family: Family,
        /// Include the separator description
        #[arg(long)]
        witness: bool,
        /// Depth bound for the subseq-single search
        #[arg(long)]
        depth_cap: Option<usize>,
    },
    /// Subsequence-profile oracle for piecewise-testable separability
    Oracle {
        #[command(flatten)]
        io: Inputs,
        #[arg(long)]
        max_level: Option<usize>,
    },
    /// Search for a long zigzag between K and L
    Zigzag {
        #[command(flatten)]
        io: Inputs,
        #[arg(long)]
        max_len: Option<usize>,
        #[arg(long)]
        max_word_len: Option<usize>,
    },
    /// Layer separation of finite languages
    Layers {
        #[command(flatten)]
        io: Inputs,
    },
    /// Export the synchronization graph
    Synch {
        #[command(flatten)]
        io: Inputs,
        /// Write DOT here instead of standard output
        #[arg(long)]
        dot: Option<std::path::PathBuf>,
    },
}

#[derive(Args)]
struct Inputs {
    /// `re:<regex>` or `file:<path>`
    #[arg(long = "K", value_name = "SOURCE")]
    k: String,
    /// `re:<regex>` or `file:<path>`
    #[arg(long = "L", value_name = "SOURCE")]
    l: String,
    /// Extra ambient symbols, e.g. `abc`
    #[arg(long)]
    alphabet: Option<String>,
    #[arg(long)]
    json: bool,
    #[arg(long)]
    timeout_ms: Option<u64>,
}

/// Defaults, overridable through `SEPREG_DEFAULT_CAPS`, e.g.
/// `max_level=3,max_word_len=16`.
struct Caps {
    max_level: usize,
    max_len: usize,
    max_word_len: usize,
    depth_cap: Option<usize>,
    determinize_cap: usize,
    profile_cap: usize,
    timeout_ms: Option<u64>,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_level: 4,
            max_len: 8,
            max_word_len: 24,
            depth_cap: None,
            determinize_cap: 4096,
            profile_cap: 200_000,
            timeout_ms: None,
        }
    }
}

impl Caps {
    fn from_env() -> Result<Caps, Failure> {
        let mut caps = Caps::default();
        let Ok(text) = std::env::var(CAPS_ENV) else {
            return Ok(caps);
        };
        for item in text.split([',', ' ']).filter(|s| !s.is_empty()) {
            let bad = || Failure::usage(format!("{CAPS_ENV}: bad entry `{item}`"));
            let (key, value) = item.split_once('=').ok_or_else(bad)?;
            let n: usize = value.trim().parse().map_err(|_| bad())?;
            if n == 0 {
                return Err(bad());
            }
            match key.trim() {
                "max_level" => caps.max_level = n,
                "max_len" => caps.max_len = n,
                "max_word_len" => caps.max_word_len = n,
                "depth_cap" => caps.depth_cap = Some(n),
                "determinize_cap" => caps.determinize_cap = n,
                "profile_cap" => caps.profile_cap = n,
                "timeout_ms" => caps.timeout_ms = Some(n as u64),
                _ => return Err(bad()),
            }
        }
        Ok(caps)
    }

    fn limits(&self, timeout_ms: Option<u64>) -> Limits {
        let limits = Limits {
            depth_cap: self.depth_cap,
            determinize_cap: self.determinize_cap,
            profile_cap: self.profile_cap,
            ..Limits::default()
        };
        match timeout_ms.or(self.timeout_ms) {
            Some(ms) => limits.with_timeout(Duration::from_millis(ms)),
            None => limits,
        }
    }
}

struct Failure {
    exit: u8,
    code: &'static str,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Failure {
        Failure {
            exit: 2,
            code: "usage",
            message: message.into(),
        }
    }

    fn input(message: impl Into<String>) -> Failure {
        Failure {
            exit: 3,
            code: "parse",
            message: message.into(),
        }
    }

    fn cap(message: impl Into<String>) -> Failure {
        Failure {
            exit: 4,
            code: "cap",
            message: message.into(),
        }
    }
}

fn positive(name: &str, v: Option<usize>) -> Result<Option<usize>, Failure> {
    match v {
        Some(0) => Err(Failure::usage(format!("--{name} must be positive"))),
        other => Ok(other),
    }
}

fn load(source: &str) -> Result<Nfa, Failure> {
    if let Some(text) = source.strip_prefix("re:") {
        regex::compile(text).map_err(|e| Failure::input(format!("regex `{text}`: {e}")))
    } else if let Some(path) = source.strip_prefix("file:") {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::input(format!("cannot read {path}: {e}")))?;
        format::parse_automaton_file(&text).map_err(|e| Failure::input(format!("{path}: {e}")))
    } else {
        Err(Failure::usage(format!(
            "input `{source}` must start with `re:` or `file:`"
        )))
    }
}

fn load_pair(io: &Inputs) -> Result<(Nfa, Nfa), Failure> {
    let (mut k, mut l) = (load(&io.k)?, load(&io.l)?);
    if let Some(extra) = &io.alphabet {
        let sigma = SymbolSet::from_glyphs(extra)
            .map_err(|e| Failure::usage(format!("--alphabet: {e}")))?;
        k = k.with_alphabet(sigma);
        l = l.with_alphabet(sigma);
    }
    Ok((k, l))
}

/// What a subcommand prints: JSON value and text, plus the exit code.
struct Outcome {
    json: Value,
    text: String,
    exit: u8,
}

fn decide(io: &Inputs, family: Family, witness: bool, depth_cap: Option<usize>, caps: &Caps) -> Result<Outcome, Failure> {
    let (k, l) = load_pair(io)?;
    let mut limits = caps.limits(io.timeout_ms);
    if let Some(d) = positive("depth-cap", depth_cap)? {
        limits.depth_cap = Some(d);
    }
    let v = sepreg_core::decide(family, &k, &l, &limits);
    Ok(Outcome {
        json: report::verdict(&v, witness),
        text: report::verdict_text(&v, witness),
        exit: if v.is_inconclusive() { 4 } else { 0 },
    })
}

fn stats_since(start: Instant) -> Stats {
    Stats {
        elapsed: start.elapsed(),
        ..Stats::default()
    }
}

fn oracle(io: &Inputs, max_level: Option<usize>, caps: &Caps) -> Result<Outcome, Failure> {
    let (k, l) = load_pair(io)?;
    let start = Instant::now();
    let max_level = positive("max-level", max_level)?.unwrap_or(caps.max_level);
    let limits = caps.limits(io.timeout_ms);
    let result = oracles::pt_oracle(&k, &l, max_level, &limits);
    let mut stats = stats_since(start);
    let (outcome, separable, level, exit) = match &result {
        PtOracle::Conclusive { separable, level } => ("conclusive", Some(*separable), Some(*level), 0),
        PtOracle::NecessaryConditionHolds { level } => ("necessary-condition-holds", None, Some(*level), 0),
        PtOracle::Inconclusive(reason) => {
            stats.caps_hit.push(reason.clone());
            ("inconclusive", None, None, 4)
        }
    };
    let text = match &result {
        PtOracle::Conclusive { separable: true, level } => format!("separable at level {level}\n"),
        PtOracle::Conclusive { separable: false, .. } => "not separable: the languages intersect\n".into(),
        PtOracle::NecessaryConditionHolds { level } => {
            format!("equal profiles across K and L at every level up to {level}\n")
        }
        PtOracle::Inconclusive(reason) => format!("inconclusive: {reason}\n"),
    };
    Ok(Outcome {
        json: json!({
            "family": "pt",
            "outcome": outcome,
            "separable": separable,
            "level": level,
            "stats": report::stats(&stats),
        }),
        text,
        exit,
    })
}

fn zigzag(io: &Inputs, max_len: Option<usize>, max_word_len: Option<usize>, caps: &Caps) -> Result<Outcome, Failure> {
    let (k, l) = load_pair(io)?;
    let start = Instant::now();
    let max_len = positive("max-len", max_len)?.unwrap_or(caps.max_len);
    let max_word_len = positive("max-word-len", max_word_len)?.unwrap_or(caps.max_word_len);
    let found = oracles::bounded_zigzag_search(&k, &l, max_len, max_word_len);
    let stats = stats_since(start);
    let (words, text) = match &found {
        Some(z) => (
            z.words
                .iter()
                .zip(&z.in_k)
                .map(|(w, &in_k)| json!({"word": report::word(w), "side": if in_k { "K" } else { "L" }}))
                .collect(),
            format!("zigzag of length {}: {z}\n", z.len()),
        ),
        None => (Vec::new(), "no word of K or L within the bounds\n".to_string()),
    };
    Ok(Outcome {
        json: json!({"length": words.len(), "words": words, "stats": report::stats(&stats)}),
        text,
        exit: 0,
    })
}

fn finite_words(a: &Nfa, name: &str) -> Result<Vec<Word>, Failure> {
    if a.is_infinite() {
        return Err(Failure::usage(format!("layers needs finite languages; {name} is infinite")));
    }
    Ok(a.enumerate_words(a.longest_word_len().unwrap_or(0)))
}

fn layers(io: &Inputs, caps: &Caps) -> Result<Outcome, Failure> {
    let (k, l) = load_pair(io)?;
    let start = Instant::now();
    let sep = oracles::layer_separation_finite(&finite_words(&k, "K")?, &finite_words(&l, "L")?)
        .map_err(|e| match e {
            Error::OverlappingInputs(_) => Failure {
                exit: 2,
                code: "overlapping-inputs",
                message: e.to_string(),
            },
            other => Failure::usage(other.to_string()),
        })?;
    let verified = oracles::verify_layer_separation(&k, &l, &sep, caps.determinize_cap)
        .map_err(|e| Failure::cap(e.to_string()))?;
    let stats = stats_since(start);
    let side = |s: Side| match s {
        Side::K => "K",
        Side::L => "L",
        Side::Neither => "none",
    };
    let mut text = format!("{} layers\n", sep.layers.len());
    let mut rows = Vec::new();
    for (i, layer) in sep.layers.iter().enumerate() {
        let atoms: Vec<String> = layer.atoms.iter().map(Word::display_or_eps).collect();
        text.push_str(&format!("S{}: closure of {{{}}} [{}]\n", i + 1, atoms.join(", "), side(layer.side)));
        rows.push(json!({
            "atoms": layer.atoms.iter().map(report::word).collect::<Vec<_>>(),
            "side": side(layer.side),
        }));
    }
    text.push_str(&format!("verified: {verified}\n"));
    Ok(Outcome {
        json: json!({"layers": rows, "verified": verified, "stats": report::stats(&stats)}),
        text,
        exit: 0,
    })
}

fn synch(io: &Inputs, dot: Option<&std::path::Path>) -> Result<Outcome, Failure> {
    let (k, l) = load_pair(io)?;
    let start = Instant::now();
    let g = build_synch_graph(&k, &l);
    let rendered = synch_to_dot(&g, &k, &l);
    let synchronizable = g.find_path().is_some();
    if let Some(path) = dot {
        std::fs::write(path, &rendered)
            .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))?;
    }
    let mut stats = stats_since(start);
    stats.vertices = g.vertices().count();
    let text = match dot {
        Some(path) => format!(
            "wrote {}: {} vertices, {} symbol edges, {} cycle edges\n",
            path.display(),
            stats.vertices,
            g.symbol_edges.len(),
            g.cycle_edges.len()
        ),
        None => rendered,
    };
    Ok(Outcome {
        json: json!({
            "separable": !synchronizable,
            "symbol_edges": g.symbol_edges.len(),
            "cycle_edges": g.cycle_edges.len(),
            "dot": dot.map(|p| p.display().to_string()),
            "stats": report::stats(&stats),
        }),
        text,
        exit: 0,
    })
}

fn run(cli: Cli) -> (Result<Outcome, Failure>, bool) {
    let json = match &cli.command {
        Command::Decide { io, .. }
        | Command::Oracle { io, .. }
        | Command::Zigzag { io, .. }
        | Command::Layers { io }
        | Command::Synch { io, .. } => io.json,
    };
    let caps = match Caps::from_env() {
        Ok(c) => c,
        Err(f) => return (Err(f), json),
    };
    let result = match &cli.command {
        Command::Decide {
            io,
            family,
            witness,
            depth_cap,
        } => decide(io, *family, *witness, *depth_cap, &caps),
        Command::Oracle { io, max_level } => oracle(io, *max_level, &caps),
        Command::Zigzag {
            io,
            max_len,
            max_word_len,
        } => zigzag(io, *max_len, *max_word_len, &caps),
        Command::Layers { io } => layers(io, &caps),
        Command::Synch { io, dot } => synch(io, dot.as_deref()),
    };
    (result, json)
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let (result, json) = match Cli::try_parse_from(&args) {
        Ok(cli) => run(cli),
        Err(e) if !e.use_stderr() => {
            // help and version
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let message = e.kind().to_string();
            let detail = e.to_string();
            let message = detail.lines().next().unwrap_or(&message).trim_start_matches("error: ");
            (Err(Failure::usage(message)), args.iter().any(|a| a == "--json"))
        }
    };
    match result {
        Ok(out) => {
            if json {
                println!("{}", out.json);
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(out.exit)
        }
        Err(f) => {
            if json {
                println!("{}", report::error(f.code, &f.message));
            } else {
                eprintln!("sepreg: {}", f.message);
            }
            ExitCode::from(f.exit)
        }
    }
}
