use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use sturmian::characteristic::{self, DirectiveStream};
use sturmian::{christoffel, depth, oracle, palindrome, standard, BinaryWord, Error};

const FORMAT_VERSION: u32 = 1;
const MAX_OUTPUT_LEN: usize = 1 << 24;
const DEFAULT_STABILITY_BUDGET: usize = 12;

#[derive(Parser)]
#[command(name = "sturmian", version, about = "Central, Christoffel, standard and characteristic Sturmian words")]
struct Cli {
    /// Emit a single JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Read word arguments in run-length form, e.g. a2b1a1b2.
    #[arg(long, global = true)]
    run_length: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, serde::Serialize)]
struct WordArg {
    /// A word over {a, b}; pass "" or --empty for the empty word.
    word: Option<String>,
    /// Use the empty word.
    #[arg(long)]
    empty: bool,
}

#[derive(Subcommand)]
enum Command {
    /// ψ(v) with its length, periods and index.
    Psi(WordArg),
    /// Right palindromic closure w^(+).
    Closure(WordArg),
    /// Build and analyse a Christoffel word.
    Christoffel(ChristoffelArgs),
    /// Derivative of a Christoffel (or, with --standard, standard) word.
    Derive(DeriveArgs),
    /// Height, δ profile and bounds of a directive word.
    Depth(WordArg),
    /// Words of length k counted by height.
    Table(TableArgs),
    /// Prefix of a characteristic word given by its directive.
    Char(CharArgs),
    /// Exhaustive check of the identities on all short directive words.
    Verify(VerifyArgs),
}

#[derive(Args, serde::Serialize)]
#[group(required = true, multiple = false)]
struct ChristoffelArgs {
    /// Slope p/q, i.e. p letters b and q letters a.
    #[arg(long)]
    slope: Option<String>,
    /// Directive word v, giving aψ(v)b.
    #[arg(long)]
    directive: Option<String>,
}

#[derive(Args, serde::Serialize)]
struct DeriveArgs {
    #[command(flatten)]
    #[serde(flatten)]
    word: WordArg,
    /// Iterate down to a letter.
    #[arg(long)]
    chain: bool,
    /// Use the standard-word derivative D.
    #[arg(long)]
    standard: bool,
}

#[derive(Args, serde::Serialize)]
struct TableArgs {
    k: usize,
    /// List the words in each row.
    #[arg(long)]
    members: bool,
}

#[derive(Args, serde::Serialize)]
#[group(required = true, multiple = false)]
struct Source {
    /// Directive u·q^ω written "u|q".
    #[arg(long)]
    directive: Option<String>,
    /// Shorthand for "|ab".
    #[arg(long)]
    directive_fib: bool,
    /// The directive a b a² b a³ b …
    #[arg(long)]
    unbounded_runs: bool,
}

#[derive(Args, serde::Serialize)]
struct CharArgs {
    #[command(flatten)]
    source: Source,
    /// Number of letters to generate.
    #[arg(long)]
    length: usize,
    /// Also derive the stream and check the derivative identities.
    #[arg(long)]
    derive: bool,
    /// Continued-fraction terms to report.
    #[arg(long, default_value_t = 10)]
    terms: usize,
    /// Derivations tried when looking for stability.
    #[arg(long, default_value_t = DEFAULT_STABILITY_BUDGET)]
    budget: usize,
}

#[derive(Args, serde::Serialize)]
struct VerifyArgs {
    #[arg(long, default_value_t = 8)]
    max_len: usize,
}

enum Failure {
    Usage(String),
    Domain(String),
    Verify(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidLetter { .. } | Error::InvalidStream(_) => Failure::Usage(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

/// The JSON envelope plus an optional hand-formatted text rendering.
type Outcome = Result<(Value, Option<String>), Failure>;

/// Replaces every default cost guard when `STURMIAN_MAX_LEN` is set.
fn guard(default: usize) -> usize {
    std::env::var("STURMIAN_MAX_LEN").ok().and_then(|s| s.parse().ok()).unwrap_or(default)
}

fn parse_word(text: &str, run_length: bool) -> Result<BinaryWord, Failure> {
    let parsed = if run_length { BinaryWord::parse_run_length(text) } else { BinaryWord::parse(text) };
    parsed.map_err(|e| Failure::Usage(format!("malformed word {text:?}: {e}")))
}

fn word_of(arg: &WordArg, run_length: bool) -> Result<BinaryWord, Failure> {
    match (&arg.word, arg.empty) {
        (Some(_), true) => Err(Failure::Usage("give either a word or --empty".into())),
        (None, true) => Ok(BinaryWord::empty()),
        (Some(s), false) => parse_word(s, run_length),
        (None, false) => Err(Failure::Usage("missing word (use \"\" or --empty for ε)".into())),
    }
}

fn check_psi_size(v: &BinaryWord) -> Result<(), Failure> {
    let (pa, pb) = palindrome::period_lengths(v);
    let len = pa + pb;
    let limit = guard(MAX_OUTPUT_LEN);
    if len > (limit + 2).into() {
        return Err(Failure::Domain(format!("|ψ(v)| = {} exceeds the limit {limit}", len - 2u32)));
    }
    Ok(())
}

fn big(n: &num_bigint::BigUint) -> Value {
    sturmian::serde_num::big(n, serde_json::value::Serializer).expect("serializable")
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn run(cli: &Cli) -> Outcome {
    let rl = cli.run_length;
    match &cli.command {
        Command::Psi(arg) => {
            let v = word_of(arg, rl)?;
            check_psi_size(&v)?;
            let w = palindrome::psi(&v);
            let (pa, pb) = palindrome::period_lengths(&v);
            let result = json!({
                "psi": w,
                "length": w.len(),
                "periods": { "p_a": big(&pa), "p_b": big(&pb) },
                "index": christoffel::directive_index(&v),
            });
            Ok((envelope("psi", json!({ "word": v }), result), None))
        }
        Command::Closure(arg) => {
            let w = word_of(arg, rl)?;
            let c = palindrome::palindromic_closure(&w);
            Ok((envelope("closure", json!({ "word": w }), json!({ "closure": c, "length": c.len() })), None))
        }
        Command::Christoffel(args) => {
            let (word, inputs) = if let Some(s) = &args.slope {
                let (p, q) = s
                    .split_once('/')
                    .and_then(|(p, q)| Some((p.trim().parse::<u64>().ok()?, q.trim().parse::<u64>().ok()?)))
                    .ok_or_else(|| Failure::Usage(format!("slope must look like p/q, got {s:?}")))?;
                (christoffel::from_slope(p, q)?, json!({ "slope": { "num": p, "den": q } }))
            } else {
                let v = parse_word(args.directive.as_deref().unwrap_or_default(), rl)?;
                check_psi_size(&v)?;
                (christoffel::from_directive(&v), json!({ "directive": v }))
            };
            let analysis = christoffel::classify(&word)?;
            let (parts, cf) = match &analysis.directive {
                Some(v) if analysis.is_proper => {
                    (to_value(&christoffel::lyndon_factorization(&word)?), to_value(&christoffel::slope_cf(v)?))
                }
                _ => (Value::Null, Value::Null),
            };
            let result = json!({
                "word": word,
                "length": word.len(),
                "classification": analysis,
                "lyndon_factors": parts,
                "slope": word.slope()?,
                "slope_cf": cf,
            });
            Ok((envelope("christoffel", inputs, result), None))
        }
        Command::Derive(args) => {
            let w = word_of(&args.word, rl)?;
            let kind = if args.standard { "standard" } else { "christoffel" };
            let result = match (args.chain, args.standard) {
                (false, false) => json!({ "derivative": christoffel::derivative(&w)? }),
                (false, true) => json!({ "derivative": standard::derivative(&w)? }),
                (true, false) => to_value(&christoffel::derivative_chain(&w)?),
                (true, true) => to_value(&standard::derivative_chain(&w)?),
            };
            let inputs = json!({ "word": w, "chain": args.chain, "kind": kind });
            Ok((envelope("derive", inputs, result), None))
        }
        Command::Depth(arg) => {
            let v = word_of(arg, rl)?;
            let profile = depth::delta(&v);
            let mut result = json!({
                "height": depth::height(&v),
                "delta_bits": profile.bit_string(),
                "delta": profile.delta,
                "h_of_bvb": depth::height_via_h(&v),
                "extension": v.extension(),
            });
            if !v.is_empty() {
                let (u1, u2) = depth::boundary_words(&v)?;
                let comps = depth::alternating_components(&v)?;
                let extra = json!({
                    "bounds": depth::height_bounds(&v)?,
                    "alternating_components": comps.components(),
                    "boundary_words": { "u1": u1, "u2": u2 },
                });
                merge(&mut result, extra);
            }
            Ok((envelope("depth", json!({ "word": v }), result), None))
        }
        Command::Table(args) => {
            let table = depth::enumerate_height_classes(args.k, args.members, guard(depth::DEFAULT_TABLE_CAP))?;
            let rows: Vec<Value> = table
                .rows
                .iter()
                .map(|r| {
                    let (jc, oc) = (depth::j_closed(table.k, r.p), depth::o_closed(table.k, r.p));
                    let agrees = jc == r.j.into() && oc == r.o.into();
                    let mut row = json!({ "p": r.p, "e": r.e, "o": r.o, "j": r.j, "j_closed": big(&jc), "o_closed": big(&oc), "closed_forms_agree": agrees });
                    if let Some(reps) = r.representatives() {
                        merge(&mut row, json!({ "members": r.members, "a_initial": reps }));
                    }
                    row
                })
                .collect();
            let mut text = format!(
                "k = {}\n{:>3} {:>10} {:>10} {:>10} {:>10} {:>10}  agree\n",
                table.k, "p", "e", "o", "J", "J_closed", "o_closed"
            );
            for row in &rows {
                text.push_str(&format!(
                    "{:>3} {:>10} {:>10} {:>10} {:>10} {:>10}  {}",
                    scalar(&row["p"]),
                    scalar(&row["e"]),
                    scalar(&row["o"]),
                    scalar(&row["j"]),
                    scalar(&row["j_closed"]),
                    scalar(&row["o_closed"]),
                    scalar(&row["closed_forms_agree"])
                ));
                if let Some(reps) = row.get("a_initial").and_then(Value::as_array) {
                    let list: Vec<&str> = reps.iter().filter_map(Value::as_str).collect();
                    text.push_str(&format!("  a-initial: {{{}}}", list.join(", ")));
                }
                text.push('\n');
            }
            let result = json!({ "k": table.k, "rows": rows });
            Ok((envelope("table", to_value(args), result), Some(text)))
        }
        Command::Char(args) => {
            let stream = if args.source.directive_fib {
                DirectiveStream::fibonacci()
            } else if args.source.unbounded_runs {
                DirectiveStream::unbounded_runs(guard(characteristic::DEFAULT_PREFIX_CAP))
            } else {
                args.source.directive.as_deref().unwrap_or_default().parse()?
            };
            let cap = guard(characteristic::DEFAULT_PREFIX_CAP);
            let prefix = characteristic::prefix_with_cap(&stream, args.length, cap)?;
            let mut result = json!({
                "prefix": prefix.word,
                "length": prefix.word.len(),
                "directive_consumed": prefix.directive_consumed,
                "index": characteristic::index(&stream)?,
                "slope_cf": characteristic::slope_cf_stream(&stream, args.terms.max(1))?,
            });
            if args.derive {
                let ds = characteristic::derivative_stream(&stream)?;
                let extra = json!({
                    "derivative_directive": ds,
                    "derivative_prefix": characteristic::prefix_with_cap(&ds, args.length, cap)?.word,
                    "derivative_check": characteristic::derivative_prefix_check(&stream, args.length)?,
                    "stability": characteristic::is_stable(&stream, args.budget)?,
                });
                merge(&mut result, extra);
            }
            let inputs = json!({ "directive": stream, "length": args.length, "derive": args.derive });
            Ok((envelope("char", inputs, result), None))
        }
        Command::Verify(args) => {
            let report = oracle::verify_all_with(args.max_len, guard(oracle::VERIFY_CAP), oracle::Hooks::default())?;
            let result = to_value(&report);
            if !report.all_passed() {
                let envelope = envelope("verify", to_value(args), result);
                return Err(Failure::Verify(json!({ "envelope": envelope, "text": report.to_text() })));
            }
            Ok((envelope("verify", to_value(args), result), Some(report.to_text())))
        }
    }
}

fn envelope(command: &str, inputs: Value, result: Value) -> Value {
    json!({ "command": command, "inputs": inputs, "result": result, "format_version": FORMAT_VERSION })
}

fn merge(target: &mut Value, extra: Value) {
    if let (Value::Object(t), Value::Object(e)) = (target, extra) {
        t.extend(e);
    }
}

/// `key: value` lines; a `{num, den}` object prints as a fraction or `inf`.
fn render(prefix: &str, value: &Value, out: &mut String) {
    match value {
        Value::Object(m) if is_fraction(m) => {
            let den = m["den"].as_u64().unwrap_or(0);
            let text = if den == 0 { "inf".to_string() } else { format!("{}/{}", m["num"], den) };
            out.push_str(&format!("{prefix}: {text}\n"));
        }
        Value::Object(m) => {
            for (k, v) in m {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                render(&key, v, out);
            }
        }
        Value::Array(items) if items.iter().all(|x| !x.is_object() && !x.is_array()) => {
            let parts: Vec<String> = items.iter().map(scalar).collect();
            out.push_str(&format!("{prefix}: {}\n", parts.join(" ")));
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                render(&format!("{prefix}[{i}]"), v, out);
            }
        }
        _ => out.push_str(&format!("{prefix}: {}\n", scalar(value))),
    }
}

fn is_fraction(m: &Map<String, Value>) -> bool {
    m.len() == 2 && m.contains_key("num") && m.contains_key("den")
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) if s.is_empty() => "\"\"".into(),
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok((envelope, text)) => {
            if cli.json {
                println!("{envelope}");
            } else if let Some(text) = text {
                print!("{text}");
            } else {
                let mut out = String::new();
                render("", &envelope["result"], &mut out);
                print!("{out}");
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Verify(payload)) => {
            if cli.json {
                println!("{}", payload["envelope"]);
            } else {
                print!("{}", payload["text"].as_str().unwrap_or_default());
            }
            eprintln!("error: verification failed");
            ExitCode::from(3)
        }
    }
}
