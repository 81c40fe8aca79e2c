use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use mild2::acceptance::{run_all, AcceptanceOptions};
use mild2::linking::{
    augment_from, eliminate_generator, koch_presentation, linking_data, OrderedPrimeSet, Presentation,
    QuadraticRelator,
};
use mild2::mildness::{check_mild, CheckOptions, Verdict};
use mild2::oracle::{strongly_free_oracle, Agreement};
use mild2::quadlie::{elimination_basis, enumerate_y, evaluate, FreeAlgebra, Ring, WeightedAlphabet};
use mild2::series::{
    gamma_series, lower_central_dims, power_sums, reduced_dims_bn, series_json, strongly_free_series,
    verify_cent_g, zassenhaus_dims, DimensionSequence, WeightSignature,
};
use mild2::oracle::independent_in_degree;
use mild2::Error;

const EXIT_MISMATCH: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_NOT_SHOWN: u8 = 3;
const EXIT_INAPPLICABLE: u8 = 4;
const EXIT_RESOURCE: u8 = 5;

#[derive(Parser, Debug)]
#[command(name = "mild2", version, about = "Koch presentations, mildness certificates and dimension series for pro-2 groups")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Default truncation degree for series, dimensions and the oracle.
    #[arg(long, global = true, default_value_t = 6, value_parser = clap::value_parser!(u32).range(1..))]
    max_degree: u32,
    /// Default search bound for prime augmentation.
    #[arg(long, global = true, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    prime_bound: u64,
    /// Memory cap for the oracle's elimination matrices.
    #[arg(long, global = true, env = "MILD2_MEMORY_CAP_MIB", default_value_t = 1024, value_parser = clap::value_parser!(u64).range(1..))]
    memory_cap_mib: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum RingArg {
    F2,
    F2pi,
}

impl From<RingArg> for Ring {
    fn from(r: RingArg) -> Ring {
        match r {
            RingArg::F2 => Ring::F2,
            RingArg::F2pi => Ring::F2Pi,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the a-vector and linking matrix of an ordered prime set.
    Linking {
        #[arg(long)]
        primes: String,
    },
    /// Print the presentation built from primes or read from a file.
    Present(InputArgs),
    /// Eliminate one generator using the product relation.
    Reduce {
        #[command(flatten)]
        input: InputArgs,
        /// 1-based generator to eliminate (default: last one in the product relation).
        #[arg(long)]
        eliminate: Option<usize>,
    },
    /// Decide whether the criteria certify the presentation as mild.
    CheckMild {
        #[command(flatten)]
        input: InputArgs,
        /// Also compare brute-force quotient dimensions through this degree.
        #[arg(long)]
        oracle_depth: Option<usize>,
        #[arg(long, value_enum, default_value_t = RingArg::F2)]
        oracle_ring: RingArg,
    },
    /// Extend a seed set of primes to a set certified mild.
    Augment {
        #[arg(long)]
        seed: String,
        /// Largest prime considered (defaults to --prime-bound).
        #[arg(long)]
        bound: Option<u64>,
        /// Tuple q_1',...,q_m',q_last at which the search starts.
        #[arg(long)]
        start: Option<String>,
    },
    /// Expand a series attached to a weight signature.
    Series {
        #[command(flatten)]
        sig: SignatureArgs,
        #[arg(long, value_enum, default_value_t = SeriesKind::StronglyFree)]
        kind: SeriesKind,
        #[arg(long = "max")]
        max: Option<usize>,
    },
    /// Graded dimensions derived from a signature.
    Dims {
        #[command(flatten)]
        sig: SignatureArgs,
        #[arg(long, value_enum)]
        kind: DimsKind,
        #[arg(long = "max")]
        max: Option<usize>,
    },
    /// Brute-force quotient dimensions compared with the series.
    Oracle {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = RingArg::F2)]
        ring: RingArg,
        #[arg(long = "max")]
        max: Option<usize>,
        /// Use the relators as given even if a product relation is present.
        #[arg(long)]
        no_reduce: bool,
    },
    /// List free generating sets as bracket words.
    Basis {
        /// Generator weights, nondecreasing.
        #[arg(long, default_value = "1,1")]
        weights: String,
        #[arg(long, value_enum, default_value_t = BasisKind::Y)]
        kind: BasisKind,
        /// 1-based generators forming the eliminated subset.
        #[arg(long, default_value = "")]
        subset: String,
        #[arg(long = "max")]
        max: Option<u32>,
        /// Also check linear independence per degree.
        #[arg(long)]
        check: bool,
    },
    /// Run the acceptance suite.
    Selftest {
        #[arg(long)]
        degree_seven: bool,
    },
}

#[derive(Args, Debug)]
struct InputArgs {
    /// Comma-separated ordered prime list.
    #[arg(long, conflicts_with_all = ["input", "relators"])]
    primes: Option<String>,
    /// Presentation JSON file.
    #[arg(long, conflicts_with = "relators")]
    input: Option<PathBuf>,
    /// Semicolon-separated relators, e.g. "x1^2;[x1,x2]".
    #[arg(long, requires = "d")]
    relators: Option<String>,
    /// Number of generators for --relators.
    #[arg(long)]
    d: Option<usize>,
}

#[derive(Args, Debug)]
struct SignatureArgs {
    /// Number of weight-1 generators.
    #[arg(long, conflicts_with = "weights")]
    d: Option<usize>,
    /// Number of quadratic relators.
    #[arg(long, conflicts_with = "degrees")]
    m: Option<usize>,
    /// Comma-separated generator weights.
    #[arg(long)]
    weights: Option<String>,
    /// Comma-separated relator degrees.
    #[arg(long)]
    degrees: Option<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SeriesKind {
    StronglyFree,
    Gamma,
    PowerSums,
    CentCheck,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DimsKind {
    Reduced,
    LowerCentral,
    Zassenhaus,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BasisKind {
    Y,
    Elimination,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::MemoryGuard { .. } | Error::BoundExceeded { .. } | Error::SearchExhausted => EXIT_RESOURCE,
            _ => EXIT_INPUT,
        };
        Failure { code, message: e.to_string() }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_INPUT, message: message.into() }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn emit(cli: &Cli, value: &Value, text: impl FnOnce() -> String) {
    let out = match cli.format {
        Format::Json => serde_json::to_string_pretty(value).expect("json value serializes") + "\n",
        Format::Text => text(),
    };
    let _ = std::io::stdout().lock().write_all(out.as_bytes());
}

fn parse_list<T: std::str::FromStr>(text: &str, what: &str) -> Result<Vec<T>, Failure> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<T>().map_err(|_| input_error(format!("invalid {what} {s:?}"))))
        .collect()
}

fn load_presentation(input: &InputArgs) -> Result<Presentation, Failure> {
    match (&input.primes, &input.input, &input.relators) {
        (Some(p), None, None) => Ok(koch_presentation(&p.parse::<OrderedPrimeSet>()?)),
        (None, Some(path), None) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| input_error(format!("cannot read {}: {e}", path.display())))?;
            Ok(Presentation::from_json(&text)?)
        }
        (None, None, Some(r)) => {
            let d = input.d.ok_or_else(|| input_error("--relators needs --d"))?;
            let rels = r
                .split(';')
                .filter(|s| !s.trim().is_empty())
                .map(|s| QuadraticRelator::parse(s, d))
                .collect::<mild2::Result<Vec<_>>>()?;
            Ok(Presentation::from_relators(d, rels)?)
        }
        _ => Err(input_error("give exactly one of --primes, --input, --relators")),
    }
}

fn signature(args: &SignatureArgs) -> Result<WeightSignature, Failure> {
    let e = match (&args.weights, args.d) {
        (Some(w), _) => parse_list::<u32>(w, "weight")?,
        (None, Some(d)) => vec![1; d],
        (None, None) => return Err(input_error("give --d or --weights")),
    };
    let h = match (&args.degrees, args.m) {
        (Some(h), _) => parse_list::<u32>(h, "degree")?,
        (None, Some(m)) => vec![2; m],
        (None, None) => Vec::new(),
    };
    Ok(WeightSignature::new(e, h)?)
}

fn signature_json(sig: &WeightSignature) -> Value {
    json!({ "e": sig.weights(), "h": sig.relator_degrees() })
}

fn pairs_text(seq: &DimensionSequence) -> String {
    seq.pairs().map(|(n, v)| format!("{n}: {v}\n")).collect()
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Linking { primes } => {
            let s: OrderedPrimeSet = primes.parse()?;
            let link = linking_data(&s);
            emit(cli, &link.to_json_value(&s), || link.to_text());
            Ok(0)
        }
        Command::Present(input) => {
            let p = load_presentation(input)?;
            emit(cli, &p.to_json_value(), || p.to_text());
            Ok(0)
        }
        Command::Reduce { input, eliminate } => {
            let p = load_presentation(input)?;
            let t = match eliminate {
                Some(0) => return Err(input_error("--eliminate is 1-based")),
                Some(k) => Some(k - 1),
                None => None,
            };
            let q = eliminate_generator(&p, t)?;
            emit(cli, &q.to_json_value(), || q.to_text());
            Ok(0)
        }
        Command::CheckMild { input, oracle_depth, oracle_ring } => {
            let p = load_presentation(input)?;
            let opts = CheckOptions {
                oracle_depth: *oracle_depth,
                oracle_ring: (*oracle_ring).into(),
                memory_cap_mib: cli.memory_cap_mib,
            };
            let report = check_mild(&p, &opts)?;
            emit(cli, &report.to_json_value(), || report.to_text());
            Ok(match report.verdict {
                Verdict::Mild => 0,
                Verdict::NotShown => EXIT_NOT_SHOWN,
                Verdict::Inapplicable => EXIT_INAPPLICABLE,
            })
        }
        Command::Augment { seed, bound, start } => {
            let seed: OrderedPrimeSet = seed.parse()?;
            let start = start.as_deref().map(|s| parse_list::<u64>(s, "prime")).transpose()?;
            let result = augment_from(seed.primes(), bound.unwrap_or(cli.prime_bound), start.as_deref())?;
            emit(cli, &result.to_json_value(), || {
                let v = |ps: &[mild2::arith::OddPrime]| ps.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
                format!(
                    "seed: {}\nauxiliary: {}\nlast: {}\nS: {}\nattempts: {}\n{}",
                    result.seed,
                    v(&result.q_aux),
                    result.q_last,
                    result.s,
                    result.attempts,
                    result.report.to_text()
                )
            });
            Ok(0)
        }
        Command::Series { sig, kind, max } => {
            let sig = signature(sig)?;
            let n = max.unwrap_or(cli.max_degree as usize);
            let value = match kind {
                SeriesKind::StronglyFree => series_json("strongly_free", &strongly_free_series(&sig, n)),
                SeriesKind::Gamma => series_json("gamma", &gamma_series(&sig, n)),
                SeriesKind::PowerSums => {
                    let mut p = series_json("power_sums", &power_sums(&sig, n));
                    // power sums are indexed from 1
                    if let Some(values) = p["values"].as_array_mut() {
                        for pair in values.iter_mut() {
                            pair[0] = json!(pair[0].as_u64().unwrap_or(0) + 1);
                        }
                    }
                    p
                }
                SeriesKind::CentCheck => json!({ "kind": "cent_check", "holds": verify_cent_g(&sig, n)?, "through": n }),
            };
            let mut value = value;
            value["signature"] = signature_json(&sig);
            emit(cli, &value, || {
                if let Some(h) = value.get("holds") {
                    return format!("product identity through degree {n}: {h}\n");
                }
                value["values"]
                    .as_array()
                    .map(|a| a.iter().map(|p| format!("{}: {}\n", p[0], p[1])).collect())
                    .unwrap_or_default()
            });
            Ok(0)
        }
        Command::Dims { sig, kind, max } => {
            let n = max.unwrap_or(cli.max_degree as usize);
            let (seq, sig) = match kind {
                DimsKind::Reduced => {
                    let s = signature(sig)?;
                    (reduced_dims_bn(&s, n)?, s)
                }
                DimsKind::LowerCentral => {
                    let s = signature(sig)?;
                    (lower_central_dims(&s, n)?, s)
                }
                DimsKind::Zassenhaus => {
                    let s = signature(sig)?;
                    if s.weights().iter().any(|&w| w != 1) || s.relator_degrees().iter().any(|&h| h != 2) {
                        return Err(input_error("zassenhaus dimensions need weight-1 generators and quadratic relators"));
                    }
                    (zassenhaus_dims(s.weights().len(), s.relator_degrees().len(), n)?, s)
                }
            };
            let mut value = seq.to_json_value();
            value["signature"] = signature_json(&sig);
            if matches!(kind, DimsKind::LowerCentral) {
                value["interpretation"] =
                    json!("a_1 counts weight-1 generators; a_n for n >= 2 is the partial sum b_2 + ... + b_n");
            }
            emit(cli, &value, || pairs_text(&seq));
            Ok(0)
        }
        Command::Oracle { input, ring, max, no_reduce } => {
            let mut p = load_presentation(input)?;
            if !no_reduce && p.product_relation.as_ref().is_some_and(|pr| pr.iter().any(|&b| b)) {
                p = eliminate_generator(&p, None)?;
            }
            let depth = max.unwrap_or(cli.max_degree as usize);
            let o = strongly_free_oracle(p.d, &p.quadratic_relators(), depth, (*ring).into(), cli.memory_cap_mib)?;
            let mut value = o.to_json_value();
            value["profile"] = o.profile.to_json_value();
            emit(cli, &value, || {
                let status = match &o.agreement {
                    Agreement::Match => "match".to_string(),
                    Agreement::Mismatch { degree, oracle, formula } => {
                        format!("mismatch at degree {degree}: oracle {oracle}, series {formula}")
                    }
                };
                format!("{}{status}\n", o.profile.to_table())
            });
            Ok(if o.matches() { 0 } else { EXIT_MISMATCH })
        }
        Command::Basis { weights, kind, subset, max, check } => {
            let alphabet = WeightedAlphabet::new(parse_list::<u32>(weights, "weight")?)?;
            let n = max.unwrap_or(cli.max_degree);
            let groups: Vec<(u32, Vec<mild2::quadlie::BracketWord>)> = match kind {
                BasisKind::Y => enumerate_y(&alphabet, n)?.into_iter().collect(),
                BasisKind::Elimination => {
                    let s: Vec<usize> = parse_list::<usize>(subset, "generator")?
                        .into_iter()
                        .map(|k| k.checked_sub(1).ok_or_else(|| input_error("generators are 1-based")))
                        .collect::<Result<_, _>>()?;
                    let words = elimination_basis(&alphabet, &s, n)?;
                    let mut grouped = std::collections::BTreeMap::<u32, Vec<_>>::new();
                    for w in words {
                        grouped.entry(w.weight(&alphabet)).or_default().push(w);
                    }
                    grouped.into_iter().collect()
                }
            };
            let mut all_independent = true;
            let mut rows = Vec::new();
            for (deg, items) in &groups {
                let mut row = json!({
                    "degree": deg,
                    "count": items.len(),
                    "words": items.iter().map(ToString::to_string).collect::<Vec<_>>(),
                });
                if *check {
                    let algebra = FreeAlgebra::new(alphabet.clone(), Ring::F2, n);
                    let polys = items
                        .iter()
                        .map(|b| evaluate(b, &algebra).map(|e| e.poly))
                        .collect::<mild2::Result<Vec<_>>>()?;
                    let rank = independent_in_degree(&polys)?;
                    all_independent &= rank == items.len();
                    row["rank"] = json!(rank);
                }
                rows.push(row);
            }
            let value = json!({ "weights": alphabet.weights(), "degrees": rows });
            emit(cli, &value, || {
                rows.iter()
                    .map(|r| {
                        let words: Vec<&str> = r["words"].as_array().into_iter().flatten().filter_map(Value::as_str).collect();
                        let rank = r.get("rank").map(|k| format!(" (rank {k})")).unwrap_or_default();
                        format!("degree {} [{}]{rank}: {}\n", r["degree"], r["count"], words.join(" "))
                    })
                    .collect()
            });
            Ok(if all_independent { 0 } else { EXIT_MISMATCH })
        }
        Command::Selftest { degree_seven } => {
            let opts = AcceptanceOptions {
                degree_seven: *degree_seven,
                memory_cap_mib: cli.memory_cap_mib,
                ..AcceptanceOptions::default()
            };
            let outcomes = run_all(&opts);
            let value = json!(outcomes
                .iter()
                .map(|o| json!({
                    "id": o.id,
                    "name": o.name,
                    "passed": o.passed,
                    "detail": o.detail,
                    "seconds": o.elapsed.as_secs_f64(),
                }))
                .collect::<Vec<_>>());
            emit(cli, &value, || outcomes.iter().map(|o| o.line() + "\n").collect());
            Ok(if outcomes.iter().all(|o| o.passed) { 0 } else { EXIT_MISMATCH })
        }
    }
}
