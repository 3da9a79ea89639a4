//! The `mdswe` command line.
//!
//! Exit status: 0 on success, 1 when a check fails (`property-a` false or a
//! `verify` failure), 2 on a usage error.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_rational::BigRational;
use serde::Serialize;
use serde_json::json;

use crate::binary_avg::{avg_binary_wgf, binomial_approx, bits_per_symbol};
use crate::codespec::CodeSpec;
use crate::duality::{macwilliams_pwe, property_a_check};
use crate::error::Error;
use crate::errorprob::{
    binary_output_weights, error_curve, parse_conditions, rational_f64, snr_grid, CurveRequest, Decoder, Metric,
    UserCondition,
};
use crate::linear_code::{brute_force_pwe, Budget, LinearCode, Partition, PweTable};
use crate::mds_enum::{pwgf, MdsParams};
use crate::report::{csv_table, fmt_f64, PweDocument};
use crate::verify::{self, Suite};

#[derive(Debug, Parser)]
#[command(name = "mdswe", version, about = "Exact enumerators and error probabilities of MDS codes")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Debug, Args)]
struct Global {
    /// Output file, or `json` / `csv` to pick the format on standard output.
    #[arg(long, global = true)]
    out: Option<String>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Worker threads for enumeration and sweeps.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Maximum number of codewords for brute-force enumeration.
    #[arg(long, global = true)]
    budget: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Closed-form partition weight enumerator of an MDS code.
    Pwe {
        #[arg(long)]
        code: String,
        /// Comma-separated block sizes of a contiguous partition.
        #[arg(long)]
        partition: Option<String>,
    },
    /// Partition weight enumerator by enumerating every codeword.
    Brute {
        #[arg(long)]
        code: String,
        #[arg(long)]
        partition: Option<String>,
    },
    /// Average binary-image weight distribution of a code over GF(2^m).
    Binary {
        #[arg(long)]
        code: String,
        /// Adds the per-block output weights for this partition.
        #[arg(long)]
        partition: Option<String>,
    },
    /// PWE of the dual code from the code's two-block PWE.
    DualPwe {
        #[arg(long)]
        code: String,
        #[arg(long)]
        partition: String,
    },
    /// Checks property A by enumeration.
    PropertyA {
        #[arg(long)]
        code: String,
    },
    /// Decoder error probability over an SNR grid.
    Errprob {
        #[arg(long)]
        code: String,
        #[arg(long)]
        partition: Option<String>,
        #[arg(long, value_enum, default_value_t = DecoderArg::Bm)]
        decoder: DecoderArg,
        #[arg(long, value_enum, default_value_t = MetricArg::Cep)]
        metric: MetricArg,
        /// 1-based user (block) index.
        #[arg(long)]
        user: Option<usize>,
        /// One of free, zero, full, atmost:<rho> per block, comma-separated.
        #[arg(long)]
        condition: Option<String>,
        /// `start:stop:step` in dB.
        #[arg(long, default_value = "4:8:0.25")]
        snr: String,
    },
    /// Runs the built-in verification suites.
    Verify {
        #[arg(long, default_value = "all", value_parser = Suite::NAMES)]
        suite: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DecoderArg {
    Bm,
    Ml,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MetricArg {
    Cep,
    Sep,
    Bep,
}

/// Failure of one invocation.
#[derive(Debug)]
enum Failure {
    /// Bad input; names the flag when one is responsible.
    Usage(Option<&'static str>, Error),
    /// The command ran and a check came out false.
    Check,
}

fn flag(name: &'static str) -> impl FnOnce(Error) -> Failure {
    move |e| Failure::Usage(Some(name), e)
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Usage(None, e)
    }
}

/// Where and how to write the result.
struct Sink {
    path: Option<PathBuf>,
    format: Format,
}

impl Sink {
    fn new(g: &Global) -> Sink {
        match g.out.as_deref() {
            Some("json") => Sink { path: None, format: Format::Json },
            Some("csv") => Sink { path: None, format: Format::Csv },
            Some(p) => {
                let ext = Path::new(p).extension().and_then(|e| e.to_str());
                let guess = if ext == Some("csv") { Format::Csv } else { Format::Json };
                Sink { path: Some(PathBuf::from(p)), format: g.format.unwrap_or(guess) }
            }
            None => Sink { path: None, format: g.format.unwrap_or(Format::Json) },
        }
    }
}

/// Parses arguments, runs the command and writes the document to `out` (or
/// the `--out` file). Diagnostics go to `err`.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    2
                }
            };
        }
    };
    if let Some(t) = cli.global.threads {
        // A pool that is already initialized keeps its size.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    let sink = Sink::new(&cli.global);
    let result = dispatch(&cli, sink.format).and_then(|(doc, status)| {
        match &sink.path {
            Some(p) => std::fs::write(p, doc).map_err(|e| Failure::Usage(Some("--out"), e.into()))?,
            None => out.write_all(doc.as_bytes()).map_err(|e| Failure::Usage(None, e.into()))?,
        }
        status
    });
    match result {
        Ok(()) => 0,
        Err(Failure::Check) => 1,
        Err(Failure::Usage(f, e)) => {
            let _ = match f {
                Some(f) => writeln!(err, "error: {f}: {e}"),
                None => writeln!(err, "error: {e}"),
            };
            2
        }
    }
}

type Outcome = Result<(String, Result<(), Failure>), Failure>;

fn ok(doc: String) -> Outcome {
    Ok((doc, Ok(())))
}

fn json_doc<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("plain data serializes");
    s.push('\n');
    s
}

fn parse_code(s: &str) -> Result<CodeSpec, Failure> {
    s.parse().map_err(flag("--code"))
}

fn build(spec: &CodeSpec) -> Result<LinearCode, Failure> {
    spec.build().map_err(flag("--code"))
}

fn mds(spec: &CodeSpec) -> Result<MdsParams, Failure> {
    spec.mds_params().ok_or_else(|| {
        Failure::Usage(
            Some("--code"),
            Error::Parse { what: "code", detail: format!("{spec} is not an MDS description (use rs:<q>:<n>:<k> or dual:rs:...)") },
        )
    })
}

fn parse_sizes(s: Option<&str>, n: usize) -> Result<Vec<usize>, Failure> {
    let Some(s) = s else {
        return Ok(vec![n]);
    };
    let sizes: Vec<usize> = s
        .split(',')
        .map(|x| x.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| Failure::Usage(Some("--partition"), Error::Parse { what: "partition", detail: s.into() }))?;
    if sizes.iter().sum::<usize>() != n || sizes.contains(&0) {
        return Err(Failure::Usage(
            Some("--partition"),
            Error::PartitionMismatch(format!("block sizes {sizes:?} must be positive and sum to n={n}")),
        ));
    }
    Ok(sizes)
}

fn pwe_doc(table: &PweTable, format: Format) -> String {
    let doc = PweDocument::from_table(table);
    match format {
        Format::Json => doc.to_json(),
        Format::Csv => doc.to_csv(),
    }
}

fn dispatch(cli: &Cli, format: Format) -> Outcome {
    let budget = cli.global.budget.map_or(Budget::DEFAULT, Budget);
    match &cli.command {
        Command::Pwe { code, partition } => {
            let spec = parse_code(code)?;
            let params = mds(&spec)?;
            let sizes = parse_sizes(partition.as_deref(), params.n())?;
            let poly = pwgf(params, &sizes)?;
            ok(pwe_doc(&PweTable::from_poly(&poly, &sizes)?, format))
        }
        Command::Brute { code, partition } => {
            let c = build(&parse_code(code)?)?;
            let sizes = parse_sizes(partition.as_deref(), c.n())?;
            let table = brute_force_pwe(&c, &Partition::contiguous(&sizes)?, budget).map_err(flag("--budget"))?;
            ok(pwe_doc(&table, format))
        }
        Command::DualPwe { code, partition } => {
            let c = build(&parse_code(code)?)?;
            let sizes = parse_sizes(Some(partition), c.n())?;
            if sizes.len() != 2 {
                return Err(Failure::Usage(
                    Some("--partition"),
                    Error::PartitionMismatch("the dual transform needs exactly two blocks".into()),
                ));
            }
            let table = brute_force_pwe(&c, &Partition::contiguous(&sizes)?, budget).map_err(flag("--budget"))?;
            let dual = macwilliams_pwe(&table, c.field().order() as u64, c.k())?;
            ok(pwe_doc(&dual, format))
        }
        Command::PropertyA { code } => {
            let report = property_a_check(&build(&parse_code(code)?)?, budget).map_err(flag("--budget"))?;
            let doc = match format {
                Format::Json => json_doc(&report),
                Format::Csv => csv_table(
                    &["coordinate", "weight", "observed", "expected"],
                    &report
                        .witnesses
                        .iter()
                        .map(|w| vec![w.coordinate.to_string(), w.weight.to_string(), w.observed.to_string(), w.expected.to_string()])
                        .collect::<Vec<_>>(),
                ),
            };
            Ok((doc, if report.holds { Ok(()) } else { Err(Failure::Check) }))
        }
        Command::Binary { code, partition } => {
            let spec = parse_code(code)?;
            let params = mds(&spec)?;
            bits_per_symbol(params).map_err(flag("--code"))?;
            let sizes = partition.as_deref().map(|p| parse_sizes(Some(p), params.n())).transpose()?;
            ok(binary_doc(params, sizes.as_deref(), format)?)
        }
        Command::Errprob { code, partition, decoder, metric, user, condition, snr } => {
            let spec = parse_code(code)?;
            let params = mds(&spec)?;
            bits_per_symbol(params).map_err(flag("--code"))?;
            let sizes = parse_sizes(partition.as_deref(), params.n())?;
            let conditions = condition.as_deref().map(parse_conditions).transpose().map_err(flag("--condition"))?;
            if let Some(c) = &conditions {
                if c.len() != sizes.len() {
                    return Err(Failure::Usage(
                        Some("--condition"),
                        Error::ConditionCountMismatch { expected: sizes.len(), found: c.len() },
                    ));
                }
            }
            let user = match user {
                Some(0) => {
                    return Err(Failure::Usage(Some("--user"), Error::ParamOutOfRange("users are numbered from 1".into())))
                }
                Some(u) if *u > sizes.len() => {
                    return Err(Failure::Usage(
                        Some("--user"),
                        Error::ParamOutOfRange(format!("user {u} but only {} blocks", sizes.len())),
                    ))
                }
                u => u.map(|u| u - 1),
            };
            if let (Some(u), Some(c)) = (user, &conditions) {
                if matches!(c[u], UserCondition::Zero | UserCondition::Full) {
                    return Err(Failure::Usage(
                        Some("--condition"),
                        Error::InvalidCondition(format!("user {} must be free or atmost", u + 1)),
                    ));
                }
            }
            let grid = snr_grid(snr).map_err(flag("--snr"))?;
            let decoder = match decoder {
                DecoderArg::Bm => Decoder::Bm,
                DecoderArg::Ml => Decoder::MlUnion,
            };
            let metric = match metric {
                MetricArg::Cep => Metric::Cep,
                MetricArg::Sep => Metric::Sep,
                MetricArg::Bep => Metric::Bep,
            };
            if decoder == Decoder::Bm && metric == Metric::Bep {
                return Err(Failure::Usage(
                    Some("--metric"),
                    Error::ParamOutOfRange("bep is available with --decoder ml".into()),
                ));
            }
            let req = CurveRequest { decoder, metric, sizes: Some(sizes.clone()), user, conditions };
            let curve = error_curve(params, &req, &grid)?;
            let doc = match format {
                Format::Json => json_doc(&json!({
                    "code": spec.to_string(),
                    "partition": sizes,
                    "decoder": curve.decoder,
                    "metric": curve.metric,
                    "user": curve.user.map(|u| u + 1),
                    "conditions": curve.conditions,
                    "points": curve.points,
                })),
                Format::Csv => csv_table(
                    &["gamma_db", "probability"],
                    &curve.points.iter().map(|p| vec![fmt_f64(p.gamma_db), fmt_f64(p.probability)]).collect::<Vec<_>>(),
                ),
            };
            ok(doc)
        }
        Command::Verify { suite } => {
            let s: Suite = suite.parse().map_err(flag("--suite"))?;
            let report = verify::run(s, cli.global.seed);
            let doc = match (format, cli.global.out.is_some() || cli.global.format.is_some()) {
                (Format::Json, true) => json_doc(&report),
                (Format::Csv, _) => csv_table(
                    &["suite", "check", "passed", "detail"],
                    &report
                        .checks
                        .iter()
                        .map(|c| vec![c.suite.to_string(), c.name.clone(), c.passed.to_string(), c.detail.clone()])
                        .collect::<Vec<_>>(),
                ),
                (Format::Json, false) => {
                    let mut s: String = report.checks.iter().map(|c| format!("{c}\n")).collect();
                    let failed = report.checks.iter().filter(|c| !c.passed).count();
                    s.push_str(&format!("{} checks, {failed} failed (seed {})\n", report.checks.len(), report.seed));
                    s
                }
            };
            Ok((doc, if report.passed { Ok(()) } else { Err(Failure::Check) }))
        }
    }
}

#[derive(Serialize)]
struct BinaryRow {
    h_b: usize,
    avg_weight: String,
    avg_weight_f64: f64,
    binomial_approx: String,
}

fn binary_doc(params: MdsParams, sizes: Option<&[usize]>, format: Format) -> Result<String, Failure> {
    let avg = avg_binary_wgf(params)?;
    let rows: Vec<BinaryRow> = avg
        .iter()
        .enumerate()
        .map(|(h, e)| {
            Ok(BinaryRow {
                h_b: h,
                avg_weight: e.to_string(),
                avg_weight_f64: rational_f64(e),
                binomial_approx: binomial_approx(params, h)?.to_string(),
            })
        })
        .collect::<crate::Result<_>>()?;
    let users: Vec<Vec<BigRational>> = match sizes {
        Some(s) => (0..s.len())
            .map(|j| binary_output_weights(params, s, j, &vec![UserCondition::Free; s.len()]))
            .collect::<crate::Result<_>>()?,
        None => Vec::new(),
    };
    Ok(match format {
        Format::Json => json_doc(&json!({
            "n": params.n(),
            "k": params.k(),
            "q": params.q(),
            "total": BigUint::from(2u32).pow(bits_per_symbol(params)? * params.k() as u32).to_string(),
            "rows": rows,
            "partition": sizes,
            "user_output_weights": users.iter().map(|u| u.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut header = vec!["h_b".to_string(), "avg_weight".into(), "avg_weight_f64".into(), "binomial_approx".into()];
            header.extend((1..=users.len()).map(|j| format!("user{j}_output_weight")));
            let h: Vec<&str> = header.iter().map(String::as_str).collect();
            let body: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    let mut v = vec![r.h_b.to_string(), r.avg_weight.clone(), fmt_f64(r.avg_weight_f64), r.binomial_approx.clone()];
                    v.extend(users.iter().map(|u| u[r.h_b].to_string()));
                    v
                })
                .collect();
            csv_table(&h, &body)
        }
    })
}
