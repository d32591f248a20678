//! `fbct`: exhaustive DDT/FBCT spectra, vanishing flats and closed-form checks
//! over finite fields.
//!
//! Exit status: 0 on success, 1 when a verification finds a mismatch, 2 on
//! usage errors or unmet hypotheses.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use fbct_core::closed_forms::{desk_suite, kloosterman, list_theorems, KloostermanMethod};
use fbct_core::flats::{is_kth_sum_free, vanishing_flats};
use fbct_core::function::ExprVars;
use fbct_core::spectra::{classify, ddt_spectrum, fbct_spectrum, SpectrumReport};
use fbct_core::{make_field, parse_function, verify, Error, Field, FunctionUnderTest, Params, TheoremId};
use serde::Serialize;
use serde_json::json;

#[derive(Parser, Debug)]
#[command(name = "fbct", version, about = "Finite-field DDT/FBCT spectra and closed-form verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
enum Command {
    /// Field parameters; with --x, facts about one element.
    Field,
    /// F(x).
    Eval,
    /// Difference distribution table spectrum.
    Ddt,
    /// FBCT (second-order zero differential) spectrum.
    Fbct,
    /// DDT and FBCT spectra plus PN/APN classification.
    Spectrum,
    /// Vanishing 2-flats (p = 2).
    Flats,
    /// k-th order sum-freedom (p = 2).
    Sumfree,
    /// Binary Kloosterman sum K(1).
    Kloosterman,
    /// Check a closed form against exhaustive computation.
    Verify,
    /// Supported theorem ids with their hypotheses.
    ListTheorems,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Direct,
    Carlitz,
    Both,
}

#[derive(clap::Args, Debug)]
struct Opts {
    /// Characteristic.
    #[arg(long, global = true)]
    p: Option<u64>,
    /// Extension degree.
    #[arg(long, global = true)]
    n: Option<u32>,
    /// Monic modulus, little-endian coefficients, e.g. 1,1,0,0,1.
    #[arg(long = "mod", global = true)]
    modulus: Option<String>,
    /// Function text: monomial:d=<expr>, inv-plus-trace,
    /// gamma-trace-inverse:t=<int>,gamma=<coeffs>, table:@<path>.
    #[arg(long = "fn", global = true)]
    function: Option<String>,
    /// Theorem id (see list-theorems) or `all`.
    #[arg(long, global = true)]
    theorem: Option<String>,
    #[arg(long, global = true)]
    t: Option<u32>,
    #[arg(long, global = true)]
    k: Option<u32>,
    /// Element coefficients.
    #[arg(long, global = true)]
    gamma: Option<String>,
    /// Element coefficients for field/eval.
    #[arg(long, global = true)]
    x: Option<String>,
    #[arg(long, value_enum, global = true, default_value = "json")]
    format: Format,
    /// Output file (standard output if absent).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    workers: Option<u32>,
    /// Keep the full table (needed for CSV output of spectra).
    #[arg(long, global = true)]
    keep_table: bool,
    /// Emit the vanishing flats themselves.
    #[arg(long, global = true)]
    list: bool,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, value_enum, global = true, default_value = "both")]
    method: Method,
}

enum Failure {
    Usage(String),
    Mismatch,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

impl Opts {
    fn require<T: Copy>(&self, v: Option<T>, flag: &str) -> Result<T, Failure> {
        v.ok_or_else(|| usage(format!("--{flag} is required")))
    }

    fn modulus(&self) -> Result<Option<Vec<u32>>, Failure> {
        Ok(match &self.modulus {
            Some(m) => Some(fbct_core::field::parse_coeffs(m)?),
            None => None,
        })
    }

    fn field(&self) -> Result<Field, Failure> {
        let p = self.require(self.p, "p")?;
        let n = self.require(self.n, "n")?;
        Ok(make_field(p, n, self.modulus()?.as_deref())?)
    }

    fn function(&self, field: &Field) -> Result<FunctionUnderTest, Failure> {
        let text = self.function.as_deref().ok_or_else(|| usage("--fn is required"))?;
        let vars = ExprVars {
            k: self.k.map(i128::from),
            t: self.t.map(i128::from),
            ..Default::default()
        };
        Ok(parse_function(field, text, &vars)?)
    }

    fn sink(&self) -> Result<Box<dyn Write>, Failure> {
        Ok(match &self.out {
            Some(path) => Box::new(BufWriter::new(
                File::create(path).map_err(|e| usage(format!("{}: {e}", path.display())))?,
            )),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        })
    }

    fn json_only(&self, command: &str) -> Outcome {
        if self.format == Format::Csv {
            return Err(usage(format!("{command} has no CSV form; use --format json")));
        }
        Ok(())
    }
}

fn emit_json<T: Serialize>(opts: &Opts, value: &T) -> Outcome {
    let mut out = opts.sink()?;
    serde_json::to_writer_pretty(&mut out, value).map_err(|e| usage(e.to_string()))?;
    writeln!(out)?;
    out.flush()?;
    Ok(())
}

fn emit_spectrum(opts: &Opts, field: &Field, report: &SpectrumReport) -> Outcome {
    match opts.format {
        Format::Json => emit_json(opts, report),
        Format::Csv => {
            let mut out = opts.sink()?;
            report.write_csv(field, &mut out)?;
            out.flush()?;
            Ok(())
        }
    }
}

fn run(command: Command, opts: &Opts) -> Outcome {
    match command {
        Command::Field => {
            opts.json_only("field")?;
            let field = opts.field()?;
            let g = field.generator();
            let mut info = json!({
                "field": field.spec(),
                "q": field.q(),
                "generator": field.format_element(g),
            });
            if let Some(x) = &opts.x {
                let x = field.parse_element(x)?;
                info["element"] = json!({
                    "value": field.format_element(x),
                    "index": x.index(),
                    "trace": field.trace(x),
                    "eta": field.eta(x).ok(),
                    "inverse": field.format_element(field.inv(x)),
                    "order": field.order(x),
                    "log": field.log(x),
                });
            }
            emit_json(opts, &info)
        }
        Command::Eval => {
            opts.json_only("eval")?;
            let field = opts.field()?;
            let f = opts.function(&field)?;
            let x = field.parse_element(opts.x.as_deref().ok_or_else(|| usage("--x is required"))?)?;
            emit_json(
                opts,
                &json!({
                    "function": f.describe(),
                    "x": field.format_element(x),
                    "value": field.format_element(f.eval(x)),
                }),
            )
        }
        Command::Ddt | Command::Fbct => {
            let field = opts.field()?;
            let f = opts.function(&field)?;
            let keep = opts.keep_table || opts.format == Format::Csv;
            let report = if command == Command::Ddt {
                ddt_spectrum(&f, keep)
            } else {
                fbct_spectrum(&f, keep)
            };
            emit_spectrum(opts, &field, &report)
        }
        Command::Spectrum => {
            opts.json_only("spectrum")?;
            let field = opts.field()?;
            let f = opts.function(&field)?;
            emit_json(
                opts,
                &json!({
                    "ddt": ddt_spectrum(&f, false),
                    "fbct": fbct_spectrum(&f, false),
                    "classification": classify(&f),
                }),
            )
        }
        Command::Flats => {
            let field = opts.field()?;
            let f = opts.function(&field)?;
            match opts.format {
                Format::Json => emit_json(opts, &vanishing_flats(&f, opts.list)?),
                Format::Csv => {
                    let report = vanishing_flats(&f, true)?;
                    let mut out = opts.sink()?;
                    report.write_listing(&field, &mut out)?;
                    out.flush()?;
                    Ok(())
                }
            }
        }
        Command::Sumfree => {
            opts.json_only("sumfree")?;
            let field = opts.field()?;
            let f = opts.function(&field)?;
            let k = opts.require(opts.k, "k")?;
            emit_json(opts, &is_kth_sum_free(&f, k)?)
        }
        Command::Kloosterman => {
            opts.json_only("kloosterman")?;
            let n = opts.require(opts.n, "n")?;
            let direct = matches!(opts.method, Method::Direct | Method::Both)
                .then(|| kloosterman(n, KloostermanMethod::Direct))
                .transpose()?;
            let carlitz = matches!(opts.method, Method::Carlitz | Method::Both)
                .then(|| kloosterman(n, KloostermanMethod::Carlitz))
                .transpose()?;
            emit_json(opts, &json!({ "n": n, "direct": direct, "carlitz": carlitz }))?;
            match (direct, carlitz) {
                (Some(d), Some(c)) if d != c => Err(Failure::Mismatch),
                _ => Ok(()),
            }
        }
        Command::Verify => {
            opts.json_only("verify")?;
            let theorem = opts.theorem.as_deref().ok_or_else(|| usage("--theorem is required"))?;
            if theorem.eq_ignore_ascii_case("all") {
                let verdicts = desk_suite()
                    .into_iter()
                    .map(|(id, params)| verify(id, &params))
                    .collect::<Result<Vec<_>, _>>()?;
                emit_json(opts, &verdicts)?;
                return if verdicts.iter().all(|v| v.passed) { Ok(()) } else { Err(Failure::Mismatch) };
            }
            let id: TheoremId = theorem.parse()?;
            let params = Params {
                p: opts.require(opts.p, "p")?,
                n: opts.require(opts.n, "n")?,
                k: opts.k,
                t: opts.t,
                gamma: opts.gamma.clone(),
                seed: opts.seed,
                modulus: opts.modulus()?,
            };
            let verdict = verify(id, &params)?;
            emit_json(opts, &verdict)?;
            if verdict.passed {
                Ok(())
            } else {
                Err(Failure::Mismatch)
            }
        }
        Command::ListTheorems => {
            let rows = list_theorems();
            match opts.format {
                Format::Json => emit_json(
                    opts,
                    &rows
                        .iter()
                        .map(|(id, summary, location)| json!({ "theorem": id, "hypotheses": summary, "location": location }))
                        .collect::<Vec<_>>(),
                ),
                Format::Csv => {
                    let mut out = opts.sink()?;
                    for (id, summary, location) in rows {
                        writeln!(out, "{id}\t{summary}\t[{location}]")?;
                    }
                    out.flush()?;
                    Ok(())
                }
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(w) = cli.opts.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(w as usize).build_global() {
            eprintln!("fbct: cannot start {w} workers: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli.command, &cli.opts) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("fbct: {msg}");
            ExitCode::from(2)
        }
    }
}
