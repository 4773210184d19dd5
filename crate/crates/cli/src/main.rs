use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lrc::bounds::BoundReport;
use lrc::oracle::erasure_decode_global;
use lrc::report::{verify, VerifyOptions};
use lrc::textio::{format_grid, format_symbols, parse_received, parse_symbols};
use lrc::{generate, AnyCode, CodeSpecFile, Construction, GenRequest};

#[derive(Parser)]
#[command(name = "lrc", version, about = "Generate, encode, repair and verify locally recoverable codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a code spec for the given parameters.
    Gen(GenArgs),
    /// Encode a message file (k symbols).
    Encode {
        #[arg(long)]
        spec: PathBuf,
        /// Message file; stdin when omitted.
        input: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recover one erased symbol from its recovering set.
    Repair {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        position: usize,
        /// Partition (or product axis) to repair through, 1 or 2.
        #[arg(long, default_value_t = 1)]
        via: usize,
        /// Codeword file with `?` erasures; stdin when omitted.
        input: Option<PathBuf>,
    },
    /// Recover the message from a codeword with erasures.
    Decode {
        #[arg(long)]
        spec: PathBuf,
        input: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Measure distance, certify locality and local MDS blocks.
    Verify {
        #[arg(long)]
        spec: PathBuf,
        /// Largest message space enumerated exactly.
        #[arg(long, env = "LRC_EXHAUSTIVE_CAP", default_value_t = lrc::oracle::DEFAULT_DISTANCE_CAP)]
        exhaustive_cap: u128,
        /// Random messages tried beyond the cap.
        #[arg(long, default_value_t = 20_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print every applicable bound as JSON.
    Bounds {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        r: u64,
        #[arg(long)]
        rho: Option<u64>,
        #[arg(long)]
        t: Option<u64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Lrc,
    Rs,
    Arbitrary,
    Multi,
    Product,
    Crt,
    LocalMds,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 0)]
    r: usize,
    /// Field order; the smallest workable prime power ≥ n by default.
    #[arg(long)]
    q: Option<u64>,
    #[arg(long, value_enum)]
    construction: Option<Kind>,
    /// Second locality.
    #[arg(long)]
    s: Option<usize>,
    /// Shorthand for `--construction multi`.
    #[arg(long)]
    multi: bool,
    /// Square of the (n, k, r) code.
    #[arg(long)]
    product: bool,
    /// Local distance of a local-MDS code.
    #[arg(long)]
    rho: Option<usize>,
    /// CRT blocks as `size:dim,size:dim,...`.
    #[arg(long, value_parser = parse_crt)]
    crt: Option<CrtTable>,
    #[arg(long)]
    systematic: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone)]
struct CrtTable(Vec<(usize, usize)>);

fn parse_crt(text: &str) -> Result<CrtTable, String> {
    text.split(',')
        .map(|item| {
            let (size, dim) = item
                .split_once(':')
                .ok_or_else(|| format!("expected size:dim, got {item:?}"))?;
            let parse = |s: &str| s.trim().parse::<usize>().map_err(|e| format!("{s:?}: {e}"));
            Ok((parse(size)?, parse(dim)?))
        })
        .collect::<Result<_, _>>()
        .map(CrtTable)
}

enum Failure {
    Usage(String),
    Decode(String),
}

impl From<lrc::Error> for Failure {
    fn from(e: lrc::Error) -> Self {
        if e.is_decode_failure() {
            Failure::Decode(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn read_input(path: Option<&Path>) -> Result<String, Failure> {
    match path {
        Some(p) => fs::read_to_string(p).map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn write_output(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
        None => Ok(io::stdout().write_all(text.as_bytes())?),
    }
}

fn load(spec: &Path) -> Result<AnyCode, Failure> {
    let text = fs::read_to_string(spec).map_err(|e| Failure::Usage(format!("{}: {e}", spec.display())))?;
    Ok(CodeSpecFile::from_json(&text)?.load()?)
}

fn gen(args: GenArgs) -> Result<(), Failure> {
    let construction = match (args.construction, args.multi, args.product) {
        (Some(kind), false, false) => match kind {
            Kind::Lrc => Construction::Lrc,
            Kind::Rs => Construction::Rs,
            Kind::Arbitrary => Construction::Arbitrary,
            Kind::Multi => Construction::Multi,
            Kind::Product => Construction::Product,
            Kind::Crt => Construction::Crt,
            Kind::LocalMds => Construction::LocalMds,
        },
        (None, true, false) => Construction::Multi,
        (None, false, true) => Construction::Product,
        (None, false, false) => Construction::Auto,
        _ => return Err(Failure::Usage("choose one of --construction, --multi, --product".into())),
    };
    let req = GenRequest {
        n: args.n,
        k: args.k,
        r: args.r,
        q: args.q,
        construction,
        s: args.s,
        rho: args.rho,
        crt: args.crt.map(|t| t.0),
        systematic: args.systematic,
        seed: args.seed,
    };
    let code = generate(&req)?;
    write_output(args.out.as_deref(), &(code.to_spec().to_json() + "\n"))
}

fn render_codeword(code: &AnyCode, word: &[lrc::FieldElement]) -> String {
    match code {
        AnyCode::Product(p) => format_grid(word, p.shape().1),
        _ => format_symbols(word),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Gen(args) => gen(args),
        Command::Encode { spec, input, out } => {
            let code = load(&spec)?;
            let message = parse_symbols(code.field(), &read_input(input.as_deref())?)?;
            let word = code.encode(&message)?;
            write_output(out.as_deref(), &render_codeword(&code, &word))
        }
        Command::Repair {
            spec,
            position,
            via,
            input,
        } => {
            let code = load(&spec)?;
            let received = parse_received(code.field(), &read_input(input.as_deref())?)?;
            let value = code.repair(&received, position, via)?;
            write_output(None, &format!("{}\n", value.value()))
        }
        Command::Decode { spec, input, out } => {
            let code = load(&spec)?;
            let received = parse_received(code.field(), &read_input(input.as_deref())?)?;
            let message = erasure_decode_global(&code, &received)?;
            write_output(out.as_deref(), &format_symbols(&message))
        }
        Command::Verify {
            spec,
            exhaustive_cap,
            samples,
            seed,
        } => {
            let code = load(&spec)?;
            let opts = VerifyOptions {
                exhaustive_cap,
                samples,
                seed,
                ..VerifyOptions::default()
            };
            let report = verify(&code, &opts)?;
            if report.measured_d.is_none() {
                eprintln!(
                    "note: {}^{} messages exceed the exhaustive cap; distance is a sampled upper bound",
                    code.field().order(),
                    code.dimension()
                );
            }
            write_output(None, &(serde_json::to_string_pretty(&report).expect("report serializes") + "\n"))
        }
        Command::Bounds { n, k, r, rho, t } => {
            let report = BoundReport::new(n, k, r, rho, t)?;
            write_output(None, &(serde_json::to_string_pretty(&report).expect("report serializes") + "\n"))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Decode(msg)) => {
            eprintln!("decode failure: {msg}");
            ExitCode::from(3)
        }
    }
}
