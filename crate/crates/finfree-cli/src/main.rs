//! `finfree`: exact finite-free-probability computations from the shell.
//!
//! Subcommands: `enumerate` (partitions, non-crossing, annular, cyclic
//! intervals), `convolve` (finite-free ⊞/⊠ on polynomial JSON files),
//! `transform` (moments, cumulants, K, H, Markov-Krein, theta, rhat), and
//! `infinitesimal` (exact Richardson ladders for the built-in families).
//!
//! Every number is an exact rational rendered as `num/den`; `--approx`
//! appends decimal renderings. Exit codes: 0 success, 2 size limit,
//! 3 input-contract violation, 4 parse error.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use finfree::combinat::{
    enum_annular, enum_cyclic_intervals, for_each_noncrossing, for_each_partition, Perm,
};
use finfree::error::Error as FfError;
use finfree::families::by_name;
use finfree::freeprob::{InfLawJson, Law};
use finfree::infin::{extrapolate_family, fluctuations_from_inf_moments, LadderMode};
use finfree::poly::{finite_cumulants_from_coeffs, MonicPoly};
use finfree::scalar::{approx_decimal, format_q, parse_q, Q};
use finfree::series::{
    h_coeffs_combinatorial, h_transform_analytic, markov_krein_inverse, moments_from_cauchy,
    theta, CauchySeriesJson, ZSeriesJson,
};

#[derive(Parser)]
#[command(name = "finfree", version, about = "Exact finite free probability")]
struct Cli {
    /// Path to a key=value config file (order, ladder, format, cache_dir).
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Append decimal renderings next to the exact rationals.
    #[arg(long, global = true)]
    approx: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List combinatorial objects and report the count.
    Enumerate {
        #[command(subcommand)]
        kind: EnumerateKind,
    },
    /// Finite-free convolution of two polynomial JSON files.
    Convolve {
        #[arg(long, value_enum)]
        op: ConvOp,
        p: PathBuf,
        q: PathBuf,
        /// Output path (stdout when omitted).
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Moment/cumulant/series transforms of polynomials and laws.
    Transform {
        #[arg(value_enum)]
        name: TransformName,
        input: PathBuf,
        /// Truncation order (defaults to the configured order).
        #[arg(long)]
        order: Option<usize>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Exact fluctuation ladder for a built-in family.
    Infinitesimal {
        /// hermite | laguerre | laguerre-inverse | bernoulli | dirac:<a>:<a1,..>
        #[arg(long)]
        family: String,
        /// Highest moment (or cumulant) index.
        #[arg(long, default_value_t = 4)]
        moments: usize,
        /// Comma-separated strictly increasing degrees.
        #[arg(long, value_delimiter = ',')]
        ladder: Vec<u64>,
        #[arg(long, value_enum, default_value_t = Mode::Moments)]
        mode: Mode,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
}

#[derive(Subcommand)]
enum EnumerateKind {
    /// All set partitions of [n].
    Partitions { n: usize },
    /// Non-crossing partitions of [n].
    Nc { n: usize },
    /// Annular non-crossing permutations of a (t,s)-annulus.
    Annular { t: usize, s: usize },
    /// Cyclic-interval partitions of [n].
    Ci { n: usize },
}

#[derive(Copy, Clone, ValueEnum)]
enum ConvOp {
    Add,
    Mul,
}

#[derive(Copy, Clone, ValueEnum)]
enum TransformName {
    Moments,
    Cumulants,
    K,
    H,
    Mk,
    Theta,
    Rhat,
}

#[derive(Copy, Clone, ValueEnum, PartialEq)]
enum Mode {
    Moments,
    Cumulants,
}

#[derive(Copy, Clone, ValueEnum, PartialEq)]
enum Format {
    Json,
    Csv,
}

struct Config {
    order: usize,
    ladder: Vec<u64>,
    format: Format,
    cache_dir: Option<PathBuf>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            order: 8,
            ladder: vec![64, 128, 256, 512],
            format: Format::Json,
            cache_dir: None,
        }
    }
}

const CACHE_ENV: &str = "FINFREE_CACHE_DIR";

fn load_config(path: Option<&Path>) -> Result<Config, CliError> {
    let mut cfg = Config::default();
    if let Some(path) = path {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::parse(format!("cannot read config {path:?}: {e}")))?;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::parse(format!("config line {}: expected key=value", lineno + 1)))?;
            match key.trim() {
                "order" => {
                    cfg.order = value
                        .trim()
                        .parse()
                        .map_err(|_| CliError::parse("config: bad order".into()))?
                }
                "ladder" => {
                    cfg.ladder = value
                        .split(',')
                        .map(|v| v.trim().parse())
                        .collect::<Result<_, _>>()
                        .map_err(|_| CliError::parse("config: bad ladder".into()))?
                }
                "format" => {
                    cfg.format = match value.trim() {
                        "json" => Format::Json,
                        "csv" => Format::Csv,
                        other => {
                            return Err(CliError::parse(format!("config: unknown format {other}")))
                        }
                    }
                }
                "cache_dir" => cfg.cache_dir = Some(PathBuf::from(value.trim())),
                other => return Err(CliError::parse(format!("config: unknown key {other}"))),
            }
        }
    }
    if let Ok(dir) = std::env::var(CACHE_ENV) {
        if !dir.is_empty() {
            cfg.cache_dir = Some(PathBuf::from(dir));
        }
    }
    if cfg.order == 0 || cfg.order > 10 {
        return Err(CliError::contract("config: order must be 1..=10".into()));
    }
    if !cfg.ladder.windows(2).all(|w| w[0] < w[1]) {
        return Err(CliError::contract("config: ladder must be strictly increasing".into()));
    }
    Ok(cfg)
}

/// CLI failure with its process exit code.
struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn parse(message: String) -> Self {
        CliError { code: 4, message }
    }
    fn contract(message: String) -> Self {
        CliError { code: 3, message }
    }
}

impl From<FfError> for CliError {
    fn from(e: FfError) -> Self {
        let code = match e {
            FfError::SizeLimit(_) => 2,
            FfError::Parse(_) => 4,
            _ => 3,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let cfg = load_config(cli.config.as_deref())?;
    match cli.command {
        Command::Enumerate { kind } => enumerate(kind, &cfg),
        Command::Convolve { op, p, q, out } => convolve(op, &p, &q, out.as_deref()),
        Command::Transform {
            name,
            input,
            order,
            out,
        } => transform(name, &input, order.unwrap_or(cfg.order), out.as_deref(), cli.approx),
        Command::Infinitesimal {
            family,
            moments,
            ladder,
            mode,
            format,
        } => {
            let ladder = if ladder.is_empty() { cfg.ladder.clone() } else { ladder };
            infinitesimal(
                &family,
                moments,
                &ladder,
                mode,
                format.unwrap_or(cfg.format),
                cli.approx,
            )
        }
    }
}

fn enumerate(kind: EnumerateKind, cfg: &Config) -> Result<(), CliError> {
    let mut count = 0u64;
    match kind {
        EnumerateKind::Partitions { n } => {
            for_each_partition(n, |p| {
                println!("{p}");
                count += 1;
            })?;
        }
        EnumerateKind::Nc { n } => {
            for_each_noncrossing(n, |p| {
                println!("{p}");
                count += 1;
            })?;
        }
        EnumerateKind::Annular { t, s } => {
            let perms = annular_cached(t, s, cfg)?;
            for sigma in perms.iter() {
                println!("{sigma}");
                count += 1;
            }
        }
        EnumerateKind::Ci { n } => {
            for p in enum_cyclic_intervals(n)? {
                println!("{p}");
                count += 1;
            }
        }
    }
    println!("count: {count}");
    Ok(())
}

/// Annular enumeration with an optional on-disk cache of image vectors.
fn annular_cached(t: usize, s: usize, cfg: &Config) -> Result<Vec<Perm>, CliError> {
    let cache_file = cfg
        .cache_dir
        .as_ref()
        .map(|dir| dir.join(format!("annular_{t}_{s}.json")));
    if let Some(file) = &cache_file {
        if file.exists() {
            let text = std::fs::read_to_string(file)
                .map_err(|e| CliError::parse(format!("cannot read cache {file:?}: {e}")))?;
            let images: Vec<Vec<usize>> = serde_json::from_str(&text)
                .map_err(|e| CliError::parse(format!("bad cache {file:?}: {e}")))?;
            return images
                .into_iter()
                .map(|v| Perm::new(v).map_err(CliError::from))
                .collect();
        }
    }
    let perms: Vec<Perm> = enum_annular(t, s)?.iter().cloned().collect();
    if let Some(file) = &cache_file {
        if let Some(dir) = file.parent() {
            std::fs::create_dir_all(dir)
                .map_err(|e| CliError::parse(format!("cannot create cache dir: {e}")))?;
        }
        let images: Vec<Vec<usize>> = perms
            .iter()
            .map(|p| (1..=p.n()).map(|k| p.apply(k)).collect())
            .collect();
        std::fs::write(file, serde_json::to_string(&images).unwrap())
            .map_err(|e| CliError::parse(format!("cannot write cache: {e}")))?;
    }
    Ok(perms)
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::parse(format!("cannot read {path:?}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| CliError::parse(format!("{path:?}: {e}")))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::parse(format!("cannot write {path:?}: {e}"))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn convolve(op: ConvOp, p: &Path, q: &Path, out: Option<&Path>) -> Result<(), CliError> {
    let p: MonicPoly = read_json(p)?;
    let q: MonicPoly = read_json(q)?;
    let result = match op {
        ConvOp::Add => finfree::finconv::boxplus_d(&p, &q)?,
        ConvOp::Mul => finfree::finconv::boxtimes_d(&p, &q)?,
    };
    emit(out, &serde_json::to_string_pretty(&result).unwrap())
}

/// JSON shape for laws on the command line: order plus moments and/or
/// cumulants (missing side is derived).
#[derive(Serialize, Deserialize)]
struct LawJson {
    order: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    moments: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    cumulants: Option<Vec<String>>,
}

fn parse_law(raw: &LawJson) -> Result<Law, CliError> {
    let parse_seq = |v: &Vec<String>| -> Result<Vec<Q>, CliError> {
        if v.len() != raw.order {
            return Err(CliError::contract(format!(
                "law of order {} needs {} entries",
                raw.order, raw.order
            )));
        }
        v.iter().map(|s| parse_q(s).map_err(CliError::from)).collect()
    };
    match (&raw.moments, &raw.cumulants) {
        (Some(m), _) => Ok(Law::from_moments(parse_seq(m)?)?),
        (None, Some(r)) => Ok(Law::from_cumulants(parse_seq(r)?)?),
        (None, None) => Err(CliError::parse(
            "law JSON needs \"moments\" or \"cumulants\"".into(),
        )),
    }
}

fn seq_json(key: &str, order: usize, values: &[Q], approx: bool) -> String {
    let rendered: Vec<String> = values.iter().map(format_q).collect();
    let mut obj = serde_json::json!({ "order": order, key: rendered });
    if approx {
        let dec: Vec<String> = values.iter().map(|q| approx_decimal(q, 6)).collect();
        obj[format!("{key}_approx")] = serde_json::json!(dec);
    }
    serde_json::to_string_pretty(&obj).unwrap()
}

fn transform(
    name: TransformName,
    input: &Path,
    order: usize,
    out: Option<&Path>,
    approx: bool,
) -> Result<(), CliError> {
    let text = match name {
        TransformName::Moments => {
            let p: MonicPoly = read_json(input)?;
            let m = p.moments(order);
            seq_json("moments", order, &m.0, approx)
        }
        TransformName::Cumulants => {
            let p: MonicPoly = read_json(input)?;
            let order = order.min(p.degree());
            let k = finite_cumulants_from_coeffs(&p, order)?;
            seq_json("cumulants", order, &k.0, approx)
        }
        TransformName::K => {
            let law = parse_law(&read_json(input)?)?;
            let js = ZSeriesJson::from_series(&law.k_series(), law.order())?;
            serde_json::to_string_pretty(&js).unwrap()
        }
        TransformName::H => {
            let law = parse_law(&read_json(input)?)?;
            let analytic = h_transform_analytic(&law.cauchy())?;
            // the combinatorial route must agree; evaluate it as a self-check
            let comb = h_coeffs_combinatorial(law.cumulants(), law.order())?;
            for n in 1..=law.order() as i64 {
                if analytic.coeff(-n - 1)? != comb[n as usize - 1] {
                    return Err(CliError::contract(
                        "internal H-transform routes disagree".into(),
                    ));
                }
            }
            let js = CauchySeriesJson::from_series(&analytic, law.order())?;
            serde_json::to_string_pretty(&js).unwrap()
        }
        TransformName::Mk => {
            let law = parse_law(&read_json(input)?)?;
            let mk = markov_krein_inverse(&law.cauchy())?;
            let m = moments_from_cauchy(&mk, law.order())?;
            seq_json("moments", law.order(), &m, approx)
        }
        TransformName::Theta => {
            let law = parse_law(&read_json(input)?)?;
            let th = theta(&law.cauchy())?;
            // the division by G - 1/z consumes three orders of the window
            let js = CauchySeriesJson::from_series(&th, law.order().saturating_sub(3))?;
            serde_json::to_string_pretty(&js).unwrap()
        }
        TransformName::Rhat => {
            let raw: InfLawJson = read_json(input)?;
            let inf = raw.to_inf_law()?;
            let rhat = fluctuations_from_inf_moments(&inf.base, inf.mprime())?;
            seq_json("rhat", inf.order(), &rhat, approx)
        }
    };
    emit(out, &text)
}

fn infinitesimal(
    family: &str,
    moments: usize,
    ladder: &[u64],
    mode: Mode,
    format: Format,
    approx: bool,
) -> Result<(), CliError> {
    let fam = by_name(family)?;
    let mode = match mode {
        Mode::Moments => LadderMode::Moments,
        Mode::Cumulants => LadderMode::Cumulants,
    };
    let reports = extrapolate_family(&fam, moments, ladder, mode)?;
    match format {
        Format::Csv => {
            let mut text = String::from("n,d,delta_exact,richardson,predicted,abs_error");
            if approx {
                text.push_str(",delta_approx,richardson_approx,abs_error_approx");
            }
            text.push('\n');
            for rep in &reports {
                for (d, delta) in &rep.ladder {
                    write!(
                        text,
                        "{},{},{},{},{},{}",
                        rep.n, d, delta, rep.richardson, rep.predicted, rep.abs_error
                    )
                    .unwrap();
                    if approx {
                        let delta_q = parse_q(delta).expect("own rendering");
                        write!(
                            text,
                            ",{},{},{}",
                            approx_decimal(&delta_q, 6),
                            approx_decimal(&rep.richardson_value, 6),
                            approx_decimal(&rep.abs_error_value, 6)
                        )
                        .unwrap();
                    }
                    text.push('\n');
                }
            }
            print!("{text}");
        }
        Format::Json => {
            println!("{}", serde_json::to_string_pretty(&reports).unwrap());
        }
    }
    Ok(())
}
