//! Run configuration: command-line flags over `key=value` config file over
//! defaults.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ideal_duality::density::{Checkpoints, SeriesWeight};
use ideal_duality::{ClassLabel, ExtensionContext, ExtensionSpec, FieldSpec, NORM_CAP};

const SPEC_HELP: &str = "\
Field specs:      q | quad:<d>        (d squarefree, d != 0, 1), e.g. quad:-1, quad:5
Extension specs:  trivial | cyclo:<n> | relquad:<m>
                  cyclo:n is Q(zeta_n) over Q (field q only); classes are
                  residues mod n coprime to n. relquad:m is K(sqrt m) over K;
                  classes are 1 (split) and -1 (inert).
Selector specs:   class | all | residue:<r>:<m> | normmod:<r>:<m> | set:<ideal>,...
                  class uses --ext and --class; ideal literals look like p5.1
                  or p2.0^1*p5.1^2 (prime over p, index i, exponent).
                  mobius-sums also takes none: the full ideal range with
                  weight mobius (sum of mu/N) or mobius-count (sum of mu).
Weights:          mobius (mu/N), momega1 (mu(omega-1)/N), momega (mu*omega/N),
                  mobius-count (mu), momega-count (mu*omega)
Checkpoints:      geometric | geometric:<start>:<per decade> | <x1>,<x2>,...
Config file:      key=value per line, '#' starts a comment; keys are the long
                  flag names (field, ext, class, selector, weight, xmax, kmax,
                  k, beta, y, checkpoints, output, format, threads, seed).
                  Flags override the file, the file overrides defaults.
Exit codes:       0 success, 1 duality violations found, 2 usage error.";

#[derive(Debug, Parser)]
#[command(name = "idealdual", version, about = "Higher-order Möbius duality sweeps and Chebotarev density reports", after_help = SPEC_HELP)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Check the k-th order duality identity for every ideal 2 <= N(I) <= xmax.
    VerifyDuality,
    /// Check the four classical integer identities for n <= xmax with seeded f.
    Classical,
    /// Partial sums of a Möbius weight over ideals whose smallest prime is selected.
    Density,
    /// Cumulative sums of Q^k (k = 1 or 2) against the predicted slope.
    Qsum,
    /// Prime, class and ideal counts with li, Hardy-Ramanujan and Mertens columns.
    Counts,
    /// Smooth ideal counts against X rho(beta), or one count with --y.
    Smooth,
    /// Dickman rho at each --beta.
    Dickman,
    /// Sums of mu and mu*omega over the selected salient ideals, or over all
    /// ideals with --selector none.
    MobiusSums,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::VerifyDuality => "verify-duality",
            Command::Classical => "classical",
            Command::Density => "density",
            Command::Qsum => "qsum",
            Command::Counts => "counts",
            Command::Smooth => "smooth",
            Command::Dickman => "dickman",
            Command::MobiusSums => "mobius-sums",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Default, Args)]
pub struct Flags {
    /// Base field spec.
    #[arg(long, global = true)]
    pub field: Option<String>,
    /// Abelian extension spec.
    #[arg(long, global = true)]
    pub ext: Option<String>,
    /// Conjugacy class label; verify-duality sweeps every class when absent.
    #[arg(long, global = true)]
    pub class: Option<String>,
    /// Prime-ideal selector spec [default: class].
    #[arg(long, global = true)]
    pub selector: Option<String>,
    /// Series weight for density [default: mobius].
    #[arg(long, global = true)]
    pub weight: Option<String>,
    /// Norm bound X (integer or 1e6 style) [default: 100000].
    #[arg(long, global = true)]
    pub xmax: Option<String>,
    /// Largest duality order k [default: 3; classical 4].
    #[arg(long, global = true)]
    pub kmax: Option<String>,
    /// Order of the Q^k sum [default: 2].
    #[arg(long, global = true)]
    pub k: Option<String>,
    /// Comma-separated beta values [default: 1.5,2,2.5,3 for smooth].
    #[arg(long, global = true)]
    pub beta: Option<String>,
    /// Smoothness bound Y for a single smooth count.
    #[arg(long, global = true)]
    pub y: Option<String>,
    /// Checkpoint spec [default: geometric].
    #[arg(long, global = true)]
    pub checkpoints: Option<String>,
    /// Output file; stdout when absent or '-'.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Output format [default: json for verify-duality and classical, csv otherwise].
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Worker threads [default: available parallelism].
    #[arg(long, global = true)]
    pub threads: Option<String>,
    /// Seed for the classical f tables [default: 1].
    #[arg(long, global = true)]
    pub seed: Option<String>,
    /// key=value config file.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub ctx: ExtensionContext,
    pub class: Option<ClassLabel>,
    pub selector: String,
    pub weight: SeriesWeight,
    pub xmax: u64,
    pub kmax: usize,
    pub k: usize,
    pub beta: Vec<f64>,
    pub y: Option<u64>,
    pub checkpoints: Checkpoints,
    pub output: Option<PathBuf>,
    pub format: Format,
    pub threads: usize,
    pub seed: u64,
}

/// Selector value for `mobius-sums` over every ideal, unit included.
pub const FULL_RANGE: &str = "none";

const KEYS: [&str; 15] = [
    "field",
    "ext",
    "class",
    "selector",
    "weight",
    "xmax",
    "kmax",
    "k",
    "beta",
    "y",
    "checkpoints",
    "output",
    "format",
    "threads",
    "seed",
];

/// Parses `key=value` lines; blank lines and `#` comments are ignored.
pub fn parse_config_text(text: &str) -> Result<BTreeMap<String, String>, String> {
    let mut out = BTreeMap::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("config line {}: expected key=value", n + 1))?;
        let key = key.trim();
        if !KEYS.contains(&key) {
            return Err(format!("config line {}: unknown key {key:?}", n + 1));
        }
        out.insert(key.to_string(), value.trim().to_string());
    }
    Ok(out)
}

/// Integer from `1000000`, `1_000_000` or `1e6`.
pub fn parse_count(name: &str, s: &str) -> Result<u64, String> {
    let t = s.trim().replace('_', "");
    if let Ok(v) = t.parse::<u64>() {
        return Ok(v);
    }
    if let Some((m, e)) = t.split_once(['e', 'E']) {
        if let (Ok(m), Ok(e)) = (m.parse::<u64>(), e.parse::<u32>()) {
            if let Some(v) = 10u64.checked_pow(e).and_then(|p| p.checked_mul(m)) {
                return Ok(v);
            }
        }
    }
    Err(format!("--{name}: expected a non-negative integer, got {s:?}"))
}

impl RunConfig {
    pub fn resolve(command: Command, flags: &Flags, file: &BTreeMap<String, String>) -> Result<Self, String> {
        let get = |key: &str, flag: &Option<String>| flag.clone().or_else(|| file.get(key).cloned());
        let lib = |e: ideal_duality::Error| e.to_string();

        let field: FieldSpec = get("field", &flags.field)
            .unwrap_or_else(|| "q".into())
            .parse()
            .map_err(lib)?;
        let ext: ExtensionSpec = get("ext", &flags.ext)
            .unwrap_or_else(|| "trivial".into())
            .parse()
            .map_err(lib)?;
        let ctx = ExtensionContext::new(field, ext).map_err(lib)?;
        let class = match get("class", &flags.class) {
            Some(s) => {
                let label: ClassLabel = s.parse().map_err(lib)?;
                if !ctx.has_class(label) {
                    return Err(format!(
                        "--class {s} is not a class of {ext} (classes {:?})",
                        ctx.class_ids()
                    ));
                }
                Some(label)
            }
            None => None,
        };
        let selector = get("selector", &flags.selector).unwrap_or_else(|| "class".into());
        if selector == FULL_RANGE {
            if command != Command::MobiusSums {
                return Err("--selector none is only valid for mobius-sums".into());
            }
        } else {
            ideal_duality::PrimeIdealSelector::from_spec(&selector, ctx, class).map_err(lib)?;
        }
        let weight = get("weight", &flags.weight)
            .unwrap_or_else(|| "mobius".into())
            .parse()
            .map_err(lib)?;

        let count = |key: &str, flag: &Option<String>, default: u64| -> Result<u64, String> {
            get(key, flag).map_or(Ok(default), |s| parse_count(key, &s))
        };
        let xmax = count("xmax", &flags.xmax, 100_000)?;
        if xmax > NORM_CAP {
            return Err(format!("--xmax {xmax} exceeds 2^40"));
        }
        let default_kmax = if command == Command::Classical { 4 } else { 3 };
        let kmax = count("kmax", &flags.kmax, default_kmax)? as usize;
        if kmax == 0 {
            return Err("--kmax must be at least 1".into());
        }
        let k = count("k", &flags.k, 2)? as usize;
        let default_beta = if command == Command::Smooth { "1.5,2,2.5,3" } else { "2" };
        let beta = get("beta", &flags.beta)
            .unwrap_or_else(|| default_beta.into())
            .split(',')
            .map(|t| t.trim().parse::<f64>().map_err(|_| format!("--beta: bad value {t:?}")))
            .collect::<Result<Vec<_>, _>>()?;
        let y = get("y", &flags.y).map(|s| parse_count("y", &s)).transpose()?;
        let checkpoints = get("checkpoints", &flags.checkpoints)
            .map_or(Ok(Checkpoints::default()), |s| s.parse())
            .map_err(lib)?;
        let output = flags.output.clone().or_else(|| file.get("output").map(PathBuf::from));
        let output = output.filter(|p| p.as_os_str() != "-");
        let format = match (flags.format, file.get("format")) {
            (Some(f), _) => f,
            (None, Some(s)) => {
                Format::from_str(s, true).map_err(|_| format!("format: expected csv or json, got {s:?}"))?
            }
            (None, None) if matches!(command, Command::VerifyDuality | Command::Classical) => Format::Json,
            (None, None) => Format::Csv,
        };
        let default_threads = std::thread::available_parallelism().map_or(1, |n| n.get() as u64);
        let threads = count("threads", &flags.threads, default_threads)? as usize;
        if threads == 0 {
            return Err("--threads must be at least 1".into());
        }
        let seed = count("seed", &flags.seed, 1)?;
        Ok(RunConfig {
            command,
            ctx,
            class,
            selector,
            weight,
            xmax,
            kmax,
            k,
            beta,
            y,
            checkpoints,
            output,
            format,
            threads,
            seed,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Result<RunConfig, String> {
        let cli =
            Cli::try_parse_from(std::iter::once("idealdual").chain(args.iter().copied())).map_err(|e| e.to_string())?;
        RunConfig::resolve(cli.command, &cli.flags, &BTreeMap::new())
    }

    #[test]
    fn spec_examples_parse() {
        let c = parse(&[
            "verify-duality",
            "--field",
            "quad:-1",
            "--ext",
            "trivial",
            "--kmax",
            "3",
            "--xmax",
            "3000",
        ])
        .unwrap();
        assert_eq!(
            (c.command, c.kmax, c.xmax, c.format),
            (Command::VerifyDuality, 3, 3000, Format::Json)
        );
        let c = parse(&[
            "density", "--field", "q", "--ext", "cyclo:4", "--class", "3", "--weight", "momega1", "--xmax", "1000000",
        ])
        .unwrap();
        assert_eq!(c.class, Some(ClassLabel(3)));
        assert_eq!(c.weight, SeriesWeight::MobiusOmegaMinus1OverNorm);
        assert_eq!(c.format, Format::Csv);
    }

    #[test]
    fn malformed_specs_are_rejected() {
        assert!(parse(&["counts", "--field", "quad:4"]).is_err());
        assert!(parse(&["counts", "--ext", "cyclo:4", "--field", "quad:-1"]).is_err());
        assert!(parse(&["density", "--ext", "cyclo:4", "--class", "2"]).is_err());
        assert!(parse(&["density", "--selector", "bogus"]).is_err());
        assert!(parse(&["counts", "--threads", "0"]).is_err());
        assert!(parse(&["counts", "--xmax", "2000000000000"]).is_err());
        assert!(parse(&["counts", "--frobnicate"]).is_err());
    }

    #[test]
    fn counts_accept_scientific_notation() {
        assert_eq!(parse_count("xmax", "1e6"), Ok(1_000_000));
        assert_eq!(parse_count("xmax", "3_000"), Ok(3000));
        assert!(parse_count("xmax", "1.5e3").is_err());
        assert!(parse_count("xmax", "-4").is_err());
    }

    #[test]
    fn config_text_and_precedence() {
        let file = parse_config_text("# sweep\nfield = quad:5\nxmax=2000 # small\n\nkmax=2\n").unwrap();
        let cli = Cli::try_parse_from(["idealdual", "verify-duality", "--kmax", "1"]).unwrap();
        let c = RunConfig::resolve(cli.command, &cli.flags, &file).unwrap();
        assert_eq!(c.ctx.field(), FieldSpec::quadratic(5).unwrap());
        assert_eq!(c.xmax, 2000);
        assert_eq!(c.kmax, 1);
        assert!(parse_config_text("colour=blue").is_err());
        assert!(parse_config_text("field").is_err());
    }

    #[test]
    fn flags_may_precede_the_subcommand() {
        let c = parse(&["--field", "quad:-5", "counts"]).unwrap();
        assert_eq!(c.ctx.field(), FieldSpec::quadratic(-5).unwrap());
    }
}
