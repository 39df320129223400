//! `reebzeta`: batch front end for the zeta computations.
//!
//! Every subcommand reads its inputs from files or flags, prints a
//! deterministic report on stdout and exits with
//!
//! * 0 on success (including a `compare` that finds a difference),
//! * 1 on a parse or validation error, reported with its location,
//! * 2 when a mathematical precondition fails (a level on the spectrum, a non-unit, ...),
//! * 3 when `zeta-orbits --form both` finds the exp and product forms disagreeing.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use zeta_core::domains::{
    distinguish_from_toric, s1_invariant_zeta, toric_zeta, ToricDomain, Verdict,
};
use zeta_core::io;
use zeta_core::orbits::{zeta_ech_form, zeta_exp_form, zeta_product_form};
use zeta_core::persistence::{barcode_decompose, validate_complex, zeta_persistence};
use zeta_core::rational::{format_rational, parse_rational};
use zeta_core::sweep::Comparison;
use zeta_core::theta::theta;
use zeta_core::{Action, Error, ErrorKind, NovikovSeries};

#[derive(Parser, Debug)]
#[command(
    name = "reebzeta",
    version,
    about = "Exact dynamical zeta functions from orbit, persistence and toric data"
)]
struct Cli {
    /// Print series and barcodes as JSON instead of tab-separated lines.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Zeta function of a set of simple Reeb orbits.
    ZetaOrbits {
        file: PathBuf,
        #[arg(long)]
        cutoff: String,
        #[arg(long, value_enum, default_value_t = Form::Product)]
        form: Form,
    },
    /// Zeta function 1/((1 - t^a)(1 - t^b)) of a star-shaped toric domain.
    ZetaToric {
        /// Toric domain file `{"a": ..., "b": ...}`, instead of `--a` and `--b`.
        #[arg(conflicts_with_all = ["a", "b"], required_unless_present_all = ["a", "b"])]
        file: Option<PathBuf>,
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        b: Option<String>,
        #[arg(long)]
        cutoff: String,
    },
    /// Zeta function of an S¹-invariant domain from Morse data on the sphere.
    ZetaS1 {
        file: PathBuf,
        #[arg(long)]
        cutoff: String,
    },
    /// Barcode of a filtered chain complex.
    Barcode { file: PathBuf },
    /// Zeta function of the persistence module of a filtered chain complex.
    ZetaPersistence {
        file: PathBuf,
        #[arg(long)]
        cutoff: String,
    },
    /// Theta transform of an integer series supported on positive exponents.
    Theta {
        file: PathBuf,
        #[arg(long)]
        cutoff: String,
    },
    /// Compare two series below a common cutoff.
    Compare {
        first: PathBuf,
        second: PathBuf,
        #[arg(long)]
        cutoff: String,
    },
    /// Look for a negative coefficient ruling out a toric domain.
    Distinguish {
        file: PathBuf,
        #[arg(long)]
        cutoff: String,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Form {
    Exp,
    Product,
    Ech,
    /// Exp and product forms, failing unless they agree.
    Both,
}

/// Why a command stopped, with the exit code it maps to.
#[derive(Debug)]
enum Failure {
    Input(String),
    Math(Error),
    Inconsistent(String),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Input(_) => 1,
            Failure::Math(e) => match e.kind() {
                ErrorKind::Validation => 1,
                ErrorKind::Precondition => 2,
            },
            Failure::Inconsistent(_) => 3,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Input(m) | Failure::Inconsistent(m) => m.clone(),
            Failure::Math(e) => e.to_string(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Math(e)
    }
}

type Outcome = std::result::Result<String, Failure>;

fn read(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))
}

/// Errors from a file keep their location and gain the file name.
fn in_file<T>(path: &Path, r: zeta_core::Result<T>) -> std::result::Result<T, Failure> {
    r.map_err(|e| match e {
        Error::Parse { location, message } => Error::Parse {
            location: format!("{}: {location}", path.display()),
            message,
        }
        .into(),
        other => other.into(),
    })
}

fn positive_flag(flag: &str, text: &str) -> std::result::Result<Action, Failure> {
    let value = parse_rational(text).map_err(|e| Failure::Input(format!("--{flag}: {e}")))?;
    let action = Action::new(value);
    if action.is_positive() {
        Ok(action)
    } else {
        Err(Failure::Input(format!(
            "--{flag} must be positive, got {action}"
        )))
    }
}

fn render(s: &NovikovSeries, json: bool) -> String {
    if json {
        io::series_to_json(s)
    } else {
        io::series_to_report(s)
    }
}

fn read_series(path: &Path, cutoff: &Action) -> std::result::Result<NovikovSeries, Failure> {
    let s = in_file(path, io::read_series(&read(path)?))?;
    Ok(s.truncate(cutoff))
}

fn zeta_orbits(file: &Path, cutoff: &Action, form: Form, json: bool) -> Outcome {
    let set = in_file(file, io::orbit_set_from_json(&read(file)?))?;
    let zeta = match form {
        Form::Exp => zeta_exp_form(&set, cutoff)?,
        Form::Product => zeta_product_form(&set, cutoff)?,
        Form::Ech => zeta_ech_form(&set, cutoff)?,
        Form::Both => {
            let cmp = Comparison {
                left: zeta_exp_form(&set, cutoff)?,
                right: zeta_product_form(&set, cutoff)?,
            };
            if let Some(at) = cmp.first_difference() {
                return Err(Failure::Inconsistent(format!(
                    "exp form and product form differ at t^{at}: {} vs {}",
                    format_rational(&cmp.left.coeff(&at)),
                    format_rational(&cmp.right.coeff(&at)),
                )));
            }
            cmp.right
        }
    };
    Ok(render(&zeta, json))
}

fn compare(first: &Path, second: &Path, cutoff: &Action, json: bool) -> Outcome {
    let left = read_series(first, cutoff)?;
    let right = read_series(second, cutoff)?;
    let common = left.cutoff().min(right.cutoff()).clone();
    let cmp = Comparison {
        left: left.truncate(&common),
        right: right.truncate(&common),
    };
    let below = format!("below {common}");
    Ok(match (cmp.first_difference(), json) {
        (None, false) => format!("EQUAL\t{below}\n"),
        (None, true) => format!("{{\"verdict\": \"EQUAL\", \"cutoff\": \"{common}\"}}\n"),
        (Some(at), json) => {
            let (l, r) = (
                format_rational(&cmp.left.coeff(&at)),
                format_rational(&cmp.right.coeff(&at)),
            );
            if json {
                format!(
                    "{{\"verdict\": \"DIFFER\", \"cutoff\": \"{common}\", \"exponent\": \"{at}\", \"first\": \"{l}\", \"second\": \"{r}\"}}\n"
                )
            } else {
                format!("DIFFER\t{below}\nexponent\t{at}\nfirst\t{l}\nsecond\t{r}\n")
            }
        }
    })
}

fn distinguish(file: &Path, cutoff: &Action, json: bool) -> Outcome {
    let z = read_series(file, cutoff)?;
    Ok(match (distinguish_from_toric(&z), json) {
        (Verdict::Inconclusive, false) => format!("Inconclusive\tno negative coefficient below {}\n", z.cutoff()),
        (Verdict::Inconclusive, true) => format!("{{\"verdict\": \"Inconclusive\", \"cutoff\": \"{}\"}}\n", z.cutoff()),
        (Verdict::NotToricInterior { witness, coefficient }, false) => format!(
            "NotToricInterior\nwitness\t{witness}\ncoefficient\t{}\n",
            format_rational(&coefficient)
        ),
        (Verdict::NotToricInterior { witness, coefficient }, true) => format!(
            "{{\"verdict\": \"NotToricInterior\", \"witness\": \"{witness}\", \"coefficient\": \"{}\"}}\n",
            format_rational(&coefficient)
        ),
    })
}

fn run(cli: Cli) -> Outcome {
    let json = cli.json;
    match cli.command {
        Command::ZetaOrbits { file, cutoff, form } => {
            zeta_orbits(&file, &positive_flag("cutoff", &cutoff)?, form, json)
        }
        Command::ZetaToric { file, a, b, cutoff } => {
            let cutoff = positive_flag("cutoff", &cutoff)?;
            let domain = match (file, a, b) {
                (Some(file), _, _) => in_file(&file, io::toric_from_json(&read(&file)?))?,
                (None, Some(a), Some(b)) => {
                    ToricDomain::new(positive_flag("a", &a)?, positive_flag("b", &b)?)?
                }
                _ => {
                    return Err(Failure::Input(
                        "give a toric file or both --a and --b".into(),
                    ))
                }
            };
            Ok(render(&toric_zeta(&domain, &cutoff)?, json))
        }
        Command::ZetaS1 { file, cutoff } => {
            let cutoff = positive_flag("cutoff", &cutoff)?;
            let morse = in_file(&file, io::morse_from_json(&read(&file)?))?;
            Ok(render(&s1_invariant_zeta(&morse, &cutoff)?, json))
        }
        Command::Barcode { file } => {
            let complex = in_file(&file, io::complex_from_json(&read(&file)?))?;
            validate_complex(&complex)?;
            let barcode = barcode_decompose(&complex)?;
            Ok(if json {
                io::barcode_to_json(&barcode)
            } else {
                io::barcode_to_report(&barcode)
            })
        }
        Command::ZetaPersistence { file, cutoff } => {
            let cutoff = positive_flag("cutoff", &cutoff)?;
            let complex = in_file(&file, io::complex_from_json(&read(&file)?))?;
            Ok(render(&zeta_persistence(&complex, &cutoff)?, json))
        }
        Command::Theta { file, cutoff } => {
            let cutoff = positive_flag("cutoff", &cutoff)?;
            let a = read_series(&file, &cutoff)?;
            Ok(render(&theta(&a, &cutoff)?, json))
        }
        Command::Compare {
            first,
            second,
            cutoff,
        } => compare(&first, &second, &positive_flag("cutoff", &cutoff)?, json),
        Command::Distinguish { file, cutoff } => {
            distinguish(&file, &positive_flag("cutoff", &cutoff)?, json)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // Usage errors are input errors; help and version are not errors.
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(report) => {
            print!("{report}");
            ExitCode::SUCCESS
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.exit_code())
        }
    }
}
