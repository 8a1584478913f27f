// SPDX-License-Identifier: MIT OR Apache-2.0

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use ascheme::construct::{
    doubling, edc_of_doubling_blockform, extended_double_cover, paley_graph, paley_tournament,
    reverse, skew_hadamard_from_tournament, taylor_extension, theorem44_permutation,
};
use ascheme::exec::{map_slice, Parallelism};
use ascheme::sio::{
    parse_scheme, serialize_eigenreport, serialize_hadamard, serialize_scheme,
    serialize_verify_report, VerifyReport,
};
use ascheme::spectra::{eigen_from_intersection, idempotents_from_p};
use ascheme::{Error, Scheme};

#[derive(Parser)]
#[command(name = "ascheme", version, about = "Exact association scheme constructions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Output {
    /// Output path (default: stdout)
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a base scheme
    Build {
        #[command(subcommand)]
        family: BuildFamily,
        #[command(flatten)]
        out: Output,
    },
    /// Extended double cover of a class-2 non-symmetric scheme
    Edc {
        /// Scheme file ("-" for stdin)
        input: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Doubling of a class-2 non-symmetric scheme
    Double {
        input: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Taylor-type extension of a symmetric class-2 scheme
    Taylor {
        input: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Swap every relation with its transpose
    Reverse {
        input: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Certify a scheme and print its intersection numbers
    Verify {
        input: PathBuf,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Exact eigenmatrices of a commutative scheme of class at most 3
    Eigen {
        input: PathBuf,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Bordered skew-Hadamard matrix of a tournament scheme
    Hadamard {
        input: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Compare the block form with the permuted cover of the doubling
    CheckTheorem {
        /// Tournament orders, comma separated
        #[arg(long, required = true, value_delimiter = ',')]
        m: Vec<usize>,
    },
}

#[derive(Subcommand)]
enum BuildFamily {
    /// Quadratic-residue tournament on a prime m = 3 (mod 4)
    PaleyTournament {
        #[arg(long)]
        m: usize,
    },
    /// Paley graph on a prime q = 1 (mod 4)
    PaleyGraph {
        #[arg(long)]
        q: usize,
    },
}

#[derive(Debug)]
enum Failure {
    Io(String),
    Scheme(Error),
    Theorem,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Scheme(e)
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Io(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
    }
}

fn load_scheme(path: &Path) -> Result<Scheme, Failure> {
    let text = read_input(path)?;
    let scheme = Scheme::from_relation_matrix(parse_scheme(&text)?)?;
    scheme.certify()?;
    Ok(scheme)
}

fn emit(out: &Output, text: &str) -> Result<(), Failure> {
    match &out.output {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display()))),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Io(format!("stdout: {e}"))),
    }
}

/// Certifies, serializes, and checks that the text parses back to the same scheme.
fn emit_scheme(out: &Output, s: &Scheme) -> Result<(), Failure> {
    s.certify()?;
    let text = serialize_scheme(s);
    let back = Scheme::from_relation_matrix(parse_scheme(&text)?)?;
    if back.relation() != s.relation() {
        return Err(Failure::Io("serialized scheme does not round-trip".into()));
    }
    emit(out, &text)
}

fn theorem_case(m: usize) -> Result<(), Error> {
    let s = paley_tournament(m)?;
    let block = edc_of_doubling_blockform(&s)?;
    let direct = extended_double_cover(&doubling(&s)?)?.permute_points(&theorem44_permutation(m)?)?;
    if block.relation() != direct.relation() {
        return Err(Error::IdentityFailed(format!(
            "block form and permuted cover differ for m = {m}"
        )));
    }
    if block.certify()? != direct.certify()? {
        return Err(Error::IdentityFailed(format!("intersection tensors differ for m = {m}")));
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Build { family, out } => {
            let s = match family {
                BuildFamily::PaleyTournament { m } => paley_tournament(m)?,
                BuildFamily::PaleyGraph { q } => paley_graph(q)?,
            };
            emit_scheme(&out, &s)
        }
        Command::Edc { input, out } => emit_scheme(&out, &extended_double_cover(&load_scheme(&input)?)?),
        Command::Double { input, out } => emit_scheme(&out, &doubling(&load_scheme(&input)?)?),
        Command::Taylor { input, out } => emit_scheme(&out, &taylor_extension(&load_scheme(&input)?)?),
        Command::Reverse { input, out } => emit_scheme(&out, &reverse(&load_scheme(&input)?)),
        Command::Verify { input, json, out } => {
            let s = load_scheme(&input)?;
            let report = VerifyReport::new(&s, &s.certify()?);
            let text = if json {
                serialize_verify_report(&report)
            } else {
                report.to_text()
            };
            emit(&out, &text)
        }
        Command::Eigen { input, json, out } => {
            let s = load_scheme(&input)?;
            let t = s.certify_commutative()?;
            let valencies: Vec<u64> = s.valencies().iter().map(|&k| k as u64).collect();
            let e = eigen_from_intersection(&t.intersection_matrices(), &valencies, s.n())?;
            idempotents_from_p(&s, &e)?;
            let text = if json {
                serialize_eigenreport(&e)
            } else {
                e.to_string()
            };
            emit(&out, &text)
        }
        Command::Hadamard { input, out } => {
            let h = skew_hadamard_from_tournament(&load_scheme(&input)?)?;
            emit(&out, &serialize_hadamard(&h))
        }
        Command::CheckTheorem { m } => {
            let results = map_slice(&m, Parallelism::default(), |&m| theorem_case(m));
            let mut ok = true;
            for (m, r) in m.iter().zip(results) {
                match r {
                    Ok(()) => println!("m = {m}: PASS"),
                    Err(e) => {
                        ok = false;
                        println!("m = {m}: FAIL ({e})");
                    }
                }
            }
            if ok {
                Ok(())
            } else {
                Err(Failure::Theorem)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Theorem) => ExitCode::from(1),
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Scheme(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
