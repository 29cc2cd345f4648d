//! Command-line front end wiring construction, verification, conversion,
//! and export into reproducible batch invocations.
//!
//! Every command re-verifies its own output before writing, emits a result
//! envelope `{status, payload, diagnostics}` as canonical JSON (stable key
//! order, 17-significant-digit floats), and exits with 0 on success, 2 on
//! an axiom violation, 3 on a usage or precondition error, and 4 on
//! numerical non-convergence.

use clap::{ArgGroup, Parser, Subcommand};
use eitff_core::json::{
    to_canonical_json, ConferenceJson, DracknJson, FrameJson, SignatureJson,
};
use eitff_core::{
    check_eitff, conference_to_drackn, et_taoui_to_signature, frame_from_signature,
    lift_deleted_permutation, lift_dihedral, mathon_drackn, signature_to_conference,
    CheckRecord, ConferenceMatrix, DracknAdjacency, DracknParams, EitffCertificate, EitffParams,
    Error, RepSelection, SignatureMatrix,
};
use serde::Serialize;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "eitff",
    version,
    about = "Builds and certifies covers of complete graphs, their fusion-frame lifts, and complex symmetric conference matrices"
)]
struct Cli {
    /// Tolerance for floating comparisons.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,

    /// Write the result envelope to a file instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the symplectic-form cover over GF(2^k) and verify it.
    MathonDrackn {
        /// Field extension degree, 1..=16.
        #[arg(long)]
        k: u32,
    },
    /// Verify a cover document against the adjacency axioms.
    VerifyDrackn {
        /// Cover JSON (path or "-" for stdin).
        input: PathBuf,
    },
    /// Lift a cover into a signature matrix.
    #[command(group(ArgGroup::new("source").required(true).args(["input", "k"])))]
    Lift {
        /// Cover JSON to lift.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Build the GF(2^k) cover instead of reading one.
        #[arg(long)]
        k: Option<u32>,
        /// Comma-separated constituent indices (e.g. "1,3"), or "all" for
        /// the lift through the complement of the all-ones vector.
        #[arg(long)]
        irreps: String,
    },
    /// Build an exact conference matrix, or verify a document.
    #[command(group(ArgGroup::new("mode").required(true).args(["k", "verify"])))]
    Conference {
        /// Field extension degree (requires --a).
        #[arg(long, requires = "a")]
        k: Option<u32>,
        /// Root-of-unity exponent multiplier.
        #[arg(long)]
        a: Option<i64>,
        /// Verify this conference document instead of building one.
        #[arg(long)]
        verify: Option<PathBuf>,
    },
    /// Verify a conference document against the conference axioms.
    VerifyConference {
        /// Conference JSON (path or "-" for stdin).
        input: PathBuf,
    },
    /// Convert between object kinds.
    #[command(group(ArgGroup::new("direction").required(true).args([
        "ettaoui_fwd",
        "ettaoui_inv",
        "conf2drackn"
    ])))]
    Convert {
        /// Conference matrix -> 2x2-block signature matrix.
        #[arg(long)]
        ettaoui_fwd: bool,
        /// 2x2-block signature matrix -> conference matrix.
        #[arg(long)]
        ettaoui_inv: bool,
        /// Conference matrix with p-th root entries -> cover (requires --p).
        #[arg(long, requires = "p")]
        conf2drackn: bool,
        /// Prime fiber size for --conf2drackn.
        #[arg(long)]
        p: Option<u64>,
        /// Input document (path or "-" for stdin).
        input: PathBuf,
    },
    /// Factor a signature matrix into an explicit frame and certify it.
    Frame {
        /// Signature JSON (path or "-" for stdin).
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Serialize)]
struct Envelope<P: Serialize> {
    status: &'static str,
    payload: P,
    diagnostics: Vec<CheckRecord>,
}

#[derive(Serialize)]
struct ErrorPayload {
    code: String,
    error: String,
}

#[derive(Serialize)]
struct DracknPayload {
    drackn: DracknJson,
    params: DracknParams,
}

#[derive(Serialize)]
struct SignaturePayload {
    signature: SignatureJson,
    params: EitffParams,
}

#[derive(Serialize)]
struct ConferencePayload {
    conference: ConferenceJson,
    n: usize,
}

#[derive(Serialize)]
struct FramePayload {
    frame: FrameJson,
    certificate: EitffCertificate,
    params: EitffParams,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // help and version requests are not failures
            if err.use_stderr() {
                eprint!("{err}");
                return ExitCode::from(3);
            }
            print!("{err}");
            return ExitCode::SUCCESS;
        }
    };
    let tol = cli.tol;
    let output = cli.output.clone();
    match run(cli.command, tol) {
        Ok(body) => {
            emit(&output, &body);
            ExitCode::SUCCESS
        }
        Err(err) => {
            let envelope = Envelope {
                status: "error",
                payload: ErrorPayload {
                    code: error_code(&err).to_string(),
                    error: err.to_string(),
                },
                diagnostics: Vec::new(),
            };
            emit(&output, &to_canonical_json(&envelope));
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}

fn run(command: Command, tol: f64) -> Result<String, Error> {
    match command {
        Command::MathonDrackn { k } => {
            let (adj, _) = mathon_drackn(k)?;
            cover_envelope(&adj)
        }
        Command::VerifyDrackn { input } => {
            let adj = load_drackn(&input)?;
            cover_envelope(&adj)
        }
        Command::Lift { input, k, irreps } => {
            let adj = match (input, k) {
                (Some(path), None) => load_drackn(&path)?,
                (None, Some(k)) => mathon_drackn(k)?.0,
                _ => unreachable!("clap enforces exactly one source"),
            };
            eitff_core::drackn::verify_drackn(&adj)?;
            let signature = if irreps.trim() == "all" {
                lift_deleted_permutation(&adj)?
            } else {
                let indices = parse_indices(&irreps)?;
                lift_dihedral(&adj, &RepSelection::new(adj.m(), indices)?)?
            };
            signature_envelope(&signature, tol)
        }
        Command::Conference { k, a, verify } => {
            let conference = match verify {
                Some(path) => load_conference(&path)?,
                None => {
                    let k = k.expect("clap enforces the build mode");
                    let a = a.expect("clap ties --a to --k");
                    eitff_core::conference::mathon_conference(k, a)?
                }
            };
            conference_envelope(&conference, tol)
        }
        Command::VerifyConference { input } => {
            let conference = load_conference(&input)?;
            conference_envelope(&conference, tol)
        }
        Command::Convert {
            ettaoui_fwd,
            ettaoui_inv,
            conf2drackn,
            p,
            input,
        } => {
            if ettaoui_fwd {
                let conference = load_conference(&input)?;
                let signature = et_taoui_to_signature(&conference)?;
                signature_envelope(&signature, tol)
            } else if ettaoui_inv {
                let signature = load_signature(&input)?;
                let conference = signature_to_conference(&signature, tol)?;
                conference_envelope(&conference, tol)
            } else {
                debug_assert!(conf2drackn);
                let conference = load_conference(&input)?;
                let adj = conference_to_drackn(&conference, p.expect("clap ties --p"))?;
                cover_envelope(&adj)
            }
        }
        Command::Frame { input } => {
            let signature = load_signature(&input)?;
            let (frame, params) = frame_from_signature(&signature, tol)?;
            let certificate = check_eitff(&frame, tol)?;
            let envelope = Envelope {
                status: "ok",
                payload: FramePayload {
                    frame: FrameJson::from_frame(&frame),
                    certificate,
                    params,
                },
                diagnostics: vec![
                    CheckRecord::measured(
                        "isoclinic singular-value spread",
                        certificate.isoclinic_spread,
                        tol,
                    ),
                    CheckRecord::measured(
                        "tightness deviation",
                        certificate.tightness_deviation,
                        tol,
                    ),
                    CheckRecord::measured(
                        "column orthonormality deviation",
                        certificate.orthonormality_deviation,
                        tol,
                    ),
                    CheckRecord::measured("max imaginary part", certificate.max_imag, tol),
                ],
            };
            Ok(to_canonical_json(&envelope))
        }
    }
}

/// Re-verifies and wraps a cover document.
fn cover_envelope(adj: &DracknAdjacency) -> Result<String, Error> {
    let (params, diagnostics) = eitff_core::drackn::verify_drackn_report(adj)?;
    Ok(to_canonical_json(&Envelope {
        status: "ok",
        payload: DracknPayload {
            drackn: DracknJson::from_adjacency(adj),
            params,
        },
        diagnostics,
    }))
}

fn signature_envelope(signature: &SignatureMatrix, tol: f64) -> Result<String, Error> {
    let (params, diagnostics) = eitff_core::eitff::verify_signature_report(signature, tol)?;
    Ok(to_canonical_json(&Envelope {
        status: "ok",
        payload: SignaturePayload {
            signature: SignatureJson::from_signature(signature),
            params,
        },
        diagnostics,
    }))
}

fn conference_envelope(conference: &ConferenceMatrix, tol: f64) -> Result<String, Error> {
    let (n, diagnostics) = eitff_core::conference::verify_conference_report(conference, tol)?;
    Ok(to_canonical_json(&Envelope {
        status: "ok",
        payload: ConferencePayload {
            conference: ConferenceJson::from_conference(conference),
            n,
        },
        diagnostics,
    }))
}

fn parse_indices(text: &str) -> Result<Vec<usize>, Error> {
    text.split(',')
        .map(str::trim)
        .filter(|part| !part.is_empty())
        .map(|part| {
            part.parse::<usize>().map_err(|_| Error::Malformed {
                what: "irrep selection",
                detail: format!("cannot parse index {part:?}"),
            })
        })
        .collect()
}

fn read_input(path: &Path) -> Result<String, Error> {
    let malformed = |detail: String| Error::Malformed {
        what: "input",
        detail,
    };
    if path.as_os_str() == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| malformed(format!("stdin: {e}")))?;
        Ok(text)
    } else {
        std::fs::read_to_string(path).map_err(|e| malformed(format!("{}: {e}", path.display())))
    }
}

/// Parses a document of type `T`, accepting either the bare object or a
/// result envelope whose payload holds it under `key`.
fn parse_document<T: serde::de::DeserializeOwned>(
    text: &str,
    key: &str,
    what: &'static str,
) -> Result<T, Error> {
    let malformed = |detail: String| Error::Malformed { what, detail };
    let mut value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| malformed(e.to_string()))?;
    if let Some(payload) = value.get_mut("payload") {
        value = payload.take();
    }
    if let Some(inner) = value.get_mut(key) {
        value = inner.take();
    }
    serde_json::from_value(value).map_err(|e| malformed(e.to_string()))
}

fn load_drackn(path: &Path) -> Result<DracknAdjacency, Error> {
    let doc: DracknJson = parse_document(&read_input(path)?, "drackn", "cover document")?;
    doc.to_adjacency()
}

fn load_conference(path: &Path) -> Result<ConferenceMatrix, Error> {
    let doc: ConferenceJson =
        parse_document(&read_input(path)?, "conference", "conference document")?;
    doc.to_conference()
}

fn load_signature(path: &Path) -> Result<SignatureMatrix, Error> {
    let doc: SignatureJson = parse_document(&read_input(path)?, "signature", "signature document")?;
    doc.to_signature()
}

fn emit(output: &Option<PathBuf>, body: &str) {
    match output {
        Some(path) => {
            std::fs::write(path, format!("{body}\n")).unwrap_or_else(|e| {
                eprintln!("error: cannot write {}: {e}", path.display());
                std::process::exit(3);
            });
        }
        None => println!("{body}"),
    }
}

fn error_code(err: &Error) -> &'static str {
    match err {
        Error::NotHermitian { .. } => "NotHermitian",
        Error::NoConvergence { .. } => "NoConvergence",
        Error::AmbiguousClustering { .. } => "AmbiguousClustering",
        Error::OutOfRange { .. } => "OutOfRange",
        Error::ZeroElement => "ZeroElement",
        Error::Axiom { axiom, .. } => match axiom {
            eitff_core::Axiom::D1 => "AxiomViolation(D1)",
            eitff_core::Axiom::D2 => "AxiomViolation(D2)",
            eitff_core::Axiom::D3 => "AxiomViolation(D3)",
            eitff_core::Axiom::D4 => "AxiomViolation(D4)",
            eitff_core::Axiom::S1 => "AxiomViolation(S1)",
            eitff_core::Axiom::S2 => "AxiomViolation(S2)",
            eitff_core::Axiom::S3 => "AxiomViolation(S3)",
            eitff_core::Axiom::S4 => "AxiomViolation(S4)",
            eitff_core::Axiom::C1 => "AxiomViolation(C1)",
            eitff_core::Axiom::C2 => "AxiomViolation(C2)",
            eitff_core::Axiom::C3 => "AxiomViolation(C3)",
            eitff_core::Axiom::C4 => "AxiomViolation(C4)",
        },
        Error::InconsistentC { .. } => "InconsistentC",
        Error::NotPrime { .. } => "NotPrime",
        Error::DivisibilityFailure { .. } => "DivisibilityFailure",
        Error::NotExactMode => "NotExactMode",
        Error::NotAffine { .. } => "NotAffine",
        Error::EvenModulus { .. } => "EvenModulus",
        Error::FiberTooSmall => "FiberTooSmall",
        Error::NotTransitive => "NotTransitive",
        Error::CapExceeded { .. } => "CapExceeded",
        Error::IndexOutOfRange { .. } => "IndexOutOfRange",
        Error::NotTwoEigenvalues { .. } => "NotTwoEigenvalues",
        Error::NotScaledProjection { .. } => "NotScaledProjection",
        Error::DegenerateBeta { .. } => "DegenerateBeta",
        Error::NotIsoclinic { .. } => "NotIsoclinic",
        Error::NotTight { .. } => "NotTight",
        Error::WrongBlockShape { .. } => "WrongBlockShape",
        Error::ExactCountFailure { .. } => "ExactCountFailure",
        Error::DegenerateIrrep { .. } => "DegenerateIrrep",
        Error::ModulusMismatch { .. } => "ModulusMismatch",
        Error::AlphaMismatch { .. } => "AlphaMismatch",
        Error::BlockSizeNotTwo { .. } => "BlockSizeNotTwo",
        Error::Malformed { .. } => "Malformed",
    }
}

/// 2: axiom or verification failure. 3: usage or precondition. 4: numerics.
fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Axiom { .. }
        | Error::InconsistentC { .. }
        | Error::NotTwoEigenvalues { .. }
        | Error::NotScaledProjection { .. }
        | Error::NotIsoclinic { .. }
        | Error::NotTight { .. }
        | Error::WrongBlockShape { .. }
        | Error::ExactCountFailure { .. }
        | Error::AlphaMismatch { .. } => 2,
        Error::NoConvergence { .. } | Error::AmbiguousClustering { .. } => 4,
        _ => 3,
    }
}
