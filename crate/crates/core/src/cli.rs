//! Batch command-line front end.
//!
//! | exit | meaning                   |
//! |------|---------------------------|
//! | 0    | success / verification pass |
//! | 1    | verification failure      |
//! | 2    | search did not converge   |
//! | 64   | usage error               |
//! | 65   | malformed input file      |
//! | 74   | I/O error                 |

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Parser, Subcommand};

use crate::geometry::{sic_simplex_report, vertex_images, OUTSPHERE_TOL, REGULARITY_TOL};
use crate::io::{to_json, write_json, FiducialFile, FileError, Metadata, OrbitFile, ReportFile};
use crate::search::{search, SearchConfig};
use crate::verify::{verify, DEFAULT_TOL};
use crate::weyl_heisenberg::orbit;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_NOT_CONVERGED: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DATA: i32 = 65;
pub const EXIT_IO: i32 = 74;

pub const DEFAULT_RESTARTS: usize = 50;

#[derive(Debug, Parser)]
#[command(name = "sicpovm", version, about = "Search, certify and measure SIC-POVMs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Search for a Weyl-Heisenberg fiducial and write it to a file.
    Search {
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_RESTARTS)]
        restarts: usize,
        /// Certification tolerance the result must meet.
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        /// Output path [default: fiducial_d<DIM>.json].
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        no_timestamp: bool,
    },
    /// Certify the orbit of a fiducial file; prints a report.
    Verify {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Write all N² orbit states of a fiducial file.
    Orbit {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the moment-map images of the torus-fixed points of CP^{M-1}.
    MomentDemo { m: usize },
    /// Full report including Hermitian coordinates of every vertex.
    Report {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(failure) => {
            let _ = writeln!(err, "error: {}", failure.message);
            failure.code
        }
    }
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<FileError> for Failure {
    fn from(e: FileError) -> Self {
        let code = match e {
            FileError::Io { .. } => EXIT_IO,
            FileError::Syntax { .. } | FileError::Field { .. } => EXIT_DATA,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Self {
            code: EXIT_IO,
            message: e.to_string(),
        }
    }
}

fn check_tol(tol: f64) -> Result<(), Failure> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Failure::usage(format!("--tol must be a positive number, got {tol}")))
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    match cmd {
        Command::Search {
            dim,
            seed,
            restarts,
            tol,
            out: path,
            no_timestamp,
        } => {
            let path = path.unwrap_or_else(|| PathBuf::from(format!("fiducial_d{dim}.json")));
            cmd_search(dim, seed, restarts, tol, &path, !no_timestamp, out, err)
        }
        Command::Verify { file, tol } => cmd_verify(&file, tol, false, None, out),
        Command::Report { file, tol, out: path } => cmd_verify(&file, tol, true, path.as_deref(), out),
        Command::Orbit { file, out: path } => {
            let fid = FiducialFile::load(&file)?.state()?;
            let orbit_file = OrbitFile::new(&orbit(&fid));
            match path {
                Some(p) => write_json(&p, &orbit_file)?,
                None => out.write_all(to_json(&orbit_file).as_bytes())?,
            }
            Ok(EXIT_OK)
        }
        Command::MomentDemo { m } => cmd_moment_demo(m, out),
    }
}

/// Side path for an unconverged attempt: `x.json` becomes `x.unconverged.json`.
pub fn unconverged_path(path: &Path) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    path.with_file_name(format!("{stem}.unconverged.json"))
}

#[allow(clippy::too_many_arguments)]
fn cmd_search(
    dim: usize,
    seed: u64,
    restarts: usize,
    tol: f64,
    path: &Path,
    timestamp: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, Failure> {
    if dim == 0 {
        return Err(Failure::usage("--dim must be at least 1"));
    }
    if restarts == 0 {
        return Err(Failure::usage("--restarts must be at least 1"));
    }
    check_tol(tol)?;
    let mut cfg = SearchConfig::new(dim).with_seed(seed).with_restarts(restarts);
    cfg.loss_tolerance = cfg.loss_tolerance.min(tol * tol / 100.0);
    let result = search(&cfg).map_err(|e| Failure::usage(e.to_string()))?;

    let metadata = Metadata {
        seed: Some(seed),
        restarts: Some(restarts),
        restart_index: Some(result.restart_index),
        iterations: Some(result.iterations_used),
        loss: Some(result.loss),
        converged: Some(result.converged),
        tool_version: Some(env!("CARGO_PKG_VERSION").to_string()),
        timestamp: timestamp.then(|| {
            SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0)
        }),
    };
    let file = FiducialFile::new(&result.fiducial, Some(metadata));
    let report = verify(&orbit(&result.fiducial), tol).expect("tolerance checked");

    let target = if result.converged {
        path.to_path_buf()
    } else {
        unconverged_path(path)
    };
    write_json(&target, &file)?;

    writeln!(
        out,
        "dim={dim} seed={seed} restart={} iterations={} loss={:.16e} converged={}",
        result.restart_index, result.iterations_used, result.loss, result.converged
    )?;
    writeln!(
        out,
        "equiangularity_residual={:.16e} identity_residual={:.16e} completeness_rank={} pass={}",
        report.equiangularity_residual, report.identity_residual, report.completeness_rank, report.pass
    )?;
    writeln!(out, "wrote {}", target.display())?;
    if result.converged {
        Ok(EXIT_OK)
    } else {
        writeln!(err, "no fiducial reached loss {:e} in {restarts} restarts", cfg.loss_tolerance)?;
        Ok(EXIT_NOT_CONVERGED)
    }
}

fn cmd_verify(
    file: &Path,
    tol: f64,
    with_vertices: bool,
    path: Option<&Path>,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    check_tol(tol)?;
    let fid = FiducialFile::load(file)?.state()?;
    let ens = orbit(&fid);
    let report = verify(&ens, tol).expect("tolerance checked");
    let simplex = sic_simplex_report(&ens, REGULARITY_TOL, OUTSPHERE_TOL);
    let pass = report.pass;
    let mut file = ReportFile::new(&fid, report, simplex);
    if with_vertices {
        file = file.with_vertices(&ens);
    }
    match path {
        Some(p) => write_json(p, &file)?,
        None => out.write_all(to_json(&file).as_bytes())?,
    }
    Ok(if pass { EXIT_OK } else { EXIT_VERIFY_FAILED })
}

fn format_row(coords: &[f64]) -> String {
    let parts: Vec<String> = coords.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

fn cmd_moment_demo(m: usize, out: &mut dyn Write) -> Result<i32, Failure> {
    let images = vertex_images(m).map_err(|_| Failure::usage("M must be at least 1"))?;
    writeln!(out, "# moment-map images of the {m} torus-fixed points of CP^{}", m - 1)?;
    for (k, img) in images.iter().enumerate() {
        writeln!(out, "e{k} -> {}", format_row(img.coords()))?;
    }
    let mut min = f64::INFINITY;
    let mut max = 0.0f64;
    for i in 0..images.len() {
        for j in (i + 1)..images.len() {
            let d = images[i].distance_sq(&images[j]);
            min = min.min(d);
            max = max.max(d);
        }
    }
    if images.len() > 1 {
        writeln!(
            out,
            "pairwise squared distance: min {min} max {max} regular={}",
            min == max
        )?;
    } else {
        writeln!(out, "pairwise squared distance: none (single vertex)")?;
    }
    Ok(EXIT_OK)
}
