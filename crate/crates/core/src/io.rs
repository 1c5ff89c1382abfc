//! JSON file formats: fiducial files, orbit dumps and verification reports.
//!
//! All floating-point numbers are written in scientific notation with 17
//! significant digits (`{:.16e}`), which round-trips every `f64` exactly.
//! See `docs/file-format.md` for the schemas.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::ser::{Formatter, PrettyFormatter};

use crate::geometry::{hermitian_coords, SimplexReport};
use crate::linalg::{projector, StateVector};
use crate::verify::VerificationReport;
use crate::weyl_heisenberg::SicEnsemble;

pub const FIDUCIAL_FORMAT: &str = "sicpovm-fiducial/1";
pub const REPORT_FORMAT: &str = "sicpovm-report/1";
pub const ORBIT_FORMAT: &str = "sicpovm-orbit/1";

/// Accepted deviation of `‖ψ‖` from one when loading a fiducial.
pub const LOAD_NORM_TOL: f64 = 1e-9;

#[derive(Debug, thiserror::Error)]
pub enum FileError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("field `{field}`: {message}")]
    Field { field: &'static str, message: String },
}

impl FileError {
    fn field(field: &'static str, message: impl Into<String>) -> Self {
        Self::Field {
            field,
            message: message.into(),
        }
    }
}

/// Provenance recorded alongside a searched fiducial.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub restarts: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub restart_index: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub iterations: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub loss: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub converged: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tool_version: Option<String>,
    /// Seconds since the Unix epoch.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
}

/// A fiducial vector on disk: `2N` interleaved reals, gauge-fixed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FiducialFile {
    pub format: String,
    pub dim: usize,
    pub fiducial: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
}

impl FiducialFile {
    /// Gauge-fixes `state` (first non-negligible component real and
    /// nonnegative) and records it.
    pub fn new(state: &StateVector, metadata: Option<Metadata>) -> Self {
        Self {
            format: FIDUCIAL_FORMAT.to_string(),
            dim: state.dim(),
            fiducial: state.gauge_fixed().to_params(),
            metadata,
        }
    }

    /// Checks the schema and returns the unit-normalized state.
    pub fn state(&self) -> Result<StateVector, FileError> {
        if self.format != FIDUCIAL_FORMAT {
            return Err(FileError::field(
                "format",
                format!("expected \"{FIDUCIAL_FORMAT}\", got \"{}\"", self.format),
            ));
        }
        if self.dim == 0 {
            return Err(FileError::field("dim", "must be at least 1"));
        }
        if self.fiducial.len() != 2 * self.dim {
            return Err(FileError::field(
                "fiducial",
                format!("expected {} numbers for dim {}, got {}", 2 * self.dim, self.dim, self.fiducial.len()),
            ));
        }
        let norm = self.fiducial.iter().map(|x| x * x).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > LOAD_NORM_TOL {
            return Err(FileError::field(
                "fiducial",
                format!("vector norm {norm} differs from 1 by more than {LOAD_NORM_TOL:e}"),
            ));
        }
        StateVector::from_params(&self.fiducial).map_err(|e| FileError::field("fiducial", e.to_string()))
    }

    pub fn from_json(text: &str) -> Result<Self, FileError> {
        let file: Self = serde_json::from_str(text).map_err(syntax)?;
        file.state()?;
        Ok(file)
    }

    pub fn load(path: &Path) -> Result<Self, FileError> {
        Self::from_json(&read(path)?)
    }
}

/// Verification and simplex diagnostics for one fiducial's orbit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    pub format: String,
    pub dim: usize,
    pub fiducial: Vec<f64>,
    pub verification: VerificationReport,
    pub simplex: SimplexReport,
    /// Hermitian coordinates of each orbit projector, in orbit order.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<Vec<f64>>>,
}

impl ReportFile {
    pub fn new(fiducial: &StateVector, verification: VerificationReport, simplex: SimplexReport) -> Self {
        Self {
            format: REPORT_FORMAT.to_string(),
            dim: fiducial.dim(),
            fiducial: fiducial.gauge_fixed().to_params(),
            verification,
            simplex,
            vertices: None,
        }
    }

    pub fn with_vertices(mut self, ens: &SicEnsemble) -> Self {
        self.vertices = Some(
            ens.states()
                .iter()
                .map(|s| hermitian_coords(&projector(s)).as_slice().to_vec())
                .collect(),
        );
        self
    }

    pub fn from_json(text: &str) -> Result<Self, FileError> {
        let file: Self = serde_json::from_str(text).map_err(syntax)?;
        if file.format != REPORT_FORMAT {
            return Err(FileError::field("format", format!("expected \"{REPORT_FORMAT}\"")));
        }
        Ok(file)
    }
}

/// All `N²` orbit states, each as `2N` interleaved reals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrbitFile {
    pub format: String,
    pub dim: usize,
    pub states: Vec<Vec<f64>>,
}

impl OrbitFile {
    pub fn new(ens: &SicEnsemble) -> Self {
        Self {
            format: ORBIT_FORMAT.to_string(),
            dim: ens.dim(),
            states: ens.states().iter().map(StateVector::to_params).collect(),
        }
    }

    pub fn ensemble(&self) -> Result<SicEnsemble, FileError> {
        let states = self
            .states
            .iter()
            .map(|p| StateVector::from_params(p))
            .collect::<crate::Result<Vec<_>>>()
            .map_err(|e| FileError::field("states", e.to_string()))?;
        SicEnsemble::new(states).map_err(|e| FileError::field("states", e.to_string()))
    }
}

fn syntax(e: serde_json::Error) -> FileError {
    FileError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

fn read(path: &Path) -> Result<String, FileError> {
    fs::read_to_string(path).map_err(|source| FileError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Pretty JSON whose floats carry 17 significant digits.
struct SigDigits(PrettyFormatter<'static>);

impl Formatter for SigDigits {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn begin_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }

    fn end_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }

    fn begin_array_value<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }

    fn end_array_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }

    fn begin_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }

    fn end_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }

    fn begin_object_key<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }

    fn begin_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }

    fn end_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

/// Serializes `value` as pretty JSON with 17-significant-digit floats and a
/// trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SigDigits(PrettyFormatter::new()));
    value.serialize(&mut ser).expect("in-memory serialization of plain data");
    buf.push(b'\n');
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}

/// Writes `value` to `path` in the format of [`to_json`].
pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), FileError> {
    fs::write(path, to_json(value)).map_err(|source| FileError::Io {
        path: path.to_path_buf(),
        source,
    })
}
