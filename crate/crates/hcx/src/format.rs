//! Instance and candidate files.
//!
//! JSON with a fixed field order and floats rendered with 17 significant
//! digits, so canonical files round-trip byte-identically and every f64 is
//! recovered exactly.

use std::io::Write;
use std::path::Path;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::builder::{PiecewisePsi, PsiConvex, PsiPiece};
use crate::convex::{ConvexScalar, TrslInstance};
use crate::error::{HcxError, Result};

pub const SCHEMA_VERSION: u32 = 1;

/// On-disk instance representation. `h` is dense row-major.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InstanceFile {
    pub schema_version: u32,
    pub n: usize,
    pub h: Vec<f64>,
    pub c: Vec<f64>,
    pub constraint: ConstraintSpec,
    pub f0: F0Spec,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConstraintSpec {
    pub a: f64,
    pub b: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum F0Spec {
    Quadratic { alpha: f64, beta: f64 },
    PowerLaw { alpha: f64, exponent: f64 },
    CubicPoly { c3: f64, c2: f64, c1: f64 },
    QuarticExample1,
    PiecewiseFromPsi { breakpoints: Vec<f64>, pieces: Vec<PieceSpec> },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PieceSpec {
    Linear { slope: f64, intercept: f64 },
    Quadratic { a2: f64, a1: f64, a0: f64 },
}

/// Candidate point file for the `verify` command.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CandidateFile {
    pub schema_version: u32,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub mus: Vec<f64>,
}

fn f0_to_spec(f0: &ConvexScalar) -> F0Spec {
    match f0 {
        ConvexScalar::Quadratic { alpha, beta } => F0Spec::Quadratic { alpha: *alpha, beta: *beta },
        ConvexScalar::PowerLaw { alpha, exponent } => {
            F0Spec::PowerLaw { alpha: *alpha, exponent: *exponent }
        }
        ConvexScalar::CubicPoly { c3, c2, c1 } => F0Spec::CubicPoly { c3: *c3, c2: *c2, c1: *c1 },
        ConvexScalar::QuarticExample1 => F0Spec::QuarticExample1,
        ConvexScalar::PiecewiseFromPsi(p) => F0Spec::PiecewiseFromPsi {
            breakpoints: p.psi().breakpoints().to_vec(),
            pieces: p
                .psi()
                .pieces()
                .iter()
                .map(|piece| match *piece {
                    PsiPiece::Linear { slope, intercept } => PieceSpec::Linear { slope, intercept },
                    PsiPiece::Quadratic { a2, a1, a0 } => PieceSpec::Quadratic { a2, a1, a0 },
                })
                .collect(),
        },
    }
}

fn f0_from_spec(spec: &F0Spec) -> Result<ConvexScalar> {
    Ok(match spec {
        F0Spec::Quadratic { alpha, beta } => ConvexScalar::Quadratic { alpha: *alpha, beta: *beta },
        F0Spec::PowerLaw { alpha, exponent } => {
            ConvexScalar::PowerLaw { alpha: *alpha, exponent: *exponent }
        }
        F0Spec::CubicPoly { c3, c2, c1 } => ConvexScalar::CubicPoly { c3: *c3, c2: *c2, c1: *c1 },
        F0Spec::QuarticExample1 => ConvexScalar::QuarticExample1,
        F0Spec::PiecewiseFromPsi { breakpoints, pieces } => {
            let pieces = pieces
                .iter()
                .map(|p| match *p {
                    PieceSpec::Linear { slope, intercept } => PsiPiece::Linear { slope, intercept },
                    PieceSpec::Quadratic { a2, a1, a0 } => PsiPiece::Quadratic { a2, a1, a0 },
                })
                .collect();
            let psi = PiecewisePsi::from_parts(breakpoints.clone(), pieces)?;
            ConvexScalar::PiecewiseFromPsi(PsiConvex::new(psi))
        }
    })
}

/// Snapshot an instance into its file form.
pub fn to_file(inst: &TrslInstance) -> InstanceFile {
    let n = inst.n();
    let mut h = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            h.push(inst.h()[(i, j)]);
        }
    }
    InstanceFile {
        schema_version: SCHEMA_VERSION,
        n,
        h,
        c: inst.c().iter().copied().collect(),
        constraint: ConstraintSpec { a: inst.a(), b: inst.b() },
        f0: f0_to_spec(inst.f0()),
    }
}

/// Validate a file form and build the instance.
pub fn from_file(file: &InstanceFile) -> Result<TrslInstance> {
    if file.schema_version != SCHEMA_VERSION {
        return Err(HcxError::InvalidInstance(format!(
            "unsupported schema_version {}, expected {SCHEMA_VERSION}",
            file.schema_version
        )));
    }
    let n = file.n;
    if file.h.len() != n * n {
        return Err(HcxError::InvalidInstance(format!(
            "H has {} entries, expected {}",
            file.h.len(),
            n * n
        )));
    }
    if file.c.len() != n {
        return Err(HcxError::InvalidInstance(format!(
            "c has {} entries, expected {n}",
            file.c.len()
        )));
    }
    if file.h.iter().chain(&file.c).any(|v| !v.is_finite()) {
        return Err(HcxError::InvalidInstance("non-finite entries".into()));
    }
    let h = DMatrix::from_row_slice(n, n, &file.h);
    let c = DVector::from_vec(file.c.clone());
    TrslInstance::new(h, c, file.constraint.a, file.constraint.b, f0_from_spec(&file.f0)?)
}

/// Formatter: two-space pretty printing with every float in `%.16e` form
/// (17 significant digits, exact f64 round trip).
struct CanonicalFormatter {
    inner: serde_json::ser::PrettyFormatter<'static>,
}

impl CanonicalFormatter {
    fn new() -> Self {
        CanonicalFormatter { inner: serde_json::ser::PrettyFormatter::new() }
    }
}

impl serde_json::ser::Formatter for CanonicalFormatter {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn begin_array<W: ?Sized + Write>(&mut self, writer: &mut W) -> std::io::Result<()> {
        self.inner.begin_array(writer)
    }
    fn end_array<W: ?Sized + Write>(&mut self, writer: &mut W) -> std::io::Result<()> {
        self.inner.end_array(writer)
    }
    fn begin_array_value<W: ?Sized + Write>(
        &mut self,
        writer: &mut W,
        first: bool,
    ) -> std::io::Result<()> {
        self.inner.begin_array_value(writer, first)
    }
    fn end_array_value<W: ?Sized + Write>(&mut self, writer: &mut W) -> std::io::Result<()> {
        self.inner.end_array_value(writer)
    }
    fn begin_object<W: ?Sized + Write>(&mut self, writer: &mut W) -> std::io::Result<()> {
        self.inner.begin_object(writer)
    }
    fn end_object<W: ?Sized + Write>(&mut self, writer: &mut W) -> std::io::Result<()> {
        self.inner.end_object(writer)
    }
    fn begin_object_key<W: ?Sized + Write>(
        &mut self,
        writer: &mut W,
        first: bool,
    ) -> std::io::Result<()> {
        self.inner.begin_object_key(writer, first)
    }
    fn begin_object_value<W: ?Sized + Write>(&mut self, writer: &mut W) -> std::io::Result<()> {
        self.inner.begin_object_value(writer)
    }
    fn end_object_value<W: ?Sized + Write>(&mut self, writer: &mut W) -> std::io::Result<()> {
        self.inner.end_object_value(writer)
    }
}

/// Canonical text for any serializable file form.
pub fn to_canonical_json<T: Serialize>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, CanonicalFormatter::new());
    value.serialize(&mut ser)?;
    buf.push(b'\n');
    Ok(String::from_utf8(buf).expect("serializer emits utf-8"))
}

pub fn save(inst: &TrslInstance, path: &Path) -> Result<()> {
    std::fs::write(path, to_canonical_json(&to_file(inst))?)?;
    Ok(())
}

pub fn load(path: &Path) -> Result<TrslInstance> {
    let text = std::fs::read_to_string(path)?;
    let file: InstanceFile = serde_json::from_str(&text)?;
    from_file(&file)
}

pub fn save_candidate(cand: &CandidateFile, path: &Path) -> Result<()> {
    std::fs::write(path, to_canonical_json(cand)?)?;
    Ok(())
}

pub fn load_candidate(path: &Path) -> Result<CandidateFile> {
    let text = std::fs::read_to_string(path)?;
    let file: CandidateFile = serde_json::from_str(&text)?;
    if file.schema_version != SCHEMA_VERSION {
        return Err(HcxError::InvalidInstance(format!(
            "unsupported candidate schema_version {}",
            file.schema_version
        )));
    }
    if file.mus.is_empty() {
        return Err(HcxError::InvalidInstance("candidate needs at least one multiplier".into()));
    }
    Ok(file)
}
