//! JSON documents for cycles, transformation systems and reports.
//!
//! Scalars are written as JSON integers when they are integers that fit in
//! 64 bits and as strings (`"-3/4"`, `"1/2+3/4*i"`) otherwise. Vertices are
//! 1-based. Map `i` of a cycle has shape `dims[i+1] x dims[i]` (wrapping),
//! given as a list of rows; a map with no rows is written `[]`.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::cycle::{ChainSummand, Cycle, TransformationSystem};
use crate::error::{Error, Result};
use crate::field::{Field, GaussianRational, Rational};
use crate::matrix::Matrix;

pub const FORMAT_VERSION: &str = "1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Int(i64),
    Text(String),
}

pub type MatrixRows = Vec<Vec<Entry>>;

pub fn encode_scalar<F: Field>(x: &F) -> Entry {
    let text = x.to_string();
    match text.parse::<i64>() {
        Ok(n) => Entry::Int(n),
        Err(_) => Entry::Text(text),
    }
}

pub fn decode_scalar<F: Field>(e: &Entry, context: &str) -> Result<F> {
    let parsed = match e {
        Entry::Int(n) => return Ok(F::from_i64(*n)),
        Entry::Text(s) => F::parse_scalar(s),
    };
    parsed.map_err(|err| Error::Parse {
        context: context.to_string(),
        message: err.to_string(),
    })
}

pub fn encode_matrix<F: Field>(m: &Matrix<F>) -> MatrixRows {
    m.to_rows().iter().map(|r| r.iter().map(encode_scalar).collect()).collect()
}

/// Decodes a matrix; `cols_if_empty` gives the column count of a matrix
/// written with no rows.
pub fn decode_matrix<F: Field>(rows: &MatrixRows, cols_if_empty: usize, context: &str) -> Result<Matrix<F>> {
    let mut out = Vec::with_capacity(rows.len());
    for (r, row) in rows.iter().enumerate() {
        let decoded = row
            .iter()
            .enumerate()
            .map(|(c, e)| decode_scalar(e, &format!("{context}[{r}][{c}]")))
            .collect::<Result<Vec<F>>>()?;
        out.push(decoded);
    }
    Matrix::from_rows(out, cols_if_empty).ok_or_else(|| Error::Parse {
        context: context.to_string(),
        message: "rows have different lengths".into(),
    })
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        context: format!("{what} (line {}, column {})", e.line(), e.column()),
        message: e.to_string(),
    })
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}

pub fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("cannot read {}: {e}", path.display())))
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::Io(format!("cannot write {}: {e}", path.display())))
}

fn check_version(v: &str) -> Result<()> {
    if v == FORMAT_VERSION {
        Ok(())
    } else {
        Err(Error::Parse {
            context: "format_version".into(),
            message: format!("unsupported version {v:?}, expected {FORMAT_VERSION:?}"),
        })
    }
}

fn check_field(tag: &str) -> Result<()> {
    if tag == Rational::TAG || tag == GaussianRational::TAG {
        Ok(())
    } else {
        Err(Error::Parse {
            context: "field".into(),
            message: format!("unknown field {tag:?}, expected \"Q\" or \"Q(i)\""),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleDocument {
    pub format_version: String,
    pub field: String,
    pub t: usize,
    pub dims: Vec<usize>,
    pub maps: Vec<MatrixRows>,
}

impl CycleDocument {
    pub fn from_cycle<F: Field>(c: &Cycle<F>) -> Self {
        CycleDocument {
            format_version: FORMAT_VERSION.into(),
            field: F::TAG.into(),
            t: c.len(),
            dims: c.dims().to_vec(),
            maps: c.maps().iter().map(encode_matrix).collect(),
        }
    }

    /// Decodes into a validated cycle over `F`; a `"Q"` document may be read
    /// over `Q(i)`.
    pub fn to_cycle<F: Field>(&self) -> Result<Cycle<F>> {
        check_version(&self.format_version)?;
        check_field(&self.field)?;
        if self.field != F::TAG && F::TAG == Rational::TAG {
            return Err(Error::Parse {
                context: "field".into(),
                message: format!("a {:?} document cannot be read over Q", self.field),
            });
        }
        if self.t == 0 {
            return Err(Error::InvalidLength);
        }
        if self.dims.len() != self.t || self.maps.len() != self.t {
            return Err(Error::Parse {
                context: "dims/maps".into(),
                message: format!("t = {} but {} dims and {} maps", self.t, self.dims.len(), self.maps.len()),
            });
        }
        let maps = self
            .maps
            .iter()
            .enumerate()
            .map(|(i, rows)| decode_matrix(rows, self.dims[i], &format!("maps[{i}] (A_{})", i + 1)))
            .collect::<Result<Vec<_>>>()?;
        Cycle::new(self.dims.clone(), maps)
    }

    pub fn parse(text: &str) -> Result<Self> {
        parse_json(text, "cycle document")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessDocument {
    pub format_version: String,
    pub field: String,
    /// `phis[v]` is `phi_{v+1}`, square of size `dims[v]`.
    pub dims: Vec<usize>,
    pub phis: Vec<MatrixRows>,
}

impl WitnessDocument {
    pub fn from_system<F: Field>(phis: &TransformationSystem<F>) -> Self {
        let ms: Vec<&Matrix<F>> = (1..=phis.len()).map(|v| phis.phi(v)).collect();
        WitnessDocument {
            format_version: FORMAT_VERSION.into(),
            field: F::TAG.into(),
            dims: ms.iter().map(|m| m.ncols()).collect(),
            phis: ms.iter().map(|m| encode_matrix(m)).collect(),
        }
    }

    pub fn to_system<F: Field>(&self) -> Result<TransformationSystem<F>> {
        check_version(&self.format_version)?;
        check_field(&self.field)?;
        if self.field != F::TAG && F::TAG == Rational::TAG {
            return Err(Error::Parse {
                context: "field".into(),
                message: format!("a {:?} witness cannot be read over Q", self.field),
            });
        }
        if self.dims.len() != self.phis.len() {
            return Err(Error::Parse {
                context: "dims/phis".into(),
                message: format!("{} dims but {} matrices", self.dims.len(), self.phis.len()),
            });
        }
        let phis = self
            .phis
            .iter()
            .enumerate()
            .map(|(i, rows)| decode_matrix(rows, self.dims[i], &format!("phis[{i}] (phi_{})", i + 1)))
            .collect::<Result<Vec<_>>>()?;
        Ok(TransformationSystem::new(phis))
    }

    pub fn parse(text: &str) -> Result<Self> {
        parse_json(text, "witness document")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainEntry {
    pub end: usize,
    pub len: usize,
    pub mult: usize,
}

impl From<&ChainSummand> for ChainEntry {
    fn from(c: &ChainSummand) -> Self {
        ChainEntry {
            end: c.end_vertex,
            len: c.length,
            mult: c.multiplicity,
        }
    }
}

impl From<&ChainEntry> for ChainSummand {
    fn from(c: &ChainEntry) -> Self {
        ChainSummand::new(c.end, c.len, c.mult)
    }
}

/// A cycle over either supported field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyCycle {
    Rational(Cycle<Rational>),
    Gaussian(Cycle<GaussianRational>),
}

impl AnyCycle {
    pub fn from_document(doc: &CycleDocument) -> Result<Self> {
        check_field(&doc.field)?;
        if doc.field == Rational::TAG {
            doc.to_cycle().map(AnyCycle::Rational)
        } else {
            doc.to_cycle().map(AnyCycle::Gaussian)
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::from_document(&CycleDocument::parse(text)?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&read_text(path)?).map_err(|e| match e {
            Error::Parse { context, message } => Error::Parse {
                context: format!("{}: {context}", path.display()),
                message,
            },
            other => other,
        })
    }

    pub fn to_document(&self) -> CycleDocument {
        match self {
            AnyCycle::Rational(c) => CycleDocument::from_cycle(c),
            AnyCycle::Gaussian(c) => CycleDocument::from_cycle(c),
        }
    }

    pub fn field(&self) -> &'static str {
        match self {
            AnyCycle::Rational(_) => Rational::TAG,
            AnyCycle::Gaussian(_) => GaussianRational::TAG,
        }
    }

    pub fn into_gaussian(self) -> Cycle<GaussianRational> {
        match self {
            AnyCycle::Gaussian(c) => c,
            AnyCycle::Rational(c) => {
                let (dims, maps) = c.into_parts();
                let maps = maps.iter().map(promote).collect();
                Cycle::new_unchecked(dims, maps)
            }
        }
    }
}

/// The inclusion `Q -> Q(i)` on matrices.
pub fn promote(m: &Matrix<Rational>) -> Matrix<GaussianRational> {
    Matrix::from_fn(m.nrows(), m.ncols(), |r, c| GaussianRational::from(m[(r, c)].clone()))
}

/// Two cycles brought to a common field.
pub enum CyclePair {
    Rational(Cycle<Rational>, Cycle<Rational>),
    Gaussian(Cycle<GaussianRational>, Cycle<GaussianRational>),
}

impl CyclePair {
    pub fn new(a: AnyCycle, b: AnyCycle) -> Self {
        match (a, b) {
            (AnyCycle::Rational(a), AnyCycle::Rational(b)) => CyclePair::Rational(a, b),
            (a, b) => CyclePair::Gaussian(a.into_gaussian(), b.into_gaussian()),
        }
    }
}
