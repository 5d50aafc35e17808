//! JSON file formats for rings, matrices, submodules, modules and instances.
//!
//! Polynomials are written as strings in the input grammar. Matrices are
//! `{"rows": r, "cols": c, "entries": [[...], ...]}` with one inner array per
//! row. A submodule is `{"rank": q, "generators": [[...], ...]}` or a bare
//! array of vectors. A module is `{"generators": g, "relations": <matrix>}`
//! or a bare matrix whose columns are the relations.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::Error;
use crate::fpmod::{FPModule, Submodule};
use crate::ring::{IntegerRing, Matrix, MonomialOrder, PolyRing, Ring, RingDescriptor, RingKind};
use crate::subdirect::SubdirectInstance;

/// Failure to read an input document.
#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
    #[error("{location}: `{text}`: {source}")]
    Entry { location: String, text: String, source: Error },
    #[error("{0}")]
    Shape(String),
    #[error(transparent)]
    Algebra(#[from] Error),
}

impl FormatError {
    fn json(e: serde_json::Error) -> Self {
        let text = e.to_string();
        let message = match text.rsplit_once(" at line ") {
            Some((m, _)) => m.to_string(),
            None => text,
        };
        // Errors raised after parsing, such as an untagged layout mismatch, carry no position.
        if e.line() == 0 {
            if message.contains("did not match any variant") {
                return FormatError::Shape("the document matches none of the accepted layouts".into());
            }
            return FormatError::Shape(message);
        }
        FormatError::Json {
            line: e.line(),
            column: e.column(),
            message,
        }
    }

    /// Line (1-based) and offending token of the error within the raw document.
    pub fn locate(&self, raw: &str) -> Option<(usize, String)> {
        match self {
            FormatError::Json { line, column, .. } => {
                let token = raw
                    .lines()
                    .nth(line.saturating_sub(1))
                    .map(|l| {
                        let start = column.saturating_sub(1).min(l.len());
                        l[start..].split_whitespace().next().unwrap_or("").to_string()
                    })
                    .unwrap_or_default();
                Some((*line, token))
            }
            FormatError::Entry { text, source, .. } => {
                let quoted = serde_json::to_string(text).ok()?;
                let offset = raw.find(&quoted)?;
                let line = raw[..offset].matches('\n').count() + 1;
                let token = match source {
                    Error::UnknownVariable { name, .. } => name.clone(),
                    Error::Syntax { position, .. } => text
                        .get(*position..)
                        .and_then(|s| s.split_whitespace().next())
                        .unwrap_or("<end of input>")
                        .to_string(),
                    _ => text.clone(),
                };
                Some((line, token))
            }
            _ => None,
        }
    }
}

pub type FormatResult<T> = std::result::Result<T, FormatError>;

/// Serialized ring descriptor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingSpec {
    pub coeffs: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub vars: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<String>,
}

impl RingSpec {
    pub fn descriptor(&self) -> FormatResult<RingDescriptor> {
        let d = match self.coeffs.as_str() {
            "QQ" => {
                let order = match self.order.as_deref() {
                    None => MonomialOrder::DegRevLex,
                    Some(name) => MonomialOrder::from_name(name)
                        .ok_or_else(|| Error::InvalidRing(format!("unknown monomial order `{name}`")))?,
                };
                RingDescriptor {
                    kind: RingKind::PolynomialOverQ,
                    variables: self.vars.clone(),
                    order: Some(order),
                }
            }
            "ZZ" => RingDescriptor {
                kind: RingKind::Integers,
                variables: self.vars.clone(),
                order: self
                    .order
                    .as_deref()
                    .map(|n| MonomialOrder::from_name(n).unwrap_or(MonomialOrder::Lex)),
            },
            other => return Err(Error::InvalidRing(format!("unknown coefficient domain `{other}`")).into()),
        };
        d.validate()?;
        Ok(d)
    }

    pub fn from_descriptor(d: &RingDescriptor) -> Self {
        match d.kind {
            RingKind::Integers => RingSpec {
                coeffs: "ZZ".into(),
                vars: Vec::new(),
                order: None,
            },
            RingKind::PolynomialOverQ => RingSpec {
                coeffs: "QQ".into(),
                vars: d.variables.clone(),
                order: d.order.map(|o| o.name().to_string()),
            },
        }
    }
}

/// A ring chosen at run time.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyRing {
    Polynomial(PolyRing),
    Integers(IntegerRing),
}

impl AnyRing {
    pub fn from_descriptor(d: &RingDescriptor, budget: Option<usize>) -> FormatResult<Self> {
        Ok(match d.kind {
            RingKind::Integers => AnyRing::Integers(IntegerRing),
            RingKind::PolynomialOverQ => AnyRing::Polynomial(PolyRing::from_descriptor(d)?.with_budget(budget)),
        })
    }

    pub fn parse(text: &str, budget: Option<usize>) -> FormatResult<Self> {
        let spec: RingSpec = serde_json::from_str(text).map_err(FormatError::json)?;
        Self::from_descriptor(&spec.descriptor()?, budget)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixSpec {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<String>>,
}

fn parse_entry<R: Ring>(ring: &R, text: &str, location: impl FnOnce() -> String) -> FormatResult<R::Elem> {
    ring.parse(text).map_err(|source| FormatError::Entry {
        location: location(),
        text: text.to_string(),
        source,
    })
}

impl MatrixSpec {
    pub fn to_matrix<R: Ring>(&self, ring: &R) -> FormatResult<Matrix<R::Elem>> {
        if self.entries.len() != self.rows {
            return Err(FormatError::Shape(format!(
                "matrix declares {} rows but lists {}",
                self.rows,
                self.entries.len()
            )));
        }
        let mut rows = Vec::with_capacity(self.rows);
        for (i, row) in self.entries.iter().enumerate() {
            if row.len() != self.cols {
                return Err(FormatError::Shape(format!(
                    "row {i} has {} entries, expected {}",
                    row.len(),
                    self.cols
                )));
            }
            let mut parsed = Vec::with_capacity(self.cols);
            for (j, e) in row.iter().enumerate() {
                parsed.push(parse_entry(ring, e, || format!("entries[{i}][{j}]"))?);
            }
            rows.push(parsed);
        }
        Ok(Matrix::from_rows(self.cols, rows)?)
    }

    pub fn from_matrix<R: Ring>(ring: &R, m: &Matrix<R::Elem>) -> Self {
        MatrixSpec {
            rows: m.nrows(),
            cols: m.ncols(),
            entries: m.rows().iter().map(|r| r.iter().map(|e| ring.format(e)).collect()).collect(),
        }
    }
}

/// Parse one vector given as polynomial strings.
pub fn parse_vector<R: Ring>(ring: &R, v: &[String], what: &str) -> FormatResult<Vec<R::Elem>> {
    v.iter()
        .enumerate()
        .map(|(j, e)| parse_entry(ring, e, || format!("{what}, entry {j}")))
        .collect()
}

fn parse_vectors<R: Ring>(ring: &R, vectors: &[Vec<String>], rank: Option<usize>, what: &str) -> FormatResult<(usize, Vec<Vec<R::Elem>>)> {
    let q = match rank {
        Some(q) => q,
        None => vectors
            .first()
            .map(Vec::len)
            .ok_or_else(|| FormatError::Shape(format!("{what}: an empty generator list needs an explicit rank")))?,
    };
    let mut out = Vec::with_capacity(vectors.len());
    for (i, v) in vectors.iter().enumerate() {
        if v.len() != q {
            return Err(FormatError::Shape(format!(
                "{what}: generator {i} has {} entries, expected {q}",
                v.len()
            )));
        }
        out.push(parse_vector(ring, v, &format!("{what} generator {i}"))?);
    }
    Ok((q, out))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SubmoduleSpec {
    Explicit { rank: usize, generators: Vec<Vec<String>> },
    Bare(Vec<Vec<String>>),
}

impl SubmoduleSpec {
    pub fn rank(&self) -> Option<usize> {
        match self {
            SubmoduleSpec::Explicit { rank, .. } => Some(*rank),
            SubmoduleSpec::Bare(v) => v.first().map(Vec::len),
        }
    }

    /// Parse against a known ambient rank (`None` to infer it).
    pub fn to_generators<R: Ring>(&self, ring: &R, rank: Option<usize>, what: &str) -> FormatResult<(usize, Vec<Vec<R::Elem>>)> {
        match self {
            SubmoduleSpec::Explicit { rank: declared, generators } => {
                if let Some(q) = rank {
                    if q != *declared {
                        return Err(FormatError::Shape(format!("{what}: rank {declared} but q = {q}")));
                    }
                }
                parse_vectors(ring, generators, Some(*declared), what)
            }
            SubmoduleSpec::Bare(gens) => parse_vectors(ring, gens, rank, what),
        }
    }

    pub fn to_submodule<R: Ring>(&self, ring: &R, rank: Option<usize>, what: &str) -> FormatResult<Submodule<R>> {
        let (q, gens) = self.to_generators(ring, rank, what)?;
        Ok(Submodule::new(ring, q, &gens)?)
    }

    pub fn from_submodule<R: Ring>(s: &Submodule<R>) -> Self {
        SubmoduleSpec::Explicit {
            rank: s.rank(),
            generators: format_vectors(s.ring(), s.generators()),
        }
    }
}

pub fn format_vectors<R: Ring>(ring: &R, vs: &[Vec<R::Elem>]) -> Vec<Vec<String>> {
    vs.iter().map(|v| v.iter().map(|e| ring.format(e)).collect()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ModuleSpec {
    Explicit { generators: usize, relations: MatrixSpec },
    Bare(MatrixSpec),
}

impl ModuleSpec {
    pub fn to_module<R: Ring>(&self, ring: &R) -> FormatResult<FPModule<R>> {
        let (g, rel) = match self {
            ModuleSpec::Explicit { generators, relations } => (*generators, relations),
            ModuleSpec::Bare(m) => (m.rows, m),
        };
        if rel.rows != g {
            return Err(FormatError::Shape(format!(
                "relation matrix has {} rows for {g} generators",
                rel.rows
            )));
        }
        Ok(FPModule::present(ring, &rel.to_matrix(ring)?, g)?)
    }

    pub fn from_module<R: Ring>(m: &FPModule<R>) -> Self {
        ModuleSpec::Explicit {
            generators: m.generators(),
            relations: MatrixSpec::from_matrix(m.ring(), &m.relation_matrix()),
        }
    }
}

/// A complete instance: ring, rank and both submodules in one file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceSpec {
    pub ring: RingSpec,
    pub q: usize,
    #[serde(rename = "A")]
    pub a: SubmoduleSpec,
    #[serde(rename = "B")]
    pub b: SubmoduleSpec,
}

impl InstanceSpec {
    pub fn to_instance<R: Ring>(&self, ring: &R) -> FormatResult<SubdirectInstance<R>> {
        let (_, a) = self.a.to_generators(ring, Some(self.q), "A")?;
        let (_, b) = self.b.to_generators(ring, Some(self.q), "B")?;
        Ok(SubdirectInstance::new(ring, self.q, &a, &b)?)
    }

    pub fn from_instance<R: Ring>(inst: &SubdirectInstance<R>) -> Self {
        InstanceSpec {
            ring: RingSpec::from_descriptor(&inst.ring().descriptor()),
            q: inst.q(),
            a: SubmoduleSpec::from_submodule(inst.a()),
            b: SubmoduleSpec::from_submodule(inst.b()),
        }
    }
}

pub fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> FormatResult<T> {
    serde_json::from_str(text).map_err(FormatError::json)
}

pub fn module_json<R: Ring>(m: &FPModule<R>) -> Value {
    serde_json::to_value(ModuleSpec::from_module(m)).expect("serializable")
}

pub fn matrix_json<R: Ring>(ring: &R, m: &Matrix<R::Elem>) -> Value {
    serde_json::to_value(MatrixSpec::from_matrix(ring, m)).expect("serializable")
}

pub fn submodule_json<R: Ring>(s: &Submodule<R>) -> Value {
    json!({"rank": s.rank(), "generators": format_vectors(s.ring(), s.generators())})
}
