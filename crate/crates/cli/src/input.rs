use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use subdirect_core::format::{
    parse_json, AnyRing, FormatError, FormatResult, InstanceSpec, ModuleSpec, RingSpec, SubmoduleSpec,
};
use subdirect_core::Error;

/// Anything that ends a run with exit code 2.
#[derive(Debug)]
pub enum CliError {
    Input {
        file: PathBuf,
        line: Option<usize>,
        token: Option<String>,
        message: String,
    },
    Usage(String),
    Algebra(Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input { file, line, token, message } => {
                write!(f, "{}", file.display())?;
                if let Some(line) = line {
                    write!(f, ":{line}")?;
                }
                if let Some(token) = token {
                    write!(f, ": near `{token}`")?;
                }
                write!(f, ": {message}")
            }
            CliError::Usage(m) => f.write_str(m),
            CliError::Algebra(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Algebra(e)
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// A file read into memory, kept around so later parse errors can be located.
#[derive(Clone)]
pub struct Source {
    path: PathBuf,
    raw: String,
}

impl Source {
    pub fn read(path: &Path) -> CliResult<Self> {
        let raw = fs::read_to_string(path).map_err(|e| CliError::Input {
            file: path.to_path_buf(),
            line: None,
            token: None,
            message: e.to_string(),
        })?;
        Ok(Source {
            path: path.to_path_buf(),
            raw,
        })
    }

    pub fn parse<T, U>(&self, convert: impl FnOnce(T) -> FormatResult<U>) -> CliResult<U>
    where
        T: for<'de> serde::Deserialize<'de>,
    {
        parse_json(&self.raw).and_then(convert).map_err(|e| self.locate(e))
    }

    fn locate(&self, e: FormatError) -> CliError {
        let (line, token) = match e.locate(&self.raw) {
            Some((l, t)) => (Some(l), Some(t)),
            None => (None, None),
        };
        CliError::Input {
            file: self.path.clone(),
            line,
            token,
            message: e.to_string(),
        }
    }
}

pub fn ring(path: &Path, budget: Option<usize>) -> CliResult<AnyRing> {
    Source::read(path)?.parse(|spec: RingSpec| AnyRing::from_descriptor(&spec.descriptor()?, budget))
}

pub fn module_spec(path: &Path) -> CliResult<(Source, ModuleSpec)> {
    let src = Source::read(path)?;
    let spec = src.parse(|s: ModuleSpec| Ok(s))?;
    Ok((src, spec))
}

pub fn submodule_spec(path: &Path) -> CliResult<(Source, SubmoduleSpec)> {
    let src = Source::read(path)?;
    let spec = src.parse(|s: SubmoduleSpec| Ok(s))?;
    Ok((src, spec))
}

pub fn instance_spec(path: &Path) -> CliResult<(Source, InstanceSpec)> {
    let src = Source::read(path)?;
    let spec = src.parse(|s: InstanceSpec| Ok(s))?;
    Ok((src, spec))
}

/// Convert an already deserialized document, locating errors in its source.
pub fn convert<U>(src: &Source, result: FormatResult<U>) -> CliResult<U> {
    result.map_err(|e| src.locate(e))
}
