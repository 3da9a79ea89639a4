//! Textual code descriptions: `rs:<q>:<n>:<k>`, `rm1:<m>`, `dual:<spec>`,
//! `file:<path>`.
//!
//! A generator file is JSON of the form
//! `{"field": "gf:2^1", "rows": [[1, 0, 0, 1, 1], ...]}`.

use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::Field;
use crate::linear_code::{rm1_code, rs_code, LinearCode};
use crate::mds_enum::MdsParams;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CodeSpec {
    Rs { q: u64, n: usize, k: usize },
    Rm1 { m: u32 },
    Dual(Box<CodeSpec>),
    File(PathBuf),
}

/// On-disk generator matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorFile {
    pub field: String,
    pub rows: Vec<Vec<u32>>,
}

impl GeneratorFile {
    pub fn load(path: &std::path::Path) -> Result<GeneratorFile> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| Error::Parse { what: "generator file", detail: e.to_string() })
    }

    pub fn build(&self) -> Result<LinearCode> {
        let field: Field = self.field.parse()?;
        LinearCode::from_generator(&field, self.rows.clone())
    }
}

impl FromStr for CodeSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<CodeSpec> {
        let bad = |detail: &str| Error::Parse { what: "code", detail: format!("{s:?}: {detail}") };
        let (kind, rest) = s.split_once(':').ok_or_else(|| bad("expected <kind>:<args>"))?;
        match kind {
            "rs" => {
                let parts: Vec<&str> = rest.split(':').collect();
                let [q, n, k] = parts[..] else {
                    return Err(bad("expected rs:<q>:<n>:<k>"));
                };
                Ok(CodeSpec::Rs {
                    q: q.parse().map_err(|_| bad("q is not an integer"))?,
                    n: n.parse().map_err(|_| bad("n is not an integer"))?,
                    k: k.parse().map_err(|_| bad("k is not an integer"))?,
                })
            }
            "rm1" => Ok(CodeSpec::Rm1 { m: rest.parse().map_err(|_| bad("m is not an integer"))? }),
            "dual" => Ok(CodeSpec::Dual(Box::new(rest.parse()?))),
            "file" if !rest.is_empty() => Ok(CodeSpec::File(PathBuf::from(rest))),
            _ => Err(bad("unknown code kind")),
        }
    }
}

impl std::fmt::Display for CodeSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CodeSpec::Rs { q, n, k } => write!(f, "rs:{q}:{n}:{k}"),
            CodeSpec::Rm1 { m } => write!(f, "rm1:{m}"),
            CodeSpec::Dual(inner) => write!(f, "dual:{inner}"),
            CodeSpec::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

impl CodeSpec {
    pub fn build(&self) -> Result<LinearCode> {
        match self {
            CodeSpec::Rs { q, n, k } => rs_code(&Field::from_order(*q)?, *n, *k),
            CodeSpec::Rm1 { m } => rm1_code(*m),
            CodeSpec::Dual(inner) => Ok(inner.build()?.dual()),
            CodeSpec::File(path) => GeneratorFile::load(path)?.build(),
        }
    }

    /// MDS parameters when the description is a Reed-Solomon code or a
    /// chain of duals of one. A dual with `k = 0` has no parameters.
    pub fn mds_params(&self) -> Option<MdsParams> {
        match self {
            CodeSpec::Rs { q, n, k } => MdsParams::new(*n, *k, *q).ok(),
            CodeSpec::Dual(inner) => inner.mds_params()?.dual(),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        for s in ["rs:8:7:3", "rm1:3", "dual:rs:16:15:11", "dual:dual:rm1:2", "file:codes/x.json"] {
            let spec: CodeSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        assert!("rs:8:7".parse::<CodeSpec>().is_err());
        assert!("golay:23".parse::<CodeSpec>().is_err());
        assert!("file:".parse::<CodeSpec>().is_err());
    }

    #[test]
    fn mds_parameters() {
        let s: CodeSpec = "dual:rs:8:7:3".parse().unwrap();
        assert_eq!(s.mds_params(), Some(MdsParams::new(7, 4, 8).unwrap()));
        let full: CodeSpec = "dual:rs:8:7:7".parse().unwrap();
        assert_eq!(full.mds_params(), None);
        assert_eq!("rm1:3".parse::<CodeSpec>().unwrap().mds_params(), None);
    }

    #[test]
    fn generator_file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("g.json");
        let g = GeneratorFile { field: "gf:2^1".into(), rows: vec![vec![1, 0, 1], vec![0, 1, 1]] };
        std::fs::write(&path, serde_json::to_string(&g).unwrap()).unwrap();
        let spec = CodeSpec::File(path);
        let code = spec.build().unwrap();
        assert_eq!((code.n(), code.k()), (3, 2));
        assert!(CodeSpec::File("/nonexistent/x.json".into()).build().is_err());
    }
}
