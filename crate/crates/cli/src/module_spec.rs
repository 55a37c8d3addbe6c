//! Inline module expressions and explicit module files.
//!
//! ```text
//! expr  := term ('+' term)*
//! term  := S<v> | P<v> | I<v> | regular | zero
//!        | D(expr) | dual(expr) | Tr(expr) | syzygy(<k>, expr)
//! ```
//!
//! `<v>` is a vertex name. `D` and `Tr` move to the other side, `dual` is
//! `Hom(-, Λ)` and also changes side. Summands must live on the same side.

use std::collections::BTreeMap;

use homdual::algebra::Algebra;
use homdual::gorenstein::ModuleRecord;
use homdual::homology::{dual_module, syzygy, transpose};
use homdual::linalg::Mat;
use homdual::modules::Module;
use serde::Deserialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("column {column}: {message}")]
pub struct SpecError {
    pub column: usize,
    pub message: String,
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    alg: &'a Algebra,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, at: usize, message: impl Into<String>) -> Result<T, SpecError> {
        Err(SpecError { column: at + 1, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), SpecError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(self.pos, format!("expected `{c}`"))
        }
    }

    fn ident(&mut self) -> (usize, &'a str) {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[start..];
        let len = rest.find(|c: char| !(c.is_alphanumeric() || c == '_' || c == '\'')).unwrap_or(rest.len());
        self.pos += len;
        (start, &rest[..len])
    }

    fn expr(&mut self) -> Result<Module, SpecError> {
        let start = self.pos;
        let mut parts = vec![self.term()?];
        while self.eat('+') {
            let at = self.pos;
            let m = self.term()?;
            if m.alg().is_opposite() != parts[0].alg().is_opposite() {
                return self.err(at, "summands live on different sides");
            }
            parts.push(m);
        }
        if parts.len() == 1 {
            return Ok(parts.pop().expect("one part"));
        }
        let refs: Vec<&Module> = parts.iter().collect();
        Module::direct_sum(&refs).or_else(|e| self.err(start, e.to_string()))
    }

    fn inner(&mut self) -> Result<Module, SpecError> {
        self.expect('(')?;
        let m = self.expr()?;
        self.expect(')')?;
        Ok(m)
    }

    fn term(&mut self) -> Result<Module, SpecError> {
        let alg = self.alg;
        let (at, word) = self.ident();
        match word {
            "" => self.err(at, "expected a module"),
            "regular" => Ok(Module::regular(alg)),
            "zero" => Ok(Module::zero(alg)),
            "D" => Ok(self.inner()?.dual_k()),
            "dual" => Ok(dual_module(&self.inner()?).module),
            "Tr" => Ok(transpose(&self.inner()?)),
            "syzygy" => {
                self.expect('(')?;
                let (kat, k) = self.ident();
                let Ok(k) = k.parse::<usize>() else {
                    return self.err(kat, "syzygy needs a nonnegative degree");
                };
                self.expect(',')?;
                let m = self.expr()?;
                self.expect(')')?;
                Ok(syzygy(&m, k))
            }
            _ => {
                let kind = word.chars().next().expect("nonempty word");
                let name = &word[kind.len_utf8()..];
                let Some(v) = alg.vertex_index(name) else {
                    return self.err(at, format!("unknown module `{word}`"));
                };
                match kind {
                    'S' => Ok(Module::simple(alg, v)),
                    'P' => Ok(Module::projective(alg, v)),
                    'I' => Ok(Module::injective(alg, v)),
                    _ => self.err(at, format!("unknown module `{word}`")),
                }
            }
        }
    }
}

/// A left module built from an inline expression.
pub fn parse_module(alg: &Algebra, src: &str) -> Result<Module, SpecError> {
    let mut p = Parser { src, pos: 0, alg };
    let m = p.expr()?;
    p.skip_ws();
    if p.pos < src.len() {
        return p.err(p.pos, format!("unexpected `{}`", &src[p.pos..]));
    }
    Ok(m)
}

#[derive(Debug, Error)]
pub enum ModuleFileError {
    #[error("not a module file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Clone, Copy, Debug, Default, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    #[default]
    Left,
    Right,
}

/// A representation by arrow matrices, `arrows[name]` of size `dim_vector[target] x dim_vector[source]`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Representation {
    #[serde(default)]
    pub side: Side,
    pub dim_vector: Vec<usize>,
    #[serde(default)]
    pub arrows: BTreeMap<String, Vec<Vec<i64>>>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum ModuleFile {
    Representation(Representation),
    Record(ModuleRecord),
}

pub fn from_representation(alg: &Algebra, r: &Representation) -> Result<Module, ModuleFileError> {
    let side = if r.side == Side::Right { alg.op() } else { alg.clone() };
    let f = side.field();
    let n = side.num_vertices();
    if r.dim_vector.len() != n {
        return Err(ModuleFileError::Invalid(format!("dim_vector needs {n} entries")));
    }
    for name in r.arrows.keys() {
        if !side.arrows().iter().any(|a| &a.name == name) {
            return Err(ModuleFileError::Invalid(format!("unknown arrow `{name}`")));
        }
    }
    let mut mats = Vec::new();
    for a in side.arrows() {
        let (rows, cols) = (r.dim_vector[a.target], r.dim_vector[a.source]);
        let m = match r.arrows.get(&a.name) {
            None => Mat::zeros(f, rows, cols),
            Some(data) => {
                if data.len() != rows || data.iter().any(|row| row.len() != cols) {
                    return Err(ModuleFileError::Invalid(format!("arrow `{}` needs a {rows}x{cols} matrix", a.name)));
                }
                let flat = data.iter().flatten().map(|&x| f.from_i64(x)).collect();
                Mat::from_vec(f, rows, cols, flat)
            }
        };
        mats.push(m);
    }
    Module::from_arrow_matrices(&side, &r.dim_vector, &mats).map_err(|e| ModuleFileError::Invalid(e.to_string()))
}

/// Either a representation or a record as written in verdict witnesses.
pub fn parse_module_file(alg: &Algebra, json: &str) -> Result<Module, ModuleFileError> {
    match serde_json::from_str::<ModuleFile>(json)? {
        ModuleFile::Representation(r) => from_representation(alg, &r),
        ModuleFile::Record(r) => r.rebuild(alg).map_err(|e| ModuleFileError::Invalid(e.to_string())),
    }
}
