//! Algebra files: a prime field, then either a bound quiver or a table of
//! structure constants.
//!
//! ```text
//! field p = 2
//! quiver
//!   vertices: 1 2 3
//!   a: 1 -> 2
//!   b: 2 -> 3
//! end
//! relations
//!   b*a
//! end
//! nilpotency L = 2
//! ```
//!
//! Words compose right to left (`b*a` is `a` then `b`). Relation terms carry an
//! optional integer coefficient: `b*a - 2 d*c`. A `constants` block replaces
//! `quiver`/`relations`/`nilpotency`:
//!
//! ```text
//! constants
//!   basis: 1 x
//!   unit: 1 0
//!   idempotent: 1 0
//!   x * x = 0 0
//!   1 * x = 0 1
//! end
//! ```
//!
//! Unlisted products are zero. `#` starts a comment.

use homdual::algebra::{
    build_algebra, build_from_constants, Algebra, ConstantsSpec, Path, Presentation, QuiverSpec, Relation,
};
use homdual::linalg::Fp;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

fn at(line: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, column: 1, message: message.into() }
}

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
    #[error("invalid algebra: {0}")]
    Build(#[from] homdual::algebra::AlgebraError),
}

/// A parsed file, before the algebra is built.
#[derive(Debug)]
pub enum AlgebraSource {
    Quiver(Presentation),
    Constants(ConstantsSpec),
}

impl AlgebraSource {
    pub fn build(&self) -> Result<Algebra, homdual::algebra::AlgebraError> {
        match self {
            AlgebraSource::Quiver(p) => build_algebra(p),
            AlgebraSource::Constants(c) => build_from_constants(c),
        }
    }
}

pub fn load(text: &str) -> Result<Algebra, LoadError> {
    Ok(parse(text)?.build()?)
}

/// One significant line: 1-based number, column of its first character, and content.
#[derive(Clone, Copy)]
struct Line<'a> {
    no: usize,
    indent: usize,
    text: &'a str,
}

impl Line<'_> {
    fn err(&self, offset: usize, message: impl Into<String>) -> ParseError {
        ParseError { line: self.no, column: self.indent + offset + 1, message: message.into() }
    }

    /// Column offset of `part`, which must be a subslice of this line.
    fn offset_of(&self, part: &str) -> usize {
        part.as_ptr() as usize - self.text.as_ptr() as usize
    }
}

fn lines(text: &str) -> Vec<Line<'_>> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let body = raw.split('#').next().unwrap_or("");
            let trimmed = body.trim_start();
            let indent = body.len() - trimmed.len();
            let t = trimmed.trim_end();
            (!t.is_empty()).then_some(Line { no: i + 1, indent, text: t })
        })
        .collect()
}

/// `key <name> = <value>` with a fixed keyword and variable name.
fn assignment<'a>(line: &Line<'a>, keyword: &str, var: &str) -> Result<&'a str, ParseError> {
    let rest = line.text.strip_prefix(keyword).ok_or_else(|| line.err(0, format!("expected `{keyword}`")))?;
    let rest = rest.trim_start();
    let rest = rest.strip_prefix(var).ok_or_else(|| line.err(line.offset_of(rest), format!("expected `{var}`")))?;
    let rest = rest.trim_start();
    let rest = rest.strip_prefix('=').ok_or_else(|| line.err(line.offset_of(rest), "expected `=`"))?;
    let v = rest.trim();
    if v.is_empty() {
        return Err(line.err(line.text.len(), "missing value"));
    }
    Ok(v)
}

fn number<T: std::str::FromStr>(line: &Line<'_>, s: &str, what: &str) -> Result<T, ParseError> {
    s.parse().map_err(|_| line.err(line.offset_of(s), format!("expected {what}, found `{s}`")))
}

/// Lines up to the matching `end`; returns them and the index after `end`.
fn block<'a>(ls: &[Line<'a>], start: usize) -> Result<(Vec<Line<'a>>, usize), ParseError> {
    let head = ls[start];
    for (j, l) in ls.iter().enumerate().skip(start + 1) {
        if l.text == "end" {
            return Ok((ls[start + 1..j].to_vec(), j + 1));
        }
    }
    Err(head.err(0, format!("`{}` block has no `end`", head.text)))
}

pub fn parse(text: &str) -> Result<AlgebraSource, ParseError> {
    let ls = lines(text);
    let mut field: Option<Fp> = None;
    let mut quiver: Option<(QuiverSpec, Line<'_>)> = None;
    let mut relation_lines: Vec<Line<'_>> = Vec::new();
    let mut relations_seen = false;
    let mut nilpotency: Option<usize> = None;
    let mut constants: Option<(Vec<Line<'_>>, Line<'_>)> = None;
    let mut i = 0;
    while i < ls.len() {
        let l = ls[i];
        let keyword = l.text.split_whitespace().next().unwrap_or("");
        match keyword {
            "field" => {
                if field.is_some() {
                    return Err(l.err(0, "field declared twice"));
                }
                let v = assignment(&l, "field", "p")?;
                let p: u64 = number(&l, v, "a prime")?;
                field = Some(Fp::new(p).map_err(|e| l.err(l.offset_of(v), e.to_string()))?);
                i += 1;
            }
            "quiver" if l.text == "quiver" => {
                if quiver.is_some() {
                    return Err(l.err(0, "quiver declared twice"));
                }
                let (body, next) = block(&ls, i)?;
                quiver = Some((parse_quiver(&body, &l)?, l));
                i = next;
            }
            "relations" if l.text == "relations" => {
                if relations_seen {
                    return Err(l.err(0, "relations declared twice"));
                }
                relations_seen = true;
                let (body, next) = block(&ls, i)?;
                relation_lines = body;
                i = next;
            }
            "nilpotency" => {
                if nilpotency.is_some() {
                    return Err(l.err(0, "nilpotency declared twice"));
                }
                let v = assignment(&l, "nilpotency", "L")?;
                nilpotency = Some(number(&l, v, "a positive integer")?);
                i += 1;
            }
            "constants" if l.text == "constants" => {
                if constants.is_some() {
                    return Err(l.err(0, "constants declared twice"));
                }
                let (body, next) = block(&ls, i)?;
                constants = Some((body, l));
                i = next;
            }
            _ => return Err(l.err(0, format!("unexpected `{}`", l.text))),
        }
    }
    let last = text.lines().count().max(1);
    let field = field.ok_or_else(|| at(last, "missing `field p = <prime>`"))?;
    match (quiver, constants) {
        (Some(_), Some(_)) => Err(at(last, "a file holds either a quiver or constants, not both")),
        (None, None) => Err(at(last, "missing `quiver` or `constants` block")),
        (Some((q, qline)), None) => {
            let nilpotency = nilpotency.ok_or_else(|| qline.err(0, "quiver given without `nilpotency L = <n>`"))?;
            if nilpotency == 0 {
                return Err(qline.err(0, "nilpotency L must be positive"));
            }
            let relations = relation_lines.iter().map(|l| parse_relation(l, &q, field)).collect::<Result<_, _>>()?;
            Ok(AlgebraSource::Quiver(Presentation { field, quiver: q, relations, nilpotency }))
        }
        (None, Some((body, chead))) => {
            if let Some(l) = relation_lines.first() {
                return Err(l.err(0, "relations need a quiver"));
            }
            Ok(AlgebraSource::Constants(parse_constants(&body, &chead, field)?))
        }
    }
}

fn is_name(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

fn parse_quiver(body: &[Line<'_>], head: &Line<'_>) -> Result<QuiverSpec, ParseError> {
    let mut vertices: Vec<String> = Vec::new();
    let mut arrows: Vec<(String, usize, usize)> = Vec::new();
    let mut have_vertices = false;
    for l in body {
        if let Some(rest) = l.text.strip_prefix("vertices:") {
            if have_vertices {
                return Err(l.err(0, "vertices listed twice"));
            }
            have_vertices = true;
            for v in rest.split_whitespace() {
                if !is_name(v) {
                    return Err(l.err(l.offset_of(v), format!("bad vertex name `{v}`")));
                }
                if vertices.iter().any(|w| w == v) {
                    return Err(l.err(l.offset_of(v), format!("duplicate vertex `{v}`")));
                }
                vertices.push(v.to_string());
            }
            continue;
        }
        let Some((name, ends)) = l.text.split_once(':') else {
            return Err(l.err(0, "expected `vertices: ...` or `<arrow>: <source> -> <target>`"));
        };
        let name = name.trim();
        if !is_name(name) {
            return Err(l.err(0, format!("bad arrow name `{name}`")));
        }
        if !have_vertices {
            return Err(l.err(0, "arrows must follow the vertex list"));
        }
        if vertices.iter().any(|v| v == name) || arrows.iter().any(|a| a.0 == name) {
            return Err(l.err(0, format!("name `{name}` already used")));
        }
        let Some((s, t)) = ends.split_once("->") else {
            return Err(l.err(l.offset_of(ends), "expected `<source> -> <target>`"));
        };
        let find = |part: &str| {
            let v = part.trim();
            vertices.iter().position(|w| w == v).ok_or_else(|| {
                l.err(l.offset_of(part) + (part.len() - part.trim_start().len()), format!("unknown vertex `{v}`"))
            })
        };
        let (si, ti) = (find(s)?, find(t)?);
        arrows.push((name.to_string(), si, ti));
    }
    if vertices.is_empty() {
        return Err(head.err(0, "quiver has no vertices"));
    }
    Ok(QuiverSpec { vertices, arrows })
}

/// Signed sum such as `c*b - 2 d*a + x`.
fn parse_relation(l: &Line<'_>, q: &QuiverSpec, f: Fp) -> Result<Relation, ParseError> {
    let text = l.text;
    let mut terms: Vec<(u32, Path)> = Vec::new();
    let mut sign = 1i64;
    let mut pos = 0;
    let bytes = text.as_bytes();
    let mut expect_term = true;
    while pos < bytes.len() {
        let c = bytes[pos] as char;
        if c.is_whitespace() {
            pos += 1;
            continue;
        }
        if c == '+' || c == '-' {
            if c == '-' {
                sign = -sign;
            }
            expect_term = true;
            pos += 1;
            continue;
        }
        if !expect_term {
            return Err(l.err(pos, "expected `+` or `-` between terms"));
        }
        let start = pos;
        while pos < bytes.len() && !matches!(bytes[pos] as char, '+' | '-') {
            pos += 1;
        }
        let chunk = text[start..pos].trim_end();
        let (coef, word, word_at) = match chunk.split_once(char::is_whitespace) {
            Some((c, w)) if c.chars().all(|ch| ch.is_ascii_digit()) => {
                let w = w.trim_start();
                (number::<i64>(l, c, "a coefficient")?, w, l.offset_of(w))
            }
            _ => (1, chunk, start),
        };
        if word.split('*').any(|p| p.trim().is_empty()) {
            return Err(l.err(word_at, format!("malformed word `{word}`")));
        }
        let path = q.parse_word(word).map_err(|e| l.err(word_at, e.to_string()))?;
        terms.push((f.from_i64(sign * coef), path));
        sign = 1;
        expect_term = false;
    }
    if terms.is_empty() || expect_term {
        return Err(l.err(text.len(), "relation ends without a term"));
    }
    let (s, t) = (terms[0].1.start, terms[0].1.end(q));
    for (_, p) in &terms[1..] {
        if p.start != s || p.end(q) != t {
            return Err(l.err(0, "relation terms are not parallel paths"));
        }
    }
    Ok(Relation { terms })
}

fn vector(l: &Line<'_>, s: &str, n: usize, f: Fp) -> Result<Vec<u32>, ParseError> {
    let parts: Vec<&str> = s.split_whitespace().collect();
    if parts.len() != n {
        return Err(l.err(l.offset_of(s.trim_start()), format!("expected {n} coordinates, found {}", parts.len())));
    }
    parts.iter().map(|p| number::<i64>(l, p, "an integer").map(|v| f.from_i64(v))).collect()
}

fn parse_constants(body: &[Line<'_>], head: &Line<'_>, f: Fp) -> Result<ConstantsSpec, ParseError> {
    let mut labels: Vec<String> = Vec::new();
    let mut unit: Option<Vec<u32>> = None;
    let mut idempotents = Vec::new();
    let mut products: Vec<Vec<Vec<u32>>> = Vec::new();
    for l in body {
        if let Some(rest) = l.text.strip_prefix("basis:") {
            if !labels.is_empty() {
                return Err(l.err(0, "basis listed twice"));
            }
            for b in rest.split_whitespace() {
                if !is_name(b) || labels.iter().any(|x| x == b) {
                    return Err(l.err(l.offset_of(b), format!("bad or duplicate basis label `{b}`")));
                }
                labels.push(b.to_string());
            }
            let n = labels.len();
            if n == 0 {
                return Err(l.err(0, "empty basis"));
            }
            products = vec![vec![vec![0; n]; n]; n];
            continue;
        }
        let n = labels.len();
        if n == 0 {
            return Err(l.err(0, "`basis:` must come first"));
        }
        if let Some(rest) = l.text.strip_prefix("unit:") {
            unit = Some(vector(l, rest, n, f)?);
        } else if let Some(rest) = l.text.strip_prefix("idempotent:") {
            idempotents.push(vector(l, rest, n, f)?);
        } else if let Some((lhs, rhs)) = l.text.split_once('=') {
            let Some((x, y)) = lhs.split_once('*') else {
                return Err(l.err(0, "expected `<label> * <label> = <coordinates>`"));
            };
            let find = |part: &str| {
                let name = part.trim();
                labels
                    .iter()
                    .position(|b| b == name)
                    .ok_or_else(|| l.err(l.offset_of(part.trim_start()), format!("unknown basis label `{name}`")))
            };
            let (i, j) = (find(x)?, find(y)?);
            products[i][j] = vector(l, rhs, n, f)?;
        } else {
            return Err(l.err(0, format!("unexpected `{}`", l.text)));
        }
    }
    if labels.is_empty() {
        return Err(head.err(0, "constants block has no `basis:`"));
    }
    let unit = unit.ok_or_else(|| head.err(0, "constants block has no `unit:`"))?;
    if idempotents.is_empty() {
        return Err(head.err(0, "constants block has no `idempotent:` lines"));
    }
    Ok(ConstantsSpec { field: f, labels, products, unit, idempotents })
}
