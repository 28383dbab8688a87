//! Problem files.
//!
//! ```text
//! ring R vars X,Y,Z;
//! ideal I = X*Y, X*Z;            # or: intersect(J, K)
//! module M = quotient(R, I);     # or: presentation rows=2 cols=1 [ X, Y^2 ]
//! paramideal Q = X - Y, Z;
//! ```
//!
//! Statements end with `;`, `#` starts a comment running to the end of the
//! line. Presentation entries are comma-separated in row-major order.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use hdeg_core::module::Submodule;
use hdeg_core::ops::intersection;
use hdeg_core::parse::parse_polynomial;
use hdeg_core::{Context, Error as CoreError, FreeModule, ModulePresentation, Polynomial, Ring};
use sha2::{Digest, Sha256};

use crate::error::CliError;

#[derive(Clone, Debug)]
pub struct ProblemInstance {
    pub ring_name: String,
    pub ring: Ring,
    pub module_name: String,
    pub module: ModulePresentation,
    pub param_name: String,
    pub params: Vec<Polynomial>,
}

impl ProblemInstance {
    /// Canonical text of the instance: the same for inputs differing only in
    /// whitespace, comments or term order inside polynomials.
    pub fn canonical(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "ring {} vars {};", self.ring_name, self.ring.names().join(","));
        let f = &self.module.ambient;
        let degs: Vec<String> = f.degrees.iter().map(|d| d.to_string()).collect();
        let _ = writeln!(s, "module {} degrees [{}]", self.module_name, degs.join(","));
        for r in &self.module.relations {
            let comps: Vec<String> = f.components(r).iter().map(|p| p.to_string()).collect();
            let _ = writeln!(s, "  relation ({})", comps.join(", "));
        }
        let q: Vec<String> = self.params.iter().map(|p| p.to_string()).collect();
        let _ = writeln!(s, "paramideal {} = {};", self.param_name, q.join(", "));
        s
    }

    /// SHA-256 of [`canonical`](Self::canonical), hex encoded.
    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(self.canonical().as_bytes()))
    }
}

/// One `;`-terminated statement with its byte offset in the file.
struct Statement<'a> {
    text: &'a str,
    offset: usize,
}

struct Source<'a> {
    text: &'a str,
}

impl<'a> Source<'a> {
    fn line_col(&self, offset: usize) -> (usize, usize) {
        let before = &self.text[..offset.min(self.text.len())];
        let line = before.matches('\n').count() + 1;
        let col = before.rfind('\n').map_or(before.chars().count(), |p| before[p + 1..].chars().count()) + 1;
        (line, col)
    }

    fn error(&self, offset: usize, message: impl Into<String>) -> CliError {
        let (line, column) = self.line_col(offset);
        CliError::Syntax { line, column, message: message.into() }
    }

    /// Comments blanked out with spaces so offsets stay valid.
    fn strip_comments(text: &str) -> String {
        let mut out = String::with_capacity(text.len());
        let mut in_comment = false;
        for ch in text.chars() {
            if ch == '#' {
                in_comment = true;
            }
            if ch == '\n' {
                in_comment = false;
            }
            if in_comment {
                for _ in 0..ch.len_utf8() {
                    out.push(' ');
                }
            } else {
                out.push(ch);
            }
        }
        out
    }
}

fn split_statements(clean: &str) -> (Vec<Statement<'_>>, Option<usize>) {
    let mut out = Vec::new();
    let mut start = 0;
    for (i, ch) in clean.char_indices() {
        if ch == ';' {
            out.push(Statement { text: &clean[start..i], offset: start });
            start = i + 1;
        }
    }
    let rest = clean[start..].trim();
    let dangling = (!rest.is_empty()).then(|| start + clean[start..].find(|c: char| !c.is_whitespace()).unwrap_or(0));
    (out, dangling)
}

/// Cursor inside one statement.
struct Cur<'s, 'a> {
    src: &'s Source<'a>,
    text: &'a str,
    base: usize,
    pos: usize,
}

impl<'s, 'a> Cur<'s, 'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.text[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn at(&self) -> usize {
        self.base + self.pos
    }

    fn err(&self, message: impl Into<String>) -> CliError {
        self.src.error(self.at(), message)
    }

    fn word(&mut self) -> Result<&'a str, CliError> {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.text[self.pos..].chars().next() {
            if !(c.is_ascii_alphanumeric() || c == '_') {
                break;
            }
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a name"));
        }
        Ok(&self.text[start..self.pos])
    }

    fn keyword(&mut self, kw: &str) -> Result<(), CliError> {
        self.skip_ws();
        let save = self.pos;
        match self.word() {
            Ok(w) if w == kw => Ok(()),
            _ => {
                self.pos = save;
                Err(self.err(format!("expected `{kw}`")))
            }
        }
    }

    fn punct(&mut self, c: char) -> Result<(), CliError> {
        self.skip_ws();
        if self.text[self.pos..].starts_with(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.err(format!("expected `{c}`")))
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn integer(&mut self) -> Result<usize, CliError> {
        self.skip_ws();
        let start = self.pos;
        while self.text[self.pos..].starts_with(|c: char| c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.text[start..self.pos].parse().map_err(|_| {
            self.pos = start;
            self.err("expected a non-negative integer")
        })
    }

    fn end(&mut self) -> Result<(), CliError> {
        self.skip_ws();
        if self.pos < self.text.len() {
            return Err(self.err("unexpected text before `;`"));
        }
        Ok(())
    }

    /// Text up to (not including) the next stop character at this level.
    fn chunk(&mut self, stops: &[char]) -> (usize, &'a str) {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.text[self.pos..].chars().next() {
            if stops.contains(&c) {
                break;
            }
            self.pos += c.len_utf8();
        }
        (self.base + start, self.text[start..self.pos].trim_end())
    }

    fn poly(&mut self, ring: &Ring, stops: &[char]) -> Result<Polynomial, CliError> {
        let (at, text) = self.chunk(stops);
        if text.is_empty() {
            return Err(self.src.error(at, "expected a polynomial"));
        }
        parse_polynomial(text, ring).map_err(|e| match e {
            CoreError::Syntax { column, message } => self.src.error(at + column - 1, message),
            CoreError::UnknownVariable(v) => {
                let off = text.find(v.as_str()).unwrap_or(0);
                let (line, column) = self.src.line_col(at + off);
                CliError::UnknownVariable { name: v, line, column }
            }
            other => self.src.error(at, other.to_string()),
        })
    }

    fn poly_list(&mut self, ring: &Ring, close: Option<char>) -> Result<Vec<Polynomial>, CliError> {
        let mut stops = vec![','];
        stops.extend(close);
        let mut out = vec![self.poly(ring, &stops)?];
        while self.peek() == Some(',') {
            self.pos += 1;
            out.push(self.poly(ring, &stops)?);
        }
        Ok(out)
    }
}

fn ideal_intersection(ring: &Ring, a: &[Polynomial], b: &[Polynomial]) -> Result<Vec<Polynomial>, CoreError> {
    let ctx = Context::default();
    let f = FreeModule::new(ring, vec![0]);
    let sa = Submodule::new(f.clone(), a.iter().map(|p| p.to_vector(0)).collect())?;
    let sb = Submodule::new(f.clone(), b.iter().map(|p| p.to_vector(0)).collect())?;
    let cap = intersection(&ctx, &sa, &sb)?;
    Ok(cap.gens.iter().map(|v| f.component(v, 0)).collect())
}

/// Parses and validates a problem file.
pub fn parse_instance(text: &str) -> Result<ProblemInstance, CliError> {
    let clean = Source::strip_comments(text);
    let src = Source { text: &clean };
    let (stmts, dangling) = split_statements(&clean);
    if let Some(at) = dangling {
        return Err(src.error(at, "statement is missing its terminating `;`"));
    }
    let mut ring: Option<(String, Ring)> = None;
    let mut ideals: BTreeMap<String, Vec<Polynomial>> = BTreeMap::new();
    let mut module: Option<(String, ModulePresentation)> = None;
    let mut params: Option<(String, Vec<Polynomial>)> = None;
    for st in &stmts {
        if st.text.trim().is_empty() {
            continue;
        }
        let mut c = Cur { src: &src, text: st.text, base: st.offset, pos: 0 };
        let head_at = {
            c.skip_ws();
            c.at()
        };
        let head = c.word()?;
        let need_ring = |c: &Cur| -> Result<Ring, CliError> {
            ring.as_ref().map(|(_, r)| r.clone()).ok_or_else(|| c.src.error(head_at, "no ring declared yet"))
        };
        match head {
            "ring" => {
                if ring.is_some() {
                    return Err(src.error(head_at, "only one ring may be declared"));
                }
                let name = c.word()?.to_string();
                c.keyword("vars")?;
                let mut vars = vec![c.word()?.to_string()];
                while c.peek() == Some(',') {
                    c.pos += 1;
                    vars.push(c.word()?.to_string());
                }
                c.end()?;
                let r = Ring::new(&vars).map_err(|e| src.error(head_at, e.to_string()))?;
                ring = Some((name, r));
            }
            "ideal" => {
                let r = need_ring(&c)?;
                let name = c.word()?.to_string();
                c.punct('=')?;
                let save = c.pos;
                let gens = if c.word().ok() == Some("intersect") && c.peek() == Some('(') {
                    c.punct('(')?;
                    let a_at = c.at();
                    let a = c.word()?;
                    c.punct(',')?;
                    let b_at = c.at();
                    let b = c.word()?;
                    c.punct(')')?;
                    c.end()?;
                    let ga = ideals.get(a).ok_or_else(|| src.error(a_at, format!("unknown ideal `{a}`")))?;
                    let gb = ideals.get(b).ok_or_else(|| src.error(b_at, format!("unknown ideal `{b}`")))?;
                    ideal_intersection(&r, ga, gb).map_err(|e| src.error(head_at, e.to_string()))?
                } else {
                    c.pos = save;
                    let g = c.poly_list(&r, None)?;
                    c.end()?;
                    g
                };
                ideals.insert(name, gens);
            }
            "module" => {
                let r = need_ring(&c)?;
                if module.is_some() {
                    return Err(src.error(head_at, "only one module may be declared"));
                }
                let name = c.word()?.to_string();
                c.punct('=')?;
                let kind_at = {
                    c.skip_ws();
                    c.at()
                };
                let m = match c.word()? {
                    "quotient" => {
                        c.punct('(')?;
                        let rn_at = c.at();
                        let rn = c.word()?;
                        if ring.as_ref().map(|(n, _)| n.as_str()) != Some(rn) {
                            return Err(src.error(rn_at, format!("unknown ring `{rn}`")));
                        }
                        c.punct(',')?;
                        let in_at = c.at();
                        let iname = c.word()?;
                        c.punct(')')?;
                        c.end()?;
                        let gens =
                            ideals.get(iname).ok_or_else(|| src.error(in_at, format!("unknown ideal `{iname}`")))?;
                        ModulePresentation::quotient_ring(&r, gens).map_err(|e| src.error(head_at, e.to_string()))?
                    }
                    "presentation" => {
                        c.keyword("rows")?;
                        c.punct('=')?;
                        let rows = c.integer()?;
                        c.keyword("cols")?;
                        c.punct('=')?;
                        let cols = c.integer()?;
                        c.punct('[')?;
                        let entries = if c.peek() == Some(']') { Vec::new() } else { c.poly_list(&r, Some(']'))? };
                        c.punct(']')?;
                        c.end()?;
                        if rows == 0 {
                            return Err(src.error(kind_at, "a presentation needs at least one row"));
                        }
                        if entries.len() != rows * cols {
                            return Err(src.error(
                                kind_at,
                                format!("expected {} entries, found {}", rows * cols, entries.len()),
                            ));
                        }
                        ModulePresentation::from_matrix(&r, rows, cols, &entries)
                            .map_err(|e| src.error(kind_at, e.to_string()))?
                    }
                    other => {
                        return Err(src.error(kind_at, format!("expected `quotient` or `presentation`, found `{other}`")))
                    }
                };
                module = Some((name, m));
            }
            "paramideal" => {
                let r = need_ring(&c)?;
                let name = c.word()?.to_string();
                c.punct('=')?;
                let q = c.poly_list(&r, None)?;
                c.end()?;
                for p in &q {
                    if !p.is_homogeneous() {
                        return Err(src.error(head_at, format!("parameter `{p}` is not homogeneous")));
                    }
                }
                params = Some((name, q));
            }
            other => return Err(src.error(head_at, format!("unknown statement `{other}`"))),
        }
    }
    let end = clean.len();
    let (ring_name, ring) = ring.ok_or_else(|| src.error(end, "no ring declared"))?;
    let (module_name, module) = module.ok_or_else(|| src.error(end, "no module declared"))?;
    let (param_name, params) = params.ok_or_else(|| src.error(end, "no paramideal declared"))?;
    Ok(ProblemInstance { ring_name, ring, module_name, module, param_name, params })
}

/// Problem file text for a module and parameters; quotient rings use the
/// `quotient` form, everything else an explicit presentation.
pub fn render_instance(module: &ModulePresentation, params: &[Polynomial]) -> String {
    let ring = module.ring();
    let mut s = format!("ring R vars {};\n", ring.names().join(","));
    let f = &module.ambient;
    if f.rank() == 1 && f.degrees[0] == 0 && !module.relations.is_empty() {
        let gens: Vec<String> = module.relations.iter().map(|r| f.component(r, 0).to_string()).collect();
        let _ = writeln!(s, "ideal I = {};", gens.join(", "));
        s.push_str("module M = quotient(R, I);\n");
    } else {
        let rows = f.rank();
        let cols = module.relations.len();
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for rel in &module.relations {
                entries.push(f.component(rel, r).to_string());
            }
        }
        let _ = writeln!(s, "module M = presentation rows={rows} cols={cols} [ {} ];", entries.join(", "));
    }
    let q: Vec<String> = params.iter().map(|p| p.to_string()).collect();
    let _ = writeln!(s, "paramideal Q = {};", q.join(", "));
    s
}
