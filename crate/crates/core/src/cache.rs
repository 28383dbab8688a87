//! Content-addressed on-disk cache of Gröbner bases.
//!
//! Layout: `<dir>/<first two hex digits>/<sha256>.bin`. Each file starts with
//! a format header line; unreadable or mismatching entries are evicted and
//! treated as misses. Stores write a temporary file and rename it into place.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::sync::atomic::Ordering;

use sha2::{Digest, Sha256};

use crate::context::Stats;
use crate::module::{FreeModule, ModuleElement};
use crate::order::{Term, TermOrder};
use crate::rational::Rat;
use crate::ring::{Monomial, MAX_VARS};
use crate::vector::Vector;

const HEADER: &str = "hdeg-gb-cache v1";

#[derive(Clone, Debug)]
pub struct GbCache {
    dir: PathBuf,
}

/// Hash of everything that determines a basis.
pub fn gb_key(ambient: &FreeModule, order: &TermOrder, gens: &[ModuleElement]) -> String {
    let mut h = Sha256::new();
    h.update(format!("{:?}\n{:?}\n{:?}\n", ambient.ring.spec(), ambient.degrees, order));
    for g in gens {
        h.update(encode_vector(g));
        h.update(b";\n");
    }
    hex::encode(h.finalize())
}

fn encode_vector(v: &ModuleElement) -> String {
    let mut s = String::new();
    for (t, c) in &v.terms {
        let _ = write!(s, "{}", t.slot);
        let last = t.mono.raw().iter().rposition(|&x| x > 0).map_or(0, |p| p + 1);
        for x in &t.mono.raw()[..last] {
            let _ = write!(s, ",{x}");
        }
        let _ = write!(s, ":{c} ");
    }
    s
}

fn decode_vector(line: &str) -> Option<ModuleElement> {
    let mut terms = Vec::new();
    for tok in line.split_whitespace() {
        let (mono, coeff) = tok.split_once(':')?;
        let mut parts = mono.split(',');
        let slot: u32 = parts.next()?.parse().ok()?;
        let mut e = Vec::new();
        for p in parts {
            e.push(p.parse::<u32>().ok()?);
        }
        if e.len() > MAX_VARS || e.iter().any(|&x| x > u16::MAX as u32) {
            return None;
        }
        let c: Rat = coeff.parse().ok()?;
        if c.is_zero() {
            return None;
        }
        terms.push((Term { mono: Monomial::from_exps(&e), slot }, c));
    }
    Some(Vector { terms })
}

impl GbCache {
    pub fn new(dir: impl Into<PathBuf>) -> std::io::Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(GbCache { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, key: &str) -> PathBuf {
        self.dir.join(&key[..2]).join(format!("{key}.bin"))
    }

    pub fn load(&self, key: &str, stats: &Stats) -> Option<(Vec<ModuleElement>, Vec<ModuleElement>)> {
        let path = self.path_for(key);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(_) => {
                stats.cache_misses.fetch_add(1, Ordering::Relaxed);
                return None;
            }
        };
        match parse_entry(&text, key) {
            Some(v) => {
                stats.cache_hits.fetch_add(1, Ordering::Relaxed);
                Some(v)
            }
            None => {
                let _ = fs::remove_file(&path);
                stats.cache_evictions.fetch_add(1, Ordering::Relaxed);
                stats.cache_misses.fetch_add(1, Ordering::Relaxed);
                None
            }
        }
    }

    pub fn store(&self, key: &str, elements: &[ModuleElement], minimal: &[ModuleElement], stats: &Stats) {
        let mut body = format!("{HEADER}\n{key}\n{} {}\n", elements.len(), minimal.len());
        for v in elements.iter().chain(minimal) {
            body.push_str(&encode_vector(v));
            body.push('\n');
        }
        body.push_str("end\n");
        let path = self.path_for(key);
        let Some(parent) = path.parent() else { return };
        if fs::create_dir_all(parent).is_err() {
            return;
        }
        let tmp = parent.join(format!(".{key}.{}.tmp", std::process::id()));
        let ok = fs::File::create(&tmp)
            .and_then(|mut f| f.write_all(body.as_bytes()).and_then(|_| f.sync_all()))
            .and_then(|_| fs::rename(&tmp, &path));
        if ok.is_ok() {
            stats.cache_stores.fetch_add(1, Ordering::Relaxed);
        } else {
            let _ = fs::remove_file(&tmp);
        }
    }
}

fn parse_entry(text: &str, key: &str) -> Option<(Vec<ModuleElement>, Vec<ModuleElement>)> {
    let mut lines = text.lines();
    if lines.next()? != HEADER || lines.next()? != key {
        return None;
    }
    let (a, b) = lines.next()?.split_once(' ')?;
    let (na, nb): (usize, usize) = (a.parse().ok()?, b.parse().ok()?);
    let mut all = Vec::with_capacity(na + nb);
    for _ in 0..na + nb {
        all.push(decode_vector(lines.next()?)?);
    }
    if lines.next()? != "end" || lines.next().is_some() {
        return None;
    }
    let minimal = all.split_off(na);
    Some((all, minimal))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vector_encoding_roundtrip() {
        let v = Vector {
            terms: vec![
                (Term { mono: Monomial::from_exps(&[1, 0, 2]), slot: 1 }, Rat::new(-3, 2)),
                (Term { mono: Monomial::one(), slot: 0 }, Rat::one()),
            ],
        };
        assert_eq!(decode_vector(&encode_vector(&v)), Some(v));
    }
}
