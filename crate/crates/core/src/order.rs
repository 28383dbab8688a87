//! Monomial and module term orders.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::ring::{Monomial, RingSpec, MAX_VARS};

/// A monomial times a basis vector of a free module.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Term {
    pub mono: Monomial,
    pub slot: u32,
}

impl Term {
    pub fn new(mono: Monomial, slot: usize) -> Self {
        Term { mono, slot: slot as u32 }
    }

    pub fn slot(&self) -> usize {
        self.slot as usize
    }

    pub fn divides(&self, o: &Term) -> bool {
        self.slot == o.slot && self.mono.divides(&o.mono)
    }

    pub fn lcm(&self, o: &Term) -> Term {
        debug_assert_eq!(self.slot, o.slot);
        Term { mono: self.mono.lcm(&o.mono), slot: self.slot }
    }
}

/// Linear weight on terms: `Σ vars[i]·e_i + slots[slot]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightRow {
    vars: [i64; MAX_VARS],
    slots: Vec<i64>,
}

impl WeightRow {
    pub fn new(vars: &[i64], slots: &[i64]) -> Self {
        let mut v = [0; MAX_VARS];
        v[..vars.len()].copy_from_slice(vars);
        WeightRow { vars: v, slots: slots.to_vec() }
    }

    #[inline]
    pub fn weigh(&self, t: &Term) -> i64 {
        let raw = t.mono.raw();
        let mut w = self.slots.get(t.slot()).copied().unwrap_or(0);
        for i in 0..MAX_VARS {
            w += self.vars[i] * raw[i] as i64;
        }
        w
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Tie {
    RevLex,
    Lex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Position {
    /// Compare monomials first, slots last.
    TermOverPosition,
    /// Compare slots first.
    PositionOverTerm,
}

/// A term order given by weight rows, a monomial tie-break and a slot rule.
/// Lower slot indices count as larger.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TermOrder {
    rows: Vec<WeightRow>,
    tie: Tie,
    position: Position,
}

impl TermOrder {
    pub fn new(rows: Vec<WeightRow>, tie: Tie, position: Position) -> Self {
        TermOrder { rows, tie, position }
    }

    /// Weight row giving the graded degree of a term.
    pub fn degree_row(ring: &RingSpec, slot_degrees: &[i64]) -> WeightRow {
        let w: Vec<i64> = ring.degrees().iter().map(|&d| d as i64).collect();
        WeightRow::new(&w, slot_degrees)
    }

    /// Graded reverse lexicographic order, term over position.
    pub fn degrevlex(ring: &RingSpec, slot_degrees: &[i64]) -> Self {
        TermOrder::new(
            vec![Self::degree_row(ring, slot_degrees)],
            Tie::RevLex,
            Position::TermOverPosition,
        )
    }

    /// Pure lexicographic order on monomials.
    pub fn lex() -> Self {
        TermOrder::new(Vec::new(), Tie::Lex, Position::TermOverPosition)
    }

    /// A copy with `row` compared before all existing rows.
    pub fn with_leading_row(&self, row: WeightRow) -> Self {
        let mut rows = Vec::with_capacity(self.rows.len() + 1);
        rows.push(row);
        rows.extend(self.rows.iter().cloned());
        TermOrder { rows, tie: self.tie, position: self.position }
    }

    /// A copy with `row` inserted at index `at`.
    pub fn with_row_at(&self, at: usize, row: WeightRow) -> Self {
        let mut o = self.clone();
        o.rows.insert(at, row);
        o
    }

    pub fn rows(&self) -> &[WeightRow] {
        &self.rows
    }

    #[inline]
    fn cmp_mono_tie(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (ra, rb) = (a.raw(), b.raw());
        match self.tie {
            Tie::RevLex => {
                for i in (0..MAX_VARS).rev() {
                    if ra[i] != rb[i] {
                        return rb[i].cmp(&ra[i]);
                    }
                }
                Ordering::Equal
            }
            Tie::Lex => {
                for i in 0..MAX_VARS {
                    if ra[i] != rb[i] {
                        return ra[i].cmp(&rb[i]);
                    }
                }
                Ordering::Equal
            }
        }
    }

    #[inline]
    pub fn cmp(&self, a: &Term, b: &Term) -> Ordering {
        if self.position == Position::PositionOverTerm && a.slot != b.slot {
            return b.slot.cmp(&a.slot);
        }
        for r in &self.rows {
            match r.weigh(a).cmp(&r.weigh(b)) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        match self.cmp_mono_tie(&a.mono, &b.mono) {
            Ordering::Equal => b.slot.cmp(&a.slot),
            o => o,
        }
    }

    pub fn cmp_mono(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.cmp(&Term::new(*a, 0), &Term::new(*b, 0))
    }
}

/// Named orders for [`compare_monomials`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderKind {
    DegRevLex,
    Lex,
    /// Degrevlex on monomials, slots last; the trailing entry of each
    /// exponent list is read as the slot index.
    TermOverPosition,
}

/// Compares two exponent vectors (standard grading).
pub fn compare_monomials(kind: OrderKind, a: &[u32], b: &[u32]) -> Result<Ordering> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch(a.len(), b.len()));
    }
    let (a, b, sa, sb) = match kind {
        OrderKind::TermOverPosition => {
            let n = a.len().checked_sub(1).ok_or(Error::EmptyInput)?;
            (&a[..n], &b[..n], a[n], b[n])
        }
        _ => (a, b, 0, 0),
    };
    if a.len() > MAX_VARS {
        return Err(Error::LengthMismatch(a.len(), MAX_VARS));
    }
    let ta = Term { mono: Monomial::from_exps(a), slot: sa };
    let tb = Term { mono: Monomial::from_exps(b), slot: sb };
    let ord = match kind {
        OrderKind::Lex => TermOrder::lex(),
        _ => TermOrder::new(
            vec![WeightRow::new(&[1; MAX_VARS], &[])],
            Tie::RevLex,
            Position::TermOverPosition,
        ),
    };
    Ok(ord.cmp(&ta, &tb))
}
