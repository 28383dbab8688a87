//! Sparse elements of free modules as sorted term lists.

use std::cmp::Ordering;

use crate::field::Field;
use crate::order::{Term, TermOrder};
use crate::ring::Monomial;

/// Element of a free module: terms sorted strictly decreasing in some
/// [`TermOrder`] chosen by the caller, no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vector<C> {
    pub terms: Vec<(Term, C)>,
}

impl<C: Field> Default for Vector<C> {
    fn default() -> Self {
        Vector::zero()
    }
}

impl<C: Field> Vector<C> {
    pub fn zero() -> Self {
        Vector { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term(t: Term, c: C) -> Self {
        if c.is_zero() {
            Vector::zero()
        } else {
            Vector { terms: vec![(t, c)] }
        }
    }

    pub fn basis(slot: usize) -> Self {
        Vector::term(Term::new(Monomial::one(), slot), C::one())
    }

    pub fn lead(&self) -> Option<&(Term, C)> {
        self.terms.first()
    }

    pub fn lead_term(&self) -> Option<Term> {
        self.terms.first().map(|(t, _)| *t)
    }

    /// Sorts and merges arbitrary terms.
    pub fn from_terms(mut terms: Vec<(Term, C)>, ord: &TermOrder) -> Self {
        terms.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        let mut out: Vec<(Term, C)> = Vec::with_capacity(terms.len());
        for (t, c) in terms {
            match out.last_mut() {
                Some((lt, lc)) if *lt == t => {
                    *lc = lc.add(&c);
                    if lc.is_zero() {
                        out.pop();
                    }
                }
                _ => {
                    if !c.is_zero() {
                        out.push((t, c));
                    }
                }
            }
        }
        Vector { terms: out }
    }

    pub fn resort(&self, ord: &TermOrder) -> Self {
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        Vector { terms }
    }

    pub fn is_sorted(&self, ord: &TermOrder) -> bool {
        self.terms.windows(2).all(|w| ord.cmp(&w[0].0, &w[1].0) == Ordering::Greater)
    }

    /// `self + c·m·other` with both operands sorted in `ord`.
    pub fn add_scaled(&self, c: &C, m: &Monomial, other: &Self, ord: &TermOrder) -> Self {
        Vector { terms: merge_scaled(&self.terms, c, m, &other.terms, ord) }
    }

    pub fn add(&self, o: &Self, ord: &TermOrder) -> Self {
        self.add_scaled(&C::one(), &Monomial::one(), o, ord)
    }

    pub fn sub(&self, o: &Self, ord: &TermOrder) -> Self {
        self.add_scaled(&C::one().neg(), &Monomial::one(), o, ord)
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Vector::zero();
        }
        Vector { terms: self.terms.iter().map(|(t, x)| (*t, x.mul(c))).collect() }
    }

    pub fn neg(&self) -> Self {
        Vector { terms: self.terms.iter().map(|(t, x)| (*t, x.neg())).collect() }
    }

    /// Multiplication by a monomial keeps the order.
    pub fn mul_mono(&self, m: &Monomial) -> Self {
        Vector {
            terms: self
                .terms
                .iter()
                .map(|(t, x)| (Term { mono: t.mono.mul(m), slot: t.slot }, x.clone()))
                .collect(),
        }
    }

    /// Scales so the leading coefficient is one.
    pub fn monic(&self) -> Self {
        match self.lead() {
            Some((_, c)) if !c.is_one() => self.scale(&c.inv()),
            _ => self.clone(),
        }
    }

    /// Relabels slots and re-sorts.
    pub fn map_slots(&self, f: impl Fn(usize) -> usize, ord: &TermOrder) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(t, c)| (Term::new(t.mono, f(t.slot())), c.clone()))
            .collect();
        Vector::from_terms(terms, ord)
    }

    /// Keeps the terms whose slot satisfies `keep`, relabelled by `f`.
    pub fn filter_slots(
        &self,
        keep: impl Fn(usize) -> bool,
        f: impl Fn(usize) -> usize,
        ord: &TermOrder,
    ) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(t, _)| keep(t.slot()))
            .map(|(t, c)| (Term::new(t.mono, f(t.slot())), c.clone()))
            .collect();
        Vector::from_terms(terms, ord)
    }

    pub fn max_slot(&self) -> Option<usize> {
        self.terms.iter().map(|(t, _)| t.slot()).max()
    }

    pub fn map_coeffs<D: Field>(&self, f: impl Fn(&C) -> Option<D>) -> Option<Vector<D>> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (t, c) in &self.terms {
            let d = f(c)?;
            if !d.is_zero() {
                terms.push((*t, d));
            }
        }
        Some(Vector { terms })
    }
}

/// Merge of `a + c·m·b` for sorted term lists.
pub(crate) fn merge_scaled<C: Field>(
    a: &[(Term, C)],
    c: &C,
    m: &Monomial,
    b: &[(Term, C)],
    ord: &TermOrder,
) -> Vec<(Term, C)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let mut j = 0;
    let shifted = |k: usize| -> Term {
        let t = b[k].0;
        Term { mono: t.mono.mul(m), slot: t.slot }
    };
    let mut bj = if b.is_empty() { None } else { Some(shifted(0)) };
    while i < a.len() {
        let Some(tb) = bj else { break };
        match ord.cmp(&a[i].0, &tb) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((tb, b[j].1.mul(c)));
                j += 1;
                bj = if j < b.len() { Some(shifted(j)) } else { None };
            }
            Ordering::Equal => {
                let s = a[i].1.add(&b[j].1.mul(c));
                if !s.is_zero() {
                    out.push((tb, s));
                }
                i += 1;
                j += 1;
                bj = if j < b.len() { Some(shifted(j)) } else { None };
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    while j < b.len() {
        out.push((shifted(j), b[j].1.mul(c)));
        j += 1;
    }
    out
}
