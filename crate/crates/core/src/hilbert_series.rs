//! Hilbert series of graded modules from their leading-term modules.

use std::collections::BTreeMap;

use crate::context::Context;
use crate::error::Result;
use crate::groebner::{groebner_basis, GroebnerBasis};
use crate::module::{FreeModule, ModulePresentation};
use crate::order::Term;
use crate::ring::{Monomial, MAX_VARS};

fn add_into(acc: &mut Vec<i128>, p: &[i128], shift: usize, sign: i128) {
    if acc.len() < p.len() + shift {
        acc.resize(p.len() + shift, 0);
    }
    for (i, &c) in p.iter().enumerate() {
        acc[i + shift] = acc[i + shift]
            .checked_add(sign.checked_mul(c).expect("overflow"))
            .expect("Hilbert series coefficient overflow");
    }
}

fn trim(p: &mut Vec<i128>) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

/// Minimal generators of a monomial ideal.
pub fn minimalize(gens: &[Monomial]) -> Vec<Monomial> {
    let mut v: Vec<Monomial> = gens.to_vec();
    v.sort_by_key(|m| m.total());
    v.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(v.len());
    for m in v {
        if !out.iter().any(|g| g.divides(&m)) {
            out.push(m);
        }
    }
    out
}

/// Numerator `K(t)` with `HS(S/I) = K(t) / ∏(1 - t^{w_i})`.
pub fn monomial_numerator(gens: &[Monomial], weights: &[u32]) -> Vec<i128> {
    let gens = minimalize(gens);
    numerator_rec(gens, weights)
}

fn wdeg(m: &Monomial, weights: &[u32]) -> usize {
    weights.iter().enumerate().map(|(i, &w)| w as usize * m.exp(i) as usize).sum()
}

fn numerator_rec(gens: Vec<Monomial>, weights: &[u32]) -> Vec<i128> {
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|g| g.is_one()) {
        return vec![];
    }
    // Base case: pairwise coprime generators.
    let mut seen = [false; MAX_VARS];
    let mut coprime = true;
    'outer: for g in &gens {
        for i in g.support() {
            if seen[i] {
                coprime = false;
                break 'outer;
            }
        }
        for i in g.support() {
            seen[i] = true;
        }
    }
    if coprime {
        let mut acc = vec![1i128];
        for g in &gens {
            let mut next = acc.clone();
            add_into(&mut next, &acc, wdeg(g, weights), -1);
            acc = next;
        }
        trim(&mut acc);
        return acc;
    }
    // Pivot on the variable appearing in most non-pure generators.
    let mut counts = [0usize; MAX_VARS];
    for g in gens.iter().filter(|g| g.pure_power().is_none()) {
        for i in g.support() {
            counts[i] += 1;
        }
    }
    let var = (0..MAX_VARS).max_by_key(|&i| (counts[i], std::cmp::Reverse(i))).expect("var");
    let mut exps: Vec<u16> = gens
        .iter()
        .filter(|g| g.pure_power().is_none() && g.exp(var) > 0)
        .map(|g| g.exp(var))
        .collect();
    exps.sort();
    let e = exps[exps.len() / 2];
    let p = Monomial::var(var, e);
    let mut plus = gens.clone();
    plus.push(p);
    let colon: Vec<Monomial> = gens
        .iter()
        .map(|g| {
            let mut m = *g;
            m.set_exp(var, g.exp(var).saturating_sub(e));
            m
        })
        .collect();
    let mut acc = numerator_rec(minimalize(&plus), weights);
    let c = numerator_rec(minimalize(&colon), weights);
    add_into(&mut acc, &c, e as usize * weights[var] as usize, 1);
    trim(&mut acc);
    acc
}

/// `t^shift · numerator(t) / ∏(1 - t^{w_i})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertSeries {
    pub shift: i64,
    pub numerator: Vec<i128>,
    pub weights: Vec<u32>,
}

impl HilbertSeries {
    /// Series of `⊕ S/I_slot (-d_slot)` from per-slot leading monomials.
    pub fn from_leading_terms(ring_weights: &[u32], slot_degrees: &[i64], leads: &[Term]) -> Self {
        let mut per_slot: BTreeMap<usize, Vec<Monomial>> = BTreeMap::new();
        for t in leads {
            per_slot.entry(t.slot()).or_default().push(t.mono);
        }
        let shift = slot_degrees.iter().copied().min().unwrap_or(0);
        let mut acc: Vec<i128> = Vec::new();
        for (s, &d) in slot_degrees.iter().enumerate() {
            let gens = per_slot.get(&s).cloned().unwrap_or_default();
            let k = monomial_numerator(&gens, ring_weights);
            add_into(&mut acc, &k, (d - shift) as usize, 1);
        }
        trim(&mut acc);
        HilbertSeries { shift, numerator: acc, weights: ring_weights.to_vec() }
    }

    pub fn of_basis(gb: &GroebnerBasis) -> Self {
        Self::from_leading_terms(gb.ambient.ring.degrees(), &gb.ambient.degrees, &gb.leading_terms())
    }

    /// Series with all slot degrees replaced by zero, for the filtration by
    /// powers of the ideal of all variables.
    pub fn flattened(gb: &GroebnerBasis) -> Self {
        let zeros = vec![0; gb.ambient.rank()];
        Self::from_leading_terms(gb.ambient.ring.degrees(), &zeros, &gb.leading_terms())
    }

    pub fn nvars(&self) -> usize {
        self.weights.len()
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_empty()
    }

    /// Order of vanishing of the numerator at `t = 1` and the cofactor.
    fn split_at_one(&self) -> (usize, Vec<i128>) {
        let mut p = self.numerator.clone();
        let mut k = 0;
        while !p.is_empty() && p.iter().sum::<i128>() == 0 {
            let mut q = Vec::with_capacity(p.len() - 1);
            let mut run = 0i128;
            for &c in &p[..p.len() - 1] {
                run += c;
                q.push(run);
            }
            p = q;
            trim(&mut p);
            k += 1;
        }
        (k, p)
    }

    /// Krull dimension; `None` for the zero module.
    pub fn dim(&self) -> Option<usize> {
        if self.is_zero() {
            return None;
        }
        Some(self.nvars() - self.split_at_one().0)
    }

    /// `h(t)` with series `t^shift h(t) / (1-t)^dim` (standard grading).
    pub fn h_polynomial(&self) -> Vec<i128> {
        assert!(self.weights.iter().all(|&w| w == 1), "standard grading required");
        self.split_at_one().1
    }

    /// Multiplicity (degree) of a module over a standard-graded ring; zero
    /// for the zero module.
    pub fn multiplicity(&self) -> i128 {
        if self.is_zero() {
            return 0;
        }
        self.h_polynomial().iter().sum()
    }

    /// Dimension of the homogeneous component of degree `k`.
    pub fn coefficient(&self, k: i64) -> i128 {
        let top = k - self.shift;
        if top < 0 || self.is_zero() {
            return 0;
        }
        let top = top as usize;
        let denom = inverse_denominator(&self.weights, top);
        (0..=top.min(self.numerator.len().saturating_sub(1)))
            .map(|i| self.numerator[i] * denom[top - i])
            .sum()
    }

    /// Whether both series have the same coefficients in every degree.
    pub fn same_function(&self, other: &HilbertSeries) -> bool {
        let lo = self.shift.min(other.shift);
        let span = self.numerator.len().max(other.numerator.len()) as i64;
        let w = self.weights.iter().chain(other.weights.iter()).map(|&w| w as i64).sum::<i64>();
        (lo..=lo + span + w + 1).all(|k| self.coefficient(k) == other.coefficient(k))
    }

    /// Total dimension for a module of finite length.
    pub fn length(&self) -> Option<i128> {
        match self.dim() {
            None => Some(0),
            Some(0) => {
                let (_, h) = self.split_at_one();
                // The series is a polynomial; its value at 1 is the length.
                let total: i128 = h.iter().sum();
                let w: i128 = self.weights.iter().map(|&w| w as i128).product();
                Some(total / w)
            }
            Some(_) => None,
        }
    }
}

/// Coefficients of `1/∏(1 - t^{w_i})` up to degree `top`.
fn inverse_denominator(weights: &[u32], top: usize) -> Vec<i128> {
    let mut c = vec![0i128; top + 1];
    c[0] = 1;
    for &w in weights {
        let w = w as usize;
        for k in w..=top {
            c[k] += c[k - w];
        }
    }
    c
}

pub fn hilbert_series_of_free(f: &FreeModule) -> HilbertSeries {
    HilbertSeries::from_leading_terms(f.ring.degrees(), &f.degrees, &[])
}

/// Hilbert series of `F/N` via a Gröbner basis in the default order.
pub fn hilbert_series(ctx: &Context, m: &ModulePresentation) -> Result<HilbertSeries> {
    let gb = groebner_basis(ctx, &m.relations_submodule())?;
    Ok(HilbertSeries::of_basis(&gb))
}

/// Euler characteristic of graded ranks: the series of a module with the
/// given free resolution degrees.
pub fn series_from_betti(weights: &[u32], modules: &[Vec<i64>]) -> HilbertSeries {
    let shift = modules.iter().flatten().copied().min().unwrap_or(0);
    let mut acc: Vec<i128> = Vec::new();
    for (i, degs) in modules.iter().enumerate() {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        for &d in degs {
            add_into(&mut acc, &[1], (d - shift) as usize, sign);
        }
    }
    trim(&mut acc);
    let mut hs = HilbertSeries { shift, numerator: acc, weights: weights.to_vec() };
    if hs.numerator.is_empty() {
        hs.shift = 0;
    }
    hs
}
