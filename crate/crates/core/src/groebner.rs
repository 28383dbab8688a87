//! Homogeneous Buchberger algorithm for submodules of graded free modules.

use std::collections::HashMap;

use crate::context::Context;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::module::{FreeModule, ModuleElement, Submodule};
use crate::order::{Term, TermOrder};
use crate::vector::{merge_scaled, Vector};

/// A reduced Gröbner basis: elements are monic, sorted by increasing
/// leading term, and no leading term divides another.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    pub ambient: FreeModule,
    pub order: TermOrder,
    /// Sorted in `order`.
    pub elements: Vec<ModuleElement>,
    /// Input generators that were not redundant, in input order and sorted
    /// in `order`; they form a minimal generating set.
    pub minimal_generators: Vec<ModuleElement>,
    pub reduced: bool,
}

impl GroebnerBasis {
    pub fn leading_terms(&self) -> Vec<Term> {
        self.elements.iter().filter_map(|e| e.lead_term()).collect()
    }

    pub fn is_unit(&self) -> bool {
        (0..self.ambient.rank()).all(|s| {
            self.elements.iter().any(|e| e.lead_term().is_some_and(|t| t.slot() == s && t.mono.is_one()))
        })
    }

    /// Normal form of `v` (any term order) with respect to the basis.
    pub fn normal_form(&self, v: &ModuleElement) -> Result<ModuleElement> {
        if !self.ambient.contains(v) {
            return Err(Error::AmbientMismatch);
        }
        let v = v.resort(&self.order);
        let red = Reducer::new(&self.elements, &self.order);
        Ok(red.reduce(v, true))
    }

    pub fn contains(&self, v: &ModuleElement) -> Result<bool> {
        Ok(self.normal_form(v)?.is_zero())
    }

    /// Every S-pair reduces to zero.
    pub fn check_buchberger_criterion(&self) -> bool {
        let red = Reducer::new(&self.elements, &self.order);
        for i in 0..self.elements.len() {
            for j in i + 1..self.elements.len() {
                let (ti, tj) = (self.elements[i].terms[0].0, self.elements[j].terms[0].0);
                if ti.slot != tj.slot {
                    continue;
                }
                let s = spoly(&self.elements[i], &self.elements[j], &self.order);
                if !red.reduce(s, false).is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

/// Public entry: reduced basis of `n` in the default order of its ambient.
pub fn groebner_basis(ctx: &Context, n: &Submodule) -> Result<GroebnerBasis> {
    groebner_basis_in(ctx, &n.ambient, &n.gens, &n.ambient.default_order())
}

/// Reduced basis of the submodule generated by `gens` in `order`.
pub fn groebner_basis_in(
    ctx: &Context,
    ambient: &FreeModule,
    gens: &[ModuleElement],
    order: &TermOrder,
) -> Result<GroebnerBasis> {
    let gens: Vec<ModuleElement> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| if g.is_sorted(order) { g.clone() } else { g.resort(order) })
        .collect();
    for g in &gens {
        ambient.check_element(g)?;
    }
    let key = ctx.cache.as_ref().map(|_| crate::cache::gb_key(ambient, order, &gens));
    if let (Some(cache), Some(key)) = (ctx.cache.as_ref(), key.as_ref()) {
        if let Some((elements, minimal)) = cache.load(key, &ctx.stats) {
            return Ok(GroebnerBasis {
                ambient: ambient.clone(),
                order: order.clone(),
                elements,
                minimal_generators: minimal,
                reduced: true,
            });
        }
    }
    ctx.stats.bump_groebner();
    let (elements, minimal_idx) = buchberger(ambient, &gens, order, ctx.settings.degree_cap)?;
    let minimal: Vec<ModuleElement> = minimal_idx.iter().map(|&i| gens[i].clone()).collect();
    if let (Some(cache), Some(key)) = (ctx.cache.as_ref(), key.as_ref()) {
        cache.store(key, &elements, &minimal, &ctx.stats);
    }
    let gb = GroebnerBasis {
        ambient: ambient.clone(),
        order: order.clone(),
        elements,
        minimal_generators: minimal,
        reduced: true,
    };
    debug_assert!(gb.elements.len() > 40 || gb.check_buchberger_criterion());
    Ok(gb)
}

pub(crate) struct Reducer<'a, C> {
    elems: &'a [Vector<C>],
    order: &'a TermOrder,
    by_slot: HashMap<u32, Vec<usize>>,
}

impl<'a, C: Field> Reducer<'a, C> {
    pub(crate) fn new(elems: &'a [Vector<C>], order: &'a TermOrder) -> Self {
        let mut by_slot: HashMap<u32, Vec<usize>> = HashMap::new();
        for (i, e) in elems.iter().enumerate() {
            if let Some(t) = e.lead_term() {
                by_slot.entry(t.slot).or_default().push(i);
            }
        }
        Reducer { elems, order, by_slot }
    }

    fn find(&self, t: &Term) -> Option<usize> {
        self.by_slot
            .get(&t.slot)?
            .iter()
            .copied()
            .find(|&i| self.elems[i].terms[0].0.mono.divides(&t.mono))
    }

    /// Reduces `f`; with `full` every term is reduced, otherwise only the top.
    pub(crate) fn reduce(&self, f: Vector<C>, full: bool) -> Vector<C> {
        let mut out: Vec<(Term, C)> = Vec::new();
        let mut cur = f.terms;
        let mut pos = 0;
        while pos < cur.len() {
            let (t, c) = (cur[pos].0, cur[pos].1.clone());
            match self.find(&t) {
                Some(k) => {
                    let g = &self.elems[k];
                    let (lt, lc) = (&g.terms[0].0, &g.terms[0].1);
                    let m = lt.mono.quotient_of(&t.mono).expect("divisor");
                    let factor = c.div(lc).neg();
                    cur = merge_scaled(&cur[pos + 1..], &factor, &m, &g.terms[1..], self.order);
                    pos = 0;
                }
                None => {
                    if !full {
                        out.extend(cur.drain(pos..));
                        break;
                    }
                    out.push((t, c));
                    pos += 1;
                }
            }
        }
        Vector { terms: out }
    }
}

fn spoly<C: Field>(a: &Vector<C>, b: &Vector<C>, ord: &TermOrder) -> Vector<C> {
    let (ta, ca) = (&a.terms[0].0, &a.terms[0].1);
    let (tb, cb) = (&b.terms[0].0, &b.terms[0].1);
    let l = ta.mono.lcm(&tb.mono);
    let ma = ta.mono.quotient_of(&l).expect("lcm");
    let mb = tb.mono.quotient_of(&l).expect("lcm");
    let left = Vector { terms: a.terms[1..].to_vec() }.mul_mono(&ma).scale(&ca.inv());
    Vector { terms: merge_scaled(&left.terms, &cb.inv().neg(), &mb, &b.terms[1..], ord) }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Term,
    deg: i64,
}

/// Buchberger's algorithm, degree by degree, with the Gebauer–Möller
/// criteria. Returns the reduced basis sorted by increasing leading term and
/// the indices of the inputs that were needed.
pub fn buchberger<C: Field>(
    ambient: &FreeModule,
    gens: &[Vector<C>],
    order: &TermOrder,
    cap: i64,
) -> Result<(Vec<Vector<C>>, Vec<usize>)> {
    let rank_one = ambient.rank() == 1;
    let mut inputs: Vec<(i64, usize)> = Vec::new();
    for (k, g) in gens.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        let d = ambient_degree(ambient, g)?;
        inputs.push((d, k));
    }
    inputs.sort();
    let base = inputs.first().map(|x| x.0).unwrap_or(0);
    let mut basis: Vec<Vector<C>> = Vec::new();
    let mut degs: Vec<i64> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut minimal = Vec::new();
    let mut next_input = 0;

    loop {
        let pair_deg = pairs.iter().map(|p| p.deg).min();
        let in_deg = inputs.get(next_input).map(|x| x.0);
        let t = match (pair_deg, in_deg) {
            (None, None) => break,
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (Some(a), Some(b)) => a.min(b),
        };
        if pair_deg == Some(t) && t - base > cap {
            return Err(Error::CapExceeded { cap, context: "a Gröbner basis".into() });
        }
        // S-pairs of degree t.
        while let Some(k) = select_pair(&pairs, t, order) {
            let p = pairs.swap_remove(k);
            let s = spoly(&basis[p.i], &basis[p.j], order);
            let h = Reducer::new(&basis, order).reduce(s, true);
            if !h.is_zero() {
                insert(ambient, &mut basis, &mut degs, &mut pairs, h.monic(), t, order, rank_one);
            }
        }
        // Inputs of degree t.
        while next_input < inputs.len() && inputs[next_input].0 == t {
            let k = inputs[next_input].1;
            next_input += 1;
            let h = Reducer::new(&basis, order).reduce(gens[k].clone(), true);
            if !h.is_zero() {
                minimal.push(k);
                insert(ambient, &mut basis, &mut degs, &mut pairs, h.monic(), t, order, rank_one);
            }
        }
    }
    // Tail-reduce: leading terms are already minimal.
    let mut out: Vec<Vector<C>> = Vec::with_capacity(basis.len());
    for i in 0..basis.len() {
        let g = &basis[i];
        let others: Vec<Vector<C>> = basis
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, e)| e.clone())
            .collect();
        let red = Reducer::new(&others, order);
        let tail = red.reduce(Vector { terms: g.terms[1..].to_vec() }, true);
        let mut terms = vec![g.terms[0].clone()];
        terms.extend(tail.terms);
        out.push(Vector { terms });
    }
    out.sort_by(|a, b| order.cmp(&a.terms[0].0, &b.terms[0].0));
    minimal.sort();
    Ok((out, minimal))
}

fn ambient_degree<C: Field>(ambient: &FreeModule, g: &Vector<C>) -> Result<i64> {
    let mut it = g.terms.iter().map(|(t, _)| {
        if t.slot() >= ambient.rank() {
            Err(Error::AmbientMismatch)
        } else {
            Ok(ambient.term_degree(t))
        }
    });
    let d = it.next().expect("nonzero")?;
    for e in it {
        if e? != d {
            return Err(Error::NotHomogeneous("generator of a submodule".into()));
        }
    }
    Ok(d)
}

fn select_pair(pairs: &[Pair], t: i64, order: &TermOrder) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (k, p) in pairs.iter().enumerate() {
        if p.deg != t {
            continue;
        }
        best = match best {
            None => Some(k),
            Some(b) => {
                let q = &pairs[b];
                let c = order.cmp(&p.lcm, &q.lcm).then((p.i, p.j).cmp(&(q.i, q.j)));
                if c == std::cmp::Ordering::Less {
                    Some(k)
                } else {
                    Some(b)
                }
            }
        };
    }
    best
}

#[allow(clippy::too_many_arguments)]
fn insert<C: Field>(
    ambient: &FreeModule,
    basis: &mut Vec<Vector<C>>,
    degs: &mut Vec<i64>,
    pairs: &mut Vec<Pair>,
    h: Vector<C>,
    deg: i64,
    order: &TermOrder,
    rank_one: bool,
) {
    let th = h.terms[0].0;
    let hidx = basis.len();
    // Candidate pairs with the new element.
    let mut cand: Vec<(usize, Term, bool)> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let ti = g.terms[0].0;
        if ti.slot != th.slot {
            continue;
        }
        let lcm = ti.lcm(&th);
        cand.push((i, lcm, rank_one && ti.mono.coprime(&th.mono)));
    }
    // Criterion B on existing pairs.
    pairs.retain(|p| {
        if p.lcm.slot != th.slot || !th.mono.divides(&p.lcm.mono) {
            return true;
        }
        let li = basis[p.i].terms[0].0.lcm(&th);
        let lj = basis[p.j].terms[0].0.lcm(&th);
        li == p.lcm || lj == p.lcm
    });
    // Criterion M: drop pairs whose lcm is a proper multiple of another's.
    let keep: Vec<bool> = cand
        .iter()
        .map(|(_, l, _)| !cand.iter().any(|(_, l2, _)| l2 != l && l2.mono.divides(&l.mono)))
        .collect();
    let mut survivors: Vec<(usize, Term, bool)> =
        cand.into_iter().zip(keep).filter(|(_, k)| *k).map(|(c, _)| c).collect();
    // Criterion F with the product criterion.
    survivors.sort_by(|a, b| order.cmp(&a.1, &b.1).then(a.0.cmp(&b.0)));
    let mut k = 0;
    while k < survivors.len() {
        let mut end = k + 1;
        while end < survivors.len() && survivors[end].1 == survivors[k].1 {
            end += 1;
        }
        let any_coprime = survivors[k..end].iter().any(|c| c.2);
        if !any_coprime {
            let (i, lcm, _) = survivors[k];
            pairs.push(Pair { i, j: hidx, lcm, deg: ambient.term_degree(&lcm) });
        }
        k = end;
    }
    basis.push(h);
    degs.push(deg);
}

/// Whether every slot of `F/N` has finitely many standard monomials: each
/// variable has a pure power among the leading terms of that slot.
pub fn has_finite_quotient(gb: &GroebnerBasis) -> bool {
    let n = gb.ambient.ring.nvars();
    let leads = gb.leading_terms();
    (0..gb.ambient.rank()).all(|s| {
        let slot: Vec<&Term> = leads.iter().filter(|t| t.slot() == s).collect();
        slot.iter().any(|t| t.mono.is_one())
            || (0..n).all(|v| slot.iter().any(|t| t.mono.pure_power() == Some(v)))
    })
}

/// The standard monomials of `F/N`, or `None` when there are infinitely many.
pub fn standard_monomials(gb: &GroebnerBasis) -> Option<Vec<Term>> {
    if !has_finite_quotient(gb) {
        return None;
    }
    let n = gb.ambient.ring.nvars();
    let leads = gb.leading_terms();
    let mut out = Vec::new();
    for s in 0..gb.ambient.rank() {
        let slot: Vec<Term> = leads.iter().filter(|t| t.slot() == s).copied().collect();
        let standard = |t: &Term| !slot.iter().any(|l| l.divides(t));
        let start = Term::new(crate::ring::Monomial::one(), s);
        if !standard(&start) {
            continue;
        }
        let mut seen = std::collections::HashSet::new();
        seen.insert(start);
        let mut frontier = vec![start];
        while let Some(t) = frontier.pop() {
            out.push(t);
            for v in 0..n {
                let next = Term::new(t.mono.mul(&crate::ring::Monomial::var(v, 1)), s);
                if standard(&next) && seen.insert(next) {
                    frontier.push(next);
                }
            }
        }
    }
    let ord = gb.ambient.default_order();
    out.sort_by(|a, b| ord.cmp(b, a));
    Some(out)
}

/// Number of standard monomials of `F/N`, i.e. its length, or `None` when
/// it is infinite.
pub fn standard_monomial_count(gb: &GroebnerBasis) -> Option<i128> {
    if !has_finite_quotient(gb) {
        return None;
    }
    crate::hilbert_series::HilbertSeries::of_basis(gb).length()
}
