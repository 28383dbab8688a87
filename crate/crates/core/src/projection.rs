//! Restriction of scalars to the polynomial ring generated by a linear
//! parameter ideal.
//!
//! When `Q = (q_1, …, q_d)` is generated by linearly independent linear forms
//! and `M/QM` has finite length, `M` is a finitely generated graded module over
//! `P = k[q_1, …, q_d]`. Lengths of `M/Q^{n+1}M`, colons of submodules by
//! elements of `P`, local cohomology and associated-prime dimensions are all
//! unchanged by this restriction, and `P` has far fewer variables.

use crate::context::Context;
use crate::error::{Error, Result};
use crate::groebner::{groebner_basis_in, standard_monomials};
use crate::hilbert_series::{hilbert_series, HilbertSeries};
use crate::linalg::{inverse, rref, Matrix};
use crate::module::{FreeModule, ModuleElement, ModulePresentation, Submodule};
use crate::order::{Position, Term, TermOrder, Tie, WeightRow};
use crate::poly::Polynomial;
use crate::rational::Rat;
use crate::ring::{Monomial, Ring};
use crate::vector::Vector;

#[derive(Clone, Debug)]
pub struct Projection {
    pub source: Ring,
    /// `k[U1..Ud, V1..V(n-d)]` with `Ui = q_i`.
    pub changed: Ring,
    pub p_ring: Ring,
    /// `M` as a `P`-module.
    pub module: ModulePresentation,
    /// Standard monomials of `M/QM` in the changed coordinates; they generate
    /// `M` over `P`.
    pub basis: Vec<Term>,
    /// Images of the original variables in the changed coordinates.
    images: Vec<Polynomial>,
    params_source: Vec<Polynomial>,
}

/// Linear forms' coefficient rows, or `None` if some generator is not a
/// nonzero linear form.
fn linear_rows(q: &[Polynomial]) -> Option<Matrix> {
    q.iter()
        .map(|f| {
            if f.is_zero() || f.homogeneous_degree() != Some(1) {
                return None;
            }
            let n = f.ring().nvars();
            let mut row = vec![Rat::zero(); n];
            for (m, c) in f.terms() {
                row[m.pure_power()?] = c.clone();
            }
            Some(row)
        })
        .collect()
}

fn substitute_element(f: &FreeModule, target: &FreeModule, images: &[Polynomial], v: &ModuleElement) -> ModuleElement {
    let comps: Vec<Polynomial> = f
        .components(v)
        .iter()
        .map(|c| c.substitute(&target.ring, images))
        .collect();
    target.from_components(&comps).expect("same rank")
}

/// Whether the generators are linear forms spanning a space of their own
/// count.
pub fn is_linear_parameter_list(q: &[Polynomial]) -> bool {
    match linear_rows(q) {
        Some(rows) if !rows.is_empty() => crate::linalg::rank(&rows) == rows.len(),
        _ => false,
    }
}

impl Projection {
    /// `None` when `Q` is not a list of independent linear forms or the ring
    /// is not standard graded. Errors with `NotParameterIdeal` when `M/QM`
    /// does not have finite length.
    pub fn new(ctx: &Context, m: &ModulePresentation, q: &[Polynomial]) -> Result<Option<Projection>> {
        let ring = m.ring().clone();
        if !ring.is_standard_graded() || !is_linear_parameter_list(q) {
            return Ok(None);
        }
        let n = ring.nvars();
        let d = q.len();
        let rows = linear_rows(q).expect("checked");
        let mut reduced = rows.clone();
        let pivots = rref(&mut reduced);
        let mut full = rows;
        for c in (0..n).filter(|c| !pivots.contains(c)) {
            let mut r = vec![Rat::zero(); n];
            r[c] = Rat::one();
            full.push(r);
        }
        let inv = inverse(&full).ok_or_else(|| Error::Invariant("coordinate change not invertible".into()))?;
        let mut names: Vec<String> = (1..=d).map(|i| format!("U{i}")).collect();
        names.extend((1..=n - d).map(|i| format!("V{i}")));
        let changed = Ring::new(&names)?;
        let p_ring = Ring::new(&names[..d])?;
        // x_j = Σ_k inv[j][k] y_k
        let images: Vec<Polynomial> = (0..n)
            .map(|j| {
                let terms = (0..n)
                    .filter(|&k| !inv[j][k].is_zero())
                    .map(|k| (Monomial::var(k, 1), inv[j][k].clone()))
                    .collect();
                Polynomial::from_terms(&changed, terms)
            })
            .collect();
        let f = &m.ambient;
        let f2 = FreeModule::new(&changed, f.degrees.clone());
        let rels: Vec<ModuleElement> =
            m.relations.iter().map(|r| substitute_element(f, &f2, &images, r)).collect();

        // Generators over P: standard monomials of M/QM.
        let mut mod_q = rels.clone();
        for s in 0..f2.rank() {
            for i in 0..d {
                mod_q.push(Polynomial::var(&changed, i).to_vector(s));
            }
        }
        let gq = groebner_basis_in(ctx, &f2, &mod_q, &f2.default_order())?;
        let basis = standard_monomials(&gq).ok_or_else(|| Error::NotParameterIdeal("the quotient by the ideal has infinite length".into()))?;

        // Eliminate F and the V variables from F ⊕ S^B.
        let r = f2.rank();
        let bdeg: Vec<i64> = basis.iter().map(|t| f2.term_degree(t)).collect();
        let ext = f2.direct_sum(&FreeModule::new(&changed, bdeg.clone()));
        let ord_ext = ext.default_order();
        let mut gens: Vec<ModuleElement> = rels.iter().map(|v| v.resort(&ord_ext)).collect();
        for (k, t) in basis.iter().enumerate() {
            gens.push(Vector::from_terms(
                vec![(*t, Rat::one()), (Term::new(Monomial::one(), r + k), Rat::from_int(-1))],
                &ord_ext,
            ));
        }
        let mut slot_ind = vec![1i64; r];
        slot_ind.extend(std::iter::repeat_n(0, basis.len()));
        let mut v_deg = vec![0i64; d];
        v_deg.extend(std::iter::repeat_n(1, n - d));
        let order = TermOrder::new(
            vec![
                WeightRow::new(&[], &slot_ind),
                WeightRow::new(&v_deg, &[]),
                TermOrder::degree_row(&changed, &ext.degrees),
            ],
            Tie::RevLex,
            Position::TermOverPosition,
        );
        let gb = groebner_basis_in(ctx, &ext, &gens, &order)?;
        let pb = FreeModule::new(&p_ring, bdeg);
        let pord = pb.default_order();
        let kernel: Vec<ModuleElement> = gb
            .elements
            .iter()
            .filter(|e| {
                let t = e.lead_term().expect("nonzero");
                t.slot() >= r && (d..n).all(|i| t.mono.exp(i) == 0)
            })
            .map(|e| {
                let terms = e.terms.iter().map(|(t, c)| (Term::new(t.mono, t.slot() - r), c.clone())).collect();
                Vector::from_terms(terms, &pord)
            })
            .collect();
        let module = ModulePresentation::new(pb, kernel)?;
        let proj = Projection { source: ring, changed, p_ring, module, basis, images, params_source: q.to_vec() };
        let before = hilbert_series(ctx, m)?;
        let after = hilbert_series(ctx, &proj.module)?;
        if !before.same_function(&after) {
            return Err(Error::Invariant("restriction changed the Hilbert function".into()));
        }
        Ok(Some(proj))
    }

    pub fn rank(&self) -> usize {
        self.p_ring.nvars()
    }

    /// The generators of `Q` as elements of `P` (its variables).
    pub fn parameters(&self) -> Vec<Polynomial> {
        (0..self.rank()).map(|i| Polynomial::var(&self.p_ring, i)).collect()
    }

    /// Rewrites an element of the source ring lying in `k[q_1..q_d]` as an
    /// element of `P`; `None` when it is not in that subring.
    pub fn to_p(&self, f: &Polynomial) -> Option<Polynomial> {
        let g = f.substitute(&self.changed, &self.images);
        let d = self.rank();
        let n = self.changed.nvars();
        let mut terms = Vec::new();
        for (m, c) in g.terms() {
            if (d..n).any(|i| m.exp(i) != 0) {
                return None;
            }
            terms.push((*m, c.clone()));
        }
        Some(Polynomial::from_terms(&self.p_ring, terms))
    }

    /// An element of `P` written back in the source coordinates.
    pub fn from_p(&self, f: &Polynomial) -> Polynomial {
        f.substitute(&self.source, &self.params_source)
    }

    /// The `i`-th parameter in the source ring.
    pub fn parameter(&self, i: usize) -> Polynomial {
        self.params_source[i].clone()
    }

    /// Series of the associated graded module of the `Q`-adic filtration.
    pub fn qadic_series(&self, ctx: &Context) -> Result<HilbertSeries> {
        variable_adic_series(ctx, &self.module)
    }

    /// A submodule of `P^B` given by generators.
    pub fn submodule(&self, gens: Vec<ModuleElement>) -> Result<Submodule> {
        Submodule::new(self.module.ambient.clone(), gens)
    }
}

/// Series of the associated graded module of `M` for the filtration by
/// powers of the ideal of all variables, with `M` homogeneous for the usual
/// grading. The leading forms of lowest order are the leading terms of the
/// relations in an order preferring high slot degree within each degree.
pub fn variable_adic_series(ctx: &Context, m: &ModulePresentation) -> Result<HilbertSeries> {
    let f = &m.ambient;
    let order = TermOrder::new(
        vec![TermOrder::degree_row(&f.ring, &f.degrees), WeightRow::new(&[], &f.degrees)],
        Tie::RevLex,
        Position::TermOverPosition,
    );
    let gb = groebner_basis_in(ctx, f, &m.relations, &order)?;
    let zeros = vec![0; f.rank()];
    Ok(HilbertSeries::from_leading_terms(f.ring.degrees(), &zeros, &gb.leading_terms()))
}
