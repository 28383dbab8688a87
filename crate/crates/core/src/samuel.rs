//! Hilbert–Samuel functions `n ↦ ℓ(M/Q^{n+1}M)`, their coefficients in the
//! binomial basis, `χ₁` and the sectional genus.

use crate::context::Context;
use crate::error::{Error, Result};
use crate::groebner::{groebner_basis, has_finite_quotient, standard_monomial_count};
use crate::hilbert_series::{hilbert_series, HilbertSeries};
use crate::linalg::solve;
use crate::module::{ModulePresentation, Submodule};
use crate::ops::{ideal_power, ideal_times_free};
use crate::poly::Polynomial;
use crate::projection::{variable_adic_series, Projection};
use crate::rational::{binomial_poly, Rat};
use crate::resolution::krull_dim;

/// A list of homogeneous forms meant to be a system of parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParameterIdeal {
    pub generators: Vec<Polynomial>,
}

impl ParameterIdeal {
    pub fn new(generators: Vec<Polynomial>) -> Result<Self> {
        for g in &generators {
            if !g.is_homogeneous() || g.is_zero() {
                return Err(Error::NotHomogeneous(g.to_string()));
            }
        }
        if let Some(r) = generators.first().map(|g| g.ring().clone()) {
            if generators.iter().any(|g| *g.ring() != r) {
                return Err(Error::RingMismatch);
            }
        }
        Ok(ParameterIdeal { generators })
    }

    pub fn count(&self) -> usize {
        self.generators.len()
    }
}

/// `R + J·F` for the presentation `F/R`.
pub fn extend_relations(m: &ModulePresentation, ideal: &[Polynomial]) -> Result<Submodule> {
    let mut gens = m.relations.clone();
    gens.extend(ideal_times_free(&m.ambient, ideal));
    Submodule::new(m.ambient.clone(), gens)
}

/// Whether `Q M` is primary to the maximal ideal, i.e. `M/QM` has finite
/// length.
pub fn is_primary_on(ctx: &Context, q: &[Polynomial], m: &ModulePresentation) -> Result<bool> {
    let gb = groebner_basis(ctx, &extend_relations(m, q)?)?;
    Ok(has_finite_quotient(&gb))
}

pub fn is_parameter_ideal(ctx: &Context, q: &[Polynomial], m: &ModulePresentation) -> Result<bool> {
    let d = krull_dim(ctx, m)?;
    match d {
        None => Ok(false),
        Some(d) if d != q.len() => Ok(false),
        Some(_) => is_primary_on(ctx, q, m),
    }
}

/// `ℓ(M/Q^{n+1}M)` from a Gröbner basis of `R + Q^{n+1}F`.
pub fn length_quotient(ctx: &Context, m: &ModulePresentation, q: &[Polynomial], n: usize) -> Result<i128> {
    let pow = if q.is_empty() { Vec::new() } else { ideal_power(q, n + 1) };
    let gb = groebner_basis(ctx, &extend_relations(m, &pow)?)?;
    standard_monomial_count(&gb).ok_or(Error::NotPrimary)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LengthMethod {
    /// Associated graded series over the parameter subring.
    Series,
    /// One Gröbner basis per table entry.
    Table,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertSamuelResult {
    /// Dimension `s` of the module; the polynomial has degree `s`.
    pub dim: usize,
    /// `e^0, …, e^s`.
    pub coefficients: Vec<i128>,
    pub postulation_index: usize,
    /// `length_table[n] = ℓ(M/Q^{n+1}M)`.
    pub length_table: Vec<i128>,
    pub verified_extra_points: usize,
    pub method: LengthMethod,
}

/// `Σ_i (-1)^i e^i C(n+s-i, s-i)`.
pub fn samuel_polynomial(e: &[i128], s: usize, n: i64) -> i128 {
    e.iter()
        .enumerate()
        .map(|(i, c)| {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            sign * c * binomial_poly(n + s as i64 - i as i64, s as i64 - i as i64)
        })
        .sum()
}

impl HilbertSamuelResult {
    /// `e^i`, zero past the dimension.
    pub fn e(&self, i: usize) -> i128 {
        self.coefficients.get(i).copied().unwrap_or(0)
    }

    pub fn polynomial(&self, n: i64) -> i128 {
        samuel_polynomial(&self.coefficients, self.dim, n)
    }

    /// `ℓ(M/QM)`.
    pub fn colength(&self) -> i128 {
        self.length_table[0]
    }

    /// `ℓ(M/QM) - e^0`.
    pub fn chi1(&self) -> i128 {
        self.colength() - self.e(0)
    }

    /// `ℓ(M/QM) - e^0 + e^1`.
    pub fn sectional_genus(&self) -> i128 {
        self.colength() - self.e(0) + self.e(1)
    }
}

/// Fits `e^0..e^s` to `s+1` consecutive table values and checks `extra`
/// further values; returns the coefficients and the least index from which
/// every sampled value agrees.
pub fn fit_binomial(table: &[i128], s: usize, extra: usize) -> Option<(Vec<i128>, usize)> {
    let need = s + 1 + extra;
    for n0 in 0..table.len().saturating_sub(need - 1) {
        let a: Vec<Vec<Rat>> = (0..=s)
            .map(|r| {
                (0..=s)
                    .map(|i| {
                        let sign = if i % 2 == 0 { 1 } else { -1 };
                        let b = binomial_poly((n0 + r + s - i) as i64, (s - i) as i64);
                        Rat::from_int((sign * b) as i64)
                    })
                    .collect()
            })
            .collect();
        let rhs: Vec<Rat> = (0..=s).map(|r| Rat::from_int(table[n0 + r] as i64)).collect();
        let Some(x) = solve(&a, &rhs) else { continue };
        if !x.iter().all(|c| c.is_integer()) {
            continue;
        }
        let e: Vec<i128> = x.iter().map(|c| c.to_i64().expect("integer") as i128).collect();
        if (n0 + s + 1..n0 + need).all(|n| samuel_polynomial(&e, s, n as i64) == table[n]) {
            let mut post = n0;
            while post > 0 && samuel_polynomial(&e, s, post as i64 - 1) == table[post - 1] {
                post -= 1;
            }
            let tail_ok = (post..table.len()).all(|n| samuel_polynomial(&e, s, n as i64) == table[n]);
            if tail_ok {
                return Some((e, post));
            }
        }
    }
    None
}

/// The module and parameters on which invariants are evaluated: for a list
/// of independent linear forms, the restriction of `M` to `k[q_1..q_d]` with
/// the variables as parameters; otherwise `M` and `Q` themselves.
#[derive(Clone, Debug)]
pub struct Frame {
    pub module: ModulePresentation,
    pub params: Vec<Polynomial>,
    pub projection: Option<Projection>,
    pub source: ModulePresentation,
    pub source_params: Vec<Polynomial>,
}

impl Frame {
    pub fn new(ctx: &Context, m: &ModulePresentation, q: &[Polynomial]) -> Result<Frame> {
        let projection = Projection::new(ctx, m, q)?;
        let (module, params) = match &projection {
            Some(p) => (p.module.clone(), p.parameters()),
            None => (m.clone(), q.to_vec()),
        };
        Ok(Frame { module, params, projection, source: m.clone(), source_params: q.to_vec() })
    }

    /// An element of the source ring, read in the frame's ring; `None` when
    /// it does not lie in the parameter subring.
    pub fn element(&self, f: &Polynomial) -> Option<Polynomial> {
        match &self.projection {
            Some(p) => p.to_p(f),
            None => Some(f.clone()),
        }
    }

    /// Whether the parameters are exactly the variables of the frame ring.
    pub fn params_are_variables(&self) -> bool {
        let ring = self.module.ring();
        self.params.len() == ring.nvars()
            && ring.is_standard_graded()
            && self.params.iter().enumerate().all(|(i, p)| *p == Polynomial::var(ring, i))
    }
}

/// Table of `ℓ(M/Q^{n+1}M)` for `n ≤ top` from the associated graded series.
fn table_from_series(hs: &HilbertSeries, top: usize) -> Vec<i128> {
    let mut acc = 0;
    (0..=top)
        .map(|n| {
            acc += hs.coefficient(n as i64);
            acc
        })
        .collect()
}

/// Coefficients from `N(t)/(1-t)^d`: with `h = N/(1-t)^{d-s}`,
/// `e^i = h^{(i)}(1)/i!`.
fn coefficients_from_series(hs: &HilbertSeries, s: usize) -> Vec<i128> {
    let h = hs.h_polynomial();
    (0..=s)
        .map(|i| {
            h.iter()
                .enumerate()
                .map(|(k, c)| c * binomial_poly(k as i64 + hs.shift, i as i64))
                .sum()
        })
        .collect()
}

/// Hilbert–Samuel data of `M` for an ideal `Q` primary on `M` (any number of
/// generators); the polynomial has degree `dim M`.
pub fn samuel_function(ctx: &Context, m: &ModulePresentation, q: &[Polynomial]) -> Result<HilbertSamuelResult> {
    let frame = Frame::new(ctx, m, q)?;
    samuel_in(ctx, &frame)
}

pub fn samuel_in(ctx: &Context, frame: &Frame) -> Result<HilbertSamuelResult> {
    let extra = ctx.settings.fit_extra;
    if frame.params_are_variables() {
        let hs = variable_adic_series(ctx, &frame.module)?;
        let Some(s) = hs.dim() else {
            return Ok(HilbertSamuelResult {
                dim: 0,
                coefficients: vec![0],
                postulation_index: 0,
                length_table: vec![0; extra + 1],
                verified_extra_points: extra,
                method: LengthMethod::Series,
            });
        };
        let e = coefficients_from_series(&hs, s);
        let top = hs.numerator.len() + s + extra + 1;
        let table = table_from_series(&hs, top);
        let (fit, post) = fit_binomial(&table, s, extra)
            .ok_or_else(|| Error::Invariant("length table from the series admits no fit".into()))?;
        if fit != e {
            return Err(Error::Invariant("fitted coefficients disagree with the series".into()));
        }
        return Ok(HilbertSamuelResult {
            dim: s,
            coefficients: e,
            postulation_index: post,
            length_table: table,
            verified_extra_points: extra,
            method: LengthMethod::Series,
        });
    }
    let m = &frame.module;
    let q = &frame.params;
    let s = match krull_dim(ctx, m)? {
        None => 0,
        Some(s) => s,
    };
    if !is_primary_on(ctx, q, m)? {
        return Err(Error::NotPrimary);
    }
    let cap = ctx.settings.table_cap;
    let mut table = Vec::new();
    for n in 0..=cap {
        table.push(length_quotient(ctx, m, q, n)?);
        if let Some((e, post)) = fit_binomial(&table, s, extra) {
            return Ok(HilbertSamuelResult {
                dim: s,
                coefficients: e,
                postulation_index: post,
                length_table: table,
                verified_extra_points: extra,
                method: LengthMethod::Table,
            });
        }
    }
    Err(Error::CapExceeded { cap: cap as i64, context: "Hilbert–Samuel length table".into() })
}

/// Hilbert coefficients for a parameter ideal.
pub fn hilbert_coefficients(ctx: &Context, m: &ModulePresentation, q: &ParameterIdeal) -> Result<HilbertSamuelResult> {
    if !is_parameter_ideal(ctx, &q.generators, m)? {
        return Err(Error::NotParameterIdeal(format!(
            "{} generators on a module of dimension {}",
            q.count(),
            krull_dim(ctx, m)?.map_or("-inf".to_string(), |d| d.to_string())
        )));
    }
    samuel_function(ctx, m, &q.generators)
}

pub fn euler_characteristic_chi1(ctx: &Context, m: &ModulePresentation, q: &ParameterIdeal) -> Result<i128> {
    Ok(hilbert_coefficients(ctx, m, q)?.chi1())
}

pub fn sectional_genus(ctx: &Context, m: &ModulePresentation, q: &ParameterIdeal) -> Result<i128> {
    Ok(hilbert_coefficients(ctx, m, q)?.sectional_genus())
}

/// `e^0_Q(N)` for `Q` primary on `N`. Linear `Q` is a reduction of the
/// maximal ideal on `N`, so the graded multiplicity is used directly.
pub fn multiplicity(ctx: &Context, n: &ModulePresentation, q: &[Polynomial]) -> Result<i128> {
    if n.ring().is_standard_graded() && q.iter().all(|f| f.homogeneous_degree() == Some(1)) {
        return Ok(hilbert_series(ctx, n)?.multiplicity());
    }
    Ok(samuel_function(ctx, n, q)?.e(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;
    use crate::ring::Ring;

    fn polys(r: &Ring, s: &[&str]) -> Vec<Polynomial> {
        s.iter().map(|x| parse_polynomial(x, r).unwrap()).collect()
    }

    #[test]
    fn polynomial_ring() {
        let ctx = Context::default();
        let r = Ring::new(&["X", "Y", "Z"]).unwrap();
        let m = ModulePresentation::quotient_ring(&r, &[]).unwrap();
        let q = polys(&r, &["X", "Y", "Z"]);
        assert!(is_parameter_ideal(&ctx, &q, &m).unwrap());
        assert!(!is_parameter_ideal(&ctx, &q[..2], &m).unwrap());
        assert_eq!(length_quotient(&ctx, &m, &q, 1).unwrap(), 4);
        let hs = hilbert_coefficients(&ctx, &m, &ParameterIdeal::new(q).unwrap()).unwrap();
        assert_eq!(hs.coefficients, vec![1, 0, 0, 0]);
    }

    #[test]
    fn fit_recovers_coefficients() {
        let e = vec![2, -1, 3];
        let mut table: Vec<i128> = (0..10).map(|n| samuel_polynomial(&e, 2, n)).collect();
        table[0] = 5;
        let (fit, post) = fit_binomial(&table, 2, 3).unwrap();
        assert_eq!(fit, e);
        assert_eq!(post, 1);
    }

    #[test]
    fn table_route_matches_series_route() {
        let ctx = Context::default();
        let r = Ring::new(&["X", "Y", "Z", "W"]).unwrap();
        let m = ModulePresentation::quotient_ring(&r, &polys(&r, &["X*Y^2", "X*Z", "X*W"])).unwrap();
        let q = polys(&r, &["X-Y", "X-Z", "X-W"]);
        let a = samuel_function(&ctx, &m, &q).unwrap();
        assert_eq!(a.method, LengthMethod::Series);
        assert_eq!(a.coefficients, vec![1, 0, 2, 1]);
        assert_eq!(a.colength(), 2);
        assert_eq!(a.sectional_genus(), 1);
        let table: Vec<i128> = (0..6).map(|n| length_quotient(&ctx, &m, &q, n).unwrap()).collect();
        assert_eq!(table[..], a.length_table[..6]);
    }

    #[test]
    fn nonlinear_parameters_use_tables() {
        let ctx = Context::default();
        let r = Ring::new(&["X", "Y"]).unwrap();
        let m = ModulePresentation::quotient_ring(&r, &[]).unwrap();
        let q = polys(&r, &["X^2", "Y"]);
        let a = samuel_function(&ctx, &m, &q).unwrap();
        assert_eq!(a.method, LengthMethod::Table);
        // ℓ(S/(X^2,Y)^{n+1}) = 2·C(n+2,2)
        assert_eq!(a.coefficients, vec![2, 0, 0]);
        assert_eq!(multiplicity(&ctx, &m, &q).unwrap(), 2);
    }
}
