//! d-sequences, superficial elements and the search for d-sequence
//! generators of a parameter ideal.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::context::Context;
use crate::error::{Error, Result};
use crate::groebner::groebner_basis;
use crate::module::{FreeModule, ModuleElement, ModulePresentation, Submodule};
use crate::ops::{colon, first_not_contained, ideal_power, ideal_times_free};
use crate::poly::Polynomial;
use crate::rational::Rat;
use crate::samuel::{samuel_in, Frame};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// 1-based indices `(i, j)`; for superficiality `i` is the power `n` and
    /// `j` is zero.
    pub i: usize,
    pub j: usize,
    /// Generator of the larger side missing from the smaller one.
    pub witness: ModuleElement,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceVerdict {
    pub holds: bool,
    pub first_violation: Option<Violation>,
    /// Number of powers examined by a superficiality check.
    pub checked_window: usize,
}

impl SequenceVerdict {
    fn ok(window: usize) -> Self {
        SequenceVerdict { holds: true, first_violation: None, checked_window: window }
    }

    fn fail(i: usize, j: usize, witness: ModuleElement, window: usize) -> Self {
        SequenceVerdict { holds: false, first_violation: Some(Violation { i, j, witness }), checked_window: window }
    }
}

/// `((a_1..a_{i-1})M : a_i a_j) = ((a_1..a_{i-1})M : a_j)` for all `i ≤ j`.
pub fn is_d_sequence(ctx: &Context, a: &[Polynomial], m: &ModulePresentation) -> Result<SequenceVerdict> {
    if a.is_empty() {
        return Err(Error::EmptyIdeal);
    }
    let f = &m.ambient;
    for i in 0..a.len() {
        let base = ideal_times_free(f, &a[..i]);
        for j in i..a.len() {
            let prod = a[i].mul(&a[j]);
            let big = colon(ctx, m, &base, &[prod])?;
            let small = colon(ctx, m, &base, &[a[j].clone()])?;
            if let Some(k) = first_not_contained(ctx, &big, &small)? {
                return Ok(SequenceVerdict::fail(i + 1, j + 1, big.gens[k].clone(), 0));
            }
        }
    }
    Ok(SequenceVerdict::ok(0))
}

/// Each `a_i` is a nonzerodivisor on `M/(a_1..a_{i-1})M`.
pub fn is_regular_sequence(ctx: &Context, a: &[Polynomial], m: &ModulePresentation) -> Result<bool> {
    let f = &m.ambient;
    for i in 0..a.len() {
        let base = ideal_times_free(f, &a[..i]);
        let c = colon(ctx, m, &base, &[a[i].clone()])?;
        let mut b = base.clone();
        b.extend(m.relations.iter().cloned());
        if first_not_contained(ctx, &c, &Submodule::new(f.clone(), b)?)?.is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn ideal_contains(ctx: &Context, ideal: &[Polynomial], f: &Polynomial) -> Result<bool> {
    let ring = f.ring();
    let one = FreeModule::new(ring, vec![0]);
    let gb = groebner_basis(ctx, &Submodule::new(one, ideal.iter().map(|p| p.to_vector(0)).collect())?)?;
    gb.contains(&f.to_vector(0))
}

/// `(Q^{n+1}M : a) = Q^n M + (0 : a)` for `n` in a window past the
/// postulation index; a bounded check, not a proof.
pub fn is_superficial_in(ctx: &Context, a: &Polynomial, frame: &Frame, window: usize) -> Result<SequenceVerdict> {
    let m = &frame.module;
    let q = &frame.params;
    if !ideal_contains(ctx, q, a)? {
        return Err(Error::InvalidArgument(format!("{a} does not lie in the ideal")));
    }
    let ring = m.ring();
    let vars: Vec<Polynomial> = (0..ring.nvars()).map(|i| Polynomial::var(ring, i)).collect();
    let mq: Vec<Polynomial> = vars.iter().flat_map(|x| q.iter().map(move |g| x.mul(g))).collect();
    if ideal_contains(ctx, &mq, a)? {
        return Err(Error::InvalidArgument(format!("{a} lies in the maximal ideal times the ideal")));
    }
    let start = samuel_in(ctx, frame)?.postulation_index.max(1);
    let f = &m.ambient;
    let zero_colon = colon(ctx, m, &[], std::slice::from_ref(a))?;
    for n in start..=start + window {
        let lhs = colon(ctx, m, &ideal_times_free(f, &ideal_power(q, n + 1)), std::slice::from_ref(a))?;
        let mut rhs = ideal_times_free(f, &ideal_power(q, n));
        rhs.extend(zero_colon.gens.iter().cloned());
        let rhs = Submodule::new(f.clone(), rhs)?;
        if let Some(k) = first_not_contained(ctx, &lhs, &rhs)? {
            return Ok(SequenceVerdict::fail(n, 0, lhs.gens[k].clone(), window + 1));
        }
    }
    Ok(SequenceVerdict::ok(window + 1))
}

pub fn is_superficial(
    ctx: &Context,
    a: &Polynomial,
    m: &ModulePresentation,
    q: &[Polynomial],
    window: usize,
) -> Result<SequenceVerdict> {
    let frame = Frame::new(ctx, m, q)?;
    let a = frame
        .element(a)
        .ok_or_else(|| Error::InvalidArgument(format!("{a} does not lie in the ideal")))?;
    is_superficial_in(ctx, &a, &frame, window)
}

/// Integer matrix with determinant ±1 and entries in `[-3, 3]`, built as a
/// product of random unit triangular factors.
pub fn random_unimodular(rng: &mut ChaCha8Rng, d: usize) -> Vec<Vec<i64>> {
    loop {
        let mut l = vec![vec![0i64; d]; d];
        let mut u = vec![vec![0i64; d]; d];
        for i in 0..d {
            l[i][i] = 1;
            u[i][i] = if rng.gen_bool(0.5) { 1 } else { -1 };
            for j in 0..i {
                l[i][j] = rng.gen_range(-1..=1);
                u[j][i] = rng.gen_range(-1..=1);
            }
        }
        let mut p: Vec<usize> = (0..d).collect();
        for i in (1..d).rev() {
            p.swap(i, rng.gen_range(0..=i));
        }
        let prod: Vec<Vec<i64>> = (0..d)
            .map(|i| (0..d).map(|j| (0..d).map(|k| l[p[i]][k] * u[k][j]).sum()).collect())
            .collect();
        if prod.iter().flatten().all(|x| x.abs() <= 3) {
            return prod;
        }
    }
}

/// `Σ_j c_ij q_j` for each row `i`.
pub fn recombine(q: &[Polynomial], c: &[Vec<i64>]) -> Vec<Polynomial> {
    c.iter()
        .map(|row| {
            row.iter().zip(q).fold(Polynomial::zero(q[0].ring()), |acc, (&x, g)| {
                acc.add(&g.scale(&Rat::from_int(x)))
            })
        })
        .collect()
}

fn permutations(d: usize) -> Vec<Vec<usize>> {
    if d == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(d - 1) {
        for pos in 0..=p.len() {
            let mut x = p.clone();
            x.insert(pos, d - 1);
            out.push(x);
        }
    }
    out.sort();
    out
}

/// Searches the given order, its permutations (for at most four
/// generators) and `trials` random unimodular recombinations; returns the
/// first list forming a d-sequence, read in the frame's ring. `None` is
/// inconclusive.
pub fn find_d_sequence_in(ctx: &Context, frame: &Frame, trials: usize, seed: u64) -> Result<Option<Vec<Polynomial>>> {
    let q = &frame.params;
    if q.is_empty() {
        return Ok(Some(Vec::new()));
    }
    let d = q.len();
    let mut candidates: Vec<Vec<Polynomial>> = Vec::new();
    if d <= 4 {
        for p in permutations(d) {
            candidates.push(p.iter().map(|&i| q[i].clone()).collect());
        }
    } else {
        candidates.push(q.clone());
    }
    for c in candidates {
        if is_d_sequence(ctx, &c, &frame.module)?.holds {
            return Ok(Some(c));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let c = recombine(q, &random_unimodular(&mut rng, d));
        if is_d_sequence(ctx, &c, &frame.module)?.holds {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

pub fn find_d_sequence_generators(
    ctx: &Context,
    q: &[Polynomial],
    m: &ModulePresentation,
    trials: usize,
    seed: u64,
) -> Result<Option<Vec<Polynomial>>> {
    let frame = Frame::new(ctx, m, q)?;
    let found = find_d_sequence_in(ctx, &frame, trials, seed)?;
    Ok(found.map(|c| match &frame.projection {
        Some(p) => c.iter().map(|g| p.from_p(g)).collect(),
        None => c,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;
    use crate::parse::parse_polynomial;

    fn polys(r: &Ring, s: &[&str]) -> Vec<Polynomial> {
        s.iter().map(|x| parse_polynomial(x, r).unwrap()).collect()
    }

    #[test]
    fn regular_sequences_are_d_sequences() {
        let ctx = Context::default();
        let r = Ring::new(&["X", "Y", "Z"]).unwrap();
        let s = ModulePresentation::quotient_ring(&r, &[]).unwrap();
        let a = polys(&r, &["X", "Y", "Z"]);
        assert!(is_regular_sequence(&ctx, &a, &s).unwrap());
        assert!(is_d_sequence(&ctx, &a, &s).unwrap().holds);
        let v = is_superficial(&ctx, &a[0], &s, &a, 5).unwrap();
        assert!(v.holds);
        assert_eq!(v.checked_window, 6);
    }

    #[test]
    fn order_matters() {
        // M = k[X,Y] ⊕ k[X,Y]/(Y)
        let ctx = Context::default();
        let r = Ring::new(&["X", "Y"]).unwrap();
        let f = FreeModule::new(&r, vec![0, 0]);
        let y = parse_polynomial("Y", &r).unwrap();
        let m = ModulePresentation::new(f.clone(), vec![f.mul_poly(&y, &f.basis(1))]).unwrap();
        let xy = polys(&r, &["X", "Y"]);
        let yx = polys(&r, &["Y", "X"]);
        assert!(is_d_sequence(&ctx, &xy, &m).unwrap().holds);
        let v = is_d_sequence(&ctx, &yx, &m).unwrap();
        assert!(!v.holds);
        assert_eq!(v.first_violation.unwrap().i, 1);
    }

    #[test]
    fn unimodular_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for d in 1..=5 {
            let m = random_unimodular(&mut rng, d);
            let rows: Vec<Vec<Rat>> = m.iter().map(|r| r.iter().map(|&x| Rat::from_int(x)).collect()).collect();
            let inv = crate::linalg::inverse(&rows).unwrap();
            assert!(inv.iter().flatten().all(|x| x.is_integer()));
        }
    }
}
