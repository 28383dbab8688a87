//! Brute-force graded linear algebra used to cross-check the Gröbner engine.
//!
//! Everything here works one degree at a time: a graded free module over
//! `k[x_1..x_n]` is cut down to the finite-dimensional vector space spanned
//! by its basis terms of degree `t`, and every question becomes a rank
//! computation over the rationals. Nothing is shared with the main library
//! beyond the meaning of the inputs.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Exponent vector.
pub type Exps = Vec<u32>;

/// Polynomial as a list of terms; repeated monomials are summed.
pub type Poly = Vec<(Exps, BigRational)>;

/// Element of a free module: `(slot, monomial, coefficient)` triples.
pub type Elem = Vec<(usize, Exps, BigRational)>;

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// All exponent vectors in `nvars` variables of total degree `d`, in a
/// fixed order.
pub fn monomials_of_degree(nvars: usize, d: i64) -> Vec<Exps> {
    let mut out = Vec::new();
    if d < 0 {
        return out;
    }
    if nvars == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    let mut cur = vec![0u32; nvars];
    fill(&mut cur, 0, d as u32, &mut out);
    out
}

fn fill(cur: &mut Vec<u32>, i: usize, left: u32, out: &mut Vec<Exps>) {
    if i + 1 == cur.len() {
        cur[i] = left;
        out.push(cur.clone());
        return;
    }
    for e in (0..=left).rev() {
        cur[i] = e;
        fill(cur, i + 1, left - e, out);
    }
    cur[i] = 0;
}

fn add_exps(a: &[u32], b: &[u32]) -> Exps {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn total(a: &[u32]) -> i64 {
    a.iter().map(|&x| x as i64).sum()
}

/// A graded free module `⊕ S(-d_k)`.
#[derive(Clone, Debug)]
pub struct Free {
    pub nvars: usize,
    pub degrees: Vec<i64>,
}

impl Free {
    pub fn new(nvars: usize, degrees: Vec<i64>) -> Self {
        Free { nvars, degrees }
    }

    /// Basis terms of degree `t`, each mapped to its coordinate index.
    pub fn basis(&self, t: i64) -> BTreeMap<(usize, Exps), usize> {
        let mut map = BTreeMap::new();
        for (k, &d) in self.degrees.iter().enumerate() {
            for m in monomials_of_degree(self.nvars, t - d) {
                let n = map.len();
                map.insert((k, m), n);
            }
        }
        map
    }

    pub fn dim(&self, t: i64) -> usize {
        self.degrees.iter().map(|&d| monomials_of_degree(self.nvars, t - d).len()).sum()
    }

    /// Degree of an element, taken from its first term; `None` for zero.
    pub fn degree_of(&self, e: &Elem) -> Option<i64> {
        e.iter().find(|(_, _, c)| !c.is_zero()).map(|(k, m, _)| self.degrees[*k] + total(m))
    }
}

/// Incremental row echelon form over the rationals with sparse rows.
#[derive(Default)]
pub struct Echelon {
    pivots: BTreeMap<usize, BTreeMap<usize, BigRational>>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `row` and keeps it if independent. Returns true when the
    /// rank grew.
    pub fn insert(&mut self, mut row: BTreeMap<usize, BigRational>) -> bool {
        row.retain(|_, c| !c.is_zero());
        loop {
            let Some((&lead, _)) = row.iter().next() else { return false };
            match self.pivots.get(&lead) {
                Some(p) => {
                    let f = row[&lead].clone();
                    for (col, c) in p {
                        let v = row.entry(*col).or_insert_with(BigRational::zero);
                        *v -= &f * c;
                        if v.is_zero() {
                            row.remove(col);
                        }
                    }
                }
                None => {
                    let inv = BigRational::one() / row[&lead].clone();
                    for v in row.values_mut() {
                        *v *= &inv;
                    }
                    self.pivots.insert(lead, row);
                    return true;
                }
            }
        }
    }
}

/// Coordinates of `mono · e` in the degree-`t` basis of `free`.
fn coordinates(
    basis: &BTreeMap<(usize, Exps), usize>,
    mono: &[u32],
    e: &Elem,
) -> BTreeMap<usize, BigRational> {
    let mut row: BTreeMap<usize, BigRational> = BTreeMap::new();
    for (k, m, c) in e {
        if c.is_zero() {
            continue;
        }
        let key = (*k, add_exps(mono, m));
        let idx = *basis.get(&key).expect("inhomogeneous element");
        *row.entry(idx).or_insert_with(BigRational::zero) += c;
    }
    row
}

/// Dimension of the degree-`t` part of the submodule generated by `gens`.
pub fn submodule_dim(free: &Free, gens: &[Elem], t: i64) -> usize {
    let basis = free.basis(t);
    let full = basis.len();
    let mut ech = Echelon::default();
    for g in gens {
        let Some(d) = free.degree_of(g) else { continue };
        for mono in monomials_of_degree(free.nvars, t - d) {
            ech.insert(coordinates(&basis, &mono, g));
            if ech.rank() == full {
                return full;
            }
        }
    }
    ech.rank()
}

/// `dim_k (F/N)_t` for `N` generated by `gens`.
pub fn quotient_dim(free: &Free, gens: &[Elem], t: i64) -> usize {
    free.dim(t) - submodule_dim(free, gens, t)
}

/// Total length of `F/N`, summing degree by degree until a vanishing
/// degree at or beyond the largest generator degree (past which every
/// later degree vanishes too). `None` if no such degree is found below
/// `cap`.
pub fn quotient_length(free: &Free, gens: &[Elem], cap: i64) -> Option<usize> {
    let lo = *free.degrees.iter().min()?;
    let hi = *free.degrees.iter().max()?;
    let mut sum = 0;
    for t in lo..=cap {
        let q = quotient_dim(free, gens, t);
        sum += q;
        if q == 0 && t >= hi {
            return Some(sum);
        }
    }
    None
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut acc: BTreeMap<Exps, BigRational> = BTreeMap::new();
    for (x, c) in a {
        for (y, d) in b {
            *acc.entry(add_exps(x, y)).or_insert_with(BigRational::zero) += c * d;
        }
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// All products of `k` elements of `params` (with repetition).
pub fn power_generators(nvars: usize, params: &[Poly], k: usize) -> Vec<Poly> {
    let mut out = Vec::new();
    let one: Poly = vec![(vec![0; nvars], BigRational::one())];
    products(params, 0, k, one, &mut out);
    out
}

fn products(params: &[Poly], from: usize, k: usize, acc: Poly, out: &mut Vec<Poly>) {
    if k == 0 {
        out.push(acc);
        return;
    }
    for i in from..params.len() {
        products(params, i, k - 1, poly_mul(&acc, &params[i]), out);
    }
}

/// `ℓ(M/Q^{n+1}M)` for `M = F/⟨relations⟩` and `Q = (params)`.
pub fn length_mod_power(free: &Free, relations: &[Elem], params: &[Poly], n: usize, cap: i64) -> Option<usize> {
    let mut gens: Vec<Elem> = relations.to_vec();
    for p in power_generators(free.nvars, params, n + 1) {
        for k in 0..free.degrees.len() {
            gens.push(p.iter().map(|(m, c)| (k, m.clone(), c.clone())).collect());
        }
    }
    quotient_length(free, &gens, cap)
}

/// A graded map between free modules, column `j` the image of the `j`-th
/// source basis vector as polynomial entries, one per target slot.
#[derive(Clone, Debug)]
pub struct GradedMap {
    pub source: Free,
    pub target: Free,
    pub columns: Vec<Vec<Poly>>,
}

impl GradedMap {
    fn column_elem(&self, j: usize) -> Elem {
        let mut e = Elem::new();
        for (k, p) in self.columns[j].iter().enumerate() {
            for (m, c) in p {
                e.push((k, m.clone(), c.clone()));
            }
        }
        e
    }

    /// Rank of the degree-`t` component.
    pub fn rank(&self, t: i64) -> usize {
        let basis = self.target.basis(t);
        let mut ech = Echelon::default();
        for (j, &d) in self.source.degrees.iter().enumerate() {
            let col = self.column_elem(j);
            for mono in monomials_of_degree(self.source.nvars, t - d) {
                ech.insert(coordinates(&basis, &mono, &col));
            }
        }
        ech.rank()
    }

    /// The dual map `Hom(target, S) → Hom(source, S)`.
    pub fn transpose(&self) -> GradedMap {
        let neg = |f: &Free| Free::new(f.nvars, f.degrees.iter().map(|d| -d).collect());
        let columns = (0..self.target.degrees.len())
            .map(|k| self.columns.iter().map(|col| col[k].clone()).collect())
            .collect();
        GradedMap { source: neg(&self.target), target: neg(&self.source), columns }
    }
}

/// Graded dimension `dim_k Ext^i(M, S)_t` from a free resolution given by
/// its differentials `maps[i]: F_{i+1} → F_i`.
pub fn ext_dim(maps: &[GradedMap], i: usize, t: i64) -> usize {
    let len = maps.len();
    let dual_i = if i == 0 {
        maps.first().map(|m| m.target.clone())
    } else if i <= len {
        Some(maps[i - 1].source.clone())
    } else {
        None
    };
    let Some(fi) = dual_i else { return 0 };
    let dim = Free::new(fi.nvars, fi.degrees.iter().map(|d| -d).collect()).dim(t);
    let into = if i == 0 { 0 } else { maps[i - 1].transpose().rank(t) };
    let out = if i < len { maps[i].transpose().rank(t) } else { 0 };
    dim - into - out
}

/// Homology dimension `dim_k H_i(F_•)_t` for `i ≥ 1` of the complex given by
/// the differentials `maps[i]: F_{i+1} → F_i`.
pub fn homology_dim(maps: &[GradedMap], i: usize, t: i64) -> usize {
    assert!(i >= 1 && i <= maps.len());
    let f = &maps[i - 1].source;
    let out = maps[i - 1].rank(t);
    let into = if i < maps.len() { maps[i].rank(t) } else { 0 };
    f.dim(t) - out - into
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(e: &[u32]) -> Exps {
        e.to_vec()
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(monomials_of_degree(4, 0).len(), 1);
        assert!(monomials_of_degree(2, -1).is_empty());
    }

    #[test]
    fn quotient_of_a_complete_intersection() {
        // k[x,y]/(x^2, y^3) has length 6
        let f = Free::new(2, vec![0]);
        let gens = vec![vec![(0, mono(&[2, 0]), rat(1))], vec![(0, mono(&[0, 3]), rat(1))]];
        assert_eq!(quotient_length(&f, &gens, 20), Some(6));
    }

    #[test]
    fn powers_of_the_maximal_ideal() {
        // ℓ(S/m^{n+1}) = C(n+2, 2) in two variables
        let f = Free::new(2, vec![0]);
        let x: Poly = vec![(mono(&[1, 0]), rat(1))];
        let y: Poly = vec![(mono(&[0, 1]), rat(1))];
        assert_eq!(length_mod_power(&f, &[], &[x, y], 2, 20), Some(6));
    }

    #[test]
    fn koszul_complex_is_exact() {
        // x, y on k[x,y]: 0 → S(-2) → S(-1)^2 → S
        let x: Poly = vec![(mono(&[1, 0]), rat(1))];
        let y: Poly = vec![(mono(&[0, 1]), rat(1))];
        let ny: Poly = vec![(mono(&[0, 1]), rat(-1))];
        let d1 = GradedMap {
            source: Free::new(2, vec![1, 1]),
            target: Free::new(2, vec![0]),
            columns: vec![vec![x.clone()], vec![y.clone()]],
        };
        let d2 = GradedMap {
            source: Free::new(2, vec![2]),
            target: Free::new(2, vec![1, 1]),
            columns: vec![vec![ny, x]],
        };
        let maps = vec![d1, d2];
        for t in 0..6 {
            assert_eq!(homology_dim(&maps, 1, t), 0);
            assert_eq!(homology_dim(&maps, 2, t), 0);
        }
        // Ext^2(k, S) = k(2): one dimension in degree -2
        assert_eq!(ext_dim(&maps, 2, -2), 1);
        assert_eq!(ext_dim(&maps, 2, -1), 0);
        assert_eq!(ext_dim(&maps, 1, -1), 0);
        assert_eq!(ext_dim(&maps, 0, 0), 0);
    }
}
