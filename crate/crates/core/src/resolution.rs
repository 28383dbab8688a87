//! Free resolutions, Ext against the ring, deficiency modules, dimension and
//! unmixedness.

use crate::context::Context;
use crate::error::{Error, Result};
use crate::hilbert_series::{hilbert_series, series_from_betti, HilbertSeries};
use crate::module::{FreeModule, ModuleElement, ModulePresentation, Submodule};
use crate::ops::{annihilator, kernel, minimize, preimage, prune, saturation};
use crate::order::Term;
use crate::poly::Polynomial;
use crate::vector::Vector;

/// `F_0 ← F_1 ← … ← F_L`; `differentials[i]` holds the columns of
/// `F_{i+1} → F_i`.
#[derive(Clone, Debug)]
pub struct FreeResolution {
    pub modules: Vec<FreeModule>,
    pub differentials: Vec<Vec<ModuleElement>>,
}

/// Image of `v ∈ source` under the map with the given columns.
pub fn apply_map(source: &FreeModule, target: &FreeModule, columns: &[ModuleElement], v: &ModuleElement) -> ModuleElement {
    let ord = target.default_order();
    let mut acc = Vector::zero();
    for (i, col) in columns.iter().enumerate() {
        let c = source.component(v, i);
        if c.is_zero() || col.is_zero() {
            continue;
        }
        acc = acc.add(&target.mul_poly(&c, col), &ord);
    }
    acc
}

impl FreeResolution {
    pub fn length(&self) -> usize {
        self.modules.len() - 1
    }

    /// Slot degrees of each free module.
    pub fn betti_degrees(&self) -> Vec<Vec<i64>> {
        self.modules.iter().map(|f| f.degrees.clone()).collect()
    }

    pub fn betti_numbers(&self) -> Vec<usize> {
        self.modules.iter().map(|f| f.rank()).collect()
    }

    /// `d_i ∘ d_{i+1} = 0` for all consecutive differentials.
    pub fn composites_vanish(&self) -> bool {
        for i in 1..self.differentials.len() {
            for col in &self.differentials[i] {
                let img = apply_map(&self.modules[i], &self.modules[i - 1], &self.differentials[i - 1], col);
                if !img.is_zero() {
                    return false;
                }
            }
        }
        true
    }

    pub fn hilbert_series(&self) -> HilbertSeries {
        series_from_betti(self.modules[0].ring.degrees(), &self.betti_degrees())
    }

    /// Entry `(row r, column c)` of the differential `F_{i+1} → F_i`.
    pub fn entry(&self, i: usize, r: usize, c: usize) -> Polynomial {
        self.modules[i].component(&self.differentials[i][c], r)
    }
}

/// Resolution by iterated minimal kernels.
pub fn free_resolution(ctx: &Context, m: &ModulePresentation) -> Result<FreeResolution> {
    let f0 = m.ambient.clone();
    let n = f0.ring.nvars();
    let rels = minimize(ctx, &m.relations_submodule())?;
    let mut modules = vec![f0];
    let mut differentials = Vec::new();
    let mut cols = rels.gens;
    while !cols.is_empty() {
        let prev = modules.last().expect("nonempty");
        let degrees: Vec<i64> = cols.iter().map(|c| prev.degree_of(c).expect("homogeneous")).collect();
        let src = FreeModule::new(&prev.ring, degrees);
        let next = kernel(ctx, &src, prev, &cols)?;
        modules.push(src);
        differentials.push(cols);
        cols = next.gens;
        if modules.len() > n + 2 {
            return Err(Error::Invariant("resolution longer than the number of variables".into()));
        }
    }
    Ok(FreeResolution { modules, differentials })
}

fn dual(f: &FreeModule) -> FreeModule {
    FreeModule::new(&f.ring, f.degrees.iter().map(|d| -d).collect())
}

/// Columns of the transpose of `F_{i+1} → F_i`, a map `F_i* → F_{i+1}*`.
fn transpose(res: &FreeResolution, i: usize) -> Vec<ModuleElement> {
    let fi = &res.modules[i];
    let tgt = dual(&res.modules[i + 1]);
    let ord = tgt.default_order();
    let cols = &res.differentials[i];
    (0..fi.rank())
        .map(|r| {
            let mut terms = Vec::new();
            for (c, col) in cols.iter().enumerate() {
                for (t, x) in &col.terms {
                    if t.slot() == r {
                        terms.push((Term::new(t.mono, c), x.clone()));
                    }
                }
            }
            Vector::from_terms(terms, &ord)
        })
        .collect()
}

fn zero_module(f: &FreeModule) -> ModulePresentation {
    ModulePresentation::free(FreeModule::new(&f.ring, Vec::new()))
}

/// `Ext^i(M, S)` as cohomology of the dual of a resolution, in its natural
/// grading; the presentation is pruned.
pub fn ext_from_resolution(ctx: &Context, res: &FreeResolution, i: usize) -> Result<ModulePresentation> {
    let l = res.length();
    if i > l {
        return Ok(zero_module(&res.modules[0]));
    }
    let fi_dual = dual(&res.modules[i]);
    let kgens: Vec<ModuleElement> = if i < l {
        let tgt = dual(&res.modules[i + 1]);
        kernel(ctx, &fi_dual, &tgt, &transpose(res, i))?.gens
    } else {
        (0..fi_dual.rank()).map(|s| fi_dual.basis(s)).collect()
    };
    if kgens.is_empty() {
        return Ok(zero_module(&res.modules[0]));
    }
    let image: Vec<ModuleElement> = if i >= 1 { transpose(res, i - 1) } else { Vec::new() };
    let degrees: Vec<i64> = kgens.iter().map(|k| fi_dual.degree_of(k).expect("homogeneous")).collect();
    let gens_module = FreeModule::new(&fi_dual.ring, degrees);
    let rels = preimage(ctx, &gens_module, &fi_dual, &kgens, &image)?;
    let pres = ModulePresentation::new(gens_module, rels.gens)?;
    prune(ctx, &pres)
}

pub fn ext_module(ctx: &Context, m: &ModulePresentation, i: usize) -> Result<ModulePresentation> {
    let res = free_resolution(ctx, m)?;
    ext_from_resolution(ctx, &res, i)
}

/// Krull dimension from the Hilbert series; `None` for the zero module.
pub fn krull_dim(ctx: &Context, m: &ModulePresentation) -> Result<Option<usize>> {
    Ok(hilbert_series(ctx, m)?.dim())
}

/// The dual of the `j`-th local cohomology, realised as `Ext^{n-j}(M, S)`.
#[derive(Clone, Debug)]
pub struct DeficiencyModule {
    pub index: usize,
    pub presentation: ModulePresentation,
    pub dim: Option<usize>,
}

impl DeficiencyModule {
    pub fn is_zero(&self) -> bool {
        self.dim.is_none()
    }
}

fn make_deficiency(ctx: &Context, j: usize, presentation: ModulePresentation) -> Result<DeficiencyModule> {
    let dim = krull_dim(ctx, &presentation)?;
    if let Some(d) = dim {
        if d > j {
            return Err(Error::Invariant(format!("deficiency module {j} has dimension {d}")));
        }
    }
    Ok(DeficiencyModule { index: j, presentation, dim })
}

pub fn deficiency_module(ctx: &Context, m: &ModulePresentation, j: usize) -> Result<DeficiencyModule> {
    let n = m.ring().nvars();
    if j > n {
        return Err(Error::IndexOutOfRange(format!("deficiency index {j} exceeds {n}")));
    }
    let p = ext_module(ctx, m, n - j)?;
    make_deficiency(ctx, j, p)
}

/// All deficiency modules `M_0, …, M_{s-1}` from one resolution.
pub fn deficiency_modules(ctx: &Context, m: &ModulePresentation, s: usize) -> Result<Vec<DeficiencyModule>> {
    let n = m.ring().nvars();
    if s == 0 {
        return Ok(Vec::new());
    }
    let res = free_resolution(ctx, m)?;
    (0..s)
        .map(|j| {
            let p = ext_from_resolution(ctx, &res, n - j)?;
            make_deficiency(ctx, j, p)
        })
        .collect()
}

/// No associated prime of dimension below `dim M`.
pub fn is_unmixed(ctx: &Context, m: &ModulePresentation) -> Result<bool> {
    let Some(d) = krull_dim(ctx, m)? else { return Ok(true) };
    let defs = deficiency_modules(ctx, m, d)?;
    Ok(defs.iter().all(|dm| dm.dim.is_none_or(|x| x < dm.index)))
}

fn ideal_product(a: &[Polynomial], b: &[Polynomial]) -> Vec<Polynomial> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(x.mul(y));
        }
    }
    out
}

/// The largest submodule of dimension below `dim M`, lifted to the ambient
/// free module (it contains the relations). Computed as the torsion with
/// respect to the product of the annihilators of the lower deficiency
/// modules.
pub fn unmixed_component(ctx: &Context, m: &ModulePresentation) -> Result<Submodule> {
    let d = match krull_dim(ctx, m)? {
        Some(d) if d >= 1 => d,
        found => {
            return Err(Error::Dimension {
                found: found.map_or(-1, |x| x as i64),
                required: "at least 1".into(),
            })
        }
    };
    let defs = deficiency_modules(ctx, m, d)?;
    let mut j: Option<Vec<Polynomial>> = None;
    for dm in defs.iter().filter(|x| !x.is_zero()) {
        let ann = annihilator(ctx, &dm.presentation)?;
        j = Some(match j {
            None => ann,
            Some(prev) => ideal_product(&prev, &ann),
        });
    }
    match j {
        None => Ok(m.relations_submodule()),
        Some(j) => saturation(ctx, &m.relations_submodule(), &j),
    }
}

/// `H^0_m(M)` lifted to the ambient free module.
pub fn zeroth_local_cohomology(ctx: &Context, m: &ModulePresentation) -> Result<Submodule> {
    let ring = m.ring();
    let vars: Vec<Polynomial> = (0..ring.nvars()).map(|i| Polynomial::var(ring, i)).collect();
    saturation(ctx, &m.relations_submodule(), &vars)
}

/// Length of `N / R` for submodules `R ⊆ N` of the same free module with
/// `N/R` of finite length.
pub fn length_between(ctx: &Context, smaller: &Submodule, larger: &Submodule) -> Result<i128> {
    let a = hilbert_series(ctx, &ModulePresentation::new(smaller.ambient.clone(), smaller.gens.clone())?)?;
    let b = hilbert_series(ctx, &ModulePresentation::new(larger.ambient.clone(), larger.gens.clone())?)?;
    let shift = a.shift.min(b.shift);
    let len = (a.numerator.len() as i64 + a.shift).max(b.numerator.len() as i64 + b.shift) - shift;
    let mut num = vec![0i128; len.max(0) as usize];
    for (i, c) in a.numerator.iter().enumerate() {
        num[(i as i64 + a.shift - shift) as usize] += c;
    }
    for (i, c) in b.numerator.iter().enumerate() {
        num[(i as i64 + b.shift - shift) as usize] -= c;
    }
    while num.last() == Some(&0) {
        num.pop();
    }
    let diff = HilbertSeries { shift, numerator: num, weights: a.weights.clone() };
    diff.length().ok_or_else(|| Error::Invariant("quotient is not of finite length".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;
    use crate::ring::Ring;

    fn quotient(r: &Ring, gens: &[&str]) -> ModulePresentation {
        let p: Vec<_> = gens.iter().map(|s| parse_polynomial(s, r).unwrap()).collect();
        ModulePresentation::quotient_ring(r, &p).unwrap()
    }

    #[test]
    fn koszul_resolution() {
        let ctx = Context::default();
        let r = Ring::new(&["X", "Y"]).unwrap();
        let res = free_resolution(&ctx, &quotient(&r, &["X", "Y"])).unwrap();
        assert_eq!(res.betti_numbers(), vec![1, 2, 1]);
        assert!(res.composites_vanish());
        let free = free_resolution(&ctx, &quotient(&r, &[])).unwrap();
        assert_eq!(free.length(), 0);
    }

    #[test]
    fn intersection_of_planes_resolution() {
        let ctx = Context::default();
        let r = Ring::new(&["X1", "X2", "Y1", "Y2"]).unwrap();
        let m = quotient(&r, &["X1*Y1", "X1*Y2", "X2*Y1", "X2*Y2"]);
        let res = free_resolution(&ctx, &m).unwrap();
        assert_eq!(res.betti_numbers(), vec![1, 4, 4, 1]);
        assert!(res.composites_vanish());
        assert_eq!(res.hilbert_series(), hilbert_series(&ctx, &m).unwrap());
    }

    #[test]
    fn ext_of_residue_field() {
        let ctx = Context::default();
        let r = Ring::new(&["X", "Y"]).unwrap();
        let m = quotient(&r, &["X", "Y"]);
        let e2 = ext_module(&ctx, &m, 2).unwrap();
        assert_eq!(e2.ambient.degrees, vec![-2]);
        let hs = hilbert_series(&ctx, &e2).unwrap();
        assert_eq!(hs.length(), Some(1));
        assert_eq!(krull_dim(&ctx, &ext_module(&ctx, &m, 1).unwrap()).unwrap(), None);
        let s = quotient(&r, &[]);
        let e0 = ext_module(&ctx, &s, 0).unwrap();
        assert_eq!(e0.ambient.degrees, vec![0]);
        assert!(e0.relations.is_empty());
    }

    #[test]
    fn unmixedness() {
        let ctx = Context::default();
        let r = Ring::new(&["X", "Y"]).unwrap();
        let m = quotient(&r, &["X^2", "X*Y"]);
        assert!(!is_unmixed(&ctx, &m).unwrap());
        let u = unmixed_component(&ctx, &m).unwrap();
        let x = parse_polynomial("X", &r).unwrap().to_vector(0);
        let gb = crate::groebner::groebner_basis(&ctx, &u).unwrap();
        assert!(gb.contains(&x).unwrap());
        assert!(is_unmixed(&ctx, &quotient(&r, &["X*Y"])).unwrap());
        let h0 = zeroth_local_cohomology(&ctx, &m).unwrap();
        assert_eq!(length_between(&ctx, &m.relations_submodule(), &h0).unwrap(), 1);
    }
}
