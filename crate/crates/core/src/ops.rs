//! Submodule operations built on elimination: kernels, preimages, syzygies,
//! colons, intersections, annihilators and saturations.

use crate::context::Context;
use crate::error::{Error, Result};
use crate::groebner::{groebner_basis, groebner_basis_in, GroebnerBasis};
use crate::module::{FreeModule, ModuleElement, ModulePresentation, Submodule};
use crate::order::{Position, Term, TermOrder, Tie, WeightRow};
use crate::poly::Polynomial;
use crate::rational::Rat;
use crate::ring::Monomial;
use crate::vector::Vector;

/// Order on `first ⊕ second` eliminating the `first` slots.
fn elimination_order(total: &FreeModule, first_rank: usize) -> TermOrder {
    let ind: Vec<i64> = (0..total.rank()).map(|s| i64::from(s < first_rank)).collect();
    TermOrder::new(
        vec![
            WeightRow::new(&[], &ind),
            TermOrder::degree_row(&total.ring, &total.degrees),
        ],
        Tie::RevLex,
        Position::TermOverPosition,
    )
}

/// Given generators of a submodule of `first ⊕ second`, a reduced basis of
/// its intersection with `0 ⊕ second` in the default order of `second`.
pub fn eliminate_first(
    ctx: &Context,
    first: &FreeModule,
    second: &FreeModule,
    gens: &[ModuleElement],
) -> Result<GroebnerBasis> {
    let total = first.direct_sum(second);
    let ord = elimination_order(&total, first.rank());
    let gb = groebner_basis_in(ctx, &total, gens, &ord)?;
    let r = first.rank();
    let sord = second.default_order();
    let mut elements: Vec<ModuleElement> = gb
        .elements
        .iter()
        .filter(|e| e.lead_term().is_some_and(|t| t.slot() >= r))
        .map(|e| e.map_slots(|s| s - r, &sord))
        .collect();
    elements.sort_by(|a, b| sord.cmp(&a.terms[0].0, &b.terms[0].0));
    Ok(GroebnerBasis {
        ambient: second.clone(),
        order: sord,
        elements,
        minimal_generators: Vec::new(),
        reduced: true,
    })
}

fn shift(v: &ModuleElement, by: usize, ord: &TermOrder) -> ModuleElement {
    v.map_slots(|s| s + by, ord)
}

/// Minimal homogeneous generating set of a submodule.
pub fn minimize(ctx: &Context, n: &Submodule) -> Result<Submodule> {
    let gb = groebner_basis(ctx, n)?;
    let ord = n.ambient.default_order();
    let gens = gb.minimal_generators.iter().map(|g| g.resort(&ord)).collect();
    Ok(Submodule { ambient: n.ambient.clone(), gens })
}

fn minimal_from_basis(ctx: &Context, gb: GroebnerBasis) -> Result<Submodule> {
    minimize(ctx, &Submodule { ambient: gb.ambient, gens: gb.elements })
}

fn check_columns(source: &FreeModule, target: &FreeModule, columns: &[ModuleElement]) -> Result<()> {
    if columns.len() != source.rank() {
        return Err(Error::LengthMismatch(columns.len(), source.rank()));
    }
    if source.ring != target.ring {
        return Err(Error::RingMismatch);
    }
    for (i, c) in columns.iter().enumerate() {
        target.check_element(c)?;
        if let Some(d) = target.degree_of(c) {
            if d != source.degrees[i] {
                return Err(Error::NotHomogeneous(format!(
                    "column {} has degree {d}, source slot has degree {}",
                    i + 1,
                    source.degrees[i]
                )));
            }
        }
    }
    Ok(())
}

/// Reduced basis of `{e ∈ source : φ(e) ∈ N}` where `φ(e_i) = columns[i]`.
pub fn preimage_basis(
    ctx: &Context,
    source: &FreeModule,
    target: &FreeModule,
    columns: &[ModuleElement],
    n: &[ModuleElement],
) -> Result<GroebnerBasis> {
    check_columns(source, target, columns)?;
    let total = target.direct_sum(source);
    let ord = total.default_order();
    let r = target.rank();
    let mut gens = Vec::with_capacity(columns.len() + n.len());
    for (i, c) in columns.iter().enumerate() {
        let mut terms = c.terms.clone();
        terms.push((Term::new(Monomial::one(), r + i), Rat::one()));
        gens.push(Vector::from_terms(terms, &ord));
    }
    for g in n {
        target.check_element(g)?;
        gens.push(g.resort(&ord));
    }
    eliminate_first(ctx, target, source, &gens)
}

/// Minimal generators of the preimage of `N` under `φ`.
pub fn preimage(
    ctx: &Context,
    source: &FreeModule,
    target: &FreeModule,
    columns: &[ModuleElement],
    n: &[ModuleElement],
) -> Result<Submodule> {
    let gb = preimage_basis(ctx, source, target, columns, n)?;
    minimal_from_basis(ctx, gb)
}

/// Minimal generators of the kernel of `φ: source → target`.
pub fn kernel(
    ctx: &Context,
    source: &FreeModule,
    target: &FreeModule,
    columns: &[ModuleElement],
) -> Result<Submodule> {
    preimage(ctx, source, target, columns, &[])
}

/// Kernel of a matrix given by its polynomial entries in row-major order;
/// source degrees are chosen to make the columns homogeneous.
pub fn kernel_of_matrix(
    ctx: &Context,
    target: &FreeModule,
    cols: usize,
    entries: &[Polynomial],
) -> Result<Submodule> {
    let rows = target.rank();
    if entries.len() != rows * cols {
        return Err(Error::LengthMismatch(entries.len(), rows * cols));
    }
    let mut columns = Vec::with_capacity(cols);
    let mut degrees = Vec::with_capacity(cols);
    for c in 0..cols {
        let comps: Vec<Polynomial> = (0..rows).map(|r| entries[r * cols + c].clone()).collect();
        let v = target.from_components(&comps)?;
        let d = if v.is_zero() {
            0
        } else {
            target.degree_of(&v).ok_or_else(|| Error::NotHomogeneous(format!("column {}", c + 1)))?
        };
        columns.push(v);
        degrees.push(d);
    }
    let source = FreeModule::new(&target.ring, degrees);
    kernel(ctx, &source, target, &columns)
}

/// Syzygies of the elements of a basis (or any list of homogeneous elements).
pub fn syzygy_module(ctx: &Context, ambient: &FreeModule, elems: &[ModuleElement]) -> Result<Submodule> {
    let mut degrees = Vec::with_capacity(elems.len());
    for e in elems {
        degrees.push(ambient.degree_of(e).ok_or_else(|| Error::NotHomogeneous("zero or inhomogeneous element".into()))?);
    }
    let source = FreeModule::new(&ambient.ring, degrees);
    let ord = ambient.default_order();
    let cols: Vec<ModuleElement> = elems.iter().map(|e| e.resort(&ord)).collect();
    kernel(ctx, &source, ambient, &cols)
}

/// `{m ∈ F : J·m ⊆ N}` for a submodule `N` of `F`; the result contains `N`.
pub fn colon_free(ctx: &Context, n: &Submodule, j: &[Polynomial]) -> Result<Submodule> {
    if j.is_empty() {
        return Err(Error::EmptyIdeal);
    }
    let f = &n.ambient;
    let mut js = Vec::new();
    for p in j {
        if *p.ring() != f.ring {
            return Err(Error::RingMismatch);
        }
        if p.is_zero() {
            continue;
        }
        let d = p.homogeneous_degree().ok_or_else(|| Error::NotHomogeneous(p.to_string()))?;
        js.push((p, d));
    }
    if js.is_empty() {
        let gens = (0..f.rank()).map(|i| f.basis(i)).collect();
        return Ok(Submodule { ambient: f.clone(), gens });
    }
    let r = f.rank();
    let mut degrees = Vec::with_capacity(r * js.len());
    for (_, d) in &js {
        degrees.extend(f.degrees.iter().map(|x| x - d));
    }
    let target = FreeModule::new(&f.ring, degrees);
    let tord = target.default_order();
    let mut columns = Vec::with_capacity(r);
    for i in 0..r {
        let mut terms = Vec::new();
        for (b, (p, _)) in js.iter().enumerate() {
            terms.extend(p.terms().map(|(m, c)| (Term::new(*m, b * r + i), c.clone())));
        }
        columns.push(Vector::from_terms(terms, &tord));
    }
    let mut ns = Vec::with_capacity(n.gens.len() * js.len());
    for b in 0..js.len() {
        for g in &n.gens {
            ns.push(shift(g, b * r, &tord));
        }
    }
    preimage(ctx, f, &target, &columns, &ns)
}

/// `(N :_M J)` inside `M = F/R`, returned as a submodule of `F` containing
/// `N + R`.
pub fn colon(ctx: &Context, m: &ModulePresentation, n: &[ModuleElement], j: &[Polynomial]) -> Result<Submodule> {
    let mut gens = n.to_vec();
    gens.extend(m.relations.iter().cloned());
    let sub = Submodule::new(m.ambient.clone(), gens)?;
    colon_free(ctx, &sub, j)
}

/// `N1 ∩ N2` inside a common free module.
pub fn intersection(ctx: &Context, a: &Submodule, b: &Submodule) -> Result<Submodule> {
    if a.ambient != b.ambient {
        return Err(Error::AmbientMismatch);
    }
    let f = &a.ambient;
    let total = f.direct_sum(f);
    let ord = total.default_order();
    let r = f.rank();
    let mut gens = Vec::new();
    for g in &a.gens {
        let v = g.add(&shift(g, r, &ord).resort(&ord), &ord);
        gens.push(Vector::from_terms(v.terms, &ord));
    }
    for g in &b.gens {
        gens.push(g.resort(&ord));
    }
    let gb = eliminate_first(ctx, f, f, &gens)?;
    minimal_from_basis(ctx, gb)
}

/// Annihilator ideal of `F/R`, as generators in `S`.
pub fn annihilator(ctx: &Context, m: &ModulePresentation) -> Result<Vec<Polynomial>> {
    let f = &m.ambient;
    let ring = &f.ring;
    let r = f.rank();
    let s1 = FreeModule::new(ring, vec![0]);
    if r == 0 {
        return Ok(vec![Polynomial::one(ring)]);
    }
    let mut degrees = Vec::with_capacity(r * r);
    for i in 0..r {
        degrees.extend(f.degrees.iter().map(|x| x - f.degrees[i]));
    }
    let target = FreeModule::new(ring, degrees);
    let tord = target.default_order();
    let column = Vector::from_terms(
        (0..r).map(|i| (Term::new(Monomial::one(), i * r + i), Rat::one())).collect(),
        &tord,
    );
    let mut ns = Vec::new();
    for b in 0..r {
        for g in &m.relations {
            ns.push(shift(g, b * r, &tord));
        }
    }
    let sub = preimage(ctx, &s1, &target, &[column], &ns)?;
    Ok(sub.gens.iter().map(|g| s1.component(g, 0)).collect())
}

/// True when every generator of `a` lies in `b`.
pub fn is_contained(ctx: &Context, a: &Submodule, b: &Submodule) -> Result<bool> {
    Ok(first_not_contained(ctx, a, b)?.is_none())
}

/// Index of the first generator of `a` outside `b`.
pub fn first_not_contained(ctx: &Context, a: &Submodule, b: &Submodule) -> Result<Option<usize>> {
    if a.ambient != b.ambient {
        return Err(Error::AmbientMismatch);
    }
    let gb = groebner_basis(ctx, b)?;
    for (i, g) in a.gens.iter().enumerate() {
        if !gb.contains(g)? {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

pub fn submodules_equal(ctx: &Context, a: &Submodule, b: &Submodule) -> Result<bool> {
    Ok(is_contained(ctx, a, b)? && is_contained(ctx, b, a)?)
}

/// `∪_k (N : J^k)` for a submodule `N` of a free module.
pub fn saturation(ctx: &Context, n: &Submodule, j: &[Polynomial]) -> Result<Submodule> {
    let mut cur = minimize(ctx, n)?;
    loop {
        let next = colon_free(ctx, &cur, j)?;
        if is_contained(ctx, &next, &cur)? {
            return Ok(cur);
        }
        cur = next;
    }
}

/// A presentation with minimal generators and minimal relations.
pub fn prune(ctx: &Context, m: &ModulePresentation) -> Result<ModulePresentation> {
    let mut degrees = m.ambient.degrees.clone();
    let ring = m.ambient.ring.clone();
    let mut rels: Vec<ModuleElement> = m.relations.clone();
    loop {
        let f = FreeModule::new(&ring, degrees.clone());
        let ord = f.default_order();
        let unit = rels.iter().enumerate().find_map(|(k, r)| {
            r.terms.iter().find(|(t, _)| t.mono.is_one()).map(|(t, c)| (k, t.slot(), c.clone()))
        });
        let Some((k, slot, c)) = unit else {
            let f = FreeModule::new(&ring, degrees);
            let sub = minimize(ctx, &Submodule::new(f.clone(), rels)?)?;
            return ModulePresentation::new(f, sub.gens);
        };
        // e_slot = -(1/c)(r - c e_slot): substitute into the other relations.
        let r = rels.swap_remove(k);
        let mut out = Vec::with_capacity(rels.len());
        for s in rels {
            let coeff_poly = f.component(&s, slot);
            let mut s2 = s.clone();
            if !coeff_poly.is_zero() {
                let scaled = f.mul_poly(&coeff_poly.scale(&(-c.inv())), &r);
                s2 = s.add(&scaled, &ord);
            }
            debug_assert!(s2.terms.iter().all(|(t, _)| t.slot() != slot));
            let s3 = s2.map_slots(|x| if x > slot { x - 1 } else { x }, &ord);
            if !s3.is_zero() {
                out.push(s3);
            }
        }
        degrees.remove(slot);
        let f2 = FreeModule::new(&ring, degrees.clone());
        let ord2 = f2.default_order();
        rels = out.into_iter().map(|v| v.resort(&ord2)).collect();
    }
}

/// The submodule of `F` generated by `N` and the relations of `M`.
pub fn with_relations(m: &ModulePresentation, n: &[ModuleElement]) -> Result<Submodule> {
    let mut g = n.to_vec();
    g.extend(m.relations.iter().cloned());
    Submodule::new(m.ambient.clone(), g)
}

/// Presentation of the quotient `M / N` for `N` given by elements of `F`.
pub fn quotient_by(m: &ModulePresentation, n: &[ModuleElement]) -> Result<ModulePresentation> {
    let s = with_relations(m, n)?;
    ModulePresentation::new(s.ambient, s.gens)
}

/// The submodule of `M = F/R` generated by the images of `gens`, presented
/// as `S^g / {c : Σ c_i g_i ∈ R}`. Zero vectors of `F` are dropped.
pub fn submodule_presentation(
    ctx: &Context,
    m: &ModulePresentation,
    gens: &[ModuleElement],
) -> Result<ModulePresentation> {
    let gens: Vec<ModuleElement> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    let g = gens.len();
    let mut all = gens;
    all.extend(m.relations.iter().filter(|r| !r.is_zero()).cloned());
    let syz = syzygy_module(ctx, &m.ambient, &all)?;
    let target = FreeModule::new(&m.ambient.ring, syz.ambient.degrees[..g].to_vec());
    let ord = target.default_order();
    let rels: Vec<ModuleElement> = syz
        .gens
        .iter()
        .map(|v| v.filter_slots(|k| k < g, |k| k, &ord))
        .filter(|v| !v.is_zero())
        .collect();
    ModulePresentation::new(target, rels)
}

/// Elements `f·e_i` for `f` in `ideal` and every basis vector `e_i` (the
/// submodule `I·F`).
pub fn ideal_times_free(f: &FreeModule, ideal: &[Polynomial]) -> Vec<ModuleElement> {
    let mut out = Vec::new();
    for p in ideal {
        for i in 0..f.rank() {
            out.push(f.mul_poly(p, &f.basis(i)));
        }
    }
    out
}

/// Elements `f·v` for `f` in `ideal` and `v` in `gens`.
pub fn ideal_times(f: &FreeModule, ideal: &[Polynomial], gens: &[ModuleElement]) -> Vec<ModuleElement> {
    let mut out = Vec::new();
    for p in ideal {
        for g in gens {
            let v = f.mul_poly(p, g);
            if !v.is_zero() {
                out.push(v);
            }
        }
    }
    out
}

/// All products of `k` elements of `gens` (with repetition).
pub fn ideal_power(gens: &[Polynomial], k: usize) -> Vec<Polynomial> {
    let ring = match gens.first() {
        Some(g) => g.ring().clone(),
        None => return Vec::new(),
    };
    let mut out = vec![(0usize, Polynomial::one(&ring))];
    for _ in 0..k {
        let mut next = Vec::new();
        for (start, p) in &out {
            for (i, g) in gens.iter().enumerate().skip(*start) {
                next.push((i, p.mul(g)));
            }
        }
        out = next;
    }
    out.into_iter().map(|(_, p)| p).filter(|p| !p.is_zero()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;
    use crate::ring::Ring;

    fn ctx() -> Context {
        Context::default()
    }

    fn polys(r: &Ring, s: &[&str]) -> Vec<Polynomial> {
        s.iter().map(|x| parse_polynomial(x, r).unwrap()).collect()
    }

    fn ideal(r: &Ring, s: &[&str]) -> Submodule {
        let f = FreeModule::new(r, vec![0]);
        Submodule::new(f, polys(r, s).iter().map(|p| p.to_vector(0)).collect()).unwrap()
    }

    fn gens_text(n: &Submodule) -> Vec<String> {
        let mut v: Vec<String> = n.gens.iter().map(|g| n.ambient.render(g)).collect();
        v.sort();
        v
    }

    #[test]
    fn koszul_syzygies() {
        let r = Ring::new(&["X", "Y", "Z"]).unwrap();
        let s1 = FreeModule::new(&r, vec![0]);
        let els: Vec<_> = polys(&r, &["X", "Y"]).iter().map(|p| p.to_vector(0)).collect();
        let syz = syzygy_module(&ctx(), &s1, &els).unwrap();
        assert_eq!(gens_text(&syz), vec!["[-Y, X]"]);
        let els: Vec<_> = polys(&r, &["X", "Y", "Z"]).iter().map(|p| p.to_vector(0)).collect();
        assert_eq!(syzygy_module(&ctx(), &s1, &els).unwrap().gens.len(), 3);
        let els: Vec<_> = polys(&r, &["X*Y", "X*Z"]).iter().map(|p| p.to_vector(0)).collect();
        assert_eq!(gens_text(&syzygy_module(&ctx(), &s1, &els).unwrap()), vec!["[-Z, Y]"]);
    }

    #[test]
    fn kernels_of_matrices() {
        let r = Ring::new(&["X", "Y"]).unwrap();
        let s1 = FreeModule::new(&r, vec![0]);
        let k = kernel_of_matrix(&ctx(), &s1, 2, &polys(&r, &["X^2", "X*Y"])).unwrap();
        assert_eq!(gens_text(&k), vec!["[-Y, X]"]);
        let s2 = FreeModule::new(&r, vec![0, 0]);
        let k = kernel_of_matrix(&ctx(), &s2, 2, &polys(&r, &["1", "0", "0", "1"])).unwrap();
        assert!(k.gens.is_empty());
    }

    #[test]
    fn colons_and_intersections() {
        let r = Ring::new(&["X", "Y"]).unwrap();
        let c = colon_free(&ctx(), &ideal(&r, &["X^2"]), &polys(&r, &["X"])).unwrap();
        assert_eq!(gens_text(&c), vec!["[X]"]);
        let i = intersection(&ctx(), &ideal(&r, &["X"]), &ideal(&r, &["Y"])).unwrap();
        assert_eq!(gens_text(&i), vec!["[X*Y]"]);
        let m = ModulePresentation::quotient_ring(&r, &polys(&r, &["X*Y"])).unwrap();
        let c = colon(&ctx(), &m, &[], &polys(&r, &["X"])).unwrap();
        assert_eq!(gens_text(&c), vec!["[Y]"]);
        let m = ModulePresentation::quotient_ring(&r, &[]).unwrap();
        assert!(colon(&ctx(), &m, &[], &polys(&r, &["X"])).unwrap().gens.is_empty());
        assert_eq!(colon_free(&ctx(), &ideal(&r, &["X"]), &[]), Err(Error::EmptyIdeal));
    }

    #[test]
    fn annihilators_and_saturation() {
        let r = Ring::new(&["X", "Y"]).unwrap();
        let m = ModulePresentation::quotient_ring(&r, &polys(&r, &["X^2", "X*Y"])).unwrap();
        let ann = annihilator(&ctx(), &m).unwrap();
        let mut a: Vec<String> = ann.iter().map(|p| p.to_string()).collect();
        a.sort();
        assert_eq!(a, vec!["X*Y", "X^2"]);
        let sat = saturation(&ctx(), &ideal(&r, &["X^2", "X*Y"]), &polys(&r, &["X", "Y"])).unwrap();
        assert_eq!(gens_text(&sat), vec!["[X]"]);
    }

    #[test]
    fn pruning_removes_units() {
        let r = Ring::new(&["X", "Y"]).unwrap();
        let f = FreeModule::new(&r, vec![0, 1, 1]);
        // e2 = X e1, e3 = Y e1 (up to sign): the module is S.
        let p = polys(&r, &["X", "-1", "0", "Y", "0", "-1"]);
        let rels = vec![
            f.from_components(&p[0..3]).unwrap(),
            f.from_components(&p[3..6]).unwrap(),
        ];
        let m = ModulePresentation::new(f, rels).unwrap();
        let pm = prune(&ctx(), &m).unwrap();
        assert_eq!(pm.ambient.degrees, vec![0]);
        assert!(pm.relations.is_empty());
    }
}
