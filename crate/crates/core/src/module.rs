//! Graded free modules, submodules and module presentations.

use crate::error::{Error, Result};
use crate::order::{Term, TermOrder};
use crate::poly::{poly_order, Polynomial};
use crate::rational::Rat;
use crate::ring::{Monomial, Ring};
use crate::vector::Vector;

/// Element of a free module with rational coefficients.
pub type ModuleElement = Vector<Rat>;

/// `⊕ S(-d_i)`: a free module with a degree attached to each basis vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeModule {
    pub ring: Ring,
    pub degrees: Vec<i64>,
}

impl FreeModule {
    pub fn new(ring: &Ring, degrees: Vec<i64>) -> Self {
        FreeModule { ring: ring.clone(), degrees }
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    /// Degrevlex, term over position, degrees include slot degrees.
    pub fn default_order(&self) -> TermOrder {
        TermOrder::degrevlex(&self.ring, &self.degrees)
    }

    pub fn term_degree(&self, t: &Term) -> i64 {
        self.ring.deg(&t.mono) + self.degrees[t.slot()]
    }

    /// Degree of a homogeneous element; `None` for zero or inhomogeneous.
    pub fn degree_of(&self, v: &ModuleElement) -> Option<i64> {
        let mut it = v.terms.iter().map(|(t, _)| self.term_degree(t));
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn contains(&self, v: &ModuleElement) -> bool {
        v.terms.iter().all(|(t, _)| t.slot() < self.rank())
    }

    pub fn check_element(&self, v: &ModuleElement) -> Result<()> {
        if !self.contains(v) {
            return Err(Error::AmbientMismatch);
        }
        if !v.is_zero() && self.degree_of(v).is_none() {
            return Err(Error::NotHomogeneous(self.render(v)));
        }
        Ok(())
    }

    /// `self ⊕ other` with the slots of `other` placed after those of `self`.
    pub fn direct_sum(&self, other: &FreeModule) -> FreeModule {
        let mut d = self.degrees.clone();
        d.extend_from_slice(&other.degrees);
        FreeModule::new(&self.ring, d)
    }

    pub fn basis(&self, i: usize) -> ModuleElement {
        Vector::basis(i)
    }

    pub fn from_components(&self, comps: &[Polynomial]) -> Result<ModuleElement> {
        if comps.len() != self.rank() {
            return Err(Error::LengthMismatch(comps.len(), self.rank()));
        }
        let mut terms = Vec::new();
        for (i, p) in comps.iter().enumerate() {
            if *p.ring() != self.ring {
                return Err(Error::RingMismatch);
            }
            terms.extend(p.terms().map(|(m, c)| (Term::new(*m, i), c.clone())));
        }
        let v = Vector::from_terms(terms, &self.default_order());
        Ok(v)
    }

    pub fn components(&self, v: &ModuleElement) -> Vec<Polynomial> {
        let mut comps: Vec<Vec<(Monomial, Rat)>> = vec![Vec::new(); self.rank()];
        for (t, c) in &v.terms {
            comps[t.slot()].push((t.mono, c.clone()));
        }
        comps.into_iter().map(|t| Polynomial::from_terms(&self.ring, t)).collect()
    }

    pub fn component(&self, v: &ModuleElement, i: usize) -> Polynomial {
        let ord = poly_order(&self.ring);
        let terms: Vec<_> = v
            .terms
            .iter()
            .filter(|(t, _)| t.slot() == i)
            .map(|(t, c)| (Term::new(t.mono, 0), c.clone()))
            .collect();
        Polynomial::from_sorted_vector(&self.ring, Vector::from_terms(terms, &ord))
    }

    /// Polynomial times element, result in default order.
    pub fn mul_poly(&self, f: &Polynomial, v: &ModuleElement) -> ModuleElement {
        let mut terms = Vec::with_capacity(f.len() * v.len());
        for (m, c) in f.terms() {
            for (t, x) in &v.terms {
                terms.push((Term::new(t.mono.mul(m), t.slot()), c * x));
            }
        }
        Vector::from_terms(terms, &self.default_order())
    }

    pub fn render(&self, v: &ModuleElement) -> String {
        let comps: Vec<String> = self.components(v).iter().map(|p| p.to_string()).collect();
        format!("[{}]", comps.join(", "))
    }
}

/// Submodule of a free module given by homogeneous generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Submodule {
    pub ambient: FreeModule,
    pub gens: Vec<ModuleElement>,
}

impl Submodule {
    pub fn new(ambient: FreeModule, gens: Vec<ModuleElement>) -> Result<Self> {
        let ord = ambient.default_order();
        let mut out = Vec::with_capacity(gens.len());
        for g in gens {
            let g = if g.is_sorted(&ord) { g } else { g.resort(&ord) };
            ambient.check_element(&g)?;
            if !g.is_zero() {
                out.push(g);
            }
        }
        Ok(Submodule { ambient, gens: out })
    }

    pub fn zero(ambient: FreeModule) -> Self {
        Submodule { ambient, gens: Vec::new() }
    }

    pub fn ring(&self) -> &Ring {
        &self.ambient.ring
    }
}

/// A module `F / N` given by generators of `N` inside the free module `F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModulePresentation {
    pub ambient: FreeModule,
    pub relations: Vec<ModuleElement>,
}

impl ModulePresentation {
    pub fn new(ambient: FreeModule, relations: Vec<ModuleElement>) -> Result<Self> {
        let sub = Submodule::new(ambient, relations)?;
        Ok(ModulePresentation { ambient: sub.ambient, relations: sub.gens })
    }

    /// `S / I`.
    pub fn quotient_ring(ring: &Ring, ideal: &[Polynomial]) -> Result<Self> {
        let f = FreeModule::new(ring, vec![0]);
        let rels = ideal
            .iter()
            .map(|p| {
                if *p.ring() != *ring {
                    return Err(Error::RingMismatch);
                }
                Ok(p.to_vector(0))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(f, rels)
    }

    /// Module given by a matrix whose columns are the relations; the degrees
    /// of the generators are inferred so that every column is homogeneous.
    pub fn from_matrix(ring: &Ring, rows: usize, cols: usize, entries: &[Polynomial]) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::LengthMismatch(entries.len(), rows * cols));
        }
        let degrees = infer_row_degrees(rows, cols, entries)?;
        let f = FreeModule::new(ring, degrees);
        let mut rels = Vec::with_capacity(cols);
        for c in 0..cols {
            let comps: Vec<Polynomial> = (0..rows).map(|r| entries[r * cols + c].clone()).collect();
            rels.push(f.from_components(&comps)?);
        }
        Self::new(f, rels)
    }

    pub fn free(f: FreeModule) -> Self {
        ModulePresentation { ambient: f, relations: Vec::new() }
    }

    pub fn ring(&self) -> &Ring {
        &self.ambient.ring
    }

    pub fn relations_submodule(&self) -> Submodule {
        Submodule { ambient: self.ambient.clone(), gens: self.relations.clone() }
    }
}

/// Chooses row degrees making each column of a matrix homogeneous.
fn infer_row_degrees(rows: usize, cols: usize, entries: &[Polynomial]) -> Result<Vec<i64>> {
    for e in entries {
        if !e.is_homogeneous() {
            return Err(Error::NotHomogeneous(e.to_string()));
        }
    }
    // Union-find style propagation: rows linked through a column must differ
    // by the difference of their entries' degrees.
    let mut deg: Vec<Option<i64>> = vec![None; rows];
    let mut col_deg: Vec<Option<i64>> = vec![None; cols];
    loop {
        let mut changed = false;
        for c in 0..cols {
            for r in 0..rows {
                let Some(d) = entries[r * cols + c].homogeneous_degree() else { continue };
                match (deg[r], col_deg[c]) {
                    (Some(rd), None) => {
                        col_deg[c] = Some(rd + d);
                        changed = true;
                    }
                    (None, Some(cd)) => {
                        deg[r] = Some(cd - d);
                        changed = true;
                    }
                    (Some(rd), Some(cd)) if rd + d != cd => {
                        return Err(Error::NotHomogeneous(format!(
                            "column {} of the presentation matrix",
                            c + 1
                        )));
                    }
                    _ => {}
                }
            }
        }
        if !changed {
            match deg.iter().position(|d| d.is_none()) {
                Some(r) => deg[r] = Some(0),
                None => break,
            }
        }
    }
    // Shift each connected block so its smallest degree is zero.
    let degs: Vec<i64> = deg.into_iter().map(|d| d.unwrap_or(0)).collect();
    Ok(normalize_blocks(rows, cols, entries, degs))
}

fn normalize_blocks(rows: usize, cols: usize, entries: &[Polynomial], mut degs: Vec<i64>) -> Vec<i64> {
    let mut comp: Vec<usize> = (0..rows).collect();
    fn find(c: &mut Vec<usize>, x: usize) -> usize {
        let mut r = x;
        while c[r] != r {
            r = c[r];
        }
        c[x] = r;
        r
    }
    for c in 0..cols {
        let mut prev: Option<usize> = None;
        for r in 0..rows {
            if entries[r * cols + c].is_zero() {
                continue;
            }
            if let Some(p) = prev {
                let (a, b) = (find(&mut comp, p), find(&mut comp, r));
                comp[a] = b;
            }
            prev = Some(r);
        }
    }
    let roots: Vec<usize> = (0..rows).map(|r| find(&mut comp, r)).collect();
    for root in 0..rows {
        let members: Vec<usize> = (0..rows).filter(|&r| roots[r] == root).collect();
        if let Some(min) = members.iter().map(|&r| degs[r]).min() {
            for &r in &members {
                degs[r] -= min;
            }
        }
    }
    degs
}
