//! Homological degree, homological torsions and the Stückrad–Vogel
//! invariant.

use crate::context::Context;
use crate::error::{Error, Result};
use crate::hilbert_series::hilbert_series;
use crate::module::ModulePresentation;
use crate::poly::Polynomial;
use crate::rational::binomial;
use crate::resolution::deficiency_modules;
use crate::samuel::{multiplicity, Frame};

/// The whole recursion tree of `hdeg`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HdegReport {
    /// `None` for the zero module.
    pub dim: Option<usize>,
    pub e0: i128,
    /// Length when the module has dimension at most zero.
    pub length: Option<i128>,
    /// `children[j]` reports on the deficiency module `M_j`, `j < s`.
    pub children: Vec<HdegReport>,
    pub hdeg: i128,
    /// `torsions[i-1] = T^i` for `1 ≤ i ≤ s-1`.
    pub torsions: Vec<i128>,
}

fn bin(n: usize, k: usize) -> i128 {
    binomial(n as i64, k as i64) as i128
}

impl HdegReport {
    fn zero() -> Self {
        HdegReport { dim: None, e0: 0, length: Some(0), children: Vec::new(), hdeg: 0, torsions: Vec::new() }
    }

    pub fn s(&self) -> usize {
        self.dim.unwrap_or(0)
    }

    /// `T^i`; zero outside `1..s`.
    pub fn torsion(&self, i: usize) -> i128 {
        if i == 0 {
            return 0;
        }
        self.torsions.get(i - 1).copied().unwrap_or(0)
    }

    /// `hdeg(M_j)`; zero past the recorded children.
    pub fn child_hdeg(&self, j: usize) -> i128 {
        self.children.get(j).map_or(0, |c| c.hdeg)
    }

    /// Length of `M_j` when finite.
    pub fn child_length(&self, j: usize) -> Option<i128> {
        match self.children.get(j) {
            None => Some(0),
            Some(c) => c.length,
        }
    }

    /// `Σ_{j=1}^{s-i} C(s-i-1, j-1) hdeg(M_j)`.
    fn torsion_sum(children: &[HdegReport], s: usize, i: usize) -> i128 {
        (1..=s - i).map(|j| bin(s - i - 1, j - 1) * children.get(j).map_or(0, |c| c.hdeg)).sum()
    }

    /// The Stückrad–Vogel invariant, or `None` when some lower deficiency
    /// module has positive dimension (not generalized Cohen–Macaulay).
    pub fn sv_invariant(&self) -> Option<i128> {
        let s = self.s();
        if s == 0 {
            return Some(0);
        }
        let mut acc = 0;
        for (j, c) in self.children.iter().enumerate() {
            acc += bin(s - 1, j) * c.length?;
        }
        Some(acc)
    }

    /// True when every deficiency module below the dimension vanishes.
    pub fn is_cohen_macaulay(&self) -> bool {
        self.children.iter().all(|c| c.dim.is_none())
    }

    /// No deficiency module `M_j` with `j < s` reaches dimension `j`.
    pub fn is_unmixed(&self) -> bool {
        self.children.iter().enumerate().all(|(j, c)| c.dim.is_none_or(|x| x < j))
    }

    /// Checks the defining identities of the tree.
    pub fn check(&self) -> bool {
        let s = self.s();
        let own = match self.dim {
            None => self.hdeg == 0,
            Some(0) => Some(self.hdeg) == self.length,
            Some(_) => {
                self.hdeg == self.e0 + (0..s).map(|j| bin(s - 1, j) * self.child_hdeg(j)).sum::<i128>()
                    && self.e0 >= 1
                    && (1..s).all(|i| self.torsion(i) == Self::torsion_sum(&self.children, s, i))
            }
        };
        own && self.children.iter().enumerate().all(|(j, c)| c.dim.is_none_or(|x| x <= j) && c.check())
    }
}

/// `hdeg_Q` of a module over the ring of `q`; `q` must be primary on it.
pub fn hdeg_of(ctx: &Context, m: &ModulePresentation, q: &[Polynomial]) -> Result<HdegReport> {
    let hs = hilbert_series(ctx, m)?;
    let Some(s) = hs.dim() else { return Ok(HdegReport::zero()) };
    if s == 0 {
        let len = hs.length().expect("dimension zero");
        return Ok(HdegReport { dim: Some(0), e0: len, length: Some(len), children: Vec::new(), hdeg: len, torsions: Vec::new() });
    }
    let e0 = multiplicity(ctx, m, q)?;
    let defs = deficiency_modules(ctx, m, s)?;
    let mut children = Vec::with_capacity(s);
    for d in &defs {
        if d.is_zero() {
            children.push(HdegReport::zero());
        } else {
            children.push(hdeg_of(ctx, &d.presentation, q)?);
        }
    }
    let hdeg = e0 + (0..s).map(|j| bin(s - 1, j) * children[j].hdeg).sum::<i128>();
    let torsions = (1..s).map(|i| HdegReport::torsion_sum(&children, s, i)).collect();
    Ok(HdegReport { dim: Some(s), e0, length: None, children, hdeg, torsions })
}

pub fn hdeg_in(ctx: &Context, frame: &Frame) -> Result<HdegReport> {
    hdeg_of(ctx, &frame.module, &frame.params)
}

/// `hdeg_Q(M)` with its recursion tree.
pub fn hdeg(ctx: &Context, m: &ModulePresentation, q: &[Polynomial]) -> Result<HdegReport> {
    hdeg_in(ctx, &Frame::new(ctx, m, q)?)
}

/// `T^i_Q(M)` for `1 ≤ i ≤ s-1`.
pub fn torsion(ctx: &Context, m: &ModulePresentation, q: &[Polynomial], i: usize) -> Result<i128> {
    let r = hdeg(ctx, m, q)?;
    let s = r.s();
    if s < 2 || i == 0 || i >= s {
        return Err(Error::IndexOutOfRange(format!("torsion index {i} for dimension {s}")));
    }
    Ok(r.torsion(i))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SvInvariant {
    Value(i128),
    NotGeneralizedCm,
}

/// Computed with the variables as the ideal; the invariant does not depend
/// on it.
pub fn sv_invariant(ctx: &Context, m: &ModulePresentation) -> Result<SvInvariant> {
    let ring = m.ring();
    let vars: Vec<Polynomial> = (0..ring.nvars()).map(|i| Polynomial::var(ring, i)).collect();
    let r = hdeg_of(ctx, m, &vars)?;
    Ok(r.sv_invariant().map_or(SvInvariant::NotGeneralizedCm, SvInvariant::Value))
}
