//! Executable checks of the bounds on `e^2` and of the equivalences between
//! the sectional genus, torsions and d-sequences.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::context::Context;
use crate::error::{Error, Result};
use crate::groebner::groebner_basis;
use crate::hdeg::{hdeg_in, HdegReport};
use crate::linalg::rank;
use crate::module::ModulePresentation;
use crate::ops::quotient_by;
use crate::poly::Polynomial;
use crate::rational::{binomial, Rat};
use crate::resolution::{deficiency_modules, zeroth_local_cohomology};
use crate::samuel::{is_parameter_ideal, samuel_in, Frame, HilbertSamuelResult};
use crate::sequences::{find_d_sequence_in, is_d_sequence, is_superficial_in, random_unimodular, recombine};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum TheoremId {
    /// Dimension two: bounds on `e^2` and four equivalent conditions.
    Prop31,
    /// Upper and lower bounds on `e^2` in dimension at least three.
    Thm33,
    /// Unmixed modules: genus equality versus `e^2 = T^2`.
    Thm41,
    /// Genus equality versus coefficient and colength conditions.
    Thm42,
}

impl TheoremId {
    pub fn tag(&self) -> &'static str {
        match self {
            TheoremId::Prop31 => "prop31",
            TheoremId::Thm33 => "thm33",
            TheoremId::Thm41 => "thm41",
            TheoremId::Thm42 => "thm42",
        }
    }
}

impl FromStr for TheoremId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "prop31" => Ok(TheoremId::Prop31),
            "thm33" => Ok(TheoremId::Thm33),
            "thm41" => Ok(TheoremId::Thm41),
            "thm42" => Ok(TheoremId::Thm42),
            _ => Err(Error::InvalidArgument(format!("unknown theorem `{s}`"))),
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
    HypothesesNotMet,
}

impl Verdict {
    pub fn tag(&self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::HypothesesNotMet => "hypotheses-not-met",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
}

/// A comparison of two exact integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub name: String,
    pub lhs: i128,
    pub relation: Relation,
    pub rhs: i128,
}

impl Comparison {
    pub fn le(name: &str, lhs: i128, rhs: i128) -> Self {
        Comparison { name: name.into(), lhs, relation: Relation::Le, rhs }
    }

    pub fn eq(name: &str, lhs: i128, rhs: i128) -> Self {
        Comparison { name: name.into(), lhs, relation: Relation::Eq, rhs }
    }

    pub fn holds(&self) -> bool {
        match self.relation {
            Relation::Le => self.lhs <= self.rhs,
            Relation::Eq => self.lhs == self.rhs,
        }
    }
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = match (self.relation, self.holds()) {
            (Relation::Le, true) => "<=",
            (Relation::Le, false) => ">",
            (Relation::Eq, true) => "=",
            (Relation::Eq, false) => "!=",
        };
        write!(f, "{}: {} {} {}", self.name, self.lhs, op, self.rhs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremCheck {
    pub theorem: TheoremId,
    pub hypotheses: Vec<(String, bool)>,
    pub quantities: BTreeMap<String, i128>,
    /// Named boolean conditions as evaluated.
    pub conditions: BTreeMap<String, bool>,
    /// Every comparison made; the failed asserted ones are in `violations`.
    pub comparisons: Vec<Comparison>,
    pub violations: Vec<Comparison>,
    pub verdict: Verdict,
    pub notes: Vec<String>,
}

impl TheoremCheck {
    fn new(theorem: TheoremId) -> Self {
        TheoremCheck {
            theorem,
            hypotheses: Vec::new(),
            quantities: BTreeMap::new(),
            conditions: BTreeMap::new(),
            comparisons: Vec::new(),
            violations: Vec::new(),
            verdict: Verdict::Holds,
            notes: Vec::new(),
        }
    }

    fn hypothesis(&mut self, name: &str, ok: bool) -> bool {
        self.hypotheses.push((name.into(), ok));
        ok
    }

    fn quantity(&mut self, name: &str, v: i128) {
        self.quantities.insert(name.into(), v);
    }

    fn condition(&mut self, name: &str, v: bool) -> bool {
        self.conditions.insert(name.into(), v);
        v
    }

    /// Records `c`; a failure is a violation when `asserted`.
    fn compare(&mut self, c: Comparison, asserted: bool) -> bool {
        let ok = c.holds();
        if !ok && asserted {
            self.violations.push(c.clone());
        }
        self.comparisons.push(c);
        ok
    }

    fn finish(mut self, hypotheses_met: bool) -> Self {
        self.verdict = if !self.violations.is_empty() {
            Verdict::Fails
        } else if !hypotheses_met {
            Verdict::HypothesesNotMet
        } else {
            Verdict::Holds
        };
        self
    }

    pub fn get(&self, name: &str) -> Option<i128> {
        self.quantities.get(name).copied()
    }
}

/// Everything the checks consume, computed once.
#[derive(Clone, Debug)]
pub struct Invariants {
    pub frame: Frame,
    pub samuel: HilbertSamuelResult,
    pub report: HdegReport,
}

impl Invariants {
    pub fn compute(ctx: &Context, m: &ModulePresentation, q: &[Polynomial]) -> Result<Self> {
        if !is_parameter_ideal(ctx, q, m)? {
            return Err(Error::NotParameterIdeal(format!("{} generators", q.len())));
        }
        let frame = Frame::new(ctx, m, q)?;
        let samuel = samuel_in(ctx, &frame)?;
        let report = hdeg_in(ctx, &frame)?;
        Ok(Invariants { frame, samuel, report })
    }

    pub fn d(&self) -> usize {
        self.samuel.dim
    }

    /// `(-1)^i e^i`.
    pub fn signed_e(&self, i: usize) -> i128 {
        if i.is_multiple_of(2) {
            self.samuel.e(i)
        } else {
            -self.samuel.e(i)
        }
    }

    /// `hdeg - e^0 - T^1`.
    pub fn genus_bound(&self) -> i128 {
        self.report.hdeg - self.samuel.e(0) - self.report.torsion(1)
    }

    /// `ℓ(H^0_m(M))`, the length of `M_0`.
    pub fn h0_length(&self) -> i128 {
        self.report.child_length(0).unwrap_or(0)
    }

    fn record_common(&self, c: &mut TheoremCheck) {
        c.quantity("dim", self.d() as i128);
        for (i, e) in self.samuel.coefficients.iter().enumerate() {
            c.quantity(&format!("e{i}"), *e);
        }
        c.quantity("colength", self.samuel.colength());
        c.quantity("sectional_genus", self.samuel.sectional_genus());
        c.quantity("hdeg", self.report.hdeg);
        for i in 1..self.d() {
            c.quantity(&format!("T{i}"), self.report.torsion(i));
        }
        c.quantity("postulation_index", self.samuel.postulation_index as i128);
    }

    /// The closed Hilbert function formula for `0 ≤ n ≤ postulation + 3`.
    fn formula_everywhere(&self, c: &mut TheoremCheck) -> bool {
        let top = self.samuel.postulation_index + 3;
        let mut ok = true;
        for n in 0..=top.min(self.samuel.length_table.len() - 1) {
            let cmp = Comparison::eq(&format!("length formula at n={n}"), self.samuel.length_table[n], self.samuel.polynomial(n as i64));
            ok &= c.compare(cmp, true);
        }
        ok
    }
}

fn bin(n: i64, k: i64) -> i128 {
    binomial(n, k) as i128
}

fn render(frame: &Frame, gens: &[Polynomial]) -> String {
    let shown: Vec<String> = gens
        .iter()
        .map(|g| match &frame.projection {
            Some(p) => p.from_p(g).to_string(),
            None => g.to_string(),
        })
        .collect();
    shown.join(", ")
}

/// Candidate ordered generator pairs `(a_1, a_2)` with `a_1` superficial.
fn superficial_first(ctx: &Context, frame: &Frame) -> Result<Option<Vec<Polynomial>>> {
    let q = &frame.params;
    let mut cands = vec![q.clone()];
    cands.push(q.iter().rev().cloned().collect());
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.settings.seed);
    for _ in 0..ctx.settings.trials {
        cands.push(recombine(q, &random_unimodular(&mut rng, q.len())));
    }
    for c in cands {
        if is_superficial_in(ctx, &c[0], frame, ctx.settings.window)?.holds {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

/// Bounds and the four equivalent conditions in dimension two.
pub fn check_prop31(ctx: &Context, m: &ModulePresentation, q: &[Polynomial]) -> Result<TheoremCheck> {
    let inv = Invariants::compute(ctx, m, q)?;
    let mut c = TheoremCheck::new(TheoremId::Prop31);
    inv.record_common(&mut c);
    if !c.hypothesis("dim = 2", inv.d() == 2) {
        return Ok(c.finish(false));
    }
    let e2 = inv.samuel.e(2);
    let h0 = inv.h0_length();
    let h1 = inv.report.child_length(1);
    c.quantity("length_H0", h0);
    if let Some(h1) = h1 {
        c.quantity("length_H1", h1);
    }
    if h0 > 0 {
        c.hypothesis("depth >= 1", false);
        c.compare(Comparison::le("e2 <= length(H0)", e2, h0), true);
        match h1 {
            Some(h1) => {
                c.compare(Comparison::le("length(H0) - length(H1) <= e2", h0 - h1, e2), true);
            }
            None => c.notes.push("H1 has infinite length; lower bound is vacuous".into()),
        }
        // continue on M/H^0
        let sat = zeroth_local_cohomology(ctx, m)?;
        let reduced = quotient_by(m, &sat.gens)?;
        let inner = check_prop31(ctx, &reduced, q)?;
        for (k, v) in &inner.quantities {
            c.quantity(&format!("reduced.{k}"), *v);
        }
        for (k, v) in &inner.conditions {
            c.condition(&format!("reduced.{k}"), *v);
        }
        for v in &inner.violations {
            let mut v = v.clone();
            v.name = format!("reduced: {}", v.name);
            c.compare(v, true);
        }
        c.notes.push(format!("passed to the quotient by H0; inner verdict {}", inner.verdict.tag()));
        c.notes.extend(inner.notes.iter().map(|n| format!("reduced: {n}")));
        let met = inner.verdict != Verdict::HypothesesNotMet;
        return Ok(c.finish(met));
    }
    c.hypothesis("depth >= 1", true);
    c.compare(Comparison::le("e2 <= 0", e2, 0), true);
    match h1 {
        Some(h1) => {
            c.compare(Comparison::le("-length(H1) <= e2", -h1, e2), true);
        }
        None => c.notes.push("H1 has infinite length; lower bound is vacuous".into()),
    }
    let Some(gens) = superficial_first(ctx, &inv.frame)? else {
        c.hypothesis("superficial first generator found", false);
        return Ok(c.finish(false));
    };
    c.hypothesis("superficial first generator found", true);
    c.notes.push(format!("generators: {}", render(&inv.frame, &gens)));
    let m2 = &inv.frame.module;
    let c1 = c.condition("(1) sectional genus = 0", inv.samuel.sectional_genus() == 0);
    let c2 = c.condition("(2) e2 = 0", e2 == 0);
    let c3 = c.condition("(3) d-sequence", is_d_sequence(ctx, &gens, m2)?.holds);
    let mut c4 = true;
    for l in 1..=2u32 {
        let pw: Vec<Polynomial> = gens.iter().map(|g| g.pow(l)).collect();
        c4 &= is_d_sequence(ctx, &pw, m2)?.holds;
    }
    let c4 = c.condition("(4) powers up to 2 form d-sequences", c4);
    let b = |x: bool| x as i128;
    c.compare(Comparison::eq("(1) agrees with (2)", b(c1), b(c2)), true);
    c.compare(Comparison::eq("(2) agrees with (3)", b(c2), b(c3)), true);
    c.compare(Comparison::eq("(3) agrees with (4)", b(c3), b(c4)), true);
    Ok(c.finish(true))
}

/// `Σ_{j=2}^{d-1} C(d-3, j-2) hdeg(M_j)`.
pub fn lower_bracket(report: &HdegReport, d: usize) -> i128 {
    (2..d).map(|j| bin(d as i64 - 3, j as i64 - 2) * report.child_hdeg(j)).sum()
}

/// `e^2 ≤ T^2`, and the lower bound when the module is unmixed.
pub fn check_thm33(ctx: &Context, m: &ModulePresentation, q: &[Polynomial]) -> Result<TheoremCheck> {
    let inv = Invariants::compute(ctx, m, q)?;
    thm33_from(&inv)
}

pub fn thm33_from(inv: &Invariants) -> Result<TheoremCheck> {
    let d = inv.d();
    if d < 3 {
        return Err(Error::Dimension { found: d as i64, required: "at least 3".into() });
    }
    let mut c = TheoremCheck::new(TheoremId::Thm33);
    inv.record_common(&mut c);
    c.hypothesis("dim >= 3", true);
    let e2 = inv.samuel.e(2);
    let t2 = inv.report.torsion(2);
    let low = lower_bracket(&inv.report, d);
    c.quantity("lower_sum", low);
    c.compare(Comparison::le("e2 <= T2", e2, t2), true);
    let unmixed = c.hypothesis("unmixed (for the lower bound)", inv.report.is_unmixed());
    let ok = c.compare(Comparison::le("-lower_sum <= e2", -low, e2), unmixed);
    if !unmixed && !ok {
        c.notes.push(format!("lower bound fails without unmixedness: {} > {}", -low, e2));
    }
    Ok(c.finish(unmixed))
}

/// Whether every parameter kills `M_j` for `1 ≤ j ≤ d-3`.
fn parameters_kill_low_deficiencies(ctx: &Context, inv: &Invariants, c: &mut TheoremCheck) -> Result<bool> {
    let d = inv.d();
    if d < 4 {
        return Ok(true);
    }
    let defs = deficiency_modules(ctx, &inv.frame.module, d - 2)?;
    let mut all = true;
    for dm in defs.iter().skip(1) {
        if dm.is_zero() {
            continue;
        }
        let p = &dm.presentation;
        let gb = groebner_basis(ctx, &p.relations_submodule())?;
        let mut ok = true;
        for g in &inv.frame.params {
            for s in 0..p.ambient.rank() {
                ok &= gb.contains(&p.ambient.mul_poly(g, &p.ambient.basis(s)))?;
            }
        }
        c.condition(&format!("(iv) Q kills M_{}", dm.index), ok);
        all &= ok;
    }
    Ok(all)
}

/// For unmixed `M` of dimension at least three: the genus equality holds
/// exactly when `e^2 = T^2`, with consequences.
pub fn check_thm41(ctx: &Context, m: &ModulePresentation, q: &[Polynomial]) -> Result<TheoremCheck> {
    let inv = Invariants::compute(ctx, m, q)?;
    thm41_from(ctx, &inv)
}

pub fn thm41_from(ctx: &Context, inv: &Invariants) -> Result<TheoremCheck> {
    let d = inv.d();
    if d < 3 {
        return Err(Error::Dimension { found: d as i64, required: "at least 3".into() });
    }
    let mut c = TheoremCheck::new(TheoremId::Thm41);
    inv.record_common(&mut c);
    c.hypothesis("dim >= 3", true);
    let unmixed = c.hypothesis("unmixed", inv.report.is_unmixed());
    let g = inv.samuel.sectional_genus();
    let bound = inv.genus_bound();
    c.quantity("hdeg - e0 - T1", bound);
    let c1 = c.condition("(1) genus = hdeg - e0 - T1", g == bound);
    let c2 = c.condition("(2) e2 = T2", inv.samuel.e(2) == inv.report.torsion(2));
    c.compare(Comparison::le("genus <= hdeg - e0 - T1", g, bound), false);
    if !unmixed {
        if c1 != c2 {
            c.notes.push(format!("conditions disagree on a mixed module: (1) {c1}, (2) {c2}"));
        }
        return Ok(c.finish(false));
    }
    c.compare(Comparison::eq("(1) agrees with (2)", c1 as i128, c2 as i128), true);
    if c1 && c2 {
        for i in 3..d {
            c.compare(Comparison::eq(&format!("(i) (-1)^{i} e{i} = T{i}"), inv.signed_e(i), inv.report.torsion(i)), true);
        }
        c.compare(Comparison::eq(&format!("(i) e{d} = 0"), inv.samuel.e(d), 0), true);
        let ii = inv.formula_everywhere(&mut c);
        c.condition("(ii) length formula for all n", ii);
        let found = find_d_sequence_in(ctx, &inv.frame, ctx.settings.trials, ctx.settings.seed)?;
        match &found {
            Some(gens) => {
                c.condition("(iii) d-sequence generators found", true);
                c.notes.push(format!("d-sequence generators: {}", render(&inv.frame, gens)));
            }
            None => {
                c.condition("(iii) d-sequence generators found", false);
                c.compare(Comparison::eq("(iii) search succeeded", 0, 1), true);
            }
        }
        let iv = parameters_kill_low_deficiencies(ctx, inv, &mut c)?;
        c.compare(Comparison::eq("(iv) Q annihilates H^i for 1 <= i <= d-3", iv as i128, 1), true);
    }
    Ok(c.finish(true))
}

/// The genus equality against conditions (a) and (b).
pub fn check_thm42_conditions(ctx: &Context, m: &ModulePresentation, q: &[Polynomial]) -> Result<TheoremCheck> {
    let inv = Invariants::compute(ctx, m, q)?;
    thm42_from(&inv)
}

pub fn thm42_from(inv: &Invariants) -> Result<TheoremCheck> {
    let d = inv.d();
    if d < 2 {
        return Err(Error::Dimension { found: d as i64, required: "at least 2".into() });
    }
    let mut c = TheoremCheck::new(TheoremId::Thm42);
    inv.record_common(&mut c);
    c.hypothesis("dim >= 2", true);
    let h0 = inv.h0_length();
    c.quantity("length_H0", h0);
    let mut a = true;
    for i in 2..=d {
        let rhs = if i < d { inv.report.torsion(i) } else { h0 };
        let name = if i < d { format!("(a) (-1)^{i} e{i} = T{i}") } else { format!("(a) (-1)^{i} e{i} = length(H0)") };
        a &= c.compare(Comparison::eq(&name, inv.signed_e(i), rhs), false);
    }
    let alt: i128 = (0..=d).map(|i| inv.signed_e(i)).sum();
    let b = c.compare(Comparison::eq("(b) colength - sum (-1)^i e^i = 0", inv.samuel.colength() - alt, 0), false);
    let a = c.condition("(a)", a);
    let b = c.condition("(b)", b);
    let one = c.condition("(1) genus = hdeg - e0 - T1", inv.samuel.sectional_genus() == inv.genus_bound());
    c.compare(Comparison::eq("(1) agrees with (a) and (b)", one as i128, (a && b) as i128), true);
    if one {
        let ii = inv.formula_everywhere(&mut c);
        c.condition("(ii) length formula for all n", ii);
    }
    Ok(c.finish(true))
}

/// Distinct `e^2` over sampled generating systems of `Q` (random integer
/// recombinations with the same multiplicity); a finite proxy for the set
/// of `e^2` over ideals with the same integral closure.
pub fn sample_lambda2(ctx: &Context, m: &ModulePresentation, q: &[Polynomial], trials: usize, seed: u64) -> Result<BTreeSet<i128>> {
    let mut out = BTreeSet::new();
    if trials == 0 {
        return Ok(out);
    }
    let base = samuel_in(ctx, &Frame::new(ctx, m, q)?)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = q.len();
    let mut done = 0;
    while done < trials {
        let mat: Vec<Vec<i64>> = (0..d).map(|_| (0..d).map(|_| rng.gen_range(-3..=3)).collect()).collect();
        let rows: Vec<Vec<Rat>> = mat.iter().map(|r| r.iter().map(|&x| Rat::from_int(x)).collect()).collect();
        if rank(&rows) < d {
            continue;
        }
        let qq = recombine(q, &mat);
        let hs = samuel_in(ctx, &Frame::new(ctx, m, &qq)?)?;
        if hs.e(0) == base.e(0) {
            out.insert(hs.e(2));
        }
        done += 1;
    }
    Ok(out)
}

/// Runs the named check.
pub fn run_check(ctx: &Context, id: TheoremId, m: &ModulePresentation, q: &[Polynomial]) -> Result<TheoremCheck> {
    match id {
        TheoremId::Prop31 => check_prop31(ctx, m, q),
        TheoremId::Thm33 => check_thm33(ctx, m, q),
        TheoremId::Thm41 => check_thm41(ctx, m, q),
        TheoremId::Thm42 => check_thm42_conditions(ctx, m, q),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::{build_example, ExampleName};
    use crate::parse::parse_polynomial;
    use crate::ring::Ring;

    #[test]
    fn polynomial_plane() {
        let ctx = Context::default();
        let r = Ring::new(&["X", "Y"]).unwrap();
        let m = ModulePresentation::quotient_ring(&r, &[]).unwrap();
        let q: Vec<Polynomial> = ["X", "Y"].iter().map(|s| parse_polynomial(s, &r).unwrap()).collect();
        let c = check_prop31(&ctx, &m, &q).unwrap();
        assert_eq!(c.verdict, Verdict::Holds, "{c:?}");
        assert!(c.conditions.values().all(|&v| v));
        let c = check_thm42_conditions(&ctx, &m, &q).unwrap();
        assert_eq!(c.verdict, Verdict::Holds);
    }

    #[test]
    fn mixed_counterexample() {
        let ctx = Context::default();
        let inst = build_example(ExampleName::Mixed47, &[2]).unwrap();
        let c = check_thm41(&ctx, &inst.module, &inst.params).unwrap();
        assert_eq!(c.verdict, Verdict::HypothesesNotMet);
        assert!(c.conditions["(2) e2 = T2"]);
        assert!(!c.conditions["(1) genus = hdeg - e0 - T1"]);
        let c = check_thm42_conditions(&ctx, &inst.module, &inst.params).unwrap();
        assert_eq!(c.verdict, Verdict::Holds);
        assert!(c.conditions["(b)"]);
        assert!(!c.conditions["(a)"]);
    }

    #[test]
    fn bracket_on_intersection() {
        let ctx = Context::default();
        let inst = build_example(ExampleName::Intersection38, &[4, 1]).unwrap();
        let c = check_thm33(&ctx, &inst.module, &inst.params).unwrap();
        assert_eq!(c.verdict, Verdict::Holds);
        assert_eq!((c.get("e2"), c.get("T2")), (Some(1), Some(2)));
        let s = sample_lambda2(&ctx, &inst.module, &inst.params, 0, 1).unwrap();
        assert!(s.is_empty());
    }
}
