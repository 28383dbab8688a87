//! Builders for the worked example families and seeded random instances.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::context::Context;
use crate::error::{Error, Result};
use crate::hilbert_series::minimalize;
use crate::module::{FreeModule, ModulePresentation};
use crate::poly::Polynomial;
use crate::rational::Rat;
use crate::ring::{Monomial, Ring};
use crate::ops::syzygy_module;
use crate::samuel::is_parameter_ideal;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExampleName {
    /// `S ⊕ S/(Z^ℓ)` over `k[X,Y,Z]`, `Q = (X,Y,Z)`.
    Idealization37,
    /// `S/(X_i)∩(Y_i)` with `m` extra variables, `Q = (X_i - Y_i, Z_j)`.
    Intersection38,
    /// `S/(X)∩(Y^ℓ,Z,W)`, `Q = (X-Y, X-Z, X-W)`.
    Mixed47,
}

impl FromStr for ExampleName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "idealization_37" => Ok(ExampleName::Idealization37),
            "intersection_38" => Ok(ExampleName::Intersection38),
            "mixed_47" => Ok(ExampleName::Mixed47),
            _ => Err(Error::InvalidArgument(format!("unknown example `{s}`"))),
        }
    }
}

impl fmt::Display for ExampleName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExampleName::Idealization37 => "idealization_37",
            ExampleName::Intersection38 => "intersection_38",
            ExampleName::Mixed47 => "mixed_47",
        })
    }
}

/// A module together with a list of parameters.
#[derive(Clone, Debug)]
pub struct Instance {
    pub label: String,
    pub module: ModulePresentation,
    pub params: Vec<Polynomial>,
}

fn var(r: &Ring, i: usize) -> Polynomial {
    Polynomial::var(r, i)
}

pub fn build_example(name: ExampleName, params: &[usize]) -> Result<Instance> {
    let arg = |i: usize| params.get(i).copied().ok_or_else(|| Error::InvalidArgument(format!("{name} needs more parameters")));
    match name {
        ExampleName::Idealization37 => {
            let l = arg(0)?;
            if l < 1 {
                return Err(Error::InvalidArgument("ℓ must be at least 1".into()));
            }
            let r = Ring::new(&["X", "Y", "Z"])?;
            let f = FreeModule::new(&r, vec![0, 0]);
            let zl = var(&r, 2).pow(l as u32);
            let m = ModulePresentation::new(f.clone(), vec![f.mul_poly(&zl, &f.basis(1))])?;
            let q = (0..3).map(|i| var(&r, i)).collect();
            Ok(Instance { label: format!("{name}(l={l})"), module: m, params: q })
        }
        ExampleName::Intersection38 => {
            let (l, m) = (arg(0)?, arg(1)?);
            if l < 2 || m < 1 || 2 * l + m > crate::ring::MAX_VARS {
                return Err(Error::InvalidArgument(format!("parameters out of range: l={l}, m={m}")));
            }
            let mut names: Vec<String> = (1..=l).map(|i| format!("X{i}")).collect();
            names.extend((1..=l).map(|i| format!("Y{i}")));
            names.extend((1..=m).map(|j| format!("Z{j}")));
            let r = Ring::new(&names)?;
            let mut ideal = Vec::new();
            for i in 0..l {
                for j in 0..l {
                    ideal.push(var(&r, i).mul(&var(&r, l + j)));
                }
            }
            let mut q: Vec<Polynomial> = (0..l).map(|i| var(&r, i).sub(&var(&r, l + i))).collect();
            q.extend((0..m).map(|j| var(&r, 2 * l + j)));
            let module = ModulePresentation::quotient_ring(&r, &ideal)?;
            Ok(Instance { label: format!("{name}(l={l},m={m})"), module, params: q })
        }
        ExampleName::Mixed47 => {
            let l = arg(0)?;
            if l < 1 {
                return Err(Error::InvalidArgument("ℓ must be at least 1".into()));
            }
            let r = Ring::new(&["X", "Y", "Z", "W"])?;
            let (x, y, z, w) = (var(&r, 0), var(&r, 1), var(&r, 2), var(&r, 3));
            let ideal = vec![x.mul(&y.pow(l as u32)), x.mul(&z), x.mul(&w)];
            let module = ModulePresentation::quotient_ring(&r, &ideal)?;
            let q = vec![x.sub(&y), x.sub(&z), x.sub(&w)];
            Ok(Instance { label: format!("{name}(l={l})"), module, params: q })
        }
    }
}

/// `S / ∩_i (x_j : j ∈ components[i])`, the squarefree monomial ideal of
/// monomials meeting every component.
pub fn monomial_intersection_ring(ring: &Ring, components: &[Vec<usize>]) -> Result<ModulePresentation> {
    let powered: Vec<Vec<(usize, u16)>> =
        components.iter().map(|c| c.iter().map(|&j| (j, 1)).collect()).collect();
    primary_intersection_ring(ring, &powered)
}

/// `S / ∩_i (x_j^{a_j} : (j, a_j) ∈ components[i])`. Each component is
/// primary to a coordinate prime, so equal component sizes give an unmixed
/// ring.
pub fn primary_intersection_ring(ring: &Ring, components: &[Vec<(usize, u16)>]) -> Result<ModulePresentation> {
    if components.is_empty() {
        return Err(Error::InvalidArgument("at least one component needed".into()));
    }
    let mut acc: Vec<Monomial> = vec![Monomial::one()];
    for c in components {
        let gens: Vec<Monomial> = c.iter().map(|&(j, a)| Monomial::var(j, a.max(1))).collect();
        let mut next = Vec::with_capacity(acc.len() * gens.len());
        for a in &acc {
            for g in &gens {
                next.push(a.lcm(g));
            }
        }
        acc = minimalize(&next);
    }
    let ideal: Vec<Polynomial> = acc.iter().map(|m| Polynomial::monomial(ring, *m, Rat::one())).collect();
    ModulePresentation::quotient_ring(ring, &ideal)
}

/// The ideal generated by `gens` viewed as a module: the free module on
/// the generators modulo their syzygies.
pub fn ideal_as_module(ctx: &Context, ring: &Ring, gens: &[Polynomial]) -> Result<ModulePresentation> {
    let one = FreeModule::new(ring, vec![0]);
    let elems: Vec<_> = gens.iter().map(|g| one.from_components(std::slice::from_ref(g))).collect::<Result<_>>()?;
    let syz = syzygy_module(ctx, &one, &elems)?;
    ModulePresentation::new(syz.ambient.clone(), syz.gens.clone())
}

/// A random linear form with coefficients in `[-2, 2]`.
pub fn random_linear_form(rng: &mut ChaCha8Rng, ring: &Ring) -> Polynomial {
    loop {
        let terms: Vec<(Monomial, Rat)> = (0..ring.nvars())
            .map(|i| (Monomial::var(i, 1), Rat::from_int(rng.gen_range(-2..=2))))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        if !terms.is_empty() {
            return Polynomial::from_terms(ring, terms);
        }
    }
}

/// Intersection of primary ideals to `dim`-dimensional coordinate primes in
/// at most six variables (hence unmixed), some of them with squared
/// generators, with random linear parameters.
pub fn random_unmixed_instance(ctx: &Context, seed: u64, dim: usize) -> Result<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(dim + 2..=6.max(dim + 2));
    let names: Vec<String> = (1..=n).map(|i| format!("X{i}")).collect();
    let ring = Ring::new(&names)?;
    let k = rng.gen_range(2..=4);
    let mut comps: Vec<(Vec<usize>, Vec<(usize, u16)>)> = Vec::new();
    while comps.len() < k {
        let mut vars: Vec<usize> = (0..n).collect();
        vars.shuffle(&mut rng);
        let mut c: Vec<usize> = vars[..n - dim].to_vec();
        c.sort();
        if !comps.iter().any(|(d, _)| *d == c) {
            let powers: Vec<(usize, u16)> = c.iter().map(|&j| (j, if rng.gen_bool(0.25) { 2 } else { 1 })).collect();
            comps.push((c, powers));
        }
    }
    comps.sort();
    let powered: Vec<Vec<(usize, u16)>> = comps.iter().map(|(_, p)| p.clone()).collect();
    let module = primary_intersection_ring(&ring, &powered)?;
    for _ in 0..100 {
        let q: Vec<Polynomial> = (0..dim).map(|_| random_linear_form(&mut rng, &ring)).collect();
        if is_parameter_ideal(ctx, &q, &module)? {
            let label = format!("random(seed={seed},n={n},components={powered:?})");
            return Ok(Instance { label, module, params: q });
        }
    }
    Err(Error::Invariant("no parameter ideal found".into()))
}

/// An `m`-primary ideal of `k[X1..X_dim]` viewed as a module, with random
/// linear parameters. Such a module is torsion-free of depth at least one,
/// and its first local cohomology is `S/I`, usually not killed by `m`.
pub fn random_ideal_module(ctx: &Context, seed: u64, dim: usize) -> Result<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let names: Vec<String> = (1..=dim).map(|i| format!("X{i}")).collect();
    let ring = Ring::new(&names)?;
    let mut gens: Vec<Polynomial> = Vec::new();
    let mut powers = Vec::with_capacity(dim);
    for i in 0..dim {
        let a: u16 = rng.gen_range(1..=3);
        powers.push(a);
        gens.push(Polynomial::monomial(&ring, Monomial::var(i, a), Rat::one()));
    }
    let extra = rng.gen_range(0..=2);
    for _ in 0..extra {
        let f = random_linear_form(&mut rng, &ring).mul(&random_linear_form(&mut rng, &ring));
        if !f.is_zero() {
            gens.push(f);
        }
    }
    let module = ideal_as_module(ctx, &ring, &gens)?;
    for _ in 0..100 {
        let q: Vec<Polynomial> = (0..dim).map(|_| random_linear_form(&mut rng, &ring)).collect();
        if is_parameter_ideal(ctx, &q, &module)? {
            let label = format!("ideal(seed={seed},powers={powers:?},extra={extra})");
            return Ok(Instance { label, module, params: q });
        }
    }
    Err(Error::Invariant("no parameter ideal found".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resolution::{is_unmixed, krull_dim};

    #[test]
    fn example_shapes() {
        let ctx = Context::default();
        let a = build_example(ExampleName::Mixed47, &[1]).unwrap();
        assert_eq!(krull_dim(&ctx, &a.module).unwrap(), Some(3));
        let b = build_example(ExampleName::Intersection38, &[2, 1]).unwrap();
        assert_eq!(krull_dim(&ctx, &b.module).unwrap(), Some(3));
        assert!(is_unmixed(&ctx, &b.module).unwrap());
        let c = build_example(ExampleName::Idealization37, &[2]).unwrap();
        assert!(!is_unmixed(&ctx, &c.module).unwrap());
        assert!(build_example(ExampleName::Intersection38, &[1, 1]).is_err());
        assert_eq!("mixed_47".parse::<ExampleName>().unwrap(), ExampleName::Mixed47);
    }

    #[test]
    fn random_instances_are_unmixed() {
        let ctx = Context::default();
        for seed in 0..3 {
            let i = random_unmixed_instance(&ctx, seed, 3).unwrap();
            assert_eq!(krull_dim(&ctx, &i.module).unwrap(), Some(3));
            assert!(is_unmixed(&ctx, &i.module).unwrap());
        }
    }
}
