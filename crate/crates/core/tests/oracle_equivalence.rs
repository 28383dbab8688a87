//! Gröbner-based lengths, resolutions and Ext modules against the dense
//! degreewise oracle.

use hdeg_core::examples::{build_example, random_ideal_module, random_unmixed_instance, ExampleName, Instance};
use hdeg_core::hilbert_series::hilbert_series;
use hdeg_core::resolution::{ext_from_resolution, free_resolution, FreeResolution};
use hdeg_core::samuel::length_quotient;
use hdeg_core::{Context, FreeModule, ModuleElement, ModulePresentation, Polynomial};
use hdeg_oracle as oracle;

fn to_poly(f: &Polynomial) -> oracle::Poly {
    let n = f.ring().nvars();
    f.terms().map(|(m, c)| (m.exps(n), c.to_big())).collect()
}

fn to_elem(f: &FreeModule, v: &ModuleElement) -> oracle::Elem {
    let n = f.ring.nvars();
    v.terms.iter().map(|(t, c)| (t.slot(), t.mono.exps(n), c.to_big())).collect()
}

fn to_free(f: &FreeModule) -> oracle::Free {
    oracle::Free::new(f.ring.nvars(), f.degrees.clone())
}

fn to_maps(res: &FreeResolution) -> Vec<oracle::GradedMap> {
    (0..res.differentials.len())
        .map(|i| {
            let source = &res.modules[i + 1];
            let target = &res.modules[i];
            let columns = res.differentials[i]
                .iter()
                .map(|col| target.components(col).iter().map(to_poly).collect())
                .collect();
            oracle::GradedMap { source: to_free(source), target: to_free(target), columns }
        })
        .collect()
}

fn corpus(ctx: &Context) -> Vec<Instance> {
    let mut v = Vec::new();
    for l in 1..=4 {
        v.push(build_example(ExampleName::Idealization37, &[l]).unwrap());
    }
    for l in 1..=3 {
        v.push(build_example(ExampleName::Mixed47, &[l]).unwrap());
    }
    for (l, m) in [(2, 1), (3, 1), (2, 2)] {
        v.push(build_example(ExampleName::Intersection38, &[l, m]).unwrap());
    }
    for seed in 0..6 {
        v.push(random_unmixed_instance(ctx, 4000 + seed, 2 + (seed as usize % 2)).unwrap());
        v.push(random_ideal_module(ctx, 4100 + seed, 2 + (seed as usize % 2)).unwrap());
    }
    v
}

#[test]
fn lengths_match_the_oracle() {
    let ctx = Context::default();
    let mut compared = 0;
    for inst in corpus(&ctx) {
        let m = &inst.module;
        let free = to_free(&m.ambient);
        let rels: Vec<oracle::Elem> = m.relations.iter().map(|r| to_elem(&m.ambient, r)).collect();
        let params: Vec<oracle::Poly> = inst.params.iter().map(to_poly).collect();
        for n in 0..4 {
            let fast = length_quotient(&ctx, m, &inst.params, n).unwrap();
            if fast > 500 {
                break;
            }
            let slow = oracle::length_mod_power(&free, &rels, &params, n, 200).expect("oracle cap");
            assert_eq!(fast, slow as i128, "{} n={n}", inst.label);
            compared += 1;
        }
    }
    assert!(compared >= 40, "only {compared} lengths compared");
}

fn check_resolution_and_ext(ctx: &Context, label: &str, m: &ModulePresentation) {
    let res = free_resolution(ctx, m).unwrap();
    let maps = to_maps(&res);
    let top = res.modules.iter().flat_map(|f| f.degrees.iter().copied()).max().unwrap_or(0);
    let bottom = res.modules[0].degrees.iter().copied().min().unwrap_or(0);
    // exactness in positive homological degree
    for i in 1..=maps.len() {
        for t in bottom..=top + 1 {
            assert_eq!(oracle::homology_dim(&maps, i, t), 0, "{label}: H_{i} in degree {t}");
        }
    }
    // presented module's Hilbert function
    let hs = hilbert_series(ctx, m).unwrap();
    let free = to_free(&m.ambient);
    let rels: Vec<oracle::Elem> = m.relations.iter().map(|r| to_elem(&m.ambient, r)).collect();
    for t in bottom..=8 {
        assert_eq!(hs.coefficient(t), oracle::quotient_dim(&free, &rels, t) as i128, "{label}: HF({t})");
    }
    for i in 0..=res.length() + 1 {
        let ext = ext_from_resolution(ctx, &res, i).unwrap();
        let hs = hilbert_series(ctx, &ext).unwrap();
        for t in -top..=8 {
            let want = oracle::ext_dim(&maps, i, t) as i128;
            assert_eq!(hs.coefficient(t), want, "{label}: Ext^{i} in degree {t}");
        }
    }
}

#[test]
fn ext_dimensions_match_the_oracle() {
    let ctx = Context::default();
    let mut checked = 0;
    for inst in corpus(&ctx) {
        if inst.module.ring().nvars() > 5 {
            continue;
        }
        check_resolution_and_ext(&ctx, &inst.label, &inst.module);
        checked += 1;
    }
    assert!(checked >= 10, "only {checked} instances checked");
}

#[test]
fn betti_numbers_of_two_planes() {
    let ctx = Context::default();
    let inst = build_example(ExampleName::Intersection38, &[2, 1]).unwrap();
    // drop the extra variable: S/(X1,X2)∩(Y1,Y2) in four variables
    let ring = hdeg_core::Ring::new(&["X1", "X2", "Y1", "Y2"]).unwrap();
    let ideal: Vec<Polynomial> = ["X1*Y1", "X1*Y2", "X2*Y1", "X2*Y2"]
        .iter()
        .map(|s| hdeg_core::parse::parse_polynomial(s, &ring).unwrap())
        .collect();
    let m = ModulePresentation::quotient_ring(&ring, &ideal).unwrap();
    let res = free_resolution(&ctx, &m).unwrap();
    assert_eq!(res.betti_numbers(), vec![1, 4, 4, 1]);
    check_resolution_and_ext(&ctx, &inst.label, &m);
}
