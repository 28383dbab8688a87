//! Acceptance run: one pass/fail line per criterion.
//!
//! Worked examples go through the whole front end (problem file text,
//! parser, command dispatch, JSON report); the randomized suites call the
//! library directly.

use std::time::Instant;

use hdeg_cli::{parse_instance, render_instance, run_command, Command, RunOptions};
use hdeg_core::examples::{build_example, random_ideal_module, random_unmixed_instance, ExampleName, Instance};
use hdeg_core::hdeg::{hdeg, sv_invariant, SvInvariant};
use hdeg_core::hilbert_series::hilbert_series;
use hdeg_core::ops::{ideal_times, ideal_times_free, quotient_by, submodule_presentation};
use hdeg_core::rational::binomial;
use hdeg_core::resolution::{
    deficiency_modules, ext_from_resolution, free_resolution, is_unmixed, krull_dim, zeroth_local_cohomology,
};
use hdeg_core::samuel::{length_quotient, samuel_function};
use hdeg_core::theorems::{check_prop31, thm33_from, thm41_from, Invariants, TheoremId, Verdict};
use hdeg_core::{Context, FreeModule, ModuleElement, ModulePresentation, Polynomial};
use hdeg_oracle as oracle;
use serde_json::Value;

type Outcome = Result<String, String>;

fn c(n: i64, k: i64) -> i128 {
    binomial(n, k) as i128
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Runs a command on the problem file of an example and returns the
/// `results` block.
fn cli(name: ExampleName, params: &[usize], cmd: Command) -> Result<Value, String> {
    let inst = build_example(name, params).map_err(|e| e.to_string())?;
    let text = render_instance(&inst.module, &inst.params);
    let parsed = parse_instance(&text).map_err(|e| e.to_string())?;
    let report = run_command(cmd, &parsed, &RunOptions::default()).map_err(|e| e.to_string())?;
    Ok(report.to_json()["results"].clone())
}

fn int(v: &Value) -> i128 {
    v.as_str().and_then(|s| s.parse().ok()).unwrap_or_else(|| panic!("not an exact integer: {v}"))
}

fn ints(v: &Value) -> Vec<i128> {
    v.as_array().map(|a| a.iter().map(int).collect()).unwrap_or_default()
}

fn child_hdeg(tree: &Value, j: usize) -> i128 {
    tree["deficiency_modules"]
        .as_array()
        .and_then(|a| a.iter().find(|c| int(&c["index"]) == j as i128))
        .map_or(0, |c| int(&c["hdeg"]))
}

fn criterion1() -> Outcome {
    for l in 1..=4usize {
        let li = l as i64;
        let e = ints(&cli(ExampleName::Idealization37, &[l], Command::Coeffs)?["e"]);
        let want = vec![1, -(l as i128), -c(li, 2), -c(li, 3)];
        ensure(e == want, || format!("l={l}: e={e:?}, expected {want:?}"))?;
        let tree = cli(ExampleName::Idealization37, &[l], Command::Hdeg)?;
        ensure(child_hdeg(&tree, 2) == l as i128, || format!("l={l}: hdeg(A_2)={}", child_hdeg(&tree, 2)))?;
        if l == 4 {
            let chk = cli(ExampleName::Idealization37, &[l], Command::Check { theorem: TheoremId::Thm33 })?;
            let low = int(&chk["quantities"]["lower_sum"]);
            let e2 = int(&chk["quantities"]["e2"]);
            ensure(low == 4 && e2 == -6 && -low > e2, || format!("lower sum {low}, e2 {e2}"))?;
            let recorded = chk["notes"].as_array().is_some_and(|n| !n.is_empty());
            ensure(recorded, || "violation of the lower bound not recorded".into())?;
        }
    }
    Ok("e = (1, -l, -C(l,2), -C(l,3)) and hdeg(A_2) = l for l = 1..4".into())
}

fn criterion2() -> Outcome {
    let ctx = Context::default();
    for (l, m) in [(2usize, 1usize), (3, 1), (4, 1), (2, 2)] {
        let e = ints(&cli(ExampleName::Intersection38, &[l, m], Command::Coeffs)?["e"]);
        let e2 = e[2];
        ensure(e2 == if l == 2 { 0 } else { 1 }, || format!("({l},{m}): e2={e2}"))?;
        let tree = cli(ExampleName::Intersection38, &[l, m], Command::Hdeg)?;
        let t2 = ints(&tree["torsions"]).get(1).copied().unwrap_or(0);
        ensure(t2 == c((l + m) as i64 - 3, m as i64), || format!("({l},{m}): T2={t2}"))?;
        let pattern_ok = if l <= 3 { e2 == t2 } else { e2 < t2 };
        ensure(pattern_ok, || format!("({l},{m}): e2={e2}, T2={t2}"))?;
        ensure(tree["unmixed"] == Value::Bool(true), || format!("({l},{m}) not unmixed"))?;
        ensure(tree["sv_invariant"] == "not generalized CM", || format!("({l},{m}): {}", tree["sv_invariant"]))?;
        let inst = build_example(ExampleName::Intersection38, &[l, m]).map_err(|e| e.to_string())?;
        ensure(is_unmixed(&ctx, &inst.module).map_err(|e| e.to_string())?, || "is_unmixed".into())?;
        let sv = sv_invariant(&ctx, &inst.module).map_err(|e| e.to_string())?;
        ensure(sv == SvInvariant::NotGeneralizedCm, || format!("({l},{m}): {sv:?}"))?;
    }
    Ok("e2 and T2 tables, equality for l = 2,3 and strict for l = 4, unmixed, not generalized CM".into())
}

fn criterion3() -> Outcome {
    for l in 1..=3usize {
        let li = l as i128;
        let co = cli(ExampleName::Mixed47, &[l], Command::Coeffs)?;
        ensure(int(&co["colength"]) == 2, || format!("l={l}: colength {}", co["colength"]))?;
        let e = ints(&co["e"]);
        ensure(e == vec![1, 0, li, c(l as i64, 2)], || format!("l={l}: e={e:?}"))?;
        ensure(int(&co["sectional_genus"]) == 1, || format!("l={l}: genus {}", co["sectional_genus"]))?;
        let tree = cli(ExampleName::Mixed47, &[l], Command::Hdeg)?;
        ensure(int(&tree["hdeg"]) == 2 * li + 1, || format!("l={l}: hdeg {}", tree["hdeg"]))?;
        let t = ints(&tree["torsions"]);
        ensure(t == vec![li, li], || format!("l={l}: T={t:?}"))?;
        ensure(e[2] == t[1], || format!("l={l}: e2 != T2"))?;
        ensure(tree["unmixed"] == Value::Bool(false), || format!("l={l}: reported unmixed"))?;
        let un = cli(ExampleName::Mixed47, &[l], Command::Unmixed)?;
        ensure(un["unmixed"] == Value::Bool(false), || format!("l={l}: unmixed command"))?;
        let genus = 1;
        let equal = genus == int(&tree["hdeg"]) - e[0] - t[0];
        ensure(equal == (l == 1), || format!("l={l}: genus equality {equal}"))?;
    }
    Ok("colength 2, e = (1,0,l,C(l,2)), genus 1, hdeg 2l+1, T1 = T2 = l, mixed".into())
}

fn criterion4(ctx: &Context) -> Outcome {
    let mut tight = 0;
    for seed in 0..30 {
        let inst = random_unmixed_instance(ctx, 1000 + seed, 3).map_err(|e| e.to_string())?;
        let inv = Invariants::compute(ctx, &inst.module, &inst.params).map_err(|e| e.to_string())?;
        let chk = thm33_from(&inv).map_err(|e| e.to_string())?;
        ensure(chk.verdict == Verdict::Holds, || format!("{}: {:?}", inst.label, chk.violations))?;
        let (e2, t2, low) = (inv.samuel.e(2), inv.report.torsion(2), chk.get("lower_sum").unwrap_or(0));
        ensure(-low <= e2 && e2 <= t2, || format!("{}: {} <= {e2} <= {t2}", inst.label, -low))?;
        if e2 == t2 {
            tight += 1;
        }
    }
    Ok(format!("30 instances, bracket holds ({tight} with e2 = T2)"))
}

fn criterion5(ctx: &Context) -> Outcome {
    let mut vanishing = 0;
    for seed in 0..20 {
        let inst = if seed % 2 == 0 {
            random_unmixed_instance(ctx, 2000 + seed, 2)
        } else {
            random_ideal_module(ctx, 2000 + seed, 2)
        }
        .map_err(|e| e.to_string())?;
        let chk = check_prop31(ctx, &inst.module, &inst.params).map_err(|e| e.to_string())?;
        ensure(chk.verdict == Verdict::Holds, || format!("{}: {:?}", inst.label, chk.violations))?;
        ensure(chk.get("length_H0").unwrap_or(0) == 0, || format!("{}: depth 0", inst.label))?;
        let values: Vec<bool> = chk.conditions.values().copied().collect();
        ensure(values.len() == 4 && values.iter().all(|&v| v == values[0]), || {
            format!("{}: {:?}", inst.label, chk.conditions)
        })?;
        let e2 = chk.get("e2").unwrap_or(0);
        let h1 = chk.get("length_H1").unwrap_or(0);
        ensure(-h1 <= e2 && e2 <= 0, || format!("{}: -{h1} <= {e2} <= 0", inst.label))?;
        if values[0] {
            vanishing += 1;
        }
    }
    Ok(format!("20 instances, conditions agree ({vanishing} with e2 = 0, {} with e2 < 0)", 20 - vanishing))
}

fn criterion6(ctx: &Context) -> Outcome {
    let mut corpus: Vec<Instance> = Vec::new();
    for (l, m) in [(2, 1), (3, 1), (4, 1), (2, 2)] {
        corpus.push(build_example(ExampleName::Intersection38, &[l, m]).map_err(|e| e.to_string())?);
    }
    for seed in 0..30 {
        corpus.push(random_unmixed_instance(ctx, 1000 + seed, 3).map_err(|e| e.to_string())?);
    }
    for seed in 0..10 {
        corpus.push(random_ideal_module(ctx, 3000 + seed, 3).map_err(|e| e.to_string())?);
    }
    let mut equal = 0;
    for inst in &corpus {
        let inv = Invariants::compute(ctx, &inst.module, &inst.params).map_err(|e| e.to_string())?;
        let chk = thm41_from(ctx, &inv).map_err(|e| e.to_string())?;
        ensure(chk.verdict == Verdict::Holds, || format!("{}: {:?}", inst.label, chk.violations))?;
        let one = chk.conditions["(1) genus = hdeg - e0 - T1"];
        let two = chk.conditions["(2) e2 = T2"];
        ensure(one == two, || format!("{}: (1)={one}, (2)={two}", inst.label))?;
        if one {
            equal += 1;
            let failed: Vec<&String> = chk.conditions.iter().filter(|(_, v)| !**v).map(|(k, _)| k).collect();
            ensure(failed.is_empty(), || format!("{}: consequences fail {failed:?}", inst.label))?;
            ensure(chk.conditions.keys().any(|k| k.starts_with("(iii)")), || format!("{}: no (iii)", inst.label))?;
        }
    }
    let chk = cli(ExampleName::Mixed47, &[2], Command::Check { theorem: TheoremId::Thm41 })?;
    let cond = &chk["conditions"];
    ensure(cond["(2) e2 = T2"] == Value::Bool(true) && cond["(1) genus = hdeg - e0 - T1"] == Value::Bool(false), || {
        format!("mixed example: {cond}")
    })?;
    Ok(format!("{} unmixed instances agree ({equal} equality cases); mixed counterexample reproduces", corpus.len()))
}

fn to_poly(f: &Polynomial) -> oracle::Poly {
    let n = f.ring().nvars();
    f.terms().map(|(m, c)| (m.exps(n), c.to_big())).collect()
}

fn to_free(f: &FreeModule) -> oracle::Free {
    oracle::Free::new(f.ring.nvars(), f.degrees.clone())
}

fn to_elem(v: &ModuleElement, n: usize) -> oracle::Elem {
    v.terms.iter().map(|(t, c)| (t.slot(), t.mono.exps(n), c.to_big())).collect()
}

fn oracle_corpus(ctx: &Context) -> Result<Vec<Instance>, String> {
    let mut v = Vec::new();
    for l in 1..=4 {
        v.push(build_example(ExampleName::Idealization37, &[l]).map_err(|e| e.to_string())?);
    }
    for l in 1..=3 {
        v.push(build_example(ExampleName::Mixed47, &[l]).map_err(|e| e.to_string())?);
    }
    for (l, m) in [(2, 1), (3, 1), (2, 2), (4, 1)] {
        v.push(build_example(ExampleName::Intersection38, &[l, m]).map_err(|e| e.to_string())?);
    }
    for seed in 0..6u64 {
        let d = 2 + (seed as usize % 2);
        v.push(random_unmixed_instance(ctx, 4000 + seed, d).map_err(|e| e.to_string())?);
        v.push(random_ideal_module(ctx, 4100 + seed, d).map_err(|e| e.to_string())?);
    }
    Ok(v)
}

fn criterion7(ctx: &Context) -> Outcome {
    let (mut lengths, mut ext_values) = (0, 0);
    for inst in oracle_corpus(ctx)? {
        let m = &inst.module;
        let n = m.ring().nvars();
        let free = to_free(&m.ambient);
        let rels: Vec<oracle::Elem> = m.relations.iter().map(|r| to_elem(r, n)).collect();
        let params: Vec<oracle::Poly> = inst.params.iter().map(to_poly).collect();
        for k in 0..4 {
            let fast = length_quotient(ctx, m, &inst.params, k).map_err(|e| e.to_string())?;
            if fast > 500 {
                break;
            }
            let slow = oracle::length_mod_power(&free, &rels, &params, k, 200).ok_or("oracle degree cap")?;
            ensure(fast == slow as i128, || format!("{} n={k}: {fast} vs {slow}", inst.label))?;
            lengths += 1;
        }
        if n > 5 {
            continue;
        }
        let res = free_resolution(ctx, m).map_err(|e| e.to_string())?;
        let maps: Vec<oracle::GradedMap> = (0..res.differentials.len())
            .map(|i| oracle::GradedMap {
                source: to_free(&res.modules[i + 1]),
                target: to_free(&res.modules[i]),
                columns: res.differentials[i]
                    .iter()
                    .map(|col| res.modules[i].components(col).iter().map(to_poly).collect())
                    .collect(),
            })
            .collect();
        let top = res.modules.iter().flat_map(|f| f.degrees.iter().copied()).max().unwrap_or(0);
        for i in 0..=res.length() + 1 {
            let ext = ext_from_resolution(ctx, &res, i).map_err(|e| e.to_string())?;
            let hs = hilbert_series(ctx, &ext).map_err(|e| e.to_string())?;
            for t in -top..=8 {
                let want = oracle::ext_dim(&maps, i, t) as i128;
                ensure(hs.coefficient(t) == want, || {
                    format!("{}: Ext^{i} degree {t}: {} vs {want}", inst.label, hs.coefficient(t))
                })?;
                ext_values += 1;
            }
        }
    }
    Ok(format!("{lengths} lengths and {ext_values} graded Ext dimensions agree"))
}

const COHEN_MACAULAY: [(&str, &str); 4] = [
    ("complete intersection", "ring R vars X,Y,Z,W; ideal I = X^2 + Y*Z, Y^3 - X*W^2; module M = quotient(R, I); paramideal Q = Z, W;"),
    ("quadric", "ring R vars X,Y,Z,W; ideal I = X^2 - Y*W; module M = quotient(R, I); paramideal Q = X, Z, Y + W;"),
    ("free", "ring R vars X,Y,Z; module M = presentation rows=2 cols=0 [ ]; paramideal Q = X, Y, Z;"),
    ("nonlinear parameters", "ring R vars X,Y,Z,W; ideal I = X*Y; module M = quotient(R, I); paramideal Q = X + Y, Z^2, W;"),
];

fn criterion8(ctx: &Context) -> Outcome {
    let mut corpus = oracle_corpus(ctx)?;
    for seed in 0..4 {
        corpus.push(random_ideal_module(ctx, 5200 + seed, 2).map_err(|e| e.to_string())?);
    }
    let hd = |m: &ModulePresentation, q: &[Polynomial]| hdeg(ctx, m, q).map_err(|e| e.to_string());
    // exact sequences
    let mut sequences = 0;
    for (k, inst) in corpus.iter().enumerate().take(20) {
        let y = &inst.module;
        let ring = y.ring();
        let vars: Vec<Polynomial> = (0..ring.nvars()).map(|i| Polynomial::var(ring, i)).collect();
        if k % 2 == 0 {
            let j = if k % 4 == 0 { inst.params.clone() } else { vars };
            let gens = ideal_times_free(&y.ambient, &j);
            let x = submodule_presentation(ctx, y, &gens).map_err(|e| e.to_string())?;
            let z = quotient_by(y, &gens).map_err(|e| e.to_string())?;
            let (a, b, cz) = (hd(y, &inst.params)?.hdeg, hd(&x, &inst.params)?.hdeg, hd(&z, &inst.params)?.hdeg);
            ensure(a <= b + cz, || format!("{}: {a} > {b} + {cz}", inst.label))?;
        } else {
            let rels = ideal_times(&y.ambient, &vars, &y.relations);
            let y = ModulePresentation::new(y.ambient.clone(), rels).map_err(|e| e.to_string())?;
            let h0 = zeroth_local_cohomology(ctx, &y).map_err(|e| e.to_string())?;
            let x = submodule_presentation(ctx, &y, &h0.gens).map_err(|e| e.to_string())?;
            let z = quotient_by(&y, &h0.gens).map_err(|e| e.to_string())?;
            let hx = hd(&x, &inst.params)?;
            ensure(hx.s() == 0 && hx.hdeg > 0, || format!("{}: H0 not of positive finite length", inst.label))?;
            let (a, cz) = (hd(&y, &inst.params)?.hdeg, hd(&z, &inst.params)?.hdeg);
            ensure(a == hx.hdeg + cz, || format!("{}: {a} != {} + {cz}", inst.label, hx.hdeg))?;
        }
        sequences += 1;
    }
    ensure(sequences == 20, || format!("only {sequences} sequences"))?;
    for (label, text) in COHEN_MACAULAY {
        let inst = parse_instance(text).map_err(|e| e.to_string())?;
        corpus.push(Instance { label: label.to_string(), module: inst.module, params: inst.params });
    }
    let mut cm = 0;
    let mut deficiency = 0;
    let constructed = corpus.len() - COHEN_MACAULAY.len();
    for (k, inst) in corpus.iter().enumerate() {
        let hs = samuel_function(ctx, &inst.module, &inst.params).map_err(|e| e.to_string())?;
        ensure(hs.e(1) <= 0, || format!("{}: e1 = {}", inst.label, hs.e(1)))?;
        let r = hd(&inst.module, &inst.params)?;
        ensure(r.check(), || format!("{}: inconsistent hdeg tree", inst.label))?;
        if r.is_cohen_macaulay() {
            cm += 1;
        }
        ensure(k < constructed || r.is_cohen_macaulay(), || format!("{} is not Cohen-Macaulay", inst.label))?;
        ensure(r.is_cohen_macaulay() == (r.hdeg == r.e0), || format!("{}: hdeg {} e0 {}", inst.label, r.hdeg, r.e0))?;
        let s = krull_dim(ctx, &inst.module).map_err(|e| e.to_string())?.unwrap_or(0);
        for d in deficiency_modules(ctx, &inst.module, s).map_err(|e| e.to_string())? {
            ensure(d.dim.is_none_or(|x| x <= d.index), || format!("{}: M_{} too big", inst.label, d.index))?;
            deficiency += 1;
        }
    }
    Ok(format!(
        "20 exact sequences, e1 <= 0 on {} instances, {cm} CM with hdeg = e0, {deficiency} deficiency modules bounded",
        corpus.len()
    ))
}

fn main() {
    let ctx = Context::default();
    let criteria: Vec<(usize, Box<dyn Fn() -> Outcome + '_>)> = vec![
        (1, Box::new(criterion1)),
        (2, Box::new(criterion2)),
        (3, Box::new(criterion3)),
        (4, Box::new(|| criterion4(&ctx))),
        (5, Box::new(|| criterion5(&ctx))),
        (6, Box::new(|| criterion6(&ctx))),
        (7, Box::new(|| criterion7(&ctx))),
        (8, Box::new(|| criterion8(&ctx))),
    ];
    let mut failed = 0;
    for (n, run) in &criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(run))
            .unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {n}: pass ({detail}; {secs:.1}s)"),
            Err(why) => {
                failed += 1;
                println!("criterion {n}: fail ({why}; {secs:.1}s)");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
