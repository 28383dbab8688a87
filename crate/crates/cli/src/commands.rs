//! Command dispatch.

use std::path::PathBuf;
use std::time::Instant;

use hdeg_core::cache::GbCache;
use hdeg_core::hdeg::{hdeg, HdegReport};
use hdeg_core::hilbert_series::hilbert_series;
use hdeg_core::ops::quotient_by;
use hdeg_core::resolution::{deficiency_modules, is_unmixed, krull_dim, unmixed_component};
use hdeg_core::samuel::{hilbert_coefficients, is_parameter_ideal, LengthMethod, ParameterIdeal};
use hdeg_core::sequences::{find_d_sequence_generators, is_d_sequence};
use hdeg_core::theorems::{run_check, Relation, TheoremId, Verdict};
use hdeg_core::{Context, Error as CoreError, Settings};
use serde_json::{json, Map, Value};

use crate::error::{exit, CliError};
use crate::instance::ProblemInstance;
use crate::report::{num, provenance, Report};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Coeffs,
    Hdeg,
    Torsion { i: usize },
    Dseq,
    Unmixed,
    Check { theorem: TheoremId },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Coeffs => "coeffs",
            Command::Hdeg => "hdeg",
            Command::Torsion { .. } => "torsion",
            Command::Dseq => "dseq",
            Command::Unmixed => "unmixed",
            Command::Check { .. } => "check",
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub settings: Settings,
    pub cache_dir: Option<PathBuf>,
}

fn require_parameters(ctx: &Context, inst: &ProblemInstance) -> Result<(), CliError> {
    if !is_parameter_ideal(ctx, &inst.params, &inst.module).map_err(CliError::compute("parameter check"))? {
        let d = krull_dim(ctx, &inst.module).map_err(CliError::compute("dimension"))?;
        return Err(CliError::Compute {
            stage: "parameter check",
            source: CoreError::NotParameterIdeal(format!(
                "{} generators on a module of dimension {}",
                inst.params.len(),
                d.map_or("-inf".to_string(), |x| x.to_string())
            )),
        });
    }
    Ok(())
}

fn strings(v: &[i128]) -> Value {
    Value::Array(v.iter().map(num).collect())
}

fn hdeg_tree(r: &HdegReport) -> Value {
    let children: Vec<Value> = r
        .children
        .iter()
        .enumerate()
        .filter(|(_, c)| c.dim.is_some())
        .map(|(j, c)| {
            let mut v = hdeg_tree(c);
            v.as_object_mut().expect("object").insert("index".into(), num(j));
            v
        })
        .collect();
    let mut m = Map::new();
    m.insert("dim".into(), r.dim.map_or(num("-inf"), num));
    m.insert("e0".into(), num(r.e0));
    m.insert("hdeg".into(), num(r.hdeg));
    if let Some(l) = r.length {
        m.insert("length".into(), num(l));
    }
    if !r.torsions.is_empty() {
        m.insert("torsions".into(), strings(&r.torsions));
    }
    if !children.is_empty() {
        m.insert("deficiency_modules".into(), Value::Array(children));
    }
    Value::Object(m)
}

fn coeffs(ctx: &Context, inst: &ProblemInstance) -> Result<Value, CliError> {
    let q = ParameterIdeal::new(inst.params.clone()).map_err(CliError::compute("parameter ideal"))?;
    let hs = hilbert_coefficients(ctx, &inst.module, &q).map_err(CliError::compute("Hilbert coefficients"))?;
    Ok(json!({
        "dim": num(hs.dim),
        "e": strings(&hs.coefficients),
        "colength": num(hs.colength()),
        "chi1": num(hs.chi1()),
        "sectional_genus": num(hs.sectional_genus()),
        "postulation_index": num(hs.postulation_index),
        "length_table": strings(&hs.length_table),
        "verified_extra_points": num(hs.verified_extra_points),
        "method": match hs.method { LengthMethod::Series => "associated graded series", LengthMethod::Table => "length table" },
    }))
}

fn hdeg_cmd(ctx: &Context, inst: &ProblemInstance) -> Result<Value, CliError> {
    require_parameters(ctx, inst)?;
    let r = hdeg(ctx, &inst.module, &inst.params).map_err(CliError::compute("homological degree"))?;
    if !r.check() {
        return Err(CliError::Compute {
            stage: "homological degree",
            source: CoreError::Invariant("recursion tree fails its identities".into()),
        });
    }
    let mut v = hdeg_tree(&r);
    let m = v.as_object_mut().expect("object");
    m.insert("cohen_macaulay".into(), Value::Bool(r.is_cohen_macaulay()));
    m.insert("unmixed".into(), Value::Bool(r.is_unmixed()));
    m.insert("sv_invariant".into(), r.sv_invariant().map_or(Value::String("not generalized CM".into()), num));
    Ok(v)
}

fn torsion_cmd(ctx: &Context, inst: &ProblemInstance, i: usize) -> Result<Value, CliError> {
    require_parameters(ctx, inst)?;
    let r = hdeg(ctx, &inst.module, &inst.params).map_err(CliError::compute("homological degree"))?;
    let s = r.s();
    if i == 0 || i >= s.max(1) {
        return Err(CliError::Compute {
            stage: "torsion",
            source: CoreError::IndexOutOfRange(format!("torsion index {i} needs 1 <= i <= {}", s.saturating_sub(1))),
        });
    }
    Ok(json!({ "i": num(i), "dim": num(s), "value": num(r.torsion(i)) }))
}

fn dseq(ctx: &Context, inst: &ProblemInstance) -> Result<Value, CliError> {
    let m = &inst.module;
    let v = is_d_sequence(ctx, &inst.params, m).map_err(CliError::compute("d-sequence check"))?;
    let violation = v.first_violation.as_ref().map(|x| {
        json!({ "i": num(x.i), "j": num(x.j), "witness": m.ambient.render(&x.witness) })
    });
    let mut out = json!({
        "given_order": { "holds": v.holds, "first_violation": violation },
    });
    if !v.holds {
        let s = &ctx.settings;
        let found = find_d_sequence_generators(ctx, &inst.params, m, s.trials, s.seed)
            .map_err(CliError::compute("generator search"))?;
        out.as_object_mut().expect("object").insert(
            "search".into(),
            json!({
                "found": found.is_some(),
                "generators": found.map(|g| g.iter().map(|p| p.to_string()).collect::<Vec<_>>()),
            }),
        );
    }
    Ok(out)
}

fn unmixed(ctx: &Context, inst: &ProblemInstance) -> Result<Value, CliError> {
    let m = &inst.module;
    let d = krull_dim(ctx, m).map_err(CliError::compute("dimension"))?;
    let Some(d) = d else {
        return Ok(json!({ "dim": "-inf", "unmixed": true }));
    };
    let flag = is_unmixed(ctx, m).map_err(CliError::compute("unmixedness"))?;
    let defs = deficiency_modules(ctx, m, d).map_err(CliError::compute("deficiency modules"))?;
    let dims: Vec<Value> = defs.iter().map(|x| json!({ "index": num(x.index), "dim": x.dim.map_or(num("-inf"), num) })).collect();
    let mut out = json!({ "dim": num(d), "unmixed": flag, "deficiency_modules": dims });
    if d >= 1 {
        let u = unmixed_component(ctx, m).map_err(CliError::compute("unmixed component"))?;
        let gb = hdeg_core::groebner::groebner_basis(ctx, &m.relations_submodule()).map_err(CliError::compute("unmixed component"))?;
        let mut gens = Vec::new();
        for g in &u.gens {
            if !gb.contains(g).map_err(CliError::compute("unmixed component"))? {
                gens.push(Value::String(m.ambient.render(g)));
            }
        }
        let quotient = quotient_by(m, &u.gens).map_err(CliError::compute("unmixed component"))?;
        let hs = hilbert_series(ctx, &quotient).map_err(CliError::compute("unmixed component"))?;
        let obj = out.as_object_mut().expect("object");
        obj.insert("component_generators".into(), Value::Array(gens));
        obj.insert("quotient_dim".into(), hs.dim().map_or(num("-inf"), num));
        obj.insert("quotient_multiplicity".into(), num(hs.multiplicity()));
    }
    Ok(out)
}

fn check(ctx: &Context, inst: &ProblemInstance, id: TheoremId) -> Result<(Value, i32), CliError> {
    let c = run_check(ctx, id, &inst.module, &inst.params).map_err(CliError::compute("theorem check"))?;
    let hyps: Map<String, Value> = c.hypotheses.iter().map(|(k, v)| (k.clone(), Value::Bool(*v))).collect();
    let qty: Map<String, Value> = c.quantities.iter().map(|(k, v)| (k.clone(), num(v))).collect();
    let cond: Map<String, Value> = c.conditions.iter().map(|(k, v)| (k.clone(), Value::Bool(*v))).collect();
    let comparisons: Vec<Value> = c
        .comparisons
        .iter()
        .map(|x| {
            json!({
                "name": x.name,
                "lhs": num(x.lhs),
                "relation": match x.relation { Relation::Le => "<=", Relation::Eq => "=" },
                "rhs": num(x.rhs),
                "holds": x.holds(),
            })
        })
        .collect();
    let code = match c.verdict {
        Verdict::Holds => exit::OK,
        Verdict::Fails => exit::FAILS,
        Verdict::HypothesesNotMet => exit::HYPOTHESES_NOT_MET,
    };
    let v = json!({
        "theorem": id.tag(),
        "verdict": c.verdict.tag(),
        "hypotheses": hyps,
        "quantities": qty,
        "conditions": cond,
        "comparisons": comparisons,
        "violations": c.violations.iter().map(|x| x.name.clone()).collect::<Vec<_>>(),
        "notes": c.notes,
    });
    Ok((v, code))
}

/// Runs one command. The context is built here so that cache counters
/// reflect only this run.
pub fn run_command(cmd: Command, inst: &ProblemInstance, opts: &RunOptions) -> Result<Report, CliError> {
    let mut ctx = Context::new(opts.settings.clone());
    if let Some(dir) = &opts.cache_dir {
        let cache = GbCache::new(dir).map_err(|e| CliError::Io { path: dir.display().to_string(), source: e })?;
        ctx = ctx.with_cache(cache);
    }
    let start = Instant::now();
    let (results, exit_code) = match cmd {
        Command::Coeffs => (coeffs(&ctx, inst)?, exit::OK),
        Command::Hdeg => (hdeg_cmd(&ctx, inst)?, exit::OK),
        Command::Torsion { i } => (torsion_cmd(&ctx, inst, i)?, exit::OK),
        Command::Dseq => (dseq(&ctx, inst)?, exit::OK),
        Command::Unmixed => (unmixed(&ctx, inst)?, exit::OK),
        Command::Check { theorem } => check(&ctx, inst, theorem)?,
    };
    Ok(Report {
        command: cmd.name().to_string(),
        instance_digest: inst.digest(),
        results,
        provenance: provenance(&ctx.settings),
        exit_code,
        elapsed_ms: start.elapsed().as_millis(),
        cache_enabled: ctx.cache.is_some(),
        stats: ctx.stats.snapshot(),
    })
}
