use std::path::PathBuf;

use anyhow::{anyhow, bail, Result};
use num_complex::Complex64;
use numrad::relations::{self, alpha_points, unimodular_points, RelationReport, Witness};
use numrad::theorems::{self, VerificationOutcome, VERIFIER_IDS};
use numrad::{numerical_radius, operator_norm, EngineConfig, Field, NormedSpace, Operator, RadiusWitness, Scalar};
use serde_json::{json, Map, Value};

use crate::args::{Common, Operands, Relation};
use crate::config::{self, build_operator, build_vector, operand, JsonScalar, RawOperand, RunConfig, SpaceChoice};
use crate::report::{self, Report, ResultEntry, Sweep, WitnessOut};

/// Exit status for a decided property.
pub const TRUE: u8 = 0;
pub const FALSE: u8 = 1;

/// Points in an α sweep.
const ALPHA_SWEEP: usize = 201;

struct Ctx {
    choice: SpaceChoice,
    dim: usize,
    cfg: EngineConfig,
    seed: u64,
    report: Option<PathBuf>,
    command: String,
    operands: Map<String, Value>,
}

impl Ctx {
    fn config_json(&self) -> Value {
        json!({
            "space": { "kind": self.choice.kind, "dim": self.dim, "field": self.choice.field },
            "engine": report::json(&self.cfg),
            "operands": Value::Object(self.operands.clone()),
        })
    }

    fn space<S: Scalar>(&self) -> Result<NormedSpace<S>> {
        Ok(NormedSpace::new(self.choice.kind, self.dim)?)
    }

    fn finish(&self, results: Vec<ResultEntry>) -> Result<()> {
        if let Some(path) = &self.report {
            let r = Report {
                command: self.command.clone(),
                config: self.config_json(),
                results,
                seed: self.seed,
                version: env!("CARGO_PKG_VERSION"),
                timestamp: report::timestamp(),
            };
            report::write(path, &r)?;
            println!("report written to {}", path.display());
        }
        Ok(())
    }
}

fn setup(command: String, common: &Common, config: &RunConfig, named: &[(&str, &RawOperand)]) -> Result<Ctx> {
    let seed = config::resolve_seed(common.seed, config)?;
    let choice = config::resolve_space(common, config)?;
    let raws: Vec<&RawOperand> = named.iter().map(|(_, r)| *r).collect();
    let dim = config::settle_dim(&choice, &raws)?;
    let cfg = config::resolve_engine(common, config, dim, seed)?;
    let operands = named.iter().map(|(n, r)| (n.to_string(), r.to_json())).collect();
    Ok(Ctx { choice, dim, cfg, seed, report: common.report.clone().or(config.report.clone()), command, operands })
}

/// Human-readable float: exponent form for very small or large magnitudes.
fn num(v: f64) -> String {
    let a = v.abs();
    if a != 0.0 && !(1e-4..1e6).contains(&a) {
        format!("{v:e}")
    } else {
        format!("{v}")
    }
}

fn show<T: serde::Serialize>(v: &T) -> String {
    report::json(v).to_string()
}

fn radius_witness_out<S: Scalar>(w: &RadiusWitness<S>) -> WitnessOut {
    WitnessOut {
        x: report::json(&w.x),
        xstar: report::json(&w.xstar),
        lambda_or_alpha: Value::Null,
        attained: report::json(&[w.attained]),
    }
}

fn witness_out<S: Scalar>(w: &Witness<S>) -> WitnessOut {
    WitnessOut {
        x: report::json(&w.x),
        xstar: report::json(&w.xstar),
        lambda_or_alpha: report::json(&w.lambda_or_alpha),
        attained: report::json(&w.attained),
    }
}

pub fn radius(common: &Common, matrix: Option<&String>) -> Result<u8> {
    let config = RunConfig::load_opt(common.config.as_ref())?;
    let raw = operand("matrix", matrix, config.matrix.as_ref())?.ok_or_else(|| anyhow!("radius needs --matrix"))?;
    let ctx = setup("radius".into(), common, &config, &[("matrix", &raw)])?;
    match ctx.choice.field {
        Field::Real => radius_in::<f64>(&ctx, &raw),
        Field::Complex => radius_in::<Complex64>(&ctx, &raw),
    }
}

fn radius_in<S: JsonScalar>(ctx: &Ctx, raw: &RawOperand) -> Result<u8> {
    let space = ctx.space::<S>()?;
    let t = build_operator("matrix", raw, &space)?;
    let r = numerical_radius(&space, &t, &ctx.cfg)?;
    println!("v(T) = {}", num(r.value));
    for (i, w) in r.witnesses.iter().enumerate() {
        println!("witness {}: x = {}, x* = {}, x*(Tx) = {}", i + 1, show(&w.x), show(&w.xstar), show(&w.attained));
    }
    let entry = ResultEntry {
        id: "radius".into(),
        value: Some(r.value),
        witness: Some(radius_witness_out(r.best())),
        witnesses: Some(r.witnesses.iter().map(radius_witness_out).collect()),
        tol: ctx.cfg.tol,
        margin: numrad::tol::STRICT_MARGIN,
        ..Default::default()
    };
    ctx.finish(vec![entry])?;
    Ok(TRUE)
}

pub fn check(relation: Relation, common: &Common, ops: &Operands, sweep: bool) -> Result<u8> {
    let config = RunConfig::load_opt(common.config.as_ref())?;
    let x = operand("x", ops.x.as_ref(), config.x.as_ref())?;
    let y = operand("y", ops.y.as_ref(), config.y.as_ref())?;
    let a = operand("a", ops.a.as_ref().or(ops.matrix.as_ref()), config.a.as_ref().or(config.matrix.as_ref()))?;
    let b = operand("b", ops.b.as_ref(), config.b.as_ref())?;
    let name = relation.name();
    let named: Vec<(&str, RawOperand)> = if relation.takes_vectors() {
        if a.is_some() || b.is_some() {
            bail!("`{name}` relates vectors; use --x and --y, not operators");
        }
        vec![
            ("x", x.ok_or_else(|| anyhow!("`{name}` needs --x"))?),
            ("y", y.ok_or_else(|| anyhow!("`{name}` needs --y"))?),
        ]
    } else {
        if x.is_some() || y.is_some() {
            bail!("`{name}` relates operators; use --a and --b, not vectors");
        }
        let a = a.ok_or_else(|| anyhow!("`{name}` needs --a"))?;
        if relation == Relation::Daugavet {
            if b.is_some() {
                bail!("`daugavet` takes a single operator (--a)");
            }
            vec![("a", a)]
        } else {
            vec![("a", a), ("b", b.ok_or_else(|| anyhow!("`{name}` needs --b"))?)]
        }
    };
    let refs: Vec<(&str, &RawOperand)> = named.iter().map(|(n, r)| (*n, r)).collect();
    let ctx = setup(format!("check {name}"), common, &config, &refs)?;
    let raws: Vec<&RawOperand> = named.iter().map(|(_, r)| r).collect();
    match ctx.choice.field {
        Field::Real => check_in::<f64>(&ctx, relation, &raws, sweep),
        Field::Complex => check_in::<Complex64>(&ctx, relation, &raws, sweep),
    }
}

fn check_in<S: JsonScalar>(ctx: &Ctx, relation: Relation, raws: &[&RawOperand], sweep: bool) -> Result<u8> {
    let space = ctx.space::<S>()?;
    let cfg = &ctx.cfg;
    let (report, sweep) = if relation.takes_vectors() {
        let x = build_vector("x", raws[0], &space)?;
        let y = build_vector("y", raws[1], &space)?;
        let nx = space.norm(&x)?;
        let ny = space.norm(&y)?;
        let f = |s: S| space.norm(&x.add_scaled(s, &y));
        match relation {
            Relation::Parallel => {
                let r = relations::norm_parallel_vectors(&space, &x, &y, cfg)?;
                let sw = sweep.then(|| lambda_sweep(cfg, f)).transpose()?;
                (r, sw)
            }
            _ => {
                let r = relations::birkhoff_vectors(&space, &x, &y, cfg)?;
                let bound = if ny > 0.0 { 2.0 * nx / ny } else { 1.0 };
                let sw = sweep.then(|| alpha_sweep(bound, f)).transpose()?;
                (r, sw)
            }
        }
    } else {
        let t = build_operator("a", raws[0], &space)?;
        match relation {
            Relation::Daugavet => {
                let r = relations::daugavet_check(&space, &t, cfg)?;
                let id = Operator::identity(space.dim());
                let sw = sweep
                    .then(|| lambda_sweep(cfg, |l| operator_norm(&space, &id.add_scaled(l, &t)?, cfg)))
                    .transpose()?;
                (r, sw)
            }
            _ => {
                let s = build_operator("b", raws[1], &space)?;
                let v = |l: S| Ok(numerical_radius(&space, &t.add_scaled(l, &s)?, cfg)?.value);
                if relation == Relation::NrParallel {
                    let r = relations::nr_parallel(&space, &t, &s, cfg)?;
                    (r, sweep.then(|| lambda_sweep(cfg, v)).transpose()?)
                } else {
                    let r = relations::nr_birkhoff(&space, &t, &s, cfg)?;
                    let vt = numerical_radius(&space, &t, cfg)?.value;
                    let vs = numerical_radius(&space, &s, cfg)?.value;
                    let bound = if vs > cfg.tol { 2.0 * vt / vs } else { 1.0 };
                    (r, sweep.then(|| alpha_sweep(bound, v)).transpose()?)
                }
            }
        }
    };
    print_report(relation.name(), &report);
    let entry = relation_entry(relation.name(), &report, sweep);
    ctx.finish(vec![entry])?;
    Ok(if report.verdict { TRUE } else { FALSE })
}

fn lambda_sweep<S: Scalar, F>(cfg: &EngineConfig, mut f: F) -> Result<Sweep>
where
    F: FnMut(S) -> numrad::Result<f64>,
{
    let points = unimodular_points::<S>(cfg.lambda_grid);
    let values = points.iter().map(|&l| f(l)).collect::<numrad::Result<Vec<_>>>()?;
    Ok(Sweep { parameter: "lambda", points: report::json(&points), values })
}

fn alpha_sweep<S: Scalar, F>(bound: f64, mut f: F) -> Result<Sweep>
where
    F: FnMut(S) -> numrad::Result<f64>,
{
    let points = alpha_points::<S>(bound, ALPHA_SWEEP);
    let values = points.iter().map(|&a| f(a)).collect::<numrad::Result<Vec<_>>>()?;
    Ok(Sweep { parameter: "alpha", points: report::json(&points), values })
}

fn print_report<S: Scalar<Real = f64>>(name: &str, r: &RelationReport<S>) {
    println!("{name}: {}", r.verdict);
    println!("  value    {}", num(r.value));
    println!("  required {}", num(r.required));
    println!("  gap      {} (tol {:e}, strictly false: {})", num(r.gap), r.tol, r.is_strictly_false());
    if let Some(n) = r.note {
        println!("  note     {n}");
    }
    if let Some(w) = &r.witness {
        if let Some(s) = &w.lambda_or_alpha {
            println!("  scalar   {}", show(s));
        }
        if let (Some(x), Some(xs)) = (&w.x, &w.xstar) {
            println!("  x        {}", show(x));
            println!("  x*       {}", show(xs));
        }
        println!("  attained {}", show(&w.attained));
    }
    if let Some(c) = &r.cross_check {
        println!("  {}: {} (gap {})", c.name, c.verdict, num(c.gap));
    }
}

fn relation_entry<S: Scalar<Real = f64>>(id: &str, r: &RelationReport<S>, sweep: Option<Sweep>) -> ResultEntry {
    ResultEntry {
        id: id.into(),
        verdict: Some(r.verdict),
        value: Some(r.value),
        gap: Some(r.gap),
        witness: r.witness.as_ref().map(witness_out),
        tol: r.tol,
        margin: r.margin,
        required: Some(r.required),
        cross_check: r.cross_check.as_ref().map(report::json),
        note: r.note.map(String::from),
        sweep,
        ..Default::default()
    }
}

fn outcome_entry(o: &VerificationOutcome) -> ResultEntry {
    let passed = o.checks.iter().filter(|c| c.passed).count();
    let gap = o.checks.iter().map(|c| c.gap).fold(f64::INFINITY, f64::min);
    ResultEntry {
        id: o.id.clone(),
        verdict: Some(o.passed),
        value: Some(passed as f64),
        gap: gap.is_finite().then_some(gap),
        witness: None,
        tol: EngineConfig::default().tol,
        margin: numrad::tol::STRICT_MARGIN,
        checks: Some(report::json(&o.checks)),
        ..Default::default()
    }
}

pub fn verify(id: &str, seed: Option<u64>, report_path: Option<&PathBuf>, config_path: Option<&PathBuf>) -> Result<u8> {
    let config = RunConfig::load_opt(config_path)?;
    let seed = config::resolve_seed(seed, &config)?;
    let ids: Vec<&str> = if id == "all" {
        VERIFIER_IDS.to_vec()
    } else if VERIFIER_IDS.contains(&id) {
        vec![id]
    } else {
        bail!("unknown verifier id {id:?}; expected `all` or one of {}", VERIFIER_IDS.join(", "));
    };
    let mut results = Vec::new();
    let mut all = true;
    println!("{:<10} {:<6} {:>7}", "id", "result", "checks");
    for id in ids {
        let o = theorems::run(id, seed)?;
        let passed = o.checks.iter().filter(|c| c.passed).count();
        println!("{:<10} {:<6} {:>3}/{:<3}", o.id, if o.passed { "PASS" } else { "FAIL" }, passed, o.checks.len());
        for c in o.checks.iter().filter(|c| !c.passed) {
            println!("    failed: {} (value {}, gap {})", c.name, num(c.value), num(c.gap));
            if let Some(inst) = &c.instance {
                println!("      instance: {inst}");
            }
        }
        all &= o.passed;
        results.push(outcome_entry(&o));
    }
    if let Some(path) = report_path.or(config.report.as_ref()) {
        let r = Report {
            command: format!("verify {id}"),
            config: json!({ "seed": seed }),
            results,
            seed,
            version: env!("CARGO_PKG_VERSION"),
            timestamp: report::timestamp(),
        };
        report::write(path, &r)?;
        println!("report written to {}", path.display());
    }
    Ok(if all { TRUE } else { FALSE })
}
