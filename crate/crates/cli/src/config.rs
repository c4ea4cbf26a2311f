//! Run configuration: the `--config` file, flags and environment merged into
//! a space, an engine configuration and operands.

use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use num_complex::Complex64;
use numrad::{EngineConfig, Field, NormKind, NormedSpace, Operator, Scalar, Vector};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::args::Common;

pub const SEED_ENV: &str = "NUMRAD_SEED";
pub const DEFAULT_SEED: u64 = 42;

#[derive(Deserialize, Serialize, Debug, Default, Clone)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub space: Option<SpaceSpec>,
    pub matrix: Option<Value>,
    pub a: Option<Value>,
    pub b: Option<Value>,
    pub x: Option<Value>,
    pub y: Option<Value>,
    pub engine: Option<EngineOverrides>,
    pub report: Option<PathBuf>,
}

#[derive(Deserialize, Serialize, Debug, Default, Clone)]
#[serde(deny_unknown_fields)]
pub struct SpaceSpec {
    /// `lp:<p>`, `l1`, `l2`, `linf`, `mixed`, or `lp` together with `p`.
    pub kind: Option<String>,
    pub p: Option<f64>,
    pub dim: Option<usize>,
    pub field: Option<String>,
}

#[derive(Deserialize, Serialize, Debug, Default, Clone)]
#[serde(deny_unknown_fields)]
pub struct EngineOverrides {
    pub grid: Option<usize>,
    pub multistarts: Option<usize>,
    pub refine: Option<usize>,
    pub seed: Option<u64>,
    pub tol: Option<f64>,
    pub lambda_grid: Option<usize>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        let de = &mut serde_json::Deserializer::from_str(&text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let at = e.path().to_string();
            anyhow!("invalid config {} at `{}`: {}", path.display(), at, e.inner())
        })
    }

    pub fn load_opt(path: Option<&PathBuf>) -> Result<Self> {
        path.map(|p| Self::load(p)).transpose().map(Option::unwrap_or_default)
    }

    fn engine(&self) -> EngineOverrides {
        self.engine.clone().unwrap_or_default()
    }
}

/// Seed precedence: flag, then config file, then `NUMRAD_SEED`, then 42.
pub fn resolve_seed(flag: Option<u64>, config: &RunConfig) -> Result<u64> {
    if let Some(s) = flag.or(config.engine().seed) {
        return Ok(s);
    }
    match std::env::var(SEED_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| anyhow!("{SEED_ENV} must be an unsigned integer, got {v:?}")),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

/// Space description after merging flags and config, before the dimension
/// is known.
#[derive(Serialize, Debug, Clone)]
pub struct SpaceChoice {
    pub kind: NormKind,
    pub dim: Option<usize>,
    pub field: Field,
}

pub fn resolve_space(common: &Common, config: &RunConfig) -> Result<SpaceChoice> {
    let spec = config.space.clone().unwrap_or_default();
    let kind = match (&common.space, &spec.kind, spec.p) {
        (Some(flag), _, _) => flag.parse().context("--space")?,
        (None, Some(k), Some(p)) if k.trim() == "lp" => format!("lp:{p}").parse().context("config space.p")?,
        (None, Some(_), Some(_)) => bail!("config space.p is only valid with kind \"lp\""),
        (None, Some(k), None) => k.parse().context("config space.kind")?,
        (None, None, _) => bail!("no space given: pass --space or set space.kind in the config"),
    };
    let field = match common.field.as_ref().or(spec.field.as_ref()) {
        Some(f) => f.parse().context("field")?,
        None => Field::Real,
    };
    Ok(SpaceChoice { kind, dim: common.dim.or(spec.dim), field })
}

/// Engine defaults for the space, overridden by the config file and then by
/// flags.
pub fn resolve_engine(common: &Common, config: &RunConfig, dim: usize, seed: u64) -> Result<EngineConfig> {
    let o = config.engine();
    let mut cfg = EngineConfig { tol: numrad::tol::search_tol(dim), ..EngineConfig::default() };
    cfg.grid_size = common.grid.or(o.grid).unwrap_or(cfg.grid_size);
    cfg.multistarts = common.multistarts.or(o.multistarts).unwrap_or(cfg.multistarts);
    cfg.refine_rounds = common.refine.or(o.refine).unwrap_or(cfg.refine_rounds);
    cfg.tol = common.tol.or(o.tol).unwrap_or(cfg.tol);
    cfg.lambda_grid = o.lambda_grid.unwrap_or(cfg.lambda_grid);
    cfg.seed = seed;
    cfg.validate()?;
    Ok(cfg)
}

/// An operand as given on the command line or in the config file.
#[derive(Debug, Clone)]
pub enum RawOperand {
    Identity,
    Zero,
    Json(Value),
}

impl RawOperand {
    pub fn from_flag(name: &str, text: &str) -> Result<Self> {
        match text.trim() {
            "I" => Ok(RawOperand::Identity),
            "0" => Ok(RawOperand::Zero),
            t => serde_json::from_str(t).map(RawOperand::Json).with_context(|| format!("--{name} is not valid JSON")),
        }
    }

    pub fn from_config(v: &Value) -> Self {
        match v.as_str().map(str::trim) {
            Some("I") => RawOperand::Identity,
            Some("0") => RawOperand::Zero,
            _ => RawOperand::Json(v.clone()),
        }
    }

    /// Dimension implied by an explicit matrix or vector.
    pub fn dim(&self) -> Option<usize> {
        match self {
            RawOperand::Json(Value::Array(a)) => Some(a.len()),
            _ => None,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            RawOperand::Identity => Value::from("I"),
            RawOperand::Zero => Value::from("0"),
            RawOperand::Json(v) => v.clone(),
        }
    }
}

/// Flag value if present, else the config value.
pub fn operand(name: &str, flag: Option<&String>, config: Option<&Value>) -> Result<Option<RawOperand>> {
    match (flag, config) {
        (Some(f), _) => RawOperand::from_flag(name, f).map(Some),
        (None, Some(v)) => Ok(Some(RawOperand::from_config(v))),
        (None, None) => Ok(None),
    }
}

pub fn settle_dim(choice: &SpaceChoice, operands: &[&RawOperand]) -> Result<usize> {
    let implied = operands.iter().find_map(|o| o.dim());
    match (choice.dim, implied) {
        (Some(d), _) => Ok(d),
        (None, Some(d)) => Ok(d),
        (None, None) => bail!("cannot infer the dimension; pass --dim"),
    }
}

/// Scalars that can be read from JSON: a number, or `[re, im]`.
pub trait JsonScalar: Scalar<Real = f64> {
    fn from_json(v: &Value) -> Result<Self>;
}

fn pair(v: &Value) -> Option<(f64, f64)> {
    let a = v.as_array()?;
    match a.as_slice() {
        [re, im] => Some((re.as_f64()?, im.as_f64()?)),
        _ => None,
    }
}

impl JsonScalar for f64 {
    fn from_json(v: &Value) -> Result<Self> {
        if let Some(x) = v.as_f64() {
            return Ok(x);
        }
        match pair(v) {
            Some((re, 0.0)) => Ok(re),
            Some(_) => bail!("complex entry {v} in a real space; pass --field complex"),
            None => bail!("expected a number, got {v}"),
        }
    }
}

impl JsonScalar for Complex64 {
    fn from_json(v: &Value) -> Result<Self> {
        if let Some(x) = v.as_f64() {
            return Ok(Complex64::new(x, 0.0));
        }
        pair(v).map(|(re, im)| Complex64::new(re, im)).ok_or_else(|| anyhow!("expected a number or [re, im], got {v}"))
    }
}

fn scalars<S: JsonScalar>(v: &Value, what: &str) -> Result<Vec<S>> {
    v.as_array()
        .ok_or_else(|| anyhow!("{what} must be a JSON array, got {v}"))?
        .iter()
        .map(S::from_json)
        .collect::<Result<_>>()
        .with_context(|| format!("in {what}"))
}

pub fn build_operator<S: JsonScalar>(name: &str, raw: &RawOperand, space: &NormedSpace<S>) -> Result<Operator<S>> {
    let t = match raw {
        RawOperand::Identity => Operator::identity(space.dim()),
        RawOperand::Zero => Operator::zero(space.dim()),
        RawOperand::Json(v) => {
            let rows = v.as_array().ok_or_else(|| anyhow!("{name} must be a matrix (array of rows)"))?;
            let rows = rows
                .iter()
                .enumerate()
                .map(|(i, r)| scalars::<S>(r, &format!("{name} row {i}")))
                .collect::<Result<Vec<_>>>()?;
            Operator::from_rows(rows).with_context(|| name.to_owned())?
        }
    };
    if t.dim() != space.dim() {
        bail!("{name} is {0}×{0} but the space has dimension {1}", t.dim(), space.dim());
    }
    Ok(t)
}

pub fn build_vector<S: JsonScalar>(name: &str, raw: &RawOperand, space: &NormedSpace<S>) -> Result<Vector<S>> {
    let v = match raw {
        RawOperand::Json(v) => Vector::new(scalars::<S>(v, name)?),
        RawOperand::Zero => Vector::zeros(space.dim()),
        RawOperand::Identity => bail!("{name} must be a vector, not `I`"),
    };
    space.norm(&v).with_context(|| name.to_owned())?;
    Ok(v)
}
