//! Input formats: JSON spec files and command-line shorthands.
//!
//! A spec argument is inline JSON when it starts with `{`, a path when it
//! names an existing file, and otherwise one of the shorthands `chain:N`,
//! `boolean:K`, `dyadic:K`, `rational:K`, `prod:N1,N2,...` or
//! `lu:K:[u1,...,uK]`.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use mvt_core::enriched::ScalarSet;
use mvt_core::lu::{gamma, LuGroup};
use mvt_core::mv::{
    semisimple_representation, FnAlgebra, FnElement, Membership, TableAlgebra, ValueSet,
};
use mvt_core::pwl::PwlFn;
use mvt_core::Rat01;
use serde::{Deserialize, Serialize};

/// One value per carrier point, rationals as `"num/den"`.
pub type ElementSpec = BTreeMap<String, String>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Predicate {
    Dyadic,
    Rational,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Spec {
    Chain {
        denominator: usize,
    },
    Boolean {
        atoms: usize,
    },
    Product {
        factors: Vec<Spec>,
    },
    Table {
        oplus: Vec<Vec<usize>>,
        neg: Vec<usize>,
        zero: usize,
    },
    Functions {
        carrier: Vec<String>,
        elements: Vec<ElementSpec>,
    },
    Intensional {
        carrier: Vec<String>,
        predicate: Predicate,
        #[serde(default)]
        generators: Vec<ElementSpec>,
    },
    LuGroup {
        rank: usize,
        unit: Vec<i64>,
    },
}

/// The source text a spec was read from, kept for the input digest.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub spec: Spec,
    pub source: String,
}

pub fn load(arg: &str) -> Result<Loaded> {
    let trimmed = arg.trim();
    if trimmed.starts_with('{') {
        let spec = serde_json::from_str(trimmed).context("invalid inline spec")?;
        return Ok(Loaded {
            spec,
            source: trimmed.to_string(),
        });
    }
    if Path::new(trimmed).is_file() {
        let text =
            std::fs::read_to_string(trimmed).with_context(|| format!("reading {trimmed}"))?;
        let spec =
            serde_json::from_str(&text).with_context(|| format!("invalid spec in {trimmed}"))?;
        return Ok(Loaded { spec, source: text });
    }
    Ok(Loaded {
        spec: shorthand(trimmed)?,
        source: trimmed.to_string(),
    })
}

fn shorthand(s: &str) -> Result<Spec> {
    let (head, rest) = s
        .split_once(':')
        .ok_or_else(|| anyhow!("`{s}` is neither a file, inline JSON, nor a shorthand"))?;
    let num = |t: &str| -> Result<usize> {
        t.trim()
            .parse()
            .with_context(|| format!("bad number `{t}` in `{s}`"))
    };
    let points = |k: usize, p: Predicate| Spec::Intensional {
        carrier: (0..k).map(|i| format!("p{i}")).collect(),
        predicate: p,
        generators: Vec::new(),
    };
    Ok(match head {
        "chain" => Spec::Chain {
            denominator: num(rest)?,
        },
        "boolean" => Spec::Boolean { atoms: num(rest)? },
        "dyadic" => points(num(rest)?, Predicate::Dyadic),
        "rational" => points(num(rest)?, Predicate::Rational),
        "prod" => Spec::Product {
            factors: rest
                .split(',')
                .map(|n| {
                    Ok(Spec::Chain {
                        denominator: num(n)?,
                    })
                })
                .collect::<Result<_>>()?,
        },
        "lu" => {
            let (rank, unit) = rest
                .split_once(':')
                .ok_or_else(|| anyhow!("expected lu:K:[u1,...] in `{s}`"))?;
            let unit: Vec<i64> =
                serde_json::from_str(unit).with_context(|| format!("bad unit in `{s}`"))?;
            Spec::LuGroup {
                rank: num(rank)?,
                unit,
            }
        }
        _ => bail!("unknown shorthand `{head}`"),
    })
}

pub fn parse_rational(s: &str) -> Result<Rat01> {
    s.trim()
        .parse::<Rat01>()
        .map_err(|e| anyhow!("bad rational `{s}`: {e}"))
}

fn element(carrier: &[String], e: &ElementSpec) -> Result<FnElement> {
    if let Some(extra) = e.keys().find(|k| !carrier.contains(k)) {
        bail!("value for `{extra}`, which is not a carrier point");
    }
    let values = carrier
        .iter()
        .map(|p| {
            let v = e.get(p).ok_or_else(|| anyhow!("no value at point `{p}`"))?;
            parse_rational(v)
        })
        .collect::<Result<_>>()?;
    Ok(FnElement(values))
}

pub fn element_json(carrier: &[String], e: &FnElement) -> ElementSpec {
    carrier
        .iter()
        .zip(&e.0)
        .map(|(p, v)| (p.clone(), v.to_string()))
        .collect()
}

impl Spec {
    pub fn is_group(&self) -> bool {
        matches!(self, Spec::LuGroup { .. })
    }

    pub fn to_group(&self) -> Result<LuGroup> {
        match self {
            Spec::LuGroup { rank, unit } => {
                if *rank != unit.len() {
                    bail!("rank {rank} but unit has {} coordinates", unit.len());
                }
                Ok(LuGroup::new(unit.iter().map(|&u| i128::from(u)).collect())?)
            }
            _ => bail!("expected an lu_group spec"),
        }
    }

    /// The algebra as a function algebra; tables go through their semisimple
    /// representation and groups through `Γ`.
    pub fn to_fn_algebra(&self, budget: usize) -> Result<FnAlgebra> {
        Ok(match self {
            Spec::Chain { denominator } => {
                if *denominator == 0 {
                    bail!("chain denominator must be positive");
                }
                FnAlgebra::chain(*denominator)
            }
            Spec::Boolean { atoms } => {
                if *atoms == 0 {
                    bail!("a Boolean algebra needs at least one atom");
                }
                FnAlgebra::boolean(*atoms)
            }
            Spec::Product { factors } => {
                let fs = factors
                    .iter()
                    .map(|f| f.to_fn_algebra(budget))
                    .collect::<Result<Vec<_>>>()?;
                FnAlgebra::product(&fs)?
            }
            Spec::Table { .. } => {
                semisimple_representation(&self.to_table(budget)?, budget)?.algebra
            }
            Spec::Functions { carrier, elements } => {
                let elems = elements
                    .iter()
                    .map(|e| element(carrier, e))
                    .collect::<Result<Vec<_>>>()?;
                FnAlgebra::from_elements(carrier.clone(), elems)?
            }
            Spec::Intensional {
                carrier,
                predicate,
                generators,
            } => {
                let vs = match predicate {
                    Predicate::Dyadic => ValueSet::DYADIC,
                    Predicate::Rational => ValueSet::Rational,
                };
                let gens = generators
                    .iter()
                    .map(|e| element(carrier, e))
                    .collect::<Result<Vec<_>>>()?;
                FnAlgebra::intensional(
                    carrier.clone(),
                    Membership::pointwise(carrier.len(), vs),
                    gens,
                )?
            }
            Spec::LuGroup { .. } => gamma(&self.to_group()?, budget)?.algebra,
        })
    }

    pub fn to_table(&self, budget: usize) -> Result<TableAlgebra> {
        match self {
            Spec::Table { oplus, neg, zero } => {
                Ok(TableAlgebra::new(oplus.clone(), neg.clone(), *zero)?)
            }
            _ => Ok(self.to_fn_algebra(budget)?.table()?.clone()),
        }
    }
}

/// `"dyadic" | "rational" | {"denominators_dividing": N}`; the last stands for
/// the scalars whose denominators divide a power of `N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarSpec {
    Named(String),
    Dividing { denominators_dividing: i64 },
}

impl ScalarSpec {
    pub fn to_scalar_set(&self) -> Result<ScalarSet> {
        match self {
            ScalarSpec::Named(s) => match s.as_str() {
                "dyadic" => Ok(ScalarSet::DYADIC),
                "rational" => Ok(ScalarSet::Rational),
                other => bail!("unknown scalar set `{other}`"),
            },
            ScalarSpec::Dividing {
                denominators_dividing: n,
            } if *n >= 2 => Ok(ScalarSet::Adic(i128::from(*n))),
            ScalarSpec::Dividing {
                denominators_dividing: n,
            } => bail!("denominators_dividing must be at least 2, got {n}"),
        }
    }
}

/// Accepts the JSON descriptor or the short forms `dyadic`, `rational`, `adic:N`.
pub fn parse_scalars(arg: &str) -> Result<ScalarSet> {
    let t = arg.trim();
    if t.starts_with('{') || t.starts_with('"') {
        return serde_json::from_str::<ScalarSpec>(t)?.to_scalar_set();
    }
    t.parse::<ScalarSet>().map_err(|e| anyhow!("{e}"))
}

pub fn scalar_json(s: ScalarSet) -> serde_json::Value {
    match s {
        ScalarSet::Rational => "rational".into(),
        ScalarSet::Adic(2) => "dyadic".into(),
        ScalarSet::Adic(n) => serde_json::json!({ "denominators_dividing": n }),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PwlJson {
    pub breakpoints: Vec<String>,
    pub values: Vec<String>,
}

impl From<&PwlFn> for PwlJson {
    fn from(f: &PwlFn) -> Self {
        PwlJson {
            breakpoints: f.breakpoints().iter().map(|b| b.to_string()).collect(),
            values: f.values().iter().map(|v| v.to_string()).collect(),
        }
    }
}

impl PwlJson {
    pub fn to_pwl(&self) -> Result<PwlFn> {
        let parse = |xs: &[String]| {
            xs.iter()
                .map(|x| parse_rational(x))
                .collect::<Result<Vec<_>>>()
        };
        Ok(PwlFn::new(parse(&self.breakpoints)?, parse(&self.values)?)?)
    }
}
