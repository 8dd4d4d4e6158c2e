//! Command implementations. Each returns its results as JSON and whether
//! every check it performed passed.

use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use mvt_core::enriched::{
    adjunction_lift_fmv, adjunction_lift_riesz, distinguishing_generator, enumerate_point_homs,
    fmv_check, functor_law, pmv_check, riesz_hull, sep_action, LiftReport, PointMap, ScalarSet,
};
use mvt_core::lu::{gamma, good_sequences, xi};
use mvt_core::mv::{
    generate_subalgebra, ideal_closure, iso_check, iso_check_fn, maximal_ideals, quotient, radical,
    validate_mv, FnAlgebra, FnKind, IsoResult, Membership, ValueSet,
};
use mvt_core::pwl::free_iso_witness;
use mvt_core::sampling;
use mvt_core::tensor::{finite_membership, gamma_tensor_commutes, iota, tensor_ss, Side};
use mvt_core::term::{
    eval, parse, random_term, FnContext, RatContext, TableContext, Term, TermShape,
};
use mvt_core::Rat01;
use serde_json::{json, Value};

use crate::cli::{Command, LiftMode, Options, Signature};
use crate::report::{inputs_digest, Report, Status, SCHEMA};
use crate::spec::{element_json, load, parse_rational, parse_scalars, scalar_json, PwlJson, Spec};

/// Runs a command and always produces a report.
pub fn run(command: &Command, opts: &Options) -> Report {
    let start = Instant::now();
    let inputs = inputs_of(command);
    let outcome = dispatch(command, opts);
    let (status, results, error) = match outcome {
        Ok((results, true)) => (Status::Pass, results, None),
        Ok((results, false)) => (Status::Fail, results, None),
        Err(e) => {
            let status = classify(&e);
            (status, Value::Null, Some(format!("{e:#}")))
        }
    };
    Report {
        schema: SCHEMA,
        command: command.name().to_string(),
        version: env!("CARGO_PKG_VERSION"),
        inputs_digest: inputs_digest(command.name(), &inputs),
        seed: opts.seed,
        budget: opts.budget,
        samples: opts.samples,
        status,
        results,
        error,
        elapsed_ms: opts.timing.then(|| start.elapsed().as_millis() as u64),
    }
}

/// Theorem-level failures exit 1; malformed input and exhausted budgets exit 2.
fn classify(e: &anyhow::Error) -> Status {
    use mvt_core::Error::*;
    match e.downcast_ref::<mvt_core::Error>() {
        Some(
            FactorizationInconsistent(_)
            | IsoNotFound(_)
            | EmbeddingFailed(_)
            | SepClosureFailed(_)
            | LiftInconsistent(_)
            | NotAHomomorphism(_)
            | DecompositionNotFound(_),
        ) => Status::Fail,
        _ => Status::Error,
    }
}

fn source_of(arg: &str) -> String {
    let p = Path::new(arg.trim());
    if !arg.trim_start().starts_with('{') && p.is_file() {
        std::fs::read_to_string(p).unwrap_or_else(|_| arg.to_string())
    } else {
        arg.to_string()
    }
}

fn inputs_of(command: &Command) -> Vec<(String, String)> {
    let spec = |name: &str, v: &str| (name.to_string(), source_of(v));
    let plain = |name: &str, v: String| (name.to_string(), v);
    match command {
        Command::Gamma { group } => vec![spec("group", group)],
        Command::Xi { algebra } | Command::Radical { algebra } => vec![spec("algebra", algebra)],
        Command::Tensor { left, right } | Command::Iso { left, right } => {
            vec![spec("left", left), spec("right", right)]
        }
        Command::Quotient { algebra, ideal } => {
            vec![
                spec("algebra", algebra),
                plain("ideal", format!("{ideal:?}")),
            ]
        }
        Command::CheckCommutes { g, h } => vec![spec("g", g), spec("h", h)],
        Command::CheckSep { a, b } => vec![spec("a", a), spec("b", b)],
        Command::CheckAdjunction {
            source,
            target,
            mode,
            scalars,
        } => vec![
            spec("source", source),
            plain(
                "target",
                target.as_deref().map(source_of).unwrap_or_default(),
            ),
            plain("mode", format!("{mode:?}")),
            plain("scalars", scalars.clone()),
        ],
        Command::CheckFree {
            terms,
            generate,
            depth,
        } => vec![
            plain("terms", terms.join("\n")),
            plain("generate", format!("{generate:?}")),
            plain("depth", depth.to_string()),
        ],
        Command::Eval {
            term,
            env,
            algebra,
            signature,
        } => vec![
            plain("term", term.clone()),
            plain("env", env.join(",")),
            plain(
                "algebra",
                algebra.as_deref().map(source_of).unwrap_or_default(),
            ),
            plain("signature", format!("{signature:?}")),
        ],
        Command::Closure { generators } => vec![spec("generators", generators)],
    }
}

type Outcome = Result<(Value, bool)>;

fn dispatch(command: &Command, opts: &Options) -> Outcome {
    match command {
        Command::Gamma { group } => cmd_gamma(group, opts),
        Command::Xi { algebra } => cmd_xi(algebra, opts),
        Command::Tensor { left, right } => cmd_tensor(left, right, opts),
        Command::Radical { algebra } => cmd_radical(algebra, opts),
        Command::Quotient { algebra, ideal } => cmd_quotient(algebra, ideal.as_deref(), opts),
        Command::Iso { left, right } => cmd_iso(left, right, opts),
        Command::CheckCommutes { g, h } => cmd_commutes(g, h, opts),
        Command::CheckSep { a, b } => cmd_sep(a, b, opts),
        Command::CheckAdjunction {
            source,
            target,
            mode,
            scalars,
        } => cmd_adjunction(source, target.as_deref(), *mode, scalars, opts),
        Command::CheckFree {
            terms,
            generate,
            depth,
        } => cmd_free(terms, *generate, *depth, opts),
        Command::Eval {
            term,
            env,
            algebra,
            signature,
        } => cmd_eval(term, env, algebra.as_deref(), *signature, opts),
        Command::Closure { generators } => cmd_closure(generators, opts),
    }
}

fn cmd_gamma(group: &str, opts: &Options) -> Outcome {
    let g = load(group)?.spec.to_group()?;
    let ga = gamma(&g, opts.budget)?;
    let expected: i128 = g.unit_coords().iter().map(|u| u + 1).product();
    let violations = validate_mv(ga.table()).len();
    let size = ga.table().size();
    Ok((
        json!({
            "unit": g.unit_coords(),
            "size": size,
            "expected_size": expected,
            "mv_violations": violations,
        }),
        violations == 0 && size as i128 == expected,
    ))
}

/// Loads a finite algebra as a table and rejects tables that break an MV axiom.
fn valid_table(algebra: &str, opts: &Options) -> Result<mvt_core::mv::TableAlgebra> {
    let a = load(algebra)?.spec.to_table(opts.budget)?;
    let violations = validate_mv(&a);
    if !violations.is_empty() {
        bail!(mvt_core::Error::InvalidTable(format!(
            "{} MV axiom violations, first {:?}",
            violations.len(),
            violations[0]
        )));
    }
    Ok(a)
}

fn cmd_xi(algebra: &str, opts: &Options) -> Outcome {
    let a = valid_table(algebra, opts)?;
    let x = xi(&a, opts.budget)?;
    let seqs = good_sequences(&a, 2);
    let mut round_trips = 0;
    for s in &seqs {
        if x.sequence_of(&a, &x.value(s))? == *s {
            round_trips += 1;
        }
    }
    Ok((
        json!({
            "rank": x.group.rank(),
            "unit": x.group.unit_coords(),
            "gamma_size": x.gamma.table().size(),
            "algebra_size": a.size(),
            "isomorphic": true,
            "iso": x.iso.map,
            "good_sequences_checked": seqs.len(),
            "round_trips": round_trips,
        }),
        round_trips == seqs.len(),
    ))
}

fn value_set_name(v: &ValueSet) -> String {
    match *v {
        ValueSet::Rational => "rational".into(),
        ValueSet::Adic { base: 2, scale: 1 } => "dyadic".into(),
        ValueSet::Adic { base, scale: 1 } => format!("m/{base}^k"),
        ValueSet::Adic { base, scale } => format!("m/({scale}*{base}^k)"),
        ValueSet::Finite { den } => format!("m/{den}"),
    }
}

fn membership_json(carrier: &[String], m: &Membership) -> Value {
    let classes: Vec<Vec<&str>> = m
        .classes
        .iter()
        .map(|c| c.iter().map(|&p| carrier[p].as_str()).collect())
        .collect();
    let values: Vec<String> = m.values.iter().map(value_set_name).collect();
    json!({ "classes": classes, "values": values })
}

/// A product of chains isomorphic to a finite function algebra, named by a
/// shorthand, and whether the isomorphism search confirms it.
fn chain_form(a: &FnAlgebra, budget: usize) -> Result<(String, bool)> {
    let m = finite_membership(a)?;
    let mut dens: Vec<usize> = m
        .values
        .iter()
        .map(|v| match v {
            ValueSet::Finite { den } => *den as usize,
            _ => unreachable!("finite membership"),
        })
        .collect();
    dens.sort_unstable();
    let name = if dens.len() == 1 {
        format!("chain:{}", dens[0])
    } else {
        format!(
            "prod:{}",
            dens.iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    };
    let model = FnAlgebra::product(
        &dens
            .iter()
            .map(|&d| FnAlgebra::chain(d))
            .collect::<Vec<_>>(),
    )?;
    Ok((name, iso_check_fn(a, &model, budget)?.is_isomorphic()))
}

fn cmd_tensor(left: &str, right: &str, opts: &Options) -> Outcome {
    let a = load(left)?.spec.to_fn_algebra(opts.budget)?;
    let b = load(right)?.spec.to_fn_algebra(opts.budget)?;
    let t = tensor_ss(&a, &b, opts.budget)?;
    match t.algebra.kind() {
        FnKind::Extensional(_) => {
            let (iso_to, confirmed) = chain_form(&t.algebra, opts.budget)?;
            let embeds = [Side::A, Side::B]
                .iter()
                .map(|&s| iota(&t, s).map(|h| h.is_injective()))
                .collect::<mvt_core::Result<Vec<_>>>()?;
            Ok((
                json!({
                    "extensional": true,
                    "size": t.algebra.size()?,
                    "points": t.algebra.points(),
                    "iso_to": iso_to,
                    "iso_confirmed": confirmed,
                    "embeddings_injective": embeds,
                }),
                confirmed && embeds.iter().all(|&e| e),
            ))
        }
        FnKind::Intensional(i) => Ok((
            json!({
                "extensional": false,
                "points": t.algebra.points(),
                "membership": membership_json(t.algebra.carrier(), &i.membership),
            }),
            true,
        )),
    }
}

fn cmd_radical(algebra: &str, opts: &Options) -> Outcome {
    let a = valid_table(algebra, opts)?;
    let rad = radical(&a, opts.budget)?;
    let max = maximal_ideals(&a, opts.budget)?;
    Ok((
        json!({
            "size": a.size(),
            "radical": rad.members,
            "semisimple": rad.is_zero(&a),
            "maximal_ideals": max.iter().map(|i| i.members.clone()).collect::<Vec<_>>(),
        }),
        true,
    ))
}

fn cmd_quotient(algebra: &str, ideal: Option<&[usize]>, opts: &Options) -> Outcome {
    let a = valid_table(algebra, opts)?;
    let i = match ideal {
        Some(seeds) => {
            if let Some(&bad) = seeds.iter().find(|&&x| x >= a.size()) {
                bail!(mvt_core::Error::InvalidIdeal(format!(
                    "element {bad} out of range"
                )));
            }
            ideal_closure(&a, seeds)
        }
        None => radical(&a, opts.budget)?,
    };
    let q = quotient(&a, &i)?;
    let valid = validate_mv(&q.table).is_empty();
    let semisimple = radical(&q.table, opts.budget)?.is_zero(&q.table);
    Ok((
        json!({
            "ideal": i.members,
            "size": q.table.size(),
            "surjection": q.surjection.map,
            "mv_valid": valid,
            "quotient_radical_trivial": semisimple,
        }),
        valid && (ideal.is_some() || semisimple),
    ))
}

fn cmd_iso(left: &str, right: &str, opts: &Options) -> Outcome {
    let (l, r) = (load(left)?.spec, load(right)?.spec);
    let result = match (l.to_fn_algebra(opts.budget), r.to_fn_algebra(opts.budget)) {
        (Ok(a), Ok(b)) if a.is_extensional() && b.is_extensional() => {
            iso_check_fn(&a, &b, opts.budget)?
        }
        _ => iso_check(
            &l.to_table(opts.budget)?,
            &r.to_table(opts.budget)?,
            opts.budget,
        )?,
    };
    Ok((
        match &result {
            IsoResult::Isomorphic { forward, .. } => {
                json!({ "isomorphic": true, "witness": forward.map })
            }
            IsoResult::NotIsomorphic(c) => {
                json!({ "isomorphic": false, "certificate": format!("{c:?}") })
            }
        },
        true,
    ))
}

fn cmd_commutes(g: &str, h: &str, opts: &Options) -> Outcome {
    let (g, h) = (load(g)?.spec.to_group()?, load(h)?.spec.to_group()?);
    let r = gamma_tensor_commutes(&g, &h, opts.budget)?;
    Ok((
        json!({
            "lhs_size": r.lhs_size,
            "rhs_size": r.rhs_size,
            "isomorphic": r.isomorphic,
            "witness": r.witness,
        }),
        r.isomorphic,
    ))
}

fn cmd_sep(a: &str, b: &str, opts: &Options) -> Outcome {
    let a = load(a)?.spec.to_fn_algebra(opts.budget)?;
    let b = load(b)?.spec.to_fn_algebra(opts.budget)?;
    let t = tensor_ss(&a, &b, opts.budget)?;
    let r = sep_action(&t, opts.samples, opts.seed, opts.budget)?;
    Ok((
        json!({
            "exhaustive": r.exhaustive,
            "scalars": r.scalars,
            "elements": r.elements,
            "checks": r.checks,
            "tensor_points": t.algebra.points(),
        }),
        true,
    ))
}

fn lift_json(f: &PointMap, r: &LiftReport) -> Value {
    json!({
        "sigma": f.sigma,
        "triangle": r.triangle,
        "terms": r.terms,
        "distinct_values": r.distinct_values,
    })
}

/// Composable pairs checked for the functor law, at most.
const FUNCTOR_PAIRS: usize = 16;

fn cmd_adjunction(
    source: &str,
    target: Option<&str>,
    mode: LiftMode,
    scalars: &str,
    opts: &Options,
) -> Outcome {
    let scalars = parse_scalars(scalars)?;
    let b = load(source)?.spec.to_fn_algebra(opts.budget)?;
    let v = match target {
        Some(t) => load(t)?.spec.to_fn_algebra(opts.budget)?,
        None => scalar_extension(&b, scalars, opts)?,
    };
    let products = mode == LiftMode::Fmv;
    if products {
        pmv_check(&b, opts.samples, opts.seed)?;
        let f = fmv_check(&v, scalars, None, opts.samples, opts.seed);
        if !f.ok {
            bail!(mvt_core::Error::NotProductClosed(
                "target is not an f-MV algebra".into(),
                f.witness.unwrap_or_default()
            ));
        }
    } else if !b.is_extensional() {
        bail!("Riesz lifts need a finite source");
    }
    let homs = enumerate_point_homs(&b, &v, opts.budget)?;
    let per_hom = (opts.samples / homs.len().max(1)).max(20);
    let mut lifts = Vec::new();
    for f in &homs {
        let r = match mode {
            LiftMode::Riesz => adjunction_lift_riesz(&b, &v, f, scalars, per_hom, opts.seed)?,
            LiftMode::Fmv => adjunction_lift_fmv(&b, &v, f, scalars, per_hom, opts.seed)?,
        };
        lifts.push(lift_json(f, &r));
    }
    let mut distinguished = 0;
    let mut undistinguished = Vec::new();
    if b.is_extensional() {
        for (i, f) in homs.iter().enumerate() {
            for g in &homs[i + 1..] {
                match distinguishing_generator(&b, &v, f, g, scalars)? {
                    Some(_) => distinguished += 1,
                    None => undistinguished.push((f.sigma.clone(), g.sigma.clone())),
                }
            }
        }
    }
    let endos = enumerate_point_homs(&b, &b, opts.budget)?;
    let mut functor_checks = 0;
    'pairs: for h in &endos {
        for g in &homs {
            if functor_checks >= FUNCTOR_PAIRS {
                break 'pairs;
            }
            functor_law([&b, &b, &v], h, g, scalars, products, 20, opts.seed)?;
            functor_checks += 1;
        }
    }
    Ok((
        json!({
            "mode": format!("{mode:?}").to_lowercase(),
            "scalars": scalar_json(scalars),
            "homs": homs.len(),
            "lifts": lifts,
            "distinguished_pairs": distinguished,
            "undistinguished_pairs": undistinguished,
            "functor_law_pairs": functor_checks,
        }),
        undistinguished.is_empty(),
    ))
}

fn scalar_extension(b: &FnAlgebra, scalars: ScalarSet, opts: &Options) -> Result<FnAlgebra> {
    if b.is_extensional() {
        return Ok(riesz_hull(b, scalars, opts.samples.min(100), opts.seed, opts.budget)?.algebra);
    }
    let s = FnAlgebra::intensional(
        vec!["s".into()],
        Membership::pointwise(1, scalars.value_set()),
        Vec::new(),
    )?;
    Ok(tensor_ss(&s, b, opts.budget)?.algebra)
}

fn cmd_free(terms: &[String], generate: Option<usize>, depth: usize, opts: &Options) -> Outcome {
    let mut list: Vec<Term> = terms
        .iter()
        .map(|t| parse(t).with_context(|| format!("parsing `{t}`")))
        .collect::<Result<_>>()?;
    if let Some(n) = generate {
        let mut rng = sampling::rng(opts.seed);
        let r = |a, b| Rat01::new(a, b).expect("in range");
        let shape = TermShape {
            vars: vec!["x".into()],
            constants: true,
            lattice: true,
            scalars: Some(vec![r(1, 2), r(1, 3), r(2, 3), r(3, 4), r(1, 5)]),
            ..TermShape::default()
        };
        list.extend((0..n).map(|_| random_term(&mut rng, depth, &shape)));
    }
    if list.is_empty() {
        bail!("no terms given; use --term or --generate");
    }
    let ws = free_iso_witness(&list)?;
    let passed = ws.iter().filter(|w| w.passed()).count();
    let witnesses: Vec<Value> = ws
        .iter()
        .map(|w| {
            json!({
                "term": w.term,
                "function": PwlJson::from(&w.function),
                "decomposition": w.decomposition,
                "equal": w.equal,
                "generators": w.generators.iter().map(|(q, m, flag)| json!({
                    "scalar": q.to_string(),
                    "term": m,
                    "mcnaughton": flag,
                })).collect::<Vec<_>>(),
                "scalar_free_mcnaughton": w.scalar_free_flag,
            })
        })
        .collect();
    Ok((
        json!({ "terms": ws.len(), "passed": passed, "witnesses": witnesses }),
        passed == ws.len(),
    ))
}

fn env_pairs(env: &[String]) -> Result<Vec<(String, String)>> {
    env.iter()
        .map(|kv| {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| anyhow!("environment entry `{kv}` is not name=value"))?;
            Ok((k.trim().to_string(), v.trim().to_string()))
        })
        .collect()
}

fn cmd_eval(
    term: &str,
    env: &[String],
    algebra: Option<&str>,
    sig: Signature,
    opts: &Options,
) -> Outcome {
    let t = parse(term)?;
    let pairs = env_pairs(env)?;
    let (products, scalars) = match sig {
        Signature::Mv => (false, false),
        Signature::Pmv => (true, false),
        Signature::Riesz => (false, true),
        Signature::Fmv => (true, true),
    };
    let value = match algebra {
        None => {
            let env: BTreeMap<String, Rat01> = pairs
                .iter()
                .map(|(k, v)| Ok((k.clone(), parse_rational(v)?)))
                .collect::<Result<_>>()?;
            eval(&t, &env, &RatContext { products, scalars })?
                .to_string()
                .into()
        }
        Some(spec) => {
            let spec = load(spec)?.spec;
            match spec.to_fn_algebra(opts.budget) {
                Ok(a) if a.is_extensional() && !matches!(spec, Spec::Table { .. }) => {
                    let elems = a.elements()?;
                    let env = pairs
                        .iter()
                        .map(|(k, v)| {
                            let i: usize = v
                                .parse()
                                .with_context(|| format!("`{v}` is not an element index"))?;
                            let e = elems
                                .get(i)
                                .ok_or_else(|| anyhow!("element index {i} out of range"))?;
                            Ok((k.clone(), e.clone()))
                        })
                        .collect::<Result<BTreeMap<_, _>>>()?;
                    let ctx = FnContext {
                        points: a.points(),
                        products,
                        scalars,
                    };
                    let out = eval(&t, &env, &ctx)?;
                    json!({
                        "index": a.index_of(&out),
                        "element": element_json(a.carrier(), &out),
                    })
                }
                _ => {
                    let a = spec.to_table(opts.budget)?;
                    let env = pairs
                        .iter()
                        .map(|(k, v)| {
                            let i: usize = v
                                .parse()
                                .with_context(|| format!("`{v}` is not an element index"))?;
                            if i >= a.size() {
                                bail!("element index {i} out of range");
                            }
                            Ok((k.clone(), i))
                        })
                        .collect::<Result<BTreeMap<_, _>>>()?;
                    json!({ "index": eval(&t, &env, &TableContext(&a))? })
                }
            }
        }
    };
    Ok((json!({ "term": t.to_string(), "value": value }), true))
}

fn cmd_closure(generators: &str, opts: &Options) -> Outcome {
    let spec = load(generators)?.spec;
    let Spec::Functions { carrier, .. } = &spec else {
        bail!("closure needs a `functions` spec");
    };
    let gens = match &spec {
        Spec::Functions { elements, .. } => elements
            .iter()
            .map(|e| {
                let one = Spec::Functions {
                    carrier: carrier.clone(),
                    elements: vec![e.clone()],
                };
                element_of(&one)
            })
            .collect::<Result<Vec<_>>>()?,
        _ => unreachable!(),
    };
    let a = generate_subalgebra(carrier.clone(), gens.clone(), opts.budget)?;
    let elems = a.elements()?;
    Ok((
        json!({
            "generators": gens.len(),
            "size": elems.len(),
            "mv_valid": validate_mv(a.table()?).is_empty(),
            "elements": elems.iter().map(|e| element_json(carrier, e)).collect::<Vec<_>>(),
        }),
        true,
    ))
}

/// The single element of a one-element `functions` spec, without requiring
/// closure.
fn element_of(spec: &Spec) -> Result<mvt_core::mv::FnElement> {
    let Spec::Functions { carrier, elements } = spec else {
        unreachable!()
    };
    let e = &elements[0];
    let values = carrier
        .iter()
        .map(|p| parse_rational(e.get(p).ok_or_else(|| anyhow!("no value at point `{p}`"))?))
        .collect::<Result<_>>()?;
    Ok(mvt_core::mv::FnElement(values))
}
