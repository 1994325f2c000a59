//! Command dispatch behind the `semigalois` binary.

use std::thread;

use num_bigint::BigUint;
use serde_json::{json, Value};

use crate::action::{LinearAction, UnitalAction};
use crate::corpus;
use crate::correspondence::{
    verify_e_unitary_correspondence, verify_general_correspondence, CorrespondenceOptions, CorrespondenceReport,
};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::galois::{default_tensor_guard, evaluate_criteria};
use crate::instance::{parse_instance, render_instance, Instance};
use crate::report::{Check, Report};
use crate::semigroup::InverseSemigroup;
use crate::zero_case::{
    brandt_action, brandt_groupoid, conversion_round_trips, groupoid_to_primitive, is_0_e_unitary,
    is_categorical_at_zero, is_primitive, meet_formulas_check, p_prime_construction, primitive_to_groupoid,
    strongly_compatible, tau_partition, verify_zero_correspondence, zero_last, ZeroPartialAction,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Validate,
    Analyze,
    Galois,
    Correspond,
    Zero,
    Selftest,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Analyze => "analyze",
            Command::Galois => "galois",
            Command::Correspond => "correspond",
            Command::Zero => "zero",
            Command::Selftest => "selftest",
        }
    }
}

/// Effective settings after flags, environment and instance options.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub guard_max_order: BigUint,
    pub brute_force_subalgebras: bool,
    pub seed: u64,
    pub selftest_count: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            guard_max_order: default_tensor_guard(),
            brute_force_subalgebras: false,
            seed: 1,
            selftest_count: 60,
        }
    }
}

impl RunConfig {
    /// Fill unset flags from the instance file.
    pub fn merge(
        guard: Option<BigUint>,
        brute: Option<bool>,
        seed: Option<u64>,
        count: Option<usize>,
        inst: Option<&Instance>,
    ) -> Self {
        let d = RunConfig::default();
        let opts = inst.map(|i| i.options.clone()).unwrap_or_default();
        RunConfig {
            guard_max_order: guard.or(opts.guard_max_order).unwrap_or(d.guard_max_order),
            brute_force_subalgebras: brute
                .or(opts.brute_force_subalgebras)
                .unwrap_or(d.brute_force_subalgebras),
            seed: seed.unwrap_or(d.seed),
            selftest_count: count.unwrap_or(d.selftest_count),
        }
    }

    fn limit(&self) -> BigUint {
        self.guard_max_order.clone()
    }

    fn correspondence(&self) -> CorrespondenceOptions {
        CorrespondenceOptions {
            tensor_limit: self.limit(),
            brute_force: self.brute_force_subalgebras,
            ..Default::default()
        }
    }
}

/// Run a command. Every command except `selftest` needs an instance.
pub fn run(cmd: Command, inst: Option<&Instance>, cfg: &RunConfig) -> Result<Report> {
    let mut report = Report::new(cmd.name());
    report.instance = inst.map(|i| i.digest.clone());
    let need = || {
        inst.map(|i| &i.action)
            .ok_or_else(|| Error::PreconditionFail("an instance file is required".into()))
    };
    match cmd {
        Command::Validate => validate(need()?, &mut report),
        Command::Analyze => analyze(need()?, &mut report)?,
        Command::Galois => galois(need()?, cfg, &mut report)?,
        Command::Correspond => correspond(need()?, cfg, &mut report)?,
        Command::Zero => zero(need()?, cfg, &mut report)?,
        Command::Selftest => {
            report.seed = Some(cfg.seed);
            selftest(cfg, &mut report)?
        }
    }
    Ok(report)
}

fn names(s: &InverseSemigroup, xs: &[usize]) -> Vec<String> {
    xs.iter().map(|&x| s.name(x).to_string()).collect()
}

fn validate(act: &UnitalAction, r: &mut Report) {
    let s = act.semigroup();
    let atoms: Vec<String> = act.ring().atoms().iter().map(|a| a.to_string()).collect();
    r.push(Check::verdict(
        "validation",
        true,
        format!("{} elements acting on a ring of order {}", s.len(), act.ring().order()),
        json!({
            "elements": s.names(),
            "zero": s.zero().map(|z| s.name(z).to_string()),
            "atoms": atoms,
            "ring_order": act.ring().order().to_string(),
        }),
    ));
}

fn analyze(act: &UnitalAction, r: &mut Report) -> Result<()> {
    let s = act.semigroup();
    let n = s.len();
    r.push(Check::info(
        "idempotents",
        format!("{} idempotents", s.idempotents().len()),
        json!(names(s, &s.idempotents())),
    ));
    let below: Vec<(String, String)> = (0..n)
        .flat_map(|a| {
            (0..n)
                .filter(move |&b| a != b && s.natural_leq(a, b))
                .map(move |b| (a, b))
        })
        .map(|(a, b)| (s.name(a).to_string(), s.name(b).to_string()))
        .collect();
    r.push(Check::info(
        "order",
        format!("{} strict relations s < t", below.len()),
        json!(below),
    ));
    match s.zero() {
        None => {
            let e_unitary = s.is_e_unitary()?;
            let q = s.sigma_partition()?;
            let classes: Vec<Vec<String>> = q.classes.iter().map(|c| names(s, c)).collect();
            let singletons = classes.iter().all(|c| c.len() == 1);
            r.push(Check::info(
                "sigma",
                format!(
                    "E-unitary: {e_unitary}, sigma-classes: {}",
                    if singletons {
                        "singletons".to_string()
                    } else {
                        format!("{}", q.order())
                    }
                ),
                json!({ "e_unitary": e_unitary, "classes": classes }),
            ));
        }
        Some(_) => {
            let t = tau_partition(s)?;
            let classes: Vec<Vec<String>> = t.classes.iter().map(|c| names(s, c)).collect();
            r.push(Check::info(
                "tau",
                format!(
                    "0-E-unitary: {}, categorical at zero: {}, primitive: {}, {} tau-classes",
                    t.zero_e_unitary,
                    t.categorical,
                    is_primitive(s)?,
                    classes.len()
                ),
                json!({
                    "zero_e_unitary": t.zero_e_unitary,
                    "categorical_at_zero": t.categorical,
                    "primitive": is_primitive(s)?,
                    "classes": classes,
                }),
            ));
        }
    }
    let lin = act.linear();
    let inv = lin.invariant_ring();
    r.push(Check::info(
        "flags",
        format!(
            "injective: {}, all ideals nonzero: {}",
            act.is_injective(),
            act.all_ideals_nonzero()
        ),
        json!({
            "injective": act.is_injective(),
            "all_ideals_nonzero": act.all_ideals_nonzero(),
            "has_zero": s.zero().is_some(),
        }),
    ));
    r.push(Check::info(
        "invariants",
        format!("|A^beta| = {}", inv.order(&lin.alg)),
        json!({ "order": inv.order(&lin.alg).to_string(), "generators": inv.generators(&lin.alg) }),
    ));
    Ok(())
}

/// The linear action, with the partial group action attached when it exists.
fn linearise(act: &UnitalAction) -> Result<LinearAction> {
    match act.linear_with_group() {
        Ok(l) => Ok(l),
        Err(Error::NotEUnitary | Error::NotInjective { .. } | Error::PreconditionFail(_)) => Ok(act.linear()),
        Err(e) => Err(e),
    }
}

fn galois(act: &UnitalAction, cfg: &RunConfig, r: &mut Report) -> Result<()> {
    let lin = linearise(act)?;
    let cert = evaluate_criteria(&lin, &cfg.limit())?;
    let v = cert.verdicts();
    r.push(Check::verdict(
        "coordinates",
        v.coordinates,
        if v.coordinates {
            "Galois coordinate system found"
        } else {
            "no Galois coordinate system"
        },
        json!(cert.coordinates),
    ));
    r.push(Check::verdict(
        "psi",
        v.psi,
        format!(
            "tensor order {}, image order {}, PA order {}",
            cert.psi.tensor_order, cert.psi.image_order, cert.psi.pa_order
        ),
        json!(cert.psi),
    ));
    r.push(Check::verdict(
        "separable-strong",
        v.separable_strong,
        format!(
            "separable: {}, beta-strong: {}",
            cert.separability.idempotent.is_some(),
            cert.strong.holds
        ),
        json!({ "separability": cert.separability, "strong": cert.strong }),
    ));
    if let Some(t) = v.trace {
        r.push(Check::verdict(
            "trace",
            t,
            format!("sigma-trace onto the invariants: {t}"),
            json!(cert.trace_image_generators),
        ));
    }
    if let Some(a) = v.alpha {
        r.push(Check::verdict(
            "alpha",
            a,
            format!("partial group action coordinates: {a}"),
            json!(cert.alpha_coordinates),
        ));
    }
    let dis = v.disagreements();
    r.push(Check::verdict(
        "unanimous",
        dis.is_empty(),
        if dis.is_empty() {
            "all criteria agree".to_string()
        } else {
            format!("disagreeing with the coordinates: {}", dis.join(", "))
        },
        json!({ "invariant_order": cert.invariant_order }),
    ));
    Ok(())
}

fn push_correspondence(r: &mut Report, rep: &CorrespondenceReport) {
    let table: Vec<Value> = rep
        .entries
        .iter()
        .map(|e| json!({ "T": e.names, "B_order": e.fixed_order }))
        .collect();
    r.push(Check::verdict(
        "correspondence",
        rep.verdict,
        format!("{} kind, {} objects", rep.kind, rep.entries.len()),
        json!({ "bijection": table, "report": rep }),
    ));
}

fn correspond(act: &UnitalAction, cfg: &RunConfig, r: &mut Report) -> Result<()> {
    let s = act.semigroup();
    let opts = cfg.correspondence();
    let rep = if s.zero().is_some() {
        verify_zero_correspondence(act, &opts)?
    } else if s.is_e_unitary()? && act.is_injective() {
        verify_e_unitary_correspondence(act, &opts)?
    } else {
        verify_general_correspondence(act, &opts)?
    };
    push_correspondence(r, &rep);
    Ok(())
}

fn zero(act: &UnitalAction, cfg: &RunConfig, r: &mut Report) -> Result<()> {
    let s = act.semigroup();
    let z = s.zero().ok_or(Error::NoZero)?;
    let t = tau_partition(s)?;
    let classes: Vec<Vec<String>> = t.classes.iter().map(|c| names(s, c)).collect();
    let summary = format!(
        "{} classes, 0-E-unitary: {}, categorical: {}",
        classes.len(),
        t.zero_e_unitary,
        t.categorical
    );
    let data = json!({ "classes": classes, "quotient_primitive": t.quotient.is_some() });
    r.push(if t.approx_checked {
        Check::verdict("tau", true, format!("{summary}; equals strong compatibility"), data)
    } else {
        Check::info("tau", summary, data)
    });
    let mut meets = 0;
    let mut meet_ok = true;
    for a in (0..s.len()).filter(|&a| a != z) {
        for b in (0..s.len()).filter(|&b| b != z) {
            if strongly_compatible(s, a, b)? {
                meets += 1;
                meet_ok &= meet_formulas_check(s, a, b)?;
            }
        }
    }
    r.push(Check::verdict(
        "meet-formulas",
        meet_ok,
        format!("{meets} strongly compatible pairs"),
        Value::Null,
    ));
    if is_primitive(s)? {
        let g = primitive_to_groupoid(s)?;
        let back = groupoid_to_primitive(&g)?;
        let ok = back == zero_last(s)? && primitive_to_groupoid(&back)? == g;
        r.push(Check::verdict(
            "groupoid",
            ok,
            format!("{} arrows, {} identities", g.len(), g.identities().len()),
            Value::Null,
        ));
        let alpha = ZeroPartialAction::from_unital(act)?;
        let ok = conversion_round_trips(&alpha)?;
        r.push(Check::verdict(
            "conversion",
            ok,
            "orthogonal groupoid action round trip",
            Value::Null,
        ));
    } else {
        r.push(Check::info("groupoid", "not primitive", Value::Null));
    }
    if t.zero_e_unitary && t.categorical && act.is_injective() {
        let pp = p_prime_construction(act)?;
        r.push(Check::verdict(
            "p-prime",
            pp.isomorphic && pp.primitive,
            format!("{} joins over tau-classes", pp.alphas.len()),
            json!(pp.alphas.iter().map(|a| a.format()).collect::<Vec<_>>()),
        ));
    }
    match verify_zero_correspondence(act, &cfg.correspondence()) {
        Ok(rep) => push_correspondence(r, &rep),
        Err(Error::PreconditionFail(m)) => r.push(Check::info("correspondence", format!("skipped: {m}"), Value::Null)),
        Err(e) => return Err(e),
    }
    Ok(())
}

#[derive(Default)]
struct CorpusTally {
    galois: usize,
    equivalence_disagreements: Vec<(usize, Vec<&'static str>)>,
    trace_only_instances: Vec<usize>,
    trace_missed_galois: Vec<usize>,
    render_failures: Vec<usize>,
}

fn tally_one(i: usize, act: &UnitalAction, limit: &BigUint, t: &mut CorpusTally) -> Result<()> {
    let lin = act.linear_with_group()?;
    let v = evaluate_criteria(&lin, limit)?.verdicts();
    if v.coordinates {
        t.galois += 1;
    }
    let dis: Vec<&'static str> = v.disagreements().into_iter().filter(|d| *d != "trace").collect();
    if !dis.is_empty() {
        t.equivalence_disagreements.push((i, dis));
    }
    match v.trace {
        Some(true) if !v.coordinates => t.trace_only_instances.push(i),
        Some(false) if v.coordinates => t.trace_missed_galois.push(i),
        _ => {}
    }
    let back = parse_instance(&render_instance(act))?;
    if back.action.isos() != act.isos() {
        t.render_failures.push(i);
    }
    Ok(())
}

fn selftest(cfg: &RunConfig, r: &mut Report) -> Result<()> {
    let limit = cfg.limit();
    let s7 = fixtures::s7();
    let lin = s7.linear_with_group()?;
    let inv = lin.invariant_ring();
    let cert = evaluate_criteria(&lin, &limit)?;
    let ok = s7.semigroup().is_e_unitary()?
        && s7.semigroup().sigma_partition()?.order() == 2
        && inv.order(&lin.alg) == BigUint::from(27u32)
        && cert.verdicts().unanimous()
        && cert.verdicts().coordinates;
    r.push(Check::verdict(
        "fixture-s7",
        ok,
        "E-unitary, C2 quotient, |A^beta| = 27, Galois",
        Value::Null,
    ));

    let instances = corpus::corpus(cfg.seed, cfg.selftest_count);
    let workers = thread::available_parallelism().map_or(1, |n| n.get()).min(8);
    let chunk = instances.len().div_ceil(workers).max(1);
    let tallies: Vec<Result<CorpusTally>> = thread::scope(|scope| {
        let handles: Vec<_> = instances
            .chunks(chunk)
            .enumerate()
            .map(|(c, part)| {
                let limit = &limit;
                scope.spawn(move || {
                    let mut t = CorpusTally::default();
                    for (j, act) in part.iter().enumerate() {
                        tally_one(c * chunk + j, act, limit, &mut t)?;
                    }
                    Ok(t)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker")).collect()
    });
    let mut t = CorpusTally::default();
    for part in tallies {
        let p = part?;
        t.galois += p.galois;
        t.equivalence_disagreements.extend(p.equivalence_disagreements);
        t.trace_only_instances.extend(p.trace_only_instances);
        t.trace_missed_galois.extend(p.trace_missed_galois);
        t.render_failures.extend(p.render_failures);
    }
    let n = instances.len();
    r.push(Check::verdict(
        "equivalences",
        t.equivalence_disagreements.is_empty(),
        format!(
            "coordinates, psi, separable+strong, alpha agree on {n} instances ({} Galois)",
            t.galois
        ),
        json!(t.equivalence_disagreements),
    ));
    r.push(Check::verdict(
        "trace-necessary",
        t.trace_missed_galois.is_empty(),
        "every Galois instance has sigma-trace onto the invariants",
        json!(t.trace_missed_galois),
    ));
    r.push(Check::info(
        "trace-not-sufficient",
        format!(
            "{} non-Galois instances with sigma-trace onto the invariants",
            t.trace_only_instances.len()
        ),
        json!(t.trace_only_instances),
    ));
    r.push(Check::verdict(
        "instance-round-trip",
        t.render_failures.is_empty(),
        format!("{n} instances rendered and parsed back"),
        json!(t.render_failures),
    ));

    let mut rng = corpus::rng(cfg.seed);
    let mut groupoid_ok = true;
    let mut tau_checked = 0;
    for _ in 0..20 {
        let parts = corpus::random_brandt_parts(&mut rng);
        let g = brandt_groupoid(&parts)?;
        let s = groupoid_to_primitive(&g)?;
        groupoid_ok &= primitive_to_groupoid(&s)? == g;
        let zs = corpus::random_zero_semigroup(&mut rng);
        if is_0_e_unitary(&zs)? && is_categorical_at_zero(&zs)? {
            // tau_partition fails on any mismatch with strong compatibility
            tau_partition(&zs)?;
            tau_checked += 1;
        }
    }
    let ga = brandt_action(&[(2, 2), (1, 1)], &[fixtures::f9(), fixtures::f3()])?;
    let conv = ga.to_zero_action()?.to_groupoid_action()? == ga;
    r.push(Check::verdict(
        "zero-case",
        groupoid_ok && conv,
        format!("20 groupoid round trips, tau = strong compatibility on {tau_checked} semigroups, action conversion"),
        Value::Null,
    ));
    Ok(())
}
