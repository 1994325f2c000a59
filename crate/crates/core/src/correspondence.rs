//! β-complete and β-maximal subsemigroups, fixed subalgebras, and the two
//! correspondences checked object by object.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::action::{LinearAction, UnitalAction};
use crate::algebra::{enumerate_subalgebras, Subalgebra};
use crate::error::{Error, Result};
use crate::galois::{compute_s_b, is_beta_strong, is_galois, is_separable};
use crate::iso_pu::join_sum;
use crate::ring::StructuredIso;
use crate::semigroup::SubSemigroup;

/// Subset scans refuse beyond this many elements.
pub const SUBSET_GUARD: usize = 16;

#[derive(Clone, Debug)]
pub struct CorrespondenceOptions {
    pub tensor_limit: BigUint,
    pub brute_force: bool,
    pub brute_force_limit: u64,
}

impl Default for CorrespondenceOptions {
    fn default() -> Self {
        CorrespondenceOptions {
            tensor_limit: crate::galois::default_tensor_guard(),
            brute_force: false,
            brute_force_limit: 1 << 12,
        }
    }
}

fn subsets(items: &[usize]) -> Result<impl Iterator<Item = Vec<usize>> + '_> {
    if items.len() > SUBSET_GUARD {
        return Err(Error::too_large("subset scan", items.len() as u64, SUBSET_GUARD as u64));
    }
    Ok((1u32..(1u32 << items.len())).map(move |mask| {
        items
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &x)| x)
            .collect()
    }))
}

/// Full, and closed under every join `u = ∨P` (`P ⊆ T` compatible) with `β_u = Σ β_P`.
pub fn is_beta_complete(act: &UnitalAction, t: &SubSemigroup) -> Result<bool> {
    let sg = act.semigroup();
    if !sg.is_inverse_subsemigroup(&t.mask(sg.len())) || !t.is_full(sg) {
        return Ok(false);
    }
    for p in subsets(t.members())? {
        if p.len() < 2 || !pairwise_compatible(act, &p) {
            continue;
        }
        if let Some(u) = sg.join_of(&p)? {
            if t.contains(u) {
                continue;
            }
            let fam: Vec<StructuredIso> = p.iter().map(|&s| act.iso(s).clone()).collect();
            if join_sum(act.ring(), &fam)? == *act.iso(u) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn pairwise_compatible(act: &UnitalAction, p: &[usize]) -> bool {
    let sg = act.semigroup();
    p.iter()
        .enumerate()
        .all(|(i, &a)| p[i + 1..].iter().all(|&b| sg.compatible(a, b)))
}

pub fn enumerate_beta_complete(act: &UnitalAction) -> Result<Vec<SubSemigroup>> {
    let mut out = Vec::new();
    for t in act.semigroup().enumerate_full_inverse_subsemigroups()? {
        if is_beta_complete(act, &t)? {
            out.push(t);
        }
    }
    Ok(out)
}

/// `A^{β|T}`.
pub fn fixed_subalgebra(act: &UnitalAction, lin: &LinearAction, t: &SubSemigroup) -> Result<Subalgebra> {
    if !t.is_full(act.semigroup()) {
        return Err(Error::NotFull);
    }
    let b = lin.invariant_of(t.members());
    debug_assert!(lin.invariant_ring().is_subset_of(&b));
    Ok(b)
}

/// Full, preimage-closed, and every compatible family of `β(T)` whose join
/// is some `β_u` has that join in `β(T)`.
pub fn is_beta_maximal(act: &UnitalAction, t: &SubSemigroup) -> Result<bool> {
    let sg = act.semigroup();
    if !sg.is_inverse_subsemigroup(&t.mask(sg.len())) || !t.is_full(sg) {
        return Ok(false);
    }
    let image_t: BTreeSet<&StructuredIso> = t.members().iter().map(|&s| act.iso(s)).collect();
    for s in 0..sg.len() {
        if !t.contains(s) && image_t.contains(act.iso(s)) {
            return Ok(false);
        }
    }
    let image_s: BTreeSet<&StructuredIso> = act.isos().iter().collect();
    let distinct: Vec<&StructuredIso> = image_t.iter().copied().collect();
    let idx: Vec<usize> = (0..distinct.len()).collect();
    for p in subsets(&idx)? {
        if p.len() < 2 {
            continue;
        }
        let fam: Vec<StructuredIso> = p.iter().map(|&i| distinct[i].clone()).collect();
        let j = match join_sum(act.ring(), &fam) {
            Ok(j) => j,
            Err(Error::NotCompatible(_)) => continue,
            Err(e) => return Err(e),
        };
        if image_s.contains(&j) && !image_t.contains(&j) {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn enumerate_beta_maximal(act: &UnitalAction) -> Result<Vec<SubSemigroup>> {
    let mut out = Vec::new();
    for t in act.semigroup().enumerate_full_inverse_subsemigroups()? {
        if is_beta_maximal(act, &t)? {
            out.push(t);
        }
    }
    Ok(out)
}

/// One object of the correspondence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorrespondenceEntry {
    pub members: Vec<usize>,
    pub names: String,
    pub fixed_order: String,
    pub fixed_generators: Vec<Vec<i64>>,
    pub s_b: Vec<usize>,
    pub separable: bool,
    pub strong: bool,
    /// `S_{A^{β|T}} = T`.
    pub t_round_trip: bool,
    /// `A^{β|S_B} = B`.
    pub b_round_trip: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BruteForceMatch {
    pub subalgebras_scanned: usize,
    pub separable_strong: usize,
    pub matched: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorrespondenceReport {
    pub kind: String,
    pub entries: Vec<CorrespondenceEntry>,
    pub distinct_subsemigroups: bool,
    pub distinct_subalgebras: bool,
    pub order_reversing: bool,
    pub brute_force: Option<BruteForceMatch>,
    pub failures: Vec<String>,
    pub verdict: bool,
}

/// Evaluate both maps on each candidate `T` (taken from `act`'s semigroup).
pub fn build_report(
    kind: &str,
    act: &UnitalAction,
    lin: &LinearAction,
    candidates: Vec<SubSemigroup>,
    opts: &CorrespondenceOptions,
) -> Result<CorrespondenceReport> {
    let alg = &lin.alg;
    let sg = act.semigroup();
    let inv = lin.invariant_ring();
    let mut entries = Vec::new();
    let mut fixed = Vec::new();
    let mut failures = Vec::new();
    for t in &candidates {
        let b = fixed_subalgebra(act, lin, t)?;
        let separable = is_separable(alg, &b, &inv, &opts.tensor_limit)?.idempotent.is_some();
        let strong = is_beta_strong(lin, &b)?.holds;
        let sb = compute_s_b(lin, &b)?;
        let back = lin.invariant_of(sb.members());
        let e = CorrespondenceEntry {
            members: t.members().to_vec(),
            names: t.format(sg),
            fixed_order: b.order(alg).to_string(),
            fixed_generators: b.generators(alg),
            s_b: sb.members().to_vec(),
            separable,
            strong,
            t_round_trip: sb == *t,
            b_round_trip: back == b,
        };
        for (ok, what) in [
            (e.separable, "not separable over the invariants"),
            (e.strong, "not beta-strong"),
            (e.t_round_trip, "S_B differs from T"),
            (e.b_round_trip, "fixed ring of S_B differs from B"),
        ] {
            if !ok {
                failures.push(format!("{}: {what}", e.names));
            }
        }
        entries.push(e);
        fixed.push(b);
    }
    let distinct_subsemigroups = candidates.iter().collect::<BTreeSet<_>>().len() == candidates.len();
    let distinct_subalgebras = fixed.iter().collect::<std::collections::HashSet<_>>().len() == fixed.len();
    let mut order_reversing = true;
    for (i, a) in candidates.iter().enumerate() {
        for (j, b) in candidates.iter().enumerate() {
            if a.is_subset_of(b) && !fixed[j].is_subset_of(&fixed[i]) {
                order_reversing = false;
                failures.push(format!(
                    "{} is inside {} but the fixed rings are not reversed",
                    a.format(sg),
                    b.format(sg)
                ));
            }
        }
    }
    if !distinct_subsemigroups {
        failures.push("repeated subsemigroup".into());
    }
    if !distinct_subalgebras {
        failures.push("two subsemigroups share a fixed ring".into());
    }
    let brute_force = if opts.brute_force {
        let all = enumerate_subalgebras(alg, &inv, opts.brute_force_limit)?;
        let mut good = Vec::new();
        for b in &all {
            if is_separable(alg, b, &inv, &opts.tensor_limit)?.idempotent.is_some() && is_beta_strong(lin, b)?.holds {
                good.push(b.clone());
            }
        }
        let want: std::collections::HashSet<&Subalgebra> = fixed.iter().collect();
        let got: std::collections::HashSet<&Subalgebra> = good.iter().collect();
        let matched = want == got && good.len() == fixed.len();
        if !matched {
            failures.push(format!(
                "exhaustive scan found {} separable strong subalgebras, expected {}",
                good.len(),
                fixed.len()
            ));
        }
        Some(BruteForceMatch {
            subalgebras_scanned: all.len(),
            separable_strong: good.len(),
            matched,
        })
    } else {
        None
    };
    let verdict = failures.is_empty();
    Ok(CorrespondenceReport {
        kind: kind.into(),
        entries,
        distinct_subsemigroups,
        distinct_subalgebras,
        order_reversing,
        brute_force,
        failures,
        verdict,
    })
}

fn require_nonzero_ideals(act: &UnitalAction) -> Result<()> {
    let sg = act.semigroup();
    for s in 0..sg.len() {
        if Some(s) != sg.zero() && act.iso(s).is_empty() {
            return Err(Error::PreconditionFail(format!("ideal of {} is zero", sg.name(s))));
        }
    }
    Ok(())
}

/// Correspondence for E-unitary semigroups acting injectively:
/// `T ↦ A^{β|T}` and `B ↦ S_B` are mutually inverse on β-complete `T`.
pub fn verify_e_unitary_correspondence(
    act: &UnitalAction,
    opts: &CorrespondenceOptions,
) -> Result<CorrespondenceReport> {
    let sg = act.semigroup();
    if sg.zero().is_some() || !sg.is_e_unitary()? {
        return Err(Error::PreconditionFail("semigroup is not E-unitary".into()));
    }
    if !act.is_injective() {
        return Err(Error::PreconditionFail("action is not injective".into()));
    }
    require_nonzero_ideals(act)?;
    let lin = act.linear();
    if !is_galois(&lin) {
        return Err(Error::PreconditionFail("extension is not Galois".into()));
    }
    let ts = enumerate_beta_complete(act)?;
    build_report("e-unitary", act, &lin, ts, opts)
}

/// General correspondence through `β(S)`: β-maximal `T` against separable,
/// β-strong subalgebras, with `B ↦ β⁻¹(β(S)_B)`.
pub fn verify_general_correspondence(act: &UnitalAction, opts: &CorrespondenceOptions) -> Result<CorrespondenceReport> {
    require_nonzero_ideals(act)?;
    let lin = act.linear();
    if !is_galois(&lin) {
        return Err(Error::PreconditionFail("extension is not Galois".into()));
    }
    let img = act.image_action()?;
    if img.image.zero().is_some() || !img.image.is_e_unitary()? {
        return Err(Error::PreconditionFail("image semigroup is not E-unitary".into()));
    }
    let image_report = verify_e_unitary_correspondence(&img.action, opts)?;
    let pulled: Vec<SubSemigroup> = image_report
        .entries
        .iter()
        .map(|e| {
            SubSemigroup::new(
                (0..act.semigroup().len())
                    .filter(|&s| e.members.contains(&img.projection[s]))
                    .collect(),
            )
        })
        .collect();
    let maximal = enumerate_beta_maximal(act)?;
    let mut report = build_report("general", act, &lin, maximal.clone(), opts)?;
    let a: BTreeSet<&SubSemigroup> = pulled.iter().collect();
    let b: BTreeSet<&SubSemigroup> = maximal.iter().collect();
    if a != b {
        report
            .failures
            .push("pull-backs of the image correspondence differ from the beta-maximal list".into());
    }
    for (e, pe) in report.entries.iter().zip(&maximal) {
        // B ↦ β⁻¹(β(S)_B) agrees with S_B
        let b = lin.invariant_of(pe.members());
        let sb_image = crate::galois::compute_s_b(&img.action.linear(), &b)?;
        let pre: Vec<usize> = (0..act.semigroup().len())
            .filter(|&s| sb_image.contains(img.projection[s]))
            .collect();
        if pre != e.s_b {
            report
                .failures
                .push(format!("{}: preimage of the image stabiliser differs", e.names));
        }
    }
    if !image_report.verdict {
        report
            .failures
            .extend(image_report.failures.iter().map(|f| format!("image: {f}")));
    }
    if let (Some(x), Some(y)) = (&mut report.brute_force, &image_report.brute_force) {
        x.matched &= y.matched;
    }
    report.verdict = report.failures.is_empty();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn s7_has_three_beta_complete() {
        let act = fixtures::s7();
        let ts = enumerate_beta_complete(&act).unwrap();
        let names: Vec<String> = ts.iter().map(|t| t.format(act.semigroup())).collect();
        assert_eq!(ts.len(), 3, "{names:?}");
    }

    #[test]
    fn s7_middle_object_is_not_beta_strong() {
        let act = fixtures::s7();
        let opts = CorrespondenceOptions {
            brute_force: true,
            ..Default::default()
        };
        let r = verify_e_unitary_correspondence(&act, &opts).unwrap();
        let orders: Vec<&str> = r.entries.iter().map(|e| e.fixed_order.as_str()).collect();
        assert_eq!(orders, vec!["729", "243", "27"]);
        assert!(r
            .entries
            .iter()
            .all(|e| e.separable && e.t_round_trip && e.b_round_trip));
        let strong: Vec<bool> = r.entries.iter().map(|e| e.strong).collect();
        assert_eq!(strong, vec![true, false, true]);
        // β_1 and β_s agree at e2 on every b with b_2 ∈ F_3
        let lin = act.linear();
        let b = lin.invariant_of(&[0, 3, 4, 5, 6]);
        let check = is_beta_strong(&lin, &b).unwrap();
        let f = check.failure.unwrap();
        assert_eq!((f.s, f.t), (0, 1));
        assert_eq!(f.e, vec![0, 0, 1, 0, 0, 0]);
        let bf = r.brute_force.unwrap();
        assert_eq!(bf.separable_strong, 2);
        assert!(!r.verdict);
    }

    #[test]
    fn swap_correspondence_two_objects() {
        let act = fixtures::c2_swap();
        let r = verify_e_unitary_correspondence(
            &act,
            &CorrespondenceOptions {
                brute_force: true,
                ..Default::default()
            },
        )
        .unwrap();
        assert!(r.verdict, "{:?}", r.failures);
        assert_eq!(r.entries.len(), 2);
    }

    #[test]
    fn non_full_is_not_complete() {
        let act = fixtures::s7();
        assert!(!is_beta_complete(&act, &SubSemigroup::new(vec![0])).unwrap());
    }
}
