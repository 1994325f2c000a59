//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero unless every criterion either passes or fails in exactly the
//! analysed way (see `known_failure` notes below).

use std::collections::{BTreeMap, HashMap};
use std::process::ExitCode;
use std::thread;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::Rng;

use semigalois::action::{extend_scalars, square_with_diagonal, subalgebra_as_algebra, LinearAction, UnitalAction};
use semigalois::algebra::{enumerate_subalgebras, PresentedAlgebra, Subalgebra};
use semigalois::correspondence::{
    enumerate_beta_complete, is_beta_complete, verify_e_unitary_correspondence, CorrespondenceOptions,
};
use semigalois::galois::{
    compute_s_b, default_tensor_guard, evaluate_criteria, is_beta_strong, is_separable, psi_check,
};
use semigalois::instance::parse_instance;
use semigalois::iso_pu::{compose, g_prime_check, is_compatible, join_sum, natural_leq_iso};
use semigalois::ring::{FiniteRing, IsoPair, RingElement, StructuredIso, Support};
use semigalois::semigroup::InverseSemigroup;
use semigalois::zero_case::{
    brandt_action, brandt_groupoid, conversion_round_trips, groupoid_to_primitive, is_0_e_unitary,
    is_categorical_at_zero, is_primitive, primitive_to_groupoid, tau_partition, verify_zero_correspondence, zero_last,
    ZeroPartialAction,
};
use semigalois::{corpus, fixtures};

const SEED: u64 = 1;
const CORPUS: usize = 200;

struct Outcome {
    pass: bool,
    detail: String,
    /// For a criterion known to be unattainable: does the observed failure
    /// match the analysis exactly? `None` for criteria expected to pass.
    known_failure: Option<bool>,
    elapsed: Duration,
}

fn limit() -> BigUint {
    default_tensor_guard()
}

fn timed(f: impl FnOnce() -> (bool, String, Option<bool>)) -> Outcome {
    let start = Instant::now();
    let (pass, detail, known_failure) = f();
    Outcome {
        pass,
        detail,
        known_failure,
        elapsed: start.elapsed(),
    }
}

// ---------- oracles ----------

/// `y` is fixed by every `β_s` in the extensional sense: `β_s(y1_{s⁻¹}) = y1_s`.
fn fixed_extensionally(act: &UnitalAction, y: &RingElement) -> bool {
    let ring = act.ring();
    act.isos().iter().all(|f| {
        let lhs = f.apply_restricted(ring, &ring.mul(y, &ring.unit(f.dom())).unwrap());
        lhs == ring.mul(y, &ring.unit(f.im())).unwrap()
    })
}

fn in_ideal_by_product(ring: &FiniteRing, x: &RingElement, sup: Support) -> bool {
    ring.mul(x, &ring.unit(sup)).unwrap() == *x
}

/// `f ∘ g` evaluated pointwise over all of `A`, compared against `c`.
fn composition_matches(
    ring: &FiniteRing,
    elems: &[RingElement],
    f: &StructuredIso,
    g: &StructuredIso,
    c: &StructuredIso,
) -> bool {
    elems.iter().all(|x| {
        let in_dom = in_ideal_by_product(ring, x, g.dom()) && {
            let gx = g.apply_restricted(ring, x);
            in_ideal_by_product(ring, &gx, f.dom())
        };
        if in_dom != in_ideal_by_product(ring, x, c.dom()) {
            return false;
        }
        !in_dom || c.apply_restricted(ring, x) == f.apply_restricted(ring, &g.apply_restricted(ring, x))
    })
}

fn modinv(a: i64, p: i64) -> i64 {
    let mut r = 1;
    let mut b = a.rem_euclid(p);
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Sparse row reduction over F_p; pivots on the largest column.
struct FpEliminator {
    p: i64,
    pivots: HashMap<usize, BTreeMap<usize, i64>>,
}

impl FpEliminator {
    fn new(p: i64) -> Self {
        FpEliminator {
            p,
            pivots: HashMap::new(),
        }
    }

    fn add(&mut self, terms: &[(usize, i64)]) {
        let p = self.p;
        let mut row: BTreeMap<usize, i64> = BTreeMap::new();
        for &(c, v) in terms {
            let e = row.entry(c).or_insert(0);
            *e = (*e + v).rem_euclid(p);
        }
        row.retain(|_, v| *v != 0);
        while let Some((&c, &v)) = row.iter().next_back() {
            match self.pivots.get(&c) {
                Some(piv) => {
                    for (&k, &w) in piv {
                        let e = row.entry(k).or_insert(0);
                        *e = (*e - v * w).rem_euclid(p);
                        if *e == 0 {
                            row.remove(&k);
                        }
                    }
                }
                None => {
                    let inv = modinv(v, p);
                    for w in row.values_mut() {
                        *w = *w * inv % p;
                    }
                    self.pivots.insert(c, row);
                    return;
                }
            }
        }
    }

    fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// `|B ⊗_R B|` from the free abelian group on `B × B` modulo biadditivity
/// and `rx ⊗ y = x ⊗ ry`, for `A` of prime exponent `p`.
fn tensor_order_oracle(alg: &PresentedAlgebra, b: &Subalgebra, r: &Subalgebra, p: i64) -> BigUint {
    let elems: Vec<Vec<i64>> = b
        .elements(alg, 1 << 12)
        .unwrap()
        .iter()
        .map(|x| alg.reduce(x))
        .collect();
    let index: HashMap<Vec<i64>, usize> = elems.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
    let at = |x: &[i64]| index[&alg.reduce(x)];
    let n = elems.len();
    let pair = |i: usize, j: usize| i * n + j;
    let b_gens = b.generators(alg);
    let r_gens = r.generators(alg);
    let mut el = FpEliminator::new(p);
    for i in 0..n {
        for j in 0..n {
            for g in &b_gens {
                let gi = at(g);
                let sum_i = at(&alg.add(&elems[i], g));
                el.add(&[(pair(sum_i, j), 1), (pair(i, j), -1), (pair(gi, j), -1)]);
                let sum_j = at(&alg.add(&elems[j], g));
                el.add(&[(pair(i, sum_j), 1), (pair(i, j), -1), (pair(i, gi), -1)]);
            }
            for rg in &r_gens {
                let left = at(&alg.mul(rg, &elems[i]));
                let right = at(&alg.mul(rg, &elems[j]));
                el.add(&[(pair(left, j), 1), (pair(i, right), -1)]);
            }
        }
    }
    BigUint::from(p as u64).pow((n * n - el.rank()) as u32)
}

fn is_prime(p: i64) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

// ---------- criteria ----------

fn criterion_1() -> Outcome {
    timed(|| {
        let src = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures/s7_f9.inst")).unwrap();
        let parsed = parse_instance(&src).is_ok();
        let act = fixtures::s7();
        let ring = act.ring();
        let sg = act.semigroup();
        let e_unitary = sg.is_e_unitary().unwrap();
        let c2 = sg.sigma_partition().unwrap().is_cyclic_of_order(2);
        let lin = act.linear();
        let inv = lin.invariant_ring();
        // F_9(e1 + e3) ⊕ F_3 e2, coordinates (e1: c0 c1, e2: c0 c1, e3: c0 c1)
        let expected = Subalgebra::span(
            &lin.alg,
            &[vec![1, 0, 0, 0, 1, 0], vec![0, 1, 0, 0, 0, 1], vec![0, 0, 1, 0, 0, 0]],
        );
        let elems = ring.elements(1 << 12).unwrap();
        let fixed: Vec<&RingElement> = elems.iter().filter(|y| fixed_extensionally(&act, y)).collect();
        let shape = inv == expected
            && inv.order(&lin.alg) == BigUint::from(27u32)
            && fixed.len() == 27
            && fixed.iter().all(|y| inv.contains(&y.0));
        // u = the class of x in F_9, u³ = -u ≠ u
        let u = ring.element(vec![0, 0, 0, 1, 0, 0]).unwrap();
        let plain_fails = !fixed_extensionally(&act, &act.trace(&u));
        let pga = act.induce_partial_group_action().unwrap();
        let sigma_lands = elems
            .iter()
            .all(|a| fixed_extensionally(&act, &act.sigma_trace(&pga, a)));
        let pass = parsed && e_unitary && c2 && shape && plain_fails && sigma_lands;
        let detail = format!(
            "parsed={parsed} e_unitary={e_unitary} sigma_c2={c2} invariants_27={shape} trace_not_invariant={plain_fails} sigma_trace_invariant_729={sigma_lands}"
        );
        (pass, detail, None)
    })
}

fn criterion_2() -> Outcome {
    timed(|| {
        let act = fixtures::s7();
        let ts = enumerate_beta_complete(&act).unwrap();
        let mut members: Vec<Vec<usize>> = ts.iter().map(|t| t.members().to_vec()).collect();
        members.sort();
        // E, E ∪ {t}, S7 in the index order of the fixture
        let enumerated = members == vec![vec![0, 1, 2, 3, 4, 5, 6], vec![0, 3, 4, 5, 6], vec![0, 3, 4, 6]];
        let opts = CorrespondenceOptions {
            brute_force: true,
            ..Default::default()
        };
        let r = verify_e_unitary_correspondence(&act, &opts).unwrap();
        let orders: Vec<&str> = r.entries.iter().map(|e| e.fixed_order.as_str()).collect();
        let orders_ok = orders == ["729", "243", "27"];
        let round_trips = r.entries.iter().all(|e| e.t_round_trip && e.b_round_trip);
        let separable = r.entries.iter().all(|e| e.separable);
        let strong: Vec<bool> = r.entries.iter().map(|e| e.strong).collect();
        let bf = r.brute_force.clone().unwrap();
        let pass = enumerated && orders_ok && round_trips && separable && strong.iter().all(|&x| x) && bf.matched;
        // Analysed failure: the order-243 object is not β-strong, witnessed at
        // (1, s) by e2, so the scan finds only A and A^β.
        let lin = act.linear();
        let middle = lin.invariant_of(&[0, 3, 4, 5, 6]);
        let failure = is_beta_strong(&lin, &middle).unwrap().failure;
        let witness_ok = failure.is_some_and(|f| (f.s, f.t) == (0, 1) && f.e == vec![0, 0, 1, 0, 0, 0]);
        let analysed = enumerated
            && orders_ok
            && round_trips
            && separable
            && strong == [true, false, true]
            && witness_ok
            && bf.separable_strong == 2
            && !bf.matched;
        let detail = format!(
            "enumerated={enumerated} orders={orders:?} round_trips={round_trips} separable={separable} strong={strong:?} scan_found={} matched={}",
            bf.separable_strong, bf.matched
        );
        (pass, detail, Some(analysed))
    })
}

struct CorpusRow {
    coordinates: bool,
    psi: bool,
    separable_strong: bool,
    trace: Option<bool>,
    alpha: Option<bool>,
}

fn evaluate_corpus(instances: &[UnitalAction]) -> Vec<CorpusRow> {
    let workers = thread::available_parallelism().map_or(1, |n| n.get()).min(8);
    let chunk = instances.len().div_ceil(workers).max(1);
    thread::scope(|scope| {
        let handles: Vec<_> = instances
            .chunks(chunk)
            .map(|part| {
                scope.spawn(move || {
                    part.iter()
                        .map(|act| {
                            let lin = act.linear_with_group().unwrap();
                            let v = evaluate_criteria(&lin, &limit()).unwrap().verdicts();
                            CorpusRow {
                                coordinates: v.coordinates,
                                psi: v.psi,
                                separable_strong: v.separable_strong,
                                trace: v.trace,
                                alpha: v.alpha,
                            }
                        })
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().unwrap()).collect()
    })
}

fn criterion_3(instances: &[UnitalAction]) -> Outcome {
    timed(|| {
        let rows = evaluate_corpus(instances);
        let galois = rows.iter().filter(|r| r.coordinates).count();
        let core_agree = rows
            .iter()
            .all(|r| r.psi == r.coordinates && r.separable_strong == r.coordinates);
        let alpha_agree = rows.iter().all(|r| r.alpha == Some(r.coordinates));
        let trace_disagree: Vec<usize> = (0..rows.len())
            .filter(|&i| rows[i].trace != Some(rows[i].coordinates))
            .collect();
        let pass = rows.len() >= 200 && core_agree && alpha_agree && trace_disagree.is_empty();
        // Analysed failure: the trace criterion is necessary but not
        // sufficient, so it may only err by accepting a non-Galois instance.
        let analysed = rows.len() >= 200
            && core_agree
            && alpha_agree
            && !trace_disagree.is_empty()
            && trace_disagree
                .iter()
                .all(|&i| rows[i].trace == Some(true) && !rows[i].coordinates);
        let detail = format!(
            "instances={} galois={galois} (i)=(iv)=(v)={core_agree} beta_iff_alpha={alpha_agree} trace_disagreements={} at {:?}",
            rows.len(),
            trace_disagree.len(),
            trace_disagree
        );
        (pass, detail, Some(analysed))
    })
}

fn random_element<R: Rng>(rng: &mut R, alg: &PresentedAlgebra) -> Vec<i64> {
    let m = alg.modulus();
    alg.reduce(&(0..alg.dim()).map(|_| rng.gen_range(0..m)).collect::<Vec<_>>())
}

fn restriction<R: Rng>(rng: &mut R, ring: &FiniteRing, f: &StructuredIso) -> StructuredIso {
    loop {
        let pairs: Vec<IsoPair> = f.pairs().iter().copied().filter(|_| rng.gen_bool(0.6)).collect();
        if !pairs.is_empty() {
            return StructuredIso::new(ring, pairs).unwrap();
        }
    }
}

/// Returns (families checked, failures).
fn join_families() -> (usize, usize) {
    let mut rng = corpus::rng(SEED + 100);
    let mut checked = 0;
    let mut failures = 0;
    while checked < 1000 {
        let ring = corpus::random_ring(&mut rng);
        let g = corpus::random_iso(&mut rng, &ring);
        let mut family: Vec<StructuredIso> = (0..rng.gen_range(1..=4))
            .map(|_| restriction(&mut rng, &ring, &g))
            .collect();
        if rng.gen_bool(0.5) {
            family.push(corpus::random_iso(&mut rng, &ring));
        }
        let compatible = family
            .iter()
            .all(|a| family.iter().all(|b| is_compatible(&ring, a, b).unwrap()));
        if !compatible {
            continue;
        }
        checked += 1;
        let j = join_sum(&ring, &family).unwrap();
        let upper = family.iter().all(|f| natural_leq_iso(f, &j));
        // dropping any atom of j loses some member
        let least = j.pairs().iter().all(|p| {
            let smaller: Vec<IsoPair> = j.pairs().iter().copied().filter(|q| q != p).collect();
            let s = StructuredIso::new_unchecked(smaller);
            !family.iter().all(|f| natural_leq_iso(f, &s))
        });
        // any extension of j by free atoms is an upper bound above j
        let free: Vec<usize> = (0..ring.atom_count())
            .filter(|&a| !j.dom().contains(a) && !j.im().contains(a))
            .collect();
        let mut ext = j.pairs().to_vec();
        for &a in &free {
            if rng.gen_bool(0.5) {
                ext.push(IsoPair {
                    from: a,
                    to: a,
                    twist: 0,
                });
            }
        }
        let h = StructuredIso::new(&ring, ext).unwrap();
        let extension_ok = family.iter().all(|f| natural_leq_iso(f, &h)) && natural_leq_iso(&j, &h);
        let only_members = family.len() > 1 || j == family[0];
        if !(upper && least && extension_ok && only_members) {
            failures += 1;
        }
    }
    (checked, failures)
}

fn criterion_4(instances: &[UnitalAction]) -> Outcome {
    timed(|| {
        let mut alpha_mismatch = Vec::new();
        let mut g_prime_fail = Vec::new();
        for (i, act) in instances.iter().enumerate() {
            let lin = act.linear_with_group().unwrap();
            if Some(lin.invariant_ring()) != lin.group_invariant_ring() {
                alpha_mismatch.push(i);
            }
            let q = act.semigroup().sigma_partition().unwrap();
            if !g_prime_check(act.ring(), &q, act.isos()).unwrap().isomorphic {
                g_prime_fail.push(i);
            }
        }
        let mut rng = corpus::rng(SEED + 200);
        let mut sb_checked = 0;
        let mut sb_fail = 0;
        'outer: for act in instances.iter().filter(|a| a.semigroup().len() <= 16) {
            let lin = act.linear();
            let inv = lin.invariant_ring();
            for _ in 0..5 {
                let mut gens = inv.generators(&lin.alg);
                for _ in 0..rng.gen_range(1..=2) {
                    gens.push(random_element(&mut rng, &lin.alg));
                }
                let b = Subalgebra::generated(&lin.alg, &gens);
                let t = compute_s_b(&lin, &b).unwrap();
                if !is_beta_complete(act, &t).unwrap() {
                    sb_fail += 1;
                }
                sb_checked += 1;
                if sb_checked == 100 {
                    break 'outer;
                }
            }
        }
        let (families, join_fail) = join_families();
        let pass = alpha_mismatch.is_empty()
            && g_prime_fail.is_empty()
            && sb_checked == 100
            && sb_fail == 0
            && families == 1000
            && join_fail == 0;
        let detail = format!(
            "A^beta=A^alpha on {} (mismatches {:?}); S_B complete {}/{sb_checked}; join lub {}/{families}; G'=S/sigma on {} (failures {:?})",
            instances.len(),
            alpha_mismatch,
            sb_checked - sb_fail,
            families - join_fail,
            instances.len(),
            g_prime_fail
        );
        (pass, detail, None)
    })
}

fn fixture_actions() -> Vec<(&'static str, UnitalAction)> {
    vec![
        ("s7", fixtures::s7()),
        ("c2_swap", fixtures::c2_swap()),
        ("c2_swap_fixed", fixtures::c2_swap_fixed()),
        ("c2_trivial_z4", fixtures::c2_trivial_z4()),
        ("chain", fixtures::chain_semilattice()),
        ("b2", fixtures::b2()),
        ("c2_zero_swap", fixtures::c2_zero_swap()),
    ]
}

fn iso_oracle_holds(act: &UnitalAction) -> bool {
    let ring = act.ring();
    let sg = act.semigroup();
    let elems = ring.elements(4096).unwrap();
    let isos = act.isos();
    isos.iter()
        .all(|f| semigalois::ring::verify_iso_extensional(ring, f).unwrap())
        && (0..sg.len()).all(|s| {
            (0..sg.len()).all(|t| {
                let c = compose(ring, &isos[s], &isos[t]);
                composition_matches(ring, &elems, &isos[s], &isos[t], &c)
                    && composition_matches(ring, &elems, &isos[s], &isos[t], &isos[sg.mul(s, t)])
            })
        })
}

/// Compare every tensor order the library computes against the oracle:
/// `A ⊗_{A^β} A` when `|A| ≤ 81`, and `B ⊗_{A^β} B` for intermediate `|B| ≤ 81`.
fn tensor_oracle_holds(act: &UnitalAction, compared: &mut usize) -> bool {
    let p = act.ring().exponent();
    if !is_prime(p) {
        return true;
    }
    let lin: LinearAction = act.linear();
    let alg = &lin.alg;
    let inv = lin.invariant_ring();
    let small = BigUint::from(81u32);
    let mut ok = true;
    if alg.order() <= small {
        let psi = psi_check(&lin, &limit()).unwrap();
        let oracle = tensor_order_oracle(alg, &Subalgebra::whole(alg), &inv, p);
        ok &= psi.tensor_order == oracle.to_string();
        *compared += 1;
    }
    for b in enumerate_subalgebras(alg, &inv, 1 << 12).unwrap() {
        if b.order(alg) <= small {
            let sep = is_separable(alg, &b, &inv, &limit()).unwrap();
            ok &= sep.tensor_order == tensor_order_oracle(alg, &b, &inv, p).to_string();
            *compared += 1;
        }
    }
    ok
}

fn criterion_5(instances: &[UnitalAction]) -> Outcome {
    timed(|| {
        let mut iso_fail = Vec::new();
        let mut tensor_fail = Vec::new();
        let mut compared = 0;
        let fixtures = fixture_actions();
        for (name, act) in &fixtures {
            if !iso_oracle_holds(act) {
                iso_fail.push(name.to_string());
            }
            if !tensor_oracle_holds(act, &mut compared) {
                tensor_fail.push(name.to_string());
            }
        }
        for (i, act) in instances.iter().enumerate() {
            if !iso_oracle_holds(act) {
                iso_fail.push(format!("corpus#{i}"));
            }
            if !tensor_oracle_holds(act, &mut compared) {
                tensor_fail.push(format!("corpus#{i}"));
            }
        }
        let pass = iso_fail.is_empty() && tensor_fail.is_empty() && compared > 0;
        let detail = format!(
            "iso/compose oracle on {} fixtures + {} corpus (failures {:?}); {compared} tensor orders against elimination (failures {:?})",
            fixtures.len(),
            instances.len(),
            iso_fail,
            tensor_fail
        );
        (pass, detail, None)
    })
}

/// τ and ≈ straight from the definitions.
fn tau_oracle(s: &InverseSemigroup) -> (Vec<Vec<bool>>, Vec<Vec<bool>>) {
    let n = s.len();
    let z = s.zero().unwrap();
    let nz_idem = |x: usize| x != z && s.mul(x, x) == x;
    let leq = |a: usize, b: usize| s.mul(s.mul(a, s.inv(a)), b) == a;
    let mut tau: Vec<Vec<bool>> = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| a == b || (0..n).any(|u| u != z && leq(u, a) && leq(u, b)))
                .collect()
        })
        .collect();
    for k in 0..n {
        for a in 0..n {
            for b in 0..n {
                if tau[a][k] && tau[k][b] {
                    tau[a][b] = true;
                }
            }
        }
    }
    let approx = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    if a == z || b == z {
                        a == b
                    } else {
                        nz_idem(s.mul(s.inv(a), b)) && nz_idem(s.mul(a, s.inv(b)))
                    }
                })
                .collect()
        })
        .collect();
    (tau, approx)
}

fn criterion_6() -> Outcome {
    timed(|| {
        let mut rng = corpus::rng(SEED + 300);
        // groupoid round trips
        let mut primitive: Vec<InverseSemigroup> = vec![fixtures::b2_semigroup(), fixtures::cyclic_with_zero(2)];
        while primitive.len() < 40 {
            let g = brandt_groupoid(&corpus::random_brandt_parts(&mut rng)).unwrap();
            primitive.push(groupoid_to_primitive(&g).unwrap());
        }
        let mut tries = 0;
        while primitive.len() < 60 && tries < 2000 {
            tries += 1;
            let s = corpus::random_zero_semigroup(&mut rng);
            if is_primitive(&s).unwrap() {
                primitive.push(s);
            }
        }
        let round_trip_fail = primitive
            .iter()
            .filter(|s| {
                let g = primitive_to_groupoid(s).unwrap();
                let back = groupoid_to_primitive(&g).unwrap();
                // the zero is renamed "0" on the way back
                let relabeled = zero_last(s).unwrap();
                back.raw_table() != relabeled.raw_table()
                    || back.names()[..g.len()] != relabeled.names()[..g.len()]
                    || primitive_to_groupoid(&back).unwrap() != g
            })
            .count();
        // τ = ≈ on the hypotheses
        let mut tau_checked = 0;
        let mut tau_fail = 0;
        let mut tries = 0;
        while tau_checked < 40 && tries < 5000 {
            tries += 1;
            let s = corpus::random_zero_semigroup(&mut rng);
            if !(is_0_e_unitary(&s).unwrap() && is_categorical_at_zero(&s).unwrap()) {
                continue;
            }
            tau_checked += 1;
            let (tau, approx) = tau_oracle(&s);
            let lib = tau_partition(&s);
            let ok = tau == approx
                && lib.is_ok_and(|t| {
                    t.approx_checked
                        && (0..s.len()).all(|a| (0..s.len()).all(|b| (t.projection[a] == t.projection[b]) == tau[a][b]))
                });
            if !ok {
                tau_fail += 1;
            }
        }
        // conversions
        let atoms = corpus::small_atoms();
        let mut conversions = 0;
        let mut conversion_fail = 0;
        for act in [fixtures::b2(), fixtures::c2_zero_swap()] {
            let alpha = ZeroPartialAction::from_unital(&act).unwrap();
            conversions += 1;
            if !conversion_round_trips(&alpha).unwrap() {
                conversion_fail += 1;
            }
        }
        while conversions < 24 {
            let parts = corpus::random_brandt_parts(&mut rng);
            let chosen: Vec<_> = parts
                .iter()
                .map(|&(_, m)| {
                    let ok: Vec<_> = atoms.iter().filter(|a| m % a.twist_period() as usize == 0).collect();
                    ok[rng.gen_range(0..ok.len())].clone()
                })
                .collect();
            let gamma = brandt_action(&parts, &chosen).unwrap();
            let zero = gamma.to_zero_action().unwrap();
            conversions += 1;
            if zero.to_groupoid_action().unwrap() != gamma || !conversion_round_trips(&zero).unwrap() {
                conversion_fail += 1;
            }
        }
        let opts = CorrespondenceOptions {
            brute_force: true,
            ..Default::default()
        };
        let b2_ok = verify_zero_correspondence(&fixtures::b2(), &opts).is_ok_and(|r| r.verdict);
        let pass = primitive.len() >= 50
            && round_trip_fail == 0
            && tau_checked > 0
            && tau_fail == 0
            && conversions >= 20
            && conversion_fail == 0
            && b2_ok;
        let detail = format!(
            "groupoid round trips {}/{}; tau = approx {}/{tau_checked}; conversions {}/{conversions}; B2 correspondence={b2_ok}",
            primitive.len() - round_trip_fail,
            primitive.len(),
            tau_checked - tau_fail,
            conversions - conversion_fail
        );
        (pass, detail, None)
    })
}

fn criterion_7(instances: &[UnitalAction]) -> Outcome {
    timed(|| {
        let mut extended = 0;
        let mut failures = Vec::new();
        for (i, act) in instances.iter().enumerate() {
            if extended == 20 {
                break;
            }
            let lin = act.linear();
            if !semigalois::galois::is_galois(&lin) {
                continue;
            }
            extended += 1;
            let inv = lin.invariant_ring();
            let (r, mut module) = subalgebra_as_algebra(&lin.alg, &inv);
            let phi: Vec<Vec<i64>> = inv
                .generators(&lin.alg)
                .iter()
                .map(|g| module.express(g).unwrap())
                .collect();
            let (sq, diag) = square_with_diagonal(&r);
            let phi_sq: Vec<Vec<i64>> = phi
                .iter()
                .map(|v| {
                    v.iter().zip(&diag).fold(vec![0; sq.dim()], |acc, (c, d)| {
                        acc.iter().zip(d).map(|(a, x)| a + c * x).collect()
                    })
                })
                .collect();
            for (label, ring, map) in [("A^beta", &r, &phi), ("A^beta x A^beta", &sq, &phi_sq)] {
                let ext = extend_scalars(&lin, &inv, ring, map, &limit()).unwrap();
                let v = evaluate_criteria(&ext.action, &limit()).unwrap().verdicts();
                let invariants = ext.action.invariant_ring() == ext.base_image;
                if !(v.coordinates && v.unanimous() && invariants) {
                    failures.push(format!("corpus#{i} over {label}"));
                }
            }
        }
        let pass = extended == 20 && failures.is_empty();
        let detail = format!("{extended} instances x 2 base rings; failures {:?}", failures);
        (pass, detail, None)
    })
}

fn main() -> ExitCode {
    let instances = corpus::corpus(SEED, CORPUS);
    let results = [
        ("1 S7 fixture, traces", criterion_1(), Some(Duration::from_secs(1))),
        ("2 S7 correspondence", criterion_2(), Some(Duration::from_secs(30))),
        (
            "3 criteria unanimity",
            criterion_3(&instances),
            Some(Duration::from_secs(300)),
        ),
        ("4 structural invariants", criterion_4(&instances), None),
        ("5 oracle equivalence", criterion_5(&instances), None),
        ("6 zero case", criterion_6(), None),
        ("7 scalar extension", criterion_7(&instances), None),
    ];
    let mut ok = true;
    for (name, o, budget) in &results {
        let in_time = budget.is_none_or(|b| o.elapsed <= b);
        let pass = o.pass && in_time;
        let note = match o.known_failure {
            Some(true) if !pass => " [known failure, matches analysis]",
            Some(false) if !pass => " [known failure, DOES NOT match analysis]",
            Some(_) => " [known failure unexpectedly passed]",
            None => "",
        };
        println!(
            "criterion {name}: {} ({:.2}s) {}{note}",
            if pass { "PASS" } else { "FAIL" },
            o.elapsed.as_secs_f64(),
            o.detail
        );
        ok &= match o.known_failure {
            None => pass,
            Some(analysed) => !o.pass && analysed && in_time,
        };
    }
    if ok {
        println!("acceptance: every criterion passes or fails exactly as analysed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: unexpected outcome");
        ExitCode::FAILURE
    }
}
