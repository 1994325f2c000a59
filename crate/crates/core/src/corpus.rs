//! Seeded random instances for the property suites and `selftest`.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::action::{validate_action, UnitalAction};
use crate::iso_pu::closure;
use crate::ring::{Atom, FiniteRing, IsoPair, StructuredIso, Support};
use crate::semigroup::{generate_from_partial_perms, InverseSemigroup, PartialPerm};

/// Upper bound on the closure size of a random instance.
pub const CLOSURE_LIMIT: usize = 64;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Atoms of order at most 9.
pub fn small_atoms() -> Vec<Atom> {
    let z = |p, k| Atom::zmod(p, k).expect("prime power");
    let g = |p, k| Atom::gf_default(p, k).expect("field exists");
    vec![
        z(2, 1),
        z(3, 1),
        z(5, 1),
        z(7, 1),
        z(2, 2),
        z(2, 3),
        z(3, 2),
        g(2, 2),
        g(2, 3),
        g(3, 2),
    ]
}

/// One to three atoms, biased towards repeats so that matchings exist.
pub fn random_ring<R: Rng>(rng: &mut R) -> FiniteRing {
    let pool = small_atoms();
    let count = rng.gen_range(1..=3);
    let mut atoms = vec![pool.choose(rng).expect("nonempty").clone()];
    while atoms.len() < count {
        let next = if rng.gen_bool(0.7) {
            atoms[rng.gen_range(0..atoms.len())].clone()
        } else {
            pool.choose(rng).expect("nonempty").clone()
        };
        atoms.push(next);
    }
    FiniteRing::new(atoms).expect("at most three atoms")
}

/// A random nonempty partial isomorphism between unital ideals.
pub fn random_iso<R: Rng>(rng: &mut R, ring: &FiniteRing) -> StructuredIso {
    let n = ring.atom_count();
    let atoms = ring.atoms();
    loop {
        let mut pairs = Vec::new();
        let mut used = vec![false; n];
        for from in 0..n {
            if !rng.gen_bool(0.6) {
                continue;
            }
            let targets: Vec<usize> = (0..n).filter(|&t| !used[t] && atoms[t] == atoms[from]).collect();
            if let Some(&to) = targets.choose(rng) {
                used[to] = true;
                let twist = rng.gen_range(0..atoms[from].twist_period());
                pairs.push(IsoPair { from, to, twist });
            }
        }
        if !pairs.is_empty() {
            return StructuredIso::new(ring, pairs).expect("matching of equal atoms");
        }
    }
}

/// Close random generators inside `Iso_pu(A)`, padding the idempotents with
/// an identity on any uncovered atoms. `None` if the closure is too large.
pub fn random_action<R: Rng>(rng: &mut R) -> Option<UnitalAction> {
    let ring = random_ring(rng);
    let k = rng.gen_range(1..=4);
    let mut gens: Vec<StructuredIso> = (0..k).map(|_| random_iso(rng, &ring)).collect();
    let covered = gens
        .iter()
        .fold(Support::EMPTY, |acc, g| acc.union(g.dom()).union(g.im()));
    let rest = ring.full_support().minus(covered);
    if !rest.is_empty() {
        gens.push(StructuredIso::identity(rest));
    }
    let (sg, isos) = closure(&ring, &gens, CLOSURE_LIMIT).ok()?;
    validate_action(sg, ring, isos).ok()
}

/// E-unitary, injective, no zero and every ideal nonzero.
pub fn in_scope(act: &UnitalAction) -> bool {
    act.semigroup().zero().is_none()
        && act.all_ideals_nonzero()
        && act.is_injective()
        && act.semigroup().is_e_unitary().unwrap_or(false)
}

/// `count` in-scope instances drawn from `seed`.
pub fn corpus(seed: u64, count: usize) -> Vec<UnitalAction> {
    let mut r = rng(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        if let Some(a) = random_action(&mut r) {
            if in_scope(&a) {
                out.push(a);
            }
        }
    }
    out
}

/// Parts `(objects, vertex group order)` for a random Brandt groupoid.
pub fn random_brandt_parts<R: Rng>(rng: &mut R) -> Vec<(usize, usize)> {
    let count = rng.gen_range(1..=2);
    (0..count)
        .map(|_| (rng.gen_range(1..=3), rng.gen_range(1..=3)))
        .collect()
}

/// An inverse semigroup with zero: the closure of random partial
/// permutations on at most four points, kept when the empty map appears.
pub fn random_zero_semigroup<R: Rng>(rng: &mut R) -> InverseSemigroup {
    loop {
        let points = rng.gen_range(2..=4);
        let k = rng.gen_range(1..=3);
        let gens: Vec<PartialPerm> = (0..k)
            .map(|_| {
                let mut image: Vec<usize> = (0..points).collect();
                image.shuffle(rng);
                let map: Vec<(usize, usize)> = (0..points)
                    .filter(|_| rng.gen_bool(0.6))
                    .map(|a| (a, image[a]))
                    .collect();
                PartialPerm::new(points, &map).expect("injective")
            })
            .collect();
        let names: Vec<String> = (0..k).map(|i| format!("g{i}")).collect();
        if let Ok((s, _, _)) = generate_from_partial_perms(&names, &gens) {
            if s.zero().is_some() && s.len() <= 40 {
                return s;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_deterministic_and_in_scope() {
        let a = corpus(7, 10);
        let b = corpus(7, 10);
        assert!(a.iter().all(in_scope));
        let ia: Vec<_> = a.iter().map(|x| x.isos().to_vec()).collect();
        let ib: Vec<_> = b.iter().map(|x| x.isos().to_vec()).collect();
        assert_eq!(ia, ib);
    }

    #[test]
    fn zero_semigroups_have_zero() {
        let mut r = rng(3);
        for _ in 0..10 {
            assert!(random_zero_semigroup(&mut r).zero().is_some());
        }
    }
}
