//! Small hand-built instances used by tests, the CLI self-test and the docs.

use std::collections::HashMap;

use crate::action::{validate_action, UnitalAction};
use crate::error::{Error, Result};
use crate::ring::{Atom, FiniteRing, IsoPair, StructuredIso, Support};
use crate::semigroup::{generate_from_partial_perms, InverseSemigroup, PartialPerm, Word};

/// Generators given both as partial permutations and as ring isomorphisms.
pub struct GeneratorData {
    pub names: Vec<String>,
    pub perms: Vec<PartialPerm>,
    pub isos: Vec<StructuredIso>,
}

fn evaluate_iso(ring: &FiniteRing, isos: &[StructuredIso], word: &Word) -> StructuredIso {
    word.iter()
        .map(|&(g, inv)| if inv { isos[g].inverse(ring) } else { isos[g].clone() })
        .reduce(|a, b| crate::iso_pu::compose(ring, &a, &b))
        .unwrap_or_else(|| StructuredIso::identity(ring.full_support()))
}

/// Close the generators, then assign `β` along the shortest words.
pub fn action_from_generators(ring: FiniteRing, data: &GeneratorData) -> Result<UnitalAction> {
    let (sg, _, words) = generate_from_partial_perms(&data.names, &data.perms)?;
    let isos = words.iter().map(|w| evaluate_iso(&ring, &data.isos, w)).collect();
    validate_action(sg, ring, isos)
}

/// Multiplication table of an explicit list of partial permutations, which
/// must be closed under composition.
pub fn table_of_perms(perms: &[PartialPerm]) -> Result<Vec<Vec<usize>>> {
    let index: HashMap<&PartialPerm, usize> = perms.iter().enumerate().map(|(i, p)| (p, i)).collect();
    perms
        .iter()
        .map(|a| {
            perms
                .iter()
                .map(|b| {
                    index
                        .get(&a.compose(b))
                        .copied()
                        .ok_or_else(|| Error::NotSubsemigroup("list is not closed under composition".into()))
                })
                .collect()
        })
        .collect()
}

fn pair(from: usize, to: usize, twist: u32) -> IsoPair {
    IsoPair { from, to, twist }
}

fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

/// `F_9 = F_3[x]/(x² + 1)`.
pub fn f9() -> Atom {
    Atom::gf(3, 2, &[1, 0, 1]).expect("x^2+1 is irreducible over F_3")
}

pub fn f3() -> Atom {
    Atom::zmod(3, 1).expect("3 is prime")
}

/// Names of the seven elements of [`s7`], in index order.
pub const S7_NAMES: [&str; 7] = ["1", "s", "s^-1", "ss^-1", "s^-1s", "t", "tt^-1"];

/// The seven-element inverse monoid acting on `F_9³`: `β_s` sends `e1` to
/// `e3` and acts on `e2` by Frobenius, `β_t` is Frobenius on `F_9 e2`.
/// Its faithful representation uses points `e1, e2a, e2b, e3`.
pub fn s7() -> UnitalAction {
    let ring = FiniteRing::new(vec![f9(), f9(), f9()]).expect("three atoms");
    let s_perm = PartialPerm::new(4, &[(0, 3), (1, 2), (2, 1)]).expect("injective");
    let t_perm = PartialPerm::new(4, &[(1, 2), (2, 1)]).expect("injective");
    let id_perm = PartialPerm::identity(4);
    let s_iso = StructuredIso::new(&ring, vec![pair(0, 2, 0), pair(1, 1, 1)]).expect("valid");
    let t_iso = StructuredIso::new(&ring, vec![pair(1, 1, 1)]).expect("valid");
    let id_iso = StructuredIso::identity(ring.full_support());
    // letters: 0 = 1, 1 = s, 2 = t
    let words: [Word; 7] = [
        vec![(0, false)],
        vec![(1, false)],
        vec![(1, true)],
        vec![(1, false), (1, true)],
        vec![(1, true), (1, false)],
        vec![(2, false)],
        vec![(2, false), (2, true)],
    ];
    let gens = [id_perm, s_perm, t_perm];
    let gen_isos = [id_iso, s_iso, t_iso];
    let perms: Vec<PartialPerm> = words
        .iter()
        .map(|w| crate::semigroup::evaluate_word(&gens, w).expect("nonempty word"))
        .collect();
    let table = table_of_perms(&perms).expect("closed");
    let sg = InverseSemigroup::from_table(table, None, Some(names(&S7_NAMES))).expect("inverse monoid");
    let isos = words.iter().map(|w| evaluate_iso(&ring, &gen_isos, w)).collect();
    validate_action(sg, ring, isos).expect("valid action")
}

/// Generator form of [`s7`], as it appears in instance files.
pub fn s7_generators() -> (FiniteRing, GeneratorData) {
    let ring = FiniteRing::new(vec![f9(), f9(), f9()]).expect("three atoms");
    let data = GeneratorData {
        names: names(&["1", "s", "t"]),
        perms: vec![
            PartialPerm::identity(4),
            PartialPerm::new(4, &[(0, 3), (1, 2), (2, 1)]).expect("injective"),
            PartialPerm::new(4, &[(1, 2), (2, 1)]).expect("injective"),
        ],
        isos: vec![
            StructuredIso::identity(ring.full_support()),
            StructuredIso::new(&ring, vec![pair(0, 2, 0), pair(1, 1, 1)]).expect("valid"),
            StructuredIso::new(&ring, vec![pair(1, 1, 1)]).expect("valid"),
        ],
    };
    (ring, data)
}

fn c2() -> InverseSemigroup {
    InverseSemigroup::from_table(vec![vec![0, 1], vec![1, 0]], None, Some(names(&["1", "g"]))).expect("group")
}

/// `C2` swapping the two factors of `F_3 × F_3`.
pub fn c2_swap() -> UnitalAction {
    let ring = FiniteRing::new(vec![f3(), f3()]).expect("two atoms");
    let id = StructuredIso::identity(ring.full_support());
    let sw = StructuredIso::new(&ring, vec![pair(0, 1, 0), pair(1, 0, 0)]).expect("valid");
    validate_action(c2(), ring, vec![id, sw]).expect("valid action")
}

/// `C2` swapping `e1, e2` in `F_3³` and fixing `e3`: not Galois, yet the
/// σ-trace is onto the invariants.
pub fn c2_swap_fixed() -> UnitalAction {
    let ring = FiniteRing::new(vec![f3(), f3(), f3()]).expect("three atoms");
    let id = StructuredIso::identity(ring.full_support());
    let sw = StructuredIso::new(&ring, vec![pair(0, 1, 0), pair(1, 0, 0), pair(2, 2, 0)]).expect("valid");
    validate_action(c2(), ring, vec![id, sw]).expect("valid action")
}

/// `C2` acting trivially on `Z/4`.
pub fn c2_trivial_z4() -> UnitalAction {
    let ring = FiniteRing::new(vec![Atom::zmod(2, 2).expect("prime power")]).expect("one atom");
    let id = StructuredIso::identity(ring.full_support());
    validate_action(c2(), ring, vec![id.clone(), id]).expect("valid action")
}

/// The chain `{1, e}` acting on `F_3 × F_3` with `A_e = F_3 e1`.
pub fn chain_semilattice() -> UnitalAction {
    let ring = FiniteRing::new(vec![f3(), f3()]).expect("two atoms");
    let sg = InverseSemigroup::from_table(vec![vec![0, 1], vec![1, 1]], None, Some(names(&["1", "e"]))).expect("chain");
    let isos = vec![
        StructuredIso::identity(ring.full_support()),
        StructuredIso::identity(Support::single(0)),
    ];
    validate_action(sg, ring, isos).expect("valid action")
}

/// Names of [`b2`]: the zero and the four matrix units.
pub const B2_NAMES: [&str; 5] = ["0", "e11", "e12", "e21", "e22"];

/// The Brandt semigroup `B2` as a table, zero at index 0.
pub fn b2_semigroup() -> InverseSemigroup {
    let units = [(0, 0), (0, 1), (1, 0), (1, 1)];
    let idx = |i: usize, j: usize| 1 + units.iter().position(|&u| u == (i, j)).expect("unit");
    let mut table = vec![vec![0; 5]; 5];
    for (a, &(i, j)) in units.iter().enumerate() {
        for (b, &(k, l)) in units.iter().enumerate() {
            table[a + 1][b + 1] = if j == k { idx(i, l) } else { 0 };
        }
    }
    InverseSemigroup::from_table(table, Some(0), Some(names(&B2_NAMES))).expect("Brandt semigroup")
}

/// `B2` acting on `F_3 × F_3`: `e_ij` sends the `j`-th factor onto the `i`-th.
pub fn b2() -> UnitalAction {
    let ring = FiniteRing::new(vec![f3(), f3()]).expect("two atoms");
    let isos = vec![
        StructuredIso::empty(),
        StructuredIso::identity(Support::single(0)),
        StructuredIso::new(&ring, vec![pair(1, 0, 0)]).expect("valid"),
        StructuredIso::new(&ring, vec![pair(0, 1, 0)]).expect("valid"),
        StructuredIso::identity(Support::single(1)),
    ];
    validate_action(b2_semigroup(), ring, isos).expect("valid action")
}

/// The Clifford semigroup with top `C3 = {1, g, g²}`, bottom `C2 = {e, h}` and
/// the trivial structure map. Not E-unitary.
pub fn clifford5() -> InverseSemigroup {
    // 0 = 1, 1 = g, 2 = g², 3 = e, 4 = h
    let bottom = |x: usize| if x < 3 { 3 } else { x };
    let t = (0..5)
        .map(|a| {
            (0..5)
                .map(|b| match (a < 3 && b < 3, bottom(a) == bottom(b)) {
                    (true, _) => (a + b) % 3,
                    (false, true) => 3,
                    (false, false) => 4,
                })
                .collect()
        })
        .collect();
    InverseSemigroup::from_table(t, None, Some(names(&["1", "g", "g^2", "e", "h"]))).expect("Clifford semigroup")
}

/// A group `C_n` with a zero adjoined at index `n`.
pub fn cyclic_with_zero(n: usize) -> InverseSemigroup {
    let t = (0..=n)
        .map(|a| (0..=n).map(|b| if a < n && b < n { (a + b) % n } else { n }).collect())
        .collect();
    let mut nm: Vec<String> = (0..n)
        .map(|i| if i == 0 { "1".into() } else { format!("g^{i}") })
        .collect();
    nm.push("0".into());
    InverseSemigroup::from_table(t, Some(n), Some(nm)).expect("group with zero")
}

/// `C2 ∪ {0}` swapping the factors of `F_3 × F_3`, zero acting on the zero ideal.
pub fn c2_zero_swap() -> UnitalAction {
    let ring = FiniteRing::new(vec![f3(), f3()]).expect("two atoms");
    let isos = vec![
        StructuredIso::identity(ring.full_support()),
        StructuredIso::new(&ring, vec![pair(0, 1, 0), pair(1, 0, 0)]).expect("valid"),
        StructuredIso::empty(),
    ];
    validate_action(cyclic_with_zero(2), ring, isos).expect("valid action")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s7_matches_generated_closure() {
        let fixed = s7();
        let (ring, data) = s7_generators();
        let gen = action_from_generators(ring, &data).unwrap();
        assert_eq!(gen.semigroup().len(), 7);
        let mut a: Vec<_> = fixed.isos().to_vec();
        let mut b: Vec<_> = gen.isos().to_vec();
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }

    #[test]
    fn s7_order_facts() {
        let a = s7();
        let s = a.semigroup();
        assert!(s.natural_leq(5, 1) && s.natural_leq(5, 2));
        assert_eq!(s.meet(1, 2), Some(5));
        assert_eq!(s.join_of(&[3, 4]).unwrap(), Some(0));
        assert_eq!(s.idempotents(), vec![0, 3, 4, 6]);
    }

    #[test]
    fn clifford5_is_not_e_unitary() {
        assert!(!clifford5().is_e_unitary().unwrap());
    }
}
