//! The inverse semigroup `Iso_pu(A)` of isomorphisms between unital ideals.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::ring::{FiniteRing, IsoPair, StructuredIso};
use crate::semigroup::{InverseSemigroup, QuotientGroup};

/// `f ∘ g`, defined on `g⁻¹(im g ∩ dom f)`.
pub fn compose(ring: &FiniteRing, f: &StructuredIso, g: &StructuredIso) -> StructuredIso {
    let pairs = g
        .pairs()
        .iter()
        .filter_map(|p| {
            f.pair_from(p.to).map(|q| {
                let period = ring.atoms()[p.from].twist_period();
                IsoPair {
                    from: p.from,
                    to: q.to,
                    twist: (p.twist + q.twist) % period,
                }
            })
        })
        .collect();
    StructuredIso::new_unchecked(pairs)
}

/// `f ∼ g`, decided both by the idempotent condition and by agreement on
/// the overlaps of domains and of images; the two must coincide.
pub fn is_compatible(ring: &FiniteRing, f: &StructuredIso, g: &StructuredIso) -> Result<bool> {
    let fi = f.inverse(ring);
    let gi = g.inverse(ring);
    let by_idempotents = compose(ring, &fi, g).is_identity() && compose(ring, f, &gi).is_identity();
    let dom = f.dom().intersect(g.dom());
    let im = f.im().intersect(g.im());
    let agree_dom = ring
        .ideal_basis(dom)
        .iter()
        .all(|x| f.apply_restricted(ring, x) == g.apply_restricted(ring, x));
    let agree_im = ring
        .ideal_basis(im)
        .iter()
        .all(|y| fi.apply_restricted(ring, y) == gi.apply_restricted(ring, y));
    let by_restriction = agree_dom && agree_im;
    if by_idempotents != by_restriction {
        return Err(Error::CompatibilityMismatch(format!(
            "{} and {}",
            f.format(),
            g.format()
        )));
    }
    Ok(by_idempotents)
}

/// `f ⪯ g`: `f` is a restriction of `g`.
pub fn natural_leq_iso(f: &StructuredIso, g: &StructuredIso) -> bool {
    f.pairs().iter().all(|p| g.pairs().contains(p))
}

/// The join of a pairwise compatible family: the sum map on the sum of domains.
pub fn join_sum(ring: &FiniteRing, family: &[StructuredIso]) -> Result<StructuredIso> {
    for (i, f) in family.iter().enumerate() {
        for g in &family[i + 1..] {
            if !is_compatible(ring, f, g)? {
                return Err(Error::NotCompatible(format!("{} and {}", f.format(), g.format())));
            }
        }
    }
    let pairs: BTreeSet<IsoPair> = family.iter().flat_map(|f| f.pairs().iter().copied()).collect();
    StructuredIso::new(ring, pairs.into_iter().collect())
}

/// Inverse subsemigroup of `Iso_pu(A)` generated by `gens`, in discovery order.
pub fn closure(
    ring: &FiniteRing,
    gens: &[StructuredIso],
    cap: usize,
) -> Result<(InverseSemigroup, Vec<StructuredIso>)> {
    let mut letters: Vec<StructuredIso> = Vec::new();
    for g in gens {
        letters.push(g.clone());
        letters.push(g.inverse(ring));
    }
    let mut index: HashMap<StructuredIso, usize> = HashMap::new();
    let mut elems: Vec<StructuredIso> = Vec::new();
    let mut queue = VecDeque::new();
    for l in &letters {
        if !index.contains_key(l) {
            index.insert(l.clone(), elems.len());
            elems.push(l.clone());
            queue.push_back(elems.len() - 1);
        }
    }
    while let Some(i) = queue.pop_front() {
        for l in &letters {
            let q = compose(ring, &elems[i], l);
            if !index.contains_key(&q) {
                if elems.len() >= cap {
                    return Err(Error::too_large(
                        "closure in Iso_pu",
                        elems.len() as u64 + 1,
                        cap as u64,
                    ));
                }
                index.insert(q.clone(), elems.len());
                elems.push(q);
                queue.push_back(elems.len() - 1);
            }
        }
    }
    let n = elems.len();
    let raw: Vec<Vec<usize>> = (0..n)
        .map(|a| (0..n).map(|b| index[&compose(ring, &elems[a], &elems[b])]).collect())
        .collect();
    let zero = elems.iter().position(|f| f.is_empty());
    let names = elems.iter().map(|f| f.format()).collect();
    let s = InverseSemigroup::from_table_assoc(raw, zero, Some(names))?;
    Ok((s, elems))
}

/// Outcome of checking that `G′ = {α_s}` with `☉` is a group isomorphic to `S/σ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GPrimeCheck {
    pub alphas: Vec<StructuredIso>,
    /// `odot[c][d]`: class index of the unique element of `G′` above `α_c α_d`.
    pub odot: Vec<Vec<Option<usize>>>,
    pub isomorphic: bool,
}

/// Build `α_c` as the join over each σ-class and verify `α_c ☉ α_d = α_{cd}`.
pub fn g_prime_check(ring: &FiniteRing, q: &QuotientGroup, isos: &[StructuredIso]) -> Result<GPrimeCheck> {
    let alphas: Vec<StructuredIso> = q
        .classes
        .iter()
        .map(|c| {
            let fam: Vec<StructuredIso> = c.iter().map(|&s| isos[s].clone()).collect();
            join_sum(ring, &fam)
        })
        .collect::<Result<_>>()?;
    let k = alphas.len();
    let distinct = alphas.iter().collect::<BTreeSet<_>>().len() == k;
    let mut odot = vec![vec![None; k]; k];
    let mut ok = distinct;
    for c in 0..k {
        for d in 0..k {
            let prod = compose(ring, &alphas[c], &alphas[d]);
            let above: Vec<usize> = (0..k).filter(|&x| natural_leq_iso(&prod, &alphas[x])).collect();
            if above.len() == 1 {
                odot[c][d] = Some(above[0]);
                if above[0] != q.mul(c, d) {
                    ok = false;
                }
            } else {
                ok = false;
            }
        }
    }
    Ok(GPrimeCheck {
        alphas,
        odot,
        isomorphic: ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Atom, Support};

    fn f3sq() -> FiniteRing {
        FiniteRing::new(vec![Atom::zmod(3, 1).unwrap(), Atom::zmod(3, 1).unwrap()]).unwrap()
    }

    fn swap(r: &FiniteRing) -> StructuredIso {
        StructuredIso::new(
            r,
            vec![
                IsoPair {
                    from: 0,
                    to: 1,
                    twist: 0,
                },
                IsoPair {
                    from: 1,
                    to: 0,
                    twist: 0,
                },
            ],
        )
        .unwrap()
    }

    #[test]
    fn swap_squared_is_identity() {
        let r = f3sq();
        let s = swap(&r);
        assert_eq!(compose(&r, &s, &s), StructuredIso::identity(r.full_support()));
    }

    #[test]
    fn swap_not_compatible_with_identity() {
        let r = f3sq();
        let id = StructuredIso::identity(r.full_support());
        assert!(!is_compatible(&r, &swap(&r), &id).unwrap());
        assert!(is_compatible(&r, &id, &id).unwrap());
        assert!(!natural_leq_iso(&swap(&r), &id));
    }

    #[test]
    fn join_of_complementary_identities() {
        let r = f3sq();
        let a = StructuredIso::identity(Support::single(0));
        let b = StructuredIso::identity(Support::single(1));
        let j = join_sum(&r, &[a.clone(), b]).unwrap();
        assert_eq!(j, StructuredIso::identity(r.full_support()));
        assert!(natural_leq_iso(&a, &j));
    }

    #[test]
    fn f_compose_inverse_is_identity_on_image() {
        let r = f3sq();
        let f = StructuredIso::new(
            &r,
            vec![IsoPair {
                from: 0,
                to: 1,
                twist: 0,
            }],
        )
        .unwrap();
        assert_eq!(
            compose(&r, &f, &f.inverse(&r)),
            StructuredIso::identity(Support::single(1))
        );
    }
}
