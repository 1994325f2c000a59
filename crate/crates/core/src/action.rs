//! Unital actions of inverse semigroups on finite commutative rings.

use std::collections::HashMap;

use num_bigint::BigUint;

use crate::algebra::{ModuleGens, PresentedAlgebra, Subalgebra, Tensor, TensorSide};
use crate::error::{Error, Result};
use crate::iso_pu::{compose, join_sum, natural_leq_iso};
use crate::lattice::{Lattice, LinearMap};
use crate::ring::{FiniteRing, RingElement, StructuredIso, Support};
use crate::semigroup::{InverseSemigroup, QuotientGroup, SubSemigroup};

/// `s ↦ β_s` into `Iso_pu(A)`, validated.
#[derive(Clone, Debug)]
pub struct UnitalAction {
    sg: InverseSemigroup,
    ring: FiniteRing,
    isos: Vec<StructuredIso>,
}

/// Check the action axioms: valid isomorphisms, idempotents act as
/// identities, the idempotent ideals cover `A`, and `β_s β_t = β_{st}`.
pub fn validate_action(sg: InverseSemigroup, ring: FiniteRing, isos: Vec<StructuredIso>) -> Result<UnitalAction> {
    if isos.len() != sg.len() {
        return Err(Error::IndexOutOfRange {
            index: isos.len(),
            n: sg.len(),
        });
    }
    for (s, f) in isos.iter().enumerate() {
        StructuredIso::new(&ring, f.pairs().to_vec()).map_err(|e| Error::NonUnitalIdeal {
            s: sg.name(s).to_string(),
            detail: e.to_string(),
        })?;
    }
    for e in sg.idempotents() {
        if !isos[e].is_identity() {
            return Err(Error::IdempotentNotIdentity {
                e: sg.name(e).to_string(),
            });
        }
    }
    let cover = sg
        .idempotents()
        .iter()
        .fold(Support::EMPTY, |acc, &e| acc.union(isos[e].dom()));
    if cover != ring.full_support() {
        return Err(Error::CoverFail);
    }
    for s in 0..sg.len() {
        for t in 0..sg.len() {
            if compose(&ring, &isos[s], &isos[t]) != isos[sg.mul(s, t)] {
                return Err(Error::HomFail {
                    s: sg.name(s).to_string(),
                    t: sg.name(t).to_string(),
                });
            }
        }
    }
    Ok(UnitalAction { sg, ring, isos })
}

impl UnitalAction {
    pub fn semigroup(&self) -> &InverseSemigroup {
        &self.sg
    }
    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }
    pub fn isos(&self) -> &[StructuredIso] {
        &self.isos
    }
    pub fn iso(&self, s: usize) -> &StructuredIso {
        &self.isos[s]
    }

    /// Support of `A_s = im β_s`.
    pub fn ideal(&self, s: usize) -> Support {
        self.isos[s].im()
    }

    pub fn is_injective(&self) -> bool {
        self.first_collision().is_none()
    }

    fn first_collision(&self) -> Option<(usize, usize)> {
        let mut seen: HashMap<&StructuredIso, usize> = HashMap::new();
        for (s, f) in self.isos.iter().enumerate() {
            if let Some(&t) = seen.get(f) {
                return Some((t, s));
            }
            seen.insert(f, s);
        }
        None
    }

    pub fn all_ideals_nonzero(&self) -> bool {
        self.isos.iter().all(|f| !f.is_empty())
    }

    /// Linear data over the coordinate presentation of `A`.
    pub fn linear(&self) -> LinearAction {
        let alg = PresentedAlgebra::from_ring(&self.ring);
        let basis = self.ring.basis();
        let maps = self
            .isos
            .iter()
            .map(|f| basis.iter().map(|b| f.apply_restricted(&self.ring, b).0).collect())
            .collect();
        let units = self.isos.iter().map(|f| self.ring.unit(f.im()).0).collect();
        LinearAction {
            alg,
            sg: self.sg.clone(),
            maps,
            units,
            group: None,
        }
    }

    /// As [`linear`](Self::linear), with the induced partial group action attached.
    pub fn linear_with_group(&self) -> Result<LinearAction> {
        let pga = self.induce_partial_group_action()?;
        let mut lin = self.linear();
        lin.group = Some(pga.linear());
        Ok(lin)
    }

    pub fn invariant_ring(&self) -> Subalgebra {
        self.linear().invariant_ring()
    }

    /// `tr_β(a) = Σ_s β_s(a·1_{s⁻¹})`.
    pub fn trace(&self, a: &RingElement) -> RingElement {
        self.isos.iter().fold(self.ring.zero(), |acc, f| {
            self.ring
                .add(&acc, &f.apply_restricted(&self.ring, a))
                .expect("same ring")
        })
    }

    /// The partial action of `G = S/σ` with `α_{σ(s)}` the join of `σ(s)`.
    pub fn induce_partial_group_action(&self) -> Result<PartialGroupAction> {
        if self.sg.zero().is_some() || !self.sg.is_e_unitary()? {
            return Err(Error::NotEUnitary);
        }
        if let Some((a, b)) = self.first_collision() {
            return Err(Error::NotInjective {
                a: self.sg.name(a).to_string(),
                b: self.sg.name(b).to_string(),
            });
        }
        let group = self.sg.sigma_partition()?;
        let mut isos = Vec::with_capacity(group.order());
        for class in &group.classes {
            let fam: Vec<StructuredIso> = class.iter().map(|&s| self.isos[s].clone()).collect();
            let alpha = join_sum(&self.ring, &fam)?;
            // the unit of A_g as the boolean sum of the 1_t over the class
            let boolean = class.iter().fold(self.ring.zero(), |acc, &t| {
                let u = self.ring.unit(self.isos[t].im());
                let sum = self.ring.add(&acc, &u).expect("same ring");
                self.ring
                    .sub(&sum, &self.ring.mul(&acc, &u).expect("same ring"))
                    .expect("same ring")
            });
            if boolean != self.ring.unit(alpha.im()) {
                return Err(Error::AxiomFail {
                    tag: "boolean-sum".into(),
                    detail: format!("class of {}", self.sg.name(class[0])),
                });
            }
            isos.push(alpha);
        }
        let pga = PartialGroupAction {
            group,
            ring: self.ring.clone(),
            isos,
        };
        pga.validate()?;
        Ok(pga)
    }

    /// `tr^σ(a) = Σ_g α_g(a·1_{g⁻¹})`.
    pub fn sigma_trace(&self, pga: &PartialGroupAction, a: &RingElement) -> RingElement {
        pga.trace(a)
    }

    /// The action of a full inverse subsemigroup `T` (elements renumbered in `T` order).
    pub fn restrict(&self, t: &SubSemigroup) -> Result<UnitalAction> {
        if !t.is_full(&self.sg) {
            return Err(Error::NotFull);
        }
        let members = t.members();
        let pos: HashMap<usize, usize> = members.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let mut raw = Vec::with_capacity(members.len());
        for &a in members {
            let mut row = Vec::with_capacity(members.len());
            for &b in members {
                let p = self.sg.mul(a, b);
                row.push(*pos.get(&p).ok_or_else(|| {
                    Error::NotSubsemigroup(format!("{} * {} leaves the set", self.sg.name(a), self.sg.name(b)))
                })?);
            }
            raw.push(row);
        }
        let names = members.iter().map(|&m| self.sg.name(m).to_string()).collect();
        let zero = self.sg.zero().and_then(|z| pos.get(&z).copied());
        let sub = InverseSemigroup::from_table_assoc(raw, zero, Some(names))?;
        let isos = members.iter().map(|&m| self.isos[m].clone()).collect();
        validate_action(sub, self.ring.clone(), isos)
    }

    /// `β(S)` as an abstract semigroup acting by inclusion, with the projection `S → β(S)`.
    pub fn image_action(&self) -> Result<ImageAction> {
        let mut index: HashMap<StructuredIso, usize> = HashMap::new();
        let mut distinct: Vec<StructuredIso> = Vec::new();
        let mut reps: Vec<usize> = Vec::new();
        let mut projection = Vec::with_capacity(self.sg.len());
        for (s, f) in self.isos.iter().enumerate() {
            let k = *index.entry(f.clone()).or_insert_with(|| {
                distinct.push(f.clone());
                reps.push(s);
                distinct.len() - 1
            });
            projection.push(k);
        }
        let m = distinct.len();
        let raw: Vec<Vec<usize>> = (0..m)
            .map(|a| (0..m).map(|b| projection[self.sg.mul(reps[a], reps[b])]).collect())
            .collect();
        let zero = self.sg.zero().map(|z| projection[z]);
        let names = reps.iter().map(|&s| self.sg.name(s).to_string()).collect();
        let image = InverseSemigroup::from_table(raw, zero, Some(names))?;
        let action = validate_action(image.clone(), self.ring.clone(), distinct)?;
        Ok(ImageAction {
            image,
            action,
            projection,
        })
    }
}

/// `β(S)`, the injective action `β′` on `A`, and `S → β(S)`.
#[derive(Clone, Debug)]
pub struct ImageAction {
    pub image: InverseSemigroup,
    pub action: UnitalAction,
    pub projection: Vec<usize>,
}

/// A unital partial action of a finite group on `A`.
#[derive(Clone, Debug)]
pub struct PartialGroupAction {
    group: QuotientGroup,
    ring: FiniteRing,
    isos: Vec<StructuredIso>,
}

impl PartialGroupAction {
    pub fn new(group: QuotientGroup, ring: FiniteRing, isos: Vec<StructuredIso>) -> Result<Self> {
        let p = PartialGroupAction { group, ring, isos };
        p.validate()?;
        Ok(p)
    }

    pub fn group(&self) -> &QuotientGroup {
        &self.group
    }
    pub fn isos(&self) -> &[StructuredIso] {
        &self.isos
    }

    /// P1: `α_1 = Id_A`; P2: `α_h⁻¹(A_{g⁻¹} ∩ A_h) ⊆ A_{(gh)⁻¹}`;
    /// P3: `α_g α_h ⪯ α_{gh}`.
    pub fn validate(&self) -> Result<()> {
        let g = &self.group;
        if self.isos[g.identity] != StructuredIso::identity(self.ring.full_support()) {
            return Err(Error::AxiomFail {
                tag: "P1".into(),
                detail: "identity class does not act as the identity of A".into(),
            });
        }
        for a in 0..g.order() {
            if self.isos[g.inverse[a]] != self.isos[a].inverse(&self.ring) {
                return Err(Error::AxiomFail {
                    tag: "P1".into(),
                    detail: format!("alpha of the inverse of class {a} is not the inverse map"),
                });
            }
            for b in 0..g.order() {
                let ab = g.mul(a, b);
                let prod = compose(&self.ring, &self.isos[a], &self.isos[b]);
                if !prod.dom().is_subset(self.isos[g.inverse[ab]].im()) {
                    return Err(Error::AxiomFail {
                        tag: "P2".into(),
                        detail: format!("classes {a}, {b}"),
                    });
                }
                if !natural_leq_iso(&prod, &self.isos[ab]) {
                    return Err(Error::AxiomFail {
                        tag: "P3".into(),
                        detail: format!("classes {a}, {b}"),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn trace(&self, a: &RingElement) -> RingElement {
        self.isos.iter().fold(self.ring.zero(), |acc, f| {
            self.ring
                .add(&acc, &f.apply_restricted(&self.ring, a))
                .expect("same ring")
        })
    }

    pub fn linear(&self) -> LinearGroupPart {
        let basis = self.ring.basis();
        LinearGroupPart {
            group: self.group.clone(),
            maps: self
                .isos
                .iter()
                .map(|f| basis.iter().map(|b| f.apply_restricted(&self.ring, b).0).collect())
                .collect(),
            units: self.isos.iter().map(|f| self.ring.unit(f.im()).0).collect(),
        }
    }
}

/// Group part of a [`LinearAction`]: `x ↦ α_g(x·1_{g⁻¹})` per class.
#[derive(Clone, Debug)]
pub struct LinearGroupPart {
    pub group: QuotientGroup,
    pub maps: Vec<Vec<Vec<i64>>>,
    pub units: Vec<Vec<i64>>,
}

/// An action recorded as additive maps on a presented algebra:
/// `maps[s]` sends generator `i` to `β_s(g_i·1_{s⁻¹})`, `units[s] = 1_s`.
#[derive(Clone, Debug)]
pub struct LinearAction {
    pub alg: PresentedAlgebra,
    pub sg: InverseSemigroup,
    pub maps: Vec<Vec<Vec<i64>>>,
    pub units: Vec<Vec<i64>>,
    pub group: Option<LinearGroupPart>,
}

fn stacked_target(alg: &PresentedAlgebra, copies: usize) -> Lattice {
    Lattice::direct_sum(&vec![alg.rel().clone(); copies])
}

impl LinearAction {
    pub fn apply(&self, s: usize, x: &[i64]) -> Vec<i64> {
        self.alg.apply_matrix(&self.maps[s], x)
    }

    /// Invariants of the elements listed in `members`.
    pub fn invariant_of(&self, members: &[usize]) -> Subalgebra {
        Self::invariant_generic(&self.alg, members.iter().map(|&s| (&self.maps[s], &self.units[s])))
    }

    fn invariant_generic<'a, I>(alg: &PresentedAlgebra, parts: I) -> Subalgebra
    where
        I: Iterator<Item = (&'a Vec<Vec<i64>>, &'a Vec<i64>)>,
    {
        let parts: Vec<_> = parts.collect();
        let n = alg.dim();
        if parts.is_empty() {
            return Subalgebra::whole(alg);
        }
        let images: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                let g = alg.gen(i);
                parts
                    .iter()
                    .flat_map(|(m, u)| alg.sub(&m[i], &alg.mul(&g, u)))
                    .collect()
            })
            .collect();
        let ker = LinearMap::new(images, stacked_target(alg, parts.len())).kernel();
        Subalgebra::from_lattice(alg, ker).expect("kernel contains the relations")
    }

    /// `A^β`.
    pub fn invariant_ring(&self) -> Subalgebra {
        self.invariant_of(&(0..self.sg.len()).collect::<Vec<_>>())
    }

    /// `A^α` for the attached group part.
    pub fn group_invariant_ring(&self) -> Option<Subalgebra> {
        self.group
            .as_ref()
            .map(|g| Self::invariant_generic(&self.alg, g.maps.iter().zip(&g.units)))
    }

    fn sum_image(&self, maps: &[Vec<Vec<i64>>]) -> Lattice {
        let n = self.alg.dim();
        let images: Vec<Vec<i64>> = (0..n)
            .map(|i| maps.iter().fold(self.alg.zero(), |acc, m| self.alg.add(&acc, &m[i])))
            .collect();
        LinearMap::new(images, self.alg.rel().clone()).image()
    }

    /// Additive image of `tr_β`.
    pub fn trace_image(&self) -> Lattice {
        self.sum_image(&self.maps)
    }

    /// Additive image of `tr^σ`; `None` without a group part.
    pub fn sigma_trace_image(&self) -> Option<Lattice> {
        self.group.as_ref().map(|g| self.sum_image(&g.maps))
    }

    pub fn trace(&self, x: &[i64]) -> Vec<i64> {
        (0..self.sg.len()).fold(self.alg.zero(), |acc, s| self.alg.add(&acc, &self.apply(s, x)))
    }

    pub fn sigma_trace(&self, x: &[i64]) -> Option<Vec<i64>> {
        self.group.as_ref().map(|g| {
            g.maps.iter().fold(self.alg.zero(), |acc, m| {
                self.alg.add(&acc, &self.alg.apply_matrix(m, x))
            })
        })
    }
}

/// `R ⊗_{A^β} A` with `γ_s = id ⊗ β_s`, plus the image of `R` in it.
#[derive(Clone, Debug)]
pub struct ExtendedAction {
    pub action: LinearAction,
    pub base_image: Subalgebra,
    pub order: BigUint,
}

/// Extend scalars along `φ: A^β → R`, where `phi[l]` is the image of the
/// `l`-th generator of `base` (as listed by `base.generators`).
pub fn extend_scalars(
    lin: &LinearAction,
    base: &Subalgebra,
    r: &PresentedAlgebra,
    phi: &[Vec<i64>],
    limit: &BigUint,
) -> Result<ExtendedAction> {
    let a = &lin.alg;
    let base_gens = base.generators(a);
    if base_gens.len() != phi.len() {
        return Err(Error::NotSubring(
            "structure map must give one image per base generator".into(),
        ));
    }
    let p = r.dim();
    let n = a.dim();
    let mut left = ModuleGens::new(r, (0..p).map(|i| r.gen(i)).collect());
    let mut right = ModuleGens::new(a, (0..n).map(|i| a.gen(i)).collect());
    let tensor = Tensor::build(
        TensorSide {
            alg: r,
            module: &mut left,
            base: phi,
        },
        TensorSide {
            alg: a,
            module: &mut right,
            base: &base_gens,
        },
        limit,
    )?;
    let dim = tensor.dim();
    let unit = |len: usize, i: usize| {
        let mut v = vec![0; len];
        v[i] = 1;
        v
    };
    let mut table = vec![vec![Vec::new(); dim]; dim];
    for i in 0..p {
        for j in 0..n {
            for k in 0..p {
                for l in 0..n {
                    let rr = r.mul(&unit(p, i), &unit(p, k));
                    let aa = a.mul(&unit(n, j), &unit(n, l));
                    table[tensor.index(i, j)][tensor.index(k, l)] = tensor.outer(&rr, &aa);
                }
            }
        }
    }
    let one = tensor.outer(r.one(), a.one());
    let full = PresentedAlgebra::new(tensor.rel().clone(), table, one)?;
    let (alg, compact) = full.compact();
    let k = alg.dim();
    let lifts: Vec<Vec<i64>> = (0..k).map(|c| compact.lift(&unit(k, c))).collect();
    // generator (i, j) ↦ r_i ⊗ m(a_j)
    let push = |m: &Vec<Vec<i64>>| -> Vec<Vec<i64>> {
        let gen_images: Vec<Vec<i64>> = (0..p)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| tensor.outer(&unit(p, i), &m[j]))
            .collect();
        lifts
            .iter()
            .map(|v| {
                let mut acc = vec![0i64; dim];
                for (x, img) in v.iter().zip(&gen_images) {
                    if *x != 0 {
                        for (o, y) in acc.iter_mut().zip(img) {
                            *o += x * y;
                        }
                    }
                }
                compact.project(&acc)
            })
            .collect()
    };
    let maps: Vec<Vec<Vec<i64>>> = lin.maps.iter().map(push).collect();
    let units: Vec<Vec<i64>> = lin
        .units
        .iter()
        .map(|u| compact.project(&tensor.outer(r.one(), u)))
        .collect();
    let group = lin.group.as_ref().map(|g| LinearGroupPart {
        group: g.group.clone(),
        maps: g.maps.iter().map(push).collect(),
        units: g
            .units
            .iter()
            .map(|u| compact.project(&tensor.outer(r.one(), u)))
            .collect(),
    });
    let r_gens: Vec<Vec<i64>> = (0..p)
        .map(|i| compact.project(&tensor.outer(&unit(p, i), a.one())))
        .collect();
    let base_image = Subalgebra::span(&alg, &r_gens);
    let order = alg.order();
    Ok(ExtendedAction {
        action: LinearAction {
            alg,
            sg: lin.sg.clone(),
            maps,
            units,
            group,
        },
        base_image,
        order,
    })
}

/// A subalgebra as an algebra in its own right, with the embedding.
pub fn subalgebra_as_algebra(alg: &PresentedAlgebra, b: &Subalgebra) -> (PresentedAlgebra, ModuleGens) {
    let mut module = ModuleGens::of_subalgebra(alg, b);
    let gens = module.gens().to_vec();
    let table: Vec<Vec<Vec<i64>>> = gens
        .iter()
        .map(|x| {
            gens.iter()
                .map(|y| module.express(&alg.mul(x, y)).expect("subalgebra is closed"))
                .collect()
        })
        .collect();
    let one = module.express(alg.one()).expect("subalgebra contains 1");
    let rel = module.rel().clone();
    let sub = PresentedAlgebra::new(rel, table, one).expect("shapes agree");
    (sub, module)
}

/// `R × R` for a presented `R`, with the diagonal map `R → R × R` on generators.
pub fn square_with_diagonal(r: &PresentedAlgebra) -> (PresentedAlgebra, Vec<Vec<i64>>) {
    let p = r.dim();
    let rel = Lattice::direct_sum(&[r.rel().clone(), r.rel().clone()]);
    let mut table = vec![vec![vec![0i64; 2 * p]; 2 * p]; 2 * p];
    for i in 0..p {
        for k in 0..p {
            let prod = r.mul(&r.gen(i), &r.gen(k));
            table[i][k][..p].copy_from_slice(&prod);
            table[p + i][p + k][p..].copy_from_slice(&prod);
        }
    }
    let mut one = r.one().to_vec();
    one.extend_from_slice(r.one());
    let sq = PresentedAlgebra::new(rel, table, one).expect("shapes agree");
    let diag = (0..p)
        .map(|i| {
            let mut v = r.gen(i);
            v.extend(r.gen(i));
            v
        })
        .collect();
    (sq, diag)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Atom, IsoPair};

    fn c2_swap() -> UnitalAction {
        let sg = InverseSemigroup::from_table(vec![vec![0, 1], vec![1, 0]], None, Some(vec!["1".into(), "g".into()]))
            .unwrap();
        let r = FiniteRing::new(vec![Atom::zmod(3, 1).unwrap(), Atom::zmod(3, 1).unwrap()]).unwrap();
        let id = StructuredIso::identity(r.full_support());
        let sw = StructuredIso::new(
            &r,
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
        .unwrap();
        validate_action(sg, r, vec![id, sw]).unwrap()
    }

    #[test]
    fn swap_invariants_are_the_diagonal() {
        let act = c2_swap();
        let inv = act.invariant_ring();
        let lin = act.linear();
        assert_eq!(inv.order(&lin.alg), BigUint::from(3u32));
        assert!(inv.contains(&[1, 1]));
        assert!(!inv.contains(&[1, 0]));
    }

    #[test]
    fn swap_trace_of_idempotent() {
        let act = c2_swap();
        let t = act.trace(&RingElement(vec![1, 0]));
        assert_eq!(t, RingElement(vec![1, 1]));
        let pga = act.induce_partial_group_action().unwrap();
        assert_eq!(act.sigma_trace(&pga, &act.ring().one()), RingElement(vec![2, 2]));
    }

    #[test]
    fn broken_homomorphism_rejected() {
        let sg = InverseSemigroup::from_table(vec![vec![0, 1], vec![1, 0]], None, None).unwrap();
        let r = FiniteRing::new(vec![Atom::zmod(3, 1).unwrap(), Atom::zmod(3, 1).unwrap()]).unwrap();
        let id = StructuredIso::identity(r.full_support());
        let half = StructuredIso::new(
            &r,
            vec![IsoPair {
                from: 0,
                to: 1,
                twist: 0,
            }],
        )
        .unwrap();
        assert!(matches!(
            validate_action(sg, r, vec![id, half]),
            Err(Error::HomFail { .. })
        ));
    }

    #[test]
    fn cover_failure_detected() {
        let sg = InverseSemigroup::from_table(vec![vec![0]], None, None).unwrap();
        let r = FiniteRing::new(vec![Atom::zmod(3, 1).unwrap(), Atom::zmod(3, 1).unwrap()]).unwrap();
        let id = StructuredIso::identity(Support::single(0));
        assert_eq!(validate_action(sg, r, vec![id]).unwrap_err(), Error::CoverFail);
    }
}
