//! Inverse semigroups with zero: strong compatibility, the τ congruence,
//! primitive semigroups as groupoids, and partial actions on both sides.

use crate::action::UnitalAction;
use crate::correspondence::{build_report, enumerate_beta_maximal, CorrespondenceOptions, CorrespondenceReport};
use crate::error::{Error, Result};
use crate::galois::is_galois;
use crate::iso_pu::{compose, join_sum, natural_leq_iso};
use crate::ring::{Atom, FiniteRing, IsoPair, StructuredIso, Support};
use crate::semigroup::{InverseSemigroup, UnionFind};

fn zero_of(s: &InverseSemigroup) -> Result<usize> {
    s.zero().ok_or(Error::NoZero)
}

/// `s ≈ t`: both zero, or both nonzero with `s⁻¹t, st⁻¹ ∈ E(S)*`.
pub fn strongly_compatible(s: &InverseSemigroup, a: usize, b: usize) -> Result<bool> {
    let z = zero_of(s)?;
    if a == z || b == z {
        return Ok(a == b);
    }
    let l = s.mul(s.inv(a), b);
    let r = s.mul(a, s.inv(b));
    Ok(l != z && r != z && s.is_idempotent(l) && s.is_idempotent(r))
}

pub fn is_0_e_unitary(s: &InverseSemigroup) -> Result<bool> {
    let z = zero_of(s)?;
    let n = s.len();
    Ok((0..n).all(|x| s.is_idempotent(x) || !(0..n).any(|e| e != z && s.is_idempotent(e) && s.natural_leq(e, x))))
}

pub fn is_categorical_at_zero(s: &InverseSemigroup) -> Result<bool> {
    let z = zero_of(s)?;
    let n = s.len();
    for a in 0..n {
        for b in 0..n {
            let ab = s.mul(a, b);
            for c in 0..n {
                if s.mul(ab, c) == z && ab != z && s.mul(b, c) != z {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// `≤` is equality on `S*`.
pub fn is_primitive(s: &InverseSemigroup) -> Result<bool> {
    let z = zero_of(s)?;
    let n = s.len();
    Ok((0..n).all(|a| (0..n).all(|b| a == z || b == z || a == b || !s.natural_leq(a, b))))
}

/// The τ classes, with the checks that hold under the hypotheses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauPartition {
    pub projection: Vec<usize>,
    pub classes: Vec<Vec<usize>>,
    pub zero_e_unitary: bool,
    pub categorical: bool,
    /// τ was compared with ≈ (only under both hypotheses).
    pub approx_checked: bool,
    /// `S/τ`, built when `S` is categorical at zero.
    pub quotient: Option<InverseSemigroup>,
}

/// Transitive closure of "both zero, or a common nonzero lower bound".
///
/// Under 0-E-unitarity and categoricity at zero the result must equal ≈,
/// and on categorical-at-zero semigroups the quotient must be primitive
/// and 0-restricted; a mismatch is an error.
pub fn tau_partition(s: &InverseSemigroup) -> Result<TauPartition> {
    let z = zero_of(s)?;
    let n = s.len();
    let mut uf = UnionFind::new(n);
    for u in (0..n).filter(|&u| u != z) {
        let mut first = None;
        for x in 0..n {
            if s.natural_leq(u, x) {
                match first {
                    None => first = Some(x),
                    Some(f) => uf.union(f, x),
                }
            }
        }
    }
    let (projection, classes) = uf.projection();
    let zero_e_unitary = is_0_e_unitary(s)?;
    let categorical = is_categorical_at_zero(s)?;
    let approx_checked = zero_e_unitary && categorical;
    if approx_checked {
        for a in 0..n {
            for b in 0..n {
                if (projection[a] == projection[b]) != strongly_compatible(s, a, b)? {
                    return Err(Error::EquivalenceViolation(format!(
                        "tau and strong compatibility differ at ({}, {})",
                        s.name(a),
                        s.name(b)
                    )));
                }
            }
        }
    }
    let quotient = if categorical {
        let zc = projection[z];
        if classes[zc].len() != 1 {
            return Err(Error::NotPrimitive("class of zero is not {0}".into()));
        }
        let table = s
            .quotient_table(&projection, &classes)
            .ok_or_else(|| Error::NotPrimitive("tau is not a congruence".into()))?;
        let names = classes.iter().map(|c| s.name(c[0]).to_string()).collect();
        let q = InverseSemigroup::from_table(table, Some(zc), Some(names))?;
        if !is_primitive(&q)? {
            return Err(Error::NotPrimitive("quotient by tau".into()));
        }
        Some(q)
    } else {
        None
    };
    Ok(TauPartition {
        projection,
        classes,
        zero_e_unitary,
        categorical,
        approx_checked,
        quotient,
    })
}

/// For `s ≈ t` nonzero: `s ∧ t = ss⁻¹t = st⁻¹t` is nonzero with range
/// `ss⁻¹tt⁻¹` and domain `s⁻¹st⁻¹t`.
pub fn meet_formulas_check(s: &InverseSemigroup, a: usize, b: usize) -> Result<bool> {
    let z = zero_of(s)?;
    if a == z || b == z || !strongly_compatible(s, a, b)? {
        return Err(Error::NotStronglyCompatible {
            s: s.name(a).to_string(),
            t: s.name(b).to_string(),
        });
    }
    let (ai, bi) = (s.inv(a), s.inv(b));
    let m = s.mul(s.mul(a, ai), b);
    let alt = s.mul(a, s.mul(bi, b));
    let range = s.mul(s.mul(a, ai), s.mul(b, bi));
    let domain = s.mul(s.mul(ai, a), s.mul(bi, b));
    Ok(s.meet(a, b) == Some(m) && m != z && m == alt && s.mul(m, s.inv(m)) == range && s.mul(s.inv(m), m) == domain)
}

/// A finite groupoid with a partial product table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Groupoid {
    names: Vec<String>,
    product: Vec<Option<usize>>,
    d: Vec<usize>,
    r: Vec<usize>,
    inv: Vec<usize>,
    identities: Vec<usize>,
}

impl Groupoid {
    /// Validate the groupoid axioms exhaustively.
    pub fn new(names: Vec<String>, table: Vec<Vec<Option<usize>>>) -> Result<Self> {
        let n = names.len();
        let bad = |m: String| Err(Error::InvalidGroupoid(m));
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return bad(format!("table must be {n}x{n}"));
        }
        if table.iter().flatten().flatten().any(|&x| x >= n) {
            return bad("product out of range".into());
        }
        let product: Vec<Option<usize>> = table.into_iter().flatten().collect();
        let mul = |g: usize, h: usize| product[g * n + h];
        let nm = |g: usize| names[g].clone();
        for g in 0..n {
            for h in 0..n {
                for l in 0..n {
                    let left = mul(h, l).and_then(|hl| mul(g, hl));
                    let right = mul(g, h).and_then(|gh| mul(gh, l));
                    if left != right {
                        return bad(format!("associativity at ({}, {}, {})", nm(g), nm(h), nm(l)));
                    }
                    if mul(h, l).is_some() && left.is_some() != mul(g, h).is_some() {
                        return bad(format!("composability at ({}, {}, {})", nm(g), nm(h), nm(l)));
                    }
                }
            }
        }
        let identities: Vec<usize> = (0..n)
            .filter(|&e| {
                mul(e, e) == Some(e)
                    && (0..n).all(|g| mul(g, e).is_none_or(|x| x == g) && mul(e, g).is_none_or(|x| x == g))
            })
            .collect();
        let mut d = Vec::with_capacity(n);
        let mut r = Vec::with_capacity(n);
        let mut inv = Vec::with_capacity(n);
        for g in 0..n {
            let ds: Vec<usize> = identities.iter().copied().filter(|&e| mul(g, e).is_some()).collect();
            let rs: Vec<usize> = identities.iter().copied().filter(|&e| mul(e, g).is_some()).collect();
            if ds.len() != 1 || rs.len() != 1 {
                return bad(format!("{} needs exactly one source and one range identity", nm(g)));
            }
            let gi = (0..n).find(|&h| mul(g, h) == Some(rs[0]) && mul(h, g) == Some(ds[0]));
            match gi {
                Some(h) => inv.push(h),
                None => return bad(format!("{} has no inverse", nm(g))),
            }
            d.push(ds[0]);
            r.push(rs[0]);
        }
        Ok(Groupoid {
            names,
            product,
            d,
            r,
            inv,
            identities,
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }
    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
    pub fn mul(&self, g: usize, h: usize) -> Option<usize> {
        self.product[g * self.len() + h]
    }
    pub fn names(&self) -> &[String] {
        &self.names
    }
    pub fn d(&self, g: usize) -> usize {
        self.d[g]
    }
    pub fn r(&self, g: usize) -> usize {
        self.r[g]
    }
    pub fn inv(&self, g: usize) -> usize {
        self.inv[g]
    }
    pub fn identities(&self) -> &[usize] {
        &self.identities
    }
}

fn nonzero_indices(s: &InverseSemigroup, z: usize) -> Vec<usize> {
    (0..s.len()).filter(|&x| x != z).collect()
}

/// `S*` with `s·t = st` whenever `st ≠ 0`.
pub fn primitive_to_groupoid(s: &InverseSemigroup) -> Result<Groupoid> {
    let z = zero_of(s)?;
    if !is_primitive(s)? {
        return Err(Error::NotPrimitive(
            "natural order is not equality on nonzero elements".into(),
        ));
    }
    let keep = nonzero_indices(s, z);
    let mut pos = vec![usize::MAX; s.len()];
    for (i, &x) in keep.iter().enumerate() {
        pos[x] = i;
    }
    let table = keep
        .iter()
        .map(|&a| {
            keep.iter()
                .map(|&b| {
                    let c = s.mul(a, b);
                    (c != z).then(|| pos[c])
                })
                .collect()
        })
        .collect();
    let names = keep.iter().map(|&x| s.name(x).to_string()).collect();
    Groupoid::new(names, table)
}

/// `𝒢 ∪ {0}` with undefined products sent to `0`; the zero is the last index.
pub fn groupoid_to_primitive(g: &Groupoid) -> Result<InverseSemigroup> {
    let n = g.len();
    let table = (0..=n)
        .map(|a| {
            (0..=n)
                .map(|b| if a == n || b == n { n } else { g.mul(a, b).unwrap_or(n) })
                .collect()
        })
        .collect();
    let mut names = g.names.clone();
    names.push("0".into());
    let s = InverseSemigroup::from_table(table, Some(n), Some(names))?;
    if !is_primitive(&s)? {
        return Err(Error::NotPrimitive("groupoid with zero".into()));
    }
    Ok(s)
}

/// Relabel so the zero comes last, keeping the other elements in order.
pub fn zero_last(s: &InverseSemigroup) -> Result<InverseSemigroup> {
    let z = zero_of(s)?;
    let mut perm = nonzero_indices(s, z);
    perm.push(z);
    s.relabel(&perm)
}

/// Per-index data `(A_s, α_s)` with `α_s: A_{s⁻¹} → A_s`.
fn check_ideal_data(
    ring: &FiniteRing,
    isos: &[StructuredIso],
    inv: impl Fn(usize) -> usize,
    range_of: impl Fn(usize) -> usize,
    name: impl Fn(usize) -> String,
) -> Result<()> {
    for (s, f) in isos.iter().enumerate() {
        StructuredIso::new(ring, f.pairs().to_vec()).map_err(|e| Error::AxiomFail {
            tag: "ideals".into(),
            detail: format!("{}: {e}", name(s)),
        })?;
        if f.dom() != isos[inv(s)].im() {
            return Err(Error::AxiomFail {
                tag: "ideals".into(),
                detail: format!("domain of {} is not the ideal of its inverse", name(s)),
            });
        }
        if !f.im().is_subset(isos[range_of(s)].im()) {
            return Err(Error::AxiomFail {
                tag: "ideals".into(),
                detail: format!("ideal of {} is not inside the ideal of its range", name(s)),
            });
        }
    }
    Ok(())
}

/// Indices of `g`, `h`, `gh` and `(gh)⁻¹`.
struct Product {
    g: usize,
    h: usize,
    gh: usize,
    gh_inv: usize,
}

fn pair_axioms(
    ring: &FiniteRing,
    isos: &[StructuredIso],
    Product { g, h, gh, gh_inv }: Product,
    tags: (&str, &str),
    name: impl Fn(usize) -> String,
) -> Result<()> {
    let prod = compose(ring, &isos[g], &isos[h]);
    if !prod.dom().is_subset(isos[gh_inv].im()) {
        return Err(Error::AxiomFail {
            tag: tags.0.into(),
            detail: format!("({}, {})", name(g), name(h)),
        });
    }
    if !natural_leq_iso(&prod, &isos[gh]) {
        return Err(Error::AxiomFail {
            tag: tags.1.into(),
            detail: format!("({}, {})", name(g), name(h)),
        });
    }
    Ok(())
}

/// A partial action of an inverse semigroup with zero (PIS0 to PIS3).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroPartialAction {
    sg: InverseSemigroup,
    ring: FiniteRing,
    isos: Vec<StructuredIso>,
}

impl ZeroPartialAction {
    pub fn new(sg: InverseSemigroup, ring: FiniteRing, isos: Vec<StructuredIso>) -> Result<Self> {
        if isos.len() != sg.len() {
            return Err(Error::IndexOutOfRange {
                index: isos.len(),
                n: sg.len(),
            });
        }
        let a = ZeroPartialAction { sg, ring, isos };
        a.validate()?;
        Ok(a)
    }

    /// A global action is a partial one.
    pub fn from_unital(act: &UnitalAction) -> Result<Self> {
        Self::new(act.semigroup().clone(), act.ring().clone(), act.isos().to_vec())
    }

    pub fn semigroup(&self) -> &InverseSemigroup {
        &self.sg
    }
    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }
    pub fn isos(&self) -> &[StructuredIso] {
        &self.isos
    }

    pub fn validate(&self) -> Result<()> {
        let s = &self.sg;
        let z = zero_of(s)?;
        let name = |x: usize| s.name(x).to_string();
        if !self.isos[z].is_empty() {
            return Err(Error::AxiomFail {
                tag: "PIS0".into(),
                detail: "A_0 is not zero".into(),
            });
        }
        check_ideal_data(&self.ring, &self.isos, |x| s.inv(x), |x| s.mul(x, s.inv(x)), name)?;
        let cover = s
            .idempotents()
            .iter()
            .fold(Support::EMPTY, |acc, &e| acc.union(self.isos[e].im()));
        if cover != self.ring.full_support() {
            return Err(Error::AxiomFail {
                tag: "PIS1".into(),
                detail: "idempotent ideals do not cover A".into(),
            });
        }
        for a in 0..s.len() {
            for b in 0..s.len() {
                let ab = s.mul(a, b);
                pair_axioms(
                    &self.ring,
                    &self.isos,
                    Product {
                        g: a,
                        h: b,
                        gh: ab,
                        gh_inv: s.inv(ab),
                    },
                    ("PIS2", "PIS3"),
                    name,
                )?;
            }
        }
        Ok(())
    }

    /// The restriction `α*` to the groupoid `S*` (requires `S` primitive).
    pub fn to_groupoid_action(&self) -> Result<GroupoidAction> {
        let z = zero_of(&self.sg)?;
        let groupoid = primitive_to_groupoid(&self.sg)?;
        let isos = nonzero_indices(&self.sg, z)
            .iter()
            .map(|&x| self.isos[x].clone())
            .collect();
        GroupoidAction::new(groupoid, self.ring.clone(), isos)
    }
}

/// An orthogonal partial groupoid action (PGr0 to PGr3).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupoidAction {
    groupoid: Groupoid,
    ring: FiniteRing,
    isos: Vec<StructuredIso>,
}

impl GroupoidAction {
    pub fn new(groupoid: Groupoid, ring: FiniteRing, isos: Vec<StructuredIso>) -> Result<Self> {
        if isos.len() != groupoid.len() {
            return Err(Error::IndexOutOfRange {
                index: isos.len(),
                n: groupoid.len(),
            });
        }
        let a = GroupoidAction { groupoid, ring, isos };
        a.validate()?;
        Ok(a)
    }

    pub fn groupoid(&self) -> &Groupoid {
        &self.groupoid
    }
    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }
    pub fn isos(&self) -> &[StructuredIso] {
        &self.isos
    }

    pub fn validate(&self) -> Result<()> {
        let g = &self.groupoid;
        let name = |x: usize| g.names[x].clone();
        check_ideal_data(&self.ring, &self.isos, |x| g.inv(x), |x| g.r(x), name)?;
        let mut cover = Support::EMPTY;
        let mut disjoint = true;
        for &e in g.identities() {
            let sup = self.isos[e].im();
            disjoint &= cover.intersect(sup).is_empty();
            cover = cover.union(sup);
        }
        if cover != self.ring.full_support() {
            return Err(Error::AxiomFail {
                tag: "PGr1".into(),
                detail: "identity ideals do not cover A".into(),
            });
        }
        if !disjoint {
            return Err(Error::AxiomFail {
                tag: "PGr0".into(),
                detail: "identity ideals overlap".into(),
            });
        }
        for a in 0..g.len() {
            for b in 0..g.len() {
                if let Some(ab) = g.mul(a, b) {
                    pair_axioms(
                        &self.ring,
                        &self.isos,
                        Product {
                            g: a,
                            h: b,
                            gh: ab,
                            gh_inv: g.inv(ab),
                        },
                        ("PGr2", "PGr3"),
                        name,
                    )?;
                }
            }
        }
        Ok(())
    }

    /// `γ⁰`: adjoin the zero, acting on the zero ideal.
    pub fn to_zero_action(&self) -> Result<ZeroPartialAction> {
        let sg = groupoid_to_primitive(&self.groupoid)?;
        let mut isos = self.isos.clone();
        isos.push(StructuredIso::empty());
        ZeroPartialAction::new(sg, self.ring.clone(), isos)
    }
}

/// Both conversion round trips for a partial action of a primitive semigroup:
/// `(α*)⁰` against `α` with the zero moved last, and `((α*)⁰)*` against `α*`.
pub fn conversion_round_trips(alpha: &ZeroPartialAction) -> Result<bool> {
    let star = alpha.to_groupoid_action()?;
    let back = star.to_zero_action()?;
    let z = zero_of(&alpha.sg)?;
    let mut perm = nonzero_indices(&alpha.sg, z);
    perm.push(z);
    let relabeled = ZeroPartialAction {
        sg: zero_last(&alpha.sg)?,
        ring: alpha.ring.clone(),
        isos: perm.iter().map(|&x| alpha.isos[x].clone()).collect(),
    };
    Ok(back == relabeled && back.to_groupoid_action()? == star)
}

/// The groupoid that is a disjoint union of Brandt groupoids: part
/// `(k, m)` has objects `0..k` and vertex group `C_m`, with elements
/// `(i, a, j)` and `(i, a, j)(j, b, l) = (i, a+b, l)`.
pub fn brandt_groupoid(parts: &[(usize, usize)]) -> Result<Groupoid> {
    let elems = brandt_elements(parts);
    let n = elems.len();
    let table = elems
        .iter()
        .map(|&(p, i, a, j)| {
            elems
                .iter()
                .map(|&(q, j2, b, l)| {
                    (p == q && j == j2).then(|| {
                        let m = parts[p].1;
                        elems.iter().position(|&x| x == (p, i, (a + b) % m, l)).expect("closed")
                    })
                })
                .collect()
        })
        .collect();
    let names = elems
        .iter()
        .map(|&(p, i, a, j)| format!("p{p}:{i}.{a}.{j}"))
        .collect::<Vec<_>>();
    debug_assert_eq!(names.len(), n);
    Groupoid::new(names, table)
}

fn brandt_elements(parts: &[(usize, usize)]) -> Vec<(usize, usize, usize, usize)> {
    let mut out = Vec::new();
    for (p, &(k, m)) in parts.iter().enumerate() {
        for i in 0..k {
            for a in 0..m {
                for j in 0..k {
                    out.push((p, i, a, j));
                }
            }
        }
    }
    out
}

/// Global orthogonal action of [`brandt_groupoid`]: object `i` of part `p`
/// owns one copy of `atoms[p]`, and `(i, a, j)` carries copy `j` onto copy
/// `i` through the `a`-th Frobenius power. Needs the twist period of
/// `atoms[p]` to divide `m`.
pub fn brandt_action(parts: &[(usize, usize)], atoms: &[Atom]) -> Result<GroupoidAction> {
    let groupoid = brandt_groupoid(parts)?;
    let mut ring_atoms = Vec::new();
    let mut first = Vec::new();
    for (p, &(k, m)) in parts.iter().enumerate() {
        if m % atoms[p].twist_period() as usize != 0 {
            return Err(Error::PreconditionFail(format!(
                "twist period {} does not divide {m}",
                atoms[p].twist_period()
            )));
        }
        first.push(ring_atoms.len());
        ring_atoms.extend(std::iter::repeat_n(atoms[p].clone(), k));
    }
    let ring = FiniteRing::new(ring_atoms)?;
    let isos = brandt_elements(parts)
        .iter()
        .map(|&(p, i, a, j)| {
            let period = atoms[p].twist_period() as usize;
            StructuredIso::new(
                &ring,
                vec![IsoPair {
                    from: first[p] + j,
                    to: first[p] + i,
                    twist: (a % period) as u32,
                }],
            )
        })
        .collect::<Result<Vec<_>>>()?;
    GroupoidAction::new(groupoid, ring, isos)
}

/// `P′ = {α_f}` with `α_f` the join over `τ(f)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PPrime {
    /// Indexed by τ class.
    pub alphas: Vec<StructuredIso>,
    /// `odot[c][d]`: class of `α_c ☉ α_d`, when the unique bound exists.
    pub odot: Vec<Vec<Option<usize>>>,
    pub zero_class: usize,
    pub primitive: bool,
    /// `τ(f) ↦ α_f` is a bijection carrying `S/τ` onto `(P′, ☉)`.
    pub isomorphic: bool,
}

pub fn p_prime_construction(act: &UnitalAction) -> Result<PPrime> {
    let s = act.semigroup();
    if s.zero().is_none() {
        return Err(Error::PreconditionFail("semigroup has no zero".into()));
    }
    if !is_0_e_unitary(s)? || !is_categorical_at_zero(s)? {
        return Err(Error::PreconditionFail(
            "needs 0-E-unitary and categorical at zero".into(),
        ));
    }
    if !act.is_injective() {
        return Err(Error::PreconditionFail("action is not injective".into()));
    }
    let tau = tau_partition(s)?;
    let quotient = tau.quotient.as_ref().expect("categorical at zero");
    let ring = act.ring();
    let alphas = tau
        .classes
        .iter()
        .map(|c| join_sum(ring, &c.iter().map(|&x| act.iso(x).clone()).collect::<Vec<_>>()))
        .collect::<Result<Vec<_>>>()?;
    let k = alphas.len();
    let zero_class = quotient.zero().expect("zero");
    let mut odot = vec![vec![None; k]; k];
    for c in 0..k {
        for d in 0..k {
            let prod = compose(ring, &alphas[c], &alphas[d]);
            odot[c][d] = if prod.is_empty() {
                Some(zero_class)
            } else {
                let above: Vec<usize> = (0..k)
                    .filter(|&g| g != zero_class && natural_leq_iso(&prod, &alphas[g]))
                    .collect();
                (above.len() == 1).then(|| above[0])
            };
        }
    }
    let distinct = alphas.iter().collect::<std::collections::HashSet<_>>().len() == k;
    let structure_ok = alphas[zero_class].is_empty()
        && s.idempotents().iter().all(|&e| alphas[tau.projection[e]].is_identity())
        && alphas.iter().all(|a| alphas.contains(&a.inverse(ring)));
    let table = quotient.raw_table();
    let isomorphic = distinct && structure_ok && (0..k).all(|c| (0..k).all(|d| odot[c][d] == Some(table[c][d])));
    let primitive = isomorphic && is_primitive(quotient)?;
    Ok(PPrime {
        alphas,
        odot,
        zero_class,
        primitive,
        isomorphic,
    })
}

/// Correspondence for categorical-at-zero semigroups: β-maximal `T`
/// against separable β-strong subalgebras.
pub fn verify_zero_correspondence(act: &UnitalAction, opts: &CorrespondenceOptions) -> Result<CorrespondenceReport> {
    let s = act.semigroup();
    let z = s
        .zero()
        .ok_or_else(|| Error::PreconditionFail("semigroup has no zero".into()))?;
    if !is_categorical_at_zero(s)? {
        return Err(Error::PreconditionFail("semigroup is not categorical at zero".into()));
    }
    for x in (0..s.len()).filter(|&x| x != z) {
        if act.iso(x).is_empty() {
            return Err(Error::PreconditionFail(format!("ideal of {} is zero", s.name(x))));
        }
    }
    if !act.iso(z).is_empty() {
        return Err(Error::PreconditionFail("zero does not act on the zero ideal".into()));
    }
    let lin = act.linear();
    if !is_galois(&lin) {
        return Err(Error::PreconditionFail("extension is not Galois".into()));
    }
    let candidates = enumerate_beta_maximal(act)?;
    let mut report = build_report("zero", act, &lin, candidates, opts)?;
    if is_0_e_unitary(s)? && act.is_injective() {
        let pp = p_prime_construction(act)?;
        if !pp.isomorphic || !pp.primitive {
            report.failures.push("P' is not a primitive copy of S/tau".into());
        }
    }
    report.verdict = report.failures.is_empty();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::validate_action;
    use crate::correspondence::verify_e_unitary_correspondence;
    use crate::fixtures;

    fn semilattice_with_zero() -> UnitalAction {
        let ring = FiniteRing::new(vec![fixtures::f3()]).unwrap();
        let sg = InverseSemigroup::from_table(vec![vec![0, 1], vec![1, 1]], Some(1), None).unwrap();
        validate_action(
            sg,
            ring.clone(),
            vec![StructuredIso::identity(ring.full_support()), StructuredIso::empty()],
        )
        .unwrap()
    }

    #[test]
    fn strong_compatibility_on_b2() {
        let b2 = fixtures::b2_semigroup();
        assert!(strongly_compatible(&b2, 0, 0).unwrap());
        assert!(strongly_compatible(&b2, 1, 1).unwrap());
        assert!(!strongly_compatible(&b2, 1, 4).unwrap());
        assert!(!strongly_compatible(&b2, 0, 1).unwrap());
        let no_zero = fixtures::clifford5();
        assert_eq!(strongly_compatible(&no_zero, 0, 0), Err(Error::NoZero));
    }

    #[test]
    fn b2_flags_and_tau() {
        let b2 = fixtures::b2_semigroup();
        assert!(is_0_e_unitary(&b2).unwrap());
        assert!(is_categorical_at_zero(&b2).unwrap());
        assert!(is_primitive(&b2).unwrap());
        let t = tau_partition(&b2).unwrap();
        assert!(t.approx_checked);
        assert!(t.classes.iter().all(|c| c.len() == 1));
        for a in 1..5 {
            assert!(meet_formulas_check(&b2, a, a).unwrap());
        }
        assert!(matches!(
            meet_formulas_check(&b2, 1, 2),
            Err(Error::NotStronglyCompatible { .. })
        ));
    }

    #[test]
    fn chain_with_zero_merges_nonzero_idempotents() {
        // 1 > e > 0
        let s = InverseSemigroup::from_table(vec![vec![0, 1, 2], vec![1, 1, 2], vec![2, 2, 2]], Some(2), None).unwrap();
        let t = tau_partition(&s).unwrap();
        assert_eq!(t.classes, vec![vec![0, 1], vec![2]]);
        assert!(meet_formulas_check(&s, 0, 1).unwrap());
    }

    #[test]
    fn not_categorical() {
        // {1, e, f, 0} with ef = 0: e·1·f = 0 while e·1 and 1·f are nonzero
        let s = InverseSemigroup::from_table(
            vec![vec![0, 1, 2, 3], vec![1, 1, 3, 3], vec![2, 3, 2, 3], vec![3, 3, 3, 3]],
            Some(3),
            None,
        )
        .unwrap();
        assert!(!is_categorical_at_zero(&s).unwrap());
        let t = tau_partition(&s).unwrap();
        assert!(t.quotient.is_none() && !t.approx_checked);
    }

    #[test]
    fn groupoid_round_trips() {
        let b2 = fixtures::b2_semigroup();
        let g = primitive_to_groupoid(&b2).unwrap();
        assert_eq!(g.identities().len(), 2);
        let back = groupoid_to_primitive(&g).unwrap();
        assert_eq!(back, zero_last(&b2).unwrap());
        assert_eq!(primitive_to_groupoid(&back).unwrap(), g);
        let one = primitive_to_groupoid(&fixtures::cyclic_with_zero(3)).unwrap();
        assert_eq!(one.identities(), &[0]);
        let bg = brandt_groupoid(&[(2, 1)]).unwrap();
        let bs = groupoid_to_primitive(&bg).unwrap();
        assert_eq!(bs.len(), 5);
        assert!(is_categorical_at_zero(&bs).unwrap());
        let chain =
            InverseSemigroup::from_table(vec![vec![0, 1, 2], vec![1, 1, 2], vec![2, 2, 2]], Some(2), None).unwrap();
        assert!(matches!(primitive_to_groupoid(&chain), Err(Error::NotPrimitive(_))));
    }

    #[test]
    fn b2_action_converts() {
        let alpha = ZeroPartialAction::from_unital(&fixtures::b2()).unwrap();
        let star = alpha.to_groupoid_action().unwrap();
        assert_eq!(star.groupoid().identities().len(), 2);
        assert!(conversion_round_trips(&alpha).unwrap());
        let ga = brandt_action(&[(2, 2), (1, 1)], &[fixtures::f9(), fixtures::f3()]).unwrap();
        assert_eq!(ga.to_zero_action().unwrap().to_groupoid_action().unwrap(), ga);
    }

    #[test]
    fn axiom_failures_are_tagged() {
        let act = fixtures::b2();
        let mut isos = act.isos().to_vec();
        isos[0] = StructuredIso::identity(Support::single(0));
        let err = ZeroPartialAction::new(act.semigroup().clone(), act.ring().clone(), isos).unwrap_err();
        assert!(matches!(err, Error::AxiomFail { ref tag, .. } if tag == "PIS0"));
        let g = primitive_to_groupoid(act.semigroup()).unwrap();
        let mut gi: Vec<StructuredIso> = act.isos()[1..].to_vec();
        // e11 acting on all of A overlaps e22
        gi[0] = StructuredIso::identity(act.ring().full_support());
        assert!(GroupoidAction::new(g, act.ring().clone(), gi).is_err());
    }

    #[test]
    fn p_prime_on_b2_and_c2() {
        let pp = p_prime_construction(&fixtures::b2()).unwrap();
        assert!(pp.isomorphic && pp.primitive);
        assert_eq!(pp.alphas.len(), 5);
        let pp = p_prime_construction(&fixtures::c2_zero_swap()).unwrap();
        assert!(pp.isomorphic && pp.primitive);
        assert_eq!(pp.alphas.len(), 3);
    }

    #[test]
    fn zero_correspondences() {
        let opts = CorrespondenceOptions {
            brute_force: true,
            ..Default::default()
        };
        let r = verify_zero_correspondence(&fixtures::b2(), &opts).unwrap();
        assert!(r.verdict, "{:?}", r.failures);
        let orders: Vec<&str> = r.entries.iter().map(|e| e.fixed_order.as_str()).collect();
        assert_eq!(orders, vec!["9", "3"]);

        let r = verify_zero_correspondence(&fixtures::c2_zero_swap(), &opts).unwrap();
        let plain = verify_e_unitary_correspondence(&fixtures::c2_swap(), &opts).unwrap();
        assert!(r.verdict, "{:?}", r.failures);
        let a: Vec<&str> = r.entries.iter().map(|e| e.fixed_order.as_str()).collect();
        let b: Vec<&str> = plain.entries.iter().map(|e| e.fixed_order.as_str()).collect();
        assert_eq!(a, b);
        for (x, y) in r.entries.iter().zip(&plain.entries) {
            let mut want = y.members.clone();
            want.push(2);
            assert_eq!(x.members, want);
        }

        let r = verify_zero_correspondence(&semilattice_with_zero(), &opts).unwrap();
        assert!(r.verdict);
        assert_eq!(r.entries.len(), 1);
    }
}
