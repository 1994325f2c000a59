//! Finite inverse semigroups given by multiplication tables.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};

const CLOSURE_CAP: usize = 10_000;
const FULL_SUBSET_GUARD: usize = 16;

/// Validated finite inverse semigroup on indices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InverseSemigroup {
    n: usize,
    table: Vec<usize>,
    inv: Vec<usize>,
    zero: Option<usize>,
    names: Vec<String>,
    idem: Vec<bool>,
    leq: Vec<bool>,
}

/// Plain union-find over `0..n`.
#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }
    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut c = x;
        while self.parent[c] != r {
            let next = self.parent[c];
            self.parent[c] = r;
            c = next;
        }
        r
    }
    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
    /// Class index per element, classes numbered by least member.
    pub(crate) fn projection(&mut self) -> (Vec<usize>, Vec<Vec<usize>>) {
        let n = self.parent.len();
        let mut class_of_root: HashMap<usize, usize> = HashMap::new();
        let mut proj = vec![0; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for (x, p) in proj.iter_mut().enumerate() {
            let r = self.find(x);
            let c = *class_of_root.entry(r).or_insert_with(|| {
                classes.push(Vec::new());
                classes.len() - 1
            });
            classes[c].push(x);
            *p = c;
        }
        (proj, classes)
    }
}

impl InverseSemigroup {
    /// Validate a raw table. Axioms are checked in order: range,
    /// associativity, regularity, commuting idempotents, zero.
    pub fn from_table(raw: Vec<Vec<usize>>, zero: Option<usize>, names: Option<Vec<String>>) -> Result<Self> {
        Self::build(raw, zero, names, true)
    }

    /// As [`from_table`](Self::from_table) but trusting associativity
    /// (tables produced by composing partial maps).
    pub(crate) fn from_table_assoc(
        raw: Vec<Vec<usize>>,
        zero: Option<usize>,
        names: Option<Vec<String>>,
    ) -> Result<Self> {
        Self::build(raw, zero, names, false)
    }

    fn build(raw: Vec<Vec<usize>>, zero: Option<usize>, names: Option<Vec<String>>, check_assoc: bool) -> Result<Self> {
        let n = raw.len();
        if n == 0 {
            return Err(Error::NotSubsemigroup("empty table".into()));
        }
        let names = match names {
            Some(v) if v.len() == n => v,
            Some(v) => {
                return Err(Error::IndexOutOfRange { index: v.len(), n });
            }
            None => (0..n).map(|i| i.to_string()).collect(),
        };
        for row in &raw {
            if row.len() != n {
                return Err(Error::IndexOutOfRange { index: row.len(), n });
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= n) {
                return Err(Error::IndexOutOfRange { index: bad, n });
            }
        }
        if let Some(z) = zero {
            if z >= n {
                return Err(Error::IndexOutOfRange { index: z, n });
            }
        }
        let table: Vec<usize> = raw.into_iter().flatten().collect();
        let m = |a: usize, b: usize| table[a * n + b];
        if check_assoc {
            for a in 0..n {
                for b in 0..n {
                    let ab = m(a, b);
                    for c in 0..n {
                        if m(ab, c) != m(a, m(b, c)) {
                            return Err(Error::NotAssociative {
                                a: names[a].clone(),
                                b: names[b].clone(),
                                c: names[c].clone(),
                            });
                        }
                    }
                }
            }
        }
        let mut some_inv = vec![usize::MAX; n];
        for s in 0..n {
            match (0..n).find(|&t| m(m(s, t), s) == s && m(m(t, s), t) == t) {
                Some(t) => some_inv[s] = t,
                None => return Err(Error::NotRegular { s: names[s].clone() }),
            }
        }
        let idem: Vec<bool> = (0..n).map(|e| m(e, e) == e).collect();
        for e in (0..n).filter(|&e| idem[e]) {
            for f in (e + 1..n).filter(|&f| idem[f]) {
                if m(e, f) != m(f, e) {
                    return Err(Error::IdempotentsDontCommute {
                        e: names[e].clone(),
                        f: names[f].clone(),
                    });
                }
            }
        }
        if let Some(z) = zero {
            if let Some(s) = (0..n).find(|&s| m(z, s) != z || m(s, z) != z) {
                return Err(Error::BadZero {
                    z: names[z].clone(),
                    detail: format!("product with {} is not {}", names[s], names[z]),
                });
            }
        }
        let inv = some_inv;
        let mut leq = vec![false; n * n];
        for s in 0..n {
            let f = m(inv[s], s);
            for t in 0..n {
                leq[s * n + t] = m(t, f) == s;
            }
        }
        Ok(InverseSemigroup {
            n,
            table,
            inv,
            zero,
            names,
            idem,
            leq,
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b]
    }
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }
    pub fn zero(&self) -> Option<usize> {
        self.zero
    }
    pub fn names(&self) -> &[String] {
        &self.names
    }
    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|x| x == name)
    }
    pub fn raw_table(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.n).map(|r| r.to_vec()).collect()
    }
    pub fn is_idempotent(&self, e: usize) -> bool {
        self.idem[e]
    }

    /// `E(S)`, sorted.
    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.n).filter(|&e| self.idem[e]).collect()
    }

    /// `s ⪯ t` iff `s = t·f` for an idempotent `f` (equivalently `f = s⁻¹s`).
    pub fn natural_leq(&self, s: usize, t: usize) -> bool {
        self.leq[s * self.n + t]
    }

    /// `s⁻¹t` and `st⁻¹` are idempotent.
    pub fn compatible(&self, s: usize, t: usize) -> bool {
        self.idem[self.mul(self.inv[s], t)] && self.idem[self.mul(s, self.inv[t])]
    }

    pub fn lower_bounds(&self, s: usize) -> Vec<usize> {
        (0..self.n).filter(|&u| self.natural_leq(u, s)).collect()
    }

    pub fn is_monoid_identity(&self, e: usize) -> bool {
        (0..self.n).all(|s| self.mul(e, s) == s && self.mul(s, e) == s)
    }

    /// Minimum group congruence: transitive closure of "has a common lower bound".
    pub fn sigma_partition(&self) -> Result<QuotientGroup> {
        if self.zero.is_some() {
            return Err(Error::PreconditionFail("sigma needs a semigroup without zero".into()));
        }
        let mut uf = UnionFind::new(self.n);
        for u in 0..self.n {
            let mut first = None;
            for s in 0..self.n {
                if self.natural_leq(u, s) {
                    match first {
                        None => first = Some(s),
                        Some(f) => uf.union(f, s),
                    }
                }
            }
        }
        let (proj, classes) = uf.projection();
        QuotientGroup::from_projection(self, proj, classes)
    }

    /// Decide E-unitarity three ways and insist they agree.
    pub fn is_e_unitary(&self) -> Result<bool> {
        let by_definition =
            (0..self.n).all(|s| self.idem[s] || !(0..self.n).any(|e| self.idem[e] && self.natural_leq(e, s)));
        let q = self.sigma_partition()?;
        let by_compat =
            (0..self.n).all(|s| (0..self.n).all(|t| self.compatible(s, t) == (q.projection[s] == q.projection[t])));
        let e_set = self.idempotents();
        let by_class = e_set.iter().all(|&e| q.classes[q.projection[e]] == e_set);
        if by_definition != by_compat || by_definition != by_class {
            return Err(Error::CharacterizationMismatch(format!(
                "definition={by_definition} compatibility={by_compat} idempotent-class={by_class}"
            )));
        }
        Ok(by_definition)
    }

    /// Greatest common lower bound, if one exists.
    pub fn meet(&self, s: usize, t: usize) -> Option<usize> {
        let common: Vec<usize> = (0..self.n)
            .filter(|&u| self.natural_leq(u, s) && self.natural_leq(u, t))
            .collect();
        common
            .iter()
            .copied()
            .find(|&m| common.iter().all(|&x| self.natural_leq(x, m)))
    }

    /// Least upper bound of a pairwise compatible set.
    pub fn join_of(&self, p: &[usize]) -> Result<Option<usize>> {
        for (i, &a) in p.iter().enumerate() {
            for &b in &p[i + 1..] {
                if !self.compatible(a, b) {
                    return Err(Error::NotCompatible(format!("{} and {}", self.names[a], self.names[b])));
                }
            }
        }
        if p.is_empty() {
            return Ok(None);
        }
        let upper: Vec<usize> = (0..self.n)
            .filter(|&u| p.iter().all(|&x| self.natural_leq(x, u)))
            .collect();
        Ok(upper
            .iter()
            .copied()
            .find(|&j| upper.iter().all(|&u| self.natural_leq(j, u))))
    }

    /// `st` when `s⁻¹s = tt⁻¹`.
    pub fn restricted_product(&self, s: usize, t: usize) -> Option<usize> {
        if self.mul(self.inv[s], s) == self.mul(t, self.inv[t]) {
            Some(self.mul(s, t))
        } else {
            None
        }
    }

    /// `s ≡_T u` iff `u⁻¹·s` is defined and lies in `T`.
    pub fn equiv_t(&self, t: &SubSemigroup, s: usize, u: usize) -> Result<bool> {
        if !t.is_full(self) {
            return Err(Error::NotFull);
        }
        Ok(match self.restricted_product(self.inv[u], s) {
            Some(x) => t.contains(x),
            None => false,
        })
    }

    /// Closed under products and inverses.
    pub fn is_inverse_subsemigroup(&self, members: &[bool]) -> bool {
        let list: Vec<usize> = (0..self.n).filter(|&i| members[i]).collect();
        if list.is_empty() {
            return false;
        }
        list.iter().all(|&a| members[self.inv[a]])
            && list.iter().all(|&a| list.iter().all(|&b| members[self.mul(a, b)]))
    }

    /// Every inverse subsemigroup containing `E(S)`, in bitset order.
    pub fn enumerate_full_inverse_subsemigroups(&self) -> Result<Vec<SubSemigroup>> {
        let rest: Vec<usize> = (0..self.n).filter(|&s| !self.idem[s]).collect();
        if rest.len() > FULL_SUBSET_GUARD {
            return Err(Error::too_large(
                "non-idempotent part",
                rest.len() as u64,
                FULL_SUBSET_GUARD as u64,
            ));
        }
        let mut out = Vec::new();
        for mask in 0u32..(1u32 << rest.len()) {
            let mut members = self.idem.clone();
            for (bit, &s) in rest.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    members[s] = true;
                }
            }
            if self.is_inverse_subsemigroup(&members) {
                out.push(SubSemigroup::from_mask(&members));
            }
        }
        out.sort_by_key(|t| t.bitset_key(self.n));
        Ok(out)
    }

    /// Quotient by an arbitrary partition; fails if it is not a congruence.
    pub fn quotient_table(&self, proj: &[usize], classes: &[Vec<usize>]) -> Option<Vec<Vec<usize>>> {
        let k = classes.len();
        let mut table = vec![vec![usize::MAX; k]; k];
        for a in 0..self.n {
            for b in 0..self.n {
                let c = proj[self.mul(a, b)];
                let slot = &mut table[proj[a]][proj[b]];
                if *slot == usize::MAX {
                    *slot = c;
                } else if *slot != c {
                    return None;
                }
            }
        }
        Some(table)
    }

    /// Relabel with a permutation: new index `i` is old index `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<InverseSemigroup> {
        let mut pos = vec![0; self.n];
        for (i, &o) in perm.iter().enumerate() {
            pos[o] = i;
        }
        let raw: Vec<Vec<usize>> = perm
            .iter()
            .map(|&a| perm.iter().map(|&b| pos[self.mul(a, b)]).collect())
            .collect();
        let names = perm.iter().map(|&a| self.names[a].clone()).collect();
        InverseSemigroup::from_table_assoc(raw, self.zero.map(|z| pos[z]), Some(names))
    }
}

/// A set of elements of a parent semigroup, sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubSemigroup {
    members: Vec<usize>,
}

impl SubSemigroup {
    pub fn new(mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        SubSemigroup { members }
    }

    pub fn from_mask(mask: &[bool]) -> Self {
        SubSemigroup {
            members: (0..mask.len()).filter(|&i| mask[i]).collect(),
        }
    }

    pub fn whole(s: &InverseSemigroup) -> Self {
        SubSemigroup {
            members: (0..s.len()).collect(),
        }
    }

    pub fn idempotents(s: &InverseSemigroup) -> Self {
        SubSemigroup {
            members: s.idempotents(),
        }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }
    pub fn len(&self) -> usize {
        self.members.len()
    }
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn mask(&self, n: usize) -> Vec<bool> {
        let mut m = vec![false; n];
        for &x in &self.members {
            m[x] = true;
        }
        m
    }

    pub fn is_full(&self, s: &InverseSemigroup) -> bool {
        s.idempotents().iter().all(|&e| self.contains(e))
    }

    pub fn is_subset_of(&self, other: &SubSemigroup) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    /// Sort key: the member bitset read as a number, most significant word first.
    pub fn bitset_key(&self, n: usize) -> Vec<u64> {
        let mut words = vec![0u64; n.div_ceil(64).max(1)];
        for &x in &self.members {
            words[x / 64] |= 1 << (x % 64);
        }
        words.reverse();
        words
    }

    pub fn format(&self, s: &InverseSemigroup) -> String {
        let names: Vec<&str> = self.members.iter().map(|&x| s.name(x)).collect();
        format!("{{{}}}", names.join(", "))
    }
}

/// Quotient of a semigroup by a congruence whose quotient is a group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientGroup {
    pub classes: Vec<Vec<usize>>,
    pub table: Vec<Vec<usize>>,
    pub projection: Vec<usize>,
    pub identity: usize,
    pub inverse: Vec<usize>,
}

impl QuotientGroup {
    fn from_projection(s: &InverseSemigroup, projection: Vec<usize>, classes: Vec<Vec<usize>>) -> Result<Self> {
        let table = s
            .quotient_table(&projection, &classes)
            .ok_or_else(|| Error::NotAGroupQuotient("partition is not a congruence".into()))?;
        let k = classes.len();
        let identity = (0..k)
            .find(|&e| (0..k).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| Error::NotAGroupQuotient("no identity class".into()))?;
        let mut inverse = vec![0; k];
        for (g, slot) in inverse.iter_mut().enumerate() {
            *slot = (0..k)
                .find(|&h| table[g][h] == identity && table[h][g] == identity)
                .ok_or_else(|| Error::NotAGroupQuotient(format!("class {g} has no inverse")))?;
        }
        Ok(QuotientGroup {
            classes,
            table,
            projection,
            identity,
            inverse,
        })
    }

    pub fn order(&self) -> usize {
        self.classes.len()
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g][h]
    }

    /// Order of each element, sorted: an isomorphism invariant for small groups.
    pub fn element_orders(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.order())
            .map(|g| {
                let mut x = g;
                let mut k = 1;
                while x != self.identity {
                    x = self.mul(x, g);
                    k += 1;
                }
                k
            })
            .collect();
        v.sort_unstable();
        v
    }

    pub fn is_cyclic_of_order(&self, m: usize) -> bool {
        self.order() == m && self.element_orders().last() == Some(&m)
    }
}

/// A partial injection on `0..points`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialPerm(pub Vec<Option<usize>>);

impl PartialPerm {
    pub fn new(points: usize, map: &[(usize, usize)]) -> Result<Self> {
        let mut v = vec![None; points];
        let mut hit = vec![false; points];
        for &(a, b) in map {
            if a >= points || b >= points {
                return Err(Error::IndexOutOfRange {
                    index: a.max(b),
                    n: points,
                });
            }
            if v[a].is_some() || hit[b] {
                return Err(Error::InvalidIso(format!("{a}>{b} is not injective")));
            }
            v[a] = Some(b);
            hit[b] = true;
        }
        Ok(PartialPerm(v))
    }

    pub fn identity(points: usize) -> Self {
        PartialPerm((0..points).map(Some).collect())
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &PartialPerm) -> PartialPerm {
        PartialPerm(other.0.iter().map(|x| x.and_then(|y| self.0[y])).collect())
    }

    pub fn inverse(&self) -> PartialPerm {
        let mut v = vec![None; self.0.len()];
        for (a, b) in self.0.iter().enumerate() {
            if let Some(b) = b {
                v[*b] = Some(a);
            }
        }
        PartialPerm(v)
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|x| x.is_none())
    }
}

/// A word in named generators and their inverses.
pub type Word = Vec<(usize, bool)>;

pub fn format_word(word: &Word, gen_names: &[String]) -> String {
    word.iter()
        .map(|&(g, inv)| {
            if inv {
                format!("{}^-1", gen_names[g])
            } else {
                gen_names[g].clone()
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Breadth-first closure of partial-permutation generators under product
/// and inverse. Elements are ordered by discovery and named by a shortest word.
pub fn generate_from_partial_perms(
    gen_names: &[String],
    gens: &[PartialPerm],
) -> Result<(InverseSemigroup, Vec<PartialPerm>, Vec<Word>)> {
    let mut letters: Vec<(PartialPerm, (usize, bool))> = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        letters.push((g.clone(), (i, false)));
        letters.push((g.inverse(), (i, true)));
    }
    let mut index: HashMap<PartialPerm, usize> = HashMap::new();
    let mut elems: Vec<PartialPerm> = Vec::new();
    let mut words: Vec<Word> = Vec::new();
    let mut queue = VecDeque::new();
    for (p, l) in &letters {
        if !index.contains_key(p) {
            index.insert(p.clone(), elems.len());
            elems.push(p.clone());
            words.push(vec![*l]);
            queue.push_back(elems.len() - 1);
        }
    }
    while let Some(i) = queue.pop_front() {
        for (p, l) in &letters {
            let q = elems[i].compose(p);
            if !index.contains_key(&q) {
                if elems.len() >= CLOSURE_CAP {
                    return Err(Error::too_large(
                        "generated semigroup",
                        elems.len() as u64 + 1,
                        CLOSURE_CAP as u64,
                    ));
                }
                index.insert(q.clone(), elems.len());
                elems.push(q);
                let mut w = words[i].clone();
                w.push(*l);
                words.push(w);
                queue.push_back(elems.len() - 1);
            }
        }
    }
    let n = elems.len();
    let raw: Vec<Vec<usize>> = (0..n)
        .map(|a| (0..n).map(|b| index[&elems[a].compose(&elems[b])]).collect())
        .collect();
    let zero = elems.iter().position(|p| p.is_empty());
    let names: Vec<String> = words.iter().map(|w| format_word(w, gen_names)).collect();
    let s = if n <= 64 {
        InverseSemigroup::from_table(raw, zero, Some(names))?
    } else {
        InverseSemigroup::from_table_assoc(raw, zero, Some(names))?
    };
    Ok((s, elems, words))
}

/// Evaluate a word in the closure produced by [`generate_from_partial_perms`].
pub fn evaluate_word(gens: &[PartialPerm], word: &Word) -> Option<PartialPerm> {
    let mut acc: Option<PartialPerm> = None;
    for &(g, inv) in word {
        let p = if inv { gens[g].inverse() } else { gens[g].clone() };
        acc = Some(match acc {
            None => p,
            Some(a) => a.compose(&p),
        });
    }
    acc
}
