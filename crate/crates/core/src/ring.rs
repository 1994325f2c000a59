//! Finite commutative rings as ordered products of local atoms.

use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{lcm, modn, Lattice};

const ATOM_ORDER_LIMIT: u64 = 1 << 20;
const EXTENSIONAL_LIMIT: u64 = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AtomKind {
    ZMod,
    GF,
}

/// A local ring: `Z/p^k`, or `GF(p^k) = F_p[x]/(poly)` with `poly` monic irreducible.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Atom {
    kind: AtomKind,
    p: i64,
    k: u32,
    /// Little-endian coefficients of the monic modulus (length `k + 1`); empty for `ZMod`.
    poly: Vec<i64>,
}

pub(crate) fn is_prime(p: i64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn checked_order(p: i64, k: u32) -> Result<u64> {
    let mut n: u64 = 1;
    for _ in 0..k {
        n = n.saturating_mul(p as u64);
        if n > ATOM_ORDER_LIMIT {
            return Err(Error::too_large("atom order", n, ATOM_ORDER_LIMIT));
        }
    }
    Ok(n)
}

/// Remainder of `a` modulo the monic `m` over `F_p`; both little-endian.
fn poly_rem(a: &[i64], m: &[i64], p: i64) -> Vec<i64> {
    let dm = m.len() - 1;
    let mut r: Vec<i64> = a.iter().map(|&c| modn(c, p)).collect();
    while r.len() > dm {
        let c = r.pop().unwrap();
        if c != 0 {
            let off = r.len() - dm;
            for i in 0..dm {
                r[off + i] = modn(r[off + i] - c * m[i], p);
            }
        }
    }
    r
}

fn is_irreducible(poly: &[i64], p: i64) -> bool {
    let k = poly.len() - 1;
    if k <= 1 {
        return true;
    }
    // every monic divisor of degree 1..=k/2
    for d in 1..=k / 2 {
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut m = vec![0i64; d + 1];
            let mut x = idx;
            for c in m.iter_mut().take(d) {
                *c = (x % p as u64) as i64;
                x /= p as u64;
            }
            m[d] = 1;
            if poly_rem(poly, &m, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl Atom {
    pub fn zmod(p: i64, k: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidAtom(format!("{p} is not prime")));
        }
        if k == 0 {
            return Err(Error::InvalidAtom("exponent must be at least 1".into()));
        }
        checked_order(p, k)?;
        Ok(Atom {
            kind: AtomKind::ZMod,
            p,
            k,
            poly: Vec::new(),
        })
    }

    /// `coeffs` lists the polynomial little-endian, either all `k + 1`
    /// coefficients (leading 1) or the lower `k` with the leading 1 implied.
    pub fn gf(p: i64, k: u32, coeffs: &[i64]) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidAtom(format!("{p} is not prime")));
        }
        if k == 0 {
            return Err(Error::InvalidAtom("degree must be at least 1".into()));
        }
        checked_order(p, k)?;
        let k_us = k as usize;
        let mut poly: Vec<i64> = coeffs.iter().map(|&c| modn(c, p)).collect();
        if poly.len() == k_us {
            poly.push(1);
        }
        if poly.len() != k_us + 1 || poly[k_us] != 1 {
            return Err(Error::InvalidAtom(format!(
                "GF({p}^{k}) needs a monic polynomial of degree {k}"
            )));
        }
        if !is_irreducible(&poly, p) {
            return Err(Error::InvalidAtom(format!(
                "polynomial {poly:?} is reducible over F_{p}"
            )));
        }
        Ok(Atom {
            kind: AtomKind::GF,
            p,
            k,
            poly,
        })
    }

    /// The first irreducible monic polynomial of degree `k` in index order.
    pub fn gf_default(p: i64, k: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidAtom(format!("{p} is not prime")));
        }
        let total = checked_order(p, k)?;
        for idx in 0..total {
            let mut c = Vec::with_capacity(k as usize);
            let mut x = idx;
            for _ in 0..k {
                c.push((x % p as u64) as i64);
                x /= p as u64;
            }
            if let Ok(a) = Atom::gf(p, k, &c) {
                return Ok(a);
            }
        }
        Err(Error::InvalidAtom(format!(
            "no irreducible polynomial of degree {k} over F_{p}"
        )))
    }

    pub fn kind(&self) -> AtomKind {
        self.kind
    }
    pub fn p(&self) -> i64 {
        self.p
    }
    pub fn k(&self) -> u32 {
        self.k
    }
    pub fn poly(&self) -> &[i64] {
        &self.poly
    }

    pub fn order(&self) -> u64 {
        (self.p as u64).pow(self.k)
    }

    /// Number of integer coordinates used for an element.
    pub fn width(&self) -> usize {
        match self.kind {
            AtomKind::ZMod => 1,
            AtomKind::GF => self.k as usize,
        }
    }

    /// Additive order of each coordinate.
    pub fn coord_modulus(&self) -> i64 {
        match self.kind {
            AtomKind::ZMod => self.order() as i64,
            AtomKind::GF => self.p,
        }
    }

    /// Number of distinct automorphisms (Frobenius powers).
    pub fn twist_period(&self) -> u32 {
        match self.kind {
            AtomKind::ZMod => 1,
            AtomKind::GF => self.k,
        }
    }

    pub fn zero(&self) -> Vec<i64> {
        vec![0; self.width()]
    }

    pub fn one(&self) -> Vec<i64> {
        let mut v = self.zero();
        v[0] = 1;
        v
    }

    pub fn add(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        let m = self.coord_modulus();
        a.iter().zip(b).map(|(&x, &y)| modn(x + y, m)).collect()
    }

    pub fn mul(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        match self.kind {
            AtomKind::ZMod => {
                let m = self.order() as i64;
                vec![modn(((a[0] as i128 * b[0] as i128) % m as i128) as i64, m)]
            }
            AtomKind::GF => {
                let k = self.k as usize;
                let mut prod = vec![0i64; 2 * k - 1];
                for i in 0..k {
                    if a[i] == 0 {
                        continue;
                    }
                    for j in 0..k {
                        prod[i + j] = (prod[i + j] + a[i] * b[j]) % self.p;
                    }
                }
                poly_rem(&prod, &self.poly, self.p)
            }
        }
    }

    pub fn pow(&self, a: &[i64], mut e: u64) -> Vec<i64> {
        let mut base = a.to_vec();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// `x ↦ x^(p^j)`. For `GF` this is the `j`-th Frobenius power; for
    /// `ZMod` only `j = 0` is an automorphism.
    pub fn frobenius(&self, a: &[i64], j: u32) -> Vec<i64> {
        let mut x = a.to_vec();
        for _ in 0..j {
            x = self.pow(&x, self.p as u64);
        }
        x
    }

    pub fn is_zero(a: &[i64]) -> bool {
        a.iter().all(|&c| c == 0)
    }

    /// Enumerate all elements in little-endian coordinate order.
    pub fn elements(&self) -> Vec<Vec<i64>> {
        let m = self.coord_modulus();
        let w = self.width();
        let mut out = Vec::with_capacity(self.order() as usize);
        let mut cur = vec![0i64; w];
        loop {
            out.push(cur.clone());
            let mut i = 0;
            loop {
                if i == w {
                    return out;
                }
                cur[i] += 1;
                if cur[i] < m {
                    break;
                }
                cur[i] = 0;
                i += 1;
            }
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            AtomKind::ZMod => write!(f, "Z/{}^{}", self.p, self.k),
            AtomKind::GF => {
                write!(f, "GF({}^{})[", self.p, self.k)?;
                for (i, c) in self.poly.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, "]")
            }
        }
    }
}

/// Set of atom indices, i.e. a central idempotent / unital ideal.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Support(pub u64);

impl Support {
    pub const EMPTY: Support = Support(0);

    pub fn full(n: usize) -> Self {
        if n >= 64 {
            Support(u64::MAX)
        } else {
            Support((1u64 << n) - 1)
        }
    }
    pub fn single(i: usize) -> Self {
        Support(1u64 << i)
    }
    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }
    pub fn union(self, o: Support) -> Support {
        Support(self.0 | o.0)
    }
    pub fn intersect(self, o: Support) -> Support {
        Support(self.0 & o.0)
    }
    pub fn minus(self, o: Support) -> Support {
        Support(self.0 & !o.0)
    }
    pub fn is_subset(self, o: Support) -> bool {
        self.0 & !o.0 == 0
    }
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }
    pub fn count(self) -> u32 {
        self.0.count_ones()
    }
    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&i| self.contains(i))
    }
    /// All non-empty subsets.
    pub fn nonempty_subsets(self) -> Vec<Support> {
        let mut out = Vec::new();
        let mut sub = self.0;
        while sub != 0 {
            out.push(Support(sub));
            sub = (sub - 1) & self.0;
        }
        out.sort();
        out
    }
}

impl FromIterator<usize> for Support {
    fn from_iter<I: IntoIterator<Item = usize>>(it: I) -> Self {
        Support(it.into_iter().fold(0u64, |acc, i| acc | (1u64 << i)))
    }
}

impl fmt::Display for Support {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (n, i) in self.iter().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

/// An element of a [`FiniteRing`]: atom components concatenated.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RingElement(pub Vec<i64>);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteRing {
    atoms: Vec<Atom>,
    offsets: Vec<usize>,
    dim: usize,
}

impl FiniteRing {
    pub fn new(atoms: Vec<Atom>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::InvalidAtom("ring needs at least one atom".into()));
        }
        if atoms.len() > 64 {
            return Err(Error::too_large("atom count", atoms.len() as u64, 64u64));
        }
        let mut offsets = Vec::with_capacity(atoms.len());
        let mut dim = 0;
        for a in &atoms {
            offsets.push(dim);
            dim += a.width();
        }
        Ok(FiniteRing { atoms, offsets, dim })
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }
    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn full_support(&self) -> Support {
        Support::full(self.atoms.len())
    }

    pub fn order(&self) -> BigUint {
        self.atoms
            .iter()
            .fold(BigUint::from(1u32), |acc, a| acc * BigUint::from(a.order()))
    }

    pub fn ideal_order(&self, sup: Support) -> BigUint {
        sup.iter()
            .fold(BigUint::from(1u32), |acc, i| acc * BigUint::from(self.atoms[i].order()))
    }

    fn ideal_order_u64(&self, sup: Support) -> Option<u64> {
        let mut n: u64 = 1;
        for i in sup.iter() {
            n = n.checked_mul(self.atoms[i].order())?;
        }
        Some(n)
    }

    pub fn coord_moduli(&self) -> Vec<i64> {
        self.atoms
            .iter()
            .flat_map(|a| std::iter::repeat_n(a.coord_modulus(), a.width()))
            .collect()
    }

    /// Additive exponent.
    pub fn exponent(&self) -> i64 {
        self.atoms.iter().fold(1, |acc, a| lcm(acc, a.coord_modulus()))
    }

    /// Relations of the additive group on the coordinate generators.
    pub fn relation_lattice(&self) -> Lattice {
        Lattice::diagonal(&self.coord_moduli())
    }

    pub fn range(&self, i: usize) -> std::ops::Range<usize> {
        self.offsets[i]..self.offsets[i] + self.atoms[i].width()
    }

    pub fn component<'a>(&self, a: &'a RingElement, i: usize) -> &'a [i64] {
        &a.0[self.range(i)]
    }

    fn check(&self, a: &RingElement) -> Result<()> {
        if a.0.len() != self.dim {
            return Err(Error::AtomMismatch);
        }
        Ok(())
    }

    pub fn zero(&self) -> RingElement {
        RingElement(vec![0; self.dim])
    }

    pub fn one(&self) -> RingElement {
        self.unit(self.full_support())
    }

    /// The idempotent `1_sup`: 1 on the atoms of `sup`, 0 elsewhere.
    pub fn unit(&self, sup: Support) -> RingElement {
        let mut v = vec![0; self.dim];
        for i in sup.iter().filter(|&i| i < self.atoms.len()) {
            v[self.offsets[i]] = 1;
        }
        RingElement(v)
    }

    /// Normalize arbitrary integer coordinates.
    pub fn element(&self, coords: Vec<i64>) -> Result<RingElement> {
        if coords.len() != self.dim {
            return Err(Error::AtomMismatch);
        }
        let m = self.coord_moduli();
        Ok(RingElement(coords.iter().zip(&m).map(|(&c, &q)| modn(c, q)).collect()))
    }

    pub fn add(&self, a: &RingElement, b: &RingElement) -> Result<RingElement> {
        self.check(a)?;
        self.check(b)?;
        let m = self.coord_moduli();
        Ok(RingElement(
            a.0.iter()
                .zip(&b.0)
                .zip(&m)
                .map(|((&x, &y), &q)| modn(x + y, q))
                .collect(),
        ))
    }

    pub fn neg(&self, a: &RingElement) -> Result<RingElement> {
        self.check(a)?;
        let m = self.coord_moduli();
        Ok(RingElement(a.0.iter().zip(&m).map(|(&x, &q)| modn(-x, q)).collect()))
    }

    pub fn sub(&self, a: &RingElement, b: &RingElement) -> Result<RingElement> {
        self.add(a, &self.neg(b)?)
    }

    pub fn mul(&self, a: &RingElement, b: &RingElement) -> Result<RingElement> {
        self.check(a)?;
        self.check(b)?;
        let mut out = Vec::with_capacity(self.dim);
        for (i, atom) in self.atoms.iter().enumerate() {
            let r = self.range(i);
            out.extend(atom.mul(&a.0[r.clone()], &b.0[r]));
        }
        Ok(RingElement(out))
    }

    /// `a·1_sup`.
    pub fn project(&self, a: &RingElement, sup: Support) -> RingElement {
        let mut v = a.0.clone();
        for i in 0..self.atoms.len() {
            if !sup.contains(i) {
                for c in self.range(i) {
                    v[c] = 0;
                }
            }
        }
        RingElement(v)
    }

    /// Atoms on which `a` is nonzero.
    pub fn support_of(&self, a: &RingElement) -> Support {
        Support::from_iter((0..self.atoms.len()).filter(|&i| !Atom::is_zero(self.component(a, i))))
    }

    pub fn in_ideal(&self, a: &RingElement, sup: Support) -> bool {
        self.support_of(a).is_subset(sup)
    }

    /// Coordinate unit vectors: an additive generating set of `A`.
    pub fn basis(&self) -> Vec<RingElement> {
        (0..self.dim)
            .map(|c| {
                let mut v = vec![0; self.dim];
                v[c] = 1;
                RingElement(v)
            })
            .collect()
    }

    /// Coordinate generators lying in the ideal `sup`.
    pub fn ideal_basis(&self, sup: Support) -> Vec<RingElement> {
        sup.iter()
            .filter(|&i| i < self.atoms.len())
            .flat_map(|i| self.range(i))
            .map(|c| {
                let mut v = vec![0; self.dim];
                v[c] = 1;
                RingElement(v)
            })
            .collect()
    }

    /// Every element of the ideal `A·1_sup`, refusing beyond `limit`.
    pub fn ideal_elements(&self, sup: Support, limit: u64) -> Result<Vec<RingElement>> {
        let size = self
            .ideal_order_u64(sup)
            .ok_or_else(|| Error::too_large("ideal", u128::MAX, limit))?;
        if size > limit {
            return Err(Error::too_large("ideal", size, limit));
        }
        let mut out = vec![self.zero()];
        for i in sup.iter().filter(|&i| i < self.atoms.len()) {
            let elems = self.atoms[i].elements();
            let r = self.range(i);
            let mut next = Vec::with_capacity(out.len() * elems.len());
            for base in &out {
                for e in &elems {
                    let mut v = base.clone();
                    v.0[r.clone()].copy_from_slice(e);
                    next.push(v);
                }
            }
            out = next;
        }
        Ok(out)
    }

    pub fn elements(&self, limit: u64) -> Result<Vec<RingElement>> {
        self.ideal_elements(self.full_support(), limit)
    }

    pub fn is_idempotent(&self, a: &RingElement) -> bool {
        self.mul(a, a).map(|sq| &sq == a).unwrap_or(false)
    }

    pub fn format_element(&self, a: &RingElement) -> String {
        let parts: Vec<String> = (0..self.atoms.len())
            .map(|i| {
                let c = self.component(a, i);
                if c.len() == 1 {
                    c[0].to_string()
                } else {
                    format!("[{}]", c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
                }
            })
            .collect();
        format!("({})", parts.join(", "))
    }
}

/// Every central idempotent of `A`. Local atoms only have 0 and 1, so these
/// are exactly the support indicators.
pub fn enumerate_central_idempotents(ring: &FiniteRing) -> Vec<Support> {
    let n = ring.atom_count();
    let full = Support::full(n);
    let mut out = vec![Support::EMPTY];
    out.extend(full.nonempty_subsets());
    out.sort();
    out
}

/// One matched atom pair: component `from` is sent to component `to`
/// through the `twist`-th Frobenius power.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IsoPair {
    pub from: usize,
    pub to: usize,
    pub twist: u32,
}

/// A ring isomorphism between unital ideals, stored as an atom matching.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StructuredIso {
    dom: Support,
    im: Support,
    pairs: Vec<IsoPair>,
}

impl StructuredIso {
    pub fn new(ring: &FiniteRing, pairs: Vec<IsoPair>) -> Result<Self> {
        let n = ring.atom_count();
        let mut dom = Support::EMPTY;
        let mut im = Support::EMPTY;
        for p in &pairs {
            if p.from >= n || p.to >= n {
                return Err(Error::InvalidIso(format!(
                    "atom index out of range in {}>{}",
                    p.from, p.to
                )));
            }
            if dom.contains(p.from) {
                return Err(Error::InvalidIso(format!("atom {} mapped twice", p.from)));
            }
            if im.contains(p.to) {
                return Err(Error::InvalidIso(format!("atom {} hit twice", p.to)));
            }
            let (a, b) = (&ring.atoms[p.from], &ring.atoms[p.to]);
            if a != b {
                return Err(Error::InvalidIso(format!(
                    "atoms {} ({a}) and {} ({b}) are not isomorphic",
                    p.from, p.to
                )));
            }
            if p.twist >= a.twist_period() {
                return Err(Error::InvalidIso(format!(
                    "twist {} on atom {} must be below {}",
                    p.twist,
                    p.from,
                    a.twist_period()
                )));
            }
            dom = dom.union(Support::single(p.from));
            im = im.union(Support::single(p.to));
        }
        Ok(Self::new_unchecked(pairs))
    }

    /// No validation; used to inject faults for the extensional oracle.
    pub fn new_unchecked(mut pairs: Vec<IsoPair>) -> Self {
        pairs.sort();
        let dom = Support::from_iter(pairs.iter().map(|p| p.from));
        let im = Support::from_iter(pairs.iter().map(|p| p.to));
        StructuredIso { dom, im, pairs }
    }

    pub fn identity(sup: Support) -> Self {
        Self::new_unchecked(
            sup.iter()
                .map(|i| IsoPair {
                    from: i,
                    to: i,
                    twist: 0,
                })
                .collect(),
        )
    }

    pub fn empty() -> Self {
        Self::new_unchecked(Vec::new())
    }

    pub fn dom(&self) -> Support {
        self.dom
    }
    pub fn im(&self) -> Support {
        self.im
    }
    pub fn pairs(&self) -> &[IsoPair] {
        &self.pairs
    }

    pub fn pair_from(&self, atom: usize) -> Option<IsoPair> {
        self.pairs.iter().copied().find(|p| p.from == atom)
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Identity on its domain (the idempotents of `Iso_pu(A)`).
    pub fn is_identity(&self) -> bool {
        self.pairs.iter().all(|p| p.from == p.to && p.twist == 0)
    }

    pub fn inverse(&self, ring: &FiniteRing) -> Self {
        Self::new_unchecked(
            self.pairs
                .iter()
                .map(|p| {
                    let period = ring.atoms[p.from].twist_period();
                    IsoPair {
                        from: p.to,
                        to: p.from,
                        twist: (period - p.twist % period) % period,
                    }
                })
                .collect(),
        )
    }

    /// Apply to an element of the domain ideal.
    pub fn apply(&self, ring: &FiniteRing, a: &RingElement) -> Result<RingElement> {
        ring.check(a)?;
        if !ring.in_ideal(a, self.dom) {
            return Err(Error::OutOfDomain);
        }
        Ok(self.apply_restricted(ring, a))
    }

    /// `f(a·1_dom)`.
    pub fn apply_restricted(&self, ring: &FiniteRing, a: &RingElement) -> RingElement {
        let mut out = vec![0; ring.dim];
        for p in &self.pairs {
            let src = ring.component(a, p.from);
            let atom = &ring.atoms[p.to];
            let img = ring.atoms[p.from].frobenius(src, p.twist);
            let m = atom.coord_modulus();
            for (dst, v) in out[ring.range(p.to)].iter_mut().zip(img) {
                *dst = modn(v, m);
            }
        }
        RingElement(out)
    }

    pub fn format(&self) -> String {
        if self.pairs.is_empty() {
            return "0".into();
        }
        self.pairs
            .iter()
            .map(|p| {
                if p.twist == 0 {
                    format!("{}>{}", p.from, p.to)
                } else {
                    format!("{}>{}^{}", p.from, p.to, p.twist)
                }
            })
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Exhaustive check that `f` is a unital ring isomorphism `A·1_dom → A·1_im`.
///
/// Additivity and multiplicativity are tested against every pair (element,
/// additive generator), which suffices once additivity holds.
pub fn verify_iso_extensional(ring: &FiniteRing, f: &StructuredIso) -> Result<bool> {
    let elems = ring.ideal_elements(f.dom, EXTENSIONAL_LIMIT)?;
    let gens = ring.ideal_basis(f.dom);
    let images: Vec<RingElement> = elems.iter().map(|a| f.apply_restricted(ring, a)).collect();
    let mut seen = std::collections::HashSet::with_capacity(images.len());
    for img in &images {
        if !ring.in_ideal(img, f.im) || !seen.insert(img.clone()) {
            return Ok(false);
        }
    }
    if BigUint::from(seen.len()) != ring.ideal_order(f.im) {
        return Ok(false);
    }
    if f.apply_restricted(ring, &ring.unit(f.dom)) != ring.unit(f.im) {
        return Ok(false);
    }
    for (a, fa) in elems.iter().zip(&images) {
        for g in &gens {
            let fg = f.apply_restricted(ring, g);
            if f.apply_restricted(ring, &ring.add(a, g)?) != ring.add(fa, &fg)? {
                return Ok(false);
            }
            if f.apply_restricted(ring, &ring.mul(a, g)?) != ring.mul(fa, &fg)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f9() -> Atom {
        Atom::gf(3, 2, &[1, 0, 1]).unwrap()
    }

    #[test]
    fn x_squared_is_minus_one_in_f9() {
        let a = f9();
        assert_eq!(a.mul(&[0, 1], &[0, 1]), vec![2, 0]);
    }

    #[test]
    fn frobenius_negates_x_in_f9() {
        assert_eq!(f9().frobenius(&[0, 1], 1), vec![0, 2]);
    }

    #[test]
    fn reducible_polynomial_rejected() {
        // x^2 + 2 = (x+1)(x+2) over F_3
        assert!(Atom::gf(3, 2, &[2, 0, 1]).is_err());
        assert!(Atom::gf(4, 1, &[0, 1]).is_err());
    }

    #[test]
    fn orthogonal_idempotents_multiply_to_zero() {
        let r = FiniteRing::new(vec![Atom::zmod(3, 1).unwrap(), Atom::zmod(3, 1).unwrap()]).unwrap();
        let a = r.unit(Support::single(0));
        let b = r.unit(Support::single(1));
        assert_eq!(r.mul(&a, &b).unwrap(), r.zero());
        assert_eq!(r.add(&r.one(), &r.neg(&r.one()).unwrap()).unwrap(), r.zero());
    }

    #[test]
    fn idempotents_match_exhaustive_scan() {
        let r = FiniteRing::new(vec![f9(), f9(), f9()]).unwrap();
        let scanned: Vec<RingElement> = r
            .elements(1 << 12)
            .unwrap()
            .into_iter()
            .filter(|a| r.is_idempotent(a))
            .collect();
        let listed = enumerate_central_idempotents(&r);
        assert_eq!(listed.len(), 8);
        assert_eq!(scanned.len(), 8);
        for s in listed {
            assert!(scanned.contains(&r.unit(s)));
        }
    }

    #[test]
    fn swap_is_an_isomorphism() {
        let r = FiniteRing::new(vec![Atom::zmod(3, 1).unwrap(), Atom::zmod(3, 1).unwrap()]).unwrap();
        let f = StructuredIso::new(
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
        assert_eq!(f.apply(&r, &RingElement(vec![1, 2])).unwrap(), RingElement(vec![2, 1]));
        assert!(verify_iso_extensional(&r, &f).unwrap());
    }

    #[test]
    fn corrupted_twist_fails_oracle() {
        let r = FiniteRing::new(vec![Atom::zmod(3, 2).unwrap()]).unwrap();
        let bad = StructuredIso::new_unchecked(vec![IsoPair {
            from: 0,
            to: 0,
            twist: 1,
        }]);
        assert!(!verify_iso_extensional(&r, &bad).unwrap());
        assert!(StructuredIso::new(
            &r,
            vec![IsoPair {
                from: 0,
                to: 0,
                twist: 1
            }]
        )
        .is_err());
    }

    #[test]
    fn mismatched_polynomials_fail_multiplicativity() {
        let g = Atom::gf(3, 2, &[2, 1, 1]).unwrap();
        let r = FiniteRing::new(vec![f9(), g]).unwrap();
        assert!(StructuredIso::new(
            &r,
            vec![IsoPair {
                from: 0,
                to: 1,
                twist: 0
            }]
        )
        .is_err());
        let bad = StructuredIso::new_unchecked(vec![IsoPair {
            from: 0,
            to: 1,
            twist: 0,
        }]);
        assert!(!verify_iso_extensional(&r, &bad).unwrap());
    }

    #[test]
    fn apply_outside_domain_is_rejected() {
        let r = FiniteRing::new(vec![f9(), f9()]).unwrap();
        let f = StructuredIso::identity(Support::single(0));
        assert_eq!(f.apply(&r, &r.one()), Err(Error::OutOfDomain));
    }
}
