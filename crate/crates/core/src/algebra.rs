//! Commutative algebras given by an additive presentation plus structure
//! constants, their subalgebras, and tensor products over a base ring.

use std::collections::{HashSet, VecDeque};

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::lattice::{lcm, modn, Compact, Lattice, LinearMap};
use crate::ring::{FiniteRing, RingElement};

/// `Z^n / rel` with a bilinear product on the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentedAlgebra {
    rel: Lattice,
    table: Vec<Vec<Vec<i64>>>,
    one: Vec<i64>,
}

impl PresentedAlgebra {
    pub fn new(rel: Lattice, table: Vec<Vec<Vec<i64>>>, one: Vec<i64>) -> Result<Self> {
        let n = rel.dim();
        if table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|v| v.len() != n)) {
            return Err(Error::InconsistentPresentation(
                "structure constants have the wrong shape".into(),
            ));
        }
        if one.len() != n {
            return Err(Error::InconsistentPresentation("unit has the wrong length".into()));
        }
        let table = table
            .into_iter()
            .map(|row| row.into_iter().map(|v| rel.reduce(&v)).collect())
            .collect();
        let one = rel.reduce(&one);
        Ok(PresentedAlgebra { rel, table, one })
    }

    /// Coordinates of `A` as generators.
    pub fn from_ring(ring: &FiniteRing) -> Self {
        let basis = ring.basis();
        let rel = ring.relation_lattice();
        let table = basis
            .iter()
            .map(|a| basis.iter().map(|b| ring.mul(a, b).expect("same ring").0).collect())
            .collect();
        PresentedAlgebra {
            rel,
            table,
            one: ring.one().0,
        }
    }

    pub fn dim(&self) -> usize {
        self.rel.dim()
    }
    pub fn modulus(&self) -> i64 {
        self.rel.modulus()
    }
    pub fn rel(&self) -> &Lattice {
        &self.rel
    }
    pub fn one(&self) -> &[i64] {
        &self.one
    }
    pub fn zero(&self) -> Vec<i64> {
        vec![0; self.dim()]
    }
    pub fn order(&self) -> BigUint {
        self.rel.index()
    }

    pub fn gen(&self, i: usize) -> Vec<i64> {
        let mut v = self.zero();
        v[i] = 1;
        self.rel.reduce(&v)
    }

    pub fn reduce(&self, v: &[i64]) -> Vec<i64> {
        self.rel.reduce(v)
    }

    pub fn eq(&self, a: &[i64], b: &[i64]) -> bool {
        self.reduce(a) == self.reduce(b)
    }

    pub fn is_zero(&self, a: &[i64]) -> bool {
        self.rel.contains(a)
    }

    pub fn add(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        let v: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        self.reduce(&v)
    }

    pub fn sub(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        let v: Vec<i64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
        self.reduce(&v)
    }

    pub fn scale(&self, c: i64, a: &[i64]) -> Vec<i64> {
        let n = self.modulus();
        let v: Vec<i64> = a
            .iter()
            .map(|&x| modn(((c as i128 * x as i128) % n as i128) as i64, n))
            .collect();
        self.reduce(&v)
    }

    pub fn mul(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        let n = self.modulus();
        let d = self.dim();
        let mut acc = vec![0i128; d];
        for (i, &x) in a.iter().enumerate() {
            let x = modn(x, n);
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                let y = modn(y, n);
                if y == 0 {
                    continue;
                }
                let c = (x as i128 * y as i128) % n as i128;
                for (o, &t) in acc.iter_mut().zip(&self.table[i][j]) {
                    if t != 0 {
                        *o = (*o + c * t as i128) % n as i128;
                    }
                }
            }
        }
        let v: Vec<i64> = acc.into_iter().map(|x| x as i64).collect();
        self.reduce(&v)
    }

    /// Images of the generators under `x ↦ b·x`.
    pub fn mul_matrix(&self, b: &[i64]) -> Vec<Vec<i64>> {
        (0..self.dim()).map(|i| self.mul(b, &self.gen(i))).collect()
    }

    /// Evaluate an additive map given by generator images.
    pub fn apply_matrix(&self, images: &[Vec<i64>], x: &[i64]) -> Vec<i64> {
        let n = self.modulus();
        let mut out = vec![0i64; self.dim()];
        for (xi, row) in x.iter().zip(images) {
            let xi = modn(*xi, n);
            if xi == 0 {
                continue;
            }
            for (o, &r) in out.iter_mut().zip(row) {
                *o = modn(*o + ((xi as i128 * r as i128) % n as i128) as i64, n);
            }
        }
        self.reduce(&out)
    }

    /// Associativity, commutativity and unit law on the generators.
    pub fn check_axioms(&self) -> bool {
        let d = self.dim();
        let gens: Vec<Vec<i64>> = (0..d).map(|i| self.gen(i)).collect();
        for a in &gens {
            if !self.eq(&self.mul(&self.one, a), a) {
                return false;
            }
            for b in &gens {
                if !self.eq(&self.mul(a, b), &self.mul(b, a)) {
                    return false;
                }
                for c in &gens {
                    if !self.eq(&self.mul(&self.mul(a, b), c), &self.mul(a, &self.mul(b, c))) {
                        return false;
                    }
                }
            }
        }
        // well-definedness: relations times generators vanish
        for r in self.rel.generators() {
            for g in &gens {
                if !self.is_zero(&self.mul(&r, g)) {
                    return false;
                }
            }
        }
        true
    }

    /// The same algebra on the non-trivial coordinates of its Hermite form,
    /// with the coordinate change.
    pub fn compact(&self) -> (PresentedAlgebra, Compact) {
        let c = self.rel.compact();
        let k = c.dim();
        let gens: Vec<Vec<i64>> = (0..k)
            .map(|i| {
                let mut w = vec![0; k];
                w[i] = 1;
                c.lift(&w)
            })
            .collect();
        let table = gens
            .iter()
            .map(|a| gens.iter().map(|b| c.project(&self.mul(a, b))).collect())
            .collect();
        let alg = PresentedAlgebra {
            rel: c.lattice().clone(),
            table,
            one: c.project(&self.one),
        };
        (alg, c)
    }

    /// All elements, refusing beyond `limit`.
    pub fn elements(&self, limit: u64) -> Result<Vec<Vec<i64>>> {
        let order = self.order();
        if order > BigUint::from(limit) {
            return Err(Error::too_large(
                "algebra",
                u128::try_from(&order).unwrap_or(u128::MAX),
                limit,
            ));
        }
        span_elements(&self.rel, &(0..self.dim()).map(|i| self.gen(i)).collect::<Vec<_>>())
    }
}

/// Every element of `span(gens) + rel` modulo `rel`, by breadth-first search.
fn span_elements(rel: &Lattice, gens: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    let zero = vec![0; rel.dim()];
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut order = Vec::new();
    let mut queue = VecDeque::new();
    seen.insert(zero.clone());
    queue.push_back(zero);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y: Vec<i64> = x.iter().zip(g).map(|(a, b)| a + b).collect();
            let y = rel.reduce(&y);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
        order.push(x);
    }
    Ok(order)
}

/// An additive subgroup `L/rel` of a presented algebra, stored as the
/// canonical lattice `L ⊇ rel`; equality is lattice equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subalgebra {
    lattice: Lattice,
}

impl Subalgebra {
    pub fn from_lattice(alg: &PresentedAlgebra, lattice: Lattice) -> Result<Self> {
        if lattice.dim() != alg.dim() || !alg.rel().is_sublattice_of(&lattice) {
            return Err(Error::InconsistentPresentation(
                "lattice does not contain the relations".into(),
            ));
        }
        let lattice = if lattice.modulus() == alg.modulus() {
            lattice
        } else {
            Lattice::from_generators(alg.dim(), alg.modulus(), lattice.rows().to_vec().iter())
        };
        Ok(Subalgebra { lattice })
    }

    /// Additive span of `gens` (no closure).
    pub fn span(alg: &PresentedAlgebra, gens: &[Vec<i64>]) -> Self {
        let l = Lattice::from_generators(alg.dim(), alg.modulus(), gens.iter()).sum(alg.rel());
        Subalgebra { lattice: l }
    }

    /// The subalgebra generated by `gens` and `1`.
    pub fn generated(alg: &PresentedAlgebra, gens: &[Vec<i64>]) -> Self {
        let mut all: Vec<Vec<i64>> = gens.to_vec();
        all.push(alg.one().to_vec());
        let mut cur = Self::span(alg, &all);
        loop {
            let g = cur.generators(alg);
            let mut extra = Vec::new();
            for (i, a) in g.iter().enumerate() {
                for b in &g[i..] {
                    let p = alg.mul(a, b);
                    if !cur.contains(&p) {
                        extra.push(p);
                    }
                }
            }
            if extra.is_empty() {
                return cur;
            }
            extra.extend(g);
            cur = Self::span(alg, &extra);
        }
    }

    pub fn whole(alg: &PresentedAlgebra) -> Self {
        Subalgebra {
            lattice: Lattice::full(alg.dim(), alg.modulus()),
        }
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.lattice.contains(x)
    }

    pub fn is_subset_of(&self, other: &Subalgebra) -> bool {
        self.lattice.is_sublattice_of(&other.lattice)
    }

    pub fn order(&self, alg: &PresentedAlgebra) -> BigUint {
        alg.order() / self.lattice.index()
    }

    /// Additive generators (Hermite rows that are nonzero in the algebra).
    pub fn generators(&self, alg: &PresentedAlgebra) -> Vec<Vec<i64>> {
        self.lattice
            .generators()
            .into_iter()
            .map(|g| alg.reduce(&g))
            .filter(|g| !alg.is_zero(g))
            .collect()
    }

    /// Contains 1 and is closed under products.
    pub fn is_closed(&self, alg: &PresentedAlgebra) -> bool {
        if !self.contains(alg.one()) {
            return false;
        }
        let g = self.generators(alg);
        g.iter()
            .enumerate()
            .all(|(i, a)| g[i..].iter().all(|b| self.contains(&alg.mul(a, b))))
    }

    pub fn intersection(&self, other: &Subalgebra) -> Subalgebra {
        Subalgebra {
            lattice: self.lattice.intersection(&other.lattice),
        }
    }

    pub fn elements(&self, alg: &PresentedAlgebra, limit: u64) -> Result<Vec<Vec<i64>>> {
        let order = self.order(alg);
        if order > BigUint::from(limit) {
            return Err(Error::too_large(
                "subalgebra",
                u128::try_from(&order).unwrap_or(u128::MAX),
                limit,
            ));
        }
        span_elements(alg.rel(), &self.generators(alg))
    }
}

/// A finite abelian group given by generators inside an ambient algebra,
/// with its relation lattice computed as a kernel.
#[derive(Clone, Debug)]
pub struct ModuleGens {
    gens: Vec<Vec<i64>>,
    rel: Lattice,
    map: LinearMap,
}

impl ModuleGens {
    pub fn new(alg: &PresentedAlgebra, gens: Vec<Vec<i64>>) -> Self {
        let gens: Vec<Vec<i64>> = gens.iter().map(|g| alg.reduce(g)).collect();
        let mut map = LinearMap::new(gens.clone(), alg.rel().clone());
        let rel = map.kernel_ref();
        ModuleGens { gens, rel, map }
    }

    pub fn of_subalgebra(alg: &PresentedAlgebra, b: &Subalgebra) -> Self {
        let mut g = b.generators(alg);
        if g.is_empty() {
            g.push(alg.zero());
        }
        Self::new(alg, g)
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }
    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }
    pub fn gens(&self) -> &[Vec<i64>] {
        &self.gens
    }
    pub fn rel(&self) -> &Lattice {
        &self.rel
    }

    /// Coordinates of an ambient element in terms of the generators.
    pub fn express(&mut self, x: &[i64]) -> Option<Vec<i64>> {
        self.map.preimage(x)
    }

    /// Ambient element with the given coordinates.
    pub fn evaluate(&self, coords: &[i64]) -> Vec<i64> {
        self.map.apply(coords)
    }
}

/// One factor of a tensor product: a module inside an algebra together with
/// the base ring generators as elements of that algebra.
pub struct TensorSide<'a> {
    pub alg: &'a PresentedAlgebra,
    pub module: &'a mut ModuleGens,
    pub base: &'a [Vec<i64>],
}

/// `M ⊗_R N` on the generators `m_i ⊗ n_j` (index `i·|N gens| + j`).
#[derive(Clone, Debug)]
pub struct Tensor {
    left: usize,
    right: usize,
    rel: Lattice,
}

impl Tensor {
    pub fn build(left: TensorSide<'_>, right: TensorSide<'_>, limit: &BigUint) -> Result<Tensor> {
        if left.base.len() != right.base.len() {
            return Err(Error::NotSubring("base generator lists differ in length".into()));
        }
        let (m, k) = (left.module.len(), right.module.len());
        let dim = m * k;
        let modulus = lcm(left.module.rel().modulus(), right.module.rel().modulus());
        let mut gens: Vec<Vec<i64>> = Vec::new();
        for r in left.module.rel().rows() {
            for j in 0..k {
                let mut v = vec![0; dim];
                for i in 0..m {
                    v[i * k + j] = r[i];
                }
                gens.push(v);
            }
        }
        for r in right.module.rel().rows() {
            for i in 0..m {
                let mut v = vec![0; dim];
                v[i * k..(i + 1) * k].copy_from_slice(r);
                gens.push(v);
            }
        }
        for (bl, br) in left.base.iter().zip(right.base) {
            let lmul: Vec<Vec<i64>> = (0..m)
                .map(|i| {
                    let x = left.alg.mul(bl, &left.module.gens()[i]);
                    left.module
                        .express(&x)
                        .ok_or_else(|| Error::NotSubring("left module is not stable under the base".into()))
                })
                .collect::<Result<_>>()?;
            let rmul: Vec<Vec<i64>> = (0..k)
                .map(|j| {
                    let x = right.alg.mul(br, &right.module.gens()[j]);
                    right
                        .module
                        .express(&x)
                        .ok_or_else(|| Error::NotSubring("right module is not stable under the base".into()))
                })
                .collect::<Result<_>>()?;
            for i in 0..m {
                for j in 0..k {
                    let mut v = vec![0i64; dim];
                    for (a, &c) in lmul[i].iter().enumerate() {
                        v[a * k + j] += c;
                    }
                    for (b, &c) in rmul[j].iter().enumerate() {
                        v[i * k + b] -= c;
                    }
                    gens.push(v);
                }
            }
        }
        let rel = Lattice::from_generators(dim, modulus, gens.iter());
        let order = rel.index();
        if &order > limit {
            return Err(Error::TensorTooLarge {
                order: order.to_string(),
                limit: limit.to_string(),
            });
        }
        Ok(Tensor { left: m, right: k, rel })
    }

    pub fn dim(&self) -> usize {
        self.left * self.right
    }
    pub fn rel(&self) -> &Lattice {
        &self.rel
    }
    pub fn order(&self) -> BigUint {
        self.rel.index()
    }
    pub fn left_len(&self) -> usize {
        self.left
    }
    pub fn right_len(&self) -> usize {
        self.right
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        i * self.right + j
    }

    /// `x ⊗ y` for coordinate vectors over the two generator lists.
    pub fn outer(&self, x: &[i64], y: &[i64]) -> Vec<i64> {
        let n = self.rel.modulus();
        let mut v = vec![0; self.dim()];
        for (i, &a) in x.iter().enumerate() {
            for (j, &b) in y.iter().enumerate() {
                v[i * self.right + j] = modn(((a as i128 * b as i128) % n as i128) as i64, n);
            }
        }
        self.rel.reduce(&v)
    }

    /// Matrix (generator images) of `b ⊗ 1` acting on the tensor.
    pub fn left_mul_matrix(&self, alg: &PresentedAlgebra, module: &mut ModuleGens, b: &[i64]) -> Result<Vec<Vec<i64>>> {
        let k = self.right;
        let mut out = Vec::with_capacity(self.dim());
        let coords: Vec<Vec<i64>> = module
            .gens()
            .to_vec()
            .iter()
            .map(|g| {
                module
                    .express(&alg.mul(b, g))
                    .ok_or_else(|| Error::NotSubring("module not stable under multiplication".into()))
            })
            .collect::<Result<_>>()?;
        for c in coords.iter() {
            for j in 0..k {
                let mut v = vec![0; self.dim()];
                for (a, &x) in c.iter().enumerate() {
                    v[a * k + j] = x;
                }
                out.push(v);
            }
        }
        Ok(out)
    }

    /// Matrix of `1 ⊗ b`.
    pub fn right_mul_matrix(
        &self,
        alg: &PresentedAlgebra,
        module: &mut ModuleGens,
        b: &[i64],
    ) -> Result<Vec<Vec<i64>>> {
        let k = self.right;
        let coords: Vec<Vec<i64>> = module
            .gens()
            .to_vec()
            .iter()
            .map(|g| {
                module
                    .express(&alg.mul(b, g))
                    .ok_or_else(|| Error::NotSubring("module not stable under multiplication".into()))
            })
            .collect::<Result<_>>()?;
        let mut out = Vec::with_capacity(self.dim());
        for i in 0..self.left {
            for c in coords.iter() {
                let mut v = vec![0; self.dim()];
                v[i * k..(i + 1) * k].copy_from_slice(c);
                out.push(v);
            }
        }
        Ok(out)
    }
}

/// Every subalgebra of `A` containing `base`, found by repeatedly adjoining
/// single elements. Refuses when `|A| > limit`.
pub fn enumerate_subalgebras(alg: &PresentedAlgebra, base: &Subalgebra, limit: u64) -> Result<Vec<Subalgebra>> {
    let elements = alg.elements(limit)?;
    let start = Subalgebra::generated(alg, &base.generators(alg));
    let mut seen: HashSet<Subalgebra> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);
    let mut out = Vec::new();
    while let Some(c) = queue.pop_front() {
        let gens = c.generators(alg);
        for a in &elements {
            if c.contains(a) {
                continue;
            }
            let mut g = gens.clone();
            g.push(a.clone());
            let d = Subalgebra::generated(alg, &g);
            if seen.insert(d.clone()) {
                queue.push_back(d);
            }
        }
        out.push(c);
    }
    out.sort_by(|a, b| {
        a.order(alg)
            .cmp(&b.order(alg))
            .then_with(|| a.lattice().rows().cmp(b.lattice().rows()))
    });
    Ok(out)
}

/// Convert a ring element to algebra coordinates (identity for `from_ring`).
pub fn coords(a: &RingElement) -> Vec<i64> {
    a.0.clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Atom, FiniteRing, Support};

    fn f3() -> Atom {
        Atom::zmod(3, 1).unwrap()
    }

    fn big() -> BigUint {
        BigUint::from(1u64 << 20)
    }

    #[test]
    fn diagonal_subalgebra_is_closed() {
        let r = FiniteRing::new(vec![f3(), f3()]).unwrap();
        let a = PresentedAlgebra::from_ring(&r);
        let d = Subalgebra::span(&a, &[r.one().0]);
        assert!(d.is_closed(&a));
        assert_eq!(d.order(&a), BigUint::from(3u32));
        assert!(Subalgebra::whole(&a).is_closed(&a));
        let e = Subalgebra::span(&a, &[r.unit(Support::single(0)).0]);
        assert!(!e.is_closed(&a));
    }

    #[test]
    fn tensor_over_field_is_field() {
        let r = FiniteRing::new(vec![f3()]).unwrap();
        let a = PresentedAlgebra::from_ring(&r);
        let mut m = ModuleGens::new(&a, vec![a.gen(0)]);
        let mut n = m.clone();
        let base = vec![a.one().to_vec()];
        let t = Tensor::build(
            TensorSide {
                alg: &a,
                module: &mut m,
                base: &base,
            },
            TensorSide {
                alg: &a,
                module: &mut n,
                base: &base,
            },
            &big(),
        )
        .unwrap();
        assert_eq!(t.order(), BigUint::from(3u32));
    }

    #[test]
    fn product_over_diagonal_has_order_81() {
        let r = FiniteRing::new(vec![f3(), f3()]).unwrap();
        let a = PresentedAlgebra::from_ring(&r);
        let gens: Vec<Vec<i64>> = (0..2).map(|i| a.gen(i)).collect();
        let mut m = ModuleGens::new(&a, gens.clone());
        let mut n = ModuleGens::new(&a, gens);
        let base = vec![a.one().to_vec()];
        let t = Tensor::build(
            TensorSide {
                alg: &a,
                module: &mut m,
                base: &base,
            },
            TensorSide {
                alg: &a,
                module: &mut n,
                base: &base,
            },
            &big(),
        )
        .unwrap();
        assert_eq!(t.order(), BigUint::from(81u32));
    }

    #[test]
    fn z4_tensor_z2_is_z2() {
        let r4 = FiniteRing::new(vec![Atom::zmod(2, 2).unwrap()]).unwrap();
        let r2 = FiniteRing::new(vec![Atom::zmod(2, 1).unwrap()]).unwrap();
        let a4 = PresentedAlgebra::from_ring(&r4);
        let a2 = PresentedAlgebra::from_ring(&r2);
        let mut m = ModuleGens::new(&a4, vec![a4.gen(0)]);
        let mut n = ModuleGens::new(&a2, vec![a2.gen(0)]);
        // base Z acts through 1
        let t = Tensor::build(
            TensorSide {
                alg: &a4,
                module: &mut m,
                base: &[a4.one().to_vec()],
            },
            TensorSide {
                alg: &a2,
                module: &mut n,
                base: &[a2.one().to_vec()],
            },
            &big(),
        )
        .unwrap();
        assert_eq!(t.order(), BigUint::from(2u32));
    }

    #[test]
    fn compact_preserves_order_and_axioms() {
        let r = FiniteRing::new(vec![Atom::gf(3, 2, &[1, 0, 1]).unwrap(), f3()]).unwrap();
        let a = PresentedAlgebra::from_ring(&r);
        let (c, _) = a.compact();
        assert_eq!(c.order(), a.order());
        assert!(c.check_axioms());
    }

    #[test]
    fn subalgebras_of_f3_squared() {
        let r = FiniteRing::new(vec![f3(), f3()]).unwrap();
        let a = PresentedAlgebra::from_ring(&r);
        let base = Subalgebra::span(&a, &[a.one().to_vec()]);
        let all = enumerate_subalgebras(&a, &base, 1 << 12).unwrap();
        assert_eq!(all.len(), 2);
    }
}
