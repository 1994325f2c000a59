//! Exact integer linear algebra on finite abelian groups.
//!
//! Every finite abelian group handled by this crate is a quotient `Z^n / L`
//! where the relation lattice `L` contains `N·Z^n` for a fixed exponent `N`.
//! That lets all arithmetic stay reduced mod `N` (no coefficient growth),
//! and the canonical Hermite form of `L` decides membership, equality of
//! subgroups, group orders, kernels and preimages.

use num_bigint::BigUint;

/// Reduce `a` into `[0, n)`.
#[inline]
pub(crate) fn modn(a: i64, n: i64) -> i64 {
    let r = a % n;
    if r < 0 {
        r + n
    } else {
        r
    }
}

#[inline]
fn mulmod(a: i64, b: i64, n: i64) -> i64 {
    modn(((a as i128 * b as i128) % n as i128) as i64, n)
}

/// Extended gcd on non-negative inputs: returns `(g, x, y)` with `g = x·a + y·b`.
pub(crate) fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i64, 0i64);
    let (mut old_t, mut t) = (0i64, 1i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

pub(crate) fn gcd(a: i64, b: i64) -> i64 {
    ext_gcd(a.abs(), b.abs()).0
}

pub(crate) fn lcm(a: i64, b: i64) -> i64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

/// `v -= q·w (mod n)` on columns `from..`.
fn sub_mul(v: &mut [i64], w: &[i64], q: i64, n: i64, from: usize) {
    if q == 0 {
        return;
    }
    let q = modn(q, n);
    for c in from..v.len() {
        if w[c] != 0 {
            v[c] = modn(v[c] - mulmod(q, w[c], n), n);
        }
    }
}

fn scaled(w: &[i64], q: i64, n: i64) -> Vec<i64> {
    w.iter().map(|&x| mulmod(q, x, n)).collect()
}

fn is_zero(v: &[i64]) -> bool {
    v.iter().all(|&x| x == 0)
}

/// A sublattice `L` of `Z^dim` with `modulus·Z^dim ⊆ L`, in canonical
/// Hermite form: `rows[j]` has its pivot in column `j`, the pivot divides
/// the modulus, and every entry above a pivot `d` lies in `[0, d)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    dim: usize,
    modulus: i64,
    rows: Vec<Vec<i64>>,
}

struct Builder {
    dim: usize,
    modulus: i64,
    piv: Vec<Option<Vec<i64>>>,
}

impl Builder {
    fn new(dim: usize, modulus: i64) -> Self {
        assert!(modulus >= 1, "lattice modulus must be positive");
        Builder {
            dim,
            modulus,
            piv: vec![None; dim],
        }
    }

    fn add(&mut self, v: &[i64]) {
        assert_eq!(v.len(), self.dim, "vector length does not match lattice dimension");
        let n = self.modulus;
        let v: Vec<i64> = v.iter().map(|&x| modn(x, n)).collect();
        let mut stack = vec![(v, 0usize)];
        while let Some((v, start)) = stack.pop() {
            self.absorb(v, start, &mut stack);
        }
    }

    fn absorb(&mut self, mut v: Vec<i64>, start: usize, stack: &mut Vec<(Vec<i64>, usize)>) {
        let n = self.modulus;
        if n == 1 {
            return;
        }
        for j in start..self.dim {
            if v[j] == 0 {
                continue;
            }
            match self.piv[j].take() {
                None => {
                    let (g, a, _) = ext_gcd(v[j], n);
                    let w = scaled(&v, a, n);
                    debug_assert_eq!(w[j], g);
                    let q = v[j] / g;
                    sub_mul(&mut v, &w, q, n, j);
                    let extra = scaled(&w, n / g, n);
                    self.piv[j] = Some(w);
                    if !is_zero(&extra) {
                        stack.push((extra, j + 1));
                    }
                }
                Some(b) => {
                    if v[j] % b[j] == 0 {
                        let q = v[j] / b[j];
                        sub_mul(&mut v, &b, q, n, j);
                        self.piv[j] = Some(b);
                    } else {
                        let (g, x, y) = ext_gcd(b[j], v[j]);
                        let mut p = scaled(&b, x, n);
                        for c in j..self.dim {
                            p[c] = modn(p[c] + mulmod(y, v[c], n), n);
                        }
                        debug_assert_eq!(p[j], g);
                        let mut b2 = b.clone();
                        sub_mul(&mut b2, &p, b[j] / g, n, j);
                        let q = v[j] / g;
                        sub_mul(&mut v, &p, q, n, j);
                        let extra = scaled(&p, n / g, n);
                        self.piv[j] = Some(p);
                        if !is_zero(&b2) {
                            stack.push((b2, j + 1));
                        }
                        if !is_zero(&extra) {
                            stack.push((extra, j + 1));
                        }
                    }
                }
            }
        }
    }

    fn finish(self) -> Lattice {
        let n = self.modulus;
        let dim = self.dim;
        let mut rows: Vec<Vec<i64>> = self
            .piv
            .into_iter()
            .enumerate()
            .map(|(j, r)| match r {
                Some(r) => r,
                None => {
                    let mut e = vec![0; dim];
                    e[j] = n;
                    e
                }
            })
            .collect();
        for j in 0..dim {
            let d = rows[j][j];
            let (head, tail) = rows.split_at_mut(j);
            let pivot_row = &tail[0];
            for row in head.iter_mut() {
                let q = row[j] / d;
                if q != 0 {
                    sub_mul(row, pivot_row, q, n, j);
                    // sub_mul reduces mod n; column j must land in [0, d)
                    debug_assert!(row[j] < d);
                }
            }
        }
        Lattice { dim, modulus: n, rows }
    }
}

impl Lattice {
    /// The lattice generated by `gens` together with `modulus·Z^dim`.
    pub fn from_generators<'a, I>(dim: usize, modulus: i64, gens: I) -> Self
    where
        I: IntoIterator<Item = &'a Vec<i64>>,
    {
        let mut b = Builder::new(dim, modulus);
        for g in gens {
            b.add(g);
        }
        b.finish()
    }

    /// `⊕ m_i Z`, the relation lattice of `Z/m_1 ⊕ … ⊕ Z/m_n`.
    pub fn diagonal(moduli: &[i64]) -> Self {
        let modulus = moduli.iter().fold(1, |acc, &m| lcm(acc, m));
        let gens: Vec<Vec<i64>> = moduli
            .iter()
            .enumerate()
            .map(|(i, &m)| {
                let mut e = vec![0; moduli.len()];
                e[i] = m;
                e
            })
            .collect();
        Self::from_generators(moduli.len(), modulus, gens.iter())
    }

    /// All of `Z^dim`.
    pub fn full(dim: usize, modulus: i64) -> Self {
        let gens: Vec<Vec<i64>> = (0..dim)
            .map(|i| {
                let mut e = vec![0; dim];
                e[i] = 1;
                e
            })
            .collect();
        Self::from_generators(dim, modulus, gens.iter())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn modulus(&self) -> i64 {
        self.modulus
    }

    /// Canonical Hermite rows (one per column).
    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn pivots(&self) -> impl Iterator<Item = i64> + '_ {
        self.rows.iter().enumerate().map(|(j, r)| r[j])
    }

    /// Rows that are not already multiples of the modulus; together with
    /// `modulus·Z^dim` they generate the lattice.
    pub fn generators(&self) -> Vec<Vec<i64>> {
        let n = self.modulus;
        self.rows
            .iter()
            .filter(|r| r.iter().any(|&x| x % n != 0))
            .cloned()
            .collect()
    }

    /// The same lattice with a larger modulus `m` (must be a multiple of the current one).
    pub fn with_modulus(&self, m: i64) -> Self {
        assert_eq!(m % self.modulus, 0, "new modulus must be a multiple");
        let mut gens = self.generators();
        for j in 0..self.dim {
            let mut e = vec![0; self.dim];
            e[j] = self.modulus;
            gens.push(e);
        }
        Self::from_generators(self.dim, m, gens.iter())
    }

    /// Canonical representative of the coset `v + L`.
    pub fn reduce(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(v.len(), self.dim, "vector length does not match lattice dimension");
        let n = self.modulus;
        let mut v: Vec<i64> = v.iter().map(|&x| modn(x, n)).collect();
        for j in 0..self.dim {
            let d = self.rows[j][j];
            let q = v[j] / d;
            if q != 0 {
                sub_mul(&mut v, &self.rows[j], q, n, j);
            }
        }
        v
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        is_zero(&self.reduce(v))
    }

    /// `[Z^dim : L]`, i.e. the order of `Z^dim / L`.
    pub fn index(&self) -> BigUint {
        self.pivots()
            .fold(BigUint::from(1u32), |acc, d| acc * BigUint::from(d as u64))
    }

    /// `self ⊆ other`. The Hermite rows form a Z-basis of the lattice.
    pub fn is_sublattice_of(&self, other: &Lattice) -> bool {
        self.dim == other.dim && self.rows.iter().all(|r| other.contains(r))
    }

    /// `self + other`.
    pub fn sum(&self, other: &Lattice) -> Lattice {
        assert_eq!(self.dim, other.dim);
        let m = lcm(self.modulus, other.modulus);
        let a = if m == self.modulus {
            self.clone()
        } else {
            self.with_modulus(m)
        };
        let b = if m == other.modulus {
            other.clone()
        } else {
            other.with_modulus(m)
        };
        let mut builder = Builder::new(self.dim, m);
        for g in a.generators().iter().chain(b.generators().iter()) {
            builder.add(g);
        }
        builder.finish()
    }

    /// `self ∩ other`, computed as the kernel of `x ↦ (x, x)` into `Z^n/L ⊕ Z^n/L'`.
    pub fn intersection(&self, other: &Lattice) -> Lattice {
        assert_eq!(self.dim, other.dim);
        let target = Lattice::direct_sum(&[self.clone(), other.clone()]);
        let images: Vec<Vec<i64>> = (0..self.dim)
            .map(|i| {
                let mut row = vec![0; 2 * self.dim];
                row[i] = 1;
                row[self.dim + i] = 1;
                row
            })
            .collect();
        LinearMap::new(images, target).kernel()
    }

    /// Block-diagonal direct sum; moduli are lifted to their lcm.
    pub fn direct_sum(parts: &[Lattice]) -> Lattice {
        let m = parts.iter().fold(1, |acc, l| lcm(acc, l.modulus));
        let dim: usize = parts.iter().map(|l| l.dim).sum();
        let mut builder = Builder::new(dim, m);
        let mut off = 0;
        for l in parts {
            let l = if l.modulus == m { l.clone() } else { l.with_modulus(m) };
            for g in l.generators() {
                let mut v = vec![0; dim];
                v[off..off + l.dim].copy_from_slice(&g);
                builder.add(&v);
            }
            off += l.dim;
        }
        builder.finish()
    }

    /// Drop the columns whose pivot is 1. `Z^dim/L` is isomorphic to
    /// `Z^k/L'` on the remaining `k` columns via `v ↦ reduce(v)|cols`.
    pub fn compact(&self) -> Compact {
        let cols: Vec<usize> = (0..self.dim).filter(|&j| self.rows[j][j] != 1).collect();
        let gens: Vec<Vec<i64>> = cols
            .iter()
            .map(|&j| cols.iter().map(|&c| self.rows[j][c]).collect())
            .collect();
        let lattice = Lattice::from_generators(cols.len(), self.modulus, gens.iter());
        Compact {
            source: self.clone(),
            cols,
            lattice,
        }
    }
}

/// Compact coordinates for a quotient `Z^n / L`.
#[derive(Clone, Debug)]
pub struct Compact {
    source: Lattice,
    cols: Vec<usize>,
    lattice: Lattice,
}

impl Compact {
    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn dim(&self) -> usize {
        self.cols.len()
    }

    /// Image of a vector of `Z^n` in compact coordinates.
    pub fn project(&self, v: &[i64]) -> Vec<i64> {
        let r = self.source.reduce(v);
        self.cols.iter().map(|&c| r[c]).collect()
    }

    /// A vector of `Z^n` representing the compact vector `w`.
    pub fn lift(&self, w: &[i64]) -> Vec<i64> {
        let mut v = vec![0; self.source.dim];
        for (k, &c) in self.cols.iter().enumerate() {
            v[c] = w[k];
        }
        v
    }
}

/// An additive map `Z^a → Z^b / L_target`, given by the images of the
/// standard generators (row convention: `x ↦ Σ x_i images[i]`).
#[derive(Clone, Debug)]
pub struct LinearMap {
    images: Vec<Vec<i64>>,
    target: Lattice,
    solved: Option<Lattice>,
}

impl LinearMap {
    pub fn new(images: Vec<Vec<i64>>, target: Lattice) -> Self {
        for row in &images {
            assert_eq!(row.len(), target.dim, "image length does not match codomain");
        }
        LinearMap {
            images,
            target,
            solved: None,
        }
    }

    pub fn domain_dim(&self) -> usize {
        self.images.len()
    }

    pub fn target(&self) -> &Lattice {
        &self.target
    }

    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        assert_eq!(x.len(), self.images.len());
        let n = self.target.modulus;
        let mut out = vec![0; self.target.dim];
        for (xi, row) in x.iter().zip(&self.images) {
            let xi = modn(*xi, n);
            if xi == 0 {
                continue;
            }
            for (o, &r) in out.iter_mut().zip(row) {
                if r != 0 {
                    *o = modn(*o + mulmod(xi, r, n), n);
                }
            }
        }
        self.target.reduce(&out)
    }

    /// Hermite form of `{[xF + l | x]}` in `Z^(b+a)`.
    fn combined(&mut self) -> &Lattice {
        if self.solved.is_none() {
            let a = self.images.len();
            let b = self.target.dim;
            let n = self.target.modulus;
            let mut builder = Builder::new(a + b, n);
            for (i, row) in self.images.iter().enumerate() {
                let mut v = vec![0; a + b];
                v[..b].copy_from_slice(row);
                v[b + i] = 1;
                builder.add(&v);
            }
            for g in self.target.generators() {
                let mut v = vec![0; a + b];
                v[..b].copy_from_slice(&g);
                builder.add(&v);
            }
            self.solved = Some(builder.finish());
        }
        self.solved.as_ref().unwrap()
    }

    /// `{x ∈ Z^a : xF ∈ L_target}`.
    pub fn kernel(mut self) -> Lattice {
        self.kernel_ref()
    }

    pub fn kernel_ref(&mut self) -> Lattice {
        let a = self.images.len();
        let b = self.target.dim;
        let n = self.target.modulus;
        let comb = self.combined().clone();
        let rows: Vec<Vec<i64>> = (b..a + b).map(|j| comb.rows[j][b..].to_vec()).collect();
        Lattice {
            dim: a,
            modulus: n,
            rows,
        }
    }

    /// Some `x` with `xF ≡ rhs (mod L_target)`, or `None` when no solution exists.
    pub fn preimage(&mut self, rhs: &[i64]) -> Option<Vec<i64>> {
        let a = self.images.len();
        let b = self.target.dim;
        let n = self.target.modulus;
        assert_eq!(rhs.len(), b);
        let comb = self.combined().clone();
        let mut v = vec![0; a + b];
        for (c, &x) in rhs.iter().enumerate() {
            v[c] = modn(x, n);
        }
        for j in 0..b {
            let d = comb.rows[j][j];
            if v[j] % d != 0 {
                return None;
            }
            let q = v[j] / d;
            sub_mul(&mut v, &comb.rows[j], q, n, j);
        }
        let x: Vec<i64> = v[b..].iter().map(|&t| modn(-t, n)).collect();
        debug_assert_eq!(self.apply(&x), self.target.reduce(rhs));
        Some(x)
    }

    /// `L_target + span(images)` as a lattice in `Z^b`.
    pub fn image(&self) -> Lattice {
        let mut builder = Builder::new(self.target.dim, self.target.modulus);
        for g in self.target.generators().iter().chain(self.images.iter()) {
            builder.add(g);
        }
        builder.finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn doubling_on_z4_has_kernel_of_order_two() {
        let target = Lattice::diagonal(&[4]);
        let map = LinearMap::new(vec![vec![2]], target);
        let ker = map.kernel();
        // kernel lattice {0,2} + 4Z: index 2 in Z, so |Z/4 / ker| ... ker/4Z has order 2
        assert_eq!(ker.index(), BigUint::from(2u32));
        assert!(ker.contains(&[2]));
        assert!(!ker.contains(&[1]));
    }

    #[test]
    fn two_x_equals_one_in_z4_has_no_solution() {
        let mut map = LinearMap::new(vec![vec![2]], Lattice::diagonal(&[4]));
        assert_eq!(map.preimage(&[1]), None);
        let x = map.preimage(&[2]).unwrap();
        assert_eq!(modn(2 * x[0], 4), 2);
    }

    #[test]
    fn identity_map_kernel_is_trivial() {
        let target = Lattice::diagonal(&[3, 9]);
        let map = LinearMap::new(vec![vec![1, 0], vec![0, 1]], target.clone());
        assert_eq!(map.kernel(), target);
    }

    #[test]
    fn hermite_form_is_canonical() {
        let a = Lattice::from_generators(2, 6, [vec![2, 3], vec![4, 0]].iter());
        let b = Lattice::from_generators(2, 6, [vec![4, 0], vec![2, 3], vec![6, 3]].iter());
        assert_eq!(a, b);
    }

    #[test]
    fn compact_coordinates_preserve_order() {
        let l = Lattice::from_generators(3, 9, [vec![1, 2, 0], vec![0, 3, 0]].iter());
        let c = l.compact();
        assert_eq!(c.lattice().index(), l.index());
        assert!(c.dim() < 3);
    }

    #[test]
    fn intersection_of_coordinate_sublattices() {
        let a = Lattice::from_generators(1, 12, [vec![2]].iter());
        let b = Lattice::from_generators(1, 12, [vec![3]].iter());
        assert_eq!(a.intersection(&b), Lattice::from_generators(1, 12, [vec![6]].iter()));
    }
}
