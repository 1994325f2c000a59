//! Galois criteria for actions on presented algebras, with certificates.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::action::LinearAction;
use crate::algebra::{ModuleGens, PresentedAlgebra, Subalgebra, Tensor, TensorSide};
use crate::error::{Error, Result};
use crate::lattice::{Lattice, LinearMap};
use crate::semigroup::SubSemigroup;

fn stacked(alg: &PresentedAlgebra, copies: usize) -> Lattice {
    Lattice::direct_sum(&vec![alg.rel().clone(); copies])
}

fn unit(len: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; len];
    v[i] = 1;
    v
}

/// Default refusal threshold for tensor orders. The cost depends on the
/// lattice dimension rather than the order, so this is generous: three
/// atoms of order 8 over `F_2` already give `2^81`.
pub fn default_tensor_guard() -> BigUint {
    BigUint::from(1u8) << 96u32
}

/// Right-hand side of the coordinate identity at `s`: `1_s` for idempotent `s`, else `0`.
pub fn galois_rhs(lin: &LinearAction, s: usize) -> Vec<i64> {
    if lin.sg.is_idempotent(s) {
        lin.alg.reduce(&lin.units[s])
    } else {
        lin.alg.zero()
    }
}

/// `Σ_{e ∈ E(S)} 1_e δ_{e,s}` evaluated term by term.
pub fn galois_rhs_literal(lin: &LinearAction, s: usize) -> Vec<i64> {
    lin.sg
        .idempotents()
        .into_iter()
        .filter(|&e| e == s)
        .fold(lin.alg.zero(), |acc, e| lin.alg.add(&acc, &lin.units[e]))
}

/// A Galois coordinate system `{(x_i, y_i)}` with `x_i` the generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coordinates {
    pub pairs: Vec<(Vec<i64>, Vec<i64>)>,
}

fn solve_coordinates(alg: &PresentedAlgebra, maps: &[Vec<Vec<i64>>], rhs: &[Vec<i64>]) -> Option<Coordinates> {
    let n = alg.dim();
    let k = maps.len();
    let images: Vec<Vec<i64>> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| {
            let g = alg.gen(i);
            maps.iter().flat_map(|m| alg.mul(&g, &m[j])).collect()
        })
        .collect();
    let mut map = LinearMap::new(images, stacked(alg, k));
    let target: Vec<i64> = rhs.iter().flatten().copied().collect();
    let y = map.preimage(&target)?;
    let pairs = (0..n)
        .map(|i| (alg.gen(i), alg.reduce(&y[i * n..(i + 1) * n])))
        .collect();
    Some(Coordinates { pairs })
}

fn coordinates_hold(alg: &PresentedAlgebra, maps: &[Vec<Vec<i64>>], rhs: &[Vec<i64>], c: &Coordinates) -> bool {
    maps.iter().zip(rhs).all(|(m, r)| {
        let lhs = c.pairs.iter().fold(alg.zero(), |acc, (x, y)| {
            alg.add(&acc, &alg.mul(x, &alg.apply_matrix(m, y)))
        });
        alg.eq(&lhs, r)
    })
}

/// Criterion (i): solve `Σ x_i β_s(y_i 1_{s⁻¹}) = δ-term` with `x` fixed to
/// the generators. Any solution is re-verified for every `s`.
pub fn solve_galois_coordinates(lin: &LinearAction) -> Option<Coordinates> {
    let rhs: Vec<Vec<i64>> = (0..lin.sg.len()).map(|s| galois_rhs(lin, s)).collect();
    let c = solve_coordinates(&lin.alg, &lin.maps, &rhs)?;
    assert!(
        coordinates_hold(&lin.alg, &lin.maps, &rhs, &c),
        "coordinate solution fails re-evaluation"
    );
    Some(c)
}

pub fn verify_coordinates(lin: &LinearAction, c: &Coordinates) -> bool {
    let rhs: Vec<Vec<i64>> = (0..lin.sg.len()).map(|s| galois_rhs(lin, s)).collect();
    coordinates_hold(&lin.alg, &lin.maps, &rhs, c)
}

/// The same for the attached partial group action: right side `δ_{1_G, g}`.
pub fn solve_alpha_coordinates(lin: &LinearAction) -> Option<Option<Coordinates>> {
    let g = lin.group.as_ref()?;
    let rhs: Vec<Vec<i64>> = (0..g.group.order())
        .map(|c| {
            if c == g.group.identity {
                lin.alg.one().to_vec()
            } else {
                lin.alg.zero()
            }
        })
        .collect();
    let c = solve_coordinates(&lin.alg, &g.maps, &rhs);
    if let Some(c) = &c {
        assert!(
            coordinates_hold(&lin.alg, &g.maps, &rhs, c),
            "alpha coordinates fail re-evaluation"
        );
    }
    Some(c)
}

/// Criterion (ix): `tr^σ(A) = A^β`. `None` without a group part.
pub fn is_galois_trace_criterion(lin: &LinearAction) -> Option<bool> {
    let img = lin.sigma_trace_image()?;
    let inv = lin.invariant_ring();
    let img = Subalgebra::from_lattice(&lin.alg, img).expect("image contains the relations");
    Some(img == inv)
}

/// `A ⊗_{A^β} A`, `PA_β(S)` and `ψ`, with orders as decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsiCheck {
    pub tensor_order: String,
    pub pa_order: String,
    pub image_order: String,
    pub injective: bool,
    pub surjective: bool,
}

impl PsiCheck {
    pub fn bijective(&self) -> bool {
        self.injective && self.surjective
    }
}

/// `PA_β(S)` as a lattice in `Z^{n·|S|}` containing the stacked relations.
pub fn build_pa_beta_s(lin: &LinearAction) -> Lattice {
    let alg = &lin.alg;
    let n = alg.dim();
    let k = lin.sg.len();
    let mut conditions: Vec<(usize, Option<usize>)> = (0..k).map(|s| (s, None)).collect();
    for s in 0..k {
        for t in 0..k {
            if s != t && lin.sg.natural_leq(s, t) {
                conditions.push((s, Some(t)));
            }
        }
    }
    let m = conditions.len();
    // coordinate (s, i) ↦ one block per condition
    let images: Vec<Vec<i64>> = (0..k)
        .flat_map(|s| (0..n).map(move |i| (s, i)))
        .map(|(u, i)| {
            let g = alg.gen(i);
            let mut row = vec![0; m * n];
            for (c, &(s, t)) in conditions.iter().enumerate() {
                let block = &mut row[c * n..(c + 1) * n];
                let v = match t {
                    None if u == s => alg.sub(&g, &alg.mul(&g, &lin.units[s])),
                    Some(_) if u == s => g.clone(),
                    Some(t) if u == t => alg.scale(-1, &alg.mul(&g, &lin.units[s])),
                    _ => continue,
                };
                block.copy_from_slice(&v);
            }
            row
        })
        .collect();
    LinearMap::new(images, stacked(alg, m)).kernel()
}

fn order_of(ambient: &Lattice, sub: &Lattice) -> BigUint {
    ambient.index() / sub.index()
}

/// Criterion (iv): `ψ: A ⊗_{A^β} A → PA_β(S)` is bijective.
pub fn psi_check(lin: &LinearAction, limit: &BigUint) -> Result<PsiCheck> {
    let alg = &lin.alg;
    let n = alg.dim();
    let k = lin.sg.len();
    let base = lin.invariant_ring().generators(alg);
    let gens: Vec<Vec<i64>> = (0..n).map(|i| alg.gen(i)).collect();
    let mut left = ModuleGens::new(alg, gens.clone());
    let mut right = ModuleGens::new(alg, gens);
    let tensor = Tensor::build(
        TensorSide {
            alg,
            module: &mut left,
            base: &base,
        },
        TensorSide {
            alg,
            module: &mut right,
            base: &base,
        },
        limit,
    )?;
    let target = stacked(alg, k);
    let images: Vec<Vec<i64>> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| {
            let g = alg.gen(i);
            lin.maps.iter().flat_map(|m| alg.mul(&g, &m[j])).collect()
        })
        .collect();
    let map = LinearMap::new(images, target.clone());
    let image = map.image();
    let ker = map.kernel();
    if !tensor.rel().is_sublattice_of(&ker) {
        return Err(Error::InconsistentPresentation(
            "psi is not defined on the tensor product".into(),
        ));
    }
    let pa = build_pa_beta_s(lin);
    if !image.is_sublattice_of(&pa) {
        return Err(Error::InconsistentPresentation("psi leaves PA".into()));
    }
    let tensor_order = tensor.order();
    let image_order = order_of(&target, &image);
    let pa_order = order_of(&target, &pa);
    Ok(PsiCheck {
        injective: image_order == tensor_order,
        surjective: image_order == pa_order,
        tensor_order: tensor_order.to_string(),
        pa_order: pa_order.to_string(),
        image_order: image_order.to_string(),
    })
}

/// `S_B = {s : β_s(b 1_{s⁻¹}) = b 1_s for all b ∈ B}`, tested on generators of `B`.
pub fn compute_s_b(lin: &LinearAction, b: &Subalgebra) -> Result<SubSemigroup> {
    let alg = &lin.alg;
    if !b.is_closed(alg) {
        return Err(Error::NotSubalgebra("not closed under products or missing 1".into()));
    }
    if !lin.invariant_ring().is_subset_of(b) {
        return Err(Error::NotSubalgebra("does not contain the invariant ring".into()));
    }
    let gens = b.generators(alg);
    let members = (0..lin.sg.len())
        .filter(|&s| {
            gens.iter()
                .all(|x| alg.eq(&lin.apply(s, x), &alg.mul(x, &lin.units[s])))
        })
        .collect();
    Ok(SubSemigroup::new(members))
}

/// Result of a separability solve of `B` over `R`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Separability {
    /// Coordinates of `e` over the generator pairs `b_i ⊗ b_j`.
    pub idempotent: Option<Vec<i64>>,
    pub tensor_order: String,
}

/// `B ⊗_R B` with its defining linear conditions, kept for re-verification.
pub struct SeparabilityProblem<'a> {
    alg: &'a PresentedAlgebra,
    b_gens: Vec<Vec<i64>>,
    tensor: Tensor,
    map: LinearMap,
    rhs: Vec<i64>,
}

impl<'a> SeparabilityProblem<'a> {
    /// `b_gens` additively generate `B`, `r_gens` generate `R ⊆ B`.
    pub fn new(alg: &'a PresentedAlgebra, b_gens: Vec<Vec<i64>>, r_gens: &[Vec<i64>], limit: &BigUint) -> Result<Self> {
        let mut left = ModuleGens::new(alg, b_gens.clone());
        let mut right = ModuleGens::new(alg, b_gens.clone());
        for r in r_gens {
            if left.express(r).is_none() {
                return Err(Error::NotSubring("base is not contained in the algebra".into()));
            }
        }
        let tensor = Tensor::build(
            TensorSide {
                alg,
                module: &mut left,
                base: r_gens,
            },
            TensorSide {
                alg,
                module: &mut right,
                base: r_gens,
            },
            limit,
        )?;
        let m = b_gens.len();
        let dim = tensor.dim();
        let diffs: Vec<Vec<Vec<i64>>> = b_gens
            .iter()
            .map(|b| {
                let l = tensor.left_mul_matrix(alg, &mut left, b)?;
                let r = tensor.right_mul_matrix(alg, &mut right, b)?;
                Ok(l.iter()
                    .zip(&r)
                    .map(|(x, y)| x.iter().zip(y).map(|(p, q)| p - q).collect())
                    .collect())
            })
            .collect::<Result<_>>()?;
        let images: Vec<Vec<i64>> = (0..m)
            .flat_map(|i| (0..m).map(move |j| (i, j)))
            .map(|(i, j)| {
                let mut row = alg.mul(&b_gens[i], &b_gens[j]);
                for d in &diffs {
                    row.extend_from_slice(&d[tensor.index(i, j)]);
                }
                row
            })
            .collect();
        let mut parts = vec![alg.rel().clone()];
        parts.extend(std::iter::repeat_n(tensor.rel().clone(), diffs.len()));
        let target = Lattice::direct_sum(&parts);
        let mut rhs = alg.one().to_vec();
        rhs.extend(std::iter::repeat_n(0, dim * diffs.len()));
        Ok(SeparabilityProblem {
            alg,
            b_gens,
            tensor,
            map: LinearMap::new(images, target),
            rhs,
        })
    }

    pub fn tensor(&self) -> &Tensor {
        &self.tensor
    }

    pub fn solve(&mut self) -> Option<Vec<i64>> {
        let z = self.map.preimage(&self.rhs)?;
        let z = self.tensor.rel().reduce(&z);
        assert!(self.verify(&z), "separability idempotent fails re-evaluation");
        Some(z)
    }

    /// `m(z) = 1` and `(b ⊗ 1)z = (1 ⊗ b)z` for the generators `b`.
    pub fn verify(&self, z: &[i64]) -> bool {
        let got = self.map.apply(z);
        let want = self.map.target().reduce(&self.rhs);
        got == want && self.alg.eq(&self.multiply_out(z), self.alg.one())
    }

    fn multiply_out(&self, z: &[i64]) -> Vec<i64> {
        let m = self.b_gens.len();
        let mut acc = self.alg.zero();
        for i in 0..m {
            for j in 0..m {
                let c = z[self.tensor.index(i, j)];
                if c != 0 {
                    acc = self.alg.add(
                        &acc,
                        &self.alg.scale(c, &self.alg.mul(&self.b_gens[i], &self.b_gens[j])),
                    );
                }
            }
        }
        acc
    }

    /// `Σ x_i ⊗ y_i` where `x_i` is the `i`-th generator and `y` is given in algebra coordinates.
    pub fn element_from_pairs(&mut self, ys: &[Vec<i64>]) -> Option<Vec<i64>> {
        let mut right = ModuleGens::new(self.alg, self.b_gens.clone());
        let mut z = vec![0; self.tensor.dim()];
        for (i, y) in ys.iter().enumerate() {
            let c = right.express(y)?;
            let t = self.tensor.outer(&unit(self.b_gens.len(), i), &c);
            for (o, v) in z.iter_mut().zip(t) {
                *o += v;
            }
        }
        Some(self.tensor.rel().reduce(&z))
    }
}

/// Is `B` separable over `R ⊆ B`?
pub fn is_separable(alg: &PresentedAlgebra, b: &Subalgebra, r: &Subalgebra, limit: &BigUint) -> Result<Separability> {
    if !r.is_subset_of(b) {
        return Err(Error::NotSubring("base is not contained in the algebra".into()));
    }
    let mut gens = b.generators(alg);
    if gens.is_empty() {
        gens.push(alg.zero());
    }
    let mut p = SeparabilityProblem::new(alg, gens, &r.generators(alg), limit)?;
    Ok(Separability {
        idempotent: p.solve(),
        tensor_order: p.tensor().order().to_string(),
    })
}

/// One `(s, t)` pair of a β-strong check, with the generators of `B`
/// that separate `β_s` and `β_t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrongWitness {
    pub s: usize,
    pub t: usize,
    pub b: Vec<Vec<i64>>,
}

/// A failing triple: no `b ∈ B` separates `β_s` and `β_t` at the idempotent `e`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrongFailure {
    pub s: usize,
    pub t: usize,
    pub e: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrongCheck {
    pub holds: bool,
    pub witnesses: Vec<StrongWitness>,
    pub failure: Option<StrongFailure>,
}

fn is_nilpotent(alg: &PresentedAlgebra, x: &[i64]) -> bool {
    let mut y = alg.reduce(x);
    for _ in 0..9 {
        if alg.is_zero(&y) {
            return true;
        }
        y = alg.mul(&y, &y);
    }
    alg.is_zero(&y)
}

/// A nonzero idempotent power of a non-nilpotent `x`.
fn idempotent_power(alg: &PresentedAlgebra, x: &[i64]) -> Vec<i64> {
    let mut y = alg.reduce(x);
    for _ in 0..(1 << 16) {
        if alg.eq(&alg.mul(&y, &y), &y) {
            return y;
        }
        y = alg.mul(&y, x);
    }
    alg.reduce(x)
}

/// β-strong for `B`. For each `(s, t)` with `s⁻¹t ∉ S_B` and `u ∈ {s, t}`,
/// the elements of `A_u` killed by every `β_s(b1_{s⁻¹}) − β_t(b1_{t⁻¹})`
/// form an ideal; some nonzero idempotent lies in it exactly when it is not nil.
pub fn is_beta_strong(lin: &LinearAction, b: &Subalgebra) -> Result<StrongCheck> {
    let alg = &lin.alg;
    let n = alg.dim();
    let sb = compute_s_b(lin, b)?;
    let gens = b.generators(alg);
    let k = lin.sg.len();
    let mut witnesses = Vec::new();
    for s in 0..k {
        for t in 0..k {
            if sb.contains(lin.sg.mul(lin.sg.inv(s), t)) {
                continue;
            }
            let mut sep = Vec::new();
            let mut diffs = Vec::new();
            for x in &gens {
                let d = alg.sub(&lin.apply(s, x), &lin.apply(t, x));
                if !alg.is_zero(&d) {
                    sep.push(x.clone());
                    diffs.push(d);
                }
            }
            for u in [s, t] {
                let images: Vec<Vec<i64>> = (0..n)
                    .map(|i| {
                        let g = alg.gen(i);
                        let mut row = alg.sub(&alg.mul(&g, &lin.units[u]), &g);
                        for d in &diffs {
                            row.extend(alg.mul(&g, d));
                        }
                        row
                    })
                    .collect();
                let ann = LinearMap::new(images, stacked(alg, diffs.len() + 1)).kernel();
                if let Some(x) = ann.generators().iter().find(|x| !is_nilpotent(alg, x)) {
                    return Ok(StrongCheck {
                        holds: false,
                        witnesses,
                        failure: Some(StrongFailure {
                            s,
                            t,
                            e: idempotent_power(alg, x),
                        }),
                    });
                }
            }
            witnesses.push(StrongWitness { s, t, b: sep });
        }
    }
    Ok(StrongCheck {
        holds: true,
        witnesses,
        failure: None,
    })
}

/// All criteria, evaluated independently.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaloisCertificate {
    pub coordinates: Option<Coordinates>,
    pub trace_image_generators: Vec<Vec<i64>>,
    pub invariant_order: String,
    pub psi: PsiCheck,
    pub separability: Separability,
    pub strong: StrongCheck,
    pub trace_criterion: Option<bool>,
    pub alpha_coordinates: Option<Option<Coordinates>>,
    /// `e = Σ x_i ⊗ y_i` built from the coordinates passes the separability check.
    pub coordinates_give_idempotent: Option<bool>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriteriaVerdicts {
    pub coordinates: bool,
    pub psi: bool,
    pub separable_strong: bool,
    pub trace: Option<bool>,
    pub alpha: Option<bool>,
}

impl CriteriaVerdicts {
    pub fn unanimous(&self) -> bool {
        let v = self.coordinates;
        self.psi == v
            && self.separable_strong == v
            && self.trace.is_none_or(|x| x == v)
            && self.alpha.is_none_or(|x| x == v)
    }

    pub fn disagreements(&self) -> Vec<&'static str> {
        let v = self.coordinates;
        let mut out = Vec::new();
        if self.psi != v {
            out.push("psi");
        }
        if self.separable_strong != v {
            out.push("separable+strong");
        }
        if self.trace.is_some_and(|x| x != v) {
            out.push("trace");
        }
        if self.alpha.is_some_and(|x| x != v) {
            out.push("alpha");
        }
        out
    }
}

impl GaloisCertificate {
    pub fn verdicts(&self) -> CriteriaVerdicts {
        CriteriaVerdicts {
            coordinates: self.coordinates.is_some(),
            psi: self.psi.bijective(),
            separable_strong: self.separability.idempotent.is_some() && self.strong.holds,
            trace: self.trace_criterion,
            alpha: self.alpha_coordinates.as_ref().map(|c| c.is_some()),
        }
    }
}

/// Evaluate criteria (i), (iv), (v), (ix) and the partial group action
/// coordinates, without comparing them.
pub fn evaluate_criteria(lin: &LinearAction, limit: &BigUint) -> Result<GaloisCertificate> {
    let alg = &lin.alg;
    let inv = lin.invariant_ring();
    let coordinates = solve_galois_coordinates(lin);
    let psi = psi_check(lin, limit)?;
    let whole_gens: Vec<Vec<i64>> = (0..alg.dim()).map(|i| alg.gen(i)).collect();
    let mut sep = SeparabilityProblem::new(alg, whole_gens, &inv.generators(alg), limit)?;
    let separability = Separability {
        idempotent: sep.solve(),
        tensor_order: sep.tensor().order().to_string(),
    };
    let coordinates_give_idempotent = coordinates.as_ref().map(|c| {
        let ys: Vec<Vec<i64>> = c.pairs.iter().map(|(_, y)| y.clone()).collect();
        sep.element_from_pairs(&ys).is_some_and(|z| sep.verify(&z))
    });
    let strong = is_beta_strong(lin, &Subalgebra::whole(alg))?;
    let trace_image_generators = lin
        .sigma_trace_image()
        .map(|l| {
            Subalgebra::from_lattice(alg, l)
                .expect("image contains the relations")
                .generators(alg)
        })
        .unwrap_or_default();
    Ok(GaloisCertificate {
        coordinates,
        trace_image_generators,
        invariant_order: inv.order(alg).to_string(),
        psi,
        separability,
        strong,
        trace_criterion: is_galois_trace_criterion(lin),
        alpha_coordinates: solve_alpha_coordinates(lin),
        coordinates_give_idempotent,
    })
}

/// As [`evaluate_criteria`], failing with `EquivalenceViolation` unless all agree.
pub fn cross_check_equivalences(lin: &LinearAction, limit: &BigUint) -> Result<GaloisCertificate> {
    check_hypotheses(lin)?;
    let cert = evaluate_criteria(lin, limit)?;
    let v = cert.verdicts();
    if !v.unanimous() {
        return Err(Error::EquivalenceViolation(format!(
            "coordinates say {}, disagreeing: {}",
            v.coordinates,
            v.disagreements().join(", ")
        )));
    }
    Ok(cert)
}

/// E-unitary, injective, every `A_s ≠ 0`.
pub fn check_hypotheses(lin: &LinearAction) -> Result<()> {
    if lin.sg.zero().is_some() || !lin.sg.is_e_unitary()? {
        return Err(Error::PreconditionFail("semigroup is not E-unitary".into()));
    }
    let k = lin.sg.len();
    for s in 0..k {
        if lin.alg.is_zero(&lin.units[s]) {
            return Err(Error::PreconditionFail(format!("ideal of {} is zero", lin.sg.name(s))));
        }
        for t in s + 1..k {
            let same = lin.alg.eq(&lin.units[s], &lin.units[t])
                && lin.maps[s].iter().zip(&lin.maps[t]).all(|(x, y)| lin.alg.eq(x, y));
            if same {
                return Err(Error::PreconditionFail(format!(
                    "action is not injective: {} and {} act identically",
                    lin.sg.name(s),
                    lin.sg.name(t)
                )));
            }
        }
    }
    Ok(())
}

/// Is `lin` Galois by criterion (i)?
pub fn is_galois(lin: &LinearAction) -> bool {
    solve_galois_coordinates(lin).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::validate_action;
    use crate::ring::{Atom, FiniteRing, IsoPair, StructuredIso};
    use crate::semigroup::InverseSemigroup;

    fn limit() -> BigUint {
        BigUint::from(1u32 << 20)
    }

    fn swap_action(atoms: usize) -> LinearAction {
        let sg = InverseSemigroup::from_table(vec![vec![0, 1], vec![1, 0]], None, None).unwrap();
        let r = FiniteRing::new(vec![Atom::zmod(3, 1).unwrap(); atoms]).unwrap();
        let id = StructuredIso::identity(r.full_support());
        let mut pairs = vec![
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
        ];
        for a in 2..atoms {
            pairs.push(IsoPair {
                from: a,
                to: a,
                twist: 0,
            });
        }
        let sw = StructuredIso::new(&r, pairs).unwrap();
        validate_action(sg, r, vec![id, sw])
            .unwrap()
            .linear_with_group()
            .unwrap()
    }

    #[test]
    fn swap_is_galois_by_every_criterion() {
        let lin = swap_action(2);
        let cert = cross_check_equivalences(&lin, &limit()).unwrap();
        assert_eq!(cert.psi.tensor_order, "81");
        assert_eq!(cert.psi.pa_order, "81");
        assert_eq!(cert.coordinates_give_idempotent, Some(true));
        let c = cert.coordinates.unwrap();
        assert!(verify_coordinates(&lin, &c));
    }

    #[test]
    fn swap_with_fixed_atom_splits_criteria() {
        let lin = swap_action(3);
        let cert = evaluate_criteria(&lin, &limit()).unwrap();
        let v = cert.verdicts();
        assert!(!v.coordinates);
        assert!(!v.psi);
        assert!(!v.separable_strong);
        assert_eq!(v.trace, Some(true));
        assert_eq!(cert.psi.tensor_order, "243");
        assert_eq!(cert.psi.pa_order, "729");
        assert!(matches!(
            cross_check_equivalences(&lin, &limit()),
            Err(Error::EquivalenceViolation(_))
        ));
    }

    #[test]
    fn diagonal_separability_idempotent() {
        let r = FiniteRing::new(vec![Atom::zmod(3, 1).unwrap(); 2]).unwrap();
        let alg = PresentedAlgebra::from_ring(&r);
        let diag = Subalgebra::span(&alg, &[vec![1, 1]]);
        let s = is_separable(&alg, &Subalgebra::whole(&alg), &diag, &limit()).unwrap();
        assert!(s.idempotent.is_some());
        assert_eq!(s.tensor_order, "81");
    }

    #[test]
    fn rhs_readings_agree() {
        let lin = swap_action(2);
        for s in 0..2 {
            assert_eq!(galois_rhs(&lin, s), galois_rhs_literal(&lin, s));
        }
    }
}

#[cfg(test)]
mod fixture_tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn s7_all_criteria_hold() {
        let act = fixtures::s7();
        let lin = act.linear_with_group().unwrap();
        assert_eq!(lin.invariant_ring().order(&lin.alg), BigUint::from(27u32));
        let cert = cross_check_equivalences(&lin, &BigUint::from(1u32 << 20)).unwrap();
        assert!(cert.verdicts().coordinates);
        assert_eq!(cert.coordinates_give_idempotent, Some(true));
    }

    #[test]
    fn trivial_z4_is_outside_the_hypotheses() {
        let lin = fixtures::c2_trivial_z4().linear();
        let cert = evaluate_criteria(&lin, &BigUint::from(1u32 << 20)).unwrap();
        let v = cert.verdicts();
        assert!(!v.coordinates && !v.psi);
        assert_eq!(cert.psi.pa_order, "16");
        assert_eq!(v.trace, None);
        assert!(matches!(
            cross_check_equivalences(&lin, &BigUint::from(1u32 << 20)),
            Err(Error::PreconditionFail(_))
        ));
    }
}
