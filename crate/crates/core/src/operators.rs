//! Endomorphisms of `ΛF*` as dense exact matrices over the monomial basis,
//! and the deriving operator `D = d_μ − ∂_γ + i_φ + e_ψ`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::basis::{self, Basis};
use crate::error::{Error, Result};
use crate::graded::{gens_of, GradedElement, Monomial};
use crate::report::{Check, Residual, Sweep};
use crate::scalar::{self, Scalar};
use crate::structures::{canonical_pairing, DoubleSection, DoubleTerms, ProtoStructure};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
    Mixed,
}

impl Parity {
    fn of_degrees(degrees: impl Iterator<Item = usize>) -> Parity {
        let mut seen = (false, false);
        for d in degrees {
            if d % 2 == 0 {
                seen.0 = true;
            } else {
                seen.1 = true;
            }
        }
        match seen {
            (true, true) => Parity::Mixed,
            (false, true) => Parity::Odd,
            _ => Parity::Even,
        }
    }

    fn combine(self, other: Parity) -> Parity {
        match (self, other) {
            (Parity::Mixed, _) | (_, Parity::Mixed) => Parity::Mixed,
            (a, b) if a == b => Parity::Even,
            _ => Parity::Odd,
        }
    }
}

/// Operator on `ΛF*`. Index `s` stands for the monomial `ξ_s` (subset mask of `0..n`);
/// entry `(r, c)` is the coefficient of `ξ_r` in the image of `ξ_c`.
/// Equality compares the maps, not the declared parity.
#[derive(Clone)]
pub struct LinearOperator {
    basis: Basis,
    size: usize,
    entries: Vec<Scalar>,
    parity: Parity,
}

impl LinearOperator {
    pub fn zero(basis: &Basis, parity: Parity) -> Self {
        let size = 1 << basis.dim();
        LinearOperator {
            basis: basis.clone(),
            size,
            entries: vec![Scalar::zero(); size * size],
            parity,
        }
    }

    pub fn identity(basis: &Basis) -> Self {
        let mut op = Self::zero(basis, Parity::Even);
        for i in 0..op.size {
            op.entries[i * op.size + i] = Scalar::one();
        }
        op
    }

    /// Builds the matrix by applying `f` to every monomial of `ΛF*`.
    pub fn from_fn<F>(basis: &Basis, parity: Parity, f: F) -> Result<Self>
    where
        F: Fn(&GradedElement) -> GradedElement,
    {
        let n = basis.dim();
        let mut op = Self::zero(basis, parity);
        for c in 0..op.size {
            let input = GradedElement::from_terms(basis, [((c as Monomial) << n, Scalar::one())]);
            let image = f(&input);
            for (m, v) in image.terms() {
                if m & ((1 << n) - 1) != 0 {
                    return Err(Error::Input(
                        "operator leaves the exterior algebra of F*".into(),
                    ));
                }
                let r = (m >> n) as usize;
                let shift = (r.count_ones() as i64 - c.count_ones() as i64).rem_euclid(2);
                let ok = match parity {
                    Parity::Even => shift == 0,
                    Parity::Odd => shift == 1,
                    Parity::Mixed => true,
                };
                if !ok {
                    return Err(Error::MixedParity);
                }
                op.entries[r * op.size + c] = v.clone();
            }
        }
        Ok(op)
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn entry(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.size + c]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// Whether the operator is `c · Id` for some scalar `c`.
    pub fn scalar_value(&self) -> Option<Scalar> {
        let c = self.entry(0, 0).clone();
        let ok = (0..self.size).all(|r| {
            (0..self.size).all(|k| {
                let e = self.entry(r, k);
                if r == k {
                    *e == c
                } else {
                    e.is_zero()
                }
            })
        });
        ok.then_some(c)
    }

    pub fn apply(&self, w: &GradedElement) -> Result<GradedElement> {
        if !basis::same(&self.basis, w.basis()) {
            return Err(Error::BasisMismatch);
        }
        let n = self.basis.dim();
        let mut out = GradedElement::zero(&self.basis);
        for (m, v) in w.terms() {
            if m & ((1 << n) - 1) != 0 {
                return Err(Error::Input(
                    "argument is not in the exterior algebra of F*".into(),
                ));
            }
            let c = (m >> n) as usize;
            for r in 0..self.size {
                let e = self.entry(r, c);
                if !e.is_zero() {
                    out += &GradedElement::from_terms(&self.basis, [((r as Monomial) << n, e * v)]);
                }
            }
        }
        Ok(out)
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let n = self.size;
        let mut out = Self::zero(&self.basis, self.parity.combine(other.parity));
        for r in 0..n {
            for k in 0..n {
                let a = &self.entries[r * n + k];
                if a.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let b = &other.entries[k * n + c];
                    if !b.is_zero() {
                        out.entries[r * n + c] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = self.clone();
        for e in out.entries.iter_mut() {
            *e *= c;
        }
        out
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let parity = if self.parity == other.parity || other.is_zero() {
            self.parity
        } else if self.is_zero() {
            other.parity
        } else {
            Parity::Mixed
        };
        let mut out = self.clone();
        out.parity = parity;
        for (a, b) in out.entries.iter_mut().zip(&other.entries) {
            *a += b;
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if basis::same(&self.basis, &other.basis) {
            Ok(())
        } else {
            Err(Error::BasisMismatch)
        }
    }

    /// Images of the basis monomials with nonzero image, e.g. `eps1 -> 2*eps1^eps2`.
    pub fn pretty(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let n = self.basis.dim();
        let mut cols: Vec<usize> = (0..self.size).collect();
        cols.sort_by_key(|c| (c.count_ones(), gens_of(*c as Monomial)));
        let mut parts = Vec::new();
        for c in cols {
            let image = GradedElement::from_terms(
                &self.basis,
                (0..self.size).map(|r| ((r as Monomial) << n, self.entry(r, c).clone())),
            );
            if image.is_zero() {
                continue;
            }
            let src =
                GradedElement::from_terms(&self.basis, [((c as Monomial) << n, Scalar::one())]);
            parts.push(format!("{} -> {}", src.pretty(), image.pretty()));
        }
        parts.join("; ")
    }
}

impl PartialEq for LinearOperator {
    fn eq(&self, other: &Self) -> bool {
        basis::same(&self.basis, &other.basis) && self.entries == other.entries
    }
}

impl Eq for LinearOperator {}

impl fmt::Debug for LinearOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearOperator({:?}, {})", self.parity, self.pretty())
    }
}

impl Neg for &LinearOperator {
    type Output = LinearOperator;
    fn neg(self) -> LinearOperator {
        self.scale(&-Scalar::one())
    }
}

impl Add for &LinearOperator {
    type Output = LinearOperator;
    fn add(self, rhs: &LinearOperator) -> LinearOperator {
        self.try_add(rhs).expect("operator basis mismatch")
    }
}

impl Sub for &LinearOperator {
    type Output = LinearOperator;
    fn sub(self, rhs: &LinearOperator) -> LinearOperator {
        self.try_sub(rhs).expect("operator basis mismatch")
    }
}

impl Mul for &LinearOperator {
    type Output = LinearOperator;
    fn mul(self, rhs: &LinearOperator) -> LinearOperator {
        self.compose(rhs).expect("operator basis mismatch")
    }
}

impl From<LinearOperator> for Residual {
    fn from(op: LinearOperator) -> Self {
        Residual::rendered(op.is_zero(), op.pretty())
    }
}

fn form_parity(u: &GradedElement) -> Parity {
    Parity::of_degrees(u.terms().map(|(m, _)| m.count_ones() as usize))
}

/// Left exterior multiplication `e_u` by `u ∈ ΛF*`.
pub fn op_e(u: &GradedElement) -> Result<LinearOperator> {
    if u.vector_mask() & u.terms().fold(0, |acc, (m, _)| acc | m) != 0 {
        return Err(Error::Input(
            "e_u needs u in the exterior algebra of F*".into(),
        ));
    }
    LinearOperator::from_fn(u.basis(), form_parity(u), |w| u.wedge_unchecked(w))
}

/// Interior product `i_v` by `v ∈ ΛF`, with `i_{x∧y} = i_x ∘ i_y`.
pub fn op_i(v: &GradedElement) -> Result<LinearOperator> {
    if v.terms().any(|(m, _)| m & !v.vector_mask() != 0) {
        return Err(Error::Input(
            "i_v needs v in the exterior algebra of F".into(),
        ));
    }
    LinearOperator::from_fn(v.basis(), form_parity(v), |w| v.contract(w))
}

/// `AB − (−1)^{|A||B|} BA`.
pub fn graded_commutator(a: &LinearOperator, b: &LinearOperator) -> Result<LinearOperator> {
    if a.parity == Parity::Mixed || b.parity == Parity::Mixed {
        return Err(Error::MixedParity);
    }
    let ab = a.compose(b)?;
    let ba = b.compose(a)?;
    if a.parity == Parity::Odd && b.parity == Parity::Odd {
        ab.try_add(&ba)
    } else {
        ab.try_sub(&ba)
    }
}

/// `d_μ = {μ, ·}` on `ΛF*`.
pub fn op_d_mu(s: &ProtoStructure) -> LinearOperator {
    let mu = s.mu().clone();
    LinearOperator::from_fn(s.basis(), Parity::Odd, |w| mu.pb(w)).expect("d_mu preserves ΛF*")
}

/// `[ξ_a, ξ_b]_γ = {{ξ_a, γ}, ξ_b}`.
fn cobracket(gamma: &GradedElement, a: usize, b: usize) -> GradedElement {
    let bs = gamma.basis();
    GradedElement::covector(bs, a)
        .pb(gamma)
        .pb(&GradedElement::covector(bs, b))
}

/// The Chevalley-Eilenberg boundary of `(F*, [·,·]_γ)`:
/// `∂(ξ_{a1}∧…∧ξ_{ak}) = Σ_{i<j} (−1)^{i+j} [ξ_{ai}, ξ_{aj}]_γ ∧ ξ_{a1}∧…ξ̂_{ai}…ξ̂_{aj}…∧ξ_{ak}`.
pub fn op_boundary_gamma(s: &ProtoStructure) -> LinearOperator {
    let b = s.basis();
    let n = b.dim();
    let gamma = s.gamma();
    LinearOperator::from_fn(b, Parity::Odd, |w| {
        let mut out = GradedElement::zero(b);
        for (m, c) in w.terms() {
            let idx: Vec<usize> = (0..n).filter(|i| m & (1 << (n + i)) != 0).collect();
            for i in 0..idx.len() {
                for j in i + 1..idx.len() {
                    let rest: Vec<usize> = idx
                        .iter()
                        .enumerate()
                        .filter(|(p, _)| *p != i && *p != j)
                        .map(|(_, g)| n + g)
                        .collect();
                    let rest = GradedElement::monomial(b, &rest, c.clone());
                    // positions are 1-based in the formula, so (−1)^{i+j} is unchanged
                    let term = cobracket(gamma, idx[i], idx[j]).wedge_unchecked(&rest);
                    if (i + j) % 2 == 1 {
                        out -= &term;
                    } else {
                        out += &term;
                    }
                }
            }
        }
        out
    })
    .expect("boundary preserves ΛF*")
}

/// `D = d_μ − ∂_γ + i_φ + e_ψ`.
pub fn deriving_operator(s: &ProtoStructure) -> LinearOperator {
    let d = &op_d_mu(s) - &op_boundary_gamma(s);
    let i_phi = op_i(s.phi()).expect("phi is a 3-vector");
    let e_psi = op_e(s.psi()).expect("psi is a 3-form");
    let mut out = &(&d + &i_phi) + &e_psi;
    out.parity = Parity::Odd;
    out
}

/// Residual checks of relations (a)–(d) over all basis pairs.
pub fn deriving_relations_residuals(d: &LinearOperator, s: &ProtoStructure) -> Result<Vec<Check>> {
    if !basis::same(d.basis(), s.basis()) {
        return Err(Error::BasisMismatch);
    }
    let b = s.basis();
    let n = b.dim();
    let zero = LinearOperator::zero(b, Parity::Even);
    let vecs: Vec<DoubleSection> = (0..n).map(|i| DoubleSection::vector_basis(b, i)).collect();
    let forms: Vec<DoubleSection> = (0..n)
        .map(|i| DoubleSection::covector_basis(b, i))
        .collect();
    let i_of = |x: &GradedElement| op_i(x).expect("vector");
    let e_of = |x: &GradedElement| op_e(x).expect("form");
    let nested = |a: &LinearOperator, c: &LinearOperator| -> Result<LinearOperator> {
        graded_commutator(&graded_commutator(a, d)?, c)
    };

    let mut rel = [
        Sweep::new("(a) [[i_x,D],i_y]", zero.clone()),
        Sweep::new("(b) [[i_x,D],e_xi]", zero.clone()),
        Sweep::new("(c) [[e_xi,D],i_x]", zero.clone()),
        Sweep::new("(d) [[e_xi,D],e_eta]", zero),
    ];
    for (p, u) in vecs.iter().chain(&forms).enumerate() {
        for (q, v) in vecs.iter().chain(&forms).enumerate() {
            let t = DoubleTerms::compute(s, u, v)?;
            let op_u = if p < n {
                i_of(u.vector())
            } else {
                e_of(u.form())
            };
            let op_v = if q < n {
                i_of(v.vector())
            } else {
                e_of(v.form())
            };
            let lhs = nested(&op_u, &op_v)?;
            let (slot, rhs) = match (p < n, q < n) {
                (true, true) => (0, &i_of(&t.bracket_mu) + &e_of(&t.i_x_y_psi)),
                (true, false) => (1, &e_of(&t.lie_mu_x_eta) - &i_of(&t.i_eta_d_gamma_x)),
                (false, true) => (2, &i_of(&t.lie_gamma_xi_y) - &e_of(&t.i_y_d_mu_xi)),
                (false, false) => (3, &i_of(&t.i_xi_eta_phi) + &e_of(&t.bracket_gamma)),
            };
            rel[slot].record(&lhs - &rhs, || format!("{}, {}", u.pretty(), v.pretty()));
        }
    }
    Ok(rel.into_iter().map(Sweep::finish).collect())
}

/// `op(x+ξ) = i_x + e_ξ`.
pub fn section_operator(a: &DoubleSection) -> LinearOperator {
    let mut op = &op_i(a.vector()).expect("vector") + &op_e(a.form()).expect("form");
    op.parity = Parity::Odd;
    op
}

/// `op(a)op(b) + op(b)op(a) − (a|b)·Id` over the given sections.
pub fn clifford_check(basis: &Basis, sections: &[DoubleSection]) -> Result<Check> {
    let mut sweep = Sweep::new("Clifford", LinearOperator::zero(basis, Parity::Even));
    let id = LinearOperator::identity(basis);
    for a in sections {
        for b in sections {
            let anti = graded_commutator(&section_operator(a), &section_operator(b))?;
            let r = &anti - &id.scale(&canonical_pairing(a, b)?);
            sweep.record(r, || format!("{}, {}", a.pretty(), b.pretty()));
        }
    }
    Ok(sweep.finish())
}

/// Monomials `ξ_s` of `ΛF*` for every subset `s`.
pub fn form_monomials(basis: &Basis) -> Vec<GradedElement> {
    let n = basis.dim();
    (0..1u32 << n)
        .map(|s| GradedElement::from_terms(basis, [(s << n, Scalar::one())]))
        .collect()
}

fn degree_of(u: &GradedElement) -> usize {
    u.degree().unwrap_or(0)
}

/// The generator defect `(−1)^{|u|}(∂(u∧v) − ∂u∧v − (−1)^{|u|} u∧∂v)`.
pub fn generated_bracket(
    op: &LinearOperator,
    u: &GradedElement,
    v: &GradedElement,
) -> Result<GradedElement> {
    let sign = scalar::sign(degree_of(u) % 2 == 1);
    let uv = u.wedge(v)?;
    let mut r = op.apply(&uv)?;
    r -= &op.apply(u)?.wedge_unchecked(v);
    r -= &u.wedge_unchecked(&op.apply(v)?).scale(&sign);
    Ok(r.scale(&sign))
}

/// Checks that `op` generates `bracket` on all monomial pairs, the identity
/// `[e_u, ∂] = e_{∂u} − [u,·]` on odd monomials `u`, its all-degree form
/// `[e_u, ∂] = −(−1)^{|u|} e_{∂u} − [u,·]`, and `[[e_u, ∂], e_v] = −e_{[u,v]}`.
pub fn generator_check<F>(op: &LinearOperator, bracket: F) -> Result<Vec<Check>>
where
    F: Fn(&GradedElement, &GradedElement) -> GradedElement,
{
    if op.parity() != Parity::Odd {
        return Err(Error::Input("a generator must be odd".into()));
    }
    let b = op.basis().clone();
    let monos = form_monomials(&b);
    let mut gen = Sweep::new("generator", GradedElement::zero(&b));
    for u in &monos {
        for v in &monos {
            let r = &bracket(u, v) - &generated_bracket(op, u, v)?;
            gen.record(r, || format!("{}, {}", u.pretty(), v.pretty()));
        }
    }
    let zero = LinearOperator::zero(&b, Parity::Even);
    let mut comm_odd = Sweep::new("[e_u,d] = e_{du} - [u,.] for odd u", zero.clone());
    let mut comm_all = Sweep::new("[e_u,d] = -(-1)^|u| e_{du} - [u,.]", zero.clone());
    let mut double_comm = Sweep::new("[[e_u,d],e_v] = -e_{[u,v]}", zero);
    for u in &monos {
        let e_u = op_e(u)?;
        let lhs = graded_commutator(&e_u, op)?;
        let ad_u = LinearOperator::from_fn(&b, Parity::Mixed, |w| bracket(u, w))?;
        let e_du = op_e(&op.apply(u)?)?;
        if degree_of(u) % 2 == 1 {
            comm_odd.record(&lhs - &(&e_du - &ad_u), || u.pretty());
        }
        let signed = if degree_of(u) % 2 == 1 { e_du } else { -&e_du };
        comm_all.record(&lhs - &(&signed - &ad_u), || u.pretty());
        for v in &monos {
            let l = graded_commutator(&lhs, &op_e(v)?)?;
            let r = &l + &op_e(&bracket(u, v))?;
            double_comm.record(r, || format!("{}, {}", u.pretty(), v.pretty()));
        }
    }
    Ok(vec![
        gen.finish(),
        comm_odd.finish(),
        comm_all.finish(),
        double_comm.finish(),
    ])
}

/// `[e_u, ∂] − (e_{∂u} − [u,·])` for a single `u`.
pub fn e_commutator_unsigned(
    op: &LinearOperator,
    u: &GradedElement,
    bracket: impl Fn(&GradedElement, &GradedElement) -> GradedElement,
) -> Result<LinearOperator> {
    let lhs = graded_commutator(&op_e(u)?, op)?;
    let ad_u = LinearOperator::from_fn(op.basis(), Parity::Mixed, |w| bracket(u, w))?;
    Ok(&lhs - &(&op_e(&op.apply(u)?)? - &ad_u))
}

/// The bracket on `ΛF*` extending `[·,·]_γ`, the derived bracket `{{u, γ}, v}`.
pub fn gerstenhaber_gamma(
    gamma: &GradedElement,
    u: &GradedElement,
    v: &GradedElement,
) -> GradedElement {
    u.pb(gamma).pb(v)
}
