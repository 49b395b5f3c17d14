//! Sparse exterior algebra `Λ(F ⊕ F*)` and its big bracket.
//!
//! Monomials are bitmasks over the `2n` anticommuting generators: bit `i`
//! is `x_{i+1} ∈ F`, bit `n + i` is `ξ_{i+1} ∈ F*`. The canonical order of a
//! monomial is ascending bit order, so every `x` precedes every `ξ`.
//!
//! The big bracket is the even graded Poisson bracket of degree −2 fixed by
//! `{x_i, ξ_j} = {ξ_j, x_i} = δ_ij`. On monomials it is
//!
//! ```text
//! {a, b} = Σ_i  a·∂⃖/∂x_i · ∂⃗/∂ξ_i·b  +  a·∂⃖/∂ξ_i · ∂⃗/∂x_i·b
//! ```
//!
//! with right derivatives on the left factor and left derivatives on the
//! right one. With parity equal to degree mod 2 it satisfies
//! `{a,b} = −(−1)^{|a||b|}{b,a}`, the graded Jacobi identity
//! `{a,{b,c}} = {{a,b},c} + (−1)^{|a||b|}{b,{a,c}}` and the Leibniz rule
//! `{a, b∧c} = {a,b}∧c + (−1)^{|a||b|} b∧{a,c}`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use crate::basis::{self, Basis};
use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};

pub type Monomial = u32;

/// Sign of moving the generators of `b` past those of `a` to sort `a ∧ b`.
/// Returns `None` when the monomials share a generator.
#[inline]
pub(crate) fn wedge_sign(a: Monomial, b: Monomial) -> Option<bool> {
    if a & b != 0 {
        return None;
    }
    let mut swaps = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        rest &= rest - 1;
        swaps += (a >> j >> 1).count_ones();
    }
    Some(swaps % 2 == 1)
}

/// Sign of pulling generator `g` to the right end of `m`.
#[inline]
fn right_sign(m: Monomial, g: u32) -> bool {
    (m >> g >> 1).count_ones() % 2 == 1
}

/// Sign of pulling generator `g` to the left end of `m`.
#[inline]
fn left_sign(m: Monomial, g: u32) -> bool {
    (m & ((1u32 << g) - 1)).count_ones() % 2 == 1
}

#[derive(Clone, PartialEq, Eq)]
pub struct GradedElement {
    basis: Basis,
    terms: BTreeMap<Monomial, Scalar>,
}

impl GradedElement {
    pub fn zero(basis: &Basis) -> Self {
        GradedElement {
            basis: basis.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(basis: &Basis, c: Scalar) -> Self {
        let mut e = Self::zero(basis);
        e.add_term(0, c);
        e
    }

    pub fn one(basis: &Basis) -> Self {
        Self::scalar(basis, Scalar::one())
    }

    /// The generator with index `g` in `0..2n`.
    pub fn generator(basis: &Basis, g: usize) -> Self {
        assert!(g < 2 * basis.dim(), "generator index out of range");
        let mut e = Self::zero(basis);
        e.add_term(1 << g, Scalar::one());
        e
    }

    /// `x_{i+1} ∈ F` (zero-based).
    pub fn vector(basis: &Basis, i: usize) -> Self {
        assert!(i < basis.dim());
        Self::generator(basis, i)
    }

    /// `ξ_{i+1} ∈ F*` (zero-based).
    pub fn covector(basis: &Basis, i: usize) -> Self {
        assert!(i < basis.dim());
        Self::generator(basis, basis.dim() + i)
    }

    /// The product `c · g_1 ∧ g_2 ∧ … ∧ g_k` of generators given in any order.
    pub fn monomial(basis: &Basis, gens: &[usize], c: Scalar) -> Self {
        let mut mask: Monomial = 0;
        let mut negative = false;
        for &g in gens {
            assert!(g < 2 * basis.dim(), "generator index out of range");
            match wedge_sign(mask, 1 << g) {
                Some(s) => negative ^= s,
                None => return Self::zero(basis),
            }
            mask |= 1 << g;
        }
        let mut e = Self::zero(basis);
        e.add_term(mask, if negative { -c } else { c });
        e
    }

    /// Builds an element from canonical monomials. Zero coefficients are dropped.
    pub fn from_terms<I>(basis: &Basis, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Scalar)>,
    {
        let mut e = Self::zero(basis);
        let limit = 1u64 << (2 * basis.dim());
        for (m, c) in terms {
            assert!((m as u64) < limit, "monomial outside generator range");
            e.add_term(m, c);
        }
        e
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &Scalar)> + '_ {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn coeff(&self, m: Monomial) -> Scalar {
        self.terms.get(&m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of the empty monomial.
    pub fn scalar_part(&self) -> Scalar {
        self.coeff(0)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn vector_mask(&self) -> Monomial {
        (1u32 << self.dim()) - 1
    }

    /// `(#x, #ξ)` of a monomial.
    pub fn monomial_bidegree(&self, m: Monomial) -> (usize, usize) {
        let vm = self.vector_mask();
        (
            (m & vm).count_ones() as usize,
            (m & !vm).count_ones() as usize,
        )
    }

    /// Total degree when homogeneous; `None` for zero or mixed elements.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|m| m.count_ones() as usize);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    /// Bidegree when bihomogeneous; `None` for zero or mixed elements.
    pub fn bidegree(&self) -> Option<(usize, usize)> {
        let mut it = self.terms.keys().map(|&m| self.monomial_bidegree(m));
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    /// True when every term has the given bidegree (vacuously for zero).
    pub fn has_bidegree(&self, bideg: (usize, usize)) -> bool {
        self.terms
            .keys()
            .all(|&m| self.monomial_bidegree(m) == bideg)
    }

    pub fn has_degree(&self, deg: usize) -> bool {
        self.terms.keys().all(|m| m.count_ones() as usize == deg)
    }

    /// Projection onto the bidegree `(p, q)` part.
    pub fn component(&self, bideg: (usize, usize)) -> Self {
        GradedElement {
            basis: self.basis.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| self.monomial_bidegree(**m) == bideg)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Projection onto total degree `d`.
    pub fn degree_part(&self, d: usize) -> Self {
        GradedElement {
            basis: self.basis.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.count_ones() as usize == d)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(&self.basis);
        }
        GradedElement {
            basis: self.basis.clone(),
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn check_basis(&self, other: &Self) -> Result<()> {
        if basis::same(&self.basis, &other.basis) {
            Ok(())
        } else {
            Err(Error::BasisMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_basis(other)?;
        Ok(self + other)
    }

    /// Exterior product.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        self.check_basis(other)?;
        Ok(self.wedge_unchecked(other))
    }

    pub(crate) fn wedge_unchecked(&self, other: &Self) -> Self {
        let mut out = Self::zero(&self.basis);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some(neg) = wedge_sign(*ma, *mb) {
                    let c = ca * cb;
                    out.add_term(ma | mb, if neg { -c } else { c });
                }
            }
        }
        out
    }

    /// The big bracket `{self, other}`.
    pub fn big_bracket(&self, other: &Self) -> Result<Self> {
        self.check_basis(other)?;
        Ok(self.pb(other))
    }

    /// Big bracket without the basis check; callers guarantee a shared basis.
    pub(crate) fn pb(&self, other: &Self) -> Self {
        debug_assert!(basis::same(&self.basis, &other.basis));
        let n = self.dim() as u32;
        let mut out = Self::zero(&self.basis);
        for (&ma, ca) in &self.terms {
            for (&mb, cb) in &other.terms {
                for i in 0..n {
                    let x = i;
                    let xi = n + i;
                    // a ∂⃖_x ∂⃗_ξ b and a ∂⃖_ξ ∂⃗_x b
                    for (ga, gb) in [(x, xi), (xi, x)] {
                        if ma & (1 << ga) == 0 || mb & (1 << gb) == 0 {
                            continue;
                        }
                        let ra = ma & !(1 << ga);
                        let lb = mb & !(1 << gb);
                        let Some(ws) = wedge_sign(ra, lb) else {
                            continue;
                        };
                        let neg = right_sign(ma, ga) ^ left_sign(mb, gb) ^ ws;
                        let c = ca * cb;
                        out.add_term(ra | lb, if neg { -c } else { c });
                    }
                }
            }
        }
        out
    }

    /// The derived bracket `{{a, θ}, b}`; `θ` must have total degree 3.
    pub fn derived_bracket(a: &Self, theta: &Self, b: &Self) -> Result<Self> {
        a.check_basis(theta)?;
        a.check_basis(b)?;
        if !theta.has_degree(3) {
            return Err(Error::Degree {
                what: "derived-bracket kernel",
                expected: 3,
                found: theta.degree().unwrap_or(usize::MAX),
            });
        }
        Ok(a.pb(theta).pb(b))
    }

    /// Interior product `i_u ω` with `i_{u∧v} = i_u ∘ i_v` and
    /// `i_g ω = {g, ω}` for a generator `g`.
    ///
    /// The contractor must be purely of bidegree `(p, 0)` or `(0, p)`.
    pub fn interior(u: &Self, omega: &Self) -> Result<Self> {
        u.check_basis(omega)?;
        let vm = u.vector_mask();
        let pure_vec = u.terms.keys().all(|m| m & !vm == 0);
        let pure_form = u.terms.keys().all(|m| m & vm == 0);
        if !(pure_vec || pure_form) {
            return Err(Error::Input(
                "interior product needs a contractor of bidegree (p,0) or (0,p)".into(),
            ));
        }
        Ok(u.contract(omega))
    }

    pub(crate) fn contract(&self, omega: &Self) -> Self {
        let mut out = Self::zero(&self.basis);
        for (&m, c) in &self.terms {
            let mut acc = omega.scale(c);
            // innermost operator is the highest generator
            let mut rest = m;
            let mut gens = Vec::new();
            while rest != 0 {
                gens.push(rest.trailing_zeros() as usize);
                rest &= rest - 1;
            }
            for &g in gens.iter().rev() {
                acc = Self::generator(&self.basis, g).pb(&acc);
            }
            out += &acc;
        }
        out
    }

    /// Exchanges `x_i ↔ ξ_i`. This is an automorphism of the big bracket.
    pub fn swap_dual(&self) -> Self {
        let n = self.dim();
        let vm = self.vector_mask();
        let mut out = Self::zero(&self.basis);
        for (&m, c) in &self.terms {
            let gens: Vec<usize> = (0..2 * n)
                .filter(|g| m & (1 << g) != 0)
                .map(|g| if g < n { g + n } else { g - n })
                .collect();
            let e = Self::monomial(&self.basis, &gens, c.clone());
            debug_assert!(vm != 0);
            out += &e;
        }
        out
    }

    /// Human-readable rendering with generator names and `^` for the wedge.
    pub fn pretty(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut keys: Vec<Monomial> = self.terms.keys().copied().collect();
        keys.sort_by_key(|m| (m.count_ones(), gens_of(*m)));
        let mut out = String::new();
        for (k, m) in keys.iter().enumerate() {
            let c = &self.terms[m];
            let neg = scalar::is_negative(c);
            let abs = if neg { -c.clone() } else { c.clone() };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let word: Vec<&str> = gens_of(*m)
                .into_iter()
                .map(|g| self.basis.generator_name(g))
                .collect();
            if *m == 0 {
                out.push_str(&scalar::render(&abs));
            } else if abs.is_one() {
                out.push_str(&word.join("^"));
            } else {
                out.push_str(&scalar::render(&abs));
                out.push('*');
                out.push_str(&word.join("^"));
            }
        }
        out
    }
}

pub(crate) fn gens_of(m: Monomial) -> Vec<usize> {
    (0..32).filter(|g| m & (1 << g) != 0).collect()
}

impl fmt::Debug for GradedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedElement({})", self.pretty())
    }
}

impl fmt::Display for GradedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}

impl AddAssign<&GradedElement> for GradedElement {
    /// Panics on a basis mismatch; use [`GradedElement::try_add`] for a checked sum.
    fn add_assign(&mut self, rhs: &GradedElement) {
        assert!(basis::same(&self.basis, &rhs.basis), "basis mismatch");
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl SubAssign<&GradedElement> for GradedElement {
    fn sub_assign(&mut self, rhs: &GradedElement) {
        assert!(basis::same(&self.basis, &rhs.basis), "basis mismatch");
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c.clone());
        }
    }
}

impl Add for &GradedElement {
    type Output = GradedElement;
    fn add(self, rhs: &GradedElement) -> GradedElement {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &GradedElement {
    type Output = GradedElement;
    fn sub(self, rhs: &GradedElement) -> GradedElement {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Add for GradedElement {
    type Output = GradedElement;
    fn add(mut self, rhs: GradedElement) -> GradedElement {
        self += &rhs;
        self
    }
}

impl Sub for GradedElement {
    type Output = GradedElement;
    fn sub(mut self, rhs: GradedElement) -> GradedElement {
        self -= &rhs;
        self
    }
}

impl Neg for &GradedElement {
    type Output = GradedElement;
    fn neg(self) -> GradedElement {
        self.scale(&-Scalar::one())
    }
}

impl Neg for GradedElement {
    type Output = GradedElement;
    fn neg(self) -> GradedElement {
        -&self
    }
}

impl Mul<&Scalar> for &GradedElement {
    type Output = GradedElement;
    fn mul(self, c: &Scalar) -> GradedElement {
        self.scale(c)
    }
}
