//! Multivector fields and differential forms with polynomial coefficients.
//!
//! Both live in a free graded-commutative algebra over [`Poly`] with odd
//! generators `θ_i = ∂_i` (multivectors) or `ζ_i = dx_i` (forms). A term is
//! keyed by the bitmask of its odd generators in ascending order.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::One;
use serde::{Deserialize, Serialize};

use super::polynomial::{monomials_up_to, Poly};
use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};

/// Largest supported `m`.
pub const MAX_POLY_DIM: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Multivector,
    Form,
}

impl Kind {
    fn generator_name(self, i: usize) -> String {
        match self {
            Kind::Multivector => format!("∂{}", i + 1),
            Kind::Form => format!("dx{}", i + 1),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyTensor {
    m: usize,
    kind: Kind,
    terms: BTreeMap<u32, Poly>,
}

/// Multivector field; a [`PolyTensor`] of kind [`Kind::Multivector`].
pub type PolyMultivector = PolyTensor;
/// Differential form; a [`PolyTensor`] of kind [`Kind::Form`].
pub type PolyForm = PolyTensor;

#[inline]
fn below(mask: u32, g: usize) -> bool {
    (mask & ((1u32 << g) - 1)).count_ones() % 2 == 1
}

#[inline]
fn above(mask: u32, g: usize) -> bool {
    (mask >> g >> 1).count_ones() % 2 == 1
}

fn gens(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |g| mask & (1 << g) != 0)
}

/// Degree first, then lexicographic on the ascending generator list.
pub(crate) fn mask_order(mask: u32) -> (u32, Vec<usize>) {
    (mask.count_ones(), gens(mask).collect())
}

pub(crate) fn check_dim(m: usize) -> Result<()> {
    if m > MAX_POLY_DIM {
        return Err(Error::DimensionCap {
            dim: m,
            cap: MAX_POLY_DIM,
        });
    }
    Ok(())
}

impl PolyTensor {
    pub fn zero(m: usize, kind: Kind) -> Self {
        PolyTensor {
            m,
            kind,
            terms: BTreeMap::new(),
        }
    }

    /// A function viewed as a degree-0 tensor.
    pub fn function(kind: Kind, f: Poly) -> Self {
        let mut t = PolyTensor::zero(f.m(), kind);
        t.add_term(0, f);
        t
    }

    /// `∂_{i+1}` or `dx_{i+1}`.
    pub fn generator(m: usize, kind: Kind, i: usize) -> Self {
        assert!(i < m, "generator index {i} out of range for m = {m}");
        let mut t = PolyTensor::zero(m, kind);
        t.add_term(1 << i, Poly::one(m));
        t
    }

    /// `f · g_{a_1} ∧ … ∧ g_{a_k}` for strictly ascending 0-based indices.
    pub fn monomial(kind: Kind, indices: &[usize], f: Poly) -> Result<Self> {
        let m = f.m();
        check_dim(m)?;
        let mut mask = 0u32;
        for (n, &a) in indices.iter().enumerate() {
            if a >= m {
                return Err(Error::Input(format!("index {} exceeds m = {m}", a + 1)));
            }
            if n > 0 && indices[n - 1] >= a {
                return Err(Error::Input(format!(
                    "indices {indices:?} are not strictly ascending"
                )));
            }
            mask |= 1 << a;
        }
        let mut t = PolyTensor::zero(m, kind);
        t.add_term(mask, f);
        Ok(t)
    }

    pub fn from_terms<I: IntoIterator<Item = (u32, Poly)>>(m: usize, kind: Kind, terms: I) -> Self {
        let mut t = PolyTensor::zero(m, kind);
        for (mask, f) in terms {
            assert!(mask >> m == 0, "mask uses generators beyond m");
            assert_eq!(f.m(), m, "coefficient dimension");
            t.add_term(mask, f);
        }
        t
    }

    pub(crate) fn add_term(&mut self, mask: u32, f: Poly) {
        if f.is_zero() {
            return;
        }
        match self.terms.entry(mask) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(f);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &f;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &Poly)> + '_ {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    /// Coefficient of the generator monomial `mask`.
    pub fn coeff(&self, mask: u32) -> Poly {
        self.terms
            .get(&mask)
            .cloned()
            .unwrap_or_else(|| Poly::zero(self.m))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Degree if homogeneous and nonzero.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|k| k.count_ones() as usize);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    /// True for zero or for a homogeneous tensor of degree `d`.
    pub fn has_degree(&self, d: usize) -> bool {
        self.terms.keys().all(|k| k.count_ones() as usize == d)
    }

    pub fn degree_part(&self, d: usize) -> Self {
        PolyTensor {
            m: self.m,
            kind: self.kind,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.count_ones() as usize == d)
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        }
    }

    /// Largest coefficient degree, `None` when zero.
    pub fn coefficient_degree(&self) -> Option<usize> {
        self.terms.values().filter_map(Poly::degree).max()
    }

    pub(crate) fn check_same(&self, other: &Self) -> Result<()> {
        if self.m != other.m {
            return Err(Error::DimensionMismatch {
                left: self.m,
                right: other.m,
            });
        }
        if self.kind != other.kind {
            return Err(Error::Input(format!(
                "expected two {:?} operands, found {:?}",
                self.kind, other.kind
            )));
        }
        Ok(())
    }

    pub(crate) fn expect_kind(&self, kind: Kind, what: &str) -> Result<()> {
        if self.kind != kind {
            return Err(Error::Input(format!(
                "{what} must be a {kind:?}, found a {:?}",
                self.kind
            )));
        }
        Ok(())
    }

    pub(crate) fn expect_degree(&self, d: usize, what: &'static str) -> Result<()> {
        if !self.has_degree(d) {
            return Err(Error::Degree {
                what,
                expected: d,
                found: self
                    .terms
                    .keys()
                    .map(|k| k.count_ones() as usize)
                    .find(|&e| e != d)
                    .unwrap_or(d),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self + other)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = PolyTensor::zero(self.m, self.kind);
        for (k, f) in &self.terms {
            out.add_term(*k, f.scale(c));
        }
        out
    }

    /// Multiplication by a function.
    pub fn mul_poly(&self, f: &Poly) -> Self {
        let mut out = PolyTensor::zero(self.m, self.kind);
        for (k, g) in &self.terms {
            out.add_term(*k, g * f);
        }
        out
    }

    pub fn wedge(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.wedge_unchecked(other))
    }

    pub(crate) fn wedge_unchecked(&self, other: &Self) -> Self {
        let mut out = PolyTensor::zero(self.m, self.kind);
        for (a, f) in &self.terms {
            for (b, g) in &other.terms {
                if let Some(neg) = crate::graded::wedge_sign(*a, *b) {
                    let p = f * g;
                    out.add_term(a | b, if neg { -&p } else { p });
                }
            }
        }
        out
    }

    /// `∂/∂x_{i+1}` applied to every coefficient.
    pub fn partial(&self, i: usize) -> Self {
        let mut out = PolyTensor::zero(self.m, self.kind);
        for (k, f) in &self.terms {
            out.add_term(*k, f.partial(i));
        }
        out
    }

    /// Left derivative along the odd generator `i`.
    pub(crate) fn odd_left(&self, i: usize) -> Self {
        let mut out = PolyTensor::zero(self.m, self.kind);
        for (k, f) in &self.terms {
            if k & (1 << i) != 0 {
                out.add_term(k ^ (1 << i), if below(*k, i) { -f } else { f.clone() });
            }
        }
        out
    }

    /// Right derivative along the odd generator `i`.
    pub(crate) fn odd_right(&self, i: usize) -> Self {
        let mut out = PolyTensor::zero(self.m, self.kind);
        for (k, f) in &self.terms {
            if k & (1 << i) != 0 {
                out.add_term(k ^ (1 << i), if above(*k, i) { -f } else { f.clone() });
            }
        }
        out
    }

    /// Left multiplication by the odd generator `i`.
    pub(crate) fn gen_times(&self, i: usize) -> Self {
        let mut out = PolyTensor::zero(self.m, self.kind);
        for (k, f) in &self.terms {
            if k & (1 << i) == 0 {
                out.add_term(k | (1 << i), if below(*k, i) { -f } else { f.clone() });
            }
        }
        out
    }

    /// Same components reinterpreted with the other kind of generators.
    pub(crate) fn with_kind(&self, kind: Kind) -> Self {
        PolyTensor {
            m: self.m,
            kind,
            terms: self.terms.clone(),
        }
    }

    pub fn pretty(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut keys: Vec<u32> = self.terms.keys().copied().collect();
        keys.sort_by_key(|k| mask_order(*k));
        let mut out = String::new();
        for (n, k) in keys.into_iter().enumerate() {
            let f = &self.terms[&k];
            let wedge: Vec<String> = gens(k).map(|g| self.kind.generator_name(g)).collect();
            let wedge = wedge.join("^");
            let (neg, coeff) = if f.len() == 1 {
                let (e, c) = f.terms().next().expect("one term");
                let neg = scalar::is_negative(c);
                let mono = Poly::monomial(e.clone(), if neg { -c } else { c.clone() });
                (neg, mono)
            } else {
                (false, f.clone())
            };
            if n > 0 {
                out.push_str(if neg { " - " } else { " + " });
            } else if neg {
                out.push('-');
            }
            let c = coeff.pretty();
            let c = if coeff.len() > 1 { format!("({c})") } else { c };
            if wedge.is_empty() {
                out.push_str(&c);
            } else if coeff.len() == 1 && coeff.is_constant() && coeff.constant_part().is_one() {
                out.push_str(&wedge);
            } else {
                out.push_str(&c);
                out.push('*');
                out.push_str(&wedge);
            }
        }
        out
    }
}

impl fmt::Debug for PolyTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "PolyTensor({:?}, m={}, {})",
            self.kind,
            self.m,
            self.pretty()
        )
    }
}

impl fmt::Display for PolyTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}

impl Add for &PolyTensor {
    type Output = PolyTensor;
    fn add(self, rhs: &PolyTensor) -> PolyTensor {
        assert!(
            self.m == rhs.m && self.kind == rhs.kind,
            "tensor shape mismatch"
        );
        let mut out = self.clone();
        for (k, f) in &rhs.terms {
            out.add_term(*k, f.clone());
        }
        out
    }
}

impl Sub for &PolyTensor {
    type Output = PolyTensor;
    fn sub(self, rhs: &PolyTensor) -> PolyTensor {
        assert!(
            self.m == rhs.m && self.kind == rhs.kind,
            "tensor shape mismatch"
        );
        let mut out = self.clone();
        for (k, f) in &rhs.terms {
            out.add_term(*k, -f);
        }
        out
    }
}

impl Neg for &PolyTensor {
    type Output = PolyTensor;
    fn neg(self) -> PolyTensor {
        self.scale(&-Scalar::one())
    }
}

impl From<PolyTensor> for crate::report::Residual {
    fn from(t: PolyTensor) -> Self {
        crate::report::Residual::rendered(t.is_zero(), t.pretty())
    }
}

/// Schouten–Nijenhuis bracket,
/// `[u,v] = Σ_i u·∂⃖/∂θ_i · ∂v/∂x_i − ∂u/∂x_i · ∂⃗/∂θ_i·v`.
///
/// `[X, f] = X(f)` and on vector fields it is the Lie bracket.
pub fn schouten(u: &PolyMultivector, v: &PolyMultivector) -> Result<PolyMultivector> {
    u.check_same(v)?;
    u.expect_kind(Kind::Multivector, "schouten operand")?;
    Ok(schouten_unchecked(u, v))
}

pub(crate) fn schouten_unchecked(u: &PolyTensor, v: &PolyTensor) -> PolyTensor {
    let mut out = PolyTensor::zero(u.m, u.kind);
    for i in 0..u.m {
        let a = u.odd_right(i);
        if !a.is_zero() {
            let dv = v.partial(i);
            if !dv.is_zero() {
                out = &out + &a.wedge_unchecked(&dv);
            }
        }
        let du = u.partial(i);
        if !du.is_zero() {
            let b = v.odd_left(i);
            if !b.is_zero() {
                out = &out - &du.wedge_unchecked(&b);
            }
        }
    }
    out
}

/// `d = Σ_i dx_i ∧ ∂/∂x_i`.
pub fn de_rham(omega: &PolyForm) -> Result<PolyForm> {
    omega.expect_kind(Kind::Form, "de_rham operand")?;
    Ok(de_rham_unchecked(omega))
}

pub(crate) fn de_rham_unchecked(omega: &PolyTensor) -> PolyTensor {
    let mut out = PolyTensor::zero(omega.m, omega.kind);
    for i in 0..omega.m {
        out = &out + &omega.partial(i).gen_times(i);
    }
    out
}

/// Contraction of the generators of `outer` into `inner` from the right:
/// `i_{g_1 ∧ … ∧ g_k} = i_{g_1} ∘ ⋯ ∘ i_{g_k}` with `i_g` the left derivative.
pub(crate) fn contract_unchecked(outer: &PolyTensor, inner: &PolyTensor) -> PolyTensor {
    let mut out = PolyTensor::zero(inner.m, inner.kind);
    for (mask, f) in &outer.terms {
        let mut t = inner.clone();
        for g in gens(*mask).collect::<Vec<_>>().into_iter().rev() {
            t = t.odd_left(g);
            if t.is_zero() {
                break;
            }
        }
        if !t.is_zero() {
            out = &out + &t.mul_poly(f);
        }
    }
    out
}

/// Interior product `i_u ω` with `i_{u∧v} = i_u ∘ i_v` and `i_{∂_i} dx_j = δ_ij`.
pub fn interior(u: &PolyMultivector, omega: &PolyForm) -> Result<PolyForm> {
    if u.m != omega.m {
        return Err(Error::DimensionMismatch {
            left: u.m,
            right: omega.m,
        });
    }
    u.expect_kind(Kind::Multivector, "interior vector argument")?;
    omega.expect_kind(Kind::Form, "interior form argument")?;
    Ok(contract_unchecked(u, omega))
}

/// `L_u = [i_u, d] = i_u d − (−1)^{|u|} d i_u`, degree by degree in `u`.
pub fn lie_derivative(u: &PolyMultivector, omega: &PolyForm) -> Result<PolyForm> {
    interior(u, omega)?;
    let mut out = PolyTensor::zero(omega.m, Kind::Form);
    for k in 0..=u.m {
        let uk = u.degree_part(k);
        if uk.is_zero() {
            continue;
        }
        let a = contract_unchecked(&uk, &de_rham_unchecked(omega));
        let b = de_rham_unchecked(&contract_unchecked(&uk, omega));
        out = if k % 2 == 0 {
            &(&out + &a) - &b
        } else {
            &(&out + &a) + &b
        };
    }
    Ok(out)
}

/// Every `x^a g_S` with `|a| ≤ max_coeff_degree` and `|S|` in `degrees`.
pub fn monomial_tensors(
    m: usize,
    kind: Kind,
    max_coeff_degree: usize,
    degrees: std::ops::RangeInclusive<usize>,
) -> Vec<PolyTensor> {
    let mut out = Vec::new();
    let monos = monomials_up_to(m, max_coeff_degree);
    let mut masks: Vec<u32> = (0..1u32 << m)
        .filter(|k| degrees.contains(&(k.count_ones() as usize)))
        .collect();
    masks.sort_by_key(|k| mask_order(*k));
    for mask in masks {
        for e in &monos {
            out.push(PolyTensor::from_terms(
                m,
                kind,
                [(mask, Poly::monomial(e.clone(), Scalar::one()))],
            ));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn x(m: usize, i: usize) -> Poly {
        Poly::var(m, i - 1)
    }

    fn mv(_m: usize, idx: &[usize], f: Poly) -> PolyTensor {
        let idx: Vec<usize> = idx.iter().map(|i| i - 1).collect();
        PolyTensor::monomial(Kind::Multivector, &idx, f).unwrap()
    }

    fn form(m: usize, idx: &[usize], f: Poly) -> PolyTensor {
        let _ = m;
        let idx: Vec<usize> = idx.iter().map(|i| i - 1).collect();
        PolyTensor::monomial(Kind::Form, &idx, f).unwrap()
    }

    #[test]
    fn lie_bracket_of_vector_fields() {
        let a = mv(2, &[1], Poly::one(2));
        let b = mv(2, &[2], x(2, 1));
        assert_eq!(schouten(&a, &b).unwrap(), mv(2, &[2], Poly::one(2)));
        let f = PolyTensor::function(Kind::Multivector, &x(2, 1) * &x(2, 2));
        assert_eq!(schouten(&a, &f).unwrap().pretty(), "x2");
        assert_eq!(schouten(&f, &a).unwrap().pretty(), "-x2");
    }

    #[test]
    fn lie_poisson_so3_is_poisson() {
        let m = 3;
        let pi = &(&mv(m, &[1, 2], x(m, 3)) + &mv(m, &[2, 3], x(m, 1))) - &mv(m, &[1, 3], x(m, 2));
        assert!(schouten(&pi, &pi).unwrap().is_zero());
    }

    #[test]
    fn de_rham_examples() {
        let m = 4;
        assert_eq!(
            de_rham(&form(m, &[2], x(m, 1))).unwrap(),
            form(m, &[1, 2], Poly::one(m))
        );
        let w = form(m, &[1, 2, 3], x(m, 4));
        assert_eq!(
            de_rham(&w).unwrap(),
            form(m, &[1, 2, 3, 4], Poly::constant(m, int(-1)))
        );
        let w = form(m, &[2], &x(m, 1) * &x(m, 3));
        assert!(de_rham(&de_rham(&w).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn interior_and_cartan() {
        let m = 2;
        let d1 = mv(m, &[1], Poly::one(m));
        let w = form(m, &[1], x(m, 1));
        assert_eq!(
            lie_derivative(&d1, &w).unwrap(),
            form(m, &[1], Poly::one(m))
        );
        let area = form(m, &[1, 2], Poly::one(m));
        assert_eq!(interior(&d1, &area).unwrap().pretty(), "dx2");
        let pi = mv(m, &[1, 2], Poly::one(m));
        assert_eq!(interior(&pi, &area).unwrap().pretty(), "-1");
    }

    #[test]
    fn kind_and_dimension_errors() {
        let a = mv(2, &[1], Poly::one(2));
        let w = form(2, &[1], Poly::one(2));
        assert!(schouten(&a, &w).is_err());
        assert!(de_rham(&a).is_err());
        let b = mv(3, &[1], Poly::one(3));
        assert!(matches!(
            schouten(&a, &b),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(PolyTensor::monomial(Kind::Form, &[1, 0], Poly::one(2)).is_err());
    }

    #[test]
    fn pretty_is_canonical() {
        let m = 3;
        let t = &mv(m, &[1, 2], &x(m, 3) + &Poly::one(m)) - &mv(m, &[3], Poly::one(m));
        assert_eq!(t.pretty(), "-∂3 + (x3 + 1)*∂1^∂2");
        assert_eq!(form(m, &[2], x(m, 1).scale(&int(-2))).pretty(), "-2*x1*dx2");
    }

    #[test]
    fn test_basis_size() {
        let b = monomial_tensors(3, Kind::Multivector, 2, 0..=3);
        assert_eq!(b.len(), 80);
    }
}
