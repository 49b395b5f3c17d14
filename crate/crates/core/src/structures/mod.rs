//! Proto-bialgebra structures `Θ = μ + γ + φ + ψ` over a point, their double,
//! Courant and Dirac checks, and quadratic Lie algebra constructions.

mod courant;
mod dirac;
mod double;
mod quadratic;

pub use courant::{courant_axioms_check, courant_axioms_check_basis};
pub use dirac::{dirac_check, graph, DiracReport};
pub use double::{
    canonical_pairing, double_bracket, double_bracket_derived, DoubleSection, DoubleTerms,
};
pub use quadratic::{cartan_trivector, manin_pair_gg, quasi_poisson_residual, BilinearFormSpec};

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::basis::{self, Basis};
use crate::error::{Error, Result};
use crate::graded::{GradedElement, Monomial};
use crate::scalar::{ratio, Scalar};

pub const MU: (usize, usize) = (1, 2);
pub const GAMMA: (usize, usize) = (2, 1);
pub const PHI: (usize, usize) = (3, 0);
pub const PSI: (usize, usize) = (0, 3);

/// The quadruple `(μ, γ, φ, ψ)`. Validity (`{Θ,Θ} = 0`) is not required;
/// broken structures are evaluated like any other.
#[derive(Clone, PartialEq, Eq)]
pub struct ProtoStructure {
    basis: Basis,
    mu: GradedElement,
    gamma: GradedElement,
    phi: GradedElement,
    psi: GradedElement,
}

fn expect_bidegree(what: &'static str, e: &GradedElement, expected: (usize, usize)) -> Result<()> {
    if e.has_bidegree(expected) {
        return Ok(());
    }
    let found = e
        .terms()
        .map(|(m, _)| e.monomial_bidegree(m))
        .find(|b| *b != expected)
        .unwrap_or(expected);
    Err(Error::Bidegree {
        what,
        expected,
        found,
    })
}

impl ProtoStructure {
    pub fn new(
        mu: GradedElement,
        gamma: GradedElement,
        phi: GradedElement,
        psi: GradedElement,
    ) -> Result<Self> {
        for other in [&gamma, &phi, &psi] {
            mu.check_basis(other)?;
        }
        expect_bidegree("mu", &mu, MU)?;
        expect_bidegree("gamma", &gamma, GAMMA)?;
        expect_bidegree("phi", &phi, PHI)?;
        expect_bidegree("psi", &psi, PSI)?;
        Ok(ProtoStructure {
            basis: mu.basis().clone(),
            mu,
            gamma,
            phi,
            psi,
        })
    }

    pub fn zero(basis: &Basis) -> Self {
        let z = GradedElement::zero(basis);
        ProtoStructure {
            basis: basis.clone(),
            mu: z.clone(),
            gamma: z.clone(),
            phi: z.clone(),
            psi: z,
        }
    }

    /// Splits a degree-3 element into its four bidegree components.
    pub fn from_theta(theta: &GradedElement) -> Result<Self> {
        if !theta.has_degree(3) {
            return Err(Error::Degree {
                what: "theta",
                expected: 3,
                found: theta.degree().unwrap_or(0),
            });
        }
        ProtoStructure::new(
            theta.component(MU),
            theta.component(GAMMA),
            theta.component(PHI),
            theta.component(PSI),
        )
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn mu(&self) -> &GradedElement {
        &self.mu
    }

    pub fn gamma(&self) -> &GradedElement {
        &self.gamma
    }

    pub fn phi(&self) -> &GradedElement {
        &self.phi
    }

    pub fn psi(&self) -> &GradedElement {
        &self.psi
    }

    pub fn theta(&self) -> GradedElement {
        let mut t = self.mu.clone();
        t += &self.gamma;
        t += &self.phi;
        t += &self.psi;
        t
    }

    pub fn with_mu(&self, mu: GradedElement) -> Result<Self> {
        Self::new(mu, self.gamma.clone(), self.phi.clone(), self.psi.clone())
    }

    pub fn with_gamma(&self, gamma: GradedElement) -> Result<Self> {
        Self::new(self.mu.clone(), gamma, self.phi.clone(), self.psi.clone())
    }

    pub fn with_phi(&self, phi: GradedElement) -> Result<Self> {
        Self::new(self.mu.clone(), self.gamma.clone(), phi, self.psi.clone())
    }

    pub fn with_psi(&self, psi: GradedElement) -> Result<Self> {
        Self::new(self.mu.clone(), self.gamma.clone(), self.phi.clone(), psi)
    }

    /// The dual structure `(γ, μ, ψ, φ)` on `(F*, F)`, written in the same basis
    /// after exchanging `x_i ↔ ξ_i`.
    pub fn dual(&self) -> Self {
        ProtoStructure {
            basis: self.basis.clone(),
            mu: self.gamma.swap_dual(),
            gamma: self.mu.swap_dual(),
            phi: self.psi.swap_dual(),
            psi: self.phi.swap_dual(),
        }
    }

    pub fn check_basis(&self, e: &GradedElement) -> Result<()> {
        if basis::same(&self.basis, e.basis()) {
            Ok(())
        } else {
            Err(Error::BasisMismatch)
        }
    }
}

impl fmt::Debug for ProtoStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ProtoStructure")
            .field("mu", &self.mu.pretty())
            .field("gamma", &self.gamma.pretty())
            .field("phi", &self.phi.pretty())
            .field("psi", &self.psi.pretty())
            .finish()
    }
}

/// One structure-constant entry `(i, j, k, c)`, indices zero-based.
pub type Entry = (usize, usize, usize, Scalar);

fn bit(g: usize) -> Monomial {
    1 << g
}

/// `μ` from brackets `[e_i, e_j] = c e_k` (`i < j`), encoded so that
/// `{{e_i, μ}, e_j}` returns the bracket.
pub fn bracket_from_constants(basis: &Basis, entries: &[Entry]) -> Result<GradedElement> {
    let n = basis.dim();
    let mut out = GradedElement::zero(basis);
    for (i, j, k, c) in entries {
        let (i, j, k) = (*i, *j, *k);
        if i >= j || j >= n || k >= n {
            return Err(Error::Input(format!("bad bracket entry ({i},{j},{k})")));
        }
        out.add_term(bit(k) | bit(n + i) | bit(n + j), -c.clone());
    }
    Ok(out)
}

/// `γ` from cobrackets `[ε_i, ε_j]_γ = c ε_k` (`i < j`).
pub fn cobracket_from_constants(basis: &Basis, entries: &[Entry]) -> Result<GradedElement> {
    let n = basis.dim();
    let mut out = GradedElement::zero(basis);
    for (i, j, k, c) in entries {
        let (i, j, k) = (*i, *j, *k);
        if i >= j || j >= n || k >= n {
            return Err(Error::Input(format!("bad cobracket entry ({i},{j},{k})")));
        }
        out.add_term(bit(i) | bit(j) | bit(n + k), -c.clone());
    }
    Ok(out)
}

/// `Σ c e_i∧e_j∧e_k` (`i < j < k`).
pub fn trivector_from_constants(basis: &Basis, entries: &[Entry]) -> Result<GradedElement> {
    let n = basis.dim();
    let mut out = GradedElement::zero(basis);
    for (i, j, k, c) in entries {
        let (i, j, k) = (*i, *j, *k);
        if !(i < j && j < k && k < n) {
            return Err(Error::Input(format!("bad trivector entry ({i},{j},{k})")));
        }
        out.add_term(bit(i) | bit(j) | bit(k), c.clone());
    }
    Ok(out)
}

/// `Σ c ε_i∧ε_j∧ε_k` (`i < j < k`).
pub fn three_form_from_constants(basis: &Basis, entries: &[Entry]) -> Result<GradedElement> {
    let n = basis.dim();
    let mut out = GradedElement::zero(basis);
    for (i, j, k, c) in entries {
        let (i, j, k) = (*i, *j, *k);
        if !(i < j && j < k && k < n) {
            return Err(Error::Input(format!("bad 3-form entry ({i},{j},{k})")));
        }
        out.add_term(bit(n + i) | bit(n + j) | bit(n + k), c.clone());
    }
    Ok(out)
}

fn split_mask(m: Monomial, n: usize) -> (Vec<usize>, Vec<usize>) {
    let xs = (0..n).filter(|i| m & bit(*i) != 0).collect();
    let ks = (0..n).filter(|i| m & bit(n + *i) != 0).collect();
    (xs, ks)
}

/// Inverse of [`bracket_from_constants`].
pub fn bracket_constants(mu: &GradedElement) -> Result<Vec<Entry>> {
    expect_bidegree("mu", mu, MU)?;
    let n = mu.dim();
    Ok(mu
        .terms()
        .map(|(m, c)| {
            let (xs, ks) = split_mask(m, n);
            (ks[0], ks[1], xs[0], -c.clone())
        })
        .collect())
}

/// Inverse of [`cobracket_from_constants`].
pub fn cobracket_constants(gamma: &GradedElement) -> Result<Vec<Entry>> {
    expect_bidegree("gamma", gamma, GAMMA)?;
    let n = gamma.dim();
    Ok(gamma
        .terms()
        .map(|(m, c)| {
            let (xs, ks) = split_mask(m, n);
            (xs[0], xs[1], ks[0], -c.clone())
        })
        .collect())
}

pub fn trivector_constants(phi: &GradedElement) -> Result<Vec<Entry>> {
    expect_bidegree("phi", phi, PHI)?;
    let n = phi.dim();
    Ok(phi
        .terms()
        .map(|(m, c)| {
            let (xs, _) = split_mask(m, n);
            (xs[0], xs[1], xs[2], c.clone())
        })
        .collect())
}

pub fn three_form_constants(psi: &GradedElement) -> Result<Vec<Entry>> {
    expect_bidegree("psi", psi, PSI)?;
    let n = psi.dim();
    Ok(psi
        .terms()
        .map(|(m, c)| {
            let (_, ks) = split_mask(m, n);
            (ks[0], ks[1], ks[2], c.clone())
        })
        .collect())
}

/// Dense structure constants `C[i][j][k]` of the bracket, antisymmetric in `i, j`.
pub fn bracket_tensor(mu: &GradedElement) -> Result<Vec<Vec<Vec<Scalar>>>> {
    let n = mu.dim();
    let mut t = vec![vec![vec![Scalar::zero(); n]; n]; n];
    for (i, j, k, c) in bracket_constants(mu)? {
        t[i][j][k] += &c;
        t[j][i][k] -= &c;
    }
    Ok(t)
}

/// Dense cobracket constants `D[i][j][k]` with `[ε_i, ε_j]_γ = Σ_k D[i][j][k] ε_k`.
pub fn cobracket_tensor(gamma: &GradedElement) -> Result<Vec<Vec<Vec<Scalar>>>> {
    let n = gamma.dim();
    let mut t = vec![vec![vec![Scalar::zero(); n]; n]; n];
    for (i, j, k, c) in cobracket_constants(gamma)? {
        t[i][j][k] += &c;
        t[j][i][k] -= &c;
    }
    Ok(t)
}

/// The point-case Schouten bracket `[u, v]_μ = {{u, μ}, v}`.
pub fn schouten_point(
    mu: &GradedElement,
    u: &GradedElement,
    v: &GradedElement,
) -> Result<GradedElement> {
    u.check_basis(mu)?;
    u.check_basis(v)?;
    Ok(u.pb(mu).pb(v))
}

/// `{Θ, Θ}`; zero exactly for proto-bialgebras.
pub fn master_residual(s: &ProtoStructure) -> GradedElement {
    let theta = s.theta();
    theta.pb(&theta)
}

/// The five component conditions, in the order
/// `½{μ,μ}+{γ,ψ}`, `{μ,γ}+{φ,ψ}`, `½{γ,γ}+{μ,φ}`, `{μ,ψ}`, `{γ,φ}`.
pub fn five_conditions(s: &ProtoStructure) -> [GradedElement; 5] {
    let half = ratio(1, 2);
    let (mu, gamma, phi, psi) = (&s.mu, &s.gamma, &s.phi, &s.psi);
    [
        &mu.pb(mu).scale(&half) + &gamma.pb(psi),
        &mu.pb(gamma) + &phi.pb(psi),
        &gamma.pb(gamma).scale(&half) + &mu.pb(phi),
        mu.pb(psi),
        gamma.pb(phi),
    ]
}

pub const FIVE_CONDITION_NAMES: [&str; 5] = [
    "1/2{mu,mu}+{gamma,psi}",
    "{mu,gamma}+{phi,psi}",
    "1/2{gamma,gamma}+{mu,phi}",
    "{mu,psi}",
    "{gamma,phi}",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Classification {
    LieBialgebra,
    LieQuasiBialgebra,
    QuasiLieBialgebra,
    ProtoBialgebra,
    Invalid,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Classification::LieBialgebra => "LieBialgebra",
            Classification::LieQuasiBialgebra => "LieQuasiBialgebra",
            Classification::QuasiLieBialgebra => "QuasiLieBialgebra",
            Classification::ProtoBialgebra => "ProtoBialgebra",
            Classification::Invalid => "Invalid",
        };
        f.write_str(s)
    }
}

pub fn classify(s: &ProtoStructure) -> Classification {
    if !master_residual(s).is_zero() {
        return Classification::Invalid;
    }
    match (s.phi.is_zero(), s.psi.is_zero()) {
        (true, true) => Classification::LieBialgebra,
        (false, true) => Classification::LieQuasiBialgebra,
        (true, false) => Classification::QuasiLieBialgebra,
        (false, false) => Classification::ProtoBialgebra,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::BasisSpec;
    use crate::scalar::int;

    pub(crate) fn so3() -> ProtoStructure {
        let b = BasisSpec::standard(3).unwrap();
        let mu = bracket_from_constants(
            &b,
            &[(0, 1, 2, int(1)), (1, 2, 0, int(1)), (0, 2, 1, int(-1))],
        )
        .unwrap();
        ProtoStructure::new(
            mu,
            GradedElement::zero(&b),
            GradedElement::zero(&b),
            GradedElement::zero(&b),
        )
        .unwrap()
    }

    /// Cyclic Jacobi sum computed straight from structure constants.
    fn jacobi_defect(c: &[Vec<Vec<Scalar>>]) -> bool {
        let n = c.len();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for out in 0..n {
                        let mut s = Scalar::zero();
                        for m in 0..n {
                            s += &c[j][k][m] * &c[i][m][out];
                            s += &c[k][i][m] * &c[j][m][out];
                            s += &c[i][j][m] * &c[k][m][out];
                        }
                        if !s.is_zero() {
                            return true;
                        }
                    }
                }
            }
        }
        false
    }

    #[test]
    fn derived_bracket_round_trips_structure_constants() {
        let s = so3();
        let b = s.basis().clone();
        let e = |i| GradedElement::vector(&b, i);
        let r = GradedElement::derived_bracket(&e(0), s.mu(), &e(1)).unwrap();
        assert_eq!(r, e(2));
        let r = GradedElement::derived_bracket(&e(2), s.mu(), &e(0)).unwrap();
        assert_eq!(r, e(1));
        assert!(GradedElement::derived_bracket(&e(0), s.mu(), &e(0))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn cobracket_round_trips() {
        let b = BasisSpec::standard(3).unwrap();
        let gamma = cobracket_from_constants(
            &b,
            &[(0, 1, 2, int(1)), (1, 2, 0, int(1)), (0, 2, 1, int(-1))],
        )
        .unwrap();
        let eps = |i| GradedElement::covector(&b, i);
        assert_eq!(
            GradedElement::derived_bracket(&eps(0), &gamma, &eps(1)).unwrap(),
            eps(2)
        );
        assert_eq!(
            GradedElement::derived_bracket(&eps(1), &gamma, &eps(0)).unwrap(),
            -eps(2)
        );
    }

    #[test]
    fn constants_round_trip() {
        let s = so3();
        let entries = bracket_constants(s.mu()).unwrap();
        let again = bracket_from_constants(s.basis(), &entries).unwrap();
        assert_eq!(&again, s.mu());
    }

    #[test]
    fn so3_master_residual_vanishes_and_matches_jacobi() {
        let s = so3();
        assert!(master_residual(&s).is_zero());
        assert!(!jacobi_defect(&bracket_tensor(s.mu()).unwrap()));
        assert!({ s.mu().pb(s.mu()) }.is_zero());
        assert_eq!(classify(&s), Classification::LieBialgebra);
    }

    #[test]
    fn broken_jacobi_gives_nonzero_residual() {
        let b = BasisSpec::standard(3).unwrap();
        let mu = bracket_from_constants(
            &b,
            &[(0, 1, 2, int(1)), (1, 2, 0, int(1)), (0, 2, 0, int(-1))],
        )
        .unwrap();
        assert!(jacobi_defect(&bracket_tensor(&mu).unwrap()));
        let s = ProtoStructure::zero(&b).with_mu(mu).unwrap();
        assert!(!master_residual(&s).is_zero());
        assert_eq!(classify(&s), Classification::Invalid);
    }

    #[test]
    fn abelian_structure_is_a_lie_bialgebra() {
        let s = ProtoStructure::zero(&BasisSpec::standard(3).unwrap());
        assert!(master_residual(&s).is_zero());
        assert_eq!(classify(&s), Classification::LieBialgebra);
    }

    #[test]
    fn so3_with_top_form_is_quasi_lie() {
        let s = so3();
        let psi = three_form_from_constants(s.basis(), &[(0, 1, 2, int(1))]).unwrap();
        let s = s.with_psi(psi).unwrap();
        let five = five_conditions(&s);
        assert!(five[3].is_zero());
        assert!(five.iter().all(GradedElement::is_zero));
        assert_eq!(classify(&s), Classification::QuasiLieBialgebra);
    }

    #[test]
    fn constructor_checks_bidegrees() {
        let s = so3();
        let err = ProtoStructure::new(
            s.gamma().clone(),
            s.mu().clone(),
            s.phi().clone(),
            s.psi().clone(),
        );
        assert!(matches!(err, Err(Error::Bidegree { what: "gamma", .. })));
    }

    #[test]
    fn dual_structure_swaps_roles() {
        let s = so3();
        let d = s.dual();
        assert!(d.mu().is_zero());
        assert!(d.gamma().has_bidegree(GAMMA));
        assert!(master_residual(&d).is_zero());
        assert_eq!(d.dual(), s);
    }
}
