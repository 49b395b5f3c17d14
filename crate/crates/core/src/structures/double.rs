use std::fmt;

use num_traits::Zero;

use super::ProtoStructure;
use crate::basis::{self, Basis};
use crate::error::{Error, Result};
use crate::graded::GradedElement;
use crate::scalar::Scalar;

/// A section `x + ξ` of the double `F ⊕ F*`.
#[derive(Clone, PartialEq, Eq)]
pub struct DoubleSection {
    vector: GradedElement,
    form: GradedElement,
}

impl DoubleSection {
    pub fn new(vector: GradedElement, form: GradedElement) -> Result<Self> {
        vector.check_basis(&form)?;
        if !vector.has_bidegree((1, 0)) {
            return Err(Error::Bidegree {
                what: "vector part",
                expected: (1, 0),
                found: vector.bidegree().unwrap_or((0, 0)),
            });
        }
        if !form.has_bidegree((0, 1)) {
            return Err(Error::Bidegree {
                what: "form part",
                expected: (0, 1),
                found: form.bidegree().unwrap_or((0, 0)),
            });
        }
        Ok(DoubleSection { vector, form })
    }

    pub fn zero(basis: &Basis) -> Self {
        DoubleSection {
            vector: GradedElement::zero(basis),
            form: GradedElement::zero(basis),
        }
    }

    /// Splits a degree-1 element into its `F` and `F*` parts.
    pub fn from_element(e: &GradedElement) -> Result<Self> {
        if !e.has_degree(1) {
            return Err(Error::Degree {
                what: "double section",
                expected: 1,
                found: e.degree().unwrap_or(0),
            });
        }
        Ok(DoubleSection {
            vector: e.component((1, 0)),
            form: e.component((0, 1)),
        })
    }

    /// Section from `2n` coordinates, vector coordinates first.
    pub fn from_coords(basis: &Basis, coords: &[Scalar]) -> Result<Self> {
        let n = basis.dim();
        if coords.len() != 2 * n {
            return Err(Error::DimensionMismatch {
                left: coords.len(),
                right: 2 * n,
            });
        }
        let e = GradedElement::from_terms(
            basis,
            coords.iter().enumerate().map(|(g, c)| (1 << g, c.clone())),
        );
        Self::from_element(&e)
    }

    pub fn vector_basis(basis: &Basis, i: usize) -> Self {
        DoubleSection {
            vector: GradedElement::vector(basis, i),
            form: GradedElement::zero(basis),
        }
    }

    pub fn covector_basis(basis: &Basis, i: usize) -> Self {
        DoubleSection {
            vector: GradedElement::zero(basis),
            form: GradedElement::covector(basis, i),
        }
    }

    /// `e_1, …, e_n, ε_1, …, ε_n`.
    pub fn standard_sections(basis: &Basis) -> Vec<Self> {
        let n = basis.dim();
        (0..n)
            .map(|i| Self::vector_basis(basis, i))
            .chain((0..n).map(|i| Self::covector_basis(basis, i)))
            .collect()
    }

    pub fn basis(&self) -> &Basis {
        self.vector.basis()
    }

    pub fn vector(&self) -> &GradedElement {
        &self.vector
    }

    pub fn form(&self) -> &GradedElement {
        &self.form
    }

    pub fn element(&self) -> GradedElement {
        &self.vector + &self.form
    }

    pub fn coords(&self) -> Vec<Scalar> {
        let n = self.basis().dim();
        let e = self.element();
        (0..2 * n).map(|g| e.coeff(1 << g)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.vector.is_zero() && self.form.is_zero()
    }

    pub fn pretty(&self) -> String {
        self.element().pretty()
    }
}

impl fmt::Debug for DoubleSection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DoubleSection({})", self.pretty())
    }
}

impl std::ops::Add for &DoubleSection {
    type Output = DoubleSection;
    fn add(self, rhs: &DoubleSection) -> DoubleSection {
        DoubleSection {
            vector: &self.vector + &rhs.vector,
            form: &self.form + &rhs.form,
        }
    }
}

impl std::ops::Sub for &DoubleSection {
    type Output = DoubleSection;
    fn sub(self, rhs: &DoubleSection) -> DoubleSection {
        DoubleSection {
            vector: &self.vector - &rhs.vector,
            form: &self.form - &rhs.form,
        }
    }
}

impl DoubleSection {
    pub fn scale(&self, c: &Scalar) -> Self {
        DoubleSection {
            vector: self.vector.scale(c),
            form: self.form.scale(c),
        }
    }
}

/// The eight terms of the double bracket `[x+ξ, y+η]`.
#[derive(Debug, Clone)]
pub struct DoubleTerms {
    pub bracket_mu: GradedElement,
    pub lie_gamma_xi_y: GradedElement,
    pub i_eta_d_gamma_x: GradedElement,
    pub i_xi_eta_phi: GradedElement,
    pub bracket_gamma: GradedElement,
    pub lie_mu_x_eta: GradedElement,
    pub i_y_d_mu_xi: GradedElement,
    pub i_x_y_psi: GradedElement,
}

impl DoubleTerms {
    pub fn compute(s: &ProtoStructure, a: &DoubleSection, b: &DoubleSection) -> Result<Self> {
        s.check_basis(a.vector())?;
        s.check_basis(b.vector())?;
        let (x, xi) = (a.vector(), a.form());
        let (y, eta) = (b.vector(), b.form());
        let (mu, gamma) = (s.mu(), s.gamma());
        // i_v w = {v, w}; d_μ = {μ, ·}; L_v = i_v d + d i_v (both odd)
        let i = |v: &GradedElement, w: &GradedElement| v.pb(w);
        let lie = |v: &GradedElement, d: &GradedElement, w: &GradedElement| {
            &i(v, &d.pb(w)) + &d.pb(&i(v, w))
        };
        Ok(DoubleTerms {
            bracket_mu: x.pb(mu).pb(y),
            lie_gamma_xi_y: lie(xi, gamma, y),
            i_eta_d_gamma_x: i(eta, &gamma.pb(x)),
            i_xi_eta_phi: i(xi, &i(eta, s.phi())),
            bracket_gamma: xi.pb(gamma).pb(eta),
            lie_mu_x_eta: lie(x, mu, eta),
            i_y_d_mu_xi: i(y, &mu.pb(xi)),
            i_x_y_psi: i(x, &i(y, s.psi())),
        })
    }

    pub fn total(&self) -> GradedElement {
        let mut t = self.bracket_mu.clone();
        t += &self.lie_gamma_xi_y;
        t -= &self.i_eta_d_gamma_x;
        t += &self.i_xi_eta_phi;
        t += &self.bracket_gamma;
        t += &self.lie_mu_x_eta;
        t -= &self.i_y_d_mu_xi;
        t += &self.i_x_y_psi;
        t
    }
}

/// The double bracket assembled from its component formula.
pub fn double_bracket(
    s: &ProtoStructure,
    a: &DoubleSection,
    b: &DoubleSection,
) -> Result<DoubleSection> {
    DoubleSection::from_element(&DoubleTerms::compute(s, a, b)?.total())
}

/// The double bracket as the derived bracket `{{a, Θ}, b}`.
pub fn double_bracket_derived(
    s: &ProtoStructure,
    a: &DoubleSection,
    b: &DoubleSection,
) -> Result<DoubleSection> {
    s.check_basis(a.vector())?;
    s.check_basis(b.vector())?;
    DoubleSection::from_element(&a.element().pb(&s.theta()).pb(&b.element()))
}

/// `(x+ξ | y+η) = <ξ, y> + <η, x>`, computed from coordinates.
pub fn canonical_pairing(a: &DoubleSection, b: &DoubleSection) -> Result<Scalar> {
    if !basis::same(a.basis(), b.basis()) {
        return Err(Error::BasisMismatch);
    }
    let n = a.basis().dim();
    let (ca, cb) = (a.coords(), b.coords());
    let mut s = Scalar::zero();
    for i in 0..n {
        s += &ca[n + i] * &cb[i];
        s += &cb[n + i] * &ca[i];
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::super::tests::so3;
    use super::super::{three_form_from_constants, trivector_from_constants};
    use super::*;
    use crate::scalar::int;

    #[test]
    fn formula_matches_derived_bracket() {
        let s = so3();
        let b = s.basis().clone();
        let s = s
            .with_phi(trivector_from_constants(&b, &[(0, 1, 2, int(2))]).unwrap())
            .unwrap()
            .with_psi(three_form_from_constants(&b, &[(0, 1, 2, int(-3))]).unwrap())
            .unwrap();
        let secs = DoubleSection::standard_sections(&b);
        for a in &secs {
            for c in &secs {
                assert_eq!(
                    double_bracket(&s, a, c).unwrap(),
                    double_bracket_derived(&s, a, c).unwrap()
                );
            }
        }
    }

    #[test]
    fn vector_bracket_is_the_lie_bracket() {
        let s = so3();
        let b = s.basis().clone();
        let e0 = DoubleSection::vector_basis(&b, 0);
        let e1 = DoubleSection::vector_basis(&b, 1);
        let r = double_bracket(&s, &e0, &e1).unwrap();
        assert_eq!(r, DoubleSection::vector_basis(&b, 2));
    }

    #[test]
    fn pairing_matches_big_bracket() {
        let b = crate::basis::BasisSpec::standard(2).unwrap();
        let a = DoubleSection::from_coords(&b, &[int(1), int(2), int(3), int(4)]).unwrap();
        let c = DoubleSection::from_coords(&b, &[int(-1), int(5), int(0), int(7)]).unwrap();
        // <ξ,y> + <η,x> = (3·-1 + 4·5) + (0·1 + 7·2)
        assert_eq!(canonical_pairing(&a, &c).unwrap(), int(31));
        assert_eq!(a.element().pb(&c.element()).scalar_part(), int(31));
    }

    #[test]
    fn section_constructor_checks_parts() {
        let b = crate::basis::BasisSpec::standard(2).unwrap();
        let e = GradedElement::vector(&b, 0);
        assert!(DoubleSection::new(e.clone(), e).is_err());
    }
}
