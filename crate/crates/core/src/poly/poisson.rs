//! π♯, the Koszul bracket, the ψ-Poisson condition and the π-twisted
//! brackets of the Courant algebroid with background.
//!
//! Multilinear evaluation follows the interior convention of the point
//! layer: `T(ξ_1, …, ξ_k) = i_{ξ_1 ∧ … ∧ ξ_k} T` with `i_{a∧b} = i_a ∘ i_b`.

use num_traits::One;
use rayon::prelude::*;

use super::courant::{default_trial_functions, PolySection};
use super::polynomial::{monomials_up_to, Poly};
use super::tensor::{
    contract_unchecked, de_rham_unchecked, lie_derivative, monomial_tensors, schouten_unchecked,
    Kind, PolyForm, PolyMultivector, PolyTensor,
};
use crate::error::{Error, Result};
use crate::linalg;
use crate::report::{AxiomReport, Check, Sweep};
use crate::scalar::{ratio, Scalar};

fn check_pi(pi: &PolyTensor) -> Result<()> {
    pi.expect_kind(Kind::Multivector, "π")?;
    pi.expect_degree(2, "bivector π")
}

fn check_psi(pi: &PolyTensor, psi: &PolyTensor) -> Result<()> {
    psi.expect_kind(Kind::Form, "ψ")?;
    psi.expect_degree(3, "3-form ψ")?;
    same_m(pi, psi)
}

fn same_m(a: &PolyTensor, b: &PolyTensor) -> Result<()> {
    if a.m() != b.m() {
        return Err(Error::DimensionMismatch {
            left: a.m(),
            right: b.m(),
        });
    }
    Ok(())
}

fn check_covector(pi: &PolyTensor, xi: &PolyTensor) -> Result<()> {
    xi.expect_kind(Kind::Form, "covector")?;
    xi.expect_degree(1, "covector")?;
    same_m(pi, xi)
}

/// `π♯ξ = i_ξ π`; for `π = ∂1∧∂2`, `π♯dx1 = ∂2` and `π♯dx2 = −∂1`.
pub fn pi_sharp(pi: &PolyMultivector, xi: &PolyForm) -> Result<PolyMultivector> {
    check_pi(pi)?;
    check_covector(pi, xi)?;
    Ok(contract_unchecked(xi, pi))
}

/// `π(ξ, η) = <η, π♯ξ>`, so `π(df, dg) = {f, g}`.
pub fn pairing_bracket(pi: &PolyMultivector, xi: &PolyForm, eta: &PolyForm) -> Result<Poly> {
    check_covector(pi, eta)?;
    let x = pi_sharp(pi, xi)?;
    Ok(contract_unchecked(&x, eta).coeff(0))
}

/// `[ξ,η]_π = L_{π♯ξ}η − L_{π♯η}ξ − d(π(ξ,η))`.
pub fn koszul_bracket(pi: &PolyMultivector, xi: &PolyForm, eta: &PolyForm) -> Result<PolyForm> {
    check_covector(pi, eta)?;
    let a = lie_derivative(&pi_sharp(pi, xi)?, eta)?;
    let b = lie_derivative(&pi_sharp(pi, eta)?, xi)?;
    let f = PolyTensor::function(Kind::Form, pairing_bracket(pi, xi, eta)?);
    Ok(&(&a - &b) - &de_rham_unchecked(&f))
}

/// `T(ξ_1, …, ξ_k) = i_{ξ_1} ∘ ⋯ ∘ i_{ξ_k} T`, a multivector of degree `|T| − k`.
pub fn eval_on_forms(t: &PolyMultivector, forms: &[PolyForm]) -> Result<PolyMultivector> {
    t.expect_kind(Kind::Multivector, "evaluated tensor")?;
    let mut out = t.clone();
    for f in forms.iter().rev() {
        check_covector(t, f)?;
        out = contract_unchecked(f, &out);
    }
    Ok(out)
}

fn sharp_images(pi: &PolyTensor) -> Vec<PolyTensor> {
    (0..pi.m())
        .map(|i| contract_unchecked(&PolyTensor::generator(pi.m(), Kind::Form, i), pi))
        .collect()
}

/// `(∧^k π♯)α`, the k-vector with `(∧^k π♯ α)(ξ_1..ξ_k) = α(π♯ξ_1, …, π♯ξ_k)`.
pub fn wedge_pi_sharp(pi: &PolyMultivector, alpha: &PolyForm) -> Result<PolyMultivector> {
    check_pi(pi)?;
    alpha.expect_kind(Kind::Form, "α")?;
    same_m(pi, alpha)?;
    let images = sharp_images(pi);
    Ok(wedge_pi_sharp_with(&images, alpha))
}

fn wedge_pi_sharp_with(images: &[PolyTensor], alpha: &PolyTensor) -> PolyTensor {
    let m = alpha.m();
    let mut out = PolyTensor::zero(m, Kind::Multivector);
    for k in 0..=m {
        let part = alpha.degree_part(k);
        if part.is_zero() {
            continue;
        }
        let sign = if (k * k.saturating_sub(1) / 2) % 2 == 1 {
            -Scalar::one()
        } else {
            Scalar::one()
        };
        for mask in (0u32..1 << m).filter(|s| s.count_ones() as usize == k) {
            let mut w = PolyTensor::function(Kind::Multivector, Poly::one(m));
            for g in (0..m).filter(|g| mask & (1 << g) != 0) {
                w = w.wedge_unchecked(&images[g]);
            }
            let value = contract_unchecked(&w, &part).coeff(0);
            out.add_term(mask, value.scale(&sign));
        }
    }
    out
}

/// `½[π,π] − (∧³π♯)ψ`.
pub fn psi_poisson_residual(pi: &PolyMultivector, psi: &PolyForm) -> Result<PolyMultivector> {
    check_pi(pi)?;
    check_psi(pi, psi)?;
    let half = schouten_unchecked(pi, pi).scale(&ratio(1, 2));
    Ok(&half - &wedge_pi_sharp(pi, psi)?)
}

/// `(π♯ψ)(x, y) = −π♯(i_{x∧y}ψ)`, the vector-valued 2-form added to the
/// bracket of vector fields by the twist.
pub fn pi_sharp_psi(
    pi: &PolyMultivector,
    psi: &PolyForm,
    x: &PolyMultivector,
    y: &PolyMultivector,
) -> Result<PolyMultivector> {
    check_pi(pi)?;
    check_psi(pi, psi)?;
    for v in [x, y] {
        v.expect_kind(Kind::Multivector, "vector argument")?;
        v.expect_degree(1, "vector argument")?;
        same_m(pi, v)?;
    }
    Ok(pi_sharp_psi_unchecked(pi, psi, x, y))
}

fn pi_sharp_psi_unchecked(
    pi: &PolyTensor,
    psi: &PolyTensor,
    x: &PolyTensor,
    y: &PolyTensor,
) -> PolyTensor {
    let form = contract_unchecked(x, &contract_unchecked(y, psi));
    -&contract_unchecked(&form, pi)
}

/// Component brackets of the π-twist of the Courant algebroid with
/// background ψ on `TM ⊕ T*M`.
#[derive(Debug, Clone)]
pub struct TwistedBrackets {
    pi: PolyTensor,
    psi: PolyTensor,
}

pub fn twisted_double_brackets(pi: &PolyMultivector, psi: &PolyForm) -> Result<TwistedBrackets> {
    check_pi(pi)?;
    check_psi(pi, psi)?;
    Ok(TwistedBrackets {
        pi: pi.clone(),
        psi: psi.clone(),
    })
}

impl TwistedBrackets {
    pub fn pi(&self) -> &PolyTensor {
        &self.pi
    }

    pub fn psi(&self) -> &PolyTensor {
        &self.psi
    }

    fn sharp(&self, xi: &PolyTensor) -> PolyTensor {
        contract_unchecked(xi, &self.pi)
    }

    /// `[x,y] = [x,y]_μ + (π♯ψ)(x,y) + i_{x∧y}ψ`.
    pub fn vector_vector(&self, x: &PolyTensor, y: &PolyTensor) -> PolySection {
        let vec = &schouten_unchecked(x, y) + &pi_sharp_psi_unchecked(&self.pi, &self.psi, x, y);
        let form = contract_unchecked(&x.wedge_unchecked(y), &self.psi);
        PolySection::from_parts_unchecked(vec, form)
    }

    /// `[x,ξ] = −i_ξ[π,x] + (π♯ψ)(x,π♯ξ) + i_x dξ + i_{x∧π♯ξ}ψ + d<ξ,x>`.
    pub fn vector_form(&self, x: &PolyTensor, xi: &PolyTensor) -> PolySection {
        let px = self.sharp(xi);
        let vec = &pi_sharp_psi_unchecked(&self.pi, &self.psi, x, &px)
            - &contract_unchecked(xi, &schouten_unchecked(&self.pi, x));
        let pairing = contract_unchecked(x, xi);
        let form = &(&contract_unchecked(x, &de_rham_unchecked(xi))
            + &contract_unchecked(&x.wedge_unchecked(&px), &self.psi))
            + &de_rham_unchecked(&pairing);
        PolySection::from_parts_unchecked(vec, form)
    }

    /// `[ξ,x] = i_ξ[π,x] − (π♯ψ)(x,π♯ξ) + [π,<ξ,x>] − i_x dξ − i_{x∧π♯ξ}ψ`.
    pub fn form_vector(&self, xi: &PolyTensor, x: &PolyTensor) -> PolySection {
        let px = self.sharp(xi);
        let pairing = contract_unchecked(x, xi).with_kind(Kind::Multivector);
        let vec = &(&contract_unchecked(xi, &schouten_unchecked(&self.pi, x))
            - &pi_sharp_psi_unchecked(&self.pi, &self.psi, x, &px))
            + &schouten_unchecked(&self.pi, &pairing);
        let form = -&(&contract_unchecked(x, &de_rham_unchecked(xi))
            + &contract_unchecked(&x.wedge_unchecked(&px), &self.psi));
        PolySection::from_parts_unchecked(vec, form)
    }

    /// The bracket of `A*`: `[ξ,η] = [ξ,η]_π + i_{π♯ξ ∧ π♯η}ψ`.
    pub fn covector_bracket(&self, xi: &PolyTensor, eta: &PolyTensor) -> PolyTensor {
        let (a, b) = (self.sharp(xi), self.sharp(eta));
        let koszul = koszul_bracket(&self.pi, xi, eta).expect("validated covectors");
        &koszul + &contract_unchecked(&a.wedge_unchecked(&b), &self.psi)
    }

    /// `φ̃ = −½[π,π] + (∧³π♯)ψ`, the negative ψ-Poisson residual.
    pub fn phi(&self) -> PolyTensor {
        -&psi_poisson_residual(&self.pi, &self.psi).expect("validated π, ψ")
    }

    /// Full `[ξ,η]` of the twisted double: the covector bracket plus the
    /// vector part `φ̃(ξ,η)`, which vanishes under the ψ-Poisson condition.
    pub fn form_form(&self, xi: &PolyTensor, eta: &PolyTensor) -> PolySection {
        let vec =
            eval_on_forms(&self.phi(), &[xi.clone(), eta.clone()]).expect("validated covectors");
        PolySection::from_parts_unchecked(vec, self.covector_bracket(xi, eta))
    }

    /// Full bracket of two sections, bilinear in the four components.
    pub fn bracket(&self, a: &PolySection, b: &PolySection) -> Result<PolySection> {
        a.check_m(self.pi.m())?;
        b.check_m(self.pi.m())?;
        let parts = [
            self.vector_vector(a.vec(), b.vec()),
            self.vector_form(a.vec(), b.form()),
            self.form_vector(a.form(), b.vec()),
            self.form_form(a.form(), b.form()),
        ];
        let mut out = PolySection::zero(self.pi.m());
        for p in &parts {
            out = &out + p;
        }
        Ok(out)
    }

    /// Anchor of the cotangent part, `ρ ∘ π♯ = π♯`.
    pub fn cotangent_anchor(&self, xi: &PolyTensor) -> PolyTensor {
        self.sharp(xi)
    }
}

/// `π♯[ξ,η] − [π♯ξ, π♯η]` for the twisted bracket of covectors.
pub fn morphism_residual(
    pi: &PolyMultivector,
    psi: &PolyForm,
    xi: &PolyForm,
    eta: &PolyForm,
) -> Result<PolyMultivector> {
    let t = twisted_double_brackets(pi, psi)?;
    check_covector(pi, xi)?;
    check_covector(pi, eta)?;
    let lhs = t.sharp(&t.covector_bracket(xi, eta));
    Ok(&lhs - &schouten_unchecked(&t.sharp(xi), &t.sharp(eta)))
}

/// `π♯[ξ,η]_π − [π♯ξ, π♯η] − ½[π,π](ξ,η)` for the untwisted Koszul bracket.
pub fn koszul_morphism_identity(
    pi: &PolyMultivector,
    xi: &PolyForm,
    eta: &PolyForm,
) -> Result<PolyMultivector> {
    check_pi(pi)?;
    let lhs = &pi_sharp(pi, &koszul_bracket(pi, xi, eta)?)?
        - &schouten_unchecked(&pi_sharp(pi, xi)?, &pi_sharp(pi, eta)?);
    let half = schouten_unchecked(pi, pi).scale(&ratio(1, 2));
    Ok(&lhs - &eval_on_forms(&half, &[xi.clone(), eta.clone()])?)
}

/// The Chevalley–Eilenberg differential of the twisted bracket
/// `[x,y] + (π♯ψ)(x,y)` of vector fields, `d + i_{π♯ψ}`.
pub fn twisted_d_mu(pi: &PolyMultivector, psi: &PolyForm, omega: &PolyForm) -> Result<PolyForm> {
    check_pi(pi)?;
    check_psi(pi, psi)?;
    omega.expect_kind(Kind::Form, "ω")?;
    same_m(pi, omega)?;
    let m = pi.m();
    let vecs: Vec<PolyTensor> = (0..m)
        .map(|i| PolyTensor::generator(m, Kind::Multivector, i))
        .collect();
    // β_a = i_{π♯ψ} dx_a, with coefficient −K^a_ij on dx_i∧dx_j where K(∂_i,∂_j) = Σ_a K^a_ij ∂_a
    let mut beta = vec![PolyTensor::zero(m, Kind::Form); m];
    for i in 0..m {
        for j in i + 1..m {
            let k = pi_sharp_psi_unchecked(pi, psi, &vecs[i], &vecs[j]);
            for (mask, f) in k.terms() {
                let a = mask.trailing_zeros() as usize;
                beta[a].add_term((1 << i) | (1 << j), -f);
            }
        }
    }
    let mut out = de_rham_unchecked(omega);
    for (a, b) in beta.iter().enumerate() {
        if !b.is_zero() {
            out = &out + &b.wedge_unchecked(&omega.odd_left(a));
        }
    }
    Ok(out)
}

/// Leibniz rule of the twisted covector bracket with anchor `π♯`:
/// `[ξ, fη] − f[ξ,η] − (π♯ξ)(f) η` on the trial covectors and functions.
pub fn anchor_factorization_check(
    pi: &PolyMultivector,
    psi: &PolyForm,
    covectors: &[PolyForm],
    functions: &[Poly],
) -> Result<Check> {
    let t = twisted_double_brackets(pi, psi)?;
    if covectors.is_empty() || functions.is_empty() {
        return Err(Error::Input(
            "anchor factorization needs covectors and functions".into(),
        ));
    }
    let m = pi.m();
    let mut sweep = Sweep::new("anchor factorization", PolyTensor::zero(m, Kind::Form));
    for xi in covectors {
        check_covector(pi, xi)?;
        for eta in covectors {
            let base = t.covector_bracket(xi, eta);
            for f in functions {
                let fe = eta.mul_poly(f);
                let fun = PolyTensor::function(Kind::Multivector, f.clone());
                let df = schouten_unchecked(&t.cotangent_anchor(xi), &fun).coeff(0);
                let r = &(&t.covector_bracket(xi, &fe) - &base.mul_poly(f)) - &eta.mul_poly(&df);
                sweep.record(r, || format!("ξ={xi}, η={eta}, f={f}"));
            }
        }
    }
    Ok(sweep.finish())
}

/// Jacobi residual of the twisted covector bracket on every triple of
/// trial covectors.
pub fn twisted_covector_jacobi(
    pi: &PolyMultivector,
    psi: &PolyForm,
    covectors: &[PolyForm],
) -> Result<Check> {
    let t = twisted_double_brackets(pi, psi)?;
    for c in covectors {
        check_covector(pi, c)?;
    }
    let m = pi.m();
    let k = covectors.len();
    let br: Vec<Vec<PolyTensor>> = (0..k)
        .into_par_iter()
        .map(|a| {
            (0..k)
                .map(|b| t.covector_bracket(&covectors[a], &covectors[b]))
                .collect()
        })
        .collect();
    let rows: Vec<Vec<(PolyTensor, (usize, usize, usize))>> = (0..k)
        .into_par_iter()
        .map(|a| {
            let mut row = Vec::new();
            for b in 0..k {
                for c in b + 1..k {
                    let (x, y, z) = (&covectors[a], &covectors[b], &covectors[c]);
                    let r = &(&t.covector_bracket(x, &br[b][c])
                        - &t.covector_bracket(&br[a][b], z))
                        - &t.covector_bracket(y, &br[a][c]);
                    row.push((r, (a, b, c)));
                }
            }
            row
        })
        .collect();
    let mut sweep = Sweep::new("twisted covector Jacobi", PolyTensor::zero(m, Kind::Form));
    for (r, (a, b, c)) in rows.into_iter().flatten() {
        sweep.record(r, || {
            format!("{}, {}, {}", covectors[a], covectors[b], covectors[c])
        });
    }
    Ok(sweep.finish())
}

/// Everything `check-poisson-bg` reports for `(π, ψ)`: the ψ-Poisson
/// residual, closedness of ψ, the morphism property of `π♯`, Jacobi of the
/// twisted covector bracket and anchor factorization. Trial covectors are
/// `x^a dx_i` with `|a| ≤ max_degree`.
pub fn poisson_bg_report(
    pi: &PolyMultivector,
    psi: &PolyForm,
    max_degree: usize,
) -> Result<AxiomReport> {
    check_pi(pi)?;
    check_psi(pi, psi)?;
    let m = pi.m();
    let covs = monomial_tensors(m, Kind::Form, max_degree, 1..=1);
    let mut report = AxiomReport::default();
    report.push(Check::new("½[π,π] − ∧³π♯ψ", psi_poisson_residual(pi, psi)?));
    report.push(Check::new("closed background", de_rham_unchecked(psi)));
    let t = twisted_double_brackets(pi, psi)?;
    let rows: Vec<Vec<PolyTensor>> = covs
        .par_iter()
        .map(|xi| {
            covs.iter()
                .map(|eta| {
                    &t.sharp(&t.covector_bracket(xi, eta))
                        - &schouten_unchecked(&t.sharp(xi), &t.sharp(eta))
                })
                .collect()
        })
        .collect();
    let mut morphism = Sweep::new("π♯ morphism", PolyTensor::zero(m, Kind::Multivector));
    for (xi, row) in covs.iter().zip(rows) {
        for (eta, r) in covs.iter().zip(row) {
            morphism.record(r, || format!("ξ={xi}, η={eta}"));
        }
    }
    report.push(morphism.finish());
    report.push(twisted_covector_jacobi(pi, psi, &covs)?);
    report.push(anchor_factorization_check(
        pi,
        psi,
        &covs,
        &default_trial_functions(m),
    )?);
    Ok(report)
}

/// Outcome of the linear solve for a closed ψ with `½[π,π] = (∧³π♯)ψ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PsiSolve {
    Found(PolyForm),
    /// No polynomial ψ of coefficient degree at most `max_degree` exists.
    Infeasible {
        max_degree: usize,
        unknowns: usize,
        equations: usize,
    },
}

/// Solves for a closed 3-form ψ with coefficients of degree at most
/// `max_degree` such that π satisfies the ψ-Poisson condition.
pub fn solve_psi(pi: &PolyMultivector, max_degree: usize) -> Result<PsiSolve> {
    check_pi(pi)?;
    let m = pi.m();
    let images = sharp_images(pi);
    let monos = monomials_up_to(m, max_degree);
    let mut unknowns = Vec::new();
    for mask in (0u32..1 << m).filter(|s| s.count_ones() == 3) {
        for e in &monos {
            unknowns.push(PolyTensor::from_terms(
                m,
                Kind::Form,
                [(mask, Poly::monomial(e.clone(), Scalar::one()))],
            ));
        }
    }
    // rows keyed by (equation family, mask, exponents)
    let mut keys: std::collections::BTreeMap<(u8, u32, Vec<u16>), usize> = Default::default();
    let mut columns: Vec<Vec<((u8, u32, Vec<u16>), Scalar)>> = Vec::new();
    for u in &unknowns {
        let mut col = Vec::new();
        for (family, t) in [
            (0u8, wedge_pi_sharp_with(&images, u)),
            (1u8, de_rham_unchecked(u)),
        ] {
            for (mask, f) in t.terms() {
                for (e, c) in f.terms() {
                    let key = (family, mask, e.clone());
                    let n = keys.len();
                    keys.entry(key.clone()).or_insert(n);
                    col.push((key, c.clone()));
                }
            }
        }
        columns.push(col);
    }
    let target = schouten_unchecked(pi, pi).scale(&ratio(1, 2));
    for (mask, f) in target.terms() {
        for (e, _) in f.terms() {
            let n = keys.len();
            keys.entry((0, mask, e.clone())).or_insert(n);
        }
    }
    let rows = keys.len();
    let mut a = vec![vec![Scalar::from_integer(0.into()); unknowns.len()]; rows];
    for (j, col) in columns.iter().enumerate() {
        for (key, c) in col {
            a[keys[key]][j] += c;
        }
    }
    let mut b = vec![Scalar::from_integer(0.into()); rows];
    for (mask, f) in target.terms() {
        for (e, c) in f.terms() {
            b[keys[&(0, mask, e.clone())]] += c;
        }
    }
    match linalg::solve(&a, &b, unknowns.len()) {
        Some(x) => {
            let mut psi = PolyTensor::zero(m, Kind::Form);
            for (c, u) in x.iter().zip(&unknowns) {
                psi = &psi + &u.scale(c);
            }
            Ok(PsiSolve::Found(psi))
        }
        None => Ok(PsiSolve::Infeasible {
            max_degree,
            unknowns: unknowns.len(),
            equations: rows,
        }),
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::poly::courant::{courant_bg_bracket, default_trial_sections};
    use crate::poly::tensor::{monomial_tensors, schouten};
    use crate::scalar::int;

    pub(crate) fn x(m: usize, i: usize) -> Poly {
        Poly::var(m, i - 1)
    }

    pub(crate) fn mv(idx: &[usize], f: Poly) -> PolyTensor {
        let idx: Vec<usize> = idx.iter().map(|i| i - 1).collect();
        PolyTensor::monomial(Kind::Multivector, &idx, f).unwrap()
    }

    pub(crate) fn fm(idx: &[usize], f: Poly) -> PolyTensor {
        let idx: Vec<usize> = idx.iter().map(|i| i - 1).collect();
        PolyTensor::monomial(Kind::Form, &idx, f).unwrap()
    }

    pub(crate) fn lie_poisson_so3() -> PolyTensor {
        let m = 3;
        &(&mv(&[1, 2], x(m, 3)) + &mv(&[2, 3], x(m, 1))) - &mv(&[1, 3], x(m, 2))
    }

    pub(crate) fn r4_pair() -> (PolyTensor, PolyTensor) {
        let m = 4;
        let pi = &(&mv(&[1, 2], Poly::one(m)) + &mv(&[3, 4], Poly::one(m))) + &mv(&[1, 3], x(m, 1));
        (pi, fm(&[1, 2, 4], Poly::one(m)))
    }

    #[test]
    fn pi_sharp_examples() {
        let m = 3;
        let pi = mv(&[1, 2], Poly::one(m));
        assert_eq!(
            pi_sharp(&pi, &fm(&[1], Poly::one(m))).unwrap(),
            mv(&[2], Poly::one(m))
        );
        assert_eq!(
            pi_sharp(&pi, &fm(&[2], Poly::one(m))).unwrap(),
            mv(&[1], Poly::constant(m, int(-1)))
        );
        assert!(pi_sharp(&pi, &fm(&[3], Poly::one(m))).unwrap().is_zero());
        let a = pi_sharp(&pi, &fm(&[1], x(m, 1))).unwrap();
        assert_eq!(
            a,
            pi_sharp(&pi, &fm(&[1], Poly::one(m)))
                .unwrap()
                .mul_poly(&x(m, 1))
        );
        assert!(pi_sharp(&pi, &pi).is_err());
    }

    #[test]
    fn koszul_examples() {
        let m = 3;
        let c = mv(&[1, 2], Poly::one(m));
        assert!(
            koszul_bracket(&c, &fm(&[1], Poly::one(m)), &fm(&[2], Poly::one(m)))
                .unwrap()
                .is_zero()
        );
        let pi = mv(&[1, 2], x(m, 3));
        let k = koszul_bracket(&pi, &fm(&[1], Poly::one(m)), &fm(&[2], Poly::one(m))).unwrap();
        assert_eq!(k, fm(&[3], Poly::one(m)));
        // [df, dg]_π = d{f,g} for f = x1, g = x1 x2 on so(3)*
        let lp = lie_poisson_so3();
        let f = PolyTensor::function(Kind::Form, x(m, 1));
        let g = PolyTensor::function(Kind::Form, &x(m, 1) * &x(m, 2));
        let (df, dg) = (de_rham_unchecked(&f), de_rham_unchecked(&g));
        let fg = PolyTensor::function(Kind::Form, pairing_bracket(&lp, &df, &dg).unwrap());
        assert_eq!(
            koszul_bracket(&lp, &df, &dg).unwrap(),
            de_rham_unchecked(&fg)
        );
        assert_eq!(pairing_bracket(&lp, &df, &dg).unwrap().pretty(), "x1*x3");
    }

    #[test]
    fn dimension_three_background_drops_out() {
        let m = 3;
        let pi = &mv(&[1, 2], &x(m, 1) * &x(m, 3)) + &mv(&[2, 3], &x(m, 2) + &Poly::one(m));
        let psi = fm(&[1, 2, 3], &x(m, 1) + &x(m, 2));
        assert!(wedge_pi_sharp(&pi, &psi).unwrap().is_zero());
        let half = schouten(&pi, &pi).unwrap().scale(&ratio(1, 2));
        assert!(!half.is_zero());
        assert_eq!(psi_poisson_residual(&pi, &psi).unwrap(), half);
    }

    #[test]
    fn triple_pi_sharp_against_closed_form() {
        // ((∧³π♯)ψ)(ξ,η) = −π♯(i_{π♯ξ ∧ π♯η}ψ)
        let m = 4;
        let pi = &(&mv(&[1, 2], x(m, 3)) + &mv(&[3, 4], Poly::one(m))) + &mv(&[1, 4], x(m, 2));
        let psi = &fm(&[1, 2, 3], x(m, 4)) + &fm(&[1, 3, 4], Poly::constant(m, int(2)));
        let w = wedge_pi_sharp(&pi, &psi).unwrap();
        let covs = monomial_tensors(m, Kind::Form, 1, 1..=1);
        for xi in covs.iter().take(10) {
            for eta in covs.iter().step_by(3) {
                let lhs = eval_on_forms(&w, &[xi.clone(), eta.clone()]).unwrap();
                let (a, b) = (pi_sharp(&pi, xi).unwrap(), pi_sharp(&pi, eta).unwrap());
                let inner = contract_unchecked(&a.wedge_unchecked(&b), &psi);
                assert_eq!(lhs, -&pi_sharp(&pi, &inner).unwrap(), "ξ={xi}, η={eta}");
            }
        }
    }

    fn conjugate(pi: &PolyTensor, s: &PolySection, sign: i64) -> PolySection {
        let px = pi_sharp(pi, s.form()).unwrap().scale(&int(sign));
        PolySection::new(s.vec() + &px, s.form().clone()).unwrap()
    }

    #[test]
    fn twisted_brackets_match_conjugated_background_bracket() {
        // twisting by π is conjugation by x + ξ ↦ x − π♯ξ + ξ
        let m = 4;
        let pi = &(&mv(&[1, 2], x(m, 3)) + &mv(&[3, 4], Poly::one(m)))
            + &mv(&[1, 3], &x(m, 1) * &x(m, 2));
        let psi = &fm(&[1, 2, 3], x(m, 4)) + &fm(&[2, 3, 4], &x(m, 1) * &x(m, 1));
        let t = twisted_double_brackets(&pi, &psi).unwrap();
        let secs = default_trial_sections(m, 1);
        for a in &secs {
            for b in secs.iter().step_by(3) {
                let lhs = t.bracket(a, b).unwrap();
                let inner =
                    courant_bg_bracket(&conjugate(&pi, a, 1), &conjugate(&pi, b, 1), &psi).unwrap();
                assert_eq!(lhs, conjugate(&pi, &inner, -1), "a={a}, b={b}");
            }
        }
    }

    #[test]
    fn twisted_brackets_match_point_twist_for_constant_data() {
        use crate::basis::BasisSpec;
        use crate::graded::GradedElement;
        use crate::structures::{
            double_bracket, three_form_from_constants, DoubleSection, ProtoStructure,
        };
        use crate::twisting::twist;
        let m = 4;
        let b = BasisSpec::standard(m).unwrap();
        let psi_pt = three_form_from_constants(
            &b,
            &[(0, 1, 2, int(1)), (1, 2, 3, int(2)), (0, 2, 3, int(-1))],
        )
        .unwrap();
        let pi_pt = &(&GradedElement::monomial(&b, &[0, 1], int(1))
            + &GradedElement::monomial(&b, &[2, 3], int(1)))
            + &GradedElement::monomial(&b, &[0, 2], int(3));
        let s = twist(&ProtoStructure::zero(&b).with_psi(psi_pt).unwrap(), &pi_pt).unwrap();
        let psi = &(&fm(&[1, 2, 3], Poly::one(m)) + &fm(&[2, 3, 4], Poly::constant(m, int(2))))
            - &fm(&[1, 3, 4], Poly::one(m));
        let pi = &(&mv(&[1, 2], Poly::one(m)) + &mv(&[3, 4], Poly::one(m)))
            + &mv(&[1, 3], Poly::constant(m, int(3)));
        let t = twisted_double_brackets(&pi, &psi).unwrap();
        let point = DoubleSection::standard_sections(&b);
        let poly = default_trial_sections(m, 0);
        // both lists are ∂_1..∂_m then dx_1..dx_m
        let to_coords = |p: &PolySection| -> Vec<Scalar> {
            let mut c = Vec::new();
            for t in [p.vec(), p.form()] {
                for i in 0..m {
                    c.push(t.coeff(1 << i).constant_part());
                }
            }
            c
        };
        for (pa, qa) in point.iter().zip(&poly) {
            for (pb, qb) in point.iter().zip(&poly) {
                let expected = double_bracket(&s, pa, pb).unwrap().coords();
                assert_eq!(
                    to_coords(&t.bracket(qa, qb).unwrap()),
                    expected,
                    "{qa}, {qb}"
                );
            }
        }
    }

    #[test]
    fn reductions_with_zero_background() {
        let m = 3;
        let lp = lie_poisson_so3();
        let t = twisted_double_brackets(&lp, &PolyTensor::zero(m, Kind::Form)).unwrap();
        let covs = monomial_tensors(m, Kind::Form, 1, 1..=1);
        for xi in &covs {
            for eta in &covs {
                let s = t.form_form(xi, eta);
                assert!(s.vec().is_zero());
                assert_eq!(s.form(), &koszul_bracket(&lp, xi, eta).unwrap());
                assert!(
                    morphism_residual(&lp, &PolyTensor::zero(m, Kind::Form), xi, eta)
                        .unwrap()
                        .is_zero()
                );
            }
        }
    }

    #[test]
    fn morphism_defect_is_half_the_schouten_square() {
        let m = 4;
        let pi = &mv(&[1, 2], Poly::one(m)) + &mv(&[3, 4], x(m, 1));
        let zero = PolyTensor::zero(m, Kind::Form);
        let half = schouten(&pi, &pi).unwrap().scale(&ratio(1, 2));
        let covs = monomial_tensors(m, Kind::Form, 1, 1..=1);
        let mut nonzero = 0;
        for xi in covs.iter().step_by(2) {
            for eta in &covs {
                assert!(koszul_morphism_identity(&pi, xi, eta).unwrap().is_zero());
                let r = morphism_residual(&pi, &zero, xi, eta).unwrap();
                assert_eq!(r, eval_on_forms(&half, &[xi.clone(), eta.clone()]).unwrap());
                nonzero += usize::from(!r.is_zero());
            }
        }
        assert!(nonzero > 0);
    }

    #[test]
    fn r4_pair_is_psi_poisson() {
        let (pi, psi) = r4_pair();
        let m = 4;
        assert!(!schouten(&pi, &pi).unwrap().is_zero());
        assert!(de_rham_unchecked(&psi).is_zero());
        assert!(psi_poisson_residual(&pi, &psi).unwrap().is_zero());
        let covs = monomial_tensors(m, Kind::Form, 1, 1..=1);
        for xi in covs.iter().step_by(2) {
            for eta in &covs {
                assert!(morphism_residual(&pi, &psi, xi, eta).unwrap().is_zero());
            }
        }
        let t = twisted_double_brackets(&pi, &psi).unwrap();
        let picked = t.covector_bracket(&fm(&[1], Poly::one(m)), &fm(&[2], Poly::one(m)));
        let koszul = koszul_bracket(&pi, &fm(&[1], Poly::one(m)), &fm(&[2], Poly::one(m))).unwrap();
        assert_ne!(picked, koszul);
        assert!(twisted_covector_jacobi(&pi, &psi, &covs[..12])
            .unwrap()
            .verdict());
        let f = [x(m, 2), &x(m, 1) * &x(m, 4)];
        assert!(anchor_factorization_check(&pi, &psi, &covs[..8], &f)
            .unwrap()
            .verdict());
    }

    #[test]
    fn jacobi_fails_off_the_psi_poisson_locus() {
        let m = 4;
        let (pi, _) = r4_pair();
        let wrong = fm(&[1, 2, 3], Poly::one(m));
        assert!(!psi_poisson_residual(&pi, &wrong).unwrap().is_zero());
        let covs = monomial_tensors(m, Kind::Form, 1, 1..=1);
        let c = twisted_covector_jacobi(&pi, &wrong, &covs[..12]).unwrap();
        assert!(!c.verdict());
        assert!(c.witness.is_some());
    }

    #[test]
    fn solve_certifies_and_finds() {
        let m = 4;
        let spec_pi = &mv(&[1, 2], Poly::one(m)) + &mv(&[3, 4], x(m, 1));
        for d in 0..=2 {
            assert!(matches!(
                solve_psi(&spec_pi, d).unwrap(),
                PsiSolve::Infeasible { .. }
            ));
        }
        let (pi, psi) = r4_pair();
        match solve_psi(&pi, 1).unwrap() {
            PsiSolve::Found(found) => {
                assert!(psi_poisson_residual(&pi, &found).unwrap().is_zero());
                assert!(de_rham_unchecked(&found).is_zero());
                assert_eq!(found, psi);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn twisted_d_mu_squares_to_nonzero() {
        let (pi, psi) = r4_pair();
        let m = 4;
        let f = PolyTensor::function(Kind::Form, x(m, 3));
        let once = twisted_d_mu(&pi, &psi, &f).unwrap();
        assert_eq!(once, fm(&[3], Poly::one(m)));
        let twice = twisted_d_mu(&pi, &psi, &once).unwrap();
        assert!(!twice.is_zero());
        // with ψ = 0 it is the de Rham differential
        let zero = PolyTensor::zero(m, Kind::Form);
        let w = fm(&[2], &x(m, 1) * &x(m, 3));
        assert_eq!(twisted_d_mu(&pi, &zero, &w).unwrap(), de_rham_unchecked(&w));
    }
}
