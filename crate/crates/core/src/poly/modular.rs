//! Koszul–Brylinski operator, the divergence boundary `∂_ν`, the modular
//! field and the square-zero deriving operator of a Poisson bivector.

use rayon::prelude::*;

use super::poisson::koszul_bracket;
use super::tensor::{
    contract_unchecked, de_rham_unchecked, monomial_tensors, schouten_unchecked, Kind, PolyTensor,
};
use crate::error::{Error, Result};
use crate::report::{AxiomReport, Check, Sweep};

/// Bracket generated by an odd operator `∂`:
/// `[u,v] = (−1)^{|u|}(∂(u∧v) − ∂u∧v − (−1)^{|u|} u∧∂v)` for homogeneous `u`.
fn generated(op: &dyn Fn(&PolyTensor) -> PolyTensor, u: &PolyTensor, v: &PolyTensor) -> PolyTensor {
    let du = u.degree().unwrap_or(0);
    let uv = u.wedge_unchecked(v);
    let a = &op(&uv) - &op(u).wedge_unchecked(v);
    let b = u.wedge_unchecked(&op(v));
    let inner = if du % 2 == 0 { &a - &b } else { &a + &b };
    if du % 2 == 0 {
        inner
    } else {
        -&inner
    }
}

/// The Koszul–Brylinski operator `∂_π = d i_π − i_π d` on forms. This is
/// `[i_π, d]` for the interior product with `i_π(df∧dg) = {f,g}`; ours has
/// `i_{u∧v} = i_u ∘ i_v`, so `i_π(df∧dg) = −{f,g}` and the order flips.
#[derive(Debug, Clone)]
pub struct KoszulBrylinski {
    pi: PolyTensor,
}

pub fn koszul_brylinski(pi: &PolyTensor) -> Result<KoszulBrylinski> {
    pi.expect_kind(Kind::Multivector, "π")?;
    pi.expect_degree(2, "bivector π")?;
    Ok(KoszulBrylinski { pi: pi.clone() })
}

impl KoszulBrylinski {
    pub fn apply(&self, omega: &PolyTensor) -> Result<PolyTensor> {
        omega.expect_kind(Kind::Form, "∂_π operand")?;
        if omega.m() != self.pi.m() {
            return Err(Error::DimensionMismatch {
                left: self.pi.m(),
                right: omega.m(),
            });
        }
        Ok(self.apply_unchecked(omega))
    }

    fn apply_unchecked(&self, omega: &PolyTensor) -> PolyTensor {
        &de_rham_unchecked(&contract_unchecked(&self.pi, omega))
            - &contract_unchecked(&self.pi, &de_rham_unchecked(omega))
    }

    /// Bracket of forms generated by `∂_π`.
    pub fn generated_bracket(&self, u: &PolyTensor, v: &PolyTensor) -> Result<PolyTensor> {
        self.apply(u)?;
        self.apply(v)?;
        Ok(generated(&|w| self.apply_unchecked(w), u, v))
    }
}

/// The divergence boundary `∂_ν = −Σ_i ∂/∂x_i ∂⃗/∂θ_i` of a constant volume
/// form, acting on multivectors; `∂_ν X = −div X` on vector fields.
#[derive(Debug, Clone)]
pub struct BoundaryNu {
    m: usize,
}

/// `ν` must be a nonzero constant multiple of `dx_1 ∧ … ∧ dx_m`; a
/// non-constant density leaves the polynomial ring.
pub fn boundary_nu(nu: &PolyTensor) -> Result<BoundaryNu> {
    nu.expect_kind(Kind::Form, "ν")?;
    let m = nu.m();
    let top = nu.coeff((1u32 << m) - 1);
    if nu.is_zero() || top.is_zero() {
        return Err(Error::DegenerateForm);
    }
    if !nu.has_degree(m) {
        return Err(Error::Degree {
            what: "volume form ν",
            expected: m,
            found: nu
                .terms()
                .map(|(k, _)| k.count_ones() as usize)
                .find(|&d| d != m)
                .unwrap_or(m),
        });
    }
    if !top.is_constant() {
        return Err(Error::Input(format!(
            "ν must have a constant coefficient, found {top}"
        )));
    }
    Ok(BoundaryNu { m })
}

/// `dx_1 ∧ … ∧ dx_m`.
pub fn standard_volume(m: usize) -> PolyTensor {
    PolyTensor::from_terms(m, Kind::Form, [((1u32 << m) - 1, super::Poly::one(m))])
}

impl BoundaryNu {
    pub fn standard(m: usize) -> Self {
        BoundaryNu { m }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn apply(&self, u: &PolyTensor) -> Result<PolyTensor> {
        u.expect_kind(Kind::Multivector, "∂_ν operand")?;
        if u.m() != self.m {
            return Err(Error::DimensionMismatch {
                left: self.m,
                right: u.m(),
            });
        }
        Ok(self.apply_unchecked(u))
    }

    fn apply_unchecked(&self, u: &PolyTensor) -> PolyTensor {
        let mut out = PolyTensor::zero(u.m(), Kind::Multivector);
        for i in 0..self.m {
            out = &out - &u.odd_left(i).partial(i);
        }
        out
    }

    pub fn generated_bracket(&self, u: &PolyTensor, v: &PolyTensor) -> Result<PolyTensor> {
        self.apply(u)?;
        self.apply(v)?;
        Ok(generated(&|w| self.apply_unchecked(w), u, v))
    }
}

/// `x_ν = ∂_ν π`.
pub fn modular_field(pi: &PolyTensor, nu: &PolyTensor) -> Result<PolyTensor> {
    pi.expect_kind(Kind::Multivector, "π")?;
    pi.expect_degree(2, "bivector π")?;
    boundary_nu(nu)?.apply(pi)
}

/// `∂_π` generates the Koszul bracket on every pair of monomial 1-forms with
/// coefficients of degree at most `max_coeff_degree`.
pub fn forms_generator_check(pi: &PolyTensor, max_coeff_degree: usize) -> Result<Check> {
    let op = koszul_brylinski(pi)?;
    let m = pi.m();
    let forms = monomial_tensors(m, Kind::Form, max_coeff_degree, 1..=1);
    let results: Vec<Vec<(PolyTensor, String)>> = forms
        .par_iter()
        .map(|a| {
            forms
                .iter()
                .map(|b| {
                    let g = generated(&|w| op.apply_unchecked(w), a, b);
                    let k = koszul_bracket(pi, a, b).expect("validated 1-forms");
                    (&g - &k, format!("ξ={a}, η={b}"))
                })
                .collect()
        })
        .collect();
    let mut sweep = Sweep::new(
        "∂_π generates the Koszul bracket",
        PolyTensor::zero(m, Kind::Form),
    );
    for (r, w) in results.into_iter().flatten() {
        sweep.record(r, || w);
    }
    Ok(sweep.finish())
}

/// Residuals of `(d_π − ∂_ν + e_{x_ν})² = 0`, `[d_π, ∂_ν] = L_{x_ν}`,
/// `d_π x_ν = 0`, `∂_ν x_ν = 0` and `∂_ν² = 0` on every test multivector with
/// coefficient degree at most `max_coeff_degree`, plus the generator property
/// of `∂_ν` on pairs with coefficient degree at most one.
pub fn triangular_deriving_checks(
    pi: &PolyTensor,
    nu: &PolyTensor,
    max_coeff_degree: usize,
) -> Result<AxiomReport> {
    pi.expect_kind(Kind::Multivector, "π")?;
    pi.expect_degree(2, "bivector π")?;
    let m = pi.m();
    if nu.m() != m {
        return Err(Error::DimensionMismatch {
            left: m,
            right: nu.m(),
        });
    }
    let bnu = boundary_nu(nu)?;
    let pp = schouten_unchecked(pi, pi);
    if !pp.is_zero() {
        return Err(Error::NotPoisson);
    }
    let x_nu = bnu.apply_unchecked(pi);
    let d_pi = |u: &PolyTensor| schouten_unchecked(pi, u);
    let e_x = |u: &PolyTensor| x_nu.wedge_unchecked(u);
    let big_d = |u: &PolyTensor| &(&d_pi(u) - &bnu.apply_unchecked(u)) + &e_x(u);
    let zero = PolyTensor::zero(m, Kind::Multivector);

    let tests = monomial_tensors(m, Kind::Multivector, max_coeff_degree, 0..=m);
    let per: Vec<[(PolyTensor, String); 2]> = tests
        .par_iter()
        .map(|u| {
            let w = u.pretty();
            let sq = big_d(&big_d(u));
            let lap = &(&d_pi(&bnu.apply_unchecked(u)) + &bnu.apply_unchecked(&d_pi(u)))
                - &schouten_unchecked(&x_nu, u);
            [(sq, w.clone()), (lap, w)]
        })
        .collect();
    let mut square = Sweep::new("(d_π − ∂_ν + e_{x_ν})² = 0", zero.clone());
    let mut laplacian = Sweep::new("[d_π, ∂_ν] = L_{x_ν}", zero);
    for [(a, wa), (b, wb)] in per {
        square.record(a, || wa);
        laplacian.record(b, || wb);
    }
    let [nu_square, generator] = boundary_checks(&bnu, max_coeff_degree);

    let mut report = AxiomReport::default();
    report.push(Check::new("[π,π] = 0", pp));
    report.push(Check::new("d_π x_ν = 0", d_pi(&x_nu)));
    report.push(Check::new("∂_ν x_ν = 0", bnu.apply_unchecked(&x_nu)));
    report.push(square.finish());
    report.push(laplacian.finish());
    report.push(nu_square);
    report.push(generator);
    Ok(report)
}

/// `∂_ν² = 0` on the test multivectors and the generator property of `∂_ν`
/// on pairs with coefficient degree at most one.
fn boundary_checks(bnu: &BoundaryNu, max_coeff_degree: usize) -> [Check; 2] {
    let m = bnu.m;
    let zero = PolyTensor::zero(m, Kind::Multivector);
    let tests = monomial_tensors(m, Kind::Multivector, max_coeff_degree, 0..=m);
    let squares: Vec<PolyTensor> = tests
        .par_iter()
        .map(|u| bnu.apply_unchecked(&bnu.apply_unchecked(u)))
        .collect();
    let mut nu_square = Sweep::new("∂_ν² = 0", zero.clone());
    for (u, r) in tests.iter().zip(squares) {
        nu_square.record(r, || u.pretty());
    }
    let pairs = monomial_tensors(m, Kind::Multivector, max_coeff_degree.min(1), 0..=m);
    let gen: Vec<Vec<(PolyTensor, String)>> = pairs
        .par_iter()
        .map(|u| {
            pairs
                .iter()
                .map(|v| {
                    let g = generated(&|w| bnu.apply_unchecked(w), u, v);
                    (&g - &schouten_unchecked(u, v), format!("u={u}, v={v}"))
                })
                .collect()
        })
        .collect();
    let mut generator = Sweep::new("∂_ν generates the Schouten bracket", zero);
    for (r, w) in gen.into_iter().flatten() {
        generator.record(r, || w);
    }
    [nu_square.finish(), generator.finish()]
}

/// The modular field `x_ν = ∂_ν π` of any bivector, with the checks that do
/// not need `[π,π] = 0`: `∂_π` generates the Koszul bracket, `∂_ν² = 0`,
/// `∂_ν x_ν = 0` and the generator property of `∂_ν`.
pub fn modular_report(
    pi: &PolyTensor,
    nu: &PolyTensor,
    max_coeff_degree: usize,
) -> Result<(PolyTensor, AxiomReport)> {
    if nu.m() != pi.m() {
        return Err(Error::DimensionMismatch {
            left: pi.m(),
            right: nu.m(),
        });
    }
    let x_nu = modular_field(pi, nu)?;
    let bnu = boundary_nu(nu)?;
    let mut report = AxiomReport::default();
    report.push(forms_generator_check(pi, max_coeff_degree)?);
    report.push(Check::new("∂_ν x_ν = 0", bnu.apply_unchecked(&x_nu)));
    for c in boundary_checks(&bnu, max_coeff_degree) {
        report.push(c);
    }
    Ok((x_nu, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::poisson::tests::{fm, lie_poisson_so3, mv, x};
    use crate::poly::Poly;
    use crate::scalar::int;

    #[test]
    fn modular_report_on_a_non_poisson_bivector() {
        let m = 4;
        let p = &mv(&[1, 2], Poly::one(m)) + &mv(&[3, 4], x(m, 1));
        let (x_nu, r) = modular_report(&p, &standard_volume(m), 1).unwrap();
        assert!(x_nu.is_zero());
        assert!(r.all_pass(), "{r:?}");
    }

    #[test]
    fn modular_field_examples() {
        let c = mv(&[1, 2], Poly::one(2));
        assert!(modular_field(&c, &standard_volume(2)).unwrap().is_zero());
        let p = mv(&[1, 2], x(2, 1));
        assert_eq!(
            modular_field(&p, &standard_volume(2)).unwrap(),
            mv(&[2], Poly::constant(2, int(-1)))
        );
        assert!(modular_field(&lie_poisson_so3(), &standard_volume(3))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn boundary_is_minus_divergence() {
        let m = 3;
        let b = BoundaryNu::standard(m);
        let v = &mv(&[1], &x(m, 1) * &x(m, 2)) + &mv(&[3], x(m, 3));
        assert_eq!(b.apply(&v).unwrap().coeff(0).pretty(), "-x2 - 1");
    }

    #[test]
    fn volume_validation() {
        assert!(matches!(
            boundary_nu(&PolyTensor::zero(2, Kind::Form)),
            Err(Error::DegenerateForm)
        ));
        assert!(boundary_nu(&fm(&[1, 2], x(2, 1))).is_err());
        assert!(boundary_nu(&fm(&[1, 2], Poly::constant(2, int(3)))).is_ok());
    }

    #[test]
    fn koszul_brylinski_generates_the_koszul_bracket() {
        let m = 3;
        let p = mv(&[1, 2], x(m, 3));
        let op = koszul_brylinski(&p).unwrap();
        let g = op
            .generated_bracket(&fm(&[1], Poly::one(m)), &fm(&[2], Poly::one(m)))
            .unwrap();
        assert_eq!(g, fm(&[3], Poly::one(m)));
        assert!(forms_generator_check(&lie_poisson_so3(), 1)
            .unwrap()
            .verdict());
    }

    #[test]
    fn triangular_fixtures() {
        for (p, m) in [
            (mv(&[1, 2], Poly::one(2)), 2),
            (lie_poisson_so3(), 3),
            (mv(&[1, 2], x(2, 1)), 2),
        ] {
            let r = triangular_deriving_checks(&p, &standard_volume(m), 1).unwrap();
            assert!(r.all_pass(), "{p}: {r:?}");
        }
    }

    #[test]
    fn non_poisson_rejected() {
        let m = 4;
        let p = &mv(&[1, 2], Poly::one(m)) + &mv(&[3, 4], x(m, 1));
        assert!(matches!(
            triangular_deriving_checks(&p, &standard_volume(m), 1),
            Err(Error::NotPoisson)
        ));
    }
}
