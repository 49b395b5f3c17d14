//! The Courant bracket with background ψ on `TM ⊕ T*M`.

use std::fmt;
use std::ops::{Add, Sub};

use rayon::prelude::*;

use super::polynomial::{monomials_up_to, Poly};
use super::tensor::{contract_unchecked, de_rham_unchecked, schouten_unchecked, Kind, PolyTensor};
use crate::error::{Error, Result};
use crate::report::{AxiomReport, Check, Equivalence, Residual, Sweep};
use crate::scalar::{int, ratio, Scalar};

/// A section `x + ξ` of `TM ⊕ T*M`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolySection {
    vec: PolyTensor,
    form: PolyTensor,
}

impl PolySection {
    pub fn new(vec: PolyTensor, form: PolyTensor) -> Result<Self> {
        vec.expect_kind(Kind::Multivector, "section vector part")?;
        form.expect_kind(Kind::Form, "section form part")?;
        vec.expect_degree(1, "section vector part")?;
        form.expect_degree(1, "section form part")?;
        if vec.m() != form.m() {
            return Err(Error::DimensionMismatch {
                left: vec.m(),
                right: form.m(),
            });
        }
        Ok(PolySection { vec, form })
    }

    pub(crate) fn from_parts_unchecked(vec: PolyTensor, form: PolyTensor) -> Self {
        debug_assert!(vec.has_degree(1) && form.has_degree(1));
        PolySection { vec, form }
    }

    pub fn zero(m: usize) -> Self {
        PolySection {
            vec: PolyTensor::zero(m, Kind::Multivector),
            form: PolyTensor::zero(m, Kind::Form),
        }
    }

    pub fn from_vector(vec: PolyTensor) -> Result<Self> {
        let m = vec.m();
        PolySection::new(vec, PolyTensor::zero(m, Kind::Form))
    }

    pub fn from_form(form: PolyTensor) -> Result<Self> {
        let m = form.m();
        PolySection::new(PolyTensor::zero(m, Kind::Multivector), form)
    }

    pub fn m(&self) -> usize {
        self.vec.m()
    }

    pub fn vec(&self) -> &PolyTensor {
        &self.vec
    }

    pub fn form(&self) -> &PolyTensor {
        &self.form
    }

    pub fn is_zero(&self) -> bool {
        self.vec.is_zero() && self.form.is_zero()
    }

    pub(crate) fn check_m(&self, m: usize) -> Result<()> {
        if self.m() != m {
            return Err(Error::DimensionMismatch {
                left: m,
                right: self.m(),
            });
        }
        Ok(())
    }

    pub fn mul_poly(&self, f: &Poly) -> Self {
        PolySection {
            vec: self.vec.mul_poly(f),
            form: self.form.mul_poly(f),
        }
    }

    pub fn pretty(&self) -> String {
        match (self.vec.is_zero(), self.form.is_zero()) {
            (true, true) => "0".into(),
            (false, true) => self.vec.pretty(),
            (true, false) => self.form.pretty(),
            (false, false) => format!("{} + {}", self.vec.pretty(), self.form.pretty()),
        }
    }

    /// `(x+ξ | y+η) = <ξ,y> + <η,x>`.
    pub fn pairing(&self, other: &Self) -> Poly {
        let a = contract_unchecked(&other.vec, &self.form).coeff(0);
        let b = contract_unchecked(&self.vec, &other.form).coeff(0);
        &a + &b
    }

    /// `ρ(x+ξ) f = x(f)`.
    pub fn anchor_on(&self, f: &Poly) -> Poly {
        schouten_unchecked(
            &self.vec,
            &PolyTensor::function(Kind::Multivector, f.clone()),
        )
        .coeff(0)
    }
}

impl fmt::Debug for PolySection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolySection({})", self.pretty())
    }
}

impl fmt::Display for PolySection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}

impl Add for &PolySection {
    type Output = PolySection;
    fn add(self, rhs: &PolySection) -> PolySection {
        PolySection {
            vec: &self.vec + &rhs.vec,
            form: &self.form + &rhs.form,
        }
    }
}

impl Sub for &PolySection {
    type Output = PolySection;
    fn sub(self, rhs: &PolySection) -> PolySection {
        PolySection {
            vec: &self.vec - &rhs.vec,
            form: &self.form - &rhs.form,
        }
    }
}

impl From<PolySection> for Residual {
    fn from(s: PolySection) -> Self {
        Residual::rendered(s.is_zero(), s.pretty())
    }
}

impl From<Poly> for Residual {
    fn from(p: Poly) -> Self {
        Residual::rendered(p.is_zero(), p.pretty())
    }
}

fn check_background(psi: &PolyTensor) -> Result<()> {
    psi.expect_kind(Kind::Form, "background ψ")?;
    psi.expect_degree(3, "background 3-form ψ")
}

/// `[x+ξ, y+η] = [x,y] + L_x η − i_y dξ + i_{x∧y}ψ`.
pub fn courant_bg_bracket(
    a: &PolySection,
    b: &PolySection,
    psi: &PolyTensor,
) -> Result<PolySection> {
    check_background(psi)?;
    a.check_m(psi.m())?;
    b.check_m(psi.m())?;
    Ok(bracket_unchecked(a, b, psi))
}

fn bracket_unchecked(a: &PolySection, b: &PolySection, psi: &PolyTensor) -> PolySection {
    let (x, xi, y, eta) = (&a.vec, &a.form, &b.vec, &b.form);
    let vec = schouten_unchecked(x, y);
    let lie = &contract_unchecked(x, &de_rham_unchecked(eta))
        + &de_rham_unchecked(&contract_unchecked(x, eta));
    let form = &(&lie - &contract_unchecked(y, &de_rham_unchecked(xi)))
        + &contract_unchecked(&x.wedge_unchecked(y), psi);
    PolySection { vec, form }
}

/// `x^a ∂_i` and `x^a dx_i` for every coefficient monomial of degree at most `max_degree`.
pub fn default_trial_sections(m: usize, max_degree: usize) -> Vec<PolySection> {
    let monos = monomials_up_to(m, max_degree);
    let mut out = Vec::new();
    for kind in [Kind::Multivector, Kind::Form] {
        for i in 0..m {
            for e in &monos {
                let t =
                    PolyTensor::from_terms(m, kind, [(1 << i, Poly::monomial(e.clone(), int(1)))]);
                out.push(
                    match kind {
                        Kind::Multivector => PolySection::from_vector(t),
                        Kind::Form => PolySection::from_form(t),
                    }
                    .expect("degree-1 generator"),
                );
            }
        }
    }
    out
}

/// `x_1` and `x_1 x_m + 2`.
pub fn default_trial_functions(m: usize) -> Vec<Poly> {
    let x1 = Poly::var(m, 0);
    let g = &(&x1 * &Poly::var(m, m - 1)) + &Poly::constant(m, int(2));
    vec![x1, g]
}

struct Row {
    jacobi: Vec<(PolySection, String)>,
    prop_i: Vec<(Poly, String)>,
    prop_ii: Vec<(Poly, String)>,
    leibniz: Vec<(PolySection, String)>,
    anchor: (PolyTensor, String),
}

/// Courant axioms (i), (ii), Loday Jacobi, Leibniz and the anchor morphism
/// for the bracket with background ψ, exhaustively over the trial sections.
pub fn courant_axiom_check_poly(
    psi: &PolyTensor,
    trials: &[PolySection],
    functions: &[Poly],
) -> Result<AxiomReport> {
    check_background(psi)?;
    if trials.is_empty() {
        return Err(Error::Input("empty trial set".into()));
    }
    let m = psi.m();
    for t in trials {
        t.check_m(m)?;
    }
    for f in functions {
        if f.m() != m {
            return Err(Error::DimensionMismatch {
                left: m,
                right: f.m(),
            });
        }
    }
    let k = trials.len();
    let names: Vec<String> = trials.iter().map(PolySection::pretty).collect();
    let br = |a: &PolySection, b: &PolySection| bracket_unchecked(a, b, psi);
    let brackets: Vec<Vec<PolySection>> = (0..k)
        .into_par_iter()
        .map(|a| (0..k).map(|b| br(&trials[a], &trials[b])).collect())
        .collect();

    let rows: Vec<Vec<Row>> = (0..k)
        .into_par_iter()
        .map(|a| {
            let x = &trials[a];
            (0..k)
                .map(|b| {
                    let u = &trials[b];
                    let xu = &brackets[a][b];
                    let mut row = Row {
                        jacobi: Vec::new(),
                        prop_i: Vec::new(),
                        prop_ii: Vec::new(),
                        leibniz: Vec::new(),
                        anchor: (PolyTensor::zero(m, Kind::Multivector), String::new()),
                    };
                    for f in functions {
                        let lhs = br(x, &u.mul_poly(f));
                        let r = &(&lhs - &xu.mul_poly(f)) - &u.mul_poly(&x.anchor_on(f));
                        row.leibniz
                            .push((r, format!("x={}, y={}, f={f}", names[a], names[b])));
                    }
                    let r = &xu.vec - &schouten_unchecked(&x.vec, &u.vec);
                    row.anchor = (r, format!("x={}, y={}", names[a], names[b]));
                    for (c, v) in trials.iter().enumerate() {
                        let w = format!("{}, {}, {}", names[a], names[b], names[c]);
                        let r = &(&br(x, &brackets[b][c]) - &br(xu, v)) - &br(u, &brackets[a][c]);
                        row.jacobi.push((r, w.clone()));
                        let sym = &brackets[b][c] + &brackets[c][b];
                        let r = &x.pairing(&sym) - &x.anchor_on(&u.pairing(v));
                        row.prop_i.push((r, w.clone()));
                        let r = &(&xu.pairing(v) + &u.pairing(&brackets[a][c]))
                            - &x.anchor_on(&u.pairing(v));
                        row.prop_ii.push((r, w));
                    }
                    row
                })
                .collect()
        })
        .collect();

    let zero_sec = PolySection::zero(m);
    let zero_fn = Poly::zero(m);
    let mut jacobi = Sweep::new("Loday Jacobi", zero_sec.clone());
    let mut prop_i = Sweep::new("(i)", zero_fn.clone());
    let mut prop_ii = Sweep::new("(ii)", zero_fn.clone());
    let mut leibniz = Sweep::new("Leibniz (iii)", zero_sec.clone());
    let mut anchor = Sweep::new(
        "anchor morphism (iv)",
        PolyTensor::zero(m, Kind::Multivector),
    );
    for row in rows.into_iter().flatten() {
        for (r, w) in row.jacobi {
            jacobi.record(r, || w);
        }
        for (r, w) in row.prop_i {
            prop_i.record(r, || w);
        }
        for (r, w) in row.prop_ii {
            prop_ii.record(r, || w);
        }
        for (r, w) in row.leibniz {
            leibniz.record(r, || w);
        }
        let (r, w) = row.anchor;
        anchor.record(r, || w);
    }

    let mut ys: Vec<(PolySection, String)> =
        trials.iter().cloned().zip(names.iter().cloned()).collect();
    for a in 0..k {
        for b in a + 1..k {
            ys.push((
                &trials[a] + &trials[b],
                format!("{} + {}", names[a], names[b]),
            ));
        }
    }
    let half: Scalar = ratio(1, 2);
    let quad: Vec<Vec<(Poly, Poly, String)>> = trials
        .par_iter()
        .enumerate()
        .map(|(a, x)| {
            ys.iter()
                .map(|(y, yname)| {
                    let yy = br(y, y);
                    let r1 = &x.pairing(&yy) - &x.anchor_on(&y.pairing(y)).scale(&half);
                    let r2 = &x.pairing(&yy) - &br(x, y).pairing(y);
                    (r1, r2, format!("x={}, y={yname}", names[a]))
                })
                .collect()
        })
        .collect();
    let mut prop_i1 = Sweep::new("(i')", zero_fn.clone());
    let mut prop_i2 = Sweep::new("(i'')", zero_fn);
    for (r1, r2, w) in quad.into_iter().flatten() {
        prop_i1.record(r1, || w.clone());
        prop_i2.record(r2, || w);
    }

    let mut report = AxiomReport::default();
    report.push(Check::new("closed background", de_rham_unchecked(psi)));
    let (v_i, v_i1, v_i2, v_ii) = (
        !prop_i.failed(),
        !prop_i1.failed(),
        !prop_i2.failed(),
        !prop_ii.failed(),
    );
    report.push(jacobi.finish());
    report.push(prop_i.finish());
    report.push(prop_i1.finish());
    report.push(prop_i2.finish());
    report.push(prop_ii.finish());
    report.push(leibniz.finish());
    report.push(anchor.finish());
    report.equivalences.push(Equivalence {
        name: "(i) <=> (i')".into(),
        holds: v_i == v_i1,
    });
    report.equivalences.push(Equivalence {
        name: "(i) and (ii) <=> (i'') and (ii)".into(),
        holds: (v_i && v_ii) == (v_i2 && v_ii),
    });
    Ok(report)
}
