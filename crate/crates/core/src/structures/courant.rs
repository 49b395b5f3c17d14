use num_traits::Zero;

use super::canonical_pairing;
use super::{
    double_bracket, five_conditions, master_residual, DoubleSection, ProtoStructure,
    FIVE_CONDITION_NAMES,
};
use crate::error::{Error, Result};
use crate::graded::GradedElement;
use crate::linalg;
use crate::report::{AxiomReport, Check, Equivalence, Sweep};
use crate::scalar::{int, ratio, Scalar};

/// Anchor of a section over a point: the tangent space is zero.
fn anchor(s: &DoubleSection) -> GradedElement {
    GradedElement::zero(s.basis())
}

/// `ρ(a)` applied to a function on a point, always zero.
fn anchor_on(_a: &DoubleSection, _f: &Scalar) -> Scalar {
    Scalar::zero()
}

struct Trials<'a> {
    s: &'a ProtoStructure,
    secs: Vec<DoubleSection>,
    names: Vec<String>,
}

impl Trials<'_> {
    fn br(&self, a: &DoubleSection, b: &DoubleSection) -> DoubleSection {
        double_bracket(self.s, a, b).expect("shared basis")
    }

    fn pair(a: &DoubleSection, b: &DoubleSection) -> Scalar {
        canonical_pairing(a, b).expect("shared basis")
    }
}

/// Courant and Loday axioms on the double of `s`, evaluated exhaustively on
/// the trial sections (and their pairwise sums for the quadratic forms (i'), (i'')).
pub fn courant_axioms_check(s: &ProtoStructure, trials: &[DoubleSection]) -> Result<AxiomReport> {
    let n = s.dim();
    for t in trials {
        s.check_basis(t.vector())?;
    }
    let coords: Vec<Vec<Scalar>> = trials.iter().map(DoubleSection::coords).collect();
    if trials.is_empty() || linalg::rank(&coords) < 2 * n {
        return Err(Error::Input("trial sections do not span the double".into()));
    }
    let t = Trials {
        s,
        secs: trials.to_vec(),
        names: trials.iter().map(DoubleSection::pretty).collect(),
    };
    let zero_sec = DoubleSection::zero(s.basis());
    let k = t.secs.len();

    let mut report = AxiomReport::default();
    report.push(Check::new("master equation", master_residual(s)));
    for (name, r) in FIVE_CONDITION_NAMES.iter().zip(five_conditions(s)) {
        report.push(Check::new(*name, r));
    }

    let brackets: Vec<Vec<DoubleSection>> = (0..k)
        .map(|a| (0..k).map(|b| t.br(&t.secs[a], &t.secs[b])).collect())
        .collect();

    let mut jacobi = Sweep::new("Loday Jacobi", zero_sec.clone());
    let mut prop_i = Sweep::new("(i)", int(0));
    let mut prop_ii = Sweep::new("(ii)", int(0));
    let mut leibniz = Sweep::new("Leibniz (iii)", zero_sec.clone());
    let mut anchor_morphism = Sweep::new("anchor morphism (iv)", GradedElement::zero(s.basis()));
    let functions = [int(2), ratio(-1, 3)];

    for a in 0..k {
        let x = &t.secs[a];
        for b in 0..k {
            let u = &t.secs[b];
            let xu = &brackets[a][b];
            for f in &functions {
                let lhs = t.br(x, &u.scale(f));
                let mut r = &lhs - &xu.scale(f);
                r = &r - &u.scale(&anchor_on(x, f));
                leibniz.record(r, || format!("x={}, y={}, f={}", t.names[a], t.names[b], f));
            }
            let r = &anchor(xu) - &(&anchor(x).pb(&anchor(u)) - &anchor(u).pb(&anchor(x)));
            anchor_morphism.record(r, || format!("x={}, y={}", t.names[a], t.names[b]));
            for c in 0..k {
                let v = &t.secs[c];
                let witness = || format!("{}, {}, {}", t.names[a], t.names[b], t.names[c]);
                // [x,[u,v]] − [[x,u],v] − [u,[x,v]]
                let r = &(&t.br(x, &brackets[b][c]) - &t.br(xu, v)) - &t.br(u, &brackets[a][c]);
                jacobi.record(r, witness);
                let sym = &brackets[b][c] + &brackets[c][b];
                let r = Trials::pair(x, &sym) - anchor_on(x, &Trials::pair(u, v));
                prop_i.record(r, witness);
                let r = Trials::pair(xu, v) + Trials::pair(u, &brackets[a][c])
                    - anchor_on(x, &Trials::pair(u, v));
                prop_ii.record(r, witness);
            }
        }
    }

    let mut ys: Vec<(DoubleSection, String)> = t
        .secs
        .iter()
        .cloned()
        .zip(t.names.iter().cloned())
        .collect();
    for a in 0..k {
        for b in a + 1..k {
            ys.push((
                &t.secs[a] + &t.secs[b],
                format!("{} + {}", t.names[a], t.names[b]),
            ));
        }
    }
    let mut prop_i1 = Sweep::new("(i')", int(0));
    let mut prop_i2 = Sweep::new("(i'')", int(0));
    let half = ratio(1, 2);
    for (a, x) in t.secs.iter().enumerate() {
        for (y, yname) in &ys {
            let yy = t.br(y, y);
            let witness = || format!("x={}, y={}", t.names[a], yname);
            let r = Trials::pair(x, &yy) - &half * anchor_on(x, &Trials::pair(y, y));
            prop_i1.record(r, witness);
            let r = Trials::pair(x, &yy) - Trials::pair(&t.br(x, y), y);
            prop_i2.record(r, witness);
        }
    }

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
    report.push(anchor_morphism.finish());
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

/// [`courant_axioms_check`] on the standard basis `e_i, ε_i` of the double.
pub fn courant_axioms_check_basis(s: &ProtoStructure) -> AxiomReport {
    courant_axioms_check(s, &DoubleSection::standard_sections(s.basis()))
        .expect("standard sections span")
}
