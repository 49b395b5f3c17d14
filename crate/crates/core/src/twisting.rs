//! Twisting by a bivector `π`, the `π♯ψ` family and the integrability
//! conditions (CYBE, Poisson, Maurer-Cartan and their background variants).

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graded::GradedElement;
use crate::report::Check;
use crate::scalar::{ratio, Scalar};
use crate::structures::{schouten_point, ProtoStructure, GAMMA, MU, PHI, PSI};

pub const BIVECTOR: (usize, usize) = (2, 0);

fn expect(what: &'static str, e: &GradedElement, bideg: (usize, usize)) -> Result<()> {
    if e.has_bidegree(bideg) {
        Ok(())
    } else {
        Err(Error::Bidegree {
            what,
            expected: bideg,
            found: e
                .terms()
                .map(|(m, _)| e.monomial_bidegree(m))
                .find(|b| *b != bideg)
                .unwrap_or(bideg),
        })
    }
}

/// `γ_{μ,π} = {π, μ}`.
pub fn gamma_mu_pi(mu: &GradedElement, pi: &GradedElement) -> Result<GradedElement> {
    mu.check_basis(pi)?;
    expect("mu", mu, MU)?;
    expect("pi", pi, BIVECTOR)?;
    Ok(pi.pb(mu))
}

/// `π♯ξ = i_ξ π` for a covector `ξ`.
pub fn pi_sharp(pi: &GradedElement, xi: &GradedElement) -> Result<GradedElement> {
    pi.check_basis(xi)?;
    expect("pi", pi, BIVECTOR)?;
    expect("covector", xi, (0, 1))?;
    Ok(xi.pb(pi))
}

/// The Koszul-type bracket over a point,
/// `L^μ_{π♯ξ}η − L^μ_{π♯η}ξ − d_μ(π(ξ,η))`; the last term vanishes on constants.
pub fn koszul_point(
    mu: &GradedElement,
    pi: &GradedElement,
    xi: &GradedElement,
    eta: &GradedElement,
) -> Result<GradedElement> {
    let lie = |x: &GradedElement, w: &GradedElement| &x.pb(&mu.pb(w)) + &mu.pb(&x.pb(w));
    let a = pi_sharp(pi, xi)?;
    let b = pi_sharp(pi, eta)?;
    // π(ξ,η) = <η, π♯ξ> is a scalar; d_μ of a scalar is {μ, c} = 0
    let pairing = eta.pb(&a);
    Ok(&(&lie(&a, eta) - &lie(&b, xi)) - &mu.pb(&pairing))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiSharpFamily {
    /// `π♯ψ = {π, ψ}`, bidegree (1,2).
    pub first: GradedElement,
    /// `∧²π♯ψ = ½{π,{π,ψ}}`, bidegree (2,1).
    pub second: GradedElement,
    /// `∧³π♯ψ = (1/6){π,{π,{π,ψ}}}`, bidegree (3,0).
    pub third: GradedElement,
}

pub fn pi_sharp_family(pi: &GradedElement, psi: &GradedElement) -> Result<PiSharpFamily> {
    pi.check_basis(psi)?;
    expect("pi", pi, BIVECTOR)?;
    expect("psi", psi, PSI)?;
    let one = pi.pb(psi);
    let two = pi.pb(&one);
    let three = pi.pb(&two);
    Ok(PiSharpFamily {
        first: one,
        second: two.scale(&ratio(1, 2)),
        third: three.scale(&ratio(1, 6)),
    })
}

/// Entrywise evaluation of the `π♯ψ` family from its tensor definitions
/// `(π♯ψ)(x,y)(ξ) = ψ(x,y,π♯ξ)`, `(∧²π♯ψ)(ξ,η)(x) = ψ(π♯ξ,π♯η,x)` and
/// `(∧³π♯ψ)(ξ,η,ζ) = ψ(π♯ξ,π♯η,π♯ζ)`, without using the big bracket.
///
/// Multilinear evaluation follows `ω(v_1,…,v_k) = i_{v_1∧…∧v_k} ω`. Under that
/// convention every mixed tensor `T` in the encodings of `structures` satisfies
/// `T(args) = −(coefficient)`.
pub fn pi_sharp_family_oracle(pi: &GradedElement, psi: &GradedElement) -> Result<PiSharpFamily> {
    pi.check_basis(psi)?;
    expect("pi", pi, BIVECTOR)?;
    expect("psi", psi, PSI)?;
    let n = pi.dim();
    let b = pi.basis();
    let zero = Scalar::zero;

    // π♯ε_a = Σ_b p[a][b] e_b with p antisymmetric
    let mut p = vec![vec![zero(); n]; n];
    for (m, c) in pi.terms() {
        let g: Vec<usize> = (0..n).filter(|i| m & (1 << i) != 0).collect();
        p[g[0]][g[1]] += c;
        p[g[1]][g[0]] -= c;
    }
    // ψ(e_a,e_b,e_c) = i_{e_a∧e_b∧e_c} ψ = −(coefficient) for a<b<c
    let mut w = vec![vec![vec![zero(); n]; n]; n];
    for (m, c) in psi.terms() {
        let g: Vec<usize> = (0..n).filter(|i| m & (1 << (n + i)) != 0).collect();
        let v = -c.clone();
        let (a, bb, cc) = (g[0], g[1], g[2]);
        for (x, y, z, s) in [
            (a, bb, cc, 1),
            (bb, cc, a, 1),
            (cc, a, bb, 1),
            (bb, a, cc, -1),
            (a, cc, bb, -1),
            (cc, bb, a, -1),
        ] {
            w[x][y][z] = if s == 1 { v.clone() } else { -v.clone() };
        }
    }
    // contract slot `slot` of a 3-tensor with π♯
    let sharp = |t: &Vec<Vec<Vec<Scalar>>>, slot: usize| {
        let mut out = vec![vec![vec![zero(); n]; n]; n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let mut s = zero();
                    for q in 0..n {
                        let (pv, tv) = match slot {
                            0 => (&p[i][q], &t[q][j][k]),
                            1 => (&p[j][q], &t[i][q][k]),
                            _ => (&p[k][q], &t[i][j][q]),
                        };
                        if !pv.is_zero() && !tv.is_zero() {
                            s += pv * tv;
                        }
                    }
                    out[i][j][k] = s;
                }
            }
        }
        out
    };
    // one[i][j][k] = ψ(e_i, e_j, π♯ε_k)
    let one = sharp(&w, 2);
    // two[i][j][k] = ψ(π♯ε_i, π♯ε_j, e_k)
    let two = sharp(&sharp(&w, 0), 1);
    let three = sharp(&two, 2);

    let enc = |mask: u32, v: &Scalar| (mask, -v.clone());
    let first = GradedElement::from_terms(
        b,
        pairs(n).flat_map(|(i, j)| {
            let one = &one;
            (0..n).map(move |k| enc((1 << k) | (1 << (n + i)) | (1 << (n + j)), &one[i][j][k]))
        }),
    );
    let second = GradedElement::from_terms(
        b,
        pairs(n).flat_map(|(i, j)| {
            let two = &two;
            (0..n).map(move |k| enc((1 << i) | (1 << j) | (1 << (n + k)), &two[i][j][k]))
        }),
    );
    let third = GradedElement::from_terms(
        b,
        triples(n).map(|(i, j, k)| enc((1 << i) | (1 << j) | (1 << k), &three[i][j][k])),
    );
    Ok(PiSharpFamily {
        first,
        second,
        third,
    })
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
}

fn triples(n: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..n).flat_map(move |i| (i + 1..n).flat_map(move |j| (j + 1..n).map(move |k| (i, j, k))))
}

/// Twisted structure `(μ + π♯ψ, γ + γ_{μ,π} + ∧²π♯ψ, φ − d_γπ − ½[π,π]_μ + ∧³π♯ψ, ψ)`
/// with `d_γπ = {γ, π}`.
pub fn twist(s: &ProtoStructure, pi: &GradedElement) -> Result<ProtoStructure> {
    s.check_basis(pi)?;
    expect("pi", pi, BIVECTOR)?;
    let fam = pi_sharp_family(pi, s.psi())?;
    let half = ratio(1, 2);
    let mu = s.mu() + &fam.first;
    let gamma = &(s.gamma() + &gamma_mu_pi(s.mu(), pi)?) + &fam.second;
    let d_gamma_pi = s.gamma().pb(pi);
    let bracket = schouten_point(s.mu(), pi, pi)?;
    let phi = &(&(s.phi() - &d_gamma_pi) - &bracket.scale(&half)) + &fam.third;
    ProtoStructure::new(mu, gamma, phi, s.psi().clone())
}

/// `Θ + {π,Θ} + ½{π,{π,Θ}} + (1/6){π,{π,{π,Θ}}}`, split by bidegree.
pub fn twist_exp(s: &ProtoStructure, pi: &GradedElement) -> Result<ProtoStructure> {
    s.check_basis(pi)?;
    expect("pi", pi, BIVECTOR)?;
    let theta = s.theta();
    let t1 = pi.pb(&theta);
    let t2 = pi.pb(&t1);
    let t3 = pi.pb(&t2);
    debug_assert!(pi.pb(&t3).is_zero());
    let mut out = theta;
    out += &t1;
    out += &t2.scale(&ratio(1, 2));
    out += &t3.scale(&ratio(1, 6));
    ProtoStructure::from_theta(&out).or_else(|_| {
        // Θ' may vanish entirely
        ProtoStructure::new(
            out.component(MU),
            out.component(GAMMA),
            out.component(PHI),
            out.component(PSI),
        )
    })
}

/// Residuals of the integrability conditions for `π` relative to `S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionReport {
    /// `[π,π]_μ`
    pub cybe: GradedElement,
    /// `d_μ[π,π]_μ`
    pub generalized_cybe: GradedElement,
    /// `½[π,π]_μ`
    pub poisson: GradedElement,
    /// `d_μ([π,π]_μ)`
    pub generalized_poisson: GradedElement,
    /// `d_γπ + ½[π,π]_μ`
    pub maurer_cartan: GradedElement,
    /// `d_γπ + ½[π,π]_μ − φ`
    pub quasi_maurer_cartan: GradedElement,
    /// `d_γπ + ½[π,π]_μ − ∧³π♯ψ`
    pub psi_maurer_cartan: GradedElement,
    /// `½[π,π]_μ − ∧³π♯ψ`
    pub psi_poisson: GradedElement,
    /// `d_μ(d_γπ + ½[π,π]_μ)`
    pub weak_maurer_cartan: GradedElement,
    /// `d_μ φ'_π`
    pub weak_quasi_maurer_cartan: GradedElement,
}

pub const CONDITION_NAMES: [&str; 10] = [
    "classical Yang-Baxter",
    "generalized classical Yang-Baxter",
    "Poisson",
    "generalized Poisson",
    "Maurer-Cartan",
    "quasi-Maurer-Cartan",
    "psi-Maurer-Cartan",
    "psi-Poisson",
    "weak Maurer-Cartan",
    "weak quasi-Maurer-Cartan",
];

impl ConditionReport {
    pub fn residuals(&self) -> [&GradedElement; 10] {
        [
            &self.cybe,
            &self.generalized_cybe,
            &self.poisson,
            &self.generalized_poisson,
            &self.maurer_cartan,
            &self.quasi_maurer_cartan,
            &self.psi_maurer_cartan,
            &self.psi_poisson,
            &self.weak_maurer_cartan,
            &self.weak_quasi_maurer_cartan,
        ]
    }

    pub fn checks(&self) -> Vec<Check> {
        CONDITION_NAMES
            .iter()
            .zip(self.residuals())
            .map(|(name, r)| Check::new(*name, r.clone()))
            .collect()
    }
}

pub fn condition_residuals(s: &ProtoStructure, pi: &GradedElement) -> Result<ConditionReport> {
    s.check_basis(pi)?;
    expect("pi", pi, BIVECTOR)?;
    let half = ratio(1, 2);
    let mu = s.mu();
    let bracket = schouten_point(mu, pi, pi)?;
    let half_bracket = bracket.scale(&half);
    let d_gamma_pi = s.gamma().pb(pi);
    let wedge3 = pi_sharp_family(pi, s.psi())?.third;
    let mc = &d_gamma_pi + &half_bracket;
    let phi_prime = twist(s, pi)?.phi().clone();
    Ok(ConditionReport {
        generalized_cybe: mu.pb(&bracket),
        generalized_poisson: mu.pb(&bracket),
        cybe: bracket,
        poisson: half_bracket.clone(),
        quasi_maurer_cartan: &mc - s.phi(),
        psi_maurer_cartan: &mc - &wedge3,
        psi_poisson: &half_bracket - &wedge3,
        weak_maurer_cartan: mu.pb(&mc),
        weak_quasi_maurer_cartan: mu.pb(&phi_prime),
        maurer_cartan: mc,
    })
}

/// `−(d_μ r)(ξ, η)` for the Chevalley-Eilenberg coboundary of `r ∈ Λ²F`,
/// computed from the structure constants: the value on `e_k` is
/// `−(ad_{e_k} r)(ξ, η)` with bivectors evaluated as `B(ξ, η) = i_{ξ∧η} B = −<η, B♯ξ>`.
pub fn r_matrix_cobracket_oracle(
    mu: &GradedElement,
    r: &GradedElement,
    xi: &GradedElement,
    eta: &GradedElement,
) -> Result<GradedElement> {
    let n = mu.dim();
    let c = crate::structures::bracket_tensor(mu)?;
    expect("r", r, BIVECTOR)?;
    let mut rm = vec![vec![Scalar::zero(); n]; n];
    for (m, v) in r.terms() {
        let g: Vec<usize> = (0..n).filter(|i| m & (1 << i) != 0).collect();
        rm[g[0]][g[1]] += v;
        rm[g[1]][g[0]] -= v;
    }
    let xs: Vec<Scalar> = (0..n).map(|i| xi.coeff(1 << (n + i))).collect();
    let es: Vec<Scalar> = (0..n).map(|i| eta.coeff(1 << (n + i))).collect();
    // B = ad_{e_k} r has matrix B[a][b] = Σ_q C[k][q][a] r[q][b] + r[a][q] C[k][q][b];
    // B♯ξ = Σ_a ξ_a B[a][·], so −B(ξ, η) = <η, B♯ξ> = Σ ξ_a B[a][b] η_b
    let mut out = GradedElement::zero(mu.basis());
    for k in 0..n {
        let mut val = Scalar::zero();
        for a in 0..n {
            for bb in 0..n {
                let mut entry = Scalar::zero();
                for q in 0..n {
                    entry += &c[k][q][a] * &rm[q][bb];
                    entry += &rm[a][q] * &c[k][q][bb];
                }
                val += &xs[a] * &entry * &es[bb];
            }
        }
        out += &GradedElement::monomial(mu.basis(), &[n + k], val);
    }
    Ok(out)
}
