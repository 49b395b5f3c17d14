use num_traits::Zero;

use super::{bracket_tensor, trivector_from_constants, ProtoStructure, MU};
use crate::error::{Error, Result};
use crate::graded::GradedElement;
use crate::linalg;
use crate::scalar::{ratio, render, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BilinearFormSpec {
    /// Symmetric matrix `K_ij = K(e_i, e_j)` on `F`.
    Matrix(Vec<Vec<Scalar>>),
    /// `(x+ξ | y+η) = <ξ,y> + <η,x>` on `F ⊕ F*`.
    CanonicalPairing,
}

impl BilinearFormSpec {
    pub fn matrix(k: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = k.len();
        if k.iter().any(|r| r.len() != n) {
            return Err(Error::Input("bilinear form must be square".into()));
        }
        for i in 0..n {
            for j in 0..i {
                if k[i][j] != k[j][i] {
                    return Err(Error::Input("bilinear form must be symmetric".into()));
                }
            }
        }
        Ok(BilinearFormSpec::Matrix(k))
    }

    pub fn identity(n: usize) -> Self {
        let k = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            Scalar::from_integer(1.into())
                        } else {
                            Scalar::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        BilinearFormSpec::Matrix(k)
    }

    fn as_matrix(&self) -> Result<&Vec<Vec<Scalar>>> {
        match self {
            BilinearFormSpec::Matrix(k) => Ok(k),
            BilinearFormSpec::CanonicalPairing => Err(Error::Input(
                "a bilinear form on F is required, not the pairing of the double".into(),
            )),
        }
    }
}

/// The Cartan trivector `φ(x,y,z) = K([x,y],z)` raised to `Λ³F` with `K⁻¹`.
/// The coefficient of `e_p∧e_q∧e_r` (`p<q<r`) is the value on `(ε_p, ε_q, ε_r)`.
pub fn cartan_trivector(mu: &GradedElement, k: &BilinearFormSpec) -> Result<GradedElement> {
    let n = mu.dim();
    let km = k.as_matrix()?;
    if km.len() != n {
        return Err(Error::DimensionMismatch {
            left: km.len(),
            right: n,
        });
    }
    if !mu.has_bidegree(MU) {
        return Err(Error::Bidegree {
            what: "mu",
            expected: MU,
            found: mu.bidegree().unwrap_or((0, 0)),
        });
    }
    if !mu.pb(mu).is_zero() {
        return Err(Error::Input(
            "bracket does not satisfy the Jacobi identity".into(),
        ));
    }
    let c = bracket_tensor(mu)?;
    let kinv = linalg::inverse(km).ok_or(Error::DegenerateForm)?;

    // lowered[a][b][c] = K([e_a, e_b], e_c)
    let mut lowered = vec![vec![vec![Scalar::zero(); n]; n]; n];
    for a in 0..n {
        for b in 0..n {
            for m in 0..n {
                if c[a][b][m].is_zero() {
                    continue;
                }
                for d in 0..n {
                    lowered[a][b][d] += &c[a][b][m] * &km[m][d];
                }
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                // K([x,y],z) + K(y,[x,z])
                let r = &lowered[x][y][z] + &lowered[x][z][y];
                if !r.is_zero() {
                    return Err(Error::NotInvariant(format!(
                        "K([e{},e{}],e{}) + K(e{},[e{},e{}]) = {}",
                        x + 1,
                        y + 1,
                        z + 1,
                        y + 1,
                        x + 1,
                        z + 1,
                        render(&r)
                    )));
                }
            }
        }
    }

    let raise = |t: &Vec<Vec<Vec<Scalar>>>, slot: usize| {
        let mut out = vec![vec![vec![Scalar::zero(); n]; n]; n];
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    let mut s = Scalar::zero();
                    for a in 0..n {
                        let (v, kk) = match slot {
                            0 => (&t[a][j][l], &kinv[i][a]),
                            1 => (&t[i][a][l], &kinv[j][a]),
                            _ => (&t[i][j][a], &kinv[l][a]),
                        };
                        if !v.is_zero() && !kk.is_zero() {
                            s += v * kk;
                        }
                    }
                    out[i][j][l] = s;
                }
            }
        }
        out
    };
    let raised = raise(&raise(&raise(&lowered, 0), 1), 2);

    let mut entries = Vec::new();
    for p in 0..n {
        for q in p + 1..n {
            for r in q + 1..n {
                if !raised[p][q][r].is_zero() {
                    entries.push((p, q, r, raised[p][q][r].clone()));
                }
            }
        }
    }
    trivector_from_constants(mu.basis(), &entries)
}

/// `½[π,π]_μ − φ` with the point-case Schouten bracket `[u,v]_μ = {{u,μ},v}`.
pub fn quasi_poisson_residual(
    mu: &GradedElement,
    pi: &GradedElement,
    phi: &GradedElement,
) -> Result<GradedElement> {
    let s = super::schouten_point(mu, pi, pi)?;
    phi.check_basis(mu)?;
    Ok(&s.scale(&ratio(1, 2)) - phi)
}

/// The Lie quasi-bialgebra of the Manin pair `(g ⊕ g, g_diag)`: `(μ, 0, φ_K, 0)`.
pub fn manin_pair_gg(mu: &GradedElement, k: &BilinearFormSpec) -> Result<ProtoStructure> {
    let phi = cartan_trivector(mu, k)?;
    let z = GradedElement::zero(mu.basis());
    ProtoStructure::new(mu.clone(), z.clone(), phi, z)
}
