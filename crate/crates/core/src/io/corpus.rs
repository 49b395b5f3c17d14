use crate::basis::BasisSpec;
use crate::poly::{Kind, Poly, PolyTensor};
use crate::scalar::int;
use crate::structures::{manin_pair_gg, BilinearFormSpec, ProtoStructure};
use crate::twisting::twist;

use super::files::{Entry3, PolyTensorFile, StructureFile};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CorpusData {
    Structure(StructureFile),
    Tensor(PolyTensorFile),
    /// A bivector with a background 3-form.
    TensorPair {
        pi: PolyTensorFile,
        psi: PolyTensorFile,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusItem {
    pub name: String,
    pub description: &'static str,
    pub data: CorpusData,
}

pub const STRUCTURE_NAMES: [&str; 9] = [
    "abelian3",
    "so3",
    "sl2",
    "heisenberg3",
    "affine2",
    "affine2_coboundary",
    "so3_quasi",
    "so3_background",
    "sl2_twisted",
];

pub const POLY_NAMES: [&str; 8] = [
    "so3_lie_poisson",
    "r2_symplectic",
    "r2_linear",
    "r4_twisted_pair",
    "r3_pi",
    "r3_psi",
    "r3_volume",
    "r4_nonclosed",
];

/// Poisson bivectors used for the triangular deriving-operator checks.
pub const TRIANGULAR_NAMES: [&str; 3] = ["r2_symplectic", "so3_lie_poisson", "r2_linear"];

fn e(i: usize, j: usize, k: usize, c: i64) -> Entry3 {
    Entry3 {
        i,
        j,
        k,
        c: c.to_string(),
    }
}

fn names(list: &[&str]) -> Option<Vec<String>> {
    Some(list.iter().map(|s| s.to_string()).collect())
}

fn lie(dim: usize, basis_names: Option<Vec<String>>, mu: Vec<Entry3>) -> StructureFile {
    StructureFile {
        dim,
        basis_names,
        mu,
        gamma: vec![],
        phi: vec![],
        psi: vec![],
    }
}

/// The zero structure on an `n`-dimensional space.
pub fn abelian(n: usize) -> StructureFile {
    lie(n, None, vec![])
}

fn so3() -> StructureFile {
    lie(3, None, vec![e(1, 2, 3, 1), e(2, 3, 1, 1), e(1, 3, 2, -1)])
}

fn sl2() -> StructureFile {
    lie(
        3,
        names(&["h", "e", "f"]),
        vec![e(1, 2, 2, 2), e(1, 3, 3, -2), e(2, 3, 1, 1)],
    )
}

fn twisted(base: &StructureFile, pi: &str) -> StructureFile {
    let s = base.to_structure().expect("corpus base");
    let pi = super::parse_element(s.basis(), pi).expect("corpus bivector");
    StructureFile::from_structure(&twist(&s, &pi).expect("bivector"))
}

fn structure(name: &str) -> Option<StructureFile> {
    Some(match name {
        "so3" => so3(),
        "sl2" => sl2(),
        "heisenberg3" => lie(3, names(&["x", "y", "z"]), vec![e(1, 2, 3, 1)]),
        "affine2" => lie(2, names(&["a", "b"]), vec![e(1, 2, 2, 1)]),
        "affine2_coboundary" => twisted(&structure("affine2")?, "a^b"),
        "so3_quasi" => {
            let s = so3().to_structure().expect("so3");
            StructureFile::from_structure(
                &manin_pair_gg(s.mu(), &BilinearFormSpec::identity(3)).expect("quadratic"),
            )
        }
        "so3_background" => StructureFile {
            psi: vec![e(1, 2, 3, 1)],
            ..so3()
        },
        "sl2_twisted" => twisted(&sl2(), "e^f"),
        _ => {
            let n = name
                .strip_prefix("abelian(")
                .and_then(|r| r.strip_suffix(')'))
                .or_else(|| name.strip_prefix("abelian"))?;
            let n: usize = n.parse().ok()?;
            BasisSpec::standard(n).ok()?;
            abelian(n)
        }
    })
}

fn x(m: usize, i: usize) -> Poly {
    Poly::var(m, i - 1)
}

fn term(kind: Kind, idx: &[usize], f: Poly) -> PolyTensor {
    let idx: Vec<usize> = idx.iter().map(|i| i - 1).collect();
    PolyTensor::monomial(kind, &idx, f).expect("corpus tensor")
}

fn mv(idx: &[usize], f: Poly) -> PolyTensor {
    term(Kind::Multivector, idx, f)
}

fn form(idx: &[usize], f: Poly) -> PolyTensor {
    term(Kind::Form, idx, f)
}

fn c(m: usize, v: i64) -> Poly {
    Poly::constant(m, int(v))
}

/// Lie-Poisson bivector of so(3)*: `x3 ∂1∧∂2 + x1 ∂2∧∂3 + x2 ∂3∧∂1`.
pub fn so3_lie_poisson() -> PolyTensor {
    let m = 3;
    &(&mv(&[1, 2], x(m, 3)) + &mv(&[2, 3], x(m, 1))) - &mv(&[1, 3], x(m, 2))
}

/// `π = ∂1∧∂2 + ∂3∧∂4 + x1 ∂1∧∂3` with `ψ = dx1∧dx2∧dx4` on ℝ⁴: `[π,π] ≠ 0`,
/// `dψ = 0` and `½[π,π] = ∧³π♯ψ`.
pub fn r4_twisted_pair() -> (PolyTensor, PolyTensor) {
    let m = 4;
    let pi = &(&mv(&[1, 2], c(m, 1)) + &mv(&[3, 4], c(m, 1))) + &mv(&[1, 3], x(m, 1));
    (pi, form(&[1, 2, 4], c(m, 1)))
}

/// A non-Poisson bivector on ℝ³: `∂1∧∂2 + x2 ∂2∧∂3`.
pub fn r3_pi() -> PolyTensor {
    &mv(&[1, 2], c(3, 1)) + &mv(&[2, 3], x(3, 2))
}

/// `(x2 + 1) dx1∧dx2∧dx3`.
pub fn r3_psi() -> PolyTensor {
    form(&[1, 2, 3], &x(3, 2) + &c(3, 1))
}

fn poly(name: &str) -> Option<CorpusData> {
    let file = |t: &PolyTensor| PolyTensorFile::from_tensor(t);
    Some(match name {
        "so3_lie_poisson" => CorpusData::Tensor(file(&so3_lie_poisson())),
        "r4_twisted_pair" => {
            let (pi, psi) = r4_twisted_pair();
            CorpusData::TensorPair {
                pi: file(&pi),
                psi: file(&psi),
            }
        }
        "r2_symplectic" => CorpusData::Tensor(file(&mv(&[1, 2], c(2, 1)))),
        "r2_linear" => CorpusData::Tensor(file(&mv(&[1, 2], x(2, 1)))),
        "r3_pi" => CorpusData::Tensor(file(&r3_pi())),
        "r3_psi" => CorpusData::Tensor(file(&r3_psi())),
        "r3_volume" => CorpusData::Tensor(file(&form(&[1, 2, 3], c(3, 1)))),
        "r4_nonclosed" => CorpusData::Tensor(file(&form(&[2, 3, 4], x(4, 1)))),
        _ => return None,
    })
}

fn description(name: &str) -> &'static str {
    match name {
        "so3" => "so(3) with [e1,e2]=e3 cyclic",
        "sl2" => "sl(2) with [h,e]=2e, [h,f]=-2f, [e,f]=h",
        "heisenberg3" => "Heisenberg algebra [x,y]=z",
        "affine2" => "2-dim non-abelian algebra [a,b]=b",
        "affine2_coboundary" => "affine2 twisted by a^b (a triangular Lie bialgebra)",
        "so3_quasi" => "Lie quasi-bialgebra of the Manin pair (so3+so3, so3), K = identity",
        "so3_background" => "so(3) with psi = eps1^eps2^eps3",
        "sl2_twisted" => "sl(2) twisted by e^f",
        "so3_lie_poisson" => "Lie-Poisson bivector of so(3)* on R^3",
        "r4_twisted_pair" => "twisted Poisson pair on R^4",
        "r2_symplectic" => "d1^d2 on R^2",
        "r2_linear" => "x1 d1^d2 on R^2, nonzero modular field",
        "r3_pi" => "non-Poisson bivector on R^3",
        "r3_psi" => "closed 3-form on R^3",
        "r3_volume" => "dx1^dx2^dx3 on R^3",
        "r4_nonclosed" => "x1 dx2^dx3^dx4 on R^4, not closed",
        _ => "abelian Lie algebra, all tensors zero",
    }
}

/// A corpus entry by name. `abelian(n)` (or `abelianN`) works for any allowed `n`.
pub fn lookup(name: &str) -> Option<CorpusItem> {
    let data = match structure(name) {
        Some(f) => {
            let canonical = f
                .to_structure()
                .map(|s| StructureFile::from_structure(&s))
                .unwrap_or(f);
            CorpusData::Structure(canonical)
        }
        None => poly(name)?,
    };
    Some(CorpusItem {
        name: name.to_string(),
        description: description(name),
        data,
    })
}

/// Shorthand for the structures of the corpus.
pub fn lookup_structure(name: &str) -> Option<ProtoStructure> {
    match lookup(name)?.data {
        CorpusData::Structure(f) => f.to_structure().ok(),
        _ => None,
    }
}

/// Shorthand for polynomial corpus entries: `(π or tensor, optional ψ)`.
pub fn lookup_poly(name: &str) -> Option<(PolyTensor, Option<PolyTensor>)> {
    match lookup(name)?.data {
        CorpusData::Tensor(t) => Some((t.to_tensor().ok()?, None)),
        CorpusData::TensorPair { pi, psi } => {
            Some((pi.to_tensor().ok()?, Some(psi.to_tensor().ok()?)))
        }
        CorpusData::Structure(_) => None,
    }
}

/// Every named entry, structures first.
pub fn corpus() -> Vec<CorpusItem> {
    STRUCTURE_NAMES
        .iter()
        .chain(&POLY_NAMES)
        .map(|n| lookup(n).expect("listed entries exist"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::GradedElement;
    use crate::poly::{de_rham, psi_poisson_residual, schouten};
    use crate::structures::{classify, master_residual, Classification};

    #[test]
    fn structures_are_valid_and_classified() {
        let expected = [
            Classification::LieBialgebra,
            Classification::LieBialgebra,
            Classification::LieBialgebra,
            Classification::LieBialgebra,
            Classification::LieBialgebra,
            Classification::LieBialgebra,
            Classification::LieQuasiBialgebra,
            Classification::QuasiLieBialgebra,
            Classification::LieQuasiBialgebra,
        ];
        for (name, class) in STRUCTURE_NAMES.iter().zip(expected) {
            let s = lookup_structure(name).unwrap();
            assert!(master_residual(&s).is_zero(), "{name}");
            assert_eq!(classify(&s), class, "{name}");
            let f = StructureFile::from_structure(&s);
            assert_eq!(f.to_structure().unwrap(), s, "{name}");
        }
        let co = lookup_structure("affine2_coboundary").unwrap();
        assert!(!co.gamma().is_zero());
    }

    #[test]
    fn so3_entry_and_abelian() {
        let s = lookup_structure("so3").unwrap();
        let e1 = GradedElement::vector(s.basis(), 0);
        let e2 = GradedElement::vector(s.basis(), 1);
        let br = GradedElement::derived_bracket(&e1, s.mu(), &e2).unwrap();
        assert_eq!(br, GradedElement::vector(s.basis(), 2));
        let a = lookup_structure("abelian(3)").unwrap();
        assert_eq!(a, ProtoStructure::zero(a.basis()));
        assert_eq!(lookup_structure("abelian4").unwrap().dim(), 4);
        assert!(lookup("abelian(99)").is_none());
        assert!(lookup("nope").is_none());
    }

    #[test]
    fn so3_quasi_is_the_manin_pair() {
        let s = lookup_structure("so3_quasi").unwrap();
        assert!(s.gamma().is_zero() && s.psi().is_zero());
        assert_eq!(
            s.phi(),
            &GradedElement::monomial(s.basis(), &[0, 1, 2], int(1))
        );
    }

    #[test]
    fn poly_entries() {
        let (lp, none) = lookup_poly("so3_lie_poisson").unwrap();
        assert!(none.is_none());
        assert!(schouten(&lp, &lp).unwrap().is_zero());
        let (pi, psi) = lookup_poly("r4_twisted_pair").unwrap();
        let psi = psi.unwrap();
        assert!(!schouten(&pi, &pi).unwrap().is_zero());
        assert!(de_rham(&psi).unwrap().is_zero());
        assert!(psi_poisson_residual(&pi, &psi).unwrap().is_zero());
        let p = r3_pi();
        assert!(!schouten(&p, &p).unwrap().is_zero());
        assert!(de_rham(&r3_psi()).unwrap().is_zero());
        let (nc, _) = lookup_poly("r4_nonclosed").unwrap();
        assert!(!de_rham(&nc).unwrap().is_zero());
        for item in corpus() {
            if let CorpusData::Tensor(f) = &item.data {
                assert_eq!(PolyTensorFile::from_tensor(&f.to_tensor().unwrap()), *f);
            }
        }
    }
}
