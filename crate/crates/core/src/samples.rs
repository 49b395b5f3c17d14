//! Random structures for property tests and the acceptance suite.
//!
//! Valid proto-bialgebras are produced from known Lie algebras (and a few
//! quasi examples) by twisting with a random bivector, taking the dual and
//! rescaling, all of which preserve `{Θ,Θ} = 0`.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::basis::{Basis, BasisSpec};
use crate::graded::GradedElement;
use crate::io::{lookup_structure, StructureFile};
use crate::scalar::{int, ratio, Scalar};
use crate::structures::{master_residual, schouten_point, ProtoStructure};
use crate::twisting::twist;

/// A nonzero rational with small numerator and denominator.
pub fn random_scalar<R: Rng + ?Sized>(rng: &mut R) -> Scalar {
    let n = rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 };
    let d = if rng.gen_bool(0.2) { 2 } else { 1 };
    ratio(n, d)
}

fn random_mask<R: Rng + ?Sized>(rng: &mut R, n: usize, bideg: (usize, usize)) -> Option<u32> {
    if bideg.0 > n || bideg.1 > n {
        return None;
    }
    let mut pick = |k: usize, offset: usize| -> u32 {
        let mut idx: Vec<usize> = (0..n).collect();
        idx.shuffle(rng);
        idx[..k].iter().map(|i| 1u32 << (i + offset)).sum()
    };
    let x = pick(bideg.0, 0);
    Some(x | pick(bideg.1, n))
}

/// Up to `max_terms` random monomials of the given bidegree.
pub fn random_bidegree<R: Rng + ?Sized>(
    rng: &mut R,
    basis: &Basis,
    bideg: (usize, usize),
    max_terms: usize,
) -> GradedElement {
    let n = basis.dim();
    let k = rng.gen_range(1..=max_terms.max(1));
    let terms: Vec<(u32, Scalar)> = (0..k)
        .filter_map(|_| random_mask(rng, n, bideg).map(|m| (m, random_scalar(rng))))
        .collect();
    GradedElement::from_terms(basis, terms)
}

/// A random element of total degree `degree`, mixing bidegrees.
pub fn random_homogeneous<R: Rng + ?Sized>(
    rng: &mut R,
    basis: &Basis,
    degree: usize,
    max_terms: usize,
) -> GradedElement {
    let n = basis.dim();
    let lo = degree.saturating_sub(n);
    let hi = degree.min(n);
    let mut out = GradedElement::zero(basis);
    for _ in 0..rng.gen_range(1..=max_terms.max(1)) {
        let p = rng.gen_range(lo..=hi);
        out += &random_bidegree(rng, basis, (p, degree - p), 1);
    }
    out
}

pub fn random_bivector<R: Rng + ?Sized>(rng: &mut R, basis: &Basis) -> GradedElement {
    if basis.dim() < 2 || rng.gen_bool(0.1) {
        return GradedElement::zero(basis);
    }
    random_bidegree(rng, basis, (2, 0), 3)
}

/// A random quadruple with no validity requirement; each component is zero
/// with probability ½.
pub fn random_structure<R: Rng + ?Sized>(rng: &mut R, basis: &Basis) -> ProtoStructure {
    let mut part = |bideg: (usize, usize)| {
        if rng.gen_bool(0.5) {
            random_bidegree(rng, basis, bideg, 3)
        } else {
            GradedElement::zero(basis)
        }
    };
    let (mu, gamma, phi, psi) = (part((1, 2)), part((2, 1)), part((3, 0)), part((0, 3)));
    ProtoStructure::new(mu, gamma, phi, psi).expect("bidegrees are right by construction")
}

/// `s` with one random term added to one random component.
pub fn mutate<R: Rng + ?Sized>(rng: &mut R, s: &ProtoStructure) -> ProtoStructure {
    let b = s.basis();
    let slot = if b.dim() < 3 {
        rng.gen_range(0..2)
    } else {
        rng.gen_range(0..4)
    };
    let bideg = [(1, 2), (2, 1), (3, 0), (0, 3)][slot];
    let extra = random_bidegree(rng, b, bideg, 1);
    let r = match slot {
        0 => s.with_mu(s.mu() + &extra),
        1 => s.with_gamma(s.gamma() + &extra),
        2 => s.with_phi(s.phi() + &extra),
        _ => s.with_psi(s.psi() + &extra),
    };
    r.expect("same basis and bidegree")
}

fn shifted(file: &StructureFile, offset: usize, dim: usize) -> StructureFile {
    let sh = |list: &Vec<crate::io::Entry3>| {
        list.iter()
            .map(|e| crate::io::Entry3 {
                i: e.i + offset,
                j: e.j + offset,
                k: e.k + offset,
                c: e.c.clone(),
            })
            .collect()
    };
    StructureFile {
        dim,
        basis_names: None,
        mu: sh(&file.mu),
        gamma: sh(&file.gamma),
        phi: sh(&file.phi),
        psi: sh(&file.psi),
    }
}

fn direct_sum(a: &StructureFile, b: &StructureFile) -> StructureFile {
    let dim = a.dim + b.dim;
    let mut out = shifted(a, 0, dim);
    let tail = shifted(b, a.dim, dim);
    out.mu.extend(tail.mu);
    out.gamma.extend(tail.gamma);
    out.phi.extend(tail.phi);
    out.psi.extend(tail.psi);
    out
}

fn file(name: &str) -> StructureFile {
    StructureFile::from_structure(&lookup_structure(name).expect("corpus entry"))
}

/// A Lie algebra structure `(μ, 0, 0, 0)` of dimension `n ≤ 4` on the
/// standard basis.
pub fn random_lie_algebra<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ProtoStructure {
    let pieces: Vec<Vec<&str>> = match n {
        1 => vec![vec!["abelian1"]],
        2 => vec![vec!["abelian2"], vec!["affine2"]],
        3 => vec![
            vec!["abelian3"],
            vec!["so3"],
            vec!["sl2"],
            vec!["heisenberg3"],
            vec!["affine2", "abelian1"],
        ],
        4 => vec![
            vec!["abelian4"],
            vec!["affine2", "affine2"],
            vec!["so3", "abelian1"],
            vec!["sl2", "abelian1"],
            vec!["heisenberg3", "abelian1"],
        ],
        _ => panic!("random_lie_algebra supports 1 ≤ n ≤ 4"),
    };
    let choice = pieces.choose(rng).expect("nonempty");
    let mut f = file(choice[0]);
    for p in &choice[1..] {
        f = direct_sum(&f, &file(p));
    }
    let f = shifted(&f, 0, n);
    f.to_structure().expect("valid file")
}

fn standard(n: usize) -> Basis {
    BasisSpec::standard(n).expect("small dimension")
}

/// A base structure before twisting: a Lie algebra, possibly with a
/// compatible `φ` or `ψ`.
fn random_base<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ProtoStructure {
    let lie = random_lie_algebra(rng, n);
    let b = lie.basis().clone();
    match rng.gen_range(0..4) {
        0 if n == 3 && rng.gen_bool(0.5) => shifted(&file("so3_quasi"), 0, 3)
            .to_structure()
            .expect("valid"),
        1 if n >= 3 => {
            // ψ with {μ,ψ} = 0, or φ on the abelian algebra
            let psi = random_bidegree(rng, &b, (0, 3), 2);
            let s = lie.with_psi(psi).expect("bidegree");
            if master_residual(&s).is_zero() {
                s
            } else {
                let phi = random_bidegree(rng, &b, (3, 0), 2);
                ProtoStructure::zero(&b).with_phi(phi).expect("bidegree")
            }
        }
        _ => lie,
    }
}

/// A random proto-bialgebra with `{Θ,Θ} = 0` on the standard basis of dimension `n ≤ 4`.
pub fn random_valid<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ProtoStructure {
    let mut s = random_base(rng, n);
    if rng.gen_bool(0.8) {
        s = twist(&s, &random_bivector(rng, &standard(n))).expect("bivector");
    }
    if rng.gen_bool(0.3) {
        s = s.dual();
    }
    if rng.gen_bool(0.3) {
        let t = [int(2), int(-1), ratio(1, 2)]
            .choose(rng)
            .expect("nonempty")
            .clone();
        s = ProtoStructure::from_theta(&s.theta().scale(&t)).unwrap_or(s);
    }
    debug_assert!(master_residual(&s).is_zero());
    s
}

/// The three settings for the graph-of-π Dirac test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiracCase {
    /// Lie bialgebra `(μ, γ, 0, 0)`.
    LieBialgebra,
    /// Lie quasi-bialgebra `(μ, γ, φ, 0)`.
    LieQuasiBialgebra,
    /// Lie algebra with background `(μ, 0, 0, ψ)`.
    Background,
}

/// A valid structure of the given case, dimension `n ≤ 4`.
pub fn random_case<R: Rng + ?Sized>(rng: &mut R, case: DiracCase, n: usize) -> ProtoStructure {
    let b = standard(n);
    match case {
        DiracCase::LieBialgebra => {
            let lie = random_lie_algebra(rng, n);
            match rng.gen_range(0..3) {
                0 => lie,
                1 => lie.dual(),
                _ => {
                    // coboundary by a bivector with [r,r]_μ = 0, if one turns up
                    for _ in 0..8 {
                        let r = random_bivector(rng, &b);
                        if schouten_point(lie.mu(), &r, &r)
                            .expect("same basis")
                            .is_zero()
                        {
                            return twist(&lie, &r).expect("bivector");
                        }
                    }
                    lie
                }
            }
        }
        DiracCase::LieQuasiBialgebra => {
            let mut s = random_base(rng, n);
            if !s.psi().is_zero() {
                s = s.with_psi(GradedElement::zero(&b)).expect("bidegree");
                if !master_residual(&s).is_zero() {
                    s = random_lie_algebra(rng, n);
                }
            }
            twist(&s, &random_bivector(rng, &b)).expect("bivector")
        }
        DiracCase::Background => {
            let lie = random_lie_algebra(rng, n);
            if n < 3 {
                return lie;
            }
            for _ in 0..8 {
                let s = lie
                    .with_psi(random_bidegree(rng, &b, (0, 3), 2))
                    .expect("bidegree");
                if master_residual(&s).is_zero() {
                    return s;
                }
            }
            lie
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::{classify, Classification};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn valid_samples_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut kinds = std::collections::BTreeSet::new();
        for k in 0..80 {
            let s = random_valid(&mut rng, 1 + k % 4);
            assert!(master_residual(&s).is_zero(), "{s:?}");
            kinds.insert(format!("{:?}", classify(&s)));
        }
        assert!(kinds.len() >= 3, "{kinds:?}");
    }

    #[test]
    fn cases_have_their_shape() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for k in 0..60 {
            let n = 2 + k % 3;
            let a = random_case(&mut rng, DiracCase::LieBialgebra, n);
            assert_eq!(classify(&a), Classification::LieBialgebra);
            let b = random_case(&mut rng, DiracCase::LieQuasiBialgebra, n);
            assert!(b.psi().is_zero() && master_residual(&b).is_zero());
            let c = random_case(&mut rng, DiracCase::Background, n);
            assert!(c.gamma().is_zero() && c.phi().is_zero() && master_residual(&c).is_zero());
        }
    }

    #[test]
    fn mutation_usually_breaks_validity() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let broken = (0..40)
            .filter(|_| {
                let s = random_valid(&mut rng, 3);
                !master_residual(&mutate(&mut rng, &s)).is_zero()
            })
            .count();
        assert!(broken > 20, "{broken}");
    }
}
