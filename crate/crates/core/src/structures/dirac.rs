use num_traits::Zero;
use serde::Serialize;

use super::{canonical_pairing, double_bracket, DoubleSection, ProtoStructure};
use crate::error::{Error, Result};
use crate::graded::GradedElement;
use crate::linalg::Echelon;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DiracReport {
    pub isotropic: bool,
    pub maximal: bool,
    pub closed: bool,
}

impl DiracReport {
    pub fn is_dirac(&self) -> bool {
        self.isotropic && self.maximal && self.closed
    }
}

/// Isotropy, maximality and bracket closure of the span of `l`.
pub fn dirac_check(s: &ProtoStructure, l: &[DoubleSection]) -> Result<DiracReport> {
    let n = s.dim();
    for sec in l {
        s.check_basis(sec.vector())?;
    }
    let coords: Vec<_> = l.iter().map(DoubleSection::coords).collect();
    let span = Echelon::new(&coords, 2 * n);
    if span.rank() != l.len() {
        return Err(Error::Input("spanning list is linearly dependent".into()));
    }
    let mut isotropic = true;
    let mut closed = true;
    for (a, u) in l.iter().enumerate() {
        for v in &l[a..] {
            if !canonical_pairing(u, v)?.is_zero() {
                isotropic = false;
            }
        }
        for v in l {
            if !span.contains(&double_bracket(s, u, v)?.coords()) {
                closed = false;
            }
        }
    }
    Ok(DiracReport {
        isotropic,
        maximal: isotropic && l.len() == n,
        closed,
    })
}

/// `{ξ + π♯ξ}` spanned by `ε_i + π♯ε_i`, with `π♯ξ = i_ξ π`.
pub fn graph(pi: &GradedElement) -> Result<Vec<DoubleSection>> {
    if !pi.has_bidegree((2, 0)) {
        return Err(Error::Bidegree {
            what: "pi",
            expected: (2, 0),
            found: pi.bidegree().unwrap_or((0, 0)),
        });
    }
    let b = pi.basis();
    (0..b.dim())
        .map(|i| {
            let xi = GradedElement::covector(b, i);
            DoubleSection::new(xi.pb(pi), xi)
        })
        .collect()
}
