use serde::{Deserialize, Serialize};

use crate::basis::{Basis, BasisSpec};
use crate::error::{Error, Result};
use crate::poly::{mask_order, Kind, Poly, PolyTensor, MAX_POLY_DIM};
use crate::scalar;
use crate::structures::{
    bracket_constants, bracket_from_constants, cobracket_constants, cobracket_from_constants,
    three_form_constants, three_form_from_constants, trivector_constants, trivector_from_constants,
    Entry, ProtoStructure,
};

/// One structure constant. For `mu`, `[e_i, e_j] = c e_k`; for `gamma`,
/// `[ε_i, ε_j] = c ε_k`; for `phi` and `psi`, the coefficient of the
/// `(i, j, k)` wedge monomial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Entry3 {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub c: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureFile {
    pub dim: usize,
    /// Vector labels; covector labels get a `*` suffix. Omitted for `e1..en`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis_names: Option<Vec<String>>,
    #[serde(default)]
    pub mu: Vec<Entry3>,
    #[serde(default)]
    pub gamma: Vec<Entry3>,
    #[serde(default)]
    pub phi: Vec<Entry3>,
    #[serde(default)]
    pub psi: Vec<Entry3>,
}

fn to_entries(what: &str, dim: usize, list: &[Entry3], triple: bool) -> Result<Vec<Entry>> {
    list.iter()
        .map(|e| {
            let bad =
                |msg: &str| Error::Input(format!("{what} entry ({},{},{}): {msg}", e.i, e.j, e.k));
            if e.i == 0 || e.j == 0 || e.k == 0 || e.i > dim || e.j > dim || e.k > dim {
                return Err(bad("index out of range 1..dim"));
            }
            if e.i >= e.j || (triple && e.j >= e.k) {
                return Err(bad(if triple {
                    "need i < j < k"
                } else {
                    "need i < j"
                }));
            }
            let c = scalar::parse(&e.c).map_err(|err| bad(&err.to_string()))?;
            Ok((e.i - 1, e.j - 1, e.k - 1, c))
        })
        .collect()
}

fn from_entries(mut entries: Vec<Entry>) -> Vec<Entry3> {
    entries.sort_by(|a, b| (a.0, a.1, a.2).cmp(&(b.0, b.1, b.2)));
    entries
        .into_iter()
        .map(|(i, j, k, c)| Entry3 {
            i: i + 1,
            j: j + 1,
            k: k + 1,
            c: scalar::render(&c),
        })
        .collect()
}

impl StructureFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn basis(&self) -> Result<Basis> {
        match &self.basis_names {
            Some(names) if names.len() != self.dim => Err(Error::Input(format!(
                "{} basis names for dim {}",
                names.len(),
                self.dim
            ))),
            Some(names) => BasisSpec::from_vector_names(names),
            None => BasisSpec::standard(self.dim),
        }
    }

    pub fn to_structure(&self) -> Result<ProtoStructure> {
        let b = self.basis()?;
        let n = self.dim;
        ProtoStructure::new(
            bracket_from_constants(&b, &to_entries("mu", n, &self.mu, false)?)?,
            cobracket_from_constants(&b, &to_entries("gamma", n, &self.gamma, false)?)?,
            trivector_from_constants(&b, &to_entries("phi", n, &self.phi, true)?)?,
            three_form_from_constants(&b, &to_entries("psi", n, &self.psi, true)?)?,
        )
    }

    /// Canonical file for `s`: entries sorted, zero constants dropped.
    /// Covector labels are not stored, so bases with labels other than
    /// `eps1..` or `name*` do not round-trip.
    pub fn from_structure(s: &ProtoStructure) -> Self {
        let b = s.basis();
        let standard = BasisSpec::standard(b.dim())
            .map(|std| *std == **b)
            .unwrap_or(false);
        StructureFile {
            dim: b.dim(),
            basis_names: (!standard).then(|| b.vector_names().to_vec()),
            mu: from_entries(bracket_constants(s.mu()).expect("bidegree")),
            gamma: from_entries(cobracket_constants(s.gamma()).expect("bidegree")),
            phi: from_entries(trivector_constants(s.phi()).expect("bidegree")),
            psi: from_entries(three_form_constants(s.psi()).expect("bidegree")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoeffTerm {
    pub exponents: Vec<u16>,
    pub c: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TensorTerm {
    /// Ascending 1-based generator indices; empty for the function part.
    pub indices: Vec<usize>,
    pub coeff: Vec<CoeffTerm>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyTensorFile {
    pub m: usize,
    pub kind: Kind,
    pub terms: Vec<TensorTerm>,
}

impl PolyTensorFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn to_tensor(&self) -> Result<PolyTensor> {
        let m = self.m;
        if m == 0 || m > MAX_POLY_DIM {
            return Err(Error::Input(format!("m = {m} outside 1..={MAX_POLY_DIM}")));
        }
        let mut out = PolyTensor::zero(m, self.kind);
        for t in &self.terms {
            let mut f = Poly::zero(m);
            for c in &t.coeff {
                if c.exponents.len() != m {
                    return Err(Error::Input(format!(
                        "exponent vector {:?} has length {}, expected {m}",
                        c.exponents,
                        c.exponents.len()
                    )));
                }
                f = &f + &Poly::monomial(c.exponents.clone(), scalar::parse(&c.c)?);
            }
            if t.indices.contains(&0) {
                return Err(Error::Input("tensor indices are 1-based".into()));
            }
            let idx: Vec<usize> = t.indices.iter().map(|i| i - 1).collect();
            out = out.try_add(&PolyTensor::monomial(self.kind, &idx, f)?)?;
        }
        Ok(out)
    }

    pub fn from_tensor(t: &PolyTensor) -> Self {
        let mut terms: Vec<(u32, &Poly)> = t.terms().collect();
        terms.sort_by_key(|(mask, _)| mask_order(*mask));
        PolyTensorFile {
            m: t.m(),
            kind: t.kind(),
            terms: terms
                .into_iter()
                .map(|(mask, f)| TensorTerm {
                    indices: (0..t.m())
                        .filter(|i| mask & (1 << i) != 0)
                        .map(|i| i + 1)
                        .collect(),
                    coeff: f
                        .terms()
                        .map(|(e, c)| CoeffTerm {
                            exponents: e.clone(),
                            c: scalar::render(c),
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}
