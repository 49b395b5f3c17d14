use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Default hard cap on `dim F`. Operator matrices have size `2^n`.
pub const DEFAULT_DIM_CAP: usize = 8;

/// Largest dimension the bitmask monomial encoding supports at all.
pub const MAX_DIM: usize = 16;

/// Labels for the generators `x_1..x_n` of `F` and `ξ_1..ξ_n` of `F*`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BasisSpec {
    vectors: Vec<String>,
    covectors: Vec<String>,
}

pub type Basis = Arc<BasisSpec>;

impl BasisSpec {
    /// Basis with labels `e1..en` and `eps1..epsn`.
    pub fn standard(n: usize) -> Result<Basis> {
        Self::with_cap(n, DEFAULT_DIM_CAP)
    }

    pub fn with_cap(n: usize, cap: usize) -> Result<Basis> {
        let vectors = (1..=n).map(|i| format!("e{i}")).collect();
        let covectors = (1..=n).map(|i| format!("eps{i}")).collect();
        Self::named_with_cap(vectors, covectors, cap)
    }

    /// Vector labels as given; covector labels get a `*` suffix.
    pub fn from_vector_names(names: &[String]) -> Result<Basis> {
        let covectors = names.iter().map(|s| format!("{s}*")).collect();
        Self::named_with_cap(names.to_vec(), covectors, DEFAULT_DIM_CAP)
    }

    pub fn named(vectors: Vec<String>, covectors: Vec<String>) -> Result<Basis> {
        Self::named_with_cap(vectors, covectors, DEFAULT_DIM_CAP)
    }

    pub fn named_with_cap(
        vectors: Vec<String>,
        covectors: Vec<String>,
        cap: usize,
    ) -> Result<Basis> {
        let n = vectors.len();
        if n == 0 {
            return Err(Error::Input("dimension must be positive".into()));
        }
        let cap = cap.min(MAX_DIM);
        if n > cap {
            return Err(Error::DimensionCap { dim: n, cap });
        }
        if covectors.len() != n {
            return Err(Error::Input(format!(
                "{} vector labels but {} covector labels",
                n,
                covectors.len()
            )));
        }
        let mut seen = HashSet::new();
        for name in vectors.iter().chain(&covectors) {
            if name.is_empty() || !seen.insert(name.as_str()) {
                return Err(Error::Input(format!("duplicate or empty label {name:?}")));
            }
        }
        Ok(Arc::new(BasisSpec { vectors, covectors }))
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vector_names(&self) -> &[String] {
        &self.vectors
    }

    pub fn covector_names(&self) -> &[String] {
        &self.covectors
    }

    /// Name of generator `g` in the `0..2n` index space (vectors first).
    pub fn generator_name(&self, g: usize) -> &str {
        let n = self.dim();
        if g < n {
            &self.vectors[g]
        } else {
            &self.covectors[g - n]
        }
    }

    /// Generator index for a label.
    pub fn lookup(&self, name: &str) -> Option<usize> {
        let n = self.dim();
        self.vectors
            .iter()
            .position(|s| s == name)
            .or_else(|| self.covectors.iter().position(|s| s == name).map(|i| i + n))
    }
}

pub(crate) fn same(a: &Basis, b: &Basis) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}
