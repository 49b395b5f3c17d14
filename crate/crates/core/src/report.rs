//! Named residuals with exact-zero verdicts.

use num_traits::Zero;

use crate::graded::GradedElement;
use crate::scalar::{self, Scalar};
use crate::structures::DoubleSection;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Residual {
    Graded(GradedElement),
    Scalar(Scalar),
    Section(DoubleSection),
    /// Residuals from layers without a `GradedElement` value (operators,
    /// polynomial tensors), carried as their canonical rendering.
    Rendered {
        zero: bool,
        text: String,
    },
}

impl Residual {
    pub fn rendered(zero: bool, text: impl Into<String>) -> Self {
        Residual::Rendered {
            zero,
            text: text.into(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Residual::Graded(e) => e.is_zero(),
            Residual::Scalar(c) => c.is_zero(),
            Residual::Section(s) => s.is_zero(),
            Residual::Rendered { zero, .. } => *zero,
        }
    }

    /// Canonical text, `"0"` when zero.
    pub fn pretty(&self) -> String {
        match self {
            Residual::Graded(e) => e.pretty(),
            Residual::Scalar(c) => scalar::render(c),
            Residual::Section(s) => s.pretty(),
            Residual::Rendered { zero: true, .. } => "0".into(),
            Residual::Rendered { text, .. } => text.clone(),
        }
    }
}

impl From<GradedElement> for Residual {
    fn from(e: GradedElement) -> Self {
        Residual::Graded(e)
    }
}

impl From<Scalar> for Residual {
    fn from(c: Scalar) -> Self {
        Residual::Scalar(c)
    }
}

impl From<DoubleSection> for Residual {
    fn from(s: DoubleSection) -> Self {
        Residual::Section(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub residual: Residual,
    /// Arguments at which the reported residual was found, if it was sampled.
    pub witness: Option<String>,
    /// Number of argument tuples evaluated.
    pub evaluated: usize,
}

impl Check {
    pub fn new(name: impl Into<String>, residual: impl Into<Residual>) -> Self {
        Check {
            name: name.into(),
            residual: residual.into(),
            witness: None,
            evaluated: 1,
        }
    }

    pub fn verdict(&self) -> bool {
        self.residual.is_zero()
    }
}

/// Folds many evaluations of one identity into a single check that keeps the
/// first nonzero residual.
pub struct Sweep {
    name: String,
    first: Option<(Residual, String)>,
    zero: Residual,
    evaluated: usize,
}

impl Sweep {
    pub fn new(name: impl Into<String>, zero: impl Into<Residual>) -> Self {
        Sweep {
            name: name.into(),
            first: None,
            zero: zero.into(),
            evaluated: 0,
        }
    }

    pub fn record(&mut self, residual: impl Into<Residual>, witness: impl FnOnce() -> String) {
        self.evaluated += 1;
        if self.first.is_some() {
            return;
        }
        let r = residual.into();
        if !r.is_zero() {
            self.first = Some((r, witness()));
        }
    }

    pub fn failed(&self) -> bool {
        self.first.is_some()
    }

    pub fn finish(self) -> Check {
        let (residual, witness) = match self.first {
            Some((r, w)) => (r, Some(w)),
            None => (self.zero, None),
        };
        Check {
            name: self.name,
            residual,
            witness,
            evaluated: self.evaluated,
        }
    }
}

/// A consistency statement between verdicts, such as two equivalent axiom forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equivalence {
    pub name: String,
    pub holds: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub checks: Vec<Check>,
    pub equivalences: Vec<Equivalence>,
}

impl AxiomReport {
    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn verdict(&self, name: &str) -> Option<bool> {
        self.get(name).map(Check::verdict)
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(Check::verdict) && self.equivalences.iter().all(|e| e.holds)
    }
}
