//! Workloads shared by the kernel benchmarks.

use bigbracket_core::io::{lookup_poly, lookup_structure, parse_element};
use bigbracket_core::{GradedElement, PolyTensor, ProtoStructure};

pub fn structure(name: &str) -> ProtoStructure {
    lookup_structure(name).expect("corpus structure")
}

pub fn tensor(name: &str) -> PolyTensor {
    lookup_poly(name).expect("corpus tensor").0
}

pub fn element(s: &ProtoStructure, text: &str) -> GradedElement {
    parse_element(s.basis(), text).expect("element literal")
}

/// A four-dimensional structure with every component nonzero, and a bivector
/// to twist it by.
pub fn dense4() -> (ProtoStructure, GradedElement) {
    let s = structure("abelian4");
    let pi = element(&s, "e1^e2 + 2*e3^e4 - 1/2*e1^e4");
    let mu = element(&s, "e1^eps1^eps2 + e3^eps2^eps4");
    let base = s.with_mu(mu).expect("bracket");
    let t = bigbracket_core::twisting::twist(&base, &pi).expect("bivector");
    (t, pi)
}
