//! JSON file formats, the built-in corpus, bivector expressions and report documents.
//!
//! Every index in a file is 1-based. Rationals are strings `"p/q"` or `"p"`.

mod corpus;
mod expr;
mod files;
mod report;

pub use corpus::{
    abelian, corpus, lookup, lookup_poly, lookup_structure, r3_pi, r3_psi, r4_twisted_pair,
    so3_lie_poisson, CorpusData, CorpusItem, POLY_NAMES, STRUCTURE_NAMES, TRIANGULAR_NAMES,
};
pub use expr::{parse_element, parse_section};
pub use files::{CoeffTerm, Entry3, PolyTensorFile, StructureFile, TensorTerm};
pub use report::{CheckDoc, EquivalenceDoc, ReportDoc};
