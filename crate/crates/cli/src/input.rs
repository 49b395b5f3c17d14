use std::fs;

use bigbracket_core::io::{lookup, lookup_poly, CorpusData, PolyTensorFile, StructureFile};
use bigbracket_core::{Error, PolyTensor, ProtoStructure, Result};

fn read(path: &str) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Input(format!("cannot read {path}: {e}")))
}

pub fn structure(src: &str) -> Result<ProtoStructure> {
    if let Some(name) = src.strip_prefix("corpus:") {
        return match lookup(name).map(|i| i.data) {
            Some(CorpusData::Structure(f)) => f.to_structure(),
            Some(_) => Err(Error::Input(format!(
                "corpus entry {name} is a polynomial tensor"
            ))),
            None => Err(Error::Input(format!("unknown corpus entry {name}"))),
        };
    }
    StructureFile::from_json(&read(src)?)?.to_structure()
}

/// A tensor, with the background 3-form when the source is a corpus pair.
pub fn tensor(src: &str) -> Result<(PolyTensor, Option<PolyTensor>)> {
    if let Some(name) = src.strip_prefix("corpus:") {
        return lookup_poly(name)
            .ok_or_else(|| Error::Input(format!("no polynomial corpus entry {name}")));
    }
    Ok((PolyTensorFile::from_json(&read(src)?)?.to_tensor()?, None))
}

pub fn single_tensor(src: &str) -> Result<PolyTensor> {
    match tensor(src)? {
        (t, None) => Ok(t),
        (_, Some(_)) => Err(Error::Input(format!(
            "{src} is a (π, ψ) pair; pass the files separately"
        ))),
    }
}
