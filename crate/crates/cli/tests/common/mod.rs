#![allow(dead_code)]

use std::fs;
use std::path::PathBuf;

use bigbracket_cli::{run, Outcome};

pub fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../..")
        .canonicalize()
        .unwrap()
}

pub fn fixtures() -> PathBuf {
    root().join("fixtures")
}

/// Runs a command line in which `@` stands for the fixtures directory.
/// The fixtures path is folded back to `fixtures` in the output so the
/// text does not depend on where the checkout lives.
pub fn cli(line: &str) -> Outcome {
    let dir = fixtures().display().to_string();
    let args: Vec<String> = std::iter::once("bigbracket".to_string())
        .chain(line.split_whitespace().map(|a| a.replace('@', &dir)))
        .collect();
    let mut out = run(args);
    out.output = out.output.replace(&dir, "fixtures");
    out
}

/// Name, command line and expected exit code of each golden case.
pub const GOLDEN: &[(&str, &str, i32)] = &[
    ("classify_so3", "classify corpus:so3", 0),
    ("classify_sl2_twisted", "classify corpus:sl2_twisted", 0),
    ("classify_so3_quasi", "classify corpus:so3_quasi", 0),
    (
        "classify_heisenberg",
        "classify @/corpus/heisenberg3.json",
        0,
    ),
    ("conditions_sl2_ef", "conditions corpus:sl2 --pi e^f", 1),
    (
        "conditions_affine2_ab",
        "conditions corpus:affine2 --pi a^b",
        0,
    ),
    ("conditions_so3_e1e2", "conditions corpus:so3 --pi e1^e2", 1),
    ("twist_sl2_ef", "twist corpus:sl2 --pi e^f", 0),
    (
        "twist_so3_background",
        "twist corpus:so3_background --pi 1/2*e1^e2",
        0,
    ),
    ("double_affine2", "double corpus:affine2", 0),
    ("double_so3_quasi", "double corpus:so3_quasi", 0),
    (
        "check_courant_so3_background",
        "check-courant corpus:so3_background",
        0,
    ),
    (
        "check_courant_affine2_coboundary",
        "check-courant corpus:affine2_coboundary",
        0,
    ),
    ("dirac_so3_graph", "dirac corpus:so3 --pi e1^e2", 1),
    ("dirac_affine2_graph", "dirac corpus:affine2 --pi a^b", 0),
    ("dirac_so3_span", "dirac corpus:so3 --span e1,e2,e3", 0),
    ("dirac_so3_not_maximal", "dirac corpus:so3 --span e1,e2", 1),
    ("deriving_op_so3", "deriving-op corpus:so3", 0),
    ("deriving_op_so3_quasi", "deriving-op corpus:so3_quasi", 0),
    (
        "poisson_bg_r3",
        "poly check-poisson-bg @/r3_pi.json @/r3_psi.json",
        1,
    ),
    (
        "poisson_bg_r4",
        "poly check-poisson-bg @/r4_pi.json @/r4_psi.json",
        0,
    ),
    (
        "poisson_bg_so3",
        "poly check-poisson-bg @/so3_lie_poisson.json",
        0,
    ),
    ("courant_bg_r3", "poly courant-bg @/r3_psi.json", 0),
    (
        "courant_bg_r4_nonclosed",
        "poly courant-bg @/r4_nonclosed.json",
        1,
    ),
    ("modular_so3", "poly modular @/so3_lie_poisson.json", 0),
    ("modular_r3_pi", "poly modular @/r3_pi.json", 0),
    (
        "triangular_so3",
        "poly triangular-check @/so3_lie_poisson.json",
        0,
    ),
    (
        "triangular_so3_volume",
        "poly triangular-check @/so3_lie_poisson.json --nu @/r3_volume.json",
        0,
    ),
    ("triangular_r4_pi", "poly triangular-check @/r4_pi.json", 2),
    ("triangular_r3_pi", "poly triangular-check @/r3_pi.json", 2),
];

pub fn golden_path(name: &str) -> PathBuf {
    fixtures().join("golden").join(format!("{name}.json"))
}

/// Compares every golden case against its stored JSON output, rewriting the
/// files instead when `UPDATE_GOLDEN=1`. Returns the mismatches.
pub fn check_golden() -> Vec<String> {
    let update = std::env::var("UPDATE_GOLDEN").is_ok_and(|v| v == "1");
    let mut bad = Vec::new();
    for (name, line, code) in GOLDEN {
        let out = cli(&format!("--json {line}"));
        if out.code != *code {
            bad.push(format!("{name}: exit {} (expected {code})", out.code));
        }
        let path = golden_path(name);
        if update {
            fs::create_dir_all(path.parent().unwrap()).unwrap();
            fs::write(&path, &out.output).unwrap();
            continue;
        }
        match fs::read_to_string(&path) {
            Ok(expected) if expected == out.output => {}
            Ok(_) => bad.push(format!("{name}: output differs from {}", path.display())),
            Err(e) => bad.push(format!("{name}: {e}")),
        }
    }
    bad
}
