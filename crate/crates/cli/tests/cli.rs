mod common;

use bigbracket_core::io::{corpus, CorpusData, PolyTensorFile, ReportDoc, StructureFile};
use common::{check_golden, cli, fixtures, GOLDEN};

#[test]
fn golden_outputs() {
    let bad = check_golden();
    assert!(bad.is_empty(), "{}", bad.join("\n"));
}

#[test]
fn output_is_deterministic() {
    for (_, line, _) in GOLDEN {
        assert_eq!(cli(line), cli(line), "{line}");
        let j = format!("--json {line}");
        assert_eq!(cli(&j), cli(&j), "{j}");
    }
}

#[test]
fn json_reports_validate_and_agree_with_exit_code() {
    for (_, line, code) in GOLDEN {
        let out = cli(&format!("--json {line}"));
        if *code == 2 {
            assert!(out.output.starts_with("error: "), "{line}");
            continue;
        }
        let doc = ReportDoc::from_json(&out.output).unwrap_or_else(|e| panic!("{line}: {e}"));
        assert_eq!(doc.verdict, out.code == 0, "{line}");
        assert_eq!(
            doc.verdict,
            doc.checks.iter().all(|c| c.residual == "0"),
            "{line}"
        );
    }
}

#[test]
fn sl2_twisted_by_e_f_is_a_quasi_bialgebra() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.json");
    let out = cli(&format!(
        "twist corpus:sl2 --pi e^f --out {}",
        path.display()
    ));
    assert_eq!(out.code, 0);
    let out = cli(&format!("--json classify {}", path.display()));
    assert_eq!(out.code, 0);
    let doc = ReportDoc::from_json(&out.output).unwrap();
    assert_eq!(doc.results["classification"], "LieQuasiBialgebra");
}

#[test]
fn classify_so3_is_a_lie_bialgebra() {
    let out = cli("--json classify corpus:so3");
    assert_eq!(out.code, 0);
    let doc = ReportDoc::from_json(&out.output).unwrap();
    assert_eq!(doc.results["classification"], "LieBialgebra");
}

#[test]
fn poisson_background_residual_on_r3_is_half_the_schouten_square() {
    let out = cli("--json poly check-poisson-bg @/r3_pi.json @/r3_psi.json");
    assert_eq!(out.code, 1);
    let doc = ReportDoc::from_json(&out.output).unwrap();
    assert_eq!(doc.checks[0].residual, doc.results["1/2 [pi,pi]"]);
    assert_ne!(doc.checks[0].residual, "0");
}

#[test]
fn input_errors_exit_with_two() {
    for line in [
        "classify corpus:nope",
        "classify @/missing.json",
        "classify @/r3_pi.json",
        "poly modular corpus:so3",
        "conditions corpus:so3 --pi e1",
        "conditions corpus:so3 --pi e1^e7",
        "dirac corpus:so3",
        "dirac corpus:so3 --pi e1^e2 --span e1",
        "frobnicate",
        "poly triangular-check @/r3_pi.json",
    ] {
        let out = cli(line);
        assert_eq!(out.code, 2, "{line}: {}", out.output);
    }
    assert_eq!(cli("--help").code, 0);
}

#[test]
fn corpus_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(
        cli(&format!("corpus --out {}", dir.path().display())).code,
        0
    );
    for item in corpus() {
        let shipped = |suffix: &str| {
            let name = format!("{}{suffix}.json", item.name);
            let written = std::fs::read_to_string(dir.path().join(&name)).unwrap();
            let stored = std::fs::read_to_string(fixtures().join("corpus").join(&name)).unwrap();
            assert_eq!(written, stored, "{name}");
            written
        };
        match item.data {
            CorpusData::Structure(f) => {
                let text = shipped("");
                let back = StructureFile::from_json(&text).unwrap();
                assert_eq!(back, f);
                let s = back.to_structure().unwrap();
                assert_eq!(StructureFile::from_structure(&s), f, "{}", item.name);
            }
            CorpusData::Tensor(t) => {
                let back = PolyTensorFile::from_json(&shipped("")).unwrap();
                assert_eq!(PolyTensorFile::from_tensor(&back.to_tensor().unwrap()), t);
            }
            CorpusData::TensorPair { pi, psi } => {
                assert_eq!(PolyTensorFile::from_json(&shipped(".pi")).unwrap(), pi);
                assert_eq!(PolyTensorFile::from_json(&shipped(".psi")).unwrap(), psi);
            }
        }
    }
}

#[test]
fn corpus_listing() {
    let out = cli("--json corpus");
    let list: Vec<serde_json::Value> = serde_json::from_str(&out.output).unwrap();
    assert_eq!(list.len(), corpus().len());
    let one = cli("corpus so3");
    assert_eq!(
        StructureFile::from_json(&one.output).unwrap(),
        StructureFile::from_json(
            &std::fs::read_to_string(fixtures().join("corpus/so3.json")).unwrap()
        )
        .unwrap()
    );
}
