use std::fs;
use std::path::Path;

use bigbracket_core::io::{
    corpus, parse_element, parse_section, CorpusData, ReportDoc, StructureFile,
};
use bigbracket_core::operators::{
    clifford_check, deriving_operator, deriving_relations_residuals, generator_check,
    gerstenhaber_gamma, op_boundary_gamma,
};
use bigbracket_core::poly::{
    courant_axiom_check_poly, default_trial_functions, default_trial_sections, modular_report,
    poisson_bg_report, schouten, standard_volume, triangular_deriving_checks,
};
use bigbracket_core::report::{Check, Equivalence, Residual, Sweep};
use bigbracket_core::structures::{
    classify, courant_axioms_check_basis, dirac_check, double_bracket, double_bracket_derived,
    five_conditions, graph, master_residual, DiracReport, FIVE_CONDITION_NAMES,
};
use bigbracket_core::twisting::{condition_residuals, twist, twist_exp};
use bigbracket_core::{
    DoubleSection, Error, GradedElement, Kind, PolyTensor, ProtoStructure, Result,
};
use serde_json::{json, Value};

use crate::input;
use crate::{Command, PolyCommand};

pub enum Output {
    Report(ReportDoc),
    Text(String),
}

pub fn execute(cmd: &Command, json: bool) -> Result<Output> {
    Ok(Output::Report(match cmd {
        Command::Classify(src) => classify_cmd(&src.source)?,
        Command::Conditions(a) => conditions_cmd(&a.source.source, &a.pi)?,
        Command::Twist { args, out } => twist_cmd(&args.source.source, &args.pi, out.as_deref())?,
        Command::Double(src) => double_cmd(&src.source)?,
        Command::CheckCourant(src) => {
            let s = input::structure(&src.source)?;
            let mut r = ReportDoc::new("check-courant", &src.source);
            r.add_axioms(&courant_axioms_check_basis(&s));
            r
        }
        Command::Dirac { source, pi, span } => {
            dirac_cmd(&source.source, pi.as_deref(), span.as_deref())?
        }
        Command::DerivingOp(src) => deriving_cmd(&src.source)?,
        Command::Poly(p) => poly_cmd(p)?,
        Command::Corpus { name, out } => return corpus_cmd(name.as_deref(), out.as_deref(), json),
    }))
}

fn structure_value(s: &ProtoStructure) -> Value {
    serde_json::to_value(StructureFile::from_structure(s)).expect("plain data")
}

fn classify_cmd(src: &str) -> Result<ReportDoc> {
    let s = input::structure(src)?;
    let mut r = ReportDoc::new("classify", src);
    r.push(&Check::new("master equation", master_residual(&s)));
    for (name, res) in FIVE_CONDITION_NAMES.iter().zip(five_conditions(&s)) {
        r.push(&Check::new(*name, res));
    }
    r.set_result("classification", classify(&s).to_string());
    Ok(r)
}

fn bivector(s: &ProtoStructure, text: &str) -> Result<GradedElement> {
    let pi = parse_element(s.basis(), text)?;
    if !pi.has_bidegree((2, 0)) {
        return Err(Error::Input(format!("{text:?} is not a bivector")));
    }
    Ok(pi)
}

fn conditions_cmd(src: &str, pi_text: &str) -> Result<ReportDoc> {
    let s = input::structure(src)?;
    let pi = bivector(&s, pi_text)?;
    let mut r = ReportDoc::new("conditions", format!("{src} --pi {pi_text}"));
    r.extend(&condition_residuals(&s, &pi)?.checks());
    r.set_result("classification", classify(&s).to_string());
    Ok(r)
}

fn twist_cmd(src: &str, pi_text: &str, out: Option<&Path>) -> Result<ReportDoc> {
    let s = input::structure(src)?;
    let pi = bivector(&s, pi_text)?;
    let t = twist(&s, &pi)?;
    let oracle = twist_exp(&s, &pi)?;
    let mut r = ReportDoc::new("twist", format!("{src} --pi {pi_text}"));
    r.push(&Check::new(
        "twist = exponential twist",
        &t.theta() - &oracle.theta(),
    ));
    r.push(&Check::new(
        "master equation of the twist",
        master_residual(&t),
    ));
    r.set_result("classification", classify(&t).to_string());
    r.set_result("structure", structure_value(&t));
    if let Some(path) = out {
        fs::write(path, StructureFile::from_structure(&t).to_json() + "\n")
            .map_err(|e| Error::Input(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(r)
}

fn double_cmd(src: &str) -> Result<ReportDoc> {
    let s = input::structure(src)?;
    let secs = DoubleSection::standard_sections(s.basis());
    let mut sweep = Sweep::new(
        "bracket formula = derived bracket",
        GradedElement::zero(s.basis()),
    );
    let mut table = Vec::new();
    for a in &secs {
        for b in &secs {
            let f = double_bracket(&s, a, b)?;
            let d = double_bracket_derived(&s, a, b)?;
            sweep.record(&f.element() - &d.element(), || {
                format!("{}, {}", a.pretty(), b.pretty())
            });
            if !f.is_zero() {
                table.push(Value::String(format!(
                    "[{}, {}] = {}",
                    a.pretty(),
                    b.pretty(),
                    f.pretty()
                )));
            }
        }
    }
    let mut r = ReportDoc::new("double", src);
    r.push(&sweep.finish());
    r.set_result("brackets", table);
    Ok(r)
}

fn flag(name: &str, ok: bool, failure: &str) -> Check {
    Check::new(name, Residual::rendered(ok, failure))
}

fn dirac_checks(r: &mut ReportDoc, d: &DiracReport) {
    r.push(&flag("isotropic", d.isotropic, "not isotropic"));
    r.push(&flag("maximal", d.maximal, "not maximal"));
    r.push(&flag("closed", d.closed, "not closed under the bracket"));
}

fn dirac_cmd(src: &str, pi: Option<&str>, span: Option<&str>) -> Result<ReportDoc> {
    let s = input::structure(src)?;
    match (pi, span) {
        (Some(text), _) => {
            let pi = bivector(&s, text)?;
            let d = dirac_check(&s, &graph(&pi)?)?;
            let mut r = ReportDoc::new("dirac", format!("{src} --pi {text}"));
            dirac_checks(&mut r, &d);
            // the graph of π is the image of F* under the twist by π, so it
            // is closed exactly when the twisted φ vanishes
            let phi = twist(&s, &pi)?.phi().clone();
            r.push_equivalence(&Equivalence {
                name: "graph is Dirac iff the twisted phi vanishes".into(),
                holds: d.is_dirac() == phi.is_zero(),
            });
            r.set_result("twisted phi", phi.pretty());
            Ok(r)
        }
        (None, Some(list)) => {
            let secs = list
                .split(',')
                .map(|t| parse_section(s.basis(), t))
                .collect::<Result<Vec<_>>>()?;
            let d = dirac_check(&s, &secs)?;
            let mut r = ReportDoc::new("dirac", format!("{src} --span {list}"));
            dirac_checks(&mut r, &d);
            Ok(r)
        }
        (None, None) => Err(Error::Input("dirac needs --pi or --span".into())),
    }
}

fn deriving_cmd(src: &str) -> Result<ReportDoc> {
    let s = input::structure(src)?;
    let d = deriving_operator(&s);
    let mut r = ReportDoc::new("deriving-op", src);
    r.push(&Check::new("master equation", master_residual(&s)));
    r.extend(&deriving_relations_residuals(&d, &s)?);
    r.push(&clifford_check(
        s.basis(),
        &DoubleSection::standard_sections(s.basis()),
    )?);
    let gamma = s.gamma().clone();
    let generator = generator_check(&op_boundary_gamma(&s), |u, v| {
        gerstenhaber_gamma(&gamma, u, v)
    })?;
    r.extend(&generator);
    Ok(r)
}

fn volume(nu: Option<&str>, m: usize) -> Result<PolyTensor> {
    match nu {
        Some(src) => input::single_tensor(src),
        None => Ok(standard_volume(m)),
    }
}

fn poly_cmd(p: &PolyCommand) -> Result<ReportDoc> {
    match p {
        PolyCommand::CheckPoissonBg {
            pi,
            psi,
            max_degree,
        } => {
            let (pi_t, pair_psi) = input::tensor(pi)?;
            let psi_t = match (psi, pair_psi) {
                (Some(src), _) => input::single_tensor(src)?,
                (None, Some(t)) => t,
                (None, None) => PolyTensor::zero(pi_t.m(), Kind::Form),
            };
            let subject = match psi {
                Some(s) => format!("{pi} {s}"),
                None => pi.clone(),
            };
            let mut r = ReportDoc::new("poly check-poisson-bg", subject);
            r.add_axioms(&poisson_bg_report(&pi_t, &psi_t, *max_degree)?);
            let half = schouten(&pi_t, &pi_t)?.scale(&bigbracket_core::scalar::ratio(1, 2));
            r.set_result("1/2 [pi,pi]", half.pretty());
            Ok(r)
        }
        PolyCommand::CourantBg { psi, max_degree } => {
            let psi_t = input::single_tensor(psi)?;
            let m = psi_t.m();
            let report = courant_axiom_check_poly(
                &psi_t,
                &default_trial_sections(m, *max_degree),
                &default_trial_functions(m),
            )?;
            let mut r = ReportDoc::new("poly courant-bg", psi);
            r.add_axioms(&report);
            Ok(r)
        }
        PolyCommand::Modular { pi, nu, max_degree } => {
            let pi_t = input::single_tensor(pi)?;
            let nu_t = volume(nu.as_deref(), pi_t.m())?;
            let (x_nu, report) = modular_report(&pi_t, &nu_t, *max_degree)?;
            let mut r = ReportDoc::new("poly modular", pi);
            r.add_axioms(&report);
            r.set_result("modular field", x_nu.pretty());
            Ok(r)
        }
        PolyCommand::TriangularCheck { pi, nu, max_degree } => {
            let pi_t = input::single_tensor(pi)?;
            let nu_t = volume(nu.as_deref(), pi_t.m())?;
            let report = triangular_deriving_checks(&pi_t, &nu_t, *max_degree)?;
            let mut r = ReportDoc::new("poly triangular-check", pi);
            r.add_axioms(&report);
            Ok(r)
        }
    }
}

fn entry_files(data: &CorpusData) -> Vec<(&'static str, String)> {
    match data {
        CorpusData::Structure(f) => vec![("", f.to_json())],
        CorpusData::Tensor(t) => vec![("", t.to_json())],
        CorpusData::TensorPair { pi, psi } => vec![(".pi", pi.to_json()), (".psi", psi.to_json())],
    }
}

fn kind_of(data: &CorpusData) -> &'static str {
    match data {
        CorpusData::Structure(_) => "structure",
        CorpusData::Tensor(_) => "tensor",
        CorpusData::TensorPair { .. } => "pair",
    }
}

fn corpus_cmd(name: Option<&str>, out: Option<&Path>, json: bool) -> Result<Output> {
    if let Some(name) = name {
        let item = bigbracket_core::io::lookup(name)
            .ok_or_else(|| Error::Input(format!("unknown corpus entry {name}")))?;
        return Ok(Output::Text(match &item.data {
            CorpusData::TensorPair { pi, psi } => {
                let v = json!({ "pi": pi, "psi": psi });
                serde_json::to_string_pretty(&v).expect("plain data") + "\n"
            }
            other => entry_files(other).remove(0).1 + "\n",
        }));
    }
    let items = corpus();
    let mut text = String::new();
    if let Some(dir) = out {
        fs::create_dir_all(dir)
            .map_err(|e| Error::Input(format!("cannot create {}: {e}", dir.display())))?;
        for item in &items {
            for (suffix, body) in entry_files(&item.data) {
                let path = dir.join(format!("{}{suffix}.json", item.name));
                fs::write(&path, body + "\n")
                    .map_err(|e| Error::Input(format!("cannot write {}: {e}", path.display())))?;
                text.push_str(&format!("wrote {}\n", path.display()));
            }
        }
        return Ok(Output::Text(text));
    }
    if json {
        let list: Vec<Value> = items
            .iter()
            .map(|i| json!({ "name": i.name, "kind": kind_of(&i.data), "description": i.description }))
            .collect();
        return Ok(Output::Text(
            serde_json::to_string_pretty(&list).expect("plain data") + "\n",
        ));
    }
    for i in &items {
        text.push_str(&format!(
            "{:<20} {:<10} {}\n",
            i.name,
            kind_of(&i.data),
            i.description
        ));
    }
    Ok(Output::Text(text))
}
