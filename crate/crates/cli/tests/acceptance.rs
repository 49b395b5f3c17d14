//! Acceptance suite: one line per criterion, exact residuals throughout.
//! Run with `cargo test -p bigbracket-cli --test acceptance`.

mod common;

use std::time::{Duration, Instant};

use bigbracket_core::basis::{Basis, BasisSpec};
use bigbracket_core::io::{corpus, lookup_poly, CorpusData, ReportDoc, TRIANGULAR_NAMES};
use bigbracket_core::operators::{
    clifford_check, deriving_operator, deriving_relations_residuals, generator_check,
    gerstenhaber_gamma, op_boundary_gamma,
};
use bigbracket_core::poly::{
    courant_axiom_check_poly, default_trial_functions, default_trial_sections, modular_field,
    poisson_bg_report, schouten, standard_volume, triangular_deriving_checks,
};
use bigbracket_core::samples::{
    mutate, random_bivector, random_case, random_homogeneous, random_structure, random_valid,
    DiracCase,
};
use bigbracket_core::scalar::int;
use bigbracket_core::structures::{
    courant_axioms_check_basis, dirac_check, double_bracket, double_bracket_derived,
    five_conditions, graph, master_residual,
};
use bigbracket_core::twisting::{condition_residuals, twist, twist_exp};
use bigbracket_core::{DoubleSection, GradedElement, ProtoStructure};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn basis(n: usize) -> Basis {
    BasisSpec::standard(n).unwrap()
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn sign(p: usize) -> bigbracket_core::Scalar {
    int(if p % 2 == 0 { 1 } else { -1 })
}

fn big_bracket_axioms() -> Outcome {
    let mut rng = rng(1);
    let (mut cases, mut bad) = (0, Vec::new());
    while cases < 1200 {
        let n = rng.gen_range(1..=4);
        let b = basis(n);
        let top = 4.min(2 * n);
        let (da, db, dc) = (
            rng.gen_range(0..=top),
            rng.gen_range(0..=top),
            rng.gen_range(0..=top),
        );
        let a = random_homogeneous(&mut rng, &b, da, 3);
        let bb = random_homogeneous(&mut rng, &b, db, 3);
        let c = random_homogeneous(&mut rng, &b, dc, 3);
        let pb = |u: &GradedElement, v: &GradedElement| u.big_bracket(v).unwrap();
        let s = sign(da * db);
        let antisym = &pb(&a, &bb) + &pb(&bb, &a).scale(&s);
        let jacobi =
            &pb(&a, &pb(&bb, &c)) - &(&pb(&pb(&a, &bb), &c) + &pb(&bb, &pb(&a, &c)).scale(&s));
        let bc = bb.wedge(&c).unwrap();
        let leibniz = &pb(&a, &bc)
            - &(&pb(&a, &bb).wedge(&c).unwrap() + &bb.wedge(&pb(&a, &c)).unwrap().scale(&s));
        for (name, r) in [
            ("antisymmetry", antisym),
            ("Jacobi", jacobi),
            ("biderivation", leibniz),
        ] {
            if !r.is_zero() {
                bad.push(format!("{name} at n={n} degrees ({da},{db},{dc})"));
            }
        }
        cases += 1;
    }
    outcome(
        bad.is_empty(),
        format!(
            "{cases} triples, dim 1..4, degree 0..4; {} failures {}",
            bad.len(),
            bad.first().cloned().unwrap_or_default()
        ),
    )
}

fn master_equivalence() -> Outcome {
    let mut rng = rng(2);
    let (mut valid, mut invalid, mut bad) = (0, 0, 0);
    for k in 0..300 {
        let n = rng.gen_range(1..=4);
        let s = if k % 3 == 0 {
            random_valid(&mut rng, n)
        } else {
            random_structure(&mut rng, &basis(n))
        };
        let master = master_residual(&s);
        let five = five_conditions(&s);
        let mut sum = GradedElement::zero(s.basis());
        for f in &five {
            sum += f;
        }
        let identity = (&master - &sum.scale(&int(2))).is_zero();
        let agree = master.is_zero() == five.iter().all(|f| f.is_zero());
        if !(identity && agree) {
            bad += 1;
        }
        if master.is_zero() {
            valid += 1;
        } else {
            invalid += 1;
        }
    }
    outcome(bad == 0, format!("300 quadruples ({valid} valid, {invalid} invalid); {{Θ,Θ}} = 2·Σ conditions failed {bad} times"))
}

const COURANT_CHECKS: [&str; 5] = ["Loday Jacobi", "(i)", "(i')", "(i'')", "(ii)"];

fn double_consistency() -> Outcome {
    let mut structures = Vec::new();
    for item in corpus() {
        if let CorpusData::Structure(f) = item.data {
            structures.push((item.name, f.to_structure().unwrap()));
        }
    }
    let mut bad = Vec::new();
    let mut pairs = 0;
    for (name, s) in &structures {
        if !master_residual(s).is_zero() {
            bad.push(format!("{name} invalid"));
            continue;
        }
        let secs = DoubleSection::standard_sections(s.basis());
        for a in &secs {
            for b in &secs {
                pairs += 1;
                let f = double_bracket(s, a, b).unwrap();
                let d = double_bracket_derived(s, a, b).unwrap();
                if f != d {
                    bad.push(format!("{name}: [{}, {}]", a.pretty(), b.pretty()));
                }
            }
        }
        let report = courant_axioms_check_basis(s);
        for c in COURANT_CHECKS {
            if report.verdict(c) != Some(true) {
                bad.push(format!("{name}: {c}"));
            }
        }
    }
    let mut rng = rng(3);
    let (mut mutated, mut detected, mut jacobi) = (0, 0, 0);
    while mutated < 60 {
        let n = rng.gen_range(2..=4);
        let base = if rng.gen_bool(0.3) {
            structures[rng.gen_range(0..structures.len())].1.clone()
        } else {
            random_valid(&mut rng, n)
        };
        let s = mutate(&mut rng, &base);
        if master_residual(&s).is_zero() {
            continue;
        }
        mutated += 1;
        let report = courant_axioms_check_basis(&s);
        if COURANT_CHECKS
            .iter()
            .any(|c| report.verdict(c) == Some(false))
        {
            detected += 1;
        }
        if report.verdict("Loday Jacobi") == Some(false) {
            jacobi += 1;
        }
    }
    if detected < mutated {
        bad.push(format!(
            "{} mutated structures passed every axiom",
            mutated - detected
        ));
    }
    outcome(
        bad.is_empty(),
        format!(
            "{} corpus structures, {pairs} basis pairs; {mutated} mutated invalid, {detected} rejected ({jacobi} by Loday Jacobi) {}",
            structures.len(),
            bad.first().cloned().unwrap_or_default()
        ),
    )
}

fn dirac_agreement() -> Outcome {
    let mut rng = rng(4);
    let cases = [
        DiracCase::LieBialgebra,
        DiracCase::LieQuasiBialgebra,
        DiracCase::Background,
    ];
    let (mut total, mut dirac, mut bad) = (0, 0, Vec::new());
    for k in 0..150 {
        let case = cases[k % 3];
        let n = rng.gen_range(2..=4);
        let s = random_case(&mut rng, case, n);
        let pi = if rng.gen_bool(0.15) {
            GradedElement::zero(s.basis())
        } else {
            random_bivector(&mut rng, s.basis())
        };
        let conditions = condition_residuals(&s, &pi).unwrap();
        let condition = match case {
            DiracCase::LieBialgebra => &conditions.maurer_cartan,
            DiracCase::LieQuasiBialgebra => &conditions.quasi_maurer_cartan,
            DiracCase::Background => &conditions.psi_poisson,
        };
        let d = dirac_check(&s, &graph(&pi).unwrap()).unwrap();
        total += 1;
        if d.is_dirac() {
            dirac += 1;
        }
        if d.is_dirac() != condition.is_zero() || !d.isotropic || !d.maximal {
            bad.push(format!("{case:?} n={n} pi={}", pi.pretty()));
        }
    }
    outcome(
        bad.is_empty(),
        format!(
            "{total} pairs over three cases, {dirac} Dirac; {} disagreements {}",
            bad.len(),
            bad.first().cloned().unwrap_or_default()
        ),
    )
}

fn twist_oracle() -> Outcome {
    let mut rng = rng(5);
    let (mut valid, mut bad) = (0, Vec::new());
    for k in 0..240 {
        let n = rng.gen_range(1..=4);
        let s = if k % 2 == 0 {
            random_valid(&mut rng, n)
        } else {
            random_structure(&mut rng, &basis(n))
        };
        let pi = random_bivector(&mut rng, s.basis());
        let t = twist(&s, &pi).unwrap();
        let e = twist_exp(&s, &pi).unwrap();
        let same = |a: &ProtoStructure, b: &ProtoStructure| {
            a.mu() == b.mu() && a.gamma() == b.gamma() && a.phi() == b.phi() && a.psi() == b.psi()
        };
        if !same(&t, &e) {
            bad.push(format!("twist != twist_exp, n={n}"));
        }
        let back = twist(&t, &pi.scale(&int(-1))).unwrap();
        if !same(&back, &s) {
            bad.push(format!("round trip, n={n}"));
        }
        if master_residual(&s).is_zero() {
            valid += 1;
            if !master_residual(&t).is_zero() {
                bad.push(format!("master equation lost, n={n}"));
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!(
            "240 pairs ({valid} valid); {} failures {}",
            bad.len(),
            bad.first().cloned().unwrap_or_default()
        ),
    )
}

fn operator_checks(s: &ProtoStructure) -> Vec<String> {
    let mut bad = Vec::new();
    let d = deriving_operator(s);
    let mut checks = deriving_relations_residuals(&d, s).unwrap();
    checks.push(clifford_check(s.basis(), &DoubleSection::standard_sections(s.basis())).unwrap());
    let gamma = s.gamma().clone();
    checks.extend(
        generator_check(&op_boundary_gamma(s), |u, v| {
            gerstenhaber_gamma(&gamma, u, v)
        })
        .unwrap(),
    );
    for c in checks {
        if !c.verdict() {
            bad.push(c.name);
        }
    }
    bad
}

fn deriving_operator_relations() -> Outcome {
    let mut bad = Vec::new();
    let mut corpus_count = 0;
    for item in corpus() {
        if let CorpusData::Structure(f) = item.data {
            let s = f.to_structure().unwrap();
            if master_residual(&s).is_zero() {
                corpus_count += 1;
                bad.extend(
                    operator_checks(&s)
                        .into_iter()
                        .map(|c| format!("{}: {c}", item.name)),
                );
            }
        }
    }
    let mut rng = rng(6);
    for _ in 0..60 {
        let n = rng.gen_range(1..=4);
        let s = random_valid(&mut rng, n);
        bad.extend(
            operator_checks(&s)
                .into_iter()
                .map(|c| format!("random n={n}: {c}")),
        );
    }
    outcome(
        bad.is_empty(),
        format!("{corpus_count} corpus + 60 random structures, relations (a)-(d), Clifford, generator identities; {} failures {}", bad.len(), bad.first().cloned().unwrap_or_default()),
    )
}

fn polynomial_layer() -> Outcome {
    let mut bad = Vec::new();
    let (so3, _) = lookup_poly("so3_lie_poisson").unwrap();
    if !schouten(&so3, &so3).unwrap().is_zero() {
        bad.push("so3: [π,π] != 0".to_string());
    }
    if !modular_field(&so3, &standard_volume(3)).unwrap().is_zero() {
        bad.push("so3: x_ν != 0".to_string());
    }
    let (pi, psi) = lookup_poly("r4_twisted_pair").unwrap();
    let psi = psi.unwrap();
    let report = poisson_bg_report(&pi, &psi, 1).unwrap();
    for c in &report.checks {
        if !c.verdict() {
            bad.push(format!("r4 pair: {}", c.name));
        }
    }
    for name in ["r3_psi", "r3_volume"] {
        let (p, _) = lookup_poly(name).unwrap();
        let r = courant_axiom_check_poly(
            &p,
            &default_trial_sections(3, 1),
            &default_trial_functions(3),
        )
        .unwrap();
        if r.verdict("Loday Jacobi") != Some(true) {
            bad.push(format!("{name}: Loday Jacobi"));
        }
    }
    let r = courant_axiom_check_poly(
        &psi,
        &default_trial_sections(4, 1),
        &default_trial_functions(4),
    )
    .unwrap();
    if r.verdict("Loday Jacobi") != Some(true) {
        bad.push("r4 psi: Loday Jacobi".to_string());
    }
    let (nc, _) = lookup_poly("r4_nonclosed").unwrap();
    let r = courant_axiom_check_poly(
        &nc,
        &default_trial_sections(4, 1),
        &default_trial_functions(4),
    )
    .unwrap();
    let witness = r.get("Loday Jacobi").and_then(|c| c.witness.clone());
    if r.verdict("Loday Jacobi") != Some(false) || witness.is_none() {
        bad.push("r4_nonclosed: Jacobi failure not located".to_string());
    }
    outcome(
        bad.is_empty(),
        format!(
            "so3 Lie-Poisson, R^4 twisted pair ({} checks), closed and non-closed backgrounds (failure at {}) {}",
            report.checks.len(),
            witness.unwrap_or_default(),
            bad.join("; ")
        ),
    )
}

fn triangular() -> Outcome {
    let mut bad = Vec::new();
    for name in TRIANGULAR_NAMES {
        let (pi, _) = lookup_poly(name).unwrap();
        let r = triangular_deriving_checks(&pi, &standard_volume(pi.m()), 2).unwrap();
        for c in ["(d_π − ∂_ν + e_{x_ν})² = 0", "[d_π, ∂_ν] = L_{x_ν}"] {
            if r.verdict(c) != Some(true) {
                bad.push(format!("{name}: {c}"));
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!(
            "{} at coefficient degree <= 2 {}",
            TRIANGULAR_NAMES.join(", "),
            bad.join("; ")
        ),
    )
}

fn cli_contract() -> Outcome {
    let mut bad = common::check_golden();
    for (name, line, code) in common::GOLDEN {
        let j = format!("--json {line}");
        let first = common::cli(&j);
        if first != common::cli(&j) {
            bad.push(format!("{name}: not deterministic"));
        }
        if *code == 2 {
            continue;
        }
        match ReportDoc::from_json(&first.output) {
            Ok(doc) => {
                let again = ReportDoc::from_json(&doc.to_json()).unwrap();
                if again != doc || doc.verdict != (first.code == 0) {
                    bad.push(format!("{name}: JSON round trip or exit code"));
                }
            }
            Err(e) => bad.push(format!("{name}: {e}")),
        }
    }
    outcome(
        bad.is_empty(),
        format!(
            "{} golden commands; {}",
            common::GOLDEN.len(),
            bad.join("; ")
        ),
    )
}

type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

fn main() {
    let criteria: [Criterion; 9] = [
        (
            "big-bracket axioms",
            big_bracket_axioms,
            Some(Duration::from_secs(10)),
        ),
        (
            "master equation = five conditions",
            master_equivalence,
            None,
        ),
        ("double consistency", double_consistency, None),
        ("Dirac graph = condition residual", dirac_agreement, None),
        ("twist oracle", twist_oracle, None),
        (
            "deriving-operator relations",
            deriving_operator_relations,
            None,
        ),
        (
            "polynomial layer",
            polynomial_layer,
            Some(Duration::from_secs(60)),
        ),
        ("triangular square-zero", triangular, None),
        ("CLI contract", cli_contract, None),
    ];
    let mut failed = 0;
    for (k, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = run();
        let took = start.elapsed();
        let late = budget.is_some_and(|b| took > b);
        let pass = out.pass && !late;
        if !pass {
            failed += 1;
        }
        let budget = budget
            .map(|b| format!(", target < {}s", b.as_secs()))
            .unwrap_or_default();
        println!(
            "criterion {}: {} {name} [tolerance: exact, residual = 0; {:.2}s{budget}] {}",
            k + 1,
            if pass { "PASS" } else { "FAIL" },
            took.as_secs_f64(),
            out.detail.trim_end()
        );
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
