use std::io::Cursor;

use hlts_cli::format::{parse_workspace, print_workspace, Workspace};
use hlts_cli::{run_args, Outcome};
use hlts_core::bridge::post_lie_from_o;
use hlts_core::post_lts::post_lts_from_o;
use hlts_core::samples::{
    e4_curly_example, random_deformation, random_lie_operator, random_valid_operator, sample_rng,
    unextendable_example,
};
use proptest::prelude::*;
use serde_json::Value;

const E4: &str = include_str!("fixtures/e4.json");

fn run(args: &[&str], input: &str) -> Outcome {
    let mut all = vec!["hlts", "-i", "-"];
    all.extend_from_slice(args);
    run_args(all, &mut Cursor::new(input.as_bytes().to_vec()))
}

fn report(out: &Outcome) -> Value {
    serde_json::from_str(&out.stdout).unwrap()
}

/// A workspace touching every section, built from one seed.
fn generated(seed: u64) -> Workspace {
    let mut rng = sample_rng(seed);
    let op = random_valid_operator(&mut rng, 3);
    let d = random_deformation(&mut rng, &op, 2);
    let mut ws = Workspace::default();
    ws.insert_operator("A", "act", "g", "h", op.clone()).unwrap();
    ws.insert_deformation("D", "A", d).unwrap();
    ws.post_lts.insert("P".into(), post_lts_from_o(&op).unwrap());
    let s = random_lie_operator(&mut rng, 3);
    let induced = post_lie_from_o(&s.map, &s.action, &s.kappa).unwrap();
    ws.lie_algebras.insert("L".into(), s.action.algebra().clone());
    ws.lie_algebras.insert("M".into(), s.action.module().clone());
    ws.lie_actions.insert(
        "rho".into(),
        hlts_cli::format::LieActionEntry {
            algebra: "L".into(),
            module: "M".into(),
            action: s.action.clone(),
        },
    );
    ws.maps.insert(
        "B".into(),
        hlts_cli::format::MapEntry::Lie {
            action: "rho".into(),
            map: s.map,
            lie_action: s.action,
            kappa: s.kappa,
        },
    );
    ws.post_lie.insert("Q".into(), induced.post_lie);
    ws
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn printing_round_trips(seed in any::<u64>()) {
        let ws = generated(seed);
        let text = print_workspace(&ws);
        prop_assert_eq!(parse_workspace(&text).unwrap(), ws);
        prop_assert_eq!(print_workspace(&parse_workspace(&text).unwrap()), text);
    }
}

#[test]
fn fixture_resolves() {
    let ws = parse_workspace(E4).unwrap();
    assert_eq!((ws.algebras.len(), ws.actions.len(), ws.maps.len()), (1, 1, 1));
}

#[test]
fn reports_are_deterministic() {
    for args in [
        &["--format", "json", "check", "o-op", "A"][..],
        &["--format", "json", "cohomology", "A", "--degree", "1"],
        &["check", "action", "ad"],
        &["build", "post-from-o", "A"],
    ] {
        let a = run(args, E4);
        let b = run(args, E4);
        assert_eq!(a, b, "{args:?}");
    }
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["check", "lts", "E4"], E4).code, 0);
    assert_eq!(run(&["check", "lts", "nope"], E4).code, 2);
    assert_eq!(run(&["frobnicate"], E4).code, 2);
    assert_eq!(run(&["check", "lts", "E4"], "{\"algebras\": [").code, 2);
    // Deleting one skew partner breaks the bracket.
    let broken = E4.replace(",\n        {\"args\": [1, 0, 0], \"out\": {\"3\": -1}}", "");
    assert_ne!(broken, E4);
    let out = run(&["--format", "json", "check", "lts", "E4"], &broken);
    assert_eq!(out.code, 1);
    let r = report(&out);
    assert_eq!(r["status"], "fail");
    assert_eq!(r["checks"][0]["violations"][0]["identity"], "skew-symmetry");
}

#[test]
fn parse_errors_carry_locations() {
    let bad = E4.replace("\"kappa\": 1", "\"kappa\": \"1/0\"");
    let out = run(&["check", "lts", "E4"], &bad);
    assert_eq!(out.code, 2);
    assert!(out.stdout.contains("malformed rational"), "{}", out.stdout);
    assert!(out.stdout.contains("line 16"), "{}", out.stdout);

    let dangling = E4.replace("\"action\": \"ad\"", "\"action\": \"missing\"");
    let out = run(&["check", "lts", "E4"], &dangling);
    assert_eq!(out.code, 2);
    assert!(out.stdout.contains("maps.A.action: unknown action \"missing\""), "{}", out.stdout);
}

#[test]
fn built_documents_parse_and_check() {
    let out = run(&["build", "descent", "A"], E4);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let ws = parse_workspace(&out.stdout).unwrap();
    assert!(ws.algebras.contains_key("A_descent"));
    assert_eq!(run(&["check", "lts", "A_descent"], &out.stdout).code, 0);

    let out = run(&["--kappa", "2", "build", "semidirect", "ad"], E4);
    assert_eq!(run(&["check", "lts", "ad_semidirect"], &out.stdout).code, 0);

    let out = run(&["build", "post-from-o", "A"], E4);
    assert_eq!(run(&["check", "post-lts", "A_post"], &out.stdout).code, 0);
    let out = run(&["build", "adjacent", "A_post"], &out.stdout);
    assert_eq!(run(&["check", "lts", "A_post_adjacent"], &out.stdout).code, 0);
}

#[test]
fn lie_level_commands() {
    let ws = generated(7);
    let doc = print_workspace(&ws);
    for args in [
        &["check", "lie", "L"][..],
        &["check", "action", "rho"],
        &["check", "o-op", "B"],
        &["check", "post-lie", "Q"],
        &["bridge", "diagram", "Q"],
    ] {
        let out = run(args, &doc);
        assert_eq!(out.code, 0, "{args:?}: {}", out.stdout);
    }
    let out = run(&["build", "lts-from-lie", "B"], &doc);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(run(&["check", "o-op", "B_lts"], &out.stdout).code, 0);
    let out = run(&["build", "post-lts-from-post-lie", "Q"], &doc);
    assert_eq!(run(&["check", "post-lts", "Q_lts"], &out.stdout).code, 0);
}

#[test]
fn invalid_operator_is_a_finding() {
    let bad = E4.replace("[0, 1, 0, 0], [0, 0, 1, 0]", "[0, 1, 0, 0], [0, 0, 2, 1]");
    let out = run(&["--format", "json", "build", "descent", "A"], &bad);
    assert_eq!(out.code, 1, "{}", out.stdout);
    assert_eq!(report(&out)["status"], "fail");
}

#[test]
fn unextendable_deformation_reports_the_class() {
    let mut ws = Workspace::default();
    let d = unextendable_example();
    ws.insert_operator("A", "act", "g", "h", d.op().clone()).unwrap();
    ws.insert_deformation("D1", "A", d).unwrap();
    let doc = print_workspace(&ws);
    let out = run(&["deform", "extend", "D1"], &doc);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("[Obs] nonzero in H²"), "{}", out.stdout);
    let out = run(&["--format", "json", "deform", "obstruct", "D1"], &doc);
    assert_eq!(report(&out)["quantities"]["class_vanishes"], false);
}

#[test]
fn skew_completion_is_explicit() {
    let half = E4.replace(",\n        {\"args\": [1, 0, 0], \"out\": {\"3\": -1}}", "");
    assert_eq!(run(&["check", "lts", "E4"], &half).code, 1);
    let out = run(&["lint", "complete-skew", "E4"], &half);
    assert_eq!(out.code, 0);
    assert_eq!(parse_workspace(&out.stdout).unwrap(), parse_workspace(E4).unwrap());
    assert!(out.stdout.contains("\"adjoint\": true"));
}

#[test]
fn sample_documents_are_valid() {
    let out = run_args(["hlts", "sample", "--seed", "3"], &mut Cursor::new(Vec::new()));
    assert_eq!(out.code, 0);
    assert_eq!(run(&["check", "o-op", "A"], &out.stdout).code, 0);
}

#[test]
fn post_lts_example_fails_with_witnesses() {
    let mut ws = Workspace::default();
    ws.post_lts.insert("P".into(), e4_curly_example());
    let out = run(&["--format", "json", "check", "post-lts", "P"], &print_workspace(&ws));
    assert_eq!(out.code, 1);
    let r = report(&out);
    assert!(!r["checks"][0]["violations"].as_array().unwrap().is_empty());
}
