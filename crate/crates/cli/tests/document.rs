mod common;

use std::io::Write;

use common::*;
use proptest::prelude::*;
use sasakian_cli::document::AlgebraDocument;
use sasakian_cli::error::CliError;
use sasakian_cli::Factor;
use sasakian_products::scalar::rat;
use sasakian_products::{catalog, ExactSasaki, Rational};
use serde_json::Value;

const NAMES: &[&str] = &["su2", "h3", "sl2r", "h5", "h7", "abelian1"];

fn exact(name: &str) -> ExactSasaki {
    catalog::by_name(name).unwrap()
}

fn same_structure(x: &ExactSasaki, y: &ExactSasaki) {
    assert_eq!(x.name(), y.name());
    assert_eq!(x.algebra().structure_constants(), y.algebra().structure_constants());
    assert_eq!(x.metric(), y.metric());
    assert_eq!(x.phi(), y.phi());
    assert_eq!(x.xi(), y.xi());
    assert_eq!(x.eta(), y.eta());
}

fn write_doc(doc: &AlgebraDocument) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(doc.to_json().as_bytes()).unwrap();
    f
}

fn write_value(v: &Value) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(v.to_string().as_bytes()).unwrap();
    f
}

fn validation_message(result: Result<impl std::fmt::Debug, CliError>) -> String {
    match result {
        Err(e @ CliError::Validation(_)) | Err(e @ CliError::Geometry(_)) => {
            assert_eq!(e.exit_code(), 2);
            e.to_string()
        }
        other => panic!("expected a validation error, got {other:?}"),
    }
}

#[test]
fn catalog_documents_round_trip() {
    for name in NAMES {
        let s = exact(name);
        let doc = AlgebraDocument::from_structure(&s);
        assert!(doc.metric.is_none(), "{name}: catalog metrics are orthonormal");
        assert_eq!(AlgebraDocument::from_json(&doc.to_json()).unwrap(), doc);
        let back: ExactSasaki = doc.to_structure().unwrap();
        same_structure(&back, &s);
        assert_eq!(AlgebraDocument::from_structure(&back), doc);
    }
}

#[test]
fn h3_document_matches_hand_written_json() {
    let text = r#"{
        "name": "h3",
        "dim": 3,
        "brackets": [{ "i": 1, "j": 2, "coefficients": { "3": "2" } }],
        "structure": {
            "xi": ["0", "0", "1"],
            "eta": ["0", "0", "1"],
            "phi": [["0", "-1", "0"], ["1", "0", "0"], ["0", "0", "0"]]
        }
    }"#;
    let doc = AlgebraDocument::from_json(text).unwrap();
    assert_eq!(doc, AlgebraDocument::from_structure(&exact("h3")));
}

#[test]
fn homothetic_document_keeps_metric_and_geometry() {
    let s = exact("su2").d_homothety(&rat(2, 1)).unwrap();
    let doc = AlgebraDocument::from_structure(&s);
    let g = doc.metric.clone().expect("deformed metric is not the identity");
    assert_eq!(g[2][2], "4");
    assert_eq!(g[0][0], "2");
    assert_eq!(doc.structure.xi[2], "1/2");
    let back: ExactSasaki = AlgebraDocument::from_json(&doc.to_json()).unwrap().to_structure().unwrap();
    same_structure(&back, &s);

    // su(2)(s = 2) x h3 at (-1/2, 1/2) is CYT
    let file = write_doc(&doc);
    let path = file.path().to_str().unwrap();
    let r = json(&["analyze", path, "h3", "--a", "-1/2", "--b", "1/2"]);
    assert_eq!(flag(&r, "bismut.cyt"), Value::Bool(true));
    assert_eq!(flag(&r, "input.factor1.source"), "file");
    assert_eq!(flag(&r, "factors.0.eta_einstein.lambda"), "0");
    let echoed: AlgebraDocument = serde_json::from_value(flag(&r, "input.factor1.document")).unwrap();
    assert_eq!(echoed, doc);
}

#[test]
fn file_factor_matches_catalog_factor() {
    let file = write_doc(&AlgebraDocument::from_structure(&exact("h3")));
    let path = file.path().to_str().unwrap();
    for (a, b) in [("-1", "1"), ("0", "2"), ("3/7", "-5/3")] {
        let from_file = json(&["analyze", path, "su2", "--a", a, "--b", b]);
        let from_catalog = json(&["analyze", "h3", "su2", "--a", a, "--b", b]);
        for section in ["factors", "hermitian", "harmonicity", "bismut"] {
            assert_eq!(from_file[section], from_catalog[section], "{section} at ({a}, {b})");
        }
    }
}

#[test]
fn catalog_names_resolve_before_files() {
    let dir = tempfile::tempdir().unwrap();
    let decoy = AlgebraDocument::from_structure(&exact("h3"));
    std::fs::write(dir.path().join("su2"), decoy.to_json()).unwrap();
    std::env::set_current_dir(dir.path()).unwrap();
    assert!(std::path::Path::new("su2").is_file());
    assert!(matches!(Factor::resolve("su2").unwrap(), Factor::Catalog(_)));
    let missing = Factor::resolve("no-such-algebra.json").unwrap_err();
    assert!(matches!(missing, CliError::Usage(_)));
    assert_eq!(missing.exit_code(), 2);
}

fn h3_value() -> Value {
    serde_json::to_value(AlgebraDocument::from_structure(&exact("h3"))).unwrap()
}

#[test]
fn jacobi_violation_is_located() {
    // [e1,e2] = e3, [e2,e3] = e1, [e3,e1] = e1 + e2
    let mut v = h3_value();
    v["brackets"] = serde_json::json!([
        { "i": 1, "j": 2, "coefficients": { "3": "1" } },
        { "i": 2, "j": 3, "coefficients": { "1": "1" } },
        { "i": 1, "j": 3, "coefficients": { "1": "-1", "2": "-1" } }
    ]);
    let doc: AlgebraDocument = serde_json::from_value(v).unwrap();
    let msg = validation_message(doc.to_structure::<Rational>());
    assert!(msg.contains("Jacobi identity fails at (e1, e2, e3)"), "{msg}");
}

#[test]
fn malformed_documents_are_rejected() {
    let cases: Vec<(&str, Box<dyn Fn(&mut Value)>, &str)> = vec![
        ("i >= j", Box::new(|v| v["brackets"][0]["i"] = 2.into()), "1 <= i < j"),
        ("index out of range", Box::new(|v| v["brackets"][0]["j"] = 4.into()), "1 <= i < j"),
        (
            "coefficient index",
            Box::new(|v| v["brackets"][0]["coefficients"] = serde_json::json!({ "5": "1" })),
            "basis index 5",
        ),
        (
            "bad rational",
            Box::new(|v| v["brackets"][0]["coefficients"]["3"] = "1/0".into()),
            "zero denominator",
        ),
        ("xi length", Box::new(|v| v["structure"]["xi"] = serde_json::json!(["0", "1"])), "xi has 2"),
        ("even dim", Box::new(|v| v["dim"] = 4.into()), "odd"),
        (
            "duplicate bracket",
            Box::new(|v| {
                let b = v["brackets"][0].clone();
                v["brackets"].as_array_mut().unwrap().push(b);
            }),
            "twice",
        ),
        (
            "indefinite metric",
            Box::new(|v| {
                v["metric"] = serde_json::json!([["1", "0", "0"], ["0", "-1", "0"], ["0", "0", "1"]])
            }),
            "positive definite",
        ),
    ];
    for (what, edit, needle) in cases {
        let mut v = h3_value();
        edit(&mut v);
        let doc: AlgebraDocument = serde_json::from_value(v).unwrap();
        let msg = validation_message(doc.to_structure::<Rational>());
        assert!(msg.contains(needle), "{what}: {msg}");
    }
    let mut v = h3_value();
    v["extra"] = 1.into();
    let msg = validation_message(AlgebraDocument::from_json(&v.to_string()));
    assert!(msg.contains("unknown field"), "{msg}");
}

#[test]
fn non_sasakian_factor_fails_with_axiom_diagnostics() {
    // reversing phi keeps the almost contact metric axioms and breaks d eta = 2 Phi
    let mut v = h3_value();
    v["structure"]["phi"] = serde_json::json!([["0", "1", "0"], ["-1", "0", "0"], ["0", "0", "0"]]);
    let file = write_value(&v);
    let path = file.path().to_str().unwrap();
    let msg = validation_message(invoke(&["analyze", path, "su2", "--a", "0", "--b", "1"]));
    assert!(msg.contains("not Sasakian"), "{msg}");
    assert!(msg.contains("d eta != 2 Phi"), "{msg}");
    assert!(!msg.contains("phi^2"), "{msg}");
}

fn positive_rational() -> impl Strategy<Value = Rational> {
    (1i64..40, 1i64..40).prop_map(|(p, q)| rat(p, q))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn deformed_documents_round_trip(idx in 0usize..4, s in positive_rational()) {
        let name = ["su2", "h3", "sl2r", "h5"][idx];
        let deformed = exact(name).d_homothety(&s).unwrap();
        let doc = AlgebraDocument::from_structure(&deformed);
        let reloaded = AlgebraDocument::from_json(&doc.to_json()).unwrap();
        prop_assert_eq!(&reloaded, &doc);
        let back: ExactSasaki = reloaded.to_structure().unwrap();
        prop_assert!(back.verify().is_sasakian());
        prop_assert_eq!(AlgebraDocument::from_structure(&back), doc);
        prop_assert_eq!(
            back.eta_einstein_constants().map(|c| c.lambda),
            deformed.eta_einstein_constants().map(|c| c.lambda)
        );
    }
}
