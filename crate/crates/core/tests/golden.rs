//! Regression anchors for the quantum-group pipeline. Regenerate with
//! `cargo run --example quantum_relations -- --write fixtures/qalgebra`
//! only after an independent check of the new values.

use serde_json::Value;
use weylq::qalgebra::{check_element, root_vectors};
use weylq::{RootSystem, WeylElement};

fn frozen(text: &str) -> Value {
    serde_json::from_str(text).unwrap()
}

#[test]
fn root_vector_tables() {
    for (label, text) in [
        (
            "A2",
            include_str!("../fixtures/qalgebra/A2_root_vectors.json"),
        ),
        (
            "B2",
            include_str!("../fixtures/qalgebra/B2_root_vectors.json"),
        ),
    ] {
        let sys = RootSystem::build(label).unwrap();
        let table = root_vectors(&sys, WeylElement::longest(&sys).word()).unwrap();
        assert_eq!(table.to_json(), frozen(text), "{label}");
    }
}

#[test]
fn coxeter_twisted_tables() {
    for (label, text) in [
        (
            "A2",
            include_str!("../fixtures/qalgebra/A2_coxeter_twisted.json"),
        ),
        (
            "B2",
            include_str!("../fixtures/qalgebra/B2_coxeter_twisted.json"),
        ),
    ] {
        let sys = RootSystem::build(label).unwrap();
        let check = check_element(&WeylElement::coxeter(&sys), None).unwrap();
        assert!(check.ok());
        assert_eq!(check.to_json(), frozen(text), "{label}");
    }
}
