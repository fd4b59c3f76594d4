//! Root vectors, twisted straightening relations and the character check
//! for one Weyl group element.
//!
//! `cargo run --example quantum_relations -- B2 1,2`
//! `cargo run --example quantum_relations -- --write fixtures/qalgebra`

use weylq::qalgebra::{check_element, root_vectors};
use weylq::{RootSystem, WeylElement};

fn main() -> weylq::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if let Some(i) = args.iter().position(|a| a == "--write") {
        let dir = args.get(i + 1).expect("--write needs a directory");
        return write_golden(dir);
    }
    let label = args.first().map(String::as_str).unwrap_or("A2");
    let sys = RootSystem::build(label)?;
    let s = match args.get(1) {
        Some(w) => {
            let word: Vec<usize> = w
                .split(',')
                .map(|x| x.trim().parse().expect("index"))
                .collect();
            WeylElement::from_word(&sys, &word)?
        }
        None => WeylElement::coxeter(&sys),
    };
    let check = check_element(&s, None)?;
    println!("{label}, s = {:?}", s.word());
    println!(
        "gammas (standard coordinates): {:?}",
        check.standard.decomposition.gammas()
    );
    println!("segment: {:?}", check.standard.m_plus_roots());
    for r in &check.relations {
        let rhs: Vec<String> = r
            .rhs
            .iter()
            .map(|t| {
                let f: Vec<String> = t
                    .factors
                    .iter()
                    .map(|(b, k)| format!("e{b:?}^{k}"))
                    .collect();
                format!("({}) {}", t.coeff, f.join(" "))
            })
            .collect();
        println!(
            "  e{:?} e{:?} - q^({}) e{:?} e{:?} = {}",
            r.alpha,
            r.beta,
            r.qpower,
            r.beta,
            r.alpha,
            if rhs.is_empty() {
                "0".into()
            } else {
                rhs.join(" + ")
            }
        );
    }
    println!("character residuals vanish: {}", check.report.ok());
    println!(
        "coefficients in the localized ring: {}",
        check.outside_localization.is_empty()
    );
    Ok(())
}

fn write_golden(dir: &str) -> weylq::Result<()> {
    for label in ["A2", "B2"] {
        let sys = RootSystem::build(label)?;
        let w0 = WeylElement::longest(&sys);
        let table = root_vectors(&sys, w0.word())?;
        let path = format!("{dir}/{label}_root_vectors.json");
        std::fs::write(
            &path,
            serde_json::to_string_pretty(&table.to_json()).unwrap() + "\n",
        )
        .expect("write");
        let check = check_element(&WeylElement::coxeter(&sys), None)?;
        let path2 = format!("{dir}/{label}_coxeter_twisted.json");
        std::fs::write(
            &path2,
            serde_json::to_string_pretty(&check.to_json()).unwrap() + "\n",
        )
        .expect("write");
        println!("wrote {path} and {path2}");
    }
    Ok(())
}
