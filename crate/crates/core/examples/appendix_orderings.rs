//! Regenerates the compatible orderings for the exceptional-style appendix
//! types and checks each against its rules.
//!
//! `cargo run --release --example appendix_orderings -- B3 F4`
//! `cargo run --release --example appendix_orderings -- --write fixtures/appendix`

use std::time::Instant;
use weylq::ordering::{appendix_labels, generate_appendix_fixture, validate_appendix_fixture};

fn main() -> weylq::Result<()> {
    let mut args: Vec<String> = std::env::args().skip(1).collect();
    let out_dir = match args.iter().position(|a| a == "--write") {
        Some(i) => {
            let dir = args.get(i + 1).cloned().expect("--write needs a directory");
            args.drain(i..i + 2);
            Some(dir)
        }
        None => None,
    };
    let labels: Vec<String> = if args.is_empty() {
        appendix_labels().iter().map(|s| s.to_string()).collect()
    } else {
        args
    };
    for label in labels {
        let t = Instant::now();
        let fx = generate_appendix_fixture(&label, 50_000_000)?;
        let problems = validate_appendix_fixture(&fx)?;
        println!(
            "{label}: {} roots, {} gammas, {} rule violations, {:.2?}",
            fx.ordering.len(),
            fx.decomposition.gammas().len(),
            problems.len(),
            t.elapsed()
        );
        for p in &problems {
            println!("  {p}");
        }
        if let Some(dir) = &out_dir {
            let path = format!("{dir}/{label}.json");
            std::fs::write(&path, fixture_text(&fx.to_json()))
                .map_err(|e| weylq::Error::Parse(e.to_string()))?;
            println!("  wrote {path}");
        } else {
            println!(
                "  {}",
                serde_json::to_string(&fx.ordering.sequence()).unwrap()
            );
        }
    }
    Ok(())
}

/// One root per line keeps the fixtures diffable.
fn fixture_text(v: &serde_json::Value) -> String {
    let rows = |key: &str| -> String {
        v[key]
            .as_array()
            .unwrap()
            .iter()
            .map(|r| format!("    {r}"))
            .collect::<Vec<_>>()
            .join(",\n")
    };
    format!(
        "{{\n  \"schema\": {},\n  \"label\": {},\n  \"gammas\": [\n{}\n  ],\n  \"ordering\": [\n{}\n  ]\n}}\n",
        v["schema"],
        v["label"],
        rows("gammas"),
        rows("ordering")
    )
}
