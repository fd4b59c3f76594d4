//! Per-class slice dimensions for every root system of rank at most 4.
//!
//! ```text
//! cargo run --example class_table [LABEL...]
//! ```

use weylq::slice::{class_table, table_to_csv};
use weylq::RootSystem;

fn main() -> weylq::Result<()> {
    let mut labels: Vec<String> = std::env::args().skip(1).collect();
    if labels.is_empty() {
        labels = [
            "A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "F4", "G2",
        ]
        .map(String::from)
        .to_vec();
    }
    for label in labels {
        let sys = RootSystem::build(&label)?;
        let t = std::time::Instant::now();
        let rows = class_table(&sys)?;
        let simple = rows.iter().filter(|r| r.simple_gammas).count();
        println!(
            "# {label}: {} classes, {simple} with simple gammas, {:.2?}",
            rows.len(),
            t.elapsed()
        );
        print!("{}", table_to_csv(&rows)?);
    }
    Ok(())
}
