//! The Cayley transform of a Coxeter element on the span of its gammas,
//! compared with the closed form `eps_ij (gamma_i, gamma_j)`.
//!
//! `cargo run --example cayley_transform -- G2`

use weylq::cayley::cayley_matrix;
use weylq::field::q_to_string;
use weylq::weyl::involution_decompose;
use weylq::{RootSystem, WeylElement};

fn main() -> weylq::Result<()> {
    let labels: Vec<String> = std::env::args().skip(1).collect();
    let labels = if labels.is_empty() {
        vec!["A3".into(), "B2".into(), "G2".into()]
    } else {
        labels
    };
    for label in labels {
        let sys = RootSystem::build(&label)?;
        let s = WeylElement::coxeter(&sys);
        let cd = cayley_matrix(&s, &involution_decompose(&s)?)?;
        println!(
            "{label} Coxeter element, gammas {:?}, d = {}",
            cd.gammas, cd.d
        );
        for row in &cd.cayley_on_gammas {
            let cells: Vec<String> = row.iter().map(q_to_string).collect();
            println!("  [{}]", cells.join(", "));
        }
        println!(
            "  closed form mismatches: {:?}",
            cd.closed_form_mismatches(&sys)
        );
    }
    Ok(())
}
