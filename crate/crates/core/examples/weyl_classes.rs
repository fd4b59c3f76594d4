//! Conjugacy classes of a Weyl group with an involution decomposition
//! `s = s1 s2` of each minimal representative.
//!
//! `cargo run --example weyl_classes -- B3`

use weylq::weyl::{conjugacy_classes, involution_decompose};
use weylq::RootSystem;

fn main() -> weylq::Result<()> {
    let label = std::env::args().nth(1).unwrap_or_else(|| "B3".into());
    let sys = RootSystem::build(&label)?;
    println!(
        "{label}: {} positive roots, Cartan matrix {:?}",
        sys.num_positive(),
        sys.cartan
    );
    for cl in conjugacy_classes(&sys)? {
        let s = &cl.representative;
        let dec = involution_decompose(s)?;
        println!(
            "word {:?}  size {}  order {}  l' {}  D0 {}  gamma1 {:?}  gamma2 {:?}",
            s.word(),
            cl.size,
            s.order(),
            s.l_prime(),
            s.fixed_positive_roots().len(),
            dec.gamma1,
            dec.gamma2
        );
    }
    Ok(())
}
