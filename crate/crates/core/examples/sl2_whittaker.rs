//! The Casimir of `C_eps[SL_2^*]`, its Whittaker module and the ranks of
//! `e - 1` degree by degree, for a formal and a root-of-unity `eps`.
//!
//! `cargo run --example sl2_whittaker`

use weylq::sl2w::{symbolic, whittaker_and_hecke, Epsilon, ModuleVector};

fn main() -> weylq::Result<()> {
    let alg = symbolic()?;
    println!("Omega (eps printed as q) = {}", alg.omega());
    println!("Omega central: {}", alg.omega_is_central());
    println!(
        "f v_00 = {:?}",
        alg.act(&alg.f(), &ModuleVector::basis(0, 0)).terms
    );
    for eps in [Epsilon::Symbolic, Epsilon::RootOfUnity(3)] {
        let r = whittaker_and_hecke(&eps, 4, 3)?;
        println!(
            "eps = {eps}: Whittaker basis {:?}, Hk0 by degree {:?}, Hk1 by degree {:?}",
            r.whittaker_basis, r.hk0_by_degree, r.hk1_by_degree
        );
    }
    Ok(())
}
