//! Monte Carlo conic intrinsic volumes of the chambers of type B_2; the
//! per-sample counts always add up to the coefficients, and the quadrant's
//! estimate sits near (1/4, 1/2, 1/4).

use hypar::gen::{generate, GeneratorKind, GeneratorSpec};
use hypar::mc::{estimate_intrinsic_volumes, verify_klivans_swartz};

fn main() -> hypar::error::Result<()> {
    let b2 = generate(&GeneratorSpec::new(GeneratorKind::TypeB, 2))?;
    let r = verify_klivans_swartz(&b2, 20_000, 1, None, 4.0)?;
    println!("type_B d=2, a = {:?}, aggregate {:?}", r.a, r.estimate.aggregate);
    for c in &r.estimate.cells {
        let nu: Vec<String> = c.nu.iter().map(|v| format!("{v:.3}")).collect();
        println!("  {}  nu = ({})", c.signs, nu.join(", "));
    }

    let quadrants = generate(&GeneratorSpec::new(GeneratorKind::Boolean, 2))?;
    let e = estimate_intrinsic_volumes(&quadrants, 20_000, 2)?;
    let q = e.cells.iter().find(|c| c.signs == "++").unwrap();
    println!("quadrant: nu = {:.4?} +- {:.4?}", q.nu, q.std_errors);
    Ok(())
}
