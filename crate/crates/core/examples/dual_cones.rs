//! Polar chamber cones of a linear arrangement: generic points lie in a_0
//! of them, points of some L-perp in at least that many.

use hypar::arith::format_point;
use hypar::gen::{generate, GeneratorKind, GeneratorSpec};
use hypar::verify::{polar_exceptional_points, random_points, Verifier};

fn main() -> hypar::error::Result<()> {
    let arr = generate(&GeneratorSpec::new(GeneratorKind::BraidA, 3))?;
    let v = Verifier::new(&arr)?;
    println!("braid_A n=3: a_0 = {}", v.char_poly().abs()[0]);
    for x in random_points(3, 4, 1) {
        let r = v.verify_prop_k0(&x)?;
        println!("generic {}: in {} polar cones", format_point(&x), r.count);
    }
    for x in polar_exceptional_points(&v, 4, 2)? {
        let r = v.verify_prop_k0(&x)?;
        println!("special {}: in {} polar cones", format_point(&x), r.count);
    }

    let b3 = generate(&GeneratorSpec::new(GeneratorKind::TypeB, 3))?;
    let v = Verifier::new(&b3)?;
    v.verify_polar_cover(&random_points(3, 200, 3))?;
    let b = v.verify_boundary_identity(3, 4)?;
    println!(
        "type_B d=3: 200 points covered; {} L-perp points on polar boundaries, {} boundary points in some L-perp",
        b.normal_space_points, b.boundary_points
    );
    Ok(())
}
