//! Face counts of the j-dimensional cells of type D_3 against the level-j
//! coefficients, at random rational points.

use hypar::gen::{generate, GeneratorKind, GeneratorSpec};
use hypar::verify::{random_points, Verifier};

fn main() -> hypar::error::Result<()> {
    let arr = generate(&GeneratorSpec::new(GeneratorKind::TypeD, 3))?;
    let v = Verifier::new(&arr)?;
    let points = random_points(3, 5, 42);
    for j in 0..=3 {
        println!("j = {j}: {} cells, a_kj = {:?}", v.level_cells(j)?.len(), v.level_coefficients(j)?);
        for x in &points {
            let r = v.verify_theorem_j_level(j, x)?;
            println!("  {}  counts {:?}  exceptional {:?}", hypar::arith::format_point(x), r.counts, r.exceptional);
        }
    }
    Ok(())
}
