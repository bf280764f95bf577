//! Nearest points in a chamber of type B_2, with the face that receives each
//! point and the tangent and normal cones there.

use hypar::arith::{format_point, parse_point};
use hypar::cells::enumerate_chambers;
use hypar::cones::{normal_cone, tangent_cone, PreparedCell};
use hypar::gen::{generate, fundamental_point, GeneratorKind, GeneratorSpec};
use hypar::arrangement::sign_vector;

fn main() -> hypar::error::Result<()> {
    let arr = generate(&GeneratorSpec::new(GeneratorKind::TypeB, 2))?;
    let signs = sign_vector(&arr, &fundamental_point(2))?;
    let chamber = enumerate_chambers(&arr)?.into_iter().find(|c| c.signs == signs).unwrap();
    let cell = PreparedCell::from_chamber(&arr, &chamber)?;
    println!("chamber {} (contains (2, 1))", chamber.signs);

    for p in ["3,1", "1,3", "-2,1", "-1,-5", "1/2,-7/3"] {
        let x = parse_point(p)?;
        let r = cell.project(&x)?;
        println!("x = ({p})  ->  {}  on face {} (dim {})", format_point(&r.point), r.face.signs, r.k);
    }

    for face in cell.faces() {
        let t = tangent_cone(&arr, &chamber, face)?.with_generators();
        let n = normal_cone(&arr, &chamber, face)?.with_generators();
        println!(
            "face {}: {} tangent generators, {} normal generators",
            face.signs,
            t.generators.as_ref().map_or(0, Vec::len),
            n.generators.as_ref().map_or(0, Vec::len)
        );
    }
    Ok(())
}
