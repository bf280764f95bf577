//! Characteristic polynomials three ways: Moebius function of the
//! intersection poset, Whitney's subset sum, and the closed forms of the
//! reflection families.

use hypar::gen::{expected_charpoly, generate, GeneratorKind, GeneratorSpec};
use hypar::poset::{char_poly_level, char_poly_moebius, char_poly_whitney, intersection_poset};

fn main() -> hypar::error::Result<()> {
    for (kind, dim) in [
        (GeneratorKind::Boolean, 3),
        (GeneratorKind::BraidA, 4),
        (GeneratorKind::TypeB, 3),
        (GeneratorKind::TypeD, 4),
        (GeneratorKind::Triangle, 2),
    ] {
        let spec = GeneratorSpec::new(kind, dim);
        let arr = generate(&spec)?;
        let moebius = char_poly_moebius(&arr);
        let whitney = char_poly_whitney(&arr)?;
        assert_eq!(moebius, whitney);
        let closed = match expected_charpoly(&spec) {
            Ok(p) => format!("{}", p == moebius),
            Err(_) => "-".to_string(),
        };
        let flats = intersection_poset(&arr).counts_by_dim();
        println!("{kind} d={dim}: chi = {moebius}  a = {:?}  flats by dim {flats:?}  closed form ok: {closed}", moebius.abs());
    }

    // level-j polynomials sum the restrictions to the j-dimensional flats
    let b3 = generate(&GeneratorSpec::new(GeneratorKind::TypeB, 3))?;
    for j in 0..=3 {
        let p = char_poly_level(&b3, j)?;
        println!("type_B d=3, level {j}: {p}  a = {:?}", p.abs());
    }
    Ok(())
}
