//! Every generator family, written as JSON and read back.

use hypar::arrangement::Arrangement;
use hypar::gen::{generate, GeneratorSpec, GeneratorKind};

fn main() -> hypar::error::Result<()> {
    let specs = [
        GeneratorSpec::new(GeneratorKind::Boolean, 3),
        GeneratorSpec::new(GeneratorKind::BraidA, 4),
        GeneratorSpec::new(GeneratorKind::TypeB, 3),
        GeneratorSpec::new(GeneratorKind::TypeD, 3),
        GeneratorSpec::dihedral(5),
        GeneratorSpec::new(GeneratorKind::ParallelPair, 2),
        GeneratorSpec::new(GeneratorKind::Triangle, 2),
        GeneratorSpec::random(3, 6, 2024),
    ];
    for spec in &specs {
        let arr = generate(spec)?;
        let back = Arrangement::from_json_str(&arr.to_json_string())?;
        assert_eq!(back, arr);
        println!("{:<13} d={} m={:<2} rank {} linear {}", spec.kind.name(), arr.dim(), arr.len(), arr.rank(), arr.is_linear());
    }
    println!("{}", generate(&GeneratorSpec::new(GeneratorKind::Triangle, 2))?.to_json_string());
    Ok(())
}
