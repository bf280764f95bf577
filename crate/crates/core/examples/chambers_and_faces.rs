//! Chambers, their faces and boundedness for the triangle arrangement.

use hypar::cells::{classify_chamber, CellComplex};
use hypar::gen::{generate, GeneratorKind, GeneratorSpec};

fn main() -> hypar::error::Result<()> {
    let arr = generate(&GeneratorSpec::new(GeneratorKind::Triangle, 2))?;
    let complex = CellComplex::build(&arr)?;
    println!("{} chambers, {} faces in total", complex.chambers.len(), complex.faces.len());
    for (c, chamber) in complex.chambers.iter().enumerate() {
        println!(
            "{}  witness {}  {:?}  f-vector {:?}",
            chamber.signs,
            hypar::arith::format_point(&chamber.witness),
            classify_chamber(&arr, chamber),
            complex.f_vector(c)
        );
    }
    for j in 0..=2 {
        let rj = complex.rj(j);
        let names: Vec<String> = rj.iter().map(|&f| complex.faces[f].signs.to_string()).collect();
        println!("{j}-faces: {}", names.join(" "));
    }
    Ok(())
}
