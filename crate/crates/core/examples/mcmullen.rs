//! Alternating sums of face indicators over a chamber: 1 for bounded
//! chambers, 0 for unbounded line-free ones, at every point of the space.

use hypar::cells::Boundedness;
use hypar::gen::{generate, GeneratorKind, GeneratorSpec};
use hypar::verify::Verifier;

fn main() -> hypar::error::Result<()> {
    let arr = generate(&GeneratorSpec::new(GeneratorKind::Triangle, 2))?;
    let v = Verifier::new(&arr)?;
    for (c, chamber) in v.complex().chambers.iter().enumerate() {
        let points = v.mcmullen_points(c, 40, 9);
        let mut kind = Boundedness::HasLine;
        for x in &points {
            let r = v.verify_mcmullen(c, x)?;
            kind = r.boundedness;
        }
        println!("chamber {}: {:?}, alternating sum constant over {} points", chamber.signs, kind, points.len());
    }
    Ok(())
}
