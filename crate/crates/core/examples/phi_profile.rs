//! The face-count profile phi_k(x) on the coordinate axes of the plane:
//! equal to the absolute coefficients away from the exceptional sets, larger
//! on them.

use hypar::arith::{format_point, vector};
use hypar::gen::{generate, GeneratorKind, GeneratorSpec};
use hypar::verify::Verifier;

fn main() -> hypar::error::Result<()> {
    let arr = generate(&GeneratorSpec::new(GeneratorKind::Boolean, 2))?;
    let v = Verifier::new(&arr)?;
    println!("a = {:?}", v.char_poly().abs());
    for x in [[3, 4], [0, 4], [-2, 0], [0, 0]] {
        let x = vector(&x);
        let p = v.phi(&x)?;
        let exceptional: Vec<bool> = (0..=2).map(|k| v.in_exceptional(k, &x).map(|r| r.member)).collect::<Result<_, _>>()?;
        println!(
            "x = ({}): phi = {:?}, chambers by projection dim = {:?}, in E_k = {:?}",
            format_point(&x),
            p.counts,
            p.projection_counts,
            exceptional
        );
    }
    let report = v.in_exceptional(1, &vector(&[0, 4]))?;
    for w in &report.witnesses {
        println!("(0,4) in E_1 via {:?} flat {:?} and {:?}", w.kind, w.flat, w.other);
    }
    Ok(())
}
