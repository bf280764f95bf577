//! Project the orbit of a point under a reflection group onto the
//! fundamental chamber and count by face dimension.

use hypar::arith::ratio;
use hypar::gen::GeneratorKind;
use hypar::verify::verify_orbit_reflection;

fn main() -> hypar::error::Result<()> {
    let cases = [
        (GeneratorKind::BraidA, vec![ratio(1, 1), ratio(5, 1), ratio(2, 1)]),
        (GeneratorKind::TypeB, vec![ratio(2, 1), ratio(5, 1)]),
        (GeneratorKind::TypeB, vec![ratio(7, 3), ratio(-5, 1), ratio(2, 7)]),
        (GeneratorKind::TypeD, vec![ratio(3, 1), ratio(-1, 2), ratio(4, 5)]),
    ];
    for (kind, x) in cases {
        let r = verify_orbit_reflection(kind, x.len(), &x)?;
        println!("{kind} d={}: |W| = {}, orbit counts {:?}, a = {:?}", r.dim, r.group_order, r.counts, r.a);
    }
    Ok(())
}
