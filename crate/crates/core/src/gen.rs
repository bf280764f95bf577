//! Arrangement generators: reflection families, small fixed examples, and
//! seeded random arrangements.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{self, Rational, Vector};
use crate::arrangement::{Arrangement, Hyperplane};
use crate::error::{Error, Result};
use crate::poset::CharPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GeneratorKind {
    /// Coordinate hyperplanes `x_i = 0`.
    Boolean,
    /// `x_i = x_j` in `R^n`.
    BraidA,
    /// `x_i = 0`, `x_i ± x_j = 0`.
    TypeB,
    /// `x_i ± x_j = 0`.
    TypeD,
    /// `m` distinct lines through the origin of `R^2`.
    Dihedral,
    /// `x_1 = 0`, `x_1 = 1`.
    ParallelPair,
    /// `x_1 = 0`, `x_2 = 0`, `x_1 + x_2 = 1`.
    Triangle,
    Random,
}

impl GeneratorKind {
    pub const ALL: [GeneratorKind; 8] = [
        GeneratorKind::Boolean,
        GeneratorKind::BraidA,
        GeneratorKind::TypeB,
        GeneratorKind::TypeD,
        GeneratorKind::Dihedral,
        GeneratorKind::ParallelPair,
        GeneratorKind::Triangle,
        GeneratorKind::Random,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GeneratorKind::Boolean => "boolean",
            GeneratorKind::BraidA => "braid_A",
            GeneratorKind::TypeB => "type_B",
            GeneratorKind::TypeD => "type_D",
            GeneratorKind::Dihedral => "dihedral",
            GeneratorKind::ParallelPair => "parallel_pair",
            GeneratorKind::Triangle => "triangle",
            GeneratorKind::Random => "random",
        }
    }
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GeneratorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('-', "_");
        let kind = match key.as_str() {
            "boolean" => GeneratorKind::Boolean,
            "braid_a" | "braid" | "a" => GeneratorKind::BraidA,
            "type_b" | "b" => GeneratorKind::TypeB,
            "type_d" | "d" => GeneratorKind::TypeD,
            "dihedral" | "i2" => GeneratorKind::Dihedral,
            "parallel_pair" => GeneratorKind::ParallelPair,
            "triangle" => GeneratorKind::Triangle,
            "random" => GeneratorKind::Random,
            _ => return Err(Error::BadParams(format!("unknown generator kind {s:?}"))),
        };
        Ok(kind)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    pub dim: usize,
    /// Line count for `dihedral`, hyperplane count for `random`.
    pub count: Option<usize>,
    pub seed: Option<u64>,
}

impl GeneratorSpec {
    pub fn new(kind: GeneratorKind, dim: usize) -> Self {
        GeneratorSpec { kind, dim, count: None, seed: None }
    }

    pub fn dihedral(m: usize) -> Self {
        GeneratorSpec { kind: GeneratorKind::Dihedral, dim: 2, count: Some(m), seed: None }
    }

    pub fn random(dim: usize, count: usize, seed: u64) -> Self {
        GeneratorSpec { kind: GeneratorKind::Random, dim, count: Some(count), seed: Some(seed) }
    }
}

fn linear(dim: usize, entries: &[(usize, i64)]) -> Hyperplane {
    let mut n = vec![0i64; dim];
    for &(i, v) in entries {
        n[i] = v;
    }
    Hyperplane::linear(&n).expect("nonzero normal")
}

pub fn generate(spec: &GeneratorSpec) -> Result<Arrangement> {
    let d = spec.dim;
    let need_dim = |want: usize| {
        if d != want {
            Err(Error::BadParams(format!("{} lives in dimension {want}, got {d}", spec.kind)))
        } else {
            Ok(())
        }
    };
    let hs: Vec<Hyperplane> = match spec.kind {
        GeneratorKind::Boolean => (0..d).map(|i| linear(d, &[(i, 1)])).collect(),
        GeneratorKind::BraidA => {
            if d == 0 {
                return Err(Error::BadParams("braid_A needs n >= 1".into()));
            }
            (0..d).tuple_combinations().map(|(i, j)| linear(d, &[(i, 1), (j, -1)])).collect()
        }
        GeneratorKind::TypeB => {
            if d == 0 {
                return Err(Error::BadParams("type_B needs d >= 1".into()));
            }
            let mut hs: Vec<Hyperplane> = (0..d).map(|i| linear(d, &[(i, 1)])).collect();
            for (i, j) in (0..d).tuple_combinations() {
                hs.push(linear(d, &[(i, 1), (j, -1)]));
                hs.push(linear(d, &[(i, 1), (j, 1)]));
            }
            hs
        }
        GeneratorKind::TypeD => {
            if d == 0 {
                return Err(Error::BadParams("type_D needs d >= 1".into()));
            }
            let mut hs = Vec::new();
            for (i, j) in (0..d).tuple_combinations() {
                hs.push(linear(d, &[(i, 1), (j, -1)]));
                hs.push(linear(d, &[(i, 1), (j, 1)]));
            }
            hs
        }
        GeneratorKind::Dihedral => {
            need_dim(2)?;
            let m = spec.count.ok_or_else(|| Error::BadParams("dihedral needs a line count".into()))?;
            if m == 0 {
                return Err(Error::BadParams("dihedral needs m >= 1".into()));
            }
            dihedral_lines(m)
        }
        GeneratorKind::ParallelPair => {
            need_dim(2)?;
            vec![
                Hyperplane::from_ints(&[1, 0], 0)?,
                Hyperplane::from_ints(&[1, 0], 1)?,
            ]
        }
        GeneratorKind::Triangle => {
            need_dim(2)?;
            vec![
                Hyperplane::from_ints(&[1, 0], 0)?,
                Hyperplane::from_ints(&[0, 1], 0)?,
                Hyperplane::from_ints(&[1, 1], 1)?,
            ]
        }
        GeneratorKind::Random => {
            let m = spec.count.ok_or_else(|| Error::BadParams("random needs a count".into()))?;
            let seed = spec.seed.ok_or_else(|| Error::BadParams("random needs a seed".into()))?;
            random_hyperplanes(d, m, seed)?
        }
    };
    Arrangement::new(d, hs)
}

/// `m` lines through the origin whose directions `(q²-p², 2pq)` come from
/// rational half-angle tangents `p/q` near `tan(πk/2m)`, so the lines are
/// close to equally spaced while staying exactly rational.
fn dihedral_lines(m: usize) -> Vec<Hyperplane> {
    const Q: i64 = 64;
    let mut last = -1i64;
    let mut out = Vec::with_capacity(m);
    for k in 0..m {
        let t = (std::f64::consts::PI * k as f64 / (2.0 * m as f64)).tan();
        let mut p = (t * Q as f64).round() as i64;
        if p <= last {
            p = last + 1;
        }
        last = p;
        // normal of the direction (q²-p², 2pq)
        let normal = [-2 * p * Q, Q * Q - p * p];
        out.push(Hyperplane::linear(&normal).expect("nonzero"));
    }
    out
}

/// Normals from `{-3..3}^d \ {0}`, offsets from `{-2..2}`; coincident draws
/// are rejected and redrawn.
fn random_hyperplanes(d: usize, m: usize, seed: u64) -> Result<Vec<Hyperplane>> {
    if d == 0 && m > 0 {
        return Err(Error::BadParams("no hyperplanes exist in dimension 0".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<Hyperplane> = Vec::with_capacity(m);
    let mut attempts = 0usize;
    while out.len() < m {
        attempts += 1;
        if attempts > 100_000 {
            return Err(Error::BadParams(format!("could not draw {m} distinct hyperplanes in R^{d}")));
        }
        let normal: Vec<i64> = (0..d).map(|_| rng.gen_range(-3..=3)).collect();
        let offset: i64 = rng.gen_range(-2..=2);
        if normal.iter().all(|&v| v == 0) {
            continue;
        }
        let h = Hyperplane::from_ints(&normal, offset)?;
        if !out.contains(&h) {
            out.push(h);
        }
    }
    Ok(out)
}

/// Known closed-form characteristic polynomials.
pub fn expected_charpoly(spec: &GeneratorSpec) -> Result<CharPoly> {
    let d = spec.dim as i64;
    let odd = |n: i64| (1..=n).map(|i| 2 * i - 1).collect::<Vec<_>>();
    let poly = match spec.kind {
        GeneratorKind::Boolean => CharPoly::from_roots(&vec![1; spec.dim], 0),
        GeneratorKind::BraidA => {
            if d == 0 {
                return Err(Error::BadParams("braid_A needs n >= 1".into()));
            }
            CharPoly::from_roots(&(1..d).collect::<Vec<_>>(), 1)
        }
        GeneratorKind::TypeB => CharPoly::from_roots(&odd(d), 0),
        GeneratorKind::TypeD => {
            if d == 0 {
                return Err(Error::BadParams("type_D needs d >= 1".into()));
            }
            let mut roots = odd(d - 1);
            roots.push(d - 1);
            CharPoly::from_roots(&roots, 0)
        }
        GeneratorKind::Dihedral => {
            let m = spec.count.ok_or_else(|| Error::BadParams("dihedral needs a line count".into()))? as i64;
            CharPoly { degree: 2, coeffs: vec![m - 1, -m, 1] }
        }
        other => return Err(Error::NoClosedForm(other.to_string())),
    };
    Ok(poly)
}

/// A signed permutation matrix: `(g x)_i = signs[i] * x[perm[i]]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedPermutation {
    pub perm: Vec<usize>,
    pub signs: Vec<i8>,
}

impl SignedPermutation {
    pub fn apply(&self, x: &[Rational]) -> Vector {
        self.perm
            .iter()
            .zip(&self.signs)
            .map(|(&p, &s)| if s < 0 { -x[p].clone() } else { x[p].clone() })
            .collect()
    }

    /// Image of a hyperplane `{<z, y> = c}` under the map, i.e. `{<g⁻¹ w, y> = c}`.
    pub fn apply_hyperplane(&self, h: &Hyperplane) -> Result<Hyperplane> {
        // <g^{-1} w, y> = <w, g y> for orthogonal g.
        Hyperplane::new(self.apply(h.normal()), h.offset().clone())
    }
}

/// Elements of the reflection groups of type A (on `R^n`), B and D as signed
/// permutation matrices.
pub fn reflection_group(kind: GeneratorKind, dim: usize) -> Result<Vec<SignedPermutation>> {
    let perms: Vec<Vec<usize>> = (0..dim).permutations(dim).collect();
    let sign_patterns = |filter: &dyn Fn(&[i8]) -> bool| -> Vec<Vec<i8>> {
        (0..dim)
            .map(|_| [1i8, -1])
            .multi_cartesian_product()
            .filter(|s| filter(s))
            .collect()
    };
    let signs: Vec<Vec<i8>> = match kind {
        GeneratorKind::BraidA => vec![vec![1; dim]],
        GeneratorKind::TypeB => {
            if dim == 0 {
                vec![vec![]]
            } else {
                sign_patterns(&|_| true)
            }
        }
        GeneratorKind::TypeD => {
            if dim == 0 {
                vec![vec![]]
            } else {
                sign_patterns(&|s| s.iter().filter(|&&v| v < 0).count() % 2 == 0)
            }
        }
        other => {
            return Err(Error::BadParams(format!(
                "group elements are only generated for types A, B and D, not {other}"
            )))
        }
    };
    Ok(perms
        .iter()
        .flat_map(|p| signs.iter().map(move |s| SignedPermutation { perm: p.clone(), signs: s.clone() }))
        .collect())
}

/// Interior point `(n, n-1, ..., 1)` of the standard fundamental chamber of
/// types A, B and D.
pub fn fundamental_point(dim: usize) -> Vector {
    (0..dim).map(|i| arith::int((dim - i) as i64)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::char_poly_whitney;

    #[test]
    fn kinds_parse() {
        for k in GeneratorKind::ALL {
            assert_eq!(k.name().parse::<GeneratorKind>().unwrap(), k);
        }
        assert!("E8".parse::<GeneratorKind>().is_err());
    }

    #[test]
    fn boolean_is_axes() {
        let a = generate(&GeneratorSpec::new(GeneratorKind::Boolean, 2)).unwrap();
        assert_eq!(a.len(), 2);
        assert_eq!(a.hyperplane(0), &Hyperplane::linear(&[1, 0]).unwrap());
        assert_eq!(a.hyperplane(1), &Hyperplane::linear(&[0, 1]).unwrap());
    }

    #[test]
    fn small_closed_forms() {
        let braid = generate(&GeneratorSpec::new(GeneratorKind::BraidA, 3)).unwrap();
        assert_eq!(braid.len(), 3);
        assert_eq!(char_poly_whitney(&braid).unwrap(), CharPoly::from_roots(&[0, 1, 2], 0));
        let b2 = GeneratorSpec::new(GeneratorKind::TypeB, 2);
        assert_eq!(generate(&b2).unwrap().len(), 4);
        assert_eq!(char_poly_whitney(&generate(&b2).unwrap()).unwrap(), CharPoly::from_roots(&[1, 3], 0));
        assert_eq!(expected_charpoly(&b2).unwrap(), CharPoly::from_roots(&[1, 3], 0));
        assert_eq!(expected_charpoly(&GeneratorSpec::dihedral(1)).unwrap().coeffs, vec![0, -1, 1]);
        assert!(matches!(
            expected_charpoly(&GeneratorSpec::new(GeneratorKind::Triangle, 2)),
            Err(Error::NoClosedForm(_))
        ));
    }

    #[test]
    fn dihedral_lines_are_distinct() {
        for m in 1..=12 {
            let a = generate(&GeneratorSpec::dihedral(m)).unwrap();
            assert_eq!(a.len(), m);
            assert!(a.is_linear());
        }
        assert!(generate(&GeneratorSpec::dihedral(0)).is_err());
    }

    #[test]
    fn random_is_reproducible() {
        let a = generate(&GeneratorSpec::random(3, 6, 42)).unwrap();
        let b = generate(&GeneratorSpec::random(3, 6, 42)).unwrap();
        assert_eq!(a.to_json_string(), b.to_json_string());
        assert_eq!(a.len(), 6);
        let c = generate(&GeneratorSpec::random(3, 6, 43)).unwrap();
        assert_ne!(a, c);
        assert!(generate(&GeneratorSpec { seed: None, ..GeneratorSpec::random(2, 2, 0) }).is_err());
    }

    #[test]
    fn group_orders() {
        assert_eq!(reflection_group(GeneratorKind::TypeB, 2).unwrap().len(), 8);
        assert_eq!(reflection_group(GeneratorKind::TypeB, 3).unwrap().len(), 48);
        assert_eq!(reflection_group(GeneratorKind::TypeD, 3).unwrap().len(), 24);
        assert_eq!(reflection_group(GeneratorKind::BraidA, 3).unwrap().len(), 6);
        assert!(reflection_group(GeneratorKind::Dihedral, 2).is_err());
    }
}
