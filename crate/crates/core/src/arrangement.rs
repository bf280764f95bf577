//! Hyperplanes, arrangements and sign vectors.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{self, AffineSolution, Rational, Vector};
use crate::error::{Error, Result};

/// Affine hyperplane `{z : <z, normal> = offset}` in canonical form: the
/// normal has coprime integer entries and its first nonzero entry is
/// positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hyperplane {
    normal: Vector,
    offset: Rational,
}

impl Hyperplane {
    /// Canonical representative of `{z : <z, normal> = offset}`.
    pub fn new(normal: Vector, offset: Rational) -> Result<Self> {
        canonicalize(&normal, &offset)
    }

    /// Linear hyperplane with the given integer normal.
    pub fn linear(normal: &[i64]) -> Result<Self> {
        Self::new(arith::vector(normal), Rational::zero())
    }

    pub fn from_ints(normal: &[i64], offset: i64) -> Result<Self> {
        Self::new(arith::vector(normal), arith::int(offset))
    }

    pub fn normal(&self) -> &[Rational] {
        &self.normal
    }

    pub fn offset(&self) -> &Rational {
        &self.offset
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    /// `<x, normal> - offset`.
    pub fn residual(&self, x: &[Rational]) -> Rational {
        arith::dot(&self.normal, x) - &self.offset
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.residual(x).is_zero()
    }
}

/// Unique canonical representative of the hyperplane `<z, normal> = offset`.
pub fn canonicalize(normal: &[Rational], offset: &Rational) -> Result<Hyperplane> {
    let Some(lead) = normal.iter().find(|v| !v.is_zero()) else {
        return Err(Error::ZeroNormal);
    };
    let lcm = normal
        .iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let ints: Vec<BigInt> = normal
        .iter()
        .map(|v| (v * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    let mut factor = Rational::new(lcm, gcd);
    if lead.is_negative() {
        factor = -factor;
    }
    Ok(Hyperplane {
        normal: arith::scale(normal, &factor),
        offset: offset * &factor,
    })
}

/// Finite ordered list of pairwise distinct hyperplanes in `Q^dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    dim: usize,
    hyperplanes: Vec<Hyperplane>,
}

impl Arrangement {
    pub fn new(dim: usize, hyperplanes: Vec<Hyperplane>) -> Result<Self> {
        for h in &hyperplanes {
            if h.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: h.dim() });
            }
        }
        for i in 0..hyperplanes.len() {
            for j in 0..i {
                if hyperplanes[i] == hyperplanes[j] {
                    return Err(Error::DuplicateHyperplane { first: j, second: i });
                }
            }
        }
        Ok(Arrangement { dim, hyperplanes })
    }

    /// Like [`Arrangement::new`] but silently drops repeated hyperplanes,
    /// keeping the first occurrence.
    pub fn dedup(dim: usize, hyperplanes: Vec<Hyperplane>) -> Result<Self> {
        let mut kept: Vec<Hyperplane> = Vec::with_capacity(hyperplanes.len());
        for h in hyperplanes {
            if !kept.contains(&h) {
                kept.push(h);
            }
        }
        Self::new(dim, kept)
    }

    pub fn empty(dim: usize) -> Self {
        Arrangement { dim, hyperplanes: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn hyperplane(&self, i: usize) -> &Hyperplane {
        &self.hyperplanes[i]
    }

    /// All hyperplanes pass through the origin.
    pub fn is_linear(&self) -> bool {
        self.hyperplanes.iter().all(|h| h.offset.is_zero())
    }

    /// Dimension of the span of the normals.
    pub fn rank(&self) -> usize {
        let normals: Vec<Vector> = self.hyperplanes.iter().map(|h| h.normal.clone()).collect();
        arith::rank(&normals, self.dim)
    }

    pub fn check_point(&self, x: &[Rational]) -> Result<()> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: x.len() });
        }
        Ok(())
    }

    /// Affine solution set of the hyperplanes with the given indices.
    pub fn solve_indices(&self, indices: &[usize]) -> Option<AffineSolution> {
        let hs: Vec<&Hyperplane> = indices.iter().map(|&i| &self.hyperplanes[i]).collect();
        solve_affine(self.dim, &hs).expect("hyperplanes of one arrangement share a dimension")
    }

    pub fn to_json(&self) -> ArrangementJson {
        ArrangementJson {
            dim: self.dim,
            hyperplanes: self
                .hyperplanes
                .iter()
                .map(|h| HyperplaneJson {
                    normal: h.normal.iter().map(arith::format_rational).collect(),
                    offset: arith::format_rational(&h.offset),
                })
                .collect(),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("plain data serialises")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let raw: ArrangementJson =
            serde_json::from_str(s).map_err(|e| Error::Parse(format!("arrangement JSON: {e}")))?;
        raw.into_arrangement()
    }
}

/// On-disk arrangement format:
/// `{"dim": 2, "hyperplanes": [{"normal": ["1","0"], "offset": "0"}]}` with
/// rationals written as `"p"` or `"p/q"`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrangementJson {
    pub dim: usize,
    pub hyperplanes: Vec<HyperplaneJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HyperplaneJson {
    pub normal: Vec<String>,
    pub offset: String,
}

impl ArrangementJson {
    pub fn into_arrangement(self) -> Result<Arrangement> {
        let hs = self
            .hyperplanes
            .iter()
            .map(|h| {
                let normal = h
                    .normal
                    .iter()
                    .map(|s| arith::parse_rational(s))
                    .collect::<Result<Vector>>()?;
                if normal.len() != self.dim {
                    return Err(Error::DimensionMismatch { expected: self.dim, found: normal.len() });
                }
                Hyperplane::new(normal, arith::parse_rational(&h.offset)?)
            })
            .collect::<Result<Vec<_>>>()?;
        Arrangement::new(self.dim, hs)
    }
}

/// Element of `{-1, 0, +1}^m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SignVector(pub Vec<i8>);

impl SignVector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> i8 {
        self.0[i]
    }

    pub fn signs(&self) -> &[i8] {
        &self.0
    }

    pub fn zero_set(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] == 0).collect()
    }

    pub fn has_zero(&self) -> bool {
        self.0.contains(&0)
    }

    /// `self` is obtained from `other` by zeroing some entries, i.e. the cell
    /// of `self` lies in the closure of the cell of `other`.
    pub fn refines(&self, other: &SignVector) -> bool {
        self.0.len() == other.0.len()
            && self.0.iter().zip(&other.0).all(|(&a, &b)| a == 0 || a == b)
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.0 {
            let c = match s {
                1 => '+',
                -1 => '-',
                _ => '0',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for SignVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.trim()
            .chars()
            .map(|c| match c {
                '+' => Ok(1),
                '-' => Ok(-1),
                '0' => Ok(0),
                _ => Err(Error::Parse(format!("bad sign character {c:?} in {s:?}"))),
            })
            .collect::<Result<Vec<i8>>>()
            .map(SignVector)
    }
}

/// Entry `i` is the sign of `<x, y_i> - c_i`.
pub fn sign_vector(arr: &Arrangement, x: &[Rational]) -> Result<SignVector> {
    arr.check_point(x)?;
    Ok(SignVector(
        arr.hyperplanes.iter().map(|h| arith::sign_of(&h.residual(x))).collect(),
    ))
}

/// Intersection of the given hyperplanes as a point plus direction basis, or
/// `None` if empty. The empty family gives all of `Q^dim`.
pub fn solve_affine(dim: usize, hyperplanes: &[&Hyperplane]) -> Result<Option<AffineSolution>> {
    for h in hyperplanes {
        if h.dim() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: h.dim() });
        }
    }
    let a: Vec<Vector> = hyperplanes.iter().map(|h| h.normal.clone()).collect();
    let b: Vec<Rational> = hyperplanes.iter().map(|h| h.offset.clone()).collect();
    Ok(arith::solve_affine_system(&a, &b, dim))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, ratio, vector};

    fn axes() -> Arrangement {
        Arrangement::new(
            2,
            vec![Hyperplane::linear(&[1, 0]).unwrap(), Hyperplane::linear(&[0, 1]).unwrap()],
        )
        .unwrap()
    }

    #[test]
    fn canonical_forms() {
        let h = Hyperplane::from_ints(&[2, -4], 6).unwrap();
        assert_eq!(h.normal(), &vector(&[1, -2])[..]);
        assert_eq!(h.offset(), &int(3));
        let h2 = Hyperplane::from_ints(&[-1, 2], -3).unwrap();
        assert_eq!(h, h2);
        assert!(matches!(Hyperplane::from_ints(&[0, 0], 1), Err(Error::ZeroNormal)));

        let h3 = Hyperplane::new(vec![ratio(1, 2), ratio(-1, 3)], ratio(1, 6)).unwrap();
        assert_eq!(h3.normal(), &vector(&[3, -2])[..]);
        assert_eq!(h3.offset(), &int(1));
    }

    #[test]
    fn duplicates_rejected() {
        let err = Arrangement::new(
            1,
            vec![Hyperplane::from_ints(&[1], 0).unwrap(), Hyperplane::from_ints(&[-3], 0).unwrap()],
        );
        assert!(matches!(err, Err(Error::DuplicateHyperplane { first: 0, second: 1 })));
    }

    #[test]
    fn sign_vectors() {
        let a = axes();
        assert_eq!(sign_vector(&a, &vector(&[1, -2])).unwrap().to_string(), "+-");
        assert_eq!(sign_vector(&a, &vector(&[0, 5])).unwrap().to_string(), "0+");
        assert!(sign_vector(&Arrangement::empty(3), &vector(&[1, 2, 3])).unwrap().is_empty());
        assert!(matches!(
            sign_vector(&a, &vector(&[1])),
            Err(Error::DimensionMismatch { expected: 2, found: 1 })
        ));
        let s: SignVector = "+-0".parse().unwrap();
        assert_eq!(s.0, vec![1, -1, 0]);
        assert!(s.refines(&"+--".parse().unwrap()));
        assert!(!s.refines(&"--+".parse().unwrap()));
    }

    #[test]
    fn affine_solutions() {
        let a = axes();
        let s = a.solve_indices(&[0, 1]).unwrap();
        assert_eq!(s.dim(), 0);
        assert_eq!(s.point, vector(&[0, 0]));

        let p0 = Hyperplane::from_ints(&[1, 0], 0).unwrap();
        let p1 = Hyperplane::from_ints(&[1, 0], 1).unwrap();
        assert!(solve_affine(2, &[&p0, &p1]).unwrap().is_none());
        assert_eq!(solve_affine(3, &[]).unwrap().unwrap().dim(), 3);
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"dim": 2, "hyperplanes": [{"normal": ["2","-4"], "offset": "6"},
                     {"normal": ["1/2","0"], "offset": "-1/3"}]}"#;
        let a = Arrangement::from_json_str(text).unwrap();
        assert_eq!(a.hyperplane(0).offset(), &int(3));
        assert_eq!(a.hyperplane(1).offset(), &ratio(-2, 3));
        let again = Arrangement::from_json_str(&a.to_json_string()).unwrap();
        assert_eq!(a, again);
        assert!(Arrangement::from_json_str("{\"dim\": 2}").is_err());
        assert!(Arrangement::from_json_str(r#"{"dim":2,"hyperplanes":[{"normal":["1"],"offset":"0"}]}"#).is_err());
    }
}
