//! Scalar semirings and exact arithmetic.
//!
//! Five built-in commutative semirings are provided: naturals, integers,
//! non-negative rationals, rationals and booleans. Every value is stored as
//! an exact rational (booleans as 0/1), so equality of coefficients is
//! decidable and never approximate.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ScalarError {
    #[error("semiring {0} has no fractions")]
    NoFractions(Semiring),
    #[error("marginal sums disagree")]
    MarginalMismatch,
    #[error("literal {0:?} is not valid in semiring {1}")]
    BadLiteral(String, Semiring),
}

/// A scalar arithmetic instance, with the capability flags that gate
/// downstream operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Semiring {
    Nat,
    Int,
    RatNonNeg,
    Rat,
    Bool,
}

impl fmt::Display for Semiring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Semiring::Nat => "nat",
            Semiring::Int => "int",
            Semiring::RatNonNeg => "ratnn",
            Semiring::Rat => "rat",
            Semiring::Bool => "bool",
        })
    }
}

/// An element of one of the built-in semirings. Rationals are kept in
/// lowest terms with a positive denominator (`BigRational` maintains this);
/// booleans are stored as 0/1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar(BigRational);

impl Scalar {
    pub fn from_rational(r: BigRational) -> Scalar {
        Scalar(r)
    }

    pub fn from_int(n: i64) -> Scalar {
        Scalar(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(num: i64, den: i64) -> Scalar {
        Scalar(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn rational(&self) -> &BigRational {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Semiring {
    pub fn zero(self) -> Scalar {
        Scalar(BigRational::zero())
    }

    pub fn one(self) -> Scalar {
        Scalar(BigRational::one())
    }

    /// Boolean addition is max; everywhere else plain exact addition.
    pub fn add(self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            Semiring::Bool => {
                if a.is_zero() && b.is_zero() {
                    self.zero()
                } else {
                    self.one()
                }
            }
            _ => Scalar(&a.0 + &b.0),
        }
    }

    pub fn mul(self, a: &Scalar, b: &Scalar) -> Scalar {
        Scalar(&a.0 * &b.0)
    }

    pub fn eq(self, a: &Scalar, b: &Scalar) -> bool {
        a == b
    }

    pub fn zerosumfree(self) -> bool {
        matches!(self, Semiring::Nat | Semiring::RatNonNeg | Semiring::Bool)
    }

    pub fn has_fractions(self) -> bool {
        matches!(self, Semiring::RatNonNeg | Semiring::Rat | Semiring::Bool)
    }

    pub fn is_ring(self) -> bool {
        matches!(self, Semiring::Int | Semiring::Rat)
    }

    /// True if `s` is a value this instance can hold.
    pub fn admits(self, s: &Scalar) -> bool {
        let r = &s.0;
        match self {
            Semiring::Nat => r.denom().is_one() && !r.is_negative(),
            Semiring::Int => r.denom().is_one(),
            Semiring::RatNonNeg => !r.is_negative(),
            Semiring::Rat => true,
            Semiring::Bool => r.is_zero() || r.is_one(),
        }
    }
}

/// The canonical morphism from the naturals: the n-fold sum of one.
pub fn nat_embed(ring: Semiring, n: u64) -> Scalar {
    match ring {
        Semiring::Bool => {
            if n == 0 {
                ring.zero()
            } else {
                ring.one()
            }
        }
        _ => Scalar(BigRational::from_integer(BigInt::from(n))),
    }
}

pub fn nat_embed_big(ring: Semiring, n: &num_bigint::BigUint) -> Scalar {
    match ring {
        Semiring::Bool => {
            if n.is_zero() {
                ring.zero()
            } else {
                ring.one()
            }
        }
        _ => Scalar(BigRational::from_integer(BigInt::from(n.clone()))),
    }
}

/// Multiplicative inverse of an embedded positive natural.
pub fn inv_nat(ring: Semiring, n: u64) -> Result<Scalar, ScalarError> {
    assert!(n > 0, "inv_nat needs a positive natural");
    if !ring.has_fractions() {
        return Err(ScalarError::NoFractions(ring));
    }
    match ring {
        Semiring::Bool => Ok(ring.one()),
        _ => Ok(Scalar(BigRational::new(BigInt::one(), BigInt::from(n)))),
    }
}

pub fn inv_nat_big(ring: Semiring, n: &num_bigint::BigUint) -> Result<Scalar, ScalarError> {
    assert!(!n.is_zero(), "inv_nat needs a positive natural");
    if !ring.has_fractions() {
        return Err(ScalarError::NoFractions(ring));
    }
    match ring {
        Semiring::Bool => Ok(ring.one()),
        _ => Ok(Scalar(BigRational::new(
            BigInt::one(),
            BigInt::from(n.clone()),
        ))),
    }
}

/// Parse a scalar literal: `p` or `p/q`, sign permitted only in rings,
/// booleans restricted to `0`/`1`.
pub fn parse_scalar(ring: Semiring, text: &str) -> Result<Scalar, ScalarError> {
    let bad = || ScalarError::BadLiteral(text.to_string(), ring);
    let (num_str, den_str) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let num: BigInt = num_str.parse().map_err(|_| bad())?;
    let den: BigInt = match den_str {
        Some(d) => d.parse().map_err(|_| bad())?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(bad());
    }
    if (num.is_negative() || den.is_negative()) && !ring.is_ring() {
        return Err(bad());
    }
    let s = Scalar(BigRational::new(num, den));
    if ring.admits(&s) {
        Ok(s)
    } else {
        Err(bad())
    }
}

fn monus(a: &Scalar, b: &Scalar) -> Scalar {
    // a - b, only called when a >= b in a non-negative instance
    Scalar(&a.0 - &b.0)
}

/// Split two decompositions `a1+a2 = b1+b2` of the same scalar into a 2x2
/// matrix with those rows and columns as marginals. The output is
/// deterministic: north-west corner for the non-negative instances,
/// component-wise meet for booleans, and `[[b1, a1-b1], [0, a2]]` for rings.
pub fn split2(
    ring: Semiring,
    a: (&Scalar, &Scalar),
    b: (&Scalar, &Scalar),
) -> Result<[[Scalar; 2]; 2], ScalarError> {
    let (a1, a2) = a;
    let (b1, b2) = b;
    if ring.add(a1, a2) != ring.add(b1, b2) {
        return Err(ScalarError::MarginalMismatch);
    }
    match ring {
        Semiring::Int | Semiring::Rat => Ok([
            [b1.clone(), Scalar(&a1.0 - &b1.0)],
            [ring.zero(), a2.clone()],
        ]),
        Semiring::Bool => Ok([
            [ring.mul(a1, b1), ring.mul(a1, b2)],
            [ring.mul(a2, b1), ring.mul(a2, b2)],
        ]),
        Semiring::Nat | Semiring::RatNonNeg => {
            let c11 = if a1.0 <= b1.0 { a1.clone() } else { b1.clone() };
            let c12 = monus(a1, &c11);
            let c21 = monus(b1, &c11);
            let c22 = monus(a2, &c21);
            Ok([[c11, c12], [c21, c22]])
        }
    }
}

/// Split two decompositions of the same total, of arbitrary lengths, into a
/// matrix with `xs` as row sums and `ys` as column sums.
pub fn split_two_decomps(
    ring: Semiring,
    xs: &[Scalar],
    ys: &[Scalar],
) -> Result<Vec<Vec<Scalar>>, ScalarError> {
    let total = |v: &[Scalar]| {
        v.iter()
            .fold(ring.zero(), |acc, s| ring.add(&acc, s))
    };
    if total(xs) != total(ys) {
        return Err(ScalarError::MarginalMismatch);
    }
    let mut out = vec![vec![ring.zero(); ys.len()]; xs.len()];
    match ring {
        Semiring::Bool => {
            for (i, x) in xs.iter().enumerate() {
                for (j, y) in ys.iter().enumerate() {
                    out[i][j] = ring.mul(x, y);
                }
            }
        }
        Semiring::Nat | Semiring::RatNonNeg => {
            // transportation greedy: march the north-west corner
            let mut rem_x: Vec<Scalar> = xs.to_vec();
            let mut rem_y: Vec<Scalar> = ys.to_vec();
            let (mut i, mut j) = (0usize, 0usize);
            while i < xs.len() && j < ys.len() {
                let take = if rem_x[i].0 <= rem_y[j].0 {
                    rem_x[i].clone()
                } else {
                    rem_y[j].clone()
                };
                rem_x[i] = monus(&rem_x[i], &take);
                rem_y[j] = monus(&rem_y[j], &take);
                out[i][j] = take;
                if rem_x[i].is_zero() && i + 1 < xs.len() {
                    i += 1;
                } else if rem_y[j].is_zero() && j + 1 < ys.len() {
                    j += 1;
                } else if rem_x[i].is_zero() && rem_y[j].is_zero() {
                    break;
                }
            }
        }
        Semiring::Int | Semiring::Rat => {
            // first row takes ys[..last] whole and the balance from the last
            // column; remaining rows are pushed entirely to the last column
            if xs.is_empty() || ys.is_empty() {
                return Ok(out);
            }
            let mut rows = xs.to_vec();
            let mut cols = ys.to_vec();
            for i in 0..xs.len() {
                if i + 1 == xs.len() {
                    for j in 0..ys.len() {
                        out[i][j] = cols[j].clone();
                    }
                    break;
                }
                let mut left = rows[i].clone();
                for j in 0..ys.len() {
                    if j + 1 == ys.len() {
                        out[i][j] = left.clone();
                        cols[j] = Scalar(&cols[j].0 - &left.0);
                    } else {
                        out[i][j] = cols[j].clone();
                        left = Scalar(&left.0 - &cols[j].0);
                        cols[j] = ring.zero();
                    }
                }
                rows[i] = ring.zero();
            }
        }
    }
    Ok(out)
}

/// A sparse tensor indexed by one entry choice per row of a `split_multi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitTensor {
    pub dims: Vec<usize>,
    pub entries: std::collections::BTreeMap<Vec<usize>, Scalar>,
}

impl SplitTensor {
    /// Sum of all cells whose `row`-th index equals `j`.
    pub fn marginal(&self, ring: Semiring, row: usize, j: usize) -> Scalar {
        self.entries
            .iter()
            .filter(|(idx, _)| idx[row] == j)
            .fold(ring.zero(), |acc, (_, v)| ring.add(&acc, v))
    }
}

/// Refine any number of decompositions of a common total into a tensor whose
/// marginals reproduce every row, by chaining binary splits.
pub fn split_multi(ring: Semiring, rows: &[Vec<Scalar>]) -> Result<SplitTensor, ScalarError> {
    assert!(!rows.is_empty(), "split_multi needs at least one row");
    let total = |v: &[Scalar]| v.iter().fold(ring.zero(), |acc, s| ring.add(&acc, s));
    let t0 = total(&rows[0]);
    for r in rows.iter().skip(1) {
        if total(r) != t0 {
            return Err(ScalarError::MarginalMismatch);
        }
    }
    let mut entries: std::collections::BTreeMap<Vec<usize>, Scalar> =
        std::collections::BTreeMap::new();
    for (j, v) in rows[0].iter().enumerate() {
        if !v.is_zero() {
            entries.insert(vec![j], v.clone());
        }
    }
    // degenerate case: everything is zero but we still need index structure
    if entries.is_empty() && !rows[0].is_empty() {
        entries.insert(vec![0], ring.zero());
    }
    let mut dims = vec![rows[0].len()];
    for row in rows.iter().skip(1) {
        let cells: Vec<(Vec<usize>, Scalar)> =
            entries.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
        let xs: Vec<Scalar> = cells.iter().map(|(_, v)| v.clone()).collect();
        let m = split_two_decomps(ring, &xs, row)?;
        let mut next = std::collections::BTreeMap::new();
        for (ci, (idx, _)) in cells.iter().enumerate() {
            for (j, v) in m[ci].iter().enumerate() {
                if !v.is_zero() {
                    let mut k = idx.clone();
                    k.push(j);
                    next.insert(k, v.clone());
                }
            }
        }
        if next.is_empty() && !row.is_empty() {
            let mut k = cells[0].0.clone();
            k.push(0);
            next.insert(k, ring.zero());
        }
        entries = next;
        dims.push(row.len());
    }
    entries.retain(|_, v| !v.is_zero());
    Ok(SplitTensor { dims, entries })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedding_follows_the_instance() {
        assert_eq!(nat_embed(Semiring::Nat, 3), Scalar::from_int(3));
        assert_eq!(nat_embed(Semiring::Bool, 2), Semiring::Bool.one());
        assert_eq!(nat_embed(Semiring::Rat, 0), Semiring::Rat.zero());
    }

    #[test]
    fn embedding_is_a_morphism() {
        for ring in [
            Semiring::Nat,
            Semiring::Int,
            Semiring::RatNonNeg,
            Semiring::Rat,
            Semiring::Bool,
        ] {
            for m in 0..=50u64 {
                for n in 0..=50u64 {
                    let lhs = nat_embed(ring, m + n);
                    let rhs = ring.add(&nat_embed(ring, m), &nat_embed(ring, n));
                    assert_eq!(lhs, rhs);
                    let lhs = nat_embed(ring, m * n);
                    let rhs = ring.mul(&nat_embed(ring, m), &nat_embed(ring, n));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn inverses() {
        assert_eq!(inv_nat(Semiring::Rat, 2), Ok(Scalar::ratio(1, 2)));
        let b = inv_nat(Semiring::Bool, 5).unwrap();
        assert_eq!(
            Semiring::Bool.mul(&b, &nat_embed(Semiring::Bool, 5)),
            Semiring::Bool.one()
        );
        assert_eq!(
            inv_nat(Semiring::Nat, 2),
            Err(ScalarError::NoFractions(Semiring::Nat))
        );
    }

    #[test]
    fn split2_examples() {
        let s = |n| Scalar::from_int(n);
        let c = split2(Semiring::Nat, (&s(1), &s(1)), (&s(2), &s(0))).unwrap();
        assert_eq!(c, [[s(1), s(0)], [s(1), s(0)]]);

        let c = split2(Semiring::Int, (&s(3), &s(-1)), (&s(1), &s(1))).unwrap();
        assert_eq!(c, [[s(1), s(2)], [s(0), s(-1)]]);

        let c = split2(Semiring::Nat, (&s(0), &s(0)), (&s(0), &s(0))).unwrap();
        assert_eq!(c, [[s(0), s(0)], [s(0), s(0)]]);

        assert_eq!(
            split2(Semiring::Nat, (&s(1), &s(0)), (&s(2), &s(0))),
            Err(ScalarError::MarginalMismatch)
        );
    }

    #[test]
    fn split2_bool_covers_all_margins() {
        let ring = Semiring::Bool;
        let vals = [ring.zero(), ring.one()];
        for a1 in &vals {
            for a2 in &vals {
                for b1 in &vals {
                    for b2 in &vals {
                        if ring.add(a1, a2) != ring.add(b1, b2) {
                            continue;
                        }
                        let c = split2(ring, (a1, a2), (b1, b2)).unwrap();
                        assert_eq!(&ring.add(&c[0][0], &c[0][1]), a1);
                        assert_eq!(&ring.add(&c[1][0], &c[1][1]), a2);
                        assert_eq!(&ring.add(&c[0][0], &c[1][0]), b1);
                        assert_eq!(&ring.add(&c[0][1], &c[1][1]), b2);
                    }
                }
            }
        }
    }

    #[test]
    fn split_multi_examples() {
        let s = |n| Scalar::from_int(n);
        let t = split_multi(Semiring::Nat, &[vec![s(5)]]).unwrap();
        assert_eq!(t.entries.get(&vec![0]), Some(&s(5)));

        let t = split_multi(Semiring::Nat, &[vec![s(1), s(1)], vec![s(2), s(0)]]).unwrap();
        assert_eq!(t.marginal(Semiring::Nat, 0, 0), s(1));
        assert_eq!(t.marginal(Semiring::Nat, 0, 1), s(1));
        assert_eq!(t.marginal(Semiring::Nat, 1, 0), s(2));
        assert_eq!(t.marginal(Semiring::Nat, 1, 1), s(0));

        let t = split_multi(Semiring::Nat, &[vec![s(2)], vec![s(2)], vec![s(2)]]).unwrap();
        assert_eq!(t.entries.get(&vec![0, 0, 0]), Some(&s(2)));
    }

    #[test]
    fn literals() {
        assert_eq!(
            parse_scalar(Semiring::Rat, "3/4"),
            Ok(Scalar::ratio(3, 4))
        );
        assert!(parse_scalar(Semiring::Nat, "-1").is_err());
        assert!(parse_scalar(Semiring::Bool, "2").is_err());
        assert!(parse_scalar(Semiring::Int, "1/2").is_err());
        assert_eq!(parse_scalar(Semiring::Int, "-7"), Ok(Scalar::from_int(-7)));
    }
}
