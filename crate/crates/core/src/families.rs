//! Closed forms for the basic graph families, plus the Hamming cube
//! nullities.
//!
//! Forms with a division by `x - 1` or `y - 1` are written out as the
//! binomial sums they abbreviate, so everything stays in exact integer
//! polynomials over `u = x - 1`, `v = y - 1`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::bipoly::{Basis, BiPoly};
use crate::error::{Error, Result};
use crate::eval::q_expansion;
use crate::graph::Graph;

fn binomial_row(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for k in 0..n {
        let next = &row[k] * BigInt::from(n - k) / BigInt::from(k + 1);
        row.push(next);
    }
    row
}

fn one_plus_v_pow(n: usize) -> BiPoly {
    BiPoly::from_grid(Basis::Shifted, vec![binomial_row(n)])
}

/// `q(E_n) = y^n`.
pub fn q_empty(n: usize) -> BiPoly {
    one_plus_v_pow(n)
}

/// `q(K_n)` as `sum_{k even} C(n,k) u^k + v * sum_{k odd} C(n,k) u^(k-1)`.
pub fn q_complete(n: usize) -> BiPoly {
    let binom = binomial_row(n);
    let mut grid = vec![vec![BigInt::from(0); 2]; n + 1];
    for (k, c) in binom.into_iter().enumerate() {
        if k % 2 == 0 {
            grid[k][0] += c;
        } else {
            grid[k - 1][1] += c;
        }
    }
    BiPoly::from_grid(Basis::Shifted, grid)
}

/// `q(K_{m,n})` as
/// `u^2 * [sum_{i>=1} C(m,i) v^(i-1)] * [sum_{j>=1} C(n,j) v^(j-1)] + y^m + y^n - 1`.
pub fn q_complete_bipartite(m: usize, n: usize) -> BiPoly {
    let truncated = |k: usize| {
        let row: Vec<BigInt> = binomial_row(k).into_iter().skip(1).collect();
        BiPoly::from_grid(Basis::Shifted, vec![row])
    };
    let u2 = BiPoly::from_i64_grid(Basis::Shifted, &[&[0], &[0], &[1]]);
    let cross = u2
        .mul(&truncated(m))
        .and_then(|p| p.mul(&truncated(n)))
        .expect("same basis");
    cross
        .add(&one_plus_v_pow(m))
        .and_then(|p| p.add(&one_plus_v_pow(n)))
        .and_then(|p| p.sub(&BiPoly::one(Basis::Shifted)))
        .expect("same basis")
}

/// `q(P_n)` for the path with `n` edges, from
/// `q(P_n) = (y + x^2 - 2x) q(P_{n-2}) + q(P_{n-1})`,
/// `q(P_0) = y`, `q(P_1) = x^2 - 2x + 2y`.
pub fn q_path(n: usize) -> BiPoly {
    // y + x^2 - 2x = u^2 + v
    let step = BiPoly::from_i64_grid(Basis::Shifted, &[&[0, 1], &[0], &[1]]);
    let mut prev = BiPoly::from_i64_grid(Basis::Shifted, &[&[1, 1]]);
    if n == 0 {
        return prev;
    }
    let mut cur = BiPoly::from_i64_grid(Basis::Shifted, &[&[1, 2], &[0], &[1]]);
    for _ in 2..=n {
        let next = step
            .mul(&prev)
            .and_then(|p| p.add(&cur))
            .expect("same basis");
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// The radical closed form for `q(P_n)` evaluated in floating point.
pub fn q_path_radical(n: usize, x: f64, y: f64) -> Result<f64> {
    let t = x * (x - 2.0);
    let disc = 1.0 + 4.0 * (y + t);
    if disc.is_nan() || disc <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "discriminant 1 + 4(y + x(x - 2)) = {disc} is not positive"
        )));
    }
    let s = disc.sqrt();
    let a = (3.0 * y + 2.0 * t) / s;
    let n = i32::try_from(n).map_err(|_| Error::InvalidArgument("path too long".into()))?;
    Ok(0.5 * (y + a) * ((1.0 + s) / 2.0).powi(n) + 0.5 * (y - a) * ((1.0 - s) / 2.0).powi(n))
}

pub const MAX_HAMMING_NULLITY_DIM: usize = 6;

/// Nullities of the Hamming cube `H_d` and of its complement.
pub fn hamming_nullities(d: usize) -> Result<(usize, usize)> {
    if d == 0 {
        return Err(Error::OrderTooSmall {
            what: "hamming_nullities dimension",
            order: d,
            min: 1,
        });
    }
    if d > MAX_HAMMING_NULLITY_DIM {
        return Err(Error::OrderTooLarge {
            what: "hamming_nullities dimension",
            order: d,
            max: MAX_HAMMING_NULLITY_DIM,
        });
    }
    let cube = Graph::hamming_cube(d)?;
    Ok((cube.nullity(), cube.complement().nullity()))
}

/// A named graph family member.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    Empty(usize),
    Complete(usize),
    CompleteBipartite(usize, usize),
    Path(usize),
    Hypercube(usize),
    HypercubeComplement(usize),
}

impl FamilySpec {
    pub const NAMES: [&'static str; 6] = [
        "empty",
        "complete",
        "complete-bipartite",
        "path",
        "hypercube",
        "hypercube-complement",
    ];

    pub fn parse(name: &str, params: &[usize]) -> Result<Self> {
        let arity = |k: usize| {
            if params.len() == k {
                Ok(())
            } else {
                Err(Error::InvalidArgument(format!(
                    "family {name} takes {k} parameter(s), got {}",
                    params.len()
                )))
            }
        };
        Ok(match name {
            "empty" => {
                arity(1)?;
                FamilySpec::Empty(params[0])
            }
            "complete" => {
                arity(1)?;
                FamilySpec::Complete(params[0])
            }
            "complete-bipartite" => {
                arity(2)?;
                FamilySpec::CompleteBipartite(params[0], params[1])
            }
            "path" => {
                arity(1)?;
                FamilySpec::Path(params[0])
            }
            "hypercube" => {
                arity(1)?;
                FamilySpec::Hypercube(params[0])
            }
            "hypercube-complement" => {
                arity(1)?;
                FamilySpec::HypercubeComplement(params[0])
            }
            other => {
                return Err(Error::InvalidArgument(format!(
                    "unknown family {other:?}; expected one of {}",
                    Self::NAMES.join(", ")
                )))
            }
        })
    }

    pub fn graph(&self) -> Result<Graph> {
        Ok(match *self {
            FamilySpec::Empty(n) => Graph::empty(n),
            FamilySpec::Complete(n) => Graph::complete(n),
            FamilySpec::CompleteBipartite(m, n) => Graph::complete_bipartite(m, n),
            FamilySpec::Path(n) => Graph::path(n),
            FamilySpec::Hypercube(d) => Graph::hamming_cube(d)?,
            FamilySpec::HypercubeComplement(d) => Graph::hamming_cube(d)?.complement(),
        })
    }

    /// The closed form where one exists; the cubes go through the expansion.
    pub fn polynomial(&self) -> Result<BiPoly> {
        match *self {
            FamilySpec::Empty(n) => Ok(q_empty(n)),
            FamilySpec::Complete(n) => Ok(q_complete(n)),
            FamilySpec::CompleteBipartite(m, n) => Ok(q_complete_bipartite(m, n)),
            FamilySpec::Path(n) => Ok(q_path(n)),
            FamilySpec::Hypercube(_) | FamilySpec::HypercubeComplement(_) => {
                q_expansion(&self.graph()?)
            }
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Empty(n) => write!(f, "empty {n}"),
            FamilySpec::Complete(n) => write!(f, "complete {n}"),
            FamilySpec::CompleteBipartite(m, n) => write!(f, "complete-bipartite {m} {n}"),
            FamilySpec::Path(n) => write!(f, "path {n}"),
            FamilySpec::Hypercube(d) => write!(f, "hypercube {d}"),
            FamilySpec::HypercubeComplement(d) => write!(f, "hypercube-complement {d}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy(grid: &[&[i64]]) -> BiPoly {
        BiPoly::from_i64_grid(Basis::Standard, grid)
    }

    #[test]
    fn empty_forms() {
        assert_eq!(q_empty(0), BiPoly::one(Basis::Shifted));
        assert_eq!(q_empty(3).to_xy(), xy(&[&[0, 0, 0, 1]]));
        assert_eq!(q_empty(3), q_expansion(&Graph::empty(3)).unwrap());
    }

    #[test]
    fn complete_forms() {
        assert_eq!(q_complete(2).to_xy(), xy(&[&[0, 2], &[-2], &[1]]));
        // 3x^2 - 6x + 4 + (y - 1)(x^2 - 2x + 4)
        assert_eq!(q_complete(3).to_xy(), xy(&[&[0, 4], &[-4, -2], &[2, 1]]));
        assert_eq!(q_complete(0), BiPoly::one(Basis::Shifted));
    }

    #[test]
    fn complete_bipartite_forms() {
        assert_eq!(q_complete_bipartite(1, 1), q_complete(2));
        let star = q_complete_bipartite(1, 3).specialize_x(&BigInt::from(2));
        assert_eq!(star, crate::bipoly::UniPoly::from_i64('y', &[0, 2, 1, 1]));
        assert_eq!(q_complete_bipartite(0, 4), q_empty(4));
    }

    #[test]
    fn path_forms() {
        assert_eq!(q_path(0).to_xy(), xy(&[&[0, 1]]));
        assert_eq!(q_path(2).to_xy(), xy(&[&[0, 2, 1], &[-2, -2], &[1, 1]]));
        assert_eq!(q_path(3), q_expansion(&Graph::path(3)).unwrap());
    }

    #[test]
    fn path_radical() {
        assert!((q_path_radical(0, 3.0, 3.0).unwrap() - 3.0).abs() < 1e-12);
        assert!((q_path_radical(2, 2.0, 2.0).unwrap() - 8.0).abs() < 1e-9);
        assert!(q_path_radical(2, 1.0, -1.0).is_err());
    }

    #[test]
    fn hamming_nullity_values() {
        assert_eq!(hamming_nullities(1).unwrap().0, 0);
        assert_eq!(hamming_nullities(2).unwrap(), (2, 0));
        assert_eq!(hamming_nullities(3).unwrap(), (0, 4));
        assert!(hamming_nullities(0).is_err());
        assert!(hamming_nullities(7).is_err());
    }

    #[test]
    fn family_spec_parsing() {
        assert_eq!(
            FamilySpec::parse("path", &[2]).unwrap(),
            FamilySpec::Path(2)
        );
        assert_eq!(
            FamilySpec::parse("complete-bipartite", &[1, 3]).unwrap(),
            FamilySpec::CompleteBipartite(1, 3)
        );
        assert!(FamilySpec::parse("path", &[1, 2]).is_err());
        assert!(FamilySpec::parse("wheel", &[5]).is_err());
        let cube = FamilySpec::Hypercube(2);
        assert_eq!(
            cube.polynomial().unwrap(),
            q_expansion(&Graph::cycle(4)).unwrap()
        );
    }
}
