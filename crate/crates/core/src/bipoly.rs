//! Exact polynomials in two variables with big-integer coefficients.
//!
//! A [`BiPoly`] is a dense coefficient grid tagged with its basis: either
//! the shifted variables `u = x - 1, v = y - 1` in which the subset
//! expansion and the reduction rules are sparse, or the standard `x, y`.
//! Grids are kept trimmed, so structural equality is polynomial equality
//! within a basis.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    /// `u = x - 1`, `v = y - 1`.
    Shifted,
    /// `x`, `y`.
    Standard,
}

impl Basis {
    pub fn name(self) -> &'static str {
        match self {
            Basis::Shifted => "uv",
            Basis::Standard => "xy",
        }
    }

    fn vars(self) -> (&'static str, &'static str) {
        match self {
            Basis::Shifted => ("u", "v"),
            Basis::Standard => ("x", "y"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BiPoly {
    basis: Basis,
    /// `coeffs[i][j]` multiplies `first^i * second^j`; rectangular and trimmed.
    coeffs: Vec<Vec<BigInt>>,
}

fn trim_grid(mut grid: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    while grid.last().is_some_and(|row| row.iter().all(Zero::is_zero)) {
        grid.pop();
    }
    let width = grid
        .iter()
        .map(|row| row.iter().rposition(|c| !c.is_zero()).map_or(0, |p| p + 1))
        .max()
        .unwrap_or(0);
    for row in grid.iter_mut() {
        row.resize(width, BigInt::zero());
    }
    grid
}

fn binomials(n: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n + 1);
    for r in 0..=n {
        let mut row = vec![BigInt::one(); r + 1];
        for k in 1..r {
            row[k] = &rows[r - 1][k - 1] + &rows[r - 1][k];
        }
        rows.push(row);
    }
    rows
}

/// Coefficients of `p(t + delta)` given those of `p(t)`.
fn taylor_shift(coeffs: &[BigInt], delta: &BigInt) -> Vec<BigInt> {
    let d = coeffs.len();
    if d == 0 {
        return Vec::new();
    }
    let binom = binomials(d - 1);
    let mut powers = vec![BigInt::one(); d];
    for k in 1..d {
        powers[k] = &powers[k - 1] * delta;
    }
    (0..d)
        .map(|k| {
            (k..d)
                .map(|r| &coeffs[r] * &binom[r][k] * &powers[r - k])
                .sum::<BigInt>()
        })
        .collect()
}

fn check_basis(found: Basis, expected: Basis) -> Result<()> {
    if found == expected {
        Ok(())
    } else {
        Err(Error::BasisMismatch {
            expected: expected.name(),
            found: found.name(),
        })
    }
}

impl BiPoly {
    pub fn zero(basis: Basis) -> Self {
        BiPoly {
            basis,
            coeffs: Vec::new(),
        }
    }

    pub fn one(basis: Basis) -> Self {
        Self::monomial(basis, 0, 0, BigInt::one())
    }

    pub fn monomial(basis: Basis, i: usize, j: usize, c: BigInt) -> Self {
        let mut grid = vec![vec![BigInt::zero(); j + 1]; i + 1];
        grid[i][j] = c;
        Self::from_grid(basis, grid)
    }

    /// Builds from a (possibly ragged, untrimmed) coefficient grid.
    pub fn from_grid(basis: Basis, mut grid: Vec<Vec<BigInt>>) -> Self {
        let width = grid.iter().map(Vec::len).max().unwrap_or(0);
        for row in grid.iter_mut() {
            row.resize(width, BigInt::zero());
        }
        BiPoly {
            basis,
            coeffs: trim_grid(grid),
        }
    }

    /// Builds from small integer coefficients.
    pub fn from_i64_grid(basis: Basis, grid: &[&[i64]]) -> Self {
        Self::from_grid(
            basis,
            grid.iter()
                .map(|row| row.iter().map(|&c| BigInt::from(c)).collect())
                .collect(),
        )
    }

    #[inline]
    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn grid(&self) -> &[Vec<BigInt>] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, i: usize, j: usize) -> BigInt {
        self.coeffs
            .get(i)
            .and_then(|row| row.get(j))
            .cloned()
            .unwrap_or_default()
    }

    /// Nonzero terms `(i, j, c)` in grid order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> + '_ {
        self.coeffs.iter().enumerate().flat_map(|(i, row)| {
            row.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(move |(j, c)| (i, j, c))
        })
    }

    fn dims(&self) -> (usize, usize) {
        (self.coeffs.len(), self.coeffs.first().map_or(0, Vec::len))
    }

    pub fn add(&self, other: &BiPoly) -> Result<BiPoly> {
        check_basis(other.basis, self.basis)?;
        let (r1, c1) = self.dims();
        let (r2, c2) = other.dims();
        let mut grid = vec![vec![BigInt::zero(); c1.max(c2)]; r1.max(r2)];
        for (i, j, c) in self.terms().chain(other.terms()) {
            grid[i][j] += c;
        }
        Ok(BiPoly {
            basis: self.basis,
            coeffs: trim_grid(grid),
        })
    }

    pub fn sub(&self, other: &BiPoly) -> Result<BiPoly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> BiPoly {
        self.scale(&BigInt::from(-1))
    }

    pub fn mul(&self, other: &BiPoly) -> Result<BiPoly> {
        check_basis(other.basis, self.basis)?;
        if self.is_zero() || other.is_zero() {
            return Ok(BiPoly::zero(self.basis));
        }
        let (r1, c1) = self.dims();
        let (r2, c2) = other.dims();
        let mut grid = vec![vec![BigInt::zero(); c1 + c2 - 1]; r1 + r2 - 1];
        for (i1, j1, a) in self.terms() {
            for (i2, j2, b) in other.terms() {
                grid[i1 + i2][j1 + j2] += a * b;
            }
        }
        Ok(BiPoly {
            basis: self.basis,
            coeffs: trim_grid(grid),
        })
    }

    pub fn scale(&self, c: &BigInt) -> BiPoly {
        let grid = self
            .coeffs
            .iter()
            .map(|row| row.iter().map(|x| x * c).collect())
            .collect();
        BiPoly {
            basis: self.basis,
            coeffs: trim_grid(grid),
        }
    }

    /// `self + u^r v^n`; shifted basis only.
    pub fn add_term(&self, r: usize, n: usize) -> Result<BiPoly> {
        check_basis(self.basis, Basis::Shifted)?;
        self.add(&BiPoly::monomial(Basis::Shifted, r, n, BigInt::one()))
    }

    fn shifted_axes(&self, delta: i64, basis: Basis) -> BiPoly {
        let delta = BigInt::from(delta);
        let (rows, cols) = self.dims();
        // along the first variable: each column is a polynomial in it
        let mut grid = vec![vec![BigInt::zero(); cols]; rows];
        for j in 0..cols {
            let column: Vec<BigInt> = self.coeffs.iter().map(|row| row[j].clone()).collect();
            for (row, c) in grid.iter_mut().zip(taylor_shift(&column, &delta)) {
                row[j] = c;
            }
        }
        for row in grid.iter_mut() {
            *row = taylor_shift(row, &delta);
        }
        BiPoly {
            basis,
            coeffs: trim_grid(grid),
        }
    }

    /// Same polynomial in the `x, y` basis.
    pub fn to_xy(&self) -> BiPoly {
        match self.basis {
            Basis::Standard => self.clone(),
            Basis::Shifted => self.shifted_axes(-1, Basis::Standard),
        }
    }

    /// Same polynomial in the `u, v` basis.
    pub fn to_uv(&self) -> BiPoly {
        match self.basis {
            Basis::Shifted => self.clone(),
            Basis::Standard => self.shifted_axes(1, Basis::Shifted),
        }
    }

    /// Exact value at `(x0, y0)`, whatever the basis.
    pub fn evaluate(&self, x0: &BigRational, y0: &BigRational) -> BigRational {
        let (a, b) = match self.basis {
            Basis::Standard => (x0.clone(), y0.clone()),
            Basis::Shifted => {
                let one = BigRational::one();
                (x0 - &one, y0 - &one)
            }
        };
        let mut acc = BigRational::zero();
        for row in self.coeffs.iter().rev() {
            let mut inner = BigRational::zero();
            for c in row.iter().rev() {
                inner = inner * &b + BigRational::from_integer(c.clone());
            }
            acc = acc * &a + inner;
        }
        acc
    }

    pub fn evaluate_int(&self, x0: i64, y0: i64) -> BigRational {
        self.evaluate(
            &BigRational::from_integer(x0.into()),
            &BigRational::from_integer(y0.into()),
        )
    }

    /// Formal derivative in `y`; standard basis only.
    pub fn partial_y(&self) -> Result<BiPoly> {
        check_basis(self.basis, Basis::Standard)?;
        let grid = self
            .coeffs
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .skip(1)
                    .map(|(j, c)| c * BigInt::from(j))
                    .collect()
            })
            .collect();
        Ok(BiPoly::from_grid(Basis::Standard, grid))
    }

    pub fn deg_x(&self) -> Result<usize> {
        check_basis(self.basis, Basis::Standard)?;
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(self.coeffs.len() - 1)
    }

    pub fn deg_y(&self) -> Result<usize> {
        check_basis(self.basis, Basis::Standard)?;
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(self.coeffs[0].len() - 1)
    }

    /// `P(x0, y)` as a polynomial in `y`.
    pub fn specialize_x(&self, x0: &BigInt) -> UniPoly {
        let std = self.to_xy();
        let (_, cols) = std.dims();
        let mut out = vec![BigInt::zero(); cols];
        let mut power = BigInt::one();
        for row in &std.coeffs {
            for (acc, c) in out.iter_mut().zip(row) {
                *acc += c * &power;
            }
            power *= x0;
        }
        UniPoly::new('y', out)
    }

    /// `P(x, y0)` as a polynomial in `x`.
    pub fn specialize_y(&self, y0: &BigInt) -> UniPoly {
        let std = self.to_xy();
        let out = std
            .coeffs
            .iter()
            .map(|row| {
                let mut power = BigInt::one();
                let mut acc = BigInt::zero();
                for c in row {
                    acc += c * &power;
                    power *= y0;
                }
                acc
            })
            .collect();
        UniPoly::new('x', out)
    }

    /// Entry `(i, j)` is the coefficient of `x^i y^j` in `P(-x, y)`.
    pub fn negx_coeff_grid(&self) -> Result<Vec<Vec<BigInt>>> {
        check_basis(self.basis, Basis::Standard)?;
        Ok(self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, row)| {
                if i % 2 == 0 {
                    row.clone()
                } else {
                    row.iter().map(|c| -c).collect()
                }
            })
            .collect())
    }

    /// Terms in rendering order: descending first-variable degree, then
    /// descending second-variable degree.
    fn sorted_terms(&self) -> Vec<(usize, usize, &BigInt)> {
        let mut terms: Vec<_> = self.terms().collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0).then(b.1.cmp(&a.1)));
        terms
    }

    /// Text in the standard basis, e.g. `x^2 - 2*x + 2*y`.
    pub fn render_text(&self) -> String {
        let std = self.to_xy();
        render_terms(
            std.sorted_terms()
                .into_iter()
                .map(|(i, j, c)| (c, vec![("x", i), ("y", j)])),
        )
    }

    pub fn to_json(&self) -> PolyJson {
        let std = self.to_xy();
        PolyJson {
            basis: "xy",
            terms: std
                .sorted_terms()
                .into_iter()
                .map(|(i, j, c)| TermJson {
                    x: i,
                    y: j,
                    c: c.to_string(),
                })
                .collect(),
        }
    }

    /// Compact rendering in this polynomial's own basis.
    pub fn render_native(&self) -> String {
        let (a, b) = self.basis.vars();
        render_terms(
            self.sorted_terms()
                .into_iter()
                .map(|(i, j, c)| (c, vec![(a, i), (b, j)])),
        )
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_text())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolyJson {
    pub basis: &'static str,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TermJson {
    pub x: usize,
    pub y: usize,
    pub c: String,
}

fn render_terms<'a, I>(terms: I) -> String
where
    I: Iterator<Item = (&'a BigInt, Vec<(&'a str, usize)>)>,
{
    let mut out = String::new();
    for (k, (c, vars)) in terms.enumerate() {
        let negative = c.is_negative();
        if k == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let mut factors: Vec<String> = Vec::new();
        let magnitude = c.abs();
        let has_vars = vars.iter().any(|&(_, e)| e > 0);
        if !magnitude.is_one() || !has_vars {
            factors.push(magnitude.to_string());
        }
        for (name, e) in vars {
            match e {
                0 => {}
                1 => factors.push(name.to_string()),
                _ => factors.push(format!("{name}^{e}")),
            }
        }
        out.push_str(&factors.join("*"));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Polynomial in one named variable, coefficients by ascending degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniPoly {
    var: char,
    coeffs: Vec<BigInt>,
}

impl UniPoly {
    pub fn new(var: char, mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { var, coeffs }
    }

    pub fn from_i64(var: char, coeffs: &[i64]) -> Self {
        Self::new(var, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn var(&self) -> char {
        self.var
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Result<usize> {
        self.coeffs
            .len()
            .checked_sub(1)
            .ok_or(Error::ZeroPolynomial)
    }

    /// `p(t + delta)`, renaming the variable.
    pub fn shift(&self, delta: i64, var: char) -> UniPoly {
        UniPoly::new(var, taylor_shift(&self.coeffs, &BigInt::from(delta)))
    }

    /// `p(-t)`.
    pub fn negate_var(&self) -> UniPoly {
        UniPoly::new(
            self.var,
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 0 { c.clone() } else { -c })
                .collect(),
        )
    }

    pub fn evaluate(&self, t: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| {
                acc * t + BigRational::from_integer(c.clone())
            })
    }

    pub fn is_unimodal(&self) -> bool {
        first_unimodal_violation(&self.coeffs).is_none()
    }

    pub fn render_text(&self) -> String {
        let name = self.var.to_string();
        render_terms(
            self.coeffs
                .iter()
                .enumerate()
                .rev()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (c, vec![(name.as_str(), k)])),
        )
    }

    pub fn to_json(&self) -> UniPolyJson {
        UniPolyJson {
            var: self.var.to_string(),
            terms: self
                .coeffs
                .iter()
                .enumerate()
                .rev()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| UniTermJson {
                    degree: k,
                    c: c.to_string(),
                })
                .collect(),
        }
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_text())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UniPolyJson {
    pub var: String,
    pub terms: Vec<UniTermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UniTermJson {
    pub degree: usize,
    pub c: String,
}

/// Position of the first entry that rises after the sequence has fallen.
pub fn first_unimodal_violation(seq: &[BigInt]) -> Option<usize> {
    let mut falling = false;
    for k in 1..seq.len() {
        match seq[k].cmp(&seq[k - 1]) {
            Ordering::Less => falling = true,
            Ordering::Greater if falling => return Some(k),
            _ => {}
        }
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    Row,
    Col,
}

/// A row or column that fails to be unimodal, and where it first rises again.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct UnimodalViolation {
    pub axis: Axis,
    pub index: usize,
    pub position: usize,
}

/// Checks every row `grid[i]` and every column `grid[..][j]`.
pub fn rows_cols_unimodal(grid: &[Vec<BigInt>]) -> (bool, Vec<UnimodalViolation>) {
    let mut violations = Vec::new();
    for (i, row) in grid.iter().enumerate() {
        if let Some(position) = first_unimodal_violation(row) {
            violations.push(UnimodalViolation {
                axis: Axis::Row,
                index: i,
                position,
            });
        }
    }
    let width = grid.iter().map(Vec::len).max().unwrap_or(0);
    for j in 0..width {
        let col: Vec<BigInt> = grid
            .iter()
            .map(|row| row.get(j).cloned().unwrap_or_default())
            .collect();
        if let Some(position) = first_unimodal_violation(&col) {
            violations.push(UnimodalViolation {
                axis: Axis::Col,
                index: j,
                position,
            });
        }
    }
    (violations.is_empty(), violations)
}
