//! Monomials over a two-block variable layout and the grevlex order.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use crate::error::AlgebraError;

pub type Exponents = SmallVec<[u16; 14]>;

/// Two blocks of variables, x-block first then y-block.
///
/// Counts are stored directly. A homogeneous layout with parameters
/// `(n_x, n_y)` has blocks `x_0..x_{n_x}` and `y_0..y_{n_y}`; the affine
/// layout drops the last variable of each block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct VariableLayout {
    x_count: usize,
    y_count: usize,
}

/// Which block of variables a monomial enumeration ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Block {
    X,
    Y,
    All,
}

impl VariableLayout {
    /// Blocks `x_0..x_{n_x}`, `y_0..y_{n_y}`.
    pub fn homogeneous(n_x: usize, n_y: usize) -> Self {
        VariableLayout {
            x_count: n_x + 1,
            y_count: n_y + 1,
        }
    }

    /// Blocks `x_0..x_{n_x-1}`, `y_0..y_{n_y-1}`.
    pub fn affine(n_x: usize, n_y: usize) -> Self {
        VariableLayout {
            x_count: n_x,
            y_count: n_y,
        }
    }

    /// Explicit block sizes; either may be zero.
    pub fn with_counts(x_count: usize, y_count: usize) -> Self {
        VariableLayout { x_count, y_count }
    }

    #[inline]
    pub fn x_count(&self) -> usize {
        self.x_count
    }

    #[inline]
    pub fn y_count(&self) -> usize {
        self.y_count
    }

    #[inline]
    pub fn n_vars(&self) -> usize {
        self.x_count + self.y_count
    }

    #[inline]
    pub fn is_x(&self, var: usize) -> bool {
        var < self.x_count
    }

    /// Global index of `y_j`.
    #[inline]
    pub fn y(&self, j: usize) -> usize {
        self.x_count + j
    }

    pub fn var_name(&self, var: usize) -> String {
        if var < self.x_count {
            format!("x{var}")
        } else {
            format!("y{}", var - self.x_count)
        }
    }

    pub fn block_range(&self, block: Block) -> std::ops::Range<usize> {
        match block {
            Block::X => 0..self.x_count,
            Block::Y => self.x_count..self.n_vars(),
            Block::All => 0..self.n_vars(),
        }
    }

    pub fn one(&self) -> Monomial {
        Monomial::one(self)
    }

    pub fn var(&self, var: usize) -> Monomial {
        Monomial::var(self, var)
    }

    /// Number of monomials of bidegree `(a, b)`.
    pub fn bidegree_dim(&self, a: u32, b: u32) -> u64 {
        count_monomials(self.x_count, a) * count_monomials(self.y_count, b)
    }
}

/// Number of monomials of degree `d` in `nvars` variables.
pub fn count_monomials(nvars: usize, d: u32) -> u64 {
    if nvars == 0 {
        return u64::from(d == 0);
    }
    crate::combinatorics::binomial(d as i64 + nvars as i64 - 1, nvars as i64 - 1) as u64
}

/// A monomial with cached total degree and bidegree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Exponents,
    degree: u32,
    x_degree: u32,
    split: u16,
}

impl Monomial {
    pub fn one(layout: &VariableLayout) -> Self {
        Monomial {
            exps: SmallVec::from_elem(0, layout.n_vars()),
            degree: 0,
            x_degree: 0,
            split: layout.x_count as u16,
        }
    }

    pub fn var(layout: &VariableLayout, var: usize) -> Self {
        let mut m = Self::one(layout);
        m.exps[var] = 1;
        m.degree = 1;
        m.x_degree = u32::from(var < layout.x_count);
        m
    }

    pub fn from_exponents(layout: &VariableLayout, exps: &[u16]) -> Result<Self, AlgebraError> {
        if exps.len() != layout.n_vars() {
            return Err(AlgebraError::LayoutMismatch(format!(
                "{} exponents for {} variables",
                exps.len(),
                layout.n_vars()
            )));
        }
        Ok(Self::from_parts(exps.into(), layout.x_count as u16))
    }

    fn from_parts(exps: Exponents, split: u16) -> Self {
        let degree = exps.iter().map(|&e| e as u32).sum();
        let x_degree = exps[..split as usize].iter().map(|&e| e as u32).sum();
        Monomial {
            exps,
            degree,
            x_degree,
            split,
        }
    }

    #[inline]
    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    #[inline]
    pub fn exponent(&self, var: usize) -> u16 {
        self.exps[var]
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    #[inline]
    pub fn bidegree(&self) -> (u32, u32) {
        (self.x_degree, self.degree - self.x_degree)
    }

    #[inline]
    pub fn n_vars(&self) -> usize {
        self.exps.len()
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    /// Largest variable index with a positive exponent.
    pub fn max_var(&self) -> Option<usize> {
        self.exps.iter().rposition(|&e| e > 0)
    }

    /// Grevlex comparison; panics in debug builds on a layout mismatch.
    #[inline]
    pub fn grevlex_cmp(&self, other: &Monomial) -> Ordering {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        match self.degree.cmp(&other.degree) {
            Ordering::Equal => {}
            o => return o,
        }
        for (a, b) in self.exps.iter().zip(other.exps.iter()).rev() {
            if a != b {
                // larger exponent in the rightmost differing slot loses
                return b.cmp(a);
            }
        }
        Ordering::Equal
    }

    pub fn try_grevlex_cmp(&self, other: &Monomial) -> Result<Ordering, AlgebraError> {
        if self.exps.len() != other.exps.len() || self.split != other.split {
            return Err(AlgebraError::LayoutMismatch(
                "comparing monomials over different layouts".into(),
            ));
        }
        Ok(self.grevlex_cmp(other))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        let exps = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(a, b)| a + b)
            .collect();
        Monomial {
            exps,
            degree: self.degree + other.degree,
            x_degree: self.x_degree + other.x_degree,
            split: self.split,
        }
    }

    /// Multiplies by a single variable.
    pub fn mul_var(&self, var: usize) -> Monomial {
        let mut m = self.clone();
        m.exps[var] += 1;
        m.degree += 1;
        if var < self.split as usize {
            m.x_degree += 1;
        }
        m
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree
            && self
                .exps
                .iter()
                .zip(other.exps.iter())
                .all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let exps = other
            .exps
            .iter()
            .zip(self.exps.iter())
            .map(|(a, b)| a - b)
            .collect();
        Some(Monomial {
            exps,
            degree: other.degree - self.degree,
            x_degree: other.x_degree - self.x_degree,
            split: self.split,
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(a, b)| *a.max(b))
            .collect();
        Self::from_parts(exps, self.split)
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(other.exps.iter())
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Drops the variables whose `keep` flag is false, re-splitting at
    /// `new_split`.
    pub(crate) fn project(&self, keep: &[bool], new_split: u16) -> Monomial {
        let exps = self
            .exps
            .iter()
            .zip(keep)
            .filter(|(_, k)| **k)
            .map(|(e, _)| *e)
            .collect();
        Self::from_parts(exps, new_split)
    }

    pub(crate) fn from_raw(exps: Exponents, split: u16) -> Monomial {
        Self::from_parts(exps, split)
    }

    #[inline]
    pub(crate) fn split(&self) -> u16 {
        self.split
    }

    /// Renders with variable names from the layout, e.g. `x0^2*y1`.
    pub fn display<'a>(&'a self, layout: &'a VariableLayout) -> MonomialDisplay<'a> {
        MonomialDisplay {
            monomial: self,
            layout,
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.grevlex_cmp(other)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let layout = VariableLayout::with_counts(
            self.split as usize,
            self.exps.len() - self.split as usize,
        );
        write!(f, "{}", self.display(&layout))
    }
}

pub struct MonomialDisplay<'a> {
    monomial: &'a Monomial,
    layout: &'a VariableLayout,
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.monomial.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (v, &e) in self.monomial.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}", self.layout.var_name(v))?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// All monomials of `degree` in the variables `vars` (global indices),
/// in descending grevlex order.
pub fn monomials_in_vars(layout: &VariableLayout, vars: &[usize], degree: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    if vars.is_empty() {
        if degree == 0 {
            out.push(layout.one());
        }
        return out;
    }
    let mut exps: Exponents = SmallVec::from_elem(0, layout.n_vars());
    fill(vars, degree, &mut exps, layout.x_count as u16, &mut out);
    out.sort_unstable_by(|a, b| b.grevlex_cmp(a));
    out
}

fn fill(vars: &[usize], remaining: u32, exps: &mut Exponents, split: u16, out: &mut Vec<Monomial>) {
    let (&v, rest) = vars.split_first().expect("nonempty");
    if rest.is_empty() {
        exps[v] = remaining as u16;
        out.push(Monomial::from_parts(exps.clone(), split));
        exps[v] = 0;
        return;
    }
    for e in (0..=remaining).rev() {
        exps[v] = e as u16;
        fill(rest, remaining - e, exps, split, out);
    }
    exps[v] = 0;
}

/// Monomials of `degree` in the first `max_var_index + 1` variables of
/// `block` (indices relative to the block), descending grevlex. A negative
/// index yields the empty set.
pub fn enumerate_monomials(
    layout: &VariableLayout,
    block: Block,
    max_var_index: i64,
    degree: u32,
) -> Vec<Monomial> {
    if max_var_index < 0 {
        return Vec::new();
    }
    let range = layout.block_range(block);
    let count = ((max_var_index + 1) as usize).min(range.len());
    let vars: Vec<usize> = range.take(count).collect();
    monomials_in_vars(layout, &vars, degree)
}

/// All monomials of total degree `degree`, descending grevlex.
pub fn monomials_of_degree(layout: &VariableLayout, degree: u32) -> Vec<Monomial> {
    let vars: Vec<usize> = (0..layout.n_vars()).collect();
    monomials_in_vars(layout, &vars, degree)
}

/// All monomials of bidegree `(a, b)`, descending grevlex.
pub fn monomials_of_bidegree(layout: &VariableLayout, a: u32, b: u32) -> Vec<Monomial> {
    let xs: Vec<usize> = layout.block_range(Block::X).collect();
    let ys: Vec<usize> = layout.block_range(Block::Y).collect();
    let left = monomials_in_vars(layout, &xs, a);
    let right = monomials_in_vars(layout, &ys, b);
    let mut out: Vec<Monomial> = left
        .iter()
        .flat_map(|l| right.iter().map(move |r| l.mul(r)))
        .collect();
    out.sort_unstable_by(|a, b| b.grevlex_cmp(a));
    out
}
