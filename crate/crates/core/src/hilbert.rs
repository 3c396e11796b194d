//! Hilbert bi-series of bilinear ideals: the closed form for bi-regular
//! sequences, the colon-ideal recurrence, and direct rank computations, plus
//! the cost model comparing the homogeneous and the bidegree-block engines.

use std::fmt;

use num_rational::Ratio;
use rayon::prelude::*;

use crate::combinatorics::binomial;
use crate::error::AlgebraError;
use crate::f5::{matrix_f5, multihomogeneous_matrix_f5, Mode};
use crate::field::Field;
use crate::linalg::{Columns, IncrementalEchelon, Signature};
use crate::monomial::{monomials_of_bidegree, VariableLayout};
use crate::system::{random_bilinear, Flavor, PolySystem};

/// Truncated power series in `t1, t2`; `coeffs[a][b]` is the coefficient of
/// `t1^a t2^b` for `a <= trunc.0`, `b <= trunc.1`.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct BiSeries {
    coeffs: Vec<Vec<i64>>,
}

impl BiSeries {
    pub fn zero(trunc: (u32, u32)) -> Self {
        BiSeries {
            coeffs: vec![vec![0; trunc.1 as usize + 1]; trunc.0 as usize + 1],
        }
    }

    fn from_fn(trunc: (u32, u32), f: impl Fn(u32, u32) -> i64) -> Self {
        let mut s = BiSeries::zero(trunc);
        for a in 0..=trunc.0 {
            for b in 0..=trunc.1 {
                s.coeffs[a as usize][b as usize] = f(a, b);
            }
        }
        s
    }

    pub fn trunc(&self) -> (u32, u32) {
        (self.coeffs.len() as u32 - 1, self.coeffs[0].len() as u32 - 1)
    }

    pub fn get(&self, a: u32, b: u32) -> i64 {
        self.coeffs
            .get(a as usize)
            .and_then(|row| row.get(b as usize))
            .copied()
            .unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[Vec<i64>] {
        &self.coeffs
    }

    fn add(&self, other: &BiSeries) -> BiSeries {
        BiSeries::from_fn(self.trunc(), |a, b| self.get(a, b) + other.get(a, b))
    }

    fn mul(&self, other: &BiSeries) -> BiSeries {
        let (d1, d2) = self.trunc();
        let mut out = BiSeries::zero((d1, d2));
        for (a, row) in self.coeffs.iter().enumerate() {
            for (b, &c) in row.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for a2 in 0..=(d1 as usize - a) {
                    for b2 in 0..=(d2 as usize - b) {
                        out.coeffs[a + a2][b + b2] += c * other.get(a2 as u32, b2 as u32);
                    }
                }
            }
        }
        out
    }

    fn scale(&self, c: i64) -> BiSeries {
        BiSeries::from_fn(self.trunc(), |a, b| c * self.get(a, b))
    }

    fn pow(&self, e: usize) -> BiSeries {
        let mut acc = BiSeries::monomial(self.trunc(), 0, 0, 1);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    fn monomial(trunc: (u32, u32), a: u32, b: u32, c: i64) -> BiSeries {
        let mut s = BiSeries::zero(trunc);
        if a <= trunc.0 && b <= trunc.1 {
            s.coeffs[a as usize][b as usize] = c;
        }
        s
    }
}

impl fmt::Display for BiSeries {
    /// One line per power of `t1`, columns are powers of `t2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self
            .coeffs
            .iter()
            .flatten()
            .map(|c| c.to_string().len())
            .max()
            .unwrap_or(1);
        for row in &self.coeffs {
            let cells: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

fn check_square(n_x: usize, n_y: usize, m: usize) -> Result<(), AlgebraError> {
    if m > n_x + n_y {
        return Err(AlgebraError::InvalidArgument(format!(
            "need m <= n_x + n_y, got m={m} with n_x={n_x}, n_y={n_y}"
        )));
    }
    Ok(())
}

/// Coefficients of `1 / (1 - t)^k` up to `t^trunc`.
fn inverse_power(k: i64, trunc: u32) -> Vec<i64> {
    (0..=trunc as i64).map(|d| binomial(d + k - 1, d) as i64).collect()
}

/// `1 / ((1-t1)^(n_x+1) (1-t2)^(n_y+1))`.
pub fn hs_zero_ideal(n_x: usize, n_y: usize, trunc: (u32, u32)) -> BiSeries {
    BiSeries::from_fn(trunc, |a, b| {
        (binomial(a as i64 + n_x as i64, a as i64) * binomial(b as i64 + n_y as i64, b as i64)) as i64
    })
}

/// Generating series of the monomials of `k[x_0..x_{n_x}]` divisible by some
/// monomial of degree `n_y + 1` in `x_0..x_{i-n_y-2}`, counted directly.
/// Swap the arguments for the y-side.
pub fn g_series_combinatorial(n_x: usize, n_y: usize, i: usize, trunc: u32) -> Vec<i64> {
    let k = i as i64 - n_y as i64 - 2;
    if k < 0 {
        return vec![0; trunc as usize + 1];
    }
    let front = (k + 1).min(n_x as i64 + 1);
    let back = n_x as i64 + 1 - front;
    (0..=trunc as i64)
        .map(|d| {
            // degree j on the front variables, at least n_y + 1
            ((n_y as i64 + 1)..=d)
                .map(|j| {
                    let rest = if back == 0 {
                        i128::from(j == d)
                    } else {
                        binomial(d - j + back - 1, back - 1)
                    };
                    binomial(j + front - 1, front - 1) * rest
                })
                .sum::<i128>() as i64
        })
        .collect()
}

/// The displayed closed form of the same series,
/// `1/(1-t)^(n_x+1) - sum_j C(i-1-j, n_y+1-j) t^(n_y+1-j) / (1-t)^(n_x+n_y-i+2)`,
/// taken to be zero for `i <= n_y + 1`.
pub fn g_series_closed(n_x: usize, n_y: usize, i: usize, trunc: u32) -> Vec<i64> {
    if i <= n_y + 1 {
        return vec![0; trunc as usize + 1];
    }
    let mut g = inverse_power(n_x as i64 + 1, trunc);
    let tail = inverse_power(n_x as i64 + n_y as i64 - i as i64 + 2, trunc);
    for j in 1..=n_y + 1 {
        let c = binomial(i as i64 - 1 - j as i64, (n_y + 1 - j) as i64) as i64;
        let shift = n_y + 1 - j;
        for d in shift..=trunc as usize {
            g[d] -= c * tail[d - shift];
        }
    }
    g
}

/// `(g_x, g_y)` for generator `i`. Both the closed form and the direct count
/// are evaluated; a disagreement is an error.
pub fn g_series(
    n_x: usize,
    n_y: usize,
    i: usize,
    trunc: u32,
) -> Result<(Vec<i64>, Vec<i64>), AlgebraError> {
    if i < 2 {
        return Err(AlgebraError::InvalidArgument(format!(
            "the g-series start at i = 2, got {i}"
        )));
    }
    let gx = g_series_combinatorial(n_x, n_y, i, trunc);
    let gy = g_series_combinatorial(n_y, n_x, i, trunc);
    for (side, direct, closed) in [
        ("x", &gx, g_series_closed(n_x, n_y, i, trunc)),
        ("y", &gy, g_series_closed(n_y, n_x, i, trunc)),
    ] {
        if *direct != closed {
            return Err(AlgebraError::Inconsistent(format!(
                "g_{side} for i={i}: closed form {closed:?} but counting gives {direct:?}"
            )));
        }
    }
    Ok((gx, gy))
}

/// Iterates `HS_i = (1 - t1 t2) HS_{i-1} + t1 t2 (g_x(t1) + g_y(t2))`.
pub fn hs_recurrence(
    n_x: usize,
    n_y: usize,
    m: usize,
    trunc: (u32, u32),
) -> Result<BiSeries, AlgebraError> {
    check_square(n_x, n_y, m)?;
    let mut hs = hs_zero_ideal(n_x, n_y, trunc);
    for i in 1..=m {
        let (gx, gy) = if i >= 2 {
            g_series(n_x, n_y, i, trunc.0.max(trunc.1))?
        } else {
            (Vec::new(), Vec::new())
        };
        let mut next = BiSeries::zero(trunc);
        for a in 0..=trunc.0 {
            for b in 0..=trunc.1 {
                let mut v = hs.get(a, b);
                if a > 0 && b > 0 {
                    v -= hs.get(a - 1, b - 1);
                    if b == 1 {
                        v += gx.get(a as usize - 1).copied().unwrap_or(0);
                    }
                    if a == 1 {
                        v += gy.get(b as usize - 1).copied().unwrap_or(0);
                    }
                }
                next.coeffs[a as usize][b as usize] = v;
            }
        }
        hs = next;
    }
    Ok(hs)
}

/// The numerator polynomial `N_m(t1, t2)` of the closed form, truncated.
pub fn closed_form_numerator(
    n_x: usize,
    n_y: usize,
    m: usize,
    trunc: (u32, u32),
) -> Result<BiSeries, AlgebraError> {
    check_square(n_x, n_y, m)?;
    let one = BiSeries::monomial(trunc, 0, 0, 1);
    let u = one.add(&BiSeries::monomial(trunc, 1, 1, -1));
    let t1t2 = BiSeries::monomial(trunc, 1, 1, 1);
    let one_minus = |second: bool| {
        let t = if second {
            BiSeries::monomial(trunc, 0, 1, -1)
        } else {
            BiSeries::monomial(trunc, 1, 0, -1)
        };
        one.add(&t)
    };
    let mut n = u.pow(m);
    // the first sum runs with (other, own) = (n_y, t1), the second with (n_x, t2)
    for (other, own_is_t2) in [(n_y, false), (n_x, true)] {
        let outer = one_minus(!own_is_t2).pow(other + 1);
        for l in 1..=m.saturating_sub(other + 1) {
            let mut inner = BiSeries::zero(trunc);
            for k in 1..=other + 1 {
                let e = (other + 1 - k) as u32;
                let c = binomial((l + other - k) as i64, e as i64) as i64;
                let (a, b) = if own_is_t2 { (0, e) } else { (e, 0) };
                inner = inner.add(&BiSeries::monomial(trunc, a, b, c));
            }
            let bracket = one.add(&one_minus(own_is_t2).pow(l).mul(&inner).scale(-1));
            let term = u
                .pow(m - (other + 1) - l)
                .mul(&t1t2)
                .mul(&outer)
                .mul(&bracket);
            n = n.add(&term);
        }
    }
    Ok(n)
}

/// `N_m / ((1-t1)^(n_x+1) (1-t2)^(n_y+1))` expanded exactly.
pub fn hs_closed_form(
    n_x: usize,
    n_y: usize,
    m: usize,
    trunc: (u32, u32),
) -> Result<BiSeries, AlgebraError> {
    Ok(closed_form_numerator(n_x, n_y, m, trunc)?.mul(&hs_zero_ideal(n_x, n_y, trunc)))
}

/// A direct computation; cells whose estimated elimination cost exceeded the
/// budget are listed in `skipped` and hold `None`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectSeries {
    pub cells: Vec<Vec<Option<i64>>>,
    pub skipped: Vec<(u32, u32)>,
    pub field_ops: u64,
}

impl DirectSeries {
    pub fn complete(&self) -> Option<BiSeries> {
        if !self.skipped.is_empty() {
            return None;
        }
        Some(BiSeries {
            coeffs: self
                .cells
                .iter()
                .map(|row| row.iter().map(|c| c.expect("complete")).collect())
                .collect(),
        })
    }
}

/// Estimated multiply-accumulates for the Macaulay matrix of bidegree
/// `(a, b)`: rank squared times the column count, with the rank bounded by
/// the smaller dimension.
pub fn direct_cell_cost(f: &PolySystem, a: u32, b: u32) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    let layout = f.layout();
    let cols = layout.bidegree_dim(a, b);
    let rows = f.m() as u64 * layout.bidegree_dim(a - 1, b - 1);
    let r = rows.min(cols);
    r.saturating_mul(r).saturating_mul(cols)
}

/// `dim R_{a,b} - rank` of the matrix of all products `u * f_i` with `u` of
/// bidegree `(a-1, b-1)`, for every cell of the truncation.
pub fn hs_direct(f: &PolySystem, trunc: (u32, u32), field: &Field) -> Result<BiSeries, AlgebraError> {
    Ok(hs_direct_budgeted(f, trunc, None, field)?
        .complete()
        .expect("no budget"))
}

pub fn hs_direct_budgeted(
    f: &PolySystem,
    trunc: (u32, u32),
    budget: Option<u64>,
    field: &Field,
) -> Result<DirectSeries, AlgebraError> {
    f.expect_flavor(Flavor::HomogeneousBilinear)?;
    let layout = *f.layout();
    let cells: Vec<(u32, u32)> = (0..=trunc.0)
        .flat_map(|a| (0..=trunc.1).map(move |b| (a, b)))
        .collect();
    // (a, b, (dimension, field ops)) per cell, None when over budget
    type Cell = (u32, u32, Option<(i64, u64)>);
    let results: Vec<Cell> = cells
        .par_iter()
        .map(|&(a, b)| {
            if budget.is_some_and(|limit| direct_cell_cost(f, a, b) > limit) {
                return (a, b, None);
            }
            (a, b, Some(direct_cell(f, &layout, a, b, field)))
        })
        .collect();
    let mut out = DirectSeries {
        cells: vec![vec![None; trunc.1 as usize + 1]; trunc.0 as usize + 1],
        skipped: Vec::new(),
        field_ops: 0,
    };
    for (a, b, r) in results {
        match r {
            Some((v, ops)) => {
                out.cells[a as usize][b as usize] = Some(v);
                out.field_ops += ops;
            }
            None => out.skipped.push((a, b)),
        }
    }
    Ok(out)
}

fn direct_cell(f: &PolySystem, layout: &VariableLayout, a: u32, b: u32, field: &Field) -> (i64, u64) {
    let dim = layout.bidegree_dim(a, b) as i64;
    if a == 0 || b == 0 {
        return (dim, 0);
    }
    let columns = Columns::new(monomials_of_bidegree(layout, a, b));
    let mut ech = IncrementalEchelon::new(columns.len(), *field);
    'rows: for (k, g) in f.polys().iter().enumerate() {
        for u in monomials_of_bidegree(layout, a - 1, b - 1) {
            if ech.rank() == columns.len() {
                break 'rows;
            }
            let row = columns
                .dense(&g.mul_monomial(&u))
                .expect("bilinear product lies in the block");
            ech.push(Signature::new(k + 1, u), row);
        }
    }
    (dim - ech.rank() as i64, ech.field_ops())
}

/// Sums along anti-diagonals: the coefficient of `t^d` in `HS(t, t)`, for
/// `d` up to the smaller truncation order.
pub fn univariate_hs(b: &BiSeries) -> Vec<i64> {
    let (d1, d2) = b.trunc();
    (0..=d1.min(d2))
        .map(|d| (0..=d).map(|a| b.get(a, d - a)).sum())
        .collect()
}

fn check_cost_args(n_x: usize, n_y: usize, m: usize, d: u32) -> Result<(), AlgebraError> {
    check_square(n_x, n_y, m)?;
    if d < 2 {
        return Err(AlgebraError::InvalidArgument(format!(
            "the cost model needs D >= 2, got {d}"
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostModel {
    /// `(C(D+n_x+n_y+1, D) - [t^D] HS(t,t))^2 * C(D+n_x+n_y+1, D)`.
    pub t_hom: i128,
    /// `sum_{d1+d2=D, 1<=d1,d2<=D-1} (dim R_{d1,d2} - HS_{d1,d2})^2 dim R_{d1,d2}`.
    pub t_multihom: i128,
}

impl CostModel {
    pub fn factor(&self) -> Ratio<i128> {
        Ratio::new(self.t_hom, self.t_multihom)
    }
}

/// Both displayed cost expressions, with the hidden constants set to 1.
pub fn cost_model(n_x: usize, n_y: usize, m: usize, d: u32) -> Result<CostModel, AlgebraError> {
    check_cost_args(n_x, n_y, m, d)?;
    let hs = hs_closed_form(n_x, n_y, m, (d, d))?;
    let total = binomial((d as usize + n_x + n_y + 1) as i64, d as i64);
    let rank = total - univariate_hs(&hs)[d as usize] as i128;
    let t_hom = rank * rank * total;
    let t_multihom = (1..d)
        .map(|d1| {
            let d2 = d - d1;
            let dim = binomial(d1 as i64 + n_x as i64, d1 as i64) * binomial(d2 as i64 + n_y as i64, d2 as i64);
            let r = dim - hs.get(d1, d2) as i128;
            r * r * dim
        })
        .sum();
    Ok(CostModel { t_hom, t_multihom })
}

/// The predicted speed-up `F(n_x, n_y, m, D)` of the block engine, exactly.
pub fn speedup_factor(n_x: usize, n_y: usize, m: usize, d: u32) -> Result<Ratio<i128>, AlgebraError> {
    Ok(cost_model(n_x, n_y, m, d)?.factor())
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct EngineRatio {
    pub hom_ops: u64,
    pub multihom_ops: u64,
    pub ratio: f64,
    pub predicted: f64,
}

/// Runs both engines on a seeded random bilinear system up to degree `d` and
/// compares their elimination costs with `F`.
pub fn measure_engine_ratio(
    n_x: usize,
    n_y: usize,
    m: usize,
    d: u32,
    seed: u64,
    mode: Mode,
    field: &Field,
) -> Result<EngineRatio, AlgebraError> {
    let predicted = speedup_factor(n_x, n_y, m, d)?;
    let sys = random_bilinear(n_x, n_y, m, seed, field)?;
    let (_, hom) = matrix_f5(&sys, d, mode, field)?;
    let (_, multi) = multihomogeneous_matrix_f5(&sys, d, mode, field)?;
    Ok(EngineRatio {
        hom_ops: hom.field_ops,
        multihom_ops: multi.field_ops,
        ratio: hom.field_ops as f64 / multi.field_ops.max(1) as f64,
        predicted: *predicted.numer() as f64 / *predicted.denom() as f64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::{enumerate_monomials, monomials_of_degree, Block};

    #[test]
    fn zero_ideal_counts_monomials() {
        let s = hs_zero_ideal(1, 1, (3, 3));
        assert_eq!(s.get(1, 1), 4);
        for (nx, ny) in [(1, 2), (3, 2)] {
            let l = VariableLayout::homogeneous(nx, ny);
            let s = hs_zero_ideal(nx, ny, (4, 4));
            for a in 0..=4 {
                for b in 0..=4 {
                    assert_eq!(s.get(a, b) as usize, monomials_of_bidegree(&l, a, b).len());
                }
            }
        }
    }

    #[test]
    fn g_series_against_enumeration() {
        for (nx, ny) in [(2, 2), (3, 2), (2, 4), (4, 3)] {
            let l = VariableLayout::homogeneous(nx, ny);
            for i in 2..=nx + ny {
                let gens = enumerate_monomials(&l, Block::X, i as i64 - ny as i64 - 2, ny as u32 + 1);
                let (gx, _) = g_series(nx, ny, i, 7).unwrap();
                for d in 0..=7u32 {
                    let count = monomials_of_bidegree(&l, d, 0)
                        .iter()
                        .filter(|t| gens.iter().any(|g| g.divides(t)))
                        .count();
                    assert_eq!(gx[d as usize] as usize, count, "nx={nx} ny={ny} i={i} d={d}");
                    assert!(gx[d as usize] <= binomial(d as i64 + nx as i64, nx as i64) as i64);
                }
            }
        }
    }

    #[test]
    fn g_series_first_nonzero_index() {
        let (nx, ny) = (3, 2);
        assert!(g_series(nx, ny, ny + 1, 6).unwrap().0.iter().all(|&c| c == 0));
        let (gx, _) = g_series(nx, ny, ny + 2, 8).unwrap();
        for d in 0..=8i64 {
            let expected = binomial(d - ny as i64 - 1 + nx as i64, nx as i64) as i64;
            assert_eq!(gx[d as usize], expected);
        }
        assert!(g_series(nx, ny, 1, 6).is_err());
    }

    #[test]
    fn recurrence_small_cases() {
        assert_eq!(hs_recurrence(2, 3, 0, (4, 4)).unwrap(), hs_zero_ideal(2, 3, (4, 4)));
        let one = hs_recurrence(1, 1, 1, (3, 3)).unwrap();
        assert_eq!(one.get(1, 1), 3);
        for m in 0..=5 {
            let s = hs_recurrence(2, 3, m, (5, 5)).unwrap();
            for a in 0..=5 {
                assert_eq!(s.get(a, 0), binomial(a as i64 + 2, 2) as i64);
            }
            assert_eq!(s.get(0, 0), 1);
        }
        assert!(hs_recurrence(2, 2, 5, (3, 3)).is_err());
    }

    #[test]
    fn closed_form_equals_recurrence() {
        for nx in 0..=4 {
            for ny in 0..=4 {
                for m in 0..=nx + ny {
                    assert_eq!(
                        hs_closed_form(nx, ny, m, (7, 7)).unwrap(),
                        hs_recurrence(nx, ny, m, (7, 7)).unwrap(),
                        "nx={nx} ny={ny} m={m}"
                    );
                }
            }
        }
    }

    #[test]
    fn complete_intersection_numerator() {
        let t = (6, 6);
        for m in 0..=3 {
            let n = closed_form_numerator(2, 2, m, t).unwrap();
            let u = BiSeries::monomial(t, 0, 0, 1).add(&BiSeries::monomial(t, 1, 1, -1));
            assert_eq!(n, u.pow(m));
        }
    }

    #[test]
    fn direct_matches_closed_form() {
        let f = Field::default();
        let sys = random_bilinear(2, 2, 3, 9, &f).unwrap();
        assert_eq!(hs_direct(&sys, (4, 4), &f).unwrap(), hs_closed_form(2, 2, 3, (4, 4)).unwrap());
        let sys = random_bilinear(2, 2, 4, 2, &f).unwrap();
        assert_eq!(hs_direct(&sys, (5, 5), &f).unwrap(), hs_closed_form(2, 2, 4, (5, 5)).unwrap());
    }

    #[test]
    fn direct_on_degenerate_system_is_larger() {
        let f = Field::default();
        let sys = random_bilinear(2, 2, 3, 5, &f).unwrap();
        let mut polys = sys.polys().to_vec();
        polys[1] = polys[0].clone();
        let dup = PolySystem::homogeneous(*sys.layout(), polys).unwrap();
        let direct = hs_direct(&dup, (4, 4), &f).unwrap();
        let closed = hs_closed_form(2, 2, 3, (4, 4)).unwrap();
        let mut strict = false;
        for a in 0..=4 {
            for b in 0..=4 {
                assert!(direct.get(a, b) >= closed.get(a, b));
                strict |= direct.get(a, b) > closed.get(a, b);
            }
        }
        assert!(strict);
        assert_eq!(direct.get(0, 0), 1);
    }

    #[test]
    fn budget_skips_expensive_cells() {
        let f = Field::default();
        let sys = random_bilinear(2, 2, 3, 1, &f).unwrap();
        let d = hs_direct_budgeted(&sys, (3, 3), Some(0), &f).unwrap();
        assert!(d.complete().is_none());
        assert_eq!(d.skipped.len(), 9);
        assert_eq!(d.cells[0][2], Some(6));
    }

    #[test]
    fn univariate_matches_total_degree_rank() {
        let f = Field::default();
        let sys = random_bilinear(2, 1, 3, 4, &f).unwrap();
        let l = *sys.layout();
        let uni = univariate_hs(&hs_direct(&sys, (4, 4), &f).unwrap());
        for d in 0..=4u32 {
            // rank of all degree-d multiples, over all degree-d monomials
            let columns = Columns::new(monomials_of_degree(&l, d));
            let mut ech = IncrementalEchelon::new(columns.len(), f);
            if d >= 2 {
                for (k, g) in sys.polys().iter().enumerate() {
                    for u in monomials_of_degree(&l, d - 2) {
                        ech.push(Signature::new(k + 1, u.clone()), columns.dense(&g.mul_monomial(&u)).unwrap());
                    }
                }
            }
            assert_eq!(uni[d as usize], (columns.len() - ech.rank()) as i64);
        }
        let zero = univariate_hs(&hs_zero_ideal(1, 1, (2, 2)));
        assert_eq!(zero[2], 10);
    }

    #[test]
    fn cost_model_degenerate_and_consistent() {
        let c = cost_model(2, 2, 3, 2).unwrap();
        let hs = hs_closed_form(2, 2, 3, (2, 2)).unwrap();
        let dim = 9i128;
        assert_eq!(c.t_multihom, (dim - hs.get(1, 1) as i128).pow(2) * dim);
        assert_eq!(speedup_factor(2, 2, 3, 2).unwrap(), c.factor());
        assert!(cost_model(2, 2, 5, 4).is_err());
        assert!(cost_model(2, 2, 3, 1).is_err());
    }

    #[test]
    fn speedup_values() {
        let f = speedup_factor(3, 4, 7, 6).unwrap();
        assert_eq!(f, Ratio::new(4_684_823, 212_059));
    }
}
