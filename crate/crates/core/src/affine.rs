//! Structure of affine bilinear systems: degree of regularity, number of
//! solutions, elimination through Jacobian minors, the shape of the ideal and
//! complexity estimates.

use std::collections::HashMap;

use num_bigint::BigUint;

use crate::combinatorics::binomial;
use crate::error::AlgebraError;
use crate::f5::{buchberger_with_stats, matrix_f5, normal_form, s_polynomial, GroebnerBasis, Mode};
use crate::field::{Field, FieldScalar};
use crate::linalg::{kernel_basis, rank_of_rows, Columns, IncrementalEchelon, Signature};
use crate::minors::{maximal_minors, PolyMatrix};
use crate::monomial::{monomials_in_vars, monomials_of_degree, Block, Monomial, VariableLayout};
use crate::polynomial::Polynomial;
use crate::system::{Flavor, PolySystem};

/// For each variable, the smallest pure power among the leading monomials.
/// `None` when some variable has none, i.e. the ideal is not 0-dimensional.
fn pure_powers(g: &GroebnerBasis, n_vars: usize) -> Option<Vec<u32>> {
    let mut best = vec![None::<u32>; n_vars];
    for lm in g.polys.iter().filter_map(Polynomial::leading_monomial) {
        if lm.is_one() {
            return Some(vec![0; n_vars]);
        }
        let support: Vec<usize> = (0..n_vars).filter(|&v| lm.exponent(v) > 0).collect();
        if let [v] = support[..] {
            let e = lm.exponent(v) as u32;
            best[v] = Some(best[v].map_or(e, |b: u32| b.min(e)));
        }
    }
    best.into_iter().collect()
}

/// Smallest `d` such that every monomial of degree `d` is a multiple of a
/// leading monomial of `g`.
pub fn degree_of_regularity(g: &GroebnerBasis, layout: &VariableLayout) -> Result<u32, AlgebraError> {
    let powers = pure_powers(g, layout.n_vars()).ok_or(AlgebraError::PositiveDimensional)?;
    // every monomial of degree sum(e_v - 1) + 1 contains some x_v^{e_v}
    let cap: u32 = powers.iter().map(|e| e.saturating_sub(1)).sum::<u32>() + 1;
    for d in 0..=cap {
        if monomials_of_degree(layout, d).iter().all(|t| g.lm_divides(t)) {
            return Ok(d);
        }
    }
    Ok(cap)
}

/// Standard monomials of a 0-dimensional ideal, by increasing degree.
pub fn standard_monomials(g: &GroebnerBasis, layout: &VariableLayout) -> Result<Vec<Monomial>, AlgebraError> {
    let d_reg = degree_of_regularity(g, layout)?;
    Ok((0..d_reg)
        .flat_map(|d| monomials_of_degree(layout, d))
        .filter(|t| !g.lm_divides(t))
        .collect())
}

/// Number of standard monomials, the dimension of `R / I`.
pub fn quotient_dimension(g: &GroebnerBasis, layout: &VariableLayout) -> Result<u64, AlgebraError> {
    Ok(standard_monomials(g, layout)?.len() as u64)
}

fn expect_square(f: &PolySystem) -> Result<(), AlgebraError> {
    f.expect_flavor(Flavor::AffineBilinear)?;
    if f.m() != f.n_x() + f.n_y() {
        return Err(AlgebraError::InvalidArgument(format!(
            "needs m = n_x + n_y, got m={} with n_x={}, n_y={}",
            f.m(),
            f.n_x(),
            f.n_y()
        )));
    }
    Ok(())
}

/// What classical Matrix F5 does on the homogenization of an affine system.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct RegularityObservation {
    /// Degree at which the dehomogenized basis became a Gröbner basis of the
    /// affine ideal; `None` if that did not happen up to the cap.
    pub degree: Option<u32>,
    /// `(D, zero rows in the run with degree bound D)` for every bound tried.
    pub zero_rows_by_degree: Vec<(u32, usize)>,
}

impl RegularityObservation {
    /// Zero rows met in Macaulay matrices of degree at most `d`.
    pub fn zero_rows_up_to(&self, d: u32) -> usize {
        self.zero_rows_by_degree
            .iter()
            .filter(|(bound, _)| *bound <= d)
            .map(|(_, n)| *n)
            .max()
            .unwrap_or(0)
    }
}

/// Runs classical Matrix F5 on the total homogenization of `f` with growing
/// degree bound until setting the homogenizing variable to 1 yields a
/// Gröbner basis of `<f>` and the bound has reached `window`, recording the
/// zero rows met on the way.
pub fn observe_regularity(
    f: &PolySystem,
    window: u32,
    cap: u32,
    field: &Field,
) -> Result<RegularityObservation, AlgebraError> {
    if !f.flavor().is_affine() {
        return Err(AlgebraError::FlavorMismatch {
            expected: "affine".into(),
            actual: f.flavor().to_string(),
        });
    }
    let h = f.homogenize_total(field)?;
    let hl = *h.layout();
    let target = *f.layout();
    let mut values = vec![None; hl.n_vars()];
    values[hl.n_vars() - 1] = Some(1);
    let start = h.polys().iter().filter_map(Polynomial::degree).min().unwrap_or(0);
    let mut obs = RegularityObservation {
        degree: None,
        zero_rows_by_degree: Vec::new(),
    };
    for d in start..=cap {
        let (g, stats) = matrix_f5(&h, d, Mode::Classical, field)?;
        obs.zero_rows_by_degree.push((d, stats.reductions_to_zero.len()));
        if obs.degree.is_none() {
            let affine: Vec<Polynomial> = g.polys.iter().map(|p| p.specialize(&values, &target, field)).collect();
            if is_groebner(&affine, field) {
                obs.degree = Some(d);
            }
        }
        if obs.degree.is_some() && d >= window {
            break;
        }
    }
    Ok(obs)
}

/// For each `i`, whether multiplication by `f_i` is injective on the
/// polynomials of degree at most `degree` modulo `<f_1, ..., f_{i-1}>`, i.e.
/// `f_i` has no zero divisor of that degree. Works in the standard-monomial
/// basis of a grevlex Gröbner basis, whose normal forms never raise degree.
pub fn multiplication_injective(f: &PolySystem, degree: u32, field: &Field) -> Result<Vec<bool>, AlgebraError> {
    if !f.flavor().is_affine() {
        return Err(AlgebraError::FlavorMismatch {
            expected: "affine".into(),
            actual: f.flavor().to_string(),
        });
    }
    let layout = *f.layout();
    let mut out = Vec::with_capacity(f.m());
    for (i, fi) in f.polys().iter().enumerate() {
        let Some(e) = fi.degree() else {
            out.push(false);
            continue;
        };
        let (g, _) = buchberger_with_stats(&f.polys()[..i], field);
        let staircase = |top: u32| -> Vec<Monomial> {
            let mut v: Vec<Monomial> = (0..=top)
                .flat_map(|d| monomials_of_degree(&layout, d))
                .filter(|t| !g.lm_divides(t))
                .collect();
            v.sort_by(|a, b| b.cmp(a));
            v
        };
        let sources = staircase(degree);
        let cols = Columns::new(staircase(degree + e));
        let rows: Vec<Vec<FieldScalar>> = sources
            .iter()
            .map(|t| {
                let image = normal_form(&fi.mul_term(t, 1, field), &g.polys, field);
                cols.dense(&image).expect("normal forms stay in the staircase")
            })
            .collect();
        out.push(rank_of_rows(&rows, cols.len(), field) == rows.len());
    }
    Ok(out)
}

fn is_groebner(polys: &[Polynomial], field: &Field) -> bool {
    let g: Vec<Polynomial> = polys.iter().filter(|p| !p.is_zero()).cloned().collect();
    (0..g.len()).all(|a| {
        (a + 1..g.len()).all(|b| {
            let (la, lb) = (
                g[a].leading_monomial().expect("nonzero"),
                g[b].leading_monomial().expect("nonzero"),
            );
            la.is_coprime(lb) || normal_form(&s_polynomial(&g[a], &g[b], field), &g, field).is_zero()
        })
    })
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct AffineReport {
    pub n_x: usize,
    pub n_y: usize,
    pub d_reg_observed: u32,
    pub d_reg_bound: u32,
    pub quotient_dim: u64,
    pub bezout: u64,
    /// Largest Macaulay degree in which zero rows count against regularity:
    /// `d_reg_observed + 1`.
    pub f5_window: u32,
    pub zero_rows_in_window: usize,
    /// Per generator: no zero divisor of degree at most `d_reg_observed`.
    pub multiplication_injective: Vec<bool>,
    pub regular_sequence_observed: bool,
    pub regularity: RegularityObservation,
}

impl AffineReport {
    pub fn matches_generic(&self) -> bool {
        self.d_reg_observed == self.d_reg_bound
            && self.quotient_dim == self.bezout
            && self.regular_sequence_observed
    }
}

/// Grevlex basis, degree of regularity, solution count and F5 behaviour of
/// a square affine bilinear system.
///
/// Zero rows are counted in the homogenized Matrix F5 run up to degree
/// `d_reg + 1`, the last degree in which a Gröbner basis computation of the
/// affine ideal has to build matrices. Past that degree the homogenized
/// system picks up syzygies of its top-degree parts (its solutions at
/// infinity); those stay visible in `regularity.zero_rows_by_degree`.
pub fn affine_report(f: &PolySystem, field: &Field) -> Result<AffineReport, AlgebraError> {
    expect_square(f)?;
    let (n_x, n_y) = (f.n_x(), f.n_y());
    let layout = *f.layout();
    let (g, _) = buchberger_with_stats(f.polys(), field);
    let d_reg_observed = degree_of_regularity(&g, &layout)?;
    let quotient_dim = quotient_dimension(&g, &layout)?;
    let f5_window = d_reg_observed + 1;
    let regularity = observe_regularity(f, f5_window, f.m() as u32 + 3, field)?;
    let zero_rows_in_window = regularity.zero_rows_up_to(f5_window);
    let multiplication_injective = multiplication_injective(f, d_reg_observed, field)?;
    Ok(AffineReport {
        n_x,
        n_y,
        d_reg_observed,
        d_reg_bound: n_x.min(n_y) as u32 + 1,
        quotient_dim,
        bezout: binomial((n_x + n_y) as i64, n_x as i64) as u64,
        f5_window,
        zero_rows_in_window,
        regular_sequence_observed: regularity.degree.is_some()
            && zero_rows_in_window == 0
            && multiplication_injective.iter().all(|&b| b),
        multiplication_injective,
        regularity,
    })
}

/// Jacobian of `f` with respect to the block other than `keep`, with the
/// homogenizing column appended: row `i` is
/// `(df_i/dv_0, ..., df_i/dv_{k-1}, f_i - sum_j v_j df_i/dv_j)`.
/// Its entries are affine linear forms in the kept block.
pub fn dehomogenized_jacobian(f: &PolySystem, keep: Block, field: &Field) -> Result<PolyMatrix, AlgebraError> {
    f.expect_flavor(Flavor::AffineBilinear)?;
    let layout = *f.layout();
    let other = match keep {
        Block::X => Block::Y,
        Block::Y => Block::X,
        Block::All => {
            return Err(AlgebraError::InvalidArgument("keep either the x or the y block".into()))
        }
    };
    let vars: Vec<usize> = layout.block_range(other).collect();
    let cols = vars.len() + 1;
    Ok(PolyMatrix::from_fn(layout, f.m(), cols, |i, j| {
        let p = &f.polys()[i];
        if j < vars.len() {
            p.derivative(vars[j], field)
        } else {
            vars.iter().fold(p.clone(), |acc, &v| {
                acc.sub(&p.derivative(v, field).mul(&Polynomial::var(&layout, v), field), field)
            })
        }
    }))
}

/// Basis of `span{u * f_i : deg(u * f_i) <= d}` intersected with the span of
/// the monomials accepted by `keep`: the columns of the other monomials come
/// first, so echelon rows leading in a kept column are the answer.
fn eliminate_linear(
    polys: &[Polynomial],
    layout: &VariableLayout,
    d: u32,
    keep: impl Fn(&Monomial) -> bool,
    field: &Field,
) -> Vec<Polynomial> {
    let all: Vec<Monomial> = (0..=d).rev().flat_map(|k| monomials_of_degree(layout, k)).collect();
    let mut order: Vec<Monomial> = all.iter().filter(|t| !keep(t)).cloned().collect();
    let boundary = order.len();
    order.extend(all.iter().filter(|t| keep(t)).cloned());
    let position: HashMap<&Monomial, usize> = order.iter().enumerate().map(|(k, t)| (t, k)).collect();

    let mut ech = IncrementalEchelon::new(order.len(), *field);
    for (i, f) in polys.iter().enumerate() {
        let Some(deg) = f.degree() else { continue };
        if deg > d {
            continue;
        }
        for e in 0..=d - deg {
            for u in monomials_of_degree(layout, e) {
                let mut row = vec![0; order.len()];
                for (t, c) in f.mul_monomial(&u).terms() {
                    row[position[t]] = *c;
                }
                ech.push(Signature::new(i + 1, u), row);
            }
        }
    }
    ech.leads()
        .filter(|(lead, _)| *lead >= boundary)
        .map(|(_, r)| {
            let terms = r
                .data
                .iter()
                .enumerate()
                .filter(|(_, c)| **c != 0)
                .map(|(k, c)| (order[k].clone(), *c))
                .collect();
            Polynomial::from_terms(terms, field)
        })
        .collect()
}

fn in_block(layout: &VariableLayout, block: Block) -> impl Fn(&Monomial) -> bool + '_ {
    move |t: &Monomial| {
        (0..layout.n_vars()).all(|v| t.exponent(v) == 0 || layout.block_range(block).contains(&v))
    }
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct EliminationReport {
    pub kept: Block,
    /// Degree bound of the linear-algebra elimination that was needed.
    pub degree: u32,
    pub minors_basis_size: usize,
    pub elimination_basis_size: usize,
    pub minors_in_elimination: bool,
    pub elimination_in_minors: bool,
    /// Standard monomials of the minors ideal in the kept block.
    pub projected_count: Option<u64>,
    pub solution_count: Option<u64>,
}

impl EliminationReport {
    pub fn equal(&self) -> bool {
        self.minors_in_elimination && self.elimination_in_minors
    }
}

/// Compares the ideal of maximal minors of the dehomogenized Jacobian with
/// respect to the other block with the elimination ideal `<f> ∩ k[keep]`,
/// found by degree-bounded linear algebra up to `cap`. Also compares the
/// number of points of the projection with the number of solutions.
pub fn elimination_by_minors_check(
    f: &PolySystem,
    keep: Block,
    cap: u32,
    field: &Field,
) -> Result<EliminationReport, AlgebraError> {
    expect_square(f)?;
    let layout = *f.layout();
    let minors: Vec<Polynomial> = maximal_minors(&dehomogenized_jacobian(f, keep, field)?, field)?
        .into_iter()
        .filter(|p| !p.is_zero())
        .collect();
    let (g1, _) = buchberger_with_stats(&minors, field);
    let start = g1.max_degree().max(2);
    let mut report = None;
    for d in start..=cap.max(start) {
        let elim = eliminate_linear(f.polys(), &layout, d, in_block(&layout, keep), field);
        let (g2, _) = buchberger_with_stats(&elim, field);
        let minors_in = g1.polys.iter().all(|p| normal_form(p, &g2.polys, field).is_zero());
        let elim_in = g2.polys.iter().all(|p| normal_form(p, &g1.polys, field).is_zero());
        let r = EliminationReport {
            kept: keep,
            degree: d,
            minors_basis_size: g1.polys.len(),
            elimination_basis_size: g2.polys.len(),
            minors_in_elimination: minors_in,
            elimination_in_minors: elim_in,
            projected_count: None,
            solution_count: None,
        };
        let done = minors_in || !elim_in;
        report = Some(r);
        if done {
            break;
        }
    }
    let mut report = report.expect("at least one degree");
    let kept_layout = match keep {
        Block::X => VariableLayout::with_counts(layout.x_count(), 0),
        _ => VariableLayout::with_counts(0, layout.y_count()),
    };
    // the minors live in the kept block only; count in that subring
    let kept_vars: Vec<usize> = layout.block_range(keep).collect();
    let values: Vec<Option<u32>> = (0..layout.n_vars())
        .map(|v| if kept_vars.contains(&v) { None } else { Some(0) })
        .collect();
    let projected = GroebnerBasis {
        polys: g1.polys.iter().map(|p| p.specialize(&values, &kept_layout, field)).collect(),
        degree_bound: None,
        reduced: true,
    };
    report.projected_count = quotient_dimension(&projected, &kept_layout).ok();
    let (g, _) = buchberger_with_stats(f.polys(), field);
    report.solution_count = quotient_dimension(&g, &layout).ok();
    Ok(report)
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct ShapeEntry {
    pub variable: String,
    /// `g_j` reduced modulo the elimination ideal, as text.
    pub g: Option<String>,
    pub g_degree: Option<u32>,
    pub verified: bool,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct ShapeReport {
    pub degree: u32,
    pub entries: Vec<ShapeEntry>,
}

impl ShapeReport {
    pub fn holds(&self) -> bool {
        self.entries.iter().all(|e| e.verified)
    }
}

/// Looks for `x_j - g_j(y)` in `<f>` for every affine x-variable. With `B`
/// the standard monomials of a Gröbner basis of `<f>`, the normal form of
/// `x_j` is written in `R/I` as a combination of the normal forms of the
/// y-monomials of degree at most `e`, for `e = 1, 2, ...` up to `cap`.
pub fn shape_lemma_check(f: &PolySystem, cap: u32, field: &Field) -> Result<ShapeReport, AlgebraError> {
    expect_square(f)?;
    let layout = *f.layout();
    let (g, _) = buchberger_with_stats(f.polys(), field);
    let standard: HashMap<Monomial, usize> = standard_monomials(&g, &layout)
        .unwrap_or_default()
        .into_iter()
        .enumerate()
        .map(|(k, t)| (t, k))
        .collect();
    let coords = |p: &Polynomial| -> Vec<FieldScalar> {
        let mut v = vec![0; standard.len()];
        for (t, c) in normal_form(p, &g.polys, field).terms() {
            v[standard[t]] = *c;
        }
        v
    };
    let ys: Vec<usize> = layout.block_range(Block::Y).collect();
    let mut entries = Vec::new();
    let mut degree = 0;
    for v in layout.block_range(Block::X) {
        let xv = Polynomial::var(&layout, v);
        let mut entry = ShapeEntry {
            variable: layout.var_name(v),
            g: None,
            g_degree: None,
            verified: false,
        };
        if !standard.is_empty() {
            for e in 1..=cap.max(1) {
                let basis: Vec<Monomial> = (0..=e)
                    .flat_map(|k| monomials_in_vars(&layout, &ys, k))
                    .collect();
                if let Some(gv) = solve_in_quotient(&basis, &xv, &coords, field) {
                    let candidate = xv.sub(&gv, field);
                    degree = degree.max(e);
                    entry.g_degree = Some(gv.degree().unwrap_or(0));
                    entry.g = Some(gv.to_text(&layout, field));
                    entry.verified = normal_form(&candidate, &g.polys, field).is_zero();
                    break;
                }
            }
        }
        entries.push(entry);
    }
    Ok(ShapeReport { degree, entries })
}

/// A combination `g` of `basis` with `NF(g) = NF(target)`, if one exists.
fn solve_in_quotient(
    basis: &[Monomial],
    target: &Polynomial,
    coords: &impl Fn(&Polynomial) -> Vec<FieldScalar>,
    field: &Field,
) -> Option<Polynomial> {
    let mut columns: Vec<Vec<FieldScalar>> = basis.iter().map(|t| coords(&Polynomial::term(t.clone(), 1))).collect();
    columns.push(coords(target));
    let n = columns[0].len();
    let k = columns.len();
    let rows: Vec<Vec<FieldScalar>> = (0..n).map(|r| columns.iter().map(|c| c[r]).collect()).collect();
    let w = kernel_basis(&rows, k, field).into_iter().find(|w| w[k - 1] != 0)?;
    let scale = field.neg(field.inv(w[k - 1]));
    let terms = basis
        .iter()
        .zip(&w)
        .filter(|(_, c)| **c != 0)
        .map(|(t, c)| (t.clone(), field.mul(*c, scale)))
        .collect();
    Some(Polynomial::from_terms(terms, field))
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct ComplexityReport {
    pub omega: u32,
    pub d_reg_bound: u32,
    /// `C(n_x + n_y + d, d)^omega` with `d = min(n_x + 1, n_y + 1)`.
    #[serde(serialize_with = "decimal")]
    pub bilinear: BigUint,
    /// The same with the Macaulay degree `m + 1` of a generic quadratic
    /// system with `m = n_x + n_y` equations and unknowns.
    #[serde(serialize_with = "decimal")]
    pub generic_quadratic: BigUint,
}

fn decimal<S: serde::Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub fn complexity_report(n_x: usize, n_y: usize, omega: u32) -> Result<ComplexityReport, AlgebraError> {
    if !(2..=3).contains(&omega) {
        return Err(AlgebraError::InvalidArgument(format!(
            "omega must lie in [2, 3], got {omega}"
        )));
    }
    let n = (n_x + n_y) as i64;
    let d = n_x.min(n_y) as i64 + 1;
    let big = |v: i128| BigUint::from(v as u128).pow(omega);
    Ok(ComplexityReport {
        omega,
        d_reg_bound: d as u32,
        bilinear: big(binomial(n + d, d)),
        generic_quadratic: big(binomial(2 * n + 1, n + 1)),
    })
}
