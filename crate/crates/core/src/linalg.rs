//! Signed Macaulay matrices over GF(p) and row echelon forms computed without
//! row permutations.
//!
//! Rows are dense over the column set. Elimination reduces each row only by
//! the rows above it, sweeping its columns left to right, so the signature of
//! a row stays meaningful after reduction.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use crate::error::AlgebraError;
use crate::field::{Field, FieldScalar};
use crate::monomial::{monomials_of_degree, Monomial, VariableLayout};
use crate::polynomial::Polynomial;

/// Label `(t, f_i)` of a row representing `t * f_i`. Indices start at 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Signature {
    pub index: usize,
    pub monomial: Monomial,
}

impl Signature {
    pub fn new(index: usize, monomial: Monomial) -> Self {
        Signature { index, monomial }
    }
}

impl Ord for Signature {
    fn cmp(&self, other: &Self) -> Ordering {
        self.index
            .cmp(&other.index)
            .then_with(|| self.monomial.grevlex_cmp(&other.monomial))
    }
}

impl PartialOrd for Signature {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Column set of a Macaulay matrix: monomials in descending grevlex order
/// with a reverse lookup.
#[derive(Debug, Clone)]
pub struct Columns {
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl Columns {
    pub fn new(monomials: Vec<Monomial>) -> Self {
        debug_assert!(monomials.windows(2).all(|w| w[0] > w[1]));
        let index = monomials
            .iter()
            .enumerate()
            .map(|(k, m)| (m.clone(), k))
            .collect();
        Columns { monomials, index }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    #[inline]
    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    #[inline]
    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Dense coefficient vector of `f`; `None` if a term falls outside.
    pub fn dense(&self, f: &Polynomial) -> Option<Vec<FieldScalar>> {
        let mut row = vec![0; self.len()];
        for (m, c) in f.terms() {
            row[self.position(m)?] = *c;
        }
        Some(row)
    }

    pub fn polynomial(&self, row: &[FieldScalar]) -> Polynomial {
        Polynomial::from_sorted_terms(
            row.iter()
                .enumerate()
                .filter(|(_, c)| **c != 0)
                .map(|(k, c)| (self.monomials[k].clone(), *c))
                .collect(),
        )
    }
}

#[derive(Debug, Clone)]
pub struct SignedMacaulayMatrix {
    pub columns: Columns,
    pub rows: Vec<(Signature, Vec<FieldScalar>)>,
    pub degree: u32,
    pub bidegree: Option<(u32, u32)>,
}

impl SignedMacaulayMatrix {
    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.columns.len()
    }

    pub fn row_polynomial(&self, k: usize) -> Polynomial {
        self.columns.polynomial(&self.rows[k].1)
    }

    /// Debug dump: header `d n_rows n_cols`, the column monomials on one
    /// line, then one `row col value` triple per nonzero entry.
    pub fn dump(&self, layout: &VariableLayout) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {} {}", self.degree, self.n_rows(), self.n_cols());
        let cols: Vec<String> = self
            .columns
            .monomials()
            .iter()
            .map(|m| m.display(layout).to_string())
            .collect();
        let _ = writeln!(out, "{}", cols.join(" "));
        for (r, (_, row)) in self.rows.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                if *v != 0 {
                    let _ = writeln!(out, "{r} {c} {v}");
                }
            }
        }
        out
    }
}

/// One row per polynomial, signature `(1, s_k)` by input position, columns
/// all degree-`d` monomials.
pub fn macaulay_matrix(
    polys: &[Polynomial],
    d: u32,
    layout: &VariableLayout,
) -> Result<SignedMacaulayMatrix, AlgebraError> {
    let columns = Columns::new(monomials_of_degree(layout, d));
    let mut rows = Vec::with_capacity(polys.len());
    for (k, f) in polys.iter().enumerate() {
        if !f.is_homogeneous() || f.degree().is_some_and(|e| e != d) {
            return Err(AlgebraError::Inhomogeneous { expected: d });
        }
        let row = columns
            .dense(f)
            .ok_or_else(|| AlgebraError::LayoutMismatch("term outside the column set".into()))?;
        rows.push((Signature::new(k + 1, layout.one()), row));
    }
    Ok(SignedMacaulayMatrix {
        columns,
        rows,
        degree: d,
        bidegree: None,
    })
}

/// Echelon form grown one row at a time. A pushed row is reduced by every
/// nonzero row already present and, if it survives, normalized monic.
#[derive(Debug, Clone)]
pub struct IncrementalEchelon {
    ncols: usize,
    rows: Vec<EchelonRow>,
    pivot_of_col: Vec<Option<usize>>,
    field: Field,
    lazy_budget: u64,
    ops: u64,
}

#[derive(Debug, Clone)]
pub struct EchelonRow {
    pub signature: Signature,
    pub data: Vec<FieldScalar>,
    pub lead: Option<usize>,
}

impl IncrementalEchelon {
    pub fn new(ncols: usize, field: Field) -> Self {
        let q = (field.modulus() as u64 - 1).pow(2);
        IncrementalEchelon {
            ncols,
            rows: Vec::new(),
            pivot_of_col: vec![None; ncols],
            field,
            // how many unreduced products fit in a u64 accumulator slot
            lazy_budget: (u64::MAX - field.modulus() as u64) / q.max(1),
            ops: 0,
        }
    }

    #[inline]
    pub fn ncols(&self) -> usize {
        self.ncols
    }

    #[inline]
    pub fn rows(&self) -> &[EchelonRow] {
        &self.rows
    }

    /// Multiply-accumulate count so far.
    #[inline]
    pub fn field_ops(&self) -> u64 {
        self.ops
    }

    pub fn rank(&self) -> usize {
        self.rows.iter().filter(|r| r.lead.is_some()).count()
    }

    pub fn pivot_row(&self, col: usize) -> Option<usize> {
        self.pivot_of_col[col]
    }

    /// Reduces and appends a row; returns its leading column, `None` if it
    /// reduced to zero.
    pub fn push(&mut self, signature: Signature, row: Vec<FieldScalar>) -> Option<usize> {
        debug_assert_eq!(row.len(), self.ncols);
        let p = self.field.modulus() as u64;
        let mut acc: Vec<u64> = row.into_iter().map(u64::from).collect();
        let mut pending = 0u64;
        let mut lead = None;
        for c in 0..self.ncols {
            let v = acc[c] % p;
            acc[c] = v;
            if v == 0 {
                continue;
            }
            let Some(pr) = self.pivot_of_col[c] else {
                if lead.is_none() {
                    lead = Some(c);
                }
                continue;
            };
            let factor = p - v;
            let pivot = &self.rows[pr].data;
            if pending + 1 > self.lazy_budget {
                for a in acc[c..].iter_mut() {
                    *a %= p;
                }
                pending = 0;
            }
            for (a, &b) in acc[c..].iter_mut().zip(&pivot[c..]) {
                *a += factor * b as u64;
            }
            pending += 1;
            self.ops += (self.ncols - c) as u64;
            acc[c] = 0;
        }
        let mut data: Vec<FieldScalar> = acc.into_iter().map(|a| (a % p) as u32).collect();
        if let Some(l) = lead {
            let inv = self.field.inv(data[l]);
            if inv != 1 {
                for v in data[l..].iter_mut() {
                    *v = self.field.mul(*v, inv);
                }
                self.ops += (self.ncols - l) as u64;
            }
            self.pivot_of_col[l] = Some(self.rows.len());
        }
        self.rows.push(EchelonRow {
            signature,
            data,
            lead,
        });
        lead
    }

    /// Leading columns of the nonzero rows in row order.
    pub fn leads(&self) -> impl Iterator<Item = (usize, &EchelonRow)> {
        self.rows
            .iter()
            .filter_map(|r| r.lead.map(|l| (l, r)))
    }
}

#[derive(Debug, Clone)]
pub struct EchelonResult {
    pub matrix: SignedMacaulayMatrix,
    pub zero_rows: Vec<Signature>,
    /// Leading column to row index.
    pub pivots: BTreeMap<usize, usize>,
    pub field_ops: u64,
}

impl EchelonResult {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Leading monomials of the nonzero rows.
    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.pivots
            .keys()
            .map(|&c| self.matrix.columns.monomials()[c].clone())
            .collect()
    }
}

/// Echelon form without row permutation: row k is reduced only by rows
/// above it.
pub fn row_echelon(m: &SignedMacaulayMatrix, field: &Field) -> EchelonResult {
    let mut ech = IncrementalEchelon::new(m.n_cols(), *field);
    let mut zero_rows = Vec::new();
    let mut pivots = BTreeMap::new();
    for (k, (sig, row)) in m.rows.iter().enumerate() {
        match ech.push(sig.clone(), row.clone()) {
            Some(l) => {
                pivots.insert(l, k);
            }
            None => zero_rows.push(sig.clone()),
        }
    }
    let field_ops = ech.field_ops();
    let rows = ech
        .rows
        .into_iter()
        .map(|r| (r.signature, r.data))
        .collect();
    EchelonResult {
        matrix: SignedMacaulayMatrix {
            columns: m.columns.clone(),
            rows,
            degree: m.degree,
            bidegree: m.bidegree,
        },
        zero_rows,
        pivots,
        field_ops,
    }
}

/// Rank of a dense matrix given as rows.
pub fn rank_of_rows(rows: &[Vec<FieldScalar>], ncols: usize, field: &Field) -> usize {
    let mut ech = IncrementalEchelon::new(ncols, *field);
    let dummy = Signature::new(0, VariableLayout::with_counts(0, 0).one());
    for r in rows {
        ech.push(dummy.clone(), r.clone());
    }
    ech.rank()
}

pub fn rank(m: &SignedMacaulayMatrix, field: &Field) -> usize {
    row_echelon(m, field).rank()
}

/// Reduced row echelon form: the nonzero rows of the echelon form, sorted by
/// leading column and with every pivot column cleared in the other rows.
pub fn reduced_row_echelon(m: &SignedMacaulayMatrix, field: &Field) -> SignedMacaulayMatrix {
    let ech = row_echelon(m, field);
    let mut rows: Vec<(Signature, Vec<FieldScalar>)> = ech
        .pivots
        .values()
        .map(|&k| ech.matrix.rows[k].clone())
        .collect();
    let leads: Vec<usize> = ech.pivots.keys().copied().collect();
    // back substitution from the bottom pivot upwards
    for j in (0..rows.len()).rev() {
        let lc = leads[j];
        let (upper, lower) = rows.split_at_mut(j);
        let pivot = &lower[0].1;
        for (_, row) in upper.iter_mut() {
            let v = row[lc];
            if v == 0 {
                continue;
            }
            let factor = field.neg(v);
            for c in lc..row.len() {
                if pivot[c] != 0 {
                    row[c] = field.add(row[c], field.mul(factor, pivot[c]));
                }
            }
        }
    }
    SignedMacaulayMatrix {
        columns: m.columns.clone(),
        rows,
        degree: m.degree,
        bidegree: m.bidegree,
    }
}

/// Reduced echelon basis of the span of homogeneous degree-`d` polynomials.
pub fn reduced_span(
    polys: &[Polynomial],
    d: u32,
    layout: &VariableLayout,
    field: &Field,
) -> Result<Vec<Polynomial>, AlgebraError> {
    let m = macaulay_matrix(polys, d, layout)?;
    let r = reduced_row_echelon(&m, field);
    Ok((0..r.n_rows()).map(|k| r.row_polynomial(k)).collect())
}

/// Solves for a basis of the right kernel `{v : A v = 0}` of a dense matrix
/// with `ncols` columns.
pub fn kernel_basis(rows: &[Vec<FieldScalar>], ncols: usize, field: &Field) -> Vec<Vec<FieldScalar>> {
    let mut ech = IncrementalEchelon::new(ncols, *field);
    let dummy = Signature::new(0, VariableLayout::with_counts(0, 0).one());
    for r in rows {
        ech.push(dummy.clone(), r.clone());
    }
    // fully reduce the pivot rows
    let mut piv: Vec<(usize, Vec<FieldScalar>)> = ech
        .rows
        .into_iter()
        .filter_map(|r| r.lead.map(|l| (l, r.data)))
        .collect();
    piv.sort_by_key(|(l, _)| *l);
    for j in (0..piv.len()).rev() {
        let lc = piv[j].0;
        let (upper, lower) = piv.split_at_mut(j);
        let pivot = &lower[0].1;
        for (_, row) in upper.iter_mut() {
            let v = row[lc];
            if v != 0 {
                let factor = field.neg(v);
                for c in lc..ncols {
                    if pivot[c] != 0 {
                        row[c] = field.add(row[c], field.mul(factor, pivot[c]));
                    }
                }
            }
        }
    }
    let is_pivot: Vec<bool> = {
        let mut v = vec![false; ncols];
        for (l, _) in &piv {
            v[*l] = true;
        }
        v
    };
    (0..ncols)
        .filter(|c| !is_pivot[*c])
        .map(|free| {
            let mut v = vec![0; ncols];
            v[free] = 1;
            for (l, row) in &piv {
                v[*l] = field.neg(row[free]);
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Textbook elimination with row swaps, used as an independent oracle.
    fn oracle_rank(rows: &[Vec<u32>], field: &Field) -> usize {
        let mut a: Vec<Vec<u32>> = rows.to_vec();
        let ncols = a.first().map_or(0, Vec::len);
        let mut r = 0;
        for c in 0..ncols {
            let Some(p) = (r..a.len()).find(|&k| a[k][c] != 0) else {
                continue;
            };
            a.swap(r, p);
            let inv = field.inv(a[r][c]);
            let pivot = a[r].clone();
            for (k, row) in a.iter_mut().enumerate() {
                if k != r && row[c] != 0 {
                    let f = field.mul(row[c], inv);
                    for (x, &p) in row.iter_mut().zip(&pivot) {
                        *x = field.sub(*x, field.mul(f, p));
                    }
                }
            }
            r += 1;
        }
        r
    }

    fn random_rows(seed: u64, n: usize, m: usize, field: &Field, sparse: bool) -> Vec<Vec<u32>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..n)
            .map(|_| {
                (0..m)
                    .map(|_| {
                        if sparse && rng.gen_bool(0.7) {
                            0
                        } else {
                            rng.gen_range(0..field.modulus())
                        }
                    })
                    .collect()
            })
            .collect()
    }

    fn matrix_from_rows(rows: Vec<Vec<u32>>, ncols: usize) -> SignedMacaulayMatrix {
        let layout = VariableLayout::with_counts(ncols.max(1), 0);
        let cols = Columns::new(crate::monomial::monomials_of_degree(&layout, 1));
        SignedMacaulayMatrix {
            columns: cols,
            rows: rows
                .into_iter()
                .enumerate()
                .map(|(k, r)| (Signature::new(k + 1, layout.one()), r))
                .collect(),
            degree: 1,
            bidegree: None,
        }
    }

    #[test]
    fn macaulay_examples() {
        let f = Field::default();
        let l = VariableLayout::with_counts(2, 0);
        let x0sq = Polynomial::term(l.var(0).mul(&l.var(0)), 1);
        let m = macaulay_matrix(&[x0sq], 2, &l).unwrap();
        assert_eq!((m.n_rows(), m.n_cols()), (1, 3));
        assert_eq!(m.rows[0].1, vec![1, 0, 0]);
        assert_eq!(macaulay_matrix(&[], 2, &l).unwrap().n_rows(), 0);
        let bad = Polynomial::var(&l, 0).add(&Polynomial::constant(&l, 1), &f);
        assert!(matches!(
            macaulay_matrix(&[bad], 1, &l),
            Err(AlgebraError::Inhomogeneous { .. })
        ));
    }

    #[test]
    fn identity_and_duplicates() {
        let f = Field::default();
        let id = matrix_from_rows(vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]], 3);
        let e = row_echelon(&id, &f);
        assert!(e.zero_rows.is_empty());
        assert_eq!(e.matrix.rows, id.rows);
        let dup = matrix_from_rows(vec![vec![3, 1, 4], vec![3, 1, 4]], 3);
        let e = row_echelon(&dup, &f);
        assert_eq!(e.zero_rows, vec![dup.rows[1].0.clone()]);
        assert_eq!(e.matrix.rows[0].1, vec![1, f.mul(1, f.inv(3)), f.mul(4, f.inv(3))]);
        assert_eq!(rank(&matrix_from_rows(vec![vec![0; 3]; 2], 3), &f), 0);
    }

    #[test]
    fn ranks_match_permuting_oracle() {
        let f = Field::default();
        let small = Field::new(5).unwrap();
        for seed in 0..40 {
            for field in [&f, &small] {
                let (n, m) = (1 + seed as usize % 7, 1 + (seed as usize * 3) % 8);
                let mut rows = random_rows(seed, n, m, field, seed % 2 == 0);
                if n > 2 {
                    // force a dependency
                    let dep: Vec<u32> = rows[0]
                        .iter()
                        .zip(&rows[1])
                        .map(|(a, b)| field.add(*a, field.mul(2, *b)))
                        .collect();
                    rows[n - 1] = dep;
                }
                let mat = matrix_from_rows(rows.clone(), m);
                assert_eq!(rank(&mat, field), oracle_rank(&rows, field), "seed {seed}");
            }
        }
        let square = random_rows(99, 6, 6, &f, false);
        assert_eq!(rank(&matrix_from_rows(square, 6), &f), 6);
    }

    #[test]
    fn zero_rows_are_exactly_dependent_rows() {
        let f = Field::new(7).unwrap();
        for seed in 0..30 {
            let rows = random_rows(seed, 6, 4, &f, true);
            let e = row_echelon(&matrix_from_rows(rows.clone(), 4), &f);
            for k in 0..rows.len() {
                let before = oracle_rank(&rows[..k], &f);
                let with = oracle_rank(&rows[..=k], &f);
                let zero = e.zero_rows.iter().any(|s| s.index == k + 1);
                assert_eq!(zero, before == with, "seed {seed} row {k}");
            }
        }
    }

    #[test]
    fn echelon_preserves_row_space() {
        let f = Field::new(11).unwrap();
        for seed in 0..20 {
            let rows = random_rows(seed, 5, 6, &f, true);
            let e = row_echelon(&matrix_from_rows(rows.clone(), 6), &f);
            let out: Vec<Vec<u32>> = e.matrix.rows.iter().map(|r| r.1.clone()).collect();
            let r_in = oracle_rank(&rows, &f);
            let mut both = rows.clone();
            both.extend(out.iter().cloned());
            assert_eq!(oracle_rank(&out, &f), r_in);
            assert_eq!(oracle_rank(&both, &f), r_in);
            // distinct leads, monic
            let mut leads: Vec<usize> = e.pivots.keys().copied().collect();
            leads.dedup();
            assert_eq!(leads.len(), e.rank());
            for (&l, &k) in &e.pivots {
                assert_eq!(e.matrix.rows[k].1[l], 1);
                assert!(e.matrix.rows[k].1[..l].iter().all(|v| *v == 0));
            }
        }
    }

    #[test]
    fn reduced_form_clears_pivot_columns() {
        let f = Field::default();
        for seed in 0..10 {
            let rows = random_rows(seed, 5, 7, &f, true);
            let r = reduced_row_echelon(&matrix_from_rows(rows.clone(), 7), &f);
            assert_eq!(r.n_rows(), oracle_rank(&rows, &f));
            let leads: Vec<usize> = r
                .rows
                .iter()
                .map(|(_, row)| row.iter().position(|v| *v != 0).unwrap())
                .collect();
            for (j, &l) in leads.iter().enumerate() {
                for (k, (_, row)) in r.rows.iter().enumerate() {
                    assert_eq!(row[l], u32::from(j == k));
                }
            }
        }
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let f = Field::new(13).unwrap();
        for seed in 0..10 {
            let rows = random_rows(seed, 4, 7, &f, true);
            let ker = kernel_basis(&rows, 7, &f);
            assert_eq!(ker.len(), 7 - oracle_rank(&rows, &f));
            for v in &ker {
                for r in &rows {
                    let dot = r.iter().zip(v).fold(0, |s, (a, b)| f.add(s, f.mul(*a, *b)));
                    assert_eq!(dot, 0);
                }
            }
        }
    }

    #[test]
    fn lazy_reduction_with_large_prime() {
        // near 2^31 only a handful of products fit in a u64 slot
        let f = Field::new(2147483647).unwrap();
        for seed in 0..5 {
            let rows = random_rows(seed, 12, 12, &f, false);
            assert_eq!(rank(&matrix_from_rows(rows.clone(), 12), &f), oracle_rank(&rows, &f));
        }
    }

    #[test]
    fn dump_format() {
        let l = VariableLayout::with_counts(2, 0);
        let m = matrix_from_rows(vec![vec![0, 5]], 2);
        assert_eq!(m.dump(&l), "1 1 2\nx0 x1\n0 1 5\n");
    }
}
