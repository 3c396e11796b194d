//! Determinants of matrices of linear forms, maximal minors, one-echelon
//! Gröbner bases of minor ideals and kernel vectors of extension matrices.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::combinatorics::subsets;
use crate::error::AlgebraError;
use crate::field::Field;
use crate::linalg::{macaulay_matrix, rank_of_rows, row_echelon, Columns};
use crate::monomial::{enumerate_monomials, Block, Monomial, VariableLayout};
use crate::polynomial::Polynomial;

/// A dense matrix of polynomials, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    layout: VariableLayout,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Polynomial>) -> Result<Self, AlgebraError> {
        Self::with_layout(None, rows, cols, entries)
    }

    /// Like [`PolyMatrix::new`] but records the layout explicitly, which
    /// matters when every entry is zero.
    pub fn with_layout(
        layout: Option<VariableLayout>,
        rows: usize,
        cols: usize,
        entries: Vec<Polynomial>,
    ) -> Result<Self, AlgebraError> {
        if entries.len() != rows * cols {
            return Err(AlgebraError::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        let layout = layout
            .or_else(|| {
                entries.iter().find_map(|e| {
                    e.leading_monomial().map(|m| {
                        let x = m.split() as usize;
                        VariableLayout::with_counts(x, m.n_vars() - x)
                    })
                })
            })
            .unwrap_or_else(|| VariableLayout::with_counts(0, 0));
        Ok(PolyMatrix {
            layout,
            rows,
            cols,
            entries,
        })
    }

    pub fn from_fn(
        layout: VariableLayout,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Polynomial,
    ) -> Self {
        let entries = (0..rows)
            .flat_map(|i| (0..cols).map(move |j| (i, j)))
            .map(|(i, j)| f(i, j))
            .collect();
        PolyMatrix {
            layout,
            rows,
            cols,
            entries,
        }
    }

    #[inline]
    pub fn n_rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn n_cols(&self) -> usize {
        self.cols
    }

    pub fn layout(&self) -> &VariableLayout {
        &self.layout
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.cols + j]
    }

    /// The submatrix on the given rows (all columns).
    pub fn select_rows(&self, rows: &[usize]) -> PolyMatrix {
        PolyMatrix::from_fn(self.layout, rows.len(), self.cols, |i, j| {
            self.get(rows[i], j).clone()
        })
    }

    /// `[self | other]`.
    pub fn hconcat(&self, other: &PolyMatrix) -> Result<PolyMatrix, AlgebraError> {
        if self.rows != other.rows {
            return Err(AlgebraError::Shape("row counts differ".into()));
        }
        Ok(PolyMatrix::from_fn(
            self.layout,
            self.rows,
            self.cols + other.cols,
            |i, j| {
                if j < self.cols {
                    self.get(i, j).clone()
                } else {
                    other.get(i, j - self.cols).clone()
                }
            },
        ))
    }

    /// Every entry is zero or a homogeneous linear form.
    pub fn is_linear(&self) -> bool {
        self.entries
            .iter()
            .all(|e| e.is_zero() || (e.is_homogeneous() && e.degree() == Some(1)))
    }

    /// The variable block holding every entry: `Y` if all entries use only
    /// y variables, otherwise `X`.
    pub fn entry_block(&self) -> Block {
        let nonzero: Vec<_> = self.entries.iter().filter(|e| !e.is_zero()).collect();
        if self.layout.y_count() > 0
            && !nonzero.is_empty()
            && nonzero.iter().all(|e| e.lives_in(&self.layout, Block::Y))
        {
            Block::Y
        } else {
            Block::X
        }
    }

    /// `v * self` for a row vector `v`.
    pub fn left_mul(&self, v: &[Polynomial], field: &Field) -> Result<Vec<Polynomial>, AlgebraError> {
        if v.len() != self.rows {
            return Err(AlgebraError::Shape("vector length differs from row count".into()));
        }
        Ok((0..self.cols)
            .map(|j| {
                v.iter().enumerate().fold(Polynomial::zero(), |acc, (i, vi)| {
                    acc.add(&vi.mul(self.get(i, j), field), field)
                })
            })
            .collect())
    }
}

/// The staircase matrix with entry `x_{i-j}` when `0 <= i-j <= p-q`, zero
/// elsewhere (1-based `i`, `j`). Its maximal minors have leading monomials
/// exactly the degree-`q` monomials in `x_0..x_{p-q}`.
pub fn staircase_witness(p: usize, q: usize) -> Result<PolyMatrix, AlgebraError> {
    if q == 0 || p < q {
        return Err(AlgebraError::InvalidArgument(format!(
            "need p >= q >= 1, got p={p}, q={q}"
        )));
    }
    let layout = VariableLayout::with_counts(p - q + 1, 0);
    Ok(PolyMatrix::from_fn(layout, p, q, |i, j| {
        if i >= j && i - j <= p - q {
            Polynomial::var(&layout, i - j)
        } else {
            Polynomial::zero()
        }
    }))
}

/// Leading monomial of the minor of [`staircase_witness`] that deletes the
/// (1-based, increasing) rows `deleted`: `x0^{i1-1} x1^{i2-i1-1} ... x_{p-q}^{p-i_{p-q}}`.
pub fn staircase_minor_lm(p: usize, q: usize, deleted: &[usize]) -> Monomial {
    let layout = VariableLayout::with_counts(p - q + 1, 0);
    let mut exps = vec![0u16; p - q + 1];
    let mut prev = 0;
    for (k, &i) in deleted.iter().enumerate() {
        exps[k] = (i - prev - 1) as u16;
        prev = i;
    }
    exps[p - q] = (p - prev) as u16;
    Monomial::from_exponents(&layout, &exps).expect("sized to the layout")
}

/// Random `rows x cols` matrix of linear forms in the first `nvars`
/// variables of `block`.
pub fn random_linear_matrix(
    layout: VariableLayout,
    block: Block,
    nvars: usize,
    rows: usize,
    cols: usize,
    seed: u64,
    field: &Field,
) -> PolyMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vars: Vec<usize> = layout.block_range(block).take(nvars).collect();
    PolyMatrix::from_fn(layout, rows, cols, |_, _| {
        let terms = vars
            .iter()
            .map(|&v| (layout.var(v), rng.gen_range(0..field.modulus())))
            .collect();
        Polynomial::from_terms(terms, field)
    })
}

/// Memoized Laplace expansion along the last column. A row subset of size
/// `k` is paired with the first `k` columns, so every sub-minor is shared by
/// all the larger minors that contain it.
struct MinorCache<'a> {
    m: &'a PolyMatrix,
    field: &'a Field,
    memo: HashMap<u128, Polynomial>,
    ops: u64,
}

impl<'a> MinorCache<'a> {
    fn new(m: &'a PolyMatrix, field: &'a Field) -> Self {
        assert!(m.n_rows() <= 128, "row subsets are kept in a 128-bit mask");
        MinorCache {
            m,
            field,
            memo: HashMap::new(),
            ops: 0,
        }
    }

    fn minor(&mut self, mask: u128) -> Polynomial {
        if let Some(p) = self.memo.get(&mask) {
            return p.clone();
        }
        let k = mask.count_ones() as usize;
        let result = if k == 0 {
            Polynomial::constant(self.m.layout(), 1)
        } else {
            let col = k - 1;
            let mut acc = Polynomial::zero();
            let rows: Vec<usize> = (0..self.m.n_rows()).filter(|r| mask >> r & 1 == 1).collect();
            for (pos, &r) in rows.iter().enumerate() {
                let entry = self.m.get(r, col);
                if entry.is_zero() {
                    continue;
                }
                let sub = self.minor(mask & !(1u128 << r));
                if sub.is_zero() {
                    continue;
                }
                self.ops += (entry.n_terms() * sub.n_terms()) as u64;
                let term = entry.mul(&sub, self.field);
                acc = if (pos + col).is_multiple_of(2) {
                    acc.add(&term, self.field)
                } else {
                    acc.sub(&term, self.field)
                };
            }
            acc
        };
        self.memo.insert(mask, result.clone());
        result
    }
}

fn mask_of(rows: &[usize]) -> u128 {
    rows.iter().fold(0, |m, r| m | 1u128 << r)
}

/// Exact determinant of a square matrix.
pub fn det_poly(m: &PolyMatrix, field: &Field) -> Result<Polynomial, AlgebraError> {
    if m.n_rows() != m.n_cols() {
        return Err(AlgebraError::Shape(format!(
            "determinant of a {}x{} matrix",
            m.n_rows(),
            m.n_cols()
        )));
    }
    let all: Vec<usize> = (0..m.n_rows()).collect();
    Ok(MinorCache::new(m, field).minor(mask_of(&all)))
}

/// Maximal minors together with the number of coefficient multiplications
/// spent on them.
pub fn maximal_minors_counted(
    m: &PolyMatrix,
    field: &Field,
) -> Result<(Vec<Polynomial>, u64), AlgebraError> {
    let (l, c) = (m.n_rows(), m.n_cols());
    if l < c {
        return Err(AlgebraError::Shape(format!("maximal minors of a {l}x{c} matrix")));
    }
    let mut cache = MinorCache::new(m, field);
    let minors = subsets(l, c)
        .iter()
        .map(|rows| cache.minor(mask_of(rows)))
        .collect();
    Ok((minors, cache.ops))
}

/// Determinants of all `c x c` row-submatrices of an `l x c` matrix, row
/// subsets in lexicographic order.
pub fn maximal_minors(m: &PolyMatrix, field: &Field) -> Result<Vec<Polynomial>, AlgebraError> {
    maximal_minors_counted(m, field).map(|(v, _)| v)
}

/// Nonzero rows of the echelon form of the degree-`q` Macaulay matrix of `s`,
/// plus the elimination's field-operation count.
pub fn reduce_set_counted(
    s: &[Polynomial],
    q: u32,
    layout: &VariableLayout,
    field: &Field,
) -> Result<(Vec<Polynomial>, u64), AlgebraError> {
    let s: Vec<Polynomial> = s.iter().filter(|f| !f.is_zero()).cloned().collect();
    let mac = macaulay_matrix(&s, q, layout)?;
    let ech = row_echelon(&mac, field);
    let out = ech
        .pivots
        .values()
        .map(|&k| ech.matrix.row_polynomial(k))
        .collect::<Vec<_>>();
    // keep the row order of the matrix rather than pivot-column order
    let mut by_row: Vec<(usize, Polynomial)> =
        ech.pivots.values().copied().zip(out).collect();
    by_row.sort_by_key(|(k, _)| *k);
    Ok((by_row.into_iter().map(|(_, p)| p).collect(), ech.field_ops))
}

/// Reduce: echelonize a set of degree-`q` forms; the result has pairwise
/// distinct leading monomials.
pub fn reduce_set(
    s: &[Polynomial],
    q: u32,
    layout: &VariableLayout,
    field: &Field,
) -> Result<Vec<Polynomial>, AlgebraError> {
    reduce_set_counted(s, q, layout, field).map(|(v, _)| v)
}

#[derive(Debug, Clone)]
pub struct MinorsGb {
    pub basis: Vec<Polynomial>,
    /// Leading monomials of `basis`, descending.
    pub leading_monomials: Vec<Monomial>,
    /// The degree-`c` monomials in the first `l-c+1` variables of the
    /// entries' block, descending.
    pub expected: Vec<Monomial>,
    /// Whether the leading monomials are exactly `expected`.
    pub generic: bool,
}

/// Echelon form of the maximal minors. For a generic matrix of linear forms
/// this is a grevlex Gröbner basis of the ideal of maximal minors.
pub fn minors_gb(m: &PolyMatrix, field: &Field) -> Result<MinorsGb, AlgebraError> {
    let (l, c) = (m.n_rows(), m.n_cols());
    let minors = maximal_minors(m, field)?;
    let basis = reduce_set(&minors, c as u32, m.layout(), field)?;
    let mut leading_monomials: Vec<Monomial> =
        basis.iter().filter_map(|f| f.leading_monomial().cloned()).collect();
    leading_monomials.sort_by(|a, b| b.cmp(a));
    let expected = enumerate_monomials(m.layout(), m.entry_block(), (l - c) as i64, c as u32);
    let generic = leading_monomials == expected;
    Ok(MinorsGb {
        basis,
        leading_monomials,
        expected,
        generic,
    })
}

/// An `l x (l-c-1)` 0/1 matrix with one 1 per column, at most one per row,
/// the rows of the ones increasing with the column.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExtensionPattern {
    rows: usize,
    ones: Vec<usize>,
}

impl ExtensionPattern {
    /// `ones[j]` is the (0-based) row of the 1 in column `j`.
    pub fn new(rows: usize, ones: Vec<usize>) -> Result<Self, AlgebraError> {
        if ones.windows(2).any(|w| w[0] >= w[1]) || ones.last().is_some_and(|&r| r >= rows) {
            return Err(AlgebraError::Shape(format!(
                "pattern rows {ones:?} are not increasing below {rows}"
            )));
        }
        Ok(ExtensionPattern { rows, ones })
    }

    /// All patterns for an `l x c` matrix, in lexicographic order of the
    /// rows holding the ones.
    pub fn all(l: usize, c: usize) -> Vec<ExtensionPattern> {
        if l < c + 1 {
            return Vec::new();
        }
        subsets(l, l - c - 1)
            .into_iter()
            .map(|ones| ExtensionPattern { rows: l, ones })
            .collect()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn ones(&self) -> &[usize] {
        &self.ones
    }

    fn as_matrix(&self, layout: VariableLayout) -> PolyMatrix {
        PolyMatrix::from_fn(layout, self.rows, self.ones.len(), |i, j| {
            if self.ones[j] == i {
                Polynomial::constant(&layout, 1)
            } else {
                Polynomial::zero()
            }
        })
    }
}

/// `v_k = (-1)^{k+1} minor([M | T], k)` for `k = 1..l`, where the minor
/// deletes row `k`. Satisfies `v * M = 0`.
pub fn kernel_vector(
    m: &PolyMatrix,
    t: &ExtensionPattern,
    field: &Field,
) -> Result<Vec<Polynomial>, AlgebraError> {
    let (l, c) = (m.n_rows(), m.n_cols());
    if l < c + 1 || t.rows != l || t.ones.len() != l - c - 1 {
        return Err(AlgebraError::Shape(format!(
            "pattern {}x{} does not extend a {l}x{c} matrix",
            t.rows,
            t.ones.len()
        )));
    }
    let ext = m.hconcat(&t.as_matrix(*m.layout()))?;
    let mut cache = MinorCache::new(&ext, field);
    let full = mask_of(&(0..l).collect::<Vec<_>>());
    Ok((0..l)
        .map(|k| {
            let minor = cache.minor(full & !(1u128 << k));
            if k % 2 == 0 {
                minor
            } else {
                minor.neg(field)
            }
        })
        .collect())
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct KernelDegree {
    pub degree: u32,
    /// Dimension of `{v : v * M = 0}` with entries of this degree.
    pub kernel_dim: usize,
    /// Dimension of the span of monomial multiples of the minor vectors.
    pub span_dim: usize,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct KernelReport {
    pub holds_up_to_bound: bool,
    pub degree_bound: u32,
    pub per_degree: Vec<KernelDegree>,
    pub note: Option<String>,
}

/// Checks, degree by degree up to `degree_bound`, that every row vector `v`
/// with `v * M = 0` lies in the module spanned by the extension-pattern
/// kernel vectors. The span is always inside the kernel, so containment is
/// equality of dimensions.
pub fn check_kernel_conjecture(
    m: &PolyMatrix,
    degree_bound: u32,
    field: &Field,
) -> Result<KernelReport, AlgebraError> {
    let (l, c) = (m.n_rows(), m.n_cols());
    let block = m.entry_block();
    let layout = *m.layout();
    let block_vars = layout.block_range(block).len();
    let n_x = block_vars.saturating_sub(1);
    if !(c < l && l < n_x + c) {
        return Err(AlgebraError::InvalidArgument(format!(
            "need c < l <= n_x + c - 1, got l={l}, c={c}, n_x={n_x}"
        )));
    }
    let generators: Vec<Vec<Polynomial>> = ExtensionPattern::all(l, c)
        .iter()
        .map(|t| kernel_vector(m, t, field))
        .collect::<Result<_, _>>()?;
    let mut per_degree = Vec::new();
    let mut holds = true;
    for e in 0..=degree_bound {
        let monos = Columns::new(enumerate_monomials(&layout, block, n_x as i64, e));
        let targets = Columns::new(enumerate_monomials(&layout, block, n_x as i64, e + 1));
        let unknowns = l * monos.len();
        // the map v -> v * M as a matrix acting on stacked coefficients
        let mut columns_of_map: Vec<Vec<u32>> = Vec::with_capacity(unknowns);
        for k in 0..l {
            for u in monos.monomials() {
                let mut image = vec![0u32; c * targets.len()];
                for j in 0..c {
                    for (t, coef) in m.get(k, j).terms() {
                        let pos = targets.position(&u.mul(t)).expect("degree e+1 monomial");
                        let slot = &mut image[j * targets.len() + pos];
                        *slot = field.add(*slot, *coef);
                    }
                }
                columns_of_map.push(image);
            }
        }
        let equations = c * targets.len();
        let rows: Vec<Vec<u32>> = (0..equations)
            .map(|r| columns_of_map.iter().map(|col| col[r]).collect())
            .collect();
        let kernel_dim = unknowns - rank_of_rows(&rows, unknowns, field);

        let mut spanning = Vec::new();
        if e >= c as u32 {
            let shifts = enumerate_monomials(&layout, block, n_x as i64, e - c as u32);
            for g in &generators {
                for u in &shifts {
                    let mut flat = vec![0u32; unknowns];
                    for (k, gk) in g.iter().enumerate() {
                        for (t, coef) in gk.terms() {
                            let pos = monos.position(&u.mul(t)).expect("degree e monomial");
                            flat[k * monos.len() + pos] = *coef;
                        }
                    }
                    spanning.push(flat);
                }
            }
        }
        let span_dim = rank_of_rows(&spanning, unknowns, field);
        if span_dim != kernel_dim {
            holds = false;
        }
        per_degree.push(KernelDegree {
            degree: e,
            kernel_dim,
            span_dim,
        });
    }
    let note = (degree_bound < c as u32).then(|| {
        format!("degree bound {degree_bound} is below the minor-vector degree {c}")
    });
    if note.is_some() {
        holds = false;
    }
    Ok(KernelReport {
        holds_up_to_bound: holds,
        degree_bound,
        per_degree,
        note,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomial::parse_polynomial;

    fn f() -> Field {
        Field::default()
    }

    fn parse(s: &str, l: &VariableLayout) -> Polynomial {
        parse_polynomial(s, 1, l, &f()).unwrap()
    }

    /// Leibniz formula over all permutations.
    fn leibniz(m: &PolyMatrix, field: &Field) -> Polynomial {
        let n = m.n_rows();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut acc = Polynomial::zero();
        permute(&mut perm, 0, &mut |p| {
            let inversions = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|&(i, j)| p[i] > p[j])
                .count();
            let mut term = Polynomial::constant(m.layout(), 1);
            for (i, &j) in p.iter().enumerate() {
                term = term.mul(m.get(i, j), field);
            }
            acc = if inversions % 2 == 0 {
                acc.add(&term, field)
            } else {
                acc.sub(&term, field)
            };
        });
        acc
    }

    fn permute(p: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
        if k == p.len() {
            visit(p);
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            permute(p, k + 1, visit);
            p.swap(k, i);
        }
    }

    /// Determinant at a point via Gaussian elimination over GF(p).
    fn det_at(m: &PolyMatrix, point: &[u32], field: &Field) -> u32 {
        let n = m.n_rows();
        let mut a: Vec<Vec<u32>> = (0..n)
            .map(|i| (0..n).map(|j| m.get(i, j).evaluate(point, field)).collect())
            .collect();
        let mut det = 1;
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| a[r][c] != 0) else {
                return 0;
            };
            if p != c {
                a.swap(p, c);
                det = field.neg(det);
            }
            det = field.mul(det, a[c][c]);
            let inv = field.inv(a[c][c]);
            let pivot = a[c].clone();
            for row in &mut a[c + 1..] {
                let factor = field.mul(row[c], inv);
                for (x, &p) in row[c..].iter_mut().zip(&pivot[c..]) {
                    *x = field.sub(*x, field.mul(factor, p));
                }
            }
        }
        det
    }

    #[test]
    fn det_examples() {
        let l = VariableLayout::with_counts(2, 0);
        let one = PolyMatrix::new(1, 1, vec![parse("x0", &l)]).unwrap();
        assert_eq!(det_poly(&one, &f()).unwrap(), parse("x0", &l));
        let tri = PolyMatrix::new(
            2,
            2,
            vec![parse("x0", &l), Polynomial::zero(), parse("x1", &l), parse("x0", &l)],
        )
        .unwrap();
        assert_eq!(det_poly(&tri, &f()).unwrap(), parse("x0^2", &l));
        assert!(det_poly(&staircase_witness(3, 2).unwrap(), &f()).is_err());
    }

    #[test]
    fn det_matches_oracles() {
        let field = f();
        let layout = VariableLayout::with_counts(4, 0);
        for seed in 0..6 {
            let m = random_linear_matrix(layout, Block::X, 4, 4, 4, seed, &field);
            let d = det_poly(&m, &field).unwrap();
            assert_eq!(d, leibniz(&m, &field));
            assert_eq!(d.degree(), Some(4));
            let point = [3, 17, 123, 9999];
            assert_eq!(d.evaluate(&point, &field), det_at(&m, &point, &field));
        }
    }

    #[test]
    fn minors_examples() {
        let l = VariableLayout::with_counts(2, 0);
        let col = PolyMatrix::new(2, 1, vec![parse("x0", &l), parse("x1", &l)]).unwrap();
        assert_eq!(
            maximal_minors(&col, &f()).unwrap(),
            vec![parse("x0", &l), parse("x1", &l)]
        );
        let w = staircase_witness(3, 2).unwrap();
        let minors = maximal_minors(&w, &f()).unwrap();
        // rows {1,2}, {1,3}, {2,3}
        assert_eq!(minors, vec![parse("x0^2", &l), parse("x0*x1", &l), parse("x1^2", &l)]);
        let mac = macaulay_matrix(&minors, 2, &l).unwrap();
        assert_eq!(
            mac.rows.iter().map(|r| r.1.clone()).collect::<Vec<_>>(),
            vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]
        );
    }

    #[test]
    fn witness_leading_monomials() {
        let field = f();
        for p in 2..7 {
            for q in 1..=p {
                let w = staircase_witness(p, q).unwrap();
                let minors = maximal_minors(&w, &field).unwrap();
                for (rows, minor) in subsets(p, q).iter().zip(&minors) {
                    let deleted: Vec<usize> =
                        (1..=p).filter(|i| !rows.contains(&(i - 1))).collect();
                    assert_eq!(
                        minor.leading_monomial(),
                        Some(&staircase_minor_lm(p, q, &deleted)),
                        "p={p} q={q} rows={rows:?}"
                    );
                }
                let gb = minors_gb(&w, &field).unwrap();
                assert!(gb.generic, "p={p} q={q}");
            }
        }
    }

    #[test]
    fn reduce_set_examples() {
        let l = VariableLayout::with_counts(2, 0);
        let out = reduce_set(&[parse("x0^2", &l), parse("x0^2 + x1^2", &l)], 2, &l, &f()).unwrap();
        assert_eq!(out, vec![parse("x0^2", &l), parse("x1^2", &l)]);
        let again = reduce_set(&out, 2, &l, &f()).unwrap();
        assert_eq!(again, out);
        assert!(reduce_set(&[parse("x0", &l)], 2, &l, &f()).is_err());
    }

    #[test]
    fn random_minors_gb_shape() {
        let field = f();
        let layout = VariableLayout::homogeneous(3, 3);
        for seed in 0..5 {
            let m = random_linear_matrix(layout, Block::X, 4, 4, 2, seed, &field);
            let gb = minors_gb(&m, &field).unwrap();
            assert!(gb.generic);
            assert_eq!(gb.leading_monomials.len(), 6);
        }
        // repeated rows lose minors
        let m = random_linear_matrix(layout, Block::X, 4, 4, 2, 1, &field);
        let degenerate = m.select_rows(&[0, 0, 1, 2]);
        let gb = minors_gb(&degenerate, &field).unwrap();
        assert!(!gb.generic);
        assert!(gb.leading_monomials.len() < 6);
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let field = f();
        let layout = VariableLayout::homogeneous(4, 2);
        for seed in 0..4 {
            for (l, c) in [(3, 2), (4, 2), (5, 3), (4, 1)] {
                let m = random_linear_matrix(layout, Block::X, 5, l, c, seed, &field);
                for t in ExtensionPattern::all(l, c) {
                    let v = kernel_vector(&m, &t, &field).unwrap();
                    assert!(m.left_mul(&v, &field).unwrap().iter().all(Polynomial::is_zero));
                    // the last coordinate is a maximal minor of the first l-1
                    // rows whenever no pattern column sits on the last row
                    if !t.ones().contains(&(l - 1)) {
                        let top = m.select_rows(&(0..l - 1).collect::<Vec<_>>());
                        let ext = top
                            .hconcat(
                                &ExtensionPattern::new(l - 1, t.ones().to_vec())
                                    .unwrap()
                                    .as_matrix(layout),
                            )
                            .unwrap();
                        let d = det_poly(&ext, &field).unwrap();
                        let last = &v[l - 1];
                        assert!(*last == d || *last == d.neg(&field));
                    }
                }
            }
        }
    }

    #[test]
    fn square_plus_one_is_cramer() {
        let field = f();
        let layout = VariableLayout::homogeneous(3, 0);
        let m = random_linear_matrix(layout, Block::X, 4, 3, 2, 5, &field);
        let pats = ExtensionPattern::all(3, 2);
        assert_eq!(pats.len(), 1);
        let v = kernel_vector(&m, &pats[0], &field).unwrap();
        let minors = maximal_minors(&m, &field).unwrap();
        // rows {2,3}, {1,3}, {1,2} with alternating signs
        assert_eq!(v[0], minors[2]);
        assert_eq!(v[1], minors[1].neg(&field));
        assert_eq!(v[2], minors[0]);
        assert!(ExtensionPattern::new(3, vec![2, 1]).is_err());
        assert!(kernel_vector(&m, &ExtensionPattern::new(4, vec![0]).unwrap(), &field).is_err());
    }

    #[test]
    fn kernel_conjecture_small() {
        let field = f();
        let layout = VariableLayout::homogeneous(3, 0);
        let m = random_linear_matrix(layout, Block::X, 4, 3, 2, 11, &field);
        let r = check_kernel_conjecture(&m, 4, &field).unwrap();
        assert!(r.holds_up_to_bound, "{r:?}");
        assert_eq!(r.per_degree[2].kernel_dim, 1);
        assert!(r.per_degree[..2].iter().all(|d| d.kernel_dim == 0));

        let low = check_kernel_conjecture(&m, 1, &field).unwrap();
        assert!(!low.holds_up_to_bound);
        assert!(low.note.is_some());

        let dup = m.select_rows(&[0, 0, 1]);
        assert!(!check_kernel_conjecture(&dup, 4, &field).unwrap().holds_up_to_bound);
        assert!(check_kernel_conjecture(&m.select_rows(&[0, 1]), 3, &field).is_err());
    }
}
