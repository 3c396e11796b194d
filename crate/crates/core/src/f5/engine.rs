//! The Matrix F5 driver shared by the homogeneous and the bidegree-block
//! engines.
//!
//! Both engines generate exactly the same signed rows. The homogeneous one
//! stores every degree-`d` row densely over all degree-`d` monomials; the
//! block engine files each row under its bidegree and stores it over the
//! monomials of that bidegree only. Since a bihomogeneous row has no entries
//! outside its bidegree, the two echelon forms coincide row by row and only
//! the amount of dense arithmetic differs.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;

use super::criteria::{bl_criterion_table, classical_criterion, predicted_table_sets, CriterionTable};
use super::{normal_form, s_polynomial, BlockShape, F5Stats, GroebnerBasis, Mode, StepStats, ZeroReduction};
use crate::error::AlgebraError;
use crate::field::{Field, FieldScalar};
use crate::linalg::{Columns, IncrementalEchelon, Signature};
use crate::monomial::{monomials_of_bidegree, monomials_of_degree, Monomial, VariableLayout};
use crate::polynomial::Polynomial;
use crate::system::PolySystem;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Partition {
    Total,
    Bidegree,
}

type BlockKey = Option<(u32, u32)>;

struct BlockState {
    key: BlockKey,
    columns: Columns,
    ech: IncrementalEchelon,
}

struct Level {
    degree: u32,
    blocks: Vec<BlockState>,
    index_of: HashMap<BlockKey, usize>,
}

impl Level {
    fn new(degree: u32) -> Self {
        Level {
            degree,
            blocks: Vec::new(),
            index_of: HashMap::new(),
        }
    }

    fn block(&mut self, key: BlockKey, layout: &VariableLayout, field: &Field) -> usize {
        if let Some(&b) = self.index_of.get(&key) {
            return b;
        }
        let monos = match key {
            None => monomials_of_degree(layout, self.degree),
            Some((a, b)) => monomials_of_bidegree(layout, a, b),
        };
        let columns = Columns::new(monos);
        let ech = IncrementalEchelon::new(columns.len(), *field);
        self.blocks.push(BlockState { key, columns, ech });
        self.index_of.insert(key, self.blocks.len() - 1);
        self.blocks.len() - 1
    }
}

pub(crate) struct EngineOutput {
    pub basis: GroebnerBasis,
    pub stats: F5Stats,
    /// Per degree: leading monomial of each nonzero row and its generator.
    pub leads: Vec<HashMap<Monomial, usize>>,
}

/// Matrix F5 on a homogeneous system up to degree `d_max`, dense over all
/// monomials of each degree.
pub fn matrix_f5(
    f: &PolySystem,
    d_max: u32,
    mode: Mode,
    field: &Field,
) -> Result<(GroebnerBasis, F5Stats), AlgebraError> {
    run(f, d_max, mode, Partition::Total, field).map(|o| (o.basis, o.stats))
}

/// Matrix F5 on a bihomogeneous system with one matrix per bidegree. The
/// blocks of one degree are echelonized independently (in parallel when a
/// rayon pool with several threads is active).
pub fn multihomogeneous_matrix_f5(
    f: &PolySystem,
    d_max: u32,
    mode: Mode,
    field: &Field,
) -> Result<(GroebnerBasis, F5Stats), AlgebraError> {
    run(f, d_max, mode, Partition::Bidegree, field).map(|o| (o.basis, o.stats))
}

fn validate(f: &PolySystem, d_max: u32, partition: Partition) -> Result<(), AlgebraError> {
    if f.flavor().is_affine() {
        return Err(AlgebraError::FlavorMismatch {
            expected: "homogeneous".into(),
            actual: f.flavor().to_string(),
        });
    }
    if partition == Partition::Bidegree && !f.is_bihomogeneous() {
        return Err(AlgebraError::FlavorMismatch {
            expected: "bihomogeneous".into(),
            actual: f.flavor().to_string(),
        });
    }
    let degrees: Vec<u32> = f.polys().iter().filter_map(Polynomial::degree).collect();
    if degrees.len() != f.m() || f.m() == 0 {
        return Err(AlgebraError::InvalidArgument("generators must be nonzero".into()));
    }
    if degrees.windows(2).any(|w| w[0] > w[1]) {
        return Err(AlgebraError::InvalidArgument(
            "generator degrees must be nondecreasing".into(),
        ));
    }
    if d_max < degrees[0] {
        return Err(AlgebraError::InvalidArgument(format!(
            "degree bound {d_max} is below the smallest generator degree {}",
            degrees[0]
        )));
    }
    Ok(())
}

fn run(
    f: &PolySystem,
    d_max: u32,
    mode: Mode,
    partition: Partition,
    field: &Field,
) -> Result<EngineOutput, AlgebraError> {
    validate(f, d_max, partition)?;
    let layout = *f.layout();
    let n_vars = layout.n_vars();
    let m = f.m();
    let table = match mode {
        Mode::Classical => CriterionTable::empty(m),
        Mode::Extended => bl_criterion_table(f, field)?,
    };
    let gen_degree: Vec<u32> = f.polys().iter().map(|p| p.degree().expect("nonzero")).collect();
    let gen_key: Vec<BlockKey> = f
        .polys()
        .iter()
        .map(|p| match partition {
            Partition::Total => None,
            Partition::Bidegree => p.bidegree(),
        })
        .collect();

    let mut stats = F5Stats {
        engine: match partition {
            Partition::Total => "hom",
            Partition::Bidegree => "multihom",
        },
        mode: Some(mode),
        degree_bound: d_max,
        criterion_field_ops: table.field_ops,
        ..F5Stats::default()
    };
    let mut leads: Vec<HashMap<Monomial, usize>> = vec![HashMap::new(); d_max as usize + 1];
    let mut basis: Vec<Polynomial> = Vec::new();
    let mut prev: Option<Level> = None;

    for d in gen_degree[0]..=d_max {
        let mut level = Level::new(d);
        // positions of column monomials times a variable, per (block, var)
        let mut mulmaps: HashMap<(usize, usize, usize), Vec<u32>> = HashMap::new();
        for i in 1..=m {
            let di = gen_degree[i - 1];
            if di > d {
                continue;
            }
            let mut step = StepStats {
                degree: d,
                index: i,
                ..StepStats::default()
            };
            let mut new_rows: Vec<(usize, Signature, Vec<FieldScalar>)> = Vec::new();
            if di == d {
                let b = level.block(gen_key[i - 1], &layout, field);
                let row = level.blocks[b]
                    .columns
                    .dense(&f.polys()[i - 1])
                    .ok_or_else(|| AlgebraError::LayoutMismatch("generator outside its block".into()))?;
                new_rows.push((b, Signature::new(i, layout.one()), row));
            } else if let Some(prev) = &prev {
                let prev_leads = &leads[(d - di) as usize];
                for (pb, block) in prev.blocks.iter().enumerate() {
                    for row in block.ech.rows() {
                        if row.signature.index != i || row.lead.is_none() {
                            continue;
                        }
                        let e = &row.signature.monomial;
                        for k in e.max_var().unwrap_or(0)..n_vars {
                            let sig = Signature::new(i, e.mul_var(k));
                            if classical_criterion(&sig, prev_leads) {
                                step.skipped_classical += 1;
                                continue;
                            }
                            if table.contains(i, &sig.monomial) {
                                step.skipped_extended += 1;
                                continue;
                            }
                            let key = block.key.map(|(a, b)| {
                                if layout.is_x(k) {
                                    (a + 1, b)
                                } else {
                                    (a, b + 1)
                                }
                            });
                            let tb = level.block(key, &layout, field);
                            let map = mulmaps.entry((pb, k, tb)).or_insert_with(|| {
                                let target = &level.blocks[tb].columns;
                                block
                                    .columns
                                    .monomials()
                                    .iter()
                                    .map(|mono| {
                                        target.position(&mono.mul_var(k)).expect("shifted column")
                                            as u32
                                    })
                                    .collect()
                            });
                            let mut dense = vec![0; level.blocks[tb].columns.len()];
                            for (c, &v) in row.data.iter().enumerate() {
                                if v != 0 {
                                    dense[map[c] as usize] = v;
                                }
                            }
                            new_rows.push((tb, sig, dense));
                        }
                    }
                }
            }
            step.rows_added = new_rows.len();

            let mut per_block: Vec<Vec<(Signature, Vec<FieldScalar>)>> =
                (0..level.blocks.len()).map(|_| Vec::new()).collect();
            for (b, sig, row) in new_rows {
                per_block[b].push((sig, row));
            }
            for rows in &mut per_block {
                rows.sort_by(|a, b| a.0.cmp(&b.0));
            }
            let zeros: Vec<Vec<Signature>> = level
                .blocks
                .par_iter_mut()
                .zip(per_block.into_par_iter())
                .map(|(block, rows)| {
                    let mut z = Vec::new();
                    for (sig, row) in rows {
                        if block.ech.push(sig.clone(), row).is_none() {
                            z.push(sig);
                        }
                    }
                    z
                })
                .collect();
            let mut zeros: Vec<Signature> = zeros.into_iter().flatten().collect();
            zeros.sort();
            step.zero_rows = zeros.len();
            stats.rows_skipped_classical += step.skipped_classical;
            stats.rows_skipped_extended += step.skipped_extended;
            stats
                .reductions_to_zero
                .extend(zeros.into_iter().map(|signature| ZeroReduction { signature, degree: d }));
            stats.steps.push(step);
        }

        // leading monomials and new basis elements of this degree
        let mut order: Vec<usize> = (0..level.blocks.len()).collect();
        order.sort_by_key(|&b| std::cmp::Reverse(level.blocks[b].key));
        let mut fresh = Vec::new();
        for &b in &order {
            let block = &level.blocks[b];
            for (lead, row) in block.ech.leads() {
                let lm = block.columns.monomials()[lead].clone();
                leads[d as usize].insert(lm.clone(), row.signature.index);
                let covered = basis
                    .iter()
                    .any(|g| g.leading_monomial().expect("nonzero").divides(&lm));
                if !covered {
                    fresh.push(block.columns.polynomial(&row.data));
                }
            }
            stats.shapes.push(BlockShape {
                degree: d,
                bidegree: block.key,
                rows: block.ech.rows().len(),
                cols: block.columns.len(),
                rank: block.ech.rank(),
                field_ops: block.ech.field_ops(),
            });
            stats.field_ops += block.ech.field_ops();
        }
        basis.extend(fresh);
        prev = Some(level);
    }

    basis.sort_by(|a, b| b.leading_monomial().cmp(&a.leading_monomial()));
    Ok(EngineOutput {
        basis: GroebnerBasis {
            polys: basis,
            degree_bound: Some(d_max),
            reduced: false,
        },
        stats,
        leads,
    })
}

/// Smallest degree bound `D <= cap` for which the cheapest applicable engine
/// returns a basis passing Buchberger's S-pair test, i.e. a full Gröbner
/// basis; `None` if no such bound exists up to `cap`.
pub fn verified_degree_bound(
    f: &PolySystem,
    cap: u32,
    field: &Field,
) -> Result<Option<u32>, AlgebraError> {
    let partition = if f.is_bihomogeneous() {
        Partition::Bidegree
    } else {
        Partition::Total
    };
    let start = f.polys().iter().filter_map(Polynomial::degree).max().unwrap_or(0);
    for d in start..=cap {
        let out = run(f, d, Mode::Classical, partition, field)?;
        if passes_s_pair_test(&out.basis.to_reduced(field), field) {
            return Ok(Some(d));
        }
    }
    Ok(None)
}

fn passes_s_pair_test(g: &GroebnerBasis, field: &Field) -> bool {
    let g = &g.polys;
    (0..g.len()).all(|a| {
        (a + 1..g.len()).all(|b| {
            let (la, lb) = (
                g[a].leading_monomial().expect("nonzero"),
                g[b].leading_monomial().expect("nonzero"),
            );
            la.is_coprime(lb) || normal_form(&s_polynomial(&g[a], &g[b], field), g, field).is_zero()
        })
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum IndexRelation {
    Equal,
    /// Observed strictly inside predicted.
    Subset,
    /// Observed strictly contains predicted.
    Superset,
    Incomparable,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct IndexReport {
    pub index: usize,
    pub observed: Vec<String>,
    pub predicted: Vec<String>,
    pub relation: IndexRelation,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct BiregularityReport {
    pub degree_bound: u32,
    pub passes: bool,
    pub per_index: Vec<IndexReport>,
}

/// Compares, generator by generator, the signatures of the classical-mode
/// zero rows with the monomials a bi-regular sequence predicts (limited to
/// signatures of degree at most `d_max - 2`, and dropping predictions whose
/// generation chain is cut by the classical criterion).
pub fn check_biregularity(
    f: &PolySystem,
    d_max: u32,
    field: &Field,
) -> Result<BiregularityReport, AlgebraError> {
    f.expect_flavor(crate::system::Flavor::HomogeneousBilinear)?;
    let (n_x, n_y, m) = (f.n_x(), f.n_y(), f.m());
    if m > n_x + n_y {
        return Err(AlgebraError::InvalidArgument(format!(
            "bi-regularity needs m <= n_x + n_y, got m={m}"
        )));
    }
    let layout = *f.layout();
    let out = run(f, d_max, Mode::Classical, Partition::Bidegree, field)?;
    let mut per_index = Vec::new();
    let mut passes = true;
    for i in 1..=m {
        let observed = out.stats.zero_signatures(i);
        let (px, py) = predicted_table_sets(&layout, n_x, n_y, i);
        let predicted: HashSet<Monomial> = px
            .into_iter()
            .chain(py)
            .filter(|t| t.degree() + 2 <= d_max)
            .filter(|t| !chain_pruned(t, i, &out.leads))
            .collect();
        let relation = if observed == predicted {
            IndexRelation::Equal
        } else if observed.is_subset(&predicted) {
            IndexRelation::Subset
        } else if observed.is_superset(&predicted) {
            IndexRelation::Superset
        } else {
            IndexRelation::Incomparable
        };
        passes &= relation == IndexRelation::Equal;
        let show = |s: &HashSet<Monomial>| {
            let mut v: Vec<&Monomial> = s.iter().collect();
            v.sort_by(|a, b| b.cmp(a));
            v.iter().map(|t| t.display(&layout).to_string()).collect()
        };
        per_index.push(IndexReport {
            index: i,
            observed: show(&observed),
            predicted: show(&predicted),
            relation,
        });
    }
    Ok(BiregularityReport {
        degree_bound: d_max,
        passes,
        per_index,
    })
}

/// Whether some monomial on the increasing-index chain leading to `t`
/// (including `t`) is a leading monomial of an earlier generator's row.
fn chain_pruned(t: &Monomial, index: usize, leads: &[HashMap<Monomial, usize>]) -> bool {
    let mut vars = Vec::new();
    for (v, &e) in t.exponents().iter().enumerate() {
        vars.extend(std::iter::repeat_n(v, e as usize));
    }
    let mut prefix = Monomial::from_raw(
        smallvec::SmallVec::from_elem(0, t.n_vars()),
        t.split(),
    );
    for v in vars {
        prefix = prefix.mul_var(v);
        let owner = leads
            .get(prefix.degree() as usize)
            .and_then(|l| l.get(&prefix));
        if owner.is_some_and(|&o| o < index) {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::f5::buchberger;
    use crate::system::random_bilinear;

    fn show(layout: &VariableLayout, s: &ZeroReduction) -> (String, usize) {
        (
            s.signature.monomial.display(layout).to_string(),
            s.signature.index,
        )
    }

    #[test]
    fn worked_example_signatures() {
        let field = Field::default();
        for seed in 0..3 {
            let f = random_bilinear(2, 2, 4, seed, &field).unwrap();
            let l = *f.layout();
            let (_, st) = matrix_f5(&f, 5, Mode::Classical, &field).unwrap();
            let z: Vec<_> = st.reductions_to_zero.iter().map(|z| show(&l, z)).collect();
            assert_eq!(z, [("y0^3".to_string(), 4), ("x0^3".to_string(), 4)]);
            let (_, st) = matrix_f5(&f, 5, Mode::Extended, &field).unwrap();
            assert!(st.reductions_to_zero.is_empty());
            assert_eq!(st.rows_skipped_extended, 2);
        }
    }

    #[test]
    fn single_generator() {
        let field = Field::default();
        let f = random_bilinear(2, 3, 1, 9, &field).unwrap();
        let (g, st) = matrix_f5(&f, 4, Mode::Classical, &field).unwrap();
        assert_eq!(g.polys.len(), 1);
        assert_eq!(g.polys[0], f.polys()[0].monic(&field));
        assert!(st.reductions_to_zero.is_empty());
    }

    #[test]
    fn engines_agree() {
        let field = Field::default();
        for (nx, ny, m) in [(2, 2, 3), (2, 3, 5), (3, 2, 4)] {
            let f = random_bilinear(nx, ny, m, 5, &field).unwrap();
            for mode in [Mode::Classical, Mode::Extended] {
                let (g1, s1) = matrix_f5(&f, 6, mode, &field).unwrap();
                let (g2, s2) = multihomogeneous_matrix_f5(&f, 6, mode, &field).unwrap();
                assert_eq!(g1, g2);
                assert_eq!(s1.reductions_to_zero, s2.reductions_to_zero);
                assert!(s2.field_ops < s1.field_ops);
            }
        }
    }

    #[test]
    fn block_columns_match_formula() {
        let field = Field::default();
        let f = random_bilinear(3, 4, 7, 1, &field).unwrap();
        let (_, st) = multihomogeneous_matrix_f5(&f, 4, Mode::Classical, &field).unwrap();
        for s in &st.shapes {
            let (a, b) = s.bidegree.unwrap();
            let expect = crate::combinatorics::binomial(a as i64 + 3, 3)
                * crate::combinatorics::binomial(b as i64 + 4, 4);
            assert_eq!(s.cols as i128, expect);
        }
    }

    #[test]
    fn matches_buchberger_leading_monomials() {
        let field = Field::default();
        for seed in 0..3 {
            let f = random_bilinear(2, 2, 3, seed, &field).unwrap();
            let full = buchberger(&f, &field);
            let d = full.max_degree();
            let (g, _) = matrix_f5(&f, d, Mode::Classical, &field).unwrap();
            assert_eq!(g.to_reduced(&field).polys, full.polys);
            assert_eq!(verified_degree_bound(&f, d + 1, &field).unwrap(), Some(d));
        }
    }

    #[test]
    fn rejects_bad_input() {
        let field = Field::default();
        let f = random_bilinear(2, 2, 5, 1, &field).unwrap();
        assert!(matrix_f5(&f, 5, Mode::Extended, &field).is_err());
        assert!(matrix_f5(&f, 1, Mode::Classical, &field).is_err());
        let aff = f.dehomogenize(&field).unwrap();
        assert!(matrix_f5(&aff, 4, Mode::Classical, &field).is_err());
    }

    #[test]
    fn biregularity_reports() {
        let field = Field::default();
        let f = random_bilinear(2, 2, 4, 3, &field).unwrap();
        let r = check_biregularity(&f, 5, &field).unwrap();
        assert!(r.passes, "{r:?}");
        let one = random_bilinear(2, 2, 1, 3, &field).unwrap();
        assert!(check_biregularity(&one, 5, &field).unwrap().passes);
        let mut polys = f.polys()[..2].to_vec();
        polys[1] = polys[0].clone();
        let dup = PolySystem::homogeneous(*f.layout(), polys).unwrap();
        let r = check_biregularity(&dup, 4, &field).unwrap();
        assert!(!r.passes);
        assert_eq!(r.per_index[1].relation, IndexRelation::Superset);
    }
}
