use std::collections::{HashMap, HashSet};

use crate::combinatorics::binomial;
use crate::error::AlgebraError;
use crate::field::Field;
use crate::linalg::Signature;
use crate::minors::{maximal_minors_counted, reduce_set_counted};
use crate::monomial::{enumerate_monomials, Block, Monomial, VariableLayout};
use crate::system::{Flavor, PolySystem};

/// Leading monomials of the `h` with `h * f_i` in `I_{i-1}` found from the
/// maximal minors of the Jacobians, per generator index and block.
#[derive(Debug, Clone, Default)]
pub struct CriterionTable {
    x_side: Vec<HashSet<Monomial>>,
    y_side: Vec<HashSet<Monomial>>,
    /// Coefficient operations spent on minors and their echelon forms.
    pub field_ops: u64,
}

impl CriterionTable {
    pub fn empty(m: usize) -> Self {
        CriterionTable {
            x_side: vec![HashSet::new(); m + 1],
            y_side: vec![HashSet::new(); m + 1],
            field_ops: 0,
        }
    }

    pub fn contains(&self, index: usize, t: &Monomial) -> bool {
        self.x_side.get(index).is_some_and(|s| s.contains(t))
            || self.y_side.get(index).is_some_and(|s| s.contains(t))
    }

    /// x-side monomials of entry `index`, descending.
    pub fn x_side(&self, index: usize) -> Vec<Monomial> {
        sorted(self.x_side.get(index))
    }

    pub fn y_side(&self, index: usize) -> Vec<Monomial> {
        sorted(self.y_side.get(index))
    }

    pub fn len(&self) -> usize {
        self.x_side.iter().chain(&self.y_side).map(HashSet::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn sorted(set: Option<&HashSet<Monomial>>) -> Vec<Monomial> {
    let mut v: Vec<Monomial> = set.into_iter().flatten().cloned().collect();
    v.sort_by(|a, b| b.cmp(a));
    v
}

/// Classical F5 criterion. `prev_leads` maps each leading monomial of a
/// nonzero row of the echelonized matrix in degree `d - d_i` to the
/// generator index of that row; only rows of earlier generators count.
pub fn classical_criterion(sig: &Signature, prev_leads: &HashMap<Monomial, usize>) -> bool {
    prev_leads
        .get(&sig.monomial)
        .is_some_and(|&owner| owner < sig.index)
}

/// Classical criterion, or the signature monomial is a table entry for the
/// same generator.
pub fn extended_criterion(
    sig: &Signature,
    prev_leads: &HashMap<Monomial, usize>,
    table: &CriterionTable,
) -> bool {
    classical_criterion(sig, prev_leads) || table.contains(sig.index, &sig.monomial)
}

/// Builds the bilinear criterion table: for `i > n_y + 1` the echelonized
/// maximal minors of `jac_y(F_{i-1})` (forms in x of degree `n_y + 1`), for
/// `i > n_x + 1` those of `jac_x(F_{i-1})` (forms in y of degree `n_x + 1`).
pub fn bl_criterion_table(f: &PolySystem, field: &Field) -> Result<CriterionTable, AlgebraError> {
    f.expect_flavor(Flavor::HomogeneousBilinear)?;
    let (n_x, n_y, m) = (f.n_x(), f.n_y(), f.m());
    if m > n_x + n_y {
        return Err(AlgebraError::InvalidArgument(format!(
            "the bilinear criterion needs m <= n_x + n_y, got m={m}"
        )));
    }
    let layout = *f.layout();
    let mut table = CriterionTable::empty(m);
    for i in 2..=m {
        let prev = f.prefix(i - 1);
        if i > n_y + 1 {
            let (minors, ops) = maximal_minors_counted(&prev.jacobian_y(field), field)?;
            let (reduced, ops2) = reduce_set_counted(&minors, n_y as u32 + 1, &layout, field)?;
            table.field_ops += ops + ops2;
            table.x_side[i].extend(reduced.iter().filter_map(|h| h.leading_monomial().cloned()));
        }
        if i > n_x + 1 {
            let (minors, ops) = maximal_minors_counted(&prev.jacobian_x(field), field)?;
            let (reduced, ops2) = reduce_set_counted(&minors, n_x as u32 + 1, &layout, field)?;
            table.field_ops += ops + ops2;
            table.y_side[i].extend(reduced.iter().filter_map(|h| h.leading_monomial().cloned()));
        }
    }
    Ok(table)
}

/// The table entries a generic system produces for generator `i`:
/// degree-`(n_y+1)` monomials in `x_0..x_{i-n_y-2}` and degree-`(n_x+1)`
/// monomials in `y_0..y_{i-n_x-2}`.
pub fn predicted_table_sets(
    layout: &VariableLayout,
    n_x: usize,
    n_y: usize,
    i: usize,
) -> (Vec<Monomial>, Vec<Monomial>) {
    (
        enumerate_monomials(layout, Block::X, i as i64 - n_y as i64 - 2, n_y as u32 + 1),
        enumerate_monomials(layout, Block::Y, i as i64 - n_x as i64 - 2, n_x as u32 + 1),
    )
}

/// Number of reductions to zero of a generic bilinear system that the
/// classical criterion misses.
pub fn predicted_rtz_count(n_x: usize, n_y: usize, m: usize) -> Result<u128, AlgebraError> {
    if m > n_x + n_y {
        return Err(AlgebraError::InvalidArgument(format!(
            "prediction needs m <= n_x + n_y, got m={m}"
        )));
    }
    let side = |other: usize| -> i128 {
        ((other + 2)..=m)
            .map(|i| binomial(i as i64 - 1, i as i64 - other as i64 - 2))
            .sum()
    };
    Ok((side(n_y) + side(n_x)) as u128)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::random_bilinear;

    #[test]
    fn predicted_counts() {
        assert_eq!(predicted_rtz_count(6, 6, 12).unwrap(), 990);
        assert_eq!(predicted_rtz_count(2, 2, 4).unwrap(), 2);
        assert_eq!(predicted_rtz_count(3, 5, 4).unwrap(), 0);
        assert!(predicted_rtz_count(2, 2, 5).is_err());
    }

    #[test]
    fn prediction_matches_monomial_sets() {
        for (nx, ny) in [(2, 2), (2, 3), (3, 4), (6, 6)] {
            let l = VariableLayout::homogeneous(nx, ny);
            for m in 1..=nx + ny {
                let total: usize = (1..=m)
                    .map(|i| {
                        let (a, b) = predicted_table_sets(&l, nx, ny, i);
                        a.len() + b.len()
                    })
                    .sum();
                assert_eq!(total as u128, predicted_rtz_count(nx, ny, m).unwrap());
            }
        }
    }

    #[test]
    fn small_table() {
        let f = Field::default();
        for seed in 0..3 {
            let sys = random_bilinear(2, 2, 4, seed, &f).unwrap();
            let t = bl_criterion_table(&sys, &f).unwrap();
            assert_eq!(t.len(), 2);
            let l = *sys.layout();
            let show = |v: Vec<Monomial>| -> Vec<String> {
                v.iter().map(|m| m.display(&l).to_string()).collect()
            };
            assert_eq!(show(t.x_side(4)), ["x0^3"]);
            assert_eq!(show(t.y_side(4)), ["y0^3"]);
            assert!(t.field_ops > 0);
        }
        let sys = random_bilinear(3, 3, 4, 1, &f).unwrap();
        assert!(bl_criterion_table(&sys, &f).unwrap().is_empty());
    }

    #[test]
    fn criteria_lookups() {
        let l = VariableLayout::homogeneous(2, 2);
        let t = l.var(0).mul(&l.var(0)).mul(&l.var(0));
        let mut leads = HashMap::new();
        let sig = Signature::new(4, t.clone());
        let empty = CriterionTable::empty(4);
        assert!(!classical_criterion(&sig, &leads));
        leads.insert(t.clone(), 2);
        assert!(classical_criterion(&sig, &leads));
        assert!(!classical_criterion(&Signature::new(2, t.clone()), &leads));
        assert!(!classical_criterion(&Signature::new(1, t.clone()), &HashMap::new()));
        assert_eq!(
            extended_criterion(&sig, &leads, &empty),
            classical_criterion(&sig, &leads)
        );
    }
}
