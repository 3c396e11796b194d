//! Matrix F5 with the classical and the bilinear criterion, its bidegree-block
//! variant, and Buchberger's algorithm as an independent oracle.

mod buchberger;
mod criteria;
mod engine;

use std::collections::HashSet;

use serde_json::{json, Value};

pub use buchberger::{buchberger, buchberger_with_stats, normal_form, s_polynomial, BuchbergerStats};
pub use criteria::{
    bl_criterion_table, classical_criterion, extended_criterion, predicted_rtz_count,
    predicted_table_sets, CriterionTable,
};
pub use engine::{
    check_biregularity, matrix_f5, multihomogeneous_matrix_f5, verified_degree_bound,
    BiregularityReport, IndexRelation, IndexReport,
};

use crate::field::Field;
use crate::linalg::Signature;
use crate::monomial::{Monomial, VariableLayout};
use crate::polynomial::Polynomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Classical,
    Extended,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mode::Classical => "classical",
            Mode::Extended => "extended",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    pub polys: Vec<Polynomial>,
    /// Degree up to which the basis is guaranteed; `None` for a full basis.
    pub degree_bound: Option<u32>,
    pub reduced: bool,
}

impl GroebnerBasis {
    /// Leading monomials, descending.
    pub fn leading_monomials(&self) -> Vec<Monomial> {
        let mut lms: Vec<Monomial> = self
            .polys
            .iter()
            .filter_map(|p| p.leading_monomial().cloned())
            .collect();
        lms.sort_by(|a, b| b.cmp(a));
        lms
    }

    pub fn max_degree(&self) -> u32 {
        self.polys.iter().filter_map(Polynomial::degree).max().unwrap_or(0)
    }

    /// Minimal, monic, tail-reduced basis of the same ideal, sorted by
    /// descending leading monomial.
    pub fn to_reduced(&self, field: &Field) -> GroebnerBasis {
        GroebnerBasis {
            polys: interreduce(&self.polys, field),
            degree_bound: self.degree_bound,
            reduced: true,
        }
    }

    /// Whether some leading monomial divides `m`.
    pub fn lm_divides(&self, m: &Monomial) -> bool {
        self.polys
            .iter()
            .filter_map(Polynomial::leading_monomial)
            .any(|lm| lm.divides(m))
    }

    pub fn to_text(&self, layout: &VariableLayout, field: &Field) -> String {
        let mut out = String::new();
        for p in &self.polys {
            out.push_str(&p.to_text(layout, field));
            out.push('\n');
        }
        out
    }
}

/// Minimalizes and fully reduces a Gröbner basis.
pub(crate) fn interreduce(polys: &[Polynomial], field: &Field) -> Vec<Polynomial> {
    let mut gens: Vec<Polynomial> = polys
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| p.monic(field))
        .collect();
    gens.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
    let mut minimal: Vec<Polynomial> = Vec::new();
    for g in gens {
        let lm = g.leading_monomial().expect("nonzero");
        if minimal
            .iter()
            .any(|h| h.leading_monomial().expect("nonzero").divides(lm))
        {
            continue;
        }
        minimal.push(g);
    }
    let reduced: Vec<Polynomial> = (0..minimal.len())
        .map(|k| {
            let (lm, lc) = (&minimal[k].terms()[0].0, minimal[k].terms()[0].1);
            let tail = Polynomial::from_sorted_terms(minimal[k].terms()[1..].to_vec());
            let others: Vec<Polynomial> = minimal
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != k)
                .map(|(_, p)| p.clone())
                .collect();
            Polynomial::term(lm.clone(), lc).add(&normal_form(&tail, &others, field), field)
        })
        .collect();
    let mut reduced = reduced;
    reduced.sort_by(|a, b| b.leading_monomial().cmp(&a.leading_monomial()));
    reduced
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroReduction {
    pub signature: Signature,
    pub degree: u32,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, serde::Serialize)]
pub struct StepStats {
    pub degree: u32,
    pub index: usize,
    pub rows_added: usize,
    pub skipped_classical: usize,
    pub skipped_extended: usize,
    pub zero_rows: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct BlockShape {
    pub degree: u32,
    pub bidegree: Option<(u32, u32)>,
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
    pub field_ops: u64,
}

/// Instrumentation of one Matrix F5 run.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct F5Stats {
    pub engine: &'static str,
    pub mode: Option<Mode>,
    pub degree_bound: u32,
    pub reductions_to_zero: Vec<ZeroReduction>,
    pub rows_skipped_classical: usize,
    pub rows_skipped_extended: usize,
    /// Multiply-accumulates spent in elimination.
    pub field_ops: u64,
    /// Coefficient operations spent building the criterion table.
    pub criterion_field_ops: u64,
    pub steps: Vec<StepStats>,
    pub shapes: Vec<BlockShape>,
}

impl F5Stats {
    /// Signature monomials of the zero rows of generator `index`.
    pub fn zero_signatures(&self, index: usize) -> HashSet<Monomial> {
        self.reductions_to_zero
            .iter()
            .filter(|z| z.signature.index == index)
            .map(|z| z.signature.monomial.clone())
            .collect()
    }

    pub fn to_json(&self, layout: &VariableLayout) -> Value {
        let zeros: Vec<Value> = self
            .reductions_to_zero
            .iter()
            .map(|z| {
                json!({
                    "signature": [z.signature.monomial.display(layout).to_string(), z.signature.index],
                    "degree": z.degree,
                })
            })
            .collect();
        json!({
            "engine": self.engine,
            "mode": self.mode,
            "degree_bound": self.degree_bound,
            "reductions_to_zero": zeros,
            "rows_skipped_classical": self.rows_skipped_classical,
            "rows_skipped_extended": self.rows_skipped_extended,
            "field_ops": self.field_ops,
            "criterion_field_ops": self.criterion_field_ops,
            "steps": self.steps,
            "blocks": self.shapes,
        })
    }
}
