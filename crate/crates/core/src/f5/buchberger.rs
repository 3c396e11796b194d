//! Buchberger's algorithm with the normal selection strategy and the
//! Gebauer–Möller pair update.

use super::{interreduce, GroebnerBasis};
use crate::field::Field;
use crate::monomial::Monomial;
use crate::polynomial::Polynomial;
use crate::system::PolySystem;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, serde::Serialize)]
pub struct BuchbergerStats {
    pub pairs_reduced: usize,
    pub zero_reductions: usize,
    pub pairs_discarded: usize,
}

/// Full normal form of `f` modulo `g`: no remaining term is divisible by a
/// leading monomial of `g`.
pub fn normal_form(f: &Polynomial, g: &[Polynomial], field: &Field) -> Polynomial {
    let divisors: Vec<(&Monomial, u32, &Polynomial)> = g
        .iter()
        .filter(|h| !h.is_zero())
        .map(|h| {
            let lc = h.leading_coeff().expect("nonzero");
            (h.leading_monomial().expect("nonzero"), field.inv(lc), h)
        })
        .collect();
    let mut p = f.clone();
    let mut rest = Vec::new();
    while let Some((lt, lc)) = p.terms().first().cloned() {
        match divisors.iter().find(|(lm, _, _)| lm.divides(&lt)) {
            Some((lm, inv, h)) => {
                let q = lm.quotient_of(&lt).expect("divides");
                p = p.sub(&h.mul_term(&q, field.mul(lc, *inv), field), field);
            }
            None => {
                rest.push((lt, lc));
                p = Polynomial::from_sorted_terms(p.terms()[1..].to_vec());
            }
        }
    }
    Polynomial::from_sorted_terms(rest)
}

pub fn s_polynomial(a: &Polynomial, b: &Polynomial, field: &Field) -> Polynomial {
    let (la, lb) = (
        a.leading_monomial().expect("nonzero"),
        b.leading_monomial().expect("nonzero"),
    );
    let l = la.lcm(lb);
    let ca = field.inv(a.leading_coeff().expect("nonzero"));
    let cb = field.inv(b.leading_coeff().expect("nonzero"));
    a.mul_term(&la.quotient_of(&l).expect("lcm"), ca, field)
        .sub(&b.mul_term(&lb.quotient_of(&l).expect("lcm"), cb, field), field)
}

/// Reduced grevlex Gröbner basis of the ideal generated by the system.
pub fn buchberger(f: &PolySystem, field: &Field) -> GroebnerBasis {
    buchberger_with_stats(f.polys(), field).0
}

struct Pair {
    lcm: Monomial,
    i: usize,
    j: usize,
}

pub fn buchberger_with_stats(polys: &[Polynomial], field: &Field) -> (GroebnerBasis, BuchbergerStats) {
    let mut stats = BuchbergerStats::default();
    let mut basis: Vec<Polynomial> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let mut inputs: Vec<Polynomial> = polys
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| p.monic(field))
        .collect();
    inputs.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
    for p in inputs {
        let h = normal_form(&p, &active_polys(&basis, &active), field);
        if !h.is_zero() {
            update(&mut basis, &mut active, &mut pairs, h.monic(field), &mut stats);
        }
    }

    while !pairs.is_empty() {
        let best = (0..pairs.len())
            .min_by(|&a, &b| {
                pairs[a]
                    .lcm
                    .cmp(&pairs[b].lcm)
                    .then((pairs[a].i, pairs[a].j).cmp(&(pairs[b].i, pairs[b].j)))
            })
            .expect("nonempty");
        let pair = pairs.swap_remove(best);
        stats.pairs_reduced += 1;
        let s = s_polynomial(&basis[pair.i], &basis[pair.j], field);
        let h = normal_form(&s, &active_polys(&basis, &active), field);
        if h.is_zero() {
            stats.zero_reductions += 1;
        } else {
            update(&mut basis, &mut active, &mut pairs, h.monic(field), &mut stats);
        }
    }

    let kept = active_polys(&basis, &active);
    (
        GroebnerBasis {
            polys: interreduce(&kept, field),
            degree_bound: None,
            reduced: true,
        },
        stats,
    )
}

fn active_polys(basis: &[Polynomial], active: &[bool]) -> Vec<Polynomial> {
    basis
        .iter()
        .zip(active)
        .filter(|(_, a)| **a)
        .map(|(p, _)| p.clone())
        .collect()
}

fn update(
    basis: &mut Vec<Polynomial>,
    active: &mut Vec<bool>,
    pairs: &mut Vec<Pair>,
    h: Polynomial,
    stats: &mut BuchbergerStats,
) {
    let hk = basis.len();
    let lh = h.leading_monomial().expect("nonzero").clone();
    let lm = |k: usize, basis: &[Polynomial]| basis[k].leading_monomial().expect("nonzero").clone();

    // candidate pairs (h, g) for active g
    let mut cands: Vec<(usize, Monomial)> = (0..basis.len())
        .filter(|&k| active[k])
        .map(|k| (k, lh.lcm(&lm(k, basis))))
        .collect();
    let mut kept: Vec<(usize, Monomial)> = Vec::new();
    while let Some((g1, l1)) = cands.pop() {
        let coprime = lh.is_coprime(&lm(g1, basis));
        let dominated = cands.iter().chain(kept.iter()).any(|(_, l2)| l2.divides(&l1));
        if coprime || !dominated {
            kept.push((g1, l1));
        } else {
            stats.pairs_discarded += 1;
        }
    }
    // drop old pairs whose lcm is divisible by LM(h) in the strict sense
    let before = pairs.len();
    pairs.retain(|p| {
        !(lh.divides(&p.lcm)
            && lh.lcm(&lm(p.i, basis)) != p.lcm
            && lh.lcm(&lm(p.j, basis)) != p.lcm)
    });
    stats.pairs_discarded += before - pairs.len();
    for (g, l) in kept {
        if lh.is_coprime(&lm(g, basis)) {
            stats.pairs_discarded += 1;
            continue;
        }
        pairs.push(Pair { lcm: l, i: g, j: hk });
    }
    for (k, a) in active.iter_mut().enumerate() {
        if *a && lh.divides(&lm(k, basis)) {
            *a = false;
        }
    }
    basis.push(h);
    active.push(true);
}
