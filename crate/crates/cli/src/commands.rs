use std::fmt::Write as _;
use std::time::Instant;

use anyhow::{bail, Result};
use bilin_core::affine::{affine_report, elimination_by_minors_check, shape_lemma_check};
use bilin_core::f5::{
    buchberger, buchberger_with_stats, check_biregularity, matrix_f5, multihomogeneous_matrix_f5,
    predicted_rtz_count, verified_degree_bound, F5Stats, GroebnerBasis, Mode,
};
use bilin_core::hilbert::{
    cost_model, hs_closed_form, hs_direct_budgeted, hs_recurrence, univariate_hs,
};
use bilin_core::polynomial::Polynomial;
use bilin_core::system::{random_affine_bilinear, random_bilinear};
use bilin_core::{Block, Field, Flavor, PolySystem};
use serde_json::{json, Value};

use crate::input::load_system;
use crate::{BenchArgs, EngineArg, GbArgs, HilbertArgs, Report, StatsArgs, VerifyArgs};

/// Largest degree bound tried when `--D` is not given.
const DEGREE_CAP: u32 = 24;

fn describe(sys: &PolySystem, field: &Field) -> Value {
    json!({
        "flavor": sys.flavor(),
        "n_x": sys.n_x(),
        "n_y": sys.n_y(),
        "m": sys.m(),
        "prime": field.modulus(),
    })
}

fn texts(polys: &[Polynomial], sys: &PolySystem, field: &Field) -> Vec<String> {
    polys.iter().map(|p| p.to_text(sys.layout(), field)).collect()
}

fn search_degree(sys: &PolySystem, field: &Field) -> Result<u32> {
    match verified_degree_bound(sys, DEGREE_CAP, field)? {
        Some(d) => Ok(d),
        None => bail!("no degree bound up to {DEGREE_CAP} gives a full basis; pass --D"),
    }
}

fn f5_engine(engine: EngineArg, sys: &PolySystem, d: u32, mode: Mode, field: &Field) -> Result<(GroebnerBasis, F5Stats)> {
    Ok(match engine {
        EngineArg::Multihom => multihomogeneous_matrix_f5(sys, d, mode, field)?,
        _ => matrix_f5(sys, d, mode, field)?,
    })
}

pub fn gb(a: &GbArgs, field: &Field) -> Result<Report> {
    let sys = load_system(&a.instance, field)?;
    let source = match &a.instance.input {
        Some(p) => format!("file {}", p.display()),
        None => format!("seed {}", a.instance.seed),
    };
    let mut human = String::new();
    writeln!(
        human,
        "system      {}, n_x={} n_y={} m={}, p={}, {source}",
        sys.flavor(),
        sys.n_x(),
        sys.n_y(),
        sys.m(),
        field.modulus()
    )?;

    let (basis, run_json, degree) = if a.engine == EngineArg::Buchberger {
        let (g, st) = buchberger_with_stats(sys.polys(), field);
        writeln!(human, "engine      buchberger")?;
        writeln!(
            human,
            "pairs       {} reduced, {} to zero, {} discarded",
            st.pairs_reduced, st.zero_reductions, st.pairs_discarded
        )?;
        (g, json!({ "engine": "buchberger", "stats": st }), None)
    } else {
        if sys.flavor().is_affine() {
            bail!("Matrix F5 needs a homogeneous system; use --engine buchberger for affine input");
        }
        let d = match a.d {
            Some(d) => d,
            None => search_degree(&sys, field)?,
        };
        let mode: Mode = a.mode.into();
        let (g, st) = f5_engine(a.engine, &sys, d, mode, field)?;
        writeln!(human, "engine      {} ({mode}), D={d}", st.engine)?;
        writeln!(human, "reductions to zero: {}", st.reductions_to_zero.len())?;
        for z in &st.reductions_to_zero {
            writeln!(
                human,
                "  ({}, f{}) in degree {}",
                z.signature.monomial.display(sys.layout()),
                z.signature.index,
                z.degree
            )?;
        }
        writeln!(
            human,
            "rows skipped: {} classical, {} extended",
            st.rows_skipped_classical, st.rows_skipped_extended
        )?;
        writeln!(human, "field ops   {} elimination, {} criterion table", st.field_ops, st.criterion_field_ops)?;
        let mut j = st.to_json(sys.layout());
        if sys.flavor() == Flavor::HomogeneousBilinear {
            if let Ok(p) = predicted_rtz_count(sys.n_x(), sys.n_y(), sys.m()) {
                writeln!(
                    human,
                    "predicted   {p} reductions to zero in classical mode for a generic system, over all degrees"
                )?;
                j["predicted_rtz_all_degrees"] = json!(p.to_string());
            }
        }
        (g.to_reduced(field), j, Some(d))
    };

    let mut consistent = true;
    let mut check = Value::Null;
    if a.check {
        let oracle = buchberger(&sys, field);
        let agree = oracle.polys == basis.polys;
        consistent = agree;
        writeln!(
            human,
            "check       reduced basis {} Buchberger's",
            if agree { "equals" } else { "DIFFERS FROM" }
        )?;
        check = json!({ "buchberger_agrees": agree });
    }
    writeln!(human, "basis       {} polynomials, max degree {}", basis.polys.len(), basis.max_degree())?;
    for t in texts(&basis.polys, &sys, field) {
        writeln!(human, "  {t}")?;
    }
    let json = json!({
        "command": "gb",
        "system": describe(&sys, field),
        "seed": a.instance.input.is_none().then_some(a.instance.seed),
        "degree_bound": degree,
        "run": run_json,
        "basis": texts(&basis.polys, &sys, field),
        "leading_monomials": basis
            .leading_monomials()
            .iter()
            .map(|m| m.display(sys.layout()).to_string())
            .collect::<Vec<_>>(),
        "check": check,
    });
    Ok(Report {
        human,
        json,
        consistent,
    })
}

pub fn hilbert(a: &HilbertArgs, field: &Field) -> Result<Report> {
    let (nx, ny, m) = (a.shape.nx, a.shape.ny, a.shape.m);
    let [t1, t2] = a.trunc[..] else {
        bail!("--trunc takes two values");
    };
    let trunc = (t1, t2);
    let closed = hs_closed_form(nx, ny, m, trunc)?;
    let recurrence = hs_recurrence(nx, ny, m, trunc)?;
    let recurrence_agrees = closed == recurrence;
    let mut consistent = recurrence_agrees;

    let mut human = String::new();
    writeln!(human, "Hilbert bi-series, n_x={nx} n_y={ny} m={m}, truncated at ({t1},{t2})")?;
    writeln!(human, "rows: powers of t1, columns: powers of t2")?;
    write!(human, "{closed}")?;
    writeln!(
        human,
        "recurrence   {}",
        if recurrence_agrees { "agrees with the closed form" } else { "DISAGREES with the closed form" }
    )?;

    let mut direct_json = Value::Null;
    if m >= 1 && a.budget > 0 {
        let sys = random_bilinear(nx, ny, m, a.seed, field)?;
        let direct = hs_direct_budgeted(&sys, trunc, Some(a.budget), field)?;
        let mut mismatches = Vec::new();
        let mut computed = 0;
        for (i, row) in direct.cells.iter().enumerate() {
            for (j, cell) in row.iter().enumerate() {
                if let Some(v) = cell {
                    computed += 1;
                    let want = closed.get(i as u32, j as u32);
                    if *v != want {
                        mismatches.push(json!({ "cell": [i, j], "direct": v, "closed": want }));
                    }
                }
            }
        }
        consistent &= mismatches.is_empty();
        writeln!(
            human,
            "direct       seed {}: {computed} cells computed, {} over budget, {} mismatches",
            a.seed,
            direct.skipped.len(),
            mismatches.len()
        )?;
        if !direct.skipped.is_empty() {
            writeln!(human, "             not run: {:?}", direct.skipped)?;
        }
        direct_json = json!({
            "seed": a.seed,
            "budget": a.budget,
            "computed": computed,
            "skipped": direct.skipped,
            "mismatches": mismatches,
            "field_ops": direct.field_ops,
        });
    }
    let uni = univariate_hs(&closed);
    writeln!(human, "HS(t,t)      {uni:?}")?;
    let json = json!({
        "command": "hilbert",
        "n_x": nx, "n_y": ny, "m": m,
        "trunc": [t1, t2],
        "prime": field.modulus(),
        "closed_form": closed,
        "recurrence_agrees": recurrence_agrees,
        "direct": direct_json,
        "univariate": uni,
    });
    Ok(Report {
        human,
        json,
        consistent,
    })
}

pub fn stats(a: &StatsArgs, field: &Field) -> Result<Report> {
    let (nx, ny, m) = (a.shape.nx, a.shape.ny, a.shape.m);
    let predicted = predicted_rtz_count(nx, ny, m)?;
    let mut human = String::new();
    writeln!(human, "n_x={nx} n_y={ny} m={m}")?;
    writeln!(human, "predicted reductions to zero (classical criterion, generic system): {predicted}")?;
    let mut json = json!({
        "command": "stats",
        "n_x": nx, "n_y": ny, "m": m,
        "predicted_rtz": predicted.to_string(),
    });
    let mut consistent = true;
    if let Some(d) = a.d {
        if let Ok(cm) = cost_model(nx, ny, m, d) {
            let f = cm.factor();
            let approx = *f.numer() as f64 / *f.denom() as f64;
            writeln!(human, "speed-up model F at D={d}: {f} ~ {approx:.2} (predicted)")?;
            json["speedup"] = json!({
                "degree": d,
                "t_hom": cm.t_hom.to_string(),
                "t_multihom": cm.t_multihom.to_string(),
                "factor": f.to_string(),
                "approx": approx,
            });
        }
        let sys = random_bilinear(nx, ny, m, a.seed, field)?;
        let (_, classical) = multihomogeneous_matrix_f5(&sys, d, Mode::Classical, field)?;
        let (_, extended) = multihomogeneous_matrix_f5(&sys, d, Mode::Extended, field)?;
        let report = check_biregularity(&sys, d, field)?;
        consistent = report.passes;
        writeln!(
            human,
            "measured up to D={d}, seed {}: {} reductions to zero classical, {} extended",
            a.seed,
            classical.reductions_to_zero.len(),
            extended.reductions_to_zero.len()
        )?;
        writeln!(
            human,
            "bi-regularity (observed vs predicted signatures, degree <= D-2): {}",
            if report.passes { "consistent" } else { "INCONSISTENT" }
        )?;
        json["measured"] = json!({
            "degree": d,
            "seed": a.seed,
            "rtz_classical": classical.reductions_to_zero.len(),
            "rtz_extended": extended.reductions_to_zero.len(),
            "biregularity": report,
        });
    }
    Ok(Report {
        human,
        json,
        consistent,
    })
}

struct Checks {
    lines: Vec<Value>,
    human: String,
    ok: bool,
}

impl Checks {
    fn record(&mut self, seed: u64, name: &str, pass: bool, detail: String) {
        self.ok &= pass;
        let _ = writeln!(
            self.human,
            "{} seed {seed:<4} {name:<16} {detail}",
            if pass { "PASS" } else { "FAIL" }
        );
        self.lines.push(json!({ "seed": seed, "check": name, "pass": pass, "detail": detail }));
    }
}

pub fn verify(a: &VerifyArgs, field: &Field) -> Result<Report> {
    let (nx, ny) = (a.nx, a.ny);
    let m = a.m.unwrap_or(nx + ny);
    let mut c = Checks {
        lines: Vec::new(),
        human: format!("n_x={nx} n_y={ny} m={m}, p={}\n", field.modulus()),
        ok: true,
    };
    for seed in a.seed..a.seed + a.seeds {
        let sys = random_bilinear(nx, ny, m, seed, field)?;
        let d = search_degree(&sys, field)?;
        let (g_cl, st_cl) = multihomogeneous_matrix_f5(&sys, d, Mode::Classical, field)?;
        let (g_ex, st_ex) = multihomogeneous_matrix_f5(&sys, d, Mode::Extended, field)?;
        let (g_hom, _) = matrix_f5(&sys, d, Mode::Classical, field)?;

        let oracle = buchberger(&sys, field);
        let same = g_cl.to_reduced(field).polys == oracle.polys;
        c.record(seed, "buchberger", same, format!("reduced basis at D={d}"));

        let lms = g_cl.leading_monomials();
        c.record(
            seed,
            "engines",
            lms == g_hom.leading_monomials(),
            format!("{} leading monomials, hom vs multihom", lms.len()),
        );
        let rtz = st_ex.reductions_to_zero.len();
        let want_zero = m <= nx + ny;
        c.record(
            seed,
            "extended",
            lms == g_ex.leading_monomials() && (!want_zero || rtz == 0),
            format!(
                "{rtz} reductions to zero extended, {} classical",
                st_cl.reductions_to_zero.len()
            ),
        );
        if m <= nx + ny {
            let report = check_biregularity(&sys, d, field)?;
            c.record(seed, "bi-regularity", report.passes, format!("signatures up to degree {}", d - 2));
        }
        if m == nx + ny {
            let aff = random_affine_bilinear(nx, ny, m, seed, field)?;
            let r = affine_report(&aff, field)?;
            c.record(
                seed,
                "affine",
                r.matches_generic(),
                format!(
                    "d_reg {} (bound {}), dim {} (bezout {})",
                    r.d_reg_observed, r.d_reg_bound, r.quotient_dim, r.bezout
                ),
            );
            for keep in [Block::X, Block::Y] {
                let e = elimination_by_minors_check(&aff, keep, DEGREE_CAP, field)?;
                c.record(
                    seed,
                    "elimination",
                    e.equal(),
                    format!("{keep:?} kept, {} generators", e.elimination_basis_size),
                );
            }
            let s = shape_lemma_check(&aff, DEGREE_CAP, field)?;
            c.record(seed, "shape", s.holds(), format!("{} variables in degree {}", s.entries.len(), s.degree));
        }
    }
    let json = json!({
        "command": "verify",
        "n_x": nx, "n_y": ny, "m": m,
        "prime": field.modulus(),
        "checks": c.lines,
        "passes": c.ok,
    });
    Ok(Report {
        human: c.human,
        json,
        consistent: c.ok,
    })
}

pub fn bench(a: &BenchArgs, field: &Field) -> Result<Report> {
    let (nx, ny, m, d) = (a.shape.nx, a.shape.ny, a.shape.m, a.d);
    let mode: Mode = a.mode.into();
    let cm = cost_model(nx, ny, m, d)?;
    let f = cm.factor();
    let predicted = *f.numer() as f64 / *f.denom() as f64;
    let sys = random_bilinear(nx, ny, m, a.seed, field)?;
    let t0 = Instant::now();
    let (g_hom, hom) = matrix_f5(&sys, d, mode, field)?;
    let t_hom = t0.elapsed();
    let t1 = Instant::now();
    let (g_multi, multi) = multihomogeneous_matrix_f5(&sys, d, mode, field)?;
    let t_multi = t1.elapsed();
    let ratio = hom.field_ops as f64 / multi.field_ops.max(1) as f64;
    let same = g_hom.leading_monomials() == g_multi.leading_monomials();

    let mut human = String::new();
    writeln!(human, "n_x={nx} n_y={ny} m={m} D={d}, seed {}, {mode}", a.seed)?;
    writeln!(human, "{:<10} {:>14} {:>10}", "engine", "field ops", "seconds")?;
    writeln!(human, "{:<10} {:>14} {:>10.3}", "hom", hom.field_ops, t_hom.as_secs_f64())?;
    writeln!(human, "{:<10} {:>14} {:>10.3}", "multihom", multi.field_ops, t_multi.as_secs_f64())?;
    writeln!(human, "measured ratio  {ratio:.2}")?;
    writeln!(human, "predicted F     {predicted:.2} ({f}, cost model with unit constants)")?;
    writeln!(
        human,
        "leading monomials {}",
        if same { "agree" } else { "DIFFER" }
    )?;
    let json = json!({
        "command": "bench",
        "n_x": nx, "n_y": ny, "m": m, "degree": d,
        "seed": a.seed,
        "mode": mode,
        "hom": { "field_ops": hom.field_ops, "seconds": t_hom.as_secs_f64() },
        "multihom": { "field_ops": multi.field_ops, "seconds": t_multi.as_secs_f64() },
        "ratio": ratio,
        "predicted": { "factor": f.to_string(), "approx": predicted },
        "leading_monomials_agree": same,
    });
    Ok(Report {
        human,
        json,
        consistent: same,
    })
}
