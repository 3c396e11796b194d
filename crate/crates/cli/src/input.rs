use std::fs;

use anyhow::{bail, Context, Result};
use bilin_core::polynomial::{infer_counts, parse_polynomials};
use bilin_core::system::random_system;
use bilin_core::{Field, PolySystem, VariableLayout};

use crate::InstanceArgs;

pub fn parse_bidegree(s: &str) -> Result<(u32, u32), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected `d1,d2`, got `{s}`"))?;
    let parse = |t: &str| t.trim().parse::<u32>().map_err(|e| format!("`{t}`: {e}"));
    Ok((parse(a)?, parse(b)?))
}

/// Builds the system described by the instance arguments.
pub fn load_system(a: &InstanceArgs, field: &Field) -> Result<PolySystem> {
    match &a.input {
        Some(path) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            from_text(&text, a, field).with_context(|| format!("in {}", path.display()))
        }
        None => {
            let (Some(nx), Some(ny), Some(m)) = (a.nx, a.ny, a.m) else {
                bail!("a random instance needs --nx, --ny and --m (or pass --input)");
            };
            let sys = random_system(VariableLayout::homogeneous(nx, ny), m, a.bidegree, a.seed, field)?;
            if a.affine {
                Ok(sys.dehomogenize(field)?)
            } else {
                Ok(sys)
            }
        }
    }
}

fn from_text(text: &str, a: &InstanceArgs, field: &Field) -> Result<PolySystem> {
    let (xs, ys) = infer_counts(text);
    let offset = usize::from(!a.affine);
    let x_count = a.nx.map_or(xs, |n| n + offset);
    let y_count = a.ny.map_or(ys, |n| n + offset);
    if x_count < xs || y_count < ys {
        bail!("the file uses {xs} x and {ys} y variables, more than --nx/--ny allow");
    }
    let layout = VariableLayout::with_counts(x_count, y_count);
    let polys = parse_polynomials(text, &layout, field)?;
    if polys.is_empty() {
        bail!("no polynomials in input");
    }
    if let Some(m) = a.m {
        if m != polys.len() {
            bail!("--m {m} given but the file has {} polynomials", polys.len());
        }
    }
    Ok(if a.affine {
        PolySystem::affine(layout, polys)?
    } else {
        PolySystem::homogeneous(layout, polys)?
    })
}
