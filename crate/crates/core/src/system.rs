//! Polynomial systems, Jacobians, (de)homogenization and seeded generation.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::AlgebraError;
use crate::field::Field;
use crate::minors::PolyMatrix;
use crate::monomial::{monomials_of_bidegree, Block, VariableLayout};
use crate::polynomial::Polynomial;

/// Name and version of the generator behind every seeded experiment.
pub const PRNG_NAME: &str = "chacha8-v1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Flavor {
    HomogeneousBilinear,
    Bihomogeneous,
    /// Homogeneous in total degree but not in each block.
    Homogeneous,
    AffineBilinear,
    AffineGeneral,
}

impl Flavor {
    pub fn is_affine(self) -> bool {
        matches!(self, Flavor::AffineBilinear | Flavor::AffineGeneral)
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::HomogeneousBilinear => "homogeneous-bilinear",
            Flavor::Bihomogeneous => "bihomogeneous",
            Flavor::Homogeneous => "homogeneous",
            Flavor::AffineBilinear => "affine-bilinear",
            Flavor::AffineGeneral => "affine-general",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolySystem {
    layout: VariableLayout,
    polys: Vec<Polynomial>,
    flavor: Flavor,
}

impl PolySystem {
    /// A homogeneous system; the flavor is the most specific one that fits.
    pub fn homogeneous(layout: VariableLayout, polys: Vec<Polynomial>) -> Result<Self, AlgebraError> {
        check_layout(&layout, &polys)?;
        let flavor = if polys.iter().all(Polynomial::is_bilinear) {
            Flavor::HomogeneousBilinear
        } else if polys.iter().all(|f| !f.is_zero() && f.is_bihomogeneous()) {
            Flavor::Bihomogeneous
        } else if let Some(bad) = polys.iter().find(|f| f.is_zero() || !f.is_homogeneous()) {
            return Err(AlgebraError::Inhomogeneous {
                expected: bad.degree().unwrap_or(0),
            });
        } else {
            Flavor::Homogeneous
        };
        Ok(PolySystem {
            layout,
            polys,
            flavor,
        })
    }

    /// An affine system over the dehomogenized layout.
    pub fn affine(layout: VariableLayout, polys: Vec<Polynomial>) -> Result<Self, AlgebraError> {
        check_layout(&layout, &polys)?;
        let bilinear = polys.iter().all(|f| {
            f.terms().iter().all(|(m, _)| {
                let (a, b) = m.bidegree();
                a <= 1 && b <= 1
            })
        });
        let flavor = if bilinear {
            Flavor::AffineBilinear
        } else {
            Flavor::AffineGeneral
        };
        Ok(PolySystem {
            layout,
            polys,
            flavor,
        })
    }

    pub fn layout(&self) -> &VariableLayout {
        &self.layout
    }

    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn m(&self) -> usize {
        self.polys.len()
    }

    /// `n_x`: the last x index for homogeneous flavors, the x count for
    /// affine ones.
    pub fn n_x(&self) -> usize {
        if self.flavor.is_affine() {
            self.layout.x_count()
        } else {
            self.layout.x_count().saturating_sub(1)
        }
    }

    pub fn n_y(&self) -> usize {
        if self.flavor.is_affine() {
            self.layout.y_count()
        } else {
            self.layout.y_count().saturating_sub(1)
        }
    }

    /// The first `i` generators, `F_i`.
    pub fn prefix(&self, i: usize) -> PolySystem {
        PolySystem {
            layout: self.layout,
            polys: self.polys[..i].to_vec(),
            flavor: self.flavor,
        }
    }

    pub fn expect_flavor(&self, expected: Flavor) -> Result<(), AlgebraError> {
        if self.flavor == expected {
            Ok(())
        } else {
            Err(AlgebraError::FlavorMismatch {
                expected: expected.to_string(),
                actual: self.flavor.to_string(),
            })
        }
    }

    pub fn is_bihomogeneous(&self) -> bool {
        matches!(self.flavor, Flavor::HomogeneousBilinear | Flavor::Bihomogeneous)
    }

    /// `∂f_i/∂x_j`, one row per generator and one column per x variable.
    pub fn jacobian_x(&self, field: &Field) -> PolyMatrix {
        self.jacobian(Block::X, field)
    }

    /// `∂f_i/∂y_j`.
    pub fn jacobian_y(&self, field: &Field) -> PolyMatrix {
        self.jacobian(Block::Y, field)
    }

    fn jacobian(&self, block: Block, field: &Field) -> PolyMatrix {
        let vars: Vec<usize> = self.layout.block_range(block).collect();
        let entries = self
            .polys
            .iter()
            .flat_map(|f| vars.iter().map(move |&v| f.derivative(v, field)))
            .collect();
        PolyMatrix::new(self.polys.len(), vars.len(), entries).expect("consistent shape")
    }

    /// Sets `x_{n_x} = y_{n_y} = 1` and drops those variables.
    pub fn dehomogenize(&self, field: &Field) -> Result<PolySystem, AlgebraError> {
        self.expect_flavor(Flavor::HomogeneousBilinear)?;
        let (nx, ny) = (self.n_x(), self.n_y());
        let target = VariableLayout::affine(nx, ny);
        let mut values = vec![None; self.layout.n_vars()];
        values[nx] = Some(1);
        values[self.layout.y(ny)] = Some(1);
        let polys = self
            .polys
            .iter()
            .map(|f| f.specialize(&values, &target, field))
            .collect();
        PolySystem::affine(target, polys)
    }

    /// Right inverse of [`PolySystem::dehomogenize`]: each term is completed
    /// to bidegree (1,1) with the new variables `x_{n_x}` and `y_{n_y}`.
    pub fn bihomogenize(&self, field: &Field) -> Result<PolySystem, AlgebraError> {
        self.expect_flavor(Flavor::AffineBilinear)?;
        let (nx, ny) = (self.n_x(), self.n_y());
        let target = VariableLayout::homogeneous(nx, ny);
        let map: Vec<usize> = (0..nx).chain((0..ny).map(|j| target.y(j))).collect();
        let hx = target.var(nx);
        let hy = target.var(target.y(ny));
        let polys = self
            .polys
            .iter()
            .map(|f| {
                let lifted = f.relabel(&map, &target, field);
                let terms = lifted
                    .terms()
                    .iter()
                    .map(|(m, c)| {
                        let (a, b) = m.bidegree();
                        let mut m = m.clone();
                        if a == 0 {
                            m = m.mul(&hx);
                        }
                        if b == 0 {
                            m = m.mul(&hy);
                        }
                        (m, *c)
                    })
                    .collect();
                Polynomial::from_terms(terms, field)
            })
            .collect();
        PolySystem::homogeneous(target, polys)
    }

    /// Homogenizes an affine system in total degree with one extra variable,
    /// appended after every other variable (so it is the smallest).
    pub fn homogenize_total(&self, field: &Field) -> Result<PolySystem, AlgebraError> {
        if !self.flavor.is_affine() {
            return Err(AlgebraError::FlavorMismatch {
                expected: "affine".into(),
                actual: self.flavor.to_string(),
            });
        }
        let target = VariableLayout::with_counts(self.layout.x_count(), self.layout.y_count() + 1);
        let map: Vec<usize> = (0..self.layout.n_vars()).collect();
        let h = target.n_vars() - 1;
        let polys = self
            .polys
            .iter()
            .map(|f| {
                let top = f.degree().unwrap_or(0);
                let lifted = f.relabel(&map, &target, field);
                let terms = lifted
                    .terms()
                    .iter()
                    .map(|(m, c)| {
                        let mut m = m.clone();
                        for _ in m.degree()..top {
                            m = m.mul_var(h);
                        }
                        (m, *c)
                    })
                    .collect();
                Polynomial::from_terms(terms, field)
            })
            .collect();
        PolySystem::homogeneous(target, polys)
    }

    pub fn to_text(&self, field: &Field) -> String {
        let mut out = String::new();
        for f in &self.polys {
            out.push_str(&f.to_text(&self.layout, field));
            out.push('\n');
        }
        out
    }
}

fn check_layout(layout: &VariableLayout, polys: &[Polynomial]) -> Result<(), AlgebraError> {
    for f in polys {
        if let Some(m) = f.leading_monomial() {
            if m.n_vars() != layout.n_vars() || m.bidegree().0 + m.bidegree().1 != m.degree() {
                return Err(AlgebraError::LayoutMismatch(format!(
                    "polynomial over {} variables in a {}-variable layout",
                    m.n_vars(),
                    layout.n_vars()
                )));
            }
        }
    }
    Ok(())
}

/// `m` polynomials with one uniform coefficient in `[0, p)` per monomial of
/// bidegree `(d1, d2)`.
pub fn random_system(
    layout: VariableLayout,
    m: usize,
    bidegree: (u32, u32),
    seed: u64,
    field: &Field,
) -> Result<PolySystem, AlgebraError> {
    if m == 0 {
        return Err(AlgebraError::InvalidArgument("m must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let monos = monomials_of_bidegree(&layout, bidegree.0, bidegree.1);
    let polys = (0..m)
        .map(|_| {
            let terms = monos
                .iter()
                .map(|mono| (mono.clone(), rng.gen_range(0..field.modulus())))
                .collect();
            Polynomial::from_terms(terms, field)
        })
        .collect();
    PolySystem::homogeneous(layout, polys)
}

/// Random homogeneous bilinear system with blocks `x_0..x_{n_x}`,
/// `y_0..y_{n_y}`.
pub fn random_bilinear(
    n_x: usize,
    n_y: usize,
    m: usize,
    seed: u64,
    field: &Field,
) -> Result<PolySystem, AlgebraError> {
    random_system(VariableLayout::homogeneous(n_x, n_y), m, (1, 1), seed, field)
}

/// Random affine bilinear system in `n_x + n_y` variables.
pub fn random_affine_bilinear(
    n_x: usize,
    n_y: usize,
    m: usize,
    seed: u64,
    field: &Field,
) -> Result<PolySystem, AlgebraError> {
    random_bilinear(n_x, n_y, m, seed, field)?.dehomogenize(field)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomial::parse_polynomial;

    fn field() -> Field {
        Field::default()
    }

    fn poly(s: &str, l: &VariableLayout) -> Polynomial {
        parse_polynomial(s, 1, l, &field()).unwrap()
    }

    #[test]
    fn jacobian_examples() {
        let f = field();
        let l = VariableLayout::homogeneous(1, 1);
        let sys = PolySystem::homogeneous(l, vec![poly("x0*y0", &l)]).unwrap();
        let jx = sys.jacobian_x(&f);
        assert_eq!(jx.get(0, 0).to_text(&l, &f), "y0");
        assert!(jx.get(0, 1).is_zero());

        let sys = PolySystem::homogeneous(l, vec![poly("x0*y0 + x1*y1", &l), poly("x0*y1", &l)])
            .unwrap();
        let jy = sys.jacobian_y(&f);
        let shown: Vec<String> = (0..2)
            .flat_map(|i| (0..2).map(move |j| (i, j)))
            .map(|(i, j)| jy.get(i, j).to_text(&l, &f))
            .collect();
        assert_eq!(shown, ["x0", "x1", "0", "x0"]);
    }

    #[test]
    fn euler_identity_on_random_systems() {
        let f = field();
        for seed in 0..5 {
            let sys = random_bilinear(2, 3, 4, seed, &f).unwrap();
            let l = *sys.layout();
            let jx = sys.jacobian_x(&f);
            let jy = sys.jacobian_y(&f);
            for (i, fi) in sys.polys().iter().enumerate() {
                let mut via_x = Polynomial::zero();
                for j in 0..l.x_count() {
                    via_x = via_x.add(&jx.get(i, j).mul(&Polynomial::var(&l, j), &f), &f);
                }
                let mut via_y = Polynomial::zero();
                for j in 0..l.y_count() {
                    via_y = via_y.add(&jy.get(i, j).mul(&Polynomial::var(&l, l.y(j)), &f), &f);
                }
                assert_eq!(&via_x, fi);
                assert_eq!(&via_y, fi);
                for j in 0..l.x_count() {
                    assert!(jx.get(i, j).lives_in(&l, Block::Y));
                }
                for j in 0..l.y_count() {
                    assert!(jy.get(i, j).lives_in(&l, Block::X));
                }
            }
        }
    }

    #[test]
    fn dehomogenize_examples() {
        let f = field();
        let l = VariableLayout::homogeneous(1, 1);
        let a = VariableLayout::affine(1, 1);
        let sys = PolySystem::homogeneous(l, vec![poly("x0*y0 + x1*y1", &l), poly("x1*y1", &l)])
            .unwrap();
        let d = sys.dehomogenize(&f).unwrap();
        assert_eq!(d.flavor(), Flavor::AffineBilinear);
        assert_eq!(d.polys()[0].to_text(&a, &f), "x0*y0 + 1");
        assert_eq!(d.polys()[1].to_text(&a, &f), "1");
        assert!(d.dehomogenize(&f).is_err());
        assert!(sys.bihomogenize(&f).is_err());
    }

    #[test]
    fn bihomogenize_round_trip() {
        let f = field();
        for seed in 0..10 {
            let g = random_affine_bilinear(2, 3, 4, seed, &f).unwrap();
            let back = g.bihomogenize(&f).unwrap().dehomogenize(&f).unwrap();
            assert_eq!(back, g);
        }
    }

    #[test]
    fn random_systems_are_deterministic() {
        let f = field();
        let a = random_bilinear(2, 2, 4, 7, &f).unwrap();
        let b = random_bilinear(2, 2, 4, 7, &f).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.m(), 4);
        assert!(a.polys().iter().all(|p| p.n_terms() <= 9));
        assert_ne!(a, random_bilinear(2, 2, 4, 8, &f).unwrap());
        // a tiny field makes zero coefficients show up
        let small = Field::new(3).unwrap();
        let s = random_bilinear(3, 3, 6, 1, &small).unwrap();
        assert!(s.polys().iter().any(|p| p.n_terms() < 16));
        assert!(s.polys().iter().all(|p| !p.is_zero()));
    }

    #[test]
    fn homogenize_total_adds_last_variable() {
        let f = field();
        let g = random_affine_bilinear(2, 2, 4, 3, &f).unwrap();
        let h = g.homogenize_total(&f).unwrap();
        assert_eq!(h.layout().n_vars(), 5);
        assert!(h.polys().iter().all(|p| p.is_homogeneous() && p.degree() == Some(2)));
    }
}
