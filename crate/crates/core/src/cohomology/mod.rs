//! Group cohomology with finite, integral and circle coefficients, derivations, relative
//! cohomology and the structure of `H²` for abelian groups and direct products.

mod cochains;
mod hochschild;
mod product;

pub use cochains::{integral_coboundary, module_coboundary, module_relations, trivial_coboundary, Tuples};
pub use hochschild::relative_hochschild;
pub use product::{alpha_m, alt_map, h2_product_decompose, Bicharacter, H2Decomposition};

use crate::complexes::{coinvariant_cohomology, sigma_action_on_bar, truncated_double, ComplexError, PermComplex};
use crate::exactlin::{cokernel, homology, CircleCohomology, CircleVec, ExactError, FpAbGroup, Homology, IntMatrix};
use crate::groups::{FiniteGroup, GModule, GroupError, Side};
use crate::matched::BicrossedProduct;

/// Largest number of normalized tuples in a sparse cochain space.
pub const SPARSE_LIMIT: usize = 4_000_000;
/// Largest number of ambient coordinates in a dense cochain computation.
pub const DENSE_LIMIT: usize = 1_500;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CohomologyError {
    #[error("cochain space of degree {degree} has {size} coordinates, over the limit {limit}")]
    SizeBound { degree: usize, size: usize, limit: usize },
    #[error("degree {0} is not supported here")]
    Degree(usize),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// Coefficients for [`group_cohomology`].
#[derive(Clone, Debug)]
pub enum Coefficients {
    /// `ℤ` with trivial action.
    Integers,
    /// `ℚ/ℤ` with trivial action.
    Circle,
    /// A finite module.
    Module(GModule),
}

/// A cochain in one of the two storage formats.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cochain {
    Circle(CircleVec),
    /// Integer coordinates, `(tuple, component)` major-to-minor for modules.
    Lattice(Vec<i64>),
}

#[derive(Clone, Debug)]
enum Repr {
    Circle(CircleCohomology),
    Lattice(Homology),
    /// The group alone, without a cochain model for classes.
    Bare(FpAbGroup),
}

/// A computed cohomology group with its cochain model.
#[derive(Clone, Debug)]
pub struct CohomologyGroup {
    degree: usize,
    model: String,
    repr: Repr,
}

impl CohomologyGroup {
    fn circle(degree: usize, model: impl Into<String>, c: CircleCohomology) -> Self {
        CohomologyGroup { degree, model: model.into(), repr: Repr::Circle(c) }
    }

    fn lattice(degree: usize, model: impl Into<String>, h: Homology) -> Self {
        CohomologyGroup { degree, model: model.into(), repr: Repr::Lattice(h) }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Short description of the cochain complex used.
    pub fn model(&self) -> &str {
        &self.model
    }

    /// The group; for circle coefficients this is the finite part.
    pub fn group(&self) -> &FpAbGroup {
        match &self.repr {
            Repr::Circle(c) => c.group(),
            Repr::Lattice(h) => h.group(),
            Repr::Bare(g) => g,
        }
    }

    /// Number of `ℚ/ℤ` summands (circle coefficients only).
    pub fn circle_rank(&self) -> usize {
        match &self.repr {
            Repr::Circle(c) => c.circle_rank(),
            Repr::Lattice(_) | Repr::Bare(_) => 0,
        }
    }

    /// A cocycle representing the class with canonical coordinates `c`.
    ///
    /// Panics if the group was computed without representatives over its dense size limit.
    pub fn representative(&self, c: &[i64]) -> Cochain {
        match &self.repr {
            Repr::Circle(h) => Cochain::Circle(h.representative(c)),
            Repr::Lattice(h) => Cochain::Lattice(h.representative_of(c)),
            Repr::Bare(_) => panic!("computed without representatives"),
        }
    }

    /// Canonical coordinates of the class of a cocycle.
    pub fn class_of(&self, f: &Cochain) -> Option<Vec<i64>> {
        match (&self.repr, f) {
            (Repr::Circle(h), Cochain::Circle(v)) => h.class_of(v),
            (Repr::Lattice(h), Cochain::Lattice(v)) => h.class_of(v),
            _ => None,
        }
    }

    pub fn circle_data(&self) -> Option<&CircleCohomology> {
        match &self.repr {
            Repr::Circle(c) => Some(c),
            Repr::Lattice(_) | Repr::Bare(_) => None,
        }
    }

    /// The circle-valued representative of a class (circle coefficients only).
    pub fn circle_representative(&self, c: &[i64]) -> CircleVec {
        match self.representative(c) {
            Cochain::Circle(v) => v,
            Cochain::Lattice(_) => panic!("not a circle-valued cohomology group"),
        }
    }
}

fn check_sparse(degree: usize, size: usize) -> Result<(), CohomologyError> {
    if size > SPARSE_LIMIT {
        return Err(CohomologyError::SizeBound { degree, size, limit: SPARSE_LIMIT });
    }
    Ok(())
}

fn check_dense(degree: usize, size: usize) -> Result<(), CohomologyError> {
    if size > DENSE_LIMIT {
        return Err(CohomologyError::SizeBound { degree, size, limit: DENSE_LIMIT });
    }
    Ok(())
}

/// `H^n(G, A)` on normalized inhomogeneous cochains.
pub fn group_cohomology(g: &FiniteGroup, coeff: &Coefficients, n: usize, representatives: bool) -> Result<CohomologyGroup, CohomologyError> {
    let t = Tuples::new(g.order());
    match coeff {
        Coefficients::Circle => {
            check_sparse(n + 1, t.count(n + 1))?;
            let prev = if n >= 1 { Some(trivial_coboundary(g, n - 1)) } else { None };
            let next = trivial_coboundary(g, n);
            let c = CircleCohomology::compute(prev.as_ref(), &next, representatives)?;
            Ok(CohomologyGroup::circle(n, "normalized bar cochains, Q/Z", c))
        }
        Coefficients::Integers if !representatives && t.count(n + 1) > DENSE_LIMIT => {
            // G is finite, so H^n(G, Z) is Z for n = 0, zero for n = 1, and the torsion of
            // H_{n-1}(G, Z) = C_{n-1} / im ∂_n otherwise
            let g = match n {
                0 => FpAbGroup::new(1, vec![]),
                1 => FpAbGroup::trivial(),
                _ => {
                    check_sparse(n, t.count(n))?;
                    FpAbGroup::new(0, cokernel(&trivial_coboundary(g, n - 1), false)?.torsion)
                }
            };
            Ok(CohomologyGroup { degree: n, model: "normalized bar chains, Z, torsion of H_{n-1}".into(), repr: Repr::Bare(g) })
        }
        Coefficients::Integers => {
            check_dense(n + 1, t.count(n + 1))?;
            let f = if n >= 1 { integral_coboundary(g, n - 1) } else { IntMatrix::zeros(1, 0) };
            let d = integral_coboundary(g, n);
            let none = |k: usize| IntMatrix::zeros(k, 0);
            let h = homology(&f, &d, &none(f.cols()), &none(d.cols()), &none(d.rows()))?;
            Ok(CohomologyGroup::lattice(n, "normalized bar cochains, Z", h))
        }
        Coefficients::Module(m) => {
            if m.group().table() != g.table() {
                return Err(CohomologyError::Invalid("module is over a different group".into()));
            }
            check_dense(n + 1, t.count(n + 1) * m.dim())?;
            let f = if n >= 1 { module_coboundary(m, n - 1) } else { IntMatrix::zeros(m.dim(), 0) };
            let d = module_coboundary(m, n);
            let rel_m = if n >= 1 { module_relations(m, n - 1) } else { IntMatrix::zeros(0, 0) };
            let h = homology(&f, &d, &rel_m, &module_relations(m, n), &module_relations(m, n + 1))?;
            Ok(CohomologyGroup::lattice(n, "normalized bar cochains, finite module", h))
        }
    }
}

/// `Der(F, M) = Z¹(F, M)`; for trivial action this is `Hom(F, M)`.
pub fn derivations(m: &GModule) -> Result<CohomologyGroup, CohomologyError> {
    let t = Tuples::new(m.group().order());
    check_dense(2, t.count(2) * m.dim())?;
    let d = module_coboundary(m, 1);
    let f = IntMatrix::zeros(d.cols(), 0);
    let h = homology(&f, &d, &IntMatrix::zeros(0, 0), &module_relations(m, 1), &module_relations(m, 2))?;
    Ok(CohomologyGroup::lattice(1, "derivations on normalized 1-cochains", h))
}

/// `H^k(G, ℚ/ℤ)` as a left `F`-module via `(x·α)(s_1, …, s_k) = α(s_1◁x, …, s_k◁x)`, where
/// each `◁x` must be an automorphism of `G`.
pub fn cohomology_module(
    g: &FiniteGroup,
    f: &FiniteGroup,
    right: impl Fn(usize, usize) -> usize,
    k: usize,
) -> Result<(GModule, CohomologyGroup), CohomologyError> {
    for x in f.elements() {
        for a in g.elements() {
            for b in g.elements() {
                if right(g.mul(a, b), x) != g.mul(right(a, x), right(b, x)) {
                    return Err(GroupError::ActionNotByAutomorphisms { element: x, a, b }.into());
                }
            }
        }
    }
    let h = group_cohomology(g, &Coefficients::Circle, k, true)?;
    let inv = h.group().invariants().to_vec();
    let t = Tuples::new(g.order());
    let cnt = t.count(k);
    let reps: Vec<CircleVec> = (0..inv.len())
        .map(|i| {
            let mut e = vec![0; inv.len()];
            e[i] = 1;
            h.circle_representative(&e)
        })
        .collect();
    let mut actions = vec![];
    for x in f.elements() {
        let moved: Vec<usize> = (0..cnt)
            .map(|i| {
                let tup: Vec<usize> = t.decode(k, i).into_iter().map(|s| right(s, x)).collect();
                t.encode(&tup).expect("automorphisms fix only the identity at the identity")
            })
            .collect();
        let mut a = vec![vec![0i64; inv.len()]; inv.len()];
        for (j, rep) in reps.iter().enumerate() {
            let w = CircleVec::from_numerators(moved.iter().map(|&i| rep.numerators()[i]).collect(), rep.den());
            let c = h.class_of(&Cochain::Circle(w)).ok_or_else(|| CohomologyError::Invalid("transformed cocycle is not a cocycle".into()))?;
            for (i, v) in c.into_iter().enumerate() {
                a[i][j] = v;
            }
        }
        actions.push(a);
    }
    Ok((GModule::new(inv, f.clone(), actions)?, h))
}

/// `H^k_𝒜(Σ, X; ℚ/ℤ)` for `k ≥ 2` from any pair of resolutions `P`, `Q` whose tensor is free,
/// as `H^{k−1}` of `Hom_Σ` of the completed truncated double complex.
pub fn relative_auslander_with<P: PermComplex, Q: PermComplex>(p: P, q: Q, k: usize, representatives: bool) -> Result<CohomologyGroup, CohomologyError> {
    if k < 2 {
        return Err(CohomologyError::Degree(k));
    }
    let d = truncated_double(p, q, k)?;
    let n = d.group().order();
    check_sparse(k, d.rank(k) / n)?;
    let c = coinvariant_cohomology(&d, k - 1, representatives)?;
    Ok(CohomologyGroup::circle(k, "completed truncated double complex", c))
}

/// `H^k_𝒜(Σ, X; ℚ/ℤ)` with both bar resolutions carrying their `Σ`-actions.
pub fn relative_auslander(bp: &BicrossedProduct, k: usize, representatives: bool) -> Result<CohomologyGroup, CohomologyError> {
    let p = sigma_action_on_bar(bp, Side::Left, k)?;
    let q = sigma_action_on_bar(bp, Side::Right, k)?;
    relative_auslander_with(p, q, k, representatives)
}

#[cfg(test)]
mod tests;
