//! Complexes of permutation modules over finite groups: bar, cyclic and standard resolutions,
//! tensor totals, the completed truncated double complex and their coinvariants.

mod cone;
mod group_ring;
mod perm;
mod standard;

pub use cone::{MappingCone, SetTensor};
pub use group_ring::{bar_resolution, cyclic_resolution, GroupRingComplex, GroupRingElement, GroupRingMatrix, Projectivity, BAR_RANK_LIMIT};
pub use perm::{
    boundary_matrix, check_d_squared, check_equivariance, coinvariant_coboundary, coinvariant_cohomology, integral_homology, is_exact_through,
    orbit_basis, OrbitBasis, PermComplex,
};
pub use standard::{Inflated, StandardComplex, TensorTotal, TruncatedDouble};

use crate::exactlin::ExactError;
use crate::groups::{abelian_group, FiniteGroup, GSet, GroupError, Side};
use crate::matched::BicrossedProduct;

/// The completed truncated double complex `D`.
pub type DoubleComplexD<P, Q> = TruncatedDouble<P, Q>;

/// A type-erased permutation complex.
pub type BoxedComplex = Box<dyn PermComplex + Send + Sync>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ComplexError {
    #[error("∂∂ ≠ 0 on basis element {basis} of degree {degree}")]
    NotAComplex { degree: usize, basis: usize },
    #[error("boundary does not commute with element {element} on basis element {basis} of degree {degree}")]
    NotEquivariant { degree: usize, basis: usize, element: usize },
    #[error("basis of degree {degree} is not free: element {basis} is fixed after {orbit_size} steps")]
    BasisNotFree { degree: usize, basis: usize, orbit_size: usize },
    #[error("degree {degree} exceeds the size bound {limit}")]
    SizeBound { degree: usize, limit: usize },
    #[error("degree {requested} requested but the complex stops at {top}")]
    DegreeOutOfRange { requested: usize, top: usize },
    #[error("the left action ▷ is not trivial")]
    NotSemidirect,
    #[error("the set has {orbits} orbits")]
    NotTransitive { orbits: usize },
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

impl<T: PermComplex + ?Sized> PermComplex for Box<T> {
    fn group(&self) -> &FiniteGroup {
        (**self).group()
    }
    fn top_degree(&self) -> usize {
        (**self).top_degree()
    }
    fn rank(&self, deg: usize) -> usize {
        (**self).rank(deg)
    }
    fn act(&self, deg: usize, sigma: usize, b: usize) -> usize {
        (**self).act(deg, sigma, b)
    }
    fn boundary(&self, deg: usize, b: usize) -> Vec<(usize, i64)> {
        (**self).boundary(deg, b)
    }
    fn augmentation(&self, b: usize) -> Option<i64> {
        (**self).augmentation(b)
    }
}

impl<T: PermComplex + ?Sized> PermComplex for &T {
    fn group(&self) -> &FiniteGroup {
        (**self).group()
    }
    fn top_degree(&self) -> usize {
        (**self).top_degree()
    }
    fn rank(&self, deg: usize) -> usize {
        (**self).rank(deg)
    }
    fn act(&self, deg: usize, sigma: usize, b: usize) -> usize {
        (**self).act(deg, sigma, b)
    }
    fn boundary(&self, deg: usize, b: usize) -> Vec<(usize, i64)> {
        (**self).boundary(deg, b)
    }
    fn augmentation(&self, b: usize) -> Option<i64> {
        (**self).augmentation(b)
    }
}

/// The standard complex `ℤX^{k+1}` of a transitive set; right sets act through inverses.
pub fn standard_complex(set: &GSet, top: usize, normalized: bool) -> Result<StandardComplex, ComplexError> {
    let orbits = set.orbits().len();
    if orbits != 1 {
        return Err(ComplexError::NotTransitive { orbits });
    }
    StandardComplex::from_gset(set, top, normalized)
}

/// The normalized bar resolution of `G` (`Side::Right`, on `F\Σ ≅ G` via `s·(x,t) = (s◁x)t`)
/// or of `F` (`Side::Left`, on `Σ/G ≅ F` via `(x,s)·y = x(s▷y)`) as a `Σ`-complex.
///
/// In the right case the tuple `(s_i⋯s_1, …, s_1, e)` is the bar symbol `[s_i|…|s_1]`; in the
/// left case `(e, x_1, x_1x_2, …)` is `[x_1|…|x_i]`.
pub fn sigma_action_on_bar(bp: &BicrossedProduct, side: Side, top: usize) -> Result<StandardComplex, ComplexError> {
    let mp = bp.pair();
    let sigma = bp.sigma();
    let set = match side {
        Side::Right => GSet::new(sigma.clone(), mp.g().order(), Side::Right, |sg, s| {
            let (x, t) = bp.split(sg);
            mp.g().mul(mp.tri_r(s, x), t)
        })?,
        Side::Left => GSet::new(sigma.clone(), mp.f().order(), Side::Left, |sg, y| {
            let (x, s) = bp.split(sg);
            mp.f().mul(x, mp.tri(s, y))
        })?,
    };
    StandardComplex::from_gset(&set, top, true)
}

/// An `F`-complex regarded over `Σ = F ⋉ G` through the projection `(x, s) ↦ x`.
pub fn extend_f_resolution<C: PermComplex>(bp: &BicrossedProduct, res: C) -> Result<Inflated<C>, ComplexError> {
    if !bp.pair().is_left_trivial() {
        return Err(ComplexError::NotSemidirect);
    }
    let hom = bp.sigma().elements().map(|s| bp.split(s).0).collect();
    Inflated::new(res, bp.sigma(), hom)
}

/// `P ⊗ Q` with the diagonal action, after checking that every basis orbit is free.
pub fn tensor_total<P: PermComplex, Q: PermComplex>(p: P, q: Q) -> Result<TensorTotal<P, Q>, ComplexError> {
    let t = TensorTotal::new(p, q)?;
    for k in 0..=t.top_degree() {
        orbit_basis(&t, k, false)?;
    }
    Ok(t)
}

/// The completed truncated double complex through degree `top`.
pub fn truncated_double<P: PermComplex, Q: PermComplex>(p: P, q: Q, top: usize) -> Result<TruncatedDouble<P, Q>, ComplexError> {
    TruncatedDouble::new(p, q, top)
}

/// Tensor product of the periodic resolutions of the cyclic factors of
/// `abelian_group(orders)`, a free resolution of `ℤ` over that group.
pub fn cyclic_product_resolution(orders: &[usize], top: usize) -> Result<BoxedComplex, ComplexError> {
    let g = abelian_group(orders);
    if orders.is_empty() {
        let one = GSet::new(g, 1, Side::Left, |_, _| 0)?;
        return Ok(Box::new(StandardComplex::from_gset(&one, top, false)?));
    }
    let mut radix = vec![1usize; orders.len()];
    for i in (0..orders.len().saturating_sub(1)).rev() {
        radix[i] = radix[i + 1] * orders[i + 1];
    }
    let factor = |i: usize| -> Result<BoxedComplex, ComplexError> {
        let hom = g.elements().map(|a| (a / radix[i]) % orders[i]).collect();
        Ok(Box::new(Inflated::new(cyclic_resolution(orders[i], top)?, &g, hom)?))
    };
    let mut acc = factor(0)?;
    for i in 1..orders.len() {
        acc = Box::new(TensorTotal::new(acc, factor(i)?)?);
    }
    Ok(acc)
}
