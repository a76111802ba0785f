use crate::exactlin::sparse::cokernel;
use crate::exactlin::{CircleCohomology, FpAbGroup, SparseMatrix};
use crate::groups::FiniteGroup;

use super::ComplexError;

/// A bounded chain complex of free abelian groups whose bases are permuted by a left action
/// of a finite group commuting with the differentials.
///
/// Degrees run `0..=top_degree()`; `boundary(k, b)` is only called for `k ≥ 1`.
pub trait PermComplex {
    fn group(&self) -> &FiniteGroup;
    fn top_degree(&self) -> usize;
    fn rank(&self, deg: usize) -> usize;
    fn act(&self, deg: usize, sigma: usize, b: usize) -> usize;
    fn boundary(&self, deg: usize, b: usize) -> Vec<(usize, i64)>;
    /// Augmentation to ℤ in degree 0, if the complex is augmented.
    fn augmentation(&self, _b: usize) -> Option<i64> {
        None
    }
}

/// Merges duplicate basis indices and drops zero coefficients.
pub(crate) fn collect_terms(mut v: Vec<(usize, i64)>) -> Vec<(usize, i64)> {
    v.sort_unstable_by_key(|e| e.0);
    let mut out: Vec<(usize, i64)> = Vec::with_capacity(v.len());
    for (b, c) in v {
        match out.last_mut() {
            Some(last) if last.0 == b => last.1 += c,
            _ => out.push((b, c)),
        }
    }
    out.retain(|e| e.1 != 0);
    out
}

/// Checks `∂∂ = 0` in every degree and `ε∂ = 0` when augmented.
pub fn check_d_squared<C: PermComplex + ?Sized>(c: &C) -> Result<(), ComplexError> {
    for deg in 2..=c.top_degree() {
        for b in 0..c.rank(deg) {
            let mut acc = vec![];
            for (b1, c1) in c.boundary(deg, b) {
                for (b2, c2) in c.boundary(deg - 1, b1) {
                    acc.push((b2, c1 * c2));
                }
            }
            if !collect_terms(acc).is_empty() {
                return Err(ComplexError::NotAComplex { degree: deg, basis: b });
            }
        }
    }
    if c.top_degree() >= 1 && c.augmentation(0).is_some() {
        for b in 0..c.rank(1) {
            let s: i64 = c.boundary(1, b).iter().map(|&(b0, k)| k * c.augmentation(b0).unwrap()).sum();
            if s != 0 {
                return Err(ComplexError::NotAComplex { degree: 1, basis: b });
            }
        }
    }
    Ok(())
}

/// Checks `∂(σ·b) = σ·∂b` for the listed group elements (all of them when `None`).
pub fn check_equivariance<C: PermComplex + ?Sized>(c: &C, elements: Option<&[usize]>) -> Result<(), ComplexError> {
    let all: Vec<usize> = c.group().elements().collect();
    let elements = elements.unwrap_or(&all);
    for deg in 1..=c.top_degree() {
        for b in 0..c.rank(deg) {
            let db = c.boundary(deg, b);
            for &s in elements {
                let lhs = collect_terms(c.boundary(deg, c.act(deg, s, b)));
                let rhs = collect_terms(db.iter().map(|&(b1, k)| (c.act(deg - 1, s, b1), k)).collect());
                if lhs != rhs {
                    return Err(ComplexError::NotEquivariant { degree: deg, basis: b, element: s });
                }
            }
        }
    }
    Ok(())
}

/// The integer boundary `∂_deg` as rows (one per basis element of degree `deg`).
pub fn boundary_matrix<C: PermComplex + ?Sized>(c: &C, deg: usize) -> SparseMatrix {
    assert!(deg >= 1);
    let mut m = SparseMatrix::new(c.rank(deg - 1));
    for b in 0..c.rank(deg) {
        m.push_row(c.boundary(deg, b).into_iter().map(|(i, k)| (i as u32, k)).collect());
    }
    m
}

fn augmentation_matrix<C: PermComplex + ?Sized>(c: &C) -> SparseMatrix {
    // one row per degree-0 basis element into a single column
    let mut m = SparseMatrix::new(1);
    for b in 0..c.rank(0) {
        m.push_row(vec![(0, c.augmentation(b).expect("augmented complex"))]);
    }
    m
}

/// Integral homology `H_deg` of the underlying complex of free abelian groups, with the
/// augmentation appended when present (so an exact resolution has all homology zero).
pub fn integral_homology<C: PermComplex + ?Sized>(c: &C, deg: usize) -> Result<FpAbGroup, ComplexError> {
    assert!(deg < c.top_degree(), "homology in degree {deg} needs degree {}", deg + 1);
    let next = boundary_matrix(c, deg + 1);
    let ck = cokernel(&next, false)?;
    let prev_rank = if deg >= 1 {
        cokernel(&boundary_matrix(c, deg), false)?.rank
    } else if c.augmentation(0).is_some() {
        cokernel(&augmentation_matrix(c), false)?.rank
    } else {
        0
    };
    Ok(FpAbGroup::new(c.rank(deg) - ck.rank - prev_rank, ck.torsion))
}

/// Whether the (augmented) complex is exact in degrees `0..top_degree()`.
pub fn is_exact_through<C: PermComplex + ?Sized>(c: &C, last: usize) -> Result<bool, ComplexError> {
    for d in 0..=last.min(c.top_degree().saturating_sub(1)) {
        if !integral_homology(c, d)?.is_trivial() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Decomposition of one degree's basis into group orbits, each required to be free.
#[derive(Clone, Debug)]
pub struct OrbitBasis {
    /// Orbit index of each basis element (empty when only representatives were computed).
    pub orbit_of: Vec<u32>,
    /// `σ` with `b = σ·rep(orbit_of[b])` (empty when only representatives were computed).
    pub element: Vec<u32>,
    /// Representative of each orbit, in increasing order.
    pub reps: Vec<usize>,
}

impl OrbitBasis {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }
}

/// Orbits of the basis in degree `deg`; fails unless every orbit is free.
pub fn orbit_basis<C: PermComplex + ?Sized>(c: &C, deg: usize, full: bool) -> Result<OrbitBasis, ComplexError> {
    let n = c.rank(deg);
    let order = c.group().order();
    if n % order != 0 {
        return Err(ComplexError::BasisNotFree { degree: deg, basis: 0, orbit_size: 0 });
    }
    let mut seen = vec![false; n];
    let (mut orbit_of, mut element) = if full { (vec![0u32; n], vec![0u32; n]) } else { (vec![], vec![]) };
    let mut reps = Vec::with_capacity(n / order);
    for b in 0..n {
        if seen[b] {
            continue;
        }
        let id = reps.len() as u32;
        reps.push(b);
        for s in 0..order {
            let t = c.act(deg, s, b);
            if seen[t] {
                return Err(ComplexError::BasisNotFree { degree: deg, basis: b, orbit_size: s });
            }
            seen[t] = true;
            if full {
                orbit_of[t] = id;
                element[t] = s as u32;
            }
        }
    }
    Ok(OrbitBasis { orbit_of, element, reps })
}

/// The coboundary `Hom_Σ(C_{deg−1}, A) → Hom_Σ(C_deg, A)` for trivial `A`, as rows indexed by
/// the orbits of degree `deg` reading orbits of degree `deg − 1`.
pub fn coinvariant_coboundary<C: PermComplex + ?Sized>(c: &C, deg: usize, upper: &OrbitBasis, lower: &OrbitBasis) -> SparseMatrix {
    assert!(!lower.orbit_of.is_empty() || lower.is_empty(), "lower degree needs full orbit data");
    let mut m = SparseMatrix::new(lower.len());
    for &r in &upper.reps {
        m.push_row(c.boundary(deg, r).into_iter().map(|(b, k)| (lower.orbit_of[b], k)).collect());
    }
    m
}

/// `H^k(Hom_Σ(C, ℚ/ℤ))` for a complex of free modules with trivial coefficients.
pub fn coinvariant_cohomology<C: PermComplex + ?Sized>(c: &C, k: usize, representatives: bool) -> Result<CircleCohomology, ComplexError> {
    if k + 1 > c.top_degree() {
        return Err(ComplexError::DegreeOutOfRange { requested: k + 1, top: c.top_degree() });
    }
    let cur = orbit_basis(c, k, true)?;
    let next_orbits = orbit_basis(c, k + 1, false)?;
    let next = coinvariant_coboundary(c, k + 1, &next_orbits, &cur);
    let prev = if k >= 1 {
        let lower = orbit_basis(c, k - 1, true)?;
        Some(coinvariant_coboundary(c, k, &cur, &lower))
    } else {
        None
    };
    Ok(CircleCohomology::compute(prev.as_ref(), &next, representatives)?)
}
