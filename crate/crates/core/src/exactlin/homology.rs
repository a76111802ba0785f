use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::abgroup::{AbHom, FpAbGroup, FpPresentation};
use super::circle::{CircleElement, CircleVec};
use super::lattice::{integer_kernel, solve_integer};
use super::matrix::IntMatrix;
use super::sparse::{cokernel, rank, SparseMatrix};
use super::ExactError;

/// `ker g / im f` for `M →f N →g P`, with coordinate maps.
#[derive(Clone, Debug)]
pub struct Homology {
    kernel_basis: IntMatrix,
    pres: FpPresentation,
}

impl Homology {
    pub fn group(&self) -> &FpAbGroup {
        self.pres.group()
    }

    /// Coordinates of the class of `y ∈ ker g` (an ambient vector of `N`).
    pub fn class_of(&self, y: &[i64]) -> Option<Vec<i64>> {
        let yb: Vec<BigInt> = y.iter().map(|&v| BigInt::from(v)).collect();
        let z = solve_integer(&self.kernel_basis, &yb)?;
        Some(self.pres.reduce_big(&z))
    }

    /// An ambient vector of `N` in `ker g` representing the class with coordinates `c`.
    pub fn representative_of(&self, c: &[i64]) -> Vec<i64> {
        let z: Vec<BigInt> = self.pres.section(c).into_iter().map(BigInt::from).collect();
        self.kernel_basis.mul_vec(&z).iter().map(|v| v.to_i64().expect("representative exceeds i64")).collect()
    }
}

fn in_lattice(rel: &IntMatrix, v: &[BigInt]) -> bool {
    if rel.cols() == 0 {
        return v.iter().all(|x| x == &BigInt::from(0));
    }
    solve_integer(rel, v).is_some()
}

/// Homology of `M →f N →g P` where `M = ℤ^a/col(rel_m)` etc. and `f`, `g` are integer
/// matrices on ambient coordinates.
pub fn homology(
    f: &IntMatrix,
    g: &IntMatrix,
    rel_m: &IntMatrix,
    rel_n: &IntMatrix,
    rel_p: &IntMatrix,
) -> Result<Homology, ExactError> {
    let (a, b, c) = (rel_m.rows(), rel_n.rows(), rel_p.rows());
    if f.rows() != b || f.cols() != a || g.rows() != c || g.cols() != b {
        return Err(ExactError::Dimension(format!(
            "f is {}x{}, g is {}x{}, ambients {a},{b},{c}",
            f.rows(),
            f.cols(),
            g.rows(),
            g.cols()
        )));
    }
    let gf = g.mul(f);
    for j in 0..a {
        if !in_lattice(rel_p, &gf.column(j)) {
            return Err(ExactError::NotAComplex {
                index: j,
                image: gf.column(j).iter().map(|v| v.to_i64().unwrap_or(i64::MAX)).collect(),
            });
        }
    }
    // ker g = projection of ker [g | -rel_p]
    let mut aug = IntMatrix::zeros(c, b + rel_p.cols());
    for i in 0..c {
        for j in 0..b {
            aug.set(i, j, g.get(i, j).clone());
        }
        for j in 0..rel_p.cols() {
            aug.set(i, b + j, -rel_p.get(i, j).clone());
        }
    }
    let k = integer_kernel(&aug);
    let mut proj = IntMatrix::zeros(b, k.cols());
    for i in 0..b {
        for j in 0..k.cols() {
            proj.set(i, j, k.get(i, j).clone());
        }
    }
    let kernel_basis = super::lattice::column_span_basis(&proj);
    // im f + rel_n, expressed in kernel coordinates
    let img = f.hcat(rel_n);
    let kb = kernel_basis.cols();
    let mut rel = IntMatrix::zeros(kb, img.cols());
    for j in 0..img.cols() {
        let z = solve_integer(&kernel_basis, &img.column(j)).expect("image lies in the kernel");
        for i in 0..kb {
            rel.set(i, j, z[i].clone());
        }
    }
    Ok(Homology { kernel_basis, pres: FpPresentation::new(rel) })
}

/// Character group of `g`: the finite part (isomorphic to the torsion of `g`) and the number
/// of circle summands dual to the free part.
pub fn pontryagin_dual(g: &FpAbGroup) -> (FpAbGroup, usize) {
    (FpAbGroup::new(0, g.invariants().to_vec()), g.free_rank())
}

/// The transpose `χ ↦ χ∘f` between character groups of finite groups, with characters of
/// `ℤ/d` identified with `ℤ/d` via `e ↦ 1/d`.
pub fn dual_of_map(f: &AbHom) -> AbHom {
    let s = &f.source;
    let t = &f.target;
    assert!(s.is_finite() && t.is_finite(), "duals of infinite groups are not finitely generated");
    let cols = f.images();
    let images: Vec<Vec<i64>> = (0..t.len())
        .map(|k| {
            (0..s.len())
                .map(|j| {
                    let (ds, dt) = (s.modulus(j), t.modulus(k));
                    let num = cols[j][k] as i128 * ds as i128;
                    debug_assert_eq!(num % dt as i128, 0);
                    ((num / dt as i128).rem_euclid(ds as i128)) as i64
                })
                .collect()
        })
        .collect();
    AbHom::from_images(t.clone(), s.clone(), &images)
}

/// `(δf)[r] = Σ c · f[j]` over the sparse rows of `δ`.
pub fn coboundary(delta: &SparseMatrix, f: &CircleVec) -> CircleVec {
    assert_eq!(delta.ncols(), f.len());
    let d = f.den() as i128;
    let vals = (0..delta.nrows())
        .map(|r| {
            let acc = delta.row(r).iter().fold(0i128, |s, &(j, c)| (s + f.numerators()[j as usize] as i128 * c as i128).rem_euclid(d));
            acc as i64
        })
        .collect();
    CircleVec::from_numerators(vals, f.den())
}

/// `H^k(C; ℚ/ℤ)` for a cochain complex of free ℤ-modules, via the dual of integral homology.
#[derive(Clone, Debug)]
pub struct CircleCohomology {
    group: FpAbGroup,
    circle_rank: usize,
    dim: usize,
    generators: Vec<Vec<(usize, i64)>>,
    functionals: Option<Vec<Vec<i64>>>,
}

impl CircleCohomology {
    /// `prev: C^{k-1} → C^k` (absent for `k = 0`) and `next: C^k → C^{k+1}`, row-major sparse.
    pub fn compute(prev: Option<&SparseMatrix>, next: &SparseMatrix, representatives: bool) -> Result<Self, ExactError> {
        let dim = next.ncols();
        if let Some(p) = prev {
            if p.nrows() != dim {
                return Err(ExactError::Dimension(format!("{} rows into degree of dimension {dim}", p.nrows())));
            }
        }
        let ck = cokernel(next, representatives)?;
        let prev_rank = match prev {
            Some(p) => rank(p)?,
            None => 0,
        };
        Ok(CircleCohomology {
            group: FpAbGroup::new(0, ck.torsion.clone()),
            circle_rank: dim - ck.rank - prev_rank,
            dim,
            generators: ck.generators,
            functionals: ck.functionals,
        })
    }

    /// Finite part, in invariant-factor form.
    pub fn group(&self) -> &FpAbGroup {
        &self.group
    }

    /// Number of `ℚ/ℤ` summands.
    pub fn circle_rank(&self) -> usize {
        self.circle_rank
    }

    pub fn cochain_dim(&self) -> usize {
        self.dim
    }

    /// Coordinates of the class of a cocycle, or `None` if `f` pairs badly with the cycles.
    pub fn class_of(&self, f: &CircleVec) -> Option<Vec<i64>> {
        assert_eq!(f.len(), self.dim);
        self.generators
            .iter()
            .zip(self.group.invariants())
            .map(|(g, &d)| {
                let v: CircleElement = f.pair(g);
                if d % v.den() != 0 {
                    return None;
                }
                Some(v.numerator_over(d))
            })
            .collect()
    }

    /// A cocycle in the class with coordinates `c` (requires `representatives = true`).
    pub fn representative(&self, c: &[i64]) -> CircleVec {
        let funcs = self.functionals.as_ref().expect("computed without representatives");
        let inv = self.group.invariants();
        assert_eq!(c.len(), inv.len());
        let den = inv.iter().fold(1i64, |a, &d| a.lcm(&d));
        let mut vals = vec![0i128; self.dim];
        for (k, &d) in inv.iter().enumerate() {
            let ck = c[k].rem_euclid(d) as i128;
            if ck == 0 {
                continue;
            }
            let scale = ck * (den / d) as i128;
            for (v, &phi) in vals.iter_mut().zip(&funcs[k]) {
                *v = (*v + scale * phi as i128).rem_euclid(den as i128);
            }
        }
        CircleVec::from_numerators(vals.into_iter().map(|v| v as i64).collect(), den)
    }

    /// A cycle of the dual chain complex on which the `k`-th coordinate is read.
    pub fn cycle(&self, k: usize) -> &[(usize, i64)] {
        &self.generators[k]
    }
}
