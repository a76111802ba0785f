use crate::exactlin::{IntMatrix, SparseMatrix};
use crate::groups::{cyclic_group, FiniteGroup, GSet};

use super::perm::{collect_terms, orbit_basis, OrbitBasis, PermComplex};
use super::standard::StandardComplex;
use super::ComplexError;

/// An element `Σ c_g g` of `ℤΣ`, sorted by group element with no zero coefficients.
pub type GroupRingElement = Vec<(usize, i64)>;

/// A map of free left `ℤΣ`-modules `ℤΣ^cols → ℤΣ^rows`, stored by columns: column `j` is the
/// image of the `j`-th basis vector as a list of `(row, g, c)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupRingMatrix {
    rows: usize,
    columns: Vec<Vec<(usize, usize, i64)>>,
}

fn normalize(mut v: Vec<(usize, usize, i64)>) -> Vec<(usize, usize, i64)> {
    v.sort_unstable_by_key(|e| (e.0, e.1));
    let mut out: Vec<(usize, usize, i64)> = Vec::with_capacity(v.len());
    for (r, g, c) in v {
        match out.last_mut() {
            Some(last) if (last.0, last.1) == (r, g) => last.2 += c,
            _ => out.push((r, g, c)),
        }
    }
    out.retain(|e| e.2 != 0);
    out
}

impl GroupRingMatrix {
    pub fn new(rows: usize, columns: Vec<Vec<(usize, usize, i64)>>) -> Self {
        GroupRingMatrix { rows, columns: columns.into_iter().map(normalize).collect() }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        GroupRingMatrix { rows, columns: vec![vec![]; cols] }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> &[(usize, usize, i64)] {
        &self.columns[j]
    }

    /// Entry `(i, j)` as a group ring element.
    pub fn entry(&self, i: usize, j: usize) -> GroupRingElement {
        self.columns[j].iter().filter(|e| e.0 == i).map(|e| (e.1, e.2)).collect()
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &GroupRingMatrix, group: &FiniteGroup) -> GroupRingMatrix {
        assert_eq!(self.ncols(), other.nrows());
        let columns = other
            .columns
            .iter()
            .map(|col| {
                let mut acc = vec![];
                for &(l, g, c) in col {
                    for &(m, h, d) in &self.columns[l] {
                        acc.push((m, group.mul(g, h), c * d));
                    }
                }
                acc
            })
            .collect();
        GroupRingMatrix::new(self.rows, columns)
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_empty())
    }

    /// The induced map on coinvariants, `g ↦ 1`.
    pub fn augment(&self) -> IntMatrix {
        let mut m = vec![vec![0i64; self.ncols()]; self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, _, c) in col {
                m[i][j] += c;
            }
        }
        IntMatrix::from_rows(self.ncols(), &m)
    }
}

/// How a module in a resolution is projective.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Projectivity {
    Free,
    /// Relatively projective with respect to the subgroup with these elements.
    Relative(Vec<usize>),
}

/// A complex of finitely generated free `ℤΣ`-modules `C_0 ← C_1 ← ⋯`, optionally augmented
/// to `ℤ` by sending every basis vector of `C_0` to 1.
#[derive(Clone, Debug)]
pub struct GroupRingComplex {
    group: FiniteGroup,
    ranks: Vec<usize>,
    /// `differentials[k]` is `∂_{k+1} : C_{k+1} → C_k`.
    differentials: Vec<GroupRingMatrix>,
    tags: Vec<Projectivity>,
    augmented: bool,
}

impl GroupRingComplex {
    /// Validates shapes and `∂∂ = 0` symbolically in the group ring, and `ε∂₁ = 0` when augmented.
    pub fn new(group: &FiniteGroup, ranks: Vec<usize>, differentials: Vec<GroupRingMatrix>, augmented: bool) -> Result<Self, ComplexError> {
        if differentials.len() + 1 != ranks.len() {
            return Err(ComplexError::Invalid("need one differential per positive degree".into()));
        }
        for (k, d) in differentials.iter().enumerate() {
            if d.nrows() != ranks[k] || d.ncols() != ranks[k + 1] {
                return Err(ComplexError::Invalid(format!("differential {} has the wrong shape", k + 1)));
            }
            if d.columns.iter().flatten().any(|&(r, g, _)| r >= ranks[k] || g >= group.order()) {
                return Err(ComplexError::Invalid(format!("differential {} has an entry out of range", k + 1)));
            }
        }
        for k in 1..differentials.len() {
            let dd = differentials[k - 1].compose(&differentials[k], group);
            if let Some(j) = dd.columns.iter().position(|c| !c.is_empty()) {
                return Err(ComplexError::NotAComplex { degree: k + 1, basis: j });
            }
        }
        if let Some(d1) = differentials.first().filter(|_| augmented) {
            for (j, col) in d1.columns.iter().enumerate() {
                if col.iter().map(|e| e.2).sum::<i64>() != 0 {
                    return Err(ComplexError::NotAComplex { degree: 1, basis: j });
                }
            }
        }
        let tags = vec![Projectivity::Free; ranks.len()];
        Ok(GroupRingComplex { group: group.clone(), ranks, differentials, tags, augmented })
    }

    pub fn with_tags(mut self, tags: Vec<Projectivity>) -> Self {
        assert_eq!(tags.len(), self.ranks.len());
        self.tags = tags;
        self
    }

    pub fn is_augmented(&self) -> bool {
        self.augmented
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// `∂_k : C_k → C_{k−1}` for `k ≥ 1`.
    pub fn differential(&self, k: usize) -> &GroupRingMatrix {
        &self.differentials[k - 1]
    }

    pub fn tags(&self) -> &[Projectivity] {
        &self.tags
    }

    /// Coinvariant integer complex: `∂_k ⊗_Σ ℤ` for `k = 1..=top`.
    pub fn coinvariants(&self) -> Vec<IntMatrix> {
        self.differentials.iter().map(|d| d.augment()).collect()
    }

    /// Coinvariant boundaries in the row convention used for cohomology: row `j` of the
    /// `k`-th matrix is `∂_{k+1} e_j` read in `C_k ⊗_Σ ℤ`.
    pub fn coinvariant_rows(&self, k: usize) -> SparseMatrix {
        let d = &self.differentials[k];
        let mut m = SparseMatrix::new(d.nrows());
        for col in &d.columns {
            m.push_row(col.iter().map(|&(i, _, c)| (i as u32, c)).collect());
        }
        m
    }

    /// The free complex obtained from a permutation complex with free orbits, using the
    /// smallest element of each orbit as a basis vector.
    pub fn from_perm<C: PermComplex + ?Sized>(c: &C) -> Result<(Self, Vec<OrbitBasis>), ComplexError> {
        let top = c.top_degree();
        let orbits: Vec<OrbitBasis> = (0..=top).map(|k| orbit_basis(c, k, true)).collect::<Result<_, _>>()?;
        let ranks: Vec<usize> = orbits.iter().map(|o| o.len()).collect();
        let mut diffs = vec![];
        for k in 1..=top {
            let lower = &orbits[k - 1];
            let columns = orbits[k]
                .reps
                .iter()
                .map(|&r| c.boundary(k, r).into_iter().map(|(b, x)| (lower.orbit_of[b] as usize, lower.element[b] as usize, x)).collect())
                .collect();
            diffs.push(GroupRingMatrix::new(ranks[k - 1], columns));
        }
        Ok((GroupRingComplex::new(c.group(), ranks, diffs, c.augmentation(0).is_some())?, orbits))
    }
}

impl PermComplex for GroupRingComplex {
    fn group(&self) -> &FiniteGroup {
        &self.group
    }

    fn top_degree(&self) -> usize {
        self.ranks.len() - 1
    }

    fn rank(&self, deg: usize) -> usize {
        self.ranks[deg] * self.group.order()
    }

    /// Basis index `k·|Σ| + g` stands for `g·e_k`.
    fn act(&self, _deg: usize, sigma: usize, b: usize) -> usize {
        let n = self.group.order();
        (b / n) * n + self.group.mul(sigma, b % n)
    }

    fn boundary(&self, deg: usize, b: usize) -> Vec<(usize, i64)> {
        let n = self.group.order();
        let (k, h) = (b / n, b % n);
        collect_terms(self.differentials[deg - 1].columns[k].iter().map(|&(i, g, c)| (i * n + self.group.mul(h, g), c)).collect())
    }

    fn augmentation(&self, _b: usize) -> Option<i64> {
        self.augmented.then_some(1)
    }
}

/// Largest ℤ-rank accepted for a single degree of a bar resolution.
pub const BAR_RANK_LIMIT: usize = 1 << 26;

/// The bar resolution of `ℤ` over `ℤG` through degree `top`, with basis `[g_1|…|g_k]`.
pub fn bar_resolution(g: &FiniteGroup, top: usize, normalized: bool) -> Result<GroupRingComplex, ComplexError> {
    let n = g.order();
    let base = if normalized { n - 1 } else { n };
    for k in 0..=top {
        let r = (base as u128).checked_pow(k as u32).map(|p| p * n as u128);
        if r.map_or(true, |r| r > BAR_RANK_LIMIT as u128) {
            return Err(ComplexError::SizeBound { degree: k, limit: BAR_RANK_LIMIT });
        }
    }
    let std = StandardComplex::from_gset(&GSet::regular(g), top, normalized)?;
    Ok(GroupRingComplex::from_perm(&std)?.0)
}

/// The periodic resolution of `ℤ` over `ℤ[ℤ/n]` with generator `t = 1`:
/// `∂_k = t − 1` for odd `k` and `N = 1 + t + ⋯ + t^{n−1}` for even `k`.
pub fn cyclic_resolution(n: usize, top: usize) -> Result<GroupRingComplex, ComplexError> {
    if n == 0 {
        return Err(ComplexError::Invalid("cyclic group of order 0".into()));
    }
    let g = cyclic_group(n);
    let diffs = (1..=top)
        .map(|k| {
            let col = if k % 2 == 1 { vec![(0, 1 % n, 1), (0, 0, -1)] } else { (0..n).map(|i| (0, i, 1)).collect() };
            GroupRingMatrix::new(1, vec![col])
        })
        .collect();
    GroupRingComplex::new(&g, vec![1; top + 1], diffs, true)
}
