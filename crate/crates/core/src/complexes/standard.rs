use crate::groups::{FiniteGroup, GSet, Side};

use super::perm::{collect_terms, PermComplex};
use super::ComplexError;

/// `ℤ[X^{k+1}]` with the diagonal action and the alternating face boundary, for a finite
/// left set `X`. The normalized variant keeps only tuples with no two consecutive entries
/// equal; for `X` a group acting on itself it is the normalized bar resolution.
#[derive(Clone, Debug)]
pub struct StandardComplex {
    group: FiniteGroup,
    m: usize,
    table: Vec<u32>,
    top: usize,
    normalized: bool,
    ranks: Vec<usize>,
}

impl StandardComplex {
    /// `left(σ, x) = σ·x` must be a left action on `0..m`.
    pub fn new(group: &FiniteGroup, m: usize, left: impl Fn(usize, usize) -> usize, top: usize, normalized: bool) -> Result<Self, ComplexError> {
        if m == 0 {
            return Err(ComplexError::Invalid("the set must be nonempty".into()));
        }
        let set = GSet::new(group.clone(), m, Side::Left, left)?;
        Self::from_gset(&set, top, normalized)
    }

    /// Right sets are turned into left sets via `σ·x = x·σ⁻¹`.
    pub fn from_gset(set: &GSet, top: usize, normalized: bool) -> Result<Self, ComplexError> {
        let group = set.group().clone();
        let m = set.size();
        let n = group.order();
        let mut table = vec![0u32; n * m];
        for s in 0..n {
            for x in 0..m {
                table[s * m + x] = match set.side() {
                    Side::Left => set.act(s, x),
                    Side::Right => set.act(group.inv(s), x),
                } as u32;
            }
        }
        let base = if normalized { m - 1 } else { m };
        let mut ranks = Vec::with_capacity(top + 1);
        for k in 0..=top {
            let r = (base as u128).checked_pow(k as u32).map(|p| p * m as u128);
            match r {
                Some(r) if r <= u32::MAX as u128 => ranks.push(r as usize),
                _ => return Err(ComplexError::SizeBound { degree: k, limit: u32::MAX as usize }),
            }
        }
        Ok(StandardComplex { group, m, table, top, normalized, ranks })
    }

    pub fn set_size(&self) -> usize {
        self.m
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    /// The tuple `(y_0, …, y_k)` of a basis element.
    pub fn decode(&self, deg: usize, mut b: usize) -> Vec<usize> {
        let mut out = vec![0; deg + 1];
        if self.normalized {
            let base = self.m - 1;
            let mut digits = vec![0; deg];
            for i in (0..deg).rev() {
                digits[i] = b % base;
                b /= base;
            }
            out[0] = b;
            for i in 0..deg {
                out[i + 1] = (out[i] + digits[i] + 1) % self.m;
            }
        } else {
            for i in (0..=deg).rev() {
                out[i] = b % self.m;
                b /= self.m;
            }
        }
        out
    }

    /// Index of a tuple; `None` for degenerate tuples in the normalized complex.
    pub fn encode(&self, y: &[usize]) -> Option<usize> {
        let mut b = y[0];
        if self.normalized {
            for w in y.windows(2) {
                let d = (w[1] + self.m - w[0]) % self.m;
                if d == 0 {
                    return None;
                }
                b = b * (self.m - 1) + d - 1;
            }
        } else {
            for &v in &y[1..] {
                b = b * self.m + v;
            }
        }
        Some(b)
    }
}

impl PermComplex for StandardComplex {
    fn group(&self) -> &FiniteGroup {
        &self.group
    }

    fn top_degree(&self) -> usize {
        self.top
    }

    fn rank(&self, deg: usize) -> usize {
        self.ranks[deg]
    }

    fn act(&self, deg: usize, sigma: usize, b: usize) -> usize {
        let row = &self.table[sigma * self.m..(sigma + 1) * self.m];
        let y: Vec<usize> = self.decode(deg, b).into_iter().map(|v| row[v] as usize).collect();
        self.encode(&y).expect("the action preserves nondegenerate tuples")
    }

    fn boundary(&self, deg: usize, b: usize) -> Vec<(usize, i64)> {
        let y = self.decode(deg, b);
        let mut out = Vec::with_capacity(deg + 1);
        for j in 0..=deg {
            let face: Vec<usize> = y.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, &v)| v).collect();
            if let Some(f) = self.encode(&face) {
                out.push((f, if j % 2 == 0 { 1 } else { -1 }));
            }
        }
        collect_terms(out)
    }

    fn augmentation(&self, _b: usize) -> Option<i64> {
        Some(1)
    }
}

/// A complex over `F` regarded over `Σ` through a homomorphism `Σ → F`.
pub struct Inflated<C> {
    inner: C,
    group: FiniteGroup,
    hom: Vec<usize>,
}

impl<C: PermComplex> Inflated<C> {
    pub fn new(inner: C, group: &FiniteGroup, hom: Vec<usize>) -> Result<Self, ComplexError> {
        let f = inner.group();
        if hom.len() != group.order() || hom.iter().any(|&v| v >= f.order()) {
            return Err(ComplexError::Invalid("homomorphism has the wrong shape".into()));
        }
        for a in group.elements() {
            for b in group.elements() {
                if hom[group.mul(a, b)] != f.mul(hom[a], hom[b]) {
                    return Err(ComplexError::Invalid(format!("not a homomorphism at ({a}, {b})")));
                }
            }
        }
        Ok(Inflated { inner, group: group.clone(), hom })
    }

    pub fn inner(&self) -> &C {
        &self.inner
    }
}

impl<C: PermComplex> PermComplex for Inflated<C> {
    fn group(&self) -> &FiniteGroup {
        &self.group
    }

    fn top_degree(&self) -> usize {
        self.inner.top_degree()
    }

    fn rank(&self, deg: usize) -> usize {
        self.inner.rank(deg)
    }

    fn act(&self, deg: usize, sigma: usize, b: usize) -> usize {
        self.inner.act(deg, self.hom[sigma], b)
    }

    fn boundary(&self, deg: usize, b: usize) -> Vec<(usize, i64)> {
        self.inner.boundary(deg, b)
    }

    fn augmentation(&self, b: usize) -> Option<i64> {
        self.inner.augmentation(b)
    }
}

fn same_group(a: &FiniteGroup, b: &FiniteGroup) -> Result<(), ComplexError> {
    if a.order() != b.order() || a.table() != b.table() {
        return Err(ComplexError::Invalid("factors are modules over different groups".into()));
    }
    Ok(())
}

/// Blocks `(p, q, offset)` of a total degree.
type Blocks = Vec<Vec<(usize, usize, usize)>>;

/// Total complex of `P ⊗ Q` with the diagonal action and `d(a⊗b) = ∂a⊗b + (−1)^{|a|} a⊗∂b`.
pub struct TensorTotal<P, Q> {
    p: P,
    q: Q,
    blocks: Blocks,
    ranks: Vec<usize>,
}

impl<P: PermComplex, Q: PermComplex> TensorTotal<P, Q> {
    pub fn new(p: P, q: Q) -> Result<Self, ComplexError> {
        same_group(p.group(), q.group())?;
        let top = p.top_degree().min(q.top_degree());
        let mut blocks = vec![];
        let mut ranks = vec![];
        for n in 0..=top {
            let mut off = 0usize;
            let mut bl = vec![];
            for a in 0..=n {
                bl.push((a, n - a, off));
                off = off
                    .checked_add(p.rank(a).checked_mul(q.rank(n - a)).ok_or(ComplexError::SizeBound { degree: n, limit: usize::MAX })?)
                    .ok_or(ComplexError::SizeBound { degree: n, limit: usize::MAX })?;
            }
            blocks.push(bl);
            ranks.push(off);
        }
        Ok(TensorTotal { p, q, blocks, ranks })
    }

    pub fn factors(&self) -> (&P, &Q) {
        (&self.p, &self.q)
    }

    /// Degree-`deg` basis index of `a ⊗ b` with `a ∈ P_i`.
    pub fn index(&self, deg: usize, i: usize, a: usize, b: usize) -> usize {
        let (_, j, off) = self.blocks[deg][i];
        off + a * self.q.rank(j) + b
    }

    /// `(i, a, b)` for a basis index of degree `deg`.
    pub fn split(&self, deg: usize, x: usize) -> (usize, usize, usize) {
        let bl = &self.blocks[deg];
        let k = bl.partition_point(|e| e.2 <= x) - 1;
        let (i, j, off) = bl[k];
        let r = x - off;
        (i, r / self.q.rank(j), r % self.q.rank(j))
    }
}

impl<P: PermComplex, Q: PermComplex> PermComplex for TensorTotal<P, Q> {
    fn group(&self) -> &FiniteGroup {
        self.p.group()
    }

    fn top_degree(&self) -> usize {
        self.ranks.len() - 1
    }

    fn rank(&self, deg: usize) -> usize {
        self.ranks[deg]
    }

    fn act(&self, deg: usize, sigma: usize, x: usize) -> usize {
        let (i, a, b) = self.split(deg, x);
        self.index(deg, i, self.p.act(i, sigma, a), self.q.act(deg - i, sigma, b))
    }

    fn boundary(&self, deg: usize, x: usize) -> Vec<(usize, i64)> {
        let (i, a, b) = self.split(deg, x);
        let j = deg - i;
        let mut out = vec![];
        if i >= 1 {
            for (a2, c) in self.p.boundary(i, a) {
                out.push((self.index(deg - 1, i - 1, a2, b), c));
            }
        }
        if j >= 1 {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            for (b2, c) in self.q.boundary(j, b) {
                out.push((self.index(deg - 1, i, a, b2), sign * c));
            }
        }
        collect_terms(out)
    }

    fn augmentation(&self, x: usize) -> Option<i64> {
        let (_, a, b) = self.split(0, x);
        Some(self.p.augmentation(a)? * self.q.augmentation(b)?)
    }
}

/// The completed truncated double complex: `R_0 = P_0 ⊗ Q_0`, `R_k = Tot(D)_{k−1}` for
/// `D^{i,j} = P_{i+1} ⊗ Q_{j+1}`, joined by `−∂₁ ⊗ ∂₁`.
///
/// Inside `D` the differential is `d(a⊗b) = ∂a⊗b + (−1)^{|a|} a⊗∂b`, with terms landing in
/// `P_0` or `Q_0` dropped.
pub struct TruncatedDouble<P, Q> {
    p: P,
    q: Q,
    blocks: Blocks,
    ranks: Vec<usize>,
}

impl<P: PermComplex, Q: PermComplex> TruncatedDouble<P, Q> {
    pub fn new(p: P, q: Q, top: usize) -> Result<Self, ComplexError> {
        same_group(p.group(), q.group())?;
        let avail = p.top_degree().min(q.top_degree());
        if top > avail {
            return Err(ComplexError::DegreeOutOfRange { requested: top, top: avail });
        }
        let overflow = || ComplexError::SizeBound { degree: top, limit: usize::MAX };
        let mut blocks = vec![vec![(0, 0, 0)]];
        let mut ranks = vec![p.rank(0) * q.rank(0)];
        for k in 1..=top {
            let mut off = 0usize;
            let mut bl = vec![];
            for a in 1..=k {
                let b = k + 1 - a;
                bl.push((a, b, off));
                off = p.rank(a).checked_mul(q.rank(b)).and_then(|r| r.checked_add(off)).ok_or_else(overflow)?;
            }
            blocks.push(bl);
            ranks.push(off);
        }
        Ok(TruncatedDouble { p, q, blocks, ranks })
    }

    pub fn factors(&self) -> (&P, &Q) {
        (&self.p, &self.q)
    }

    /// Basis index of `a ⊗ b` with `a ∈ P_i` in degree `deg` (`i = 0` only in degree 0).
    pub fn index(&self, deg: usize, i: usize, a: usize, b: usize) -> usize {
        let k = if deg == 0 { 0 } else { i - 1 };
        let (_, j, off) = self.blocks[deg][k];
        off + a * self.q.rank(j) + b
    }

    /// `(i, a, b)` with `a ∈ P_i` for a basis index of degree `deg`.
    pub fn split(&self, deg: usize, x: usize) -> (usize, usize, usize) {
        let bl = &self.blocks[deg];
        let k = bl.partition_point(|e| e.2 <= x) - 1;
        let (i, j, off) = bl[k];
        let r = x - off;
        (i, r / self.q.rank(j), r % self.q.rank(j))
    }
}

impl<P: PermComplex, Q: PermComplex> PermComplex for TruncatedDouble<P, Q> {
    fn group(&self) -> &FiniteGroup {
        self.p.group()
    }

    fn top_degree(&self) -> usize {
        self.ranks.len() - 1
    }

    fn rank(&self, deg: usize) -> usize {
        self.ranks[deg]
    }

    fn act(&self, deg: usize, sigma: usize, x: usize) -> usize {
        let (i, a, b) = self.split(deg, x);
        let j = if deg == 0 { 0 } else { deg + 1 - i };
        self.index(deg, i, self.p.act(i, sigma, a), self.q.act(j, sigma, b))
    }

    fn boundary(&self, deg: usize, x: usize) -> Vec<(usize, i64)> {
        let (i, a, b) = self.split(deg, x);
        let mut out = vec![];
        if deg == 1 {
            for (a2, c) in self.p.boundary(1, a) {
                for (b2, d) in self.q.boundary(1, b) {
                    out.push((self.index(0, 0, a2, b2), -c * d));
                }
            }
            return collect_terms(out);
        }
        let j = deg + 1 - i;
        if i >= 2 {
            for (a2, c) in self.p.boundary(i, a) {
                out.push((self.index(deg - 1, i - 1, a2, b), c));
            }
        }
        if j >= 2 {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            for (b2, c) in self.q.boundary(j, b) {
                out.push((self.index(deg - 1, i, a, b2), sign * c));
            }
        }
        collect_terms(out)
    }
}
