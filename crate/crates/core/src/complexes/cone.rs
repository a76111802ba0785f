use crate::groups::{FiniteGroup, GSet, Side};

use super::perm::PermComplex;
use super::ComplexError;

/// `C ⊗ ℤY` for a finite left set `Y`, with the diagonal action and `∂(c⊗y) = ∂c⊗y`.
pub struct SetTensor<C> {
    inner: C,
    table: Vec<u32>,
    m: usize,
}

impl<C: PermComplex> SetTensor<C> {
    /// `left(σ, y)` must be a left action of the group of `inner` on `0..m`.
    pub fn new(inner: C, m: usize, left: impl Fn(usize, usize) -> usize) -> Result<Self, ComplexError> {
        let set = GSet::new(inner.group().clone(), m, Side::Left, left)?;
        let n = inner.group().order();
        let table = (0..n * m).map(|k| set.act(k / m, k % m) as u32).collect();
        Ok(SetTensor { inner, table, m })
    }

    pub fn inner(&self) -> &C {
        &self.inner
    }

    pub fn set_size(&self) -> usize {
        self.m
    }

    /// `(c, y)` for a basis index.
    pub fn split(&self, b: usize) -> (usize, usize) {
        (b / self.m, b % self.m)
    }
}

impl<C: PermComplex> PermComplex for SetTensor<C> {
    fn group(&self) -> &FiniteGroup {
        self.inner.group()
    }

    fn top_degree(&self) -> usize {
        self.inner.top_degree()
    }

    fn rank(&self, deg: usize) -> usize {
        self.inner.rank(deg) * self.m
    }

    fn act(&self, deg: usize, sigma: usize, b: usize) -> usize {
        let (c, y) = self.split(b);
        self.inner.act(deg, sigma, c) * self.m + self.table[sigma * self.m + y] as usize
    }

    fn boundary(&self, deg: usize, b: usize) -> Vec<(usize, i64)> {
        let (c, y) = self.split(b);
        self.inner.boundary(deg, c).into_iter().map(|(c2, k)| (c2 * self.m + y, k)).collect()
    }

    fn augmentation(&self, b: usize) -> Option<i64> {
        self.inner.augmentation(b / self.m)
    }
}

/// Mapping cone of a chain map `φ : C → D` sending basis elements to basis elements:
/// `Cone_n = C_{n−1} ⊕ D_n` with `∂(c, d) = (−∂c, φc + ∂d)`.
///
/// Basis indices of degree `n` list `C_{n−1}` first.
pub struct MappingCone<C, D> {
    c: C,
    d: D,
    map: Box<dyn Fn(usize, usize) -> usize + Send + Sync>,
}

impl<C: PermComplex, D: PermComplex> MappingCone<C, D> {
    /// `map(deg, b)` is the image of the basis element `b` of `C_deg`.
    pub fn new(c: C, d: D, map: impl Fn(usize, usize) -> usize + Send + Sync + 'static) -> Result<Self, ComplexError> {
        if c.group().table() != d.group().table() {
            return Err(ComplexError::Invalid("complexes over different groups".into()));
        }
        Ok(MappingCone { c, d, map: Box::new(map) })
    }

    pub fn source(&self) -> &C {
        &self.c
    }

    pub fn target(&self) -> &D {
        &self.d
    }

    /// Image of a basis element of `C_deg` in `D_deg`.
    pub fn apply(&self, deg: usize, b: usize) -> usize {
        (self.map)(deg, b)
    }

    fn c_rank(&self, deg: usize) -> usize {
        if deg == 0 {
            0
        } else {
            self.c.rank(deg - 1)
        }
    }
}

impl<C: PermComplex, D: PermComplex> PermComplex for MappingCone<C, D> {
    fn group(&self) -> &FiniteGroup {
        self.d.group()
    }

    fn top_degree(&self) -> usize {
        self.d.top_degree().min(self.c.top_degree() + 1)
    }

    fn rank(&self, deg: usize) -> usize {
        self.c_rank(deg) + self.d.rank(deg)
    }

    fn act(&self, deg: usize, sigma: usize, b: usize) -> usize {
        let off = self.c_rank(deg);
        if b < off {
            self.c.act(deg - 1, sigma, b)
        } else {
            off + self.d.act(deg, sigma, b - off)
        }
    }

    fn boundary(&self, deg: usize, b: usize) -> Vec<(usize, i64)> {
        if deg == 0 {
            return vec![];
        }
        let off = self.c_rank(deg);
        let low = self.c_rank(deg - 1);
        if b < off {
            let mut out: Vec<(usize, i64)> = if deg >= 2 { self.c.boundary(deg - 1, b).into_iter().map(|(x, k)| (x, -k)).collect() } else { vec![] };
            out.push((low + (self.map)(deg - 1, b), 1));
            out
        } else {
            self.d.boundary(deg, b - off).into_iter().map(|(x, k)| (low + x, k)).collect()
        }
    }
}
