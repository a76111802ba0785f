use num_bigint::BigInt;

use crate::exactlin::{IntMatrix, SparseMatrix};
use crate::groups::{FiniteGroup, GModule};

/// Normalized tuples `(g_1, …, g_k)` with every `g_i ≠ e`, indexed in mixed radix with `g_1`
/// most significant. The identity of every group here is element 0.
#[derive(Clone, Copy, Debug)]
pub struct Tuples {
    base: usize,
}

impl Tuples {
    pub fn new(order: usize) -> Self {
        Tuples { base: order - 1 }
    }

    pub fn count(&self, k: usize) -> usize {
        self.base.pow(k as u32)
    }

    pub fn decode(&self, k: usize, mut idx: usize) -> Vec<usize> {
        let mut out = vec![0; k];
        for i in (0..k).rev() {
            out[i] = idx % self.base + 1;
            idx /= self.base;
        }
        out
    }

    /// `None` when some entry is the identity.
    pub fn encode(&self, t: &[usize]) -> Option<usize> {
        let mut idx = 0;
        for &g in t {
            if g == 0 {
                return None;
            }
            idx = idx * self.base + g - 1;
        }
        Some(idx)
    }
}

/// Terms `(sign, tuple index)` of the inhomogeneous coboundary of the `k`-cochain evaluated at
/// a `(k+1)`-tuple, together with the first element whose action applies to the leading term.
fn faces(g: &FiniteGroup, t: &Tuples, tuple: &[usize]) -> (usize, Vec<(i64, usize, bool)>) {
    let k = tuple.len() - 1;
    let mut out = Vec::with_capacity(k + 2);
    if let Some(i) = t.encode(&tuple[1..]) {
        out.push((1, i, true));
    }
    for i in 0..k {
        let mut f = tuple[..i].to_vec();
        f.push(g.mul(tuple[i], tuple[i + 1]));
        f.extend_from_slice(&tuple[i + 2..]);
        if let Some(j) = t.encode(&f) {
            out.push((if i % 2 == 0 { -1 } else { 1 }, j, false));
        }
    }
    if let Some(j) = t.encode(&tuple[..k]) {
        out.push((if k % 2 == 0 { -1 } else { 1 }, j, false));
    }
    (tuple[0], out)
}

/// `δ : C^k(G, A) → C^{k+1}(G, A)` for trivial `A`, as rows over the `(k+1)`-tuples.
pub fn trivial_coboundary(g: &FiniteGroup, k: usize) -> SparseMatrix {
    let t = Tuples::new(g.order());
    let mut m = SparseMatrix::new(t.count(k));
    for r in 0..t.count(k + 1) {
        let (_, fs) = faces(g, &t, &t.decode(k + 1, r));
        m.push_row(fs.into_iter().map(|(s, j, _)| (j as u32, s)).collect());
    }
    m
}

/// `δ : C^k(G, M) → C^{k+1}(G, M)` on ambient coordinates `(tuple, component)` for the
/// left action `(δf)(g_1, …) = g_1·f(g_2, …) + Σ ± f(…, g_i g_{i+1}, …) ± f(g_1, …, g_k)`.
pub fn module_coboundary(m: &GModule, k: usize) -> IntMatrix {
    let g = m.group();
    let t = Tuples::new(g.order());
    let r = m.dim();
    let mut out = IntMatrix::zeros(t.count(k + 1) * r, t.count(k) * r);
    for row in 0..t.count(k + 1) {
        let (g1, fs) = faces(g, &t, &t.decode(k + 1, row));
        for (s, j, acted) in fs {
            for a in 0..r {
                for b in 0..r {
                    let coeff = if acted { m.action(g1)[a][b] } else { i64::from(a == b) };
                    if coeff != 0 {
                        let cur = out.get_i64(row * r + a, j * r + b);
                        out.set(row * r + a, j * r + b, (cur + s * coeff).into());
                    }
                }
            }
        }
    }
    out
}

/// Relations `diag(m_i)` repeated over the `k`-tuples.
pub fn module_relations(m: &GModule, k: usize) -> IntMatrix {
    let t = Tuples::new(m.group().order());
    let mods = m.moduli();
    let n = t.count(k) * mods.len();
    let diag: Vec<BigInt> = (0..n).map(|i| mods[i % mods.len()].into()).collect();
    IntMatrix::diagonal(n, n, &diag)
}

/// `δ : C^k(G, ℤ) → C^{k+1}(G, ℤ)` as a dense integer matrix.
pub fn integral_coboundary(g: &FiniteGroup, k: usize) -> IntMatrix {
    let sp = trivial_coboundary(g, k);
    let mut out = IntMatrix::zeros(sp.nrows(), sp.ncols());
    for i in 0..sp.nrows() {
        for &(j, v) in sp.row(i) {
            out.set(i, j as usize, v.into());
        }
    }
    out
}
