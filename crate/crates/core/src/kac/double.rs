use crate::cohomology::{Tuples, SPARSE_LIMIT};
use crate::exactlin::{CircleCohomology, SparseMatrix};
use crate::matched::MatchedPair;

use super::KacError;

/// The double complex `Map₊(G^{q+1} × F^{p+1}, ℚ/ℤ)` of a matched pair.
///
/// A cochain at `(p, q)` is a vector over pairs of non-identity tuples `(s_{q+1}, …, s_1)` and
/// `(x_1, …, x_{p+1})`, stored at `s·(|F|−1)^{p+1} + x` with both tuples in [`Tuples`] order.
/// [`vertical`](Self::vertical) and [`horizontal`](Self::horizontal) are the raw differentials;
/// they commute, and the total differential is `d_h + (−1)^{p+1} d_v`.
#[derive(Clone, Debug)]
pub struct KacComplex {
    mp: MatchedPair,
    p_max: usize,
    q_max: usize,
    total_max: usize,
    tf: Tuples,
    tg: Tuples,
}

impl KacComplex {
    pub fn new(mp: &MatchedPair, p_max: usize, q_max: usize) -> Result<Self, KacError> {
        Self::build(mp, p_max, q_max, p_max + q_max)
    }

    /// Only the bidegrees with `p + q ≤ n`, enough for the total differential out of degree `n − 1`.
    pub fn up_to_total(mp: &MatchedPair, n: usize) -> Result<Self, KacError> {
        Self::build(mp, n, n, n)
    }

    fn build(mp: &MatchedPair, p_max: usize, q_max: usize, total_max: usize) -> Result<Self, KacError> {
        let k = KacComplex { mp: mp.clone(), p_max, q_max, total_max, tf: Tuples::new(mp.f().order()), tg: Tuples::new(mp.g().order()) };
        for p in 0..=p_max {
            for q in (0..=q_max).filter(|q| p + q <= total_max) {
                let size = k.checked_rank(p, q).unwrap_or(usize::MAX);
                if size > SPARSE_LIMIT {
                    return Err(KacError::SizeBound { what: format!("bidegree ({p}, {q})"), size, limit: SPARSE_LIMIT });
                }
            }
        }
        Ok(k)
    }

    pub fn pair(&self) -> &MatchedPair {
        &self.mp
    }

    pub fn p_max(&self) -> usize {
        self.p_max
    }

    pub fn q_max(&self) -> usize {
        self.q_max
    }

    fn checked_rank(&self, p: usize, q: usize) -> Option<usize> {
        let nf = self.mp.f().order() - 1;
        let ng = self.mp.g().order() - 1;
        ng.checked_pow(q as u32 + 1)?.checked_mul(nf.checked_pow(p as u32 + 1)?)
    }

    pub fn rank(&self, p: usize, q: usize) -> usize {
        self.checked_rank(p, q).expect("checked at construction")
    }

    pub fn index(&self, s: &[usize], x: &[usize]) -> Option<usize> {
        Some(self.tg.encode(s)? * self.tf.count(x.len()) + self.tf.encode(x)?)
    }

    /// `(s_{q+1}, …, s_1)` and `(x_1, …, x_{p+1})` of a basis index.
    pub fn decode(&self, p: usize, q: usize, i: usize) -> (Vec<usize>, Vec<usize>) {
        let nx = self.tf.count(p + 1);
        (self.tg.decode(q + 1, i / nx), self.tf.decode(p + 1, i % nx))
    }

    /// `s ▷ (x_1, …, x_n) = (s▷x_1, (s◁x_1)▷x_2, …)`.
    pub fn act_left(&self, s: usize, x: &[usize]) -> Vec<usize> {
        let mut t = s;
        x.iter()
            .map(|&xi| {
                let y = self.mp.tri(t, xi);
                t = self.mp.tri_r(t, xi);
                y
            })
            .collect()
    }

    /// `(s_{q}, …, s_1) ◁ x = (s_q ◁ (s_{q−1}⋯s_1 ▷ x), …, s_1 ◁ x)`.
    pub fn act_right(&self, s: &[usize], x: usize) -> Vec<usize> {
        let mut y = x;
        let mut out = s.to_vec();
        for j in (0..s.len()).rev() {
            out[j] = self.mp.tri_r(s[j], y);
            y = self.mp.tri(s[j], y);
        }
        out
    }

    fn check_bidegree(&self, p: usize, q: usize) -> Result<(), KacError> {
        if p > self.p_max || q > self.q_max || p + q > self.total_max {
            return Err(KacError::Invalid(format!("bidegree ({p}, {q}) is not in the complex")));
        }
        Ok(())
    }

    /// `d_v : (p, q) → (p, q+1)`.
    pub fn vertical(&self, p: usize, q: usize) -> Result<SparseMatrix, KacError> {
        self.check_bidegree(p, q + 1)?;
        let g = self.mp.g();
        let mut m = SparseMatrix::new(self.rank(p, q));
        for r in 0..self.rank(p, q + 1) {
            let (s, x) = self.decode(p, q + 1, r);
            let n = q + 1;
            let mut row = vec![];
            let s1 = s[n];
            if let Some(c) = self.index(&s[..n], &self.act_left(s1, &x)) {
                row.push((c as u32, 1));
            }
            for i in 0..n {
                let mut t = s[..i].to_vec();
                t.push(g.mul(s[i], s[i + 1]));
                t.extend_from_slice(&s[i + 2..]);
                if let Some(c) = self.index(&t, &x) {
                    row.push((c as u32, if (n - i) % 2 == 0 { 1 } else { -1 }));
                }
            }
            if let Some(c) = self.index(&s[1..], &x) {
                row.push((c as u32, if (n + 1) % 2 == 0 { 1 } else { -1 }));
            }
            m.push_row(row);
        }
        Ok(m)
    }

    /// `d_h : (p, q) → (p+1, q)`.
    pub fn horizontal(&self, p: usize, q: usize) -> Result<SparseMatrix, KacError> {
        self.check_bidegree(p + 1, q)?;
        let f = self.mp.f();
        let mut m = SparseMatrix::new(self.rank(p, q));
        for r in 0..self.rank(p + 1, q) {
            let (s, x) = self.decode(p + 1, q, r);
            let n = p + 1;
            let mut row = vec![];
            if let Some(c) = self.index(&self.act_right(&s, x[0]), &x[1..]) {
                row.push((c as u32, 1));
            }
            for i in 0..n {
                let mut t = x[..i].to_vec();
                t.push(f.mul(x[i], x[i + 1]));
                t.extend_from_slice(&x[i + 2..]);
                if let Some(c) = self.index(&s, &t) {
                    row.push((c as u32, if i % 2 == 0 { -1 } else { 1 }));
                }
            }
            if let Some(c) = self.index(&s, &x[..n]) {
                row.push((c as u32, if (n + 1) % 2 == 0 { 1 } else { -1 }));
            }
            m.push_row(row);
        }
        Ok(m)
    }

    /// Blocks `(p, q, offset)` of total degree `n`, by increasing `p`.
    pub fn blocks(&self, n: usize) -> Vec<(usize, usize, usize)> {
        let mut off = 0;
        (0..=n)
            .map(|p| {
                let b = (p, n - p, off);
                off += self.rank(p, n - p);
                b
            })
            .collect()
    }

    pub fn total_rank(&self, n: usize) -> usize {
        (0..=n).map(|p| self.rank(p, n - p)).sum()
    }

    /// `d : Tot^n → Tot^{n+1}`.
    pub fn total_coboundary(&self, n: usize) -> Result<SparseMatrix, KacError> {
        if n + 1 > self.p_max || n + 1 > self.q_max || n + 1 > self.total_max {
            return Err(KacError::Invalid(format!("total degree {} needs bidegrees up to ({0}, {0})", n + 1)));
        }
        let lower = self.blocks(n);
        let mut m = SparseMatrix::new(self.total_rank(n));
        for (p, q, _) in self.blocks(n + 1) {
            let h = if p >= 1 { Some((self.horizontal(p - 1, q)?, lower[p - 1].2)) } else { None };
            let v = if q >= 1 { Some((self.vertical(p, q - 1)?, lower[p].2)) } else { None };
            let sign = if p % 2 == 0 { -1 } else { 1 };
            for r in 0..self.rank(p, q) {
                let mut row = vec![];
                if let Some((h, off)) = &h {
                    row.extend(h.row(r).iter().map(|&(c, k)| (c + *off as u32, k)));
                }
                if let Some((v, off)) = &v {
                    row.extend(v.row(r).iter().map(|&(c, k)| (c + *off as u32, sign * k)));
                }
                m.push_row(row);
            }
        }
        Ok(m)
    }

    /// `H^n(Tot)`; `H¹` is `Opext` and `H²` is `H⁴_𝒜`.
    pub fn cohomology(&self, n: usize, representatives: bool) -> Result<CircleCohomology, KacError> {
        let next = self.total_coboundary(n)?;
        let prev = if n >= 1 { Some(self.total_coboundary(n - 1)?) } else { None };
        Ok(CircleCohomology::compute(prev.as_ref(), &next, representatives)?)
    }

    /// `d_v² = 0`, `d_h² = 0` and `d_h d_v = d_v d_h` on every bidegree that fits.
    pub fn check(&self) -> Result<(), KacError> {
        let fail = |what: &str, p: usize, q: usize| Err(KacError::Invalid(format!("{what} fails at ({p}, {q})")));
        for p in 0..=self.p_max {
            for q in (0..=self.q_max).filter(|q| p + q + 2 <= self.total_max) {
                if q + 2 <= self.q_max && !self.vertical(p, q + 1)?.mul(&self.vertical(p, q)?).is_zero() {
                    return fail("d_v² = 0", p, q);
                }
                if p + 2 <= self.p_max && !self.horizontal(p + 1, q)?.mul(&self.horizontal(p, q)?).is_zero() {
                    return fail("d_h² = 0", p, q);
                }
                if p < self.p_max && q < self.q_max {
                    let hv = self.horizontal(p, q + 1)?.mul(&self.vertical(p, q)?);
                    let vh = self.vertical(p + 1, q)?.mul(&self.horizontal(p, q)?);
                    if (0..hv.nrows()).any(|r| hv.row(r) != vh.row(r)) {
                        return fail("d_h d_v = d_v d_h", p, q);
                    }
                }
            }
        }
        Ok(())
    }
}
