//! Sparse integer elimination for the large boundary matrices of cochain complexes.
//!
//! The cochain differential `δ: C^k → C^{k+1}` is stored row-major: one sparse row per basis
//! element of `C^{k+1}`, listing the `C^k` coordinates it reads. Read column-wise, the same data
//! is the chain boundary `∂_{k+1} = δᵀ`, and [`cokernel`] computes `ℤ^{dim C^k} / im ∂_{k+1}`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::matrix::IntMatrix;
use super::snf::smith_left_only;
use super::ExactError;

/// Row-major sparse integer matrix; row entries sorted by column and nonzero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseMatrix {
    ncols: usize,
    rows: Vec<Vec<(u32, i64)>>,
}

impl SparseMatrix {
    pub fn new(ncols: usize) -> Self {
        SparseMatrix { ncols, rows: vec![] }
    }

    pub fn with_rows(ncols: usize, rows: Vec<Vec<(u32, i64)>>) -> Self {
        let mut m = SparseMatrix::new(ncols);
        for r in rows {
            m.push_row(r);
        }
        m
    }

    /// Appends a row given as unsorted `(column, value)` pairs; duplicates are summed.
    pub fn push_row(&mut self, mut entries: Vec<(u32, i64)>) {
        entries.sort_unstable_by_key(|e| e.0);
        let mut out: Vec<(u32, i64)> = Vec::with_capacity(entries.len());
        for (c, v) in entries {
            assert!((c as usize) < self.ncols, "column {c} out of range {}", self.ncols);
            match out.last_mut() {
                Some(last) if last.0 == c => last.1 += v,
                _ => out.push((c, v)),
            }
        }
        out.retain(|e| e.1 != 0);
        self.rows.push(out);
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn row(&self, i: usize) -> &[(u32, i64)] {
        &self.rows[i]
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn mul_vec(&self, x: &[i64]) -> Vec<i64> {
        assert_eq!(x.len(), self.ncols);
        self.rows
            .iter()
            .map(|r| r.iter().map(|&(c, v)| v * x[c as usize]).sum())
            .collect()
    }

    /// `self · other` (rows of the result index `self`'s rows).
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.ncols, other.nrows());
        let mut out = SparseMatrix::new(other.ncols);
        for r in &self.rows {
            let mut acc: HashMap<u32, i64> = HashMap::new();
            for &(k, a) in r {
                for &(c, b) in other.row(k as usize) {
                    *acc.entry(c).or_default() += a * b;
                }
            }
            out.push_row(acc.into_iter().collect());
        }
        out
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut cols: Vec<Vec<(u32, i64)>> = vec![vec![]; self.ncols];
        for (i, r) in self.rows.iter().enumerate() {
            for &(c, v) in r {
                cols[c as usize].push((i as u32, v));
            }
        }
        SparseMatrix { ncols: self.rows.len(), rows: cols }
    }

    pub fn to_dense(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.nrows(), self.ncols);
        for (i, r) in self.rows.iter().enumerate() {
            for &(c, v) in r {
                m.set(i, c as usize, BigInt::from(v));
            }
        }
        m
    }

    pub fn from_dense(m: &IntMatrix) -> SparseMatrix {
        let mut s = SparseMatrix::new(m.cols());
        for i in 0..m.rows() {
            s.push_row((0..m.cols()).filter(|&j| !m.get(i, j).is_zero()).map(|j| (j as u32, m.get_i64(i, j))).collect());
        }
        s
    }

    /// Block-diagonal/direct-sum helpers are built by callers; this stacks rows.
    pub fn vstack(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.ncols, other.ncols);
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        SparseMatrix { ncols: self.ncols, rows }
    }
}

/// `ℤ^n / L` for a lattice `L` spanned by sparse columns, with explicit torsion data.
#[derive(Clone, Debug)]
pub struct Cokernel {
    /// Ambient dimension `n`.
    pub dim: usize,
    /// Rank of `L`.
    pub rank: usize,
    /// Invariant factors `> 1` of `ℤ^n / L`, in divisibility order.
    pub torsion: Vec<i64>,
    /// `generators[k]` has order `torsion[k]` in the quotient (sparse ℤ^n vector).
    pub generators: Vec<Vec<(usize, i64)>>,
    /// `functionals[k]` (mod `torsion[k]`) vanishes on `L` and pairs with the generators as δ.
    pub functionals: Option<Vec<Vec<i64>>>,
}

impl Cokernel {
    pub fn free_rank(&self) -> usize {
        self.dim - self.rank
    }
}

struct Eliminator {
    nrows: usize,
    cols: Vec<Vec<(u32, i64)>>,
    active: Vec<bool>,
    row_cols: Vec<Vec<u32>>,
    pivoted: Vec<bool>,
    ops: Vec<(u32, u32, i64)>,
    stamp: Vec<u32>,
    epoch: u32,
}

fn entry_at(col: &[(u32, i64)], r: u32) -> i64 {
    match col.binary_search_by_key(&r, |e| e.0) {
        Ok(i) => col[i].1,
        Err(_) => 0,
    }
}

impl Eliminator {
    fn new(m: &SparseMatrix) -> Self {
        let nrows = m.ncols();
        let cols: Vec<Vec<(u32, i64)>> = m.rows.clone();
        let mut row_cols = vec![vec![]; nrows];
        for (j, c) in cols.iter().enumerate() {
            for &(r, _) in c {
                row_cols[r as usize].push(j as u32);
            }
        }
        let active = cols.iter().map(|c| !c.is_empty()).collect();
        Eliminator {
            nrows,
            stamp: vec![0; cols.len()],
            cols,
            active,
            row_cols,
            pivoted: vec![false; nrows],
            ops: vec![],
            epoch: 0,
        }
    }

    /// `col[target] -= k · col[source]`
    fn col_axpy(&mut self, target: usize, source: usize, k: i64) -> Result<(), ExactError> {
        let a = std::mem::take(&mut self.cols[target]);
        let b = &self.cols[source];
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i]);
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                let v = b[j].1.checked_mul(k).ok_or(ExactError::Overflow)?;
                out.push((b[j].0, -v));
                self.row_cols[b[j].0 as usize].push(target as u32);
                j += 1;
            } else {
                let v = b[j].1.checked_mul(k).and_then(|p| a[i].1.checked_sub(p)).ok_or(ExactError::Overflow)?;
                if v != 0 {
                    out.push((a[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
        if out.is_empty() {
            self.active[target] = false;
        }
        self.cols[target] = out;
        Ok(())
    }

    fn pivot(&mut self, r: u32, c: usize, p: i64) -> Result<(), ExactError> {
        self.epoch += 1;
        let epoch = self.epoch;
        self.stamp[c] = epoch;
        let others = std::mem::take(&mut self.row_cols[r as usize]);
        for c2 in others {
            let c2 = c2 as usize;
            if self.stamp[c2] == epoch || !self.active[c2] {
                continue;
            }
            self.stamp[c2] = epoch;
            let a = entry_at(&self.cols[c2], r);
            if a != 0 {
                self.col_axpy(c2, c, a * p)?;
            }
        }
        // row operations clearing the pivot column
        for &(t, b) in &self.cols[c] {
            if t != r {
                self.ops.push((t, r, b * p));
            }
        }
        self.pivoted[r as usize] = true;
        self.active[c] = false;
        self.cols[c].clear();
        Ok(())
    }

    /// Drop columns equal up to sign to an earlier one and rebuild the row index.
    fn compact(&mut self) {
        let mut seen = std::collections::HashSet::new();
        for j in 0..self.cols.len() {
            if !self.active[j] {
                continue;
            }
            let col = &self.cols[j];
            let key: Vec<(u32, i64)> = if col[0].1 < 0 { col.iter().map(|&(r, x)| (r, -x)).collect() } else { col.clone() };
            if !seen.insert(key) {
                self.active[j] = false;
                self.cols[j].clear();
            }
        }
        self.row_cols.iter_mut().for_each(Vec::clear);
        for (j, c) in self.cols.iter().enumerate() {
            if self.active[j] {
                for &(r, _) in c {
                    self.row_cols[r as usize].push(j as u32);
                }
            }
        }
    }

    fn cost(&self, j: usize, r: u32) -> u64 {
        (self.cols[j].len() as u64 - 1) * (self.row_cols[r as usize].len() as u64).saturating_sub(1)
    }

    fn unit_phase(&mut self) -> Result<usize, ExactError> {
        let mut count = 0;
        loop {
            self.compact();
            let mut cands: Vec<(u64, u32, usize)> = vec![];
            for (j, col) in self.cols.iter().enumerate() {
                if !self.active[j] {
                    continue;
                }
                let best = col.iter().filter(|e| e.1.abs() == 1).map(|e| (self.cost(j, e.0), e.0)).min();
                if let Some((cost, r)) = best {
                    cands.push((cost, r, j));
                }
            }
            if cands.is_empty() {
                return Ok(count);
            }
            cands.sort_unstable();
            for (k, (cost, r, j)) in cands.into_iter().enumerate() {
                if !self.active[j] || self.pivoted[r as usize] {
                    continue;
                }
                let p = entry_at(&self.cols[j], r);
                // fill-in since the round started made this pivot expensive; retry next round
                if p.abs() != 1 || (k > 0 && self.cost(j, r) > 2 * cost + 64) {
                    continue;
                }
                self.pivot(r, j, p)?;
                count += 1;
            }
        }
    }
}

fn hnf_insert(basis: &mut [Option<Vec<i128>>], mut v: Vec<i128>) -> Result<(), ExactError> {
    let n = v.len();
    for p in 0..n {
        if v[p] == 0 {
            continue;
        }
        match &mut basis[p] {
            None => {
                if v[p] < 0 {
                    v.iter_mut().for_each(|x| *x = -*x);
                }
                basis[p] = Some(v);
                return Ok(());
            }
            Some(b) => {
                if v[p] % b[p] == 0 {
                    let q = v[p] / b[p];
                    for i in p..n {
                        v[i] = v[i].checked_sub(q.checked_mul(b[i]).ok_or(ExactError::Overflow)?).ok_or(ExactError::Overflow)?;
                    }
                } else {
                    let e = b[p].extended_gcd(&v[p]);
                    let (g, x, y) = (e.gcd, e.x, e.y);
                    let (bp, vp) = (b[p] / g, v[p] / g);
                    for i in p..n {
                        let nb = x.checked_mul(b[i]).and_then(|s| y.checked_mul(v[i]).and_then(|t| s.checked_add(t)));
                        let nv = bp.checked_mul(v[i]).and_then(|s| vp.checked_mul(b[i]).and_then(|t| s.checked_sub(t)));
                        b[i] = nb.ok_or(ExactError::Overflow)?;
                        v[i] = nv.ok_or(ExactError::Overflow)?;
                    }
                    if b[p] < 0 {
                        b.iter_mut().for_each(|x| *x = -*x);
                    }
                }
            }
        }
    }
    Ok(())
}

/// Insert `v` into a row-echelon basis over `BigInt`, reducing entries above later pivots so
/// the coefficients stay small.
fn hnf_insert_big(basis: &mut [Option<Vec<BigInt>>], mut v: Vec<BigInt>) {
    let n = v.len();
    let mut placed = None;
    for p in 0..n {
        if v[p].is_zero() {
            continue;
        }
        match &mut basis[p] {
            None => {
                if v[p] < BigInt::zero() {
                    v.iter_mut().for_each(|x| *x = -&*x);
                }
                basis[p] = Some(std::mem::take(&mut v));
                placed = Some(p);
                break;
            }
            Some(b) => {
                let e = b[p].extended_gcd(&v[p]);
                let bp = &b[p] / &e.gcd;
                let vp = &v[p] / &e.gcd;
                for i in p..n {
                    let nb = &e.x * &b[i] + &e.y * &v[i];
                    let nv = &bp * &v[i] - &vp * &b[i];
                    b[i] = nb;
                    v[i] = nv;
                }
                if b[p] < BigInt::zero() {
                    b.iter_mut().for_each(|x| *x = -&*x);
                }
                placed = Some(p);
            }
        }
    }
    if placed.is_some() {
        for q in 0..n {
            for p in q + 1..n {
                let Some(piv) = basis[p].as_ref().map(|b| b[p].clone()) else { continue };
                let Some(bq) = basis[q].as_ref() else { continue };
                let k = bq[p].div_floor(&piv);
                if k.is_zero() {
                    continue;
                }
                let bp = basis[p].clone().unwrap();
                let bq = basis[q].as_mut().unwrap();
                for i in p..n {
                    bq[i] -= &k * &bp[i];
                }
            }
        }
    }
}

/// Echelon basis of the span of `vectors` in `ℤ^dim`, as dense columns; exact for any input.
fn echelon_columns(dim: usize, vectors: Vec<Vec<i128>>) -> IntMatrix {
    let mut basis: Vec<Option<Vec<i128>>> = vec![None; dim];
    let fits = vectors.iter().try_for_each(|v| hnf_insert(&mut basis, v.clone())).is_ok();
    let cols: Vec<Vec<BigInt>> = if fits {
        basis.into_iter().flatten().map(|b| b.into_iter().map(BigInt::from).collect()).collect()
    } else {
        let mut big: Vec<Option<Vec<BigInt>>> = vec![None; dim];
        for v in vectors {
            hnf_insert_big(&mut big, v.into_iter().map(BigInt::from).collect());
        }
        big.into_iter().flatten().collect()
    };
    let mut m = IntMatrix::zeros(dim, cols.len());
    for (j, b) in cols.into_iter().enumerate() {
        for (i, x) in b.into_iter().enumerate() {
            if !x.is_zero() {
                m.set(i, j, x);
            }
        }
    }
    m
}

/// A ℤ-basis (as matrix columns) of the lattice in `ℤ^dim` spanned by `vectors`.
pub fn lattice_basis(dim: usize, vectors: impl IntoIterator<Item = Vec<i64>>) -> Result<IntMatrix, ExactError> {
    let vectors: Vec<Vec<i128>> = vectors
        .into_iter()
        .map(|v| {
            assert_eq!(v.len(), dim);
            v.into_iter().map(i128::from).collect()
        })
        .collect();
    Ok(echelon_columns(dim, vectors))
}

/// Rank of a sparse matrix (exact).
pub fn rank(m: &SparseMatrix) -> Result<usize, ExactError> {
    Ok(cokernel(m, false)?.rank)
}

/// Cokernel of `∂ = mᵀ`, i.e. `ℤ^{m.ncols()} / span(rows of m)`.
///
/// With `functionals = true`, also returns for each torsion factor `d` a functional mod `d`
/// vanishing on the span and dual to the torsion generators.
pub fn cokernel(m: &SparseMatrix, functionals: bool) -> Result<Cokernel, ExactError> {
    let mut el = Eliminator::new(m);

    let unit_rank = el.unit_phase()?;

    // remaining block
    let mut rem_rows: Vec<usize> = vec![];
    let mut local = vec![usize::MAX; el.nrows];
    for j in 0..el.cols.len() {
        if !el.active[j] {
            continue;
        }
        for &(r, _) in &el.cols[j] {
            if local[r as usize] == usize::MAX {
                local[r as usize] = 0;
                rem_rows.push(r as usize);
            }
        }
    }
    rem_rows.sort_unstable();
    for (k, &r) in rem_rows.iter().enumerate() {
        local[r] = k;
    }
    let nr = rem_rows.len();
    let mut vectors = vec![];
    let mut seen = std::collections::HashSet::new();
    for j in 0..el.cols.len() {
        if !el.active[j] {
            continue;
        }
        let mut col = el.cols[j].clone();
        if col[0].1 < 0 {
            col.iter_mut().for_each(|e| e.1 = -e.1);
        }
        if !seen.insert(col.clone()) {
            continue;
        }
        let mut v = vec![0i128; nr];
        for &(r, x) in &col {
            v[local[r as usize]] = x as i128;
        }
        vectors.push(v);
    }
    let dense = echelon_columns(nr, vectors);
    let (d, u2, u2inv, rank2) = smith_left_only(&dense);

    let mut torsion = vec![];
    let mut generators = vec![];
    let mut funcs = vec![];
    for k in 0..rank2 {
        let dk = d.get(k, k).to_i64().ok_or(ExactError::Overflow)?;
        if dk == 1 {
            continue;
        }
        torsion.push(dk);
        let g: Vec<(usize, i64)> = (0..nr)
            .filter(|&i| !u2inv.get(i, k).is_zero())
            .map(|i| {
                let v = u2inv.get(i, k).to_i64().ok_or(ExactError::Overflow)?;
                Ok((rem_rows[i], v))
            })
            .collect::<Result<_, ExactError>>()?;
        generators.push(g);
        if functionals {
            let bd = BigInt::from(dk);
            let mut phi = vec![0i64; el.nrows];
            for i in 0..nr {
                phi[rem_rows[i]] = u2.get(k, i).mod_floor(&bd).to_i64().unwrap();
            }
            for &(t, s, a) in el.ops.iter().rev() {
                let pt = phi[t as usize];
                if pt != 0 {
                    let am = a.rem_euclid(dk) as i128;
                    let v = (phi[s as usize] as i128 - am * pt as i128).rem_euclid(dk as i128);
                    phi[s as usize] = v as i64;
                }
            }
            funcs.push(phi);
        }
    }
    Ok(Cokernel {
        dim: el.nrows,
        rank: unit_rank + rank2,
        torsion,
        generators,
        functionals: if functionals { Some(funcs) } else { None },
    })
}
