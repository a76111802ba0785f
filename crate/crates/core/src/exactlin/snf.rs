use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// Smith normal form `U·A·V = D` together with `U⁻¹`.
#[derive(Clone, Debug)]
pub struct SnfResult {
    /// `D` as a full matrix of the input's shape.
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub v: IntMatrix,
    /// Number of nonzero diagonal entries.
    pub rank: usize,
}

impl SnfResult {
    /// Diagonal entries `d₁ | d₂ | …`, of length `min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d.get(i, i).clone()).collect()
    }
}

/// Bezout data: returns `(g, x, y)` with `x·a + y·b = g = gcd(a, b) ≥ 0`.
pub(crate) fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    (e.gcd, e.x, e.y)
}

struct Tracker<'a> {
    a: &'a mut IntMatrix,
    u: Option<(IntMatrix, IntMatrix)>,
    v: Option<IntMatrix>,
}

impl Tracker<'_> {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        if let Some((u, ui)) = &mut self.u {
            u.swap_rows(i, j);
            ui.swap_cols(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        if let Some(v) = &mut self.v {
            v.swap_cols(i, j);
        }
    }

    /// Row transform on rows `t`, `i` killing `A[i][col]` against the pivot `A[t][col]`.
    fn row_gcd(&mut self, t: usize, i: usize, col: usize) {
        let a = self.a.get(t, col).clone();
        let b = self.a.get(i, col).clone();
        if b.is_zero() {
            return;
        }
        if (&b % &a).is_zero() {
            let q = -(&b / &a);
            self.a.add_row_multiple(i, t, &q);
            if let Some((u, ui)) = &mut self.u {
                u.add_row_multiple(i, t, &q);
                ui.add_col_multiple(t, i, &(-q));
            }
            return;
        }
        let (g, x, y) = ext_gcd(&a, &b);
        let a1 = &a / &g;
        let b1 = &b / &g;
        let nb1 = -&b1;
        self.a.combine_rows(t, i, [&x, &y, &nb1, &a1]);
        if let Some((u, ui)) = &mut self.u {
            u.combine_rows(t, i, [&x, &y, &nb1, &a1]);
            let ny = -&y;
            ui.combine_cols(t, i, [&a1, &b1, &ny, &x]);
        }
    }

    fn col_gcd(&mut self, t: usize, j: usize, row: usize) {
        let a = self.a.get(row, t).clone();
        let b = self.a.get(row, j).clone();
        if b.is_zero() {
            return;
        }
        if (&b % &a).is_zero() {
            let q = -(&b / &a);
            self.a.add_col_multiple(j, t, &q);
            if let Some(v) = &mut self.v {
                v.add_col_multiple(j, t, &q);
            }
            return;
        }
        let (g, x, y) = ext_gcd(&a, &b);
        let a1 = &a / &g;
        let nb1 = -(&b / &g);
        self.a.combine_cols(t, j, [&x, &y, &nb1, &a1]);
        if let Some(v) = &mut self.v {
            v.combine_cols(t, j, [&x, &y, &nb1, &a1]);
        }
    }

    fn add_row(&mut self, target: usize, source: usize) {
        let one = BigInt::one();
        self.a.add_row_multiple(target, source, &one);
        if let Some((u, ui)) = &mut self.u {
            u.add_row_multiple(target, source, &one);
            ui.add_col_multiple(source, target, &(-one));
        }
    }

    fn negate_row(&mut self, r: usize) {
        self.a.negate_row(r);
        if let Some((u, ui)) = &mut self.u {
            u.negate_row(r);
            ui.negate_col(r);
        }
    }
}

fn diagonalize(tr: &mut Tracker<'_>) -> usize {
    let rows = tr.a.rows();
    let cols = tr.a.cols();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize, BigInt)> = None;
        for i in t..rows {
            for j in t..cols {
                let v = tr.a.get(i, j);
                if !v.is_zero() && best.as_ref().map_or(true, |(_, _, b)| v.abs() < *b) {
                    best = Some((i, j, v.abs()));
                }
            }
        }
        let Some((bi, bj, _)) = best else { break };
        tr.swap_rows(t, bi);
        tr.swap_cols(t, bj);
        loop {
            for i in t + 1..rows {
                tr.row_gcd(t, i, t);
            }
            for j in t + 1..cols {
                tr.col_gcd(t, j, t);
            }
            let col_clean = (t + 1..rows).all(|i| tr.a.get(i, t).is_zero());
            let row_clean = (t + 1..cols).all(|j| tr.a.get(t, j).is_zero());
            if !(col_clean && row_clean) {
                continue;
            }
            let p = tr.a.get(t, t).clone();
            let bad = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !(tr.a.get(i, j) % &p).is_zero()));
            match bad {
                Some(i) => tr.add_row(t, i),
                None => break,
            }
        }
        if tr.a.get(t, t).is_negative() {
            tr.negate_row(t);
        }
        t += 1;
    }
    t
}

/// Smith normal form with unimodular transforms `U`, `V` (and `U⁻¹`).
pub fn smith_normal_form(a: &IntMatrix) -> SnfResult {
    let mut d = a.clone();
    let mut tr = Tracker {
        a: &mut d,
        u: Some((IntMatrix::identity(a.rows()), IntMatrix::identity(a.rows()))),
        v: Some(IntMatrix::identity(a.cols())),
    };
    let rank = diagonalize(&mut tr);
    let (u, u_inv) = tr.u.take().unwrap();
    let v = tr.v.take().unwrap();
    SnfResult { d, u, u_inv, v, rank }
}

/// Only the diagonal of the Smith normal form (no transforms tracked).
pub fn invariant_factors(a: &IntMatrix) -> Vec<BigInt> {
    let mut d = a.clone();
    let mut tr = Tracker { a: &mut d, u: None, v: None };
    diagonalize(&mut tr);
    (0..d.rows().min(d.cols())).map(|i| d.get(i, i).clone()).collect()
}

/// Smith form with only the left transforms `U`, `U⁻¹` tracked.
pub(crate) fn smith_left_only(a: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix, usize) {
    let mut d = a.clone();
    let mut tr = Tracker {
        a: &mut d,
        u: Some((IntMatrix::identity(a.rows()), IntMatrix::identity(a.rows()))),
        v: None,
    };
    let rank = diagonalize(&mut tr);
    let (u, ui) = tr.u.take().unwrap();
    (d, u, ui, rank)
}
