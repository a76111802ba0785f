use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::lattice::solve_integer;
use super::matrix::IntMatrix;

fn mulmod(a: i64, b: i64, n: i64) -> i64 {
    ((a as i128 * b as i128).rem_euclid(n as i128)) as i64
}

struct ModDiag {
    a: Vec<Vec<i64>>,
    b: Vec<i64>,
    v: Vec<Vec<i64>>,
    n: i64,
}

impl ModDiag {
    fn rows(&self) -> usize {
        self.a.len()
    }

    fn cols(&self) -> usize {
        self.v.len()
    }

    /// rows (t, i) ← (x·t + y·i, −b'·t + a'·i)
    fn combine_rows(&mut self, t: usize, i: usize, c: [i64; 4]) {
        let n = self.n;
        let f = |x: i64, y: i64| ((mulmod(c[0], x, n) + mulmod(c[1], y, n)) % n, (mulmod(c[2], x, n) + mulmod(c[3], y, n)) % n);
        let (rt, ri) = if t < i {
            let (lo, hi) = self.a.split_at_mut(i);
            (&mut lo[t], &mut hi[0])
        } else {
            let (lo, hi) = self.a.split_at_mut(t);
            (&mut hi[0], &mut lo[i])
        };
        for (x, y) in rt.iter_mut().zip(ri.iter_mut()) {
            if *x != 0 || *y != 0 {
                (*x, *y) = f(*x, *y);
            }
        }
        (self.b[t], self.b[i]) = f(self.b[t], self.b[i]);
    }

    fn combine_cols(&mut self, t: usize, j: usize, c: [i64; 4]) {
        let n = self.n;
        let f = |x: i64, y: i64| ((mulmod(c[0], x, n) + mulmod(c[1], y, n)) % n, (mulmod(c[2], x, n) + mulmod(c[3], y, n)) % n);
        for row in self.a.iter_mut().chain(self.v.iter_mut()) {
            let (x, y) = (row[t], row[j]);
            if x != 0 || y != 0 {
                (row[t], row[j]) = f(x, y);
            }
        }
    }

    fn gcd_coeffs(&self, a: i64, b: i64) -> [i64; 4] {
        let n = self.n;
        // plain elimination when the pivot divides, so the pivot column is left alone
        if b % a == 0 {
            return [1, 0, (-(b / a)).rem_euclid(n), 1];
        }
        let e = a.extended_gcd(&b);
        [e.x.rem_euclid(n), e.y.rem_euclid(n), (-(b / e.gcd)).rem_euclid(n), (a / e.gcd).rem_euclid(n)]
    }

    fn solve(mut self) -> Option<Vec<i64>> {
        let (m, k, n) = (self.rows(), self.cols(), self.n);
        let mut t = 0;
        while t < m.min(k) {
            let mut best: Option<(i64, usize, usize)> = None;
            for i in t..m {
                for j in t..k {
                    let v = self.a[i][j];
                    if v != 0 {
                        let g = v.gcd(&n);
                        if best.map_or(true, |b| g < b.0) {
                            best = Some((g, i, j));
                        }
                    }
                }
            }
            let Some((_, bi, bj)) = best else { break };
            self.a.swap(t, bi);
            self.b.swap(t, bi);
            for row in self.a.iter_mut().chain(self.v.iter_mut()) {
                row.swap(t, bj);
            }
            loop {
                let mut dirty = false;
                for i in t + 1..m {
                    let (p, x) = (self.a[t][t], self.a[i][t]);
                    if x != 0 {
                        let c = self.gcd_coeffs(p, x);
                        self.combine_rows(t, i, c);
                    }
                }
                for j in t + 1..k {
                    let (p, x) = (self.a[t][t], self.a[t][j]);
                    if x != 0 {
                        let c = self.gcd_coeffs(p, x);
                        self.combine_cols(t, j, c);
                        dirty = true;
                    }
                }
                if !dirty || (t + 1..m).all(|i| self.a[i][t] == 0) {
                    break;
                }
            }
            t += 1;
        }
        let mut y = vec![0i64; k];
        for i in 0..m {
            let c = self.b[i];
            let d = if i < t { self.a[i][i] } else { 0 };
            if d == 0 {
                if c != 0 {
                    return None;
                }
                continue;
            }
            let g = d.gcd(&n);
            if c % g != 0 {
                return None;
            }
            let ng = n / g;
            let inv = (d / g).extended_gcd(&ng).x.rem_euclid(ng);
            y[i] = mulmod(c / g, inv, ng);
        }
        let x = (0..k).map(|r| self.v[r].iter().zip(&y).fold(0i64, |s, (a, b)| (s + mulmod(*a, *b, n)) % n)).collect();
        Some(x)
    }
}

/// Solves `A·x ≡ b (mod n)` for a dense `i64` system; entries of the answer lie in `[0, n)`.
pub fn solve_mod(a: &[Vec<i64>], cols: usize, b: &[i64], n: i64) -> Option<Vec<i64>> {
    assert!(n >= 1);
    assert_eq!(a.len(), b.len());
    let a: Vec<Vec<i64>> = a
        .iter()
        .map(|r| {
            assert_eq!(r.len(), cols);
            r.iter().map(|v| v.rem_euclid(n)).collect()
        })
        .collect();
    let v = (0..cols).map(|i| (0..cols).map(|j| i64::from(i == j)).collect()).collect();
    ModDiag { a, b: b.iter().map(|v| v.rem_euclid(n)).collect(), v, n }.solve()
}

/// Solves `A·x ≡ b` row-wise modulo `moduli[i]` (`0` meaning an equation over ℤ).
pub fn solve_congruence(a: &IntMatrix, b: &[BigInt], moduli: &[i64]) -> Option<Vec<BigInt>> {
    assert_eq!(a.rows(), b.len());
    assert_eq!(a.rows(), moduli.len());
    if let Some(&n) = moduli.first() {
        let small = a.max_abs().to_i64().is_some() && b.iter().all(|v| v.to_i64().is_some());
        if n > 0 && small && moduli.iter().all(|&m| m == n) {
            let rows: Vec<Vec<i64>> = (0..a.rows()).map(|i| (0..a.cols()).map(|j| a.get_i64(i, j)).collect()).collect();
            let bb: Vec<i64> = b.iter().map(|v| v.to_i64().unwrap()).collect();
            return solve_mod(&rows, a.cols(), &bb, n).map(|x| x.into_iter().map(BigInt::from).collect());
        }
    }
    let extra: Vec<usize> = (0..moduli.len()).filter(|&i| moduli[i] != 0).collect();
    let mut aug = IntMatrix::zeros(a.rows(), a.cols() + extra.len());
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            aug.set(i, j, a.get(i, j).clone());
        }
    }
    for (k, &i) in extra.iter().enumerate() {
        aug.set(i, a.cols() + k, BigInt::from(moduli[i]));
    }
    let x = solve_integer(&aug, b)?;
    Some(
        x[..a.cols()]
            .iter()
            .map(|v| if moduli.iter().all(|&m| m == moduli[0]) && moduli[0] > 0 { v.mod_floor(&BigInt::from(moduli[0])) } else { v.clone() })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn basic_examples() {
        let a = IntMatrix::from_rows(1, &[vec![2i64]]);
        assert!(solve_congruence(&a, &[BigInt::from(1)], &[4]).is_none());
        let x = solve_congruence(&a, &[BigInt::from(2)], &[4]).unwrap();
        let r: BigInt = &x[0] * 2 - 2;
        assert!(r.mod_floor(&BigInt::from(4)).is_zero());
    }

    #[test]
    fn mixed_moduli() {
        // x ≡ 1 mod 2 and 3x = 3 over Z
        let a = IntMatrix::from_rows(1, &[vec![1i64], vec![3]]);
        let x = solve_congruence(&a, &[BigInt::from(1), BigInt::from(3)], &[2, 0]).unwrap();
        assert_eq!(x, vec![BigInt::from(1)]);
        assert!(solve_congruence(&a, &[BigInt::from(0), BigInt::from(3)], &[2, 0]).is_none());
    }

    #[test]
    fn equal_pivots_terminate() {
        // every 2×2 system over ℤ/9 against brute force; equal entries once cycled forever
        let n: i64 = 9;
        for code in 0..n.pow(4) {
            let a: Vec<Vec<i64>> = vec![vec![code % n, code / n % n], vec![code / 81 % n, code / 729 % n]];
            for b in [vec![0, 3], vec![1, 1], vec![3, 6]] {
                let brute = (0..n * n).any(|k| {
                    let x = [k % n, k / n];
                    (0..2).all(|i| (a[i][0] * x[0] + a[i][1] * x[1] - b[i]).rem_euclid(n) == 0)
                });
                let got = solve_mod(&a, 2, &b, n);
                assert_eq!(got.is_some(), brute, "{a:?} {b:?}");
                if let Some(x) = got {
                    assert!((0..2).all(|i| (a[i][0] * x[0] + a[i][1] * x[1] - b[i]).rem_euclid(n) == 0));
                }
            }
        }
    }
}
