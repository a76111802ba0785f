use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::matrix::IntMatrix;
use super::snf::smith_normal_form;

/// A ℤ-basis of `{x : A·x = 0}`, as the columns of the returned matrix.
pub fn integer_kernel(a: &IntMatrix) -> IntMatrix {
    let s = smith_normal_form(a);
    let cols: Vec<usize> = (s.rank..a.cols()).collect();
    s.v.select_columns(&cols)
}

/// Some integer solution of `A·x = b`, or `None` when there is none.
pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(a.rows(), b.len());
    let s = smith_normal_form(a);
    let c = s.u.mul_vec(b);
    let mut y = vec![BigInt::zero(); a.cols()];
    for (i, ci) in c.iter().enumerate() {
        if i < s.rank {
            let d = s.d.get(i, i);
            let (q, r) = ci.div_rem(d);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !ci.is_zero() {
            return None;
        }
    }
    Some(s.v.mul_vec(&y))
}

/// A ℤ-basis of the lattice spanned by the columns of `a` (column Hermite reduction).
pub fn column_span_basis(a: &IntMatrix) -> IntMatrix {
    let s = smith_normal_form(&a.transpose());
    // rows of V^T... columns of A·V span the same lattice; the first `rank` of them suffice
    let av = a.mul(&s.u.transpose());
    let cols: Vec<usize> = (0..s.rank).collect();
    av.select_columns(&cols)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_rank_one_row() {
        let a = IntMatrix::from_rows(3, &[vec![2i64, 4, 6]]);
        let k = integer_kernel(&a);
        assert_eq!(k.cols(), 2);
        assert!(a.mul(&k).is_zero());
    }

    #[test]
    fn solve_detects_divisibility() {
        let a = IntMatrix::from_rows(1, &[vec![2i64]]);
        assert!(solve_integer(&a, &[BigInt::from(1)]).is_none());
        assert_eq!(solve_integer(&a, &[BigInt::from(4)]), Some(vec![BigInt::from(2)]));
    }

    #[test]
    fn span_basis_preserves_lattice() {
        let a = IntMatrix::from_rows(3, &[vec![2i64, 4, 6], vec![0, 2, 2]]);
        let b = column_span_basis(&a);
        assert_eq!(b.cols(), 2);
        for j in 0..3 {
            assert!(solve_integer(&b, &a.column(j)).is_some());
        }
        for j in 0..2 {
            assert!(solve_integer(&a, &b.column(j)).is_some());
        }
    }
}
