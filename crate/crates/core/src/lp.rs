//! Exact feasibility for `A x = b, x >= 0` over the rationals.
//!
//! Phase-one simplex with Bland's rule. The problems this crate poses are
//! tiny (a handful of rows, a few dozen columns), so the dense tableau is
//! rebuilt per call.

use num_traits::{One, Signed, Zero};

use crate::lattice::Rational;

/// Returns a nonnegative solution of `a x = b` when one exists.
///
/// `a` is given row-major as `rows` of equal length.
pub fn find_nonneg_solution(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let m = a.len();
    assert_eq!(b.len(), m, "right-hand side length mismatch");
    let n = a.first().map_or(0, Vec::len);
    if m == 0 {
        return Some(vec![Rational::zero(); n]);
    }

    // tableau columns: n structural, m artificial, then rhs
    let width = n + m + 1;
    let mut t: Vec<Vec<Rational>> = Vec::with_capacity(m + 1);
    for i in 0..m {
        let flip = b[i].is_negative();
        let mut row = vec![Rational::zero(); width];
        for j in 0..n {
            row[j] = if flip { -a[i][j] } else { a[i][j] };
        }
        row[n + i] = Rational::one();
        row[width - 1] = if flip { -b[i] } else { b[i] };
        t.push(row);
    }
    // objective row: minimise the sum of artificials, written as reduced costs
    let mut obj = vec![Rational::zero(); width];
    for row in &t {
        for j in 0..n {
            obj[j] -= row[j];
        }
        obj[width - 1] -= row[width - 1];
    }
    t.push(obj);
    let mut basis: Vec<usize> = (n..n + m).collect();

    loop {
        let obj = &t[m];
        let Some(enter) = (0..n + m).find(|&j| obj[j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            if t[i][enter].is_positive() {
                let ratio = t[i][width - 1] / t[i][enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        // phase one is bounded below by zero
        let (row, _) = leave.expect("phase-one objective is bounded");
        pivot(&mut t, row, enter);
        basis[row] = enter;
    }

    if !t[m][width - 1].is_zero() {
        return None;
    }
    let mut x = vec![Rational::zero(); n];
    for (i, &j) in basis.iter().enumerate() {
        if j < n {
            x[j] = t[i][width - 1];
        }
    }
    Some(x)
}

fn pivot(t: &mut [Vec<Rational>], row: usize, col: usize) {
    let p = t[row][col];
    for v in t[row].iter_mut() {
        *v /= p;
    }
    let pivot_row = t[row].clone();
    for (i, r) in t.iter_mut().enumerate() {
        if i == row || r[col].is_zero() {
            continue;
        }
        let f = r[col];
        for (v, pv) in r.iter_mut().zip(&pivot_row) {
            *v -= f * *pv;
        }
    }
}

/// Convenience wrapper for integer data given as columns of length `rows`.
pub fn in_cone(columns: &[Vec<i128>], target: &[i128]) -> Option<Vec<Rational>> {
    let rows = target.len();
    let a: Vec<Vec<Rational>> = (0..rows)
        .map(|i| columns.iter().map(|c| Rational::from_integer(c[i])).collect())
        .collect();
    let b: Vec<Rational> = target.iter().map(|&x| Rational::from_integer(x)).collect();
    find_nonneg_solution(&a, &b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(x: i128) -> Rational {
        Rational::from_integer(x)
    }

    // brute-force oracle: x >= 0 with A x = b for a 2x2 system of
    // independent columns is feasible iff the unique solution is nonnegative
    #[test]
    fn two_by_two_agrees_with_direct_solve() {
        for (c1, c2, t) in [
            ([1, 0], [0, 1], [2, 3]),
            ([1, 0], [0, 1], [-1, 3]),
            ([1, 1], [1, -1], [2, 0]),
            ([1, 1], [1, -1], [0, 2]),
        ] {
            let det = c1[0] * c2[1] - c2[0] * c1[1];
            let x = Rational::new(t[0] * c2[1] - c2[0] * t[1], det);
            let y = Rational::new(c1[0] * t[1] - t[0] * c1[1], det);
            let expect = !x.is_negative() && !y.is_negative();
            let got = in_cone(&[c1.to_vec(), c2.to_vec()], &t);
            assert_eq!(got.is_some(), expect, "{c1:?} {c2:?} {t:?}");
            if let Some(sol) = got {
                assert_eq!(sol, vec![x, y]);
            }
        }
    }

    #[test]
    fn redundant_and_infeasible_systems() {
        // x1 + x2 = 1, 2x1 + 2x2 = 2 (rank deficient) is feasible
        let a = vec![vec![r(1), r(1)], vec![r(2), r(2)]];
        assert!(find_nonneg_solution(&a, &[r(1), r(2)]).is_some());
        // x1 - x2 = 1, x1 - x2 = 2 is inconsistent
        let a = vec![vec![r(1), r(-1)], vec![r(1), r(-1)]];
        assert!(find_nonneg_solution(&a, &[r(1), r(2)]).is_none());
        // x1 + x2 = -1 has no nonnegative solution
        let a = vec![vec![r(1), r(1)]];
        assert!(find_nonneg_solution(&a, &[r(-1)]).is_none());
    }

    #[test]
    fn solution_satisfies_constraints() {
        let cols = vec![vec![1, 0, 2], vec![0, 1, 1], vec![1, 1, 0], vec![-1, 0, 0]];
        let target = [3, 2, 4];
        let x = in_cone(&cols, &target).unwrap();
        for i in 0..3 {
            let s: Rational = cols.iter().zip(&x).map(|(c, xi)| r(c[i]) * xi).sum();
            assert_eq!(s, r(target[i]));
        }
        assert!(x.iter().all(|v| !v.is_negative()));
    }
}
