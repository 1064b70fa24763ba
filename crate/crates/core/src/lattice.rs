//! Exact integer linear algebra on small lattices `Z^d`.
//!
//! Coordinates are stored as `i64`; every computation that can grow
//! (determinants, Smith normal form, rational elimination) runs in `i128`.

use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact rational number.
pub type Rational = Ratio<i128>;

/// A point of the lattice `N = Z^d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticeVector(Vec<i64>);

impl LatticeVector {
    pub fn new(coords: Vec<i64>) -> Self {
        LatticeVector(coords)
    }

    pub fn zero(dim: usize) -> Self {
        LatticeVector(vec![0; dim])
    }

    /// The `i`-th standard basis vector of `Z^dim`.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = vec![0; dim];
        v[i] = 1;
        LatticeVector(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn scale(&self, k: i64) -> Self {
        LatticeVector(self.0.iter().map(|&c| c * k).collect())
    }

    pub fn dot(&self, other: &[i64]) -> i128 {
        self.0
            .iter()
            .zip(other)
            .map(|(&a, &b)| a as i128 * b as i128)
            .sum()
    }

    /// gcd of the coordinates; zero for the zero vector.
    pub fn content(&self) -> i64 {
        self.0.iter().fold(0i64, |g, &c| g.gcd(&c))
    }

    /// Divides out the content. The zero vector is returned unchanged.
    pub fn primitive_part(&self) -> Self {
        let g = self.content();
        if g == 0 {
            return self.clone();
        }
        LatticeVector(self.0.iter().map(|&c| c / g).collect())
    }

    /// Concatenation `(self, tail)`.
    pub fn extend(&self, tail: &[i64]) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(tail);
        LatticeVector(v)
    }
}

impl From<Vec<i64>> for LatticeVector {
    fn from(v: Vec<i64>) -> Self {
        LatticeVector(v)
    }
}

impl<const N: usize> From<[i64; N]> for LatticeVector {
    fn from(v: [i64; N]) -> Self {
        LatticeVector(v.to_vec())
    }
}

impl Index<usize> for LatticeVector {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl Add for &LatticeVector {
    type Output = LatticeVector;
    fn add(self, rhs: Self) -> LatticeVector {
        debug_assert_eq!(self.dim(), rhs.dim());
        LatticeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &LatticeVector {
    type Output = LatticeVector;
    fn sub(self, rhs: Self) -> LatticeVector {
        debug_assert_eq!(self.dim(), rhs.dim());
        LatticeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        LatticeVector(self.0.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Sum of a family of vectors of dimension `dim`.
pub fn sum_vectors<'a, I>(dim: usize, vs: I) -> LatticeVector
where
    I: IntoIterator<Item = &'a LatticeVector>,
{
    vs.into_iter()
        .fold(LatticeVector::zero(dim), |acc, v| &acc + v)
}

/// Dense row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i128>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i128>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMatrix {
            rows: r,
            cols: c,
            data: rows.iter().flatten().copied().collect(),
        }
    }

    /// Matrix whose columns are the given vectors, all of dimension `dim`.
    pub fn from_columns(dim: usize, cols: &[&LatticeVector]) -> Self {
        let mut m = Self::zeros(dim, cols.len());
        for (j, v) in cols.iter().enumerate() {
            assert_eq!(v.dim(), dim, "column dimension mismatch");
            for i in 0..dim {
                m[(i, j)] = v[i] as i128;
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[i128] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<i128> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    /// Column `j` as a lattice vector. Panics if an entry leaves `i64`.
    pub fn column_vector(&self, j: usize) -> LatticeVector {
        LatticeVector(
            (0..self.rows)
                .map(|i| i64::try_from(self[(i, j)]).expect("entry exceeds i64"))
                .collect(),
        )
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "inner dimension mismatch");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &LatticeVector) -> LatticeVector {
        assert_eq!(self.cols, v.dim(), "vector dimension mismatch");
        LatticeVector(
            (0..self.rows)
                .map(|i| {
                    let s: i128 = self
                        .row(i)
                        .iter()
                        .zip(v.coords())
                        .map(|(&a, &b)| a * b as i128)
                        .sum();
                    i64::try_from(s).expect("image exceeds i64")
                })
                .collect(),
        )
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += k * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, k: i128) {
        for j in 0..self.cols {
            let s = self[(src, j)];
            self[(dst, j)] += k * s;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, k: i128) {
        for i in 0..self.rows {
            let s = self[(i, src)];
            self[(i, dst)] += k * s;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            self[(i, j)] = -self[(i, j)];
        }
    }

    /// Diagonal entries `m[(i,i)]` for `i < min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<i128> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).collect()
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)] == 0))
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = i128;
    fn index(&self, (i, j): (usize, usize)) -> &i128 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i128 {
        &mut self.data[i * self.cols + j]
    }
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &IntMatrix) -> Result<i128> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    if n == 0 {
        return Ok(1);
    }
    let mut a = m.clone();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[(k, k)] == 0 {
            match (k + 1..n).find(|&i| a[(i, k)] != 0) {
                Some(i) => {
                    a.swap_rows(i, k);
                    sign = -sign;
                }
                None => return Ok(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[(i, j)] = (a[(i, j)] * a[(k, k)] - a[(i, k)] * a[(k, j)]) / prev;
            }
        }
        prev = a[(k, k)];
    }
    Ok(sign * a[(n - 1, n - 1)])
}

/// Square integer matrix with determinant ±1: an automorphism of `Z^d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniMatrix(IntMatrix);

impl UniMatrix {
    pub fn new(m: IntMatrix) -> Result<Self> {
        match determinant(&m)? {
            1 | -1 => Ok(UniMatrix(m)),
            _ => Err(Error::NotUnimodular),
        }
    }

    pub fn identity(n: usize) -> Self {
        UniMatrix(IntMatrix::identity(n))
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.0
    }

    pub fn into_inner(self) -> IntMatrix {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn apply(&self, v: &LatticeVector) -> LatticeVector {
        self.0.apply(v)
    }

    pub fn compose(&self, rhs: &UniMatrix) -> UniMatrix {
        UniMatrix(self.0.mul(&rhs.0))
    }

    /// The inverse, which is again integral.
    pub fn inverse(&self) -> UniMatrix {
        let n = self.dim();
        let mut inv = IntMatrix::zeros(n, n);
        for j in 0..n {
            let e: Vec<Rational> = (0..n)
                .map(|i| if i == j { Rational::one() } else { Rational::zero() })
                .collect();
            let x = solve_square_rational(&self.0, &e).expect("unimodular matrix is invertible");
            for i in 0..n {
                debug_assert!(x[i].is_integer());
                inv[(i, j)] = x[i].to_integer();
            }
        }
        UniMatrix(inv)
    }

    /// Matrix sending the basis `cols[i]` to the standard basis vector `e_i`;
    /// fails unless the columns form a lattice basis.
    pub fn to_standard_basis(cols: &[&LatticeVector]) -> Result<UniMatrix> {
        let dim = cols.first().map_or(0, |v| v.dim());
        if cols.len() != dim {
            return Err(Error::NotSquare {
                rows: dim,
                cols: cols.len(),
            });
        }
        Ok(UniMatrix::new(IntMatrix::from_columns(dim, cols))?.inverse())
    }
}

fn solve_square_rational(m: &IntMatrix, rhs: &[Rational]) -> Option<Vec<Rational>> {
    let n = m.rows();
    let mut a: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut row: Vec<Rational> = m.row(i).iter().map(|&x| Rational::from_integer(x)).collect();
            row.push(rhs[i]);
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(c, p);
        let pivot = a[c][c];
        for j in c..=n {
            a[c][j] /= pivot;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c];
                for j in c..=n {
                    let v = a[c][j];
                    a[r][j] -= f * v;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n]).collect())
}

/// Result of [`smith_normal_form`]: `left * m * right == diag`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub left: UniMatrix,
    pub diag: IntMatrix,
    pub right: UniMatrix,
}

impl SmithForm {
    /// Nonzero diagonal entries; each divides the next.
    pub fn invariant_factors(&self) -> Vec<i128> {
        self.diag.diagonal().into_iter().filter(|&d| d != 0).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

/// Smith normal form with unimodular transforms on both sides.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (r, c) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);

    for t in 0..r.min(c) {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let pivot = (t..r)
                .flat_map(|i| (t..c).map(move |j| (i, j)))
                .filter(|&(i, j)| d[(i, j)] != 0)
                .min_by_key(|&(i, j)| d[(i, j)].abs());
            let Some((pi, pj)) = pivot else {
                return finish_snf(u, d, v);
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..r {
                let q = Integer::div_floor(&d[(i, t)], &d[(t, t)]);
                if q != 0 {
                    d.add_row_multiple(i, t, -q);
                    u.add_row_multiple(i, t, -q);
                }
                if d[(i, t)] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..c {
                let q = Integer::div_floor(&d[(t, j)], &d[(t, t)]);
                if q != 0 {
                    d.add_col_multiple(j, t, -q);
                    v.add_col_multiple(j, t, -q);
                }
                if d[(t, j)] != 0 {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility chain: fold an offending row into the pivot row
            let p = d[(t, t)];
            let offending = (t + 1..r)
                .flat_map(|i| (t + 1..c).map(move |j| (i, j)))
                .find(|&(i, j)| d[(i, j)] % p != 0);
            match offending {
                Some((i, _)) => {
                    d.add_row_multiple(t, i, 1);
                    u.add_row_multiple(t, i, 1);
                }
                None => break,
            }
        }
        if d[(t, t)] < 0 {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    finish_snf(u, d, v)
}

fn finish_snf(u: IntMatrix, d: IntMatrix, v: IntMatrix) -> SmithForm {
    SmithForm {
        left: UniMatrix(u),
        diag: d,
        right: UniMatrix(v),
    }
}

/// True iff the gcd of the coordinates is 1.
pub fn is_primitive(v: &LatticeVector) -> Result<bool> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(v.content() == 1)
}

/// Unique rational coordinates of `target` in the (independent) columns
/// of `basis`, or `None` when `target` is outside their span.
pub fn solve_rational(basis: &IntMatrix, target: &LatticeVector) -> Result<Option<Vec<Rational>>> {
    let (d, k) = (basis.rows(), basis.cols());
    if target.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: target.dim(),
        });
    }
    let mut a: Vec<Vec<Rational>> = (0..d)
        .map(|i| {
            let mut row: Vec<Rational> = basis.row(i).iter().map(|&x| Rational::from_integer(x)).collect();
            row.push(Rational::from_integer(target[i] as i128));
            row
        })
        .collect();
    let mut pivot_row = 0;
    for c in 0..k {
        let p = (pivot_row..d).find(|&r| !a[r][c].is_zero()).ok_or(Error::DependentBasis)?;
        a.swap(pivot_row, p);
        let pv = a[pivot_row][c];
        for j in c..=k {
            a[pivot_row][j] /= pv;
        }
        for r in 0..d {
            if r != pivot_row && !a[r][c].is_zero() {
                let f = a[r][c];
                for j in c..=k {
                    let x = a[pivot_row][j];
                    a[r][j] -= f * x;
                }
            }
        }
        pivot_row += 1;
    }
    if a[k..].iter().any(|row| !row[k].is_zero()) {
        return Ok(None);
    }
    Ok(Some((0..k).map(|i| a[i][k]).collect()))
}

/// Coordinates of `target` in `basis` if they are all nonnegative integers.
pub fn solve_nonneg_integer(basis: &IntMatrix, target: &LatticeVector) -> Result<Option<Vec<i64>>> {
    let Some(x) = solve_rational(basis, target)? else {
        return Ok(None);
    };
    if x.iter().all(|q| q.is_integer() && !q.is_negative()) {
        Ok(Some(
            x.iter()
                .map(|q| i64::try_from(q.to_integer()).expect("coefficient exceeds i64"))
                .collect(),
        ))
    } else {
        Ok(None)
    }
}

/// Integer basis of `{c : m c = 0}` as columns.
pub fn integer_kernel(m: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(m);
    let rank = snf.rank();
    let v = snf.right.matrix();
    let mut k = IntMatrix::zeros(m.cols(), m.cols() - rank);
    for (jj, j) in (rank..m.cols()).enumerate() {
        for i in 0..m.cols() {
            k[(i, jj)] = v[(i, j)];
        }
    }
    k
}

/// Unimodular `U` with `U v = e_0` for a primitive `v`.
pub fn complete_to_basis(v: &LatticeVector) -> Result<UniMatrix> {
    if !is_primitive(v)? {
        return Err(Error::NotPrimitive(v.clone()));
    }
    let snf = smith_normal_form(&IntMatrix::from_columns(v.dim(), &[v]));
    // U v V = e_0 with V = (±1)
    let mut u = snf.left.into_inner();
    if snf.right.matrix()[(0, 0)] < 0 {
        u.negate_row(0);
    }
    Ok(UniMatrix(u))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cols(vs: &[&[i64]]) -> IntMatrix {
        let lv: Vec<LatticeVector> = vs.iter().map(|v| LatticeVector::new(v.to_vec())).collect();
        let refs: Vec<&LatticeVector> = lv.iter().collect();
        IntMatrix::from_columns(lv[0].dim(), &refs)
    }

    // cofactor expansion along the first row, used as an independent check
    fn cofactor_det(m: &IntMatrix) -> i128 {
        let n = m.rows();
        if n == 1 {
            return m[(0, 0)];
        }
        (0..n)
            .map(|j| {
                let minor = IntMatrix::from_rows(
                    &(1..n)
                        .map(|i| (0..n).filter(|&c| c != j).map(|c| m[(i, c)]).collect())
                        .collect::<Vec<_>>(),
                );
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[(0, j)] * cofactor_det(&minor)
            })
            .sum()
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(determinant(&IntMatrix::identity(3)).unwrap(), 1);
        let m = cols(&[&[1, 0, 0], &[1, 1, 0], &[0, 0, 1]]);
        assert_eq!(cofactor_det(&m), 1);
        assert_eq!(determinant(&m).unwrap(), 1);
        assert_eq!(determinant(&cols(&[&[1, 0], &[-1, 0]])).unwrap(), 0);
        assert!(matches!(
            determinant(&cols(&[&[1, 0]])),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let m = IntMatrix::from_rows(&[vec![2, -1, 3], vec![0, 4, 1], vec![5, 2, -2]]);
        assert_eq!(determinant(&m).unwrap(), cofactor_det(&m));
        let m = IntMatrix::from_rows(&[vec![0, 1, 2], vec![1, 0, 3], vec![4, -3, 8]]);
        assert_eq!(determinant(&m).unwrap(), cofactor_det(&m));
    }

    #[test]
    fn smith_examples() {
        let snf = smith_normal_form(&IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(snf.invariant_factors(), vec![1, 6]);
        let snf = smith_normal_form(&IntMatrix::zeros(2, 3));
        assert!(snf.invariant_factors().is_empty());
        assert!(snf.diag.is_diagonal());
        let snf = smith_normal_form(&cols(&[&[1, 0, 0], &[1, 1, 0]]));
        assert_eq!(snf.invariant_factors(), vec![1, 1]);
    }

    #[test]
    fn primitive_examples() {
        assert!(is_primitive(&[1, -1, 0].into()).unwrap());
        assert!(!is_primitive(&[0, 2, -2].into()).unwrap());
        for a in 0..=2 {
            assert!(is_primitive(&[0, a, -1].into()).unwrap());
        }
        assert!(matches!(is_primitive(&[0, 0].into()), Err(Error::ZeroVector)));
    }

    #[test]
    fn nonneg_integer_solutions() {
        let b = cols(&[&[1, 0], &[0, 1]]);
        assert_eq!(solve_nonneg_integer(&b, &[2, 0].into()).unwrap(), Some(vec![2, 0]));
        let b = cols(&[&[1, 0, 0]]);
        assert_eq!(solve_nonneg_integer(&b, &[2, 0, 0].into()).unwrap(), Some(vec![2]));
        let b = cols(&[&[1, 1]]);
        assert_eq!(solve_nonneg_integer(&b, &[1, 0].into()).unwrap(), None);
        let b = cols(&[&[2, 0], &[0, 1]]);
        assert_eq!(solve_nonneg_integer(&b, &[1, 1].into()).unwrap(), None);
        let b = cols(&[&[1, 0], &[2, 0]]);
        assert!(matches!(
            solve_nonneg_integer(&b, &[1, 0].into()),
            Err(Error::DependentBasis)
        ));
    }

    #[test]
    fn kernel_and_basis_completion() {
        let m = cols(&[&[1, 0], &[0, 1], &[-1, -1]]);
        let k = integer_kernel(&m);
        assert_eq!(k.cols(), 1);
        assert!(m.mul(&k).data.iter().all(|&x| x == 0));

        let v: LatticeVector = [2, 3, 5].into();
        let u = complete_to_basis(&v).unwrap();
        assert_eq!(u.apply(&v), LatticeVector::unit(3, 0));
        let inv = u.inverse();
        assert_eq!(u.compose(&inv), UniMatrix::identity(3));
    }
}
