//! Brute-force oracles shared by the integration tests. None of them call
//! into the library's own algorithms beyond reading fan data.

#![allow(dead_code)]

use std::collections::BTreeSet;

use torifan::primitive::PrimitiveRelation;
use torifan::Fan;

pub fn ray(f: &Fan, i: usize) -> Vec<i64> {
    f.ray(i).coords().to_vec()
}

/// Minimal non-faces by scanning every subset of rays.
pub fn minimal_non_faces(f: &Fan) -> BTreeSet<Vec<usize>> {
    let n = f.num_rays();
    assert!(n < 24);
    let cones: Vec<u32> = f
        .max_cones()
        .iter()
        .map(|c| c.rays().iter().fold(0u32, |m, &i| m | 1 << i))
        .collect();
    let is_face = |s: u32| cones.iter().any(|&c| c & s == s);
    let mut out = BTreeSet::new();
    for s in 1u32..(1 << n) {
        if is_face(s) {
            continue;
        }
        let minimal = (0..n).filter(|i| s >> i & 1 == 1).all(|i| is_face(s & !(1 << i)));
        if minimal {
            out.insert((0..n).filter(|i| s >> i & 1 == 1).collect());
        }
    }
    out
}

/// `Σ x_i = Σ a_j y_j` recomputed coordinate by coordinate.
pub fn relation_identity_holds(f: &Fan, r: &PrimitiveRelation) -> bool {
    let d = f.dim();
    let mut lhs = vec![0i64; d];
    for &i in &r.collection {
        for (k, x) in ray(f, i).into_iter().enumerate() {
            lhs[k] += x;
        }
    }
    let mut rhs = vec![0i64; d];
    for (&j, &a) in &r.coeffs {
        for (k, x) in ray(f, j).into_iter().enumerate() {
            rhs[k] += a * x;
        }
    }
    let sigma_ok = r.coeffs.keys().copied().collect::<Vec<_>>() == r.sigma.rays()
        && r.coeffs.values().all(|&a| a > 0)
        && r.sigma.rays().iter().all(|j| !r.collection.contains(j));
    lhs == rhs && sigma_ok && f.is_face(r.sigma.rays())
}

/// The class vector must be `1` on the collection, `-a_j` on `σ(P)`, zero
/// elsewhere, and a linear relation among the rays.
pub fn class_vector_ok(f: &Fan, r: &PrimitiveRelation) -> bool {
    let mut expect = vec![0i64; f.num_rays()];
    for &i in &r.collection {
        expect[i] += 1;
    }
    for (&j, &a) in &r.coeffs {
        expect[j] -= a;
    }
    let mut sum = vec![0i64; f.dim()];
    for (i, &c) in r.cls.iter().enumerate() {
        for (k, x) in ray(f, i).into_iter().enumerate() {
            sum[k] += c * x;
        }
    }
    r.cls == expect && sum.iter().all(|&x| x == 0)
}

/// `m - Σ a_j`.
pub fn degree_by_definition(r: &PrimitiveRelation) -> i64 {
    r.collection.len() as i64 - r.coeffs.values().sum::<i64>()
}

fn det3(a: &[i64], b: &[i64], c: &[i64]) -> i64 {
    a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0])
}

/// Whether `v` lies in the open cone spanned by `x1`, `x2` in `Z^3`.
pub fn in_open_cone_3d(x1: &[i64], x2: &[i64], v: &[i64]) -> bool {
    if det3(x1, x2, v) != 0 {
        return false;
    }
    // Cramer on the coordinate pair with a nonzero minor
    for (p, q) in [(0, 1), (0, 2), (1, 2)] {
        let m = x1[p] * x2[q] - x1[q] * x2[p];
        if m != 0 {
            let alpha = v[p] * x2[q] - v[q] * x2[p];
            let beta = x1[p] * v[q] - x1[q] * v[p];
            return alpha * m.signum() > 0 && beta * m.signum() > 0;
        }
    }
    false
}

/// Lattice points of `{m : <m, v> >= -1}` by scanning a box; panics if the
/// box is too small to contain the polytope.
pub fn anticanonical_lattice_points(f: &Fan, half_width: i64) -> usize {
    let d = f.dim();
    let rays: Vec<Vec<i64>> = (0..f.num_rays()).map(|i| ray(f, i)).collect();
    let mut count = 0;
    let mut m = vec![-half_width; d];
    loop {
        if rays.iter().all(|v| v.iter().zip(&m).map(|(a, b)| a * b).sum::<i64>() >= -1) {
            assert!(m.iter().all(|x| x.abs() < half_width), "box too small");
            count += 1;
        }
        let mut k = 0;
        while k < d && m[k] == half_width {
            m[k] = -half_width;
            k += 1;
        }
        if k == d {
            break;
        }
        m[k] += 1;
    }
    count
}

/// `(-K)^d` from lattice points via Riemann-Roch and vanishing on smooth
/// weak Fano varieties: `h^0(-K) = (-K)^2 + 1` on surfaces and
/// `(-K)^3 / 2 + 3` on 3-folds.
pub fn degree_by_lattice_points(f: &Fan) -> i64 {
    let n = anticanonical_lattice_points(f, 12) as i64;
    match f.dim() {
        2 => n - 1,
        3 => 2 * (n - 3),
        d => panic!("no formula in dimension {d}"),
    }
}

/// Random unimodular matrix as a product of elementary row operations.
pub fn random_unimodular<R: rand::Rng>(rng: &mut R, d: usize, steps: usize) -> Vec<Vec<i128>> {
    let mut m: Vec<Vec<i128>> = (0..d).map(|i| (0..d).map(|j| i128::from(i == j)).collect()).collect();
    for _ in 0..steps {
        let i = rng.gen_range(0..d);
        let j = rng.gen_range(0..d);
        match rng.gen_range(0..3) {
            0 if i != j => {
                let k: i128 = rng.gen_range(-2..=2);
                for c in 0..d {
                    m[i][c] += k * m[j][c];
                }
            }
            1 => m.swap(i, j),
            _ => {
                for c in 0..d {
                    m[i][c] = -m[i][c];
                }
            }
        }
    }
    m
}
