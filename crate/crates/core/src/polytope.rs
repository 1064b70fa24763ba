//! The anticanonical polytope `{m : <m, v> >= -1 for every ray v}` and the
//! anticanonical degree `(-K)^d = d! vol`.
//!
//! Vertices come from intersecting every `d`-subset of facet hyperplanes;
//! the volume from a pulling triangulation of the boundary coned off at the
//! origin. Everything is exact.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::lattice::{LatticeVector, Rational};
use crate::lp;
use crate::primitive;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnticanPolytope {
    pub dim: usize,
    /// Inner normals `v`, each with the constraint `<m, v> >= -1`.
    pub halfspaces: Vec<LatticeVector>,
    /// Vertices in a deterministic (lexicographic) order.
    pub vertices: Vec<Vec<Rational>>,
    /// `tight[k]` lists the halfspaces active at vertex `k`.
    tight: Vec<BTreeSet<usize>>,
}

fn pairing(m: &[Rational], v: &LatticeVector) -> Rational {
    m.iter()
        .zip(v.coords())
        .map(|(a, &b)| *a * Rational::from_integer(b as i128))
        .sum()
}

/// Solves the square system `rows * m = rhs` exactly; `None` if singular.
fn solve_square(rows: &[&LatticeVector], rhs: &[Rational]) -> Option<Vec<Rational>> {
    let n = rows.len();
    let mut a: Vec<Vec<Rational>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut row: Vec<Rational> = r.coords().iter().map(|&x| Rational::from_integer(x as i128)).collect();
            row.push(*b);
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(c, p);
        let pv = a[c][c];
        for j in c..=n {
            a[c][j] /= pv;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c];
                for j in c..=n {
                    let x = a[c][j];
                    a[r][j] -= f * x;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n]).collect())
}

fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        for i in r + 1..rows.len() {
            if !rows[i][c].is_zero() {
                let f = rows[i][c] / rows[r][c];
                for j in c..cols {
                    let x = rows[r][j];
                    rows[i][j] -= f * x;
                }
            }
        }
        r += 1;
    }
    r
}

fn det(rows: &[&Vec<Rational>]) -> Rational {
    let n = rows.len();
    let mut a: Vec<Vec<Rational>> = rows.iter().map(|r| (*r).clone()).collect();
    let mut d = Rational::from_integer(1);
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            a.swap(c, p);
            d = -d;
        }
        d *= a[c][c];
        for r in c + 1..n {
            if !a[r][c].is_zero() {
                let f = a[r][c] / a[c][c];
                for j in c..n {
                    let x = a[c][j];
                    a[r][j] -= f * x;
                }
            }
        }
    }
    d
}

impl AnticanPolytope {
    /// Affine dimension of a set of vertices.
    fn affine_dim(&self, verts: &[usize]) -> usize {
        let Some((&first, rest)) = verts.split_first() else {
            return 0;
        };
        let diffs = rest
            .iter()
            .map(|&k| {
                self.vertices[k]
                    .iter()
                    .zip(&self.vertices[first])
                    .map(|(a, b)| *a - *b)
                    .collect()
            })
            .collect();
        rank(diffs)
    }

    /// Facets as sorted vertex-index lists.
    pub fn facets(&self) -> Vec<Vec<usize>> {
        let all: Vec<usize> = (0..self.vertices.len()).collect();
        self.subfaces(&all, self.dim)
    }

    fn subfaces(&self, face: &[usize], face_dim: usize) -> Vec<Vec<usize>> {
        let mut out: BTreeSet<Vec<usize>> = BTreeSet::new();
        for h in 0..self.halfspaces.len() {
            let sub: Vec<usize> = face.iter().copied().filter(|&k| self.tight[k].contains(&h)).collect();
            if sub.len() < face.len() && !sub.is_empty() && self.affine_dim(&sub) + 1 == face_dim {
                out.insert(sub);
            }
        }
        out.into_iter().collect()
    }

    /// Pulling triangulation of a face into simplices (vertex-index lists).
    fn triangulate(&self, face: &[usize], face_dim: usize) -> Vec<Vec<usize>> {
        if face_dim == 0 {
            return vec![vec![face[0]]];
        }
        let apex = face[0];
        let mut out = Vec::new();
        for sub in self.subfaces(face, face_dim) {
            if sub.contains(&apex) {
                continue;
            }
            for mut s in self.triangulate(&sub, face_dim - 1) {
                s.push(apex);
                out.push(s);
            }
        }
        out
    }

    /// `d! * volume`, exact.
    pub fn normalized_volume(&self) -> Rational {
        let mut total = Rational::zero();
        for facet in self.facets() {
            for simplex in self.triangulate(&facet, self.dim - 1) {
                let rows: Vec<&Vec<Rational>> = simplex.iter().map(|&k| &self.vertices[k]).collect();
                total += det(&rows).abs();
            }
        }
        total
    }

    /// Vertices written as exact strings, integers as `n` and fractions as `p/q`.
    pub fn vertex_strings(&self) -> Vec<Vec<String>> {
        self.vertices
            .iter()
            .map(|v| v.iter().map(|q| q.to_string()).collect())
            .collect()
    }

    pub fn contains(&self, m: &[Rational]) -> bool {
        self.halfspaces
            .iter()
            .all(|v| pairing(m, v) >= Rational::from_integer(-1))
    }
}

/// Polytope of sections of `-K`. Fails if it is unbounded (the rays do not
/// positively span the space).
pub fn anticanonical_polytope(f: &Fan) -> Result<AnticanPolytope> {
    let d = f.dim();
    let rays: Vec<Vec<i128>> = f
        .rays()
        .iter()
        .map(|v| v.coords().iter().map(|&x| x as i128).collect())
        .collect();
    for i in 0..d {
        for s in [1i128, -1] {
            let mut e = vec![0i128; d];
            e[i] = s;
            if lp::in_cone(&rays, &e).is_none() {
                return Err(Error::NotWeakFano);
            }
        }
    }

    let n = f.num_rays();
    let minus_one = vec![Rational::from_integer(-1); d];
    let mut found: Vec<(Vec<Rational>, BTreeSet<usize>)> = Vec::new();
    let mut idx: Vec<usize> = (0..d).collect();
    loop {
        let rows: Vec<&LatticeVector> = idx.iter().map(|&i| f.ray(i)).collect();
        if let Some(m) = solve_square(&rows, &minus_one) {
            if !found.iter().any(|(p, _)| *p == m) {
                let vals: Vec<Rational> = f.rays().iter().map(|v| pairing(&m, v)).collect();
                if vals.iter().all(|x| *x >= Rational::from_integer(-1)) {
                    let tight = (0..n).filter(|&k| vals[k] == Rational::from_integer(-1)).collect();
                    found.push((m, tight));
                }
            }
        }
        if !next_combination(&mut idx, n) {
            break;
        }
    }
    found.sort_by(|a, b| a.0.cmp(&b.0));
    let (vertices, tight) = found.into_iter().unzip();
    Ok(AnticanPolytope {
        dim: d,
        halfspaces: f.rays().to_vec(),
        vertices,
        tight,
    })
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// `(-K)^d` of a weak Fano fan, as `d!` times the polytope volume.
pub fn anticanonical_degree(f: &Fan) -> Result<i64> {
    if !primitive::is_weak_fano(f)? {
        return Err(Error::NotWeakFano);
    }
    let p = anticanonical_polytope(f)?;
    let vol = p.normalized_volume();
    if !vol.is_integer() {
        return Err(Error::Internal(format!("normalised volume {vol} is not an integer")));
    }
    Ok(vol.to_integer() as i64)
}
