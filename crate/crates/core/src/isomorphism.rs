//! Fan isomorphism under `GL(d, Z)` and canonical keys.
//!
//! Both operations rest on the same anchor enumeration: a smooth maximal
//! cone is a lattice basis, so sending an ordered maximal cone of one fan to
//! an ordered maximal cone of another determines the linear map completely.

use std::collections::BTreeSet;

use crate::fan::{Cone, Fan};
use crate::lattice::{LatticeVector, UniMatrix};
use crate::polytope;
use crate::primitive;

/// A lattice automorphism carrying one fan onto another.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanIso {
    pub matrix: UniMatrix,
    /// `ray_permutation[i]` is the target ray hit by source ray `i`.
    pub ray_permutation: Vec<usize>,
}

impl FanIso {
    pub fn verify(&self, f: &Fan, g: &Fan) -> bool {
        if f.num_rays() != g.num_rays() || f.max_cones().len() != g.max_cones().len() {
            return false;
        }
        let rays_ok = (0..f.num_rays()).all(|i| self.matrix.apply(f.ray(i)) == *g.ray(self.ray_permutation[i]));
        let image: BTreeSet<Cone> = f
            .max_cones()
            .iter()
            .map(|c| Cone::new(c.rays().iter().map(|&i| self.ray_permutation[i]).collect()))
            .collect();
        let target: BTreeSet<Cone> = g.max_cones().iter().cloned().collect();
        rays_ok && image == target
    }
}

/// All orderings of `0..n`.
pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// Cheap isomorphism invariants: ray count, cone count, sorted degrees of
/// primitive relations, and `(-K)^d` when defined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invariants {
    pub num_rays: usize,
    pub num_cones: usize,
    pub degrees: Vec<i64>,
    pub anticanonical_degree: Option<i64>,
}

pub fn invariants(f: &Fan) -> Invariants {
    let mut degrees: Vec<i64> = primitive::primitive_collections(f)
        .map(|rs| rs.iter().map(|r| r.degree).collect())
        .unwrap_or_default();
    degrees.sort_unstable();
    let anticanonical_degree = if degrees.iter().all(|&d| d >= 0) {
        polytope::anticanonical_degree(f).ok()
    } else {
        None
    };
    Invariants {
        num_rays: f.num_rays(),
        num_cones: f.max_cones().len(),
        degrees,
        anticanonical_degree,
    }
}

/// Searches for a lattice automorphism mapping `f` onto `g`.
pub fn find_isomorphism(f: &Fan, g: &Fan) -> Option<FanIso> {
    if f.dim() != g.dim() || f.num_rays() != g.num_rays() || f.max_cones().len() != g.max_cones().len() {
        return None;
    }
    if invariants(f) != invariants(g) {
        return None;
    }
    find_isomorphism_unfiltered(f, g)
}

/// The anchor search of [`find_isomorphism`] without invariant pre-filtering.
pub fn find_isomorphism_unfiltered(f: &Fan, g: &Fan) -> Option<FanIso> {
    let d = f.dim();
    if d != g.dim() || f.num_rays() != g.num_rays() {
        return None;
    }
    let anchor = f.max_cones().first()?;
    let a_gens = f.generators(anchor);
    let to_std = UniMatrix::to_standard_basis(&a_gens).ok()?;
    let target_cones: BTreeSet<Cone> = g.max_cones().iter().cloned().collect();
    let perms = permutations(d);
    for c in g.max_cones() {
        for p in &perms {
            let b: Vec<&LatticeVector> = p.iter().map(|&k| g.ray(c.rays()[k])).collect();
            // M sends anchor ray i to b[i]
            let Ok(from_std) = UniMatrix::to_standard_basis(&b) else {
                continue;
            };
            let m = from_std.inverse().compose(&to_std);
            let mut perm = Vec::with_capacity(f.num_rays());
            for v in f.rays() {
                match g.ray_index(&m.apply(v)) {
                    Some(j) => perm.push(j),
                    None => break,
                }
            }
            if perm.len() != f.num_rays() {
                continue;
            }
            let cones_ok = f
                .max_cones()
                .iter()
                .all(|c| target_cones.contains(&Cone::new(c.rays().iter().map(|&i| perm[i]).collect())));
            if cones_ok {
                return Some(FanIso {
                    matrix: m,
                    ray_permutation: perm,
                });
            }
        }
    }
    None
}

fn serialize_form(f: &Fan, m: &UniMatrix) -> Vec<u8> {
    let images: Vec<LatticeVector> = f.rays().iter().map(|v| m.apply(v)).collect();
    let mut order: Vec<usize> = (0..images.len()).collect();
    order.sort_by(|&a, &b| images[a].cmp(&images[b]));
    let mut new_index = vec![0; order.len()];
    for (k, &old) in order.iter().enumerate() {
        new_index[old] = k;
    }
    let mut cones: Vec<Cone> = f
        .max_cones()
        .iter()
        .map(|c| Cone::new(c.rays().iter().map(|&i| new_index[i]).collect()))
        .collect();
    cones.sort();
    let mut s = format!("d{};r", f.dim());
    for &k in &order {
        s.push(':');
        let coords: Vec<String> = images[k].coords().iter().map(|x| x.to_string()).collect();
        s.push_str(&coords.join(","));
    }
    s.push_str(";c");
    for c in &cones {
        s.push(':');
        let idx: Vec<String> = c.rays().iter().map(|x| x.to_string()).collect();
        s.push_str(&idx.join(","));
    }
    s.into_bytes()
}

/// Minimal serialised form over every ordered maximal cone sent to the
/// standard basis. Two smooth fans are isomorphic iff their keys agree.
pub fn canonical_key(f: &Fan) -> Vec<u8> {
    let perms = permutations(f.dim());
    let mut best: Option<Vec<u8>> = None;
    for c in f.max_cones() {
        for p in &perms {
            let gens: Vec<&LatticeVector> = p.iter().map(|&k| f.ray(c.rays()[k])).collect();
            let Ok(m) = UniMatrix::to_standard_basis(&gens) else {
                continue;
            };
            let form = serialize_form(f, &m);
            if best.as_ref().is_none_or(|b| form < *b) {
                best = Some(form);
            }
        }
    }
    best.unwrap_or_else(|| serialize_form(f, &UniMatrix::identity(f.dim())))
}

/// The fan in the basis that realises its canonical key.
pub fn canonical_form(f: &Fan) -> Fan {
    let key = canonical_key(f);
    let perms = permutations(f.dim());
    for c in f.max_cones() {
        for p in &perms {
            let gens: Vec<&LatticeVector> = p.iter().map(|&k| f.ray(c.rays()[k])).collect();
            let Ok(m) = UniMatrix::to_standard_basis(&gens) else {
                continue;
            };
            if serialize_form(f, &m) == key {
                let g = f.transform(&m);
                let mut order: Vec<usize> = (0..g.num_rays()).collect();
                order.sort_by(|&a, &b| g.ray(a).cmp(g.ray(b)));
                let g = g.reorder_rays(&order);
                let mut cones = g.max_cones().to_vec();
                cones.sort();
                return Fan::new(g.dim(), g.rays().to_vec(), cones).expect("reordered fan is well formed");
            }
        }
    }
    f.clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::IntMatrix;

    fn surface(rays: &[[i64; 2]]) -> Fan {
        Fan::complete_2d(rays.iter().map(|r| LatticeVector::from(*r)).collect()).unwrap()
    }

    #[test]
    fn permutation_count() {
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutations(0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn reordered_p1xp1() {
        let f = surface(&[[1, 0], [-1, 0], [0, 1], [0, -1]]);
        let g = surface(&[[0, -1], [0, 1], [-1, 0], [1, 0]]);
        let iso = find_isomorphism(&f, &g).unwrap();
        assert!(iso.verify(&f, &g));
        assert_eq!(canonical_key(&f), canonical_key(&g));
    }

    #[test]
    fn f1_vs_f2() {
        let f1 = surface(&[[1, 0], [-1, 0], [0, 1], [1, -1]]);
        let f2 = surface(&[[1, 0], [-1, 0], [1, 1], [1, -1]]);
        assert!(find_isomorphism(&f1, &f2).is_none());
        assert!(find_isomorphism_unfiltered(&f1, &f2).is_none());
        assert_ne!(canonical_key(&f1), canonical_key(&f2));
    }

    #[test]
    fn rebased_f1() {
        let f1 = surface(&[[1, 0], [-1, 0], [0, 1], [1, -1]]);
        let m = UniMatrix::new(IntMatrix::from_rows(&[vec![2, 1], vec![1, 1]])).unwrap();
        let g = f1.transform(&m);
        let iso = find_isomorphism(&f1, &g).unwrap();
        assert!(iso.verify(&f1, &g));
        assert_eq!(canonical_key(&f1), canonical_key(&g));
        assert_eq!(canonical_form(&f1), canonical_form(&g));
    }
}
