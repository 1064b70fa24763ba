//! Primitive collections, primitive relations and the Mori cone they span.
//!
//! For a smooth complete fan, a primitive collection is a minimal set of
//! rays that does not span a cone. The sum of its rays lies in the relative
//! interior of a unique cone `σ(P)`, and writing the sum in the generators
//! of `σ(P)` gives the primitive relation
//!
//! ```text
//! x_1 + ... + x_m = a_1 y_1 + ... + a_n y_n,     a_j > 0.
//! ```
//!
//! Its class in the relation lattice is the integer vector with `+1` on the
//! `x_i` and `-a_j` on the `y_j`; the degree `m - Σ a_j` is the
//! intersection number with the anticanonical divisor.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fan::{Cone, Fan};
use crate::lattice::{integer_kernel, solve_nonneg_integer, solve_rational, sum_vectors, IntMatrix, Rational};
use crate::lp;

/// A primitive collection together with its primitive relation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PrimitiveRelation {
    /// Sorted ray indices of the collection.
    pub collection: Vec<usize>,
    /// The cone whose relative interior contains the sum of the collection.
    pub sigma: Cone,
    /// Positive coefficient of each generator of `sigma`.
    pub coeffs: BTreeMap<usize, i64>,
    pub degree: i64,
    /// Class in the relation lattice, indexed by ray.
    pub cls: Vec<i64>,
}

impl PrimitiveRelation {
    pub fn len(&self) -> usize {
        self.collection.len()
    }

    pub fn is_empty(&self) -> bool {
        self.collection.is_empty()
    }

    /// `Σ x_i == Σ a_j y_j` as lattice vectors.
    pub fn holds_in(&self, f: &Fan) -> bool {
        let lhs = sum_vectors(f.dim(), self.collection.iter().map(|&i| f.ray(i)));
        let rhs = self
            .coeffs
            .iter()
            .fold(crate::lattice::LatticeVector::zero(f.dim()), |acc, (&j, &a)| {
                &acc + &f.ray(j).scale(a)
            });
        lhs == rhs
    }

    /// Human readable form using ray indices, e.g. `v0+v2 = 2*v1`.
    pub fn display_indices(&self) -> String {
        let lhs: Vec<String> = self.collection.iter().map(|i| format!("v{i}")).collect();
        let rhs: Vec<String> = self
            .coeffs
            .iter()
            .map(|(j, a)| if *a == 1 { format!("v{j}") } else { format!("{a}*v{j}") })
            .collect();
        format!(
            "{} = {}",
            lhs.join("+"),
            if rhs.is_empty() { "0".into() } else { rhs.join("+") }
        )
    }
}

impl fmt::Display for PrimitiveRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (degree {})", self.display_indices(), self.degree)
    }
}

/// Kernel of the ray matrix, i.e. the lattice of linear relations among rays.
#[derive(Clone, Debug)]
pub struct RelationLattice {
    pub rank: usize,
    /// Basis vectors as columns, one row per ray.
    pub basis: IntMatrix,
}

pub fn relation_lattice(f: &Fan) -> RelationLattice {
    let rays: Vec<_> = f.rays().iter().collect();
    let basis = integer_kernel(&IntMatrix::from_columns(f.dim(), &rays));
    RelationLattice {
        rank: basis.cols(),
        basis,
    }
}

/// All primitive collections of a smooth complete fan with their relations,
/// ordered lexicographically by sorted index set.
pub fn primitive_collections(f: &Fan) -> Result<Vec<PrimitiveRelation>> {
    let d = f.dim();
    let mut faces: HashSet<Vec<usize>> = HashSet::new();
    for c in f.max_cones() {
        let rays = c.rays();
        for mask in 1u32..(1 << rays.len()) {
            let sub: Vec<usize> = (0..rays.len()).filter(|b| mask & (1 << b) != 0).map(|b| rays[b]).collect();
            faces.insert(sub);
        }
    }
    for i in 0..f.num_rays() {
        if !faces.contains(&vec![i]) {
            return Err(Error::NotSmoothComplete(format!("ray {i} lies in no cone")));
        }
    }

    let mut collections: Vec<Vec<usize>> = Vec::new();
    let mut level: Vec<Vec<usize>> = (0..f.num_rays()).map(|i| vec![i]).collect();
    // a minimal non-face has all proper subsets faces, and faces have at most
    // d rays, so the search stops at size d + 1
    for _size in 2..=d + 1 {
        let mut next = Vec::new();
        for face in &level {
            let last = *face.last().expect("nonempty");
            for r in last + 1..f.num_rays() {
                let mut cand = face.clone();
                cand.push(r);
                let subsets_are_faces = (0..cand.len()).all(|skip| {
                    let sub: Vec<usize> = cand
                        .iter()
                        .enumerate()
                        .filter(|&(k, _)| k != skip)
                        .map(|(_, &x)| x)
                        .collect();
                    faces.contains(&sub)
                });
                if !subsets_are_faces {
                    continue;
                }
                if faces.contains(&cand) {
                    next.push(cand);
                } else {
                    collections.push(cand);
                }
            }
        }
        level = next;
    }
    if !level.is_empty() {
        return Err(Error::Internal(format!(
            "found a face with {} rays in dimension {d}",
            d + 1
        )));
    }
    collections.sort();
    collections.into_iter().map(|p| relation_for(f, p)).collect()
}

fn relation_for(f: &Fan, collection: Vec<usize>) -> Result<PrimitiveRelation> {
    let d = f.dim();
    let sum = sum_vectors(d, collection.iter().map(|&i| f.ray(i)));
    let mut sigma = Cone::new(vec![]);
    let mut coeffs = BTreeMap::new();
    if !sum.is_zero() {
        let mut found = None;
        for c in f.max_cones() {
            if let Some(x) = solve_rational(&f.generator_matrix(c), &sum)? {
                if x.iter().all(|q| !q.is_negative()) {
                    found = Some(Cone::new(
                        c.rays()
                            .iter()
                            .zip(&x)
                            .filter(|(_, q)| q.is_positive())
                            .map(|(&r, _)| r)
                            .collect(),
                    ));
                    break;
                }
            }
        }
        sigma = found.ok_or_else(|| {
            Error::NotSmoothComplete(format!("no cone contains the sum of collection {collection:?}"))
        })?;
        let a = solve_nonneg_integer(&f.generator_matrix(&sigma), &sum)?.ok_or_else(|| {
            Error::NotSmoothComplete(format!("non-integral relation for collection {collection:?}"))
        })?;
        coeffs = sigma.rays().iter().copied().zip(a).collect();
    }
    let mut cls = vec![0i64; f.num_rays()];
    for &i in &collection {
        cls[i] += 1;
    }
    for (&j, &a) in &coeffs {
        cls[j] -= a;
    }
    let degree = collection.len() as i64 - coeffs.values().sum::<i64>();
    Ok(PrimitiveRelation {
        collection,
        sigma,
        coeffs,
        degree,
        cls,
    })
}

/// Fano iff every primitive relation has positive degree.
pub fn is_fano(f: &Fan) -> Result<bool> {
    Ok(primitive_collections(f)?.iter().all(|r| r.degree > 0))
}

/// Weak Fano iff every primitive relation has nonnegative degree.
pub fn is_weak_fano(f: &Fan) -> Result<bool> {
    Ok(primitive_collections(f)?.iter().all(|r| r.degree >= 0))
}

/// Shape of a two-element primitive relation on a weak Fano variety.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TwoElementKind {
    /// `x_1 + x_2 = 0`
    Zero,
    /// `x_1 + x_2 = a y` with `a` in {1, 2}
    SingleRay { ray: usize, a: i64 },
    /// `x_1 + x_2 = y_1 + y_2`
    TwoRays { rays: [usize; 2] },
}

pub fn two_element_relation_kind(r: &PrimitiveRelation) -> Result<TwoElementKind> {
    if r.len() != 2 {
        return Err(Error::OutsideTrichotomy(format!(
            "collection has {} elements",
            r.len()
        )));
    }
    let entries: Vec<(usize, i64)> = r.coeffs.iter().map(|(&j, &a)| (j, a)).collect();
    match entries.as_slice() {
        [] => Ok(TwoElementKind::Zero),
        [(y, a)] if *a == 1 || *a == 2 => Ok(TwoElementKind::SingleRay { ray: *y, a: *a }),
        [(y1, 1), (y2, 1)] => Ok(TwoElementKind::TwoRays { rays: [*y1, *y2] }),
        _ => Err(Error::OutsideTrichotomy(r.display_indices())),
    }
}

fn is_positive_multiple(v: &[i64], of: &[i64]) -> bool {
    let mut ratio: Option<Rational> = None;
    for (&a, &b) in v.iter().zip(of) {
        match (a == 0, b == 0) {
            (true, true) => continue,
            (true, false) | (false, true) => return false,
            (false, false) => {
                let q = Rational::new(a as i128, b as i128);
                if !q.is_positive() {
                    return false;
                }
                match ratio {
                    None => ratio = Some(q),
                    Some(p) if p != q => return false,
                    _ => {}
                }
            }
        }
    }
    ratio.is_some()
}

/// Whether `cls` spans an extremal ray of the cone generated by `all`:
/// it must not be a nonnegative combination of the classes in `all` that
/// are not positive multiples of it.
pub fn is_class_extremal(cls: &[i64], all: &[&[i64]]) -> bool {
    if cls.iter().all(|&c| c == 0) {
        return false;
    }
    let others: Vec<Vec<i128>> = all
        .iter()
        .filter(|c| !is_positive_multiple(c, cls))
        .map(|c| c.iter().map(|&x| x as i128).collect())
        .collect();
    let target: Vec<i128> = cls.iter().map(|&x| x as i128).collect();
    lp::in_cone(&others, &target).is_none()
}

/// Extremality flags aligned with `relations`.
pub fn extremal_flags(relations: &[PrimitiveRelation]) -> Vec<bool> {
    let all: Vec<&[i64]> = relations.iter().map(|r| r.cls.as_slice()).collect();
    relations.iter().map(|r| is_class_extremal(&r.cls, &all)).collect()
}

/// Whether `r.cls` spans an extremal ray of the Mori cone of `f`.
pub fn is_extremal(f: &Fan, r: &PrimitiveRelation) -> Result<bool> {
    let relations = primitive_collections(f)?;
    let all: Vec<&[i64]> = relations.iter().map(|r| r.cls.as_slice()).collect();
    Ok(is_class_extremal(&r.cls, &all))
}

/// Linear relation attached to a wall (a codimension-one cone shared by two
/// maximal cones): `u + u' = Σ b_w w` over the wall generators `w`, where
/// `u, u'` are the rays opposite the wall.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WallRelation {
    pub wall: Vec<usize>,
    pub opposite: [usize; 2],
    pub coeffs: BTreeMap<usize, i64>,
}

impl WallRelation {
    /// Intersection of `-K` with the torus-invariant curve of the wall.
    pub fn anticanonical_degree(&self) -> i64 {
        2 - self.coeffs.values().sum::<i64>()
    }
}

pub fn wall_relation(f: &Fan, wall: &[usize]) -> Result<WallRelation> {
    let wall = Cone::new(wall.to_vec());
    if wall.len() + 1 != f.dim() {
        return Err(Error::MalformedFan(format!("{:?} is not a wall", wall.rays())));
    }
    let owners: Vec<&Cone> = f.max_cones().iter().filter(|c| c.is_superset_of(wall.rays())).collect();
    let [a, b] = owners.as_slice() else {
        return Err(Error::NotSmoothComplete(format!(
            "wall {:?} lies in {} maximal cones",
            wall.rays(),
            owners.len()
        )));
    };
    let opp = |c: &Cone| *c.rays().iter().find(|r| !wall.contains_ray(**r)).expect("maximal cone");
    let (u, w) = (opp(a), opp(b));
    let sum = f.ray(u) + f.ray(w);
    let x = solve_rational(&f.generator_matrix(&wall), &sum)?
        .ok_or_else(|| Error::NotSmoothComplete(format!("cones on wall {:?} are not opposite", wall.rays())))?;
    let coeffs = wall
        .rays()
        .iter()
        .zip(&x)
        .filter(|(_, q)| !q.is_zero())
        .map(|(&r, q)| {
            if !q.is_integer() {
                return Err(Error::NotSmoothComplete("non-integral wall relation".into()));
            }
            Ok((r, q.to_integer() as i64))
        })
        .collect::<Result<_>>()?;
    Ok(WallRelation {
        wall: wall.rays().to_vec(),
        opposite: [u.min(w), u.max(w)],
        coeffs,
    })
}
