//! Simplicial fans in `Z^d` and their validation.
//!
//! A fan is stored as its ray list `G(Σ)` and its maximal cones, each cone
//! being a sorted list of ray indices. Lower-dimensional cones are faces of
//! maximal ones and are computed on demand.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{complete_to_basis, determinant, solve_rational, IntMatrix, LatticeVector, UniMatrix};
use crate::lp;

/// A cone of a fan, given by the sorted indices of its rays.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Cone(Vec<usize>);

impl Cone {
    pub fn new(mut rays: Vec<usize>) -> Self {
        rays.sort_unstable();
        rays.dedup();
        Cone(rays)
    }

    pub fn rays(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains_ray(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn is_superset_of(&self, rays: &[usize]) -> bool {
        rays.iter().all(|&r| self.contains_ray(r))
    }

    /// The cone with ray `i` removed.
    pub fn without(&self, i: usize) -> Cone {
        Cone(self.0.iter().copied().filter(|&r| r != i).collect())
    }
}

impl From<Vec<usize>> for Cone {
    fn from(v: Vec<usize>) -> Self {
        Cone::new(v)
    }
}

/// Strictness of a cone membership test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strictness {
    /// The closed cone.
    Boundary,
    /// The relative interior.
    RelativeInterior,
}

/// Rational polyhedral fan given by rays and maximal cones.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fan {
    dim: usize,
    rays: Vec<LatticeVector>,
    max_cones: Vec<Cone>,
}

#[derive(Serialize, Deserialize)]
struct FanJson {
    dim: usize,
    rays: Vec<Vec<i64>>,
    max_cones: Vec<Vec<usize>>,
}

impl Fan {
    /// Builds a fan after checking the shape of the data: ray dimensions,
    /// index ranges and cone sizes. Geometric conditions (primitivity,
    /// smoothness, completeness) are left to [`Fan::validate`].
    pub fn new(dim: usize, rays: Vec<LatticeVector>, max_cones: Vec<Cone>) -> Result<Self> {
        if let Some(v) = rays.iter().find(|v| v.dim() != dim) {
            return Err(Error::MalformedFan(format!(
                "ray {v} has dimension {}, fan has dimension {dim}",
                v.dim()
            )));
        }
        for (k, c) in max_cones.iter().enumerate() {
            if let Some(&i) = c.rays().iter().find(|&&i| i >= rays.len()) {
                return Err(Error::MalformedFan(format!("cone {k} references missing ray {i}")));
            }
            if c.len() != dim {
                return Err(Error::MalformedFan(format!(
                    "cone {k} has {} rays, maximal cones need {dim}",
                    c.len()
                )));
            }
        }
        Ok(Fan { dim, rays, max_cones })
    }

    /// The complete 2-dimensional fan whose maximal cones join angularly
    /// consecutive rays. Rays are kept in the given order.
    pub fn complete_2d(rays: Vec<LatticeVector>) -> Result<Self> {
        if rays.len() < 3 {
            return Err(Error::MalformedFan("a complete 2-fan needs at least 3 rays".into()));
        }
        let mut order: Vec<usize> = (0..rays.len()).collect();
        order.sort_by(|&a, &b| angular_cmp(&rays[a], &rays[b]));
        let cones = (0..order.len())
            .map(|k| Cone::new(vec![order[k], order[(k + 1) % order.len()]]))
            .collect();
        Fan::new(2, rays, cones)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn ray(&self, i: usize) -> &LatticeVector {
        &self.rays[i]
    }

    pub fn num_rays(&self) -> usize {
        self.rays.len()
    }

    pub fn max_cones(&self) -> &[Cone] {
        &self.max_cones
    }

    /// Picard number `#rays - d` of the smooth complete variety.
    pub fn picard_number(&self) -> usize {
        self.rays.len().saturating_sub(self.dim)
    }

    pub fn ray_index(&self, v: &LatticeVector) -> Option<usize> {
        self.rays.iter().position(|r| r == v)
    }

    pub fn generators(&self, c: &Cone) -> Vec<&LatticeVector> {
        c.rays().iter().map(|&i| &self.rays[i]).collect()
    }

    pub fn generator_matrix(&self, c: &Cone) -> IntMatrix {
        IntMatrix::from_columns(self.dim, &self.generators(c))
    }

    /// True iff the rays with these indices span a cone of the fan.
    pub fn is_face(&self, rays: &[usize]) -> bool {
        self.max_cones.iter().any(|c| c.is_superset_of(rays))
    }

    /// Membership of `v` in the cone `c` (closed or relatively open).
    pub fn contains(&self, c: &Cone, v: &LatticeVector, strictness: Strictness) -> bool {
        if c.is_empty() {
            return v.is_zero();
        }
        let coords = match solve_rational(&self.generator_matrix(c), v) {
            Ok(Some(x)) => x,
            _ => return false,
        };
        match strictness {
            Strictness::Boundary => coords.iter().all(|q| !q.is_negative()),
            Strictness::RelativeInterior => coords.iter().all(|q| q.is_positive()),
        }
    }

    /// Same fan with every ray mapped by `m`.
    pub fn transform(&self, m: &UniMatrix) -> Fan {
        Fan {
            dim: self.dim,
            rays: self.rays.iter().map(|v| m.apply(v)).collect(),
            max_cones: self.max_cones.clone(),
        }
    }

    /// Same fan with rays listed in a new order: `order[k]` is the old
    /// index of the new ray `k`.
    pub fn reorder_rays(&self, order: &[usize]) -> Fan {
        assert_eq!(order.len(), self.rays.len());
        let mut new_index = vec![0; order.len()];
        for (k, &old) in order.iter().enumerate() {
            new_index[old] = k;
        }
        Fan {
            dim: self.dim,
            rays: order.iter().map(|&i| self.rays[i].clone()).collect(),
            max_cones: self
                .max_cones
                .iter()
                .map(|c| Cone::new(c.rays().iter().map(|&i| new_index[i]).collect()))
                .collect(),
        }
    }

    /// Maximal cones containing ray `i`.
    pub fn star(&self, i: usize) -> Result<Vec<Cone>> {
        if i >= self.rays.len() {
            return Err(Error::RayNotFound(i));
        }
        Ok(self.max_cones.iter().filter(|c| c.contains_ray(i)).cloned().collect())
    }

    /// Fan of the toric divisor of ray `i`: the star of the ray projected to
    /// `N / Z·v_i`, written in the basis obtained by completing `v_i` to a
    /// basis of `N`.
    pub fn quotient_fan(&self, i: usize) -> Result<QuotientFan> {
        let star = self.star(i)?;
        let u = complete_to_basis(&self.rays[i])?;
        let mut images: Vec<LatticeVector> = Vec::new();
        let mut source: Vec<usize> = Vec::new();
        let mut cones = Vec::with_capacity(star.len());
        for c in &star {
            let mut idx = Vec::new();
            for &j in c.rays().iter().filter(|&&j| j != i) {
                let img = LatticeVector::new(u.apply(&self.rays[j]).coords()[1..].to_vec());
                if img.is_zero() {
                    return Err(Error::NotSmoothComplete(format!(
                        "ray {j} is parallel to ray {i}"
                    )));
                }
                let img = img.primitive_part();
                let k = match source.iter().position(|&s| s == j) {
                    Some(k) => k,
                    None => {
                        images.push(img);
                        source.push(j);
                        images.len() - 1
                    }
                };
                idx.push(k);
            }
            cones.push(Cone::new(idx));
        }
        let fan = Fan::new(self.dim - 1, images, cones)?;
        Ok(QuotientFan {
            fan,
            source_rays: source,
            basis: u,
        })
    }

    /// Checks primitivity, smoothness and completeness exactly.
    pub fn validate(&self) -> ValidationReport {
        let mut offenses = Vec::new();

        let mut well_formed = true;
        for (i, v) in self.rays.iter().enumerate() {
            if v.is_zero() || v.content() != 1 {
                well_formed = false;
                offenses.push(Offense::ray(i, Reason::NonPrimitiveRay));
            }
        }
        let mut seen = BTreeMap::new();
        for (i, v) in self.rays.iter().enumerate() {
            if let Some(&j) = seen.get(v) {
                well_formed = false;
                offenses.push(Offense {
                    cones: vec![],
                    rays: vec![j, i],
                    reason: Reason::DuplicateRay,
                });
            } else {
                seen.insert(v, i);
            }
        }
        for i in 0..self.rays.len() {
            if !self.max_cones.iter().any(|c| c.contains_ray(i)) {
                well_formed = false;
                offenses.push(Offense::ray(i, Reason::UnusedRay));
            }
        }
        let mut cone_set = BTreeMap::new();
        for (k, c) in self.max_cones.iter().enumerate() {
            if let Some(&prev) = cone_set.get(c) {
                well_formed = false;
                offenses.push(Offense::cones(vec![prev, k], Reason::DuplicateCone));
            } else {
                cone_set.insert(c, k);
            }
        }

        let mut is_simplicial = true;
        let mut is_smooth = true;
        for (k, c) in self.max_cones.iter().enumerate() {
            let det = determinant(&self.generator_matrix(c)).expect("maximal cones are square");
            if det == 0 {
                is_simplicial = false;
                is_smooth = false;
                offenses.push(Offense::cones(vec![k], Reason::DependentRays));
            } else if det.abs() != 1 {
                is_smooth = false;
                offenses.push(Offense::cones(vec![k], Reason::NotUnimodular));
            }
        }

        let mut is_complete = is_simplicial && !self.max_cones.is_empty();
        if is_simplicial {
            // every facet of every maximal cone must be shared by exactly two cones
            let mut facets: BTreeMap<Cone, Vec<usize>> = BTreeMap::new();
            for (k, c) in self.max_cones.iter().enumerate() {
                for &r in c.rays() {
                    facets.entry(c.without(r)).or_default().push(k);
                }
            }
            for (facet, owners) in &facets {
                match owners.len() {
                    2 => {}
                    1 => {
                        is_complete = false;
                        offenses.push(Offense {
                            cones: owners.clone(),
                            rays: facet.rays().to_vec(),
                            reason: Reason::UnmatchedFacet,
                        });
                    }
                    _ => {
                        is_complete = false;
                        offenses.push(Offense {
                            cones: owners.clone(),
                            rays: facet.rays().to_vec(),
                            reason: Reason::OvermatchedFacet,
                        });
                    }
                }
            }
            for a in 0..self.max_cones.len() {
                for b in a + 1..self.max_cones.len() {
                    if !self.intersect_properly(&self.max_cones[a], &self.max_cones[b]) {
                        is_complete = false;
                        offenses.push(Offense::cones(vec![a, b], Reason::ImproperIntersection));
                    }
                }
            }
        }

        ValidationReport {
            is_well_formed: well_formed,
            is_simplicial,
            is_smooth,
            is_complete,
            offending: offenses,
        }
    }

    /// Errors unless the fan is well formed, smooth and complete.
    pub fn ensure_smooth_complete(&self) -> Result<()> {
        let report = self.validate();
        if report.is_valid() {
            Ok(())
        } else {
            Err(Error::NotSmoothComplete(report.summary()))
        }
    }

    /// For simplicial cones: the intersection is the cone on the shared rays.
    fn intersect_properly(&self, a: &Cone, b: &Cone) -> bool {
        // find λ, μ >= 0 with Σ λ_i a_i - Σ μ_j b_j = 0 and weight 1 on
        // the non-shared generators; such a point witnesses overlap
        let only_a: Vec<usize> = a.rays().iter().copied().filter(|&r| !b.contains_ray(r)).collect();
        let only_b: Vec<usize> = b.rays().iter().copied().filter(|&r| !a.contains_ray(r)).collect();
        let shared: Vec<usize> = a.rays().iter().copied().filter(|&r| b.contains_ray(r)).collect();
        let d = self.dim;
        let mut columns: Vec<Vec<i128>> = Vec::new();
        for &r in &only_a {
            let mut col: Vec<i128> = self.rays[r].coords().iter().map(|&x| x as i128).collect();
            col.push(1);
            columns.push(col);
        }
        for &r in &only_b {
            let mut col: Vec<i128> = self.rays[r].coords().iter().map(|&x| -(x as i128)).collect();
            col.push(1);
            columns.push(col);
        }
        for &r in &shared {
            // shared generators may carry different weights on each side
            let plus: Vec<i128> = self.rays[r].coords().iter().map(|&x| x as i128).chain([0]).collect();
            let minus: Vec<i128> = plus.iter().map(|x| -x).collect();
            columns.push(plus);
            columns.push(minus);
        }
        let mut target = vec![0i128; d];
        target.push(1);
        lp::in_cone(&columns, &target).is_none()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.as_json()).expect("fan serialises")
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self.as_json()).expect("fan serialises")
    }

    fn as_json(&self) -> FanJson {
        FanJson {
            dim: self.dim,
            rays: self.rays.iter().map(|v| v.coords().to_vec()).collect(),
            max_cones: self.max_cones.iter().map(|c| c.rays().to_vec()).collect(),
        }
    }

    pub fn from_json(s: &str) -> Result<Fan> {
        let raw: FanJson = serde_json::from_str(s)?;
        Fan::from_raw(raw)
    }

    pub fn from_json_value(v: serde_json::Value) -> Result<Fan> {
        Fan::from_raw(serde_json::from_value(v)?)
    }

    fn from_raw(raw: FanJson) -> Result<Fan> {
        Fan::new(
            raw.dim,
            raw.rays.into_iter().map(LatticeVector::new).collect(),
            raw.max_cones.into_iter().map(Cone::new).collect(),
        )
    }
}

impl fmt::Display for Fan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "fan(d={}; rays", self.dim)?;
        for v in &self.rays {
            write!(f, " {v}")?;
        }
        write!(f, "; {} cones)", self.max_cones.len())
    }
}

/// Result of [`Fan::quotient_fan`].
#[derive(Clone, Debug)]
pub struct QuotientFan {
    pub fan: Fan,
    /// `source_rays[k]` is the index in the parent fan of quotient ray `k`.
    pub source_rays: Vec<usize>,
    /// Basis change sending the contracted ray to `e_0`.
    pub basis: UniMatrix,
}

/// Angular order on nonzero plane vectors, starting at the positive x-axis.
pub fn angular_cmp(a: &LatticeVector, b: &LatticeVector) -> Ordering {
    fn half(v: &LatticeVector) -> u8 {
        if v[1] > 0 || (v[1] == 0 && v[0] > 0) {
            0
        } else {
            1
        }
    }
    half(a).cmp(&half(b)).then_with(|| {
        let cross = a[0] as i128 * b[1] as i128 - a[1] as i128 * b[0] as i128;
        0.cmp(&cross)
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Reason {
    NonPrimitiveRay,
    DuplicateRay,
    UnusedRay,
    DuplicateCone,
    DependentRays,
    NotUnimodular,
    UnmatchedFacet,
    OvermatchedFacet,
    ImproperIntersection,
}

impl Reason {
    pub fn describe(self) -> &'static str {
        match self {
            Reason::NonPrimitiveRay => "non-primitive ray",
            Reason::DuplicateRay => "duplicate ray",
            Reason::UnusedRay => "ray in no maximal cone",
            Reason::DuplicateCone => "duplicate maximal cone",
            Reason::DependentRays => "not simplicial",
            Reason::NotUnimodular => "not smooth",
            Reason::UnmatchedFacet => "not complete: facet on the boundary",
            Reason::OvermatchedFacet => "not complete: facet shared by more than two cones",
            Reason::ImproperIntersection => "not complete: cones overlap",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Offense {
    pub cones: Vec<usize>,
    pub rays: Vec<usize>,
    pub reason: Reason,
}

impl Offense {
    fn ray(i: usize, reason: Reason) -> Self {
        Offense {
            cones: vec![],
            rays: vec![i],
            reason,
        }
    }

    fn cones(cones: Vec<usize>, reason: Reason) -> Self {
        Offense {
            cones,
            rays: vec![],
            reason,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub is_well_formed: bool,
    pub is_simplicial: bool,
    pub is_smooth: bool,
    pub is_complete: bool,
    pub offending: Vec<Offense>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.is_well_formed && self.is_simplicial && self.is_smooth && self.is_complete
    }

    /// Distinct reasons, in order of first occurrence.
    pub fn reasons(&self) -> Vec<&'static str> {
        let mut out: Vec<&'static str> = Vec::new();
        for o in &self.offending {
            let d = o.reason.describe();
            if !out.contains(&d) {
                out.push(d);
            }
        }
        out
    }

    pub fn summary(&self) -> String {
        if self.is_valid() {
            "smooth complete".into()
        } else {
            self.reasons().join("; ")
        }
    }
}
