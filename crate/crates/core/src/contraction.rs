//! Crepant extremal contractions of toric 3-folds and the weakened Fano test.
//!
//! An extremal primitive relation of degree zero defines a crepant
//! contraction. A contraction is of (0,2)-type when it contracts a divisor
//! `E ≅ F_a` onto a curve `C̄ ≅ P¹` with `(-K · C̄) = 2`. In fan terms this
//! means the relation reads `x₊ + x₋ = 2 x₀` and, after a change of basis,
//! the star of `x₀` consists of the four cones
//!
//! ```text
//! (x₀,x₊,y₊) (x₀,x₊,y₋) (x₀,x₋,y₊) (x₀,x₋,y₋)
//! x₀=(1,0,0) x₊=(1,1,0) x₋=(1,-1,0) y₊=(0,0,1) y₋=(0,a,-1),  0 <= a <= 2.
//! ```
//!
//! A weak Fano 3-fold that is not Fano is weakened Fano exactly when every
//! crepant extremal contraction has this shape.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fan::{Cone, Fan, Strictness};
use crate::lattice::{LatticeVector, UniMatrix};
use crate::primitive::{self, extremal_flags, wall_relation, PrimitiveRelation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ContractionKind {
    /// Divisor `E ≅ F_a` (the divisor of `exceptional_ray`) onto a curve.
    ZeroTwo { a: i64, exceptional_ray: usize },
    DivisorToPoint,
    Small,
    Other,
}

impl ContractionKind {
    pub fn is_zero_two(&self) -> bool {
        matches!(self, ContractionKind::ZeroTwo { .. })
    }
}

/// Basis change realising the (0,2)-type normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroTwoWitness {
    pub matrix: UniMatrix,
    pub x0: usize,
    pub x_plus: usize,
    pub x_minus: usize,
    pub y_plus: usize,
    pub y_minus: usize,
    pub a: i64,
}

impl ZeroTwoWitness {
    /// Re-checks the normal form on the transformed fan.
    pub fn verify(&self, f: &Fan) -> bool {
        let img = |i: usize| self.matrix.apply(f.ray(i));
        let expect = [
            (self.x0, LatticeVector::from([1, 0, 0])),
            (self.x_plus, LatticeVector::from([1, 1, 0])),
            (self.x_minus, LatticeVector::from([1, -1, 0])),
            (self.y_plus, LatticeVector::from([0, 0, 1])),
            (self.y_minus, LatticeVector::from([0, self.a, -1])),
        ];
        let rays_ok = expect.iter().all(|(i, v)| img(*i) == *v);
        let cones_ok = [self.x_plus, self.x_minus].iter().all(|&x| {
            [self.y_plus, self.y_minus]
                .iter()
                .all(|&y| f.max_cones().contains(&Cone::new(vec![self.x0, x, y])))
        });
        rays_ok && cones_ok && (0..=2).contains(&self.a)
    }
}

/// Type `a` of a Hirzebruch surface fan: four rays `±u, w₁, w₂` with
/// `w₁ + w₂ = a u`. `None` for any other 2-dimensional fan.
pub fn hirzebruch_type(f: &Fan) -> Option<i64> {
    if f.dim() != 2 || f.num_rays() != 4 || !f.validate().is_valid() {
        return None;
    }
    let adjacent = |i: usize, j: usize| f.is_face(&[i, j]);
    let mut best: Option<i64> = None;
    for i in 0..4 {
        let Some(j) = (0..4).find(|&j| j != i && !adjacent(i, j)) else {
            continue;
        };
        if !(f.ray(i) + f.ray(j)).is_zero() {
            continue;
        }
        let others: Vec<usize> = (0..4).filter(|&k| k != i && k != j).collect();
        let s = f.ray(others[0]) + f.ray(others[1]);
        let u = f.ray(i);
        // s must be a multiple of u
        let c = if u[0] != 0 { s[0] / u[0] } else { s[1] / u[1] };
        if u.scale(c) != s {
            continue;
        }
        let a = c.abs();
        best = Some(best.map_or(a, |b: i64| b.min(a)));
    }
    best
}

fn check_three_dim(f: &Fan) -> Result<()> {
    if f.dim() != 3 {
        return Err(Error::UnsupportedDimension {
            expected: 3,
            found: f.dim(),
        });
    }
    Ok(())
}

/// Classifies the crepant contraction of an extremal degree-0 relation.
pub fn classify_contraction(f: &Fan, r: &PrimitiveRelation) -> Result<ContractionKind> {
    check_three_dim(f)?;
    if r.degree != 0 {
        return Err(Error::NotCrepantExtremal(format!("degree is {}", r.degree)));
    }
    if !primitive::is_extremal(f, r)? {
        return Err(Error::NotCrepantExtremal(format!("{} is not extremal", r.display_indices())));
    }
    Ok(classify_shape(f, r))
}

/// Shape dispatch without the degree and extremality preconditions.
fn classify_shape(f: &Fan, r: &PrimitiveRelation) -> ContractionKind {
    let coeffs: Vec<(usize, i64)> = r.coeffs.iter().map(|(&j, &a)| (j, a)).collect();
    match (r.len(), coeffs.as_slice()) {
        (2, [(x0, 2)]) => match zero_two_witness(f, r) {
            Some(w) => ContractionKind::ZeroTwo {
                a: w.a,
                exceptional_ray: *x0,
            },
            None => ContractionKind::Other,
        },
        (3, [(_, 3)]) => ContractionKind::DivisorToPoint,
        (2, [(y1, 1), (y2, 1)]) => {
            let span = Cone::new(r.collection.clone());
            let contained = [y1, y2]
                .iter()
                .all(|&&y| f.contains(&span, f.ray(y), Strictness::Boundary));
            if contained {
                ContractionKind::Other
            } else {
                ContractionKind::Small
            }
        }
        _ => ContractionKind::Other,
    }
}

/// Detects the (0,2)-type configuration for a relation `x₊ + x₋ = 2 x₀`
/// and returns the basis change to the normal form.
pub fn zero_two_witness(f: &Fan, r: &PrimitiveRelation) -> Option<ZeroTwoWitness> {
    if f.dim() != 3 || r.len() != 2 || r.coeffs.len() != 1 {
        return None;
    }
    let (&x0, &two) = r.coeffs.iter().next()?;
    if two != 2 {
        return None;
    }
    let (xp, xm) = (r.collection[0], r.collection[1]);
    let star = f.star(x0).ok()?;
    if star.len() != 4
        || !star
            .iter()
            .all(|c| c.contains_ray(xp) != c.contains_ray(xm))
    {
        return None;
    }
    let quotient = f.quotient_fan(x0).ok()?;
    if quotient.fan.num_rays() != 4 {
        return None;
    }
    let a_quotient = hirzebruch_type(&quotient.fan)?;
    if a_quotient > 2 {
        return None;
    }
    // the curve of the wall (x0, x+) maps onto the image curve; its
    // anticanonical degree must be 2
    if wall_relation(f, &[x0, xp]).ok()?.anticanonical_degree() != 2 {
        return None;
    }
    let ys: Vec<usize> = quotient
        .source_rays
        .iter()
        .copied()
        .filter(|&s| s != xp && s != xm)
        .collect();
    let [y1, y2] = ys.as_slice() else {
        return None;
    };
    for (x_plus, x_minus) in [(xp, xm), (xm, xp)] {
        for (y_plus, y_minus) in [(*y1, *y2), (*y2, *y1)] {
            let e2 = f.ray(x_plus) - f.ray(x0);
            let Ok(m) = UniMatrix::to_standard_basis(&[f.ray(x0), &e2, f.ray(y_plus)]) else {
                continue;
            };
            let img = m.apply(f.ray(y_minus));
            if img[0] != 0 || img[2] != -1 || !(0..=2).contains(&img[1]) {
                continue;
            }
            let w = ZeroTwoWitness {
                matrix: m,
                x0,
                x_plus,
                x_minus,
                y_plus,
                y_minus,
                a: img[1],
            };
            if w.verify(f) {
                debug_assert_eq!(w.a, a_quotient);
                return Some(w);
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrepantContraction {
    pub relation: PrimitiveRelation,
    pub kind: ContractionKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeakenedVerdict {
    pub is_weak_fano: bool,
    pub is_fano: bool,
    /// Every extremal degree-0 primitive relation with its contraction kind.
    pub crepant_contractions: Vec<CrepantContraction>,
    pub is_weakened: bool,
}

impl WeakenedVerdict {
    pub fn zero_two_types(&self) -> Vec<i64> {
        self.crepant_contractions
            .iter()
            .filter_map(|c| match c.kind {
                ContractionKind::ZeroTwo { a, .. } => Some(a),
                _ => None,
            })
            .collect()
    }
}

/// Weakened Fano test for smooth complete 3-folds: weak Fano, not Fano,
/// and every crepant extremal contraction of (0,2)-type.
pub fn is_weakened_fano(f: &Fan) -> Result<WeakenedVerdict> {
    check_three_dim(f)?;
    f.ensure_smooth_complete()?;
    verdict_for_valid(f)
}

/// [`is_weakened_fano`] for a fan already known to be smooth complete.
pub(crate) fn verdict_for_valid(f: &Fan) -> Result<WeakenedVerdict> {
    check_three_dim(f)?;
    let relations = primitive::primitive_collections(f)?;
    let is_weak_fano = relations.iter().all(|r| r.degree >= 0);
    let is_fano = relations.iter().all(|r| r.degree > 0);
    let mut crepant_contractions = Vec::new();
    if is_weak_fano && !is_fano {
        let flags = extremal_flags(&relations);
        for (r, extremal) in relations.iter().zip(flags) {
            if extremal && r.degree == 0 {
                crepant_contractions.push(CrepantContraction {
                    kind: classify_shape(f, r),
                    relation: r.clone(),
                });
            }
        }
    }
    let is_weakened = is_weak_fano
        && !is_fano
        && crepant_contractions.iter().all(|c| c.kind.is_zero_two());
    Ok(WeakenedVerdict {
        is_weak_fano,
        is_fano,
        crepant_contractions,
        is_weakened,
    })
}
