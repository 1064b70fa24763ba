//! Named fans: the 16 smooth toric weak del Pezzo surfaces and the 15
//! toric weakened Fano 3-folds.
//!
//! Names are ASCII: `P2`, `P1xP1`, `F1`, `F2`, `S7`, `S6` and `W3` to `W7`
//! for surfaces (superscripts become a trailing `_k`, so W¹₄ is `W4_1`);
//! `P1xS` for products and `X3_0`, `X4_0`, `X4_1`, `X5_1` for the four
//! 3-folds that are not products.

use serde::Serialize;

use crate::classify::{build_bundle, BundleSpec};
use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::lattice::{IntMatrix, LatticeVector, UniMatrix};

/// Invariants a named fan is known to have.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Expected {
    pub num_rays: usize,
    pub picard_number: usize,
    pub anticanonical_degree: Option<i64>,
    pub is_fano: bool,
    /// Catalog name of the fibre for surface bundles over P¹.
    pub bundle_fiber: Option<&'static str>,
}

#[derive(Clone, Debug)]
pub struct NamedFan {
    pub name: String,
    pub fan: Fan,
    pub expected: Expected,
}

type SurfaceRow = (&'static str, &'static [[i64; 2]], bool);

/// Generators of the 16 surfaces in table order, with the Fano flag.
const SURFACES: [SurfaceRow; 16] = [
    ("P2", &[[1, 0], [0, 1], [-1, -1]], true),
    ("P1xP1", &[[1, 0], [-1, 0], [0, 1], [0, -1]], true),
    ("F1", &[[1, 0], [-1, 0], [0, 1], [1, -1]], true),
    ("F2", &[[1, 0], [-1, 0], [1, 1], [1, -1]], false),
    ("S7", &[[1, 0], [-1, 0], [0, 1], [0, -1], [1, 1]], true),
    ("W3", &[[1, 0], [-1, 0], [1, 1], [1, -1], [0, 1]], false),
    ("S6", &[[1, 0], [-1, 0], [0, 1], [0, -1], [1, 1], [-1, -1]], true),
    ("W4_1", &[[1, 0], [-1, 0], [0, 1], [0, -1], [1, 1], [1, -1]], false),
    ("W4_2", &[[1, 0], [-1, 0], [1, 1], [1, -1], [0, 1], [-1, 1]], false),
    ("W4_3", &[[1, 0], [-1, 0], [1, 1], [1, -1], [0, 1], [1, 2]], false),
    ("W5_1", &[[1, 0], [-1, 0], [0, 1], [0, -1], [1, 1], [1, -1], [-1, 1]], false),
    ("W5_2", &[[1, 0], [-1, 0], [0, 1], [0, -1], [1, 1], [1, -1], [1, -2]], false),
    (
        "W6_1",
        &[[1, 0], [-1, 0], [0, 1], [0, -1], [1, 1], [1, -1], [-1, 1], [-1, -1]],
        false,
    ),
    (
        "W6_2",
        &[[1, 0], [-1, 0], [0, 1], [0, -1], [1, 1], [1, -1], [1, -2], [-1, 1]],
        false,
    ),
    (
        "W6_3",
        &[[1, 0], [-1, 0], [0, 1], [0, -1], [1, 1], [1, -1], [1, 2], [1, -2]],
        false,
    ),
    (
        "W7",
        &[[1, 0], [-1, 0], [0, 1], [0, -1], [1, 1], [1, -1], [1, -2], [-1, 1], [-2, 1]],
        false,
    ),
];

fn rays2(rows: &[[i64; 2]]) -> Vec<LatticeVector> {
    rows.iter().map(|r| LatticeVector::from(*r)).collect()
}

fn named_surface(name: &'static str, rays: &[[i64; 2]], fano: bool) -> NamedFan {
    let fan = Fan::complete_2d(rays2(rays)).expect("table generators form a complete fan");
    let n = rays.len();
    NamedFan {
        name: name.to_string(),
        fan,
        expected: Expected {
            num_rays: n,
            picard_number: n - 2,
            anticanonical_degree: Some(12 - n as i64),
            is_fano: fano,
            bundle_fiber: None,
        },
    }
}

/// The 16 smooth toric weak del Pezzo surfaces, in table order.
pub fn surfaces() -> Vec<NamedFan> {
    SURFACES
        .iter()
        .map(|&(name, rays, fano)| named_surface(name, rays, fano))
        .collect()
}

pub fn surface(name: &str) -> Option<NamedFan> {
    SURFACES
        .iter()
        .find(|(n, _, _)| *n == name)
        .map(|&(name, rays, fano)| named_surface(name, rays, fano))
}

/// The eleven weak del Pezzo surfaces that are not del Pezzo.
pub fn non_fano_surface_names() -> Vec<&'static str> {
    SURFACES.iter().filter(|s| !s.2).map(|s| s.0).collect()
}

fn p1_times(name: &'static str) -> NamedFan {
    let s = surface(name).expect("known surface");
    let fan = build_bundle(&BundleSpec {
        fiber: s.fan.clone(),
        twist_plus: LatticeVector::zero(2),
        twist_minus: LatticeVector::zero(2),
    })
    .expect("products are smooth complete");
    let n = s.fan.num_rays();
    NamedFan {
        name: format!("P1x{name}"),
        fan,
        expected: Expected {
            num_rays: n + 2,
            picard_number: n - 1,
            // (-K_{P1 x S})^3 = 3 * 2 * (-K_S)^2
            anticanonical_degree: Some(6 * (12 - n as i64)),
            is_fano: false,
            bundle_fiber: Some(name),
        },
    }
}

/// Builds a surface bundle from generators given in the normal-form
/// coordinates of a (0,2)-type contraction. `to_bundle` sends those
/// coordinates to fibre ⊕ base coordinates; rays are returned in the given
/// order.
fn bundle_from_generators(gens: &[[i64; 3]], to_bundle: &UniMatrix) -> Result<Fan> {
    let mapped: Vec<LatticeVector> = gens.iter().map(|g| to_bundle.apply(&LatticeVector::from(*g))).collect();
    let fiber_rays: Vec<LatticeVector> = mapped
        .iter()
        .filter(|v| v[2] == 0)
        .map(|v| LatticeVector::new(v.coords()[..2].to_vec()))
        .collect();
    let section = |t: i64| -> Result<LatticeVector> {
        let hits: Vec<&LatticeVector> = mapped.iter().filter(|v| v[2] == t).collect();
        match hits.as_slice() {
            [v] => Ok(LatticeVector::new(v.coords()[..2].to_vec())),
            _ => Err(Error::Internal(format!("expected one ray at base height {t}"))),
        }
    };
    let spec = BundleSpec {
        fiber: Fan::complete_2d(fiber_rays)?,
        twist_plus: section(1)?,
        twist_minus: section(-1)?,
    };
    let bundle = build_bundle(&spec)
        .ok_or_else(|| Error::Internal("bundle fan failed validation".into()))?;
    let back = bundle.transform(&to_bundle.inverse());
    let order: Vec<usize> = gens
        .iter()
        .map(|g| {
            back.ray_index(&LatticeVector::from(*g))
                .ok_or_else(|| Error::Internal("generator lost in bundle construction".into()))
        })
        .collect::<Result<_>>()?;
    Ok(back.reorder_rays(&order))
}

const X0: [i64; 3] = [1, 0, 0];
const X_PLUS: [i64; 3] = [1, 1, 0];
const X_MINUS: [i64; 3] = [1, -1, 0];
const Y_PLUS: [i64; 3] = [0, 0, 1];

fn y_minus(a: i64) -> [i64; 3] {
    [0, a, -1]
}

fn swap_last_two() -> UniMatrix {
    UniMatrix::new(IntMatrix::from_rows(&[vec![1, 0, 0], vec![0, 0, 1], vec![0, 1, 0]]))
        .expect("permutation matrix")
}

fn threefold(name: &str, gens: &[[i64; 3]], to_bundle: &UniMatrix, degree: i64, fiber: &'static str) -> NamedFan {
    let fan = bundle_from_generators(gens, to_bundle).expect("catalog 3-fold construction");
    NamedFan {
        name: name.to_string(),
        expected: Expected {
            num_rays: gens.len(),
            picard_number: gens.len() - 3,
            anticanonical_degree: Some(degree),
            is_fano: false,
            bundle_fiber: Some(fiber),
        },
        fan,
    }
}

/// X⁰₃: `E ≅ P¹×P¹`, fibres in the plane of `x₀` and `y±`.
pub fn x3_0() -> NamedFan {
    let z1 = [-1, 0, 1];
    threefold(
        "X3_0",
        &[X0, X_PLUS, X_MINUS, Y_PLUS, y_minus(0), z1],
        &swap_last_two(),
        52,
        "F1",
    )
}

/// X⁰₄: X⁰₃ with `z₂ = (-1,0,0)` added.
pub fn x4_0() -> NamedFan {
    let (z1, z2) = ([-1, 0, 1], [-1, 0, 0]);
    threefold(
        "X4_0",
        &[X0, X_PLUS, X_MINUS, Y_PLUS, y_minus(0), z1, z2],
        &swap_last_two(),
        38,
        "S7",
    )
}

/// X¹₄: `E ≅ F₁`, fibres in the plane of `x₀` and `x±`.
pub fn x4_1() -> NamedFan {
    let (z1, z2) = ([0, 1, 0], [-1, 0, 0]);
    threefold(
        "X4_1",
        &[X0, X_PLUS, X_MINUS, Y_PLUS, y_minus(1), z1, z2],
        &UniMatrix::identity(3),
        46,
        "W3",
    )
}

/// X¹₅: X¹₄ with `z₃ = (0,-1,0)` added.
pub fn x5_1() -> NamedFan {
    let (z1, z2, z3) = ([0, 1, 0], [-1, 0, 0], [0, -1, 0]);
    threefold(
        "X5_1",
        &[X0, X_PLUS, X_MINUS, Y_PLUS, y_minus(1), z1, z2, z3],
        &UniMatrix::identity(3),
        36,
        "W4_1",
    )
}

/// The 15 toric weakened Fano 3-folds: eleven products `P¹ × S` followed
/// by X⁰₃, X⁰₄, X¹₄, X¹₅.
pub fn threefolds() -> Vec<NamedFan> {
    let mut out: Vec<NamedFan> = non_fano_surface_names().into_iter().map(p1_times).collect();
    out.extend([x3_0(), x4_0(), x4_1(), x5_1()]);
    out
}

/// Every named fan, surfaces first.
pub fn all() -> Vec<NamedFan> {
    let mut v = surfaces();
    v.extend(threefolds());
    v
}

pub fn lookup(name: &str) -> Result<NamedFan> {
    all()
        .into_iter()
        .find(|n| n.name == name)
        .ok_or_else(|| Error::UnknownCatalogName(name.to_string()))
}

/// P¹ × P¹ × P¹, the trivial bundle with fibre P¹ × P¹.
pub fn p1_cubed() -> Fan {
    p1_times("P1xP1").fan
}

/// P¹ × S₆.
pub fn p1_times_s6() -> Fan {
    p1_times("S6").fan
}

/// P(O ⊕ O(3)) over P², weak Fano with a divisor contracted to a point.
pub fn p2_bundle_o3() -> Fan {
    let p2 = surface("P2").expect("P2").fan;
    let rays = vec![
        LatticeVector::from([1, 0, 0]),
        LatticeVector::from([0, 1, 0]),
        LatticeVector::from([-1, -1, 3]),
        LatticeVector::from([0, 0, 1]),
        LatticeVector::from([0, 0, -1]),
    ];
    let mut cones = Vec::new();
    for c in p2.max_cones() {
        for s in [3, 4] {
            let mut r = c.rays().to_vec();
            r.push(s);
            cones.push(r.into());
        }
    }
    Fan::new(3, rays, cones).expect("well formed")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_validity() {
        let s = surfaces();
        assert_eq!(s.len(), 16);
        assert_eq!(s.iter().filter(|n| n.expected.is_fano).count(), 5);
        for n in &s {
            assert!(n.fan.validate().is_valid(), "{}", n.name);
            assert_eq!(n.fan.num_rays(), n.expected.num_rays);
        }
        let t = threefolds();
        assert_eq!(t.len(), 15);
        for n in &t {
            assert!(n.fan.validate().is_valid(), "{}", n.name);
            assert_eq!(n.fan.picard_number(), n.expected.picard_number, "{}", n.name);
        }
    }

    #[test]
    fn listed_generators_are_kept() {
        let x = x4_1();
        assert_eq!(x.fan.ray(4), &LatticeVector::from([0, 1, -1]));
        assert_eq!(x.fan.ray(6), &LatticeVector::from([-1, 0, 0]));
        let x = x3_0();
        assert_eq!(x.fan.ray(5), &LatticeVector::from([-1, 0, 1]));
        assert_eq!(x.fan.num_rays(), 6);
    }

    #[test]
    fn lookup_names() {
        assert!(lookup("X3_0").is_ok());
        assert!(lookup("P1xW7").is_ok());
        assert!(matches!(lookup("X9_9"), Err(Error::UnknownCatalogName(_))));
    }

    #[test]
    fn reference_fans_are_valid() {
        assert!(p2_bundle_o3().validate().is_valid());
        assert!(p1_cubed().validate().is_valid());
        assert!(p1_times_s6().validate().is_valid());
    }
}
