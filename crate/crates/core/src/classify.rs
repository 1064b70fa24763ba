//! Enumerations that recover the two classification lists.
//!
//! Surfaces: closure of {P², P¹×P¹, F₂} under toric blow-ups that keep the
//! surface weak Fano. 3-folds: surface bundles over P¹ with fibre among the
//! 16 weak del Pezzo surfaces and bounded twists, filtered by the weakened
//! Fano predicate. Both are deduplicated by [`canonical_key`].

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::catalog::{self, NamedFan};
use crate::contraction::{self, ContractionKind, WeakenedVerdict};
use crate::fan::{Cone, Fan};
use crate::isomorphism::{canonical_key, find_isomorphism};
use crate::lattice::{determinant, IntMatrix, LatticeVector};
use crate::polytope;
use crate::primitive;

pub const DEFAULT_TWIST_BOUND: i64 = 3;

/// A surface bundle over P¹: the fibre fan sits in `Z² × {0}` and the two
/// section rays are `(twist_plus, 1)` and `(twist_minus, -1)`.
#[derive(Clone, Debug)]
pub struct BundleSpec {
    pub fiber: Fan,
    pub twist_plus: LatticeVector,
    pub twist_minus: LatticeVector,
}

/// The bundle fan of `spec`, or `None` if it fails validation.
pub fn build_bundle(spec: &BundleSpec) -> Option<Fan> {
    let fan = bundle_fan(spec)?;
    fan.validate().is_valid().then_some(fan)
}

/// Unvalidated bundle fan. Smooth and complete whenever the fibre is.
fn bundle_fan(spec: &BundleSpec) -> Option<Fan> {
    let fiber = &spec.fiber;
    if fiber.dim() != 2 || spec.twist_plus.dim() != 2 || spec.twist_minus.dim() != 2 {
        return None;
    }
    let n = fiber.num_rays();
    let mut rays: Vec<LatticeVector> = fiber.rays().iter().map(|v| v.extend(&[0])).collect();
    rays.push(spec.twist_plus.extend(&[1]));
    rays.push(spec.twist_minus.extend(&[-1]));
    let mut cones = Vec::with_capacity(2 * fiber.max_cones().len());
    for section in [n, n + 1] {
        for c in fiber.max_cones() {
            let mut r = c.rays().to_vec();
            r.push(section);
            cones.push(Cone::new(r));
        }
    }
    Fan::new(3, rays, cones).ok()
}

/// A projection `h` exhibiting `f` as a toric surface bundle over P¹: every
/// cone maps into `h >= 0` or `h <= 0`, exactly one ray on each side (at
/// `h = ±1`), and the rays in `ker h` form a complete smooth 2-fan (the
/// fibre).
#[derive(Clone, Debug)]
pub struct BundleProjection {
    pub functional: LatticeVector,
    pub fiber: Fan,
}

pub fn bundle_projection(f: &Fan) -> Option<BundleProjection> {
    bundle_projections(f).into_iter().next()
}

/// Every projection onto P¹ up to sign, in a deterministic order.
pub fn bundle_projections(f: &Fan) -> Vec<BundleProjection> {
    let mut out = Vec::new();
    if f.dim() != 3 {
        return out;
    }
    let mut tried: Vec<LatticeVector> = Vec::new();
    for i in 0..f.num_rays() {
        for j in i + 1..f.num_rays() {
            let (u, v) = (f.ray(i), f.ray(j));
            let cross = LatticeVector::new(vec![
                u[1] * v[2] - u[2] * v[1],
                u[2] * v[0] - u[0] * v[2],
                u[0] * v[1] - u[1] * v[0],
            ]);
            if cross.is_zero() {
                continue;
            }
            let h = cross.primitive_part();
            if tried.contains(&h) || tried.contains(&(-&h)) {
                continue;
            }
            tried.push(h.clone());
            out.extend(check_projection(f, &h));
        }
    }
    out
}

fn check_projection(f: &Fan, h: &LatticeVector) -> Option<BundleProjection> {
    let vals: Vec<i128> = f.rays().iter().map(|v| v.dot(h.coords())).collect();
    let pos: Vec<usize> = (0..vals.len()).filter(|&k| vals[k] > 0).collect();
    let neg: Vec<usize> = (0..vals.len()).filter(|&k| vals[k] < 0).collect();
    if pos.len() != 1 || neg.len() != 1 || vals[pos[0]] != 1 || vals[neg[0]] != -1 {
        return None;
    }
    if f
        .max_cones()
        .iter()
        .any(|c| c.contains_ray(pos[0]) && c.contains_ray(neg[0]))
    {
        return None;
    }
    // coordinates on ker h: a basis (b1, b2) completed by any w with h(w) = 1
    let w = f.ray(pos[0]);
    let kernel: Vec<usize> = (0..vals.len()).filter(|&k| vals[k] == 0).collect();
    let (b1, b2) = kernel.iter().find_map(|&a| {
        kernel.iter().find_map(|&b| {
            let m = IntMatrix::from_columns(3, &[f.ray(a), f.ray(b), w]);
            (determinant(&m).ok()?.abs() == 1).then_some((a, b))
        })
    })?;
    let to_std = crate::lattice::UniMatrix::to_standard_basis(&[f.ray(b1), f.ray(b2), w]).ok()?;
    let fiber_rays: Vec<LatticeVector> = kernel
        .iter()
        .map(|&k| LatticeVector::new(to_std.apply(f.ray(k)).coords()[..2].to_vec()))
        .collect();
    let fiber = Fan::complete_2d(fiber_rays).ok()?;
    // fibre cones must be exactly the kernel faces of the maximal cones
    let fiber_ok = fiber.max_cones().iter().all(|c| {
        let orig: Vec<usize> = c.rays().iter().map(|&k| kernel[k]).collect();
        f.is_face(&orig)
    });
    (fiber_ok && fiber.validate().is_valid()).then(|| BundleProjection {
        functional: h.clone(),
        fiber,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassInvariants {
    pub num_rays: usize,
    pub picard_number: usize,
    pub anticanonical_degree: Option<i64>,
    pub is_fano: bool,
    /// Catalog names of the fibres of every projection onto P¹.
    pub bundle_fibers: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassEntry {
    pub canonical_key: String,
    pub name: Option<String>,
    #[serde(serialize_with = "serialize_fan")]
    pub fan: Fan,
    pub invariants: ClassInvariants,
}

fn serialize_fan<S: serde::Serializer>(f: &Fan, s: S) -> Result<S::Ok, S::Error> {
    f.to_json_value().serialize(s)
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub count: usize,
    /// Sorted by canonical key.
    pub classes: Vec<ClassEntry>,
    /// Canonical key of every matched class to its catalog name.
    pub matched_names: BTreeMap<String, String>,
    /// Catalog entries no enumerated class matched.
    pub unmatched_catalog: Vec<String>,
    pub scope: String,
}

impl ClassificationReport {
    pub fn names(&self) -> Vec<String> {
        let mut v: Vec<String> = self.classes.iter().filter_map(|c| c.name.clone()).collect();
        v.sort();
        v
    }

    pub fn keys(&self) -> Vec<String> {
        self.classes.iter().map(|c| c.canonical_key.clone()).collect()
    }

    /// Whether enumerated classes and catalog entries match one to one.
    pub fn is_bijective(&self) -> bool {
        self.unmatched_catalog.is_empty() && self.classes.iter().all(|c| c.name.is_some())
    }

    /// Plain-text table: name, rays, Picard number, degree, fibre.
    pub fn table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{:<10} {:>5} {:>4} {:>6}  fiber", "name", "rays", "rho", "(-K)^d");
        for c in &self.classes {
            let _ = writeln!(
                s,
                "{:<10} {:>5} {:>4} {:>6}  {}",
                c.name.as_deref().unwrap_or("?"),
                c.invariants.num_rays,
                c.invariants.picard_number,
                c.invariants
                    .anticanonical_degree
                    .map_or("-".to_string(), |d| d.to_string()),
                if c.invariants.bundle_fibers.is_empty() {
                    "-".to_string()
                } else {
                    c.invariants.bundle_fibers.join(",")
                },
            );
        }
        let _ = writeln!(s, "{} classes", self.count);
        s
    }
}

fn key_string(f: &Fan) -> String {
    String::from_utf8(canonical_key(f)).expect("keys are ascii")
}

/// Fibre names over all projections, deduplicated, in catalog order.
pub fn fiber_names(f: &Fan, surfaces: &[NamedFan]) -> Vec<String> {
    let fibers: Vec<Fan> = bundle_projections(f).into_iter().map(|p| p.fiber).collect();
    surfaces
        .iter()
        .filter(|s| fibers.iter().any(|g| find_isomorphism(g, &s.fan).is_some()))
        .map(|s| s.name.clone())
        .collect()
}

fn report(found: BTreeMap<String, Fan>, catalog: &[NamedFan], surfaces: &[NamedFan], scope: &str) -> ClassificationReport {
    let catalog_keys: Vec<(String, &NamedFan)> = catalog.iter().map(|n| (key_string(&n.fan), n)).collect();
    let mut classes = Vec::new();
    let mut matched_names = BTreeMap::new();
    for (key, fan) in found {
        let name = catalog_keys
            .iter()
            .find(|(k, _)| *k == key)
            .map(|(_, n)| n.name.clone());
        let rels = primitive::primitive_collections(&fan).unwrap_or_default();
        let weak = rels.iter().all(|r| r.degree >= 0);
        let invariants = ClassInvariants {
            num_rays: fan.num_rays(),
            picard_number: fan.picard_number(),
            anticanonical_degree: if weak { polytope::anticanonical_degree(&fan).ok() } else { None },
            is_fano: rels.iter().all(|r| r.degree > 0),
            bundle_fibers: if fan.dim() == 3 { fiber_names(&fan, surfaces) } else { Vec::new() },
        };
        if let Some(n) = &name {
            matched_names.insert(key.clone(), n.clone());
        }
        classes.push(ClassEntry {
            canonical_key: key,
            name,
            fan,
            invariants,
        });
    }
    let unmatched_catalog = catalog
        .iter()
        .filter(|n| !matched_names.values().any(|m| *m == n.name))
        .map(|n| n.name.clone())
        .collect();
    ClassificationReport {
        count: classes.len(),
        classes,
        matched_names,
        unmatched_catalog,
        scope: scope.to_string(),
    }
}

/// Toric blow-up of a complete 2-fan at the cone `(i, j)`.
pub fn blow_up_surface(f: &Fan, i: usize, j: usize) -> Option<Fan> {
    if f.dim() != 2 || !f.is_face(&[i, j]) || i == j {
        return None;
    }
    let mut rays = f.rays().to_vec();
    rays.push(f.ray(i) + f.ray(j));
    Fan::complete_2d(rays).ok()
}

/// Closure of the given seeds under weak-Fano-preserving blow-ups,
/// keyed by canonical key.
pub fn weak_del_pezzo_closure(seeds: &[Fan]) -> BTreeMap<String, Fan> {
    let mut found: BTreeMap<String, Fan> = BTreeMap::new();
    let mut queue: Vec<Fan> = Vec::new();
    for s in seeds {
        if primitive::is_weak_fano(s).unwrap_or(false) && found.insert(key_string(s), s.clone()).is_none() {
            queue.push(s.clone());
        }
    }
    while let Some(f) = queue.pop() {
        for c in f.max_cones() {
            let [i, j] = c.rays() else { continue };
            let Some(g) = blow_up_surface(&f, *i, *j) else { continue };
            if !primitive::is_weak_fano(&g).unwrap_or(false) {
                continue;
            }
            if let std::collections::btree_map::Entry::Vacant(e) = found.entry(key_string(&g)) {
                e.insert(g.clone());
                queue.push(g);
            }
        }
    }
    found
}

pub fn minimal_seeds() -> Vec<Fan> {
    ["P2", "P1xP1", "F2"]
        .iter()
        .map(|n| catalog::surface(n).expect("seed surface").fan)
        .collect()
}

/// All smooth toric weak del Pezzo surfaces up to isomorphism.
pub fn enumerate_weak_del_pezzo() -> ClassificationReport {
    let found = weak_del_pezzo_closure(&minimal_seeds());
    let surfaces = catalog::surfaces();
    report(
        found,
        &surfaces,
        &surfaces,
        "blow-up closure of P2, P1xP1, F2 within weak Fano surfaces",
    )
}

/// Candidate bundles: every fibre among the 16 surfaces and every pair of
/// twists in `[-bound, bound]²`.
pub fn bundle_candidates(twist_bound: i64) -> impl Iterator<Item = BundleSpec> {
    let surfaces = catalog::surfaces();
    let range: Vec<LatticeVector> = (-twist_bound..=twist_bound)
        .flat_map(|a| (-twist_bound..=twist_bound).map(move |b| LatticeVector::from([a, b])))
        .collect();
    surfaces.into_iter().flat_map(move |s| {
        let range = range.clone();
        let fiber = s.fan;
        range.clone().into_iter().flat_map(move |wp| {
            let fiber = fiber.clone();
            range.clone().into_iter().map(move |wm| BundleSpec {
                fiber: fiber.clone(),
                twist_plus: wp.clone(),
                twist_minus: wm,
            })
        })
    })
}

/// Bundle classes whose verdict passes `keep`, keyed by canonical key.
pub fn enumerate_bundles<F>(twist_bound: i64, keep: F) -> BTreeMap<String, Fan>
where
    F: Fn(&WeakenedVerdict) -> bool,
{
    let mut found = BTreeMap::new();
    for spec in bundle_candidates(twist_bound) {
        let Some(fan) = bundle_fan(&spec) else { continue };
        let Ok(verdict) = contraction::verdict_for_valid(&fan) else { continue };
        if keep(&verdict) {
            found.entry(key_string(&fan)).or_insert(fan);
        }
    }
    found
}

/// Toric weakened Fano 3-folds among surface bundles over P¹ with twists
/// bounded by `twist_bound`.
pub fn enumerate_weakened_threefolds(twist_bound: i64) -> ClassificationReport {
    let found = enumerate_bundles(twist_bound, |v| v.is_weakened);
    report(
        found,
        &catalog::threefolds(),
        &catalog::surfaces(),
        &format!("surface bundles over P1 (products included), fibre among the 16 weak del Pezzo surfaces, twists in [-{twist_bound},{twist_bound}]^2"),
    )
}

#[derive(Clone, Debug, Serialize)]
pub struct Assertion {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub assertions: Vec<Assertion>,
    pub all_passed: bool,
}

impl VerificationReport {
    pub fn failures(&self) -> Vec<&Assertion> {
        self.assertions.iter().filter(|a| !a.passed).collect()
    }
}

/// Known anticanonical degrees of the four 3-folds that are not products.
pub const STATED_DEGREES: [(&str, i64); 4] = [("X3_0", 52), ("X4_0", 38), ("X4_1", 46), ("X5_1", 36)];

/// Runs both enumerations and checks them against the built-in catalog.
pub fn verify_classification(twist_bound: i64) -> VerificationReport {
    verify_against(&catalog::surfaces(), &catalog::threefolds(), twist_bound)
}

/// [`verify_classification`] against an explicit catalog.
pub fn verify_against(surfaces: &[NamedFan], threefolds: &[NamedFan], twist_bound: i64) -> VerificationReport {
    verify_found(
        weak_del_pezzo_closure(&minimal_seeds()),
        enumerate_bundles(twist_bound, |v| v.is_weakened),
        surfaces,
        threefolds,
    )
}

/// Checks already enumerated classes against a catalog.
pub fn verify_reports(
    surface_report: &ClassificationReport,
    threefold_report: &ClassificationReport,
    surfaces: &[NamedFan],
    threefolds: &[NamedFan],
) -> VerificationReport {
    let found = |r: &ClassificationReport| {
        r.classes
            .iter()
            .map(|c| (c.canonical_key.clone(), c.fan.clone()))
            .collect()
    };
    verify_found(found(surface_report), found(threefold_report), surfaces, threefolds)
}

fn verify_found(
    found_surfaces: BTreeMap<String, Fan>,
    found_threefolds: BTreeMap<String, Fan>,
    surfaces: &[NamedFan],
    threefolds: &[NamedFan],
) -> VerificationReport {
    let mut out: Vec<Assertion> = Vec::new();
    let mut check = |name: &str, passed: bool, detail: String| {
        out.push(Assertion {
            name: name.to_string(),
            passed,
            detail,
        })
    };

    let s = report(
        found_surfaces,
        surfaces,
        &catalog::surfaces(),
        "surfaces",
    );
    check("surface_count_is_16", s.count == 16, format!("{} classes", s.count));
    check(
        "surface_classes_match_catalog",
        s.is_bijective() && s.count == surfaces.len(),
        format!("{} classes, {} catalog entries, unmatched {:?}", s.count, surfaces.len(), s.unmatched_catalog),
    );
    let fano = s.classes.iter().filter(|c| c.invariants.is_fano).count();
    check("five_del_pezzo_surfaces", fano == 5, format!("{fano} Fano"));
    let noether = s
        .classes
        .iter()
        .all(|c| c.invariants.anticanonical_degree == Some(12 - c.invariants.num_rays as i64));
    check("surface_degree_is_12_minus_rays", noether, String::new());

    let t = report(
        found_threefolds,
        threefolds,
        &catalog::surfaces(),
        "threefolds",
    );
    check("threefold_count_is_15", t.count == 15, format!("{} classes", t.count));
    check(
        "threefold_classes_match_catalog",
        t.is_bijective() && t.count == threefolds.len(),
        format!(
            "{} classes, {} catalog entries, unmatched {:?}",
            t.count,
            threefolds.len(),
            t.unmatched_catalog
        ),
    );

    for (name, degree) in STATED_DEGREES {
        let got = threefolds
            .iter()
            .find(|n| n.name == name)
            .and_then(|n| polytope::anticanonical_degree(&n.fan).ok());
        check(
            &format!("degree_{name}_is_{degree}"),
            got == Some(degree),
            format!("{got:?}"),
        );
    }

    let mut all_weakened = true;
    let mut zero_two_f2 = Vec::new();
    let mut mixed = Vec::new();
    let fans = threefolds
        .iter()
        .map(|n| (n.name.clone(), n.fan.clone()))
        .chain(t.classes.iter().map(|c| (format!("enumerated:{}", c.name.clone().unwrap_or_default()), c.fan.clone())));
    for (name, fan) in fans {
        let Ok(v) = contraction::is_weakened_fano(&fan) else {
            all_weakened = false;
            continue;
        };
        all_weakened &= v.is_weakened;
        let types = v.zero_two_types();
        if types.contains(&2) {
            zero_two_f2.push(name.clone());
        }
        if types.windows(2).any(|w| w[0] != w[1]) {
            mixed.push(name);
        }
    }
    check("catalog_threefolds_are_weakened", all_weakened, String::new());
    check(
        "no_zero_two_contraction_onto_f2",
        zero_two_f2.is_empty(),
        format!("{zero_two_f2:?}"),
    );
    check("zero_two_types_homogeneous", mixed.is_empty(), format!("{mixed:?}"));

    let bad_fibers: Vec<String> = threefolds
        .iter()
        .filter(|n| {
            n.expected
                .bundle_fiber
                .is_some_and(|e| !fiber_names(&n.fan, &catalog::surfaces()).iter().any(|x| x == e))
        })
        .map(|n| n.name.clone())
        .collect();
    check("bundle_fibres_match_catalog", bad_fibers.is_empty(), format!("{bad_fibers:?}"));

    let mut bad_products = Vec::new();
    for n in threefolds.iter().filter(|n| n.name.starts_with("P1x")) {
        let fiber_rays = n.fan.num_rays() as i64 - 2;
        if polytope::anticanonical_degree(&n.fan).ok() != Some(6 * (12 - fiber_rays)) {
            bad_products.push(n.name.clone());
        }
    }
    check("product_degree_is_6_times_fibre_degree", bad_products.is_empty(), format!("{bad_products:?}"));

    let all_passed = out.iter().all(|a| a.passed);
    VerificationReport {
        assertions: out,
        all_passed,
    }
}

/// Kinds of all crepant contractions over the catalog, for reporting.
pub fn contraction_census(fans: &[NamedFan]) -> BTreeMap<String, Vec<ContractionKind>> {
    fans.iter()
        .filter_map(|n| {
            let v = contraction::is_weakened_fano(&n.fan).ok()?;
            Some((n.name.clone(), v.crepant_contractions.iter().map(|c| c.kind).collect()))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_bundle_is_p1_cubed() {
        let p1xp1 = catalog::surface("P1xP1").unwrap().fan;
        let f = build_bundle(&BundleSpec {
            fiber: p1xp1,
            twist_plus: LatticeVector::zero(2),
            twist_minus: LatticeVector::zero(2),
        })
        .unwrap();
        assert_eq!(f.num_rays(), 6);
        assert!(primitive::is_fano(&f).unwrap());
        assert_eq!(polytope::anticanonical_degree(&f).unwrap(), 48);
        let p = bundle_projection(&f).unwrap();
        assert_eq!(p.fiber.num_rays(), 4);
    }

    #[test]
    fn p2_twisted_bundle_is_not_weakened() {
        let p2 = catalog::surface("P2").unwrap().fan;
        let f = build_bundle(&BundleSpec {
            fiber: p2,
            twist_plus: LatticeVector::zero(2),
            twist_minus: LatticeVector::from([3, 0]),
        })
        .unwrap();
        let v = contraction::is_weakened_fano(&f).unwrap();
        assert!(!v.is_weakened);
    }

    #[test]
    fn blowing_up_p2_gives_f1() {
        let p2 = catalog::surface("P2").unwrap().fan;
        let f1 = catalog::surface("F1").unwrap().fan;
        let g = blow_up_surface(&p2, 0, 1).unwrap();
        assert!(find_isomorphism(&g, &f1).is_some());
    }

    #[test]
    fn projection_rejects_non_bundles() {
        // P^3 has no map onto P^1
        let rays: Vec<LatticeVector> = vec![
            [1, 0, 0].into(),
            [0, 1, 0].into(),
            [0, 0, 1].into(),
            [-1, -1, -1].into(),
        ];
        let cones = vec![
            Cone::new(vec![0, 1, 2]),
            Cone::new(vec![0, 1, 3]),
            Cone::new(vec![0, 2, 3]),
            Cone::new(vec![1, 2, 3]),
        ];
        let p3 = Fan::new(3, rays, cones).unwrap();
        assert!(p3.validate().is_valid());
        assert!(bundle_projection(&p3).is_none());
    }
}
