//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines always reach the terminal.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use torifan::catalog::{self, NamedFan};
use torifan::classify::{self, ClassificationReport};
use torifan::contraction::{is_weakened_fano, ContractionKind};
use torifan::isomorphism::{canonical_key, find_isomorphism};
use torifan::polytope::anticanonical_degree;
use torifan::primitive::{primitive_collections, PrimitiveRelation};
use torifan::{Fan, IntMatrix, UniMatrix};

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(started: Instant, limit: Duration) -> Check {
    let t = started.elapsed();
    ensure(t < limit, || format!("took {t:.2?}, limit {limit:.0?}"))
}

fn relations(f: &Fan) -> Result<Vec<PrimitiveRelation>, String> {
    primitive_collections(f).map_err(|e| e.to_string())
}

fn catalog_threefolds() -> Check {
    let started = Instant::now();
    for n in catalog::threefolds() {
        let v = is_weakened_fano(&n.fan).map_err(|e| format!("{}: {e}", n.name))?;
        ensure(v.is_weakened, || format!("{} is not weakened", n.name))?;
    }
    for (name, f) in [("P1xP1xP1", catalog::p1_cubed()), ("P1xS6", catalog::p1_times_s6())] {
        let v = is_weakened_fano(&f).map_err(|e| e.to_string())?;
        ensure(v.is_fano && !v.is_weakened, || format!("{name}: {v:?}"))?;
    }
    let v = is_weakened_fano(&catalog::p2_bundle_o3()).map_err(|e| e.to_string())?;
    ensure(v.is_weak_fano && !v.is_fano && !v.is_weakened, || format!("P(O+O(3)): {v:?}"))?;
    ensure(
        v.crepant_contractions.iter().any(|c| c.kind == ContractionKind::DivisorToPoint),
        || "P(O+O(3)) has no divisor-to-point contraction".into(),
    )?;
    within(started, Duration::from_secs(5))
}

fn stated_degrees() -> Check {
    for (name, stated) in [("X3_0", 52), ("X4_0", 38), ("X4_1", 46), ("X5_1", 36)] {
        let f = catalog::lookup(name).map_err(|e| e.to_string())?.fan;
        let d = anticanonical_degree(&f).map_err(|e| e.to_string())?;
        ensure(d == stated, || format!("{name}: {d} != {stated}"))?;
        let oracle = common::degree_by_lattice_points(&f);
        ensure(oracle == stated, || format!("{name}: lattice point oracle gives {oracle}"))?;
    }
    for n in catalog::threefolds().iter().filter(|n| n.name.starts_with("P1x")) {
        let fiber_rays = (n.fan.num_rays() - 2) as i64;
        let d = anticanonical_degree(&n.fan).map_err(|e| e.to_string())?;
        let oracle = common::degree_by_lattice_points(&n.fan);
        ensure(d == 6 * (12 - fiber_rays) && d == oracle, || {
            format!("{}: polytope {d}, lattice points {oracle}", n.name)
        })?;
    }
    Ok(())
}

fn surface_classification() -> Result<ClassificationReport, String> {
    let started = Instant::now();
    let r = classify::enumerate_weak_del_pezzo();
    ensure(r.count == 16, || format!("{} classes", r.count))?;
    ensure(r.is_bijective(), || format!("unmatched {:?}", r.unmatched_catalog))?;
    let fano: BTreeSet<String> = r
        .classes
        .iter()
        .filter(|c| c.invariants.is_fano)
        .filter_map(|c| c.name.clone())
        .collect();
    let expect: BTreeSet<String> = ["P2", "P1xP1", "F1", "S7", "S6"].iter().map(|s| s.to_string()).collect();
    ensure(fano == expect, || format!("Fano classes {fano:?}"))?;
    for c in &r.classes {
        let n = c.fan.num_rays() as i64;
        let oracle = common::degree_by_lattice_points(&c.fan);
        ensure(
            c.invariants.anticanonical_degree == Some(12 - n) && oracle == 12 - n,
            || format!("{:?}: degree {:?}, oracle {oracle}", c.name, c.invariants.anticanonical_degree),
        )?;
    }
    within(started, Duration::from_secs(10))?;
    Ok(r)
}

fn threefold_classification() -> Result<ClassificationReport, String> {
    let started = Instant::now();
    let r3 = classify::enumerate_weakened_threefolds(3);
    ensure(r3.count == 15, || format!("{} classes at bound 3", r3.count))?;
    ensure(r3.is_bijective(), || format!("unmatched {:?}", r3.unmatched_catalog))?;
    let r4 = classify::enumerate_weakened_threefolds(4);
    ensure(r3.keys() == r4.keys(), || format!("bound 4 gives {} classes", r4.count))?;
    for c in &r3.classes {
        ensure(classify::bundle_projection(&c.fan).is_some(), || {
            format!("{:?} has no projection onto P1", c.name)
        })?;
    }
    within(started, Duration::from_secs(300))?;
    Ok(r3)
}

fn no_f2_exceptional(fans: &[(String, Fan)]) -> Check {
    for (name, f) in fans {
        let v = is_weakened_fano(f).map_err(|e| e.to_string())?;
        let types = v.zero_two_types();
        ensure(!types.contains(&2), || format!("{name}: ZeroTwo(2)"))?;
        ensure(types.windows(2).all(|w| w[0] == w[1]), || format!("{name}: mixed types {types:?}"))?;
    }
    Ok(())
}

fn trichotomy(f: &Fan, rels: &[PrimitiveRelation]) -> Check {
    for r in rels.iter().filter(|r| r.len() == 2) {
        let a: Vec<i64> = r.coeffs.values().copied().collect();
        let ok = matches!(a.as_slice(), [] | [1] | [2] | [1, 1]);
        ensure(ok, || format!("{r} outside the trichotomy in {}", f.to_json()))?;
    }
    Ok(())
}

fn witness_ray(f: &Fan, rels: &[PrimitiveRelation]) -> Check {
    for r in rels.iter().filter(|r| r.len() == 2 && !r.coeffs.is_empty()) {
        let (x1, x2) = (common::ray(f, r.collection[0]), common::ray(f, r.collection[1]));
        let found = (0..f.num_rays()).any(|k| common::in_open_cone_3d(&x1, &x2, &common::ray(f, k)));
        ensure(found, || format!("no ray inside cone of {r}"))?;
    }
    Ok(())
}

fn properties(instances: &[(String, Fan)], weakened: &[(String, Fan)]) -> Check {
    for (name, f) in instances {
        let rels = relations(f)?;
        let oracle = common::minimal_non_faces(f);
        let got: BTreeSet<Vec<usize>> = rels.iter().map(|r| r.collection.clone()).collect();
        ensure(got == oracle, || format!("{name}: primitive collections differ from brute force"))?;
        for r in &rels {
            ensure(common::relation_identity_holds(f, r), || format!("{name}: {r} does not hold"))?;
            ensure(common::class_vector_ok(f, r), || format!("{name}: class of {r}"))?;
            ensure(
                r.degree == r.cls.iter().sum::<i64>() && r.degree == common::degree_by_definition(r),
                || format!("{name}: degree of {r}"),
            )?;
        }
        if rels.iter().all(|r| r.degree >= 0) {
            trichotomy(f, &rels).map_err(|e| format!("{name}: {e}"))?;
        }
    }
    for (name, f) in weakened {
        witness_ray(f, &relations(f)?).map_err(|e| format!("{name}: {e}"))?;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0x7041_2f1a);
    let pool: Vec<NamedFan> = catalog::all();
    let (mut same, mut different) = (0, 0);
    for _ in 0..100 {
        let a = &pool[rand::Rng::gen_range(&mut rng, 0..pool.len())];
        let d = a.fan.dim();
        let m = common::random_unimodular(&mut rng, d, 12);
        let u = UniMatrix::new(IntMatrix::from_rows(&m)).map_err(|e| e.to_string())?;
        let moved = a.fan.transform(&u);
        let same_dim: Vec<&NamedFan> = pool.iter().filter(|n| n.fan.dim() == d).collect();
        let b = same_dim[rand::Rng::gen_range(&mut rng, 0..same_dim.len())];
        for (g, expect) in [(&a.fan, true), (&b.fan, a.name == b.name)] {
            let keys_agree = canonical_key(&moved) == canonical_key(g);
            let iso = find_isomorphism(&moved, g);
            ensure(keys_agree == iso.is_some() && keys_agree == expect, || {
                format!("{} vs {}: keys {keys_agree}, iso {}", a.name, b.name, iso.is_some())
            })?;
            if let Some(iso) = iso {
                ensure(iso.verify(&moved, g), || format!("{}: witness fails", a.name))?;
            }
            if expect {
                same += 1;
            } else {
                different += 1;
            }
        }
    }
    ensure(same > 0 && different > 0, || "degenerate sample".into())
}

fn round_trip() -> Check {
    for n in catalog::all() {
        let json = n.fan.to_json();
        let back = Fan::from_json(&json).map_err(|e| format!("{}: {e}", n.name))?;
        ensure(back == n.fan && back.to_json() == json, || format!("{} changed", n.name))?;
    }
    Ok(())
}

fn main() {
    let mut failures = 0;
    let mut report = |n: usize, title: &str, outcome: Check| {
        match &outcome {
            Ok(()) => println!("criterion {n}: PASS  {title}"),
            Err(e) => {
                failures += 1;
                println!("criterion {n}: FAIL  {title}: {e}");
            }
        }
    };

    report(1, "catalog 3-folds are weakened, Fano and divisor-to-point controls", catalog_threefolds());
    report(2, "anticanonical degrees 52, 38, 46, 36 and products", stated_degrees());
    let surfaces = surface_classification();
    let surfaces_ok = surfaces.as_ref().map(|_| ()).map_err(Clone::clone);
    report(3, "16 weak del Pezzo surfaces, 5 Fano, (-K)^2 = 12 - n", surfaces_ok);
    let threefolds = threefold_classification();
    let threefolds_ok = threefolds.as_ref().map(|_| ()).map_err(Clone::clone);
    report(4, "15 weakened Fano 3-folds, stable from bound 3 to 4", threefolds_ok);

    let mut weakened: Vec<(String, Fan)> = catalog::threefolds().into_iter().map(|n| (n.name, n.fan)).collect();
    if let Ok(r) = &threefolds {
        weakened.extend(r.classes.iter().map(|c| (format!("found {:?}", c.name), c.fan.clone())));
    }
    report(5, "no (0,2)-type contraction with F2 exceptional divisor, homogeneous types", no_f2_exceptional(&weakened));

    let mut instances: Vec<(String, Fan)> = catalog::all().into_iter().map(|n| (n.name, n.fan)).collect();
    instances.push(("P1xP1xP1".into(), catalog::p1_cubed()));
    instances.push(("P1xS6".into(), catalog::p1_times_s6()));
    instances.push(("P(O+O(3))".into(), catalog::p2_bundle_o3()));
    if let Ok(r) = &surfaces {
        instances.extend(r.classes.iter().map(|c| (format!("found {:?}", c.name), c.fan.clone())));
    }
    report(6, "property suites (a) to (e)", properties(&instances, &weakened));
    report(7, "catalog JSON round trip", round_trip());

    if failures > 0 {
        println!("{failures} acceptance criteria failed");
        std::process::exit(1);
    }
}
