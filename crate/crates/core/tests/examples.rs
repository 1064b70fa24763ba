macro_rules! example {
    ($module:ident, $file:literal, $test:ident) => {
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }

        #[test]
        fn $test() {
            $module::run_example().expect(concat!($file, " should run"));
        }
    };
}

example!(validate_fan, "validate_fan.rs", validate_fan_runs);
example!(primitive_relations, "primitive_relations.rs", primitive_relations_runs);
example!(weakened_fano, "weakened_fano.rs", weakened_fano_runs);
example!(anticanonical_degree, "anticanonical_degree.rs", anticanonical_degree_runs);
example!(fan_isomorphism, "fan_isomorphism.rs", fan_isomorphism_runs);
example!(catalog_tour, "catalog_tour.rs", catalog_tour_runs);
example!(classify_surfaces, "classify_surfaces.rs", classify_surfaces_runs);
example!(classify_threefolds, "classify_threefolds.rs", classify_threefolds_runs);
