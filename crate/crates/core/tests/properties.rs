use padelab_core::pade::{block_scan, pade};
use padelab_core::series::{catalog_make, CatalogSpec, HpComplex, PowerSeries};
use proptest::prelude::*;

const PREC: u32 = 256;

fn specs() -> Vec<CatalogSpec> {
    vec![
        CatalogSpec::geometric(),
        CatalogSpec::rational(&["2", "-3"], &["1", "5/2"]),
        CatalogSpec::log_branch("2"),
        CatalogSpec::AlgebraicBranch { b: "3/2".into(), alpha: "1/2".into() },
        CatalogSpec::Exp,
    ]
}

fn series(i: usize) -> PowerSeries {
    catalog_make(&specs()[i]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    /// Inside half the convergence radius, 80 Taylor terms reproduce the
    /// closed-form value to far better than double precision.
    #[test]
    fn partial_sums_match_reference(i in 0usize..5, rho in 0.0f64..0.5, theta in 0.0f64..std::f64::consts::TAU) {
        let f = series(i);
        let r = f.meta().r0.finite().unwrap_or(4.0);
        let z = HpComplex::from_polar_f64(PREC, rho * r, theta);
        let exact = f.reference_eval(&z).unwrap();
        let approx = f.partial_sum(80, &z);
        let err = (&exact - &approx).abs().to_f64();
        prop_assert!(err < 1e-20 * (1.0 + exact.abs().to_f64()), "series {} error {:e}", i, err);
    }

    /// A rational function of type (1, 2) is its own Padé approximant in
    /// every cell with n ≥ 1 and m ≥ 2.
    #[test]
    fn rational_type_is_reproduced(n in 1usize..8, m in 2usize..8, x in -0.9f64..0.9, y in -0.9f64..0.9) {
        let f = series(1);
        let e = pade(&f, n, m).unwrap();
        prop_assert_eq!(e.q.degree(), Some(2));
        prop_assert!(e.p.degree().unwrap() <= 1);
        let z = HpComplex::from_f64(PREC, x, y);
        let diff = (&e.eval(&z) - &f.reference_eval(&z).unwrap()).abs().to_f64();
        prop_assert!(diff < 1e-60, "({}, {}) differs by {:e}", n, m, diff);
    }
}

#[test]
fn catalog_tables_tile_into_blocks() {
    for (i, spec) in specs().iter().enumerate() {
        let f = series(i);
        let scan = block_scan(&f, 12, 12).unwrap_or_else(|e| panic!("{}: {e}", spec.kind_name()));
        for n in 0..12 {
            for m in 0..12 {
                let b = scan.block_of(n, m);
                assert!(scan.entry(n, m).same_fraction(scan.entry(b.anchor.0, b.anchor.1)));
            }
        }
    }
}

#[test]
fn lacunary_table_tiles_into_blocks() {
    let f = catalog_make(&CatalogSpec::lemniscate_example()).unwrap();
    let scan = block_scan(&f, 12, 12).unwrap();
    // The first gap (6, 7] makes π_{6,0} = π_{7,0}.
    assert!(scan.entry(6, 0).same_fraction(scan.entry(7, 0)));
    assert!(scan.blocks.iter().any(|b| b.extent >= 2));
}
