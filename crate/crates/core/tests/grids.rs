use baldom::exact_solver::{backtracking_enumerate, enumerate_bdfs, gamma_bd};
use baldom::generators::grid;
use baldom::grid_analysis::{
    all_bdfs_by_propagation, antidiagonal_violations, classify, corner_zero_forcing, gamma_bd_grid,
    schemes_for, seed_configuration, Corner, GridLabeling, GridScheme, SchemeType, P1, P2, P3,
    SEED_CONFIGURATIONS,
};
use baldom::Limits;

fn from_pattern(p: [[i8; 4]; 4]) -> GridLabeling {
    GridLabeling::from_rows(&p.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
}

fn nonzero(m: usize, n: usize) -> Vec<GridLabeling> {
    all_bdfs_by_propagation(m, n, 2).unwrap().into_iter().filter(|g| !g.is_zero()).collect()
}

#[test]
fn propagation_matches_kernel_and_search() {
    let limits = Limits::default();
    for m in 1..=6 {
        for n in 1..=6 {
            let prop: Vec<_> = all_bdfs_by_propagation(m, n, 1).unwrap().iter().map(GridLabeling::to_labeling).collect();
            let g = grid(m, n).unwrap();
            let mut kern = enumerate_bdfs(&g, &limits).unwrap();
            kern.sort();
            let mut prop_sorted = prop.clone();
            prop_sorted.sort();
            assert_eq!(prop_sorted, kern, "{m}x{n}");
            if m * n <= 16 {
                assert_eq!(backtracking_enumerate(&g, &limits).unwrap(), kern, "{m}x{n}");
            }
        }
    }
}

#[test]
fn grids_are_d_balanced() {
    for m in 1..=8 {
        for n in m..=8 {
            let r = gamma_bd_grid(m, n, 2).unwrap();
            assert_eq!(r.gamma, 0, "{m}x{n}");
            assert!(r.d_balanced);
        }
    }
    assert_eq!(gamma_bd(&grid(5, 5).unwrap(), &Limits::default()).unwrap().gamma, 0);
}

#[test]
fn four_by_four_patterns() {
    let found = nonzero(4, 4);
    let mut expected: Vec<GridLabeling> =
        [P1, P2, P3].into_iter().flat_map(|p| [from_pattern(p), from_pattern(p).negated()]).collect();
    expected.sort();
    assert_eq!(found, expected);
    assert_eq!(from_pattern(P2).transpose(), from_pattern(P3));
    assert_eq!(from_pattern(P1).transpose(), from_pattern(P1).negated());
}

#[test]
fn nonzero_bdfs_only_in_scheme_classes() {
    for m in 1..=8 {
        for n in 1..=8 {
            let found = nonzero(m, n);
            if schemes_for(m, n).is_empty() {
                assert!(found.is_empty(), "{m}x{n} has unexpected BDFs");
            }
            for lab in &found {
                let schemes = classify(lab).unwrap();
                assert!(!schemes.is_empty(), "{m}x{n} unclassified:\n{}", lab.to_text());
                for s in &schemes {
                    assert_eq!(&s.instantiate(n).unwrap(), lab);
                }
            }
        }
    }
}

#[test]
fn every_scheme_instantiates_to_a_bdf() {
    for m in 1..=14 {
        for n in 1..=14 {
            for s in schemes_for(m, n) {
                let lab = s.instantiate(n).unwrap();
                assert!(lab.is_bdf(), "{} on {m}x{n}", s.scheme_type);
                assert_eq!(lab.weight(), 0);
                assert_eq!(classify(&lab).unwrap(), vec![s.clone()]);
            }
        }
    }
}

#[test]
fn transposed_schemes_swap_types() {
    let t1 = GridScheme::build(SchemeType::Type1_1, 3, 5).unwrap().instantiate(5).unwrap();
    let types: Vec<_> = classify(&t1.transpose()).unwrap().iter().map(|s| s.scheme_type).collect();
    assert_eq!(types, vec![SchemeType::Type2_1]);
    let layout: Vec<String> = classify(&t1.transpose()).unwrap()[0].to_json().layout;
    assert_eq!(layout, vec!["B2", "0", "B2"]);
}

#[test]
fn scheme_layouts() {
    let s = GridScheme::build(SchemeType::Type1_1, 5, 8).unwrap();
    assert_eq!(s.to_json().layout, vec!["B1", "0", "-B1", "0", "B1"]);
    let s = GridScheme::build(SchemeType::Type3_2(2), 9, 9).unwrap();
    assert_eq!(s.to_json().layout, vec!["-B4(2)", "0", "-B4(2)"]);
    assert_eq!(s.to_json().scheme_type, "Type3_2(2)");
    assert!(GridScheme::build(SchemeType::Type2_1, 4, 5).is_err());
}

#[test]
fn corner_zero_forcing_on_enumerated_bdfs() {
    for m in 3..=7 {
        for n in m..=8 {
            for lab in all_bdfs_by_propagation(m, n, 2).unwrap() {
                for c in Corner::ALL {
                    assert!(corner_zero_forcing(&lab, c).unwrap());
                }
            }
        }
    }
    assert!(corner_zero_forcing(&GridLabeling::zeros(2, 5), Corner::TopLeft).is_err());
}

#[test]
fn large_grid_seeds_and_antidiagonals() {
    for (m, n) in [(8, 9), (9, 9), (8, 11), (9, 11), (9, 14), (8, 13), (11, 11)] {
        let found = nonzero(m, n);
        assert!(!found.is_empty(), "{m}x{n}");
        for lab in &found {
            let seed = seed_configuration(lab);
            assert!(SEED_CONFIGURATIONS.contains(&seed), "{m}x{n} seed {seed:?}");
            assert_eq!(antidiagonal_violations(lab).unwrap(), Vec::<String>::new(), "{m}x{n}");
            assert!(!classify(lab).unwrap().is_empty());
        }
    }
}

#[test]
fn antidiagonal_checks_reject_non_bdfs() {
    let mut rows = vec![vec![0i8; 8]; 8];
    rows[0][0] = 1;
    assert!(antidiagonal_violations(&GridLabeling::from_rows(&rows).unwrap()).is_err());
}
