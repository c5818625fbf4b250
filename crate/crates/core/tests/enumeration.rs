use gradzeta_core::closed::{
    alpha1_window_in, alpha2_window_in, c6_profile_prediction_at, f_k_closed_in, onestep_zeta_in,
    zeta_graded_closed_in, LayerData, C6_PROFILES,
};
use gradzeta_core::counting::AtPrime;
use gradzeta_core::enumerate::*;
use gradzeta_core::lie::GradedLieAlgebra;
use gradzeta_core::{Error, IntPoly, PrimeField};
use num_bigint::BigInt;

fn alg(c: usize, p: u64) -> GradedLieAlgebra {
    GradedLieAlgebra::build_any(c, PrimeField::new(p).unwrap()).unwrap()
}

fn poly(c: &[i64], p: u64) -> BigInt {
    IntPoly::from_i64(c).eval_u64(p)
}

#[test]
fn graded_zeta_matches_closed_form() {
    for c in 2..=5 {
        for p in [2u64, 3, 5] {
            let got = enumerate_graded_zeta(&alg(c, p), Options::default()).unwrap();
            let want = zeta_graded_closed_in(&AtPrime::new(p), c).unwrap();
            assert_eq!(got.coeffs, want.coeffs, "c={c} p={p}");
        }
    }
}

// values confirmed by a separate brute force written outside this crate
#[test]
fn c6_profiles_small_primes() {
    let cases: [([usize; 6], u64, i64); 6] = [
        ([0, 0, 0, 2, 4, 8], 5, 61),
        ([0, 0, 0, 2, 4, 8], 7, 113),
        ([0, 0, 0, 1, 5, 8], 5, 216),
        ([0, 0, 0, 1, 5, 8], 7, 512),
        ([0, 0, 1, 2, 4, 7], 5, 6),
        ([0, 0, 1, 2, 4, 7], 7, 8),
    ];
    for (prof, p, want) in cases {
        assert_eq!(
            count_profile(&alg(6, p), &prof, Options::default()).unwrap(),
            BigInt::from(want),
            "{prof:?} p={p}"
        );
    }
}

#[test]
fn c6_profiles_as_polynomials() {
    for p in [11u64, 13, 17, 19] {
        let a = alg(6, p);
        let count = |m: [usize; 6]| count_profile(&a, &m, Options::default()).unwrap();
        assert_eq!(count([0, 0, 0, 2, 4, 8]), poly(&[1, 2, 2], p), "p={p}");
        assert_eq!(count([0, 0, 0, 1, 5, 8]), poly(&[1, 3, 3, 1], p), "p={p}");
        assert_eq!(count([0, 0, 1, 2, 4, 7]), poly(&[1, 1], p), "p={p}");
        // these two agree with the published formulas
        for m in [[0, 0, 0, 2, 5, 7], [0, 0, 0, 1, 4, 9], [0, 0, 0, 0, 5, 9]] {
            assert_eq!(
                count(m),
                c6_profile_prediction_at(&m, p).unwrap(),
                "{m:?} p={p}"
            );
        }
    }
}

#[test]
fn c6_codim9_is_one_polynomial() {
    let a9 = [5i64, 9, 10, 6, 5, 3, 1];
    for p in [5u64, 7, 11, 13] {
        let (total, parts) = c6_codim9_enumerate(&alg(6, p), Options::default()).unwrap();
        assert_eq!(total, poly(&a9, p), "p={p}");
        let sum: BigInt = parts.iter().map(|x| &x.1).sum();
        assert_eq!(sum, total);
        for prof in C6_PROFILES {
            assert!(
                parts.iter().any(|x| x.0[..] == prof[..]),
                "{prof:?} missing from the breakdown"
            );
        }
    }
    let z = enumerate_graded_zeta(&alg(6, 5), Options::default()).unwrap();
    assert_eq!(z.coeffs[9], BigInt::from(29175));
}

#[test]
fn orbit_weighting_matches_plain() {
    for p in [7u64, 11] {
        let a = alg(6, p);
        let plain = coefficient_by_profiles(&a, 9, Options::default()).unwrap();
        let orb = coefficient_by_profiles(
            &a,
            9,
            Options {
                orbits: true,
                ..Options::default()
            },
        )
        .unwrap();
        assert_eq!(plain, orb, "p={p}");
    }
}

#[test]
fn collapse_counts_match_closed_form() {
    for p in [5u64, 7] {
        let a = alg(6, p);
        let ring = AtPrime::new(p);
        for k in 2..=4 {
            let (d, l) = (a.dim(k), a.l_values()[k - 1]);
            for m in 0..=d {
                let dist = collapse_distribution(&a, k, m, Options::default()).unwrap();
                for (i, n) in dist.iter().enumerate() {
                    assert_eq!(
                        BigInt::from(*n),
                        f_k_closed_in(&ring, d, l, m, i).unwrap(),
                        "k={k} m={m} i={i} p={p}"
                    );
                }
            }
        }
    }
}

#[test]
fn alpha_windows_match_closed_form() {
    for p in [5u64, 7] {
        let a = alg(6, p);
        let (ring, layers) = (AtPrime::new(p), LayerData::from_algebra(&a));
        for k in 1..=4 {
            let got = alpha_window_bruteforce(&a, 1, k, Options::default()).unwrap();
            assert_eq!(
                got,
                alpha1_window_in(&ring, &layers, k).unwrap(),
                "alpha_1 k={k} p={p}"
            );
        }
        for k in [1, 3] {
            let got = alpha_window_bruteforce(&a, 2, k, Options::default()).unwrap();
            assert_eq!(
                got,
                alpha2_window_in(&ring, &layers, k).unwrap(),
                "alpha_2 k={k} p={p}"
            );
        }
        assert_eq!(
            alpha1_window_in(&ring, &layers, 3).unwrap()[3],
            BigInt::from(p + 2)
        );
    }
}

// At p = 5 the two W spaces of layer 5 meet, and the closed form undercounts.
#[test]
fn alpha1_window5_depends_on_w_overlap() {
    let a5 = alg(6, 5);
    assert_eq!(w_intersection_dim(&a5, 5).unwrap(), 2);
    let direct = alpha_window_bruteforce(&a5, 1, 5, Options::default()).unwrap();
    let closed = alpha1_window_in(&AtPrime::new(5), &LayerData::from_algebra(&a5), 5).unwrap();
    assert_ne!(direct, closed);
    let a7 = alg(6, 7);
    assert_eq!(w_intersection_dim(&a7, 5).unwrap(), 0);
    let pairs = alpha1_pair_oracle(&a7, 5, DEFAULT_BUDGET).unwrap();
    assert_eq!(
        pairs,
        alpha1_window_in(&AtPrime::new(7), &LayerData::from_algebra(&a7), 5).unwrap()
    );
}

#[test]
fn pair_oracle_matches_direct() {
    for p in [5u64, 7] {
        let a = alg(5, p);
        for k in 2..=4 {
            let direct = alpha_window_bruteforce(&a, 1, k, Options::default()).unwrap();
            assert_eq!(
                alpha1_pair_oracle(&a, k, DEFAULT_BUDGET).unwrap(),
                direct,
                "k={k} p={p}"
            );
        }
    }
}

#[test]
fn onestep_matches_closed_form() {
    for (c, p) in [(5usize, 11u64), (6, 11), (6, 13), (7, 11), (8, 2)] {
        let a = alg(c, p);
        let (z, _) = onestep_zeta_enumerated(&a, Options::default()).unwrap();
        let want = onestep_zeta_in(&AtPrime::new(p), &LayerData::from_algebra(&a)).unwrap();
        assert_eq!(z.coeffs, want.coeffs, "c={c} p={p}");
    }
}

#[test]
fn onestep_c8_refused_at_p11() {
    let r = onestep_zeta_enumerated(&alg(8, 11), Options::default());
    assert!(matches!(r, Err(Error::BudgetExceeded { .. })));
}
