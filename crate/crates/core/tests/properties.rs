use gradzeta_core::closed::{zeta_graded_closed, zeta_graded_closed_in};
use gradzeta_core::counting::{
    count_intersecting, g_count, g_table_bruteforce, gaussian_binomial, AtPrime,
};
use gradzeta_core::enumerate::{enumerate_graded_zeta, Options, Strategy as Walk, Tally};
use gradzeta_core::lie::{GradedLieAlgebra, TensorVector};
use gradzeta_core::scan::{primes_in, scan, FitStatus};
use gradzeta_core::subspace::enumerate_subspaces;
use gradzeta_core::{FpMatrix, IntPoly, PrimeField, Subspace};
use num_bigint::BigInt;
use proptest::prelude::*;

fn small_prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 5, 7, 11, 13])
}

fn matrix(p: u64, rows: usize, cols: usize, seed: &[u32]) -> FpMatrix {
    let f = PrimeField::new(p).unwrap();
    let data = (0..rows * cols)
        .map(|i| seed[i % seed.len()].wrapping_mul(i as u32 + 1) % p as u32)
        .collect();
    FpMatrix::from_vec(f, rows, cols, data).unwrap()
}

fn random_vector(f: PrimeField, weight: usize, seed: &[u32]) -> TensorVector {
    let coords = (0..1usize << weight)
        .map(|i| seed[i % seed.len()].wrapping_add(i as u32 * 7) % f.p())
        .collect();
    TensorVector::from_coords(f, weight, coords).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_of_transpose(p in small_prime(), r in 1usize..7, c in 1usize..7, seed in prop::collection::vec(0u32..1000, 1..40)) {
        let m = matrix(p, r, c, &seed);
        prop_assert_eq!(m.rank(), m.transpose().rank());
        prop_assert_eq!(m.rank() + m.right_kernel().rows(), c);
        prop_assert!(m.mul(&m.right_kernel().transpose()).unwrap().is_zero());
    }

    #[test]
    fn sum_and_intersection_dims(p in small_prime(), d in 1usize..7, a in prop::collection::vec(0u32..1000, 1..30), b in prop::collection::vec(0u32..1000, 1..30)) {
        let u = Subspace::span(&matrix(p, (a.len() % d) + 1, d, &a));
        let v = Subspace::span(&matrix(p, (b.len() % d) + 1, d, &b));
        let s = u.sum(&v).unwrap();
        let i = u.intersect(&v).unwrap();
        prop_assert_eq!(u.dim() + v.dim(), s.dim() + i.dim());
        prop_assert!(u.contains(&i) && v.contains(&i));
        prop_assert!(s.contains(&u) && s.contains(&v));
    }

    #[test]
    fn subspace_count_is_gaussian_binomial(p in prop::sample::select(vec![2u64, 3, 5]), d in 0usize..5, m in 0usize..5) {
        prop_assume!(m <= d);
        let f = PrimeField::new(p).unwrap();
        let n = enumerate_subspaces(f, d, m).count();
        prop_assert_eq!(BigInt::from(n), gaussian_binomial(d as i64, m as i64).eval_u64(p));
    }

    #[test]
    fn bracket_antisymmetric_and_jacobi(p in small_prime(), wa in 1usize..4, wb in 1usize..4, wc in 1usize..4, seed in prop::collection::vec(0u32..1000, 1..20)) {
        let f = PrimeField::new(p).unwrap();
        let x = random_vector(f, wa, &seed);
        let y = random_vector(f, wb, &seed[1..].iter().chain(&seed[..1]).copied().collect::<Vec<_>>());
        let z = random_vector(f, wc, &seed.iter().rev().copied().collect::<Vec<_>>());
        prop_assert!(x.bracket(&y).add(&y.bracket(&x)).is_zero());
        let jac = x.bracket(&y.bracket(&z)).add(&y.bracket(&z.bracket(&x))).add(&z.bracket(&x.bracket(&y)));
        prop_assert!(jac.is_zero());
    }

    #[test]
    fn scan_recovers_polynomials(coeffs in prop::collection::vec(-60i64..60, 1..6)) {
        let poly = IntPoly::from_i64(&coeffs);
        let deg = coeffs.len() - 1;
        let samples: Vec<(u64, BigInt)> = primes_in(5, 200).into_iter().take(deg + 3).map(|p| (p, poly.eval_u64(p))).collect();
        let r = scan(&samples, 1, deg).unwrap();
        prop_assert!(r.uniform);
        prop_assert_eq!(&r.classes[0].status, &FitStatus::Fitted(poly));
    }

    #[test]
    fn tally_merge_commutes(xs in prop::collection::vec((0usize..5, 0usize..5, 0u64..100), 0..10), ys in prop::collection::vec((0usize..5, 0usize..5, 0u64..100), 0..10)) {
        let build = |v: &[(usize, usize, u64)]| {
            let mut t = Tally::default();
            for &(a, r, n) in v {
                *t.hist.entry((a, r)).or_default() += n as u128;
                *t.direct.entry(a).or_default() += n as u128;
                t.nodes += 1;
            }
            t
        };
        let (a, b) = (build(&xs), build(&ys));
        let mut ab = a.clone();
        ab.merge(&b);
        let mut ba = b.clone();
        ba.merge(&a);
        prop_assert_eq!(&ab, &ba);
        let both: Vec<_> = xs.iter().chain(&ys).copied().collect();
        prop_assert_eq!(ab, build(&both));
    }

    #[test]
    fn intersecting_counts_sum_to_binomial(d in 0i64..7, l in 0i64..7, m in 0i64..7, p in small_prime()) {
        prop_assume!(l <= d && m <= d);
        let total: BigInt = (0..=m).map(|s| count_intersecting(d, l, m, s).eval_u64(p)).sum();
        prop_assert_eq!(total, gaussian_binomial(d, m).eval_u64(p));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn strategies_and_orbits_agree(c in 2usize..5, p in prop::sample::select(vec![2u64, 3, 5])) {
        let a = GradedLieAlgebra::build_any(c, PrimeField::new(p).unwrap()).unwrap();
        let fast = enumerate_graded_zeta(&a, Options::default()).unwrap();
        let naive = enumerate_graded_zeta(&a, Options { strategy: Walk::Naive, ..Options::default() }).unwrap();
        let orbits = enumerate_graded_zeta(&a, Options { orbits: true, ..Options::default() }).unwrap();
        prop_assert_eq!(&fast.coeffs, &naive.coeffs);
        prop_assert_eq!(&fast.coeffs, &orbits.coeffs);
        prop_assert_eq!(&fast.coeffs, &zeta_graded_closed_in(&AtPrime::new(p), c).unwrap().coeffs);
        prop_assert_eq!(&fast.coeffs, &zeta_graded_closed(c).unwrap().eval(p).coeffs);
    }

    #[test]
    fn g_matches_bruteforce(p in prop::sample::select(vec![2u64, 3]), d in 1usize..5, l1 in 0usize..3, l2 in 0usize..3) {
        prop_assume!(l1 + l2 <= d);
        let f = PrimeField::new(p).unwrap();
        let table = g_table_bruteforce(f, d, l1, l2).unwrap();
        for m in 0..=d {
            for n1 in 0..=l1.min(m) {
                for n2 in 0..=l2.min(m) {
                    let want = table.get(&(m, n1, n2)).copied().unwrap_or(0);
                    let got = g_count(d as i64, l1 as i64, l2 as i64, n1 as i64, n2 as i64, m as i64).unwrap().eval_u64(p);
                    prop_assert_eq!(got, BigInt::from(want), "d={} l=({},{}) n=({},{}) m={}", d, l1, l2, n1, n2, m);
                }
            }
        }
    }
}
