mod common;

use common::{brute_force_dim, naive_rank, naive_rank_int, q, random_rational_matrix};
use fatpoint::bezout::{emptiness_certificate, verify_certificate};
use fatpoint::exactalg::{kernel_basis, rank, rank_multimodular, ExactMatrix, Scalar};
use fatpoint::geometry::{FatPointScheme, ProjPoint};
use fatpoint::linsys::{
    alpha_symbolic, dim_linear_system, dim_linear_system_with, interpolation_matrix, DimOptions,
    LinearSystemQuery, RankPolicy,
};
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn annihilates(m: &ExactMatrix, v: &[Scalar]) -> bool {
    m.mul_vec(v).unwrap().iter().all(Scalar::is_zero)
}

#[test]
fn random_square_ranks_match_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..20 {
        let e = random_rational_matrix(&mut rng, 8, 8);
        let m = ExactMatrix::from_rationals(8, 8, e.clone()).unwrap();
        assert_eq!(rank(&m), naive_rank(8, 8, &e));
    }
}

#[test]
fn random_wide_kernels_are_annihilated() {
    let mut rng = ChaCha8Rng::seed_from_u64(610);
    for _ in 0..10 {
        let e = random_rational_matrix(&mut rng, 6, 10);
        let m = ExactMatrix::from_rationals(6, 10, e.clone()).unwrap();
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 10 - naive_rank(6, 10, &e));
        assert!(k.iter().all(|v| annihilates(&m, v)));
    }
}

#[test]
fn multimodular_matches_rational_on_random_12x12() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..30 {
        let m =
            ExactMatrix::from_rationals(12, 12, random_rational_matrix(&mut rng, 12, 12)).unwrap();
        assert_eq!(rank_multimodular(&m, 2).unwrap(), rank(&m));
    }
}

#[test]
fn multimodular_matches_on_large_entries() {
    let mut rng = ChaCha8Rng::seed_from_u64(106);
    for _ in 0..100 {
        let (r, c) = (rng.gen_range(1..=7), rng.gen_range(1..=7));
        let e: Vec<i64> = (0..r * c)
            .map(|_| rng.gen_range(-1_000_000..=1_000_000))
            .collect();
        let m = ExactMatrix::from_i64(r, c, &e).unwrap();
        let exact = rank(&m);
        let modular = rank_multimodular(&m, 2).unwrap();
        assert!(modular <= exact);
        assert_eq!(modular, exact);
    }
}

#[test]
fn trivial_matrices() {
    assert_eq!(rank(&ExactMatrix::identity(3)), 3);
    assert_eq!(rank(&ExactMatrix::zeros(4, 7)), 0);
    assert!(kernel_basis(&ExactMatrix::identity(3)).is_empty());
    assert_eq!(rank_multimodular(&ExactMatrix::identity(5), 1).unwrap(), 5);
    assert_eq!(rank_multimodular(&ExactMatrix::zeros(3, 4), 3).unwrap(), 0);
    let ones = ExactMatrix::from_i64(1, 3, &[1, 1, 1]).unwrap();
    let k = kernel_basis(&ones);
    assert_eq!(k.len(), 2);
    assert!(k.iter().all(|v| annihilates(&ones, v)));
}

fn general_points(rng: &mut impl Rng, n: usize) -> Vec<ProjPoint> {
    let mut pts: Vec<ProjPoint> = Vec::new();
    while pts.len() < n {
        let p = ProjPoint::from_ints(
            rng.gen_range(1..=3),
            rng.gen_range(-20..=20),
            rng.gen_range(-20..=20),
        );
        if !pts.contains(&p) {
            pts.push(p);
        }
    }
    pts
}

#[test]
fn interpolation_matrix_agrees_with_derivative_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..40 {
        let n = rng.gen_range(1..=5);
        let pts = general_points(&mut rng, n);
        let mults: Vec<u32> = (0..n).map(|_| rng.gen_range(1..=3)).collect();
        let z = FatPointScheme::new(pts.into_iter().zip(mults).collect()).unwrap();
        let d = rng.gen_range(0..=6);
        assert_eq!(
            dim_linear_system(&LinearSystemQuery::new(z.clone(), d)).dimension,
            brute_force_dim(&z, d),
            "{z} in degree {d}"
        );
    }
}

#[test]
fn general_simple_points_impose_independent_conditions() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..20 {
        let n = rng.gen_range(1..=6);
        let mut pts: Vec<ProjPoint> = Vec::new();
        while pts.len() < n {
            let p =
                ProjPoint::from_ints(1, rng.gen_range(-1000..=1000), rng.gen_range(-1000..=1000));
            if !pts.contains(&p) {
                pts.push(p);
            }
        }
        let z = FatPointScheme::uniform(&pts, 1).unwrap();
        for d in 1..=3 {
            let q = LinearSystemQuery::new(z.clone(), d);
            let expected = q.expected_dimension().max(0) as usize;
            assert_eq!(brute_force_dim(&z, d), expected);
            assert_eq!(dim_linear_system(&q).dimension, expected);
        }
    }
}

fn arb_scheme() -> impl Strategy<Value = FatPointScheme> {
    prop::collection::btree_set((1i64..=3, -6i64..=6, -6i64..=6), 1..=5)
        .prop_flat_map(|coords| {
            let n = coords.len();
            (Just(coords), prop::collection::vec(1u32..=3, n))
        })
        .prop_filter_map("distinct projective points", |(coords, mults)| {
            let supports: Vec<(ProjPoint, u32)> = coords
                .into_iter()
                .map(|(a, b, c)| ProjPoint::from_ints(a, b, c))
                .zip(mults)
                .collect();
            FatPointScheme::new(supports).ok()
        })
}

fn arb_matrix() -> impl Strategy<Value = (usize, usize, Vec<BigRational>)> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| {
        (
            Just(r),
            Just(c),
            prop::collection::vec((-5i64..=5, 1i64..=3).prop_map(|(n, d)| q(n, d)), r * c),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_equals_transpose_rank((r, c, e) in arb_matrix()) {
        let m = ExactMatrix::from_rationals(r, c, e.clone()).unwrap();
        prop_assert_eq!(rank(&m), rank(&m.transpose()));
        prop_assert_eq!(rank(&m), naive_rank(r, c, &e));
    }

    #[test]
    fn multimodular_never_exceeds_rational((r, c, e) in arb_matrix()) {
        let m = ExactMatrix::from_rationals(r, c, e).unwrap();
        prop_assert!(rank_multimodular(&m, 1).unwrap() <= rank(&m));
    }

    #[test]
    fn kernel_vectors_annihilate((r, c, e) in arb_matrix()) {
        let m = ExactMatrix::from_rationals(r, c, e).unwrap();
        let k = kernel_basis(&m);
        prop_assert_eq!(k.len(), c - rank(&m));
        for v in &k {
            prop_assert!(annihilates(&m, v));
            prop_assert!(v.iter().any(|x| !x.is_zero()));
        }
    }

    #[test]
    fn dimension_is_monotone_and_bounded_below(z in arb_scheme(), d in 0u32..7) {
        let a = dim_linear_system(&LinearSystemQuery::new(z.clone(), d));
        let b = dim_linear_system(&LinearSystemQuery::new(z.clone(), d + 1));
        prop_assert!(a.dimension <= b.dimension);
        prop_assert!(a.dimension as i64 >= a.expected_dimension.max(0));
        let modular = dim_linear_system_with(
            &LinearSystemQuery::new(z, d),
            &DimOptions { policy: RankPolicy::Modular, ..DimOptions::default() },
        );
        prop_assert_eq!(modular.dimension, a.dimension);
    }

    #[test]
    fn scheme_json_roundtrip(z in arb_scheme()) {
        let back = FatPointScheme::from_json(&z.to_json()).unwrap();
        prop_assert_eq!(back, z);
    }

    #[test]
    fn certificates_are_sound(z in arb_scheme(), d in 0u32..6) {
        if let Ok(c) = emptiness_certificate(&z, d, &[]) {
            prop_assert!(verify_certificate(&c));
            let (rows, cols, data) = interpolation_matrix(&z, d);
            prop_assert_eq!(naive_rank_int(rows, cols, &data), cols);
        }
    }

    #[test]
    fn subadditivity_and_chudnovsky(z in arb_scheme()) {
        let pts: Vec<ProjPoint> = z.points().cloned().collect();
        let a1 = alpha_symbolic(&pts, 1, 20).value().unwrap();
        let a2 = alpha_symbolic(&pts, 2, 40).value().unwrap();
        let a4 = alpha_symbolic(&pts, 4, 80).value().unwrap();
        prop_assert!(a2 <= 2 * a1);
        prop_assert!(a4 <= 2 * a2);
        // alpha(I^(m)) / m >= (alpha(I) + 1) / 2
        for (m, a) in [(1, a1), (2, a2), (4, a4)] {
            prop_assert!(2 * a >= m * (a1 + 1));
        }
    }
}

#[test]
fn empty_scheme_dimension_is_all_forms() {
    let z = FatPointScheme::empty();
    for d in 0..5u32 {
        let r = dim_linear_system(&LinearSystemQuery::new(z.clone(), d));
        assert_eq!(r.dimension, ((d + 1) * (d + 2) / 2) as usize);
    }
    assert!(BigRational::zero().is_zero());
}
