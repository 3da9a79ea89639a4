use mdswe::binary_avg::{avg_binary_pwgf, avg_binary_wgf};
use mdswe::combinatorics::binomial;
use mdswe::duality::{krawtchouk, macwilliams_pwe, macwilliams_weights};
use mdswe::errorprob::{bm_sum, p_t_h};
use mdswe::gf::Field;
use mdswe::linear_code::{brute_force_pwe, Budget, Partition};
use mdswe::mds_enum::{check_identity_dimension_split, iowe, pwe_direct, pwe_product, pwgf, weight_distribution};
use mdswe::verify::{random_code, random_partition};
use mdswe::MdsParams;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn field_order() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 4, 5, 7, 8, 9, 11, 16, 25, 27, 32])
}

/// `(n, k, q)` with `n <= q + 1`.
fn mds_params() -> impl Strategy<Value = MdsParams> {
    prop::sample::select(vec![4u64, 5, 7, 8, 9, 11, 13, 16]).prop_flat_map(|q| {
        (2..=(q as usize + 1).min(12)).prop_flat_map(move |n| (1..=n).prop_map(move |k| MdsParams::new(n, k, q).unwrap()))
    })
}

fn sizes_for(n: usize) -> impl Strategy<Value = Vec<usize>> {
    (1..=n.min(4)).prop_flat_map(move |p| {
        prop::collection::vec(1..=n, p - 1).prop_map(move |mut cuts| {
            cuts.retain(|&c| c < n);
            cuts.sort_unstable();
            cuts.dedup();
            let mut sizes = Vec::new();
            let mut prev = 0;
            for c in cuts.into_iter().chain([n]) {
                sizes.push(c - prev);
                prev = c;
            }
            sizes
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_operations(q in field_order(), a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let f = Field::from_order(q).unwrap();
        let (a, b, c) = (a % f.order(), b % f.order(), c % f.order());
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.mul(a, b), f.mul_table_free(a, b));
        prop_assert_eq!(f.add(f.sub(a, b), b), a);
        if b != 0 {
            prop_assert_eq!(f.mul(f.div(a, b).unwrap(), b), a);
        }
    }

    #[test]
    fn weight_distribution_shape(p in mds_params()) {
        let e = weight_distribution(p);
        prop_assert_eq!(e.iter().sum::<BigUint>(), BigUint::from(p.q()).pow(p.k() as u32));
        prop_assert!(e[1..p.d()].iter().all(Zero::is_zero));
        prop_assert_eq!(&e[0], &BigUint::from(1u32));
    }

    #[test]
    fn product_form_equals_nested_sum(
        (p, sizes) in mds_params().prop_flat_map(|p| (Just(p), sizes_for(p.n()))),
        seed in any::<u64>(),
    ) {
        let poly = pwgf(p, &sizes).unwrap();
        prop_assert_eq!(poly.coefficient_sum(), BigUint::from(p.q()).pow(p.k() as u32));
        let merged = poly.merge_vars(&[(0..sizes.len()).collect()]);
        let e = weight_distribution(p);
        for (h, c) in e.iter().enumerate() {
            prop_assert_eq!(&merged.coeff(&[h as u32]), c);
        }
        // a few random profiles through both routes
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..8 {
            let profile: Vec<usize> = sizes.iter().map(|&s| rand::Rng::gen_range(&mut rng, 0..=s)).collect();
            prop_assert_eq!(pwe_product(p, &sizes, &profile).unwrap(), pwe_direct(p, &sizes, &profile).unwrap());
        }
    }

    #[test]
    fn iowe_marginal(p in mds_params(), s_frac in 0.0f64..1.0) {
        let n = p.n();
        let s = ((s_frac * n as f64) as usize).clamp(1, n);
        let e = weight_distribution(p);
        for h in 0..=n {
            let total: BigUint = (0..=s.min(h)).filter(|&w| h - w <= n - s).map(|w| iowe(p, s, w, h).unwrap()).sum();
            prop_assert_eq!(&total, &e[h]);
        }
    }

    #[test]
    fn psi_identity(p in mds_params()) {
        for h in p.d()..=p.n() {
            prop_assert!(check_identity_dimension_split(p, h).holds);
        }
    }

    #[test]
    fn brute_force_matches_closed_form(n in 2usize..=7, k_frac in 0.0f64..1.0, seed in any::<u64>()) {
        let k = ((k_frac * n as f64) as usize).clamp(1, n);
        let f = Field::from_order(8).unwrap();
        let code = mdswe::linear_code::rs_code(&f, n, k).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let part = random_partition(n, 3, &mut rng);
        let table = brute_force_pwe(&code, &part, Budget::DEFAULT).unwrap();
        let p = MdsParams::new(n, k, 8).unwrap();
        prop_assert_eq!(table.to_poly(), pwgf(p, part.sizes()).unwrap());
    }

    #[test]
    fn macwilliams_involution(q in prop::sample::select(vec![2u64, 3, 4]), n in 2usize..=7, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = Field::from_order(q).unwrap();
        let k = rand::Rng::gen_range(&mut rng, 1..n);
        let code = random_code(&f, n, k, &mut rng).unwrap();
        let part = Partition::contiguous(&[1, n - 1]).unwrap();
        let t = brute_force_pwe(&code, &part, Budget::DEFAULT).unwrap();
        let dual = macwilliams_pwe(&t, q, k).unwrap();
        prop_assert_eq!(macwilliams_pwe(&dual, q, n - k).unwrap(), t);
        let w = code.weight_distribution(Budget::DEFAULT).unwrap();
        let wd = macwilliams_weights(&w, q, k).unwrap();
        prop_assert_eq!(macwilliams_weights(&wd, q, n - k).unwrap(), w);
    }

    #[test]
    fn krawtchouk_orthogonality(q in 2u64..=5, gamma in 1usize..=6) {
        // Σ_v K_a(v) K_b(v) C(γ,v)(q-1)^v = q^γ C(γ,a)(q-1)^a δ_ab
        for a in 0..=gamma {
            for b in 0..=gamma {
                let mut s = BigInt::zero();
                for v in 0..=gamma {
                    s += krawtchouk(q, a, v, gamma).unwrap() * krawtchouk(q, b, v, gamma).unwrap()
                        * BigInt::from(binomial(gamma as u64, v as u64)) * BigInt::from(q - 1).pow(v as u32);
                }
                let want = if a == b {
                    BigInt::from(q).pow(gamma as u32) * BigInt::from(binomial(gamma as u64, a as u64)) * BigInt::from(q - 1).pow(a as u32)
                } else {
                    BigInt::zero()
                };
                prop_assert_eq!(s, want);
            }
        }
    }

    #[test]
    fn averaged_enumerators_nonnegative(n in 2usize..=7, k_frac in 0.0f64..1.0, m in 1u32..=3) {
        let q = 1u64 << m;
        prop_assume!(n <= q as usize + 1);
        let k = ((k_frac * n as f64) as usize).clamp(1, n);
        let p = MdsParams::new(n, k, q).unwrap();
        let avg = avg_binary_wgf(p).unwrap();
        prop_assert!(avg.iter().all(|x| *x >= BigRational::zero()));
        let total: BigRational = avg.iter().cloned().sum();
        prop_assert_eq!(total, BigRational::from_integer(BigInt::from(1u64 << (m as usize * k))));
        let b = avg_binary_pwgf(&pwgf(p, &[1, n - 1]).unwrap(), m).unwrap();
        prop_assert!(b.terms().all(|(_, c)| *c >= BigRational::zero()));
    }

    #[test]
    fn distance_distribution_sums_to_one(n in 1usize..=20, q in prop::sample::select(vec![2u64, 8, 16]), h_frac in 0.0f64..=1.0, p in 0.0f64..=1.0) {
        let h = (h_frac * n as f64) as usize;
        let s: f64 = (0..=n).map(|t| p_t_h(n, q, h, t, p).unwrap()).sum();
        prop_assert!((s - 1.0).abs() <= 1e-12, "{}", s);
    }

    #[test]
    fn bm_probability_in_range(p in mds_params(), x in 0.0f64..=1.0) {
        let w: Vec<f64> = weight_distribution(p).iter().map(|e| num_traits::ToPrimitive::to_f64(e).unwrap()).collect();
        let v = bm_sum(&w, p.n(), p.d(), p.q(), x).unwrap();
        prop_assert!((0.0..=1.0).contains(&v));
    }
}
