use borwein_core::charsieve::{f_psi_closed, f_psi_cycle_index, m_charsum_exact, ramanujan_sum};
use borwein_core::numtheory::divisors;
use borwein_core::polycore::mul_by_sparse_factor;
use borwein_core::progression::{m_all_from_expansion, split_residues};
use borwein_core::spectral::{abs_coeff_sum, supnorm_grid, supnorm_sample, upper_f64};
use borwein_core::{expand_product, m_direct, BigInt, Budget, IntPolynomial, ProductSpec};
use num_traits::Zero;
use proptest::prelude::*;

fn small_spec() -> impl Strategy<Value = ProductSpec> {
    (prop::sample::select(vec![2u32, 3, 5, 7]), 1u32..=3, 0u32..=4)
        .prop_map(|(p, s, n)| ProductSpec::new(p, s, n).unwrap())
}

fn odd_spec() -> impl Strategy<Value = ProductSpec> {
    (prop::sample::select(vec![3u32, 5, 7, 11]), 1u32..=3, 0u32..=4)
        .prop_map(|(p, s, n)| ProductSpec::new(p, s, n).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn factor_order_is_irrelevant(t in small_spec(), seed in any::<u64>()) {
        let mut factors: Vec<u64> = t.factor_exponents().collect();
        // deterministic shuffle from the seed
        let mut state = seed | 1;
        for i in (1..factors.len()).rev() {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            factors.swap(i, (state % (i as u64 + 1)) as usize);
        }
        let mut poly = IntPolynomial::one();
        for m in factors {
            poly = mul_by_sparse_factor(&poly, m, t.s(), Budget::default()).unwrap();
        }
        prop_assert_eq!(poly, expand_product(&t).unwrap());
    }

    #[test]
    fn structure_of_expansion(t in small_spec()) {
        let poly = expand_product(&t).unwrap();
        let d = t.degree() as usize;
        prop_assert_eq!(poly.degree(), Some(d));
        prop_assert!(poly.eval_at_one().is_zero());
        let sign = BigInt::from(t.leading_sign());
        prop_assert_eq!(poly.coeff(d), sign.clone());
        for i in 0..=d {
            prop_assert_eq!(poly.coeff(d - i), &sign * poly.coeff(i));
        }
    }

    #[test]
    fn residue_split_reassembles(t in small_spec()) {
        let poly = expand_product(&t).unwrap();
        let split = split_residues(&poly, &t).unwrap();
        prop_assert_eq!(split.parts().len(), t.p() as usize);
        prop_assert_eq!(split.reassemble(), poly);
    }

    #[test]
    fn progression_sums_total_zero_and_are_symmetric(t in small_spec()) {
        let poly = expand_product(&t).unwrap();
        let m = m_all_from_expansion(&poly, &t);
        let total: BigInt = m.iter().sum();
        prop_assert!(total.is_zero());
        let n = m.len();
        for b in 1..n {
            prop_assert_eq!(&m[b], &m[n - b]);
        }
    }

    #[test]
    fn charsum_matches_direct(t in odd_spec(), b in any::<u64>()) {
        let b = b % t.modulus();
        prop_assert_eq!(m_charsum_exact(&t, b).unwrap(), m_direct(&t, b).unwrap());
    }

    #[test]
    fn ramanujan_sum_periodic_and_even(d in 1u64..200, b in -500i64..500) {
        prop_assert_eq!(ramanujan_sum(d, b), ramanujan_sum(d, b + d as i64));
        prop_assert_eq!(ramanujan_sum(d, b), ramanujan_sum(d, -b));
        let total: i64 = divisors(d).into_iter().map(|e| ramanujan_sum(e, b)).sum();
        prop_assert_eq!(total, if b.rem_euclid(d as i64) == 0 { d as i64 } else { 0 });
    }

    #[test]
    fn f_psi_routes_agree(t in odd_spec(), k in 0u64..=6) {
        let k = k.min(t.size_d());
        for order in divisors(t.modulus()) {
            prop_assert_eq!(
                f_psi_closed(&t, order, k).unwrap(),
                f_psi_cycle_index(&t, order, k).unwrap()
            );
        }
    }

    #[test]
    fn sup_norm_sandwich(t in small_spec(), mult in 1u64..=3) {
        let poly = expand_product(&t).unwrap();
        let samples = 4 * t.degree() * mult;
        let grid = supnorm_grid(&t, samples).unwrap();
        let refined = supnorm_sample(&t, samples).unwrap();
        prop_assert!(refined.value >= grid.value);
        prop_assert!(refined.value <= upper_f64(&abs_coeff_sum(&poly)));
        let finer = supnorm_grid(&t, 2 * samples).unwrap();
        prop_assert!(finer.value >= grid.value);
    }
}
