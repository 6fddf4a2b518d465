use hlv_core::arith::{
    cyclotomic, divisors, mobius, parse_poly, poly_gcd, rat, totient, AtomProduct, Coeff,
    CycloFraction, FieldCoeff, LaurentMonomial, Monomial, MultiPoly, RationalFunction,
    TruncatedSeries, Var,
};
use proptest::prelude::*;

fn poly_strategy() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((0u32..3, 0u32..3, 0u32..3, -4i64..=4), 0..5).prop_map(|terms| {
        MultiPoly::from_terms(terms.into_iter().map(|(a, b, c, k)| {
            (
                Monomial::from_pairs(&[(Var::Z, a), (Var::W, b), (Var::Q, c)]),
                rat(k),
            )
        }))
    })
}

fn nonzero_poly() -> impl Strategy<Value = MultiPoly> {
    poly_strategy().prop_filter("nonzero", |p| !p.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in poly_strategy(), b in poly_strategy(), c in poly_strategy()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn canonical_text_round_trips(a in poly_strategy()) {
        prop_assert_eq!(parse_poly(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn exact_division(a in poly_strategy(), b in nonzero_poly()) {
        prop_assert_eq!((&a * &b).div_exact(&b), Some(a));
    }

    #[test]
    fn gcd_contains_common_factor(a in nonzero_poly(), b in nonzero_poly(), c in nonzero_poly()) {
        let ac = &a * &c;
        let g = poly_gcd(&ac, &(&b * &c));
        prop_assert!(g.div_exact(&c).is_some());
        prop_assert!(ac.div_exact(&g).is_some());
    }

    #[test]
    fn evaluation_is_multiplicative(a in poly_strategy(), b in poly_strategy(), z in -3i64..=3, w in -3i64..=3, q in -3i64..=3) {
        let at = [(Var::Z, rat(z)), (Var::W, rat(w)), (Var::Q, rat(q))];
        prop_assert_eq!((&a * &b).eval_all(&at), a.eval_all(&at) * b.eval_all(&at));
    }

    #[test]
    fn fractions_are_reduced(a in nonzero_poly(), b in nonzero_poly(), c in nonzero_poly()) {
        let plain = RationalFunction::new(a.clone(), b.clone()).unwrap();
        let padded = RationalFunction::new(&a * &c, &b * &c).unwrap();
        prop_assert_eq!(&plain, &padded);
        prop_assert!((&plain * &plain.inv().unwrap()).is_polynomial());
    }

    #[test]
    fn cyclo_fraction_matches_rational_function(a in poly_strategy(), k in 1i32..5, l in 1i32..4) {
        let m = LaurentMonomial::var(Var::Q, k).mul(&LaurentMonomial::var(Var::T, l));
        let atoms = AtomProduct::one_minus(m).unwrap().inv();
        let cyclo = CycloFraction::from_poly(&a).mul_atoms(&atoms).to_rational_function();
        let den = &MultiPoly::one() - &MultiPoly::monomial(Monomial::from_pairs(&[(Var::Q, k as u32), (Var::T, l as u32)]));
        prop_assert_eq!(cyclo, RationalFunction::new(a, den).unwrap());
    }
}

#[test]
fn arithmetic_functions() {
    for n in 1..=60u64 {
        let mu_sum: i64 = divisors(n).iter().map(|&d| mobius(d)).sum();
        assert_eq!(mu_sum, i64::from(n == 1), "n = {n}");
        let phi_sum: u64 = divisors(n).iter().map(|&d| totient(d)).sum();
        assert_eq!(phi_sum, n);
    }
}

#[test]
fn cyclotomic_products() {
    // Π_{d | n} Φ_d(2) = 2^n - 1
    for n in 1..=24u32 {
        let prod: i128 = divisors(n as u64)
            .iter()
            .map(|&d| {
                cyclotomic(d as u32)
                    .iter()
                    .rev()
                    .fold(0i128, |acc, &c| 2 * acc + c as i128)
            })
            .product();
        assert_eq!(prod, (1i128 << n) - 1, "n = {n}");
    }
}

/// Partition numbers from Euler's pentagonal recurrence.
fn partition_numbers(n: usize) -> Vec<i64> {
    let mut p = vec![0i64; n + 1];
    p[0] = 1;
    for m in 1..=n {
        let mut k = 1i64;
        loop {
            let sign = if k % 2 == 1 { 1 } else { -1 };
            let mut any = false;
            for g in [k * (3 * k - 1) / 2, k * (3 * k + 1) / 2] {
                if g as usize <= m {
                    p[m] += sign * p[m - g as usize];
                    any = true;
                }
            }
            if !any {
                break;
            }
            k += 1;
        }
    }
    p
}

#[test]
fn plethystic_exponential_of_geometric_series() {
    let order = 12;
    let ones = TruncatedSeries::new(
        Var::BigT,
        (0..=order)
            .map(|i| MultiPoly::from_int(i64::from(i > 0)))
            .collect(),
        order,
    );
    let exp = ones.plethystic_exp().unwrap();
    let p = partition_numbers(order);
    for (i, c) in exp.coeffs().iter().enumerate() {
        assert_eq!(*c, MultiPoly::from_int(p[i]));
    }
    assert_eq!(exp.plethystic_log().unwrap(), ones);

    // Exp(q T) = 1 / (1 - q T)
    let qt = TruncatedSeries::monomial(Var::BigT, MultiPoly::var(Var::Q), 1, order);
    let e = qt.plethystic_exp().unwrap();
    for i in 0..=order {
        assert_eq!(*e.coeff(i), MultiPoly::var_pow(Var::Q, i as u32));
    }
}
