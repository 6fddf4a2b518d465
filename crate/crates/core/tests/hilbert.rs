use hlv_core::arith::{parse_poly, rat, ratio, MultiPoly};
use hlv_core::hilbert::{
    bernoulli, eisenstein_g, goettsche_series, goettsche_shadow_check, hilbert_identity_check,
    hook_shape, phi_lambda, quasimodular_check,
};
use hlv_core::partitions::Partition;

fn sigma(k: u32, n: u64) -> i64 {
    (1..=n)
        .filter(|d| n.is_multiple_of(*d))
        .map(|d| d.pow(k) as i64)
        .sum()
}

#[test]
fn bernoulli_numbers() {
    let b = bernoulli(10);
    let expected = [
        ratio(1, 1),
        ratio(-1, 2),
        ratio(1, 6),
        rat(0),
        ratio(-1, 30),
        rat(0),
        ratio(1, 42),
        rat(0),
        ratio(-1, 30),
        rat(0),
        ratio(5, 66),
    ];
    assert_eq!(&b[..=10], &expected[..]);
}

#[test]
fn eisenstein_coefficients() {
    for (k, constant) in [(2, ratio(-1, 24)), (4, ratio(1, 240)), (6, ratio(-1, 504))] {
        let g = eisenstein_g(k, 6).unwrap();
        assert_eq!(g.coeff(0).constant_term(), constant, "k={k}");
        for n in 1..=6u64 {
            assert_eq!(
                *g.coeff(n as usize),
                MultiPoly::from_int(sigma(k - 1, n)),
                "k={k} n={n}"
            );
        }
    }
    assert!(eisenstein_g(3, 4).is_err());
}

#[test]
fn box_generating_function() {
    let phi = phi_lambda(&"2,1".parse().unwrap());
    assert_eq!(phi.poly, parse_poly("1 z:1 + 1 w:1 + 1").unwrap());
}

#[test]
fn goettsche_first_terms() {
    let s = goettsche_series(2);
    assert!(s.coeff(0).is_one());
    assert_eq!(
        *s.coeff(1),
        parse_poly("1 q:2 t:4 + 2 q:1 t:3 + 1 t:2").unwrap()
    );
}

#[test]
fn identities_hold() {
    let h = hilbert_identity_check(3, 4).unwrap();
    assert!(h.full_holds() && h.specialized_holds());
    assert_eq!(h.specialized.len(), 5);
    let q = quasimodular_check(4, 6).unwrap();
    assert!(q.holds(), "{:?}", q.mismatches);
    for v in goettsche_shadow_check(3).unwrap() {
        assert!(v.mhp_equal && v.e_equal, "n={}", v.n);
    }
}

#[test]
fn hook_shapes() {
    assert_eq!(hook_shape(1), Partition::row(1));
    assert_eq!(hook_shape(4), "3,1".parse().unwrap());
}
