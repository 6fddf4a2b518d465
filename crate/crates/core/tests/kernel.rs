use hlv_core::arith::{parse_poly, rat, MultiPoly, Var};
use hlv_core::cache::DiskCache;
use hlv_core::kernel::{
    connectedness_report, curious_duality_check, expansion_lemma_check, hlv_polynomial,
    is_palindromic, valuation_sweep, Kernel, YConvention,
};
use hlv_core::partitions::{enumerate_partitions, MultiPartition, Partition};
use proptest::prelude::*;

fn mp(s: &str) -> MultiPartition {
    s.parse().unwrap()
}

fn poly(s: &str) -> MultiPoly {
    parse_poly(s).unwrap()
}

/// `(q - 1)^{2g}` by repeated multiplication.
fn torus(g: u32) -> MultiPoly {
    let q1 = &MultiPoly::var(Var::Q) - &MultiPoly::one();
    (0..2 * g).fold(MultiPoly::one(), |acc, _| &acc * &q1)
}

#[test]
fn rank_one_is_a_torus() {
    let zw = &MultiPoly::var(Var::Z) - &MultiPoly::var(Var::W);
    for g in 0..=3 {
        for k in 1..=3 {
            let mu = MultiPartition::repeat(&Partition::row(1), k).unwrap();
            let h = hlv_polynomial(&mu, g).unwrap();
            assert_eq!(*h.polynomial().unwrap(), zw.pow(2 * g), "g={g} k={k}");
            assert_eq!(h.e_polynomial().unwrap(), torus(g));
        }
    }
}

#[test]
fn known_kac_polynomials() {
    // Jordan quiver: A_n(q) = q in every dimension
    for n in 1..=4 {
        let mu = MultiPartition::new(vec![Partition::row(n)]).unwrap();
        assert_eq!(
            hlv_polynomial(&mu, 1).unwrap().kac_polynomial().unwrap(),
            MultiPoly::var(Var::Q),
            "n={n}"
        );
    }
    // g loops in dimension one
    for g in 0..=3 {
        let a = hlv_polynomial(&mp("1"), g)
            .unwrap()
            .kac_polynomial()
            .unwrap();
        assert_eq!(a, MultiPoly::var_pow(Var::Q, g));
    }
    // affine D4 at the imaginary root, and a real root of D4
    assert_eq!(
        hlv_polynomial(&mp("1,1|1,1|1,1|1,1"), 0)
            .unwrap()
            .kac_polynomial()
            .unwrap(),
        poly("1 q:1 + 4")
    );
    assert_eq!(
        hlv_polynomial(&mp("1,1|1,1|1,1"), 0)
            .unwrap()
            .kac_polynomial()
            .unwrap(),
        MultiPoly::one()
    );
}

#[test]
fn small_e_polynomials() {
    let e = |mu: &str, g| hlv_polynomial(&mp(mu), g).unwrap().e_polynomial().unwrap();
    assert_eq!(e("1,1|1,1|1,1|1,1", 0), poly("1 q:2 + 4 q:1 + 1"));
    assert_eq!(e("1,1|1,1|1,1", 0), MultiPoly::one());
    assert_eq!(e("1,1", 1), poly("1 q:4 + -1 q:3 + -1 q:1 + 1"));
    // empty variety
    assert!(e("2", 0).is_zero());
}

#[test]
fn specializations_are_consistent() {
    for g in 0..=2 {
        let kernel = Kernel::new(g, 2, 3).unwrap();
        for n in 1..=3 {
            for a in enumerate_partitions(n) {
                for b in enumerate_partitions(n) {
                    let mu = MultiPartition::new(vec![a.clone(), b.clone()]).unwrap();
                    let h = kernel.hlv(&mu).unwrap();
                    let e = h.e_polynomial().unwrap();
                    assert!(is_palindromic(&e, h.d_mu), "{mu} g={g}");
                    if let Some(c) = connectedness_report(&e) {
                        assert!(c.holds(), "{mu} g={g}");
                    }
                    let mhp = h.conjectural_mhp().unwrap();
                    assert_eq!(mhp.eval_var(Var::T, &rat(-1)), e);
                    assert!(curious_duality_check(&mhp, h.d_mu).holds);
                    let p = h.polynomial().unwrap();
                    assert_eq!(p.swap_vars(Var::Z, Var::W), *p, "{mu} g={g}");
                }
            }
        }
    }
}

fn multipartition_strategy() -> impl Strategy<Value = Vec<Partition>> {
    (1u32..=3, 2usize..=3).prop_flat_map(|(n, k)| {
        let parts = enumerate_partitions(n);
        prop::collection::vec(prop::sample::select(parts), k)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn components_commute(comps in multipartition_strategy(), g in 0u32..=1, rot in 1usize..3) {
        let mut rotated = comps.clone();
        rotated.rotate_left(rot % comps.len());
        let kernel = Kernel::new(g, comps.len(), 3).unwrap();
        let a = kernel.hlv(&MultiPartition::new(comps).unwrap()).unwrap();
        let b = kernel.hlv(&MultiPartition::new(rotated).unwrap()).unwrap();
        prop_assert_eq!(a.hlv, b.hlv);
    }
}

#[test]
fn cached_kernel_matches() {
    let dir = tempfile::tempdir().unwrap();
    let cache = DiskCache::open(dir.path()).unwrap();
    let cold = Kernel::with_source(1, 2, 3, &cache).unwrap();
    let warm = Kernel::with_source(1, 2, 3, &DiskCache::open(dir.path()).unwrap()).unwrap();
    let plain = Kernel::new(1, 2, 3).unwrap();
    for mu in ["2,1|2,1", "1,1,1|3", "1,1|2"] {
        let mu = mp(mu);
        let expected = plain.hlv(&mu).unwrap();
        assert_eq!(cold.hlv(&mu).unwrap(), expected);
        assert_eq!(warm.hlv(&mu).unwrap(), expected);
    }
}

#[test]
fn expansion_lemma() {
    for (g, k) in [(0, 2), (1, 1), (2, 1)] {
        let r = expansion_lemma_check(g, k, 3, YConvention::Geometric).unwrap();
        assert!(r.all_equal(), "g={g} k={k}: {:?}", r.first_mismatch());
    }
    let printed = expansion_lemma_check(1, 1, 2, YConvention::Printed).unwrap();
    assert_eq!(printed.first_mismatch().map(|e| e.mu.size()), Some(1));
}

#[test]
fn valuation_minimizers() {
    for g in 1..=2 {
        for n in 1..=3 {
            let mu = MultiPartition::new(vec![Partition::column(n)]).unwrap();
            let s = valuation_sweep(&mu, g, YConvention::Geometric).unwrap();
            assert_eq!(s.holds, Some(true), "{mu} g={g}");
        }
    }
    // one-row type in genus one: every summand is 1, so all partitions tie
    let s = valuation_sweep(&mp("2"), 1, YConvention::Geometric).unwrap();
    assert_eq!(s.holds, Some(false));
    assert_eq!(s.minimizers.len(), 2);
    assert_eq!(
        valuation_sweep(&mp("2"), 0, YConvention::Geometric)
            .unwrap()
            .holds,
        None
    );
}
