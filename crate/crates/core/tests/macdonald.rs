use std::collections::BTreeMap;

use hlv_core::arith::{parse_poly, substitute, FieldCoeff, RationalFunction, Var};
use hlv_core::cache::DiskCache;
use hlv_core::macdonald::{htilde_checks, macdonald_p, modified_htilde, HtildeSource, MemoryStore};
use hlv_core::partitions::{enumerate_partitions, Partition};
use hlv_core::symfunc::{Basis, SymFunc};

fn p(s: &str) -> Partition {
    s.parse().unwrap()
}

#[test]
fn structural_checks_through_five() {
    let store = MemoryStore::new();
    for n in 1..=5 {
        for lambda in enumerate_partitions(n) {
            let c = htilde_checks(&lambda, &store).unwrap();
            assert!(c.all(), "{c:?}");
            assert!(
                store.htilde(&lambda, Basis::S).unwrap().is_positive(),
                "{lambda}"
            );
        }
    }
}

#[test]
fn known_schur_expansions() {
    let cases = [
        (
            "2,1",
            [("3", "1"), ("2,1", "1 q:1 + 1 t:1"), ("1,1,1", "1 q:1 t:1")],
        ),
        (
            "3",
            [("3", "1"), ("2,1", "1 q:2 + 1 q:1"), ("1,1,1", "1 q:3")],
        ),
        (
            "1,1,1",
            [("3", "1"), ("2,1", "1 t:2 + 1 t:1"), ("1,1,1", "1 t:3")],
        ),
    ];
    for (lambda, expected) in cases {
        let h = modified_htilde(&p(lambda), Basis::S).unwrap();
        for (nu, coeff) in expected {
            assert_eq!(
                h.coeff(&p(nu)),
                parse_poly(coeff).unwrap(),
                "H_{lambda} at s_{nu}"
            );
        }
    }
}

#[test]
fn p_at_q_equals_t_is_schur() {
    let t = BTreeMap::from([(Var::Q, RationalFunction::var(Var::T))]);
    for n in 1..=4 {
        for lambda in enumerate_partitions(n) {
            let pl = macdonald_p(&lambda).unwrap();
            let mut at = SymFunc::zero(1, n, pl.basis());
            for (key, c) in pl.terms() {
                let v = substitute(&c.to_rational_function(), &t).unwrap();
                at.add_term(key.clone(), v).unwrap();
            }
            let schur =
                SymFunc::<RationalFunction>::single(1, n, Basis::S, 0, lambda.clone()).unwrap();
            assert_eq!(at.convert(Basis::S), schur, "P_{lambda}");
        }
    }
}

#[test]
fn disk_cache_agrees_with_memory() {
    let dir = tempfile::tempdir().unwrap();
    let disk = DiskCache::open(dir.path()).unwrap();
    let memory = MemoryStore::new();
    for lambda in enumerate_partitions(4) {
        for basis in [Basis::M, Basis::S] {
            assert_eq!(
                *disk.htilde(&lambda, basis).unwrap(),
                *memory.htilde(&lambda, basis).unwrap()
            );
        }
    }
    let reopened = DiskCache::open(dir.path()).unwrap();
    assert!(reopened.take_warnings().is_empty());
    for lambda in enumerate_partitions(4) {
        assert_eq!(
            *reopened.htilde(&lambda, Basis::M).unwrap(),
            *memory.htilde(&lambda, Basis::M).unwrap()
        );
    }
}
