use std::collections::BTreeMap;

use proptest::prelude::*;

use mincw_core::bounds::{
    assemble_table, matroid_upper, random_coding_lower, recursion_upper_table, GTable, LowerSource,
};
use mincw_core::codes::{
    decompose_into_minimal, is_intersecting, is_minimal, minimal_codewords, minimal_codewords_oracle,
};
use mincw_core::search::{exhaustive_max_m, verify_certificate, SearchBudget, SearchCertificate};
use mincw_core::LinearCode;

fn code(max_n: usize, max_k: usize) -> impl Strategy<Value = LinearCode> {
    (1..=max_n)
        .prop_flat_map(move |n| (Just(n), 1..=n.min(max_k)))
        .prop_flat_map(|(n, k)| (Just(n), proptest::collection::vec(0..(1u64 << n), k)))
        .prop_filter_map("rank deficient", |(n, rows)| LinearCode::from_rows(n, rows).ok())
}

fn m(c: &LinearCode) -> usize {
    minimal_codewords(c).count()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn sieve_agrees_with_oracle(c in code(14, 8)) {
        let oracle = minimal_codewords_oracle(&c).unwrap();
        let sieve = minimal_codewords(&c);
        prop_assert_eq!(sieve.members(), oracle.members());
    }

    #[test]
    fn rank_test_agrees_with_sieve(c in code(10, 6)) {
        let set = minimal_codewords(&c);
        for w in c.codewords().skip(1) {
            prop_assert_eq!(is_minimal(&c, &w.vector()).unwrap(), set.members().contains(&w));
        }
    }

    #[test]
    fn direct_sum_adds(a in code(7, 4), b in code(7, 4)) {
        let s = a.direct_sum(&b).unwrap();
        prop_assert_eq!(m(&s), m(&a) + m(&b));
    }

    #[test]
    fn permutation_invariant(c in code(12, 7), seed in any::<u64>()) {
        let n = c.n();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut x = seed;
        for j in (1..n).rev() {
            x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(j, (x >> 33) as usize % (j + 1));
        }
        prop_assert_eq!(m(&c.permute_coordinates(&perm).unwrap()), m(&c));
    }

    #[test]
    fn below_upper_bounds(c in code(12, 8)) {
        let (n, k) = (c.n(), c.k());
        let u = recursion_upper_table(n, k, &GTable::embedded()).unwrap().get(n, k).unwrap();
        prop_assert!(m(&c) as u128 <= u);
        prop_assert!(m(&c) as u128 <= matroid_upper(n, k).unwrap());
    }

    #[test]
    fn decomposition_is_disjoint_and_minimal(c in code(10, 5)) {
        let set = minimal_codewords(&c);
        for w in c.codewords().skip(1) {
            let parts = decompose_into_minimal(&c, &w.vector()).unwrap();
            let mut acc = 0;
            for p in &parts {
                prop_assert!(set.members().contains(p));
                prop_assert_eq!(acc & p.bits(), 0);
                acc |= p.bits();
            }
            prop_assert_eq!(acc, w.bits());
        }
    }

    #[test]
    fn intersecting_iff_all_minimal(c in code(10, 5)) {
        prop_assert_eq!(is_intersecting(&c), m(&c) == (1 << c.k()) - 1);
    }

    #[test]
    fn zero_column_keeps_m(c in code(12, 6)) {
        prop_assert_eq!(m(&c.extend_zero_column().unwrap()), m(&c));
    }

    #[test]
    fn text_roundtrip(c in code(16, 8)) {
        prop_assert_eq!(LinearCode::parse(&c.to_text()).unwrap(), c);
    }
}

#[test]
fn certificates_roundtrip_and_verify() {
    let budget = SearchBudget::default().with_workers(2);
    for (n, k) in [(6, 3), (7, 4), (8, 5)] {
        let cert = exhaustive_max_m(n, k, &budget).unwrap();
        let back = SearchCertificate::parse(&cert.to_text()).unwrap();
        assert_eq!(back.to_text(), cert.to_text());
        assert!(verify_certificate(&back));
    }
}

#[test]
fn random_coding_below_settled_values() {
    let budget = SearchBudget::default().with_workers(4);
    for n in 3..=10 {
        for k in 1..n {
            if k * (n - k) > 20 {
                continue;
            }
            let exact = exhaustive_max_m(n, k, &budget).unwrap().claimed_m as u128;
            assert!(random_coding_lower(n, k).unwrap() <= exact, "({n},{k})");
        }
    }
}

#[test]
fn table_with_search_values_never_crosses() {
    let budget = SearchBudget::default().with_workers(4);
    let mut search = BTreeMap::new();
    for (n, k) in [(7, 4), (8, 4), (9, 5), (10, 8)] {
        search.insert((n, k), exhaustive_max_m(n, k, &budget).unwrap().claimed_m as u128);
    }
    let table = assemble_table(15, 13, &GTable::embedded(), &search, &BTreeMap::new()).unwrap();
    for c in &table.cells {
        assert!(c.lower <= c.upper, "({},{})", c.n, c.k);
    }
    let c74 = table.cell(7, 4).unwrap();
    assert_eq!((c74.lower, c74.upper, c74.exact), (14, 14, true));
    // monotone closure carries M(8,4) = 14 to (9,4) until a search value says more
    assert!(table.cell(9, 4).unwrap().lower >= 14);
    assert_eq!(table.cell(9, 5).unwrap().lower_src, LowerSource::Search);
}
