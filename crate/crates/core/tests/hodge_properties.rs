use cilattice::batch::multidegree_grid;
use cilattice::hodge::{euler_oracle, hodge_row, series_multi, MultiDegree};
use num_bigint::BigInt;
use proptest::prelude::*;

fn md(d: &[u64]) -> MultiDegree {
    MultiDegree::new(d).unwrap()
}

/// `h^{p+1,p-1}` and `h^{p,p}` of `V_{2p}(d)`.
fn bound_values(m: &MultiDegree, p: u32) -> (BigInt, BigInt) {
    let row = hodge_row(m, 2 * p).unwrap();
    (row.full(p + 1), row.full(p))
}

/// Cases where `2 h^{p+1,p-1} + 1 < d`. The reference list, plus the quartic
/// surface: `h^{2,0}(4) = 1` gives `3 < 4`.
fn expected_exception(m: &MultiDegree, p: u32) -> bool {
    m.is(&[2])
        || m.is(&[2, 2])
        || (p == 1 && [&[3][..], &[2, 3], &[2, 2, 2], &[2, 2, 2, 2], &[4]].iter().any(|d| m.is(d)))
        || (p == 2 && m.is(&[2, 2, 2]))
}

fn bound_grid() -> Vec<MultiDegree> {
    multidegree_grid(4, 6)
        .into_iter()
        .filter(|m| m.total_degree() <= 400)
        .collect()
}

#[test]
fn middle_hodge_number_at_least_degree() {
    for m in bound_grid() {
        for p in 1..=4 {
            let (_, hpp) = bound_values(&m, p);
            let holds = hpp >= BigInt::from(m.total_degree());
            if !(m.is(&[2]) || m.is(&[2, 2])) {
                assert!(holds, "h^{{{p},{p}}}({m}) = {hpp}");
            }
        }
    }
}

#[test]
fn off_middle_bound_fails_exactly_on_exception_list() {
    for m in bound_grid() {
        for p in 1..=4 {
            let (h, _) = bound_values(&m, p);
            let holds = 2 * h.clone() + 1 >= BigInt::from(m.total_degree());
            assert_eq!(
                holds,
                !expected_exception(&m, p),
                "({m}) p={p}: h^{{{},{}}} = {h}",
                p + 1,
                p - 1
            );
        }
    }
}

#[test]
fn quartic_surface_is_missing_from_the_reference_list() {
    let (h20, _) = bound_values(&md(&[4]), 1);
    assert_eq!(h20, BigInt::from(1));
}

#[test]
fn listed_values() {
    assert_eq!(bound_values(&md(&[3]), 2).0, BigInt::from(1));
    assert_eq!(bound_values(&md(&[2, 3]), 2).0, BigInt::from(8));
    assert_eq!(bound_values(&md(&[2, 2, 2, 2]), 2).0, BigInt::from(27));
    assert_eq!(bound_values(&md(&[2, 2, 2]), 3).0, BigInt::from(6));
    // (2,3) and (2,2,2) are K3 surfaces: h^{1,1} = 20, primitive part 19
    for (d, h11) in [(&[3][..], 7), (&[2, 2], 6), (&[2, 3], 20), (&[2, 2, 2], 20)] {
        let row = hodge_row(&md(d), 2).unwrap();
        assert_eq!(row.full(1), BigInt::from(h11), "{d:?}");
        assert_eq!(row.primitive(1), &BigInt::from(h11 - 1), "{d:?}");
    }
}

#[test]
fn series_properties_on_grid() {
    for m in multidegree_grid(3, 5) {
        let s = series_multi(&m, 8).unwrap();
        assert!(s.is_symmetric(), "{m}");
        assert!(s.is_nonnegative(), "{m}");
        assert!(s.dominates_yz_shift(), "{m}");
    }
}

#[test]
fn euler_oracle_matches_series_on_grid() {
    for m in multidegree_grid(3, 5) {
        for n in [2, 4, 6, 8] {
            let (_, b) = euler_oracle(&m, n).unwrap();
            assert_eq!(b, hodge_row(&m, n).unwrap().betti(), "({m}) n={n}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_multidegrees(
        raw in prop::collection::vec(1u64..=7, 1..=4),
        half in 1u32..=5,
    ) {
        let m = MultiDegree::new(&raw).unwrap();
        prop_assume!(m.total_degree() >= 2);
        let n = 2 * half;
        let row = hodge_row(&m, n).unwrap();
        for p in 0..=n {
            prop_assert_eq!(row.primitive(p), row.primitive(n - p));
            prop_assert!(row.primitive(p) >= &BigInt::from(0));
        }
        prop_assert_eq!(euler_oracle(&m, n).unwrap().1, row.betti());
        let s = series_multi(&m, n as usize).unwrap();
        prop_assert!(s.dominates_yz_shift());
    }

    #[test]
    fn linear_entries_are_ignored(raw in prop::collection::vec(2u64..=6, 1..=3), ones in 0usize..3) {
        let mut padded = raw.clone();
        padded.extend(std::iter::repeat_n(1, ones));
        prop_assert_eq!(MultiDegree::new(&padded).unwrap(), MultiDegree::new(&raw).unwrap());
    }
}
