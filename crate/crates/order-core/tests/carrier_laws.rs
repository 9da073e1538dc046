use order_core::*;
use proptest::prelude::*;

/// Chain −n < … < −1 < 0 under max.
fn bn_carrier(n: usize) -> Carrier {
    let names = (0..=n).map(|i| (i as i64 - n as i64).to_string()).collect();
    Carrier::chain(names).unwrap()
}

/// Divisors of `n` as ideal labels "(d)"; (a) ≤ (b) ⇔ b | a, join = gcd.
fn divisor_carrier(n: u64) -> Carrier {
    let divs: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
    let idx = |d: u64| divs.iter().position(|&x| x == d).unwrap();
    let join = divs
        .iter()
        .map(|&a| divs.iter().map(|&b| idx(gcd(a, b))).collect())
        .collect();
    let names = divs.iter().map(|d| format!("({d})")).collect();
    Carrier::try_new(names, join, idx(1)).unwrap()
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// top above two incomparable elements; no bottom.
fn antichain_with_top() -> Carrier {
    let names = vec!["t".into(), "a".into(), "b".into()];
    let join = vec![vec![0, 0, 0], vec![0, 1, 0], vec![0, 0, 2]];
    Carrier::try_new(names, join, 0).unwrap()
}

#[test]
fn chain_carrier_is_valid() {
    let c = bn_carrier(2);
    assert!(validate_carrier(&c).is_valid());
    assert_eq!(c.top(), 2);
    assert_eq!(c.name(c.top()), "0");
}

#[test]
fn divisor_carrier_is_valid() {
    assert!(validate_carrier(&divisor_carrier(12)).is_valid());
}

#[test]
fn broken_commutativity_is_reported_with_the_pair() {
    let mut join = vec![vec![0, 1, 2], vec![1, 1, 2], vec![2, 2, 2]];
    join[0][1] = 0; // [1][0] stays 1
    let c = Carrier::try_new(
        vec!["x".into(), "y".into(), "z".into()],
        join,
        2,
    )
    .unwrap();
    let report = validate_carrier(&c);
    assert!(!report.is_valid());
    let comm: Vec<_> = report
        .violations
        .iter()
        .filter(|v| v.law == "commutativity")
        .collect();
    assert_eq!(comm.len(), 1, "exactly the broken pair is flagged");
    assert_eq!(comm[0].witness, vec![0, 1]);
}

#[test]
fn leq_matches_divisibility_on_ideals_of_z12() {
    let c = divisor_carrier(12);
    let h = |name: &str| c.index_of(name).unwrap();
    assert!(c.leq(h("(4)"), h("(2)")), "(4) ≤ (2) since 2 | 4");
    assert!(!c.leq(h("(2)"), h("(3)")));
    for x in 0..c.size() {
        assert!(c.leq(x, c.top()), "everything sits below (1)");
    }
}

#[test]
fn join_set_pinned_values() {
    let b5 = bn_carrier(5);
    let h5 = |name: &str| b5.index_of(name).unwrap();
    assert_eq!(b5.join_set(&[h5("-3"), h5("-1")]).unwrap(), h5("-1"));

    let z12 = divisor_carrier(12);
    let h = |name: &str| z12.index_of(name).unwrap();
    assert_eq!(z12.join_set(&[h("(4)"), h("(6)")]).unwrap(), h("(2)"));
    assert_eq!(z12.join_set(&[h("(6)")]).unwrap(), h("(6)"));
    assert!(z12.join_set(&[]).is_err(), "empty join is an input error");
}

#[test]
fn meet_pinned_values() {
    let z12 = divisor_carrier(12);
    let h = |name: &str| z12.index_of(name).unwrap();
    assert_eq!(z12.meet(h("(2)"), h("(3)")), Meet::Element(h("(6)")));
    for a in 0..z12.size() {
        assert_eq!(z12.meet(a, a), Meet::Element(a));
    }
    let v = antichain_with_top();
    assert!(validate_carrier(&v).is_valid());
    assert_eq!(v.meet(1, 2), Meet::Absent, "incomparable pair, empty lower set");
}

#[test]
fn meet_is_the_greatest_lower_bound_when_present() {
    let c = divisor_carrier(12);
    for a in 0..c.size() {
        for b in 0..c.size() {
            let m = c.meet(a, b).as_option().expect("divisor lattice has all meets");
            for x in 0..c.size() {
                assert_eq!(
                    c.leq(x, a) && c.leq(x, b),
                    c.leq(x, m),
                    "glb law at ({}, {}) via {}",
                    c.name(a),
                    c.name(b),
                    c.name(x)
                );
            }
        }
    }
}

#[test]
fn derived_order_is_a_partial_order() {
    for c in [bn_carrier(5), divisor_carrier(12), antichain_with_top()] {
        let n = c.size();
        for a in 0..n {
            assert!(c.leq(a, a));
            for b in 0..n {
                if c.leq(a, b) && c.leq(b, a) {
                    assert_eq!(a, b, "antisymmetry");
                }
                for d in 0..n {
                    if c.leq(a, b) && c.leq(b, d) {
                        assert!(c.leq(a, d), "transitivity");
                    }
                }
            }
        }
    }
}

#[test]
fn noetherian_and_compact_on_finite_carriers() {
    for c in [bn_carrier(3), divisor_carrier(60), antichain_with_top()] {
        assert!(is_noetherian(&c));
        assert!(is_compact_lattice(&c));
    }
}

#[test]
fn finite_subjoin_witness_prunes_to_a_cover() {
    let c = divisor_carrier(12);
    let h = |name: &str| c.index_of(name).unwrap();
    // (2) ≤ (4)+(6); the witness must keep both (pruning either loses (2))
    let w = finite_subjoin_witness(&c, h("(2)"), &[h("(4)"), h("(6)"), h("(12)")]).unwrap();
    let mut w_sorted = w.clone();
    w_sorted.sort_unstable();
    assert_eq!(w_sorted, vec![h("(4)"), h("(6)")]);
    assert!(finite_subjoin_witness(&c, h("(1)"), &[h("(4)"), h("(6)")]).is_none());
}

#[test]
fn upset_closure_and_frontier() {
    let c = divisor_carrier(12);
    let h = |name: &str| c.index_of(name).unwrap();
    let up = c.up_closure(&[h("(4)"), h("(6)")]);
    let mut got = up.members();
    got.sort_unstable();
    let mut want = vec![h("(1)"), h("(2)"), h("(3)"), h("(4)"), h("(6)")];
    want.sort_unstable();
    assert_eq!(got, want);
    assert!(up.is_up_closed(&c));
    let mut frontier = c.minimal_elements(&up);
    frontier.sort_unstable();
    let mut expect = vec![h("(4)"), h("(6)")];
    expect.sort_unstable();
    assert_eq!(frontier, expect);

    let mut not_closed = UpSet::empty(c.size());
    not_closed.insert(h("(4)"));
    assert!(!not_closed.is_up_closed(&c));
}

#[test]
fn linear_extension_puts_upper_elements_first() {
    let c = divisor_carrier(12);
    let order = c.linear_extension_desc();
    assert_eq!(order[0], c.top());
    for (i, &x) in order.iter().enumerate() {
        for &y in &order[i + 1..] {
            assert!(!c.lt(x, y), "{} listed before larger {}", c.name(x), c.name(y));
        }
    }
}

#[test]
fn json_round_trip_is_bit_exact() {
    let c = divisor_carrier(12);
    let s1 = serde_json::to_string(&c).unwrap();
    let back: Carrier = serde_json::from_str(&s1).unwrap();
    assert_eq!(back, c);
    assert_eq!(serde_json::to_string(&back).unwrap(), s1);
}

#[test]
fn bad_json_shapes_are_rejected() {
    let ragged = r#"{"kind":"table","names":["a","b"],"join":[[0,1]],"top":1}"#;
    assert!(serde_json::from_str::<Carrier>(ragged).is_err());
    let wrong_kind = r#"{"kind":"chain","names":["a"],"join":[[0]],"top":0}"#;
    assert!(serde_json::from_str::<Carrier>(wrong_kind).is_err());
}

proptest! {
    #[test]
    fn join_set_is_fold_order_invariant(
        subset in proptest::collection::vec(0usize..6, 1..6),
        rot in 0usize..6,
    ) {
        let c = divisor_carrier(12);
        let mut permuted = subset.clone();
        let k = rot % permuted.len();
        permuted.rotate_left(k);
        prop_assert_eq!(c.join_set(&subset).unwrap(), c.join_set(&permuted).unwrap());
    }

    #[test]
    fn chains_are_totally_ordered_with_min_meets(n in 1usize..8) {
        let c = bn_carrier(n);
        for a in 0..c.size() {
            for b in 0..c.size() {
                prop_assert!(c.leq(a, b) || c.leq(b, a));
                prop_assert_eq!(c.meet(a, b), Meet::Element(a.min(b)));
            }
        }
    }
}
