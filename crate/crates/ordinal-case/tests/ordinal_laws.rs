use ordinal_case::*;
use OrdElem::{Int, Ordinal, Zero};

fn o(b: u64, c: u64) -> OrdElem {
    OrdElem::ordinal(0, b, c).unwrap()
}

#[test]
fn construction_and_total_order() {
    assert!(OrdElem::int(1).is_err());
    assert!(OrdElem::ordinal(2, 0, 0).is_err());
    assert!(OrdElem::ordinal(1, 0, 3).is_err());
    assert_eq!(OrdElem::ordinal(0, 0, 0).unwrap(), Zero);
    assert_eq!(OrdElem::n_omega(0), Zero);
    assert_eq!(OrdElem::n_omega(1), OrdElem::omega());

    let ascending = [
        Zero,
        o(0, 1),
        o(0, 5),
        OrdElem::omega(),
        o(1, 3),
        o(2, 0),
        OrdElem::omega2(),
        Int(-5),
        Int(0),
    ];
    for w in ascending.windows(2) {
        assert!(w[0] < w[1], "{:?} < {:?}", w[0], w[1]);
    }
    assert_eq!(Zero.layer(), 2);
    assert_eq!(OrdElem::omega().layer(), 1);
    assert_eq!(OrdElem::top().layer(), 0);
}

#[test]
fn quantale_laws_hold_on_the_sample_grid() {
    let grid = sample_grid(8, -8);
    for &x in &grid {
        assert_eq!(mult(OrdElem::top(), x), x, "0 is the unit");
        for &y in &grid {
            assert_eq!(mult(x, y), mult(y, x), "commutative");
            assert!(mult(x, y) <= x.min(y).max(mult(x, y)), "stays defined");
            for &z in &grid {
                assert_eq!(
                    mult(mult(x, y), z),
                    mult(x, mult(y, z)),
                    "associative at {:?} {:?} {:?}",
                    x,
                    y,
                    z
                );
                assert_eq!(
                    mult(x, join(y, z)),
                    join(mult(x, y), mult(x, z)),
                    "distributes over join"
                );
            }
        }
    }
    // monotone in each argument
    for &x in &grid {
        for &y in &grid {
            for &z in &grid {
                if y <= z {
                    assert!(mult(x, y) <= mult(x, z));
                }
            }
        }
    }
}

#[test]
fn closed_form_pinned_values() {
    assert_eq!(ord_saturate1(Zero), OrdElem::omega());
    assert_eq!(ord_saturate1(OrdElem::omega2()), OrdElem::omega2());
    assert_eq!(ord_saturate1(Int(-3)), Int(0));
    assert_eq!(ord_saturate1(Int(0)), Int(0));
    assert_eq!(ord_saturate1(o(2, 5)), o(3, 0));
    assert_eq!(ord_saturate1(o(0, 1)), OrdElem::omega());
}

#[test]
fn saturation_is_monotone_and_inflationary() {
    let grid = sample_grid(8, -8);
    for &b in &grid {
        assert!(b <= ord_saturate1(b));
        for &b2 in &grid {
            if b <= b2 {
                assert!(ord_saturate1(b) <= ord_saturate1(b2));
            }
        }
    }
}

#[test]
fn certificates_pin_both_directions_of_the_closed_form() {
    let grid = sample_grid(8, -8);
    for &b in &grid {
        let d = ord_saturate1(b);
        let cert = saturate1_certificate(b, 8);
        assert!(cert.verify(b), "witness family fails at {:?}", b);
        assert_eq!(cert.value, d);

        for &x in &grid {
            let q = min_multiplier(x, b);
            if let Some(s) = q {
                assert!(s.layer() == 0 && mult(s, x) <= b, "claimed multiplier works");
                assert!(x <= d, "qualifiers never exceed the closed form");
            }
            // qualifiers form a down-set with sup d: everything strictly
            // below qualifies, everything strictly above cannot
            if x < d {
                assert!(q.is_some(), "{:?} < D({:?}) = {:?} must qualify", x, b, d);
            }
            if x > d {
                assert!(q.is_none());
            }
            if x == d {
                // the sup is attained one-shot exactly when it is not a limit
                let attained = matches!(b, Int(_) | Ordinal { a: 1, .. });
                assert_eq!(q.is_some(), attained, "attainment at {:?}", b);
            }
        }
    }
}

#[test]
fn step_counts_are_exact_up_to_64() {
    for n in 0..=64u64 {
        assert_eq!(
            ord_min_steps(OrdElem::n_omega(n), Zero, 64),
            StepResult::StepCount(n as usize),
            "steps({}ω → 𝟎)",
            n
        );
    }
    assert_eq!(
        ord_min_steps(OrdElem::n_omega(65), Zero, 64),
        StepResult::ExceedsBound
    );
    assert_eq!(
        ord_min_steps(OrdElem::omega2(), Zero, 64),
        StepResult::ExceedsBound,
        "Dⁿ(𝟎) = nω < ω² forever"
    );
    assert_eq!(
        ord_min_steps(OrdElem::omega2(), OrdElem::omega2(), 64),
        StepResult::StepCount(0)
    );
    assert_eq!(ord_min_steps(Int(0), Int(-5), 3), StepResult::StepCount(1));
    assert_eq!(
        ord_min_steps(Int(-1), OrdElem::omega2(), 1 << 20),
        StepResult::ExceedsBound,
        "stationary chains bail out early"
    );
    assert_eq!(ord_min_steps(o(2, 7), Zero, 64), StepResult::StepCount(3));
}

#[test]
fn nonlocalizability_report_table() {
    let r = nonlocalizability_report(16);
    assert_eq!(r.rows.len(), 16);
    for (i, row) in r.rows.iter().enumerate() {
        assert_eq!(row.n, i as u64 + 1);
        assert_eq!(row.steps, StepResult::StepCount(i + 1));
        assert!(row.witness_checked);
    }
    assert!(r.uniform_bound_refuted);

    let one = nonlocalizability_report(1);
    assert_eq!(one.rows.len(), 1);
    assert_eq!(one.rows[0].steps, StepResult::StepCount(1));
}

mod properties {
    use super::*;
    use proptest::prelude::*;

    fn arb_elem() -> impl Strategy<Value = OrdElem> {
        prop_oneof![
            Just(Zero),
            Just(OrdElem::omega2()),
            (-10_000i64..=0).prop_map(|x| OrdElem::int(x).unwrap()),
            (0u64..10_000, 0u64..10_000)
                .prop_map(|(b, c)| OrdElem::ordinal(0, b, c).unwrap()),
        ]
    }

    proptest! {
        #[test]
        fn laws_beyond_the_grid(x in arb_elem(), y in arb_elem(), z in arb_elem()) {
            prop_assert_eq!(mult(x, y), mult(y, x));
            prop_assert_eq!(mult(mult(x, y), z), mult(x, mult(y, z)));
            prop_assert_eq!(mult(OrdElem::top(), x), x);
            prop_assert_eq!(mult(x, join(y, z)), join(mult(x, y), mult(x, z)));
            prop_assert!(x <= ord_saturate1(x));
        }

        #[test]
        fn random_heights_count_exactly(n in 0u64..200) {
            prop_assert_eq!(
                ord_min_steps(OrdElem::n_omega(n), Zero, 200),
                StepResult::StepCount(n as usize)
            );
        }
    }
}
