use std::sync::Arc;

use localization::*;
use mfilter::{enumerate_mfilters, minimal_filter, MFilter, DEFAULT_ENUM_CAP};
use quantale_core::*;

fn z12() -> Arc<FiniteQuantale> {
    Arc::new(build_ideal_quantale(12).unwrap())
}

fn h(q: &FiniteQuantale, name: &str) -> usize {
    q.carrier().index_of(name).unwrap()
}

fn class_names(l: &LocalizationQuotient, rep: &str) -> Vec<String> {
    let m = l.module().carrier();
    let r = m.index_of(rep).unwrap();
    l.class_members(r)
        .into_iter()
        .map(|x| m.name(x).to_owned())
        .collect()
}

#[test]
fn saturation_pinned_values() {
    let q = z12();
    let m = self_module(&q);
    let f2 = minimal_filter(&q, h(&q, "(2)"));
    assert_eq!(
        q.name(saturate1(&m, &f2, h(&q, "(12)"))),
        "(3)",
        "D_F(2)((12)) = (3)"
    );
    let triv = MFilter::trivial(&q);
    for b in 0..q.size() {
        assert_eq!(saturate1(&m, &triv, b), b, "trivial filter saturates nothing");
    }

    let s = Arc::new(build_open_set_quantale(2, &[vec![], vec![0], vec![0, 1]]).unwrap());
    let sm = self_module(&s);
    let dense = mfilter::codense_filter(&s, h(&s, "{}"));
    assert_eq!(
        s.name(saturate1(&sm, &dense, h(&s, "{0}"))),
        "{0,1}",
        "the dense open point saturates to the whole space"
    );
}

#[test]
fn saturation_operator_is_a_closure_operator_ingredients() {
    let q = z12();
    let m = self_module(&q);
    for f in enumerate_mfilters(&q, DEFAULT_ENUM_CAP).unwrap() {
        let sat = SaturationOperator::new(&m, &f).unwrap();
        for b in 0..q.size() {
            assert!(q.leq(b, sat.apply(b)), "inflationary");
            for b2 in 0..q.size() {
                if q.leq(b, b2) {
                    assert!(q.leq(sat.apply(b), sat.apply(b2)), "monotone");
                }
            }
            let (fix, _) = sat.fixpoint(b);
            assert_eq!(sat.apply(fix), fix, "fixpoint is stationary");
        }
    }
}

#[test]
fn definitional_one_step_matches_the_operator_on_small_modules() {
    // the witness-family definition, brute-forced: a ≤ Σaᵢ with sᵢaᵢ ≤ b
    fn definitional(m: &FiniteQModule, f: &MFilter, a: usize, b: usize) -> bool {
        let n = m.size();
        let fs: Vec<usize> = f.members().members();
        for mask in 1u64..(1 << n) {
            let family: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            let join = m.carrier().join_set(&family).unwrap();
            if !m.leq(a, join) {
                continue;
            }
            // every aᵢ needs its own sᵢ; choices are independent
            if family
                .iter()
                .all(|&ai| fs.iter().any(|&s| m.leq(m.act(s, ai), b)))
            {
                return true;
            }
        }
        false
    }

    for q in [
        Arc::new(build_ideal_quantale(4).unwrap()),
        Arc::new(build_chain_family(ChainFamily::L, 2)),
        Arc::new(build_open_set_quantale(2, &[vec![], vec![0], vec![0, 1]]).unwrap()),
    ] {
        let m = self_module(&q);
        for f in enumerate_mfilters(&q, DEFAULT_ENUM_CAP).unwrap() {
            let sat = SaturationOperator::new(&m, &f).unwrap();
            for a in 0..q.size() {
                for b in 0..q.size() {
                    assert_eq!(
                        definitional(&m, &f, a, b),
                        q.leq(a, sat.apply(b)),
                        "oracle mismatch at a={}, b={}, F={}",
                        q.name(a),
                        q.name(b),
                        f.display()
                    );
                }
            }
        }
    }
}

#[test]
fn local_leq_pinned_values() {
    let q = z12();
    let m = self_module(&q);
    let f3 = minimal_filter(&q, h(&q, "(3)"));
    assert_eq!(
        local_leq(&m, &f3, h(&q, "(1)"), h(&q, "(3)")).unwrap(),
        LocalSteps::Steps(1)
    );
    assert_eq!(
        local_leq(&m, &f3, h(&q, "(12)"), h(&q, "(2)")).unwrap(),
        LocalSteps::Steps(0),
        "already below"
    );
    let triv = MFilter::trivial(&q);
    assert_eq!(
        local_leq(&m, &triv, h(&q, "(1)"), h(&q, "(12)")).unwrap(),
        LocalSteps::Unreachable
    );
}

#[test]
fn localize_z12_at_f2_is_the_ring_localization_z3() {
    let q = z12();
    let m = self_module(&q);
    let f2 = minimal_filter(&q, h(&q, "(2)"));
    let l = localize(&m, &f2).unwrap();
    assert_eq!(l.size(), 2);
    assert_eq!(class_names(&l, "(1)"), ["(1)", "(2)", "(4)"]);
    assert_eq!(class_names(&l, "(3)"), ["(3)", "(6)", "(12)"]);
    assert!(validate_quotient(&l).is_valid());

    // independent ring-side oracle: Z/12 at powers of 2 is Z/3
    let z3 = build_ideal_quantale(3).unwrap();
    let qq = l.quotient_quantale().expect("self-module source");
    assert!(are_isomorphic(qq, &z3), "quotient must be Id(Z/3)");
    assert_eq!(step_degree(&m, &f2).unwrap(), 1);
}

#[test]
fn localize_z12_at_f3_is_the_ring_localization_z4() {
    let q = z12();
    let m = self_module(&q);
    let f3 = minimal_filter(&q, h(&q, "(3)"));
    let l = localize(&m, &f3).unwrap();
    assert_eq!(l.size(), 3);
    assert_eq!(class_names(&l, "(1)"), ["(1)", "(3)"]);
    assert_eq!(class_names(&l, "(2)"), ["(2)", "(6)"]);
    assert_eq!(class_names(&l, "(4)"), ["(4)", "(12)"]);

    let z4 = build_ideal_quantale(4).unwrap();
    assert!(are_isomorphic(l.quotient_quantale().unwrap(), &z4));
}

#[test]
fn localize_at_trivial_and_whole_filters() {
    let q = z12();
    let m = self_module(&q);
    let at_triv = localize(&m, &MFilter::trivial(&q)).unwrap();
    assert_eq!(at_triv.size(), q.size(), "M at {{1}} is M itself");
    assert!(are_isomorphic(at_triv.quotient_quantale().unwrap(), &q));
    assert_eq!(at_triv.step_degree(), 0);

    let at_whole = localize(&m, &MFilter::whole(&q)).unwrap();
    assert_eq!(at_whole.size(), 1, "the bottom multiplier collapses everything");
}

#[test]
fn wedge_preservation_in_the_quotient() {
    let q = z12();
    let m = self_module(&q);
    for f in enumerate_mfilters(&q, DEFAULT_ENUM_CAP).unwrap() {
        let l = localize(&m, &f).unwrap();
        for a in 0..q.size() {
            for b in 0..q.size() {
                let meet_src = q.carrier().meet(a, b).as_option().unwrap();
                let meet_quot = l
                    .carrier()
                    .meet(l.class_index(a), l.class_index(b))
                    .as_option()
                    .expect("quotient of a lattice keeps meets");
                assert_eq!(
                    meet_quot,
                    l.class_index(meet_src),
                    "ā ∧ b̄ = (a∧b)-bar at {} {} under {}",
                    q.name(a),
                    q.name(b),
                    f.display()
                );
            }
        }
    }
}

#[test]
fn localization_map_pinned_cases() {
    let q = z12();
    let m = self_module(&q);
    let f3 = minimal_filter(&q, h(&q, "(3)"));
    let whole = MFilter::whole(&q);

    let to_whole = localization_map(&m, &f3, &whole).unwrap();
    assert!(to_whole.iter().all(|&t| t == to_whole[0]), "collapses to a point");

    let id_map = localization_map(&m, &f3, &f3).unwrap();
    assert_eq!(id_map, (0..id_map.len()).collect::<Vec<_>>());

    let from_triv = localization_map(&m, &MFilter::trivial(&q), &f3).unwrap();
    let l3 = localize(&m, &f3).unwrap();
    for x in 0..q.size() {
        assert_eq!(from_triv[x], l3.class_index(x), "projection from M itself");
    }

    assert!(localization_map(&m, &whole, &f3).is_err(), "whole ⊄ F_(3)");
}

#[test]
fn compose_localizations_pinned_cases() {
    let q = z12();
    let m = self_module(&q);
    let f2 = minimal_filter(&q, h(&q, "(2)"));
    let f3 = minimal_filter(&q, h(&q, "(3)"));

    let w = compose_localizations(&m, &f2, &f3).unwrap();
    assert_eq!(w.lhs.size(), 1, "F_(2)+F_(3) is the whole filter");
    assert_eq!(w.outer.size(), 1);

    let same = compose_localizations(&m, &f3, &f3).unwrap();
    assert_eq!(same.lhs.size(), localize(&m, &f3).unwrap().size());

    let with_triv = compose_localizations(&m, &MFilter::trivial(&q), &f3).unwrap();
    assert_eq!(with_triv.lhs.size(), 3, "both sides are M_(F_(3))");
    assert_eq!(with_triv.outer.size(), 3);
}

#[test]
fn all_finite_filters_are_binormal_and_gnf_lcf_fix_them()
{
    let q = Arc::new(build_ideal_quantale(6).unwrap());
    let m = self_module(&q);
    for f in enumerate_mfilters(&q, DEFAULT_ENUM_CAP).unwrap() {
        assert!(is_normal(&m, &f).unwrap(), "{} normal", f.display());
        assert!(is_conormal(&m, &f).unwrap(), "{} conormal", f.display());
        assert!(is_binormal(&m, &f).unwrap());
        assert_eq!(gnf(&m, &f, DEFAULT_ENUM_CAP).unwrap(), f);
        assert_eq!(lcf(&m, &f, DEFAULT_ENUM_CAP).unwrap(), f);
        assert!(is_one_step(&m, &f).unwrap(), "normal filters are 1-step");
    }
}

#[test]
fn xs_crosscheck_pinned_instances() {
    assert!(xs_crosscheck(12, &[1, 2, 4, 8]).unwrap());
    assert!(xs_crosscheck(12, &[1]).unwrap());
    assert!(xs_crosscheck(6, &[1, 5]).unwrap(), "units localize trivially");
    assert!(xs_crosscheck(30, &[1, 2, 3, 6]).unwrap());
}
