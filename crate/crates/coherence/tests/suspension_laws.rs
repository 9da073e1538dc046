use std::sync::Arc;

use coherence::*;
use order_core::{is_compact_lattice, is_noetherian, Carrier, Meet};
use quantale_core::*;

fn z12() -> FiniteQuantale {
    build_ideal_quantale(12).unwrap()
}

fn h(q: &FiniteQuantale, name: &str) -> usize {
    q.carrier().index_of(name).unwrap()
}

fn cls(q: &FiniteQuantale, names: &[&str]) -> SuspensionClass {
    let subset: Vec<usize> = names.iter().map(|n| h(q, n)).collect();
    SuspensionClass::new(q.carrier(), &subset).unwrap()
}

fn boolean_16() -> FiniteQuantale {
    let opens: Vec<Vec<usize>> = (0u32..16)
        .map(|m| (0..4).filter(|&p| m >> p & 1 == 1).collect())
        .collect();
    build_open_set_quantale(4, &opens).unwrap()
}

/// An antichain {a, b} under a top: a ∧ b does not exist.
fn antichain_with_top() -> Carrier {
    let names = vec!["a".into(), "b".into(), "t".into()];
    let join = vec![vec![0, 2, 2], vec![2, 1, 2], vec![2, 2, 2]];
    Carrier::try_new(names, join, 2).unwrap()
}

#[test]
fn canonical_form_is_the_maximal_antichain() {
    let q = z12();
    assert_eq!(cls(&q, &["(4)", "(2)", "(12)"]).rep(), [h(&q, "(2)")]);
    let pair = cls(&q, &["(2)", "(3)"]);
    assert_eq!(pair.rep(), [h(&q, "(2)"), h(&q, "(3)")]);
    assert!(SuspensionClass::new(q.carrier(), &[]).is_err());
}

#[test]
fn domination_order_and_witnesses() {
    let q = z12();
    let c = q.carrier();
    let pair = cls(&q, &["(2)", "(3)"]);
    let unit = SuspensionClass::singleton(h(&q, "(1)"));
    // (2) + (3) = (1), so the two presentations name the same class
    assert!(leq_star(c, &pair, &unit));
    assert!(leq_star(c, &unit, &pair));
    assert!(equivalent(c, &unit, &pair));
    assert_ne!(pair.rep(), unit.rep());

    let w = domination_witness(c, unit.rep(), pair.rep()).unwrap();
    assert_eq!(w.len(), 1);
    assert_eq!(w[0], [h(&q, "(2)"), h(&q, "(3)")], "neither generator is droppable");

    let low = SuspensionClass::singleton(h(&q, "(12)"));
    assert!(leq_star(c, &low, &pair));
    assert!(!leq_star(c, &pair, &low));
    assert!(domination_witness(c, pair.rep(), low.rep()).is_none());
}

#[test]
fn equivalence_agrees_with_sigma_on_finite_carriers() {
    for q in [z12(), build_chain_family(ChainFamily::B, 3)] {
        let c = q.carrier();
        let classes = materialize_suspension(c, DEFAULT_SAMPLE_BUDGET);
        for s in &classes {
            for t in &classes {
                assert_eq!(
                    leq_star(c, s, t),
                    c.leq(s.sigma(c), t.sigma(c)),
                    "≤* must mirror the carrier order after collapse"
                );
            }
        }
    }
}

#[test]
fn sigma_and_iota_are_mutually_inverse_up_to_inflation() {
    let q = z12();
    let c = q.carrier();
    let classes = materialize_suspension(c, DEFAULT_SAMPLE_BUDGET);
    for a in 0..c.size() {
        assert_eq!(SuspensionClass::singleton(a).sigma(c), a, "σ∘ι = id");
    }
    for s in &classes {
        let back = SuspensionClass::singleton(s.sigma(c));
        assert!(leq_star(c, s, &back), "ι∘σ(S) ≥ S");
    }
}

#[test]
fn sigma_is_a_quantale_homomorphism_on_classes() {
    let q = z12();
    let c = q.carrier();
    let classes = materialize_suspension(c, DEFAULT_SAMPLE_BUDGET);
    for s in &classes {
        for t in &classes {
            assert_eq!(
                s.mult(&q, t).sigma(c),
                q.mult(s.sigma(c), t.sigma(c)),
                "σ(ST) = σ(S)σ(T)"
            );
            assert_eq!(
                s.join(c, t).sigma(c),
                c.join(s.sigma(c), t.sigma(c)),
                "σ(S∪T) = σ(S)+σ(T)"
            );
        }
    }
}

#[test]
fn collapse_check_holds_exhaustively_and_sampled() {
    for q in [
        z12(),
        build_chain_family(ChainFamily::B, 3),
        build_chain_family(ChainFamily::B, 1),
    ] {
        let r = suspension_collapse_check(q.carrier(), DEFAULT_SAMPLE_BUDGET);
        assert!(r.holds, "collapse failed: {:?}", r.counterexample);
    }
    // 16 opens forces the sampled path
    let big = boolean_16();
    assert!(suspension_collapse_check(big.carrier(), DEFAULT_SAMPLE_BUDGET).holds);
}

#[test]
fn every_finite_element_is_compact() {
    for q in [z12(), boolean_16(), build_chain_family(ChainFamily::L, 4)] {
        let c = q.carrier();
        let k = compact_elements(c);
        assert_eq!(k, (0..c.size()).collect::<Vec<_>>());
        assert_eq!(k.contains(&c.top()), is_compact_lattice(c), "1 ∈ K(L) ⇔ compact");
        for &a in &k {
            for &b in &k {
                assert!(k.contains(&c.join(a, b)), "sums of compacts are compact");
            }
        }
        assert!(is_algebraic(c));
    }
}

#[test]
fn coherence_ladder_and_implication_chain() {
    let product = product_quantale(
        &build_chain_family(ChainFamily::B, 2),
        &build_chain_family(ChainFamily::L, 2),
    );
    for q in [
        z12(),
        build_chain_family(ChainFamily::B, 3),
        build_chain_family(ChainFamily::L, 2),
        build_open_set_quantale(2, &[vec![], vec![0], vec![0, 1]]).unwrap(),
        boolean_16(),
        product,
    ] {
        let c = q.carrier();
        assert!(is_noetherian(c));
        assert!(is_coherent(&q));
        assert!(is_precoherent(&q));
        assert!(is_blooming(&q));
        assert!(is_algebraic(c));
        assert!(is_continuous(c));
        assert!(is_shrinkable(c));
    }
}

#[test]
fn selective_base_criterion_on_principal_ideals() {
    let q = z12();
    // every ideal of Z/12 is principal, so the principal ideals are the
    // whole carrier and the criterion applies directly
    let all: Vec<usize> = (0..q.size()).collect();
    assert!(selective_base_precoherent(&q, &all).unwrap());

    // a base that generates nothing below (2) fails the join hypothesis
    assert!(!selective_base_precoherent(&q, &[h(&q, "(12)")]).unwrap());

    // dropping (12) breaks both generation at (12) and closure at (4)·(6)
    let partial: Vec<usize> = all
        .iter()
        .copied()
        .filter(|&x| x != h(&q, "(12)"))
        .collect();
    assert!(!selective_base_precoherent(&q, &partial).unwrap());

    assert!(selective_base_precoherent(&q, &[q.size()]).is_err(), "bad handle");
}

#[test]
fn mf_of_z6_is_coherent() {
    let q = Arc::new(build_ideal_quantale(6).unwrap());
    let (mf, filters) = mfilter::mf_quantale(&q, mfilter::DEFAULT_ENUM_CAP).unwrap();
    assert_eq!(filters.len(), 4);
    assert!(is_coherent(&mf));
    assert!(is_blooming(&mf));
}

#[test]
fn sigma_flat_is_singleton_and_satisfies_the_adjunction() {
    let q = z12();
    let c = q.carrier();
    let classes = materialize_suspension(c, DEFAULT_SAMPLE_BUDGET);
    for a in 0..c.size() {
        let flat = sigma_flat(c, &classes, a).unwrap();
        assert_eq!(flat.sigma(c), a);
        assert!(equivalent(c, &flat, &SuspensionClass::singleton(a)));
        for s in &classes {
            assert_eq!(
                leq_star(c, &flat, s),
                c.leq(a, s.sigma(c)),
                "σ♭(a) ≤ S ⇔ a ≤ σ(S)"
            );
        }
    }
}

#[test]
fn suspension_meet_matches_the_carrier_meet() {
    // exhaustive class lists; carriers kept at ≤ 6 elements
    for carrier in [
        z12().carrier().clone(),
        build_chain_family(ChainFamily::B, 3).carrier().clone(),
        antichain_with_top(),
    ] {
        let c = &carrier;
        let classes = materialize_suspension(c, DEFAULT_SAMPLE_BUDGET);
        for s in &classes {
            for t in &classes {
                let wedge = suspension_meet(c, &classes, s, t);
                match c.meet(s.sigma(c), t.sigma(c)) {
                    Meet::Element(m) => {
                        let w = wedge.expect("meet downstairs forces meet upstairs");
                        assert_eq!(w.sigma(c), m, "σ(S∧T) = σ(S)∧σ(T)");
                        assert!(leq_star(c, &w, s) && leq_star(c, &w, t));
                    }
                    Meet::Absent => assert!(wedge.is_none()),
                }
            }
        }
    }
    assert!(is_shrinkable(&antichain_with_top()), "meets may be absent, σ still shrinks");
}

mod properties {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn random_subsets_collapse_and_compare_by_sigma(
            mask_s in 1u64..(1 << 8),
            mask_t in 1u64..(1 << 8),
        ) {
            let q = build_ideal_quantale(30).unwrap();
            let c = q.carrier();
            let subset = |m: u64| -> Vec<usize> {
                (0..8).filter(|&i| m >> i & 1 == 1).collect()
            };
            let s = SuspensionClass::new(c, &subset(mask_s)).unwrap();
            let t = SuspensionClass::new(c, &subset(mask_t)).unwrap();
            prop_assert_eq!(leq_star(c, &s, &t), c.leq(s.sigma(c), t.sigma(c)));
            let collapsed = SuspensionClass::singleton(s.sigma(c));
            prop_assert!(equivalent(c, &s, &collapsed));
            // canonicalization is idempotent
            let again = SuspensionClass::new(c, s.rep()).unwrap();
            prop_assert_eq!(again.rep(), s.rep());
        }
    }
}
