use std::sync::Arc;

use mfilter::*;
use quantale_core::*;

fn z12() -> Arc<FiniteQuantale> {
    Arc::new(build_ideal_quantale(12).unwrap())
}

fn h(q: &FiniteQuantale, name: &str) -> usize {
    q.carrier().index_of(name).unwrap()
}

fn member_names(f: &MFilter) -> Vec<String> {
    f.members()
        .iter()
        .map(|i| f.quantale().name(i).to_owned())
        .collect()
}

#[test]
fn generate_filter_pinned_values() {
    let q = z12();
    let f = generate_filter(&q, &[h(&q, "(2)")]).unwrap();
    assert_eq!(member_names(&f), ["(1)", "(2)", "(4)"], "powers of (2) stop at (4)");

    let unit_only = generate_filter(&q, &[q.unit()]).unwrap();
    assert!(unit_only.is_trivial());

    let whole = generate_filter(&q, &[h(&q, "(2)"), h(&q, "(3)")]).unwrap();
    assert!(whole.is_whole(), "(2)(3)(2) = (12) pulls in the bottom");

    assert!(generate_filter(&q, &[]).is_err());
}

#[test]
fn minimal_filter_pinned_values() {
    let q = z12();
    let f = minimal_filter(&q, h(&q, "(3)"));
    assert_eq!(member_names(&f), ["(1)", "(3)"]);
    assert_eq!(f.display(), "F{(3)}");

    // idempotent case: F_f is just the up-set of f
    let s = Arc::new(build_open_set_quantale(2, &[vec![], vec![0], vec![0, 1]]).unwrap());
    for f0 in 0..s.size() {
        let filt = minimal_filter(&s, f0);
        let up = s.carrier().up_closure(&[f0]);
        assert_eq!(filt.members(), &up);
    }
}

#[test]
fn comaximal_filter_pinned_values() {
    let q = z12();
    let f = comaximal_filter(&q, h(&q, "(3)"));
    assert_eq!(member_names(&f), ["(1)", "(2)", "(4)"]);
    assert!(comaximal_filter(&q, q.unit()).is_whole());

    // finite O(X): F_{⊥U} = {V : U^c ⊆ V}
    let d = Arc::new(
        build_open_set_quantale(2, &[vec![], vec![0], vec![1], vec![0, 1]]).unwrap(),
    );
    let u = h(&d, "{0}");
    let f = comaximal_filter(&d, u);
    assert_eq!(member_names(&f), ["{1}", "{0,1}"], "opens containing U^c = {{1}}");
}

#[test]
fn codense_filter_pinned_values() {
    let q = z12();
    let p = h(&q, "(2)");
    let f = codense_filter(&q, p);
    assert_eq!(member_names(&f), ["(1)", "(3)"]);
    // prime description: F_{∤p} = {q : q ≰ p}
    for x in 0..q.size() {
        assert_eq!(f.contains(x), !q.leq(x, p));
    }
    assert!(codense_filter(&q, q.unit()).is_whole());

    let s = Arc::new(build_open_set_quantale(2, &[vec![], vec![0], vec![0, 1]]).unwrap());
    let dense = codense_filter(&s, h(&s, "{}"));
    assert_eq!(member_names(&dense), ["{0}", "{0,1}"], "the dense opens");
}

#[test]
fn sum_and_product_pinned_values() {
    let q = z12();
    let f3 = minimal_filter(&q, h(&q, "(3)"));
    let f2 = minimal_filter(&q, h(&q, "(2)"));

    let prod = filter_product(&f3, &f2);
    assert!(prod.is_trivial(), "F_(3) · F_(2) = {{(1)}}");

    let sum = filter_sum(&f3, &f2);
    let f6 = minimal_filter(&q, h(&q, "(6)"));
    assert_eq!(sum, f6, "F_f + F_g = F_fg");
    assert!(sum.is_whole(), "(6)² = (12) is the bottom");

    assert_eq!(filter_sum(&f3, &f3), f3, "sum is idempotent");
}

#[test]
fn ff_fg_identities_exhaustive() {
    for q in [
        z12(),
        Arc::new(build_open_set_quantale(2, &[vec![], vec![0], vec![0, 1]]).unwrap()),
        Arc::new(build_chain_family(ChainFamily::L, 3)),
    ] {
        for f in 0..q.size() {
            for g in 0..q.size() {
                let ff = minimal_filter(&q, f);
                let fg = minimal_filter(&q, g);
                assert_eq!(
                    filter_product(&ff, &fg),
                    minimal_filter(&q, q.join(f, g)),
                    "F_f · F_g = F_(f+g) at f={}, g={}",
                    q.name(f),
                    q.name(g)
                );
                assert_eq!(
                    filter_sum(&ff, &fg),
                    minimal_filter(&q, q.mult(f, g)),
                    "F_f + F_g = F_(fg) at f={}, g={}",
                    q.name(f),
                    q.name(g)
                );
            }
        }
    }
}

#[test]
fn enumerate_z6_finds_exactly_four_filters() {
    let q = Arc::new(build_ideal_quantale(6).unwrap());
    let filters = enumerate_mfilters(&q, DEFAULT_ENUM_CAP).unwrap();
    assert_eq!(filters.len(), 4);
    let sets: Vec<Vec<String>> = filters.iter().map(member_names).collect();
    assert!(sets.contains(&vec!["(1)".to_owned()]));
    assert!(sets.contains(&vec!["(1)".to_owned(), "(2)".to_owned()]));
    assert!(sets.contains(&vec!["(1)".to_owned(), "(3)".to_owned()]));
    assert!(sets.contains(&vec![
        "(1)".to_owned(),
        "(2)".to_owned(),
        "(3)".to_owned(),
        "(6)".to_owned()
    ]));

    let two_chain = Arc::new(build_chain_family(ChainFamily::B, 1));
    assert_eq!(enumerate_mfilters(&two_chain, DEFAULT_ENUM_CAP).unwrap().len(), 2);
}

#[test]
fn mf_quantale_is_an_idempotent_quantale_with_trivial_bottom() {
    let q = Arc::new(build_ideal_quantale(6).unwrap());
    let (mf, filters) = mf_quantale(&q, DEFAULT_ENUM_CAP).unwrap();
    assert!(validate_quantale(&mf).is_valid());
    assert!(is_idempotent(&mf));
    let bottom = mf.carrier().bottom().expect("mF(Q) has a least element");
    assert!(filters[bottom].is_trivial(), "least filter is {{1}}");
    assert!(filters[mf.unit()].is_whole());
}

#[test]
fn enumeration_cap_is_honored() {
    let q = z12();
    match enumerate_mfilters(&q, 3) {
        Err(FilterError::CapExceeded { visited }) => assert!(visited > 3),
        other => panic!("expected cap refusal, got {other:?}"),
    }
}

#[test]
fn prime_avoidance_on_corpus() {
    for q in [z12(), Arc::new(build_ideal_quantale(30).unwrap())] {
        let primes = prime_elements(&q);
        for f in enumerate_mfilters(&q, DEFAULT_ENUM_CAP).unwrap() {
            assert!(is_solid(&f), "finite filters are solid");
            for x in 0..q.size() {
                if !f.contains(x) {
                    assert!(
                        primes.iter().any(|&p| q.leq(x, p) && !f.contains(p)),
                        "prime avoidance fails for {} outside {}",
                        q.name(x),
                        f.display()
                    );
                }
            }
        }
    }
}

#[test]
fn filter_sum_is_the_least_upper_bound() {
    let q = z12();
    let all = enumerate_mfilters(&q, DEFAULT_ENUM_CAP).unwrap();
    for f in &all {
        for g in &all {
            let s = filter_sum(f, g);
            assert!(f.is_subset(&s) && g.is_subset(&s));
            for hf in &all {
                if f.is_subset(hf) && g.is_subset(hf) {
                    assert!(s.is_subset(hf), "sum must be smallest");
                }
            }
            let p = filter_product(f, g);
            assert_eq!(p.members(), &f.members().intersection(g.members()));
        }
    }
}

#[test]
fn parser_accepts_both_syntaxes_and_composes() {
    let q = z12();
    let a = parse_filter_spec(&q, "min:(2)").unwrap();
    let b = parse_filter_spec(&q, "min((2))").unwrap();
    assert_eq!(a, b);
    assert_eq!(a, minimal_filter(&q, h(&q, "(2)")));

    let s = parse_filter_spec(&q, "sum(min:(2),comax:(3))").unwrap();
    assert_eq!(
        s,
        filter_sum(
            &minimal_filter(&q, h(&q, "(2)")),
            &comaximal_filter(&q, h(&q, "(3)"))
        )
    );

    assert_eq!(parse_filter_spec(&q, "trivial").unwrap(), MFilter::trivial(&q));
    assert_eq!(parse_filter_spec(&q, "all").unwrap(), MFilter::whole(&q));
    assert!(parse_filter_spec(&q, "gen((2),(3))").unwrap().is_whole());
    assert!(parse_filter_spec(&q, "min:(5)").is_err(), "no element named (5)");
    assert!(parse_filter_spec(&q, "frobnicate:(2)").is_err());
}
