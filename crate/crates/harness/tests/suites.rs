//! Every suite must pass end to end on a trimmed corpus; reports must be
//! deterministic for a fixed seed.

use std::sync::OnceLock;

use harness::{run_suite, Corpus, HarnessError, SUITE_NAMES};

fn corpus() -> &'static Corpus {
    static CORPUS: OnceLock<Corpus> = OnceLock::new();
    CORPUS.get_or_init(|| {
        let mut c = Corpus::full(8, 7);
        c.retain_max_size(8);
        c
    })
}

#[test]
fn every_suite_passes_on_the_trimmed_corpus() {
    for name in SUITE_NAMES {
        let report = run_suite(name, corpus(), 7).unwrap();
        assert!(report.all_pass(), "{}", report.render_text());
        assert!(!report.checks.is_empty(), "suite {name} ran no checks");
    }
}

#[test]
fn reports_are_deterministic_for_a_fixed_seed() {
    let key = |name: &str| {
        run_suite(name, corpus(), 11)
            .unwrap()
            .checks
            .iter()
            .map(|c| (c.proposition.clone(), c.instance.clone(), c.pass, c.detail.clone()))
            .collect::<Vec<_>>()
    };
    for name in ["core-axioms", "filters", "shrink-suspension"] {
        assert_eq!(key(name), key(name), "suite {name} not deterministic");
    }
}

#[test]
fn unknown_suites_are_rejected() {
    assert!(matches!(
        run_suite("no-such-suite", corpus(), 0),
        Err(HarnessError::UnknownSuite(_))
    ));
}
