//! Acceptance gate: one test and one printed pass/fail line per criterion.
//!
//! Run with `--nocapture` to see every line; on failure the same line is the
//! panic message.

use std::sync::{Arc, OnceLock};
use std::time::Instant;

use harness::{
    algebraic_baire, gluing_check, leq1_oracle, merge_bound_check, proper_radical_divisors,
    run_suite, Corpus,
};
use localization::{localize, saturate1, xs_crosscheck};
use mfilter::enumerate_mfilters;
use ordinal_case::{nonlocalizability_report, ord_min_steps, OrdElem, StepResult};
use quantale_core::{are_isomorphic, build_ideal_quantale, ideal_divisors, self_module};

fn corpus() -> &'static Corpus {
    static CORPUS: OnceLock<Corpus> = OnceLock::new();
    CORPUS.get_or_init(|| Corpus::full(48, 42))
}

fn report(n: usize, slug: &str, outcome: Result<String, String>) {
    match outcome {
        Ok(detail) => println!("criterion {n} ({slug}): PASS — {detail}"),
        Err(why) => {
            let line = format!("criterion {n} ({slug}): FAIL — {why}");
            println!("{line}");
            panic!("{line}");
        }
    }
}

#[test]
fn criterion_1_oracle_equivalence() {
    let started = Instant::now();
    let run = || -> Result<String, String> {
        let mut compared = 0usize;
        let mut instances = 0usize;
        for entry in corpus().entries() {
            if entry.tier != harness::Tier::Exhaustive {
                continue;
            }
            let q = &entry.quantale;
            assert!(q.size() <= 4, "exhaustive tier is capped at 4 elements");
            let m = self_module(q);
            let filters = enumerate_mfilters(q, 1 << 16).map_err(|e| e.to_string())?;
            for f in &filters {
                for a in 0..m.size() {
                    for b in 0..m.size() {
                        let oracle = leq1_oracle(&m, f, a, b);
                        let decided = m.leq(a, saturate1(&m, f, b));
                        if oracle != decided {
                            return Err(format!(
                                "discrepancy at {}: a={}, b={}, F={}",
                                entry.id,
                                m.name(a),
                                m.name(b),
                                f.display()
                            ));
                        }
                        compared += 1;
                    }
                }
            }
            instances += 1;
        }
        let secs = started.elapsed().as_secs_f64();
        if secs > 300.0 {
            return Err(format!("runtime {secs:.1}s exceeds 5 minutes"));
        }
        Ok(format!(
            "{compared} one-step comparisons on {instances} exhaustive-tier quantales, zero discrepancies, {secs:.2}s"
        ))
    };
    report(1, "oracle-equivalence", run());
}

#[test]
fn criterion_2_ring_localization() {
    let run = || -> Result<String, String> {
        let q = Arc::new(build_ideal_quantale(12).map_err(|e| e.to_string())?);
        let m = self_module(&q);
        let divisors = ideal_divisors(12);
        for (gen, modulus) in [(2u64, 3u64), (3, 4)] {
            let handle = divisors.iter().position(|&d| d == gen).unwrap();
            let f = mfilter::minimal_filter(&q, handle);
            let loc = localize(&m, &f).map_err(|e| e.to_string())?;
            let got = loc.quotient_quantale().ok_or("no quotient quantale")?;
            let want = build_ideal_quantale(modulus).map_err(|e| e.to_string())?;
            if !are_isomorphic(got, &want) {
                return Err(format!(
                    "localize(Id(Z/12), F_({gen})) is not Id(Z/{modulus})"
                ));
            }
        }
        let mut agreements = 0usize;
        for n in 2..=60u64 {
            for d in ideal_divisors(n) {
                if !xs_crosscheck(n, &[d]).map_err(|e| e.to_string())? {
                    return Err(format!("xS crosscheck failed at n = {n}, s = ({d})"));
                }
                agreements += 1;
            }
        }
        Ok(format!(
            "F_(2) ≅ Id(Z/3) and F_(3) ≅ Id(Z/4) exactly; xS agrees on {agreements} ideals for n ≤ 60"
        ))
    };
    report(2, "ring-localization-crosscheck", run());
}

#[test]
fn criterion_3_gluing() {
    let run = || -> Result<String, String> {
        let mut pairs = 0usize;
        let mut triples = 0usize;
        for entry in corpus().entries() {
            let q = &entry.quantale;
            if q.size() > 4 {
                continue;
            }
            let m = self_module(q);
            let filters = enumerate_mfilters(q, 1 << 16).map_err(|e| e.to_string())?;
            for i in 0..filters.len() {
                for j in i..filters.len() {
                    let stats = gluing_check(&m, &[filters[i].clone(), filters[j].clone()])
                        .map_err(|e| format!("{}: {e}", entry.id))?;
                    if !stats.injective || !stats.surjective_onto_compatible {
                        return Err(format!(
                            "{}: pair ({}, {}) is not glued exactly",
                            entry.id,
                            filters[i].display(),
                            filters[j].display()
                        ));
                    }
                    pairs += 1;
                    for k in j..filters.len() {
                        let stats = gluing_check(
                            &m,
                            &[filters[i].clone(), filters[j].clone(), filters[k].clone()],
                        )
                        .map_err(|e| format!("{}: {e}", entry.id))?;
                        if !stats.injective || !stats.surjective_onto_compatible {
                            return Err(format!("{}: triple not glued exactly", entry.id));
                        }
                        triples += 1;
                    }
                }
            }
        }
        // CRT instance: Id(Z/12) → 3-chain × 2-chain is a bijection
        let q = Arc::new(build_ideal_quantale(12).map_err(|e| e.to_string())?);
        let m = self_module(&q);
        let divisors = ideal_divisors(12);
        let f3 = mfilter::minimal_filter(&q, divisors.iter().position(|&d| d == 3).unwrap());
        let f2 = mfilter::minimal_filter(&q, divisors.iter().position(|&d| d == 2).unwrap());
        let stats = gluing_check(&m, &[f3.clone(), f2.clone()])?;
        if !(stats.injective
            && stats.surjective_onto_compatible
            && stats.merged_classes == 6
            && stats.factor_classes == vec![3, 2]
            && stats.compatible_tuples == 6)
        {
            return Err(format!("CRT instance is not a 6 = 3 × 2 bijection: {stats:?}"));
        }
        for (f, len) in [(&f3, 3usize), (&f2, 2)] {
            let loc = localize(&m, f).map_err(|e| e.to_string())?;
            let c = loc.quotient_quantale().ok_or("no quotient quantale")?.carrier();
            if c.size() != len {
                return Err(format!("factor has {} classes, wanted {len}", c.size()));
            }
            for a in 0..c.size() {
                for b in 0..c.size() {
                    if !c.leq(a, b) && !c.leq(b, a) {
                        return Err("CRT factor quotient is not a chain".into());
                    }
                }
            }
        }
        Ok(format!(
            "{pairs} pairs and {triples} triples glued exactly on all size-≤4 instances; CRT factor chains 3 × 2 bijective"
        ))
    };
    report(3, "gluing-theorem", run());
}

#[test]
fn criterion_4_merge_bound() {
    let run = || -> Result<String, String> {
        let mut total = 0usize;
        for entry in corpus().entries() {
            let (_, checked) =
                merge_bound_check(&entry.quantale, 42).map_err(|e| format!("{}: {e}", entry.id))?;
            total += checked;
        }
        Ok(format!(
            "steps_FG ≤ steps_F + steps_G − 1 at {total} (pair, element) instances across all {} corpus entries",
            corpus().len()
        ))
    };
    report(4, "filter-merge-bound", run());
}

#[test]
fn criterion_5_counterexample_reproductions() {
    let run = || -> Result<String, String> {
        let rep = nonlocalizability_report(64);
        for row in &rep.rows {
            match row.steps {
                StepResult::StepCount(k) if k as u64 == row.n && row.witness_checked => {}
                _ => return Err(format!("steps(nω → 0) ≠ n at n = {}", row.n)),
            }
        }
        if !rep.uniform_bound_refuted {
            return Err("ordinal step counts do not refute a uniform bound".into());
        }
        if !matches!(
            ord_min_steps(OrdElem::omega2(), OrdElem::Zero, 64),
            StepResult::ExceedsBound
        ) {
            return Err("ω² → 0 did not exceed bound 64".into());
        }
        let two = interval_quantale::two_step_counterexample();
        if two.exact_steps != 2 {
            return Err(format!("interval instance took {} steps, wanted 2", two.exact_steps));
        }
        if two.preimage_exists {
            return Err("(∅-class, X-class) unexpectedly has a preimage".into());
        }
        Ok("steps(nω → 0) = n for n ≤ 64, ω² exceeds bound 64; interval ∅ ~ X in exactly 2 steps with no compatible preimage".into())
    };
    report(5, "counterexample-reproductions", run());
}

#[test]
fn criterion_6_dense_filter_structure() {
    use interval_quantale::{
        dense_quotient_class, hbar, rat, regularize, sample_opens, IntervalOpen, Space,
    };
    let run = || -> Result<String, String> {
        let spaces = [
            Space::new(vec![(rat(0, 1), rat(1, 1))]).map_err(|e| e.to_string())?,
            Space::new(vec![(rat(0, 1), rat(1, 1)), (rat(2, 1), rat(3, 1))])
                .map_err(|e| e.to_string())?,
        ];
        let mut cases = 0usize;
        let mut pair_checks = 0usize;
        for (si, space) in spaces.iter().enumerate() {
            let opens = sample_opens(space, if si == 0 { 16 } else { 12 }, 500, 0xd5e + si as u64);
            let mut classes = Vec::with_capacity(opens.len());
            let mut hbars = Vec::with_capacity(opens.len());
            for u in &opens {
                let r = regularize(u);
                if regularize(&r) != r {
                    return Err(format!("regularize not idempotent at {u}"));
                }
                classes.push(dense_quotient_class(u));
                hbars.push(hbar(u));
                cases += 1;
            }
            for i in 0..opens.len() {
                for j in (i + 1)..opens.len() {
                    if (classes[i] == classes[j]) != (hbars[i] == hbars[j]) {
                        return Err(format!(
                            "class/ħ equivalence split at {} vs {}",
                            opens[i], opens[j]
                        ));
                    }
                    pair_checks += 1;
                }
            }
            if dense_quotient_class(&IntervalOpen::whole(space))
                == dense_quotient_class(&IntervalOpen::empty(space))
            {
                return Err("class(X) = class(∅)".into());
            }
        }
        Ok(format!(
            "regularize idempotent on {cases} sampled opens; class ⇔ ħ on {pair_checks} pairs; class(X) ≠ class(∅) on both spaces"
        ))
    };
    report(6, "dense-filter-structure", run());
}

#[test]
fn criterion_7_baire_witness() {
    use interval_quantale::{baire_witness, parse_closed, rat, Space};
    let run = || -> Result<String, String> {
        let space = Space::new(vec![(rat(0, 1), rat(1, 1))]).map_err(|e| e.to_string())?;
        let sets: Vec<_> = (1..=100)
            .map(|i| parse_closed(&space, &format!("[{i}/101,{i}/101]")))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        let started = Instant::now();
        let first = baire_witness(&space, &sets, 2).map_err(|e| e.to_string())?;
        let secs = started.elapsed().as_secs_f64();
        if !first.verified {
            return Err("witness failed verification against the 100 sets".into());
        }
        if secs > 1.0 {
            return Err(format!("took {secs:.3}s, limit is 1s"));
        }
        let second = baire_witness(&space, &sets, 2).map_err(|e| e.to_string())?;
        if first.point != second.point {
            return Err("witness is not deterministic across runs".into());
        }
        Ok(format!(
            "point {} avoids all 100 nowhere-dense sets, deterministic, {secs:.3}s",
            first.point
        ))
    };
    report(7, "baire-witness", run());
}

#[test]
fn criterion_8_algebraic_baire() {
    let run = || -> Result<String, String> {
        let started = Instant::now();
        let mut found = 0usize;
        for n in 2..=200u64 {
            for b in proper_radical_divisors(n) {
                let rep = algebraic_baire(n, b).map_err(|e| e.to_string())?;
                match rep.witness {
                    Some(w) if w.verified => found += 1,
                    _ => return Err(format!("no verified (𝔪, r) at n = {n}, 𝔟 = ({b})")),
                }
            }
        }
        let secs = started.elapsed().as_secs_f64();
        if secs > 120.0 {
            return Err(format!("runtime {secs:.1}s exceeds 2 minutes"));
        }
        Ok(format!(
            "verified (𝔪, r) witnesses for all {found} proper radical ideals over n ≤ 200, {secs:.2}s"
        ))
    };
    report(8, "algebraic-baire", run());
}

#[test]
fn criterion_9_finite_triviality() {
    let run = || -> Result<String, String> {
        let mut checks = 0usize;
        for suite in ["normal-conormal", "shrink-suspension", "coherence"] {
            let rep = run_suite(suite, corpus(), 42).map_err(|e| e.to_string())?;
            if !rep.all_pass() {
                return Err(rep.render_text());
            }
            checks += rep.checks.len();
        }
        Ok(format!(
            "binormal + 1-step filters, shrinkable/algebraic/precoherent/blooming/continuous carriers, Σ collapse: {checks} checks on {} instances, 100% pass",
            corpus().len()
        ))
    };
    report(9, "finite-triviality-oracles", run());
}
