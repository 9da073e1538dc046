//! Corpus generation and the cross-cutting verification suites.
//!
//! The corpus has three tiers: a curated list of named structures (chains,
//! divisor quantales, finite-topology frames, products), an exhaustive list
//! of all quantales on carriers of size ≤ 4 up to isomorphism, and a seeded
//! randomized tier up to size 8.  `run_suite` evaluates one of eight named
//! proposition suites over a corpus and reports pass/fail per
//! (proposition, instance), minimizing failing quantales by greedy element
//! deletion.  `algebraic_baire` and `spec_injectivity` are the ring-side
//! brute-forcers.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use coherence::{
    compact_elements, is_algebraic, is_blooming, is_coherent, is_continuous, is_precoherent,
    is_shrinkable, materialize_suspension, selective_base_precoherent, sigma_flat,
    suspension_collapse_check, suspension_meet, DEFAULT_SAMPLE_BUDGET,
};
use localization::{
    compose_localizations, gnf, is_binormal, is_conormal, is_normal, is_one_step, lcf,
    local_leq, localization_map, localize, saturate1, validate_quotient, xs_crosscheck,
    LocalSteps, SaturationOperator,
};
use mfilter::{
    codense_filter, comaximal_filter, enumerate_mfilters, filter_product, filter_sum,
    mf_quantale, minimal_filter, FilterError, MFilter,
};
use order_core::{validate_carrier, Carrier, Meet, UpSet};
use quantale_core::{
    are_isomorphic, build_chain_family, build_ideal_quantale, build_open_set_quantale,
    canonical_key, ideal_divisors, is_idempotent, product_quantale, self_module,
    validate_quantale, ChainFamily, FiniteQModule, FiniteQuantale,
};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("bad instance: {0}")]
    BadInstance(String),
}

/// Candidate up-sets visited per filter enumeration.
pub const FILTER_ENUM_CAP: usize = 1 << 18;
/// Filter pairs examined per quantale in the quadratic propositions.
pub const PAIR_BUDGET: usize = 150;
/// Filter triples examined per quantale (gluing).
pub const TRIPLE_BUDGET: usize = 80;

pub const SUITE_NAMES: [&str; 8] = [
    "core-axioms",
    "filters",
    "localization",
    "shrink-suspension",
    "gluing",
    "coherence",
    "normal-conormal",
    "applications",
];

// ---------------------------------------------------------------------------
// corpus

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Tier {
    Curated,
    Exhaustive,
    Randomized,
}

#[derive(Clone)]
pub struct CorpusEntry {
    pub id: String,
    pub tier: Tier,
    pub quantale: Arc<FiniteQuantale>,
}

pub struct Corpus {
    entries: Vec<CorpusEntry>,
}

impl Corpus {
    pub fn entries(&self) -> &[CorpusEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn retain_max_size(&mut self, max_size: usize) {
        self.entries.retain(|e| e.quantale.size() <= max_size);
    }

    fn push(&mut self, tier: Tier, id: String, q: FiniteQuantale) {
        assert!(
            validate_quantale(&q).is_valid(),
            "corpus entry {id} fails validation"
        );
        self.entries.push(CorpusEntry {
            id,
            tier,
            quantale: Arc::new(q),
        });
    }

    /// Named structures: 𝔹ₙ/𝕃ₙ for n ≤ 8, Id(Z/n) for n ≤ 60, the frame of
    /// every topology on ≤ 4 points (one representative per isomorphism
    /// class), and a capped list of products.
    pub fn curated() -> Corpus {
        let mut c = Corpus { entries: Vec::new() };
        for n in 1..=8 {
            c.push(Tier::Curated, format!("bn/{n}"), build_chain_family(ChainFamily::B, n));
            c.push(Tier::Curated, format!("ln/{n}"), build_chain_family(ChainFamily::L, n));
        }
        for n in 2..=60u64 {
            c.push(Tier::Curated, format!("zn/{n}"), build_ideal_quantale(n).unwrap());
        }
        let mut seen_frames: BTreeSet<Vec<usize>> = BTreeSet::new();
        for points in 1..=4usize {
            for (idx, opens) in all_topologies(points).into_iter().enumerate() {
                let opens: Vec<Vec<usize>> = opens
                    .iter()
                    .map(|&mask| (0..points).filter(|&p| mask >> p & 1 == 1).collect())
                    .collect();
                let q = build_open_set_quantale(points, &opens).unwrap();
                if seen_frames.insert(canonical_key(&q)) {
                    c.push(Tier::Curated, format!("top/{points}-{idx}"), q);
                }
            }
        }
        let b = |n| build_chain_family(ChainFamily::B, n);
        let l = |n| build_chain_family(ChainFamily::L, n);
        let zn = |n| build_ideal_quantale(n).unwrap();
        let sierp = build_open_set_quantale(2, &[vec![], vec![0], vec![0, 1]]).unwrap();
        let products: Vec<(&str, FiniteQuantale)> = vec![
            ("prod/b2xl2", product_quantale(&b(2), &l(2))),
            ("prod/l3xb3", product_quantale(&l(3), &b(3))),
            ("prod/zn6xb1", product_quantale(&zn(6), &b(1))),
            ("prod/zn10xzn15", product_quantale(&zn(10), &zn(15))),
            ("prod/sierpxsierp", product_quantale(&sierp, &sierp)),
            ("prod/l2xl2", product_quantale(&l(2), &l(2))),
        ];
        for (id, q) in products {
            assert!(q.size() <= 16, "curated products are capped at 16 elements");
            c.push(Tier::Curated, id.to_owned(), q);
        }
        c
    }

    /// Every quantale on a carrier of ≤ 4 elements, one per isomorphism
    /// class, in canonical-key order.
    pub fn exhaustive() -> Corpus {
        let mut c = Corpus { entries: Vec::new() };
        for size in 1..=4usize {
            let mut by_key: BTreeMap<Vec<usize>, FiniteQuantale> = BTreeMap::new();
            for carrier in labeled_lattices(size) {
                for q in quantales_on(&carrier) {
                    by_key.entry(canonical_key(&q)).or_insert(q);
                }
            }
            for (idx, (_, q)) in by_key.into_iter().enumerate() {
                c.push(Tier::Exhaustive, format!("exh/{size}-{idx}"), q);
            }
        }
        c
    }

    /// Seeded random quantales: carriers are down-set lattices of random
    /// posets on ≤ 3 generators (size ≤ 8), multiplications come from
    /// rejection-sampled assignments on join-irreducible pairs.
    pub fn randomized(samples: usize, seed: u64) -> Corpus {
        let mut c = Corpus { entries: Vec::new() };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for i in 0..samples {
            let q = random_quantale(&mut rng);
            let id = format!("rnd/{i}-n{}", q.size());
            c.push(Tier::Randomized, id, q);
        }
        c
    }

    pub fn full(samples: usize, seed: u64) -> Corpus {
        let mut c = Corpus::curated();
        c.entries.extend(Corpus::exhaustive().entries);
        c.entries.extend(Corpus::randomized(samples, seed).entries);
        c
    }
}

/// All topologies on `points` labeled points, each as a sorted list of open
/// bitmasks.  Exhaustive over families of subsets containing ∅ and X and
/// closed under union and intersection.
fn all_topologies(points: usize) -> Vec<Vec<u32>> {
    let num_subsets = 1usize << points;
    let full = (num_subsets - 1) as u32;
    let mut out = Vec::new();
    for fam in 0u64..1 << num_subsets {
        if fam & 1 == 0 || fam >> full & 1 == 0 {
            continue;
        }
        let opens: Vec<u32> = (0..num_subsets as u32).filter(|&s| fam >> s & 1 == 1).collect();
        let closed = opens.iter().all(|&a| {
            opens
                .iter()
                .all(|&b| fam >> (a | b) & 1 == 1 && fam >> (a & b) & 1 == 1)
        });
        if closed {
            out.push(opens);
        }
    }
    out
}

/// Labeled lattices with bottom on `n` elements, as carriers.  Orders are
/// enumerated pair state by pair state (incomparable, <, >), then filtered
/// for transitivity, pairwise joins, a top, and a bottom.
fn labeled_lattices(n: usize) -> Vec<Carrier> {
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .collect();
    let mut out = Vec::new();
    let total = 3usize.pow(pairs.len() as u32);
    'cand: for code in 0..total {
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        let mut rem = code;
        for &(i, j) in &pairs {
            match rem % 3 {
                1 => leq[i][j] = true,
                2 => leq[j][i] = true,
                _ => {}
            }
            rem /= 3;
        }
        for a in 0..n {
            for b in 0..n {
                for d in 0..n {
                    if leq[a][b] && leq[b][d] && !leq[a][d] {
                        continue 'cand;
                    }
                }
            }
        }
        // pairwise least upper bounds
        let mut join = vec![vec![0usize; n]; n];
        for a in 0..n {
            for b in 0..n {
                let ubs: Vec<usize> =
                    (0..n).filter(|&u| leq[a][u] && leq[b][u]).collect();
                let least = ubs.iter().copied().find(|&u| ubs.iter().all(|&v| leq[u][v]));
                match least {
                    Some(u) => join[a][b] = u,
                    None => continue 'cand,
                }
            }
        }
        let top = match (0..n).find(|&t| (0..n).all(|a| leq[a][t])) {
            Some(t) => t,
            None => continue 'cand,
        };
        if !(0..n).any(|b| (0..n).all(|a| leq[b][a])) {
            continue 'cand; // complete: the empty join must exist
        }
        if let Ok(carrier) = Carrier::try_new(names.clone(), join, top) {
            out.push(carrier);
        }
    }
    out
}

/// Every valid multiplication on the given lattice.  In any quantale with
/// unit = top, ab ≤ a∧b, so only values below the meet are tried; each
/// completed table still goes through the full definitional validator.
fn quantales_on(carrier: &Carrier) -> Vec<FiniteQuantale> {
    let n = carrier.size();
    let top = carrier.top();
    let free: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a..n).map(move |b| (a, b)))
        .filter(|&(a, b)| a != top && b != top)
        .collect();
    let cands: Vec<Vec<usize>> = free
        .iter()
        .map(|&(a, b)| match carrier.meet(a, b) {
            Meet::Element(m) => carrier.down_set(m),
            Meet::Absent => vec![],
        })
        .collect();
    if cands.iter().any(|c| c.is_empty()) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut choice = vec![0usize; free.len()];
    loop {
        let mut mult = vec![vec![0usize; n]; n];
        for a in 0..n {
            mult[top][a] = a;
            mult[a][top] = a;
        }
        for (k, &(a, b)) in free.iter().enumerate() {
            let v = cands[k][choice[k]];
            mult[a][b] = v;
            mult[b][a] = v;
        }
        if let Ok(q) = FiniteQuantale::try_new(
            Carrier::try_new(
                carrier.names().to_vec(),
                (0..n).map(|a| (0..n).map(|b| carrier.join(a, b)).collect()).collect(),
                top,
            )
            .unwrap(),
            mult,
        ) {
            if validate_quantale(&q).is_valid() {
                out.push(q);
            }
        }
        // odometer
        let mut k = 0;
        loop {
            if k == free.len() {
                return out;
            }
            choice[k] += 1;
            if choice[k] < cands[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

/// Definitional census at small sizes: all symmetric tables over all labeled
/// lattices, validated with no search shortcuts, partitioned into classes by
/// pairwise isomorphism tests instead of canonical keys.
fn definitional_classes(size: usize) -> Vec<FiniteQuantale> {
    let mut valid: Vec<FiniteQuantale> = Vec::new();
    for carrier in labeled_lattices(size) {
        let n = carrier.size();
        let free: Vec<(usize, usize)> =
            (0..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect();
        let total = n.pow(free.len() as u32);
        for code in 0..total {
            let mut rem = code;
            let mut mult = vec![vec![0usize; n]; n];
            for &(a, b) in &free {
                let v = rem % n;
                rem /= n;
                mult[a][b] = v;
                mult[b][a] = v;
            }
            let rebuilt = Carrier::try_new(
                carrier.names().to_vec(),
                (0..n).map(|a| (0..n).map(|b| carrier.join(a, b)).collect()).collect(),
                carrier.top(),
            )
            .unwrap();
            if let Ok(q) = FiniteQuantale::try_new(rebuilt, mult) {
                if validate_quantale(&q).is_valid() {
                    valid.push(q);
                }
            }
        }
    }
    let mut reps: Vec<FiniteQuantale> = Vec::new();
    for q in valid {
        if !reps.iter().any(|r| are_isomorphic(r, &q)) {
            reps.push(q);
        }
    }
    reps
}

#[derive(Debug, Clone, Serialize)]
pub struct CensusCrosscheck {
    pub size: usize,
    pub canonical_classes: usize,
    pub definitional_classes: usize,
}

/// Completeness cross-check for the exhaustive tier: at sizes ≤ 3 the
/// canonical-form census must agree with a brute isomorphism partition.
pub fn exhaustive_census_crosscheck() -> Vec<CensusCrosscheck> {
    (1..=3)
        .map(|size| {
            let mut keys = BTreeSet::new();
            for carrier in labeled_lattices(size) {
                for q in quantales_on(&carrier) {
                    keys.insert(canonical_key(&q));
                }
            }
            CensusCrosscheck {
                size,
                canonical_classes: keys.len(),
                definitional_classes: definitional_classes(size).len(),
            }
        })
        .collect()
}

/// One random quantale: a random poset on ≤ 3 generators gives the down-set
/// lattice; products of join-irreducibles are sampled below the meet and
/// extended by distributivity, rejecting tables the validator refuses.
fn random_quantale(rng: &mut ChaCha8Rng) -> FiniteQuantale {
    let k = rng.gen_range(1..=3usize);
    let mut lt = vec![vec![false; k]; k];
    for i in 0..k {
        for j in (i + 1)..k {
            if rng.gen_bool(0.5) {
                lt[i][j] = true;
            }
        }
    }
    for a in 0..k {
        for b in 0..k {
            for c in 0..k {
                if lt[a][b] && lt[b][c] {
                    lt[a][c] = true;
                }
            }
        }
    }
    // down-sets as bitmasks over generators
    let mut downsets: Vec<u32> = (0u32..1 << k)
        .filter(|&s| {
            (0..k).all(|j| s >> j & 1 == 0 || (0..k).all(|i| !lt[i][j] || s >> i & 1 == 1))
        })
        .collect();
    downsets.sort_by_key(|s| (s.count_ones(), *s));
    let n = downsets.len();
    let pos = |s: u32| downsets.iter().position(|&t| t == s).unwrap();
    let names: Vec<String> = downsets.iter().map(|s| format!("d{s}")).collect();
    let join: Vec<Vec<usize>> = downsets
        .iter()
        .map(|&a| downsets.iter().map(|&b| pos(a | b)).collect())
        .collect();
    let carrier = Carrier::try_new(names, join, n - 1).unwrap();
    let principal: Vec<u32> = (0..k)
        .map(|p| {
            (0..k)
                .filter(|&i| i == p || lt[i][p])
                .fold(0u32, |acc, i| acc | 1 << i)
        })
        .collect();
    for _attempt in 0..40 {
        // f on unordered generator pairs, then a·b = Σ f(p,q) over p ∈ a, q ∈ b
        let mut f = vec![vec![0u32; k]; k];
        for p in 0..k {
            for q in p..k {
                let cap = principal[p] & principal[q];
                let v = if rng.gen_bool(0.7) {
                    cap
                } else {
                    let subs: Vec<u32> = downsets.iter().copied().filter(|&s| s & !cap == 0).collect();
                    subs[rng.gen_range(0..subs.len())]
                };
                f[p][q] = v;
                f[q][p] = v;
            }
        }
        let mult: Vec<Vec<usize>> = downsets
            .iter()
            .map(|&a| {
                downsets
                    .iter()
                    .map(|&b| {
                        let mut acc = 0u32;
                        for p in 0..k {
                            for q in 0..k {
                                if a >> p & 1 == 1 && b >> q & 1 == 1 {
                                    acc |= f[p][q];
                                }
                            }
                        }
                        pos(acc)
                    })
                    .collect()
            })
            .collect();
        if let Ok(q) = FiniteQuantale::try_new(carrier.clone(), mult) {
            if validate_quantale(&q).is_valid() {
                return q;
            }
        }
    }
    // fallback: the frame of the distributive lattice itself
    let mult: Vec<Vec<usize>> = downsets
        .iter()
        .map(|&a| downsets.iter().map(|&b| pos(a & b)).collect())
        .collect();
    FiniteQuantale::try_new(carrier, mult).unwrap()
}

// ---------------------------------------------------------------------------
// suite plumbing

#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub proposition: String,
    pub instance: String,
    pub pass: bool,
    pub detail: String,
    pub counterexample: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub checks: Vec<CheckOutcome>,
}

impl SuiteReport {
    pub fn passed(&self) -> usize {
        self.checks.iter().filter(|c| c.pass).count()
    }

    pub fn failed(&self) -> usize {
        self.checks.len() - self.passed()
    }

    pub fn all_pass(&self) -> bool {
        self.failed() == 0
    }

    pub fn render_text(&self) -> String {
        let mut out = format!(
            "suite {}: {} checks, {} failed\n",
            self.suite,
            self.checks.len(),
            self.failed()
        );
        for c in &self.checks {
            if !c.pass {
                out.push_str(&format!(
                    "  FAIL {} @ {}: {}\n",
                    c.proposition, c.instance, c.detail
                ));
                if let Some(ce) = &c.counterexample {
                    out.push_str(&format!("       minimal counterexample: {ce}\n"));
                }
            }
        }
        out
    }
}

#[derive(Clone, Copy)]
struct Ctx {
    seed: u64,
}

type QCheck = fn(&Arc<FiniteQuantale>, &Ctx) -> Result<String, String>;

/// Stable fingerprint of a quantale's tables, used to derive per-instance
/// sampling seeds that survive counterexample minimization.
fn table_hash(q: &FiniteQuantale) -> u64 {
    let mut h = 0xcbf2_9ce4_8422_2325u64;
    let mut mix = |v: u64| {
        h ^= v;
        h = h.wrapping_mul(0x1000_0000_01b3);
    };
    mix(q.size() as u64);
    mix(q.unit() as u64);
    for a in 0..q.size() {
        for b in 0..q.size() {
            mix(q.join(a, b) as u64);
            mix(q.mult(a, b) as u64);
        }
    }
    h
}

fn describe_quantale(q: &FiniteQuantale) -> String {
    let n = q.size();
    let mult: Vec<String> = (0..n)
        .map(|a| (0..n).map(|b| q.mult(a, b).to_string()).collect::<Vec<_>>().join(","))
        .collect();
    format!(
        "size {n}, unit {}, elements [{}], mult rows [{}]",
        q.unit(),
        (0..n).map(|i| q.name(i).to_owned()).collect::<Vec<_>>().join(" "),
        mult.join("; ")
    )
}

/// The subquantale generated by everything except `drop`: close under join
/// and mult, keep unit and bottom.  `None` when nothing shrinks.
fn subquantale(q: &Arc<FiniteQuantale>, drop: usize) -> Option<Arc<FiniteQuantale>> {
    let n = q.size();
    let mut keep: BTreeSet<usize> = (0..n).filter(|&x| x != drop).collect();
    keep.insert(q.unit());
    if let Some(b) = q.carrier().bottom() {
        keep.insert(b);
    }
    loop {
        let cur: Vec<usize> = keep.iter().copied().collect();
        let before = keep.len();
        for &a in &cur {
            for &b in &cur {
                keep.insert(q.join(a, b));
                keep.insert(q.mult(a, b));
            }
        }
        if keep.len() == before {
            break;
        }
    }
    if keep.len() == n {
        return None;
    }
    let handles: Vec<usize> = keep.iter().copied().collect();
    let pos = |x: usize| handles.iter().position(|&h| h == x).unwrap();
    let names = handles.iter().map(|&h| q.name(h).to_owned()).collect();
    let join = handles
        .iter()
        .map(|&a| handles.iter().map(|&b| pos(q.join(a, b))).collect())
        .collect();
    let mult = handles
        .iter()
        .map(|&a| handles.iter().map(|&b| pos(q.mult(a, b))).collect())
        .collect();
    let carrier = Carrier::try_new(names, join, pos(q.unit())).ok()?;
    FiniteQuantale::try_new(carrier, mult).ok().map(Arc::new)
}

/// Greedy deletion: repeatedly drop any element whose generated subquantale
/// still fails.  Returns a failing quantale no larger than the input.
fn minimize_quantale(
    start: &Arc<FiniteQuantale>,
    fails: impl Fn(&Arc<FiniteQuantale>) -> bool,
) -> Arc<FiniteQuantale> {
    let mut cur = Arc::clone(start);
    'outer: loop {
        for x in 0..cur.size() {
            if x == cur.unit() {
                continue;
            }
            if let Some(sub) = subquantale(&cur, x) {
                if sub.size() < cur.size() && fails(&sub) {
                    cur = sub;
                    continue 'outer;
                }
            }
        }
        return cur;
    }
}

/// Every m-filter when the enumeration fits the cap, else the closed-form
/// families.  The bool reports whether the list is exhaustive.
fn all_filters(q: &Arc<FiniteQuantale>) -> (Vec<MFilter>, bool) {
    match enumerate_mfilters(q, FILTER_ENUM_CAP) {
        Ok(fs) => (fs, true),
        Err(FilterError::CapExceeded { .. }) => {
            let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
            let mut out = Vec::new();
            let mut add = |f: MFilter| {
                if seen.insert(f.members().members()) {
                    out.push(f);
                }
            };
            add(MFilter::trivial(q));
            add(MFilter::whole(q));
            for x in 0..q.size() {
                add(minimal_filter(q, x));
                add(comaximal_filter(q, x));
                add(codense_filter(q, x));
            }
            (out, false)
        }
        Err(e) => unreachable!("filter enumeration failed: {e}"),
    }
}

fn sample_index_pairs(count: usize, budget: usize, seed: u64) -> Vec<(usize, usize)> {
    let mut pairs: Vec<(usize, usize)> = (0..count)
        .flat_map(|i| (i..count).map(move |j| (i, j)))
        .collect();
    if pairs.len() <= budget {
        return pairs;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    pairs.shuffle(&mut rng);
    pairs.truncate(budget);
    pairs.sort_unstable();
    pairs
}

fn sample_index_triples(count: usize, budget: usize, seed: u64) -> Vec<(usize, usize, usize)> {
    let mut triples: Vec<(usize, usize, usize)> = (0..count)
        .flat_map(|i| {
            (i..count).flat_map(move |j| ((j)..count).map(move |k| (i, j, k)))
        })
        .collect();
    if triples.len() <= budget {
        return triples;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x00ab_c0de);
    triples.shuffle(&mut rng);
    triples.truncate(budget);
    triples.sort_unstable();
    triples
}

// ---------------------------------------------------------------------------
// definitional oracles

/// One-step local comparison by full witness-subset enumeration: a ⪯¹ b iff
/// some subset {xᵢ} joins above a with every xᵢ pushed below b by a filter
/// member.  Only usable on small modules.
pub fn leq1_oracle(m: &FiniteQModule, f: &MFilter, a: usize, b: usize) -> bool {
    let n = m.size();
    assert!(n <= 16, "oracle is exponential in |M|");
    for mask in 0u32..1 << n {
        let xs: Vec<usize> = (0..n).filter(|&x| mask >> x & 1 == 1).collect();
        if !xs
            .iter()
            .all(|&x| f.members().iter().any(|s| m.leq(m.act(s, x), b)))
        {
            continue;
        }
        let ok = if xs.is_empty() {
            match m.carrier().bottom() {
                Some(bot) => m.leq(a, bot),
                None => false,
            }
        } else {
            let join = xs[1..].iter().fold(xs[0], |acc, &x| m.join(acc, x));
            m.leq(a, join)
        };
        if ok {
            return true;
        }
    }
    false
}

/// Reflexive-transitive closure of the one-step oracle.
pub fn local_leq_oracle(m: &FiniteQModule, f: &MFilter, a: usize, b: usize) -> bool {
    let n = m.size();
    let mut reach = vec![false; n];
    reach[b] = true;
    loop {
        let mut changed = false;
        for x in 0..n {
            if reach[x] {
                continue;
            }
            if (0..n).any(|y| reach[y] && leq1_oracle(m, f, x, y)) {
                reach[x] = true;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    reach[a]
}

// ---------------------------------------------------------------------------
// checks: core-axioms

fn ca_carrier(q: &Arc<FiniteQuantale>, _ctx: &Ctx) -> Result<String, String> {
    let report = validate_carrier(q.carrier());
    if report.is_valid() {
        Ok(format!("carrier laws hold on {} elements", q.size()))
    } else {
        Err(format!("carrier law violated: {}", report.violations[0].detail))
    }
}

fn ca_quantale(q: &Arc<FiniteQuantale>, _ctx: &Ctx) -> Result<String, String> {
    let report = validate_quantale(q);
    if report.is_valid() {
        Ok("unit, associativity, commutativity, distributivity hold".into())
    } else {
        Err(format!("quantale law violated: {}", report.violations[0].detail))
    }
}

fn ca_integral(q: &Arc<FiniteQuantale>, _ctx: &Ctx) -> Result<String, String> {
    for a in 0..q.size() {
        for b in 0..q.size() {
            let p = q.mult(a, b);
            if !q.leq(p, a) || !q.leq(p, b) {
                return Err(format!(
                    "{}·{} = {} is not below both factors",
                    q.name(a),
                    q.name(b),
                    q.name(p)
                ));
            }
        }
    }
    Ok("ab ≤ a ∧ ab ≤ b for all a, b (unit = top)".into())
}

fn ca_idem_iff_meet(q: &Arc<FiniteQuantale>, _ctx: &Ctx) -> Result<String, String> {
    let mut mult_is_meet = true;
    for a in 0..q.size() {
        for b in 0..q.size() {
            match q.carrier().meet(a, b) {
                Meet::Element(m) => {
                    if q.mult(a, b) != m {
                        mult_is_meet = false;
                    }
                }
                Meet::Absent => return Err(format!(
                    "meet of {} and {} missing in a complete lattice",
                    q.name(a),
                    q.name(b)
                )),
            }
        }
    }
    if is_idempotent(q) == mult_is_meet {
        Ok(format!("idempotent = {} matches (mult = meet) = {mult_is_meet}", is_idempotent(q)))
    } else {
        Err(format!(
            "is_idempotent = {} but (mult = meet) = {mult_is_meet}",
            is_idempotent(q)
        ))
    }
}

// ---------------------------------------------------------------------------
// checks: filters

fn fi_principal_product(q: &Arc<FiniteQuantale>, _ctx: &Ctx) -> Result<String, String> {
    for f in 0..q.size() {
        for g in 0..q.size() {
            let lhs = filter_product(&minimal_filter(q, f), &minimal_filter(q, g));
            let rhs = minimal_filter(q, q.join(f, g));
            if lhs != rhs {
                return Err(format!(
                    "F_{} · F_{} = {} but F_{{{}+{}}} = {}",
                    q.name(f),
                    q.name(g),
                    lhs.display(),
                    q.name(f),
                    q.name(g),
                    rhs.display()
                ));
            }
        }
    }
    Ok(format!("F_f·F_g = F_(f+g) over all {}² generator pairs", q.size()))
}

fn fi_mfq_idempotent(q: &Arc<FiniteQuantale>, _ctx: &Ctx) -> Result<String, String> {
    if q.size() > 10 {
        return Ok("skipped: carrier above the mF(Q) materialization gate".into());
    }
    match mf_quantale(q, FILTER_ENUM_CAP) {
        Ok((mfq, filters)) => {
            let report = validate_quantale(&mfq);
            if !report.is_valid() {
                return Err(format!(
                    "mF(Q) violates quantale laws: {}",
                    report.violations[0].detail
                ));
            }
            if !is_idempotent(&mfq) {
                return Err("mF(Q) is not idempotent".into());
            }
            Ok(format!("mF(Q) on {} filters is an idempotent quantale", filters.len()))
        }
        Err(FilterError::CapExceeded { .. }) => Ok("skipped: filter enumeration capped".into()),
        Err(e) => Err(format!("mF(Q) construction failed: {e}")),
    }
}

fn fi_comax_lemma(q: &Arc<FiniteQuantale>, _ctx: &Ctx) -> Result<String, String> {
    let top = q.unit();
    for a in 0..q.size() {
        for b in 0..q.size() {
            for c in 0..q.size() {
                if q.join(a, b) == top && q.join(a, c) == top && q.join(a, q.mult(b, c)) != top
                {
                    return Err(format!(
                        "a+b = a+c = 1 but a+bc ≠ 1 at a={}, b={}, c={}",
                        q.name(a),
                        q.name(b),
                        q.name(c)
                    ));
                }
            }
        }
    }
    Ok(format!("a+b = a+c = 1 ⇒ a+bc = 1 over {} triples", q.size().pow(3)))
}

fn fi_special_defs(q: &Arc<FiniteQuantale>, _ctx: &Ctx) -> Result<String, String> {
    let top = q.unit();
    for a in 0..q.size() {
        let comax = comaximal_filter(q, a);
        let expected =
            UpSet::from_members(q.size(), (0..q.size()).filter(|&x| q.join(x, a) == top));
        if comax.members() != &expected {
            return Err(format!("F_⊥{} ≠ {{q : q + a = 1}}", q.name(a)));
        }
        let codense = codense_filter(q, a);
        let expected = UpSet::from_members(
            q.size(),
            (0..q.size())
                .filter(|&s| (0..q.size()).all(|x| !q.leq(q.mult(s, x), a) || q.leq(x, a))),
        );
        if codense.members() != &expected {
            return Err(format!("F_∤{} ≠ {{q : qx ≤ a ⇒ x ≤ a}}", q.name(a)));
        }
    }
    Ok("comaximal and codense filters match their defining conditions".into())
}

fn fi_sum_def(q: &Arc<FiniteQuantale>, ctx: &Ctx) -> Result<String, String> {
    let (filters, _) = all_filters(q);
    let pairs = sample_index_pairs(filters.len(), PAIR_BUDGET, ctx.seed ^ table_hash(q));
    for &(i, j) in &pairs {
        let (f, g) = (&filters[i], &filters[j]);
        let sum = filter_sum(f, g);
        let expected = UpSet::from_members(
            q.size(),
            (0..q.size()).filter(|&x| {
                f.members()
                    .iter()
                    .any(|s| g.members().iter().any(|t| q.leq(q.mult(s, t), x)))
            }),
        );
        if sum.members() != &expected {
            return Err(format!(
                "F+G ≠ {{x : ∃s∈F, t∈G, st ≤ x}} for F = {}, G = {}",
                f.display(),
                g.display()
            ));
        }
    }
    Ok(format!("sum = up-closure of pairwise products on {} pairs", pairs.len()))
}

// ---------------------------------------------------------------------------
// checks: localization

fn lo_onestep_oracle(q: &Arc<FiniteQuantale>, _ctx: &Ctx) -> Result<String, String> {
    let m = self_module(q);
    let (filters, _) = all_filters(q);
    let mut compared = 0usize;
    for f in &filters {
        for a in 0..m.size() {
            for b in 0..m.size() {
                let oracle = leq1_oracle(&m, f, a, b);
                let decided = m.leq(a, saturate1(&m, f, b));
                if oracle != decided {
                    return Err(format!(
                        "⪯¹ disagreement at a={}, b={}, F={}: oracle {oracle}, operator {decided}",
                        m.name(a),
                        m.name(b),
                        f.display()
                    ));
                }
                compared += 1;
            }
        }
    }
    Ok(format!("{compared} one-step comparisons agree with the witness-subset oracle"))
}

fn lo_multistep_oracle(q: &Arc<FiniteQuantale>, _ctx: &Ctx) -> Result<String, String> {
    let m = self_module(q);
    let (filters, _) = all_filters(q);
    for f in &filters {
        for a in 0..m.size() {
            for b in 0..m.size() {
                let oracle = local_leq_oracle(&m, f, a, b);
                let decided = matches!(
                    local_leq(&m, f, a, b).map_err(|e| e.to_string())?,
                    LocalSteps::Steps(_)
                );
                if oracle != decided {
                    return Err(format!(
                        "⪯ disagreement at a={}, b={}, F={}",
                        m.name(a),
                        m.name(b),
                        f.display()
                    ));
                }
            }
        }
    }
    Ok("multi-step reachability agrees with chained one-step oracle".into())
}

fn lo_compose(q: &Arc<FiniteQuantale>, ctx: &Ctx) -> Result<String, String> {
    let m = self_module(q);
    let (filters, _) = all_filters(q);
    let pairs = sample_index_pairs(filters.len(), PAIR_BUDGET, ctx.seed ^ table_hash(q));
    for &(i, j) in &pairs {
        let w = compose_localizations(&m, &filters[i], &filters[j]).map_err(|e| {
            format!(
                "M_(F+G) ≇ (M_F)_G for F = {}, G = {}: {e}",
                filters[i].display(),
                filters[j].display()
            )
        })?;
        if w.lhs.size() != w.outer.size() {
            return Err("composed quotient sizes disagree".into());
        }
    }
    Ok(format!("M_(F+G) ≅ (M_F)_G verified on {} filter pairs", pairs.len()))
}

fn lo_map_factors(q: &Arc<FiniteQuantale>, ctx: &Ctx) -> Result<String, String> {
    let m = self_module(q);
    let (filters, _) = all_filters(q);
    let pairs = sample_index_pairs(filters.len(), PAIR_BUDGET, ctx.seed ^ table_hash(q));
    let mut applied = 0usize;
    for &(i, j) in &pairs {
        for (f, g) in [(&filters[i], &filters[j]), (&filters[j], &filters[i])] {
            if f.is_subset(g) {
                localization_map(&m, f, g).map_err(|e| {
                    format!("M_F → M_G fails for F = {}, G = {}: {e}", f.display(), g.display())
                })?;
                applied += 1;
            }
        }
    }
    Ok(format!("{applied} coarsening maps factor through the quotients"))
}

fn lo_quotient_laws(q: &Arc<FiniteQuantale>, _ctx: &Ctx) -> Result<String, String> {
    let m = self_module(q);
    let (filters, exhaustive) = all_filters(q);
    for f in &filters {
        let l = localize(&m, f).map_err(|e| e.to_string())?;
        let report = validate_quotient(&l);
        if !report.is_valid() {
            return Err(format!(
                "quotient at {} violates: {}",
                f.display(),
                report.violations[0].detail
            ));
        }
        match l.quotient_quantale() {
            Some(qq) => {
                let r = validate_quantale(qq);
                if !r.is_valid() {
                    return Err(format!(
                        "quotient quantale at {} violates: {}",
                        f.display(),
                        r.violations[0].detail
                    ));
                }
            }
            None => return Err(format!("self-module quotient at {} has no quantale", f.display())),
        }
    }
    Ok(format!(
        "{} quotients validate as quantales{}",
        filters.len(),
        if exhaustive { "" } else { " (closed-form filter families)" }
    ))
}

// ---------------------------------------------------------------------------
// checks: shrink-suspension

fn ss_sigma_meet(q: &Arc<FiniteQuantale>, ctx: &Ctx) -> Result<String, String> {
    let c = q.carrier();
    let classes = materialize_suspension(c, DEFAULT_SAMPLE_BUDGET);
    let pairs = sample_index_pairs(classes.len(), 200, ctx.seed ^ table_hash(q));
    for &(i, j) in &pairs {
        let (s, t) = (&classes[i], &classes[j]);
        let meet_sigma = match c.meet(s.sigma(c), t.sigma(c)) {
            Meet::Element(v) => v,
            Meet::Absent => return Err("carrier meet missing".into()),
        };
        match suspension_meet(c, &classes, s, t) {
            Some(w) => {
                if w.sigma(c) != meet_sigma {
                    return Err(format!(
                        "σ(S∧T) = {} but σS ∧ σT = {}",
                        c.name(w.sigma(c)),
                        c.name(meet_sigma)
                    ));
                }
            }
            None => return Err("suspension meet missing".into()),
        }
    }
    Ok(format!("σ(S∧T) = σS ∧ σT on {} class pairs", pairs.len()))
}

fn ss_collapse(q: &Arc<FiniteQuantale>, _ctx: &Ctx) -> Result<String, String> {
    let check = suspension_collapse_check(q.carrier(), DEFAULT_SAMPLE_BUDGET);
    if check.holds {
        Ok("every subset is equivalent to the singleton of its join".into())
    } else {
        Err(format!("Σ does not collapse at subset {:?}", check.counterexample.unwrap()))
    }
}

fn ss_shrinkable(q: &Arc<FiniteQuantale>, _ctx: &Ctx) -> Result<String, String> {
    if is_shrinkable(q.carrier()) {
        Ok("σ is a shrinkable surjection".into())
    } else {
        Err("σ is not shrinkable".into())
    }
}

/// Per-element step counts for the product filter against the merge bound
/// steps_{F·G}(b) ≤ steps_F(b) + steps_G(b) − 1 (the right side saturates at
/// zero: if either side is already fixed the product side is fixed too).
pub fn merge_bound_check(q: &Arc<FiniteQuantale>, seed: u64) -> Result<(usize, usize), String> {
    let m = self_module(q);
    let (filters, _) = all_filters(q);
    let pairs = sample_index_pairs(filters.len(), PAIR_BUDGET, seed ^ table_hash(q));
    let mut checked = 0usize;
    for &(i, j) in &pairs {
        let (f, g) = (&filters[i], &filters[j]);
        let sat_f = SaturationOperator::new(&m, f).map_err(|e| e.to_string())?;
        let sat_g = SaturationOperator::new(&m, g).map_err(|e| e.to_string())?;
        let prod = filter_product(f, g);
        let sat_p = SaturationOperator::new(&m, &prod).map_err(|e| e.to_string())?;
        for b in 0..m.size() {
            let nf = sat_f.fixpoint(b).1;
            let ng = sat_g.fixpoint(b).1;
            let np = sat_p.fixpoint(b).1;
            if np > (nf + ng).saturating_sub(1) {
                return Err(format!(
                    "steps_FG({}) = {np} exceeds {nf} + {ng} − 1 for F = {}, G = {}",
                    m.name(b),
                    f.display(),
                    g.display()
                ));
            }
            checked += 1;
        }
    }
    Ok((pairs.len(), checked))
}

fn ss_merge_bound(q: &Arc<FiniteQuantale>, ctx: &Ctx) -> Result<String, String> {
    let (pairs, checked) = merge_bound_check(q, ctx.seed)?;
    Ok(format!("merge bound holds at {checked} (pair, element) instances over {pairs} pairs"))
}

fn ss_merge_one_step(q: &Arc<FiniteQuantale>, ctx: &Ctx) -> Result<String, String> {
    let m = self_module(q);
    let (filters, _) = all_filters(q);
    let pairs = sample_index_pairs(filters.len(), PAIR_BUDGET, ctx.seed ^ table_hash(q));
    for &(i, j) in &pairs {
        let (f, g) = (&filters[i], &filters[j]);
        let fg_one = is_one_step(&m, &filter_product(f, g)).map_err(|e| e.to_string())?;
        if is_one_step(&m, f).map_err(|e| e.to_string())?
            && is_one_step(&m, g).map_err(|e| e.to_string())?
            && !fg_one
        {
            return Err(format!(
                "F and G are 1-step but F·G is not, F = {}, G = {}",
                f.display(),
                g.display()
            ));
        }
    }
    Ok(format!("1-step filters closed under products on {} pairs", pairs.len()))
}

// ---------------------------------------------------------------------------
// checks: gluing

#[derive(Debug, Clone, Serialize)]
pub struct GluingStats {
    pub merged_classes: usize,
    pub factor_classes: Vec<usize>,
    pub compatible_tuples: usize,
    pub injective: bool,
    pub surjective_onto_compatible: bool,
}

/// The map M_F → ∏ M_{Fᵢ} for F = ∩Fᵢ: injectivity and image = pairwise
/// compatible tuples, all computed from quotient handles.
pub fn gluing_check(m: &FiniteQModule, filters: &[MFilter]) -> Result<GluingStats, String> {
    assert!(filters.len() >= 2);
    let merged = filters[1..]
        .iter()
        .fold(filters[0].clone(), |acc, f| filter_product(&acc, f));
    let lf = localize(m, &merged).map_err(|e| e.to_string())?;
    let locs: Vec<_> = filters
        .iter()
        .map(|f| localize(m, f).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    let maps: Vec<Vec<usize>> = filters
        .iter()
        .map(|f| localization_map(m, &merged, f).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    let tuples: Vec<Vec<usize>> = (0..lf.size())
        .map(|c| maps.iter().map(|mp| mp[c]).collect())
        .collect();
    let image: BTreeSet<Vec<usize>> = tuples.iter().cloned().collect();
    let injective = image.len() == tuples.len();

    // pairwise compatibility via the sum localizations
    let mut pair_maps: BTreeMap<(usize, usize), (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for i in 0..filters.len() {
        for j in (i + 1)..filters.len() {
            let sum = filter_sum(&filters[i], &filters[j]);
            let mi = localization_map(m, &filters[i], &sum).map_err(|e| e.to_string())?;
            let mj = localization_map(m, &filters[j], &sum).map_err(|e| e.to_string())?;
            pair_maps.insert((i, j), (mi, mj));
        }
    }
    let sizes: Vec<usize> = locs.iter().map(|l| l.size()).collect();
    let mut compatible: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut tuple = vec![0usize; sizes.len()];
    'next: loop {
        let ok = pair_maps.iter().all(|(&(i, j), (mi, mj))| mi[tuple[i]] == mj[tuple[j]]);
        if ok {
            compatible.insert(tuple.clone());
        }
        for k in 0..sizes.len() {
            tuple[k] += 1;
            if tuple[k] < sizes[k] {
                continue 'next;
            }
            tuple[k] = 0;
        }
        break;
    }
    let surjective_onto_compatible = image == compatible;
    if !image.is_subset(&compatible) {
        return Err("image contains an incompatible tuple".into());
    }
    Ok(GluingStats {
        merged_classes: lf.size(),
        factor_classes: sizes,
        compatible_tuples: compatible.len(),
        injective,
        surjective_onto_compatible,
    })
}

fn gl_pairs(q: &Arc<FiniteQuantale>, _ctx: &Ctx) -> Result<String, String> {
    let m = self_module(q);
    let (filters, _) = all_filters(q);
    let mut done = 0usize;
    for i in 0..filters.len() {
        for j in i..filters.len() {
            let stats = gluing_check(&m, &[filters[i].clone(), filters[j].clone()])?;
            if !stats.injective {
                return Err(format!(
                    "M_F → M_F₁ × M_F₂ not injective for F₁ = {}, F₂ = {}",
                    filters[i].display(),
                    filters[j].display()
                ));
            }
            if !stats.surjective_onto_compatible {
                return Err(format!(
                    "image ≠ compatible tuples for F₁ = {}, F₂ = {}",
                    filters[i].display(),
                    filters[j].display()
                ));
            }
            done += 1;
        }
    }
    Ok(format!("gluing exact on all {done} filter pairs"))
}

fn gl_triples(q: &Arc<FiniteQuantale>, ctx: &Ctx) -> Result<String, String> {
    let m = self_module(q);
    let (filters, _) = all_filters(q);
    let triples =
        sample_index_triples(filters.len(), TRIPLE_BUDGET, ctx.seed ^ table_hash(q));
    for &(i, j, k) in &triples {
        let fs = [filters[i].clone(), filters[j].clone(), filters[k].clone()];
        let stats = gluing_check(&m, &fs)?;
        if !stats.injective || !stats.surjective_onto_compatible {
            return Err(format!(
                "gluing fails on triple ({}, {}, {})",
                filters[i].display(),
                filters[j].display(),
                filters[k].display()
            ));
        }
    }
    Ok(format!("gluing exact on {} filter triples", triples.len()))
}

// ---------------------------------------------------------------------------
// checks: coherence

fn co_compact_all(q: &Arc<FiniteQuantale>, _ctx: &Ctx) -> Result<String, String> {
    if q.size() > order_core::EXHAUSTIVE_SUBSET_BUDGET {
        return Ok("skipped: definitional compact scan gated by subset budget".into());
    }
    let compacts = compact_elements(q.carrier());
    if compacts == (0..q.size()).collect::<Vec<_>>() {
        Ok("every element is compact".into())
    } else {
        Err(format!("K(L) = {compacts:?} misses some elements"))
    }
}

fn co_ladder(q: &Arc<FiniteQuantale>, _ctx: &Ctx) -> Result<String, String> {
    if !is_algebraic(q.carrier()) {
        return Err("not algebraic".into());
    }
    if !is_precoherent(q) {
        return Err("not precoherent".into());
    }
    if !is_coherent(q) {
        return Err("not coherent".into());
    }
    Ok("algebraic, precoherent, coherent".into())
}

fn co_continuous(q: &Arc<FiniteQuantale>, _ctx: &Ctx) -> Result<String, String> {
    if is_continuous(q.carrier()) {
        Ok("σ has a pointwise left adjoint satisfying the adjunction".into())
    } else {
        Err("σ has no left adjoint".into())
    }
}

fn co_blooming(q: &Arc<FiniteQuantale>, _ctx: &Ctx) -> Result<String, String> {
    if is_blooming(q) {
        Ok("σ♭ respects multiplication".into())
    } else {
        Err("σ♭ breaks multiplication".into())
    }
}

fn co_selective_base(q: &Arc<FiniteQuantale>, _ctx: &Ctx) -> Result<String, String> {
    // base: join-irreducibles plus unit and bottom, closed under mult
    let c = q.carrier();
    let mut base: BTreeSet<usize> = (0..c.size())
        .filter(|&x| {
            let below: Vec<usize> = (0..c.size()).filter(|&y| c.lt(y, x)).collect();
            below.is_empty() || c.join_set(&below).ok() != Some(x)
        })
        .collect();
    base.insert(q.unit());
    if let Some(b) = c.bottom() {
        base.insert(b);
    }
    loop {
        let cur: Vec<usize> = base.iter().copied().collect();
        let before = base.len();
        for &a in &cur {
            for &b in &cur {
                base.insert(q.mult(a, b));
            }
        }
        if base.len() == before {
            break;
        }
    }
    let base: Vec<usize> = base.into_iter().collect();
    match selective_base_precoherent(q, &base) {
        Ok(true) => Ok(format!("selective base of {} elements certifies precoherence", base.len())),
        Ok(false) => Err("join-irreducible base rejected".into()),
        Err(e) => Err(e.to_string()),
    }
}

fn co_sigma_flat(q: &Arc<FiniteQuantale>, _ctx: &Ctx) -> Result<String, String> {
    let c = q.carrier();
    let classes = materialize_suspension(c, DEFAULT_SAMPLE_BUDGET);
    for a in 0..c.size() {
        match sigma_flat(c, &classes, a) {
            Ok(flat) => {
                if flat.sigma(c) != a {
                    return Err(format!("σ(σ♭({})) ≠ {}", c.name(a), c.name(a)));
                }
            }
            Err(e) => return Err(e.to_string()),
        }
    }
    Ok("σ♭ exists pointwise with σ ∘ σ♭ = id".into())
}

// ---------------------------------------------------------------------------
// checks: normal-conormal

fn nc_binormal(q: &Arc<FiniteQuantale>, _ctx: &Ctx) -> Result<String, String> {
    let m = self_module(q);
    let (filters, exhaustive) = all_filters(q);
    for f in &filters {
        if !is_binormal(&m, f).map_err(|e| e.to_string())? {
            return Err(format!("{} is not binormal", f.display()));
        }
    }
    Ok(format!(
        "all {} filters binormal{}",
        filters.len(),
        if exhaustive { "" } else { " (closed-form families)" }
    ))
}

fn nc_one_step(q: &Arc<FiniteQuantale>, _ctx: &Ctx) -> Result<String, String> {
    let m = self_module(q);
    let (filters, _) = all_filters(q);
    for f in &filters {
        if !is_one_step(&m, f).map_err(|e| e.to_string())? {
            return Err(format!("{} needs more than one step", f.display()));
        }
    }
    Ok(format!("all {} filters are 1-step", filters.len()))
}

fn nc_sum_closure(q: &Arc<FiniteQuantale>, ctx: &Ctx) -> Result<String, String> {
    let m = self_module(q);
    let (filters, _) = all_filters(q);
    let pairs = sample_index_pairs(filters.len(), PAIR_BUDGET, ctx.seed ^ table_hash(q));
    for &(i, j) in &pairs {
        let (f, g) = (&filters[i], &filters[j]);
        let sum = filter_sum(f, g);
        let e = |e: localization::LocError| e.to_string();
        if is_normal(&m, f).map_err(e)?
            && is_normal(&m, g).map_err(|x| x.to_string())?
            && !is_normal(&m, &sum).map_err(|x| x.to_string())?
        {
            return Err(format!("sum of normal filters {} , {} not normal", f.display(), g.display()));
        }
        if is_conormal(&m, f).map_err(|x| x.to_string())?
            && is_conormal(&m, g).map_err(|x| x.to_string())?
            && !is_conormal(&m, &sum).map_err(|x| x.to_string())?
        {
            return Err(format!(
                "sum of conormal filters {} , {} not conormal",
                f.display(),
                g.display()
            ));
        }
        if is_binormal(&m, f).map_err(|x| x.to_string())?
            && is_binormal(&m, g).map_err(|x| x.to_string())?
            && !is_binormal(&m, &sum).map_err(|x| x.to_string())?
        {
            return Err(format!(
                "sum of binormal filters {} , {} not binormal",
                f.display(),
                g.display()
            ));
        }
    }
    Ok(format!("normal/conormal/binormal closed under sums on {} pairs", pairs.len()))
}

fn nc_gnf_lcf(q: &Arc<FiniteQuantale>, _ctx: &Ctx) -> Result<String, String> {
    if q.size() > 8 {
        return Ok("skipped: gnf/lcf enumerate the full filter lattice".into());
    }
    let m = self_module(q);
    let (filters, _) = all_filters(q);
    for f in &filters {
        let g = gnf(&m, f, FILTER_ENUM_CAP).map_err(|e| e.to_string())?;
        if &g != f {
            return Err(format!("gnf({}) = {} ≠ itself on a binormal filter", f.display(), g.display()));
        }
        let l = lcf(&m, f, FILTER_ENUM_CAP).map_err(|e| e.to_string())?;
        if &l != f {
            return Err(format!("lcf({}) = {} ≠ itself on a binormal filter", f.display(), l.display()));
        }
    }
    Ok(format!("gnf and lcf fix all {} (binormal) filters", filters.len()))
}

// ---------------------------------------------------------------------------
// global checks (not tied to a corpus entry)

fn global_ring_sweep(_ctx: &Ctx) -> Result<String, String> {
    let mut iso_checked = 0usize;
    let mut xs_checked = 0usize;
    for n in 2..=60u64 {
        let q = Arc::new(build_ideal_quantale(n).map_err(|e| e.to_string())?);
        let m = self_module(&q);
        let divisors = ideal_divisors(n);
        for &d in &divisors {
            if !xs_crosscheck(n, &[d]).map_err(|e| e.to_string())? {
                return Err(format!("xS crosscheck failed at n = {n}, s = ({d})"));
            }
            xs_checked += 1;
        }
        let mut p = 2u64;
        let mut rest = n;
        let mut primes = Vec::new();
        while p * p <= rest {
            if rest % p == 0 {
                primes.push(p);
                while rest % p == 0 {
                    rest /= p;
                }
            }
            p += 1;
        }
        if rest > 1 {
            primes.push(rest);
        }
        for p in primes {
            let mut coprime = n;
            while coprime % p == 0 {
                coprime /= p;
            }
            let handle = divisors.iter().position(|&d| d == p).unwrap();
            let loc = localize(&m, &minimal_filter(&q, handle)).map_err(|e| e.to_string())?;
            if coprime == 1 {
                // p-power modulus: localizing at (p) leaves the zero ring
                if loc.size() != 1 {
                    return Err(format!(
                        "Id(Z/{n}) localized at ({p}) should be trivial, has {} classes",
                        loc.size()
                    ));
                }
            } else {
                let got = loc.quotient_quantale().ok_or("no quotient quantale")?;
                let want = build_ideal_quantale(coprime).map_err(|e| e.to_string())?;
                if !are_isomorphic(got, &want) {
                    return Err(format!(
                        "Id(Z/{n}) localized at ({p}) is not Id(Z/{coprime})"
                    ));
                }
            }
            iso_checked += 1;
        }
    }
    Ok(format!(
        "{xs_checked} xS agreements and {iso_checked} prime-localization isomorphisms for n ≤ 60"
    ))
}

fn global_census(_ctx: &Ctx) -> Result<String, String> {
    let rows = exhaustive_census_crosscheck();
    for r in &rows {
        if r.canonical_classes != r.definitional_classes {
            return Err(format!(
                "size {}: canonical census {} ≠ definitional census {}",
                r.size, r.canonical_classes, r.definitional_classes
            ));
        }
    }
    let counts: Vec<String> = rows
        .iter()
        .map(|r| format!("{}:{}", r.size, r.canonical_classes))
        .collect();
    Ok(format!("canonical and definitional censuses agree ({})", counts.join(", ")))
}

fn global_crt(_ctx: &Ctx) -> Result<String, String> {
    let q = Arc::new(build_ideal_quantale(12).map_err(|e| e.to_string())?);
    let m = self_module(&q);
    let divisors = ideal_divisors(12);
    let h3 = divisors.iter().position(|&d| d == 3).unwrap();
    let h2 = divisors.iter().position(|&d| d == 2).unwrap();
    let f3 = minimal_filter(&q, h3);
    let f2 = minimal_filter(&q, h2);
    let stats = gluing_check(&m, &[f3, f2])?;
    if !stats.injective || !stats.surjective_onto_compatible {
        return Err("CRT gluing map is not a bijection onto compatible tuples".into());
    }
    if stats.merged_classes != 6 || stats.factor_classes != vec![3, 2] {
        return Err(format!(
            "expected 6 = 3 × 2 classes, got {} = {:?}",
            stats.merged_classes, stats.factor_classes
        ));
    }
    if stats.compatible_tuples != 6 {
        return Err(format!("expected 6 compatible tuples, got {}", stats.compatible_tuples));
    }
    Ok("Id(Z/12) → Id(Z/4) × Id(Z/3) classes: bijection, 6 = 3 × 2".into())
}

fn global_ring_baire(_ctx: &Ctx) -> Result<String, String> {
    let mut witnesses = 0usize;
    for n in 2..=60u64 {
        for d in proper_radical_divisors(n) {
            let report = algebraic_baire(n, d).map_err(|e| e.to_string())?;
            match report.witness {
                Some(w) if w.verified => witnesses += 1,
                _ => return Err(format!("no verified witness at n = {n}, 𝔟 = ({d})")),
            }
        }
    }
    Ok(format!("{witnesses} (𝔪, r) witnesses found for n ≤ 60"))
}

fn global_spec_injectivity(_ctx: &Ctx) -> Result<String, String> {
    let r = spec_injectivity(12, &[3, 4]).map_err(|e| e.to_string())?;
    if !(r.merged_trivial && r.injective && r.bijective && r.factor_sizes == vec![3, 2]) {
        return Err(format!("n = 12, f = (3, 4): unexpected report {r:?}"));
    }
    let r = spec_injectivity(12, &[1]).map_err(|e| e.to_string())?;
    if !(r.injective && r.bijective && r.factor_sizes == vec![6]) {
        return Err("n = 12, f = (1): localization at the trivial filter is not the identity".into());
    }
    let r = spec_injectivity(30, &[6, 10, 15]).map_err(|e| e.to_string())?;
    if !(r.merged_trivial && r.injective) {
        return Err("n = 30, f = (6, 10, 15): not injective".into());
    }
    // sweep: for every n ≤ 40 use the prime-power cofactors, whose gcd is 1
    for n in 2..=40u64 {
        let gens = prime_power_cofactors(n);
        let r = spec_injectivity(n, &gens).map_err(|e| e.to_string())?;
        if !r.injective {
            return Err(format!("cofactor generators not injective at n = {n}"));
        }
    }
    Ok("pinned instances and the n ≤ 40 cofactor sweep are injective".into())
}

fn global_ordinal(_ctx: &Ctx) -> Result<String, String> {
    let report = ordinal_case::nonlocalizability_report(16);
    for row in &report.rows {
        match row.steps {
            ordinal_case::StepResult::StepCount(k) if k as u64 == row.n && row.witness_checked => {}
            _ => return Err(format!("steps(nω → 0) ≠ n at n = {}", row.n)),
        }
    }
    if !report.uniform_bound_refuted {
        return Err("step counts are not strictly increasing".into());
    }
    match ordinal_case::ord_min_steps(
        ordinal_case::OrdElem::omega2(),
        ordinal_case::OrdElem::Zero,
        64,
    ) {
        ordinal_case::StepResult::ExceedsBound => {
            Ok("steps(nω → 0) = n for n ≤ 16; ω² exceeds bound 64".into())
        }
        other => Err(format!("ω² → 0 unexpectedly reached: {other:?}")),
    }
}

fn global_interval(_ctx: &Ctx) -> Result<String, String> {
    use interval_quantale::{
        baire_witness, dense_quotient_class, hbar, parse_closed, rat, regularize, sample_opens,
        two_step_counterexample, IntervalOpen, Space,
    };
    let r = two_step_counterexample();
    if r.exact_steps != 2 || r.preimage_exists || !r.product_is_trivial_filter
        || !r.quotient_at_sum_trivial
    {
        return Err(format!(
            "two-step instance: steps {}, preimage {}, product trivial {}",
            r.exact_steps, r.preimage_exists, r.product_is_trivial_filter
        ));
    }
    let space = Space::new(vec![(rat(0, 1), rat(1, 1))]).map_err(|e| e.to_string())?;
    let opens = sample_opens(&space, 12, 120, 0x5eed);
    for u in &opens {
        let r1 = regularize(u);
        if regularize(&r1) != r1 {
            return Err(format!("regularize not idempotent at {u}"));
        }
    }
    for pair in opens.windows(2) {
        let same_class = dense_quotient_class(&pair[0]) == dense_quotient_class(&pair[1]);
        let same_hbar = hbar(&pair[0]) == hbar(&pair[1]);
        if same_class != same_hbar {
            return Err(format!("class/ħ disagreement at {} vs {}", pair[0], pair[1]));
        }
    }
    let whole = IntervalOpen::whole(&space);
    let empty = IntervalOpen::empty(&space);
    if dense_quotient_class(&whole) == dense_quotient_class(&empty) {
        return Err("class(X) = class(∅) in the dense quotient".into());
    }
    let sets = vec![
        parse_closed(&space, "[1/3,1/3]").map_err(|e| e.to_string())?,
        parse_closed(&space, "[2/3,2/3]").map_err(|e| e.to_string())?,
        parse_closed(&space, "[1/5,1/5] ∪ [4/5,4/5]").map_err(|e| e.to_string())?,
    ];
    let outcome = baire_witness(&space, &sets, 2).map_err(|e| e.to_string())?;
    if !outcome.verified {
        return Err("baire witness failed its own verification".into());
    }
    Ok(format!(
        "two-step reproduction, dense classes on 120 opens, baire point {} all check",
        outcome.point
    ))
}

fn global_closed_forms(_ctx: &Ctx) -> Result<String, String> {
    use interval_quantale::{
        grid_opens, parse_open, rat, validate_closed_form, IntervalFilter, Space,
    };
    let space = Space::new(vec![(rat(0, 1), rat(1, 1))]).map_err(|e| e.to_string())?;
    let corpus = grid_opens(&space, 3);
    let u = parse_open(&space, "(1/3,2/3)").map_err(|e| e.to_string())?;
    let b = parse_open(&space, "(0,1/3)").map_err(|e| e.to_string())?;
    for (label, f) in [
        ("principal", IntervalFilter::above(u.clone())),
        ("comaximal", IntervalFilter::comax(u.clone())),
        ("dense", IntervalFilter::dense(&space)),
    ] {
        let check = validate_closed_form(&f, &b, &corpus).map_err(|e| e.to_string())?;
        if !check.sound || check.violations > 0 {
            return Err(format!("{label} closed form unsound on the grid corpus"));
        }
        if !check.attained {
            return Err(format!("{label} closed form not attained by its witness family"));
        }
    }
    Ok("principal, comaximal, dense saturation closed forms sound and attained".into())
}

// ---------------------------------------------------------------------------
// suite assembly

struct QProp {
    name: &'static str,
    max_size: usize,
    check: QCheck,
}

fn qprop(name: &'static str, check: QCheck) -> QProp {
    QProp { name, max_size: usize::MAX, check }
}

fn qprop_gated(name: &'static str, max_size: usize, check: QCheck) -> QProp {
    QProp { name, max_size, check }
}

type GlobalCheck = (&'static str, &'static str, fn(&Ctx) -> Result<String, String>);

fn suite_props(name: &str) -> Result<(Vec<QProp>, Vec<GlobalCheck>), HarnessError> {
    let props: (Vec<QProp>, Vec<GlobalCheck>) = match name {
        "core-axioms" => (
            vec![
                qprop("carrier-laws", ca_carrier),
                qprop("quantale-laws", ca_quantale),
                qprop("integral", ca_integral),
                qprop("idempotent-iff-meet", ca_idem_iff_meet),
            ],
            vec![("exhaustive-census", "sizes<=3", global_census)],
        ),
        "filters" => (
            vec![
                qprop("principal-product", fi_principal_product),
                qprop("mfq-idempotent-quantale", fi_mfq_idempotent),
                qprop("comaximal-lemma", fi_comax_lemma),
                qprop("special-filter-defs", fi_special_defs),
                qprop("sum-is-product-closure", fi_sum_def),
            ],
            vec![],
        ),
        "localization" => (
            vec![
                qprop_gated("one-step-oracle", 4, lo_onestep_oracle),
                qprop_gated("multi-step-oracle", 4, lo_multistep_oracle),
                qprop("compose-localizations", lo_compose),
                qprop("localization-map-factors", lo_map_factors),
                qprop("quotient-laws", lo_quotient_laws),
            ],
            vec![("ring-crosscheck", "zn-sweep/60", global_ring_sweep)],
        ),
        "shrink-suspension" => (
            vec![
                qprop_gated("sigma-meet", 12, ss_sigma_meet),
                qprop("suspension-collapse", ss_collapse),
                qprop("shrinkable", ss_shrinkable),
                qprop("filter-merge-bound", ss_merge_bound),
                qprop("one-step-product-closure", ss_merge_one_step),
            ],
            vec![],
        ),
        "gluing" => (
            vec![
                qprop_gated("gluing-pairs", 4, gl_pairs),
                qprop_gated("gluing-triples", 4, gl_triples),
            ],
            vec![("crt-instance", "zn/12", global_crt)],
        ),
        "coherence" => (
            vec![
                qprop("compact-elements", co_compact_all),
                qprop("compactness-ladder", co_ladder),
                qprop("continuous", co_continuous),
                qprop("blooming", co_blooming),
                qprop("selective-base", co_selective_base),
                qprop_gated("sigma-flat", 12, co_sigma_flat),
            ],
            vec![],
        ),
        "normal-conormal" => (
            vec![
                qprop("all-binormal", nc_binormal),
                qprop("all-one-step", nc_one_step),
                qprop("sum-closure", nc_sum_closure),
                qprop_gated("gnf-lcf-fixed", 8, nc_gnf_lcf),
            ],
            vec![],
        ),
        "applications" => (
            vec![],
            vec![
                ("algebraic-baire", "zn-sweep/60", global_ring_baire),
                ("spec-injectivity", "zn-instances", global_spec_injectivity),
                ("ordinal-nonlocalizable", "ordinal/16", global_ordinal),
                ("interval-counterexamples", "interval/unit", global_interval),
                ("interval-closed-forms", "interval/grid3", global_closed_forms),
            ],
        ),
        other => return Err(HarnessError::UnknownSuite(other.to_owned())),
    };
    Ok(props)
}

pub fn run_suite(name: &str, corpus: &Corpus, seed: u64) -> Result<SuiteReport, HarnessError> {
    let (props, globals) = suite_props(name)?;
    let ctx = Ctx { seed };
    let mut report = SuiteReport {
        suite: name.to_owned(),
        seed,
        checks: Vec::new(),
    };
    for prop in &props {
        for entry in corpus.entries() {
            if entry.quantale.size() > prop.max_size {
                continue;
            }
            match (prop.check)(&entry.quantale, &ctx) {
                Ok(detail) => report.checks.push(CheckOutcome {
                    proposition: prop.name.to_owned(),
                    instance: entry.id.clone(),
                    pass: true,
                    detail,
                    counterexample: None,
                }),
                Err(why) => {
                    let check = prop.check;
                    let minimized =
                        minimize_quantale(&entry.quantale, |q| check(q, &ctx).is_err());
                    report.checks.push(CheckOutcome {
                        proposition: prop.name.to_owned(),
                        instance: entry.id.clone(),
                        pass: false,
                        detail: why,
                        counterexample: Some(describe_quantale(&minimized)),
                    });
                }
            }
        }
    }
    for (prop, instance, check) in globals {
        match check(&ctx) {
            Ok(detail) => report.checks.push(CheckOutcome {
                proposition: prop.to_owned(),
                instance: instance.to_owned(),
                pass: true,
                detail,
                counterexample: None,
            }),
            Err(why) => report.checks.push(CheckOutcome {
                proposition: prop.to_owned(),
                instance: instance.to_owned(),
                pass: false,
                detail: why,
                counterexample: None,
            }),
        }
    }
    Ok(report)
}

pub fn run_all(corpus: &Corpus, seed: u64) -> Result<Vec<SuiteReport>, HarnessError> {
    SUITE_NAMES
        .iter()
        .map(|name| run_suite(name, corpus, seed))
        .collect()
}

// ---------------------------------------------------------------------------
// algebraic Baire brute-forcer

#[derive(Debug, Clone, Serialize)]
pub struct RingBaireWitness {
    /// Prime generator of the maximal ideal 𝔪.
    pub maximal_ideal: u64,
    /// r ∉ 𝔟 with r·x ∈ 𝔟 for every x ∈ 𝔪.
    pub r: u64,
    /// How many qualifying x were checked.
    pub qualifying: usize,
    /// Independent re-verification of the witness pair.
    pub verified: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct RingBaireReport {
    pub n: u64,
    /// Divisor generating 𝔟 (0 is reduced to n).
    pub b: u64,
    pub maximal_ideals: Vec<u64>,
    pub witness: Option<RingBaireWitness>,
}

fn prime_factors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut rest = n;
    let mut p = 2;
    while p * p <= rest {
        if rest % p == 0 {
            out.push(p);
            while rest % p == 0 {
                rest /= p;
            }
        }
        p += 1;
    }
    if rest > 1 {
        out.push(rest);
    }
    out
}

fn squarefree(d: u64) -> bool {
    let mut rest = d;
    let mut p = 2;
    while p * p <= rest {
        if rest % (p * p) == 0 {
            return false;
        }
        while rest % p == 0 {
            rest /= p;
        }
        p += 1;
    }
    true
}

/// Squarefree divisors ≠ 1 of n: the generators of the proper radical ideals
/// of Z/n.
pub fn proper_radical_divisors(n: u64) -> Vec<u64> {
    (2..=n).filter(|&d| n % d == 0 && squarefree(d)).collect()
}

/// Brute-force the semilocal Baire statement over Z/n: for a proper radical
/// ideal 𝔟 = (b), find a maximal ideal 𝔪 = (p) and r ∉ 𝔟 with r𝔪 ⊆ 𝔟,
/// verifying r·x ∈ 𝔟 for every qualifying x.
pub fn algebraic_baire(n: u64, b: u64) -> Result<RingBaireReport, HarnessError> {
    if n < 2 {
        return Err(HarnessError::BadInstance(format!("Z/{n} has no maximal ideals")));
    }
    let d = num_integer::gcd(b, n);
    if d == 1 {
        return Err(HarnessError::BadInstance("𝔟 = (1) is not proper".into()));
    }
    if !squarefree(d) {
        return Err(HarnessError::BadInstance(format!("({d}) is not a radical ideal of Z/{n}")));
    }
    let maximal_ideals = prime_factors(n);
    let mut witness = None;
    'search: for &p in &maximal_ideals {
        let qual: Vec<u64> = (0..n).filter(|x| x % p == 0).collect();
        for r in 1..n {
            if r % d == 0 {
                continue; // r must avoid 𝔟
            }
            if qual.iter().all(|&x| (r * x) % n % d == 0) {
                let verified = (0..n)
                    .filter(|x| x % p == 0)
                    .all(|x| (r * x) % n % d == 0)
                    && r % d != 0;
                witness = Some(RingBaireWitness {
                    maximal_ideal: p,
                    r,
                    qualifying: qual.len(),
                    verified,
                });
                break 'search;
            }
        }
    }
    Ok(RingBaireReport {
        n,
        b: d,
        maximal_ideals,
        witness,
    })
}

// ---------------------------------------------------------------------------
// spectrum-style injectivity

#[derive(Debug, Clone, Serialize)]
pub struct SpecInjectivityReport {
    pub n: u64,
    pub generators: Vec<u64>,
    /// Divisor representatives gcd(fᵢ, n) of the generating ideals.
    pub reduced: Vec<u64>,
    /// ∏ F_(fᵢ) collapses to the trivial filter.
    pub merged_trivial: bool,
    pub injective: bool,
    pub bijective: bool,
    pub factor_sizes: Vec<usize>,
    pub source_size: usize,
}

/// Generators n / p^{v_p(n)} for each prime p | n; their gcd is 1.
pub fn prime_power_cofactors(n: u64) -> Vec<u64> {
    let primes = prime_factors(n);
    if primes.len() <= 1 {
        return vec![1];
    }
    primes
        .iter()
        .map(|&p| {
            let mut c = n;
            while c % p == 0 {
                c /= p;
            }
            c
        })
        .collect()
}

/// Checks injectivity of Id(Z/n) → ∏ Id(Z/n)_{F_(fᵢ)} when gcd(f₁…f_k, n) = 1.
pub fn spec_injectivity(n: u64, generators: &[u64]) -> Result<SpecInjectivityReport, HarnessError> {
    if n < 2 {
        return Err(HarnessError::BadInstance(format!("need n ≥ 2, got {n}")));
    }
    if generators.is_empty() {
        return Err(HarnessError::BadInstance("no generators".into()));
    }
    let g = generators.iter().fold(n, |acc, &f| num_integer::gcd(acc, f));
    if g != 1 {
        return Err(HarnessError::BadInstance(format!(
            "gcd(generators, {n}) = {g} ≠ 1"
        )));
    }
    let q = Arc::new(build_ideal_quantale(n).map_err(|e| HarnessError::BadInstance(e.to_string()))?);
    let m = self_module(&q);
    let divisors = ideal_divisors(n);
    let reduced: Vec<u64> = generators.iter().map(|&f| num_integer::gcd(f, n)).collect();
    let filters: Vec<MFilter> = reduced
        .iter()
        .map(|&d| {
            let handle = divisors.iter().position(|&x| x == d).unwrap();
            minimal_filter(&q, handle)
        })
        .collect();
    let merged = filters[1..]
        .iter()
        .fold(filters[0].clone(), |acc, f| filter_product(&acc, f));
    let locs: Vec<_> = filters
        .iter()
        .map(|f| localize(&m, f).map_err(|e| HarnessError::BadInstance(e.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    let tuples: Vec<Vec<usize>> = (0..m.size())
        .map(|x| locs.iter().map(|l| l.class_index(x)).collect())
        .collect();
    let distinct: BTreeSet<&Vec<usize>> = tuples.iter().collect();
    let factor_sizes: Vec<usize> = locs.iter().map(|l| l.size()).collect();
    Ok(SpecInjectivityReport {
        n,
        generators: generators.to_vec(),
        reduced,
        merged_trivial: merged.is_trivial(),
        injective: distinct.len() == tuples.len(),
        bijective: distinct.len() == factor_sizes.iter().product::<usize>(),
        factor_sizes,
        source_size: m.size(),
    })
}

// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn topology_counts_match_the_literature() {
        assert_eq!(all_topologies(1).len(), 1);
        assert_eq!(all_topologies(2).len(), 4);
        assert_eq!(all_topologies(3).len(), 29);
        assert_eq!(all_topologies(4).len(), 355);
    }

    #[test]
    fn census_crosscheck_agrees() {
        for row in exhaustive_census_crosscheck() {
            assert_eq!(
                row.canonical_classes, row.definitional_classes,
                "size {}",
                row.size
            );
        }
    }

    #[test]
    fn exhaustive_tier_is_valid_and_deduplicated() {
        let c = Corpus::exhaustive();
        let mut keys = BTreeSet::new();
        for e in c.entries() {
            assert!(keys.insert(canonical_key(&e.quantale)), "duplicate {}", e.id);
        }
        assert!(c.len() >= 5, "expected at least the chains and the diamond");
    }

    #[test]
    fn randomized_tier_is_deterministic() {
        let a = Corpus::randomized(6, 99);
        let b = Corpus::randomized(6, 99);
        for (x, y) in a.entries().iter().zip(b.entries()) {
            assert_eq!(x.id, y.id);
            assert_eq!(canonical_key(&x.quantale), canonical_key(&y.quantale));
        }
    }

    #[test]
    fn subquantale_drops_and_closes() {
        // dropping a middle chain element generates nothing back
        let q = Arc::new(build_chain_family(ChainFamily::B, 4));
        let sub = subquantale(&q, 2).expect("should shrink");
        assert_eq!(sub.size(), q.size() - 1);
        assert!(validate_quantale(&sub).is_valid());

        // in Id(Z/12) the ideal (6) is regenerated as (2)·(3)
        let q = Arc::new(build_ideal_quantale(12).unwrap());
        let divisors = ideal_divisors(12);
        let h6 = divisors.iter().position(|&d| d == 6).unwrap();
        assert!(subquantale(&q, h6).is_none());
    }

    #[test]
    fn minimizer_reaches_a_small_failing_instance() {
        let q = Arc::new(build_chain_family(ChainFamily::B, 8));
        let min = minimize_quantale(&q, |q| q.size() > 2);
        assert_eq!(min.size(), 3);
    }

    #[test]
    fn ring_baire_pinned_witnesses() {
        let r = algebraic_baire(12, 6).unwrap();
        let w = r.witness.unwrap();
        assert_eq!((w.maximal_ideal, w.r), (2, 3));
        assert!(w.verified);
        assert_eq!(w.qualifying, 6);

        // reduced ring: 𝔟 = (0) in Z/6 reduces to the divisor 6
        let r = algebraic_baire(6, 0).unwrap();
        assert_eq!(r.b, 6);
        let w = r.witness.unwrap();
        assert_eq!((w.maximal_ideal, w.r), (2, 3));

        // field: the zero ideal is the unique maximal ideal
        let r = algebraic_baire(7, 0).unwrap();
        let w = r.witness.unwrap();
        assert_eq!(w.maximal_ideal, 7);
        assert_eq!(w.r, 1);
    }

    #[test]
    fn ring_baire_rejects_non_radical_and_improper() {
        assert!(algebraic_baire(12, 4).is_err());
        assert!(algebraic_baire(12, 1).is_err());
        assert!(algebraic_baire(12, 5).is_err()); // gcd(5,12) = 1 → improper
    }

    #[test]
    fn spec_injectivity_pinned() {
        let r = spec_injectivity(12, &[3, 4]).unwrap();
        assert!(r.merged_trivial && r.injective && r.bijective);
        assert_eq!(r.factor_sizes, vec![3, 2]);
        assert_eq!(r.source_size, 6);

        assert!(spec_injectivity(12, &[2, 4]).is_err());
        let r = spec_injectivity(30, &[6, 10, 15]).unwrap();
        assert!(r.injective);
    }

    #[test]
    fn merge_bound_handles_already_fixed_elements() {
        let q = Arc::new(build_ideal_quantale(12).unwrap());
        let m = self_module(&q);
        let f = MFilter::trivial(&q);
        let sat = SaturationOperator::new(&m, &f).unwrap();
        for b in 0..m.size() {
            assert_eq!(sat.fixpoint(b).1, 0, "trivial filter saturates nothing");
        }
        let (pairs, checked) = merge_bound_check(&q, 1).unwrap();
        assert!(pairs > 0 && checked > 0);
    }

    #[test]
    fn unknown_suite_is_an_error() {
        let corpus = Corpus::exhaustive();
        assert!(matches!(
            run_suite("nope", &corpus, 0),
            Err(HarnessError::UnknownSuite(_))
        ));
    }
}
