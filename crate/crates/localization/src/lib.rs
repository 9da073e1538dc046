//! Localization of finite quantale modules at multiplicative filters.
//!
//! The whole local preorder runs through one derived decision procedure: the
//! saturation operator D_F(b) = Σ{x : ∃s∈F, s·x ≤ b}. A one-step comparison
//! a ⪯¹ b (a sits under a join of elements each pushed below b by a filter
//! element) holds exactly when a ≤ D_F(b): the witness x's can be taken to be
//! the full witness set, since joins of witnesses are witnesses. n-step
//! comparisons iterate D; the quotient takes the D-fixpoint as the canonical
//! (maximal) class representative.

use std::sync::Arc;

use mfilter::{enumerate_mfilters, filter_product, filter_sum, FilterError, MFilter};
use order_core::{Carrier, OrderError, ValidationReport};
use quantale_core::{
    build_ideal_quantale, ideal_divisors, self_module, validate_module, validate_quantale,
    FiniteQModule, FiniteQuantale, QuantaleError,
};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LocError {
    #[error("mismatch: {0}")]
    Mismatch(String),
    #[error("{0} is not a subfilter of {1}")]
    NotSubfilter(String, String),
    #[error("theorem violated: {0}")]
    TheoremViolated(String),
    #[error(transparent)]
    Filter(#[from] FilterError),
    #[error(transparent)]
    Quantale(#[from] QuantaleError),
    #[error(transparent)]
    Order(#[from] OrderError),
}

fn check_same_quantale(m: &FiniteQModule, f: &MFilter) -> Result<(), LocError> {
    if **m.quantale() != **f.quantale() {
        return Err(LocError::Mismatch(
            "filter and module live over different quantales".into(),
        ));
    }
    Ok(())
}

/// D_F(b): join of every x some filter element pushes below b. x = b always
/// qualifies via s = 1, so the witness set is nonempty and D is inflationary.
pub fn saturate1(m: &FiniteQModule, f: &MFilter, b: usize) -> usize {
    let witnesses: Vec<usize> = (0..m.size())
        .filter(|&x| f.members().iter().any(|s| m.leq(m.act(s, x), b)))
        .collect();
    m.carrier().join_set(&witnesses).expect("b itself is a witness")
}

/// Tabulated D_F for one (module, filter) pair.
#[derive(Clone, Debug)]
pub struct SaturationOperator {
    module: FiniteQModule,
    filter: MFilter,
    table: Vec<usize>,
}

impl SaturationOperator {
    pub fn new(m: &FiniteQModule, f: &MFilter) -> Result<Self, LocError> {
        check_same_quantale(m, f)?;
        let table = (0..m.size()).map(|b| saturate1(m, f, b)).collect();
        Ok(SaturationOperator {
            module: m.clone(),
            filter: f.clone(),
            table,
        })
    }

    pub fn module(&self) -> &FiniteQModule {
        &self.module
    }

    pub fn filter(&self) -> &MFilter {
        &self.filter
    }

    pub fn apply(&self, b: usize) -> usize {
        self.table[b]
    }

    pub fn apply_n(&self, b: usize, n: usize) -> usize {
        (0..n).fold(b, |acc, _| self.table[acc])
    }

    /// (fixpoint, least n with Dⁿ(b) = Dⁿ⁺¹(b)).
    pub fn fixpoint(&self, b: usize) -> (usize, usize) {
        let mut current = b;
        let mut steps = 0;
        loop {
            let next = self.table[current];
            if next == current {
                return (current, steps);
            }
            current = next;
            steps += 1;
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LocalSteps {
    Steps(usize),
    Unreachable,
}

/// Least n with a ≤ D_Fⁿ(b); n = 0 means a ≤ b outright.
pub fn local_leq(m: &FiniteQModule, f: &MFilter, a: usize, b: usize) -> Result<LocalSteps, LocError> {
    let sat = SaturationOperator::new(m, f)?;
    let mut current = b;
    let mut n = 0;
    loop {
        if m.leq(a, current) {
            return Ok(LocalSteps::Steps(n));
        }
        let next = sat.apply(current);
        if next == current {
            return Ok(LocalSteps::Unreachable);
        }
        current = next;
        n += 1;
    }
}

/// The quotient M_F. Class representatives are D-fixpoints (each class's
/// maximum); quotient handles index the sorted representative list.
#[derive(Clone, Debug)]
pub struct LocalizationQuotient {
    module: FiniteQModule,
    filter: MFilter,
    rep: Vec<usize>,
    classes: Vec<usize>,
    carrier: Carrier,
    action: Vec<Vec<usize>>,
    quantale: Option<FiniteQuantale>,
    step_degree: usize,
}

impl LocalizationQuotient {
    pub fn module(&self) -> &FiniteQModule {
        &self.module
    }

    pub fn filter(&self) -> &MFilter {
        &self.filter
    }

    /// Maximum of x's class, as a source-module handle.
    pub fn class_rep(&self, x: usize) -> usize {
        self.rep[x]
    }

    /// Projection: source handle → quotient handle.
    pub fn class_index(&self, x: usize) -> usize {
        self.classes.binary_search(&self.rep[x]).expect("rep is a class")
    }

    /// Sorted source handles of the class maxima.
    pub fn classes(&self) -> &[usize] {
        &self.classes
    }

    pub fn size(&self) -> usize {
        self.classes.len()
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    /// Induced quantale, present when the source was Q acting on itself.
    pub fn quotient_quantale(&self) -> Option<&FiniteQuantale> {
        self.quantale.as_ref()
    }

    /// The quotient as a module over the original quantale.
    pub fn as_module(&self) -> FiniteQModule {
        FiniteQModule::try_new(
            Arc::clone(self.module.quantale()),
            self.carrier.clone(),
            self.action.clone(),
        )
        .expect("quotient action is well-shaped")
    }

    /// max over b of the least n with Dⁿ(b) stationary.
    pub fn step_degree(&self) -> usize {
        self.step_degree
    }

    /// All members of the class of x (source handles).
    pub fn class_members(&self, x: usize) -> Vec<usize> {
        (0..self.module.size())
            .filter(|&y| self.rep[y] == self.rep[x])
            .collect()
    }
}

pub fn localize(m: &FiniteQModule, f: &MFilter) -> Result<LocalizationQuotient, LocError> {
    let sat = SaturationOperator::new(m, f)?;
    let n = m.size();
    let mut rep = Vec::with_capacity(n);
    let mut degree = 0;
    for b in 0..n {
        let (fix, steps) = sat.fixpoint(b);
        rep.push(fix);
        degree = degree.max(steps);
    }
    let mut classes: Vec<usize> = rep.clone();
    classes.sort_unstable();
    classes.dedup();
    let idx = |x: usize| classes.binary_search(&rep[x]).unwrap();

    // well-definedness: joins and the action must factor through reps
    for a in 0..n {
        for b in 0..n {
            let direct = rep[m.join(a, b)];
            let via_reps = rep[m.join(rep[a], rep[b])];
            if direct != via_reps {
                return Err(LocError::TheoremViolated(format!(
                    "quotient join ill-defined at {} + {}",
                    m.name(a),
                    m.name(b)
                )));
            }
        }
    }
    let q = m.quantale();
    for s in 0..q.size() {
        for x in 0..n {
            if rep[m.act(s, x)] != rep[m.act(s, rep[x])] {
                return Err(LocError::TheoremViolated(format!(
                    "quotient action ill-defined at {}·{}",
                    q.name(s),
                    m.name(x)
                )));
            }
        }
    }

    let names: Vec<String> = classes.iter().map(|&r| format!("[{}]", m.name(r))).collect();
    let join: Vec<Vec<usize>> = classes
        .iter()
        .map(|&a| classes.iter().map(|&b| idx(m.join(a, b))).collect())
        .collect();
    let top = idx(m.carrier().top());
    let carrier = Carrier::try_new(names, join, top).map_err(QuantaleError::from)?;
    let action: Vec<Vec<usize>> = (0..q.size())
        .map(|s| classes.iter().map(|&x| idx(m.act(s, x))).collect())
        .collect();

    // self-module sources additionally induce a quantale on the classes
    let is_self = m.carrier() == q.carrier()
        && (0..n).all(|a| (0..n).all(|b| m.act(a, b) == q.mult(a, b)));
    let quantale = if is_self {
        let mult: Vec<Vec<usize>> = classes
            .iter()
            .map(|&a| classes.iter().map(|&b| idx(q.mult(a, b))).collect())
            .collect();
        let qq = FiniteQuantale::try_new(carrier.clone(), mult)?;
        let report = validate_quantale(&qq);
        if !report.is_valid() {
            return Err(LocError::TheoremViolated(format!(
                "quotient fails quantale laws: {:?}",
                report.violations[0].law
            )));
        }
        Some(qq)
    } else {
        None
    };

    Ok(LocalizationQuotient {
        module: m.clone(),
        filter: f.clone(),
        rep,
        classes,
        carrier,
        action,
        quantale,
        step_degree: degree,
    })
}

pub fn step_degree(m: &FiniteQModule, f: &MFilter) -> Result<usize, LocError> {
    Ok(localize(m, f)?.step_degree())
}

/// a ⪯² b forces a ⪯¹ b: equivalently D is idempotent, degree ≤ 1.
pub fn is_one_step(m: &FiniteQModule, f: &MFilter) -> Result<bool, LocError> {
    Ok(step_degree(m, f)? <= 1)
}

/// Class map M_f → M_g for f ⊆ g, as quotient-handle map. Well-defined
/// because coarser filters only merge classes.
pub fn localization_map(
    m: &FiniteQModule,
    f: &MFilter,
    g: &MFilter,
) -> Result<Vec<usize>, LocError> {
    if !f.is_subset(g) {
        return Err(LocError::NotSubfilter(f.display(), g.display()));
    }
    let lf = localize(m, f)?;
    let lg = localize(m, g)?;
    let map: Vec<usize> = lf.classes().iter().map(|&r| lg.class_index(r)).collect();
    // factoring check: x and rep_f(x) must land together downstream
    for x in 0..m.size() {
        if lg.class_index(x) != map[lf.class_index(x)] {
            return Err(LocError::TheoremViolated(format!(
                "localization map does not factor at {}",
                m.name(x)
            )));
        }
    }
    Ok(map)
}

/// Verified isomorphism M_{f+g} ≅ (M_f)_g.
pub struct ComposeWitness {
    pub lhs: LocalizationQuotient,
    pub inner: LocalizationQuotient,
    pub outer: LocalizationQuotient,
    /// lhs quotient handle → outer quotient handle
    pub map: Vec<usize>,
}

pub fn compose_localizations(
    m: &FiniteQModule,
    f: &MFilter,
    g: &MFilter,
) -> Result<ComposeWitness, LocError> {
    check_same_quantale(m, f)?;
    check_same_quantale(m, g)?;
    let sum = filter_sum(f, g);
    let lhs = localize(m, &sum)?;
    let inner = localize(m, f)?;
    let mid = inner.as_module();
    let outer = localize(&mid, g)?;

    // x̄ ↦ the outer class of x's inner class
    let map: Vec<usize> = lhs
        .classes()
        .iter()
        .map(|&x| outer.class_index(inner.class_index(x)))
        .collect();

    let mut seen = vec![false; outer.size()];
    for &t in &map {
        seen[t] = true;
    }
    if map.len() != outer.size() || seen.iter().any(|&s| !s) {
        return Err(LocError::TheoremViolated(format!(
            "M_(F+G) has {} classes but (M_F)_G has {}",
            map.len(),
            outer.size()
        )));
    }
    for i in 0..lhs.size() {
        for j in 0..lhs.size() {
            let jl = lhs.carrier().join(i, j);
            let jr = outer.carrier().join(map[i], map[j]);
            if map[jl] != jr {
                return Err(LocError::TheoremViolated(
                    "composition witness does not preserve joins".into(),
                ));
            }
        }
    }
    let q = m.quantale();
    let lhs_mod = lhs.as_module();
    let outer_mod = outer.as_module();
    for s in 0..q.size() {
        for i in 0..lhs.size() {
            if map[lhs_mod.act(s, i)] != outer_mod.act(s, map[i]) {
                return Err(LocError::TheoremViolated(
                    "composition witness does not preserve the action".into(),
                ));
            }
        }
    }
    Ok(ComposeWitness {
        lhs,
        inner,
        outer,
        map,
    })
}

/// Definitional normality scan (≤* is ≤ on a finite carrier). A family's
/// role factors through its join T, so scanning all T ∈ M covers every
/// family; the required decomposition {m_j′} is the witness set of D_N(T),
/// which contains m itself (s pushes it below T) — the scan documents this
/// rather than assuming it.
pub fn is_normal(m: &FiniteQModule, f: &MFilter) -> Result<bool, LocError> {
    let sat = SaturationOperator::new(m, f)?;
    for s in f.members().iter() {
        for mm in 0..m.size() {
            for t in 0..m.size() {
                if m.leq(m.act(s, mm), t) && !m.leq(mm, sat.apply(t)) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Conormal: every one-step comparison collapses to a single multiplier.
/// A genuine check — it passes on finite carriers by the Noetherian-module
/// theorem, not syntactically.
pub fn is_conormal(m: &FiniteQModule, f: &MFilter) -> Result<bool, LocError> {
    let sat = SaturationOperator::new(m, f)?;
    for a in 0..m.size() {
        for b in 0..m.size() {
            if m.leq(a, sat.apply(b))
                && !f.members().iter().any(|s| m.leq(m.act(s, a), b))
            {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn is_binormal(m: &FiniteQModule, f: &MFilter) -> Result<bool, LocError> {
    Ok(is_normal(m, f)? && is_conormal(m, f)?)
}

/// Greatest normal subfilter: sum of all normal filters contained in f,
/// computed over the full filter enumeration.
pub fn gnf(m: &FiniteQModule, f: &MFilter, cap: usize) -> Result<MFilter, LocError> {
    let q = m.quantale();
    let mut acc = MFilter::trivial(q);
    for g in enumerate_mfilters(q, cap)? {
        if g.is_subset(f) && is_normal(m, &g)? {
            acc = filter_sum(&acc, &g);
        }
    }
    if !acc.is_subset(f) {
        return Err(LocError::TheoremViolated(
            "sum of normal subfilters escaped f".into(),
        ));
    }
    Ok(acc)
}

/// Least conormal superfilter: intersection of all conormal filters
/// containing f.
pub fn lcf(m: &FiniteQModule, f: &MFilter, cap: usize) -> Result<MFilter, LocError> {
    let q = m.quantale();
    let mut acc = MFilter::whole(q);
    for g in enumerate_mfilters(q, cap)? {
        if f.is_subset(&g) && is_conormal(m, &g)? {
            acc = filter_product(&acc, &g);
        }
    }
    if !f.is_subset(&acc) {
        return Err(LocError::TheoremViolated(
            "intersection of conormal superfilters lost f".into(),
        ));
    }
    Ok(acc)
}

/// Validation bundle for a quotient: carrier laws, module laws, and (for
/// self-module sources) quantale laws.
pub fn validate_quotient(l: &LocalizationQuotient) -> ValidationReport {
    let mut report = order_core::validate_carrier(l.carrier());
    let module_report = validate_module(&l.as_module());
    report.violations.extend(module_report.violations);
    if let Some(qq) = l.quotient_quantale() {
        report.violations.extend(validate_quantale(qq).violations);
    }
    report
}

/// The classical x ↦ x_S map on Id(Z/n) against D_F. The ring side works in
/// residues: x_S = {c : sc ∈ x for some s ∈ S}; its generator is compared
/// with the saturation of x under the filter generated by the ideals (s).
/// S is closed under multiplication mod n first (both sides need it).
pub fn xs_crosscheck(n: u64, s: &[u64]) -> Result<bool, LocError> {
    if s.is_empty() {
        return Err(LocError::Mismatch("S must be nonempty".into()));
    }
    let mut closed: Vec<u64> = s.iter().map(|&x| x % n).collect();
    closed.push(1);
    closed.sort_unstable();
    closed.dedup();
    loop {
        let mut grew = false;
        let snapshot = closed.clone();
        for &a in &snapshot {
            for &b in &snapshot {
                let ab = a * b % n;
                if let Err(pos) = closed.binary_search(&ab) {
                    closed.insert(pos, ab);
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }

    let q = Arc::new(build_ideal_quantale(n)?);
    let divisors = ideal_divisors(n);
    let handle_of = |d: u64| divisors.iter().position(|&x| x == d).unwrap();
    let m = self_module(&q);
    let seeds: Vec<usize> = closed
        .iter()
        .map(|&x| handle_of(num_gcd(x, n)))
        .collect();
    let filt = mfilter::generate_filter(&q, &seeds)?;
    let sat = SaturationOperator::new(&m, &filt)?;

    for (xi, &d) in divisors.iter().enumerate() {
        // ring side: generator of {c : d | s·c for some s ∈ S}
        let members: Vec<u64> = (0..n)
            .filter(|&c| closed.iter().any(|&sv| (sv * c) % d_mod(d) == 0))
            .collect();
        let ring_gen = members.iter().fold(n, |acc, &c| num_gcd(acc, c));
        let quantale_gen = divisors[sat.apply(xi)];
        if ring_gen != quantale_gen {
            return Ok(false);
        }
    }
    Ok(true)
}

fn d_mod(d: u64) -> u64 {
    d.max(1)
}

fn num_gcd(a: u64, b: u64) -> u64 {
    num_integer::Integer::gcd(&a, &b)
}
