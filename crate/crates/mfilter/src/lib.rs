//! Multiplicative filters on finite quantales.
//!
//! A filter contains the unit, is upward closed, and is closed under
//! multiplication. Filters are stored as full membership sets; display goes
//! through the antichain of minimal elements, which determines the filter.

use std::fmt::Write as _;
use std::sync::Arc;

use order_core::UpSet;
use quantale_core::{FiniteQuantale, QuantaleError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FilterError {
    #[error("not an m-filter: {0}")]
    NotAFilter(String),
    #[error("generating set must be nonempty")]
    EmptyGenerators,
    #[error("unknown element name {0:?}")]
    UnknownElement(String),
    #[error("filter spec parse error: {0}")]
    Parse(String),
    #[error("enumeration cap exceeded after visiting {visited} candidate up-sets")]
    CapExceeded { visited: usize },
    #[error(transparent)]
    Quantale(#[from] QuantaleError),
}

/// Default candidate budget for `enumerate_mfilters`.
pub const DEFAULT_ENUM_CAP: usize = 1 << 20;

#[derive(Clone, Debug)]
pub struct MFilter {
    q: Arc<FiniteQuantale>,
    members: UpSet,
}

impl PartialEq for MFilter {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for MFilter {}

impl std::hash::Hash for MFilter {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.members.hash(state);
    }
}

impl MFilter {
    /// Checks filterhood; the only way to build one from a raw member set.
    pub fn try_new(q: Arc<FiniteQuantale>, members: UpSet) -> Result<Self, FilterError> {
        if !members.contains(q.unit()) {
            return Err(FilterError::NotAFilter("1 is missing".into()));
        }
        if !members.is_up_closed(q.carrier()) {
            return Err(FilterError::NotAFilter("not upward closed".into()));
        }
        for a in members.iter() {
            for b in members.iter() {
                if !members.contains(q.mult(a, b)) {
                    return Err(FilterError::NotAFilter(format!(
                        "not multiplicatively closed: {}·{} = {} escapes",
                        q.name(a),
                        q.name(b),
                        q.name(q.mult(a, b))
                    )));
                }
            }
        }
        Ok(MFilter { q, members })
    }

    /// {1}: the least m-filter.
    pub fn trivial(q: &Arc<FiniteQuantale>) -> Self {
        let mut members = UpSet::empty(q.size());
        members.insert(q.unit());
        MFilter {
            q: Arc::clone(q),
            members,
        }
    }

    /// The whole quantale: the greatest m-filter.
    pub fn whole(q: &Arc<FiniteQuantale>) -> Self {
        MFilter {
            q: Arc::clone(q),
            members: UpSet::full(q.size()),
        }
    }

    pub fn quantale(&self) -> &Arc<FiniteQuantale> {
        &self.q
    }

    pub fn members(&self) -> &UpSet {
        &self.members
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false // a filter always contains 1
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.members.len() == self.q.size()
    }

    pub fn is_subset(&self, other: &MFilter) -> bool {
        self.members.is_subset(&other.members)
    }

    /// The antichain of minimal members; determines the filter.
    pub fn minimal_elements(&self) -> Vec<usize> {
        self.q.carrier().minimal_elements(&self.members)
    }

    /// "F{(2),(3)}"-style rendering via the minimal antichain.
    pub fn display(&self) -> String {
        let mut s = String::from("F{");
        for (i, m) in self.minimal_elements().into_iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            let _ = write!(s, "{}", self.q.name(m));
        }
        s.push('}');
        s
    }
}

/// Smallest m-filter containing S: close under products, then take the
/// up-set. Members are exactly the elements above some finite product from S.
pub fn generate_filter(
    q: &Arc<FiniteQuantale>,
    seeds: &[usize],
) -> Result<MFilter, FilterError> {
    if seeds.is_empty() {
        return Err(FilterError::EmptyGenerators);
    }
    let mut prods = UpSet::from_members(q.size(), seeds.iter().copied());
    prods.insert(q.unit());
    loop {
        let mut grew = false;
        let current = prods.members();
        for &a in &current {
            for &b in &current {
                let ab = q.mult(a, b);
                if !prods.contains(ab) {
                    prods.insert(ab);
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    let members = q.carrier().up_closure(&prods.members());
    MFilter::try_new(Arc::clone(q), members)
}

/// F_f = {q : fⁿ ≤ q for some n ≥ 1}.
pub fn minimal_filter(q: &Arc<FiniteQuantale>, f: usize) -> MFilter {
    generate_filter(q, &[f]).expect("singleton generator")
}

/// F_{⊥a} = {x : x + a = 1}. Filterhood is the comaximality lemma
/// (a+b = 1 and a+c = 1 force a+bc = 1), asserted here.
pub fn comaximal_filter(q: &Arc<FiniteQuantale>, a: usize) -> MFilter {
    let members = UpSet::from_members(
        q.size(),
        (0..q.size()).filter(|&x| q.join(x, a) == q.unit()),
    );
    MFilter::try_new(Arc::clone(q), members)
        .expect("comaximality lemma: the comaximal set is a filter")
}

/// F_{∤a} = {x : ∀y, xy ≤ a ⇒ y ≤ a}.
pub fn codense_filter(q: &Arc<FiniteQuantale>, a: usize) -> MFilter {
    let members = UpSet::from_members(
        q.size(),
        (0..q.size()).filter(|&x| {
            (0..q.size()).all(|y| !q.leq(q.mult(x, y), a) || q.leq(y, a))
        }),
    );
    MFilter::try_new(Arc::clone(q), members).expect("the codense set is a filter")
}

/// Join in mF(Q): the filter generated by the union.
pub fn filter_sum(f: &MFilter, g: &MFilter) -> MFilter {
    let seeds: Vec<usize> = f
        .minimal_elements()
        .into_iter()
        .chain(g.minimal_elements())
        .collect();
    generate_filter(f.quantale(), &seeds).expect("nonempty generators")
}

/// Multiplication in mF(Q): plain intersection of member sets.
pub fn filter_product(f: &MFilter, g: &MFilter) -> MFilter {
    MFilter::try_new(
        Arc::clone(f.quantale()),
        f.members().intersection(g.members()),
    )
    .expect("intersection of filters is a filter")
}

/// All m-filters, sorted by membership bits. Walks up-sets top-down along a
/// linear extension (an element may enter only if everything above it is
/// already in), testing mult-closure at the leaves. `cap` bounds the number
/// of candidate up-sets visited.
pub fn enumerate_mfilters(
    q: &Arc<FiniteQuantale>,
    cap: usize,
) -> Result<Vec<MFilter>, FilterError> {
    let order = q.carrier().linear_extension_desc();
    let mut out: Vec<MFilter> = Vec::new();
    let mut visited = 0usize;
    let mut stack: Vec<(usize, UpSet)> = vec![(0, UpSet::empty(q.size()))];
    while let Some((depth, partial)) = stack.pop() {
        if depth == order.len() {
            visited += 1;
            if visited > cap {
                return Err(FilterError::CapExceeded { visited });
            }
            if let Ok(f) = MFilter::try_new(Arc::clone(q), partial) {
                out.push(f);
            }
            continue;
        }
        let x = order[depth];
        // leave x out
        stack.push((depth + 1, partial.clone()));
        // put x in, only if everything strictly above is already in
        let above_ok = (0..q.size())
            .all(|y| !q.carrier().lt(x, y) || partial.contains(y));
        if above_ok {
            let mut with_x = partial;
            with_x.insert(x);
            stack.push((depth + 1, with_x));
        }
    }
    out.sort_by(|a, b| a.members().cmp(b.members()));
    Ok(out)
}

/// mF(Q) as a finite quantale: order is inclusion, join is filter sum, mult
/// is intersection, top (= unit) is the whole quantale, least element {1}.
/// Returns the quantale together with the filter list in handle order.
pub fn mf_quantale(
    q: &Arc<FiniteQuantale>,
    cap: usize,
) -> Result<(FiniteQuantale, Vec<MFilter>), FilterError> {
    let filters = enumerate_mfilters(q, cap)?;
    let pos = |f: &MFilter| filters.iter().position(|g| g == f).unwrap();
    let names: Vec<String> = filters.iter().map(MFilter::display).collect();
    let join: Vec<Vec<usize>> = filters
        .iter()
        .map(|f| filters.iter().map(|g| pos(&filter_sum(f, g))).collect())
        .collect();
    let mult: Vec<Vec<usize>> = filters
        .iter()
        .map(|f| filters.iter().map(|g| pos(&filter_product(f, g))).collect())
        .collect();
    let top = pos(&MFilter::whole(q));
    let carrier =
        order_core::Carrier::try_new(names, join, top).map_err(QuantaleError::from)?;
    Ok((FiniteQuantale::try_new(carrier, mult)?, filters))
}

/// Solid on a finite carrier: every member-covering family admits a finite
/// subfamily whose join is still a member. The subfamily extraction runs for
/// real (greedy pruning); the outcome is always true here, and the
/// discriminating infinite cases live in the interval module.
pub fn is_solid(f: &MFilter) -> bool {
    let q = f.quantale();
    let n = q.size();
    if n > order_core::EXHAUSTIVE_SUBSET_BUDGET {
        return true; // finite carrier: the family itself is the finite subfamily
    }
    for mask in 1u64..(1 << n) {
        let s: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let total = q.join_set(&s).unwrap();
        if f.contains(total) {
            let witness = order_core::finite_subjoin_witness(q.carrier(), total, &s);
            match witness {
                Some(w) => {
                    if !f.contains(q.join_set(&w).unwrap()) {
                        return false;
                    }
                }
                None => return false,
            }
        }
    }
    true
}

/// Filter mini-language:
///   trivial | all | gen(e,…) | min(e) | comax(e) | codense(e)
///   | sum(s,t) | prod(s,t)
/// `name:arg` is accepted as shorthand for `name(arg)` (e.g. "min:(2)").
/// Element names resolve against the quantale's label table; names may
/// themselves contain parentheses and commas, so splitting is
/// balance-aware.
pub fn parse_filter_spec(q: &Arc<FiniteQuantale>, spec: &str) -> Result<MFilter, FilterError> {
    let spec = spec.trim();
    match spec {
        "trivial" => return Ok(MFilter::trivial(q)),
        "all" => return Ok(MFilter::whole(q)),
        _ => {}
    }
    let (head, arg) = split_head(spec)?;
    let elem = |name: &str| -> Result<usize, FilterError> {
        q.carrier()
            .index_of(name.trim())
            .ok_or_else(|| FilterError::UnknownElement(name.trim().to_owned()))
    };
    match head {
        "gen" => {
            let seeds = split_args(arg)
                .into_iter()
                .map(|a| elem(&a))
                .collect::<Result<Vec<_>, _>>()?;
            generate_filter(q, &seeds)
        }
        "min" => Ok(minimal_filter(q, elem(arg)?)),
        "comax" => Ok(comaximal_filter(q, elem(arg)?)),
        "codense" => Ok(codense_filter(q, elem(arg)?)),
        "sum" | "prod" => {
            let parts = split_args(arg);
            if parts.len() != 2 {
                return Err(FilterError::Parse(format!(
                    "{head} takes exactly two sub-specs, got {}",
                    parts.len()
                )));
            }
            let f = parse_filter_spec(q, &parts[0])?;
            let g = parse_filter_spec(q, &parts[1])?;
            Ok(if head == "sum" {
                filter_sum(&f, &g)
            } else {
                filter_product(&f, &g)
            })
        }
        other => Err(FilterError::Parse(format!("unknown filter family {other:?}"))),
    }
}

/// "name(arg)" or "name:arg" → (name, arg).
fn split_head(spec: &str) -> Result<(&str, &str), FilterError> {
    if let Some(i) = spec.find(':') {
        let head = &spec[..i];
        if !head.contains('(') {
            return Ok((head, spec[i + 1..].trim()));
        }
    }
    let open = spec
        .find('(')
        .ok_or_else(|| FilterError::Parse(format!("expected family(args) in {spec:?}")))?;
    if !spec.ends_with(')') {
        return Err(FilterError::Parse(format!("unbalanced parentheses in {spec:?}")));
    }
    Ok((&spec[..open], spec[open + 1..spec.len() - 1].trim()))
}

/// Split on top-level commas, respecting nested parentheses.
fn split_args(args: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut current = String::new();
    for ch in args.chars() {
        match ch {
            '(' => {
                depth += 1;
                current.push(ch);
            }
            ')' => {
                depth -= 1;
                current.push(ch);
            }
            ',' if depth == 0 => {
                out.push(current.trim().to_owned());
                current = String::new();
            }
            _ => current.push(ch),
        }
    }
    if !current.trim().is_empty() {
        out.push(current.trim().to_owned());
    }
    out
}
