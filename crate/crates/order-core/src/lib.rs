//! Finite join-semilattices presented by explicit join tables.
//!
//! Everything downstream (quantales, filters, localization) sits on a
//! `Carrier`: element handles `0..size` with a binary join table, a designated
//! top, and the derived order `a ≤ b ⇔ a + b = b`. The order is never stored
//! separately; it is always read off the table, so it cannot drift out of
//! sync. Handles are dense integers; names are display-only.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum OrderError {
    #[error("carrier shape: {0}")]
    Shape(String),
    #[error("join of the empty set is undefined (carriers need not have a bottom)")]
    EmptyJoin,
    #[error("element handle {handle} out of range for carrier of size {size}")]
    BadHandle { handle: usize, size: usize },
    #[error("unknown element name {0:?}")]
    UnknownName(String),
}

/// A finite join-semilattice with top. Join is total; the order is derived.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Carrier {
    names: Vec<String>,
    join: Vec<Vec<usize>>,
    top: usize,
}

/// Serialized form; `kind` is fixed to "table".
#[derive(Serialize, Deserialize)]
struct CarrierJson {
    kind: String,
    names: Vec<String>,
    join: Vec<Vec<usize>>,
    top: usize,
}

impl Serialize for Carrier {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        CarrierJson {
            kind: "table".to_owned(),
            names: self.names.clone(),
            join: self.join.clone(),
            top: self.top,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Carrier {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = CarrierJson::deserialize(d)?;
        if raw.kind != "table" {
            return Err(serde::de::Error::custom(format!(
                "carrier kind must be \"table\", got {:?}",
                raw.kind
            )));
        }
        Carrier::try_new(raw.names, raw.join, raw.top).map_err(serde::de::Error::custom)
    }
}

impl Carrier {
    /// Shape-checks only (dimensions, handle ranges, distinct names). Law
    /// checking is `validate_carrier`'s job.
    pub fn try_new(
        names: Vec<String>,
        join: Vec<Vec<usize>>,
        top: usize,
    ) -> Result<Self, OrderError> {
        let n = names.len();
        if n == 0 {
            return Err(OrderError::Shape("carrier must be nonempty".into()));
        }
        if join.len() != n {
            return Err(OrderError::Shape(format!(
                "join table has {} rows for {} elements",
                join.len(),
                n
            )));
        }
        for (i, row) in join.iter().enumerate() {
            if row.len() != n {
                return Err(OrderError::Shape(format!(
                    "join row {} has length {}, expected {}",
                    i,
                    row.len(),
                    n
                )));
            }
            for &v in row {
                if v >= n {
                    return Err(OrderError::BadHandle { handle: v, size: n });
                }
            }
        }
        if top >= n {
            return Err(OrderError::BadHandle { handle: top, size: n });
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if names[i] == names[j] {
                    return Err(OrderError::Shape(format!(
                        "duplicate element name {:?} (handles {} and {})",
                        names[i], i, j
                    )));
                }
            }
        }
        Ok(Carrier { names, join, top })
    }

    /// Chain on the given names, ordered by position: last name is top.
    pub fn chain(names: Vec<String>) -> Result<Self, OrderError> {
        let n = names.len();
        let join = (0..n)
            .map(|i| (0..n).map(|j| i.max(j)).collect())
            .collect();
        Carrier::try_new(names, join, n - 1)
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a][b]
    }

    /// a ≤ b ⇔ a + b = b.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.join[a][b] == b
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    /// Least upper bound of a nonempty set: a fold of the table.
    pub fn join_set(&self, s: &[usize]) -> Result<usize, OrderError> {
        let (&first, rest) = s.split_first().ok_or(OrderError::EmptyJoin)?;
        Ok(rest.iter().fold(first, |acc, &x| self.join[acc][x]))
    }

    /// Greatest lower bound as the join of the common lower set; `Absent`
    /// when that set is empty (a bare semilattice may lack one).
    pub fn meet(&self, a: usize, b: usize) -> Meet {
        let lower: Vec<usize> = (0..self.size())
            .filter(|&x| self.leq(x, a) && self.leq(x, b))
            .collect();
        match self.join_set(&lower) {
            Ok(m) => Meet::Element(m),
            Err(_) => Meet::Absent,
        }
    }

    /// The least element, if the carrier has one.
    pub fn bottom(&self) -> Option<usize> {
        (0..self.size()).find(|&b| (0..self.size()).all(|x| self.leq(b, x)))
    }

    /// Handles ordered so that every element precedes everything strictly
    /// below it (top first). Sorting key: number of elements strictly above.
    pub fn linear_extension_desc(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.size()).collect();
        let above =
            |x: usize| (0..self.size()).filter(|&y| self.lt(x, y)).count();
        order.sort_by_key(|&x| (above(x), x));
        order
    }

    /// Minimal elements of a subset (its lower frontier / antichain).
    pub fn minimal_elements(&self, s: &UpSet) -> Vec<usize> {
        s.iter()
            .filter(|&m| !s.iter().any(|x| self.lt(x, m)))
            .collect()
    }

    pub fn maximal_elements(&self, s: &UpSet) -> Vec<usize> {
        s.iter()
            .filter(|&m| !s.iter().any(|x| self.lt(m, x)))
            .collect()
    }

    /// Everything ≥ some seed.
    pub fn up_closure(&self, seeds: &[usize]) -> UpSet {
        let mut s = UpSet::empty(self.size());
        for y in 0..self.size() {
            if seeds.iter().any(|&x| self.leq(x, y)) {
                s.insert(y);
            }
        }
        s
    }

    /// Everything ≤ a.
    pub fn down_set(&self, a: usize) -> Vec<usize> {
        (0..self.size()).filter(|&x| self.leq(x, a)).collect()
    }
}

/// Meet of a pair: either an element or genuinely absent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Meet {
    Element(usize),
    Absent,
}

impl Meet {
    pub fn as_option(self) -> Option<usize> {
        match self {
            Meet::Element(x) => Some(x),
            Meet::Absent => None,
        }
    }
}

/// Subset of carrier handles, bit per element. The name reflects its main
/// use (upward-closed member sets); `is_up_closed` checks that invariant,
/// and plain subsets use the same representation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UpSet {
    size: usize,
    blocks: Vec<u64>,
}

impl UpSet {
    pub fn empty(size: usize) -> Self {
        UpSet {
            size,
            blocks: vec![0; size.div_ceil(64)],
        }
    }

    pub fn full(size: usize) -> Self {
        let mut s = UpSet::empty(size);
        for i in 0..size {
            s.insert(i);
        }
        s
    }

    pub fn from_members<I: IntoIterator<Item = usize>>(size: usize, members: I) -> Self {
        let mut s = UpSet::empty(size);
        for m in members {
            s.insert(m);
        }
        s
    }

    /// Low `size` bits of a mask; only for carriers of size ≤ 64.
    pub fn from_mask(size: usize, mask: u64) -> Self {
        assert!(size <= 64);
        UpSet {
            size,
            blocks: vec![if size == 64 { mask } else { mask & ((1u64 << size) - 1) }],
        }
    }

    pub fn universe_size(&self) -> usize {
        self.size
    }

    pub fn contains(&self, i: usize) -> bool {
        self.blocks[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < self.size);
        self.blocks[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        self.blocks[i / 64] &= !(1 << (i % 64));
    }

    pub fn len(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.size).filter(move |&i| self.contains(i))
    }

    pub fn members(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn is_subset(&self, other: &UpSet) -> bool {
        self.blocks
            .iter()
            .zip(&other.blocks)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn intersection(&self, other: &UpSet) -> UpSet {
        UpSet {
            size: self.size,
            blocks: self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub fn union(&self, other: &UpSet) -> UpSet {
        UpSet {
            size: self.size,
            blocks: self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| a | b)
                .collect(),
        }
    }

    pub fn is_up_closed(&self, c: &Carrier) -> bool {
        self.iter()
            .all(|x| (0..c.size()).all(|y| !c.leq(x, y) || self.contains(y)))
    }
}

/// One violated law with a witness. `witness` holds element handles; `detail`
/// spells the instance out with names.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Violation {
    pub law: String,
    pub witness: Vec<usize>,
    pub detail: String,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, law: &str, witness: Vec<usize>, detail: String) {
        self.violations.push(Violation {
            law: law.to_owned(),
            witness,
            detail,
        });
    }
}

/// Exhaustive table scan of the semilattice laws. Shape is already enforced
/// by construction, so only the algebra can fail here.
pub fn validate_carrier(c: &Carrier) -> ValidationReport {
    let mut report = ValidationReport::default();
    let n = c.size();
    for a in 0..n {
        if c.join(a, a) != a {
            report.push(
                "idempotency",
                vec![a],
                format!("{} + {} = {}", c.name(a), c.name(a), c.name(c.join(a, a))),
            );
        }
        if c.join(c.top(), a) != c.top() {
            report.push(
                "top-absorbing",
                vec![c.top(), a],
                format!("top + {} = {}", c.name(a), c.name(c.join(c.top(), a))),
            );
        }
    }
    for a in 0..n {
        for b in (a + 1)..n {
            if c.join(a, b) != c.join(b, a) {
                report.push(
                    "commutativity",
                    vec![a, b],
                    format!(
                        "{} + {} = {} but {} + {} = {}",
                        c.name(a),
                        c.name(b),
                        c.name(c.join(a, b)),
                        c.name(b),
                        c.name(a),
                        c.name(c.join(b, a))
                    ),
                );
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for d in 0..n {
                let lhs = c.join(c.join(a, b), d);
                let rhs = c.join(a, c.join(b, d));
                if lhs != rhs {
                    report.push(
                        "associativity",
                        vec![a, b, d],
                        format!(
                            "({} + {}) + {} = {} but {} + ({} + {}) = {}",
                            c.name(a),
                            c.name(b),
                            c.name(d),
                            c.name(lhs),
                            c.name(a),
                            c.name(b),
                            c.name(d),
                            c.name(rhs)
                        ),
                    );
                }
            }
        }
    }
    report
}

/// Subset budget for the definitional scans below. Beyond it the finiteness
/// argument applies verbatim, so the scans would only re-prove it slowly.
pub const EXHAUSTIVE_SUBSET_BUDGET: usize = 12;

/// Every nonempty subset has a maximal element. Always true on a finite
/// carrier; the scan documents the criterion and exercises the order.
pub fn is_noetherian(c: &Carrier) -> bool {
    let n = c.size();
    if n > EXHAUSTIVE_SUBSET_BUDGET {
        return true; // finite carrier: any subset chain stabilizes
    }
    // strictly-above masks, then one bit test per candidate maximal element
    let above: Vec<u64> = (0..n)
        .map(|x| {
            (0..n)
                .filter(|&y| c.lt(x, y))
                .fold(0u64, |m, y| m | 1 << y)
        })
        .collect();
    for mask in 1u64..(1 << n) {
        let has_maximal =
            (0..n).any(|m| mask >> m & 1 == 1 && above[m] & mask == 0);
        if !has_maximal {
            return false;
        }
    }
    true
}

/// From S with `target ≤ ΣS`, extract a small sub-join still dominating
/// `target` by greedy deletion. This is the finite-subjoin witness behind
/// `≤*`; on a finite carrier it always succeeds.
pub fn finite_subjoin_witness(c: &Carrier, target: usize, s: &[usize]) -> Option<Vec<usize>> {
    let total = c.join_set(s).ok()?;
    if !c.leq(target, total) {
        return None;
    }
    let mut kept: Vec<usize> = s.to_vec();
    let mut i = 0;
    while i < kept.len() {
        let mut trial = kept.clone();
        trial.remove(i);
        match c.join_set(&trial) {
            Ok(j) if c.leq(target, j) => kept = trial,
            _ => i += 1,
        }
    }
    Some(kept)
}

/// Whenever a subset joins to top, some finite sub-join already reaches top.
/// Trivially true here (the subset itself is finite); the witness extraction
/// keeps the check honest.
pub fn is_compact_lattice(c: &Carrier) -> bool {
    let n = c.size();
    if n > EXHAUSTIVE_SUBSET_BUDGET {
        return true; // finite carrier: the cover itself is the finite subcover
    }
    for mask in 1u64..(1 << n) {
        let s: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        if c.join_set(&s).ok() == Some(c.top())
            && finite_subjoin_witness(c, c.top(), &s).is_none()
        {
            return false;
        }
    }
    true
}
