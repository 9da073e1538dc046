//! Exact rational interval sets over a space of disjoint closed segments.
//!
//! Everything is stored in a canonical form — pieces sorted, merged, and
//! non-adjacent — so `==` is extensional equality of point sets.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::IntervalError;

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// One maximal interval of a set: endpoints plus "endpoint included" flags.
/// `lo == hi` is allowed only with both flags set (a single point).
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Piece {
    pub lo: Rat,
    pub lo_in: bool,
    pub hi: Rat,
    pub hi_in: bool,
}

impl Piece {
    pub(crate) fn new(lo: Rat, lo_in: bool, hi: Rat, hi_in: bool) -> Self {
        Piece { lo, lo_in, hi, hi_in }
    }

    fn valid(&self) -> bool {
        self.lo < self.hi || (self.lo == self.hi && self.lo_in && self.hi_in)
    }

    fn contains(&self, p: &Rat) -> bool {
        (*p > self.lo || (*p == self.lo && self.lo_in))
            && (*p < self.hi || (*p == self.hi && self.hi_in))
    }
}

/// Orders upper endpoints: `(x, open) < (x, closed) < (y, _)` for `x < y`.
fn end_cmp(a: (&Rat, bool), b: (&Rat, bool)) -> Ordering {
    a.0.cmp(b.0).then((a.1 as u8).cmp(&(b.1 as u8)))
}

/// Sorts, merges overlapping/touching pieces, and drops empty ones.
pub(crate) fn normalize(mut ps: Vec<Piece>) -> Vec<Piece> {
    ps.retain(Piece::valid);
    ps.sort_by(|a, b| a.lo.cmp(&b.lo).then((!a.lo_in as u8).cmp(&(!b.lo_in as u8))));
    let mut out: Vec<Piece> = Vec::new();
    for p in ps {
        if let Some(last) = out.last_mut() {
            let touches = p.lo < last.hi || (p.lo == last.hi && (last.hi_in || p.lo_in));
            if touches {
                if end_cmp((&last.hi, last.hi_in), (&p.hi, p.hi_in)) == Ordering::Less {
                    last.hi = p.hi;
                    last.hi_in = p.hi_in;
                }
                continue;
            }
        }
        out.push(p);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub(crate) struct SegSet {
    pub pieces: Vec<Piece>,
}

impl SegSet {
    fn empty() -> Self {
        SegSet { pieces: Vec::new() }
    }

    pub(crate) fn union(&self, other: &SegSet) -> SegSet {
        let mut ps = self.pieces.clone();
        ps.extend(other.pieces.iter().cloned());
        SegSet { pieces: normalize(ps) }
    }

    pub(crate) fn intersect(&self, other: &SegSet) -> SegSet {
        let mut out = Vec::new();
        for p in &self.pieces {
            for q in &other.pieces {
                let (lo, lo_in) = match p.lo.cmp(&q.lo) {
                    Ordering::Greater => (p.lo.clone(), p.lo_in),
                    Ordering::Less => (q.lo.clone(), q.lo_in),
                    Ordering::Equal => (p.lo.clone(), p.lo_in && q.lo_in),
                };
                let (hi, hi_in) = match p.hi.cmp(&q.hi) {
                    Ordering::Less => (p.hi.clone(), p.hi_in),
                    Ordering::Greater => (q.hi.clone(), q.hi_in),
                    Ordering::Equal => (p.hi.clone(), p.hi_in && q.hi_in),
                };
                out.push(Piece::new(lo, lo_in, hi, hi_in));
            }
        }
        SegSet { pieces: normalize(out) }
    }

    pub(crate) fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub(crate) fn is_subset(&self, other: &SegSet) -> bool {
        self.intersect(other) == *self
    }

    pub(crate) fn contains_point(&self, p: &Rat) -> bool {
        self.pieces.iter().any(|piece| piece.contains(p))
    }
}

/// The ambient space: finitely many disjoint closed rational segments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Space {
    segs: Vec<(Rat, Rat)>,
}

impl Space {
    pub fn new(mut segs: Vec<(Rat, Rat)>) -> Result<Arc<Self>, IntervalError> {
        if segs.is_empty() {
            return Err(IntervalError::BadSpace("no segments".into()));
        }
        segs.sort_by(|a, b| a.0.cmp(&b.0));
        for (a, b) in &segs {
            if a >= b {
                return Err(IntervalError::BadSpace(format!(
                    "segment [{a},{b}] is empty or a point"
                )));
            }
        }
        for w in segs.windows(2) {
            if w[0].1 >= w[1].0 {
                return Err(IntervalError::BadSpace(format!(
                    "segments [{},{}] and [{},{}] overlap or touch",
                    w[0].0, w[0].1, w[1].0, w[1].1
                )));
            }
        }
        Ok(Arc::new(Space { segs }))
    }

    /// The unit interval `[0,1]`.
    pub fn unit() -> Arc<Self> {
        Space::new(vec![(rat_int(0), rat_int(1))]).expect("unit interval")
    }

    pub fn segments(&self) -> &[(Rat, Rat)] {
        &self.segs
    }

    fn whole_set(&self) -> SegSet {
        SegSet {
            pieces: self
                .segs
                .iter()
                .map(|(a, b)| Piece::new(a.clone(), true, b.clone(), true))
                .collect(),
        }
    }

    /// Index of the segment containing `[p.lo, p.hi]`, if any.
    fn seg_of(&self, p: &Piece) -> Option<usize> {
        self.segs.iter().position(|(a, b)| *a <= p.lo && p.hi <= *b)
    }

    pub(crate) fn complement_set(&self, s: &SegSet) -> SegSet {
        let mut out = Vec::new();
        let mut idx = 0;
        for (a, b) in &self.segs {
            let mut cur = a.clone();
            let mut cur_in = true;
            while idx < s.pieces.len() && s.pieces[idx].lo <= *b {
                let p = &s.pieces[idx];
                out.push(Piece::new(cur, cur_in, p.lo.clone(), !p.lo_in));
                cur = p.hi.clone();
                cur_in = !p.hi_in;
                idx += 1;
            }
            out.push(Piece::new(cur, cur_in, b.clone(), true));
        }
        SegSet { pieces: normalize(out) }
    }

    pub(crate) fn interior_set(&self, s: &SegSet) -> SegSet {
        let mut out = Vec::new();
        for p in &s.pieces {
            let seg = self.seg_of(p).expect("piece inside a segment");
            let (a, b) = &self.segs[seg];
            out.push(Piece::new(
                p.lo.clone(),
                p.lo_in && p.lo == *a,
                p.hi.clone(),
                p.hi_in && p.hi == *b,
            ));
        }
        SegSet { pieces: normalize(out) }
    }

    pub(crate) fn closure_set(&self, s: &SegSet) -> SegSet {
        let pieces = s
            .pieces
            .iter()
            .map(|p| Piece::new(p.lo.clone(), true, p.hi.clone(), true))
            .collect();
        SegSet { pieces: normalize(pieces) }
    }

    pub fn contains_point(&self, p: &Rat) -> bool {
        self.segs.iter().any(|(a, b)| a <= p && p <= b)
    }
}

fn check_same_space(a: &Arc<Space>, b: &Arc<Space>) {
    assert!(
        Arc::ptr_eq(a, b) || **a == **b,
        "operands live on different spaces"
    );
}

/// A relatively open subset of the space, in canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalOpen {
    space: Arc<Space>,
    set: SegSet,
}

impl IntervalOpen {
    pub(crate) fn from_set(space: Arc<Space>, set: SegSet) -> Self {
        debug_assert!(
            set.pieces.iter().all(|p| {
                let seg = space.seg_of(p);
                match seg {
                    None => false,
                    Some(i) => {
                        let (a, b) = &space.segments()[i];
                        p.lo < p.hi
                            && (!p.lo_in || p.lo == *a)
                            && (!p.hi_in || p.hi == *b)
                    }
                }
            }),
            "not relatively open: {set:?}"
        );
        IntervalOpen { space, set }
    }

    pub fn empty(space: &Arc<Space>) -> Self {
        IntervalOpen { space: space.clone(), set: SegSet::empty() }
    }

    pub fn whole(space: &Arc<Space>) -> Self {
        IntervalOpen { space: space.clone(), set: space.whole_set() }
    }

    /// Builds an open from parts `(lo, lo_closed, hi, hi_closed)`.
    /// Parts may overlap; they are canonicalized.  A closed endpoint is only
    /// legal on a segment boundary (relative openness).
    pub fn from_parts(
        space: &Arc<Space>,
        parts: Vec<(Rat, bool, Rat, bool)>,
    ) -> Result<Self, IntervalError> {
        let mut pieces = Vec::new();
        for (lo, lo_in, hi, hi_in) in parts {
            let p = Piece::new(lo, lo_in, hi, hi_in);
            if !p.valid() || p.lo == p.hi {
                return Err(IntervalError::BadSet(format!(
                    "empty or degenerate open part ({}..{})",
                    p.lo, p.hi
                )));
            }
            let seg = space.seg_of(&p).ok_or_else(|| {
                IntervalError::BadSet(format!(
                    "part ({}..{}) is not inside one segment",
                    p.lo, p.hi
                ))
            })?;
            let (a, b) = &space.segments()[seg];
            if (p.lo_in && p.lo != *a) || (p.hi_in && p.hi != *b) {
                return Err(IntervalError::BadSet(format!(
                    "part with closed endpoint off the boundary: {}..{}",
                    p.lo, p.hi
                )));
            }
            pieces.push(p);
        }
        Ok(IntervalOpen { space: space.clone(), set: SegSet { pieces: normalize(pieces) } })
    }

    pub fn space(&self) -> &Arc<Space> {
        &self.space
    }

    pub fn parts(&self) -> Vec<(Rat, bool, Rat, bool)> {
        self.set
            .pieces
            .iter()
            .map(|p| (p.lo.clone(), p.lo_in, p.hi.clone(), p.hi_in))
            .collect()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }

    pub fn is_whole(&self) -> bool {
        self.set == self.space.whole_set()
    }

    pub fn contains_point(&self, p: &Rat) -> bool {
        self.set.contains_point(p)
    }

    pub fn union(&self, other: &IntervalOpen) -> IntervalOpen {
        check_same_space(&self.space, &other.space);
        IntervalOpen { space: self.space.clone(), set: self.set.union(&other.set) }
    }

    pub fn intersect(&self, other: &IntervalOpen) -> IntervalOpen {
        check_same_space(&self.space, &other.space);
        IntervalOpen { space: self.space.clone(), set: self.set.intersect(&other.set) }
    }

    pub fn is_subset(&self, other: &IntervalOpen) -> bool {
        check_same_space(&self.space, &other.space);
        self.set.is_subset(&other.set)
    }

    /// Set complement within the space; the complement of an open is closed.
    pub fn complement(&self) -> ClosedSet {
        ClosedSet { space: self.space.clone(), set: self.space.complement_set(&self.set) }
    }

    pub fn closure(&self) -> ClosedSet {
        ClosedSet { space: self.space.clone(), set: self.space.closure_set(&self.set) }
    }

    /// `int(complement)`, the exterior.
    pub fn exterior(&self) -> IntervalOpen {
        self.complement().interior()
    }

    pub fn is_subset_of_closed(&self, c: &ClosedSet) -> bool {
        check_same_space(&self.space, &c.space);
        self.set.intersect(&c.complement().set).is_empty()
    }
}

/// A closed subset of the space (finite union of closed intervals and points).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedSet {
    space: Arc<Space>,
    set: SegSet,
}

impl ClosedSet {
    pub fn empty(space: &Arc<Space>) -> Self {
        ClosedSet { space: space.clone(), set: SegSet::empty() }
    }

    pub fn whole(space: &Arc<Space>) -> Self {
        ClosedSet { space: space.clone(), set: space.whole_set() }
    }

    /// Builds a closed set from `[lo, hi]` intervals; `lo == hi` is a point.
    pub fn from_intervals(
        space: &Arc<Space>,
        intervals: Vec<(Rat, Rat)>,
    ) -> Result<Self, IntervalError> {
        let mut pieces = Vec::new();
        for (lo, hi) in intervals {
            if lo > hi {
                return Err(IntervalError::BadSet(format!("interval [{lo},{hi}] is empty")));
            }
            let p = Piece::new(lo, true, hi, true);
            if space.seg_of(&p).is_none() {
                return Err(IntervalError::BadSet(format!(
                    "interval [{},{}] is not inside one segment",
                    p.lo, p.hi
                )));
            }
            pieces.push(p);
        }
        Ok(ClosedSet { space: space.clone(), set: SegSet { pieces: normalize(pieces) } })
    }

    pub fn space(&self) -> &Arc<Space> {
        &self.space
    }

    pub fn intervals(&self) -> Vec<(Rat, Rat)> {
        self.set.pieces.iter().map(|p| (p.lo.clone(), p.hi.clone())).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }

    pub fn contains_point(&self, p: &Rat) -> bool {
        self.set.contains_point(p)
    }

    pub fn union(&self, other: &ClosedSet) -> ClosedSet {
        check_same_space(&self.space, &other.space);
        ClosedSet { space: self.space.clone(), set: self.set.union(&other.set) }
    }

    pub fn intersect(&self, other: &ClosedSet) -> ClosedSet {
        check_same_space(&self.space, &other.space);
        ClosedSet { space: self.space.clone(), set: self.set.intersect(&other.set) }
    }

    pub fn is_subset(&self, other: &ClosedSet) -> bool {
        check_same_space(&self.space, &other.space);
        self.set.is_subset(&other.set)
    }

    /// Set complement within the space; the complement of a closed set is open.
    pub fn complement(&self) -> IntervalOpen {
        IntervalOpen::from_set(self.space.clone(), self.space.complement_set(&self.set))
    }

    pub fn interior(&self) -> IntervalOpen {
        IntervalOpen::from_set(self.space.clone(), self.space.interior_set(&self.set))
    }

    pub fn is_subset_of_open(&self, v: &IntervalOpen) -> bool {
        check_same_space(&self.space, &v.space);
        self.set.intersect(&v.complement().set).is_empty()
    }
}

/// Interior of the union of a closed set and an open set, as an open.
pub(crate) fn interior_of_union(c: &ClosedSet, v: &IntervalOpen) -> IntervalOpen {
    check_same_space(&c.space, &v.space);
    let raw = c.set.union(&v.set);
    IntervalOpen::from_set(c.space.clone(), c.space.interior_set(&raw))
}

impl fmt::Display for IntervalOpen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.set.is_empty() {
            return write!(f, "∅");
        }
        let parts: Vec<String> = self
            .set
            .pieces
            .iter()
            .map(|p| {
                format!(
                    "{}{},{}{}",
                    if p.lo_in { '[' } else { '(' },
                    p.lo,
                    p.hi,
                    if p.hi_in { ']' } else { ')' }
                )
            })
            .collect();
        write!(f, "{}", parts.join(" ∪ "))
    }
}

impl fmt::Display for ClosedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.set.is_empty() {
            return write!(f, "∅");
        }
        let parts: Vec<String> = self
            .set
            .pieces
            .iter()
            .map(|p| {
                if p.lo == p.hi {
                    format!("{{{}}}", p.lo)
                } else {
                    format!("[{},{}]", p.lo, p.hi)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" ∪ "))
    }
}

fn parse_rat(s: &str) -> Result<Rat, IntervalError> {
    Rat::from_str(s.trim()).map_err(|e| IntervalError::Parse(format!("bad rational {s:?}: {e}")))
}

/// Parses e.g. `"[0,1/2) ∪ (1/2,1]"`, `"X"`, or `"∅"` (separators `∪`, `u`, `+`).
pub fn parse_open(space: &Arc<Space>, s: &str) -> Result<IntervalOpen, IntervalError> {
    let t = s.trim();
    if t.is_empty() || t == "∅" || t.eq_ignore_ascii_case("empty") || t == "{}" {
        return Ok(IntervalOpen::empty(space));
    }
    if t == "X" || t.eq_ignore_ascii_case("whole") {
        return Ok(IntervalOpen::whole(space));
    }
    let mut parts = Vec::new();
    for chunk in t.split(['∪', 'u', 'U', '+']) {
        let chunk = chunk.trim();
        if chunk.is_empty() {
            continue;
        }
        let lo_in = match chunk.chars().next() {
            Some('[') => true,
            Some('(') => false,
            _ => return Err(IntervalError::Parse(format!("part {chunk:?} must start with [ or ("))),
        };
        let hi_in = match chunk.chars().last() {
            Some(']') => true,
            Some(')') => false,
            _ => return Err(IntervalError::Parse(format!("part {chunk:?} must end with ] or )"))),
        };
        let inner = &chunk[1..chunk.len() - 1];
        let (a, b) = inner
            .split_once(',')
            .ok_or_else(|| IntervalError::Parse(format!("part {chunk:?} needs two endpoints")))?;
        parts.push((parse_rat(a)?, lo_in, parse_rat(b)?, hi_in));
    }
    IntervalOpen::from_parts(space, parts)
}

/// Parses e.g. `"[0,1/3] ∪ {1/2}"` or `"∅"` into a closed set.
pub fn parse_closed(space: &Arc<Space>, s: &str) -> Result<ClosedSet, IntervalError> {
    let t = s.trim();
    if t.is_empty() || t == "∅" || t.eq_ignore_ascii_case("empty") {
        return Ok(ClosedSet::empty(space));
    }
    if t == "X" || t.eq_ignore_ascii_case("whole") {
        return Ok(ClosedSet::whole(space));
    }
    let mut intervals = Vec::new();
    for chunk in t.split(['∪', 'u', 'U', '+']) {
        let chunk = chunk.trim();
        if chunk.is_empty() {
            continue;
        }
        if let Some(point) = chunk.strip_prefix('{').and_then(|c| c.strip_suffix('}')) {
            let p = parse_rat(point)?;
            intervals.push((p.clone(), p));
        } else if let Some(body) = chunk.strip_prefix('[').and_then(|c| c.strip_suffix(']')) {
            let (a, b) = body.split_once(',').ok_or_else(|| {
                IntervalError::Parse(format!("interval {chunk:?} needs two endpoints"))
            })?;
            intervals.push((parse_rat(a)?, parse_rat(b)?));
        } else {
            return Err(IntervalError::Parse(format!(
                "closed part {chunk:?} must look like [a,b] or {{p}}"
            )));
        }
    }
    ClosedSet::from_intervals(space, intervals)
}

// --- JSON ---

/// A rational in JSON: a plain integer or a string `"p/q"`.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RatScalar {
    Int(i64),
    Text(String),
}

fn rat_to_scalar(r: &Rat) -> RatScalar {
    if r.is_integer() {
        if let Some(n) = r.to_integer().to_i64() {
            return RatScalar::Int(n);
        }
    }
    RatScalar::Text(r.to_string())
}

fn scalar_to_rat(s: &RatScalar) -> Result<Rat, IntervalError> {
    match s {
        RatScalar::Int(n) => Ok(rat_int(*n)),
        RatScalar::Text(t) => parse_rat(t),
    }
}

pub(crate) fn ser_rat<S: Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
    rat_to_scalar(r).serialize(s)
}

pub(crate) fn ser_rat_pair<S: Serializer>(p: &(Rat, Rat), s: S) -> Result<S::Ok, S::Error> {
    [rat_to_scalar(&p.0), rat_to_scalar(&p.1)].serialize(s)
}

pub(crate) fn ser_exhaustion<S: Serializer>(
    v: &[(Rat, u32)],
    s: S,
) -> Result<S::Ok, S::Error> {
    let rows: Vec<(RatScalar, u32)> = v.iter().map(|(r, k)| (rat_to_scalar(r), *k)).collect();
    rows.serialize(s)
}

pub(crate) fn ser_rats<S: Serializer>(v: &[Rat], s: S) -> Result<S::Ok, S::Error> {
    let rows: Vec<RatScalar> = v.iter().map(rat_to_scalar).collect();
    rows.serialize(s)
}

#[derive(Serialize, Deserialize)]
struct SpaceJson {
    segments: Vec<[RatScalar; 2]>,
}

impl Serialize for Space {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SpaceJson {
            segments: self
                .segs
                .iter()
                .map(|(a, b)| [rat_to_scalar(a), rat_to_scalar(b)])
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Space {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = SpaceJson::deserialize(d)?;
        let mut segs = Vec::new();
        for [a, b] in &raw.segments {
            segs.push((
                scalar_to_rat(a).map_err(D::Error::custom)?,
                scalar_to_rat(b).map_err(D::Error::custom)?,
            ));
        }
        let space = Space::new(segs).map_err(D::Error::custom)?;
        Ok(Arc::try_unwrap(space).unwrap_or_else(|arc| (*arc).clone()))
    }
}

#[derive(Serialize, Deserialize)]
pub struct OpenPartJson {
    pub lo: RatScalarPub,
    pub lo_closed: bool,
    pub hi: RatScalarPub,
    pub hi_closed: bool,
}

/// Public alias for the untagged rational scalar used in JSON schemas.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
pub enum RatScalarPub {
    Int(i64),
    Text(String),
}

impl RatScalarPub {
    fn to_rat(&self) -> Result<Rat, IntervalError> {
        match self {
            RatScalarPub::Int(n) => Ok(rat_int(*n)),
            RatScalarPub::Text(t) => parse_rat(t),
        }
    }

    fn of(r: &Rat) -> Self {
        match rat_to_scalar(r) {
            RatScalar::Int(n) => RatScalarPub::Int(n),
            RatScalar::Text(t) => RatScalarPub::Text(t),
        }
    }
}

#[derive(Serialize, Deserialize)]
pub struct OpenJson {
    pub parts: Vec<OpenPartJson>,
}

impl IntervalOpen {
    pub fn to_json(&self) -> OpenJson {
        OpenJson {
            parts: self
                .set
                .pieces
                .iter()
                .map(|p| OpenPartJson {
                    lo: RatScalarPub::of(&p.lo),
                    lo_closed: p.lo_in,
                    hi: RatScalarPub::of(&p.hi),
                    hi_closed: p.hi_in,
                })
                .collect(),
        }
    }

    pub fn from_json(space: &Arc<Space>, json: &OpenJson) -> Result<Self, IntervalError> {
        let mut parts = Vec::new();
        for p in &json.parts {
            parts.push((p.lo.to_rat()?, p.lo_closed, p.hi.to_rat()?, p.hi_closed));
        }
        IntervalOpen::from_parts(space, parts)
    }
}

impl Serialize for IntervalOpen {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl Serialize for ClosedSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<[RatScalar; 2]> = self
            .set
            .pieces
            .iter()
            .map(|p| [rat_to_scalar(&p.lo), rat_to_scalar(&p.hi)])
            .collect();
        rows.serialize(s)
    }
}
