//! Two-step phenomena, solidity, normality/conormality deciders, and the
//! constructive Baire witness.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::Serialize;

use crate::filters::{collar, grid_opens, hbar, heyting, regularize, saturate1, IntervalFilter};
use crate::sets::{rat_int, ser_exhaustion, ser_rat, ser_rat_pair, ser_rats};
use crate::{ClosedSet, IntervalError, IntervalOpen, Rat, Space};

fn min_seg_len(space: &Arc<Space>) -> Rat {
    space
        .segments()
        .iter()
        .map(|(a, b)| b - a)
        .min()
        .expect("spaces have at least one segment")
}

fn point_set(space: &Arc<Space>, p: &Rat) -> ClosedSet {
    ClosedSet::from_intervals(space, vec![(p.clone(), p.clone())]).expect("point lies in the space")
}

/// An open is clopen iff every part carries both of its segment-boundary
/// flags, i.e. it is a union of whole segments.
pub fn is_clopen(u: &IntervalOpen) -> bool {
    u.parts().iter().all(|(_, li, _, hi)| *li && *hi)
}

/// Open `d`-neighborhood of a closed set, clipped to the space.
pub fn dilate(c: &ClosedSet, d: &Rat) -> IntervalOpen {
    let space = c.space().clone();
    let mut parts = Vec::new();
    for (lo, hi) in c.intervals() {
        let (a, b) = space
            .segments()
            .iter()
            .find(|(a, b)| *a <= lo && hi <= *b)
            .expect("closed interval lies in a segment")
            .clone();
        let e_lo = &lo - d;
        let e_hi = &hi + d;
        let (nlo, lo_in) = if e_lo < a { (a, true) } else { (e_lo, false) };
        let (nhi, hi_in) = if e_hi > b { (b, true) } else { (e_hi, false) };
        parts.push((nlo, lo_in, nhi, hi_in));
    }
    IntervalOpen::from_parts(&space, parts).expect("dilation is open")
}

/// Greedy finite subcover of a closed set by opens: repeatedly take the cover
/// element reaching furthest past the leftmost uncovered point.  Returns the
/// chosen indices, or `None` if the input is not a cover.
pub fn finite_subcover(target: &ClosedSet, cover: &[IntervalOpen]) -> Option<Vec<usize>> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut remaining = target.clone();
    while !remaining.is_empty() {
        let t = remaining.intervals()[0].0.clone();
        let mut best: Option<(usize, Rat, bool)> = None;
        for (i, o) in cover.iter().enumerate() {
            if chosen.contains(&i) {
                continue;
            }
            for (lo, lo_in, hi, hi_in) in o.parts() {
                let holds_t =
                    (lo < t || (lo == t && lo_in)) && (t < hi || (t == hi && hi_in));
                if holds_t {
                    let better = match &best {
                        None => true,
                        Some((_, bh, bin)) => hi > *bh || (hi == *bh && hi_in && !bin),
                    };
                    if better {
                        best = Some((i, hi, hi_in));
                    }
                    break;
                }
            }
        }
        let (i, _, _) = best?;
        chosen.push(i);
        remaining = remaining.intersect(&cover[i].complement());
    }
    Some(chosen)
}

/// The first `count` rationals of the space, enumerated by denominator.
pub fn rationals_of_space(space: &Arc<Space>, count: usize) -> Vec<Rat> {
    let mut out = Vec::new();
    let mut seen: BTreeSet<Rat> = BTreeSet::new();
    let mut den: i64 = 1;
    while out.len() < count && den <= 1 << 20 {
        for (a, b) in space.segments() {
            let lo = (a * rat_int(den)).ceil().to_integer();
            let hi = (b * rat_int(den)).floor().to_integer();
            let mut n = lo;
            while n <= hi {
                let r = Rat::new(n.clone(), BigInt::from(den));
                if seen.insert(r.clone()) {
                    out.push(r);
                    if out.len() == count {
                        return out;
                    }
                }
                n += 1;
            }
        }
        den += 1;
    }
    out
}

/// `D_{F_U + F_{⊥U}}(∅)`: everything off the boundary of `U`.
///
/// `x` qualifies iff `heyting(x, ∅) = ext(x)` is in the sum, and chasing the
/// membership rule shows the join of qualifiers is the complement of
/// `cl(U) ∖ U`.
pub fn sum_saturate_empty(u: &IntervalOpen) -> IntervalOpen {
    u.closure().intersect(&u.complement()).complement()
}

#[derive(Debug, Serialize)]
pub struct TwoStepReport {
    pub a: IntervalOpen,
    /// `D(∅)` under `F_a + F_{⊥a}`.
    pub d1: IntervalOpen,
    /// `D²(∅)`.
    pub d2: IntervalOpen,
    pub exact_steps: usize,
    /// Sample minimal members `(c, 1/2)` of the sum filter.
    pub sum_member_generators: Vec<IntervalOpen>,
    /// `F_a · F_{⊥a}` contains only the whole space (checked on a grid).
    pub product_is_trivial_filter: bool,
    /// `W ~_{F_a} ∅` iff `W ⊆` this open.
    pub empty_class_bound: IntervalOpen,
    /// `W ~_{F_{⊥a}} X` iff `W ⊇` this closed set.
    pub whole_class_bound: ClosedSet,
    /// Both class conditions at once are unsatisfiable.
    pub preimage_exists: bool,
    pub quotient_at_sum_trivial: bool,
}

/// The pinned 2-step instance: `a = [0, 1/2)` on `[0, 1]`.
///
/// `∅ ~ X` under `F_a + F_{⊥a}` in exactly two steps and not one, while the
/// compatible pair of classes in `Q_{F_a} × Q_{F_{⊥a}}` has no common
/// preimage.
pub fn two_step_counterexample() -> TwoStepReport {
    let space = Space::unit();
    let half = Rat::new(1.into(), 2.into());
    let a = IntervalOpen::from_parts(&space, vec![(rat_int(0), true, half.clone(), false)])
        .expect("valid open");
    let fa = IntervalFilter::Above(a.clone());
    let fperp = IntervalFilter::Comax(a.clone());
    let sum = IntervalFilter::SumOf(vec![fa.clone(), fperp.clone()]);
    let prod = IntervalFilter::ProdOf(vec![fa, fperp]);

    let d1 = sum_saturate_empty(&a);
    let d2 = if sum.contains(&d1).expect("membership rule applies") {
        IntervalOpen::whole(&space)
    } else {
        d1.clone()
    };
    let exact_steps = if d1.is_whole() {
        1
    } else if d2.is_whole() {
        2
    } else {
        usize::MAX
    };

    let mut product_is_trivial_filter = true;
    for v in grid_opens(&space, 4) {
        let member = prod.contains(&v).expect("membership rule applies");
        if member != v.is_whole() {
            product_is_trivial_filter = false;
        }
    }

    let mut sum_member_generators = Vec::new();
    for (num, den) in [(1i64, 4i64), (3, 8), (7, 16)] {
        let c = Rat::new(num.into(), den.into());
        let v = IntervalOpen::from_parts(&space, vec![(c, false, half.clone(), false)])
            .expect("valid open");
        if sum.contains(&v).expect("membership rule applies") {
            sum_member_generators.push(v);
        }
    }

    let empty_class_bound = hbar(&a);
    let whole_class_bound = a.complement();
    let preimage_exists = whole_class_bound.is_subset_of_open(&empty_class_bound);
    let quotient_at_sum_trivial = d2.is_whole();

    TwoStepReport {
        a,
        d1,
        d2,
        exact_steps,
        sum_member_generators,
        product_is_trivial_filter,
        empty_class_bound,
        whole_class_bound,
        preimage_exists,
        quotient_at_sum_trivial,
    }
}

#[derive(Debug, Serialize)]
pub struct SolidityReport {
    pub solid: bool,
    pub certificate: SolidityCertificate,
}

#[derive(Debug, Serialize)]
pub enum SolidityCertificate {
    /// The relevant compact set, a demonstration cover, and the finite
    /// subcover extracted from it.
    FiniteSubcover {
        target: ClosedSet,
        demo_cover: Vec<IntervalOpen>,
        demo_subcover: Vec<usize>,
    },
    /// A cover of `base` by collar stages whose join is `base` (evidence:
    /// per-part sample points with the stage containing them) while every
    /// finite subjoin misses `missing_after`.
    CollarRefutation {
        base: IntervalOpen,
        stages: Vec<IntervalOpen>,
        #[serde(serialize_with = "ser_exhaustion")]
        exhaustion: Vec<(Rat, u32)>,
        missing_after: IntervalOpen,
    },
    /// A dense join of shrinking balls around an enumeration of rationals;
    /// the closure of the whole prefix still misses `uncovered`, so no finite
    /// subjoin is dense.
    RationalBallRefutation {
        balls: Vec<IntervalOpen>,
        #[serde(serialize_with = "ser_rats")]
        rationals: Vec<Rat>,
        uncovered: IntervalOpen,
    },
}

pub fn is_solid_interval(f: &IntervalFilter) -> Result<SolidityReport, IntervalError> {
    match f {
        IntervalFilter::Above(u) => {
            if is_clopen(u) {
                let target = u.closure();
                let demo_cover: Vec<IntervalOpen> = u
                    .parts()
                    .into_iter()
                    .map(|p| IntervalOpen::from_parts(u.space(), vec![p]).expect("part is open"))
                    .collect();
                let demo_subcover = finite_subcover(&target, &demo_cover)
                    .expect("parts cover their own closure");
                Ok(SolidityReport {
                    solid: true,
                    certificate: SolidityCertificate::FiniteSubcover {
                        target,
                        demo_cover,
                        demo_subcover,
                    },
                })
            } else {
                let stages: Vec<IntervalOpen> = (0..=6).map(|k| collar(u, k)).collect();
                let mut exhaustion = Vec::new();
                for (lo, _, hi, _) in u.parts() {
                    let mid = (&lo + &hi) / rat_int(2);
                    for k in 0..=200u32 {
                        if collar(u, k).contains_point(&mid) {
                            exhaustion.push((mid, k));
                            break;
                        }
                    }
                }
                let missing_after = u.intersect(&stages[6].closure().complement());
                Ok(SolidityReport {
                    solid: false,
                    certificate: SolidityCertificate::CollarRefutation {
                        base: u.clone(),
                        stages,
                        exhaustion,
                        missing_after,
                    },
                })
            }
        }
        IntervalFilter::Comax(u) => {
            let target = u.complement();
            let d = min_seg_len(u.space()) / rat_int(8);
            let demo_cover: Vec<IntervalOpen> = target
                .intervals()
                .into_iter()
                .map(|(lo, hi)| {
                    dilate(
                        &ClosedSet::from_intervals(u.space(), vec![(lo, hi)])
                            .expect("interval of a closed set"),
                        &d,
                    )
                })
                .collect();
            let demo_subcover =
                finite_subcover(&target, &demo_cover).expect("dilations cover the complement");
            Ok(SolidityReport {
                solid: true,
                certificate: SolidityCertificate::FiniteSubcover {
                    target,
                    demo_cover,
                    demo_subcover,
                },
            })
        }
        IntervalFilter::Dense(sp) => {
            let rationals = rationals_of_space(sp, 12);
            let mut balls = Vec::new();
            let mut r = min_seg_len(sp) / rat_int(4);
            for q in &rationals {
                r = &r / rat_int(4);
                balls.push(dilate(&point_set(sp, q), &r));
            }
            let mut prefix_join = IntervalOpen::empty(sp);
            for b in &balls {
                prefix_join = prefix_join.union(b);
            }
            let uncovered = prefix_join.closure().complement();
            Ok(SolidityReport {
                solid: false,
                certificate: SolidityCertificate::RationalBallRefutation {
                    balls,
                    rationals,
                    uncovered,
                },
            })
        }
        _ => Err(IntervalError::UnsupportedFilter(
            "solidity is decided for the primitive families".into(),
        )),
    }
}

#[derive(Debug, Serialize)]
pub struct NormalPiece {
    pub part: IntervalOpen,
    pub multiplier: IntervalOpen,
    /// Cover index bounding `multiplier ∩ part`; `None` when the product is
    /// empty.
    pub bounded_by: Option<usize>,
}

#[derive(Debug, Serialize)]
pub struct NormalDecomposition {
    pub pieces: Vec<NormalPiece>,
    /// `m` is below the join of the filter base and the cover; together with
    /// the exhaustion this certifies `m ≤ Σ parts`.
    pub covered_exactly: bool,
    #[serde(serialize_with = "ser_exhaustion")]
    pub exhaustion: Vec<(Rat, u32)>,
    pub verified: bool,
}

/// The constructive decomposition demanded by normality: given `s` in the
/// filter, `m`, and a cover with `s ∩ m ⊆ ⋃ cover`, produce parts summing to
/// `m` so that each part's product with some filter member lands under a
/// single cover element (or is empty).
pub fn normal_decomposition(
    f: &IntervalFilter,
    s: &IntervalOpen,
    m: &IntervalOpen,
    cover: &[IntervalOpen],
) -> Result<NormalDecomposition, IntervalError> {
    if !f.contains(s)? {
        return Err(IntervalError::BadInstance(
            "multiplier s is not a member of the filter".into(),
        ));
    }
    let mut cover_join = IntervalOpen::empty(m.space());
    for c in cover {
        cover_join = cover_join.union(c);
    }
    if !s.intersect(m).is_subset(&cover_join) {
        return Err(IntervalError::BadInstance(
            "s ∩ m is not below the cover".into(),
        ));
    }
    let u = match f {
        IntervalFilter::Comax(u) => u.clone(),
        IntervalFilter::Above(u) if is_clopen(u) => u.clone(),
        IntervalFilter::Above(_) => {
            return Err(IntervalError::BadInstance(
                "Above(U) with non-clopen U is not normal; see is_normal_interval".into(),
            ))
        }
        _ => {
            return Err(IntervalError::UnsupportedFilter(
                "normal decompositions exist for Comax(U) and clopen Above(U)".into(),
            ))
        }
    };
    let comax = matches!(f, IntervalFilter::Comax(_));

    let mut pieces = Vec::new();
    let mut verified = true;
    if comax {
        for k in 0..=6u32 {
            let ck = collar(&u, k);
            let part = m.intersect(&ck);
            if part.is_empty() {
                continue;
            }
            let multiplier = ck.closure().complement();
            verified &= f.contains(&multiplier)? && multiplier.intersect(&part).is_empty();
            pieces.push(NormalPiece { part, multiplier, bounded_by: None });
        }
    } else {
        let part = m.intersect(&u.complement().interior());
        if !part.is_empty() {
            verified &= u.intersect(&part).is_empty();
            pieces.push(NormalPiece { part, multiplier: u.clone(), bounded_by: None });
        }
    }
    for (i, c) in cover.iter().enumerate() {
        let part = m.intersect(c);
        if part.is_empty() {
            continue;
        }
        verified &= s.intersect(&part).is_subset(c);
        pieces.push(NormalPiece { part, multiplier: s.clone(), bounded_by: Some(i) });
    }

    // Coverage: m ⊆ base ∪ ⋃cover exactly; the part of m inside a comax base
    // is reached only in the limit of the collar stages, so certify it by
    // sample points.
    let base = if comax {
        u.clone()
    } else {
        u.complement().interior()
    };
    let covered_exactly = m.is_subset(&base.union(&cover_join));
    let mut exhaustion = Vec::new();
    if comax {
        for (lo, _, hi, _) in m.intersect(&u).parts() {
            let mid = (&lo + &hi) / rat_int(2);
            let mut found = false;
            for k in 0..=200u32 {
                if collar(&u, k).contains_point(&mid) {
                    exhaustion.push((mid.clone(), k));
                    found = true;
                    break;
                }
            }
            verified &= found;
        }
    }
    verified &= covered_exactly;
    Ok(NormalDecomposition { pieces, covered_exactly, exhaustion, verified })
}

#[derive(Debug, Serialize)]
pub struct NormalityRefutation {
    /// `cl(U) ∖ U`, nonempty exactly when `U` is not clopen.
    pub boundary: ClosedSet,
    /// The comaximal partner `F_{⊥U}` is normal, …
    pub partner_normal: bool,
    /// … sums of normal filters are normal and normal filters are 1-step,
    /// yet the sum `F_U + F_{⊥U}` needs two steps on ∅:
    pub sum_d1: IntervalOpen,
    pub sum_d2: IntervalOpen,
    pub sum_steps: usize,
}

#[derive(Debug, Serialize)]
pub enum NormalityVerdict {
    Normal { demo: NormalDecomposition },
    NotNormal { refutation: NormalityRefutation },
}

pub fn is_normal_interval(f: &IntervalFilter) -> Result<NormalityVerdict, IntervalError> {
    match f {
        IntervalFilter::Comax(u) => {
            let s = dilate(&u.complement(), &(min_seg_len(u.space()) / rat_int(8)));
            let m = IntervalOpen::whole(u.space());
            let demo = normal_decomposition(f, &s, &m, std::slice::from_ref(&s))?;
            Ok(NormalityVerdict::Normal { demo })
        }
        IntervalFilter::Above(u) if is_clopen(u) => {
            let m = IntervalOpen::whole(u.space());
            let demo = normal_decomposition(f, u, &m, std::slice::from_ref(u))?;
            Ok(NormalityVerdict::Normal { demo })
        }
        IntervalFilter::Above(u) => {
            let boundary = u.closure().intersect(&u.complement());
            let partner_normal = matches!(
                is_normal_interval(&IntervalFilter::Comax(u.clone()))?,
                NormalityVerdict::Normal { .. }
            );
            let sum = IntervalFilter::SumOf(vec![
                IntervalFilter::Above(u.clone()),
                IntervalFilter::Comax(u.clone()),
            ]);
            let sum_d1 = sum_saturate_empty(u);
            let sum_d2 = if sum.contains(&sum_d1)? {
                IntervalOpen::whole(u.space())
            } else {
                sum_d1.clone()
            };
            let sum_steps = if sum_d1.is_whole() { 1 } else { 2 };
            Ok(NormalityVerdict::NotNormal {
                refutation: NormalityRefutation {
                    boundary,
                    partner_normal,
                    sum_d1,
                    sum_d2,
                    sum_steps,
                },
            })
        }
        IntervalFilter::Dense(_) => Err(IntervalError::UnsupportedFilter(
            "no normality rule for the dense filter".into(),
        )),
        _ => Err(IntervalError::UnsupportedFilter(
            "normality is decided for the primitive families".into(),
        )),
    }
}

#[derive(Debug, Serialize)]
pub struct ConormalWitness {
    pub m: IntervalOpen,
    pub n: IntervalOpen,
    pub s: IntervalOpen,
    pub s_in_filter: bool,
    pub product_below: bool,
}

/// For a pair `m ⪯¹ n`, the family's witness `s` with `s·m ≤ n` (flags record
/// whether it actually lands in the filter — for a non-clopen comax base it
/// can fail).  Returns `None` when the pair is not one-step related.
pub fn conormal_witness(
    f: &IntervalFilter,
    m: &IntervalOpen,
    n: &IntervalOpen,
) -> Result<Option<ConormalWitness>, IntervalError> {
    if !m.is_subset(&saturate1(f, n)?) {
        return Ok(None);
    }
    let s = match f {
        IntervalFilter::Dense(_) => {
            let w = m.intersect(n);
            w.union(&hbar(&w))
        }
        IntervalFilter::Above(_) => heyting(m, n),
        IntervalFilter::Comax(u) => {
            if is_clopen(u) {
                n.union(&u.complement().interior())
            } else {
                heyting(m, n)
            }
        }
        _ => {
            return Err(IntervalError::UnsupportedFilter(
                "conormal witnesses exist for the primitive families".into(),
            ))
        }
    };
    let s_in_filter = f.contains(&s)?;
    let product_below = s.intersect(m).is_subset(n);
    Ok(Some(ConormalWitness {
        m: m.clone(),
        n: n.clone(),
        s,
        s_in_filter,
        product_below,
    }))
}

#[derive(Debug, Serialize)]
pub enum ConormalityVerdict {
    Conormal {
        demo: ConormalWitness,
    },
    /// A one-step pair whose largest possible multiplier `heyting(m, n)`
    /// misses the filter, so no witness exists.
    NotConormal {
        m: IntervalOpen,
        n: IntervalOpen,
        largest_candidate: IntervalOpen,
        candidate_in_filter: bool,
    },
}

pub fn is_conormal_interval(f: &IntervalFilter) -> Result<ConormalityVerdict, IntervalError> {
    match f {
        IntervalFilter::Dense(sp) => {
            let (a, b) = &sp.segments()[0];
            let mid = (a + b) / rat_int(2);
            let n = point_set(sp, &mid).complement();
            let m = IntervalOpen::whole(sp);
            let demo = conormal_witness(f, &m, &n)?.expect("X ⪯¹ a dense open");
            debug_assert!(demo.s_in_filter && demo.product_below);
            Ok(ConormalityVerdict::Conormal { demo })
        }
        IntervalFilter::Above(u) => {
            let m = IntervalOpen::whole(u.space());
            let demo = conormal_witness(f, &m, u)?.expect("heyting(u, u) is the whole space");
            debug_assert!(demo.s_in_filter && demo.product_below);
            Ok(ConormalityVerdict::Conormal { demo })
        }
        IntervalFilter::Comax(u) => {
            if is_clopen(u) {
                let m = IntervalOpen::whole(u.space());
                let n = u.complement().interior();
                let demo = conormal_witness(f, &m, &n)?.expect("X ⪯¹ int(U^c) for clopen U");
                debug_assert!(demo.s_in_filter && demo.product_below);
                Ok(ConormalityVerdict::Conormal { demo })
            } else {
                let m = u.clone();
                let n = IntervalOpen::empty(u.space());
                debug_assert!(m.is_subset(&saturate1(f, &n)?));
                let largest_candidate = heyting(&m, &n);
                let candidate_in_filter = f.contains(&largest_candidate)?;
                debug_assert!(!candidate_in_filter);
                Ok(ConormalityVerdict::NotConormal {
                    m,
                    n,
                    largest_candidate,
                    candidate_in_filter,
                })
            }
        }
        _ => Err(IntervalError::UnsupportedFilter(
            "conormality is decided for the primitive families".into(),
        )),
    }
}

#[derive(Debug, Serialize)]
pub struct BinormalityReport {
    pub normal: NormalityVerdict,
    pub conormal: ConormalityVerdict,
    pub binormal: bool,
}

pub fn is_binormal_interval(f: &IntervalFilter) -> Result<BinormalityReport, IntervalError> {
    let normal = is_normal_interval(f)?;
    let conormal = is_conormal_interval(f)?;
    let binormal = matches!(normal, NormalityVerdict::Normal { .. })
        && matches!(conormal, ConormalityVerdict::Conormal { .. });
    Ok(BinormalityReport { normal, conormal, binormal })
}

/// `F_{int(U^c)}`, the principal filter at the meet of `F_{⊥U}`.  For clopen
/// `U` this coincides with `F_{⊥U}` itself.
pub fn gnf_comax(u: &IntervalOpen) -> IntervalFilter {
    IntervalFilter::Above(u.complement().interior())
}

#[derive(Debug, Serialize)]
pub struct BaireOutcome {
    #[serde(serialize_with = "ser_rat")]
    pub point: Rat,
    #[serde(serialize_with = "ser_rat_pair")]
    pub final_interval: (Rat, Rat),
    pub depth: usize,
    pub sets_avoided: usize,
    pub verified: bool,
}

/// Constructive Baire witness: a rational point avoiding every given
/// nowhere-dense closed set.
///
/// Deterministic shrink rule: starting from the interior of the first
/// segment, for each set take the leftmost component of the current open
/// interval minus the set and pass to its closed middle third; after `depth`
/// passes the answer is the midpoint of the final interval.
pub fn baire_witness(
    space: &Arc<Space>,
    sets: &[ClosedSet],
    depth: usize,
) -> Result<BaireOutcome, IntervalError> {
    for (index, c) in sets.iter().enumerate() {
        if **c.space() != **space {
            return Err(IntervalError::SpaceMismatch);
        }
        if !regularize(&c.complement()).is_whole() {
            return Err(IntervalError::NotNowhereDense { index });
        }
    }
    let depth = depth.max(1);
    let (a, b) = space.segments()[0].clone();
    let mut lo = a;
    let mut hi = b;
    for _ in 0..depth {
        for c in sets {
            let cur = IntervalOpen::from_parts(space, vec![(lo.clone(), false, hi.clone(), false)])
                .expect("open interval");
            let diff = cur.intersect(&c.complement());
            let (p, _, q, _) = diff
                .parts()
                .into_iter()
                .next()
                .expect("a nowhere-dense set cannot cover an interval");
            let third = (&q - &p) / rat_int(3);
            lo = &p + &third;
            hi = &q - &third;
        }
    }
    let point = (&lo + &hi) / rat_int(2);
    let verified = sets.iter().all(|c| !c.contains_point(&point));
    Ok(BaireOutcome {
        point,
        final_interval: (lo, hi),
        depth,
        sets_avoided: sets.len(),
        verified,
    })
}
