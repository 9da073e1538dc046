//! A three-layer chain quantale on which the filter F = L₀ needs unboundedly
//! many saturation steps.
//!
//! The carrier is L₀ ⊔ L₁ ⊔ L₂ ordered layer-major: on top the nonpositive
//! integers L₀ (unit 0, multiplication = addition), below them the ordinals
//! 0 < α ≤ ω² written aω² + bω + c, and at the bottom the ordinal zero 𝟎.
//! Multiplication lands in L_{min(i+j,2)}; an integer x acts on an ordinal by
//! aω² + bω + max(c + x, 0).  Two readings the carrier forces but does not
//! spell out: L₀ × L₀ is integer addition (L₀ is the unbounded version of the
//! 𝕃ₙ chains), and L₁ × L₁ collapses to 𝟎 per the layer rule.
//!
//! Everything here is closed-form; infinite suprema are taken symbolically by
//! the layer-wise successor rule, never by enumeration.

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum OrdError {
    #[error("ordinal code ({a},{b},{c}) out of range: need a ≤ 1 and a = 1 ⇒ b = c = 0")]
    InvalidOrdinal { a: u8, b: u64, c: u64 },
    #[error("L₀ holds nonpositive integers, got {0}")]
    PositiveInt(i64),
}

/// One element of the chain.  Variant order gives the carrier order:
/// 𝟎 < every ordinal < every integer, ordinals lexicographic in (a, b, c).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum OrdElem {
    /// L₂: the bottom, the ordinal zero.
    Zero,
    /// L₁: the ordinal aω² + bω + c with 0 < value ≤ ω².
    Ordinal { a: u8, b: u64, c: u64 },
    /// L₀: an integer ≤ 0; 0 is the unit and the top.
    Int(i64),
}

use OrdElem::{Int, Ordinal, Zero};

impl OrdElem {
    pub fn int(x: i64) -> Result<Self, OrdError> {
        if x > 0 {
            return Err(OrdError::PositiveInt(x));
        }
        Ok(Int(x))
    }

    /// aω² + bω + c; the code (0,0,0) is the ordinal zero and normalizes to 𝟎.
    pub fn ordinal(a: u8, b: u64, c: u64) -> Result<Self, OrdError> {
        if a > 1 || (a == 1 && (b != 0 || c != 0)) {
            return Err(OrdError::InvalidOrdinal { a, b, c });
        }
        Ok(norm_ord(a, b, c))
    }

    pub fn top() -> Self {
        Int(0)
    }

    pub fn omega() -> Self {
        Ordinal { a: 0, b: 1, c: 0 }
    }

    pub fn omega2() -> Self {
        Ordinal { a: 1, b: 0, c: 0 }
    }

    /// nω, with 0ω = 𝟎.
    pub fn n_omega(n: u64) -> Self {
        norm_ord(0, n, 0)
    }

    pub fn layer(&self) -> u8 {
        match self {
            Int(_) => 0,
            Ordinal { .. } => 1,
            Zero => 2,
        }
    }
}

fn norm_ord(a: u8, b: u64, c: u64) -> OrdElem {
    if a == 0 && b == 0 && c == 0 {
        Zero
    } else {
        Ordinal { a, b, c }
    }
}

pub fn join(x: OrdElem, y: OrdElem) -> OrdElem {
    x.max(y)
}

pub fn mult(x: OrdElem, y: OrdElem) -> OrdElem {
    match (x, y) {
        (Zero, _) | (_, Zero) => Zero,
        (Int(p), Int(q)) => Int(p + q),
        (Int(p), Ordinal { a, b, c }) | (Ordinal { a, b, c }, Int(p)) => {
            let shifted = (c as i128 + p as i128).max(0) as u64;
            norm_ord(a, b, shifted)
        }
        (Ordinal { .. }, Ordinal { .. }) => Zero,
    }
}

/// The cheapest way s ∈ F = L₀ can push x below b, if any way exists.
/// Multiplication by a deep enough integer sends (a,b,c) to (a,b,0) and fixes
/// it there, so a single comparison decides qualification.
pub fn min_multiplier(x: OrdElem, b: OrdElem) -> Option<OrdElem> {
    match x {
        Zero => Some(Int(0)),
        Int(p) => match b {
            // stay inside L₀: s + p ≤ b is solvable with s ≤ 0 whenever b ∈ L₀
            Int(q) => Some(Int((q - p).min(0))),
            _ => None,
        },
        Ordinal { a, b: bb, c } => {
            let floor = norm_ord(a, bb, 0);
            if floor <= b {
                Some(Int(-(c.min(i64::MAX as u64) as i64)))
            } else {
                None
            }
        }
    }
}

/// D(b) for F = L₀, in closed form: integers saturate to the top, aω² + bω + c
/// to bω + ω (the c-axis witnesses pile up), ω² and the top layer are fixed,
/// and 𝟎 climbs to ω.
pub fn ord_saturate1(b: OrdElem) -> OrdElem {
    match b {
        Int(_) => Int(0),
        Ordinal { a: 0, b: bb, .. } => Ordinal { a: 0, b: bb + 1, c: 0 },
        // constructors keep a ≤ 1, so the remaining ordinal is ω²
        Ordinal { .. } => OrdElem::omega2(),
        Zero => OrdElem::omega(),
    }
}

/// Certificate for one closed-form value: finitely many sampled members of the
/// witness family with their multipliers, plus the family's symbolic sup.
#[derive(Clone, Debug, Serialize)]
pub struct SaturationCertificate {
    pub value: OrdElem,
    pub sample_pairs: Vec<(OrdElem, OrdElem)>,
    pub family_sup: OrdElem,
}

impl SaturationCertificate {
    /// Every sampled pair lands below b and the symbolic sup is the value.
    pub fn verify(&self, b: OrdElem) -> bool {
        self.family_sup == self.value
            && self
                .sample_pairs
                .iter()
                .all(|&(x, s)| s.layer() == 0 && mult(s, x) <= b)
    }
}

pub fn saturate1_certificate(b: OrdElem, sample: u64) -> SaturationCertificate {
    let value = ord_saturate1(b);
    let (sample_pairs, family_sup) = match b {
        Int(_) => (vec![(Int(0), b)], Int(0)),
        Ordinal { a: 0, b: bb, .. } => (
            // the family (0, bb, k) with multiplier −k; sup over unbounded k
            // is the successor (0, bb+1, 0)
            (0..=sample)
                .map(|k| (norm_ord(0, bb, k), Int(-(k as i64))))
                .collect(),
            Ordinal { a: 0, b: bb + 1, c: 0 },
        ),
        Zero => (
            (0..=sample)
                .map(|k| (norm_ord(0, 0, k), Int(-(k as i64))))
                .collect(),
            OrdElem::omega(),
        ),
        Ordinal { .. } => (vec![(OrdElem::omega2(), Int(0))], OrdElem::omega2()),
    };
    SaturationCertificate {
        value,
        sample_pairs,
        family_sup,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum StepResult {
    StepCount(usize),
    ExceedsBound,
}

/// Least n ≤ bound with from ≤ Dⁿ(to).  Stops early once D is stationary.
pub fn ord_min_steps(from: OrdElem, to: OrdElem, bound: usize) -> StepResult {
    let mut cur = to;
    for k in 0..=bound {
        if from <= cur {
            return StepResult::StepCount(k);
        }
        let next = ord_saturate1(cur);
        if next == cur {
            return StepResult::ExceedsBound;
        }
        cur = next;
    }
    StepResult::ExceedsBound
}

#[derive(Clone, Debug, Serialize)]
pub struct NonlocRow {
    pub n: u64,
    pub steps: StepResult,
    pub witness_checked: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct NonlocalizabilityReport {
    pub rows: Vec<NonlocRow>,
    /// Step counts grow without bound, so no single n works for b = 𝟎.
    pub uniform_bound_refuted: bool,
}

/// Tabulates steps(nω → 𝟎) for n ≤ max_n.  Each row's positive direction is
/// re-derived from certificates along the chain 𝟎, ω, 2ω, …, nω.
pub fn nonlocalizability_report(max_n: u64) -> NonlocalizabilityReport {
    let mut rows = Vec::new();
    for n in 1..=max_n {
        let steps = ord_min_steps(OrdElem::n_omega(n), Zero, max_n as usize);
        let witness_checked = (0..n).all(|k| {
            let cert = saturate1_certificate(OrdElem::n_omega(k), 4);
            cert.verify(OrdElem::n_omega(k)) && cert.value == OrdElem::n_omega(k + 1)
        });
        rows.push(NonlocRow {
            n,
            steps,
            witness_checked,
        });
    }
    let uniform_bound_refuted = rows
        .windows(2)
        .all(|w| match (w[0].steps, w[1].steps) {
            (StepResult::StepCount(a), StepResult::StepCount(b)) => a < b,
            _ => false,
        })
        && rows.last().is_some_and(|r| r.witness_checked);
    NonlocalizabilityReport {
        rows,
        uniform_bound_refuted,
    }
}

/// All valid elements with a, b, c ≤ max_abc and integers down to min_int.
pub fn sample_grid(max_abc: u64, min_int: i64) -> Vec<OrdElem> {
    let mut out = vec![Zero, OrdElem::omega2()];
    for b in 0..=max_abc {
        for c in 0..=max_abc {
            if b != 0 || c != 0 {
                out.push(Ordinal { a: 0, b, c });
            }
        }
    }
    for x in min_int..=0 {
        out.push(Int(x));
    }
    out
}
