//! Finite commutative quantales: a carrier plus a multiplication table whose
//! unit is the carrier's top. Includes the standard families (chains 𝔹ₙ/𝕃ₙ,
//! open-set quantales of finite topologies, ideal quantales of Z/n), modules,
//! homomorphisms, and products.

use std::sync::Arc;

use num_integer::Integer;
use order_core::{validate_carrier, Carrier, Meet, OrderError, UpSet, ValidationReport};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub mod iso;

pub use iso::{are_isomorphic, canonical_key, find_isomorphism};

#[derive(Debug, Error)]
pub enum QuantaleError {
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error("multiplication shape: {0}")]
    Shape(String),
    #[error("not a topology: {0}")]
    NotATopology(String),
    #[error("modulus must be at least 2, got {0}")]
    BadModulus(u64),
    #[error("shape mismatch: {0}")]
    Mismatch(String),
}

/// Carrier + multiplication. `try_new` shape-checks; `validate_quantale`
/// checks the laws.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteQuantale {
    carrier: Carrier,
    mult: Vec<Vec<usize>>,
}

impl FiniteQuantale {
    pub fn try_new(carrier: Carrier, mult: Vec<Vec<usize>>) -> Result<Self, QuantaleError> {
        let n = carrier.size();
        if mult.len() != n {
            return Err(QuantaleError::Shape(format!(
                "mult table has {} rows for {} elements",
                mult.len(),
                n
            )));
        }
        for (i, row) in mult.iter().enumerate() {
            if row.len() != n {
                return Err(QuantaleError::Shape(format!(
                    "mult row {} has length {}, expected {}",
                    i,
                    row.len(),
                    n
                )));
            }
            for &v in row {
                if v >= n {
                    return Err(QuantaleError::Shape(format!(
                        "mult entry {} out of range for size {}",
                        v, n
                    )));
                }
            }
        }
        Ok(FiniteQuantale { carrier, mult })
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn size(&self) -> usize {
        self.carrier.size()
    }

    /// The multiplicative unit is the top element.
    pub fn unit(&self) -> usize {
        self.carrier.top()
    }

    pub fn mult(&self, a: usize, b: usize) -> usize {
        self.mult[a][b]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.carrier.join(a, b)
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.carrier.leq(a, b)
    }

    pub fn name(&self, i: usize) -> &str {
        self.carrier.name(i)
    }

    pub fn join_set(&self, s: &[usize]) -> Result<usize, OrderError> {
        self.carrier.join_set(s)
    }

    /// Product of a nonempty list, folded left.
    pub fn mult_set(&self, s: &[usize]) -> Option<usize> {
        let (&first, rest) = s.split_first()?;
        Some(rest.iter().fold(first, |acc, &x| self.mult[acc][x]))
    }
}

/// Input schema. Everything deserializes to an explicit table; the non-table
/// kinds are constructors.
#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
enum QuantaleInput {
    Table {
        names: Vec<String>,
        join: Vec<Vec<usize>>,
        mult: Vec<Vec<usize>>,
        top: usize,
    },
    Chain {
        family: ChainFamily,
        n: usize,
    },
    Topology {
        points: usize,
        opens: Vec<Vec<usize>>,
    },
    ZnIdeals {
        n: u64,
    },
    Product {
        factors: Vec<QuantaleInput>,
    },
}

impl QuantaleInput {
    fn build(self) -> Result<FiniteQuantale, QuantaleError> {
        match self {
            QuantaleInput::Table {
                names,
                join,
                mult,
                top,
            } => {
                let carrier = Carrier::try_new(names, join, top)?;
                FiniteQuantale::try_new(carrier, mult)
            }
            QuantaleInput::Chain { family, n } => Ok(build_chain_family(family, n)),
            QuantaleInput::Topology { points, opens } => {
                let opens: Vec<Vec<usize>> = opens;
                build_open_set_quantale(points, &opens)
            }
            QuantaleInput::ZnIdeals { n } => build_ideal_quantale(n),
            QuantaleInput::Product { factors } => {
                let mut built = factors
                    .into_iter()
                    .map(QuantaleInput::build)
                    .collect::<Result<Vec<_>, _>>()?;
                let mut acc = built
                    .pop()
                    .ok_or_else(|| QuantaleError::Shape("product of no factors".into()))?;
                while let Some(next) = built.pop() {
                    acc = product_quantale(&next, &acc);
                }
                Ok(acc)
            }
        }
    }
}

impl Serialize for FiniteQuantale {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let n = self.size();
        QuantaleInput::Table {
            names: self.carrier.names().to_vec(),
            join: (0..n)
                .map(|a| (0..n).map(|b| self.join(a, b)).collect())
                .collect(),
            mult: self.mult.clone(),
            top: self.carrier.top(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FiniteQuantale {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        QuantaleInput::deserialize(d)?
            .build()
            .map_err(serde::de::Error::custom)
    }
}

/// Exhaustive law scan: carrier laws plus multiplication laws. Binary
/// distributivity suffices — on a finite carrier every join is a fold of
/// binary joins, so the general law follows by induction.
pub fn validate_quantale(q: &FiniteQuantale) -> ValidationReport {
    let mut report = validate_carrier(&q.carrier);
    let n = q.size();
    for a in 0..n {
        if q.mult(q.unit(), a) != a {
            report.push(
                "unit",
                vec![q.unit(), a],
                format!("1 · {} = {}", q.name(a), q.name(q.mult(q.unit(), a))),
            );
        }
    }
    for a in 0..n {
        for b in (a + 1)..n {
            if q.mult(a, b) != q.mult(b, a) {
                report.push(
                    "mult-commutativity",
                    vec![a, b],
                    format!(
                        "{}·{} = {} but {}·{} = {}",
                        q.name(a),
                        q.name(b),
                        q.name(q.mult(a, b)),
                        q.name(b),
                        q.name(a),
                        q.name(q.mult(b, a))
                    ),
                );
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let lhs = q.mult(q.mult(a, b), c);
                let rhs = q.mult(a, q.mult(b, c));
                if lhs != rhs {
                    report.push(
                        "mult-associativity",
                        vec![a, b, c],
                        format!(
                            "({}·{})·{} = {} ≠ {} = {}·({}·{})",
                            q.name(a),
                            q.name(b),
                            q.name(c),
                            q.name(lhs),
                            q.name(rhs),
                            q.name(a),
                            q.name(b),
                            q.name(c)
                        ),
                    );
                }
                let dl = q.mult(a, q.join(b, c));
                let dr = q.join(q.mult(a, b), q.mult(a, c));
                if dl != dr {
                    report.push(
                        "distributivity",
                        vec![a, b, c],
                        format!(
                            "{}·({} + {}) = {} ≠ {} = {}·{} + {}·{}",
                            q.name(a),
                            q.name(b),
                            q.name(c),
                            q.name(dl),
                            q.name(dr),
                            q.name(a),
                            q.name(b),
                            q.name(a),
                            q.name(c)
                        ),
                    );
                }
            }
        }
    }
    report
}

/// q² = q everywhere. For a valid idempotent quantale, multiplication *is*
/// the meet; that theorem is asserted here so a violation fails loudly.
pub fn is_idempotent(q: &FiniteQuantale) -> bool {
    let n = q.size();
    if (0..n).any(|a| q.mult(a, a) != a) {
        return false;
    }
    for a in 0..n {
        for b in 0..n {
            assert_eq!(
                Meet::Element(q.mult(a, b)),
                q.carrier.meet(a, b),
                "idempotent quantale must multiply by meets: {}·{}",
                q.name(a),
                q.name(b)
            );
        }
    }
    true
}

/// First a with a² ≠ a, if any.
pub fn non_idempotent_witness(q: &FiniteQuantale) -> Option<usize> {
    (0..q.size()).find(|&a| q.mult(a, a) != a)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ChainFamily {
    B,
    L,
}

/// 𝔹ₙ = {−n,…,0} with a·b = min(a,b); 𝕃ₙ = same chain with
/// a·b = max(−n, a+b). Join is max, top/unit is 0.
pub fn build_chain_family(kind: ChainFamily, n: usize) -> FiniteQuantale {
    let vals: Vec<i64> = (0..=n).map(|i| i as i64 - n as i64).collect();
    let names = vals.iter().map(|v| v.to_string()).collect();
    let carrier = Carrier::chain(names).unwrap();
    let idx = |v: i64| (v + n as i64) as usize;
    let mult = vals
        .iter()
        .map(|&a| {
            vals.iter()
                .map(|&b| match kind {
                    ChainFamily::B => idx(a.min(b)),
                    ChainFamily::L => idx((a + b).max(-(n as i64))),
                })
                .collect()
        })
        .collect();
    FiniteQuantale::try_new(carrier, mult).unwrap()
}

/// O(X) for a finite topology: join = union, mult = intersection.
/// Opens are point-index sets; element names render them as "{0,1}".
pub fn build_open_set_quantale(
    points: usize,
    opens: &[Vec<usize>],
) -> Result<FiniteQuantale, QuantaleError> {
    let full: u64 = if points == 64 {
        u64::MAX
    } else {
        (1u64 << points) - 1
    };
    if points > 60 {
        return Err(QuantaleError::NotATopology("too many points".into()));
    }
    let mut masks: Vec<u64> = Vec::new();
    for o in opens {
        let mut m = 0u64;
        for &p in o {
            if p >= points {
                return Err(QuantaleError::NotATopology(format!(
                    "point {} out of range",
                    p
                )));
            }
            m |= 1 << p;
        }
        if masks.contains(&m) {
            return Err(QuantaleError::NotATopology(format!(
                "duplicate open {:?}",
                o
            )));
        }
        masks.push(m);
    }
    if !masks.contains(&0) || !masks.contains(&full) {
        return Err(QuantaleError::NotATopology(
            "must contain the empty set and the whole space".into(),
        ));
    }
    for &a in &masks {
        for &b in &masks {
            if !masks.contains(&(a | b)) {
                return Err(QuantaleError::NotATopology(format!(
                    "union of {:#b} and {:#b} missing",
                    a, b
                )));
            }
            if !masks.contains(&(a & b)) {
                return Err(QuantaleError::NotATopology(format!(
                    "intersection of {:#b} and {:#b} missing",
                    a, b
                )));
            }
        }
    }
    masks.sort_unstable();
    let names = masks
        .iter()
        .map(|&m| {
            let pts: Vec<String> = (0..points)
                .filter(|&p| m >> p & 1 == 1)
                .map(|p| p.to_string())
                .collect();
            format!("{{{}}}", pts.join(","))
        })
        .collect();
    let pos = |m: u64| masks.iter().position(|&x| x == m).unwrap();
    let join = masks
        .iter()
        .map(|&a| masks.iter().map(|&b| pos(a | b)).collect())
        .collect();
    let mult = masks
        .iter()
        .map(|&a| masks.iter().map(|&b| pos(a & b)).collect())
        .collect();
    let carrier = Carrier::try_new(names, join, pos(full))?;
    FiniteQuantale::try_new(carrier, mult)
}

/// Id(Z/n) in the divisor representation: element (d) for each divisor d of
/// n, (a) ≤ (b) ⇔ b | a, join = gcd, mult = gcd(d₁d₂, n). Unit is (1).
pub fn build_ideal_quantale(n: u64) -> Result<FiniteQuantale, QuantaleError> {
    if n < 2 {
        return Err(QuantaleError::BadModulus(n));
    }
    let divs: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
    let pos = |d: u64| divs.iter().position(|&x| x == d).unwrap();
    let names = divs.iter().map(|d| format!("({d})")).collect();
    let join = divs
        .iter()
        .map(|&a| divs.iter().map(|&b| pos(a.gcd(&b))).collect())
        .collect();
    let mult = divs
        .iter()
        .map(|&a| divs.iter().map(|&b| pos((a * b).gcd(&n))).collect())
        .collect();
    let carrier = Carrier::try_new(names, join, pos(1))?;
    FiniteQuantale::try_new(carrier, mult)
}

/// Divisor value of each element of `build_ideal_quantale(n)`, in handle order.
pub fn ideal_divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// All p ≠ 1 with ab ≤ p ⇒ a ≤ p or b ≤ p.
pub fn prime_elements(q: &FiniteQuantale) -> Vec<usize> {
    let n = q.size();
    (0..n)
        .filter(|&p| {
            p != q.unit()
                && (0..n).all(|a| {
                    (0..n).all(|b| {
                        !q.leq(q.mult(a, b), p) || q.leq(a, p) || q.leq(b, p)
                    })
                })
        })
        .collect()
}

/// Componentwise structure on pairs; names are "(x,y)".
pub fn product_quantale(q1: &FiniteQuantale, q2: &FiniteQuantale) -> FiniteQuantale {
    let (n1, n2) = (q1.size(), q2.size());
    let handle = |a: usize, b: usize| a * n2 + b;
    let mut names = Vec::with_capacity(n1 * n2);
    let mut join = vec![vec![0; n1 * n2]; n1 * n2];
    let mut mult = vec![vec![0; n1 * n2]; n1 * n2];
    for a1 in 0..n1 {
        for a2 in 0..n2 {
            names.push(format!("({},{})", q1.name(a1), q2.name(a2)));
            for b1 in 0..n1 {
                for b2 in 0..n2 {
                    join[handle(a1, a2)][handle(b1, b2)] =
                        handle(q1.join(a1, b1), q2.join(a2, b2));
                    mult[handle(a1, a2)][handle(b1, b2)] =
                        handle(q1.mult(a1, b1), q2.mult(a2, b2));
                }
            }
        }
    }
    let carrier = Carrier::try_new(names, join, handle(q1.unit(), q2.unit())).unwrap();
    FiniteQuantale::try_new(carrier, mult).unwrap()
}

/// A module: quantale action on a separate carrier. `action[s][m]` is s·m.
#[derive(Clone, Debug)]
pub struct FiniteQModule {
    q: Arc<FiniteQuantale>,
    carrier: Carrier,
    action: Vec<Vec<usize>>,
}

impl FiniteQModule {
    pub fn try_new(
        q: Arc<FiniteQuantale>,
        carrier: Carrier,
        action: Vec<Vec<usize>>,
    ) -> Result<Self, QuantaleError> {
        if action.len() != q.size() {
            return Err(QuantaleError::Shape(format!(
                "action has {} rows for quantale of size {}",
                action.len(),
                q.size()
            )));
        }
        for (i, row) in action.iter().enumerate() {
            if row.len() != carrier.size() {
                return Err(QuantaleError::Shape(format!(
                    "action row {} has length {}, expected {}",
                    i,
                    row.len(),
                    carrier.size()
                )));
            }
            for &v in row {
                if v >= carrier.size() {
                    return Err(QuantaleError::Shape(format!(
                        "action value {} out of range for module of size {}",
                        v,
                        carrier.size()
                    )));
                }
            }
        }
        Ok(FiniteQModule { q, carrier, action })
    }

    pub fn quantale(&self) -> &Arc<FiniteQuantale> {
        &self.q
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn size(&self) -> usize {
        self.carrier.size()
    }

    pub fn act(&self, s: usize, m: usize) -> usize {
        self.action[s][m]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.carrier.join(a, b)
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.carrier.leq(a, b)
    }

    pub fn name(&self, i: usize) -> &str {
        self.carrier.name(i)
    }
}

/// Q acting on itself by multiplication.
pub fn self_module(q: &Arc<FiniteQuantale>) -> FiniteQModule {
    FiniteQModule {
        q: Arc::clone(q),
        carrier: q.carrier.clone(),
        action: q.mult.clone(),
    }
}

/// Module laws: the action is associative over mult, unital, and distributes
/// over binary joins in each argument (finite carrier ⇒ all nonempty joins).
pub fn validate_module(m: &FiniteQModule) -> ValidationReport {
    let mut report = validate_carrier(&m.carrier);
    let q = m.quantale();
    for x in 0..m.size() {
        if m.act(q.unit(), x) != x {
            report.push(
                "action-unit",
                vec![x],
                format!("1·{} = {}", m.name(x), m.name(m.act(q.unit(), x))),
            );
        }
    }
    for s in 0..q.size() {
        for t in 0..q.size() {
            for x in 0..m.size() {
                let lhs = m.act(q.mult(s, t), x);
                let rhs = m.act(s, m.act(t, x));
                if lhs != rhs {
                    report.push(
                        "action-associativity",
                        vec![s, t, x],
                        format!(
                            "({}·{})·{} = {} ≠ {}",
                            q.name(s),
                            q.name(t),
                            m.name(x),
                            m.name(lhs),
                            m.name(rhs)
                        ),
                    );
                }
                let dl = m.act(q.join(s, t), x);
                let dr = m.join(m.act(s, x), m.act(t, x));
                if dl != dr {
                    report.push(
                        "action-distributes-over-q-joins",
                        vec![s, t, x],
                        format!(
                            "({} + {})·{} = {} ≠ {}",
                            q.name(s),
                            q.name(t),
                            m.name(x),
                            m.name(dl),
                            m.name(dr)
                        ),
                    );
                }
            }
        }
    }
    for s in 0..q.size() {
        for x in 0..m.size() {
            for y in 0..m.size() {
                let dl = m.act(s, m.join(x, y));
                let dr = m.join(m.act(s, x), m.act(s, y));
                if dl != dr {
                    report.push(
                        "action-distributes-over-m-joins",
                        vec![s, x, y],
                        format!(
                            "{}·({} + {}) = {} ≠ {}",
                            q.name(s),
                            m.name(x),
                            m.name(y),
                            m.name(dl),
                            m.name(dr)
                        ),
                    );
                }
            }
        }
    }
    report
}

/// Quantale homomorphism h: source → target.
#[derive(Clone, Debug)]
pub struct QuantaleHom {
    pub source: Arc<FiniteQuantale>,
    pub target: Arc<FiniteQuantale>,
    pub map: Vec<usize>,
}

impl QuantaleHom {
    pub fn try_new(
        source: Arc<FiniteQuantale>,
        target: Arc<FiniteQuantale>,
        map: Vec<usize>,
    ) -> Result<Self, QuantaleError> {
        if map.len() != source.size() {
            return Err(QuantaleError::Shape(format!(
                "hom map has {} entries for source of size {}",
                map.len(),
                source.size()
            )));
        }
        if let Some(&v) = map.iter().find(|&&v| v >= target.size()) {
            return Err(QuantaleError::Shape(format!(
                "hom value {} out of range for target of size {}",
                v,
                target.size()
            )));
        }
        Ok(QuantaleHom {
            source,
            target,
            map,
        })
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn identity(q: &Arc<FiniteQuantale>) -> Self {
        QuantaleHom {
            source: Arc::clone(q),
            target: Arc::clone(q),
            map: (0..q.size()).collect(),
        }
    }
}

pub fn validate_hom(h: &QuantaleHom) -> ValidationReport {
    let mut report = ValidationReport::default();
    let (s, t) = (&h.source, &h.target);
    if h.apply(s.unit()) != t.unit() {
        report.push(
            "hom-top",
            vec![s.unit()],
            format!("h(1) = {}", t.name(h.apply(s.unit()))),
        );
    }
    for a in 0..s.size() {
        for b in 0..s.size() {
            if h.apply(s.join(a, b)) != t.join(h.apply(a), h.apply(b)) {
                report.push(
                    "hom-join",
                    vec![a, b],
                    format!("h({} + {}) ≠ h({}) + h({})", s.name(a), s.name(b), s.name(a), s.name(b)),
                );
            }
            if h.apply(s.mult(a, b)) != t.mult(h.apply(a), h.apply(b)) {
                report.push(
                    "hom-mult",
                    vec![a, b],
                    format!("h({}·{}) ≠ h({})·h({})", s.name(a), s.name(b), s.name(a), s.name(b)),
                );
            }
        }
    }
    report
}

/// Restrict a target-module along h: s acts as h(s).
pub fn pullback_module(
    h: &QuantaleHom,
    m: &FiniteQModule,
) -> Result<FiniteQModule, QuantaleError> {
    if **m.quantale() != *h.target {
        return Err(QuantaleError::Mismatch(
            "module is not over the hom's target quantale".into(),
        ));
    }
    let action = (0..h.source.size())
        .map(|s| m.action[h.apply(s)].clone())
        .collect();
    FiniteQModule::try_new(Arc::clone(&h.source), m.carrier.clone(), action)
}

/// Up-set wrapper reexported for convenience in downstream signatures.
pub fn up_closure(q: &FiniteQuantale, seeds: &[usize]) -> UpSet {
    q.carrier().up_closure(seeds)
}
