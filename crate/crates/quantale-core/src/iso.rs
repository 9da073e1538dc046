//! Isomorphism testing by canonical forms.
//!
//! Colors are refined by each element's relationship to every color class
//! under join and mult; ties are broken by individualizing one element of the
//! first non-singleton class and taking the minimum resulting key. Worst case
//! exponential, entirely adequate at corpus sizes (the refinement leaves very
//! few ties on the structures we build).

use std::collections::BTreeMap;

use crate::FiniteQuantale;

/// Stable encoding of a quantale up to isomorphism: two quantales are
/// isomorphic iff their keys are equal.
pub fn canonical_key(q: &FiniteQuantale) -> Vec<usize> {
    canonical_form(q).1
}

/// (old handle → canonical position, key).
pub fn canonical_form(q: &FiniteQuantale) -> (Vec<usize>, Vec<usize>) {
    let init = initial_colors(q);
    canon_rec(q, init)
}

fn initial_colors(q: &FiniteQuantale) -> Vec<usize> {
    let n = q.size();
    let descriptors: Vec<(usize, bool, bool)> = (0..n)
        .map(|x| {
            (
                (0..n).filter(|&y| q.leq(y, x)).count(),
                x == q.unit(),
                q.mult(x, x) == x,
            )
        })
        .collect();
    normalize(&descriptors)
}

/// Dense color ids ordered by descriptor value (isomorphism-invariant).
fn normalize<T: Ord + Clone>(desc: &[T]) -> Vec<usize> {
    let mut ids: BTreeMap<T, usize> = desc.iter().map(|d| (d.clone(), 0)).collect();
    for (rank, (_, id)) in ids.iter_mut().enumerate() {
        *id = rank;
    }
    desc.iter().map(|d| ids[d]).collect()
}

fn refine(q: &FiniteQuantale, mut colors: Vec<usize>) -> Vec<usize> {
    let n = q.size();
    loop {
        let before = colors.iter().max().copied().unwrap_or(0);
        let descriptors: Vec<(usize, Vec<(usize, usize, usize)>)> = (0..n)
            .map(|x| {
                let mut rel: Vec<(usize, usize, usize)> = (0..n)
                    .map(|y| (colors[y], colors[q.join(x, y)], colors[q.mult(x, y)]))
                    .collect();
                rel.sort_unstable();
                (colors[x], rel)
            })
            .collect();
        colors = normalize(&descriptors);
        if colors.iter().max().copied().unwrap_or(0) == before {
            return colors;
        }
    }
}

fn canon_rec(q: &FiniteQuantale, colors: Vec<usize>) -> (Vec<usize>, Vec<usize>) {
    let colors = refine(q, colors);
    let n = q.size();
    let mut class_of: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for x in 0..n {
        class_of.entry(colors[x]).or_default().push(x);
    }
    if let Some((_, members)) = class_of.iter().find(|(_, m)| m.len() > 1) {
        let mut best: Option<(Vec<usize>, Vec<usize>)> = None;
        for &x in members {
            // split x off its class; doubling keeps the old order stable
            let mut c2: Vec<usize> = colors.iter().map(|&c| 2 * c + 1).collect();
            c2[x] = 2 * colors[x];
            let cand = canon_rec(q, c2);
            if best.as_ref().is_none_or(|b| cand.1 < b.1) {
                best = Some(cand);
            }
        }
        return best.unwrap();
    }
    // discrete coloring: position = color id
    let perm = colors;
    let mut inv = vec![0usize; n];
    for (old, &new) in perm.iter().enumerate() {
        inv[new] = old;
    }
    let mut key = Vec::with_capacity(2 + 2 * n * n);
    key.push(n);
    key.push(perm[q.unit()]);
    for a in 0..n {
        for b in 0..n {
            key.push(perm[q.join(inv[a], inv[b])]);
        }
    }
    for a in 0..n {
        for b in 0..n {
            key.push(perm[q.mult(inv[a], inv[b])]);
        }
    }
    (perm, key)
}

/// Explicit isomorphism q1 → q2 as a handle map, when one exists. The
/// returned map is verified against both tables before being handed out.
pub fn find_isomorphism(q1: &FiniteQuantale, q2: &FiniteQuantale) -> Option<Vec<usize>> {
    if q1.size() != q2.size() {
        return None;
    }
    let (p1, k1) = canonical_form(q1);
    let (p2, k2) = canonical_form(q2);
    if k1 != k2 {
        return None;
    }
    let mut inv2 = vec![0usize; q2.size()];
    for (old, &new) in p2.iter().enumerate() {
        inv2[new] = old;
    }
    let map: Vec<usize> = (0..q1.size()).map(|x| inv2[p1[x]]).collect();
    for a in 0..q1.size() {
        for b in 0..q1.size() {
            assert_eq!(map[q1.join(a, b)], q2.join(map[a], map[b]), "canonical forms disagree with an actual join iso");
            assert_eq!(map[q1.mult(a, b)], q2.mult(map[a], map[b]), "canonical forms disagree with an actual mult iso");
        }
    }
    Some(map)
}

pub fn are_isomorphic(q1: &FiniteQuantale, q2: &FiniteQuantale) -> bool {
    find_isomorphism(q1, q2).is_some()
}
