//! Bounded lattices on `n` elements up to isomorphism.

use std::collections::BTreeMap;
use std::sync::Arc;

use itertools::Itertools;

use crate::bits::BitMatrix;
use crate::error::{Error, Result};
use crate::lattice::FiniteLattice;
use crate::poset::{find_order_isomorphism, Carrier, Poset, QuasiOrder};

pub const MAX_ENUMERATION_SIZE: usize = 8;

fn lattice_labels(n: usize) -> Vec<String> {
    match n {
        1 => vec!["0".into()],
        _ => std::iter::once("0".to_string())
            .chain((0..n - 2).map(|i| ((b'a' + i as u8) as char).to_string()))
            .chain(std::iter::once("1".to_string()))
            .collect(),
    }
}

/// Lexicographically least row-major encoding of the order over all
/// relabelings that keep elements sorted by (height, down-set size,
/// up-set size), plus the permutation achieving it.
fn canonical_form(p: &Poset) -> (Vec<bool>, Vec<usize>) {
    let h = p.heights();
    let n = p.len();
    let key = |x: usize| (h[x], p.down_count(x), p.up_count(x));
    let groups: Vec<Vec<usize>> = (0..n)
        .sorted_by_key(|&x| key(x))
        .chunk_by(|&x| key(x))
        .into_iter()
        .map(|(_, g)| g.collect())
        .collect();
    let mut best: Option<(Vec<bool>, Vec<usize>)> = None;
    let per_group = groups.iter().map(|g| g.iter().copied().permutations(g.len()).collect::<Vec<_>>());
    for choice in per_group.multi_cartesian_product() {
        let order: Vec<usize> = choice.into_iter().flatten().collect();
        let code: Vec<bool> = order
            .iter()
            .flat_map(|&a| order.iter().map(move |&b| p.le(a, b)))
            .collect();
        if best.as_ref().is_none_or(|(c, _)| code < *c) {
            best = Some((code, order));
        }
    }
    best.expect("at least one permutation")
}

fn lattice_from_relation(n: usize, rel: BitMatrix) -> Option<FiniteLattice> {
    let carrier = Arc::new(Carrier::new(lattice_labels(n)).ok()?);
    let poset = Poset::from_quasiorder(QuasiOrder::from_relation(carrier, rel).ok()?).ok()?;
    FiniteLattice::from_poset(Arc::new(poset)).ok()
}

/// All bounded lattices with `n` elements, one per isomorphism class,
/// sorted by canonical encoding. Elements are labeled `0`, `a`, `b`, ..., `1`
/// in a linear extension of the order.
///
/// Candidates are orders on the interior compatible with the index order
/// (every finite poset has such a labeling), filtered for transitivity and
/// the lattice property, then deduplicated by canonical form.
pub fn enumerate_small_lattices(n: usize) -> Result<Vec<FiniteLattice>> {
    if n == 0 || n > MAX_ENUMERATION_SIZE {
        return Err(Error::Input(format!(
            "lattice enumeration supports 1..={MAX_ENUMERATION_SIZE} elements, got {n}"
        )));
    }
    if n <= 2 {
        return Ok(vec![FiniteLattice::chain(n)]);
    }
    let top = n - 1;
    let slots: Vec<(usize, usize)> = (1..top).tuple_combinations().collect();
    let mut classes: BTreeMap<Vec<bool>, FiniteLattice> = BTreeMap::new();
    for mask in 0u64..(1 << slots.len()) {
        let mut rel = BitMatrix::identity(n);
        for x in 0..n {
            rel.set(0, x);
            rel.set(x, top);
        }
        for (bit, &(x, y)) in slots.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                rel.set(x, y);
            }
        }
        let mut closed = rel.clone();
        closed.transitive_closure();
        if closed != rel {
            continue;
        }
        let Some(lattice) = lattice_from_relation(n, rel) else {
            continue;
        };
        let (code, _) = canonical_form(lattice.poset());
        if classes.contains_key(&code) {
            continue;
        }
        let mut canon = BitMatrix::new(n);
        for a in 0..n {
            for b in 0..n {
                if code[a * n + b] {
                    canon.set(a, b);
                }
            }
        }
        let relabeled = lattice_from_relation(n, canon).expect("canonical relabeling of a lattice");
        classes.insert(code, relabeled);
    }
    Ok(classes.into_values().collect())
}

/// Independent enumeration for cross-checking: every orientation of every
/// interior pair, deduplicated by pairwise isomorphism search.
/// Practical for `n <= 6`.
pub fn enumerate_small_lattices_naive(n: usize) -> Result<Vec<FiniteLattice>> {
    if n == 0 || n > MAX_ENUMERATION_SIZE {
        return Err(Error::Input(format!("unsupported size {n}")));
    }
    if n == 1 {
        return Ok(vec![FiniteLattice::chain(1)]);
    }
    let top = n - 1;
    let slots: Vec<(usize, usize)> = (1..top).tuple_combinations().collect();
    let mut reps: Vec<FiniteLattice> = Vec::new();
    for states in std::iter::repeat_n(0..3u8, slots.len()).multi_cartesian_product() {
        let mut rel = BitMatrix::identity(n);
        for x in 0..n {
            rel.set(0, x);
            rel.set(x, top);
        }
        for (&(x, y), s) in slots.iter().zip(&states) {
            match s {
                1 => rel.set(x, y),
                2 => rel.set(y, x),
                _ => {}
            }
        }
        let mut closed = rel.clone();
        closed.transitive_closure();
        if closed != rel {
            continue;
        }
        let Some(lattice) = lattice_from_relation(n, rel) else {
            continue;
        };
        let fresh = reps
            .iter()
            .all(|r| find_order_isomorphism(r.poset().clone(), lattice.poset().clone()).is_none());
        if fresh {
            reps.push(lattice);
        }
    }
    Ok(reps)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiny_sizes() {
        assert_eq!(enumerate_small_lattices(1).unwrap().len(), 1);
        assert_eq!(enumerate_small_lattices(2).unwrap().len(), 1);
        assert_eq!(enumerate_small_lattices(3).unwrap().len(), 1);
        assert_eq!(enumerate_small_lattices(4).unwrap().len(), 2);
        assert!(enumerate_small_lattices(0).is_err());
        assert!(enumerate_small_lattices(9).is_err());
    }

    #[test]
    fn five_element_lattices_include_named_shapes() {
        let all = enumerate_small_lattices(5).unwrap();
        assert_eq!(all.len(), enumerate_small_lattices_naive(5).unwrap().len());
        let named = [
            FiniteLattice::pentagon(),
            FiniteLattice::diamond(3),
            FiniteLattice::chain(5),
            // 2x2 with a new top
            FiniteLattice::from_covers(
                &["0", "p", "q", "r", "1"],
                &[("0", "p"), ("0", "q"), ("p", "r"), ("q", "r"), ("r", "1")],
            )
            .unwrap(),
        ];
        for l in named {
            let hits = all
                .iter()
                .filter(|m| find_order_isomorphism(l.poset().clone(), m.poset().clone()).is_some())
                .count();
            assert_eq!(hits, 1);
        }
    }

    #[test]
    fn labels_follow_a_linear_extension() {
        for l in enumerate_small_lattices(6).unwrap() {
            assert_eq!(l.bottom(), 0);
            assert_eq!(l.top(), 5);
            for (a, b) in l.poset().order().pairs() {
                assert!(a <= b);
            }
        }
    }
}
