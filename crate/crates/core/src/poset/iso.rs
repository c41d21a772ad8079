//! Backtracking search for order isomorphisms.
//!
//! Source elements are assigned in carrier order and candidate images are
//! tried in increasing index order, so maps come out in lexicographic order
//! of their tables.

use std::sync::Arc;

use super::{MonotoneMap, Poset};

fn profiles(p: &Poset) -> Vec<(usize, usize, usize)> {
    let h = p.heights();
    (0..p.len()).map(|x| (p.down_count(x), p.up_count(x), h[x])).collect()
}

/// Iterator over all order isomorphisms `source -> target`.
pub struct Isomorphisms {
    source: Arc<Poset>,
    target: Arc<Poset>,
    candidates: Vec<Vec<usize>>,
    assign: Vec<usize>,
    cursor: Vec<usize>,
    used: Vec<bool>,
    depth: usize,
    resume: bool,
    done: bool,
}

impl Isomorphisms {
    pub fn new(source: Arc<Poset>, target: Arc<Poset>) -> Self {
        let n = source.len();
        let mut done = n != target.len() || source.order().relation().count() != target.order().relation().count();
        let mut candidates = Vec::new();
        if !done {
            let ps = profiles(&source);
            let qs = profiles(&target);
            candidates = ps
                .iter()
                .map(|p| (0..n).filter(|&y| qs[y] == *p).collect::<Vec<_>>())
                .collect();
            let mut sorted_p = ps.clone();
            let mut sorted_q = qs.clone();
            sorted_p.sort();
            sorted_q.sort();
            done = sorted_p != sorted_q;
        }
        Isomorphisms {
            source,
            target,
            candidates,
            assign: vec![usize::MAX; n],
            cursor: vec![0; n],
            used: vec![false; n],
            depth: 0,
            resume: false,
            done,
        }
    }

    fn consistent(&self, x: usize, y: usize) -> bool {
        (0..x).all(|a| {
            let fa = self.assign[a];
            self.source.le(a, x) == self.target.le(fa, y) && self.source.le(x, a) == self.target.le(y, fa)
        })
    }

    fn unassign(&mut self, x: usize) {
        self.used[self.assign[x]] = false;
        self.assign[x] = usize::MAX;
    }
}

impl Iterator for Isomorphisms {
    type Item = MonotoneMap;

    fn next(&mut self) -> Option<MonotoneMap> {
        if self.done {
            return None;
        }
        let n = self.source.len();
        if self.resume {
            self.resume = false;
            self.depth -= 1;
            self.unassign(self.depth);
        }
        'search: loop {
            if self.depth == n {
                self.resume = true;
                let map = MonotoneMap::raw(self.source.clone(), self.target.clone(), self.assign.clone())
                    .expect("complete assignment has the right shape");
                return Some(map);
            }
            let x = self.depth;
            while self.cursor[x] < self.candidates[x].len() {
                let y = self.candidates[x][self.cursor[x]];
                self.cursor[x] += 1;
                if !self.used[y] && self.consistent(x, y) {
                    self.assign[x] = y;
                    self.used[y] = true;
                    self.depth += 1;
                    if self.depth < n {
                        self.cursor[self.depth] = 0;
                    }
                    continue 'search;
                }
            }
            self.cursor[x] = 0;
            if x == 0 {
                self.done = true;
                return None;
            }
            self.depth -= 1;
            self.unassign(self.depth);
        }
    }
}

pub fn enumerate_isomorphisms(source: Arc<Poset>, target: Arc<Poset>) -> Isomorphisms {
    Isomorphisms::new(source, target)
}

/// The lexicographically least order isomorphism, if any.
pub fn find_order_isomorphism(source: Arc<Poset>, target: Arc<Poset>) -> Option<MonotoneMap> {
    Isomorphisms::new(source, target).next()
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;

    fn arc(p: Poset) -> Arc<Poset> {
        Arc::new(p)
    }

    /// Counts order-preserving-and-reflecting bijections by trying every permutation.
    fn brute_force_count(p: &Poset, q: &Poset) -> usize {
        if p.len() != q.len() {
            return 0;
        }
        let n = p.len();
        (0..n)
            .permutations(n)
            .filter(|perm| {
                (0..n).all(|x| (0..n).all(|y| p.le(x, y) == q.le(perm[x], perm[y])))
            })
            .count()
    }

    #[test]
    fn two_chain_identity() {
        let c = arc(Poset::chain(2));
        let f = find_order_isomorphism(c.clone(), c.clone()).unwrap();
        assert_eq!(f, MonotoneMap::identity(c));
    }

    #[test]
    fn three_chain_vs_square_absent() {
        assert!(find_order_isomorphism(arc(Poset::chain(3)), arc(Poset::bounded_antichain(2))).is_none());
        assert!(find_order_isomorphism(arc(Poset::chain(4)), arc(Poset::bounded_antichain(2))).is_none());
    }

    #[test]
    fn automorphism_counts() {
        let sq = arc(Poset::bounded_antichain(2));
        assert_eq!(enumerate_isomorphisms(sq.clone(), sq).count(), 2);
        let c3 = arc(Poset::chain(3));
        assert_eq!(enumerate_isomorphisms(c3.clone(), c3).count(), 1);
        let m3 = arc(Poset::bounded_antichain(3));
        let got = enumerate_isomorphisms(m3.clone(), m3.clone()).count();
        assert_eq!(got, brute_force_count(&m3, &m3));
        assert_eq!(got, 6);
    }

    #[test]
    fn lexicographic_order() {
        let m3 = arc(Poset::bounded_antichain(3));
        let tables: Vec<Vec<usize>> = enumerate_isomorphisms(m3.clone(), m3)
            .map(|f| f.table().to_vec())
            .collect();
        let mut sorted = tables.clone();
        sorted.sort();
        assert_eq!(tables, sorted);
        assert_eq!(tables[0], vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn relabeled_poset_is_found() {
        // 6 elements: 0 < a,b < c < 1, plus d with 0 < d < 1
        let p = arc(
            Poset::new(
                &["0", "a", "b", "c", "d", "1"],
                &[("0", "a"), ("0", "b"), ("a", "c"), ("b", "c"), ("c", "1"), ("0", "d"), ("d", "1")],
            )
            .unwrap(),
        );
        // permute carrier order: new position i holds old element perm[i]
        let perm = [4, 2, 5, 0, 3, 1];
        let labels: Vec<String> = perm.iter().map(|&o| p.label(o).to_string()).collect();
        let le: Vec<(String, String)> = p
            .covers()
            .into_iter()
            .map(|(a, b)| (p.label(a).to_string(), p.label(b).to_string()))
            .collect();
        let q = arc(Poset::new(&labels, &le).unwrap());
        let f = find_order_isomorphism(p.clone(), q.clone()).unwrap();
        assert!(f.is_order_isomorphism());
        // composing with the known relabeling inverse gives an automorphism of p
        let mut back = vec![0; 6];
        for (new, &old) in perm.iter().enumerate() {
            back[new] = old;
        }
        let g = MonotoneMap::raw(q, p.clone(), back).unwrap();
        assert!(g.is_order_isomorphism());
        let auto = f.then(&g).unwrap();
        assert!(auto.is_order_isomorphism());
        assert_eq!(auto.source(), &p);
        assert_eq!(
            enumerate_isomorphisms(p.clone(), p.clone()).count(),
            brute_force_count(&p, &p)
        );
    }
}
