use std::collections::BTreeSet;

use super::FiniteLattice;
use crate::error::Result;

/// A partition of a lattice's carrier, stored canonically: each element maps
/// to the least index in its block.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Congruence {
    block_of: Vec<usize>,
}

struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true when two distinct classes were merged.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    fn into_congruence(mut self) -> Congruence {
        let n = self.parent.len();
        let mut least = vec![usize::MAX; n];
        let roots: Vec<usize> = (0..n).map(|x| self.find(x)).collect();
        for (x, &r) in roots.iter().enumerate() {
            least[r] = least[r].min(x);
        }
        Congruence {
            block_of: roots.iter().map(|&r| least[r]).collect(),
        }
    }
}

impl Congruence {
    /// The equality relation Δ.
    pub fn delta(n: usize) -> Self {
        Congruence {
            block_of: (0..n).collect(),
        }
    }

    /// The full relation ∇.
    pub fn nabla(n: usize) -> Self {
        Congruence { block_of: vec![0; n] }
    }

    /// Canonicalizes an arbitrary block labeling (`x` and `y` share a block iff `labels[x] == labels[y]`).
    pub fn from_labels<T: PartialEq>(labels: &[T]) -> Self {
        let block_of = (0..labels.len())
            .map(|x| (0..=x).find(|&y| labels[y] == labels[x]).unwrap())
            .collect();
        Congruence { block_of }
    }

    pub fn len(&self) -> usize {
        self.block_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.block_of.is_empty()
    }

    /// Least member of the block of `x`.
    pub fn representative(&self, x: usize) -> usize {
        self.block_of[x]
    }

    pub fn block_ids(&self) -> &[usize] {
        &self.block_of
    }

    pub fn relates(&self, a: usize, b: usize) -> bool {
        self.block_of[a] == self.block_of[b]
    }

    pub fn num_blocks(&self) -> usize {
        self.block_of.iter().enumerate().filter(|(x, &r)| *x == r).count()
    }

    pub fn is_delta(&self) -> bool {
        self.num_blocks() == self.len()
    }

    /// Blocks in order of their least member, members ascending.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = Vec::new();
        let mut slot = vec![usize::MAX; self.len()];
        for (x, &r) in self.block_of.iter().enumerate() {
            if slot[r] == usize::MAX {
                slot[r] = out.len();
                out.push(Vec::new());
            }
            out[slot[r]].push(x);
        }
        out
    }

    /// All related pairs `(a, b)` with `a != b`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| a != b && self.relates(a, b))
            .collect()
    }

    /// Inclusion of relations: every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &Congruence) -> bool {
        self.len() == other.len() && (0..self.len()).all(|x| other.relates(x, self.block_of[x]))
    }

    /// Join in Con(L): the transitive closure of the union.
    pub fn join(&self, other: &Congruence) -> Congruence {
        let mut ds = DisjointSets::new(self.len());
        for x in 0..self.len() {
            ds.union(x, self.block_of[x]);
            ds.union(x, other.block_of[x]);
        }
        ds.into_congruence()
    }

    /// Checks substitution compatibility with meet and join.
    pub fn is_compatible(&self, lattice: &FiniteLattice) -> bool {
        let n = self.len();
        n == lattice.len()
            && (0..n).all(|a| {
                let r = self.block_of[a];
                (0..n).all(|t| {
                    self.relates(lattice.meet(a, t), lattice.meet(r, t))
                        && self.relates(lattice.join(a, t), lattice.join(r, t))
                })
            })
    }

    /// Key used to sort congruence lists: block count, then canonical encoding.
    pub fn sort_key(&self) -> (usize, &[usize]) {
        (self.num_blocks(), &self.block_of)
    }

    /// Blocks rendered with lattice labels.
    pub fn labeled_blocks(&self, lattice: &FiniteLattice) -> Vec<Vec<String>> {
        self.blocks()
            .into_iter()
            .map(|b| b.into_iter().map(|x| lattice.label(x).to_string()).collect())
            .collect()
    }
}

/// Smallest congruence of `lattice` collapsing every seed pair.
///
/// Each pair that actually merges two classes is queued once; processing it
/// merges its translates under `∧ t` and `∨ t` for every `t`. Since the final
/// equivalence is the transitive closure of processed pairs, this reaches
/// the same fixpoint as re-scanning all related pairs.
pub fn congruence_generated(lattice: &FiniteLattice, seed: &[(usize, usize)]) -> Result<Congruence> {
    let n = lattice.len();
    let mut ds = DisjointSets::new(n);
    let mut queue = Vec::new();
    for &(a, b) in seed {
        lattice.check_index(a)?;
        lattice.check_index(b)?;
        if ds.union(a, b) {
            queue.push((a, b));
        }
    }
    while let Some((u, v)) = queue.pop() {
        for t in 0..n {
            let (um, vm) = (lattice.meet(u, t), lattice.meet(v, t));
            if ds.union(um, vm) {
                queue.push((um, vm));
            }
            let (uj, vj) = (lattice.join(u, t), lattice.join(v, t));
            if ds.union(uj, vj) {
                queue.push((uj, vj));
            }
        }
    }
    Ok(ds.into_congruence())
}

/// `cg(a, b)`.
pub fn principal_congruence(lattice: &FiniteLattice, a: usize, b: usize) -> Result<Congruence> {
    congruence_generated(lattice, &[(a, b)])
}

/// All congruences of `lattice`, as joins of principal congruences plus Δ.
///
/// Sorted by block count, then canonical encoding (so ∇ comes first).
pub fn con_lattice(lattice: &FiniteLattice) -> Vec<Congruence> {
    let n = lattice.len();
    let mut found: BTreeSet<Congruence> = BTreeSet::new();
    found.insert(Congruence::delta(n));
    for a in 0..n {
        for b in a + 1..n {
            found.insert(principal_congruence(lattice, a, b).expect("indices in range"));
        }
    }
    let mut frontier: Vec<Congruence> = found.iter().cloned().collect();
    while !frontier.is_empty() {
        let current: Vec<Congruence> = found.iter().cloned().collect();
        let mut next = Vec::new();
        for x in &frontier {
            for y in &current {
                let j = x.join(y);
                debug_assert!(j.is_compatible(lattice), "join of congruences is a congruence");
                if !found.contains(&j) {
                    found.insert(j.clone());
                    next.push(j);
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<Congruence> = found.into_iter().collect();
    out.sort_by(|x, y| x.sort_key().cmp(&y.sort_key()));
    out
}
