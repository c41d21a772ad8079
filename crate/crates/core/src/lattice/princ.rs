use std::collections::HashMap;
use std::sync::Arc;

use super::{principal_congruence, Congruence, FiniteLattice};
use crate::bits::BitMatrix;
use crate::poset::{Carrier, Poset, QuasiOrder};

/// The principal congruences of a lattice, ordered by inclusion.
///
/// Elements are sorted finest first, so Δ is element 0 and ∇ the last one.
/// Each element keeps the lexicographically least pair generating it and is
/// labeled `cg(x,y)` after that pair.
#[derive(Clone, Debug)]
pub struct PrincPoset {
    lattice: Arc<FiniteLattice>,
    congruences: Vec<Congruence>,
    witnesses: Vec<(usize, usize)>,
    poset: Arc<Poset>,
    lookup: HashMap<Congruence, usize>,
}

pub fn princ_poset(lattice: Arc<FiniteLattice>) -> PrincPoset {
    let n = lattice.len();
    let mut first_seen: HashMap<Congruence, (usize, usize)> = HashMap::new();
    // cg(a,b) = cg(b,a), so pairs with a <= b already give every least witness
    for a in 0..n {
        for b in a..n {
            let c = principal_congruence(&lattice, a, b).expect("indices in range");
            first_seen.entry(c).or_insert((a, b));
        }
    }
    let mut entries: Vec<(Congruence, (usize, usize))> = first_seen.into_iter().collect();
    entries.sort_by(|(x, _), (y, _)| {
        y.num_blocks()
            .cmp(&x.num_blocks())
            .then_with(|| x.block_ids().cmp(y.block_ids()))
    });
    let (congruences, witnesses): (Vec<_>, Vec<_>) = entries.into_iter().unzip();
    let labels = witnesses
        .iter()
        .map(|&(a, b)| format!("cg({},{})", lattice.label(a), lattice.label(b)));
    let carrier = Arc::new(Carrier::new(labels).expect("distinct witnesses give distinct labels"));
    let k = congruences.len();
    let mut rel = BitMatrix::new(k);
    for i in 0..k {
        for j in 0..k {
            if congruences[i].refines(&congruences[j]) {
                rel.set(i, j);
            }
        }
    }
    let order = QuasiOrder::from_relation(carrier, rel).expect("refinement is a quasiorder");
    let poset = Poset::from_quasiorder(order).expect("refinement of distinct partitions is antisymmetric");
    let lookup = congruences.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
    PrincPoset {
        lattice,
        congruences,
        witnesses,
        poset: Arc::new(poset),
        lookup,
    }
}

impl PrincPoset {
    pub fn lattice(&self) -> &Arc<FiniteLattice> {
        &self.lattice
    }

    pub fn poset(&self) -> &Arc<Poset> {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.congruences.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn congruences(&self) -> &[Congruence] {
        &self.congruences
    }

    pub fn congruence(&self, i: usize) -> &Congruence {
        &self.congruences[i]
    }

    pub fn witness(&self, i: usize) -> (usize, usize) {
        self.witnesses[i]
    }

    /// Position of `c` in this poset, if it is principal.
    pub fn position(&self, c: &Congruence) -> Option<usize> {
        self.lookup.get(c).copied()
    }

    pub fn delta(&self) -> usize {
        0
    }

    pub fn nabla(&self) -> usize {
        self.len() - 1
    }

    /// Covering pairs of the inclusion order.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        self.poset.covers()
    }
}
