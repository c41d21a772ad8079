//! Finite bounded lattices and their congruences.

mod congruence;
mod princ;
mod sublattice;

use std::sync::Arc;

pub use congruence::{con_lattice, congruence_generated, principal_congruence, Congruence};
pub use princ::{princ_poset, PrincPoset};
pub use sublattice::{
    enumerate_01_sublattices, is_01_sublattice, zeta_between, zeta_map, SublatticeEmbedding, Sublattices, Zeta,
};

use crate::error::{Error, Result};
use crate::poset::{Carrier, Poset, QuasiOrder};

/// A bounded lattice with precomputed meet and join tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteLattice {
    poset: Arc<Poset>,
    meet: Vec<usize>,
    join: Vec<usize>,
    bottom: usize,
    top: usize,
}

impl FiniteLattice {
    /// Builds the lattice whose order is generated by `covers`.
    pub fn from_covers<S: AsRef<str>>(elements: &[S], covers: &[(S, S)]) -> Result<Self> {
        let carrier = Arc::new(Carrier::new(elements.iter().map(|s| s.as_ref().to_string()))?);
        let pairs = covers
            .iter()
            .map(|(a, b)| Ok((carrier.index_of(a.as_ref())?, carrier.index_of(b.as_ref())?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_cover_indices(carrier, &pairs)
    }

    pub fn from_cover_indices(carrier: Arc<Carrier>, covers: &[(usize, usize)]) -> Result<Self> {
        if let Some(&(a, _)) = covers.iter().find(|(a, b)| a == b) {
            let l = carrier.label(a).to_string();
            return Err(Error::CyclicCovers(l.clone(), l));
        }
        let order = QuasiOrder::generated(carrier, covers.iter().copied())?;
        let poset = Poset::from_quasiorder(order).map_err(|e| match e {
            Error::NotAntisymmetric(a, b) => Error::CyclicCovers(a, b),
            other => other,
        })?;
        Self::from_poset(Arc::new(poset))
    }

    /// Validates that `poset` is a bounded lattice and tabulates its operations.
    pub fn from_poset(poset: Arc<Poset>) -> Result<Self> {
        let (bottom, top) = poset.bounds()?;
        let n = poset.len();
        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for a in 0..n {
            for b in a..n {
                let m = extremal(&poset, a, b, true).ok_or_else(|| Error::NotALattice {
                    a: poset.label(a).into(),
                    b: poset.label(b).into(),
                    missing: "greatest lower bound",
                })?;
                let j = extremal(&poset, a, b, false).ok_or_else(|| Error::NotALattice {
                    a: poset.label(a).into(),
                    b: poset.label(b).into(),
                    missing: "least upper bound",
                })?;
                meet[a * n + b] = m;
                meet[b * n + a] = m;
                join[a * n + b] = j;
                join[b * n + a] = j;
            }
        }
        Ok(FiniteLattice {
            poset,
            meet,
            join,
            bottom,
            top,
        })
    }

    /// Chain `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> Self {
        Self::from_poset(Arc::new(Poset::chain(n))).unwrap()
    }

    /// `M_k`: bounds plus `k` atoms (`M_3` for `k = 3`).
    pub fn diamond(k: usize) -> Self {
        Self::from_poset(Arc::new(Poset::bounded_antichain(k))).unwrap()
    }

    /// The pentagon `0 < a < b < 1`, `0 < c < 1`.
    pub fn pentagon() -> Self {
        Self::from_covers(
            &["0", "a", "b", "c", "1"],
            &[("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")],
        )
        .unwrap()
    }

    pub fn poset(&self) -> &Arc<Poset> {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn label(&self, i: usize) -> &str {
        self.poset.label(i)
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.poset.index_of(label)
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    #[inline]
    pub fn le(&self, a: usize, b: usize) -> bool {
        self.poset.le(a, b)
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b]
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b]
    }

    pub fn check_index(&self, a: usize) -> Result<usize> {
        if a < self.len() {
            Ok(a)
        } else {
            Err(Error::IndexOutOfRange(a))
        }
    }
}

/// Greatest common lower bound (`lower`) or least common upper bound.
fn extremal(p: &Poset, a: usize, b: usize, lower: bool) -> Option<usize> {
    let n = p.len();
    let bounds: Vec<usize> = if lower {
        (0..n).filter(|&x| p.le(x, a) && p.le(x, b)).collect()
    } else {
        (0..n).filter(|&x| p.le(a, x) && p.le(b, x)).collect()
    };
    bounds
        .iter()
        .copied()
        .find(|&c| bounds.iter().all(|&d| if lower { p.le(d, c) } else { p.le(c, d) }))
}
