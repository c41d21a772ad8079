//! Finite quasiorders and posets over labeled carriers.
//!
//! Every algorithm works on element indices; labels are only consulted at
//! the input/output boundary.

mod iso;
mod map;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

pub use iso::{enumerate_isomorphisms, find_order_isomorphism, Isomorphisms};
pub use map::{is_catb_morphism, MonotoneMap, OrderedPair};

use crate::bits::BitMatrix;
use crate::error::{Error, Result};

/// An ordered list of distinct labels.
#[derive(Clone)]
pub struct Carrier {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

impl Carrier {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::EmptyCarrier);
        }
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        Ok(Carrier { labels, index })
    }

    /// Carrier labeled `0..n` as decimal strings.
    pub fn numbered(n: usize) -> Result<Self> {
        Self::new((0..n).map(|i| i.to_string()))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn contains(&self, label: &str) -> bool {
        self.index.contains_key(label)
    }
}

impl PartialEq for Carrier {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels
    }
}

impl Eq for Carrier {}

impl fmt::Debug for Carrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.labels).finish()
    }
}

/// A reflexive, transitive relation on a carrier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiOrder {
    carrier: Arc<Carrier>,
    rel: BitMatrix,
}

impl QuasiOrder {
    /// Least quasiorder containing `seed` (reflexive-transitive closure).
    pub fn generated<I>(carrier: Arc<Carrier>, seed: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let n = carrier.len();
        let mut rel = BitMatrix::identity(n);
        for (a, b) in seed {
            if a >= n {
                return Err(Error::IndexOutOfRange(a));
            }
            if b >= n {
                return Err(Error::IndexOutOfRange(b));
            }
            rel.set(a, b);
        }
        rel.transitive_closure();
        Ok(QuasiOrder { carrier, rel })
    }

    /// Label-based variant of [`QuasiOrder::generated`].
    pub fn generated_by_labels<S: AsRef<str>>(carrier: Arc<Carrier>, seed: &[(S, S)]) -> Result<Self> {
        let pairs = seed
            .iter()
            .map(|(a, b)| Ok((carrier.index_of(a.as_ref())?, carrier.index_of(b.as_ref())?)))
            .collect::<Result<Vec<_>>>()?;
        Self::generated(carrier, pairs)
    }

    /// Wraps an explicit relation, checking reflexivity and transitivity.
    pub fn from_relation(carrier: Arc<Carrier>, rel: BitMatrix) -> Result<Self> {
        let n = carrier.len();
        if rel.size() != n {
            return Err(Error::Input(format!("relation size {} for carrier of size {n}", rel.size())));
        }
        if let Some(a) = (0..n).find(|&a| !rel.get(a, a)) {
            return Err(Error::Input(format!("relation not reflexive at `{}`", carrier.label(a))));
        }
        let mut closed = rel.clone();
        closed.transitive_closure();
        if closed != rel {
            return Err(Error::Input("relation not transitive".into()));
        }
        Ok(QuasiOrder { carrier, rel })
    }

    pub fn carrier(&self) -> &Arc<Carrier> {
        &self.carrier
    }

    pub fn relation(&self) -> &BitMatrix {
        &self.rel
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn le(&self, a: usize, b: usize) -> bool {
        self.rel.get(a, b)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rel.pairs()
    }

    /// The equivalence `q ∩ q⁻¹`.
    pub fn kernel(&self) -> BitMatrix {
        self.rel.intersect(&self.rel.transpose())
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.kernel() == BitMatrix::identity(self.len())
    }

    /// Collapses the kernel, yielding a poset of blocks and the projection.
    pub fn quotient(&self) -> Quotient {
        let n = self.len();
        let mut block_of = vec![usize::MAX; n];
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for x in 0..n {
            if block_of[x] != usize::MAX {
                continue;
            }
            let id = blocks.len();
            let members: Vec<usize> = (x..n).filter(|&y| self.le(x, y) && self.le(y, x)).collect();
            for &m in &members {
                block_of[m] = id;
            }
            blocks.push(members);
        }
        let carrier = Arc::new(
            Carrier::new(blocks.iter().map(|b| self.carrier.label(b[0]).to_string()))
                .expect("block representatives are distinct labels"),
        );
        let k = blocks.len();
        let mut rel = BitMatrix::new(k);
        for (i, bi) in blocks.iter().enumerate() {
            for (j, bj) in blocks.iter().enumerate() {
                if self.le(bi[0], bj[0]) {
                    rel.set(i, j);
                }
            }
        }
        let order = QuasiOrder { carrier, rel };
        let poset = Poset::from_quasiorder(order).expect("quotient by kernel is antisymmetric");
        Quotient {
            poset: Arc::new(poset),
            projection: block_of,
            blocks,
        }
    }
}

/// Result of collapsing the kernel of a quasiorder.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub poset: Arc<Poset>,
    /// Block index of each element of the original carrier.
    pub projection: Vec<usize>,
    /// Members of each block, least index first; block `i` is labeled by `blocks[i][0]`.
    pub blocks: Vec<Vec<usize>>,
}

impl Quotient {
    /// Projection is monotone and surjective with respect to `source`.
    pub fn check_projection(&self, source: &QuasiOrder) -> bool {
        let monotone = source
            .pairs()
            .all(|(a, b)| self.poset.le(self.projection[a], self.projection[b]));
        let mut hit = vec![false; self.blocks.len()];
        for &b in &self.projection {
            hit[b] = true;
        }
        monotone && hit.into_iter().all(|h| h)
    }
}

/// An antisymmetric quasiorder, with cached bounds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    order: QuasiOrder,
    bottom: Option<usize>,
    top: Option<usize>,
}

impl Poset {
    pub fn from_quasiorder(order: QuasiOrder) -> Result<Self> {
        let n = order.len();
        for a in 0..n {
            for b in a + 1..n {
                if order.le(a, b) && order.le(b, a) {
                    let c = order.carrier();
                    return Err(Error::NotAntisymmetric(c.label(a).into(), c.label(b).into()));
                }
            }
        }
        let bottom = (0..n).find(|&a| order.rel.row_count(a) == n);
        let top = (0..n).find(|&a| order.rel.col_count(a) == n);
        Ok(Poset { order, bottom, top })
    }

    /// Poset generated by `le` pairs over `labels`.
    pub fn new<S: AsRef<str>>(labels: &[S], le: &[(S, S)]) -> Result<Self> {
        let carrier = Arc::new(Carrier::new(labels.iter().map(|s| s.as_ref().to_string()))?);
        Self::from_quasiorder(QuasiOrder::generated_by_labels(carrier, le)?)
    }

    pub fn from_indices(carrier: Arc<Carrier>, le: &[(usize, usize)]) -> Result<Self> {
        Self::from_quasiorder(QuasiOrder::generated(carrier, le.iter().copied())?)
    }

    /// Chain `0 < 1 < ... < n-1` labeled by decimal indices.
    pub fn chain(n: usize) -> Self {
        let carrier = Arc::new(Carrier::numbered(n).expect("chain needs n >= 1"));
        let covers: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_indices(carrier, &covers).unwrap()
    }

    /// Bounds `0`, `1` with `k` pairwise incomparable atoms `a0..`.
    pub fn bounded_antichain(k: usize) -> Self {
        let mut labels = vec!["0".to_string()];
        labels.extend((0..k).map(|i| format!("a{i}")));
        labels.push("1".to_string());
        let top = k + 1;
        let carrier = Arc::new(Carrier::new(labels).unwrap());
        let mut le = vec![(0, top)];
        for i in 1..=k {
            le.push((0, i));
            le.push((i, top));
        }
        Self::from_indices(carrier, &le).unwrap()
    }

    pub fn order(&self) -> &QuasiOrder {
        &self.order
    }

    pub fn carrier(&self) -> &Arc<Carrier> {
        self.order.carrier()
    }

    pub fn label(&self, i: usize) -> &str {
        self.order.carrier.label(i)
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.order.carrier.index_of(label)
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn le(&self, a: usize, b: usize) -> bool {
        self.order.le(a, b)
    }

    #[inline]
    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.order.le(a, b)
    }

    pub fn bottom(&self) -> Option<usize> {
        self.bottom
    }

    pub fn top(&self) -> Option<usize> {
        self.top
    }

    pub fn is_bounded(&self) -> bool {
        self.bottom.is_some() && self.top.is_some()
    }

    /// `(bottom, top)`, or an error naming what is missing.
    pub fn bounds(&self) -> Result<(usize, usize)> {
        match (self.bottom, self.top) {
            (Some(b), Some(t)) => Ok((b, t)),
            (None, _) => Err(Error::NotBounded("no least element".into())),
            (_, None) => Err(Error::NotBounded("no greatest element".into())),
        }
    }

    /// Number of elements `<= x`.
    pub fn down_count(&self, x: usize) -> usize {
        self.order.rel.col_count(x)
    }

    /// Number of elements `>= x`.
    pub fn up_count(&self, x: usize) -> usize {
        self.order.rel.row_count(x)
    }

    /// Length of the longest chain ending at each element.
    pub fn heights(&self) -> Vec<usize> {
        let ext = self.linear_extension();
        let mut h = vec![0; self.len()];
        for (pos, &x) in ext.iter().enumerate() {
            h[x] = ext[..pos]
                .iter()
                .filter(|&&y| self.lt(y, x))
                .map(|&y| h[y] + 1)
                .max()
                .unwrap_or(0);
        }
        h
    }

    /// Least-index-first topological order.
    pub fn linear_extension(&self) -> Vec<usize> {
        let n = self.len();
        let mut placed = vec![false; n];
        let mut out = Vec::with_capacity(n);
        while out.len() < n {
            let next = (0..n)
                .find(|&x| !placed[x] && (0..n).all(|y| placed[y] || !self.lt(y, x)))
                .expect("poset has a minimal unplaced element");
            placed[next] = true;
            out.push(next);
        }
        out
    }

    /// Covering pairs `(a, b)`: `a < b` with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if self.lt(a, b) && !(0..n).any(|c| self.lt(a, c) && self.lt(c, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Same order on a fresh set of labels (index-preserving).
    pub fn relabeled<I, S>(&self, labels: I) -> Result<Poset>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let carrier = Arc::new(Carrier::new(labels)?);
        if carrier.len() != self.len() {
            return Err(Error::Input(format!(
                "relabeling has {} labels for {} elements",
                carrier.len(),
                self.len()
            )));
        }
        Ok(Poset {
            order: QuasiOrder {
                carrier,
                rel: self.order.rel.clone(),
            },
            bottom: self.bottom,
            top: self.top,
        })
    }

    /// Induced order on `members` (kept in the given order).
    pub fn restrict(&self, members: &[usize]) -> Result<Poset> {
        let carrier = Arc::new(Carrier::new(members.iter().map(|&m| self.label(m).to_string()))?);
        let k = members.len();
        let mut rel = BitMatrix::new(k);
        for (i, &a) in members.iter().enumerate() {
            for (j, &b) in members.iter().enumerate() {
                if self.le(a, b) {
                    rel.set(i, j);
                }
            }
        }
        Poset::from_quasiorder(QuasiOrder::from_relation(carrier, rel)?)
    }
}
