//! `{0,1}`-sublattices, their enumeration, and the induced maps between
//! principal-congruence posets.

use std::sync::Arc;

use itertools::Itertools;

use super::{congruence_generated, princ_poset, principal_congruence, FiniteLattice, PrincPoset};
use crate::error::{Error, Result};
use crate::poset::MonotoneMap;

/// True iff `subset` contains both bounds of `lattice` and is closed under meet and join.
pub fn is_01_sublattice(lattice: &FiniteLattice, subset: &[usize]) -> bool {
    if subset.iter().any(|&x| x >= lattice.len()) {
        return false;
    }
    let mut member = vec![false; lattice.len()];
    for &x in subset {
        member[x] = true;
    }
    member[lattice.bottom()]
        && member[lattice.top()]
        && subset
            .iter()
            .all(|&a| subset.iter().all(|&b| member[lattice.meet(a, b)] && member[lattice.join(a, b)]))
}

/// A `{0,1}`-sublattice together with its inclusion into an ambient lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SublatticeEmbedding {
    sub: Arc<FiniteLattice>,
    ambient: Arc<FiniteLattice>,
    injection: Vec<usize>,
}

impl SublatticeEmbedding {
    /// The sublattice on `subset` (ambient indices, any order, duplicates ignored).
    pub fn from_subset(ambient: Arc<FiniteLattice>, subset: &[usize]) -> Result<Self> {
        let members: Vec<usize> = subset.iter().copied().sorted().dedup().collect();
        if let Some(&bad) = members.iter().find(|&&x| x >= ambient.len()) {
            return Err(Error::IndexOutOfRange(bad));
        }
        if !is_01_sublattice(&ambient, &members) {
            let labels: Vec<&str> = members.iter().map(|&x| ambient.label(x)).collect();
            return Err(Error::NotSublattice(format!("{{{}}}", labels.join(", "))));
        }
        let sub = FiniteLattice::from_poset(Arc::new(ambient.poset().restrict(&members)?))?;
        Ok(SublatticeEmbedding {
            sub: Arc::new(sub),
            ambient,
            injection: members,
        })
    }

    pub fn from_labels<S: AsRef<str>>(ambient: Arc<FiniteLattice>, labels: &[S]) -> Result<Self> {
        let subset = labels
            .iter()
            .map(|l| ambient.index_of(l.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::from_subset(ambient, &subset)
    }

    /// The whole lattice as a sublattice of itself.
    pub fn identity(lattice: Arc<FiniteLattice>) -> Self {
        SublatticeEmbedding {
            sub: lattice.clone(),
            injection: (0..lattice.len()).collect(),
            ambient: lattice,
        }
    }

    /// The inclusion `inner ⊆ outer` of two sublattices of one ambient lattice,
    /// as an embedding of `inner.sub()` into `outer.sub()`.
    pub fn inclusion(inner: &SublatticeEmbedding, outer: &SublatticeEmbedding) -> Result<Self> {
        if inner.ambient != outer.ambient {
            return Err(Error::Input("sublattices of different lattices".into()));
        }
        let injection = inner
            .injection
            .iter()
            .map(|x| {
                outer.injection.binary_search(x).map_err(|_| {
                    Error::NotSublattice(format!(
                        "`{}` is not in the outer sublattice",
                        inner.ambient.label(*x)
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SublatticeEmbedding {
            sub: inner.sub.clone(),
            ambient: outer.sub.clone(),
            injection,
        })
    }

    pub fn sub(&self) -> &Arc<FiniteLattice> {
        &self.sub
    }

    pub fn ambient(&self) -> &Arc<FiniteLattice> {
        &self.ambient
    }

    pub fn injection(&self) -> &[usize] {
        &self.injection
    }

    /// Ambient indices of the sublattice, ascending.
    pub fn subset(&self) -> Vec<usize> {
        self.injection.iter().copied().sorted().collect()
    }

    pub fn is_subset_of(&self, other: &SublatticeEmbedding) -> bool {
        self.injection.iter().all(|x| other.injection.contains(x))
    }

    pub fn labels(&self) -> Vec<String> {
        self.injection.iter().map(|&x| self.ambient.label(x).to_string()).collect()
    }

    /// Injection preserves bounds, meet and join.
    pub fn is_valid(&self) -> bool {
        let f = &self.injection;
        let (s, a) = (&self.sub, &self.ambient);
        f[s.bottom()] == a.bottom()
            && f[s.top()] == a.top()
            && (0..s.len()).all(|x| {
                (0..s.len()).all(|y| f[s.meet(x, y)] == a.meet(f[x], f[y]) && f[s.join(x, y)] == a.join(f[x], f[y]))
            })
    }
}

/// Iterator over all `{0,1}`-sublattices of a lattice, by size then
/// lexicographically by ambient indices.
pub struct Sublattices {
    lattice: Arc<FiniteLattice>,
    candidates: Box<dyn Iterator<Item = Vec<usize>> + Send>,
    remaining: Option<usize>,
    truncated: bool,
}

impl Sublattices {
    /// Set once the cap was reached while further sublattices existed.
    pub fn truncated(&self) -> bool {
        self.truncated
    }

    fn next_closed(&mut self) -> Option<Vec<usize>> {
        let lattice = &self.lattice;
        self.candidates.by_ref().find(|s| is_01_sublattice(lattice, s))
    }
}

impl Iterator for Sublattices {
    type Item = SublatticeEmbedding;

    fn next(&mut self) -> Option<SublatticeEmbedding> {
        if self.remaining == Some(0) {
            if !self.truncated && self.next_closed().is_some() {
                self.truncated = true;
            }
            return None;
        }
        let subset = self.next_closed()?;
        if let Some(r) = self.remaining.as_mut() {
            *r -= 1;
        }
        Some(SublatticeEmbedding::from_subset(self.lattice.clone(), &subset).expect("closed subset"))
    }
}

pub fn enumerate_01_sublattices(lattice: Arc<FiniteLattice>, max_count: Option<usize>) -> Sublattices {
    let (bottom, top) = (lattice.bottom(), lattice.top());
    let interior: Vec<usize> = (0..lattice.len()).filter(|&x| x != bottom && x != top).collect();
    let m = interior.len();
    let candidates = (0..=m).flat_map(move |k| {
        interior.clone().into_iter().combinations(k).map(move |mut inner| {
            inner.push(bottom);
            inner.push(top);
            inner.sort_unstable();
            inner.dedup();
            inner
        })
    });
    Sublattices {
        lattice,
        candidates: Box::new(candidates),
        remaining: max_count,
        truncated: false,
    }
}

/// The induced map `Princ(K) -> Princ(L)` together with both posets.
#[derive(Clone, Debug)]
pub struct Zeta {
    pub source: Arc<PrincPoset>,
    pub target: Arc<PrincPoset>,
    pub map: MonotoneMap,
}

/// Computes the map sending `cg_K(x,y)` to `cg_L(x,y)` for an embedding `K -> L`.
pub fn zeta_map(embedding: &SublatticeEmbedding) -> Result<Zeta> {
    let source = Arc::new(princ_poset(embedding.sub().clone()));
    let target = Arc::new(princ_poset(embedding.ambient().clone()));
    zeta_between(source, target, embedding)
}

/// [`zeta_map`] reusing already computed principal-congruence posets.
///
/// Each image is computed twice: from the stored witness pair and from the
/// full relation of the source congruence. A disagreement, or an image that
/// is not principal, is reported as an invariant violation.
pub fn zeta_between(source: Arc<PrincPoset>, target: Arc<PrincPoset>, embedding: &SublatticeEmbedding) -> Result<Zeta> {
    if source.lattice() != embedding.sub() || target.lattice() != embedding.ambient() {
        return Err(Error::Input("principal posets do not match the embedding".into()));
    }
    let inj = embedding.injection();
    let ambient = embedding.ambient();
    let mut table = Vec::with_capacity(source.len());
    for (i, theta) in source.congruences().iter().enumerate() {
        let (x, y) = source.witness(i);
        let by_witness = principal_congruence(ambient, inj[x], inj[y])?;
        let lifted: Vec<(usize, usize)> = theta.pairs().into_iter().map(|(a, b)| (inj[a], inj[b])).collect();
        let by_relation = congruence_generated(ambient, &lifted)?;
        if by_witness != by_relation {
            return Err(Error::Invariant(format!(
                "image of {} differs between witness pair and generated relation",
                source.poset().label(i)
            )));
        }
        let pos = target.position(&by_witness).ok_or_else(|| {
            Error::Invariant(format!("image of {} is not principal", source.poset().label(i)))
        })?;
        table.push(pos);
    }
    let map = MonotoneMap::new(source.poset().clone(), target.poset().clone(), table)
        .map_err(|e| Error::Invariant(format!("induced map: {e}")))?;
    Ok(Zeta { source, target, map })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::is_catb_morphism;

    fn n5() -> Arc<FiniteLattice> {
        Arc::new(FiniteLattice::pentagon())
    }

    fn ids(l: &FiniteLattice, labels: &[&str]) -> Vec<usize> {
        labels.iter().map(|s| l.index_of(s).unwrap()).collect()
    }

    #[test]
    fn bounds_always_form_a_sublattice() {
        for l in [FiniteLattice::chain(2), FiniteLattice::pentagon(), FiniteLattice::diamond(3)] {
            assert!(is_01_sublattice(&l, &[l.bottom(), l.top()]));
        }
    }

    #[test]
    fn pentagon_subsets() {
        // checked exhaustively: a∧c = 0, a∨c = 1, all other pairs comparable
        let l = n5();
        assert!(is_01_sublattice(&l, &ids(&l, &["0", "a", "c", "1"])));
        assert!(is_01_sublattice(&l, &ids(&l, &["0", "b", "1"])));
        assert!(!is_01_sublattice(&l, &ids(&l, &["0", "a"])));
        let m3 = FiniteLattice::diamond(3);
        assert!(is_01_sublattice(&m3, &[0, 1, 2, 4]));
        assert!(!is_01_sublattice(&m3, &[0, 1, 2]), "top missing");
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_01_sublattices(Arc::new(FiniteLattice::chain(2)), None).count(), 1);
        let subs: Vec<_> = enumerate_01_sublattices(Arc::new(FiniteLattice::chain(3)), None).collect();
        assert_eq!(subs.len(), 2);
        assert_eq!(subs[0].subset(), vec![0, 2]);
        assert_eq!(subs[1].subset(), vec![0, 1, 2]);
        assert_eq!(enumerate_01_sublattices(Arc::new(FiniteLattice::chain(1)), None).count(), 1);
    }

    #[test]
    fn pentagon_enumeration_matches_subset_scan() {
        let l = n5();
        let scan = (0u32..8)
            .filter(|mask| {
                let mut s = vec![0, 4];
                for (bit, x) in [1, 2, 3].into_iter().enumerate() {
                    if mask >> bit & 1 == 1 {
                        s.push(x);
                    }
                }
                // closure by direct table lookup, written out independently
                s.iter().all(|&a| s.iter().all(|&b| s.contains(&l.meet(a, b)) && s.contains(&l.join(a, b))))
            })
            .count();
        let subs: Vec<_> = enumerate_01_sublattices(l, None).collect();
        assert_eq!(subs.len(), scan);
        assert!(subs.iter().all(SublatticeEmbedding::is_valid));
        let sizes: Vec<usize> = subs.iter().map(|s| s.sub().len()).collect();
        let mut sorted = sizes.clone();
        sorted.sort();
        assert_eq!(sizes, sorted);
    }

    #[test]
    fn cap_sets_truncation_flag() {
        let mut it = enumerate_01_sublattices(n5(), Some(3));
        assert_eq!(it.by_ref().count(), 3);
        assert!(it.truncated());
        let mut all = enumerate_01_sublattices(Arc::new(FiniteLattice::chain(3)), Some(2));
        assert_eq!(all.by_ref().count(), 2);
        assert!(!all.truncated());
    }

    #[test]
    fn non_closed_subset_rejected() {
        let l = n5();
        let err = SublatticeEmbedding::from_labels(l, &["0", "a", "c"]).unwrap_err();
        assert!(matches!(err, Error::NotSublattice(_)));
    }

    #[test]
    fn zeta_of_identity_is_identity() {
        let l = n5();
        let z = zeta_map(&SublatticeEmbedding::identity(l)).unwrap();
        assert_eq!(z.map.table(), (0..5).collect::<Vec<_>>().as_slice());
    }

    #[test]
    fn zeta_from_bounds() {
        let l = n5();
        let emb = SublatticeEmbedding::from_labels(l, &["0", "1"]).unwrap();
        let z = zeta_map(&emb).unwrap();
        assert_eq!(z.map.table(), &[z.target.delta(), z.target.nabla()]);
        assert!(is_catb_morphism(&z.map).unwrap().ok);
    }

    #[test]
    fn zeta_from_lower_chain() {
        let l = n5();
        let emb = SublatticeEmbedding::from_labels(l.clone(), &["0", "a", "1"]).unwrap();
        let z = zeta_map(&emb).unwrap();
        // source: Δ, cg(0,a), cg(a,1), ∇ of the 3-chain
        let k = emb.sub();
        let cg_k = principal_congruence(k, 0, 1).unwrap();
        let src = z.source.position(&cg_k).unwrap();
        let image = z.target.congruence(z.map.apply(src));
        assert_eq!(
            image.labeled_blocks(&l),
            vec![vec!["0", "a", "b"], vec!["c", "1"]]
                .into_iter()
                .map(|b| b.into_iter().map(String::from).collect::<Vec<_>>())
                .collect::<Vec<_>>()
        );
        assert!(is_catb_morphism(&z.map).unwrap().ok);
    }
}
