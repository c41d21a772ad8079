use std::collections::BTreeMap;
use std::sync::Arc;

use super::Poset;
use crate::error::{Error, Result};
use crate::report::{Clause, Report};

/// A total map between finite posets, stored as an index table.
///
/// [`MonotoneMap::new`] enforces monotonicity; [`MonotoneMap::raw`] only
/// checks the table's shape so that malformed input can still be reported
/// on by [`is_catb_morphism`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotoneMap {
    source: Arc<Poset>,
    target: Arc<Poset>,
    table: Vec<usize>,
}

impl MonotoneMap {
    pub fn raw(source: Arc<Poset>, target: Arc<Poset>, table: Vec<usize>) -> Result<Self> {
        if table.len() != source.len() {
            return Err(Error::MapMismatch(format!(
                "table has {} entries for a source of size {}",
                table.len(),
                source.len()
            )));
        }
        if let Some(&bad) = table.iter().find(|&&y| y >= target.len()) {
            return Err(Error::IndexOutOfRange(bad));
        }
        Ok(MonotoneMap { source, target, table })
    }

    pub fn new(source: Arc<Poset>, target: Arc<Poset>, table: Vec<usize>) -> Result<Self> {
        let map = Self::raw(source, target, table)?;
        if let Some((x, y)) = map.monotonicity_witness() {
            return Err(Error::MapMismatch(format!(
                "not monotone: {} <= {} but images are not ordered",
                map.source.label(x),
                map.source.label(y)
            )));
        }
        Ok(map)
    }

    /// Builds a map from a label-to-label assignment; every source label must appear.
    pub fn from_labels(source: Arc<Poset>, target: Arc<Poset>, assignment: &BTreeMap<String, String>) -> Result<Self> {
        let mut table = vec![usize::MAX; source.len()];
        for (x, y) in assignment {
            table[source.index_of(x)?] = target.index_of(y)?;
        }
        if let Some(missing) = table.iter().position(|&v| v == usize::MAX) {
            return Err(Error::MapMismatch(format!(
                "no image given for `{}`",
                source.label(missing)
            )));
        }
        Self::raw(source, target, table)
    }

    pub fn identity(p: Arc<Poset>) -> Self {
        let table = (0..p.len()).collect();
        MonotoneMap {
            source: p.clone(),
            target: p,
            table,
        }
    }

    pub fn source(&self) -> &Arc<Poset> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Poset> {
        &self.target
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    /// Label-to-label view of the table.
    pub fn to_labels(&self) -> BTreeMap<String, String> {
        self.table
            .iter()
            .enumerate()
            .map(|(x, &y)| (self.source.label(x).to_string(), self.target.label(y).to_string()))
            .collect()
    }

    /// `next ∘ self`. Fails when `self`'s target is not `next`'s source.
    pub fn then(&self, next: &MonotoneMap) -> Result<MonotoneMap> {
        if self.target != next.source {
            return Err(Error::MapMismatch("composition endpoints differ".into()));
        }
        Ok(MonotoneMap {
            source: self.source.clone(),
            target: next.target.clone(),
            table: self.table.iter().map(|&y| next.table[y]).collect(),
        })
    }

    /// Same table, re-targeted at different (structurally compatible) endpoints.
    pub fn with_endpoints(&self, source: Arc<Poset>, target: Arc<Poset>) -> Result<MonotoneMap> {
        Self::raw(source, target, self.table.clone())
    }

    pub fn monotonicity_witness(&self) -> Option<(usize, usize)> {
        self.source
            .order()
            .pairs()
            .find(|&(x, y)| !self.target.le(self.table[x], self.table[y]))
    }

    pub fn is_monotone(&self) -> bool {
        self.monotonicity_witness().is_none()
    }

    pub fn is_bijective(&self) -> bool {
        if self.source.len() != self.target.len() {
            return false;
        }
        let mut seen = vec![false; self.target.len()];
        self.table.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    /// First pair `(x, y)` where `x <= y` and `f(x) <= f(y)` disagree.
    pub fn reflection_witness(&self) -> Option<(usize, usize)> {
        let n = self.source.len();
        (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .find(|&(x, y)| self.source.le(x, y) != self.target.le(self.table[x], self.table[y]))
    }

    pub fn is_order_isomorphism(&self) -> bool {
        self.is_bijective() && self.reflection_witness().is_none()
    }

    pub fn inverse(&self) -> Option<MonotoneMap> {
        if !self.is_order_isomorphism() {
            return None;
        }
        let mut table = vec![0; self.table.len()];
        for (x, &y) in self.table.iter().enumerate() {
            table[y] = x;
        }
        Some(MonotoneMap {
            source: self.target.clone(),
            target: self.source.clone(),
            table,
        })
    }
}

/// A comparable pair `lo <= hi` of a poset.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderedPair {
    lo: usize,
    hi: usize,
}

impl OrderedPair {
    pub fn new(poset: &Poset, lo: usize, hi: usize) -> Result<Self> {
        if lo >= poset.len() || hi >= poset.len() {
            return Err(Error::IndexOutOfRange(lo.max(hi)));
        }
        if !poset.le(lo, hi) {
            return Err(Error::Input(format!(
                "`{}` is not below `{}`",
                poset.label(lo),
                poset.label(hi)
            )));
        }
        Ok(OrderedPair { lo, hi })
    }

    pub fn lo(&self) -> usize {
        self.lo
    }

    pub fn hi(&self) -> usize {
        self.hi
    }

    /// All ordered pairs of `poset`, lexicographically.
    pub fn all(poset: &Poset) -> Vec<OrderedPair> {
        poset
            .order()
            .pairs()
            .map(|(lo, hi)| OrderedPair { lo, hi })
            .collect()
    }
}

/// Checks that `f` is a 0-separating `{0,1}`-preserving monotone map.
///
/// Errors only when the source or target is unbounded.
pub fn is_catb_morphism(f: &MonotoneMap) -> Result<Report> {
    let (s0, s1) = f.source.bounds()?;
    let (t0, t1) = f.target.bounds()?;
    let src = &f.source;
    let tgt = &f.target;
    let mut report = Report::new();
    for (x, y) in src.order().pairs() {
        if !tgt.le(f.apply(x), f.apply(y)) {
            report.push(
                Clause::NotMonotone,
                format!(
                    "{} <= {} but {} !<= {}",
                    src.label(x),
                    src.label(y),
                    tgt.label(f.apply(x)),
                    tgt.label(f.apply(y))
                ),
                vec![src.label(x).into(), src.label(y).into()],
            );
        }
    }
    if f.apply(s0) != t0 {
        report.push(
            Clause::ZeroNotPreserved,
            format!("0 maps to {}", tgt.label(f.apply(s0))),
            vec![src.label(s0).into()],
        );
    }
    if f.apply(s1) != t1 {
        report.push(
            Clause::OneNotPreserved,
            format!("1 maps to {}", tgt.label(f.apply(s1))),
            vec![src.label(s1).into()],
        );
    }
    for x in (0..src.len()).filter(|&x| x != s0 && f.apply(x) == t0) {
        report.push(
            Clause::NotZeroSeparating,
            format!("{} maps to 0", src.label(x)),
            vec![src.label(x).into()],
        );
    }
    Ok(report)
}
