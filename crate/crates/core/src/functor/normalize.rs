//! Relabeling a functor so that all objects share the bound labels `0`, `1`
//! and have pairwise disjoint interiors.

use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use super::{validate_functor, PosetFunctor};
use crate::error::{Error, Result};
use crate::poset::MonotoneMap;
use crate::report::{Clause, Report};

pub const BOTTOM_LABEL: &str = "0";
pub const TOP_LABEL: &str = "1";

#[derive(Clone, Debug)]
pub struct Normalization {
    pub functor: PosetFunctor,
    /// `alpha[i]`: the relabeling isomorphism `F(i) -> F'(i)`.
    pub alpha: Vec<MonotoneMap>,
    /// Set when every object has a single element and `functor` is the input unchanged.
    pub trivial: bool,
}

/// Checks that for distinct base elements `i`, `j` the objects share their
/// bound labels and have exactly those two labels in common.
pub fn is_normalized(f: &PosetFunctor) -> Report {
    let mut report = Report::new();
    let label_sets: Vec<HashSet<&str>> = f
        .objects()
        .iter()
        .map(|p| p.carrier().labels().iter().map(String::as_str).collect())
        .collect();
    let bounds: Vec<Option<(&str, &str)>> = f
        .objects()
        .iter()
        .map(|p| p.bounds().ok().map(|(b, t)| (p.label(b), p.label(t))))
        .collect();
    let n = f.objects().len();
    for i in 0..n {
        for j in i + 1..n {
            let (li, lj) = (f.base().label(i).to_string(), f.base().label(j).to_string());
            match (bounds[i], bounds[j]) {
                (Some(bi), Some(bj)) if bi == bj => {}
                _ => {
                    report.push(Clause::NotNormalized, "bounds differ", vec![li.clone(), lj.clone()]);
                    continue;
                }
            }
            let shared = label_sets[i].intersection(&label_sets[j]).count();
            if shared != 2 {
                report.push(
                    Clause::NotNormalized,
                    format!("objects share {shared} labels, expected 2"),
                    vec![li, lj],
                );
            }
        }
    }
    report
}

/// Produces a naturally isomorphic functor satisfying [`is_normalized`].
///
/// Bounds are renamed to `0` and `1`; every interior element `x` of the
/// object at base element `i` becomes `x@i`. Already normalized functors are
/// returned unchanged with identity `alpha`; so are functors with a singleton
/// object, which also get `trivial` set.
pub fn normalize_functor(f: &PosetFunctor) -> Result<Normalization> {
    let report = validate_functor(f);
    if !report.ok {
        return Err(Error::InvalidFunctor(report));
    }
    let trivial = f.objects().iter().any(|p| p.len() < 2);
    if trivial || is_normalized(f).ok {
        let alpha = f.objects().iter().map(|p| MonotoneMap::identity(p.clone())).collect();
        return Ok(Normalization {
            functor: f.clone(),
            alpha,
            trivial,
        });
    }
    let mut objects = Vec::with_capacity(f.objects().len());
    let mut alpha = Vec::with_capacity(f.objects().len());
    for (i, p) in f.objects().iter().enumerate() {
        let (bottom, top) = p.bounds()?;
        let tag = f.base().label(i);
        let labels: Vec<String> = (0..p.len())
            .map(|x| match x {
                x if x == bottom => BOTTOM_LABEL.to_string(),
                x if x == top => TOP_LABEL.to_string(),
                x => format!("{}@{tag}", p.label(x)),
            })
            .collect();
        let renamed = Arc::new(p.relabeled(labels)?);
        alpha.push(MonotoneMap::new(p.clone(), renamed.clone(), (0..p.len()).collect())?);
        objects.push(renamed);
    }
    let mut morphisms = BTreeMap::new();
    for (&(i, j), psi) in f.morphisms() {
        let inv = alpha[i].inverse().expect("relabeling is an isomorphism");
        morphisms.insert((i, j), inv.then(psi)?.then(&alpha[j])?);
    }
    let functor = PosetFunctor::new(f.base().clone(), objects, morphisms)?;
    let predicate = is_normalized(&functor);
    if !predicate.ok {
        return Err(Error::Input(format!("tagged labels collide: {predicate}")));
    }
    for (i, j) in f.arrows() {
        let left = alpha[i].then(functor.psi(i, j))?;
        let right = f.psi(i, j).then(&alpha[j])?;
        if left != right {
            return Err(Error::Invariant(format!("normalization square {i} -> {j} does not commute")));
        }
    }
    let check = validate_functor(&functor);
    if !check.ok {
        return Err(Error::Invariant(format!("normalized functor invalid: {check}")));
    }
    Ok(Normalization {
        functor,
        alpha,
        trivial: false,
    })
}
