//! Functors from a bounded poset (viewed as a category) into bounded posets
//! with 0-separating `{0,1}`-preserving monotone maps.

mod colimit;
mod embedding;
mod normalize;
mod represent;

use std::collections::BTreeMap;
use std::sync::Arc;

pub use colimit::{colimit_quasiorder, kappa_map, ColimitData, Kappa};
pub use embedding::{princ_functor, EmbeddingFunctor};
pub use normalize::{is_normalized, normalize_functor, Normalization};
pub use represent::{
    check_representation, check_single_morphism_representation, explain_representation, find_natural_iso,
    verify_natural_iso, NaturalIso,
    RepresentationOutcome,
};

use crate::error::{Error, Result};
use crate::poset::{is_catb_morphism, MonotoneMap, Poset};
use crate::report::{Clause, Report};

/// Object and morphism assignment over a base poset `S`.
///
/// `morphisms` is keyed by base index pairs `(i, j)` with `i <= j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosetFunctor {
    base: Arc<Poset>,
    objects: Vec<Arc<Poset>>,
    morphisms: BTreeMap<(usize, usize), MonotoneMap>,
}

impl PosetFunctor {
    /// Assembles a functor; identity morphisms are filled in when absent.
    ///
    /// Only shapes are checked here; use [`validate_functor`] for the laws.
    pub fn new(
        base: Arc<Poset>,
        objects: Vec<Arc<Poset>>,
        mut morphisms: BTreeMap<(usize, usize), MonotoneMap>,
    ) -> Result<Self> {
        if objects.len() != base.len() {
            return Err(Error::Input(format!(
                "{} objects for a base of size {}",
                objects.len(),
                base.len()
            )));
        }
        if let Some(&(i, j)) = morphisms.keys().find(|&&(i, j)| i >= base.len() || j >= base.len()) {
            return Err(Error::IndexOutOfRange(i.max(j)));
        }
        for (i, obj) in objects.iter().enumerate() {
            morphisms
                .entry((i, i))
                .or_insert_with(|| MonotoneMap::identity(obj.clone()));
        }
        Ok(PosetFunctor {
            base,
            objects,
            morphisms,
        })
    }

    pub fn base(&self) -> &Arc<Poset> {
        &self.base
    }

    pub fn objects(&self) -> &[Arc<Poset>] {
        &self.objects
    }

    pub fn object(&self, i: usize) -> &Arc<Poset> {
        &self.objects[i]
    }

    pub fn morphism(&self, i: usize, j: usize) -> Option<&MonotoneMap> {
        self.morphisms.get(&(i, j))
    }

    pub fn morphisms(&self) -> &BTreeMap<(usize, usize), MonotoneMap> {
        &self.morphisms
    }

    /// The morphism for `i <= j`; panics when absent, so only call on validated functors.
    pub fn psi(&self, i: usize, j: usize) -> &MonotoneMap {
        self.morphisms
            .get(&(i, j))
            .unwrap_or_else(|| panic!("no morphism {i} -> {j}"))
    }

    /// Comparable base pairs `(i, j)`, `i <= j`, in lexicographic order.
    pub fn arrows(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.base.order().pairs()
    }

    fn base_label(&self, i: usize) -> String {
        self.base.label(i).to_string()
    }
}

/// Checks boundedness of base and objects, that every arrow carries a
/// Cat_B morphism with the right endpoints, and the identity and
/// composition laws.
pub fn validate_functor(f: &PosetFunctor) -> Report {
    let mut report = Report::new();
    if let Err(e) = f.base.bounds() {
        report.push(Clause::Unbounded, format!("base: {e}"), vec![]);
    }
    for (i, obj) in f.objects.iter().enumerate() {
        if let Err(e) = obj.bounds() {
            report.push(Clause::Unbounded, format!("object {}: {e}", f.base_label(i)), vec![f.base_label(i)]);
        }
    }
    for &(i, j) in f.morphisms.keys() {
        if !f.base.le(i, j) {
            report.push(
                Clause::UnexpectedMorphism,
                format!("{} !<= {} in the base", f.base_label(i), f.base_label(j)),
                vec![f.base_label(i), f.base_label(j)],
            );
        }
    }
    let mut usable = true;
    for (i, j) in f.arrows() {
        let (li, lj) = (f.base_label(i), f.base_label(j));
        let Some(psi) = f.morphisms.get(&(i, j)) else {
            report.push(Clause::MissingMorphism, format!("no morphism {li} -> {lj}"), vec![li, lj]);
            usable = false;
            continue;
        };
        if psi.source() != &f.objects[i] || psi.target() != &f.objects[j] {
            report.push(
                Clause::EndpointMismatch,
                format!("morphism {li} -> {lj} does not connect the assigned objects"),
                vec![li, lj],
            );
            usable = false;
            continue;
        }
        if let Ok(r) = is_catb_morphism(psi) {
            for mut v in r.violations {
                v.detail = format!("{li} -> {lj}: {}", v.detail);
                let mut w = vec![li.clone(), lj.clone()];
                w.append(&mut v.witness);
                v.witness = w;
                report.ok = false;
                report.violations.push(v);
            }
        }
        if i == j {
            let obj = &f.objects[i];
            if let Some(x) = (0..obj.len()).find(|&x| psi.apply(x) != x) {
                report.push(
                    Clause::IdentityLaw,
                    format!("{li} -> {li} moves {}", obj.label(x)),
                    vec![li, obj.label(x).to_string()],
                );
            }
        }
    }
    if !usable {
        return report;
    }
    let n = f.base.len();
    for (i, j) in f.arrows() {
        for k in (0..n).filter(|&k| f.base.le(j, k)) {
            if i == j || j == k {
                continue;
            }
            let (ij, jk, ik) = (f.psi(i, j), f.psi(j, k), f.psi(i, k));
            let src = &f.objects[i];
            if let Some(x) = (0..src.len()).find(|&x| jk.apply(ij.apply(x)) != ik.apply(x)) {
                report.push(
                    Clause::CompositionLaw,
                    format!(
                        "composite {} -> {} -> {} differs from direct map at {}",
                        f.base_label(i),
                        f.base_label(j),
                        f.base_label(k),
                        src.label(x)
                    ),
                    vec![f.base_label(i), f.base_label(j), f.base_label(k), src.label(x).to_string()],
                );
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(p: Poset) -> Arc<Poset> {
        Arc::new(p)
    }

    fn single(i: usize, j: usize, m: MonotoneMap) -> BTreeMap<(usize, usize), MonotoneMap> {
        BTreeMap::from([((i, j), m)])
    }

    #[test]
    fn one_object_identity_is_valid() {
        let f = PosetFunctor::new(arc(Poset::chain(1)), vec![arc(Poset::chain(2))], BTreeMap::new()).unwrap();
        let r = validate_functor(&f);
        assert!(r.ok, "{r}");
    }

    #[test]
    fn non_separating_arrow_reported() {
        let sq = arc(Poset::bounded_antichain(2));
        let c2 = arc(Poset::chain(2));
        let psi = MonotoneMap::new(sq.clone(), c2.clone(), vec![0, 0, 1, 1]).unwrap();
        let f = PosetFunctor::new(arc(Poset::chain(2)), vec![sq, c2], single(0, 1, psi)).unwrap();
        let r = validate_functor(&f);
        assert!(r.has(Clause::NotZeroSeparating));
        let v = r.violations.iter().find(|v| v.clause == Clause::NotZeroSeparating).unwrap();
        assert_eq!(v.witness, vec!["0", "1", "a0"]);
    }

    #[test]
    fn composition_violation_reported() {
        // base 0 < 1 < 2; objects 3-chains; ψ01 = ψ12 = id, ψ02 collapses the middle upward
        let c3 = arc(Poset::chain(3));
        let id = MonotoneMap::identity(c3.clone());
        let up = MonotoneMap::new(c3.clone(), c3.clone(), vec![0, 2, 2]).unwrap();
        let morphisms = BTreeMap::from([((0, 1), id.clone()), ((1, 2), id), ((0, 2), up)]);
        let f = PosetFunctor::new(arc(Poset::chain(3)), vec![c3.clone(), c3.clone(), c3], morphisms).unwrap();
        let r = validate_functor(&f);
        assert!(!r.ok);
        let v = r.violations.iter().find(|v| v.clause == Clause::CompositionLaw).unwrap();
        assert_eq!(v.witness, vec!["0", "1", "2", "1"]);
    }

    #[test]
    fn missing_and_unexpected_morphisms() {
        let c2 = arc(Poset::chain(2));
        let base = arc(Poset::bounded_antichain(2));
        let objects = vec![c2.clone(); 4];
        let id = MonotoneMap::identity(c2);
        let f = PosetFunctor::new(base, objects, single(1, 2, id)).unwrap();
        let r = validate_functor(&f);
        assert!(r.has(Clause::MissingMorphism));
        assert!(r.has(Clause::UnexpectedMorphism));
    }

    #[test]
    fn unbounded_base_reported() {
        let c2 = arc(Poset::chain(2));
        let base = arc(Poset::new(&["p", "q"], &[]).unwrap());
        let f = PosetFunctor::new(base, vec![c2.clone(), c2], BTreeMap::new()).unwrap();
        assert!(validate_functor(&f).has(Clause::Unbounded));
    }

    #[test]
    fn non_identity_on_loop_reported() {
        let sq = arc(Poset::bounded_antichain(2));
        let swap = MonotoneMap::new(sq.clone(), sq.clone(), vec![0, 2, 1, 3]).unwrap();
        let f = PosetFunctor::new(arc(Poset::chain(1)), vec![sq], single(0, 0, swap)).unwrap();
        assert!(validate_functor(&f).has(Clause::IdentityLaw));
    }
}
