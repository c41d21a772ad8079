//! Searching for natural isomorphisms `F -> Princ ∘ E`.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::{princ_functor, validate_functor, EmbeddingFunctor, PosetFunctor};
use crate::error::{Error, Result};
use crate::lattice::{FiniteLattice, SublatticeEmbedding};
use crate::poset::{enumerate_isomorphisms, MonotoneMap, Poset};
use crate::report::{Clause, Report};

/// Per-object order isomorphisms `ξ_j: F(j) -> G(j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaturalIso {
    pub components: Vec<MonotoneMap>,
}

#[derive(Clone, Debug)]
pub enum RepresentationOutcome {
    Found(NaturalIso),
    /// `F(j)` and `G(j)` are not order isomorphic.
    NoObjectIsomorphism { object: usize },
    /// Every object admits isomorphisms, but no family makes all squares commute.
    NoIsomorphismFamily,
}

impl RepresentationOutcome {
    pub fn into_option(self) -> Option<NaturalIso> {
        match self {
            RepresentationOutcome::Found(xi) => Some(xi),
            _ => None,
        }
    }

    pub fn reason(&self) -> &'static str {
        match self {
            RepresentationOutcome::Found(_) => "found",
            RepresentationOutcome::NoObjectIsomorphism { .. } => "no isomorphism family: objects not isomorphic",
            RepresentationOutcome::NoIsomorphismFamily => "no isomorphism family",
        }
    }
}

/// Checks every component is an isomorphism `F(j) -> G(j)` and every square
/// `G(i<=j) ∘ ξ_i = ξ_j ∘ F(i<=j)` commutes.
pub fn verify_natural_iso(f: &PosetFunctor, g: &PosetFunctor, xi: &NaturalIso) -> Report {
    let mut report = Report::new();
    let label = |i: usize| f.base().label(i).to_string();
    if xi.components.len() != f.objects().len() {
        report.push(Clause::EndpointMismatch, "wrong number of components", vec![]);
        return report;
    }
    for (j, c) in xi.components.iter().enumerate() {
        if c.source() != f.object(j) || c.target() != g.object(j) {
            report.push(Clause::EndpointMismatch, "component endpoints differ from the functors", vec![label(j)]);
        } else if !c.is_order_isomorphism() {
            report.push(Clause::NotIsomorphism, "component is not an order isomorphism", vec![label(j)]);
        }
    }
    if !report.ok {
        return report;
    }
    for (i, j) in f.arrows() {
        if let Some(x) = square_failure(f, g, &xi.components[i], &xi.components[j], i, j) {
            report.push(
                Clause::SquareNotCommuting,
                format!("square {} -> {} fails", label(i), label(j)),
                vec![label(i), label(j), f.object(i).label(x).to_string()],
            );
        }
    }
    report
}

fn square_failure(
    f: &PosetFunctor,
    g: &PosetFunctor,
    xi_i: &MonotoneMap,
    xi_j: &MonotoneMap,
    i: usize,
    j: usize,
) -> Option<usize> {
    let (psi, zeta) = (f.psi(i, j), g.psi(i, j));
    (0..f.object(i).len()).find(|&x| zeta.apply(xi_i.apply(x)) != xi_j.apply(psi.apply(x)))
}

/// Backtracking search for a natural isomorphism `f -> g` over a common base.
///
/// Objects are visited in the base's least-index linear extension;
/// candidates for each object come in lexicographic order, and a square is
/// checked as soon as both of its corners are assigned.
pub fn find_natural_iso(f: &PosetFunctor, g: &PosetFunctor) -> Result<RepresentationOutcome> {
    if f.base() != g.base() {
        return Err(Error::BaseMismatch("functors have different bases".into()));
    }
    let base = f.base();
    let order = base.linear_extension();
    let mut candidates: Vec<Vec<MonotoneMap>> = vec![Vec::new(); base.len()];
    for &j in &order {
        candidates[j] = enumerate_isomorphisms(f.object(j).clone(), g.object(j).clone()).collect();
        if candidates[j].is_empty() {
            return Ok(RepresentationOutcome::NoObjectIsomorphism { object: j });
        }
    }
    let n = order.len();
    let mut choice = vec![0usize; n];
    let mut assigned: Vec<Option<usize>> = vec![None; base.len()];
    let mut depth = 0;
    loop {
        if depth == n {
            let components = (0..base.len())
                .map(|j| candidates[j][assigned[j].unwrap()].clone())
                .collect();
            return Ok(RepresentationOutcome::Found(NaturalIso { components }));
        }
        let k = order[depth];
        let mut placed = false;
        while choice[depth] < candidates[k].len() {
            let c = choice[depth];
            choice[depth] += 1;
            let xi_k = &candidates[k][c];
            let consistent = order[..depth].iter().all(|&i| {
                let xi_i = &candidates[i][assigned[i].unwrap()];
                (!base.le(i, k) || square_failure(f, g, xi_i, xi_k, i, k).is_none())
                    && (!base.le(k, i) || square_failure(f, g, xi_k, xi_i, k, i).is_none())
            });
            if consistent {
                assigned[k] = Some(c);
                placed = true;
                break;
            }
        }
        if placed {
            depth += 1;
            if depth < n {
                choice[depth] = 0;
            }
            continue;
        }
        if depth == 0 {
            return Ok(RepresentationOutcome::NoIsomorphismFamily);
        }
        assigned[k] = None;
        depth -= 1;
        assigned[order[depth]] = None;
    }
}

/// Violations that leave no functor to compare; law violations only make the answer negative.
const STRUCTURAL: [Clause; 4] = [
    Clause::Unbounded,
    Clause::MissingMorphism,
    Clause::UnexpectedMorphism,
    Clause::EndpointMismatch,
];

/// Looks for a natural isomorphism `f -> Princ ∘ e` with `e` mapping into `lattice`.
///
/// `Princ ∘ e` always satisfies the functor laws, so an `f` whose arrows are
/// not Cat_B morphisms (or break the laws) simply has no natural isomorphism.
pub fn check_representation(
    f: &PosetFunctor,
    lattice: &FiniteLattice,
    e: &EmbeddingFunctor,
) -> Result<Option<NaturalIso>> {
    Ok(explain_representation(f, lattice, e)?.into_option())
}

/// [`check_representation`] with the reason for a negative answer.
pub fn explain_representation(
    f: &PosetFunctor,
    lattice: &FiniteLattice,
    e: &EmbeddingFunctor,
) -> Result<RepresentationOutcome> {
    if f.base() != e.base() {
        return Err(Error::BaseMismatch("functor and embedding functor have different bases".into()));
    }
    if e.lattice().as_ref() != lattice {
        return Err(Error::BaseMismatch("embedding functor maps into a different lattice".into()));
    }
    let report = validate_functor(f);
    if report.violations.iter().any(|v| STRUCTURAL.contains(&v.clause)) {
        return Err(Error::InvalidFunctor(report));
    }
    let g = princ_functor(e)?;
    find_natural_iso(f, &g)
}

/// Representability of a single Cat_B morphism `ψ: P0 -> P1` through a
/// `{0,1}`-sublattice `L0` of `L1`, returning `(ξ0, ξ1)`.
pub fn check_single_morphism_representation(
    psi: &MonotoneMap,
    l0: &SublatticeEmbedding,
) -> Result<Option<(MonotoneMap, MonotoneMap)>> {
    psi.source().bounds()?;
    psi.target().bounds()?;
    let base = Arc::new(Poset::chain(2));
    let f = PosetFunctor::new(
        base.clone(),
        vec![psi.source().clone(), psi.target().clone()],
        BTreeMap::from([((0, 1), psi.clone())]),
    )?;
    let lattice = l0.ambient().clone();
    let e = EmbeddingFunctor::new(base, lattice.clone(), &[l0.subset(), (0..lattice.len()).collect()])?;
    Ok(check_representation(&f, &lattice, &e)?.map(|xi| {
        let mut it = xi.components.into_iter();
        (it.next().unwrap(), it.next().unwrap())
    }))
}
