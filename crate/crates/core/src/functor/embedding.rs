use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::{validate_functor, PosetFunctor};
use crate::error::{Error, Result};
use crate::lattice::{princ_poset, zeta_between, FiniteLattice, PrincPoset, SublatticeEmbedding};
use crate::poset::Poset;
use crate::report::{Clause, Report};

/// An assignment of `{0,1}`-sublattices of one lattice to the elements of a
/// base poset, monotone with respect to inclusion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingFunctor {
    base: Arc<Poset>,
    lattice: Arc<FiniteLattice>,
    assignment: Vec<SublatticeEmbedding>,
}

impl EmbeddingFunctor {
    /// Requires `i <= j ⇒ E(i) ⊆ E(j)`. The converse is not enforced;
    /// see [`EmbeddingFunctor::new_strict`].
    pub fn new(base: Arc<Poset>, lattice: Arc<FiniteLattice>, subsets: &[Vec<usize>]) -> Result<Self> {
        if subsets.len() != base.len() {
            return Err(Error::InvalidEmbedding(format!(
                "{} sublattices for a base of size {}",
                subsets.len(),
                base.len()
            )));
        }
        let assignment = subsets
            .iter()
            .map(|s| SublatticeEmbedding::from_subset(lattice.clone(), s))
            .collect::<Result<Vec<_>>>()?;
        for (i, j) in base.order().pairs() {
            if !assignment[i].is_subset_of(&assignment[j]) {
                return Err(Error::InvalidEmbedding(format!(
                    "{} <= {} but E({}) is not contained in E({})",
                    base.label(i),
                    base.label(j),
                    base.label(i),
                    base.label(j)
                )));
            }
        }
        Ok(EmbeddingFunctor {
            base,
            lattice,
            assignment,
        })
    }

    /// As [`EmbeddingFunctor::new`], additionally requiring `E(i) ⊆ E(j) ⇒ i <= j`.
    pub fn new_strict(base: Arc<Poset>, lattice: Arc<FiniteLattice>, subsets: &[Vec<usize>]) -> Result<Self> {
        let e = Self::new(base, lattice, subsets)?;
        let report = e.order_embedding_report();
        if !report.ok {
            return Err(Error::InvalidEmbedding(report.to_string()));
        }
        Ok(e)
    }

    /// Constant assignment of the whole lattice.
    pub fn constant(base: Arc<Poset>, lattice: Arc<FiniteLattice>) -> Self {
        let all: Vec<usize> = (0..lattice.len()).collect();
        Self::new(base.clone(), lattice, &vec![all; base.len()]).expect("constant assignment is monotone")
    }

    pub fn base(&self) -> &Arc<Poset> {
        &self.base
    }

    pub fn lattice(&self) -> &Arc<FiniteLattice> {
        &self.lattice
    }

    pub fn assignment(&self) -> &[SublatticeEmbedding] {
        &self.assignment
    }

    pub fn sublattice(&self, i: usize) -> &SublatticeEmbedding {
        &self.assignment[i]
    }

    /// Reports base pairs `i !<= j` whose sublattices are nevertheless nested.
    pub fn order_embedding_report(&self) -> Report {
        let mut report = Report::new();
        let n = self.base.len();
        for i in 0..n {
            for j in 0..n {
                if !self.base.le(i, j) && self.assignment[i].is_subset_of(&self.assignment[j]) {
                    report.push(
                        Clause::NotIsomorphism,
                        "nested sublattices over incomparable or reversed base elements",
                        vec![self.base.label(i).to_string(), self.base.label(j).to_string()],
                    );
                }
            }
        }
        report
    }
}

/// The composite `Princ ∘ E`: objects `Princ(E(j))`, arrows the induced maps.
pub fn princ_functor(e: &EmbeddingFunctor) -> Result<PosetFunctor> {
    let mut cache: HashMap<Vec<usize>, Arc<PrincPoset>> = HashMap::new();
    let princ: Vec<Arc<PrincPoset>> = e
        .assignment
        .iter()
        .map(|s| {
            cache
                .entry(s.subset())
                .or_insert_with(|| Arc::new(princ_poset(s.sub().clone())))
                .clone()
        })
        .collect();
    let mut morphisms = BTreeMap::new();
    for (i, j) in e.base.order().pairs() {
        let inclusion = SublatticeEmbedding::inclusion(&e.assignment[i], &e.assignment[j])?;
        let zeta = zeta_between(princ[i].clone(), princ[j].clone(), &inclusion)?;
        morphisms.insert((i, j), zeta.map);
    }
    let objects = princ.iter().map(|p| p.poset().clone()).collect();
    let functor = PosetFunctor::new(e.base.clone(), objects, morphisms)?;
    let report = validate_functor(&functor);
    if !report.ok && e.base.is_bounded() {
        return Err(Error::Invariant(format!("Princ functor fails the functor laws: {report}")));
    }
    Ok(functor)
}
