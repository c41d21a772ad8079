//! Exhaustive search for a representing lattice among small lattices.

use std::sync::Arc;
use std::time::{Duration, Instant};

use super::{enumerate_small_lattices, OracleBudget, MAX_ENUMERATION_SIZE};
use crate::error::{Error, Result};
use crate::functor::{check_representation, validate_functor, EmbeddingFunctor, NaturalIso, PosetFunctor};
use crate::lattice::{enumerate_01_sublattices, princ_poset, FiniteLattice, SublatticeEmbedding};
use crate::poset::find_order_isomorphism;

/// A lattice, an embedding functor into it, and a natural isomorphism
/// `F -> Princ ∘ E`.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub lattice: Arc<FiniteLattice>,
    pub embedding: EmbeddingFunctor,
    pub iso: NaturalIso,
}

#[derive(Clone, Debug)]
pub struct SearchReport {
    pub found: Option<Certificate>,
    pub lattices_examined: usize,
    pub candidates_examined: usize,
    /// Largest lattice size fully or partially scanned.
    pub max_size_searched: usize,
    pub elapsed: Duration,
    pub budget_exceeded: bool,
    pub note: String,
}

const ABSENCE_NOTE: &str = "no representation among the lattices searched; this is not a counterexample, \
                            a representing lattice may exceed the search bound";

/// Scans lattices by increasing size and, for each, every inclusion-monotone
/// assignment of `{0,1}`-sublattices whose principal-congruence posets match
/// the objects of `f`, returning the first assignment admitting a natural
/// isomorphism.
///
/// Running out of candidates or time is not an error: the partial report has
/// `budget_exceeded` set.
pub fn search_representation(f: &PosetFunctor, budget: &OracleBudget) -> Result<SearchReport> {
    let report = validate_functor(f);
    if !report.ok {
        return Err(Error::InvalidFunctor(report));
    }
    let start = Instant::now();
    let base = f.base();
    let order = base.linear_extension();
    let mut out = SearchReport {
        found: None,
        lattices_examined: 0,
        candidates_examined: 0,
        max_size_searched: 0,
        elapsed: Duration::ZERO,
        budget_exceeded: false,
        note: String::new(),
    };
    let max_size = budget.max_carrier_size.min(MAX_ENUMERATION_SIZE);
    'sizes: for size in 1..=max_size {
        out.max_size_searched = size;
        for lattice in enumerate_small_lattices(size)? {
            out.lattices_examined += 1;
            let lattice = Arc::new(lattice);
            let subs: Vec<SublatticeEmbedding> = enumerate_01_sublattices(lattice.clone(), None).collect();
            // sublattices usable for each object: Princ must be isomorphic to it
            let usable: Vec<Vec<usize>> = (0..base.len())
                .map(|j| {
                    (0..subs.len())
                        .filter(|&s| {
                            let princ = princ_poset(subs[s].sub().clone());
                            find_order_isomorphism(f.object(j).clone(), princ.poset().clone()).is_some()
                        })
                        .collect()
                })
                .collect();
            if usable.iter().any(Vec::is_empty) {
                continue;
            }
            let mut choice = vec![0usize; order.len()];
            let mut assigned: Vec<Option<usize>> = vec![None; base.len()];
            let mut depth = 0;
            loop {
                if depth == order.len() {
                    out.candidates_examined += 1;
                    let subsets: Vec<Vec<usize>> =
                        (0..base.len()).map(|j| subs[assigned[j].unwrap()].subset()).collect();
                    let e = EmbeddingFunctor::new(base.clone(), lattice.clone(), &subsets)?;
                    if let Some(iso) = check_representation(f, &lattice, &e)? {
                        out.found = Some(Certificate {
                            lattice: lattice.clone(),
                            embedding: e,
                            iso,
                        });
                        break 'sizes;
                    }
                    if out.candidates_examined >= budget.max_candidates || start.elapsed() >= budget.time_limit {
                        out.budget_exceeded = true;
                        break 'sizes;
                    }
                    depth -= 1;
                    assigned[order[depth]] = None;
                    continue;
                }
                let k = order[depth];
                let mut placed = false;
                while choice[depth] < usable[k].len() {
                    let s = usable[k][choice[depth]];
                    choice[depth] += 1;
                    let fits = order[..depth].iter().all(|&i| {
                        let t = assigned[i].unwrap();
                        (!base.le(i, k) || subs[t].is_subset_of(&subs[s]))
                            && (!base.le(k, i) || subs[s].is_subset_of(&subs[t]))
                    });
                    if fits {
                        assigned[k] = Some(s);
                        placed = true;
                        break;
                    }
                }
                if placed {
                    depth += 1;
                    if depth < order.len() {
                        choice[depth] = 0;
                    }
                } else if depth == 0 {
                    break;
                } else {
                    depth -= 1;
                    assigned[order[depth]] = None;
                }
            }
            if start.elapsed() >= budget.time_limit {
                out.budget_exceeded = true;
                break 'sizes;
            }
        }
    }
    out.elapsed = start.elapsed();
    out.note = match (&out.found, out.budget_exceeded) {
        (Some(c), _) => format!("representation found at lattice size {}", c.lattice.len()),
        (None, true) => format!("budget exceeded; {ABSENCE_NOTE}"),
        (None, false) => ABSENCE_NOTE.to_string(),
    };
    Ok(out)
}
