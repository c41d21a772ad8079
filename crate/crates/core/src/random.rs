//! Seeded generators for random bounded posets and valid functors.
//!
//! A functor is built one base element at a time in a linear extension of
//! the base. For each new element `j`, the maps out of its lower covers are
//! chosen jointly by randomized backtracking under the Cat_B constraints
//! (bounds, 0-separation, monotonicity) and the requirement that all paths
//! into `j` agree. The "everything nonzero goes to the top" map always
//! satisfies these, so the search cannot fail; it falls back to that map if
//! the step limit is hit. Remaining arrows are composites through a cover.
//! Everything is driven by one `ChaCha8Rng`, so a seed reproduces a functor.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::functor::{normalize_functor, PosetFunctor};
use crate::poset::{Carrier, MonotoneMap, Poset};

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random bounded poset on `size` elements: bottom first, top last, interior
/// comparabilities drawn with probability `density` along the index order.
pub fn random_bounded_poset<R: Rng>(rng: &mut R, size: usize, density: f64, labels: Vec<String>) -> Poset {
    assert!(size >= 1 && labels.len() == size);
    let carrier = Arc::new(Carrier::new(labels).expect("distinct labels"));
    let mut le = Vec::new();
    if size >= 2 {
        let top = size - 1;
        le.push((0, top));
        for x in 1..top {
            le.push((0, x));
            le.push((x, top));
            for y in x + 1..top {
                if rng.gen_bool(density) {
                    le.push((x, y));
                }
            }
        }
    }
    Poset::from_indices(carrier, &le).expect("index-increasing relation is antisymmetric")
}

fn object_labels(size: usize) -> Vec<String> {
    match size {
        1 => vec!["0".into()],
        _ => std::iter::once("0".to_string())
            .chain((1..size - 1).map(|i| format!("p{i}")))
            .chain(std::iter::once("1".to_string()))
            .collect(),
    }
}

#[derive(Clone, Debug)]
pub struct FunctorShape {
    pub max_base: usize,
    pub min_object: usize,
    pub max_object: usize,
    pub density: f64,
}

impl Default for FunctorShape {
    fn default() -> Self {
        FunctorShape {
            max_base: 4,
            min_object: 2,
            max_object: 5,
            density: 0.4,
        }
    }
}

const STEP_LIMIT: usize = 20_000;

struct CoverSearch<'a, R> {
    rng: &'a mut R,
    target: &'a Poset,
    covers: Vec<usize>,
    sources: Vec<Arc<Poset>>,
    /// Variables `(cover slot, element)` in assignment order.
    vars: Vec<(usize, usize)>,
    /// Pairs of (slot, element) that must share a value: images of one element through two covers.
    ties: Vec<((usize, usize), (usize, usize))>,
    values: Vec<Vec<Option<usize>>>,
    steps: usize,
}

impl<R: Rng> CoverSearch<'_, R> {
    fn admissible(&self, slot: usize, x: usize, y: usize) -> bool {
        let src = &self.sources[slot];
        let (s0, s1) = src.bounds().unwrap();
        let (t0, t1) = self.target.bounds().unwrap();
        if (x == s0) != (y == t0) || (x == s1 && y != t1) {
            return false;
        }
        let vals = &self.values[slot];
        for (z, v) in vals.iter().enumerate() {
            if let Some(v) = *v {
                if (src.le(z, x) && !self.target.le(v, y)) || (src.le(x, z) && !self.target.le(y, v)) {
                    return false;
                }
            }
        }
        self.ties.iter().all(|&(a, b)| {
            let other = if a == (slot, x) {
                b
            } else if b == (slot, x) {
                a
            } else {
                return true;
            };
            self.values[other.0][other.1].is_none_or(|v| v == y)
        })
    }

    fn solve(&mut self, depth: usize) -> bool {
        if depth == self.vars.len() {
            return true;
        }
        self.steps += 1;
        if self.steps > STEP_LIMIT {
            return false;
        }
        let (slot, x) = self.vars[depth];
        let mut options: Vec<usize> = (0..self.target.len()).collect();
        options.shuffle(self.rng);
        for y in options {
            if self.admissible(slot, x, y) {
                self.values[slot][x] = Some(y);
                if self.solve(depth + 1) {
                    return true;
                }
                self.values[slot][x] = None;
            }
        }
        false
    }
}

/// A random valid functor with the given shape.
pub fn random_functor<R: Rng>(rng: &mut R, shape: &FunctorShape) -> PosetFunctor {
    let base_size = rng.gen_range(1..=shape.max_base);
    let base_labels = (0..base_size).map(|i| format!("s{i}")).collect();
    let base = Arc::new(random_bounded_poset(rng, base_size, 0.5, base_labels));
    let n = base.len();
    let mut objects: Vec<Option<Arc<Poset>>> = vec![None; n];
    let mut morphisms: BTreeMap<(usize, usize), MonotoneMap> = BTreeMap::new();
    let covers = base.covers();
    for j in base.linear_extension() {
        let size = rng.gen_range(shape.min_object..=shape.max_object);
        let pj = Arc::new(random_bounded_poset(rng, size, shape.density, object_labels(size)));
        objects[j] = Some(pj.clone());
        morphisms.insert((j, j), MonotoneMap::identity(pj.clone()));
        let lower: Vec<usize> = covers.iter().filter(|&&(_, b)| b == j).map(|&(a, _)| a).collect();
        if lower.is_empty() {
            continue;
        }
        let sources: Vec<Arc<Poset>> = lower.iter().map(|&c| objects[c].clone().unwrap()).collect();
        let mut vars = Vec::new();
        for (slot, src) in sources.iter().enumerate() {
            vars.extend(src.linear_extension().into_iter().map(|x| (slot, x)));
        }
        let mut ties = Vec::new();
        for k in (0..n).filter(|&k| base.lt(k, j)) {
            let through: Vec<(usize, usize)> = lower
                .iter()
                .enumerate()
                .filter(|&(_, &c)| base.le(k, c))
                .map(|(slot, &c)| (slot, c))
                .collect();
            for w in through.windows(2) {
                let ((sa, ca), (sb, cb)) = (w[0], w[1]);
                let pk = objects[k].as_ref().unwrap();
                for z in 0..pk.len() {
                    ties.push(((sa, morphisms[&(k, ca)].apply(z)), (sb, morphisms[&(k, cb)].apply(z))));
                }
            }
        }
        let values = sources.iter().map(|s| vec![None; s.len()]).collect();
        let mut search = CoverSearch {
            rng: &mut *rng,
            target: &pj,
            covers: lower.clone(),
            sources: sources.clone(),
            vars,
            ties,
            values,
            steps: 0,
        };
        let tables: Vec<Vec<usize>> = if search.solve(0) {
            search.values.iter().map(|v| v.iter().map(|y| y.unwrap()).collect()).collect()
        } else {
            let (t0, t1) = pj.bounds().unwrap();
            sources
                .iter()
                .map(|s| (0..s.len()).map(|x| if Some(x) == s.bottom() { t0 } else { t1 }).collect())
                .collect()
        };
        for (slot, &c) in search.covers.iter().enumerate() {
            let m = MonotoneMap::new(sources[slot].clone(), pj.clone(), tables[slot].clone())
                .expect("constraint search yields monotone maps");
            morphisms.insert((c, j), m);
        }
        for k in (0..n).filter(|&k| base.lt(k, j) && !lower.contains(&k)) {
            let c = *lower.iter().find(|&&c| base.le(k, c)).unwrap();
            let composite = morphisms[&(k, c)].then(&morphisms[&(c, j)]).unwrap();
            morphisms.insert((k, j), composite);
        }
    }
    let objects = objects.into_iter().map(Option::unwrap).collect();
    PosetFunctor::new(base, objects, morphisms).expect("generated functor has a consistent shape")
}

/// [`random_functor`] followed by normalization.
pub fn random_normalized_functor<R: Rng>(rng: &mut R, shape: &FunctorShape) -> PosetFunctor {
    normalize_functor(&random_functor(rng, shape))
        .expect("generated functors are valid")
        .functor
}
