//! The quasiorder on the union of the objects below `j`, its quotient, and
//! the comparison map from that quotient back onto `F(j)`.

use std::collections::HashMap;
use std::sync::Arc;

use super::{is_normalized, validate_functor, PosetFunctor};
use crate::bits::BitMatrix;
use crate::error::{Error, Result};
use crate::poset::{Carrier, MonotoneMap, QuasiOrder, Quotient};
use crate::report::{Clause, Report};

#[derive(Clone, Debug)]
pub struct ColimitData {
    /// Base index `j`.
    pub index: usize,
    /// Union of the carriers of `F(i)` for `i <= j`, first occurrence order.
    pub carrier: Arc<Carrier>,
    /// Quasiorder generated by the orders of `F(i)` and the graphs of `ψ_ij` and their inverses.
    pub closure: QuasiOrder,
    /// `closure ∩ closure⁻¹`.
    pub kernel: BitMatrix,
    pub quotient: Quotient,
    /// For each element of `carrier`: every `(i, position in F(i))` it belongs to.
    pub origins: Vec<Vec<(usize, usize)>>,
}

pub fn colimit_quasiorder(f: &PosetFunctor, j: usize) -> Result<ColimitData> {
    let base = f.base();
    if j >= base.len() {
        return Err(Error::IndexOutOfRange(j));
    }
    let normalized = is_normalized(f);
    if !normalized.ok {
        return Err(Error::NotNormalized(normalized.to_string()));
    }
    let below: Vec<usize> = (0..base.len()).filter(|&i| base.le(i, j)).collect();
    let mut labels: Vec<String> = Vec::new();
    let mut position: HashMap<String, usize> = HashMap::new();
    let mut origins: Vec<Vec<(usize, usize)>> = Vec::new();
    for &i in &below {
        let obj = f.object(i);
        for x in 0..obj.len() {
            let label = obj.label(x);
            let r = *position.entry(label.to_string()).or_insert_with(|| {
                labels.push(label.to_string());
                origins.push(Vec::new());
                labels.len() - 1
            });
            origins[r].push((i, x));
        }
    }
    let carrier = Arc::new(Carrier::new(labels)?);
    let locate = |i: usize, x: usize| position[f.object(i).label(x)];
    let mut seed = Vec::new();
    for &i in &below {
        let obj = f.object(i);
        seed.extend(obj.order().pairs().map(|(x, y)| (locate(i, x), locate(i, y))));
        let psi = f
            .morphism(i, j)
            .ok_or_else(|| Error::Input(format!("missing morphism {i} -> {j}")))?;
        for x in 0..obj.len() {
            let (from, to) = (locate(i, x), locate(j, psi.apply(x)));
            seed.push((from, to));
            seed.push((to, from));
        }
    }
    let closure = QuasiOrder::generated(carrier.clone(), seed)?;
    let kernel = closure.kernel();
    let quotient = closure.quotient();
    Ok(ColimitData {
        index: j,
        carrier,
        closure,
        kernel,
        quotient,
        origins,
    })
}

/// The map from the quotient of [`ColimitData`] onto `F(j)`, sending the
/// block of `x ∈ F(i)` to `ψ_ij(x)`.
#[derive(Clone, Debug)]
pub struct Kappa {
    pub colimit: ColimitData,
    /// Value on each element of the colimit carrier (before collapsing blocks).
    pub premap: Vec<usize>,
    /// Quotient poset `->` `F(j)`; an order isomorphism for valid input.
    pub map: MonotoneMap,
}

impl Kappa {
    /// Every pair of the closed relation is sent to a comparable pair of `F(j)`.
    pub fn check_premap_monotone(&self) -> Report {
        let target = self.map.target();
        let mut report = Report::new();
        for (x, y) in self.colimit.closure.pairs() {
            let (fx, fy) = (self.premap[x], self.premap[y]);
            if !target.le(fx, fy) {
                report.push(
                    Clause::NotMonotone,
                    format!("closure pair not preserved: {} !<= {}", target.label(fx), target.label(fy)),
                    vec![
                        self.colimit.carrier.label(x).to_string(),
                        self.colimit.carrier.label(y).to_string(),
                    ],
                );
            }
        }
        report
    }

    /// Comparable images come from comparable blocks.
    pub fn check_order_reflection(&self) -> Report {
        let quotient = &self.colimit.quotient.poset;
        let target = self.map.target();
        let mut report = Report::new();
        for a in 0..quotient.len() {
            for b in 0..quotient.len() {
                if target.le(self.map.apply(a), self.map.apply(b)) && !quotient.le(a, b) {
                    report.push(
                        Clause::NotIsomorphism,
                        "image order not reflected by the quotient",
                        vec![quotient.label(a).to_string(), quotient.label(b).to_string()],
                    );
                }
            }
        }
        report
    }
}

/// Builds κ for base element `j`. For valid normalized input it is always an
/// order isomorphism; anything else is reported as an invariant violation.
pub fn kappa_map(f: &PosetFunctor, j: usize) -> Result<Kappa> {
    let validity = validate_functor(f);
    if !validity.ok {
        return Err(Error::InvalidFunctor(validity));
    }
    let colimit = colimit_quasiorder(f, j)?;
    let target = f.object(j).clone();
    let mut premap = Vec::with_capacity(colimit.origins.len());
    for (r, origins) in colimit.origins.iter().enumerate() {
        let mut images = origins.iter().map(|&(i, x)| f.psi(i, j).apply(x));
        let first = images.next().expect("every element has an origin");
        if images.any(|y| y != first) {
            return Err(Error::Invariant(format!(
                "element `{}` has origins with different images",
                colimit.carrier.label(r)
            )));
        }
        premap.push(first);
    }
    let mut table = Vec::with_capacity(colimit.quotient.blocks.len());
    for block in &colimit.quotient.blocks {
        let value = premap[block[0]];
        if let Some(&other) = block.iter().find(|&&x| premap[x] != value) {
            return Err(Error::Invariant(format!(
                "kappa ill-defined on block of `{}`: `{}` maps elsewhere",
                colimit.carrier.label(block[0]),
                colimit.carrier.label(other)
            )));
        }
        table.push(value);
    }
    let map = MonotoneMap::raw(colimit.quotient.poset.clone(), target, table)?;
    if !map.is_bijective() {
        return Err(Error::Invariant(format!("kappa at `{}` is not bijective", f.base().label(j))));
    }
    if let Some((a, b)) = map.reflection_witness() {
        let q = &colimit.quotient.poset;
        return Err(Error::Invariant(format!(
            "kappa at `{}` is not an order isomorphism: blocks `{}`, `{}`",
            f.base().label(j),
            q.label(a),
            q.label(b)
        )));
    }
    Ok(Kappa { colimit, premap, map })
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::functor::normalize_functor;
    use crate::poset::{find_order_isomorphism, Poset};

    fn arc(p: Poset) -> Arc<Poset> {
        Arc::new(p)
    }

    fn two_step(p0: Arc<Poset>, p1: Arc<Poset>, table: Vec<usize>) -> PosetFunctor {
        let psi = MonotoneMap::new(p0.clone(), p1.clone(), table).unwrap();
        let f = PosetFunctor::new(arc(Poset::chain(2)), vec![p0, p1], BTreeMap::from([((0, 1), psi)])).unwrap();
        normalize_functor(&f).unwrap().functor
    }

    #[test]
    fn least_index_gives_object_itself() {
        let sq = arc(Poset::bounded_antichain(2));
        let f = two_step(sq.clone(), sq, vec![0, 2, 1, 3]);
        let c = colimit_quasiorder(&f, 0).unwrap();
        assert_eq!(c.carrier.len(), 4);
        assert_eq!(c.closure.relation(), f.object(0).order().relation());
        let k = kappa_map(&f, 0).unwrap();
        assert_eq!(k.map.table(), &[0, 1, 2, 3]);
    }

    #[test]
    fn automorphism_step_keeps_four_blocks() {
        let sq = arc(Poset::bounded_antichain(2));
        let f = two_step(sq.clone(), sq, vec![0, 2, 1, 3]);
        let c = colimit_quasiorder(&f, 1).unwrap();
        assert_eq!(c.carrier.len(), 6);
        assert_eq!(c.quotient.poset.len(), 4);
        // a0@0 merges with ψ(a0@0) = a1@1
        let r = |l: &str| c.carrier.index_of(l).unwrap();
        assert!(c.kernel.get(r("a0@0"), r("a1@1")));
        let k = kappa_map(&f, 1).unwrap();
        assert!(k.map.is_order_isomorphism());
        assert!(find_order_isomorphism(c.quotient.poset.clone(), f.object(1).clone()).is_some());
    }

    #[test]
    fn bijective_step_merges_each_element_with_its_image() {
        let c3 = arc(Poset::chain(3));
        let f = two_step(c3.clone(), c3, vec![0, 1, 2]);
        let c = colimit_quasiorder(&f, 1).unwrap();
        assert_eq!(c.quotient.poset.len(), 3);
        let k = kappa_map(&f, 1).unwrap();
        let inv = k.map.inverse().unwrap();
        // y ↦ [y]: each element of F(1) goes back to its own block
        for y in 0..3 {
            let block = &c.quotient.blocks[inv.apply(y)];
            assert!(block.contains(&c.carrier.index_of(f.object(1).label(y)).unwrap()));
        }
    }

    #[test]
    fn collapsing_step_still_isomorphic() {
        // 2x2 onto a 3-chain: both atoms to the middle
        let sq = arc(Poset::bounded_antichain(2));
        let c3 = arc(Poset::chain(3));
        let f = two_step(sq, c3, vec![0, 1, 1, 2]);
        let k = kappa_map(&f, 1).unwrap();
        assert!(k.map.is_order_isomorphism());
        assert!(k.check_premap_monotone().ok);
        assert!(k.check_order_reflection().ok);
        assert_eq!(k.colimit.quotient.poset.len(), 3);
    }

    #[test]
    fn unnormalized_input_rejected() {
        let c2 = arc(Poset::chain(2));
        let p = arc(Poset::new(&["lo", "hi"], &[("lo", "hi")]).unwrap());
        let psi = MonotoneMap::new(c2.clone(), p.clone(), vec![0, 1]).unwrap();
        let f = PosetFunctor::new(arc(Poset::chain(2)), vec![c2, p], BTreeMap::from([((0, 1), psi)])).unwrap();
        assert!(matches!(colimit_quasiorder(&f, 1), Err(Error::NotNormalized(_))));
    }
}
