//! JSON documents for posets, lattices, functors and embedding functors,
//! plus report serializations and DOT rendering.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functor::{ColimitData, EmbeddingFunctor, Kappa, NaturalIso, PosetFunctor};
use crate::lattice::{Congruence, FiniteLattice, PrincPoset, Zeta};
use crate::oracle::SearchReport;
use crate::poset::{MonotoneMap, Poset};

/// `{"elements": [...], "le": [[a, b], ...]}`; `le` is a generating set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetJson {
    pub elements: Vec<String>,
    #[serde(default)]
    pub le: Vec<(String, String)>,
}

/// `{"elements": [...], "covers": [[a, b], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeJson {
    pub elements: Vec<String>,
    #[serde(default)]
    pub covers: Vec<(String, String)>,
}

/// Morphisms are keyed `"i<=j"` by base labels and map object labels to object labels.
/// Identity morphisms may be omitted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctorJson {
    pub base: PosetJson,
    pub objects: BTreeMap<String, PosetJson>,
    #[serde(default)]
    pub morphisms: BTreeMap<String, BTreeMap<String, String>>,
}

/// `assignment` maps base labels to lists of lattice elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingJson {
    pub lattice: LatticeJson,
    pub assignment: BTreeMap<String, Vec<String>>,
}

fn labeled_pairs(p: &Poset, pairs: &[(usize, usize)]) -> Vec<(String, String)> {
    pairs
        .iter()
        .map(|&(a, b)| (p.label(a).to_string(), p.label(b).to_string()))
        .collect()
}

impl PosetJson {
    pub fn to_poset(&self) -> Result<Poset> {
        Poset::new(&self.elements, &self.le)
    }

    /// Emits the covering relation as the generating set.
    pub fn from_poset(p: &Poset) -> Self {
        PosetJson {
            elements: p.carrier().labels().to_vec(),
            le: labeled_pairs(p, &p.covers()),
        }
    }
}

impl LatticeJson {
    pub fn to_lattice(&self) -> Result<FiniteLattice> {
        FiniteLattice::from_covers(&self.elements, &self.covers)
    }

    pub fn from_lattice(l: &FiniteLattice) -> Self {
        let p = l.poset();
        LatticeJson {
            elements: p.carrier().labels().to_vec(),
            covers: labeled_pairs(p, &p.covers()),
        }
    }
}

fn split_arrow(key: &str) -> Result<(&str, &str)> {
    key.split_once("<=")
        .map(|(a, b)| (a.trim(), b.trim()))
        .ok_or_else(|| Error::Input(format!("morphism key `{key}` is not of the form i<=j")))
}

impl FunctorJson {
    pub fn to_functor(&self) -> Result<PosetFunctor> {
        let base = Arc::new(self.base.to_poset()?);
        for key in self.objects.keys() {
            base.index_of(key)?;
        }
        let objects = base
            .carrier()
            .labels()
            .iter()
            .map(|l| {
                self.objects
                    .get(l)
                    .ok_or_else(|| Error::Input(format!("no object for base element `{l}`")))
                    .and_then(|p| Ok(Arc::new(p.to_poset()?)))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut morphisms = BTreeMap::new();
        for (key, table) in &self.morphisms {
            let (a, b) = split_arrow(key)?;
            let (i, j) = (base.index_of(a)?, base.index_of(b)?);
            let map = MonotoneMap::from_labels(objects[i].clone(), objects[j].clone(), table)?;
            if morphisms.insert((i, j), map).is_some() {
                return Err(Error::Input(format!("duplicate morphism `{key}`")));
            }
        }
        PosetFunctor::new(base, objects, morphisms)
    }

    /// Emits every arrow, identities included.
    pub fn from_functor(f: &PosetFunctor) -> Self {
        let base = f.base();
        let objects = (0..base.len())
            .map(|i| (base.label(i).to_string(), PosetJson::from_poset(f.object(i))))
            .collect();
        let morphisms = f
            .morphisms()
            .iter()
            .map(|(&(i, j), m)| (format!("{}<={}", base.label(i), base.label(j)), m.to_labels()))
            .collect();
        FunctorJson {
            base: PosetJson::from_poset(base),
            objects,
            morphisms,
        }
    }
}

impl EmbeddingJson {
    /// Builds the embedding functor over `base` (usually the functor's base).
    pub fn to_embedding(&self, base: Arc<Poset>) -> Result<EmbeddingFunctor> {
        let lattice = Arc::new(self.lattice.to_lattice()?);
        for key in self.assignment.keys() {
            base.index_of(key)?;
        }
        let subsets = base
            .carrier()
            .labels()
            .iter()
            .map(|l| {
                let elems = self
                    .assignment
                    .get(l)
                    .ok_or_else(|| Error::Input(format!("no sublattice assigned to `{l}`")))?;
                elems.iter().map(|e| lattice.index_of(e)).collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        EmbeddingFunctor::new(base, lattice, &subsets)
    }

    pub fn from_embedding(e: &EmbeddingFunctor) -> Self {
        let base = e.base();
        EmbeddingJson {
            lattice: LatticeJson::from_lattice(e.lattice()),
            assignment: (0..base.len())
                .map(|i| (base.label(i).to_string(), e.sublattice(i).labels()))
                .collect(),
        }
    }
}

pub fn read_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    Ok(serde_json::from_str(text)?)
}

/// Sorted list of sorted blocks (block order by least member, members in carrier order).
pub fn congruence_json(l: &FiniteLattice, c: &Congruence) -> Vec<Vec<String>> {
    c.labeled_blocks(l)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PrincElementJson {
    pub label: String,
    pub partition: Vec<Vec<String>>,
    pub witness: (String, String),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PrincJson {
    pub elements: Vec<PrincElementJson>,
    pub hasse: Vec<(String, String)>,
}

impl PrincJson {
    pub fn from_princ(p: &PrincPoset) -> Self {
        let l = p.lattice();
        let elements = (0..p.len())
            .map(|i| {
                let (a, b) = p.witness(i);
                PrincElementJson {
                    label: p.poset().label(i).to_string(),
                    partition: congruence_json(l, p.congruence(i)),
                    witness: (l.label(a).to_string(), l.label(b).to_string()),
                }
            })
            .collect();
        PrincJson {
            elements,
            hasse: labeled_pairs(p.poset(), &p.hasse_edges()),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ZetaJson {
    pub source: PrincJson,
    pub target: PrincJson,
    pub map: BTreeMap<String, String>,
}

impl ZetaJson {
    pub fn from_zeta(z: &Zeta) -> Self {
        ZetaJson {
            source: PrincJson::from_princ(&z.source),
            target: PrincJson::from_princ(&z.target),
            map: z.map.to_labels(),
        }
    }
}

/// Components keyed by base label.
pub fn natural_iso_json(f: &PosetFunctor, xi: &NaturalIso) -> BTreeMap<String, BTreeMap<String, String>> {
    xi.components
        .iter()
        .enumerate()
        .map(|(j, c)| (f.base().label(j).to_string(), c.to_labels()))
        .collect()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ColimitJson {
    pub index: String,
    pub carrier: Vec<String>,
    pub closure: Vec<(String, String)>,
    pub blocks: Vec<Vec<String>>,
    pub quotient: PosetJson,
}

impl ColimitJson {
    pub fn from_colimit(f: &PosetFunctor, c: &ColimitData) -> Self {
        let label = |x: usize| c.carrier.label(x).to_string();
        ColimitJson {
            index: f.base().label(c.index).to_string(),
            carrier: c.carrier.labels().to_vec(),
            closure: c.closure.pairs().map(|(a, b)| (label(a), label(b))).collect(),
            blocks: c
                .quotient
                .blocks
                .iter()
                .map(|b| b.iter().map(|&x| label(x)).collect())
                .collect(),
            quotient: PosetJson::from_poset(&c.quotient.poset),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct KappaJson {
    pub colimit: ColimitJson,
    pub map: BTreeMap<String, String>,
    pub order_isomorphism: bool,
}

impl KappaJson {
    pub fn from_kappa(f: &PosetFunctor, k: &Kappa) -> Self {
        KappaJson {
            colimit: ColimitJson::from_colimit(f, &k.colimit),
            map: k.map.to_labels(),
            order_isomorphism: k.map.is_order_isomorphism(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SearchReportJson {
    pub found: bool,
    pub lattice: Option<LatticeJson>,
    pub embedding: Option<EmbeddingJson>,
    pub natural_iso: Option<BTreeMap<String, BTreeMap<String, String>>>,
    pub lattices_examined: usize,
    pub candidates_examined: usize,
    pub max_size_searched: usize,
    pub elapsed_ms: u128,
    pub budget_exceeded: bool,
    pub note: String,
}

impl SearchReportJson {
    pub fn from_report(f: &PosetFunctor, r: &SearchReport) -> Self {
        let cert = r.found.as_ref();
        SearchReportJson {
            found: cert.is_some(),
            lattice: cert.map(|c| LatticeJson::from_lattice(&c.lattice)),
            embedding: cert.map(|c| EmbeddingJson::from_embedding(&c.embedding)),
            natural_iso: cert.map(|c| natural_iso_json(f, &c.iso)),
            lattices_examined: r.lattices_examined,
            candidates_examined: r.candidates_examined,
            max_size_searched: r.max_size_searched,
            elapsed_ms: r.elapsed.as_millis(),
            budget_exceeded: r.budget_exceeded,
            note: r.note.clone(),
        }
    }
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Hasse diagram in DOT, bottom to top.
pub fn poset_to_dot(p: &Poset, name: &str) -> String {
    let mut out = format!("digraph \"{}\" {{\n  rankdir=BT;\n", dot_escape(name));
    for l in p.carrier().labels() {
        let _ = writeln!(out, "  \"{}\";", dot_escape(l));
    }
    for (a, b) in p.covers() {
        let _ = writeln!(out, "  \"{}\" -> \"{}\";", dot_escape(p.label(a)), dot_escape(p.label(b)));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const N5: &str = r#"{"elements": ["0","a","b","c","1"],
        "covers": [["0","a"],["a","b"],["b","1"],["0","c"],["c","1"]]}"#;

    #[test]
    fn lattice_round_trip() {
        let j: LatticeJson = read_json(N5).unwrap();
        let l = j.to_lattice().unwrap();
        assert_eq!(l, FiniteLattice::pentagon());
        let again = LatticeJson::from_lattice(&l).to_lattice().unwrap();
        assert_eq!(again, l);
    }

    #[test]
    fn poset_closure_on_load() {
        let j: PosetJson = read_json(r#"{"elements":["x","y","z"],"le":[["x","y"],["y","z"]]}"#).unwrap();
        let p = j.to_poset().unwrap();
        assert!(p.le(0, 2));
        assert_eq!(p.bounds().unwrap(), (0, 2));
        assert_eq!(PosetJson::from_poset(&p).le.len(), 2);
    }

    #[test]
    fn functor_round_trip() {
        let text = r#"{
            "base": {"elements": ["s","t"], "le": [["s","t"]]},
            "objects": {
                "s": {"elements": ["0","1"], "le": [["0","1"]]},
                "t": {"elements": ["0","m","1"], "le": [["0","m"],["m","1"]]}
            },
            "morphisms": {"s<=t": {"0": "0", "1": "1"}}
        }"#;
        let f = read_json::<FunctorJson>(text).unwrap().to_functor().unwrap();
        assert_eq!(f.psi(0, 1).table(), &[0, 2]);
        let back = FunctorJson::from_functor(&f).to_functor().unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn functor_missing_object_is_error() {
        let text = r#"{"base": {"elements": ["s"]}, "objects": {}}"#;
        assert!(read_json::<FunctorJson>(text).unwrap().to_functor().is_err());
    }

    #[test]
    fn embedding_round_trip() {
        let text = format!(r#"{{"lattice": {N5}, "assignment": {{"s": ["0","1"], "t": ["0","a","b","c","1"]}}}}"#);
        let j: EmbeddingJson = read_json(&text).unwrap();
        let base = Arc::new(Poset::new(&["s", "t"], &[("s", "t")]).unwrap());
        let e = j.to_embedding(base.clone()).unwrap();
        assert_eq!(e.sublattice(0).subset(), vec![0, 4]);
        assert_eq!(EmbeddingJson::from_embedding(&e).to_embedding(base).unwrap(), e);
    }

    #[test]
    fn dot_output() {
        let dot = poset_to_dot(&Poset::chain(2), "c2");
        assert!(dot.contains("\"0\" -> \"1\";"));
        assert!(dot.starts_with("digraph \"c2\""));
    }
}
