//! Principal congruences of finite bounded lattices, and verification tools
//! for functors from a bounded poset into bounded posets with 0-separating
//! `{0,1}`-preserving monotone maps.

mod bits;
pub mod error;
pub mod functor;
pub mod io;
pub mod lattice;
pub mod oracle;
pub mod poset;
pub mod random;
pub mod report;

pub use bits::BitMatrix;
pub use error::{Error, Result};
pub use poset::{
    enumerate_isomorphisms, find_order_isomorphism, is_catb_morphism, Carrier, Isomorphisms, MonotoneMap,
    OrderedPair, Poset, QuasiOrder, Quotient,
};
pub use report::{Clause, Report, Violation};
pub use lattice::{
    con_lattice, congruence_generated, enumerate_01_sublattices, is_01_sublattice, princ_poset,
    principal_congruence, zeta_between, zeta_map, Congruence, FiniteLattice, PrincPoset, SublatticeEmbedding,
    Sublattices, Zeta,
};
pub use functor::{
    check_representation, check_single_morphism_representation, colimit_quasiorder, is_normalized, kappa_map,
    normalize_functor, princ_functor, validate_functor, ColimitData, EmbeddingFunctor, Kappa, NaturalIso,
    Normalization, PosetFunctor, RepresentationOutcome,
};
pub use oracle::{
    enumerate_small_lattices, oracle_congruences, oracle_principal, search_representation, OracleBudget,
    SearchReport,
};
