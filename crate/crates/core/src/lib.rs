//! Finite commutative rings with unity, their ideal structure, and the
//! projective lines over them.
//!
//! Rings are built from a small text grammar (`GF(2)[x]/(x^3-x)`,
//! `GF(2)*GF(3)`), fully tabulated, and then everything else is computed by
//! exhaustive search over the tables:
//!
//! ```
//! use ringline_core::{ring_from_text, BuildOptions, ProjLine, PointKind};
//!
//! let ring = ring_from_text("GF(2)[x]/(x^3-x)", &BuildOptions::default()).unwrap();
//! assert_eq!(ring.units().len(), 2);
//! let line = ProjLine::new(&ring);
//! assert_eq!(line.len(), 18);
//! assert_eq!(line.count_of(PointKind::TypeII), 4);
//! ```

pub mod export;
pub mod hom;
pub mod ideal;
pub mod line;
pub mod poly;
pub mod ring;
pub mod spec;
pub mod verify;

pub use hom::{compose, HomError, RingHom};
pub use ideal::{
    all_ideals, is_local, jacobson_radical, jacobson_radical_quasiregular, maximal_ideals,
    principal_ideal, quotient_ring, Ideal, IdealError, QuotientError, QuotientRing,
};
pub use line::{
    enumerate_points, induced_map, is_admissible, is_admissible_by_ideals, jacobson_points,
    label_neighbourhood, maximal_reductions, CountReport, InducedMap, LineError, NeighbourGraph,
    NeighbourhoodProfile, PairClass, PointId, PointKind, PointRep, ProjLine, ProjPoint, Reduction,
};
pub use poly::Polynomial;
pub use ring::{
    build_ring, ring_from_text, AxiomViolation, BuildError, BuildOptions, ElementClass,
    ElementError, ElementId, ElementOrder, FiniteRing, RingError, RingRef, Structure,
    DEFAULT_MAX_ELEMENTS,
};
pub use spec::{parse_ring_spec, RingSpec, SpecError};
