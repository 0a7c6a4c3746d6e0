//! Element-wise ring homomorphisms between tabulated rings.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::ideal::{Ideal, IdealError};
use crate::ring::{ElementId, RingRef};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomError {
    #[error("map has {found} entries but the domain has {expected} elements")]
    WrongLength { expected: usize, found: usize },
    #[error("image {0} lies outside the codomain")]
    OutOfRange(ElementId),
    #[error("additivity fails at ({0}, {1})")]
    NotAdditive(String, String),
    #[error("multiplicativity fails at ({0}, {1})")]
    NotMultiplicative(String, String),
    #[error("one is sent to {0}")]
    NotUnital(String),
    #[error("codomain of the inner map is not the domain of the outer map")]
    Mismatch,
    #[error(transparent)]
    Kernel(#[from] IdealError),
}

#[derive(Clone)]
pub struct RingHom {
    domain: RingRef,
    codomain: RingRef,
    map: Vec<ElementId>,
}

impl fmt::Debug for RingHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingHom({} -> {})", self.domain, self.codomain)
    }
}

impl PartialEq for RingHom {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.domain, &other.domain)
            && Arc::ptr_eq(&self.codomain, &other.codomain)
            && self.map == other.map
    }
}

impl RingHom {
    /// Builds a homomorphism after checking all three laws exhaustively.
    pub fn new(domain: RingRef, codomain: RingRef, map: Vec<ElementId>) -> Result<Self, HomError> {
        if map.len() != domain.len() {
            return Err(HomError::WrongLength {
                expected: domain.len(),
                found: map.len(),
            });
        }
        if let Some(&bad) = map.iter().find(|e| !codomain.contains(**e)) {
            return Err(HomError::OutOfRange(bad));
        }
        let h = Self {
            domain,
            codomain,
            map,
        };
        h.check()?;
        Ok(h)
    }

    /// Wraps a map without checking it. `check` reports any law violation.
    pub fn new_unchecked(domain: RingRef, codomain: RingRef, map: Vec<ElementId>) -> Self {
        assert_eq!(map.len(), domain.len());
        Self {
            domain,
            codomain,
            map,
        }
    }

    pub fn identity(ring: &RingRef) -> Self {
        Self::new_unchecked(
            Arc::clone(ring),
            Arc::clone(ring),
            ring.elements().collect(),
        )
    }

    pub fn domain(&self) -> &RingRef {
        &self.domain
    }

    pub fn codomain(&self) -> &RingRef {
        &self.codomain
    }

    pub fn map(&self) -> &[ElementId] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, a: ElementId) -> ElementId {
        self.map[a.index()]
    }

    /// Verifies `h(a+b) = h(a)+h(b)`, `h(ab) = h(a)h(b)` and `h(1) = 1`.
    pub fn check(&self) -> Result<(), HomError> {
        let (d, c) = (&*self.domain, &*self.codomain);
        if let Some(&bad) = self.map.iter().find(|e| !c.contains(**e)) {
            return Err(HomError::OutOfRange(bad));
        }
        if self.apply(d.one()) != c.one() {
            return Err(HomError::NotUnital(c.name(self.apply(d.one())).to_string()));
        }
        for a in d.elements() {
            for b in d.elements() {
                let name = |e: ElementId| d.name(e).to_string();
                if self.apply(d.add(a, b)) != c.add(self.apply(a), self.apply(b)) {
                    return Err(HomError::NotAdditive(name(a), name(b)));
                }
                if self.apply(d.mul(a, b)) != c.mul(self.apply(a), self.apply(b)) {
                    return Err(HomError::NotMultiplicative(name(a), name(b)));
                }
            }
        }
        Ok(())
    }

    pub fn is_hom(&self) -> bool {
        self.check().is_ok()
    }

    /// `{a : h(a) = 0}` as a verified ideal of the domain.
    pub fn kernel(&self) -> Result<Ideal, HomError> {
        let zero = self.codomain.zero();
        let elements = self.domain.elements().filter(|&a| self.apply(a) == zero);
        Ok(Ideal::from_elements(&self.domain, elements)?)
    }

    /// `outer ∘ self`.
    pub fn then(&self, outer: &RingHom) -> Result<RingHom, HomError> {
        compose(outer, self)
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.codomain.len()];
        for &e in &self.map {
            hit[e.index()] = true;
        }
        hit.into_iter().all(|h| h)
    }

    /// Preimages of each codomain element.
    pub fn fibers(&self) -> BTreeMap<ElementId, Vec<ElementId>> {
        let mut out: BTreeMap<ElementId, Vec<ElementId>> = BTreeMap::new();
        for a in self.domain.elements() {
            out.entry(self.apply(a)).or_default().push(a);
        }
        out
    }
}

/// `outer ∘ inner`, element-wise.
pub fn compose(outer: &RingHom, inner: &RingHom) -> Result<RingHom, HomError> {
    if !Arc::ptr_eq(&inner.codomain, &outer.domain) {
        return Err(HomError::Mismatch);
    }
    let map = inner.map.iter().map(|&e| outer.apply(e)).collect();
    Ok(RingHom::new_unchecked(
        Arc::clone(&inner.domain),
        Arc::clone(&outer.codomain),
        map,
    ))
}
