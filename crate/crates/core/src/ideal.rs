//! Ideals, the ideal lattice, the Jacobson radical and quotient rings.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::hom::RingHom;
use crate::ring::{ElementId, FiniteRing, RingRef};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error("ideal does not contain zero")]
    MissingZero,
    #[error("{0} is not an element of the ring")]
    OutOfRange(ElementId),
    #[error("not closed under addition: {0} + {1}")]
    NotAdditive(String, String),
    #[error("not closed under negation: -{0}")]
    NotNegation(String),
    #[error("does not absorb multiplication: {0} * {1}")]
    NotAbsorbing(String, String),
}

/// A verified ideal of a ring. Elements are kept sorted.
#[derive(Clone)]
pub struct Ideal {
    ring: RingRef,
    elements: Vec<ElementId>,
    member: Vec<bool>,
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{self}")
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.elements.iter().map(|&e| self.ring.name(e)).collect();
        write!(f, "{{{}}}", names.join(", "))
    }
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) && self.elements == other.elements
    }
}

impl Eq for Ideal {}

impl Ideal {
    /// Checks the ideal predicate exhaustively and builds the ideal.
    pub fn from_elements(
        ring: &RingRef,
        elements: impl IntoIterator<Item = ElementId>,
    ) -> Result<Self, IdealError> {
        let mut member = vec![false; ring.len()];
        for e in elements {
            if !ring.contains(e) {
                return Err(IdealError::OutOfRange(e));
            }
            member[e.index()] = true;
        }
        let ideal = Self::from_mask(ring, member);
        ideal.check()?;
        Ok(ideal)
    }

    fn from_mask(ring: &RingRef, member: Vec<bool>) -> Self {
        let elements = ring.elements().filter(|e| member[e.index()]).collect();
        Self {
            ring: Arc::clone(ring),
            elements,
            member,
        }
    }

    /// Zero, additive closure, negation and absorption.
    pub fn check(&self) -> Result<(), IdealError> {
        let r = &*self.ring;
        let name = |e| r.name(e).to_string();
        if !self.contains(r.zero()) {
            return Err(IdealError::MissingZero);
        }
        for &a in &self.elements {
            if !self.contains(r.neg(a)) {
                return Err(IdealError::NotNegation(name(a)));
            }
            for &b in &self.elements {
                if !self.contains(r.add(a, b)) {
                    return Err(IdealError::NotAdditive(name(a), name(b)));
                }
            }
            for s in r.elements() {
                if !self.contains(r.mul(s, a)) {
                    return Err(IdealError::NotAbsorbing(name(s), name(a)));
                }
            }
        }
        Ok(())
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn elements(&self) -> &[ElementId] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, e: ElementId) -> bool {
        self.member.get(e.index()).copied().unwrap_or(false)
    }

    pub fn is_zero(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_whole_ring(&self) -> bool {
        self.elements.len() == self.ring.len()
    }

    pub fn is_subset(&self, other: &Ideal) -> bool {
        self.elements.iter().all(|&e| other.contains(e))
    }

    /// `I + J = {i + j}`.
    pub fn sum(&self, other: &Ideal) -> Ideal {
        let mut member = vec![false; self.ring.len()];
        for &a in &self.elements {
            for &b in &other.elements {
                member[self.ring.add(a, b).index()] = true;
            }
        }
        Self::from_mask(&self.ring, member)
    }

    pub fn intersection(&self, other: &Ideal) -> Ideal {
        let member = self
            .member
            .iter()
            .zip(&other.member)
            .map(|(a, b)| *a && *b)
            .collect();
        Self::from_mask(&self.ring, member)
    }

    /// Element names, in element order.
    pub fn names(&self) -> Vec<String> {
        self.elements
            .iter()
            .map(|&e| self.ring.name(e).to_string())
            .collect()
    }
}

/// `<a> = {r a : r in R}`.
pub fn principal_ideal(ring: &RingRef, a: ElementId) -> Ideal {
    let mut member = vec![false; ring.len()];
    for r in ring.elements() {
        member[ring.mul(r, a).index()] = true;
    }
    let ideal = Ideal::from_mask(ring, member);
    debug_assert!(ideal.check().is_ok(), "principal ideal must be closed");
    ideal
}

/// Every ideal of the ring: principal ideals closed under pairwise sums, sorted
/// by size and then by element list.
pub fn all_ideals(ring: &RingRef) -> Vec<Ideal> {
    let mut found: BTreeSet<(usize, Vec<ElementId>)> = BTreeSet::new();
    let mut ideals: Vec<Ideal> = Vec::new();
    let mut push = |i: Ideal, ideals: &mut Vec<Ideal>| {
        if found.insert((i.len(), i.elements.clone())) {
            ideals.push(i);
            true
        } else {
            false
        }
    };
    for a in ring.elements() {
        push(principal_ideal(ring, a), &mut ideals);
    }
    let principal_count = ideals.len();
    // Every ideal is a sum of principal ones, so summing with generators suffices.
    let mut frontier = 0;
    while frontier < ideals.len() {
        let current = ideals[frontier].clone();
        for g in 0..principal_count {
            let s = current.sum(&ideals[g]);
            push(s, &mut ideals);
        }
        frontier += 1;
    }
    ideals.sort_by(|a, b| (a.len(), &a.elements).cmp(&(b.len(), &b.elements)));
    ideals
}

/// Proper ideals maximal under inclusion.
pub fn maximal_ideals(ring: &RingRef) -> Vec<Ideal> {
    let ideals = all_ideals(ring);
    maximal_among(&ideals)
}

pub(crate) fn maximal_among(ideals: &[Ideal]) -> Vec<Ideal> {
    let proper: Vec<&Ideal> = ideals.iter().filter(|i| !i.is_whole_ring()).collect();
    proper
        .iter()
        .filter(|i| !proper.iter().any(|j| j.len() > i.len() && i.is_subset(j)))
        .map(|i| (*i).clone())
        .collect()
}

/// Intersection of all maximal ideals.
pub fn jacobson_radical(ring: &RingRef) -> Ideal {
    let maximal = maximal_ideals(ring);
    let radical = maximal
        .iter()
        .skip(1)
        .fold(maximal[0].clone(), |acc, m| acc.intersection(m));
    debug_assert_eq!(radical, jacobson_radical_quasiregular(ring));
    radical
}

/// `{a : 1 + r a is a unit for every r}`, computed without reference to maximal ideals.
pub fn jacobson_radical_quasiregular(ring: &RingRef) -> Ideal {
    let one = ring.one();
    let member = ring
        .elements()
        .map(|a| {
            ring.elements()
                .all(|r| ring.is_unit(ring.add(one, ring.mul(r, a))))
        })
        .collect();
    Ideal::from_mask(ring, member)
}

pub fn is_local(ring: &RingRef) -> bool {
    maximal_ideals(ring).len() == 1
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuotientError {
    #[error("the ideal belongs to a different ring")]
    ForeignIdeal,
    #[error(transparent)]
    NotAnIdeal(#[from] IdealError),
    #[error("coset {2} is not well defined at ({0}, {1})")]
    IllDefined(String, String, &'static str),
}

/// A quotient ring together with its canonical projection.
#[derive(Debug, Clone)]
pub struct QuotientRing {
    pub ring: RingRef,
    pub projection: RingHom,
    pub ideal: Ideal,
}

/// Builds `R / I`. Cosets are numbered by their smallest member and named
/// after it.
pub fn quotient_ring(ring: &RingRef, ideal: &Ideal) -> Result<QuotientRing, QuotientError> {
    if !Arc::ptr_eq(ring, ideal.ring()) {
        return Err(QuotientError::ForeignIdeal);
    }
    ideal.check()?;
    let n = ring.len();
    let mut coset_of = vec![usize::MAX; n];
    let mut reps: Vec<ElementId> = Vec::new();
    for a in ring.elements() {
        if coset_of[a.index()] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(a);
        for &i in ideal.elements() {
            coset_of[ring.add(a, i).index()] = id;
        }
    }
    let projection: Vec<ElementId> = coset_of.iter().map(|&c| ElementId::new(c)).collect();
    let m = reps.len();
    let mut add = Vec::with_capacity(m * m);
    let mut mul = Vec::with_capacity(m * m);
    for &a in &reps {
        for &b in &reps {
            add.push(projection[ring.add(a, b).index()]);
            mul.push(projection[ring.mul(a, b).index()]);
        }
    }
    for a in ring.elements() {
        let pa = projection[a.index()].index();
        for b in ring.elements() {
            let pb = projection[b.index()].index();
            let name = |e: ElementId| ring.name(e).to_string();
            if add[pa * m + pb] != projection[ring.add(a, b).index()] {
                return Err(QuotientError::IllDefined(name(a), name(b), "addition"));
            }
            if mul[pa * m + pb] != projection[ring.mul(a, b).index()] {
                return Err(QuotientError::IllDefined(
                    name(a),
                    name(b),
                    "multiplication",
                ));
            }
        }
    }
    let names = reps.iter().map(|&r| ring.name(r).to_string()).collect();
    let description = format!("({})/{}", ring.description(), ideal);
    let quotient = Arc::new(FiniteRing::quotient_of(
        Arc::clone(ring),
        ideal.elements().to_vec(),
        projection.clone(),
        add,
        mul,
        names,
        description,
    ));
    let projection = RingHom::new_unchecked(Arc::clone(ring), Arc::clone(&quotient), projection);
    debug_assert!(projection.check().is_ok());
    Ok(QuotientRing {
        ring: quotient,
        projection,
        ideal: ideal.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{ring_from_text, BuildOptions};

    fn ring(text: &str) -> RingRef {
        ring_from_text(text, &BuildOptions::default()).unwrap()
    }

    fn set(r: &FiniteRing, names: &[&str]) -> Vec<ElementId> {
        let mut v: Vec<_> = names.iter().map(|n| r.parse_element(n).unwrap()).collect();
        v.sort();
        v
    }

    #[test]
    fn principal_ideals_of_cubic_quotient() {
        let r = ring("GF(2)[x]/(x^3-x)");
        let x = r.parse_element("x").unwrap();
        let x1 = r.parse_element("x+1").unwrap();
        assert_eq!(
            principal_ideal(&r, x).elements(),
            set(&r, &["0", "x", "x^2", "x^2+x"])
        );
        assert_eq!(
            principal_ideal(&r, x1).elements(),
            set(&r, &["0", "x+1", "x^2+1", "x^2+x"])
        );
        assert!(principal_ideal(&r, r.zero()).is_zero());
        assert!(principal_ideal(&r, r.one()).is_whole_ring());
    }

    #[test]
    fn lattice_and_radical() {
        let r = ring("GF(2)[x]/(x^3-x)");
        let ideals = all_ideals(&r);
        let sizes: Vec<usize> = ideals.iter().map(Ideal::len).collect();
        assert_eq!(sizes, vec![1, 2, 2, 4, 4, 8]);
        assert_eq!(ideals[1].names(), ["0", "x^2+1"]);
        assert_eq!(maximal_ideals(&r).len(), 2);
        assert_eq!(jacobson_radical(&r).elements(), set(&r, &["0", "x^2+x"]));
        assert_eq!(jacobson_radical_quasiregular(&r), jacobson_radical(&r));
        assert!(!is_local(&r));
    }

    #[test]
    fn fields_and_local_rings() {
        let f = ring("GF(5)");
        assert_eq!(all_ideals(&f).len(), 2);
        assert!(maximal_ideals(&f)[0].is_zero());
        assert!(jacobson_radical(&f).is_zero());
        assert!(is_local(&f));
        let dual = ring("GF(2)[x]/(x^2)");
        assert!(is_local(&dual));
        assert_eq!(jacobson_radical(&dual).len(), 2);
    }

    #[test]
    fn invalid_ideals_are_rejected() {
        let r = ring("GF(2)[x]/(x^3-x)");
        let e = |s| r.parse_element(s).unwrap();
        assert_eq!(
            Ideal::from_elements(&r, [e("x")]).unwrap_err(),
            IdealError::MissingZero
        );
        assert!(matches!(
            Ideal::from_elements(&r, [e("0"), e("x")]),
            Err(IdealError::NotAbsorbing(..))
        ));
        assert!(matches!(
            Ideal::from_elements(&r, [e("0"), e("x"), e("x+1")]),
            Err(IdealError::NotAdditive(..))
        ));
        assert!(matches!(
            Ideal::from_elements(&r, [ElementId::new(99)]),
            Err(IdealError::OutOfRange(_))
        ));
    }

    #[test]
    fn quotient_by_radical() {
        let r = ring("GF(2)[x]/(x^3-x)");
        let q = quotient_ring(&r, &jacobson_radical(&r)).unwrap();
        assert_eq!(q.ring.names(), ["0", "1", "x", "x+1"]);
        assert_eq!(q.projection.kernel().unwrap(), q.ideal);
        let x = q.ring.parse_element("x").unwrap();
        assert_eq!(q.ring.mul(x, x), x);
        // representatives of other cosets resolve too
        assert_eq!(q.ring.parse_element("x^2").unwrap(), x);
        q.ring.verify_axioms().unwrap();
    }

    #[test]
    fn foreign_ideal_is_rejected() {
        let a = ring("GF(2)");
        let b = ring("GF(2)");
        let i = principal_ideal(&b, b.zero());
        assert_eq!(
            quotient_ring(&a, &i).unwrap_err(),
            QuotientError::ForeignIdeal
        );
    }
}
