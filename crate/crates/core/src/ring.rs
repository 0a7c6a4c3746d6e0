//! Fully tabulated finite commutative rings with unity.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::poly::Polynomial;
use crate::spec::{Parser, RingSpec, SpecError, Tok};

/// Default cap on the number of elements of a constructed ring.
pub const DEFAULT_MAX_ELEMENTS: usize = 4096;

/// Shared handle to an immutable ring.
pub type RingRef = Arc<FiniteRing>;

/// Index of an element within one specific [`FiniteRing`]. Index 0 is always zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementId(u32);

impl ElementId {
    pub const ZERO: ElementId = ElementId(0);

    pub fn new(index: usize) -> Self {
        ElementId(u32::try_from(index).expect("element index exceeds u32"))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Every element of a finite ring is exactly one of these. Zero counts as a zero-divisor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ElementClass {
    Unit,
    ZeroDivisor,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuildOptions {
    pub max_elements: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        Self {
            max_elements: DEFAULT_MAX_ELEMENTS,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("ring would have {} elements, above the limit of {limit}", .elements.map_or("too many".to_string(), |n| n.to_string()))]
    BoundExceeded { elements: Option<u64>, limit: usize },
    #[error("invalid operation table: {0}")]
    InvalidTable(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ElementError {
    #[error(transparent)]
    Syntax(#[from] SpecError),
    #[error("`{0}` does not name an element of this ring")]
    NotAnElement(String),
}

/// A ring axiom that fails, with the elements witnessing it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{law} fails at ({})", witness.join(", "))]
pub struct AxiomViolation {
    pub law: &'static str,
    pub witness: Vec<String>,
}

/// How a ring was obtained. Drives element naming and parsing.
#[derive(Debug, Clone)]
pub enum Structure {
    Prime {
        p: u32,
    },
    Poly {
        p: u32,
        var: String,
        modulus: Polynomial,
    },
    Product(RingRef, RingRef),
    /// Cosets of `ideal` in `source`; `projection[a]` is the coset of `a`.
    Quotient {
        source: RingRef,
        ideal: Vec<ElementId>,
        projection: Vec<ElementId>,
    },
    /// Built directly from operation tables.
    Tabulated,
}

pub struct FiniteRing {
    n: usize,
    add: Vec<ElementId>,
    mul: Vec<ElementId>,
    neg: Vec<ElementId>,
    one: ElementId,
    inverses: Vec<Option<ElementId>>,
    names: Vec<String>,
    lookup: HashMap<String, ElementId>,
    description: String,
    structure: Structure,
}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteRing")
            .field("description", &self.description)
            .field("n", &self.n)
            .finish_non_exhaustive()
    }
}

impl fmt::Display for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.description)
    }
}

/// Parses and builds a ring in one step.
pub fn ring_from_text(text: &str, options: &BuildOptions) -> Result<RingRef, BuildError> {
    let spec = crate::spec::parse_ring_spec(text)?;
    Ok(build_ring(&spec, options)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Tabulates the ring described by `spec`.
///
/// Polynomial quotients enumerate residues by their coefficient vector read
/// as a base-`p` integer (lowest degree is the least significant digit);
/// products enumerate component pairs lexicographically.
pub fn build_ring(spec: &RingSpec, options: &BuildOptions) -> Result<RingRef, RingError> {
    let size = spec.cardinality();
    match size {
        Some(n) if n <= options.max_elements as u64 => {}
        _ => {
            return Err(RingError::BoundExceeded {
                elements: size,
                limit: options.max_elements,
            })
        }
    }
    Ok(Arc::new(build_unchecked(spec)))
}

fn build_unchecked(spec: &RingSpec) -> FiniteRing {
    match spec {
        RingSpec::PrimeField { p } => {
            let p = *p;
            let n = p as usize;
            let tab = |f: &dyn Fn(u64, u64) -> u64| {
                let mut t = Vec::with_capacity(n * n);
                for a in 0..u64::from(p) {
                    for b in 0..u64::from(p) {
                        t.push(ElementId::new((f(a, b) % u64::from(p)) as usize));
                    }
                }
                t
            };
            let add = tab(&|a, b| a + b);
            let mul = tab(&|a, b| a * b);
            let names = (0..n).map(|a| a.to_string()).collect();
            FiniteRing::assemble(add, mul, names, spec.to_string(), Structure::Prime { p })
        }
        RingSpec::PolyQuotient { p, var, modulus } => {
            let p = *p;
            let degree = modulus.degree().expect("modulus is non-zero");
            let modulus = modulus.monic();
            let n = (p as usize).pow(degree as u32);
            let residues: Vec<Polynomial> = (0..n).map(|i| residue_of(i, p, degree)).collect();
            let mut add = Vec::with_capacity(n * n);
            let mut mul = Vec::with_capacity(n * n);
            for a in &residues {
                for b in &residues {
                    add.push(index_of(&a.add(b), p));
                    mul.push(index_of(&a.mul(b).rem(&modulus), p));
                }
            }
            let names = residues
                .iter()
                .map(|r| r.display_with(var).to_string())
                .collect();
            let structure = Structure::Poly {
                p,
                var: var.clone(),
                modulus,
            };
            FiniteRing::assemble(add, mul, names, spec.to_string(), structure)
        }
        RingSpec::Product(left, right) => {
            let l = Arc::new(build_unchecked(left));
            let r = Arc::new(build_unchecked(right));
            let (nl, nr) = (l.len(), r.len());
            let n = nl * nr;
            let split = |i: usize| (ElementId::new(i / nr), ElementId::new(i % nr));
            let join = |a: ElementId, b: ElementId| ElementId::new(a.index() * nr + b.index());
            let mut add = Vec::with_capacity(n * n);
            let mut mul = Vec::with_capacity(n * n);
            for i in 0..n {
                let (a1, a2) = split(i);
                for j in 0..n {
                    let (b1, b2) = split(j);
                    add.push(join(l.add(a1, b1), r.add(a2, b2)));
                    mul.push(join(l.mul(a1, b1), r.mul(a2, b2)));
                }
            }
            let names = (0..n)
                .map(|i| {
                    let (a, b) = split(i);
                    format!("({},{})", l.name(a), r.name(b))
                })
                .collect();
            FiniteRing::assemble(add, mul, names, spec.to_string(), Structure::Product(l, r))
        }
    }
}

fn residue_of(mut index: usize, p: u32, degree: usize) -> Polynomial {
    let mut coeffs = Vec::with_capacity(degree);
    for _ in 0..degree {
        coeffs.push((index % p as usize) as u32);
        index /= p as usize;
    }
    Polynomial::from_coeffs(p, coeffs)
}

fn index_of(poly: &Polynomial, p: u32) -> ElementId {
    let idx = poly
        .coeffs()
        .iter()
        .rev()
        .fold(0usize, |acc, &c| acc * p as usize + c as usize);
    ElementId::new(idx)
}

impl FiniteRing {
    /// Assembles a ring from flattened tables whose zero is index 0. Callers
    /// guarantee a unit element exists.
    pub(crate) fn assemble(
        add: Vec<ElementId>,
        mul: Vec<ElementId>,
        names: Vec<String>,
        description: String,
        structure: Structure,
    ) -> Self {
        Self::try_assemble(add, mul, names, description, structure)
            .expect("constructed tables are well formed")
    }

    fn try_assemble(
        add: Vec<ElementId>,
        mul: Vec<ElementId>,
        names: Vec<String>,
        description: String,
        structure: Structure,
    ) -> Result<Self, RingError> {
        let n = names.len();
        if n == 0 {
            return Err(RingError::InvalidTable("ring has no elements".into()));
        }
        if add.len() != n * n || mul.len() != n * n {
            return Err(RingError::InvalidTable(format!("tables must be {n}x{n}")));
        }
        if let Some(bad) = add.iter().chain(&mul).find(|e| e.index() >= n) {
            return Err(RingError::InvalidTable(format!("entry {bad} out of range")));
        }
        let neg = (0..n)
            .map(|a| {
                (0..n)
                    .map(ElementId::new)
                    .find(|&b| add[a * n + b.index()] == ElementId::ZERO)
                    .ok_or_else(|| RingError::InvalidTable(format!("{} has no negative", names[a])))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let one = (0..n)
            .map(ElementId::new)
            .find(|&e| (0..n).all(|a| mul[e.index() * n + a] == ElementId::new(a)))
            .ok_or_else(|| RingError::InvalidTable("no multiplicative identity".into()))?;
        let inverses = (0..n)
            .map(|a| {
                (0..n)
                    .map(ElementId::new)
                    .find(|&b| mul[a * n + b.index()] == one)
            })
            .collect();
        let lookup = names
            .iter()
            .enumerate()
            .map(|(i, s)| (strip_ws(s), ElementId::new(i)))
            .collect();
        Ok(Self {
            n,
            add,
            mul,
            neg,
            one,
            inverses,
            names,
            lookup,
            description,
            structure,
        })
    }

    /// Builds a ring directly from operation tables given as row-major `n x n`
    /// index matrices. Only the shape, the existence of negatives and of a unit
    /// element are checked; call [`FiniteRing::verify_axioms`] for the rest.
    pub fn from_tables(
        description: impl Into<String>,
        names: Vec<String>,
        add: &[Vec<usize>],
        mul: &[Vec<usize>],
    ) -> Result<Self, RingError> {
        let flatten = |t: &[Vec<usize>]| -> Result<Vec<ElementId>, RingError> {
            if t.len() != names.len() || t.iter().any(|row| row.len() != names.len()) {
                return Err(RingError::InvalidTable("tables must be square".into()));
            }
            Ok(t.iter().flatten().map(|&i| ElementId::new(i)).collect())
        };
        let (add, mul) = (flatten(add)?, flatten(mul)?);
        if (0..names.len()).any(|a| add[a] != ElementId::new(a)) {
            return Err(RingError::InvalidTable(
                "element 0 must be the additive identity".into(),
            ));
        }
        Self::try_assemble(add, mul, names, description.into(), Structure::Tabulated)
    }

    pub(crate) fn quotient_of(
        source: RingRef,
        ideal: Vec<ElementId>,
        projection: Vec<ElementId>,
        add: Vec<ElementId>,
        mul: Vec<ElementId>,
        names: Vec<String>,
        description: String,
    ) -> Self {
        Self::assemble(
            add,
            mul,
            names,
            description,
            Structure::Quotient {
                source,
                ideal,
                projection,
            },
        )
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn zero(&self) -> ElementId {
        ElementId::ZERO
    }

    pub fn one(&self) -> ElementId {
        self.one
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> + Clone + '_ {
        (0..self.n).map(ElementId::new)
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn structure(&self) -> &Structure {
        &self.structure
    }

    #[inline]
    pub fn add(&self, a: ElementId, b: ElementId) -> ElementId {
        self.add[a.index() * self.n + b.index()]
    }

    #[inline]
    pub fn mul(&self, a: ElementId, b: ElementId) -> ElementId {
        self.mul[a.index() * self.n + b.index()]
    }

    #[inline]
    pub fn neg(&self, a: ElementId) -> ElementId {
        self.neg[a.index()]
    }

    #[inline]
    pub fn sub(&self, a: ElementId, b: ElementId) -> ElementId {
        self.add(a, self.neg(b))
    }

    /// `a*d - b*c`.
    #[inline]
    pub fn det(&self, a: ElementId, b: ElementId, c: ElementId, d: ElementId) -> ElementId {
        self.sub(self.mul(a, d), self.mul(b, c))
    }

    pub fn contains(&self, a: ElementId) -> bool {
        a.index() < self.n
    }

    /// Additive order of one.
    pub fn characteristic(&self) -> usize {
        let mut acc = self.one;
        let mut s = 1;
        while acc != ElementId::ZERO {
            acc = self.add(acc, self.one);
            s += 1;
        }
        s
    }

    pub fn inverse(&self, a: ElementId) -> Option<ElementId> {
        self.inverses[a.index()]
    }

    pub fn is_unit(&self, a: ElementId) -> bool {
        self.inverses[a.index()].is_some()
    }

    pub fn classify(&self, a: ElementId) -> ElementClass {
        if self.is_unit(a) {
            ElementClass::Unit
        } else {
            ElementClass::ZeroDivisor
        }
    }

    pub fn units(&self) -> Vec<ElementId> {
        self.elements().filter(|&a| self.is_unit(a)).collect()
    }

    pub fn zero_divisors(&self) -> Vec<ElementId> {
        self.elements().filter(|&a| !self.is_unit(a)).collect()
    }

    pub fn name(&self, a: ElementId) -> &str {
        &self.names[a.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Resolves an element name. Besides the canonical names, any expression in
    /// the ring's presentation is accepted and reduced (`x^3` in a cubic
    /// quotient, `5` in `GF(3)`, a representative of a coset).
    pub fn parse_element(&self, text: &str) -> Result<ElementId, ElementError> {
        if let Some(&id) = self.lookup.get(&strip_ws(text)) {
            return Ok(id);
        }
        let mut parser = Parser::new(text)?;
        let id = self.parse_in(&mut parser, text)?;
        parser.expect_end()?;
        Ok(id)
    }

    fn parse_in(&self, parser: &mut Parser, text: &str) -> Result<ElementId, ElementError> {
        match &self.structure {
            Structure::Prime { p } => Ok(ElementId::new(parser.poly(*p, None)?.coeff(0) as usize)),
            Structure::Poly { p, var, modulus } => {
                let poly = parser.poly(*p, Some(var))?;
                Ok(index_of(&poly.rem(modulus), *p))
            }
            Structure::Product(l, r) => {
                parser.expect('(')?;
                let a = l.parse_in(parser, text)?;
                parser.expect(',')?;
                let b = r.parse_in(parser, text)?;
                parser.expect(')')?;
                Ok(ElementId::new(a.index() * r.len() + b.index()))
            }
            Structure::Quotient {
                source, projection, ..
            } => Ok(projection[source.parse_in(parser, text)?.index()]),
            Structure::Tabulated => {
                // Names of tabulated rings are opaque; only exact matches resolve.
                if let Tok::End = parser.peek() {
                    Err(parser.error(&["element name"]).into())
                } else {
                    Err(ElementError::NotAnElement(text.trim().to_string()))
                }
            }
        }
    }

    /// Exhaustive check of the commutative-ring-with-unity axioms and of name
    /// uniqueness. Cost is `O(n^3)`.
    pub fn verify_axioms(&self) -> Result<(), AxiomViolation> {
        let fail = |law, xs: &[ElementId]| AxiomViolation {
            law,
            witness: xs.iter().map(|&x| self.name(x).to_string()).collect(),
        };
        let mut seen = HashMap::new();
        for a in self.elements() {
            if let Some(&b) = seen.get(&strip_ws(self.name(a))) {
                return Err(fail("distinct names", &[b, a]));
            }
            seen.insert(strip_ws(self.name(a)), a);
        }
        let zero = self.zero();
        for a in self.elements() {
            if self.add(zero, a) != a {
                return Err(fail("additive identity", &[a]));
            }
            if self.add(a, self.neg(a)) != zero {
                return Err(fail("additive inverse", &[a]));
            }
            if self.mul(self.one, a) != a || self.mul(a, self.one) != a {
                return Err(fail("multiplicative identity", &[a]));
            }
            for b in self.elements() {
                if self.add(a, b) != self.add(b, a) {
                    return Err(fail("additive commutativity", &[a, b]));
                }
                if self.mul(a, b) != self.mul(b, a) {
                    return Err(fail("multiplicative commutativity", &[a, b]));
                }
                for c in self.elements() {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        return Err(fail("additive associativity", &[a, b, c]));
                    }
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Err(fail("multiplicative associativity", &[a, b, c]));
                    }
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return Err(fail("distributivity", &[a, b, c]));
                    }
                }
            }
        }
        Ok(())
    }
}

fn strip_ws(s: &str) -> String {
    s.chars().filter(|c| !c.is_whitespace()).collect()
}

/// A total order on the elements of a ring used for presenting tables and
/// labelling points. It never changes element identities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementOrder {
    sequence: Vec<ElementId>,
    rank: Vec<usize>,
}

impl ElementOrder {
    pub fn canonical(ring: &FiniteRing) -> Self {
        Self::from_sorted(ring.elements().collect())
    }

    /// Polynomial residues ordered by number of non-zero terms, then by
    /// canonical index. Other rings fall back to canonical order.
    ///
    /// Over `GF(2)[x]/(x^3+x)` this yields `0, 1, x, x^2, x+1, x^2+1, x^2+x, x^2+x+1`.
    pub fn by_term_count(ring: &FiniteRing) -> Self {
        let Structure::Poly { p, .. } = ring.structure() else {
            return Self::canonical(ring);
        };
        let degree = ring.len().ilog(*p as usize) as usize;
        let mut seq: Vec<ElementId> = ring.elements().collect();
        seq.sort_by_key(|&e| (residue_of(e.index(), *p, degree).weight(), e));
        Self::from_sorted(seq)
    }

    /// Uses an explicit sequence, which must be a permutation of the ring's elements.
    pub fn from_sequence(ring: &FiniteRing, sequence: Vec<ElementId>) -> Option<Self> {
        let mut seen = vec![false; ring.len()];
        if sequence.len() != ring.len() {
            return None;
        }
        for e in &sequence {
            if !ring.contains(*e) || std::mem::replace(&mut seen[e.index()], true) {
                return None;
            }
        }
        Some(Self::from_sorted(sequence))
    }

    fn from_sorted(sequence: Vec<ElementId>) -> Self {
        let mut rank = vec![0; sequence.len()];
        for (i, e) in sequence.iter().enumerate() {
            rank[e.index()] = i;
        }
        Self { sequence, rank }
    }

    pub fn sequence(&self) -> &[ElementId] {
        &self.sequence
    }

    pub fn rank(&self, e: ElementId) -> usize {
        self.rank[e.index()]
    }
}
