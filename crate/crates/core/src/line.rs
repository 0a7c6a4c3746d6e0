//! The projective line over a finite ring.
//!
//! A point is the orbit of an admissible pair `(a, b)` under scaling by units.
//! A pair is admissible when it is the first row of some invertible 2x2 matrix,
//! i.e. when `a*d - b*c` is a unit for some `c, d`. Two points are neighbours
//! when the determinant of their coordinates is a zero-divisor and distant when
//! it is a unit.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::hom::{HomError, RingHom};
use crate::ideal::{maximal_ideals, quotient_ring, Ideal, QuotientError, QuotientRing};
use crate::ring::{
    BuildOptions, ElementError, ElementId, ElementOrder, FiniteRing, RingError, RingRef,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointRep {
    pub a: ElementId,
    pub b: ElementId,
}

impl PointRep {
    pub fn new(a: ElementId, b: ElementId) -> Self {
        Self { a, b }
    }

    pub fn scale(self, ring: &FiniteRing, u: ElementId) -> Self {
        Self::new(ring.mul(u, self.a), ring.mul(u, self.b))
    }
}

/// Index of a point within its [`ProjLine`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PointKind {
    /// Some coordinate is a unit.
    TypeI,
    /// Both coordinates are zero-divisors.
    TypeII,
}

impl PointKind {
    pub fn label(self) -> &'static str {
        match self {
            PointKind::TypeI => "I",
            PointKind::TypeII => "II",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PairClass {
    Neighbour,
    Distant,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjPoint {
    pub canonical: PointRep,
    /// All unit multiples of the canonical pair, sorted.
    pub orbit: Vec<PointRep>,
    pub kind: PointKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LineError {
    #[error(transparent)]
    Bound(#[from] RingError),
    #[error(transparent)]
    Element(#[from] ElementError),
    #[error("`{0}` is not of the form (a,b)")]
    MalformedPoint(String),
    #[error("{0} is not admissible")]
    Inadmissible(String),
    #[error("map does not fit the given lines")]
    Mismatch,
    #[error(transparent)]
    NotAHom(#[from] HomError),
    #[error(transparent)]
    Quotient(#[from] QuotientError),
    #[error("image of {pair} is the inadmissible pair {image}")]
    ImageInadmissible { pair: String, image: String },
    #[error("image of point {point} depends on the representative ({first} vs {second})")]
    RepresentativeDependent {
        point: String,
        first: String,
        second: String,
    },
    #[error("points {0} and {1} are not distant")]
    NotDistant(String, String),
}

/// Exhaustive search for `c, d` with `a*d - b*c` a unit.
pub fn is_admissible(ring: &FiniteRing, a: ElementId, b: ElementId) -> bool {
    ring.elements()
        .any(|c| ring.elements().any(|d| ring.is_unit(ring.det(a, b, c, d))))
}

/// Admissibility restated through maximal ideals: `a` and `b` do not lie in a
/// common maximal ideal. Used to cross-check [`is_admissible`].
pub fn is_admissible_by_ideals(maximal: &[Ideal], a: ElementId, b: ElementId) -> bool {
    !maximal.iter().any(|m| m.contains(a) && m.contains(b))
}

pub struct ProjLine {
    ring: RingRef,
    points: Vec<ProjPoint>,
    /// `point_of[a * n + b]`, `None` for inadmissible pairs.
    point_of: Vec<Option<PointId>>,
    admissible_pairs: usize,
}

impl fmt::Debug for ProjLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ProjLine(over {}, {} points)",
            self.ring,
            self.points.len()
        )
    }
}

/// Enumerates the line after checking the ring against the enumeration bound.
pub fn enumerate_points(ring: &RingRef, options: &BuildOptions) -> Result<ProjLine, LineError> {
    if ring.len() > options.max_elements {
        return Err(RingError::BoundExceeded {
            elements: Some(ring.len() as u64),
            limit: options.max_elements,
        }
        .into());
    }
    Ok(ProjLine::new(ring))
}

impl ProjLine {
    /// Scans all pairs, keeps the admissible ones and groups them into unit orbits.
    ///
    /// The representative of a point scales its first unit coordinate to one,
    /// giving `(1, b)` or `(a, 1)`; when neither coordinate is a unit it is the
    /// smallest orbit member. Points are sorted by representative.
    pub fn new(ring: &RingRef) -> Self {
        let n = ring.len();
        let units = ring.units();
        let mut seen = vec![false; n * n];
        let mut points = Vec::new();
        let mut admissible_pairs = 0;
        for a in ring.elements() {
            for b in ring.elements() {
                if seen[a.index() * n + b.index()] {
                    continue;
                }
                let mut orbit: Vec<PointRep> = units
                    .iter()
                    .map(|&u| PointRep::new(a, b).scale(ring, u))
                    .collect();
                orbit.sort();
                orbit.dedup();
                for r in &orbit {
                    seen[r.a.index() * n + r.b.index()] = true;
                }
                if !is_admissible(ring, a, b) {
                    continue;
                }
                assert_eq!(
                    orbit.len(),
                    units.len(),
                    "unit group must act freely on admissible pairs"
                );
                admissible_pairs += orbit.len();
                let canonical = canonical_member(ring, &orbit);
                let kind = if ring.is_unit(a) || ring.is_unit(b) {
                    PointKind::TypeI
                } else {
                    PointKind::TypeII
                };
                points.push(ProjPoint {
                    canonical,
                    orbit,
                    kind,
                });
            }
        }
        points.sort_by_key(|p| p.canonical);
        let mut point_of = vec![None; n * n];
        for (i, p) in points.iter().enumerate() {
            for r in &p.orbit {
                point_of[r.a.index() * n + r.b.index()] = Some(PointId(i));
            }
        }
        Self {
            ring: Arc::clone(ring),
            points,
            point_of,
            admissible_pairs,
        }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = PointId> + Clone {
        (0..self.points.len()).map(PointId)
    }

    pub fn point(&self, id: PointId) -> &ProjPoint {
        &self.points[id.0]
    }

    pub fn admissible_pair_count(&self) -> usize {
        self.admissible_pairs
    }

    pub fn count_of(&self, kind: PointKind) -> usize {
        self.points.iter().filter(|p| p.kind == kind).count()
    }

    /// The point containing `rep`, if the pair is admissible.
    pub fn point_of(&self, rep: PointRep) -> Option<PointId> {
        let n = self.ring.len();
        self.point_of
            .get(rep.a.index() * n + rep.b.index())
            .copied()
            .flatten()
    }

    pub fn pair_name(&self, rep: PointRep) -> String {
        format!("({},{})", self.ring.name(rep.a), self.ring.name(rep.b))
    }

    /// `(a,b)` with the canonical representative's element names.
    pub fn point_name(&self, id: PointId) -> String {
        self.pair_name(self.point(id).canonical)
    }

    /// Parses `"(a,b)"`; any representative of the orbit is accepted.
    pub fn parse_point(&self, text: &str) -> Result<PointId, LineError> {
        let rep = self.parse_pair(text)?;
        self.point_of(rep)
            .ok_or_else(|| LineError::Inadmissible(self.pair_name(rep)))
    }

    pub fn parse_pair(&self, text: &str) -> Result<PointRep, LineError> {
        let malformed = || LineError::MalformedPoint(text.to_string());
        let inner = text
            .trim()
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(malformed)?;
        let mut depth = 0i32;
        let mut split = None;
        for (i, c) in inner.char_indices() {
            match c {
                '(' => depth += 1,
                ')' => depth -= 1,
                ',' if depth == 0 && split.replace(i).is_some() => return Err(malformed()),
                _ => {}
            }
        }
        let at = split.ok_or_else(malformed)?;
        let a = self.ring.parse_element(&inner[..at])?;
        let b = self.ring.parse_element(&inner[at + 1..])?;
        Ok(PointRep::new(a, b))
    }

    /// Classifies by the determinant of the canonical representatives.
    pub fn pair_class(&self, p: PointId, q: PointId) -> PairClass {
        let (x, y) = (self.point(p).canonical, self.point(q).canonical);
        classify_pairs(&self.ring, x, y)
    }

    pub fn is_neighbour(&self, p: PointId, q: PointId) -> bool {
        self.pair_class(p, q) == PairClass::Neighbour
    }

    /// Neighbours of `p`, excluding `p` itself.
    pub fn neighbourhood(&self, p: PointId) -> Vec<PointId> {
        self.ids()
            .filter(|&q| q != p && self.is_neighbour(p, q))
            .collect()
    }

    /// Checks that pair classification gives the same answer for every choice of
    /// representatives. Returns the first offending pair of points.
    pub fn check_representative_independence(&self) -> Result<(), (PointId, PointId)> {
        for p in self.ids() {
            for q in self.ids() {
                let expected = self.pair_class(p, q);
                for &x in &self.point(p).orbit {
                    for &y in &self.point(q).orbit {
                        if classify_pairs(&self.ring, x, y) != expected {
                            return Err((p, q));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn neighbour_graph(&self) -> NeighbourGraph {
        let mut adjacency = vec![Vec::new(); self.len()];
        for p in self.ids() {
            for q in self.ids().skip(p.0 + 1) {
                if self.is_neighbour(p, q) {
                    adjacency[p.0].push(q);
                    adjacency[q.0].push(p);
                }
            }
        }
        NeighbourGraph { adjacency }
    }

    /// Compares the closed-form point counts with the enumeration.
    pub fn count_formulas(&self, maximal: &[Ideal]) -> CountReport {
        let ring = &*self.ring;
        let zd = ring.zero_divisors();
        let mut covered = 0;
        for &a in &zd {
            for &b in &zd {
                if maximal.iter().any(|m| m.contains(a) && m.contains(b)) {
                    covered += 1;
                }
            }
        }
        CountReport {
            total: ring.len(),
            units: ring.units().len(),
            zero_divisors: zd.len(),
            same_ideal_pairs: covered,
            type_i_actual: self.count_of(PointKind::TypeI),
            type_ii_actual: self.count_of(PointKind::TypeII),
        }
    }

    /// Sizes and overlaps of neighbourhoods over all points, distant pairs and
    /// pairwise distant triples.
    pub fn neighbourhood_profile(&self) -> NeighbourhoodProfile {
        let graph = self.neighbour_graph();
        let sets: Vec<BitSet> = self
            .ids()
            .map(|p| BitSet::from_ids(self.len(), graph.neighbours(p)))
            .collect();
        let mut profile = NeighbourhoodProfile::default();
        for p in self.ids() {
            *profile.sizes.entry(graph.degree(p)).or_default() += 1;
        }
        let distant = |p: PointId, q: PointId| !self.is_neighbour(p, q);
        for p in self.ids() {
            for q in self.ids().skip(p.0 + 1) {
                if !distant(p, q) {
                    continue;
                }
                let pq = sets[p.0].and(&sets[q.0]);
                *profile.distant_pair_overlaps.entry(pq.count()).or_default() += 1;
                if profile.non_transitivity_witness.is_none() {
                    if let Some(mid) = pq.first() {
                        profile.non_transitivity_witness = Some([p, PointId(mid), q]);
                    }
                }
                for r in self.ids().skip(q.0 + 1) {
                    if distant(p, r) && distant(q, r) {
                        let c = pq.and(&sets[r.0]).count();
                        *profile.distant_triple_overlaps.entry(c).or_default() += 1;
                    }
                }
            }
        }
        profile
    }

    /// The default distinguished triple `(1,0), (0,1), (1,1)`.
    pub fn default_triad(&self) -> Option<[PointId; 3]> {
        let (z, o) = (self.ring.zero(), self.ring.one());
        let t = [
            self.point_of(PointRep::new(o, z))?,
            self.point_of(PointRep::new(z, o))?,
            self.point_of(PointRep::new(o, o))?,
        ];
        self.check_triad(t).ok()?;
        Some(t)
    }

    pub fn check_triad(&self, t: [PointId; 3]) -> Result<(), LineError> {
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            if self.is_neighbour(t[i], t[j]) {
                return Err(LineError::NotDistant(
                    self.point_name(t[i]),
                    self.point_name(t[j]),
                ));
            }
        }
        Ok(())
    }
}

fn classify_pairs(ring: &FiniteRing, x: PointRep, y: PointRep) -> PairClass {
    if ring.is_unit(ring.det(x.a, x.b, y.a, y.b)) {
        PairClass::Distant
    } else {
        PairClass::Neighbour
    }
}

fn canonical_member(ring: &FiniteRing, orbit: &[PointRep]) -> PointRep {
    let first = orbit[0];
    if let Some(inv) = ring.inverse(first.a) {
        first.scale(ring, inv)
    } else if let Some(inv) = ring.inverse(first.b) {
        first.scale(ring, inv)
    } else {
        first
    }
}

/// The neighbour relation as a simple graph (no self loops).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeighbourGraph {
    adjacency: Vec<Vec<PointId>>,
}

impl NeighbourGraph {
    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn neighbours(&self, p: PointId) -> &[PointId] {
        &self.adjacency[p.0]
    }

    pub fn degree(&self, p: PointId) -> usize {
        self.adjacency[p.0].len()
    }

    /// Edges `(i, j)` with `i < j`, sorted.
    pub fn edges(&self) -> Vec<(PointId, PointId)> {
        let mut out = Vec::new();
        for (i, adj) in self.adjacency.iter().enumerate() {
            out.extend(adj.iter().filter(|q| q.0 > i).map(|&q| (PointId(i), q)));
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    fn from_ids(len: usize, ids: &[PointId]) -> Self {
        let mut words = vec![0u64; len.div_ceil(64)];
        for p in ids {
            words[p.0 / 64] |= 1 << (p.0 % 64);
        }
        Self { words }
    }

    fn and(&self, other: &Self) -> Self {
        Self {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, w)| **w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }
}

/// Point counts from the closed forms next to the enumerated ones.
///
/// `type_i = (t² - z²) / u` and `type_ii = (z² - s) / u`, where `s` counts
/// ordered zero-divisor pairs lying in a common maximal ideal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountReport {
    pub total: usize,
    pub units: usize,
    pub zero_divisors: usize,
    pub same_ideal_pairs: usize,
    pub type_i_actual: usize,
    pub type_ii_actual: usize,
}

impl CountReport {
    pub fn type_i_numerator(&self) -> usize {
        self.total * self.total - self.zero_divisors * self.zero_divisors
    }

    pub fn type_ii_numerator(&self) -> usize {
        self.zero_divisors * self.zero_divisors - self.same_ideal_pairs
    }

    /// `None` when the numerator is not divisible by the unit count.
    pub fn type_i_formula(&self) -> Option<usize> {
        exact_div(self.type_i_numerator(), self.units)
    }

    pub fn type_ii_formula(&self) -> Option<usize> {
        exact_div(self.type_ii_numerator(), self.units)
    }

    pub fn agrees(&self) -> bool {
        self.type_i_formula() == Some(self.type_i_actual)
            && self.type_ii_formula() == Some(self.type_ii_actual)
    }
}

fn exact_div(n: usize, d: usize) -> Option<usize> {
    (d != 0 && n.is_multiple_of(d)).then(|| n / d)
}

/// Histograms (value -> multiplicity) describing how neighbourhoods overlap.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NeighbourhoodProfile {
    pub sizes: BTreeMap<usize, usize>,
    pub distant_pair_overlaps: BTreeMap<usize, usize>,
    pub distant_triple_overlaps: BTreeMap<usize, usize>,
    /// `[p, q, s]` with `p ~ q ~ s` and `p`, `s` distant.
    pub non_transitivity_witness: Option<[PointId; 3]>,
}

impl NeighbourhoodProfile {
    pub fn is_transitive(&self) -> bool {
        self.non_transitivity_witness.is_none()
    }
}

/// A point map induced by a ring homomorphism, with its fibers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedMap {
    image: Vec<PointId>,
    fibers: Vec<Vec<PointId>>,
}

impl InducedMap {
    pub fn apply(&self, p: PointId) -> PointId {
        self.image[p.0]
    }

    pub fn images(&self) -> &[PointId] {
        &self.image
    }

    /// Source points sent to `q`, in source order.
    pub fn fiber(&self, q: PointId) -> &[PointId] {
        &self.fibers[q.0]
    }

    pub fn fibers(&self) -> &[Vec<PointId>] {
        &self.fibers
    }
}

/// Sends the point of `(a, b)` to the point of `(h(a), h(b))`, checking every
/// orbit member.
pub fn induced_map(h: &RingHom, src: &ProjLine, dst: &ProjLine) -> Result<InducedMap, LineError> {
    if !Arc::ptr_eq(h.domain(), src.ring()) || !Arc::ptr_eq(h.codomain(), dst.ring()) {
        return Err(LineError::Mismatch);
    }
    h.check()?;
    let mut image = Vec::with_capacity(src.len());
    let mut fibers = vec![Vec::new(); dst.len()];
    for p in src.ids() {
        let mut target: Option<PointId> = None;
        for &rep in &src.point(p).orbit {
            let img = PointRep::new(h.apply(rep.a), h.apply(rep.b));
            let Some(q) = dst.point_of(img) else {
                return Err(LineError::ImageInadmissible {
                    pair: src.pair_name(rep),
                    image: dst.pair_name(img),
                });
            };
            match target {
                None => target = Some(q),
                Some(t) if t != q => {
                    return Err(LineError::RepresentativeDependent {
                        point: src.point_name(p),
                        first: dst.point_name(t),
                        second: dst.point_name(q),
                    })
                }
                Some(_) => {}
            }
        }
        let q = target.expect("orbits are non-empty");
        image.push(q);
        fibers[q.0].push(p);
    }
    Ok(InducedMap { image, fibers })
}

/// Reduction of a line modulo one maximal ideal.
#[derive(Debug)]
pub struct Reduction {
    pub quotient: QuotientRing,
    pub line: ProjLine,
    pub map: InducedMap,
}

/// Reductions modulo every maximal ideal of the line's ring.
pub fn maximal_reductions(line: &ProjLine) -> Result<Vec<Reduction>, LineError> {
    maximal_ideals(line.ring())
        .iter()
        .map(|m| {
            let quotient = quotient_ring(line.ring(), m)?;
            let target = ProjLine::new(&quotient.ring);
            let map = induced_map(&quotient.projection, line, &target)?;
            Ok(Reduction {
                quotient,
                line: target,
                map,
            })
        })
        .collect()
}

/// Neighbours of `p` sent to the image of `p` by every reduction.
pub fn jacobson_points(line: &ProjLine, reductions: &[Reduction], p: PointId) -> Vec<PointId> {
    line.neighbourhood(p)
        .into_iter()
        .filter(|&q| reductions.iter().all(|r| r.map.apply(q) == r.map.apply(p)))
        .collect()
}

/// Numbers the neighbourhood of `p`: a unique Jacobson point gets 0, the
/// remaining neighbours get 1, 2, ... ordered by kind and then by the ranks of
/// their representative's coordinates under `order`.
pub fn label_neighbourhood(
    line: &ProjLine,
    reductions: &[Reduction],
    p: PointId,
    order: &ElementOrder,
) -> Vec<(usize, PointId)> {
    let jac = jacobson_points(line, reductions, p);
    let zero = if jac.len() == 1 { Some(jac[0]) } else { None };
    let mut rest: Vec<PointId> = line
        .neighbourhood(p)
        .into_iter()
        .filter(|&q| Some(q) != zero)
        .collect();
    rest.sort_by_key(|&q| {
        let pt = line.point(q);
        (
            pt.kind,
            order.rank(pt.canonical.a),
            order.rank(pt.canonical.b),
        )
    });
    zero.map(|z| (0, z))
        .into_iter()
        .chain(rest.into_iter().enumerate().map(|(i, q)| (i + 1, q)))
        .collect()
}
