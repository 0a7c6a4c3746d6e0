//! Machine-readable forms of ideals, homomorphisms and lines.
//!
//! ```text
//! ideal = {"ring": spec, "elements": [name, ...]}
//! hom   = {"domain": spec, "codomain": spec, "map": [[from, to], ...]}
//! line  = {"ring": spec, "points": [{"canonical": [a, b], "kind": "I"|"II",
//!          "orbit": [[a, b], ...]}, ...], "edges": [[i, j], ...]}
//! ```
//!
//! Output is deterministic: equal inputs serialize to identical bytes.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hom::{HomError, RingHom};
use crate::ideal::{Ideal, IdealError};
use crate::line::{NeighbourGraph, PointKind, ProjLine};
use crate::ring::{ElementError, ElementId, RingRef};

#[derive(Debug, Error)]
pub enum ExportError {
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Element(#[from] ElementError),
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Hom(#[from] HomError),
    #[error("document describes `{found}`, expected `{expected}`")]
    WrongRing { expected: String, found: String },
    #[error("element {0} is mapped more than once or not at all")]
    IncompleteMap(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealDoc {
    pub ring: String,
    pub elements: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomDoc {
    pub domain: String,
    pub codomain: String,
    pub map: Vec<[String; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointDoc {
    pub canonical: [String; 2],
    pub kind: String,
    pub orbit: Vec<[String; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineDoc {
    pub ring: String,
    pub points: Vec<PointDoc>,
    pub edges: Vec<[usize; 2]>,
}

fn check_ring(ring: &RingRef, found: &str) -> Result<(), ExportError> {
    if ring.description() == found {
        Ok(())
    } else {
        Err(ExportError::WrongRing {
            expected: ring.description().into(),
            found: found.into(),
        })
    }
}

pub fn ideal_doc(ideal: &Ideal) -> IdealDoc {
    IdealDoc {
        ring: ideal.ring().description().to_string(),
        elements: ideal.names(),
    }
}

/// Rebuilds and re-verifies an ideal of `ring`.
pub fn ideal_from_doc(ring: &RingRef, doc: &IdealDoc) -> Result<Ideal, ExportError> {
    check_ring(ring, &doc.ring)?;
    let elements = doc
        .elements
        .iter()
        .map(|n| ring.parse_element(n))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Ideal::from_elements(ring, elements)?)
}

pub fn hom_doc(h: &RingHom) -> HomDoc {
    let (d, c) = (h.domain(), h.codomain());
    HomDoc {
        domain: d.description().to_string(),
        codomain: c.description().to_string(),
        map: d
            .elements()
            .map(|a| [d.name(a).to_string(), c.name(h.apply(a)).to_string()])
            .collect(),
    }
}

/// Rebuilds a homomorphism, checking every law.
pub fn hom_from_doc(
    domain: &RingRef,
    codomain: &RingRef,
    doc: &HomDoc,
) -> Result<RingHom, ExportError> {
    check_ring(domain, &doc.domain)?;
    check_ring(codomain, &doc.codomain)?;
    let mut map: Vec<Option<ElementId>> = vec![None; domain.len()];
    for [from, to] in &doc.map {
        let a = domain.parse_element(from)?;
        if map[a.index()]
            .replace(codomain.parse_element(to)?)
            .is_some()
        {
            return Err(ExportError::IncompleteMap(from.clone()));
        }
    }
    let map = map
        .into_iter()
        .enumerate()
        .map(|(i, e)| e.ok_or_else(|| ExportError::IncompleteMap(domain.names()[i].clone())))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(RingHom::new(domain.clone(), codomain.clone(), map)?)
}

pub fn line_doc(line: &ProjLine, graph: &NeighbourGraph) -> LineDoc {
    let ring = line.ring();
    let pair = |r: crate::line::PointRep| [ring.name(r.a).to_string(), ring.name(r.b).to_string()];
    LineDoc {
        ring: ring.description().to_string(),
        points: line
            .points()
            .iter()
            .map(|p| PointDoc {
                canonical: pair(p.canonical),
                kind: p.kind.label().to_string(),
                orbit: p.orbit.iter().map(|&r| pair(r)).collect(),
            })
            .collect(),
        edges: graph.edges().into_iter().map(|(p, q)| [p.0, q.0]).collect(),
    }
}

/// Pretty-printed JSON terminated by a newline.
pub fn to_json<T: Serialize>(doc: &T) -> Result<String, ExportError> {
    let mut s = serde_json::to_string_pretty(doc)?;
    s.push('\n');
    Ok(s)
}

/// Graphviz rendering of the neighbour graph. Vertices are labelled with their
/// representatives; second-kind points are drawn as boxes.
pub fn to_dot(line: &ProjLine, graph: &NeighbourGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "graph {} {{", quote(line.ring().description()));
    for p in line.ids() {
        let pt = line.point(p);
        let label = quote(&line.point_name(p));
        match pt.kind {
            PointKind::TypeI => {
                let _ = writeln!(out, "  {} [label={label}, kind=\"I\"];", p.0);
            }
            PointKind::TypeII => {
                let _ = writeln!(out, "  {} [label={label}, kind=\"II\", shape=box];", p.0);
            }
        }
    }
    for (p, q) in graph.edges() {
        let _ = writeln!(out, "  {} -- {};", p.0, q.0);
    }
    out.push_str("}\n");
    out
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::{jacobson_radical, quotient_ring};
    use crate::ring::{ring_from_text, BuildOptions};

    fn ring(text: &str) -> RingRef {
        ring_from_text(text, &BuildOptions::default()).unwrap()
    }

    #[test]
    fn ideal_document() {
        let r = ring("GF(2)[x]/(x^3-x)");
        let j = jacobson_radical(&r);
        let doc = ideal_doc(&j);
        assert_eq!(doc.ring, "GF(2)[x]/(x^3+x)");
        assert_eq!(doc.elements, ["0", "x^2+x"]);
        let json = to_json(&doc).unwrap();
        let back: IdealDoc = serde_json::from_str(&json).unwrap();
        assert_eq!(ideal_from_doc(&r, &back).unwrap(), j);
        let bad = IdealDoc {
            ring: doc.ring.clone(),
            elements: vec!["0".into(), "x".into()],
        };
        assert!(matches!(
            ideal_from_doc(&r, &bad),
            Err(ExportError::Ideal(_))
        ));
        let other = IdealDoc {
            ring: "GF(2)".into(),
            elements: vec![],
        };
        assert!(matches!(
            ideal_from_doc(&r, &other),
            Err(ExportError::WrongRing { .. })
        ));
    }

    #[test]
    fn hom_document() {
        let r = ring("GF(2)[x]/(x^3-x)");
        let q = quotient_ring(&r, &jacobson_radical(&r)).unwrap();
        let doc = hom_doc(&q.projection);
        assert_eq!(doc.map[6], ["x^2+x".to_string(), "0".to_string()]);
        let h = hom_from_doc(&r, &q.ring, &doc).unwrap();
        assert_eq!(h, q.projection);
        let mut broken = doc.clone();
        broken.map.pop();
        assert!(matches!(
            hom_from_doc(&r, &q.ring, &broken),
            Err(ExportError::IncompleteMap(_))
        ));
        let mut wrong = doc;
        wrong.map[2][1] = "1".into();
        assert!(matches!(
            hom_from_doc(&r, &q.ring, &wrong),
            Err(ExportError::Hom(_))
        ));
    }

    #[test]
    fn dot_output() {
        let l = ProjLine::new(&ring("GF(2)*GF(2)"));
        let dot = to_dot(&l, &l.neighbour_graph());
        assert!(dot.starts_with("graph \"GF(2)*GF(2)\" {\n"));
        assert_eq!(dot.matches(" -- ").count(), 18);
        assert_eq!(dot.matches("shape=box").count(), 2);
        assert!(dot.ends_with("}\n"));
    }
}
