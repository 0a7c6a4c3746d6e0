//! Display conventions: element order and point labels.

use ringline_core::{
    label_neighbourhood, maximal_reductions, ElementOrder, FiniteRing, LineError, PointId,
    ProjLine, Reduction,
};

/// Canonical text of the one ring whose tables are shown in term-count order.
const TERM_ORDERED: &str = "GF(2)[x]/(x^3+x)";

/// Listing order for elements: by number of terms for the cubic ring over
/// `GF(2)`, the canonical order for everything else.
pub(crate) fn presentation_order(ring: &FiniteRing) -> ElementOrder {
    if ring.description() == TERM_ORDERED {
        ElementOrder::by_term_count(ring)
    } else {
        ElementOrder::canonical(ring)
    }
}

pub(crate) const TRIAD_LETTERS: [&str; 3] = ["U", "V", "W"];

/// Labels of every point: `U`, `V`, `W` for `(1,0)`, `(0,1)`, `(1,1)` and
/// `U0`, `U1`, ... for their neighbours. A point may carry several labels.
pub(crate) struct PointLabels {
    pub triad: Option<[PointId; 3]>,
    pub reductions: Vec<Reduction>,
    labels: Vec<Vec<String>>,
    /// `numbered[k]` lists `(index, point)` for the neighbourhood of triad point `k`.
    pub numbered: Vec<Vec<(usize, PointId)>>,
}

impl PointLabels {
    pub(crate) fn new(line: &ProjLine) -> Result<Self, LineError> {
        let reductions = maximal_reductions(line)?;
        let order = presentation_order(line.ring());
        let triad = line.default_triad();
        let mut labels = vec![Vec::new(); line.len()];
        let mut numbered = Vec::new();
        if let Some(t) = triad {
            for (letter, p) in TRIAD_LETTERS.iter().zip(t) {
                labels[p.0].push(letter.to_string());
                let nb = label_neighbourhood(line, &reductions, p, &order);
                for &(i, q) in &nb {
                    labels[q.0].push(format!("{letter}{i}"));
                }
                numbered.push(nb);
            }
        }
        Ok(Self {
            triad,
            reductions,
            labels,
            numbered,
        })
    }

    pub(crate) fn of(&self, p: PointId) -> &[String] {
        &self.labels[p.0]
    }

    /// Labels joined by `/`, empty when the point has none.
    pub(crate) fn joined(&self, p: PointId) -> String {
        self.labels[p.0].join("/")
    }
}
