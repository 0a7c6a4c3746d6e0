//! Self-checks over rings and lines, plus reference values for the
//! `GF(2)[x]/(x^3-x)` family.

use std::collections::BTreeMap;
use std::fmt;

use crate::ideal::{
    all_ideals, is_local, jacobson_radical, jacobson_radical_quasiregular, maximal_ideals,
    principal_ideal, quotient_ring,
};
use crate::line::{
    is_admissible, is_admissible_by_ideals, jacobson_points, label_neighbourhood,
    maximal_reductions, PointId, PointKind, ProjLine,
};
use crate::ring::{
    ring_from_text, BuildOptions, ElementId, ElementOrder, FiniteRing, RingRef, Structure,
};

/// Spec of the cubic quotient ring the reference values describe.
pub const CUBIC_SPEC: &str = "GF(2)[x]/(x^3-x)";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        if self.detail.is_empty() {
            write!(f, "[{tag}] {}", self.name)
        } else {
            write!(f, "[{tag}] {}: {}", self.name, self.detail)
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
    /// Values reported for information only.
    pub notes: Vec<String>,
}

impl Report {
    fn push(&mut self, name: impl Into<String>, result: Result<(), String>) {
        let (passed, detail) = match result {
            Ok(()) => (true, String::new()),
            Err(d) => (false, d),
        };
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail,
        });
    }

    fn expect_eq<T: PartialEq + fmt::Debug>(
        &mut self,
        name: impl Into<String>,
        found: T,
        expected: T,
    ) {
        let r = if found == expected {
            Ok(())
        } else {
            Err(format!("expected {expected:?}, found {found:?}"))
        };
        self.push(name, r);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
        self.notes.extend(other.notes);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }
}

/// Ring axioms, the unit/zero-divisor split, and the ideal machinery.
pub fn ring_checks(ring: &RingRef) -> Report {
    let mut rep = Report::default();
    let label = ring.description().to_string();
    let name = |c: &str| format!("{label}: {c}");

    let axioms = ring.verify_axioms();
    let broken = axioms.is_err();
    rep.push(name("ring axioms"), axioms.map_err(|e| e.to_string()));
    if broken {
        // Everything below presumes a ring.
        return rep;
    }

    rep.push(
        name("units and zero-divisors partition the ring"),
        partition(ring),
    );
    rep.push(name("units form a group"), unit_group(ring));
    rep.push(
        name("element names round-trip"),
        ring.elements()
            .find(|&a| ring.parse_element(ring.name(a)) != Ok(a))
            .map_or(Ok(()), |a| {
                Err(format!("`{}` does not resolve to itself", ring.name(a)))
            }),
    );

    let ideals = all_ideals(ring);
    let bad = ideals
        .iter()
        .chain(
            ring.elements()
                .map(|a| principal_ideal(ring, a))
                .collect::<Vec<_>>()
                .iter(),
        )
        .find_map(|i| i.check().err().map(|e| format!("{i}: {e}")));
    rep.push(
        name("every computed ideal passes the ideal predicate"),
        bad.map_or(Ok(()), Err),
    );

    let mut closed = Ok(());
    'outer: for i in &ideals {
        for j in &ideals {
            for k in [i.sum(j), i.intersection(j)] {
                if !ideals.contains(&k) {
                    closed = Err(format!("{k} from {i} and {j} is missing"));
                    break 'outer;
                }
            }
        }
    }
    rep.push(
        name("ideal lattice closed under sum and intersection"),
        closed,
    );

    let radical = jacobson_radical(ring);
    let oracle = jacobson_radical_quasiregular(ring);
    rep.push(
        name("radical equals quasi-regular elements"),
        if radical == oracle {
            Ok(())
        } else {
            Err(format!("{radical} vs {oracle}"))
        },
    );

    let mut fields = Ok(());
    let mut kernels = Ok(());
    for m in maximal_ideals(ring) {
        match quotient_ring(ring, &m) {
            Ok(q) => {
                let r = &q.ring;
                if let Some(a) = r.elements().find(|&a| a != r.zero() && !r.is_unit(a)) {
                    fields = Err(format!("{}/{m}: {} is not a unit", label, r.name(a)));
                }
                if q.projection.check().is_err() || q.projection.kernel().ok() != Some(m.clone()) {
                    kernels = Err(format!("projection modulo {m}"));
                }
            }
            Err(e) => fields = Err(e.to_string()),
        }
    }
    rep.push(name("quotients by maximal ideals are fields"), fields);
    rep.push(
        name("canonical projections are homomorphisms with the right kernel"),
        kernels,
    );
    rep
}

fn partition(ring: &FiniteRing) -> Result<(), String> {
    for a in ring.elements() {
        let has_inverse = ring.elements().any(|b| ring.mul(a, b) == ring.one());
        let annihilated = ring
            .elements()
            .any(|b| b != ring.zero() && ring.mul(a, b) == ring.zero());
        let zd = ring.zero_divisors().contains(&a);
        if has_inverse == zd || (zd && a != ring.zero() && !annihilated) {
            return Err(format!("element {}", ring.name(a)));
        }
        if let Some(b) = ring.inverse(a) {
            if ring.mul(a, b) != ring.one() {
                return Err(format!("inverse of {}", ring.name(a)));
            }
        }
    }
    Ok(())
}

fn unit_group(ring: &FiniteRing) -> Result<(), String> {
    let units = ring.units();
    for &u in &units {
        if !ring.inverse(u).is_some_and(|v| ring.is_unit(v)) {
            return Err(format!("inverse of {}", ring.name(u)));
        }
        for &v in &units {
            if !ring.is_unit(ring.mul(u, v)) {
                return Err(format!("{} * {}", ring.name(u), ring.name(v)));
            }
        }
    }
    Ok(())
}

/// Orbit structure, admissibility, neighbour-relation laws and reductions.
pub fn line_checks(line: &ProjLine) -> Report {
    let mut rep = Report::default();
    let ring = line.ring();
    let label = format!("P({})", ring.description());
    let name = |c: &str| format!("{label}: {c}");
    let units = ring.units().len();

    rep.push(
        name("unit orbits are free and partition the admissible pairs"),
        if line.points().iter().all(|p| p.orbit.len() == units)
            && line.len() * units == line.admissible_pair_count()
        {
            Ok(())
        } else {
            Err(format!(
                "{} points x {units} units vs {} pairs",
                line.len(),
                line.admissible_pair_count()
            ))
        },
    );

    let maximal = maximal_ideals(ring);
    let mut cross = Ok(());
    'scan: for a in ring.elements() {
        for b in ring.elements() {
            let gl2 = is_admissible(ring, a, b);
            if gl2 != is_admissible_by_ideals(&maximal, a, b)
                || gl2 != line.point_of(crate::line::PointRep::new(a, b)).is_some()
            {
                cross = Err(format!("({},{})", ring.name(a), ring.name(b)));
                break 'scan;
            }
        }
    }
    rep.push(
        name("admissibility agrees with the maximal-ideal criterion"),
        cross,
    );

    rep.push(
        name("pair class is independent of representatives"),
        line.check_representative_independence()
            .map_err(|(p, q)| format!("{} / {}", line.point_name(p), line.point_name(q))),
    );

    let mut sym = Ok(());
    for p in line.ids() {
        if !line.is_neighbour(p, p) {
            sym = Err(format!("{} is not its own neighbour", line.point_name(p)));
        }
        for q in line.ids() {
            if line.pair_class(p, q) != line.pair_class(q, p) {
                sym = Err(format!("{} / {}", line.point_name(p), line.point_name(q)));
            }
        }
    }
    rep.push(name("neighbour relation is reflexive and symmetric"), sym);

    let kinds = line.points().iter().find(|p| {
        let unit = ring.is_unit(p.canonical.a) || ring.is_unit(p.canonical.b);
        (p.kind == PointKind::TypeI) != unit
    });
    rep.push(
        name("point kinds match coordinate classes"),
        kinds.map_or(Ok(()), |p| Err(line.pair_name(p.canonical))),
    );

    match maximal_reductions(line) {
        Ok(reds) => {
            rep.push(
                name("reductions modulo maximal ideals are well defined"),
                Ok(()),
            );
            let jac = line
                .ids()
                .map(|p| jacobson_points(line, &reds, p).len())
                .collect::<Vec<_>>();
            rep.notes.push(format!(
                "{label}: Jacobson points per point {:?}",
                histogram(jac)
            ));
        }
        Err(e) => rep.push(
            name("reductions modulo maximal ideals are well defined"),
            Err(e.to_string()),
        ),
    }

    let counts = line.count_formulas(&maximal);
    rep.notes.push(format!(
        "{label}: type I {} (formula {:?}), type II {} (formula {:?}), s = {}",
        counts.type_i_actual,
        counts.type_i_formula(),
        counts.type_ii_actual,
        counts.type_ii_formula(),
        counts.same_ideal_pairs
    ));

    if let Structure::Prime { p } = ring.structure() {
        rep.expect_eq(name("PG(1,p) has p+1 points"), line.len(), *p as usize + 1);
    }
    rep
}

fn histogram(values: impl IntoIterator<Item = usize>) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for v in values {
        *h.entry(v).or_insert(0) += 1;
    }
    h
}

/// Generic checks for one ring and its line.
pub fn generic_suite(ring: &RingRef) -> Report {
    let mut rep = ring_checks(ring);
    rep.extend(line_checks(&ProjLine::new(ring)));
    rep
}

const CUBIC_ORDER: [&str; 8] = ["0", "1", "x", "x^2", "x+1", "x^2+1", "x^2+x", "x^2+x+1"];

const CUBIC_MUL: [[&str; 8]; 8] = [
    ["0", "0", "0", "0", "0", "0", "0", "0"],
    ["0", "1", "x", "x^2", "x+1", "x^2+1", "x^2+x", "x^2+x+1"],
    ["0", "x", "x^2", "x", "x^2+x", "0", "x^2+x", "x^2"],
    ["0", "x^2", "x", "x^2", "x^2+x", "0", "x^2+x", "x"],
    ["0", "x+1", "x^2+x", "x^2+x", "x^2+1", "x^2+1", "0", "x+1"],
    ["0", "x^2+1", "0", "0", "x^2+1", "x^2+1", "0", "x^2+1"],
    ["0", "x^2+x", "x^2+x", "x^2+x", "0", "0", "0", "x^2+x"],
    ["0", "x^2+x+1", "x^2", "x", "x+1", "x^2+1", "x^2+x", "1"],
];

const REDUCED_MUL: [[&str; 4]; 4] = [
    ["0", "0", "0", "0"],
    ["0", "1", "x", "x+1"],
    ["0", "x", "x", "0"],
    ["0", "x+1", "0", "x+1"],
];

/// The three lines over the cubic ring, its reduction modulo the radical, and
/// `GF(2)`: reference values plus every generic check.
pub fn reference_suite() -> Report {
    let mut rep = Report::default();
    let r = ring_from_text(CUBIC_SPEC, &BuildOptions::default()).expect("cubic ring builds");
    let e = |s: &str| r.parse_element(s).expect("known element");
    let names = |xs: &[ElementId], ring: &FiniteRing| -> Vec<String> {
        xs.iter().map(|&x| ring.name(x).to_string()).collect()
    };

    rep.expect_eq("cubic: 8 elements", r.len(), 8);
    rep.expect_eq("cubic: characteristic 2", r.characteristic(), 2);
    rep.expect_eq(
        "cubic: units",
        names(&r.units(), &r),
        vec!["1".into(), "x^2+x+1".into()],
    );
    rep.expect_eq("cubic: 6 zero-divisors", r.zero_divisors().len(), 6);
    let table_ok = CUBIC_ORDER.iter().enumerate().all(|(i, a)| {
        CUBIC_ORDER
            .iter()
            .enumerate()
            .all(|(j, b)| r.mul(e(a), e(b)) == e(CUBIC_MUL[i][j]))
    });
    rep.push(
        "cubic: multiplication table",
        if table_ok {
            Ok(())
        } else {
            Err("cell mismatch".into())
        },
    );

    let ix = principal_ideal(&r, e("x"));
    let ix1 = principal_ideal(&r, e("x+1"));
    let max = maximal_ideals(&r);
    rep.expect_eq(
        "cubic: <x>",
        ix.names(),
        strings(&["0", "x", "x^2", "x^2+x"]),
    );
    rep.expect_eq(
        "cubic: <x+1>",
        ix1.names(),
        strings(&["0", "x+1", "x^2+1", "x^2+x"]),
    );
    rep.expect_eq(
        "cubic: maximal ideals are <x> and <x+1>",
        max.len() == 2 && max.contains(&ix) && max.contains(&ix1),
        true,
    );
    let jac = jacobson_radical(&r);
    rep.expect_eq(
        "cubic: Jacobson radical",
        jac.names(),
        strings(&["0", "x^2+x"]),
    );
    rep.expect_eq("cubic: not local", is_local(&r), false);

    let qx = quotient_ring(&r, &ix).expect("quotient");
    let qx1 = quotient_ring(&r, &ix1).expect("quotient");
    let qj = quotient_ring(&r, &jac).expect("quotient");
    let fibers = |q: &crate::ideal::QuotientRing| -> Vec<Vec<String>> {
        q.projection
            .fibers()
            .values()
            .map(|f| names(f, &r))
            .collect()
    };
    rep.expect_eq(
        "cubic/<x>: fibers",
        fibers(&qx),
        vec![
            strings(&["0", "x", "x^2", "x^2+x"]),
            strings(&["1", "x+1", "x^2+1", "x^2+x+1"]),
        ],
    );
    rep.expect_eq(
        "cubic/<x+1>: fibers",
        fibers(&qx1),
        vec![
            strings(&["0", "x+1", "x^2+1", "x^2+x"]),
            strings(&["1", "x", "x^2", "x^2+x+1"]),
        ],
    );
    rep.expect_eq(
        "cubic/J: fibers",
        fibers(&qj),
        vec![
            strings(&["0", "x^2+x"]),
            strings(&["1", "x^2+x+1"]),
            strings(&["x", "x^2"]),
            strings(&["x+1", "x^2+1"]),
        ],
    );
    let rt = &qj.ring;
    let te = |s: &str| rt.parse_element(s).expect("known element");
    let order4 = ["0", "1", "x", "x+1"];
    let small_ok = order4.iter().enumerate().all(|(i, a)| {
        order4
            .iter()
            .enumerate()
            .all(|(j, b)| rt.mul(te(a), te(b)) == te(REDUCED_MUL[i][j]))
    });
    rep.push(
        "cubic/J: multiplication table",
        if small_ok {
            Ok(())
        } else {
            Err("cell mismatch".into())
        },
    );

    let line = ProjLine::new(&r);
    let reduced = ProjLine::new(rt);
    let counts = line.count_formulas(&max);
    rep.expect_eq(
        "P(cubic): 18 points, 14 + 4",
        (
            line.len(),
            line.count_of(PointKind::TypeI),
            line.count_of(PointKind::TypeII),
        ),
        (18, 14, 4),
    );
    rep.expect_eq(
        "P(cubic): point-count formulas",
        (
            counts.type_i_formula(),
            counts.type_ii_formula(),
            counts.same_ideal_pairs,
        ),
        (Some(14), Some(4), 28),
    );
    rep.expect_eq(
        "P(cubic/J): 9 points, 7 + 2",
        (reduced.len(), reduced.count_of(PointKind::TypeI)),
        (9, 7),
    );

    let prof = line.neighbourhood_profile();
    rep.expect_eq(
        "P(cubic): neighbourhood sizes",
        prof.sizes.keys().copied().collect::<Vec<_>>(),
        vec![9],
    );
    rep.expect_eq(
        "P(cubic): distant pairs share 4",
        prof.distant_pair_overlaps
            .keys()
            .copied()
            .collect::<Vec<_>>(),
        vec![4],
    );
    rep.expect_eq(
        "P(cubic): distant triples share 0",
        prof.distant_triple_overlaps
            .keys()
            .copied()
            .collect::<Vec<_>>(),
        vec![0],
    );
    rep.expect_eq(
        "P(cubic): neighbour relation not transitive",
        prof.is_transitive(),
        false,
    );
    let prof2 = reduced.neighbourhood_profile();
    rep.expect_eq(
        "P(cubic/J): sizes 4, pairs 2, triples 0",
        (
            keys(&prof2.sizes),
            keys(&prof2.distant_pair_overlaps),
            keys(&prof2.distant_triple_overlaps),
        ),
        (vec![4], vec![2], vec![0]),
    );

    let reds = maximal_reductions(&line).expect("reductions");
    let order = ElementOrder::by_term_count(&r);
    let triad = line.default_triad().expect("default triad");
    let labelled: Vec<BTreeMap<usize, PointId>> = triad
        .iter()
        .map(|&p| {
            label_neighbourhood(&line, &reds, p, &order)
                .into_iter()
                .collect()
        })
        .collect();
    let (u, v, w) = (&labelled[0], &labelled[1], &labelled[2]);
    let u_names: Vec<String> = (0..=8).map(|i| line.point_name(u[&i])).collect();
    rep.expect_eq(
        "P(cubic): neighbourhood of (1,0)",
        u_names,
        strings(&[
            "(1,x^2+x)",
            "(1,x)",
            "(1,x^2)",
            "(1,x+1)",
            "(1,x^2+1)",
            "(x,x+1)",
            "(x,x^2+1)",
            "(x+1,x)",
            "(x^2+1,x)",
        ]),
    );
    let ident = (1..=4).all(|i| u[&i] == w[&i])
        && (5..=8).all(|j| u[&j] == v[&j])
        && (1..=4).all(|k| v[&k] == w[&(k + 4)]);
    rep.expect_eq("P(cubic): U_i = W_i, U_j = V_j, V_k = W_k+4", ident, true);

    let jac_counts: Vec<usize> = line
        .ids()
        .map(|p| jacobson_points(&line, &reds, p).len())
        .collect();
    rep.expect_eq(
        "P(cubic): one Jacobson point each",
        histogram(jac_counts),
        BTreeMap::from([(1, 18)]),
    );
    let reds2 = maximal_reductions(&reduced).expect("reductions");
    rep.expect_eq(
        "P(cubic/J): no Jacobson points",
        reduced
            .ids()
            .all(|p| jacobson_points(&reduced, &reds2, p).is_empty()),
        true,
    );

    let pg = ProjLine::new(&qx.ring);
    let hat = crate::line::induced_map(&qx.projection, &line, &pg).expect("induced");
    let bar_line = ProjLine::new(&qx1.ring);
    let bar = crate::line::induced_map(&qx1.projection, &line, &bar_line).expect("induced");
    let tilde = crate::line::induced_map(&qj.projection, &line, &reduced).expect("induced");
    let image_of =
        |m: &crate::line::InducedMap, tgt: &ProjLine, i: usize| tgt.point_name(m.apply(u[&i]));
    let group = |m: &crate::line::InducedMap, tgt: &ProjLine| -> BTreeMap<String, Vec<usize>> {
        let mut g: BTreeMap<String, Vec<usize>> = BTreeMap::new();
        for i in 0..=8 {
            g.entry(image_of(m, tgt, i)).or_default().push(i);
        }
        g
    };
    rep.expect_eq(
        "cubic -> GF(2) mod <x> on U's neighbourhood",
        group(&hat, &pg),
        BTreeMap::from([
            ("(1,0)".into(), vec![0, 1, 2, 7, 8]),
            ("(0,1)".into(), vec![5, 6]),
            ("(1,1)".into(), vec![3, 4]),
        ]),
    );
    rep.expect_eq(
        "cubic -> GF(2) mod <x+1> on U's neighbourhood",
        group(&bar, &bar_line),
        BTreeMap::from([
            ("(1,0)".into(), vec![0, 3, 4, 5, 6]),
            ("(0,1)".into(), vec![7, 8]),
            ("(1,1)".into(), vec![1, 2]),
        ]),
    );
    let sizes = |m: &crate::line::InducedMap| m.fibers().iter().map(Vec::len).collect::<Vec<_>>();
    rep.expect_eq(
        "maps to PG(1,2) have three fibers of 6",
        (sizes(&hat), sizes(&bar)),
        (vec![6; 3], vec![6; 3]),
    );
    rep.expect_eq(
        "map to P(cubic/J) has nine fibers of 2",
        sizes(&tilde),
        vec![2; 9],
    );
    let rt_triad = reduced.default_triad().expect("triad");
    let triad_ok = (0..3).all(|k| {
        let zero = labelled[k][&0];
        tilde.apply(triad[k]) == rt_triad[k] && tilde.apply(zero) == rt_triad[k]
    });
    rep.expect_eq(
        "U,U0 / V,V0 / W,W0 map to the reduced triad",
        triad_ok,
        true,
    );

    let gf2 = ring_from_text("GF(2)", &BuildOptions::default()).expect("GF(2)");
    let pg2 = ProjLine::new(&gf2);
    let reds3 = maximal_reductions(&pg2).expect("reductions");
    rep.expect_eq(
        "PG(1,2): 3 points, no neighbours",
        (pg2.len(), pg2.neighbour_graph().edge_count()),
        (3, 0),
    );
    rep.expect_eq(
        "PG(1,2): no Jacobson points",
        pg2.ids()
            .all(|p| jacobson_points(&pg2, &reds3, p).is_empty()),
        true,
    );

    for ring in [&r, rt, &gf2] {
        rep.extend(generic_suite(ring));
    }
    rep
}

fn strings(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

fn keys(m: &BTreeMap<usize, usize>) -> Vec<usize> {
    m.keys().copied().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_suite_passes() {
        let rep = reference_suite();
        for c in &rep.checks {
            assert!(c.passed, "{c}");
        }
        assert!(rep.checks.len() > 40);
    }

    #[test]
    fn generic_suite_on_gf3() {
        let r = ring_from_text("GF(3)", &BuildOptions::default()).unwrap();
        let rep = generic_suite(&r);
        assert!(rep.passed(), "{:?}", rep.first_failure());
        assert!(rep.checks.iter().any(|c| c.name.contains("p+1")));
    }

    #[test]
    fn corrupted_ring_fails_with_witness() {
        let names: Vec<String> = ["0", "1", "a"].iter().map(|s| s.to_string()).collect();
        let add = vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]];
        // GF(3) with a*a corrupted to a
        let mul = vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 2]];
        let ring =
            std::sync::Arc::new(FiniteRing::from_tables("corrupt", names, &add, &mul).unwrap());
        let rep = ring_checks(&ring);
        let fail = rep.first_failure().expect("must fail");
        assert!(fail.name.contains("ring axioms"));
        assert!(fail.detail.contains("fails at"));
    }
}
