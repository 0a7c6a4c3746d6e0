use std::collections::BTreeMap;

use ringline_core::export::{hom_doc, line_doc, to_dot};
use ringline_core::verify::{generic_suite, reference_suite, Report};
use ringline_core::{
    all_ideals, enumerate_points, induced_map, is_local, jacobson_points, jacobson_radical,
    label_neighbourhood, maximal_ideals, principal_ideal, quotient_ring, ring_from_text,
    BuildError, BuildOptions, ElementError, ElementId, FiniteRing, Ideal, LineError, PointId,
    PointKind, ProjLine, RingError, RingRef, SpecError,
};
use serde_json::{json, Value};

use crate::labels::{presentation_order, PointLabels, TRIAD_LETTERS};
use crate::text::{csv, fields, multiset, set, table};
use crate::{exit, Command, Failure, Format, Op, Output, OutputArgs, RingArgs};

pub(crate) fn execute(cmd: &Command) -> Result<Output, Failure> {
    match cmd {
        Command::RingInfo(a) => ring_info(a),
        Command::RingTable { ring, op } => ring_table(ring, *op),
        Command::LinePoints(a) => line_points(a),
        Command::LineNeighbours { ring, point } => line_neighbours(ring, point),
        Command::LineStats(a) => line_stats(a),
        Command::LineGraph(a) => line_graph(a),
        Command::HomInduced { ring, ideal } => hom_induced(ring, ideal),
        Command::Verify { ring, output } => verify(ring.as_deref(), output),
    }
}

fn options(o: &OutputArgs) -> BuildOptions {
    BuildOptions {
        max_elements: o.max_elements,
    }
}

fn build(text: &str, o: &OutputArgs) -> Result<RingRef, Failure> {
    ring_from_text(text, &options(o)).map_err(|e| match e {
        BuildError::Spec(e) => Failure::new(exit::SPEC, spec_diagnostic(text, &e)),
        BuildError::Ring(e) => ring_failure(e),
    })
}

fn ring_failure(e: RingError) -> Failure {
    match e {
        RingError::BoundExceeded { .. } => Failure::new(
            exit::BOUND,
            format!("{e} (raise --max-elements or RINGLINE_MAX_ELEMENTS)"),
        ),
        other => Failure::new(exit::INTERNAL, other.to_string()),
    }
}

/// The message followed by the input with a caret under the offending offset.
fn spec_diagnostic(text: &str, e: &SpecError) -> String {
    let pos = e.position().min(text.len());
    let col = text.get(..pos).map_or(pos, |s| s.chars().count());
    format!("{e}\n  {text}\n  {}^", " ".repeat(col))
}

fn element_failure(e: ElementError) -> Failure {
    Failure::new(exit::ELEMENT, e.to_string())
}

fn line_failure(e: LineError) -> Failure {
    match e {
        LineError::Bound(e) => ring_failure(e),
        LineError::Element(e) => element_failure(e),
        LineError::MalformedPoint(_) | LineError::Inadmissible(_) => {
            Failure::new(exit::POINT, e.to_string())
        }
        LineError::Quotient(_) => Failure::new(exit::IDEAL, e.to_string()),
        other => Failure::new(exit::INTERNAL, other.to_string()),
    }
}

fn unsupported(command: &str, format: Format) -> Failure {
    Failure::new(
        exit::FORMAT,
        format!("{command} does not support --format {format}"),
    )
}

fn json_out(v: &Value) -> Result<Output, Failure> {
    let mut s =
        serde_json::to_string_pretty(v).map_err(|e| Failure::new(exit::INTERNAL, e.to_string()))?;
    s.push('\n');
    Ok(s.into())
}

fn csv_out(rows: &[Vec<String>]) -> Result<Output, Failure> {
    csv(rows)
        .map(Output::from)
        .map_err(|e| Failure::new(exit::INTERNAL, e.to_string()))
}

fn line_of(ring: &RingRef, o: &OutputArgs) -> Result<ProjLine, Failure> {
    enumerate_points(ring, &options(o)).map_err(line_failure)
}

fn names_in_order(ring: &FiniteRing, xs: &[ElementId]) -> Vec<String> {
    let order = presentation_order(ring);
    let mut xs = xs.to_vec();
    xs.sort_by_key(|&e| order.rank(e));
    xs.iter().map(|&e| ring.name(e).to_string()).collect()
}

fn with_count(names: &[String]) -> String {
    format!("{}: {}", names.len(), names.join(", "))
}

fn generator(ring: &RingRef, ideal: &Ideal) -> Option<ElementId> {
    presentation_order(ring)
        .sequence()
        .iter()
        .copied()
        .find(|&a| principal_ideal(ring, a) == *ideal)
}

fn ring_info(args: &RingArgs) -> Result<Output, Failure> {
    let ring = build(&args.ring, &args.output)?;
    let all: Vec<ElementId> = ring.elements().collect();
    let elements = names_in_order(&ring, &all);
    let units = names_in_order(&ring, &ring.units());
    let zds = names_in_order(&ring, &ring.zero_divisors());
    let ideals = all_ideals(&ring);
    let maximal = maximal_ideals(&ring);
    let jac = names_in_order(&ring, jacobson_radical(&ring).elements());
    let local = is_local(&ring);
    let rows: Vec<(Vec<String>, Option<String>, bool)> = ideals
        .iter()
        .map(|i| {
            let gen = generator(&ring, i).map(|g| ring.name(g).to_string());
            (
                names_in_order(&ring, i.elements()),
                gen,
                maximal.contains(i),
            )
        })
        .collect();
    match args.output.format {
        Format::Text => {
            let locality = if local {
                "local".to_string()
            } else {
                format!("not local ({} maximal ideals)", maximal.len())
            };
            let mut out = fields(&[
                ("ring", ring.description().to_string()),
                ("elements", with_count(&elements)),
                ("characteristic", ring.characteristic().to_string()),
                ("units", with_count(&units)),
                ("zero-divisors", with_count(&zds)),
                ("Jacobson radical", set(&jac)),
                ("locality", locality),
            ]);
            out.push_str(&format!("\nideals ({}):\n", rows.len()));
            let mut t = vec![vec![
                "size".to_string(),
                "generator".into(),
                "maximal".into(),
                "elements".into(),
            ]];
            for (names, gen, is_max) in &rows {
                t.push(vec![
                    names.len().to_string(),
                    gen.as_ref().map_or("-".into(), |g| format!("<{g}>")),
                    if *is_max { "yes" } else { "no" }.into(),
                    set(names),
                ]);
            }
            out.push_str(&table(&t));
            Ok(out.into())
        }
        Format::Json => json_out(&json!({
            "ring": ring.description(),
            "elements": elements,
            "characteristic": ring.characteristic(),
            "units": units,
            "zero_divisors": zds,
            "jacobson_radical": jac,
            "local": local,
            "ideals": rows.iter().map(|(names, gen, is_max)| json!({
                "elements": names,
                "generator": gen,
                "maximal": is_max,
            })).collect::<Vec<_>>(),
        })),
        f => Err(unsupported("ring-info", f)),
    }
}

fn ring_table(args: &RingArgs, op: Op) -> Result<Output, Failure> {
    let ring = build(&args.ring, &args.output)?;
    let order = presentation_order(&ring);
    let seq = order.sequence();
    let apply = |a, b| match op {
        Op::Add => ring.add(a, b),
        Op::Mul => ring.mul(a, b),
    };
    let symbol = match op {
        Op::Add => "+",
        Op::Mul => "*",
    };
    let header: Vec<String> = seq.iter().map(|&e| ring.name(e).to_string()).collect();
    let body: Vec<Vec<String>> = seq
        .iter()
        .map(|&a| {
            seq.iter()
                .map(|&b| ring.name(apply(a, b)).to_string())
                .collect()
        })
        .collect();
    let grid = || {
        let mut rows = vec![std::iter::once(symbol.to_string())
            .chain(header.iter().cloned())
            .collect::<Vec<_>>()];
        for (a, row) in header.iter().zip(&body) {
            rows.push(
                std::iter::once(a.clone())
                    .chain(row.iter().cloned())
                    .collect(),
            );
        }
        rows
    };
    match args.output.format {
        Format::Text => Ok(table(&grid()).into()),
        Format::Csv => csv_out(&grid()),
        Format::Json => json_out(&json!({
            "ring": ring.description(),
            "op": if op == Op::Add { "add" } else { "mul" },
            "elements": header,
            "table": body,
        })),
        f => Err(unsupported("ring-table", f)),
    }
}

fn kind_summary(line: &ProjLine) -> String {
    format!(
        "{} ({} of type I, {} of type II)",
        line.len(),
        line.count_of(PointKind::TypeI),
        line.count_of(PointKind::TypeII)
    )
}

fn line_points(args: &RingArgs) -> Result<Output, Failure> {
    let ring = build(&args.ring, &args.output)?;
    let line = line_of(&ring, &args.output)?;
    let labels = PointLabels::new(&line).map_err(line_failure)?;
    match args.output.format {
        Format::Text => {
            let mut out = fields(&[
                ("ring", ring.description().to_string()),
                ("points", kind_summary(&line)),
            ]);
            out.push('\n');
            let mut t = vec![vec![
                "#".to_string(),
                "point".into(),
                "kind".into(),
                "labels".into(),
                "orbit".into(),
            ]];
            for p in line.ids() {
                let pt = line.point(p);
                let orbit: Vec<String> = pt.orbit.iter().map(|&r| line.pair_name(r)).collect();
                t.push(vec![
                    p.0.to_string(),
                    line.point_name(p),
                    pt.kind.label().into(),
                    labels.joined(p),
                    orbit.join(" "),
                ]);
            }
            out.push_str(&table(&t));
            Ok(out.into())
        }
        Format::Csv => {
            let mut rows = vec![vec![
                "index".to_string(),
                "a".into(),
                "b".into(),
                "kind".into(),
                "labels".into(),
            ]];
            for p in line.ids() {
                let c = line.point(p).canonical;
                rows.push(vec![
                    p.0.to_string(),
                    ring.name(c.a).into(),
                    ring.name(c.b).into(),
                    line.point(p).kind.label().into(),
                    labels.joined(p),
                ]);
            }
            csv_out(&rows)
        }
        Format::Json => {
            let doc = line_doc(&line, &line.neighbour_graph());
            json_out(&json!({ "ring": doc.ring, "points": doc.points }))
        }
        f => Err(unsupported("line-points", f)),
    }
}

fn line_neighbours(args: &RingArgs, point: &str) -> Result<Output, Failure> {
    let ring = build(&args.ring, &args.output)?;
    let line = line_of(&ring, &args.output)?;
    let p = line.parse_point(point).map_err(line_failure)?;
    let labels = PointLabels::new(&line).map_err(line_failure)?;
    let slot = labels.triad.and_then(|t| t.iter().position(|&q| q == p));
    let (letter, numbered) = match slot {
        Some(k) => (TRIAD_LETTERS[k], labels.numbered[k].clone()),
        None => (
            "P",
            label_neighbourhood(&line, &labels.reductions, p, &presentation_order(&ring)),
        ),
    };
    let jac = jacobson_points(&line, &labels.reductions, p);
    let entries: Vec<(String, PointId)> = numbered
        .iter()
        .map(|&(i, q)| (format!("{letter}{i}"), q))
        .collect();
    match args.output.format {
        Format::Text => {
            let mut out = fields(&[
                ("ring", ring.description().to_string()),
                ("point", format!("{letter} {}", line.point_name(p))),
                ("neighbours", entries.len().to_string()),
                ("Jacobson points", jac.len().to_string()),
            ]);
            out.push('\n');
            let mut t = vec![vec![
                "label".to_string(),
                "point".into(),
                "kind".into(),
                "Jacobson".into(),
                "also".into(),
            ]];
            for (label, q) in &entries {
                let also: Vec<&str> = labels
                    .of(*q)
                    .iter()
                    .map(String::as_str)
                    .filter(|l| l != label)
                    .collect();
                t.push(vec![
                    label.clone(),
                    line.point_name(*q),
                    line.point(*q).kind.label().into(),
                    if jac.contains(q) { "yes" } else { "no" }.into(),
                    also.join("/"),
                ]);
            }
            out.push_str(&table(&t));
            Ok(out.into())
        }
        Format::Json => json_out(&json!({
            "ring": ring.description(),
            "point": line.point_name(p),
            "neighbours": entries.iter().map(|(label, q)| json!({
                "label": label,
                "point": line.point_name(*q),
                "kind": line.point(*q).kind.label(),
                "jacobson": jac.contains(q),
            })).collect::<Vec<_>>(),
        })),
        f => Err(unsupported("line-neighbours", f)),
    }
}

fn histogram(values: impl IntoIterator<Item = usize>) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for v in values {
        *h.entry(v).or_default() += 1;
    }
    h
}

fn line_stats(args: &RingArgs) -> Result<Output, Failure> {
    let ring = build(&args.ring, &args.output)?;
    let line = line_of(&ring, &args.output)?;
    let labels = PointLabels::new(&line).map_err(line_failure)?;
    let counts = line.count_formulas(&maximal_ideals(&ring));
    let profile = line.neighbourhood_profile();
    let jac = histogram(
        line.ids()
            .map(|p| jacobson_points(&line, &labels.reductions, p).len()),
    );
    let witness: Option<Vec<String>> = profile
        .non_transitivity_witness
        .map(|w| w.iter().map(|&p| line.point_name(p)).collect());
    match args.output.format {
        Format::Text => {
            let (t, z, u, s) = (
                counts.total,
                counts.zero_divisors,
                counts.units,
                counts.same_ideal_pairs,
            );
            let formula = |expr: String, num: usize, val: Option<usize>, actual: usize| match val {
                Some(v) => format!("{expr} = {num}/{u} = {v}, enumerated {actual}"),
                None => format!("{expr} = {num}/{u} is not an integer, enumerated {actual}"),
            };
            let transitivity = match &witness {
                Some(w) => format!(
                    "not transitive: {} ~ {} ~ {}, with {} and {} distant",
                    w[0], w[1], w[2], w[0], w[2]
                ),
                None => "transitive".into(),
            };
            Ok(fields(&[
                ("ring", ring.description().to_string()),
                ("points", kind_summary(&line)),
                ("admissible pairs", line.admissible_pair_count().to_string()),
                (
                    "type I count",
                    formula(
                        format!("({t}^2-{z}^2)/{u}"),
                        counts.type_i_numerator(),
                        counts.type_i_formula(),
                        counts.type_i_actual,
                    ),
                ),
                (
                    "type II count",
                    formula(
                        format!("({z}^2-{s})/{u}"),
                        counts.type_ii_numerator(),
                        counts.type_ii_formula(),
                        counts.type_ii_actual,
                    ),
                ),
                ("neighbourhood sizes", multiset(&profile.sizes, "points")),
                (
                    "distant pair overlaps",
                    multiset(&profile.distant_pair_overlaps, "pairs"),
                ),
                (
                    "distant triple overlaps",
                    multiset(&profile.distant_triple_overlaps, "triples"),
                ),
                ("Jacobson points", multiset(&jac, "points")),
                ("neighbour relation", transitivity),
            ])
            .into())
        }
        Format::Json => json_out(&json!({
            "ring": ring.description(),
            "points": line.len(),
            "type_i": counts.type_i_actual,
            "type_ii": counts.type_ii_actual,
            "admissible_pairs": line.admissible_pair_count(),
            "formulas": {
                "elements": counts.total,
                "units": counts.units,
                "zero_divisors": counts.zero_divisors,
                "same_ideal_pairs": counts.same_ideal_pairs,
                "type_i": counts.type_i_formula(),
                "type_ii": counts.type_ii_formula(),
                "agrees": counts.agrees(),
            },
            "neighbourhood_sizes": profile.sizes,
            "distant_pair_overlaps": profile.distant_pair_overlaps,
            "distant_triple_overlaps": profile.distant_triple_overlaps,
            "jacobson_points": jac,
            "transitive": profile.is_transitive(),
            "non_transitivity_witness": witness,
        })),
        f => Err(unsupported("line-stats", f)),
    }
}

fn line_graph(args: &RingArgs) -> Result<Output, Failure> {
    let ring = build(&args.ring, &args.output)?;
    let line = line_of(&ring, &args.output)?;
    let graph = line.neighbour_graph();
    match args.output.format {
        Format::Text => {
            let mut out = fields(&[
                ("ring", ring.description().to_string()),
                ("vertices", graph.vertex_count().to_string()),
                ("edges", graph.edge_count().to_string()),
            ]);
            out.push('\n');
            let mut t = vec![vec![
                "#".to_string(),
                "point".into(),
                "kind".into(),
                "degree".into(),
                "neighbours".into(),
            ]];
            for p in line.ids() {
                let nb: Vec<String> = graph
                    .neighbours(p)
                    .iter()
                    .map(|q| q.0.to_string())
                    .collect();
                t.push(vec![
                    p.0.to_string(),
                    line.point_name(p),
                    line.point(p).kind.label().into(),
                    graph.degree(p).to_string(),
                    nb.join(" "),
                ]);
            }
            out.push_str(&table(&t));
            Ok(out.into())
        }
        Format::Json => {
            let doc = line_doc(&line, &graph);
            serde_json::to_value(&doc)
                .map_err(|e| Failure::new(exit::INTERNAL, e.to_string()))
                .and_then(|v| json_out(&v))
        }
        Format::Dot => Ok(to_dot(&line, &graph).into()),
        Format::Csv => {
            let mut rows = vec![vec!["source".to_string(), "target".into()]];
            for (p, q) in graph.edges() {
                rows.push(vec![line.point_name(p), line.point_name(q)]);
            }
            csv_out(&rows)
        }
    }
}

fn hom_induced(args: &RingArgs, ideal_text: &str) -> Result<Output, Failure> {
    let ring = build(&args.ring, &args.output)?;
    let line = line_of(&ring, &args.output)?;
    let ideal = if ideal_text.trim().eq_ignore_ascii_case("jacobson") {
        jacobson_radical(&ring)
    } else {
        principal_ideal(
            &ring,
            ring.parse_element(ideal_text).map_err(element_failure)?,
        )
    };
    let ideal_names = names_in_order(&ring, ideal.elements());
    if ideal.is_whole_ring() {
        return Err(Failure::new(
            exit::IDEAL,
            format!("`{ideal_text}` generates the whole ring; the quotient has no projective line"),
        ));
    }
    let q = quotient_ring(&ring, &ideal).map_err(|e| Failure::new(exit::IDEAL, e.to_string()))?;
    let target = line_of(&q.ring, &args.output)?;
    let map = induced_map(&q.projection, &line, &target).map_err(line_failure)?;
    let src = PointLabels::new(&line).map_err(line_failure)?;
    let dst = PointLabels::new(&target).map_err(line_failure)?;
    let quotient_names: Vec<String> = q.ring.names().to_vec();
    let tagged = |l: &ProjLine, labels: &PointLabels, p: PointId| {
        let j = labels.joined(p);
        if j.is_empty() {
            l.point_name(p)
        } else {
            format!("{} {j}", l.point_name(p))
        }
    };
    match args.output.format {
        Format::Text => {
            let field = q.ring.units().len() + 1 == q.ring.len();
            let mut out = fields(&[
                ("ring", ring.description().to_string()),
                ("ideal", set(&ideal_names)),
                (
                    "quotient",
                    format!(
                        "{} elements {}{}",
                        q.ring.len(),
                        set(&quotient_names),
                        if field { ", a field" } else { "" }
                    ),
                ),
                ("points", format!("{} -> {}", line.len(), target.len())),
            ]);
            out.push_str("\nfibers:\n");
            let mut t = vec![vec!["image".to_string(), "size".into(), "sources".into()]];
            for img in target.ids() {
                let sources: Vec<String> = map
                    .fiber(img)
                    .iter()
                    .map(|&p| tagged(&line, &src, p))
                    .collect();
                t.push(vec![
                    tagged(&target, &dst, img),
                    sources.len().to_string(),
                    sources.join(", "),
                ]);
            }
            out.push_str(&table(&t));
            if let Some(triad) = src.triad {
                let dst_rank = |p: PointId| {
                    dst.triad
                        .and_then(|t| t.iter().position(|&x| x == p))
                        .unwrap_or(3)
                };
                for (k, &u) in triad.iter().enumerate() {
                    let letter = TRIAD_LETTERS[k];
                    out.push_str(&format!(
                        "\nneighbourhood of {letter} {}:\n",
                        line.point_name(u)
                    ));
                    let mut groups: BTreeMap<(usize, PointId), Vec<String>> = BTreeMap::new();
                    let img = map.apply(u);
                    groups
                        .entry((dst_rank(img), img))
                        .or_default()
                        .push(letter.to_string());
                    for &(i, p) in &src.numbered[k] {
                        let img = map.apply(p);
                        groups
                            .entry((dst_rank(img), img))
                            .or_default()
                            .push(format!("{letter}{i}"));
                    }
                    let rows: Vec<Vec<String>> = groups
                        .iter()
                        .map(|(&(_, img), ls)| {
                            vec![ls.join(", "), "->".into(), tagged(&target, &dst, img)]
                        })
                        .collect();
                    out.push_str(&indent(&table(&rows)));
                }
            }
            Ok(out.into())
        }
        Format::Json => {
            let hom = serde_json::to_value(hom_doc(&q.projection))
                .map_err(|e| Failure::new(exit::INTERNAL, e.to_string()))?;
            json_out(&json!({
                "ring": ring.description(),
                "ideal": ideal_names,
                "quotient": { "ring": q.ring.description(), "elements": quotient_names },
                "projection": hom,
                "fibers": target.ids().map(|img| json!({
                    "image": target.point_name(img),
                    "sources": map.fiber(img).iter().map(|&p| line.point_name(p)).collect::<Vec<_>>(),
                })).collect::<Vec<_>>(),
            }))
        }
        f => Err(unsupported("hom-induced", f)),
    }
}

fn indent(s: &str) -> String {
    s.lines().map(|l| format!("  {l}\n")).collect()
}

fn verify(ring: Option<&str>, o: &OutputArgs) -> Result<Output, Failure> {
    let report: Report = match ring {
        None => reference_suite(),
        Some(text) => generic_suite(&build(text, o)?),
    };
    let status = if report.passed() {
        exit::OK
    } else {
        exit::CHECKS_FAILED
    };
    let failed = report.checks.iter().filter(|c| !c.passed).count();
    let stderr = report
        .first_failure()
        .map_or(String::new(), |c| format!("first failure: {c}\n"));
    let stdout = match o.format {
        Format::Text => {
            let mut out = String::new();
            for c in &report.checks {
                out.push_str(&format!("{c}\n"));
            }
            for n in &report.notes {
                out.push_str(&format!("note: {n}\n"));
            }
            out.push_str(&format!(
                "{} checks, {failed} failed\n",
                report.checks.len()
            ));
            out
        }
        Format::Json => {
            json_out(&json!({
                "checks": report.checks.iter().map(|c| json!({
                    "name": c.name,
                    "passed": c.passed,
                    "detail": c.detail,
                })).collect::<Vec<_>>(),
                "notes": report.notes,
                "passed": report.passed(),
            }))?
            .stdout
        }
        f => return Err(unsupported("verify", f)),
    };
    Ok(Output {
        stdout,
        stderr,
        status,
    })
}
