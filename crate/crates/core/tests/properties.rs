use std::sync::{Arc, OnceLock};

use proptest::prelude::*;
use ringline_core::*;

const SPECS: &[&str] = &[
    "GF(2)",
    "GF(3)",
    "GF(5)",
    "GF(2)*GF(2)",
    "GF(2)[x]/(x^2)",
    "GF(3)*GF(2)",
    "GF(2)[x]/(x^3-x)",
    "GF(2)[x]/(x^3+x+1)",
    "GF(3)[t]/(t^2+1)",
    "GF(3)[t]/(t^2)",
];

struct Fixture {
    ring: RingRef,
    line: ProjLine,
}

fn fixtures() -> &'static [Fixture] {
    static CELL: OnceLock<Vec<Fixture>> = OnceLock::new();
    CELL.get_or_init(|| {
        SPECS
            .iter()
            .map(|s| {
                let ring = ring_from_text(s, &BuildOptions::default()).unwrap();
                let line = ProjLine::new(&ring);
                Fixture { ring, line }
            })
            .collect()
    })
}

fn fixture_and_elements(k: usize) -> impl Strategy<Value = (usize, Vec<ElementId>)> {
    (0..SPECS.len()).prop_flat_map(move |i| {
        let n = fixtures()[i].ring.len();
        (
            Just(i),
            proptest::collection::vec((0..n).prop_map(ElementId::new), k),
        )
    })
}

fn fixture_and_points(k: usize) -> impl Strategy<Value = (usize, Vec<PointId>)> {
    (0..SPECS.len()).prop_flat_map(move |i| {
        let n = fixtures()[i].line.len();
        (
            Just(i),
            proptest::collection::vec((0..n).prop_map(PointId), k),
        )
    })
}

fn spec_strategy() -> impl Strategy<Value = RingSpec> {
    let leaf = prop_oneof![
        prop::sample::select(vec![2u32, 3, 5, 7]).prop_map(|p| RingSpec::PrimeField { p }),
        (
            prop::sample::select(vec![2u32, 3, 5]),
            proptest::collection::vec(0i64..10, 1..4),
            1u32..5
        )
            .prop_map(|(p, low, lead)| {
                let mut c = low;
                c.push(i64::from(lead % p).max(1));
                RingSpec::PolyQuotient {
                    p,
                    var: "x".into(),
                    modulus: Polynomial::from_signed(p, &c),
                }
            }),
    ];
    // the grammar only expresses left-nested products
    proptest::collection::vec(leaf, 1..4).prop_map(|leaves| {
        leaves
            .into_iter()
            .reduce(RingSpec::product)
            .expect("at least one factor")
    })
}

proptest! {
    #[test]
    fn ring_laws_hold((i, e) in fixture_and_elements(3)) {
        let r = &fixtures()[i].ring;
        let (a, b, c) = (e[0], e[1], e[2]);
        prop_assert_eq!(r.add(a, b), r.add(b, a));
        prop_assert_eq!(r.mul(a, b), r.mul(b, a));
        prop_assert_eq!(r.mul(r.mul(a, b), c), r.mul(a, r.mul(b, c)));
        prop_assert_eq!(r.mul(a, r.add(b, c)), r.add(r.mul(a, b), r.mul(a, c)));
        prop_assert_eq!(r.add(a, r.neg(a)), r.zero());
        prop_assert_eq!(r.mul(r.one(), a), a);
    }

    #[test]
    fn classes_partition_and_units_close((i, e) in fixture_and_elements(2)) {
        let r = &fixtures()[i].ring;
        let (a, b) = (e[0], e[1]);
        let has_inverse = r.elements().any(|x| r.mul(a, x) == r.one());
        prop_assert_eq!(r.classify(a) == ElementClass::Unit, has_inverse);
        if r.is_unit(a) && r.is_unit(b) {
            prop_assert!(r.is_unit(r.mul(a, b)));
            prop_assert_eq!(r.mul(a, r.inverse(a).unwrap()), r.one());
        }
    }

    #[test]
    fn names_round_trip((i, e) in fixture_and_elements(1)) {
        let r = &fixtures()[i].ring;
        prop_assert_eq!(r.parse_element(r.name(e[0])).unwrap(), e[0]);
    }

    #[test]
    fn principal_ideals_are_ideals((i, e) in fixture_and_elements(2)) {
        let r = &fixtures()[i].ring;
        let (ia, ib) = (principal_ideal(r, e[0]), principal_ideal(r, e[1]));
        prop_assert!(ia.check().is_ok());
        prop_assert!(ia.sum(&ib).check().is_ok());
        prop_assert!(ia.intersection(&ib).check().is_ok());
        prop_assert!(ia.contains(e[0]));
    }

    #[test]
    fn pair_class_symmetric_and_reflexive((i, p) in fixture_and_points(2)) {
        let l = &fixtures()[i].line;
        prop_assert_eq!(l.pair_class(p[0], p[1]), l.pair_class(p[1], p[0]));
        prop_assert_eq!(l.pair_class(p[0], p[0]), PairClass::Neighbour);
    }

    #[test]
    fn every_orbit_member_resolves_to_its_point((i, p) in fixture_and_points(1)) {
        let l = &fixtures()[i].line;
        let pt = l.point(p[0]);
        prop_assert_eq!(pt.orbit.len(), fixtures()[i].ring.units().len());
        for &rep in &pt.orbit {
            prop_assert_eq!(l.point_of(rep), Some(p[0]));
            prop_assert_eq!(l.parse_point(&l.pair_name(rep)).unwrap(), p[0]);
        }
    }

    #[test]
    fn spec_display_round_trips(spec in spec_strategy()) {
        let text = spec.to_string();
        prop_assert_eq!(parse_ring_spec(&text).unwrap(), spec);
    }
}

#[test]
fn reductions_are_well_defined_on_all_fixtures() {
    for f in fixtures() {
        let reds = maximal_reductions(&f.line).unwrap();
        for red in &reds {
            assert!(red.quotient.ring.units().len() == red.quotient.ring.len() - 1);
            let total: usize = red.map.fibers().iter().map(Vec::len).sum();
            assert_eq!(total, f.line.len());
        }
        f.line.check_representative_independence().unwrap();
    }
}

#[test]
fn radical_oracle_agrees_on_all_fixtures() {
    for f in fixtures() {
        assert_eq!(
            jacobson_radical(&f.ring),
            jacobson_radical_quasiregular(&f.ring),
            "{}",
            f.ring
        );
    }
}

#[test]
fn count_formulas_hold_beyond_the_cubic_family() {
    // the closed forms are reported, not asserted, by the library; here they are
    // observed to agree on every fixture
    for f in fixtures() {
        let c = f.line.count_formulas(&maximal_ideals(&f.ring));
        assert!(c.agrees(), "{}: {c:?}", f.ring);
    }
}

#[test]
fn isomorphic_presentations_share_statistics() {
    let stats = |r: &RingRef| {
        let ideals = all_ideals(r);
        (
            r.len(),
            r.units().len(),
            r.characteristic(),
            ideals.len(),
            maximal_ideals(r).len(),
            ProjLine::new(r).len(),
        )
    };
    let opts = BuildOptions::default();
    let poly = ring_from_text("GF(2)[x]/(x^2-x)", &opts).unwrap();
    let prod = ring_from_text("GF(2)*GF(2)", &opts).unwrap();
    assert_eq!(stats(&poly), stats(&prod));
    let cubic = ring_from_text("GF(2)[x]/(x^3-x)", &opts).unwrap();
    let q = quotient_ring(&cubic, &jacobson_radical(&cubic)).unwrap();
    assert_eq!(stats(&q.ring), stats(&prod));
    assert!(Arc::ptr_eq(q.projection.codomain(), &q.ring));
}
