use semigroupoid::graph::{enumerate_graphings, graph_default, induce_vertex_map, VertexMapError, DEFAULT_GRAPHING_CAP};
use semigroupoid::instances::*;
use semigroupoid::inverse::{classify, detect_inverse, order_axioms_check, InverseError, Kind};
use semigroupoid::table::*;

fn sg(m: Magma) -> Semigroupoid {
    validate_exel(m, DEFAULT_MAX_VIOLATIONS).expect("semigroupoid")
}

/// Brute force over all triples, independent of the checker.
fn oracle_conditions(m: &Magma, f: Elem, g: Elem, h: Elem) -> [bool; 3] {
    let fg = m.mul(f, g);
    let gh = m.mul(g, h);
    let i = fg.is_some() && fg.and_then(|x| m.mul(x, h)).is_some();
    let ii = gh.is_some() && gh.and_then(|x| m.mul(f, x)).is_some();
    let iii = fg.is_some() && gh.is_some();
    [i, ii, iii]
}

#[test]
fn counterexample_reports() {
    let expected: [(&[Cond], &[Cond]); 5] = [
        (&[Cond::I], &[Cond::II, Cond::III]),
        (&[Cond::I, Cond::II], &[Cond::III]),
        (&[Cond::I, Cond::III], &[Cond::II]),
        (&[Cond::II], &[Cond::I, Cond::III]),
        (&[Cond::III], &[Cond::I, Cond::II]),
    ];
    let tables = axiom_counterexamples();
    for ((label, m), (held, failed)) in tables.iter().zip(expected) {
        let err = validate_exel(m.clone(), 100).expect_err(label);
        let fgh = elems(m, &["f", "g", "h"]);
        let v = err.violations.iter().find(|v| v.triple() == [fgh[0], fgh[1], fgh[2]]).expect(label);
        match v {
            Violation::Axiom { held: h, failed: f, .. } => {
                assert_eq!(h.as_slice(), held, "{label}");
                assert_eq!(f.as_slice(), failed, "{label}");
            }
            other => panic!("{label}: {other:?}"),
        }
        let o = oracle_conditions(m, fgh[0], fgh[1], fgh[2]);
        assert_eq!(o.iter().filter(|&&b| b).count(), held.len());
    }
    let (label, m) = &tables[5];
    let err = validate_exel(m.clone(), 100).expect_err(label);
    let a = m.index_of("a").unwrap();
    let b = m.index_of("b").unwrap();
    assert!(err.violations.contains(&Violation::Equality { triple: [a, a, a], lhs: a, rhs: b }));
}

#[test]
fn violations_agree_with_oracle() {
    for (_, m) in axiom_counterexamples() {
        let (v, _) = exel_violations(&m, usize::MAX);
        let mut count = 0;
        for f in m.elems() {
            for g in m.elems() {
                for h in m.elems() {
                    let o = oracle_conditions(&m, f, g, h);
                    let bad_eq = o.iter().all(|&b| b)
                        && m.mul(m.mul(f, g).unwrap(), h) != m.mul(f, m.mul(g, h).unwrap());
                    if o.iter().any(|&b| b) && !o.iter().all(|&b| b) || bad_eq {
                        count += 1;
                    }
                }
            }
        }
        assert_eq!(v.len(), count);
    }
}

#[test]
fn five_element_table_is_not_categorical() {
    let m = non_categorical();
    let s = sg(m.clone());
    let w = is_categorical(s.magma()).expect_err("not categorical");
    let [a, b, x, y] = [0, 1, 2, 3].map(|i| elems(&m, &["a", "b", "x", "y"])[i]);
    assert_eq!(right_set(&m, a), vec![a, x, y]);
    assert_eq!(right_set(&m, b), vec![b, x, m.index_of("z").unwrap()]);
    assert_eq!(w.family, Family::Right);
    assert_eq!((w.a, w.b, w.common), (a, b, x));
    assert!([a, y].contains(&w.separating));
    assert!(graph_default(&s).is_err());
}

#[test]
fn symmetric_inverse_monoid_on_two_points() {
    let s = detect_inverse(&sg(symmetric_inverse_monoid(2))).unwrap();
    assert_eq!(s.len(), 7);
    assert_eq!(s.idempotents().len(), 4);
    assert_eq!(classify(&s), Kind::InverseSemigroup);
    assert!(order_axioms_check(&s).passed());
    // oracle: the inverse of a partial bijection is its inverse map
    for a in s.elems() {
        let name = s.name(a);
        let inv = s.name(s.star(a));
        let img = |n: &str, i: usize| n.as_bytes()[1 + i];
        for i in 0..2 {
            let c = img(name, i);
            if c != b'_' {
                let j = (c - b'1') as usize;
                assert_eq!(img(inv, j), b'1' + i as u8);
            }
        }
    }
}

#[test]
fn groupoids_and_groups() {
    let g = detect_inverse(&sg(pair_groupoid(3))).unwrap();
    assert_eq!(classify(&g), Kind::Groupoid);
    assert_eq!(g.nv(), 3);
    for (_, m) in small_groups() {
        let g = detect_inverse(&sg(m)).unwrap();
        assert_eq!(classify(&g), Kind::Group);
    }
}

#[test]
fn rectangular_band_has_many_inverses() {
    match detect_inverse(&sg(rectangular_band())) {
        Err(InverseError::NotUniqueInverse { inverses, .. }) => assert_eq!(inverses.len(), 4),
        other => panic!("{other:?}"),
    }
}

#[test]
fn strict_order_has_sources_and_sinks() {
    let m = strict_order(3);
    let u = disjoint_union(&m, &m, ("", "'"));
    let s = sg(u.clone());
    let g = graph_default(&s).unwrap();
    assert!(!g.sources().is_empty() && !g.sinks().is_empty());
    let map: Vec<Elem> = (0..u.len()).map(|a| a % m.len()).collect();
    let t = graph_default(&sg(m)).unwrap();
    assert!(matches!(induce_vertex_map(&g, &t, &map), Err(VertexMapError::HasSourceOrSink(_))));
}

#[test]
fn graphing_counts() {
    // a single idempotent: every choice is forced
    let s = sg(chain(1));
    assert_eq!(enumerate_graphings(&s, DEFAULT_GRAPHING_CAP).unwrap().len(), 1);
    // two composable arrows x->y with no other products leave v0 and v1 free
    let m = Magma::from_products(["a", "b", "c"], &[("a", "b", "c")]);
    let s = sg(m);
    let all = enumerate_graphings(&s, DEFAULT_GRAPHING_CAP).unwrap();
    assert!(!all.is_empty());
    for c in &all {
        semigroupoid::graph::graph(&s, c).unwrap();
    }
}
