use semigroupoid::action::*;
use semigroupoid::corpus::{self, inverse};
use semigroupoid::instances::*;
use semigroupoid::iso::find_isomorphism;
use semigroupoid::semidirect::*;
use semigroupoid::table::{Elem, Magma, Violation};

fn bundle(total: &[&str], base: &[&str], proj: &[usize]) -> Bundle {
    Bundle {
        total: total.iter().map(|s| s.to_string()).collect(),
        base: base.iter().map(|s| s.to_string()).collect(),
        proj: proj.to_vec(),
    }
}

#[test]
fn ipi_over_a_point_is_i2() {
    let s = ipi_product_check(&bundle(&["x", "y"], &["*"], &[0, 0])).unwrap();
    assert_eq!(s.len(), 7);
    assert!(find_isomorphism(s.magma(), &symmetric_inverse_monoid(2), 64).unwrap().is_some());
}

#[test]
fn ipi_over_identity_is_product() {
    let s = ipi_product_check(&bundle(&["x", "y"], &["x", "y"], &[0, 1])).unwrap();
    assert_eq!(s.len(), 8);
    let target = product(&pair_groupoid(2), &chain(2));
    assert!(find_isomorphism(s.magma(), &target, 64).unwrap().is_some());
}

#[test]
fn identity_bijections_compose_to_identity() {
    let id = PartialBij { tgt: 0, src: 0, map: [(0, 0), (1, 1)].into_iter().collect() };
    assert_eq!(PartialBij::compose(&id, &id).unwrap(), id);
    let other = PartialBij { tgt: 1, src: 1, map: Default::default() };
    assert!(PartialBij::compose(&id, &other).is_err());
}

#[test]
fn wagner_preston_instances() {
    let i2 = inverse(symmetric_inverse_monoid(2));
    let wp = wagner_preston(&i2);
    assert!(wp.ok());
    assert_eq!(wp.image_size(), 7);
    assert!(validate_preaction(&wp.action, 10).ok());

    // groups: left translations on the whole group
    let g = inverse(cyclic_group(3));
    let wp = wagner_preston(&g);
    assert!(wp.ok());
    for a in g.elems() {
        for t in g.elems() {
            assert_eq!(wp.action.act(a, t), g.mul(a, t));
        }
    }

    // pair groupoid: D_a = {t : r(t) = r(a)}
    let p = inverse(pair_groupoid(3));
    let wp = wagner_preston(&p);
    assert!(wp.ok());
    for a in p.elems() {
        let dom: Vec<Elem> = wp.action.range(a);
        let oracle: Vec<Elem> = p.elems().filter(|&t| p.r(t) == p.r(a)).collect();
        assert_eq!(dom, oracle);
    }
}

#[test]
fn map_kinds() {
    let l2 = inverse(chain(2));
    let swap = validate_map_kind(&l2, &l2, &[1, 0]);
    assert!(swap.is_meet_prehomomorphism());
    assert!(!swap.monotone && !swap.is_partial_homomorphism());

    let one = inverse(cyclic_group(1));
    let z2 = inverse(cyclic_group(2));
    let k = validate_map_kind(&one, &z2, &[1]);
    assert!(k.preserves_inverse && k.monotone && !k.meet_condition);

    // η: {1,g} → L₂ with η(1) = 1, η(g) = 0, then the swap
    let eta = validate_map_kind(&z2, &l2, &[1, 0]);
    assert!(eta.is_partial_homomorphism());
    let composite = validate_map_kind(&z2, &l2, &[0, 1]);
    assert!(!composite.is_meet_prehomomorphism());
    // θη(g)θη(g) = 1 but θη(gg) = 0
    assert_eq!(l2.mul(1, 1), Some(1));
    assert!(!l2.leq(1, 0));

    let id = validate_map_kind(&l2, &l2, &[0, 1]);
    assert_eq!(id.labels(), vec!["homomorphism", "partial homomorphism", "meet-prehomomorphism", "join-prehomomorphism"]);
}

#[test]
fn preaction_examples() {
    let v = corpus::vee_on_chain();
    let rep = validate_preaction(&v, 10);
    assert!(rep.ok(), "{:?}", rep.violations);

    let pg = inverse(pair_groupoid(2));
    let act = canonical_vertex_action(&pg);
    assert!(validate_preaction(&act, 10).ok());
    assert!(act.is_nondegenerate());
    for a in pg.elems() {
        assert_eq!(act.domain(a), vec![pg.s(a)]);
        assert_eq!(act.act(a, pg.s(a)), Some(pg.r(a)));
    }

    let t = corpus::t_action();
    assert!(validate_preaction(&t, 10).ok());
}

#[test]
fn broken_preaction_is_reported() {
    let mut p = corpus::vee_on_chain();
    p.theta[1] = vec![Some(1), None];
    let rep = validate_preaction(&p, 50);
    assert!(!rep.ok());
    assert!(rep.has(AX_IDEMPOTENT));
}

#[test]
fn extension_to_partial() {
    let sw = corpus::swap_preaction();
    assert!(validate_preaction(&sw, 10).ok());
    assert!(!validate_preaction(&sw.clone().with_kind(ActionKind::Partial), 10).ok());
    let ext = extend_to_partial(&sw);
    assert!(validate_preaction(&ext, 10).ok());
    // oracle: union over the lower set, computed from graphs
    for a in sw.actor.elems() {
        let mut want = std::collections::BTreeMap::new();
        for b in sw.actor.elems().filter(|&b| sw.actor.leq(b, a)) {
            want.extend(sw.as_bij(b).map);
        }
        assert_eq!(ext.as_bij(a).map, want);
    }
    for p in [corpus::vee_on_chain(), canonical_vertex_action(&inverse(symmetric_inverse_monoid(2)))] {
        assert_eq!(extend_to_partial(&p).theta, p.theta);
    }
}

#[test]
fn munn_actions() {
    let pg = inverse(pair_groupoid(2));
    let f = munn_set(&pg);
    let oracle: Vec<Elem> = pg.elems().filter(|&a| pg.s(a) == pg.r(a)).collect();
    assert_eq!(f, oracle);
    let e = munn_on_idempotents(&pg);
    assert!(validate_preaction(&e, 10).ok());

    let l2 = inverse(chain(2));
    assert_eq!(munn_set(&l2), vec![0, 1]);
    let mu = munn_conjugation_action(&l2);
    for a in l2.elems() {
        for b in l2.elems() {
            assert_eq!(mu.act(a, b), (b <= a).then_some(b));
        }
    }

    let i2 = inverse(symmetric_inverse_monoid(2));
    for p in [munn_conjugation_action(&i2), munn_on_idempotents(&i2)] {
        assert!(validate_preaction(&p, 10).ok());
        semidirect_product(&p, 10).unwrap();
    }
}

#[test]
fn multipliers() {
    let t = t_semigroup();
    for x in t.elems() {
        assert!(validate_multiplier(&t, &translation_multiplier(&t, x, None), 5).is_empty());
    }
    let ideal = elems(&t, &["0", "u", "v"]);
    let (sub, _) = semigroupoid::table::restrict(&t, &ideal);
    let tt = t.index_of("t").unwrap();
    assert!(validate_multiplier(&sub, &translation_multiplier(&t, tt, Some(&ideal)), 5).is_empty());

    let g = cyclic_group(3);
    let bad = Multiplier { l: vec![Some(0); 3], r: (0..3).map(Some).collect() };
    let v = validate_multiplier(&g, &bad, 100);
    assert!(!v.is_empty());
    // scan oracle: L(ab) = 1 but L(a)b = b, first failing pair has b = g
    assert_eq!(v[0], MultiplierViolation::LeftLaw(0, 1));

    assert!(is_nondegenerate(&cyclic_group(4)));
    assert!(!is_nondegenerate(&t));
    assert!(is_nondegenerate(&symmetric_inverse_monoid(2)));

    assert_eq!(lr_associativity_evidence(&t), LrEvidence::DirectOnly);
    assert_eq!(lr_associativity_evidence(&symmetric_inverse_monoid(2)), LrEvidence::Idempotent);
    assert_eq!(lr_associativity_evidence(&adjoin_unit(&t, "1")), LrEvidence::Idempotent);
}

#[test]
fn t_action_is_not_associative() {
    let p = corpus::t_action();
    let err = semidirect_product(&p, 1000).unwrap_err();
    let SemidirectError::NotAssociative { all, table, .. } = err else { panic!("{err}") };
    let id = |n: &str| table.index_of(n).unwrap();
    let (xt, gu, g0) = (id("(x,t)"), id("(g,u)"), id("(g,0)"));
    assert!(all.contains(&Violation::Equality { triple: [xt, gu, xt], lhs: gu, rhs: g0 }));
    // oracle: recompute both parses from the formula
    let parse = |a: &str, b: &str| -> String { names(&table, table.mul(id(a), id(b)).unwrap()) };
    assert_eq!(parse("(x,t)", "(g,u)"), "(g,v)");
    assert_eq!(parse("(g,v)", "(x,t)"), "(g,u)");
    assert_eq!(parse("(g,u)", "(x,t)"), "(g,0)");
    assert_eq!(parse("(x,t)", "(g,0)"), "(g,0)");
}

fn names(m: &Magma, a: Elem) -> String {
    m.name(a).to_string()
}

#[test]
fn eta_is_an_isomorphism() {
    for (name, s) in corpus::base_inverse_corpus() {
        let (sp, map) = eta(&s).unwrap();
        assert!(semigroupoid::iso::is_isomorphism(s.magma(), sp.magma(), &map), "{name}");
        assert_eq!(sp.graphed.nv(), s.nv(), "{name}");
    }
}

#[test]
fn inverse_iff() {
    let i2 = inverse(symmetric_inverse_monoid(2));
    let p = munn_on_idempotents(&i2);
    let sp = semidirect_product(&p, 10).unwrap();
    let rep = inverse_iff_check(&p, &sp);
    assert!(rep.consistent() && rep.product_inverse);

    // T restricted to the ideal {0,u,v} (fibre products are all zero) is associative
    let mut p = corpus::t_action();
    let t = p.space.magma().index_of("t").unwrap();
    let x = p.actor.magma().index_of("x").unwrap();
    p.theta[x][t] = None;
    let sp = semidirect_product(&p, 10).unwrap();
    let rep = inverse_iff_check(&p, &sp);
    assert!(!rep.product_regular && !rep.space_regular && rep.consistent());

    let pg = inverse(pair_groupoid(2));
    let p = canonical_vertex_action(&pg);
    let sp = semidirect_product(&p, 10).unwrap();
    let s = semigroupoid::corpus::inverse(sp.magma().clone());
    assert_eq!(semigroupoid::inverse::classify(&s), semigroupoid::inverse::Kind::Groupoid);
}

#[test]
fn underlying_groupoids() {
    let i2 = inverse(symmetric_inverse_monoid(2));
    let u = underlying_groupoid(&i2);
    assert_eq!(u.len(), 7);
    assert_eq!(u.nv(), 4);
    let oracle = i2
        .elems()
        .flat_map(|a| i2.elems().map(move |b| (a, b)))
        .filter(|&(a, b)| i2.dom(a) == i2.ran(b))
        .count();
    assert_eq!(u.magma().products().count(), oracle);
    let g = inverse(cyclic_group(4));
    assert_eq!(underlying_groupoid(&g).magma(), g.magma());
    let pg = inverse(pair_groupoid(3));
    assert_eq!(underlying_groupoid(&pg).magma(), pg.magma());
    assert!(lands_in_underlying(&pg, &pg, &(0..9).collect::<Vec<_>>()));
}
