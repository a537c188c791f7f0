use semigroupoid::action::{munn_on_idempotents, validate_preaction, ActionKind};
use semigroupoid::corpus::{self, inverse};
use semigroupoid::instances::*;
use semigroupoid::inverse::{classify, Kind};
use semigroupoid::iso::is_isomorphic;
use semigroupoid::quotient::*;

#[test]
fn closure_examples() {
    let e = inverse(vee_semilattice());
    let g = e.graphed();
    assert!(congruence_closure(g, &[]).unwrap().is_identity());
    let r = congruence_closure(g, &[(0, 2)]).unwrap();
    assert_eq!(r.classes(), vec![vec![0, 2], vec![1]]);
    let (q, _) = quotient(&e, &r).unwrap();
    assert!(is_isomorphic(q.magma(), &chain(2)));

    let pg = inverse(pair_groupoid(2));
    assert!(matches!(congruence_closure(pg.graphed(), &[(0, 1)]), Err(QuotientError::NotGraphable(0, 1))));

    let z3 = inverse(cyclic_group(3));
    let full = congruence_closure(z3.graphed(), &[(0, 1)]).unwrap();
    assert_eq!(full.count(), 1);
    let (q, _) = quotient(&z3, &full).unwrap();
    assert_eq!(classify(&q), Kind::Group);
    assert_eq!(q.len(), 1);
}

#[test]
fn closure_is_least() {
    // oracle: the least congruence is the meet of all congruences containing the pair
    let s = inverse(symmetric_inverse_monoid(2));
    let all = all_graphed_congruences(s.graphed());
    for a in s.elems() {
        for b in s.elems() {
            let r = congruence_closure(s.graphed(), &[(a, b)]).unwrap();
            let containing: Vec<_> = all.iter().filter(|c| c.related(a, b)).collect();
            for x in s.elems() {
                for y in s.elems() {
                    let want = containing.iter().all(|c| c.related(x, y));
                    assert_eq!(r.related(x, y), want);
                }
            }
        }
    }
}

#[test]
fn identity_quotient_is_a_copy() {
    for (name, s) in corpus::base_inverse_corpus() {
        let (q, _) = quotient(&s, &GraphedCongruence::identity(s.len())).unwrap();
        assert!(is_isomorphic(q.magma(), s.magma()), "{name}");
    }
}

#[test]
fn purity() {
    let e = inverse(vee_semilattice());
    let r = congruence_closure(e.graphed(), &[(0, 2)]).unwrap();
    let rep = is_idempotent_pure(&e, &r).unwrap();
    assert!(rep.pure() && rep.agree());

    let z2 = inverse(cyclic_group(2));
    let rep = is_idempotent_pure(&z2, &congruence_closure(z2.graphed(), &[(0, 1)]).unwrap()).unwrap();
    assert!(!rep.pure() && rep.agree());

    let i2 = inverse(symmetric_inverse_monoid(2));
    let germ = germ_congruence(&i2, &CompatiblePreorder::canonical(&i2)).unwrap();
    let rep = is_idempotent_pure(&i2, &germ).unwrap();
    assert!(!rep.pure() && rep.agree());

    for (name, s) in corpus::base_inverse_corpus() {
        for r in all_graphed_congruences(s.graphed()) {
            assert!(is_idempotent_pure(&s, &r).unwrap().agree(), "{name}");
        }
    }
}

#[test]
fn preorders_and_germs() {
    let l3 = inverse(chain(3));
    let canon = CompatiblePreorder::canonical(&l3);
    assert!(validate_preorder(&l3, &canon).is_empty());
    let p = CompatiblePreorder::from_pairs(3, &[(0, 0), (1, 1), (2, 2), (0, 1), (0, 2)]);
    assert!(validate_preorder(&l3, &p).is_empty());
    assert_ne!(p, canon);
    assert_eq!(germ_congruence(&l3, &p).unwrap().count(), 1);
    assert_eq!(germ_congruence(&l3, &canon).unwrap(), germ_congruence(&l3, &p).unwrap());

    let bad = CompatiblePreorder::from_pairs(3, &[(0, 0), (1, 1), (2, 2), (0, 1), (1, 2)]);
    let v = validate_preorder(&l3, &bad);
    assert!(v.iter().any(|(k, _)| *k == PRE_TRANSITIVE));
}

#[test]
fn initial_groupoids() {
    let z4 = inverse(cyclic_group(4));
    let (ig, _) = initial_groupoid(&z4).unwrap();
    assert!(is_isomorphic(ig.magma(), z4.magma()));

    let i2 = inverse(symmetric_inverse_monoid(2));
    let (ig, _) = initial_groupoid(&i2).unwrap();
    assert_eq!(ig.len(), 1);

    // oracle: the maximal group image of Z2 with a zero adjoined is trivial, without zero it is Z2
    let z2x = inverse(adjoin_unit(&cyclic_group(2), "x"));
    let (ig, map) = initial_groupoid(&z2x).unwrap();
    assert_eq!(ig.len(), 2);
    assert_eq!(classify(&ig), Kind::Group);
    // universal property: the homomorphism to Z2 sending x to 1 factors
    let phi = vec![0, 1, 0];
    let psi = factor_through(&GraphedCongruence::from_labels(&map), &phi).unwrap();
    assert_eq!(psi.len(), 2);

    for (name, s) in corpus::base_inverse_corpus() {
        let (ig, _) = initial_groupoid(&s).unwrap();
        assert!(matches!(classify(&ig), Kind::Groupoid | Kind::Group), "{name}");
        assert!(ig.elems().all(|a| ig.elems().all(|b| !ig.leq(a, b) || a == b)));
    }
}

#[test]
fn quotient_action_remark() {
    let p = corpus::vee_on_chain();
    let r1 = congruence_closure(p.actor.graphed(), &[(0, 2)]).unwrap();
    let r2 = GraphedCongruence::identity(2);
    let (q, qs, _) = quotient_action(&p, &r1, &r2).unwrap();
    assert!(validate_preaction(&q, 10).ok());
    let zero = r1.class[0];
    let a = r1.class[1];
    assert!(qs.leq(zero, a));
    assert_eq!(q.domain(zero), vec![0, 1]);
    assert_eq!(q.domain(a), vec![0]);
    assert!(!validate_preaction(&q.clone().with_kind(ActionKind::Partial), 10).ok());

    let phi = phi_isomorphism(&p, &r1, &r2).unwrap();
    assert!(phi.isomorphism && phi.product_congruence && phi.quotient_action_valid);
    assert_eq!(phi.left.len(), phi.right.len());
}

#[test]
fn hypotheses_are_checked() {
    let p = corpus::vee_on_chain();
    let r2 = GraphedCongruence::from_labels(&[0, 0]);
    // every θ here is an identity, so collapsing L₂ is respected
    assert!(quotient_action(&p, &GraphedCongruence::identity(3), &r2).is_ok());

    let i2 = inverse(symmetric_inverse_monoid(2));
    let m = munn_on_idempotents(&i2);
    let germ = germ_congruence(&i2, &CompatiblePreorder::canonical(&i2)).unwrap();
    assert!(matches!(quotient_action(&m, &germ, &GraphedCongruence::identity(m.space.len())), Err(QuotientError::H1Violated(_))));

    // collapse two idempotents of E(I₂) that a partial bijection separates
    let id = |n: &str| m.space.magma().index_of(n).unwrap();
    let mut labels: Vec<usize> = (0..m.space.len()).collect();
    labels[id("m1_")] = labels[id("m__")];
    let r2 = GraphedCongruence::from_labels(&labels);
    check_graphed_congruence(&m.space, &r2).unwrap();
    assert!(matches!(
        quotient_action(&m, &GraphedCongruence::identity(i2.len()), &r2),
        Err(QuotientError::H2Violated { .. })
    ));
}

#[test]
fn phi_on_munn_action() {
    let i2 = inverse(symmetric_inverse_monoid(2));
    let m = munn_on_idempotents(&i2);
    let r2 = GraphedCongruence::identity(m.space.len());
    let mut checked = 0;
    for r1 in all_graphed_congruences(i2.graphed()) {
        if is_idempotent_pure(&i2, &r1).unwrap().pure() {
            let rep = phi_isomorphism(&m, &r1, &r2).unwrap();
            assert!(rep.isomorphism);
            checked += 1;
        }
    }
    assert!(checked >= 1);
    // the unit adjoined to Z2 gives a pure, non-trivial congruence when acting on its idempotents
    let z2x = inverse(adjoin_unit(&cyclic_group(2), "x"));
    let m = munn_on_idempotents(&z2x);
    let r2 = GraphedCongruence::identity(m.space.len());
    let mut nontrivial = 0;
    for r1 in all_graphed_congruences(z2x.graphed()) {
        if is_idempotent_pure(&z2x, &r1).unwrap().pure() {
            assert!(phi_isomorphism(&m, &r1, &r2).unwrap().isomorphism);
            nontrivial += usize::from(!r1.is_identity());
        }
    }
    assert!(nontrivial >= 1);
}
