mod common;

use proptest::prelude::*;
use proptest::sample::Index;

use semigroupoid::action::wagner_preston;
use semigroupoid::corpus::{self, inverse};
use semigroupoid::duality::*;
use semigroupoid::graph::{enumerate_graphings, DEFAULT_GRAPHING_CAP};
use semigroupoid::instances::*;
use semigroupoid::inverse::{classify, detect_inverse, idempotents_commute, order_axioms_check, sub_inverse, Inverse, Kind};
use semigroupoid::iso::is_isomorphism;
use semigroupoid::quotient::*;
use semigroupoid::semidirect::eta;
use semigroupoid::table::*;

fn brute_inverses(m: &Magma, a: Elem) -> Vec<Elem> {
    let t = |x: Elem, y: Elem, z: Elem| m.mul(x, y).and_then(|xy| m.mul(xy, z));
    m.elems().filter(|&b| t(a, b, a) == Some(a) && t(b, a, b) == Some(b)).collect()
}

/// Sub-inverse-semigroup of I_2 or I_3 generated by a few elements, optionally
/// multiplied by a pair groupoid.
fn random_inverse() -> impl Strategy<Value = Inverse> {
    (2usize..=3, prop::collection::vec(any::<Index>(), 1..4), 0usize..3).prop_map(|(k, gens, pairs)| {
        let base = inverse(symmetric_inverse_monoid(k));
        let mut set: Vec<Elem> = gens.iter().map(|g| g.index(base.len())).collect();
        loop {
            let mut next = set.clone();
            next.extend(set.iter().map(|&a| base.star(a)));
            for &a in &set {
                for &b in &set {
                    next.extend(base.mul(a, b));
                }
            }
            next.sort();
            next.dedup();
            if next == set {
                break;
            }
            set = next;
        }
        let sub = sub_inverse(&base, &set).expect("closed subset");
        if pairs == 0 {
            sub
        } else {
            inverse(product(sub.magma(), &pair_groupoid(pairs)))
        }
    })
}

fn random_table() -> impl Strategy<Value = Magma> {
    (2usize..=4).prop_flat_map(|n| {
        prop::collection::vec(prop::option::weighted(0.6, 0..n), n * n).prop_map(move |cells| {
            Magma::from_fn((0..n).map(|i| format!("m{i}")), |a, b| cells[a * n + b])
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn involution_is_the_unique_inverse(s in random_inverse()) {
        let sg = validate_exel(s.magma().clone(), 1).unwrap();
        let d = detect_inverse(&sg).unwrap();
        for a in s.elems() {
            prop_assert_eq!(brute_inverses(s.magma(), a), vec![d.star(a)]);
        }
        prop_assert!(is_categorical(s.magma()).is_ok());
        prop_assert!(idempotents_commute(&s).is_ok());
    }

    #[test]
    fn order_axioms_and_unique_graphing(s in random_inverse()) {
        prop_assert!(order_axioms_check(&s).passed());
        let g = enumerate_graphings(s.sg(), DEFAULT_GRAPHING_CAP).unwrap();
        prop_assert_eq!(g.len(), 1);
    }

    #[test]
    fn congruence_closure_is_a_congruence(s in random_inverse(), a in any::<Index>(), b in any::<Index>()) {
        let (a, b) = (a.index(s.len()), b.index(s.len()));
        let g = s.graphed();
        match congruence_closure(g, &[(a, b)]) {
            Ok(r) => {
                prop_assert!(r.related(a, b));
                prop_assert!(check_graphed_congruence(g, &r).is_ok());
                let gens: Vec<(Elem, Elem)> = r.classes().iter().flat_map(|c| c.iter().map(|&x| (c[0], x))).collect();
                prop_assert_eq!(congruence_closure(g, &gens).unwrap(), r.clone());
                prop_assert!(quotient(&s, &r).is_ok());
            }
            Err(QuotientError::NotGraphable(..)) => prop_assert!(s.s(a) != s.s(b) || s.r(a) != s.r(b)),
            Err(e) => prop_assert!(false, "{}", e),
        }
    }

    #[test]
    fn representations_are_faithful(s in random_inverse()) {
        prop_assert!(wagner_preston(&s).ok());
        let (sp, map) = eta(&s).unwrap();
        prop_assert!(is_isomorphism(s.magma(), sp.magma(), &map));
    }

    #[test]
    fn kb_is_sigma_ordered_and_zeta_is_iso(s in random_inverse()) {
        prop_assume!(s.len() <= 12);
        match kb(&s, 256) {
            Err(KbError::CapExceeded(_)) => {}
            Err(e) => prop_assert!(false, "{}", e),
            Ok(k) => {
                prop_assert!(sigma_report(&k.sigma).is_empty());
                let (_, _, rt) = zeta(&s, 256).unwrap();
                prop_assert!(rt.isomorphism);
            }
        }
    }

    #[test]
    fn ultrafilter_criterion(s in random_inverse()) {
        if let Ok((e, _)) = Semilattice::of_idempotents(&s) {
            let mut got = ultrafilters(&e).filters;
            got.sort();
            prop_assert_eq!(got, common::ultrafilters_by_enumeration(&e));
        }
    }

    #[test]
    fn exel_check_matches_oracle(m in random_table()) {
        let (v, _) = exel_violations(&m, usize::MAX);
        let mut count = 0;
        for f in m.elems() {
            for g in m.elems() {
                for h in m.elems() {
                    let fg = m.mul(f, g);
                    let gh = m.mul(g, h);
                    let c = [
                        fg.is_some() && gh.is_some(),
                        fg.and_then(|x| m.mul(x, h)).is_some(),
                        gh.and_then(|x| m.mul(f, x)).is_some(),
                    ];
                    let mixed = c.iter().any(|&b| b) && !c.iter().all(|&b| b);
                    let unequal = c.iter().all(|&b| b) && m.mul(fg.unwrap(), h) != m.mul(f, gh.unwrap());
                    count += (mixed || unequal) as usize;
                }
            }
        }
        prop_assert_eq!(v.len(), count);
        prop_assert_eq!(validate_exel(m, 1).is_ok(), count == 0);
    }
}

/// The natural order of KB(S) is inclusion exactly when S is a groupoid.
#[test]
fn natural_order_is_inclusion_for_groupoids() {
    for (name, s) in corpus::inverse_corpus() {
        let Ok(k) = kb(&s, 4096) else { continue };
        let ks = k.sigma.inverse();
        let incl = ks.elems().all(|a| {
            ks.elems().all(|b| ks.leq(a, b) == k.sets[a].iter().all(|x| k.sets[b].contains(x)))
        });
        let groupoid = matches!(classify(&s), Kind::Groupoid | Kind::Group);
        assert_eq!(incl, groupoid, "{name}");
    }
}
