mod common;

use semigroupoid::corpus::{self, inverse};
use semigroupoid::duality::*;
use semigroupoid::instances::*;
use semigroupoid::iso::find_isomorphism;
use semigroupoid::table::Elem;

const CAP: usize = DEFAULT_BISECTION_CAP;

fn small_corpus() -> Vec<(String, semigroupoid::inverse::Inverse)> {
    corpus::base_inverse_corpus()
}

#[test]
fn kb_sizes() {
    let i2 = inverse(symmetric_inverse_monoid(2));
    let k = kb(&i2, CAP).unwrap();
    assert_eq!(k.len(), 8);
    assert_eq!(k.sets[0], Vec::<Elem>::new());
    assert!(k.sets[1..].iter().all(|b| b.len() == 1));

    let p2 = kb(&inverse(pair_groupoid(2)), CAP).unwrap();
    assert_eq!(p2.len(), 7);
    assert!(find_isomorphism(p2.sigma.inverse().magma(), &symmetric_inverse_monoid(2), 64).unwrap().is_some());
    assert_eq!(kb(&inverse(pair_groupoid(3)), CAP).unwrap().len(), 34);

    for (name, s) in small_corpus() {
        assert_eq!(kb(&s, CAP).unwrap().len(), common::bisections_by_enumeration(&s), "{name}");
    }
    assert_eq!(kb(&inverse(pair_groupoid(3)), 10).unwrap_err(), KbError::CapExceeded(10));
}

#[test]
fn ultrafilter_criterion_matches_enumeration() {
    let mut lattices = Vec::new();
    for n in 1..=5 {
        lattices.extend(semilattices(n).into_iter().map(|m| Semilattice::new(m).unwrap()));
    }
    for (_, s) in small_corpus() {
        let k = kb(&s, CAP).unwrap();
        lattices.push(Semilattice::of_idempotents(k.sigma.inverse()).unwrap().0);
    }
    for e in &lattices {
        let mut got = ultrafilters(e).filters;
        got.sort();
        assert_eq!(got, common::ultrafilters_by_enumeration(e), "{:?}", e.magma().names());
    }
    let one = Semilattice::new(chain(1)).unwrap();
    assert!(ultrafilters(&one).is_empty());
}

#[test]
fn basic_sets_are_prime() {
    let k = kb(&inverse(pair_groupoid(3)), CAP).unwrap();
    let (e, emb) = Semilattice::of_idempotents(k.sigma.inverse()).unwrap();
    let sp = ultrafilters(&e);
    for a in 0..e.len() {
        for b in 0..e.len() {
            if let Some(j) = k.sigma.join(emb[a], emb[b]) {
                let j = emb.iter().position(|&x| x == j).unwrap();
                let mut union = sp.basic(a);
                union.extend(sp.basic(b));
                union.sort_unstable();
                union.dedup();
                assert_eq!(sp.basic(j), union);
            }
        }
    }
}

#[test]
fn sigma_orders() {
    for (name, s) in small_corpus() {
        let k = kb(&s, CAP).unwrap();
        assert!(sigma_report(&k.sigma).is_empty(), "{name}: {:?}", sigma_report(&k.sigma));
    }
    assert!(validate_sigma(&flat_chain(3)).is_ok());
    let canon = SigmaOrdered::canonical(inverse(chain(3))).unwrap();
    let rep = sigma_report(&canon);
    assert!(rep.iter().any(|(a, _)| *a == SigmaAxiom::IV));
    assert!(matches!(
        SigmaOrdered::canonical(inverse(cyclic_group(2))),
        Err(SigmaError::NoZero)
    ));
    assert!(matches!(SigmaOrdered::canonical(inverse(pair_groupoid(2))), Err(SigmaError::NotSemigroup)));
}

#[test]
fn kb_interpolator_restricts_by_source() {
    for s in [inverse(symmetric_inverse_monoid(2)), inverse(pair_groupoid(3)), inverse(product(&pair_groupoid(2), &chain(2)))] {
        let k = kb(&s, CAP).unwrap();
        let ks = k.sigma.inverse();
        for b in ks.elems() {
            for a in ks.elems() {
                if !ks.leq(b, a) {
                    continue;
                }
                let srcs: Vec<usize> = k.sets[b].iter().map(|&x| s.s(x)).collect();
                let want: Vec<Elem> = k.sets[a].iter().copied().filter(|&x| srcs.contains(&s.s(x))).collect();
                let p = interpolator(&k.sigma, b, a).unwrap();
                assert_eq!(k.sets[p], want);
            }
        }
    }
}

#[test]
fn chain_morphisms() {
    let (l3, l2) = (flat_chain(3), flat_chain(2));
    let theta = validate_sigma_morphism(&l3, &l2, &[0, 1, 1]);
    assert!(theta.homomorphism);
    assert_eq!(theta.failed(), vec!["iv"]);
    let eta = validate_sigma_morphism(&l3, &l2, &[0, 0, 1]);
    assert!(eta.homomorphism);
    assert_eq!(eta.failed(), vec!["vi"]);
    assert!(validate_sigma_morphism(&l3, &l3, &[0, 1, 2]).ok());
}

#[test]
fn zeta_and_kappa() {
    for (name, s) in small_corpus() {
        let (k, _, z) = zeta(&s, CAP).unwrap();
        assert!(z.isomorphism, "zeta {name}");
        let (_, _, kap) = kappa(&k.sigma, CAP).unwrap();
        assert!(kap.isomorphism && kap.order_isomorphism, "kappa {name}");
    }
    let (_, k, kap) = kappa(&flat_chain(3), CAP).unwrap();
    assert_eq!(k.len(), 3);
    assert!(kap.isomorphism && kap.order_isomorphism);
}

#[test]
fn naturality_along_a_fold() {
    for s in [inverse(symmetric_inverse_monoid(2)), inverse(pair_groupoid(2)), inverse(cyclic_group(3))] {
        let n = s.len();
        let ss = inverse(disjoint_union(s.magma(), s.magma(), ("'", "\"")));
        let fold: Vec<Elem> = (0..2 * n).map(|i| i % n).collect();
        check_covering(&ss, &s, &fold).unwrap();
        let (ks, ps, zs) = zeta(&s, CAP).unwrap();
        let (kss, pss, zss) = zeta(&ss, CAP).unwrap();
        let kf = k_on_morphism(&kss, &ks, &ss, &s, &fold).unwrap();
        assert!(validate_sigma_morphism(&ks.sigma, &kss.sigma, &kf).ok());
        let pf = p_on_morphism(&ks.sigma, &kss.sigma, &kf, &ps, &pss).unwrap();
        assert!(pf.covering && pf.basic_sets);
        for x in 0..2 * n {
            assert_eq!(pf.arrows[zss.map[x]], zs.map[fold[x]]);
        }
    }
    let i2 = inverse(symmetric_inverse_monoid(2));
    let z2 = inverse(cyclic_group(2));
    assert!(check_covering(&z2, &i2, &[i2.magma().index_of("m12").unwrap(); 2]).is_err());
}

#[test]
fn kb_p_kb_stabilizes() {
    for (name, s) in small_corpus() {
        let k = kb(&s, CAP).unwrap();
        let g = p_functor(&k.sigma).unwrap();
        let k2 = kb(&g.inv, CAP).unwrap();
        assert_eq!(k.len(), k2.len(), "{name}");
        assert!(find_isomorphism(k.sigma.inverse().magma(), k2.sigma.inverse().magma(), 4096).unwrap().is_some(), "{name}");
    }
}
