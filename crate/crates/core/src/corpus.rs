//! Named instances used by tests, examples and the command line.

use crate::action::{
    canonical_vertex_action, extend_to_partial, munn_conjugation_action, munn_on_idempotents, wagner_preston, ActionKind,
    Preaction,
};
use crate::duality::{kb, Semilattice, DEFAULT_BISECTION_CAP};
use crate::graph::{graph_default, Graphed};
use crate::instances::*;
use crate::inverse::{detect_inverse, Inverse};
use crate::iso::is_isomorphic;
use crate::quotient::{all_graphed_congruences, quotient};
use crate::table::{restrict, validate_exel, Magma, DEFAULT_MAX_VIOLATIONS};

/// Validates a table known to be an inverse semigroupoid.
pub fn inverse(m: Magma) -> Inverse {
    let sg = validate_exel(m, DEFAULT_MAX_VIOLATIONS).expect("associative table");
    detect_inverse(&sg).expect("inverse table")
}

/// A categorical table with its finest graphing.
pub fn graphed(m: Magma) -> Graphed {
    let sg = validate_exel(m, DEFAULT_MAX_VIOLATIONS).expect("associative table");
    graph_default(&sg).expect("categorical table")
}

/// A set as a unit groupoid, one vertex per point.
pub fn set_space<I: IntoIterator<Item = S>, S: Into<String>>(names: I) -> Graphed {
    let m = unit_groupoid(names);
    graphed(m)
}

/// `ℤ/2 ∪ {x}` acting on `T = {0,t,u,v}`: `θ_x = id`, `θ_1 = id` on `{0,u,v}`, `θ_g` swaps `u, v`.
pub fn t_action() -> Preaction {
    let actor = inverse(adjoin_unit(&cyclic_group(2), "x"));
    let space = graphed(t_semigroup());
    let n = space.len();
    Preaction::from_named(
        actor,
        space,
        vec![0; n],
        &[
            ("x", &[("0", "0"), ("t", "t"), ("u", "u"), ("v", "v")]),
            ("1", &[("0", "0"), ("u", "u"), ("v", "v")]),
            ("g", &[("0", "0"), ("u", "v"), ("v", "u")]),
        ],
        ActionKind::Global,
    )
    .expect("names")
}

/// `E = {0,a,b}` acting on `L₂ = {0,1}`: `θ_0 = θ_a = id_{0}`, `θ_b = id`.
pub fn vee_on_chain() -> Preaction {
    let actor = inverse(vee_semilattice());
    let space = graphed(chain(2));
    Preaction::from_named(
        actor,
        space,
        vec![0, 0],
        &[("0", &[("0", "0")]), ("a", &[("0", "0")]), ("b", &[("0", "0"), ("1", "1")])],
        ActionKind::Global,
    )
    .expect("names")
}

/// `L₂` acting on a point through the swap map `0 ↦ 1, 1 ↦ 0` into `I({*}) ≅ L₂`.
pub fn swap_preaction() -> Preaction {
    let actor = inverse(chain(2));
    let space = set_space(["*"]);
    Preaction::from_named(actor, space, vec![0], &[("0", &[("*", "*")])], ActionKind::Meet).expect("names")
}

/// Base inverse semigroupoids: small semilattices and groups, `I₂`, pair groupoids, and `(X×X)×L₂`.
pub fn base_inverse_corpus() -> Vec<(String, Inverse)> {
    let mut out = Vec::new();
    for n in 1..=4 {
        for (i, m) in semilattices(n).into_iter().enumerate() {
            out.push((format!("semilattice{n}.{i}"), inverse(m)));
        }
    }
    for (name, m) in small_groups() {
        out.push((name, inverse(m)));
    }
    out.push(("I2".into(), inverse(symmetric_inverse_monoid(2))));
    for k in 1..=3 {
        out.push((format!("pairs{k}"), inverse(pair_groupoid(k))));
    }
    out.push(("pairs2xL2".into(), inverse(product(&pair_groupoid(2), &chain(2)))));
    out.push(("Z2+x".into(), inverse(adjoin_unit(&cyclic_group(2), "x"))));
    out
}

/// The base corpus together with every quotient by a graphed congruence, up to isomorphism.
pub fn inverse_corpus() -> Vec<(String, Inverse)> {
    let base = base_inverse_corpus();
    let mut out = base.clone();
    for (name, s) in &base {
        for r in all_graphed_congruences(s.graphed()) {
            if r.is_identity() {
                continue;
            }
            let Ok((q, _)) = quotient(s, &r) else { continue };
            let seen = out.iter().any(|(_, t)| t.len() == q.len() && is_isomorphic(t.magma(), q.magma()));
            if !seen {
                out.push((format!("{name}/{}", r.count()), q));
            }
        }
    }
    out
}

/// Boolean lattice of subsets of `k` points.
pub fn boolean_lattice(k: usize) -> Magma {
    let n = 1usize << k;
    Magma::from_fn((0..n).map(|i| format!("b{i}")), |a, b| Some(a & b))
}

/// A zero below `k` pairwise incomparable atoms.
pub fn flat_semilattice(k: usize) -> Magma {
    let names = std::iter::once("0".to_string()).chain((1..=k).map(|i| format!("a{i}")));
    Magma::from_fn(names, |a, b| Some(if a == b { a } else { 0 }))
}

/// Semilattices with at most ten elements: all up to five, chains, boolean and flat ones,
/// and the idempotents of every corpus semigroupoid and of its bisection semigroup.
pub fn semilattice_corpus() -> Vec<(String, Semilattice)> {
    let mut out = Vec::new();
    let mut push = |name: String, m: Magma| {
        // idempotents of a semigroupoid with several vertices only form a partial semilattice
        if let (true, Ok(e)) = (m.len() <= 10, Semilattice::new(m)) {
            out.push((name, e));
        }
    };
    for n in 1..=5 {
        for (i, m) in semilattices(n).into_iter().enumerate() {
            push(format!("semilattice{n}.{i}"), m);
        }
    }
    for n in 6..=10 {
        push(format!("chain{n}"), chain(n));
    }
    for k in 1..=3 {
        push(format!("boolean{k}"), boolean_lattice(k));
    }
    for k in 2..=9 {
        push(format!("flat{k}"), flat_semilattice(k));
    }
    for (name, s) in inverse_corpus() {
        let idem = s.idempotents();
        push(format!("E({name})"), restrict(s.magma(), &idem).0);
        if let Ok(k) = kb(&s, DEFAULT_BISECTION_CAP) {
            let ks = k.sigma.inverse();
            push(format!("E(KB({name}))"), restrict(ks.magma(), &ks.idempotents()).0);
        }
    }
    out
}

/// Actions on inverse (hence regular) spaces: the named examples and, for every corpus
/// semigroupoid, its Wagner–Preston, Munn and vertex actions.
pub fn action_corpus() -> Vec<(String, Preaction)> {
    let sw = swap_preaction();
    let mut out = vec![
        ("vee on chain".to_string(), vee_on_chain()),
        ("swap".to_string(), sw.clone()),
        ("swap extended".to_string(), extend_to_partial(&sw)),
    ];
    for (name, s) in inverse_corpus() {
        out.push((format!("wagner-preston {name}"), wagner_preston(&s).action));
        out.push((format!("munn {name}"), munn_conjugation_action(&s)));
        out.push((format!("munn on E {name}"), munn_on_idempotents(&s)));
        out.push((format!("vertices {name}"), canonical_vertex_action(&s)));
    }
    out
}
