//! Partial bijections between fibres, prehomomorphisms and (pre)actions.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::graph::{Graphed, Vertex};
use crate::inverse::{detect_inverse, Inverse, InverseError};
use crate::instances::unit_groupoid;
use crate::table::{is_ideal, Elem, Magma, Semigroupoid};

/// `(y, f, x)`: an injective partial map from the fibre over `x` into the fibre over `y`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PartialBij {
    pub tgt: Vertex,
    pub src: Vertex,
    pub map: BTreeMap<Elem, Elem>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("source vertex {0} differs from target vertex {1}")]
pub struct VertexMismatch(pub Vertex, pub Vertex);

impl PartialBij {
    /// `(z,g,y)(y,f,x) = (z, g∘f, x)`.
    pub fn compose(g: &PartialBij, f: &PartialBij) -> Result<PartialBij, VertexMismatch> {
        if g.src != f.tgt {
            return Err(VertexMismatch(g.src, f.tgt));
        }
        let map = f.map.iter().filter_map(|(&x, y)| g.map.get(y).map(|&z| (x, z))).collect();
        Ok(PartialBij { tgt: g.tgt, src: f.src, map })
    }

    pub fn inverse(&self) -> PartialBij {
        PartialBij { tgt: self.src, src: self.tgt, map: self.map.iter().map(|(&x, &y)| (y, x)).collect() }
    }

    /// Graph containment with equal endpoints.
    pub fn le(&self, other: &PartialBij) -> bool {
        self.tgt == other.tgt && self.src == other.src && self.map.iter().all(|(x, y)| other.map.get(x) == Some(y))
    }
}

/// A map `π: X → B` from a finite total set onto base points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bundle {
    pub total: Vec<String>,
    pub base: Vec<String>,
    pub proj: Vec<Vertex>,
}

impl Bundle {
    pub fn fibre(&self, v: Vertex) -> Vec<Elem> {
        (0..self.total.len()).filter(|&x| self.proj[x] == v).collect()
    }
}

fn partial_injections(dom: &[Elem], cod: &[Elem]) -> Vec<BTreeMap<Elem, Elem>> {
    let mut out = vec![BTreeMap::new()];
    for &x in dom {
        let mut next = Vec::new();
        for m in &out {
            next.push(m.clone());
            for &y in cod {
                if !m.values().any(|&v| v == y) {
                    let mut m2 = m.clone();
                    m2.insert(x, y);
                    next.push(m2);
                }
            }
        }
        out = next;
    }
    out
}

/// The inverse semigroupoid `I(π)` of all fibred partial bijections, with the bijections.
pub fn ipi(b: &Bundle) -> Result<(Inverse, Vec<PartialBij>), InverseError> {
    let mut elems = Vec::new();
    for y in 0..b.base.len() {
        for x in 0..b.base.len() {
            for map in partial_injections(&b.fibre(x), &b.fibre(y)) {
                elems.push(PartialBij { tgt: y, src: x, map });
            }
        }
    }
    let index: BTreeMap<&PartialBij, Elem> = elems.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let name = |p: &PartialBij| {
        let body: Vec<String> = p.map.iter().map(|(&x, &y)| format!("{}>{}", b.total[x], b.total[y])).collect();
        format!("({},{},{})", b.base[p.tgt], body.join("."), b.base[p.src])
    };
    let m = Magma::from_fn(elems.iter().map(name), |g, f| {
        PartialBij::compose(&elems[g], &elems[f]).ok().map(|h| index[&h])
    });
    let sg = crate::table::validate_exel(m, 1).map_err(|_| InverseError::NotRegular(0))?;
    Ok((detect_inverse(&sg)?, elems))
}

/// Exhaustively confirms `I(π)` is an inverse semigroupoid whose vertices are the base points
/// and whose involution is map inversion.
pub fn ipi_product_check(b: &Bundle) -> Result<Inverse, String> {
    let (s, elems) = ipi(b).map_err(|e| e.to_string())?;
    let order = crate::inverse::order_axioms_check(&s);
    if !order.passed() {
        return Err(format!("order axioms: {:?}", order.items));
    }
    for a in s.elems() {
        if elems[s.star(a)] != elems[a].inverse() {
            return Err(format!("involution is not map inversion at {}", s.name(a)));
        }
    }
    if s.nv() != b.base.len() {
        return Err("vertex count differs from base".into());
    }
    Ok(s)
}

/// Which conditions a map between inverse semigroupoids satisfies.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MapKind {
    /// `θ(a*) = θ(a)*`.
    pub preserves_inverse: bool,
    /// `ab` defined implies `θ(a)θ(b)` defined and `θ(a)θ(b) ≤ θ(ab)`.
    pub meet_condition: bool,
    /// `a ≤ b` implies `θ(a) ≤ θ(b)`.
    pub monotone: bool,
    /// `ab` defined implies `θ(a)θ(b)` defined and `θ(ab) ≤ θ(a)θ(b)`.
    pub join_condition: bool,
    pub homomorphism: bool,
}

impl MapKind {
    pub fn is_meet_prehomomorphism(&self) -> bool {
        self.preserves_inverse && self.meet_condition
    }

    pub fn is_partial_homomorphism(&self) -> bool {
        self.is_meet_prehomomorphism() && self.monotone
    }

    pub fn is_join_prehomomorphism(&self) -> bool {
        self.preserves_inverse && self.join_condition
    }

    pub fn labels(&self) -> Vec<&'static str> {
        let mut v = Vec::new();
        if self.homomorphism {
            v.push("homomorphism");
        }
        if self.is_partial_homomorphism() {
            v.push("partial homomorphism");
        }
        if self.is_meet_prehomomorphism() {
            v.push("meet-prehomomorphism");
        }
        if self.is_join_prehomomorphism() {
            v.push("join-prehomomorphism");
        }
        v
    }
}

pub fn validate_map_kind(src: &Inverse, dst: &Inverse, map: &[Elem]) -> MapKind {
    let preserves_inverse = src.elems().all(|a| map[src.star(a)] == dst.star(map[a]));
    let mut meet_condition = true;
    let mut join_condition = true;
    let mut homomorphism = true;
    for (a, b, c) in src.magma().products() {
        match dst.mul(map[a], map[b]) {
            None => {
                meet_condition = false;
                join_condition = false;
                homomorphism = false;
            }
            Some(d) => {
                meet_condition &= dst.leq(d, map[c]);
                join_condition &= dst.leq(map[c], d);
                homomorphism &= d == map[c];
            }
        }
    }
    let monotone = src.elems().all(|a| src.elems().all(|b| !src.leq(a, b) || dst.leq(map[a], map[b])));
    MapKind { preserves_inverse, meet_condition, monotone, join_condition, homomorphism }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ActionKind {
    Meet,
    Partial,
    Global,
}

/// An anchor map `π: Λ → S⁽⁰⁾` and partial maps `θ_a` from the fibre over `s(a)` to that over `r(a)`.
#[derive(Clone, Debug)]
pub struct Preaction {
    pub actor: Inverse,
    pub space: Graphed,
    pub anchor: Vec<Vertex>,
    pub theta: Vec<Vec<Option<Elem>>>,
    pub kind: ActionKind,
}

impl Preaction {
    #[inline]
    pub fn act(&self, a: Elem, x: Elem) -> Option<Elem> {
        self.theta[a][x]
    }

    pub fn domain(&self, a: Elem) -> Vec<Elem> {
        (0..self.space.len()).filter(|&x| self.theta[a][x].is_some()).collect()
    }

    pub fn range(&self, a: Elem) -> Vec<Elem> {
        let mut v: Vec<Elem> = self.theta[a].iter().flatten().copied().collect();
        v.sort_unstable();
        v
    }

    pub fn as_bij(&self, a: Elem) -> PartialBij {
        PartialBij {
            tgt: self.actor.r(a),
            src: self.actor.s(a),
            map: self.theta[a].iter().enumerate().filter_map(|(x, y)| y.map(|y| (x, y))).collect(),
        }
    }

    pub fn is_nondegenerate(&self) -> bool {
        (0..self.space.len()).all(|x| (0..self.actor.len()).any(|a| self.theta[a][x].is_some()))
    }

    /// Maps given by element names; unlisted actor elements act by the empty map.
    pub fn from_named(
        actor: Inverse,
        space: Graphed,
        anchor: Vec<Vertex>,
        maps: &[(&str, &[(&str, &str)])],
        kind: ActionKind,
    ) -> Result<Self, String> {
        let n = space.len();
        let mut theta = vec![vec![None; n]; actor.len()];
        for (a, pairs) in maps {
            let a = actor.magma().index_of(a).ok_or_else(|| format!("unknown actor element {a}"))?;
            for (x, y) in pairs.iter() {
                let find = |v: &str| space.magma().index_of(v).ok_or_else(|| format!("unknown space element {v}"));
                theta[a][find(x)?] = Some(find(y)?);
            }
        }
        Ok(Preaction { actor, space, anchor, theta, kind })
    }

    pub fn with_kind(mut self, kind: ActionKind) -> Self {
        self.kind = kind;
        self
    }
}

#[derive(Clone, Debug, Default)]
pub struct PreactionReport {
    pub violations: Vec<(&'static str, String)>,
    pub nondegenerate: bool,
}

impl PreactionReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, axiom: &str) -> bool {
        self.violations.iter().any(|v| v.0 == axiom)
    }
}

pub const AX_SHAPE: &str = "fibres";
pub const AX_INVERSE: &str = "theta(a*) = theta(a)^-1";
pub const AX_MEET: &str = "theta(a)theta(b) <= theta(ab)";
pub const AX_MONOTONE: &str = "a <= b implies theta(a) <= theta(b)";
pub const AX_GLOBAL: &str = "theta(a)theta(b) = theta(ab)";
pub const AX_ANCHOR: &str = "anchor is a homomorphism";
pub const AX_FIBRE_IDEAL: &str = "fibres are ideals";
pub const AX_DOMAIN_IDEAL: &str = "domains are ideals of fibres";
pub const AX_ISOMORPHISM: &str = "theta(a) is an isomorphism";
pub const AX_IDEMPOTENT: &str = "theta(e) is an identity";
pub const AX_DOMAIN_STAR: &str = "dom theta(a) within dom theta(a*a)";
pub const AX_COINCIDE: &str = "a <= b: theta(b) = theta(a) on dom theta(a*a) and dom theta(b)";

pub fn validate_preaction(p: &Preaction, limit: usize) -> PreactionReport {
    let s = &p.actor;
    let sp = &p.space;
    let n = sp.len();
    let mut rep = PreactionReport { violations: Vec::new(), nondegenerate: p.is_nondegenerate() };
    let push = |rep: &mut PreactionReport, ax: &'static str, w: String| {
        if rep.violations.len() < limit {
            rep.violations.push((ax, w));
        }
    };
    if p.anchor.len() != n || p.theta.len() != s.len() || p.theta.iter().any(|t| t.len() != n) {
        push(&mut rep, AX_SHAPE, "wrong sizes".into());
        return rep;
    }
    let bij: Vec<PartialBij> = s.elems().map(|a| p.as_bij(a)).collect();
    for a in s.elems() {
        let mut seen = vec![false; n];
        for (x, y) in &bij[a].map {
            if p.anchor[*x] != s.s(a) || p.anchor[*y] != s.r(a) {
                push(&mut rep, AX_SHAPE, format!("theta({}) leaves its fibres at {}", s.name(a), sp.magma().name(*x)));
            }
            if std::mem::replace(&mut seen[*y], true) {
                push(&mut rep, AX_SHAPE, format!("theta({}) is not injective", s.name(a)));
            }
        }
    }
    for a in s.elems() {
        if bij[s.star(a)] != bij[a].inverse() {
            push(&mut rep, AX_INVERSE, format!("a = {}", s.name(a)));
        }
    }
    for (a, b, c) in s.magma().products() {
        let comp = PartialBij::compose(&bij[a], &bij[b]).expect("composable");
        if !comp.le(&bij[c]) {
            push(&mut rep, AX_MEET, format!("a = {}, b = {}", s.name(a), s.name(b)));
        }
        if p.kind == ActionKind::Global && comp != bij[c] {
            push(&mut rep, AX_GLOBAL, format!("a = {}, b = {}", s.name(a), s.name(b)));
        }
    }
    if p.kind != ActionKind::Meet {
        for a in s.elems() {
            for b in s.elems() {
                if s.leq(a, b) && !bij[a].le(&bij[b]) {
                    push(&mut rep, AX_MONOTONE, format!("a = {}, b = {}", s.name(a), s.name(b)));
                }
            }
        }
    }
    for e in s.idempotents() {
        if bij[e].map.iter().any(|(x, y)| x != y) {
            push(&mut rep, AX_IDEMPOTENT, format!("e = {}", s.name(e)));
        }
    }
    for a in s.elems() {
        let d = s.dom(a);
        if bij[a].map.keys().any(|x| !bij[d].map.contains_key(x)) {
            push(&mut rep, AX_DOMAIN_STAR, format!("a = {}", s.name(a)));
        }
        for b in s.elems() {
            if s.leq(a, b) {
                let bad = bij[b].map.iter().any(|(x, y)| bij[d].map.contains_key(x) && bij[a].map.get(x) != Some(y));
                if bad {
                    push(&mut rep, AX_COINCIDE, format!("a = {}, b = {}", s.name(a), s.name(b)));
                }
            }
        }
    }
    let m = sp.magma();
    for (x, y, _) in m.products() {
        if p.anchor[x] != p.anchor[y] {
            push(&mut rep, AX_ANCHOR, format!("{}{} defined across fibres", m.name(x), m.name(y)));
        }
    }
    for v in 0..s.nv() {
        let fib: Vec<Elem> = (0..n).filter(|&x| p.anchor[x] == v).collect();
        if !is_ideal(m, &fib) {
            push(&mut rep, AX_FIBRE_IDEAL, format!("fibre over {}", s.graphed().vname(v)));
        }
    }
    for a in s.elems() {
        let dom = &bij[a].map;
        for (x, y, c) in m.products() {
            if p.anchor[x] != s.s(a) || p.anchor[y] != s.s(a) {
                continue;
            }
            if (dom.contains_key(&x) || dom.contains_key(&y)) && !dom.contains_key(&c) {
                push(&mut rep, AX_DOMAIN_IDEAL, format!("a = {}, product {}{}", s.name(a), m.name(x), m.name(y)));
            }
        }
        for (&x, &tx) in dom {
            for (&y, &ty) in dom {
                let ok = match (m.mul(x, y), m.mul(tx, ty)) {
                    (None, None) => true,
                    (Some(c), Some(d)) => dom.get(&c) == Some(&d),
                    _ => false,
                };
                if !ok {
                    push(&mut rep, AX_ISOMORPHISM, format!("a = {}, at {}{}", s.name(a), m.name(x), m.name(y)));
                }
            }
        }
    }
    rep
}

/// `θ̄_a = ⋁_{b ≤ a} θ_b`.
pub fn extend_to_partial(p: &Preaction) -> Preaction {
    let s = &p.actor;
    let n = p.space.len();
    let theta = s
        .elems()
        .map(|a| {
            let mut t = vec![None; n];
            for b in s.elems().filter(|&b| s.leq(b, a)) {
                for x in 0..n {
                    if let Some(y) = p.theta[b][x] {
                        debug_assert!(t[x].is_none() || t[x] == Some(y));
                        t[x] = Some(y);
                    }
                }
            }
            t
        })
        .collect();
    Preaction { theta, kind: ActionKind::Partial, ..p.clone() }
}

/// Result of the Wagner–Preston construction.
#[derive(Clone, Debug)]
pub struct WagnerPreston {
    /// The representation as a global action on `S` anchored by the range map.
    pub action: Preaction,
    pub images: Vec<PartialBij>,
    pub injective: bool,
    pub multiplicative: bool,
    pub defined_iff: bool,
    pub image_closed: bool,
}

impl WagnerPreston {
    pub fn image_size(&self) -> usize {
        let mut v = self.images.clone();
        v.sort();
        v.dedup();
        v.len()
    }

    pub fn ok(&self) -> bool {
        self.injective && self.multiplicative && self.defined_iff && self.image_closed
    }
}

/// Space `S` as a unit groupoid.
fn as_set(names: &[String]) -> Graphed {
    let m = unit_groupoid(names.iter().cloned());
    let n = m.len();
    Graphed::new(Semigroupoid::trusted(m), names.to_vec(), (0..n).collect(), (0..n).collect()).expect("unit groupoid")
}

pub fn wagner_preston(s: &Inverse) -> WagnerPreston {
    let n = s.len();
    // D_a = {t : tt* ≤ aa*}
    let in_d = |a: Elem, t: Elem| s.leq(s.ran(t), s.ran(a));
    let theta: Vec<Vec<Option<Elem>>> = s
        .elems()
        .map(|a| (0..n).map(|t| if in_d(s.star(a), t) { s.mul(a, t) } else { None }).collect())
        .collect();
    let space = as_set(s.magma().names());
    let action = Preaction {
        actor: s.clone(),
        space,
        anchor: s.elems().map(|t| s.r(t)).collect(),
        theta,
        kind: ActionKind::Global,
    };
    let images: Vec<PartialBij> = s.elems().map(|a| action.as_bij(a)).collect();
    let mut sorted = images.clone();
    sorted.sort();
    sorted.dedup();
    let injective = sorted.len() == n;
    let mut multiplicative = true;
    let mut defined_iff = true;
    let mut image_closed = true;
    for a in s.elems() {
        for b in s.elems() {
            let comp = PartialBij::compose(&images[a], &images[b]);
            match (s.mul(a, b), comp) {
                (Some(c), Ok(h)) => {
                    multiplicative &= h == images[c];
                    image_closed &= sorted.binary_search(&h).is_ok();
                }
                (None, Err(_)) => {}
                _ => defined_iff = false,
            }
        }
    }
    WagnerPreston { action, images, injective, multiplicative, defined_iff, image_closed }
}

/// `F(S)`: elements `b` with `s(b) = r(b)` and `beb* = e` for all `e ≤ b*b`.
pub fn munn_set(s: &Inverse) -> Vec<Elem> {
    s.elems()
        .filter(|&b| {
            s.s(b) == s.r(b)
                && s.idempotents().iter().filter(|&&e| s.leq(e, s.dom(b))).all(|&e| s.mul3(b, e, s.star(b)) == Some(e))
        })
        .collect()
}

fn restricted_space(s: &Inverse, set: &[Elem]) -> (Graphed, Vec<Elem>) {
    let sub = crate::inverse::sub_inverse(s, set).expect("inverse sub-semigroupoid");
    (sub.graphed().clone(), set.to_vec())
}

/// Conjugation `μ_a(b) = aba*` on `dom(μ_a) = {b ∈ F : bb* ≤ a*a}`, anchored by `s`.
pub fn munn_conjugation_action(s: &Inverse) -> Preaction {
    conjugation_on(s, &munn_set(s))
}

/// The conjugation action restricted to `E(S)`.
pub fn munn_on_idempotents(s: &Inverse) -> Preaction {
    conjugation_on(s, &s.idempotents())
}

fn conjugation_on(s: &Inverse, set: &[Elem]) -> Preaction {
    let (space, emb) = restricted_space(s, set);
    let pos: BTreeMap<Elem, Elem> = emb.iter().enumerate().map(|(i, &b)| (b, i)).collect();
    let theta = s
        .elems()
        .map(|a| {
            emb.iter()
                .map(|&b| {
                    if s.leq(s.ran(b), s.dom(a)) {
                        let c = s.mul3(a, b, s.star(a)).expect("conjugate defined");
                        Some(pos[&c])
                    } else {
                        None
                    }
                })
                .collect()
        })
        .collect();
    Preaction {
        actor: s.clone(),
        space,
        anchor: emb.iter().map(|&b| s.s(b)).collect(),
        theta,
        kind: ActionKind::Global,
    }
}

/// `τ_a: s(a) ↦ r(a)` on the vertex set.
pub fn canonical_vertex_action(s: &Inverse) -> Preaction {
    let nv = s.nv();
    let space = as_set(s.graphed().vnames());
    let theta = s
        .elems()
        .map(|a| {
            let mut t = vec![None; nv];
            t[s.s(a)] = Some(s.r(a));
            t
        })
        .collect();
    Preaction { actor: s.clone(), space, anchor: (0..nv).collect(), theta, kind: ActionKind::Global }
}
