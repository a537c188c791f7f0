//! Inverse semigroupoids: involution, idempotents and the canonical order.

use std::collections::BTreeMap;

use petgraph::unionfind::UnionFind;
use thiserror::Error;

use crate::graph::{GraphError, Graphed, Vertex};
use crate::table::{Elem, Magma, Semigroupoid};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum InverseError {
    #[error("element {0} has no inverse")]
    NotRegular(Elem),
    #[error("element {element} has several inverses {inverses:?}")]
    NotUniqueInverse { element: Elem, inverses: Vec<Elem> },
    #[error("graphing: {0}")]
    Graph(#[from] GraphError),
    #[error("the supplied graphing is not the canonical one")]
    NonCanonicalGraphing,
}

/// All `b` with `aba = a` and `bab = b`.
pub fn inverses_of(m: &Magma, a: Elem) -> Vec<Elem> {
    m.elems().filter(|&b| is_pseudoinverse(m, a, b) && is_pseudoinverse(m, b, a)).collect()
}

/// `aba = a`.
pub fn is_pseudoinverse(m: &Magma, a: Elem, b: Elem) -> bool {
    m.mul(a, b).and_then(|ab| m.mul(ab, a)) == Some(a)
}

/// An inverse semigroupoid with its canonical graphing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inverse {
    g: Graphed,
    inv: Vec<Elem>,
    idem: Vec<bool>,
}

fn involution(m: &Magma) -> Result<Vec<Elem>, InverseError> {
    let mut inv = Vec::with_capacity(m.len());
    for a in m.elems() {
        // a pseudoinverse b yields the inverse bab, so regularity is decided first
        if !m.elems().any(|b| is_pseudoinverse(m, a, b)) {
            return Err(InverseError::NotRegular(a));
        }
        let all = inverses_of(m, a);
        match all.len() {
            0 => return Err(InverseError::NotRegular(a)),
            1 => inv.push(all[0]),
            _ => return Err(InverseError::NotUniqueInverse { element: a, inverses: all }),
        }
    }
    Ok(inv)
}

/// Classes of idempotents under `e ~ f` iff `ef` is defined, labelled by order of least member.
fn idempotent_classes(m: &Magma, idem: &[bool]) -> Vec<Option<usize>> {
    let mut uf = UnionFind::<usize>::new(m.len());
    for e in m.elems().filter(|&e| idem[e]) {
        for f in m.elems().filter(|&f| idem[f]) {
            if m.defined(e, f) {
                uf.union(e, f);
            }
        }
    }
    let mut label = BTreeMap::new();
    m.elems()
        .map(|e| {
            idem[e].then(|| {
                let k = label.len();
                *label.entry(uf.find(e)).or_insert(k)
            })
        })
        .collect()
}

pub fn detect_inverse(sg: &Semigroupoid) -> Result<Inverse, InverseError> {
    let m = sg.magma();
    let inv = involution(m)?;
    let idem: Vec<bool> = m.elems().map(|e| m.mul(e, e) == Some(e)).collect();
    let class = idempotent_classes(m, &idem);
    let nv = class.iter().flatten().max().map_or(0, |k| k + 1);
    let mut vnames = vec![String::new(); nv];
    for e in m.elems() {
        if let Some(k) = class[e] {
            if vnames[k].is_empty() {
                vnames[k] = format!("[{}]", m.name(e));
            }
        }
    }
    let mut src = Vec::with_capacity(m.len());
    let mut rng = Vec::with_capacity(m.len());
    for a in m.elems() {
        let d = m.mul(inv[a], a).expect("a*a defined");
        let r = m.mul(a, inv[a]).expect("aa* defined");
        src.push(class[d].expect("a*a idempotent"));
        rng.push(class[r].expect("aa* idempotent"));
    }
    let g = Graphed::new(sg.clone(), vnames, src, rng)?;
    Ok(Inverse { g, inv, idem })
}

impl Inverse {
    /// Use an explicitly graphed semigroupoid, checking it is inverse and its graphing
    /// agrees with the canonical one up to relabelling vertices.
    pub fn from_graphed(g: Graphed) -> Result<Self, InverseError> {
        let inv = involution(g.magma())?;
        let m = g.magma();
        let idem: Vec<bool> = m.elems().map(|e| m.mul(e, e) == Some(e)).collect();
        let class = idempotent_classes(m, &idem);
        let mut vclass: Vec<Option<usize>> = vec![None; g.nv()];
        for a in m.elems() {
            let d = m.mul(inv[a], a).unwrap();
            let r = m.mul(a, inv[a]).unwrap();
            for (v, k) in [(g.s(a), class[d].unwrap()), (g.r(a), class[r].unwrap())] {
                match vclass[v] {
                    None => vclass[v] = Some(k),
                    Some(x) if x != k => return Err(InverseError::NonCanonicalGraphing),
                    _ => {}
                }
            }
        }
        let mut seen = vclass.clone();
        seen.sort();
        seen.dedup();
        if seen.len() != g.nv() {
            return Err(InverseError::NonCanonicalGraphing);
        }
        Ok(Inverse { g, inv, idem })
    }

    pub fn graphed(&self) -> &Graphed {
        &self.g
    }

    pub fn sg(&self) -> &Semigroupoid {
        self.g.sg()
    }

    pub fn magma(&self) -> &Magma {
        self.g.magma()
    }

    pub fn len(&self) -> usize {
        self.g.len()
    }

    pub fn is_empty(&self) -> bool {
        self.g.is_empty()
    }

    pub fn elems(&self) -> std::ops::Range<Elem> {
        0..self.len()
    }

    pub fn name(&self, a: Elem) -> &str {
        self.magma().name(a)
    }

    pub fn nv(&self) -> usize {
        self.g.nv()
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.g.mul(a, b)
    }

    #[inline]
    pub fn s(&self, a: Elem) -> Vertex {
        self.g.s(a)
    }

    #[inline]
    pub fn r(&self, a: Elem) -> Vertex {
        self.g.r(a)
    }

    #[inline]
    pub fn star(&self, a: Elem) -> Elem {
        self.inv[a]
    }

    pub fn involution(&self) -> &[Elem] {
        &self.inv
    }

    #[inline]
    pub fn is_idem(&self, e: Elem) -> bool {
        self.idem[e]
    }

    pub fn idempotents(&self) -> Vec<Elem> {
        self.elems().filter(|&e| self.idem[e]).collect()
    }

    /// `a*a`.
    #[inline]
    pub fn dom(&self, a: Elem) -> Elem {
        self.mul(self.inv[a], a).unwrap()
    }

    /// `aa*`.
    #[inline]
    pub fn ran(&self, a: Elem) -> Elem {
        self.mul(a, self.inv[a]).unwrap()
    }

    /// The canonical order `a ≤ b ⇔ a = ba*a`.
    #[inline]
    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.mul(b, self.dom(a)) == Some(a)
    }

    /// Product of three, if defined.
    pub fn mul3(&self, a: Elem, b: Elem, c: Elem) -> Option<Elem> {
        self.mul(a, b).and_then(|x| self.mul(x, c))
    }

    /// Elements with source and range `v`.
    pub fn isotropy(&self, v: Vertex) -> Vec<Elem> {
        self.elems().filter(|&a| self.s(a) == v && self.r(a) == v).collect()
    }

    /// `a*b` and `ab*` are defined idempotents.
    pub fn compatible(&self, a: Elem, b: Elem) -> bool {
        let x = self.mul(self.inv[a], b);
        let y = self.mul(a, self.inv[b]);
        matches!((x, y), (Some(x), Some(y)) if self.idem[x] && self.idem[y])
    }

    /// `ab*b` when `a` and `b` have a common upper bound.
    pub fn meet(&self, a: Elem, b: Elem) -> Option<Elem> {
        let bounded = self.elems().any(|c| self.leq(a, c) && self.leq(b, c));
        if bounded {
            self.mul(a, self.dom(b))
        } else {
            None
        }
    }

    /// Lower set `{t : t ≤ a}`.
    pub fn below(&self, a: Elem) -> Vec<Elem> {
        self.elems().filter(|&t| self.leq(t, a)).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    InverseSemigroup,
    Groupoid,
    Group,
    General,
}

pub fn classify(s: &Inverse) -> Kind {
    let e = s.idempotents();
    let semigroup = e.iter().all(|&x| e.iter().all(|&y| s.mul(x, y).is_some()));
    let groupoid = e.iter().all(|&x| e.iter().all(|&y| s.mul(x, y).is_none() || x == y));
    match (semigroup, groupoid) {
        (true, true) => Kind::Group,
        (true, false) => Kind::InverseSemigroup,
        (false, true) => Kind::Groupoid,
        (false, false) => Kind::General,
    }
}

/// First pair of idempotents `e, f` with `ef` defined but `ef != fe`.
pub fn idempotents_commute(s: &Inverse) -> Result<(), (Elem, Elem)> {
    let e = s.idempotents();
    for &x in &e {
        for &y in &e {
            if let Some(p) = s.mul(x, y) {
                if s.mul(y, x) != Some(p) {
                    return Err((x, y));
                }
            }
        }
    }
    Ok(())
}

/// Outcome of the exhaustive order-property check, one entry per item.
#[derive(Clone, Debug, Default)]
pub struct OrderReport {
    pub items: Vec<(&'static str, Option<String>)>,
}

impl OrderReport {
    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.1.is_none())
    }
}

pub fn order_axioms_check(s: &Inverse) -> OrderReport {
    let n = s.len();
    let nm = |a: Elem| s.name(a).to_string();
    let mut rep = OrderReport::default();

    let mut a_item = None;
    'a: for a in 0..n {
        for b in 0..n {
            if let Some(ab) = s.mul(a, b) {
                if s.mul(s.star(b), s.star(a)) != Some(s.star(ab)) {
                    a_item = Some(format!("(ab)* != b*a* at a={}, b={}", nm(a), nm(b)));
                    break 'a;
                }
            }
        }
    }
    rep.items.push(("(a) (ab)* = b*a*", a_item));

    let mut b_item = None;
    'b: for b in 0..n {
        for e in s.idempotents() {
            if let Some(x) = s.mul3(b, e, s.star(b)) {
                if !s.is_idem(x) {
                    b_item = Some(format!("beb* not idempotent at b={}, e={}", nm(b), nm(e)));
                    break 'b;
                }
            }
        }
    }
    rep.items.push(("(b) beb* idempotent", b_item));

    let es = s.idempotents();
    let mut c_item = None;
    'c: for a in 0..n {
        for b in 0..n {
            let le = s.leq(a, b);
            let right = es.iter().any(|&e| s.mul(b, e) == Some(a));
            let left = es.iter().any(|&f| s.mul(f, b) == Some(a));
            let star = s.leq(s.star(a), s.star(b));
            if !(le == right && le == left && le == star) {
                c_item = Some(format!("characterizations of a <= b disagree at a={}, b={}", nm(a), nm(b)));
                break 'c;
            }
        }
    }
    rep.items.push(("(c) a<=b iff a=be iff a=fb iff a*<=b*", c_item));

    let mut d_item = None;
    'd: for a in 0..n {
        if !s.leq(a, a) {
            d_item = Some(format!("not reflexive at {}", nm(a)));
            break;
        }
        for b in 0..n {
            if a != b && s.leq(a, b) && s.leq(b, a) {
                d_item = Some(format!("not antisymmetric at {}, {}", nm(a), nm(b)));
                break 'd;
            }
            if !s.leq(a, b) {
                continue;
            }
            for c in 0..n {
                if s.leq(b, c) && !s.leq(a, c) {
                    d_item = Some(format!("not transitive at {}, {}, {}", nm(a), nm(b), nm(c)));
                    break 'd;
                }
            }
        }
    }
    rep.items.push(("(d) partial order", d_item));

    let mut e_item = None;
    'e: for a in 0..n {
        for c in 0..n {
            let Some(ac) = s.mul(a, c) else { continue };
            for b in 0..n {
                if !s.leq(a, b) {
                    continue;
                }
                for d in 0..n {
                    if !s.leq(c, d) {
                        continue;
                    }
                    match s.mul(b, d) {
                        Some(bd) if s.leq(ac, bd) => {}
                        _ => {
                            e_item = Some(format!(
                                "ac not below bd at a={}, b={}, c={}, d={}",
                                nm(a),
                                nm(b),
                                nm(c),
                                nm(d)
                            ));
                            break 'e;
                        }
                    }
                }
            }
        }
    }
    rep.items.push(("(e) order compatible with products", e_item));
    rep
}

/// Checks that a map between inverse semigroupoids preserves the involution, idempotents and order.
pub fn preserves_structure(src: &Inverse, dst: &Inverse, map: &[Elem]) -> bool {
    src.elems().all(|a| dst.star(map[a]) == map[src.star(a)])
        && src.idempotents().iter().all(|&e| dst.is_idem(map[e]))
        && src.elems().all(|a| src.elems().all(|b| !src.leq(a, b) || dst.leq(map[a], map[b])))
}

/// Semigroupoid restricted to a subset closed under products and inverses.
pub fn sub_inverse(s: &Inverse, set: &[Elem]) -> Result<Inverse, InverseError> {
    let (m, _) = crate::table::restrict(s.magma(), set);
    detect_inverse(&Semigroupoid::trusted(m))
}
