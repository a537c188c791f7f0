//! Partial multiplication tables and the Exel associativity axiom.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::ops::Deref;

use thiserror::Error;

/// Elements are dense indices `0..n`.
pub type Elem = usize;

/// A finite set with a partially defined binary product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Magma {
    names: Vec<String>,
    index: HashMap<String, Elem>,
    table: Vec<Option<Elem>>,
}

impl Magma {
    /// Carrier with the given element names and no products. Names must be distinct.
    pub fn new<I, S>(names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let index: HashMap<String, Elem> =
            names.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        assert_eq!(index.len(), names.len(), "duplicate element names");
        let n = names.len();
        Magma { names, index, table: vec![None; n * n] }
    }

    /// Build a table from a product function.
    pub fn from_fn<I, S, F>(names: I, f: F) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
        F: Fn(Elem, Elem) -> Option<Elem>,
    {
        let mut m = Magma::new(names);
        let n = m.len();
        for a in 0..n {
            for b in 0..n {
                if let Some(c) = f(a, b) {
                    assert!(c < n, "product out of range");
                    m.table[a * n + b] = Some(c);
                }
            }
        }
        m
    }

    /// Build from named products `(a, b, ab)`.
    pub fn from_products<I, S>(names: I, products: &[(&str, &str, &str)]) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut m = Magma::new(names);
        for &(a, b, c) in products {
            let (a, b, c) = (m.idx(a), m.idx(b), m.idx(c));
            m.set(a, b, c);
        }
        m
    }

    fn idx(&self, s: &str) -> Elem {
        match self.index.get(s) {
            Some(&i) => i,
            None => panic!("unknown element {s}"),
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, a: Elem) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<Elem> {
        self.index.get(name).copied()
    }

    pub fn set(&mut self, a: Elem, b: Elem, c: Elem) {
        let n = self.len();
        assert!(a < n && b < n && c < n);
        self.table[a * n + b] = Some(c);
    }

    pub fn unset(&mut self, a: Elem, b: Elem) {
        let n = self.len();
        self.table[a * n + b] = None;
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.table[a * self.names.len() + b]
    }

    #[inline]
    pub fn defined(&self, a: Elem, b: Elem) -> bool {
        self.mul(a, b).is_some()
    }

    /// All defined products as `(a, b, ab)` in lexicographic order.
    pub fn products(&self) -> impl Iterator<Item = (Elem, Elem, Elem)> + '_ {
        let n = self.len();
        (0..n * n).filter_map(move |k| self.table[k].map(|c| (k / n, k % n, c)))
    }

    pub fn elems(&self) -> std::ops::Range<Elem> {
        0..self.len()
    }

    /// Same table with renamed elements.
    pub fn renamed<I, S>(&self, names: I) -> Magma
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut m = Magma::new(names);
        assert_eq!(m.len(), self.len());
        m.table = self.table.clone();
        m
    }

    pub fn fmt_set(&self, set: &[Elem]) -> String {
        let parts: Vec<&str> = set.iter().map(|&e| self.name(e)).collect();
        format!("{{{}}}", parts.join(","))
    }
}

/// The three definedness conditions on a triple `(f, g, h)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Cond {
    /// `fg` and `gh` are defined.
    I,
    /// `fg` and `(fg)h` are defined.
    II,
    /// `gh` and `f(gh)` are defined.
    III,
}

impl fmt::Display for Cond {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Cond::I => "(i)",
            Cond::II => "(ii)",
            Cond::III => "(iii)",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Axiom { triple: [Elem; 3], held: Vec<Cond>, failed: Vec<Cond> },
    Equality { triple: [Elem; 3], lhs: Elem, rhs: Elem },
}

impl Violation {
    pub fn triple(&self) -> [Elem; 3] {
        match self {
            Violation::Axiom { triple, .. } | Violation::Equality { triple, .. } => *triple,
        }
    }

    pub fn describe(&self, m: &Magma) -> String {
        let t = self.triple();
        let (f, g, h) = (m.name(t[0]), m.name(t[1]), m.name(t[2]));
        match self {
            Violation::Axiom { held, failed, .. } => {
                let j = |v: &[Cond]| v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",");
                format!("triple ({f},{g},{h}): {} hold, {} fail", j(held), j(failed))
            }
            Violation::Equality { lhs, rhs, .. } => format!(
                "triple ({f},{g},{h}): ({f}{g}){h} = {} but {f}({g}{h}) = {}",
                m.name(*lhs),
                m.name(*rhs)
            ),
        }
    }
}

/// Evaluate the axiom on one triple.
pub fn check_triple(m: &Magma, f: Elem, g: Elem, h: Elem) -> Option<Violation> {
    let fg = m.mul(f, g);
    let gh = m.mul(g, h);
    let fg_h = fg.and_then(|x| m.mul(x, h));
    let f_gh = gh.and_then(|x| m.mul(f, x));
    let conds = [
        (Cond::I, fg.is_some() && gh.is_some()),
        (Cond::II, fg_h.is_some()),
        (Cond::III, f_gh.is_some()),
    ];
    let held: Vec<Cond> = conds.iter().filter(|c| c.1).map(|c| c.0).collect();
    if held.is_empty() {
        return None;
    }
    if held.len() < 3 {
        let failed = conds.iter().filter(|c| !c.1).map(|c| c.0).collect();
        return Some(Violation::Axiom { triple: [f, g, h], held, failed });
    }
    let (lhs, rhs) = (fg_h.unwrap(), f_gh.unwrap());
    (lhs != rhs).then_some(Violation::Equality { triple: [f, g, h], lhs, rhs })
}

/// All violating triples in lexicographic order, at most `limit`.
pub fn exel_violations(m: &Magma, limit: usize) -> (Vec<Violation>, bool) {
    let mut out = Vec::new();
    for f in m.elems() {
        for g in m.elems() {
            for h in m.elems() {
                if let Some(v) = check_triple(m, f, g, h) {
                    if out.len() == limit {
                        return (out, true);
                    }
                    out.push(v);
                }
            }
        }
    }
    (out, false)
}

#[derive(Clone, Debug, Error)]
#[error("not a semigroupoid: {} violation(s){}", violations.len(), if *truncated { " (truncated)" } else { "" })]
pub struct ExelError {
    pub violations: Vec<Violation>,
    pub truncated: bool,
}

/// A table satisfying the Exel associativity axiom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Semigroupoid(Magma);

impl Deref for Semigroupoid {
    type Target = Magma;
    fn deref(&self) -> &Magma {
        &self.0
    }
}

pub const DEFAULT_MAX_VIOLATIONS: usize = 32;

pub fn validate_exel(m: Magma, limit: usize) -> Result<Semigroupoid, ExelError> {
    let (violations, truncated) = exel_violations(&m, limit.max(1));
    if violations.is_empty() {
        Ok(Semigroupoid(m))
    } else {
        Err(ExelError { violations, truncated })
    }
}

impl Semigroupoid {
    pub fn magma(&self) -> &Magma {
        &self.0
    }

    pub fn into_magma(self) -> Magma {
        self.0
    }

    /// Skips validation; callers guarantee associativity.
    pub(crate) fn trusted(m: Magma) -> Self {
        debug_assert!(exel_violations(&m, 1).0.is_empty());
        Semigroupoid(m)
    }
}

/// `Λ^a`: elements `b` with `ab` defined.
pub fn left_set(m: &Magma, a: Elem) -> Vec<Elem> {
    m.elems().filter(|&b| m.defined(a, b)).collect()
}

/// `Λ_a`: elements `b` with `ba` defined.
pub fn right_set(m: &Magma, a: Elem) -> Vec<Elem> {
    m.elems().filter(|&b| m.defined(b, a)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// The sets `Λ_a`.
    Right,
    /// The sets `Λ^a`.
    Left,
}

/// Two overlapping but distinct definedness sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CategoricalWitness {
    pub family: Family,
    pub a: Elem,
    pub b: Elem,
    pub common: Elem,
    /// An element of the set of `a` missing from the set of `b` (or the reverse).
    pub separating: Elem,
}

fn overlap_witness(sets: &[Vec<Elem>], family: Family) -> Option<CategoricalWitness> {
    for a in 0..sets.len() {
        for b in a + 1..sets.len() {
            if sets[a] == sets[b] {
                continue;
            }
            let sa: BTreeSet<_> = sets[a].iter().copied().collect();
            let sb: BTreeSet<_> = sets[b].iter().copied().collect();
            if let Some(&common) = sa.intersection(&sb).next() {
                let separating = sa
                    .difference(&sb)
                    .next()
                    .or_else(|| sb.difference(&sa).next())
                    .copied()
                    .unwrap();
                return Some(CategoricalWitness { family, a, b, common, separating });
            }
        }
    }
    None
}

/// `Ok(())` when the sets `Λ_a` (equivalently `Λ^a`) are pairwise disjoint or equal.
pub fn is_categorical(m: &Magma) -> Result<(), CategoricalWitness> {
    let right: Vec<_> = m.elems().map(|a| right_set(m, a)).collect();
    if let Some(w) = overlap_witness(&right, Family::Right) {
        return Err(w);
    }
    let left: Vec<_> = m.elems().map(|a| left_set(m, a)).collect();
    match overlap_witness(&left, Family::Left) {
        Some(w) => Err(w),
        None => Ok(()),
    }
}

/// `AB`: all defined products, sorted.
pub fn subset_product(m: &Magma, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let mut out = BTreeSet::new();
    for &x in a {
        for &y in b {
            if let Some(z) = m.mul(x, y) {
                out.insert(z);
            }
        }
    }
    out.into_iter().collect()
}

fn membership(m: &Magma, set: &[Elem]) -> Vec<bool> {
    let mut v = vec![false; m.len()];
    for &x in set {
        v[x] = true;
    }
    v
}

pub fn is_left_ideal(m: &Magma, set: &[Elem]) -> bool {
    let inside = membership(m, set);
    m.products().all(|(_, b, c)| !inside[b] || inside[c])
}

pub fn is_right_ideal(m: &Magma, set: &[Elem]) -> bool {
    let inside = membership(m, set);
    m.products().all(|(a, _, c)| !inside[a] || inside[c])
}

pub fn is_ideal(m: &Magma, set: &[Elem]) -> bool {
    is_left_ideal(m, set) && is_right_ideal(m, set)
}

/// `ΔΔ ⊆ Δ`.
pub fn is_subsemigroupoid(m: &Magma, set: &[Elem]) -> bool {
    let inside = membership(m, set);
    m.products().all(|(a, b, c)| !(inside[a] && inside[b]) || inside[c])
}

/// Restriction of the table to a subset closed under the product.
pub fn restrict(m: &Magma, set: &[Elem]) -> (Magma, Vec<Elem>) {
    let mut pos = vec![usize::MAX; m.len()];
    for (i, &x) in set.iter().enumerate() {
        pos[x] = i;
    }
    let sub = Magma::from_fn(set.iter().map(|&x| m.name(x).to_string()), |i, j| {
        m.mul(set[i], set[j]).map(|c| {
            assert!(pos[c] != usize::MAX, "subset not closed under products");
            pos[c]
        })
    });
    (sub, set.to_vec())
}

/// `Λ = ΛΛ`.
pub fn is_idempotent(m: &Magma) -> bool {
    let mut hit = vec![false; m.len()];
    for (_, _, c) in m.products() {
        hit[c] = true;
    }
    hit.into_iter().all(|h| h)
}

/// For every `t` there is `u` with `ut = t`.
pub fn is_left_s_unital(m: &Magma) -> bool {
    m.elems().all(|t| m.elems().any(|u| m.mul(u, t) == Some(t)))
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum HomError {
    #[error("map has wrong length")]
    Length,
    #[error("pair ({0},{1}) is defined but its image is not")]
    NotDefined(Elem, Elem),
    #[error("image of product {0}{1} differs from the product of images")]
    NotMultiplicative(Elem, Elem),
}

/// `map` sends defined products to defined products multiplicatively.
pub fn check_homomorphism(src: &Magma, dst: &Magma, map: &[Elem]) -> Result<(), HomError> {
    if map.len() != src.len() || map.iter().any(|&x| x >= dst.len()) {
        return Err(HomError::Length);
    }
    for (a, b, c) in src.products() {
        match dst.mul(map[a], map[b]) {
            None => return Err(HomError::NotDefined(a, b)),
            Some(d) if d != map[c] => return Err(HomError::NotMultiplicative(a, b)),
            _ => {}
        }
    }
    Ok(())
}

pub fn image(map: &[Elem]) -> Vec<Elem> {
    map.iter().copied().collect::<BTreeSet<_>>().into_iter().collect()
}

pub fn preimage(map: &[Elem], set: &[Elem]) -> Vec<Elem> {
    let set: BTreeSet<Elem> = set.iter().copied().collect();
    (0..map.len()).filter(|&a| set.contains(&map[a])).collect()
}
