//! Graphed semigroupoids and the classification of compatible graph structures.

use std::collections::BTreeMap;

use petgraph::unionfind::UnionFind;
use thiserror::Error;

use crate::table::{is_categorical, left_set, right_set, CategoricalWitness, Elem, Magma, Semigroupoid};

pub type Vertex = usize;

/// A semigroupoid with source and range maps such that `ab` is defined iff `s(a) = r(b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graphed {
    sg: Semigroupoid,
    vnames: Vec<String>,
    src: Vec<Vertex>,
    rng: Vec<Vertex>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("source/range map has wrong length or out-of-range vertex")]
    Shape,
    #[error("({0},{1}) defined but s({0}) != r({1})")]
    DefinedNotComposable(Elem, Elem),
    #[error("s({0}) = r({1}) but ({0},{1}) is undefined")]
    ComposableNotDefined(Elem, Elem),
    #[error("s or r not preserved by the product {0}{1}")]
    Endpoints(Elem, Elem),
    #[error("vertex {0} is neither a source nor a range")]
    UnusedVertex(Vertex),
    #[error("semigroupoid is not categorical")]
    NotCategorical(CategoricalWitness),
    #[error("graphing choice does not satisfy the closure condition at ({0},{1})")]
    InvalidChoice(Elem, Elem),
    #[error("{0} graphing symbols exceed the cap {1}")]
    CapExceeded(usize, usize),
}

impl Graphed {
    pub fn new(sg: Semigroupoid, vnames: Vec<String>, src: Vec<Vertex>, rng: Vec<Vertex>) -> Result<Self, GraphError> {
        let g = Graphed { sg, vnames, src, rng };
        g.validate()?;
        Ok(g)
    }

    pub(crate) fn trusted(sg: Semigroupoid, vnames: Vec<String>, src: Vec<Vertex>, rng: Vec<Vertex>) -> Self {
        let g = Graphed { sg, vnames, src, rng };
        debug_assert_eq!(g.validate(), Ok(()));
        g
    }

    fn validate(&self) -> Result<(), GraphError> {
        let n = self.sg.len();
        let nv = self.vnames.len();
        if self.src.len() != n || self.rng.len() != n || self.src.iter().chain(&self.rng).any(|&v| v >= nv) {
            return Err(GraphError::Shape);
        }
        for a in 0..n {
            for b in 0..n {
                let comp = self.src[a] == self.rng[b];
                match self.sg.mul(a, b) {
                    Some(c) => {
                        if !comp {
                            return Err(GraphError::DefinedNotComposable(a, b));
                        }
                        if self.src[c] != self.src[b] || self.rng[c] != self.rng[a] {
                            return Err(GraphError::Endpoints(a, b));
                        }
                    }
                    None if comp => return Err(GraphError::ComposableNotDefined(a, b)),
                    None => {}
                }
            }
        }
        let mut used = vec![false; nv];
        for &v in self.src.iter().chain(&self.rng) {
            used[v] = true;
        }
        if let Some(v) = used.iter().position(|u| !u) {
            return Err(GraphError::UnusedVertex(v));
        }
        Ok(())
    }

    pub fn sg(&self) -> &Semigroupoid {
        &self.sg
    }

    pub fn magma(&self) -> &Magma {
        self.sg.magma()
    }

    pub fn len(&self) -> usize {
        self.sg.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sg.is_empty()
    }

    pub fn nv(&self) -> usize {
        self.vnames.len()
    }

    pub fn vname(&self, v: Vertex) -> &str {
        &self.vnames[v]
    }

    pub fn vnames(&self) -> &[String] {
        &self.vnames
    }

    #[inline]
    pub fn s(&self, a: Elem) -> Vertex {
        self.src[a]
    }

    #[inline]
    pub fn r(&self, a: Elem) -> Vertex {
        self.rng[a]
    }

    pub fn src_map(&self) -> &[Vertex] {
        &self.src
    }

    pub fn rng_map(&self) -> &[Vertex] {
        &self.rng
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.sg.mul(a, b)
    }

    /// Vertices with no arrow ending there.
    pub fn sources(&self) -> Vec<Vertex> {
        (0..self.nv()).filter(|&v| !self.rng.contains(&v)).collect()
    }

    /// Vertices with no arrow starting there.
    pub fn sinks(&self) -> Vec<Vertex> {
        (0..self.nv()).filter(|&v| !self.src.contains(&v)).collect()
    }
}

/// Equivalence relations on the symbols `v0(a)` (for `Λ^a = ∅`) and `v1(a)` (for `Λ_a = ∅`),
/// stored as a class label per element.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GraphingChoice {
    pub r0: Vec<Option<usize>>,
    pub r1: Vec<Option<usize>>,
}

struct Symbols {
    v0: Vec<Elem>,
    v1: Vec<Elem>,
    /// Forced identifications `v0(b) ~ v0(ab)`.
    pairs0: Vec<(Elem, Elem)>,
    /// Forced identifications `v1(a) ~ v1(ab)`.
    pairs1: Vec<(Elem, Elem)>,
}

fn symbols(m: &Magma) -> Symbols {
    let left_empty: Vec<bool> = m.elems().map(|a| left_set(m, a).is_empty()).collect();
    let right_empty: Vec<bool> = m.elems().map(|a| right_set(m, a).is_empty()).collect();
    let mut pairs0 = Vec::new();
    let mut pairs1 = Vec::new();
    for (a, b, c) in m.products() {
        if left_empty[b] {
            pairs0.push((b, c));
        }
        if right_empty[a] {
            pairs1.push((a, c));
        }
    }
    Symbols {
        v0: m.elems().filter(|&a| left_empty[a]).collect(),
        v1: m.elems().filter(|&a| right_empty[a]).collect(),
        pairs0,
        pairs1,
    }
}

fn finest(n: usize, syms: &[Elem], pairs: &[(Elem, Elem)]) -> Vec<Option<usize>> {
    let mut uf = UnionFind::<usize>::new(n);
    for &(x, y) in pairs {
        uf.union(x, y);
    }
    let mut label = BTreeMap::new();
    let mut out = vec![None; n];
    for &a in syms {
        let k = label.len();
        out[a] = Some(*label.entry(uf.find(a)).or_insert(k));
    }
    out
}

/// The finest choice satisfying the closure condition.
pub fn default_choice(m: &Magma) -> GraphingChoice {
    let sy = symbols(m);
    GraphingChoice { r0: finest(m.len(), &sy.v0, &sy.pairs0), r1: finest(m.len(), &sy.v1, &sy.pairs1) }
}

fn check_choice(m: &Magma, c: &GraphingChoice) -> Result<(), GraphError> {
    let sy = symbols(m);
    let ok_shape = |r: &[Option<usize>], syms: &[Elem]| {
        r.len() == m.len() && m.elems().all(|a| r[a].is_some() == syms.contains(&a))
    };
    if !ok_shape(&c.r0, &sy.v0) || !ok_shape(&c.r1, &sy.v1) {
        return Err(GraphError::Shape);
    }
    for &(x, y) in &sy.pairs0 {
        if c.r0[x] != c.r0[y] {
            return Err(GraphError::InvalidChoice(x, y));
        }
    }
    for &(x, y) in &sy.pairs1 {
        if c.r1[x] != c.r1[y] {
            return Err(GraphError::InvalidChoice(x, y));
        }
    }
    Ok(())
}

/// The graphing of a categorical semigroupoid determined by a choice of `R0`, `R1`.
///
/// Vertices are the distinct nonempty sets `Λ_a` (named `R[z]` after the least `z`
/// with that set), then the classes of `v0` (named `v0[a]`), then those of `v1` (`v1[a]`).
pub fn graph(sg: &Semigroupoid, c: &GraphingChoice) -> Result<Graphed, GraphError> {
    let m = sg.magma();
    is_categorical(m).map_err(GraphError::NotCategorical)?;
    check_choice(m, c)?;
    let n = m.len();
    let rights: Vec<Vec<Elem>> = m.elems().map(|a| right_set(m, a)).collect();
    let mut vnames = Vec::new();
    let mut by_set: BTreeMap<&Vec<Elem>, Vertex> = BTreeMap::new();
    for z in 0..n {
        if !rights[z].is_empty() && !by_set.contains_key(&rights[z]) {
            by_set.insert(&rights[z], vnames.len());
            vnames.push(format!("R[{}]", m.name(z)));
        }
    }
    let class_vertex = |r: &[Option<usize>], tag: &str, vnames: &mut Vec<String>| {
        let mut map = BTreeMap::new();
        let mut out = vec![usize::MAX; n];
        for a in 0..n {
            if let Some(k) = r[a] {
                let v = *map.entry(k).or_insert_with(|| {
                    vnames.push(format!("{tag}[{}]", m.name(a)));
                    vnames.len() - 1
                });
                out[a] = v;
            }
        }
        out
    };
    let v0 = class_vertex(&c.r0, "v0", &mut vnames);
    let v1 = class_vertex(&c.r1, "v1", &mut vnames);
    let mut src = vec![0; n];
    let mut rng = vec![0; n];
    for a in 0..n {
        src[a] = match m.elems().find(|&z| m.defined(a, z)) {
            Some(z) => by_set[&rights[z]],
            None => v0[a],
        };
        rng[a] = if rights[a].is_empty() { v1[a] } else { by_set[&rights[a]] };
    }
    Graphed::new(sg.clone(), vnames, src, rng)
}

pub fn graph_default(sg: &Semigroupoid) -> Result<Graphed, GraphError> {
    graph(sg, &default_choice(sg.magma()))
}

/// Restricted-growth strings of length `k`.
pub fn set_partitions(k: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, max: usize, k: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        let top = if cur.is_empty() { 0 } else { max + 1 };
        for x in 0..=top {
            cur.push(x);
            rec(cur, max.max(x), k, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::with_capacity(k), 0, k, &mut out);
    out
}

fn closed_partitions(n: usize, syms: &[Elem], pairs: &[(Elem, Elem)]) -> Vec<Vec<Option<usize>>> {
    let pos: BTreeMap<Elem, usize> = syms.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    set_partitions(syms.len())
        .into_iter()
        .filter(|p| pairs.iter().all(|&(x, y)| p[pos[&x]] == p[pos[&y]]))
        .map(|p| {
            let mut out = vec![None; n];
            for (i, &a) in syms.iter().enumerate() {
                out[a] = Some(p[i]);
            }
            out
        })
        .collect()
}

pub const DEFAULT_GRAPHING_CAP: usize = 8;

/// Every pair `(R0, R1)` satisfying the closure condition.
pub fn enumerate_graphings(sg: &Semigroupoid, cap: usize) -> Result<Vec<GraphingChoice>, GraphError> {
    let m = sg.magma();
    is_categorical(m).map_err(GraphError::NotCategorical)?;
    let sy = symbols(m);
    let k = sy.v0.len() + sy.v1.len();
    if k > cap {
        return Err(GraphError::CapExceeded(k, cap));
    }
    let p0 = closed_partitions(m.len(), &sy.v0, &sy.pairs0);
    let p1 = closed_partitions(m.len(), &sy.v1, &sy.pairs1);
    let mut out = Vec::new();
    for r0 in &p0 {
        for r1 in &p1 {
            out.push(GraphingChoice { r0: r0.clone(), r1: r1.clone() });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum VertexMapError {
    #[error("vertex {0} of the domain is a source or a sink")]
    HasSourceOrSink(Vertex),
    #[error("map is not a homomorphism")]
    NotHomomorphism,
    #[error("endpoints of images disagree at vertex {0}")]
    Inconsistent(Vertex),
}

/// The vertex map induced by a homomorphism whose domain has no sources or sinks.
pub fn induce_vertex_map(src: &Graphed, dst: &Graphed, map: &[Elem]) -> Result<Vec<Vertex>, VertexMapError> {
    let (sources, sinks) = (src.sources(), src.sinks());
    if let Some(&v) = sources.first().or(sinks.first()) {
        return Err(VertexMapError::HasSourceOrSink(v));
    }
    crate::table::check_homomorphism(src.magma(), dst.magma(), map).map_err(|_| VertexMapError::NotHomomorphism)?;
    let mut out = vec![None; src.nv()];
    for a in 0..src.len() {
        for (v, w) in [(src.s(a), dst.s(map[a])), (src.r(a), dst.r(map[a]))] {
            match out[v] {
                None => out[v] = Some(w),
                Some(x) if x != w => return Err(VertexMapError::Inconsistent(v)),
                _ => {}
            }
        }
    }
    Ok(out.into_iter().map(Option::unwrap).collect())
}
