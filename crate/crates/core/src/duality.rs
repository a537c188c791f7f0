//! Ultrafilter spectra, Σ-ordered inverse semigroups, the bisection semigroup `KB`,
//! the germ construction `P`, and the comparison maps `ζ` and `κ`.

use std::collections::HashMap;
use std::fmt;

use petgraph::unionfind::UnionFind;
use thiserror::Error;

use crate::action::{ActionKind, Preaction};
use crate::corpus::set_space;
use crate::graph::Vertex;
use crate::inverse::{detect_inverse, Inverse, InverseError};
use crate::quotient::{check_graphed_congruence, quotient_graphed, GraphedCongruence};
use crate::semidirect::{semidirect_product, SemidirectProduct};
use crate::table::{check_homomorphism, restrict, Elem, Magma, Semigroupoid};

/// A finite meet semilattice, total and idempotent, with its minimum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Semilattice {
    m: Magma,
    zero: Elem,
}

impl Semilattice {
    pub fn new(m: Magma) -> Result<Self, String> {
        if let Some((a, b)) = m.elems().flat_map(|a| m.elems().map(move |b| (a, b))).find(|&(a, b)| !m.defined(a, b)) {
            return Err(format!("{}{} undefined", m.name(a), m.name(b)));
        }
        for a in m.elems() {
            for b in m.elems() {
                let ab = m.mul(a, b).unwrap();
                if m.mul(b, a) != Some(ab) {
                    return Err(format!("{} and {} do not commute", m.name(a), m.name(b)));
                }
                for c in m.elems() {
                    if m.mul(ab, c) != m.mul(a, m.mul(b, c).unwrap()) {
                        return Err("not associative".into());
                    }
                }
            }
            if m.mul(a, a) != Some(a) {
                return Err(format!("{} is not idempotent", m.name(a)));
            }
        }
        let zero = m
            .elems()
            .find(|&z| m.elems().all(|a| m.mul(z, a) == Some(z)))
            .ok_or("no minimum element")?;
        Ok(Semilattice { m, zero })
    }

    /// `E(S)` with the embedding into `S`.
    pub fn of_idempotents(s: &Inverse) -> Result<(Self, Vec<Elem>), String> {
        let idem = s.idempotents();
        let (m, emb) = restrict(s.magma(), &idem);
        Ok((Semilattice::new(m)?, emb))
    }

    pub fn magma(&self) -> &Magma {
        &self.m
    }

    pub fn len(&self) -> usize {
        self.m.len()
    }

    pub fn is_empty(&self) -> bool {
        self.m.is_empty()
    }

    pub fn zero(&self) -> Elem {
        self.zero
    }

    #[inline]
    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.m.mul(a, b).unwrap()
    }

    #[inline]
    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.meet(a, b) == a
    }

    /// `e↑`.
    pub fn up(&self, e: Elem) -> Vec<bool> {
        self.m.elems().map(|f| self.leq(e, f)).collect()
    }
}

/// Nonempty, closed under meets and upward closed.
pub fn is_filter(e: &Semilattice, f: &[bool]) -> bool {
    let n = e.len();
    f.iter().any(|&x| x)
        && (0..n).all(|a| !f[a] || (0..n).all(|b| (!f[b] || f[e.meet(a, b)]) && (!e.leq(a, b) || f[b])))
}

/// A proper filter with `0 ∉ eF ⇒ e ∈ F` for every `e`.
pub fn is_ultrafilter(e: &Semilattice, f: &[bool]) -> bool {
    let n = e.len();
    is_filter(e, f)
        && !f[e.zero()]
        && (0..n).all(|x| f[x] || (0..n).any(|y| f[y] && e.meet(x, y) == e.zero()))
}

/// Ultrafilters stored as membership vectors, with their least elements as generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spectrum {
    pub filters: Vec<Vec<bool>>,
    pub generators: Vec<Elem>,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.filters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.filters.is_empty()
    }

    /// `X[e]`.
    pub fn basic(&self, e: Elem) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.filters[i][e]).collect()
    }

    pub fn position(&self, f: &[bool]) -> Option<usize> {
        self.filters.iter().position(|g| g == f)
    }
}

/// Every filter of a finite semilattice is principal; the criterion selects the ultrafilters.
pub fn ultrafilters(e: &Semilattice) -> Spectrum {
    let mut filters = Vec::new();
    let mut generators = Vec::new();
    for m in e.magma().elems() {
        let f = e.up(m);
        if is_ultrafilter(e, &f) {
            filters.push(f);
            generators.push(m);
        }
    }
    Spectrum { filters, generators }
}

/// Relation `⊆` on an inverse semigroup with zero, and its conditional joins and meets.
#[derive(Clone, Debug)]
pub struct SigmaOrdered {
    s: Inverse,
    le: Vec<Vec<bool>>,
    zero: Elem,
    join: Vec<Vec<Option<Elem>>>,
    meet: Vec<Vec<Option<Elem>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SigmaError {
    #[error("not an inverse semigroup (several vertices or partial product)")]
    NotSemigroup,
    #[error("no zero element")]
    NoZero,
    #[error("relation has the wrong size")]
    Shape,
    #[error("axiom {axiom} fails: {witness}")]
    AxiomFailure { axiom: SigmaAxiom, witness: String },
    #[error("no interpolator for t = {t}, a = {a}")]
    NoInterpolator { t: String, a: String },
    #[error("{0}")]
    Other(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SigmaAxiom {
    Compatible,
    I,
    II,
    III,
    IV,
    V,
    VI,
    MeetFormula,
    ComplementFormula,
    ComplementProduct,
    DeMorgan,
    Interpolator,
}

impl fmt::Display for SigmaAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SigmaAxiom::Compatible => "compatible order",
            SigmaAxiom::I => "(Σ-i) zero minimum",
            SigmaAxiom::II => "(Σ-ii) conditional joins",
            SigmaAxiom::III => "(Σ-iii) distributivity",
            SigmaAxiom::IV => "(Σ-iv) relative complements of idempotents",
            SigmaAxiom::V => "(Σ-v) joins of orthogonal pairs",
            SigmaAxiom::VI => "(Σ-vi) interpolation",
            SigmaAxiom::MeetFormula => "x∩y = xy*y = yy*x below a common bound",
            SigmaAxiom::ComplementFormula => "b∖a = b(b*b∖a*a)",
            SigmaAxiom::ComplementProduct => "c(b∖a) = (cb)∖(ca)",
            SigmaAxiom::DeMorgan => "De Morgan",
            SigmaAxiom::Interpolator => "unique two-sided interpolator",
        };
        f.write_str(s)
    }
}

fn bound(n: usize, le: &[Vec<bool>], a: Elem, b: Elem, upper: bool) -> Option<Elem> {
    let rel = |x: Elem, y: Elem| if upper { le[x][y] } else { le[y][x] };
    let bounds: Vec<Elem> = (0..n).filter(|&c| rel(a, c) && rel(b, c)).collect();
    bounds.iter().copied().find(|&c| bounds.iter().all(|&d| rel(c, d)))
}

impl SigmaOrdered {
    pub fn new(s: Inverse, le: Vec<Vec<bool>>) -> Result<Self, SigmaError> {
        let n = s.len();
        if s.nv() > 1 || s.magma().products().count() != n * n {
            return Err(SigmaError::NotSemigroup);
        }
        if le.len() != n || le.iter().any(|r| r.len() != n) {
            return Err(SigmaError::Shape);
        }
        let zero = s
            .elems()
            .find(|&z| s.elems().all(|a| s.mul(z, a) == Some(z) && s.mul(a, z) == Some(z)))
            .ok_or(SigmaError::NoZero)?;
        let join = (0..n).map(|a| (0..n).map(|b| bound(n, &le, a, b, true)).collect()).collect();
        let meet = (0..n).map(|a| (0..n).map(|b| bound(n, &le, a, b, false)).collect()).collect();
        Ok(SigmaOrdered { s, le, zero, join, meet })
    }

    /// `⊆` taken to be the canonical order.
    pub fn canonical(s: Inverse) -> Result<Self, SigmaError> {
        let le = s.elems().map(|a| s.elems().map(|b| s.leq(a, b)).collect()).collect();
        SigmaOrdered::new(s, le)
    }

    pub fn inverse(&self) -> &Inverse {
        &self.s
    }

    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }

    pub fn zero(&self) -> Elem {
        self.zero
    }

    pub fn name(&self, a: Elem) -> &str {
        self.s.name(a)
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.s.mul(a, b).expect("total product")
    }

    #[inline]
    pub fn star(&self, a: Elem) -> Elem {
        self.s.star(a)
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> bool {
        self.le[a][b]
    }

    pub fn relation(&self) -> &[Vec<bool>] {
        &self.le
    }

    pub fn join(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.join[a][b]
    }

    pub fn meet(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.meet[a][b]
    }

    /// Annihilators: `tx = 0 ⇔ px = 0` (right) and `xt = 0 ⇔ xp = 0` (left) for all `x`.
    fn same_annihilators(&self, t: Elem, p: Elem, right: bool, left: bool) -> bool {
        let z = self.zero;
        self.s.elems().all(|x| {
            (!right || (self.mul(t, x) == z) == (self.mul(p, x) == z))
                && (!left || (self.mul(x, t) == z) == (self.mul(x, p) == z))
        })
    }
}

/// The unique `c` with `a ∪ c = b` and `a ∩ c = 0`, for `a ⊆ b`.
pub fn relative_complement(sg: &SigmaOrdered, a: Elem, b: Elem) -> Option<Elem> {
    if !sg.sub(a, b) {
        return None;
    }
    let mut found = sg.s.elems().filter(|&c| sg.join(a, c) == Some(b) && sg.meet(a, c) == Some(sg.zero));
    let c = found.next()?;
    found.next().is_none().then_some(c)
}

/// The two-sided interpolator `a|t` for `t ≤ a`, built as `z∩w = zw*w` from one-sided
/// witnesses and checked against its annihilator characterization and uniqueness.
pub fn interpolator(sg: &SigmaOrdered, t: Elem, a: Elem) -> Result<Elem, SigmaError> {
    let s = &sg.s;
    let err = || SigmaError::NoInterpolator { t: sg.name(t).into(), a: sg.name(a).into() };
    if !s.leq(t, a) {
        return Err(err());
    }
    let between = |p: Elem| s.leq(t, p) && sg.sub(p, a);
    let z = s.elems().find(|&z| between(z) && sg.same_annihilators(t, z, true, false)).ok_or_else(err)?;
    let w = s.elems().find(|&w| between(w) && sg.same_annihilators(t, w, false, true)).ok_or_else(err)?;
    let p = sg.mul(z, sg.mul(sg.star(w), w));
    let all: Vec<Elem> = s.elems().filter(|&q| between(q) && sg.same_annihilators(t, q, true, true)).collect();
    if all != [p] {
        return Err(SigmaError::AxiomFailure {
            axiom: SigmaAxiom::Interpolator,
            witness: format!("t = {}, a = {}: candidates {:?}, built {}", sg.name(t), sg.name(a), all, sg.name(p)),
        });
    }
    Ok(p)
}

/// Every failed axiom with a witness; empty means `(S, ⊆)` is Σ-ordered.
pub fn sigma_report(sg: &SigmaOrdered) -> Vec<(SigmaAxiom, String)> {
    let s = &sg.s;
    let n = s.len();
    let z = sg.zero;
    let nm = |a: Elem| sg.name(a).to_string();
    let mut out: Vec<(SigmaAxiom, String)> = Vec::new();
    let fail = |ax: SigmaAxiom, w: String, out: &mut Vec<(SigmaAxiom, String)>| {
        if !out.iter().any(|(a, _)| *a == ax) {
            out.push((ax, w));
        }
    };
    // compatible partial order
    for a in 0..n {
        if !sg.sub(a, a) {
            fail(SigmaAxiom::Compatible, format!("{} not reflexive", nm(a)), &mut out);
        }
        for b in 0..n {
            if sg.sub(a, b) {
                if a != b && sg.sub(b, a) {
                    fail(SigmaAxiom::Compatible, format!("{} and {} not antisymmetric", nm(a), nm(b)), &mut out);
                }
                if !s.leq(a, b) {
                    fail(SigmaAxiom::Compatible, format!("{} ⊆ {} but not ≤", nm(a), nm(b)), &mut out);
                }
                for x in 0..n {
                    if !sg.sub(sg.mul(a, x), sg.mul(b, x)) || !sg.sub(sg.mul(x, a), sg.mul(x, b)) {
                        fail(SigmaAxiom::Compatible, format!("{} ⊆ {} not kept by {}", nm(a), nm(b), nm(x)), &mut out);
                    }
                }
                for c in 0..n {
                    if sg.sub(b, c) && !sg.sub(a, c) {
                        fail(SigmaAxiom::Compatible, format!("{} ⊆ {} ⊆ {} not transitive", nm(a), nm(b), nm(c)), &mut out);
                    }
                }
            }
        }
    }
    if let Some(a) = (0..n).find(|&a| !sg.sub(z, a)) {
        fail(SigmaAxiom::I, format!("0 ⊄ {}", nm(a)), &mut out);
    }
    for a in 0..n {
        for b in 0..n {
            let bounded = (0..n).any(|c| sg.sub(a, c) && sg.sub(b, c));
            if bounded && sg.join(a, b).is_none() {
                fail(SigmaAxiom::II, format!("{} ∪ {} missing", nm(a), nm(b)), &mut out);
            }
            if let Some(j) = sg.join(a, b) {
                for x in 0..n {
                    if sg.join(sg.mul(x, a), sg.mul(x, b)) != Some(sg.mul(x, j)) {
                        fail(SigmaAxiom::III, format!("{}({} ∪ {})", nm(x), nm(a), nm(b)), &mut out);
                    }
                }
            }
            let orth = sg.mul(sg.star(a), b) == z && sg.mul(a, sg.star(b)) == z;
            if orth && sg.join(a, b).is_none() {
                fail(SigmaAxiom::V, format!("{} ∪ {} missing", nm(a), nm(b)), &mut out);
            }
        }
    }
    let idem = s.idempotents();
    for &e in &idem {
        for &f in &idem {
            if sg.sub(e, f) {
                let ok = idem.iter().any(|&c| sg.join(e, c) == Some(f) && sg.meet(e, c) == Some(z));
                if !ok {
                    fail(SigmaAxiom::IV, format!("{} ∖ {} missing", nm(f), nm(e)), &mut out);
                }
            }
        }
    }
    for t in 0..n {
        for a in 0..n {
            if s.leq(t, a) {
                let ok = (0..n).any(|p| s.leq(t, p) && sg.sub(p, a) && sg.same_annihilators(t, p, true, false));
                if !ok {
                    fail(SigmaAxiom::VI, format!("t = {}, a = {}", nm(t), nm(a)), &mut out);
                } else if let Err(e) = interpolator(sg, t, a) {
                    fail(SigmaAxiom::Interpolator, e.to_string(), &mut out);
                }
            }
        }
    }
    // consequences
    for a in 0..n {
        let below: Vec<Elem> = (0..n).filter(|&x| sg.sub(x, a)).collect();
        for &x in &below {
            for &y in &below {
                let f1 = sg.mul(x, sg.mul(sg.star(y), y));
                let f2 = sg.mul(sg.mul(y, sg.star(y)), x);
                if sg.meet(x, y) != Some(f1) || f1 != f2 {
                    fail(SigmaAxiom::MeetFormula, format!("x = {}, y = {} below {}", nm(x), nm(y), nm(a)), &mut out);
                }
            }
            let Some(c) = relative_complement(sg, x, a) else {
                fail(SigmaAxiom::ComplementFormula, format!("{} ∖ {} missing", nm(a), nm(x)), &mut out);
                continue;
            };
            let (aa, xx) = (sg.mul(sg.star(a), a), sg.mul(sg.star(x), x));
            if relative_complement(sg, xx, aa).map(|e| sg.mul(a, e)) != Some(c) {
                fail(SigmaAxiom::ComplementFormula, format!("{} ∖ {}", nm(a), nm(x)), &mut out);
            }
            for k in 0..n {
                if relative_complement(sg, sg.mul(k, x), sg.mul(k, a)) != Some(sg.mul(k, c)) {
                    fail(SigmaAxiom::ComplementProduct, format!("{}({} ∖ {})", nm(k), nm(a), nm(x)), &mut out);
                }
            }
            for &y in &below {
                let cy = relative_complement(sg, y, a).unwrap_or(z);
                let lhs_meet = sg.meet(c, cy);
                let rhs_meet = sg.join(x, y).and_then(|j| relative_complement(sg, j, a));
                let lhs_join = sg.join(c, cy);
                let rhs_join = sg.meet(x, y).and_then(|m| relative_complement(sg, m, a));
                if lhs_meet.is_none() || lhs_meet != rhs_meet || lhs_join.is_none() || lhs_join != rhs_join {
                    fail(SigmaAxiom::DeMorgan, format!("b = {}, a1 = {}, a2 = {}", nm(a), nm(x), nm(y)), &mut out);
                }
            }
        }
    }
    out.sort_by_key(|(a, _)| *a);
    out
}

pub fn validate_sigma(sg: &SigmaOrdered) -> Result<(), SigmaError> {
    match sigma_report(sg).into_iter().next() {
        None => Ok(()),
        Some((axiom, witness)) => Err(SigmaError::AxiomFailure { axiom, witness }),
    }
}

pub const DEFAULT_BISECTION_CAP: usize = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum KbError {
    #[error("more than {0} bisections")]
    CapExceeded(usize),
    #[error("{0}")]
    Inverse(#[from] InverseError),
    #[error("{0}")]
    Sigma(#[from] SigmaError),
}

/// All bisections with set product and inclusion.
#[derive(Clone, Debug)]
pub struct Kb {
    pub sigma: SigmaOrdered,
    pub sets: Vec<Vec<Elem>>,
}

impl Kb {
    pub fn index(&self, set: &[Elem]) -> Option<Elem> {
        self.sets.iter().position(|b| b == set)
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }
}

/// Subsets on which `s` and `r` are injective, by backtracking over source vertices.
pub fn bisections(s: &Inverse, cap: usize) -> Result<Vec<Vec<Elem>>, KbError> {
    let mut by_src: Vec<Vec<Elem>> = vec![Vec::new(); s.nv()];
    for a in s.elems() {
        by_src[s.s(a)].push(a);
    }
    fn rec(
        s: &Inverse,
        by_src: &[Vec<Elem>],
        v: usize,
        used: &mut Vec<bool>,
        cur: &mut Vec<Elem>,
        out: &mut Vec<Vec<Elem>>,
        cap: usize,
    ) -> Result<(), KbError> {
        if v == by_src.len() {
            if out.len() == cap {
                return Err(KbError::CapExceeded(cap));
            }
            let mut b = cur.clone();
            b.sort_unstable();
            out.push(b);
            return Ok(());
        }
        rec(s, by_src, v + 1, used, cur, out, cap)?;
        for &a in &by_src[v] {
            let r = s.r(a);
            if !used[r] {
                used[r] = true;
                cur.push(a);
                rec(s, by_src, v + 1, used, cur, out, cap)?;
                cur.pop();
                used[r] = false;
            }
        }
        Ok(())
    }
    let mut out = Vec::new();
    rec(s, &by_src, 0, &mut vec![false; s.nv()], &mut Vec::new(), &mut out, cap)?;
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

fn set_name(m: &Magma, set: &[Elem]) -> String {
    let parts: Vec<&str> = set.iter().map(|&a| m.name(a)).collect();
    format!("{{{}}}", parts.join(","))
}

pub fn kb(s: &Inverse, cap: usize) -> Result<Kb, KbError> {
    let sets = bisections(s, cap)?;
    let index: HashMap<&Vec<Elem>, Elem> = sets.iter().enumerate().map(|(i, b)| (b, i)).collect();
    let m = Magma::from_fn(sets.iter().map(|b| set_name(s.magma(), b)), |i, j| {
        let mut p: Vec<Elem> =
            sets[i].iter().flat_map(|&a| sets[j].iter().filter_map(move |&b| s.mul(a, b))).collect();
        p.sort_unstable();
        Some(index[&p])
    });
    let inv = detect_inverse(&Semigroupoid::trusted(m))?;
    let le = sets.iter().map(|a| sets.iter().map(|b| a.iter().all(|x| b.contains(x))).collect()).collect();
    Ok(Kb { sigma: SigmaOrdered::new(inv, le)?, sets })
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("not a homomorphism")]
    NotHomomorphism,
    #[error("vertex map is inconsistent at {0}")]
    VertexMap(Vertex),
    #[error("not star-injective at vertex {0}")]
    NotStarInjective(Vertex),
    #[error("not star-surjective at vertex {0}")]
    NotStarSurjective(Vertex),
}

/// Checks `φ` restricts to bijections `s⁻¹(x) → s⁻¹(φ(x))`; returns the vertex map.
pub fn check_covering(src: &Inverse, dst: &Inverse, phi: &[Elem]) -> Result<Vec<Vertex>, CoverError> {
    check_homomorphism(src.magma(), dst.magma(), phi).map_err(|_| CoverError::NotHomomorphism)?;
    let mut v = vec![None; src.nv()];
    for a in src.elems() {
        for (x, y) in [(src.s(a), dst.s(phi[a])), (src.r(a), dst.r(phi[a]))] {
            match v[x] {
                None => v[x] = Some(y),
                Some(w) if w != y => return Err(CoverError::VertexMap(x)),
                _ => {}
            }
        }
    }
    let v: Vec<Vertex> = v.into_iter().map(|x| x.expect("every vertex is a source")).collect();
    for x in 0..src.nv() {
        let mut img: Vec<Elem> = src.elems().filter(|&a| src.s(a) == x).map(|a| phi[a]).collect();
        let k = img.len();
        img.sort_unstable();
        img.dedup();
        if img.len() != k {
            return Err(CoverError::NotStarInjective(x));
        }
        if dst.elems().filter(|&b| dst.s(b) == v[x]).count() != k {
            return Err(CoverError::NotStarSurjective(x));
        }
    }
    Ok(v)
}

/// `K(φ): A ↦ φ⁻¹(A)` from `KB(T)` to `KB(S)` for a covering `φ: S → T`.
pub fn k_on_morphism(kb_s: &Kb, kb_t: &Kb, src: &Inverse, dst: &Inverse, phi: &[Elem]) -> Result<Vec<Elem>, CoverError> {
    check_covering(src, dst, phi)?;
    Ok(kb_t
        .sets
        .iter()
        .map(|a| {
            let pre: Vec<Elem> = src.elems().filter(|&x| a.contains(&phi[x])).collect();
            kb_s.index(&pre).expect("preimage of a bisection under a covering is a bisection")
        })
        .collect())
}

/// Which of the Σ-morphism conditions `θ: S → T` satisfies.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SigmaMorphismReport {
    pub homomorphism: bool,
    /// Conditions (i)–(vi), in order.
    pub axioms: [bool; 6],
}

impl SigmaMorphismReport {
    pub fn ok(&self) -> bool {
        self.homomorphism && self.axioms.iter().all(|&b| b)
    }

    /// Roman numerals of the failing conditions.
    pub fn failed(&self) -> Vec<&'static str> {
        const R: [&str; 6] = ["i", "ii", "iii", "iv", "v", "vi"];
        (0..6).filter(|&i| !self.axioms[i]).map(|i| R[i]).collect()
    }
}

pub fn validate_sigma_morphism(s: &SigmaOrdered, t: &SigmaOrdered, theta: &[Elem]) -> SigmaMorphismReport {
    let n = s.len();
    let homomorphism = (0..n).all(|a| (0..n).all(|b| theta[s.mul(a, b)] == t.mul(theta[a], theta[b])));
    let zero = theta[s.zero()] == t.zero();
    let monotone = (0..n).all(|a| (0..n).all(|b| !s.sub(a, b) || t.sub(theta[a], theta[b])));
    let cup = (0..n).all(|a| {
        (0..n).all(|b| match s.join(a, b) {
            Some(j) => t.join(theta[a], theta[b]) == Some(theta[j]),
            None => true,
        })
    });
    let weak_meet = (0..n).all(|a| {
        (0..n).all(|b| {
            (0..t.len()).all(|u| {
                !(t.sub(u, theta[a]) && t.sub(u, theta[b]))
                    || (0..n).any(|c| s.sub(c, a) && s.sub(c, b) && t.sub(u, theta[c]))
            })
        })
    });
    // proper: the join of everything below t that lies under some θ(s) is t itself
    let proper = (0..t.len()).all(|u| {
        let pieces: Vec<Elem> = (0..t.len()).filter(|&v| t.sub(v, u) && (0..n).any(|x| t.sub(v, theta[x]))).collect();
        let mut acc = Some(t.zero());
        for &p in &pieces {
            acc = acc.and_then(|a| t.join(a, p));
        }
        acc == Some(u)
    });
    let interp = (0..n).all(|a| {
        (0..n).all(|b| {
            if !s.inverse().leq(a, b) {
                return true;
            }
            match (interpolator(s, a, b), interpolator(t, theta[a], theta[b])) {
                (Ok(p), Ok(q)) => theta[p] == q,
                _ => false,
            }
        })
    });
    SigmaMorphismReport { homomorphism, axioms: [zero, monotone, cup, weak_meet, proper, interp] }
}

/// `P(S, ⊆)`: the dual Munn action on `Ω(E(S))`, its semidirect product, and the germ quotient.
#[derive(Clone, Debug)]
pub struct Germs {
    pub spectrum: Spectrum,
    /// `E(S)` positions inside `S`.
    pub idempotents: Vec<Elem>,
    pub action: Preaction,
    pub product: SemidirectProduct,
    pub germ: GraphedCongruence,
    pub inv: Inverse,
}

impl Germs {
    /// The class `[a, F]`, if `F ∈ X[a*a]`.
    pub fn class(&self, a: Elem, f: usize) -> Option<Elem> {
        self.product.index(a, f).map(|i| self.germ.class[i])
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DualityError {
    #[error("{0}")]
    Sigma(#[from] SigmaError),
    #[error("{0}")]
    Kb(#[from] KbError),
    #[error("{0}")]
    Cover(#[from] CoverError),
    #[error("{0}")]
    Construction(String),
}

fn construction<E: fmt::Display>(e: E) -> DualityError {
    DualityError::Construction(e.to_string())
}

pub fn p_functor(sg: &SigmaOrdered) -> Result<Germs, DualityError> {
    validate_sigma(sg)?;
    let s = sg.inverse();
    let (e, emb) = Semilattice::of_idempotents(s).map_err(DualityError::Construction)?;
    let sp = ultrafilters(&e);
    let mut pos = vec![None; s.len()];
    for (i, &x) in emb.iter().enumerate() {
        pos[x] = Some(i);
    }
    let names: Vec<String> = sp.generators.iter().map(|&g| format!("U[{}]", e.magma().name(g))).collect();
    let space = set_space(names.iter().cloned());
    let nf = sp.len();
    let mut theta = vec![vec![None; nf]; s.len()];
    for a in s.elems() {
        let dom = pos[s.dom(a)].unwrap();
        for (fi, f) in sp.filters.iter().enumerate() {
            if !f[dom] {
                continue;
            }
            // μ̂_a(F) = (a F a*)↑ over e ∈ F below a*a
            let conj: Vec<usize> = (0..e.len())
                .filter(|&k| f[k] && e.leq(k, dom))
                .map(|k| pos[s.mul3(a, emb[k], s.star(a)).unwrap()].unwrap())
                .collect();
            let img: Vec<bool> = (0..e.len()).map(|u| conj.iter().any(|&c| e.leq(c, u))).collect();
            let gi = sp.position(&img).ok_or_else(|| construction("dual Munn image is not an ultrafilter"))?;
            theta[a][fi] = Some(gi);
        }
    }
    let action = Preaction { actor: s.clone(), space, anchor: vec![0; nf], theta, kind: ActionKind::Global };
    let product = semidirect_product(&action, 1).map_err(construction)?;
    let np = product.len();
    let mut uf = UnionFind::<usize>::new(np);
    for i in 0..np {
        for j in 0..i {
            let ((a, f), (b, g)) = (product.pairs[i], product.pairs[j]);
            if f == g && s.elems().any(|u| sg.sub(u, a) && sg.sub(u, b) && sp.filters[f][pos[s.dom(u)].unwrap()]) {
                uf.union(i, j);
            }
        }
    }
    let germ = GraphedCongruence::from_labels(&(0..np).map(|i| uf.find(i)).collect::<Vec<_>>());
    check_graphed_congruence(&product.graphed, &germ).map_err(construction)?;
    let (qg, _) = quotient_graphed(&product.graphed, &germ);
    // name classes by least element and ultrafilter
    let classes = germ.classes();
    let qnames: Vec<String> = classes
        .iter()
        .map(|c| {
            let (a, f) = product.pairs[c[0]];
            format!("[{},{}]", s.name(a), names[f])
        })
        .collect();
    let renamed = qg.magma().renamed(qnames);
    let qg = crate::graph::Graphed::trusted(
        Semigroupoid::trusted(renamed),
        qg.vnames().to_vec(),
        qg.src_map().to_vec(),
        qg.rng_map().to_vec(),
    );
    let inv = Inverse::from_graphed(qg).map_err(construction)?;
    Ok(Germs { spectrum: sp, idempotents: emb, action, product, germ, inv })
}

/// `ψ(x) = {U ∈ E(KB(S)) : x ∈ s(U)}` as a membership vector over `E(KB(S))`.
fn psi(s: &Inverse, k: &Kb, emb: &[Elem], x: Vertex) -> Vec<bool> {
    emb.iter().map(|&u| k.sets[u].iter().any(|&a| s.s(a) == x)).collect()
}

#[derive(Clone, Debug)]
pub struct Roundtrip {
    pub map: Vec<Elem>,
    pub isomorphism: bool,
    pub order_isomorphism: bool,
}

/// `ζ(a) = [{a}, ψ(s(a))]` from `S` to `P(KB(S))`.
pub fn zeta(s: &Inverse, cap: usize) -> Result<(Kb, Germs, Roundtrip), DualityError> {
    let k = kb(s, cap)?;
    let g = p_functor(&k.sigma)?;
    let mut map = Vec::with_capacity(s.len());
    for a in s.elems() {
        let single = k.index(&[a]).unwrap();
        let f = psi(s, &k, &g.idempotents, s.s(a));
        let fi = g.spectrum.position(&f).ok_or_else(|| construction("ψ(x) is not an ultrafilter"))?;
        map.push(g.class(single, fi).ok_or_else(|| construction("({a}, ψ(s(a))) is not a pair"))?);
    }
    let isomorphism = crate::iso::is_isomorphism(s.magma(), g.inv.magma(), &map);
    Ok((k, g, Roundtrip { map, isomorphism, order_isomorphism: isomorphism }))
}

/// `κ(s) = [s, X[s*s]]` from `(S, ⊆)` to `KB(P(S, ⊆))`, compared for products and `⊆`.
pub fn kappa(sg: &SigmaOrdered, cap: usize) -> Result<(Germs, Kb, Roundtrip), DualityError> {
    let g = p_functor(sg)?;
    let k = kb(&g.inv, cap)?;
    let s = sg.inverse();
    let pos: HashMap<Elem, usize> = g.idempotents.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let mut map = Vec::with_capacity(s.len());
    for a in s.elems() {
        let d = pos[&s.dom(a)];
        let mut set: Vec<Elem> = g.spectrum.basic(d).into_iter().map(|f| g.class(a, f).unwrap()).collect();
        set.sort_unstable();
        let before = set.len();
        set.dedup();
        if set.len() != before {
            return Err(construction("κ(s) repeats a germ"));
        }
        map.push(k.index(&set).ok_or_else(|| construction("κ(s) is not a bisection"))?);
    }
    let isomorphism = crate::iso::is_isomorphism(s.magma(), k.sigma.inverse().magma(), &map);
    let order_isomorphism =
        s.elems().all(|a| s.elems().all(|b| sg.sub(a, b) == k.sigma.sub(map[a], map[b])));
    Ok((g, k, Roundtrip { map, isomorphism, order_isomorphism }))
}

/// `P(θ)` for a Σ-morphism `θ: S → T`, mapping `P(T)` to `P(S)`.
#[derive(Clone, Debug)]
pub struct PMorphism {
    pub vertices: Vec<usize>,
    pub arrows: Vec<Elem>,
    pub covering: bool,
    /// `(P(θ)⁰)⁻¹(X[e]) = X[θ(e)]` for every idempotent `e`.
    pub basic_sets: bool,
}

pub fn p_on_morphism(
    s: &SigmaOrdered,
    t: &SigmaOrdered,
    theta: &[Elem],
    ps: &Germs,
    pt: &Germs,
) -> Result<PMorphism, DualityError> {
    let si = s.inverse();
    let ti = t.inverse();
    let z = s.zero();
    let tpos: HashMap<Elem, usize> = pt.idempotents.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let spos: HashMap<Elem, usize> = ps.idempotents.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let mut vertices = Vec::new();
    for f in &pt.spectrum.filters {
        // θ|_E⁻¹(F)
        let pre: Vec<Elem> = ps.idempotents.iter().copied().filter(|&e| tpos.get(&theta[e]).is_some_and(|&i| f[i])).collect();
        let g: Vec<bool> = ps.idempotents.iter().map(|&e| pre.iter().all(|&p| s.mul(e, p) != z)).collect();
        let gi = ps.spectrum.position(&g).ok_or_else(|| construction("vertex image is not an ultrafilter"))?;
        vertices.push(gi);
    }
    let mut arrows = vec![None; pt.inv.len()];
    for (i, &(tt, f)) in pt.product.pairs.iter().enumerate() {
        let cls = pt.germ.class[i];
        let gv = vertices[f];
        for a in si.elems() {
            if pt.class(theta[a], f) == Some(cls) {
                let img = ps.class(a, gv).ok_or_else(|| construction(format!("({}, F) is not a pair", si.name(a))))?;
                match arrows[cls] {
                    None => arrows[cls] = Some(img),
                    Some(x) if x != img => {
                        return Err(construction(format!("P(θ) is not well defined at [{}]", ti.name(tt))))
                    }
                    _ => {}
                }
            }
        }
    }
    let arrows: Vec<Elem> = arrows
        .into_iter()
        .map(|x| x.ok_or_else(|| construction("a germ of T has no lift")))
        .collect::<Result<_, _>>()?;
    let covering = check_covering(&pt.inv, &ps.inv, &arrows).is_ok();
    let basic_sets = ps.idempotents.iter().all(|&e| {
        let lhs: Vec<usize> = (0..pt.spectrum.len()).filter(|&f| ps.spectrum.filters[vertices[f]][spos[&e]]).collect();
        let rhs = tpos.get(&theta[e]).map_or(Vec::new(), |&i| pt.spectrum.basic(i));
        lhs == rhs
    });
    Ok(PMorphism { vertices, arrows, covering, basic_sets })
}

/// `Lₙ` with `x ⊆ y ⇔ x = 0 or x = y`.
pub fn flat_chain(n: usize) -> SigmaOrdered {
    let s = detect_inverse(&Semigroupoid::trusted(crate::instances::chain(n))).expect("chain is inverse");
    let le = (0..n).map(|x| (0..n).map(|y| x == 0 || x == y).collect()).collect();
    SigmaOrdered::new(s, le).expect("chain has a zero")
}
