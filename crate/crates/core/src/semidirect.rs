//! Multipliers and semidirect products of preactions.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::action::Preaction;
use crate::graph::{GraphError, Graphed, Vertex};
use crate::inverse::{classify, detect_inverse, is_pseudoinverse, Inverse, Kind};
use crate::table::{exel_violations, left_set, right_set, Elem, Magma, Semigroupoid, Violation};

/// A pair of partial self-maps; `None` means outside the domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multiplier {
    pub l: Vec<Option<Elem>>,
    pub r: Vec<Option<Elem>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MultiplierViolation {
    #[error("dom L is not a right ideal: {0}{1}")]
    LeftDomain(Elem, Elem),
    #[error("dom R is not a left ideal: {0}{1}")]
    RightDomain(Elem, Elem),
    #[error("L(ab) != L(a)b at a={0}, b={1}")]
    LeftLaw(Elem, Elem),
    #[error("R(ab) != aR(b) at a={0}, b={1}")]
    RightLaw(Elem, Elem),
    #[error("R(a)b != aL(b) at a={0}, b={1}")]
    Mixed(Elem, Elem),
    #[error("maps leave the carrier")]
    Shape,
}

fn ap(f: &[Option<Elem>], x: Option<Elem>) -> Option<Elem> {
    x.and_then(|x| f[x])
}

/// All four laws, each as "one side defined iff the other is, and then equal".
pub fn validate_multiplier(m: &Magma, mult: &Multiplier, limit: usize) -> Vec<MultiplierViolation> {
    let n = m.len();
    if mult.l.len() != n || mult.r.len() != n || mult.l.iter().chain(&mult.r).flatten().any(|&x| x >= n) {
        return vec![MultiplierViolation::Shape];
    }
    let mul = |a: Option<Elem>, b: Option<Elem>| a.zip(b).and_then(|(a, b)| m.mul(a, b));
    let mut out = Vec::new();
    for a in m.elems() {
        for b in m.elems() {
            let ab = m.mul(a, b);
            if mult.l[a].is_some() && ab.is_some() && ap(&mult.l, ab).is_none() {
                out.push(MultiplierViolation::LeftDomain(a, b));
            }
            if mult.r[b].is_some() && ab.is_some() && ap(&mult.r, ab).is_none() {
                out.push(MultiplierViolation::RightDomain(a, b));
            }
            if ap(&mult.l, ab) != mul(mult.l[a], Some(b)) {
                out.push(MultiplierViolation::LeftLaw(a, b));
            }
            if ap(&mult.r, ab) != mul(Some(a), mult.r[b]) {
                out.push(MultiplierViolation::RightLaw(a, b));
            }
            if mul(mult.r[a], Some(b)) != mul(Some(a), mult.l[b]) {
                out.push(MultiplierViolation::Mixed(a, b));
            }
            if out.len() >= limit {
                out.truncate(limit);
                return out;
            }
        }
    }
    out
}

/// `(L_x, R_x)` with `L_x(a) = xa`, `R_x(a) = ax`, on `ideal` (carrier positions) when given.
///
/// With an ideal the result lives on the restricted table, indexed by position in `ideal`.
pub fn translation_multiplier(m: &Magma, x: Elem, ideal: Option<&[Elem]>) -> Multiplier {
    let all: Vec<Elem> = m.elems().collect();
    let carrier = ideal.unwrap_or(&all);
    let mut pos = vec![None; m.len()];
    for (i, &a) in carrier.iter().enumerate() {
        pos[a] = Some(i);
    }
    let l = carrier.iter().map(|&a| m.mul(x, a).and_then(|c| pos[c])).collect();
    let r = carrier.iter().map(|&a| m.mul(a, x).and_then(|c| pos[c])).collect();
    Multiplier { l, r }
}

/// Distinct elements give distinct translation pairs.
pub fn is_nondegenerate(m: &Magma) -> bool {
    let mut seen: Vec<Multiplier> = Vec::new();
    for a in m.elems() {
        let t = translation_multiplier(m, a, None);
        if seen.contains(&t) {
            return false;
        }
        seen.push(t);
    }
    true
}

/// Which sufficient condition for (L,R)-associativity holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LrEvidence {
    Idempotent,
    NondegNoEmptyRight,
    NondegNoEmptyLeft,
    DirectOnly,
}

pub fn lr_associativity_evidence(m: &Magma) -> LrEvidence {
    let mut hit = vec![false; m.len()];
    for (_, _, c) in m.products() {
        hit[c] = true;
    }
    if hit.iter().all(|&h| h) {
        return LrEvidence::Idempotent;
    }
    if is_nondegenerate(m) {
        if m.elems().all(|a| !right_set(m, a).is_empty()) {
            return LrEvidence::NondegNoEmptyRight;
        }
        if m.elems().all(|a| !left_set(m, a).is_empty()) {
            return LrEvidence::NondegNoEmptyLeft;
        }
    }
    LrEvidence::DirectOnly
}

/// `S ⋉ Λ` with elements `(a, x)` ordered by actor then space index.
#[derive(Clone, Debug)]
pub struct SemidirectProduct {
    pub pairs: Vec<(Elem, Elem)>,
    pub graphed: Graphed,
}

impl SemidirectProduct {
    pub fn index(&self, a: Elem, x: Elem) -> Option<Elem> {
        self.pairs.binary_search(&(a, x)).ok()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn magma(&self) -> &Magma {
        self.graphed.magma()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SemidirectError {
    #[error("product is not associative: {}", .witness_text)]
    NotAssociative { witness: Violation, witness_text: String, all: Vec<Violation>, table: Magma },
    #[error("theta_(b*)(x theta_b(y)) = {value} falls outside dom theta_(ab) for ({a},{x})({b},{y})")]
    IllDefined { a: String, x: String, b: String, y: String, value: String },
    #[error("graphing: {0}")]
    Graph(#[from] GraphError),
}

/// `(a,x)(b,y) = (ab, θ_{b*}(x·θ_b(y)))` whenever `ab` and `x·θ_b(y)` are defined.
pub fn semidirect_product(p: &Preaction, max_violations: usize) -> Result<SemidirectProduct, SemidirectError> {
    let s = &p.actor;
    let sp = p.space.magma();
    let mut pairs = Vec::new();
    for a in s.elems() {
        for x in sp.elems() {
            if p.act(a, x).is_some() {
                pairs.push((a, x));
            }
        }
    }
    let index: BTreeMap<(Elem, Elem), Elem> = pairs.iter().enumerate().map(|(i, &k)| (k, i)).collect();
    let name = |&(a, x): &(Elem, Elem)| format!("({},{})", s.name(a), sp.name(x));
    let mut m = Magma::new(pairs.iter().map(name));
    for (i, &(a, x)) in pairs.iter().enumerate() {
        for (j, &(b, y)) in pairs.iter().enumerate() {
            let Some(ab) = s.mul(a, b) else { continue };
            let by = p.act(b, y).expect("pair");
            let Some(z) = sp.mul(x, by) else { continue };
            let w = p.act(s.star(b), z);
            match w.and_then(|w| index.get(&(ab, w))) {
                Some(&k) => m.set(i, j, k),
                None => {
                    return Err(SemidirectError::IllDefined {
                        a: s.name(a).into(),
                        x: sp.name(x).into(),
                        b: s.name(b).into(),
                        y: sp.name(y).into(),
                        value: w.map_or("undefined".into(), |w| sp.name(w).to_string()),
                    })
                }
            }
        }
    }
    let (violations, _) = exel_violations(&m, max_violations);
    if let Some(first) = violations.first() {
        return Err(SemidirectError::NotAssociative {
            witness: first.clone(),
            witness_text: first.describe(&m),
            all: violations,
            table: m,
        });
    }
    // vertices: those of Λ realized as s(x) or r(θ_a(x))
    let g = &p.space;
    let mut used: BTreeMap<Vertex, Vertex> = BTreeMap::new();
    for &(a, x) in &pairs {
        used.insert(g.s(x), 0);
        used.insert(g.r(p.act(a, x).unwrap()), 0);
    }
    let vnames: Vec<String> = used.keys().map(|&v| g.vname(v).to_string()).collect();
    for (i, v) in used.values_mut().enumerate() {
        *v = i;
    }
    let src = pairs.iter().map(|&(_, x)| used[&g.s(x)]).collect();
    let rng = pairs.iter().map(|&(a, x)| used[&g.r(p.act(a, x).unwrap())]).collect();
    let graphed = Graphed::new(Semigroupoid::trusted(m), vnames, src, rng)?;
    Ok(SemidirectProduct { pairs, graphed })
}

fn is_regular(m: &Magma) -> bool {
    m.elems().all(|a| m.elems().any(|b| is_pseudoinverse(m, a, b)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InverseIffReport {
    pub product_regular: bool,
    pub space_regular: bool,
    pub product_inverse: bool,
    pub space_inverse: bool,
    /// An inverse of `(a,x)` that is not `(a*, θ_a(y))` for an inverse `y` of `x`.
    pub bad_form: Option<(Elem, Elem)>,
}

impl InverseIffReport {
    pub fn consistent(&self) -> bool {
        self.product_regular == self.space_regular && self.product_inverse == self.space_inverse && self.bad_form.is_none()
    }
}

pub fn inverse_iff_check(p: &Preaction, sp: &SemidirectProduct) -> InverseIffReport {
    let m = sp.magma();
    let lam = p.space.magma();
    let product_inverse = detect_inverse(sp.graphed.sg()).is_ok();
    let space_inverse = detect_inverse(p.space.sg()).is_ok();
    let mut bad_form = None;
    'outer: for i in m.elems() {
        for j in m.elems() {
            if is_pseudoinverse(m, i, j) && is_pseudoinverse(m, j, i) {
                let (a, x) = sp.pairs[i];
                let (b, z) = sp.pairs[j];
                let ok = b == p.actor.star(a)
                    && lam.elems().any(|y| {
                        is_pseudoinverse(lam, x, y) && is_pseudoinverse(lam, y, x) && p.act(a, y) == Some(z)
                    });
                if !ok {
                    bad_form = Some((i, j));
                    break 'outer;
                }
            }
        }
    }
    InverseIffReport {
        product_regular: is_regular(m),
        space_regular: is_regular(lam),
        product_inverse,
        space_inverse,
        bad_form,
    }
}

/// `U(S)`: same carrier, product kept only when `a*a = bb*`.
pub fn underlying_groupoid(s: &Inverse) -> Inverse {
    let m = s.magma();
    let u = Magma::from_fn(m.names().iter().cloned(), |a, b| {
        if s.dom(a) == s.ran(b) {
            s.mul(a, b)
        } else {
            None
        }
    });
    let u = crate::table::validate_exel(u, 1).expect("restricted product is associative");
    let g = detect_inverse(&u).expect("restricted product is inverse");
    debug_assert!(matches!(classify(&g), Kind::Groupoid | Kind::Group));
    g
}

/// A homomorphism from a groupoid into `S` composes only pairs that `U(S)` composes.
pub fn lands_in_underlying(g: &Inverse, s: &Inverse, map: &[Elem]) -> bool {
    g.magma().products().all(|(a, b, _)| s.dom(map[a]) == s.ran(map[b]))
}

/// `η: a ↦ (a, s(a))` into the semidirect product of the canonical vertex action.
pub fn eta(s: &Inverse) -> Result<(SemidirectProduct, Vec<Elem>), SemidirectError> {
    let p = crate::action::canonical_vertex_action(s);
    let sp = semidirect_product(&p, 1)?;
    let map = s.elems().map(|a| sp.index(a, s.s(a)).expect("pair (a, s(a))")).collect();
    Ok((sp, map))
}
