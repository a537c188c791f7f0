//! Graphed congruences, quotients, compatible preorders and germs.

use std::collections::BTreeMap;

use petgraph::unionfind::UnionFind;
use thiserror::Error;

use crate::action::{validate_preaction, ActionKind, Preaction};
use crate::graph::Graphed;
use crate::inverse::{classify, Inverse, InverseError, Kind};
use crate::semidirect::{semidirect_product, SemidirectError, SemidirectProduct};
use crate::table::{Elem, Magma, Semigroupoid};

/// A partition of the carrier; `class[a]` numbers classes by least member.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GraphedCongruence {
    pub class: Vec<usize>,
}

impl GraphedCongruence {
    pub fn identity(n: usize) -> Self {
        GraphedCongruence { class: (0..n).collect() }
    }

    /// Relabels any labelling so classes are numbered by least member.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut map = BTreeMap::new();
        let class = labels
            .iter()
            .map(|l| {
                let k = map.len();
                *map.entry(*l).or_insert(k)
            })
            .collect();
        GraphedCongruence { class }
    }

    pub fn related(&self, a: Elem, b: Elem) -> bool {
        self.class[a] == self.class[b]
    }

    pub fn count(&self) -> usize {
        self.class.iter().max().map_or(0, |k| k + 1)
    }

    pub fn classes(&self) -> Vec<Vec<Elem>> {
        let mut out = vec![Vec::new(); self.count()];
        for (a, &k) in self.class.iter().enumerate() {
            out[k].push(a);
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.count() == self.class.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum QuotientError {
    #[error("elements {0} and {1} have different endpoints")]
    NotGraphable(Elem, Elem),
    #[error("relation is not compatible with products at {0}{1}")]
    NotCongruence(Elem, Elem),
    #[error("R1 is not idempotent pure: {0} is related to an idempotent")]
    H1Violated(Elem),
    #[error("theta is not an R2-morphism: theta_{a}({x}) and theta_{a}({y}) are unrelated")]
    H2Violated { a: String, x: String, y: String },
    #[error("quotient action is inconsistent at {0}")]
    Inconsistent(String),
    #[error("semidirect product: {0}")]
    Semidirect(#[from] SemidirectError),
    #[error("{0}")]
    Inverse(#[from] InverseError),
}

fn labels(uf: &UnionFind<usize>, n: usize) -> GraphedCongruence {
    GraphedCongruence::from_labels(&(0..n).map(|a| uf.find(a)).collect::<Vec<_>>())
}

/// Least graphed congruence containing `pairs`.
pub fn congruence_closure(g: &Graphed, pairs: &[(Elem, Elem)]) -> Result<GraphedCongruence, QuotientError> {
    let n = g.len();
    for &(a, b) in pairs {
        if g.s(a) != g.s(b) || g.r(a) != g.r(b) {
            return Err(QuotientError::NotGraphable(a, b));
        }
    }
    let mut uf = UnionFind::<usize>::new(n);
    for &(a, b) in pairs {
        uf.union(a, b);
    }
    let m = g.magma();
    let prods: Vec<(Elem, Elem, Elem)> = m.products().collect();
    loop {
        let mut changed = false;
        for &(a, b, c) in &prods {
            for a2 in 0..n {
                if !uf.equiv(a, a2) {
                    continue;
                }
                for b2 in 0..n {
                    if uf.equiv(b, b2) {
                        if let Some(c2) = m.mul(a2, b2) {
                            changed |= uf.union(c, c2);
                        }
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    Ok(labels(&uf, n))
}

/// Endpoints constant on classes and products respected.
pub fn check_graphed_congruence(g: &Graphed, r: &GraphedCongruence) -> Result<(), QuotientError> {
    let n = g.len();
    for a in 0..n {
        for b in 0..n {
            if r.related(a, b) && (g.s(a) != g.s(b) || g.r(a) != g.r(b)) {
                return Err(QuotientError::NotGraphable(a, b));
            }
        }
    }
    let m = g.magma();
    for (a, b, c) in m.products() {
        for a2 in (0..n).filter(|&x| r.related(a, x)) {
            for b2 in (0..n).filter(|&x| r.related(b, x)) {
                match m.mul(a2, b2) {
                    Some(c2) if r.related(c, c2) => {}
                    _ => return Err(QuotientError::NotCongruence(a2, b2)),
                }
            }
        }
    }
    Ok(())
}

/// `Λ/R` on the same vertices, with the quotient map.
pub fn quotient_graphed(g: &Graphed, r: &GraphedCongruence) -> (Graphed, Vec<Elem>) {
    let m = g.magma();
    let classes = r.classes();
    let names = classes.iter().map(|c| format!("[{}]", m.name(c[0])));
    let q = Magma::from_fn(names, |i, j| m.mul(classes[i][0], classes[j][0]).map(|c| r.class[c]));
    let src = classes.iter().map(|c| g.s(c[0])).collect();
    let rng = classes.iter().map(|c| g.r(c[0])).collect();
    let qg = Graphed::new(Semigroupoid::trusted(q), g.vnames().to_vec(), src, rng).expect("graphed congruence");
    (qg, r.class.clone())
}

/// `S/R` as an inverse semigroupoid, with the quotient homomorphism.
pub fn quotient(s: &Inverse, r: &GraphedCongruence) -> Result<(Inverse, Vec<Elem>), QuotientError> {
    check_graphed_congruence(s.graphed(), r)?;
    let (g, map) = quotient_graphed(s.graphed(), r);
    Ok((Inverse::from_graphed(g)?, map))
}

/// The map `S/R → T` induced by `phi` when `phi` is constant on classes.
pub fn factor_through(r: &GraphedCongruence, phi: &[Elem]) -> Option<Vec<Elem>> {
    let mut out = vec![None; r.count()];
    for (a, &k) in r.class.iter().enumerate() {
        match out[k] {
            None => out[k] = Some(phi[a]),
            Some(x) if x != phi[a] => return None,
            _ => {}
        }
    }
    Some(out.into_iter().map(Option::unwrap).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PurityReport {
    /// Classes of idempotents contain only idempotents.
    pub saturation: bool,
    /// The quotient map pulls idempotents back to idempotents.
    pub preimage: bool,
    /// Related `a, b` give idempotent `a*b` and `ab*`.
    pub products: bool,
}

impl PurityReport {
    pub fn agree(&self) -> bool {
        self.saturation == self.preimage && self.preimage == self.products
    }

    pub fn pure(&self) -> bool {
        self.saturation
    }
}

pub fn is_idempotent_pure(s: &Inverse, r: &GraphedCongruence) -> Result<PurityReport, QuotientError> {
    let saturation = s.elems().all(|a| s.is_idem(a) || !s.idempotents().iter().any(|&e| r.related(a, e)));
    let (q, map) = quotient(s, r)?;
    let preimage = s.elems().all(|a| q.is_idem(map[a]) == s.is_idem(a));
    let products = s.elems().all(|a| {
        s.elems().filter(|&b| r.related(a, b)).all(|b| {
            let l = s.mul(s.star(a), b).is_some_and(|x| s.is_idem(x));
            let rr = s.mul(a, s.star(b)).is_some_and(|x| s.is_idem(x));
            l && rr
        })
    });
    Ok(PurityReport { saturation, preimage, products })
}

/// A relation as a boolean matrix: `le[a][b]` means `a ⪯ b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompatiblePreorder {
    pub le: Vec<Vec<bool>>,
}

impl CompatiblePreorder {
    pub fn canonical(s: &Inverse) -> Self {
        CompatiblePreorder { le: s.elems().map(|a| s.elems().map(|b| s.leq(a, b)).collect()).collect() }
    }

    pub fn from_pairs(n: usize, pairs: &[(Elem, Elem)]) -> Self {
        let mut le = vec![vec![false; n]; n];
        for &(a, b) in pairs {
            le[a][b] = true;
        }
        CompatiblePreorder { le }
    }
}

pub const PRE_REFLEXIVE: &str = "reflexive";
pub const PRE_TRANSITIVE: &str = "transitive";
pub const PRE_BELOW: &str = "a <~ b implies a <= b";
pub const PRE_PRODUCTS: &str = "a <~ b implies ax <~ bx and ya <~ yb";
pub const PRE_DIRECTED: &str = "conditionally downward directed";

pub fn validate_preorder(s: &Inverse, p: &CompatiblePreorder) -> Vec<(&'static str, String)> {
    let n = s.len();
    let le = &p.le;
    let nm = |a: Elem| s.name(a);
    let mut out = Vec::new();
    if le.len() != n || le.iter().any(|r| r.len() != n) {
        out.push(("shape", "relation has wrong size".to_string()));
        return out;
    }
    if let Some(a) = s.elems().find(|&a| !le[a][a]) {
        out.push((PRE_REFLEXIVE, format!("a = {}", nm(a))));
    }
    'tr: for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if le[a][b] && le[b][c] && !le[a][c] {
                    out.push((PRE_TRANSITIVE, format!("{} <~ {} <~ {}", nm(a), nm(b), nm(c))));
                    break 'tr;
                }
            }
        }
    }
    'bl: for a in 0..n {
        for b in 0..n {
            if le[a][b] && !s.leq(a, b) {
                out.push((PRE_BELOW, format!("{} <~ {}", nm(a), nm(b))));
                break 'bl;
            }
        }
    }
    'pr: for a in 0..n {
        for b in (0..n).filter(|&b| le[a][b]) {
            for x in 0..n {
                let right = s.mul(a, x).map(|ax| s.mul(b, x).is_some_and(|bx| le[ax][bx]));
                let left = s.mul(x, a).map(|xa| s.mul(x, b).is_some_and(|xb| le[xa][xb]));
                if right == Some(false) || left == Some(false) {
                    out.push((PRE_PRODUCTS, format!("a = {}, b = {}, x = {}", nm(a), nm(b), nm(x))));
                    break 'pr;
                }
            }
        }
    }
    'dd: for x in 0..n {
        for y in 0..n {
            let bounded = (0..n).any(|p| le[x][p] && le[y][p]);
            if bounded && !(0..n).any(|z| le[z][x] && le[z][y]) {
                out.push((PRE_DIRECTED, format!("{}, {}", nm(x), nm(y))));
                break 'dd;
            }
        }
    }
    out
}

/// `a ∼ b` iff some `z ⪯ a, b`, closed by union–find over comparable pairs.
pub fn germ_congruence(s: &Inverse, p: &CompatiblePreorder) -> Result<GraphedCongruence, QuotientError> {
    let n = s.len();
    let mut uf = UnionFind::<usize>::new(n);
    for z in 0..n {
        for a in 0..n {
            if p.le[z][a] {
                uf.union(z, a);
            }
        }
    }
    let r = labels(&uf, n);
    check_graphed_congruence(s.graphed(), &r)?;
    Ok(r)
}

/// `IG(S) = S/∼_≤` with the quotient map.
pub fn initial_groupoid(s: &Inverse) -> Result<(Inverse, Vec<Elem>), QuotientError> {
    let r = germ_congruence(s, &CompatiblePreorder::canonical(s))?;
    let (q, map) = quotient(s, &r)?;
    debug_assert!(matches!(classify(&q), Kind::Groupoid | Kind::Group));
    Ok((q, map))
}

/// `Θ_α([x]) = [θ_a(x)]` for `a ∈ α`, `x ∈ dom θ_a`; kind stays `Meet`.
pub fn quotient_action(
    p: &Preaction,
    r1: &GraphedCongruence,
    r2: &GraphedCongruence,
) -> Result<(Preaction, Inverse, Graphed), QuotientError> {
    let s = &p.actor;
    let purity = is_idempotent_pure(s, r1)?;
    if !purity.pure() {
        let a = s.elems().find(|&a| !s.is_idem(a) && s.idempotents().iter().any(|&e| r1.related(a, e))).unwrap();
        return Err(QuotientError::H1Violated(a));
    }
    check_graphed_congruence(&p.space, r2)?;
    let sp = p.space.magma();
    for a in s.elems() {
        let dom = p.domain(a);
        for &x in &dom {
            for &y in &dom {
                if r2.related(x, y) && !r2.related(p.act(a, x).unwrap(), p.act(a, y).unwrap()) {
                    return Err(QuotientError::H2Violated {
                        a: s.name(a).into(),
                        x: sp.name(x).into(),
                        y: sp.name(y).into(),
                    });
                }
            }
        }
    }
    let (qs, map1) = quotient(s, r1)?;
    let (qt, map2) = quotient_graphed(&p.space, r2);
    let mut theta = vec![vec![None; qt.len()]; qs.len()];
    for a in s.elems() {
        for x in p.domain(a) {
            let y = map2[p.act(a, x).unwrap()];
            let slot = &mut theta[map1[a]][map2[x]];
            match slot {
                None => *slot = Some(y),
                Some(z) if *z != y => return Err(QuotientError::Inconsistent(format!("{}, {}", s.name(a), sp.name(x)))),
                _ => {}
            }
        }
    }
    let mut anchor = vec![0; qt.len()];
    for x in 0..p.space.len() {
        anchor[map2[x]] = p.anchor[x];
    }
    let q = Preaction { actor: qs.clone(), space: qt.clone(), anchor, theta, kind: ActionKind::Meet };
    Ok((q, qs, qt))
}

#[derive(Clone, Debug)]
pub struct PhiReport {
    /// `(S⋉T)/(R1×R2)`.
    pub left: Magma,
    /// `(S/R1)⋉(T/R2)`.
    pub right: SemidirectProduct,
    pub map: Vec<Elem>,
    pub quotient_action_valid: bool,
    pub product_congruence: bool,
    pub isomorphism: bool,
}

/// `Φ([a,x]) = ([a],[x])` from the quotient of the semidirect product to the product of quotients.
pub fn phi_isomorphism(p: &Preaction, r1: &GraphedCongruence, r2: &GraphedCongruence) -> Result<PhiReport, QuotientError> {
    let (q, _, _) = quotient_action(p, r1, r2)?;
    let quotient_action_valid = validate_preaction(&q, 1).ok();
    let big = semidirect_product(p, 1)?;
    let right = semidirect_product(&q, 1)?;
    let labels: Vec<usize> =
        big.pairs.iter().map(|&(a, x)| r1.class[a] * r2.count() + r2.class[x]).collect();
    let rel = GraphedCongruence::from_labels(&labels);
    let product_congruence = check_graphed_congruence(&big.graphed, &rel).is_ok();
    let (left, _) = quotient_graphed(&big.graphed, &rel);
    let mut map = vec![usize::MAX; rel.count()];
    for (i, &(a, x)) in big.pairs.iter().enumerate() {
        map[rel.class[i]] = right.index(r1.class[a], r2.class[x]).unwrap_or(usize::MAX);
    }
    let isomorphism = !map.contains(&usize::MAX) && crate::iso::is_isomorphism(left.magma(), right.magma(), &map);
    Ok(PhiReport { left: left.magma().clone(), right, map, quotient_action_valid, product_congruence, isomorphism })
}

/// Every graphed congruence, by brute force over partitions within endpoint blocks.
pub fn all_graphed_congruences(g: &Graphed) -> Vec<GraphedCongruence> {
    let n = g.len();
    let mut blocks: BTreeMap<(usize, usize), Vec<Elem>> = BTreeMap::new();
    for a in 0..n {
        blocks.entry((g.s(a), g.r(a))).or_default().push(a);
    }
    let mut out = vec![vec![0usize; n]];
    let mut next_label = 0;
    for block in blocks.values() {
        let parts = crate::graph::set_partitions(block.len());
        let mut grown = Vec::new();
        for lab in &out {
            for p in &parts {
                let mut l = lab.clone();
                for (i, &a) in block.iter().enumerate() {
                    l[a] = next_label + p[i];
                }
                grown.push(l);
            }
        }
        next_label += block.len();
        out = grown;
    }
    let mut res: Vec<GraphedCongruence> = out
        .iter()
        .map(|l| GraphedCongruence::from_labels(l))
        .filter(|r| check_graphed_congruence(g, r).is_ok())
        .collect();
    res.sort();
    res.dedup();
    res
}
