//! Backtracking isomorphism test for partial tables.

use thiserror::Error;

use crate::table::{Elem, Magma};

pub const DEFAULT_ISO_CAP: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{0} elements exceed the isomorphism cap {1}")]
pub struct IsoCapExceeded(pub usize, pub usize);

type Sig = (bool, bool, usize, usize, usize, usize);

fn signatures(m: &Magma) -> Vec<Sig> {
    let n = m.len();
    let mut hits = vec![0; n];
    for (_, _, c) in m.products() {
        hits[c] += 1;
    }
    m.elems()
        .map(|a| {
            let sq = m.mul(a, a);
            let left = m.elems().filter(|&b| m.defined(a, b)).count();
            let right = m.elems().filter(|&b| m.defined(b, a)).count();
            let fixes = m.elems().filter(|&b| m.mul(a, b) == Some(b)).count();
            (sq == Some(a), sq.is_some(), left, right, hits[a], fixes)
        })
        .collect()
}

struct Search<'a> {
    a: &'a Magma,
    b: &'a Magma,
    order: Vec<Elem>,
    cands: Vec<Vec<Elem>>,
    fwd: Vec<Option<Elem>>,
    bwd: Vec<Option<Elem>>,
}

impl Search<'_> {
    fn consistent(&self, x: Elem) -> bool {
        let y = self.fwd[x].unwrap();
        for z in self.a.elems() {
            let Some(w) = self.fwd[z] else { continue };
            for (p, q, pi, qi) in [(x, z, y, w), (z, x, w, y)] {
                match (self.a.mul(p, q), self.b.mul(pi, qi)) {
                    (None, None) => {}
                    (Some(c), Some(d)) => {
                        if let Some(fc) = self.fwd[c] {
                            if fc != d {
                                return false;
                            }
                        } else if self.bwd[d].is_some() {
                            return false;
                        }
                    }
                    _ => return false,
                }
            }
        }
        true
    }

    fn run(&mut self, k: usize) -> bool {
        if k == self.order.len() {
            return true;
        }
        let x = self.order[k];
        for i in 0..self.cands[x].len() {
            let y = self.cands[x][i];
            if self.bwd[y].is_some() {
                continue;
            }
            self.fwd[x] = Some(y);
            self.bwd[y] = Some(x);
            if self.consistent(x) && self.run(k + 1) {
                return true;
            }
            self.fwd[x] = None;
            self.bwd[y] = None;
        }
        false
    }
}

/// A bijection `φ` with `ab` defined iff `φ(a)φ(b)` defined and `φ(ab) = φ(a)φ(b)`.
pub fn find_isomorphism(a: &Magma, b: &Magma, cap: usize) -> Result<Option<Vec<Elem>>, IsoCapExceeded> {
    let n = a.len();
    if n > cap || b.len() > cap {
        return Err(IsoCapExceeded(n.max(b.len()), cap));
    }
    if n != b.len() || a.products().count() != b.products().count() {
        return Ok(None);
    }
    let (sa, sb) = (signatures(a), signatures(b));
    let mut ka = sa.clone();
    let mut kb = sb.clone();
    ka.sort();
    kb.sort();
    if ka != kb {
        return Ok(None);
    }
    let cands: Vec<Vec<Elem>> = a.elems().map(|x| b.elems().filter(|&y| sa[x] == sb[y]).collect()).collect();
    let mut order: Vec<Elem> = a.elems().collect();
    order.sort_by_key(|&x| (cands[x].len(), x));
    let mut s = Search { a, b, order, cands, fwd: vec![None; n], bwd: vec![None; n] };
    if s.run(0) {
        Ok(Some(s.fwd.into_iter().map(Option::unwrap).collect()))
    } else {
        Ok(None)
    }
}

pub fn is_isomorphic(a: &Magma, b: &Magma) -> bool {
    matches!(find_isomorphism(a, b, usize::MAX), Ok(Some(_)))
}

/// `map` is a bijection preserving and reflecting definedness and products.
pub fn is_isomorphism(a: &Magma, b: &Magma, map: &[Elem]) -> bool {
    if a.len() != b.len() || map.len() != a.len() {
        return false;
    }
    let mut seen = vec![false; b.len()];
    for &y in map {
        if y >= b.len() || seen[y] {
            return false;
        }
        seen[y] = true;
    }
    a.elems().all(|x| a.elems().all(|z| a.mul(x, z).map(|c| map[c]) == b.mul(map[x], map[z])))
}
