//! Brute-force oracles shared by integration tests.
#![allow(dead_code)]

use semigroupoid::duality::Semilattice;
use semigroupoid::inverse::Inverse;
use semigroupoid::table::Elem;

/// Proper filters found by scanning every subset, keeping the maximal ones.
pub fn ultrafilters_by_enumeration(e: &Semilattice) -> Vec<Vec<bool>> {
    let n = e.len();
    assert!(n <= 16);
    let mut filters: Vec<Vec<bool>> = Vec::new();
    for mask in 1u32..(1 << n) {
        let f: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 1).collect();
        if f[e.zero()] {
            continue;
        }
        let closed = (0..n).all(|a| {
            !f[a] || (0..n).all(|b| (!f[b] || f[e.meet(a, b)]) && (!e.leq(a, b) || f[b]))
        });
        if closed {
            filters.push(f);
        }
    }
    let sub = |a: &[bool], b: &[bool]| a.iter().zip(b).all(|(x, y)| !x || *y);
    let mut out: Vec<Vec<bool>> =
        filters.iter().filter(|f| !filters.iter().any(|g| g != *f && sub(f, g))).cloned().collect();
    out.sort();
    out
}

/// Bisections found by scanning every subset.
pub fn bisections_by_enumeration(s: &Inverse) -> usize {
    let n = s.len();
    assert!(n <= 20);
    (0u32..(1 << n))
        .filter(|mask| {
            let set: Vec<Elem> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            set.iter().all(|&a| set.iter().all(|&b| a == b || (s.s(a) != s.s(b) && s.r(a) != s.r(b))))
        })
        .count()
}
