//! Standard small instances.

use std::collections::BTreeMap;

use crate::table::{Elem, Magma};

/// The chain `0 < 1 < … < n-1` under meet.
pub fn chain(n: usize) -> Magma {
    Magma::from_fn((0..n).map(|i| i.to_string()), |a, b| Some(a.min(b)))
}

/// Semilattice given by an order relation in which all meets exist.
pub fn semilattice_from_order(names: &[String], leq: impl Fn(usize, usize) -> bool) -> Option<Magma> {
    let n = names.len();
    let mut meet = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            let lower: Vec<usize> = (0..n).filter(|&c| leq(c, a) && leq(c, b)).collect();
            let top = lower.iter().copied().find(|&c| lower.iter().all(|&d| leq(d, c)))?;
            meet[a * n + b] = top;
        }
    }
    Some(Magma::from_fn(names.iter().cloned(), |a, b| Some(meet[a * n + b])))
}

/// Every semilattice with `n` elements, up to isomorphism.
pub fn semilattices(n: usize) -> Vec<Magma> {
    let names: Vec<String> = (0..n).map(|i| format!("s{i}")).collect();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b))).collect();
    let mut out: Vec<Magma> = Vec::new();
    for mask in 0u64..(1u64 << pairs.len()) {
        let mut rel = vec![false; n * n];
        for a in 0..n {
            rel[a * n + a] = true;
        }
        for (k, &(a, b)) in pairs.iter().enumerate() {
            if mask >> k & 1 == 1 {
                rel[a * n + b] = true;
            }
        }
        let le = |a: usize, b: usize| rel[a * n + b];
        let partial_order = (0..n).all(|a| {
            (0..n).all(|b| (a == b || !(le(a, b) && le(b, a))) && (0..n).all(|c| !(le(a, b) && le(b, c)) || le(a, c)))
        });
        if !partial_order {
            continue;
        }
        if let Some(m) = semilattice_from_order(&names, le) {
            if !out.iter().any(|o| crate::iso::is_isomorphic(o, &m)) {
                out.push(m);
            }
        }
    }
    out
}

/// Cyclic group `1, g, g2, …`.
pub fn cyclic_group(n: usize) -> Magma {
    let name = |i: usize| match i {
        0 => "1".to_string(),
        1 => "g".to_string(),
        _ => format!("g{i}"),
    };
    Magma::from_fn((0..n).map(name), |a, b| Some((a + b) % n))
}

/// Klein four-group.
pub fn klein_group() -> Magma {
    Magma::from_fn(["1", "a", "b", "c"], |x, y| Some(x ^ y))
}

/// All groups of order at most 4.
pub fn small_groups() -> Vec<(String, Magma)> {
    vec![
        ("Z1".into(), cyclic_group(1)),
        ("Z2".into(), cyclic_group(2)),
        ("Z3".into(), cyclic_group(3)),
        ("Z4".into(), cyclic_group(4)),
        ("V4".into(), klein_group()),
    ]
}

/// Name of a partial map on `{1..k}` listing images, `_` for undefined.
fn pmap_name(f: &[Option<usize>]) -> String {
    let body: String = f.iter().map(|x| x.map_or('_', |i| char::from_digit(i as u32 + 1, 10).unwrap())).collect();
    format!("m{body}")
}

/// Symmetric inverse monoid on `k ≤ 9` points, composition `(fg)(x) = f(g(x))`.
pub fn symmetric_inverse_monoid(k: usize) -> Magma {
    let mut maps: Vec<Vec<Option<usize>>> = vec![vec![]];
    for _ in 0..k {
        let mut next = Vec::new();
        for m in &maps {
            for img in std::iter::once(None).chain((0..k).map(Some)) {
                if img.is_none() || !m.contains(&img) {
                    let mut m2 = m.clone();
                    m2.push(img);
                    next.push(m2);
                }
            }
        }
        maps = next;
    }
    let index: BTreeMap<Vec<Option<usize>>, usize> = maps.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    Magma::from_fn(maps.iter().map(|m| pmap_name(m)), |a, b| {
        let (f, g) = (&maps[a], &maps[b]);
        let h: Vec<Option<usize>> = g.iter().map(|x| x.and_then(|y| f[y])).collect();
        Some(index[&h])
    })
}

/// Pair groupoid on `k` points: `(i,j)(j,l) = (i,l)`, source `j`, range `i`.
pub fn pair_groupoid(k: usize) -> Magma {
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (0..k).map(move |j| (i, j))).collect();
    Magma::from_fn(pairs.iter().map(|(i, j)| format!("p{}{}", i + 1, j + 1)), |a, b| {
        let ((i, j), (j2, l)) = (pairs[a], pairs[b]);
        (j == j2).then_some(i * k + l)
    })
}

/// Componentwise product; defined when both components are.
pub fn product(x: &Magma, y: &Magma) -> Magma {
    let ny = y.len();
    let names = x.elems().flat_map(|a| y.elems().map(move |b| (a, b))).map(|(a, b)| format!("{}.{}", x.name(a), y.name(b)));
    Magma::from_fn(names, |p, q| {
        let (a, b, c, d) = (p / ny, p % ny, q / ny, q % ny);
        Some(x.mul(a, c)? * ny + y.mul(b, d)?)
    })
}

/// Disjoint union; products only within a summand.
pub fn disjoint_union(x: &Magma, y: &Magma, tags: (&str, &str)) -> Magma {
    let nx = x.len();
    let names = x
        .names()
        .iter()
        .map(|s| format!("{s}{}", tags.0))
        .chain(y.names().iter().map(|s| format!("{s}{}", tags.1)));
    Magma::from_fn(names, |a, b| match (a < nx, b < nx) {
        (true, true) => x.mul(a, b),
        (false, false) => y.mul(a - nx, b - nx).map(|c| c + nx),
        _ => None,
    })
}

/// Adjoin an identity element named `unit`.
pub fn adjoin_unit(x: &Magma, unit: &str) -> Magma {
    let n = x.len();
    let names = x.names().iter().cloned().chain(std::iter::once(unit.to_string()));
    Magma::from_fn(names, |a, b| match (a == n, b == n) {
        (true, _) => Some(b),
        (_, true) => Some(a),
        _ => x.mul(a, b),
    })
}

/// `T = {0,t,u,v}` with `tv = vt = u` and every other product `0`.
pub fn t_semigroup() -> Magma {
    Magma::from_fn(["0", "t", "u", "v"], |a, b| Some(if (a, b) == (1, 3) || (a, b) == (3, 1) { 2 } else { 0 }))
}

/// The semilattice `{0, a, b}` with `ab = 0`.
pub fn vee_semilattice() -> Magma {
    Magma::from_fn(["0", "a", "b"], |x, y| Some(if x == y { x } else { 0 }))
}

/// `{a,b}` with `aba = a` for all `a, b`: a rectangular band.
pub fn rectangular_band() -> Magma {
    // elements (i,j) with (i,j)(k,l) = (i,l)
    let e = [(0, 0), (0, 1), (1, 0), (1, 1)];
    Magma::from_fn(["r11", "r12", "r21", "r22"], |a, b| {
        let (i, _) = e[a];
        let (_, l) = e[b];
        Some(i * 2 + l)
    })
}

/// Strict order on `{0..k}`: arrows `(n,m)` with `m < n`, `(n,m)(m,j) = (n,j)`.
pub fn strict_order(k: usize) -> Magma {
    let arrows: Vec<(usize, usize)> = (0..k).flat_map(|n| (0..n).map(move |m| (n, m))).collect();
    let pos = |x: (usize, usize)| arrows.iter().position(|&y| y == x);
    Magma::from_fn(arrows.iter().map(|(n, m)| format!("o{n}{m}")), |a, b| {
        let ((n, m), (m2, j)) = (arrows[a], arrows[b]);
        if m == m2 {
            pos((n, j))
        } else {
            None
        }
    })
}

/// The five-element table with `Λ_a` and `Λ_b` overlapping in `x`.
pub fn non_categorical() -> Magma {
    Magma::from_products(
        ["a", "b", "x", "y", "z"],
        &[("a", "a", "a"), ("x", "a", "y"), ("y", "a", "y"), ("b", "b", "b"), ("x", "b", "z"), ("z", "b", "z")],
    )
}

/// Tables where the three definedness conditions disagree, or the two parses differ.
pub fn axiom_counterexamples() -> Vec<(&'static str, Magma)> {
    let fgh = ["f", "g", "h"];
    vec![
        ("fg=f, gh=h", Magma::from_products(fgh, &[("f", "g", "f"), ("g", "h", "h")])),
        ("fg=g, gh=h", Magma::from_products(fgh, &[("f", "g", "g"), ("g", "h", "h")])),
        ("fg=f, gh=g", Magma::from_products(fgh, &[("f", "g", "f"), ("g", "h", "g")])),
        ("fg=hh=h", Magma::from_products(fgh, &[("f", "g", "h"), ("h", "h", "h")])),
        ("gh=ff=f", Magma::from_products(fgh, &[("g", "h", "f"), ("f", "f", "f")])),
        (
            "aa=ab=b, bb=ba=a",
            Magma::from_products(["a", "b"], &[("a", "a", "b"), ("a", "b", "b"), ("b", "b", "a"), ("b", "a", "a")]),
        ),
    ]
}

/// The unit groupoid on a set: only `xx = x`.
pub fn unit_groupoid<I, S>(names: I) -> Magma
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    Magma::from_fn(names, |a, b| (a == b).then_some(a))
}

/// Look up elements by name.
pub fn elems(m: &Magma, names: &[&str]) -> Vec<Elem> {
    names.iter().map(|s| m.index_of(s).unwrap_or_else(|| panic!("unknown element {s}"))).collect()
}

/// `Λ = {e, f}` with only `ee = e, ff = f`, and `Γ = {e, f, g}` where every other product is `g`.
/// The inclusion is a homomorphism whose image is not closed under products.
pub fn image_not_subsemigroupoid() -> (Magma, Magma, Vec<Elem>) {
    let lambda = Magma::from_products(["e", "f"], &[("e", "e", "e"), ("f", "f", "f")]);
    let gamma = Magma::from_fn(["e", "f", "g"], |a, b| Some(if a == b && a < 2 { a } else { 2 }));
    (lambda, gamma, vec![0, 1])
}
