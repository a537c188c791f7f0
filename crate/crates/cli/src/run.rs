//! Building library values from a parsed document, and the subcommands.

use serde_json::{json, Value};
use thiserror::Error;

use semigroupoid::action::{validate_preaction, wagner_preston, ActionKind, Preaction};
use semigroupoid::duality::{kappa, kb, p_functor, sigma_report, ultrafilters, zeta, Semilattice, SigmaOrdered};
use semigroupoid::graph::{enumerate_graphings, graph_default, Graphed, Vertex};
use semigroupoid::inverse::{classify, idempotents_commute, order_axioms_check, Inverse, Kind};
use semigroupoid::iso::{find_isomorphism, DEFAULT_ISO_CAP};
use semigroupoid::quotient::{
    check_graphed_congruence, congruence_closure, germ_congruence, initial_groupoid, quotient, quotient_graphed,
    validate_preorder, CompatiblePreorder, GraphedCongruence,
};
use semigroupoid::semidirect::{semidirect_product, underlying_groupoid, SemidirectError};
use semigroupoid::table::{check_homomorphism, is_categorical, validate_exel, Elem, Magma, Semigroupoid};

use crate::format::{Block, Document, Name, Pair};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Failure {
    /// Bad input: exit code 2.
    #[error("{0}")]
    Input(String),
    /// A check failed: exit code 1.
    #[error("{0}")]
    Violation(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Input(_) => 2,
            Failure::Violation(_) => 1,
        }
    }
}

fn input<T>(msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure::Input(msg.into()))
}

fn violation<T>(msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure::Violation(msg.into()))
}

#[derive(Clone, Debug)]
pub struct Options {
    pub max_violations: usize,
    pub cap_bisections: usize,
    pub cap_graphings: usize,
    pub name: Option<String>,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            max_violations: 10,
            cap_bisections: semigroupoid::duality::DEFAULT_BISECTION_CAP,
            cap_graphings: semigroupoid::graph::DEFAULT_GRAPHING_CAP,
            name: None,
        }
    }
}

/// Outcome for one block.
#[derive(Clone, Debug)]
pub struct Item {
    pub name: String,
    pub ok: bool,
    pub text: String,
    pub data: Value,
}

#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub items: Vec<Item>,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        if self.items.iter().all(|i| i.ok) {
            0
        } else {
            1
        }
    }

    pub fn text(&self) -> String {
        let single = self.items.len() == 1;
        let mut out = String::new();
        for i in &self.items {
            if single {
                out.push_str(&i.text);
            } else {
                out.push_str(&format!("{}: {}", i.name, i.text));
            }
            out.push('\n');
        }
        out
    }

    pub fn json(&self) -> Value {
        let items: Vec<Value> = self
            .items
            .iter()
            .map(|i| json!({ "name": i.name, "ok": i.ok, "summary": i.text, "data": i.data }))
            .collect();
        json!({ "command": self.command, "ok": self.exit_code() == 0, "results": items })
    }
}

/// Typed access to the blocks of a document.
pub struct Model<'a> {
    pub doc: &'a Document,
    pub limit: usize,
}

fn index(names: &[String], n: &Name) -> Result<usize, Failure> {
    names.iter().position(|m| *m == n.text).map_or_else(|| input(format!("line {}, column {}: unresolved name `{n}`", n.line, n.col)), Ok)
}

impl<'a> Model<'a> {
    pub fn new(doc: &'a Document, limit: usize) -> Self {
        Model { doc, limit }
    }

    fn block(&self, n: &str) -> Result<&'a Block, Failure> {
        self.doc.get(n).map_or_else(|| input(format!("no block named `{n}`")), Ok)
    }

    /// The raw table of a semigroupoid block, or of the one a graph is built on.
    pub fn magma(&self, n: &str) -> Result<Magma, Failure> {
        let Some(b) = self.doc.carrier(n) else {
            return input(format!("`{n}` is not a semigroupoid or graph"));
        };
        let mut m = Magma::new(b.elements.iter().map(|e| e.text.clone()));
        let names = m.names().to_vec();
        for (x, y, z) in &b.products {
            m.set(index(&names, x)?, index(&names, y)?, index(&names, z)?);
        }
        Ok(m)
    }

    pub fn semigroupoid(&self, n: &str) -> Result<Semigroupoid, Failure> {
        let m = self.magma(n)?;
        validate_exel(m.clone(), self.limit).map_err(|e| {
            let first = e.violations.first().map(|v| v.describe(&m)).unwrap_or_default();
            Failure::Violation(format!("not a semigroupoid: {first}"))
        })
    }

    pub fn graphed(&self, n: &str) -> Result<Graphed, Failure> {
        let sg = self.semigroupoid(n)?;
        match self.block(n)? {
            Block::Graph(g) => {
                let names: Vec<String> = sg.names().to_vec();
                let vnames: Vec<String> = g.vertices.iter().map(|v| v.text.clone()).collect();
                let side = |pairs: &[Pair], which: &str| -> Result<Vec<Vertex>, Failure> {
                    let mut out = vec![None; names.len()];
                    for (a, v) in pairs {
                        out[index(&names, a)?] = Some(index(&vnames, v)?);
                    }
                    out.into_iter()
                        .enumerate()
                        .map(|(i, v)| v.map_or_else(|| input(format!("graph `{}`: no {which} for `{}`", g.name, names[i])), Ok))
                        .collect()
                };
                let (s, r) = (side(&g.s, "s")?, side(&g.r, "r")?);
                Graphed::new(sg, vnames, s, r).map_err(|e| Failure::Violation(format!("not a graphing: {e}")))
            }
            _ => graph_default(&sg).map_err(|e| Failure::Violation(format!("no graphing: {e}"))),
        }
    }

    pub fn inverse(&self, n: &str) -> Result<Inverse, Failure> {
        let g = self.graphed(n)?;
        Inverse::from_graphed(g).map_err(|e| Failure::Violation(format!("not inverse: {e}")))
    }

    pub fn map(&self, n: &str) -> Result<(Magma, Magma, Vec<Elem>), Failure> {
        let Block::Map(b) = self.block(n)? else { return input(format!("`{n}` is not a map")) };
        let (src, dst) = (self.magma(&b.src.text)?, self.magma(&b.dst.text)?);
        let mut out = vec![None; src.len()];
        for (a, x) in &b.pairs {
            out[index(src.names(), a)?] = Some(index(dst.names(), x)?);
        }
        let map = out
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.map_or_else(|| input(format!("map `{n}` has no image for `{}`", src.name(i))), Ok))
            .collect::<Result<_, _>>()?;
        Ok((src, dst, map))
    }

    pub fn preaction(&self, n: &str) -> Result<Preaction, Failure> {
        let Block::Action(b) = self.block(n)? else { return input(format!("`{n}` is not an action")) };
        let actor = self.inverse(&b.actor.text)?;
        let space = self.graphed(&b.space.text)?;
        let kind = match b.kind.as_ref().map(|k| k.text.as_str()) {
            None | Some("global") => ActionKind::Global,
            Some("partial") => ActionKind::Partial,
            _ => ActionKind::Meet,
        };
        let anchor = if b.anchor.is_empty() {
            if actor.nv() != 1 {
                return input(format!("action `{n}` needs an anchor: the actor has {} vertices", actor.nv()));
            }
            vec![0; space.len()]
        } else {
            let mut out = vec![None; space.len()];
            for (x, u) in &b.anchor {
                out[index(space.magma().names(), x)?] = Some(index(actor.graphed().vnames(), u)?);
            }
            out.into_iter()
                .enumerate()
                .map(|(i, v)| v.map_or_else(|| input(format!("no anchor for `{}`", space.magma().name(i))), Ok))
                .collect::<Result<_, _>>()?
        };
        let mut theta = vec![vec![None; space.len()]; actor.len()];
        for (a, pairs) in &b.theta {
            let a = index(actor.magma().names(), a)?;
            for (x, y) in pairs {
                theta[a][index(space.magma().names(), x)?] = Some(index(space.magma().names(), y)?);
            }
        }
        Ok(Preaction { actor, space, anchor, theta, kind })
    }

    fn relation(&self, n: &str) -> Result<(String, Vec<(Elem, Elem)>), Failure> {
        let r = match self.block(n)? {
            Block::Congruence(r) | Block::Order(r) => r,
            _ => return input(format!("`{n}` is not a relation")),
        };
        let m = self.magma(&r.on.text)?;
        let pairs = r
            .pairs
            .iter()
            .map(|(a, b)| Ok((index(m.names(), a)?, index(m.names(), b)?)))
            .collect::<Result<_, Failure>>()?;
        Ok((r.on.text.clone(), pairs))
    }

    /// Reflexive and transitive closure of an `order` block.
    pub fn order(&self, n: &str) -> Result<(String, Vec<Vec<bool>>), Failure> {
        let (on, pairs) = self.relation(n)?;
        let k = self.magma(&on)?.len();
        let mut le = vec![vec![false; k]; k];
        for (a, row) in le.iter_mut().enumerate() {
            row[a] = true;
        }
        for (a, b) in pairs {
            le[a][b] = true;
        }
        for m in 0..k {
            for a in 0..k {
                if le[a][m] {
                    for b in 0..k {
                        if le[m][b] {
                            le[a][b] = true;
                        }
                    }
                }
            }
        }
        Ok((on, le))
    }

    pub fn congruence_pairs(&self, n: &str) -> Result<(String, Vec<(Elem, Elem)>), Failure> {
        self.relation(n)
    }
}

fn names_of(m: &Magma, set: &[Elem]) -> Vec<String> {
    set.iter().map(|&a| m.name(a).to_string()).collect()
}

fn vertices(n: usize) -> String {
    if n == 1 { "1 vertex".into() } else { format!("{n} vertices") }
}

fn kind_name(k: Kind) -> &'static str {
    match k {
        Kind::Group => "group",
        Kind::Groupoid => "groupoid",
        Kind::InverseSemigroup => "inverse semigroup",
        Kind::General => "inverse semigroupoid",
    }
}

fn item(name: &str, r: Result<(String, Value), Failure>) -> Result<Item, Failure> {
    match r {
        Ok((text, data)) => Ok(Item { name: name.into(), ok: true, text, data }),
        Err(Failure::Violation(text)) => Ok(Item { name: name.into(), ok: false, text, data: Value::Null }),
        Err(e) => Err(e),
    }
}

/// Blocks of the given keywords, optionally restricted to one name.
fn selected<'a>(doc: &'a Document, opts: &Options, keywords: &[&str]) -> Result<Vec<&'a Block>, Failure> {
    let out: Vec<&Block> = doc
        .blocks
        .iter()
        .filter(|b| keywords.contains(&b.keyword()))
        .filter(|b| opts.name.as_ref().is_none_or(|n| b.name().text == *n))
        .collect();
    if out.is_empty() {
        return input(format!("no {} block{}", keywords.join(" or "), opts.name.as_ref().map_or(String::new(), |n| format!(" named `{n}`"))));
    }
    Ok(out)
}

fn each(
    doc: &Document,
    opts: &Options,
    command: &str,
    keywords: &[&str],
    mut f: impl FnMut(&Model, &Block) -> Result<(String, Value), Failure>,
) -> Result<Report, Failure> {
    let model = Model::new(doc, opts.max_violations);
    let mut items = Vec::new();
    for b in selected(doc, opts, keywords)? {
        items.push(item(&b.name().text, f(&model, b))?);
    }
    Ok(Report { command: command.into(), items })
}

pub const COMMANDS: [&str; 12] = [
    "validate",
    "analyze",
    "graphings",
    "wagner-preston",
    "semidirect",
    "quotient",
    "germ",
    "underlying",
    "spectrum",
    "kb",
    "p",
    "roundtrip",
];

pub fn run(command: &str, doc: &Document, opts: &Options) -> Result<Report, Failure> {
    match command {
        "validate" => each(doc, opts, command, &["semigroupoid", "graph", "map", "action", "congruence", "order"], validate),
        "analyze" => each(doc, opts, command, &["semigroupoid", "graph"], analyze),
        "graphings" => each(doc, opts, command, &["semigroupoid"], |m, b| {
            let sg = m.semigroupoid(&b.name().text)?;
            match enumerate_graphings(&sg, opts.cap_graphings) {
                Ok(v) => Ok((format!("{} graphing(s)", v.len()), json!({ "count": v.len() }))),
                Err(e) => violation(e.to_string()),
            }
        }),
        "wagner-preston" => each(doc, opts, command, &["semigroupoid", "graph"], |m, b| {
            let s = m.inverse(&b.name().text)?;
            let wp = wagner_preston(&s);
            let data = json!({
                "injective": wp.injective, "multiplicative": wp.multiplicative,
                "defined_iff_defined": wp.defined_iff, "image_size": wp.image_size(),
            });
            let text = format!(
                "injective: {}; multiplicative: {}; defined iff defined: {}; image: {} elements",
                wp.injective, wp.multiplicative, wp.defined_iff, wp.image_size()
            );
            if wp.ok() { Ok((text, data)) } else { violation(text) }
        }),
        "semidirect" => each(doc, opts, command, &["action"], |m, b| {
            let p = m.preaction(&b.name().text)?;
            match semidirect_product(&p, opts.max_violations) {
                Ok(sp) => Ok((
                    format!("{} elements, {}", sp.len(), vertices(sp.graphed.nv())),
                    json!({ "elements": sp.magma().names(), "vertices": sp.graphed.nv() }),
                )),
                Err(SemidirectError::NotAssociative { witness_text, all, .. }) => {
                    violation(format!("NotAssociative: {witness_text} ({} violation(s))", all.len()))
                }
                Err(e) => violation(e.to_string()),
            }
        }),
        "quotient" => each(doc, opts, command, &["congruence"], |m, b| {
            let (on, pairs) = m.congruence_pairs(&b.name().text)?;
            let g = m.graphed(&on)?;
            let r = congruence_closure(&g, &pairs).map_err(|e| Failure::Violation(e.to_string()))?;
            let classes: Vec<Vec<String>> = r.classes().iter().map(|c| names_of(g.magma(), c)).collect();
            let (q, kind) = match m.inverse(&on) {
                Ok(s) => {
                    let (q, _) = quotient(&s, &r).map_err(|e| Failure::Violation(e.to_string()))?;
                    let k = kind_name(classify(&q));
                    (q.magma().clone(), Some(k))
                }
                Err(_) => (quotient_graphed(&g, &r).0.magma().clone(), None),
            };
            let text = format!(
                "{} classes{}; {}",
                classes.len(),
                kind.map_or(String::new(), |k| format!(", {k}")),
                classes.iter().map(|c| format!("{{{}}}", c.join(","))).collect::<Vec<_>>().join(" ")
            );
            Ok((text, json!({ "classes": classes, "elements": q.names(), "kind": kind })))
        }),
        "germ" => each(doc, opts, command, &["semigroupoid", "graph", "order"], |m, b| match b {
            Block::Order(o) => {
                let (on, le) = m.order(&o.name.text)?;
                let s = m.inverse(&on)?;
                let p = CompatiblePreorder { le };
                let v = validate_preorder(&s, &p);
                if let Some((ax, w)) = v.first() {
                    return violation(format!("not a compatible preorder: {ax} ({w})"));
                }
                let r = germ_congruence(&s, &p).map_err(|e| Failure::Violation(e.to_string()))?;
                let (q, _) = quotient(&s, &r).map_err(|e| Failure::Violation(e.to_string()))?;
                Ok((format!("{} germ classes, {}", q.len(), kind_name(classify(&q))), json!({ "elements": q.magma().names() })))
            }
            _ => {
                let s = m.inverse(&b.name().text)?;
                let (ig, _) = initial_groupoid(&s).map_err(|e| Failure::Violation(e.to_string()))?;
                Ok((
                    format!("initial groupoid: {} elements, {}, {}", ig.len(), vertices(ig.nv()), kind_name(classify(&ig))),
                    json!({ "elements": ig.magma().names(), "vertices": ig.nv() }),
                ))
            }
        }),
        "underlying" => each(doc, opts, command, &["semigroupoid", "graph"], |m, b| {
            let s = m.inverse(&b.name().text)?;
            let u = underlying_groupoid(&s);
            Ok((
                format!("{} elements, {}, {} products", u.len(), vertices(u.nv()), u.magma().products().count()),
                json!({ "elements": u.len(), "vertices": u.graphed().vnames(), "products": u.magma().products().count() }),
            ))
        }),
        "spectrum" => each(doc, opts, command, &["semigroupoid", "graph"], |m, b| {
            let s = m.inverse(&b.name().text)?;
            let (e, emb) = Semilattice::of_idempotents(&s).map_err(Failure::Violation)?;
            let sp = ultrafilters(&e);
            let filters: Vec<Vec<String>> = sp
                .filters
                .iter()
                .map(|f| (0..e.len()).filter(|&i| f[i]).map(|i| s.name(emb[i]).to_string()).collect())
                .collect();
            Ok((
                format!(
                    "{} idempotents, {} ultrafilter(s): {}",
                    e.len(),
                    filters.len(),
                    filters.iter().map(|f| format!("{{{}}}", f.join(","))).collect::<Vec<_>>().join(" ")
                ),
                json!({ "idempotents": e.len(), "ultrafilters": filters }),
            ))
        }),
        "kb" => each(doc, opts, command, &["semigroupoid", "graph"], |m, b| {
            let s = m.inverse(&b.name().text)?;
            let k = kb(&s, opts.cap_bisections).map_err(|e| Failure::Violation(e.to_string()))?;
            let rep = sigma_report(&k.sigma);
            let idem = k.sigma.inverse().idempotents().len();
            let text = format!("{} bisections, {} idempotent; Σ-ordered: {}", k.len(), idem, rep.is_empty());
            if let Some((ax, w)) = rep.first() {
                return violation(format!("{text}; {ax}: {w}"));
            }
            Ok((text, json!({ "bisections": k.len(), "idempotents": idem, "elements": k.sigma.inverse().magma().names() })))
        }),
        "p" => each(doc, opts, command, &["semigroupoid", "order"], |m, b| {
            let (on, le) = match b {
                Block::Order(o) => m.order(&o.name.text)?,
                _ => {
                    let s = m.inverse(&b.name().text)?;
                    let le = s.elems().map(|a| s.elems().map(|c| s.leq(a, c)).collect()).collect();
                    (b.name().text.clone(), le)
                }
            };
            let s = m.inverse(&on)?;
            let sg = SigmaOrdered::new(s, le).map_err(|e| Failure::Violation(e.to_string()))?;
            let g = p_functor(&sg).map_err(|e| Failure::Violation(e.to_string()))?;
            Ok((
                format!("{} germs over {} ultrafilter(s), {}", g.inv.len(), g.spectrum.len(), kind_name(classify(&g.inv))),
                json!({ "elements": g.inv.magma().names(), "vertices": g.inv.graphed().vnames() }),
            ))
        }),
        "roundtrip" => each(doc, opts, command, &["semigroupoid", "graph"], |m, b| {
            let s = m.inverse(&b.name().text)?;
            let (k, _, z) = zeta(&s, opts.cap_bisections).map_err(|e| Failure::Violation(e.to_string()))?;
            let (_, _, kap) = kappa(&k.sigma, opts.cap_bisections).map_err(|e| Failure::Violation(e.to_string()))?;
            let word = |ok: bool| if ok { "iso" } else { "not iso" };
            let kok = kap.isomorphism && kap.order_isomorphism;
            let text = format!("zeta: {} ({} elements); kappa: {} ({} elements)", word(z.isomorphism), s.len(), word(kok), k.len());
            if z.isomorphism && kok {
                Ok((text, json!({ "zeta": true, "kappa": true, "elements": s.len(), "bisections": k.len() })))
            } else {
                violation(text)
            }
        }),
        _ => input(format!("unknown command `{command}`")),
    }
}

fn validate(m: &Model, b: &Block) -> Result<(String, Value), Failure> {
    let n = &b.name().text;
    match b {
        Block::Semigroupoid(_) => {
            let sg = m.semigroupoid(n)?;
            Ok((format!("semigroupoid with {} elements", sg.len()), json!({ "elements": sg.len() })))
        }
        Block::Graph(_) => {
            let g = m.graphed(n)?;
            Ok((format!("graphed with {}", vertices(g.nv())), json!({ "vertices": g.nv() })))
        }
        Block::Map(_) => {
            let (src, dst, map) = m.map(n)?;
            check_homomorphism(&src, &dst, &map).map_err(|e| Failure::Violation(format!("not a homomorphism: {e}")))?;
            Ok(("homomorphism".into(), Value::Null))
        }
        Block::Action(_) => {
            let p = m.preaction(n)?;
            let rep = validate_preaction(&p, m.limit);
            if let Some((ax, w)) = rep.violations.first() {
                return violation(format!("{} violation(s); first: {ax} ({w})", rep.violations.len()));
            }
            Ok(("valid".into(), json!({ "nondegenerate": rep.nondegenerate })))
        }
        Block::Congruence(_) => {
            let (on, pairs) = m.congruence_pairs(n)?;
            let g = m.graphed(&on)?;
            let labels = equivalence_labels(g.len(), &pairs);
            check_graphed_congruence(&g, &GraphedCongruence::from_labels(&labels))
                .map_err(|e| Failure::Violation(format!("not a graphed congruence: {e}")))?;
            Ok(("graphed congruence".into(), Value::Null))
        }
        Block::Order(_) => {
            let (on, le) = m.order(n)?;
            let s = m.inverse(&on)?;
            let v = validate_preorder(&s, &CompatiblePreorder { le });
            if let Some((ax, w)) = v.first() {
                return violation(format!("not a compatible preorder: {ax} ({w})"));
            }
            Ok(("compatible preorder".into(), Value::Null))
        }
    }
}

fn equivalence_labels(n: usize, pairs: &[(Elem, Elem)]) -> Vec<usize> {
    let mut label: Vec<usize> = (0..n).collect();
    fn find(l: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while l[r] != r {
            r = l[r];
        }
        l[x] = r;
        r
    }
    for &(a, b) in pairs {
        let (ra, rb) = (find(&mut label, a), find(&mut label, b));
        label[ra] = rb;
    }
    (0..n).map(|x| find(&mut label, x)).collect()
}

fn analyze(m: &Model, b: &Block) -> Result<(String, Value), Failure> {
    let n = &b.name().text;
    let sg = m.semigroupoid(n)?;
    let mut parts = vec![format!("{} elements", sg.len())];
    let mut data = json!({ "elements": sg.names() });
    match is_categorical(sg.magma()) {
        Ok(()) => parts.push("categorical".into()),
        Err(w) => {
            let mg = sg.magma();
            parts.push(format!(
                "not categorical ({} and {} share {}, {} separates)",
                mg.name(w.a),
                mg.name(w.b),
                mg.name(w.common),
                mg.name(w.separating)
            ));
            data["categorical"] = json!(false);
            return Ok((parts.join("; "), data));
        }
    }
    data["categorical"] = json!(true);
    match m.inverse(n) {
        Ok(s) => {
            let idem = names_of(s.magma(), &s.idempotents());
            let order: Vec<String> = s
                .elems()
                .flat_map(|a| s.elems().map(move |c| (a, c)))
                .filter(|&(a, c)| a != c && s.leq(a, c))
                .map(|(a, c)| format!("{}<={}", s.name(a), s.name(c)))
                .collect();
            let commute = idempotents_commute(&s).is_ok();
            let axioms = order_axioms_check(&s).passed();
            parts.push(kind_name(classify(&s)).into());
            parts.push(vertices(s.nv()));
            parts.push(format!("idempotents {{{}}}", idem.join(",")));
            parts.push(format!("order {}", if order.is_empty() { "trivial".to_string() } else { order.join(" ") }));
            parts.push(format!("idempotents commute: {commute}; order axioms: {axioms}"));
            data["inverse"] = json!(true);
            data["kind"] = json!(kind_name(classify(&s)));
            data["vertices"] = json!(s.nv());
            data["idempotents"] = json!(idem);
            data["order"] = json!(order);
            data["order_axioms"] = json!(axioms);
        }
        Err(e) => {
            parts.push(e.to_string());
            data["inverse"] = json!(false);
        }
    }
    Ok((parts.join("; "), data))
}

/// `FILE[:NAME]` resolved to a table.
pub fn iso(a: (&Document, Option<&str>), b: (&Document, Option<&str>)) -> Result<Report, Failure> {
    let table = |(doc, name): (&Document, Option<&str>)| -> Result<(String, Magma), Failure> {
        let n = match name {
            Some(n) => n.to_string(),
            None => match doc.blocks.iter().find(|b| matches!(b, Block::Semigroupoid(_))) {
                Some(b) => b.name().text.clone(),
                None => return input("no semigroupoid block"),
            },
        };
        Ok((n.clone(), Model::new(doc, 1).magma(&n)?))
    };
    let ((na, ma), (nb, mb)) = (table(a)?, table(b)?);
    let found = find_isomorphism(&ma, &mb, DEFAULT_ISO_CAP).map_err(|e| Failure::Input(e.to_string()))?;
    let it = match found {
        Some(map) => {
            let pairs: Vec<String> = ma.elems().map(|x| format!("{}->{}", ma.name(x), mb.name(map[x]))).collect();
            Item { name: format!("{na} {nb}"), ok: true, text: format!("isomorphic: {}", pairs.join(", ")), data: json!({ "map": pairs }) }
        }
        None => Item { name: format!("{na} {nb}"), ok: false, text: "not isomorphic".into(), data: Value::Null },
    };
    Ok(Report { command: "iso".into(), items: vec![it] })
}
