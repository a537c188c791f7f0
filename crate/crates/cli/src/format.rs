//! The `.sgpd` text format.
//!
//! ```text
//! # comment
//! semigroupoid S { elements: a b c; products: a*b=c, b*a=c; }
//! graph G on S { vertices: u v; s: a->u b->v; r: a->v b->u; }
//! map f : S -> T { a->x, b->y }
//! action A : S on X { kind: global; anchor: x->u y->u; theta a { x->y } }
//! congruence R on S { a~b }
//! order O on S { a<=b }
//! ```
//!
//! Separating commas are optional. Every name must be declared before it is used.

use std::collections::HashSet;
use std::fmt::{self, Write};

use thiserror::Error;

/// An identifier with the place it was read from. Equality ignores the position.
#[derive(Clone, Debug, Default)]
pub struct Name {
    pub text: String,
    pub line: usize,
    pub col: usize,
}

impl Name {
    pub fn new(text: impl Into<String>) -> Self {
        Name { text: text.into(), line: 0, col: 0 }
    }
}

impl PartialEq for Name {
    fn eq(&self, other: &Self) -> bool {
        self.text == other.text
    }
}

impl Eq for Name {}

impl fmt::Display for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

pub type Pair = (Name, Name);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemigroupoidBlock {
    pub name: Name,
    pub elements: Vec<Name>,
    pub products: Vec<(Name, Name, Name)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphBlock {
    pub name: Name,
    pub on: Name,
    pub vertices: Vec<Name>,
    pub s: Vec<Pair>,
    pub r: Vec<Pair>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapBlock {
    pub name: Name,
    pub src: Name,
    pub dst: Name,
    pub pairs: Vec<Pair>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionBlock {
    pub name: Name,
    pub actor: Name,
    pub space: Name,
    pub kind: Option<Name>,
    pub anchor: Vec<Pair>,
    pub theta: Vec<(Name, Vec<Pair>)>,
}

/// Shared shape of `congruence` and `order` blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationBlock {
    pub name: Name,
    pub on: Name,
    pub pairs: Vec<Pair>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Block {
    Semigroupoid(SemigroupoidBlock),
    Graph(GraphBlock),
    Map(MapBlock),
    Action(ActionBlock),
    Congruence(RelationBlock),
    Order(RelationBlock),
}

impl Block {
    pub fn name(&self) -> &Name {
        match self {
            Block::Semigroupoid(b) => &b.name,
            Block::Graph(b) => &b.name,
            Block::Map(b) => &b.name,
            Block::Action(b) => &b.name,
            Block::Congruence(b) | Block::Order(b) => &b.name,
        }
    }

    pub fn keyword(&self) -> &'static str {
        match self {
            Block::Semigroupoid(_) => "semigroupoid",
            Block::Graph(_) => "graph",
            Block::Map(_) => "map",
            Block::Action(_) => "action",
            Block::Congruence(_) => "congruence",
            Block::Order(_) => "order",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Document {
    pub blocks: Vec<Block>,
}

impl Document {
    pub fn get(&self, name: &str) -> Option<&Block> {
        self.blocks.iter().find(|b| b.name().text == name)
    }

    pub fn semigroupoid(&self, name: &str) -> Option<&SemigroupoidBlock> {
        match self.get(name)? {
            Block::Semigroupoid(b) => Some(b),
            _ => None,
        }
    }

    /// The semigroupoid a table-carrying block (semigroupoid or graph) is built on.
    pub fn carrier(&self, name: &str) -> Option<&SemigroupoidBlock> {
        match self.get(name)? {
            Block::Semigroupoid(b) => Some(b),
            Block::Graph(g) => self.semigroupoid(&g.on.text),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}, column {col}: expected {expected}")]
    Syntax { line: usize, col: usize, expected: String },
    #[error("line {line}, column {col}: unresolved name `{name}`")]
    UnresolvedName { line: usize, col: usize, name: String },
    #[error("line {line}, column {col}: `{name}` is defined twice")]
    DuplicateDefinition { line: usize, col: usize, name: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Punct(&'static str),
    Eof,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || "_'.+[]()|!?@$%&^".contains(c)
}

const PUNCT: [&str; 10] = ["->", "<=", "{", "}", ";", ":", ",", "*", "=", "~"];

fn lex(text: &str) -> Result<Vec<Token>, FormatError> {
    let mut out = Vec::new();
    for (li, line) in text.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let (l, col) = (li + 1, i + 1);
            if c == '#' {
                break;
            }
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            if let Some(p) = PUNCT.iter().find(|p| p.chars().zip(&chars[i..]).filter(|(a, b)| a == *b).count() == p.len()) {
                out.push(Token { tok: Tok::Punct(p), line: l, col });
                i += p.len();
                continue;
            }
            if is_ident_char(c) {
                let start = i;
                while i < chars.len() && is_ident_char(chars[i]) {
                    i += 1;
                }
                out.push(Token { tok: Tok::Ident(chars[start..i].iter().collect()), line: l, col });
                continue;
            }
            return Err(FormatError::Syntax { line: l, col, expected: "a name or punctuation".into() });
        }
    }
    let line = text.lines().count().max(1);
    let col = text.lines().last().map_or(0, |l| l.chars().count()) + 1;
    out.push(Token { tok: Tok::Eof, line, col });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn err<T>(&self, expected: &str) -> Result<T, FormatError> {
        let t = self.peek();
        Err(FormatError::Syntax { line: t.line, col: t.col, expected: expected.into() })
    }

    fn at(&self, p: &str) -> bool {
        self.peek().tok == Tok::Punct(match PUNCT.iter().find(|q| **q == p) {
            Some(q) => q,
            None => return false,
        })
    }

    fn at_word(&self, w: &str) -> bool {
        matches!(&self.peek().tok, Tok::Ident(s) if s == w)
    }

    fn punct(&mut self, p: &str) -> Result<(), FormatError> {
        if self.at(p) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(&format!("`{p}`"))
        }
    }

    fn word(&mut self, w: &str) -> Result<(), FormatError> {
        if self.at_word(w) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(&format!("`{w}`"))
        }
    }

    fn name(&mut self, what: &str) -> Result<Name, FormatError> {
        let t = self.peek().clone();
        match t.tok {
            Tok::Ident(s) => {
                self.pos += 1;
                Ok(Name { text: s, line: t.line, col: t.col })
            }
            _ => self.err(what),
        }
    }

    fn skip_commas(&mut self) {
        while self.at(",") {
            self.pos += 1;
        }
    }

    /// `x->y` items until one of `stops`.
    fn arrows(&mut self, stops: &[&str]) -> Result<Vec<Pair>, FormatError> {
        self.pairs("->", stops)
    }

    fn pairs(&mut self, sep: &str, stops: &[&str]) -> Result<Vec<Pair>, FormatError> {
        let mut out = Vec::new();
        loop {
            self.skip_commas();
            if stops.iter().any(|s| self.at(s)) {
                return Ok(out);
            }
            let a = self.name("a name")?;
            self.punct(sep)?;
            let b = self.name("a name")?;
            out.push((a, b));
        }
    }

    fn names_until(&mut self, stop: &str) -> Result<Vec<Name>, FormatError> {
        let mut out = Vec::new();
        loop {
            self.skip_commas();
            if self.at(stop) {
                return Ok(out);
            }
            out.push(self.name("a name")?);
        }
    }

    fn field(&mut self, key: &str) -> Result<bool, FormatError> {
        if self.at_word(key) && self.toks.get(self.pos + 1).is_some_and(|t| t.tok == Tok::Punct(":")) {
            self.pos += 2;
            Ok(true)
        } else {
            Ok(false)
        }
    }

    fn semigroupoid(&mut self) -> Result<Block, FormatError> {
        let name = self.name("a block name")?;
        self.punct("{")?;
        if !self.field("elements")? {
            return self.err("`elements:`");
        }
        let elements = self.names_until(";")?;
        self.punct(";")?;
        let mut products = Vec::new();
        if self.field("products")? {
            loop {
                self.skip_commas();
                if self.at(";") {
                    break;
                }
                let a = self.name("a name")?;
                self.punct("*")?;
                let b = self.name("a name")?;
                self.punct("=")?;
                let c = self.name("a name")?;
                products.push((a, b, c));
            }
            self.punct(";")?;
        }
        self.punct("}")?;
        Ok(Block::Semigroupoid(SemigroupoidBlock { name, elements, products }))
    }

    fn graph(&mut self) -> Result<Block, FormatError> {
        let name = self.name("a block name")?;
        self.word("on")?;
        let on = self.name("a semigroupoid name")?;
        self.punct("{")?;
        if !self.field("vertices")? {
            return self.err("`vertices:`");
        }
        let vertices = self.names_until(";")?;
        self.punct(";")?;
        if !self.field("s")? {
            return self.err("`s:`");
        }
        let s = self.arrows(&[";"])?;
        self.punct(";")?;
        if !self.field("r")? {
            return self.err("`r:`");
        }
        let r = self.arrows(&[";"])?;
        self.punct(";")?;
        self.punct("}")?;
        Ok(Block::Graph(GraphBlock { name, on, vertices, s, r }))
    }

    fn map(&mut self) -> Result<Block, FormatError> {
        let name = self.name("a block name")?;
        self.punct(":")?;
        let src = self.name("a source name")?;
        self.punct("->")?;
        let dst = self.name("a target name")?;
        self.punct("{")?;
        let pairs = self.arrows(&["}"])?;
        self.punct("}")?;
        Ok(Block::Map(MapBlock { name, src, dst, pairs }))
    }

    fn action(&mut self) -> Result<Block, FormatError> {
        let name = self.name("a block name")?;
        self.punct(":")?;
        let actor = self.name("an actor name")?;
        self.word("on")?;
        let space = self.name("a space name")?;
        self.punct("{")?;
        let mut kind = None;
        if self.field("kind")? {
            kind = Some(self.name("`global`, `partial` or `meet`")?);
            self.punct(";")?;
        }
        let mut anchor = Vec::new();
        if self.field("anchor")? {
            anchor = self.arrows(&[";"])?;
            self.punct(";")?;
        }
        let mut theta = Vec::new();
        while self.at_word("theta") {
            self.pos += 1;
            let a = self.name("an actor element")?;
            self.punct("{")?;
            let m = self.arrows(&["}"])?;
            self.punct("}")?;
            theta.push((a, m));
        }
        if !self.at("}") {
            return self.err("`theta` or `}`");
        }
        self.pos += 1;
        Ok(Block::Action(ActionBlock { name, actor, space, kind, anchor, theta }))
    }

    fn relation(&mut self, sep: &str) -> Result<RelationBlock, FormatError> {
        let name = self.name("a block name")?;
        self.word("on")?;
        let on = self.name("a semigroupoid name")?;
        self.punct("{")?;
        let pairs = self.pairs(sep, &["}"])?;
        self.punct("}")?;
        Ok(RelationBlock { name, on, pairs })
    }

    fn document(&mut self) -> Result<Document, FormatError> {
        let mut blocks = Vec::new();
        loop {
            let t = self.peek().clone();
            let kw = match &t.tok {
                Tok::Eof => return Ok(Document { blocks }),
                Tok::Ident(s) => s.clone(),
                _ => return self.err("a block keyword"),
            };
            self.pos += 1;
            let b = match kw.as_str() {
                "semigroupoid" => self.semigroupoid()?,
                "graph" => self.graph()?,
                "map" => self.map()?,
                "action" => self.action()?,
                "congruence" => Block::Congruence(self.relation("~")?),
                "order" => Block::Order(self.relation("<=")?),
                _ => {
                    self.pos -= 1;
                    return self.err("one of semigroupoid, graph, map, action, congruence, order");
                }
            };
            blocks.push(b);
        }
    }
}

fn unresolved(n: &Name) -> FormatError {
    FormatError::UnresolvedName { line: n.line, col: n.col, name: n.text.clone() }
}

fn duplicate(n: &Name) -> FormatError {
    FormatError::DuplicateDefinition { line: n.line, col: n.col, name: n.text.clone() }
}

fn lookup(names: &[Name], n: &Name) -> Result<usize, FormatError> {
    names.iter().position(|m| m == n).ok_or_else(|| unresolved(n))
}

fn unique(names: &[Name]) -> Result<(), FormatError> {
    let mut seen = HashSet::new();
    for n in names {
        if !seen.insert(&n.text) {
            return Err(duplicate(n));
        }
    }
    Ok(())
}

/// Each left-hand side at most once.
fn functional(pairs: &[Pair]) -> Result<(), FormatError> {
    let lhs: Vec<Name> = pairs.iter().map(|p| p.0.clone()).collect();
    unique(&lhs)
}

/// Element names of the carrier of a semigroupoid or graph block declared before `upto`.
fn carrier_elements<'a>(doc: &'a Document, upto: usize, n: &Name) -> Result<&'a [Name], FormatError> {
    match doc.blocks[..upto].iter().find(|b| b.name() == n) {
        Some(Block::Semigroupoid(b)) => Ok(&b.elements),
        Some(Block::Graph(g)) => carrier_elements(doc, upto, &g.on),
        _ => Err(unresolved(n)),
    }
}

/// Vertex names, when the block is an explicit graph.
fn graph_vertices<'a>(doc: &'a Document, upto: usize, n: &Name) -> Option<&'a [Name]> {
    match doc.blocks[..upto].iter().find(|b| b.name() == n) {
        Some(Block::Graph(g)) => Some(&g.vertices),
        _ => None,
    }
}

fn check(doc: &Document) -> Result<(), FormatError> {
    let names: Vec<Name> = doc.blocks.iter().map(|b| b.name().clone()).collect();
    unique(&names)?;
    for (i, b) in doc.blocks.iter().enumerate() {
        match b {
            Block::Semigroupoid(s) => {
                unique(&s.elements)?;
                let mut seen = HashSet::new();
                for (a, b, c) in &s.products {
                    lookup(&s.elements, a)?;
                    lookup(&s.elements, b)?;
                    lookup(&s.elements, c)?;
                    if !seen.insert((&a.text, &b.text)) {
                        return Err(duplicate(a));
                    }
                }
            }
            Block::Graph(g) => {
                let Some(Block::Semigroupoid(s)) = doc.blocks[..i].iter().find(|b| b.name() == &g.on) else {
                    return Err(unresolved(&g.on));
                };
                unique(&g.vertices)?;
                for side in [&g.s, &g.r] {
                    functional(side)?;
                    for (a, v) in side {
                        lookup(&s.elements, a)?;
                        lookup(&g.vertices, v)?;
                    }
                }
            }
            Block::Map(m) => {
                let src = carrier_elements(doc, i, &m.src)?;
                let dst = carrier_elements(doc, i, &m.dst)?;
                functional(&m.pairs)?;
                for (a, b) in &m.pairs {
                    lookup(src, a)?;
                    lookup(dst, b)?;
                }
            }
            Block::Action(a) => {
                let actor = carrier_elements(doc, i, &a.actor)?;
                let space = carrier_elements(doc, i, &a.space)?;
                if let Some(k) = &a.kind {
                    if !["global", "partial", "meet"].contains(&k.text.as_str()) {
                        return Err(FormatError::Syntax { line: k.line, col: k.col, expected: "`global`, `partial` or `meet`".into() });
                    }
                }
                functional(&a.anchor)?;
                for (x, _) in &a.anchor {
                    lookup(space, x)?;
                }
                if let Some(vs) = graph_vertices(doc, i, &a.actor) {
                    for (_, u) in &a.anchor {
                        lookup(vs, u)?;
                    }
                }
                let keys: Vec<Name> = a.theta.iter().map(|t| t.0.clone()).collect();
                unique(&keys)?;
                for (e, m) in &a.theta {
                    lookup(actor, e)?;
                    functional(m)?;
                    for (x, y) in m {
                        lookup(space, x)?;
                        lookup(space, y)?;
                    }
                }
            }
            Block::Congruence(r) | Block::Order(r) => {
                let el = carrier_elements(doc, i, &r.on)?;
                for (a, b) in &r.pairs {
                    lookup(el, a)?;
                    lookup(el, b)?;
                }
            }
        }
    }
    Ok(())
}

pub fn parse(text: &str) -> Result<Document, FormatError> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let doc = p.document()?;
    check(&doc)?;
    Ok(doc)
}

fn sort_pairs(pairs: &mut [Pair], left: &[Name], right: &[Name]) {
    let ix = |names: &[Name], n: &Name| names.iter().position(|m| m == n).unwrap_or(usize::MAX);
    pairs.sort_by_key(|(a, b)| (ix(left, a), ix(right, b)));
}

/// Relational lists sorted by the declaration order of their entries; declarations unchanged.
pub fn canonicalize(doc: &Document) -> Document {
    let mut out = doc.clone();
    for i in 0..out.blocks.len() {
        let (before, rest) = out.blocks.split_at_mut(i);
        let lookup_doc = Document { blocks: before.to_vec() };
        let el = |n: &Name| carrier_elements(&lookup_doc, i, n).map(|s| s.to_vec()).unwrap_or_default();
        let vs = |n: &Name| graph_vertices(&lookup_doc, i, n).map(|s| s.to_vec()).unwrap_or_default();
        match &mut rest[0] {
            Block::Semigroupoid(s) => {
                let ix = |n: &Name| s.elements.iter().position(|m| m == n).unwrap_or(usize::MAX);
                let mut p = std::mem::take(&mut s.products);
                p.sort_by_key(|(a, b, _)| (ix(a), ix(b)));
                s.products = p;
            }
            Block::Graph(g) => {
                let e = el(&g.on);
                sort_pairs(&mut g.s, &e, &g.vertices);
                sort_pairs(&mut g.r, &e, &g.vertices);
            }
            Block::Map(m) => sort_pairs(&mut m.pairs, &el(&m.src), &el(&m.dst)),
            Block::Action(a) => {
                let (ae, se) = (el(&a.actor), el(&a.space));
                sort_pairs(&mut a.anchor, &se, &vs(&a.actor));
                let ix = |n: &Name| ae.iter().position(|m| m == n).unwrap_or(usize::MAX);
                a.theta.sort_by_key(|t| ix(&t.0));
                for (_, m) in &mut a.theta {
                    sort_pairs(m, &se, &se);
                }
            }
            Block::Congruence(r) | Block::Order(r) => {
                let e = el(&r.on);
                sort_pairs(&mut r.pairs, &e, &e);
            }
        }
    }
    out
}

fn join_pairs(pairs: &[Pair], sep: &str, delim: &str) -> String {
    pairs.iter().map(|(a, b)| format!("{a}{sep}{b}")).collect::<Vec<_>>().join(delim)
}

fn join_names(names: &[Name]) -> String {
    names.iter().map(|n| n.text.as_str()).collect::<Vec<_>>().join(" ")
}

/// Canonical text; `parse(&print(d)) == d` whenever `d` is canonical.
pub fn print(doc: &Document) -> String {
    let doc = canonicalize(doc);
    let mut out = String::new();
    for (i, b) in doc.blocks.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        match b {
            Block::Semigroupoid(s) => {
                let _ = writeln!(out, "semigroupoid {} {{", s.name);
                let _ = writeln!(out, "  elements: {};", join_names(&s.elements));
                if !s.products.is_empty() {
                    let ps: Vec<String> = s.products.iter().map(|(a, b, c)| format!("{a}*{b}={c}")).collect();
                    let _ = writeln!(out, "  products: {};", ps.join(", "));
                }
                out.push_str("}\n");
            }
            Block::Graph(g) => {
                let _ = writeln!(out, "graph {} on {} {{", g.name, g.on);
                let _ = writeln!(out, "  vertices: {};", join_names(&g.vertices));
                let _ = writeln!(out, "  s: {};", join_pairs(&g.s, "->", " "));
                let _ = writeln!(out, "  r: {};", join_pairs(&g.r, "->", " "));
                out.push_str("}\n");
            }
            Block::Map(m) => {
                let _ = writeln!(out, "map {} : {} -> {} {{ {} }}", m.name, m.src, m.dst, join_pairs(&m.pairs, "->", ", "));
            }
            Block::Action(a) => {
                let _ = writeln!(out, "action {} : {} on {} {{", a.name, a.actor, a.space);
                if let Some(k) = &a.kind {
                    let _ = writeln!(out, "  kind: {k};");
                }
                if !a.anchor.is_empty() {
                    let _ = writeln!(out, "  anchor: {};", join_pairs(&a.anchor, "->", " "));
                }
                for (e, m) in &a.theta {
                    let _ = writeln!(out, "  theta {e} {{ {} }}", join_pairs(m, "->", ", "));
                }
                out.push_str("}\n");
            }
            Block::Congruence(r) => {
                let _ = writeln!(out, "congruence {} on {} {{ {} }}", r.name, r.on, join_pairs(&r.pairs, "~", ", "));
            }
            Block::Order(r) => {
                let _ = writeln!(out, "order {} on {} {{ {} }}", r.name, r.on, join_pairs(&r.pairs, "<=", ", "));
            }
        }
    }
    out
}

/// A semigroupoid block listing every defined product of a table.
pub fn table_block(name: &str, m: &semigroupoid::table::Magma) -> SemigroupoidBlock {
    SemigroupoidBlock {
        name: Name::new(name),
        elements: m.names().iter().map(Name::new).collect(),
        products: m.products().map(|(a, b, c)| (Name::new(m.name(a)), Name::new(m.name(b)), Name::new(m.name(c)))).collect(),
    }
}
