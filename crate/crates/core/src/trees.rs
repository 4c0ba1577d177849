//! Tree monomials of the free operad on two binary operations.
//!
//! A [`Tree`] is a complete binary plane tree whose internal nodes carry an
//! [`Op`] and whose leaves carry argument labels. Trees are persistent: every
//! node sits behind an [`Arc`], so rewriting a subtree shares the rest.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseError, Result};

/// One of the two binary operations: `H` is horizontal juxtaposition (the
/// white triangle), `V` is vertical juxtaposition (the black triangle).
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Op {
    H,
    V,
}

impl Op {
    pub const BOTH: [Op; 2] = [Op::H, Op::V];

    pub fn opposite(self) -> Op {
        match self {
            Op::H => Op::V,
            Op::V => Op::H,
        }
    }

    /// ASCII spelling used by the monomial grammar.
    pub fn symbol(self) -> char {
        match self {
            Op::H => 'h',
            Op::V => 'v',
        }
    }

    pub fn glyph(self) -> char {
        match self {
            Op::H => '△',
            Op::V => '▲',
        }
    }

    fn tag(self) -> u8 {
        match self {
            Op::H => 1,
            Op::V => 2,
        }
    }
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Op::H => f.write_str("H"),
            Op::V => f.write_str("V"),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dir {
    Left,
    Right,
}

/// Path from the root to a node; serialized as a string of `0` (left) and
/// `1` (right), the empty string being the root.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Position(pub Vec<Dir>);

impl Position {
    pub fn root() -> Position {
        Position(Vec::new())
    }

    pub fn child(&self, dir: Dir) -> Position {
        let mut p = self.0.clone();
        p.push(dir);
        Position(p)
    }

    pub fn join(&self, other: &Position) -> Position {
        let mut p = self.0.clone();
        p.extend_from_slice(&other.0);
        Position(p)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_bits(&self) -> String {
        self.0
            .iter()
            .map(|d| match d {
                Dir::Left => '0',
                Dir::Right => '1',
            })
            .collect()
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            f.write_str("root")
        } else {
            f.write_str(&self.to_bits())
        }
    }
}

impl fmt::Debug for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Position({self})")
    }
}

impl FromStr for Position {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(Dir::Left),
                '1' => Ok(Dir::Right),
                _ => Err(Error::Certificate(format!("bad position string `{s}`"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Position)
    }
}

impl From<Position> for String {
    fn from(p: Position) -> String {
        p.to_bits()
    }
}

impl TryFrom<String> for Position {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// A tree monomial.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tree {
    Leaf(u32),
    Node(Op, Arc<Tree>, Arc<Tree>),
}

impl Tree {
    pub fn leaf(label: u32) -> Tree {
        Tree::Leaf(label)
    }

    pub fn node(op: Op, left: Tree, right: Tree) -> Tree {
        Tree::Node(op, Arc::new(left), Arc::new(right))
    }

    pub fn op(&self) -> Option<Op> {
        match self {
            Tree::Leaf(_) => None,
            Tree::Node(op, _, _) => Some(*op),
        }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, Tree::Leaf(_))
    }

    pub fn arity(&self) -> usize {
        match self {
            Tree::Leaf(_) => 1,
            Tree::Node(_, l, r) => l.arity() + r.arity(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Tree::Leaf(_) => 0,
            Tree::Node(_, l, r) => 1 + l.depth().max(r.depth()),
        }
    }

    /// Leaf labels read left to right.
    pub fn leaves(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(8);
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<u32>) {
        match self {
            Tree::Leaf(l) => out.push(*l),
            Tree::Node(_, l, r) => {
                l.collect_leaves(out);
                r.collect_leaves(out);
            }
        }
    }

    /// True when the leaf labels are a permutation of `1..=arity`.
    pub fn is_standard(&self) -> bool {
        is_permutation(&self.leaves())
    }

    pub fn subtree(&self, pos: &Position) -> Option<&Tree> {
        let mut t = self;
        for d in &pos.0 {
            match t {
                Tree::Leaf(_) => return None,
                Tree::Node(_, l, r) => {
                    t = match d {
                        Dir::Left => l,
                        Dir::Right => r,
                    }
                }
            }
        }
        Some(t)
    }

    /// Replaces the subtree at `pos`, sharing everything off the path.
    pub fn replace_at(&self, pos: &Position, new: Tree) -> Option<Tree> {
        self.replace_from(&pos.0, new)
    }

    fn replace_from(&self, path: &[Dir], new: Tree) -> Option<Tree> {
        let Some((first, rest)) = path.split_first() else {
            return Some(new);
        };
        match self {
            Tree::Leaf(_) => None,
            Tree::Node(op, l, r) => Some(match first {
                Dir::Left => Tree::Node(*op, Arc::new(l.replace_from(rest, new)?), r.clone()),
                Dir::Right => Tree::Node(*op, l.clone(), Arc::new(r.replace_from(rest, new)?)),
            }),
        }
    }

    pub fn relabel(&self, f: &impl Fn(u32) -> u32) -> Tree {
        match self {
            Tree::Leaf(l) => Tree::Leaf(f(*l)),
            Tree::Node(op, l, r) => Tree::node(*op, l.relabel(f), r.relabel(f)),
        }
    }

    /// The same tree with leaves relabeled `1..=n` left to right.
    pub fn shape(&self) -> Tree {
        let mut next = 0;
        self.shape_from(&mut next)
    }

    fn shape_from(&self, next: &mut u32) -> Tree {
        match self {
            Tree::Leaf(_) => {
                *next += 1;
                Tree::Leaf(*next)
            }
            Tree::Node(op, l, r) => {
                let l = l.shape_from(next);
                let r = r.shape_from(next);
                Tree::node(*op, l, r)
            }
        }
    }

    /// Operadic partial composition `self ∘_i u`: the leaf labeled `i` is
    /// replaced by `u`, whose labels are shifted up by `i - 1`; labels of
    /// `self` above `i` are shifted up by `arity(u) - 1`.
    pub fn partial_compose(&self, i: usize, u: &Tree) -> Result<Tree> {
        let n = self.arity();
        if i == 0 || i > n {
            return Err(Error::IndexOutOfRange { index: i, len: n });
        }
        let m = u.arity() as u32;
        let i = i as u32;
        let inserted = u.relabel(&|l| l + i - 1);
        Ok(self.compose_at(i, m, &inserted))
    }

    fn compose_at(&self, i: u32, m: u32, inserted: &Tree) -> Tree {
        match self {
            Tree::Leaf(l) if *l == i => inserted.clone(),
            Tree::Leaf(l) if *l > i => Tree::Leaf(l + m - 1),
            Tree::Leaf(l) => Tree::Leaf(*l),
            Tree::Node(op, l, r) => Tree::node(
                *op,
                l.compose_at(i, m, inserted),
                r.compose_at(i, m, inserted),
            ),
        }
    }

    /// Functional word for the nonsymmetric tree, leaves numbered left to
    /// right: `V(H(x1,x2),x3)`.
    pub fn to_word(&self) -> String {
        fn go(t: &Tree, next: &mut u32, out: &mut String) {
            match t {
                Tree::Leaf(_) => {
                    *next += 1;
                    out.push('x');
                    out.push_str(&next.to_string());
                }
                Tree::Node(op, l, r) => {
                    out.push_str(&op.to_string());
                    out.push('(');
                    go(l, next, out);
                    out.push(',');
                    go(r, next, out);
                    out.push(')');
                }
            }
        }
        let mut out = String::new();
        go(self, &mut 0, &mut out);
        out
    }

    /// Preorder byte encoding: tag 0 plus a LEB128 label for leaves, tag 1/2
    /// for `H`/`V` nodes. Prefix-free, hence injective.
    pub fn canonical_key(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(2 * self.arity() + 2);
        self.write_key(&mut out);
        out
    }

    fn write_key(&self, out: &mut Vec<u8>) {
        match self {
            Tree::Leaf(l) => {
                out.push(0);
                write_varint(out, *l);
            }
            Tree::Node(op, l, r) => {
                out.push(op.tag());
                l.write_key(out);
                r.write_key(out);
            }
        }
    }

    /// Inverse of [`Tree::canonical_key`].
    pub fn from_key(key: &[u8]) -> Option<Tree> {
        let mut at = 0;
        let t = Tree::read_key(key, &mut at)?;
        (at == key.len()).then_some(t)
    }

    fn read_key(key: &[u8], at: &mut usize) -> Option<Tree> {
        let tag = *key.get(*at)?;
        *at += 1;
        match tag {
            0 => read_varint(key, at).map(Tree::Leaf),
            1 | 2 => {
                let op = if tag == 1 { Op::H } else { Op::V };
                let l = Tree::read_key(key, at)?;
                let r = Tree::read_key(key, at)?;
                Some(Tree::node(op, l, r))
            }
            _ => None,
        }
    }

    /// Pretty-prints with the given identifier for each label (`names[l-1]`).
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> NamedTree<'a> {
        NamedTree { tree: self, names }
    }

    /// All node positions in preorder.
    pub fn positions(&self) -> Vec<Position> {
        let mut out = Vec::new();
        let mut path = Vec::new();
        self.collect_positions(&mut path, &mut out);
        out
    }

    fn collect_positions(&self, path: &mut Vec<Dir>, out: &mut Vec<Position>) {
        out.push(Position(path.clone()));
        if let Tree::Node(_, l, r) = self {
            path.push(Dir::Left);
            l.collect_positions(path, out);
            path.pop();
            path.push(Dir::Right);
            r.collect_positions(path, out);
            path.pop();
        }
    }
}

pub(crate) fn write_varint(out: &mut Vec<u8>, mut v: u32) {
    loop {
        let byte = (v & 0x7f) as u8;
        v >>= 7;
        if v == 0 {
            out.push(byte);
            return;
        }
        out.push(byte | 0x80);
    }
}

pub(crate) fn read_varint(key: &[u8], at: &mut usize) -> Option<u32> {
    let mut v: u32 = 0;
    for shift in (0..35).step_by(7) {
        let b = *key.get(*at)?;
        *at += 1;
        v |= ((b & 0x7f) as u32) << shift;
        if b & 0x80 == 0 {
            return Some(v);
        }
    }
    None
}

pub(crate) fn is_permutation(labels: &[u32]) -> bool {
    let n = labels.len();
    let mut seen = vec![false; n];
    for &l in labels {
        let l = l as usize;
        if l == 0 || l > n || seen[l - 1] {
            return false;
        }
        seen[l - 1] = true;
    }
    true
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tree::Leaf(l) => write!(f, "x{l}"),
            Tree::Node(op, l, r) => write!(f, "({l} {} {r})", op.symbol()),
        }
    }
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Tree {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        parse_monomial(s)
    }
}

pub struct NamedTree<'a> {
    tree: &'a Tree,
    names: &'a [String],
}

impl fmt::Display for NamedTree<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.tree {
            Tree::Leaf(l) => match self.names.get(*l as usize - 1) {
                Some(name) => f.write_str(name),
                None => write!(f, "x{l}"),
            },
            Tree::Node(op, l, r) => write!(
                f,
                "({} {} {})",
                l.display_with(self.names),
                op.symbol(),
                r.display_with(self.names)
            ),
        }
    }
}

// ---------------------------------------------------------------------------
// Parsing

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Token<'a> {
    Open,
    Close,
    Ident(&'a str),
}

pub(crate) fn tokenize(text: &str) -> Result<Vec<(usize, Token<'_>)>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c == '(' {
            out.push((i, Token::Open));
            chars.next();
        } else if c == ')' {
            out.push((i, Token::Close));
            chars.next();
        } else if is_ident_char(c) {
            let start = i;
            let mut end = i;
            while let Some(&(j, c)) = chars.peek() {
                if !is_ident_char(c) {
                    break;
                }
                end = j + c.len_utf8();
                chars.next();
            }
            out.push((start, Token::Ident(&text[start..end])));
        } else {
            return Err(ParseError::syntax(i, format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

pub(crate) fn op_from_token(tok: &str) -> Option<Op> {
    match tok {
        "h" | "H" => Some(Op::H),
        "v" | "V" => Some(Op::V),
        _ => None,
    }
}

enum RawTree<'a> {
    Leaf(&'a str, usize),
    Node(Op, Box<RawTree<'a>>, Box<RawTree<'a>>),
}

struct Parser<'a> {
    tokens: Vec<(usize, Token<'a>)>,
    at: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn offset(&self) -> usize {
        self.tokens.get(self.at).map_or(self.end, |(o, _)| *o)
    }

    fn next(&mut self) -> Option<(usize, Token<'a>)> {
        let t = self.tokens.get(self.at).cloned();
        self.at += 1;
        t
    }

    fn expr(&mut self) -> Result<RawTree<'a>, ParseError> {
        let offset = self.offset();
        match self.next() {
            Some((o, Token::Ident(name))) => Ok(RawTree::Leaf(name, o)),
            Some((_, Token::Open)) => {
                let left = self.expr()?;
                let op_offset = self.offset();
                let op = match self.next() {
                    Some((_, Token::Ident(tok))) => op_from_token(tok).ok_or_else(|| {
                        ParseError::syntax(op_offset, format!("expected `h` or `v`, found `{tok}`"))
                    })?,
                    Some(_) => return Err(ParseError::syntax(op_offset, "expected `h` or `v`")),
                    None => return Err(ParseError::syntax(op_offset, "unexpected end of input")),
                };
                let right = self.expr()?;
                let close_offset = self.offset();
                match self.next() {
                    Some((_, Token::Close)) => {
                        Ok(RawTree::Node(op, Box::new(left), Box::new(right)))
                    }
                    Some(_) => Err(ParseError::syntax(close_offset, "expected `)`")),
                    None => Err(ParseError::syntax(close_offset, "unexpected end of input")),
                }
            }
            Some((_, Token::Close)) => Err(ParseError::syntax(offset, "unexpected `)`")),
            None => Err(ParseError::syntax(offset, "unexpected end of input")),
        }
    }
}

fn x_index(name: &str) -> Option<u32> {
    let digits = name.strip_prefix('x')?;
    if digits.is_empty() || digits.starts_with('0') || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok().filter(|&k| k >= 1)
}

/// Assigns labels to identifiers: `x<k>` forms keep index `k` when every
/// identifier has that form, otherwise labels follow first occurrence.
pub(crate) struct LabelMap {
    pub names: Vec<String>,
    explicit: bool,
    allow_repeats: bool,
}

impl LabelMap {
    fn new(all_names: &[(&str, usize)], allow_repeats: bool) -> LabelMap {
        let explicit = !all_names.is_empty() && all_names.iter().all(|(n, _)| x_index(n).is_some());
        LabelMap {
            names: Vec::new(),
            explicit,
            allow_repeats,
        }
    }

    fn label(&mut self, name: &str, offset: usize) -> Result<u32, ParseError> {
        if self.explicit {
            let k = x_index(name).expect("checked in new") as usize;
            if self.names.len() < k {
                self.names.resize(k, String::new());
            }
            if !self.names[k - 1].is_empty() && !self.allow_repeats {
                return Err(ParseError::DuplicateLeaf {
                    name: name.to_string(),
                    offset,
                });
            }
            self.names[k - 1] = name.to_string();
            return Ok(k as u32);
        }
        if let Some(i) = self.names.iter().position(|n| n == name) {
            if !self.allow_repeats {
                return Err(ParseError::DuplicateLeaf {
                    name: name.to_string(),
                    offset,
                });
            }
            return Ok(i as u32 + 1);
        }
        self.names.push(name.to_string());
        Ok(self.names.len() as u32)
    }
}

fn parse_with(text: &str, allow_repeats: bool) -> Result<(Tree, Vec<String>), ParseError> {
    let tokens = tokenize(text)?;
    let mut parser = Parser {
        tokens,
        at: 0,
        end: text.len(),
    };
    let raw = parser.expr()?;
    if parser.at < parser.tokens.len() {
        return Err(ParseError::syntax(parser.offset(), "trailing input"));
    }
    let mut idents = Vec::new();
    collect_idents(&raw, &mut idents);
    let mut map = LabelMap::new(&idents, allow_repeats);
    let tree = build(&raw, &mut map)?;
    if !allow_repeats {
        let labels = tree.leaves();
        if !is_permutation(&labels) {
            let arity = labels.len();
            return Err(ParseError::NotAPermutation { labels, arity });
        }
    }
    Ok((tree, map.names))
}

fn collect_idents<'a>(raw: &RawTree<'a>, out: &mut Vec<(&'a str, usize)>) {
    match raw {
        RawTree::Leaf(n, o) => out.push((n, *o)),
        RawTree::Node(_, l, r) => {
            collect_idents(l, out);
            collect_idents(r, out);
        }
    }
}

fn build(raw: &RawTree<'_>, map: &mut LabelMap) -> Result<Tree, ParseError> {
    Ok(match raw {
        RawTree::Leaf(name, o) => Tree::Leaf(map.label(name, *o)?),
        RawTree::Node(op, l, r) => Tree::node(*op, build(l, map)?, build(r, map)?),
    })
}

/// Parses a monomial whose identifiers are looked up in `names`
/// (`names[l - 1]` is the identifier of label `l`).
pub fn parse_monomial_with(text: &str, names: &[String]) -> Result<Tree, ParseError> {
    let tokens = tokenize(text)?;
    let mut parser = Parser {
        tokens,
        at: 0,
        end: text.len(),
    };
    let raw = parser.expr()?;
    if parser.at < parser.tokens.len() {
        return Err(ParseError::syntax(parser.offset(), "trailing input"));
    }
    let mut idents = Vec::new();
    collect_idents(&raw, &mut idents);
    let mut seen = vec![false; names.len()];
    for (name, offset) in idents {
        let Some(i) = names.iter().position(|n| n == name) else {
            return Err(ParseError::UnknownIdentifier {
                name: name.to_string(),
                offset,
            });
        };
        if std::mem::replace(&mut seen[i], true) {
            return Err(ParseError::DuplicateLeaf {
                name: name.to_string(),
                offset,
            });
        }
    }
    fn build_named(raw: &RawTree<'_>, names: &[String]) -> Tree {
        match raw {
            RawTree::Leaf(name, _) => {
                Tree::Leaf(names.iter().position(|n| n == name).expect("checked") as u32 + 1)
            }
            RawTree::Node(op, l, r) => {
                Tree::node(*op, build_named(l, names), build_named(r, names))
            }
        }
    }
    let tree = build_named(&raw, names);
    let labels = tree.leaves();
    if labels.len() != names.len() {
        let arity = names.len();
        return Err(ParseError::NotAPermutation { labels, arity });
    }
    Ok(tree)
}

/// Parses `expr := ident | "(" expr ("h"|"v") expr ")"` into a standard
/// monomial.
pub fn parse_monomial(text: &str) -> Result<Tree, ParseError> {
    parse_with(text, false).map(|(t, _)| t)
}

/// Like [`parse_monomial`], also returning the identifier of each label.
pub fn parse_named(text: &str) -> Result<(Tree, Vec<String>), ParseError> {
    parse_with(text, false)
}

/// Accepts repeated identifiers (a repeated identifier reuses its label);
/// the result need not be standard.
pub fn parse_lenient(text: &str) -> Result<(Tree, Vec<String>), ParseError> {
    parse_with(text, true)
}

// ---------------------------------------------------------------------------
// Dihedral symmetries

/// An element of the dihedral group of the square acting on monomials.
///
/// Applied as: reverse the operands of every `H` node if `flip_h`, of every
/// `V` node if `flip_v` (decided on the original labels), then swap `H` and
/// `V` everywhere if `transpose`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Symmetry {
    pub flip_h: bool,
    pub flip_v: bool,
    pub transpose: bool,
}

impl Symmetry {
    pub const IDENTITY: Symmetry = Symmetry {
        flip_h: false,
        flip_v: false,
        transpose: false,
    };
    pub const FLIP_H: Symmetry = Symmetry {
        flip_h: true,
        flip_v: false,
        transpose: false,
    };
    pub const FLIP_V: Symmetry = Symmetry {
        flip_h: false,
        flip_v: true,
        transpose: false,
    };
    pub const TRANSPOSE: Symmetry = Symmetry {
        flip_h: false,
        flip_v: false,
        transpose: true,
    };

    pub fn all() -> [Symmetry; 8] {
        let mut out = [Symmetry::IDENTITY; 8];
        for (i, g) in out.iter_mut().enumerate() {
            *g = Symmetry {
                flip_h: i & 1 != 0,
                flip_v: i & 2 != 0,
                transpose: i & 4 != 0,
            };
        }
        out
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(self, first: Symmetry) -> Symmetry {
        // Conjugating by the transpose swaps the two flips.
        let (h2, v2) = if first.transpose {
            (self.flip_v, self.flip_h)
        } else {
            (self.flip_h, self.flip_v)
        };
        Symmetry {
            flip_h: first.flip_h ^ h2,
            flip_v: first.flip_v ^ v2,
            transpose: first.transpose ^ self.transpose,
        }
    }

    pub fn inverse(self) -> Symmetry {
        Symmetry::all()
            .into_iter()
            .find(|g| g.after(self) == Symmetry::IDENTITY)
            .expect("group element has an inverse")
    }

    pub fn apply(self, t: &Tree) -> Tree {
        match t {
            Tree::Leaf(l) => Tree::Leaf(*l),
            Tree::Node(op, l, r) => {
                let l = self.apply(l);
                let r = self.apply(r);
                let swap = match op {
                    Op::H => self.flip_h,
                    Op::V => self.flip_v,
                };
                let op = if self.transpose { op.opposite() } else { *op };
                if swap {
                    Tree::node(op, r, l)
                } else {
                    Tree::node(op, l, r)
                }
            }
        }
    }
}

pub fn apply_symmetry(t: &Tree, g: Symmetry) -> Tree {
    g.apply(t)
}

// ---------------------------------------------------------------------------
// Enumeration

pub const DEFAULT_SHAPE_LIMIT: usize = 10;

/// All `2^(n-1) Catalan(n-1)` operation-labeled binary shapes with `n`
/// leaves, identity leaf labeling, in a fixed order: by size of the left
/// subtree, then root operation, then left and right subshapes.
pub fn enumerate_shapes(n: usize) -> Result<Vec<Tree>> {
    enumerate_shapes_with_limit(n, DEFAULT_SHAPE_LIMIT)
}

pub fn enumerate_shapes_with_limit(n: usize, limit: usize) -> Result<Vec<Tree>> {
    if n == 0 || n > limit {
        return Err(Error::LimitExceeded {
            what: "shape arity",
            requested: n,
            limit,
        });
    }
    let mut by_size: Vec<Vec<Tree>> = vec![Vec::new(), vec![Tree::Leaf(0)]];
    for k in 2..=n {
        let mut here = Vec::new();
        for left in 1..k {
            for op in Op::BOTH {
                for l in &by_size[left] {
                    for r in &by_size[k - left] {
                        here.push(Tree::node(op, l.clone(), r.clone()));
                    }
                }
            }
        }
        by_size.push(here);
    }
    Ok(by_size.swap_remove(n).iter().map(Tree::shape).collect())
}

pub fn catalan(n: usize) -> u64 {
    let mut c: u64 = 1;
    for i in 0..n as u64 {
        c = c * 2 * (2 * i + 1) / (i + 2);
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> Tree {
        parse_monomial(s).unwrap()
    }

    fn n(op: Op, l: Tree, r: Tree) -> Tree {
        Tree::node(op, l, r)
    }

    #[test]
    fn parses_grammar_examples() {
        assert_eq!(t("(a h b)"), n(Op::H, Tree::Leaf(1), Tree::Leaf(2)));
        assert_eq!(
            t("((a h b) v (c h d))"),
            n(
                Op::V,
                n(Op::H, Tree::Leaf(1), Tree::Leaf(2)),
                n(Op::H, Tree::Leaf(3), Tree::Leaf(4))
            )
        );
        assert_eq!(t("(x2 h x1)"), n(Op::H, Tree::Leaf(2), Tree::Leaf(1)));
        // identifiers named like the operations are positional
        assert_eq!(t("(h v v)"), n(Op::V, Tree::Leaf(1), Tree::Leaf(2)));
    }

    #[test]
    fn parse_errors() {
        assert_eq!(
            parse_monomial("(a h"),
            Err(ParseError::Syntax {
                offset: 4,
                message: "unexpected end of input".into()
            })
        );
        assert!(matches!(
            parse_monomial("(a q b)"),
            Err(ParseError::Syntax { offset: 3, .. })
        ));
        assert!(matches!(
            parse_monomial("(a h b))"),
            Err(ParseError::Syntax { offset: 7, .. })
        ));
        assert_eq!(
            parse_monomial("(a h a)"),
            Err(ParseError::DuplicateLeaf {
                name: "a".into(),
                offset: 5
            })
        );
        assert!(matches!(
            parse_monomial("(x1 h x3)"),
            Err(ParseError::NotAPermutation { .. })
        ));
        let (lenient, names) = parse_lenient("(a h a)").unwrap();
        assert_eq!(lenient.leaves(), vec![1, 1]);
        assert_eq!(names, vec!["a"]);
    }

    #[test]
    fn named_display_round_trip() {
        let (tree, names) = parse_named("((a h b) v (c h (d v e)))").unwrap();
        assert_eq!(
            tree.display_with(&names).to_string(),
            "((a h b) v (c h (d v e)))"
        );
        assert_eq!(tree.to_string(), "((x1 h x2) v (x3 h (x4 v x5)))");
    }

    #[test]
    fn partial_composition() {
        let u = t("(a h b)");
        assert_eq!(Tree::Leaf(1).partial_compose(1, &u).unwrap(), u);
        assert_eq!(
            t("(a h b)").partial_compose(1, &t("(a v b)")).unwrap(),
            n(Op::H, n(Op::V, Tree::Leaf(1), Tree::Leaf(2)), Tree::Leaf(3))
        );
        assert_eq!(
            t("(x2 h x1)").partial_compose(1, &u).unwrap(),
            t("(x3 h (x1 h x2))")
        );
        assert_eq!(
            u.partial_compose(3, &u),
            Err(Error::IndexOutOfRange { index: 3, len: 2 })
        );
    }

    #[test]
    fn words() {
        assert_eq!(Tree::Leaf(1).to_word(), "x1");
        assert_eq!(t("(a h b)").to_word(), "H(x1,x2)");
        assert_eq!(t("((a h b) v c)").to_word(), "V(H(x1,x2),x3)");
        assert_eq!(t("(x2 h x1)").to_word(), "H(x1,x2)");
    }

    #[test]
    fn symmetries() {
        let ab = t("(a h b)");
        assert_eq!(Symmetry::FLIP_H.apply(&ab), t("(x2 h x1)"));
        assert_eq!(Symmetry::TRANSPOSE.apply(&ab), t("(a v b)"));
        assert_eq!(Symmetry::FLIP_V.apply(&ab), ab);
        let conj = Symmetry::TRANSPOSE.after(Symmetry::FLIP_H.after(Symmetry::TRANSPOSE));
        assert_eq!(conj, Symmetry::FLIP_V);
    }

    #[test]
    fn shape_counts_small() {
        assert_eq!(enumerate_shapes(1).unwrap(), vec![Tree::Leaf(1)]);
        assert_eq!(enumerate_shapes(2).unwrap().len(), 2);
        assert_eq!(enumerate_shapes(3).unwrap().len(), 8);
        assert_eq!(enumerate_shapes(4).unwrap().len(), 40);
        assert!(matches!(
            enumerate_shapes(0),
            Err(Error::LimitExceeded { .. })
        ));
        assert!(matches!(
            enumerate_shapes(11),
            Err(Error::LimitExceeded { .. })
        ));
    }

    #[test]
    fn keys_discriminate_constructors() {
        assert_ne!(Tree::Leaf(1).canonical_key(), t("(a h b)").canonical_key());
        assert_ne!(t("(a h b)").canonical_key(), t("(a v b)").canonical_key());
        let big = Tree::Leaf(300);
        assert_eq!(Tree::from_key(&big.canonical_key()), Some(big));
        assert_eq!(Tree::from_key(&[1, 0, 1]), None);
    }

    #[test]
    fn positions_and_replacement() {
        let tree = t("((a h b) v c)");
        let pos: Position = "01".parse().unwrap();
        assert_eq!(tree.subtree(&pos), Some(&Tree::Leaf(2)));
        assert_eq!(tree.subtree(&"011".parse().unwrap()), None);
        let replaced = tree.replace_at(&pos, Tree::Leaf(9)).unwrap();
        assert_eq!(replaced.leaves(), vec![1, 9, 3]);
        assert_eq!(tree.positions().len(), 5);
        assert_eq!(Position::root().to_string(), "root");
    }
}
