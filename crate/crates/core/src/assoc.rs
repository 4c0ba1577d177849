//! Alternating (nonbinary) trees: the normal form of a monomial modulo the
//! two associative laws.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, ParseError, Result};
use crate::trees::{is_permutation, op_from_token, tokenize, write_varint, Op, Token, Tree};

/// Plane tree whose internal nodes have at least two children and whose
/// operations alternate from one level to the next.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AltTree {
    Leaf(u32),
    Node(Op, Vec<AltTree>),
}

impl AltTree {
    /// Builds an `op` node, absorbing children that are themselves `op`
    /// nodes. A single resulting child is returned as is.
    pub fn join(op: Op, children: impl IntoIterator<Item = AltTree>) -> AltTree {
        let mut flat = Vec::new();
        for c in children {
            match c {
                AltTree::Node(o, cs) if o == op => flat.extend(cs),
                other => flat.push(other),
            }
        }
        if flat.len() == 1 {
            flat.pop().unwrap()
        } else {
            AltTree::Node(op, flat)
        }
    }

    pub fn op(&self) -> Option<Op> {
        match self {
            AltTree::Leaf(_) => None,
            AltTree::Node(op, _) => Some(*op),
        }
    }

    pub fn children(&self) -> &[AltTree] {
        match self {
            AltTree::Leaf(_) => &[],
            AltTree::Node(_, cs) => cs,
        }
    }

    pub fn arity(&self) -> usize {
        match self {
            AltTree::Leaf(_) => 1,
            AltTree::Node(_, cs) => cs.iter().map(AltTree::arity).sum(),
        }
    }

    pub fn leaves(&self) -> Vec<u32> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<u32>) {
        match self {
            AltTree::Leaf(l) => out.push(*l),
            AltTree::Node(_, cs) => cs.iter().for_each(|c| c.collect_leaves(out)),
        }
    }

    /// Checks the alternation and branching invariants.
    pub fn is_valid(&self) -> bool {
        match self {
            AltTree::Leaf(_) => true,
            AltTree::Node(op, cs) => {
                cs.len() >= 2 && cs.iter().all(|c| c.op() != Some(*op) && c.is_valid())
            }
        }
    }

    /// Same tree with leaves relabeled `1..=n` left to right.
    pub fn shape(&self) -> AltTree {
        let mut next = 0;
        self.shape_from(&mut next)
    }

    fn shape_from(&self, next: &mut u32) -> AltTree {
        match self {
            AltTree::Leaf(_) => {
                *next += 1;
                AltTree::Leaf(*next)
            }
            AltTree::Node(op, cs) => {
                AltTree::Node(*op, cs.iter().map(|c| c.shape_from(next)).collect())
            }
        }
    }

    pub fn relabel(&self, f: &impl Fn(u32) -> u32) -> AltTree {
        match self {
            AltTree::Leaf(l) => AltTree::Leaf(f(*l)),
            AltTree::Node(op, cs) => AltTree::Node(*op, cs.iter().map(|c| c.relabel(f)).collect()),
        }
    }

    /// Prefix-free byte encoding, used as a hash key.
    pub fn key(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(3 * self.arity());
        self.write_key(&mut out);
        out
    }

    fn write_key(&self, out: &mut Vec<u8>) {
        match self {
            AltTree::Leaf(l) => {
                out.push(0);
                write_varint(out, *l);
            }
            AltTree::Node(op, cs) => {
                out.push(if *op == Op::H { 1 } else { 2 });
                write_varint(out, cs.len() as u32);
                cs.iter().for_each(|c| c.write_key(out));
            }
        }
    }

    /// Display using identifiers `names[label - 1]` in the loose infix form
    /// accepted by [`parse_alternating_with`].
    pub fn infix_with<'a>(&'a self, names: &'a [String]) -> AltInfix<'a> {
        AltInfix { tree: self, names }
    }
}

/// `(x1 x2 x3)_h` style nested list.
impl fmt::Display for AltTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AltTree::Leaf(l) => write!(f, "x{l}"),
            AltTree::Node(op, cs) => {
                f.write_str("(")?;
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ")_{}", op.symbol())
            }
        }
    }
}

impl fmt::Debug for AltTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub struct AltInfix<'a> {
    tree: &'a AltTree,
    names: &'a [String],
}

impl fmt::Display for AltInfix<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(t: &AltTree, names: &[String], top: bool, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match t {
                AltTree::Leaf(l) => match names.get(*l as usize - 1) {
                    Some(n) => f.write_str(n),
                    None => write!(f, "x{l}"),
                },
                AltTree::Node(op, cs) => {
                    if !top {
                        f.write_str("(")?;
                    }
                    for (i, c) in cs.iter().enumerate() {
                        if i > 0 {
                            write!(f, " {} ", op.symbol())?;
                        }
                        go(c, names, false, f)?;
                    }
                    if !top {
                        f.write_str(")")?;
                    }
                    Ok(())
                }
            }
        }
        go(self.tree, self.names, true, f)
    }
}

/// Flattens every child carrying its parent's operation. Flattening is
/// confluent, so the result depends only on the associativity class.
pub fn to_alternating(t: &Tree) -> AltTree {
    match t {
        Tree::Leaf(l) => AltTree::Leaf(*l),
        Tree::Node(op, l, r) => AltTree::join(*op, [to_alternating(l), to_alternating(r)]),
    }
}

/// The representative that brackets every block to the right.
pub fn right_comb(a: &AltTree) -> Tree {
    match a {
        AltTree::Leaf(l) => Tree::Leaf(*l),
        AltTree::Node(op, cs) => {
            let mut it = cs.iter().rev().map(right_comb);
            let last = it.next().expect("internal node has children");
            it.fold(last, |acc, c| Tree::node(*op, c, acc))
        }
    }
}

/// Every binary tree whose alternating form is `a`.
pub fn binary_representatives(a: &AltTree) -> Vec<Tree> {
    match a {
        AltTree::Leaf(l) => vec![Tree::Leaf(*l)],
        AltTree::Node(op, cs) => {
            let reps: Vec<Vec<Tree>> = cs.iter().map(binary_representatives).collect();
            bracketings(*op, &reps)
        }
    }
}

fn bracketings(op: Op, items: &[Vec<Tree>]) -> Vec<Tree> {
    if items.len() == 1 {
        return items[0].clone();
    }
    let mut out = Vec::new();
    for split in 1..items.len() {
        let left = bracketings(op, &items[..split]);
        let right = bracketings(op, &items[split..]);
        for l in &left {
            for r in &right {
                out.push(Tree::node(op, l.clone(), r.clone()));
            }
        }
    }
    out
}

pub const DEFAULT_ALTERNATING_LIMIT: usize = 10;

/// All alternating trees with `n` leaves, identity labeling, in a fixed
/// order (root `H` before root `V`).
pub fn enumerate_alternating(n: usize) -> Result<Vec<AltTree>> {
    enumerate_alternating_with_limit(n, DEFAULT_ALTERNATING_LIMIT)
}

pub fn enumerate_alternating_with_limit(n: usize, limit: usize) -> Result<Vec<AltTree>> {
    if n == 0 || n > limit {
        return Err(Error::LimitExceeded {
            what: "alternating tree arity",
            requested: n,
            limit,
        });
    }
    if n == 1 {
        return Ok(vec![AltTree::Leaf(1)]);
    }
    let mut memo = AltMemo::default();
    let mut out = Vec::new();
    for op in Op::BOTH {
        out.extend(memo.rooted(n, op).iter().map(AltTree::shape));
    }
    Ok(out)
}

#[derive(Default)]
struct AltMemo {
    // (size, op) -> trees of that size that are a leaf or have root `op`
    rooted: HashMap<(usize, Op), Vec<AltTree>>,
    sequences: HashMap<(usize, Op), Vec<Vec<AltTree>>>,
}

impl AltMemo {
    /// Trees with `n` leaves whose root is `op` (a leaf when `n == 1`).
    fn rooted(&mut self, n: usize, op: Op) -> Vec<AltTree> {
        if n == 1 {
            return vec![AltTree::Leaf(0)];
        }
        if let Some(v) = self.rooted.get(&(n, op)) {
            return v.clone();
        }
        let child = op.opposite();
        let mut out = Vec::new();
        // at least two children, so the first one has fewer than n leaves
        for first in 1..n {
            let heads = self.rooted(first, child);
            let tails = self.child_sequences(n - first, child);
            for h in &heads {
                for t in &tails {
                    let mut seq = Vec::with_capacity(t.len() + 1);
                    seq.push(h.clone());
                    seq.extend(t.iter().cloned());
                    out.push(AltTree::Node(op, seq));
                }
            }
        }
        self.rooted.insert((n, op), out.clone());
        out
    }

    /// Sequences of trees (leaves or rooted at `child_op`) with `n` leaves in total.
    fn child_sequences(&mut self, n: usize, child_op: Op) -> Vec<Vec<AltTree>> {
        if let Some(v) = self.sequences.get(&(n, child_op)) {
            return v.clone();
        }
        let mut out = Vec::new();
        for first in 1..=n {
            let heads = self.rooted(first, child_op);
            let tails = if first == n {
                vec![Vec::new()]
            } else {
                self.child_sequences(n - first, child_op)
            };
            for h in &heads {
                for t in &tails {
                    let mut seq = Vec::with_capacity(t.len() + 1);
                    seq.push(h.clone());
                    seq.extend(t.iter().cloned());
                    out.push(seq);
                }
            }
        }
        self.sequences.insert((n, child_op), out.clone());
        out
    }
}

// ---------------------------------------------------------------------------
// Loose infix parsing: `expr := atom (op atom)*`, one operation per group,
// used for listing intermediate monomials modulo associativity.

struct AltParser<'a, 'n> {
    tokens: Vec<(usize, Token<'a>)>,
    at: usize,
    end: usize,
    names: Option<&'n [String]>,
    seen: Vec<String>,
}

impl<'a> AltParser<'a, '_> {
    fn offset(&self) -> usize {
        self.tokens.get(self.at).map_or(self.end, |(o, _)| *o)
    }

    fn peek(&self) -> Option<&Token<'a>> {
        self.tokens.get(self.at).map(|(_, t)| t)
    }

    fn expr(&mut self) -> Result<AltTree, ParseError> {
        let first = self.atom()?;
        let mut op: Option<Op> = None;
        let mut items = vec![first];
        while let Some(Token::Ident(tok)) = self.peek() {
            let offset = self.offset();
            let Some(this) = op_from_token(tok) else {
                return Err(ParseError::syntax(
                    offset,
                    format!("expected `h` or `v`, found `{tok}`"),
                ));
            };
            if op.is_some_and(|o| o != this) {
                return Err(ParseError::syntax(
                    offset,
                    "mixed operations need parentheses",
                ));
            }
            op = Some(this);
            self.at += 1;
            items.push(self.atom()?);
        }
        Ok(match op {
            None => items.pop().unwrap(),
            Some(op) => AltTree::join(op, items),
        })
    }

    fn atom(&mut self) -> Result<AltTree, ParseError> {
        let offset = self.offset();
        let tok = self.tokens.get(self.at).cloned();
        self.at += 1;
        match tok {
            Some((_, Token::Open)) => {
                let inner = self.expr()?;
                let close = self.offset();
                match self.tokens.get(self.at) {
                    Some((_, Token::Close)) => {
                        self.at += 1;
                        Ok(inner)
                    }
                    Some(_) => Err(ParseError::syntax(close, "expected `)`")),
                    None => Err(ParseError::syntax(close, "unexpected end of input")),
                }
            }
            Some((o, Token::Ident(name))) => self.label(name, o).map(AltTree::Leaf),
            Some((o, Token::Close)) => Err(ParseError::syntax(o, "unexpected `)`")),
            None => Err(ParseError::syntax(offset, "unexpected end of input")),
        }
    }

    fn label(&mut self, name: &str, offset: usize) -> Result<u32, ParseError> {
        if let Some(names) = self.names {
            return names
                .iter()
                .position(|n| n == name)
                .map(|i| i as u32 + 1)
                .ok_or_else(|| ParseError::UnknownIdentifier {
                    name: name.to_string(),
                    offset,
                });
        }
        if self.seen.iter().any(|n| n == name) {
            return Err(ParseError::DuplicateLeaf {
                name: name.to_string(),
                offset,
            });
        }
        self.seen.push(name.to_string());
        Ok(self.seen.len() as u32)
    }
}

fn parse_alt(text: &str, names: Option<&[String]>) -> Result<(AltTree, Vec<String>), ParseError> {
    let tokens = tokenize(text)?;
    let mut p = AltParser {
        tokens,
        at: 0,
        end: text.len(),
        names,
        seen: Vec::new(),
    };
    let tree = p.expr()?;
    if p.at < p.tokens.len() {
        return Err(ParseError::syntax(p.offset(), "trailing input"));
    }
    let labels = tree.leaves();
    if !is_permutation(&labels) {
        let arity = labels.len();
        return Err(ParseError::NotAPermutation { labels, arity });
    }
    Ok((tree, p.seen))
}

/// Parses loose infix such as `(a h b h c) v d`; identifiers are numbered by
/// first occurrence.
pub fn parse_alternating(text: &str) -> Result<(AltTree, Vec<String>), ParseError> {
    parse_alt(text, None)
}

/// Parses loose infix with a fixed identifier table (`names[label - 1]`).
pub fn parse_alternating_with(text: &str, names: &[String]) -> Result<AltTree, ParseError> {
    parse_alt(text, Some(names)).map(|(t, _)| t)
}

/// True when some internal node has two adjacent internal children, i.e.
/// some binary representative contains an interchange pattern.
pub fn has_adjacent_internal_children(a: &AltTree) -> bool {
    match a {
        AltTree::Leaf(_) => false,
        AltTree::Node(_, cs) => {
            cs.windows(2)
                .any(|w| w[0].op().is_some() && w[1].op().is_some())
                || cs.iter().any(has_adjacent_internal_children)
        }
    }
}
