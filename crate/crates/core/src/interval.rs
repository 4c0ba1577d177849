//! One-dimensional dyadic subdivisions: tree sequences, their bijection with
//! bracketings, and the piecewise-linear maps between two of them.

use std::fmt;

use crate::dyadic::Dyadic;
use crate::error::{Error, ParseError, Result};

/// Tree parent of a dyadic point of `(0, 1)`: for `a / 2^b` with `a` odd
/// and `b ≥ 2`, the one of `(a ± 1) / 2^b` whose lowest-terms exponent is
/// `b - 1`. `1/2` is the root and has none.
pub fn tree_parent(x: Dyadic) -> Option<Dyadic> {
    let (a, b) = (x.numerator(), x.exponent());
    if b < 2 || a % 2 == 0 {
        return None;
    }
    [a - 1, a + 1]
        .into_iter()
        .map(|c| Dyadic::new(c, b))
        .find(|p| p.exponent() == b - 1)
}

fn check_points(points: &[Dyadic]) -> Result<()> {
    for w in points.windows(2) {
        if w[0] >= w[1] {
            return Err(Error::TreeSequence(format!(
                "points not strictly increasing at {}",
                w[1]
            )));
        }
    }
    if let Some(p) = points.iter().find(|p| p.is_zero() || **p >= Dyadic::ONE) {
        return Err(Error::TreeSequence(format!("point {p} outside (0, 1)")));
    }
    Ok(())
}

/// True when every point has its tree parent in the set.
pub fn is_tree_sequence(points: &[Dyadic]) -> Result<bool> {
    check_points(points)?;
    Ok(points.iter().all(|&p| match tree_parent(p) {
        None => p == Dyadic::HALF,
        Some(parent) => points.binary_search(&parent).is_ok(),
    }))
}

/// Strictly increasing points of `(0, 1)` closed under tree parents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TreeSequence(Vec<Dyadic>);

impl TreeSequence {
    pub fn new(points: Vec<Dyadic>) -> Result<TreeSequence> {
        if !is_tree_sequence(&points)? {
            return Err(Error::TreeSequence(
                "some point lacks its tree parent".into(),
            ));
        }
        Ok(TreeSequence(points))
    }

    pub fn points(&self) -> &[Dyadic] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Lengths of the subintervals of `[0, 1]`.
    pub fn segment_lengths(&self) -> Vec<Dyadic> {
        let mut bounds = vec![Dyadic::ZERO];
        bounds.extend(self.0.iter().copied());
        bounds.push(Dyadic::ONE);
        bounds.windows(2).map(|w| w[1].abs_diff(w[0])).collect()
    }
}

impl fmt::Display for TreeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(Dyadic::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

/// An unlabeled plane binary tree, written with letters: `(ab)c`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Bracketing {
    Leaf,
    Pair(Box<Bracketing>, Box<Bracketing>),
}

impl Bracketing {
    pub fn pair(l: Bracketing, r: Bracketing) -> Bracketing {
        Bracketing::Pair(Box::new(l), Box::new(r))
    }

    pub fn leaves(&self) -> usize {
        match self {
            Bracketing::Leaf => 1,
            Bracketing::Pair(l, r) => l.leaves() + r.leaves(),
        }
    }

    /// All bracketings of `n` letters.
    pub fn all(n: usize) -> Vec<Bracketing> {
        if n <= 1 {
            return vec![Bracketing::Leaf];
        }
        let mut out = Vec::new();
        for k in 1..n {
            for l in Bracketing::all(k) {
                for r in Bracketing::all(n - k) {
                    out.push(Bracketing::pair(l.clone(), r));
                }
            }
        }
        out
    }

    fn write(&self, next: &mut u8, top: bool, out: &mut String) {
        match self {
            Bracketing::Leaf => {
                out.push(*next as char);
                *next += 1;
            }
            Bracketing::Pair(l, r) => {
                if !top {
                    out.push('(');
                }
                l.write(next, false, out);
                r.write(next, false, out);
                if !top {
                    out.push(')');
                }
            }
        }
    }
}

impl fmt::Display for Bracketing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.write(&mut b'a', true, &mut s);
        f.write_str(&s)
    }
}

impl std::str::FromStr for Bracketing {
    type Err = ParseError;

    /// Juxtaposition of letters, e.g. `a((bc)d)`; letter names are ignored.
    fn from_str(s: &str) -> Result<Self, ParseError> {
        let chars: Vec<(usize, char)> = s
            .char_indices()
            .filter(|(_, c)| !c.is_whitespace())
            .collect();
        let mut at = 0;
        let first = factor(&chars, &mut at, s.len())?;
        let tree = if at < chars.len() {
            let second = factor(&chars, &mut at, s.len())?;
            Bracketing::pair(first, second)
        } else {
            first
        };
        if let Some(&(o, _)) = chars.get(at) {
            return Err(ParseError::syntax(o, "trailing input"));
        }
        Ok(tree)
    }
}

fn factor(chars: &[(usize, char)], at: &mut usize, end: usize) -> Result<Bracketing, ParseError> {
    let Some(&(o, c)) = chars.get(*at) else {
        return Err(ParseError::syntax(end, "unexpected end of input"));
    };
    *at += 1;
    if c.is_alphabetic() {
        return Ok(Bracketing::Leaf);
    }
    if c != '(' {
        return Err(ParseError::syntax(o, format!("unexpected `{c}`")));
    }
    let l = factor(chars, at, end)?;
    let r = factor(chars, at, end)?;
    match chars.get(*at) {
        Some((_, ')')) => {
            *at += 1;
            Ok(Bracketing::pair(l, r))
        }
        Some(&(o, _)) => Err(ParseError::syntax(o, "expected `)`")),
        None => Err(ParseError::syntax(end, "unexpected end of input")),
    }
}

/// Records the midpoint of every bisection, recursively.
pub fn association_to_sequence(b: &Bracketing) -> TreeSequence {
    fn go(b: &Bracketing, lo: Dyadic, hi: Dyadic, out: &mut Vec<Dyadic>) {
        if let Bracketing::Pair(l, r) = b {
            let m = lo.midpoint(hi);
            go(l, lo, m, out);
            out.push(m);
            go(r, m, hi, out);
        }
    }
    let mut out = Vec::new();
    go(b, Dyadic::ZERO, Dyadic::ONE, &mut out);
    TreeSequence(out)
}

pub fn sequence_to_association(ts: &TreeSequence) -> Result<Bracketing> {
    fn go(points: &[Dyadic], lo: Dyadic, hi: Dyadic) -> Result<Bracketing> {
        if points.is_empty() {
            return Ok(Bracketing::Leaf);
        }
        let m = lo.midpoint(hi);
        let k = points
            .binary_search(&m)
            .map_err(|_| Error::TreeSequence(format!("midpoint {m} missing")))?;
        Ok(Bracketing::pair(
            go(&points[..k], lo, m)?,
            go(&points[k + 1..], m, hi)?,
        ))
    }
    go(&ts.0, Dyadic::ZERO, Dyadic::ONE)
}

/// Piecewise-linear homeomorphism of `[0, 1]` given by its breakpoints,
/// collinear breakpoints removed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PiecewiseLinearMap {
    points: Vec<(Dyadic, Dyadic)>,
}

impl PiecewiseLinearMap {
    pub fn identity() -> PiecewiseLinearMap {
        PiecewiseLinearMap {
            points: vec![(Dyadic::ZERO, Dyadic::ZERO), (Dyadic::ONE, Dyadic::ONE)],
        }
    }

    fn from_points(points: Vec<(Dyadic, Dyadic)>) -> Result<PiecewiseLinearMap> {
        for w in points.windows(2) {
            if w[0].0 >= w[1].0 || w[0].1 >= w[1].1 {
                return Err(Error::TreeSequence("map is not strictly increasing".into()));
            }
            slope_exp(w[0], w[1])?;
        }
        let mut kept: Vec<(Dyadic, Dyadic)> = vec![points[0]];
        for i in 1..points.len() - 1 {
            let prev = *kept.last().unwrap();
            if slope_exp(prev, points[i])? != slope_exp(points[i], points[i + 1])? {
                kept.push(points[i]);
            }
        }
        kept.push(*points.last().unwrap());
        Ok(PiecewiseLinearMap { points: kept })
    }

    pub fn breakpoints(&self) -> &[(Dyadic, Dyadic)] {
        &self.points
    }

    /// Base-2 logarithm of the slope of each piece.
    pub fn slopes(&self) -> Vec<i32> {
        self.points
            .windows(2)
            .map(|w| slope_exp(w[0], w[1]).expect("validated"))
            .collect()
    }

    pub fn eval(&self, x: Dyadic) -> Dyadic {
        let i = self
            .points
            .partition_point(|p| p.0 <= x)
            .clamp(1, self.points.len() - 1);
        let (x0, y0) = self.points[i - 1];
        let s = slope_exp(self.points[i - 1], self.points[i]).expect("validated");
        let dx = x.checked_sub(x0).expect("x within [0, 1]");
        y0 + dx.mul_pow2(s)
    }

    pub fn inverse(&self) -> PiecewiseLinearMap {
        PiecewiseLinearMap {
            points: self.points.iter().map(|&(x, y)| (y, x)).collect(),
        }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &PiecewiseLinearMap) -> PiecewiseLinearMap {
        let inv = self.inverse();
        let mut xs: Vec<Dyadic> = self.points.iter().map(|p| p.0).collect();
        xs.extend(other.points.iter().map(|p| inv.eval(p.0)));
        xs.sort();
        xs.dedup();
        let points = xs
            .into_iter()
            .map(|x| (x, other.eval(self.eval(x))))
            .collect();
        PiecewiseLinearMap::from_points(points).expect("composite of dyadic maps")
    }
}

fn slope_exp(a: (Dyadic, Dyadic), b: (Dyadic, Dyadic)) -> Result<i32> {
    let dx = b.0.abs_diff(a.0);
    let dy = b.1.abs_diff(a.1);
    dy.ratio_pow2(dx)
        .ok_or_else(|| Error::TreeSequence("slope is not a power of two".into()))
}

/// The map linear on each subinterval of `a` with `f(a_i) = b_i`.
pub fn thompson_map(a: &TreeSequence, b: &TreeSequence) -> Result<PiecewiseLinearMap> {
    if a.len() != b.len() {
        return Err(Error::TreeSequence(format!(
            "sizes differ: {} and {}",
            a.len(),
            b.len()
        )));
    }
    let mut points = vec![(Dyadic::ZERO, Dyadic::ZERO)];
    points.extend(a.0.iter().copied().zip(b.0.iter().copied()));
    points.push((Dyadic::ONE, Dyadic::ONE));
    PiecewiseLinearMap::from_points(points)
}

/// Segment lengths, in units of `1/128`, of the bracketings of two to five
/// letters as drawn in the standard table of tree sequences.
pub const SEGMENT_TABLE: [(&str, &[u64]); 22] = [
    ("ab", &[64, 64]),
    ("(ab)c", &[32, 32, 64]),
    ("a(bc)", &[64, 32, 32]),
    ("((ab)c)d", &[16, 16, 32, 64]),
    ("(a(bc))d", &[32, 16, 16, 64]),
    ("(ab)(cd)", &[32, 32, 32, 32]),
    ("a((bc)d)", &[64, 16, 16, 32]),
    ("a(b(cd))", &[64, 32, 16, 16]),
    ("(((ab)c)d)e", &[8, 8, 16, 32, 64]),
    ("((a(bc))d)e", &[16, 8, 8, 32, 64]),
    ("((ab)(cd))e", &[16, 16, 16, 16, 64]),
    ("(a((bc)d))e", &[32, 8, 8, 16, 64]),
    ("(a(b(cd)))e", &[32, 16, 8, 8, 64]),
    ("((ab)c)(de)", &[16, 16, 32, 32, 32]),
    ("(a(bc))(de)", &[32, 16, 16, 32, 32]),
    ("(ab)((cd)e)", &[32, 32, 16, 16, 32]),
    ("(ab)(c(de))", &[32, 32, 32, 16, 16]),
    ("a(((bc)d)e)", &[64, 8, 8, 16, 32]),
    ("a((b(cd))e)", &[64, 16, 8, 8, 32]),
    ("a((bc)(de))", &[64, 16, 16, 16, 16]),
    ("a(b((cd)e))", &[64, 32, 8, 8, 16]),
    ("a(b(c(de)))", &[64, 32, 16, 8, 8]),
];
