//! Dyadic block partitions of the open unit square and the geometric
//! realization of tree monomials.
//!
//! Coordinates are exact [`Dyadic`] values with the origin at the bottom
//! left; `H` places its second operand to the east, `V` to the north.

use std::fmt;

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::trees::{is_permutation, Op, Symmetry, Tree};

/// Open axis-aligned rectangle `(x1, x2) × (y1, y2)`.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Rect {
    pub x1: Dyadic,
    pub x2: Dyadic,
    pub y1: Dyadic,
    pub y2: Dyadic,
}

impl Rect {
    pub const UNIT: Rect = Rect {
        x1: Dyadic::ZERO,
        x2: Dyadic::ONE,
        y1: Dyadic::ZERO,
        y2: Dyadic::ONE,
    };

    pub fn new(x1: Dyadic, x2: Dyadic, y1: Dyadic, y2: Dyadic) -> Result<Rect> {
        if x1 >= x2 || y1 >= y2 {
            return Err(Error::InvalidPartition(format!(
                "degenerate rectangle {x1} {x2} {y1} {y2}"
            )));
        }
        Ok(Rect { x1, x2, y1, y2 })
    }

    pub fn width(&self) -> Dyadic {
        self.x2.abs_diff(self.x1)
    }

    pub fn height(&self) -> Dyadic {
        self.y2.abs_diff(self.y1)
    }

    pub fn area(&self) -> Dyadic {
        self.width() * self.height()
    }

    /// Closed containment of `other` in `self`.
    pub fn contains(&self, other: &Rect) -> bool {
        self.x1 <= other.x1 && other.x2 <= self.x2 && self.y1 <= other.y1 && other.y2 <= self.y2
    }

    /// True when the open rectangles meet.
    pub fn overlaps(&self, other: &Rect) -> bool {
        self.x1 < other.x2 && other.x1 < self.x2 && self.y1 < other.y2 && other.y1 < self.y2
    }

    pub fn mid_x(&self) -> Dyadic {
        self.x1.midpoint(self.x2)
    }

    pub fn mid_y(&self) -> Dyadic {
        self.y1.midpoint(self.y2)
    }

    /// Halves across `axis`: for [`Axis::X`] the hyperplane `x = mid`,
    /// giving (west, east); for [`Axis::Y`], (south, north).
    pub fn bisect(&self, axis: Axis) -> (Rect, Rect) {
        match axis {
            Axis::X => {
                let m = self.mid_x();
                (Rect { x2: m, ..*self }, Rect { x1: m, ..*self })
            }
            Axis::Y => {
                let m = self.mid_y();
                (Rect { y2: m, ..*self }, Rect { y1: m, ..*self })
            }
        }
    }

    /// Image of `self` (a rectangle of the unit square) under the affine map
    /// taking the unit square onto `outer`.
    pub fn scaled_into(&self, outer: &Rect) -> Rect {
        let w = outer.width();
        let h = outer.height();
        Rect {
            x1: outer.x1 + self.x1 * w,
            x2: outer.x1 + self.x2 * w,
            y1: outer.y1 + self.y1 * h,
            y2: outer.y1 + self.y2 * h,
        }
    }

    fn transformed(&self, g: Symmetry) -> Rect {
        let flip = |a: Dyadic, b: Dyadic| {
            (
                Dyadic::ONE.checked_sub(b).expect("inside unit square"),
                Dyadic::ONE.checked_sub(a).expect("inside unit square"),
            )
        };
        let mut r = *self;
        if g.flip_h {
            (r.x1, r.x2) = flip(r.x1, r.x2);
        }
        if g.flip_v {
            (r.y1, r.y2) = flip(r.y1, r.y2);
        }
        if g.transpose {
            r = Rect {
                x1: r.y1,
                x2: r.y2,
                y1: r.x1,
                y2: r.x2,
            };
        }
        r
    }

    fn touches_boundary(&self) -> bool {
        self.x1.is_zero() || self.y1.is_zero() || self.x2 == Dyadic::ONE || self.y2 == Dyadic::ONE
    }
}

impl fmt::Display for Rect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}) x ({}, {})", self.x1, self.x2, self.y1, self.y2)
    }
}

/// Coordinate axis normal to a bisecting hyperplane.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    X,
    Y,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Orientation {
    Horizontal,
    Vertical,
}

impl Orientation {
    /// The axis whose coordinate is constant along a cut of this orientation.
    pub fn normal_axis(self) -> Axis {
        match self {
            Orientation::Vertical => Axis::X,
            Orientation::Horizontal => Axis::Y,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Orientation::Horizontal => "horizontal",
            Orientation::Vertical => "vertical",
        }
    }
}

/// Maximal segment: `x = at, from < y < to` when vertical, `y = at,
/// from < x < to` when horizontal.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cut {
    pub orientation: Orientation,
    pub at: Dyadic,
    pub from: Dyadic,
    pub to: Dyadic,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct Block {
    pub rect: Rect,
    pub label: u32,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BlockClass {
    Interior,
    Border,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct MainCuts {
    pub horizontal: bool,
    pub vertical: bool,
}

impl MainCuts {
    pub fn both(&self) -> bool {
        self.horizontal && self.vertical
    }

    pub fn has(&self, o: Orientation) -> bool {
        match o {
            Orientation::Horizontal => self.horizontal,
            Orientation::Vertical => self.vertical,
        }
    }
}

/// Labeled blocks sorted by `(x1, y1)`. Labels are a permutation of
/// `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BlockPartition {
    blocks: Vec<Block>,
}

impl BlockPartition {
    pub fn unit() -> BlockPartition {
        BlockPartition {
            blocks: vec![Block {
                rect: Rect::UNIT,
                label: 1,
            }],
        }
    }

    /// Validates disjointness, total area and labeling.
    pub fn new(blocks: Vec<Block>) -> Result<BlockPartition> {
        if blocks.is_empty() {
            return Err(Error::InvalidPartition("no blocks".into()));
        }
        let mut area = Dyadic::ZERO;
        for (i, b) in blocks.iter().enumerate() {
            if b.rect.x1 >= b.rect.x2 || b.rect.y1 >= b.rect.y2 || !Rect::UNIT.contains(&b.rect) {
                return Err(Error::InvalidPartition(format!(
                    "block {} is not inside the unit square",
                    b.rect
                )));
            }
            if let Some(c) = blocks[..i].iter().find(|c| c.rect.overlaps(&b.rect)) {
                return Err(Error::InvalidPartition(format!(
                    "blocks {} and {} overlap",
                    c.rect, b.rect
                )));
            }
            area = area + b.rect.area();
        }
        if area != Dyadic::ONE {
            return Err(Error::InvalidPartition(format!(
                "blocks cover area {area}, not 1"
            )));
        }
        let labels: Vec<u32> = blocks.iter().map(|b| b.label).collect();
        if !is_permutation(&labels) {
            return Err(Error::InvalidPartition(format!(
                "labels {labels:?} are not a permutation"
            )));
        }
        Ok(BlockPartition::sorted(blocks))
    }

    fn sorted(mut blocks: Vec<Block>) -> BlockPartition {
        blocks.sort_by_key(|b| (b.rect.x1, b.rect.y1));
        BlockPartition { blocks }
    }

    /// Labels blocks `1..=n` in `(x1, y1)` order.
    fn from_rects(rects: Vec<Rect>) -> BlockPartition {
        let mut p = BlockPartition::sorted(
            rects
                .into_iter()
                .map(|rect| Block { rect, label: 0 })
                .collect(),
        );
        for (i, b) in p.blocks.iter_mut().enumerate() {
            b.label = i as u32 + 1;
        }
        p
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block_with_label(&self, label: u32) -> Option<&Block> {
        self.blocks.iter().find(|b| b.label == label)
    }

    pub fn rects(&self) -> Vec<Rect> {
        self.blocks.iter().map(|b| b.rect).collect()
    }

    pub fn total_area(&self) -> Dyadic {
        self.blocks
            .iter()
            .fold(Dyadic::ZERO, |acc, b| acc + b.rect.area())
    }

    /// The same blocks with labels reassigned in `(x1, y1)` order.
    pub fn unlabeled(&self) -> BlockPartition {
        BlockPartition::from_rects(self.rects())
    }

    /// Image under a dihedral symmetry of the square; labels travel with
    /// their blocks.
    pub fn transformed(&self, g: Symmetry) -> BlockPartition {
        BlockPartition::sorted(
            self.blocks
                .iter()
                .map(|b| Block {
                    rect: b.rect.transformed(g),
                    label: b.label,
                })
                .collect(),
        )
    }

    /// Bisects the block at 0-based `index` in the current order and
    /// relabels all blocks by position.
    pub fn bisect(&self, index: usize, axis: Axis) -> Result<BlockPartition> {
        let Some(target) = self.blocks.get(index) else {
            return Err(Error::IndexOutOfRange {
                index: index + 1,
                len: self.blocks.len(),
            });
        };
        let (a, b) = target.rect.bisect(axis);
        let mut rects = self.rects();
        rects[index] = a;
        rects.push(b);
        Ok(BlockPartition::from_rects(rects))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for b in &self.blocks {
            let r = b.rect;
            out.push_str(&format!(
                "{} {} {} {} {}\n",
                r.x1, r.x2, r.y1, r.y2, b.label
            ));
        }
        out
    }

    /// Reads the text format: one block per line, `x1 x2 y1 y2 label`.
    /// Blank lines and `#` comments are skipped. Labels may be omitted on
    /// every line, in which case blocks are labeled in `(x1, y1)` order.
    pub fn from_text(text: &str) -> Result<BlockPartition> {
        let mut rects = Vec::new();
        let mut labels = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| Error::PartitionText {
                line: i + 1,
                message,
            };
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 4 && fields.len() != 5 {
                return Err(err(format!(
                    "expected 4 or 5 fields, found {}",
                    fields.len()
                )));
            }
            let mut c = [Dyadic::ZERO; 4];
            for (slot, f) in c.iter_mut().zip(&fields) {
                *slot = f
                    .parse()
                    .map_err(|e: crate::error::DyadicParseError| err(e.to_string()))?;
            }
            rects.push(Rect::new(c[0], c[1], c[2], c[3]).map_err(|e| err(e.to_string()))?);
            if let Some(l) = fields.get(4) {
                labels.push(
                    l.parse::<u32>()
                        .map_err(|_| err(format!("bad label `{l}`")))?,
                );
            }
        }
        if labels.is_empty() {
            let p = BlockPartition::from_rects(rects);
            return BlockPartition::new(p.blocks);
        }
        if labels.len() != rects.len() {
            return Err(Error::PartitionText {
                line: 0,
                message: "labels must be given on all lines or none".into(),
            });
        }
        BlockPartition::new(
            rects
                .into_iter()
                .zip(labels)
                .map(|(rect, label)| Block { rect, label })
                .collect(),
        )
    }

    fn blocks_in(&self, r: &Rect) -> Vec<Block> {
        self.blocks
            .iter()
            .filter(|b| r.contains(&b.rect))
            .copied()
            .collect()
    }

    /// Labels along each side of the square, in order of increasing
    /// coordinate: south, north, west, east.
    pub fn boundary_orders(&self) -> [Vec<u32>; 4] {
        let side = |pred: &dyn Fn(&Rect) -> bool, key: &dyn Fn(&Rect) -> Dyadic| {
            let mut v: Vec<&Block> = self.blocks.iter().filter(|b| pred(&b.rect)).collect();
            v.sort_by_key(|b| key(&b.rect));
            v.into_iter().map(|b| b.label).collect::<Vec<_>>()
        };
        [
            side(&|r| r.y1.is_zero(), &|r| r.x1),
            side(&|r| r.y2 == Dyadic::ONE, &|r| r.x1),
            side(&|r| r.x1.is_zero(), &|r| r.y1),
            side(&|r| r.x2 == Dyadic::ONE, &|r| r.y1),
        ]
    }
}

impl fmt::Display for BlockPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

// ---------------------------------------------------------------------------
// Realization and operad structure

/// The geometric realization of a monomial: a leaf is the unit square,
/// `H` splits by the vertical line through the middle (first operand west),
/// `V` by the horizontal line (first operand south).
pub fn realize(t: &Tree) -> BlockPartition {
    let mut blocks = Vec::with_capacity(t.arity());
    realize_in(t, Rect::UNIT, &mut blocks);
    BlockPartition::sorted(blocks)
}

fn realize_in(t: &Tree, r: Rect, out: &mut Vec<Block>) {
    match t {
        Tree::Leaf(label) => out.push(Block {
            rect: r,
            label: *label,
        }),
        Tree::Node(op, left, right) => {
            let axis = match op {
                Op::H => Axis::X,
                Op::V => Axis::Y,
            };
            let (a, b) = r.bisect(axis);
            realize_in(left, a, out);
            realize_in(right, b, out);
        }
    }
}

fn join(p: &BlockPartition, q: &BlockPartition, axis: Axis) -> BlockPartition {
    let (a, b) = Rect::UNIT.bisect(axis);
    let shift = p.len() as u32;
    let mut blocks: Vec<Block> = p
        .blocks
        .iter()
        .map(|blk| Block {
            rect: blk.rect.scaled_into(&a),
            label: blk.label,
        })
        .collect();
    blocks.extend(q.blocks.iter().map(|blk| Block {
        rect: blk.rect.scaled_into(&b),
        label: blk.label + shift,
    }));
    BlockPartition::sorted(blocks)
}

/// `p` in the west half, `q` in the east half; labels of `q` follow those
/// of `p`.
pub fn hjoin(p: &BlockPartition, q: &BlockPartition) -> BlockPartition {
    join(p, q, Axis::X)
}

/// `p` in the south half, `q` in the north half; labels of `q` follow those
/// of `p`.
pub fn vjoin(p: &BlockPartition, q: &BlockPartition) -> BlockPartition {
    join(p, q, Axis::Y)
}

/// Scales `q` into the block labeled `i`, renumbering labels as in operadic
/// partial composition.
pub fn compose_partition(
    p: &BlockPartition,
    i: usize,
    q: &BlockPartition,
) -> Result<BlockPartition> {
    let n = p.len();
    if i == 0 || i > n {
        return Err(Error::IndexOutOfRange { index: i, len: n });
    }
    let i = i as u32;
    let m = q.len() as u32;
    let target = p
        .block_with_label(i)
        .expect("labels form a permutation")
        .rect;
    let mut blocks = Vec::with_capacity(p.len() + q.len() - 1);
    for b in &p.blocks {
        if b.label == i {
            continue;
        }
        let label = if b.label > i {
            b.label + m - 1
        } else {
            b.label
        };
        blocks.push(Block {
            rect: b.rect,
            label,
        });
    }
    blocks.extend(q.blocks.iter().map(|b| Block {
        rect: b.rect.scaled_into(&target),
        label: b.label + i - 1,
    }));
    Ok(BlockPartition::sorted(blocks))
}

/// Runs successive exact bisections from the unit square. Each choice names
/// a 1-based block ordinal in the current `(x1, y1)` order and an axis.
pub fn build_dyadic(choices: &[(usize, Axis)]) -> Result<BlockPartition> {
    let mut p = BlockPartition::unit();
    for &(ordinal, axis) in choices {
        if ordinal == 0 || ordinal > p.len() {
            return Err(Error::IndexOutOfRange {
                index: ordinal,
                len: p.len(),
            });
        }
        p = p.bisect(ordinal - 1, axis)?;
    }
    Ok(p)
}

// ---------------------------------------------------------------------------
// Cuts, slices and block classes

/// Maximal interior segments separating blocks.
pub fn cuts(p: &BlockPartition) -> Vec<Cut> {
    let mut edges: Vec<Cut> = Vec::new();
    for b in &p.blocks {
        let r = b.rect;
        for x in [r.x1, r.x2] {
            if !x.is_zero() && x != Dyadic::ONE {
                edges.push(Cut {
                    orientation: Orientation::Vertical,
                    at: x,
                    from: r.y1,
                    to: r.y2,
                });
            }
        }
        for y in [r.y1, r.y2] {
            if !y.is_zero() && y != Dyadic::ONE {
                edges.push(Cut {
                    orientation: Orientation::Horizontal,
                    at: y,
                    from: r.x1,
                    to: r.x2,
                });
            }
        }
    }
    edges.sort();
    let mut out: Vec<Cut> = Vec::new();
    for e in edges {
        match out.last_mut() {
            Some(last)
                if last.orientation == e.orientation && last.at == e.at && e.from <= last.to =>
            {
                last.to = last.to.max(e.to);
            }
            _ => out.push(e),
        }
    }
    out
}

/// Number of blocks whose union is `r`, if `r` is a union of blocks.
pub fn is_subrectangle(p: &BlockPartition, r: &Rect) -> Option<usize> {
    let mut area = Dyadic::ZERO;
    let mut count = 0;
    for b in &p.blocks {
        if r.contains(&b.rect) {
            area = area + b.rect.area();
            count += 1;
        } else if r.overlaps(&b.rect) {
            return None;
        }
    }
    (count > 0 && area == r.area()).then_some(count)
}

fn has_main_cut(blocks: &[Block], r: &Rect, o: Orientation) -> bool {
    if blocks.len() < 2 {
        return false;
    }
    match o {
        Orientation::Vertical => {
            let m = r.mid_x();
            blocks.iter().all(|b| b.rect.x2 <= m || b.rect.x1 >= m)
        }
        Orientation::Horizontal => {
            let m = r.mid_y();
            blocks.iter().all(|b| b.rect.y2 <= m || b.rect.y1 >= m)
        }
    }
}

/// Which exact bisections of the subrectangle `r` are unions of cuts.
pub fn main_cuts(p: &BlockPartition, r: &Rect) -> Result<MainCuts> {
    if is_subrectangle(p, r).is_none() {
        return Err(Error::NotSubrectangle);
    }
    let inside = p.blocks_in(r);
    Ok(MainCuts {
        horizontal: has_main_cut(&inside, r, Orientation::Horizontal),
        vertical: has_main_cut(&inside, r, Orientation::Vertical),
    })
}

/// Primary cuts of `r` parallel to its main cut in `orientation`, in
/// increasing order, and the slices between them.
pub fn primary_cuts_and_slices(
    p: &BlockPartition,
    r: &Rect,
    orientation: Orientation,
) -> Result<(Vec<Cut>, Vec<Rect>)> {
    if is_subrectangle(p, r).is_none() {
        return Err(Error::NotSubrectangle);
    }
    let inside = p.blocks_in(r);
    if !has_main_cut(&inside, r, orientation) {
        return Err(Error::NoMainCut(orientation.name()));
    }
    let mut positions = Vec::new();
    collect_primary(&inside, r, orientation, &mut positions);
    positions.sort();
    let (lo, hi, from, to) = match orientation {
        Orientation::Vertical => (r.x1, r.x2, r.y1, r.y2),
        Orientation::Horizontal => (r.y1, r.y2, r.x1, r.x2),
    };
    let cuts = positions
        .iter()
        .map(|&at| Cut {
            orientation,
            at,
            from,
            to,
        })
        .collect();
    let mut bounds = vec![lo];
    bounds.extend(positions.iter().copied());
    bounds.push(hi);
    let slices = bounds
        .windows(2)
        .map(|w| match orientation {
            Orientation::Vertical => Rect {
                x1: w[0],
                x2: w[1],
                ..*r
            },
            Orientation::Horizontal => Rect {
                y1: w[0],
                y2: w[1],
                ..*r
            },
        })
        .collect();
    Ok((cuts, slices))
}

fn collect_primary(blocks: &[Block], r: &Rect, o: Orientation, out: &mut Vec<Dyadic>) {
    if !has_main_cut(blocks, r, o) {
        return;
    }
    let axis = o.normal_axis();
    out.push(match axis {
        Axis::X => r.mid_x(),
        Axis::Y => r.mid_y(),
    });
    let (a, b) = r.bisect(axis);
    for half in [a, b] {
        let inner: Vec<Block> = blocks
            .iter()
            .filter(|blk| half.contains(&blk.rect))
            .copied()
            .collect();
        collect_primary(&inner, &half, o, out);
    }
}

/// Number of parallel slices of the square in `orientation` (1 when there
/// is no main cut in that direction).
pub fn slice_count(p: &BlockPartition, orientation: Orientation) -> usize {
    primary_cuts_and_slices(p, &Rect::UNIT, orientation).map_or(1, |(_, s)| s.len())
}

/// Interior/border status of every block, in block order.
pub fn classify_blocks(p: &BlockPartition) -> Vec<(u32, BlockClass)> {
    p.blocks
        .iter()
        .map(|b| {
            let class = if b.rect.touches_boundary() {
                BlockClass::Border
            } else {
                BlockClass::Interior
            };
            (b.label, class)
        })
        .collect()
}

/// Every monomial realizing `p`.
pub fn fiber(p: &BlockPartition) -> Result<Vec<Tree>> {
    let mut out = fiber_in(&p.blocks, &Rect::UNIT);
    if out.is_empty() {
        return Err(Error::NotDyadic);
    }
    out.sort_by_cached_key(Tree::canonical_key);
    out.dedup();
    Ok(out)
}

fn fiber_in(blocks: &[Block], r: &Rect) -> Vec<Tree> {
    if blocks.len() == 1 {
        return if blocks[0].rect == *r {
            vec![Tree::Leaf(blocks[0].label)]
        } else {
            Vec::new()
        };
    }
    let mut out = Vec::new();
    for (o, op) in [
        (Orientation::Vertical, Op::H),
        (Orientation::Horizontal, Op::V),
    ] {
        if !has_main_cut(blocks, r, o) {
            continue;
        }
        let (a, b) = r.bisect(o.normal_axis());
        let part = |half: &Rect| {
            blocks
                .iter()
                .filter(|blk| half.contains(&blk.rect))
                .copied()
                .collect::<Vec<_>>()
        };
        let left = fiber_in(&part(&a), &a);
        if left.is_empty() {
            continue;
        }
        let right = fiber_in(&part(&b), &b);
        for l in &left {
            for rr in &right {
                out.push(Tree::node(op, l.clone(), rr.clone()));
            }
        }
    }
    out
}

/// True when each listed block lies entirely to the west of the next one.
pub fn blocks_left_to_right(p: &BlockPartition, labels: &[u32]) -> bool {
    let rects: Option<Vec<Rect>> = labels
        .iter()
        .map(|&l| p.block_with_label(l).map(|b| b.rect))
        .collect();
    rects.is_some_and(|rs| rs.windows(2).all(|w| w[0].x2 <= w[1].x1))
}

/// Tests whether `p` is reachable by exact bisections.
pub fn is_dyadic(p: &BlockPartition) -> bool {
    !fiber_in(&p.blocks, &Rect::UNIT).is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trees::parse_monomial;

    fn d(s: &str) -> Dyadic {
        s.parse().unwrap()
    }

    fn grid() -> BlockPartition {
        realize(&parse_monomial("((a h b) v (c h d))").unwrap())
    }

    #[test]
    fn realize_basics() {
        let unit = realize(&Tree::Leaf(1));
        assert_eq!(unit, BlockPartition::unit());
        let h = realize(&parse_monomial("(a h b)").unwrap());
        assert_eq!(
            h.blocks()[0].rect,
            Rect {
                x2: Dyadic::HALF,
                ..Rect::UNIT
            }
        );
        assert_eq!(
            cuts(&h),
            vec![Cut {
                orientation: Orientation::Vertical,
                at: Dyadic::HALF,
                from: Dyadic::ZERO,
                to: Dyadic::ONE
            }]
        );
        let other = realize(&parse_monomial("((a v c) h (b v d))").unwrap());
        assert_eq!(grid().unlabeled(), other.unlabeled());
    }

    #[test]
    fn joins() {
        let u = BlockPartition::unit();
        assert_eq!(hjoin(&u, &u), realize(&parse_monomial("(a h b)").unwrap()));
        assert_eq!(vjoin(&u, &u), realize(&parse_monomial("(a v b)").unwrap()));
    }

    #[test]
    fn build_grid() {
        let g = build_dyadic(&[(1, Axis::X), (1, Axis::Y), (3, Axis::Y)]).unwrap();
        assert_eq!(g.unlabeled(), grid().unlabeled());
        assert_eq!(build_dyadic(&[]).unwrap(), BlockPartition::unit());
        assert!(build_dyadic(&[(2, Axis::X)]).is_err());
    }

    #[test]
    fn cut_examples() {
        assert!(cuts(&BlockPartition::unit()).is_empty());
        let g = cuts(&grid());
        assert_eq!(g.len(), 2);
        assert!(g
            .iter()
            .all(|c| c.from.is_zero() && c.to == Dyadic::ONE && c.at == Dyadic::HALF));
        let two = cuts(&realize(&parse_monomial("((a h b) h c)").unwrap()));
        let at: Vec<_> = two.iter().map(|c| (c.orientation, c.at)).collect();
        assert_eq!(
            at,
            vec![
                (Orientation::Vertical, d("1/4")),
                (Orientation::Vertical, d("1/2"))
            ]
        );
    }

    #[test]
    fn main_cut_examples() {
        assert_eq!(
            main_cuts(&grid(), &Rect::UNIT).unwrap(),
            MainCuts {
                horizontal: true,
                vertical: true
            }
        );
        let h = realize(&parse_monomial("(a h b)").unwrap());
        assert_eq!(
            main_cuts(&h, &Rect::UNIT).unwrap(),
            MainCuts {
                horizontal: false,
                vertical: true
            }
        );
        assert_eq!(
            main_cuts(&BlockPartition::unit(), &Rect::UNIT).unwrap(),
            MainCuts::default()
        );
        let quarter = Rect {
            x2: d("1/4"),
            ..Rect::UNIT
        };
        assert_eq!(main_cuts(&h, &quarter), Err(Error::NotSubrectangle));
    }

    #[test]
    fn slices() {
        let four = realize(&parse_monomial("((a h b) h (c h d))").unwrap());
        let (c, s) = primary_cuts_and_slices(&four, &Rect::UNIT, Orientation::Vertical).unwrap();
        assert_eq!(
            c.iter().map(|c| c.at).collect::<Vec<_>>(),
            vec![d("1/4"), d("1/2"), d("3/4")]
        );
        assert_eq!(s.len(), 4);
        let (c, s) =
            primary_cuts_and_slices(&grid(), &Rect::UNIT, Orientation::Horizontal).unwrap();
        assert_eq!((c.len(), s.len()), (1, 2));
        let h = realize(&parse_monomial("(a h b)").unwrap());
        assert_eq!(
            primary_cuts_and_slices(&h, &Rect::UNIT, Orientation::Horizontal),
            Err(Error::NoMainCut("horizontal"))
        );
    }

    #[test]
    fn block_classes() {
        assert!(classify_blocks(&grid())
            .iter()
            .all(|(_, c)| *c == BlockClass::Border));
        // 4x4 grid: the four central cells are interior
        let nested = parse_monomial(
            "((((a h b) v (c h d)) h ((e h f) v (g h h))) v (((i h j) v (k h l)) h ((m h n) v (o h p))))",
        );
        let p = realize(&nested.unwrap());
        let interior: Vec<u32> = classify_blocks(&p)
            .into_iter()
            .filter(|(_, c)| *c == BlockClass::Interior)
            .map(|(l, _)| l)
            .collect();
        assert_eq!(interior.len(), 4);
    }

    #[test]
    fn fibers() {
        assert_eq!(fiber(&BlockPartition::unit()).unwrap(), vec![Tree::Leaf(1)]);
        let f = fiber(&grid()).unwrap();
        assert_eq!(f.len(), 2);
        assert!(f.contains(&parse_monomial("((x1 v x3) h (x2 v x4))").unwrap()));
        let bad = BlockPartition::new(vec![
            Block {
                rect: Rect::new(d("0"), d("1/4"), d("0"), d("1")).unwrap(),
                label: 1,
            },
            Block {
                rect: Rect::new(d("1/4"), d("1"), d("0"), d("1")).unwrap(),
                label: 2,
            },
        ])
        .unwrap();
        assert_eq!(fiber(&bad), Err(Error::NotDyadic));
    }

    #[test]
    fn subrectangles() {
        let g = grid();
        for b in g.blocks() {
            assert_eq!(is_subrectangle(&g, &b.rect), Some(1));
        }
        assert_eq!(
            is_subrectangle(
                &g,
                &Rect {
                    x2: Dyadic::HALF,
                    ..Rect::UNIT
                }
            ),
            Some(2)
        );
        assert_eq!(
            is_subrectangle(
                &g,
                &Rect {
                    x2: d("1/4"),
                    ..Rect::UNIT
                }
            ),
            None
        );
    }

    #[test]
    fn text_round_trip() {
        let p = realize(&parse_monomial("((a h (b v c)) v d)").unwrap());
        let text = p.to_text();
        assert!(text.starts_with("0/2^0 1/2^1 0/2^0 1/2^1 1\n"));
        assert_eq!(BlockPartition::from_text(&text).unwrap(), p);
        assert!(BlockPartition::from_text("0 1 0 1/2 1\n").is_err());
        assert!(matches!(
            BlockPartition::from_text("0 1 0\n"),
            Err(Error::PartitionText { line: 1, .. })
        ));
    }
}
