//! Connected sets of occupied cells.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::ConfigError;
use crate::hexgrid::{Cell, Direction, Frame};

/// A nonempty, edge-connected set of occupied cells.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Configuration {
    cells: BTreeSet<Cell>,
}

impl fmt::Debug for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.cells.iter().map(|c| (c.q, c.r))).finish()
    }
}

impl Configuration {
    /// Validates and wraps a cell set.
    pub fn from_cells<I: IntoIterator<Item = Cell>>(cells: I) -> Result<Self, ConfigError> {
        let cells: BTreeSet<Cell> = cells.into_iter().collect();
        if cells.is_empty() {
            return Err(ConfigError::Empty);
        }
        let comps = components_of(&cells);
        if comps.len() > 1 {
            return Err(ConfigError::Disconnected { components: comps });
        }
        Ok(Configuration { cells })
    }

    /// Wraps a set the caller already knows to be nonempty and connected.
    pub(crate) fn from_set_unchecked(cells: BTreeSet<Cell>) -> Self {
        debug_assert!(!cells.is_empty());
        Configuration { cells }
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, c: Cell) -> bool {
        self.cells.contains(&c)
    }

    pub fn cells(&self) -> &BTreeSet<Cell> {
        &self.cells
    }

    pub fn iter(&self) -> impl Iterator<Item = Cell> + '_ {
        self.cells.iter().copied()
    }

    pub fn to_vec(&self) -> Vec<Cell> {
        self.cells.iter().copied().collect()
    }

    pub fn degree(&self, c: Cell) -> usize {
        c.neighbors().iter().filter(|n| self.contains(**n)).count()
    }

    pub fn occupied_neighbors(&self, c: Cell) -> Vec<Cell> {
        c.neighbors().into_iter().filter(|n| self.contains(*n)).collect()
    }

    pub fn translate(&self, by: Cell) -> Configuration {
        Configuration { cells: self.cells.iter().map(|&c| c + by).collect() }
    }

    /// Translates so the smallest cell (in `(q, r)` order) sits at the origin.
    pub fn normalize(&self) -> Configuration {
        let first = *self.cells.iter().next().expect("nonempty");
        self.translate(-first)
    }

    /// Displacement that [`Configuration::normalize`] applies.
    pub fn normalizing_offset(&self) -> Cell {
        -*self.cells.iter().next().expect("nonempty")
    }

    /// Same cells, up to translation.
    pub fn same_shape(&self, other: &Configuration) -> bool {
        self.len() == other.len() && self.normalize() == other.normalize()
    }

    /// Applies a rigid grid transform about the origin.
    pub fn transformed(&self, frame: Frame) -> Configuration {
        Configuration { cells: self.cells.iter().map(|&c| frame.vector(c)).collect() }
    }

    /// Moves one module; the result is only guaranteed connected if the caller checked it.
    pub(crate) fn with_moved(&self, from: Cell, to: Cell) -> Configuration {
        let mut cells = self.cells.clone();
        cells.remove(&from);
        cells.insert(to);
        Configuration { cells }
    }

    /// Whether the contact graph stays connected (and nonempty) without `c`.
    pub fn is_connected_without(&self, c: Cell) -> bool {
        let rest: Vec<Cell> = self.cells.iter().copied().filter(|&x| x != c).collect();
        if rest.is_empty() {
            return false;
        }
        connected_count(&rest[0], |x| x != c && self.contains(x)) == rest.len()
    }

    /// Edge count of the contact graph.
    pub fn edge_count(&self) -> usize {
        self.cells.iter().map(|&c| self.degree(c)).sum::<usize>() / 2
    }

    /// Cells of the bounding box (axial) grown by `margin`.
    pub fn bounding_box(&self, margin: i32) -> (Cell, Cell) {
        let min_q = self.cells.iter().map(|c| c.q).min().unwrap() - margin;
        let max_q = self.cells.iter().map(|c| c.q).max().unwrap() + margin;
        let min_r = self.cells.iter().map(|c| c.r).min().unwrap() - margin;
        let max_r = self.cells.iter().map(|c| c.r).max().unwrap() + margin;
        (Cell::new(min_q, min_r), Cell::new(max_q, max_r))
    }

    /// Empty cells connected to the unbounded region, restricted to the bounding box grown by one.
    pub fn outer_empty(&self) -> HashSet<Cell> {
        let (lo, hi) = self.bounding_box(1);
        let inside = |c: Cell| c.q >= lo.q && c.q <= hi.q && c.r >= lo.r && c.r <= hi.r;
        let mut seen = HashSet::new();
        let mut queue = VecDeque::from([lo]);
        seen.insert(lo);
        while let Some(c) = queue.pop_front() {
            for n in c.neighbors() {
                if inside(n) && !self.contains(n) && seen.insert(n) {
                    queue.push_back(n);
                }
            }
        }
        seen
    }

    /// Enclosed empty regions, each as a sorted cell set, sorted by smallest cell.
    pub fn pockets(&self) -> Vec<BTreeSet<Cell>> {
        let outer = self.outer_empty();
        let (lo, hi) = self.bounding_box(0);
        let mut enclosed = BTreeSet::new();
        for q in lo.q..=hi.q {
            for r in lo.r..=hi.r {
                let c = Cell::new(q, r);
                if !self.contains(c) && !outer.contains(&c) {
                    enclosed.insert(c);
                }
            }
        }
        let mut pockets = Vec::new();
        while let Some(&start) = enclosed.iter().next() {
            let mut pocket = BTreeSet::from([start]);
            let mut queue = VecDeque::from([start]);
            enclosed.remove(&start);
            while let Some(c) = queue.pop_front() {
                for n in c.neighbors() {
                    if enclosed.remove(&n) {
                        pocket.insert(n);
                        queue.push_back(n);
                    }
                }
            }
            pockets.push(pocket);
        }
        pockets
    }

    /// Whether `c` (occupied) touches a pocket.
    pub fn touches_pocket(&self, c: Cell) -> bool {
        let outer = self.outer_empty();
        c.neighbors().iter().any(|&n| !self.contains(n) && !outer.contains(&n))
    }

    /// Whether `m` has at least three consecutive empty neighbors.
    pub fn is_corner(&self, m: Cell) -> bool {
        let empty: Vec<bool> = Direction::ALL.iter().map(|&d| !self.contains(m.neighbor(d))).collect();
        (0..6).any(|i| empty[i] && empty[(i + 1) % 6] && empty[(i + 2) % 6])
    }

    pub fn corners(&self) -> BTreeSet<Cell> {
        self.cells.iter().copied().filter(|&m| self.is_corner(m)).collect()
    }

    /// Modules adjacent to the outer empty region.
    pub fn boundary_cells(&self) -> BTreeSet<Cell> {
        let outer = self.outer_empty();
        self.cells
            .iter()
            .copied()
            .filter(|c| c.neighbors().iter().any(|n| outer.contains(n)))
            .collect()
    }

    pub fn is_on_boundary(&self, m: Cell) -> bool {
        self.contains(m) && self.boundary_cells().contains(&m)
    }

    /// The topmost module, ties broken towards the right.
    pub fn topmost_rightmost(&self) -> Cell {
        *self
            .cells
            .iter()
            .max_by_key(|c| (c.height(), c.q))
            .expect("nonempty")
    }

    /// Extreme SW path in the identity frame; see [`extreme_sw_path`].
    pub fn extreme_sw_path(&self) -> Vec<Cell> {
        extreme_sw_path(&self.cells, Frame::IDENTITY)
    }
}

impl<'a> IntoIterator for &'a Configuration {
    type Item = &'a Cell;
    type IntoIter = std::collections::btree_set::Iter<'a, Cell>;
    fn into_iter(self) -> Self::IntoIter {
        self.cells.iter()
    }
}

/// The ascending run of modules on the lowest row (the row farthest in the
/// frame's SW direction), listed bottom (SE end) to top (NW end).
///
/// Among several runs on that row the one holding the smallest cell wins.
pub fn extreme_sw_path(cells: &BTreeSet<Cell>, frame: Frame) -> Vec<Cell> {
    let se = frame.dir(Direction::SE);
    let nw = frame.dir(Direction::NW);
    let row_index = |c: Cell| sw_row_index(c, frame);
    let Some(best) = cells.iter().map(|&c| row_index(c)).max() else {
        return Vec::new();
    };
    let row: BTreeSet<Cell> = cells.iter().copied().filter(|&c| row_index(c) == best).collect();
    let start = *row.iter().next().expect("row nonempty");
    // walk to the SE end, then collect towards NW
    let mut bottom = start;
    while row.contains(&bottom.neighbor(se)) {
        bottom = bottom.neighbor(se);
    }
    let mut path = vec![bottom];
    let mut cur = bottom;
    while row.contains(&cur.neighbor(nw)) {
        cur = cur.neighbor(nw);
        path.push(cur);
    }
    path
}

/// Index of the NW-SE row through `c`, counted in the frame's SW direction
/// (larger is farther south-west).
pub fn sw_row_index(c: Cell, frame: Frame) -> i32 {
    // solve c = a * sw + b * nw for a (integral on the lattice)
    let sw = frame.dir(Direction::SW).delta();
    let nw = frame.dir(Direction::NW).delta();
    let det = sw.q * nw.r - sw.r * nw.q;
    (c.q * nw.r - c.r * nw.q) / det
}

/// A straight N-S line of `n` cells starting at `anchor` and going south.
pub fn canonical_path(n: usize, anchor: Cell) -> Configuration {
    assert!(n >= 1, "canonical path needs at least one module");
    let mut cells = BTreeSet::new();
    let mut c = anchor;
    for _ in 0..n {
        cells.insert(c);
        c = c.neighbor(Direction::S);
    }
    Configuration { cells }
}

/// Whether the configuration is a straight N-S line.
pub fn is_canonical_path(c: &Configuration) -> bool {
    let top = c.iter().min_by_key(|c| c.r).unwrap();
    canonical_path(c.len(), top) == *c
}

fn connected_count(start: &Cell, member: impl Fn(Cell) -> bool) -> usize {
    let mut seen = HashSet::from([*start]);
    let mut queue = VecDeque::from([*start]);
    while let Some(c) = queue.pop_front() {
        for n in c.neighbors() {
            if member(n) && seen.insert(n) {
                queue.push_back(n);
            }
        }
    }
    seen.len()
}

/// Connected components (6-adjacency) of an arbitrary cell set, sorted.
pub fn components_of(cells: &BTreeSet<Cell>) -> Vec<BTreeSet<Cell>> {
    let mut left = cells.clone();
    let mut out = Vec::new();
    while let Some(&start) = left.iter().next() {
        left.remove(&start);
        let mut comp = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(c) = queue.pop_front() {
            for n in c.neighbors() {
                if left.remove(&n) {
                    comp.insert(n);
                    queue.push_back(n);
                }
            }
        }
        out.push(comp);
    }
    out
}

pub fn is_connected_set(cells: &BTreeSet<Cell>) -> bool {
    match cells.iter().next() {
        None => false,
        Some(s) => connected_count(s, |c| cells.contains(&c)) == cells.len(),
    }
}
