//! Axial coordinates on a flat-top hexagonal grid.
//!
//! Flat-top orientation puts a neighbor directly above and below every cell,
//! so the six directions are `N, NE, SE, S, SW, NW` in clockwise order.
//!
//! Axial deltas (the single arbitrary convention of the crate):
//!
//! | dir | dq | dr |
//! |-----|----|----|
//! | N   |  0 | -1 |
//! | NE  | +1 | -1 |
//! | SE  | +1 |  0 |
//! | S   |  0 | +1 |
//! | SW  | -1 | +1 |
//! | NW  | -1 |  0 |
//!
//! The planar embedding (unit circumradius, y pointing up) is
//! `x = 1.5 q`, `y = -sqrt(3) (r + q / 2)`. It is used for rendering,
//! tie-breaking and the free-space sweep; all combinatorics stay integral.
//!
//! Rows run along `NW`/`SE`: [`ascend`] steps to the NW neighbor, [`descend`]
//! to the SE neighbor, and the row key is the `r` coordinate.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

pub const SQRT_3: f64 = 1.732_050_807_568_877_2;

/// A grid cell (or an axial displacement between cells).
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
pub struct Cell {
    pub q: i32,
    pub r: i32,
}

impl Cell {
    pub const ORIGIN: Cell = Cell { q: 0, r: 0 };

    pub const fn new(q: i32, r: i32) -> Self {
        Cell { q, r }
    }

    pub fn neighbor(self, d: Direction) -> Cell {
        self + d.delta()
    }

    pub fn neighbors(self) -> [Cell; 6] {
        Direction::ALL.map(|d| self.neighbor(d))
    }

    /// Left-to-right fold of [`Cell::neighbor`] over `arrows`.
    pub fn offset(self, arrows: &[Direction]) -> Cell {
        arrows.iter().fold(self, |c, &d| c.neighbor(d))
    }

    /// Lattice (hex) distance.
    pub fn distance(self, other: Cell) -> i32 {
        let d = other - self;
        (d.q.abs() + d.r.abs() + (d.q + d.r).abs()) / 2
    }

    /// Direction towards an edge-adjacent cell, if `other` is one.
    pub fn direction_to(self, other: Cell) -> Option<Direction> {
        let d = other - self;
        Direction::ALL.into_iter().find(|dir| dir.delta() == d)
    }

    pub fn is_adjacent(self, other: Cell) -> bool {
        self.direction_to(other).is_some()
    }

    /// Center of the cell in the planar embedding.
    pub fn center(self) -> (f64, f64) {
        let q = self.q as f64;
        let r = self.r as f64;
        (1.5 * q, -SQRT_3 * (r + q / 2.0))
    }

    /// Integer height key: larger means higher up (proportional to `y`).
    pub fn height(self) -> i32 {
        -(2 * self.r + self.q)
    }

    /// Rotates a displacement by `steps` sixths of a turn clockwise about the origin.
    pub fn rotate_cw(self, steps: u32) -> Cell {
        let mut c = self;
        for _ in 0..steps % 6 {
            // cube (x, y, z) = (q, -q-r, r); cw by 60 degrees maps it to (-z, -x, -y)
            c = Cell::new(-c.r, c.q + c.r);
        }
        c
    }

    /// Mirror of a displacement about the vertical (N-S) axis.
    pub fn mirror(self) -> Cell {
        Cell::new(-self.q, self.r + self.q)
    }
}

impl Add for Cell {
    type Output = Cell;
    fn add(self, o: Cell) -> Cell {
        Cell::new(self.q + o.q, self.r + o.r)
    }
}

impl Sub for Cell {
    type Output = Cell;
    fn sub(self, o: Cell) -> Cell {
        Cell::new(self.q - o.q, self.r - o.r)
    }
}

impl Neg for Cell {
    type Output = Cell;
    fn neg(self) -> Cell {
        Cell::new(-self.q, -self.r)
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.q, self.r)
    }
}

/// One of the six neighbor directions, in clockwise order starting at north.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Direction {
    N,
    NE,
    SE,
    S,
    SW,
    NW,
}

const DELTAS: [Cell; 6] = [
    Cell::new(0, -1),
    Cell::new(1, -1),
    Cell::new(1, 0),
    Cell::new(0, 1),
    Cell::new(-1, 1),
    Cell::new(-1, 0),
];

impl Direction {
    pub const ALL: [Direction; 6] = [
        Direction::N,
        Direction::NE,
        Direction::SE,
        Direction::S,
        Direction::SW,
        Direction::NW,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Direction {
        Direction::ALL[i % 6]
    }

    pub fn delta(self) -> Cell {
        DELTAS[self.index()]
    }

    pub fn opposite(self) -> Direction {
        self.rotated_cw(3)
    }

    pub fn rotated_cw(self, steps: usize) -> Direction {
        Direction::from_index(self.index() + steps % 6)
    }

    pub fn rotated_ccw(self, steps: usize) -> Direction {
        Direction::from_index(self.index() + 6 - steps % 6)
    }

    /// Mirror about the vertical axis (N and S are fixed).
    pub fn mirrored(self) -> Direction {
        Direction::from_index(6 - self.index())
    }

    /// Arrow glyph used in diagnostics.
    pub fn arrow(self) -> char {
        ['↑', '↗', '↘', '↓', '↙', '↖'][self.index()]
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.arrow())
    }
}

/// Ascending step within a row (top-left neighbor).
pub fn ascend(c: Cell) -> Cell {
    c.neighbor(Direction::NW)
}

/// Descending step within a row (bottom-right neighbor).
pub fn descend(c: Cell) -> Cell {
    c.neighbor(Direction::SE)
}

/// Key that is constant along a NW-SE row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RowKey(pub i32);

pub fn row_key(c: Cell) -> RowKey {
    RowKey(c.r)
}

/// A grid vertex, identified by the three cells meeting at it (sorted).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Vertex([Cell; 3]);

impl Vertex {
    /// The vertex of `c` between directions `d` and the next one clockwise.
    pub fn corner(c: Cell, d: Direction) -> Vertex {
        let mut cells = [c, c.neighbor(d), c.neighbor(d.rotated_cw(1))];
        cells.sort();
        Vertex(cells)
    }

    /// Builds a vertex from three mutually adjacent cells.
    pub fn from_cells(a: Cell, b: Cell, c: Cell) -> Option<Vertex> {
        if a.is_adjacent(b) && b.is_adjacent(c) && a.is_adjacent(c) {
            let mut cells = [a, b, c];
            cells.sort();
            Some(Vertex(cells))
        } else {
            None
        }
    }

    pub fn cells(&self) -> [Cell; 3] {
        self.0
    }

    pub fn contains(&self, c: Cell) -> bool {
        self.0.contains(&c)
    }

    /// The cell at this vertex that is neither `a` nor `b`.
    pub fn third(&self, a: Cell, b: Cell) -> Option<Cell> {
        if !self.contains(a) || !self.contains(b) || a == b {
            return None;
        }
        self.0.iter().copied().find(|&c| c != a && c != b)
    }

    /// Position in the planar embedding (centroid of the three cell centers).
    pub fn point(&self) -> (f64, f64) {
        let pts = self.0.map(Cell::center);
        (
            (pts[0].0 + pts[1].0 + pts[2].0) / 3.0,
            (pts[0].1 + pts[1].1 + pts[2].1) / 3.0,
        )
    }

    pub fn translated(&self, by: Cell) -> Vertex {
        let mut cells = self.0.map(|c| c + by);
        cells.sort();
        Vertex(cells)
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{} {} {}>", self.0[0], self.0[1], self.0[2])
    }
}

/// The six corners of `c` in clockwise order, starting with the N/NE corner.
pub fn vertices_of(c: Cell) -> [Vertex; 6] {
    Direction::ALL.map(|d| Vertex::corner(c, d))
}

pub fn cells_at(v: &Vertex) -> [Cell; 3] {
    v.cells()
}

/// Vertices shared by two cells (two for adjacent cells, none otherwise).
pub fn shared_vertices(a: Cell, b: Cell) -> Vec<Vertex> {
    let theirs = vertices_of(b);
    vertices_of(a)
        .into_iter()
        .filter(|v| theirs.contains(v))
        .collect()
}

/// Rotation/reflection of the grid about the origin, used to express local
/// patterns in a canonical frame. `apply` maps frame directions to grid ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Frame {
    pub rotation: u8,
    pub mirrored: bool,
}

impl Frame {
    pub const IDENTITY: Frame = Frame { rotation: 0, mirrored: false };

    pub fn all() -> impl Iterator<Item = Frame> {
        (0..12u8).map(|i| Frame { rotation: i % 6, mirrored: i >= 6 })
    }

    pub fn dir(&self, d: Direction) -> Direction {
        let d = if self.mirrored { d.mirrored() } else { d };
        d.rotated_cw(self.rotation as usize)
    }

    pub fn vector(&self, v: Cell) -> Cell {
        let v = if self.mirrored { v.mirror() } else { v };
        v.rotate_cw(self.rotation as u32)
    }

    /// Cell reached from `c` by following frame-relative arrows.
    pub fn offset(&self, c: Cell, arrows: &[Direction]) -> Cell {
        arrows.iter().fold(c, |acc, &d| acc.neighbor(self.dir(d)))
    }

    /// Maps a frame rotation sense to the grid's.
    pub fn rotation_sense(&self, r: crate::Rotation) -> crate::Rotation {
        if self.mirrored {
            r.flipped()
        } else {
            r
        }
    }

    /// Inverse direction map (grid to frame).
    pub fn frame_dir(&self, d: Direction) -> Direction {
        Direction::ALL
            .into_iter()
            .find(|&f| self.dir(f) == d)
            .expect("frame is a bijection")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Direction::*;

    #[test]
    fn north_of_origin() {
        assert_eq!(Cell::ORIGIN.neighbor(N), Cell::new(0, -1));
        assert_eq!(Cell::ORIGIN.offset(&[N, N]), Cell::new(0, -2));
        assert_eq!(Cell::ORIGIN.offset(&[]), Cell::ORIGIN);
        assert_eq!(
            Cell::ORIGIN.offset(&[N, NE]),
            Cell::ORIGIN.neighbor(N).neighbor(NE)
        );
    }

    #[test]
    fn deltas_match_embedding() {
        // every direction is a unit step at the expected compass angle
        for (i, d) in Direction::ALL.into_iter().enumerate() {
            let (x, y) = Cell::ORIGIN.neighbor(d).center();
            assert!(((x * x + y * y).sqrt() - SQRT_3).abs() < 1e-12);
            let angle = y.atan2(x).to_degrees();
            let expected = 90.0 - 60.0 * i as f64;
            let diff = (angle - expected).rem_euclid(360.0);
            assert!(diff < 1e-9 || (360.0 - diff) < 1e-9, "{d:?} at {angle}");
        }
    }

    #[test]
    fn involution_and_rotation() {
        for d in Direction::ALL {
            assert_eq!(d.opposite().opposite(), d);
            assert_eq!(d.rotated_cw(6), d);
            assert_eq!(d.rotated_cw(1).rotated_ccw(1), d);
            let c = Cell::new(2, 3);
            assert_eq!(c.neighbor(d).neighbor(d.opposite()), c);
            assert_eq!(d.delta().rotate_cw(1), d.rotated_cw(1).delta());
            assert_eq!(d.delta().mirror(), d.mirrored().delta());
        }
        assert_eq!(Cell::new(2, 3).neighbor(NE).neighbor(SW), Cell::new(2, 3));
    }

    #[test]
    fn rows() {
        let c = Cell::new(4, -7);
        assert_eq!(row_key(c), row_key(ascend(c)));
        assert_ne!(row_key(c), row_key(c.neighbor(N)));
        assert_eq!(descend(ascend(c)), c);
    }

    #[test]
    fn shared_vertex_geometry() {
        // third cells at the two vertices shared with the north neighbor are NW and NE
        let a = Cell::ORIGIN;
        let s = a.neighbor(N);
        let shared = shared_vertices(a, s);
        assert_eq!(shared.len(), 2);
        let mut thirds: Vec<Cell> = shared.iter().map(|v| v.third(a, s).unwrap()).collect();
        thirds.sort();
        let mut expected = vec![a.neighbor(NW), a.neighbor(NE)];
        expected.sort();
        assert_eq!(thirds, expected);
        // and the vertex points agree with a floating-point hexagon construction
        let (cx, cy) = a.center();
        let corners: Vec<(f64, f64)> = (0..6)
            .map(|k| {
                let t = (60.0 * k as f64).to_radians();
                (cx + t.cos(), cy + t.sin())
            })
            .collect();
        for v in &shared {
            let (px, py) = v.point();
            assert!(corners
                .iter()
                .any(|&(x, y)| (x - px).abs() < 1e-9 && (y - py).abs() < 1e-9));
            // the shared vertex sits on the upper edge of `a`
            assert!((py - (cy + SQRT_3 / 2.0)).abs() < 1e-9);
        }
    }

    #[test]
    fn vertex_canonical_from_every_incident_cell() {
        for q in -4..=4 {
            for r in -4..=4 {
                let c = Cell::new(q, r);
                for v in vertices_of(c) {
                    assert_eq!(v.cells().len(), 3);
                    for other in v.cells() {
                        assert!(vertices_of(other).contains(&v));
                    }
                    let [a, b, d] = v.cells();
                    assert!(a.is_adjacent(b) && b.is_adjacent(d) && a.is_adjacent(d));
                }
            }
        }
    }

    #[test]
    fn frames_are_bijections() {
        for f in Frame::all() {
            let mut seen: Vec<Direction> = Direction::ALL.iter().map(|&d| f.dir(d)).collect();
            seen.sort();
            assert_eq!(seen, Direction::ALL.to_vec());
            for d in Direction::ALL {
                assert_eq!(f.vector(d.delta()), f.dir(d).delta());
                assert_eq!(f.frame_dir(f.dir(d)), d);
            }
        }
    }
}
