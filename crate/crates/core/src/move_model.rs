//! Pivoting moves of hexagonal modules: legality, enumeration, application
//! and plan verification.
//!
//! A module `a` next to a stationary module `s` pivots about one of the two
//! vertices it shares with `s`, rotating away from `s`. The restricted move
//! ends after 120 degrees in the third cell at that vertex. Halfway through
//! the rotation `a` is centered on a grid vertex; if a module `s'` touches
//! the leading vertex of `a` at that moment, the monkey move keeps rotating
//! the same way about that vertex for another 60 degrees and lands in the
//! cell next to `s'`. With the stationary module at `N` and a
//! counter-clockwise rotation the restricted move lands at `NE`, the monkey
//! move at `SE` (with `s'` two steps east).
//!
//! Which cells must be empty for each move comes from [`free_space`], a table
//! frozen from a continuous sweep of the rotating hexagon.

pub mod free_space;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::configuration::Configuration;
use crate::error::{IllegalMove, MoveError};
use crate::hexgrid::{Cell, Direction, Vertex};

pub use free_space::FreeSpaceTable;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Rotation {
    #[serde(rename = "cw")]
    Cw,
    #[serde(rename = "ccw")]
    Ccw,
}

impl Rotation {
    pub fn flipped(self) -> Rotation {
        match self {
            Rotation::Cw => Rotation::Ccw,
            Rotation::Ccw => Rotation::Cw,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Rotation::Cw => "cw",
            Rotation::Ccw => "ccw",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ModelId {
    HexRestricted,
    HexMonkey,
}

impl ModelId {
    pub fn allows_monkey(self) -> bool {
        matches!(self, ModelId::HexMonkey)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveKind {
    Restricted { pivot: Vertex },
    Monkey { first_pivot: Vertex, second_pivot: Vertex },
}

impl MoveKind {
    pub fn is_monkey(&self) -> bool {
        matches!(self, MoveKind::Monkey { .. })
    }
}

/// One pivot of one module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Move {
    pub mover: Cell,
    pub rotation: Rotation,
    pub kind: MoveKind,
    pub dest: Cell,
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = if self.kind.is_monkey() { "monkey" } else { "restricted" };
        write!(f, "{} -> {} ({} {})", self.mover, self.dest, self.rotation.as_str(), kind)
    }
}

/// Cells involved in a pivot, all relative to the grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Geometry {
    /// Direction from the mover to the first stationary module.
    support: Direction,
    /// Second stationary module of a monkey move.
    second_support: Option<Cell>,
}

impl Move {
    /// Builds the move of `mover` about its neighbor in direction `support`.
    pub fn new(mover: Cell, support: Direction, rotation: Rotation, monkey: bool) -> Move {
        let s = mover.neighbor(support);
        let turn = |k: usize| match rotation {
            Rotation::Ccw => support.rotated_cw(k),
            Rotation::Cw => support.rotated_ccw(k),
        };
        let third = mover.neighbor(turn(1));
        let first_pivot = Vertex::from_cells(mover, s, third).expect("adjacent triple");
        if !monkey {
            return Move { mover, rotation, kind: MoveKind::Restricted { pivot: first_pivot }, dest: third };
        }
        let dest = mover.neighbor(turn(2));
        let s2 = third.neighbor(turn(2));
        let second_pivot = Vertex::from_cells(third, dest, s2).expect("adjacent triple");
        Move { mover, rotation, kind: MoveKind::Monkey { first_pivot, second_pivot }, dest }
    }

    /// Reconstructs a move from its observable fields.
    pub fn from_parts(mover: Cell, rotation: Rotation, monkey: bool, dest: Cell) -> Option<Move> {
        let dir = mover.direction_to(dest)?;
        let back = |k: usize| match rotation {
            Rotation::Ccw => dir.rotated_ccw(k),
            Rotation::Cw => dir.rotated_cw(k),
        };
        let support = if monkey { back(2) } else { back(1) };
        let m = Move::new(mover, support, rotation, monkey);
        (m.dest == dest).then_some(m)
    }

    fn geometry(&self) -> Option<Geometry> {
        let dir = self.mover.direction_to(self.dest)?;
        let back = |k: usize| match self.rotation {
            Rotation::Ccw => dir.rotated_ccw(k),
            Rotation::Cw => dir.rotated_cw(k),
        };
        match self.kind {
            MoveKind::Restricted { .. } => {
                let g = Geometry { support: back(1), second_support: None };
                (Move::new(self.mover, g.support, self.rotation, false) == *self).then_some(g)
            }
            MoveKind::Monkey { .. } => {
                let support = back(2);
                let rebuilt = Move::new(self.mover, support, self.rotation, true);
                let second = self.mover.neighbor(back(1)).neighbor(dir);
                (rebuilt == *self).then_some(Geometry { support, second_support: Some(second) })
            }
        }
    }

    /// Cell of the stationary module the move first pivots about.
    pub fn support(&self) -> Option<Cell> {
        self.geometry().map(|g| self.mover.neighbor(g.support))
    }

    /// Cell of the module the monkey move finishes pivoting about.
    pub fn second_support(&self) -> Option<Cell> {
        self.geometry().and_then(|g| g.second_support)
    }

    /// The move that undoes this one.
    pub fn inverse(&self) -> Move {
        let kind = match self.kind {
            MoveKind::Restricted { pivot } => MoveKind::Restricted { pivot },
            MoveKind::Monkey { first_pivot, second_pivot } => {
                MoveKind::Monkey { first_pivot: second_pivot, second_pivot: first_pivot }
            }
        };
        Move { mover: self.dest, rotation: self.rotation.flipped(), kind, dest: self.mover }
    }

    pub fn translated(&self, by: Cell) -> Move {
        let kind = match self.kind {
            MoveKind::Restricted { pivot } => MoveKind::Restricted { pivot: pivot.translated(by) },
            MoveKind::Monkey { first_pivot, second_pivot } => MoveKind::Monkey {
                first_pivot: first_pivot.translated(by),
                second_pivot: second_pivot.translated(by),
            },
        };
        Move { mover: self.mover + by, rotation: self.rotation, kind, dest: self.dest + by }
    }

    /// Cells that must be empty (besides the mover's own cell) for the sweep.
    pub fn free_cells(&self) -> Vec<Cell> {
        let Some(g) = self.geometry() else { return Vec::new() };
        FreeSpaceTable::global()
            .cells(self.kind.is_monkey(), self.rotation, g.support)
            .iter()
            .map(|&d| self.mover + d)
            .collect()
    }
}

/// Checks every clause of the move rules for `m` in `c`.
pub fn check_move(c: &Configuration, m: &Move, model: ModelId) -> Result<(), IllegalMove> {
    if m.kind.is_monkey() && !model.allows_monkey() {
        return Err(IllegalMove::ModelForbids);
    }
    let g = m.geometry().ok_or(IllegalMove::Malformed)?;
    if !c.contains(m.mover) {
        return Err(IllegalMove::MoverMissing(m.mover));
    }
    if c.contains(m.dest) {
        return Err(IllegalMove::DestinationOccupied(m.dest));
    }
    let s = m.mover.neighbor(g.support);
    if !c.contains(s) {
        return Err(IllegalMove::PivotMissing(s));
    }
    if let Some(s2) = g.second_support {
        if !c.contains(s2) {
            return Err(IllegalMove::PivotMissing(s2));
        }
    }
    for cell in m.free_cells() {
        if c.contains(cell) {
            return Err(IllegalMove::FreeSpaceBlocked(cell));
        }
    }
    if !c.is_connected_without(m.mover) {
        return Err(IllegalMove::Disconnects);
    }
    Ok(())
}

pub fn is_legal(c: &Configuration, m: &Move, model: ModelId) -> bool {
    check_move(c, m, model).is_ok()
}

/// Legal moves of a single module. The caller may pass the result of the
/// connectivity check when it is already known.
pub fn legal_moves_of(c: &Configuration, mover: Cell, model: ModelId) -> Vec<Move> {
    if !c.contains(mover) || c.len() < 2 || !c.is_connected_without(mover) {
        return Vec::new();
    }
    moves_ignoring_connectivity(c, mover, model)
}

/// Moves of `mover` that satisfy every clause except connectivity of the rest.
pub(crate) fn moves_ignoring_connectivity(c: &Configuration, mover: Cell, model: ModelId) -> Vec<Move> {
    candidate_moves(|x| c.contains(x), mover, model)
}

/// Moves of a module at `mover` whose clauses, except connectivity of the
/// rest, hold for the occupancy given by `occupied` (which ignores `mover`).
pub fn candidate_moves(occupied: impl Fn(Cell) -> bool, mover: Cell, model: ModelId) -> Vec<Move> {
    let occ = |x: Cell| x != mover && occupied(x);
    let mut out = Vec::new();
    let table = FreeSpaceTable::global();
    for support in Direction::ALL {
        if !occ(mover.neighbor(support)) {
            continue;
        }
        for rotation in [Rotation::Cw, Rotation::Ccw] {
            for monkey in [false, true] {
                if monkey && !model.allows_monkey() {
                    continue;
                }
                let m = Move::new(mover, support, rotation, monkey);
                if occ(m.dest) {
                    continue;
                }
                if monkey && !occ(m.second_support().expect("monkey")) {
                    continue;
                }
                let blocked = table.cells(monkey, rotation, support).iter().any(|&d| occ(mover + d));
                if !blocked {
                    out.push(m);
                }
            }
        }
    }
    out.sort_by_key(|m| (m.mover, m.rotation, m.dest, m.kind));
    out
}

/// All legal moves, sorted by mover, rotation, destination.
pub fn legal_moves(c: &Configuration, model: ModelId) -> Vec<Move> {
    let mut out = Vec::new();
    if c.len() < 2 {
        return out;
    }
    for mover in c.iter() {
        if c.is_connected_without(mover) {
            out.extend(moves_ignoring_connectivity(c, mover, model));
        }
    }
    out
}

/// Applies a move after checking it.
pub fn apply(c: &Configuration, m: &Move, model: ModelId) -> Result<Configuration, IllegalMove> {
    check_move(c, m, model)?;
    Ok(c.with_moved(m.mover, m.dest))
}

/// Replays `moves` from `start`, re-checking legality at every step.
pub fn verify_moves<'a, I>(start: &Configuration, moves: I, model: ModelId) -> Result<Configuration, MoveError>
where
    I: IntoIterator<Item = &'a Move>,
{
    let mut cur = start.clone();
    for (index, m) in moves.into_iter().enumerate() {
        cur = apply(&cur, m, model).map_err(|reason| MoveError::StepIllegal { index, reason })?;
    }
    Ok(cur)
}

/// Pivots `m` clockwise until it first returns to its start cell.
///
/// At each step the module takes its clockwise move that keeps following the
/// boundary it is rolling along; restricted moves are preferred over monkey
/// moves with the same support.
pub fn cw_cycle(c: &Configuration, m: Cell) -> Result<Vec<Move>, MoveError> {
    let cap = 6 * c.len().max(1);
    let mut cur = c.clone();
    let mut pos = m;
    let mut prev_support: Option<Cell> = None;
    let mut out = Vec::new();
    loop {
        let moves: Vec<Move> = legal_moves_of(&cur, pos, ModelId::HexMonkey)
            .into_iter()
            .filter(|mv| mv.rotation == Rotation::Cw)
            .collect();
        let next = pick_boundary_follow(&cur, pos, prev_support, &moves, Rotation::Cw)
            .ok_or(MoveError::NoCwMove(pos))?;
        prev_support = next.second_support().or(next.support());
        cur = cur.with_moved(next.mover, next.dest);
        pos = next.dest;
        out.push(next);
        if pos == m {
            return Ok(out);
        }
        if out.len() > cap {
            return Err(MoveError::CycleCapExceeded(m));
        }
    }
}

/// Chooses the move that continues rolling along the boundary in `sense`.
///
/// A clockwise pivot about the neighbor in direction `d` lands in direction
/// `d` rotated counter-clockwise, so the support is the occupied neighbor
/// that leads a run of occupied neighbors in the rolling direction. After a
/// pivot the module keeps rolling on the run holding its previous support;
/// without a previous support the run in front of the widest gap is used.
pub(crate) fn pick_boundary_follow(
    c: &Configuration,
    pos: Cell,
    prev_support: Option<Cell>,
    moves: &[Move],
    sense: Rotation,
) -> Option<Move> {
    let occupied: Vec<bool> = Direction::ALL.iter().map(|&d| c.contains(pos.neighbor(d))).collect();
    if occupied.iter().all(|&o| o) {
        return None;
    }
    let ahead = |i: usize| match sense {
        Rotation::Cw => (i + 5) % 6,
        Rotation::Ccw => (i + 1) % 6,
    };
    let support_idx = match prev_support.and_then(|s| pos.direction_to(s)).map(Direction::index) {
        Some(mut i) if occupied[i] => {
            while occupied[ahead(i)] {
                i = ahead(i);
            }
            i
        }
        _ => {
            let gap = |i: usize| {
                let mut j = ahead(i);
                let mut n = 0;
                while !occupied[j] && n < 6 {
                    n += 1;
                    j = ahead(j);
                }
                n
            };
            (0..6)
                .filter(|&i| occupied[i] && !occupied[ahead(i)])
                .max_by_key(|&i| (gap(i), std::cmp::Reverse(i)))?
        }
    };
    // when the pivot about the preferred support is blocked (a dead-end bay),
    // roll on with the next leading support in the rolling direction
    let mut order = vec![support_idx];
    let mut i = support_idx;
    for _ in 0..5 {
        i = ahead(i);
        if occupied[i] && !occupied[ahead(i)] {
            order.push(i);
        }
    }
    order.into_iter().find_map(|idx| {
        let support = pos.neighbor(Direction::from_index(idx));
        let mut candidates: Vec<&Move> = moves
            .iter()
            .filter(|m| m.rotation == sense && m.support() == Some(support))
            .collect();
        candidates.sort_by_key(|m| m.kind.is_monkey());
        candidates.first().map(|m| **m)
    })
}
