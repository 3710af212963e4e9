//! Search helpers: a single module walking with everything else fixed, and
//! bounded searches over a few modules near a spot.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use crate::configuration::Configuration;
use crate::hexgrid::Cell;
use crate::move_model::{candidate_moves, legal_moves_of, ModelId, Move};

/// Cells a lone module can reach by pivoting around a fixed, connected rest.
pub(crate) struct SoloReach {
    parent: HashMap<Cell, Option<Move>>,
    order: Vec<Cell>,
}

impl SoloReach {
    /// Breadth-first search from `start`; `rest` must be connected and must
    /// not contain `start`.
    pub(crate) fn new(rest: &BTreeSet<Cell>, start: Cell) -> SoloReach {
        let mut parent = HashMap::from([(start, None)]);
        let mut order = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(pos) = queue.pop_front() {
            for m in candidate_moves(|x| rest.contains(&x), pos, ModelId::HexMonkey) {
                if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(m.dest) {
                    e.insert(Some(m));
                    order.push(m.dest);
                    queue.push_back(m.dest);
                }
            }
        }
        SoloReach { parent, order }
    }

    /// Reachable cells in breadth-first order, starting with the start cell.
    pub(crate) fn positions(&self) -> &[Cell] {
        &self.order
    }

    pub(crate) fn path_to(&self, target: Cell) -> Option<Vec<Move>> {
        let mut out = Vec::new();
        let mut cur = target;
        loop {
            match self.parent.get(&cur)? {
                None => break,
                Some(m) => {
                    out.push(*m);
                    cur = m.mover;
                }
            }
        }
        out.reverse();
        Some(out)
    }
}

/// Breadth-first search over configurations where only modules inside
/// `region` move (and only to cells inside it), for at most `depth` moves.
/// Returns the shortest sequence reaching a configuration meeting `goal`.
pub(crate) fn local_search(
    start: &Configuration,
    region: &HashSet<Cell>,
    depth: usize,
    max_states: usize,
    goal: impl Fn(&Configuration) -> bool,
) -> Option<Vec<Move>> {
    if goal(start) {
        return Some(Vec::new());
    }
    let mut parent: HashMap<Configuration, (Configuration, Move)> = HashMap::new();
    let mut seen: HashSet<Configuration> = HashSet::from([start.clone()]);
    let mut frontier = vec![start.clone()];
    for _ in 0..depth {
        let mut next = Vec::new();
        for c in &frontier {
            for mover in c.iter().filter(|x| region.contains(x)) {
                for m in legal_moves_of(c, mover, ModelId::HexMonkey) {
                    if !region.contains(&m.dest) {
                        continue;
                    }
                    let after = c.with_moved(m.mover, m.dest);
                    if !seen.insert(after.clone()) {
                        continue;
                    }
                    parent.insert(after.clone(), (c.clone(), m));
                    if goal(&after) {
                        let mut out = vec![m];
                        let mut cur = c.clone();
                        while let Some((prev, mv)) = parent.get(&cur) {
                            out.push(*mv);
                            cur = prev.clone();
                        }
                        out.reverse();
                        return Some(out);
                    }
                    if seen.len() > max_states {
                        return None;
                    }
                    next.push(after);
                }
            }
        }
        frontier = next;
    }
    None
}

/// Cells within `radius` of any of `centers`.
pub(crate) fn ball(centers: &[Cell], radius: i32) -> HashSet<Cell> {
    let mut out = HashSet::new();
    for &c in centers {
        for dq in -radius..=radius {
            for dr in -radius..=radius {
                let x = c + Cell::new(dq, dr);
                if x.distance(c) <= radius {
                    out.insert(x);
                }
            }
        }
    }
    out
}
