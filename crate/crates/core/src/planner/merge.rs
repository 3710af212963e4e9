//! Phase 2: merge leaf blocks until the working graph is 2-connected.
//!
//! [`phase2`] repeatedly takes the deepest leaf block ℓ of the block tree
//! and merges it. The frame is turned so that ℓ's parent cut vertex is as
//! far as possible from ℓ's south-west extreme row, and 2-free modules of ℓ
//! ascend from that row: the topmost module of the extreme path first. An
//! ascending module walks along the boundary until it lands where it
//! bridges ℓ to the rest of the graph, which removes at least one block.
//! When ℓ has no 2-free module, a pocket of ℓ is deflated (or its empty
//! cell bubbled up) so that modules become free.
//!
//! If no ascending module can bridge, the working graph is compacted into
//! a 2-connected zig-zag strip hanging above the root; that fallback is
//! counted in the stats.

use std::collections::{BTreeSet, HashSet};

use super::walk::{ball, local_search, SoloReach};
use super::{min_degree, Phase, PlannerError, PlannerState};
use crate::configuration::{extreme_sw_path, is_connected_set, sw_row_index, Configuration};
use crate::graph_analysis::{block_tree, is_2free, root_of, BlockTree};
use crate::hexgrid::{Cell, Direction, Frame};
use crate::move_model::{legal_moves_of, ModelId, Move, Rotation};

pub fn phase2(s: &mut PlannerState) -> Result<(), PlannerError> {
    if s.working().len() < 3 {
        return Ok(());
    }
    let n = s.config().len();
    let mut rounds = 0;
    loop {
        let g = s.working();
        let tree = block_tree(&g);
        if tree.len() <= 1 {
            return Ok(());
        }
        rounds += 1;
        let leaf = tree.leaves()[0];
        if rounds <= 3 * n && merge(s, &tree, leaf)? {
            s.stats.event("phase2.merge");
            continue;
        }
        s.stats.event("phase2.compact-fallback");
        return compact(s);
    }
}

/// The frame in which `cut` is farthest from the south-west extreme row of
/// `ell`; ties go to the first frame in [`Frame::all`] order.
pub(crate) fn orientation(ell: &BTreeSet<Cell>, cut: Cell) -> Frame {
    Frame::all()
        .max_by_key(|&f| {
            let low = ell.iter().map(|&c| sw_row_index(c, f)).max().unwrap_or(0);
            // max_by_key keeps the last maximum; negate the order to keep the first
            (low - sw_row_index(cut, f), std::cmp::Reverse(f.rotation + 6 * f.mirrored as u8))
        })
        .expect("twelve frames")
}

/// One merge step on leaf block `leaf`; true if the block count dropped.
fn merge(s: &mut PlannerState, tree: &BlockTree, leaf: usize) -> Result<bool, PlannerError> {
    let ell = tree.blocks[leaf].clone();
    let cut = tree.parent_cut(leaf).expect("leaf has a parent");
    let before = tree.len();
    for attempt in 0..=ell.len() {
        let c = s.config().clone();
        let g = s.working();
        let cur_tree = block_tree(&g);
        if cur_tree.len() < before {
            return Ok(true);
        }
        // ℓ as it is now: the block holding most of the original modules
        let Some(ell_now) = cur_tree
            .blocks
            .iter()
            .filter(|b| b.contains(&cut))
            .max_by_key(|b| b.intersection(&ell).count())
            .cloned()
        else {
            return Ok(false);
        };
        let frame = orientation(&ell_now, cut);
        let free: Vec<Cell> = ascending_order(&ell_now, cut, frame)
            .into_iter()
            .filter(|&x| is_2free(&c, &ell_now, x, ModelId::HexMonkey))
            .collect();
        for &x in &free {
            if let Some(path) = bridge_walk(&c, x, before) {
                s.apply_all(&path, Phase::Phase2, "bridge")?;
                s.stats.event("phase2.bridge");
                return Ok(true);
            }
        }
        if attempt == ell.len() {
            break;
        }
        // no bridge from a free module: work on a pocket of ℓ
        if !free_a_module(s, &ell_now, frame, before)? {
            break;
        }
    }
    Ok(false)
}

/// Modules of ℓ other than the cut, in ascending order: the extreme
/// south-west path from its top down, then the rest by distance from the cut.
fn ascending_order(ell: &BTreeSet<Cell>, cut: Cell, frame: Frame) -> Vec<Cell> {
    let body: BTreeSet<Cell> = ell.iter().copied().filter(|&x| x != cut).collect();
    let mut out: Vec<Cell> = extreme_sw_path(&body, frame).into_iter().rev().collect();
    let mut rest: Vec<Cell> = body.iter().copied().filter(|x| !out.contains(x)).collect();
    rest.sort_by_key(|&x| (std::cmp::Reverse(x.distance(cut)), x));
    out.extend(rest);
    out
}

/// Shortest walk of `x` to a cell where the block count drops below
/// `before` and no module is left with a single neighbor.
fn bridge_walk(c: &Configuration, x: Cell, before: usize) -> Option<Vec<Move>> {
    let mut rest = c.cells().clone();
    rest.remove(&x);
    if !is_connected_set(&rest) {
        return None;
    }
    let reach = SoloReach::new(&rest, x);
    reach.positions().iter().skip(1).copied().find_map(|y| {
        let mut after = rest.clone();
        after.insert(y);
        (min_degree(&after) >= 2 && block_tree(&after).len() < before).then(|| reach.path_to(y).expect("reachable"))
    })
}

/// Deflates or bubbles up a pocket of ℓ; true if something changed.
fn free_a_module(s: &mut PlannerState, ell: &BTreeSet<Cell>, frame: Frame, before: usize) -> Result<bool, PlannerError> {
    let c = s.config().clone();
    let ell_cfg = Configuration::from_set_unchecked(ell.clone());
    let mut pockets: Vec<Cell> = ell_cfg.pockets().into_iter().flatten().filter(|p| !c.contains(*p)).collect();
    // the pocket cells nearest to the extreme row come first
    pockets.sort_by_key(|&p| (std::cmp::Reverse(sw_row_index(p, frame)), p));
    for p in pockets {
        if let Some(seq) = deflate_moves(&c, p, before) {
            s.apply_all(&seq, Phase::Phase2, "deflate")?;
            s.stats.event("phase2.deflate");
            return Ok(true);
        }
        if let Some(seq) = bubble_up_moves(&c, p, frame, before) {
            s.apply_all(&seq, Phase::Phase2, "bubble-up")?;
            s.stats.event("phase2.bubble-up");
            return Ok(true);
        }
    }
    Ok(false)
}

fn keeps_structure(after: &Configuration, before: usize) -> bool {
    min_degree(after.cells()) >= 2 && block_tree(after.cells()).len() <= before
}

fn deflate_moves(c: &Configuration, p: Cell, before: usize) -> Option<Vec<Move>> {
    let region: HashSet<Cell> = ball(&[p], 2);
    let pocket_area = |x: &Configuration| x.pockets().iter().map(|q| q.len()).sum::<usize>();
    let area = pocket_area(c);
    local_search(c, &region, 6, 60_000, |x| {
        x.contains(p) && pocket_area(x) < area && keeps_structure(x, before)
    })
}

fn bubble_up_moves(c: &Configuration, p: Cell, frame: Frame, before: usize) -> Option<Vec<Move>> {
    let up = frame.offset(p, &[Direction::NW]);
    if c.contains(up) {
        let region: HashSet<Cell> = ball(&[p, up], 1);
        return local_search(c, &region, 4, 20_000, |x| {
            x.contains(p) && !x.contains(up) && keeps_structure(x, before)
        });
    }
    None
}

/// Fills the empty cell `p` so that the pocket area shrinks, moving only
/// modules within distance two of `p`, without creating blocks or degree-1
/// modules.
pub fn op_deflate(s: &mut PlannerState, p: Cell) -> Result<(), PlannerError> {
    let before = block_tree(&s.working()).len();
    let seq = deflate_moves(s.config(), p, before)
        .ok_or_else(|| PlannerError::internal("PatternMismatch", format!("cannot deflate at {p}"), s.config()))?;
    s.apply_all(&seq, Phase::Phase2, "deflate")
}

/// Moves the empty cell `p` one step up-left (in `frame`): the module there
/// drops into `p`.
pub fn op_bubble_up(s: &mut PlannerState, p: Cell, frame: Frame) -> Result<(), PlannerError> {
    let before = block_tree(&s.working()).len();
    let seq = bubble_up_moves(s.config(), p, frame, before)
        .ok_or_else(|| PlannerError::internal("PatternMismatch", format!("cannot bubble up at {p}"), s.config()))?;
    s.apply_all(&seq, Phase::Phase2, "bubble-up")
}

/// Pivots each module of `path` once in direction `d`, in order. A module
/// takes the slot its predecessor just left when it can. A degree-1 module
/// left next to the following module is pivoted back the other way.
pub fn op_shift(s: &mut PlannerState, path: &[Cell], d: Rotation) -> Result<(), PlannerError> {
    let mut vacated: Option<Cell> = None;
    for (index, &m) in path.iter().enumerate() {
        let moves: Vec<Move> = legal_moves_of(s.config(), m, ModelId::HexMonkey)
            .into_iter()
            .filter(|mv| mv.rotation == d)
            .collect();
        let chosen = moves
            .iter()
            .find(|mv| Some(mv.dest) == vacated)
            .or_else(|| moves.iter().find(|mv| !mv.kind.is_monkey()))
            .or_else(|| moves.first())
            .copied()
            .ok_or_else(|| {
                PlannerError::internal("ShiftBlocked", format!("module {index} of the shift ({m}) cannot pivot"), s.config())
            })?;
        s.apply(chosen, Phase::Phase2, "shift")?;
        vacated = Some(m);
        if let Some(&next) = path.get(index + 1) {
            let lone = next
                .neighbors()
                .into_iter()
                .find(|&r| s.config().contains(r) && !path.contains(&r) && s.config().degree(r) == 1);
            if let Some(r) = lone {
                let back = legal_moves_of(s.config(), r, ModelId::HexMonkey)
                    .into_iter()
                    .find(|mv| mv.rotation == d.flipped());
                if let Some(mv) = back {
                    s.apply(mv, Phase::Phase2, "shift")?;
                }
            }
        }
    }
    Ok(())
}

/// Fallback: rebuilds the working graph as a zig-zag strip of width two
/// growing upward from the root, until the graph is 2-connected.
fn compact(s: &mut PlannerState) -> Result<(), PlannerError> {
    let g = s.working();
    let root = root_of(&g);
    let mut strip: Vec<Cell> = vec![root];
    let mut in_strip: BTreeSet<Cell> = BTreeSet::from([root]);
    loop {
        if block_tree(&s.working()).len() <= 1 {
            return Ok(());
        }
        let last = *strip.last().expect("nonempty");
        let step = if strip.len() % 2 == 1 { Direction::NW } else { Direction::NE };
        let target = last.neighbor(step);
        let config = s.config().cells().clone();
        let mut chosen = None;
        let mut candidates: Vec<Cell> = s.working().into_iter().filter(|x| !in_strip.contains(x)).collect();
        // farthest from the strip first keeps the remainder compact
        candidates.sort_by_key(|&x| (std::cmp::Reverse(x.distance(root)), x));
        for x in candidates {
            let mut rest = config.clone();
            rest.remove(&x);
            if !is_connected_set(&rest) {
                continue;
            }
            if let Some(path) = SoloReach::new(&rest, x).path_to(target) {
                chosen = Some(path);
                break;
            }
        }
        let path = chosen.ok_or_else(|| {
            PlannerError::internal("PreconditionViolated", format!("no module reaches strip cell {target}"), s.config())
        })?;
        s.apply_all(&path, Phase::Phase2, "compact")?;
        strip.push(target);
        in_strip.insert(target);
    }
}
