//! Phase 1: remove the degree-1 modules (trivial leaves) of the contact graph.
//!
//! A degree-1 module first tries to walk, alone, to a cell where it touches
//! two modules without leaving another module with a single neighbor. When
//! every reachable cell touches only one module, it is parked next to the
//! module farthest (in the contact graph) from the root, and a short local
//! coordination with nearby modules fixes it. The local situation is
//! classified into the cases (a)–(h) of the leaf-removal argument, and the
//! coordination itself is found by a bounded search over the modules within
//! distance two, which covers the move sequences of every case.

use std::collections::{BTreeSet, HashMap, VecDeque};

use super::walk::{ball, local_search, SoloReach};
use super::{Phase, PlannerError, PlannerState};
use crate::configuration::Configuration;
use crate::graph_analysis::root_of;
use crate::hexgrid::{Cell, Direction, Frame};

/// Modules with exactly one neighbor, sorted.
pub(crate) fn leaves_of(g: &BTreeSet<Cell>) -> Vec<Cell> {
    g.iter()
        .copied()
        .filter(|c| c.neighbors().iter().filter(|n| g.contains(n)).count() == 1)
        .collect()
}

fn contact_distances(g: &BTreeSet<Cell>, from: Cell) -> HashMap<Cell, usize> {
    let mut dist = HashMap::from([(from, 0)]);
    let mut queue = VecDeque::from([from]);
    while let Some(c) = queue.pop_front() {
        let d = dist[&c];
        for n in c.neighbors() {
            if g.contains(&n) && !dist.contains_key(&n) {
                dist.insert(n, d + 1);
                queue.push_back(n);
            }
        }
    }
    dist
}

/// Names the case of the leaf-removal argument for degree-1 module `m`:
/// with its neighbor `p` turned to the top, the occupancy of the cells at
/// distance two decides among `'a'..='h'`. `None` if `m` is not a leaf.
pub fn classify_leaf_case(c: &Configuration, m: Cell) -> Option<char> {
    let nbrs = c.occupied_neighbors(m);
    let [p] = nbrs.as_slice() else { return None };
    let up = m.direction_to(*p)?;
    let base = Frame { rotation: up.index() as u8, mirrored: false };
    use Direction::*;
    let occ = |f: &Frame, arrows: &[Direction]| c.contains(f.offset(m, arrows));
    let beta = |f: &Frame| occ(f, &[N, NE]);
    let beta2 = |f: &Frame| occ(f, &[N, NW]);
    // by symmetry, β' is the empty one when only one of β, β' is empty
    let frame = if !beta2(&base) || beta(&base) {
        base
    } else {
        Frame { mirrored: true, ..base }
    };
    let f = &frame;
    if !beta2(f) || !beta(f) {
        return Some(if occ(f, &[SE, NE]) { 'a' } else { 'b' });
    }
    let delta = occ(f, &[SE, NE]);
    let delta2 = occ(f, &[SW, NW]);
    if !delta || !delta2 {
        return Some('c');
    }
    if occ(f, &[N, N]) || (occ(f, &[NE, NE]) && occ(f, &[NW, NW])) {
        return Some('d');
    }
    if occ(f, &[SE, SE]) {
        return Some('e');
    }
    let q = f.offset(m, &[SE, NE]);
    if c.degree(q) == 1 {
        return Some('f');
    }
    Some(if occ(f, &[SE, S]) { 'g' } else { 'h' })
}

/// Removes all degree-1 modules from the working graph.
pub fn phase1(s: &mut PlannerState) -> Result<(), PlannerError> {
    if !s.path().is_empty() || s.config().len() <= 2 {
        return Ok(());
    }
    let n = s.config().len();
    let mut rounds = 0;
    'outer: loop {
        let g = s.config().cells().clone();
        let leaves = leaves_of(&g);
        let Some(&m) = leaves.first() else { return Ok(()) };
        rounds += 1;
        if rounds > 4 * n {
            return Err(PlannerError::internal("CaseFallthrough", "phase 1 does not converge", s.config()));
        }
        let before = leaves.len();
        let mut rest = g.clone();
        rest.remove(&m);
        let reach = SoloReach::new(&rest, m);
        let fewer = |cells: &BTreeSet<Cell>| leaves_of(cells).len() < before;
        let direct = reach.positions().iter().skip(1).copied().find(|&x| {
            let mut after = rest.clone();
            after.insert(x);
            fewer(&after)
        });
        if let Some(x) = direct {
            let path = reach.path_to(x).expect("reachable");
            s.apply_all(&path, Phase::Phase1, "pivot")?;
            s.stats.event("phase1.direct");
            continue;
        }
        // park next to the module farthest from the root, then coordinate
        let dist = contact_distances(&rest, root_of(&rest));
        let mut spots: Vec<(usize, usize, Cell)> = reach
            .positions()
            .iter()
            .enumerate()
            .filter_map(|(i, &x)| {
                let p = x.neighbors().into_iter().find(|n| rest.contains(n))?;
                Some((dist.get(&p).copied().unwrap_or(0), i, x))
            })
            .collect();
        spots.sort_by_key(|&(d, i, _)| (std::cmp::Reverse(d), i));
        for (radius, depth, budget, tries) in [(2, 5, 20_000, 6), (3, 7, 200_000, 3), (3, 9, 300_000, usize::MAX)] {
            for &(_, _, x) in spots.iter().take(tries) {
                let mut placed = rest.clone();
                placed.insert(x);
                let cfg = Configuration::from_set_unchecked(placed);
                let case = classify_leaf_case(&cfg, x).unwrap_or('?');
                let region = ball(&[x], radius);
                let found = local_search(&cfg, &region, depth, budget, |c| fewer(c.cells()));
                if let Some(seq) = found {
                    let sub = format!("case-{case}");
                    s.apply_all(&reach.path_to(x).expect("reachable"), Phase::Phase1, "park")?;
                    s.apply_all(&seq, Phase::Phase1, &sub)?;
                    s.stats.event(format!("phase1.{sub}"));
                    if radius > 2 {
                        s.stats.event("phase1.wide-search");
                    }
                    continue 'outer;
                }
            }
        }
        return Err(PlannerError::internal(
            "CaseFallthrough",
            format!("no local fix for the leaf at {m}"),
            s.config(),
        ));
    }
}
