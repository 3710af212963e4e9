//! Phase 3: build the canonical path P on top of the working graph.
//!
//! The topmost rightmost module of G starts P. Then, repeatedly, a module of
//! G walks around the boundary to the cell above the top of P and becomes
//! its new top. Modules whose removal keeps G 2-connected are preferred, so
//! the working graph stays 2-connected while it shrinks; a module whose
//! removal only keeps the whole configuration connected is the fallback.

use std::collections::BTreeSet;

use super::walk::SoloReach;
use super::{Phase, PlannerError, PlannerState};
use crate::configuration::is_connected_set;
use crate::graph_analysis::{is_biconnected, root_of};
use crate::hexgrid::{Cell, Direction};

pub fn phase3(s: &mut PlannerState) -> Result<(), PlannerError> {
    let g = s.working();
    if g.is_empty() {
        return Ok(());
    }
    if s.path().is_empty() {
        s.push_path(root_of(&g));
    }
    loop {
        let g = s.working();
        if g.is_empty() {
            return Ok(());
        }
        let top = *s.path().last().expect("path started");
        let target = top.neighbor(Direction::N);
        let config = s.config().cells().clone();
        // rank: keeps G 2-connected, keeps G connected, keeps the whole
        // configuration connected
        let mut ranked: Vec<(u8, Cell)> = Vec::new();
        for &m in &g {
            let mut rest = config.clone();
            rest.remove(&m);
            if !is_connected_set(&rest) {
                continue;
            }
            let mut g_rest = g.clone();
            g_rest.remove(&m);
            let rank = if g_rest.is_empty() || is_biconnected(&g_rest) {
                0
            } else if is_connected_set(&g_rest) {
                1
            } else {
                2
            };
            ranked.push((rank, m));
        }
        ranked.sort();
        let mut done = false;
        for &(rank, m) in &ranked {
            let mut rest: BTreeSet<Cell> = config.clone();
            rest.remove(&m);
            let reach = SoloReach::new(&rest, m);
            if let Some(path) = reach.path_to(target) {
                s.apply_all(&path, Phase::Phase3, "extract")?;
                s.push_path(target);
                if rank > 0 {
                    s.stats.event(format!("phase3.rank{rank}"));
                }
                done = true;
                break;
            }
        }
        if !done {
            return Err(PlannerError::internal(
                "PreconditionViolated",
                format!("no module can reach the top of the path at {target}"),
                s.config(),
            ));
        }
    }
}
