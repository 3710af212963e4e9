//! Brute-force oracle: every connected shape of `n` modules up to
//! translation, and the graph of single legal moves between them.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::path::PathBuf;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::configuration::{is_connected_set, Configuration};
use crate::error::ExplorerError;
use crate::hexgrid::Cell;
use crate::move_model::{legal_moves, ModelId, Move};

pub const DEFAULT_CAP: usize = 8;

/// Bumped whenever the cached graph format or move rules change.
pub const CACHE_VERSION: u32 = 1;

fn check_cap(n: usize, cap: usize) -> Result<(), ExplorerError> {
    if n == 0 || n > cap {
        return Err(ExplorerError::CapExceeded { n, cap });
    }
    Ok(())
}

/// All connected shapes of `n` cells, normalized and sorted.
pub fn enumerate(n: usize) -> Result<Vec<Configuration>, ExplorerError> {
    enumerate_capped(n, DEFAULT_CAP)
}

/// Level-by-level growth: every shape of size k+1 arises by adding one empty
/// neighbor cell to a shape of size k.
pub fn enumerate_capped(n: usize, cap: usize) -> Result<Vec<Configuration>, ExplorerError> {
    check_cap(n, cap)?;
    let mut level: HashSet<Configuration> =
        HashSet::from([Configuration::from_cells([Cell::ORIGIN]).expect("singleton")]);
    for _ in 1..n {
        level = level
            .par_iter()
            .flat_map_iter(|shape| {
                let border: BTreeSet<Cell> = shape
                    .iter()
                    .flat_map(|c| c.neighbors())
                    .filter(|&x| !shape.contains(x))
                    .collect();
                border.into_iter().map(move |x| {
                    Configuration::from_cells(shape.iter().chain([x]))
                        .expect("growth keeps connectivity")
                        .normalize()
                })
            })
            .collect();
    }
    let mut out: Vec<Configuration> = level.into_iter().collect();
    out.sort();
    Ok(out)
}

/// Independent enumerator: picks `n - 1` cells out of a patch around the
/// origin, keeps the connected sets whose smallest cell is the origin.
pub fn enumerate_slow(n: usize) -> Vec<Configuration> {
    assert!(n >= 1);
    let radius = n as i32 - 1;
    let patch: Vec<Cell> = (-radius..=radius)
        .flat_map(|q| (-radius..=radius).map(move |r| Cell::new(q, r)))
        .filter(|&c| c > Cell::ORIGIN && c.distance(Cell::ORIGIN) <= radius)
        .collect();
    let mut out = Vec::new();
    let mut chosen = vec![Cell::ORIGIN];
    fn rec(patch: &[Cell], start: usize, left: usize, chosen: &mut Vec<Cell>, out: &mut Vec<Configuration>) {
        if left == 0 {
            let set: BTreeSet<Cell> = chosen.iter().copied().collect();
            if is_connected_set(&set) {
                out.push(Configuration::from_cells(set).expect("connected"));
            }
            return;
        }
        for i in start..patch.len() {
            chosen.push(patch[i]);
            rec(patch, i + 1, left - 1, chosen, out);
            chosen.pop();
        }
    }
    rec(&patch, 0, n - 1, &mut chosen, &mut out);
    out.sort();
    out
}

/// Shapes of one size as nodes, single legal moves as arcs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReconfigGraph {
    pub model: ModelId,
    pub n: usize,
    pub nodes: Vec<Configuration>,
    /// Directed arcs (i, j): some legal move of node i yields node j.
    pub arcs: BTreeSet<(usize, usize)>,
    /// Moves whose result normalizes back to the same shape.
    pub self_loops: usize,
}

impl ReconfigGraph {
    /// Undirected edges with `i < j`.
    pub fn edges(&self) -> BTreeSet<(usize, usize)> {
        self.arcs.iter().map(|&(i, j)| (i.min(j), i.max(j))).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        self.arcs.iter().all(|&(i, j)| self.arcs.contains(&(j, i)))
    }

    pub fn index_of(&self, c: &Configuration) -> Option<usize> {
        self.nodes.binary_search(&c.normalize()).ok()
    }
}

pub fn build_graph(n: usize, model: ModelId) -> Result<ReconfigGraph, ExplorerError> {
    let nodes = enumerate(n)?;
    let index: HashMap<&Configuration, usize> = nodes.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let per_node: Vec<(Vec<(usize, usize)>, usize)> = nodes
        .par_iter()
        .enumerate()
        .map(|(i, c)| {
            let mut arcs = Vec::new();
            let mut loops = 0;
            for m in legal_moves(c, model) {
                let j = index[&c.with_moved(m.mover, m.dest).normalize()];
                if i == j {
                    loops += 1;
                } else {
                    arcs.push((i, j));
                }
            }
            (arcs, loops)
        })
        .collect();
    let mut arcs = BTreeSet::new();
    let mut self_loops = 0;
    for (a, l) in per_node {
        arcs.extend(a);
        self_loops += l;
    }
    Ok(ReconfigGraph { model, n, nodes, arcs, self_loops })
}

/// Connected components of the graph, each sorted, ordered by smallest node.
pub fn components(g: &ReconfigGraph) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..g.nodes.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    for &(i, j) in &g.arcs {
        let (a, b) = (find(&mut parent, i), find(&mut parent, j));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
    for i in 0..g.nodes.len() {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    let mut out: Vec<Vec<usize>> = groups.into_values().collect();
    out.sort();
    out
}

/// Shortest move sequence from `a` to any translate of `b`, searching at
/// most `budget` shapes. Moves are in `a`'s coordinates.
pub fn bfs_path(a: &Configuration, b: &Configuration, model: ModelId, budget: usize) -> Result<Vec<Move>, ExplorerError> {
    if a.len() != b.len() {
        return Err(ExplorerError::SizeMismatch(a.len(), b.len()));
    }
    let start = a.normalize();
    let goal = b.normalize();
    // parent links hold the move in the parent's normalized coordinates
    let mut parent: HashMap<Configuration, Option<(Configuration, Move)>> = HashMap::from([(start.clone(), None)]);
    let mut queue = VecDeque::from([start.clone()]);
    let mut found = start == goal;
    while !found {
        let Some(cur) = queue.pop_front() else { return Err(ExplorerError::Unreachable) };
        for m in legal_moves(&cur, model) {
            let next = cur.with_moved(m.mover, m.dest).normalize();
            if parent.contains_key(&next) {
                continue;
            }
            if parent.len() >= budget {
                return Err(ExplorerError::BudgetExceeded(budget));
            }
            parent.insert(next.clone(), Some((cur.clone(), m)));
            if next == goal {
                found = true;
                break;
            }
            queue.push_back(next);
        }
    }
    let mut chain = Vec::new();
    let mut cur = goal;
    while let Some(Some((prev, m))) = parent.get(&cur) {
        chain.push(*m);
        cur = prev.clone();
    }
    chain.reverse();
    // replay in real coordinates
    let mut actual = a.clone();
    let mut out = Vec::with_capacity(chain.len());
    for m in chain {
        let off = actual.normalizing_offset();
        let real = m.translated(-off);
        actual = actual.with_moved(real.mover, real.dest);
        out.push(real);
    }
    Ok(out)
}

/// Shapes of size `n` with no legal move.
pub fn rigidity_scan(n: usize, model: ModelId) -> Result<Vec<Configuration>, ExplorerError> {
    let shapes = enumerate(n)?;
    Ok(shapes.into_par_iter().filter(|c| legal_moves(c, model).is_empty()).collect())
}

/// Loads or builds a graph, caching it under `HEXPIVOT_CACHE_DIR` when set.
pub fn cached_graph(n: usize, model: ModelId) -> Result<ReconfigGraph, ExplorerError> {
    let Some(dir) = std::env::var_os("HEXPIVOT_CACHE_DIR").map(PathBuf::from) else {
        return build_graph(n, model);
    };
    let path = dir.join(format!("graph-v{CACHE_VERSION}-{model:?}-n{n}.json"));
    if let Ok(text) = std::fs::read_to_string(&path) {
        if let Ok(g) = serde_json::from_str::<ReconfigGraph>(&text) {
            if g.n == n && g.model == model {
                return Ok(g);
            }
        }
    }
    let g = build_graph(n, model)?;
    if std::fs::create_dir_all(&dir).is_ok() {
        if let Ok(text) = serde_json::to_string(&g) {
            // a failed cache write only costs a rebuild next time
            let _ = std::fs::write(&path, text);
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::move_model::verify_moves;

    #[test]
    fn counts_match_known_sequence() {
        let counts: Vec<usize> = (1..=6).map(|n| enumerate(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 3, 11, 44, 186, 814]);
    }

    #[test]
    fn slow_enumerator_agrees() {
        for n in 1..=5 {
            assert_eq!(enumerate_slow(n), enumerate(n).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn cap_is_enforced() {
        assert_eq!(enumerate(9), Err(ExplorerError::CapExceeded { n: 9, cap: 8 }));
        assert!(enumerate(0).is_err());
    }

    #[test]
    fn singleton_graph() {
        let g = build_graph(1, ModelId::HexMonkey).unwrap();
        assert_eq!((g.nodes.len(), g.arcs.len()), (1, 0));
    }

    #[test]
    fn small_graphs_connected_and_symmetric() {
        for n in 2..=4 {
            let g = build_graph(n, ModelId::HexMonkey).unwrap();
            assert!(g.is_symmetric());
            assert_eq!(components(&g).len(), 1, "n = {n}");
        }
    }

    #[test]
    fn bfs_paths_verify() {
        let a = Configuration::from_cells([Cell::new(0, 0), Cell::new(0, 1), Cell::new(0, 2)]).unwrap();
        let b = Configuration::from_cells([Cell::new(0, 0), Cell::new(1, 0), Cell::new(2, 0)]).unwrap();
        let plan = bfs_path(&a, &b, ModelId::HexMonkey, 10_000).unwrap();
        let end = verify_moves(&a, &plan, ModelId::HexMonkey).unwrap();
        assert!(end.same_shape(&b));
        assert!(bfs_path(&a, &a, ModelId::HexMonkey, 10).unwrap().is_empty());
    }
}
