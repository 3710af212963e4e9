//! Structure of the contact graph: blocks and cut vertices, adjacent 2-cuts,
//! 2-free modules, crews and flowers.
//!
//! All analyses take a plain cell set so they can run on a part of a
//! configuration (the planner's working graph excludes the finished path).
//! Sets of one or two modules count as 2-connected.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use crate::configuration::{components_of, is_connected_set, Configuration};
use crate::error::AnalysisError;
use crate::hexgrid::{Cell, Direction};
use crate::move_model::{legal_moves_of, ModelId};

/// Topmost module, ties broken to the right.
pub fn root_of(cells: &BTreeSet<Cell>) -> Cell {
    *cells.iter().max_by_key(|c| (c.height(), c.q)).expect("nonempty set")
}

struct Indexed {
    cells: Vec<Cell>,
    adj: Vec<Vec<usize>>,
}

impl Indexed {
    fn new(set: &BTreeSet<Cell>) -> Indexed {
        let cells: Vec<Cell> = set.iter().copied().collect();
        let index: HashMap<Cell, usize> = cells.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let adj = cells
            .iter()
            .map(|c| c.neighbors().iter().filter_map(|n| index.get(n).copied()).collect())
            .collect();
        Indexed { cells, adj }
    }
}

/// Biconnected components (as vertex sets) and cut vertices, computed with
/// the lowpoint DFS, iteratively.
fn biconnected(g: &Indexed) -> (Vec<BTreeSet<usize>>, Vec<bool>) {
    let n = g.cells.len();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut is_cut = vec![false; n];
    let mut blocks = Vec::new();
    let mut time = 0;
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        if g.adj[root].is_empty() {
            blocks.push(BTreeSet::from([root]));
            disc[root] = time;
            time += 1;
            continue;
        }
        let mut edges: Vec<(usize, usize)> = Vec::new();
        // (vertex, parent, next neighbor position)
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        disc[root] = time;
        low[root] = time;
        time += 1;
        let mut root_children = 0;
        while let Some(&mut (v, parent, ref mut next)) = stack.last_mut() {
            if *next < g.adj[v].len() {
                let w = g.adj[v][*next];
                *next += 1;
                if disc[w] == usize::MAX {
                    edges.push((v, w));
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    if v == root {
                        root_children += 1;
                    }
                    stack.push((w, v, 0));
                } else if w != parent && disc[w] < disc[v] {
                    edges.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if parent == usize::MAX {
                    continue;
                }
                low[parent] = low[parent].min(low[v]);
                if low[v] >= disc[parent] {
                    if parent != root {
                        is_cut[parent] = true;
                    }
                    let mut block = BTreeSet::new();
                    while let Some((a, b)) = edges.pop() {
                        block.insert(a);
                        block.insert(b);
                        if (a, b) == (parent, v) {
                            break;
                        }
                    }
                    blocks.push(block);
                }
            }
        }
        if root_children > 1 {
            is_cut[root] = true;
        }
    }
    (blocks, is_cut)
}

pub fn cut_vertices(cells: &BTreeSet<Cell>) -> BTreeSet<Cell> {
    let g = Indexed::new(cells);
    let (_, is_cut) = biconnected(&g);
    g.cells.iter().zip(is_cut).filter(|(_, cut)| *cut).map(|(&c, _)| c).collect()
}

/// Connected, and without cut vertices (one or two modules always qualify).
pub fn is_biconnected(cells: &BTreeSet<Cell>) -> bool {
    is_connected_set(cells) && (cells.len() <= 2 || cut_vertices(cells).is_empty())
}

/// The block tree of a connected cell set, rooted at the block holding the
/// topmost rightmost module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockTree {
    /// Blocks sorted by their smallest module.
    pub blocks: Vec<BTreeSet<Cell>>,
    pub cut_vertices: BTreeSet<Cell>,
    pub root: Cell,
    pub root_block: usize,
    parent_cut: Vec<Option<Cell>>,
    parent_block: Vec<Option<usize>>,
    depth: Vec<usize>,
}

impl BlockTree {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Cut vertex joining block `b` to its parent block.
    pub fn parent_cut(&self, b: usize) -> Option<Cell> {
        self.parent_cut[b]
    }

    pub fn parent_block(&self, b: usize) -> Option<usize> {
        self.parent_block[b]
    }

    pub fn depth(&self, b: usize) -> usize {
        self.depth[b]
    }

    pub fn children(&self, b: usize) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.parent_block[i] == Some(b)).collect()
    }

    /// Non-root blocks without children, deepest first, ties by smallest module.
    pub fn leaves(&self) -> Vec<usize> {
        let mut out: Vec<usize> = (0..self.len())
            .filter(|&b| b != self.root_block && self.children(b).is_empty())
            .collect();
        out.sort_by_key(|&b| (std::cmp::Reverse(self.depth[b]), *self.blocks[b].iter().next().unwrap()));
        out
    }

    pub fn blocks_containing(&self, m: Cell) -> Vec<usize> {
        (0..self.len()).filter(|&b| self.blocks[b].contains(&m)).collect()
    }

    /// All modules in the subtree below block `b`, including `b`.
    pub fn subtree(&self, b: usize) -> BTreeSet<Cell> {
        let mut out = BTreeSet::new();
        let mut stack = vec![b];
        while let Some(x) = stack.pop() {
            out.extend(self.blocks[x].iter().copied());
            stack.extend(self.children(x));
        }
        out
    }
}

pub fn block_tree(cells: &BTreeSet<Cell>) -> BlockTree {
    block_tree_rooted(cells, root_of(cells))
}

pub fn block_tree_rooted(cells: &BTreeSet<Cell>, root: Cell) -> BlockTree {
    let g = Indexed::new(cells);
    let (raw, is_cut) = biconnected(&g);
    let mut blocks: Vec<BTreeSet<Cell>> =
        raw.into_iter().map(|b| b.into_iter().map(|i| g.cells[i]).collect()).collect();
    blocks.sort();
    let cuts: BTreeSet<Cell> = g.cells.iter().zip(&is_cut).filter(|(_, c)| **c).map(|(&c, _)| c).collect();
    let root_block = blocks.iter().position(|b| b.contains(&root)).expect("root in some block");
    let mut by_cut: BTreeMap<Cell, Vec<usize>> = BTreeMap::new();
    for (i, b) in blocks.iter().enumerate() {
        for &v in b.intersection(&cuts) {
            by_cut.entry(v).or_default().push(i);
        }
    }
    let k = blocks.len();
    let mut parent_cut = vec![None; k];
    let mut parent_block = vec![None; k];
    let mut depth = vec![0; k];
    let mut seen = vec![false; k];
    seen[root_block] = true;
    let mut queue = VecDeque::from([root_block]);
    while let Some(b) = queue.pop_front() {
        for &v in blocks[b].intersection(&cuts) {
            for &nb in &by_cut[&v] {
                if !seen[nb] {
                    seen[nb] = true;
                    parent_cut[nb] = Some(v);
                    parent_block[nb] = Some(b);
                    depth[nb] = depth[b] + 1;
                    queue.push_back(nb);
                }
            }
        }
    }
    BlockTree { blocks, cut_vertices: cuts, root, root_block, parent_cut, parent_block, depth }
}

/// Whether `m` belongs to some 2-cut of the 2-connected `block`.
pub fn in_two_cut(block: &BTreeSet<Cell>, m: Cell) -> bool {
    if block.len() <= 3 {
        return false;
    }
    let mut rest = block.clone();
    rest.remove(&m);
    !is_biconnected(&rest)
}

/// Movable, and removing it keeps its block 2-connected.
pub fn is_2free(c: &Configuration, block: &BTreeSet<Cell>, m: Cell, model: ModelId) -> bool {
    block.contains(&m) && !in_two_cut(block, m) && !legal_moves_of(c, m, model).is_empty()
}

/// A vertex pair whose deletion disconnects its block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoCut {
    pub v1: Cell,
    pub v2: Cell,
    pub adjacent: bool,
    /// The 2-split component towards the root, when it is determined.
    pub parent: Option<BTreeSet<Cell>>,
    /// The other 2-split components, each including `v1` and `v2`.
    pub children: Vec<BTreeSet<Cell>>,
}

impl TwoCut {
    pub fn components(&self) -> impl Iterator<Item = &BTreeSet<Cell>> {
        self.parent.iter().chain(self.children.iter())
    }

    /// Trivial when a child 2-split component has 3 or 4 modules.
    pub fn is_trivial(&self) -> bool {
        self.children.iter().any(|c| c.len() == 3 || c.len() == 4)
    }
}

/// Splits `block` at `{v1, v2}`; `None` if the pair is not a 2-cut.
/// `anchor` decides which component is the parent.
pub fn split_at(block: &BTreeSet<Cell>, v1: Cell, v2: Cell, anchor: Option<Cell>) -> Option<TwoCut> {
    if block.len() < 4 || !block.contains(&v1) || !block.contains(&v2) || v1 == v2 {
        return None;
    }
    let mut rest = block.clone();
    rest.remove(&v1);
    rest.remove(&v2);
    let comps = components_of(&rest);
    if comps.len() < 2 {
        return None;
    }
    let mut parent = None;
    let mut children = Vec::new();
    for mut comp in comps {
        let holds_anchor = anchor.is_some_and(|a| comp.contains(&a));
        comp.insert(v1);
        comp.insert(v2);
        if holds_anchor {
            parent = Some(comp);
        } else {
            children.push(comp);
        }
    }
    Some(TwoCut { v1, v2, adjacent: v1.is_adjacent(v2), parent, children })
}

/// Every 2-cut of a block, by brute force over vertex pairs.
pub fn two_cuts_brute(block: &BTreeSet<Cell>) -> Vec<TwoCut> {
    let cells: Vec<Cell> = block.iter().copied().collect();
    let mut out = Vec::new();
    for (i, &a) in cells.iter().enumerate() {
        for &b in &cells[i + 1..] {
            out.extend(split_at(block, a, b, None));
        }
    }
    out
}

/// Adjacent 2-cuts `{m, v}` in the blocks of `c` containing `m`, oriented
/// towards the root. Checks that a nontrivial adjacent 2-cut has exactly two
/// split components and, when `m` is movable, is the only 2-cut through `m`.
pub fn adjacent_two_cuts_at(c: &Configuration, m: Cell) -> Result<Vec<TwoCut>, AnalysisError> {
    adjacent_two_cuts_in(c, c.cells(), m, ModelId::HexMonkey)
}

/// As [`adjacent_two_cuts_at`], on the sub-graph `g` of `c`.
pub fn adjacent_two_cuts_in(
    c: &Configuration,
    g: &BTreeSet<Cell>,
    m: Cell,
    model: ModelId,
) -> Result<Vec<TwoCut>, AnalysisError> {
    let tree = block_tree(g);
    let mut out = Vec::new();
    for b in tree.blocks_containing(m) {
        let block = &tree.blocks[b];
        let anchor = if block.contains(&tree.root) { Some(tree.root) } else { tree.parent_cut(b) };
        for v in m.neighbors() {
            let Some(cut) = split_at(block, m, v, anchor.filter(|&a| a != m && a != v)) else { continue };
            if !cut.is_trivial() {
                let count = cut.components().count();
                if count != 2 {
                    return Err(AnalysisError::ObservationViolated {
                        v1: m,
                        v2: v,
                        detail: format!("{count} split components"),
                    });
                }
                if !legal_moves_of(c, m, model).is_empty() {
                    let others = block
                        .iter()
                        .filter(|&&w| w != m && w != v)
                        .find(|&&w| split_at(block, m, w, None).is_some());
                    if let Some(&w) = others {
                        return Err(AnalysisError::ObservationViolated {
                            v1: m,
                            v2: v,
                            detail: format!("movable {m} also lies in the 2-cut with {w}"),
                        });
                    }
                }
            }
            out.push(cut);
        }
    }
    Ok(out)
}

/// A corner of `c` that is not a cut vertex, taken from a leaf block.
pub fn find_non_cut_corner(c: &Configuration) -> Result<Cell, AnalysisError> {
    let tree = block_tree(c.cells());
    let candidates = tree.leaves().into_iter().chain(std::iter::once(tree.root_block));
    for b in candidates {
        let found = tree.blocks[b]
            .iter()
            .copied()
            .find(|&m| !tree.cut_vertices.contains(&m) && c.is_corner(m));
        if let Some(m) = found {
            return Ok(m);
        }
    }
    c.iter()
        .find(|&m| !tree.cut_vertices.contains(&m) && c.is_corner(m))
        .ok_or(AnalysisError::NotFound)
}

/// A center cell and its six neighbors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Flower {
    pub center: Cell,
}

impl Flower {
    pub fn cells(&self) -> [Cell; 7] {
        let n = self.center.neighbors();
        [self.center, n[0], n[1], n[2], n[3], n[4], n[5]]
    }

    pub fn contains(&self, c: Cell) -> bool {
        self.center == c || self.center.is_adjacent(c)
    }

    /// Not containing `c` but containing a cell next to it.
    pub fn is_adjacent_to(&self, c: Cell) -> bool {
        self.center.distance(c) == 2
    }
}

/// Ordered modules that can be peeled off one after another.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Crew(pub Vec<Cell>);

/// The flower holds exactly the crew among the modules of `c`, and is
/// adjacent to a module of `ell`.
pub fn flower_valid(c: &BTreeSet<Cell>, ell: &BTreeSet<Cell>, crew: &Crew, f: Flower) -> bool {
    let inside: BTreeSet<Cell> = f.cells().into_iter().filter(|x| c.contains(x)).collect();
    let crew_set: BTreeSet<Cell> = crew.0.iter().copied().collect();
    inside == crew_set && ell.iter().any(|&m| f.is_adjacent_to(m))
}

/// Checks the crew definition against the 2-connected `block` holding it:
/// connected, and each member 2-free once its predecessors are deleted.
pub fn is_crew(c: &Configuration, block: &BTreeSet<Cell>, crew: &Crew, model: ModelId) -> bool {
    let members: BTreeSet<Cell> = crew.0.iter().copied().collect();
    if members.len() != crew.0.len() || !members.is_subset(block) || !is_connected_set(&members) {
        return false;
    }
    let mut cur_block = block.clone();
    let mut cur = c.cells().clone();
    for &m in &crew.0 {
        let Ok(cfg) = Configuration::from_cells(cur.iter().copied()) else { return false };
        if !is_2free(&cfg, &cur_block, m, model) {
            return false;
        }
        cur_block.remove(&m);
        cur.remove(&m);
    }
    true
}

/// Neighbors of `m` in `cells`, in direction order.
pub fn neighbors_in(cells: &BTreeSet<Cell>, m: Cell) -> Vec<Cell> {
    Direction::ALL.iter().map(|&d| m.neighbor(d)).filter(|n| cells.contains(n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::configuration::canonical_path;

    fn set(cells: &[(i32, i32)]) -> BTreeSet<Cell> {
        cells.iter().map(|&(q, r)| Cell::new(q, r)).collect()
    }

    fn ring() -> BTreeSet<Cell> {
        Cell::ORIGIN.neighbors().into_iter().collect()
    }

    fn naive_cuts(cells: &BTreeSet<Cell>) -> BTreeSet<Cell> {
        cells
            .iter()
            .copied()
            .filter(|&v| {
                let mut rest = cells.clone();
                rest.remove(&v);
                !rest.is_empty() && !is_connected_set(&rest)
            })
            .collect()
    }

    #[test]
    fn small_block_trees() {
        let tri = set(&[(0, 0), (0, 1), (1, 0)]);
        let t = block_tree(&tri);
        assert_eq!((t.len(), t.cut_vertices.len()), (1, 0));
        let path = canonical_path(3, Cell::ORIGIN);
        let t = block_tree(path.cells());
        assert_eq!((t.len(), t.cut_vertices.len()), (2, 1));
        assert!(t.cut_vertices.contains(&Cell::new(0, 1)));
        let mut r = ring();
        r.insert(Cell::new(0, -2));
        let t = block_tree(&r);
        assert_eq!(t.len(), 2);
        assert_eq!(t.cut_vertices, BTreeSet::from([Cell::new(0, -1)]));
        // the pendant module is topmost, so the edge is the root block
        assert_eq!(t.blocks[t.root_block].len(), 2);
        assert_eq!(t.leaves().len(), 1);
        assert_eq!(t.blocks[t.leaves()[0]].len(), 6);
    }

    #[test]
    fn two_free_examples() {
        let tri = set(&[(0, 0), (0, 1), (1, 0)]);
        let c = Configuration::from_cells(tri.clone()).unwrap();
        assert!(tri.iter().all(|&m| is_2free(&c, &tri, m, ModelId::HexMonkey)));
        let r = ring();
        let c = Configuration::from_cells(r.clone()).unwrap();
        assert!(r.iter().all(|&m| !is_2free(&c, &r, m, ModelId::HexMonkey)));
        assert!(r.iter().all(|&m| in_two_cut(&r, m)));
        let p = canonical_path(3, Cell::ORIGIN);
        let b = set(&[(0, 0), (0, 1)]);
        assert!(!is_2free(&p, &b, Cell::new(0, 1), ModelId::HexMonkey));
    }

    #[test]
    fn adjacent_cut_examples() {
        let tri = Configuration::from_cells(set(&[(0, 0), (0, 1), (1, 0)])).unwrap();
        for m in tri.iter() {
            assert!(adjacent_two_cuts_at(&tri, m).unwrap().is_empty());
        }
        // two triangles sharing the edge {(0,0),(1,0)}
        let diamond = Configuration::from_cells(set(&[(0, 0), (1, 0), (0, 1), (1, -1)])).unwrap();
        let cuts = adjacent_two_cuts_at(&diamond, Cell::new(0, 0)).unwrap();
        assert_eq!(cuts.len(), 1);
        assert_eq!(cuts[0].v2, Cell::new(1, 0));
        assert_eq!(cuts[0].components().count(), 2);
        assert!(cuts[0].components().all(|c| c.len() == 3));
        // two 6-rings sharing an edge
        let mut rings = ring();
        rings.extend(Cell::new(2, -1).neighbors());
        let c = Configuration::from_cells(rings.clone()).unwrap();
        let shared = [Cell::new(1, -1), Cell::new(1, 0)];
        let cuts = adjacent_two_cuts_at(&c, shared[0]).unwrap();
        let cut = cuts.iter().find(|k| k.v2 == shared[1]).expect("shared edge is a 2-cut");
        assert!(!cut.is_trivial());
        assert_eq!(cut.components().count(), 2);
    }

    #[test]
    fn corners_not_cut() {
        let p = canonical_path(3, Cell::ORIGIN);
        let m = find_non_cut_corner(&p).unwrap();
        assert!(m == Cell::ORIGIN || m == Cell::new(0, 2));
        let mut r = ring();
        r.insert(Cell::new(0, -2));
        let c = Configuration::from_cells(r).unwrap();
        let m = find_non_cut_corner(&c).unwrap();
        assert!(c.is_corner(m) && m != Cell::new(0, -1));
    }

    #[test]
    fn flower_examples() {
        let f = Flower { center: Cell::ORIGIN };
        let crew = Crew(vec![Cell::ORIGIN, Cell::new(0, -1), Cell::new(1, -1)]);
        let ell = set(&[(0, 2), (1, 1)]);
        let mut c: BTreeSet<Cell> = crew.0.iter().copied().collect();
        c.extend(ell.iter().copied());
        assert!(flower_valid(&c, &ell, &crew, f));
        let mut crowded = c.clone();
        crowded.insert(Cell::new(-1, 0));
        assert!(!flower_valid(&crowded, &ell, &crew, f));
        let far = set(&[(0, 5)]);
        assert!(!flower_valid(&c, &far, &crew, f));
    }

    #[test]
    fn decomposition_matches_brute_force() {
        let shapes = crate::explorer::enumerate(6).unwrap();
        for s in shapes.iter().step_by(7) {
            let cells = s.cells();
            let t = block_tree(cells);
            assert_eq!(t.cut_vertices, naive_cuts(cells));
            let mut edges = BTreeSet::new();
            for b in &t.blocks {
                for &x in b {
                    for y in x.neighbors() {
                        if b.contains(&y) {
                            edges.insert((x.min(y), x.max(y)));
                        }
                    }
                }
            }
            assert_eq!(edges.len(), s.edge_count());
            for b in &t.blocks {
                assert!(is_biconnected(b));
                let brute = two_cuts_brute(b);
                for &m in b {
                    assert_eq!(in_two_cut(b, m), brute.iter().any(|k| k.v1 == m || k.v2 == m));
                }
            }
        }
    }
}
