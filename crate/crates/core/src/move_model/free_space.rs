//! Free-space requirements of the pivoting moves.
//!
//! [`FreeSpaceTable::global`] is a frozen integer table. [`derive_free_space`]
//! regenerates it from continuous geometry: a unit hexagon is rotated about
//! the pivot vertex through the whole arc in small angular steps, shrunk by a
//! tiny epsilon so that touching along edges or at vertices does not count,
//! and every grid cell whose interior it meets is marked. The mover's own
//! start cell is dropped from the result.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use crate::hexgrid::{Cell, Direction};
use crate::move_model::{Move, Rotation};

/// Relative cells (from the mover) that must be empty, per move family.
///
/// Indexed by `[monkey][rotation][support direction]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeSpaceTable {
    entries: [[[Vec<Cell>; 6]; 2]; 2],
}

// Support at N. Frozen output of `derive_free_space(1.0, 1e-9)`.
const RESTRICTED_CW: &[(i32, i32)] = &[(-2, 1), (-1, 0), (-1, 1), (0, 1)];
const RESTRICTED_CCW: &[(i32, i32)] = &[(0, 1), (1, 0), (1, -1), (2, -1)];
const MONKEY_CW: &[(i32, i32)] = &[(-1, 0), (-1, 1), (0, 1)];
const MONKEY_CCW: &[(i32, i32)] = &[(0, 1), (1, -1), (1, 0)];

fn rot_index(r: Rotation) -> usize {
    match r {
        Rotation::Cw => 0,
        Rotation::Ccw => 1,
    }
}

impl FreeSpaceTable {
    /// Expands base cases (support at N) by the grid's six-fold symmetry.
    pub fn from_base(base: [[Vec<Cell>; 2]; 2]) -> Self {
        let entries = std::array::from_fn(|k| {
            std::array::from_fn(|r| {
                std::array::from_fn(|d| {
                    let mut cells: Vec<Cell> =
                        base[k][r].iter().map(|c| c.rotate_cw(d as u32)).collect();
                    cells.sort();
                    cells
                })
            })
        });
        FreeSpaceTable { entries }
    }

    pub fn frozen() -> Self {
        let conv = |xs: &[(i32, i32)]| xs.iter().map(|&(q, r)| Cell::new(q, r)).collect::<Vec<_>>();
        FreeSpaceTable::from_base([
            [conv(RESTRICTED_CW), conv(RESTRICTED_CCW)],
            [conv(MONKEY_CW), conv(MONKEY_CCW)],
        ])
    }

    pub fn global() -> &'static FreeSpaceTable {
        static TABLE: OnceLock<FreeSpaceTable> = OnceLock::new();
        TABLE.get_or_init(FreeSpaceTable::frozen)
    }

    pub fn cells(&self, monkey: bool, rotation: Rotation, support: Direction) -> &[Cell] {
        &self.entries[monkey as usize][rot_index(rotation)][support.index()]
    }

    /// Base entries (support at N), for printing and regression checks.
    pub fn base(&self) -> [[Vec<Cell>; 2]; 2] {
        std::array::from_fn(|k| std::array::from_fn(|r| self.entries[k][r][0].clone()))
    }
}

type Pt = (f64, f64);

fn hexagon(center: Pt, radius: f64) -> [Pt; 6] {
    std::array::from_fn(|k| {
        let t = (60.0 * k as f64).to_radians();
        (center.0 + radius * t.cos(), center.1 + radius * t.sin())
    })
}

fn rotate(p: Pt, about: Pt, angle_deg: f64) -> Pt {
    let (s, c) = angle_deg.to_radians().sin_cos();
    let (dx, dy) = (p.0 - about.0, p.1 - about.1);
    (about.0 + c * dx - s * dy, about.1 + s * dx + c * dy)
}

fn centroid(poly: &[Pt]) -> Pt {
    let n = poly.len() as f64;
    (poly.iter().map(|p| p.0).sum::<f64>() / n, poly.iter().map(|p| p.1).sum::<f64>() / n)
}

/// Positive-area overlap of two convex polygons (separating axis test).
fn overlaps(a: &[Pt], b: &[Pt]) -> bool {
    for poly in [a, b] {
        for i in 0..poly.len() {
            let p = poly[i];
            let q = poly[(i + 1) % poly.len()];
            let axis = (-(q.1 - p.1), q.0 - p.0);
            let proj = |pts: &[Pt]| {
                pts.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
                    let d = v.0 * axis.0 + v.1 * axis.1;
                    (lo.min(d), hi.max(d))
                })
            };
            let (alo, ahi) = proj(a);
            let (blo, bhi) = proj(b);
            if ahi <= blo || bhi <= alo {
                return false;
            }
        }
    }
    true
}

/// Poses of the moving hexagon sampled along the move's arc(s).
fn sweep_poses(m: &Move, step_deg: f64, shrink: f64) -> Vec<[Pt; 6]> {
    let sign = match m.rotation {
        Rotation::Ccw => 1.0,
        Rotation::Cw => -1.0,
    };
    let start = hexagon(m.mover.center(), 1.0);
    let steps = |arc: f64| (arc / step_deg).ceil() as usize;
    let mut poses = Vec::new();
    let mut push = |poly: [Pt; 6]| {
        let c = centroid(&poly);
        let shrunk = poly.map(|p| (c.0 + (p.0 - c.0) * (1.0 - shrink), c.1 + (p.1 - c.1) * (1.0 - shrink)));
        poses.push(shrunk);
    };
    match m.kind {
        super::MoveKind::Restricted { pivot } => {
            let v = pivot.point();
            let n = steps(120.0);
            for i in 0..=n {
                let a = sign * 120.0 * i as f64 / n as f64;
                push(start.map(|p| rotate(p, v, a)));
            }
        }
        super::MoveKind::Monkey { first_pivot, second_pivot } => {
            let v = first_pivot.point();
            let w = second_pivot.point();
            let n = steps(60.0);
            for i in 0..=n {
                let a = sign * 60.0 * i as f64 / n as f64;
                push(start.map(|p| rotate(p, v, a)));
            }
            let half = start.map(|p| rotate(p, v, sign * 60.0));
            for i in 0..=n {
                let a = sign * 60.0 * i as f64 / n as f64;
                push(half.map(|p| rotate(p, w, a)));
            }
        }
    }
    poses
}

/// Cells (relative to the mover) whose interior the swept hexagon meets,
/// excluding the mover's start cell.
pub fn sweep_cells(m: &Move, step_deg: f64, shrink: f64) -> BTreeSet<Cell> {
    let poses = sweep_poses(m, step_deg, shrink);
    let mut marked = BTreeSet::new();
    for q in -4..=4 {
        for r in -4..=4 {
            let cell = m.mover + Cell::new(q, r);
            if cell == m.mover {
                continue;
            }
            let poly = hexagon(cell.center(), 1.0);
            if poses.iter().any(|pose| overlaps(pose, &poly)) {
                marked.insert(Cell::new(q, r));
            }
        }
    }
    marked
}

/// Whether the last sampled pose of `m` coincides with its destination cell.
pub fn sweep_ends_at_dest(m: &Move) -> bool {
    let poses = sweep_poses(m, 1.0, 0.0);
    let last = poses.last().expect("poses");
    let (cx, cy) = centroid(last);
    let (dx, dy) = m.dest.center();
    (cx - dx).abs() < 1e-9 && (cy - dy).abs() < 1e-9
}

/// Regenerates the full table from the continuous sweep.
pub fn derive_free_space(step_deg: f64, shrink: f64) -> FreeSpaceTable {
    let base = std::array::from_fn(|k| {
        std::array::from_fn(|r| {
            let rotation = if r == 0 { Rotation::Cw } else { Rotation::Ccw };
            let m = Move::new(Cell::ORIGIN, Direction::N, rotation, k == 1);
            sweep_cells(&m, step_deg, shrink).into_iter().collect()
        })
    });
    // the base case is rotated to the other supports only after checking
    // that the sweep itself is rotation-equivariant
    let table = FreeSpaceTable::from_base(base);
    for support in Direction::ALL {
        for (k, monkey) in [false, true].into_iter().enumerate() {
            for rotation in [Rotation::Cw, Rotation::Ccw] {
                let m = Move::new(Cell::ORIGIN, support, rotation, monkey);
                let swept: Vec<Cell> = sweep_cells(&m, step_deg, shrink).into_iter().collect();
                debug_assert_eq!(swept, table.entries[k][rot_index(rotation)][support.index()]);
            }
        }
    }
    table
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frozen_table_matches_sweep() {
        assert_eq!(FreeSpaceTable::frozen(), derive_free_space(1.0, 1e-9));
    }

    #[test]
    fn finer_sampling_agrees() {
        assert_eq!(FreeSpaceTable::frozen(), derive_free_space(0.1, 1e-9));
    }

    #[test]
    fn sweeps_end_on_destination() {
        for support in Direction::ALL {
            for monkey in [false, true] {
                for rotation in [Rotation::Cw, Rotation::Ccw] {
                    let m = Move::new(Cell::new(2, -1), support, rotation, monkey);
                    assert!(sweep_ends_at_dest(&m), "{m}");
                    assert!(m.free_cells().contains(&m.dest));
                }
            }
        }
    }

    #[test]
    fn restricted_and_monkey_sweeps_are_exclusive() {
        // a restricted move sweeps the cell a monkey move needs as its
        // second support, so at most one of the two can be legal
        for support in Direction::ALL {
            for rotation in [Rotation::Cw, Rotation::Ccw] {
                let r = Move::new(Cell::ORIGIN, support, rotation, false);
                let m = Move::new(Cell::ORIGIN, support, rotation, true);
                assert!(r.free_cells().contains(&m.second_support().unwrap()));
            }
        }
    }
}
