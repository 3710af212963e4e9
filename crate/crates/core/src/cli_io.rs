//! File formats, seeded instance generation and SVG rendering.
//!
//! Configuration files hold one `q r` pair per line; `#` starts a comment
//! line and blank lines are ignored. Plan files are JSON lines with the
//! fields `mover`, `rot`, `kind`, `dest` and `phase`, always in that order.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::configuration::Configuration;
use crate::error::ConfigError;
use crate::hexgrid::{Cell, Direction, Vertex, SQRT_3};
use crate::move_model::{Move, MoveKind, Rotation};
use crate::planner::{MovePlan, Step};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("{path}: {source}")]
    File { path: PathBuf, source: std::io::Error },
}

fn file_err(path: &Path) -> impl FnOnce(std::io::Error) -> IoError + '_ {
    move |source| IoError::File { path: path.to_path_buf(), source }
}

pub fn parse_config(text: &str) -> Result<Configuration, IoError> {
    let mut cells = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: &str| IoError::Parse { line: i + 1, msg: format!("{msg}: {raw:?}") };
        let mut parts = line.split_whitespace();
        let (Some(q), Some(r), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(err("expected two integers"));
        };
        let q: i32 = q.parse().map_err(|_| err("bad q"))?;
        let r: i32 = r.parse().map_err(|_| err("bad r"))?;
        cells.push(Cell::new(q, r));
    }
    let distinct: BTreeSet<Cell> = cells.iter().copied().collect();
    if distinct.len() != cells.len() {
        return Err(IoError::Parse { line: 0, msg: "duplicate cell".into() });
    }
    Ok(Configuration::from_cells(distinct)?)
}

pub fn write_config(c: &Configuration) -> String {
    c.iter().map(|x| format!("{} {}\n", x.q, x.r)).collect()
}

pub fn read_config(path: &Path) -> Result<Configuration, IoError> {
    parse_config(&std::fs::read_to_string(path).map_err(file_err(path))?)
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum KindTag {
    Restricted,
    Monkey,
}

#[derive(Serialize, Deserialize)]
struct PlanLine {
    mover: [i32; 2],
    rot: Rotation,
    kind: KindTag,
    dest: [i32; 2],
    phase: String,
}

/// Rebuilds a move from its file fields. Inconsistent fields still give a
/// move (with placeholder pivots) so that verification can flag the step.
fn move_from_fields(mover: Cell, rot: Rotation, monkey: bool, dest: Cell) -> Move {
    Move::from_parts(mover, rot, monkey, dest).unwrap_or_else(|| {
        let v = Vertex::corner(mover, Direction::N);
        let kind = if monkey {
            MoveKind::Monkey { first_pivot: v, second_pivot: v }
        } else {
            MoveKind::Restricted { pivot: v }
        };
        Move { mover, rotation: rot, kind, dest }
    })
}

pub fn parse_plan(text: &str) -> Result<MovePlan, IoError> {
    let mut plan = MovePlan::new();
    for (i, raw) in text.lines().enumerate() {
        if raw.trim().is_empty() {
            continue;
        }
        let l: PlanLine =
            serde_json::from_str(raw).map_err(|e| IoError::Parse { line: i + 1, msg: e.to_string() })?;
        let mover = Cell::new(l.mover[0], l.mover[1]);
        let dest = Cell::new(l.dest[0], l.dest[1]);
        let mv = move_from_fields(mover, l.rot, matches!(l.kind, KindTag::Monkey), dest);
        plan.push(Step::from_label(mv, &l.phase));
    }
    Ok(plan)
}

pub fn write_plan(plan: &MovePlan) -> String {
    let mut out = String::new();
    for s in &plan.steps {
        let line = PlanLine {
            mover: [s.mv.mover.q, s.mv.mover.r],
            rot: s.mv.rotation,
            kind: if s.mv.kind.is_monkey() { KindTag::Monkey } else { KindTag::Restricted },
            dest: [s.mv.dest.q, s.mv.dest.r],
            phase: s.label(),
        };
        out.push_str(&serde_json::to_string(&line).expect("plain data serializes"));
        out.push('\n');
    }
    out
}

pub fn read_plan(path: &Path) -> Result<MovePlan, IoError> {
    parse_plan(&std::fs::read_to_string(path).map_err(file_err(path))?)
}

pub fn write_file(path: &Path, text: &str) -> Result<(), IoError> {
    std::fs::write(path, text).map_err(file_err(path))
}

/// Seeded random connected shape: starting from the origin, repeatedly adds
/// a uniformly chosen empty cell adjacent to the shape.
pub fn random_configuration(n: usize, seed: u64) -> Configuration {
    assert!(n >= 1, "need at least one module");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cells = BTreeSet::from([Cell::ORIGIN]);
    while cells.len() < n {
        let border: Vec<Cell> = cells
            .iter()
            .flat_map(|c| c.neighbors())
            .filter(|x| !cells.contains(x))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        cells.insert(*border.choose(&mut rng).expect("border nonempty"));
    }
    Configuration::from_cells(cells).expect("grown connected")
}

/// One SVG drawing of a configuration; `highlight` marks the mover.
pub fn render_svg(c: &Configuration, highlight: Option<Cell>) -> String {
    const SCALE: f64 = 20.0;
    let pts: Vec<(f64, f64)> = c.iter().map(|x| x.center()).collect();
    let min_x = pts.iter().map(|p| p.0).fold(f64::INFINITY, f64::min) - 1.5;
    let max_x = pts.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max) + 1.5;
    let min_y = pts.iter().map(|p| p.1).fold(f64::INFINITY, f64::min) - 1.5;
    let max_y = pts.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max) + 1.5;
    let (w, h) = ((max_x - min_x) * SCALE, (max_y - min_y) * SCALE);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.1}" height="{h:.1}" viewBox="0 0 {w:.1} {h:.1}">"#
    );
    for x in c.iter() {
        let (cx, cy) = x.center();
        // the embedding has y pointing up; SVG y points down
        let (sx, sy) = ((cx - min_x) * SCALE, (max_y - cy) * SCALE);
        let corners: Vec<String> = (0..6)
            .map(|k| {
                let t = (60.0 * k as f64).to_radians();
                format!("{:.2},{:.2}", sx + SCALE * t.cos(), sy - SCALE * t.sin())
            })
            .collect();
        let fill = if Some(x) == highlight { "#e0559a" } else { "#9db4d8" };
        let _ = writeln!(
            out,
            r##"  <polygon points="{}" fill="{fill}" stroke="#333" stroke-width="1"><title>{} {}</title></polygon>"##,
            corners.join(" "),
            x.q,
            x.r
        );
    }
    out.push_str("</svg>\n");
    out
}

/// Writes `frame-0000.svg` for the start and one more frame per move; the
/// module that just moved is highlighted. Returns the written paths.
pub fn render_frames(start: &Configuration, plan: Option<&MovePlan>, dir: &Path) -> Result<Vec<PathBuf>, IoError> {
    std::fs::create_dir_all(dir).map_err(file_err(dir))?;
    let mut paths = Vec::new();
    let mut write = |i: usize, c: &Configuration, hl: Option<Cell>| -> Result<(), IoError> {
        let p = dir.join(format!("frame-{i:04}.svg"));
        write_file(&p, &render_svg(c, hl))?;
        paths.push(p);
        Ok(())
    };
    write(0, start, None)?;
    let mut cur = start.clone();
    if let Some(plan) = plan {
        for (i, m) in plan.moves().enumerate() {
            cur = cur.with_moved(m.mover, m.dest);
            write(i + 1, &cur, Some(m.dest))?;
        }
    }
    Ok(paths)
}

/// Screen position of a cell center in [`render_svg`] units, for tests.
pub fn embed(c: Cell) -> (f64, f64) {
    (1.5 * c.q as f64, -SQRT_3 * (c.r as f64 + c.q as f64 / 2.0))
}
