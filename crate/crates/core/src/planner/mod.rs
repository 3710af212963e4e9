//! The three-phase reconfiguration planner.
//!
//! A configuration is brought to the canonical path (a straight N-S line):
//!
//! 1. remove every module of degree 1 from the contact graph;
//! 2. merge leaf blocks of the block tree until the contact graph is
//!    2-connected;
//! 3. peel modules off one at a time and stack each on top of the growing
//!    path.
//!
//! Moves are reversible, so a plan between any two configurations is the
//! plan of the first to the canonical path followed by the reversed,
//! inverted plan of the second (translated so the two paths coincide).
//! Every plan is verified against the move rules before it is returned.

mod merge;
mod phase1;
mod phase3;
mod walk;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::configuration::{is_canonical_path, Configuration};
use crate::hexgrid::Cell;
use crate::move_model::{check_move, verify_moves, ModelId, Move};

pub use merge::{op_bubble_up, op_deflate, op_shift, phase2};
pub use phase1::{classify_leaf_case, phase1};
pub use phase3::phase3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Phase {
    Phase1,
    Phase2,
    Phase3,
}

impl Phase {
    pub fn as_str(self) -> &'static str {
        match self {
            Phase::Phase1 => "phase1",
            Phase::Phase2 => "phase2",
            Phase::Phase3 => "phase3",
        }
    }
}

/// One move with the phase and sub-procedure that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub mv: Move,
    pub phase: String,
    pub sub: String,
}

impl Step {
    pub fn new(mv: Move, phase: impl Into<String>, sub: impl Into<String>) -> Step {
        Step { mv, phase: phase.into(), sub: sub.into() }
    }

    /// `phase` or `phase:sub`, as stored in plan files.
    pub fn label(&self) -> String {
        if self.sub.is_empty() {
            self.phase.clone()
        } else {
            format!("{}:{}", self.phase, self.sub)
        }
    }

    pub fn from_label(mv: Move, label: &str) -> Step {
        match label.split_once(':') {
            Some((p, s)) => Step::new(mv, p, s),
            None => Step::new(mv, label, ""),
        }
    }
}

/// An ordered sequence of annotated moves.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MovePlan {
    pub steps: Vec<Step>,
}

impl MovePlan {
    pub fn new() -> MovePlan {
        MovePlan::default()
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn moves(&self) -> impl Iterator<Item = &Move> + '_ {
        self.steps.iter().map(|s| &s.mv)
    }

    pub fn push(&mut self, step: Step) {
        self.steps.push(step);
    }

    pub fn extend(&mut self, other: MovePlan) {
        self.steps.extend(other.steps);
    }

    pub fn translated(&self, by: Cell) -> MovePlan {
        let steps = self
            .steps
            .iter()
            .map(|s| Step { mv: s.mv.translated(by), ..s.clone() })
            .collect();
        MovePlan { steps }
    }

    /// The plan that undoes this one: inverse moves in reverse order.
    pub fn reverse_inverted(&self) -> MovePlan {
        let steps = self
            .steps
            .iter()
            .rev()
            .map(|s| Step { mv: s.mv.inverse(), phase: format!("rev-{}", s.phase), sub: s.sub.clone() })
            .collect();
        MovePlan { steps }
    }

    /// Moves per phase label.
    pub fn count_by_phase(&self) -> BTreeMap<String, usize> {
        let mut out = BTreeMap::new();
        for s in &self.steps {
            *out.entry(s.phase.clone()).or_insert(0) += 1;
        }
        out
    }

    pub fn verify(&self, start: &Configuration) -> Result<Configuration, crate::error::MoveError> {
        verify_moves(start, self.moves(), ModelId::HexMonkey)
    }
}

/// Counters collected while planning.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PlanStats {
    pub n: usize,
    pub moves_by_phase: BTreeMap<String, usize>,
    pub moves_by_sub: BTreeMap<String, usize>,
    /// How often each branch or case fired.
    pub events: BTreeMap<String, usize>,
}

impl PlanStats {
    pub fn event(&mut self, name: impl Into<String>) {
        *self.events.entry(name.into()).or_insert(0) += 1;
    }

    pub fn total_moves(&self) -> usize {
        self.moves_by_phase.values().sum()
    }
}

impl fmt::Display for PlanStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let total = self.total_moves();
        writeln!(f, "n\t{}", self.n)?;
        for (k, v) in &self.moves_by_phase {
            writeln!(f, "moves.{k}\t{v}")?;
        }
        writeln!(f, "moves.total\t{total}")?;
        let n3 = (self.n.max(1) as f64).powi(3);
        writeln!(f, "moves_per_n3\t{:.4}", total as f64 / n3)?;
        for (k, v) in &self.moves_by_sub {
            writeln!(f, "sub.{k}\t{v}")?;
        }
        for (k, v) in &self.events {
            writeln!(f, "event.{k}\t{v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlannerError {
    #[error("configurations have different sizes ({0} and {1})")]
    SizeMismatch(usize, usize),
    /// A broken planner invariant; `cells` is the configuration at the time.
    #[error("{what}: {detail}")]
    Internal { what: &'static str, detail: String, cells: Vec<Cell> },
}

impl PlannerError {
    pub(crate) fn internal(what: &'static str, detail: impl Into<String>, c: &Configuration) -> PlannerError {
        PlannerError::Internal { what, detail: detail.into(), cells: c.to_vec() }
    }
}

/// The configuration being transformed, the finished path P (bottom to
/// top) and the plan so far. The working graph G is everything outside P.
#[derive(Clone, Debug)]
pub struct PlannerState {
    config: Configuration,
    path: Vec<Cell>,
    plan: MovePlan,
    pub stats: PlanStats,
}

impl PlannerState {
    pub fn new(c: Configuration) -> PlannerState {
        let stats = PlanStats { n: c.len(), ..PlanStats::default() };
        PlannerState { config: c, path: Vec::new(), plan: MovePlan::new(), stats }
    }

    pub fn config(&self) -> &Configuration {
        &self.config
    }

    pub fn path(&self) -> &[Cell] {
        &self.path
    }

    pub fn plan(&self) -> &MovePlan {
        &self.plan
    }

    pub fn into_plan(self) -> MovePlan {
        self.plan
    }

    /// The working graph G = configuration minus P.
    pub fn working(&self) -> BTreeSet<Cell> {
        let p: BTreeSet<Cell> = self.path.iter().copied().collect();
        self.config.cells().difference(&p).copied().collect()
    }

    pub(crate) fn push_path(&mut self, c: Cell) {
        debug_assert!(self.config.contains(c));
        self.path.push(c);
    }

    /// Checks and applies one move.
    pub(crate) fn apply(&mut self, m: Move, phase: Phase, sub: &str) -> Result<(), PlannerError> {
        if self.path.contains(&m.mover) {
            return Err(PlannerError::internal("PreconditionViolated", format!("path module {} moved", m.mover), &self.config));
        }
        check_move(&self.config, &m, ModelId::HexMonkey)
            .map_err(|e| PlannerError::internal("PreconditionViolated", format!("{m}: {e}"), &self.config))?;
        self.config = self.config.with_moved(m.mover, m.dest);
        *self.stats.moves_by_phase.entry(phase.as_str().to_string()).or_insert(0) += 1;
        *self.stats.moves_by_sub.entry(format!("{}:{sub}", phase.as_str())).or_insert(0) += 1;
        self.plan.push(Step::new(m, phase.as_str(), sub));
        Ok(())
    }

    pub(crate) fn apply_all(&mut self, moves: &[Move], phase: Phase, sub: &str) -> Result<(), PlannerError> {
        moves.iter().try_for_each(|&m| self.apply(m, phase, sub))
    }
}

/// Minimum degree of the contact graph of `g` (0 for an empty set).
pub fn min_degree(g: &BTreeSet<Cell>) -> usize {
    g.iter()
        .map(|c| c.neighbors().iter().filter(|n| g.contains(n)).count())
        .min()
        .unwrap_or(0)
}

/// Result of [`plan_to_canonical`].
#[derive(Clone, Debug)]
pub struct CanonicalPlan {
    pub plan: MovePlan,
    pub stats: PlanStats,
    /// The canonical path reached.
    pub end: Configuration,
}

/// Runs the three phases; the end shape is a canonical path.
pub fn plan_to_canonical(c: &Configuration) -> Result<CanonicalPlan, PlannerError> {
    let mut s = PlannerState::new(c.clone());
    if c.len() > 2 {
        phase1(&mut s)?;
        phase2(&mut s)?;
    }
    phase3(&mut s)?;
    let end = s.config().clone();
    if !is_canonical_path(&end) {
        return Err(PlannerError::internal("PreconditionViolated", "phase 3 did not end on the canonical path", &end));
    }
    let stats = s.stats.clone();
    let plan = s.into_plan();
    match plan.verify(c) {
        Ok(v) if v == end => Ok(CanonicalPlan { plan, stats, end }),
        Ok(_) => Err(PlannerError::internal("VerificationFailed", "replay ends elsewhere", &end)),
        Err(e) => Err(PlannerError::internal("VerificationFailed", e.to_string(), c)),
    }
}

/// A verified plan taking `a` to a translate of `b`, with combined stats.
pub fn reconfigure_with_stats(a: &Configuration, b: &Configuration) -> Result<(MovePlan, PlanStats), PlannerError> {
    if a.len() != b.len() {
        return Err(PlannerError::SizeMismatch(a.len(), b.len()));
    }
    let pa = plan_to_canonical(a)?;
    let pb = plan_to_canonical(b)?;
    let top = |c: &Configuration| c.iter().min_by_key(|x| x.r).expect("nonempty");
    let offset = top(&pa.end) - top(&pb.end);
    let mut plan = pa.plan;
    plan.extend(pb.plan.translated(offset).reverse_inverted());
    let end = plan.verify(a).map_err(|e| PlannerError::internal("VerificationFailed", e.to_string(), a))?;
    if !end.same_shape(b) {
        return Err(PlannerError::internal("VerificationFailed", "plan does not end at the target shape", &end));
    }
    let mut stats = pa.stats;
    for (k, v) in pb.stats.moves_by_phase {
        *stats.moves_by_phase.entry(format!("rev-{k}")).or_insert(0) += v;
    }
    for (k, v) in pb.stats.moves_by_sub {
        *stats.moves_by_sub.entry(format!("rev-{k}")).or_insert(0) += v;
    }
    for (k, v) in pb.stats.events {
        *stats.events.entry(k).or_insert(0) += v;
    }
    Ok((plan, stats))
}

pub fn reconfigure(a: &Configuration, b: &Configuration) -> Result<MovePlan, PlannerError> {
    reconfigure_with_stats(a, b).map(|(p, _)| p)
}
