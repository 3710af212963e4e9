use std::collections::BTreeSet;

use thiserror::Error;

use crate::hexgrid::Cell;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("configuration is empty")]
    Empty,
    #[error("configuration is disconnected ({} components)", components.len())]
    Disconnected { components: Vec<BTreeSet<Cell>> },
}

/// The clause of the move rules a move violates.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IllegalMove {
    #[error("no module at mover cell {0}")]
    MoverMissing(Cell),
    #[error("destination {0} is occupied")]
    DestinationOccupied(Cell),
    #[error("pivot module missing at {0}")]
    PivotMissing(Cell),
    #[error("free-space cell {0} is occupied")]
    FreeSpaceBlocked(Cell),
    #[error("removing the mover disconnects the configuration")]
    Disconnects,
    #[error("monkey moves are not allowed in the restricted model")]
    ModelForbids,
    #[error("move geometry is inconsistent")]
    Malformed,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("illegal move: {0}")]
    Illegal(#[from] IllegalMove),
    #[error("step {index} is illegal: {reason}")]
    StepIllegal { index: usize, reason: IllegalMove },
    #[error("module {0} has no clockwise move")]
    NoCwMove(Cell),
    #[error("clockwise cycle of {0} exceeded its step cap")]
    CycleCapExceeded(Cell),
}

/// Failures of the structural analyses; each one signals a broken invariant.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("no corner that is not a cut vertex was found")]
    NotFound,
    #[error("adjacent 2-cut {{{v1}, {v2}}} violates the two-component property: {detail}")]
    ObservationViolated { v1: Cell, v2: Cell, detail: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExplorerError {
    #[error("n = {n} exceeds the enumeration cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("configurations have different sizes ({0} and {1})")]
    SizeMismatch(usize, usize),
    #[error("target is unreachable")]
    Unreachable,
    #[error("search budget of {0} states exhausted")]
    BudgetExceeded(usize),
}
