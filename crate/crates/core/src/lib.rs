pub mod cli_io;
pub mod configuration;
pub mod error;
pub mod explorer;
pub mod graph_analysis;
pub mod hexgrid;
pub mod move_model;
pub mod planner;

pub use configuration::Configuration;
pub use error::{AnalysisError, ConfigError, ExplorerError, IllegalMove, MoveError};
pub use hexgrid::{Cell, Direction, Frame, Vertex};
pub use move_model::{ModelId, Move, MoveKind, Rotation};
