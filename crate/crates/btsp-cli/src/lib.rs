//! Library half of the `btsp` binary: instance and graph file formats,
//! deterministic JSON reports, SVG rendering, and the command
//! implementations the binary dispatches to.

pub mod commands;
pub mod instance;
pub mod json;
pub mod svg;

pub use commands::{Algorithm, CmdError, CmdOutput};
pub use instance::LoadedInstance;
