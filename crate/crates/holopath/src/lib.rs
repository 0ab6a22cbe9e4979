//! File formats, configuration, a parallel sweep runner and figure
//! drivers on top of [`holopath_core`].

pub mod config;
pub mod figures;
pub mod io;
pub mod runner;
pub mod verify;

pub use config::{ConfigError, RunConfig};
pub use runner::ThreadPool;
