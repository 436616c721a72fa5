//! File formats, run manifests and the `trilinvar` command line on top of
//! [`trilinvar_core`].

pub mod cli;
pub mod formats;
pub mod manifest;

pub use trilinvar_core as core;
