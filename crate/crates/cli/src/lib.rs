//! Command line front end for `tmf3-core`: subcommands, versioned JSON
//! formats and the acceptance suite.

pub mod app;
pub mod json;
pub mod text;
pub mod verify;
