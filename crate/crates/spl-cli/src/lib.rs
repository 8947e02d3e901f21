//! Library surface of the `spl` command-line tool: file formats, DOT export,
//! subcommand implementations and the randomized verification suites.

pub mod commands;
pub mod dot;
pub mod io;
pub mod suites;
