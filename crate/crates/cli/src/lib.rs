//! IO companion to `corephrase-core`: file formats, corpus handling and the
//! command-line front end.

pub mod cli;
pub mod config;
pub mod corpus;
pub mod formats;

pub use config::Config;
