//! IO, experiment harness and report formats for the gradmine miners.

pub mod experiment;
pub mod io;
pub mod report;
pub mod runner;
