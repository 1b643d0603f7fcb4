pub mod commands;
pub mod datasets;
pub mod report;
pub mod repro;
