//! Scenario-driven front end over the core library: parse a JSON scenario,
//! dispatch the command, write reports with fixed 17-significant-digit
//! formatting so identical inputs produce byte-identical artifacts.

pub mod output;
pub mod run;
pub mod scenario;
