//! Experiment orchestration for `planted-core`: command-line configuration,
//! seeded parallel trial runners, the audit battery, and the CSV/JSON and
//! plain-text file formats.

pub mod battery;
pub mod config;
pub mod experiments;
pub mod formats;
pub mod output;
pub mod run;
